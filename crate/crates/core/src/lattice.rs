//! The intersection lattice of an arrangement.
//!
//! A flat is identified by its closed set: the indices of all hyperplanes
//! that contain it. Containment of flats reverses containment of closed sets.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::arrangement::Arrangement;
use crate::exactla::{canonicalize, Rational, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("the ambient space is not a proper flat")]
    AmbientFlat,
    #[error("hyperplane index {index} out of range for an arrangement of {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("flat with closed set {0:?} is not in the lattice")]
    UnknownFlat(Vec<usize>),
}

/// An element `W` of the intersection lattice.
///
/// Equality, hashing and ordering only look at the closed set, so flats are
/// only comparable within one arrangement. The canonical order is by rank,
/// then lexicographically by closed set.
#[derive(Debug, Clone)]
pub struct Flat {
    closed_set: Vec<usize>,
    basis: Vec<usize>,
    rank: usize,
    mult: u64,
}

impl Flat {
    fn ambient() -> Self {
        Flat {
            closed_set: Vec::new(),
            basis: Vec::new(),
            rank: 0,
            mult: 0,
        }
    }

    /// Sorted indices of the hyperplanes containing this flat.
    pub fn closed_set(&self) -> &[usize] {
        &self.closed_set
    }

    /// Indices of hyperplanes whose normals form a basis of the normal space.
    pub fn basis_hyperplanes(&self) -> &[usize] {
        &self.basis
    }

    /// Codimension `r(W)`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `s(W)`: total multiplicity of the hyperplanes containing `W`.
    pub fn mult(&self) -> u64 {
        self.mult
    }

    pub fn is_ambient(&self) -> bool {
        self.closed_set.is_empty()
    }

    pub fn contains_hyperplane_index(&self, i: usize) -> bool {
        self.closed_set.binary_search(&i).is_ok()
    }

    /// Span of the normals of every hyperplane through this flat.
    pub fn normal_space(&self, arr: &Arrangement) -> Subspace {
        let normals: Vec<Vec<Rational>> = self.basis.iter().map(|&i| arr.normal(i).to_vec()).collect();
        Subspace::span(arr.dim(), &normals).expect("normals have ambient length")
    }

    /// `self ⊆ other` as linear subspaces.
    pub fn is_subspace_of(&self, other: &Flat) -> bool {
        is_sorted_subset(&other.closed_set, &self.closed_set)
    }

    /// Lattice-style label such as `{0,1,3}`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.closed_set.iter().map(|i| i.to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl PartialEq for Flat {
    fn eq(&self, other: &Self) -> bool {
        self.closed_set == other.closed_set
    }
}

impl Eq for Flat {}

impl Hash for Flat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.closed_set.hash(state);
    }
}

impl Ord for Flat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then_with(|| self.closed_set.cmp(&other.closed_set))
    }
}

impl PartialOrd for Flat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn is_sorted_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    'outer: for x in small {
        for y in it.by_ref() {
            match y.cmp(x) {
                Ordering::Less => continue,
                Ordering::Equal => continue 'outer,
                Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

/// `∩_{i ∈ idx} H_i` as a flat. The empty index set gives the ambient space.
pub fn closure(arr: &Arrangement, idx: &[usize]) -> Result<Flat, LatticeError> {
    for &i in idx {
        if i >= arr.len() {
            return Err(LatticeError::IndexOutOfRange { index: i, len: arr.len() });
        }
    }
    let mut space = Subspace::zero(arr.dim());
    for &i in idx {
        space = space.with_vector(arr.normal(i)).expect("normal length");
    }
    Ok(flat_of_space(arr, &space))
}

fn flat_of_space(arr: &Arrangement, space: &Subspace) -> Flat {
    if space.rank() == 0 {
        return Flat::ambient();
    }
    let closed_set: Vec<usize> = (0..arr.len())
        .filter(|&i| space.contains_unchecked(arr.normal(i)))
        .collect();
    let mut basis = Vec::with_capacity(space.rank());
    let mut partial = Subspace::zero(arr.dim());
    for &i in &closed_set {
        if partial.rank() == space.rank() {
            break;
        }
        let next = partial.with_vector(arr.normal(i)).expect("normal length");
        if next.rank() > partial.rank() {
            basis.push(i);
            partial = next;
        }
    }
    let mult = closed_set.iter().map(|&i| arr.mult(i)).sum();
    Flat {
        closed_set,
        basis,
        rank: space.rank(),
        mult,
    }
}

/// All flats one rank below `flat` (its covers in the order by reverse
/// inclusion), each `flat ∩ H` for some hyperplane `H` not through `flat`.
///
/// Hyperplanes are grouped by their residual modulo the normal space of
/// `flat`; two hyperplanes give the same intersection exactly when their
/// residuals are proportional, and each group is the increment of the
/// closed set.
fn covers(arr: &Arrangement, flat: &Flat) -> Vec<Flat> {
    let space = flat.normal_space(arr);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut by_direction: HashMap<Vec<Rational>, usize> = HashMap::new();
    let mut in_closed = flat.closed_set.iter().peekable();
    for i in 0..arr.len() {
        if in_closed.peek() == Some(&&i) {
            in_closed.next();
            continue;
        }
        let direction = canonicalize(&space.residual(arr.normal(i)));
        match by_direction.get(&direction) {
            Some(&g) => groups[g].push(i),
            None => {
                by_direction.insert(direction, groups.len());
                groups.push(vec![i]);
            }
        }
    }
    groups
        .into_iter()
        .map(|group| {
            let mut closed_set = Vec::with_capacity(flat.closed_set.len() + group.len());
            closed_set.extend_from_slice(&flat.closed_set);
            closed_set.extend_from_slice(&group);
            closed_set.sort_unstable();
            let mut basis = flat.basis.clone();
            basis.push(group[0]);
            let mult = flat.mult + group.iter().map(|&i| arr.mult(i)).sum::<u64>();
            Flat {
                closed_set,
                basis,
                rank: flat.rank + 1,
                mult,
            }
        })
        .collect()
}

/// `L(A)`: every flat, ambient space first, in canonical order.
#[derive(Debug, Clone)]
pub struct IntersectionLattice {
    arrangement: Arrangement,
    flats: Vec<Flat>,
    index: HashMap<Vec<usize>, usize>,
}

impl IntersectionLattice {
    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    /// All of `L(A)`, ambient space at index 0.
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    /// `L'(A)`.
    pub fn proper_flats(&self) -> &[Flat] {
        &self.flats[1..]
    }

    pub fn ambient(&self) -> &Flat {
        &self.flats[0]
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn position(&self, flat: &Flat) -> Option<usize> {
        self.index.get(&flat.closed_set).copied()
    }

    pub fn find(&self, closed_set: &[usize]) -> Option<&Flat> {
        self.index.get(closed_set).map(|&i| &self.flats[i])
    }

    /// Hyperplane `i` as a rank-one flat.
    pub fn hyperplane(&self, i: usize) -> &Flat {
        self.find(&[i]).expect("every hyperplane is a flat")
    }

    /// The flat through the given hyperplanes, looked up in the lattice.
    pub fn flat_of(&self, idx: &[usize]) -> Result<&Flat, LatticeError> {
        let c = closure(&self.arrangement, idx)?;
        self.find(&c.closed_set)
            .ok_or_else(|| LatticeError::UnknownFlat(c.closed_set.clone()))
    }

    /// `a ∩ b`.
    pub fn meet(&self, a: &Flat, b: &Flat) -> &Flat {
        let mut union: Vec<usize> = a.closed_set.iter().chain(&b.closed_set).copied().collect();
        union.sort_unstable();
        union.dedup();
        self.flat_of(&union).expect("lattice is closed under intersection")
    }

    /// Checks that `flat` belongs to this lattice.
    pub fn require(&self, flat: &Flat) -> Result<(), LatticeError> {
        match self.position(flat) {
            Some(_) => Ok(()),
            None => Err(LatticeError::UnknownFlat(flat.closed_set.clone())),
        }
    }
}

/// Builds `L(A)` rank by rank: every flat of rank `k + 1` covers some flat
/// of rank `k` and is found by intersecting it with a single hyperplane.
pub fn compute_lattice(arr: &Arrangement) -> IntersectionLattice {
    let mut flats = vec![Flat::ambient()];
    let mut level = vec![Flat::ambient()];
    while !level.is_empty() {
        let mut next: HashMap<Vec<usize>, Flat> = HashMap::new();
        for flat in &level {
            for c in covers(arr, flat) {
                next.entry(c.closed_set.clone()).or_insert(c);
            }
        }
        let mut next: Vec<Flat> = next.into_values().collect();
        next.sort_unstable();
        flats.extend(next.iter().cloned());
        level = next;
    }
    let index = flats
        .iter()
        .enumerate()
        .map(|(i, f)| (f.closed_set.clone(), i))
        .collect();
    IntersectionLattice {
        arrangement: arr.clone(),
        flats,
        index,
    }
}

/// The minimal (smallest as subspaces) flats of `g` containing `c`, in
/// canonical order.
pub fn minimal_containing(g: &[Flat], c: &Flat) -> Result<Vec<Flat>, LatticeError> {
    if c.is_ambient() {
        return Err(LatticeError::AmbientFlat);
    }
    let containing: Vec<&Flat> = g.iter().filter(|w| c.is_subspace_of(w)).collect();
    let mut out: Vec<Flat> = containing
        .iter()
        .filter(|w| {
            !containing
                .iter()
                .any(|other| other.closed_set != w.closed_set && other.is_subspace_of(w))
        })
        .map(|w| (*w).clone())
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}
