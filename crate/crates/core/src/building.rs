//! Decompositions of flats, irreducible flats and building sets.
//!
//! `{U_1, ..., U_k}` decomposes `C` when `C = U_1 ∩ ... ∩ U_k` with
//! `codim C = Σ codim U_i`, and for every flat `B ⊇ C` each sum `B + U_i` is
//! again a flat with `B = ∩ (B + U_i)`, also transversally. Sums of flats are
//! intersections of their normal spaces.

use std::cell::OnceCell;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exactla::{span_intersect, Rational, Subspace};
use crate::lattice::{closure, minimal_containing, Flat, IntersectionLattice, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildingError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("a decomposition needs at least one part")]
    NoParts,
    #[error("set is not a building set: {0}")]
    NotBuildingSet(String),
}

/// Why a proposed decomposition fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionFailure {
    /// The parts do not intersect in the target.
    WrongIntersection { intersection: Vec<usize> },
    /// `Σ codim U_i != codim C`.
    NotTransversal { rank_sum: usize, target_rank: usize },
    /// `B + U` is not an element of the lattice.
    SumNotFlat { b: Flat, part: Flat },
    /// `B != ∩ (B + U_i)` or the intersection is not transversal.
    FailsAt { b: Flat },
}

impl fmt::Display for DecompositionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompositionFailure::WrongIntersection { intersection } => {
                write!(f, "parts intersect in the flat with closed set {intersection:?}")
            }
            DecompositionFailure::NotTransversal { rank_sum, target_rank } => {
                write!(f, "codimensions of the parts sum to {rank_sum}, target has codimension {target_rank}")
            }
            DecompositionFailure::SumNotFlat { b, part } => {
                write!(f, "B + U is not a flat for B = {} and U = {}", b.label(), part.label())
            }
            DecompositionFailure::FailsAt { b } => {
                write!(f, "B = {} is not the transversal intersection of the sums B + U_i", b.label())
            }
        }
    }
}

/// Normal spaces of lattice flats, computed on first use.
pub(crate) struct NormalSpaces<'a> {
    lat: &'a IntersectionLattice,
    cache: Vec<OnceCell<Subspace>>,
}

impl<'a> NormalSpaces<'a> {
    pub(crate) fn new(lat: &'a IntersectionLattice) -> Self {
        NormalSpaces {
            lat,
            cache: (0..lat.len()).map(|_| OnceCell::new()).collect(),
        }
    }

    fn get(&self, flat: &Flat) -> &Subspace {
        let i = self.lat.position(flat).expect("flat belongs to the lattice");
        self.cache[i].get_or_init(|| flat.normal_space(self.lat.arrangement()))
    }
}

fn sorted_union<'f>(sets: impl Iterator<Item = &'f [usize]>) -> Vec<usize> {
    let mut out: Vec<usize> = sets.flatten().copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn sorted_intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().filter(|x| b.binary_search(x).is_ok()).copied().collect()
}

fn check_inputs(lat: &IntersectionLattice, c: &Flat, parts: &[Flat]) -> Result<(), BuildingError> {
    if c.is_ambient() {
        return Err(LatticeError::AmbientFlat.into());
    }
    lat.require(c)?;
    if parts.is_empty() {
        return Err(BuildingError::NoParts);
    }
    for p in parts {
        if p.is_ambient() {
            return Err(LatticeError::AmbientFlat.into());
        }
        lat.require(p)?;
    }
    Ok(())
}

fn failure_with(
    lat: &IntersectionLattice,
    spaces: &NormalSpaces<'_>,
    c: &Flat,
    parts: &[Flat],
) -> Option<DecompositionFailure> {
    let arr = lat.arrangement();
    let meet = closure(arr, &sorted_union(parts.iter().map(Flat::closed_set))).expect("indices valid");
    if meet.closed_set() != c.closed_set() {
        return Some(DecompositionFailure::WrongIntersection {
            intersection: meet.closed_set().to_vec(),
        });
    }
    let rank_sum: usize = parts.iter().map(Flat::rank).sum();
    if rank_sum != c.rank() {
        return Some(DecompositionFailure::NotTransversal {
            rank_sum,
            target_rank: c.rank(),
        });
    }
    for b in lat.proper_flats().iter().filter(|b| c.is_subspace_of(b)) {
        let nb = spaces.get(b);
        let mut sums: Vec<Flat> = Vec::with_capacity(parts.len());
        for u in parts {
            // hyperplanes through B + U are those through both B and U
            let through_both = sorted_intersection(b.closed_set(), u.closed_set());
            let sum = closure(arr, &through_both).expect("indices valid");
            let exact = span_intersect(nb, spaces.get(u)).expect("same ambient");
            if exact.rank() != sum.rank() {
                return Some(DecompositionFailure::SumNotFlat {
                    b: b.clone(),
                    part: u.clone(),
                });
            }
            sums.push(sum);
        }
        let rank_sum: usize = sums.iter().map(Flat::rank).sum();
        let meet = closure(arr, &sorted_union(sums.iter().map(Flat::closed_set))).expect("indices valid");
        if rank_sum != b.rank() || meet.closed_set() != b.closed_set() {
            return Some(DecompositionFailure::FailsAt { b: b.clone() });
        }
    }
    None
}

/// The first reason `parts` fails to decompose `c`, if any. Flats `B` are
/// tried in canonical order.
pub fn decomposition_failure(
    lat: &IntersectionLattice,
    c: &Flat,
    parts: &[Flat],
) -> Result<Option<DecompositionFailure>, BuildingError> {
    check_inputs(lat, c, parts)?;
    Ok(failure_with(lat, &NormalSpaces::new(lat), c, parts))
}

pub fn is_decomposition(lat: &IntersectionLattice, c: &Flat, parts: &[Flat]) -> Result<bool, BuildingError> {
    Ok(decomposition_failure(lat, c, parts)?.is_none())
}

/// Connected components of the matroid on the normals through `c`, as
/// sorted index sets in order of their smallest element.
fn matroid_components(lat: &IntersectionLattice, c: &Flat) -> Vec<Vec<usize>> {
    let arr = lat.arrangement();
    let n = arr.dim();
    let ground = c.closed_set();
    let basis = c.basis_hyperplanes();
    let r = basis.len();

    // RREF of [B | I] is [R | T] with T B = R, which turns coordinates with
    // respect to R into coordinates with respect to the basis normals.
    let augmented: Vec<Vec<Rational>> = basis
        .iter()
        .enumerate()
        .map(|(j, &h)| {
            let mut row = arr.normal(h).to_vec();
            row.extend((0..r).map(|k| if k == j { Rational::from_integer(1.into()) } else { Rational::zero() }));
            row
        })
        .collect();
    let reduced = Subspace::span(n + r, &augmented).expect("rows have equal length");
    debug_assert!(reduced.pivots().iter().all(|&p| p < n));

    let mut parent: Vec<usize> = (0..ground.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let pos = |h: usize| ground.binary_search(&h).expect("basis lies in the closed set");
    for (gi, &h) in ground.iter().enumerate() {
        if basis.contains(&h) {
            continue;
        }
        let v = arr.normal(h);
        for (j, &bj) in basis.iter().enumerate() {
            let mut coef = Rational::zero();
            for (row, &p) in reduced.basis().iter().zip(reduced.pivots()) {
                if !v[p].is_zero() && !row[n + j].is_zero() {
                    coef += &v[p] * &row[n + j];
                }
            }
            if !coef.is_zero() {
                let (a, b) = (find(&mut parent, gi), find(&mut parent, pos(bj)));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut root_slot: Vec<Option<usize>> = vec![None; ground.len()];
    for (gi, &h) in ground.iter().enumerate() {
        let root = find(&mut parent, gi);
        match root_slot[root] {
            Some(s) => components[s].push(h),
            None => {
                root_slot[root] = Some(components.len());
                components.push(vec![h]);
            }
        }
    }
    components
}

/// Whether `c` admits only the trivial decomposition.
pub fn is_irreducible(lat: &IntersectionLattice, c: &Flat) -> Result<bool, BuildingError> {
    if c.is_ambient() {
        return Err(LatticeError::AmbientFlat.into());
    }
    lat.require(c)?;
    Ok(matroid_components(lat, c).len() == 1)
}

/// The finest decomposition of `c`; `[c]` exactly when `c` is irreducible.
/// Parts come in canonical order.
pub fn irreducible_decomposition(lat: &IntersectionLattice, c: &Flat) -> Result<Vec<Flat>, BuildingError> {
    if c.is_ambient() {
        return Err(LatticeError::AmbientFlat.into());
    }
    lat.require(c)?;
    let mut parts = Vec::new();
    for component in matroid_components(lat, c) {
        parts.push(lat.flat_of(&component)?.clone());
    }
    parts.sort();
    Ok(parts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuildingSetKind {
    Minimal,
    Full,
    Custom,
}

impl fmt::Display for BuildingSetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BuildingSetKind::Minimal => "minimal",
            BuildingSetKind::Full => "full",
            BuildingSetKind::Custom => "custom",
        })
    }
}

/// A building set of one lattice, flats in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildingSet {
    flats: Vec<Flat>,
    kind: BuildingSetKind,
}

impl BuildingSet {
    /// Verifies `flats` before accepting it.
    pub fn custom(lat: &IntersectionLattice, flats: Vec<Flat>) -> Result<Self, BuildingError> {
        for f in &flats {
            if f.is_ambient() {
                return Err(LatticeError::AmbientFlat.into());
            }
            lat.require(f)?;
        }
        let mut flats = flats;
        flats.sort();
        flats.dedup();
        if let Some((c, why)) = building_set_failure(lat, &flats) {
            return Err(BuildingError::NotBuildingSet(format!("fails at C = {}: {}", c.label(), why)));
        }
        Ok(BuildingSet {
            flats,
            kind: BuildingSetKind::Custom,
        })
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn kind(&self) -> BuildingSetKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }
}

/// `G_min`: the irreducible flats.
pub fn minimal_building_set(lat: &IntersectionLattice) -> BuildingSet {
    let flats = lat
        .proper_flats()
        .iter()
        .filter(|c| matroid_components(lat, c).len() == 1)
        .cloned()
        .collect();
    BuildingSet {
        flats,
        kind: BuildingSetKind::Minimal,
    }
}

/// `L'(A)` itself.
pub fn full_building_set(lat: &IntersectionLattice) -> BuildingSet {
    BuildingSet {
        flats: lat.proper_flats().to_vec(),
        kind: BuildingSetKind::Full,
    }
}

/// Why `g` fails to be a building set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildingSetFailure {
    /// No element of `g` contains `C`.
    Uncovered,
    Decomposition(DecompositionFailure),
}

impl fmt::Display for BuildingSetFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildingSetFailure::Uncovered => f.write_str("no element of the set contains C"),
            BuildingSetFailure::Decomposition(d) => write!(f, "minimal elements over C {d}"),
        }
    }
}

/// The first flat `C` (canonical order) over which the minimal elements of
/// `g` fail to decompose `C`. Every `C` in `L'(A)` is checked.
pub fn building_set_failure(lat: &IntersectionLattice, g: &[Flat]) -> Option<(Flat, BuildingSetFailure)> {
    let spaces = NormalSpaces::new(lat);
    for c in lat.proper_flats() {
        let minimal = minimal_containing(g, c).expect("c is proper");
        if minimal.is_empty() {
            return Some((c.clone(), BuildingSetFailure::Uncovered));
        }
        if let Some(why) = failure_with(lat, &spaces, c, &minimal) {
            return Some((c.clone(), BuildingSetFailure::Decomposition(why)));
        }
    }
    None
}

pub fn is_building_set(lat: &IntersectionLattice, g: &[Flat]) -> bool {
    building_set_failure(lat, g).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{braid, braid_index, Arrangement};
    use crate::lattice::compute_lattice;

    #[test]
    fn triple_point_pair_is_not_a_decomposition() {
        let lat = compute_lattice(&braid(3).unwrap());
        let c = lat.flat_of(&[0, 1]).unwrap().clone();
        let parts = vec![lat.hyperplane(0).clone(), lat.hyperplane(1).clone()];
        let why = decomposition_failure(&lat, &c, &parts).unwrap().unwrap();
        assert_eq!(why, DecompositionFailure::FailsAt { b: lat.hyperplane(2).clone() });
        assert!(!is_decomposition(&lat, &c, &parts).unwrap());
    }

    #[test]
    fn trivial_decomposition_always_passes() {
        for arr in [braid(3).unwrap(), braid(4).unwrap()] {
            let lat = compute_lattice(&arr);
            for c in lat.proper_flats() {
                assert!(is_decomposition(&lat, c, std::slice::from_ref(c)).unwrap());
            }
        }
    }

    #[test]
    fn braid5_block_decomposition() {
        let lat = compute_lattice(&braid(5).unwrap());
        let ix = |i, j| braid_index(5, i, j);
        let c = lat.flat_of(&[ix(0, 1), ix(1, 2), ix(3, 4)]).unwrap().clone();
        let w012 = lat.flat_of(&[ix(0, 1), ix(1, 2)]).unwrap().clone();
        let w34 = lat.hyperplane(ix(3, 4)).clone();
        assert!(is_decomposition(&lat, &c, &[w012.clone(), w34.clone()]).unwrap());
        assert_eq!(irreducible_decomposition(&lat, &c).unwrap(), vec![w34, w012.clone()]);
        assert_eq!(irreducible_decomposition(&lat, &w012).unwrap(), vec![w012]);
    }

    #[test]
    fn coordinate_origin_splits() {
        let arr = Arrangement::from_integer_normals(2, &[(&[1, 0], 1), (&[0, 1], 1)]).unwrap();
        let lat = compute_lattice(&arr);
        let origin = lat.flat_of(&[0, 1]).unwrap().clone();
        let parts = irreducible_decomposition(&lat, &origin).unwrap();
        assert_eq!(parts, vec![lat.hyperplane(0).clone(), lat.hyperplane(1).clone()]);
        assert!(is_decomposition(&lat, &origin, &parts).unwrap());
    }

    #[test]
    fn input_errors() {
        let lat = compute_lattice(&braid(3).unwrap());
        let v = lat.ambient().clone();
        let h = lat.hyperplane(0).clone();
        assert_eq!(
            is_decomposition(&lat, &v, std::slice::from_ref(&h)),
            Err(BuildingError::Lattice(LatticeError::AmbientFlat))
        );
        assert_eq!(is_decomposition(&lat, &h, &[]), Err(BuildingError::NoParts));
        assert_eq!(
            is_decomposition(&lat, &h, &[v.clone()]),
            Err(BuildingError::Lattice(LatticeError::AmbientFlat))
        );
        assert!(irreducible_decomposition(&lat, &v).is_err());
    }

    #[test]
    fn minimal_sets() {
        let lat4 = compute_lattice(&braid(4).unwrap());
        let gmin = minimal_building_set(&lat4);
        assert_eq!(gmin.len(), 11);
        assert_eq!(gmin.kind(), BuildingSetKind::Minimal);
        assert!(is_building_set(&lat4, gmin.flats()));
        assert!(is_building_set(&lat4, full_building_set(&lat4).flats()));

        let single = Arrangement::from_integer_normals(2, &[(&[1, 1], 3)]).unwrap();
        let ls = compute_lattice(&single);
        assert_eq!(minimal_building_set(&ls).flats(), ls.proper_flats());
    }

    #[test]
    fn hyperplanes_alone_fail_for_braid3() {
        let lat = compute_lattice(&braid(3).unwrap());
        let hs: Vec<Flat> = (0..3).map(|i| lat.hyperplane(i).clone()).collect();
        let (c, why) = building_set_failure(&lat, &hs).unwrap();
        assert_eq!(c.closed_set(), &[0, 1, 2]);
        assert!(matches!(why, BuildingSetFailure::Decomposition(_)));
        assert!(BuildingSet::custom(&lat, hs).is_err());
        let empty_fails = building_set_failure(&lat, &[]).unwrap();
        assert_eq!(empty_fails.1, BuildingSetFailure::Uncovered);
    }
}
