//! Multiplier ideals of arrangements from a building set `G`:
//!
//! ```text
//! J(I^λ) = ∩_{W ∈ G} I_W^{⌊λ s(W)⌋ - r(W) + 1}
//! ```
//!
//! together with the log canonical threshold, supports, jumping-number
//! candidates and the divisor data of the wonderful-model resolution.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::building::{minimal_building_set, BuildingSet, BuildingSetKind};
use crate::exactla::{format_rational, lcm, Rational};
use crate::lattice::{Flat, IntersectionLattice};
use crate::oracle::{first_difference, graded_intersect, graded_power, GradedIdeal, OracleError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultiplierError {
    #[error("lambda must be nonnegative, got {0}")]
    NegativeLambda(String),
    #[error("expected a positive bound, got {0}")]
    NonPositive(String),
    #[error("polynomial has {found} variables, arrangement has dimension {expected}")]
    VariableMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// One factor `I_W^exponent` of a presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub flat: Flat,
    pub exponent: u64,
}

/// `J(I^λ)` as an intersection of powers of flat ideals. No terms means the
/// unit ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplierIdealPresentation {
    lambda: Rational,
    terms: Vec<Term>,
    building_set_kind: BuildingSetKind,
}

impl MultiplierIdealPresentation {
    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn building_set_kind(&self) -> BuildingSetKind {
        self.building_set_kind
    }

    pub fn is_unit(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn exponent_sum(&self) -> u64 {
        self.terms.iter().map(|t| t.exponent).sum()
    }
}

/// `⌊λ s⌋ - r + 1`, possibly nonpositive.
pub fn raw_exponent(lambda: &Rational, flat: &Flat) -> BigInt {
    let scaled = lambda * Rational::from_integer(BigInt::from(flat.mult()));
    scaled.floor().to_integer() - BigInt::from(flat.rank()) + BigInt::one()
}

fn check_lambda(lambda: &Rational) -> Result<(), MultiplierError> {
    if lambda.is_negative() {
        return Err(MultiplierError::NegativeLambda(format_rational(lambda)));
    }
    Ok(())
}

/// Terms with nonpositive exponent are dropped.
pub fn presentation(g: &BuildingSet, lambda: &Rational) -> Result<MultiplierIdealPresentation, MultiplierError> {
    check_lambda(lambda)?;
    let terms = g
        .flats()
        .iter()
        .filter_map(|w| {
            let e = raw_exponent(lambda, w);
            e.is_positive().then(|| Term {
                flat: w.clone(),
                exponent: e.to_u64().expect("exponent fits in u64"),
            })
        })
        .collect();
    Ok(MultiplierIdealPresentation {
        lambda: lambda.clone(),
        terms,
        building_set_kind: g.kind(),
    })
}

fn threshold(w: &Flat) -> Rational {
    Rational::new(BigInt::from(w.rank()), BigInt::from(w.mult()))
}

/// `min r(W)/s(W)` over the given flats.
pub fn lct_over(flats: &[Flat]) -> Option<Rational> {
    flats.iter().map(threshold).min()
}

/// Log canonical threshold, `min_{W ∈ G_min} r(W)/s(W)`.
pub fn lct(lat: &IntersectionLattice) -> Rational {
    lct_over(minimal_building_set(lat).flats()).expect("every arrangement has a hyperplane")
}

/// Flats `W` of `gmin` with `λ >= r(W)/s(W)`.
pub fn support_in(gmin: &BuildingSet, lambda: &Rational) -> Result<Vec<Flat>, MultiplierError> {
    check_lambda(lambda)?;
    Ok(gmin.flats().iter().filter(|w| *lambda >= threshold(w)).cloned().collect())
}

/// The components of the zero set of `J(I^λ)`: flats of `G_min` with
/// `λ >= r(W)/s(W)`, in canonical order.
pub fn support(lat: &IntersectionLattice, lambda: &Rational) -> Result<Vec<Flat>, MultiplierError> {
    support_in(&minimal_building_set(lat), lambda)
}

/// Sorted `{ m / s(W) : W ∈ gmin, m >= r(W), m / s(W) <= max }`.
pub fn jump_candidates_in(gmin: &BuildingSet, lambda_max: &Rational) -> Result<Vec<Rational>, MultiplierError> {
    if !lambda_max.is_positive() {
        return Err(MultiplierError::NonPositive(format_rational(lambda_max)));
    }
    let mut out = Vec::new();
    for w in gmin.flats() {
        let s = BigInt::from(w.mult());
        let top = (lambda_max * Rational::from_integer(s.clone())).floor().to_integer();
        let mut m = BigInt::from(w.rank());
        while m <= top {
            out.push(Rational::new(m.clone(), s.clone()));
            m += 1;
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn jump_candidates(lat: &IntersectionLattice, lambda_max: &Rational) -> Result<Vec<Rational>, MultiplierError> {
    jump_candidates_in(&minimal_building_set(lat), lambda_max)
}

/// `1 / (2 lcm s(W))` over `gmin`: no candidate lies strictly between
/// `c - ε` and `c` for any candidate `c`.
pub fn jump_epsilon(gmin: &BuildingSet) -> Rational {
    let l = lcm(gmin.flats().iter().map(Flat::mult));
    Rational::new(BigInt::one(), BigInt::from(2) * l)
}

/// The presentation's ideal, degree by degree up to `degree_bound`.
pub fn presentation_ideal(
    lat: &IntersectionLattice,
    pres: &MultiplierIdealPresentation,
    degree_bound: usize,
) -> Result<GradedIdeal, MultiplierError> {
    let arr = lat.arrangement();
    let powers = pres
        .terms
        .iter()
        .map(|t| graded_power(arr, &t.flat, t.exponent as usize, degree_bound))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(graded_intersect(arr.dim(), &powers, degree_bound)?)
}

/// `min(2 + Σ exponents of the larger presentation, 10)`.
pub fn default_degree(presentations: &[&MultiplierIdealPresentation]) -> usize {
    let largest = presentations.iter().map(|p| p.exponent_sum()).max().unwrap_or(0);
    (2 + largest).min(10) as usize
}

/// Outcome of comparing `J(I^c)` with `J(I^{c-ε})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpCheck {
    pub candidate: Rational,
    pub degree_bound: usize,
    /// First degree where the two ideals differ; `None` means no jump was
    /// detected up to `degree_bound`, which does not rule one out.
    pub first_difference: Option<usize>,
}

impl JumpCheck {
    pub fn is_jump(&self) -> bool {
        self.first_difference.is_some()
    }
}

pub fn check_jump_in(
    lat: &IntersectionLattice,
    gmin: &BuildingSet,
    candidate: &Rational,
    degree_bound: usize,
) -> Result<JumpCheck, MultiplierError> {
    if !candidate.is_positive() {
        return Err(MultiplierError::NonPositive(format_rational(candidate)));
    }
    if degree_bound == 0 {
        return Err(MultiplierError::NonPositive("0".into()));
    }
    let below = candidate - jump_epsilon(gmin);
    let below = if below.is_negative() { Rational::zero() } else { below };
    let at = presentation_ideal(lat, &presentation(gmin, candidate)?, degree_bound)?;
    let before = presentation_ideal(lat, &presentation(gmin, &below)?, degree_bound)?;
    Ok(JumpCheck {
        candidate: candidate.clone(),
        degree_bound,
        first_difference: first_difference(&at, &before, degree_bound)?,
    })
}

/// Whether `J(I^λ)` visibly shrinks at `candidate`, comparing with
/// `candidate - ε` in every degree up to `degree_bound`.
pub fn verify_jump(lat: &IntersectionLattice, candidate: &Rational, degree_bound: usize) -> Result<bool, MultiplierError> {
    Ok(check_jump_in(lat, &minimal_building_set(lat), candidate, degree_bound)?.is_jump())
}

/// `f ∈ ∩ I_W^{e_W}`, checked one homogeneous component at a time.
pub fn membership(
    lat: &IntersectionLattice,
    pres: &MultiplierIdealPresentation,
    f: &Polynomial,
) -> Result<bool, MultiplierError> {
    let arr = lat.arrangement();
    if f.num_vars() != arr.dim() {
        return Err(MultiplierError::VariableMismatch {
            expected: arr.dim(),
            found: f.num_vars(),
        });
    }
    let Some(top) = f.degree() else {
        return Ok(true);
    };
    for t in &pres.terms {
        if !graded_power(arr, &t.flat, t.exponent as usize, top)?.contains(f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionRow {
    pub flat: Flat,
    /// Coefficient `r(W) - 1` of `E_W` in the relative canonical divisor.
    pub discrepancy: u64,
    /// Coefficient `s(W)` of `E_W` in the pullback of the arrangement.
    pub vanishing_order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionTable {
    pub rows: Vec<ResolutionRow>,
}

pub fn resolution_table(g: &BuildingSet) -> ResolutionTable {
    ResolutionTable {
        rows: g
            .flats()
            .iter()
            .map(|w| ResolutionRow {
                flat: w.clone(),
                discrepancy: (w.rank() - 1) as u64,
                vanishing_order: w.mult(),
            })
            .collect(),
    }
}
