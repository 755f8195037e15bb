//! Homogeneous ideals truncated at a degree bound, one coefficient subspace
//! per degree.
//!
//! The degree-`d` piece of an ideal is a subspace of the space of degree-`d`
//! forms, whose coordinates are indexed by monomials in grlex order. Two
//! ideals built this way agree "up to degree D" when every piece agrees;
//! that is all these routines ever certify.

use std::collections::HashMap;

use num_traits::Zero;
use thiserror::Error;

use super::poly::{monomials_of_degree, Monomial, Polynomial};
use crate::arrangement::Arrangement;
use crate::exactla::{span_contains, span_intersect, Rational, Subspace};
use crate::lattice::Flat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("ideal is only known up to degree {have}, degree {need} requested")]
    DegreeBoundTooSmall { have: usize, need: usize },
    #[error("ideal powers need an exponent of at least 1")]
    ZeroExponent,
}

/// Monomials of each degree up to a bound, with reverse lookup and the
/// multiply-by-variable maps between consecutive degrees.
pub(crate) struct MonomialTable {
    n: usize,
    monomials: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
}

impl MonomialTable {
    pub(crate) fn new(n: usize, max_degree: usize) -> Self {
        let monomials: Vec<Vec<Monomial>> = (0..=max_degree).map(|d| monomials_of_degree(n, d)).collect();
        let index = monomials
            .iter()
            .map(|ms| ms.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
            .collect();
        MonomialTable { n, monomials, index }
    }

    fn dim(&self, d: usize) -> usize {
        self.monomials[d].len()
    }

    /// Coefficient vector of a homogeneous polynomial of degree `d`.
    fn vectorize(&self, d: usize, p: &Polynomial) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim(d)];
        for (m, c) in p.terms() {
            v[self.index[d][m]] = c.clone();
        }
        v
    }

    /// `x_var * f` for `f` given as a degree-`d` coefficient vector.
    fn shift(&self, d: usize, v: &[Rational], var: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim(d + 1)];
        let x = Monomial::variable(self.n, var);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out[self.index[d + 1][&self.monomials[d][i].mul(&x)]] = c.clone();
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedIdeal {
    n: usize,
    pieces: Vec<Subspace>,
}

/// Number of monomials of degree `d` in `n` variables, `C(n+d-1, d)`.
pub fn monomial_count(n: usize, d: usize) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    let (mut num, mut den) = (1u128, 1u128);
    for k in 1..=d as u128 {
        num *= n as u128 - 1 + k;
        den *= k;
    }
    (num / den) as usize
}

impl GradedIdeal {
    /// The whole polynomial ring, truncated.
    pub fn unit(n: usize, degree_bound: usize) -> Self {
        GradedIdeal {
            n,
            pieces: (0..=degree_bound).map(|d| Subspace::full(monomial_count(n, d))).collect(),
        }
    }

    pub fn zero(n: usize, degree_bound: usize) -> Self {
        GradedIdeal {
            n,
            pieces: (0..=degree_bound).map(|d| Subspace::zero(monomial_count(n, d))).collect(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn degree_bound(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn piece(&self, d: usize) -> &Subspace {
        &self.pieces[d]
    }

    pub fn pieces(&self) -> &[Subspace] {
        &self.pieces
    }

    /// Keeps degrees `0..=d`.
    pub fn truncate(&self, d: usize) -> Result<Self, OracleError> {
        self.require_bound(d)?;
        Ok(GradedIdeal {
            n: self.n,
            pieces: self.pieces[..=d].to_vec(),
        })
    }

    fn require_bound(&self, need: usize) -> Result<(), OracleError> {
        if self.degree_bound() < need {
            return Err(OracleError::DegreeBoundTooSmall {
                have: self.degree_bound(),
                need,
            });
        }
        Ok(())
    }

    /// Whether `x_i · piece(d) ⊆ piece(d+1)` for all `i` and `d < D`.
    pub fn is_multiplicatively_closed(&self) -> bool {
        let table = MonomialTable::new(self.n, self.degree_bound());
        (0..self.degree_bound()).all(|d| {
            self.pieces[d].basis().iter().all(|row| {
                (0..self.n).all(|var| self.pieces[d + 1].contains_unchecked(&table.shift(d, row, var)))
            })
        })
    }

    /// Membership of a polynomial, component by component. Components above
    /// the degree bound are an error.
    pub fn contains(&self, p: &Polynomial) -> Result<bool, OracleError> {
        if p.num_vars() != self.n {
            return Err(OracleError::VariableMismatch(self.n, p.num_vars()));
        }
        let Some(top) = p.degree() else {
            return Ok(true);
        };
        self.require_bound(top)?;
        let table = MonomialTable::new(self.n, top);
        for (d, component) in p.homogeneous_components() {
            let v = table.vectorize(d, &component);
            if !span_contains(&self.pieces[d], &v).expect("lengths agree") {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `I^e` for the ideal generated by the linear forms spanning `generators`
/// (a subspace of `Q^n`), up to degree `degree_bound`.
pub fn linear_ideal_power(generators: &Subspace, e: usize, degree_bound: usize) -> Result<GradedIdeal, OracleError> {
    if e == 0 {
        return Err(OracleError::ZeroExponent);
    }
    let n = generators.ambient_dim();
    if generators.rank() == 0 || e > degree_bound {
        return Ok(GradedIdeal::zero(n, degree_bound));
    }
    let table = MonomialTable::new(n, degree_bound);
    let forms: Vec<Polynomial> = generators.basis().iter().map(|row| Polynomial::linear(row)).collect();

    // products g_{i1} ... g_{ie} over multisets i1 <= ... <= ie
    let mut products = Vec::new();
    fn multisets(forms: &[Polynomial], start: usize, left: usize, acc: &Polynomial, out: &mut Vec<Polynomial>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for k in start..forms.len() {
            multisets(forms, k, left - 1, &acc.mul(&forms[k]), out);
        }
    }
    multisets(&forms, 0, e, &Polynomial::constant(n, Rational::from_integer(1.into())), &mut products);

    let mut pieces: Vec<Subspace> = (0..e).map(|d| Subspace::zero(table.dim(d))).collect();
    let rows: Vec<Vec<Rational>> = products.iter().map(|p| table.vectorize(e, p)).collect();
    pieces.push(Subspace::span(table.dim(e), &rows).expect("lengths agree"));
    // generated in degree e, so each later piece is the previous one times the variables
    for d in e..degree_bound {
        let prev = &pieces[d];
        let rows: Vec<Vec<Rational>> = prev
            .basis()
            .iter()
            .flat_map(|row| (0..n).map(|var| table.shift(d, row, var)).collect::<Vec<_>>())
            .collect();
        pieces.push(Subspace::span(table.dim(d + 1), &rows).expect("lengths agree"));
    }
    let ideal = GradedIdeal { n, pieces };
    debug_assert!(ideal.is_multiplicatively_closed());
    Ok(ideal)
}

/// `I_W^e` truncated at `degree_bound`, where `I_W` is generated by the
/// normal space of the flat.
pub fn graded_power(arr: &Arrangement, flat: &Flat, e: usize, degree_bound: usize) -> Result<GradedIdeal, OracleError> {
    linear_ideal_power(&flat.normal_space(arr), e, degree_bound)
}

/// Degreewise intersection, truncated at `degree_bound`. The empty list
/// gives the unit ideal.
pub fn graded_intersect(n: usize, ideals: &[GradedIdeal], degree_bound: usize) -> Result<GradedIdeal, OracleError> {
    let mut out = GradedIdeal::unit(n, degree_bound);
    for ideal in ideals {
        if ideal.n != n {
            return Err(OracleError::VariableMismatch(n, ideal.n));
        }
        ideal.require_bound(degree_bound)?;
        for (mine, theirs) in out.pieces.iter_mut().zip(&ideal.pieces) {
            if mine.rank() == 0 {
                continue;
            }
            *mine = if mine.rank() == mine.ambient_dim() {
                theirs.clone()
            } else {
                span_intersect(mine, theirs).expect("same piece dimension")
            };
        }
    }
    debug_assert!(out.is_multiplicatively_closed());
    Ok(out)
}

/// Dimensions of the pieces, degrees `0..=D`.
pub fn hilbert(ideal: &GradedIdeal) -> Vec<usize> {
    ideal.pieces.iter().map(Subspace::rank).collect()
}

/// First degree `<= degree_bound` where the two ideals differ.
pub fn first_difference(a: &GradedIdeal, b: &GradedIdeal, degree_bound: usize) -> Result<Option<usize>, OracleError> {
    if a.n != b.n {
        return Err(OracleError::VariableMismatch(a.n, b.n));
    }
    a.require_bound(degree_bound)?;
    b.require_bound(degree_bound)?;
    Ok((0..=degree_bound).find(|&d| a.pieces[d] != b.pieces[d]))
}

/// Equality of every piece up to `degree_bound`.
pub fn graded_equal(a: &GradedIdeal, b: &GradedIdeal, degree_bound: usize) -> Result<bool, OracleError> {
    Ok(first_difference(a, b, degree_bound)?.is_none())
}

/// `a ⊆ b` in every degree up to `degree_bound`.
pub fn graded_contained(a: &GradedIdeal, b: &GradedIdeal, degree_bound: usize) -> Result<bool, OracleError> {
    if a.n != b.n {
        return Err(OracleError::VariableMismatch(a.n, b.n));
    }
    a.require_bound(degree_bound)?;
    b.require_bound(degree_bound)?;
    Ok((0..=degree_bound).all(|d| a.pieces[d].basis().iter().all(|row| b.pieces[d].contains_unchecked(row))))
}
