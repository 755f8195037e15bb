//! Exact linear algebra over the rationals.
//!
//! Every subspace is stored through its reduced row-echelon basis, which is a
//! canonical form: two subspaces are equal exactly when their bases agree
//! entry by entry. Nothing here touches floating point.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    RaggedMatrix {
        row: usize,
        expected: usize,
        found: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational {text:?}: {reason}")]
pub struct ParseRationalError {
    pub text: String,
    pub reason: &'static str,
}

/// Parses `"p"`, `"-p"` or `"p/q"` with `q > 0`. Decimals, exponents, signs on
/// the denominator and surrounding whitespace are all rejected.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        text: text.to_string(),
        reason,
    };
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) {
        return Err(err("numerator must be a non-empty string of decimal digits"));
    }
    let mut numer: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
    if negative {
        numer = -numer;
    }
    let denom: BigInt = match den {
        Some(d) => {
            if !digits(d) {
                return Err(err("denominator must be a non-empty string of decimal digits"));
            }
            d.parse().map_err(|_| err("bad denominator"))?
        }
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(err("denominator is zero"));
    }
    Ok(Rational::new(numer, denom))
}

/// Formats as `"p"` for integers and `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn vector(entries: &[i64]) -> Vec<Rational> {
    entries.iter().map(|&e| int(e)).collect()
}

/// Scales `v` so that its first nonzero entry is 1. The zero vector is
/// returned unchanged.
pub fn canonicalize(v: &[Rational]) -> Vec<Rational> {
    match v.iter().find(|x| !x.is_zero()) {
        None => v.to_vec(),
        Some(lead) if lead.is_one() => v.to_vec(),
        Some(lead) => {
            let lead = lead.clone();
            v.iter().map(|x| x / &lead).collect()
        }
    }
}

/// Dense rectangular matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    /// Builds a matrix with `cols` columns from row vectors.
    pub fn from_rows(cols: usize, rows: &[Vec<Rational>]) -> Result<Self, LinAlgError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(LinAlgError::RaggedMatrix {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().cloned());
        }
        Ok(QMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn from_int_rows(cols: usize, rows: &[&[i64]]) -> Result<Self, LinAlgError> {
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| vector(r)).collect();
        Self::from_rows(cols, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

/// Row space of a matrix, stored as its reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut row = vec![Rational::zero(); ambient_dim];
                row[i] = Rational::one();
                row
            })
            .collect();
        Subspace {
            ambient_dim,
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Row space of the given vectors, each of length `ambient_dim`.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self, LinAlgError> {
        for v in vectors {
            check_len(ambient_dim, v)?;
        }
        Ok(rref_rows(ambient_dim, vectors.to_vec()))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn to_matrix(&self) -> QMatrix {
        QMatrix::from_rows(self.ambient_dim, &self.basis).expect("basis rows have ambient length")
    }

    /// Remainder of `v` after eliminating every pivot column. It is zero
    /// exactly when `v` lies in the subspace, and the map is linear with
    /// kernel equal to the subspace.
    pub fn residual(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let coef = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o -= &coef * r;
                }
            }
        }
        out
    }

    /// Membership test without the length check.
    pub(crate) fn contains_unchecked(&self, v: &[Rational]) -> bool {
        self.residual(v).iter().all(Zero::is_zero)
    }

    /// Adds one vector to the span, keeping the basis reduced.
    pub fn with_vector(&self, v: &[Rational]) -> Result<Self, LinAlgError> {
        check_len(self.ambient_dim, v)?;
        let res = self.residual(v);
        let Some(p) = res.iter().position(|x| !x.is_zero()) else {
            return Ok(self.clone());
        };
        let lead = res[p].clone();
        let new_row: Vec<Rational> = res.iter().map(|x| x / &lead).collect();
        let mut basis = Vec::with_capacity(self.basis.len() + 1);
        let mut pivots = Vec::with_capacity(self.basis.len() + 1);
        let mut inserted = false;
        for (row, &q) in self.basis.iter().zip(&self.pivots) {
            if !inserted && p < q {
                basis.push(new_row.clone());
                pivots.push(p);
                inserted = true;
            }
            let mut row = row.clone();
            if !row[p].is_zero() {
                let coef = row[p].clone();
                for (x, y) in row.iter_mut().zip(&new_row) {
                    if !y.is_zero() {
                        *x -= &coef * y;
                    }
                }
            }
            basis.push(row);
            pivots.push(q);
        }
        if !inserted {
            basis.push(new_row);
            pivots.push(p);
        }
        Ok(Subspace {
            ambient_dim: self.ambient_dim,
            basis,
            pivots,
        })
    }

    /// Solves `v = sum_j c_j basis_j`; `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.contains_unchecked(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, row) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let cells: Vec<String> = row.iter().map(format_rational).collect();
            write!(f, "[{}]", cells.join(","))?;
        }
        write!(f, "}}")
    }
}

fn check_len(expected: usize, v: &[Rational]) -> Result<(), LinAlgError> {
    if v.len() != expected {
        return Err(LinAlgError::DimensionMismatch {
            expected,
            found: v.len(),
        });
    }
    Ok(())
}

fn check_same_ambient(a: &Subspace, b: &Subspace) -> Result<(), LinAlgError> {
    if a.ambient_dim != b.ambient_dim {
        return Err(LinAlgError::DimensionMismatch {
            expected: a.ambient_dim,
            found: b.ambient_dim,
        });
    }
    Ok(())
}

/// Gauss-Jordan elimination; returns the nonzero rows of the RREF together
/// with their pivot columns.
fn rref_rows(cols: usize, mut rows: Vec<Vec<Rational>>) -> Subspace {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let lead = rows[next][col].clone();
        if !lead.is_one() {
            for x in rows[next].iter_mut() {
                if !x.is_zero() {
                    *x /= &lead;
                }
            }
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let coef = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &coef * y;
                }
            }
        }
        pivots.push(col);
        next += 1;
    }
    rows.truncate(next);
    Subspace {
        ambient_dim: cols,
        basis: rows,
        pivots,
    }
}

/// Canonical row space of `m`.
pub fn rref(m: &QMatrix) -> Subspace {
    rref_rows(m.cols(), m.to_rows())
}

pub fn span_contains(s: &Subspace, v: &[Rational]) -> Result<bool, LinAlgError> {
    check_len(s.ambient_dim, v)?;
    Ok(s.contains_unchecked(v))
}

pub fn span_sum(a: &Subspace, b: &Subspace) -> Result<Subspace, LinAlgError> {
    check_same_ambient(a, b)?;
    let rows: Vec<Vec<Rational>> = a.basis.iter().chain(&b.basis).cloned().collect();
    Ok(rref_rows(a.ambient_dim, rows))
}

/// Null space `{x : M x = 0}` of a matrix given by rows, as a list of basis
/// vectors (one per free column).
pub fn kernel(cols: usize, rows: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>, LinAlgError> {
    for r in rows {
        check_len(cols, r)?;
    }
    let reduced = rref_rows(cols, rows.to_vec());
    let mut is_pivot = vec![false; cols];
    for &p in &reduced.pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![Rational::zero(); cols];
        x[free] = Rational::one();
        for (row, &p) in reduced.basis.iter().zip(&reduced.pivots) {
            x[p] = -row[free].clone();
        }
        out.push(x);
    }
    Ok(out)
}

/// `a ∩ b`, found by solving `sum α_i a_i - sum β_j b_j = 0` for `(α, β)` and
/// mapping each kernel vector back through `α`.
pub fn span_intersect(a: &Subspace, b: &Subspace) -> Result<Subspace, LinAlgError> {
    check_same_ambient(a, b)?;
    let n = a.ambient_dim;
    let (ra, rb) = (a.rank(), b.rank());
    if ra == 0 || rb == 0 {
        return Ok(Subspace::zero(n));
    }
    // One equation per ambient coordinate, one unknown per basis vector.
    let system: Vec<Vec<Rational>> = (0..n)
        .map(|c| {
            a.basis
                .iter()
                .map(|row| row[c].clone())
                .chain(b.basis.iter().map(|row| -row[c].clone()))
                .collect()
        })
        .collect();
    let solutions = kernel(ra + rb, &system)?;
    let vectors: Vec<Vec<Rational>> = solutions
        .iter()
        .map(|sol| {
            let mut x = vec![Rational::zero(); n];
            for (alpha, row) in sol[..ra].iter().zip(&a.basis) {
                if alpha.is_zero() {
                    continue;
                }
                for (xi, ri) in x.iter_mut().zip(row) {
                    *xi += alpha * ri;
                }
            }
            x
        })
        .collect();
    Ok(rref_rows(n, vectors))
}

/// Least common multiple of positive integers.
pub fn lcm(values: impl IntoIterator<Item = u64>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| {
        num_integer::Integer::lcm(&acc, &BigInt::from(v))
    })
}

pub fn floor_to_i64(q: &Rational) -> i64 {
    use num_traits::ToPrimitive;
    q.floor()
        .to_integer()
        .to_i64()
        .expect("floor fits in i64")
}

pub fn is_nonnegative(q: &Rational) -> bool {
    !q.is_negative()
}
