//! Sparse multivariate polynomials over the rationals and their text syntax.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactla::{format_rational, Rational};

/// Exponent vector; ordered graded-lexicographically with `x0 > x1 > ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn variable(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of degree `d` in `n` variables, largest first in grlex.
pub fn monomials_of_degree(n: usize, d: usize) -> Vec<Monomial> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(n, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(n, d as u32, &mut Vec::with_capacity(n), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Monomial::one(n), c);
        p
    }

    /// The linear form `Σ coeffs[i] x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::variable(n, i), c.clone());
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    /// Nonzero terms in increasing grlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        assert_eq!(m.0.len(), self.n, "monomial has wrong number of variables");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Homogeneous components keyed by degree; zero components are absent.
    pub fn homogeneous_components(&self) -> BTreeMap<usize, Polynomial> {
        let mut out: BTreeMap<usize, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Polynomial::zero(self.n))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
                .collect();
            if factors.is_empty() {
                f.write_str(&format_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", format_rational(&abs))?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("polynomial parse error at position {position}: {message}")]
pub struct PolyParseError {
    pub position: usize,
    pub message: String,
}

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn err(&self, message: impl Into<String>) -> PolyParseError {
        PolyParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.text[start..self.pos]).into_owned())
    }
}

/// Parses sums of terms like `2/3*x0^2*x1 - x2 + 5` over the variables
/// `x0 .. x{n-1}`.
pub fn parse_polynomial(text: &str, n: usize) -> Result<Polynomial, PolyParseError> {
    let mut cur = Cursor {
        text: text.as_bytes(),
        pos: 0,
    };
    let mut poly = Polynomial::zero(n);
    let mut first = true;
    loop {
        let mut negative = false;
        match cur.peek() {
            None if first => return Err(cur.err("empty polynomial")),
            None => return Err(cur.err("expected a term after the sign")),
            Some(b'+') if !first => cur.pos += 1,
            Some(b'-') => {
                negative = true;
                cur.pos += 1;
            }
            Some(_) if !first => return Err(cur.err("expected '+' or '-' between terms")),
            Some(_) => {}
        }
        first = false;
        let (coef, monomial) = parse_term(&mut cur, n)?;
        poly.add_term(monomial, if negative { -coef } else { coef });
        if cur.peek().is_none() {
            return Ok(poly);
        }
    }
}

fn parse_term(cur: &mut Cursor<'_>, n: usize) -> Result<(Rational, Monomial), PolyParseError> {
    let mut coef = Rational::one();
    let mut have_coef = false;
    if let Some(num) = cur.digits() {
        let num: BigInt = num.parse().expect("digits");
        let den: BigInt = if cur.peek() == Some(b'/') {
            cur.pos += 1;
            let d = cur.digits().ok_or_else(|| cur.err("expected a denominator after '/'"))?;
            d.parse().expect("digits")
        } else {
            BigInt::one()
        };
        if den.is_zero() {
            return Err(cur.err("zero denominator"));
        }
        coef = Rational::new(num, den);
        have_coef = true;
        if cur.peek() == Some(b'*') {
            cur.pos += 1;
            if cur.peek() != Some(b'x') {
                return Err(cur.err("expected a variable after '*'"));
            }
        }
    }
    let mut exps = vec![0u32; n];
    let mut have_factor = false;
    while cur.peek() == Some(b'x') {
        let at = cur.pos;
        cur.pos += 1;
        let idx_text = cur.digits().ok_or_else(|| cur.err("expected a variable index after 'x'"))?;
        let idx: usize = idx_text.parse().map_err(|_| cur.err("variable index too large"))?;
        if idx >= n {
            return Err(PolyParseError {
                position: at,
                message: format!("unknown variable x{idx}: only x0..x{} exist", n.saturating_sub(1)),
            });
        }
        let mut power = 1u32;
        if cur.peek() == Some(b'^') {
            cur.pos += 1;
            let p = cur.digits().ok_or_else(|| cur.err("expected an exponent after '^'"))?;
            power = p.parse().map_err(|_| cur.err("exponent too large"))?;
        }
        exps[idx] += power;
        have_factor = true;
        if cur.peek() != Some(b'*') {
            break;
        }
        cur.pos += 1;
        if cur.peek() != Some(b'x') {
            return Err(cur.err("expected a variable after '*'"));
        }
    }
    if !have_coef && !have_factor {
        return Err(cur.err("expected a coefficient or a variable"));
    }
    Ok((coef, Monomial(exps)))
}
