//! Central hyperplane arrangements with multiplicities, their JSON file
//! format, and the braid arrangement generator.

use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{canonicalize, format_rational, int, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("malformed arrangement document: {0}")]
    Syntax(String),
    #[error("ambient dimension must be at least 1")]
    ZeroDimension,
    #[error("arrangement has no hyperplanes")]
    Empty,
    #[error("hyperplane {index}: normal has length {found}, expected {expected}")]
    WrongLength {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("hyperplane {index}: {message}")]
    BadRational { index: usize, message: String },
    #[error("hyperplane {index}: zero normal vector")]
    ZeroNormal { index: usize },
    #[error("hyperplane {index}: multiplicity must be a positive integer, found {found}")]
    BadMultiplicity { index: usize, found: i64 },
    #[error("hyperplane {index}: duplicate hyperplane, proportional to hyperplane {first}")]
    Duplicate { index: usize, first: usize },
    #[error("braid arrangement needs n >= 2, got {0}")]
    BraidTooSmall(usize),
}

/// A linear hyperplane `{x : normal · x = 0}` counted `mult` times.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    normal: Vec<Rational>,
    mult: u64,
}

impl Hyperplane {
    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn mult(&self) -> u64 {
        self.mult
    }
}

/// A central arrangement in `Q^dim`. Normals are canonical (first nonzero
/// entry 1) and pairwise non-proportional; the input order is kept and all
/// index sets refer to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HyperplaneDoc {
    normal: Vec<String>,
    #[serde(default = "default_mult")]
    mult: i64,
}

fn default_mult() -> i64 {
    1
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrangementDoc {
    dim: usize,
    hyperplanes: Vec<HyperplaneDoc>,
}

impl Arrangement {
    /// Validates and canonicalizes `(normal, mult)` pairs.
    pub fn new(dim: usize, hyperplanes: Vec<(Vec<Rational>, i64)>) -> Result<Self, ArrangementError> {
        if dim == 0 {
            return Err(ArrangementError::ZeroDimension);
        }
        if hyperplanes.is_empty() {
            return Err(ArrangementError::Empty);
        }
        let mut seen: HashMap<Vec<Rational>, usize> = HashMap::new();
        let mut out = Vec::with_capacity(hyperplanes.len());
        for (index, (normal, mult)) in hyperplanes.into_iter().enumerate() {
            if normal.len() != dim {
                return Err(ArrangementError::WrongLength {
                    index,
                    expected: dim,
                    found: normal.len(),
                });
            }
            if normal.iter().all(Zero::is_zero) {
                return Err(ArrangementError::ZeroNormal { index });
            }
            if mult < 1 {
                return Err(ArrangementError::BadMultiplicity { index, found: mult });
            }
            let normal = canonicalize(&normal);
            if let Some(&first) = seen.get(&normal) {
                return Err(ArrangementError::Duplicate { index, first });
            }
            seen.insert(normal.clone(), index);
            out.push(Hyperplane {
                normal,
                mult: mult as u64,
            });
        }
        Ok(Arrangement {
            dim,
            hyperplanes: out,
        })
    }

    /// Convenience constructor from integer normals.
    pub fn from_integer_normals(dim: usize, hyperplanes: &[(&[i64], i64)]) -> Result<Self, ArrangementError> {
        Self::new(
            dim,
            hyperplanes
                .iter()
                .map(|(n, m)| (n.iter().map(|&x| int(x)).collect(), *m))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn normal(&self, i: usize) -> &[Rational] {
        &self.hyperplanes[i].normal
    }

    pub fn mult(&self, i: usize) -> u64 {
        self.hyperplanes[i].mult
    }

    pub fn is_reduced(&self) -> bool {
        self.hyperplanes.iter().all(|h| h.mult == 1)
    }

    pub fn to_json(&self) -> String {
        let doc = ArrangementDoc {
            dim: self.dim,
            hyperplanes: self
                .hyperplanes
                .iter()
                .map(|h| HyperplaneDoc {
                    normal: h.normal.iter().map(format_rational).collect(),
                    mult: h.mult as i64,
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("arrangement serializes");
        s.push('\n');
        s
    }
}

/// Reads the JSON arrangement format:
/// `{"dim": n, "hyperplanes": [{"normal": ["1", "-1/2", ...], "mult": 2}, ...]}`.
pub fn parse_arrangement(text: &str) -> Result<Arrangement, ArrangementError> {
    let doc: ArrangementDoc =
        serde_json::from_str(text).map_err(|e| ArrangementError::Syntax(e.to_string()))?;
    let mut hyperplanes = Vec::with_capacity(doc.hyperplanes.len());
    for (index, h) in doc.hyperplanes.into_iter().enumerate() {
        let normal = h
            .normal
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| ArrangementError::BadRational {
                index,
                message: e.to_string(),
            })?;
        hyperplanes.push((normal, h.mult));
    }
    Arrangement::new(doc.dim, hyperplanes)
}

/// The braid arrangement `x_i = x_j` (`i < j`) in `Q^n`, lexicographic order.
pub fn braid(n: usize) -> Result<Arrangement, ArrangementError> {
    if n < 2 {
        return Err(ArrangementError::BraidTooSmall(n));
    }
    let mut hyperplanes = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let mut normal = vec![int(0); n];
            normal[i] = int(1);
            normal[j] = int(-1);
            hyperplanes.push((normal, 1));
        }
    }
    Arrangement::new(n, hyperplanes)
}

/// Index of the braid hyperplane `x_i = x_j` in [`braid`] order.
pub fn braid_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    // rows before i contribute (n-1) + (n-2) + ... + (n-i)
    i * n - i * (i + 1) / 2 + (j - i - 1)
}
