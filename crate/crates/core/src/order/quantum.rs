//! Real-vector reference model of the quantum probability measure.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_DIM: usize = 8;
const TOL: f64 = 1e-9;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::InvalidState(format!("dimension {dim} outside 1..={MAX_DIM}")));
    }
    Ok(())
}

/// Orthogonal directions with non-negative weights summing to one; the
/// counterpart of a density operator.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedOrthogonalSet {
    dim: usize,
    vectors: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

impl WeightedOrthogonalSet {
    pub fn new(vectors: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        if vectors.is_empty() || vectors.len() != weights.len() {
            return Err(Error::InvalidState("need one weight per vector".into()));
        }
        let dim = vectors[0].len();
        check_dim(dim)?;
        for v in &vectors {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
            if norm(v) <= TOL {
                return Err(Error::InvalidState("zero vector".into()));
            }
        }
        for i in 0..vectors.len() {
            for j in (i + 1)..vectors.len() {
                let c = dot(&vectors[i], &vectors[j]) / (norm(&vectors[i]) * norm(&vectors[j]));
                if c.abs() > TOL {
                    return Err(Error::InvalidState(format!("vectors {i} and {j} are not orthogonal")));
                }
            }
        }
        let sum: f64 = weights.iter().sum();
        if weights.iter().any(|w| w.is_nan() || *w < 0.0) || (sum - 1.0).abs() > TOL {
            return Err(Error::InvalidState(format!(
                "weights must be >= 0 and sum to 1 (sum = {sum})"
            )));
        }
        Ok(Self { dim, vectors, weights })
    }

    /// Pure state along `v`.
    pub fn pure(v: Vec<f64>) -> Result<Self> {
        Self::new(vec![v], vec![1.0])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> {
        self.vectors.iter().map(Vec::as_slice).zip(self.weights.iter().copied())
    }
}

/// Orthogonal projector onto the span of an orthonormal basis. An empty basis
/// is the zero projector.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    dim: usize,
    basis: Vec<Vec<f64>>,
}

impl Projector {
    pub fn new(dim: usize, basis: Vec<Vec<f64>>) -> Result<Self> {
        check_dim(dim)?;
        for (i, b) in basis.iter().enumerate() {
            if b.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: b.len(),
                });
            }
            if (norm(b) - 1.0).abs() > TOL {
                return Err(Error::InvalidState(format!("basis vector {i} is not unit length")));
            }
            for c in &basis[..i] {
                if dot(b, c).abs() > TOL {
                    return Err(Error::InvalidState("basis is not orthogonal".into()));
                }
            }
        }
        Ok(Self { dim, basis })
    }

    /// Projector onto the span of arbitrary vectors (Gram–Schmidt).
    pub fn span(dim: usize, vectors: &[Vec<f64>]) -> Result<Self> {
        check_dim(dim)?;
        let mut basis: Vec<Vec<f64>> = Vec::new();
        for v in vectors {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
            let mut u = v.clone();
            for b in &basis {
                let c = dot(&u, b);
                u.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
            let n = norm(&u);
            if n > TOL {
                basis.push(u.into_iter().map(|x| x / n).collect());
            }
        }
        Ok(Self { dim, basis })
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Self::new(dim, Vec::new())
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let basis = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        Self::new(dim, basis)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for b in &self.basis {
            let c = dot(b, v);
            out.iter_mut().zip(b).for_each(|(o, x)| *o += c * x);
        }
        out
    }

    /// Projector onto the orthogonal complement.
    pub fn complement(&self) -> Self {
        let mut vectors = self.basis.clone();
        vectors.extend(Self::identity(self.dim).expect("valid dim").basis);
        let full = Self::span(self.dim, &vectors).expect("valid dim");
        Self {
            dim: self.dim,
            basis: full.basis[self.basis.len()..].to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValuationVariant {
    /// `Σ w_i ‖Π e_i‖² / ‖e_i‖²`, equal to `Tr(Πρ)`.
    #[default]
    Trace,
    /// `Σ w_i ‖Π e_i‖ / ‖e_i‖`, the unsquared ratio.
    Linear,
}

pub fn projector_valuation(s: &WeightedOrthogonalSet, pr: &Projector, variant: ValuationVariant) -> Result<f64> {
    if s.dim() != pr.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            got: pr.dim(),
        });
    }
    Ok(s.iter()
        .map(|(e, w)| {
            let ratio = norm(&pr.apply(e)) / norm(e);
            match variant {
                ValuationVariant::Trace => w * ratio * ratio,
                ValuationVariant::Linear => w * ratio,
            }
        })
        .sum())
}
