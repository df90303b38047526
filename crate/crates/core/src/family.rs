//! Parameterized subfamilies of Pauli maps and their affine embeddings into
//! eigenvalue space.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::channel::PauliEigenvalues;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `(λ, 0, 0)`
    Axial,
    /// `(λ, λ, 0)`
    PairZero,
    /// `(λ, λ, λ)`
    Depolarizing,
    /// `(λ, η, 0)`
    TwoDistinctZero,
    /// `(λ, λ, η)`
    DegeneratePair,
    /// `(1 − p, 1 − p, 1 − 2p)`
    TwoPauli,
    /// `(1, 1 − 2p, 1 − 2p)`
    Dephasing,
    /// `(λ1, λ2, λ3)`
    General,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Axial,
        Family::PairZero,
        Family::Depolarizing,
        Family::TwoDistinctZero,
        Family::DegeneratePair,
        Family::TwoPauli,
        Family::Dephasing,
        Family::General,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Axial => "axial",
            Family::PairZero => "pair-zero",
            Family::Depolarizing => "depolarizing",
            Family::TwoDistinctZero => "two-distinct-zero",
            Family::DegeneratePair => "degenerate-pair",
            Family::TwoPauli => "two-pauli",
            Family::Dephasing => "dephasing",
            Family::General => "general",
        }
    }

    pub fn dimension(self) -> usize {
        self.embedding().dim
    }

    /// `λ = J x + c`.
    pub fn embedding(self) -> Embedding {
        let z = [0.0; 3];
        let (jacobian, offset, dim) = match self {
            Family::Axial => ([[1.0, 0.0, 0.0], z, z], z, 1),
            Family::PairZero => ([[1.0, 0.0, 0.0], [1.0, 0.0, 0.0], z], z, 1),
            Family::Depolarizing => ([[1.0, 0.0, 0.0]; 3], z, 1),
            Family::TwoDistinctZero => ([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], z], z, 2),
            Family::DegeneratePair => ([[1.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], z, 2),
            Family::TwoPauli => (
                [[-1.0, 0.0, 0.0], [-1.0, 0.0, 0.0], [-2.0, 0.0, 0.0]],
                [1.0, 1.0, 1.0],
                1,
            ),
            Family::Dephasing => ([z, [-2.0, 0.0, 0.0], [-2.0, 0.0, 0.0]], [1.0, 1.0, 1.0], 1),
            Family::General => ([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]], z, 3),
        };
        Embedding {
            jacobian,
            offset,
            dim,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
                Error::InvalidArgument(format!(
                    "unknown family '{s}' (expected one of: {})",
                    names.join(", ")
                ))
            })
    }
}

/// Affine map from family parameters to eigenvalues. Row `k` of `jacobian`
/// holds the coefficients of `λk`; columns beyond `dim` are zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Embedding {
    pub jacobian: [[f64; 3]; 3],
    pub offset: [f64; 3],
    pub dim: usize,
}

impl Embedding {
    pub fn apply(&self, x: &[f64]) -> PauliEigenvalues {
        debug_assert_eq!(x.len(), self.dim);
        let mut l = self.offset;
        for (k, row) in self.jacobian.iter().enumerate() {
            for (i, xi) in x.iter().enumerate() {
                l[k] += row[i] * xi;
            }
        }
        PauliEigenvalues(l)
    }

    /// True when `λk` does not depend on the parameters.
    pub fn is_constant(&self, k: usize) -> bool {
        self.jacobian[k][..self.dim].iter().all(|&a| a == 0.0)
    }
}

/// Parameters of a family member (`λ`, `η` or `p`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams(pub Vec<f64>);

impl FamilyParams {
    pub fn new(params: impl Into<Vec<f64>>) -> Self {
        Self(params.into())
    }
}

pub fn embed(f: Family, x: &FamilyParams) -> Result<PauliEigenvalues> {
    let emb = f.embedding();
    if x.0.len() != emb.dim {
        return Err(Error::DimensionMismatch {
            family: f,
            expected: emb.dim,
            got: x.0.len(),
        });
    }
    Ok(emb.apply(&x.0))
}

/// Hilbert-Schmidt density `√det(Jᵀ g J)` with `g = I/4`.
pub fn metric_scale(f: Family) -> f64 {
    let emb = f.embedding();
    let j = DMatrix::from_fn(3, emb.dim, |k, i| emb.jacobian[k][i]);
    let gram = j.transpose() * j * 0.25;
    gram.determinant().sqrt()
}

/// Axis-aligned parameter box covering the positive region of the family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamBox {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl ParamBox {
    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn volume(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| hi - lo)
            .product()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(v, (lo, hi))| *lo <= *v && *v <= *hi)
    }
}

pub fn parameter_box(f: Family) -> ParamBox {
    let d = f.dimension();
    match f {
        Family::TwoPauli | Family::Dephasing => ParamBox {
            lower: vec![0.0],
            upper: vec![1.0],
        },
        _ => ParamBox {
            lower: vec![-1.0; d],
            upper: vec![1.0; d],
        },
    }
}
