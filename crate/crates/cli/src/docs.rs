//! Input documents specific to CLI pipelines. Everything else is read
//! through `gerstenhaber::io`.

use gerstenhaber::io::{ActionDoc, AlgebroidDoc, DifferentialDoc, LieAlgebraDoc, MultivectorDoc};
use serde::{Deserialize, Serialize};

/// A section of ∧^k A for the complete, vertical and gauge lifts.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SectionDoc {
    pub algebroid: AlgebroidDoc,
    pub section: MultivectorDoc,
}

/// An action of the triple's 𝔡 on a coordinate space.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransformationDoc {
    pub triple: LieAlgebraDoc,
    pub action: ActionDoc,
}

/// π on frame "TM" and φ on frame "T*M" over `coords`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TwistedPoissonDoc {
    pub coords: Vec<String>,
    pub pi: MultivectorDoc,
    pub phi: MultivectorDoc,
}

/// (A, δ, Ω) acting on X with momentum J and bivector Π_X; fields and Π_X
/// live on frame "TX".
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HamiltonianDoc {
    pub qlb: DifferentialDoc,
    pub coords: Vec<String>,
    #[serde(default)]
    pub params: Vec<String>,
    pub fields: Vec<MultivectorDoc>,
    #[serde(default)]
    pub momentum: Vec<String>,
    pub pi: MultivectorDoc,
}

/// A pointed k-vector (1-based indices) and a subspace by spanning vectors.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoisotropyDoc {
    pub dim: usize,
    pub degree: usize,
    pub terms: Vec<PointTermDoc>,
    pub subspace: Vec<Vec<f64>>,
    #[serde(default)]
    pub tolerance: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointTermDoc {
    pub idx: Vec<usize>,
    pub value: f64,
}
