//! Pointwise numeric checks.
//!
//! Coisotropy of subspaces for k-vectors, multiplicativity of multivector
//! fields on Lie groupoids through coisotropy of the multiplication graph,
//! and finite-difference Schouten brackets. Everything here is `f64`.

pub mod coisotropic;
pub mod error;
pub mod group;
pub mod groupoid;
pub mod harness;
pub mod multivector;
pub mod schouten;

pub use coisotropic::{
    compose, compose_relation_check, is_coisotropic, CoisotropyResult, CompositionOutcome, CompositionReport,
    Subspace,
};
pub use error::{Error, Result};
pub use group::{GroupName, MatrixGroup};
pub use groupoid::{
    fd_jacobian, graph_multiplicativity_check, graph_tangent, Convention, GroupoidChartSample, GroupoidModel, GxG,
    GxGArrow, MultiplicativityReport, PairGroupoid, Reading,
};
pub use harness::{run_sample_set, SampleResidual, SampleSet, SampleSetReport};
pub use multivector::PointedMultivector;
pub use schouten::{fd_schouten, FdSchouten, QuasiPoissonResidual};

/// Relative tolerance for quantities that vanish exactly in principle.
pub const DEFAULT_TOL: f64 = 1e-6;
/// Tolerance for finite-difference quantities.
pub const DEFAULT_FD_TOL: f64 = 1e-4;
/// Central difference step.
pub const DEFAULT_FD_STEP: f64 = 1e-5;
