//! Exact Gerstenhaber calculus on polynomial Lie algebroids.

pub mod algebroid;
pub mod differentials;
pub mod error;
pub mod exterior;
pub mod io;
pub mod lifts;
pub mod manin;
pub mod parse;
pub mod poly;
pub mod report;
pub mod scalar;

pub use algebroid::LieAlgebroid;
pub use differentials::{AlmostDifferential, QuasiLieBialgebroid};
pub use error::{Error, Result};
pub use lifts::TotalSpace;
pub use manin::{
    check_hamiltonian, double, pi_s, transformation_qlb, twisted_poisson_qlb, AlgebroidAction, LieAlgebra,
    ManinQuasiTriple, PolynomialAction, QuadraticLieAlgebra, QuasiLieBialgebra, TwistedPoisson,
};
pub use exterior::{sharp_power, Frame, FrameKind, FormValue, MultiIndex, Multivector};
pub use parse::{parse_rational, parse_scalar};
pub use poly::{Monomial, Polynomial, VarSet};
pub use report::{Check, Report, Residual, ResidualValue};
pub use scalar::{rat, Rational, Scalar};

/// Exact polynomial.
pub type Poly = Polynomial<Rational>;
/// Exact multivector.
pub type Multivec = Multivector<Rational>;
/// Exact Lie algebroid.
pub type Algebroid = LieAlgebroid<Rational>;
/// Exact almost differential.
pub type Differential = AlmostDifferential<Rational>;
/// Exact quasi-Lie bialgebroid.
pub type Qlb = QuasiLieBialgebroid<Rational>;
