//! Exact-arithmetic library for toroidal Lie algebras.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere. The crate builds the root data and bilinear
//! forms of an `n`-variable toroidal extension of `sl(d+1)`, the Lie
//! algebra itself with its two-cocycle bracket, evaluation homomorphisms
//! onto finite direct sums, and weight-graded highest weight modules
//! (finite, affine-truncated, tensor-evaluation and loop forms), together
//! with the GL(n,Z) automorphism family and a battery of exact checks.

pub mod error;
pub mod exact;
pub mod root_data;
pub mod tau;
pub mod evaluation;
pub mod verma;
pub mod freudenthal;
pub mod modules;
pub mod automorphism;

pub use error::{Error, Result};
pub use exact::scalar::Scalar;
pub use exact::monomial::Monomial;
pub use exact::laurent::LaurentPoly;
pub use exact::intmat::IntMatrix;
pub use exact::qmat::QMat;
pub use root_data::{CoweightVec, RealRoot, ToroidalRootSystem, WeightVec};
pub use tau::{CenterElement, MatrixG, Sl2Triple, TauElement};
pub use evaluation::{EvalHom, GridMatrix, PointGrid};
pub use modules::{twist_module, GammaLattice, PsiFunctional, TruncatedModule};
pub use automorphism::TauAutomorphism;
