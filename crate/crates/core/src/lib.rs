//! Exact-arithmetic evaluation of multiple harmonic (star) sums, Stirling
//! numbers of the first kind, complete Bell polynomials, and verification of
//! the Mneimneh-type binomial-sum identities that connect them, together
//! with a high-precision numeric module for the associated multiple zeta
//! star series.
//!
//! All identity checks run over arbitrary-precision rationals with zero
//! tolerance: two sides either agree exactly or the point is a
//! counterexample. Floating point appears only in the `numeric` module,
//! and there as fixed-point decimals of configurable precision.

#![forbid(unsafe_code)]
// DP layers index several parallel tables by position; ranged loops read
// better than zipped iterator chains there.
#![allow(clippy::needless_range_loop)]

pub mod composition;
pub mod error;
pub mod harmonic;
pub mod identities;
pub mod numeric;
pub mod rational;
pub mod stirling_bell;

pub use composition::Composition;
pub use error::{Error, Result};
pub use harmonic::HarmonicEvaluator;
pub use identities::{EvalCtx, GridSpec, ParamPoint, Registry};
pub use rational::Rational;
