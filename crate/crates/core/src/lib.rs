//! Arbitrary-precision evaluation of inverse binomial series
//! `S_k(z) = Σ z^n / ((2n+1)^k C(2n,n))`, the polylogarithms they reduce to,
//! and a verifier for closed-form evaluations of them.

pub mod bernoulli;
pub mod constants;
pub mod error;
pub mod expr;
pub mod point;
pub mod polylog;
pub mod precision;
pub mod quadrature;
pub mod series;
pub mod shuffle;
pub mod verifier;

pub use constants::{NamedConstant, hurwitz_zeta, named_constant};
pub use error::{Error, Result};
pub use expr::{ConstantExpr, eval_expr};
pub use point::{GaussRat, Letter};
pub use polylog::{CutSide, GplWord, MplSpec, gpl_eval, gpl_to_mpl, li, mpl_direct, mpl_to_gpl};
pub use precision::{ApComplex, PrecisionCtx, with_retry};
pub use quadrature::{chen2_contour, genchen_contour};
pub use series::{SeriesSpec, s_series};
pub use verifier::{Identity, VerificationReport, builtin_catalog, verify, verify_all};
