//! Exact computation of symmetric ranks, border ranks and rank strata of
//! symmetric tensors, viewed as homogeneous forms with rational
//! coefficients.
//!
//! The crate provides:
//! - exact forms, the form/tensor coefficient correspondence and linear
//!   changes of variables ([`form`], [`parse`]);
//! - catalecticant matrices with exact rank and apolar kernels
//!   ([`catalecticant`]);
//! - the binary (two-variable) rank machinery: the simplified rank
//!   algorithm, full decompositions and the monomial rank law
//!   ([`sylvester`]);
//! - classifiers for small border rank in any number of variables,
//!   including the interpolated Aronhold invariant of plane cubics and
//!   the base-locus analysis behind the border-rank-3 strata ([`strata`]);
//! - independent verification tools: exact reconstruction, seeded witness
//!   generators, a numeric rank-upper-bound search and a tiny exact
//!   elimination of secant-variety ideals ([`oracle`]).

pub mod catalecticant;
pub mod error;
pub mod form;
pub mod groebner;
pub mod multiindex;
pub mod parse;
pub mod qmat;
pub mod rational;
pub mod roots;
pub mod sylvester;
pub mod univariate;

pub use error::{Error, Result};
pub use form::{LinearChange, SymmetricForm, TensorCoeffs};
pub use multiindex::MultiIndex;
pub use parse::parse_form;
pub use rational::Rational;
