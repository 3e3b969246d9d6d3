//! Creative telescoping for bivariate rational functions.
//!
//! Given `f(x, y)` in `Q(x, y)`, a telescoper is a nonzero operator
//! `L = sum_i eta_i(x) D_x^i` such that `L(f) = D_y(g)` for some rational
//! certificate `g`. The crate offers:
//!
//! * Hermite reduction in `y` over `Q(x)` with three engines
//!   ([`hermite`]),
//! * the reduction-based telescoping algorithm ([`ht`]),
//! * the rational Almkvist–Zeilberger algorithm ([`ratz`]),
//! * non-minimal telescopers from linear algebra on a fixed ansatz
//!   ([`nonmin`]),
//! * annihilators of diagonals of rational power series ([`diag`]).
//!
//! All arithmetic is exact; every returned telescoper can be checked with
//! [`telescope::verify_telescoper`].

pub mod algebra;
pub mod bench;
pub mod deadline;
pub mod diag;
pub mod error;
pub mod hermite;
pub mod ht;
pub mod linalg;
pub mod nonmin;
pub mod parser;
pub mod ratz;
pub mod telescope;

pub use error::{Error, Result};
