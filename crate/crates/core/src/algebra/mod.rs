//! Exact arithmetic: integers, rationals, univariate and bivariate
//! polynomials, the field `Q(x)`, bivariate rational functions and linear
//! differential operators.

pub mod bpoly;
pub mod diffop;
pub mod interp;
pub mod kronecker;
pub mod modp;
pub mod poly;
pub mod rfunc;
pub mod ring;
pub mod xfrac;
pub mod zpoly;

pub use bpoly::BPoly;
pub use diffop::{DiffOp, RatDiffOp};
pub use poly::{Degree, Poly};
pub use rfunc::RFunc;
pub use ring::{Field, Int, Rat, Ring};
pub use xfrac::{XFrac, XRatPoly};
pub use zpoly::{UPoly, ZPoly};
