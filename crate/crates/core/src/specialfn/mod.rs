//! Special functions: complex gamma, generalized Laguerre polynomials and the
//! Tricomi confluent hypergeometric function.

mod gamma;
mod hypu;
mod laguerre;

pub use gamma::{gamma, ln_gamma, nonpositive_integer};
pub use hypu::{hyp_u, hyp_u_diagonal, hyp_u_jet, kummer_transform, principal_pow, whittaker_w};
pub use laguerre::laguerre;
