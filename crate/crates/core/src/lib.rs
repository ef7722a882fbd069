//! Series solutions of the double-confluent Heun equation
//!
//! ```text
//! z² U'' + (B1 + B2 z) U' + (B3 − 2ηω z + ω² z²) U = 0,   B1 ≠ 0, ω ≠ 0
//! ```
//!
//! The crate builds the four pairs of solutions obtained from the asymptotic
//! expansion at infinity (power series / irregular confluent hypergeometric
//! series), their sign-flipped companions, the Coulomb-wave expansions with and
//! without a phase parameter, the kernels connecting the members of each pair,
//! and the quasi-exactly-solvable spectra of the hyperbolic double-Morse type
//! potentials.
//!
//! Module map:
//! - [`specialfn`]: Γ, U(a,b,z), Laguerre polynomials, Kummer transform
//! - [`equation`]: parameters, residual, transformation rules, gauges, normal forms
//! - [`recurrence`]: three-term recurrences, continued fractions, tridiagonal spectra
//! - [`solutions`]: solution families and their evaluation
//! - [`integral`]: kernels, transform checks, appendix integrals
//! - [`qes`]: Schrödinger applications

pub mod equation;
pub mod error;
pub mod integral;
pub mod jet;
pub mod qes;
pub mod quadrature;
pub mod recurrence;
pub mod solutions;
pub mod specialfn;

pub use num_complex::Complex64 as Complex;

pub use equation::{DcheParams, GaugeMap, Rule};
pub use error::{HeunError, Result};
pub use jet::Jet;
pub use recurrence::{CoeffSeq, RecurrenceForm, ThreeTermCoeffs};
pub use solutions::{DcheSolution, Family, Variant};

/// Imaginary unit.
pub const I: Complex = Complex::new(0.0, 1.0);

