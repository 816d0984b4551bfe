//! High-precision laboratory for the alternating zeta function
//! eta(s) = sum (-1)^(k-1) k^(-s), its partial sums, the tail remainder
//! R_n(s), the closed-form approximant T_n(s) = (-1)^n / (2(n+0.5)^s),
//! the functional-equation factors chi(s) and lambda(s), and a set of
//! numerical limit probes built on top of them.
//!
//! Layout:
//! - [`mp`]: arbitrary-precision real/complex kernel (powers, gamma,
//!   Bernoulli numbers, constants, decimal formatting).
//! - [`eta`]: series engine (partial sums, Hurwitz zeta, accelerated
//!   full sums, tail remainders, error terms).
//! - [`funceq`]: functional-equation factors and residual checks.
//! - [`probe`]: limit probes (ratio sequences, sup-norm scan, zero
//!   locator, iterated-limit exchange report).
//!
//! All operations are pure; results are bit-deterministic for identical
//! inputs regardless of thread scheduling.

pub mod error;
pub mod eta;
pub mod funceq;
pub mod mp;
pub mod probe;

pub use error::{EtaError, Result};
pub use mp::{BigComplex, BigReal, Precision};
