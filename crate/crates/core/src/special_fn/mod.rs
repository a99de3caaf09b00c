//! Special functions and quadrature used by the splitting computations.
//!
//! Everything here is pure and allocation-free apart from the quadrature
//! bookkeeping, so values can be shared freely between threads.

mod gamma;
mod jacobi;
mod quadrature;

pub use gamma::{gamma_complex, ln_gamma_complex};
pub use jacobi::{agm, complete_k, jacobi, EllipticModulus, JacobiValues};
pub use quadrature::{
    integrate_decaying, integrate_decaying_detailed, integrate_interval, QuadratureResult,
    QuadratureSpec,
};
