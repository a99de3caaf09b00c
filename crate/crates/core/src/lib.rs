//! Numerical splitting of separatrices, scattering data and Birkhoff normal
//! forms for coupled scale-factor/field Hamiltonians on FLRW backgrounds.

pub mod acceptance;
pub mod dynamics;
pub mod error;
pub mod figures;
pub mod melnikov;
pub mod models;
pub mod normalform;
pub mod scattering;
pub mod special_fn;

pub use error::{Error, Result};
