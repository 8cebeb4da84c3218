//! Chain-level algebra for Z/2-equivariant and polarization-twisted Floer and
//! Morse complexes built from finite trajectory-count datasets.

pub mod coeff_algebra;
pub mod complexes;
pub mod equiv_floer;
pub mod equivariant;
pub mod generate;
pub mod morse_km;
pub mod twisted;
pub mod error;

pub use error::{Error, Result};
