//! Particle/antiparticle separation of single Dirac modes, the dipole-coupled
//! hydrogen radial series, a numerical angular eigensolver, cutoff-regularized
//! hyperfine integrals and the nonlocal square-root kernel.
//!
//! Units: ħ = c = m = 1 everywhere except [`hyperfine`], which works in atomic
//! units (Bohr radius = 1).

pub mod angular;
pub mod cli;
pub mod diracsep;
pub mod error;
pub mod hyperfine;
pub mod numerics;
pub mod radial_dipole;
pub mod specfun;
pub mod sqrt_kernel;

pub use error::{Error, Result};
