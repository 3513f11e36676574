//! Quadrature, ODE integration, extrapolation and Chebyshev collocation
//! shared by the physics modules.

pub mod chebyshev;
pub mod ode;
pub mod quad;
pub mod richardson;
