//! Special functions used by the quasi-front asymptotics.
//!
//! All routines are pure and reentrant.

mod airy;
mod bessel;
mod modbessel;
mod phi;
pub mod quadrature;

pub use airy::{airy, AiryValues, AI_ZERO, NEG_AIP_ZERO};
pub use bessel::{bessel_j, bessel_j_derivs, bessel_j_prime, bessel_jn, MAX_ARG as BESSEL_MAX_ARG, MAX_ORDER as BESSEL_MAX_ORDER};
pub use modbessel::{modbessel_i_scaled, scaled_power_product, ORDERS as MODBESSEL_ORDERS};
pub use phi::{phi, PhiEvalMethod, PhiKind, MAX_ABS_KAPPA};
