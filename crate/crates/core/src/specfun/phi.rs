//! The damped oscillatory integrals Φ₁, Φ₂, Φ₃ of the viscous quasi-front.
//!
//! ```text
//! Φ₁(κ) = ∫₀^∞ e^{−z²} z^{−1/2} sin(−zκ + π/4) dz
//! Φ₂(κ) = ∫₀^∞ e^{−z²} z^{1/2}  sin( zκ + π/4) dz
//! Φ₃(κ) = ∫₀^∞ e^{−z²} z^{3/2}  sin( zκ − π/4) dz
//! ```
//!
//! Each has a closed form in e^{−η}I_ν(η), η = κ²/8. The closed forms are
//! assembled from [`scaled_power_product`] terms only, so nothing overflows
//! at large |κ|. For Φ₃ the form reduced with the quarter-order recurrences
//! is used; it agrees with the integral to round-off.

use std::f64::consts::{FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use super::modbessel::scaled_power_product;
use super::quadrature::integrate;
use crate::error::{domain, Result};

/// Largest |κ| accepted.
pub const MAX_ABS_KAPPA: f64 = 60.0;

// e^{−z²} z^{3/2} < 1e−16 beyond this point.
const Z_MAX: f64 = 6.5;
const QUAD_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhiKind {
    Phi1,
    Phi2,
    Phi3,
}

impl PhiKind {
    pub const ALL: [PhiKind; 3] = [PhiKind::Phi1, PhiKind::Phi2, PhiKind::Phi3];

    pub fn index(self) -> u8 {
        match self {
            PhiKind::Phi1 => 1,
            PhiKind::Phi2 => 2,
            PhiKind::Phi3 => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PhiEvalMethod {
    #[default]
    ClosedForm,
    Quadrature,
}

/// sgn with sgn(0) = 0.
fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

pub fn phi(which: PhiKind, kappa: f64, method: PhiEvalMethod) -> Result<f64> {
    if !kappa.is_finite() || kappa.abs() > MAX_ABS_KAPPA {
        return domain(format!("Φ argument κ = {kappa} outside [-{MAX_ABS_KAPPA}, {MAX_ABS_KAPPA}]"));
    }
    match method {
        PhiEvalMethod::ClosedForm => closed_form(which, kappa),
        PhiEvalMethod::Quadrature => Ok(quadrature(which, kappa)),
    }
}

fn closed_form(which: PhiKind, k: f64) -> Result<f64> {
    let a = |p: f64, nu: f64| scaled_power_product(p, nu, k);
    let s = sgn(k);
    let v = match which {
        PhiKind::Phi1 => 0.25 * PI * (a(0.5, -0.25)? - s * a(0.5, 0.25)?),
        PhiKind::Phi2 => {
            PI / 16.0 * (a(1.5, -0.75)? - a(1.5, 0.25)? - s * (a(1.5, 0.75)? - a(1.5, -0.25)?))
        }
        PhiKind::Phi3 => {
            // (κ²−2)I_{−1/4} − κ²I_{3/4} − sgn[(κ²−2)I_{1/4} − κ²I_{−3/4}], times π|κ|^{1/2}e^{−η}/32
            let even = a(2.5, -0.25)? - 2.0 * a(0.5, -0.25)? - a(2.5, 0.75)?;
            let odd = a(2.5, 0.25)? - 2.0 * a(0.5, 0.25)? - a(2.5, -0.75)?;
            PI / 32.0 * (even - s * odd)
        }
    };
    Ok(v)
}

/// Defining integral after z = u², which removes the endpoint power:
/// dz·z^{α} = 2u^{2α+1} du.
fn quadrature(which: PhiKind, k: f64) -> f64 {
    let upper = Z_MAX.sqrt();
    let panels = 8 + (k.abs() * Z_MAX / PI).ceil() as usize;
    let (v, _) = match which {
        PhiKind::Phi1 => integrate(
            |u| 2.0 * (-(u * u * u * u)).exp() * (FRAC_PI_4 - k * u * u).sin(),
            0.0,
            upper,
            QUAD_TOL,
            panels,
        ),
        PhiKind::Phi2 => integrate(
            |u| {
                let z = u * u;
                2.0 * (-z * z).exp() * z * (k * z + FRAC_PI_4).sin()
            },
            0.0,
            upper,
            QUAD_TOL,
            panels,
        ),
        PhiKind::Phi3 => integrate(
            |u| {
                let z = u * u;
                2.0 * (-z * z).exp() * z * z * (k * z - FRAC_PI_4).sin()
            },
            0.0,
            upper,
            QUAD_TOL,
            panels,
        ),
    };
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::function::gamma::gamma;

    const KAPPAS: [f64; 7] = [-20.0, -5.0, -1.0, 0.0, 1.0, 5.0, 20.0];

    /// Composite Simpson on a fixed fine grid in u = √z; independent of
    /// both production paths.
    fn brute_force(which: PhiKind, k: f64) -> f64 {
        let (power, shift, dir) = match which {
            PhiKind::Phi1 => (-0.5, FRAC_PI_4, -1.0),
            PhiKind::Phi2 => (0.5, FRAC_PI_4, 1.0),
            PhiKind::Phi3 => (1.5, -FRAC_PI_4, 1.0),
        };
        let f = |z: f64| (-z * z).exp() * z.powf(power) * (dir * z * k + shift).sin();
        let g = |u: f64| 2.0 * u * f(u * u);
        let n = 200_000;
        let ub = Z_MAX.sqrt();
        let h = ub / n as f64;
        let mut s = 0.0;
        for i in 0..=n {
            let u = i as f64 * h;
            let w = if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
            let val = if u == 0.0 {
                // limit of 2u·u^{2·power}·sin(shift) as u → 0
                if power < 0.0 { 2.0 * shift.sin() } else { 0.0 }
            } else {
                g(u)
            };
            s += w * val;
        }
        s * h / 3.0
    }

    #[test]
    fn values_at_zero() {
        let s2 = std::f64::consts::SQRT_2 / 4.0;
        let cases = [
            (PhiKind::Phi1, s2 * gamma(0.25), 1.281_846_676_020_423_8),
            (PhiKind::Phi2, s2 * gamma(0.75), 0.433_250_230_046_192_5),
            (PhiKind::Phi3, -s2 * gamma(1.25), -0.320_461_669_005_105_9),
        ];
        for (which, exact, reference) in cases {
            assert!((exact - reference).abs() < 1e-13);
            for method in [PhiEvalMethod::ClosedForm, PhiEvalMethod::Quadrature] {
                let v = phi(which, 0.0, method).unwrap();
                assert!((v - exact).abs() < 1e-10, "{which:?} {method:?}: {v} vs {exact}");
            }
        }
    }

    #[test]
    fn brute_force_confirms_quadrature() {
        for which in PhiKind::ALL {
            for &k in &[-5.0, -1.0, 0.0, 1.0, 5.0] {
                let q = phi(which, k, PhiEvalMethod::Quadrature).unwrap();
                let b = brute_force(which, k);
                assert!((q - b).abs() < 1e-8, "{which:?} κ={k}: {q} vs {b}");
            }
        }
    }

    #[test]
    fn closed_form_matches_quadrature() {
        for which in PhiKind::ALL {
            for &k in &KAPPAS {
                let c = phi(which, k, PhiEvalMethod::ClosedForm).unwrap();
                let q = phi(which, k, PhiEvalMethod::Quadrature).unwrap();
                assert!((c - q).abs() <= 1e-8, "{which:?} κ={k}: {c} vs {q}");
            }
        }
    }

    #[test]
    fn phi3_identity_on_grid() {
        let mut k = -20.0;
        while k <= 20.0 {
            let p1 = phi(PhiKind::Phi1, k, PhiEvalMethod::ClosedForm).unwrap();
            let p2 = phi(PhiKind::Phi2, k, PhiEvalMethod::ClosedForm).unwrap();
            let p3 = phi(PhiKind::Phi3, k, PhiEvalMethod::ClosedForm).unwrap();
            assert!((p3 - (-p1 / 4.0 + k * p2 / 2.0)).abs() <= 1e-8, "κ = {k}");
            k += 0.05;
        }
    }

    #[test]
    fn decays_ahead_of_front() {
        for which in PhiKind::ALL {
            for method in [PhiEvalMethod::ClosedForm, PhiEvalMethod::Quadrature] {
                assert!(phi(which, 30.0, method).unwrap().abs() <= 1e-3);
            }
        }
    }

    #[test]
    fn continuous_through_zero() {
        for which in PhiKind::ALL {
            let l = phi(which, -1e-7, PhiEvalMethod::ClosedForm).unwrap();
            let c = phi(which, 0.0, PhiEvalMethod::ClosedForm).unwrap();
            let r = phi(which, 1e-7, PhiEvalMethod::ClosedForm).unwrap();
            assert!((l - c).abs() < 1e-6 && (r - c).abs() < 1e-6, "{which:?}");
        }
    }

    #[test]
    fn domain_is_enforced() {
        assert!(phi(PhiKind::Phi1, 60.5, PhiEvalMethod::ClosedForm).is_err());
        assert!(phi(PhiKind::Phi2, -61.0, PhiEvalMethod::Quadrature).is_err());
        assert!(phi(PhiKind::Phi3, 60.0, PhiEvalMethod::ClosedForm).is_ok());
    }
}
