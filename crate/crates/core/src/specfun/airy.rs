//! Airy function Ai and its first two derivatives on |x| ≤ 100.
//!
//! Maclaurin series inside |x| ≤ 8, the classical asymptotic expansions
//! (exponential for x > 8, oscillatory for x < −8) outside. Ai″ = x·Ai.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{domain, Result};

/// Ai(0) = 3^{−2/3}/Γ(2/3).
pub const AI_ZERO: f64 = 0.355_028_053_887_817_239_26;
/// −Ai′(0) = 3^{−1/3}/Γ(1/3).
pub const NEG_AIP_ZERO: f64 = 0.258_819_403_792_806_798_40;

pub const MAX_ABS_ARG: f64 = 100.0;
const SERIES_LIMIT: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryValues {
    pub ai: f64,
    pub aip: f64,
    pub aipp: f64,
}

/// Ai(x), Ai′(x), Ai″(x).
pub fn airy(x: f64) -> Result<AiryValues> {
    if !x.is_finite() || x.abs() > MAX_ABS_ARG {
        return domain(format!("Airy argument {x} outside [-{MAX_ABS_ARG}, {MAX_ABS_ARG}]"));
    }
    let (ai, aip) = if x.abs() <= SERIES_LIMIT {
        maclaurin(x)
    } else if x > 0.0 {
        decaying(x)
    } else {
        oscillating(-x)
    };
    Ok(AiryValues { ai, aip, aipp: x * ai })
}

fn maclaurin(x: f64) -> (f64, f64) {
    let x3 = x * x * x;
    // f = Σ 3^k (1/3)_k x^{3k}/(3k)!, g = Σ 3^k (2/3)_k x^{3k+1}/(3k+1)!
    let (mut f, mut g) = (1.0, x);
    let (mut fp, mut gp) = (0.0, 1.0);
    let (mut tf, mut tg) = (1.0, x);
    let mut tfp = 0.5 * x * x;
    let mut tgp = 1.0;
    fp += tfp;
    for k in 1..200 {
        let kf = k as f64;
        tf *= x3 / ((3.0 * kf - 1.0) * (3.0 * kf));
        tg *= x3 / ((3.0 * kf) * (3.0 * kf + 1.0));
        tgp *= x3 / ((3.0 * kf) * (3.0 * kf - 2.0));
        f += tf;
        g += tg;
        gp += tgp;
        if k >= 2 {
            tfp *= x3 / ((3.0 * kf - 1.0) * (3.0 * kf - 3.0));
            fp += tfp;
        }
        let scale = f.abs() + g.abs() + fp.abs() + gp.abs();
        if tf.abs() + tg.abs() + tfp.abs() + tgp.abs() <= 1e-18 * scale {
            break;
        }
    }
    (AI_ZERO * f - NEG_AIP_ZERO * g, AI_ZERO * fp - NEG_AIP_ZERO * gp)
}

/// Coefficient pairs (u_k, v_k) of the Airy asymptotic expansions.
fn coefficients() -> [(f64, f64); 24] {
    let mut out = [(0.0, 0.0); 24];
    let mut u = 1.0;
    out[0] = (1.0, 1.0);
    for (k, slot) in out.iter_mut().enumerate().skip(1) {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
        *slot = (u, v);
    }
    out
}

fn decaying(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let mut su = 0.0;
    let mut sv = 0.0;
    let mut p = 1.0;
    for &(u, v) in coefficients().iter() {
        su += u * p;
        sv += v * p;
        p *= -1.0 / zeta;
    }
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    let q = x.sqrt().sqrt();
    (e / q * su, -e * q * sv)
}

fn oscillating(z: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    let (mut pe, mut po, mut qe, mut qo) = (0.0, 0.0, 0.0, 0.0);
    let mut p = 1.0;
    for (k, &(u, v)) in coefficients().iter().enumerate() {
        // (-1)^{floor(k/2)} alternation on even and odd parts
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            pe += sign * u * p;
            qe += sign * v * p;
        } else {
            po += sign * u * p;
            qo += sign * v * p;
        }
        p /= zeta;
    }
    let phase = zeta + FRAC_PI_4;
    let (s, c) = phase.sin_cos();
    let q = z.sqrt().sqrt();
    let ai = (s * pe - c * po) / (PI.sqrt() * q);
    let aip = -q / PI.sqrt() * (c * qe + s * qo);
    (ai, aip)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent Maclaurin oracle: 40 terms from the factorial form.
    fn oracle(x: f64) -> f64 {
        let g13 = statrs::function::gamma::gamma(1.0 / 3.0);
        let g23 = statrs::function::gamma::gamma(2.0 / 3.0);
        let c1 = 3f64.powf(-2.0 / 3.0) / g23;
        let c2 = 3f64.powf(-1.0 / 3.0) / g13;
        let mut f = 0.0;
        let mut g = 0.0;
        for k in 0..40 {
            let k = k as f64;
            // 3^k (1/3)_k = Γ(k + 1/3)/Γ(1/3) * 3^k
            let pf = 3f64.powf(k) * statrs::function::gamma::gamma(k + 1.0 / 3.0) / g13;
            let pg = 3f64.powf(k) * statrs::function::gamma::gamma(k + 2.0 / 3.0) / g23;
            f += pf * x.powf(3.0 * k) / statrs::function::gamma::gamma(3.0 * k + 1.0);
            g += pg * x.powf(3.0 * k + 1.0) / statrs::function::gamma::gamma(3.0 * k + 2.0);
        }
        c1 * f - c2 * g
    }

    #[test]
    fn values_at_origin() {
        let v = airy(0.0).unwrap();
        assert!((v.ai - 0.3550280539).abs() < 1e-10);
        assert!((v.ai - oracle(0.0)).abs() < 1e-14);
        assert!((v.aip + 0.2588194038).abs() < 1e-10);
        assert_eq!(v.aipp, 0.0);
    }

    #[test]
    fn series_matches_oracle() {
        for &x in &[-4.0, -2.3, -1.0188, -0.5, 0.7, 1.9, 3.5] {
            let got = airy(x).unwrap().ai;
            assert!((got - oracle(x)).abs() < 1e-12, "Ai({x})");
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let h = 1e-5;
        let mut x = -5.0;
        while x <= 5.0 {
            let fd = (airy(x + h).unwrap().ai - airy(x - h).unwrap().ai) / (2.0 * h);
            assert!((airy(x).unwrap().aip - fd).abs() < 1e-6, "x = {x}");
            x += 0.25;
        }
    }

    #[test]
    fn asymptotic_branches_join_series() {
        for &x in &[-8.0, 8.0] {
            let inside = maclaurin(x);
            let outside = if x > 0.0 { decaying(x) } else { oscillating(-x) };
            let scale = inside.0.abs().max(1e-12);
            assert!((inside.0 - outside.0).abs() < 1e-8 * scale.max(1.0), "Ai at {x}");
            assert!((inside.1 - outside.1).abs() < 1e-8 * inside.1.abs().max(1.0), "Ai' at {x}");
        }
    }

    #[test]
    fn known_reference_values() {
        // 20-digit reference values
        assert!((airy(-10.0).unwrap().ai - 0.040_241_238_486_443_19).abs() < 1e-12);
        assert!((airy(-10.0).unwrap().aip - 0.996_265_044_132_790_1).abs() < 1e-11);
        assert!((airy(10.0).unwrap().ai / 1.104_753_255_289_868_6e-10 - 1.0).abs() < 1e-10);
        assert!((airy(-50.0).unwrap().ai.abs()) < 0.3);
    }

    #[test]
    fn first_derivative_zero() {
        // Ai′ changes sign at a′₁ ≈ −1.0188
        let a = airy(-1.0188).unwrap().aip;
        assert!(a.abs() < 1e-4);
    }

    #[test]
    fn domain_is_enforced() {
        assert!(airy(100.5).is_err());
        assert!(airy(-101.0).is_err());
        assert!(airy(f64::NAN).is_err());
        assert!(airy(-100.0).is_ok());
    }
}
