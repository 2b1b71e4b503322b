//! Exponentially scaled modified Bessel functions e^{−η}I_ν(η) for the
//! quarter orders ν ∈ {±1/4, ±3/4, ±5/4}.

use std::f64::consts::PI;

use crate::error::{domain, Result};

const SERIES_LIMIT: f64 = 15.0;
const MAX_TERMS: usize = 400;

// Γ(1/4), Γ(3/4)
const GAMMA_QUARTER: f64 = 3.625_609_908_221_908_311_930_685_155_867_672;
const GAMMA_THREE_QUARTERS: f64 = 1.225_416_702_465_177_645_129_098_303_362_890;

/// The supported orders ν.
pub const ORDERS: [f64; 6] = [-1.25, -0.75, -0.25, 0.25, 0.75, 1.25];

/// Γ(ν + 1) for a supported order.
fn gamma_order_plus_one(nu: f64) -> Option<f64> {
    let g = match nu {
        x if x == 0.25 => 0.25 * GAMMA_QUARTER,          // Γ(5/4)
        x if x == -0.25 => GAMMA_THREE_QUARTERS,         // Γ(3/4)
        x if x == 0.75 => 0.75 * GAMMA_THREE_QUARTERS,   // Γ(7/4)
        x if x == -0.75 => GAMMA_QUARTER,                // Γ(1/4)
        x if x == 1.25 => 1.25 * 0.25 * GAMMA_QUARTER,   // Γ(9/4)
        x if x == -1.25 => -4.0 * GAMMA_THREE_QUARTERS,  // Γ(−1/4)
        _ => return None,
    };
    Some(g)
}

fn check_order(nu: f64) -> Result<f64> {
    gamma_order_plus_one(nu).ok_or_else(|| {
        crate::Error::Domain(format!("unsupported modified Bessel order {nu}; expected one of ±1/4, ±3/4, ±5/4"))
    })
}

/// Σ_k (η/2)^{2k} / (k! Γ(k+ν+1)), i.e. I_ν(η)/(η/2)^ν.
fn reduced_series(nu: f64, gamma1: f64, eta: f64) -> f64 {
    let q = 0.25 * eta * eta;
    let mut term = 1.0 / gamma1;
    let mut sum = term;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term *= q / (kf * (kf + nu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Large-argument expansion of e^{−η}I_ν(η), truncated at its smallest term.
fn large_argument(nu: f64, eta: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..MAX_TERMS {
        let odd = (2 * k - 1) as f64;
        let next = -term * (mu - odd * odd) / (8.0 * k as f64 * eta);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum / (2.0 * PI * eta).sqrt()
}

/// e^{−η}I_ν(η) for ν ∈ {±1/4, ±3/4, ±5/4}, η ≥ 0.
///
/// At η = 0 the value is 0 for ν > 0 and ±∞ for ν < 0. Use
/// [`scaled_power_product`] when the result multiplies a vanishing power.
pub fn modbessel_i_scaled(nu: f64, eta: f64) -> Result<f64> {
    let gamma1 = check_order(nu)?;
    if !eta.is_finite() || eta < 0.0 {
        return domain(format!("modified Bessel argument {eta} must be finite and ≥ 0"));
    }
    if eta == 0.0 {
        return Ok(if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY * gamma1.signum()
        });
    }
    if eta <= SERIES_LIMIT {
        Ok((-eta).exp() * (0.5 * eta).powf(nu) * reduced_series(nu, gamma1, eta))
    } else {
        Ok(large_argument(nu, eta))
    }
}

/// |κ|^p · e^{−η}I_ν(η) with η = κ²/8, finite at κ = 0 whenever p + 2ν ≥ 0.
///
/// Near the origin the power of |κ| is merged into the series prefactor,
/// since (η/2)^ν = |κ|^{2ν}·16^{−ν}.
pub fn scaled_power_product(p: f64, nu: f64, kappa: f64) -> Result<f64> {
    let gamma1 = check_order(nu)?;
    let a = kappa.abs();
    let eta = 0.125 * kappa * kappa;
    if eta <= SERIES_LIMIT {
        let merged = p + 2.0 * nu;
        if merged < 0.0 && a == 0.0 {
            return domain(format!("|κ|^{p}·I_{nu} diverges at κ = 0"));
        }
        Ok((-eta).exp() * a.powf(merged) * 16f64.powf(-nu) * reduced_series(nu, gamma1, eta))
    } else {
        Ok(a.powf(p) * large_argument(nu, eta))
    }
}
