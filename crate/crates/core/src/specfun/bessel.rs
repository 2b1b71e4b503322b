//! Bessel functions of the first kind, J_ν(x), for real ν ≥ 0 and x ≥ 0.
//!
//! Integer orders use Miller's backward recurrence normalized by
//! J₀ + 2ΣJ₂ₖ = 1. Non-integer orders use the Schläfli integral
//!
//! ```text
//! J_ν(x) = (1/π)∫₀^π cos(νθ − x sinθ) dθ − (sin νπ/π)∫₀^∞ e^{−x sinh u − νu} du
//! ```
//!
//! evaluated with adaptive Gauss–Kronrod quadrature.

use std::f64::consts::PI;

use super::quadrature::integrate;
use crate::error::{domain, Result};

/// Largest supported order.
pub const MAX_ORDER: f64 = 200.0;
/// Largest supported argument.
pub const MAX_ARG: f64 = 500.0;

const QUAD_TOL: f64 = 1e-12;
const RESCALE_ABOVE: f64 = 1e250;

fn check_envelope(nu: f64, x: f64) -> Result<()> {
    if !nu.is_finite() || !x.is_finite() {
        return domain(format!("non-finite Bessel arguments (ν = {nu}, x = {x})"));
    }
    if !(0.0..=MAX_ORDER).contains(&nu) {
        return domain(format!("Bessel order {nu} outside [0, {MAX_ORDER}]"));
    }
    if !(0.0..=MAX_ARG).contains(&x) {
        return domain(format!("Bessel argument {x} outside [0, {MAX_ARG}]"));
    }
    Ok(())
}

fn is_integer(nu: f64) -> bool {
    nu.fract() == 0.0
}

/// J_ν(x) on the envelope 0 ≤ ν ≤ 200, 0 ≤ x ≤ 500.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    check_envelope(nu, x)?;
    if is_integer(nu) {
        Ok(bessel_jn(nu as u32, x))
    } else {
        Ok(bessel_j_integral(nu, x))
    }
}

/// Integer-order J_n(x) by Miller's backward recurrence.
///
/// Valid for x ≥ 0; callers are expected to stay inside the envelope.
pub fn bessel_jn(n: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    if x < 1e-5 {
        // Two leading terms of the ascending series.
        let half = 0.5 * x;
        let mut lead = 1.0;
        for k in 1..=n {
            lead *= half / k as f64;
        }
        return lead * (1.0 - half * half / (n as f64 + 1.0));
    }

    let top = (n as f64).max(x.ceil());
    let mut start = (top + 30.0 + 12.0 * top.cbrt()) as usize;
    if start % 2 == 1 {
        start += 1;
    }

    let two_over_x = 2.0 / x;
    let mut next = 0.0; // J_{k+1}
    let mut curr = 1e-300; // J_k
    let mut wanted = 0.0;
    let mut norm = 0.0;
    let mut k = start;
    loop {
        if k == n as usize {
            wanted = curr;
        }
        if k % 2 == 0 {
            norm += if k == 0 { curr } else { 2.0 * curr };
        }
        if k == 0 {
            break;
        }
        let prev = k as f64 * two_over_x * curr - next;
        next = curr;
        curr = prev;
        k -= 1;
        if curr.abs() > RESCALE_ABOVE {
            curr /= RESCALE_ABOVE;
            next /= RESCALE_ABOVE;
            wanted /= RESCALE_ABOVE;
            norm /= RESCALE_ABOVE;
        }
    }
    wanted / norm
}

/// Schläfli integral for real order; negative ν is allowed when x > 0.
fn bessel_j_integral(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    let panels = ((nu.abs() + x) / 4.0).ceil() as usize + 4;
    let (oscillatory, _) = integrate(|th| (nu * th - x * th.sin()).cos(), 0.0, PI, QUAD_TOL, panels);
    let mut value = oscillatory / PI;

    let s = (nu * PI).sin();
    if !is_integer(nu) && s != 0.0 {
        let exponent = |u: f64| x * u.sinh() + nu * u;
        // Upper limit where the integrand has decayed below e^{-46}.
        let mut upper = 1.0;
        while exponent(upper) < 46.0 || exponent(upper) < exponent(upper * 0.5) {
            upper *= 1.5;
        }
        let (tail, _) = integrate(|u| (-exponent(u)).exp(), 0.0, upper, QUAD_TOL, 8);
        value -= s / PI * tail;
    }
    value
}

/// J_ν for any real order, without the envelope check (used by the derivatives).
fn bessel_j_any(nu: f64, x: f64) -> Result<f64> {
    if nu >= 0.0 {
        return Ok(if is_integer(nu) {
            bessel_jn(nu as u32, x)
        } else {
            bessel_j_integral(nu, x)
        });
    }
    if is_integer(nu) {
        // J_{-n} = (-1)^n J_n
        let n = (-nu) as u32;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(sign * bessel_jn(n, x));
    }
    if x == 0.0 {
        return domain(format!("J_{nu} is singular at x = 0"));
    }
    Ok(bessel_j_integral(nu, x))
}

/// First derivative J′_ν(x) = (J_{ν−1} − J_{ν+1})/2.
pub fn bessel_j_prime(nu: f64, x: f64) -> Result<f64> {
    check_envelope(nu, x)?;
    let lower = bessel_j_any(nu - 1.0, x)?;
    let upper = bessel_j_any(nu + 1.0, x)?;
    Ok(0.5 * (lower - upper))
}

/// First and second derivatives (J′_ν, J″_ν).
///
/// J″ comes from the Bessel equation, J″ = (ν²/x² − 1)J − J′/x. At x = 0 the
/// integer-order limit (J_{ν−2} − 2J_ν + J_{ν+2})/4 is used instead; it is
/// singular for non-integer ν below 2.
pub fn bessel_j_derivs(nu: f64, x: f64) -> Result<(f64, f64)> {
    let jp = bessel_j_prime(nu, x)?;
    let j = bessel_j(nu, x)?;
    if x > 0.0 {
        let jpp = (nu * nu / (x * x) - 1.0) * j - jp / x;
        return Ok((jp, jpp));
    }
    if !is_integer(nu) {
        return domain(format!("J''_{nu} is singular at x = 0"));
    }
    let jpp = 0.25 * (bessel_j_any(nu - 2.0, 0.0)? - 2.0 * j + bessel_j_any(nu + 2.0, 0.0)?);
    Ok((jp, jpp))
}
