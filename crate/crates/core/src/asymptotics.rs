//! Closed-form quasi-front asymptotics.
//!
//! Every evaluator takes a real coordinate `r`. On an axis it is the node
//! index n; elsewhere it is the radial distance √(n² + m²), with no angular
//! correction. Times are absolute; the Gaussian families shift internally
//! to t′ = t − 4σ.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::lattice::LoadSpec;
use crate::specfun::{airy, bessel_j, bessel_j_derivs, phi, AiryValues, PhiEvalMethod, PhiKind, MAX_ABS_KAPPA};

/// c₁ = √(3/2), the long-wave speed.
pub const LONG_WAVE_SPEED: f64 = 1.224_744_871_391_589;
/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const C1: f64 = LONG_WAVE_SPEED;
// Below this coordinate the n = 0 branch of the logarithmic displacement is used.
const ORIGIN_BRANCH: f64 = 0.5;
// Ai(100) ~ 1e−291; treat anything further ahead as exactly zero.
const AIRY_AHEAD: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Displacement,
    Velocity,
    Acceleration,
}

impl Quantity {
    pub const ALL: [Quantity; 3] = [Quantity::Displacement, Quantity::Velocity, Quantity::Acceleration];

    pub fn short_name(self) -> &'static str {
        match self {
            Quantity::Displacement => "disp",
            Quantity::Velocity => "vel",
            Quantity::Acceleration => "acc",
        }
    }
}

impl std::str::FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "disp" | "displacement" => Ok(Quantity::Displacement),
            "vel" | "velocity" => Ok(Quantity::Velocity),
            "acc" | "acceleration" => Ok(Quantity::Acceleration),
            other => Err(format!("unknown quantity '{other}' (expected disp, vel or acc)")),
        }
    }
}

/// Bessel-function or Airy-function representation of the elastic fronts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Form {
    Bessel,
    Airy,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum AsymptoticModel {
    StepElasticBessel,
    StepElasticAiry,
    StepViscous { lambda: f64 },
    GaussShortBessel { sigma: f64 },
    GaussShortAiry { sigma: f64 },
    GaussLowFreq { sigma: f64, lambda: f64 },
}

impl AsymptoticModel {
    pub fn c1(&self) -> f64 {
        C1
    }

    pub fn name(&self) -> &'static str {
        match self {
            AsymptoticModel::StepElasticBessel => "step-elastic",
            AsymptoticModel::StepElasticAiry => "step-elastic-airy",
            AsymptoticModel::StepViscous { .. } => "step-viscous",
            AsymptoticModel::GaussShortBessel { .. } => "gauss-short",
            AsymptoticModel::GaussShortAiry { .. } => "gauss-short-airy",
            AsymptoticModel::GaussLowFreq { .. } => "gauss-lowfreq",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            AsymptoticModel::StepElasticBessel | AsymptoticModel::StepElasticAiry => Ok(()),
            AsymptoticModel::StepViscous { lambda } => check_lambda(lambda, true),
            AsymptoticModel::GaussShortBessel { sigma } | AsymptoticModel::GaussShortAiry { sigma } => {
                check_sigma(sigma)
            }
            AsymptoticModel::GaussLowFreq { sigma, lambda } => {
                check_sigma(sigma)?;
                check_lambda(lambda, false)
            }
        }
    }

    /// 0 for the step families, 4σ for the Gaussian ones.
    pub fn launch_delay(&self) -> f64 {
        match *self {
            AsymptoticModel::GaussShortBessel { sigma }
            | AsymptoticModel::GaussShortAiry { sigma }
            | AsymptoticModel::GaussLowFreq { sigma, .. } => 4.0 * sigma,
            _ => 0.0,
        }
    }

    /// Quasi-front arrival time r/c₁ plus the launch delay.
    pub fn arrival_time(&self, r: f64) -> f64 {
        r / C1 + self.launch_delay()
    }

    /// Front width w(t) in lattice units.
    ///
    /// The Bessel forms share the width of their Airy counterparts.
    pub fn width(&self, t: f64) -> Result<f64> {
        self.validate()?;
        let te = t - self.launch_delay();
        if !(te > 0.0) || !t.is_finite() {
            return domain(format!("t = {t} is not past the launch time {} of {}", self.launch_delay(), self.name()));
        }
        Ok(match *self {
            AsymptoticModel::StepElasticBessel
            | AsymptoticModel::StepElasticAiry
            | AsymptoticModel::GaussShortBessel { .. }
            | AsymptoticModel::GaussShortAiry { .. } => elastic_width(te),
            AsymptoticModel::StepViscous { lambda } => viscous_width(lambda, te),
            AsymptoticModel::GaussLowFreq { sigma, lambda } => lowfreq_width(sigma, lambda, te),
        })
    }

    /// κ = (r − c₁t_eff)/w(t).
    pub fn kappa(&self, r: f64, t: f64) -> Result<f64> {
        let w = self.width(t)?;
        Ok((r - C1 * (t - self.launch_delay())) / w)
    }

    /// False for the pairings that have no formula of their own and fall
    /// back to the logarithmic displacement.
    pub fn has_native(&self, q: Quantity) -> bool {
        !matches!(
            (self, q),
            (AsymptoticModel::StepViscous { .. } | AsymptoticModel::StepElasticAiry, Quantity::Displacement)
        )
    }

    pub fn eval(&self, q: Quantity, r: f64, t: f64) -> Result<f64> {
        match *self {
            AsymptoticModel::StepElasticBessel => eval_step_elastic(Form::Bessel, q, r, t),
            AsymptoticModel::StepElasticAiry => eval_step_elastic(Form::Airy, q, r, t),
            AsymptoticModel::StepViscous { lambda } => eval_step_viscous(q, lambda, r, t),
            AsymptoticModel::GaussShortBessel { sigma } => eval_gauss_short(Form::Bessel, q, sigma, r, t),
            AsymptoticModel::GaussShortAiry { sigma } => eval_gauss_short(Form::Airy, q, sigma, r, t),
            AsymptoticModel::GaussLowFreq { sigma, lambda } => eval_gauss_lowfreq(q, sigma, lambda, r, t),
        }
    }
}

impl std::fmt::Display for AsymptoticModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            AsymptoticModel::StepViscous { lambda } => write!(f, "{}(lambda={lambda})", self.name()),
            AsymptoticModel::GaussShortBessel { sigma } | AsymptoticModel::GaussShortAiry { sigma } => {
                write!(f, "{}(sigma={sigma})", self.name())
            }
            AsymptoticModel::GaussLowFreq { sigma, lambda } => {
                write!(f, "{}(sigma={sigma}, lambda={lambda})", self.name())
            }
            _ => f.write_str(self.name()),
        }
    }
}

/// Free function form of [`AsymptoticModel::kappa`].
pub fn kappa(model: &AsymptoticModel, r: f64, t: f64) -> Result<f64> {
    model.kappa(r, t)
}

fn check_lambda(lambda: f64, strictly_positive: bool) -> Result<()> {
    let ok = lambda.is_finite() && if strictly_positive { lambda > 0.0 } else { lambda >= 0.0 };
    if ok {
        Ok(())
    } else if strictly_positive && lambda == 0.0 {
        domain("viscous step asymptotics need λ > 0; use the elastic family for λ = 0")
    } else {
        domain(format!("viscosity λ = {lambda} must be finite and ≥ 0"))
    }
}

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma.is_finite() {
        Ok(())
    } else {
        domain(format!("pulse width σ = {sigma} must be positive"))
    }
}

fn check_coordinate(r: f64) -> Result<()> {
    if r >= 0.0 && r.is_finite() {
        Ok(())
    } else {
        domain(format!("coordinate r = {r} must be finite and ≥ 0"))
    }
}

fn elastic_width(te: f64) -> f64 {
    (0.5 * C1 * te).cbrt()
}

fn viscous_width(lambda: f64, te: f64) -> f64 {
    (0.75 * lambda * te).sqrt()
}

fn lowfreq_width(sigma: f64, lambda: f64, te: f64) -> f64 {
    (0.75 * (lambda * te + sigma * sigma)).sqrt()
}

/// Ai, Ai′, Ai″ at κ, or zeros far ahead of the front.
fn airy_at(kappa: f64) -> Result<AiryValues> {
    if kappa > AIRY_AHEAD {
        return Ok(AiryValues { ai: 0.0, aip: 0.0, aipp: 0.0 });
    }
    airy(kappa)
}

/// Φ at κ, or zero far ahead of the front, where it decays like e^{−κ²/4}.
fn phi_at(which: PhiKind, kappa: f64) -> Result<f64> {
    if kappa > MAX_ABS_KAPPA {
        return Ok(0.0);
    }
    phi(which, kappa, PhiEvalMethod::ClosedForm)
}

/// ln(c₁t/r + √(c₁²t²/r² − 1))/(2πc₁²)·H(c₁t − r); near the origin,
/// (ln(4√6·c₁t) + γ)/(2πc₁²).
fn log_displacement(r: f64, t: f64) -> f64 {
    // 2πc₁² = 3π and 4√6·c₁ = 12
    let denom = 3.0 * PI;
    if r < ORIGIN_BRANCH {
        return ((12.0 * t).ln() + EULER_GAMMA) / denom;
    }
    let x = C1 * t / r;
    if x <= 1.0 {
        return 0.0;
    }
    x.acosh() / denom
}

pub fn eval_step_elastic(form: Form, q: Quantity, r: f64, t: f64) -> Result<f64> {
    check_coordinate(r)?;
    if !(t > 0.0) || !t.is_finite() {
        return domain(format!("step asymptotics need t > 0, got {t}"));
    }
    if q == Quantity::Displacement {
        return Ok(log_displacement(r, t));
    }
    let x = C1 * t;
    match form {
        Form::Bessel => {
            let j = bessel_j(r, x)?;
            Ok(match q {
                Quantity::Velocity => j * j / (2.0 * C1),
                _ => j * bessel_j_derivs(r, x)?.0,
            })
        }
        Form::Airy => {
            let w = elastic_width(t);
            let a = airy_at((r - x) / w)?;
            Ok(match q {
                Quantity::Velocity => a.ai * a.ai / (2.0 * C1 * w * w),
                _ => -2.0 * a.ai * a.aip / x,
            })
        }
    }
}

/// Velocity Φ₁(κ)/(3π^{3/2}(2λt³)^{1/4}) and acceleration Φ₂(κ)/(3π^{3/2}(λ³t⁵/2)^{1/4}).
/// Displacement does not depend on λ and uses the logarithmic form.
pub fn eval_step_viscous(q: Quantity, lambda: f64, r: f64, t: f64) -> Result<f64> {
    check_lambda(lambda, true)?;
    check_coordinate(r)?;
    if !(t > 0.0) || !t.is_finite() {
        return domain(format!("step asymptotics need t > 0, got {t}"));
    }
    let k = (r - C1 * t) / viscous_width(lambda, t);
    let scale = 3.0 * PI.powf(1.5);
    match q {
        Quantity::Displacement => Ok(log_displacement(r, t)),
        Quantity::Velocity => Ok(phi_at(PhiKind::Phi1, k)? / (scale * (2.0 * lambda * t.powi(3)).powf(0.25))),
        Quantity::Acceleration => {
            Ok(phi_at(PhiKind::Phi2, k)? / (scale * (0.5 * lambda.powi(3) * t.powi(5)).powf(0.25)))
        }
    }
}

/// Short Gaussian pulse, σ < 1/(8c₁). Zero until t = 4σ.
pub fn eval_gauss_short(form: Form, q: Quantity, sigma: f64, r: f64, t: f64) -> Result<f64> {
    check_sigma(sigma)?;
    check_coordinate(r)?;
    let te = t - 4.0 * sigma;
    if !(te > 0.0) {
        return Ok(0.0);
    }
    let x = C1 * te;
    let sqrt_pi = PI.sqrt();
    match form {
        Form::Bessel => {
            let j = bessel_j(r, x)?;
            if q == Quantity::Displacement {
                return Ok(sqrt_pi * sigma * j * j / (2f64.sqrt() * C1));
            }
            let (jp, jpp) = bessel_j_derivs(r, x)?;
            let c = (2.0 * PI).sqrt() * sigma;
            Ok(match q {
                Quantity::Velocity => c * j * jp,
                _ => c * C1 * (jp * jp + j * jpp),
            })
        }
        Form::Airy => {
            let w = elastic_width(te);
            let a = airy_at((r - x) / w)?;
            Ok(match q {
                Quantity::Displacement => sqrt_pi * sigma * a.ai * a.ai / (2f64.sqrt() * C1 * w * w),
                Quantity::Velocity => -(2f64.powf(1.5)) * sqrt_pi * sigma * a.ai * a.aip / x,
                Quantity::Acceleration => {
                    (2.0 * PI).sqrt() * sigma * C1 * (a.aip * a.aip + a.ai * a.aipp) / (w * w * w * w)
                }
            })
        }
    }
}

/// Low-frequency Gaussian pulse. With S = λt′ + σ², the quantities are
/// 2^{1/4}σΦ₁/(3π√t′·S^{1/4}), 2^{3/4}σΦ₂/(3π√t′·S^{3/4}) and 2^{5/4}σΦ₃/(3π√t′·S^{5/4}).
pub fn eval_gauss_lowfreq(q: Quantity, sigma: f64, lambda: f64, r: f64, t: f64) -> Result<f64> {
    check_sigma(sigma)?;
    check_lambda(lambda, false)?;
    check_coordinate(r)?;
    let te = t - 4.0 * sigma;
    if !(te > 0.0) {
        return Ok(0.0);
    }
    let s = lambda * te + sigma * sigma;
    let k = (r - C1 * te) / lowfreq_width(sigma, lambda, te);
    let base = sigma / (3.0 * PI * te.sqrt());
    Ok(match q {
        Quantity::Displacement => 2f64.powf(0.25) * base * phi_at(PhiKind::Phi1, k)? / s.powf(0.25),
        Quantity::Velocity => 2f64.powf(0.75) * base * phi_at(PhiKind::Phi2, k)? / s.powf(0.75),
        Quantity::Acceleration => 2f64.powf(1.25) * base * phi_at(PhiKind::Phi3, k)? / s.powf(1.25),
    })
}

/// Recommended asymptotic family for a load, viscosity and quantity, or
/// `None` inside the parameter gaps where no family is known to apply.
pub fn regime_select(load: &LoadSpec, lambda: f64, q: Quantity) -> Option<AsymptoticModel> {
    use AsymptoticModel::*;
    use Quantity::*;
    match *load {
        LoadSpec::Step => match q {
            Displacement => Some(StepElasticBessel),
            Velocity if lambda <= 0.02 => Some(StepElasticBessel),
            Velocity => Some(StepViscous { lambda }),
            Acceleration if lambda <= 0.002 => Some(StepElasticBessel),
            Acceleration if lambda >= 0.1 => Some(StepViscous { lambda }),
            Acceleration => None,
        },
        LoadSpec::Gauss { sigma } => {
            let unit = 1.0 / (8.0 * C1);
            let short = GaussShortBessel { sigma };
            let low = GaussLowFreq { sigma, lambda };
            if sigma <= unit {
                let short_limit = match q {
                    Displacement => 0.01,
                    Velocity => 0.05,
                    Acceleration => 0.001,
                };
                let low_limit = match q {
                    Displacement => 0.05,
                    Velocity | Acceleration => 0.2,
                };
                if sigma < unit && lambda <= short_limit {
                    Some(short)
                } else if lambda >= low_limit {
                    Some(low)
                } else {
                    None
                }
            } else {
                let applies = match q {
                    Displacement => {
                        (lambda == 0.0 && sigma >= 10.0 * unit) || (lambda >= 0.05 && sigma >= 2.0 * unit)
                    }
                    Velocity | Acceleration => sigma >= 30.0 * unit,
                };
                applies.then_some(low)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::AI_ZERO;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn constants() {
        assert!((LONG_WAVE_SPEED * LONG_WAVE_SPEED - 1.5).abs() < 4e-16);
        assert!((4.0 * 6f64.sqrt() * C1 - 12.0).abs() < 1e-14);
        assert!((2.0 * PI * C1 * C1 - 3.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn kappa_examples() {
        let t = 25.0 * 2f64.sqrt() / C1;
        assert_eq!(AsymptoticModel::StepElasticAiry.kappa(C1 * t, t).unwrap(), 0.0);
        let k = AsymptoticModel::StepViscous { lambda: 0.1 }.kappa(35.0, 28.8675).unwrap();
        assert!((k + 0.2414).abs() < 1e-4, "{k}");
        let lf = AsymptoticModel::GaussLowFreq { sigma: 5.0, lambda: 0.1 };
        assert!(lf.kappa(C1 * 30.0, 50.0).unwrap().abs() < 1e-12);
        assert!(lf.kappa(1.0, 20.0).is_err());
        assert!(AsymptoticModel::StepElasticBessel.kappa(1.0, 0.0).is_err());
    }

    #[test]
    fn log_displacement_examples() {
        let v = eval_step_elastic(Form::Bessel, Quantity::Displacement, 0.0, 10.0).unwrap();
        assert!((v - 0.56922).abs() < 1e-5, "{v}");
        assert_eq!(eval_step_elastic(Form::Airy, Quantity::Displacement, 20.0, 10.0).unwrap(), 0.0);
        // continuity of the log branch just behind the front
        let r = 30.0;
        let t = r / C1;
        assert!(eval_step_elastic(Form::Bessel, Quantity::Displacement, r, t * (1.0 + 1e-9)).unwrap() < 1e-4);
        assert!(eval_step_elastic(Form::Bessel, Quantity::Displacement, r, 0.0).is_err());
    }

    #[test]
    fn airy_velocity_at_front() {
        let t = 28.8675;
        let v = eval_step_elastic(Form::Airy, Quantity::Velocity, C1 * t, t).unwrap();
        let want = AI_ZERO * AI_ZERO / (2.0 * C1 * (C1 * t / 2.0).powf(2.0 / 3.0));
        assert!(rel(v, want) < 1e-12);
        assert!((v - 0.007583).abs() < 5e-7, "{v}");
    }

    #[test]
    fn viscous_velocity_at_front() {
        let t = 28.8675;
        let v = eval_step_viscous(Quantity::Velocity, 0.1, C1 * t, t).unwrap();
        assert!((v - 0.009213).abs() < 2e-6, "{v}");
        let a = eval_step_viscous(Quantity::Acceleration, 0.1, C1 * t, t).unwrap();
        assert!(a > 0.0);
        // the acceleration profile changes sign across the front
        let behind = eval_step_viscous(Quantity::Acceleration, 0.1, C1 * t - 8.0, t).unwrap();
        let ahead = eval_step_viscous(Quantity::Acceleration, 0.1, C1 * t + 0.5, t).unwrap();
        assert!(behind < 0.0 && ahead > 0.0, "{behind} {ahead}");
        assert!(eval_step_viscous(Quantity::Velocity, 0.0, 1.0, 1.0).is_err());
        let disp = eval_step_viscous(Quantity::Displacement, 0.1, 20.0, 30.0).unwrap();
        assert_eq!(disp, eval_step_elastic(Form::Bessel, Quantity::Displacement, 20.0, 30.0).unwrap());
    }

    #[test]
    fn viscosity_ratios() {
        let t = 40.0;
        for &k in &[-3.0, -0.7, 0.0, 1.2] {
            let lam = 0.01;
            let at = |l: f64, q| {
                let r = C1 * t + k * viscous_width(l, t);
                eval_step_viscous(q, l, r, t).unwrap()
            };
            assert!((at(lam, Quantity::Velocity) / at(16.0 * lam, Quantity::Velocity) - 2.0).abs() < 1e-9);
            assert!((at(lam, Quantity::Acceleration) / at(16.0 * lam, Quantity::Acceleration) - 8.0).abs() < 1e-9);
        }
    }

    #[test]
    fn gauss_short_examples() {
        let sigma = 0.1;
        let te = 28.8675;
        let t = te + 4.0 * sigma;
        let d = eval_gauss_short(Form::Airy, Quantity::Displacement, sigma, C1 * te, t).unwrap();
        let want = PI.sqrt() * sigma * AI_ZERO * AI_ZERO / (2f64.sqrt() * C1 * (C1 * te / 2.0).powf(2.0 / 3.0));
        assert!(rel(d, want) < 1e-12);
        assert!((d / 1.9010e-3 - 1.0).abs() < 5e-4, "{d}");
        for q in Quantity::ALL {
            for form in [Form::Bessel, Form::Airy] {
                assert_eq!(eval_gauss_short(form, q, sigma, 10.0, 4.0 * sigma - 1e-9).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn gauss_short_bessel_and_airy_close_near_front() {
        let sigma = 0.1;
        let r = 25.0 * 2f64.sqrt();
        let mut gaps = Vec::new();
        for &te in &[28.8675, 60.0, 120.0] {
            let rr = if te == 28.8675 { r } else { C1 * te };
            let t = te + 4.0 * sigma;
            let b = eval_gauss_short(Form::Bessel, Quantity::Displacement, sigma, rr, t).unwrap();
            let a = eval_gauss_short(Form::Airy, Quantity::Displacement, sigma, rr, t).unwrap();
            gaps.push(rel(b, a));
        }
        assert!(gaps[0] <= 0.15, "{gaps:?}");
        assert!(gaps[2] < gaps[0], "{gaps:?}");
    }

    #[test]
    fn gauss_lowfreq_front_value() {
        let (sigma, lambda, te) = (5.0, 0.1, 28.8675);
        let t = te + 4.0 * sigma;
        let d = eval_gauss_lowfreq(Quantity::Displacement, sigma, lambda, C1 * te, t).unwrap();
        let phi1 = 2f64.sqrt() / 4.0 * 3.625_609_908_221_908;
        let s: f64 = lambda * te + sigma * sigma;
        let want = 2f64.powf(0.25) * sigma * phi1 / (3.0 * PI * te.sqrt() * s.powf(0.25));
        assert!(rel(d, want) < 1e-10);
        assert!((d - 0.0655).abs() < 1e-4, "{d}");
        assert_eq!(eval_gauss_lowfreq(Quantity::Velocity, sigma, lambda, 1.0, 4.0 * sigma).unwrap(), 0.0);
    }

    #[test]
    fn gauss_lowfreq_acceleration_consistency() {
        let (sigma, lambda) = (5.0, 0.1);
        for &t in &[30.0, 48.87, 70.0, 90.0] {
            for &r in &[5.0, 20.0, 35.3553] {
                let te = t - 4.0 * sigma;
                let s = lambda * te + sigma * sigma;
                let d = eval_gauss_lowfreq(Quantity::Displacement, sigma, lambda, r, t).unwrap();
                let v = eval_gauss_lowfreq(Quantity::Velocity, sigma, lambda, r, t).unwrap();
                let a = eval_gauss_lowfreq(Quantity::Acceleration, sigma, lambda, r, t).unwrap();
                let rhs = (2f64.powf(1.5) / 3f64.sqrt() * v * (r - C1 * te) - d) / (2.0 * s);
                assert!((a - rhs).abs() <= 1e-8, "t={t} r={r}: {a} vs {rhs}");
            }
        }
    }

    fn front_ratio(model: AsymptoticModel, q: Quantity, t: f64) -> f64 {
        let at = |t: f64| model.eval(q, C1 * (t - model.launch_delay()), t).unwrap();
        at(2.0 * t) / at(t)
    }

    #[test]
    fn attenuation_exponents_on_front() {
        use AsymptoticModel::*;
        use Quantity::*;
        let cases = [
            (StepElasticAiry, Velocity, -2.0 / 3.0, 100.0),
            (StepElasticAiry, Acceleration, -1.0, 100.0),
            (StepViscous { lambda: 0.1 }, Velocity, -0.75, 100.0),
            (StepViscous { lambda: 0.1 }, Acceleration, -1.25, 100.0),
            (GaussShortAiry { sigma: 0.1 }, Displacement, -2.0 / 3.0, 1e6),
            (GaussShortAiry { sigma: 0.1 }, Velocity, -1.0, 1e6),
            (GaussShortAiry { sigma: 0.1 }, Acceleration, -4.0 / 3.0, 1e6),
            (GaussLowFreq { sigma: 0.1, lambda: 0.1 }, Displacement, -0.75, 1e6),
            (GaussLowFreq { sigma: 0.1, lambda: 0.1 }, Velocity, -1.25, 1e6),
            (GaussLowFreq { sigma: 0.1, lambda: 0.1 }, Acceleration, -1.75, 1e6),
        ];
        for (model, q, p, t) in cases {
            let got = front_ratio(model, q, t);
            assert!((got - 2f64.powf(p)).abs() < 1e-3, "{model} {q:?}: {got}");
        }
    }

    #[test]
    fn lowfreq_viscosity_exponents() {
        let (sigma, t) = (0.1, 1e6);
        let te = t - 4.0 * sigma;
        for (q, p) in [(Quantity::Displacement, -0.25), (Quantity::Velocity, -0.75), (Quantity::Acceleration, -1.25)] {
            let at = |lambda: f64| eval_gauss_lowfreq(q, sigma, lambda, C1 * te, t).unwrap();
            let ratio = at(0.32) / at(0.02);
            assert!((ratio - 16f64.powf(p)).abs() < 1e-3, "{q:?}: {ratio}");
        }
    }

    #[test]
    fn width_exponents() {
        use AsymptoticModel::*;
        let models =
            [(StepElasticAiry, 1.0 / 3.0), (StepViscous { lambda: 0.1 }, 0.5), (GaussShortAiry { sigma: 0.1 }, 1.0 / 3.0)];
        for (m, p) in models {
            let d = m.launch_delay();
            let ratio = (m.width(2.0 * 30.0 + d).unwrap() / m.width(30.0 + d).unwrap()).ln() / 2f64.ln();
            assert!((ratio - p).abs() < 1e-12);
        }
        let lf = GaussLowFreq { sigma: 0.0, lambda: 0.1 };
        assert!(lf.width(10.0).is_err());
        let lf = GaussLowFreq { sigma: 1e-3, lambda: 0.1 };
        let ratio = (lf.width(2e6).unwrap() / lf.width(1e6).unwrap()).ln() / 2f64.ln();
        assert!((ratio - 0.5).abs() < 1e-6);
        // λ = 0 keeps a finite width through σ²
        assert!(GaussLowFreq { sigma: 5.0, lambda: 0.0 }.width(21.0).unwrap() > 0.0);
    }

    #[test]
    fn front_zero_for_heaviside_families() {
        use AsymptoticModel::*;
        for q in Quantity::ALL {
            for model in [GaussShortBessel { sigma: 0.3 }, GaussShortAiry { sigma: 0.3 }, GaussLowFreq { sigma: 2.0, lambda: 0.1 }] {
                assert_eq!(model.eval(q, 12.0, model.launch_delay() * 0.999).unwrap(), 0.0);
            }
        }
        for model in [StepElasticBessel, StepElasticAiry, StepViscous { lambda: 0.1 }] {
            assert_eq!(model.eval(Quantity::Displacement, 30.0, 20.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn axis_and_radial_agree() {
        let model = AsymptoticModel::StepViscous { lambda: 0.1 };
        let axis = model.eval(Quantity::Velocity, 25.0, 21.0).unwrap();
        let radial = model.eval(Quantity::Velocity, 25f64.hypot(0.0), 21.0).unwrap();
        assert_eq!(axis, radial);
    }

    #[test]
    fn regime_examples() {
        use AsymptoticModel::*;
        use Quantity::*;
        let g = |sigma| LoadSpec::Gauss { sigma };
        assert_eq!(regime_select(&g(0.1), 0.0, Velocity), Some(GaussShortBessel { sigma: 0.1 }));
        assert_eq!(regime_select(&g(5.0), 0.1, Acceleration), Some(GaussLowFreq { sigma: 5.0, lambda: 0.1 }));
        assert_eq!(regime_select(&LoadSpec::Step, 0.05, Acceleration), None);
        assert_eq!(regime_select(&g(0.5 / C1), 0.1, Velocity), None);
        assert_eq!(regime_select(&LoadSpec::Step, 0.1, Velocity), Some(StepViscous { lambda: 0.1 }));
        assert_eq!(regime_select(&LoadSpec::Step, 0.1, Displacement), Some(StepElasticBessel));
        assert_eq!(regime_select(&LoadSpec::Step, 0.02, Velocity), Some(StepElasticBessel));
        assert_eq!(regime_select(&LoadSpec::Step, 0.002, Acceleration), Some(StepElasticBessel));
        // case (c) pulse widths with strong damping
        assert_eq!(regime_select(&g(0.1), 0.3, Acceleration), Some(GaussLowFreq { sigma: 0.1, lambda: 0.3 }));
        assert_eq!(regime_select(&g(0.1), 0.03, Displacement), None);
        // case (b)
        assert_eq!(regime_select(&g(1.2), 0.0, Displacement), Some(GaussLowFreq { sigma: 1.2, lambda: 0.0 }));
        assert_eq!(regime_select(&g(0.3), 0.05, Displacement), Some(GaussLowFreq { sigma: 0.3, lambda: 0.05 }));
        assert_eq!(regime_select(&g(0.3), 0.0, Displacement), None);
    }

    #[test]
    fn quantity_parsing() {
        assert_eq!("vel".parse::<Quantity>().unwrap(), Quantity::Velocity);
        assert!("speed".parse::<Quantity>().is_err());
        for q in Quantity::ALL {
            assert_eq!(q.short_name().parse::<Quantity>().unwrap(), q);
        }
    }
}
