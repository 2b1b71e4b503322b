//! Peak extraction, front widths, power-law fits and FD-versus-asymptotic
//! comparisons.
//!
//! The "maximum amplitude" of a quasi-front is the largest |value| inside a
//! window anchored at the arrival time t_arr = r/c₁ (+4σ). The window spans
//! κ from +3 (ahead) to −6 (behind), which in time is
//! [t_arr − 3w/c₁, t_arr + 6w/c₁] with w = w(t_arr) the model's width.

use serde::{Deserialize, Serialize};

use crate::asymptotics::{AsymptoticModel, Quantity};
use crate::error::{domain, Error, Result};
use crate::lattice::ProbeSeries;

/// Fraction of the peak below which the profile counts as not yet arrived.
pub const ONSET_FRACTION: f64 = 0.05;
/// Window extent ahead of the arrival, in front widths.
pub const WINDOW_AHEAD: f64 = 3.0;
/// Window extent behind the arrival, in front widths.
pub const WINDOW_BEHIND: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrontWindow {
    pub arrival: f64,
    /// Model width w(t_arr), lattice units.
    pub width: f64,
    pub start: f64,
    pub end: f64,
}

impl FrontWindow {
    /// Window around the arrival of `model` at coordinate `r`.
    pub fn for_model(model: &AsymptoticModel, r: f64) -> Result<Self> {
        let arrival = model.arrival_time(r);
        let width = model.width(arrival)?;
        let dt = width / model.c1();
        Ok(Self {
            arrival,
            width,
            start: arrival - WINDOW_AHEAD * dt,
            end: arrival + WINDOW_BEHIND * dt,
        })
    }

    /// Latest time a series must reach for the window to count as covered;
    /// the part beyond it is used when available.
    pub fn required_end(&self) -> f64 {
        self.arrival + WINDOW_AHEAD * (self.end - self.arrival) / WINDOW_BEHIND
    }

    /// The window clipped to a series ending at `last`, or a coverage error.
    pub fn clip_to(&self, first: f64, last: f64) -> Result<Self> {
        let slack = 1e-9 * self.end.abs().max(1.0);
        if first > self.start + slack || last + slack < self.required_end() {
            return Err(Error::Coverage {
                have_start: first,
                have_end: last,
                want_start: self.start,
                want_end: self.required_end(),
            });
        }
        Ok(Self { end: self.end.min(last), ..*self })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeakSample {
    /// Radial coordinate r of the probe.
    pub coordinate: f64,
    pub arrival_time: f64,
    /// max |value| over the window.
    pub peak_value: f64,
    /// Value at the peak, with sign.
    pub signed_value: f64,
    pub peak_time: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Abscissa {
    /// Radial coordinate of the probe.
    Radius,
    /// Arrival time r/c₁ (+4σ).
    Time,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub exponent: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Root-mean-square log residual.
    pub residual: f64,
    pub points_used: usize,
}

/// Location and size of the largest |value| with `lo ≤ t ≤ hi`.
/// An all-zero stretch reports zero at its first sample.
pub fn windowed_peak(times: &[f64], values: &[f64], lo: f64, hi: f64) -> Result<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, (&t, &v)) in times.iter().zip(values).enumerate() {
        if t < lo || t > hi {
            continue;
        }
        match best {
            Some((_, b)) if v.abs() <= b => {}
            _ => best = Some((i, v.abs())),
        }
    }
    best.ok_or_else(|| Error::NotFound(format!("no samples inside [{lo}, {hi}]")))
}

/// Windowed maximum of |value| for one quantity of a probe series.
pub fn extract_front_peak(series: &ProbeSeries, q: Quantity, model: &AsymptoticModel) -> Result<PeakSample> {
    let r = series.node.radius();
    let (times, values) = series.samples(q);
    extract_peak(times, values, r, &FrontWindow::for_model(model, r)?)
}

/// Windowed maximum on raw samples.
pub fn extract_peak(times: &[f64], values: &[f64], r: f64, window: &FrontWindow) -> Result<PeakSample> {
    let (Some(&first), Some(&last)) = (times.first(), times.last()) else {
        return Err(Error::TooShort { need: 1, got: 0 });
    };
    let w = window.clip_to(first, last)?;
    let (i, peak) = windowed_peak(times, values, w.start, w.end)?;
    Ok(PeakSample {
        coordinate: r,
        arrival_time: w.arrival,
        peak_value: peak,
        signed_value: values[i],
        peak_time: times[i],
    })
}

/// Rise time of the front: peak time minus the last earlier time at which
/// |value| ≤ 5% of the peak.
pub fn front_width(series: &ProbeSeries, q: Quantity, model: &AsymptoticModel) -> Result<f64> {
    let (times, values) = series.samples(q);
    let peak = extract_front_peak(series, q, model)?;
    rise_time(times, values, &peak)
}

/// [`front_width`] on raw samples with a known peak.
pub fn rise_time(times: &[f64], values: &[f64], peak: &PeakSample) -> Result<f64> {
    if !(peak.peak_value > 0.0) {
        return Err(Error::NotFound("front peak is zero; no width to measure".into()));
    }
    let threshold = ONSET_FRACTION * peak.peak_value;
    let end = times.partition_point(|&t| t < peak.peak_time);
    (0..end)
        .rev()
        .find(|&i| values[i].abs() <= threshold)
        .map(|i| peak.peak_time - times[i])
        .ok_or_else(|| Error::NotFound(format!("profile never falls below {threshold:e} before its peak")))
}

/// Least-squares slope of ln y against ln x.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<FitReport> {
    if points.len() < 3 {
        return Err(Error::TooShort { need: 3, got: points.len() });
    }
    if let Some(&(x, y)) = points.iter().find(|(x, y)| !(*x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite())) {
        return domain(format!("power-law fit needs positive data, got ({x}, {y})"));
    }
    let n = points.len() as f64;
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = logs.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return domain("power-law fit needs at least two distinct abscissas");
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = logs.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let r_squared = if syy == 0.0 { 1.0 } else { (1.0 - ss_res / syy).clamp(0.0, 1.0) };
    Ok(FitReport {
        exponent: slope,
        intercept,
        r_squared,
        residual: (ss_res / n).sqrt(),
        points_used: points.len(),
    })
}

/// Power-law fit of peak magnitudes against radius or arrival time.
pub fn fit_peaks(samples: &[PeakSample], abscissa: Abscissa) -> Result<FitReport> {
    let points: Vec<(f64, f64)> = samples
        .iter()
        .map(|s| {
            let x = match abscissa {
                Abscissa::Radius => s.coordinate,
                Abscissa::Time => s.arrival_time,
            };
            (x, s.peak_value)
        })
        .collect();
    fit_power_law(&points)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    /// |peak_fd − peak_model| / |peak_model|.
    pub relative_peak_error: f64,
    /// Peak time of the FD curve minus that of the model curve.
    pub time_shift: f64,
    pub fd_peak: PeakSample,
    pub model_peak: PeakSample,
}

/// Windowed peaks of an FD series and of a model evaluated on the same
/// sample times.
pub fn compare_curves(
    series: &ProbeSeries,
    model: &AsymptoticModel,
    q: Quantity,
    window: Option<FrontWindow>,
) -> Result<Comparison> {
    let r = series.node.radius();
    let window = match window {
        Some(w) => w,
        None => FrontWindow::for_model(model, r)?,
    };
    let (times, values) = series.samples(q);
    compare_samples(times, values, r, model, q, &window)
}

/// [`compare_curves`] on raw samples.
pub fn compare_samples(
    times: &[f64],
    values: &[f64],
    r: f64,
    model: &AsymptoticModel,
    q: Quantity,
    window: &FrontWindow,
) -> Result<Comparison> {
    let (Some(&first), Some(&last)) = (times.first(), times.last()) else {
        return Err(Error::TooShort { need: 1, got: 0 });
    };
    let window = window.clip_to(first, last)?;
    let lo = times.partition_point(|&t| t < window.start);
    let hi = times.partition_point(|&t| t <= window.end);
    if lo >= hi {
        return Err(Error::NotFound(format!("window [{}, {}] holds no samples", window.start, window.end)));
    }
    let t = &times[lo..hi];
    let model_values = t.iter().map(|&t| model.eval(q, r, t)).collect::<Result<Vec<f64>>>()?;
    let peak_of = |v: &[f64]| -> Result<PeakSample> {
        let (i, peak) = windowed_peak(t, v, window.start, window.end)?;
        Ok(PeakSample { coordinate: r, arrival_time: window.arrival, peak_value: peak, signed_value: v[i], peak_time: t[i] })
    };
    let fd_peak = peak_of(&values[lo..hi])?;
    let model_peak = peak_of(&model_values)?;
    if model_peak.peak_value == 0.0 {
        return Err(Error::NotFound(format!("{model} vanishes throughout the window")));
    }
    Ok(Comparison {
        relative_peak_error: (fd_peak.peak_value - model_peak.peak_value).abs() / model_peak.peak_value,
        time_shift: fd_peak.peak_time - model_peak.peak_time,
        fd_peak,
        model_peak,
    })
}
