//! CSV reading and writing with C-style `%.12e` floats and LF line endings.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use qfront_core::lattice::{Node, ProbeSeries};

/// `x` formatted like C's `printf("%.12e", x)`.
pub fn fmt_e(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:.12e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// Probe table `t,disp,vel,acc`; vel and acc are blank on the first and last rows.
pub fn probe_csv(series: &ProbeSeries) -> String {
    let mut out = String::with_capacity(64 * series.len() + 16);
    out.push_str("t,disp,vel,acc\n");
    let last = series.len().saturating_sub(1);
    for (k, (&t, &d)) in series.times.iter().zip(&series.disp).enumerate() {
        if k == 0 || k == last || !series.has_derivatives() {
            let _ = writeln!(out, "{},{},,", fmt_e(t), fmt_e(d));
        } else {
            let _ = writeln!(out, "{},{},{},{}", fmt_e(t), fmt_e(d), fmt_e(series.vel[k - 1]), fmt_e(series.acc[k - 1]));
        }
    }
    out
}

/// Two-column table with the given header.
pub fn curve_csv(header: &str, times: &[f64], values: &[f64]) -> String {
    let mut out = String::with_capacity(40 * times.len() + header.len() + 1);
    out.push_str(header);
    out.push('\n');
    for (&t, &v) in times.iter().zip(values) {
        let _ = writeln!(out, "{},{}", fmt_e(t), fmt_e(v));
    }
    out
}

/// File name used for a probe's table.
pub fn probe_file_name(node: Node) -> String {
    format!("probe_{}_{}.csv", node.n, node.m)
}

/// Reads a table written by [`probe_csv`] back into a series.
pub fn read_probe_csv(path: &Path, node: Node, tau: f64) -> Result<ProbeSeries> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut lines = text.lines();
    match lines.next() {
        Some("t,disp,vel,acc") => {}
        other => bail!("{}: unexpected header {:?}", path.display(), other.unwrap_or("")),
    }
    let mut times = Vec::new();
    let mut disp = Vec::new();
    let mut vel = Vec::new();
    let mut acc = Vec::new();
    for (i, line) in lines.enumerate() {
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 4 {
            bail!("{}:{}: expected 4 columns, found {}", path.display(), i + 2, cols.len());
        }
        let num = |s: &str| -> Result<f64> {
            s.parse::<f64>().with_context(|| format!("{}:{}: bad number {s:?}", path.display(), i + 2))
        };
        times.push(num(cols[0])?);
        disp.push(num(cols[1])?);
        if !cols[2].is_empty() {
            vel.push(num(cols[2])?);
            acc.push(num(cols[3])?);
        }
    }
    let t0 = times.first().copied().unwrap_or(0.0);
    let mut series = ProbeSeries::from_displacement(node, t0, tau, disp);
    series.times = times;
    series.vel = vel;
    series.acc = acc;
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_c_formatting() {
        assert_eq!(fmt_e(0.0), "0.000000000000e+00");
        assert_eq!(fmt_e(1.0), "1.000000000000e+00");
        assert_eq!(fmt_e(-2.5e-7), "-2.500000000000e-07");
        assert_eq!(fmt_e(123456.789), "1.234567890000e+05");
        assert_eq!(fmt_e(1e-300), "1.000000000000e-300");
        assert_eq!(fmt_e(f64::NAN), "nan");
        assert_eq!(fmt_e(0.01), "1.000000000000e-02");
    }

    #[test]
    fn probe_round_trip() {
        let node = Node::new(2, 1);
        let disp: Vec<f64> = (0..6).map(|k| (k as f64 * 0.3).sin()).collect();
        let s = qfront_core::lattice::differentiate_series(ProbeSeries::from_displacement(node, 0.0, 0.01, disp)).unwrap();
        let text = probe_csv(&s);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 7);
        assert!(lines[1].ends_with(",,"));
        assert!(lines[6].ends_with(",,"));
        assert!(!text.contains('\r'));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join(probe_file_name(node));
        std::fs::write(&path, &text).unwrap();
        let back = read_probe_csv(&path, node, 0.01).unwrap();
        assert_eq!(back.len(), 6);
        assert_eq!(back.vel.len(), 4);
        assert!((back.vel[1] - s.vel[1]).abs() <= 1e-11 * s.vel[1].abs().max(1.0));
    }
}
