//! JSON run configurations: a single run or a batch `{"runs": [...]}`.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use qfront_core::lattice::{LoadSpec, Node, SimParams};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum LoadKind {
    Step,
    Gauss,
}

/// One run as written in a config file or assembled from flags. Every field
/// is optional so that flags can be layered over a file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub name: Option<String>,
    pub lambda: Option<f64>,
    pub load: Option<LoadKind>,
    pub sigma: Option<f64>,
    pub t_end: Option<f64>,
    pub tau: Option<f64>,
    pub grid_half: Option<usize>,
    pub probes: Option<Vec<[usize; 2]>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BatchFile {
    runs: Vec<RunConfig>,
}

impl RunConfig {
    /// Fields set in `over` replace those in `self`.
    pub fn overlaid(&self, over: &RunConfig) -> RunConfig {
        RunConfig {
            name: over.name.clone().or_else(|| self.name.clone()),
            lambda: over.lambda.or(self.lambda),
            load: over.load.or(self.load),
            sigma: over.sigma.or(self.sigma),
            t_end: over.t_end.or(self.t_end),
            tau: over.tau.or(self.tau),
            grid_half: over.grid_half.or(self.grid_half),
            probes: over.probes.clone().or_else(|| self.probes.clone()),
        }
    }

    /// Checked simulation parameters; defaults are λ = 0, step load, the
    /// default time step and the smallest reflection-free grid.
    pub fn to_params(&self) -> Result<SimParams> {
        let load = match (self.load.unwrap_or(LoadKind::Step), self.sigma) {
            (LoadKind::Step, None) => LoadSpec::Step,
            (LoadKind::Step, Some(_)) => bail!("sigma is only meaningful with the gauss load"),
            (LoadKind::Gauss, Some(sigma)) => LoadSpec::Gauss { sigma },
            (LoadKind::Gauss, None) => bail!("the gauss load requires sigma"),
        };
        let t_end = self.t_end.ok_or_else(|| anyhow!("t_end is required"))?;
        let probes = match &self.probes {
            Some(p) if !p.is_empty() => p.iter().map(|&[n, m]| Node::new(n, m)).collect(),
            _ => bail!("at least one probe is required"),
        };
        let mut params = SimParams::new(self.lambda.unwrap_or(0.0), load, t_end, probes);
        if let Some(tau) = self.tau {
            params = params.with_tau(tau);
        }
        if let Some(n) = self.grid_half {
            params = params.with_half_width(n);
        }
        params.validate()?;
        Ok(params)
    }
}

/// Parses a config text into one or more runs.
pub fn parse_config_str(text: &str) -> Result<Vec<RunConfig>> {
    let value: serde_json::Value = serde_json::from_str(text).context("config is not valid JSON")?;
    let is_batch = value.as_object().is_some_and(|o| o.contains_key("runs"));
    // Parse the text again rather than the Value so errors carry line numbers.
    if is_batch {
        let batch: BatchFile = serde_json::from_str(text).context("invalid batch config")?;
        if batch.runs.is_empty() {
            bail!("batch config lists no runs");
        }
        Ok(batch.runs)
    } else {
        Ok(vec![serde_json::from_str(text).context("invalid run config")?])
    }
}

pub fn parse_config(path: &Path) -> Result<Vec<RunConfig>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
    parse_config_str(&text).with_context(|| format!("in {}", path.display()))
}

/// Parses `n,m`.
pub fn parse_node(s: &str) -> Result<[usize; 2], String> {
    let (n, m) = s.split_once(',').ok_or_else(|| format!("expected n,m but got {s:?}"))?;
    let n = n.trim().parse().map_err(|_| format!("bad n in {s:?}"))?;
    let m = m.trim().parse().map_err(|_| format!("bad m in {s:?}"))?;
    Ok([n, m])
}
