//! Subcommand definitions and their implementations.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qfront_core::analysis::{compare_curves, Abscissa};
use qfront_core::lattice::{Node, SimParams};
use qfront_core::{AsymptoticModel, Quantity};
use serde::Serialize;

use crate::config::{parse_config, parse_node, LoadKind, RunConfig};
use crate::criteria::{self, model_for, VerifyOptions};
use crate::csvout::{curve_csv, probe_csv, probe_file_name, read_probe_csv};
use crate::figures::{figure, FIGURE_IDS};
use crate::manifest::RunManifest;

#[derive(Debug, Parser)]
#[command(name = "qfront", version, about = "Antiplane waves in a square lattice with Voigt elements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the finite-difference lattice and write probe histories.
    Simulate(SimulateArgs),
    /// Tabulate an asymptotic formula along a time range.
    Asymptotic(AsymptoticArgs),
    /// Compare a probe of a finished run with an asymptotic model.
    Compare(CompareArgs),
    /// Fit peak attenuation and front broadening across a run's probes.
    FitAttenuation(FitArgs),
    /// Write the data behind the overlay figures.
    Figures(FiguresArgs),
    /// Run the acceptance criteria.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, value_enum)]
    pub load: Option<LoadKind>,
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Probe node `n,m`; repeatable.
    #[arg(long = "probe", value_parser = parse_node)]
    pub probes: Vec<[usize; 2]>,
    #[arg(long)]
    pub t_end: Option<f64>,
    #[arg(long)]
    pub tau: Option<f64>,
    /// Grid half-width N; defaults to the smallest reflection-free size.
    #[arg(long)]
    pub grid_half: Option<usize>,
    /// JSON run or batch file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, default_value = "run")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    StepElastic,
    StepElasticAiry,
    StepViscous,
    GaussShort,
    GaussShortAiry,
    GaussLowfreq,
}

#[derive(Debug, Args)]
pub struct AsymptoticArgs {
    #[arg(long, value_enum)]
    pub model: ModelName,
    #[arg(long)]
    pub quantity: Quantity,
    #[arg(long)]
    pub r: f64,
    /// `start:end:step`
    #[arg(long)]
    pub t_range: String,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Output CSV; a manifest is written next to it. Standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Directory written by `simulate`.
    #[arg(long)]
    pub run: PathBuf,
    #[arg(long, value_parser = parse_node)]
    pub probe: [usize; 2],
    #[arg(long)]
    pub quantity: Quantity,
    /// Model to compare against; defaults to the recommended one.
    #[arg(long, value_enum)]
    pub model: Option<ModelName>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AbscissaArg {
    Time,
    Radius,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long)]
    pub run: PathBuf,
    #[arg(long)]
    pub quantity: Quantity,
    #[arg(long, value_enum, default_value = "time")]
    pub abscissa: AbscissaArg,
    #[arg(long, value_enum)]
    pub model: Option<ModelName>,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    /// fig2 ... fig6, or all.
    pub which: String,
    #[arg(long, default_value = "figures")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub fast: bool,
    /// JSON report path.
    #[arg(long, default_value = "verify_report.json")]
    pub report: PathBuf,
    #[arg(long, hide = true)]
    pub inject_phi_sign_fault: bool,
}

/// Exit status for a failed verification, as distinct from an error.
pub const EXIT_CRITERIA_FAILED: i32 = 2;

pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Simulate(a) => simulate(a).map(|_| 0),
        Command::Asymptotic(a) => asymptotic(a).map(|_| 0),
        Command::Compare(a) => compare(a).map(|_| 0),
        Command::FitAttenuation(a) => fit_attenuation(a).map(|_| 0),
        Command::Figures(a) => figures(a).map(|_| 0),
        Command::Verify(a) => verify(a),
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn simulate(a: SimulateArgs) -> Result<()> {
    let flags = RunConfig {
        name: None,
        lambda: a.lambda,
        load: a.load,
        sigma: a.sigma,
        t_end: a.t_end,
        tau: a.tau,
        grid_half: a.grid_half,
        probes: if a.probes.is_empty() { None } else { Some(a.probes.clone()) },
    };
    let runs = match &a.config {
        Some(path) => parse_config(path)?,
        None => vec![RunConfig::default()],
    };
    // Validate everything before running anything.
    let jobs = runs
        .iter()
        .enumerate()
        .map(|(i, run)| {
            let merged = run.overlaid(&flags);
            let params = merged.to_params().with_context(|| format!("run {}", i + 1))?;
            Ok((merged.name.clone(), params))
        })
        .collect::<Result<Vec<_>>>()?;
    let batch = jobs.len() > 1;
    for (i, (name, params)) in jobs.iter().enumerate() {
        let dir = if batch { a.out.join(name.clone().unwrap_or_else(|| format!("run-{}", i + 1))) } else { a.out.clone() };
        write_run(&dir, params)?;
        eprintln!("wrote {}", dir.display());
    }
    Ok(())
}

/// Runs the lattice and writes one CSV per probe plus the manifest.
pub fn write_run(dir: &Path, params: &SimParams) -> Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let start = Instant::now();
    let series = qfront_core::lattice::run_simulation(params)?;
    let mut files = Vec::new();
    for s in &series {
        let name = probe_file_name(s.node);
        std::fs::write(dir.join(&name), probe_csv(s))?;
        files.push(name);
    }
    let manifest = RunManifest::new(
        dir,
        "simulate",
        serde_json::to_value(params)?,
        Some(params.tau),
        Some(params.half_width),
        &files,
        start.elapsed().as_secs_f64(),
    )?;
    manifest.write(dir)?;
    Ok(())
}

fn need(v: Option<f64>, flag: &str, model: ModelName) -> Result<f64> {
    v.with_context(|| format!("--{flag} is required for --model {}", model.to_possible_value().unwrap().get_name()))
}

pub fn build_model(name: ModelName, lambda: Option<f64>, sigma: Option<f64>) -> Result<AsymptoticModel> {
    use AsymptoticModel::*;
    let model = match name {
        ModelName::StepElastic => StepElasticBessel,
        ModelName::StepElasticAiry => StepElasticAiry,
        ModelName::StepViscous => StepViscous { lambda: need(lambda, "lambda", name)? },
        ModelName::GaussShort => GaussShortBessel { sigma: need(sigma, "sigma", name)? },
        ModelName::GaussShortAiry => GaussShortAiry { sigma: need(sigma, "sigma", name)? },
        ModelName::GaussLowfreq => GaussLowFreq { sigma: need(sigma, "sigma", name)?, lambda: need(lambda, "lambda", name)? },
    };
    model.validate()?;
    Ok(model)
}

/// Parses `a:b:dt` into the sample times a, a + dt, ..., ≤ b.
pub fn parse_t_range(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, dt] = parts.as_slice() else {
        bail!("--t-range must look like start:end:step, got {s:?}");
    };
    let num = |x: &str| x.trim().parse::<f64>().with_context(|| format!("bad number {x:?} in --t-range"));
    let (a, b, dt) = (num(a)?, num(b)?, num(dt)?);
    if !(a.is_finite() && b.is_finite() && a < b) {
        bail!("--t-range start {a} must be below its end {b}");
    }
    if !(dt > 0.0 && dt.is_finite()) {
        bail!("--t-range step must be positive, got {dt}");
    }
    let n = ((b - a) / dt * (1.0 + 1e-12)).floor() as usize;
    Ok((0..=n).map(|k| a + k as f64 * dt).collect())
}

fn asymptotic(a: AsymptoticArgs) -> Result<()> {
    let model = build_model(a.model, a.lambda, a.sigma)?;
    if !model.has_native(a.quantity) {
        bail!(
            "{} has no displacement formula of its own; the displacement follows the elastic logarithmic law, use --model step-elastic",
            model.name()
        );
    }
    let times = parse_t_range(&a.t_range)?;
    let values = times.iter().map(|&t| model.eval(a.quantity, a.r, t)).collect::<Result<Vec<f64>, _>>()?;
    let text = curve_csv("t,value", &times, &values);
    match a.out {
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
        Some(path) => {
            let start = Instant::now();
            std::fs::write(&path, &text).with_context(|| format!("cannot write {}", path.display()))?;
            let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let file = path.file_name().context("--out must name a file")?.to_string_lossy().into_owned();
            let params = serde_json::json!({
                "model": model,
                "quantity": a.quantity,
                "r": a.r,
                "t_range": a.t_range,
            });
            let manifest = RunManifest::new(dir, "asymptotic", params, None, None, &[file.clone()], start.elapsed().as_secs_f64())?;
            manifest.write_to(&dir.join(format!("{file}.manifest.json")))?;
        }
    }
    Ok(())
}

fn load_run(dir: &Path) -> Result<(RunManifest, SimParams)> {
    let manifest = RunManifest::load_verified(dir)?;
    if manifest.command != "simulate" {
        bail!("{} holds `{}` output, not a simulation", dir.display(), manifest.command);
    }
    let params: SimParams =
        serde_json::from_value(manifest.parameters.clone()).context("manifest parameters are not a simulation")?;
    Ok((manifest, params))
}

fn compare(a: CompareArgs) -> Result<()> {
    let (_, params) = load_run(&a.run)?;
    let node = Node::new(a.probe[0], a.probe[1]);
    if !params.probes.contains(&node) {
        bail!("run {} has no probe {node}", a.run.display());
    }
    let series = read_probe_csv(&a.run.join(probe_file_name(node)), node, params.tau)?;
    let model = match a.model {
        Some(m) => build_model(m, Some(params.lambda), params.load.sigma())?,
        None => model_for(&params.load, params.lambda, a.quantity),
    };
    let cmp = compare_curves(&series, &model, a.quantity, None)?;
    print_json(&serde_json::json!({
        "probe": node,
        "quantity": a.quantity,
        "model": model,
        "comparison": cmp,
    }))
}

fn fit_attenuation(a: FitArgs) -> Result<()> {
    let (_, params) = load_run(&a.run)?;
    if params.probes.len() < 3 {
        bail!("fitting needs at least 3 probes, run {} has {}", a.run.display(), params.probes.len());
    }
    let series = params
        .probes
        .iter()
        .map(|&p| read_probe_csv(&a.run.join(probe_file_name(p)), p, params.tau))
        .collect::<Result<Vec<_>>>()?;
    let model = match a.model {
        Some(m) => build_model(m, Some(params.lambda), params.load.sigma())?,
        None => model_for(&params.load, params.lambda, a.quantity),
    };
    let abscissa = match a.abscissa {
        AbscissaArg::Time => Abscissa::Time,
        AbscissaArg::Radius => Abscissa::Radius,
    };
    let result = criteria::attenuation(&series, a.quantity, &model, abscissa)?;
    print_json(&serde_json::json!({
        "quantity": a.quantity,
        "abscissa": abscissa,
        "attenuation": result,
    }))
}

fn figures(a: FiguresArgs) -> Result<()> {
    let ids: Vec<&str> = if a.which == "all" { FIGURE_IDS.to_vec() } else { vec![a.which.as_str()] };
    let figs = ids.iter().map(|id| figure(id)).collect::<Result<Vec<_>>>()?;
    for fig in figs {
        let dir = a.out.join(fig.id);
        std::fs::create_dir_all(&dir).with_context(|| format!("cannot create {}", dir.display()))?;
        let start = Instant::now();
        let params = fig.params();
        let series = fig.simulate(None)?;
        let files = fig.write_panels(&dir, &series)?;
        let manifest = RunManifest::new(
            &dir,
            "figures",
            serde_json::json!({ "figure": fig.id, "simulation": params }),
            Some(params.tau),
            Some(params.half_width),
            &files,
            start.elapsed().as_secs_f64(),
        )?;
        manifest.write(&dir)?;
        eprintln!("wrote {}", dir.display());
    }
    Ok(())
}

fn verify(a: VerifyArgs) -> Result<i32> {
    let opts = VerifyOptions { fast: a.fast, threads: None, flip_phi1_sign: a.inject_phi_sign_fault };
    let mut reports = Vec::new();
    for id in criteria::CRITERIA {
        let r = criteria::run_criterion(id, &opts)?;
        println!("{}", r.summary_line());
        reports.push(r);
    }
    let all_passed = reports.iter().all(|r| r.status != criteria::Status::Fail);
    let report = criteria::VerifyReport { fast: a.fast, all_passed, criteria: reports };
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    std::fs::write(&a.report, text).with_context(|| format!("cannot write {}", a.report.display()))?;
    Ok(if all_passed { 0 } else { EXIT_CRITERIA_FAILED })
}
