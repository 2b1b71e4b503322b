//! Explicit finite-difference model of the lattice.
//!
//! Each node carries one antiplane displacement φ_{n,m} and obeys
//!
//! ```text
//! φ̈ = Dφ + λDφ̇ + Q(t)δ_{0n}δ_{0m}
//! Dφ_{n,m} = (Σ of the 8 axial and diagonal neighbours − 8φ_{n,m}) / 2
//! ```
//!
//! Only the quadrant n, m ≥ 0 is stored. Indices −1 mirror onto +1 (the
//! load and the operator are even in n and m), and the nodes at n = N or
//! m = N are held at zero. The grid must be large enough that nothing
//! reflected from that edge reaches a probe; see [`required_half_width`].
//!
//! Time stepping uses the central difference for φ̈ and the backward
//! difference for the damper velocity:
//!
//! ```text
//! φ^{k+1} = 2φ^k − φ^{k−1} + τ²[Dφ^k + (λ/τ)D(φ^k − φ^{k−1}) + Q(t_k)δ]
//! ```

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::LONG_WAVE_SPEED;

/// Default time step.
pub const DEFAULT_TAU: f64 = 0.01;
/// Extra nodes beyond the farthest quasi-front position.
pub const REFLECTION_MARGIN: usize = 40;
/// Full-field finiteness is checked this often.
pub const FINITE_CHECK_INTERVAL: usize = 1000;

// Rows below this count are stepped serially even in parallel mode.
const PARALLEL_MIN_ROWS: usize = 32;

/// Smallest half-width for which the outer edge cannot disturb a run of length `t_end`.
pub fn required_half_width(t_end: f64) -> usize {
    (LONG_WAVE_SPEED * t_end).ceil() as usize + REFLECTION_MARGIN
}

/// Time dependence of the concentrated load at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LoadSpec {
    /// Heaviside step H(t).
    Step,
    /// exp[−(t − 4σ)²/(2σ²)].
    Gauss { sigma: f64 },
}

impl LoadSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            LoadSpec::Step => Ok(()),
            LoadSpec::Gauss { sigma } if sigma > 0.0 && sigma.is_finite() => Ok(()),
            LoadSpec::Gauss { sigma } => Err(Error::InvalidParams(format!(
                "Gaussian pulse width must be positive, got {sigma}"
            ))),
        }
    }

    /// Q(t) for t ≥ 0.
    pub fn amplitude(&self, t: f64) -> f64 {
        match *self {
            LoadSpec::Step => 1.0,
            LoadSpec::Gauss { sigma } => {
                let d = t - 4.0 * sigma;
                (-d * d / (2.0 * sigma * sigma)).exp()
            }
        }
    }

    /// Delay between t = 0 and the launch of the quasi-front: 0 or 4σ.
    pub fn launch_delay(&self) -> f64 {
        match *self {
            LoadSpec::Step => 0.0,
            LoadSpec::Gauss { sigma } => 4.0 * sigma,
        }
    }

    pub fn sigma(&self) -> Option<f64> {
        match *self {
            LoadSpec::Step => None,
            LoadSpec::Gauss { sigma } => Some(sigma),
        }
    }
}

/// Free function form of [`LoadSpec::amplitude`].
pub fn load_amplitude(load: &LoadSpec, t: f64) -> f64 {
    load.amplitude(t)
}

/// Lattice node in the simulated quadrant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Node {
    pub n: usize,
    pub m: usize,
}

impl Node {
    pub fn new(n: usize, m: usize) -> Self {
        Self { n, m }
    }

    /// Radial distance √(n² + m²) from the loaded node.
    pub fn radius(&self) -> f64 {
        (self.n as f64).hypot(self.m as f64)
    }
}

impl std::fmt::Display for Node {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{}", self.n, self.m)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimParams {
    pub lambda: f64,
    pub load: LoadSpec,
    pub t_end: f64,
    pub tau: f64,
    pub half_width: usize,
    pub probes: Vec<Node>,
}

impl SimParams {
    /// Parameters with the default step and the smallest reflection-free grid.
    pub fn new(lambda: f64, load: LoadSpec, t_end: f64, probes: Vec<Node>) -> Self {
        Self {
            lambda,
            load,
            t_end,
            tau: DEFAULT_TAU,
            half_width: required_half_width(t_end),
            probes,
        }
    }

    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = tau;
        self
    }

    pub fn with_half_width(mut self, half_width: usize) -> Self {
        self.half_width = half_width;
        self
    }

    /// Number of steps taken: floor(t_end/τ).
    pub fn steps(&self) -> usize {
        // A tiny relative slack keeps t_end = 40, τ = 0.01 at 4000 steps.
        (self.t_end / self.tau * (1.0 + 1e-12)).floor() as usize
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return bad(format!("viscosity must be finite and ≥ 0, got {}", self.lambda));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return bad(format!("t_end must be positive, got {}", self.t_end));
        }
        if !(self.tau > 0.0 && self.tau.is_finite()) {
            return bad(format!("time step must be positive, got {}", self.tau));
        }
        self.load.validate()?;
        if self.half_width < 2 {
            return bad(format!("grid half-width must be ≥ 2, got {}", self.half_width));
        }
        let needed = required_half_width(self.t_end);
        if self.half_width < needed {
            return bad(format!(
                "grid half-width {} is below the reflection guard {} for t_end = {}",
                self.half_width, needed, self.t_end
            ));
        }
        for p in &self.probes {
            if p.n + 2 > self.half_width || p.m + 2 > self.half_width {
                return bad(format!(
                    "probe ({}) must satisfy n, m ≤ N − 2 = {}",
                    p,
                    self.half_width - 2
                ));
            }
        }
        Ok(())
    }
}

/// Square (N+1)×(N+1) array of node values, row-major in n.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    side: usize,
    data: Vec<f64>,
}

impl Grid {
    pub fn zeros(half_width: usize) -> Self {
        let side = half_width + 1;
        Self { side, data: vec![0.0; side * side] }
    }

    pub fn from_fn(half_width: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut g = Self::zeros(half_width);
        for n in 0..g.side {
            for m in 0..g.side {
                g.data[n * g.side + m] = f(n, m);
            }
        }
        g
    }

    pub fn half_width(&self) -> usize {
        self.side - 1
    }

    pub fn get(&self, n: usize, m: usize) -> f64 {
        self.data[n * self.side + m]
    }

    pub fn set(&mut self, n: usize, m: usize, v: f64) {
        self.data[n * self.side + m] = v;
    }

    pub fn row(&self, n: usize) -> &[f64] {
        &self.data[n * self.side..(n + 1) * self.side]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

/// Dφ at one node, with mirror indexing across n = 0 and m = 0.
pub fn apply_operator_d(field: &Grid, n: usize, m: usize) -> Result<f64> {
    let half_width = field.half_width();
    if n >= half_width || m >= half_width {
        return Err(Error::Boundary { n, m, half_width });
    }
    let up = field.row(if n == 0 { 1 } else { n - 1 });
    let mid = field.row(n);
    let down = field.row(n + 1);
    Ok(stencil(up, mid, down, m))
}

#[inline(always)]
fn stencil(up: &[f64], mid: &[f64], down: &[f64], m: usize) -> f64 {
    let l = if m == 0 { 1 } else { m - 1 };
    let r = m + 1;
    // Terms are paired with their n↔m images so the sum is bitwise swap-symmetric.
    let diagonal = (up[l] + down[r]) + (up[r] + down[l]);
    let axial = (up[m] + mid[l]) + (down[m] + mid[r]);
    0.5 * (diagonal + axial - 8.0 * mid[m])
}

// Number of full-plane images of quadrant index i.
fn mirror_weight(i: usize) -> f64 {
    if i == 0 {
        1.0
    } else {
        2.0
    }
}

/// Bond energy ¼Σ_bonds(Δφ)² of a field over the full plane.
///
/// Each bond has stiffness ½, so the sum equals −½Σ φ·Dφ, which is what is
/// evaluated here.
pub fn potential_energy(field: &Grid) -> f64 {
    let half = field.half_width();
    let mut total = 0.0;
    for n in 0..half {
        let up = field.row(if n == 0 { 1 } else { n - 1 });
        let mid = field.row(n);
        let down = field.row(n + 1);
        for m in 0..half {
            total -= mirror_weight(n) * mirror_weight(m) * mid[m] * stencil(up, mid, down, m);
        }
    }
    0.5 * total
}

/// How the row updates of one step are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Serial,
    /// Rows are split across the current rayon pool; results are identical
    /// to [`Exec::Serial`] because every node is computed independently.
    #[default]
    Parallel,
}

/// Two consecutive time levels of the quadrant field.
#[derive(Debug, Clone)]
pub struct LatticeState {
    curr: Grid,
    prev: Grid,
    // scratch holding φ^k + (λ/τ)(φ^k − φ^{k−1})
    work: Grid,
    step: usize,
    tau: f64,
}

impl LatticeState {
    /// Zero initial state.
    pub fn new(half_width: usize, tau: f64) -> Result<Self> {
        if half_width < 2 {
            return Err(Error::InvalidParams(format!("grid half-width must be ≥ 2, got {half_width}")));
        }
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::InvalidParams(format!("time step must be positive, got {tau}")));
        }
        Ok(Self {
            curr: Grid::zeros(half_width),
            prev: Grid::zeros(half_width),
            work: Grid::zeros(half_width),
            step: 0,
            tau,
        })
    }

    pub fn for_params(params: &SimParams) -> Result<Self> {
        Self::new(params.half_width, params.tau)
    }

    pub fn half_width(&self) -> usize {
        self.curr.half_width()
    }

    pub fn step_index(&self) -> usize {
        self.step
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn time(&self) -> f64 {
        self.step as f64 * self.tau
    }

    pub fn current(&self) -> &Grid {
        &self.curr
    }

    pub fn previous(&self) -> &Grid {
        &self.prev
    }

    pub fn displacement(&self, node: Node) -> f64 {
        self.curr.get(node.n, node.m)
    }

    /// Advances one level. Returns an instability error if a non-finite value shows up.
    pub fn step_once(&mut self, lambda: f64, load: &LoadSpec, exec: Exec) -> Result<()> {
        let side = self.curr.side;
        let tau = self.tau;
        let tau2 = tau * tau;
        let ratio = lambda / tau;

        let combine = |(w, (c, p)): (&mut f64, (&f64, &f64))| *w = c + ratio * (c - p);
        let pairs = self.curr.data.iter().zip(self.prev.data.iter());
        match exec {
            Exec::Serial => self.work.data.iter_mut().zip(pairs).for_each(combine),
            Exec::Parallel => self
                .work
                .data
                .par_iter_mut()
                .zip(self.curr.data.par_iter().zip(self.prev.data.par_iter()))
                .for_each(combine),
        }

        // φ^{k−1} is overwritten in place with φ^{k+1}.
        let work = &self.work;
        let curr = &self.curr;
        let update_row = |(n, out): (usize, &mut [f64])| {
            if n + 1 >= side {
                return;
            }
            let up = work.row(if n == 0 { 1 } else { n - 1 });
            let mid = work.row(n);
            let down = work.row(n + 1);
            let c = curr.row(n);
            for m in 0..side - 1 {
                out[m] = 2.0 * c[m] - out[m] + tau2 * stencil(up, mid, down, m);
            }
        };
        if exec == Exec::Parallel && side >= PARALLEL_MIN_ROWS {
            self.prev.data.par_chunks_mut(side).enumerate().for_each(update_row);
        } else {
            self.prev.data.chunks_mut(side).enumerate().for_each(update_row);
        }

        let t = self.time();
        self.prev.data[0] += tau2 * load.amplitude(t);
        std::mem::swap(&mut self.curr, &mut self.prev);
        self.step += 1;

        let origin_ok = self.curr.data[0].is_finite();
        if !origin_ok || (self.step % FINITE_CHECK_INTERVAL == 0 && !self.curr.is_finite()) {
            return Err(Error::Instability { step: self.step });
        }
        Ok(())
    }

    /// Full-plane energy, counting each quadrant node with its mirror images.
    ///
    /// The kinetic part ½Σ((φ^k − φ^{k−1})/τ)² lives at the half step k − ½,
    /// so the bond part is averaged over levels k and k − 1 to match. With
    /// both at level k the leapfrog phase error shows up as a spurious drift
    /// of order τω; see [`potential_energy`].
    pub fn energy(&self) -> f64 {
        self.kinetic_energy() + 0.5 * (potential_energy(&self.curr) + potential_energy(&self.prev))
    }

    /// ½Σ((φ^k − φ^{k−1})/τ)² over the full plane.
    pub fn kinetic_energy(&self) -> f64 {
        let half = self.half_width();
        let mut kinetic = 0.0;
        for n in 0..half {
            let (c, p) = (self.curr.row(n), self.prev.row(n));
            for m in 0..half {
                let v = (c[m] - p[m]) / self.tau;
                kinetic += mirror_weight(n) * mirror_weight(m) * v * v;
            }
        }
        0.5 * kinetic
    }

    /// True when φ_{n,m} = φ_{m,n} everywhere, to the given absolute tolerance.
    pub fn is_swap_symmetric(&self, tol: f64) -> bool {
        let side = self.curr.side;
        (0..side).all(|n| (n + 1..side).all(|m| (self.curr.get(n, m) - self.curr.get(m, n)).abs() <= tol))
    }
}

/// Time series recorded at one node.
///
/// `vel` and `acc` drop the first and last sample: `vel[i]` belongs to
/// `times[i + 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeSeries {
    pub node: Node,
    pub times: Vec<f64>,
    pub disp: Vec<f64>,
    pub vel: Vec<f64>,
    pub acc: Vec<f64>,
    tau: f64,
}

impl ProbeSeries {
    /// Displacement-only series sampled at t_k = t0 + kτ.
    pub fn from_displacement(node: Node, t0: f64, tau: f64, disp: Vec<f64>) -> Self {
        let times = (0..disp.len()).map(|k| t0 + k as f64 * tau).collect();
        Self { node, times, disp, vel: Vec::new(), acc: Vec::new(), tau }
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn has_derivatives(&self) -> bool {
        self.len() >= 3 && self.vel.len() + 2 == self.len()
    }

    /// Aligned (times, values) for displacement, velocity or acceleration.
    pub fn samples(&self, q: crate::Quantity) -> (&[f64], &[f64]) {
        use crate::Quantity::*;
        match q {
            Displacement => (&self.times, &self.disp),
            Velocity | Acceleration if self.has_derivatives() => {
                let t = &self.times[1..self.len() - 1];
                (t, if q == Velocity { &self.vel } else { &self.acc })
            }
            _ => (&[], &[]),
        }
    }
}

/// Central differences: vel = (φ^{k+1} − φ^{k−1})/(2τ), acc = (φ^{k+1} − 2φ^k + φ^{k−1})/τ².
pub fn differentiate_series(mut series: ProbeSeries) -> Result<ProbeSeries> {
    let len = series.disp.len();
    if len < 3 {
        return Err(Error::TooShort { need: 3, got: len });
    }
    let tau = series.tau;
    let (vel, acc) = series
        .disp
        .windows(3)
        .map(|w| ((w[2] - w[0]) / (2.0 * tau), (w[2] - 2.0 * w[1] + w[0]) / (tau * tau)))
        .unzip();
    series.vel = vel;
    series.acc = acc;
    Ok(series)
}

/// Drives [`LatticeState::step_once`] and records every probe at every level.
pub struct Simulation {
    params: SimParams,
    state: LatticeState,
    records: Vec<Vec<f64>>,
    exec: Exec,
}

impl Simulation {
    pub fn new(params: SimParams, exec: Exec) -> Result<Self> {
        params.validate()?;
        let state = LatticeState::for_params(&params)?;
        let capacity = params.steps() + 1;
        let records = params.probes.iter().map(|_| {
            let mut v = Vec::with_capacity(capacity);
            v.push(0.0);
            v
        });
        let records = records.collect();
        Ok(Self { params, state, records, exec })
    }

    pub fn params(&self) -> &SimParams {
        &self.params
    }

    pub fn state(&self) -> &LatticeState {
        &self.state
    }

    pub fn is_done(&self) -> bool {
        self.state.step_index() >= self.params.steps()
    }

    pub fn advance(&mut self) -> Result<()> {
        self.state.step_once(self.params.lambda, &self.params.load, self.exec)?;
        for (probe, rec) in self.params.probes.iter().zip(self.records.iter_mut()) {
            rec.push(self.state.displacement(*probe));
        }
        Ok(())
    }

    /// Runs to t_end, calling `observe` after every step.
    pub fn run_with(mut self, mut observe: impl FnMut(&LatticeState)) -> Result<Vec<ProbeSeries>> {
        while !self.is_done() {
            self.advance()?;
            observe(&self.state);
        }
        if !self.state.current().is_finite() {
            return Err(Error::Instability { step: self.state.step_index() });
        }
        self.finish()
    }

    pub fn run(self) -> Result<Vec<ProbeSeries>> {
        self.run_with(|_| {})
    }

    fn finish(self) -> Result<Vec<ProbeSeries>> {
        let tau = self.params.tau;
        self.params
            .probes
            .iter()
            .zip(self.records)
            .map(|(node, disp)| differentiate_series(ProbeSeries::from_displacement(*node, 0.0, tau, disp)))
            .collect()
    }
}

/// One [`ProbeSeries`] per probe, each of length floor(t_end/τ) + 1.
pub fn run_simulation(params: &SimParams) -> Result<Vec<ProbeSeries>> {
    Simulation::new(params.clone(), Exec::Parallel)?.run()
}

/// Like [`run_simulation`] inside a dedicated pool of `threads` workers
/// (`None` uses the global pool, `Some(1)` runs serially).
pub fn run_simulation_threads(params: &SimParams, threads: Option<usize>) -> Result<Vec<ProbeSeries>> {
    match threads {
        None => run_simulation(params),
        Some(0) | Some(1) => Simulation::new(params.clone(), Exec::Serial)?.run(),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidParams(format!("cannot start {n} workers: {e}")))?;
            pool.install(|| run_simulation(params))
        }
    }
}
