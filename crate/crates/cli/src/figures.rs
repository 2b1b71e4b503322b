//! Parameter sets and data bundles for the five overlay figures.

use std::path::Path;

use anyhow::{bail, Result};
use qfront_core::asymptotics::regime_select;
use qfront_core::lattice::{run_simulation_threads, LoadSpec, Node, ProbeSeries, SimParams};
use qfront_core::{AsymptoticModel, Quantity};

use crate::csvout::{curve_csv, fmt_e};

pub const FIGURE_IDS: [&str; 5] = ["fig2", "fig3", "fig4", "fig5", "fig6"];
pub const FIGURE_PROBE: Node = Node { n: 25, m: 25 };

#[derive(Debug, Clone)]
pub struct Panel {
    /// Panel letter, `a`, `b`, ...
    pub label: char,
    pub quantity: Quantity,
    /// Models the figure itself overlays on this panel.
    pub stated: Vec<AsymptoticModel>,
}

#[derive(Debug, Clone)]
pub struct Figure {
    pub id: &'static str,
    pub lambda: f64,
    pub load: LoadSpec,
    pub t_end: f64,
    pub panels: Vec<Panel>,
}

fn panels(models: [(Quantity, Vec<AsymptoticModel>); 3]) -> Vec<Panel> {
    models
        .into_iter()
        .zip('a'..)
        .map(|((quantity, stated), label)| Panel { label, quantity, stated })
        .collect()
}

pub fn figure(id: &str) -> Result<Figure> {
    use AsymptoticModel::*;
    use Quantity::*;
    let fig = match id {
        "fig2" => Figure {
            id: "fig2",
            lambda: 0.0,
            load: LoadSpec::Step,
            t_end: 40.0,
            panels: panels([
                (Displacement, vec![StepElasticBessel]),
                (Velocity, vec![StepElasticBessel]),
                (Acceleration, vec![StepElasticBessel]),
            ]),
        },
        "fig3" => {
            let v = StepViscous { lambda: 0.1 };
            Figure {
                id: "fig3",
                lambda: 0.1,
                load: LoadSpec::Step,
                t_end: 40.0,
                panels: panels([(Displacement, vec![StepElasticBessel]), (Velocity, vec![v]), (Acceleration, vec![v])]),
            }
        }
        "fig4" => {
            let both = vec![StepElasticBessel, StepViscous { lambda: 0.02 }];
            Figure {
                id: "fig4",
                lambda: 0.02,
                load: LoadSpec::Step,
                t_end: 40.0,
                panels: vec![
                    Panel { label: 'a', quantity: Velocity, stated: both.clone() },
                    Panel { label: 'b', quantity: Acceleration, stated: both },
                ],
            }
        }
        "fig5" => {
            let s = GaussShortBessel { sigma: 0.1 };
            Figure {
                id: "fig5",
                lambda: 0.0,
                load: LoadSpec::Gauss { sigma: 0.1 },
                t_end: 40.0,
                panels: panels([(Displacement, vec![s]), (Velocity, vec![s]), (Acceleration, vec![s])]),
            }
        }
        "fig6" => {
            let l = GaussLowFreq { sigma: 5.0, lambda: 0.1 };
            Figure {
                id: "fig6",
                lambda: 0.1,
                load: LoadSpec::Gauss { sigma: 5.0 },
                t_end: 70.0,
                panels: panels([(Displacement, vec![l]), (Velocity, vec![l]), (Acceleration, vec![l])]),
            }
        }
        other => bail!("unknown figure {other:?} (expected one of {})", FIGURE_IDS.join(", ")),
    };
    Ok(fig)
}

impl Figure {
    pub fn params(&self) -> SimParams {
        SimParams::new(self.lambda, self.load, self.t_end, vec![FIGURE_PROBE])
    }

    pub fn panel(&self, label: char) -> Option<&Panel> {
        self.panels.iter().find(|p| p.label == label)
    }

    /// The model recommended for a panel: the regime selection where it has
    /// one, otherwise the first model the figure overlays.
    pub fn recommended(&self, panel: &Panel) -> AsymptoticModel {
        regime_select(&self.load, self.lambda, panel.quantity).unwrap_or(panel.stated[0])
    }

    /// Stated models plus the recommended one if the figure does not show it.
    pub fn overlays(&self, panel: &Panel) -> Vec<AsymptoticModel> {
        let mut models = panel.stated.clone();
        let rec = self.recommended(panel);
        if !models.contains(&rec) {
            models.push(rec);
        }
        models
    }

    pub fn arrival_time(&self) -> f64 {
        FIGURE_PROBE.radius() / qfront_core::LONG_WAVE_SPEED + self.load.launch_delay()
    }

    pub fn simulate(&self, threads: Option<usize>) -> Result<ProbeSeries> {
        let mut out = run_simulation_threads(&self.params(), threads)?;
        Ok(out.remove(0))
    }

    /// Writes every panel's CSVs into `dir` and returns their names.
    pub fn write_panels(&self, dir: &Path, series: &ProbeSeries) -> Result<Vec<String>> {
        let r = series.node.radius();
        let mut files = Vec::new();
        let mut put = |name: String, text: String| -> Result<()> {
            std::fs::write(dir.join(&name), text)?;
            files.push(name);
            Ok(())
        };
        for panel in &self.panels {
            let stem = format!("{}{}_{}", self.id, panel.label, panel.quantity.short_name());
            let (times, values) = series.samples(panel.quantity);
            put(format!("{stem}_fd.csv"), curve_csv("t,value", times, values))?;
            for model in self.overlays(panel) {
                // Points where the formula is undefined (t = 0 for the step
                // families) are left out.
                let (t, v): (Vec<f64>, Vec<f64>) = times
                    .iter()
                    .filter_map(|&t| model.eval(panel.quantity, r, t).ok().map(|v| (t, v)))
                    .unzip();
                put(format!("{stem}_{}.csv", model.name()), curve_csv("t,value", &t, &v))?;
            }
            put(format!("{stem}_arrival.csv"), format!("t_arrival\n{}\n", fmt_e(self.arrival_time())))?;
        }
        Ok(files)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn panel_counts_and_overlays() {
        assert_eq!(figure("fig2").unwrap().panels.len(), 3);
        let f4 = figure("fig4").unwrap();
        assert_eq!(f4.panels.len(), 2);
        for p in &f4.panels {
            assert_eq!(f4.overlays(p).len(), 2);
        }
        let f6 = figure("fig6").unwrap();
        assert_eq!(f6.params().t_end, 70.0);
        assert!((f6.arrival_time() - 48.868).abs() < 1e-3);
        assert!(figure("fig7").is_err());
    }
}
