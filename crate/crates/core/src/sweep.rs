//! Parameter sweeps over one knob of [`CycleParams`], with CSV/JSON output
//! and a generated gnuplot script.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::cycle::{analyze, CostModel, CycleParams, CycleReport};
use crate::error::{invalid, Error, Result};
use crate::format::{opt, sig};
use crate::media::WorkingMedium;

/// Grid resolution used when none is given.
pub const DEFAULT_STEPS: usize = 181;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Knob {
    /// λ1 / λ2 with λ2 held fixed.
    Kappa,
    J,
    Lambda1,
    Lambda2,
    THot,
    TCold,
}

impl Knob {
    /// Report column that the knob sets.
    pub fn column(&self) -> &'static str {
        match self {
            Knob::Kappa => "kappa",
            Knob::J => "j",
            Knob::Lambda1 => "lambda1",
            Knob::Lambda2 => "lambda2",
            Knob::THot => "t_hot",
            Knob::TCold => "t_cold",
        }
    }

    /// Axis label for plots.
    pub fn label(&self) -> &'static str {
        match self {
            Knob::Kappa => "kappa = lambda_1 / lambda_2",
            Knob::J => "J",
            Knob::Lambda1 => "lambda_1",
            Knob::Lambda2 => "lambda_2",
            Knob::THot => "T_h",
            Knob::TCold => "T_c",
        }
    }

    pub fn apply(&self, base: &CycleParams, value: f64) -> CycleParams {
        let mut p = base.clone();
        match self {
            Knob::Kappa => p.lambda1 = value * base.lambda2,
            Knob::J => p.j = value,
            Knob::Lambda1 => p.lambda1 = value,
            Knob::Lambda2 => p.lambda2 = value,
            Knob::THot => p.t_hot = value,
            Knob::TCold => p.t_cold = value,
        }
        p
    }
}

impl fmt::Display for Knob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Knob::Kappa => "kappa",
            Knob::J => "j",
            Knob::Lambda1 => "lambda1",
            Knob::Lambda2 => "lambda2",
            Knob::THot => "th",
            Knob::TCold => "tc",
        })
    }
}

impl FromStr for Knob {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "kappa" => Knob::Kappa,
            "j" => Knob::J,
            "lambda1" => Knob::Lambda1,
            "lambda2" => Knob::Lambda2,
            "th" | "t_hot" => Knob::THot,
            "tc" | "t_cold" => Knob::TCold,
            other => {
                return Err(invalid(format!(
                    "unknown knob '{other}', expected kappa, j, lambda1, lambda2, th or tc"
                )))
            }
        })
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub knob: Knob,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    /// Fixed parameters; the swept field is overwritten per grid point.
    pub base: CycleParams,
}

impl SweepSpec {
    /// Single spin, κ on [1.05, 8], λ2 = 2, T_h = 3, T_c = 2, heat-pump cost.
    ///
    /// The hot isotherm only absorbs heat when it lowers the level splitting,
    /// so the single spin runs as an engine for λ1 > λ2, i.e. κ > 1.
    pub fn kappa_figure() -> Self {
        Self {
            knob: Knob::Kappa,
            start: 1.05,
            stop: 8.0,
            steps: DEFAULT_STEPS,
            base: CycleParams::new(WorkingMedium::SingleSpin, 2.0, 2.0, 3.0, 2.0)
                .with_cost(CostModel::MinCarnot),
        }
    }

    /// Coupled spins, J on [0.05, 4.5], λ1 = 2, λ2 = 1, T_h = 3, T_c = 2.
    pub fn coupling_figure() -> Self {
        Self {
            knob: Knob::J,
            start: 0.05,
            stop: 4.5,
            steps: DEFAULT_STEPS,
            base: CycleParams::new(WorkingMedium::CoupledSpins, 2.0, 1.0, 3.0, 2.0)
                .with_cost(CostModel::MinCarnot),
        }
    }

    pub fn with_range(mut self, start: f64, stop: f64, steps: usize) -> Self {
        self.start = start;
        self.stop = stop;
        self.steps = steps;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(invalid(format!("steps must be >= 2, got {}", self.steps)));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(invalid("sweep bounds must be finite"));
        }
        if self.start == self.stop {
            return Err(invalid(format!("start and stop must differ, both are {}", self.start)));
        }
        if self.knob == Knob::Kappa && !(self.base.lambda2.is_finite() && self.base.lambda2 != 0.0) {
            return Err(invalid("kappa sweep needs a fixed, nonzero lambda2"));
        }
        if self.knob == Knob::J && !self.base.medium.uses_coupling() {
            return Err(invalid("j sweep needs a medium with a coupling"));
        }
        // Endpoints bound the grid for every knob, so checking them is enough.
        for v in [self.start, self.stop] {
            self.knob.apply(&self.base, v).validate()?;
        }
        Ok(())
    }

    /// Closed, linearly spaced grid; the last point is exactly `stop`.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.steps;
        let h = (self.stop - self.start) / (n - 1) as f64;
        (0..n)
            .map(|i| if i + 1 == n { self.stop } else { self.start + h * i as f64 })
            .collect()
    }

    pub fn run(&self) -> Result<Vec<SweepRow>> {
        self.validate()?;
        self.grid()
            .into_par_iter()
            .map(|value| {
                let report = analyze(&self.knob.apply(&self.base, value))?;
                Ok(SweepRow { value, report })
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub value: f64,
    pub report: CycleReport,
}

/// Columns after the knob column, in output order.
pub const REPORT_COLUMNS: [&str; 29] = [
    "lambda1",
    "kappa",
    "lambda2",
    "j",
    "t_hot",
    "t_cold",
    "q1",
    "q2",
    "q3",
    "q4",
    "work",
    "delta_q",
    "q_h",
    "q_c",
    "w_cost_min",
    "w_cost_applied",
    "w_cost_sufficient",
    "w_cost_required",
    "sigma",
    "carnot_deficit",
    "eta_regen_free",
    "eta_regen_cost",
    "eta_conventional",
    "eta_regen_required",
    "eta_carnot",
    "mode",
    "flags",
    "medium",
    "cost_model",
];

/// Name of the first column, holding the swept value.
pub const VALUE_COLUMN: &str = "value";

pub fn header() -> Vec<String> {
    std::iter::once(VALUE_COLUMN)
        .chain(REPORT_COLUMNS)
        .map(str::to_string)
        .collect()
}

impl SweepRow {
    pub fn cells(&self) -> Vec<String> {
        let r = &self.report;
        let flags: Vec<&str> = r.flags.iter().map(|f| f.as_str()).collect();
        vec![
            sig(self.value),
            sig(r.lambda1),
            sig(r.lambda1 / r.lambda2),
            sig(r.lambda2),
            sig(r.j),
            sig(r.t_hot),
            sig(r.t_cold),
            sig(r.q1),
            sig(r.q2),
            sig(r.q3),
            sig(r.q4),
            sig(r.work),
            sig(r.delta_q),
            sig(r.q_h),
            sig(r.q_c),
            sig(r.w_cost_min),
            sig(r.w_cost_applied),
            sig(r.w_cost_sufficient),
            sig(r.w_cost_required),
            sig(r.sigma),
            opt(r.carnot_deficit),
            opt(r.eta_regen_free),
            opt(r.eta_regen_cost),
            opt(r.eta_conventional),
            opt(r.eta_regen_required),
            sig(r.eta_carnot),
            r.mode.to_string(),
            flags.join(";"),
            r.medium.to_string(),
            r.cost_model.to_string(),
        ]
    }
}

pub fn write_csv<W: Write>(out: W, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header())?;
    for row in rows {
        w.write_record(row.cells())?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct JsonSweep<'a> {
    knob: Knob,
    rows: &'a [SweepRow],
}

pub fn write_json<W: Write>(mut out: W, knob: Knob, rows: &[SweepRow]) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, &JsonSweep { knob, rows })
        .map_err(|e| Error::Io(e.into()))?;
    writeln!(out)?;
    Ok(())
}

/// Curves drawn by [`plot_script`]: column, title, colour, dash type.
pub const PLOT_CURVES: [(&str, &str, &str, u8); 4] = [
    ("eta_regen_free", "regenerative, cost-free", "black", 1),
    ("eta_regen_cost", "regenerative, with W_cost", "red", 2),
    ("eta_conventional", "conventional", "blue", 4),
    ("eta_carnot", "Carnot", "dark-green", 3),
];

/// Gnuplot script rendering the efficiency curves from `csv_path`.
/// Empty cells (undefined efficiencies) show up as gaps.
pub fn plot_script(csv_path: &str, png_path: &str, knob: Knob) -> String {
    let x = VALUE_COLUMN;
    let mut s = String::new();
    s.push_str("# Efficiency curves of a Stirling cycle sweep.\n");
    s.push_str("set datafile separator ','\n");
    s.push_str("set terminal pngcairo size 900,600\n");
    s.push_str(&format!("set output '{png_path}'\n"));
    s.push_str(&format!("set xlabel '{}'\n", knob.label()));
    s.push_str("set ylabel 'efficiency'\n");
    s.push_str("set key best\n");
    s.push_str("set grid\n");
    let lines: Vec<String> = PLOT_CURVES
        .iter()
        .enumerate()
        .map(|(i, (col, title, colour, dt))| {
            let file = if i == 0 { format!("'{csv_path}'") } else { "''".to_string() };
            format!(
                "{file} using '{x}':'{col}' with lines lw 2 lc rgb '{colour}' dt {dt} title '{title}'"
            )
        })
        .collect();
    s.push_str("plot ");
    s.push_str(&lines.join(", \\\n     "));
    s.push('\n');
    s
}
