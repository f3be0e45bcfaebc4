//! Property suites over randomized and gridded inputs.
//!
//! Each property is evaluated at many points and tallied with its worst
//! residual. Equalities report `|lhs - rhs|`; inequalities `lhs <= rhs`
//! report the signed slack `lhs - rhs`, so negative is comfortably inside.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cycle::{
    self, analyze, carnot_deficit_conventional, CostModel, CycleParams, CyclePoints, Mode,
};
use crate::error::Result;
use crate::media::{MediumParams, Spectrum, WorkingMedium};
use crate::sweep::SweepSpec;
use crate::thermal::{self, ThermalState};

/// Absolute tolerance for closed form vs. direct-summation identities.
pub const IDENTITY_TOL: f64 = 1e-10;
/// Slack allowed on non-negativity of relative entropies and Σ.
pub const NONNEG_TOL: f64 = 1e-12;
/// Slack on the first-law split, which is exact up to reassociation.
pub const FIRST_LAW_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Randomized draws per thermal property and randomized cycles.
    pub trials: usize,
    /// Points per figure grid.
    pub grid_steps: usize,
    /// Flips the sign of Σ in the Carnot-deficit check. Harness self-test.
    pub inject_fault: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0x5717_11c6,
            trials: 2000,
            grid_steps: 181,
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub checked: usize,
    pub failed: usize,
    pub worst: f64,
    pub first_failure: Option<String>,
}

impl PropertyResult {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checked: 0,
            failed: 0,
            worst: f64::NEG_INFINITY,
            first_failure: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for PropertyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {:<34} checked={:<6} failed={:<5} worst={:+.3e}",
            self.name, self.checked, self.failed, self.worst
        )?;
        if let Some(ctx) = &self.first_failure {
            write!(f, "\n     first failure: {ctx}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifySummary {
    pub properties: Vec<PropertyResult>,
}

impl VerifySummary {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(PropertyResult::passed)
    }

    pub fn get(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }

    pub fn failing(&self) -> impl Iterator<Item = &PropertyResult> {
        self.properties.iter().filter(|p| !p.passed())
    }

    fn slot(&mut self, name: &'static str) -> &mut PropertyResult {
        let i = match self.properties.iter().position(|p| p.name == name) {
            Some(i) => i,
            None => {
                self.properties.push(PropertyResult::new(name));
                self.properties.len() - 1
            }
        };
        &mut self.properties[i]
    }

    /// `|residual| <= tol`.
    fn equal(&mut self, name: &'static str, residual: f64, tol: f64, ctx: impl FnOnce() -> String) {
        let r = residual.abs();
        self.record(name, r, r.is_nan() || r > tol, ctx);
    }

    /// `slack <= tol`, where slack is `lhs - rhs` of `lhs <= rhs`.
    fn at_most(&mut self, name: &'static str, slack: f64, tol: f64, ctx: impl FnOnce() -> String) {
        self.record(name, slack, slack.is_nan() || slack > tol, ctx);
    }

    fn record(&mut self, name: &'static str, value: f64, failed: bool, ctx: impl FnOnce() -> String) {
        let p = self.slot(name);
        p.checked += 1;
        if value > p.worst || value.is_nan() {
            p.worst = value;
        }
        if failed {
            p.failed += 1;
            if p.first_failure.is_none() {
                p.first_failure = Some(ctx());
            }
        }
    }
}

impl fmt::Display for VerifySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.properties {
            writeln!(f, "{p}")?;
        }
        let failed = self.failing().count();
        write!(
            f,
            "{} of {} properties passed",
            self.properties.len() - failed,
            self.properties.len()
        )
    }
}

fn random_spectrum(rng: &mut ChaCha8Rng) -> Spectrum {
    let n = rng.gen_range(1..=6);
    let e = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
    Spectrum::new(e).expect("finite energies")
}

fn random_beta(rng: &mut ChaCha8Rng) -> f64 {
    10f64.powf(rng.gen_range(-2.0..1.0))
}

fn random_cycle(rng: &mut ChaCha8Rng) -> CycleParams {
    let medium = if rng.gen_bool(0.5) {
        WorkingMedium::SingleSpin
    } else {
        WorkingMedium::CoupledSpins
    };
    let t_cold = rng.gen_range(0.2..5.0);
    let t_hot = t_cold * rng.gen_range(1.05..4.0);
    CycleParams::new(
        medium,
        rng.gen_range(0.1..8.0),
        rng.gen_range(0.1..8.0),
        t_hot,
        t_cold,
    )
    .with_j(rng.gen_range(0.0..5.0))
    .with_cost(CostModel::MinCarnot)
}

fn thermal_properties(cfg: &VerifyConfig, rng: &mut ChaCha8Rng, out: &mut VerifySummary) -> Result<()> {
    for _ in 0..cfg.trials {
        let spec = random_spectrum(rng);
        let (bi, bf) = (random_beta(rng), random_beta(rng));
        let ctx = || format!("spectrum={:?} beta_i={bi} beta_f={bf}", spec.energies());

        let pi = thermal::populations(&spec, bi)?;
        let pf = thermal::populations(&spec, bf)?;
        let closed = thermal::relative_entropy_gibbs(&spec, bi, bf)?;
        let direct = thermal::relative_entropy_direct(&pi, &pf)?;
        out.equal("relative_entropy_dual_path", closed - direct, IDENTITY_TOL, ctx);
        out.at_most("relative_entropy_nonnegative", -closed, NONNEG_TOL, ctx);

        let st = ThermalState::new(spec.clone(), bi)?;
        out.equal(
            "entropy_dual_path",
            st.s() - thermal::von_neumann_entropy(st.populations()),
            IDENTITY_TOL,
            ctx,
        );
        out.equal(
            "free_energy_identity",
            st.f() - (st.u() - st.s() / st.beta()),
            IDENTITY_TOL,
            ctx,
        );
        out.equal(
            "populations_normalized",
            st.populations().iter().sum::<f64>() - 1.0,
            1e-12,
            ctx,
        );
        let max_s = (spec.len() as f64).ln();
        out.at_most("entropy_bounds", (-st.s()).max(st.s() - max_s), IDENTITY_TOL, ctx);
    }

    let two = Spectrum::new(vec![-1.0, 1.0])?;
    let mut prev = f64::INFINITY;
    for i in 1..=cfg.grid_steps {
        let beta = 0.02 * i as f64;
        let s = thermal::entropy(&two, beta)?;
        out.at_most("entropy_monotone_in_temperature", s - prev, 0.0, || {
            format!("beta={beta} S={s} previous={prev}")
        });
        prev = s;
    }

    for i in 0..20 {
        let lambda = 0.25 + 0.25 * i as f64;
        let beta = 0.1 + 0.15 * i as f64;
        let pair = WorkingMedium::CoupledSpins.spectrum(&MediumParams::new(lambda, 0.0))?;
        let one = WorkingMedium::SingleSpin.spectrum(&MediumParams::new(lambda, 0.0))?;
        let (p, s) = (ThermalState::new(pair, beta)?, ThermalState::new(one, beta)?);
        let ctx = || format!("lambda={lambda} beta={beta}");
        out.equal("factorization_at_zero_coupling", p.u() - 2.0 * s.u(), 1e-12, ctx);
        out.equal("factorization_at_zero_coupling", p.s() - 2.0 * s.s(), 1e-12, ctx);
    }
    Ok(())
}

fn check_cycle(
    cfg: &VerifyConfig,
    params: &CycleParams,
    min_carnot_grid: bool,
    out: &mut VerifySummary,
) -> Result<()> {
    let ctx = || {
        format!(
            "medium={} lambda1={} lambda2={} j={} t_hot={} t_cold={}",
            params.medium.name(),
            params.lambda1,
            params.lambda2,
            params.j,
            params.t_hot,
            params.t_cold
        )
    };
    let r = analyze(params)?;
    let points = cycle::build_points(params)?;
    let h = cycle::heats(&points);

    out.equal("first_law_split", r.q_h + r.q_c - r.work, FIRST_LAW_TOL, ctx);
    let (w1, w3) = cycle::stroke_works(&points, &h);
    out.equal("isotherm_work_sum", w1 + w3 - r.work, IDENTITY_TOL, ctx);
    out.at_most("entropy_production_nonnegative", -r.sigma, NONNEG_TOL, ctx);

    if r.mode == Mode::Engine {
        if let Some(eta) = r.eta_conventional {
            let sigma = if cfg.inject_fault { -r.sigma } else { r.sigma };
            let deficit = carnot_deficit_conventional(&h, sigma, points.beta_cold())
                .expect("engine mode has positive Q1 + Q4");
            out.equal(
                "carnot_deficit_identity",
                (r.eta_carnot - eta) - deficit,
                IDENTITY_TOL,
                ctx,
            );
            out.at_most(
                "conventional_below_carnot",
                eta - (r.eta_carnot - deficit),
                IDENTITY_TOL,
                ctx,
            );
        }
        if let (Some(free), Some(cost)) = (r.eta_regen_free, r.eta_regen_cost) {
            out.at_most("cost_lowers_efficiency", cost - free, 0.0, ctx);
        }
        if let Some(eta) = r.eta_regen_required {
            out.at_most("required_cost_restores_carnot", eta - r.eta_carnot, IDENTITY_TOL, ctx);
        }
        if min_carnot_grid {
            if let Some(eta) = r.eta_regen_cost {
                out.at_most("min_carnot_cost_below_carnot", eta - r.eta_carnot, 0.0, ctx);
            }
        }
    }
    Ok(())
}

fn cycle_properties(cfg: &VerifyConfig, rng: &mut ChaCha8Rng, out: &mut VerifySummary) -> Result<()> {
    for mut spec in [SweepSpec::kappa_figure(), SweepSpec::coupling_figure()] {
        spec.steps = cfg.grid_steps.max(2);
        for v in spec.grid() {
            check_cycle(cfg, &spec.knob.apply(&spec.base, v), true, out)?;
        }
    }
    for _ in 0..cfg.trials {
        check_cycle(cfg, &random_cycle(rng), false, out)?;
    }

    for _ in 0..cfg.trials.min(200) {
        let mut p = random_cycle(rng);
        p.lambda2 = p.lambda1;
        let r = analyze(&p)?;
        let clean = r.work == 0.0
            && r.mode == Mode::Degenerate
            && r.eta_regen_free.is_none()
            && r.eta_regen_cost.is_none()
            && r.eta_conventional.is_none()
            && [r.q1, r.q2, r.q3, r.q4, r.sigma, r.w_cost_required].iter().all(|x| x.is_finite());
        out.at_most("degenerate_cycle_safety", if clean { 0.0 } else { 1.0 }, 0.0, || {
            format!("lambda={} t_hot={} t_cold={}: {r:?}", p.lambda1, p.t_hot, p.t_cold)
        });
    }

    // Σ vanishes only at equal temperatures.
    for _ in 0..cfg.trials.min(200) {
        let p = random_cycle(rng);
        let beta = p.beta_hot();
        let pts = CyclePoints::from_parts(&p.medium, p.lambda1, p.lambda2, p.j, beta, beta)?;
        let sigma = cycle::entropy_production(&pts)?;
        out.equal("entropy_production_zero_at_equal_temperatures", sigma, NONNEG_TOL, || {
            format!("beta={beta} lambda1={} lambda2={}", p.lambda1, p.lambda2)
        });
    }
    Ok(())
}

pub fn run(cfg: &VerifyConfig) -> Result<VerifySummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = VerifySummary::default();
    thermal_properties(cfg, &mut rng, &mut out)?;
    cycle_properties(cfg, &mut rng, &mut out)?;
    Ok(out)
}
