//! The four-stroke Stirling cycle between two baths.
//!
//! Endpoints are A = (λ1, T_h), B = (λ2, T_h), C = (λ2, T_c), D = (λ1, T_c).
//! A→B and C→D are quasistatic isotherms, B→C and D→A are isochores.
//! Heat flowing into the working medium is positive; the net work output
//! is `W = Q1 + Q2 + Q3 + Q4`.
//!
//! In the regenerative cycle the isochores exchange heat with a regenerator
//! instead of the baths. Any imbalance `ΔQ = Q2 + Q4` is settled with the
//! hot bath (ΔQ > 0) or dumped into the cold bath (ΔQ < 0).

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::media::{MediumParams, WorkingMedium};
use crate::thermal::ThermalState;

/// |W| below this is treated as a degenerate (no-work) cycle.
pub const DEGENERATE_WORK: f64 = 1e-14;

/// How the work spent on regeneration is charged.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum CostModel {
    None,
    /// Reversible heat pump lifting |Q2| from T_c to T_h.
    #[default]
    MinCarnot,
    Fixed(f64),
}

impl CostModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            CostModel::Fixed(v) if !(v.is_finite() && v >= 0.0) => Err(invalid(format!(
                "fixed regeneration cost must be finite and >= 0, got {v}"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for CostModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CostModel::None => f.write_str("none"),
            CostModel::MinCarnot => f.write_str("min-carnot"),
            CostModel::Fixed(v) => write!(f, "fixed:{v}"),
        }
    }
}

impl FromStr for CostModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let model = match s {
            "none" => CostModel::None,
            "min-carnot" => CostModel::MinCarnot,
            other => {
                let v = other
                    .strip_prefix("fixed:")
                    .ok_or_else(|| {
                        invalid(format!(
                            "unknown cost model '{other}', expected none, min-carnot or fixed:<v>"
                        ))
                    })?
                    .parse::<f64>()
                    .map_err(|e| invalid(format!("bad fixed cost in '{other}': {e}")))?;
                CostModel::Fixed(v)
            }
        };
        model.validate()?;
        Ok(model)
    }
}

impl Serialize for CostModel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone)]
pub struct CycleParams {
    pub medium: WorkingMedium,
    pub lambda1: f64,
    pub lambda2: f64,
    /// Coupling, used by media that have one.
    pub j: f64,
    pub t_hot: f64,
    pub t_cold: f64,
    pub cost_model: CostModel,
}

impl CycleParams {
    pub fn new(medium: WorkingMedium, lambda1: f64, lambda2: f64, t_hot: f64, t_cold: f64) -> Self {
        Self {
            medium,
            lambda1,
            lambda2,
            j: 0.0,
            t_hot,
            t_cold,
            cost_model: CostModel::default(),
        }
    }

    pub fn with_j(mut self, j: f64) -> Self {
        self.j = j;
        self
    }

    pub fn with_cost(mut self, cost_model: CostModel) -> Self {
        self.cost_model = cost_model;
        self
    }

    /// Ratio λ1/λ2.
    pub fn kappa(&self) -> f64 {
        self.lambda1 / self.lambda2
    }

    pub fn beta_hot(&self) -> f64 {
        self.t_hot.recip()
    }

    pub fn beta_cold(&self) -> f64 {
        self.t_cold.recip()
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("lambda1", self.lambda1),
            ("lambda2", self.lambda2),
            ("j", self.j),
            ("t_hot", self.t_hot),
            ("t_cold", self.t_cold),
        ] {
            if !v.is_finite() {
                return Err(invalid(format!("{name} must be finite, got {v}")));
            }
        }
        if self.t_cold <= 0.0 {
            return Err(invalid(format!("t_cold must be > 0, got {}", self.t_cold)));
        }
        if self.t_cold >= self.t_hot {
            return Err(invalid(format!(
                "t_cold < t_hot required, got t_cold = {} and t_hot = {}",
                self.t_cold, self.t_hot
            )));
        }
        self.cost_model.validate()
    }
}

/// The four endpoint Gibbs states.
#[derive(Debug, Clone)]
pub struct CyclePoints {
    pub a: ThermalState,
    pub b: ThermalState,
    pub c: ThermalState,
    pub d: ThermalState,
}

impl CyclePoints {
    /// Builds the endpoints without ordering the temperatures. Only
    /// positivity of the inverse temperatures is enforced.
    pub fn from_parts(
        medium: &WorkingMedium,
        lambda1: f64,
        lambda2: f64,
        j: f64,
        beta_hot: f64,
        beta_cold: f64,
    ) -> Result<Self> {
        let s1 = medium.spectrum(&MediumParams::new(lambda1, j))?;
        let s2 = medium.spectrum(&MediumParams::new(lambda2, j))?;
        Ok(Self {
            a: ThermalState::new(s1.clone(), beta_hot)?,
            b: ThermalState::new(s2.clone(), beta_hot)?,
            c: ThermalState::new(s2, beta_cold)?,
            d: ThermalState::new(s1, beta_cold)?,
        })
    }

    pub fn beta_hot(&self) -> f64 {
        self.a.beta()
    }

    pub fn beta_cold(&self) -> f64 {
        self.c.beta()
    }
}

pub fn build_points(params: &CycleParams) -> Result<CyclePoints> {
    params.validate()?;
    CyclePoints::from_parts(
        &params.medium,
        params.lambda1,
        params.lambda2,
        params.j,
        params.beta_hot(),
        params.beta_cold(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Heats {
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
    pub q4: f64,
}

impl Heats {
    pub fn work(&self) -> f64 {
        self.q1 + self.q2 + self.q3 + self.q4
    }

    /// Heat drawn from the baths by the conventional (non-regenerative) cycle.
    pub fn conventional_input(&self) -> f64 {
        self.q1 + self.q4
    }
}

pub fn heats(points: &CyclePoints) -> Heats {
    let CyclePoints { a, b, c, d } = points;
    Heats {
        q1: a.temperature() * (b.s() - a.s()),
        q2: energy_change(b, c),
        q3: c.temperature() * (d.s() - c.s()),
        q4: energy_change(d, a),
    }
}

/// `U_to - U_from`, differencing excitations before ground energies.
fn energy_change(from: &ThermalState, to: &ThermalState) -> f64 {
    (to.excitation() - from.excitation()) + (to.spectrum().ground() - from.spectrum().ground())
}

/// Work done by the medium on the two isotherms, `Q - ΔU` per stroke.
pub fn stroke_works(points: &CyclePoints, heats: &Heats) -> (f64, f64) {
    let CyclePoints { a, b, c, d } = points;
    (heats.q1 - energy_change(a, b), heats.q3 - energy_change(c, d))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regeneration {
    pub delta_q: f64,
    pub q_h: f64,
    pub q_c: f64,
}

pub fn regen_bookkeeping(heats: &Heats) -> Regeneration {
    let delta_q = heats.q2 + heats.q4;
    Regeneration {
        delta_q,
        q_h: heats.q1 + delta_q.max(0.0),
        q_c: heats.q3 + delta_q.min(0.0),
    }
}

/// Minimum work for a reversible heat pump to lift |q2| from `t_cold` to `t_hot`.
pub fn carnot_heat_pump_cost(q2: f64, t_hot: f64, t_cold: f64) -> f64 {
    q2.abs() * (t_hot - t_cold) / t_cold
}

pub fn regeneration_cost(q2: f64, t_hot: f64, t_cold: f64, model: CostModel) -> Result<f64> {
    if !(t_cold > 0.0 && t_hot > t_cold) {
        return Err(invalid(format!(
            "regeneration cost needs t_hot > t_cold > 0, got t_hot = {t_hot}, t_cold = {t_cold}"
        )));
    }
    model.validate()?;
    Ok(match model {
        CostModel::None => 0.0,
        CostModel::MinCarnot => carnot_heat_pump_cost(q2, t_hot, t_cold),
        CostModel::Fixed(v) => v,
    })
}

pub fn carnot_efficiency(t_hot: f64, t_cold: f64) -> f64 {
    1.0 - t_cold / t_hot
}

/// `work / input`, defined only for positive work and positive input.
pub fn efficiency(work: f64, input: f64) -> Option<f64> {
    (work > 0.0 && input > 0.0).then(|| work / input)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Efficiencies {
    /// `W / Q_h`, regenerator treated as free.
    pub regen_free: Option<f64>,
    /// `W / (Q_h + W_cost)`.
    pub regen_cost: Option<f64>,
    /// `W / (Q1 + Q4)`, no regenerator.
    pub conventional: Option<f64>,
    pub carnot: f64,
}

pub fn efficiencies(
    heats: &Heats,
    regen: &Regeneration,
    w_cost_applied: f64,
    t_hot: f64,
    t_cold: f64,
) -> Efficiencies {
    let work = heats.work();
    Efficiencies {
        regen_free: efficiency(work, regen.q_h),
        regen_cost: efficiency(work, regen.q_h + w_cost_applied),
        conventional: efficiency(work, heats.conventional_input()),
        carnot: carnot_efficiency(t_hot, t_cold),
    }
}

/// Σ = S(ρ_B ‖ ρ_C) + S(ρ_D ‖ ρ_A), the entropy produced on the two isochores.
pub fn entropy_production(points: &CyclePoints) -> Result<f64> {
    Ok(points.b.relative_entropy_to(&points.c)? + points.d.relative_entropy_to(&points.a)?)
}

/// `Σ / (β_c (Q1 + Q4))`, which equals `η_C - η_conventional`.
/// `None` when `Q1 + Q4 <= 0`.
pub fn carnot_deficit_conventional(heats: &Heats, sigma: f64, beta_cold: f64) -> Option<f64> {
    let input = heats.conventional_input();
    (input > 0.0).then(|| sigma / (beta_cold * input))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostBounds {
    /// Smallest cost that makes the regenerative Carnot deficit non-negative.
    pub sufficient: f64,
    /// `max(heat-pump minimum, sufficient)`.
    pub required: f64,
}

pub fn cost_bounds(heats: &Heats, q_h: f64, sigma: f64, beta_hot: f64, beta_cold: f64) -> CostBounds {
    let eta_c = 1.0 - beta_hot / beta_cold;
    let sufficient = (heats.conventional_input() - q_h) - sigma / (beta_cold * eta_c);
    // |Q2| (T_h - T_c) / T_c written with inverse temperatures.
    let heat_pump = heats.q2.abs() * (beta_cold / beta_hot - 1.0);
    CostBounds {
        sufficient,
        required: heat_pump.max(sufficient),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Engine,
    NotEngine,
    Degenerate,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Engine => "engine",
            Mode::NotEngine => "not_engine",
            Mode::Degenerate => "degenerate",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFlag {
    /// J < 0 on a coupled medium, outside the antiferromagnetic regime.
    NegativeCoupling,
    /// λ1 == λ2.
    EqualLambdas,
    /// Fixed cost below the reversible heat-pump minimum.
    CostBelowCarnotMinimum,
    /// W > 0 but `Q_h + W_cost <= 0`.
    NonPositiveResourceInput,
}

impl ReportFlag {
    pub fn as_str(&self) -> &'static str {
        match self {
            ReportFlag::NegativeCoupling => "negative_coupling",
            ReportFlag::EqualLambdas => "equal_lambdas",
            ReportFlag::CostBelowCarnotMinimum => "cost_below_carnot_minimum",
            ReportFlag::NonPositiveResourceInput => "non_positive_resource_input",
        }
    }
}

pub fn classify(work: f64, q_h: f64, lambda1: f64, lambda2: f64) -> Mode {
    if lambda1 == lambda2 || work.abs() < DEGENERATE_WORK {
        Mode::Degenerate
    } else if work > 0.0 && q_h > 0.0 {
        Mode::Engine
    } else {
        Mode::NotEngine
    }
}

/// Everything computed for one cycle. Field names are the stable keys of
/// the JSON and CSV outputs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleReport {
    pub medium: &'static str,
    pub lambda1: f64,
    pub lambda2: f64,
    pub j: f64,
    pub t_hot: f64,
    pub t_cold: f64,
    pub cost_model: CostModel,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
    pub q4: f64,
    pub work: f64,
    pub delta_q: f64,
    pub q_h: f64,
    pub q_c: f64,
    pub w_cost_min: f64,
    pub w_cost_applied: f64,
    pub w_cost_sufficient: f64,
    pub w_cost_required: f64,
    pub sigma: f64,
    pub carnot_deficit: Option<f64>,
    pub eta_regen_free: Option<f64>,
    pub eta_regen_cost: Option<f64>,
    pub eta_conventional: Option<f64>,
    /// Modified efficiency with `w_cost_required` charged.
    pub eta_regen_required: Option<f64>,
    pub eta_carnot: f64,
    pub mode: Mode,
    pub flags: Vec<ReportFlag>,
}

impl CycleReport {
    pub fn is_engine(&self) -> bool {
        self.mode == Mode::Engine
    }
}

pub fn analyze(params: &CycleParams) -> Result<CycleReport> {
    let points = build_points(params)?;
    let (t_hot, t_cold) = (params.t_hot, params.t_cold);

    let h = heats(&points);
    let regen = regen_bookkeeping(&h);
    let work = h.work();
    let w_cost_min = carnot_heat_pump_cost(h.q2, t_hot, t_cold);
    let w_cost_applied = regeneration_cost(h.q2, t_hot, t_cold, params.cost_model)?;
    let sigma = entropy_production(&points)?;
    let bounds = cost_bounds(&h, regen.q_h, sigma, points.beta_hot(), points.beta_cold());
    let mode = classify(work, regen.q_h, params.lambda1, params.lambda2);

    let mut eta = efficiencies(&h, &regen, w_cost_applied, t_hot, t_cold);
    let mut eta_regen_required = efficiency(work, regen.q_h + bounds.required);
    if mode == Mode::Degenerate {
        eta.regen_free = None;
        eta.regen_cost = None;
        eta.conventional = None;
        eta_regen_required = None;
    }

    let mut flags = Vec::new();
    if params.medium.uses_coupling() && params.j < 0.0 {
        flags.push(ReportFlag::NegativeCoupling);
    }
    if params.lambda1 == params.lambda2 {
        flags.push(ReportFlag::EqualLambdas);
    }
    if matches!(params.cost_model, CostModel::Fixed(v) if v < w_cost_min) {
        flags.push(ReportFlag::CostBelowCarnotMinimum);
    }
    if work > 0.0 && regen.q_h + w_cost_applied <= 0.0 {
        flags.push(ReportFlag::NonPositiveResourceInput);
    }

    Ok(CycleReport {
        medium: params.medium.name(),
        lambda1: params.lambda1,
        lambda2: params.lambda2,
        j: params.j,
        t_hot,
        t_cold,
        cost_model: params.cost_model,
        q1: h.q1,
        q2: h.q2,
        q3: h.q3,
        q4: h.q4,
        work,
        delta_q: regen.delta_q,
        q_h: regen.q_h,
        q_c: regen.q_c,
        w_cost_min,
        w_cost_applied,
        w_cost_sufficient: bounds.sufficient,
        w_cost_required: bounds.required,
        sigma,
        carnot_deficit: carnot_deficit_conventional(&h, sigma, points.beta_cold()),
        eta_regen_free: eta.regen_free,
        eta_regen_cost: eta.regen_cost,
        eta_conventional: eta.conventional,
        eta_regen_required,
        eta_carnot: eta.carnot,
        mode,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn single(l1: f64, l2: f64) -> CycleParams {
        CycleParams::new(WorkingMedium::SingleSpin, l1, l2, 3.0, 2.0)
    }

    #[test]
    fn points_carry_expected_spectra() {
        let p = build_points(&single(1.0, 2.0)).unwrap();
        assert_eq!(p.a.spectrum().energies(), &[-0.5, 0.5]);
        assert_eq!(p.d.spectrum().energies(), &[-0.5, 0.5]);
        assert_eq!(p.b.spectrum().energies(), &[-1.0, 1.0]);
        assert_eq!(p.c.spectrum().energies(), &[-1.0, 1.0]);
        assert_eq!(p.a.beta(), p.b.beta());
        assert_eq!(p.c.beta(), p.d.beta());

        let coupled = CycleParams::new(WorkingMedium::CoupledSpins, 2.0, 1.0, 3.0, 2.0).with_j(1.0);
        let p = build_points(&coupled).unwrap();
        assert_eq!(p.a.spectrum().energies(), &[-2.0, -1.0, 1.0, 2.0]);
        assert_eq!(p.b.spectrum().energies(), &[-1.0, -1.0, 1.0, 1.0]);
    }

    #[test]
    fn degenerate_lambdas() {
        let p = build_points(&single(2.0, 2.0)).unwrap();
        assert_eq!(p.a.spectrum(), p.b.spectrum());
        let h = heats(&p);
        assert_eq!(h.q1, 0.0);
        assert_eq!(h.q3, 0.0);
        assert_eq!(h.q2, -h.q4);
    }

    #[test]
    fn equal_temperatures_close_isochores() {
        let p = CyclePoints::from_parts(&WorkingMedium::SingleSpin, 1.0, 2.0, 0.0, 0.4, 0.4).unwrap();
        let h = heats(&p);
        assert_eq!(h.q2, -h.q4);
        assert_abs_diff_eq!(h.work(), h.q1 + h.q3, epsilon = 1e-15);
        assert_eq!(entropy_production(&p).unwrap(), 0.0);
    }

    #[test]
    fn bookkeeping_branches() {
        let r = regen_bookkeeping(&Heats { q1: 5.0, q2: -3.0, q3: -2.0, q4: 1.0 });
        assert_eq!((r.delta_q, r.q_h, r.q_c), (-2.0, 5.0, -4.0));

        let r = regen_bookkeeping(&Heats { q1: 5.0, q2: -1.0, q3: -2.0, q4: 1.0 });
        assert_eq!((r.delta_q, r.q_h, r.q_c), (0.0, 5.0, -2.0));

        let r = regen_bookkeeping(&Heats { q1: 5.0, q2: -1.0, q3: -2.0, q4: 1.5 });
        assert_eq!((r.q_h, r.q_c), (5.5, -2.0));
    }

    #[test]
    fn cost_models() {
        assert_eq!(regeneration_cost(-4.0, 3.0, 2.0, CostModel::MinCarnot).unwrap(), 2.0);
        assert_eq!(regeneration_cost(0.0, 3.0, 2.0, CostModel::MinCarnot).unwrap(), 0.0);
        assert_eq!(regeneration_cost(0.0, 3.0, 2.0, CostModel::None).unwrap(), 0.0);
        assert_eq!(regeneration_cost(0.0, 3.0, 2.0, CostModel::Fixed(0.7)).unwrap(), 0.7);
        assert!(regeneration_cost(1.0, 3.0, 2.0, CostModel::Fixed(-0.1)).is_err());
        assert!(regeneration_cost(1.0, 2.0, 3.0, CostModel::None).is_err());
    }

    #[test]
    fn cost_model_parsing() {
        assert_eq!("none".parse::<CostModel>().unwrap(), CostModel::None);
        assert_eq!("min-carnot".parse::<CostModel>().unwrap(), CostModel::MinCarnot);
        assert_eq!("fixed:0.25".parse::<CostModel>().unwrap(), CostModel::Fixed(0.25));
        assert!("fixed:-1".parse::<CostModel>().is_err());
        assert!("fixed:abc".parse::<CostModel>().is_err());
        assert!("carnot".parse::<CostModel>().is_err());
        assert_eq!(CostModel::Fixed(0.25).to_string(), "fixed:0.25");
    }

    #[test]
    fn zero_cost_matches_free_efficiency() {
        let r = analyze(&single(4.0, 2.0).with_cost(CostModel::None)).unwrap();
        assert_eq!(r.eta_regen_cost, r.eta_regen_free);
        assert_abs_diff_eq!(r.eta_carnot, 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn validation_errors() {
        assert!(analyze(&CycleParams::new(WorkingMedium::SingleSpin, 1.0, 2.0, 2.0, 3.0)).is_err());
        assert!(analyze(&CycleParams::new(WorkingMedium::SingleSpin, 1.0, 2.0, 2.0, 2.0)).is_err());
        assert!(analyze(&CycleParams::new(WorkingMedium::SingleSpin, 1.0, 2.0, 3.0, 0.0)).is_err());
        assert!(analyze(&CycleParams::new(WorkingMedium::SingleSpin, f64::NAN, 2.0, 3.0, 2.0)).is_err());
        let msg = analyze(&CycleParams::new(WorkingMedium::SingleSpin, 1.0, 2.0, 2.0, 3.0))
            .unwrap_err()
            .to_string();
        assert!(msg.contains("t_cold < t_hot"), "{msg}");
    }

    #[test]
    fn degenerate_report_is_clean() {
        let r = analyze(&single(2.0, 2.0)).unwrap();
        assert_eq!(r.mode, Mode::Degenerate);
        assert_eq!(r.work, 0.0);
        assert!(r.eta_regen_free.is_none());
        assert!(r.eta_regen_cost.is_none());
        assert!(r.eta_conventional.is_none());
        assert!(r.eta_regen_required.is_none());
        assert!(r.flags.contains(&ReportFlag::EqualLambdas));
        let json = serde_json::to_value(&r).unwrap();
        for (k, v) in json.as_object().unwrap() {
            if let Some(x) = v.as_f64() {
                assert!(x.is_finite(), "{k} = {x}");
            }
        }
    }

    #[test]
    fn fixed_cost_below_minimum_is_flagged() {
        let r = analyze(&single(4.0, 2.0).with_cost(CostModel::Fixed(0.0))).unwrap();
        assert!(r.flags.contains(&ReportFlag::CostBelowCarnotMinimum));
        let r = analyze(&single(4.0, 2.0).with_cost(CostModel::Fixed(10.0))).unwrap();
        assert!(r.flags.is_empty());
    }

    #[test]
    fn negative_coupling_is_flagged_not_rejected() {
        let p = CycleParams::new(WorkingMedium::CoupledSpins, 2.0, 1.0, 3.0, 2.0).with_j(-1.0);
        let r = analyze(&p).unwrap();
        assert!(r.flags.contains(&ReportFlag::NegativeCoupling));
        let mirrored = analyze(&p.clone().with_j(1.0)).unwrap();
        assert_abs_diff_eq!(r.work, mirrored.work, epsilon = 1e-15);
    }

    #[test]
    fn outside_coupling_window_is_not_an_engine() {
        let p = CycleParams::new(WorkingMedium::CoupledSpins, 2.0, 1.0, 3.0, 2.0).with_j(5.0);
        let r = analyze(&p).unwrap();
        assert_eq!(r.mode, Mode::NotEngine);
        assert!(r.work < 0.0);
        assert!(r.eta_regen_free.is_none() && r.eta_conventional.is_none());
    }

    #[test]
    fn efficiency_is_undefined_off_engine() {
        assert_eq!(efficiency(-1.0, -2.0), None);
        assert_eq!(efficiency(1.0, 0.0), None);
        assert_eq!(efficiency(0.0, 1.0), None);
        assert_eq!(efficiency(1.0, 4.0), Some(0.25));
    }

    #[test]
    fn perfect_regeneration_bound() {
        let h = Heats { q1: 0.3, q2: -0.2, q3: -0.25, q4: 0.2 };
        let r = regen_bookkeeping(&h);
        assert_eq!(r.q_h, h.q1);
        let (bh, bc) = (1.0 / 3.0, 0.5);
        let sigma = 0.01;
        let b = cost_bounds(&h, r.q_h, sigma, bh, bc);
        let eta_c = 1.0 - bh / bc;
        assert_abs_diff_eq!(b.sufficient, h.q4 - sigma / (bc * eta_c), epsilon = 1e-15);
    }
}
