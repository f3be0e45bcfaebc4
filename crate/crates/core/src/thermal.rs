//! Gibbs-state statistical mechanics over a [`Spectrum`] (k_B = 1).
//!
//! Every exponential sum is taken relative to the ground energy E₀, i.e.
//! `Z = exp(-β E₀) · Σ exp(-β (E_k - E₀))`, so the inner sum lies in
//! `[1, dim]` for every β > 0. Quantities that would otherwise cancel
//! between a large `β U` and a large `ln Z` are evaluated in the shifted
//! frame directly.

use crate::error::{invalid, Error, Result};
use crate::media::Spectrum;

/// Tolerance on `Σ p = 1` accepted by [`relative_entropy_direct`].
pub const NORMALIZATION_TOL: f64 = 1e-9;

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta > 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("inverse temperature must be finite and > 0, got {beta}")))
    }
}

/// Boltzmann weights relative to the ground level.
struct Weights {
    e0: f64,
    w: Vec<f64>,
    /// `Σ_{k>0} w_k`; the ground weight is exactly 1, so `Σ w = 1 + rest`.
    rest: f64,
}

impl Weights {
    fn new(spectrum: &Spectrum, beta: f64) -> Self {
        let e0 = spectrum.ground();
        let w: Vec<f64> = spectrum
            .energies()
            .iter()
            .map(|&e| (-beta * (e - e0)).exp())
            .collect();
        let rest = w[1..].iter().sum();
        Self { e0, w, rest }
    }

    fn sum(&self) -> f64 {
        1.0 + self.rest
    }

    /// `ln Σ w`, accurate when the excited weights are tiny.
    fn ln_sum(&self) -> f64 {
        self.rest.ln_1p()
    }

    /// `U - E₀`.
    fn excitation(&self, spectrum: &Spectrum) -> f64 {
        let sum = self.sum();
        self.w
            .iter()
            .zip(spectrum.energies())
            .map(|(w, e)| w / sum * (e - self.e0))
            .sum()
    }
}

/// `ln Z`, finite for any finite spectrum and β.
pub fn log_partition_function(spectrum: &Spectrum, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(-beta * spectrum.ground() + Weights::new(spectrum, beta).ln_sum())
}

/// `Z = Σ_k exp(-β E_k)`. Overflows to `+inf` only when `-β E₀` itself
/// exceeds the double range; use [`log_partition_function`] there.
pub fn partition_function(spectrum: &Spectrum, beta: f64) -> Result<f64> {
    log_partition_function(spectrum, beta).map(f64::exp)
}

pub fn populations(spectrum: &Spectrum, beta: f64) -> Result<Vec<f64>> {
    check_beta(beta)?;
    let Weights { mut w, rest, .. } = Weights::new(spectrum, beta);
    let sum = 1.0 + rest;
    w.iter_mut().for_each(|x| *x /= sum);
    Ok(w)
}

pub fn internal_energy(spectrum: &Spectrum, beta: f64) -> Result<f64> {
    Ok(spectrum.ground() + excitation_energy(spectrum, beta)?)
}

/// Mean energy above the ground level, `U - E₀`.
pub fn excitation_energy(spectrum: &Spectrum, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(Weights::new(spectrum, beta).excitation(spectrum))
}

/// Thermodynamic entropy `S = β U + ln Z`.
pub fn entropy(spectrum: &Spectrum, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let w = Weights::new(spectrum, beta);
    // β U + ln Z = β (U - E₀) + ln Σ w.
    Ok(beta * w.excitation(spectrum) + w.ln_sum())
}

/// `-Σ p ln p` with `0 ln 0 = 0`.
pub fn von_neumann_entropy(p: &[f64]) -> f64 {
    -p.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum::<f64>()
}

/// `F = -ln Z / β`.
pub fn free_energy(spectrum: &Spectrum, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(spectrum.ground() - Weights::new(spectrum, beta).ln_sum() / beta)
}

/// `S(ρ_i ‖ ρ_f)` for two Gibbs states of one Hamiltonian, in closed form
/// `U_i (β_f - β_i) + ln(Z_f / Z_i)`.
pub fn relative_entropy_gibbs(spectrum: &Spectrum, beta_i: f64, beta_f: f64) -> Result<f64> {
    check_beta(beta_i)?;
    check_beta(beta_f)?;
    let wi = Weights::new(spectrum, beta_i);
    let wf = Weights::new(spectrum, beta_f);
    // The E₀ parts of U_i Δβ and ln(Z_f/Z_i) cancel exactly.
    Ok(wi.excitation(spectrum) * (beta_f - beta_i) + wf.ln_sum() - wi.ln_sum())
}

/// `Σ_k p_k (ln p_k - ln q_k)` for commuting (co-diagonal) states.
pub fn relative_entropy_direct(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(invalid(format!(
            "distributions differ in length: {} vs {}",
            p.len(),
            q.len()
        )));
    }
    for (name, d) in [("p", p), ("q", q)] {
        if d.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(invalid(format!("{name} has a negative or non-finite entry")));
        }
        let total: f64 = d.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(invalid(format!("{name} sums to {total}, not 1")));
        }
    }
    let mut acc = 0.0;
    for (index, (&pk, &qk)) in p.iter().zip(q).enumerate() {
        if pk > 0.0 {
            if qk == 0.0 {
                return Err(Error::Divergence { index, p: pk });
            }
            acc += pk * (pk.ln() - qk.ln());
        }
    }
    Ok(acc)
}

/// A Gibbs state with its derived thermodynamic quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalState {
    spectrum: Spectrum,
    beta: f64,
    populations: Vec<f64>,
    log_z: f64,
    excitation: f64,
    u: f64,
    s: f64,
    f: f64,
}

impl ThermalState {
    pub fn new(spectrum: Spectrum, beta: f64) -> Result<Self> {
        check_beta(beta)?;
        let populations = populations(&spectrum, beta)?;
        let log_z = log_partition_function(&spectrum, beta)?;
        let excitation = excitation_energy(&spectrum, beta)?;
        let u = spectrum.ground() + excitation;
        let s = entropy(&spectrum, beta)?;
        let f = free_energy(&spectrum, beta)?;
        Ok(Self {
            spectrum,
            beta,
            populations,
            log_z,
            excitation,
            u,
            s,
            f,
        })
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn temperature(&self) -> f64 {
        self.beta.recip()
    }

    pub fn populations(&self) -> &[f64] {
        &self.populations
    }

    pub fn log_z(&self) -> f64 {
        self.log_z
    }

    pub fn z(&self) -> f64 {
        self.log_z.exp()
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    /// `U - E₀`, kept separately so that energy differences between states
    /// of one spectrum do not cancel against E₀.
    pub fn excitation(&self) -> f64 {
        self.excitation
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn f(&self) -> f64 {
        self.f
    }

    /// `S(self ‖ other)`; both states must share one spectrum.
    pub fn relative_entropy_to(&self, other: &ThermalState) -> Result<f64> {
        if self.spectrum != other.spectrum {
            return Err(invalid(
                "relative entropy in closed form needs both states on the same spectrum",
            ));
        }
        relative_entropy_gibbs(&self.spectrum, self.beta, other.beta)
    }
}
