//! Working media: maps from control parameters to energy spectra.

use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Result};

/// Control parameters of a working medium, in units with ħ = k_B = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumParams {
    /// Field strength, the knob driven along the isotherms.
    pub lambda: f64,
    /// Flip-flop coupling. Ignored by the single-spin medium.
    pub j: f64,
}

impl MediumParams {
    pub fn new(lambda: f64, j: f64) -> Self {
        Self { lambda, j }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.lambda.is_finite() {
            return Err(invalid(format!("lambda must be finite, got {}", self.lambda)));
        }
        if !self.j.is_finite() {
            return Err(invalid(format!("j must be finite, got {}", self.j)));
        }
        Ok(())
    }
}

/// Energy eigenvalues in ascending order. Degenerate levels are repeated.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Sorts the energies. Fails on an empty list or a non-finite entry.
    pub fn new(mut energies: Vec<f64>) -> Result<Self> {
        if energies.is_empty() {
            return Err(invalid("spectrum must contain at least one level"));
        }
        if let Some(e) = energies.iter().find(|e| !e.is_finite()) {
            return Err(invalid(format!("spectrum contains non-finite energy {e}")));
        }
        energies.sort_by(f64::total_cmp);
        Ok(Self(energies))
    }

    pub fn energies(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ground(&self) -> f64 {
        self.0[0]
    }
}

impl AsRef<[f64]> for Spectrum {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

pub type SpectrumFn = dyn Fn(&MediumParams) -> Result<Spectrum> + Send + Sync;

#[derive(Clone)]
pub enum WorkingMedium {
    /// H = (λ/2) σ_z.
    SingleSpin,
    /// H = (λ/2)(σ_z¹ + σ_z²) + J(σ_+¹σ_-² + σ_-¹σ_+²).
    CoupledSpins,
    Custom(Arc<SpectrumFn>),
}

impl WorkingMedium {
    pub fn custom<F>(f: F) -> Self
    where
        F: Fn(&MediumParams) -> Result<Spectrum> + Send + Sync + 'static,
    {
        Self::Custom(Arc::new(f))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::SingleSpin => "single",
            Self::CoupledSpins => "coupled",
            Self::Custom(_) => "custom",
        }
    }

    pub fn uses_coupling(&self) -> bool {
        !matches!(self, Self::SingleSpin)
    }

    pub fn spectrum(&self, params: &MediumParams) -> Result<Spectrum> {
        spectrum(self, params)
    }
}

impl fmt::Debug for WorkingMedium {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SingleSpin => f.write_str("SingleSpin"),
            Self::CoupledSpins => f.write_str("CoupledSpins"),
            Self::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

/// Closed-form spectrum of `medium` at `params`.
///
/// The coupled Hamiltonian is block diagonal in the product basis:
/// |↑↑⟩ and |↓↓⟩ carry ±λ, and the flip-flop block spanned by |↑↓⟩, |↓↑⟩
/// has zero diagonal and off-diagonal J, hence eigenvalues ±J.
pub fn spectrum(medium: &WorkingMedium, params: &MediumParams) -> Result<Spectrum> {
    params.validate()?;
    let MediumParams { lambda, j } = *params;
    match medium {
        WorkingMedium::SingleSpin => Spectrum::new(vec![-0.5 * lambda, 0.5 * lambda]),
        WorkingMedium::CoupledSpins => Spectrum::new(vec![-lambda, -j, j, lambda]),
        WorkingMedium::Custom(f) => f(params),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_spin_levels() {
        let s = spectrum(&WorkingMedium::SingleSpin, &MediumParams::new(2.0, 0.0)).unwrap();
        assert_eq!(s.energies(), &[-1.0, 1.0]);
    }

    #[test]
    fn single_spin_ignores_coupling() {
        let a = spectrum(&WorkingMedium::SingleSpin, &MediumParams::new(3.0, 0.0)).unwrap();
        let b = spectrum(&WorkingMedium::SingleSpin, &MediumParams::new(3.0, 7.0)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn coupled_levels() {
        let s = spectrum(&WorkingMedium::CoupledSpins, &MediumParams::new(2.0, 1.0)).unwrap();
        assert_eq!(s.energies(), &[-2.0, -1.0, 1.0, 2.0]);
        let s = spectrum(&WorkingMedium::CoupledSpins, &MediumParams::new(2.0, 0.0)).unwrap();
        assert_eq!(s.energies(), &[-2.0, 0.0, 0.0, 2.0]);
    }

    #[test]
    fn negative_lambda_is_accepted() {
        let s = spectrum(&WorkingMedium::SingleSpin, &MediumParams::new(-2.0, 0.0)).unwrap();
        assert_eq!(s.energies(), &[-1.0, 1.0]);
    }

    #[test]
    fn non_finite_params_rejected() {
        for p in [
            MediumParams::new(f64::NAN, 0.0),
            MediumParams::new(1.0, f64::INFINITY),
            MediumParams::new(f64::NEG_INFINITY, 0.0),
        ] {
            assert!(spectrum(&WorkingMedium::CoupledSpins, &p).is_err());
        }
    }

    #[test]
    fn spectrum_constructor_sorts_and_validates() {
        let s = Spectrum::new(vec![3.0, -1.0, 0.0]).unwrap();
        assert_eq!(s.energies(), &[-1.0, 0.0, 3.0]);
        assert!(Spectrum::new(vec![]).is_err());
        assert!(Spectrum::new(vec![0.0, f64::NAN]).is_err());
    }

    #[test]
    fn custom_medium_delegates() {
        let m = WorkingMedium::custom(|p| Spectrum::new(vec![0.0, p.lambda, 2.0 * p.lambda]));
        let s = m.spectrum(&MediumParams::new(1.5, 0.0)).unwrap();
        assert_eq!(s.energies(), &[0.0, 1.5, 3.0]);
        assert_eq!(format!("{m:?}"), "Custom(..)");
    }
}
