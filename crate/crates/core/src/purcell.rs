//! Purcell enhancement of spontaneous emission and the β factor.
//!
//! Mode volumes here are normalized to the cubic material wavelength
//! `(λ₀/n)³` with λ₀ the vacuum wavelength.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_non_negative, ensure_positive, ensure_unit_interval, Error, Result};
use crate::quantities::{AngularFrequency, EPSILON0, HBAR, SPEED_OF_LIGHT};

/// `F = (3/4π²)·Q/V`, with V in units of `(λ/n)³`.
pub fn max_purcell_factor(q: f64, v_mode_norm: f64) -> Result<f64> {
    ensure_positive("q", q)?;
    ensure_positive("v_mode_norm", v_mode_norm)?;
    Ok(3.0 / (4.0 * PI * PI) * q / v_mode_norm)
}

/// Cavity density of optical states, a unit-area Lorentzian of half width
/// `ω/2Q` centred on the cavity. Units: s·rad⁻¹.
pub fn density_of_states(nu: AngularFrequency, omega: AngularFrequency, q: f64) -> Result<f64> {
    ensure_positive("q", q)?;
    ensure_positive("omega", omega.value())?;
    let hwhm = omega.value() / (2.0 * q);
    let d = nu.value() - omega.value();
    Ok(hwhm / (PI * (d * d + hwhm * hwhm)))
}

/// `D_c(ν)/D_c(ω)`, the spectral degradation of the Purcell factor.
pub fn spectral_overlap(detuning: AngularFrequency, omega: AngularFrequency, q: f64) -> Result<f64> {
    ensure_positive("q", q)?;
    ensure_positive("omega", omega.value())?;
    let hwhm = omega.value() / (2.0 * q);
    let x = detuning.value() / hwhm;
    Ok(1.0 / (1.0 + x * x))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PurcellInputs {
    pub q: f64,
    pub v_mode_norm: f64,
    /// `|ψ|` at the emitter, in [0, 1].
    pub psi_abs: f64,
    pub cos_xi: f64,
    /// `δ = ν − ω`.
    pub detuning: AngularFrequency,
    pub cavity_omega: AngularFrequency,
}

impl PurcellInputs {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("q", self.q)?;
        ensure_positive("v_mode_norm", self.v_mode_norm)?;
        ensure_unit_interval("psi_abs", self.psi_abs)?;
        ensure_unit_interval("cos_xi", self.cos_xi)?;
        ensure_positive("cavity_omega", self.cavity_omega.value())?;
        Ok(())
    }
}

/// `F_max·ψ²·cos²ξ·D_c(ν)/D_c(ω)`. Never exceeds `F_max`.
pub fn effective_purcell(inputs: &PurcellInputs) -> Result<f64> {
    inputs.validate()?;
    let f_max = max_purcell_factor(inputs.q, inputs.v_mode_norm)?;
    let spatial = (inputs.psi_abs * inputs.cos_xi).powi(2);
    let spectral = spectral_overlap(inputs.detuning, inputs.cavity_omega, inputs.q)?;
    Ok(f_max * spatial * spectral)
}

/// `β = F/(F+f)`.
pub fn beta_factor(purcell: f64, other_fraction: f64) -> Result<f64> {
    ensure_non_negative("F", purcell)?;
    ensure_non_negative("f", other_fraction)?;
    if purcell + other_fraction == 0.0 {
        return Err(Error::invalid("F", "F and f cannot both be zero"));
    }
    Ok(purcell / (purcell + other_fraction))
}

/// Emission into the cavity mode versus everything else, in units of the
/// bulk rate Γ₀.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EmissionBudget {
    /// `Γ_c/Γ₀`
    pub purcell: f64,
    /// `Γ_other/Γ₀`; 1 outside a band gap, below 1 inside one.
    pub other_fraction: f64,
    pub beta: f64,
}

impl EmissionBudget {
    pub fn new(purcell: f64, other_fraction: f64) -> Result<Self> {
        let beta = beta_factor(purcell, other_fraction)?;
        Ok(Self { purcell, other_fraction, beta })
    }

    /// Outside a photonic band gap, `f = 1`.
    pub fn outside_band_gap(purcell: f64) -> Result<Self> {
        Self::new(purcell, 1.0)
    }

    /// Total emission rate in units of Γ₀.
    pub fn total(&self) -> f64 {
        self.purcell + self.other_fraction
    }
}

/// Bulk spontaneous emission rate `Γ_n = n·Γ₀`, `Γ₀ = μ²ν³/(3πε₀ħc³)`. s⁻¹.
pub fn bulk_rate(mu_eg: f64, nu: AngularFrequency, n_index: f64) -> Result<f64> {
    ensure_positive("mu_eg", mu_eg)?;
    ensure_positive("nu", nu.value())?;
    ensure_positive("n_index", n_index)?;
    let gamma0 = mu_eg * mu_eg * nu.value().powi(3) / (3.0 * PI * EPSILON0 * HBAR * SPEED_OF_LIGHT.powi(3));
    Ok(n_index * gamma0)
}

/// `F = (2g²/κ)/Γ_n`, with `bulk` the bulk rate in s⁻¹.
pub fn purcell_from_g(g: AngularFrequency, kappa: AngularFrequency, bulk: f64) -> Result<f64> {
    ensure_positive("g", g.value())?;
    ensure_positive("kappa", kappa.value())?;
    ensure_positive("bulk", bulk)?;
    Ok(2.0 * g.value() * g.value() / kappa.value() / bulk)
}
