//! Steady state of the two-variable laser rate equations
//!
//! ```text
//! dN/dt = R − N·Γ_other − N·Γ_cav·(p+1) − N/τ_nr
//! dp/dt = −2κp + N·Γ_cav·(p+1)
//! ```
//!
//! With τ_nr → ∞ the steady state collapses to the light-in/light-out law
//! `R = (2κp/(p+1))·(1/β + p)`, which is the workhorse of this module.
//! Pump rates are in excitations per second; κ is the cavity FIELD decay
//! rate so photons leave at `2κ`.

use serde::Serialize;

use crate::error::{ensure_non_negative, ensure_positive, Error, Result};
use crate::quantities::{AngularFrequency, HBAR};

/// Per-emitter emission rates (s⁻¹) and non-radiative lifetime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EmitterRates {
    pub gamma_cavity: f64,
    pub gamma_other: f64,
    /// Non-radiative lifetime in seconds; `f64::INFINITY` disables the channel.
    pub tau_nr: f64,
}

impl EmitterRates {
    pub fn new(gamma_cavity: f64, gamma_other: f64, tau_nr: f64) -> Result<Self> {
        ensure_positive("gamma_cavity", gamma_cavity)?;
        ensure_non_negative("gamma_other", gamma_other)?;
        if !(tau_nr > 0.0) {
            return Err(Error::invalid("tau_nr", format!("must be positive or infinite, got {tau_nr}")));
        }
        Ok(Self { gamma_cavity, gamma_other, tau_nr })
    }

    pub fn radiative(gamma_cavity: f64, gamma_other: f64) -> Result<Self> {
        Self::new(gamma_cavity, gamma_other, f64::INFINITY)
    }

    /// `Γ_cav/(Γ_cav + Γ_other)`.
    pub fn beta(&self) -> f64 {
        self.gamma_cavity / (self.gamma_cavity + self.gamma_other)
    }

    /// Fraction of all decay (including non-radiative) that feeds the mode.
    fn effective_beta(&self) -> f64 {
        self.gamma_cavity / (self.gamma_cavity + self.gamma_other + 1.0 / self.tau_nr)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaserParams {
    kappa: AngularFrequency,
    beta: f64,
    rates: Option<EmitterRates>,
}

impl LaserParams {
    pub fn new(kappa: AngularFrequency, beta: f64) -> Result<Self> {
        ensure_positive("kappa", kappa.value())?;
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(Error::invalid("beta", format!("must lie in (0, 1], got {beta}")));
        }
        Ok(Self { kappa, beta, rates: None })
    }

    /// β derived from explicit rates.
    pub fn from_rates(kappa: AngularFrequency, rates: EmitterRates) -> Result<Self> {
        let mut p = Self::new(kappa, rates.beta())?;
        p.rates = Some(rates);
        Ok(p)
    }

    pub fn from_quality_factor(omega: AngularFrequency, q: f64, beta: f64) -> Result<Self> {
        ensure_positive("q", q)?;
        ensure_positive("omega", omega.value())?;
        Self::new(AngularFrequency::new(omega.value() / (2.0 * q))?, beta)
    }

    pub fn kappa(&self) -> AngularFrequency {
        self.kappa
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn rates(&self) -> Option<EmitterRates> {
        self.rates
    }
}

/// Pump needed to hold `p` photons in the cavity.
pub fn pump_for_photon_number(params: &LaserParams, p: f64) -> Result<f64> {
    ensure_non_negative("p", p)?;
    Ok(pump_for(params.kappa.value(), params.beta, p))
}

fn pump_for(kappa: f64, beta: f64, p: f64) -> f64 {
    2.0 * kappa * p / (p + 1.0) * (1.0 / beta + p)
}

/// Non-negative root of `2κp² + (2κ/β − R)p − R = 0`.
fn photon_number(kappa: f64, beta: f64, pump: f64) -> f64 {
    if pump == 0.0 {
        return 0.0;
    }
    let a = 2.0 * kappa;
    let b = 2.0 * kappa / beta - pump;
    let c = -pump;
    let disc = (b * b - 4.0 * a * c).sqrt();
    if b > 0.0 {
        // −b + √disc would cancel; use the conjugate form.
        2.0 * pump / (b + disc)
    } else {
        (-b + disc) / (2.0 * a)
    }
}

/// Mean cavity photon number sustained by `pump`.
pub fn photon_number_for_pump(params: &LaserParams, pump: f64) -> Result<f64> {
    ensure_non_negative("pump", pump)?;
    Ok(photon_number(params.kappa.value(), params.beta, pump))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Threshold {
    /// `κ(1 + 1/β)`, the pump giving p = 1.
    pub exact: f64,
    /// `κ/β`, valid for β ≪ 1.
    pub small_beta: f64,
}

pub fn threshold_pump(params: &LaserParams) -> Threshold {
    let k = params.kappa.value();
    Threshold { exact: k * (1.0 + 1.0 / params.beta), small_beta: k / params.beta }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LightLightPoint {
    pub pump: f64,
    pub photon_number: f64,
    /// `2κ·p·ħω` in watts, assuming every escaping photon is collected.
    pub output_power: f64,
}

pub fn light_light_curve(
    params: &LaserParams,
    photon_omega: AngularFrequency,
    pumps: &[f64],
) -> Result<Vec<LightLightPoint>> {
    if pumps.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::invalid("pump_sweep", "must be sorted ascending"));
    }
    let k = params.kappa.value();
    pumps
        .iter()
        .map(|&pump| {
            let p = photon_number_for_pump(params, pump)?;
            Ok(LightLightPoint { pump, photon_number: p, output_power: 2.0 * k * p * HBAR * photon_omega.value() })
        })
        .collect()
}

/// Local log-log slopes `Δln p / Δln R` between successive points with
/// positive pump and photon number.
pub fn log_log_slopes(curve: &[LightLightPoint]) -> Vec<f64> {
    curve
        .windows(2)
        .filter(|w| w[0].pump > 0.0 && w[0].photon_number > 0.0 && w[1].pump > w[0].pump)
        .map(|w| (w[1].photon_number / w[0].photon_number).ln() / (w[1].pump / w[0].pump).ln())
        .collect()
}

/// Segment `(pump_lo, pump_hi)` with the steepest log-log slope.
///
/// For β < 1 the slope peaks where `p = 1/√β`; that sits within a factor
/// of about two above the threshold pump when β ≪ 1.
pub fn steepest_segment(curve: &[LightLightPoint]) -> Option<(f64, f64)> {
    curve
        .windows(2)
        .filter(|w| w[0].pump > 0.0 && w[0].photon_number > 0.0 && w[1].pump > w[0].pump)
        .map(|w| {
            let slope = (w[1].photon_number / w[0].photon_number).ln() / (w[1].pump / w[0].pump).ln();
            (slope, (w[0].pump, w[1].pump))
        })
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, seg)| seg)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SteadyState {
    /// Mean cavity photon number.
    pub p: f64,
    /// Number of excited emitters.
    pub n_excited: f64,
    pub pump: f64,
}

impl SteadyState {
    /// Relative residuals of the two rate equations at this point.
    pub fn residuals(&self, kappa: AngularFrequency, rates: &EmitterRates) -> (f64, f64) {
        let k = kappa.value();
        let stim = self.n_excited * rates.gamma_cavity * (self.p + 1.0);
        let loss_other = self.n_excited * rates.gamma_other;
        let loss_nr = self.n_excited / rates.tau_nr;
        let dn = self.pump - loss_other - stim - loss_nr;
        let dn_scale = self.pump.abs().max(loss_other + stim + loss_nr).max(f64::MIN_POSITIVE);
        let dp = -2.0 * k * self.p + stim;
        let dp_scale = (2.0 * k * self.p).max(stim).max(f64::MIN_POSITIVE);
        (dn.abs() / dn_scale, dp.abs() / dp_scale)
    }
}

/// Full steady state including the non-radiative channel.
pub fn steady_state_full(kappa: AngularFrequency, rates: &EmitterRates, pump: f64) -> Result<SteadyState> {
    ensure_positive("kappa", kappa.value())?;
    ensure_non_negative("pump", pump)?;
    let k = kappa.value();
    let p = photon_number(k, rates.effective_beta(), pump);
    let n_excited = 2.0 * k * p / (rates.gamma_cavity * (p + 1.0));
    if !(p >= 0.0 && n_excited >= 0.0 && p.is_finite() && n_excited.is_finite()) {
        return Err(Error::Numerical(format!("no non-negative steady state for pump {pump}")));
    }
    Ok(SteadyState { p, n_excited, pump })
}
