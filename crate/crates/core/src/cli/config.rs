//! JSON run configurations. Physical inputs use unit-suffixed names.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::photon_stats::FockDistribution;
use crate::quantities::AngularFrequency;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepScale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    #[serde(default)]
    pub scale: SweepScale,
}

impl Sweep {
    pub fn single(value: f64) -> Self {
        Self { start: value, stop: value, points: 1, scale: SweepScale::Linear }
    }

    pub fn values(&self, field: &str) -> Result<Vec<f64>> {
        if self.points < 1 {
            return Err(Error::invalid(format!("{field}.points"), "must be at least 1"));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(Error::invalid(field, "start and stop must be finite"));
        }
        if self.start > self.stop {
            return Err(Error::invalid(field, format!("start {} exceeds stop {}", self.start, self.stop)));
        }
        if self.points == 1 {
            return Ok(vec![self.start]);
        }
        let last = (self.points - 1) as f64;
        Ok(match self.scale {
            SweepScale::Linear => {
                (0..self.points).map(|i| self.start + (self.stop - self.start) * i as f64 / last).collect()
            }
            SweepScale::Log => {
                if self.start <= 0.0 {
                    return Err(Error::invalid(format!("{field}.start"), "log sweeps need a positive start"));
                }
                let (a, b) = (self.start.log10(), self.stop.log10());
                (0..self.points).map(|i| 10f64.powf(a + (b - a) * i as f64 / last)).collect()
            }
        })
    }
}

/// Where the cavity resonance sits: a vacuum wavelength or a linear frequency.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CavityFrequency {
    #[serde(default)]
    pub lambda0_nm: Option<f64>,
    #[serde(default, rename = "cavity_freq_GHz")]
    pub cavity_freq_ghz: Option<f64>,
}

impl CavityFrequency {
    pub fn resolve(&self) -> Result<AngularFrequency> {
        match (self.lambda0_nm, self.cavity_freq_ghz) {
            (Some(l), None) => AngularFrequency::from_vacuum_wavelength_nm(l)
                .map_err(|_| Error::invalid("lambda0_nm", format!("must be positive, got {l}"))),
            (None, Some(f)) => AngularFrequency::from_ghz(f)
                .map_err(|_| Error::invalid("cavity_freq_GHz", format!("must be non-negative, got {f}"))),
            (Some(_), Some(_)) => {
                Err(Error::invalid("lambda0_nm", "give either lambda0_nm or cavity_freq_GHz, not both"))
            }
            (None, None) => Err(Error::invalid("lambda0_nm", "missing; give lambda0_nm or cavity_freq_GHz")),
        }
    }
}

macro_rules! cavity_accessor {
    ($($t:ty),*) => {$(
        impl $t {
            pub fn cavity(&self) -> CavityFrequency {
                CavityFrequency { lambda0_nm: self.lambda0_nm, cavity_freq_ghz: self.cavity_freq_ghz }
            }
        }
    )*};
}

cavity_accessor!(LadderConfig, AnticrossConfig, SpectrumConfig, PurcellConfig, LaserConfig, ModeVolumeConfig);

pub(crate) fn ghz(field: &str, value: f64) -> Result<AngularFrequency> {
    if !value.is_finite() {
        return Err(Error::invalid(field, format!("must be finite, got {value}")));
    }
    AngularFrequency::from_ghz(value).map_err(|e| match e {
        Error::InvalidInput { reason, .. } => Error::invalid(field, reason),
        other => other,
    })
}

pub(crate) fn ghz_non_negative(field: &str, value: f64) -> Result<AngularFrequency> {
    if !(value >= 0.0) {
        return Err(Error::invalid(field, format!("must be non-negative, got {value}")));
    }
    ghz(field, value)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LadderConfig {
    #[serde(default)]
    pub lambda0_nm: Option<f64>,
    #[serde(default, rename = "cavity_freq_GHz")]
    pub cavity_freq_ghz: Option<f64>,
    #[serde(rename = "g_over_2pi_GHz")]
    pub g_ghz: f64,
    #[serde(default, rename = "detuning_over_2pi_GHz")]
    pub detuning_ghz: f64,
    #[serde(default)]
    pub n_max: u32,
    #[serde(default)]
    pub table: LadderTable,
    /// Photon number of the Rabi-oscillating manifold.
    #[serde(default)]
    pub rabi_n: u32,
    /// Times for the Rabi table, picoseconds.
    #[serde(default)]
    pub time_sweep_ps: Option<Sweep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LadderTable {
    #[default]
    Ladder,
    Rabi,
    /// Photon blockade and photon-induced tunneling probe frequencies.
    Probes,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnticrossConfig {
    #[serde(default)]
    pub lambda0_nm: Option<f64>,
    #[serde(default, rename = "cavity_freq_GHz")]
    pub cavity_freq_ghz: Option<f64>,
    #[serde(rename = "g_over_2pi_GHz")]
    pub g_ghz: f64,
    #[serde(rename = "kappa_over_2pi_GHz")]
    pub kappa_ghz: f64,
    #[serde(default, rename = "gamma_over_2pi_GHz")]
    pub gamma_ghz: f64,
    /// Emitter detuning ν − ω, GHz.
    pub detuning_sweep: Sweep,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumConfig {
    #[serde(default)]
    pub lambda0_nm: Option<f64>,
    #[serde(default, rename = "cavity_freq_GHz")]
    pub cavity_freq_ghz: Option<f64>,
    #[serde(rename = "g_over_2pi_GHz")]
    pub g_ghz: f64,
    #[serde(rename = "kappa_over_2pi_GHz")]
    pub kappa_ghz: f64,
    #[serde(default, rename = "gamma_over_2pi_GHz")]
    pub gamma_ghz: f64,
    #[serde(default, rename = "detuning_over_2pi_GHz")]
    pub detuning_ghz: f64,
    /// Probe offset from the cavity, GHz.
    pub probe_sweep: Sweep,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PurcellConfig {
    #[serde(default)]
    pub lambda0_nm: Option<f64>,
    #[serde(default, rename = "cavity_freq_GHz")]
    pub cavity_freq_ghz: Option<f64>,
    #[serde(rename = "Q")]
    pub q: f64,
    /// Mode volume in units of (λ/n)³.
    #[serde(rename = "V_norm")]
    pub v_norm: f64,
    #[serde(default = "one")]
    pub psi_abs: f64,
    #[serde(default = "one")]
    pub cos_xi: f64,
    /// Rate into other channels, relative to the bulk rate.
    #[serde(default = "one")]
    pub other_fraction: f64,
    /// Emitter detuning, GHz. Defaults to resonance.
    #[serde(default)]
    pub detuning_sweep: Option<Sweep>,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaserConfig {
    #[serde(default)]
    pub lambda0_nm: Option<f64>,
    #[serde(default, rename = "cavity_freq_GHz")]
    pub cavity_freq_ghz: Option<f64>,
    #[serde(default, rename = "kappa_over_2pi_GHz")]
    pub kappa_ghz: Option<f64>,
    #[serde(default, rename = "Q")]
    pub q: Option<f64>,
    pub beta: f64,
    /// Pump in units of the exact threshold pump.
    pub pump_over_threshold_sweep: Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QdTable {
    #[default]
    Levels,
    Transitions,
    Coulomb,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QdConfig {
    pub m_eff_e_m0: f64,
    pub m_eff_h_m0: f64,
    #[serde(rename = "hbar_omega0_e_meV")]
    pub hbar_omega0_e_mev: f64,
    #[serde(rename = "hbar_omega0_h_meV")]
    pub hbar_omega0_h_mev: f64,
    #[serde(rename = "L_nm")]
    pub l_nm: f64,
    #[serde(rename = "band_gap_eV")]
    pub band_gap_ev: f64,
    pub epsilon_r: f64,
    pub max_shell: u32,
    #[serde(default = "one_u32")]
    pub max_nz: u32,
    #[serde(default)]
    pub table: QdTable,
    #[serde(default = "default_coulomb_samples")]
    pub coulomb_samples: u64,
}

impl QdConfig {
    pub fn dot(&self) -> crate::qdot::QDotSpecFile {
        crate::qdot::QDotSpecFile {
            m_eff_e_m0: self.m_eff_e_m0,
            m_eff_h_m0: self.m_eff_h_m0,
            hbar_omega0_e_mev: self.hbar_omega0_e_mev,
            hbar_omega0_h_mev: self.hbar_omega0_h_mev,
            l_nm: self.l_nm,
            band_gap_ev: self.band_gap_ev,
            epsilon_r: self.epsilon_r,
        }
    }
}

fn one_u32() -> u32 {
    1
}

fn default_coulomb_samples() -> u64 {
    1_000_000
}

/// A photon-number distribution in config form.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum DistributionSpec {
    Fock {
        n: u32,
    },
    Sparse {
        n: u32,
        epsilon: f64,
    },
    Poisson {
        mean: f64,
    },
    /// Explicit `{"n": P_n}` table.
    Explicit {
        probs: BTreeMap<String, f64>,
    },
}

impl DistributionSpec {
    pub fn build(&self) -> Result<FockDistribution> {
        match self {
            DistributionSpec::Fock { n } => Ok(FockDistribution::fock(*n)),
            DistributionSpec::Sparse { n, epsilon } => FockDistribution::sparse(*n, *epsilon),
            DistributionSpec::Poisson { mean } => FockDistribution::poisson(*mean),
            DistributionSpec::Explicit { probs } => {
                let mut pairs = Vec::with_capacity(probs.len());
                for (k, &p) in probs {
                    let n: u32 = k
                        .trim()
                        .parse()
                        .map_err(|_| Error::invalid("probs", format!("`{k}` is not a photon number")))?;
                    pairs.push((n, p));
                }
                FockDistribution::from_pairs(pairs)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct G2Case {
    pub label: String,
    pub distribution: DistributionSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct G2Config {
    pub cases: Vec<G2Case>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HbtTable {
    #[default]
    Records,
    Summary,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HbtConfig {
    pub cases: Vec<G2Case>,
    pub pulses: u64,
    #[serde(default)]
    pub table: HbtTable,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianGridConfig {
    pub sigma_nm: f64,
    /// Grid half width in units of σ.
    pub half_width_sigma: f64,
    pub points: usize,
    #[serde(default = "one")]
    pub epsilon_r: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DipoleConfig {
    #[serde(rename = "mu_Cm")]
    pub mu_cm: f64,
    pub orientation: [f64; 3],
    pub location: [usize; 3],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeVolumeConfig {
    #[serde(default)]
    pub lambda0_nm: Option<f64>,
    #[serde(default, rename = "cavity_freq_GHz")]
    pub cavity_freq_ghz: Option<f64>,
    /// Path to a field-grid JSON file, relative to the config file.
    #[serde(default)]
    pub grid_file: Option<PathBuf>,
    #[serde(default)]
    pub gaussian: Option<GaussianGridConfig>,
    #[serde(default)]
    pub dipole: Option<DipoleConfig>,
}
