//! Lossless emitter–cavity system: the dressed-state ladder.
//!
//! The Hamiltonian is block diagonal in the manifolds spanned by
//! `{|ex,n⟩, |g,n+1⟩}`, so everything here is closed form per manifold:
//!
//! ```text
//! E± = ħω(n+1) ± √((ħδ/2)² + ħ²g²(n+1)),   δ = ν − ω
//! ```
//!
//! `g` is treated as a real, non-negative rate.

use serde::Serialize;

use crate::error::{ensure_non_negative, ensure_positive, Error, Result};
use crate::quantities::{AngularFrequency, Energy, HBAR};

/// Relative tolerance under which `ν` and `ω` count as resonant.
const RESONANCE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LosslessSystem {
    omega: AngularFrequency,
    nu: AngularFrequency,
    g: AngularFrequency,
}

impl LosslessSystem {
    pub fn new(omega: AngularFrequency, nu: AngularFrequency, g: AngularFrequency) -> Result<Self> {
        ensure_positive("omega", omega.value())?;
        ensure_positive("nu", nu.value())?;
        ensure_non_negative("g", g.value())?;
        Ok(Self { omega, nu, g })
    }

    /// Emitter placed exactly on the cavity resonance.
    pub fn resonant(omega: AngularFrequency, g: AngularFrequency) -> Result<Self> {
        Self::new(omega, omega, g)
    }

    pub fn omega(&self) -> AngularFrequency {
        self.omega
    }

    pub fn nu(&self) -> AngularFrequency {
        self.nu
    }

    pub fn g(&self) -> AngularFrequency {
        self.g
    }

    /// `δ = ν − ω`.
    pub fn detuning(&self) -> AngularFrequency {
        self.nu - self.omega
    }

    /// Same cavity and coupling, emitter at `ω + δ`.
    pub fn with_detuning(&self, delta: AngularFrequency) -> Result<Self> {
        Self::new(self.omega, self.omega + delta, self.g)
    }

    pub fn is_resonant(&self) -> bool {
        self.detuning().value().abs() <= RESONANCE_TOLERANCE * self.omega.value()
    }

    fn require_resonant(&self, what: &str) -> Result<()> {
        if self.is_resonant() {
            Ok(())
        } else {
            Err(Error::invalid(
                "nu",
                format!(
                    "{what} is only derived for zero detuning (δ = ν − ω = 0); got δ = {:e} rad/s",
                    self.detuning().value()
                ),
            ))
        }
    }
}

/// One rung of the ladder: the pair of dressed states built from
/// `|ex,n⟩` and `|g,n+1⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Manifold {
    pub n: u32,
    pub e_plus: Energy,
    pub e_minus: Energy,
    /// `|+⟩ = cos θ |ex,n⟩ + sin θ |g,n+1⟩`; π/4 on resonance.
    pub mixing_angle: f64,
    splitting: Energy,
}

impl Manifold {
    /// `E₊ − E₋`, always ≥ 0. Evaluated directly rather than by subtracting
    /// the two optical-scale energies.
    pub fn splitting(&self) -> Energy {
        self.splitting
    }
}

/// Half of the splitting in angular units, `√((δ/2)² + g²(n+1))`.
fn half_gap(sys: &LosslessSystem, n: u32) -> f64 {
    let d = sys.detuning().value();
    let g = sys.g.value();
    (0.25 * d * d + g * g * (n as f64 + 1.0)).sqrt()
}

pub fn dressed_energies(sys: &LosslessSystem, n: u32) -> Manifold {
    let n1 = n as f64 + 1.0;
    let centre = HBAR * sys.omega.value() * n1;
    let half = HBAR * half_gap(sys, n);
    let mixing_angle = 0.5 * f64::atan2(2.0 * sys.g.value() * n1.sqrt(), sys.detuning().value());
    Manifold {
        n,
        e_plus: Energy::from_raw(centre + half),
        e_minus: Energy::from_raw(centre - half),
        mixing_angle,
        splitting: Energy::from_raw(2.0 * half),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnticrossingPoint {
    pub delta: AngularFrequency,
    pub e_plus: Energy,
    pub e_minus: Energy,
}

impl AnticrossingPoint {
    pub fn gap(&self) -> Energy {
        self.e_plus - self.e_minus
    }
}

/// Eq. for `E±` evaluated along a detuning sweep, keeping `ω` and `g` of
/// `template` and moving the emitter to `ω + δ`.
pub fn anticrossing_curve(
    template: &LosslessSystem,
    n: u32,
    delta_sweep: &[AngularFrequency],
) -> Result<Vec<AnticrossingPoint>> {
    if delta_sweep.is_empty() {
        return Err(Error::invalid("delta_sweep", "sweep must not be empty"));
    }
    delta_sweep
        .iter()
        .map(|&delta| {
            let sys = template.with_detuning(delta)?;
            let m = dressed_energies(&sys, n);
            Ok(AnticrossingPoint { delta, e_plus: m.e_plus, e_minus: m.e_minus })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RabiPopulations {
    /// `|C_{ex,n}|²`
    pub p_excited: f64,
    /// `|C_{g,n+1}|²`
    pub p_ground: f64,
}

/// Populations after time `t` (seconds) starting from `|ex,n⟩` on resonance.
///
/// Oscillation frequency is `2g√(n+1)`; period `π/(g√(n+1))`.
pub fn rabi_probabilities(sys: &LosslessSystem, n: u32, t: f64) -> Result<RabiPopulations> {
    sys.require_resonant("the Rabi oscillation formula")?;
    if !t.is_finite() {
        return Err(Error::invalid("t", "time must be finite"));
    }
    let c = (2.0 * sys.g.value() * (n as f64 + 1.0).sqrt() * t).cos();
    Ok(RabiPopulations { p_excited: 0.5 * (1.0 + c), p_ground: 0.5 * (1.0 - c) })
}

/// Period of the resonant Rabi oscillation in manifold `n`. Infinite for g = 0.
pub fn rabi_period(sys: &LosslessSystem, n: u32) -> f64 {
    std::f64::consts::PI / (sys.g.value() * (n as f64 + 1.0).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    Upper,
    Lower,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Upper => 1.0,
            Branch::Lower => -1.0,
        }
    }

    pub fn from_sign(sign: i32) -> Result<Self> {
        match sign {
            1 => Ok(Branch::Upper),
            -1 => Ok(Branch::Lower),
            other => Err(Error::invalid("sign", format!("must be +1 or -1, got {other}"))),
        }
    }
}

/// Laser frequency that excites the first manifold with one photon, `ω ± g`.
pub fn blockade_frequency(sys: &LosslessSystem, branch: Branch) -> Result<AngularFrequency> {
    sys.require_resonant("the photon blockade frequency")?;
    Ok(sys.omega + sys.g * branch.sign())
}

/// Per-photon laser frequency that reaches the second manifold (n = 1) with
/// two photons, `E±(n=1)/2ħ = ω ± g/√2`.
pub fn tunneling_frequency(sys: &LosslessSystem, branch: Branch) -> Result<AngularFrequency> {
    sys.require_resonant("the photon-induced tunneling frequency")?;
    Ok(sys.omega + sys.g * (branch.sign() / std::f64::consts::SQRT_2))
}

pub fn ladder_table(sys: &LosslessSystem, n_max: u32) -> Vec<Manifold> {
    (0..=n_max).map(|n| dressed_energies(sys, n)).collect()
}
