//! Emitter–cavity system with losses.
//!
//! Replacing `ω → ω − iκ` and `ν → ν − iγ` in the first manifold gives the
//! complex eigenfrequencies
//!
//! ```text
//! ω± = (ω+ν)/2 − i(κ+γ)/2 ± √( ((δ − i(κ−γ))/2)² + g² )
//! ```
//!
//! with the principal square root. κ and γ are FIELD decay rates (HWHM of
//! the bare lines); the energy decay rate of a mode is twice its damping.

use nalgebra::{Matrix3, Schur};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{ensure_non_negative, ensure_positive, Error, Result};
use crate::quantities::AngularFrequency;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LossySystem {
    omega: AngularFrequency,
    nu: AngularFrequency,
    g: AngularFrequency,
    kappa: AngularFrequency,
    gamma: AngularFrequency,
}

impl LossySystem {
    pub fn new(
        omega: AngularFrequency,
        nu: AngularFrequency,
        g: AngularFrequency,
        kappa: AngularFrequency,
        gamma: AngularFrequency,
    ) -> Result<Self> {
        ensure_positive("omega", omega.value())?;
        ensure_positive("nu", nu.value())?;
        ensure_non_negative("g", g.value())?;
        ensure_positive("kappa", kappa.value())?;
        ensure_non_negative("gamma", gamma.value())?;
        Ok(Self { omega, nu, g, kappa, gamma })
    }

    /// Cavity loss from its quality factor, `κ = ω/2Q`.
    pub fn from_quality_factor(
        omega: AngularFrequency,
        q: f64,
        nu: AngularFrequency,
        g: AngularFrequency,
        gamma: AngularFrequency,
    ) -> Result<Self> {
        ensure_positive("q", q)?;
        Self::new(omega, nu, g, cavity_field_decay_rate(omega, q)?, gamma)
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
    pub fn kappa(&self) -> AngularFrequency {
        self.kappa
    }
    pub fn gamma(&self) -> AngularFrequency {
        self.gamma
    }

    pub fn detuning(&self) -> AngularFrequency {
        self.nu - self.omega
    }

    pub fn with_emitter(&self, nu: AngularFrequency) -> Result<Self> {
        Self::new(self.omega, nu, self.g, self.kappa, self.gamma)
    }

    pub fn with_coupling(&self, g: AngularFrequency) -> Result<Self> {
        Self::new(self.omega, self.nu, g, self.kappa, self.gamma)
    }

    /// Quality factor `ω/2κ`.
    pub fn quality_factor(&self) -> f64 {
        self.omega.value() / (2.0 * self.kappa.value())
    }
}

/// `κ = ω/2Q`.
pub fn cavity_field_decay_rate(omega: AngularFrequency, q: f64) -> Result<AngularFrequency> {
    ensure_positive("omega", omega.value())?;
    ensure_positive("q", q)?;
    AngularFrequency::new(omega.value() / (2.0 * q))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexEigenmode {
    /// Real part of the eigenfrequency.
    pub frequency: AngularFrequency,
    /// Field damping, minus the imaginary part.
    pub damping: AngularFrequency,
}

impl ComplexEigenmode {
    pub fn from_complex(z: Complex64) -> Self {
        Self { frequency: AngularFrequency::from_raw(z.re), damping: AngularFrequency::from_raw(-z.im) }
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.frequency.value(), -self.damping.value())
    }

    /// Energy decay rate, twice the field damping.
    pub fn energy_decay_rate(&self) -> AngularFrequency {
        self.damping * 2.0
    }

    /// Full width at half maximum of the mode's line.
    pub fn linewidth_fwhm(&self) -> AngularFrequency {
        self.damping * 2.0
    }
}

/// Complex eigenfrequencies `(ω₊, ω₋)` relative to `(ω+ν)/2`; returned as
/// `(centre, root)` so callers can form differences without cancellation.
fn centre_and_root(sys: &LossySystem) -> (Complex64, Complex64) {
    let (w, v) = (sys.omega.value(), sys.nu.value());
    let (k, y) = (sys.kappa.value(), sys.gamma.value());
    let g = sys.g.value();
    let centre = Complex64::new(0.5 * (w + v), -0.5 * (k + y));
    let half = Complex64::new(0.5 * (w - v), -0.5 * (k - y));
    let mut radicand = half * half + g * g;
    // (−ia)² yields −0 imaginary part; keep the principal branch on the cut.
    radicand.im += 0.0;
    (centre, radicand.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenmodePair {
    pub plus: ComplexEigenmode,
    pub minus: ComplexEigenmode,
}

impl EigenmodePair {
    /// The mode with the smaller damping first.
    pub fn by_damping(&self) -> (ComplexEigenmode, ComplexEigenmode) {
        if self.plus.damping <= self.minus.damping {
            (self.plus, self.minus)
        } else {
            (self.minus, self.plus)
        }
    }
}

pub fn complex_eigenfrequencies(sys: &LossySystem) -> EigenmodePair {
    if sys.g.value() == 0.0 {
        // Uncoupled limit: bare cavity and bare emitter, assigned to the
        // branches the closed form would give them.
        let cavity = ComplexEigenmode { frequency: sys.omega, damping: sys.kappa };
        let emitter = ComplexEigenmode { frequency: sys.nu, damping: sys.gamma };
        let (centre, root) = centre_and_root(sys);
        let plus = centre + root;
        let cavity_is_plus = (plus - cavity.as_complex()).norm() <= (plus - emitter.as_complex()).norm();
        return if cavity_is_plus {
            EigenmodePair { plus: cavity, minus: emitter }
        } else {
            EigenmodePair { plus: emitter, minus: cavity }
        };
    }
    let (centre, root) = centre_and_root(sys);
    EigenmodePair {
        plus: ComplexEigenmode::from_complex(centre + root),
        minus: ComplexEigenmode::from_complex(centre - root),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum RabiSplitting {
    Split(AngularFrequency),
    /// Real parts coincide (Purcell side of the exceptional point).
    NoSplitting,
}

impl RabiSplitting {
    pub fn value(&self) -> Option<AngularFrequency> {
        match self {
            RabiSplitting::Split(s) => Some(*s),
            RabiSplitting::NoSplitting => None,
        }
    }
}

const SPLITTING_TOLERANCE: f64 = 1e-9;

/// `Re(ω₊) − Re(ω₋)`; on resonance with γ = 0 this is `2√(g² − κ²/4)`.
pub fn rabi_splitting(sys: &LossySystem) -> RabiSplitting {
    let (_, root) = centre_and_root(sys);
    let splitting = 2.0 * root.re;
    let scale =
        sys.g.value().max(0.5 * sys.detuning().value().abs()).max(0.5 * (sys.kappa.value() + sys.gamma.value()));
    if splitting <= SPLITTING_TOLERANCE * scale {
        RabiSplitting::NoSplitting
    } else {
        RabiSplitting::Split(AngularFrequency::from_raw(splitting))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    Strong,
    Purcell,
    Intermediate,
}

/// Factors that stand in for "≫" when classifying a system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
pub struct RegimeThresholds {
    /// Strong coupling requires `κ ≥ factor·γ`.
    pub strong_kappa_over_gamma: f64,
    /// Purcell regime requires `κ/2 ≥ factor·g`.
    pub purcell_half_kappa_over_g: f64,
    /// Purcell regime requires `g ≥ factor·γ`.
    pub purcell_g_over_gamma: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        // κ/γ = 8 is the lowest ratio the QD-cavity literature still treats
        // as κ ≫ γ for strong coupling (κ/2π = 8 GHz, γ/2π ≈ 1 GHz).
        Self { strong_kappa_over_gamma: 8.0, purcell_half_kappa_over_g: 10.0, purcell_g_over_gamma: 10.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegimeCriteria {
    pub g_exceeds_half_kappa: bool,
    pub kappa_dominates_gamma: bool,
    pub half_kappa_dominates_g: bool,
    pub g_dominates_gamma: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegimeReport {
    pub regime: Regime,
    pub criteria: RegimeCriteria,
}

pub fn classify_regime(sys: &LossySystem, thresholds: &RegimeThresholds) -> RegimeReport {
    let (g, k, y) = (sys.g.value(), sys.kappa.value(), sys.gamma.value());
    let criteria = RegimeCriteria {
        g_exceeds_half_kappa: g > 0.5 * k,
        kappa_dominates_gamma: k >= thresholds.strong_kappa_over_gamma * y,
        half_kappa_dominates_g: 0.5 * k >= thresholds.purcell_half_kappa_over_g * g,
        g_dominates_gamma: g >= thresholds.purcell_g_over_gamma * y,
    };
    let regime = if criteria.g_exceeds_half_kappa && criteria.kappa_dominates_gamma {
        Regime::Strong
    } else if criteria.half_kappa_dominates_g && criteria.g_dominates_gamma {
        Regime::Purcell
    } else {
        Regime::Intermediate
    };
    RegimeReport { regime, criteria }
}

/// Leading-order ENERGY decay rates in the Purcell regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PurcellRates {
    /// `2g²/κ`
    pub emitter_like: AngularFrequency,
    /// `2κ`
    pub cavity_like: AngularFrequency,
}

pub fn purcell_regime_rates(sys: &LossySystem) -> Result<PurcellRates> {
    purcell_regime_rates_with(sys, &RegimeThresholds::default())
}

pub fn purcell_regime_rates_with(sys: &LossySystem, thresholds: &RegimeThresholds) -> Result<PurcellRates> {
    let report = classify_regime(sys, thresholds);
    if report.regime != Regime::Purcell {
        return Err(Error::invalid(
            "system",
            format!("Purcell-regime rates need κ/2 ≫ g ≫ γ; system classifies as {:?}", report.regime),
        ));
    }
    let (g, k) = (sys.g.value(), sys.kappa.value());
    Ok(PurcellRates {
        emitter_like: AngularFrequency::from_raw(2.0 * g * g / k),
        cavity_like: AngularFrequency::from_raw(2.0 * k),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumPoint {
    pub probe: AngularFrequency,
    pub intensity: f64,
}

/// Unit-peak Lorentzian of half width `hwhm` centred at `centre`.
fn unit_lorentzian(probe: f64, centre: f64, hwhm: f64) -> f64 {
    if hwhm == 0.0 {
        return if probe == centre { 1.0 } else { 0.0 };
    }
    let d = probe - centre;
    hwhm * hwhm / (d * d + hwhm * hwhm)
}

/// Transmission lineshape: one unit-peak Lorentzian per eigenmode, FWHM
/// twice its damping. With g = 0 the emitter is decoupled and only the bare
/// cavity line (FWHM 2κ, peak 1 at ω) remains.
pub fn transmission_spectrum(sys: &LossySystem, probes: &[AngularFrequency]) -> Vec<SpectrumPoint> {
    if sys.g.value() == 0.0 {
        return empty_cavity_spectrum(sys.omega, sys.kappa, probes);
    }
    let modes = complex_eigenfrequencies(sys);
    probes
        .iter()
        .map(|&probe| {
            let intensity = [modes.plus, modes.minus]
                .iter()
                .map(|m| unit_lorentzian(probe.value(), m.frequency.value(), m.damping.value()))
                .sum();
            SpectrumPoint { probe, intensity }
        })
        .collect()
}

pub fn empty_cavity_spectrum(
    omega: AngularFrequency,
    kappa: AngularFrequency,
    probes: &[AngularFrequency],
) -> Vec<SpectrumPoint> {
    probes
        .iter()
        .map(|&probe| SpectrumPoint { probe, intensity: unit_lorentzian(probe.value(), omega.value(), kappa.value()) })
        .collect()
}

/// A bare oscillator: resonance and field decay rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LossyMode {
    pub frequency: AngularFrequency,
    pub decay: AngularFrequency,
}

impl LossyMode {
    pub fn new(frequency: AngularFrequency, decay: AngularFrequency) -> Result<Self> {
        ensure_positive("frequency", frequency.value())?;
        ensure_non_negative("decay", decay.value())?;
        Ok(Self { frequency, decay })
    }

    fn complex(&self) -> Complex64 {
        Complex64::new(self.frequency.value(), -self.decay.value())
    }
}

/// Two tunnel-coupled cavities with one emitter coupled to the first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhotonicMolecule {
    pub cavity1: LossyMode,
    pub cavity2: LossyMode,
    pub tunnel_coupling: AngularFrequency,
    pub emitter: LossyMode,
    pub g_to_cavity1: AngularFrequency,
}

impl PhotonicMolecule {
    pub fn new(
        cavity1: LossyMode,
        cavity2: LossyMode,
        tunnel_coupling: AngularFrequency,
        emitter: LossyMode,
        g_to_cavity1: AngularFrequency,
    ) -> Result<Self> {
        ensure_non_negative("J", tunnel_coupling.value())?;
        ensure_non_negative("g", g_to_cavity1.value())?;
        Ok(Self { cavity1, cavity2, tunnel_coupling, emitter, g_to_cavity1 })
    }

    pub fn with_emitter_frequency(&self, nu: AngularFrequency) -> Result<Self> {
        Self::new(
            self.cavity1,
            self.cavity2,
            self.tunnel_coupling,
            LossyMode::new(nu, self.emitter.decay)?,
            self.g_to_cavity1,
        )
    }

    /// `[[ω₁−iκ₁, J, g], [J, ω₂−iκ₂, 0], [g, 0, ν−iγ]]`
    pub fn matrix(&self) -> Matrix3<Complex64> {
        let j = Complex64::new(self.tunnel_coupling.value(), 0.0);
        let g = Complex64::new(self.g_to_cavity1.value(), 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Matrix3::new(self.cavity1.complex(), j, g, j, self.cavity2.complex(), zero, g, zero, self.emitter.complex())
    }
}

/// Eigenmodes of the photonic molecule, sorted by ascending frequency.
pub fn photonic_molecule_eigenfrequencies(molecule: &PhotonicMolecule) -> Result<[ComplexEigenmode; 3]> {
    let mut m = molecule.matrix();
    // Work relative to the mean diagonal so the solver resolves splittings
    // that are tiny next to optical frequencies.
    let shift = Complex64::new((m[(0, 0)].re + m[(1, 1)].re + m[(2, 2)].re) / 3.0, 0.0);
    for i in 0..3 {
        m[(i, i)] -= shift;
    }
    let eig = non_hermitian_eigenvalues3(m)?;
    let mut modes = eig.map(|z| ComplexEigenmode::from_complex(z + shift));
    modes.sort_by(|a, b| a.frequency.value().total_cmp(&b.frequency.value()));
    Ok(modes)
}

fn non_hermitian_eigenvalues3(m: Matrix3<Complex64>) -> Result<[Complex64; 3]> {
    let schur = Schur::try_new(m, f64::EPSILON * 1e-2, 10_000)
        .ok_or_else(|| Error::Numerical("Schur decomposition did not converge".into()))?;
    let eig = schur.eigenvalues().ok_or_else(|| Error::Numerical("Schur form is not triangular".into()))?;
    let out = [eig[0], eig[1], eig[2]];
    if out.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::Numerical("eigenvalues are not finite".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ghz(f: f64) -> AngularFrequency {
        AngularFrequency::from_ghz(f).unwrap()
    }

    /// Cavity at 300 THz with rates quoted as linear GHz.
    fn sys(delta: f64, g: f64, kappa: f64, gamma: f64) -> LossySystem {
        let omega = ghz(300_000.0);
        LossySystem::new(omega, omega + ghz(delta), ghz(g), ghz(kappa), ghz(gamma)).unwrap()
    }

    #[test]
    fn uncoupled_limit_returns_bare_modes() {
        let s = sys(7.0, 0.0, 10.0, 1.0);
        let pair = complex_eigenfrequencies(&s);
        let modes = [pair.plus, pair.minus];
        let cavity = ComplexEigenmode { frequency: s.omega(), damping: s.kappa() };
        let emitter = ComplexEigenmode { frequency: s.nu(), damping: s.gamma() };
        assert!(modes.contains(&cavity));
        assert!(modes.contains(&emitter));
        assert_eq!(pair.plus, emitter);
    }

    #[test]
    fn strong_coupling_on_resonance() {
        let s = sys(0.0, 20.0, 10.0, 0.0);
        let pair = complex_eigenfrequencies(&s);
        let (g, k) = (ghz(20.0).value(), ghz(10.0).value());
        let r = (g * g - k * k / 4.0).sqrt();
        assert_relative_eq!(pair.plus.frequency.value(), s.omega().value() + r, max_relative = 1e-15);
        assert_relative_eq!(pair.minus.frequency.value(), s.omega().value() - r, max_relative = 1e-15);
        assert_relative_eq!(pair.plus.damping.value(), k / 2.0, max_relative = 1e-12);
        assert_relative_eq!(pair.minus.damping.value(), k / 2.0, max_relative = 1e-12);
        let split = rabi_splitting(&s).value().unwrap();
        // 2√(400 − 25) GHz
        assert_relative_eq!(split.to_ghz(), 38.729_833_462_074_17, max_relative = 1e-12);
    }

    #[test]
    fn splitting_limits() {
        let s = sys(0.0, 20.0, 0.2, 0.0);
        let split = rabi_splitting(&s).value().unwrap();
        assert!((split.value() - 2.0 * ghz(20.0).value()).abs() / (2.0 * ghz(20.0).value()) < 1e-4);
        assert_eq!(rabi_splitting(&sys(0.0, 1.0, 100.0, 0.0)), RabiSplitting::NoSplitting);
        assert_eq!(rabi_splitting(&sys(0.0, 5.0, 10.0, 0.0)), RabiSplitting::NoSplitting);
    }

    #[test]
    fn purcell_rates_track_exact_dampings() {
        let s = sys(0.0, 1.0, 100.0, 0.0);
        let rates = purcell_regime_rates(&s).unwrap();
        let (slow, fast) = complex_eigenfrequencies(&s).by_damping();
        let correction = (ghz(1.0).value() / ghz(100.0).value()).powi(2);
        let rel = |a: f64, b: f64| (a - b).abs() / b;
        assert!(rel(slow.energy_decay_rate().value(), rates.emitter_like.value()) <= 2.0 * correction);
        assert!(rel(fast.energy_decay_rate().value(), rates.cavity_like.value()) <= 2.0 * correction);
        assert_eq!(slow.frequency, fast.frequency);
        assert!(purcell_regime_rates(&sys(0.0, 20.0, 10.0, 0.0)).is_err());
    }

    #[test]
    fn regime_classification() {
        assert_eq!(classify_regime(&sys(0.0, 20.0, 10.0, 1.0), &Default::default()).regime, Regime::Strong);
        assert_eq!(classify_regime(&sys(0.0, 1.0, 100.0, 0.05), &Default::default()).regime, Regime::Purcell);
        assert_eq!(classify_regime(&sys(0.0, 4.0, 10.0, 1.0), &Default::default()).regime, Regime::Intermediate);
        let strict = RegimeThresholds { strong_kappa_over_gamma: 10.0, ..Default::default() };
        let report = classify_regime(&sys(0.0, 20.0, 8.0, 1.0), &strict);
        assert_eq!(report.regime, Regime::Intermediate);
        assert!(report.criteria.g_exceeds_half_kappa);
        assert!(!report.criteria.kappa_dominates_gamma);
    }

    #[test]
    fn spectra() {
        let s = sys(0.0, 0.0, 10.0, 1.0);
        let at_peak = transmission_spectrum(&s, &[s.omega()]);
        assert_eq!(at_peak[0].intensity, 1.0);
        let hw = transmission_spectrum(&s, &[s.omega() + s.kappa()]);
        assert_relative_eq!(hw[0].intensity, 0.5, max_relative = 1e-6);

        let strong = sys(0.0, 20.0, 2.0, 0.0);
        let pair = complex_eigenfrequencies(&strong);
        let probes = [pair.minus.frequency, strong.omega(), pair.plus.frequency];
        let spec = transmission_spectrum(&strong, &probes);
        assert!(spec[1].intensity < spec[0].intensity);
        assert!(spec[1].intensity < spec[2].intensity);
        // each peak is a local maximum
        for (centre, idx) in [(pair.minus.frequency, 0), (pair.plus.frequency, 2)] {
            let around = transmission_spectrum(&strong, &[centre - ghz(0.01), centre + ghz(0.01)]);
            assert!(around.iter().all(|p| p.intensity < spec[idx].intensity));
        }
    }

    #[test]
    fn peak_fwhm_equals_kappa_in_strong_coupling() {
        let strong = sys(0.0, 50.0, 2.0, 0.0);
        let pair = complex_eigenfrequencies(&strong);
        let peak = pair.plus.frequency.value();
        let peak_val = transmission_spectrum(&strong, &[pair.plus.frequency])[0].intensity;
        // bisect for the half-maximum on either side
        let half = |dir: f64| {
            let (mut lo, mut hi) = (0.0, ghz(20.0).value());
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let v =
                    transmission_spectrum(&strong, &[AngularFrequency::new(peak + dir * mid).unwrap()])[0].intensity;
                if v > 0.5 * peak_val {
                    lo = mid
                } else {
                    hi = mid
                }
            }
            0.5 * (lo + hi)
        };
        let fwhm = half(1.0) + half(-1.0);
        assert_relative_eq!(fwhm, ghz(2.0).value(), max_relative = 1e-3);
    }

    #[test]
    fn photonic_molecule_symmetric_splitting() {
        let w0 = ghz(300_000.0);
        let j = ghz(50.0);
        let cav = LossyMode::new(w0, AngularFrequency::ZERO).unwrap();
        let emitter = LossyMode::new(w0 + ghz(400.0), AngularFrequency::ZERO).unwrap();
        let m = PhotonicMolecule::new(cav, cav, j, emitter, AngularFrequency::ZERO).unwrap();
        let modes = photonic_molecule_eigenfrequencies(&m).unwrap();
        assert_relative_eq!(modes[0].frequency.value(), (w0 - j).value(), max_relative = 1e-14);
        assert_relative_eq!(modes[1].frequency.value(), (w0 + j).value(), max_relative = 1e-14);
        assert_relative_eq!(modes[2].frequency.value(), emitter.frequency.value(), max_relative = 1e-14);
        assert_relative_eq!((modes[1].frequency - modes[0].frequency).value(), 2.0 * j.value(), max_relative = 1e-9);
    }

    #[test]
    fn photonic_molecule_without_tunneling_reduces_to_single_cavity() {
        let s = sys(3.0, 15.0, 8.0, 1.0);
        let cav2 = LossyMode::new(s.omega() + ghz(500.0), ghz(6.0)).unwrap();
        let m = PhotonicMolecule::new(
            LossyMode::new(s.omega(), s.kappa()).unwrap(),
            cav2,
            AngularFrequency::ZERO,
            LossyMode::new(s.nu(), s.gamma()).unwrap(),
            s.g(),
        )
        .unwrap();
        let modes = photonic_molecule_eigenfrequencies(&m).unwrap();
        let pair = complex_eigenfrequencies(&s);
        let (centre, _) = centre_and_root(&s);
        for expected in [pair.minus, pair.plus, ComplexEigenmode { frequency: cav2.frequency, damping: cav2.decay }] {
            let best =
                modes.iter().map(|m| (m.as_complex() - expected.as_complex()).norm()).fold(f64::INFINITY, f64::min);
            assert!(best <= 1e-9 * (expected.as_complex() - centre).norm().max(ghz(1.0).value()), "{best}");
        }
    }

    proptest::proptest! {
        #[test]
        fn detuned_eigenvalues_solve_the_characteristic_polynomial(
            delta in -80.0f64..80.0, g in 0.0f64..40.0, kappa in 0.1f64..60.0, gamma in 0.0f64..20.0,
        ) {
            let s = sys(delta, g, kappa, gamma);
            let (centre, _) = centre_and_root(&s);
            // relative to the centre so the optical carrier does not swamp the check
            let a = Complex64::new(s.omega().value(), -s.kappa().value()) - centre;
            let b = Complex64::new(s.nu().value(), -s.gamma().value()) - centre;
            let g2 = s.g().value().powi(2);
            let pair = complex_eigenfrequencies(&s);
            for mode in [pair.plus, pair.minus] {
                let l = mode.as_complex() - centre;
                let residual = (a - l) * (b - l) - g2;
                let scale = (a.norm() + b.norm() + s.g().value()).powi(2);
                proptest::prop_assert!(residual.norm() <= 1e-6 * scale, "{residual}");
            }
        }
    }
}
