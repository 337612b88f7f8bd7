//! Quantum-dot level structure in the effective-mass approximation.
//!
//! Each carrier sees a harmonic in-plane potential `½m ω₀²(x²+y²)` and an
//! infinite well `0 ≤ z ≤ L` along the growth axis, so
//!
//! ```text
//! E = (nx + ny + 1)ħω₀ + (πħ nz / L)² / 2m
//! ψ = N · H_nx(αx) H_ny(αy) · exp(−α²(x²+y²)/2) · sin(π nz z / L),   α = √(mω₀/ħ)
//! ```
//!
//! Hole energies are counted positive downward into the valence band and
//! masses are stored as magnitudes, so a photon energy is always
//! `E_gap + E_e + E_h`.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{ensure_non_negative, ensure_positive, Error, Result};
use crate::quantities::{Energy, ELECTRON_CHARGE, ELECTRON_MASS, EPSILON0, HBAR};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Particle {
    Electron,
    Hole,
}

impl fmt::Display for Particle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Particle::Electron => "electron",
            Particle::Hole => "hole",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QDotSpec {
    /// |m_eff| of the electron, kg.
    pub m_eff_e: f64,
    /// |m_eff| of the hole, kg.
    pub m_eff_h: f64,
    pub hbar_omega0_e: Energy,
    pub hbar_omega0_h: Energy,
    /// Dot height along z, metres.
    pub height: f64,
    pub band_gap: Energy,
}

/// JSON layout of a dot, in the units people quote.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QDotSpecFile {
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
}

impl QDotSpecFile {
    pub fn to_spec(&self) -> Result<QDotSpec> {
        QDotSpec::new(
            self.m_eff_e_m0 * ELECTRON_MASS,
            self.m_eff_h_m0 * ELECTRON_MASS,
            Energy::from_mev(self.hbar_omega0_e_mev)?,
            Energy::from_mev(self.hbar_omega0_h_mev)?,
            self.l_nm * 1e-9,
            Energy::from_ev(self.band_gap_ev)?,
        )
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

const OMEGA0_SANITY_MEV: (f64, f64) = (1.0, 500.0);

impl QDotSpec {
    pub fn new(
        m_eff_e: f64,
        m_eff_h: f64,
        hbar_omega0_e: Energy,
        hbar_omega0_h: Energy,
        height: f64,
        band_gap: Energy,
    ) -> Result<Self> {
        ensure_positive("m_eff_e", m_eff_e)?;
        ensure_positive("m_eff_h", m_eff_h)?;
        ensure_positive("hbar_omega0_e", hbar_omega0_e.joules())?;
        ensure_positive("hbar_omega0_h", hbar_omega0_h.joules())?;
        ensure_positive("L", height)?;
        ensure_non_negative("band_gap", band_gap.joules())?;
        Ok(Self { m_eff_e, m_eff_h, hbar_omega0_e, hbar_omega0_h, height, band_gap })
    }

    /// Electron and hole share mass and confinement.
    pub fn symmetric(m_eff: f64, hbar_omega0: Energy, height: f64, band_gap: Energy) -> Result<Self> {
        Self::new(m_eff, m_eff, hbar_omega0, hbar_omega0, height, band_gap)
    }

    /// Every length scaled by `s`: `L → sL` and `ω₀ → ω₀/s²`.
    pub fn dilated(&self, s: f64) -> Result<Self> {
        ensure_positive("s", s)?;
        Self::new(
            self.m_eff_e,
            self.m_eff_h,
            self.hbar_omega0_e * (1.0 / (s * s)),
            self.hbar_omega0_h * (1.0 / (s * s)),
            self.height * s,
            self.band_gap,
        )
    }

    /// Human-readable notes for parameters outside the usual window.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (p, e) in [(Particle::Electron, self.hbar_omega0_e), (Particle::Hole, self.hbar_omega0_h)] {
            let mev = e.to_mev();
            if !(OMEGA0_SANITY_MEV.0..=OMEGA0_SANITY_MEV.1).contains(&mev) {
                out.push(format!(
                    "{p} confinement ħω₀ = {mev:.3} meV is outside [{}, {}] meV",
                    OMEGA0_SANITY_MEV.0, OMEGA0_SANITY_MEV.1
                ));
            }
        }
        out
    }

    pub fn mass(&self, particle: Particle) -> f64 {
        match particle {
            Particle::Electron => self.m_eff_e,
            Particle::Hole => self.m_eff_h,
        }
    }

    pub fn hbar_omega0(&self, particle: Particle) -> Energy {
        match particle {
            Particle::Electron => self.hbar_omega0_e,
            Particle::Hole => self.hbar_omega0_h,
        }
    }

    /// In-plane inverse length `α = √(mω₀/ħ)`.
    pub fn alpha(&self, particle: Particle) -> f64 {
        let m = self.mass(particle);
        (m * self.hbar_omega0(particle).joules()).sqrt() / HBAR
    }

    /// Ground-state energy of the z well, `(πħ/L)²/2m`.
    pub fn well_energy(&self, particle: Particle) -> Energy {
        let k = PI * HBAR / self.height;
        Energy::from_raw(k * k / (2.0 * self.mass(particle)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LevelIndex {
    pub nx: u32,
    pub ny: u32,
    pub nz: u32,
}

impl LevelIndex {
    pub fn new(nx: u32, ny: u32, nz: u32) -> Result<Self> {
        if nz < 1 {
            return Err(Error::invalid("nz", "must be a positive integer"));
        }
        Ok(Self { nx, ny, nz })
    }

    pub const GROUND: LevelIndex = LevelIndex { nx: 0, ny: 0, nz: 1 };

    pub fn shell(&self) -> u32 {
        self.nx + self.ny
    }
}

impl fmt::Display for LevelIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.nx, self.ny, self.nz)
    }
}

pub fn level_energy(spec: &QDotSpec, particle: Particle, idx: LevelIndex) -> Result<Energy> {
    if idx.nz < 1 {
        return Err(Error::invalid("nz", "must be a positive integer"));
    }
    let harmonic = spec.hbar_omega0(particle) * (idx.shell() as f64 + 1.0);
    let well = spec.well_energy(particle) * (idx.nz as f64).powi(2);
    Ok(harmonic + well)
}

/// Number of `(nx, ny)` pairs with `nx + ny = shell`.
pub fn level_degeneracy(shell: u32) -> u32 {
    shell + 1
}

/// All in-plane indices of one shell, for a fixed `nz`.
pub fn shell_levels(shell: u32, nz: u32) -> impl Iterator<Item = LevelIndex> {
    (0..=shell).map(move |nx| LevelIndex { nx, ny: shell - nx, nz })
}

/// Physicists' Hermite polynomial `H_n(x)` by the three-term recurrence.
pub fn hermite(n: u32, x: f64) -> f64 {
    let mut h_prev = 1.0;
    if n == 0 {
        return h_prev;
    }
    let mut h = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * h - 2.0 * k as f64 * h_prev;
        h_prev = h;
        h = next;
    }
    h
}

/// Normalized 1D oscillator eigenfunction.
fn oscillator_function(n: u32, alpha: f64, x: f64) -> f64 {
    let u = alpha * x;
    // (α/√π)^½ / √(2ⁿ n!)
    let mut norm = (alpha / PI.sqrt()).sqrt();
    for k in 1..=n {
        norm /= (2.0 * k as f64).sqrt();
    }
    norm * hermite(n, u) * (-0.5 * u * u).exp()
}

/// Unit-norm envelope wavefunction; zero outside `0 ≤ z ≤ L`.
pub fn envelope_wavefunction(spec: &QDotSpec, particle: Particle, idx: LevelIndex, point: [f64; 3]) -> f64 {
    let [x, y, z] = point;
    if !(0.0..=spec.height).contains(&z) {
        return 0.0;
    }
    let alpha = spec.alpha(particle);
    let zpart = (2.0 / spec.height).sqrt() * (PI * idx.nz as f64 * z / spec.height).sin();
    oscillator_function(idx.nx, alpha, x) * oscillator_function(idx.ny, alpha, y) * zpart
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransitionLine {
    pub electron: LevelIndex,
    pub hole: LevelIndex,
    pub photon_energy: Energy,
}

/// Electron–hole recombination lines with `n_z = 1`, all pairs up to
/// `max_shell`, sorted by photon energy. No selection rules are applied.
pub fn transition_lines(spec: &QDotSpec, max_shell: u32) -> Vec<TransitionLine> {
    transition_lines_up_to_nz(spec, max_shell, 1)
}

pub fn transition_lines_up_to_nz(spec: &QDotSpec, max_shell: u32, max_nz: u32) -> Vec<TransitionLine> {
    let levels: Vec<LevelIndex> =
        (1..=max_nz).flat_map(|nz| (0..=max_shell).flat_map(move |s| shell_levels(s, nz))).collect();
    let mut lines = Vec::with_capacity(levels.len() * levels.len());
    for &e in &levels {
        let ee = level_energy(spec, Particle::Electron, e).expect("nz >= 1");
        for &h in &levels {
            let eh = level_energy(spec, Particle::Hole, h).expect("nz >= 1");
            lines.push(TransitionLine { electron: e, hole: h, photon_energy: spec.band_gap + ee + eh });
        }
    }
    lines.sort_by(|a, b| {
        a.photon_energy
            .joules()
            .total_cmp(&b.photon_energy.joules())
            .then_with(|| (a.electron, a.hole).cmp(&(b.electron, b.hole)))
    });
    lines
}

/// Samples `z/L` from `2 sin²(πu)` on [0, 1] by inverting a tabulated CDF.
struct WellSampler {
    cdf: Vec<f64>,
}

const WELL_TABLE_BINS: usize = 4096;

impl WellSampler {
    fn new() -> Self {
        let cdf = (0..=WELL_TABLE_BINS)
            .map(|k| {
                let u = k as f64 / WELL_TABLE_BINS as f64;
                u - (2.0 * PI * u).sin() / (2.0 * PI)
            })
            .collect();
        Self { cdf }
    }

    fn sample(&self, r: f64) -> f64 {
        // first bin edge with cdf > r
        let k = self.cdf.partition_point(|&c| c <= r).clamp(1, WELL_TABLE_BINS);
        let (c0, c1) = (self.cdf[k - 1], self.cdf[k]);
        let t = if c1 > c0 { (r - c0) / (c1 - c0) } else { 0.0 };
        ((k - 1) as f64 + t) / WELL_TABLE_BINS as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoulombEstimate {
    pub delta_e: Energy,
    pub std_err: Energy,
    pub samples: u64,
}

pub const MIN_COULOMB_SAMPLES: u64 = 10_000;

/// First-order Coulomb shift `⟨0|H_c|0⟩` of the ground electron–hole pair.
///
/// Electron and hole positions are drawn independently from their ground
/// densities `|ψ₀|²` and the attractive kernel `−e²/(4πε₀ε_r|r_e − r_h|)` is
/// averaged. Deterministic for a given seed.
pub fn coulomb_correction_mc(spec: &QDotSpec, epsilon_r: f64, samples: u64, seed: u64) -> Result<CoulombEstimate> {
    if samples < MIN_COULOMB_SAMPLES {
        return Err(Error::invalid("samples", format!("need at least {MIN_COULOMB_SAMPLES} samples, got {samples}")));
    }
    if !(epsilon_r >= 1.0 && epsilon_r.is_finite()) {
        return Err(Error::invalid("epsilon_r", format!("must be >= 1, got {epsilon_r}")));
    }
    // |φ₀(x)|² ∝ exp(−α²x²): a normal law with σ = 1/(√2 α)
    let sigma_e = 1.0 / (2f64.sqrt() * spec.alpha(Particle::Electron));
    let sigma_h = 1.0 / (2f64.sqrt() * spec.alpha(Particle::Hole));
    let normal_e = Normal::new(0.0, sigma_e).map_err(|e| Error::Numerical(e.to_string()))?;
    let normal_h = Normal::new(0.0, sigma_h).map_err(|e| Error::Numerical(e.to_string()))?;
    let well = WellSampler::new();
    let l = spec.height;
    let prefactor = ELECTRON_CHARGE * ELECTRON_CHARGE / (4.0 * PI * EPSILON0 * epsilon_r);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Welford running mean / variance of 1/r
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for i in 0..samples {
        let dx = normal_e.sample(&mut rng) - normal_h.sample(&mut rng);
        let dy = normal_e.sample(&mut rng) - normal_h.sample(&mut rng);
        let ze = well.sample(rng.random::<f64>()) * l;
        let zh = well.sample(rng.random::<f64>()) * l;
        let dz = ze - zh;
        let r = (dx * dx + dy * dy + dz * dz).sqrt();
        let inv_r = if r > 0.0 { 1.0 / r } else { 0.0 };
        let delta = inv_r - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (inv_r - mean);
    }
    let n = samples as f64;
    let std_err = (m2 / (n - 1.0)).sqrt() / n.sqrt();
    Ok(CoulombEstimate {
        delta_e: Energy::from_raw(-prefactor * mean),
        std_err: Energy::from_raw(prefactor * std_err),
        samples,
    })
}

/// Quoted range of the extra energy needed to add each same-sign carrier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChargingEnergyRange {
    pub min: Energy,
    pub max: Energy,
}

impl fmt::Display for ChargingEnergyRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}–{} meV", round_mev(self.min), round_mev(self.max))
    }
}

fn round_mev(e: Energy) -> f64 {
    (e.to_mev() * 1e6).round() / 1e6
}

/// 10–20 meV per added carrier of the same sign; metadata for labelling
/// charged-exciton lines, not a computed value.
pub fn charging_energy_note() -> ChargingEnergyRange {
    ChargingEnergyRange {
        min: Energy::from_raw(10e-3 * ELECTRON_CHARGE),
        max: Energy::from_raw(20e-3 * ELECTRON_CHARGE),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::{DMatrix, SymmetricEigen};

    fn typical() -> QDotSpec {
        QDotSpec::symmetric(0.05 * ELECTRON_MASS, Energy::from_mev(50.0).unwrap(), 5e-9, Energy::from_ev(1.0).unwrap())
            .unwrap()
    }

    #[test]
    fn level_energy_examples() {
        let s = typical();
        let e = level_energy(&s, Particle::Electron, LevelIndex::GROUND).unwrap();
        // mpmath: (πħ/L)²/2m = 300.8241297742839 meV
        assert_relative_eq!(e.to_mev(), 50.0 + 300.824_129_774_283_9, max_relative = 1e-9);
        let e101 = level_energy(&s, Particle::Electron, LevelIndex::new(1, 0, 1).unwrap()).unwrap();
        assert_relative_eq!((e101 - e).to_mev(), 50.0, max_relative = 1e-12);
        let e002 = level_energy(&s, Particle::Electron, LevelIndex::new(0, 0, 2).unwrap()).unwrap();
        assert_relative_eq!(
            (e002 - e).joules(),
            3.0 * s.well_energy(Particle::Electron).joules(),
            max_relative = 1e-12
        );
        assert!(LevelIndex::new(0, 0, 0).is_err());
        assert!(level_energy(&s, Particle::Hole, LevelIndex { nx: 0, ny: 0, nz: 0 }).is_err());
    }

    #[test]
    fn energies_increase_with_each_quantum_number() {
        let s = typical();
        for nx in 0..4 {
            for ny in 0..4 {
                for nz in 1..4 {
                    let e = level_energy(&s, Particle::Hole, LevelIndex::new(nx, ny, nz).unwrap()).unwrap();
                    for next in [
                        LevelIndex::new(nx + 1, ny, nz).unwrap(),
                        LevelIndex::new(nx, ny + 1, nz).unwrap(),
                        LevelIndex::new(nx, ny, nz + 1).unwrap(),
                    ] {
                        assert!(level_energy(&s, Particle::Hole, next).unwrap() > e);
                    }
                }
            }
        }
    }

    #[test]
    fn degeneracy_matches_enumeration() {
        for shell in 0..=10u32 {
            let brute =
                (0..=shell).flat_map(|a| (0..=shell).map(move |b| (a, b))).filter(|(a, b)| a + b == shell).count();
            assert_eq!(level_degeneracy(shell) as usize, brute);
            assert_eq!(shell_levels(shell, 1).count(), brute);
        }
        assert_eq!(level_degeneracy(5), 6);
    }

    #[test]
    fn hermite_values() {
        assert_eq!(hermite(0, 0.3), 1.0);
        assert_eq!(hermite(1, 0.3), 0.6);
        assert_relative_eq!(hermite(2, 0.3), 4.0 * 0.09 - 2.0);
        assert_relative_eq!(hermite(3, 0.3), 8.0 * 0.027 - 12.0 * 0.3);
        assert_relative_eq!(hermite(4, 1.5), 16.0 * 5.0625 - 48.0 * 2.25 + 12.0);
    }

    #[test]
    fn envelope_nodes() {
        let s = typical();
        let g = LevelIndex::GROUND;
        assert_eq!(envelope_wavefunction(&s, Particle::Electron, g, [1e-9, 0.0, 0.0]), 0.0);
        let peak = envelope_wavefunction(&s, Particle::Electron, g, [0.0, 0.0, 2.5e-9]);
        assert!(envelope_wavefunction(&s, Particle::Electron, g, [1e-9, 0.0, 5e-9]).abs() < 1e-12 * peak);
        assert_eq!(envelope_wavefunction(&s, Particle::Electron, g, [0.0, 0.0, -1e-10]), 0.0);
        assert_eq!(envelope_wavefunction(&s, Particle::Electron, g, [0.0, 0.0, 6e-9]), 0.0);
        let p = LevelIndex::new(1, 0, 1).unwrap();
        assert_eq!(envelope_wavefunction(&s, Particle::Electron, p, [0.0, 2e-9, 2.5e-9]), 0.0);
    }

    /// Golub–Welsch nodes/weights for a symmetric Jacobi matrix.
    fn golub_welsch(diag: &[f64], off: &[f64], mu0: f64) -> Vec<(f64, f64)> {
        let n = diag.len();
        let mut j = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            j[(i, i)] = diag[i];
            if i + 1 < n {
                j[(i, i + 1)] = off[i];
                j[(i + 1, i)] = off[i];
            }
        }
        let eig = SymmetricEigen::new(j);
        (0..n).map(|i| (eig.eigenvalues[i], mu0 * eig.eigenvectors[(0, i)].powi(2))).collect()
    }

    /// Gauss–Hermite rule for weight exp(−u²).
    fn gauss_hermite(n: usize) -> Vec<(f64, f64)> {
        let off: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
        golub_welsch(&vec![0.0; n], &off, PI.sqrt())
    }

    /// Gauss–Legendre rule on [0, 1].
    fn gauss_legendre_unit(n: usize) -> Vec<(f64, f64)> {
        let off: Vec<f64> = (1..n).map(|k| k as f64 / ((4 * k * k - 1) as f64).sqrt()).collect();
        golub_welsch(&vec![0.0; n], &off, 2.0).into_iter().map(|(x, w)| (0.5 * (x + 1.0), 0.5 * w)).collect()
    }

    fn overlap(s: &QDotSpec, p: Particle, a: LevelIndex, b: LevelIndex) -> f64 {
        let alpha = s.alpha(p);
        let gh = gauss_hermite(24);
        let gl = gauss_legendre_unit(40);
        let mut acc = 0.0;
        for &(ux, wx) in &gh {
            for &(uy, wy) in &gh {
                for &(uz, wz) in &gl {
                    let r = [ux / alpha, uy / alpha, uz * s.height];
                    let f = envelope_wavefunction(s, p, a, r) * envelope_wavefunction(s, p, b, r);
                    acc += wx * wy * wz * f * (ux * ux + uy * uy).exp();
                }
            }
        }
        acc * s.height / (alpha * alpha)
    }

    #[test]
    fn envelopes_are_orthonormal_through_shell_three() {
        let s = QDotSpec::new(
            0.05 * ELECTRON_MASS,
            0.3 * ELECTRON_MASS,
            Energy::from_mev(50.0).unwrap(),
            Energy::from_mev(25.0).unwrap(),
            5e-9,
            Energy::ZERO,
        )
        .unwrap();
        let levels: Vec<LevelIndex> = (1..=2).flat_map(|nz| (0..=3).flat_map(move |sh| shell_levels(sh, nz))).collect();
        for p in [Particle::Electron, Particle::Hole] {
            for &a in &levels {
                for &b in &levels {
                    let o = overlap(&s, p, a, b);
                    let expected = if a == b { 1.0 } else { 0.0 };
                    assert!((o - expected).abs() < 1e-6, "{p} {a} {b}: {o}");
                }
            }
        }
    }

    /// Max relative residual of (H − E)ψ using a 7-point Laplacian of step h.
    fn envelope_residual(s: &QDotSpec, idx: LevelIndex, h: f64) -> f64 {
        let p = Particle::Electron;
        let m = s.mass(p);
        let w0 = s.hbar_omega0(p).joules() / HBAR;
        let e = level_energy(s, p, idx).unwrap().joules();
        let psi = |r: [f64; 3]| envelope_wavefunction(s, p, idx, r);
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 0.0;
        let a = 1.0 / s.alpha(p);
        for &x in &[-0.7 * a, 0.3 * a, 1.1 * a] {
            for &y in &[-0.4 * a, 0.9 * a] {
                for &zf in &[0.23, 0.5, 0.71] {
                    let r = [x, y, zf * s.height];
                    let c = psi(r);
                    let mut lap = -6.0 * c;
                    for d in 0..3 {
                        let mut rp = r;
                        let mut rm = r;
                        rp[d] += h;
                        rm[d] -= h;
                        lap += psi(rp) + psi(rm);
                    }
                    lap /= h * h;
                    let v = 0.5 * m * w0 * w0 * (x * x + y * y);
                    let h_psi = -HBAR * HBAR / (2.0 * m) * lap + v * c;
                    worst = worst.max((h_psi - e * c).abs());
                    scale = scale.max((e * c).abs());
                }
            }
        }
        worst / scale
    }

    #[test]
    fn envelopes_solve_the_effective_mass_equation() {
        let s = typical();
        for idx in [LevelIndex::GROUND, LevelIndex::new(1, 2, 1).unwrap(), LevelIndex::new(0, 1, 2).unwrap()] {
            let h0 = 0.2e-9;
            let r1 = envelope_residual(&s, idx, h0);
            let r2 = envelope_residual(&s, idx, h0 / 2.0);
            let r3 = envelope_residual(&s, idx, h0 / 4.0);
            assert!(r1 < 1e-2);
            // O(h²): each halving cuts the residual by about four
            for ratio in [r1 / r2, r2 / r3] {
                assert!((3.5..4.5).contains(&ratio), "{idx}: ratio {ratio}");
            }
        }
    }

    #[test]
    fn transition_line_examples() {
        let s = typical();
        let lines = transition_lines(&s, 1);
        assert_eq!(lines.len(), 9);
        let lowest = lines[0];
        assert_eq!((lowest.electron, lowest.hole), (LevelIndex::GROUND, LevelIndex::GROUND));
        let expected = s.band_gap
            + level_energy(&s, Particle::Electron, LevelIndex::GROUND).unwrap()
            + level_energy(&s, Particle::Hole, LevelIndex::GROUND).unwrap();
        assert_eq!(lowest.photon_energy, expected);
        assert!(lines.iter().all(|l| l.photon_energy >= s.band_gap));
        assert!(lines.windows(2).all(|w| w[0].photon_energy <= w[1].photon_energy));
        assert_eq!(transition_lines_up_to_nz(&s, 1, 2).len(), 36);
    }

    #[test]
    fn well_sampler_matches_density() {
        let w = WellSampler::new();
        assert_eq!(w.sample(0.0), 0.0);
        assert_relative_eq!(w.sample(0.5), 0.5, epsilon = 1e-12);
        assert!(w.sample(1.0 - 1e-16) <= 1.0);
        // inverse of the CDF at a few points
        for u in [0.1, 0.37, 0.8] {
            let c = u - (2.0 * PI * u).sin() / (2.0 * PI);
            assert!((w.sample(c) - u).abs() < 1e-6);
        }
    }

    #[test]
    fn coulomb_sign_and_magnitude() {
        let s = typical();
        let est = coulomb_correction_mc(&s, 12.9, 200_000, 3).unwrap();
        assert!(est.delta_e.joules() < 0.0);
        let mev = est.delta_e.to_mev().abs();
        assert!((10.0..=40.0).contains(&mev), "{mev}");
        assert!(est.std_err.to_mev() < 0.1);
    }

    #[test]
    fn coulomb_is_seed_deterministic() {
        let s = typical();
        let a = coulomb_correction_mc(&s, 12.9, 20_000, 42).unwrap();
        let b = coulomb_correction_mc(&s, 12.9, 20_000, 42).unwrap();
        assert_eq!(a.delta_e.joules().to_bits(), b.delta_e.joules().to_bits());
        let c = coulomb_correction_mc(&s, 12.9, 20_000, 43).unwrap();
        assert_ne!(a.delta_e.joules().to_bits(), c.delta_e.joules().to_bits());
    }

    #[test]
    fn coulomb_rejects_bad_inputs() {
        let s = typical();
        assert!(coulomb_correction_mc(&s, 12.9, 9_999, 0).is_err());
        assert!(coulomb_correction_mc(&s, 0.5, 10_000, 0).is_err());
    }

    #[test]
    fn charging_note() {
        let c = charging_energy_note();
        assert_relative_eq!(c.min.to_mev(), 10.0, max_relative = 1e-12);
        assert_relative_eq!(c.max.to_mev(), 20.0, max_relative = 1e-12);
        assert!(c.min < c.max);
        assert_eq!(c.to_string(), "10–20 meV");
    }

    #[test]
    fn spec_file_layout() {
        let json = r#"{"m_eff_e_m0":0.05,"m_eff_h_m0":0.05,"hbar_omega0_e_meV":50,"hbar_omega0_h_meV":50,
                       "L_nm":5,"band_gap_eV":1.0,"epsilon_r":12.9}"#;
        let f: QDotSpecFile = serde_json::from_str(json).unwrap();
        let s = f.to_spec().unwrap();
        assert_relative_eq!(s.height, 5e-9);
        assert_relative_eq!(s.hbar_omega0_h.to_mev(), 50.0, max_relative = 1e-12);
        assert!(s.warnings().is_empty());
        let odd = QDotSpecFile { hbar_omega0_e_mev: 900.0, ..f }.to_spec().unwrap();
        assert_eq!(odd.warnings().len(), 1);
    }
}
