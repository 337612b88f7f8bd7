//! Emitter–field coupling from a sampled cavity mode.
//!
//! A [`FieldGrid`] holds ε(r) and the complex field E(r) on a regular voxel
//! grid. From it we get the mode volume
//!
//! ```text
//! V = Σ ε|E|² ΔxΔyΔz / max(ε|E|²)
//! ```
//!
//! and, for a dipole sitting in one voxel, the coupling
//! `g = g₀·|ψ|·cos ξ` with `g₀ = (μ/ħ)·√(ħω / 2ε_M V)`.
//!
//! Grids are indexed row-major: `(i, j, k)` maps to `(i·ny + j)·nz + k`.

use std::fs::File;
use std::io::{BufReader, Read, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_non_negative, ensure_positive, Error, Result};
use crate::numeric::CompensatedSum;
use crate::quantities::{AngularFrequency, EPSILON0, HBAR};

/// Complex field vector (x, y, z components).
pub type FieldVector = [Complex64; 3];

#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    dims: [usize; 3],
    spacing: [f64; 3],
    epsilon: Vec<f64>,
    e_field: Vec<FieldVector>,
}

/// On-disk layout of a [`FieldGrid`].
///
/// `e_field` holds one `[re_x, im_x, re_y, im_y, re_z, im_z]` entry per voxel.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldGridFile {
    pub dims: [usize; 3],
    pub spacing_m: [f64; 3],
    pub epsilon: Vec<f64>,
    pub e_field: Vec<[f64; 6]>,
}

impl FieldGrid {
    pub fn new(dims: [usize; 3], spacing: [f64; 3], epsilon: Vec<f64>, e_field: Vec<FieldVector>) -> Result<Self> {
        if dims.contains(&0) {
            return Err(Error::invalid("dims", "every dimension must be positive"));
        }
        for (axis, &h) in spacing.iter().enumerate() {
            ensure_positive(&format!("spacing[{axis}]"), h)?;
        }
        let n = dims[0]
            .checked_mul(dims[1])
            .and_then(|v| v.checked_mul(dims[2]))
            .ok_or_else(|| Error::invalid("dims", "voxel count overflows"))?;
        if epsilon.len() != n {
            return Err(Error::invalid("epsilon", format!("expected {n} entries, got {}", epsilon.len())));
        }
        if e_field.len() != n {
            return Err(Error::invalid("e_field", format!("expected {n} entries, got {}", e_field.len())));
        }
        if let Some(i) = epsilon.iter().position(|&e| !(e >= 1.0 && e.is_finite())) {
            return Err(Error::invalid(
                "epsilon",
                format!("relative permittivity must be finite and >= 1 (voxel {i} has {})", epsilon[i]),
            ));
        }
        if e_field.iter().flatten().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::invalid("e_field", "field samples must be finite"));
        }
        if e_field.iter().all(|v| field_norm_sqr(v) == 0.0) {
            return Err(Error::invalid("e_field", "field is zero everywhere"));
        }
        Ok(Self { dims, spacing, epsilon, e_field })
    }

    /// Builds a grid by sampling `f` at voxel centres. Voxel `(i, j, k)` sits
    /// at `origin + (i·Δx, j·Δy, k·Δz)`; `f` returns `(ε_r, E)` there.
    pub fn from_fn<F>(dims: [usize; 3], spacing: [f64; 3], origin: [f64; 3], mut f: F) -> Result<Self>
    where
        F: FnMut([f64; 3]) -> (f64, FieldVector),
    {
        let n = dims.iter().product();
        let mut epsilon = Vec::with_capacity(n);
        let mut e_field = Vec::with_capacity(n);
        for i in 0..dims[0] {
            for j in 0..dims[1] {
                for k in 0..dims[2] {
                    let r = [
                        origin[0] + i as f64 * spacing[0],
                        origin[1] + j as f64 * spacing[1],
                        origin[2] + k as f64 * spacing[2],
                    ];
                    let (eps, e) = f(r);
                    epsilon.push(eps);
                    e_field.push(e);
                }
            }
        }
        Self::new(dims, spacing, epsilon, e_field)
    }

    /// Isotropic Gaussian mode `|E|² = exp(−r²/σ²)`, x-polarized, uniform ε,
    /// on an odd grid centred on the maximum. The grid spans `±half_width`
    /// along each axis with `points` samples per axis.
    pub fn gaussian(sigma: f64, half_width: f64, points: usize, epsilon_r: f64) -> Result<Self> {
        ensure_positive("sigma", sigma)?;
        ensure_positive("half_width", half_width)?;
        if points < 1 || points.is_multiple_of(2) {
            return Err(Error::invalid("points", "must be odd so a sample sits on the maximum"));
        }
        let h = if points == 1 { 2.0 * half_width } else { 2.0 * half_width / (points - 1) as f64 };
        let origin = if points == 1 { 0.0 } else { -half_width };
        let zero = Complex64::new(0.0, 0.0);
        Self::from_fn([points; 3], [h; 3], [origin; 3], |r| {
            let r2 = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
            let amp = (-r2 / (2.0 * sigma * sigma)).exp();
            (epsilon_r, [Complex64::new(amp, 0.0), zero, zero])
        })
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn spacing(&self) -> [f64; 3] {
        self.spacing
    }

    pub fn voxel_volume(&self) -> f64 {
        self.spacing.iter().product()
    }

    pub fn len(&self) -> usize {
        self.epsilon.len()
    }

    pub fn is_empty(&self) -> bool {
        self.epsilon.is_empty()
    }

    pub fn linear_index(&self, index: [usize; 3]) -> Result<usize> {
        if index.iter().zip(self.dims.iter()).any(|(&i, &d)| i >= d) {
            return Err(Error::invalid("location", format!("{index:?} is outside grid of dims {:?}", self.dims)));
        }
        Ok((index[0] * self.dims[1] + index[1]) * self.dims[2] + index[2])
    }

    pub fn epsilon_at(&self, index: [usize; 3]) -> Result<f64> {
        Ok(self.epsilon[self.linear_index(index)?])
    }

    pub fn field_at(&self, index: [usize; 3]) -> Result<FieldVector> {
        Ok(self.e_field[self.linear_index(index)?])
    }

    /// Electric energy density `ε|E|²` (arbitrary units) per voxel.
    fn energy_density(&self, idx: usize) -> f64 {
        self.epsilon[idx] * field_norm_sqr(&self.e_field[idx])
    }

    /// Voxel of maximum `ε|E|²`; ties resolve to the lowest linear index.
    pub fn energy_maximum(&self) -> (usize, f64) {
        let mut best = (0, self.energy_density(0));
        for idx in 1..self.len() {
            let w = self.energy_density(idx);
            if w > best.1 {
                best = (idx, w);
            }
        }
        best
    }

    /// Multiplies every field sample by `factor`.
    pub fn scaled(&self, factor: Complex64) -> Result<Self> {
        let e_field = self.e_field.iter().map(|v| [v[0] * factor, v[1] * factor, v[2] * factor]).collect();
        Self::new(self.dims, self.spacing, self.epsilon.clone(), e_field)
    }

    pub fn from_file_layout(file: FieldGridFile) -> Result<Self> {
        let e_field = file
            .e_field
            .into_iter()
            .map(|c| [Complex64::new(c[0], c[1]), Complex64::new(c[2], c[3]), Complex64::new(c[4], c[5])])
            .collect();
        Self::new(file.dims, file.spacing_m, file.epsilon, e_field)
    }

    pub fn to_file_layout(&self) -> FieldGridFile {
        FieldGridFile {
            dims: self.dims,
            spacing_m: self.spacing,
            epsilon: self.epsilon.clone(),
            e_field: self.e_field.iter().map(|v| [v[0].re, v[0].im, v[1].re, v[1].im, v[2].re, v[2].im]).collect(),
        }
    }

    pub fn from_json_reader<R: Read>(reader: R) -> Result<Self> {
        let file: FieldGridFile = serde_json::from_reader(reader)?;
        Self::from_file_layout(file)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: FieldGridFile = serde_json::from_str(s)?;
        Self::from_file_layout(file)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let f = File::open(path)?;
        Self::from_json_reader(BufReader::new(f))
    }

    pub fn write_json<W: Write>(&self, writer: W) -> Result<()> {
        serde_json::to_writer(writer, &self.to_file_layout())?;
        Ok(())
    }
}

fn field_norm_sqr(v: &FieldVector) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum()
}

/// Mode volume in m³: `Σ ε|E|²·ΔV / max(ε|E|²)`.
///
/// Invariant under a global complex rescaling of the field. Summation is
/// compensated and in fixed voxel order, so the result is deterministic.
pub fn mode_volume(grid: &FieldGrid) -> Result<f64> {
    let (_, max_density) = grid.energy_maximum();
    if max_density <= 0.0 {
        return Err(Error::invalid("e_field", "maximum energy density is zero"));
    }
    let mut acc = CompensatedSum::default();
    for idx in 0..grid.len() {
        acc.add(grid.energy_density(idx) / max_density);
    }
    Ok(acc.total() * grid.voxel_volume())
}

/// Vacuum Rabi frequency `g₀ = (μ/ħ)·√(ħω / 2ε_M V)`.
///
/// `eps_m` is the absolute permittivity (F·m⁻¹) at the field maximum.
pub fn vacuum_rabi_g0(mu_eg: f64, omega: AngularFrequency, eps_m: f64, v_mode: f64) -> Result<AngularFrequency> {
    ensure_positive("mu_eg", mu_eg)?;
    ensure_positive("omega", omega.value())?;
    ensure_positive("eps_m", eps_m)?;
    ensure_positive("v_mode", v_mode)?;
    let g0 = mu_eg / HBAR * (HBAR * omega.value() / (2.0 * eps_m * v_mode)).sqrt();
    AngularFrequency::new(g0)
}

/// Transition dipole: magnitude `μ_eg` (C·m) and a real unit orientation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DipoleSpec {
    mu_eg: f64,
    orientation: [f64; 3],
}

impl DipoleSpec {
    pub fn new(mu_eg: f64, orientation: [f64; 3]) -> Result<Self> {
        ensure_non_negative("mu_eg", mu_eg)?;
        let norm = orientation.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !((norm - 1.0).abs() <= 1e-12) {
            return Err(Error::invalid("orientation", format!("must be a unit vector (norm {norm})")));
        }
        Ok(Self { mu_eg, orientation })
    }

    /// Normalizes `direction` before building the dipole.
    pub fn along(mu_eg: f64, direction: [f64; 3]) -> Result<Self> {
        let norm = direction.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::invalid("orientation", "direction must be nonzero and finite"));
        }
        Self::new(mu_eg, direction.map(|c| c / norm))
    }

    pub fn mu_eg(&self) -> f64 {
        self.mu_eg
    }

    pub fn orientation(&self) -> [f64; 3] {
        self.orientation
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingResult {
    pub g0: AngularFrequency,
    /// `E(r_E)/|E(r_M)|`; only its modulus enters `g`.
    pub psi: Complex64,
    pub cos_xi: f64,
    pub g: AngularFrequency,
    pub mode_volume: f64,
}

/// Coupling of `dipole` placed in voxel `location` to the grid's mode.
///
/// A zero field at the location is valid and yields `ψ = 0`, `g = 0`.
pub fn coupling_at_location(
    grid: &FieldGrid,
    dipole: &DipoleSpec,
    location: [usize; 3],
    omega: AngularFrequency,
) -> Result<CouplingResult> {
    let here = grid.linear_index(location)?;
    let (max_idx, _) = grid.energy_maximum();
    let v_mode = mode_volume(grid)?;
    let eps_m = grid.epsilon[max_idx] * EPSILON0;
    let g0 =
        if dipole.mu_eg == 0.0 { AngularFrequency::ZERO } else { vacuum_rabi_g0(dipole.mu_eg, omega, eps_m, v_mode)? };

    let e_here = &grid.e_field[here];
    let e_max_norm = field_norm_sqr(&grid.e_field[max_idx]).sqrt();
    let local_norm = field_norm_sqr(e_here).sqrt();
    if local_norm == 0.0 {
        return Ok(CouplingResult {
            g0,
            psi: Complex64::new(0.0, 0.0),
            cos_xi: 0.0,
            g: AngularFrequency::ZERO,
            mode_volume: v_mode,
        });
    }

    // Scalar amplitude carries the phase of the dominant component.
    let dominant =
        e_here.iter().copied().max_by(|a, b| a.norm_sqr().total_cmp(&b.norm_sqr())).expect("three components");
    let phase = Complex64::from_polar(1.0, dominant.arg());
    let psi = phase * (local_norm / e_max_norm);

    let projection: Complex64 = dipole.orientation.iter().zip(e_here.iter()).map(|(&d, &e)| e * d).sum();
    let cos_xi = (projection.norm() / local_norm).clamp(0.0, 1.0);

    let g = g0 * (psi.norm() * cos_xi);
    Ok(CouplingResult { g0, psi, cos_xi, g, mode_volume: v_mode })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantities::vacuum_wavelength_to_angular;
    use approx::assert_relative_eq;
    use std::f64::consts::{PI, TAU};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn uniform_grid(dims: [usize; 3], spacing: [f64; 3]) -> FieldGrid {
        FieldGrid::from_fn(dims, spacing, [0.0; 3], |_| (2.5, [c(0.3), c(0.0), c(-0.4)])).unwrap()
    }

    #[test]
    fn uniform_field_gives_box_volume() {
        let g = uniform_grid([4, 5, 6], [1e-8, 2e-8, 3e-8]);
        let box_volume = 4.0 * 1e-8 * 5.0 * 2e-8 * 6.0 * 3e-8;
        assert_relative_eq!(mode_volume(&g).unwrap(), box_volume, max_relative = 1e-14);
    }

    #[test]
    fn single_voxel_field_gives_voxel_volume() {
        let g = FieldGrid::from_fn([3, 3, 3], [1e-9, 2e-9, 4e-9], [0.0; 3], |r| {
            let on = r == [1e-9, 2e-9, 4e-9];
            (1.0, [c(if on { 5.0 } else { 0.0 }), c(0.0), c(0.0)])
        })
        .unwrap();
        assert_relative_eq!(mode_volume(&g).unwrap(), 8e-27, max_relative = 1e-14);
    }

    #[test]
    fn gaussian_mode_volume_matches_analytic_integral() {
        let sigma = 100e-9;
        let g = FieldGrid::gaussian(sigma, 6.0 * sigma, 49, 11.56).unwrap();
        let expected = (PI.sqrt() * sigma).powi(3);
        let v = mode_volume(&g).unwrap();
        assert!((v - expected).abs() / expected < 1e-2, "{v} vs {expected}");
    }

    #[test]
    fn rejects_bad_grids() {
        let zero = [c(0.0); 3];
        assert!(FieldGrid::new([1, 1, 1], [1.0; 3], vec![1.0], vec![zero]).is_err());
        assert!(FieldGrid::new([1, 1, 1], [1.0; 3], vec![0.5], vec![[c(1.0), c(0.0), c(0.0)]]).is_err());
        assert!(FieldGrid::new([2, 1, 1], [1.0; 3], vec![1.0], vec![[c(1.0), c(0.0), c(0.0)]]).is_err());
        assert!(FieldGrid::new([1, 1, 1], [0.0, 1.0, 1.0], vec![1.0], vec![[c(1.0), c(0.0), c(0.0)]]).is_err());
        assert!(FieldGrid::new([0, 1, 1], [1.0; 3], vec![], vec![]).is_err());
    }

    #[test]
    fn g0_scaling() {
        let w = AngularFrequency::new(2e15).unwrap();
        let base = vacuum_rabi_g0(1e-28, w, 1e-10, 1e-20).unwrap().value();
        assert_relative_eq!(vacuum_rabi_g0(2e-28, w, 1e-10, 1e-20).unwrap().value(), 2.0 * base, max_relative = 1e-14);
        assert_relative_eq!(
            vacuum_rabi_g0(1e-28, w, 1e-10, 0.25e-20).unwrap().value(),
            2.0 * base,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            vacuum_rabi_g0(1e-28, w * 4.0, 1e-10, 1e-20).unwrap().value(),
            2.0 * base,
            max_relative = 1e-14
        );
        assert!(vacuum_rabi_g0(1e-28, w, 0.0, 1e-20).is_err());
        assert!(vacuum_rabi_g0(1e-28, w, 1e-10, -1.0).is_err());
    }

    #[test]
    fn g0_for_typical_quantum_dot_cavity() {
        // Reference value from a 40-digit mpmath evaluation of the same formula.
        let lambda0 = 927e-9;
        let n: f64 = 3.4;
        let w = vacuum_wavelength_to_angular(lambda0).unwrap();
        let v = 0.7 * (lambda0 / n).powi(3);
        let g0 = vacuum_rabi_g0(1e-28, w, n * n * EPSILON0, v).unwrap();
        let ghz = g0.value() / TAU / 1e9;
        assert_relative_eq!(ghz, 40.994_344_301_814_95, max_relative = 1e-10);
        assert!((10.0..100.0).contains(&ghz));
    }

    fn standing_wave_grid() -> FieldGrid {
        // Field along x, amplitude 1 at i=2, 0.5 at i=1, 0 at i=0.
        FieldGrid::from_fn([5, 1, 1], [1e-8; 3], [0.0; 3], |r| {
            let i = (r[0] / 1e-8).round() as i32;
            let amp = match i {
                0 | 4 => 0.0,
                1 | 3 => 0.5,
                _ => 1.0,
            };
            (12.0, [c(amp), c(0.0), c(0.0)])
        })
        .unwrap()
    }

    #[test]
    fn coupling_examples() {
        let grid = standing_wave_grid();
        let w = AngularFrequency::new(2e15).unwrap();
        let aligned = DipoleSpec::new(1e-28, [1.0, 0.0, 0.0]).unwrap();
        let at_max = coupling_at_location(&grid, &aligned, [2, 0, 0], w).unwrap();
        assert_relative_eq!(at_max.g.value(), at_max.g0.value(), max_relative = 1e-15);
        assert_relative_eq!(at_max.psi.norm(), 1.0);
        assert_relative_eq!(at_max.cos_xi, 1.0);

        let half = coupling_at_location(&grid, &aligned, [1, 0, 0], w).unwrap();
        assert_relative_eq!(half.g.value(), 0.5 * half.g0.value(), max_relative = 1e-15);

        let ortho = DipoleSpec::new(1e-28, [0.0, 0.0, 1.0]).unwrap();
        let r = coupling_at_location(&grid, &ortho, [2, 0, 0], w).unwrap();
        assert_eq!(r.g.value(), 0.0);

        let node = coupling_at_location(&grid, &aligned, [0, 0, 0], w).unwrap();
        assert_eq!(node.psi.norm(), 0.0);
        assert_eq!(node.g.value(), 0.0);

        assert!(coupling_at_location(&grid, &aligned, [5, 0, 0], w).is_err());
        // g0 is built from ε_M = ε_r·ε₀ at the maximum and the grid volume
        let v = mode_volume(&grid).unwrap();
        let g0 = vacuum_rabi_g0(1e-28, w, 12.0 * EPSILON0, v).unwrap();
        assert_relative_eq!(at_max.g0.value(), g0.value(), max_relative = 1e-15);
    }

    #[test]
    fn dipole_requires_unit_orientation() {
        assert!(DipoleSpec::new(1e-28, [1.0, 1.0, 0.0]).is_err());
        assert!(DipoleSpec::new(-1.0, [1.0, 0.0, 0.0]).is_err());
        let d = DipoleSpec::along(1e-28, [1.0, 1.0, 0.0]).unwrap();
        assert_relative_eq!(d.orientation()[0], 0.5f64.sqrt());
    }

    #[test]
    fn json_round_trip() {
        let grid = standing_wave_grid();
        let mut buf = Vec::new();
        grid.write_json(&mut buf).unwrap();
        let back = FieldGrid::from_json_str(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back, grid);
    }

    #[test]
    fn json_schema_field_names() {
        let s = r#"{"dims":[1,1,2],"spacing_m":[1e-9,1e-9,1e-9],"epsilon":[1.0,2.0],
                    "e_field":[[1,0,0,0,0,0],[0,0.5,0,0,0,0]]}"#;
        let g = FieldGrid::from_json_str(s).unwrap();
        assert_eq!(g.dims(), [1, 1, 2]);
        assert_eq!(g.field_at([0, 0, 1]).unwrap()[0], Complex64::new(0.0, 0.5));
        // ε|E|² = 1 and 0.5 → V = 1.5 voxels
        assert_relative_eq!(mode_volume(&g).unwrap(), 1.5e-27, max_relative = 1e-14);
    }

    proptest::proptest! {
        #[test]
        fn mode_volume_invariant_under_field_rescaling(
            re in -1e3f64..1e3, im in -1e3f64..1e3, seed in 0u64..1000,
        ) {
            proptest::prop_assume!(re.abs() + im.abs() > 1e-6);
            let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let mut next = move || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 11) as f64) / ((1u64 << 53) as f64) - 0.5
            };
            let grid = FieldGrid::from_fn([4, 3, 5], [1e-9, 2e-9, 3e-9], [0.0; 3], |_| {
                (1.0 + 3.0 * (next() + 0.5), [Complex64::new(next(), next()), Complex64::new(next(), next()), Complex64::new(next(), next())])
            }).unwrap();
            let v0 = mode_volume(&grid).unwrap();
            let v1 = mode_volume(&grid.scaled(Complex64::new(re, im)).unwrap()).unwrap();
            proptest::prop_assert!((v1 - v0).abs() <= 1e-12 * v0);
        }

        #[test]
        fn coupling_bounded_by_g0_when_emitter_in_high_index(
            i in 0usize..6, j in 0usize..4, k in 0usize..3,
            dx in -1.0f64..1.0, dy in -1.0f64..1.0, dz in -1.0f64..1.0,
        ) {
            proptest::prop_assume!(dx * dx + dy * dy + dz * dz > 1e-6);
            let grid = FieldGrid::from_fn([6, 4, 3], [1e-8; 3], [0.0; 3], |r| {
                let s = (r[0] * 3e7).sin() * (r[1] * 5e7).cos() + 0.1;
                (11.0, [Complex64::new(s, 0.2 * s), Complex64::new(0.3 * s, 0.0), Complex64::new(0.0, -0.4 * s)])
            }).unwrap();
            let dipole = DipoleSpec::along(1e-28, [dx, dy, dz]).unwrap();
            let r = coupling_at_location(&grid, &dipole, [i, j, k], AngularFrequency::new(2e15).unwrap()).unwrap();
            proptest::prop_assert!(r.g.value() >= 0.0);
            proptest::prop_assert!(r.g.value() <= r.g0.value() * (1.0 + 1e-12));
            proptest::prop_assert!(r.psi.norm() <= 1.0 + 1e-12);
            proptest::prop_assert!((0.0..=1.0).contains(&r.cos_xi));
        }
    }
}
