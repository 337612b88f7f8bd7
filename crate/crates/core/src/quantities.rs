//! Physical constants, unit conversions, and the scalar wrappers every other
//! module builds on.
//!
//! Frequencies and rates are always angular (rad·s⁻¹) internally. User-facing
//! values are linear frequencies in GHz (the `g/2π` convention) and vacuum
//! wavelengths in nm. Energies are joules internally with eV/meV helpers.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_positive, Result};

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Elementary charge, C.
pub const ELECTRON_CHARGE: f64 = 1.602_176_634e-19;
/// Free electron mass, kg.
pub const ELECTRON_MASS: f64 = 9.109_383_7e-31;
/// Vacuum permittivity, F·m⁻¹.
pub const EPSILON0: f64 = 8.854_187_812_8e-12;
/// Speed of light in vacuum, m·s⁻¹.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub electron_charge: f64,
    pub electron_mass: f64,
    pub epsilon0: f64,
    pub c: f64,
}

impl PhysicalConstants {
    pub const CODATA: PhysicalConstants = PhysicalConstants {
        hbar: HBAR,
        electron_charge: ELECTRON_CHARGE,
        electron_mass: ELECTRON_MASS,
        epsilon0: EPSILON0,
        c: SPEED_OF_LIGHT,
    };
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA
    }
}

/// Angular frequency or rate in rad·s⁻¹. Always finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AngularFrequency(f64);

impl AngularFrequency {
    pub const ZERO: AngularFrequency = AngularFrequency(0.0);

    pub fn new(rad_per_s: f64) -> Result<Self> {
        ensure_finite("angular_frequency", rad_per_s).map(Self)
    }

    /// From a linear frequency `f` in GHz, i.e. `2π·f·10⁹`.
    pub fn from_ghz(f_ghz: f64) -> Result<Self> {
        linear_ghz_to_angular(f_ghz)
    }

    pub fn from_vacuum_wavelength_nm(lambda0_nm: f64) -> Result<Self> {
        ensure_positive("lambda0_nm", lambda0_nm)?;
        vacuum_wavelength_to_angular(lambda0_nm * 1e-9)
    }

    /// Inherent constructor for values already known to be finite.
    pub(crate) const fn from_raw(rad_per_s: f64) -> Self {
        Self(rad_per_s)
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// Linear frequency in GHz (`value / 2π / 10⁹`).
    pub fn to_ghz(self) -> f64 {
        self.0 / TAU / 1e9
    }

    /// Vacuum wavelength in metres.
    pub fn vacuum_wavelength(self) -> f64 {
        TAU * SPEED_OF_LIGHT / self.0
    }

    pub fn abs(self) -> Self {
        Self(self.0.abs())
    }

    /// Photon energy `ħω`.
    pub fn photon_energy(self) -> Energy {
        Energy(HBAR * self.0)
    }
}

impl fmt::Display for AngularFrequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6e} rad/s ({:.6} GHz)", self.0, self.to_ghz())
    }
}

impl Add for AngularFrequency {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl Sub for AngularFrequency {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl Neg for AngularFrequency {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl Mul<f64> for AngularFrequency {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self(self.0 * rhs)
    }
}

impl Div<f64> for AngularFrequency {
    type Output = Self;
    fn div(self, rhs: f64) -> Self {
        Self(self.0 / rhs)
    }
}

/// Energy in joules. Always finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Energy(f64);

impl Energy {
    pub const ZERO: Energy = Energy(0.0);

    pub fn new(joules: f64) -> Result<Self> {
        ensure_finite("energy", joules).map(Self)
    }

    pub fn from_ev(ev: f64) -> Result<Self> {
        ensure_finite("energy_eV", ev).map(|v| Self(v * ELECTRON_CHARGE))
    }

    pub fn from_mev(mev: f64) -> Result<Self> {
        ensure_finite("energy_meV", mev).map(|v| Self(v * 1e-3 * ELECTRON_CHARGE))
    }

    pub(crate) const fn from_raw(joules: f64) -> Self {
        Self(joules)
    }

    #[inline]
    pub fn joules(self) -> f64 {
        self.0
    }

    pub fn to_ev(self) -> f64 {
        self.0 / ELECTRON_CHARGE
    }

    pub fn to_mev(self) -> f64 {
        self.to_ev() * 1e3
    }

    /// `E/ħ`.
    pub fn to_angular(self) -> AngularFrequency {
        AngularFrequency(self.0 / HBAR)
    }

    /// `E/h` in GHz.
    pub fn to_ghz(self) -> f64 {
        self.to_angular().to_ghz()
    }
}

impl fmt::Display for Energy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6} meV", self.to_mev())
    }
}

impl Add for Energy {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl Sub for Energy {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl Mul<f64> for Energy {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self(self.0 * rhs)
    }
}

/// `2π·f·10⁹` for a linear frequency `f` in GHz.
pub fn linear_ghz_to_angular(f_ghz: f64) -> Result<AngularFrequency> {
    ensure_finite("frequency_GHz", f_ghz)?;
    Ok(AngularFrequency(TAU * f_ghz * 1e9))
}

/// `2πc/λ₀` for a vacuum wavelength in metres.
pub fn vacuum_wavelength_to_angular(lambda0: f64) -> Result<AngularFrequency> {
    ensure_positive("lambda0", lambda0)?;
    Ok(AngularFrequency(TAU * SPEED_OF_LIGHT / lambda0))
}

/// Material wavelength cubed, `(λ₀/n)³`, the unit used for normalized mode volumes.
pub fn cubic_material_wavelength(lambda0: f64, n_index: f64) -> Result<f64> {
    ensure_positive("lambda0", lambda0)?;
    ensure_positive("n_index", n_index)?;
    Ok((lambda0 / n_index).powi(3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ghz_conversion() {
        assert_eq!(linear_ghz_to_angular(0.0).unwrap().value(), 0.0);
        assert_eq!(linear_ghz_to_angular(1.0).unwrap().value(), TAU * 1e9);
        // mpmath: 2π·20e9
        assert_relative_eq!(linear_ghz_to_angular(20.0).unwrap().value(), 125_663_706_143.591_73, max_relative = 1e-15);
        assert!(linear_ghz_to_angular(f64::NAN).is_err());
        assert!(linear_ghz_to_angular(f64::INFINITY).is_err());
    }

    #[test]
    fn wavelength_conversion() {
        assert_relative_eq!(
            vacuum_wavelength_to_angular(TAU * SPEED_OF_LIGHT).unwrap().value(),
            1.0,
            max_relative = 1e-15
        );
        // mpmath: 2πc/λ₀
        assert_relative_eq!(
            vacuum_wavelength_to_angular(927e-9).unwrap().value(),
            2.031_986_588_251_19e15,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            vacuum_wavelength_to_angular(1550e-9).unwrap().value(),
            1.215_259_075_683_131e15,
            max_relative = 1e-14
        );
        assert!(vacuum_wavelength_to_angular(0.0).is_err());
        assert!(vacuum_wavelength_to_angular(-1e-9).is_err());
        assert!(AngularFrequency::from_vacuum_wavelength_nm(-3.0).is_err());
    }

    #[test]
    fn energy_units() {
        let e = Energy::from_mev(50.0).unwrap();
        assert_relative_eq!(e.to_mev(), 50.0, max_relative = 1e-15);
        assert_relative_eq!(e.joules(), 50e-3 * ELECTRON_CHARGE, max_relative = 1e-15);
        let w = AngularFrequency::from_ghz(10.0).unwrap();
        assert_relative_eq!(w.photon_energy().to_ghz(), 10.0, max_relative = 1e-14);
        assert!(Energy::new(f64::NAN).is_err());
    }

    #[test]
    fn paper_rounded_constants_are_close() {
        let k = PhysicalConstants::CODATA;
        assert_relative_eq!(k.electron_charge, 1.6e-19, max_relative = 2e-3);
        assert_relative_eq!(k.electron_mass, 9.1e-31, max_relative = 2e-3);
    }

    proptest::proptest! {
        #[test]
        fn angular_linear_round_trip(f in -1e6f64..1e6) {
            let w = linear_ghz_to_angular(f).unwrap();
            let back = w.to_ghz();
            proptest::prop_assert!((back - f).abs() <= 1e-12 * f.abs().max(1e-300));
        }

        #[test]
        fn wavelength_round_trip(nm in 100.0f64..5000.0) {
            let w = AngularFrequency::from_vacuum_wavelength_nm(nm).unwrap();
            let back = w.vacuum_wavelength() * 1e9;
            proptest::prop_assert!((back - nm).abs() <= 1e-12 * nm);
        }
    }
}
