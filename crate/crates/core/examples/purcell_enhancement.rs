//! Purcell factor of a photonic-crystal cavity and how spatial and spectral
//! misalignment degrade it.
//!
//! ```text
//! cargo run --example purcell_enhancement
//! ```

use cqed::purcell::{beta_factor, bulk_rate, effective_purcell, max_purcell_factor, PurcellInputs};
use cqed::quantities::ELECTRON_CHARGE;
use cqed::AngularFrequency;

fn main() -> cqed::Result<()> {
    let omega = AngularFrequency::from_vacuum_wavelength_nm(927.0)?;
    let q = 25_300.0;
    let v = 0.7;
    let f_max = max_purcell_factor(q, v)?;
    println!("Q = {q}, V = {v} (λ/n)³ -> F_max = {f_max:.1}");

    let rate = bulk_rate(ELECTRON_CHARGE * 1e-9, omega, 3.4)?;
    println!("bulk lifetime for a 1 e·nm dipole in GaAs: {:.3} ns", 1e9 / rate);

    println!("\ndetuning [GHz]   F        β (f = 1)");
    let linewidth = omega.to_ghz() / q;
    for k in -4..=4 {
        let d = k as f64 * linewidth / 2.0;
        let inputs = PurcellInputs {
            q,
            v_mode_norm: v,
            psi_abs: 1.0,
            cos_xi: 1.0,
            detuning: AngularFrequency::from_ghz(d)?,
            cavity_omega: omega,
        };
        let f = effective_purcell(&inputs)?;
        println!("{d:>+12.3}   {f:>8.2}  {:.5}", beta_factor(f, 1.0)?);
    }

    println!("\n|ψ|   cos ξ   F");
    for (psi, cos_xi) in [(1.0, 1.0), (0.7, 1.0), (1.0, 0.5), (0.3, 0.3)] {
        let inputs = PurcellInputs {
            q,
            v_mode_norm: v,
            psi_abs: psi,
            cos_xi,
            detuning: AngularFrequency::ZERO,
            cavity_omega: omega,
        };
        println!("{psi:.1}   {cos_xi:.1}    {:.1}", effective_purcell(&inputs)?);
    }
    Ok(())
}
