//! An emitter tuned across the two supermodes of a pair of coupled cavities.
//!
//! ```text
//! cargo run --example photonic_molecule
//! ```

use cqed::lossy::{photonic_molecule_eigenfrequencies, LossyMode, PhotonicMolecule};
use cqed::AngularFrequency;

fn ghz(f: f64) -> AngularFrequency {
    AngularFrequency::from_ghz(f).expect("finite frequency")
}

fn main() -> cqed::Result<()> {
    let omega = AngularFrequency::from_vacuum_wavelength_nm(927.0)?;
    let j = ghz(50.0);
    let cavity = LossyMode::new(omega, ghz(5.0))?;
    let emitter = LossyMode::new(omega, ghz(0.5))?;
    let molecule = PhotonicMolecule::new(cavity, cavity, j, emitter, ghz(15.0))?;

    println!("emitter [GHz]   mode offsets [GHz]");
    for k in -20..=20 {
        let nu = omega + ghz(k as f64 * 7.5);
        let modes = photonic_molecule_eigenfrequencies(&molecule.with_emitter_frequency(nu)?)?;
        let offsets: Vec<String> = modes.iter().map(|m| format!("{:>+9.3}", (m.frequency - omega).to_ghz())).collect();
        println!("{:>+12.1}   {}", (nu - omega).to_ghz(), offsets.join(" "));
    }
    Ok(())
}
