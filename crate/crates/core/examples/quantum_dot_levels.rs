//! Quantum-dot shells, interband lines, and the first-order Coulomb shift.
//!
//! ```text
//! cargo run --release --example quantum_dot_levels
//! ```

use cqed::qdot::{
    charging_energy_note, coulomb_correction_mc, level_degeneracy, level_energy, shell_levels, transition_lines,
    Particle, QDotSpec,
};
use cqed::quantities::ELECTRON_MASS;
use cqed::Energy;

fn main() -> cqed::Result<()> {
    let spec = QDotSpec::symmetric(0.05 * ELECTRON_MASS, Energy::from_mev(50.0)?, 5e-9, Energy::from_ev(1.0)?)?;

    println!("shell  degeneracy  E_e [meV]");
    for shell in 0..=3 {
        let first = shell_levels(shell, 1).next().expect("non-empty");
        println!(
            "{shell:>5}  {:>10}  {:.3}",
            level_degeneracy(shell),
            level_energy(&spec, Particle::Electron, first)?.to_mev()
        );
    }

    println!("\nlowest lines (n_z = 1, shells ≤ 1):");
    for line in transition_lines(&spec, 1).iter().take(5) {
        println!("  e{} -> h{}   {:.4} eV", line.electron, line.hole, line.photon_energy.to_ev());
    }

    let est = coulomb_correction_mc(&spec, 12.9, 1_000_000, 1)?;
    println!("\nCoulomb shift of the ground exciton: {:.2} ± {:.2} meV", est.delta_e.to_mev(), est.std_err.to_mev());
    println!("charging energy per extra carrier: {}", charging_energy_note());
    Ok(())
}
