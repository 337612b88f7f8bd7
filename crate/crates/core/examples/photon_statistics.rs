//! g²(0) of number-state mixtures, checked against a simulated Hanbury
//! Brown–Twiss measurement.
//!
//! ```text
//! cargo run --release --example photon_statistics
//! ```

use cqed::photon_stats::{classify_statistics, g2_estimate, g2_zero, hbt_simulate, FockDistribution};

fn main() -> cqed::Result<()> {
    let cases = [
        ("single photon", FockDistribution::fock(1)),
        ("sparse single photon, ε = 0.1", FockDistribution::sparse(1, 0.1)?),
        ("two photons", FockDistribution::fock(2)),
        ("ten photons", FockDistribution::fock(10)),
        ("sparse two photons, ε = 0.1", FockDistribution::sparse(2, 0.1)?),
        ("sparse three photons, ε = 0.1", FockDistribution::sparse(3, 0.1)?),
        ("coherent, mean 0.5", FockDistribution::poisson(0.5)?),
    ];
    println!("{:<32} {:>9} {:>18}  statistics", "state", "g²(0)", "HBT estimate");
    for (i, (name, d)) in cases.iter().enumerate() {
        let exact = g2_zero(d).expect("non-vacuum");
        let records = hbt_simulate(d, 1_000_000, i as u64)?;
        let est = g2_estimate(&records)?.expect("counts on both detectors");
        println!("{name:<32} {exact:>9.4} {:>9.4} ± {:<6.4}  {}", est.g2, est.std_err, classify_statistics(exact)?);
    }
    Ok(())
}
