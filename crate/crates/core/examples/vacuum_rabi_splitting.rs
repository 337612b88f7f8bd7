//! Complex eigenfrequencies with losses: strong coupling, the Purcell
//! regime, and the transmission spectrum in between.
//!
//! ```text
//! cargo run --example vacuum_rabi_splitting
//! ```

use cqed::lossy::{
    classify_regime, complex_eigenfrequencies, purcell_regime_rates, rabi_splitting, transmission_spectrum,
    LossySystem, Regime, RegimeThresholds,
};
use cqed::AngularFrequency;

fn ghz(f: f64) -> AngularFrequency {
    AngularFrequency::from_ghz(f).expect("finite frequency")
}

fn main() -> cqed::Result<()> {
    let omega = AngularFrequency::from_vacuum_wavelength_nm(927.0)?;
    let thresholds = RegimeThresholds::default();

    for (g, kappa, gamma) in [(20.0, 10.0, 1.0), (20.0, 0.2, 0.0), (10.0, 30.0, 1.0), (1.0, 100.0, 0.0)] {
        let sys = LossySystem::new(omega, omega, ghz(g), ghz(kappa), ghz(gamma))?;
        let pair = complex_eigenfrequencies(&sys);
        let report = classify_regime(&sys, &thresholds);
        println!("g/2π = {g} GHz, κ/2π = {kappa} GHz, γ/2π = {gamma} GHz -> {:?}", report.regime);
        for (name, m) in [("+", pair.plus), ("-", pair.minus)] {
            println!(
                "  ω{name}: offset {:+.4} GHz, damping {:.4} GHz",
                (m.frequency - omega).to_ghz(),
                m.damping.to_ghz()
            );
        }
        match (rabi_splitting(&sys).value(), report.regime) {
            (Some(s), _) => println!("  splitting {:.5} GHz (2g = {} GHz)", s.to_ghz(), 2.0 * g),
            (None, Regime::Purcell) => {
                let rates = purcell_regime_rates(&sys)?;
                println!(
                    "  no splitting; energy decay rates {:.4} GHz (emitter-like), {:.1} GHz (cavity-like)",
                    rates.emitter_like.to_ghz(),
                    rates.cavity_like.to_ghz()
                );
            }
            (None, _) => println!("  no splitting"),
        }
    }

    let sys = LossySystem::new(omega, omega, ghz(20.0), ghz(10.0), ghz(0.0))?;
    let probes: Vec<_> = (-30..=30).map(|k| omega + ghz(2.0 * k as f64)).collect();
    println!("\nprobe [GHz]  transmission");
    for p in transmission_spectrum(&sys, &probes).iter().step_by(3) {
        let bar = "#".repeat((p.intensity * 40.0).round() as usize);
        println!("{:>+8.1}     {:.3} {bar}", (p.probe - omega).to_ghz(), p.intensity);
    }
    Ok(())
}
