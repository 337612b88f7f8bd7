//! Dressed-state ladder, Rabi flopping, and the blockade / tunneling probe
//! frequencies of a resonant emitter–cavity pair.
//!
//! ```text
//! cargo run --example dressed_ladder
//! ```

use cqed::jaynes_cummings::{
    blockade_frequency, ladder_table, rabi_period, rabi_probabilities, tunneling_frequency, Branch, LosslessSystem,
};
use cqed::AngularFrequency;

fn main() -> cqed::Result<()> {
    let omega = AngularFrequency::from_vacuum_wavelength_nm(927.0)?;
    let g = AngularFrequency::from_ghz(20.0)?;
    let sys = LosslessSystem::resonant(omega, g)?;

    println!("manifold   E+/h - (n+1)f [GHz]   gap [GHz]   gap / 2g");
    for m in ladder_table(&sys, 4) {
        let gap = m.splitting().to_ghz();
        println!("{:>8}   {:>20.6}   {:>9.4}   {:.6}", m.n, gap / 2.0, gap, gap / 40.0);
    }

    let period = rabi_period(&sys, 0);
    println!("\nRabi period for one quantum: {:.3} ps", period * 1e12);
    for k in 0..=8 {
        let t = period * k as f64 / 8.0;
        let p = rabi_probabilities(&sys, 0, t)?;
        println!("  t = {:>6.3} ps   P_ex = {:.4}   P_g = {:.4}", t * 1e12, p.p_excited, p.p_ground);
    }

    for b in [Branch::Upper, Branch::Lower] {
        let blockade = (blockade_frequency(&sys, b)? - omega).to_ghz();
        let tunneling = (tunneling_frequency(&sys, b)? - omega).to_ghz();
        println!("{b:?}: blockade probe at {blockade:+.4} GHz, tunneling probe at {tunneling:+.4} GHz");
    }
    Ok(())
}
