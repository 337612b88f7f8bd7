//! Light-light curves of the rate-equation laser for several β.
//!
//! ```text
//! cargo run --example laser_threshold
//! ```

use cqed::laser::{light_light_curve, log_log_slopes, threshold_pump, LaserParams};
use cqed::AngularFrequency;

fn main() -> cqed::Result<()> {
    let omega = AngularFrequency::from_vacuum_wavelength_nm(927.0)?;
    let kappa = AngularFrequency::from_ghz(10.0)?;

    for beta in [1e-3, 1e-2, 0.1, 0.85, 1.0] {
        let params = LaserParams::new(kappa, beta)?;
        let th = threshold_pump(&params);
        let pumps: Vec<f64> = (0..=80).map(|i| th.exact * 10f64.powf(-4.0 + i as f64 / 10.0)).collect();
        let curve = light_light_curve(&params, omega, &pumps)?;
        let slopes = log_log_slopes(&curve);
        let steepest = slopes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        println!(
            "β = {beta:<6} R_th = {:.4e} /s (κ/β ≈ {:.4e}), steepest log-log slope {steepest:.3}",
            th.exact, th.small_beta
        );
        for i in (0..curve.len()).step_by(20) {
            let pt = &curve[i];
            println!(
                "    R/R_th = {:>8.1e}   p = {:>10.4e}   P_out = {:.3e} W",
                pumps[i] / th.exact,
                pt.photon_number,
                pt.output_power
            );
        }
    }
    Ok(())
}
