//! Mode volume of a sampled field and the coupling of a dipole placed in it.
//!
//! ```text
//! cargo run --release --example mode_volume [field.json]
//! ```
//!
//! Without an argument a Gaussian test mode is used.

use std::f64::consts::PI;

use cqed::coupling::{coupling_at_location, mode_volume, DipoleSpec, FieldGrid};
use cqed::quantities::ELECTRON_CHARGE;
use cqed::AngularFrequency;

fn main() -> cqed::Result<()> {
    let omega = AngularFrequency::from_vacuum_wavelength_nm(927.0)?;
    let sigma = 100e-9;
    let grid = match std::env::args().nth(1) {
        Some(path) => FieldGrid::load(path)?,
        None => {
            for points in [9, 17, 33, 65] {
                let g = FieldGrid::gaussian(sigma, 5.0 * sigma, points, 1.0)?;
                let rel = mode_volume(&g)? / (PI.sqrt() * sigma).powi(3) - 1.0;
                println!("{points:>3}³ samples: relative error {rel:+.3e}");
            }
            FieldGrid::gaussian(sigma, 5.0 * sigma, 41, 1.0)?
        }
    };
    let v = mode_volume(&grid)?;
    println!("V = {v:.4e} m³");

    let dipole = DipoleSpec::along(ELECTRON_CHARGE * 1e-9, [1.0, 0.0, 0.0])?;
    let [nx, ny, nz] = grid.dims();
    let centre = [nx / 2, ny / 2, nz / 2];
    for (label, loc) in [("centre", centre), ("off-centre", [nx / 2 + nx / 8, ny / 2, nz / 2])] {
        let c = coupling_at_location(&grid, &dipole, loc, omega)?;
        println!(
            "{label:<10}: g0/2π = {:.2} GHz, |ψ| = {:.3}, cos ξ = {:.3}, g/2π = {:.2} GHz",
            c.g0.to_ghz(),
            c.psi.norm(),
            c.cos_xi,
            c.g.to_ghz()
        );
    }
    Ok(())
}
