//! One function per subcommand: typed config in, table out.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use crate::cli::config::*;
use crate::cli::table::{Cell, Table};
use crate::coupling::{coupling_at_location, mode_volume, DipoleSpec, FieldGrid};
use crate::error::{Error, Result};
use crate::jaynes_cummings::{
    blockade_frequency, dressed_energies, ladder_table, rabi_period, rabi_probabilities, tunneling_frequency, Branch,
    LosslessSystem,
};
use crate::laser::{light_light_curve, log_log_slopes, threshold_pump, LaserParams};
use crate::lossy::{
    classify_regime, complex_eigenfrequencies, empty_cavity_spectrum, rabi_splitting, transmission_spectrum,
    LossySystem, RegimeThresholds,
};
use crate::photon_stats::{classify_statistics, g2_estimate, g2_zero, hbt_simulate};
use crate::purcell::{beta_factor, effective_purcell, max_purcell_factor, PurcellInputs};
use crate::qdot::{
    charging_energy_note, coulomb_correction_mc, level_degeneracy, level_energy, shell_levels,
    transition_lines_up_to_nz, Particle,
};
use crate::quantities::AngularFrequency;

/// Settings shared by every command.
#[derive(Debug, Clone)]
pub struct RunContext {
    pub seed: u64,
    /// Directory that relative paths in the config resolve against.
    pub base_dir: PathBuf,
    /// Non-fatal notes, printed to stderr by the binary.
    pub warnings: Vec<String>,
}

impl RunContext {
    pub fn new(seed: u64, base_dir: impl Into<PathBuf>) -> Self {
        Self { seed, base_dir: base_dir.into(), warnings: Vec::new() }
    }
}

fn to_ghz(w: AngularFrequency) -> f64 {
    w.to_ghz()
}

pub fn cmd_ladder(cfg: &LadderConfig) -> Result<Table> {
    let omega = cfg.cavity().resolve()?;
    let g = ghz_non_negative("g_over_2pi_GHz", cfg.g_ghz)?;
    let delta = ghz("detuning_over_2pi_GHz", cfg.detuning_ghz)?;
    let sys = LosslessSystem::new(omega, omega + delta, g)?;
    match cfg.table {
        LadderTable::Ladder => {}
        LadderTable::Rabi => {
            let sweep =
                cfg.time_sweep_ps.ok_or_else(|| Error::invalid("time_sweep_ps", "required for the rabi table"))?;
            let mut t = Table::new(&["time_ps", "p_excited", "p_ground", "rabi_period_ps"]);
            let period = rabi_period(&sys, cfg.rabi_n);
            for tp in sweep.values("time_sweep_ps")? {
                let pop = rabi_probabilities(&sys, cfg.rabi_n, tp * 1e-12)
                    .map_err(|e| rename_field(e, "detuning_over_2pi_GHz"))?;
                t.push(vec![tp.into(), pop.p_excited.into(), pop.p_ground.into(), (period * 1e12).into()]);
            }
            return Ok(t);
        }
        LadderTable::Probes => {
            let mut t = Table::new(&["branch", "blockade_offset_GHz", "tunneling_offset_GHz"]);
            for (name, b) in [("upper", Branch::Upper), ("lower", Branch::Lower)] {
                let blockade = blockade_frequency(&sys, b).map_err(|e| rename_field(e, "detuning_over_2pi_GHz"))?;
                let tunneling = tunneling_frequency(&sys, b).map_err(|e| rename_field(e, "detuning_over_2pi_GHz"))?;
                t.push(vec![name.into(), to_ghz(blockade - omega).into(), to_ghz(tunneling - omega).into()]);
            }
            return Ok(t);
        }
    }
    let mut t = Table::new(&["n", "e_plus_over_h_GHz", "e_minus_over_h_GHz", "gap_GHz", "mixing_angle_rad"]);
    for m in ladder_table(&sys, cfg.n_max) {
        t.push(vec![
            m.n.into(),
            m.e_plus.to_ghz().into(),
            m.e_minus.to_ghz().into(),
            m.splitting().to_ghz().into(),
            m.mixing_angle.into(),
        ]);
    }
    Ok(t)
}

fn lossy_system(
    cavity: CavityFrequency,
    g_ghz: f64,
    kappa_ghz: f64,
    gamma_ghz: f64,
    detuning: AngularFrequency,
) -> Result<LossySystem> {
    let omega = cavity.resolve()?;
    let g = ghz_non_negative("g_over_2pi_GHz", g_ghz)?;
    let kappa = ghz_non_negative("kappa_over_2pi_GHz", kappa_ghz)?;
    if kappa.value() == 0.0 {
        return Err(Error::invalid("kappa_over_2pi_GHz", "must be positive"));
    }
    let gamma = ghz_non_negative("gamma_over_2pi_GHz", gamma_ghz)?;
    LossySystem::new(omega, omega + detuning, g, kappa, gamma)
}

pub fn cmd_anticross(cfg: &AnticrossConfig) -> Result<Table> {
    let deltas = cfg.detuning_sweep.values("detuning_sweep")?;
    let base = lossy_system(cfg.cavity(), cfg.g_ghz, cfg.kappa_ghz, cfg.gamma_ghz, AngularFrequency::ZERO)?;
    let omega = base.omega();
    let lossless = LosslessSystem::new(omega, omega, base.g())?;
    let mut t = Table::new(&[
        "detuning_GHz",
        "lossless_plus_offset_GHz",
        "lossless_minus_offset_GHz",
        "lossless_gap_GHz",
        "lossy_plus_offset_GHz",
        "lossy_plus_damping_GHz",
        "lossy_minus_offset_GHz",
        "lossy_minus_damping_GHz",
        "lossy_plus_energy_decay_GHz",
        "lossy_minus_energy_decay_GHz",
        "regime",
    ]);
    let thresholds = RegimeThresholds::default();
    for d in deltas {
        let delta = ghz("detuning_sweep", d)?;
        let m = dressed_energies(&lossless.with_detuning(delta)?, 0);
        let sys = base.with_emitter(omega + delta)?;
        let pair = complex_eigenfrequencies(&sys);
        // same frame as the lossy columns: bare cavity at 0, bare emitter at δ
        let half = m.splitting().to_ghz() / 2.0;
        let centre_offset = d / 2.0;
        t.push(vec![
            d.into(),
            (centre_offset + half).into(),
            (centre_offset - half).into(),
            m.splitting().to_ghz().into(),
            to_ghz(pair.plus.frequency - omega).into(),
            to_ghz(pair.plus.damping).into(),
            to_ghz(pair.minus.frequency - omega).into(),
            to_ghz(pair.minus.damping).into(),
            to_ghz(pair.plus.energy_decay_rate()).into(),
            to_ghz(pair.minus.energy_decay_rate()).into(),
            format!("{:?}", classify_regime(&sys, &thresholds).regime).to_lowercase().into(),
        ]);
    }
    Ok(t)
}

pub fn cmd_spectrum(cfg: &SpectrumConfig) -> Result<Table> {
    let offsets = cfg.probe_sweep.values("probe_sweep")?;
    let delta = ghz("detuning_over_2pi_GHz", cfg.detuning_ghz)?;
    let sys = lossy_system(cfg.cavity(), cfg.g_ghz, cfg.kappa_ghz, cfg.gamma_ghz, delta)?;
    let omega = sys.omega();
    let probes = offsets.iter().map(|&o| ghz("probe_sweep", o).map(|w| omega + w)).collect::<Result<Vec<_>>>()?;
    let empty = empty_cavity_spectrum(omega, sys.kappa(), &probes);
    let coupled = transmission_spectrum(&sys, &probes);
    let splitting = rabi_splitting(&sys).value().map(|s| s.to_ghz());
    let mut t = Table::new(&["probe_offset_GHz", "empty_cavity", "coupled", "rabi_splitting_GHz"]);
    for ((o, e), c) in offsets.iter().zip(&empty).zip(&coupled) {
        t.push(vec![
            (*o).into(),
            e.intensity.into(),
            c.intensity.into(),
            splitting.map(Cell::from).unwrap_or_else(|| "none".into()),
        ]);
    }
    Ok(t)
}

pub fn cmd_purcell(cfg: &PurcellConfig) -> Result<Table> {
    let omega = cfg.cavity().resolve()?;
    let f_max = max_purcell_factor(cfg.q, cfg.v_norm)?;
    let sweep = cfg.detuning_sweep.unwrap_or(Sweep::single(0.0));
    let mut t = Table::new(&["detuning_GHz", "F_max", "F", "beta"]);
    for d in sweep.values("detuning_sweep")? {
        let inputs = PurcellInputs {
            q: cfg.q,
            v_mode_norm: cfg.v_norm,
            psi_abs: cfg.psi_abs,
            cos_xi: cfg.cos_xi,
            detuning: ghz("detuning_sweep", d)?,
            cavity_omega: omega,
        };
        let f = effective_purcell(&inputs)?;
        let beta = beta_factor(f, cfg.other_fraction)?;
        t.push(vec![d.into(), f_max.into(), f.into(), beta.into()]);
    }
    Ok(t)
}

pub fn cmd_laser(cfg: &LaserConfig) -> Result<Table> {
    let omega = cfg.cavity().resolve()?;
    let params = match (cfg.kappa_ghz, cfg.q) {
        (Some(k), None) => {
            let kappa = ghz_non_negative("kappa_over_2pi_GHz", k)?;
            LaserParams::new(kappa, cfg.beta)?
        }
        (None, Some(q)) => LaserParams::from_quality_factor(omega, q, cfg.beta)?,
        _ => return Err(Error::invalid("kappa_over_2pi_GHz", "give exactly one of kappa_over_2pi_GHz or Q")),
    };
    let threshold = threshold_pump(&params);
    let ratios = cfg.pump_over_threshold_sweep.values("pump_over_threshold_sweep")?;
    let pumps: Vec<f64> = ratios.iter().map(|r| r * threshold.exact).collect();
    let curve = light_light_curve(&params, omega, &pumps)?;
    let slopes = log_log_slopes(&curve);
    let mut t = Table::new(&[
        "pump_over_threshold",
        "pump_per_s",
        "photon_number",
        "output_power_W",
        "log_log_slope",
        "threshold_exact_per_s",
        "threshold_small_beta_per_s",
    ]);
    for (i, (r, pt)) in ratios.iter().zip(&curve).enumerate() {
        // slope of the segment ending at this point
        let slope =
            if i == 0 { Cell::from("") } else { slopes.get(i - 1).copied().map(Cell::from).unwrap_or("".into()) };
        t.push(vec![
            (*r).into(),
            pt.pump.into(),
            pt.photon_number.into(),
            pt.output_power.into(),
            slope,
            threshold.exact.into(),
            threshold.small_beta.into(),
        ]);
    }
    Ok(t)
}

pub fn cmd_qd(cfg: &QdConfig, ctx: &mut RunContext) -> Result<Table> {
    let file = cfg.dot();
    let spec = file.to_spec()?;
    ctx.warnings.extend(spec.warnings());
    if cfg.max_nz < 1 {
        return Err(Error::invalid("max_nz", "must be at least 1"));
    }
    match cfg.table {
        QdTable::Levels => {
            let mut t = Table::new(&["particle", "shell", "nz", "degeneracy", "energy_meV", "states"]);
            for p in [Particle::Electron, Particle::Hole] {
                for nz in 1..=cfg.max_nz {
                    for shell in 0..=cfg.max_shell {
                        let first = shell_levels(shell, nz).next().expect("non-empty shell");
                        let e = level_energy(&spec, p, first)?;
                        let states: Vec<String> = shell_levels(shell, nz).map(|l| l.to_string()).collect();
                        t.push(vec![
                            p.to_string().into(),
                            shell.into(),
                            nz.into(),
                            level_degeneracy(shell).into(),
                            e.to_mev().into(),
                            states.join(" ").into(),
                        ]);
                    }
                }
            }
            Ok(t)
        }
        QdTable::Transitions => {
            let mut t = Table::new(&["electron", "hole", "photon_energy_eV", "photon_wavelength_nm"]);
            for line in transition_lines_up_to_nz(&spec, cfg.max_shell, cfg.max_nz) {
                let w = line.photon_energy.to_angular();
                t.push(vec![
                    line.electron.to_string().into(),
                    line.hole.to_string().into(),
                    line.photon_energy.to_ev().into(),
                    (w.vacuum_wavelength() * 1e9).into(),
                ]);
            }
            Ok(t)
        }
        QdTable::Coulomb => {
            let est = coulomb_correction_mc(&spec, file.epsilon_r, cfg.coulomb_samples, ctx.seed)?;
            let charging = charging_energy_note();
            let mut t =
                Table::new(&["samples", "seed", "delta_e_meV", "std_err_meV", "charging_min_meV", "charging_max_meV"]);
            t.push(vec![
                est.samples.into(),
                ctx.seed.into(),
                est.delta_e.to_mev().into(),
                est.std_err.to_mev().into(),
                charging.min.to_mev().into(),
                charging.max.to_mev().into(),
            ]);
            Ok(t)
        }
    }
}

fn g2_cell(v: Option<f64>) -> Cell {
    v.map(Cell::from).unwrap_or_else(|| "undefined".into())
}

pub fn cmd_g2(cfg: &G2Config) -> Result<Table> {
    if cfg.cases.is_empty() {
        return Err(Error::invalid("cases", "at least one case is required"));
    }
    let mut t = Table::new(&["label", "mean_photon_number", "g2_zero", "statistics"]);
    for case in &cfg.cases {
        let d = case.distribution.build()?;
        let g2 = g2_zero(&d);
        let stats = match g2 {
            Some(v) => classify_statistics(v)?.to_string(),
            None => "undefined".to_string(),
        };
        t.push(vec![case.label.clone().into(), d.mean().into(), g2_cell(g2), stats.into()]);
    }
    Ok(t)
}

pub fn cmd_hbt(cfg: &HbtConfig, ctx: &RunContext) -> Result<Table> {
    if cfg.cases.is_empty() {
        return Err(Error::invalid("cases", "at least one case is required"));
    }
    match cfg.table {
        HbtTable::Records => {
            if cfg.cases.len() != 1 {
                return Err(Error::invalid("cases", "the records table takes exactly one case"));
            }
            let d = cfg.cases[0].distribution.build()?;
            let records = hbt_simulate(&d, cfg.pulses, ctx.seed)?;
            let mut t = Table::new(&["pulse_index", "counts_a", "counts_b"]);
            t.rows.reserve(records.len());
            for r in records {
                t.push(vec![r.pulse_index.into(), r.counts_a.into(), r.counts_b.into()]);
            }
            Ok(t)
        }
        HbtTable::Summary => {
            let mut t = Table::new(&["label", "pulses", "g2_exact", "g2_estimate", "std_err", "within_3_sigma"]);
            for (i, case) in cfg.cases.iter().enumerate() {
                let d = case.distribution.build()?;
                // one independent stream per case
                let seed = ctx.seed.wrapping_add(i as u64);
                let records = hbt_simulate(&d, cfg.pulses, seed)?;
                let exact = g2_zero(&d);
                let est = g2_estimate(&records)?;
                let (g, se) = match est {
                    Some(e) => (Some(e.g2), Some(e.std_err)),
                    None => (None, None),
                };
                let agree = match (exact, est) {
                    (Some(x), Some(e)) => ((e.g2 - x).abs() <= 3.0 * e.std_err).to_string(),
                    (None, None) => "true".to_string(),
                    _ => "false".to_string(),
                };
                t.push(vec![
                    case.label.clone().into(),
                    cfg.pulses.into(),
                    g2_cell(exact),
                    g2_cell(g),
                    g2_cell(se),
                    agree.into(),
                ]);
            }
            Ok(t)
        }
    }
}

fn resolve_path(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

pub fn cmd_modevolume(cfg: &ModeVolumeConfig, ctx: &RunContext) -> Result<Table> {
    let (grid, reference) = match (&cfg.grid_file, &cfg.gaussian) {
        (Some(path), None) => {
            let full = resolve_path(&ctx.base_dir, path);
            if !full.is_file() {
                return Err(Error::invalid("grid_file", format!("{} does not exist", full.display())));
            }
            (FieldGrid::load(&full)?, None)
        }
        (None, Some(gauss)) => {
            let sigma = gauss.sigma_nm * 1e-9;
            let grid = FieldGrid::gaussian(sigma, gauss.half_width_sigma * sigma, gauss.points, gauss.epsilon_r)?;
            (grid, Some((PI.sqrt() * sigma).powi(3)))
        }
        _ => return Err(Error::invalid("grid_file", "give exactly one of grid_file or gaussian")),
    };
    let v = mode_volume(&grid)?;
    let (max_idx, _) = grid.energy_maximum();
    let n_index = grid.epsilon_at(unravel(&grid, max_idx))?.sqrt();

    let mut columns = vec!["mode_volume_m3", "reference_m3"];
    let omega = if cfg.lambda0_nm.is_some() || cfg.cavity_freq_ghz.is_some() {
        columns.push("mode_volume_lambda_over_n_cubed");
        Some(cfg.cavity().resolve()?)
    } else {
        None
    };
    if cfg.dipole.is_some() {
        if omega.is_none() {
            return Err(Error::invalid("lambda0_nm", "needed to evaluate the coupling rate"));
        }
        columns.extend(["g0_over_2pi_GHz", "psi_abs", "cos_xi", "g_over_2pi_GHz"]);
    }
    let mut t = Table::new(&columns);
    let mut row: Vec<Cell> = vec![v.into(), reference.map(Cell::from).unwrap_or_else(|| "".into())];
    if let Some(w) = omega {
        let lambda_n = w.vacuum_wavelength() / n_index;
        row.push((v / lambda_n.powi(3)).into());
    }
    if let (Some(d), Some(w)) = (&cfg.dipole, omega) {
        let dipole = DipoleSpec::along(d.mu_cm, d.orientation).map_err(|e| rename_field(e, "dipole.orientation"))?;
        let c = coupling_at_location(&grid, &dipole, d.location, w).map_err(|e| rename_field(e, "dipole.location"))?;
        row.extend([c.g0.to_ghz().into(), c.psi.norm().into(), c.cos_xi.into(), c.g.to_ghz().into()]);
    }
    t.push(row);
    Ok(t)
}

fn unravel(grid: &FieldGrid, idx: usize) -> [usize; 3] {
    let [_, ny, nz] = grid.dims();
    [idx / (ny * nz), (idx / nz) % ny, idx % nz]
}

fn rename_field(e: Error, field: &str) -> Error {
    match e {
        Error::InvalidInput { field: inner, reason } => Error::invalid(field, format!("{inner}: {reason}")),
        other => other,
    }
}
