//! The four experiment commands.
//!
//! Each command takes a validated scenario and a writer; the binary only
//! wires file/stdout plumbing around these. Numeric CSV fields are
//! printed with a fixed 6-digit fraction so reruns are byte-identical.

use std::io::Write;

use sulsim_core::geometry;
use sulsim_core::link_budget::{self, CarrierConfig};
use sulsim_core::pass_sim::{self, CarrierMode, PassResult};
use sulsim_core::{CarrierId, Error, ScenarioConfig};

use crate::CliError;

/// CSV header of the `pass` trace.
pub const PASS_CSV_HEADER: &str = "time_s,elevation_deg,slant_range_km,snr_pul_db,snr_sul_db,margin_pul_db,margin_sul_db,doppler_pul_hz,doppler_sul_hz,active_carrier,available";

/// CSV header of the `snr-sweep` table.
pub const SNR_SWEEP_CSV_HEADER: &str = "target_snr_db,min_elev_pul_deg,min_elev_sul_enabled_deg";

/// CSV header of the `hysteresis-sweep` table.
pub const HYSTERESIS_CSV_HEADER: &str = "hysteresis_db,mean_switches,p95_switches";

fn validated(scenario: &ScenarioConfig) -> Result<(), CliError> {
    scenario
        .validate()
        .map_err(|e| CliError::Validation(e.to_string()))
}

fn domain(e: Error) -> CliError {
    CliError::Domain(e.to_string())
}

/// Per-carrier breakdown of every term in the link-budget chain at one
/// elevation, plus Doppler. Human-readable by default, CSV on request.
pub fn cmd_link_budget(
    scenario: &ScenarioConfig,
    elevation_deg: f64,
    csv: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    validated(scenario)?;

    // breakdowns assume the ascending leg of the pass
    let phi = geometry::velocity_angle_deg(&scenario.geometry, elevation_deg, true)
        .map_err(domain)?;
    let velocity_kms = scenario.geometry.orbital_speed_kms();
    let slant = geometry::slant_range(&scenario.geometry, elevation_deg).map_err(domain)?;
    let off = geometry::off_boresight_angle(&scenario.geometry, elevation_deg, scenario.beam_mode)
        .map_err(domain)?;

    struct Row {
        name: CarrierId,
        frequency_mhz: f64,
        sat_gain_dbi: f64,
        fspl_db: f64,
        atm_loss_db: f64,
        noise_psd_dbm_hz: f64,
        noise_floor_dbm: f64,
        received_power_dbm: f64,
        snr_db: f64,
        margin_db: f64,
        doppler_hz: f64,
        carrier: CarrierConfig,
    }

    let mut rows = Vec::with_capacity(2);
    for carrier in [&scenario.pul, &scenario.sul] {
        let snr_db = link_budget::predicted_snr_db(
            carrier,
            &scenario.atm_model,
            elevation_deg,
            off,
            &scenario.geometry,
        )
        .map_err(domain)?;
        rows.push(Row {
            name: carrier.name,
            frequency_mhz: carrier.frequency_mhz,
            sat_gain_dbi: link_budget::sat_gain_db(carrier, off).map_err(domain)?,
            fspl_db: link_budget::fspl_db(carrier.frequency_mhz, slant).map_err(domain)?,
            atm_loss_db: link_budget::atmospheric_loss_db(
                &scenario.atm_model,
                carrier,
                elevation_deg,
            )
            .map_err(domain)?,
            noise_psd_dbm_hz: link_budget::noise_psd_dbm_hz(carrier.noise_temp_k)
                .map_err(domain)?,
            noise_floor_dbm: link_budget::noise_floor_dbm(carrier).map_err(domain)?,
            received_power_dbm: link_budget::received_power_dbm(
                carrier,
                &scenario.atm_model,
                elevation_deg,
                off,
                &scenario.geometry,
            )
            .map_err(domain)?,
            snr_db,
            margin_db: snr_db - scenario.controller.snr_req_db,
            doppler_hz: link_budget::doppler_shift_hz(carrier.frequency_mhz, velocity_kms, phi),
            carrier: *carrier,
        });
    }

    if csv {
        writeln!(
            out,
            "carrier,frequency_mhz,elevation_deg,slant_range_km,off_boresight_deg,tx_power_dbm,ue_gain_dbi,sat_gain_dbi,fspl_db,atm_loss_db,impl_loss_db,received_power_dbm,noise_psd_dbm_hz,noise_floor_dbm,snr_db,snr_req_db,margin_db,velocity_angle_deg,doppler_hz"
        )?;
        for r in &rows {
            writeln!(
                out,
                "{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
                r.name,
                r.frequency_mhz,
                elevation_deg,
                slant,
                off,
                r.carrier.tx_power_dbm,
                r.carrier.ue_gain_dbi,
                r.sat_gain_dbi,
                r.fspl_db,
                r.atm_loss_db,
                r.carrier.impl_loss_db,
                r.received_power_dbm,
                r.noise_psd_dbm_hz,
                r.noise_floor_dbm,
                r.snr_db,
                scenario.controller.snr_req_db,
                r.margin_db,
                phi,
                r.doppler_hz,
            )?;
        }
    } else {
        writeln!(
            out,
            "elevation {elevation_deg:.2} deg, slant range {slant:.3} km, off-boresight {off:.3} deg"
        )?;
        for r in &rows {
            writeln!(out)?;
            writeln!(out, "{} ({} MHz)", r.name, r.frequency_mhz)?;
            writeln!(out, "  tx power        {:>12.3} dBm", r.carrier.tx_power_dbm)?;
            writeln!(out, "  ue gain         {:>12.3} dBi", r.carrier.ue_gain_dbi)?;
            writeln!(out, "  sat gain        {:>12.3} dBi", r.sat_gain_dbi)?;
            writeln!(out, "  fspl            {:>12.3} dB", r.fspl_db)?;
            writeln!(out, "  atm loss        {:>12.3} dB", r.atm_loss_db)?;
            writeln!(out, "  impl loss       {:>12.3} dB", r.carrier.impl_loss_db)?;
            writeln!(out, "  received power  {:>12.3} dBm", r.received_power_dbm)?;
            writeln!(out, "  noise psd       {:>12.3} dBm/Hz", r.noise_psd_dbm_hz)?;
            writeln!(out, "  noise floor     {:>12.3} dBm", r.noise_floor_dbm)?;
            writeln!(out, "  snr             {:>12.3} dB", r.snr_db)?;
            writeln!(
                out,
                "  margin          {:>12.3} dB (snr req {:.3} dB)",
                r.margin_db, scenario.controller.snr_req_db
            )?;
            writeln!(
                out,
                "  doppler         {:>12.1} Hz (velocity angle {:.3} deg)",
                r.doppler_hz, phi
            )?;
        }
    }
    Ok(())
}

/// Minimum elevation versus target SNR, PUL-only and SUL-enabled, as CSV.
/// Unreachable targets serialize as empty fields.
pub fn cmd_snr_sweep(
    scenario: &ScenarioConfig,
    target_min_db: f64,
    target_max_db: f64,
    target_step_db: f64,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if target_step_db <= 0.0 {
        return Err(CliError::Usage(format!(
            "target step must be > 0 (got {target_step_db})"
        )));
    }
    if target_min_db > target_max_db {
        return Err(CliError::Usage(format!(
            "target range is empty ({target_min_db} > {target_max_db})"
        )));
    }
    validated(scenario)?;

    writeln!(out, "{SNR_SWEEP_CSV_HEADER}")?;
    let mut k = 0u32;
    loop {
        let target = target_min_db + f64::from(k) * target_step_db;
        if target > target_max_db + 1e-9 {
            break;
        }
        let pul = pass_sim::min_elevation_for_target(scenario, target, CarrierMode::PulOnly)
            .map_err(domain)?;
        let sul = pass_sim::min_elevation_for_target(scenario, target, CarrierMode::SulEnabled)
            .map_err(domain)?;
        let fmt = |v: Option<f64>| v.map(|x| format!("{x:.6}")).unwrap_or_default();
        writeln!(out, "{target:.6},{},{}", fmt(pul), fmt(sul))?;
        k += 1;
    }
    Ok(())
}

/// Simulates one pass: trace as CSV plus a one-line summary.
pub fn cmd_pass(
    scenario: &ScenarioConfig,
    csv_out: &mut dyn Write,
    summary_out: &mut dyn Write,
) -> Result<PassResult, CliError> {
    validated(scenario)?;
    let result = pass_sim::run_pass(scenario).map_err(domain)?;

    writeln!(csv_out, "{PASS_CSV_HEADER}")?;
    for e in &result.trace {
        writeln!(
            csv_out,
            "{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{},{}",
            e.time_s,
            e.sample.elevation_deg,
            e.sample.slant_range_km,
            e.sample.pul.snr_db,
            e.sample.sul.snr_db,
            e.sample.pul.margin_db,
            e.sample.sul.margin_db,
            e.sample.pul.doppler_hz,
            e.sample.sul.doppler_hz,
            e.active_carrier,
            u8::from(e.available),
        )?;
    }
    writeln!(
        summary_out,
        "availability_fraction={:.6} switch_count={}",
        result.availability_fraction, result.switch_count
    )?;
    Ok(result)
}

/// Switch-count statistics versus hysteresis margin, as CSV. Per-run
/// seeds are the scenario seed plus the run index.
pub fn cmd_hysteresis_sweep(
    scenario: &ScenarioConfig,
    dh_min_db: f64,
    dh_max_db: f64,
    dh_step_db: f64,
    n_seeds: u64,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if dh_step_db <= 0.0 {
        return Err(CliError::Usage(format!(
            "hysteresis step must be > 0 (got {dh_step_db})"
        )));
    }
    if dh_min_db > dh_max_db {
        return Err(CliError::Usage(format!(
            "hysteresis range is empty ({dh_min_db} > {dh_max_db})"
        )));
    }
    if n_seeds == 0 {
        return Err(CliError::Usage("need at least one seed".to_string()));
    }
    validated(scenario)?;

    let mut values = Vec::new();
    let mut k = 0u32;
    loop {
        let dh = dh_min_db + f64::from(k) * dh_step_db;
        if dh > dh_max_db + 1e-9 {
            break;
        }
        values.push(dh);
        k += 1;
    }
    let seeds = derive_seeds(scenario.rng_seed, n_seeds);

    let points = pass_sim::hysteresis_sweep(scenario, &values, &seeds).map_err(domain)?;
    writeln!(out, "{HYSTERESIS_CSV_HEADER}")?;
    for p in &points {
        writeln!(
            out,
            "{:.6},{:.6},{:.6}",
            p.hysteresis_db, p.mean_switches, p.p95_switches
        )?;
    }
    Ok(())
}

/// Deterministic per-run seeds for sweep commands.
pub fn derive_seeds(base_seed: u64, n: u64) -> Vec<u64> {
    (0..n).map(|i| base_seed.wrapping_add(i)).collect()
}

// ── Tests ──────────────────────────────────────────────────────────────

#[cfg(test)]
mod tests {
    use super::*;

    fn default_scenario() -> ScenarioConfig {
        ScenarioConfig::default()
    }

    fn run_pass_csv(scenario: &ScenarioConfig) -> (Vec<u8>, Vec<u8>) {
        let mut csv = Vec::new();
        let mut summary = Vec::new();
        cmd_pass(scenario, &mut csv, &mut summary).unwrap();
        (csv, summary)
    }

    #[test]
    fn pass_csv_is_deterministic_and_well_formed() {
        let scenario = default_scenario();
        let (a, summary) = run_pass_csv(&scenario);
        let (b, _) = run_pass_csv(&scenario);
        assert_eq!(a, b);

        let text = String::from_utf8(a).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), PASS_CSV_HEADER);
        for line in lines {
            let carrier = line.split(',').nth(9).unwrap();
            assert!(carrier == "PUL" || carrier == "SUL", "bad carrier {carrier}");
        }
        let summary = String::from_utf8(summary).unwrap();
        assert!(summary.starts_with("availability_fraction="));
        assert!(summary.contains("switch_count=1"));
    }

    #[test]
    fn pass_pul_only_loses_availability() {
        let sul_enabled = default_scenario();
        let pul_only = ScenarioConfig {
            carrier_mode: CarrierMode::PulOnly,
            ..default_scenario()
        };
        let a = cmd_pass(&sul_enabled, &mut Vec::new(), &mut Vec::new()).unwrap();
        let b = cmd_pass(&pul_only, &mut Vec::new(), &mut Vec::new()).unwrap();
        assert!(a.availability_fraction > b.availability_fraction);
    }

    #[test]
    fn snr_sweep_rows_and_dominance() {
        let mut out = Vec::new();
        cmd_snr_sweep(&default_scenario(), 0.0, 10.0, 1.0, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], SNR_SWEEP_CSV_HEADER);
        assert_eq!(lines.len(), 12); // header + 11 targets

        for row in &lines[1..] {
            let cols: Vec<&str> = row.split(',').collect();
            assert_eq!(cols.len(), 3);
            // PUL-only needs at least as much elevation as SUL-enabled,
            // when it is reachable at all
            if !cols[1].is_empty() {
                let pul: f64 = cols[1].parse().unwrap();
                let sul: f64 = cols[2].parse().unwrap();
                assert!(pul >= sul);
            }
        }

        // the target-0 row keeps the SUL close to the footprint edge
        let first: Vec<&str> = lines[1].split(',').collect();
        let sul0: f64 = first[2].parse().unwrap();
        assert!(sul0 <= 15.0);
    }

    #[test]
    fn snr_sweep_serializes_unreachable_as_empty() {
        let mut out = Vec::new();
        cmd_snr_sweep(&default_scenario(), 50.0, 50.0, 1.0, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let row = text.lines().nth(1).unwrap();
        assert_eq!(row, "50.000000,,");
    }

    #[test]
    fn snr_sweep_rejects_bad_ranges() {
        let e = cmd_snr_sweep(&default_scenario(), 0.0, 10.0, 0.0, &mut Vec::new()).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = cmd_snr_sweep(&default_scenario(), 5.0, 0.0, 1.0, &mut Vec::new()).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn link_budget_reports_both_carriers() {
        let mut out = Vec::new();
        cmd_link_budget(&default_scenario(), 90.0, true, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("PUL,"));
        assert!(lines[2].starts_with("SUL,"));

        // SUL SNR at zenith under the constant model
        let mut scenario = default_scenario();
        scenario.atm_model = sulsim_core::AtmosphericModel::constant();
        let mut out = Vec::new();
        cmd_link_budget(&scenario, 90.0, true, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let sul_row: Vec<&str> = text.lines().nth(2).unwrap().split(',').collect();
        let snr: f64 = sul_row[14].parse().unwrap();
        assert!((snr - 16.904575).abs() < 1e-3, "snr {snr}");
    }

    #[test]
    fn link_budget_rejects_out_of_range_elevation() {
        let e = cmd_link_budget(&default_scenario(), 95.0, true, &mut Vec::new()).unwrap_err();
        assert_eq!(e.exit_code(), 4);
    }

    #[test]
    fn hysteresis_sweep_csv_shape() {
        let scenario = default_scenario(); // sigma = 0
        let mut out = Vec::new();
        cmd_hysteresis_sweep(&scenario, 0.0, 2.0, 1.0, 5, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], HYSTERESIS_CSV_HEADER);
        assert_eq!(lines.len(), 4);
        // deterministic: mean equals p95 on every row
        for row in &lines[1..] {
            let cols: Vec<&str> = row.split(',').collect();
            assert_eq!(cols[1], cols[2]);
        }
    }

    #[test]
    fn hysteresis_sweep_rejects_zero_seeds() {
        let e = cmd_hysteresis_sweep(&default_scenario(), 0.0, 1.0, 0.5, 0, &mut Vec::new())
            .unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn invalid_scenario_maps_to_validation_error() {
        let mut scenario = default_scenario();
        scenario.noise_sigma_db = -1.0;
        let e = cmd_pass(&scenario, &mut Vec::new(), &mut Vec::new()).unwrap_err();
        assert_eq!(e.exit_code(), 3);
    }
}
