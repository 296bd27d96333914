//! TOML scenario files.
//!
//! A scenario file mirrors [`ScenarioConfig`] field for field. Every key
//! is optional except `schema_version`; missing keys fall back to the
//! default scenario (the reference L-band SUL / Ka-band PUL parameter
//! set). Unknown keys are rejected.
//!
//! ```toml
//! schema_version = 1
//! pass_shape = "full_pass"
//!
//! [geometry]
//! altitude_km = 600.0
//!
//! [controller]
//! hysteresis_margin_db = 3.0
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};
use sulsim_core::{
    AtmosphericKind, BeamMode, CarrierConfig, CarrierMode, PassShape, ScenarioConfig,
};

use crate::CliError;

/// The one schema revision this build reads and writes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum BeamModeRepr {
    UeCentered,
    NadirFixed,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum CarrierModeRepr {
    SulEnabled,
    PulOnly,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum PassShapeRepr {
    AscendOnly,
    FullPass,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum AtmKindRepr {
    Constant,
    CosecantScaled,
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeometrySection {
    #[serde(skip_serializing_if = "Option::is_none")]
    earth_radius_km: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    altitude_km: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_elevation_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_elevation_deg: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CarrierSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    frequency_mhz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tx_power_dbm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ue_gain_dbi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sat_peak_gain_dbi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beamwidth_3db_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    atm_loss_ref_db: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    impl_loss_db: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    noise_temp_k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bandwidth_hz: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AtmSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    kind: Option<AtmKindRepr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference_elevation_deg: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ControllerSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    safety_margin_db: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hysteresis_margin_db: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    snr_req_db: Option<f64>,
}

/// On-disk scenario document. Scalar keys first: TOML requires values
/// ahead of tables.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    schema_version: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beam_mode: Option<BeamModeRepr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    carrier_mode: Option<CarrierModeRepr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    noise_sigma_db: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rng_seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pass_shape: Option<PassShapeRepr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sample_step_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    geometry: Option<GeometrySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pul: Option<CarrierSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sul: Option<CarrierSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    atm_model: Option<AtmSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    controller: Option<ControllerSection>,
}

fn apply_carrier(base: &mut CarrierConfig, section: &CarrierSection) {
    if let Some(v) = section.frequency_mhz {
        base.frequency_mhz = v;
    }
    if let Some(v) = section.tx_power_dbm {
        base.tx_power_dbm = v;
    }
    if let Some(v) = section.ue_gain_dbi {
        base.ue_gain_dbi = v;
    }
    if let Some(v) = section.sat_peak_gain_dbi {
        base.sat_peak_gain_dbi = v;
    }
    if let Some(v) = section.beamwidth_3db_deg {
        base.beamwidth_3db_deg = Some(v);
    }
    if let Some(v) = section.atm_loss_ref_db {
        base.atm_loss_ref_db = v;
    }
    if let Some(v) = section.impl_loss_db {
        base.impl_loss_db = v;
    }
    if let Some(v) = section.noise_temp_k {
        base.noise_temp_k = v;
    }
    if let Some(v) = section.bandwidth_hz {
        base.bandwidth_hz = v;
    }
}

fn merge_into_defaults(file: &ScenarioFile) -> ScenarioConfig {
    let mut cfg = ScenarioConfig::default();

    if let Some(g) = &file.geometry {
        if let Some(v) = g.earth_radius_km {
            cfg.geometry.earth_radius_km = v;
        }
        if let Some(v) = g.altitude_km {
            cfg.geometry.altitude_km = v;
        }
        if let Some(v) = g.min_elevation_deg {
            cfg.geometry.min_elevation_deg = v;
        }
        if let Some(v) = g.max_elevation_deg {
            cfg.geometry.max_elevation_deg = v;
        }
    }
    if let Some(c) = &file.pul {
        apply_carrier(&mut cfg.pul, c);
    }
    if let Some(c) = &file.sul {
        apply_carrier(&mut cfg.sul, c);
    }
    if let Some(a) = &file.atm_model {
        if let Some(kind) = a.kind {
            cfg.atm_model.kind = match kind {
                AtmKindRepr::Constant => AtmosphericKind::Constant,
                AtmKindRepr::CosecantScaled => AtmosphericKind::CosecantScaled,
            };
        }
        if let Some(v) = a.reference_elevation_deg {
            cfg.atm_model.reference_elevation_deg = v;
        }
    }
    if let Some(c) = &file.controller {
        if let Some(v) = c.safety_margin_db {
            cfg.controller.safety_margin_db = v;
        }
        if let Some(v) = c.hysteresis_margin_db {
            cfg.controller.hysteresis_margin_db = v;
        }
        if let Some(v) = c.snr_req_db {
            cfg.controller.snr_req_db = v;
        }
    }
    if let Some(v) = file.beam_mode {
        cfg.beam_mode = match v {
            BeamModeRepr::UeCentered => BeamMode::UeCentered,
            BeamModeRepr::NadirFixed => BeamMode::NadirFixed,
        };
    }
    if let Some(v) = file.carrier_mode {
        cfg.carrier_mode = match v {
            CarrierModeRepr::SulEnabled => CarrierMode::SulEnabled,
            CarrierModeRepr::PulOnly => CarrierMode::PulOnly,
        };
    }
    if let Some(v) = file.noise_sigma_db {
        cfg.noise_sigma_db = v;
    }
    if let Some(v) = file.rng_seed {
        cfg.rng_seed = v;
    }
    if let Some(v) = file.pass_shape {
        cfg.pass_shape = match v {
            PassShapeRepr::AscendOnly => PassShape::AscendOnly,
            PassShapeRepr::FullPass => PassShape::FullPass,
        };
    }
    if let Some(v) = file.sample_step_s {
        cfg.sample_step_s = v;
    }
    cfg
}

/// Parses and validates a scenario document.
pub fn parse_scenario(text: &str) -> Result<ScenarioConfig, CliError> {
    let file: ScenarioFile = toml::from_str(text)
        .map_err(|e| CliError::Usage(format!("scenario parse error: {e}")))?;
    match file.schema_version {
        Some(SCHEMA_VERSION) => {}
        Some(found) => {
            return Err(CliError::Validation(format!(
                "schema_version: expected {SCHEMA_VERSION}, found {found}"
            )))
        }
        None => {
            return Err(CliError::Validation(format!(
                "schema_version: missing (expected {SCHEMA_VERSION})"
            )))
        }
    }
    let cfg = merge_into_defaults(&file);
    cfg.validate()
        .map_err(|e| CliError::Validation(e.to_string()))?;
    Ok(cfg)
}

/// Loads a scenario file from disk.
pub fn load_scenario(path: &Path) -> Result<ScenarioConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_scenario(&text)
}

/// Serializes a scenario back into the file format. Reloading the output
/// reproduces the input exactly.
pub fn scenario_to_toml(cfg: &ScenarioConfig) -> String {
    let file = ScenarioFile {
        schema_version: Some(SCHEMA_VERSION),
        beam_mode: Some(match cfg.beam_mode {
            BeamMode::UeCentered => BeamModeRepr::UeCentered,
            BeamMode::NadirFixed => BeamModeRepr::NadirFixed,
        }),
        carrier_mode: Some(match cfg.carrier_mode {
            CarrierMode::SulEnabled => CarrierModeRepr::SulEnabled,
            CarrierMode::PulOnly => CarrierModeRepr::PulOnly,
        }),
        noise_sigma_db: Some(cfg.noise_sigma_db),
        rng_seed: Some(cfg.rng_seed),
        pass_shape: Some(match cfg.pass_shape {
            PassShape::AscendOnly => PassShapeRepr::AscendOnly,
            PassShape::FullPass => PassShapeRepr::FullPass,
        }),
        sample_step_s: Some(cfg.sample_step_s),
        geometry: Some(GeometrySection {
            earth_radius_km: Some(cfg.geometry.earth_radius_km),
            altitude_km: Some(cfg.geometry.altitude_km),
            min_elevation_deg: Some(cfg.geometry.min_elevation_deg),
            max_elevation_deg: Some(cfg.geometry.max_elevation_deg),
        }),
        pul: Some(carrier_section(&cfg.pul)),
        sul: Some(carrier_section(&cfg.sul)),
        atm_model: Some(AtmSection {
            kind: Some(match cfg.atm_model.kind {
                AtmosphericKind::Constant => AtmKindRepr::Constant,
                AtmosphericKind::CosecantScaled => AtmKindRepr::CosecantScaled,
            }),
            reference_elevation_deg: Some(cfg.atm_model.reference_elevation_deg),
        }),
        controller: Some(ControllerSection {
            safety_margin_db: Some(cfg.controller.safety_margin_db),
            hysteresis_margin_db: Some(cfg.controller.hysteresis_margin_db),
            snr_req_db: Some(cfg.controller.snr_req_db),
        }),
    };
    toml::to_string(&file).expect("scenario serialization cannot fail")
}

fn carrier_section(c: &CarrierConfig) -> CarrierSection {
    CarrierSection {
        frequency_mhz: Some(c.frequency_mhz),
        tx_power_dbm: Some(c.tx_power_dbm),
        ue_gain_dbi: Some(c.ue_gain_dbi),
        sat_peak_gain_dbi: Some(c.sat_peak_gain_dbi),
        beamwidth_3db_deg: c.beamwidth_3db_deg,
        atm_loss_ref_db: Some(c.atm_loss_ref_db),
        impl_loss_db: Some(c.impl_loss_db),
        noise_temp_k: Some(c.noise_temp_k),
        bandwidth_hz: Some(c.bandwidth_hz),
    }
}

// ── Tests ──────────────────────────────────────────────────────────────

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_yields_default_scenario() {
        let cfg = parse_scenario("schema_version = 1\n").unwrap();
        assert_eq!(cfg, ScenarioConfig::default());
    }

    #[test]
    fn missing_schema_version_is_rejected() {
        let err = parse_scenario("").unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("schema_version"));
    }

    #[test]
    fn wrong_schema_version_is_rejected() {
        let err = parse_scenario("schema_version = 2\n").unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("expected 1"));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = parse_scenario("schema_version = 1\nbogus = true\n").unwrap_err();
        assert_eq!(err.exit_code(), 2);

        let nested = parse_scenario("schema_version = 1\n[geometry]\naltitude_miles = 1.0\n")
            .unwrap_err();
        assert_eq!(nested.exit_code(), 2);
    }

    #[test]
    fn frequency_ordering_violation_names_the_constraint() {
        let doc = "schema_version = 1\n[sul]\nfrequency_mhz = 40000.0\n";
        let err = parse_scenario(doc).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        let msg = err.to_string();
        assert!(msg.contains("sul.frequency_mhz"), "{msg}");
        assert!(msg.contains("f_s < f_p"), "{msg}");
    }

    #[test]
    fn partial_overrides_keep_other_defaults() {
        let doc = "schema_version = 1\nnoise_sigma_db = 2.0\n[controller]\nhysteresis_margin_db = 5.0\n";
        let cfg = parse_scenario(doc).unwrap();
        assert_eq!(cfg.noise_sigma_db, 2.0);
        assert_eq!(cfg.controller.hysteresis_margin_db, 5.0);
        assert_eq!(cfg.controller.safety_margin_db, 3.0);
        assert_eq!(cfg.pul.frequency_mhz, 30_000.0);
    }

    #[test]
    fn round_trip_is_identical() {
        let cfg = ScenarioConfig {
            noise_sigma_db: 1.5,
            rng_seed: 1234,
            pass_shape: PassShape::FullPass,
            pul: CarrierConfig {
                beamwidth_3db_deg: Some(4.4),
                ..CarrierConfig::ka_band_pul()
            },
            atm_model: sulsim_core::AtmosphericModel::constant(),
            ..Default::default()
        };
        let text = scenario_to_toml(&cfg);
        let reloaded = parse_scenario(&text).unwrap();
        assert_eq!(reloaded, cfg);
    }
}
