//! Time-stepped simulation of one satellite pass.
//!
//! Drives the carrier-selection controller with per-step link margins
//! over a sampled pass profile, optionally perturbing the margins the
//! controller sees with seeded Gaussian noise, and aggregates the
//! coverage, availability, and switching metrics.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::geometry::{self, BeamMode, GeometryConfig, PassShape};
use crate::link_budget::{
    self, AtmosphericModel, CarrierConfig, CarrierId, MarginSample,
};
use crate::sul_controller::{self, ControllerConfig, ControllerState};

/// Which carriers the UE is allowed to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarrierMode {
    /// Normal operation: the controller picks between PUL and SUL.
    SulEnabled,
    /// The SUL is never used; the UE stays on the PUL for the whole pass.
    PulOnly,
}

/// Complete description of one simulated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub geometry: GeometryConfig,
    pub pul: CarrierConfig,
    pub sul: CarrierConfig,
    pub atm_model: AtmosphericModel,
    pub controller: ControllerConfig,
    pub beam_mode: BeamMode,
    pub carrier_mode: CarrierMode,
    /// Std-dev of the zero-mean Gaussian perturbation added to each
    /// carrier's margin before the controller sees it, in dB. Zero makes
    /// the run fully deterministic.
    pub noise_sigma_db: f64,
    pub rng_seed: u64,
    pub pass_shape: PassShape,
    pub sample_step_s: f64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            geometry: GeometryConfig::default(),
            pul: CarrierConfig::ka_band_pul(),
            sul: CarrierConfig::l_band_sul(),
            atm_model: AtmosphericModel::default(),
            controller: ControllerConfig::default(),
            beam_mode: BeamMode::UeCentered,
            carrier_mode: CarrierMode::SulEnabled,
            noise_sigma_db: 0.0,
            rng_seed: 42,
            pass_shape: PassShape::AscendOnly,
            sample_step_s: 1.0,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        self.geometry.validate()?;
        self.pul.validate("pul")?;
        self.sul.validate("sul")?;
        self.atm_model.validate()?;
        self.controller.validate()?;
        if self.sul.frequency_mhz >= self.pul.frequency_mhz {
            return Err(Error::invalid_config(
                "sul.frequency_mhz",
                format!(
                    "supplementary uplink must sit below the primary (f_s < f_p), got f_s = {} MHz >= f_p = {} MHz",
                    self.sul.frequency_mhz, self.pul.frequency_mhz
                ),
            ));
        }
        if self.noise_sigma_db < 0.0 {
            return Err(Error::invalid_config(
                "noise_sigma_db",
                format!("must be >= 0 (got {})", self.noise_sigma_db),
            ));
        }
        if self.sample_step_s <= 0.0 {
            return Err(Error::invalid_config(
                "sample_step_s",
                format!("must be > 0 (got {})", self.sample_step_s),
            ));
        }
        Ok(())
    }
}

/// One time step of a simulated pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEntry {
    pub time_s: f64,
    pub sample: MarginSample,
    pub active_carrier: CarrierId,
    /// True when the active carrier's unperturbed margin is >= 0.
    pub available: bool,
}

/// Result of one pass simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct PassResult {
    pub trace: Vec<TraceEntry>,
    pub switch_count: u32,
    /// Fraction of trace samples whose active carrier closed the link.
    pub availability_fraction: f64,
    /// Cumulative distribution of available samples over elevation,
    /// normalized to end at 1 when anything was available.
    pub availability_cdf: Vec<(f64, f64)>,
}

/// Runs one pass simulation.
///
/// Per time step: evaluate both carriers' link margins, add the seeded
/// Gaussian perturbation (controller inputs only), advance the carrier
/// selection, and record availability from the unperturbed margin of
/// whichever carrier is active. With `noise_sigma_db = 0` the run is
/// bit-for-bit deterministic.
pub fn run_pass(scenario: &ScenarioConfig) -> Result<PassResult> {
    scenario.validate()?;

    let profile = geometry::build_pass_profile(
        &scenario.geometry,
        scenario.pass_shape,
        scenario.sample_step_s,
    )?;
    let peak_time = profile.peak_time_s();
    let velocity_kms = scenario.geometry.orbital_speed_kms();

    let mut rng = ChaCha8Rng::seed_from_u64(scenario.rng_seed);
    let noise = if scenario.noise_sigma_db > 0.0 {
        Some(Normal::new(0.0, scenario.noise_sigma_db).expect("validated sigma"))
    } else {
        None
    };
    let mut perturb = move |margin: f64| -> f64 {
        match &noise {
            Some(n) => margin + n.sample(&mut rng),
            None => margin,
        }
    };

    let mut trace = Vec::with_capacity(profile.samples.len());
    let mut state: Option<ControllerState> = None;

    for s in &profile.samples {
        let ascending = s.time_s < peak_time;
        let phi = geometry::velocity_angle_deg(&scenario.geometry, s.elevation_deg, ascending)?;
        let sample = link_budget::margin_sample(
            &scenario.pul,
            &scenario.sul,
            &scenario.atm_model,
            &scenario.geometry,
            scenario.beam_mode,
            s.elevation_deg,
            phi,
            velocity_kms,
            scenario.controller.snr_req_db,
        )?;

        // the controller sees perturbed margins; the trace keeps the
        // model values
        let m_pul = perturb(sample.pul.margin_db);
        let m_sul = perturb(sample.sul.margin_db);

        let next = match scenario.carrier_mode {
            CarrierMode::PulOnly => match state {
                None => ControllerState::new(CarrierId::Pul),
                Some(prev) => prev,
            },
            CarrierMode::SulEnabled => match state {
                None => ControllerState::new(sul_controller::initial_carrier(
                    &scenario.controller,
                    m_pul,
                    m_sul,
                )),
                Some(prev) => sul_controller::step(&prev, &scenario.controller, m_pul, m_sul),
            },
        };

        let available = sample.metrics(next.active_carrier).margin_db >= 0.0;
        trace.push(TraceEntry {
            time_s: s.time_s,
            sample,
            active_carrier: next.active_carrier,
            available,
        });
        state = Some(next);
    }

    let switch_count = state.map(|s| s.switch_count).unwrap_or(0);
    let available = trace.iter().filter(|e| e.available).count();
    let availability_fraction = if trace.is_empty() {
        0.0
    } else {
        available as f64 / trace.len() as f64
    };

    let mut result = PassResult {
        trace,
        switch_count,
        availability_fraction,
        availability_cdf: Vec::new(),
    };
    result.availability_cdf = availability_cdf(&result);
    Ok(result)
}

/// Cumulative fraction of available samples at or below each elevation.
///
/// One point per trace sample, sorted by elevation, normalized by the
/// total number of available samples so the curve ends at 1. Empty when
/// nothing was available.
pub fn availability_cdf(result: &PassResult) -> Vec<(f64, f64)> {
    let total = result.trace.iter().filter(|e| e.available).count();
    if total == 0 {
        return Vec::new();
    }
    let mut by_elevation: Vec<(f64, bool)> = result
        .trace
        .iter()
        .map(|e| (e.sample.elevation_deg, e.available))
        .collect();
    by_elevation.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut seen = 0usize;
    by_elevation
        .into_iter()
        .map(|(elevation, available)| {
            if available {
                seen += 1;
            }
            (elevation, seen as f64 / total as f64)
        })
        .collect()
}

/// Smallest elevation at which the requested mode reaches the target SNR.
///
/// Scans a 0.1° grid from the footprint edge up to 90° and refines the
/// first crossing by bisection to 0.01°. `SulEnabled` takes the better of
/// the two carriers at each elevation. Returns `None` when even the
/// zenith cannot reach the target.
pub fn min_elevation_for_target(
    scenario: &ScenarioConfig,
    target_snr_db: f64,
    mode: CarrierMode,
) -> Result<Option<f64>> {
    scenario.validate()?;

    let best_margin = |elevation: f64| -> Result<f64> {
        let off = geometry::off_boresight_angle(&scenario.geometry, elevation, scenario.beam_mode)?;
        let pul = link_budget::predicted_snr_db(
            &scenario.pul,
            &scenario.atm_model,
            elevation,
            off,
            &scenario.geometry,
        )? - target_snr_db;
        match mode {
            CarrierMode::PulOnly => Ok(pul),
            CarrierMode::SulEnabled => {
                let sul = link_budget::predicted_snr_db(
                    &scenario.sul,
                    &scenario.atm_model,
                    elevation,
                    off,
                    &scenario.geometry,
                )? - target_snr_db;
                Ok(pul.max(sul))
            }
        }
    };

    const GRID_STEP_DEG: f64 = 0.1;
    const REFINE_WIDTH_DEG: f64 = 0.01;

    let start = scenario.geometry.min_elevation_deg;
    let mut grid: Vec<f64> = Vec::new();
    let mut e = start;
    while e < 90.0 {
        grid.push(e);
        e += GRID_STEP_DEG;
    }
    grid.push(90.0);

    let mut previous = start;
    for (i, &elevation) in grid.iter().enumerate() {
        if best_margin(elevation)? >= 0.0 {
            if i == 0 {
                return Ok(Some(start));
            }
            // bisect the bracketing interval down to the output resolution
            let mut lo = previous;
            let mut hi = elevation;
            while hi - lo > REFINE_WIDTH_DEG {
                let mid = 0.5 * (lo + hi);
                if best_margin(mid)? >= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(Some(hi));
        }
        previous = elevation;
    }
    Ok(None)
}

/// Aggregated switching statistics for one hysteresis setting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HysteresisPoint {
    pub hysteresis_db: f64,
    pub mean_switches: f64,
    /// 95th percentile (nearest rank) of the per-seed switch counts.
    pub p95_switches: f64,
}

/// Runs the pass once per (hysteresis value, seed) pair and aggregates
/// switch counts. The scenario's own hysteresis setting and seed are
/// overridden per run; everything else is shared.
pub fn hysteresis_sweep(
    scenario: &ScenarioConfig,
    hysteresis_values_db: &[f64],
    seeds: &[u64],
) -> Result<Vec<HysteresisPoint>> {
    if hysteresis_values_db.is_empty() {
        return Err(Error::invalid_config(
            "hysteresis_values_db",
            "must not be empty",
        ));
    }
    if seeds.is_empty() {
        return Err(Error::invalid_config("seeds", "must not be empty"));
    }

    let mut points = Vec::with_capacity(hysteresis_values_db.len());
    for &dh in hysteresis_values_db {
        let mut counts = Vec::with_capacity(seeds.len());
        for &seed in seeds {
            let mut run = scenario.clone();
            run.controller.hysteresis_margin_db = dh;
            run.rng_seed = seed;
            counts.push(run_pass(&run)?.switch_count);
        }
        counts.sort_unstable();
        let mean = counts.iter().map(|&c| c as f64).sum::<f64>() / counts.len() as f64;
        let rank = ((0.95 * counts.len() as f64).ceil() as usize).max(1);
        let p95 = counts[rank - 1] as f64;
        points.push(HysteresisPoint {
            hysteresis_db: dh,
            mean_switches: mean,
            p95_switches: p95,
        });
    }
    Ok(points)
}

// ── Tests ──────────────────────────────────────────────────────────────
