//! Per-carrier uplink link-budget chain.
//!
//! Evaluates received power, noise, SNR, link margin, and Doppler shift
//! for a UE transmitting to a LEO satellite on either the primary uplink
//! (PUL) or the supplementary uplink (SUL) carrier. All powers and gains
//! are in dB units end to end; nothing round-trips through linear scale.

use crate::error::{Error, Result};
use crate::geometry::{self, BeamMode, GeometryConfig};

/// Speed of light in m/s.
pub const SPEED_OF_LIGHT_M_S: f64 = 299_792_458.0;

/// Nominal LEO orbital speed in km/s, for callers without pass geometry.
pub const DEFAULT_SATELLITE_SPEED_KMS: f64 = 7.5;

/// Thermal noise power spectral density at 290 K, in dBm/Hz.
const NOISE_PSD_290K_DBM_HZ: f64 = -174.0;

/// Which uplink carrier a quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CarrierId {
    Pul,
    Sul,
}

impl std::fmt::Display for CarrierId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CarrierId::Pul => write!(f, "PUL"),
            CarrierId::Sul => write!(f, "SUL"),
        }
    }
}

/// RF parameters of one uplink carrier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarrierConfig {
    pub name: CarrierId,
    /// Carrier frequency in MHz.
    pub frequency_mhz: f64,
    /// UE transmit power in dBm.
    pub tx_power_dbm: f64,
    /// UE antenna gain in dBi.
    pub ue_gain_dbi: f64,
    /// Peak satellite antenna gain in dBi.
    pub sat_peak_gain_dbi: f64,
    /// 3 dB beamwidth in degrees; only needed off boresight.
    pub beamwidth_3db_deg: Option<f64>,
    /// Reference atmospheric loss in dB (see [`AtmosphericModel`]).
    pub atm_loss_ref_db: f64,
    /// Implementation loss in dB (tracking, polarization mismatch, ...).
    pub impl_loss_db: f64,
    /// Satellite receiver system noise temperature in K.
    pub noise_temp_k: f64,
    /// Uplink channel bandwidth in Hz.
    pub bandwidth_hz: f64,
}

impl CarrierConfig {
    /// L-band supplementary uplink reference configuration.
    pub fn l_band_sul() -> Self {
        Self {
            name: CarrierId::Sul,
            frequency_mhz: 1_600.0,
            tx_power_dbm: 23.0,
            ue_gain_dbi: 0.0,
            sat_peak_gain_dbi: 45.0,
            beamwidth_3db_deg: None,
            atm_loss_ref_db: 1.0,
            impl_loss_db: 2.0,
            noise_temp_k: 290.0,
            bandwidth_hz: 10e6,
        }
    }

    /// Ka-band primary uplink reference configuration.
    pub fn ka_band_pul() -> Self {
        Self {
            name: CarrierId::Pul,
            frequency_mhz: 30_000.0,
            tx_power_dbm: 23.0,
            ue_gain_dbi: 0.0,
            sat_peak_gain_dbi: 65.0,
            beamwidth_3db_deg: None,
            atm_loss_ref_db: 15.0,
            impl_loss_db: 2.0,
            noise_temp_k: 500.0,
            bandwidth_hz: 10e6,
        }
    }

    pub fn validate(&self, section: &str) -> Result<()> {
        let positive = [
            ("frequency_mhz", self.frequency_mhz),
            ("noise_temp_k", self.noise_temp_k),
            ("bandwidth_hz", self.bandwidth_hz),
        ];
        for (field, value) in positive {
            if value <= 0.0 {
                return Err(Error::invalid_config(
                    &format!("{section}.{field}"),
                    format!("must be > 0 (got {value})"),
                ));
            }
        }
        let non_negative = [
            ("atm_loss_ref_db", self.atm_loss_ref_db),
            ("impl_loss_db", self.impl_loss_db),
        ];
        for (field, value) in non_negative {
            if value < 0.0 {
                return Err(Error::invalid_config(
                    &format!("{section}.{field}"),
                    format!("must be >= 0 (got {value})"),
                ));
            }
        }
        if let Some(bw) = self.beamwidth_3db_deg {
            if bw <= 0.0 {
                return Err(Error::invalid_config(
                    &format!("{section}.beamwidth_3db_deg"),
                    format!("must be > 0 when set (got {bw})"),
                ));
            }
        }
        Ok(())
    }
}

/// Elevation dependence of the atmospheric loss term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtmosphericKind {
    /// The carrier's reference loss applies at every elevation.
    Constant,
    /// Loss scales as 1/sin(elevation), pinned to the carrier's reference
    /// loss at `reference_elevation_deg`.
    CosecantScaled,
}

/// Parametric atmospheric/rain attenuation model.
///
/// `CosecantScaled` reads the per-carrier reference loss as the value at
/// `reference_elevation_deg` and scales it with the cosecant of the
/// elevation, so low passes see more absorption and the zenith the least.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtmosphericModel {
    pub kind: AtmosphericKind,
    pub reference_elevation_deg: f64,
}

impl Default for AtmosphericModel {
    fn default() -> Self {
        Self::cosecant_scaled(10.0)
    }
}

impl AtmosphericModel {
    pub fn constant() -> Self {
        Self {
            kind: AtmosphericKind::Constant,
            reference_elevation_deg: 10.0,
        }
    }

    pub fn cosecant_scaled(reference_elevation_deg: f64) -> Self {
        Self {
            kind: AtmosphericKind::CosecantScaled,
            reference_elevation_deg,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.reference_elevation_deg > 0.0 && self.reference_elevation_deg <= 90.0) {
            return Err(Error::invalid_config(
                "atm_model.reference_elevation_deg",
                format!(
                    "must be in (0, 90] (got {})",
                    self.reference_elevation_deg
                ),
            ));
        }
        Ok(())
    }
}

/// Link metrics of a single carrier at one evaluation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarrierMetrics {
    pub snr_db: f64,
    pub margin_db: f64,
    pub received_power_dbm: f64,
    pub doppler_hz: f64,
}

/// Full per-time-step link evaluation for both carriers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginSample {
    pub elevation_deg: f64,
    pub slant_range_km: f64,
    /// Angle between the satellite velocity and the line of sight, deg.
    pub velocity_angle_deg: f64,
    pub pul: CarrierMetrics,
    pub sul: CarrierMetrics,
}

impl MarginSample {
    pub fn metrics(&self, carrier: CarrierId) -> &CarrierMetrics {
        match carrier {
            CarrierId::Pul => &self.pul,
            CarrierId::Sul => &self.sul,
        }
    }
}

/// Free-space path loss in dB:
/// 32.45 + 20·log₁₀(f_MHz) + 20·log₁₀(d_km).
pub fn fspl_db(frequency_mhz: f64, distance_km: f64) -> Result<f64> {
    if frequency_mhz <= 0.0 {
        return Err(Error::NonPositive {
            name: "frequency_mhz",
            value: frequency_mhz,
        });
    }
    if distance_km <= 0.0 {
        return Err(Error::NonPositive {
            name: "distance_km",
            value: distance_km,
        });
    }
    Ok(32.45 + 20.0 * frequency_mhz.log10() + 20.0 * distance_km.log10())
}

/// Atmospheric loss for one carrier at the given elevation, in dB.
pub fn atmospheric_loss_db(
    model: &AtmosphericModel,
    carrier: &CarrierConfig,
    elevation_deg: f64,
) -> Result<f64> {
    if elevation_deg <= 0.0 || elevation_deg > 90.0 {
        return Err(Error::ElevationOutOfRange(elevation_deg));
    }
    match model.kind {
        AtmosphericKind::Constant => Ok(carrier.atm_loss_ref_db),
        AtmosphericKind::CosecantScaled => {
            let zenith = carrier.atm_loss_ref_db * model.reference_elevation_deg.to_radians().sin();
            Ok(zenith / elevation_deg.to_radians().sin())
        }
    }
}

/// Satellite antenna gain with quadratic beam roll-off, in dBi:
/// G_max − 12·(θ_off/θ_3dB)².
pub fn sat_gain_db(carrier: &CarrierConfig, off_boresight_deg: f64) -> Result<f64> {
    if off_boresight_deg == 0.0 {
        return Ok(carrier.sat_peak_gain_dbi);
    }
    match carrier.beamwidth_3db_deg {
        Some(bw) if bw > 0.0 => {
            Ok(carrier.sat_peak_gain_dbi - 12.0 * (off_boresight_deg / bw).powi(2))
        }
        _ => Err(Error::BeamwidthRequired(off_boresight_deg)),
    }
}

/// Doppler shift in Hz: f_D = (v/c)·f·cosφ.
///
/// Positive while the satellite approaches (φ < 90°), negative while it
/// recedes. See [`geometry::velocity_angle_deg`] for φ of a pass.
pub fn doppler_shift_hz(frequency_mhz: f64, velocity_kms: f64, velocity_angle_deg: f64) -> f64 {
    let f_hz = frequency_mhz * 1e6;
    let v_m_s = velocity_kms * 1e3;
    (v_m_s / SPEED_OF_LIGHT_M_S) * f_hz * velocity_angle_deg.to_radians().cos()
}

/// Noise power spectral density in dBm/Hz:
/// N₀ = −174 + 10·log₁₀(T_sys/290).
pub fn noise_psd_dbm_hz(noise_temp_k: f64) -> Result<f64> {
    if noise_temp_k <= 0.0 {
        return Err(Error::NonPositive {
            name: "noise_temp_k",
            value: noise_temp_k,
        });
    }
    Ok(NOISE_PSD_290K_DBM_HZ + 10.0 * (noise_temp_k / 290.0).log10())
}

/// Total noise floor N₀ + 10·log₁₀(B) of one carrier, in dBm.
pub fn noise_floor_dbm(carrier: &CarrierConfig) -> Result<f64> {
    if carrier.bandwidth_hz <= 0.0 {
        return Err(Error::NonPositive {
            name: "bandwidth_hz",
            value: carrier.bandwidth_hz,
        });
    }
    Ok(noise_psd_dbm_hz(carrier.noise_temp_k)? + 10.0 * carrier.bandwidth_hz.log10())
}

/// Received uplink power at the satellite, in dBm:
/// P_r = P_t + G_UE + G_sat(θ) − PL_FS(f, d) − L_atm(f, θ) − L_impl.
pub fn received_power_dbm(
    carrier: &CarrierConfig,
    model: &AtmosphericModel,
    elevation_deg: f64,
    off_boresight_deg: f64,
    geometry: &GeometryConfig,
) -> Result<f64> {
    let d = geometry::slant_range(geometry, elevation_deg)?;
    Ok(carrier.tx_power_dbm + carrier.ue_gain_dbi + sat_gain_db(carrier, off_boresight_deg)?
        - fspl_db(carrier.frequency_mhz, d)?
        - atmospheric_loss_db(model, carrier, elevation_deg)?
        - carrier.impl_loss_db)
}

/// Predicted uplink SNR in dB, evaluated as the single term sum
/// P_t + G_UE + G_sat(θ) − PL_FS − L_atm − N₀ − 10·log₁₀(B) − L_impl.
///
/// Algebraically identical to [`received_power_dbm`] minus
/// [`noise_floor_dbm`]; both routes are kept and tested against each
/// other.
pub fn predicted_snr_db(
    carrier: &CarrierConfig,
    model: &AtmosphericModel,
    elevation_deg: f64,
    off_boresight_deg: f64,
    geometry: &GeometryConfig,
) -> Result<f64> {
    let d = geometry::slant_range(geometry, elevation_deg)?;
    Ok(carrier.tx_power_dbm + carrier.ue_gain_dbi + sat_gain_db(carrier, off_boresight_deg)?
        - fspl_db(carrier.frequency_mhz, d)?
        - atmospheric_loss_db(model, carrier, elevation_deg)?
        - noise_psd_dbm_hz(carrier.noise_temp_k)?
        - 10.0 * carrier.bandwidth_hz.log10()
        - carrier.impl_loss_db)
}

/// Predicted link margin in dB: predicted SNR minus the required SNR.
pub fn predicted_margin_db(
    carrier: &CarrierConfig,
    model: &AtmosphericModel,
    elevation_deg: f64,
    off_boresight_deg: f64,
    geometry: &GeometryConfig,
    snr_req_db: f64,
) -> Result<f64> {
    Ok(predicted_snr_db(carrier, model, elevation_deg, off_boresight_deg, geometry)? - snr_req_db)
}

/// Evaluates the full chain for both carriers at one geometry point.
#[allow(clippy::too_many_arguments)]
pub fn margin_sample(
    pul: &CarrierConfig,
    sul: &CarrierConfig,
    model: &AtmosphericModel,
    geometry: &GeometryConfig,
    beam_mode: BeamMode,
    elevation_deg: f64,
    velocity_angle_deg: f64,
    velocity_kms: f64,
    snr_req_db: f64,
) -> Result<MarginSample> {
    let slant_range_km = geometry::slant_range(geometry, elevation_deg)?;
    let off = geometry::off_boresight_angle(geometry, elevation_deg, beam_mode)?;

    let eval = |carrier: &CarrierConfig| -> Result<CarrierMetrics> {
        let snr_db = predicted_snr_db(carrier, model, elevation_deg, off, geometry)?;
        Ok(CarrierMetrics {
            snr_db,
            margin_db: snr_db - snr_req_db,
            received_power_dbm: received_power_dbm(carrier, model, elevation_deg, off, geometry)?,
            doppler_hz: doppler_shift_hz(carrier.frequency_mhz, velocity_kms, velocity_angle_deg),
        })
    };

    Ok(MarginSample {
        elevation_deg,
        slant_range_km,
        velocity_angle_deg,
        pul: eval(pul)?,
        sul: eval(sul)?,
    })
}

// ── Tests ──────────────────────────────────────────────────────────────
