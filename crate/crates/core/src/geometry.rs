//! Pass geometry for a ground UE observing a LEO satellite.
//!
//! Closed-form spherical geometry on a circular orbit around a non-rotating
//! Earth: elevation angle to slant range, off-nadir/off-boresight angles,
//! the elevation/central-angle inverse pair, and the time-parametrized
//! elevation profile of a single satellite pass.
//!
//! All angles at the public API are degrees; lengths are km; times are
//! seconds. Every function is pure.

use crate::error::{Error, Result};

/// Mean Earth radius in km.
pub const EARTH_RADIUS_KM: f64 = 6371.0;

/// Earth's standard gravitational parameter in km³/s².
pub const EARTH_MU_KM3_S2: f64 = 398600.4418;

/// Orbital geometry and pass limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryConfig {
    /// Earth radius in km.
    pub earth_radius_km: f64,
    /// Satellite altitude above the surface in km.
    pub altitude_km: f64,
    /// Lowest usable elevation angle in degrees (footprint edge).
    pub min_elevation_deg: f64,
    /// Peak elevation of the pass in degrees (90 = directly overhead).
    pub max_elevation_deg: f64,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        Self {
            earth_radius_km: EARTH_RADIUS_KM,
            altitude_km: 600.0,
            min_elevation_deg: 10.0,
            max_elevation_deg: 90.0,
        }
    }
}

impl GeometryConfig {
    /// Orbit radius measured from the Earth center, in km.
    pub fn orbit_radius_km(&self) -> f64 {
        self.earth_radius_km + self.altitude_km
    }

    /// Angular rate of a circular orbit at the configured altitude, rad/s.
    pub fn orbital_angular_rate_rad_s(&self) -> f64 {
        (EARTH_MU_KM3_S2 / self.orbit_radius_km().powi(3)).sqrt()
    }

    /// Orbital speed in km/s.
    pub fn orbital_speed_kms(&self) -> f64 {
        self.orbital_angular_rate_rad_s() * self.orbit_radius_km()
    }

    pub fn validate(&self) -> Result<()> {
        if self.earth_radius_km <= 0.0 {
            return Err(Error::invalid_config(
                "geometry.earth_radius_km",
                format!("must be > 0 (got {})", self.earth_radius_km),
            ));
        }
        if self.altitude_km <= 0.0 {
            return Err(Error::invalid_config(
                "geometry.altitude_km",
                format!("must be > 0 (got {})", self.altitude_km),
            ));
        }
        if !(self.min_elevation_deg > 0.0 && self.min_elevation_deg < self.max_elevation_deg) {
            return Err(Error::invalid_config(
                "geometry.min_elevation_deg",
                format!(
                    "must satisfy 0 < min < max (got min {}, max {})",
                    self.min_elevation_deg, self.max_elevation_deg
                ),
            ));
        }
        if self.max_elevation_deg > 90.0 {
            return Err(Error::invalid_config(
                "geometry.max_elevation_deg",
                format!("must be <= 90 (got {})", self.max_elevation_deg),
            ));
        }
        Ok(())
    }
}

/// How the satellite beam boresight relates to the UE.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeamMode {
    /// Boresight tracks the UE; the UE is always at beam center.
    UeCentered,
    /// Single beam pointing at nadir; the UE sits off-boresight by the
    /// off-nadir angle of its direction as seen from the satellite.
    NadirFixed,
}

/// Shape of the simulated pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PassShape {
    /// Rise from minimum elevation to the peak only.
    AscendOnly,
    /// Rise to the peak, then set back to minimum elevation.
    FullPass,
}

/// One time sample of the pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PassSample {
    pub time_s: f64,
    pub elevation_deg: f64,
}

/// Time-parametrized elevation profile of one satellite pass.
#[derive(Debug, Clone, PartialEq)]
pub struct PassProfile {
    pub samples: Vec<PassSample>,
    pub shape: PassShape,
    pub sample_step_s: f64,
}

impl PassProfile {
    /// Total pass duration in seconds.
    pub fn duration_s(&self) -> f64 {
        self.samples.last().map(|s| s.time_s).unwrap_or(0.0)
    }

    /// Time of peak elevation (end of ascent).
    pub fn peak_time_s(&self) -> f64 {
        self.samples
            .iter()
            .max_by(|a, b| a.elevation_deg.total_cmp(&b.elevation_deg))
            .map(|s| s.time_s)
            .unwrap_or(0.0)
    }
}

fn check_elevation(elevation_deg: f64) -> Result<f64> {
    if !(0.0..=90.0).contains(&elevation_deg) {
        return Err(Error::ElevationOutOfRange(elevation_deg));
    }
    Ok(elevation_deg)
}

/// Line-of-sight distance from the UE to the satellite, in km:
/// d(θ) = √((R_E+h)² − R_E²·cos²θ) − R_E·sinθ.
///
/// Strictly decreasing in elevation; equals the altitude at zenith.
pub fn slant_range(cfg: &GeometryConfig, elevation_deg: f64) -> Result<f64> {
    let theta = check_elevation(elevation_deg)?.to_radians();
    let r_orbit = cfg.orbit_radius_km();
    let re = cfg.earth_radius_km;
    Ok((r_orbit * r_orbit - re * re * theta.cos().powi(2)).sqrt() - re * theta.sin())
}

/// Angular offset of the UE direction from the satellite beam boresight,
/// in degrees.
///
/// `UeCentered` is 0 by definition. `NadirFixed` returns the off-nadir
/// angle α(θ) = arcsin((R_E/(R_E+h))·cosθ) of the UE as seen from a
/// nadir-pointing satellite.
pub fn off_boresight_angle(
    cfg: &GeometryConfig,
    elevation_deg: f64,
    beam_mode: BeamMode,
) -> Result<f64> {
    let theta = check_elevation(elevation_deg)?.to_radians();
    match beam_mode {
        BeamMode::UeCentered => Ok(0.0),
        BeamMode::NadirFixed => {
            let ratio = cfg.earth_radius_km / cfg.orbit_radius_km();
            Ok((ratio * theta.cos()).asin().to_degrees())
        }
    }
}

/// Elevation angle of the satellite for a given Earth-central angle ψ
/// between the UE and the sub-satellite point, in degrees.
///
/// tanθ = (cosψ − R_E/(R_E+h)) / sinψ, clamped to [0°, 90°]. Central
/// angles near zero collapse to the zenith case.
pub fn elevation_from_central_angle(cfg: &GeometryConfig, central_angle_deg: f64) -> Result<f64> {
    if central_angle_deg <= 0.0 {
        return Err(Error::CentralAngleOutOfRange(central_angle_deg));
    }
    let psi = central_angle_deg.to_radians();
    let denom = psi.sin();
    // sub-satellite point limit: the formula degenerates as psi -> 0
    if denom.abs() < 1e-12 {
        return Ok(90.0);
    }
    let t = (psi.cos() - cfg.earth_radius_km / cfg.orbit_radius_km()) / denom;
    Ok(t.atan().to_degrees().clamp(0.0, 90.0))
}

/// Earth-central angle ψ between the UE and the sub-satellite point for a
/// given elevation, in degrees. Inverse of [`elevation_from_central_angle`].
///
/// Uses the angle sum of the Earth-center/UE/satellite triangle:
/// ψ = 90° − θ − α(θ) with α the off-nadir angle.
pub fn central_angle_from_elevation(cfg: &GeometryConfig, elevation_deg: f64) -> Result<f64> {
    let theta = check_elevation(elevation_deg)?;
    let off_nadir = off_boresight_angle(cfg, theta, BeamMode::NadirFixed)?;
    Ok(90.0 - theta - off_nadir)
}

/// Angle φ between the satellite velocity vector and the line of sight
/// towards the UE, in degrees.
///
/// Computed for a circular pass whose peak elevation is
/// `cfg.max_elevation_deg`. φ < 90° while the satellite approaches
/// (positive Doppler), exactly 90° at the pass peak, and > 90° while it
/// recedes. `ascending` selects the approach (true) or recede branch.
pub fn velocity_angle_deg(cfg: &GeometryConfig, elevation_deg: f64, ascending: bool) -> Result<f64> {
    let theta = check_elevation(elevation_deg)?;
    let psi_min = central_angle_from_elevation(cfg, cfg.max_elevation_deg)?.to_radians();
    let psi = central_angle_from_elevation(cfg, theta)?.to_radians();

    // along-track angle from closest approach; spherical Pythagoras
    // cos psi = cos psi_min * cos beta
    let cos_beta = (psi.cos() / psi_min.cos()).clamp(-1.0, 1.0);
    let beta = if ascending { -cos_beta.acos() } else { cos_beta.acos() };

    let d = slant_range(cfg, theta)?;
    let cos_phi = (-cfg.earth_radius_km * psi_min.cos() * beta.sin() / d).clamp(-1.0, 1.0);
    Ok(cos_phi.acos().to_degrees())
}

/// Builds the time-sampled elevation profile of one pass.
///
/// The pass is a circular-orbit overpass with angular rate
/// ω = √(μ/(R_E+h)³) over a non-rotating Earth, reaching
/// `max_elevation_deg` at closest approach. Samples are spaced
/// `sample_step_s` apart starting at the minimum elevation; the exact
/// peak sample is always included, so the final step of the ascent may be
/// shorter than the nominal step. `FullPass` mirrors the ascent about the
/// peak, which makes the profile time-symmetric sample for sample.
pub fn build_pass_profile(
    cfg: &GeometryConfig,
    shape: PassShape,
    sample_step_s: f64,
) -> Result<PassProfile> {
    cfg.validate()?;
    if sample_step_s <= 0.0 {
        return Err(Error::NonPositive {
            name: "sample_step_s",
            value: sample_step_s,
        });
    }

    let psi_min = central_angle_from_elevation(cfg, cfg.max_elevation_deg)?.to_radians();
    let psi_max = central_angle_from_elevation(cfg, cfg.min_elevation_deg)?.to_radians();
    let omega = cfg.orbital_angular_rate_rad_s();

    // along-track half-width of the pass and its duration
    let beta_max = (psi_max.cos() / psi_min.cos()).clamp(-1.0, 1.0).acos();
    let t_half = beta_max / omega;

    let mut samples = Vec::new();
    let mut i = 0u64;
    loop {
        let t = i as f64 * sample_step_s;
        if t >= t_half - 1e-9 {
            break;
        }
        let elevation = if i == 0 {
            cfg.min_elevation_deg
        } else {
            let beta = omega * (t - t_half);
            let psi = (psi_min.cos() * beta.cos()).clamp(-1.0, 1.0).acos();
            elevation_from_central_angle(cfg, psi.to_degrees().max(f64::MIN_POSITIVE))?
        };
        samples.push(PassSample {
            time_s: t,
            elevation_deg: elevation,
        });
        i += 1;
    }
    samples.push(PassSample {
        time_s: t_half,
        elevation_deg: cfg.max_elevation_deg,
    });

    if shape == PassShape::FullPass {
        // mirror the ascent about the peak
        let ascent_len = samples.len();
        for k in (0..ascent_len - 1).rev() {
            let src = samples[k];
            samples.push(PassSample {
                time_s: 2.0 * t_half - src.time_s,
                elevation_deg: src.elevation_deg,
            });
        }
    }

    Ok(PassProfile {
        samples,
        shape,
        sample_step_s,
    })
}

// ── Tests ──────────────────────────────────────────────────────────────

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn cfg600() -> GeometryConfig {
        GeometryConfig::default()
    }

    #[test]
    fn slant_range_at_zenith_equals_altitude() {
        let d = slant_range(&cfg600(), 90.0).unwrap();
        assert_eq!(d, 600.0);
    }

    #[test]
    fn slant_range_at_footprint_edge() {
        // ~1930 km at the 10 deg minimum elevation for h = 600 km
        let d = slant_range(&cfg600(), 10.0).unwrap();
        assert_abs_diff_eq!(d, 1931.6353589090186, epsilon = 1e-6);
        assert!((d - 1930.0).abs() < 5.0);
    }

    #[test]
    fn slant_range_at_horizon() {
        let d = slant_range(&cfg600(), 0.0).unwrap();
        assert_abs_diff_eq!(d, 2829.3462142339527, epsilon = 1e-6);
    }

    #[test]
    fn slant_range_rejects_out_of_range_elevation() {
        assert_eq!(
            slant_range(&cfg600(), -1.0),
            Err(Error::ElevationOutOfRange(-1.0))
        );
        assert_eq!(
            slant_range(&cfg600(), 90.5),
            Err(Error::ElevationOutOfRange(90.5))
        );
    }

    #[test]
    fn off_boresight_ue_centered_is_zero() {
        assert_eq!(
            off_boresight_angle(&cfg600(), 45.0, BeamMode::UeCentered).unwrap(),
            0.0
        );
    }

    #[test]
    fn off_boresight_nadir_fixed() {
        // zenith UE sits exactly in the nadir direction
        let at_zenith = off_boresight_angle(&cfg600(), 90.0, BeamMode::NadirFixed).unwrap();
        assert_abs_diff_eq!(at_zenith, 0.0, epsilon = 1e-9);

        // arcsin((6371/6971)*cos 10 deg)
        let at_edge = off_boresight_angle(&cfg600(), 10.0, BeamMode::NadirFixed).unwrap();
        assert_abs_diff_eq!(at_edge, 64.16391689566444, epsilon = 1e-6);
    }

    #[test]
    fn elevation_at_vanishing_central_angle_is_zenith() {
        let e = elevation_from_central_angle(&cfg600(), 1e-13).unwrap();
        assert_eq!(e, 90.0);
    }

    #[test]
    fn elevation_rejects_non_positive_central_angle() {
        assert_eq!(
            elevation_from_central_angle(&cfg600(), 0.0),
            Err(Error::CentralAngleOutOfRange(0.0))
        );
    }

    #[test]
    fn central_angle_round_trip() {
        let cfg = cfg600();
        for elev in [10.0, 25.0, 47.3, 60.0, 89.0] {
            let psi = central_angle_from_elevation(&cfg, elev).unwrap();
            let back = elevation_from_central_angle(&cfg, psi).unwrap();
            assert_abs_diff_eq!(back, elev, epsilon = 1e-9);
        }
    }

    // Brute-force oracle: solve the Earth-center/UE/satellite triangle with
    // plane vectors instead of the closed form.
    fn elevation_triangle_oracle(cfg: &GeometryConfig, central_angle_deg: f64) -> f64 {
        let psi = central_angle_deg.to_radians();
        let re = cfg.earth_radius_km;
        let r = cfg.orbit_radius_km();
        let ue = (re, 0.0);
        let sat = (r * psi.cos(), r * psi.sin());
        let los = (sat.0 - ue.0, sat.1 - ue.1);
        let d = (los.0 * los.0 + los.1 * los.1).sqrt();
        // local vertical at the UE is the radial direction (1, 0)
        (los.0 / d).asin().to_degrees()
    }

    #[test]
    fn elevation_matches_triangle_oracle() {
        let cfg = cfg600();
        for psi in [0.5, 2.0, 5.0, 10.0, 15.0] {
            let closed = elevation_from_central_angle(&cfg, psi).unwrap();
            let oracle = elevation_triangle_oracle(&cfg, psi);
            assert_abs_diff_eq!(closed, oracle, epsilon = 1e-9);
        }
        // frozen value for psi = 10 deg, h = 600 km
        assert_abs_diff_eq!(
            elevation_from_central_angle(&cfg, 10.0).unwrap(),
            22.203990689597596,
            epsilon = 1e-9
        );
    }

    #[test]
    fn pass_profile_endpoints_and_peak() {
        let cfg = cfg600();
        let full = build_pass_profile(&cfg, PassShape::FullPass, 1.0).unwrap();
        assert_eq!(full.samples.first().unwrap().elevation_deg, 10.0);
        assert_eq!(full.samples.last().unwrap().elevation_deg, 10.0);
        let peak = full
            .samples
            .iter()
            .map(|s| s.elevation_deg)
            .fold(f64::MIN, f64::max);
        assert_eq!(peak, 90.0);
    }

    #[test]
    fn ascend_only_profile_is_monotone() {
        let p = build_pass_profile(&cfg600(), PassShape::AscendOnly, 1.0).unwrap();
        for w in p.samples.windows(2) {
            assert!(w[1].elevation_deg >= w[0].elevation_deg);
            assert!(w[1].time_s > w[0].time_s);
        }
        assert_eq!(p.samples.last().unwrap().elevation_deg, 90.0);
    }

    #[test]
    fn full_pass_is_time_symmetric() {
        let p = build_pass_profile(&cfg600(), PassShape::FullPass, 1.0).unwrap();
        let n = p.samples.len();
        let total = p.duration_s();
        for k in 0..n {
            let a = &p.samples[k];
            let b = &p.samples[n - 1 - k];
            assert_abs_diff_eq!(a.time_s, total - b.time_s, epsilon = 1e-9);
            assert_eq!(a.elevation_deg, b.elevation_deg);
        }
    }

    #[test]
    fn pass_duration_matches_fine_step_oracle() {
        // integrate the along-track angle at 1 ms until elevation drops
        // below the minimum, independently of build_pass_profile
        let cfg = cfg600();
        let omega = cfg.orbital_angular_rate_rad_s();
        let psi_max = central_angle_from_elevation(&cfg, cfg.min_elevation_deg)
            .unwrap()
            .to_radians();
        let mut t = 0.0;
        let dt = 1e-3;
        while (omega * t) < psi_max {
            t += dt;
        }
        let oracle_half = t;

        let p = build_pass_profile(&cfg, PassShape::AscendOnly, 1.0).unwrap();
        assert_abs_diff_eq!(p.duration_s(), oracle_half, epsilon = 2.0 * dt);
        // frozen: ~254.8 s from 10 deg to zenith at h = 600 km
        assert_abs_diff_eq!(p.duration_s(), 254.7996786877602, epsilon = 1e-6);
    }

    #[test]
    fn pass_profile_with_lower_peak() {
        let cfg = GeometryConfig {
            max_elevation_deg: 45.0,
            ..cfg600()
        };
        let p = build_pass_profile(&cfg, PassShape::FullPass, 1.0).unwrap();
        let peak = p
            .samples
            .iter()
            .map(|s| s.elevation_deg)
            .fold(f64::MIN, f64::max);
        assert_eq!(peak, 45.0);
        assert!(p.samples.iter().all(|s| s.elevation_deg >= 10.0 - 1e-12));
    }

    #[test]
    fn velocity_angle_is_90_at_peak() {
        let phi = velocity_angle_deg(&cfg600(), 90.0, true).unwrap();
        assert_abs_diff_eq!(phi, 90.0, epsilon = 1e-6);
    }

    #[test]
    fn velocity_angle_brackets_approach_and_recede() {
        let approach = velocity_angle_deg(&cfg600(), 30.0, true).unwrap();
        let recede = velocity_angle_deg(&cfg600(), 30.0, false).unwrap();
        assert!(approach < 90.0);
        assert!(recede > 90.0);
        assert_abs_diff_eq!(approach + recede, 180.0, epsilon = 1e-9);
    }

    #[test]
    fn config_validation_catches_bad_fields() {
        let mut cfg = cfg600();
        cfg.altitude_km = -1.0;
        assert!(matches!(
            cfg.validate(),
            Err(Error::InvalidConfig { field, .. }) if field == "geometry.altitude_km"
        ));

        let mut cfg = cfg600();
        cfg.min_elevation_deg = 95.0;
        assert!(cfg.validate().is_err());
    }
}
