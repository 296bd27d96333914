//! Error type shared by all simulator modules.

/// Errors produced by geometry, link-budget, and simulation operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Elevation angle outside the geometric domain [0°, 90°].
    #[error("elevation angle {0}° is outside [0°, 90°]")]
    ElevationOutOfRange(f64),

    /// Central angle must be strictly positive.
    #[error("central angle {0}° must be > 0°")]
    CentralAngleOutOfRange(f64),

    /// A quantity that must be strictly positive was not.
    #[error("{name} must be > 0 (got {value})")]
    NonPositive { name: &'static str, value: f64 },

    /// Off-boresight gain evaluation without a configured beamwidth.
    #[error("off-boresight angle {0}° requires a positive 3 dB beamwidth")]
    BeamwidthRequired(f64),

    /// A configuration invariant was violated. `field` names the offending
    /// field using `section.field` notation.
    #[error("invalid configuration: {field}: {message}")]
    InvalidConfig { field: String, message: String },
}

impl Error {
    pub(crate) fn invalid_config(field: &str, message: impl Into<String>) -> Self {
        Error::InvalidConfig {
            field: field.to_string(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
