//! Link-budget and carrier-selection simulator for direct
//! satellite-to-device (DS2D) uplinks.
//!
//! Models a single UE-to-LEO-satellite uplink that can transmit on either
//! a high-frequency primary carrier (PUL) or a lower-frequency
//! supplementary carrier (SUL), one at a time:
//!
//! - [`geometry`]: elevation/slant-range/pass geometry on a circular
//!   orbit.
//! - [`link_budget`]: per-carrier received power, noise, SNR, link
//!   margin, and Doppler.
//! - [`sul_controller`]: the elevation-aware carrier-selection state
//!   machine with safety and hysteresis margins.
//! - [`pass_sim`]: time-stepped pass simulation, coverage/availability
//!   metrics, and the hysteresis switching sweep.

pub mod error;
pub mod geometry;
pub mod link_budget;
pub mod pass_sim;
pub mod sul_controller;

pub use error::{Error, Result};
pub use geometry::{BeamMode, GeometryConfig, PassProfile, PassSample, PassShape};
pub use link_budget::{
    AtmosphericKind, AtmosphericModel, CarrierConfig, CarrierId, CarrierMetrics, MarginSample,
};
pub use pass_sim::{
    CarrierMode, HysteresisPoint, PassResult, ScenarioConfig, TraceEntry,
};
pub use sul_controller::{ControllerConfig, ControllerState, Decision};
