//! Elevation-aware uplink carrier selection with hysteresis.
//!
//! The UE transmits on exactly one carrier at a time. From the PUL it
//! drops to the SUL when the predicted PUL margin falls below the safety
//! margin Δ_s while the SUL still closes; from the SUL it returns to the
//! PUL only once the PUL margin clears Δ_s + Δ_h. The hysteresis band Δ_h
//! separates the two thresholds and suppresses ping-pong switching.
//!
//! All comparisons are strict: equality at a threshold never triggers a
//! switch. The switch-down branch deliberately tests the SUL against 0
//! rather than Δ_s; the safety margin guards only the PUL side.

use crate::link_budget::CarrierId;

/// Switching thresholds, in dB.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControllerConfig {
    /// Safety margin Δ_s below which the PUL is considered unreliable.
    pub safety_margin_db: f64,
    /// Hysteresis margin Δ_h the PUL must clear on top of Δ_s to win back.
    pub hysteresis_margin_db: f64,
    /// Minimum SNR required for reliable uplink transmission.
    pub snr_req_db: f64,
}

impl Default for ControllerConfig {
    fn default() -> Self {
        Self {
            safety_margin_db: 3.0,
            hysteresis_margin_db: 3.0,
            snr_req_db: 0.0,
        }
    }
}

impl ControllerConfig {
    pub fn validate(&self) -> crate::error::Result<()> {
        if self.safety_margin_db < 0.0 {
            return Err(crate::error::Error::invalid_config(
                "controller.safety_margin_db",
                format!("must be >= 0 (got {})", self.safety_margin_db),
            ));
        }
        if self.hysteresis_margin_db < 0.0 {
            return Err(crate::error::Error::invalid_config(
                "controller.hysteresis_margin_db",
                format!("must be >= 0 (got {})", self.hysteresis_margin_db),
            ));
        }
        Ok(())
    }
}

/// Outcome of one controller step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Stay,
    SwitchToPul,
    SwitchToSul,
}

/// Carrier selection state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControllerState {
    pub active_carrier: CarrierId,
    /// Number of carrier changes since the state was created.
    pub switch_count: u32,
    pub last_decision: Decision,
}

impl ControllerState {
    pub fn new(active_carrier: CarrierId) -> Self {
        Self {
            active_carrier,
            switch_count: 0,
            last_decision: Decision::Stay,
        }
    }
}

/// Picks the carrier to camp on before the first step.
///
/// Prefers the PUL when it clears the safety margin, falls back to the
/// SUL when that closes, and camps on the SUL even when it does not (the
/// pass simulation flags such steps as unavailable). The SUL margin does
/// not change the outcome today but is part of the rule's contract.
pub fn initial_carrier(
    cfg: &ControllerConfig,
    margin_pul_db: f64,
    _margin_sul_db: f64,
) -> CarrierId {
    if margin_pul_db >= cfg.safety_margin_db {
        CarrierId::Pul
    } else {
        CarrierId::Sul
    }
}

/// One decision step over the current predicted margins.
///
/// From PUL: switch to SUL iff the PUL margin is below Δ_s and the SUL
/// margin is above 0. From SUL: switch to PUL iff the PUL margin exceeds
/// Δ_s + Δ_h.
/// Anything else stays, including the case where both margins are
/// negative: there is no outage branch, availability accounting happens
/// in the pass simulation.
pub fn step(
    state: &ControllerState,
    cfg: &ControllerConfig,
    margin_pul_db: f64,
    margin_sul_db: f64,
) -> ControllerState {
    let next = match state.active_carrier {
        CarrierId::Pul => {
            if margin_pul_db < cfg.safety_margin_db && margin_sul_db > 0.0 {
                CarrierId::Sul
            } else {
                CarrierId::Pul
            }
        }
        CarrierId::Sul => {
            if margin_pul_db > cfg.safety_margin_db + cfg.hysteresis_margin_db {
                CarrierId::Pul
            } else {
                CarrierId::Sul
            }
        }
    };

    if next == state.active_carrier {
        ControllerState {
            active_carrier: next,
            switch_count: state.switch_count,
            last_decision: Decision::Stay,
        }
    } else {
        ControllerState {
            active_carrier: next,
            switch_count: state.switch_count + 1,
            last_decision: match next {
                CarrierId::Pul => Decision::SwitchToPul,
                CarrierId::Sul => Decision::SwitchToSul,
            },
        }
    }
}

// ── Tests ──────────────────────────────────────────────────────────────
