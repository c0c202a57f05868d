//! Incumbent → repository → controller → OA&M command pipeline.
//!
//! The incumbent reports the airplane position on a fixed cadence, the
//! controller turns each report into one directive per cell according to the
//! active [`Policy`], and the schedule makes each command set effective after
//! the control latency. An evacuation request overrides every cell to
//! shutdown while it lasts.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channel::fspl_db;
use crate::config::ScenarioConfig;
use crate::geometry::{closest_point_in_disc, Point3};
use crate::num::Scalar;
use crate::scenario::{CellSite, Deployment};
use crate::{Airplane, Point};

/// Interference-control policy applied by the LSA controller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Policy {
    Ignore,
    Shutdown,
    LimitPower,
}

impl Policy {
    pub const ALL: [Policy; 3] = [Policy::Ignore, Policy::Shutdown, Policy::LimitPower];

    pub fn as_str(self) -> &'static str {
        match self {
            Policy::Ignore => "ignore",
            Policy::Shutdown => "shutdown",
            Policy::LimitPower => "limit-power",
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Policy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Policy::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| {
                format!("unknown policy `{s}`; expected one of: ignore, shutdown, limit-power")
            })
    }
}

/// Airplane position as published by the incumbent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PositionUpdate {
    pub epoch: u64,
    pub issued_at_s: f64,
    pub airplane_position: Point,
    pub telemetry_active: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Directive {
    NoRestriction,
    PowerCap(f64),
    Shutdown,
}

impl Directive {
    pub fn name(&self) -> &'static str {
        match self {
            Directive::NoRestriction => "no_restriction",
            Directive::PowerCap(_) => "power_cap",
            Directive::Shutdown => "shutdown",
        }
    }

    pub fn cap_dbm(&self) -> Option<f64> {
        match self {
            Directive::PowerCap(cap) => Some(*cap),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolicyCommand {
    pub epoch: u64,
    pub issued_at_s: f64,
    pub effective_at_s: f64,
    pub cell_id: usize,
    pub directive: Directive,
}

/// Directives in force, one per cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandSet {
    /// Epoch of the position update that produced the set; `None` before the first one.
    pub epoch: Option<u64>,
    /// Airplane position the directives were derived from.
    pub reported_position: Option<Point>,
    pub directives: Vec<Directive>,
}

impl CommandSet {
    pub fn unrestricted(n_cells: usize) -> Self {
        Self {
            epoch: None,
            reported_position: None,
            directives: vec![Directive::NoRestriction; n_cells],
        }
    }

    fn from_commands(update: &PositionUpdate, commands: &[PolicyCommand]) -> Self {
        Self {
            epoch: Some(update.epoch),
            reported_position: Some(update.airplane_position),
            directives: commands.iter().map(|c| c.directive).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvacuationEvent {
    pub t_start_s: f64,
    pub t_end_s: f64,
}

impl EvacuationEvent {
    pub fn contains(&self, t_s: f64) -> bool {
        const EPS: f64 = 1e-9;
        t_s >= self.t_start_s - EPS && t_s < self.t_end_s - EPS
    }
}

/// Emits a position update iff `t_s` is an update epoch (a multiple of `period_s`).
pub fn incumbent_report(t_s: f64, airplane: &Airplane, period_s: f64) -> Option<PositionUpdate> {
    let k = (t_s / period_s).round();
    if (t_s - k * period_s).abs() > 1e-9 * period_s.max(1.0) {
        return None;
    }
    Some(PositionUpdate {
        epoch: k as u64,
        issued_at_s: t_s,
        airplane_position: airplane.position,
        telemetry_active: airplane.telemetry_active,
    })
}

/// Free-space gain from the closest point of a cell disc to the airplane.
pub fn worst_case_gain_db<T: Scalar>(
    cell_center: &Point3<T>,
    cell_radius_m: T,
    ue_height_m: T,
    airplane: &Point3<T>,
    carrier_hz: T,
) -> T {
    let closest = closest_point_in_disc(cell_center, cell_radius_m, ue_height_m, airplane);
    -fspl_db(closest.distance(airplane), carrier_hz)
}

/// Worst-case gain of `cell` toward the airplane at `airplane_position`.
pub fn worst_case_air_gain_db(
    cell: &CellSite,
    airplane_position: &Point,
    cfg: &ScenarioConfig,
) -> f64 {
    worst_case_gain_db(
        &cell.position,
        cfg.cell_radius_m,
        cfg.ue_height_m,
        airplane_position,
        cfg.carrier_hz,
    )
}

/// Largest transmit power whose margin-inflated worst-case interference meets the threshold.
pub fn power_cap_dbm<T: Scalar>(threshold_dbm: T, margin_db: T, worst_gain_db: T) -> T {
    threshold_dbm - margin_db - worst_gain_db
}

/// Directive for one cell under `policy`.
pub fn cell_directive(policy: Policy, worst_gain_db: f64, cfg: &ScenarioConfig) -> Directive {
    match policy {
        Policy::Ignore => Directive::NoRestriction,
        Policy::LimitPower => {
            let cap = power_cap_dbm(
                cfg.interference_threshold_dbm,
                cfg.protective_margin_db,
                worst_gain_db,
            );
            if cap >= cfg.max_ue_power_dbm {
                Directive::NoRestriction
            } else {
                Directive::PowerCap(cap)
            }
        }
        Policy::Shutdown => {
            let worst = cfg.max_ue_power_dbm + worst_gain_db + cfg.protective_margin_db;
            if worst > cfg.interference_threshold_dbm + cfg.shutdown_margin_db {
                Directive::Shutdown
            } else {
                Directive::NoRestriction
            }
        }
    }
}

/// One command per cell, in cell-id order.
pub fn compute_commands(
    policy: Policy,
    update: &PositionUpdate,
    deployment: &Deployment,
    cfg: &ScenarioConfig,
) -> Vec<PolicyCommand> {
    deployment
        .cells
        .iter()
        .map(|cell| {
            let directive = if update.telemetry_active {
                cell_directive(
                    policy,
                    worst_case_air_gain_db(cell, &update.airplane_position, cfg),
                    cfg,
                )
            } else {
                Directive::NoRestriction
            };
            PolicyCommand {
                epoch: update.epoch,
                issued_at_s: update.issued_at_s,
                effective_at_s: update.issued_at_s + cfg.control_latency_s,
                cell_id: cell.id,
                directive,
            }
        })
        .collect()
}

/// Overrides every directive to shutdown while the evacuation is in force.
pub fn apply_evacuation(
    event: Option<&EvacuationEvent>,
    t_s: f64,
    commands: &CommandSet,
) -> CommandSet {
    match event {
        Some(ev) if ev.contains(t_s) => CommandSet {
            directives: vec![Directive::Shutdown; commands.directives.len()],
            ..commands.clone()
        },
        _ => commands.clone(),
    }
}

/// Delivers command sets to the network after the control latency.
///
/// Sets are applied in issue order; when several become due in the same
/// frame the newest one wins.
#[derive(Debug, Clone)]
pub struct CommandSchedule {
    frame_s: f64,
    active: CommandSet,
    pending: VecDeque<(u64, CommandSet)>,
    log: Vec<PolicyCommand>,
}

impl CommandSchedule {
    pub fn new(n_cells: usize, frame_s: f64) -> Self {
        Self {
            frame_s,
            active: CommandSet::unrestricted(n_cells),
            pending: VecDeque::new(),
            log: Vec::new(),
        }
    }

    /// First frame index whose start time is at or after `t_s`.
    fn frame_not_before(&self, t_s: f64) -> u64 {
        (t_s / self.frame_s - 1e-9).ceil().max(0.0) as u64
    }

    /// Queues the commands of one update; they take effect at `t_s + latency_s`.
    pub fn dispatch(&mut self, update: &PositionUpdate, commands: Vec<PolicyCommand>) {
        let effective_at = commands
            .first()
            .map_or(update.issued_at_s, |c| c.effective_at_s);
        let frame = self.frame_not_before(effective_at);
        let set = CommandSet::from_commands(update, &commands);
        self.log.extend(commands);
        self.pending.push_back((frame, set));
    }

    /// Applies every set due at or before `frame` and returns the set in force.
    pub fn advance_to(&mut self, frame: u64) -> &CommandSet {
        while self.pending.front().is_some_and(|(due, _)| *due <= frame) {
            let (_, set) = self.pending.pop_front().expect("front checked");
            self.active = set;
        }
        &self.active
    }

    pub fn active(&self) -> &CommandSet {
        &self.active
    }

    /// Every command issued so far, in issue order.
    pub fn log(&self) -> &[PolicyCommand] {
        &self.log
    }

    pub fn into_log(self) -> Vec<PolicyCommand> {
        self.log
    }
}
