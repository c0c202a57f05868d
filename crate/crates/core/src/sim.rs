//! Simulation driver: advances the airplane, the control pipeline and the
//! radio network frame by frame.

use crate::control::{
    apply_evacuation, compute_commands, incumbent_report, CommandSchedule, EvacuationEvent, Policy,
    PositionUpdate,
};
use crate::metrics::{
    interference_at_airplane, radiated_power_mw, FrameRecord, FrameSummary, RunRecords,
    UeBandRecord, UeRecord,
};
use crate::ran::{Band, FrameOutcome, World};
use crate::scenario::{build_deployment, Deployment, Takeoff};
use crate::ScenarioConfig;

/// One deterministic run of a policy over a deployment.
pub struct Simulation {
    cfg: ScenarioConfig,
    policy: Policy,
    world: World,
    schedule: CommandSchedule,
    takeoff: Takeoff<f64>,
    evacuation: Option<EvacuationEvent>,
    updates: Vec<PositionUpdate>,
    n_frames: u64,
    snapshot_frames: Vec<u64>,
    warnings: Vec<String>,
}

impl Simulation {
    /// Run over the deployment drawn from `cfg.seed`.
    pub fn new(cfg: &ScenarioConfig, policy: Policy) -> Self {
        let deployment = build_deployment(cfg, cfg.seed);
        Self::with_deployment(cfg, policy, deployment)
    }

    pub fn with_deployment(cfg: &ScenarioConfig, policy: Policy, deployment: Deployment) -> Self {
        let n_cells = deployment.cells.len();
        let world = World::new(cfg, deployment, cfg.seed);
        Self::with_world(cfg, policy, world, n_cells)
    }

    fn with_world(cfg: &ScenarioConfig, policy: Policy, world: World, n_cells: usize) -> Self {
        let n_frames = cfg.frame_at(cfg.observation_s);
        let mut warnings = Vec::new();
        let mut snapshot_frames = Vec::new();
        for &t in &cfg.snapshot_times_s {
            let frame = cfg.frame_at(t);
            if frame < n_frames {
                snapshot_frames.push(frame);
            } else {
                warnings.push(format!(
                    "snapshot at {t} s lies beyond the {} s observation window; omitted",
                    cfg.observation_s
                ));
            }
        }
        snapshot_frames.sort_unstable();
        snapshot_frames.dedup();
        Self {
            cfg: cfg.clone(),
            policy,
            world,
            schedule: CommandSchedule::new(n_cells, cfg.frame_s),
            takeoff: Takeoff::from_config(cfg),
            evacuation: cfg
                .evacuation_window_s
                .map(|(t_start_s, t_end_s)| EvacuationEvent { t_start_s, t_end_s }),
            updates: Vec::new(),
            n_frames,
            snapshot_frames,
            warnings,
        }
    }

    /// Shortens or extends the run to `duration_s` (zero gives an empty run).
    pub fn with_duration(mut self, duration_s: f64) -> Self {
        self.n_frames = self.cfg.frame_at(duration_s.max(0.0));
        let n = self.n_frames;
        let before = self.snapshot_frames.len();
        self.snapshot_frames.retain(|f| *f < n);
        if self.snapshot_frames.len() < before {
            self.warnings.push(format!(
                "{} snapshot(s) beyond the {duration_s} s run omitted",
                before - self.snapshot_frames.len()
            ));
        }
        self
    }

    pub fn frame_count(&self) -> u64 {
        self.n_frames
    }

    pub fn world(&self) -> &World {
        &self.world
    }

    pub fn config(&self) -> &ScenarioConfig {
        &self.cfg
    }

    pub fn policy(&self) -> Policy {
        self.policy
    }

    /// Position updates issued so far.
    pub fn updates(&self) -> &[PositionUpdate] {
        &self.updates
    }

    /// Advances one frame; `None` once the run is complete.
    pub fn step(&mut self) -> Option<(FrameRecord, FrameOutcome)> {
        let frame = self.world.frame_index();
        if frame >= self.n_frames {
            return None;
        }
        let t = self.cfg.frame_time(frame);
        let airplane = self.takeoff.state_at(t);

        if frame.is_multiple_of(self.cfg.frames_per_update()) {
            if let Some(update) = incumbent_report(t, &airplane, self.cfg.position_update_s) {
                let commands =
                    compute_commands(self.policy, &update, self.world.deployment(), &self.cfg);
                self.schedule.dispatch(&update, commands);
                self.updates.push(update);
            }
        }
        let active = self.schedule.advance_to(frame);
        // the evacuation request travels through the same control latency
        let in_force = apply_evacuation(
            self.evacuation.as_ref(),
            t - self.cfg.control_latency_s,
            active,
        );

        let outcome = self.world.step_frame(&in_force);
        let interference = airplane.telemetry_active.then(|| {
            interference_at_airplane(
                &outcome.transmissions,
                self.world.ues(),
                &airplane.position,
                self.cfg.carrier_hz,
            )
        });

        let mut ues: Vec<UeRecord> = self
            .world
            .ues()
            .iter()
            .map(|u| UeRecord {
                id: u.id,
                x_m: u.position.x,
                y_m: u.position.y,
                lsa: UeBandRecord {
                    serving_cell: u.lsa.serving_cell,
                    n_rb: 0,
                    tx_power_dbm: u.lsa.current_tx_power_dbm,
                },
                licensed: UeBandRecord {
                    serving_cell: u.licensed.serving_cell,
                    n_rb: 0,
                    tx_power_dbm: u.licensed.current_tx_power_dbm,
                },
            })
            .collect();
        for t in &outcome.transmissions {
            let rec = &mut ues[t.ue];
            match t.band {
                Band::Lsa => rec.lsa.n_rb = t.n_rb,
                Band::Licensed => rec.licensed.n_rb = t.n_rb,
            }
        }

        let record = FrameRecord {
            frame_index: frame,
            t_s: t,
            airplane,
            interference_at_airplane_dbm: interference,
            lsa_radiated_power_mw: radiated_power_mw(&outcome.transmissions, Band::Lsa),
            licensed_radiated_power_mw: radiated_power_mw(&outcome.transmissions, Band::Licensed),
            command_epoch: in_force.epoch,
            ues,
        };
        Some((record, outcome))
    }

    /// Runs to completion, handing every frame to `observe`.
    pub fn run_with(mut self, mut observe: impl FnMut(&FrameRecord, &FrameOutcome)) -> RunOutput {
        let mut frames: Vec<FrameSummary> = Vec::with_capacity(self.n_frames as usize);
        let mut snapshots = Vec::new();
        while let Some((record, outcome)) = self.step() {
            observe(&record, &outcome);
            frames.push(record.summary());
            if self
                .snapshot_frames
                .binary_search(&record.frame_index)
                .is_ok()
            {
                snapshots.push(record);
            }
        }
        RunOutput {
            records: RunRecords {
                policy: self.policy,
                frames,
                snapshots,
                commands: self.schedule.into_log(),
            },
            updates: self.updates,
            deployment: self.world.deployment().clone(),
            config: self.cfg,
            warnings: self.warnings,
        }
    }

    pub fn run(self) -> RunOutput {
        self.run_with(|_, _| {})
    }
}

/// Result of a completed run.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub records: RunRecords,
    pub updates: Vec<PositionUpdate>,
    pub deployment: Deployment,
    pub config: ScenarioConfig,
    pub warnings: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn short(policy: Policy, seconds: f64) -> RunOutput {
        let cfg = ScenarioConfig {
            observation_s: seconds,
            snapshot_times_s: vec![0.5, 99.0],
            ..ScenarioConfig::default()
        };
        Simulation::new(&cfg, policy).run()
    }

    #[test]
    fn one_record_per_frame() {
        let out = short(Policy::LimitPower, 2.0);
        assert_eq!(out.records.frames.len(), 200);
        assert_eq!(out.updates.len(), 2);
        assert_eq!(out.records.commands.len(), 2 * out.deployment.cells.len());
        assert_eq!(out.records.snapshots.len(), 1);
        assert_eq!(out.warnings.len(), 1);
    }

    #[test]
    fn zero_duration_is_empty() {
        let cfg = ScenarioConfig::default();
        let out = Simulation::new(&cfg, Policy::Ignore)
            .with_duration(0.0)
            .run();
        assert!(out.records.frames.is_empty());
        assert!(out.records.commands.is_empty());
        assert!(out.records.snapshots.is_empty());
    }

    #[test]
    fn ignore_matches_uncontrolled_network() {
        let cfg = ScenarioConfig {
            observation_s: 1.0,
            ..ScenarioConfig::default()
        };
        let mut with_control = Vec::new();
        Simulation::new(&cfg, Policy::Ignore).run_with(|_, o| with_control.push(o.clone()));
        let mut world = World::new(&cfg, build_deployment(&cfg, cfg.seed), cfg.seed);
        let open = crate::control::CommandSet::unrestricted(25);
        for expected in with_control {
            assert_eq!(world.step_frame(&open), expected);
        }
    }

    #[test]
    fn evacuation_silences_lsa() {
        let cfg = ScenarioConfig {
            observation_s: 3.0,
            evacuation_window_s: Some((1.0, 2.0)),
            control_latency_s: 0.2,
            ..ScenarioConfig::default()
        };
        let out = Simulation::new(&cfg, Policy::Ignore).run();
        for f in &out.records.frames {
            let inside = (120..220).contains(&f.frame_index);
            assert_eq!(
                f.lsa_radiated_power_mw == 0.0,
                inside,
                "frame {}",
                f.frame_index
            );
        }
    }
}
