//! Frame-level radio access: best-server association, open-loop fractional
//! power control under policy caps, Proportional-Fair scheduling and uplink
//! SINR/throughput.

use serde::{Deserialize, Serialize};

use crate::channel::GainTable;
use crate::config::ScenarioConfig;
use crate::control::{CommandSet, Directive};
use crate::num::{
    db_to_linear, linear_to_db, rb_noise_dbm, thermal_noise_dbm, Scalar, RB_BANDWIDTH_HZ,
};
use crate::scenario::{CellId, Deployment, UeId};
use crate::Point;

/// Spectral efficiency ceiling, bit/s/Hz.
pub const MAX_SPECTRAL_EFFICIENCY: f64 = 6.0;
/// Floor of the PF average rate; also its cold-start value.
pub const PF_EPSILON_BPS: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Band {
    Lsa,
    Licensed,
}

impl Band {
    pub const ALL: [Band; 2] = [Band::Lsa, Band::Licensed];

    pub fn as_str(self) -> &'static str {
        match self {
            Band::Lsa => "lsa",
            Band::Licensed => "licensed",
        }
    }
}

/// Open-loop fractional power control `P0 + 10 log10(M) + alpha * PL`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerControl<T> {
    /// Target received power per RB.
    pub p0_dbm: T,
    pub alpha: T,
    pub min_dbm: T,
    pub max_dbm: T,
}

impl<T: Scalar> PowerControl<T> {
    /// `P0` is the SINR target above the thermal noise of one RB.
    pub fn new(sinr_target_db: T, alpha: T, min_dbm: T, max_dbm: T) -> Self {
        Self {
            p0_dbm: sinr_target_db + rb_noise_dbm(),
            alpha,
            min_dbm,
            max_dbm,
        }
    }

    pub fn for_band(cfg: &ScenarioConfig, band: Band) -> Self {
        let target = match band {
            Band::Lsa => cfg.sinr_target_lsa_db,
            Band::Licensed => cfg.sinr_target_licensed_db,
        };
        Self::new(
            T::lit(target),
            T::lit(cfg.pc_alpha),
            T::lit(cfg.min_ue_power_dbm),
            T::lit(cfg.max_ue_power_dbm),
        )
    }

    /// Uncapped power before clamping.
    pub fn open_loop_dbm(&self, path_loss_db: T, n_rb: usize) -> T {
        self.p0_dbm
            + linear_to_db(T::from_usize(n_rb).expect("rb count"))
            + self.alpha * path_loss_db
    }

    /// Transmit power on `n_rb` RBs, or `None` when `cap_dbm` lies below the
    /// minimum UE power (the UE is barred from the band).
    pub fn tx_power_dbm(&self, path_loss_db: T, n_rb: usize, cap_dbm: T) -> Option<T> {
        if cap_dbm < self.min_dbm {
            return None;
        }
        let ceiling = self.max_dbm.min(cap_dbm);
        Some(
            self.open_loop_dbm(path_loss_db, n_rb)
                .max(self.min_dbm)
                .min(ceiling),
        )
    }
}

/// Uplink power of a UE on `n_rb` RBs toward a cell with path loss `path_loss_db`.
pub fn uplink_power_dbm(
    path_loss_db: f64,
    band: Band,
    n_rb: usize,
    cap_dbm: f64,
    cfg: &ScenarioConfig,
) -> Option<f64> {
    PowerControl::for_band(cfg, band).tx_power_dbm(path_loss_db, n_rb, cap_dbm)
}

/// Shannon rate over `n_rb` RBs with the spectral efficiency capped at 6 bit/s/Hz.
pub fn throughput_bps<T: Scalar>(sinr_db: T, n_rb: usize) -> T {
    if n_rb == 0 {
        return T::zero();
    }
    let se = (T::one() + db_to_linear(sinr_db))
        .log2()
        .min(T::lit(MAX_SPECTRAL_EFFICIENCY));
    T::from_usize(n_rb).expect("rb count") * T::lit(RB_BANDWIDTH_HZ) * se
}

/// Best-server association: the candidate with maximal gain, lowest id on ties.
pub fn associate(
    gains: &GainTable,
    ue: UeId,
    candidates: impl IntoIterator<Item = CellId>,
) -> Option<CellId> {
    let mut best: Option<(CellId, f64)> = None;
    for cell in candidates {
        let g = gains.gain_db(ue, cell);
        match best {
            Some((bc, bg)) if g < bg || (g == bg && bc < cell) => {}
            _ => best = Some((cell, g)),
        }
    }
    best.map(|(c, _)| c)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grant {
    pub ue: UeId,
    pub first_rb: usize,
    pub n_rb: usize,
    pub tx_power_dbm: f64,
}

impl Grant {
    fn overlap(&self, other: &Grant) -> usize {
        let lo = self.first_rb.max(other.first_rb);
        let hi = (self.first_rb + self.n_rb).min(other.first_rb + other.n_rb);
        hi.saturating_sub(lo)
    }
}

/// RB grants of one cell on one band in one frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Allocation {
    pub frame_index: u64,
    pub cell_id: CellId,
    pub band: Band,
    pub grants: Vec<Grant>,
}

impl Allocation {
    pub fn total_rb(&self) -> usize {
        self.grants.iter().map(|g| g.n_rb).sum()
    }
}

/// A UE eligible for scheduling in a cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PfCandidate {
    pub ue: UeId,
    /// Achievable rate per RB this frame.
    pub inst_rate_bps: f64,
    pub avg_rate_bps: f64,
    /// Power the UE would use with the whole band.
    pub tx_power_dbm: f64,
}

impl PfCandidate {
    pub fn metric(&self) -> f64 {
        self.inst_rate_bps / self.avg_rate_bps.max(PF_EPSILON_BPS)
    }
}

/// Proportional-Fair allocation of `n_rb` RBs.
///
/// Each RB goes to the candidate with the highest `r_inst / r_avg`. Without
/// frequency-selective fading every RB ranks candidates identically, so the
/// winner takes the whole band. Ties go to the lowest UE id.
pub fn pf_schedule(
    cell_id: CellId,
    band: Band,
    frame_index: u64,
    candidates: &[PfCandidate],
    n_rb: usize,
) -> Allocation {
    let mut best: Option<&PfCandidate> = None;
    for c in candidates {
        best = match best {
            Some(b) if c.metric() < b.metric() || (c.metric() == b.metric() && c.ue > b.ue) => {
                Some(b)
            }
            _ => Some(c),
        };
    }
    let grants = match best {
        Some(c) if n_rb > 0 => vec![Grant {
            ue: c.ue,
            first_rb: 0,
            n_rb,
            tx_power_dbm: c.tx_power_dbm,
        }],
        _ => Vec::new(),
    };
    Allocation {
        frame_index,
        cell_id,
        band,
        grants,
    }
}

/// Exponential PF average update.
pub fn pf_update(avg_bps: f64, achieved_bps: f64, beta: f64) -> f64 {
    ((1.0 - beta) * avg_bps + beta * achieved_bps).max(PF_EPSILON_BPS)
}

/// Uplink SINR of `grant` at its serving cell.
///
/// Interference sums co-channel grants of the other cells in `interferers`,
/// each weighted by the fraction of its RBs overlapping the victim's. Noise
/// covers the victim's allocated bandwidth plus the BS noise figure.
pub fn uplink_sinr_db(
    serving_cell: CellId,
    grant: &Grant,
    interferers: &[&Allocation],
    gains: &GainTable,
    noise_figure_db: f64,
) -> f64 {
    let signal_dbm = grant.tx_power_dbm + gains.gain_db(grant.ue, serving_cell);
    let mut interference_mw = 0.0;
    for alloc in interferers.iter().filter(|a| a.cell_id != serving_cell) {
        for other in &alloc.grants {
            let overlap = grant.overlap(other);
            if overlap == 0 {
                continue;
            }
            let rx_dbm = other.tx_power_dbm + gains.gain_db(other.ue, serving_cell);
            interference_mw += db_to_linear(rx_dbm) * overlap as f64 / other.n_rb as f64;
        }
    }
    let noise_dbm = thermal_noise_dbm(grant.n_rb as f64 * RB_BANDWIDTH_HZ, noise_figure_db);
    signal_dbm - linear_to_db(interference_mw + db_to_linear(noise_dbm))
}

/// Per-band view of a UE.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BandState {
    pub serving_cell: Option<CellId>,
    pub pf_avg_rate_bps: f64,
    /// Power of the latest transmission while associated.
    pub current_tx_power_dbm: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ue {
    pub id: UeId,
    pub position: Point,
    pub home_cell: CellId,
    pub lsa: BandState,
    pub licensed: BandState,
}

impl Ue {
    pub fn band(&self, band: Band) -> &BandState {
        match band {
            Band::Lsa => &self.lsa,
            Band::Licensed => &self.licensed,
        }
    }

    fn band_mut(&mut self, band: Band) -> &mut BandState {
        match band {
            Band::Lsa => &mut self.lsa,
            Band::Licensed => &mut self.licensed,
        }
    }
}

/// Scheduled grant with its achieved link quality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Transmission {
    pub ue: UeId,
    pub cell: CellId,
    pub band: Band,
    pub n_rb: usize,
    pub tx_power_dbm: f64,
    pub sinr_db: f64,
    pub throughput_bps: f64,
}

/// Everything the radio network did in one frame.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameOutcome {
    pub frame_index: u64,
    pub lsa: Vec<Allocation>,
    pub licensed: Vec<Allocation>,
    /// Scheduled transmissions, LSA first, each band in cell-id order.
    pub transmissions: Vec<Transmission>,
}

impl FrameOutcome {
    pub fn allocations(&self, band: Band) -> &[Allocation] {
        match band {
            Band::Lsa => &self.lsa,
            Band::Licensed => &self.licensed,
        }
    }

    pub fn transmissions_on(&self, band: Band) -> impl Iterator<Item = &Transmission> {
        self.transmissions.iter().filter(move |t| t.band == band)
    }
}

/// Mutable radio-network state advanced one frame at a time.
#[derive(Debug, Clone)]
pub struct World {
    cfg: ScenarioConfig,
    deployment: Deployment,
    gains: GainTable,
    ues: Vec<Ue>,
    frame_index: u64,
}

impl World {
    pub fn new(cfg: &ScenarioConfig, deployment: Deployment, seed: u64) -> Self {
        let gains = GainTable::new(&deployment, cfg, seed);
        Self::with_gains(cfg, deployment, gains)
    }

    pub fn with_gains(cfg: &ScenarioConfig, deployment: Deployment, gains: GainTable) -> Self {
        let fresh = BandState {
            serving_cell: None,
            pf_avg_rate_bps: PF_EPSILON_BPS,
            current_tx_power_dbm: None,
        };
        let ues = deployment
            .ues
            .iter()
            .map(|u| Ue {
                id: u.id,
                position: u.position,
                home_cell: u.home_cell,
                lsa: fresh,
                licensed: fresh,
            })
            .collect();
        Self {
            cfg: cfg.clone(),
            deployment,
            gains,
            ues,
            frame_index: 0,
        }
    }

    pub fn ues(&self) -> &[Ue] {
        &self.ues
    }

    pub fn deployment(&self) -> &Deployment {
        &self.deployment
    }

    pub fn gains(&self) -> &GainTable {
        &self.gains
    }

    pub fn config(&self) -> &ScenarioConfig {
        &self.cfg
    }

    pub fn frame_index(&self) -> u64 {
        self.frame_index
    }

    fn n_rb(&self, band: Band) -> usize {
        match band {
            Band::Lsa => self.cfg.n_rb_lsa,
            Band::Licensed => self.cfg.n_rb_licensed,
        }
    }

    /// LSA cap of `ue` in `cell` under `commands`; `+inf` when unrestricted.
    fn lsa_cap_dbm(&self, ue: &Ue, cell: CellId, commands: &CommandSet) -> f64 {
        match commands.directives[cell] {
            Directive::PowerCap(cap) => match (self.cfg.per_ue_caps, commands.reported_position) {
                (true, Some(airplane)) => {
                    let own = -crate::channel::fspl_db(
                        ue.position.distance(&airplane),
                        self.cfg.carrier_hz,
                    );
                    cap.max(
                        self.cfg.interference_threshold_dbm - self.cfg.protective_margin_db - own,
                    )
                }
                _ => cap,
            },
            _ => f64::INFINITY,
        }
    }

    /// Advances one frame under `commands`.
    pub fn step_frame(&mut self, commands: &CommandSet) -> FrameOutcome {
        let frame_index = self.frame_index;
        let n_cells = self.deployment.cells.len();
        let lsa_open: Vec<bool> = self
            .deployment
            .cells
            .iter()
            .map(|c| c.lsa_enabled && commands.directives[c.id] != Directive::Shutdown)
            .collect();

        // association, with LSA caps resolved per UE; barred UEs fall back
        let mut lsa_caps = vec![f64::INFINITY; self.ues.len()];
        let lsa_pc = PowerControl::<f64>::for_band(&self.cfg, Band::Lsa);
        #[allow(clippy::needless_range_loop)]
        for i in 0..self.ues.len() {
            let licensed = associate(&self.gains, i, 0..n_cells);
            let mut lsa = associate(&self.gains, i, (0..n_cells).filter(|c| lsa_open[*c]));
            if let Some(cell) = lsa {
                let cap = self.lsa_cap_dbm(&self.ues[i], cell, commands);
                if cap < lsa_pc.min_dbm {
                    lsa = None;
                } else {
                    lsa_caps[i] = cap;
                }
            }
            let ue = &mut self.ues[i];
            ue.licensed.serving_cell = licensed;
            if lsa.is_none() || lsa != ue.lsa.serving_cell {
                ue.lsa.current_tx_power_dbm = None;
            }
            ue.lsa.serving_cell = lsa;
        }

        let mut outcome = FrameOutcome {
            frame_index,
            lsa: Vec::new(),
            licensed: Vec::new(),
            transmissions: Vec::new(),
        };
        for band in Band::ALL {
            let allocations = self.schedule_band(band, &lsa_caps);
            let mut achieved = vec![0.0; self.ues.len()];
            for alloc in &allocations {
                let interferers: Vec<&Allocation> = allocations
                    .iter()
                    .filter(|a| self.co_channel(band, a.cell_id, alloc.cell_id))
                    .collect();
                for grant in &alloc.grants {
                    let sinr_db = uplink_sinr_db(
                        alloc.cell_id,
                        grant,
                        &interferers,
                        &self.gains,
                        self.cfg.bs_noise_figure_db,
                    );
                    let rate = throughput_bps(sinr_db, grant.n_rb);
                    achieved[grant.ue] = rate;
                    self.ues[grant.ue].band_mut(band).current_tx_power_dbm =
                        Some(grant.tx_power_dbm);
                    outcome.transmissions.push(Transmission {
                        ue: grant.ue,
                        cell: alloc.cell_id,
                        band,
                        n_rb: grant.n_rb,
                        tx_power_dbm: grant.tx_power_dbm,
                        sinr_db,
                        throughput_bps: rate,
                    });
                }
            }
            for (ue, rate) in self.ues.iter_mut().zip(&achieved) {
                let state = ue.band_mut(band);
                state.pf_avg_rate_bps = pf_update(state.pf_avg_rate_bps, *rate, self.cfg.pf_beta);
            }
            match band {
                Band::Lsa => outcome.lsa = allocations,
                Band::Licensed => outcome.licensed = allocations,
            }
        }
        self.frame_index += 1;
        outcome
    }

    fn co_channel(&self, band: Band, a: CellId, b: CellId) -> bool {
        match band {
            Band::Lsa => true,
            Band::Licensed => {
                self.deployment.cells[a].licensed_subband
                    == self.deployment.cells[b].licensed_subband
            }
        }
    }

    fn schedule_band(&self, band: Band, lsa_caps: &[f64]) -> Vec<Allocation> {
        let n_rb = self.n_rb(band);
        let pc = PowerControl::<f64>::for_band(&self.cfg, band);
        let noise_rb = thermal_noise_dbm(RB_BANDWIDTH_HZ, self.cfg.bs_noise_figure_db);
        let per_rb_share = linear_to_db(n_rb as f64);
        let mut candidates: Vec<Vec<PfCandidate>> = vec![Vec::new(); self.deployment.cells.len()];
        for ue in &self.ues {
            let Some(cell) = ue.band(band).serving_cell else {
                continue;
            };
            let cap = match band {
                Band::Lsa => lsa_caps[ue.id],
                Band::Licensed => f64::INFINITY,
            };
            let gain = self.gains.gain_db(ue.id, cell);
            let Some(power) = pc.tx_power_dbm(-gain, n_rb, cap) else {
                continue;
            };
            let snr_rb = power - per_rb_share + gain - noise_rb;
            candidates[cell].push(PfCandidate {
                ue: ue.id,
                inst_rate_bps: throughput_bps(snr_rb, 1),
                avg_rate_bps: ue.band(band).pf_avg_rate_bps,
                tx_power_dbm: power,
            });
        }
        candidates
            .iter()
            .enumerate()
            .filter(|(cell, _)| band == Band::Licensed || self.deployment.cells[*cell].lsa_enabled)
            .map(|(cell, cands)| pf_schedule(cell, band, self.frame_index, cands, n_rb))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point3;
    use crate::scenario::{CellSite, UeSite};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn power_control_reference_values() {
        let cfg = ScenarioConfig::default();
        let p = uplink_power_dbm(104.5, Band::Lsa, 50, f64::INFINITY, &cfg).unwrap();
        assert!(close(p, 5.042_425_094_393_252, 1e-9), "{p}");
        let clamped = uplink_power_dbm(121.3, Band::Licensed, 16, f64::INFINITY, &cfg).unwrap();
        assert_eq!(clamped, 23.0);
        assert!(close(
            PowerControl::<f64>::for_band(&cfg, Band::Licensed).open_loop_dbm(121.3, 16),
            31.893_924_877_592_312,
            1e-9
        ));
        assert_eq!(
            uplink_power_dbm(104.5, Band::Lsa, 50, -20.0, &cfg),
            Some(-20.0)
        );
        assert_eq!(uplink_power_dbm(104.5, Band::Lsa, 50, -41.0, &cfg), None);
        assert_eq!(
            uplink_power_dbm(20.0, Band::Lsa, 1, f64::INFINITY, &cfg),
            Some(-40.0)
        );
    }

    #[test]
    fn power_control_in_single_precision() {
        let pc = PowerControl::<f32>::new(5.0, 1.0, -40.0, 23.0);
        let p = pc.tx_power_dbm(104.5, 50, f32::INFINITY).unwrap();
        assert!((p - 5.0424).abs() < 1e-3);
    }

    #[test]
    fn throughput_reference_values() {
        assert!(close(throughput_bps(20.0, 50), 54.0e6, 1e-6));
        assert_eq!(throughput_bps(f64::NEG_INFINITY, 50), 0.0);
        assert_eq!(throughput_bps(10.0, 0), 0.0);
        assert!(close(throughput_bps(0.0, 1), 180_000.0, 1e-6));
    }

    #[test]
    fn pf_single_and_empty() {
        let c = PfCandidate {
            ue: 3,
            inst_rate_bps: 1e5,
            avg_rate_bps: 1.0,
            tx_power_dbm: 0.0,
        };
        let a = pf_schedule(0, Band::Lsa, 0, &[c], 50);
        assert_eq!(a.grants.len(), 1);
        assert_eq!(a.grants[0].n_rb, 50);
        assert_eq!(a.total_rb(), 50);
        assert!(pf_schedule(0, Band::Lsa, 0, &[], 50).grants.is_empty());
    }

    #[test]
    fn pf_ties_go_to_lowest_id() {
        let mk = |ue| PfCandidate {
            ue,
            inst_rate_bps: 1e5,
            avg_rate_bps: 10.0,
            tx_power_dbm: 0.0,
        };
        let a = pf_schedule(0, Band::Lsa, 0, &[mk(7), mk(2), mk(5)], 10);
        assert_eq!(a.grants[0].ue, 2);
    }

    fn gains_for(deployment: &Deployment, cfg: &ScenarioConfig) -> GainTable {
        GainTable::new(deployment, cfg, 1)
    }

    fn two_cell_deployment(ue_positions: &[(f64, f64, usize)]) -> Deployment {
        let cells = (0..2)
            .map(|id| CellSite {
                id,
                position: Point3::new(id as f64 * 500.0, 0.0, 15.0),
                licensed_subband: id,
                lsa_enabled: true,
            })
            .collect();
        let ues = ue_positions
            .iter()
            .enumerate()
            .map(|(id, &(x, y, home))| UeSite {
                id,
                position: Point3::new(x, y, 1.5),
                home_cell: home,
            })
            .collect();
        Deployment {
            cells,
            ues,
            cell_radius_m: 288.0,
            ue_height_m: 1.5,
        }
    }

    fn flat_cfg() -> ScenarioConfig {
        ScenarioConfig {
            shadow_sigma_db: 0.0,
            ..ScenarioConfig::default()
        }
    }

    #[test]
    fn association_tie_breaks_to_lower_id() {
        let cfg = flat_cfg();
        let d = two_cell_deployment(&[(250.0, 0.0, 0)]);
        let g = gains_for(&d, &cfg);
        assert_eq!(associate(&g, 0, 0..2), Some(0));
        assert_eq!(associate(&g, 0, [1, 0]), Some(0));
        assert_eq!(associate(&g, 0, std::iter::empty()), None);
    }

    #[test]
    fn shutdown_moves_ue_to_enabled_neighbour() {
        let cfg = flat_cfg();
        let d = two_cell_deployment(&[(100.0, 0.0, 0)]);
        let mut world = World::new(&cfg, d, 1);
        let open = CommandSet::unrestricted(2);
        world.step_frame(&open);
        assert_eq!(world.ues()[0].lsa.serving_cell, Some(0));
        let before = world.ues()[0].lsa.current_tx_power_dbm.unwrap();
        let mut shut = open.clone();
        shut.directives[0] = Directive::Shutdown;
        let out = world.step_frame(&shut);
        assert_eq!(world.ues()[0].lsa.serving_cell, Some(1));
        let after = out.transmissions_on(Band::Lsa).next().unwrap().tx_power_dbm;
        assert!(after >= before);
        // licensed association is untouched
        assert_eq!(world.ues()[0].licensed.serving_cell, Some(0));
    }

    #[test]
    fn all_cells_shut_silences_lsa_only() {
        let cfg = flat_cfg();
        let d = two_cell_deployment(&[(100.0, 0.0, 0), (420.0, 30.0, 1)]);
        let mut world = World::new(&cfg, d, 1);
        let mut shut = CommandSet::unrestricted(2);
        shut.directives = vec![Directive::Shutdown; 2];
        let out = world.step_frame(&shut);
        assert_eq!(out.transmissions_on(Band::Lsa).count(), 0);
        assert_eq!(out.transmissions_on(Band::Licensed).count(), 2);
        assert!(world.ues().iter().all(|u| u.lsa.serving_cell.is_none()));
    }

    #[test]
    fn caps_bound_every_lsa_transmission() {
        let cfg = ScenarioConfig::default();
        let d = crate::scenario::build_deployment(&cfg, 3);
        let mut world = World::new(&cfg, d, 3);
        let mut cmds = CommandSet::unrestricted(25);
        for (i, dir) in cmds.directives.iter_mut().enumerate() {
            *dir = Directive::PowerCap(-10.0 + i as f64);
        }
        for _ in 0..20 {
            let out = world.step_frame(&cmds);
            for t in out.transmissions_on(Band::Lsa) {
                assert!(t.tx_power_dbm <= -10.0 + t.cell as f64 + 1e-12);
                assert!(t.tx_power_dbm >= cfg.min_ue_power_dbm);
            }
            for a in &out.lsa {
                assert!(a.total_rb() <= cfg.n_rb_lsa);
            }
        }
    }

    #[test]
    fn barred_ue_falls_back_to_licensed() {
        let cfg = flat_cfg();
        let d = two_cell_deployment(&[(100.0, 0.0, 0)]);
        let mut world = World::new(&cfg, d, 1);
        let mut cmds = CommandSet::unrestricted(2);
        cmds.directives = vec![Directive::PowerCap(-45.0); 2];
        let out = world.step_frame(&cmds);
        assert!(world.ues()[0].lsa.serving_cell.is_none());
        assert_eq!(out.transmissions_on(Band::Lsa).count(), 0);
        assert_eq!(out.transmissions_on(Band::Licensed).count(), 1);
    }

    #[test]
    fn sinr_without_interference() {
        let cfg = flat_cfg();
        let d = two_cell_deployment(&[(100.0, 0.0, 0)]);
        let g = gains_for(&d, &cfg);
        // choose the power that lands exactly -100 dBm at the BS
        let grant = Grant {
            ue: 0,
            first_rb: 0,
            n_rb: 1,
            tx_power_dbm: -100.0 - g.gain_db(0, 0),
        };
        let sinr = uplink_sinr_db(0, &grant, &[], &g, 5.0);
        assert!(close(sinr, 16.447_274_948_966_94, 1e-9), "{sinr}");
    }

    #[test]
    fn equal_interferer_gives_zero_db() {
        let cfg = ScenarioConfig {
            shadow_sigma_db: 0.0,
            ..ScenarioConfig::default()
        };
        // UEs mirrored about the midpoint between two cells
        let d = two_cell_deployment(&[(240.0, 0.0, 0), (260.0, 0.0, 1)]);
        let g = gains_for(&d, &cfg);
        let victim = Grant {
            ue: 0,
            first_rb: 0,
            n_rb: 10,
            tx_power_dbm: 23.0,
        };
        let other = Allocation {
            frame_index: 0,
            cell_id: 1,
            band: Band::Lsa,
            grants: vec![Grant {
                ue: 1,
                first_rb: 0,
                n_rb: 10,
                tx_power_dbm: 23.0 + g.gain_db(0, 0) - g.gain_db(1, 0),
            }],
        };
        let sinr = uplink_sinr_db(0, &victim, &[&other], &g, -200.0);
        assert!(close(sinr, 0.0, 1e-9), "{sinr}");
        // half overlap halves the interference
        let mut half = other.clone();
        half.grants[0].first_rb = 5;
        let sinr_half = uplink_sinr_db(0, &victim, &[&half], &g, -200.0);
        assert!(close(sinr_half, 10.0 * 2f64.log10(), 1e-9), "{sinr_half}");
    }

    #[test]
    fn pf_shares_equal_ues_evenly() {
        let cfg = flat_cfg();
        let d = two_cell_deployment(&[(0.0, 100.0, 0), (0.0, -100.0, 0)]);
        let mut world = World::new(&cfg, d, 1);
        let cmds = CommandSet::unrestricted(2);
        let mut rbs = [0usize; 2];
        let mut window = [0usize; 2];
        for frame in 0..10_000 {
            let out = world.step_frame(&cmds);
            for t in out.transmissions_on(Band::Lsa) {
                rbs[t.ue] += t.n_rb;
                window[t.ue] += t.n_rb;
            }
            if frame % 1000 == 999 {
                let total: usize = window.iter().sum();
                assert!(window.iter().all(|w| *w as f64 >= 0.5 / 2.0 * total as f64));
                window = [0; 2];
            }
        }
        let total = (rbs[0] + rbs[1]) as f64;
        for r in rbs {
            let share = r as f64 / total;
            assert!((0.48..=0.52).contains(&share), "{share}");
        }
    }
}
