//! Propagation and link-budget math.
//!
//! Ground links use the ITU/3GPP Urban Micro NLOS formula with frozen
//! lognormal shadowing; links toward the airplane use free space without any
//! random term so the protection analysis is reproducible.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::config::ScenarioConfig;
use crate::num::Scalar;
use crate::scenario::Deployment;
use crate::Point;

const FSPL_MIN_DISTANCE_M: f64 = 1.0;
const UMI_MIN_DISTANCE_M: f64 = 10.0;
const UMI_MAX_DISTANCE_M: f64 = 5000.0;

/// Keeps shadowing streams apart from the deployment generator.
const SHADOW_DOMAIN: u64 = 0x5348_4144_4f57_0001;

static FSPL_CLAMPS: AtomicU64 = AtomicU64::new(0);
static UMI_CLAMPS: AtomicU64 = AtomicU64::new(0);

/// Process-wide count of distances clamped into model validity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClampCounts {
    pub fspl: u64,
    pub umi: u64,
}

pub fn clamp_counts() -> ClampCounts {
    ClampCounts {
        fspl: FSPL_CLAMPS.load(Ordering::Relaxed),
        umi: UMI_CLAMPS.load(Ordering::Relaxed),
    }
}

/// Free-space path loss in dB. Distances below 1 m are clamped to 1 m.
pub fn fspl_db<T: Scalar>(d_m: T, f_hz: T) -> T {
    let min = T::lit(FSPL_MIN_DISTANCE_M);
    let d = if d_m < min {
        FSPL_CLAMPS.fetch_add(1, Ordering::Relaxed);
        min
    } else {
        d_m
    };
    T::lit(20.0) * d.log10() + T::lit(20.0) * f_hz.log10() - T::lit(147.55)
}

/// Urban Micro NLOS path loss in dB, distance clamped to [10, 5000] m.
pub fn umi_pathloss_db<T: Scalar>(d_m: T, f_ghz: T) -> T {
    let lo = T::lit(UMI_MIN_DISTANCE_M);
    let hi = T::lit(UMI_MAX_DISTANCE_M);
    let d = if d_m < lo || d_m > hi {
        UMI_CLAMPS.fetch_add(1, Ordering::Relaxed);
        d_m.max(lo).min(hi)
    } else {
        d_m
    };
    T::lit(36.7) * d.log10() + T::lit(22.7) + T::lit(26.0) * f_ghz.log10()
}

/// Frozen lognormal shadowing for one link, in dB.
///
/// Counter-based: the value depends only on `(seed, link_id)`.
pub fn shadow_db(link_id: u64, seed: u64, sigma_db: f64) -> f64 {
    if sigma_db == 0.0 {
        return 0.0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ SHADOW_DOMAIN);
    rng.set_stream(link_id);
    let z: f64 = StandardNormal.sample(&mut rng);
    sigma_db * z
}

/// Identifier of the ground link between `ue` and `cell`.
pub fn ue_bs_link_id(ue: usize, cell: usize, n_cells: usize) -> u64 {
    (ue * n_cells + cell) as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkKind {
    UeToBs,
    UeToAirplane,
    BsToAirplane,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkGain {
    /// Negative of the total loss, antenna and shadowing terms included.
    pub gain_db: f64,
    pub kind: LinkKind,
}

/// Gain of one link.
///
/// `UeToBs` uses UMi plus shadowing; `UeToAirplane` free space with an
/// isotropic UE; `BsToAirplane` free space less the BS leakage and sidelobe
/// isolation.
pub fn link_gain(
    tx: &Point,
    rx: &Point,
    kind: LinkKind,
    link_id: u64,
    cfg: &ScenarioConfig,
    seed: u64,
) -> LinkGain {
    let d = tx.distance(rx);
    let gain_db = match kind {
        LinkKind::UeToBs => {
            -umi_pathloss_db(d, cfg.carrier_hz / 1e9)
                - shadow_db(link_id, seed, cfg.shadow_sigma_db)
        }
        LinkKind::UeToAirplane => -fspl_db(d, cfg.carrier_hz),
        LinkKind::BsToAirplane => {
            -fspl_db(d, cfg.carrier_hz)
                - cfg.bs_antenna_leakage_db.abs()
                - cfg.bs_sidelobe_isolation_db
        }
    };
    LinkGain { gain_db, kind }
}

/// Free-space gain from a ground transmitter to the airplane.
pub fn air_gain_db(tx: &Point, airplane: &Point, carrier_hz: f64) -> f64 {
    -fspl_db(tx.distance(airplane), carrier_hz)
}

/// Precomputed UE-to-BS gains of a deployment, row-major by UE.
#[derive(Debug, Clone, PartialEq)]
pub struct GainTable {
    n_cells: usize,
    gains_db: Vec<f64>,
}

impl GainTable {
    pub fn new(deployment: &Deployment, cfg: &ScenarioConfig, seed: u64) -> Self {
        let n_cells = deployment.cells.len();
        let mut gains_db = Vec::with_capacity(deployment.ues.len() * n_cells);
        for ue in &deployment.ues {
            for cell in &deployment.cells {
                let id = ue_bs_link_id(ue.id, cell.id, n_cells);
                gains_db.push(
                    link_gain(
                        &ue.position,
                        &cell.position,
                        LinkKind::UeToBs,
                        id,
                        cfg,
                        seed,
                    )
                    .gain_db,
                );
            }
        }
        Self { n_cells, gains_db }
    }

    pub fn gain_db(&self, ue: usize, cell: usize) -> f64 {
        self.gains_db[ue * self.n_cells + cell]
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point3;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn fspl_reference_points() {
        assert!(
            close(fspl_db(1000.0, 2.1e9), 98.894_385_9, 1e-6),
            "{}",
            fspl_db(1000.0, 2.1e9)
        );
        assert!(close(fspl_db(1.0, 2.1e9), 38.894_385_9, 1e-6));
        let step = fspl_db(2000.0, 2.1e9) - fspl_db(1000.0, 2.1e9);
        assert!(close(step, 6.020_599_913, 1e-8));
    }

    #[test]
    fn fspl_clamps_below_one_metre() {
        let before = clamp_counts().fspl;
        assert_eq!(fspl_db(0.2, 2.1e9), fspl_db(1.0, 2.1e9));
        assert!(clamp_counts().fspl > before);
    }

    #[test]
    fn umi_reference_points() {
        assert!(
            close(umi_pathloss_db(100.0, 2.1), 104.477_701_7, 1e-6),
            "{}",
            umi_pathloss_db(100.0, 2.1)
        );
        assert!(
            close(umi_pathloss_db(288.0, 2.1), 121.337_406_0, 1e-6),
            "{}",
            umi_pathloss_db(288.0, 2.1)
        );
        assert_eq!(umi_pathloss_db(3.0, 2.1), umi_pathloss_db(10.0, 2.1));
        assert_eq!(umi_pathloss_db(9000.0, 2.1), umi_pathloss_db(5000.0, 2.1));
    }

    #[test]
    fn f32_matches_f64_within_single_precision() {
        let a = fspl_db(870.0_f32, 2.1e9) as f64;
        assert!(close(a, fspl_db(870.0, 2.1e9), 1e-3));
        let b = umi_pathloss_db(250.0_f32, 2.1) as f64;
        assert!(close(b, umi_pathloss_db(250.0, 2.1), 1e-3));
    }

    #[test]
    fn shadowing_zero_sigma_and_determinism() {
        assert_eq!(shadow_db(17, 3, 0.0), 0.0);
        assert_eq!(shadow_db(17, 3, 3.0), shadow_db(17, 3, 3.0));
        assert_ne!(shadow_db(17, 3, 3.0), shadow_db(18, 3, 3.0));
        assert_ne!(shadow_db(17, 3, 3.0), shadow_db(17, 4, 3.0));
    }

    #[test]
    fn shadowing_ensemble_statistics() {
        let n = 100_000;
        let samples: Vec<f64> = (0..n).map(|id| shadow_db(id, 11, 3.0)).collect();
        let mean = samples.iter().sum::<f64>() / n as f64;
        let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
        assert!(mean.abs() < 0.05, "mean {mean}");
        let sd = var.sqrt();
        assert!((2.95..=3.05).contains(&sd), "sd {sd}");
    }

    #[test]
    fn link_kinds() {
        let cfg = ScenarioConfig {
            shadow_sigma_db: 0.0,
            ..ScenarioConfig::default()
        };
        let origin = Point3::new(0.0, 0.0, 0.0);
        let air = link_gain(
            &origin,
            &Point3::new(870.0, 0.0, 0.0),
            LinkKind::UeToAirplane,
            0,
            &cfg,
            1,
        );
        assert!(close(air.gain_db, -97.684_770_9, 1e-6), "{}", air.gain_db);
        let bs = link_gain(
            &origin,
            &Point3::new(870.0, 0.0, 0.0),
            LinkKind::BsToAirplane,
            0,
            &cfg,
            1,
        );
        assert!(close(bs.gain_db, air.gain_db - 55.0, 1e-12));
        let ground = link_gain(
            &origin,
            &Point3::new(100.0, 0.0, 0.0),
            LinkKind::UeToBs,
            0,
            &cfg,
            1,
        );
        assert!(close(ground.gain_db, -104.477_701_7, 1e-6));
    }

    #[test]
    fn air_links_have_no_random_component() {
        let cfg = ScenarioConfig::default();
        let a = Point3::new(10.0, 20.0, 1.5);
        let b = Point3::new(500.0, -40.0, 300.0);
        let g1 = link_gain(&a, &b, LinkKind::UeToAirplane, 1, &cfg, 1).gain_db;
        let g2 = link_gain(&a, &b, LinkKind::UeToAirplane, 99, &cfg, 77).gain_db;
        assert_eq!(g1, g2);
    }
}
