use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::config::{ScenarioConfig, UeCountMode};
use crate::geometry::{closest_point_in_disc, Point3};
use crate::Point;

pub type CellId = usize;
pub type UeId = usize;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSite {
    pub id: CellId,
    /// Antenna position; `z` is the BS height.
    pub position: Point,
    /// Licensed subband of the reuse-3 plan, in `0..3`.
    pub licensed_subband: usize,
    pub lsa_enabled: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UeSite {
    pub id: UeId,
    pub position: Point,
    pub home_cell: CellId,
}

/// Immutable network layout: cells on a hexagonal grid and their UEs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Deployment {
    pub cells: Vec<CellSite>,
    pub ues: Vec<UeSite>,
    pub cell_radius_m: f64,
    pub ue_height_m: f64,
}

impl Deployment {
    /// Distance between neighbouring cell centres.
    pub fn pitch(cell_radius_m: f64) -> f64 {
        3f64.sqrt() * cell_radius_m
    }

    /// Horizontal distance from `p` to the nearest cell disc; zero when `p`
    /// lies above the covered area.
    pub fn horizontal_gap(&self, p: &Point) -> f64 {
        self.cells
            .iter()
            .map(|c| (c.position.horizontal_distance(p) - self.cell_radius_m).max(0.0))
            .fold(f64::INFINITY, f64::min)
    }

    /// Whether `p` is horizontally inside the area covered by the grid.
    pub fn covers(&self, p: &Point) -> bool {
        self.horizontal_gap(p) == 0.0
    }

    pub fn ues_of(&self, cell: CellId) -> impl Iterator<Item = &UeSite> {
        self.ues.iter().filter(move |u| u.home_cell == cell)
    }
}

/// Closest point of `cell`'s coverage disc (at UE height) to `p`.
pub fn closest_point_in_cell(
    cell: &CellSite,
    cell_radius_m: f64,
    ue_height_m: f64,
    p: &Point,
) -> Point {
    closest_point_in_disc(&cell.position, cell_radius_m, ue_height_m, p)
}

/// Cell centres of a `cols x rows` hexagonal layout with odd rows shifted by
/// half a pitch, centred on the origin.
fn hex_centres(cols: usize, rows: usize, radius: f64) -> Vec<(f64, f64, usize)> {
    let pitch = Deployment::pitch(radius);
    let row_step = 1.5 * radius;
    let mut out = Vec::with_capacity(cols * rows);
    for row in 0..rows {
        let shift = if row % 2 == 1 { 0.5 * pitch } else { 0.0 };
        for col in 0..cols {
            // axial coordinates of an odd-row offset layout
            let q = col as i64 - ((row as i64) - (row as i64 & 1)) / 2;
            let r = row as i64;
            let colour = (q - r).rem_euclid(3) as usize;
            out.push((col as f64 * pitch + shift, row as f64 * row_step, colour));
        }
    }
    let (min_x, max_x) = out
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), c| {
            (lo.min(c.0), hi.max(c.0))
        });
    let max_y = (rows - 1) as f64 * row_step;
    let cx = 0.5 * (min_x + max_x);
    let cy = 0.5 * max_y;
    out.iter().map(|&(x, y, c)| (x - cx, y - cy, c)).collect()
}

/// Builds cells and UEs. A pure function of `(cfg, seed)`.
pub fn build_deployment(cfg: &ScenarioConfig, seed: u64) -> Deployment {
    let radius = cfg.cell_radius_m;
    let cells: Vec<CellSite> = hex_centres(cfg.grid_cols, cfg.grid_rows, radius)
        .into_iter()
        .enumerate()
        .map(|(id, (x, y, colour))| CellSite {
            id,
            position: Point3::new(x, y, cfg.bs_height_m),
            licensed_subband: colour,
            lsa_enabled: true,
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let poisson =
        (cfg.ues_per_cell > 0.0).then(|| Poisson::new(cfg.ues_per_cell).expect("positive mean"));
    let mut ues = Vec::new();
    for cell in &cells {
        let count = match (cfg.ue_count_mode, &poisson) {
            (_, None) => 0,
            (UeCountMode::Fixed, Some(_)) => cfg.ues_per_cell.round() as usize,
            (UeCountMode::Poisson, Some(dist)) => dist.sample(&mut rng) as usize,
        };
        for _ in 0..count {
            let r = radius * rng.random::<f64>().sqrt();
            let theta = std::f64::consts::TAU * rng.random::<f64>();
            ues.push(UeSite {
                id: ues.len(),
                position: Point3::new(
                    cell.position.x + r * theta.cos(),
                    cell.position.y + r * theta.sin(),
                    cfg.ue_height_m,
                ),
                home_cell: cell.id,
            });
        }
    }

    Deployment {
        cells,
        ues,
        cell_radius_m: radius,
        ue_height_m: cfg.ue_height_m,
    }
}
