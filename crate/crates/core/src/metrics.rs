//! Per-frame measurements and CSV export.
//!
//! CSV files start with a header row and use LF line endings. Floats use
//! Rust's shortest round-trip decimal formatting. Missing values
//! (no interference measurement, no power) are empty fields.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::channel::air_gain_db;
use crate::control::{Policy, PolicyCommand};
use crate::num::{db_to_linear, dbm_to_mw, linear_to_db};
use crate::ran::{Band, Transmission, Ue};
use crate::scenario::CellId;
use crate::{Airplane, Point};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct UeBandRecord {
    pub serving_cell: Option<CellId>,
    /// RBs granted this frame.
    pub n_rb: usize,
    /// Latest transmit power while associated; this frame's power when `n_rb > 0`.
    pub tx_power_dbm: Option<f64>,
}

impl UeBandRecord {
    /// Power of this frame's transmission, if the UE transmitted.
    pub fn transmitted_dbm(&self) -> Option<f64> {
        if self.n_rb > 0 {
            self.tx_power_dbm
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UeRecord {
    pub id: usize,
    pub x_m: f64,
    pub y_m: f64,
    pub lsa: UeBandRecord,
    pub licensed: UeBandRecord,
}

impl UeRecord {
    pub fn band(&self, band: Band) -> &UeBandRecord {
        match band {
            Band::Lsa => &self.lsa,
            Band::Licensed => &self.licensed,
        }
    }
}

/// Everything measured in one frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameRecord {
    pub frame_index: u64,
    pub t_s: f64,
    pub airplane: Airplane,
    /// Aggregate LSA interference at the airplane; `None` while telemetry is
    /// off, negative infinity when nobody transmits.
    pub interference_at_airplane_dbm: Option<f64>,
    pub lsa_radiated_power_mw: f64,
    pub licensed_radiated_power_mw: f64,
    /// Update epoch of the command set in force.
    pub command_epoch: Option<u64>,
    pub ues: Vec<UeRecord>,
}

impl FrameRecord {
    pub fn summary(&self) -> FrameSummary {
        FrameSummary {
            frame_index: self.frame_index,
            t_s: self.t_s,
            airplane: self.airplane,
            interference_at_airplane_dbm: self.interference_at_airplane_dbm,
            lsa_radiated_power_mw: self.lsa_radiated_power_mw,
            licensed_radiated_power_mw: self.licensed_radiated_power_mw,
            command_epoch: self.command_epoch,
        }
    }
}

/// [`FrameRecord`] without the per-UE detail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameSummary {
    pub frame_index: u64,
    pub t_s: f64,
    pub airplane: Airplane,
    pub interference_at_airplane_dbm: Option<f64>,
    pub lsa_radiated_power_mw: f64,
    pub licensed_radiated_power_mw: f64,
    pub command_epoch: Option<u64>,
}

/// Aggregate interference at the airplane from the LSA transmissions, in dBm
/// over the whole LSA carrier. Accumulated in transmission order.
pub fn interference_at_airplane<'a>(
    transmissions: impl IntoIterator<Item = &'a Transmission>,
    ues: &[Ue],
    airplane: &Point,
    carrier_hz: f64,
) -> f64 {
    let mut total_mw = 0.0;
    for t in transmissions.into_iter().filter(|t| t.band == Band::Lsa) {
        total_mw +=
            db_to_linear(t.tx_power_dbm + air_gain_db(&ues[t.ue].position, airplane, carrier_hz));
    }
    linear_to_db(total_mw)
}

/// Sum of transmit powers on `band`, in mW.
pub fn radiated_power_mw<'a>(
    transmissions: impl IntoIterator<Item = &'a Transmission>,
    band: Band,
) -> f64 {
    transmissions
        .into_iter()
        .filter(|t| t.band == band)
        .map(|t| dbm_to_mw(t.tx_power_dbm))
        .fold(0.0, |acc, p| acc + p)
}

/// Radiated energy of a power series sampled once per frame, in mJ.
pub fn energy_mj(power_mw: impl IntoIterator<Item = f64>, frame_s: f64) -> f64 {
    power_mw.into_iter().fold(0.0, |acc, p| acc + p * frame_s)
}

/// Completed run, ready for export.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecords {
    pub policy: Policy,
    pub frames: Vec<FrameSummary>,
    pub snapshots: Vec<FrameRecord>,
    pub commands: Vec<PolicyCommand>,
}

pub const INTERFERENCE_HEADER: &str = "t_s,policy,interference_dbm";
pub const ENERGY_HEADER: &str = "t_s,policy,lsa_mw,licensed_mw";
pub const UE_POWER_HEADER: &str = "t_s,ue_id,x_m,y_m,band,tx_power_dbm,serving_cell,n_rb";
pub const COMMANDS_HEADER: &str = "issued_s,effective_s,cell_id,directive,cap_dbm";
pub const AIRPLANE_HEADER: &str = "t_s,x_m,y_m,z_m,speed_mps,telemetry_active";
pub const COMPARISON_HEADER: &str = "t_s,ignore_lsa_mw,shutdown_lsa_mw,limit_power_lsa_mw";

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn finite(v: Option<f64>) -> Option<f64> {
    v.filter(|x| x.is_finite())
}

fn table(header: &str, rows: impl Iterator<Item = String>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

pub fn interference_csv(run: &RunRecords) -> String {
    table(
        INTERFERENCE_HEADER,
        run.frames.iter().map(|f| {
            format!(
                "{},{},{}",
                f.t_s,
                run.policy,
                opt(finite(f.interference_at_airplane_dbm))
            )
        }),
    )
}

pub fn energy_csv(run: &RunRecords) -> String {
    table(
        ENERGY_HEADER,
        run.frames.iter().map(|f| {
            format!(
                "{},{},{},{}",
                f.t_s, run.policy, f.lsa_radiated_power_mw, f.licensed_radiated_power_mw
            )
        }),
    )
}

pub fn ue_power_csv(run: &RunRecords) -> String {
    let mut rows = Vec::new();
    for snap in &run.snapshots {
        for ue in &snap.ues {
            for band in Band::ALL {
                let b = ue.band(band);
                let mut row = String::new();
                let _ = write!(
                    row,
                    "{},{},{},{},{},{},{},{}",
                    snap.t_s,
                    ue.id,
                    ue.x_m,
                    ue.y_m,
                    band.as_str(),
                    opt(b.tx_power_dbm),
                    opt(b.serving_cell),
                    b.n_rb
                );
                rows.push(row);
            }
        }
    }
    table(UE_POWER_HEADER, rows.into_iter())
}

pub fn commands_csv(run: &RunRecords) -> String {
    table(
        COMMANDS_HEADER,
        run.commands.iter().map(|c| {
            format!(
                "{},{},{},{},{}",
                c.issued_at_s,
                c.effective_at_s,
                c.cell_id,
                c.directive.name(),
                opt(c.directive.cap_dbm())
            )
        }),
    )
}

pub fn airplane_csv(run: &RunRecords) -> String {
    table(
        AIRPLANE_HEADER,
        run.frames.iter().map(|f| {
            let a = &f.airplane;
            format!(
                "{},{},{},{},{},{}",
                f.t_s, a.position.x, a.position.y, a.position.z, a.speed_mps, a.telemetry_active
            )
        }),
    )
}

/// LSA power of the three policies side by side, joined on `t_s`.
///
/// Fails when the runs do not share the same frame times.
pub fn comparison_csv(
    ignore: &RunRecords,
    shutdown: &RunRecords,
    limit_power: &RunRecords,
) -> Result<String, String> {
    let (a, b, c) = (&ignore.frames, &shutdown.frames, &limit_power.frames);
    if a.len() != b.len() || a.len() != c.len() {
        return Err(format!(
            "frame counts differ: {} / {} / {}",
            a.len(),
            b.len(),
            c.len()
        ));
    }
    let mut rows = Vec::with_capacity(a.len());
    for ((x, y), z) in a.iter().zip(b).zip(c) {
        if x.t_s != y.t_s || x.t_s != z.t_s {
            return Err(format!("frame times differ at t = {} s", x.t_s));
        }
        rows.push(format!(
            "{},{},{},{}",
            x.t_s, x.lsa_radiated_power_mw, y.lsa_radiated_power_mw, z.lsa_radiated_power_mw
        ));
    }
    Ok(table(COMPARISON_HEADER, rows.into_iter()))
}

/// Writes the five CSV files of a run into `out_dir` (created if missing).
pub fn export_run(run: &RunRecords, out_dir: &Path) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let files = [
        ("interference.csv", interference_csv(run)),
        ("energy.csv", energy_csv(run)),
        ("ue_power.csv", ue_power_csv(run)),
        ("commands.csv", commands_csv(run)),
        ("airplane.csv", airplane_csv(run)),
    ];
    let mut written = Vec::with_capacity(files.len());
    for (name, body) in files {
        let path = out_dir.join(name);
        fs::write(&path, body)?;
        written.push(path);
    }
    Ok(written)
}
