//! Scenario configuration and its flat `key = value` file format.
//!
//! Every key of [`ScenarioConfig`] may appear at most once; absent keys take
//! the value from the bundled `default.cfg`. Blank lines and `#` comments
//! (whole-line or trailing) are ignored.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Bundled configuration reproducing the airport take-off scenario.
pub const DEFAULT_CONFIG: &str = include_str!("../default.cfg");

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: key `{key}` given more than once")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: invalid value for `{key}`: {message}")]
    Value {
        line: usize,
        key: String,
        message: String,
    },
    #[error("`{key}` out of range: {message}")]
    Range { key: &'static str, message: String },
}

/// How many UEs each cell receives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UeCountMode {
    /// Poisson distributed with mean `ues_per_cell`.
    Poisson,
    /// Exactly `round(ues_per_cell)` per cell.
    Fixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub cell_radius_m: f64,
    pub grid_cols: usize,
    pub grid_rows: usize,
    pub ues_per_cell: f64,
    pub ue_count_mode: UeCountMode,
    pub carrier_hz: f64,
    pub lsa_bandwidth_hz: f64,
    pub licensed_bandwidth_hz: f64,
    pub n_rb_lsa: usize,
    /// RBs of one licensed reuse-3 subband.
    pub n_rb_licensed: usize,
    /// Interference limit at the airplane over the whole LSA carrier.
    pub interference_threshold_dbm: f64,
    pub protective_margin_db: f64,
    pub takeoff_speed_mps: f64,
    pub acceleration_mps2: f64,
    pub climb_slope_deg: f64,
    pub max_speed_mps: f64,
    pub telemetry_altitude_cutoff_m: f64,
    pub observation_s: f64,
    pub frame_s: f64,
    pub position_update_s: f64,
    pub control_latency_s: f64,
    pub max_ue_power_dbm: f64,
    pub min_ue_power_dbm: f64,
    pub pc_alpha: f64,
    pub sinr_target_lsa_db: f64,
    pub sinr_target_licensed_db: f64,
    pub bs_height_m: f64,
    pub ue_height_m: f64,
    pub shadow_sigma_db: f64,
    pub bs_sidelobe_isolation_db: f64,
    /// Emission suppression of the BS toward the sky; only its magnitude is used.
    pub bs_antenna_leakage_db: f64,
    pub bs_noise_figure_db: f64,
    pub shutdown_margin_db: f64,
    pub pf_beta: f64,
    /// Refine cell caps per UE from the UE's own position.
    pub per_ue_caps: bool,
    pub runway_origin_xy: (f64, f64),
    pub runway_heading_deg: f64,
    /// Evacuation request window `[start, end)`; `None` when no request is issued.
    pub evacuation_window_s: Option<(f64, f64)>,
    pub snapshot_times_s: Vec<f64>,
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            cell_radius_m: 288.0,
            grid_cols: 5,
            grid_rows: 5,
            ues_per_cell: 10.0,
            ue_count_mode: UeCountMode::Poisson,
            carrier_hz: 2.1e9,
            lsa_bandwidth_hz: 10e6,
            licensed_bandwidth_hz: 10e6,
            n_rb_lsa: 50,
            n_rb_licensed: 16,
            interference_threshold_dbm: -90.0,
            protective_margin_db: 10.0,
            takeoff_speed_mps: 65.0,
            acceleration_mps2: 5.0,
            climb_slope_deg: 7.0,
            max_speed_mps: 150.0,
            telemetry_altitude_cutoff_m: f64::INFINITY,
            observation_s: 60.0,
            frame_s: 0.01,
            position_update_s: 1.0,
            control_latency_s: 0.0,
            max_ue_power_dbm: 23.0,
            min_ue_power_dbm: -40.0,
            pc_alpha: 1.0,
            sinr_target_lsa_db: 5.0,
            sinr_target_licensed_db: 20.0,
            bs_height_m: 15.0,
            ue_height_m: 1.5,
            shadow_sigma_db: 3.0,
            bs_sidelobe_isolation_db: 20.0,
            bs_antenna_leakage_db: -35.0,
            bs_noise_figure_db: 5.0,
            shutdown_margin_db: 0.0,
            pf_beta: 0.01,
            per_ue_caps: false,
            runway_origin_xy: (-4500.0, 100.0),
            runway_heading_deg: 0.0,
            evacuation_window_s: None,
            snapshot_times_s: vec![2.0, 8.0, 15.0, 25.0, 40.0],
            seed: 1,
        }
    }
}

fn parse_f64(s: &str) -> Result<f64, String> {
    s.parse::<f64>().map_err(|e| format!("`{s}`: {e}"))
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>, String> {
    if s.is_empty() || s == "none" {
        return Ok(Vec::new());
    }
    s.split(',').map(|v| parse_f64(v.trim())).collect()
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    match parse_f64_list(s)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        other => Err(format!(
            "expected two comma-separated numbers, got {}",
            other.len()
        )),
    }
}

fn parse_bool(s: &str) -> Result<bool, String> {
    match s {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(format!("`{s}` is not a boolean")),
    }
}

fn parse_uint<N: std::str::FromStr>(s: &str) -> Result<N, String>
where
    N::Err: std::fmt::Display,
{
    s.parse::<N>().map_err(|e| format!("`{s}`: {e}"))
}

impl ScenarioConfig {
    /// Parses a configuration document on top of the bundled defaults.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        cfg.apply(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Applies the keys of `text` to `self` without validating the result.
    pub fn apply(&mut self, text: &str) -> Result<(), ConfigError> {
        let mut seen: Vec<String> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ConfigError::Syntax {
                    line,
                    message: format!("expected `key = value`, found `{content}`"),
                });
            };
            let key = key.trim();
            let value = value.trim();
            if key.is_empty() {
                return Err(ConfigError::Syntax {
                    line,
                    message: "missing key before `=`".into(),
                });
            }
            if seen.iter().any(|k| k == key) {
                return Err(ConfigError::DuplicateKey {
                    line,
                    key: key.into(),
                });
            }
            match self.set(key, value) {
                Ok(true) => seen.push(key.to_string()),
                Ok(false) => {
                    return Err(ConfigError::UnknownKey {
                        line,
                        key: key.into(),
                    })
                }
                Err(message) => {
                    return Err(ConfigError::Value {
                        line,
                        key: key.into(),
                        message,
                    })
                }
            }
        }
        Ok(())
    }

    /// Sets one key. Returns `Ok(false)` for an unknown key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<bool, String> {
        match key {
            "cell_radius_m" => self.cell_radius_m = parse_f64(value)?,
            "grid_cols" => self.grid_cols = parse_uint(value)?,
            "grid_rows" => self.grid_rows = parse_uint(value)?,
            "ues_per_cell" => self.ues_per_cell = parse_f64(value)?,
            "ue_count_mode" => {
                self.ue_count_mode = match value {
                    "poisson" => UeCountMode::Poisson,
                    "fixed" => UeCountMode::Fixed,
                    _ => return Err(format!("`{value}`: expected `poisson` or `fixed`")),
                }
            }
            "carrier_hz" => self.carrier_hz = parse_f64(value)?,
            "lsa_bandwidth_hz" => self.lsa_bandwidth_hz = parse_f64(value)?,
            "licensed_bandwidth_hz" => self.licensed_bandwidth_hz = parse_f64(value)?,
            "n_rb_lsa" => self.n_rb_lsa = parse_uint(value)?,
            "n_rb_licensed" => self.n_rb_licensed = parse_uint(value)?,
            "interference_threshold_dbm" => self.interference_threshold_dbm = parse_f64(value)?,
            "protective_margin_db" => self.protective_margin_db = parse_f64(value)?,
            "takeoff_speed_mps" => self.takeoff_speed_mps = parse_f64(value)?,
            "acceleration_mps2" => self.acceleration_mps2 = parse_f64(value)?,
            "climb_slope_deg" => self.climb_slope_deg = parse_f64(value)?,
            "max_speed_mps" => self.max_speed_mps = parse_f64(value)?,
            "telemetry_altitude_cutoff_m" => self.telemetry_altitude_cutoff_m = parse_f64(value)?,
            "observation_s" => self.observation_s = parse_f64(value)?,
            "frame_s" => self.frame_s = parse_f64(value)?,
            "position_update_s" => self.position_update_s = parse_f64(value)?,
            "control_latency_s" => self.control_latency_s = parse_f64(value)?,
            "max_ue_power_dbm" => self.max_ue_power_dbm = parse_f64(value)?,
            "min_ue_power_dbm" => self.min_ue_power_dbm = parse_f64(value)?,
            "pc_alpha" => self.pc_alpha = parse_f64(value)?,
            "sinr_target_lsa_db" => self.sinr_target_lsa_db = parse_f64(value)?,
            "sinr_target_licensed_db" => self.sinr_target_licensed_db = parse_f64(value)?,
            "bs_height_m" => self.bs_height_m = parse_f64(value)?,
            "ue_height_m" => self.ue_height_m = parse_f64(value)?,
            "shadow_sigma_db" => self.shadow_sigma_db = parse_f64(value)?,
            "bs_sidelobe_isolation_db" => self.bs_sidelobe_isolation_db = parse_f64(value)?,
            "bs_antenna_leakage_db" => self.bs_antenna_leakage_db = parse_f64(value)?,
            "bs_noise_figure_db" => self.bs_noise_figure_db = parse_f64(value)?,
            "shutdown_margin_db" => self.shutdown_margin_db = parse_f64(value)?,
            "pf_beta" => self.pf_beta = parse_f64(value)?,
            "per_ue_caps" => self.per_ue_caps = parse_bool(value)?,
            "runway_origin_xy" => self.runway_origin_xy = parse_pair(value)?,
            "runway_heading_deg" => self.runway_heading_deg = parse_f64(value)?,
            "evacuation_window_s" => {
                self.evacuation_window_s = if value.is_empty() || value == "none" {
                    None
                } else {
                    Some(parse_pair(value)?)
                }
            }
            "snapshot_times_s" => self.snapshot_times_s = parse_f64_list(value)?,
            "seed" => self.seed = parse_uint(value)?,
            _ => return Ok(false),
        }
        Ok(true)
    }

    /// Renders every key in the configuration file syntax; `parse` reads it back.
    pub fn to_text(&self) -> String {
        fn list(v: &[f64]) -> String {
            if v.is_empty() {
                "none".into()
            } else {
                v.iter().map(f64::to_string).collect::<Vec<_>>().join(", ")
            }
        }
        let mode = match self.ue_count_mode {
            UeCountMode::Poisson => "poisson",
            UeCountMode::Fixed => "fixed",
        };
        let evacuation = self
            .evacuation_window_s
            .map_or("none".to_string(), |(a, b)| list(&[a, b]));
        let entries: Vec<(&str, String)> = vec![
            ("cell_radius_m", self.cell_radius_m.to_string()),
            ("grid_cols", self.grid_cols.to_string()),
            ("grid_rows", self.grid_rows.to_string()),
            ("ues_per_cell", self.ues_per_cell.to_string()),
            ("ue_count_mode", mode.to_string()),
            ("carrier_hz", self.carrier_hz.to_string()),
            ("lsa_bandwidth_hz", self.lsa_bandwidth_hz.to_string()),
            (
                "licensed_bandwidth_hz",
                self.licensed_bandwidth_hz.to_string(),
            ),
            ("n_rb_lsa", self.n_rb_lsa.to_string()),
            ("n_rb_licensed", self.n_rb_licensed.to_string()),
            (
                "interference_threshold_dbm",
                self.interference_threshold_dbm.to_string(),
            ),
            (
                "protective_margin_db",
                self.protective_margin_db.to_string(),
            ),
            ("takeoff_speed_mps", self.takeoff_speed_mps.to_string()),
            ("acceleration_mps2", self.acceleration_mps2.to_string()),
            ("climb_slope_deg", self.climb_slope_deg.to_string()),
            ("max_speed_mps", self.max_speed_mps.to_string()),
            (
                "telemetry_altitude_cutoff_m",
                self.telemetry_altitude_cutoff_m.to_string(),
            ),
            ("observation_s", self.observation_s.to_string()),
            ("frame_s", self.frame_s.to_string()),
            ("position_update_s", self.position_update_s.to_string()),
            ("control_latency_s", self.control_latency_s.to_string()),
            ("max_ue_power_dbm", self.max_ue_power_dbm.to_string()),
            ("min_ue_power_dbm", self.min_ue_power_dbm.to_string()),
            ("pc_alpha", self.pc_alpha.to_string()),
            ("sinr_target_lsa_db", self.sinr_target_lsa_db.to_string()),
            (
                "sinr_target_licensed_db",
                self.sinr_target_licensed_db.to_string(),
            ),
            ("bs_height_m", self.bs_height_m.to_string()),
            ("ue_height_m", self.ue_height_m.to_string()),
            ("shadow_sigma_db", self.shadow_sigma_db.to_string()),
            (
                "bs_sidelobe_isolation_db",
                self.bs_sidelobe_isolation_db.to_string(),
            ),
            (
                "bs_antenna_leakage_db",
                self.bs_antenna_leakage_db.to_string(),
            ),
            ("bs_noise_figure_db", self.bs_noise_figure_db.to_string()),
            ("shutdown_margin_db", self.shutdown_margin_db.to_string()),
            ("pf_beta", self.pf_beta.to_string()),
            ("per_ue_caps", self.per_ue_caps.to_string()),
            (
                "runway_origin_xy",
                list(&[self.runway_origin_xy.0, self.runway_origin_xy.1]),
            ),
            ("runway_heading_deg", self.runway_heading_deg.to_string()),
            ("evacuation_window_s", evacuation),
            ("snapshot_times_s", list(&self.snapshot_times_s)),
            ("seed", self.seed.to_string()),
        ];
        entries
            .into_iter()
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        fn range(
            key: &'static str,
            ok: bool,
            message: impl Into<String>,
        ) -> Result<(), ConfigError> {
            if ok {
                Ok(())
            } else {
                Err(ConfigError::Range {
                    key,
                    message: message.into(),
                })
            }
        }
        let finite = |v: f64| v.is_finite();

        range(
            "cell_radius_m",
            finite(self.cell_radius_m) && self.cell_radius_m > 0.0,
            "must be > 0",
        )?;
        range("grid_cols", self.grid_cols >= 1, "must be >= 1")?;
        range("grid_rows", self.grid_rows >= 1, "must be >= 1")?;
        range(
            "ues_per_cell",
            finite(self.ues_per_cell) && self.ues_per_cell >= 0.0,
            "must be >= 0",
        )?;
        range(
            "carrier_hz",
            finite(self.carrier_hz) && self.carrier_hz > 0.0,
            "must be > 0",
        )?;
        range("n_rb_lsa", self.n_rb_lsa >= 1, "must be >= 1")?;
        range(
            "n_rb_lsa",
            self.n_rb_lsa as f64 * crate::num::RB_BANDWIDTH_HZ <= self.lsa_bandwidth_hz,
            "n_rb_lsa * 180 kHz exceeds lsa_bandwidth_hz",
        )?;
        range("n_rb_licensed", self.n_rb_licensed >= 1, "must be >= 1")?;
        range(
            "n_rb_licensed",
            3.0 * self.n_rb_licensed as f64 * crate::num::RB_BANDWIDTH_HZ
                <= self.licensed_bandwidth_hz,
            "three subbands of n_rb_licensed * 180 kHz exceed licensed_bandwidth_hz",
        )?;
        range(
            "takeoff_speed_mps",
            finite(self.takeoff_speed_mps) && self.takeoff_speed_mps > 0.0,
            "must be > 0",
        )?;
        range(
            "acceleration_mps2",
            finite(self.acceleration_mps2) && self.acceleration_mps2 > 0.0,
            "must be > 0",
        )?;
        range(
            "climb_slope_deg",
            self.climb_slope_deg >= 0.0 && self.climb_slope_deg < 90.0,
            "must lie in [0, 90)",
        )?;
        range(
            "max_speed_mps",
            finite(self.max_speed_mps) && self.max_speed_mps >= self.takeoff_speed_mps,
            "must be >= takeoff_speed_mps",
        )?;
        range(
            "telemetry_altitude_cutoff_m",
            self.telemetry_altitude_cutoff_m >= 0.0,
            "must be >= 0 (inf disables the cutoff)",
        )?;
        range(
            "frame_s",
            finite(self.frame_s) && self.frame_s > 0.0,
            "must be > 0",
        )?;
        range(
            "position_update_s",
            finite(self.position_update_s) && self.position_update_s >= self.frame_s,
            "must be >= frame_s",
        )?;
        let ratio = self.position_update_s / self.frame_s;
        range(
            "position_update_s",
            (ratio - ratio.round()).abs() < 1e-6,
            "must be an integer multiple of frame_s",
        )?;
        range(
            "observation_s",
            finite(self.observation_s) && self.observation_s >= self.position_update_s,
            "must be >= position_update_s",
        )?;
        range(
            "control_latency_s",
            finite(self.control_latency_s) && self.control_latency_s >= 0.0,
            "must be >= 0",
        )?;
        range(
            "min_ue_power_dbm",
            self.min_ue_power_dbm < self.max_ue_power_dbm,
            "must be below max_ue_power_dbm",
        )?;
        range(
            "pc_alpha",
            (0.0..=1.0).contains(&self.pc_alpha),
            "must lie in [0, 1]",
        )?;
        range("bs_height_m", self.bs_height_m >= 0.0, "must be >= 0")?;
        range("ue_height_m", self.ue_height_m >= 0.0, "must be >= 0")?;
        range(
            "shadow_sigma_db",
            self.shadow_sigma_db >= 0.0,
            "must be >= 0",
        )?;
        range(
            "pf_beta",
            self.pf_beta > 0.0 && self.pf_beta <= 1.0,
            "must lie in (0, 1]",
        )?;
        if let Some((start, end)) = self.evacuation_window_s {
            range("evacuation_window_s", start < end, "start must precede end")?;
        }
        range(
            "snapshot_times_s",
            self.snapshot_times_s.iter().all(|t| *t >= 0.0),
            "times must be >= 0",
        )?;
        Ok(())
    }

    /// Index of the frame that starts at `t_s`, rounding to the nearest frame.
    pub fn frame_at(&self, t_s: f64) -> u64 {
        (t_s / self.frame_s).round().max(0.0) as u64
    }

    /// Number of frames between two position updates.
    pub fn frames_per_update(&self) -> u64 {
        (self.position_update_s / self.frame_s).round() as u64
    }

    /// Start time of frame `index`.
    ///
    /// Uses a division when the frame rate is an integer so that e.g. frame 7
    /// at 10 ms prints as `0.07`.
    pub fn frame_time(&self, index: u64) -> f64 {
        let rate = 1.0 / self.frame_s;
        if (rate - rate.round()).abs() < 1e-9 {
            index as f64 / rate.round()
        } else {
            index as f64 * self.frame_s
        }
    }
}

/// Parses a configuration document. Alias of [`ScenarioConfig::parse`].
pub fn load_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    ScenarioConfig::parse(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_file_matches_defaults() {
        assert_eq!(
            load_config(DEFAULT_CONFIG).unwrap(),
            ScenarioConfig::default()
        );
    }

    #[test]
    fn rendered_text_reads_back() {
        let cfg = ScenarioConfig {
            evacuation_window_s: Some((3.5, 7.25)),
            snapshot_times_s: vec![],
            seed: u64::MAX,
            frame_s: 0.001,
            ..ScenarioConfig::default()
        };
        assert_eq!(load_config(&cfg.to_text()).unwrap(), cfg);
        assert!(ScenarioConfig::default()
            .to_text()
            .contains("telemetry_altitude_cutoff_m = inf\n"));
    }

    #[test]
    fn empty_document_gives_defaults() {
        assert_eq!(
            load_config("").unwrap(),
            load_config(DEFAULT_CONFIG).unwrap()
        );
        assert_eq!(
            load_config("# only a comment\n\n").unwrap(),
            ScenarioConfig::default()
        );
    }

    #[test]
    fn table_values() {
        let cfg = load_config(
            "cell_radius_m = 288\nprotective_margin_db = 10\npc_alpha = 1\nmax_ue_power_dbm = 23\n\
             takeoff_speed_mps = 65 # m/s\nacceleration_mps2 = 5\nclimb_slope_deg = 7\ncarrier_hz = 2.1e9",
        )
        .unwrap();
        assert_eq!(cfg.cell_radius_m, 288.0);
        assert_eq!(cfg.protective_margin_db, 10.0);
        assert_eq!(cfg.pc_alpha, 1.0);
        assert_eq!(cfg.takeoff_speed_mps, 65.0);
    }

    #[test]
    fn negative_radius_is_range_error() {
        let err = load_config("cell_radius_m = -1").unwrap_err();
        assert!(
            matches!(
                err,
                ConfigError::Range {
                    key: "cell_radius_m",
                    ..
                }
            ),
            "{err:?}"
        );
        assert!(err.to_string().contains("cell_radius_m"));
    }

    #[test]
    fn unknown_key_rejected_with_line() {
        let err = load_config("seed = 3\nbogus_key = 1").unwrap_err();
        assert_eq!(
            err,
            ConfigError::UnknownKey {
                line: 2,
                key: "bogus_key".into()
            }
        );
    }

    #[test]
    fn syntax_and_value_errors_carry_diagnostics() {
        assert!(matches!(
            load_config("\n\nno equals sign"),
            Err(ConfigError::Syntax { line: 3, .. })
        ));
        let err = load_config("frame_s = ten").unwrap_err();
        assert!(matches!(&err, ConfigError::Value { line: 1, key, .. } if key == "frame_s"));
        assert!(matches!(
            load_config("seed = 1\nseed = 2"),
            Err(ConfigError::DuplicateKey { line: 2, .. })
        ));
    }

    #[test]
    fn structured_values() {
        let cfg = load_config(
            "runway_origin_xy = -100, 25.5\nevacuation_window_s = 10, 20\nsnapshot_times_s = 1,2\n\
             telemetry_altitude_cutoff_m = inf\nper_ue_caps = true\nue_count_mode = fixed",
        )
        .unwrap();
        assert_eq!(cfg.runway_origin_xy, (-100.0, 25.5));
        assert_eq!(cfg.evacuation_window_s, Some((10.0, 20.0)));
        assert_eq!(cfg.snapshot_times_s, vec![1.0, 2.0]);
        assert!(cfg.telemetry_altitude_cutoff_m.is_infinite());
        assert!(cfg.per_ue_caps);
        assert_eq!(cfg.ue_count_mode, UeCountMode::Fixed);
    }

    #[test]
    fn ordering_invariants_enforced() {
        assert!(matches!(
            load_config("frame_s = 2"),
            Err(ConfigError::Range {
                key: "position_update_s",
                ..
            })
        ));
        assert!(matches!(
            load_config("observation_s = 0.5"),
            Err(ConfigError::Range {
                key: "observation_s",
                ..
            })
        ));
        assert!(matches!(
            load_config("min_ue_power_dbm = 30"),
            Err(ConfigError::Range {
                key: "min_ue_power_dbm",
                ..
            })
        ));
        assert!(matches!(
            load_config("n_rb_lsa = 60"),
            Err(ConfigError::Range {
                key: "n_rb_lsa",
                ..
            })
        ));
    }

    #[test]
    fn frame_times_print_cleanly() {
        let cfg = ScenarioConfig::default();
        assert_eq!(cfg.frame_time(7).to_string(), "0.07");
        assert_eq!(cfg.frame_time(300), 3.0);
        assert_eq!(cfg.frames_per_update(), 100);
        assert_eq!(cfg.frame_at(2.0), 200);
    }
}
