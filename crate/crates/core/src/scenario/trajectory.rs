use serde::{Deserialize, Serialize};

use crate::config::ScenarioConfig;
use crate::geometry::Point3;
use crate::num::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlightPhase {
    GroundRoll,
    Climb,
    /// Above the telemetry altitude cutoff.
    Departed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AirplaneState<T> {
    pub t_s: T,
    pub position: Point3<T>,
    pub speed_mps: T,
    /// Distance travelled along the runway and climb path.
    pub path_m: T,
    pub phase: FlightPhase,
    pub telemetry_active: bool,
}

/// Straight-line departure: constant-acceleration ground roll up to rotation
/// speed, then a constant-slope climb that keeps accelerating until the
/// speed limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Takeoff<T> {
    pub origin: Point3<T>,
    pub heading_rad: T,
    pub rotation_speed_mps: T,
    pub acceleration_mps2: T,
    pub climb_slope_rad: T,
    pub max_speed_mps: T,
    pub telemetry_cutoff_m: T,
}

impl<T: Scalar> Takeoff<T> {
    pub fn from_config(cfg: &ScenarioConfig) -> Self {
        Self {
            origin: Point3::new(
                T::lit(cfg.runway_origin_xy.0),
                T::lit(cfg.runway_origin_xy.1),
                T::zero(),
            ),
            heading_rad: T::lit(cfg.runway_heading_deg.to_radians()),
            rotation_speed_mps: T::lit(cfg.takeoff_speed_mps),
            acceleration_mps2: T::lit(cfg.acceleration_mps2),
            climb_slope_rad: T::lit(cfg.climb_slope_deg.to_radians()),
            max_speed_mps: T::lit(cfg.max_speed_mps),
            telemetry_cutoff_m: T::from_f64(cfg.telemetry_altitude_cutoff_m)
                .unwrap_or_else(T::infinity),
        }
    }

    /// Time at which the airplane leaves the runway.
    pub fn rotation_time_s(&self) -> T {
        self.rotation_speed_mps / self.acceleration_mps2
    }

    /// Runway length used before rotation.
    pub fn rotation_distance_m(&self) -> T {
        let t = self.rotation_time_s();
        T::lit(0.5) * self.acceleration_mps2 * t * t
    }

    /// Speed and distance travelled `t_s` seconds after brake release.
    fn speed_and_path(&self, t_s: T) -> (T, T) {
        let half = T::lit(0.5);
        let a = self.acceleration_mps2;
        let t_acc = self.max_speed_mps / a;
        if t_s <= t_acc {
            (a * t_s, half * a * t_s * t_s)
        } else {
            let s_acc = half * a * t_acc * t_acc;
            (
                self.max_speed_mps,
                s_acc + self.max_speed_mps * (t_s - t_acc),
            )
        }
    }

    pub fn state_at(&self, t_s: T) -> AirplaneState<T> {
        let t = t_s.max(T::zero());
        let (speed, path) = self.speed_and_path(t);
        let s_rot = self.rotation_distance_m();
        let (along, z) = if path <= s_rot {
            (path, T::zero())
        } else {
            let climbed = path - s_rot;
            (
                s_rot + climbed * self.climb_slope_rad.cos(),
                climbed * self.climb_slope_rad.sin(),
            )
        };
        let position = Point3::new(
            self.origin.x + along * self.heading_rad.cos(),
            self.origin.y + along * self.heading_rad.sin(),
            z,
        );
        let telemetry_active = z <= self.telemetry_cutoff_m;
        let phase = if !telemetry_active {
            FlightPhase::Departed
        } else if t < self.rotation_time_s() {
            FlightPhase::GroundRoll
        } else {
            FlightPhase::Climb
        };
        AirplaneState {
            t_s: t,
            position,
            speed_mps: speed,
            path_m: path,
            phase,
            telemetry_active,
        }
    }
}

/// Airplane state at `t_s` seconds after launch.
pub fn airplane_state(cfg: &ScenarioConfig, t_s: f64) -> AirplaneState<f64> {
    Takeoff::from_config(cfg).state_at(t_s)
}
