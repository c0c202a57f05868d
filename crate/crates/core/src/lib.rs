//! System-level simulator of dynamic Licensed Shared Access around an airport.
//!
//! A cellular uplink network borrows an airport telemetry band. While an
//! airplane takes off over the network, the incumbent reports its position
//! and a controller restricts the network under a [`control::Policy`].
//!
//! The link-budget, kinematics and power-control math is generic over
//! [`num::Scalar`] (`f32` or `f64`); the simulation engine runs in `f64`.

pub mod channel;
pub mod config;
pub mod control;
pub mod geometry;
pub mod metrics;
pub mod num;
pub mod ran;
pub mod scenario;
pub mod sim;

pub use config::{load_config, ConfigError, ScenarioConfig};
pub use control::Policy;
pub use num::Scalar;
pub use sim::{RunOutput, Simulation};

/// Scalar type of the simulation engine.
pub type Real = f64;
/// Position in metres, engine precision.
pub type Point = geometry::Point3<f64>;
/// Position in metres, single precision.
pub type Point32 = geometry::Point3<f32>;
/// Airplane state, engine precision.
pub type Airplane = scenario::AirplaneState<f64>;
