//! Static deployment and the incumbent's take-off trajectory.

mod deployment;
mod trajectory;

pub use deployment::{
    build_deployment, closest_point_in_cell, CellId, CellSite, Deployment, UeId, UeSite,
};
pub use trajectory::{airplane_state, AirplaneState, FlightPhase, Takeoff};
