//! Mission files, coordinate projection and the plan, smooth and export pipeline.

mod config;
mod export;
mod projection;
mod run;
mod svg;
mod sweep;

pub use config::{
    parse_mission, MissionConfig, MissionSpec, Position, ProfileFamilyInput, SchemeInput, DEFAULT_CELLS, DEFAULT_H,
    DEFAULT_SPEED, MISSION_VERSION,
};
pub use export::{
    export_waypoints, format_duration, totals, waypoint_document, waypoint_records, Totals, WaypointDocument,
    WaypointRecord, WAYPOINT_FILE_VERSION,
};
pub use projection::{project, unproject, GeoPoint, EARTH_RADIUS};
pub use run::{
    mission_cost, mission_obstacles, run_mission, GraphStats, MissionResult, MissionStatus, RunOptions, StraightLine,
};
pub use svg::{render_svg, write_svg};
pub use sweep::{apply_sweep_value, run_sweep, SweepRow, SweepVariable};

use thiserror::Error;

use crate::flowfield::FlowError;
use crate::kinematics::KinematicsError;
use crate::search::{GraphError, SearchError};

#[derive(Debug, Error)]
pub enum MissionError {
    #[error("i/o error on {path}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("mission file: {0}")]
    Parse(String),
    #[error("invalid mission field `{field}`: {message}")]
    Invalid { field: &'static str, message: String },
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Search(#[from] SearchError),
}
