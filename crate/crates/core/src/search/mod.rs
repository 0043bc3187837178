//! Lattice graph construction and time-dependent shortest-path search.

mod dijkstra;
mod graph;
mod report;

pub use dijkstra::{tve_dijkstra, SearchOptions, SearchOutcome};
pub use graph::{build_graph, Blocked, Edge, LandMask, Neighborhood, SearchGraph};
pub use report::{path_report, LegReport, LegSample};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cost::EdgeCost;
use crate::geometry::Point2;
use crate::kinematics::DiveProfile;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("grid spacing must be positive and finite, got {0}")]
    InvalidSpacing(f64),
    #[error("region must be finite with non-negative extent and hold at least two lattice vertices")]
    InvalidRegion,
    #[error("graph has no edges: every lattice vertex is blocked or isolated")]
    Empty,
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("terminals can only be connected to a lattice graph")]
    NotALattice,
    #[error("{0} lies outside the mission region")]
    TerminalOutsideRegion(&'static str),
    #[error("{0} lies inside blocked geometry")]
    TerminalBlocked(&'static str),
    #[error("{0} unreachable from lattice")]
    TerminalUnreachable(&'static str),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("departure time must be finite, got {0}")]
    InvalidDeparture(f64),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("goal unreachable: no feasible path")]
    Unreachable,
}

/// Waypoints with arrival times and the dive profile flown on each leg.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlannedPath {
    pub waypoints: Vec<Point2>,
    /// Arrival time (s) at each waypoint; the first entry is the departure time.
    pub arrival_times: Vec<f64>,
    /// One entry per leg.
    pub profiles: Vec<Option<DiveProfile>>,
    pub total_time: f64,
    pub total_length: f64,
}

impl PlannedPath {
    pub fn new(waypoints: Vec<Point2>, arrival_times: Vec<f64>, profiles: Vec<Option<DiveProfile>>) -> Self {
        debug_assert_eq!(waypoints.len(), arrival_times.len());
        debug_assert_eq!(profiles.len() + 1, waypoints.len().max(1));
        let total_time = match (arrival_times.first(), arrival_times.last()) {
            (Some(a), Some(b)) => b - a,
            _ => 0.0,
        };
        let total_length = waypoints.windows(2).map(|w| w[0].distance(w[1])).sum();
        Self { waypoints, arrival_times, profiles, total_time, total_length }
    }

    /// Evaluates `waypoints` leg by leg from `t0`. Arrivals after the first
    /// impassable leg are infinite.
    pub fn replay<C: EdgeCost + ?Sized>(waypoints: Vec<Point2>, t0: f64, cost: &C) -> Self {
        let mut times = Vec::with_capacity(waypoints.len());
        let mut profiles = Vec::with_capacity(waypoints.len().saturating_sub(1));
        if !waypoints.is_empty() {
            times.push(t0);
        }
        for w in waypoints.windows(2) {
            let depart = *times.last().unwrap();
            if depart.is_finite() {
                let leg = cost.leg_cost(w[0], w[1], depart);
                times.push(depart + leg.time.as_secs());
                profiles.push(leg.profile);
            } else {
                times.push(f64::INFINITY);
                profiles.push(None);
            }
        }
        Self::new(waypoints, times, profiles)
    }

    pub fn departure(&self) -> f64 {
        self.arrival_times[0]
    }

    pub fn arrival(&self) -> f64 {
        *self.arrival_times.last().expect("empty path")
    }

    pub fn is_feasible(&self) -> bool {
        self.arrival().is_finite()
    }
}
