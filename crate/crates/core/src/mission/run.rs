use serde::Serialize;

use super::config::MissionSpec;
use super::MissionError;
use crate::cost::EdgeCost;
use crate::flowfield::{FlowGrid, FlowModel};
use crate::kinematics::{DiveProfile, GliderCost, TravelTime};
use crate::search::{
    build_graph, path_report, tve_dijkstra, Blocked, GraphError, LandMask, LegReport, PlannedPath, SearchError,
    SearchOptions,
};
use crate::smoothing::{smooth_planned, SmoothingTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MissionStatus {
    Planned,
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StraightLine {
    /// Seconds, or `null` when impassable.
    pub time: TravelTime,
    pub profile: Option<DiveProfile>,
    pub length: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub settled: usize,
    pub relaxed: usize,
    pub fifo_violations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MissionResult {
    pub status: MissionStatus,
    /// Why no path was found.
    pub diagnostic: Option<String>,
    pub planned: Option<PlannedPath>,
    pub smoothed: Option<PlannedPath>,
    pub straight_line: StraightLine,
    /// Straight-line distance over vehicle speed (s).
    pub straight_line_no_current: f64,
    pub report: Vec<LegReport>,
    pub trace: Option<SmoothingTrace>,
    pub graph: GraphStats,
}

impl MissionResult {
    /// Smoothed path when smoothing ran, else the planned one.
    pub fn final_path(&self) -> Option<&PlannedPath> {
        self.smoothed.as_ref().or(self.planned.as_ref())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub smooth: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { smooth: true }
    }
}

/// Leg cost model of a mission over `grid`.
pub fn mission_cost<'g>(spec: &MissionSpec, grid: &'g FlowGrid) -> Result<GliderCost<FlowModel<'g>>, MissionError> {
    let field = FlowModel::new(grid, spec.scheme);
    let cost = GliderCost::new(field, spec.vehicle, spec.profiles.clone(), spec.h)?
        .with_selection(spec.selection)?
        .with_substeps(spec.n_sub)
        .with_parallel(spec.parallel);
    Ok(cost)
}

/// Impassable geometry of a mission: land cells of the grid plus restricted areas.
pub fn mission_obstacles(spec: &MissionSpec, grid: &FlowGrid) -> Blocked {
    Blocked::new(Some(LandMask::from_grid(grid)), spec.restricted_areas.clone())
}

/// Plans, smooths and reports a mission.
pub fn run_mission(spec: &MissionSpec, grid: &FlowGrid, options: RunOptions) -> Result<MissionResult, MissionError> {
    let cost = mission_cost(spec, grid)?;
    let blocked = mission_obstacles(spec, grid);

    let direct = cost.leg_cost(spec.start, spec.goal, spec.start_time);
    let length = spec.start.distance(spec.goal);
    let mut result = MissionResult {
        status: MissionStatus::Infeasible,
        diagnostic: None,
        planned: None,
        smoothed: None,
        straight_line: StraightLine { time: direct.time, profile: direct.profile, length },
        straight_line_no_current: length / spec.vehicle.speed,
        report: Vec::new(),
        trace: None,
        graph: GraphStats::default(),
    };

    let mut graph = build_graph(spec.region, spec.grid_spacing, spec.neighborhood, &blocked)?;
    let terminals = graph.connect_terminals(spec.start, spec.goal, spec.neighborhood.count(), &blocked);
    result.graph.vertices = graph.vertex_count();
    result.graph.edges = graph.edge_count();
    let (s, g) = match terminals {
        Ok(pair) => pair,
        Err(e @ (GraphError::TerminalBlocked(_) | GraphError::TerminalUnreachable(_))) => {
            result.diagnostic = Some(e.to_string());
            return Ok(result);
        }
        Err(e) => return Err(e.into()),
    };

    let search = SearchOptions { fifo_probe: spec.fifo_probe_s };
    let outcome = match tve_dijkstra(&graph, s, g, spec.start_time, &cost, &search) {
        Ok(o) => o,
        Err(SearchError::Unreachable) => {
            result.diagnostic = Some(SearchError::Unreachable.to_string());
            return Ok(result);
        }
        Err(e) => return Err(e.into()),
    };
    result.graph.settled = outcome.settled;
    result.graph.relaxed = outcome.relaxed;
    result.graph.fifo_violations = outcome.fifo_violations;
    if outcome.fifo_violations > 0 {
        log::warn!("{} relaxed edges violate first-in-first-out timing; the plan may not be optimal", outcome.fifo_violations);
    }
    result.status = MissionStatus::Planned;

    let planned = outcome.path;
    if options.smooth {
        let (smoothed, trace) = smooth_planned(&planned, &cost);
        result.smoothed = Some(smoothed);
        result.trace = Some(trace);
    }
    result.planned = Some(planned);
    let field = FlowModel::new(grid, spec.scheme);
    let shown = result.final_path().expect("planned path present");
    result.report = path_report(shown, &field, spec.vehicle.speed, &spec.report_depths);
    Ok(result)
}
