use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use super::config::MissionSpec;
use super::run::{run_mission, MissionStatus, RunOptions};
use super::MissionError;
use crate::flowfield::{AxisMethod, FlowGrid, XyMethod};
use crate::kinematics::VehicleSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    XyMethod,
    /// Depth and time method together.
    ZtMethod,
    GridSpacing,
    VehicleSpeed,
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepVariable::XyMethod => "xy_method",
            SweepVariable::ZtMethod => "zt_method",
            SweepVariable::GridSpacing => "grid_spacing",
            SweepVariable::VehicleSpeed => "vehicle_speed",
        })
    }
}

impl FromStr for SweepVariable {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "xy_method" => Ok(SweepVariable::XyMethod),
            "zt_method" => Ok(SweepVariable::ZtMethod),
            "grid_spacing" => Ok(SweepVariable::GridSpacing),
            "vehicle_speed" => Ok(SweepVariable::VehicleSpeed),
            other => Err(format!(
                "unknown sweep variable '{other}' (xy_method, zt_method, grid_spacing, vehicle_speed)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub value: String,
    pub status: MissionStatus,
    pub travel_time_s: Option<f64>,
    pub path_length_m: Option<f64>,
    pub waypoints_planned: usize,
    pub waypoints_smoothed: usize,
    /// Wall-clock seconds for the run; machine dependent.
    pub comp_time_s: f64,
}

/// Copy of `base` with `variable` set to `value`.
pub fn apply_sweep_value(base: &MissionSpec, variable: SweepVariable, value: &str) -> Result<MissionSpec, MissionError> {
    let bad = |msg: String| MissionError::Invalid { field: "values", message: msg };
    let mut spec = base.clone();
    match variable {
        SweepVariable::XyMethod => spec.scheme.xy = value.parse::<XyMethod>().map_err(bad)?,
        SweepVariable::ZtMethod => {
            let m = value.parse::<AxisMethod>().map_err(bad)?;
            spec.scheme.z = m;
            spec.scheme.t = m;
        }
        SweepVariable::GridSpacing => {
            let s: f64 = value.parse().map_err(|_| bad(format!("grid spacing '{value}' is not a number")))?;
            if !(s > 0.0 && s.is_finite()) {
                return Err(bad(format!("grid spacing must be positive, got {value}")));
            }
            spec.grid_spacing = s;
        }
        SweepVariable::VehicleSpeed => {
            let s: f64 = value.parse().map_err(|_| bad(format!("speed '{value}' is not a number")))?;
            spec.vehicle = VehicleSpec::new(s).map_err(|e| bad(e.to_string()))?;
        }
    }
    Ok(spec)
}

/// Runs the mission once per value, in the given order.
pub fn run_sweep(
    base: &MissionSpec,
    grid: &FlowGrid,
    variable: SweepVariable,
    values: &[String],
) -> Result<Vec<SweepRow>, MissionError> {
    if values.len() < 2 {
        return Err(MissionError::Invalid { field: "values", message: "a sweep needs at least two values".into() });
    }
    let specs = values
        .iter()
        .map(|v| apply_sweep_value(base, variable, v))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::with_capacity(values.len());
    for (value, spec) in values.iter().zip(&specs) {
        let clock = Instant::now();
        let result = run_mission(spec, grid, RunOptions::default())?;
        let comp_time_s = clock.elapsed().as_secs_f64();
        let path = result.final_path();
        rows.push(SweepRow {
            value: value.clone(),
            status: result.status,
            travel_time_s: path.map(|p| p.total_time),
            path_length_m: path.map(|p| p.total_length),
            waypoints_planned: result.planned.as_ref().map_or(0, |p| p.waypoints.len()),
            waypoints_smoothed: result.smoothed.as_ref().map_or(0, |p| p.waypoints.len()),
            comp_time_s,
        });
    }
    Ok(rows)
}
