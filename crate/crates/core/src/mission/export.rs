use std::fs;
use std::path::Path;

use serde::Serialize;

use super::config::MissionSpec;
use super::projection::{unproject, GeoPoint};
use super::run::{MissionResult, MissionStatus};
use super::MissionError;
use crate::kinematics::{DiveProfile, TravelTime};

pub const WAYPOINT_FILE_VERSION: u32 = 1;

/// `dd:hh:mm:ss` with the seconds truncated; "impassable" when not finite.
pub fn format_duration(secs: f64) -> String {
    if !secs.is_finite() || secs < 0.0 {
        return "impassable".to_string();
    }
    let s = secs.floor() as u64;
    format!("{:02}:{:02}:{:02}:{:02}", s / 86_400, s / 3600 % 24, s / 60 % 60, s % 60)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WaypointRecord {
    pub index: usize,
    pub x: f64,
    pub y: f64,
    pub lat: Option<f64>,
    pub lon: Option<f64>,
    /// Absolute arrival time (s).
    pub arrival_time: f64,
    /// Time since departure, `dd:hh:mm:ss`.
    pub elapsed: String,
    /// Profile flown on the leg leaving this waypoint.
    pub profile: Option<DiveProfile>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Totals {
    pub status: MissionStatus,
    pub travel_time_s: Option<f64>,
    pub travel_time: String,
    pub path_length_m: Option<f64>,
    pub waypoints_planned: usize,
    pub waypoints_smoothed: Option<usize>,
    pub straight_line_s: TravelTime,
    pub straight_line: String,
    pub straight_line_no_current_s: f64,
    pub straight_line_no_current: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WaypointDocument<'a> {
    pub version: u32,
    pub mission: &'a MissionSpec,
    pub diagnostic: Option<&'a str>,
    pub waypoints: Vec<WaypointRecord>,
    pub totals: Totals,
}

pub fn waypoint_records(result: &MissionResult, origin: Option<GeoPoint>) -> Vec<WaypointRecord> {
    let Some(path) = result.final_path() else { return Vec::new() };
    let t0 = path.departure();
    path.waypoints
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let geo = origin.map(|o| unproject(p, o));
            WaypointRecord {
                index: i,
                x: p.x,
                y: p.y,
                lat: geo.map(|g| g.lat),
                lon: geo.map(|g| g.lon),
                arrival_time: path.arrival_times[i],
                elapsed: format_duration(path.arrival_times[i] - t0),
                profile: path.profiles.get(i).copied().flatten(),
            }
        })
        .collect()
}

pub fn totals(result: &MissionResult) -> Totals {
    let path = result.final_path();
    Totals {
        status: result.status,
        travel_time_s: path.map(|p| p.total_time),
        travel_time: path.map_or_else(|| format_duration(f64::INFINITY), |p| format_duration(p.total_time)),
        path_length_m: path.map(|p| p.total_length),
        waypoints_planned: result.planned.as_ref().map_or(0, |p| p.waypoints.len()),
        waypoints_smoothed: result.smoothed.as_ref().map(|p| p.waypoints.len()),
        straight_line_s: result.straight_line.time,
        straight_line: format_duration(result.straight_line.time.as_secs()),
        straight_line_no_current_s: result.straight_line_no_current,
        straight_line_no_current: format_duration(result.straight_line_no_current),
    }
}

/// Waypoint file contents: mission echo, records of the final path and totals.
pub fn waypoint_document(result: &MissionResult, spec: &MissionSpec) -> String {
    let doc = WaypointDocument {
        version: WAYPOINT_FILE_VERSION,
        mission: spec,
        diagnostic: result.diagnostic.as_deref(),
        waypoints: waypoint_records(result, spec.projection_origin),
        totals: totals(result),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("waypoint document serializes");
    text.push('\n');
    text
}

pub fn export_waypoints(result: &MissionResult, spec: &MissionSpec, path: impl AsRef<Path>) -> Result<(), MissionError> {
    let path = path.as_ref();
    fs::write(path, waypoint_document(result, spec))
        .map_err(|source| MissionError::Io { path: path.display().to_string(), source })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn durations_truncate() {
        assert_eq!(format_duration(700_000.0), "08:02:26:40");
        assert_eq!(format_duration(701_833.33), "08:02:57:13");
        assert_eq!(format_duration(59.999), "00:00:00:59");
        assert_eq!(format_duration(f64::INFINITY), "impassable");
        assert_eq!(format_duration(100.0 * 86_400.0), "100:00:00:00");
    }

    #[test]
    fn straight_line_rows() {
        // 210.00 km and 210.55 km at 0.3 m/s
        assert_eq!(format_duration(210_000.0 / 0.3), "08:02:26:40");
        assert_eq!(format_duration(210_550.0 / 0.3), "08:02:57:13");
    }
}
