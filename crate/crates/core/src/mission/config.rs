use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::projection::{project, GeoPoint};
use super::MissionError;
use crate::flowfield::{load_flow_grid, FlowGrid, InterpScheme};
use crate::geometry::{Point2, Polygon, Rect};
use crate::kinematics::{
    make_dive_profiles, CostMode, DiveProfile, ProfileFamilySpec, ProfileSelection, VehicleSpec, DEFAULT_SUBSTEPS,
};
use crate::search::Neighborhood;

pub const MISSION_VERSION: u32 = 1;

/// Position given either in the local frame or geographically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Position {
    Cartesian { x: f64, y: f64 },
    Geographic { lat: f64, lon: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SchemeInput {
    Text(String),
    Fields(InterpScheme),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileFamilyInput {
    pub z_min: Option<f64>,
    pub z_max: Option<f64>,
    pub z_climb_to_max: Option<f64>,
    pub z_min_range: Option<f64>,
    pub n_climb_to_levels: Option<usize>,
    pub n_dive_to_levels: Option<usize>,
}

/// Mission file as written by the user.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MissionConfig {
    pub version: u32,
    /// Relative paths resolve against the mission file's directory.
    pub flow_file: PathBuf,
    pub start: Position,
    pub goal: Position,
    #[serde(default)]
    pub start_time: Option<f64>,
    #[serde(default)]
    pub region: Option<Rect>,
    #[serde(default)]
    pub projection_origin: Option<GeoPoint>,
    #[serde(default)]
    pub vehicle_speed: Option<f64>,
    #[serde(default)]
    pub profile_family: Option<ProfileFamilyInput>,
    #[serde(default)]
    pub scheme: Option<SchemeInput>,
    #[serde(default)]
    pub h: Option<f64>,
    #[serde(default)]
    pub grid_spacing: Option<f64>,
    #[serde(default)]
    pub neighbors: Option<u8>,
    #[serde(default)]
    pub restricted_areas: Vec<Vec<Position>>,
    #[serde(default)]
    pub cost_mode: Option<CostMode>,
    #[serde(default)]
    pub slack_factor: Option<f64>,
    #[serde(default)]
    pub n_sub: Option<usize>,
    #[serde(default)]
    pub report_depths: Vec<f64>,
    #[serde(default)]
    pub parallel: Option<bool>,
    #[serde(default)]
    pub fifo_probe_s: Option<f64>,
}

/// Validated mission with every default filled in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MissionSpec {
    pub flow_file: PathBuf,
    pub start: Point2,
    pub goal: Point2,
    pub start_time: f64,
    pub region: Rect,
    pub projection_origin: Option<GeoPoint>,
    pub vehicle: VehicleSpec,
    pub profile_family: ProfileFamilySpec,
    pub profiles: Vec<DiveProfile>,
    pub scheme: InterpScheme,
    pub h: f64,
    pub grid_spacing: f64,
    pub neighborhood: Neighborhood,
    pub restricted_areas: Vec<Polygon>,
    pub selection: ProfileSelection,
    pub n_sub: usize,
    pub report_depths: Vec<f64>,
    pub parallel: bool,
    pub fifo_probe_s: Option<f64>,
    /// Adjustments made while applying defaults.
    #[serde(default)]
    pub warnings: Vec<String>,
}

pub const DEFAULT_SPEED: f64 = 0.3;
pub const DEFAULT_H: f64 = 0.25;
/// Lattice cells along the longer side of the region when no spacing is given.
pub const DEFAULT_CELLS: f64 = 40.0;

fn invalid(field: &'static str, message: impl Into<String>) -> MissionError {
    MissionError::Invalid { field, message: message.into() }
}

impl MissionConfig {
    pub fn from_json(text: &str) -> Result<Self, MissionError> {
        let config: MissionConfig = serde_json::from_str(text).map_err(|e| MissionError::Parse(e.to_string()))?;
        if config.version != MISSION_VERSION {
            return Err(invalid("version", format!("unsupported version {}", config.version)));
        }
        Ok(config)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, MissionError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| MissionError::Io { path: path.display().to_string(), source })?;
        let mut config = Self::from_json(&text)?;
        if config.flow_file.is_relative() {
            if let Some(dir) = path.parent() {
                config.flow_file = dir.join(&config.flow_file);
            }
        }
        Ok(config)
    }

    /// Applies defaults against `grid` and checks every invariant.
    pub fn resolve(&self, grid: &FlowGrid) -> Result<MissionSpec, MissionError> {
        let mut warnings = Vec::new();
        let origin = match self.projection_origin {
            Some(o) => Some(o),
            None => match self.start {
                Position::Geographic { lat, lon } => Some(GeoPoint::new(lat, lon)),
                Position::Cartesian { .. } => None,
            },
        };
        if let Some(o) = origin {
            if !(o.lat.abs() < 89.0 && o.lon.is_finite()) {
                return Err(invalid("projection_origin", "latitude must lie within (-89, 89) degrees"));
            }
        }
        let place = |p: Position, field: &'static str| -> Result<Point2, MissionError> {
            let q = match p {
                Position::Cartesian { x, y } => Point2::new(x, y),
                Position::Geographic { lat, lon } => {
                    let o = origin.ok_or_else(|| invalid(field, "geographic position needs projection_origin"))?;
                    project(GeoPoint::new(lat, lon), o)
                }
            };
            if q.x.is_finite() && q.y.is_finite() {
                Ok(q)
            } else {
                Err(invalid(field, "coordinates must be finite"))
            }
        };
        let start = place(self.start, "start")?;
        let goal = place(self.goal, "goal")?;
        if start == goal {
            return Err(invalid("goal", "start and goal coincide"));
        }

        let t_first = grid.t()[0];
        let start_time = match self.start_time {
            None => t_first,
            Some(t) if !t.is_finite() => return Err(invalid("start_time", "must be finite")),
            Some(t) if t < t_first => {
                let msg = format!("start_time {t} precedes the first flow time step; clamped to {t_first}");
                log::warn!("{msg}");
                warnings.push(msg);
                t_first
            }
            Some(t) => t,
        };

        let region = self.region.unwrap_or_else(|| grid.bounds());
        let finite = [region.x_min, region.x_max, region.y_min, region.y_max].iter().all(|v| v.is_finite());
        if !finite || region.width() <= 0.0 || region.height() <= 0.0 {
            return Err(invalid("region", "must be a finite rectangle with positive width and height"));
        }
        if !region.contains(start) {
            return Err(invalid("start", "outside the mission region"));
        }
        if !region.contains(goal) {
            return Err(invalid("goal", "outside the mission region"));
        }

        let vehicle = VehicleSpec::new(self.vehicle_speed.unwrap_or(DEFAULT_SPEED))
            .map_err(|e| invalid("vehicle_speed", e.to_string()))?;

        let profile_family = self.profile_family(grid)?;
        let profiles = make_dive_profiles(&profile_family).map_err(|e| invalid("profile_family", e.to_string()))?;

        let scheme = match &self.scheme {
            None => InterpScheme::default(),
            Some(SchemeInput::Fields(s)) => *s,
            Some(SchemeInput::Text(s)) => s.parse().map_err(|e: String| invalid("scheme", e))?,
        };

        let h = self.h.unwrap_or(DEFAULT_H);
        if !(h > 0.0 && h <= 1.0) {
            return Err(invalid("h", format!("step size must lie in (0, 1], got {h}")));
        }
        let grid_spacing = self.grid_spacing.unwrap_or(region.width().max(region.height()) / DEFAULT_CELLS);
        if !(grid_spacing > 0.0 && grid_spacing.is_finite()) {
            return Err(invalid("grid_spacing", format!("must be positive, got {grid_spacing}")));
        }
        let neighborhood = Neighborhood::try_from(self.neighbors.unwrap_or(16)).map_err(|e| invalid("neighbors", e))?;

        let mut restricted_areas = Vec::with_capacity(self.restricted_areas.len());
        for ring in &self.restricted_areas {
            if ring.len() < 3 {
                return Err(invalid("restricted_areas", "each polygon needs at least three vertices"));
            }
            let pts = ring.iter().map(|&p| place(p, "restricted_areas")).collect::<Result<Vec<_>, _>>()?;
            restricted_areas.push(Polygon::new(pts));
        }

        let selection = ProfileSelection {
            mode: self.cost_mode.unwrap_or(CostMode::Fastest),
            slack_factor: self.slack_factor.unwrap_or(ProfileSelection::default().slack_factor),
        };
        if !(selection.slack_factor >= 1.0 && selection.slack_factor.is_finite()) {
            return Err(invalid("slack_factor", format!("must be at least 1, got {}", selection.slack_factor)));
        }
        let n_sub = self.n_sub.unwrap_or(DEFAULT_SUBSTEPS);
        if n_sub == 0 {
            return Err(invalid("n_sub", "must be at least 1"));
        }
        let (z_lo, z_hi) = z_range(grid);
        if let Some(&z) = self.report_depths.iter().find(|z| !(**z >= z_lo && **z <= z_hi)) {
            return Err(invalid("report_depths", format!("depth {z} outside the flow depth range [{z_lo}, {z_hi}]")));
        }
        if let Some(d) = self.fifo_probe_s {
            if !(d > 0.0 && d.is_finite()) {
                return Err(invalid("fifo_probe_s", format!("must be positive, got {d}")));
            }
        }

        Ok(MissionSpec {
            flow_file: self.flow_file.clone(),
            start,
            goal,
            start_time,
            region,
            projection_origin: origin,
            vehicle,
            profile_family,
            profiles,
            scheme,
            h,
            grid_spacing,
            neighborhood,
            restricted_areas,
            selection,
            n_sub,
            report_depths: self.report_depths.clone(),
            parallel: self.parallel.unwrap_or(true),
            fifo_probe_s: self.fifo_probe_s,
            warnings,
        })
    }

    fn profile_family(&self, grid: &FlowGrid) -> Result<ProfileFamilySpec, MissionError> {
        let input = self.profile_family.clone().unwrap_or_default();
        let (z_lo, z_hi) = z_range(grid);
        let z_min = input.z_min.unwrap_or(z_lo);
        let z_max = input.z_max.unwrap_or(z_hi);
        if z_max > z_hi {
            return Err(invalid("z_max", format!("{z_max} m exceeds the deepest flow layer ({z_hi} m)")));
        }
        if z_min < z_lo {
            return Err(invalid("z_min", format!("{z_min} m lies above the shallowest flow layer ({z_lo} m)")));
        }
        let family = ProfileFamilySpec {
            z_min,
            z_max,
            z_climb_to_max: input.z_climb_to_max.unwrap_or(z_min),
            z_min_range: input.z_min_range.unwrap_or(0.5 * (z_max - z_min)),
            n_climb_to_levels: input.n_climb_to_levels.unwrap_or(1),
            n_dive_to_levels: input.n_dive_to_levels.unwrap_or(1),
        };
        family.validate().map_err(|e| invalid("profile_family", e.to_string()))?;
        Ok(family)
    }
}

fn z_range(grid: &FlowGrid) -> (f64, f64) {
    let z = grid.z();
    (z[0].max(0.0), z[z.len() - 1])
}

/// Reads a mission file and its flow archive and resolves the mission.
pub fn parse_mission(path: impl AsRef<Path>) -> Result<(MissionSpec, FlowGrid), MissionError> {
    let config = MissionConfig::from_file(path)?;
    let grid = load_flow_grid(&config.flow_file)?;
    let spec = config.resolve(&grid)?;
    Ok((spec, grid))
}
