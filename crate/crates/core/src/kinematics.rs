//! Over-ground speed, leg travel times and dive-profile selection.
//!
//! A leg is simulated in sub-steps: the current is sampled at the midpoint of
//! each sub-segment at the clock time the vehicle enters it, and the vehicle
//! crabs so that its velocity through the water plus the current points along
//! the leg. A leg the vehicle cannot make headway on (or that touches land or
//! leaves the grid) is impassable and reported as [`TravelTime::INFEASIBLE`].

use std::fmt;
use std::ops::Add;

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::flowfield::{CurrentField, CurrentVector};
use crate::geometry::{Point2, Point3};

/// Default number of sub-steps per straight leg.
pub const DEFAULT_SUBSTEPS: usize = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KinematicsError {
    #[error("vehicle speed must be positive and finite, got {0}")]
    InvalidSpeed(f64),
    #[error("direction must be a unit vector (|d| = {0})")]
    NonUnitDirection(f64),
    #[error("invalid dive profile family: {0}")]
    InvalidFamily(String),
    #[error("no dive profile satisfies the minimum amplitude {0} m")]
    NoProfiles(f64),
    #[error("step size h must lie in (0, 1], got {0}")]
    InvalidStep(f64),
    #[error("slack factor must be at least 1, got {0}")]
    InvalidSlack(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VehicleSpec {
    /// Cruising speed through the water (m/s).
    pub speed: f64,
}

impl VehicleSpec {
    pub fn new(speed: f64) -> Result<Self, KinematicsError> {
        if speed > 0.0 && speed.is_finite() {
            Ok(Self { speed })
        } else {
            Err(KinematicsError::InvalidSpeed(speed))
        }
    }
}

/// Elapsed seconds, or infinity for an impassable leg.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct TravelTime(f64);

impl TravelTime {
    pub const INFEASIBLE: TravelTime = TravelTime(f64::INFINITY);
    pub const ZERO: TravelTime = TravelTime(0.0);

    /// Non-finite or negative input is treated as impassable.
    pub fn from_secs(secs: f64) -> Self {
        if secs.is_finite() && secs >= 0.0 {
            TravelTime(secs)
        } else {
            Self::INFEASIBLE
        }
    }

    pub fn is_feasible(self) -> bool {
        self.0.is_finite()
    }

    /// Seconds; `f64::INFINITY` when impassable.
    pub fn as_secs(self) -> f64 {
        self.0
    }

    pub fn secs(self) -> Option<f64> {
        self.is_feasible().then_some(self.0)
    }
}

impl Add for TravelTime {
    type Output = TravelTime;

    fn add(self, rhs: TravelTime) -> TravelTime {
        TravelTime(self.0 + rhs.0)
    }
}

impl fmt::Display for TravelTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.secs() {
            Some(s) => write!(f, "{s} s"),
            None => f.write_str("impassable"),
        }
    }
}

/// Serialized as seconds, or `null` when impassable.
impl Serialize for TravelTime {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.secs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for TravelTime {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.map_or(TravelTime::INFEASIBLE, TravelTime::from_secs))
    }
}

/// Speed along `direction` over ground, or `None` when the current cannot be
/// compensated (`c_perp > speed`) or leaves no forward progress.
pub fn effective_speed(
    vehicle: VehicleSpec,
    current: CurrentVector,
    direction: [f64; 3],
) -> Result<Option<f64>, KinematicsError> {
    let norm = direction.iter().map(|d| d * d).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(KinematicsError::NonUnitDirection(norm));
    }
    Ok(path_speed(vehicle.speed, current, direction))
}

#[inline]
fn path_speed(speed: f64, c: CurrentVector, d: [f64; 3]) -> Option<f64> {
    let along = c.u * d[0] + c.v * d[1];
    let px = c.u - along * d[0];
    let py = c.v - along * d[1];
    let pz = -along * d[2];
    let cross2 = px * px + py * py + pz * pz;
    let slack = speed * speed - cross2;
    if slack < 0.0 {
        return None;
    }
    let v = along + slack.sqrt();
    (v > 0.0).then_some(v)
}

/// Simulated time to run the straight 3-D leg `start -> end` departing at `t_start`.
pub fn travel_time<F: CurrentField + ?Sized>(
    field: &F,
    vehicle: VehicleSpec,
    start: Point3,
    end: Point3,
    t_start: f64,
    n_sub: usize,
) -> TravelTime {
    if !t_start.is_finite() {
        return TravelTime::INFEASIBLE;
    }
    let len = start.distance(end);
    if len == 0.0 {
        return TravelTime::ZERO;
    }
    let d = [(end.x - start.x) / len, (end.y - start.y) / len, (end.z - start.z) / len];
    let n = n_sub.max(1);
    let sub_len = len / n as f64;
    let mut elapsed = 0.0;
    for k in 0..n {
        let mid = start.lerp(end, (k as f64 + 0.5) / n as f64);
        let Ok(c) = field.current(mid.x, mid.y, mid.z, t_start + elapsed) else {
            return TravelTime::INFEASIBLE;
        };
        let Some(v) = path_speed(vehicle.speed, c, d) else {
            return TravelTime::INFEASIBLE;
        };
        elapsed += sub_len / v;
    }
    TravelTime::from_secs(elapsed)
}

/// One saw-tooth depth band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiveProfile {
    pub z_climb_to: f64,
    pub z_dive_to: f64,
}

impl DiveProfile {
    pub const fn new(z_climb_to: f64, z_dive_to: f64) -> Self {
        Self { z_climb_to, z_dive_to }
    }

    pub fn amplitude(&self) -> f64 {
        self.z_dive_to - self.z_climb_to
    }
}

/// Number of horizontal slices for step size `h` (ceil(1/h), robust to `1/h`
/// landing a hair above an integer).
pub fn segment_count(h: f64) -> usize {
    ((1.0 / h) - 1e-9).ceil().max(1.0) as usize
}

/// Travel time of a horizontal leg flown as `ceil(1/h)` straight dives from
/// `z_climb_to` down to `z_dive_to`, each starting when the previous ends.
#[allow(clippy::too_many_arguments)]
pub fn glider_travel_time<F: CurrentField + ?Sized>(
    field: &F,
    vehicle: VehicleSpec,
    from: Point2,
    to: Point2,
    profile: DiveProfile,
    t_start: f64,
    h: f64,
    n_sub: usize,
) -> TravelTime {
    if !t_start.is_finite() {
        return TravelTime::INFEASIBLE;
    }
    debug_assert!(h > 0.0 && h <= 1.0, "step size out of range: {h}");
    let n = segment_count(h);
    let step_x = (to.x - from.x) / n as f64;
    let step_y = (to.y - from.y) / n as f64;
    let mut elapsed = 0.0;
    let mut x = from.x;
    let mut y = from.y;
    for _ in 0..n {
        let (nx, ny) = (x + step_x, y + step_y);
        let leg = travel_time(
            field,
            vehicle,
            Point3::new(x, y, profile.z_climb_to),
            Point3::new(nx, ny, profile.z_dive_to),
            t_start + elapsed,
            n_sub,
        );
        let Some(secs) = leg.secs() else {
            return TravelTime::INFEASIBLE;
        };
        elapsed += secs;
        x = nx;
        y = ny;
    }
    TravelTime::from_secs(elapsed)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileFamilySpec {
    pub z_min: f64,
    pub z_max: f64,
    pub z_climb_to_max: f64,
    pub z_min_range: f64,
    pub n_climb_to_levels: usize,
    pub n_dive_to_levels: usize,
}

impl ProfileFamilySpec {
    pub fn validate(&self) -> Result<(), KinematicsError> {
        let bad = |msg: String| Err(KinematicsError::InvalidFamily(msg));
        let all_finite = [self.z_min, self.z_max, self.z_climb_to_max, self.z_min_range]
            .iter()
            .all(|v| v.is_finite());
        if !all_finite {
            return bad("depths must be finite".into());
        }
        if self.z_min < 0.0 {
            return bad(format!("z_min must be non-negative, got {}", self.z_min));
        }
        if !(self.z_min <= self.z_climb_to_max && self.z_climb_to_max <= self.z_max) {
            return bad(format!(
                "need z_min <= z_climb_to_max <= z_max, got {} / {} / {}",
                self.z_min, self.z_climb_to_max, self.z_max
            ));
        }
        if !(self.z_min_range > 0.0) {
            return bad(format!("z_min_range must be positive, got {}", self.z_min_range));
        }
        if self.z_min_range > self.z_max - self.z_min {
            return Err(KinematicsError::NoProfiles(self.z_min_range));
        }
        if self.n_climb_to_levels == 0 || self.n_dive_to_levels == 0 {
            return bad("level counts must be at least 1".into());
        }
        Ok(())
    }
}

fn levels(lo: f64, hi: f64, n: usize, single_at_hi: bool) -> Vec<f64> {
    match n {
        1 if single_at_hi => vec![hi],
        1 => vec![lo],
        _ => (0..n)
            .map(|i| if i == n - 1 { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
            .collect(),
    }
}

/// Cross product of climb-to and dive-to levels, keeping pairs whose
/// amplitude reaches `z_min_range`. Climb-to major, dive-to minor order.
///
/// A single climb-to level sits at `z_min`, a single dive-to level at `z_max`.
pub fn make_dive_profiles(spec: &ProfileFamilySpec) -> Result<Vec<DiveProfile>, KinematicsError> {
    spec.validate()?;
    let climbs = levels(spec.z_min, spec.z_climb_to_max, spec.n_climb_to_levels, false);
    let dives = levels(spec.z_min + spec.z_min_range, spec.z_max, spec.n_dive_to_levels, true);
    let mut out: Vec<DiveProfile> = Vec::new();
    for &c in &climbs {
        for &d in &dives {
            let p = DiveProfile::new(c, d);
            if p.amplitude() >= spec.z_min_range && !out.contains(&p) {
                out.push(p);
            }
        }
    }
    if out.is_empty() {
        return Err(KinematicsError::NoProfiles(spec.z_min_range));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CostMode {
    /// Least travel time over the family.
    Fastest,
    /// Largest amplitude whose time stays within `slack_factor` of the fastest.
    MaxAmplitude,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSelection {
    pub mode: CostMode,
    pub slack_factor: f64,
}

impl Default for ProfileSelection {
    fn default() -> Self {
        Self { mode: CostMode::Fastest, slack_factor: 1.1 }
    }
}

/// Index of the profile chosen from per-profile `times`, or `None` if every
/// profile is impassable. Ties prefer the larger amplitude, then list order.
pub fn select_profile(profiles: &[DiveProfile], times: &[TravelTime], selection: ProfileSelection) -> Option<usize> {
    let best = times.iter().filter_map(|t| t.secs()).fold(f64::INFINITY, f64::min);
    if !best.is_finite() {
        return None;
    }
    let limit = match selection.mode {
        CostMode::Fastest => best,
        CostMode::MaxAmplitude => best * selection.slack_factor,
    };
    let mut chosen: Option<usize> = None;
    for (i, t) in times.iter().enumerate() {
        let Some(s) = t.secs() else { continue };
        if s > limit {
            continue;
        }
        chosen = match chosen {
            None => Some(i),
            Some(j) => {
                let better = match selection.mode {
                    CostMode::Fastest => {
                        s < times[j].as_secs()
                            || (s == times[j].as_secs() && profiles[i].amplitude() > profiles[j].amplitude())
                    }
                    CostMode::MaxAmplitude => profiles[i].amplitude() > profiles[j].amplitude(),
                };
                Some(if better { i } else { j })
            }
        };
    }
    chosen
}

/// Glider leg cost: every profile of the family is simulated and one is
/// selected per [`ProfileSelection`].
#[derive(Debug, Clone)]
pub struct GliderCost<F> {
    pub field: F,
    pub vehicle: VehicleSpec,
    pub profiles: Vec<DiveProfile>,
    pub h: f64,
    pub n_sub: usize,
    pub selection: ProfileSelection,
    /// Evaluate the family on the rayon pool.
    pub parallel: bool,
}

impl<F: CurrentField> GliderCost<F> {
    pub fn new(field: F, vehicle: VehicleSpec, profiles: Vec<DiveProfile>, h: f64) -> Result<Self, KinematicsError> {
        if !(h > 0.0 && h <= 1.0) {
            return Err(KinematicsError::InvalidStep(h));
        }
        if profiles.is_empty() {
            return Err(KinematicsError::InvalidFamily("empty profile list".into()));
        }
        Ok(Self {
            field,
            vehicle,
            profiles,
            h,
            n_sub: DEFAULT_SUBSTEPS,
            selection: ProfileSelection::default(),
            parallel: false,
        })
    }

    pub fn with_selection(mut self, selection: ProfileSelection) -> Result<Self, KinematicsError> {
        if !(selection.slack_factor >= 1.0 && selection.slack_factor.is_finite()) {
            return Err(KinematicsError::InvalidSlack(selection.slack_factor));
        }
        self.selection = selection;
        Ok(self)
    }

    pub fn with_substeps(mut self, n_sub: usize) -> Self {
        self.n_sub = n_sub.max(1);
        self
    }

    pub fn with_parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    /// Per-profile travel times, in family order.
    pub fn profile_times(&self, from: Point2, to: Point2, t_start: f64) -> Vec<TravelTime> {
        let eval = |p: &DiveProfile| {
            glider_travel_time(&self.field, self.vehicle, from, to, *p, t_start, self.h, self.n_sub)
        };
        if self.parallel && self.profiles.len() > 1 {
            self.profiles.par_iter().map(eval).collect()
        } else {
            self.profiles.iter().map(eval).collect()
        }
    }

    /// Chosen profile and its time; the first profile with
    /// [`TravelTime::INFEASIBLE`] when every profile is impassable.
    pub fn optimal_profile_cost(&self, from: Point2, to: Point2, t_start: f64) -> (DiveProfile, TravelTime) {
        let times = self.profile_times(from, to, t_start);
        match select_profile(&self.profiles, &times, self.selection) {
            Some(i) => (self.profiles[i], times[i]),
            None => (self.profiles[0], TravelTime::INFEASIBLE),
        }
    }
}

/// Free-function form of [`GliderCost::optimal_profile_cost`].
#[allow(clippy::too_many_arguments)]
pub fn optimal_profile_cost<F: CurrentField>(
    field: &F,
    vehicle: VehicleSpec,
    from: Point2,
    to: Point2,
    t_start: f64,
    profiles: &[DiveProfile],
    h: f64,
    selection: ProfileSelection,
) -> Result<(DiveProfile, TravelTime), KinematicsError> {
    let cost = GliderCost::new(field, vehicle, profiles.to_vec(), h)?.with_selection(selection)?;
    Ok(cost.optimal_profile_cost(from, to, t_start))
}
