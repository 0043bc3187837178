use serde::Serialize;

use super::PlannedPath;
use crate::flowfield::CurrentField;

/// Current seen at the start of a leg at one depth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LegSample {
    pub depth: f64,
    /// |v_c| (m/s).
    pub magnitude: f64,
    /// Signed angle (degrees) from the leg direction to the current,
    /// counter-clockwise positive; 0 when there is no current.
    pub psi_deg: f64,
    pub zero_current: bool,
    /// Current faster than the vehicle and pointing within 90 degrees of the leg.
    pub follows_current: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LegReport {
    pub leg: usize,
    pub depart: f64,
    /// `None` where the field cannot be sampled (land or outside the grid).
    pub samples: Vec<Option<LegSample>>,
}

/// Current magnitude and angle at the departure point and time of every leg.
/// An empty `depths` list samples each leg at the middle of its dive band
/// (the surface when the leg has no profile).
pub fn path_report<F: CurrentField + ?Sized>(path: &PlannedPath, field: &F, speed: f64, depths: &[f64]) -> Vec<LegReport> {
    let mut out = Vec::with_capacity(path.profiles.len());
    for (i, w) in path.waypoints.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        let depart = path.arrival_times[i];
        let len = a.distance(b);
        let (dx, dy) = if len > 0.0 { ((b.x - a.x) / len, (b.y - a.y) / len) } else { (0.0, 0.0) };
        let own: [f64; 1];
        let zs: &[f64] = if depths.is_empty() {
            own = [path.profiles[i].map_or(0.0, |p| 0.5 * (p.z_climb_to + p.z_dive_to))];
            &own
        } else {
            depths
        };
        let samples = zs
            .iter()
            .map(|&z| {
                let c = field.current(a.x, a.y, z, depart).ok()?;
                let magnitude = c.magnitude();
                let zero_current = magnitude == 0.0;
                let psi_deg = if zero_current {
                    0.0
                } else {
                    (dx * c.v - dy * c.u).atan2(dx * c.u + dy * c.v).to_degrees()
                };
                let follows_current = magnitude > speed && psi_deg.abs() < 90.0;
                Some(LegSample { depth: z, magnitude, psi_deg, zero_current, follows_current })
            })
            .collect();
        out.push(LegReport { leg: i, depart, samples });
    }
    out
}
