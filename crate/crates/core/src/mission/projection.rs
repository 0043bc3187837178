//! Local equirectangular projection about a reference point.

use serde::{Deserialize, Serialize};

use crate::geometry::Point2;

/// Mean Earth radius (m).
pub const EARTH_RADIUS: f64 = 6_371_000.0;

/// Geographic position in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeoPoint {
    pub lat: f64,
    pub lon: f64,
}

impl GeoPoint {
    pub const fn new(lat: f64, lon: f64) -> Self {
        Self { lat, lon }
    }
}

pub fn project(geo: GeoPoint, origin: GeoPoint) -> Point2 {
    let k = EARTH_RADIUS * std::f64::consts::PI / 180.0;
    let x = k * (geo.lon - origin.lon) * origin.lat.to_radians().cos();
    let y = k * (geo.lat - origin.lat);
    Point2::new(x, y)
}

pub fn unproject(p: Point2, origin: GeoPoint) -> GeoPoint {
    let k = EARTH_RADIUS * std::f64::consts::PI / 180.0;
    let lat = origin.lat + p.y / k;
    let lon = origin.lon + p.x / (k * origin.lat.to_radians().cos());
    GeoPoint::new(lat, lon)
}
