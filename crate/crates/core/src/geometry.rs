//! Planar and spatial primitives shared by the planner.

use serde::{Deserialize, Serialize};

/// Horizontal position in the local Cartesian frame (meters, x east, y north).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: Point2) -> f64 {
        (other.x - self.x).hypot(other.y - self.y)
    }

    pub fn lerp(self, other: Point2, r: f64) -> Point2 {
        Point2::new(self.x + (other.x - self.x) * r, self.y + (other.y - self.y) * r)
    }

    pub fn with_depth(self, z: f64) -> Point3 {
        Point3::new(self.x, self.y, z)
    }
}

/// Position with depth (meters, z positive down).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn distance(self, other: Point3) -> f64 {
        let dx = other.x - self.x;
        let dy = other.y - self.y;
        let dz = other.z - self.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }

    pub fn lerp(self, other: Point3, r: f64) -> Point3 {
        Point3::new(
            self.x + (other.x - self.x) * r,
            self.y + (other.y - self.y) * r,
            self.z + (other.z - self.z) * r,
        )
    }
}

/// Axis-aligned rectangle in the Cartesian frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Rect {
    pub const fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Self {
        Self { x_min, x_max, y_min, y_max }
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    /// Inclusive containment with a small absolute slack for lattice round-off.
    pub fn contains(&self, p: Point2) -> bool {
        const SLACK: f64 = 1e-6;
        p.x >= self.x_min - SLACK
            && p.x <= self.x_max + SLACK
            && p.y >= self.y_min - SLACK
            && p.y <= self.y_max + SLACK
    }
}

/// Simple (non-self-intersecting) polygon. Points on the boundary count as inside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polygon {
    pub vertices: Vec<Point2>,
}

impl Polygon {
    pub fn new(vertices: Vec<Point2>) -> Self {
        Self { vertices }
    }

    pub fn rectangle(r: Rect) -> Self {
        Self::new(vec![
            Point2::new(r.x_min, r.y_min),
            Point2::new(r.x_max, r.y_min),
            Point2::new(r.x_max, r.y_max),
            Point2::new(r.x_min, r.y_max),
        ])
    }

    pub fn contains(&self, p: Point2) -> bool {
        let n = self.vertices.len();
        if n < 3 {
            return false;
        }
        let mut inside = false;
        let mut j = n - 1;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[j];
            if on_segment(p, a, b) {
                return true;
            }
            if (a.y > p.y) != (b.y > p.y) {
                let x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if p.x < x_cross {
                    inside = !inside;
                }
            }
            j = i;
        }
        inside
    }
}

fn on_segment(p: Point2, a: Point2, b: Point2) -> bool {
    const EPS: f64 = 1e-9;
    let cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    let scale = a.distance(b).max(1.0);
    if cross.abs() > EPS * scale {
        return false;
    }
    p.x >= a.x.min(b.x) - EPS
        && p.x <= a.x.max(b.x) + EPS
        && p.y >= a.y.min(b.y) - EPS
        && p.y <= a.y.max(b.y) + EPS
}

/// Points along `a -> b` spaced at most `step` apart, endpoints included.
pub fn sample_segment(a: Point2, b: Point2, step: f64) -> impl Iterator<Item = Point2> {
    let len = a.distance(b);
    let n = if step > 0.0 && len > 0.0 { (len / step).ceil().max(1.0) as usize } else { 1 };
    (0..=n).map(move |k| a.lerp(b, k as f64 / n as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polygon_contains_interior_and_boundary() {
        let sq = Polygon::rectangle(Rect::new(0.0, 10.0, 0.0, 10.0));
        assert!(sq.contains(Point2::new(5.0, 5.0)));
        assert!(sq.contains(Point2::new(0.0, 5.0)));
        assert!(sq.contains(Point2::new(10.0, 10.0)));
        assert!(!sq.contains(Point2::new(10.5, 5.0)));
        assert!(!sq.contains(Point2::new(-1.0, -1.0)));
    }

    #[test]
    fn concave_polygon() {
        // U shape open to the north
        let u = Polygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(3.0, 0.0),
            Point2::new(3.0, 3.0),
            Point2::new(2.0, 3.0),
            Point2::new(2.0, 1.0),
            Point2::new(1.0, 1.0),
            Point2::new(1.0, 3.0),
            Point2::new(0.0, 3.0),
        ]);
        assert!(u.contains(Point2::new(0.5, 2.0)));
        assert!(!u.contains(Point2::new(1.5, 2.0)));
        assert!(u.contains(Point2::new(1.5, 0.5)));
    }

    #[test]
    fn segment_sampling_includes_endpoints() {
        let pts: Vec<_> = sample_segment(Point2::new(0.0, 0.0), Point2::new(10.0, 0.0), 2.5).collect();
        assert_eq!(pts.len(), 5);
        assert_eq!(pts[0], Point2::new(0.0, 0.0));
        assert_eq!(pts[4], Point2::new(10.0, 0.0));
    }
}
