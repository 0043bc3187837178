use std::fmt;

use serde::{Deserialize, Serialize};

use super::GraphError;
use crate::flowfield::FlowGrid;
use crate::geometry::{sample_segment, Point2, Polygon, Rect};

/// Lattice connectivity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Neighborhood {
    /// King moves.
    Eight,
    /// King moves plus knight moves.
    Sixteen,
}

impl Neighborhood {
    pub fn count(self) -> usize {
        match self {
            Neighborhood::Eight => 8,
            Neighborhood::Sixteen => 16,
        }
    }

    fn offsets(self) -> &'static [(i64, i64)] {
        const OFFSETS: [(i64, i64); 16] = [
            (1, 0),
            (1, 1),
            (0, 1),
            (-1, 1),
            (-1, 0),
            (-1, -1),
            (0, -1),
            (1, -1),
            (2, 1),
            (1, 2),
            (-1, 2),
            (-2, 1),
            (-2, -1),
            (-1, -2),
            (1, -2),
            (2, -1),
        ];
        &OFFSETS[..self.count()]
    }
}

impl TryFrom<u8> for Neighborhood {
    type Error = String;

    fn try_from(n: u8) -> Result<Self, Self::Error> {
        match n {
            8 => Ok(Neighborhood::Eight),
            16 => Ok(Neighborhood::Sixteen),
            other => Err(format!("neighborhood must be 8 or 16, got {other}")),
        }
    }
}

impl From<Neighborhood> for u8 {
    fn from(n: Neighborhood) -> u8 {
        n.count() as u8
    }
}

impl fmt::Display for Neighborhood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.count())
    }
}

/// Land cells of a flow grid. A point is blocked when it lies outside the
/// grid or when any corner node of the cell containing it is land.
#[derive(Debug, Clone)]
pub struct LandMask {
    x: Vec<f64>,
    y: Vec<f64>,
    land: Vec<bool>,
}

impl LandMask {
    pub fn from_grid(grid: &FlowGrid) -> Self {
        Self { x: grid.x().to_vec(), y: grid.y().to_vec(), land: grid.land_mask().to_vec() }
    }

    pub fn bounds(&self) -> Rect {
        Rect::new(self.x[0], self.x[self.x.len() - 1], self.y[0], self.y[self.y.len() - 1])
    }

    pub fn is_blocked(&self, p: Point2) -> bool {
        if !self.bounds().contains(p) {
            return true;
        }
        let nx = self.x.len();
        let (x0, x1) = cell(&self.x, p.x);
        let (y0, y1) = cell(&self.y, p.y);
        [(y0, x0), (y0, x1), (y1, x0), (y1, x1)]
            .iter()
            .any(|&(iy, ix)| self.land[iy * nx + ix])
    }
}

fn cell(knots: &[f64], q: f64) -> (usize, usize) {
    let n = knots.len();
    if n == 1 {
        return (0, 0);
    }
    let i = knots.partition_point(|&k| k <= q).clamp(1, n - 1) - 1;
    (i, i + 1)
}

/// Impassable geometry: land from a flow grid plus restricted polygons.
#[derive(Debug, Clone, Default)]
pub struct Blocked {
    pub land: Option<LandMask>,
    pub polygons: Vec<Polygon>,
}

impl Blocked {
    pub fn new(land: Option<LandMask>, polygons: Vec<Polygon>) -> Self {
        Self { land, polygons }
    }

    pub fn is_blocked(&self, p: Point2) -> bool {
        self.land.as_ref().is_some_and(|m| m.is_blocked(p)) || self.polygons.iter().any(|poly| poly.contains(p))
    }

    /// Whether any sample of `a -> b` taken every `step` meters is blocked.
    pub fn blocks_segment(&self, a: Point2, b: Point2, step: f64) -> bool {
        sample_segment(a, b, step).any(|p| self.is_blocked(p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub to: usize,
    pub length: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Lattice {
    origin: Point2,
    spacing: f64,
    nx: usize,
    ny: usize,
}

/// Directed graph over the mission region. Lattice vertices come first in
/// row-major order; inserted terminals follow.
#[derive(Debug, Clone)]
pub struct SearchGraph {
    vertices: Vec<Point2>,
    blocked: Vec<bool>,
    adjacency: Vec<Vec<Edge>>,
    lattice: Option<Lattice>,
    region: Option<Rect>,
    sample_step: f64,
}

/// Lattice over `region` with directed edges to each vertex's neighborhood.
/// Edges touching blocked geometry (sampled every `spacing / 4`) are dropped;
/// blocked vertices stay in the graph without edges.
pub fn build_graph(
    region: Rect,
    spacing: f64,
    neighborhood: Neighborhood,
    blocked: &Blocked,
) -> Result<SearchGraph, GraphError> {
    if !(spacing > 0.0 && spacing.is_finite()) {
        return Err(GraphError::InvalidSpacing(spacing));
    }
    let finite = [region.x_min, region.x_max, region.y_min, region.y_max].iter().all(|v| v.is_finite());
    if !finite || region.width() < 0.0 || region.height() < 0.0 || (region.width() == 0.0 && region.height() == 0.0)
    {
        return Err(GraphError::InvalidRegion);
    }
    let nx = (region.width() / spacing + 1e-9).floor() as usize + 1;
    let ny = (region.height() / spacing + 1e-9).floor() as usize + 1;
    let origin = Point2::new(region.x_min, region.y_min);
    let mut vertices = Vec::with_capacity(nx * ny);
    for iy in 0..ny {
        for ix in 0..nx {
            vertices.push(Point2::new(origin.x + ix as f64 * spacing, origin.y + iy as f64 * spacing));
        }
    }
    let is_blocked: Vec<bool> = vertices.iter().map(|&p| blocked.is_blocked(p)).collect();
    let step = spacing / 4.0;
    let mut adjacency = vec![Vec::new(); vertices.len()];
    let mut edge_count = 0;
    for iy in 0..ny {
        for ix in 0..nx {
            let a = iy * nx + ix;
            if is_blocked[a] {
                continue;
            }
            for &(dx, dy) in neighborhood.offsets() {
                let (jx, jy) = (ix as i64 + dx, iy as i64 + dy);
                if jx < 0 || jy < 0 || jx >= nx as i64 || jy >= ny as i64 {
                    continue;
                }
                let b = jy as usize * nx + jx as usize;
                if is_blocked[b] || blocked.blocks_segment(vertices[a], vertices[b], step) {
                    continue;
                }
                adjacency[a].push(Edge { to: b, length: vertices[a].distance(vertices[b]) });
                edge_count += 1;
            }
        }
    }
    if edge_count == 0 {
        return Err(GraphError::Empty);
    }
    Ok(SearchGraph {
        vertices,
        blocked: is_blocked,
        adjacency,
        lattice: Some(Lattice { origin, spacing, nx, ny }),
        region: Some(region),
        sample_step: step,
    })
}

impl SearchGraph {
    /// Arbitrary directed graph; edge lengths are Euclidean.
    pub fn from_edges(vertices: Vec<Point2>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let n = vertices.len();
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(GraphError::VertexOutOfRange(a.max(b)));
            }
            adjacency[a].push(Edge { to: b, length: vertices[a].distance(vertices[b]) });
        }
        Ok(Self {
            blocked: vec![false; n],
            vertices,
            adjacency,
            lattice: None,
            region: None,
            sample_step: f64::INFINITY,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i]
    }

    pub fn is_vertex_blocked(&self, i: usize) -> bool {
        self.blocked[i]
    }

    pub fn edges(&self, from: usize) -> &[Edge] {
        &self.adjacency[from]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].iter().any(|e| e.to == b)
    }

    /// Obstacle sampling distance used during construction.
    pub fn sample_step(&self) -> f64 {
        self.sample_step
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        let length = self.vertices[a].distance(self.vertices[b]);
        self.adjacency[a].push(Edge { to: b, length });
    }

    /// Lattice vertex at `(ix, iy)`.
    pub fn lattice_index(&self, ix: usize, iy: usize) -> Option<usize> {
        let l = self.lattice?;
        (ix < l.nx && iy < l.ny).then_some(iy * l.nx + ix)
    }

    /// Inserts `start` and `goal` and links each to its `k` nearest unblocked
    /// lattice vertices in both directions, dropping links through blocked
    /// geometry. A terminal on a lattice vertex reuses it.
    pub fn connect_terminals(
        &mut self,
        start: Point2,
        goal: Point2,
        k: usize,
        blocked: &Blocked,
    ) -> Result<(usize, usize), GraphError> {
        let s = self.insert_terminal(start, "start", k, blocked)?;
        let g = self.insert_terminal(goal, "goal", k, blocked)?;
        Ok((s, g))
    }

    fn insert_terminal(&mut self, p: Point2, name: &'static str, k: usize, blocked: &Blocked) -> Result<usize, GraphError> {
        let lattice = self.lattice.ok_or(GraphError::NotALattice)?;
        if !self.region.is_some_and(|r| r.contains(p)) {
            return Err(GraphError::TerminalOutsideRegion(name));
        }
        if blocked.is_blocked(p) {
            return Err(GraphError::TerminalBlocked(name));
        }
        let lattice_len = lattice.nx * lattice.ny;
        let fx = ((p.x - lattice.origin.x) / lattice.spacing).round();
        let fy = ((p.y - lattice.origin.y) / lattice.spacing).round();
        if fx >= 0.0 && fy >= 0.0 && (fx as usize) < lattice.nx && (fy as usize) < lattice.ny {
            let i = fy as usize * lattice.nx + fx as usize;
            if self.vertices[i].distance(p) <= 1e-6 {
                if self.adjacency[i].is_empty() {
                    return Err(GraphError::TerminalUnreachable(name));
                }
                return Ok(i);
            }
        }
        let mut candidates: Vec<(f64, usize)> = (0..lattice_len)
            .filter(|&i| !self.blocked[i])
            .map(|i| (self.vertices[i].distance(p), i))
            .collect();
        candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        candidates.truncate(k);
        let links: Vec<usize> = candidates
            .into_iter()
            .filter(|&(_, i)| !blocked.blocks_segment(p, self.vertices[i], self.sample_step))
            .map(|(_, i)| i)
            .collect();
        if links.is_empty() {
            return Err(GraphError::TerminalUnreachable(name));
        }
        let t = self.vertices.len();
        self.vertices.push(p);
        self.blocked.push(false);
        self.adjacency.push(Vec::new());
        for i in links {
            self.add_edge(t, i);
            self.add_edge(i, t);
        }
        Ok(t)
    }
}
