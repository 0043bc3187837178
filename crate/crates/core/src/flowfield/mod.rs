//! Gridded ocean-current fields and point sampling.
//!
//! A [`FlowGrid`] stores the horizontal current components `u` (east) and `v`
//! (north) on a rectilinear `(t, z, y, x)` lattice. Queries go through a
//! separable pipeline: horizontal interpolation on every depth layer the
//! vertical stencil needs, then a 1-D pass along depth, then a 1-D pass along
//! time.

mod archive;
mod interp;
mod sample;
mod synth;

pub use archive::{load_flow_grid, read_flow_grid, save_flow_grid, write_flow_grid, Encoding};
pub use interp::{interp_1d, interp_xy, AxisMethod, InterpScheme, Layer, XyMethod};
pub use sample::{sample, CurrentField, FlowModel};
pub use synth::{synth_field, AxisSpec, GridDims, LandRect, SynthKind, SynthParams};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Horizontal current vector (m/s).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CurrentVector {
    pub u: f64,
    pub v: f64,
}

impl CurrentVector {
    pub const ZERO: CurrentVector = CurrentVector { u: 0.0, v: 0.0 };

    pub const fn new(u: f64, v: f64) -> Self {
        Self { u, v }
    }

    pub fn magnitude(&self) -> f64 {
        self.u.hypot(self.v)
    }
}

#[derive(Debug, Error)]
pub enum FlowError {
    #[error("i/o error on {path}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed flow archive: {0}")]
    Malformed(String),
    #[error("axis {axis}: axis must contain at least one coordinate")]
    EmptyAxis { axis: &'static str },
    #[error("axis {axis}: axis not strictly ascending at index {index}")]
    NotAscending { axis: &'static str, index: usize },
    #[error("axis {axis}: non-finite coordinate at index {index}")]
    NonFiniteAxis { axis: &'static str, index: usize },
    #[error("field {field}: shape mismatch, expected {expected:?}, found {found:?}")]
    ShapeMismatch {
        field: &'static str,
        expected: Vec<usize>,
        found: Vec<usize>,
    },
    #[error("invalid synthetic field parameter: {0}")]
    InvalidParameter(String),
}

/// Why a point query could not be answered.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SampleError {
    #[error("query ({x}, {y}) outside the horizontal grid bounds")]
    OutOfDomain { x: f64, y: f64 },
    #[error("land contact near ({x}, {y})")]
    LandContact { x: f64, y: f64 },
}

/// The four coordinate axes of a flow grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axes {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: Vec<f64>,
    pub t: Vec<f64>,
}

impl Axes {
    pub fn shape(&self) -> [usize; 4] {
        [self.t.len(), self.z.len(), self.y.len(), self.x.len()]
    }

    fn validate(&self) -> Result<(), FlowError> {
        for (axis, coords) in [("x", &self.x), ("y", &self.y), ("z", &self.z), ("t", &self.t)] {
            if coords.is_empty() {
                return Err(FlowError::EmptyAxis { axis });
            }
            if let Some(index) = coords.iter().position(|c| !c.is_finite()) {
                return Err(FlowError::NonFiniteAxis { axis, index });
            }
            if let Some(w) = coords.windows(2).position(|w| w[1] <= w[0]) {
                return Err(FlowError::NotAscending { axis, index: w + 1 });
            }
        }
        Ok(())
    }
}

/// Immutable 4-D current field with a land mask.
///
/// Node values live in row-major `[t][z][y][x]` order. A node equal to the fill
/// sentinel is invalid; a horizontal cell is land when every `(t, z)` node of
/// `u` or of `v` at that `(y, x)` is a fill value.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowGrid {
    axes: Axes,
    u: Vec<f64>,
    v: Vec<f64>,
    fill: f64,
    land: Vec<bool>,
    has_fill: bool,
}

impl FlowGrid {
    pub fn new(axes: Axes, u: Vec<f64>, v: Vec<f64>, fill_sentinel: f64) -> Result<Self, FlowError> {
        axes.validate()?;
        if !fill_sentinel.is_finite() {
            return Err(FlowError::Malformed("fill_sentinel must be finite".into()));
        }
        let shape = axes.shape();
        let n: usize = shape.iter().product();
        for (field, data) in [("u", &u), ("v", &v)] {
            if data.len() != n {
                return Err(FlowError::ShapeMismatch {
                    field,
                    expected: vec![n],
                    found: vec![data.len()],
                });
            }
            if let Some(i) = data.iter().position(|x| !x.is_finite()) {
                return Err(FlowError::Malformed(format!("field {field}: non-finite value at flat index {i}")));
            }
        }
        let (ny, nx) = (shape[2], shape[3]);
        let plane = ny * nx;
        let layers = shape[0] * shape[1];
        let mut land = vec![false; plane];
        let mut has_fill = false;
        for (cell, is_land) in land.iter_mut().enumerate() {
            let mut all_u = true;
            let mut all_v = true;
            for layer in 0..layers {
                let idx = layer * plane + cell;
                let fu = u[idx] == fill_sentinel;
                let fv = v[idx] == fill_sentinel;
                has_fill |= fu || fv;
                all_u &= fu;
                all_v &= fv;
            }
            *is_land = all_u || all_v;
        }
        Ok(Self { axes, u, v, fill: fill_sentinel, land, has_fill })
    }

    /// Fills every node from `f(x, y, z, t)`.
    pub fn from_fn(
        axes: Axes,
        fill_sentinel: f64,
        mut f: impl FnMut(f64, f64, f64, f64) -> CurrentVector,
    ) -> Result<Self, FlowError> {
        let n: usize = axes.shape().iter().product();
        let mut u = Vec::with_capacity(n);
        let mut v = Vec::with_capacity(n);
        for &t in &axes.t {
            for &z in &axes.z {
                for &y in &axes.y {
                    for &x in &axes.x {
                        let c = f(x, y, z, t);
                        u.push(c.u);
                        v.push(c.v);
                    }
                }
            }
        }
        Self::new(axes, u, v, fill_sentinel)
    }

    pub fn axes(&self) -> &Axes {
        &self.axes
    }

    pub fn x(&self) -> &[f64] {
        &self.axes.x
    }

    pub fn y(&self) -> &[f64] {
        &self.axes.y
    }

    pub fn z(&self) -> &[f64] {
        &self.axes.z
    }

    pub fn t(&self) -> &[f64] {
        &self.axes.t
    }

    pub fn shape(&self) -> [usize; 4] {
        self.axes.shape()
    }

    pub fn fill_sentinel(&self) -> f64 {
        self.fill
    }

    pub fn u_values(&self) -> &[f64] {
        &self.u
    }

    pub fn v_values(&self) -> &[f64] {
        &self.v
    }

    pub fn has_fill(&self) -> bool {
        self.has_fill
    }

    pub fn index(&self, it: usize, iz: usize, iy: usize, ix: usize) -> usize {
        let [_, nz, ny, nx] = self.shape();
        ((it * nz + iz) * ny + iy) * nx + ix
    }

    pub fn node(&self, it: usize, iz: usize, iy: usize, ix: usize) -> CurrentVector {
        let i = self.index(it, iz, iy, ix);
        CurrentVector::new(self.u[i], self.v[i])
    }

    pub fn is_land(&self, iy: usize, ix: usize) -> bool {
        self.land[iy * self.axes.x.len() + ix]
    }

    /// Land flags in `[y][x]` order.
    pub fn land_mask(&self) -> &[bool] {
        &self.land
    }

    /// Horizontal bounding box of the grid.
    pub fn bounds(&self) -> crate::geometry::Rect {
        let x = &self.axes.x;
        let y = &self.axes.y;
        crate::geometry::Rect::new(x[0], x[x.len() - 1], y[0], y[y.len() - 1])
    }

    /// 2-D slice of one component at `(it, iz)`.
    pub fn layer(&self, component: Component, it: usize, iz: usize) -> Layer<'_> {
        let plane = self.axes.x.len() * self.axes.y.len();
        let start = self.index(it, iz, 0, 0);
        let data = match component {
            Component::U => &self.u,
            Component::V => &self.v,
        };
        Layer::new(&self.axes.x, &self.axes.y, &data[start..start + plane], self.fill)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    U,
    V,
}
