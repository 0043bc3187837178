//! Synthetic current fields for desk-scale experiments.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Axes, CurrentVector, FlowError, FlowGrid};
use crate::geometry::{Point2, Rect};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SynthKind {
    /// Constant `(u0, v0)` everywhere.
    Uniform,
    /// Time-periodic double gyre stretched over the horizontal extent.
    Gyre,
    /// Spatially uniform eastward tide `u = A sin(2 pi t / T + phase)`.
    TidalChannel,
}

impl fmt::Display for SynthKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SynthKind::Uniform => "uniform",
            SynthKind::Gyre => "gyre",
            SynthKind::TidalChannel => "tidal_channel",
        })
    }
}

impl FromStr for SynthKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "uniform" => Ok(SynthKind::Uniform),
            "gyre" | "double_gyre" => Ok(SynthKind::Gyre),
            "tidal_channel" | "tidal" => Ok(SynthKind::TidalChannel),
            other => Err(format!("unknown field kind '{other}' (uniform, gyre, tidal_channel)")),
        }
    }
}

/// Evenly spaced axis; a single node sits at `min`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl AxisSpec {
    pub const fn new(min: f64, max: f64, count: usize) -> Self {
        Self { min, max, count }
    }

    pub fn coords(&self, axis: &'static str) -> Result<Vec<f64>, FlowError> {
        match self.count {
            0 => Err(FlowError::EmptyAxis { axis }),
            1 => Ok(vec![self.min]),
            n => {
                if self.max <= self.min {
                    return Err(FlowError::InvalidParameter(format!("axis {axis}: max must exceed min")));
                }
                let step = (self.max - self.min) / (n - 1) as f64;
                Ok((0..n).map(|i| if i == n - 1 { self.max } else { self.min + step * i as f64 }).collect())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridDims {
    pub x: AxisSpec,
    pub y: AxisSpec,
    pub z: Vec<f64>,
    pub t: AxisSpec,
}

/// Horizontal rectangle whose nodes are written as fill values (land).
pub type LandRect = Rect;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthParams {
    pub u0: f64,
    pub v0: f64,
    /// Peak speed (m/s) of the gyre or tide.
    pub amplitude: f64,
    /// Period (s) of the gyre oscillation or the tide.
    pub period: f64,
    /// Gyre oscillation strength.
    pub epsilon: f64,
    /// Tidal phase (rad).
    pub phase: f64,
    /// e-folding depth (m) of the gyre; `None` keeps it depth independent.
    pub depth_scale: Option<f64>,
    /// Half-width (m/s) of uniform noise added to water nodes.
    pub noise: f64,
    pub seed: u64,
    pub fill_sentinel: f64,
    pub land: Vec<LandRect>,
}

impl Default for SynthParams {
    fn default() -> Self {
        Self {
            u0: 0.1,
            v0: 0.0,
            amplitude: 0.2,
            period: 43_200.0,
            epsilon: 0.25,
            phase: 0.0,
            depth_scale: None,
            noise: 0.0,
            seed: 0,
            fill_sentinel: -9999.0,
            land: Vec::new(),
        }
    }
}

pub fn synth_field(kind: SynthKind, params: &SynthParams, dims: &GridDims) -> Result<FlowGrid, FlowError> {
    if kind != SynthKind::Uniform && !(params.period > 0.0 && params.period.is_finite()) {
        return Err(FlowError::InvalidParameter(format!("period must be positive, got {}", params.period)));
    }
    if let Some(d) = params.depth_scale {
        if !(d > 0.0) {
            return Err(FlowError::InvalidParameter(format!("depth_scale must be positive, got {d}")));
        }
    }
    if params.noise < 0.0 || !params.noise.is_finite() {
        return Err(FlowError::InvalidParameter(format!("noise must be non-negative, got {}", params.noise)));
    }
    let axes = Axes {
        x: dims.x.coords("x")?,
        y: dims.y.coords("y")?,
        z: dims.z.clone(),
        t: dims.t.coords("t")?,
    };
    let (x0, lx) = (dims.x.min, (dims.x.max - dims.x.min).max(f64::MIN_POSITIVE));
    let (y0, ly) = (dims.y.min, (dims.y.max - dims.y.min).max(f64::MIN_POSITIVE));
    let omega = 2.0 * PI / params.period;
    let fill = params.fill_sentinel;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    FlowGrid::from_fn(axes, fill, |x, y, z, t| {
        if params.land.iter().any(|r| r.contains(Point2::new(x, y))) {
            return CurrentVector::new(fill, fill);
        }
        let mut c = match kind {
            SynthKind::Uniform => CurrentVector::new(params.u0, params.v0),
            SynthKind::TidalChannel => CurrentVector::new(params.amplitude * (omega * t + params.phase).sin(), 0.0),
            SynthKind::Gyre => {
                let gx = 2.0 * (x - x0) / lx;
                let gy = (y - y0) / ly;
                let s = params.epsilon * (omega * t).sin();
                let a = s;
                let b = 1.0 - 2.0 * s;
                let f = a * gx * gx + b * gx;
                let df = 2.0 * a * gx + b;
                let decay = params.depth_scale.map_or(1.0, |d| (-z / d).exp());
                let amp = params.amplitude * decay;
                CurrentVector::new(
                    -amp * (PI * f).sin() * (PI * gy).cos(),
                    amp * (2.0 * ly / lx) * (PI * f).cos() * (PI * gy).sin() * df,
                )
            }
        };
        if params.noise > 0.0 {
            c.u += rng.gen_range(-params.noise..=params.noise);
            c.v += rng.gen_range(-params.noise..=params.noise);
        }
        c
    })
}
