//! Interpolation kernels.
//!
//! Nearest, linear and cubic kernels are linear in the node values, so they are
//! expressed as a small stencil of `(index, weight)` pairs and combined as a
//! tensor product in 2-D. The cubic kernel is Catmull-Rom generalised to
//! non-uniform knots: a cubic Hermite segment whose knot slopes are central
//! differences `(y[i+1] - y[i-1]) / (x[i+1] - x[i-1])`, one-sided at the ends.
//! Akima is non-linear in the values and is evaluated directly.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::SampleError;

/// Horizontal (per depth layer) interpolation method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum XyMethod {
    Nearest,
    Bilinear,
    Bicubic,
}

/// 1-D interpolation method for the depth and time axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisMethod {
    Nearest,
    Linear,
    Cubic,
    Akima,
}

impl AxisMethod {
    /// Method actually applied on an axis with `n` knots: cubic and Akima need
    /// three knots, linear needs two.
    pub fn degrade(self, n: usize) -> AxisMethod {
        match (self, n) {
            (_, 0 | 1) => AxisMethod::Nearest,
            (AxisMethod::Cubic | AxisMethod::Akima, 2) => AxisMethod::Linear,
            (m, _) => m,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InterpScheme {
    pub xy: XyMethod,
    pub z: AxisMethod,
    pub t: AxisMethod,
}

impl Default for InterpScheme {
    fn default() -> Self {
        Self { xy: XyMethod::Bilinear, z: AxisMethod::Linear, t: AxisMethod::Linear }
    }
}

impl fmt::Display for XyMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            XyMethod::Nearest => "nearest",
            XyMethod::Bilinear => "bilinear",
            XyMethod::Bicubic => "bicubic",
        })
    }
}

impl fmt::Display for AxisMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxisMethod::Nearest => "nearest",
            AxisMethod::Linear => "linear",
            AxisMethod::Cubic => "cubic",
            AxisMethod::Akima => "akima",
        })
    }
}

impl fmt::Display for InterpScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.xy, self.z, self.t)
    }
}

impl FromStr for XyMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "nearest" => Ok(XyMethod::Nearest),
            "bilinear" => Ok(XyMethod::Bilinear),
            "bicubic" => Ok(XyMethod::Bicubic),
            other => Err(format!("unknown xy method '{other}' (nearest, bilinear, bicubic)")),
        }
    }
}

impl FromStr for AxisMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "nearest" => Ok(AxisMethod::Nearest),
            "linear" => Ok(AxisMethod::Linear),
            "cubic" => Ok(AxisMethod::Cubic),
            "akima" => Ok(AxisMethod::Akima),
            other => Err(format!("unknown axis method '{other}' (nearest, linear, cubic, akima)")),
        }
    }
}

/// `xy[,z[,t]]`; a missing t method copies z.
impl FromStr for InterpScheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        let mut scheme = InterpScheme::default();
        match parts.as_slice() {
            [xy] => scheme.xy = xy.parse()?,
            [xy, z] => {
                scheme.xy = xy.parse()?;
                scheme.z = z.parse()?;
                scheme.t = scheme.z;
            }
            [xy, z, t] => {
                scheme.xy = xy.parse()?;
                scheme.z = z.parse()?;
                scheme.t = t.parse()?;
            }
            _ => return Err(format!("invalid scheme '{s}', expected xy[,z[,t]]")),
        }
        Ok(scheme)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum InterpError {
    #[error("no knots to interpolate")]
    EmptyKnots,
    #[error("{knots} knots but {values} values")]
    LengthMismatch { knots: usize, values: usize },
}

/// Up to four `(index, weight)` pairs along one axis.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Stencil {
    pub idx: [usize; 4],
    pub w: [f64; 4],
    pub len: usize,
}

impl Stencil {
    fn single(i: usize) -> Self {
        Self { idx: [i, 0, 0, 0], w: [1.0, 0.0, 0.0, 0.0], len: 1 }
    }

    fn push(&mut self, i: usize, w: f64) {
        if let Some(k) = self.idx[..self.len].iter().position(|&j| j == i) {
            self.w[k] += w;
        } else {
            self.idx[self.len] = i;
            self.w[self.len] = w;
            self.len += 1;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.idx[..self.len].iter().copied().zip(self.w[..self.len].iter().copied())
    }
}

/// Interval containing `q` (clamped): `knots[i] <= q < knots[i + 1]` with
/// `r = (q - knots[i]) / (knots[i + 1] - knots[i])`. The last knot maps to
/// `(n - 1, 0.0)` so that knots are hit exactly.
pub(crate) fn locate(knots: &[f64], q: f64) -> (usize, f64) {
    let n = knots.len();
    if n == 1 || q <= knots[0] {
        return (0, 0.0);
    }
    if q >= knots[n - 1] {
        return (n - 1, 0.0);
    }
    let i = knots.partition_point(|&k| k <= q) - 1;
    let r = (q - knots[i]) / (knots[i + 1] - knots[i]);
    (i, r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Kernel {
    Nearest,
    Linear,
    CatmullRom,
}

pub(crate) fn stencil(knots: &[f64], q: f64, kernel: Kernel) -> Stencil {
    let n = knots.len();
    let (i, r) = locate(knots, q);
    if r == 0.0 {
        return Stencil::single(i);
    }
    match kernel {
        Kernel::Nearest => Stencil::single(if r < 0.5 { i } else { i + 1 }),
        Kernel::Linear => Stencil { idx: [i, i + 1, 0, 0], w: [1.0 - r, r, 0.0, 0.0], len: 2 },
        Kernel::CatmullRom => {
            let dx = knots[i + 1] - knots[i];
            let r2 = r * r;
            let r3 = r2 * r;
            let h00 = 2.0 * r3 - 3.0 * r2 + 1.0;
            let h10 = r3 - 2.0 * r2 + r;
            let h01 = -2.0 * r3 + 3.0 * r2;
            let h11 = r3 - r2;
            let a = dx * h10;
            let b = dx * h11;
            let mut s = Stencil { idx: [0; 4], w: [0.0; 4], len: 0 };
            s.push(i, h00);
            s.push(i + 1, h01);
            // slope at knot i
            if i > 0 {
                let c = a / (knots[i + 1] - knots[i - 1]);
                s.push(i - 1, -c);
                s.push(i + 1, c);
            } else {
                let c = a / dx;
                s.push(i, -c);
                s.push(i + 1, c);
            }
            // slope at knot i + 1
            if i + 2 < n {
                let c = b / (knots[i + 2] - knots[i]);
                s.push(i, -c);
                s.push(i + 2, c);
            } else {
                let c = b / dx;
                s.push(i, -c);
                s.push(i + 1, c);
            }
            s
        }
    }
}

/// Knot range `[lo, hi)` that an interpolation of `q` with `method` reads.
pub(crate) fn window(knots: &[f64], q: f64, method: AxisMethod) -> (usize, usize) {
    let n = knots.len();
    let (i, r) = locate(knots, q);
    if r == 0.0 {
        return (i, i + 1);
    }
    match method.degrade(n) {
        AxisMethod::Nearest => {
            let j = if r < 0.5 { i } else { i + 1 };
            (j, j + 1)
        }
        AxisMethod::Linear => (i, i + 2),
        AxisMethod::Cubic => (i.saturating_sub(1), (i + 3).min(n)),
        AxisMethod::Akima => (i.saturating_sub(2), (i + 4).min(n)),
    }
}

/// 1-D interpolation at `q`, clamped to `[knots.first, knots.last]`.
pub fn interp_1d(knots: &[f64], values: &[f64], q: f64, method: AxisMethod) -> Result<f64, InterpError> {
    if knots.is_empty() {
        return Err(InterpError::EmptyKnots);
    }
    if knots.len() != values.len() {
        return Err(InterpError::LengthMismatch { knots: knots.len(), values: values.len() });
    }
    Ok(interp_1d_unchecked(knots, values, q, method))
}

pub(crate) fn interp_1d_unchecked(knots: &[f64], values: &[f64], q: f64, method: AxisMethod) -> f64 {
    let kernel = match method.degrade(knots.len()) {
        AxisMethod::Nearest => Kernel::Nearest,
        AxisMethod::Linear => Kernel::Linear,
        AxisMethod::Cubic => Kernel::CatmullRom,
        AxisMethod::Akima => return akima(knots, values, q),
    };
    stencil(knots, q, kernel).iter().map(|(i, w)| w * values[i]).sum()
}

/// Akima (1970) local spline; `knots.len() >= 3`.
///
/// Segment slopes are extended by two on each side with
/// `m[-1] = 2 m[0] - m[1]`, `m[-2] = 2 m[-1] - m[0]` (mirrored at the right end),
/// and the knot slope is `(|m[i+1]-m[i]| m[i-1] + |m[i-1]-m[i-2]| m[i]) / (sum of weights)`,
/// falling back to the mean of `m[i-1]` and `m[i]` when both weights vanish.
fn akima(x: &[f64], y: &[f64], q: f64) -> f64 {
    let n = x.len();
    debug_assert!(n >= 3);
    let (i, r) = locate(x, q);
    if r == 0.0 {
        return y[i];
    }
    let last = n as isize - 2;
    let raw = |k: isize| {
        let k = k as usize;
        (y[k + 1] - y[k]) / (x[k + 1] - x[k])
    };
    let seg = |k: isize| -> f64 {
        if (0..=last).contains(&k) {
            raw(k)
        } else if k == -1 {
            2.0 * raw(0) - raw(1)
        } else if k == -2 {
            let m_1 = 2.0 * raw(0) - raw(1);
            2.0 * m_1 - raw(0)
        } else if k == last + 1 {
            2.0 * raw(last) - raw(last - 1)
        } else {
            let m_n = 2.0 * raw(last) - raw(last - 1);
            2.0 * m_n - raw(last)
        }
    };
    let tangent = |j: isize| {
        let (m0, m1, m2, m3) = (seg(j - 2), seg(j - 1), seg(j), seg(j + 1));
        let w1 = (m3 - m2).abs();
        let w2 = (m1 - m0).abs();
        if w1 + w2 == 0.0 {
            0.5 * (m1 + m2)
        } else {
            (w1 * m1 + w2 * m2) / (w1 + w2)
        }
    };
    let ii = i as isize;
    let (t0, t1) = (tangent(ii), tangent(ii + 1));
    let dx = x[i + 1] - x[i];
    let r2 = r * r;
    let r3 = r2 * r;
    let h00 = 2.0 * r3 - 3.0 * r2 + 1.0;
    let h10 = r3 - 2.0 * r2 + r;
    let h01 = -2.0 * r3 + 3.0 * r2;
    let h11 = r3 - r2;
    h00 * y[i] + h01 * y[i + 1] + dx * (h10 * t0 + h11 * t1)
}

/// Read-only 2-D slice `[y][x]` of one current component.
#[derive(Debug, Clone, Copy)]
pub struct Layer<'a> {
    pub x: &'a [f64],
    pub y: &'a [f64],
    pub values: &'a [f64],
    pub fill: f64,
}

impl<'a> Layer<'a> {
    pub fn new(x: &'a [f64], y: &'a [f64], values: &'a [f64], fill: f64) -> Self {
        assert_eq!(values.len(), x.len() * y.len(), "layer size must be |x|*|y|");
        Self { x, y, values, fill }
    }
}

/// Out-of-bounds slack (m) tolerated before a query counts as outside the grid.
const BOUNDS_SLACK: f64 = 1e-6;

pub(crate) fn xy_kernel(method: XyMethod) -> Kernel {
    match method {
        XyMethod::Nearest => Kernel::Nearest,
        XyMethod::Bilinear => Kernel::Linear,
        XyMethod::Bicubic => Kernel::CatmullRom,
    }
}

pub(crate) fn xy_stencils(
    xs: &[f64],
    ys: &[f64],
    x: f64,
    y: f64,
    method: XyMethod,
) -> Result<(Stencil, Stencil), SampleError> {
    let inside = |axis: &[f64], q: f64| {
        q.is_finite() && q >= axis[0] - BOUNDS_SLACK && q <= axis[axis.len() - 1] + BOUNDS_SLACK
    };
    if !inside(xs, x) || !inside(ys, y) {
        return Err(SampleError::OutOfDomain { x, y });
    }
    let kernel = xy_kernel(method);
    Ok((stencil(xs, x, kernel), stencil(ys, y, kernel)))
}

/// Tensor-product evaluation; `Err(())` when a stencil node holds the fill value.
#[inline]
pub(crate) fn apply_xy(values: &[f64], nx: usize, sx: &Stencil, sy: &Stencil, fill: f64) -> Result<f64, ()> {
    let mut acc = 0.0;
    for (iy, wy) in sy.iter() {
        let row = &values[iy * nx..(iy + 1) * nx];
        let mut racc = 0.0;
        for (ix, wx) in sx.iter() {
            let v = row[ix];
            if v == fill {
                return Err(());
            }
            racc += wx * v;
        }
        acc += wy * racc;
    }
    Ok(acc)
}

/// Horizontal interpolation on one layer.
pub fn interp_xy(layer: &Layer<'_>, x: f64, y: f64, method: XyMethod) -> Result<f64, SampleError> {
    let (sx, sy) = xy_stencils(layer.x, layer.y, x, y, method)?;
    apply_xy(layer.values, layer.x.len(), &sx, &sy, layer.fill).map_err(|()| SampleError::LandContact { x, y })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid_layer(nx: usize, ny: usize, f: impl Fn(f64, f64) -> f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let xs: Vec<f64> = (0..nx).map(|i| i as f64 * 10.0).collect();
        let ys: Vec<f64> = (0..ny).map(|j| j as f64 * 7.5).collect();
        let mut vals = Vec::new();
        for &y in &ys {
            for &x in &xs {
                vals.push(f(x, y));
            }
        }
        (xs, ys, vals)
    }

    #[test]
    fn bilinear_reproduces_node() {
        let (xs, ys, vals) = grid_layer(3, 3, |x, y| x * 0.3 - y * 1.7 + 0.25);
        let layer = Layer::new(&xs, &ys, &vals, -9999.0);
        let got = interp_xy(&layer, 10.0, 7.5, XyMethod::Bilinear).unwrap();
        assert_eq!(got, vals[4]);
    }

    #[test]
    fn bilinear_cell_center_is_mean_of_corners() {
        let xs = [0.0, 1.0];
        let ys = [0.0, 1.0];
        let vals = [0.0, 1.0, 2.0, 3.0];
        let layer = Layer::new(&xs, &ys, &vals, -9999.0);
        let got = interp_xy(&layer, 0.5, 0.5, XyMethod::Bilinear).unwrap();
        assert!((got - 1.5).abs() < 1e-15);
    }

    #[test]
    fn bicubic_reproduces_plane() {
        let f = |x: f64, y: f64| 2.0 * x + 3.0 * y - 1.0;
        let (xs, ys, vals) = grid_layer(6, 6, f);
        let layer = Layer::new(&xs, &ys, &vals, -9999.0);
        // fixed pseudo-random interior points
        let mut s = 12345u64;
        for _ in 0..20 {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let x = (s >> 11) as f64 / (1u64 << 53) as f64 * 50.0;
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let y = (s >> 11) as f64 / (1u64 << 53) as f64 * 37.5;
            let got = interp_xy(&layer, x, y, XyMethod::Bicubic).unwrap();
            let want = f(x, y);
            assert!((got - want).abs() <= 1e-9 * want.abs().max(1.0), "{x},{y}: {got} vs {want}");
        }
    }

    #[test]
    fn nearest_picks_closest_node() {
        let (xs, ys, vals) = grid_layer(3, 2, |x, y| x + 100.0 * y);
        let layer = Layer::new(&xs, &ys, &vals, -9999.0);
        assert_eq!(interp_xy(&layer, 13.0, 6.0, XyMethod::Nearest).unwrap(), 10.0 + 750.0);
        assert_eq!(interp_xy(&layer, 4.9, 1.0, XyMethod::Nearest).unwrap(), 0.0);
    }

    #[test]
    fn out_of_domain_and_land_contact() {
        let xs = [0.0, 1.0, 2.0];
        let ys = [0.0, 1.0];
        let vals = [0.0, 1.0, -9999.0, 0.0, 1.0, 2.0];
        let layer = Layer::new(&xs, &ys, &vals, -9999.0);
        assert!(matches!(
            interp_xy(&layer, 2.5, 0.5, XyMethod::Bilinear),
            Err(SampleError::OutOfDomain { .. })
        ));
        assert!(matches!(
            interp_xy(&layer, 1.5, 0.5, XyMethod::Bilinear),
            Err(SampleError::LandContact { .. })
        ));
        assert!(interp_xy(&layer, 0.5, 0.5, XyMethod::Bilinear).is_ok());
        // bicubic stencil reaches the land node from the left cell
        assert!(matches!(
            interp_xy(&layer, 0.5, 0.5, XyMethod::Bicubic),
            Err(SampleError::LandContact { .. })
        ));
    }

    #[test]
    fn linear_midpoint() {
        assert_eq!(interp_1d(&[0.0, 1.0], &[0.0, 10.0], 0.5, AxisMethod::Linear).unwrap(), 5.0);
    }

    #[test]
    fn akima_reproduces_line() {
        let k = [0.0, 1.0, 2.0, 3.0, 4.0];
        let v: Vec<f64> = k.iter().map(|x| 2.0 * x + 1.0).collect();
        for q in [0.1, 0.5, 1.25, 2.0, 2.7, 3.99] {
            let got = interp_1d(&k, &v, q, AxisMethod::Akima).unwrap();
            assert!((got - (2.0 * q + 1.0)).abs() < 1e-12, "{q}: {got}");
        }
    }

    #[test]
    fn clamps_outside_knots() {
        let k = [0.0, 1.0, 2.0];
        let v = [1.0, 2.0, 4.0];
        for m in [AxisMethod::Nearest, AxisMethod::Linear, AxisMethod::Cubic, AxisMethod::Akima] {
            assert_eq!(interp_1d(&k, &v, -3.0, m).unwrap(), 1.0);
            assert_eq!(interp_1d(&k, &v, 9.0, m).unwrap(), 4.0);
        }
    }

    #[test]
    fn degrades_on_short_axes() {
        assert_eq!(interp_1d(&[5.0], &[3.0], 100.0, AxisMethod::Akima).unwrap(), 3.0);
        let got = interp_1d(&[0.0, 2.0], &[0.0, 1.0], 0.5, AxisMethod::Cubic).unwrap();
        assert!((got - 0.25).abs() < 1e-15);
    }

    #[test]
    fn empty_knots_error() {
        assert_eq!(interp_1d(&[], &[], 0.0, AxisMethod::Linear), Err(InterpError::EmptyKnots));
        assert!(matches!(
            interp_1d(&[0.0, 1.0], &[0.0], 0.0, AxisMethod::Linear),
            Err(InterpError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn windowed_evaluation_matches_full() {
        let k: Vec<f64> = (0..12).map(|i| (i as f64).powf(1.3)).collect();
        let v: Vec<f64> = k.iter().map(|x| (x * 0.7).sin() + 0.1 * x).collect();
        for m in [AxisMethod::Nearest, AxisMethod::Linear, AxisMethod::Cubic, AxisMethod::Akima] {
            for step in 0..200 {
                let q = -0.5 + step as f64 * 0.13;
                let full = interp_1d(&k, &v, q, m).unwrap();
                let (lo, hi) = window(&k, q, m);
                let part = interp_1d(&k[lo..hi], &v[lo..hi], q, m).unwrap();
                assert_eq!(full.to_bits(), part.to_bits(), "{m} at {q}");
            }
        }
    }

    #[test]
    fn scheme_parsing() {
        let s: InterpScheme = "bicubic,akima".parse().unwrap();
        assert_eq!(s, InterpScheme { xy: XyMethod::Bicubic, z: AxisMethod::Akima, t: AxisMethod::Akima });
        let s: InterpScheme = "nearest,linear,cubic".parse().unwrap();
        assert_eq!(s.to_string(), "nearest,linear,cubic");
        assert!("bogus".parse::<InterpScheme>().is_err());
    }
}
