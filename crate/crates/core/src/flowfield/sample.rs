use super::interp::{apply_xy, interp_1d_unchecked, window, xy_stencils, InterpScheme};
use super::{CurrentVector, FlowGrid, SampleError};

/// Anything that answers `(x, y, z, t) -> current` queries.
pub trait CurrentField: Sync {
    fn current(&self, x: f64, y: f64, z: f64, t: f64) -> Result<CurrentVector, SampleError>;
}

impl<F: CurrentField + ?Sized> CurrentField for &F {
    fn current(&self, x: f64, y: f64, z: f64, t: f64) -> Result<CurrentVector, SampleError> {
        (**self).current(x, y, z, t)
    }
}

/// A flow grid paired with the interpolation scheme used to query it.
#[derive(Debug, Clone, Copy)]
pub struct FlowModel<'g> {
    grid: &'g FlowGrid,
    scheme: InterpScheme,
}

impl<'g> FlowModel<'g> {
    pub fn new(grid: &'g FlowGrid, scheme: InterpScheme) -> Self {
        Self { grid, scheme }
    }

    pub fn grid(&self) -> &'g FlowGrid {
        self.grid
    }

    pub fn scheme(&self) -> InterpScheme {
        self.scheme
    }
}

impl CurrentField for FlowModel<'_> {
    fn current(&self, x: f64, y: f64, z: f64, t: f64) -> Result<CurrentVector, SampleError> {
        sample(self.grid, x, y, z, t, self.scheme)
    }
}

// Widest 1-D window (Akima reads six knots).
const MAX_WINDOW: usize = 6;

/// Current at `(x, y, z, t)`.
///
/// Horizontal interpolation runs on every `(t, z)` layer inside the depth and
/// time windows, then depth, then time. Depth and time are clamped to the grid
/// range; a horizontal position outside the grid is an error, as is a fill
/// value anywhere in the horizontal stencil of a layer that is read.
pub fn sample(grid: &FlowGrid, x: f64, y: f64, z: f64, t: f64, scheme: InterpScheme) -> Result<CurrentVector, SampleError> {
    let xs = grid.x();
    let ys = grid.y();
    let zs = grid.z();
    let ts = grid.t();
    let (sx, sy) = xy_stencils(xs, ys, x, y, scheme.xy)?;
    let (zlo, zhi) = window(zs, z, scheme.z);
    let (tlo, thi) = window(ts, t, scheme.t);
    let nx = xs.len();
    let plane = nx * ys.len();
    let fill = grid.fill_sentinel();
    let (u_all, v_all) = (grid.u_values(), grid.v_values());
    let land = SampleError::LandContact { x, y };

    let mut tu = [0.0; MAX_WINDOW];
    let mut tv = [0.0; MAX_WINDOW];
    for it in tlo..thi {
        let mut zu = [0.0; MAX_WINDOW];
        let mut zv = [0.0; MAX_WINDOW];
        for iz in zlo..zhi {
            let start = grid.index(it, iz, 0, 0);
            let k = iz - zlo;
            zu[k] = apply_xy(&u_all[start..start + plane], nx, &sx, &sy, fill).map_err(|()| land)?;
            zv[k] = apply_xy(&v_all[start..start + plane], nx, &sx, &sy, fill).map_err(|()| land)?;
        }
        let nz = zhi - zlo;
        let k = it - tlo;
        tu[k] = interp_1d_unchecked(&zs[zlo..zhi], &zu[..nz], z, scheme.z);
        tv[k] = interp_1d_unchecked(&zs[zlo..zhi], &zv[..nz], z, scheme.z);
    }
    let nt = thi - tlo;
    let u = interp_1d_unchecked(&ts[tlo..thi], &tu[..nt], t, scheme.t);
    let v = interp_1d_unchecked(&ts[tlo..thi], &tv[..nt], t, scheme.t);
    Ok(CurrentVector::new(u, v))
}
