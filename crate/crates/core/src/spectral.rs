//! FFT plumbing for periodic grids.
//!
//! Transform convention, used everywhere in the crate:
//!
//! * forward: `F[m] = sum_j psi[j] * exp(-2 pi i j m / n)` (unnormalized),
//! * inverse: `psi[j] = (1/n) sum_m F[m] * exp(+2 pi i j m / n)`,
//! * momentum-space amplitudes: `phi[m] = dV / (2 pi)^(d/2) * F[m]`, where
//!   `dV` is the cell volume and `d` the dimension.
//!
//! With that scaling Parseval reads `sum |phi|^2 dk^d = sum |psi|^2 dV`.
//! Bin `m` carries the wavenumber from [`SpatialGrid::wavenumbers`].

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::grid::{Grid, SpatialGrid};

struct AxisPlan {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl AxisPlan {
    fn new(planner: &mut FftPlanner<f64>, axis: &SpatialGrid) -> Self {
        AxisPlan {
            forward: planner.plan_fft_forward(axis.len()),
            inverse: planner.plan_fft_inverse(axis.len()),
        }
    }

    fn scratch_len(&self) -> usize {
        self.forward
            .get_inplace_scratch_len()
            .max(self.inverse.get_inplace_scratch_len())
    }
}

/// Planned transforms plus workspace for one grid. Not shared between
/// evolutions; each propagator owns its own.
pub struct Spectral {
    grid: Grid,
    x: AxisPlan,
    y: Option<AxisPlan>,
    scratch: Vec<Complex64>,
    transposed: Vec<Complex64>,
}

impl Spectral {
    pub fn new(grid: Grid) -> Self {
        let mut planner = FftPlanner::new();
        let (x, y) = match &grid {
            Grid::One(g) => (AxisPlan::new(&mut planner, g), None),
            Grid::Two(g) => (
                AxisPlan::new(&mut planner, &g.x),
                Some(AxisPlan::new(&mut planner, &g.y)),
            ),
        };
        let scratch_len = x
            .scratch_len()
            .max(y.as_ref().map_or(0, AxisPlan::scratch_len));
        let transposed = match &grid {
            Grid::One(_) => Vec::new(),
            Grid::Two(g) => vec![Complex64::default(); g.len()],
        };
        Spectral {
            grid,
            x,
            y,
            scratch: vec![Complex64::default(); scratch_len],
            transposed,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn forward(&mut self, buf: &mut [Complex64]) {
        self.transform(buf, true);
    }

    /// Inverse transform including the `1/n` normalization.
    pub fn inverse(&mut self, buf: &mut [Complex64]) {
        self.transform(buf, false);
        let scale = 1.0 / buf.len() as f64;
        buf.iter_mut().for_each(|z| *z *= scale);
    }

    fn transform(&mut self, buf: &mut [Complex64], forward: bool) {
        assert_eq!(buf.len(), self.grid.len(), "buffer does not match grid");
        let pick = |p: &AxisPlan| {
            if forward {
                p.forward.clone()
            } else {
                p.inverse.clone()
            }
        };
        match (&self.grid, &self.y) {
            (Grid::One(_), _) => {
                pick(&self.x).process_with_scratch(buf, &mut self.scratch);
            }
            (Grid::Two(g), Some(yplan)) => {
                let (nx, ny) = (g.x.len(), g.y.len());
                // rows along y are contiguous
                pick(yplan).process_with_scratch(buf, &mut self.scratch);
                transpose(buf, &mut self.transposed, nx, ny);
                pick(&self.x).process_with_scratch(&mut self.transposed, &mut self.scratch);
                transpose(&self.transposed, buf, ny, nx);
            }
            (Grid::Two(_), None) => unreachable!("2D grid without y plan"),
        }
    }

    /// `buf <- F^-1 (mult * F buf)`.
    pub fn apply_multiplier(&mut self, buf: &mut [Complex64], mult: &[Complex64]) {
        self.forward(buf);
        buf.iter_mut().zip(mult).for_each(|(z, m)| *z *= m);
        self.inverse(buf);
    }

    pub fn apply_real_multiplier(&mut self, buf: &mut [Complex64], mult: &[f64]) {
        self.forward(buf);
        buf.iter_mut().zip(mult).for_each(|(z, m)| *z *= m);
        self.inverse(buf);
    }

    /// Momentum-space amplitudes in the convention documented at module level.
    pub fn momentum_amplitudes(&mut self, psi: &[Complex64]) -> Vec<Complex64> {
        let mut buf = psi.to_vec();
        self.forward(&mut buf);
        let scale = self.grid.cell_volume() / (2.0 * PI).powf(self.dimension() as f64 / 2.0);
        buf.iter_mut().for_each(|z| *z *= scale);
        buf
    }

    /// Volume element in momentum space (`dk` or `dkx * dky`).
    pub fn dk_volume(&self) -> f64 {
        match &self.grid {
            Grid::One(g) => g.dk(),
            Grid::Two(g) => g.x.dk() * g.y.dk(),
        }
    }

    fn dimension(&self) -> usize {
        match self.grid {
            Grid::One(_) => 1,
            Grid::Two(_) => 2,
        }
    }
}

fn transpose(src: &[Complex64], dst: &mut [Complex64], rows: usize, cols: usize) {
    for r in 0..rows {
        let row = &src[r * cols..(r + 1) * cols];
        for (c, v) in row.iter().enumerate() {
            dst[c * rows + r] = *v;
        }
    }
}
