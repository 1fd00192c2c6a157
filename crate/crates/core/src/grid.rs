//! Uniform periodic sample grids.
//!
//! A grid over `[x_min, x_max)` holds `n` samples at `x_min + j * dx` with
//! `dx = (x_max - x_min) / n`; `x_max` is the periodic image of `x_min`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const MIN_SAMPLES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialGrid {
    x_min: f64,
    x_max: f64,
    n: usize,
}

impl SpatialGrid {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_max <= x_min {
            return Err(Error::DegenerateInterval(x_min, x_max));
        }
        if !n.is_power_of_two() {
            return Err(Error::NonPowerOfTwo(n));
        }
        if n < MIN_SAMPLES {
            return Err(Error::TooFewSamples(n));
        }
        Ok(SpatialGrid { x_min, x_max, n })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn dx(&self) -> f64 {
        self.length() / self.n as f64
    }

    pub fn coordinate(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx()
    }

    pub fn coordinates(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.coordinate(j)).collect()
    }

    /// Signed mode number of FFT bin `j`: `j` for `j < n/2`, else `j - n`.
    pub fn mode_number(&self, j: usize) -> i64 {
        let half = (self.n / 2) as i64;
        let j = j as i64;
        if j < half {
            j
        } else {
            j - self.n as i64
        }
    }

    /// Wavenumber ladder `2 pi j' / L` in transform ordering.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let scale = 2.0 * PI / self.length();
        (0..self.n).map(|j| scale * self.mode_number(j) as f64).collect()
    }

    pub fn dk(&self) -> f64 {
        2.0 * PI / self.length()
    }

    pub fn max_wavenumber(&self) -> f64 {
        PI / self.dx()
    }

    /// Index of the sample nearest to `x`, or `None` outside `[x_min, x_max)`.
    pub fn nearest_index(&self, x: f64) -> Option<usize> {
        if x < self.x_min || x >= self.x_max {
            return None;
        }
        let j = ((x - self.x_min) / self.dx()).round() as usize;
        Some(j.min(self.n - 1))
    }
}

/// Two independent periodic axes: `x` (propagation) and `y` (transverse).
///
/// Samples are stored x-major: index `ix * ny + iy`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialGrid2D {
    pub x: SpatialGrid,
    pub y: SpatialGrid,
}

impl SpatialGrid2D {
    pub fn new(x: SpatialGrid, y: SpatialGrid) -> Self {
        SpatialGrid2D { x, y }
    }

    pub fn len(&self) -> usize {
        self.x.len() * self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index(&self, ix: usize, iy: usize) -> usize {
        ix * self.y.len() + iy
    }
}

/// A grid of either dimensionality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Grid {
    One(SpatialGrid),
    Two(SpatialGrid2D),
}

impl Grid {
    pub fn len(&self) -> usize {
        match self {
            Grid::One(g) => g.len(),
            Grid::Two(g) => g.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Quadrature weight of one sample (`dx` or `dx * dy`).
    pub fn cell_volume(&self) -> f64 {
        match self {
            Grid::One(g) => g.dx(),
            Grid::Two(g) => g.x.dx() * g.y.dx(),
        }
    }

    /// The propagation axis (the only axis in 1D).
    pub fn x_axis(&self) -> &SpatialGrid {
        match self {
            Grid::One(g) => g,
            Grid::Two(g) => &g.x,
        }
    }

    pub fn as_1d(&self) -> Result<&SpatialGrid> {
        match self {
            Grid::One(g) => Ok(g),
            Grid::Two(_) => Err(Error::Only1D),
        }
    }

    pub fn as_2d(&self) -> Result<&SpatialGrid2D> {
        match self {
            Grid::Two(g) => Ok(g),
            Grid::One(_) => Err(Error::Only2D),
        }
    }

    /// Propagation-axis coordinate of every sample in storage order.
    pub fn x_of_samples(&self) -> Vec<f64> {
        match self {
            Grid::One(g) => g.coordinates(),
            Grid::Two(g) => {
                let ny = g.y.len();
                (0..g.len()).map(|i| g.x.coordinate(i / ny)).collect()
            }
        }
    }

    /// Squared wavenumber `|k|^2` of every spectral bin in storage order.
    pub fn k_squared(&self) -> Vec<f64> {
        match self {
            Grid::One(g) => g.wavenumbers().iter().map(|k| k * k).collect(),
            Grid::Two(g) => {
                let kx = g.x.wavenumbers();
                let ky = g.y.wavenumbers();
                kx.iter()
                    .flat_map(|a| ky.iter().map(move |b| a * a + b * b))
                    .collect()
            }
        }
    }

    /// Propagation-axis wavenumber of every spectral bin in storage order.
    pub fn kx_of_bins(&self) -> Vec<f64> {
        match self {
            Grid::One(g) => g.wavenumbers(),
            Grid::Two(g) => {
                let ny = g.y.len();
                g.x.wavenumbers()
                    .into_iter()
                    .flat_map(|k| std::iter::repeat_n(k, ny))
                    .collect()
            }
        }
    }
}

impl From<SpatialGrid> for Grid {
    fn from(g: SpatialGrid) -> Self {
        Grid::One(g)
    }
}

impl From<SpatialGrid2D> for Grid {
    fn from(g: SpatialGrid2D) -> Self {
        Grid::Two(g)
    }
}
