//! Sampled wave functions and their constructors.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::grid::{Grid, SpatialGrid, SpatialGrid2D};

/// Complex amplitudes on a grid at time `t`. Treated as an immutable
/// snapshot: operations return new values.
///
/// The initial condition of an evolution is `psi(x, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    grid: Grid,
    amplitudes: Vec<Complex64>,
    t: f64,
}

impl WaveFunction {
    pub fn new(grid: impl Into<Grid>, amplitudes: Vec<Complex64>, t: f64) -> Result<Self> {
        let grid = grid.into();
        if amplitudes.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: amplitudes.len(),
            });
        }
        Ok(WaveFunction { grid, amplitudes, t })
    }

    /// Samples `f` at every grid point (x-major in 2D; `y` is 0 in 1D).
    pub fn from_fn(grid: impl Into<Grid>, t: f64, f: impl Fn(f64, f64) -> Complex64) -> Self {
        let grid = grid.into();
        let amplitudes = match &grid {
            Grid::One(g) => g.coordinates().into_iter().map(|x| f(x, 0.0)).collect(),
            Grid::Two(g) => {
                let ys = g.y.coordinates();
                g.x.coordinates()
                    .into_iter()
                    .flat_map(|x| ys.iter().map(move |&y| (x, y)))
                    .map(|(x, y)| f(x, y))
                    .collect()
            }
        };
        WaveFunction { grid, amplitudes, t }
    }

    pub fn zeros(grid: impl Into<Grid>, t: f64) -> Self {
        let grid = grid.into();
        WaveFunction {
            amplitudes: vec![Complex64::default(); grid.len()],
            grid,
            t,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn with_time(mut self, t: f64) -> Self {
        self.t = t;
        self
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub(crate) fn set_time(&mut self, t: f64) {
        self.t = t;
    }

    /// Same grid and time, new amplitudes.
    pub fn with_amplitudes(&self, amplitudes: Vec<Complex64>) -> Result<Self> {
        WaveFunction::new(self.grid, amplitudes, self.t)
    }

    /// `|psi_j|^2` per sample.
    pub fn density(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    /// `(sum |psi_j|^2 dV)^(1/2)`.
    pub fn norm(&self) -> f64 {
        norm(self)
    }

    pub fn normalize(&self) -> Result<Self> {
        normalize(self)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        WaveFunction {
            grid: self.grid,
            amplitudes: self.amplitudes.iter().map(|z| z * c).collect(),
            t: self.t,
        }
    }

    /// Discrete inner product `sum conj(self_j) other_j dV`.
    pub fn inner(&self, other: &WaveFunction) -> Result<Complex64> {
        self.check_grid(other)?;
        let s: Complex64 = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(s * self.grid.cell_volume())
    }

    /// `alpha * a + beta * b`, stamped with `a`'s time.
    pub fn combine(alpha: Complex64, a: &WaveFunction, beta: Complex64, b: &WaveFunction) -> Result<Self> {
        a.check_grid(b)?;
        let amplitudes = a
            .amplitudes
            .iter()
            .zip(&b.amplitudes)
            .map(|(x, y)| alpha * x + beta * y)
            .collect();
        Ok(WaveFunction { grid: a.grid, amplitudes, t: a.t })
    }

    /// Discrete L2 distance `||self - other||`.
    pub fn distance(&self, other: &WaveFunction) -> Result<f64> {
        self.check_grid(other)?;
        let s: f64 = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        Ok((s * self.grid.cell_volume()).sqrt())
    }

    pub(crate) fn check_grid(&self, other: &WaveFunction) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }
}

impl Mul<Complex64> for &WaveFunction {
    type Output = WaveFunction;

    fn mul(self, c: Complex64) -> WaveFunction {
        self.scaled(c)
    }
}

impl Add for &WaveFunction {
    type Output = WaveFunction;

    /// Panics on mismatched grids; use [`WaveFunction::combine`] to get a `Result`.
    fn add(self, other: &WaveFunction) -> WaveFunction {
        WaveFunction::combine(Complex64::ONE, self, Complex64::ONE, other).expect("grid mismatch")
    }
}

impl Sub for &WaveFunction {
    type Output = WaveFunction;

    fn sub(self, other: &WaveFunction) -> WaveFunction {
        WaveFunction::combine(Complex64::ONE, self, -Complex64::ONE, other).expect("grid mismatch")
    }
}

pub fn norm(psi: &WaveFunction) -> f64 {
    let s: f64 = psi.amplitudes.iter().map(|z| z.norm_sqr()).sum();
    (s * psi.grid.cell_volume()).sqrt()
}

pub fn normalize(psi: &WaveFunction) -> Result<WaveFunction> {
    let n = norm(psi);
    if n == 0.0 || !n.is_finite() {
        return Err(Error::ZeroFunction);
    }
    Ok(psi.scaled(Complex64::new(1.0 / n, 0.0)))
}

fn gaussian_factor(x: f64, x0: f64, p0: f64, sigma: f64, hbar: f64) -> Complex64 {
    let envelope = (-(x - x0).powi(2) / (4.0 * sigma * sigma)).exp();
    Complex64::from_polar(envelope, p0 * x / hbar)
}

/// `psi ~ exp(-(x-x0)^2 / (4 sigma^2)) exp(i p0 x / hbar)`, normalized.
///
/// `sigma` is the standard deviation of `|psi|^2`. The packet should sit well
/// inside the box; that is not checked.
pub fn gaussian_packet(
    grid: &SpatialGrid,
    x0: f64,
    p0: f64,
    sigma: f64,
    constants: &Constants,
) -> Result<WaveFunction> {
    if !(sigma > 0.0) {
        return Err(Error::NonPositiveWidth(sigma));
    }
    let psi = WaveFunction::from_fn(*grid, 0.0, |x, _| gaussian_factor(x, x0, p0, sigma, constants.hbar));
    normalize(&psi)
}

/// Separable 2D beam: a moving Gaussian along `x`, a Gaussian at rest along `y`.
pub fn gaussian_beam(
    grid: &SpatialGrid2D,
    x0: f64,
    y0: f64,
    p0: f64,
    sigma_x: f64,
    sigma_y: f64,
    constants: &Constants,
) -> Result<WaveFunction> {
    for s in [sigma_x, sigma_y] {
        if !(s > 0.0) {
            return Err(Error::NonPositiveWidth(s));
        }
    }
    let hbar = constants.hbar;
    let psi = WaveFunction::from_fn(*grid, 0.0, |x, y| {
        gaussian_factor(x, x0, p0, sigma_x, hbar) * gaussian_factor(y, y0, 0.0, sigma_y, hbar)
    });
    normalize(&psi)
}

/// Box-normalized traveling wave `L^(-1/2) exp(i(k x - omega t))`,
/// `k = 2 pi mode / L`.
pub fn plane_wave_box(grid: &SpatialGrid, mode: i64, t: f64, omega: f64) -> Result<WaveFunction> {
    let half = (grid.len() / 2) as i64;
    if mode < -half || mode >= half {
        return Err(Error::ModeOutOfRange { mode, half });
    }
    let k = 2.0 * PI * mode as f64 / grid.length();
    let amp = grid.length().sqrt().recip();
    Ok(WaveFunction::from_fn(*grid, t, |x, _| Complex64::from_polar(amp, k * x - omega * t)))
}
