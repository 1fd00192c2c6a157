//! Born-rule observables, the momentum operator and its eigenfunctions.
//!
//! Expectation values follow `<Q> = sum_j (Q psi)_j conj(psi_j) dV` literally.
//! Derivatives are spectral, so band-limited states (plane-wave box modes in
//! particular) are handled to machine precision.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::grid::{Grid, SpatialGrid};
use crate::potential::Potential;
use crate::spectral::Spectral;
use crate::wavefunction::{norm, WaveFunction};

const NORM_WARN_TOLERANCE: f64 = 1e-6;

/// A complex expectation value. Hermitian operators give a real value up to
/// roundoff; the imaginary part is kept so violations stay visible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Expectation(pub Complex64);

impl Expectation {
    pub fn value(&self) -> Complex64 {
        self.0
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }

    /// The real part, or [`Error::NotReal`] if `|im| > tol`.
    pub fn real(&self, tol: f64) -> Result<f64> {
        if self.0.im.abs() <= tol {
            Ok(self.0.re)
        } else {
            Err(Error::NotReal { re: self.0.re, im: self.0.im, tol })
        }
    }
}

/// Linear operator on sampled wave functions.
pub trait Operator {
    fn apply(&self, psi: &WaveFunction) -> Result<WaveFunction>;
}

/// Multiplication by the propagation-axis coordinate.
pub struct Position;

/// `-i hbar d/dx`, spectrally. 1D only.
pub struct Momentum(pub Constants);

/// `p^2 / 2m = -hbar^2/2m lap`, spectrally.
pub struct KineticEnergy(pub Constants);

pub struct PotentialEnergy<'a>(pub &'a Potential);

pub struct Hamiltonian<'a> {
    pub constants: Constants,
    pub potential: &'a Potential,
}

impl Operator for Position {
    fn apply(&self, psi: &WaveFunction) -> Result<WaveFunction> {
        let xs = psi.grid().x_of_samples();
        psi.with_amplitudes(psi.amplitudes().iter().zip(xs).map(|(z, x)| z * x).collect())
    }
}

impl Operator for Momentum {
    fn apply(&self, psi: &WaveFunction) -> Result<WaveFunction> {
        apply_momentum(psi, &self.0)
    }
}

impl Operator for KineticEnergy {
    fn apply(&self, psi: &WaveFunction) -> Result<WaveFunction> {
        let c = &self.0;
        let mult: Vec<f64> = psi
            .grid()
            .k_squared()
            .into_iter()
            .map(|k2| c.hbar * c.hbar * k2 / (2.0 * c.mass))
            .collect();
        spectral_multiply(psi, &mult)
    }
}

impl Operator for PotentialEnergy<'_> {
    fn apply(&self, psi: &WaveFunction) -> Result<WaveFunction> {
        if psi.grid() != self.0.grid() {
            return Err(Error::GridMismatch);
        }
        psi.with_amplitudes(psi.amplitudes().iter().zip(self.0.values()).map(|(z, v)| z * v).collect())
    }
}

impl Operator for Hamiltonian<'_> {
    fn apply(&self, psi: &WaveFunction) -> Result<WaveFunction> {
        let t = KineticEnergy(self.constants).apply(psi)?;
        let v = PotentialEnergy(self.potential).apply(psi)?;
        Ok(&t + &v)
    }
}

impl<F> Operator for F
where
    F: Fn(&WaveFunction) -> Result<WaveFunction>,
{
    fn apply(&self, psi: &WaveFunction) -> Result<WaveFunction> {
        self(psi)
    }
}

fn spectral_multiply(psi: &WaveFunction, mult: &[f64]) -> Result<WaveFunction> {
    let mut buf = psi.amplitudes().to_vec();
    Spectral::new(*psi.grid()).apply_real_multiplier(&mut buf, mult);
    psi.with_amplitudes(buf)
}

/// `-i hbar psi'` via `F^-1 (hbar k F psi)`, so `exp(ikx) -> hbar k exp(ikx)`.
pub fn apply_momentum(psi: &WaveFunction, constants: &Constants) -> Result<WaveFunction> {
    let g = psi.grid().as_1d()?;
    let mult: Vec<f64> = g.wavenumbers().into_iter().map(|k| constants.hbar * k).collect();
    spectral_multiply(psi, &mult)
}

/// `-hbar^2/2m` times the spectral Laplacian.
fn laplacian_kinetic(psi: &WaveFunction, constants: &Constants) -> Result<WaveFunction> {
    let g = psi.grid().as_1d()?;
    let scale = -constants.hbar * constants.hbar / (2.0 * constants.mass);
    let mult: Vec<f64> = g.wavenumbers().into_iter().map(|k| scale * -(k * k)).collect();
    spectral_multiply(psi, &mult)
}

/// L2 mismatch between `p(p psi) / 2m` and `-hbar^2/2m psi''`.
pub fn momentum_squared_consistency(psi: &WaveFunction, constants: &Constants) -> Result<f64> {
    let pp = apply_momentum(&apply_momentum(psi, constants)?, constants)?;
    let via_momentum = pp.scaled(Complex64::new(1.0 / (2.0 * constants.mass), 0.0));
    via_momentum.distance(&laplacian_kinetic(psi, constants)?)
}

pub fn expectation(psi: &WaveFunction, op: &dyn Operator) -> Result<Expectation> {
    let n = norm(psi);
    if (n - 1.0).abs() > NORM_WARN_TOLERANCE {
        log::warn!("expectation on a state with norm {n}");
    }
    let q = op.apply(psi)?;
    let s: Complex64 = q
        .amplitudes()
        .iter()
        .zip(psi.amplitudes())
        .map(|(qz, z)| qz * z.conj())
        .sum();
    Ok(Expectation(s * psi.grid().cell_volume()))
}

pub fn expectation_position(psi: &WaveFunction) -> Result<f64> {
    Ok(expectation(psi, &Position)?.re())
}

pub fn expectation_momentum(psi: &WaveFunction, constants: &Constants) -> Result<f64> {
    Ok(expectation(psi, &Momentum(*constants))?.re())
}

pub fn kinetic_energy(psi: &WaveFunction, constants: &Constants) -> Result<f64> {
    Ok(expectation(psi, &KineticEnergy(*constants))?.re())
}

pub fn potential_energy(psi: &WaveFunction, potential: &Potential) -> Result<f64> {
    Ok(expectation(psi, &PotentialEnergy(potential))?.re())
}

pub fn total_energy(psi: &WaveFunction, potential: &Potential, constants: &Constants) -> Result<f64> {
    Ok(kinetic_energy(psi, constants)? + potential_energy(psi, potential)?)
}

/// `||op(f) - q f|| / ||f||`.
pub fn eigen_residual(op: &dyn Operator, f: &WaveFunction, q: Complex64) -> Result<f64> {
    let nf = norm(f);
    if nf == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let qf = op.apply(f)?;
    Ok(qf.distance(&f.scaled(q))? / nf)
}

/// Moments of one state, per unit probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservableReport {
    pub norm: f64,
    pub x_mean: f64,
    pub x_var: f64,
    pub p_mean: f64,
    pub p_var: f64,
    pub kinetic_energy: f64,
    pub potential_energy: f64,
    pub total_energy: f64,
    /// `dx * dp`
    pub uncertainty_product: f64,
}

/// Computes [`ObservableReport`]s with one planned transform. On 2D grids
/// `x` and `p` refer to the propagation axis; the kinetic energy is the full one.
pub struct Observer {
    grid: Grid,
    constants: Constants,
    spectral: Spectral,
    xs: Vec<f64>,
    kx: Vec<f64>,
    k2: Vec<f64>,
    buf: Vec<Complex64>,
}

impl Observer {
    pub fn new(grid: Grid, constants: &Constants) -> Self {
        Observer {
            spectral: Spectral::new(grid),
            xs: grid.x_of_samples(),
            kx: grid.kx_of_bins(),
            k2: grid.k_squared(),
            buf: vec![Complex64::default(); grid.len()],
            grid,
            constants: *constants,
        }
    }

    /// Assumes `psi` and `potential` live on the observer's grid; see [`report`].
    pub fn report(&mut self, psi: &WaveFunction, potential: &Potential) -> ObservableReport {
        let dv = self.grid.cell_volume();
        let (hbar, mass) = (self.constants.hbar, self.constants.mass);

        let (mut n2, mut x1, mut x2, mut v1) = (0.0, 0.0, 0.0, 0.0);
        for ((z, x), v) in psi.amplitudes().iter().zip(&self.xs).zip(potential.values()) {
            let rho = z.norm_sqr();
            n2 += rho;
            x1 += rho * x;
            x2 += rho * x * x;
            v1 += rho * v;
        }

        self.buf.copy_from_slice(psi.amplitudes());
        self.spectral.forward(&mut self.buf);
        let (mut s0, mut k1, mut kk, mut k2) = (0.0, 0.0, 0.0, 0.0);
        for ((f, kx), ksq) in self.buf.iter().zip(&self.kx).zip(&self.k2) {
            let w = f.norm_sqr();
            s0 += w;
            k1 += w * kx;
            kk += w * kx * kx;
            k2 += w * ksq;
        }

        let norm2 = n2 * dv;
        if norm2 == 0.0 {
            return ObservableReport {
                norm: 0.0,
                x_mean: 0.0,
                x_var: 0.0,
                p_mean: 0.0,
                p_var: 0.0,
                kinetic_energy: 0.0,
                potential_energy: 0.0,
                total_energy: 0.0,
                uncertainty_product: 0.0,
            };
        }
        let x_mean = x1 / n2;
        let x_var = (x2 / n2 - x_mean * x_mean).max(0.0);
        let p_mean = hbar * k1 / s0;
        let p_var = (hbar * hbar * kk / s0 - p_mean * p_mean).max(0.0);
        let kinetic = hbar * hbar * k2 / (2.0 * mass * s0);
        let pot = v1 / n2;
        ObservableReport {
            norm: norm2.sqrt(),
            x_mean,
            x_var,
            p_mean,
            p_var,
            kinetic_energy: kinetic,
            potential_energy: pot,
            total_energy: kinetic + pot,
            uncertainty_product: (x_var * p_var).sqrt(),
        }
    }
}

pub fn report(psi: &WaveFunction, potential: &Potential, constants: &Constants) -> Result<ObservableReport> {
    if psi.grid() != potential.grid() {
        return Err(Error::GridMismatch);
    }
    Ok(Observer::new(*psi.grid(), constants).report(psi, potential))
}

/// Box eigenfunction of the momentum operator.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumEigenfunction {
    pub p: f64,
    pub amplitude: Complex64,
    /// `2 pi hbar / p`; infinite for `p = 0`.
    pub lambda: f64,
    pub samples: WaveFunction,
}

/// `f_p(x) = A exp(i p x / hbar)` with `A = L^(-1/2)`.
///
/// Only `p = hbar 2 pi j / L` with integer `j` in `[-n/2, n/2)` is an exact
/// eigenvalue on the periodic grid; anything else is a
/// [`Error::CommensurabilityError`].
pub fn momentum_eigenfunction(grid: &SpatialGrid, p: f64, constants: &Constants) -> Result<MomentumEigenfunction> {
    let j = p * grid.length() / (2.0 * PI * constants.hbar);
    let jr = j.round();
    let half = (grid.len() / 2) as f64;
    if !j.is_finite() || (j - jr).abs() > 1e-9 * jr.abs().max(1.0) || jr < -half || jr >= half {
        return Err(Error::CommensurabilityError { p });
    }
    let amplitude = Complex64::new(grid.length().powf(-0.5), 0.0);
    let hbar = constants.hbar;
    let samples = WaveFunction::from_fn(*grid, 0.0, |x, _| amplitude * Complex64::from_polar(1.0, p * x / hbar));
    let lambda = if p == 0.0 { f64::INFINITY } else { 2.0 * PI * hbar / p };
    Ok(MomentumEigenfunction { p, amplitude, lambda, samples })
}

/// `lambda = 2 pi hbar / p`. Negative momenta give negative wavelengths
/// (direction of travel); callers wanting a length take `abs`.
pub fn de_broglie_wavelength(p: f64, constants: &Constants) -> Result<f64> {
    if p == 0.0 {
        return Err(Error::ZeroMomentum);
    }
    Ok(constants.h / p)
}

pub fn momentum_from_wavelength(lambda: f64, constants: &Constants) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::NonPositiveWavelength(lambda));
    }
    Ok(constants.h / lambda)
}

/// Cumulative integral of the piecewise-linear interpolant of `|psi|^2`.
fn cumulative(psi: &WaveFunction, grid: &SpatialGrid, x: f64) -> f64 {
    let rho = psi.density();
    let n = rho.len();
    let dx = grid.dx();
    let s = (x - grid.x_min()) / dx;
    let cell = (s.floor() as usize).min(n - 1);
    let frac = s - cell as f64;
    let mut total = 0.0;
    for i in 0..cell {
        total += 0.5 * (rho[i] + rho[i + 1]) * dx;
    }
    let a = rho[cell];
    let b = rho[(cell + 1) % n];
    total + dx * (a * frac + 0.5 * (b - a) * frac * frac)
}

/// Probability of finding the particle in `[a, b]`: exact integral of the
/// linear interpolant of `|psi|^2` (the periodic trapezoid rule when `a` and
/// `b` are samples). `a == b` gives zero.
pub fn probability(psi: &WaveFunction, a: f64, b: f64) -> Result<f64> {
    let grid = psi.grid().as_1d()?;
    if a > b {
        return Err(Error::ReversedInterval { a, b });
    }
    if a < grid.x_min() || b > grid.x_max() || !a.is_finite() || !b.is_finite() {
        return Err(Error::IntervalOutOfGrid { a, b, min: grid.x_min(), max: grid.x_max() });
    }
    Ok(cumulative(psi, grid, b) - cumulative(psi, grid, a))
}

/// Draws `count` positions from the discrete distribution `|psi_j|^2 dx`
/// by inverse-CDF lookup. One sample is one position measurement on a fresh
/// copy of the state.
pub fn sample_positions<R: Rng + ?Sized>(psi: &WaveFunction, count: usize, rng: &mut R) -> Result<Vec<f64>> {
    let grid = psi.grid().as_1d()?;
    let mut cdf = Vec::with_capacity(grid.len());
    let mut acc = 0.0;
    for rho in psi.density() {
        acc += rho;
        cdf.push(acc);
    }
    if acc == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let xs = grid.coordinates();
    Ok((0..count)
        .map(|_| {
            let u = rng.random::<f64>() * acc;
            let j = cdf.partition_point(|&c| c <= u).min(xs.len() - 1);
            xs[j]
        })
        .collect())
}
