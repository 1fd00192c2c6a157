//! Time evolution under `i hbar psi_t = -hbar^2/2m lap psi + V psi`.
//!
//! Two independent schemes share the periodic boundary convention:
//! Strang split-step (kinetic factor exact in Fourier space) and
//! Crank-Nicolson on the periodic second-difference Laplacian (1D only).

use num_complex::Complex64;

use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::observe::{ObservableReport, Observer};
use crate::potential::{build_potential, Potential, PotentialSpec};
use crate::spectral::Spectral;
use crate::wavefunction::{gaussian_beam, gaussian_packet, plane_wave_box, WaveFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Scheme {
    #[default]
    SplitStep,
    CrankNicolson,
}

impl std::str::FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "split_step" => Ok(Scheme::SplitStep),
            "crank_nicolson" => Ok(Scheme::CrankNicolson),
            other => Err(format!("unknown scheme `{other}` (expected split_step|crank_nicolson)")),
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Scheme::SplitStep => "split_step",
            Scheme::CrankNicolson => "crank_nicolson",
        })
    }
}

fn check_dt(dt: f64) -> Result<()> {
    if dt.is_finite() && dt >= 0.0 {
        Ok(())
    } else {
        Err(Error::BadTimeStep(dt))
    }
}

/// Time step at which the fastest grid mode turns `hbar k_max^2 dt / 2m = 0.1`
/// rad per step. Accuracy guidance only; both schemes are unconditionally stable.
pub fn suggested_dt(grid: &Grid, constants: &Constants) -> f64 {
    let k2_max = grid.k_squared().into_iter().fold(0.0, f64::max);
    0.2 * constants.mass / (constants.hbar * k2_max)
}

/// `psi' = P F^-1 K F P psi` with `P = exp(-i V dt / 2 hbar)` and
/// `K = exp(-i hbar k^2 dt / 2m)`.
pub struct SplitStep {
    grid: Grid,
    dt: f64,
    half_potential: Vec<Complex64>,
    kinetic: Vec<Complex64>,
    spectral: Spectral,
}

impl SplitStep {
    pub fn new(potential: &Potential, dt: f64, constants: &Constants) -> Result<Self> {
        check_dt(dt)?;
        let grid = *potential.grid();
        let hbar = constants.hbar;
        let half_potential = potential
            .values()
            .iter()
            .map(|v| Complex64::from_polar(1.0, -v * dt / (2.0 * hbar)))
            .collect();
        let kinetic = grid
            .k_squared()
            .into_iter()
            .map(|k2| Complex64::from_polar(1.0, -hbar * k2 * dt / (2.0 * constants.mass)))
            .collect();
        Ok(SplitStep {
            grid,
            dt,
            half_potential,
            kinetic,
            spectral: Spectral::new(grid),
        })
    }

    pub fn step(&mut self, psi: &mut WaveFunction) -> Result<()> {
        if *psi.grid() != self.grid {
            return Err(Error::GridMismatch);
        }
        if self.dt == 0.0 {
            return Ok(());
        }
        let t = psi.t() + self.dt;
        let buf = psi.amplitudes_mut();
        buf.iter_mut().zip(&self.half_potential).for_each(|(z, p)| *z *= p);
        self.spectral.apply_multiplier(buf, &self.kinetic);
        buf.iter_mut().zip(&self.half_potential).for_each(|(z, p)| *z *= p);
        psi.set_time(t);
        Ok(())
    }
}

/// Cayley step `(I + i dt H / 2 hbar) psi' = (I - i dt H / 2 hbar) psi` with
/// `H = -hbar^2/2m D2 + V` and `D2` the periodic second difference.
///
/// The cyclic tridiagonal system is solved by Thomas elimination plus a
/// Sherman-Morrison correction for the two corner entries; the elimination
/// coefficients are computed once per propagator.
pub struct CrankNicolson {
    grid: Grid,
    dt: f64,
    /// `i dt / (2 hbar)`
    half: Complex64,
    /// Kinetic stencil weight `hbar^2 / (2 m dx^2)`.
    stencil: f64,
    potential: Vec<f64>,
    off: Complex64,
    c_prime: Vec<Complex64>,
    denom: Vec<Complex64>,
    gamma: Complex64,
    z: Vec<Complex64>,
    vz_factor: Complex64,
    rhs: Vec<Complex64>,
}

impl CrankNicolson {
    pub fn new(potential: &Potential, dt: f64, constants: &Constants) -> Result<Self> {
        check_dt(dt)?;
        let grid = *potential.grid();
        let axis = *grid.as_1d()?;
        let n = axis.len();
        let half = Complex64::new(0.0, dt / (2.0 * constants.hbar));
        let stencil = constants.hbar * constants.hbar / (2.0 * constants.mass * axis.dx().powi(2));
        let off = -half * stencil;
        let diag: Vec<Complex64> = potential
            .values()
            .iter()
            .map(|v| Complex64::ONE + half * (2.0 * stencil + v))
            .collect();

        let gamma = -diag[0];
        let mut b = diag;
        b[0] -= gamma;
        b[n - 1] -= off * off / gamma;

        let mut c_prime = vec![Complex64::default(); n];
        let mut denom = vec![Complex64::default(); n];
        denom[0] = b[0];
        c_prime[0] = off / b[0];
        for i in 1..n {
            denom[i] = b[i] - off * c_prime[i - 1];
            c_prime[i] = off / denom[i];
        }

        let mut cn = CrankNicolson {
            grid,
            dt,
            half,
            stencil,
            potential: potential.values().to_vec(),
            off,
            c_prime,
            denom,
            gamma,
            z: Vec::new(),
            vz_factor: Complex64::default(),
            rhs: vec![Complex64::default(); n],
        };
        let mut u = vec![Complex64::default(); n];
        u[0] = gamma;
        u[n - 1] = off;
        cn.thomas(&mut u);
        cn.vz_factor = Complex64::ONE + u[0] + off / gamma * u[n - 1];
        cn.z = u;
        Ok(cn)
    }

    /// Solves the corner-free system in place.
    fn thomas(&self, d: &mut [Complex64]) {
        let n = d.len();
        d[0] /= self.denom[0];
        for i in 1..n {
            d[i] = (d[i] - self.off * d[i - 1]) / self.denom[i];
        }
        for i in (0..n - 1).rev() {
            d[i] -= self.c_prime[i] * d[i + 1];
        }
    }

    pub fn step(&mut self, psi: &mut WaveFunction) -> Result<()> {
        if *psi.grid() != self.grid {
            return Err(Error::GridMismatch);
        }
        if self.dt == 0.0 {
            return Ok(());
        }
        let t = psi.t() + self.dt;
        let n = self.rhs.len();
        {
            let a = psi.amplitudes();
            for j in 0..n {
                let left = a[(j + n - 1) % n];
                let right = a[(j + 1) % n];
                let h = -self.stencil * (left - 2.0 * a[j] + right) + self.potential[j] * a[j];
                self.rhs[j] = a[j] - self.half * h;
            }
        }
        let mut y = std::mem::take(&mut self.rhs);
        self.thomas(&mut y);
        let vy = y[0] + self.off / self.gamma * y[n - 1];
        let coef = vy / self.vz_factor;
        let out = psi.amplitudes_mut();
        for j in 0..n {
            out[j] = y[j] - coef * self.z[j];
        }
        self.rhs = y;
        psi.set_time(t);
        Ok(())
    }
}

/// A planned propagator for either scheme.
pub enum Propagator {
    SplitStep(SplitStep),
    CrankNicolson(CrankNicolson),
}

impl Propagator {
    pub fn new(scheme: Scheme, potential: &Potential, dt: f64, constants: &Constants) -> Result<Self> {
        Ok(match scheme {
            Scheme::SplitStep => Propagator::SplitStep(SplitStep::new(potential, dt, constants)?),
            Scheme::CrankNicolson => Propagator::CrankNicolson(CrankNicolson::new(potential, dt, constants)?),
        })
    }

    pub fn step(&mut self, psi: &mut WaveFunction) -> Result<()> {
        match self {
            Propagator::SplitStep(p) => p.step(psi),
            Propagator::CrankNicolson(p) => p.step(psi),
        }
    }

    pub fn run(&mut self, psi: &WaveFunction, steps: usize) -> Result<WaveFunction> {
        let mut out = psi.clone();
        for _ in 0..steps {
            self.step(&mut out)?;
        }
        Ok(out)
    }
}

/// One split step. Prefer [`SplitStep`] in loops; this re-plans every call.
pub fn split_step(psi: &WaveFunction, potential: &Potential, dt: f64, constants: &Constants) -> Result<WaveFunction> {
    let mut out = psi.clone();
    SplitStep::new(potential, dt, constants)?.step(&mut out)?;
    Ok(out)
}

pub fn crank_nicolson_step(
    psi: &WaveFunction,
    potential: &Potential,
    dt: f64,
    constants: &Constants,
) -> Result<WaveFunction> {
    let mut out = psi.clone();
    CrankNicolson::new(potential, dt, constants)?.step(&mut out)?;
    Ok(out)
}

/// `steps` steps of `scheme`.
pub fn propagate(
    psi: &WaveFunction,
    potential: &Potential,
    scheme: Scheme,
    dt: f64,
    steps: usize,
    constants: &Constants,
) -> Result<WaveFunction> {
    Propagator::new(scheme, potential, dt, constants)?.run(psi, steps)
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitialState {
    Gaussian { x0: f64, p0: f64, sigma: f64 },
    PlaneWave { mode: i64 },
    GaussianBeam { x0: f64, y0: f64, p0: f64, sigma_x: f64, sigma_y: f64 },
}

impl InitialState {
    pub fn build(&self, grid: &Grid, constants: &Constants) -> Result<WaveFunction> {
        match *self {
            InitialState::Gaussian { x0, p0, sigma } => gaussian_packet(grid.as_1d()?, x0, p0, sigma, constants),
            InitialState::PlaneWave { mode } => plane_wave_box(grid.as_1d()?, mode, 0.0, 0.0),
            InitialState::GaussianBeam { x0, y0, p0, sigma_x, sigma_y } => {
                gaussian_beam(grid.as_2d()?, x0, y0, p0, sigma_x, sigma_y, constants)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub grid: Grid,
    pub constants: Constants,
    pub potential: PotentialSpec,
    pub initial: InitialState,
    pub dt: f64,
    pub steps: usize,
    /// Snapshot cadence in steps; 0 keeps only the final state.
    pub snapshot_every: usize,
    pub scheme: Scheme,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::BadTimeStep(self.dt));
        }
        if self.steps == 0 {
            return Err(Error::NoSteps);
        }
        if self.snapshot_every != 0 && !self.steps.is_multiple_of(self.snapshot_every) {
            return Err(Error::SnapshotScheduleInvalid {
                every: self.snapshot_every,
                steps: self.steps,
            });
        }
        Ok(())
    }
}

/// One row of the observable series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesRow {
    pub t: f64,
    pub report: ObservableReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// With `snapshot_every = s > 0`: states at steps 0, s, 2s, ..., steps.
    /// With `s = 0`: the final state only.
    pub snapshots: Vec<WaveFunction>,
    /// Observables at every step, including step 0.
    pub series: Vec<SeriesRow>,
}

impl Trajectory {
    pub fn final_state(&self) -> &WaveFunction {
        self.snapshots.last().expect("trajectory always holds the final state")
    }
}

pub fn evolve(config: &SimConfig) -> Result<Trajectory> {
    config.validate()?;
    let constants = &config.constants;
    let potential = build_potential(&config.potential, &config.grid, constants)?;
    let mut psi = config.initial.build(&config.grid, constants)?;
    let mut propagator = Propagator::new(config.scheme, &potential, config.dt, constants)?;
    let mut observer = Observer::new(config.grid, constants);

    let mut snapshots = Vec::new();
    let mut series = Vec::with_capacity(config.steps + 1);
    let mut record = |psi: &WaveFunction, series: &mut Vec<SeriesRow>| {
        series.push(SeriesRow {
            t: psi.t(),
            report: observer.report(psi, &potential),
        });
    };
    record(&psi, &mut series);
    if config.snapshot_every > 0 {
        snapshots.push(psi.clone());
    }
    for step in 1..=config.steps {
        propagator.step(&mut psi)?;
        // stamp from the step count so long runs don't accumulate dt roundoff
        psi.set_time(step as f64 * config.dt);
        record(&psi, &mut series);
        if config.snapshot_every > 0 && step % config.snapshot_every == 0 {
            snapshots.push(psi.clone());
        }
    }
    if config.snapshot_every == 0 {
        snapshots.push(psi);
    }
    Ok(Trajectory { snapshots, series })
}
