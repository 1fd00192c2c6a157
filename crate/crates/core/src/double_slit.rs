//! Two-slit interference in 2D.
//!
//! A Gaussian beam moving along `+x` hits a high finite barrier with two gaps.
//! The screen records the time-integrated density `sum_t |psi(x_screen, y)|^2 dt`.

use std::f64::consts::PI;

use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::evolve::SplitStep;
use crate::grid::{Grid, SpatialGrid, SpatialGrid2D};
use crate::potential::{build_potential, DoubleSlit, PotentialSpec, SlitMask};
use crate::wavefunction::gaussian_beam;

/// Cosine-ramp absorbing layer along the box edges. Inside a layer of width
/// `w` the amplitude is multiplied every step by `cos(pi s / 2w)^(1/8)`, `s`
/// being the depth into the layer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Absorber {
    pub width_x: f64,
    pub width_y: f64,
}

impl Absorber {
    fn axis_mask(axis: &SpatialGrid, width: f64) -> Vec<f64> {
        axis.coordinates()
            .into_iter()
            .map(|u| {
                let edge = (u - axis.x_min()).min(axis.x_max() - u);
                if width <= 0.0 || edge >= width {
                    1.0
                } else {
                    let s = width - edge;
                    (PI * s / (2.0 * width)).cos().max(0.0).powf(0.125)
                }
            })
            .collect()
    }

    pub fn mask(&self, grid: &SpatialGrid2D) -> Vec<f64> {
        let mx = Self::axis_mask(&grid.x, self.width_x);
        let my = Self::axis_mask(&grid.y, self.width_y);
        mx.iter().flat_map(|a| my.iter().map(move |b| a * b)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Beam {
    pub x0: f64,
    pub y0: f64,
    pub p0: f64,
    pub sigma_x: f64,
    pub sigma_y: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DoubleSlitConfig {
    pub grid: SpatialGrid2D,
    pub constants: Constants,
    pub slits: DoubleSlit,
    pub beam: Beam,
    pub dt: f64,
    pub steps: usize,
    pub screen_x: f64,
    pub absorber: Option<Absorber>,
    /// Minimum peak probability beyond the screen for the run to count.
    pub min_screen_probability: f64,
}

impl Default for DoubleSlitConfig {
    /// Desk-scale geometry in natural units: de Broglie wavelength 1, slit
    /// separation 6.25, exit-face-to-screen distance 20.75, on 256 x 256
    /// samples. The wall is 8 samples thick; thinner walls leak through the
    /// spectral kinetic step.
    fn default() -> Self {
        let p0 = 2.0 * PI;
        DoubleSlitConfig {
            grid: SpatialGrid2D::new(
                SpatialGrid::new(-40.0, 40.0, 256).expect("static grid"),
                SpatialGrid::new(-16.0, 16.0, 256).expect("static grid"),
            ),
            constants: Constants::natural(),
            slits: DoubleSlit {
                barrier_height: 50.0 * p0 * p0 / 2.0,
                barrier_x: -12.0,
                barrier_thickness: 2.5,
                slit_separation: 6.25,
                slit_width: 1.25,
                open: SlitMask::Both,
            },
            beam: Beam {
                x0: -24.0,
                y0: 0.0,
                p0,
                sigma_x: 2.5,
                sigma_y: 3.0,
            },
            dt: 2.5e-3,
            steps: 3200,
            screen_x: 10.0,
            absorber: Some(Absorber {
                width_x: 6.0,
                width_y: 4.0,
            }),
            min_screen_probability: 1e-3,
        }
    }
}

impl DoubleSlitConfig {
    pub fn with_slits(mut self, open: SlitMask) -> Self {
        self.slits.open = open;
        self
    }

    fn screen_index(&self) -> Result<usize> {
        self.grid.x.nearest_index(self.screen_x).ok_or(Error::IntervalOutOfGrid {
            a: self.screen_x,
            b: self.screen_x,
            min: self.grid.x.x_min(),
            max: self.grid.x.x_max(),
        })
    }

    /// de Broglie wavelength of the beam, `2 pi hbar / p0`.
    pub fn wavelength(&self) -> f64 {
        2.0 * PI * self.constants.hbar / self.beam.p0
    }

    /// Far-field fringe spacing `lambda D / d`, with `D` measured from the
    /// exit face of the wall, where the slit channels radiate, to the screen
    /// sample actually used.
    pub fn fraunhofer_spacing(&self) -> Result<f64> {
        let xs = self.grid.x.coordinate(self.screen_index()?);
        let exit = self.slits.barrier_x + 0.5 * self.slits.barrier_thickness;
        Ok(self.wavelength() * (xs - exit) / self.slits.slit_separation)
    }

    /// The part of the screen outside the absorbing layers.
    pub fn screen_window(&self) -> (f64, f64) {
        let w = self.absorber.map_or(0.0, |a| a.width_y);
        (self.grid.y.x_min() + w, self.grid.y.x_max() - w)
    }

    /// Fringe analysis restricted to [`Self::screen_window`].
    pub fn analyze(&self, profile: &ScreenProfile) -> FringeAnalysis {
        let (lo, hi) = self.screen_window();
        analyze_fringes(&profile.window(lo, hi), FRINGE_THRESHOLD)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScreenProfile {
    pub x_screen: f64,
    pub y: Vec<f64>,
    pub intensity: Vec<f64>,
}

impl ScreenProfile {
    /// The samples with `lo <= y < hi`.
    pub fn window(&self, lo: f64, hi: f64) -> ScreenProfile {
        let (y, intensity) = self
            .y
            .iter()
            .zip(&self.intensity)
            .filter(|(y, _)| (lo..hi).contains(*y))
            .map(|(y, i)| (*y, *i))
            .unzip();
        ScreenProfile { x_screen: self.x_screen, y, intensity }
    }
}

pub fn double_slit_run(config: &DoubleSlitConfig) -> Result<ScreenProfile> {
    if config.steps == 0 {
        return Err(Error::NoSteps);
    }
    let grid = Grid::Two(config.grid);
    let c = &config.constants;
    let potential = build_potential(&PotentialSpec::DoubleSlit(config.slits), &grid, c)?;
    let b = config.beam;
    let mut psi = gaussian_beam(&config.grid, b.x0, b.y0, b.p0, b.sigma_x, b.sigma_y, c)?;
    let mut prop = SplitStep::new(&potential, config.dt, c)?;
    let mask = config.absorber.map(|a| a.mask(&config.grid));

    let ix = config.screen_index()?;
    let ny = config.grid.y.len();
    let dv = grid.cell_volume();
    let mut intensity = vec![0.0; ny];
    let mut peak_beyond = 0.0f64;
    for _ in 0..config.steps {
        prop.step(&mut psi)?;
        if let Some(m) = &mask {
            let amps = psi.amplitudes_mut();
            amps.iter_mut().zip(m).for_each(|(z, w)| *z *= w);
        }
        let amps = psi.amplitudes();
        for (acc, z) in intensity.iter_mut().zip(&amps[ix * ny..(ix + 1) * ny]) {
            *acc += z.norm_sqr() * config.dt;
        }
        let beyond: f64 = amps[(ix + 1) * ny..].iter().map(|z| z.norm_sqr()).sum::<f64>() * dv;
        peak_beyond = peak_beyond.max(beyond);
    }
    if peak_beyond < config.min_screen_probability {
        return Err(Error::ScreenNotReached(peak_beyond));
    }
    Ok(ScreenProfile {
        x_screen: config.grid.x.coordinate(ix),
        y: config.grid.y.coordinates(),
        intensity,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FringeAnalysis {
    /// Sub-sample positions of local maxima above the threshold, ascending.
    pub maxima: Vec<f64>,
    /// The maximum nearest `y = 0`.
    pub central: Option<f64>,
    /// Mean distance from the central maximum to its immediate neighbours.
    pub spacing: Option<f64>,
}

/// Default height threshold relative to the global maximum.
pub const FRINGE_THRESHOLD: f64 = 0.05;

/// A maximum must rise above the deeper of its flanking saddles by this
/// fraction of its own height. Interference minima go nearly to zero; the
/// shallow ripple of a single-slit envelope does not.
pub const FRINGE_PROMINENCE: f64 = 0.5;

/// Topographic prominence of `i[j]`: its height above the higher of the two
/// saddles separating it from strictly higher ground. A side that reaches the
/// edge without higher ground imposes no saddle; the global peak measures
/// from the lowest sample.
fn prominence(i: &[f64], j: usize) -> f64 {
    let side = |range: &mut dyn Iterator<Item = usize>| {
        let mut low = i[j];
        for n in range {
            if i[n] > i[j] {
                return (low, true);
            }
            low = low.min(i[n]);
        }
        (low, false)
    };
    let (left, lh) = side(&mut (0..j).rev());
    let (right, rh) = side(&mut (j + 1..i.len()));
    let saddle = match (lh, rh) {
        (true, true) => left.max(right),
        (true, false) => left,
        (false, true) => right,
        (false, false) => left.min(right),
    };
    i[j] - saddle
}

/// Prominent local maxima of the profile whose height is at least
/// `rel_threshold` times the global maximum, refined by a three-point
/// parabola.
pub fn analyze_fringes(profile: &ScreenProfile, rel_threshold: f64) -> FringeAnalysis {
    let i = &profile.intensity;
    let peak = i.iter().copied().fold(0.0, f64::max);
    let dy = if profile.y.len() > 1 { profile.y[1] - profile.y[0] } else { 0.0 };
    let mut maxima = Vec::new();
    for j in 1..i.len().saturating_sub(1) {
        if i[j] > i[j - 1]
            && i[j] >= i[j + 1]
            && i[j] >= rel_threshold * peak
            && prominence(i, j) >= FRINGE_PROMINENCE * i[j]
        {
            let curvature = i[j - 1] - 2.0 * i[j] + i[j + 1];
            let shift = if curvature < 0.0 { 0.5 * (i[j - 1] - i[j + 1]) / curvature } else { 0.0 };
            maxima.push(profile.y[j] + shift * dy);
        }
    }
    let central_idx = maxima
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .map(|(k, _)| k);
    let central = central_idx.map(|k| maxima[k]);
    let spacing = central_idx.and_then(|k| {
        let gaps: Vec<f64> = [k.checked_sub(1), Some(k + 1)]
            .into_iter()
            .flatten()
            .filter_map(|n| maxima.get(n).map(|y| (y - maxima[k]).abs()))
            .collect();
        (!gaps.is_empty()).then(|| gaps.iter().sum::<f64>() / gaps.len() as f64)
    });
    FringeAnalysis { maxima, central, spacing }
}
