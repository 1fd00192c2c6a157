//! Real potentials materialized on a grid.

use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::grid::Grid;

/// Which openings of a double-slit barrier are open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SlitMask {
    #[default]
    Both,
    /// Only the slit at `y = +separation/2`.
    Upper,
    /// Only the slit at `y = -separation/2`.
    Lower,
}

impl std::str::FromStr for SlitMask {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "both" => Ok(SlitMask::Both),
            "upper" => Ok(SlitMask::Upper),
            "lower" => Ok(SlitMask::Lower),
            other => Err(format!("unknown slit mask `{other}` (expected both|upper|lower)")),
        }
    }
}

impl std::fmt::Display for SlitMask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SlitMask::Both => "both",
            SlitMask::Upper => "upper",
            SlitMask::Lower => "lower",
        })
    }
}

/// Barrier wall across `y` at `barrier_x`, with slits centered at
/// `y = +-slit_separation/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleSlit {
    pub barrier_height: f64,
    pub barrier_x: f64,
    pub barrier_thickness: f64,
    pub slit_separation: f64,
    pub slit_width: f64,
    pub open: SlitMask,
}

impl DoubleSlit {
    fn is_wall(&self, x: f64, y: f64) -> bool {
        if (x - self.barrier_x).abs() >= self.barrier_thickness / 2.0 {
            return false;
        }
        let half_w = self.slit_width / 2.0;
        let centre = self.slit_separation / 2.0;
        let in_upper = (y - centre).abs() < half_w;
        let in_lower = (y + centre).abs() < half_w;
        let open = match self.open {
            SlitMask::Both => in_upper || in_lower,
            SlitMask::Upper => in_upper,
            SlitMask::Lower => in_lower,
        };
        !open
    }
}

/// Potential kinds. Widths are full widths; 1D kinds applied to a 2D grid
/// depend on `x` only, except `Harmonic`, which is isotropic.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialSpec {
    Free,
    Harmonic { omega: f64 },
    /// `-depth` on `|x| < width/2`.
    SquareWell { depth: f64, width: f64 },
    /// `height` on `|x - center| < width/2`.
    Barrier { height: f64, width: f64, center: f64 },
    DoubleSlit(DoubleSlit),
    /// One value per sample, in storage order.
    Tabulated { values: Vec<f64> },
}

impl PotentialSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            PotentialSpec::Free => "free",
            PotentialSpec::Harmonic { .. } => "harmonic",
            PotentialSpec::SquareWell { .. } => "square_well",
            PotentialSpec::Barrier { .. } => "barrier",
            PotentialSpec::DoubleSlit(_) => "double_slit",
            PotentialSpec::Tabulated { .. } => "tabulated",
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::BadPotentialSpec(format!("{}: {what}", self.kind())));
        let finite = |v: f64| v.is_finite();
        match *self {
            PotentialSpec::Free => Ok(()),
            PotentialSpec::Harmonic { omega } if !(omega > 0.0 && finite(omega)) => bad("omega must be positive"),
            PotentialSpec::SquareWell { depth, width } if !(depth >= 0.0 && finite(depth)) || !(width > 0.0 && finite(width)) => {
                bad("depth must be non-negative and width positive")
            }
            PotentialSpec::Barrier { height, width, center }
                if !(finite(height) && finite(center)) || !(width > 0.0 && finite(width)) =>
            {
                bad("height and center must be finite, width positive")
            }
            PotentialSpec::DoubleSlit(ds) => {
                if !(ds.barrier_height >= 0.0 && finite(ds.barrier_height)) {
                    bad("barrier_height must be non-negative")
                } else if !(ds.barrier_thickness > 0.0 && finite(ds.barrier_thickness)) {
                    bad("barrier_thickness must be positive")
                } else if !(ds.slit_width >= 0.0 && finite(ds.slit_width)) {
                    bad("slit_width must be non-negative")
                } else if !(ds.slit_separation > ds.slit_width && finite(ds.slit_separation)) {
                    bad("slit_separation must exceed slit_width")
                } else if !finite(ds.barrier_x) {
                    bad("barrier_x must be finite")
                } else {
                    Ok(())
                }
            }
            PotentialSpec::Tabulated { ref values } if values.iter().any(|v| !v.is_finite()) => {
                bad("values must be finite")
            }
            _ => Ok(()),
        }
    }
}

/// A potential together with its values on a specific grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    spec: PotentialSpec,
    grid: Grid,
    values: Vec<f64>,
}

impl Potential {
    pub fn free(grid: Grid) -> Self {
        Potential {
            spec: PotentialSpec::Free,
            values: vec![0.0; grid.len()],
            grid,
        }
    }

    pub fn spec(&self) -> &PotentialSpec {
        &self.spec
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_free(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }
}

pub fn build_potential(spec: &PotentialSpec, grid: &Grid, constants: &Constants) -> Result<Potential> {
    spec.validate()?;
    let sample = |f: &dyn Fn(f64, f64) -> f64| -> Vec<f64> {
        match grid {
            Grid::One(g) => g.coordinates().into_iter().map(|x| f(x, 0.0)).collect(),
            Grid::Two(g) => {
                let ys = g.y.coordinates();
                g.x.coordinates()
                    .into_iter()
                    .flat_map(|x| ys.iter().map(move |&y| f(x, y)))
                    .collect()
            }
        }
    };
    let values = match spec {
        PotentialSpec::Free => vec![0.0; grid.len()],
        PotentialSpec::Harmonic { omega } => {
            let k = 0.5 * constants.mass * omega * omega;
            sample(&|x, y| k * (x * x + y * y))
        }
        PotentialSpec::SquareWell { depth, width } => {
            sample(&|x, _| if x.abs() < width / 2.0 { -depth } else { 0.0 })
        }
        PotentialSpec::Barrier { height, width, center } => {
            sample(&|x, _| if (x - center).abs() < width / 2.0 { *height } else { 0.0 })
        }
        PotentialSpec::DoubleSlit(ds) => {
            if !matches!(grid, Grid::Two(_)) {
                return Err(Error::KindRequires2D("double_slit"));
            }
            sample(&|x, y| if ds.is_wall(x, y) { ds.barrier_height } else { 0.0 })
        }
        PotentialSpec::Tabulated { values } => {
            if values.len() != grid.len() {
                return Err(Error::BadPotentialSpec(format!(
                    "tabulated: {} values for {} samples",
                    values.len(),
                    grid.len()
                )));
            }
            values.clone()
        }
    };
    Ok(Potential {
        spec: spec.clone(),
        grid: *grid,
        values,
    })
}
