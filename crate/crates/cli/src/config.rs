//! Run configuration read from INI files.
//!
//! Sections: `grid`, `time`, `units`, `particle`, `initial`, `potential`,
//! `screen`, `output`. Every key is validated; unknown sections and keys are
//! rejected. Errors name the offending `section.key`.

use std::path::{Path, PathBuf};

use wavelab::double_slit::{Absorber, Beam, DoubleSlitConfig};
use wavelab::potential::{DoubleSlit, SlitMask};
use wavelab::{Constants, Grid, InitialState, PotentialSpec, Scheme, SimConfig, SpatialGrid, SpatialGrid2D, UnitSystem};

use crate::error::ConfigError;
use crate::ini::{any, non_negative, positive, Fields, Ini};

const SECTIONS: [&str; 8] = ["grid", "time", "units", "particle", "initial", "potential", "screen", "output"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x: AxisSpec,
    pub y: Option<AxisSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeSpec {
    pub dt: f64,
    pub steps: usize,
    pub snapshot_every: usize,
    pub scheme: Scheme,
}

/// Overrides of the unit system's particle constants.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ParticleSpec {
    pub mass: Option<f64>,
    pub hbar: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScreenSpec {
    pub x: f64,
    pub absorber: bool,
    pub absorber_width_x: f64,
    pub absorber_width_y: f64,
    pub min_probability: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SnapshotFormat {
    Csv,
    Binary,
    #[default]
    Both,
}

impl std::str::FromStr for SnapshotFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(SnapshotFormat::Csv),
            "binary" => Ok(SnapshotFormat::Binary),
            "both" => Ok(SnapshotFormat::Both),
            other => Err(format!("unknown format `{other}` (expected csv|binary|both)")),
        }
    }
}

impl std::fmt::Display for SnapshotFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SnapshotFormat::Csv => "csv",
            SnapshotFormat::Binary => "binary",
            SnapshotFormat::Both => "both",
        })
    }
}

impl SnapshotFormat {
    pub fn csv(self) -> bool {
        matches!(self, SnapshotFormat::Csv | SnapshotFormat::Both)
    }

    pub fn binary(self) -> bool {
        matches!(self, SnapshotFormat::Binary | SnapshotFormat::Both)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputSpec {
    pub dir: Option<PathBuf>,
    pub format: SnapshotFormat,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub grid: GridSpec,
    pub time: TimeSpec,
    pub units: UnitSystem,
    pub particle: ParticleSpec,
    pub initial: InitialState,
    pub potential: PotentialSpec,
    pub screen: Option<ScreenSpec>,
    pub output: OutputSpec,
}

fn grid_error(key: String, e: wavelab::Error) -> ConfigError {
    ConfigError::new(key, e.to_string())
}

fn axis(min: f64, max: f64, n: usize, keys: [String; 2]) -> Result<SpatialGrid, ConfigError> {
    let [max_key, n_key] = keys;
    SpatialGrid::new(min, max, n).map_err(|e| match e {
        wavelab::Error::DegenerateInterval(..) => grid_error(max_key, e),
        _ => grid_error(n_key, e),
    })
}

impl GridSpec {
    fn read(ini: &Ini) -> Result<GridSpec, ConfigError> {
        let mut f = Fields::new("grid", ini.section("grid"));
        let x = AxisSpec {
            min: f.req_real("xmin", any, "finite")?,
            max: f.req_real("xmax", any, "finite")?,
            n: f.req("n")?,
        };
        let ymin = f.real("ymin", any, "finite")?;
        let ymax = f.real("ymax", any, "finite")?;
        let ny: Option<usize> = f.opt("ny")?;
        let y = match (ymin, ymax, ny) {
            (None, None, None) => None,
            (Some(min), Some(max), Some(n)) => Some(AxisSpec { min, max, n }),
            _ => {
                let missing = [("ymin", ymin.is_none()), ("ymax", ymax.is_none()), ("ny", ny.is_none())]
                    .into_iter()
                    .find(|(_, m)| *m)
                    .map(|(k, _)| k)
                    .unwrap_or("ny");
                return Err(ConfigError::new(f.key(missing), "2D grids need all of ymin, ymax, ny"));
            }
        };
        f.finish()?;
        let spec = GridSpec { x, y };
        spec.build()?;
        Ok(spec)
    }

    pub fn build(&self) -> Result<Grid, ConfigError> {
        let gx = axis(self.x.min, self.x.max, self.x.n, ["grid.xmax".into(), "grid.n".into()])?;
        Ok(match self.y {
            None => Grid::One(gx),
            Some(y) => {
                let gy = axis(y.min, y.max, y.n, ["grid.ymax".into(), "grid.ny".into()])?;
                Grid::Two(SpatialGrid2D::new(gx, gy))
            }
        })
    }

    fn write(&self, ini: &mut Ini) {
        let mut e = vec![("xmin", num(self.x.min)), ("xmax", num(self.x.max)), ("n", self.x.n.to_string())];
        if let Some(y) = self.y {
            e.extend([("ymin", num(y.min)), ("ymax", num(y.max)), ("ny", y.n.to_string())]);
        }
        ini.push("grid", e);
    }
}

impl TimeSpec {
    fn read(ini: &Ini) -> Result<TimeSpec, ConfigError> {
        let mut f = Fields::new("time", ini.section("time"));
        let dt = f.req_real("dt", positive, "positive")?;
        let steps: usize = f.req("steps")?;
        if steps == 0 {
            return Err(ConfigError::new("time.steps", "must be at least 1"));
        }
        let snapshot_every = f.opt("snapshot_every")?.unwrap_or(0);
        if snapshot_every != 0 && !steps.is_multiple_of(snapshot_every) {
            return Err(ConfigError::new(
                "time.snapshot_every",
                format!("must divide time.steps = {steps} (or be 0 for final-only)"),
            ));
        }
        let scheme = f.opt("scheme")?.unwrap_or_default();
        f.finish()?;
        Ok(TimeSpec { dt, steps, snapshot_every, scheme })
    }

    fn write(&self, ini: &mut Ini) {
        ini.push(
            "time",
            vec![
                ("dt", num(self.dt)),
                ("steps", self.steps.to_string()),
                ("snapshot_every", self.snapshot_every.to_string()),
                ("scheme", self.scheme.to_string()),
            ],
        );
    }
}

fn read_initial(ini: &Ini, grid: &Grid) -> Result<InitialState, ConfigError> {
    let mut f = Fields::new("initial", ini.section("initial"));
    let kind: String = f.req("type")?;
    let state = match kind.as_str() {
        "gaussian" => InitialState::Gaussian {
            x0: f.req_real("x0", any, "finite")?,
            p0: f.req_real("p0", any, "finite")?,
            sigma: f.req_real("sigma", positive, "positive")?,
        },
        "plane_wave" => InitialState::PlaneWave { mode: f.req("mode")? },
        "gaussian_beam" => InitialState::GaussianBeam {
            x0: f.req_real("x0", any, "finite")?,
            y0: f.req_real("y0", any, "finite")?,
            p0: f.req_real("p0", any, "finite")?,
            sigma_x: f.req_real("sigma", positive, "positive")?,
            sigma_y: f.req_real("sigma_y", positive, "positive")?,
        },
        other => {
            return Err(ConfigError::new(
                "initial.type",
                format!("unknown type `{other}` (expected gaussian|plane_wave|gaussian_beam)"),
            ))
        }
    };
    f.finish()?;
    let two_d = matches!(grid, Grid::Two(_));
    match (&state, two_d) {
        (InitialState::GaussianBeam { .. }, false) => {
            return Err(ConfigError::new("initial.type", "gaussian_beam needs a 2D grid (grid.ymin, grid.ymax, grid.ny)"))
        }
        (InitialState::Gaussian { .. } | InitialState::PlaneWave { .. }, true) => {
            return Err(ConfigError::new("initial.type", format!("{kind} needs a 1D grid; use gaussian_beam in 2D")))
        }
        (InitialState::PlaneWave { mode }, false) => {
            let half = (grid.len() / 2) as i64;
            if *mode < -half || *mode >= half {
                return Err(ConfigError::new("initial.mode", format!("must lie in [-{half}, {half})")));
            }
        }
        _ => {}
    }
    Ok(state)
}

fn write_initial(state: &InitialState, ini: &mut Ini) {
    let e = match *state {
        InitialState::Gaussian { x0, p0, sigma } => {
            vec![("type", "gaussian".into()), ("x0", num(x0)), ("p0", num(p0)), ("sigma", num(sigma))]
        }
        InitialState::PlaneWave { mode } => vec![("type", "plane_wave".into()), ("mode", mode.to_string())],
        InitialState::GaussianBeam { x0, y0, p0, sigma_x, sigma_y } => vec![
            ("type", "gaussian_beam".into()),
            ("x0", num(x0)),
            ("y0", num(y0)),
            ("p0", num(p0)),
            ("sigma", num(sigma_x)),
            ("sigma_y", num(sigma_y)),
        ],
    };
    ini.push("initial", e);
}

fn read_potential(ini: &Ini, grid: &Grid) -> Result<PotentialSpec, ConfigError> {
    let Some(section) = ini.section("potential") else {
        return Ok(PotentialSpec::Free);
    };
    let mut f = Fields::new("potential", Some(section));
    let kind: String = f.req("type")?;
    let spec = match kind.as_str() {
        "free" => PotentialSpec::Free,
        "harmonic" => PotentialSpec::Harmonic { omega: f.req_real("omega", positive, "positive")? },
        "square_well" => PotentialSpec::SquareWell {
            depth: f.req_real("depth", non_negative, "non-negative")?,
            width: f.req_real("width", positive, "positive")?,
        },
        "barrier" => PotentialSpec::Barrier {
            height: f.req_real("height", any, "finite")?,
            width: f.req_real("width", positive, "positive")?,
            center: f.req_real("center", any, "finite")?,
        },
        "double_slit" => {
            let ds = DoubleSlit {
                barrier_height: f.req_real("barrier_height", non_negative, "non-negative")?,
                barrier_x: f.req_real("barrier_x", any, "finite")?,
                barrier_thickness: f.req_real("barrier_thickness", positive, "positive")?,
                slit_separation: f.req_real("slit_separation", positive, "positive")?,
                slit_width: f.req_real("slit_width", non_negative, "non-negative")?,
                open: f.opt::<SlitMask>("open")?.unwrap_or_default(),
            };
            if ds.slit_separation <= ds.slit_width {
                return Err(ConfigError::new("potential.slit_separation", "must exceed potential.slit_width"));
            }
            if !matches!(grid, Grid::Two(_)) {
                return Err(ConfigError::new("potential.type", "double_slit needs a 2D grid"));
            }
            PotentialSpec::DoubleSlit(ds)
        }
        "tabulated" => {
            let raw: String = f.req("values")?;
            let values = raw
                .split(',')
                .map(|v| v.trim().parse::<f64>().ok().filter(|x| x.is_finite()))
                .collect::<Option<Vec<f64>>>()
                .ok_or_else(|| ConfigError::new("potential.values", "expected comma-separated finite numbers"))?;
            if values.len() != grid.len() {
                return Err(ConfigError::new(
                    "potential.values",
                    format!("expected {} values (one per grid sample), got {}", grid.len(), values.len()),
                ));
            }
            PotentialSpec::Tabulated { values }
        }
        other => {
            return Err(ConfigError::new(
                "potential.type",
                format!("unknown type `{other}` (expected free|harmonic|square_well|barrier|double_slit|tabulated)"),
            ))
        }
    };
    f.finish()?;
    Ok(spec)
}

fn write_potential(spec: &PotentialSpec, ini: &mut Ini) {
    let mut e = vec![("type", spec.kind().to_string())];
    match spec {
        PotentialSpec::Free => {}
        PotentialSpec::Harmonic { omega } => e.push(("omega", num(*omega))),
        PotentialSpec::SquareWell { depth, width } => e.extend([("depth", num(*depth)), ("width", num(*width))]),
        PotentialSpec::Barrier { height, width, center } => {
            e.extend([("height", num(*height)), ("width", num(*width)), ("center", num(*center))])
        }
        PotentialSpec::DoubleSlit(ds) => e.extend([
            ("barrier_height", num(ds.barrier_height)),
            ("barrier_x", num(ds.barrier_x)),
            ("barrier_thickness", num(ds.barrier_thickness)),
            ("slit_separation", num(ds.slit_separation)),
            ("slit_width", num(ds.slit_width)),
            ("open", ds.open.to_string()),
        ]),
        PotentialSpec::Tabulated { values } => {
            e.push(("values", values.iter().map(|v| num(*v)).collect::<Vec<_>>().join(", ")))
        }
    }
    ini.push("potential", e);
}

impl ScreenSpec {
    fn read(ini: &Ini, grid: &Grid) -> Result<Option<ScreenSpec>, ConfigError> {
        let Some(section) = ini.section("screen") else {
            return Ok(None);
        };
        let defaults = DoubleSlitConfig::default();
        let absorber = defaults.absorber.expect("default absorber");
        let mut f = Fields::new("screen", Some(section));
        let spec = ScreenSpec {
            x: f.req_real("x", any, "finite")?,
            absorber: f.opt("absorber")?.unwrap_or(true),
            absorber_width_x: f.real("absorber_width_x", non_negative, "non-negative")?.unwrap_or(absorber.width_x),
            absorber_width_y: f.real("absorber_width_y", non_negative, "non-negative")?.unwrap_or(absorber.width_y),
            min_probability: f
                .real("min_probability", non_negative, "non-negative")?
                .unwrap_or(defaults.min_screen_probability),
        };
        f.finish()?;
        let gx = grid.x_axis();
        if gx.nearest_index(spec.x).is_none() {
            return Err(ConfigError::new(
                "screen.x",
                format!("must lie inside [{}, {})", gx.x_min(), gx.x_max()),
            ));
        }
        Ok(Some(spec))
    }

    fn write(&self, ini: &mut Ini) {
        ini.push(
            "screen",
            vec![
                ("x", num(self.x)),
                ("absorber", self.absorber.to_string()),
                ("absorber_width_x", num(self.absorber_width_x)),
                ("absorber_width_y", num(self.absorber_width_y)),
                ("min_probability", num(self.min_probability)),
            ],
        );
    }
}

/// Shortest decimal that parses back to the same `f64`.
fn num(v: f64) -> String {
    format!("{v:?}")
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
        RunConfig::from_ini(&Ini::parse(text)?)
    }

    pub fn load(path: &Path) -> Result<RunConfig, ConfigError> {
        let bytes = std::fs::read(path)
            .map_err(|e| ConfigError::new(path.display().to_string(), format!("cannot read config: {e}")))?;
        let text = String::from_utf8(bytes)
            .map_err(|_| ConfigError::new(path.display().to_string(), "config is not valid UTF-8"))?;
        RunConfig::parse(&text)
    }

    pub fn from_ini(ini: &Ini) -> Result<RunConfig, ConfigError> {
        if let Some(s) = ini.sections.iter().find(|s| !SECTIONS.contains(&s.name.as_str())) {
            return Err(ConfigError::new(s.name.clone(), format!("unknown section (expected one of {})", SECTIONS.join(", "))));
        }
        let grid = GridSpec::read(ini)?;
        let built = grid.build()?;
        let time = TimeSpec::read(ini)?;
        if time.scheme == Scheme::CrankNicolson && matches!(built, Grid::Two(_)) {
            return Err(ConfigError::new("time.scheme", "crank_nicolson supports 1D grids only"));
        }

        let mut f = Fields::new("units", ini.section("units"));
        let units: UnitSystem = f.opt("system")?.unwrap_or_default();
        f.finish()?;

        let mut f = Fields::new("particle", ini.section("particle"));
        let particle = ParticleSpec {
            mass: f.real("mass", positive, "positive")?,
            hbar: f.real("hbar", positive, "positive")?,
        };
        f.finish()?;
        if units == UnitSystem::Si && particle.hbar.is_some() {
            return Err(ConfigError::new("particle.hbar", "hbar is fixed by the SI table; set it only in natural units"));
        }

        let initial = read_initial(ini, &built)?;
        let potential = read_potential(ini, &built)?;
        let screen = ScreenSpec::read(ini, &built)?;

        let mut f = Fields::new("output", ini.section("output"));
        let output = OutputSpec {
            dir: f.opt::<String>("dir")?.map(PathBuf::from),
            format: f.opt("format")?.unwrap_or_default(),
        };
        f.finish()?;

        Ok(RunConfig { grid, time, units, particle, initial, potential, screen, output })
    }

    pub fn to_ini(&self) -> Ini {
        let mut ini = Ini::default();
        self.grid.write(&mut ini);
        self.time.write(&mut ini);
        ini.push("units", vec![("system", self.units.to_string())]);
        let mut p = Vec::new();
        if let Some(m) = self.particle.mass {
            p.push(("mass", num(m)));
        }
        if let Some(h) = self.particle.hbar {
            p.push(("hbar", num(h)));
        }
        if !p.is_empty() {
            ini.push("particle", p);
        }
        write_initial(&self.initial, &mut ini);
        write_potential(&self.potential, &mut ini);
        if let Some(s) = &self.screen {
            s.write(&mut ini);
        }
        let mut o = vec![("format", self.output.format.to_string())];
        if let Some(d) = &self.output.dir {
            o.insert(0, ("dir", d.display().to_string()));
        }
        ini.push("output", o);
        ini
    }

    pub fn constants(&self) -> Constants {
        let mut c = Constants::new(self.units);
        if let Some(m) = self.particle.mass {
            c = c.with_mass(m);
        }
        if let Some(h) = self.particle.hbar {
            c = c.with_hbar(h);
        }
        c
    }

    pub fn built_grid(&self) -> Grid {
        self.grid.build().expect("grid validated at parse time")
    }

    pub fn sim_config(&self) -> SimConfig {
        SimConfig {
            grid: self.built_grid(),
            constants: self.constants(),
            potential: self.potential.clone(),
            initial: self.initial.clone(),
            dt: self.time.dt,
            steps: self.time.steps,
            snapshot_every: self.time.snapshot_every,
            scheme: self.time.scheme,
        }
    }

    /// The two-slit scenario described by this config.
    pub fn double_slit(&self) -> Result<DoubleSlitConfig, ConfigError> {
        let Grid::Two(grid) = self.built_grid() else {
            return Err(ConfigError::new("grid.ny", "the double slit needs a 2D grid"));
        };
        let PotentialSpec::DoubleSlit(slits) = self.potential else {
            return Err(ConfigError::new("potential.type", "the double slit needs potential.type = double_slit"));
        };
        let InitialState::GaussianBeam { x0, y0, p0, sigma_x, sigma_y } = self.initial else {
            return Err(ConfigError::new("initial.type", "the double slit needs initial.type = gaussian_beam"));
        };
        let screen = self.screen.ok_or_else(|| ConfigError::new("screen.x", "the double slit needs a [screen] section"))?;
        if self.time.scheme != Scheme::SplitStep {
            return Err(ConfigError::new("time.scheme", "the double slit runs split_step only"));
        }
        Ok(DoubleSlitConfig {
            grid,
            constants: self.constants(),
            slits,
            beam: Beam { x0, y0, p0, sigma_x, sigma_y },
            dt: self.time.dt,
            steps: self.time.steps,
            screen_x: screen.x,
            absorber: screen
                .absorber
                .then_some(Absorber { width_x: screen.absorber_width_x, width_y: screen.absorber_width_y }),
            min_screen_probability: screen.min_probability,
        })
    }

    /// A config that reproduces `ds` through [`RunConfig::double_slit`].
    pub fn from_double_slit(ds: &DoubleSlitConfig) -> RunConfig {
        let axis = |g: &SpatialGrid| AxisSpec { min: g.x_min(), max: g.x_max(), n: g.len() };
        let nat = Constants::new(ds.constants.unit_system);
        let absorber = ds.absorber;
        RunConfig {
            grid: GridSpec { x: axis(&ds.grid.x), y: Some(axis(&ds.grid.y)) },
            time: TimeSpec { dt: ds.dt, steps: ds.steps, snapshot_every: 0, scheme: Scheme::SplitStep },
            units: ds.constants.unit_system,
            particle: ParticleSpec {
                mass: (ds.constants.mass != nat.mass).then_some(ds.constants.mass),
                hbar: (ds.constants.hbar != nat.hbar).then_some(ds.constants.hbar),
            },
            initial: InitialState::GaussianBeam {
                x0: ds.beam.x0,
                y0: ds.beam.y0,
                p0: ds.beam.p0,
                sigma_x: ds.beam.sigma_x,
                sigma_y: ds.beam.sigma_y,
            },
            potential: PotentialSpec::DoubleSlit(ds.slits),
            screen: Some(ScreenSpec {
                x: ds.screen_x,
                absorber: absorber.is_some(),
                absorber_width_x: absorber.map_or(0.0, |a| a.width_x),
                absorber_width_y: absorber.map_or(0.0, |a| a.width_y),
                min_probability: ds.min_screen_probability,
            }),
            output: OutputSpec::default(),
        }
    }
}
