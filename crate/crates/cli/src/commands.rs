//! Subcommands. Each returns `Ok(())` or a [`CliError`] carrying its exit code.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use wavelab::double_slit::{double_slit_run, DoubleSlitConfig};
use wavelab::gate::{run_gate, GateReport, GATE_TOLERANCE};
use wavelab::observe::report;
use wavelab::oldquantum::{
    bohr_state, ev, photoelectric, to_ev, transition, PhotonInput, Series, SpectralLine,
};
use wavelab::potential::SlitMask;
use wavelab::{build_potential, evolve, Complex64, Constants, Potential, UnitSystem};

use crate::config::{RunConfig, SnapshotFormat};
use crate::error::{CliError, CliResult, ConfigError};
use crate::ini::Ini;
use crate::io;

pub const OUTPUT_DIR_ENV: &str = "WAVELAB_OUTPUT_DIR";
pub const DEFAULT_OUTPUT_DIR: &str = "wavelab-out";
pub const MANIFEST: &str = "manifest.ini";

#[derive(Debug, Parser)]
#[command(name = "wavelab", version, about = "Wave mechanics on periodic grids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve a 1D or 2D state from a config file.
    Evolve(EvolveArgs),
    /// Test which wave-equation candidate has a k-independent coefficient.
    DispersionGate(GateArgs),
    /// Hydrogen spectral lines.
    Spectra(SpectraArgs),
    /// Bohr-model orbits.
    Bohr(BohrArgs),
    /// Photoelectric emission for one photon.
    Photoelectric(PhotoArgs),
    /// Two-slit interference on a 2D grid.
    DoubleSlit(DoubleSlitArgs),
    /// Observable report of a binary snapshot.
    Observables(ObservablesArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output directory; overrides `output.dir` and $WAVELAB_OUTPUT_DIR.
    #[arg(long)]
    pub output_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    /// Run config (INI)
    pub config: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Snapshot format; overrides `output.format`.
    #[arg(long)]
    pub format: Option<SnapshotFormat>,
}

#[derive(Debug, Args)]
pub struct GateArgs {
    /// Sample wavenumbers (at least three, all nonzero).
    #[arg(long = "k", num_args = 1.., allow_negative_numbers = true, required = true)]
    pub ks: Vec<f64>,
    /// Reduced Planck constant
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    /// Particle mass
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    /// Maximum pairwise |gamma_i - gamma_j| for a k-independent candidate.
    #[arg(long, default_value_t = GATE_TOLERANCE)]
    pub tolerance: f64,
    /// Flat `key=value` lines instead of tables.
    #[arg(long)]
    pub machine: bool,
}

#[derive(Debug, Args)]
pub struct SpectraArgs {
    /// lyman, balmer or paschen.
    #[arg(long, conflicts_with_all = ["upper", "lower"], required_unless_present_all = ["upper", "lower"])]
    pub series: Option<Series>,
    /// Highest upper level listed for --series.
    #[arg(long, default_value_t = 7)]
    pub max_upper: u64,
    /// Upper level of a single transition (with --lower)
    #[arg(long, requires = "lower")]
    pub upper: Option<u64>,
    /// Lower level of a single transition (with --upper)
    #[arg(long, requires = "upper")]
    pub lower: Option<u64>,
    /// Also write the lines as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BohrArgs {
    /// Principal quantum numbers.
    #[arg(long = "n", num_args = 1.., required = true)]
    pub n: Vec<u64>,
}

#[derive(Debug, Args)]
pub struct PhotoArgs {
    /// Work function in eV
    #[arg(long)]
    pub work_function_ev: f64,
    /// Photon energy in eV
    #[arg(long, conflicts_with = "frequency", required_unless_present = "frequency")]
    pub photon_ev: Option<f64>,
    /// Photon frequency in Hz.
    #[arg(long)]
    pub frequency: Option<f64>,
}

#[derive(Debug, Args)]
pub struct DoubleSlitArgs {
    /// Config file; the built-in default geometry when omitted.
    pub config: Option<PathBuf>,
    /// Close the lower slit.
    #[arg(long)]
    pub single_slit: bool,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Print the default config and exit.
    #[arg(long)]
    pub print_default: bool,
}

#[derive(Debug, Args)]
pub struct ObservablesArgs {
    /// Binary snapshot (.wvlb)
    #[arg(long)]
    pub snapshot: PathBuf,
    /// Take constants and potential from this run config.
    #[arg(long, conflicts_with_all = ["units", "hbar", "mass"])]
    pub config: Option<PathBuf>,
    /// natural or si (without --config; default natural)
    #[arg(long)]
    pub units: Option<UnitSystem>,
    /// Override hbar
    #[arg(long)]
    pub hbar: Option<f64>,
    /// Override the particle mass
    #[arg(long)]
    pub mass: Option<f64>,
    /// Exit 1 unless the norm is 1 within 1e-6 and dx*dp >= hbar/2 - 1e-9.
    #[arg(long)]
    pub check: bool,
}

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Evolve(a) => cmd_evolve(a),
        Command::DispersionGate(a) => cmd_gate(a),
        Command::Spectra(a) => cmd_spectra(a),
        Command::Bohr(a) => cmd_bohr(a),
        Command::Photoelectric(a) => cmd_photoelectric(a),
        Command::DoubleSlit(a) => cmd_double_slit(a),
        Command::Observables(a) => cmd_observables(a),
    }
}

/// Flag, then config, then environment, then [`DEFAULT_OUTPUT_DIR`].
pub fn resolve_output_dir(flag: Option<&Path>, config: Option<&Path>) -> PathBuf {
    flag.or(config)
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(OUTPUT_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT_DIR))
}

fn write_file(dir: &Path, name: &str, contents: &[u8], files: &mut Vec<String>) -> CliResult<()> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
    files.push(name.to_string());
    Ok(())
}

/// Config echo plus a `[manifest]` section; see [`RunConfig::from_manifest`].
pub fn manifest_text(command: &str, config: &RunConfig, seconds: f64, files: &[String]) -> String {
    let mut ini = Ini::default();
    ini.push(
        "manifest",
        vec![
            ("command", command.to_string()),
            ("wavelab_cli_version", env!("CARGO_PKG_VERSION").to_string()),
            ("wavelab_core_version", wavelab::VERSION.to_string()),
            ("wall_time_s", format!("{seconds:.6}")),
            ("files", files.join(", ")),
        ],
    );
    ini.sections.extend(config.to_ini().sections);
    format!("# wavelab run manifest; everything below [manifest] is the effective config\n{ini}")
}

impl RunConfig {
    pub fn from_manifest(text: &str) -> Result<RunConfig, ConfigError> {
        let mut ini = Ini::parse(text)?;
        ini.remove_section("manifest")
            .ok_or_else(|| ConfigError::new("manifest", "not a run manifest"))?;
        RunConfig::from_ini(&ini)
    }
}

fn finish_run(dir: &Path, command: &str, config: &RunConfig, started: Instant, files: &[String]) -> CliResult<()> {
    let text = manifest_text(command, config, started.elapsed().as_secs_f64(), files);
    let path = dir.join(MANIFEST);
    io::write_atomic(&path, text.as_bytes()).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))
}

fn prepare_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::Runtime(format!("{}: {e}", dir.display())))
}

fn cmd_evolve(args: EvolveArgs) -> CliResult<()> {
    let started = Instant::now();
    let mut config = RunConfig::load(&args.config)?;
    if let Some(f) = args.format {
        config.output.format = f;
    }
    let dir = resolve_output_dir(args.output.output_dir.as_deref(), config.output.dir.as_deref());
    config.output.dir = Some(dir.clone());

    let sim = config.sim_config();
    let traj = evolve(&sim).map_err(|e| match e {
        wavelab::Error::ModeOutOfRange { .. } => CliError::Config(ConfigError::new("initial.mode", e.to_string())),
        wavelab::Error::LengthMismatch { .. } => CliError::Config(ConfigError::new("potential.values", e.to_string())),
        other => other.into(),
    })?;

    prepare_dir(&dir)?;
    let mut files = Vec::new();
    write_file(&dir, "series.csv", io::series_csv(&traj.series).as_bytes(), &mut files)?;
    let every = config.time.snapshot_every;
    for (i, snap) in traj.snapshots.iter().enumerate() {
        let step = if every == 0 { config.time.steps } else { i * every };
        let stem = format!("snapshot_{step:06}");
        if config.output.format.binary() {
            write_file(&dir, &format!("{stem}.wvlb"), &io::encode_snapshot(snap), &mut files)?;
        }
        if config.output.format.csv() {
            write_file(&dir, &format!("{stem}.csv"), io::snapshot_csv(snap).as_bytes(), &mut files)?;
        }
    }
    finish_run(&dir, "evolve", &config, started, &files)?;

    let last = traj.series.last().expect("series holds step 0");
    let worst = traj.series.iter().map(|r| (r.report.norm - 1.0).abs()).fold(0.0, f64::max);
    println!("evolved {} steps of {} to t = {}", config.time.steps, config.time.scheme, last.t);
    println!("max |norm - 1| = {worst:.3e}");
    println!("final <x> = {:.10}, <p> = {:.10}, E = {:.10}", last.report.x_mean, last.report.p_mean, last.report.total_energy);
    println!("wrote {} files to {}", files.len() + 1, dir.display());
    Ok(())
}

/// `a+bi` with shortest round-trip decimals and no negative zero.
pub fn format_complex(z: Complex64) -> String {
    let (re, im) = (z.re + 0.0, z.im + 0.0);
    if im < 0.0 {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

fn verdict(r: &GateReport) -> &'static str {
    if r.k_independent {
        "ACCEPT"
    } else {
        "REJECT"
    }
}

fn cmd_gate(args: GateArgs) -> CliResult<()> {
    if args.ks.len() < 3 {
        return Err(CliError::Usage(format!("--k needs at least 3 wavenumbers, got {}", args.ks.len())));
    }
    for (flag, v) in [("--hbar", args.hbar), ("--mass", args.mass), ("--tolerance", args.tolerance)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(CliError::Usage(format!("{flag} must be positive, got {v}")));
        }
    }
    let c = Constants::natural().with_hbar(args.hbar).with_mass(args.mass);
    let (second, first) = run_gate(&args.ks, &c, args.tolerance).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut out = String::new();
    for r in [&second, &first] {
        let name = r.candidate.name();
        if args.machine {
            for s in &r.gamma_samples {
                writeln!(out, "candidate={name} k={:?} gamma_re={:?} gamma_im={:?}", s.k, s.gamma.re + 0.0, s.gamma.im + 0.0)
                    .expect("string write");
            }
            writeln!(out, "candidate={name} spread={:?} verdict={}", r.max_pairwise_spread, verdict(r)).expect("string write");
        } else {
            writeln!(out, "{name}").expect("string write");
            writeln!(out, "  {:>12}  gamma", "k").expect("string write");
            for s in &r.gamma_samples {
                writeln!(out, "  {:>12}  {}", s.k, format_complex(s.gamma)).expect("string write");
            }
            writeln!(out, "  spread {:.3e}: {}", r.max_pairwise_spread, verdict(r)).expect("string write");
        }
    }
    print!("{out}");
    Ok(())
}

fn spectral_table(lines: &[SpectralLine]) -> String {
    let mut out = format!("{:>7} {:>7} {:>14} {:>12} {:>14}\n", "n_upper", "n_lower", "lambda_nm", "energy_eV", "frequency_Hz");
    for l in lines {
        writeln!(
            out,
            "{:>7} {:>7} {:>14.4} {:>12.6} {:>14.6e}",
            l.n_upper,
            l.n_lower,
            l.lambda * 1e9,
            to_ev(l.e_gamma),
            l.frequency
        )
        .expect("string write");
    }
    out
}

fn spectral_csv(lines: &[SpectralLine]) -> String {
    let mut out = String::from("n_upper,n_lower,lambda_m,energy_j,frequency_hz\n");
    for l in lines {
        writeln!(out, "{},{},{:.16e},{:.16e},{:.16e}", l.n_upper, l.n_lower, l.lambda, l.e_gamma, l.frequency)
            .expect("string write");
    }
    out
}

fn cmd_spectra(args: SpectraArgs) -> CliResult<()> {
    let c = Constants::si();
    let usage = |e: wavelab::Error| CliError::Usage(e.to_string());
    let lines = match (args.series, args.upper, args.lower) {
        (Some(series), _, _) => {
            if args.max_upper <= series.lower() {
                return Err(CliError::Usage(format!(
                    "--max-upper must exceed the series' lower level {}",
                    series.lower()
                )));
            }
            series.lines(args.max_upper, &c).map_err(usage)?
        }
        (None, Some(upper), Some(lower)) => vec![transition(upper, lower, &c).map_err(usage)?],
        _ => return Err(CliError::Usage("give --series or both --upper and --lower".into())),
    };
    print!("{}", spectral_table(&lines));
    if let Some(path) = &args.csv {
        fs::write(path, spectral_csv(&lines)).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn cmd_bohr(args: BohrArgs) -> CliResult<()> {
    let c = Constants::si();
    let a0 = c.em().map_err(CliError::runtime)?.a0;
    println!("{:>4} {:>14} {:>10} {:>12} {:>14} {:>8}", "n", "r_m", "r_over_a0", "energy_eV", "speed_m_s", "L_hbar");
    for &n in &args.n {
        let s = bohr_state(n, &c).map_err(|e| CliError::Usage(e.to_string()))?;
        println!(
            "{:>4} {:>14.6e} {:>10.4} {:>12.6} {:>14.6e} {:>8.4}",
            n,
            s.r_n,
            s.r_n / a0,
            to_ev(s.e_n),
            s.v_n,
            s.l_n / c.hbar
        );
    }
    Ok(())
}

fn cmd_photoelectric(args: PhotoArgs) -> CliResult<()> {
    let c = Constants::si();
    let photon = match (args.photon_ev, args.frequency) {
        (Some(e), None) if e > 0.0 && e.is_finite() => PhotonInput::Energy(ev(e)),
        (None, Some(f)) => PhotonInput::Frequency(f),
        (Some(e), None) => return Err(CliError::Usage(format!("--photon-ev must be positive, got {e}"))),
        _ => return Err(CliError::Usage("give exactly one of --photon-ev or --frequency".into())),
    };
    let r = photoelectric(photon, ev(args.work_function_ev), &c).map_err(|e| CliError::Usage(e.to_string()))?;
    println!("photon energy       {:.6} eV", to_ev(r.photon_energy));
    println!("work function       {:.6} eV", to_ev(r.work_function));
    println!("threshold frequency {:.6e} Hz", r.threshold_frequency);
    match r.ke_max {
        Some(ke) => println!("emission            ke_max = {:.6} eV", to_ev(ke)),
        None => println!("no emission"),
    }
    Ok(())
}

fn fringe_summary(cfg: &DoubleSlitConfig, profile: &wavelab::double_slit::ScreenProfile) -> CliResult<String> {
    let a = cfg.analyze(profile);
    let opt = |v: Option<f64>| v.map_or("none".to_string(), |x| format!("{x:.16e}"));
    let (lo, hi) = cfg.screen_window();
    let maxima = a.maxima.iter().map(|y| format!("{y:.16e}")).collect::<Vec<_>>().join(", ");
    let mut out = String::new();
    writeln!(out, "screen_x = {:.16e}", profile.x_screen).expect("string write");
    writeln!(out, "window = {lo:.16e}, {hi:.16e}").expect("string write");
    writeln!(out, "open = {}", cfg.slits.open).expect("string write");
    writeln!(out, "maxima_count = {}", a.maxima.len()).expect("string write");
    writeln!(out, "maxima = {maxima}").expect("string write");
    writeln!(out, "central = {}", opt(a.central)).expect("string write");
    writeln!(out, "spacing = {}", opt(a.spacing)).expect("string write");
    writeln!(out, "fraunhofer_spacing = {:.16e}", cfg.fraunhofer_spacing()?).expect("string write");
    Ok(out)
}

fn cmd_double_slit(args: DoubleSlitArgs) -> CliResult<()> {
    let started = Instant::now();
    let mut config = match &args.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::from_double_slit(&DoubleSlitConfig::default()),
    };
    if args.print_default {
        print!("{}", RunConfig::from_double_slit(&DoubleSlitConfig::default()).to_ini());
        return Ok(());
    }
    if args.single_slit {
        if let wavelab::PotentialSpec::DoubleSlit(ds) = &mut config.potential {
            ds.open = SlitMask::Upper;
        }
    }
    let ds = config.double_slit()?;
    let dir = resolve_output_dir(args.output.output_dir.as_deref(), config.output.dir.as_deref());
    config.output.dir = Some(dir.clone());

    let profile = double_slit_run(&ds)?;
    let summary = fringe_summary(&ds, &profile)?;
    prepare_dir(&dir)?;
    let mut files = Vec::new();
    write_file(&dir, "profile.csv", io::profile_csv(&profile).as_bytes(), &mut files)?;
    write_file(&dir, "fringes.txt", summary.as_bytes(), &mut files)?;
    finish_run(&dir, "double-slit", &config, started, &files)?;
    print!("{summary}");
    Ok(())
}

fn cmd_observables(args: ObservablesArgs) -> CliResult<()> {
    let bytes = fs::read(&args.snapshot).map_err(|e| CliError::Runtime(format!("{}: {e}", args.snapshot.display())))?;
    let psi = io::decode_snapshot(&bytes).map_err(|e| CliError::Runtime(format!("{}: {e}", args.snapshot.display())))?;
    let (constants, potential) = match &args.config {
        Some(path) => {
            let cfg = RunConfig::load(path)?;
            if cfg.built_grid() != *psi.grid() {
                return Err(CliError::Config(ConfigError::new("grid", "snapshot grid differs from the config grid")));
            }
            let c = cfg.constants();
            let pot = build_potential(&cfg.potential, psi.grid(), &c)?;
            (c, pot)
        }
        None => {
            let mut c = Constants::new(args.units.unwrap_or_default());
            if let Some(h) = args.hbar {
                c = c.with_hbar(h);
            }
            if let Some(m) = args.mass {
                c = c.with_mass(m);
            }
            (c, Potential::free(*psi.grid()))
        }
    };
    let r = report(&psi, &potential, &constants)?;
    println!("t                   {:.16e}", psi.t());
    for (name, v) in [
        ("norm", r.norm),
        ("x_mean", r.x_mean),
        ("x_var", r.x_var),
        ("p_mean", r.p_mean),
        ("p_var", r.p_var),
        ("kinetic", r.kinetic_energy),
        ("potential", r.potential_energy),
        ("total", r.total_energy),
        ("uncertainty", r.uncertainty_product),
    ] {
        println!("{name:<19} {v:.16e}");
    }
    if args.check {
        let mut failures = Vec::new();
        if (r.norm - 1.0).abs() > 1e-6 {
            failures.push(format!("norm {} differs from 1 by more than 1e-6", r.norm));
        }
        if r.uncertainty_product < constants.hbar / 2.0 - 1e-9 {
            failures.push(format!("dx*dp = {} is below hbar/2", r.uncertainty_product));
        }
        if !failures.is_empty() {
            return Err(CliError::CheckFailed(failures.join("; ")));
        }
        println!("check               ok");
    }
    Ok(())
}
