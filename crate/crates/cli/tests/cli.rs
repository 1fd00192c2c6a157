use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use wavelab_cli::io::{decode_snapshot, encode_snapshot, parse_csv, SERIES_HEADER};
use wavelab_cli::RunConfig;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_wavelab"));
    c.env_remove("WAVELAB_OUTPUT_DIR");
    c
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(cmd: &mut Command) -> (i32, String, String) {
    let Output { status, stdout, stderr } = cmd.output().unwrap();
    (status.code().unwrap(), String::from_utf8(stdout).unwrap(), String::from_utf8(stderr).unwrap())
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn free_gaussian() -> String {
    std::fs::read_to_string(configs().join("free_gaussian.ini")).unwrap()
}

#[test]
fn evolve_writes_series_snapshots_and_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("run");
    let (code, stdout, _) = run(bin().arg("evolve").arg(configs().join("free_gaussian.ini")).arg("--output-dir").arg(&out));
    assert_eq!(code, 0, "{stdout}");
    let (header, rows) = parse_csv(&std::fs::read_to_string(out.join("series.csv")).unwrap()).unwrap();
    assert_eq!(header.join(","), SERIES_HEADER);
    assert_eq!(rows.len(), 201);
    assert!(rows.iter().all(|r| (r[1] - 1.0).abs() < 1e-9));
    assert!((rows[200][2] - 4.0).abs() < 1e-6);
    for step in [0, 50, 100, 150, 200] {
        assert!(out.join(format!("snapshot_{step:06}.wvlb")).exists());
        assert!(out.join(format!("snapshot_{step:06}.csv")).exists());
    }
    let manifest = std::fs::read_to_string(out.join("manifest.ini")).unwrap();
    let echoed = RunConfig::from_manifest(&manifest).unwrap();
    let mut original = RunConfig::parse(&free_gaussian()).unwrap();
    original.output.dir = Some(out.clone());
    assert_eq!(echoed, original);
    assert!(!out.join("manifest.ini.tmp").exists());
}

#[test]
fn final_only_mode_writes_one_snapshot() {
    let tmp = tempfile::tempdir().unwrap();
    let text = free_gaussian().replace("snapshot_every = 50", "snapshot_every = 0").replace("format = both", "format = binary");
    let cfg = write_config(tmp.path(), "c.ini", &text);
    let out = tmp.path().join("o");
    let (code, ..) = run(bin().arg("evolve").arg(&cfg).arg("--output-dir").arg(&out));
    assert_eq!(code, 0);
    let mut snaps: Vec<String> = std::fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.starts_with("snapshot_"))
        .collect();
    snaps.sort();
    assert_eq!(snaps, ["snapshot_000200.wvlb"]);
}

#[test]
fn missing_key_exits_2_and_names_it() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "c.ini", &free_gaussian().replace("dt = 0.01\n", ""));
    let (code, _, stderr) = run(bin().arg("evolve").arg(&cfg).arg("--output-dir").arg(tmp.path().join("o")));
    assert_eq!(code, 2);
    assert!(stderr.contains("time.dt"), "{stderr}");
    assert!(!tmp.path().join("o").exists());
}

#[test]
fn corrupt_and_missing_configs_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let binary = tmp.path().join("bin.ini");
    std::fs::write(&binary, [0xff, 0xfe, 0x00, 0x41]).unwrap();
    for cfg in [binary, tmp.path().join("absent.ini")] {
        let (code, ..) = run(bin().arg("evolve").arg(&cfg));
        assert_eq!(code, 2);
        let (code, ..) = run(bin().arg("double-slit").arg(&cfg));
        assert_eq!(code, 2);
    }
    let garbled = write_config(tmp.path(), "g.ini", "[grid\nxmin = 1\n");
    let (code, _, stderr) = run(bin().arg("double-slit").arg(&garbled));
    assert_eq!(code, 2);
    assert!(stderr.contains("line 1"), "{stderr}");
}

#[test]
fn output_dir_precedence_is_flag_then_config_then_env() {
    let tmp = tempfile::tempdir().unwrap();
    let env_dir = tmp.path().join("from_env");
    let cfg_dir = tmp.path().join("from_config");
    let flag_dir = tmp.path().join("from_flag");
    let text = free_gaussian().replace("steps = 200", "steps = 10").replace("snapshot_every = 50", "snapshot_every = 0");
    let plain = write_config(tmp.path(), "plain.ini", &text);
    let with_dir = write_config(
        tmp.path(),
        "with_dir.ini",
        &text.replace("[output]\n", &format!("[output]\ndir = {}\n", cfg_dir.display())),
    );

    assert_eq!(run(bin().env("WAVELAB_OUTPUT_DIR", &env_dir).arg("evolve").arg(&plain)).0, 0);
    assert!(env_dir.join("manifest.ini").exists());
    assert_eq!(run(bin().env("WAVELAB_OUTPUT_DIR", &env_dir).arg("evolve").arg(&with_dir)).0, 0);
    assert!(cfg_dir.join("manifest.ini").exists());
    let r = run(bin().env("WAVELAB_OUTPUT_DIR", &env_dir).arg("evolve").arg(&with_dir).arg("--output-dir").arg(&flag_dir));
    assert_eq!(r.0, 0);
    assert!(flag_dir.join("manifest.ini").exists());
}

#[test]
fn outputs_are_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = configs().join("harmonic_cn.ini");
    for d in ["a", "b"] {
        assert_eq!(run(bin().arg("evolve").arg(&cfg).arg("--output-dir").arg(tmp.path().join(d))).0, 0);
    }
    for name in ["series.csv", "snapshot_000000.wvlb", "snapshot_002000.wvlb"] {
        let a = std::fs::read(tmp.path().join("a").join(name)).unwrap();
        let b = std::fs::read(tmp.path().join("b").join(name)).unwrap();
        assert!(a == b, "{name} differs");
    }
}

#[test]
fn runtime_failures_exit_3() {
    let tmp = tempfile::tempdir().unwrap();
    let blocker = tmp.path().join("file");
    std::fs::write(&blocker, "not a directory").unwrap();
    let (code, ..) = run(bin().arg("evolve").arg(configs().join("free_gaussian.ini")).arg("--output-dir").arg(blocker.join("sub")));
    assert_eq!(code, 3);
}

#[test]
fn observables_report_check_and_corrupt_input() {
    let tmp = tempfile::tempdir().unwrap();
    let text = free_gaussian()
        .replace("p0 = 2", "p0 = 3")
        .replace("steps = 200", "steps = 10")
        .replace("snapshot_every = 50", "snapshot_every = 0");
    let cfg = write_config(tmp.path(), "c.ini", &text);
    let out = tmp.path().join("o");
    assert_eq!(run(bin().arg("evolve").arg(&cfg).arg("--output-dir").arg(&out)).0, 0);
    let snap = out.join("snapshot_000010.wvlb");

    let (code, stdout, _) = run(bin().arg("observables").arg("--snapshot").arg(&snap).arg("--check"));
    assert_eq!(code, 0);
    let p_mean: f64 = stdout
        .lines()
        .find_map(|l| l.strip_prefix("p_mean"))
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!((p_mean - 3.0).abs() < 1e-8);
    assert_eq!(run(bin().arg("observables").arg("--snapshot").arg(&snap).arg("--config").arg(&cfg)).0, 0);

    let bytes = std::fs::read(&snap).unwrap();
    let truncated = tmp.path().join("t.wvlb");
    std::fs::write(&truncated, &bytes[..bytes.len() - 5]).unwrap();
    assert_eq!(run(bin().arg("observables").arg("--snapshot").arg(&truncated)).0, 3);
    assert_eq!(run(bin().arg("observables").arg("--snapshot").arg(tmp.path().join("none.wvlb"))).0, 3);

    let doubled = decode_snapshot(&bytes).unwrap().scaled(wavelab::Complex64::new(2.0, 0.0));
    let unnormalized = tmp.path().join("u.wvlb");
    std::fs::write(&unnormalized, encode_snapshot(&doubled)).unwrap();
    assert_eq!(run(bin().arg("observables").arg("--snapshot").arg(&unnormalized).arg("--check")).0, 1);
}

#[test]
fn dispersion_gate_verdicts_and_formats() {
    let (code, stdout, _) = run(bin().args(["dispersion-gate", "--k", "1", "2", "3", "--hbar", "1", "--mass", "1"]));
    assert_eq!(code, 0);
    assert!(stdout.contains("0+0.5i"));
    let second = stdout.split("first_order_time").next().unwrap();
    assert!(second.contains("REJECT"));
    assert!(stdout.split("first_order_time").nth(1).unwrap().contains("ACCEPT"));

    let (code, stdout, _) = run(bin().args(["dispersion-gate", "--k", "0.5", "1", "2", "4", "--machine"]));
    assert_eq!(code, 0);
    assert!(stdout.contains("candidate=second_order_time spread="));
    assert!(stdout.lines().any(|l| l.starts_with("candidate=second_order_time") && l.ends_with("verdict=REJECT")));
    assert!(stdout.lines().any(|l| l.starts_with("candidate=first_order_time") && l.ends_with("verdict=ACCEPT")));
    assert!(stdout.contains("candidate=first_order_time k=4.0 gamma_re=0.0 gamma_im=0.5"));

    assert_eq!(run(bin().args(["dispersion-gate", "--k", "1"])).0, 2);
    assert_eq!(run(bin().args(["dispersion-gate", "--k", "1", "2"])).0, 2);
    assert_eq!(run(bin().args(["dispersion-gate", "--k", "0", "1", "2"])).0, 2);
}

#[test]
fn spectra_bohr_and_photoelectric_tables() {
    let tmp = tempfile::tempdir().unwrap();
    let csv = tmp.path().join("balmer.csv");
    let (code, stdout, _) = run(bin().args(["spectra", "--series", "balmer", "--max-upper", "6", "--csv"]).arg(&csv));
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().count(), 5);
    assert!(stdout.contains("656.1") && stdout.contains("486.0"));
    let (_, rows) = parse_csv(&std::fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| (380e-9..750e-9).contains(&r[2])));

    assert_eq!(run(bin().args(["spectra", "--upper", "3", "--lower", "2"])).0, 0);
    assert_eq!(run(bin().args(["spectra", "--upper", "2", "--lower", "3"])).0, 2);
    assert_eq!(run(bin().args(["spectra", "--upper", "1", "--lower", "0"])).0, 2);
    assert_eq!(run(bin().args(["spectra", "--series", "lyman", "--max-upper", "1"])).0, 2);
    assert_eq!(run(bin().args(["spectra", "--series", "pfund"])).0, 2);

    let (code, stdout, _) = run(bin().args(["bohr", "--n", "1"]));
    assert_eq!(code, 0);
    let row: Vec<&str> = stdout.lines().nth(1).unwrap().split_whitespace().collect();
    assert_eq!(row[2], "1.0000");
    assert!((row[3].parse::<f64>().unwrap() + 13.6057).abs() < 1e-3);
    assert_eq!(run(bin().args(["bohr", "--n", "0"])).0, 2);

    let (code, stdout, _) = run(bin().args(["photoelectric", "--work-function-ev", "2", "--photon-ev", "1.5"]));
    assert_eq!(code, 0);
    assert!(stdout.contains("no emission"));
    let (_, stdout, _) = run(bin().args(["photoelectric", "--work-function-ev", "2", "--photon-ev", "2"]));
    assert!(stdout.contains("no emission"));
    let (_, stdout, _) = run(bin().args(["photoelectric", "--work-function-ev", "2", "--photon-ev", "3"]));
    assert!(stdout.contains("ke_max = 1.000000 eV"));
    assert_eq!(run(bin().args(["photoelectric", "--work-function-ev", "-1", "--photon-ev", "3"])).0, 2);
    assert_eq!(run(bin().args(["photoelectric", "--work-function-ev", "2"])).0, 2);
}

fn summary_value<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(" = ")))
        .unwrap_or_else(|| panic!("{key} missing from {text}"))
}

#[test]
fn double_slit_default_and_single_slit() {
    let tmp = tempfile::tempdir().unwrap();
    let both = tmp.path().join("both");
    let (code, stdout, stderr) = run(bin().arg("double-slit").arg("--output-dir").arg(&both));
    assert_eq!(code, 0, "{stderr}");
    assert!(summary_value(&stdout, "maxima_count").parse::<usize>().unwrap() >= 3);
    let central: f64 = summary_value(&stdout, "central").parse().unwrap();
    assert!(central.abs() < 2.0 * 32.0 / 256.0);
    let (header, rows) = parse_csv(&std::fs::read_to_string(both.join("profile.csv")).unwrap()).unwrap();
    assert_eq!(header, ["y", "intensity"]);
    assert_eq!(rows.len(), 256);
    let manifest = std::fs::read_to_string(both.join("manifest.ini")).unwrap();
    let echo = RunConfig::from_manifest(&manifest).unwrap();
    assert_eq!(echo.double_slit().unwrap(), wavelab::double_slit::DoubleSlitConfig::default());

    let single = tmp.path().join("single");
    let (code, stdout, _) =
        run(bin().arg("double-slit").arg(configs().join("double_slit.ini")).arg("--single-slit").arg("--output-dir").arg(&single));
    assert_eq!(code, 0);
    assert_eq!(summary_value(&stdout, "maxima_count"), "1");
    assert_eq!(summary_value(&stdout, "open"), "upper");
}
