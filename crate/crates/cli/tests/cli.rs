use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_exotic-landau"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("exotic-landau-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

#[test]
fn verify_default_passes_with_stable_schema() {
    let dir = scratch("verify");
    let out = run(&["--out", dir.to_str().unwrap(), "verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.len() >= 25);
    for c in checks {
        for key in ["name", "paper_anchor", "value", "tolerance", "status"] {
            assert!(c.get(key).is_some(), "missing {key}");
        }
        let status = c["status"].as_str().unwrap();
        assert!(status == "pass" || status == "documented-mismatch", "{c}");
    }
    assert!(checks.iter().any(|c| c["status"] == "documented-mismatch"));
    assert!(dir.join("verify.json").exists());
}

#[test]
fn critical_point_exits_with_usage_code() {
    let dir = scratch("critical");
    let cfg = dir.join("critical.conf");
    fs::write(&cfg, "# at the critical point\ntheta = 1.0\n").unwrap();
    let out = run(&["--config", cfg.to_str().unwrap(), "verify"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("critical"));
}

#[test]
fn unknown_subcommand_and_config_key_are_usage_errors() {
    assert_eq!(run(&["fig5"]).status.code(), Some(2));
    let dir = scratch("badkey");
    let cfg = dir.join("bad.conf");
    fs::write(&cfg, "thetta = 0.2\n").unwrap();
    assert_eq!(run(&["--config", cfg.to_str().unwrap(), "pnd"]).status.code(), Some(2));
}

#[test]
fn density_output_is_byte_identical_across_runs() {
    let (a, b) = (scratch("det-a"), scratch("det-b"));
    for d in [&a, &b] {
        let out = run(&["--out", d.to_str().unwrap(), "density", "--m", "2"]);
        assert!(out.status.success());
    }
    let x = fs::read(a.join("density1_m2.csv")).unwrap();
    let y = fs::read(b.join("density1_m2.csv")).unwrap();
    assert_eq!(x, y);
    let text = String::from_utf8(x).unwrap();
    assert!(text.contains("arg_z,t,density"));
    assert!(text.contains("# abs_z_prime=1"));
}

#[test]
fn uncertainty_surface_is_at_least_one() {
    let dir = scratch("fsurf");
    assert!(run(&["--out", dir.to_str().unwrap(), "uncertainty"]).status.success());
    let text = fs::read_to_string(dir.join("fsurface3.csv")).unwrap();
    assert!(text.starts_with("# r=1.414"));
    let min = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('v'))
        .map(|l| l.rsplit(',').next().unwrap().parse::<f64>().unwrap())
        .fold(f64::INFINITY, f64::min);
    assert!(min >= 1.0);
}

#[test]
fn flags_override_config_file() {
    let dir = scratch("override");
    let cfg = dir.join("run.conf");
    fs::write(&cfg, "theta = 0.2\nmass = 2\n").unwrap();
    let out = run(&["--config", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap(), "propagator", "--time", "0.5"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let table = fs::read_to_string(dir.join("propagator_convergence.csv")).unwrap();
    for line in table.lines().filter(|l| !l.starts_with('#') && !l.starts_with('n')) {
        let err: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(err < 1e-10, "{line}");
    }
}

#[test]
fn wigner_report_is_json() {
    let dir = scratch("wigner");
    let out = run(&["--out", dir.to_str().unwrap(), "wigner", "--k-max", "8"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["mapped_resolution_deviation"].as_f64().unwrap() < 1e-6);
    assert_eq!(v["unitarity"].as_array().unwrap().len(), 2);
}

#[test]
fn figure_files_are_written() {
    let dir = scratch("figs");
    let d = dir.to_str().unwrap();
    for cmd in [&["pnd"][..], &["qvcs-density", "--m", "2"], &["classical", "--periods", "1"]] {
        let mut args = vec!["--out", d];
        args.extend_from_slice(cmd);
        assert!(run(&args).status.success(), "{cmd:?}");
    }
    for f in ["pnd2_m2_n2.csv", "pnd2_m2_n10.csv", "pnd2_m10_n2.csv", "qvcsdensity4_m2_fixed_theta.csv", "classical.csv"] {
        assert!(dir.join(f).exists(), "{f}");
    }
    let header = fs::read_to_string(dir.join("classical.csv")).unwrap();
    assert!(header.lines().any(|l| l == "t,x1,x2,p1,p2,P1,P2,K1,K2,H"));
}
