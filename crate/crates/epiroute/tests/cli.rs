//! End-to-end checks of the `epiroute` binary: subcommand plumbing, exit
//! codes, and byte-level determinism of emitted tables.

use std::io::Write;
use std::process::{Command, Output};

fn epiroute(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epiroute"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &std::path::Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(body.as_bytes()).unwrap();
    path.to_string_lossy().into_owned()
}

const TIMEOUT_SCENARIO: &str = r#"
[scenario]
n_relays = 100
horizon = 40.0
backend = "analytic"
runs = 200
master_seed = 5

[rate]
lambda = 0.37043
lambda_scope = "fluid"

[scheme]
kind = "timeout"
epsilon = 0.001
"#;

#[test]
fn analytic_reports_reference_values() {
    let dir = std::env::temp_dir().join("epiroute_cli_analytic");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = write_config(&dir, "scenario.toml", TIMEOUT_SCENARIO);
    let out = epiroute(&["analytic", "--config", &cfg]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("t_g_star = 31.07722099882"), "{text}");
    assert!(text.contains("b_star = 1864.79369354"), "{text}");
    assert!(text.contains("# lambda_fluid = 0.37043"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("t,susceptible,")));
}

#[test]
fn simulate_is_byte_deterministic_and_seed_sensitive() {
    let dir = std::env::temp_dir().join("epiroute_cli_sim");
    std::fs::create_dir_all(&dir).unwrap();
    let body = TIMEOUT_SCENARIO
        .replace("backend = \"analytic\"", "backend = \"meeting\"")
        .replace("lambda_scope = \"fluid\"", "lambda_scope = \"pairwise\"")
        .replace("epsilon = 0.001", "epsilon = 0.1")
        .replace("horizon = 40.0", "horizon = 1.0");
    let cfg = write_config(&dir, "sim.toml", &body);
    let a = epiroute(&["simulate", "--config", &cfg]);
    let b = epiroute(&["simulate", "--config", &cfg]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "same config + seed must emit identical bytes");
    let c = epiroute(&["simulate", "--config", &cfg, "--seed", "6"]);
    assert_ne!(a.stdout, c.stdout, "a different seed must change the ensemble");
}

#[test]
fn config_errors_exit_1() {
    let dir = std::env::temp_dir().join("epiroute_cli_err");
    std::fs::create_dir_all(&dir).unwrap();
    // epsilon = 0: lossless delivery is out of the timeout scheme's reach
    let body = TIMEOUT_SCENARIO.replace("epsilon = 0.001", "epsilon = 0.0");
    let cfg = write_config(&dir, "bad.toml", &body);
    let out = epiroute(&["analytic", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(1));
    let msg = String::from_utf8(out.stderr).unwrap();
    assert!(msg.contains("lossless"), "stderr should explain: {msg}");

    // missing scope on an explicit rate
    let body = TIMEOUT_SCENARIO.replace("lambda_scope = \"fluid\"\n", "");
    let cfg = write_config(&dir, "noscope.toml", &body);
    assert_eq!(epiroute(&["analytic", "--config", &cfg]).status.code(), Some(1));

    // nonexistent file is a runtime error
    let out = epiroute(&["analytic", "--config", "/nonexistent.toml"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_and_xi_tables_render() {
    let dir = std::env::temp_dir().join("epiroute_cli_sweep");
    std::fs::create_dir_all(&dir).unwrap();
    let body = format!(
        "{}\n[sweep]\naxis = \"epsilon\"\nvalues = [0.5, 0.2, 0.1]\n",
        TIMEOUT_SCENARIO
    );
    let cfg = write_config(&dir, "sweep.toml", &body);
    let out = epiroute(&["sweep", "--config", &cfg]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // analytic buffer column equals (n / lambda) ln(1/eps) at the optimum
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 4);
    for (row, eps) in rows[1..].iter().zip([0.5_f64, 0.2, 0.1]) {
        let buffer: f64 = row.split(',').nth(3).unwrap().parse().unwrap();
        let expect = 100.0 / 0.37043 * (1.0 / eps).ln();
        assert!(
            (buffer - expect).abs() / expect < 1e-9,
            "eps = {eps}: {buffer} vs {expect}"
        );
    }

    let xi_body = r#"
[scenario]
n_relays = 100
horizon = 20000.0
backend = "analytic"

[rate]
lambda = 0.14817
lambda_scope = "fluid"

[scheme]
kind = "antipacket"
kappa = 1.0

[xi]
t_d_values = [5.0, 40.0, 80.0]
"#;
    let cfg = write_config(&dir, "xi.toml", xi_body);
    let out = epiroute(&["xi", "--config", &cfg]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let xis: Vec<f64> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("t_d"))
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    assert_eq!(xis.len(), 3);
    assert!(xis.windows(2).all(|w| w[1] <= w[0]), "{xis:?}");
}

#[test]
fn validate_single_criterion_runs() {
    let out = epiroute(&["validate", "--criterion", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("acceptance  2") && text.contains("PASS"), "{text}");
    // criterion 5 is a documented calibration failure: exit code 2
    let out = epiroute(&["validate", "--criterion", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL") && text.contains("exact-chain"), "{text}");
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("epiroute_cli_out");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = write_config(&dir, "scenario.toml", TIMEOUT_SCENARIO);
    let out_path = dir.join("table.csv");
    let out = epiroute(&[
        "analytic",
        "--config",
        &cfg,
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert!(written.contains("t_g_star"));
}
