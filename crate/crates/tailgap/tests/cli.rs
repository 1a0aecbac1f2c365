//! End-to-end tests of the compiled binary: argument handling, exit
//! codes, file outputs, environment fallbacks, and bit-exact agreement
//! between printed numbers and direct library calls.

use std::path::Path;
use std::process::{Command, Output};

use tailgap::distributions::ParetoMixture;
use tailgap::estimators::{hill_estimator, pareto_mle};
use tailgap::experiments::emit_figure1;
use tailgap::metaprob::density_gap;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tailgap"));
    // Keep runs hermetic regardless of the ambient environment.
    cmd.env_remove("TAILGAP_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf8 stderr")
}

const TWO_STATE: &[&str] = &["--alphas", "1,3", "--phis", "0.5,0.5", "--xmin", "1"];

fn with_mixture(cmd: &str, extra: &[&str]) -> Vec<String> {
    let mut args = vec![cmd.to_string()];
    args.extend(TWO_STATE.iter().map(|s| s.to_string()));
    args.extend(extra.iter().map(|s| s.to_string()));
    args
}

#[test]
fn exit_codes_cover_success_usage_and_domain() {
    let ok = run(&[
        "eval", "--alphas", "2", "--phis", "1", "--xmin", "1", "--x", "1",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout_of(&ok).contains("x,pdf,survival"));

    let usage = run(&["eval", "--no-such-flag"]);
    assert_eq!(usage.status.code(), Some(1));
    assert!(!stderr_of(&usage).is_empty());

    let unknown = run(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(1));

    let domain = run(&[
        "eval", "--alphas", "2", "--phis", "1", "--xmin", "1", "--x", "0.25",
    ]);
    assert_eq!(domain.status.code(), Some(2));
    assert!(stderr_of(&domain).contains("support"));

    let bad_weights = run(&[
        "eval", "--alphas", "1,3", "--phis", "0.6,0.6", "--xmin", "1", "--x", "2",
    ]);
    assert_eq!(bad_weights.status.code(), Some(2));
    assert!(stderr_of(&bad_weights).contains("weights sum"));

    let help = run(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
}

#[test]
fn gap_output_matches_library_bits() {
    let out = run(&with_mixture("gap", &["--x", "10,1000"])
        .iter()
        .map(String::as_str)
        .collect::<Vec<_>>());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let mix = ParetoMixture::from_parts(&[1.0, 3.0], &[0.5, 0.5], 1.0).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "x,mixture_density,mean_param_density,gap,asymptotic_gap"
    );
    for (line, &x) in lines.zip(&[10.0, 1000.0]) {
        let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let report = density_gap(&mix, x).unwrap();
        assert_eq!(cells[1].to_bits(), report.mixture_density.to_bits());
        assert_eq!(cells[2].to_bits(), report.mean_param_density.to_bits());
        assert_eq!(cells[3].to_bits(), report.gap.to_bits());
    }
}

#[test]
fn figure1_writes_structured_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.csv");
    let args = with_mixture(
        "figure1",
        &[
            "--xmax",
            "1e6",
            "--points",
            "60",
            "--out",
            path.to_str().unwrap(),
        ],
    );
    let out = run(&args.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));

    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 61, "header plus 60 data rows");
    assert_eq!(lines[0].split(',').count(), 4);
    let mut prev_x = 0.0;
    for line in &lines[1..] {
        let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cells.len(), 4);
        assert!(cells[0] > prev_x, "x strictly increasing");
        prev_x = cells[0];
    }

    // The file is exactly the library emitter's output.
    let mix = ParetoMixture::from_parts(&[1.0, 3.0], &[0.5, 0.5], 1.0).unwrap();
    let expected = emit_figure1(&mix, 1e6, 60).unwrap().to_csv_string();
    assert_eq!(text, expected);
}

#[test]
fn sample_is_seed_deterministic_and_env_fallback_works() {
    let dir = tempfile::tempdir().unwrap();
    let path_a = dir.path().join("a.csv");
    let path_b = dir.path().join("b.csv");

    let base = [
        "sample", "--alphas", "1.5,3", "--phis", "0.5,0.5", "--xmin", "1", "--n", "200",
    ];
    let mut args_a: Vec<&str> = base.to_vec();
    args_a.extend(["--seed", "99", "--out", path_a.to_str().unwrap()]);
    assert_eq!(run(&args_a).status.code(), Some(0));

    // Same seed via the environment variable instead of the flag.
    let mut args_b: Vec<&str> = base.to_vec();
    args_b.extend(["--out", path_b.to_str().unwrap()]);
    let out = bin()
        .args(&args_b)
        .env("TAILGAP_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    let bytes_a = std::fs::read(&path_a).unwrap();
    let bytes_b = std::fs::read(&path_b).unwrap();
    assert_eq!(bytes_a, bytes_b, "flag seed and env seed agree");

    // No seed anywhere defaults to 0 and stays deterministic.
    let out1 = run(&base);
    let out2 = run(&base);
    assert_eq!(out1.stdout, out2.stdout);
    let mut args_zero: Vec<&str> = base.to_vec();
    args_zero.extend(["--seed", "0"]);
    assert_eq!(run(&args_zero).stdout, out1.stdout);

    // A different seed changes the draw.
    let mut args_c: Vec<&str> = base.to_vec();
    args_c.extend(["--seed", "100"]);
    assert_ne!(run(&args_c).stdout, run(&args_zero).stdout);

    // Malformed env value is a usage error.
    let bad = bin()
        .args(base)
        .env("TAILGAP_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn sample_then_estimate_round_trips_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("data.csv");
    let args = [
        "sample",
        "--alphas",
        "2",
        "--phis",
        "1",
        "--xmin",
        "1",
        "--n",
        "5000",
        "--seed",
        "7",
        "--out",
        path.to_str().unwrap(),
    ];
    assert_eq!(run(&args).status.code(), Some(0));

    // Parse the emitted CSV the same way the binary does: last field.
    let samples: Vec<f64> = std::fs::read_to_string(&path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(samples.len(), 5000);

    let hill_out = run(&[
        "estimate",
        "--input",
        path.to_str().unwrap(),
        "--method",
        "hill",
        "--k",
        "250",
    ]);
    assert_eq!(hill_out.status.code(), Some(0));
    let text = stdout_of(&hill_out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let want = hill_estimator(&samples, 250).unwrap();
    assert_eq!(row[0], "hill");
    assert_eq!(
        row[1].parse::<f64>().unwrap().to_bits(),
        want.alpha_hat.to_bits()
    );
    assert_eq!(row[2].parse::<usize>().unwrap(), 250);
    assert_eq!(row[3].parse::<usize>().unwrap(), 5000);

    // k via fraction: floor(0.05 * 5000) = 250, same estimate.
    let frac_out = run(&[
        "estimate",
        "--input",
        path.to_str().unwrap(),
        "--method",
        "hill",
        "--k-fraction",
        "0.05",
    ]);
    assert_eq!(stdout_of(&frac_out), text);

    let mle_out = run(&[
        "estimate",
        "--input",
        path.to_str().unwrap(),
        "--method",
        "mle",
        "--xmin",
        "1",
    ]);
    let mle_text = stdout_of(&mle_out);
    let mle_row: Vec<&str> = mle_text.lines().nth(1).unwrap().split(',').collect();
    let want_mle = pareto_mle(&samples, 1.0).unwrap();
    assert_eq!(
        mle_row[1].parse::<f64>().unwrap().to_bits(),
        want_mle.alpha_hat.to_bits()
    );

    let loglog_out = run(&[
        "estimate",
        "--input",
        path.to_str().unwrap(),
        "--method",
        "loglog",
    ]);
    assert_eq!(loglog_out.status.code(), Some(0));
    let ll: f64 = stdout_of(&loglog_out)
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((ll - 2.0).abs() < 0.4, "loglog alpha_hat = {ll}");

    // Flag misuse is a usage error.
    let both = run(&[
        "estimate",
        "--input",
        path.to_str().unwrap(),
        "--method",
        "hill",
        "--k",
        "10",
        "--k-fraction",
        "0.1",
    ]);
    assert_eq!(both.status.code(), Some(1));
    let missing = run(&[
        "estimate",
        "--input",
        path.to_str().unwrap(),
        "--method",
        "mle",
    ]);
    assert_eq!(missing.status.code(), Some(1));
    // Excessive k on real data is a domain error.
    let too_deep = run(&[
        "estimate",
        "--input",
        path.to_str().unwrap(),
        "--method",
        "hill",
        "--k",
        "5000",
    ]);
    assert_eq!(too_deep.status.code(), Some(2));
}

#[test]
fn estimate_rejects_missing_and_malformed_input() {
    let absent = run(&[
        "estimate",
        "--input",
        "/no/such/file.csv",
        "--method",
        "loglog",
    ]);
    assert_eq!(absent.status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("junk.csv");
    std::fs::write(&path, "value\n1.5\nnot-a-number\n").unwrap();
    let bad = run(&[
        "estimate",
        "--input",
        path.to_str().unwrap(),
        "--method",
        "loglog",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr_of(&bad).contains("not numeric"));
}

fn write_study_config(path: &Path) {
    let config = r#"{
        "model": {"kind": "mixture", "alphas": [1.5, 3.0], "phis": [0.5, 0.5], "x_min": 1.0},
        "n_samples": 2000,
        "n_trials": 12,
        "base_seed": 5,
        "k_fractions": [0.1, 0.01]
    }"#;
    std::fs::write(path, config).unwrap();
}

#[test]
fn study_bias_runs_from_config_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("study.json");
    write_study_config(&cfg_path);
    let out_a = dir.path().join("report_a.json");
    let out_b = dir.path().join("report_b.json");

    for out in [&out_a, &out_b] {
        let run_out = run(&[
            "study-bias",
            "--config",
            cfg_path.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(
            run_out.status.code(),
            Some(0),
            "stderr: {}",
            stderr_of(&run_out)
        );
    }
    let bytes_a = std::fs::read(&out_a).unwrap();
    let bytes_b = std::fs::read(&out_b).unwrap();
    assert_eq!(bytes_a, bytes_b);

    let parsed: serde_json::Value = serde_json::from_slice(&bytes_a).unwrap();
    assert_eq!(parsed["tail_alpha"], 1.5);
    assert_eq!(parsed["alpha_bar"], 2.25);
    assert_eq!(parsed["trials"].as_array().unwrap().len(), 12);
    assert_eq!(parsed["hill"].as_array().unwrap().len(), 2);
    assert!(parsed["mle"]["median"].as_f64().unwrap() > 0.0);

    // Config and inline flags cannot be mixed.
    let conflict = run(&[
        "study-bias",
        "--config",
        cfg_path.to_str().unwrap(),
        "--seed",
        "3",
    ]);
    assert_eq!(conflict.status.code(), Some(1));
}

#[test]
fn study_stable_runs_inline() {
    let out = run(&[
        "study-stable",
        "--stable",
        "1.8",
        "--n",
        "2000",
        "--trials",
        "8",
        "--k-fractions",
        "0.1",
        "--seed",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["tail_alpha"], 1.8);
    assert_eq!(parsed["alpha_bar"], serde_json::Value::Null);
    assert_eq!(parsed["mle"], serde_json::Value::Null);

    // Stability index 2 has no power tail to study.
    let gauss = run(&[
        "study-stable",
        "--stable",
        "2.0",
        "--n",
        "2000",
        "--trials",
        "8",
    ]);
    assert_eq!(gauss.status.code(), Some(2));

    // Mixture flags on the stable study are a usage error.
    let mixed = run(&[
        "study-stable",
        "--alphas",
        "1,3",
        "--phis",
        "0.5,0.5",
        "--xmin",
        "1",
        "--n",
        "2000",
        "--trials",
        "8",
    ]);
    assert_eq!(mixed.status.code(), Some(1));
}

#[test]
fn kconst_reports_constant_and_convergence() {
    let args = with_mixture("kconst", &["--xmax", "1e6", "--points", "5"]);
    let out = run(&args.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("# k_value=5.0000000000000000e-1 alpha_star=1.0000000000000000e0"));
    assert_eq!(lines.next().unwrap(), "x,scaled_density");
    let last = text.lines().last().unwrap();
    let scaled: f64 = last.split(',').nth(1).unwrap().parse().unwrap();
    assert!((scaled - 0.5).abs() / 0.5 < 1e-9, "scaled = {scaled}");
}

#[test]
fn meta_mixture_study_runs_end_to_end() {
    let out = run(&[
        "study-bias",
        "--meta",
        "uniform:1.2,3",
        "--nodes",
        "8",
        "--xmin",
        "1",
        "--n",
        "1000",
        "--trials",
        "6",
        "--k-fractions",
        "0.1",
        "--seed",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // Discretized uniform family: alpha_bar at the midpoint, eight states.
    let alphas = parsed["config"]["model"]["alphas"].as_array().unwrap();
    assert_eq!(alphas.len(), 8);
    let alpha_bar = parsed["alpha_bar"].as_f64().unwrap();
    assert!((alpha_bar - 2.1).abs() < 1e-9);
}
