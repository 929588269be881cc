mod common;

use std::f64::consts::PI;
use std::fs;
use std::process::Command;

use common::{adaptive_simpson, maxwellian, scenario_state};
use vlasov::app::config::KEYS;
use vlasov::app::output::{parse_diagnostics_csv, DIAGNOSTICS_FILE, META_FILE};
use vlasov::app::{
    make_scenario, parse_config, run_config, write_outputs, RunSummary, ScenarioKind,
    ScenarioParams,
};
use vlasov::diagnostics::compute_invariants;
use vlasov::fields::FieldState;
use vlasov::integrator::Backend;
use vlasov::Error;

const SMALL_RUN: &str = "scenario = two_stream\norder = 2\ndof_per_dim = 24\ntau = 0.25\nt_end = 2\nsnapshot_times = 0, 2\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_vlasov"))
}

#[test]
fn config_defaults_and_validation() {
    let cfg = parse_config("").unwrap();
    assert_eq!(cfg.scenario, ScenarioKind::LandauWeak);
    assert_eq!(
        (cfg.order, cfg.dof_per_dim, cfg.tau, cfg.t_end),
        (3, 64, 0.1, 50.0)
    );
    assert_eq!(cfg.backend, Backend::Sldg);
    assert!(!cfg.limiter);
    assert_eq!(
        parse_config("order=3\ndof_per_dim=64").unwrap().n_cells(),
        21
    );
    assert!(matches!(parse_config("order=0"), Err(Error::Config { .. })));
    match parse_config("tau = 0.1\nbogus = 3") {
        Err(Error::Config { line, key, .. }) => assert_eq!((line, key.as_str()), (2, "bogus")),
        other => panic!("{other:?}"),
    }
    assert!(parse_config("tau = fast").is_err());
    assert!(parse_config("dof_per_dim = 3\norder = 2").is_err());
    assert!(parse_config("scenario = vortex").is_err());
}

#[test]
fn scenario_examples() {
    let uniform = make_scenario(ScenarioKind::Uniform, ScenarioParams::default()).unwrap();
    let oracle = adaptive_simpson(&maxwellian, -uniform.v_max, uniform.v_max, 1e-14);
    let (_, f) = scenario_state(ScenarioKind::Uniform, ScenarioParams::default(), 32, 3);
    let r = compute_invariants(&f, &FieldState::zero(32, f.grid().basis()), 0.0);
    assert!((r.mass - uniform.domain_length).abs() <= 1e-8 * uniform.domain_length);
    assert!((oracle - 1.0).abs() < 1e-8);

    let ts = make_scenario(ScenarioKind::TwoStream, ScenarioParams::default()).unwrap();
    let vb: f64 = 2.4;
    let expect = (-vb * vb / 2.0).exp() / (2.0 * PI).sqrt() * (1.0 + 1e-3);
    assert!(((ts.f0)(0.0, 0.0) - expect).abs() < 1e-15);
    assert!((ts.domain_length - 10.0 * PI).abs() < 1e-12);
    // Beam tails at the velocity cutoff are negligible.
    assert!((ts.f0)(0.0, ts.v_max) < 2e-7 * (ts.f0)(0.0, vb));

    let (_, f) = scenario_state(ScenarioKind::LandauWeak, ScenarioParams::default(), 21, 2);
    let r = compute_invariants(&f, &FieldState::zero(21, f.grid().basis()), 0.0);
    assert!(r.momentum.abs() <= 1e-12 * r.mass);
    assert!(matches!(
        ScenarioKind::parse("nope"),
        Err(Error::UnknownScenario(_))
    ));
}

#[test]
fn outputs_round_trip_and_echo_every_key() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = parse_config(SMALL_RUN).unwrap();
    let (out, summary) = run_config(&cfg).unwrap();
    let files = write_outputs(&out.records, &out.snapshots, &cfg, &summary, dir.path()).unwrap();
    assert_eq!(files.len(), 4);
    let text = fs::read_to_string(dir.path().join(DIAGNOSTICS_FILE)).unwrap();
    assert_eq!(text.lines().count(), out.records.len() + 1);
    let back = parse_diagnostics_csv(&text).unwrap();
    for (a, b) in out.records.iter().zip(&back) {
        for (x, y) in a.to_array().iter().zip(b.to_array()) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }
    let meta = fs::read_to_string(dir.path().join(META_FILE)).unwrap();
    for key in KEYS {
        assert!(
            meta.lines().any(|l| l.starts_with(&format!("{key} = "))),
            "missing {key}"
        );
    }
    assert!(meta.contains("n_cells = 12") && meta.contains("actual_dof_per_dim = 24"));
    let snap = fs::read_to_string(dir.path().join("snapshot_t2.000.csv")).unwrap();
    assert_eq!(snap.lines().count(), 12);
    assert!(snap.lines().all(|l| l.split(',').count() == 12));

    let empty = tempfile::tempdir().unwrap();
    write_outputs(&[], &[], &cfg, &RunSummary::default(), empty.path()).unwrap();
    let text = fs::read_to_string(empty.path().join(DIAGNOSTICS_FILE)).unwrap();
    assert_eq!(text.lines().count(), 1);
}

#[test]
fn cli_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.cfg");
    fs::write(&config, format!("# small two-stream run\n{SMALL_RUN}")).unwrap();
    let mut outputs = Vec::new();
    for name in ["a", "b"] {
        let out = dir.path().join(name);
        let status = bin()
            .args(["run", "--config"])
            .arg(&config)
            .arg("--output")
            .arg(&out)
            .status()
            .unwrap();
        assert!(status.success());
        outputs.push(fs::read(out.join(DIAGNOSTICS_FILE)).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn cli_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfg");
    fs::write(&bad, "order = 0\n").unwrap();
    assert_eq!(
        bin()
            .args(["run", "--config"])
            .arg(&bad)
            .output()
            .unwrap()
            .status
            .code(),
        Some(1)
    );
    let missing = dir.path().join("missing.cfg");
    assert_eq!(
        bin()
            .args(["run", "--config"])
            .arg(&missing)
            .output()
            .unwrap()
            .status
            .code(),
        Some(1)
    );

    let listing = bin().arg("scenarios").output().unwrap();
    assert!(listing.status.success());
    let text = String::from_utf8(listing.stdout).unwrap();
    for kind in ScenarioKind::ALL {
        assert!(text.contains(kind.name()));
    }

    let check = bin().arg("check").output().unwrap();
    assert_eq!(
        check.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&check.stdout)
    );
}
