mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use common::bundled_config;
use leafstab::cli::config::RunConfig;
use serde_json::Value;
use tempfile::TempDir;

const BUNDLED: [&str; 4] = ["castalia.cfg", "castalia_i123.cfg", "vehicle_ref.cfg", "rigid_body.cfg"];

fn leafstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leafstab")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}); stderr: {}", String::from_utf8_lossy(&out.stderr))
    })
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Writes a bundled config with `edit` applied to its JSON value.
fn variant(dir: &TempDir, name: &str, base: &str, edit: impl FnOnce(&mut Value)) -> PathBuf {
    let mut value: Value = serde_json::from_str(&std::fs::read_to_string(bundled_config(base)).unwrap()).unwrap();
    edit(&mut value);
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string_pretty(&value).unwrap()).unwrap();
    path
}

fn verdict(doc: &Value, system: &str) -> String {
    doc["report"][system]["verdict"].as_str().unwrap().to_string()
}

#[test]
fn castalia_case_study() {
    let out = leafstab(&["castalia"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let radii = doc["orbit"]["radii"].as_array().unwrap();
    assert_eq!(radii.len(), 2);
    assert!((radii[0]["radius"].as_f64().unwrap() - 219.31).abs() < 0.05);
    assert_eq!(radii[0]["feasible"], false);
    assert!((radii[1]["radius"].as_f64().unwrap() - 778.39).abs() < 0.05);
    assert_eq!(radii[1]["feasible"], true);
    assert_eq!(doc["signs"]["k1_less_than_k3"], true);
    assert_eq!(doc["signs"]["spin_exceeds_gradient"], true);
    assert!(doc["conclusion"].as_str().unwrap().contains("I2 > I1 > I3"));
    assert!(doc["timing"].is_null());
}

#[test]
fn timing_is_reported_on_request() {
    let doc = json(&leafstab(&["castalia", "--timing"]));
    assert!(doc["timing"]["elapsed_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn spacecraft_verdicts_for_the_bundled_configs() {
    let out = leafstab(&["spacecraft-stability", "--config", path_str(&bundled_config("castalia.cfg"))]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(verdict(&doc, "spacecraft"), "stable_sufficient");
    assert_eq!(doc["report"]["spacecraft"]["definiteness"]["class"], "positive_definite");
    let radii = doc["resolved"]["spacecraft"]["orbit"]["radii"].as_array().unwrap();
    assert_eq!(radii.len(), 2);
    assert!(radii.iter().all(|r| r["k"].as_array().unwrap().len() == 3));

    let doc = json(&leafstab(&["spacecraft-stability", "--config", path_str(&bundled_config("castalia_i123.cfg"))]));
    assert_eq!(verdict(&doc, "spacecraft"), "inconclusive");
}

#[test]
fn underwater_verdicts() {
    let doc = json(&leafstab(&["underwater-stability", "--config", path_str(&bundled_config("vehicle_ref.cfg"))]));
    assert_eq!(verdict(&doc, "underwater"), "stable_sufficient");
    let report = &doc["report"]["underwater"];
    assert!(report["determinant_closed_form"].as_f64().unwrap() > 0.0);
    assert_eq!(report["eigenvalues"].as_array().unwrap().len(), 6);
    assert_eq!(report["conditions"].as_object().unwrap().len(), 4);

    let dir = TempDir::new().unwrap();
    let no_offset = variant(&dir, "l0.cfg", "vehicle_ref.cfg", |v| v["underwater"]["vehicle"]["l"] = 0.0.into());
    let swapped = variant(&dir, "m2_lt_m1.cfg", "vehicle_ref.cfg", |v| {
        v["underwater"]["vehicle"]["m1"] = 3.0.into();
        v["underwater"]["vehicle"]["m2"] = 2.0.into();
    });
    for path in [no_offset, swapped] {
        let out = leafstab(&["underwater-stability", "--config", path_str(&path)]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(verdict(&json(&out), "underwater"), "inconclusive");
    }
}

#[test]
fn malformed_config_exits_2_without_a_report() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.cfg");
    std::fs::write(&path, "{\n  \"system\": \"spacecraft\",\n  \"spacecraft\": {\"inertia\": [1, 2, 3],\n}\n").unwrap();
    let out = leafstab(&["spacecraft-stability", "--config", path_str(&path)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));

    let missing = dir.path().join("missing.cfg");
    assert_eq!(leafstab(&["hessian", "--config", path_str(&missing)]).status.code(), Some(2));
    assert_eq!(leafstab(&["hessian"]).status.code(), Some(2));
    let wrong_system = leafstab(&["underwater-stability", "--config", path_str(&bundled_config("castalia.cfg"))]);
    assert_eq!(wrong_system.status.code(), Some(2));
}

#[test]
fn inadmissible_vehicle_exits_3() {
    let dir = TempDir::new().unwrap();
    let path = variant(&dir, "bad.cfg", "vehicle_ref.cfg", |v| v["underwater"]["vehicle"]["i12"] = 1.5.into());
    for cmd in ["underwater-stability", "hessian"] {
        let out = leafstab(&[cmd, "--config", path_str(&path)]);
        assert_eq!(out.status.code(), Some(3), "{cmd}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("I11 I22 - I12^2 > 0"));
    }
}

#[test]
fn hessian_check_fd_passes_on_every_bundled_config() {
    for name in BUNDLED {
        let out = leafstab(&["hessian", "--check-fd", "--config", path_str(&bundled_config(name))]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let doc = json(&out);
        assert!(doc["fd_check"]["relative_deviation"].as_f64().unwrap() < 1e-6, "{name}");
    }
    let doc = json(&leafstab(&["hessian", "--config", path_str(&bundled_config("castalia.cfg"))]));
    assert_eq!(doc["hessian"][0][0].as_f64(), Some(0.5));
    assert!(doc["fd_check"].is_null());
}

#[test]
fn several_configs_give_an_ordered_array() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("missing.cfg");
    let names = ["castalia.cfg", "vehicle_ref.cfg", "rigid_body.cfg"];
    let mut args = vec!["--jobs".to_string(), "3".into(), "hessian".into(), "--config".into()];
    args.extend(names.iter().map(|n| path_str(&bundled_config(n)).to_string()));
    args.push(path_str(&bad).to_string());
    let args: Vec<&str> = args.iter().map(String::as_str).collect();

    let out = leafstab(&args);
    assert_eq!(out.status.code(), Some(2));
    let doc = json(&out);
    let entries = doc.as_array().unwrap();
    assert_eq!(entries.len(), 4);
    assert_eq!(entries[0]["config"]["system"], "spacecraft");
    assert_eq!(entries[1]["config"]["system"], "underwater");
    assert_eq!(entries[2]["config"]["system"], "spacecraft");
    assert_eq!(entries[3]["error"]["exit_code"], 2);

    // Parallel and serial runs print the same documents.
    let serial: Vec<&str> = args[2..].to_vec();
    assert_eq!(leafstab(&serial).stdout, out.stdout);
}

/// A short copy of a bundled simulation.
fn short_simulation(dir: &TempDir, base: &str, steps: u64, perturbation: f64) -> PathBuf {
    variant(dir, &format!("short_{base}"), base, |v| {
        v["simulation"]["steps"] = steps.into();
        v["simulation"]["perturbation"] = perturbation.into();
        v["simulation"]["record_every"] = 7.into();
    })
}

#[test]
fn simulation_is_bit_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    for base in ["castalia.cfg", "vehicle_ref.cfg"] {
        let cfg = short_simulation(&dir, base, 500, 1e-3);
        let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
        let first = leafstab(&["simulate", "--config", path_str(&cfg), "--out", path_str(&a)]);
        let second = leafstab(&["simulate", "--config", path_str(&cfg), "--out", path_str(&b)]);
        assert_eq!(first.status.code(), Some(0));
        assert_eq!(first.stdout, second.stdout);
        let csv = std::fs::read(&a).unwrap();
        assert_eq!(csv, std::fs::read(&b).unwrap());

        let text = String::from_utf8(csv).unwrap();
        let mut lines = text.lines();
        let header: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(header[0], "t");
        let rows: Vec<&str> = lines.collect();
        // Steps 0, 7, ..., 497 plus the final step.
        assert_eq!(rows.len(), 73);
        assert_eq!(json(&first)["simulation"]["rows_written"], 73);
        assert!(rows.iter().all(|r| r.split(',').count() == header.len()));
        let last_t: f64 = rows.last().unwrap().split(',').next().unwrap().parse().unwrap();
        assert_eq!(last_t, json(&first)["simulation"]["final_time"].as_f64().unwrap());
    }
}

#[test]
fn unperturbed_equilibrium_does_not_move() {
    let dir = TempDir::new().unwrap();
    for base in BUNDLED {
        let cfg = short_simulation(&dir, base, 2000, 0.0);
        let out = leafstab(&["simulate", "--config", path_str(&cfg), "--out", path_str(&dir.path().join("t.csv"))]);
        assert_eq!(out.status.code(), Some(0), "{base}");
        let sim = &json(&out)["simulation"];
        // The equilibrium is a fixed point only up to rounding, e.g. in
        // `Π2/I2 + ω_T` with `Π2 = −ω_T I2`.
        assert!(sim["max_distance"].as_f64().unwrap() <= 1e-14, "{base}");
        for inv in sim["invariants"].as_array().unwrap() {
            assert!(inv["max_relative_drift"].as_f64().unwrap() <= 1e-14, "{base} {}", inv["name"]);
        }
    }
}

#[test]
fn simulate_error_paths() {
    let dir = TempDir::new().unwrap();
    let no_sim = variant(&dir, "nosim.cfg", "vehicle_ref.cfg", |v| {
        v.as_object_mut().unwrap().remove("simulation");
    });
    let csv = dir.path().join("t.csv");
    assert_eq!(leafstab(&["simulate", "--config", path_str(&no_sim), "--out", path_str(&csv)]).status.code(), Some(2));

    let cfg = short_simulation(&dir, "vehicle_ref.cfg", 10, 1e-3);
    let unwritable = dir.path().join("no/such/dir/t.csv");
    assert_eq!(leafstab(&["simulate", "--config", path_str(&cfg), "--out", path_str(&unwritable)]).status.code(), Some(1));

    let blow_up = variant(&dir, "big_dt.cfg", "rigid_body.cfg", |v| {
        v["simulation"]["dt"] = 1e6.into();
        v["simulation"]["steps"] = 1000.into();
        v["simulation"]["perturbation"] = 0.4.into();
    });
    let out = leafstab(&["simulate", "--config", path_str(&blow_up), "--out", path_str(&csv)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("non-finite"));
}

/// Integers and floats compare by value.
fn normalise(v: &Value) -> Value {
    match v {
        Value::Number(n) => Value::from(n.as_f64().unwrap()),
        Value::Array(a) => Value::Array(a.iter().map(normalise).collect()),
        Value::Object(o) => Value::Object(o.iter().map(|(k, v)| (k.clone(), normalise(v))).collect()),
        other => other.clone(),
    }
}

#[test]
fn bundled_configs_round_trip() {
    for name in BUNDLED {
        let text = std::fs::read_to_string(bundled_config(name)).unwrap();
        let cfg = RunConfig::parse(&text).unwrap();
        let again = serde_json::to_string(&cfg).unwrap();
        assert_eq!(RunConfig::parse(&again).unwrap(), cfg, "{name}");
        let original: Value = serde_json::from_str(&text).unwrap();
        let echoed: Value = serde_json::from_str(&again).unwrap();
        assert_eq!(normalise(&original), normalise(&echoed), "{name}");
    }
}

#[test]
fn reports_echo_the_config_and_are_deterministic() {
    let path = bundled_config("vehicle_ref.cfg");
    let first = leafstab(&["underwater-stability", "--config", path_str(&path)]);
    let second = leafstab(&["underwater-stability", "--config", path_str(&path)]);
    assert_eq!(first.stdout, second.stdout);
    let doc = json(&first);
    let original: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(normalise(&doc["config"]), normalise(&original));
    assert_eq!(doc["tool"]["name"], "leafstab");
}
