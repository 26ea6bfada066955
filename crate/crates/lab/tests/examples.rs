use std::process::Command;

use conelab_lab::descriptor::SheetSpec;
use conelab_lab::report::{Row, Truncation};
use conelab_lab::suites::resolution::auto_dims;
use conelab_lab::suites::theorem1::relative_change;
use conelab_lab::*;

const SMALL: &str = r#"{
  "geometry": {"n": 48},
  "battery": ["shift", "conormal_cayley", "mixed"],
  "suites": ["guillemin", "index", "resolution", "unbounded"],
  "seeds": [0, 1, 2, 3],
  "circle": {"truncations": [16, 24], "index_truncation": 24, "windings": [-1, 0, 2]},
  "theorem1": {"samples": 3},
  "index": {"paths": ["shift"], "path_steps": 3, "products": [["shift", "conormal_cayley"]]},
  "resolution": {"truncation": 6, "unbounded_truncation": 5,
    "maps": [{"name": "hardy1", "map": "hardy:1"}, {"name": "syn", "map": "synthetic:auto"},
             {"name": "dq", "map": "diagonal:(m^2 - 1)"}]}
}"#;

fn config_error(text: &str) -> ConfigError {
    load_str(text).map(|_| ()).unwrap_err()
}

#[test]
fn shipped_battery_has_the_named_entries() {
    let cfg = shipped();
    assert!(cfg.battery.len() >= 8);
    for name in ["shift", "conormal_cayley"] {
        assert!(cfg.symbol(name).is_some(), "{name}");
    }
    let text = list(&cfg);
    assert_eq!(text.lines().count(), cfg.battery.len());
    assert!(cfg.battery.iter().all(|s| s.symbol.is_elliptic()));
}

#[test]
fn describe_shift() {
    let text = describe(&shipped(), "shift").unwrap();
    assert!(text.contains("degree-1 trig polynomial"), "{text}");
    assert!(text.contains("elliptic, wind +1"), "{text}");
    assert!(text.contains("cone index oracle -1"), "{text}");
}

#[test]
fn describe_conormal_cayley() {
    let text = describe(&shipped(), "conormal_cayley").unwrap();
    assert!(
        text.contains("rational (p - i)/(p + i), limits (1, 1)"),
        "{text}"
    );
    assert_eq!(
        describe(&shipped(), "missing").unwrap_err(),
        UnknownName("missing".to_string())
    );
}

#[test]
fn non_matching_symbol_names_the_residual() {
    let e = config_error(
        r#"{"battery": [{"name": "bad", "interior": {"plus": {"coeffs": [2]}}}], "suites": ["index"]}"#,
    );
    assert_eq!(e.key, "battery[0]");
    assert!(e.message.contains("matching-condition residual"), "{e}");
    assert!(e.to_string().starts_with("config error at `battery[0]`"));
}

#[test]
fn parse_errors_name_the_key() {
    let e = config_error(r#"{"battery": [], "suites": ["index"], "colour": 1}"#);
    assert_eq!(e.key, "colour");
    assert!(e.message.contains("unknown field"), "{e}");
    let e = config_error(
        r#"{"battery": [{"name": "x", "interior": {"plus": {"coeffs": ["a"]}}}], "suites": ["index"]}"#,
    );
    assert_eq!(e.key, "battery[0].interior.plus.coeffs[0]");
    let e = config_error(r#"{"battery": ["shift"], "suites": ["everything"]}"#);
    assert_eq!(e.key, "suites[0]");
    let e = config_error(r#"{"battery": ["shift"]}"#);
    assert!(e.message.contains("suites"), "{e}");
}

#[test]
fn validation_errors_name_the_key() {
    let cases = [
        (r#"{"battery": ["shift"], "suites": []}"#, "suites"),
        (
            r#"{"battery": ["shift", "shift"], "suites": ["index"]}"#,
            "battery[1].name",
        ),
        (
            r#"{"battery": ["nothing"], "suites": ["index"]}"#,
            "battery[0]",
        ),
        (
            r#"{"battery": ["shift"], "suites": ["index"], "geometry": {"h": 0.05, "n": 10}}"#,
            "geometry.h",
        ),
        (
            r#"{"battery": ["shift"], "suites": ["index"], "geometry": {"n": 0}}"#,
            "geometry.n",
        ),
        (
            r#"{"battery": ["shift"], "suites": ["index"], "index": {"order": 2}}"#,
            "index.order",
        ),
        (
            r#"{"battery": ["shift"], "suites": ["index"], "index": {"paths": ["x"]}}"#,
            "index.paths[0]",
        ),
        (
            r#"{"battery": ["shift"], "suites": ["index"], "index": {"products": [["shift", "y"]]}}"#,
            "index.products[0][1]",
        ),
        (r#"{"battery": ["shift"], "suites": ["theorem1"]}"#, "seeds"),
        (
            r#"{"battery": [], "suites": ["resolution"], "seeds": [1], "resolution": {"maps": [{"name": "d", "map": "diagonal:(1/m)"}]}}"#,
            "resolution.maps[0].map",
        ),
        (
            r#"{"battery": [], "suites": ["resolution"], "resolution": {"maps": [{"name": "d", "map": "diagonal:(k)"}]}}"#,
            "resolution.maps[0].map",
        ),
        (
            r#"{"battery": [], "suites": ["resolution"], "resolution": {"maps": [{"name": "s", "map": "synthetic:1,5,1"}]}}"#,
            "resolution.maps[0].map",
        ),
        (
            r#"{"battery": [], "suites": ["resolution"], "resolution": {"maps": [{"name": "s", "map": "synthetic:auto"}]}}"#,
            "seeds",
        ),
        (
            r#"{"battery": [], "suites": ["guillemin"], "circle": {"truncations": [0]}}"#,
            "circle.truncations[0]",
        ),
        (
            r#"{"battery": [], "suites": ["guillemin"], "circle": {"index_truncation": 4, "windings": [5]}}"#,
            "circle.windings[0]",
        ),
    ];
    for (text, key) in cases {
        assert_eq!(config_error(text).key, key, "{text}");
    }
}

#[test]
fn non_elliptic_symbols_are_rejected_only_where_needed() {
    let bad = r#"{"name": "zero_crossing", "interior": {"plus": {"coeffs": [0.5, 0.5]}}}"#;
    let index = format!(r#"{{"battery": [{bad}], "suites": ["index"]}}"#);
    let e = config_error(&index);
    assert_eq!(e.key, "battery[0]");
    assert!(e.message.contains("not elliptic"), "{e}");
    let t1 = format!(r#"{{"battery": [{bad}], "suites": ["theorem1"], "seeds": [0]}}"#);
    assert!(load_str(&t1).is_ok());
}

#[test]
fn map_descriptors() {
    let hardy: MapDescriptor = "hardy:2".parse().unwrap();
    assert_eq!(hardy, MapDescriptor::Hardy(2));
    assert_eq!(
        "hardy".parse::<MapDescriptor>().unwrap(),
        MapDescriptor::Hardy(1)
    );
    assert_eq!(
        "synthetic:3,4,2".parse::<MapDescriptor>().unwrap(),
        MapDescriptor::Synthetic(SyntheticDims::Fixed(vec![3, 4, 2]))
    );
    assert_eq!(
        "synthetic:auto".parse::<MapDescriptor>().unwrap(),
        MapDescriptor::Synthetic(SyntheticDims::Auto)
    );
    let d: MapDescriptor = "diagonal:(if(m < 0, m, 0))".parse().unwrap();
    assert_eq!(d.to_string(), "diagonal:(if(m < 0, m, 0))");
    let MapDescriptor::Diagonal(f) = d else {
        panic!()
    };
    assert_eq!(f.weights(2).unwrap(), vec![-2.0, -1.0, 0.0, 0.0, 0.0]);
    let q = DiagonalMap::parse("m^2 - 4").unwrap();
    assert_eq!(q.eval(3).unwrap(), 5.0);
    for bad in [
        "",
        "hardy:x",
        "hardy:99",
        "synthetic:1,,2",
        "diagonal:m",
        "diagonal:(m",
        "diagonal:(m +)",
        "circle:1",
    ] {
        assert!(bad.parse::<MapDescriptor>().is_err(), "{bad}");
    }
    let deep = format!("diagonal:({}m{})", "(".repeat(40), ")".repeat(40));
    assert!(deep.parse::<MapDescriptor>().is_err());
}

#[test]
fn symbol_descriptor_parses() {
    let (name, a) = parse_symbol(
        r#"{"name": "b", "interior": {"plus": {"coeffs": [-0.5, 1], "den": {"coeffs": [1, -0.5]}}}}"#,
    )
    .unwrap();
    assert_eq!(name, "b");
    assert!(a.is_elliptic());
    assert!(matches!(
        parse_symbol(r#"{"name": "p", "conormal": {"plus": {"num": [1, 1], "den": [0, 1]}}}"#),
        Err(DescriptorError::Symbol(_))
    ));
    assert!(matches!(
        parse_symbol(r#"{"name": "d", "conormal": {"plus": {"num": [1, 1], "den": [1]}}}"#),
        Err(DescriptorError::Symbol(_))
    ));
    let sheet = SheetSpec::one();
    assert_eq!(
        sheet.build("x").unwrap().eval(0.3),
        conelab_linop::c64::new(1.0, 0.0)
    );
}

#[test]
fn index_suite_on_shift_gives_one_row() {
    let cfg = load_str(r#"{"battery": ["shift"], "suites": ["index"]}"#).unwrap();
    let report = run(&cfg, 1).unwrap();
    assert_eq!(report.rows.len(), 1);
    let r = &report.rows[0];
    assert_eq!(r.assertion, "index");
    assert_eq!(r.value, -1.0);
    assert_eq!(r.verdict, Verdict::Pass);
    assert!(r.truncation.label.starts_with("N=512 "));
    assert_eq!(report.exit_code(), EXIT_PASS);
}

#[test]
fn small_run_passes_and_is_deterministic() {
    let cfg = load_str(SMALL).unwrap();
    let a = run(&cfg, 1).unwrap();
    let b = run(&cfg, 3).unwrap();
    assert_eq!(a.run_id, b.run_id);
    for s in &a.suites {
        assert_eq!(a.csv(*s).unwrap(), b.csv(*s).unwrap(), "{s}");
    }
    assert_eq!(a.summary(), b.summary());
    assert_eq!(
        a.exit_code(),
        EXIT_PASS,
        "{:#?}",
        a.rows
            .iter()
            .filter(|r| r.verdict == Verdict::Fail)
            .collect::<Vec<_>>()
    );
    for r in &a.rows {
        assert!(!r.truncation.label.is_empty());
    }
    let keys: Vec<_> = a
        .rows
        .iter()
        .map(|r| (r.suite, r.symbol.clone(), r.truncation.clone()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn theorem1_rows_at_a_coarse_geometry() {
    let cfg = load_str(
        r#"{"geometry": {"n": 48}, "battery": ["shift"], "suites": ["theorem1"], "seeds": [0, 1], "theorem1": {"samples": 3}}"#,
    )
    .unwrap();
    let report = run(&cfg, 1).unwrap();
    let names: Vec<&str> = report.rows.iter().map(|r| r.assertion.as_str()).collect();
    for a in [
        "gram_identity_on_support",
        "commutator_hs",
        "commutator_hs_change",
        "quantization_defect",
        "quantization_defect_change",
    ] {
        assert!(names.contains(&a), "{a}");
    }
    for r in report
        .rows
        .iter()
        .filter(|r| r.assertion == "gram_identity_on_support")
    {
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
    }
    let hs: Vec<f64> = report
        .rows
        .iter()
        .filter(|r| r.assertion == "commutator_hs")
        .map(|r| r.value)
        .collect();
    assert_eq!(hs.len(), 2);
    assert!(hs.iter().all(|&v| v > 0.0 && v.is_finite()));
}

#[test]
fn report_layout_on_disk() {
    let cfg = load_str(SMALL).unwrap();
    let report = run(&cfg, 1).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let out = report.write(dir.path()).unwrap();
    assert_eq!(out, dir.path().join(&report.run_id));
    for s in ["guillemin", "index", "resolution", "unbounded"] {
        let body = std::fs::read_to_string(out.join(format!("{s}.csv"))).unwrap();
        assert_eq!(body.lines().next().unwrap(), CSV_COLUMNS.join(","));
    }
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["run_id"], report.run_id.as_str());
    assert_eq!(summary["status"], "pass");
    assert!(out.join("timing.json").exists());
}

#[test]
fn run_id_ignores_the_output_directory() {
    let mut a = ExperimentConfig::from_json(SMALL).unwrap();
    let id = a.run_id();
    a.output_dir = "elsewhere".into();
    assert_eq!(a.run_id(), id);
    a.seeds.push(9);
    assert_ne!(a.run_id(), id);
    assert_eq!(id.len(), 16);
}

#[test]
fn exit_codes_follow_the_verdicts() {
    let t = Truncation::circle(4);
    let row = |v: Verdict| Row::new(Suite::Guillemin, "a", "-", t.clone(), 0.0, None, v);
    let report = |rows: Vec<Row>| ExperimentReport {
        run_id: "x".to_string(),
        suites: vec![Suite::Guillemin],
        rows,
        timing: Vec::new(),
    };
    assert_eq!(
        report(vec![row(Verdict::Pass), row(Verdict::Info)]).exit_code(),
        EXIT_PASS
    );
    assert_eq!(
        report(vec![row(Verdict::Inconclusive), row(Verdict::Pass)]).exit_code(),
        EXIT_INCONCLUSIVE
    );
    assert_eq!(
        report(vec![row(Verdict::Inconclusive), row(Verdict::Fail)]).exit_code(),
        EXIT_FAIL
    );
    assert_eq!(report(Vec::new()).exit_code(), EXIT_PASS);
}

#[test]
fn helpers() {
    assert_eq!(relative_change(2.0, 2.02), 0.010000000000000009);
    assert_eq!(relative_change(0.0, 1e-9), 1e-3);
    for seed in 0..12 {
        assert_eq!(auto_dims(seed).len() as u64, seed % 4 + 1);
    }
    assert_eq!(auto_dims(5), auto_dims(5));
}

fn conelab(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_conelab"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn cli_commands_and_exit_codes() {
    let out = conelab(&["list"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).lines().count() >= 8);
    let out = conelab(&["describe", "shift"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("wind +1"));
    assert_eq!(
        conelab(&["describe", "nope"]).status.code(),
        Some(EXIT_FAIL)
    );

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"battery": ["shift"], "suites": ["index"], "geometry": {"n": -1}}"#,
    )
    .unwrap();
    let out = conelab(&["run", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_CONFIG));
    assert!(String::from_utf8_lossy(&out.stderr).contains("geometry.n"));

    let good = dir.path().join("small.json");
    std::fs::write(&good, SMALL).unwrap();
    let runs = dir.path().join("runs");
    let out = conelab(&[
        "run",
        good.to_str().unwrap(),
        "--out",
        runs.to_str().unwrap(),
        "--suite",
        "guillemin",
        "--jobs",
        "2",
    ]);
    assert_eq!(
        out.status.code(),
        Some(EXIT_PASS),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let run_dir = std::fs::read_dir(&runs)
        .unwrap()
        .next()
        .unwrap()
        .unwrap()
        .path();
    assert!(run_dir.join("guillemin.csv").exists());
    assert!(!run_dir.join("index.csv").exists());
    let out = conelab(&["run", good.to_str().unwrap(), "--suite", "nothing"]);
    assert_eq!(out.status.code(), Some(EXIT_CONFIG));
}
