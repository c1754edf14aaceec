use std::path::PathBuf;
use std::process::Command;

use kmodal_core::kripke::{is_p_morphism, ModelFile};
use kmodal_core::{parse, Formula, KripkeModel, TreeModel, WorldMap};
use serde_json::Value;

fn kmodal(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_kmodal"))
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let body = if stdout.trim().is_empty() {
        Value::Null
    } else {
        serde_json::from_str(&stdout).expect("stdout is JSON")
    };
    (
        out.status.code().unwrap(),
        body,
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

/// Model and refuting world embedded in a verdict object.
fn certificate(v: &Value) -> (KripkeModel, String) {
    let world = v["refuted_at"].as_str().expect("refuted_at").to_owned();
    let file: ModelFile = serde_json::from_value(v.clone()).expect("model fields");
    (KripkeModel::try_from(file).unwrap(), world)
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kmodal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn prove_distribution() {
    let (code, body, _) = kmodal(&["prove", "[](p0->p1) -> ([]p0 -> []p1)"]);
    assert_eq!(code, 0);
    assert_eq!(body["proved"], true);
}

#[test]
fn prove_refutation_certificate_revalidates() {
    let (code, body, _) = kmodal(&["prove", "[]p0 -> [][]p0"]);
    assert_eq!(code, 1);
    let (m, w) = certificate(&body);
    assert_eq!(m.eval(&w, &f("[]p0 -> [][]p0")), Ok(false));
}

#[test]
fn margins_reports_least_bound() {
    let (code, body, _) = kmodal(&["margins", "p0 & [1] false"]);
    assert_eq!(code, 0);
    assert_eq!(
        serde_json::to_string(&body).unwrap(),
        r#"{"verdict":"implies_box_bot","n":1}"#
    );
    let (code, body, _) = kmodal(&["margins", "true"]);
    assert_eq!((code, body["verdict"].as_str()), (0, Some("provable")));
    let (code, body, _) = kmodal(&["margins", "p0"]);
    assert_eq!(code, 1);
    let t: TreeModel = serde_json::from_value(body["countermodel"].clone()).unwrap();
    assert_eq!(t.model().eval(t.root(), &f("p0 -> []p0")), Ok(false));
}

#[test]
fn chain_emits_four_certificates_per_level() {
    let (code, body, _) = kmodal(&["chain", "3"]);
    assert_eq!(code, 0);
    let levels = body["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 4);
    for level in levels {
        let checks = level["checks"].as_array().unwrap();
        assert_eq!(checks.len(), 4);
        for c in &checks[1..] {
            let (m, w) = certificate(&c["verdict"]);
            let phi = f(c["formula"].as_str().unwrap());
            assert_eq!(m.eval(&w, &phi), Ok(false));
        }
    }
}

#[test]
fn conseq_countermodel_validates_premises() {
    let (code, body, _) = kmodal(&["conseq", "--premise", "p0 -> []p0", "p0 -> [2]false"]);
    assert_eq!(code, 1);
    let (m, w) = certificate(&body);
    assert!(m.globally_valid(&f("p0 -> []p0")));
    assert_eq!(m.eval(&w, &f("p0 -> [2]false")), Ok(false));
    let (code, body, _) = kmodal(&["conseq", "--premise", "p0 -> []p0", "p0 -> [][]p0"]);
    assert_eq!((code, body["deduction_depth"].as_u64()), (0, Some(2)));
}

#[test]
fn rule_and_admissibility() {
    let (code, _, _) = kmodal(&[
        "rule",
        "--premise",
        "p0 -> []p0",
        "--conclusion",
        "p0",
        "--conclusion",
        "~p0",
    ]);
    assert_eq!(code, 1);
    let (code, body, _) = kmodal(&[
        "admissible-margin",
        "--conclusion",
        "p0",
        "--conclusion",
        "~p0",
    ]);
    assert_eq!(code, 1);
    assert_eq!(body["admissible"], false);
    let (code, _, _) = kmodal(&["admissible-margin", "--conclusion", "p0 -> []p0"]);
    assert_eq!(code, 0);
}

#[test]
fn classify_projective_exactness() {
    let (code, body, _) = kmodal(&["classify", "--subst", "p0 := [] false"]);
    assert_eq!(code, 0);
    assert_eq!(body["dominators"]["at_least"], 1);
    let (code, body, _) = kmodal(&["classify", "--subst", ""]);
    assert_eq!((code, body["status"].as_str()), (1, Some("not_unifier")));

    let (code, _, _) = kmodal(&["projective", "--gamma", "p0", "--subst", "p0 := true"]);
    assert_eq!(code, 0);
    let (code, body, _) = kmodal(&[
        "projective",
        "--gamma",
        "p0 -> []p0",
        "--subst",
        "p0 := p0 & [1] false",
    ]);
    assert_eq!(code, 1);
    let (m, w) = certificate(&body["atoms"][0]["verdict"]);
    assert!(m.globally_valid(&f("p0 -> []p0")));
    assert_eq!(
        m.eval(&w, &f(body["atoms"][0]["goal"].as_str().unwrap())),
        Ok(false)
    );
    let (code, body, _) = kmodal(&["projective", "--gamma", "p0 -> []p0", "--subst", ""]);
    assert_eq!((code, body["unifier"].as_bool()), (1, Some(false)));

    let (code, body, _) = kmodal(&[
        "exactness",
        "--gamma",
        "p0 -> []p0",
        "--subst",
        "p0 := p0 & []p0 & [2]false",
    ]);
    assert_eq!(code, 1);
    assert_eq!(
        f(body["witness"]["probe"].as_str().unwrap()),
        f("p0 -> [2]false")
    );
    let (code, body, _) = kmodal(&[
        "exactness",
        "--gamma",
        "p0",
        "--subst",
        "p0 := true",
        "--bound",
        "3",
    ]);
    assert_eq!((code, body["witness"].is_null()), (0, true));
}

#[test]
fn usage_and_resource_exit_codes() {
    let (code, body, err) = kmodal(&["prove", "p0 &"]);
    assert_eq!((code, body), (2, Value::Null));
    assert!(err.contains("unexpected end"));
    assert_eq!(kmodal(&["classify", "--subst", "p0 = true"]).0, 2);
    assert_eq!(kmodal(&["frobnicate"]).0, 2);
    let (code, _, err) = kmodal(&["--max-nodes", "5", "prove", "[](p0->p1) -> ([]p0 -> []p1)"]);
    assert_eq!(code, 3);
    assert!(err.contains("resource limit"));
    assert_eq!(
        kmodal(&[
            "--max-closure",
            "3",
            "conseq",
            "--premise",
            "p0 -> []p0",
            "p0"
        ])
        .0,
        3
    );
}

#[test]
fn quiet_keeps_exit_codes() {
    let (code, body, _) = kmodal(&["--quiet", "prove", "p0"]);
    assert_eq!((code, body), (1, Value::Null));
    let (code, body, _) = kmodal(&["prove", "--quiet", "true"]);
    assert_eq!((code, body), (0, Value::Null));
}

#[test]
fn model_commands_round_trip() {
    let m = scratch(
        "loop.json",
        r#"{"worlds":["a","b"],"edges":[["a","b"],["b","a"]],"val":{"a":[0]}}"#,
    );
    let map_path = m.with_file_name("map.json");
    let (code, tree, _) = kmodal(&[
        "model",
        "unravel",
        "--model",
        m.to_str().unwrap(),
        "--world",
        "a",
        "--depth",
        "3",
        "--map-out",
        map_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let t: TreeModel = serde_json::from_value(tree.clone()).unwrap();
    assert_eq!(t.height(), 3);
    let map: WorldMap = serde_json::from_str(&std::fs::read_to_string(&map_path).unwrap()).unwrap();
    let source = KripkeModel::from_json(&std::fs::read_to_string(&m).unwrap()).unwrap();
    assert!(!is_p_morphism(&map, t.model(), &source));

    let tree_path = scratch("tree.json", &tree.to_string());
    let (code, body, _) = kmodal(&[
        "model",
        "pmorphism",
        "--source",
        tree_path.to_str().unwrap(),
        "--target",
        m.to_str().unwrap(),
        "--map",
        map_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert_eq!(body["defects"][0]["defect"], "back");

    let (code, cut, _) = kmodal(&[
        "model",
        "truncate",
        "--tree",
        tree_path.to_str().unwrap(),
        "--depth",
        "2",
    ]);
    assert_eq!(code, 0);
    let cut: TreeModel = serde_json::from_value(cut).unwrap();
    assert!(cut.model().globally_valid(&f("[2]false")));

    let (code, g, _) = kmodal(&[
        "model",
        "graft",
        "--left",
        m.to_str().unwrap(),
        "--right",
        m.to_str().unwrap(),
        "--from",
        "a",
        "--to",
        "b",
    ]);
    assert_eq!(code, 0);
    let g: KripkeModel = serde_json::from_value(g).unwrap();
    assert_eq!(g.len(), 4);
    assert_eq!(g.edge_count(), 5);

    assert_eq!(
        kmodal(&[
            "model",
            "eval",
            "--model",
            m.to_str().unwrap(),
            "--world",
            "a",
            "<>~p0"
        ])
        .0,
        0
    );
    assert_eq!(
        kmodal(&[
            "model",
            "eval",
            "--model",
            m.to_str().unwrap(),
            "--world",
            "a",
            "[]p0"
        ])
        .0,
        1
    );
    assert_eq!(
        kmodal(&[
            "model",
            "eval",
            "--model",
            m.to_str().unwrap(),
            "--world",
            "zz",
            "p0"
        ])
        .0,
        2
    );
    assert_eq!(
        kmodal(&[
            "model",
            "eval",
            "--model",
            "/nonexistent.json",
            "--world",
            "a",
            "p0"
        ])
        .0,
        2
    );
}
