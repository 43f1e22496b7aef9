mod common;

use std::path::Path;

use serde_json::Value;

use bondcat::category::BondMorphism;
use bondcat::fixtures as fx;
use bondcat_cli::format::{self, render, to_value};

use common::{bondcat, bondcat_env, code, fixture, stderr, stdout};

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn edited(name: &str, edit: impl FnOnce(&mut Value)) -> String {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
    edit(&mut v);
    render(&v)
}

fn json(o: &std::process::Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn malformed_input_names_the_offending_pointer() {
    let dir = tempfile::tempdir().unwrap();
    let bad_scalar = write(dir.path(), "s.json", &edited("four_point_t.json", |v| v["blocks"][1]["entries"][0][0] = "x/0".into()));
    let out = bondcat(&["validate", &bad_scalar]);
    code(&out, 2);
    assert!(stderr(&out).contains("at /blocks/1/entries/0/0"), "{}", stderr(&out));

    let unknown = write(dir.path(), "u.json", &edited("four_point_b.json", |v| v["dims"][0][0] = "w".into()));
    let out = bondcat(&["shift", &unknown]);
    code(&out, 2);
    assert!(stderr(&out).contains("at /dims/0"), "{}", stderr(&out));

    let extra = write(dir.path(), "e.json", &edited("four_point_b.json", |v| v["colour"] = "red".into()));
    let out = bondcat(&["validate", &extra]);
    code(&out, 2);
    assert!(stderr(&out).contains("colour"), "{}", stderr(&out));

    let not_json = write(dir.path(), "n.json", "{\"kind\": ");
    code(&bondcat(&["validate", &not_json]), 2);

    let version = write(dir.path(), "v.json", &edited("four_point_b.json", |v| v["format"] = "bondcat/2".into()));
    let out = bondcat(&["validate", &version]);
    code(&out, 2);
    assert!(stderr(&out).contains("at /format"), "{}", stderr(&out));

    let wrong_kind = bondcat(&["cone", "four_point_b.json"]);
    code(&wrong_kind, 2);
    assert!(stderr(&wrong_kind).contains("at /kind"));

    std::fs::copy(fixture("a1.json"), dir.path().join("a1.json")).unwrap();
    let in_algebra = write(dir.path(), "q.json", &edited("a1_loop.json", |v| v["maps"]["1"][1]["path"] = "xx".into()));
    let out = bondcat(&["homotopy", &in_algebra]);
    code(&out, 2);
    assert!(stderr(&out).contains("at /maps/1/1/path"), "{}", stderr(&out));

    code(&bondcat(&["equiv", "four_point_t.json", "four_point_t.json", "--variant", "L"]), 2);
    code(&bondcat(&["validate", "missing.json"]), 2);
}

#[test]
fn invalid_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    // breaks the σ-symmetry of the dimension vector
    let lopsided = write(dir.path(), "b.json", &edited("four_point_b.json", |v| v["dims"][0][2] = 2.into()));
    let out = bondcat(&["validate", &lopsided]);
    code(&out, 1);
    assert!(stdout(&out).starts_with("object: "), "{}", stdout(&out));

    let out = bondcat(&["validate", &lopsided, "--json"]);
    code(&out, 1);
    let r = json(&out);
    assert_eq!(r["kind"], "report");
    assert_eq!(r["valid"], false);
    assert!(!r["violations"].as_array().unwrap().is_empty());

    let broken_t = write(dir.path(), "t.json", &edited("four_point_t.json", |v| {
        // T·C picks this block up through C([u,0],[a,1]); B·T does not
        let extra = serde_json::json!({"row": ["u", 1], "col": ["u", 0], "entries": [["1"]]});
        v["blocks"].as_array_mut().unwrap().push(extra);
    }));
    code(&bondcat(&["validate", &broken_t]), 1);
    let out = bondcat(&["cone", &broken_t]);
    code(&out, 1);
    assert!(stderr(&out).contains("is not valid"));

    let not_gentle = write(dir.path(), "q.json", &edited("a1.json", |v| v["relations"] = serde_json::json!([["x", "x"]])));
    code(&bondcat(&["validate", &not_gentle]), 1);
    code(&bondcat(&["gentle", "analyze", &not_gentle]), 1);
}

#[test]
fn decisions_exit_three_when_the_answer_is_no() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let image = format!("{d}/phi.json");
    let zero = format!("{d}/zero.json");
    code(&bondcat(&["functor", "morphism", "a1_loop.json", "-o", &image]), 0);
    code(&bondcat(&["functor", "morphism", "a1_loop_zero.json", "-o", &zero]), 0);

    let out = bondcat(&["equiv", &image, &zero, "--variant", "kappa"]);
    code(&out, 3);
    assert_eq!(stdout(&out), "not equivalent (kappa)\n");
    let out = bondcat(&["equiv", &image, &zero, "--variant", "kappa", "--json"]);
    code(&out, 3);
    assert_eq!(json(&out)["answer"], false);

    let out = bondcat(&["equiv", &image, &zero, "--variant", "K"]);
    code(&out, 0);
    assert_eq!(json(&out)["variant"], "K");

    let out = bondcat(&["homotopy", "a1_loop.json"]);
    code(&out, 0);
    let out = bondcat(&["homotopy", "a1_endomorphism.json"]);
    code(&out, 3);
    assert_eq!(stdout(&out), "not homotopic\n");

    let out = bondcat(&["iso", "four_point_t.json"]);
    code(&out, 3);
    assert_eq!(stdout(&out), "not iso\n");
}

/// Identities and the four-point morphism, written as documents.
fn square_inputs(dir: &Path) -> [String; 4] {
    let fp = fx::four_point_triangle();
    let id_b = render(&to_value(&format::morphism_doc(&BondMorphism::identity(&fp.b))));
    let id_sb = render(&to_value(&format::morphism_doc(&BondMorphism::identity(&fp.shifted_b))));
    let t = fixture("four_point_t.json").display().to_string();
    [t.clone(), t, write(dir, "id_b.json", &id_b), write(dir, "id_sb.json", &id_sb)]
}

#[test]
fn every_emitted_document_validates() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let [t, t2, f, g] = square_inputs(d);
    let shifted = write(d, "shift_t.json", &stdout(&bondcat(&["shift", "four_point_t.json", "-n", "1"])));

    let runs: Vec<Vec<&str>> = vec![
        vec!["shift", "four_point_b.json", "-n", "3"],
        vec!["shift", "four_point_t.json", "-n", "-2"],
        vec!["shift", "a1_complex.json", "-n", "1"],
        vec!["shift", "a1_endomorphism.json", "-n", "-1"],
        vec!["cone", "four_point_t.json"],
        vec!["rotate", "four_point_t.json"],
        vec!["iso", &f],
        vec!["tr3", &t, &t2, &f, &g],
        vec!["octahedron", &t, &shifted],
        vec!["equiv", "four_point_t.json", "four_point_t.json", "--variant", "kappa"],
        vec!["functor", "object", "a1_complex.json"],
        vec!["functor", "morphism", "a1_endomorphism.json"],
        vec!["functor", "object", "a2_complex.json"],
        vec!["homotopy", "a1_loop.json"],
        vec!["homotopy", "a1_loop.json", "a1_loop.json"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let out = bondcat(args);
        code(&out, 0);
        let file = write(d, &format!("out{i}.json"), &stdout(&out));
        let check = bondcat(&["validate", &file]);
        assert_eq!(check.status.code(), Some(0), "{args:?}: {}", stdout(&check));
    }
    for name in ["a1.json", "a2.json", "four_point_zero.json", "a2_phi.json", "a1_loop_zero.json"] {
        code(&bondcat(&["validate", name]), 0);
    }
}

#[test]
fn tr3_with_and_without_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let [t, t2, f, g] = square_inputs(d);
    let out = bondcat(&["tr3", &t, &t2, &f, &g]);
    code(&out, 0);
    let solved = json(&out);
    let l = write(d, "l.json", &render(&solved["witness"]));
    let out = bondcat(&["tr3", &t, &t2, &f, &g, "--witness", &l]);
    code(&out, 0);
    assert_eq!(json(&out), solved);

    // F = 0 and G = Id make the square fail: T is not null
    let zero = write(d, "zero.json", &render(&to_value(&format::morphism_doc(
        &BondMorphism::zero(&fx::four_point_triangle().b, &fx::four_point_triangle().b).unwrap(),
    ))));
    code(&bondcat(&["tr3", &t, &t2, &zero, &g]), 3);
}

#[test]
fn bundles_split_into_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = bondcat(&["rotate", "four_point_t.json", "--out-dir", d]);
    code(&out, 0);
    for m in ["r", "s", "l_comm", "l_inv", "rotated", "standard"] {
        let file = format!("{d}/{m}.json");
        assert!(stdout(&out).contains(&file));
        code(&bondcat(&["validate", &file]), 0);
    }
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let shifted = write(d, "shift_t.json", &stdout(&bondcat(&["shift", "four_point_t.json"])));
    let t = fixture("four_point_t.json").display().to_string();
    for args in [
        vec!["octahedron", t.as_str(), shifted.as_str()],
        vec!["functor", "morphism", "a1_endomorphism.json"],
        vec!["verify-axioms", "--seed", "7", "--trials", "3", "--json"],
    ] {
        let (a, b) = (bondcat(&args), bondcat(&args));
        code(&a, 0);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn field_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let bare = write(dir.path(), "b.json", &edited("four_point_b.json", |v| {
        v.as_object_mut().unwrap().remove("field");
    }));
    let field = |o: &std::process::Output| json(o)["field"].as_str().unwrap().to_string();

    assert_eq!(field(&bondcat(&["shift", &bare])), "rational");
    assert_eq!(field(&bondcat_env(&["shift", &bare], Some("gf:3"))), "gf:3");
    assert_eq!(field(&bondcat_env(&["shift", "four_point_b.json"], Some("gf:3"))), "rational");
    assert_eq!(field(&bondcat_env(&["shift", "four_point_b.json", "--field", "gf:7"], Some("gf:3"))), "gf:7");
    code(&bondcat(&["shift", &bare, "--field", "gf:4"]), 2);
    code(&bondcat_env(&["shift", &bare], Some("gf:4")), 2);

    // over GF(2) the four-point entries −1 and 1 coincide
    let out = bondcat(&["cone", "four_point_t.json", "--field", "gf:2"]);
    code(&out, 0);
    assert_eq!(json(&out)["cone"]["blocks"][1]["entries"], serde_json::json!([["1", "1"], ["0", "1"]]));

    let out = bondcat(&["verify-axioms", "--trials", "1", "--json"]);
    assert_eq!(json(&out)["field"], "gf:5");
    let out = bondcat_env(&["verify-axioms", "--trials", "1", "--json"], Some("rational"));
    assert_eq!(json(&out)["field"], "rational");
}

#[test]
fn output_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = bondcat(&["shift", "four_point_b.json", "-o", path.to_str().unwrap()]);
    code(&out, 0);
    assert!(stdout(&out).is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&bondcat(&["shift", "four_point_b.json"])));
}

#[test]
fn verify_axioms_seed_one_has_no_failures() {
    let out = bondcat(&["verify-axioms", "--seed", "1", "--trials", "50"]);
    code(&out, 0);
    assert!(stdout(&out).ends_with("8 of 8 criteria passed\n"), "{}", stdout(&out));

    let out = bondcat(&["verify-axioms", "--seed", "1", "--trials", "50", "--json"]);
    code(&out, 0);
    let s = json(&out);
    assert_eq!(s["passed"], true);
    let criteria = s["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 8);
    assert!(criteria.iter().all(|c| c["trials"] == 50 && c["failures"].as_array().unwrap().is_empty()));

    code(&bondcat(&["verify-axioms", "--trials", "0"]), 2);
}
