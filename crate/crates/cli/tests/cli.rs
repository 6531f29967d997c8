use std::fs;
use std::path::Path;
use std::process::Command;
use std::sync::Arc;

use fingroupoid::actions::{action_to_actor, ActionLaw};
use fingroupoid::construct::*;
use fingroupoid::io::{serialize_functor, serialize_groupoid};
use fingroupoid::*;
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fingroupoid")).current_dir(dir).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn put(dir: &Path, name: &str, g: &Groupoid) {
    fs::write(dir.join(name), serialize_groupoid(&GroupoidDocument::from_groupoid(g))).unwrap();
}

fn fixtures() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    put(d, "pair2.grpd", &pair(&["1", "2"]));
    put(d, "pair3.grpd", &pair(&["1", "2", "3"]));
    put(d, "point.grpd", &null(&["p"]));
    put(d, "z2.grpd", &from_group(&GroupTable::cyclic(2)));
    put(d, "z3.grpd", &from_group(&GroupTable::cyclic(3)));
    fs::create_dir(d.join("maps")).unwrap();
    fs::write(
        d.join("maps/collapse.fnct"),
        "format 1\nsource path ../pair2.grpd\ntarget path ../point.grpd\n\
         object 1 p\nobject 2 p\n\
         arrow (1,1) (p,p)\narrow (1,2) (p,p)\narrow (2,1) (p,p)\narrow (2,2) (p,p)\n",
    )
    .unwrap();
    fs::write(
        d.join("maps/include.fnct"),
        "format 1\nsource path ../point.grpd\ntarget path ../z2.grpd\nobject p *\narrow (p,p) 0\n",
    )
    .unwrap();
    let z2 = Arc::new(from_group(&GroupTable::cyclic(2)));
    let space: Vec<String> = (0..6).map(|i| format!("e{i}")).collect();
    let act = ActionLaw::new(z2, space, vec![ObjectId::new(0); 6], |g, x| x ^ g.index()).unwrap();
    let (_, f) = action_to_actor(&act);
    fs::write(d.join("actor.fnct"), serialize_functor(&FunctorDocument::inline(&f))).unwrap();
    dir
}

fn line<'a>(out: &'a str, key: &str) -> &'a str {
    out.lines().find_map(|l| l.strip_prefix(&format!("{key}: "))).unwrap_or_else(|| panic!("no {key} in\n{out}"))
}

#[test]
fn validate_and_classify() {
    let dir = fixtures();
    let d = dir.path();
    let (code, out, _) = run(d, &["validate", "pair2.grpd"]);
    assert_eq!((code, line(&out, "valid"), line(&out, "arrows")), (0, "true", "4"));
    let text = fs::read_to_string(d.join("pair2.grpd")).unwrap();
    let broken: String = text.lines().filter(|l| !l.starts_with("inverse (1,2)")).map(|l| format!("{l}\n")).collect();
    fs::write(d.join("broken.grpd"), broken).unwrap();
    let (code, out, _) = run(d, &["validate", "broken.grpd"]);
    assert_eq!(code, 1);
    assert!(out.contains("violation: inverse-missing: inverse missing for arrow (1,2)"), "{out}");
    fs::write(d.join("garbled.grpd"), "format 1\nobject \"a\n").unwrap();
    let (code, out, _) = run(d, &["validate", "garbled.grpd"]);
    assert_eq!(code, 1);
    assert!(line(&out, "error").contains("line 2"));

    let (code, out, _) = run(d, &["classify", "pair2.grpd"]);
    assert_eq!((code, line(&out, "labels")), (0, "transitive, principal, banal"));
    let (_, out, _) = run(d, &["classify", "z3.grpd"]);
    assert_eq!(line(&out, "labels"), "transitive, plurigroup");
}

#[test]
fn orbits_trivialize_pullback() {
    let dir = fixtures();
    let d = dir.path();
    let (_, out, _) = run(d, &["orbits", "pair3.grpd"]);
    assert_eq!((line(&out, "orbits"), line(&out, "orbit")), ("1", "1, 2, 3"));
    let (code, out, _) = run(d, &["trivialize", "pair3.grpd", "--base", "2", "--out", "triv.grpd"]);
    assert_eq!((code, line(&out, "isomorphism"), line(&out, "trivial_arrows")), (0, "true", "9"));
    let (code, _, _) = run(d, &["validate", "triv.grpd"]);
    assert_eq!(code, 0);
    put(d, "two.grpd", &null(&["a", "b"]));
    let (code, _, err) = run(d, &["trivialize", "two.grpd"]);
    assert_eq!(code, 1);
    assert!(err.contains("not transitive"));
    let (code, out, _) = run(d, &["pullback", "z2.grpd", "--point", "x=*", "--point", "y=*"]);
    assert_eq!((code, line(&out, "arrows"), line(&out, "projection_s_equivalence")), (0, "8", "true"));
    let (code, _, _) = run(d, &["pullback", "z2.grpd", "--point", "x"]);
    assert_eq!(code, 2);
}

#[test]
fn functor_commands_resolve_relative_paths() {
    let dir = fixtures();
    let d = dir.path();
    let (code, out, _) = run(d, &["functor-classify", "maps/collapse.fnct"]);
    assert_eq!(code, 0);
    assert_eq!((line(&out, "s_equivalence"), line(&out, "actor")), ("true", "false"));
    assert_eq!(line(&out, "broken_implications"), "none");
    let (_, out, _) = run(d, &["kernel", "maps/collapse.fnct"]);
    assert_eq!((line(&out, "arrows"), line(&out, "banal")), ("4", "true"));
    let (_, out, _) = run(d, &["quotient", "maps/collapse.fnct"]);
    assert_eq!((line(&out, "objects"), line(&out, "arrows")), ("1", "1"));
    fs::write(d.join("maps/dangling.fnct"), "format 1\nsource path nowhere.grpd\ntarget path ../point.grpd\n").unwrap();
    let (code, _, _) = run(d, &["kernel", "maps/dangling.fnct"]);
    assert_eq!(code, 2);
}

#[test]
fn actions_and_butterflies() {
    let dir = fixtures();
    let d = dir.path();
    let (code, out, _) = run(d, &["action", "z2.grpd"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().filter(|l| l.starts_with("row: ")).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].contains("| gx |") && rows[3].contains("| xg |"));
    assert!(!out.contains("matches_formula: false"));
    let (_, out, _) = run(d, &["action", "actor.fnct"]);
    assert_eq!(out.lines().filter(|l| l.starts_with("act: ")).count(), 12);
    assert_eq!(line(&out, "principal"), "true");

    let (code, out, _) = run(d, &["butterfly", "actor.fnct", "--out", "conj.grpd"]);
    assert_eq!(code, 0);
    assert_eq!((line(&out, "conjugate_target_arrows"), line(&out, "wings")), ("18", "transverse"));
    let (_, out, _) = run(d, &["classify", "conj.grpd"]);
    assert_eq!(line(&out, "labels"), "transitive");
    let (code, _, _) = run(d, &["butterfly", "maps/collapse.fnct"]);
    assert_eq!(code, 1);
    let (_, out, _) = run(d, &["squares", "z3.grpd"]);
    assert_eq!((line(&out, "squares"), line(&out, "wings")), ("27", "transverse"));
}

#[test]
fn fractions_and_morita() {
    let dir = fixtures();
    let d = dir.path();
    let (code, out, _) = run(d, &["holograph", "maps/collapse.fnct"]);
    assert_eq!(code, 0);
    assert_eq!((line(&out, "irreducible"), line(&out, "morita_equivalence")), ("true", "true"));
    let (code, out, _) = run(d, &["fraction-compose", "maps/include.fnct", "maps/collapse.fnct"]);
    assert_eq!((code, line(&out, "equivalent_to_holograph_of_composite")), (0, "true"));
    let (code, _, _) = run(d, &["fraction-compose", "maps/collapse.fnct", "maps/collapse.fnct"]);
    assert_eq!(code, 1);

    let (code, out, _) = run(d, &["morita", "pair3.grpd", "point.grpd", "--out", "hat.grpd"]);
    assert_eq!((code, line(&out, "equivalent")), (0, "true"));
    assert_eq!((line(&out, "hat_arrows"), line(&out, "hat_parts")), ("16", "9, 1, 3, 3"));
    let (_, out, _) = run(d, &["validate", "hat.grpd"]);
    assert_eq!(line(&out, "arrows"), "16");
    let (code, out, _) = run(d, &["morita", "z2.grpd", "point.grpd"]);
    assert_eq!((code, line(&out, "equivalent")), (0, "false"));

    let (code, out, _) = run(d, &["cech", "z2.grpd", "--cover", "u=*", "--cover", "v=*"]);
    assert_eq!(code, 0);
    assert_eq!((line(&out, "relation"), line(&out, "legs_s_equivalences")), ("4", "true"));
}

#[test]
fn json_reports_and_documents() {
    let dir = fixtures();
    let d = dir.path();
    let (code, out, _) = run(d, &["--format", "json", "morita", "pair2.grpd", "point.grpd", "--out", "hat.json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["equivalent"], true);
    assert_eq!(v["hat_parts"], serde_json::json!([4, 1, 2, 2]));
    let (code, out, _) = run(d, &["validate", "hat.json"]);
    assert_eq!((code, line(&out, "arrows")), (0, "9"));
    let (_, out, _) = run(d, &["--format", "json", "orbits", "pair3.grpd"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["orbit"], serde_json::json!(["1", "2", "3"]));
}

#[test]
fn diptych_and_dot() {
    let dir = fixtures();
    let d = dir.path();
    let (code, out, _) = run(d, &["diptych-check", "--max-size", "2"]);
    assert_eq!((code, line(&out, "failures")), (0, "0"));
    assert_eq!(out.lines().filter(|l| l.starts_with("check: ")).count(), 13);

    let (code, out, _) = run(d, &["dot", "pair2.grpd"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches(" -> ").count(), 2);
    let (_, orbits, _) = run(d, &["dot", "pair3.grpd", "--view", "orbits"]);
    assert_eq!(orbits.matches("subgraph cluster_").count(), 1);
    let (_, b, _) = run(d, &["dot", "actor.fnct", "--view", "butterfly", "--out", "b.dot"]);
    assert!(b.is_empty());
    let written = fs::read_to_string(d.join("b.dot")).unwrap();
    assert!(written.contains("class=wing") && written.contains("class=co_wing"));
    let (_, again, _) = run(d, &["dot", "actor.fnct", "--view", "butterfly"]);
    assert_eq!(again, written);
}

#[test]
fn usage_errors_exit_two() {
    let dir = fixtures();
    let d = dir.path();
    assert_eq!(run(d, &["nonsense"]).0, 2);
    assert_eq!(run(d, &["classify"]).0, 2);
    assert_eq!(run(d, &["classify", "missing.grpd"]).0, 2);
    assert_eq!(run(d, &["--format", "yaml", "classify", "pair2.grpd"]).0, 2);
    assert_eq!(run(d, &["trivialize", "pair2.grpd", "--base", "nope"]).0, 2);
    assert_eq!(run(d, &["--help"]).0, 0);
}
