//! Command-line behavior through `catena::cli::run`.

use catena::report::InvariantReport;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("catena").chain(args.iter().copied());
    let code = catena::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn betti_of_three_generated() {
    assert_eq!(ok(&["betti", "--gens", "31,47,57"]), "171 517 527\n");
}

#[test]
fn catenary_of_an_element() {
    assert_eq!(ok(&["catenary", "--gens", "31,47,57", "--element", "564"]), "14\n");
}

#[test]
fn report_of_the_plane_example() {
    let out = ok(&["report", "--gens", "1 0; 1 3; 1 5; 1 7", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["half_factorial"], true);
    assert_eq!(v["catenary"], 4);
    assert_eq!(v["omega"], 7);
    assert_eq!(v["tame"], 7);
    assert_eq!(v["tame_method"], "candidate-set");
    assert_eq!(v["catenary_mon"]["method"], "bounded-scan");
}

#[test]
fn report_round_trip_and_determinism() {
    let args = ["report", "--gens", "10,11,14,19", "--json", "--witnesses", "--bound", "120"];
    let first = ok(&args);
    assert_eq!(first, ok(&args));
    let r = InvariantReport::from_json(&first).unwrap();
    assert!(r.verify().unwrap());
    assert_eq!(r.catenary, 4);
    assert_eq!(r.catenary_hom, 5);
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", first);
}

#[test]
fn per_element_and_monoid_variants() {
    let g = ["--gens", "11,19,32"];
    let with = |cmd: &str| ok(&[&[cmd][..], &g[..]].concat());
    assert_eq!(with("catenary"), "11\n");
    assert_eq!(with("catenary-eq"), "21\n");
    assert_eq!(with("catenary-hom"), "11\n");
    assert_eq!(ok(&["catenary-mon", "--gens", "11,19,32", "--bound", "700"]), "21 (bounded scan, degree <= 700)\n");
    assert_eq!(ok(&["catenary-hom", "--gens", "31,47,57", "--element", "564"]), "14\n");
}

#[test]
fn nabla_dot_marks_missing_pairs() {
    let out = ok(&["nabla", "--gens", "31,47,57", "--element", "564", "--dot", "--show-missing"]);
    assert!(out.starts_with("graph nabla {"));
    assert_eq!(out.matches("style=dashed").count(), 1);
    assert!(out.contains("label=\"14\", style=dashed"));
}

#[test]
fn factorizations_and_distance() {
    assert_eq!(ok(&["factorizations", "--gens", "31,47,57", "--element", "564"]), "0 12 0\n9 0 5\n13 1 2\n");
    assert_eq!(ok(&["distance", "--gens", "31,47,57", "--from", "13 1 2", "--to", "0 12 0"]), "15\n");
}

#[test]
fn lift_output_parses_back() {
    let lifted = ok(&["lift", "--gens", "10,11,14,19", "--kind", "hom"]);
    assert_eq!(lifted, "1 0; 1 10; 1 11; 1 14; 1 19\n");
    assert_eq!(ok(&["half-factorial", "--gens", lifted.trim()]), "true (omega = (1,0))\n");
    assert_eq!(ok(&["half-factorial", "--gens", "10,11,14,19"]), "false\n");
}

#[test]
fn omega_and_tame() {
    assert_eq!(ok(&["omega", "--gens", "2,3"]), "3\n");
    assert_eq!(ok(&["omega", "--gens", "2,3", "--element", "2"]), "2\n");
    assert_eq!(ok(&["tame", "--gens", "2,3", "--element", "6"]), "3\n");
    assert_eq!(ok(&["tame", "--gens", "2,3,4", "--auto-minimize"]), "3\n");
}

#[test]
fn file_input() {
    let dir = std::env::temp_dir().join(format!("catena-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gens.json");
    std::fs::write(&path, r#"{"generators": [[31], [47], [57]]}"#).unwrap();
    assert_eq!(ok(&["betti", "--file", path.to_str().unwrap()]), "171 517 527\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn invalid_input_exits_with_two() {
    for args in [
        &["betti", "--gens", "1,-1"][..],
        &["betti", "--gens", "3,x"],
        &["betti", "--gens", "0,3"],
        &["omega", "--gens", "2,3,4"],
        &["catenary", "--gens", "31,47,57", "--element", "5"],
        &["catenary", "--gens", "31,47,57", "--element", "1 2"],
        &["betti"],
        &["no-such-command"],
    ] {
        let (code, out, err) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty(), "{args:?}");
        assert!(!err.is_empty() && !err.contains("panicked"), "{args:?}: {err}");
    }
}

#[test]
fn budget_exhaustion_exits_with_three() {
    std::env::set_var("CATENA_BUDGET", "5");
    let (code, _, err) = run(&["betti", "--gens", "31,47,57"]);
    std::env::remove_var("CATENA_BUDGET");
    assert_eq!(code, 3, "{err}");
    assert!(err.contains("budget"));
}
