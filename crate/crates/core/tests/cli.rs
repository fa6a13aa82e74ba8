use std::path::PathBuf;

use serde_json::Value;
use spantree_kh::cli::run;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("spantree-kh").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn golden(name: &str, args: &[&str]) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    let (code, out, err) = cli(args);
    assert_eq!(code, 0, "{err}");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap();
    assert_eq!(out, want, "{name} differs; rerun with UPDATE_GOLDEN=1 after checking the change");
}

#[test]
fn golden_trefoil4() {
    golden("trefoil4_trees.txt", &["trees", "trefoil4"]);
    golden("trefoil4_trees.json", &["trees", "trefoil4", "--json"]);
    golden("trefoil4_jones.json", &["jones", "trefoil4", "--json"]);
    golden("trefoil4_info.json", &["info", "trefoil4", "--json"]);
    golden("trefoil4_spantree-complex.json", &["spantree-complex", "trefoil4", "--json"]);
    golden("trefoil4_spectral.json", &["spectral", "trefoil4", "--json"]);
}

#[test]
fn trees_table_has_five_rows() {
    let (code, out, _) = cli(&["trees", "trefoil4"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 5);
    for word in ["ℓDD̄d̄", "ℓDℓ̄D̄", "LdD̄d̄", "Ldℓ̄D̄", "LLd̄d̄"] {
        assert_eq!(rows.iter().filter(|r| r.contains(word)).count(), 1, "{word}");
    }
    // combining bars take no column
    let starts: Vec<usize> = rows.iter().map(|r| r.split("  ").take(3).map(|c| c.chars().filter(|&ch| ch != '\u{304}').count()).sum()).collect();
    assert!(starts.windows(2).all(|w| w[0] == w[1]), "{out}");
}

#[test]
fn jones_json_fields() {
    let (_, out, _) = cli(&["jones", "trefoil4", "--json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["bracket"], "A^-8+1-A^4");
    assert_eq!(v["bracket"], v["bracket_spantree"]);
    assert_eq!(v["jones"], "-t^-4+t^-3+t^-1");
    assert_eq!(v["writhe"], -4);
}

#[test]
fn homology_json_round_trips() {
    let (code, out, _) = cli(&["homology", "3_1", "--unreduced", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
    let torsion: Vec<&Value> = v["groups"].as_array().unwrap().iter().filter(|g| !g["torsion"].as_array().unwrap().is_empty()).collect();
    assert_eq!(torsion.len(), 1);
    assert_eq!(torsion[0]["grading"], serde_json::json!([-2, -7]));
    assert_eq!(torsion[0]["torsion"], serde_json::json!(["2"]));
}

#[test]
fn pd_codes_on_the_command_line() {
    let (code, out, _) = cli(&["jones", "PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["jones"], "-t^-4+t^-3+t^-1");
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["trees", "10_161"]).0, 2);
    assert_eq!(cli(&["trees", "PD[X(1,2,3"]).0, 2);
    assert_eq!(cli(&["frobnicate"]).0, 2);
    assert_eq!(cli(&["spectral", "3_1", "--coeff", "z"]).0, 2);
    assert_eq!(cli(&["homology", "3_1", "--coeff", "f2"]).0, 0);
    assert_eq!(cli(&["--help"]).0, 0);
}

#[test]
fn crossing_cap() {
    let (code, _, err) = cli(&["homology", "8_19", "--reduced"]);
    assert_eq!(code, 0, "{err}");
    let d = spantree_kh::cli::find("8_19").unwrap().diagram().unwrap();
    let big = d.add_kink(1, 1, false).unwrap().add_kink(2, -1, false).unwrap().to_pd_string();
    let (code, _, err) = cli(&["homology", &big]);
    assert_eq!(code, 2, "{err}");
    assert!(err.contains("10"), "{err}");
    assert_eq!(cli(&["jones", &big]).0, 0);
}

#[test]
fn verify_corpus() {
    let (code, out, _) = cli(&["verify", "--all"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().filter(|l| l.starts_with("PASS")).count() > 80);
    assert!(!out.lines().any(|l| l.starts_with("FAIL")));

    let (code, out, _) = cli(&["verify", "alternating", "--knot", "4_1", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["status"], "pass");
    assert_eq!(v[0]["check"], "alternating");
}

#[test]
fn regen_matches_shipped_corpus() {
    let (code, out, _) = cli(&["verify", "--regen"]);
    assert_eq!(code, 0);
    let regenerated: Vec<spantree_kh::cli::CorpusEntry> = serde_json::from_str(&out).unwrap();
    assert_eq!(regenerated, spantree_kh::cli::builtin());
}

#[test]
fn trace_lists_every_collapse() {
    let (_, out, _) = cli(&["spantree-complex", "trefoil4", "--trace", "--json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["trace"].as_array().unwrap().len(), v["stats"]["collapses"].as_u64().unwrap() as usize);
    assert_eq!(v["generators"].as_array().unwrap().len(), 5);
}
