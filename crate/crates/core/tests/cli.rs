use std::process::Command;

use multiset_smt::cli::{CoxDoc, DegenerateDoc, DiscreteDoc, HilbertDoc, PolynomialDoc, RelationFile, StraightenDoc, VerifyDoc};

fn msmt(args: &[&str], seed: Option<&str>) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_msmt"));
    cmd.args(args);
    match seed {
        Some(s) => cmd.env("MSMT_SEED", s),
        None => cmd.env_remove("MSMT_SEED"),
    };
    let out = cmd.output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn straighten_round_trips_and_is_deterministic() {
    let args = ["straighten", "--ell", "3", "--ref", "2,3,1", "--rows", "24;134;2"];
    let (code, text) = msmt(&args, Some("9"));
    assert_eq!(code, 0);
    let doc: StraightenDoc = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_value(&doc).unwrap(), serde_json::from_str::<serde_json::Value>(&text).unwrap());
    assert_eq!(doc.expansion.coefficients.len(), 3);
    assert_eq!(msmt(&args, Some("9")).1, text);
}

#[test]
fn verify_reads_relation_files() {
    let dir = std::env::temp_dir().join(format!("msmt-verify-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = PolynomialDoc {
        ell: 3,
        reference_shape: None,
        tableaux: vec![
            vec![vec![3, 4], vec![2]],
            vec![vec![2, 4], vec![3]],
            vec![vec![2, 3], vec![4]],
        ],
        coefficients: vec!["1/1".into(), "-1/1".into(), "1/1".into()],
    };
    let mut bad = good.clone();
    bad.coefficients[2] = "1/2".into();
    let path = dir.join("relations.json");
    let file = RelationFile { relations: vec![good, bad] };
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let (code, text) = msmt(&["verify", "--input", path.to_str().unwrap()], None);
    assert_eq!(code, 1);
    let doc: VerifyDoc = serde_json::from_str(&text).unwrap();
    assert_eq!(doc.results.iter().map(|r| r.passed).collect::<Vec<_>>(), [true, false]);
    let (code, _) = msmt(&["verify", "--input", dir.join("missing.json").to_str().unwrap()], None);
    assert_eq!(code, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn report_commands() {
    let (code, text) = msmt(&["hilbert", "--ell", "3", "--ref", "2,3,1", "--max-total", "2"], None);
    assert_eq!(code, 0);
    let doc: HilbertDoc = serde_json::from_str(&text).unwrap();
    assert!(doc.mismatches.is_empty());

    let (code, text) = msmt(&["discrete", "--ell", "3", "--ref", "2,3,1", "--max-degree", "3"], None);
    assert_eq!(code, 0);
    let doc: DiscreteDoc = serde_json::from_str(&text).unwrap();
    assert_eq!(doc.max_generator_degree, Some(3));

    let (code, text) = msmt(&["cox", "--range", "2", "--orbit", "s1,s2"], None);
    assert_eq!(code, 0);
    let doc: CoxDoc = serde_json::from_str(&text).unwrap();
    assert!(doc.mismatches.is_empty());

    let (code, text) = msmt(&["degenerate", "--ell", "2", "--max-total", "2", "--cox-max", "1"], None);
    assert_eq!(code, 0);
    let doc: DegenerateDoc = serde_json::from_str(&text).unwrap();
    assert_eq!(doc.mismatches, 0);
    assert!(doc.cox.special_rules_match);

    assert_eq!(msmt(&["selftest"], None).0, 0);
    assert_eq!(msmt(&["enumerate", "--ell", "3", "--ref", "2,2", "--multidegree", "1"], None).0, 2);
}
