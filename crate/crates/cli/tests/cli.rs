use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use amalgam::diagram::has_cocone;
use amalgam::format::{self, Document, EvidenceDoc};
use amalgam::poset::is_forest_like;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(name)
}

fn amalgam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amalgam"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn amalgam_on(args: &[&str], files: &[&str]) -> Output {
    let paths: Vec<String> = files.iter().map(|f| corpus(f).display().to_string()).collect();
    let mut all: Vec<&str> = args.to_vec();
    all.extend(paths.iter().map(String::as_str));
    amalgam(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn document(o: &Output) -> Document {
    format::parse(&stdout(o)).unwrap_or_else(|e| panic!("{e}\n{}", stdout(o)))
}

#[test]
fn check_bowtie_refutes_with_witness() {
    let o = amalgam_on(&["check", "--format", "structured"], &["bowtie.json"]);
    assert_eq!(o.status.code(), Some(1));
    let Document::Verdict(v) = document(&o) else {
        panic!("not a verdict")
    };
    assert!(!v.amalgamable_ap_jep);
    let EvidenceDoc::NonForest { witness, point, .. } = v.evidence else {
        panic!("wrong evidence")
    };
    assert_eq!(point, "C");
    let d = format::diagram_from_doc(&witness, Path::new(".")).unwrap();
    assert!(!has_cocone(&d).exists());
}

#[test]
fn check_span_certifies() {
    let o = amalgam_on(&["check", "--format", "structured"], &["span.json"]);
    assert_eq!(o.status.code(), Some(0));
    let Document::Verdict(v) = document(&o) else {
        panic!("not a verdict")
    };
    assert!(matches!(v.evidence, EvidenceDoc::Certificate { .. }));
}

#[test]
fn check_text_is_default() {
    let o = amalgam_on(&["check"], &["span_poset.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("amalgamable with AP and JEP: yes"));
}

#[test]
fn check_exit_codes_follow_the_library() {
    for name in [
        "bowtie",
        "boat",
        "span",
        "parallel_pair",
        "equalized_pair",
        "chain3",
        "crown",
        "fan_in3",
        "cospan",
    ] {
        let path = corpus(&format!("{name}.json"));
        let shape = format::shape_from_document(&format::read_document(&path).unwrap()).unwrap();
        let want = if amalgam::decide(&shape).unwrap().amalgamable_ap_jep {
            0
        } else {
            1
        };
        let o = amalgam(&["check", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(want), "{name}");
    }
}

#[test]
fn malformed_input_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"kind\": \"category\",\n  \"objects\": [\"A\",]\n}").unwrap();
    let o = amalgam(&["check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    std::fs::write(&bad, r#"{"kind": "category", "objects": ["A", 7]}"#).unwrap();
    let o = amalgam(&["check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("objects[1]"), "{}", stderr(&o));

    std::fs::write(
        &bad,
        r#"{"kind": "category", "objects": ["A"], "morphisms": [{"name": "e", "dom": "A", "cod": "A"}]}"#,
    )
    .unwrap();
    let o = amalgam(&["check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("e"), "{}", stderr(&o));

    let o = amalgam(&["check", "/nonexistent/shape.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(amalgam(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(amalgam(&["check"]).status.code(), Some(2));
    assert_eq!(amalgam(&["gen", "poset", "--max-size", "0"]).status.code(), Some(2));
    assert_eq!(amalgam(&["--help"]).status.code(), Some(0));
}

#[test]
fn witness_for_boat_is_empty_at_e() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.json");
    let o = amalgam_on(&["witness", "--out", out.to_str().unwrap()], &["boat.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let Document::Diagram(doc) = format::read_document(&out).unwrap() else {
        panic!()
    };
    assert!(doc.carriers["E"].is_empty());
    assert!(doc.collision.is_some());
    let o = amalgam(&["oracle", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn witness_not_applicable_for_forest_shapes() {
    let o = amalgam_on(&["witness"], &["span.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("every diagram"));
}

#[test]
fn shrunk_witness_is_still_cocone_free() {
    let o = amalgam_on(&["witness", "--shrink"], &["parallel_pair.json"]);
    assert_eq!(o.status.code(), Some(0));
    let Document::Diagram(doc) = document(&o) else { panic!() };
    let d = format::diagram_from_doc(&doc, Path::new(".")).unwrap();
    assert!(!has_cocone(&d).exists());
}

#[test]
fn oracle_on_concrete_bowtie_collides_at_b() {
    let o = amalgam_on(&["oracle", "--format", "structured"], &["bowtie_concrete.json"]);
    assert_eq!(o.status.code(), Some(1));
    let Document::Diagram(doc) = document(&o) else { panic!() };
    assert_eq!(doc.collision.unwrap().object, "B");
    let o = amalgam_on(&["oracle"], &["bowtie_concrete.json"]);
    assert!(stdout(&o).starts_with("no cocone"));
}

#[test]
fn oracle_finds_cocone_for_inclusions() {
    let o = amalgam_on(&["oracle", "--format", "structured"], &["span_inclusions.json"]);
    assert_eq!(o.status.code(), Some(0));
    let Document::Cocone(c) = document(&o) else { panic!() };
    assert_eq!(c.apex.len(), 3);
}

#[test]
fn cocone_on_chain_is_top_carrier() {
    let o = amalgam_on(&["cocone"], &["chain3.json", "chain_inclusions.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let Document::Cocone(c) = document(&o) else { panic!() };
    assert_eq!(c.apex, vec!["a", "b", "c"]);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    std::fs::write(&out, stdout(&o)).unwrap();
    let v = amalgam(&[
        "validate",
        out.to_str().unwrap(),
        "--diagram",
        corpus("chain_inclusions.json").to_str().unwrap(),
    ]);
    assert_eq!(v.status.code(), Some(0), "{}", stderr(&v));
    assert!(stdout(&v).contains("valid cocone"));
}

#[test]
fn cocone_refuses_non_forest_shape() {
    let o = amalgam_on(&["cocone"], &["bowtie.json", "bowtie_concrete.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tampered_cocone_fails_validation() {
    let o = amalgam_on(&["oracle", "--format", "structured"], &["span_inclusions.json"]);
    let Document::Cocone(mut c) = document(&o) else {
        panic!()
    };
    let leg = c.legs.get_mut("a").unwrap();
    let first = leg[0][1].clone();
    leg[1][1] = first;
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    std::fs::write(&out, format::render(&Document::Cocone(c))).unwrap();
    let v = amalgam(&[
        "validate",
        out.to_str().unwrap(),
        "--diagram",
        corpus("span_inclusions.json").to_str().unwrap(),
    ]);
    assert_eq!(v.status.code(), Some(2));
}

#[test]
fn gen_is_reproducible_and_valid() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = amalgam(&["gen", "poset", "5", "--seed", "7", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let Document::Poset(p) = format::read_document(&a).unwrap() else {
        panic!()
    };
    assert_eq!(format::poset_from_doc(&p).unwrap().len(), 5);
    let other = amalgam(&["gen", "poset", "5", "--seed", "8"]);
    assert_ne!(stdout(&other).as_bytes(), std::fs::read(&a).unwrap());
}

#[test]
fn gen_forest_and_nonforest() {
    for seed in 0..5 {
        let s = seed.to_string();
        let o = amalgam(&["gen", "forest", "6", "--seed", &s]);
        let Document::Poset(p) = document(&o) else { panic!() };
        assert!(is_forest_like(&format::poset_from_doc(&p).unwrap()).is_forest());
        let o = amalgam(&["gen", "nonforest", "6", "--seed", &s]);
        let Document::Poset(p) = document(&o) else { panic!() };
        assert!(!is_forest_like(&format::poset_from_doc(&p).unwrap()).is_forest());
    }
}

#[test]
fn gen_respects_bounds() {
    assert_eq!(amalgam(&["gen", "poset", "13"]).status.code(), Some(2));
    assert_eq!(
        amalgam(&["gen", "poset", "13", "--max-size", "13"]).status.code(),
        Some(0)
    );
    assert_eq!(amalgam(&["gen", "nonforest", "3"]).status.code(), Some(2));
    assert_eq!(amalgam(&["gen", "diagram"]).status.code(), Some(2));
}

#[test]
fn gen_diagram_over_shapes() {
    for shape in ["span_poset.json", "boat.json", "parallel_pair.json"] {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("d.json");
        let o = amalgam(&[
            "gen",
            "diagram",
            "--shape",
            corpus(shape).to_str().unwrap(),
            "--seed",
            "3",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{shape}: {}", stderr(&o));
        let v = amalgam(&["validate", out.to_str().unwrap()]);
        assert_eq!(v.status.code(), Some(0), "{shape}: {}", stderr(&v));
    }
}

#[test]
fn explain_names_the_obstruction() {
    let o = amalgam_on(&["explain"], &["bowtie.json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("minimal element `C`"), "{text}");
    let o = amalgam_on(&["explain"], &["span.json"]);
    assert!(stdout(&o).contains("adjoin `p` below"));
}

#[test]
fn validate_accepts_the_whole_corpus() {
    let dir = corpus("");
    let mut files: Vec<String> = Vec::new();
    for sub in [dir.clone(), dir.join("inverse")] {
        for entry in std::fs::read_dir(sub).unwrap() {
            let p = entry.unwrap().path();
            if p.extension().is_some_and(|e| e == "json") {
                files.push(p.display().to_string());
            }
        }
    }
    files.sort();
    let mut args = vec!["validate"];
    args.extend(files.iter().map(String::as_str));
    let o = amalgam(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), files.len());
}

#[test]
fn validate_inverse_category_writes_representation() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rep.json");
    let o = amalgam(&[
        "validate",
        corpus("inverse/brandt.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("faithful representation"));
    let Document::Diagram(rep) = format::read_document(&out).unwrap() else {
        panic!()
    };
    assert!(!rep.carriers.is_empty());
}

#[test]
fn validate_rejects_wrong_pseudoinverse() {
    let path = corpus("inverse/symmetric_inverse_2.json");
    let Document::Category(mut doc) = format::read_document(&path).unwrap() else {
        panic!()
    };
    let pinv = doc.pinv.as_mut().unwrap();
    let keys: Vec<String> = pinv.keys().cloned().collect();
    let (a, b) = (keys[0].clone(), keys[1].clone());
    let va = pinv[&a].clone();
    let vb = pinv[&b].clone();
    pinv.insert(a, vb);
    pinv.insert(b, va);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bad.json");
    std::fs::write(&out, format::render(&Document::Category(doc))).unwrap();
    let o = amalgam(&["validate", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verdict_documents_revalidate() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["bowtie.json", "span.json"] {
        let out = dir.path().join(format!("v_{name}"));
        amalgam_on(&["check", "--out", out.to_str().unwrap()], &[name]);
        let v = amalgam(&["validate", out.to_str().unwrap()]);
        assert_eq!(v.status.code(), Some(0), "{name}: {}", stderr(&v));
    }
}

#[test]
fn verify_flags_are_accepted() {
    assert_eq!(
        amalgam_on(&["check", "--no-verify"], &["bowtie.json"]).status.code(),
        Some(1)
    );
    assert_eq!(
        amalgam_on(&["check", "--no-verify", "--verify"], &["span.json"])
            .status
            .code(),
        Some(0)
    );
}
