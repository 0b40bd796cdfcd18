//! End-to-end CLI tests: byte-identical golden stdout for the canonical
//! commands, exit-code contracts, SVG validity. Regenerate goldens with
//! `UPDATE_GOLDEN=1 cargo test -p milnorkit-cli`.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_milnorkit")
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("MILNORKIT_TOL")
        .output()
        .expect("spawn milnorkit")
}

fn check_golden(name: &str, args: &[&str]) {
    let out = run(args);
    assert!(
        out.status.success(),
        "{name}: exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    let path = golden_dir().join(format!("{name}.stdout"));
    if std::env::var("UPDATE_GOLDEN").is_ok() {
        std::fs::write(&path, &out.stdout).unwrap();
        return;
    }
    let expected = std::fs::read(&path)
        .unwrap_or_else(|_| panic!("missing golden file {}; run with UPDATE_GOLDEN=1", path.display()));
    assert!(
        out.stdout == expected,
        "{name}: stdout differs from {}",
        path.display()
    );
}

#[test]
fn golden_reports() {
    let ellipse = fixtures().join("ellipse_focal.json");
    let circle15 = fixtures().join("circle_r1_5.json");
    let circle2 = fixtures().join("circle_r2.json");
    let cases: Vec<(&str, Vec<String>)> = vec![
        ("01_critvals_n2", vec!["critvals", "--n", "2"].iter().map(|s| s.to_string()).collect()),
        (
            "02_tau_ellipse",
            vec![
                "tau".into(),
                "--n".into(),
                "1".into(),
                "--curve".into(),
                ellipse.display().to_string(),
            ],
        ),
        (
            "03_classify_circles",
            vec![
                "classify".into(),
                "--n".into(),
                "1".into(),
                "--curve-a".into(),
                circle15.display().to_string(),
                "--curve-b".into(),
                circle2.display().to_string(),
            ],
        ),
        ("04_census_n3", vec!["census", "--n", "3"].iter().map(|s| s.to_string()).collect()),
        (
            "05_census_n0_mod2",
            vec!["census", "--n", "0", "--mod2"].iter().map(|s| s.to_string()).collect(),
        ),
        ("06_hf_n0", vec!["hf", "--n", "0"].iter().map(|s| s.to_string()).collect()),
        ("07_hf_n5", vec!["hf", "--n", "5"].iter().map(|s| s.to_string()).collect()),
        (
            "08_hf_p5_q2",
            vec!["hf", "--p", "5", "--q", "2"].iter().map(|s| s.to_string()).collect(),
        ),
        (
            "09_quotient_p3_q1",
            vec!["quotient", "--p", "3", "--q", "1"].iter().map(|s| s.to_string()).collect(),
        ),
        (
            "10_pairing_p4",
            vec!["pairing", "--p", "4", "--q", "1", "--kappa", "0", "--coeffs", "0,1,0,-1"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        ),
        (
            "11_verdict_p2_q1",
            vec!["verdict", "--p", "2", "--q", "1"].iter().map(|s| s.to_string()).collect(),
        ),
        (
            "12_verdict_p6_q1",
            vec!["verdict", "--p", "6", "--q", "1"].iter().map(|s| s.to_string()).collect(),
        ),
    ];
    for (name, args) in &cases {
        let arg_refs: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
        check_golden(name, &arg_refs);
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    let ellipse = fixtures().join("ellipse_focal.json");
    let args = [
        "tau",
        "--n",
        "1",
        "--curve",
        ellipse.to_str().unwrap(),
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout, "repeated runs must agree byte for byte");
}

#[test]
fn exit_codes() {
    // Unknown flag: clap usage error, code 2.
    let out = run(&["census", "--n", "3", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));

    // Invalid parameters: code 2.
    let out = run(&["quotient", "--p", "4", "--q", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["hf", "--n", "1", "--p", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["pairing", "--p", "4", "--q", "1", "--kappa", "0", "--coeffs", "1,0,0,0"]);
    assert_eq!(out.status.code(), Some(2));

    // Curve too close to a critical value: invalid input, code 2.
    let tmp = std::env::temp_dir().join("milnorkit_bad_curve.json");
    let mut pts = String::new();
    for i in 0..16 {
        let th = 2.0 * std::f64::consts::PI * (i as f64) / 16.0;
        pts.push_str(&format!(
            "[{:.17}, {:.17}]{}",
            1.0001 * th.cos(),
            1.0001 * th.sin(),
            if i < 15 { "," } else { "" }
        ));
    }
    std::fs::write(&tmp, format!("{{\"closed\": true, \"points\": [{pts}]}}")).unwrap();
    let out = run(&["tau", "--n", "0", "--curve", tmp.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // Bad MILNORKIT_TOL: code 2.
    let out = Command::new(bin())
        .args(["tau", "--n", "0", "--curve", tmp.to_str().unwrap()])
        .env("MILNORKIT_TOL", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tolerance_override_changes_metadata() {
    let circle2 = fixtures().join("circle_r2.json");
    let base = run(&["tau", "--n", "0", "--curve", circle2.to_str().unwrap()]);
    let with_flag = run(&[
        "tau",
        "--n",
        "0",
        "--curve",
        circle2.to_str().unwrap(),
        "--tol",
        "1e-4",
    ]);
    let with_env = Command::new(bin())
        .args(["tau", "--n", "0", "--curve", circle2.to_str().unwrap()])
        .env("MILNORKIT_TOL", "1e-5")
        .output()
        .unwrap();
    let text = |o: &Output| String::from_utf8(o.stdout.clone()).unwrap();
    assert!(text(&base).contains("\"tol_tau\": 1e-6"));
    assert!(text(&with_flag).contains("\"tol_tau\": 0.0001"));
    assert!(text(&with_env).contains("\"tol_tau\": 0.00001"));
}

/// Minimal XML well-formedness scan: every opened tag closes, in order.
fn assert_well_formed_xml(text: &str) {
    let mut stack: Vec<String> = Vec::new();
    let mut rest = text;
    while let Some(start) = rest.find('<') {
        let end = rest[start..].find('>').expect("unclosed tag") + start;
        let tag = &rest[start + 1..end];
        rest = &rest[end + 1..];
        if tag.starts_with('?') || tag.starts_with('!') {
            continue;
        }
        if let Some(name) = tag.strip_prefix('/') {
            let open = stack.pop().unwrap_or_else(|| panic!("stray closing {name}"));
            assert_eq!(open, name, "mismatched tags");
        } else if !tag.ends_with('/') {
            let name: String = tag.split_whitespace().next().unwrap().to_string();
            stack.push(name);
        }
    }
    assert!(stack.is_empty(), "unclosed tags: {stack:?}");
}

#[test]
fn render_svg_is_valid() {
    let circle2 = fixtures().join("circle_r2.json");
    for n in [0u32, 2, 4] {
        let out_path = std::env::temp_dir().join(format!("milnorkit_render_{n}.svg"));
        let out = run(&[
            "render",
            "--n",
            &n.to_string(),
            "--curve",
            circle2.to_str().unwrap(),
            "--out",
            out_path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        let svg = std::fs::read_to_string(&out_path).unwrap();
        assert!(svg.starts_with("<?xml version=\"1.0\""));
        assert!(svg.contains("xmlns=\"http://www.w3.org/2000/svg\""));
        assert!(svg.contains("version=\"1.1\""));
        assert_well_formed_xml(&svg);
        let punctures = svg.matches("class=\"puncture\"").count();
        assert_eq!(punctures, n as usize + 1, "n = {n}");
    }

    // Plumbing-chain rendering carries one vertex glyph per chain node.
    let out_path = std::env::temp_dir().join("milnorkit_render_plumbing.svg");
    let out = run(&[
        "render",
        "--p",
        "5",
        "--q",
        "2",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&out_path).unwrap();
    assert_well_formed_xml(&svg);
    assert!(svg.matches("class=\"plumbing-vertex\"").count() >= 2);

    // Missing mode: input error.
    let out = run(&["render", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
