use std::path::PathBuf;
use std::process::{Command, Output};

use cdga_config::io::AlgebraFile;
use cdga_config::presets;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdga-config")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_statuses() {
    assert_eq!(run(&["check", "s2xs3.json"]).status.code(), Some(0));
    assert_eq!(run(&["check", &fixture("orientation_not_closed.json")]).status.code(), Some(2));
    assert_eq!(run(&["check", &fixture("empty_basis.json")]).status.code(), Some(1));
    assert_eq!(run(&["check", &fixture("float_coeff.json")]).status.code(), Some(1));
    assert_eq!(run(&["check", "missing.json"]).status.code(), Some(1));
    assert_eq!(run(&["cxi", "s2", "--xi", "x⊗x"]).status.code(), Some(3));
    assert_eq!(run(&["cxi", "s2xs3", "--xi", "y⊗"]).status.code(), Some(1));
    assert_eq!(run(&["classify-example", "--q", "1,0.5"]).status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
}

#[test]
fn parse_errors_carry_a_position() {
    let o = run(&["check", &fixture("syntax_error.json")]);
    assert!(stdout(&o).contains("line 6, column 5"), "{}", stdout(&o));
    let o = run(&["check", &fixture("orientation_not_closed.json")]);
    assert!(stdout(&o).contains("orientation does not vanish on d(a)"));
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["--json", "check", "s3xs4"],
        vec!["--json", "diagonal", "cp2"],
        vec!["--json", "cxi", "s2xs3", "--seed", "11"],
        vec!["--json", "classify-example", "--q", "0,1/2"],
        vec!["--json", "check-table"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(v["status"], "ok", "{args:?}");
    }
}

#[test]
fn product_files() {
    let dir = std::env::temp_dir().join(format!("cdga-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("s2xs3.json");
    let o = run(&["product", "s2", "s3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sign: +1"));
    // same structure as the shipped preset, label for label
    let mut written = AlgebraFile::read(&out).unwrap();
    let mut preset = presets::file("s2xs3").unwrap();
    written.name.clear();
    preset.name.clear();
    let w = written.algebra().unwrap();
    let p = preset.algebra().unwrap();
    assert_eq!(w.basis().labels(), p.basis().labels());
    for i in 0..w.dim() {
        for j in 0..w.dim() {
            assert_eq!(w.basis_product(i, j), p.basis_product(i, j));
        }
    }

    let out = dir.join("s3s3.json");
    let o = run(&["--json", "product", "s3", "s3", "--out", out.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["product"]["formal_dimension"], 6);
    assert_eq!(v["betti_agree"], true);

    // S² × point is S² again
    let out = dir.join("s2pt.json");
    run(&["product", "s2", "point", "--out", out.to_str().unwrap()]);
    let w = AlgebraFile::read(&out).unwrap();
    let s2 = presets::file("s2").unwrap();
    assert_eq!(w.basis, s2.basis);
    assert_eq!(w.products, s2.products);
    assert_eq!(w.orientation, s2.orientation);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn spec_examples() {
    let t = stdout(&run(&["diagonal", "s3.json"]));
    assert!(t.contains("Δ = 1⊗y - y⊗1"));
    let t = stdout(&run(&["betti-fm2", "s2.json"]));
    assert!(t.contains("A⊗A/(Δ): 1 0 1"), "{t}");
    let t = stdout(&run(&["cxi", "s3.json", "--x", "0"]));
    assert!(t.contains("Betti: 1 0 0 1"), "{t}");
    let t = stdout(&run(&["cxi", "s2xs3.json", "--xi", "1*(y(x)xy)"]));
    assert!(t.contains("(S1)² = y⊗xy"), "{t}");
    let o = run(&["classify-example", "--q", "0,1,2,-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("q = r required"));
}
