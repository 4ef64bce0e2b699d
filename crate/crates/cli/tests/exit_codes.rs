mod common;

use std::fs;

use common::run;

fn args(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

#[test]
fn passing_check_exits_zero() {
    for f in [
        "corpus/two_blocks.gdl",
        "corpus/tetrahedron.cx",
        "corpus/single_2.gdl",
    ] {
        assert_eq!(run(&args(&["check", f])).code, 0, "{f}");
    }
}

#[test]
fn invalid_inputs_exit_two() {
    for f in [
        "corpus/bad.gdl",
        "corpus/missing_face.cx",
        "corpus/cyclic.poset",
    ] {
        assert_eq!(run(&args(&["validate", f])).code, 2, "{f}");
        assert_eq!(run(&args(&["check", f])).code, 2, "{f}");
    }
}

#[test]
fn unreadable_or_garbled_inputs_exit_three() {
    assert_eq!(run(&args(&["check", "corpus/absent.gdl"])).code, 3);
    let r = run(&args(&["validate", "corpus/garbled.gdl"]));
    assert_eq!(r.code, 3);
    assert!(String::from_utf8_lossy(&r.stderr).contains("line 2"));
}

#[test]
fn cap_exits_four() {
    assert_eq!(
        run(&args(&["check", "corpus/two_blocks.gdl", "--cap", "9"])).code,
        4
    );
    assert_eq!(
        run(&args(&["check", "corpus/two_blocks.gdl", "--cap", "10"])).code,
        0
    );
}

#[test]
fn usage_errors_exit_sixty_four() {
    assert_eq!(run(&args(&[])).code, 64);
    assert_eq!(run(&args(&["frobnicate"])).code, 64);
    assert_eq!(run(&args(&["export", "corpus/triangle.cx"])).code, 64);
    assert_eq!(run(&args(&["check", "corpus/diamond.poset"])).code, 64);
    assert_eq!(
        run(&args(&["check", "corpus/triangle.cx", "--format", "xml"])).code,
        64
    );
    assert_eq!(run(&args(&["--help"])).code, 0);
}

#[test]
fn kind_flag_overrides_extension() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("logic.txt");
    fs::copy(
        common::workspace_root().join("corpus/two_blocks.gdl"),
        &path,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(run(&args(&["check", p])).code, 64);
    assert_eq!(run(&args(&["check", p, "--kind", "greechie"])).code, 0);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = out.to_str().unwrap();
    let direct = run(&args(&["check", "corpus/loop5.gdl", "--format", "json"]));
    let to_file = run(&args(&[
        "check",
        "corpus/loop5.gdl",
        "--format",
        "json",
        "--output",
        o,
    ]));
    assert_eq!(to_file.code, 0);
    assert!(to_file.stdout.is_empty());
    assert_eq!(fs::read(&out).unwrap(), direct.stdout);
}

#[test]
fn vertex_order_flips_signs_only() {
    let dir = tempfile::tempdir().unwrap();
    let order = dir.path().join("order.txt");
    fs::write(&order, "c b a\n").unwrap();
    let o = order.to_str().unwrap();
    let base = run(&args(&["export", "corpus/triangle.cx", "--json", "border"]));
    let flipped = run(&args(&[
        "export",
        "corpus/triangle.cx",
        "--json",
        "border",
        "--vertex-order",
        o,
    ]));
    assert_eq!(flipped.code, 0);
    assert_ne!(base.stdout, flipped.stdout);
    // Names list vertices in sign order; compare entries up to that and sign.
    let entries = |b: &[u8]| {
        let v: serde_json::Value = serde_json::from_slice(b).unwrap();
        let canon = |s: &str| {
            let mut c: Vec<char> = s.chars().filter(char::is_ascii_alphabetic).collect();
            c.sort();
            c.into_iter().collect::<String>()
        };
        let mut out = Vec::new();
        for col in v["columns"].as_array().unwrap() {
            for t in col["image"].as_array().unwrap() {
                out.push((
                    canon(col["element"].as_str().unwrap()),
                    canon(t["element"].as_str().unwrap()),
                    t["coeff"].as_i64().unwrap().abs(),
                ));
            }
        }
        out.sort();
        out
    };
    assert_eq!(entries(&base.stdout), entries(&flipped.stdout));
    assert_eq!(
        run(&args(&["check", "corpus/triangle.cx", "--vertex-order", o])).code,
        0
    );
    assert_eq!(
        run(&args(&[
            "check",
            "corpus/diamond.poset",
            "--vertex-order",
            o
        ]))
        .code,
        64
    );
}

#[test]
fn two_atom_blocks_warn_on_stderr() {
    let r = run(&args(&["check", "corpus/single_2.gdl"]));
    assert!(String::from_utf8_lossy(&r.stderr).contains("warning"));
}
