use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invbinom"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["eval", "series", "3", "0"], 0),
        (&["eval", "series", "3", "-1/2"], 0),
        (&["eval", "li", "2", "exp(i*pi*1/3)"], 0),
        (&["eval", "gpl", "0,-1", "1/2"], 0),
        (&["eval", "const", "beta4"], 0),
        (&["const", "zeta3", "--digits", "12"], 0),
        (&["list"], 0),
        (&["verify", "s3_4"], 0),
        (&["verify", "no_such_id"], 2),
        (&["eval", "const", "no_such_constant"], 2),
        (&["eval", "series", "3", "1+"], 2),
        (&["eval", "series", "3", "1", "--digits", "5"], 2),
        (&["verify", "all", "--jobs", "0"], 2),
        (&["frobnicate"], 2),
        (&["eval", "series", "3", "5"], 3),
        (&["eval", "li", "1", "1"], 3),
        (&["eval", "gpl", "1/2", "1/2"], 3),
    ];
    for (args, code) in cases {
        let o = run(args);
        assert_eq!(
            o.status.code(),
            Some(*code),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn eval_values() {
    assert_eq!(stdout(&run(&["eval", "series", "3", "0"])), "1");
    let s = stdout(&run(&["eval", "series", "3", "1", "--digits", "30"]));
    assert!(s.starts_with("1.02002080065254276946587561804"), "{s}");
    let b = stdout(&run(&["eval", "const", "beta4", "--digits", "30"]));
    assert!(b.starts_with("0.988944551741105336"), "{b}");
}

#[test]
fn verify_single_at_sixty_digits() {
    let o = run(&["verify", "chen_pos", "--digits", "60"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(
        s.contains("chen_pos") && s.contains("pass") && s.contains("1/1 pass"),
        "{s}"
    );
}

fn without_timing(path: &std::path::Path) -> serde_json::Value {
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn json_report_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let o = run(&[
        "verify",
        "all",
        "--digits",
        "40",
        "--jobs",
        "8",
        "--json",
        a.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&[
        "verify",
        "all",
        "--digits",
        "40",
        "--jobs",
        "2",
        "--json",
        b.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let (va, vb) = (without_timing(&a), without_timing(&b));
    assert_eq!(
        serde_json::to_string(&va).unwrap(),
        serde_json::to_string(&vb).unwrap()
    );
    assert_eq!(va["reports"].as_array().unwrap().len(), 21);
    assert_eq!(va["metadata"]["digits"], 40);
    assert!(va["metadata"]["tool_version"].is_string());
    assert!(
        va["reports"]
            .as_array()
            .unwrap()
            .iter()
            .all(|r| r["status"] == "pass")
    );
}
