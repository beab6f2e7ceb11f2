use std::process::{Command, Output};

fn hurwitz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn realize_builtins() {
    let o = hurwitz(&["realize", "--builtin", "g4"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("order: 24"), "{out}");
    assert!(out.contains("reversible: yes"), "{out}");

    let o = hurwitz(&["realize", "--builtin", "q8-ijk"]);
    let out = stdout(&o);
    assert!(out.contains("order: 8"), "{out}");
    assert!(out.contains("reversible: no"), "{out}");
    assert!(out.contains("m k j i = m"), "{out}");

    let o = hurwitz(&["realize", "<a | a^5>"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("order: 5"));
}

#[test]
fn realize_json_round_trips() {
    let o = hurwitz(&["realize", "--builtin", "g6", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 48);
    assert_eq!(v["generators"][0]["order"], 3);
    assert_eq!(v["generators"][1]["order"], 2);
    assert_eq!(v["reversibility"]["status"], "reversible");

    let o = hurwitz(&["realize", "--builtin", "dihedral-rs:4", "--table"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 8);
}

#[test]
fn realize_errors() {
    let o = hurwitz(&["realize", "<a, b | a^3"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("cannot parse presentation"));

    let o = hurwitz(&["realize", "<a, b | a b a^-1 b^-1>", "--coset-cap", "50"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("coset-cap"));

    let o = hurwitz(&["realize", "--builtin", "nope"]);
    assert_eq!(code(&o), 1);

    let o = hurwitz(&["frobnicate"]);
    assert_eq!(code(&o), 1);

    let o = hurwitz(&["orbit", "a", "--builtin", "g4", "--node-cap", "0"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn orbit_sizes() {
    for (group, factors, want) in [
        ("g4", "a a b b", "36"),
        ("g4", "a b a b", "27"),
        ("s3", "(1 2) (2 3)", "3"),
        ("s3", "(1 2), (1 2)", "1"),
        ("g6", "a, b", ""),
    ] {
        let o = hurwitz(&["orbit", "--builtin", group, factors]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        if !want.is_empty() {
            assert_eq!(stdout(&o).trim(), want, "{group} {factors}");
        }
    }
}

#[test]
fn orbit_json_and_caps() {
    let o = hurwitz(&["orbit", "--builtin", "g4", "a a b b", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["size"], 36);
    assert_eq!(v["capped"], false);

    let o = hurwitz(&["orbit", "--builtin", "g4", "a a b b", "--node-cap", "10"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with(">=10"));
    let o = hurwitz(&[
        "orbit",
        "--builtin",
        "g4",
        "a a b b",
        "--node-cap",
        "10",
        "--strict",
    ]);
    assert_eq!(code(&o), 3);

    let o = hurwitz(&["orbit", "--builtin", "g4", "a c"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn orbit_graphs() {
    let o = hurwitz(&["orbit", "--builtin", "s3", "(1 2) (2 3)", "--graph", "dot"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph orbit {"));
    assert_eq!(dot.matches("[label=\"(").count(), 3);
    assert_eq!(dot.matches(" -> ").count(), 3);

    let o = hurwitz(&["orbit", "--builtin", "s3", "(1 2) (2 3)", "--graph", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 3);
    assert_eq!(v["edges"].as_array().unwrap().len(), 3);

    let o = hurwitz(&[
        "orbit",
        "--builtin",
        "s3",
        "(1 2), (1 2)",
        "--format",
        "dot",
    ]);
    assert_eq!(stdout(&o).matches(" -> ").count(), 0);
    let o = hurwitz(&[
        "orbit",
        "--builtin",
        "s3",
        "(1 2), (1 2)",
        "--format",
        "dot",
        "--self-loops",
    ]);
    assert_eq!(stdout(&o).matches("n0 -> n0").count(), 1);

    let o = hurwitz(&[
        "orbit",
        "--builtin",
        "g4",
        "a a b b",
        "--graph",
        "dot",
        "--node-cap",
        "5",
    ]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("larger --node-cap"));
}

#[test]
fn checks_pass() {
    let o = hurwitz(&["check", "cycle", "--samples", "100", "--seed", "7"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("cycle: pass"));

    let o = hurwitz(&["check", "closed-form", "--range", "20"]);
    assert_eq!(code(&o), 0);

    for suite in [
        "pair-swap",
        "pair-inverse",
        "flip-inverse",
        "conjugate",
        "involution-reverse",
        "double-reverse",
        "mirror-moves",
    ] {
        let o = hurwitz(&["check", suite, "--samples", "20"]);
        assert_eq!(code(&o), 0, "{suite}: {}", stdout(&o));
    }

    let o = hurwitz(&["check", "cycle", "--samples", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["report"]["groups"].as_array().unwrap().len(), 5);
}

#[test]
fn check_refusals_and_strictness() {
    let o = hurwitz(&["check", "double-reverse", "--builtin", "q8-ijk"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("refused"));
    assert!(stderr(&o).contains("not reversible"));

    let o = hurwitz(&["check", "no-such-theorem"]);
    assert_eq!(code(&o), 1);

    let args = [
        "check",
        "cycle",
        "--builtin",
        "g6",
        "--samples",
        "5",
        "--node-cap",
        "1",
    ];
    let o = hurwitz(&args);
    assert_eq!(code(&o), 0);
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(code(&hurwitz(&strict)), 3);
}

#[test]
fn scan_g6() {
    for len in ["2", "3"] {
        let o = hurwitz(&["scan-g6", "--max-len", len]);
        assert_eq!(code(&o), 0);
        assert!(
            stderr(&o).contains("counterexample candidates: 0"),
            "{}",
            stderr(&o)
        );
    }
    let o = hurwitz(&["scan-g6", "--max-len", "4", "--node-cap", "5000000"]);
    assert_eq!(code(&o), 0);
    let csv = stdout(&o);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("multiset,permutation,orbit_size,capped"));
    assert_eq!(lines.count(), 3 + 9 + 27 + 81);
    assert!(stderr(&o).contains("multisets: 34, uniform: 34, counterexample candidates: 0"));

    let o = hurwitz(&["scan-g6", "--max-len", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["multisets"].as_array().unwrap().len(), 9);
}

#[test]
fn reversible_command() {
    let o = hurwitz(&["reversible", "--builtin", "q8-ab", "--explain"]);
    let out = stdout(&o);
    assert!(out.starts_with("reversible\n"), "{out}");
    assert_eq!(out.matches("= 1").count(), 3);

    let o = hurwitz(&["reversible", "--builtin", "q8-ijk", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["status"], "not_reversible");
    assert_eq!(v["witness_value"], "m");

    let o = hurwitz(&["reversible", "<a, b | a^2, b^3, a b a b^-1>"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn double_reverse_command() {
    let o = hurwitz(&["double-reverse", "--builtin", "q8-ijk", "i, j, i j"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("double reverse: (j i, j, i)"), "{out}");
    assert!(out.contains("no guarantee"), "{out}");

    let o = hurwitz(&[
        "double-reverse",
        "--builtin",
        "g6",
        "a b, b a^-1",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "equal");
    assert_eq!(v["size_left"], v["size_right"]);
    assert_eq!(v["output"][0], "a^-1 b");
}

#[test]
fn presentation_from_file() {
    let path = std::env::temp_dir().join(format!("hurwitz-cli-{}.txt", std::process::id()));
    std::fs::write(&path, "<a, b | a^2, b^3, a b a b a b>\n").unwrap();
    let p = path.to_str().unwrap();
    let o = hurwitz(&["realize", "--presentation", p]);
    assert!(stdout(&o).contains("order: 12"), "{}", stderr(&o));
    let o = hurwitz(&["orbit", "--presentation", p, "a, b"]);
    assert_eq!(code(&o), 0);
    std::fs::remove_file(&path).unwrap();

    let o = hurwitz(&["realize", "/no/such/file"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("cannot read"));
}
