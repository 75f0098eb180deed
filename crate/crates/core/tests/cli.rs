use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_brauer-b")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn rank_values() {
    for (n, f) in [("1", "3"), ("3", "273"), ("5", "66315")] {
        let (code, out) = run(&["rank", "--n", n]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next(), Some(f));
    }
}

#[test]
fn normalize_examples() {
    for (w, want) in [("e0 r1 e0", "d * e0"), ("r0 r0", "1"), ("e2 e2", "d * e2")] {
        assert_eq!(run(&["normalize", w, "--n", "3"]), (0, format!("{want}\n")));
    }
    let (code, out) = run(&["normalize", "e0 r1 e0", "--n", "3", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["terms"][0]["coeff"], serde_json::json!({"1": 1}));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["normalize", "e0 q", "--n", "3"]).0, 2);
    assert_eq!(run(&["normalize", "e3", "--n", "3"]).0, 2);
    assert_eq!(run(&["rank", "--n", "7"]).0, 2);
    assert_eq!(run(&["rank"]).0, 2);
    assert_eq!(run(&["verify", "bogus", "--n", "3"]).0, 2);
}

#[test]
fn verify_suites() {
    for suite in ["relations", "counts", "action", "cellular", "identities"] {
        let (code, out) = run(&["verify", suite, "--n", "3", "--jobs", "2"]);
        assert_eq!(code, 0, "{suite}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["passed"], true);
    }
    let (code, _) = run(&["verify", "counts", "--n", "4"]);
    assert_eq!(code, 0);
}

#[test]
fn orbits_table() {
    let (code, out) = run(&["orbits", "--n", "3"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[1], "0\t1\t-\t-");
    assert_eq!(rows[2], "1\t6\t3\t3");
    assert_eq!(rows[3], "2\t-\t-\t3");
}

#[test]
fn basis_streams_and_round_trips() {
    for (n, lines) in [("1", 3), ("2", 25)] {
        let (code, out) = run(&["basis", "--n", n]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), lines);
        for line in out.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            let w = v["word"].as_str().unwrap();
            assert_eq!(run(&["normalize", w, "--n", n]), (0, format!("{w}\n")));
        }
    }
    let (a, b) = (run(&["basis", "--n", "3"]), run(&["basis", "--n", "3"]));
    assert_eq!(a, b);
    assert_eq!(a.1.lines().count(), 273);
    assert!(run(&["basis", "--n", "1", "--format", "ascii"]).1.contains("theta"));
}
