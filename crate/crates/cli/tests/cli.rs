use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_handlecalc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn knot_summaries() {
    let o = run(&["knot", "twobridge:+,+"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    for line in ["p/q = 3/2", "fibered", "g=1", "φ = t_a2 ∘ t_a1"] {
        assert!(s.contains(line), "{s}");
    }
    let s = stdout(&run(&["knot", "conway:2,1"]));
    assert!(s.contains("not fibered"), "{s}");
    let s = stdout(&run(&["knot", "stallings:m=-1"]));
    assert!(s.contains("g=2") && s.contains("φ = t_a3^-1 ∘ t_a4 ∘ t_b2 ∘ t_a2^-1 ∘ t_a1^-1"), "{s}");
}

#[test]
fn knot_json() {
    let o = run(&["knot", "twobridge:+,-", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["fraction"]["p"], 5);
    assert_eq!(v["fibered"], true);
    assert_eq!(v["genus"], 1);
}

#[test]
fn parse_errors_name_the_token() {
    let o = run(&["knot", "conway:2,x"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("`x`"));
    assert_eq!(code(&run(&["cancel", "twobridge:+,+", "--n", "0"])), 1);
    assert_eq!(code(&run(&["cancel"])), 1);
}

#[test]
fn cancel_counts() {
    for (spec, n, want) in [
        ("twobridge:+,+", "1", "1-handles: 0, 2-handles: 5"),
        ("stallings:m=3", "1", "1-handles: 0, 2-handles: 5"),
        ("twobridge:+,+", "2", "1-handles: 0, 2-handles: 11"),
    ] {
        let o = run(&["cancel", spec, "--n", n]);
        assert_eq!(code(&o), 0, "{spec}");
        assert!(stdout(&o).contains(want), "{spec}: {}", stdout(&o));
    }
}

#[test]
fn verify_reports() {
    let o = run(&["verify", "twobridge:+,+", "--n", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("pass, χ=12"));
    let o = run(&["verify", "twobridge:+,-,+,+", "--n", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("pass, χ=36"));
    let o = run(&["verify", "conway:2,1", "--n", "1"]);
    assert_ne!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not fibered"));
}

#[test]
fn trace_file_replays() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.json");
    let p = path.to_str().unwrap();
    let o = run(&["cancel", "twobridge:+,-,-,+", "--n", "2", "--piece", "x2", "--trace", p]);
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["schema"], "handlecalc/1");
    assert_eq!(doc["certificate"]["one_handles"], 0);
    let o = run(&["replay", p]);
    assert_eq!(code(&o), 0);
    let digest = doc["certificate"]["final_digest"].as_str().unwrap();
    assert!(stdout(&o).contains(digest));

    let mut tampered = doc.clone();
    tampered["certificate"]["final_digest"] = "0000000000000000".into();
    std::fs::write(&path, tampered.to_string()).unwrap();
    assert_eq!(code(&run(&["replay", p])), 3);
}

#[test]
fn json_output_is_deterministic() {
    let args = ["cancel", "stallings:m=-2", "--n", "2", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn batch_mode() {
    let o = run(&["verify", "--all-fibered", "--max-k", "2", "--n", "1"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 20);
    assert!(s.lines().all(|l| l.ends_with("pass, χ=12")), "{s}");
    let o = run(&["cancel", "--all-fibered", "--max-k", "1"]);
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn factorize_lists_cycles() {
    let o = run(&["factorize", "twobridge:+,+", "--n", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let x1 = v[0]["factorization"]["cycles"].as_array().unwrap();
    assert_eq!(x1.len(), 8);
    assert_eq!(x1[0]["curve"], "phi(B0)");
    assert_eq!(x1[4]["word"], "a0' a4 a3' a2 a1' a0");
    assert_eq!(x1[7]["word"], serde_json::Value::Null);
}
