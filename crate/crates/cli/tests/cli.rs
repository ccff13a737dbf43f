use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let f = Fixture {
            dir: TempDir::new().unwrap(),
        };
        f.write(
            "v.json",
            r#"{"points": ["a","b","c"], "leq": [["c","a"],["c","b"]]}"#,
        );
        f.write("anti.json", r#"{"points": ["a","b"]}"#);
        f.write(
            "cycle.json",
            r#"{"points": ["a","b"], "leq": [["a","b"],["b","a"]]}"#,
        );
        f.write("id.json", r#"{"permutation": {}}"#);
        f.write("swap.json", r#"{"permutation": {"a": "b", "b": "a"}}"#);
        f.write(
            "vsym.json",
            r#"{"symbols": ["a","b","c"], "leq": [["c","a"],["c","b"]]}"#,
        );
        f.write("u.json", r#"[["a","c"],["b","c"]]"#);
        f.write("top.json", r#"[["a","b","c"]]"#);
        f.write(
            "sierpinski.json",
            r#"{"points": ["a","b"], "opens": [[],["a"],["a","b"]]}"#,
        );
        f.write("flip.json", r#"{"map": {"a": "b", "b": "a"}}"#);
        f
    }

    fn write(&self, name: &str, body: &str) {
        std::fs::write(self.dir.path().join(name), body).unwrap();
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    /// Runs the binary; file arguments are resolved inside the fixture.
    fn run(&self, args: &[&str]) -> (i32, String) {
        let args: Vec<String> = args
            .iter()
            .map(|a| {
                if a.ends_with(".json") {
                    self.path(a).display().to_string()
                } else {
                    a.to_string()
                }
            })
            .collect();
        let out = Command::new(env!("CARGO_BIN_EXE_lattidyn"))
            .args(&args)
            .output()
            .unwrap();
        (
            out.status.code().unwrap(),
            String::from_utf8(out.stdout).unwrap(),
        )
    }

    fn json(&self, args: &[&str]) -> (i32, Value) {
        let (code, text) = self.run(args);
        (
            code,
            serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")),
        )
    }
}

#[test]
fn shift_entropy_of_v_alphabet() {
    let f = Fixture::new();
    let (code, v) = f.json(&["shift-entropy", "--symbols", "vsym.json", "--check", "4"]);
    assert_eq!(code, 0);
    let h = v["entropy"].as_f64().unwrap();
    assert!((h - 2f64.ln()).abs() < 1e-11, "{h}");
    assert_eq!(v["counts"], json!([2, 4, 8, 16]));
    assert_eq!(v["verified"], json!(true));
}

#[test]
fn dimension_of_v_poset() {
    let f = Fixture::new();
    assert_eq!(
        f.json(&["dim", "--poset", "v.json"]),
        (0, json!({"dim": 1}))
    );
    assert_eq!(
        f.json(&["dim", "--poset", "anti.json"]),
        (0, json!({"dim": 0}))
    );
}

#[test]
fn identity_is_expansive_with_finest_cover() {
    let f = Fixture::new();
    let (code, v) = f.json(&["expansive", "--poset", "v.json", "--auto", "id.json"]);
    assert_eq!(code, 0);
    assert_eq!(
        v,
        json!({"expansive": true, "witness": [["a", "c"], ["b", "c"]]})
    );
}

#[test]
fn cover_operations() {
    let f = Fixture::new();
    let (_, v) = f.json(&[
        "cover", "refines", "--poset", "v.json", "--cover", "u.json", "--cover", "top.json",
    ]);
    assert_eq!(
        v,
        json!({"refines": true, "refined_by": false, "equivalent": false})
    );
    let (_, v) = f.json(&["cover", "order", "--poset", "v.json", "--cover", "u.json"]);
    assert_eq!(v, json!({"order": 2}));
    let (_, v) = f.json(&["cover", "square", "--poset", "v.json", "--cover", "u.json"]);
    assert_eq!(v, json!({"cover": [["a", "b", "c"]]}));
    let (_, v) = f.json(&["cover", "minsub", "--poset", "v.json", "--cover", "u.json"]);
    assert_eq!(v["count"], json!(2));
    let (code, v) = f.json(&["cover", "wedge", "--poset", "v.json", "--cover", "u.json"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], json!("UsageError"));
}

#[test]
fn entropy_of_swap_is_certified_zero() {
    let f = Fixture::new();
    let (code, v) = f.json(&[
        "entropy",
        "--poset",
        "v.json",
        "--auto",
        "swap.json",
        "--n-max",
        "8",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["certified"], json!(true));
    assert_eq!(v["value"], json!(0.0));
    assert_eq!(v["counts"].as_array().unwrap().len(), 8);
}

#[test]
fn topology_commands() {
    let f = Fixture::new();
    let (_, v) = f.json(&["topo", "validate", "--space", "sierpinski.json"]);
    assert_eq!(v["t0"], json!(true));
    assert_eq!(v["t1"], json!(false));
    let (_, v) = f.json(&["topo", "lattice", "--space", "sierpinski.json"]);
    assert_eq!(v["elements"], json!(3));
    let (code, v) = f.json(&[
        "topo",
        "morphism",
        "--space",
        "sierpinski.json",
        "--map",
        "flip.json",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], json!("NotContinuous"));
}

#[test]
fn error_paths_have_one_shape_and_code() {
    let f = Fixture::new();
    let cases: [(&[&str], i32, &str); 5] = [
        (
            &["poset-check", "--poset", "cycle.json"],
            1,
            "CycleDetected",
        ),
        (&["poset-check", "--poset", "missing.json"], 1, "ParseError"),
        (
            &["dim", "--poset", "v.json", "--search-cap", "3"],
            2,
            "SearchCapExceeded",
        ),
        (&["dim"], 1, "UsageError"),
        (&["no-such-command"], 1, "UsageError"),
    ];
    for (args, want_code, kind) in cases {
        let (code, v) = f.json(args);
        assert_eq!(code, want_code, "{args:?}");
        assert_eq!(v["error"]["kind"], json!(kind), "{args:?}");
        assert!(v["error"]["message"].is_string());
    }
}

#[test]
fn malformed_json_reports_position() {
    let f = Fixture::new();
    f.write("bad.json", "{\"points\": [\"a\",\n}");
    let (code, v) = f.json(&["poset-check", "--poset", "bad.json"]);
    assert_eq!(code, 1);
    assert!(v["error"]["message"].as_str().unwrap().contains("line 2"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let f = Fixture::new();
    for args in [
        &["poset-check", "--poset", "v.json", "--seed", "11"][..],
        &["lattice-info", "--poset", "v.json", "--format", "table"],
        &["utz", "--poset", "v.json", "--auto", "swap.json"],
        &["shift-entropy", "--symbols", "vsym.json"],
    ] {
        assert_eq!(f.run(args), f.run(args));
    }
}
