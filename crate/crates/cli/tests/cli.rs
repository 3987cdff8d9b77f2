mod support;

use support::{gmf, gmf_with_env, invocations, problem, violations};

#[test]
fn gorenstein_parameter_of_cubic_in_one_variable() {
    let r = gmf(&["gorenstein", &problem("an.json")]);
    assert_eq!(r.code, 0);
    let j = r.json();
    assert_eq!(j["gorenstein_parameter"], -2);
    assert_eq!(j["field"], "QQ");
    assert_eq!(j["seed"], 1);
    assert!(j["version"].is_string());
    assert_eq!(j["certification"]["kind"], "structural");
}

#[test]
fn endomorphisms_of_koszul_object() {
    let j = gmf(&["hom", &problem("an.json"), "--source", "K", "--target", "K", "--shift", "0"]).json();
    assert_eq!(j["dimension"], 1);
    assert!(j.get("basis").is_none());
}

#[test]
fn broken_factorization_reports_failing_composite() {
    let r = gmf(&["validate", &problem("broken.json")]);
    assert_eq!(r.code, 1);
    let j = r.json();
    assert_eq!(j["valid"], false);
    let failures = j["factorizations"][0]["report"]["composite_failures"].as_array().unwrap();
    assert!(!failures.is_empty());
    assert_eq!(failures[0]["expected"], "x^3");
    assert_eq!(failures[0]["found"], "x^2");

    let r = gmf(&["cok", &problem("broken.json"), "--mf", "bad"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["error"]["kind"], "mathematical");
}

#[test]
fn input_errors_exit_with_two() {
    let dir = std::env::temp_dir().join(format!("gmf-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    };
    let cases = [
        write("field.json", r#"{"ring": {"variables": ["x"], "field": "F_12"}, "potential": "x^3"}"#),
        write("syntax.json", r#"{"ring": {"variables": ["x"]}, "potential": "x^^3"}"#),
        write("variable.json", r#"{"ring": {"variables": ["x"]}, "potential": "x^3 + y^3"}"#),
        write("inhomogeneous.json", r#"{"ring": {"variables": ["x", "y"]}, "potential": "x^3 + y^2"}"#),
        write("unknown_key.json", r#"{"ring": {"variables": ["x"]}, "potental": "x^3"}"#),
        write("coefficient.json", r#"{"ring": {"variables": ["x"], "field": "F_7"}, "potential": "1/7*x^3"}"#),
        "/nonexistent/problem.json".to_string(),
    ];
    for path in &cases {
        let r = gmf(&["gorenstein", path]);
        assert_eq!(r.code, 2, "{path}: {}", r.stdout);
        assert_eq!(r.json()["error"]["kind"], "input");
        assert!(violations("error", &r.json()).is_empty());
    }
    let an = problem("an.json");
    for args in [
        vec!["hom", an.as_str(), "--source", "K", "--target", "nope"],
        vec!["hilbert", an.as_str(), "--module", "k", "--lo", "3", "--hi", "1"],
        vec!["gorenstein", an.as_str(), "--format", "csv"],
        vec!["collection", an.as_str()],
    ] {
        let r = gmf(&args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stdout);
    }
    let r = gmf(&["frobnicate", &an]);
    assert_eq!(r.code, 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn csv_tables() {
    let r = gmf(&["hilbert", &problem("an.json"), "--module", "quotient", "--lo", "0", "--hi", "3", "--format", "csv"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "degree,dimension\n0,1\n1,1\n2,0\n3,0\n");
    let r =
        gmf(&["fullfaith", &problem("cubic_curve.json"), "--source", "X", "--target", "Y", "--lo", "0", "--hi", "1", "--format", "csv"]);
    assert_eq!(r.code, 0);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines[0], "shift,factorization_dimension,module_dimension,agree");
    assert_eq!(lines.len(), 3);
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    for (_, args, _) in invocations() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let one = gmf_with_env(&args, &[("GMF_THREADS", "1")]);
        let four = gmf_with_env(&args, &[("GMF_THREADS", "4")]);
        let default = gmf(&args);
        assert_eq!(one.stdout, four.stdout, "{args:?}");
        assert_eq!(one.stdout, default.stdout, "{args:?}");
    }
    let r = gmf_with_env(&["gorenstein", &problem("an.json")], &[("GMF_THREADS", "zero")]);
    assert_eq!(r.code, 2);
}

#[test]
fn seed_flag_overrides_problem_seed() {
    let j = gmf(&["roundtrip", &problem("cubic_curve.json"), "--mf", "X", "--seed", "99"]).json();
    assert_eq!(j["seed"], 99);
    assert_eq!(j["isomorphic"], true);
}

#[test]
fn stable_hom_flags_non_mcm_source() {
    let j = gmf(&["stable-hom", &problem("cubic_curve.json"), "--source", "k", "--target", "k"]).json();
    assert_eq!(j["certification"]["kind"], "violated");
    assert!(j["warning"].is_string());
    let j = gmf(&["stable-hom", &problem("cubic_curve.json"), "--source", "line", "--target", "line"]).json();
    assert_eq!(j["certification"]["kind"], "exact");
    assert!(j["warning"].is_null());
    assert_eq!(j["dimension"], 1);
}
