use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quandlekit"))
        .args(args)
        .env_remove("QUANDLEKIT_CATALOG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.push("--json");
    let o = run(&a);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn alexander_polynomials() {
    let o = run(&["alexander", "trefoil"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Δ(t) = t^2 - t + 1"));
    assert!(stdout(&run(&["alexander", "unknot"])).contains("Δ(t) = 1"));
}

#[test]
fn alexander_json_rows() {
    let v = json(&["alexander", "hopf+"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["alexander_polynomial"], "t - 1");
    let rows = v["presentation"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
}

#[test]
fn medial_tables() {
    let v = json(&["medial", "hopf+", "--p", "2", "--q", "t^2+t+1"]);
    assert_eq!(v["table"], serde_json::json!([[0, 0], [1, 1]]));
    assert_eq!(v["block_sizes"], serde_json::json!([1, 1]));
    let v = json(&["medial", "unknot", "--p", "2", "--q", "t^2+t+1"]);
    assert_eq!(v["elements"].as_array().unwrap().len(), 1);
    let o = run(&["medial", "whitehead", "--p", "2", "--q", "t^2+t+1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn compare_verdicts() {
    let v = json(&["compare", "hopf+", "hopf-"]);
    assert_eq!(v["consistent"], true);
    assert!(v["distinguishing_rings"].as_array().unwrap().is_empty());
    let v = json(&["compare", "unknot", "unknot-kink"]);
    assert!(v["rings"].as_array().unwrap().iter().all(|r| r["modules_isomorphic"] == true && r["quandles_isomorphic"] == true));
    let v = json(&["compare", "hopf+", "solomon"]);
    assert!(!v["distinguishing_rings"].as_array().unwrap().is_empty());
}

#[test]
fn verify_named_checks() {
    let o = run(&["verify", "--check", "cor14-eq-def6"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&["verify", "--check", "longitude-sum", "--link", "vtrefoil"]);
    let outcomes = v["outcomes"].as_array().unwrap();
    assert!(!outcomes.is_empty());
    assert!(outcomes.iter().all(|o| o["status"] == "not-applicable"));
}

#[test]
fn verify_all_passes_in_default_rings() {
    let o = run(&["verify", "--all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains(" 0 fail"));
}

#[test]
fn strict_fails_on_known_deviations() {
    let lenient = run(&["verify", "--check", "prop4-containment", "--link", "hopf+", "--p", "5", "--q", "t-1"]);
    assert_eq!(lenient.status.code(), Some(0));
    assert!(stdout(&lenient).contains("known-deviation"));
    let strict = run(&["verify", "--check", "prop4-containment", "--link", "hopf+", "--p", "5", "--q", "t-1", "--strict"]);
    assert_eq!(strict.status.code(), Some(3));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["medial", "whitehead", "--budget-quandle", "1"]).status.code(), Some(2));
    assert_eq!(run(&["alexander", "no-such-link"]).status.code(), Some(1));
    assert_eq!(run(&["medial", "trefoil", "--p", "4"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--check", "no-such-check"]).status.code(), Some(1));
}

#[test]
fn catalog_and_user_directory() {
    let list = stdout(&run(&["catalog", "list"]));
    assert!(list.lines().any(|l| l.starts_with("whitehead")));
    let show = stdout(&run(&["catalog", "show", "hopf+"]));
    assert!(show.starts_with("link hopf+"));

    let dir = std::env::temp_dir().join(format!("quandlekit-cat-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("circle.link"), "link circle\ncomponents 1\narc a 1\nbase 1 a\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_quandlekit"))
        .args(["alexander", "circle"])
        .env("QUANDLEKIT_CATALOG", &dir)
        .output()
        .unwrap();
    let _ = std::fs::remove_dir_all(&dir);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("Δ(t) = 1"));
}

#[test]
fn reads_diagram_files() {
    let path = std::env::temp_dir().join(format!("quandlekit-file-{}.link", std::process::id()));
    let text = stdout(&run(&["catalog", "show", "fig8"]));
    std::fs::write(&path, text).unwrap();
    let o = run(&["alexander", path.to_str().unwrap()]);
    let _ = std::fs::remove_file(&path);
    assert!(stdout(&o).contains("Δ(t) = t^2 - 3*t + 1"));
}
