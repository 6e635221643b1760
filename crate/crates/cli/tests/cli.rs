use std::process::{Command, Output};

fn amas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amas")).args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn mutate_a2() {
    let o = amas(&["mutate", "-q", &fixture("a2.json"), "-s", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "( (1 + x2)/x1 , x2 )");
}

#[test]
fn mutate_accepts_inline_json_and_arrows() {
    let inline = amas(&["mutate", "-q", r#"{"n":2,"m":2,"b":[[0,1],[-1,0]]}"#, "-s", "1,2"]);
    let arrows = amas(&["mutate", "-q", "1>2", "-s", "1,2"]);
    assert_eq!(inline.status.code(), Some(0));
    assert_eq!(stdout(&inline), stdout(&arrows));
}

#[test]
fn mutate_json_output() {
    let o = amas(&["--json", "mutate", "-q", &fixture("a2.json"), "-s", "1", "--y"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seed"]["vars"], serde_json::json!(["1/y1", "y1*y2/(1 + y1)"]));
    assert_eq!(v["sequence"], serde_json::json!([1]));
}

#[test]
fn class_of_quiver_with_5739_members() {
    let o = amas(&["class", "-q", &fixture("quiver3a.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "5739 (complete)");
}

#[test]
fn finite_type_verdicts() {
    assert_eq!(stdout(&amas(&["finite-type", "-q", "1>2,3>2,3>4"])).trim(), "finite type A4");
    assert_eq!(stdout(&amas(&["finite-type", "-q", "2*1>2"])).trim(), "infinitely many cluster variables");
}

#[test]
fn ysystem_period_divides_bound() {
    let o = amas(&["ysystem", "--delta", "A2", "--delta-prime", "A1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "period 10 divides 10: yes");
}

#[test]
fn ysystem_without_enough_steps_fails_verification() {
    let o = amas(&["ysystem", "--delta", "A2", "--delta-prime", "A1", "--max-steps", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn cc_table_for_a3() {
    let o = amas(&["cc", "--type", "A3", "--orientation", "1>2,2>3", "--rng", "42"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("rng seed: 42"));
    assert!(out.contains("(x1 + x3 + x1*x2 + x2*x3)/(x1*x2*x3)"));
    assert!(out.trim_end().ends_with("bijection onto non-initial cluster variables: yes"));
}

#[test]
fn cc_rejects_wrong_orientation() {
    let o = amas(&["cc", "--type", "A3", "--orientation", "1>2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn grassmannian_check() {
    let o = amas(&["grassmannian", "--n", "3", "--check", "--sample-seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("flip commutes with mutation: 42 of 42 flips"));
}

#[test]
fn tp_agrees_with_minors() {
    let good = amas(&["tp", "--n", "3", "--matrix", &fixture("tp3.json"), "--mutations", "1,2"]);
    assert_eq!(good.status.code(), Some(0));
    assert!(stdout(&good).contains("cluster criterion: totally positive"));
    let bad = amas(&["tp", "--n", "3", "--matrix", &fixture("tp3_bad.json")]);
    assert_eq!(bad.status.code(), Some(0));
    assert!(stdout(&bad).contains("cluster criterion: not totally positive"));
}

#[test]
fn derive_triangle() {
    let o = amas(&["derive", "--arrows", "a:1>2,b:2>3,c:3>1", "--potential", "c.b.a", "--wrt", "b"]);
    assert_eq!(stdout(&o).trim(), "d_b W = a.c");
}

#[test]
fn rank2_variables() {
    assert_eq!(stdout(&amas(&["rank2", "--b", "1", "--c", "1", "--m", "3"])).trim(), "x3 = (1 + x2)/x1");
    let o = amas(&["rank2", "--b", "1", "--c", "1", "--count", "12"]);
    assert!(stdout(&o).trim_end().ends_with("distinct: 5"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(amas(&["mutate", "-q", &fixture("a2.json"), "-s", "3"]).status.code(), Some(2));
    assert_eq!(amas(&["mutate", "-q", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(amas(&["no-such-command"]).status.code(), Some(2));
    let o = amas(&["mutate", "-q", "{not json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&o.stderr).lines().count(), 1);
}

#[test]
fn json_seed_round_trips_through_the_seed_schema() {
    let o = amas(&["--json", "mutate", "-q", &fixture("quiver3a.json"), "-s", "3,1,4,1,5"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let seed: amas::Seed = serde_json::from_value(v["seed"].clone()).unwrap();
    let q: amas::IceQuiver = serde_json::from_str(&std::fs::read_to_string(fixture("quiver3a.json")).unwrap()).unwrap();
    assert_eq!(seed, amas::Seed::initial(q).mutate_sequence(&[2, 0, 3, 0, 4]).unwrap());
    assert_eq!(seed.to_json(), v["seed"]);
}
