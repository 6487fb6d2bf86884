use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn corpus(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "corpus", &format!("{name}.tower")].iter().collect();
    path.to_string_lossy().into_owned()
}

fn fieldsep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fieldsep")).args(args).output().unwrap()
}

fn fieldsep_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_fieldsep"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn check_separable_quadratic() {
    let out = fieldsep(&["check", "--json", &corpus("sqrt_t_3")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["separable"], true);
    assert_eq!(v["hom_count"], 2);
    assert_eq!(v["degree"], 2);
    assert_eq!(v["witness"]["kind"], "pair");
}

#[test]
fn check_root_of_t_names_canonical_subfield() {
    let out = fieldsep(&["check", "--json", &corpus("root_t_2")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["separable"], false);
    assert_eq!(v["witness"]["kind"], "canonical_subfield");
    assert_eq!(v["witness"]["generators"], serde_json::json!([]));
}

#[test]
fn report_keys_in_schema_order() {
    let out = fieldsep(&["check", "--json", &corpus("biquadratic")]);
    let text = String::from_utf8(out.stdout).unwrap();
    let keys = [
        "\"schema\"",
        "\"degree\"",
        "\"hom_count\"",
        "\"separable\"",
        "\"criteria\"",
        "\"witness\"",
        "\"closure_degree\"",
        "\"primitive\"",
        "\"notes\"",
    ];
    let positions: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{text}");
}

#[test]
fn element_check_of_a_constant() {
    let out = fieldsep_stdin(&["check", "--json", "--element", "c"], "base FpT 3\ngen s : x^2 - t\nelem c = t + 1\n");
    let v = json(&out);
    assert_eq!(v["degree"], 1);
    assert_eq!(v["separable"], true);
}

#[test]
fn hom_count_over_a_subfield() {
    let v = json(&fieldsep(&["hom-count", "--json", "--over", "s", &corpus("biquadratic")]));
    assert_eq!((v["degree"].as_u64(), v["hom_count"].as_u64()), (Some(2), Some(2)));
    let v = json(&fieldsep(&["hom-count", "--json", &corpus("mixed")]));
    assert_eq!((v["degree"].as_u64(), v["hom_count"].as_u64()), (Some(4), Some(2)));
}

#[test]
fn subfields_and_closure() {
    let v = json(&fieldsep(&["subfields", "--json", &corpus("biquadratic")]));
    assert_eq!(v["count"], 5);
    assert_eq!(v["completeness"], "complete");
    let v = json(&fieldsep(&["subfields", "--json", &corpus("fourth_root_t")]));
    assert_eq!(v["completeness"], "sound_only");
    let v = json(&fieldsep(&["closure", "--json", &corpus("mixed")]));
    assert_eq!((v["closure_degree"].as_u64(), v["inseparable_degree"].as_u64()), (Some(2), Some(2)));
}

#[test]
fn embeddings_and_primitive() {
    let v = json(&fieldsep(&["embeddings", "--json", &corpus("transitivity")]));
    assert_eq!(v["count"], 4);
    let v = json(&fieldsep(&["primitive", "--json", &corpus("f16")]));
    assert!(v["minimal_polynomial"].as_str().unwrap().starts_with("x^4"));
}

#[test]
fn l1l2_on_separable_and_inseparable_input() {
    let out = fieldsep(&["l1l2", "--json", "--left", "s", "--right", "s,u", &corpus("biquadratic")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["equivalent"], true);
    let out = fieldsep(&["l1l2", "--json", "--left", "a", &corpus("root_t_2")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["equivalent"], false);
}

#[test]
fn input_errors_exit_2() {
    let out = fieldsep_stdin(&["check"], "base FpT 2\ngen s : x^2 - t^2\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("factor x + t"));
    assert_eq!(fieldsep(&["check", "--element", "nope", &corpus("f4")]).status.code(), Some(2));
    assert_eq!(fieldsep(&["check", "/nonexistent/tower"]).status.code(), Some(2));
    assert_eq!(fieldsep(&["primitive", &corpus("root_t_2")]).status.code(), Some(2));
    assert_eq!(fieldsep(&["verify-paper", "--corpus", "other"]).status.code(), Some(2));
}

#[test]
fn unavailable_enumeration_exits_3() {
    let out = fieldsep_stdin(&["subfields"], "base FpT 2\ngen a : x^2 - t\ngen b : x^2 + x + t\n");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn text_output_is_readable() {
    let out = fieldsep(&["check", &corpus("sqrt_t_3")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("separable: true"));
    assert!(text.contains("hom_count: 2"));
}

#[test]
fn seed_and_height_flags_are_accepted() {
    let a = fieldsep(&["check", "--json", "--seed", "7", "--height-bound", "4", &corpus("biquadratic")]);
    let b = fieldsep(&["check", "--json", &corpus("biquadratic")]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(json(&a)["separable"], json(&b)["separable"]);
}
