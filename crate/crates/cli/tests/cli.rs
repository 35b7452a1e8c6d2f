use std::process::Command;

fn wfca(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_wfca")).args(args).output().expect("binary runs")
}

#[test]
fn verify_q3_json_passes() {
    let out = wfca(&["verify", "--q", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["outcome"], "pass");
    assert!(matches!(v["socle_side"].as_str(), Some("left" | "right")));
    assert_eq!(v["witness"]["dim"], 3);
}

#[test]
fn json_reruns_are_byte_identical() {
    let a = wfca(&["verify", "--q", "5", "--format", "json", "--seed", "11"]);
    let b = wfca(&["verify", "--q", "5", "--format", "json", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn q4_is_a_usage_error() {
    let out = wfca(&["verify", "--q", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("prime power"));
}

#[test]
fn missing_q_is_a_usage_error() {
    assert_eq!(wfca(&["verify"]).status.code(), Some(2));
    assert_eq!(wfca(&["verify", "--q", "3", "--field-degree", "zero"]).status.code(), Some(2));
}

#[test]
fn q_beyond_the_default_bound_is_a_resource_error() {
    assert_eq!(wfca(&["hecke", "--q", "17"]).status.code(), Some(3));
    assert_eq!(wfca(&["hecke", "--q", "17", "--extended"]).status.code(), Some(0));
}

#[test]
fn fusion_text_for_q5_shows_the_table() {
    let out = wfca(&["fusion", "--q", "5", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("Centric classes"));
    assert!(text.contains("S3"));
}

#[test]
fn schur_and_hecke_subcommands() {
    let out = wfca(&["schur", "--q", "7", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schur_image"]["dim"], 50);
    assert!(v["wfca"].is_null());
    let out = wfca(&["hecke", "--q", "9", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schur_hecke"]["dim"], 10);
}

#[test]
fn out_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("wfca-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("q3.json");
    let out = wfca(&["hecke", "--q", "3", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["q"], 3);
    assert_eq!(wfca(&["hecke", "--q", "3", "--out", ""]).status.code(), Some(2));
    std::fs::remove_dir_all(dir).unwrap();
}
