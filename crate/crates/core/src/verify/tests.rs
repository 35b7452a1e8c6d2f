use super::*;

fn config(seed: u64) -> VerifyConfig {
    VerifyConfig { seed, ..VerifyConfig::default() }
}

#[test]
fn q3_passes_with_a_dim_three_witness() {
    let r = run_verify(3, &config(0)).unwrap();
    assert!(r.passed(), "{:?} {:?}", r.failures().collect::<Vec<_>>(), r.errors);
    assert_eq!(r.witness.as_ref().unwrap().dim, 3);
    let c = r.counts.as_ref().unwrap();
    assert_eq!(c.fusion_simples, Some(c.partitions_of_two));
    assert!(r.cross_witness.is_some());
}

#[test]
fn non_odd_prime_power_is_rejected() {
    assert!(matches!(run_verify(4, &config(0)), Err(Error::InvalidQ { .. })));
    assert!(run_verify(6, &config(0)).is_err());
}

#[test]
fn json_is_deterministic_and_names_the_socle_side() {
    let a = run_verify(3, &config(7)).unwrap().to_json();
    let b = run_verify(3, &config(7)).unwrap().to_json();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema"], 1);
    assert!(matches!(v["socle_side"].as_str(), Some("left" | "right")));
}

#[test]
fn stage_runs_skip_the_main_comparison() {
    let cfg = VerifyConfig { stages: Stages::HECKE, ..config(1) };
    let r = run_verify(5, &cfg).unwrap();
    assert!(r.passed());
    assert!(r.witness.is_none() && r.wfca.is_none() && r.schur_hecke.is_some());
}

#[test]
fn text_report_for_q5_lists_the_centric_table() {
    let cfg = VerifyConfig { stages: Stages::FUSION, ..config(2) };
    let r = run_verify(5, &cfg).unwrap();
    let text = render_text(&r);
    assert!(text.contains("Centric classes"));
    assert!(text.contains("S3 (order 6)"));
    assert!(text.contains("timings"));
}

#[test]
fn empty_output_path_is_an_error() {
    let cfg = VerifyConfig { stages: Stages::HECKE, ..config(0) };
    let r = run_verify(3, &cfg).unwrap();
    assert!(emit_report(&r, Format::Json, Path::new("")).is_err());
}

#[test]
fn field_policy_parsing() {
    assert_eq!("auto".parse::<FieldPolicy>(), Ok(FieldPolicy::Auto));
    assert_eq!("4".parse::<FieldPolicy>(), Ok(FieldPolicy::Fixed(4)));
    assert!("0".parse::<FieldPolicy>().is_err());
}

#[test]
fn fixed_larger_field_also_passes() {
    let cfg = VerifyConfig { field_degree: FieldPolicy::Fixed(2), ..config(3) };
    let r = run_verify(3, &cfg).unwrap();
    assert!(r.passed(), "{:?} {:?}", r.failures().collect::<Vec<_>>(), r.errors);
    assert_eq!(r.coefficient_degree, 2);
}
