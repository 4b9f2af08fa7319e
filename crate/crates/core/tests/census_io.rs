use quartic_core::census::{run_census, Checkpoint, CensusOptions};

#[test]
fn interrupted_run_resumes_to_identical_output() {
    let full = tempfile::tempdir().unwrap();
    let opts = CensusOptions { out: Some(full.path().to_path_buf()), ..Default::default() };
    let want = run_census(5_000, &opts).unwrap();

    let part = tempfile::tempdir().unwrap();
    let halted = CensusOptions { out: Some(part.path().to_path_buf()), halt_after_fields: Some(40), ..Default::default() };
    let r = run_census(5_000, &halted).unwrap();
    assert!(!r.complete);
    let ck_path = part.path().join("checkpoint.json");
    let ck = Checkpoint::load(&ck_path).unwrap();
    assert_eq!(ck.cursor, 40);

    // simulate a crash mid-batch: garbage past the checkpointed length must be dropped
    let rec = part.path().join("records.jsonl");
    let mut bytes = std::fs::read(&rec).unwrap();
    bytes.extend_from_slice(b"{\"partial\":");
    std::fs::write(&rec, bytes).unwrap();

    let resumed = CensusOptions { resume: Some(ck_path), ..Default::default() };
    let got = run_census(5_000, &resumed).unwrap();
    assert!(got.complete);
    assert_eq!((got.n_d4, got.n_c4, got.n_v4), (want.n_d4, want.n_c4, want.n_v4));
    for f in ["records.jsonl", "summary.csv"] {
        assert_eq!(std::fs::read(full.path().join(f)).unwrap(), std::fs::read(part.path().join(f)).unwrap(), "{f}");
    }
}

#[test]
fn checkpoint_for_another_bound_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let opts = CensusOptions { out: Some(dir.path().to_path_buf()), halt_after_fields: Some(5), ..Default::default() };
    run_census(2_000, &opts).unwrap();
    let resumed = CensusOptions { resume: Some(dir.path().join("checkpoint.json")), ..Default::default() };
    let e = run_census(3_000, &resumed).unwrap_err();
    assert_eq!(e.exit_code(), 4);
}

#[test]
fn records_are_json_with_string_integers() {
    let dir = tempfile::tempdir().unwrap();
    let opts = CensusOptions { out: Some(dir.path().to_path_buf()), ..Default::default() };
    let r = run_census(1_000, &opts).unwrap();
    let text = std::fs::read_to_string(dir.path().join("records.jsonl")).unwrap();
    let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len() as u64, r.raw_d4 + r.n_c4 + r.raw_v4);
    for l in &lines {
        assert!(l["abs_disc"].is_string() && l["base_disc"].is_string());
        assert!(["D4", "C4", "V4"].contains(&l["galois"].as_str().unwrap()));
        assert_eq!(l["minpoly"].as_array().unwrap().len(), 5);
    }
}
