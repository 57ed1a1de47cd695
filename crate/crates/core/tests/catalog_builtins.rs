use pcoh::catalog::{builtin, builtin_ids, parse_pcp, resolve, write_pcp};

#[test]
fn every_builtin_passes_its_fingerprint_and_roundtrips() {
    for id in builtin_ids() {
        let entry = builtin(id).unwrap_or_else(|e| panic!("{id}: {e}"));
        let text = write_pcp(&entry.group.presentation);
        let back = parse_pcp(&text).unwrap();
        assert_eq!(back.presentation, entry.group.presentation, "{id}");
    }
}

#[test]
fn named_examples() {
    let q8 = builtin("Q8").unwrap();
    assert_eq!((q8.fingerprint.order, q8.fingerprint.center_rank, q8.fingerprint.p_central), (8, 1, true));
    assert!(!builtin("D8").unwrap().fingerprint.p_central);
    assert_eq!(builtin("32#18").unwrap().fingerprint.center_rank, 3);
    assert!(builtin("nope").is_err());
}

#[test]
fn products_resolve() {
    let e = resolve("Q8×Z4").unwrap();
    assert_eq!(e.fingerprint.order, 32);
    assert_eq!(e.fingerprint.center_rank, 2);
    assert!(e.fingerprint.p_central);
}

#[test]
fn supplied_presentations_are_gated_by_fingerprint() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let path = format!("{dir}/tests/data/64_108.pcp");
    let e = resolve(&format!("64#108={path}")).unwrap();
    assert_eq!(e.id, "64#108");
    assert_eq!(e.expected.d0, Some(7));
    let tmp = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(tmp.path(), write_pcp(&builtin("Q8").unwrap().group.presentation)).unwrap();
    let wrong = resolve(&format!("64#108={}", tmp.path().display()));
    assert!(matches!(wrong, Err(pcoh::catalog::CatalogError::FingerprintMismatch { .. })));
    assert!(matches!(resolve(&format!("32#99={path}")), Err(pcoh::catalog::CatalogError::UnknownId(_))));
}
