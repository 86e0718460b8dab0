use latconst::analysis::{registry, registry_compare, RegistryKind};

#[test]
fn registry_matches_manifest() {
    let manifest: Vec<&str> = include_str!("registry_keys.txt")
        .lines()
        .filter(|l| !l.is_empty())
        .collect();
    assert!(manifest.len() >= 30);
    let mut keys: Vec<&str> = registry().iter().map(|e| e.key).collect();
    keys.sort_unstable();
    assert_eq!(keys, manifest);
}

#[test]
fn every_entry_parses() {
    for e in registry() {
        match e.kind {
            RegistryKind::BoundPair => {
                let (lo, hi) = e.bounds().unwrap();
                assert!(lo < hi, "{}", e.key);
            }
            _ => assert!(e.value().is_finite(), "{}", e.key),
        }
        assert!(registry_compare(e.key, 1.0).is_ok());
    }
}
