use committee_power::io::{load_committee, CommitteeSpec};
use committee_power::simplex::{scan_simplex, scan_simplex_cached, GridCache};
use committee_power::{Committee, Error, Rule};

#[test]
fn committee_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let c = Committee::new(4, vec![9, 4, 4, 1], Rule::PluralityRunoff).unwrap();
    let path = dir.path().join("board.toml");
    std::fs::write(&path, CommitteeSpec::from_committee(&c).to_toml()).unwrap();
    assert_eq!(load_committee(&path).unwrap(), c);
    let json = dir.path().join("board.json");
    std::fs::write(
        &json,
        r#"{"alternatives": ["x", "y"], "weights": [2, 1], "rule": "copeland"}"#,
    )
    .unwrap();
    assert_eq!(load_committee(&json).unwrap().labels(), ["x", "y"]);
}

#[test]
fn missing_file_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let err = load_committee(&dir.path().join("absent.toml")).unwrap_err();
    assert!(matches!(err, Error::Io { .. }), "{err}");
}

#[test]
fn cached_grid_survives_a_reload() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    let mut cache = GridCache::new(3);
    let fresh = scan_simplex_cached(12, &mut cache).unwrap();
    cache.save(&path).unwrap();
    let mut reloaded = GridCache::load(&path).unwrap();
    assert_eq!(reloaded.len(), cache.len());
    let again = scan_simplex_cached(12, &mut reloaded).unwrap();
    assert_eq!(again.points, fresh.points);
    assert_eq!(reloaded.len(), cache.len());
    assert_eq!(scan_simplex(12, 3).unwrap().points, fresh.points);
}
