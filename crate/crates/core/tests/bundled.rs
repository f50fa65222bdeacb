use std::path::PathBuf;

use orp_core::{catalog, InstanceFile};

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

#[test]
fn bundled_files_match_catalog() {
    for (name, inst, r) in catalog::all() {
        let file = InstanceFile::read(&data_dir().join(format!("{name}.json"))).unwrap();
        assert_eq!(file.name.as_deref(), Some(name));
        let (got, got_r) = file.to_instance().unwrap();
        assert_eq!(got, inst, "{name}");
        assert_eq!(got_r, r, "{name}");
    }
}

#[test]
fn rewrite_preserves_numbers() {
    let dir = tempfile::tempdir().unwrap();
    for (name, _, _) in catalog::all() {
        let original = InstanceFile::read(&data_dir().join(format!("{name}.json"))).unwrap();
        let path = dir.path().join("copy.json");
        original.write(&path).unwrap();
        assert_eq!(InstanceFile::read(&path).unwrap(), original);
    }
}
