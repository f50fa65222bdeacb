//! Set ORP_BLESS=1 to regenerate the snapshot after an intentional generator change.

use std::path::PathBuf;

use orp_core::{generate, DenseSimplex, GeneratorConfig, InstanceClass, InstanceFile};

const LP: DenseSimplex = DenseSimplex::new();

fn snapshot() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/class2_m30_n45_d1_s42.json")
}

#[test]
fn class2_file_is_byte_identical() {
    let cfg = GeneratorConfig::new(30, 45, 1.0, InstanceClass::Class2General, 42);
    let (inst, r) = generate(&LP, &cfg).unwrap();
    let text = InstanceFile::from_parts(Some("class2-m30-n45-d1-s42".into()), &inst, &r).to_json();
    if std::env::var_os("ORP_BLESS").is_some() {
        std::fs::write(snapshot(), &text).unwrap();
    }
    let expected = std::fs::read_to_string(snapshot()).unwrap();
    assert_eq!(text, expected);
}

#[test]
fn same_seed_same_instance() {
    for class in [InstanceClass::Class1BStable, InstanceClass::Class2General] {
        let cfg = GeneratorConfig::new(5, 7, 0.1, class, 11);
        assert_eq!(generate(&LP, &cfg).unwrap(), generate(&LP, &cfg).unwrap());
    }
}
