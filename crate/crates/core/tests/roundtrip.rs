mod common;

use csgdeck_core::materials::MaterialDb;
use csgdeck_core::phits::semantic_diff;
use csgdeck_core::{export_input, parse_input, ExportFlags};

#[test]
fn random_models_round_trip() {
    let db = MaterialDb::bundled();
    for seed in 0..100 {
        let m = common::random_model(seed, &db);
        let text = export_input(&m, &ExportFlags::all()).unwrap();
        assert_eq!(
            text,
            export_input(&m, &ExportFlags::all()).unwrap(),
            "seed {seed}"
        );
        let back = parse_input(&text).unwrap_or_else(|e| panic!("seed {seed}: {e}\n{text}"));
        assert!(
            back.diagnostics.is_empty(),
            "seed {seed}: {:?}",
            back.diagnostics
        );
        let diff = semantic_diff(&m, &back.model);
        assert!(diff.is_empty(), "seed {seed}: {diff:?}\n{text}");
        assert_eq!(
            export_input(&back.model, &ExportFlags::all()).unwrap(),
            text,
            "seed {seed}"
        );
    }
}

#[test]
fn every_database_entry_round_trips() {
    let db = MaterialDb::bundled();
    let mut m = csgdeck_core::Model::new("db");
    let names: Vec<String> = db.entries().map(|e| e.name.clone()).collect();
    for (i, name) in names.iter().enumerate() {
        m.materials.push(db.material(name, i as u32 + 1).unwrap());
    }
    let text = export_input(&m, &ExportFlags::all()).unwrap();
    let back = parse_input(&text).unwrap();
    assert!(back.diagnostics.is_empty(), "{:?}", back.diagnostics);
    assert_eq!(semantic_diff(&m, &back.model), Vec::<String>::new());
}

#[test]
fn partial_exports_parse() {
    let db = MaterialDb::bundled();
    let m = common::random_model(7, &db);
    for sections in ["material", "surface", "cell", "surface,cell"] {
        let flags = ExportFlags::from_sections(sections).unwrap();
        let text = export_input(&m, &flags).unwrap();
        parse_input(&text).unwrap_or_else(|e| panic!("{sections}: {e}"));
    }
}
