mod common;

use std::path::Path;

use csgdeck_core::doc::{load_model_doc, parse_model_doc, write_model_doc};
use csgdeck_core::materials::MaterialDb;
use csgdeck_core::snake::{example_snake, SnakeParams};
use csgdeck_core::{build_scene, write_scene, SceneOptions};
use serde_json::Value;

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs")
        .join(name);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&v).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = v
        .iter_errors(doc)
        .map(|e| format!("{}: {e}", e.instance_path))
        .collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn scenes_match_the_scene_schema() {
    let v = schema("scene-schema.json");
    let db = MaterialDb::bundled();
    let snake = example_snake(&SnakeParams::default(), &db).unwrap();
    let mut models = vec![snake];
    models.extend((0..10).map(|s| common::random_model(s, &db)));
    for m in &models {
        for labels in [false, true] {
            let opts = SceneOptions {
                labels,
                resolution: 12,
                ..SceneOptions::default()
            };
            let scene = build_scene(m, &opts).unwrap();
            let doc: Value = serde_json::from_slice(&write_scene(&scene)).unwrap();
            assert_valid(&v, &doc);
        }
    }
    let bad: Value = serde_json::json!({"version": 2, "title": "", "bbox": {"min": [0,0,0], "max": [1,1,1]}, "objects": []});
    assert!(!v.is_valid(&bad));
}

#[test]
fn model_documents_match_the_doc_schema() {
    let v = schema("model-doc-schema.json");
    let db = MaterialDb::bundled();
    for seed in 0..30 {
        let m = common::random_model(seed, &db);
        let text = write_model_doc(&m);
        assert_valid(&v, &serde_json::from_str(&text).unwrap());
        let back =
            parse_model_doc(&text, &db).unwrap_or_else(|e| panic!("seed {seed}: {e}\n{text}"));
        assert_eq!(back.model, m, "seed {seed}");
    }
    let snake = write_model_doc(&example_snake(&SnakeParams::default(), &db).unwrap());
    assert_valid(&v, &serde_json::from_str(&snake).unwrap());
}

#[test]
fn documents_load_from_disk() {
    let db = MaterialDb::bundled();
    let m = example_snake(&SnakeParams::default(), &db).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("snake.json");
    std::fs::write(&path, write_model_doc(&m)).unwrap();
    assert_eq!(load_model_doc(&path, &db).unwrap().model, m);
    let e = load_model_doc(&dir.path().join("missing.json"), &db).unwrap_err();
    assert!(e.pointer().is_none());
}
