use csgdeck_core::cells::{has_errors, validate_model};
use csgdeck_core::doc::{parse_model_doc, write_model_doc};
use csgdeck_core::materials::MaterialDb;
use csgdeck_core::phits::semantic_diff;
use csgdeck_core::snake::{example_snake, SnakeParams};
use csgdeck_core::{
    build_scene, export_input, parse_input, write_scene, ExportFlags, SceneOptions, SurfaceKind,
};

fn snake() -> csgdeck_core::Model {
    example_snake(&SnakeParams::default(), &MaterialDb::bundled()).unwrap()
}

#[test]
fn segment_positions_and_radii() {
    let m = snake();
    let spheres: Vec<_> = m
        .surfaces
        .iter()
        .filter_map(|s| match s.kind() {
            SurfaceKind::Sphere { center, r } if s.name().starts_with("seg") => Some((*center, *r)),
            _ => None,
        })
        .collect();
    assert_eq!(spheres.len(), 50);
    assert_eq!(spheres[0].1, 0.02);
    let last = 0.02 * 1.0f64.exp();
    assert!((spheres[49].1 - last).abs() <= 1e-12 * last);
    assert!((last - 0.054365636569).abs() < 1e-12);
    for w in spheres.windows(2) {
        assert!(w[1].1 > w[0].1);
    }
    for (i, (c, _)) in spheres.iter().enumerate() {
        let x = 5.0 * i as f64 / 49.0;
        let z = 1.5 * (3.0 * x).sin() * (-0.4 * x).exp();
        assert!((c.x - x).abs() <= 1e-12 * x.abs().max(1e-300), "x{i}");
        assert!(
            (c.z - z).abs() <= 1e-12 * z.abs().max(1e-15),
            "z{i}: {} vs {z}",
            c.z
        );
        assert_eq!(c.y, 0.0);
    }
    let z5 = spheres[49].0.z;
    assert!((z5 - 0.13202).abs() < 1e-5, "{z5}");
}

#[test]
fn snake_validates_and_round_trips() {
    let m = snake();
    let diags = validate_model(&m);
    assert!(!has_errors(&diags), "{diags:?}");

    let text = export_input(&m, &ExportFlags::all()).unwrap();
    for h in ["[Material]", "[Surface]", "[Cell]"] {
        assert!(text.contains(h));
    }
    let back = parse_input(&text).unwrap();
    assert!(back.diagnostics.is_empty(), "{:?}", back.diagnostics);
    assert_eq!(semantic_diff(&m, &back.model), Vec::<String>::new());

    let db = MaterialDb::bundled();
    let doc = write_model_doc(&m);
    assert_eq!(doc, write_model_doc(&snake()));
    let loaded = parse_model_doc(&doc, &db).unwrap();
    assert!(!has_errors(&loaded.diagnostics));
    assert_eq!(loaded.model, m);
}

#[test]
fn snake_scene_objects_and_labels() {
    let m = snake();
    let opts = SceneOptions {
        labels: true,
        ..SceneOptions::default()
    };
    let scene = build_scene(&m, &opts).unwrap();
    assert_eq!(scene.objects.len(), 52);
    assert_eq!(
        scene.objects.iter().filter(|o| o.label.is_some()).count(),
        51
    );
    let json: serde_json::Value = serde_json::from_slice(&write_scene(&scene)).unwrap();
    assert_eq!(json["version"], 1);
    assert_eq!(json["objects"].as_array().unwrap().len(), 52);
}
