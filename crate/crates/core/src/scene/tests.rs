use super::*;
use crate::cells::{Cell, CellMaterial, Model, RegionExpr};
use crate::geometry::{make_surface, SurfaceKind, Vec3};

fn cube_model() -> Model {
    let mut m = Model::new("cube");
    let kind = SurfaceKind::Box {
        base: Vec3::ZERO,
        e1: Vec3::X,
        e2: Vec3::Y,
        e3: Vec3::Z,
    };
    m.surfaces
        .push(make_surface(1, "cube", kind, "blue", 0.7).unwrap());
    m.cells
        .push(Cell::new(1, "in", RegionExpr::neg(1), CellMaterial::Void).unwrap());
    m
}

#[test]
fn unit_box_scene() {
    let opts = SceneOptions {
        labels: true,
        ..Default::default()
    };
    let s = build_scene(&cube_model(), &opts).unwrap();
    assert_eq!(s.version, 1);
    assert_eq!(s.objects.len(), 1);
    let o = &s.objects[0];
    assert_eq!(o.mesh.vertices.len(), 8);
    assert_eq!(o.rgb, [0.0, 0.0, 1.0]);
    assert_eq!(o.opacity, 0.7);
    assert_eq!(o.label.as_ref().unwrap().anchor, Vec3::splat(0.5));
    assert_eq!((s.bbox.min, s.bbox.max), (Vec3::ZERO, Vec3::splat(1.0)));

    let bytes = write_scene(&s);
    assert_eq!(
        bytes,
        write_scene(&build_scene(&cube_model(), &opts).unwrap())
    );
    let v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(v["version"], 1);
    assert_eq!(
        v["objects"][0]["mesh"]["vertices"]
            .as_array()
            .unwrap()
            .len(),
        24
    );
    assert_eq!(v["objects"][0]["label"]["text"], "cube");
}

#[test]
fn empty_model() {
    assert_eq!(
        build_scene(&Model::new("x"), &SceneOptions::default()),
        Err(SceneError::EmptyScene)
    );
}

#[test]
fn opacity_override_and_bad_resolution() {
    let opts = SceneOptions {
        opacity_override: Some(0.5),
        ..Default::default()
    };
    let s = build_scene(&cube_model(), &opts).unwrap();
    assert!(s.objects.iter().all(|o| o.opacity == 0.5));
    assert!(s.objects.iter().all(|o| o.label.is_none()));
    let bad = SceneOptions {
        resolution: 2,
        ..Default::default()
    };
    assert!(matches!(
        build_scene(&cube_model(), &bad),
        Err(SceneError::Geometry { id: 1, .. })
    ));
    let bad = SceneOptions {
        opacity_override: Some(2.0),
        ..Default::default()
    };
    assert_eq!(
        build_scene(&cube_model(), &bad),
        Err(SceneError::InvalidOpacity(2.0))
    );
}

#[test]
fn plane_label_is_nearest_point() {
    let mut m = cube_model();
    let p = SurfaceKind::PlaneGeneral {
        a: 0.0,
        b: 2.0,
        c: 0.0,
        d: 4.0,
    };
    m.surfaces
        .push(make_surface(2, "wall", p, "gray", 1.0).unwrap());
    let s = label_anchor(&m.surfaces[1]);
    assert_eq!(s, Vec3::new(0.0, 2.0, 0.0));
    let scene = build_scene(
        &m,
        &SceneOptions {
            labels: true,
            ..Default::default()
        },
    )
    .unwrap();
    let o = &scene.objects[1];
    assert!(o
        .mesh
        .aabb()
        .unwrap()
        .contains(o.label.as_ref().unwrap().anchor));
}

#[test]
fn objects_sorted_by_id_and_world_unlabeled() {
    let mut m = Model::new("two");
    for (id, r) in [(5u32, 3.0), (2, 1.0)] {
        let k = SurfaceKind::Sphere {
            center: Vec3::ZERO,
            r,
        };
        m.surfaces
            .push(make_surface(id, &format!("s{id}"), k, "red", 1.0).unwrap());
    }
    m.cells
        .push(Cell::new(1, "in", RegionExpr::neg(2), CellMaterial::Void).unwrap());
    m.cells
        .push(Cell::new(2, "out", RegionExpr::pos(5), CellMaterial::Outer).unwrap());
    let s = build_scene(
        &m,
        &SceneOptions {
            labels: true,
            resolution: 8,
            ..Default::default()
        },
    )
    .unwrap();
    let ids: Vec<u32> = s.objects.iter().map(|o| o.surface_id).collect();
    assert_eq!(ids, [2, 5]);
    assert!(s.objects[0].label.is_some());
    assert!(s.objects[1].label.is_none());
}

#[test]
fn names_are_escaped() {
    let mut m = cube_model();
    m.title = "quote \" and \\ back".into();
    let bytes = write_scene(&build_scene(&m, &SceneOptions::default()).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(v["title"], "quote \" and \\ back");
}
