//! Fixtures shared by the benchmarks in `benches/`.

use csgdeck_core::materials::MaterialDb;
use csgdeck_core::snake::{example_snake, SnakeParams};
use csgdeck_core::{
    make_surface, Cell, CellMaterial, Model, RegionExpr, Surface, SurfaceKind, Vec3,
};

pub fn snake() -> Model {
    example_snake(&SnakeParams::default(), &MaterialDb::bundled()).expect("default snake builds")
}

/// Two overlapping spheres and a box: a cell with union, intersection and
/// complement terms.
pub fn mixed_model() -> Model {
    let mut m = Model::new("mixed");
    let sph = |x: f64| SurfaceKind::Sphere {
        center: Vec3::new(x, 0.0, 0.0),
        r: 1.0,
    };
    m.surfaces
        .push(make_surface(1, "a", sph(-0.5), "red", 1.0).unwrap());
    m.surfaces
        .push(make_surface(2, "b", sph(0.5), "blue", 1.0).unwrap());
    let cube = SurfaceKind::Rpp {
        xmin: -0.25,
        xmax: 0.25,
        ymin: -0.25,
        ymax: 0.25,
        zmin: -2.0,
        zmax: 2.0,
    };
    m.surfaces
        .push(make_surface(3, "hole", cube, "gray", 1.0).unwrap());
    let region = RegionExpr::all([
        RegionExpr::any([RegionExpr::neg(1), RegionExpr::neg(2)]),
        RegionExpr::neg(3).complement(),
    ]);
    m.cells
        .push(Cell::new(1, "body", region, CellMaterial::Void).unwrap());
    m.cells.push(
        Cell::new(
            2,
            "outer",
            RegionExpr::all([RegionExpr::pos(1), RegionExpr::pos(2)]),
            CellMaterial::Outer,
        )
        .unwrap(),
    );
    m
}

/// One surface of each bounded kind.
pub fn bounded_surfaces() -> Vec<Surface> {
    let z = Vec3::ZERO;
    let kinds = [
        SurfaceKind::Sphere { center: z, r: 1.0 },
        SurfaceKind::Box {
            base: z,
            e1: Vec3::X,
            e2: Vec3::Y,
            e3: Vec3::Z,
        },
        SurfaceKind::Rpp {
            xmin: 0.0,
            xmax: 1.0,
            ymin: 0.0,
            ymax: 1.0,
            zmin: 0.0,
            zmax: 1.0,
        },
        SurfaceKind::Rcc {
            base: z,
            h: Vec3::Z,
            r: 1.0,
        },
        SurfaceKind::Trc {
            base: z,
            h: Vec3::Z,
            r_base: 1.0,
            r_top: 0.5,
        },
        SurfaceKind::TorusZ {
            center: z,
            a: 2.0,
            b: 0.5,
            c: 0.5,
        },
        SurfaceKind::Rec {
            base: z,
            h: Vec3::Z,
            v1: Vec3::X,
            v2: Vec3::Y * 0.5,
        },
        SurfaceKind::Wed {
            vertex: z,
            e1: Vec3::X,
            e2: Vec3::Y,
            e3: Vec3::Z,
        },
    ];
    kinds
        .into_iter()
        .enumerate()
        .map(|(i, k)| make_surface(i as u32 + 1, k.mnemonic(), k, "red", 1.0).unwrap())
        .collect()
}
