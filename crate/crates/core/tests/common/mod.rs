//! Seeded random generators shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use csgdeck_core::cells::{Cell, CellMaterial, Model, RegionExpr};
use csgdeck_core::geometry::{make_surface, Surface, SurfaceKind, Vec3};
use csgdeck_core::materials::{Material, MaterialDb, RatioMode, Species};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn coord(r: &mut StdRng) -> f64 {
    r.gen_range(-10.0..10.0)
}

fn point(r: &mut StdRng) -> Vec3 {
    Vec3::new(coord(r), coord(r), coord(r))
}

fn len(r: &mut StdRng) -> f64 {
    r.gen_range(0.05..4.0)
}

fn direction(r: &mut StdRng) -> Vec3 {
    loop {
        let v = Vec3::new(
            r.gen_range(-1.0..1.0),
            r.gen_range(-1.0..1.0),
            r.gen_range(-1.0..1.0),
        );
        if v.norm() > 0.2 {
            return v.normalized();
        }
    }
}

/// Axis-aligned or arbitrary orthogonal triple scaled by three lengths.
fn triple(r: &mut StdRng) -> (Vec3, Vec3, Vec3) {
    let (u, v, w) = if r.gen_bool(0.3) {
        (Vec3::X, Vec3::Y, Vec3::Z)
    } else {
        direction(r).frame()
    };
    (u * len(r), v * len(r), w * len(r))
}

/// The ten bounded variants with canonical parameters.
pub fn canonical_bounded() -> Vec<(&'static str, SurfaceKind)> {
    let z = Vec3::ZERO;
    vec![
        (
            "SPH",
            SurfaceKind::Sphere {
                center: Vec3::new(0.5, -0.25, 1.0),
                r: 1.5,
            },
        ),
        (
            "BOX",
            SurfaceKind::Box {
                base: z,
                e1: Vec3::new(2.0, 0.0, 0.0),
                e2: Vec3::new(0.0, 1.0, 1.0),
                e3: Vec3::new(0.0, -0.5, 0.5),
            },
        ),
        (
            "RPP",
            SurfaceKind::Rpp {
                xmin: -1.0,
                xmax: 2.0,
                ymin: 0.0,
                ymax: 1.5,
                zmin: -0.5,
                zmax: 0.5,
            },
        ),
        (
            "RCC",
            SurfaceKind::Rcc {
                base: z,
                h: Vec3::new(1.0, 2.0, 2.0),
                r: 0.75,
            },
        ),
        (
            "TRC",
            SurfaceKind::Trc {
                base: z,
                h: Vec3::new(0.0, 0.0, 3.0),
                r_base: 2.0,
                r_top: 1.0,
            },
        ),
        (
            "TX",
            SurfaceKind::TorusX {
                center: z,
                a: 3.0,
                b: 0.5,
                c: 1.0,
            },
        ),
        (
            "TY",
            SurfaceKind::TorusY {
                center: Vec3::new(1.0, 1.0, 1.0),
                a: 2.0,
                b: 1.0,
                c: 0.5,
            },
        ),
        (
            "TZ",
            SurfaceKind::TorusZ {
                center: z,
                a: 3.0,
                b: 1.0,
                c: 1.0,
            },
        ),
        (
            "REC",
            SurfaceKind::Rec {
                base: z,
                h: Vec3::new(0.0, 0.0, 2.0),
                v1: Vec3::new(1.5, 1.5, 0.0),
                v2: Vec3::new(-0.5, 0.5, 0.0),
            },
        ),
        (
            "WED",
            SurfaceKind::Wed {
                vertex: z,
                e1: Vec3::new(2.0, 0.0, 0.0),
                e2: Vec3::new(0.0, 1.0, 0.0),
                e3: Vec3::new(0.0, 0.0, 1.5),
            },
        ),
    ]
}

pub fn random_bounded_kind(r: &mut StdRng) -> SurfaceKind {
    match r.gen_range(0..8) {
        0 => SurfaceKind::Sphere {
            center: point(r),
            r: len(r),
        },
        1 => {
            let (e1, e2, e3) = triple(r);
            SurfaceKind::Box {
                base: point(r),
                e1,
                e2,
                e3,
            }
        }
        2 => {
            let (x, y, zz) = (coord(r), coord(r), coord(r));
            SurfaceKind::Rpp {
                xmin: x,
                xmax: x + len(r),
                ymin: y,
                ymax: y + len(r),
                zmin: zz,
                zmax: zz + len(r),
            }
        }
        3 => SurfaceKind::Rcc {
            base: point(r),
            h: direction(r) * len(r),
            r: len(r),
        },
        4 => SurfaceKind::Trc {
            base: point(r),
            h: direction(r) * len(r),
            r_base: if r.gen_bool(0.1) { 0.0 } else { len(r) },
            r_top: len(r),
        },
        5 => {
            let a = len(r) + 0.5;
            let (center, b, c) = (point(r), len(r), a * r.gen_range(0.05..0.95));
            match r.gen_range(0..3) {
                0 => SurfaceKind::TorusX { center, a, b, c },
                1 => SurfaceKind::TorusY { center, a, b, c },
                _ => SurfaceKind::TorusZ { center, a, b, c },
            }
        }
        6 => {
            let (u, v, w) = direction(r).frame();
            let major = len(r);
            SurfaceKind::Rec {
                base: point(r),
                h: w * len(r),
                v1: u * major,
                v2: v * (major * r.gen_range(0.1..1.0)),
            }
        }
        _ => {
            let (e1, e2, e3) = triple(r);
            SurfaceKind::Wed {
                vertex: point(r),
                e1,
                e2,
                e3,
            }
        }
    }
}

pub fn random_kind(r: &mut StdRng) -> SurfaceKind {
    match r.gen_range(0..10) {
        0 => SurfaceKind::PlaneGeneral {
            a: coord(r),
            b: coord(r),
            c: coord(r) + 11.0,
            d: coord(r),
        },
        1 => match r.gen_range(0..3) {
            0 => SurfaceKind::PlaneX { d: coord(r) },
            1 => SurfaceKind::PlaneY { d: coord(r) },
            _ => SurfaceKind::PlaneZ { d: coord(r) },
        },
        _ => random_bounded_kind(r),
    }
}

const NAME_CHARS: &[char] = &[
    'a', 'b', 'c', 'x', 'y', 'Z', '0', '1', '9', '_', '-', '.', ' ', '(', ')', '#', '$', ':', '[',
    ']', 'é', 'µ', '/',
];

/// A printable name that is never blank.
pub fn random_name(r: &mut StdRng, prefix: &str) -> String {
    if r.gen_bool(0.5) {
        return format!("{prefix}{}", r.gen_range(0..1000));
    }
    let n = r.gen_range(1..12);
    let tail: String = (0..n).map(|_| *NAME_CHARS.choose(r).unwrap()).collect();
    format!("{prefix}{}", tail.trim_end())
}

fn distinct_ids(r: &mut StdRng, n: usize, max: u32) -> Vec<u32> {
    let mut set = BTreeSet::new();
    while set.len() < n {
        set.insert(r.gen_range(1..=max));
    }
    let mut v: Vec<u32> = set.into_iter().collect();
    v.shuffle(r);
    v
}

pub fn random_region(r: &mut StdRng, ids: &[u32], depth: u32) -> RegionExpr {
    if depth == 0 || r.gen_bool(0.35) {
        let id = *ids.choose(r).unwrap();
        return if r.gen_bool(0.5) {
            RegionExpr::neg(id)
        } else {
            RegionExpr::pos(id)
        };
    }
    match r.gen_range(0..3) {
        0 => RegionExpr::all(
            (0..r.gen_range(1..4))
                .map(|_| random_region(r, ids, depth - 1))
                .collect::<Vec<_>>(),
        ),
        1 => RegionExpr::any(
            (0..r.gen_range(1..4))
                .map(|_| random_region(r, ids, depth - 1))
                .collect::<Vec<_>>(),
        ),
        _ => RegionExpr::Complement(Box::new(random_region(r, ids, depth - 1))),
    }
}

const SPECIES: &[&str] = &[
    "H", "He", "C", "N", "O", "Na", "Al", "Si", "Fe", "Pb", "U", "1001", "8016", "92235",
];

fn random_material(r: &mut StdRng, id: u32, db: &MaterialDb) -> Material {
    if r.gen_bool(0.4) {
        let names: Vec<String> = db.entries().map(|e| e.name.clone()).collect();
        return db.material(names.choose(r).unwrap(), id).unwrap();
    }
    let mut species: Vec<&str> = SPECIES.to_vec();
    species.shuffle(r);
    let k = r.gen_range(1..5);
    let composition: Vec<(Species, f64)> = species[..k]
        .iter()
        .map(|s| (s.parse().unwrap(), r.gen_range(1e-6..10.0)))
        .collect();
    let mode = if r.gen_bool(0.5) {
        RatioMode::Atom
    } else {
        RatioMode::Mass
    };
    let density = if r.gen_bool(0.1) {
        r.gen_range(1e-9..1e-3)
    } else {
        r.gen_range(0.01..20.0)
    };
    let colors = ["red", "blue", "gray", "pastelgreen", "white"];
    Material::new(
        id,
        &random_name(r, "m"),
        density,
        composition,
        mode,
        r.gen_bool(0.2),
        colors.choose(r).unwrap(),
    )
    .unwrap()
}

fn random_surface(r: &mut StdRng, id: u32) -> Surface {
    let name = random_name(r, "s");
    let opacity = r.gen_range(0.0..=1.0);
    make_surface(id, &name, random_kind(r), "cyan", opacity).unwrap()
}

/// A structurally valid model: unique ids, resolved references, exactly one
/// outer cell. Cell regions are arbitrary, so cells may overlap or be empty.
pub fn random_model(seed: u64, db: &MaterialDb) -> Model {
    let r = &mut rng(seed);
    let mut m = Model::new(if r.gen_bool(0.8) {
        format!("model {seed}")
    } else {
        String::new()
    });

    let n_mat = r.gen_range(0..5);
    for id in distinct_ids(r, n_mat, 500) {
        m.materials.push(random_material(r, id, db));
    }
    let n_surf = r.gen_range(1..10);
    let sids = distinct_ids(r, n_surf, 99_999);
    for &id in &sids {
        m.surfaces.push(random_surface(r, id));
    }
    let n_cells = r.gen_range(1..8);
    let cids = distinct_ids(r, n_cells + 1, 99_999);
    let outer = cids[n_cells];
    for &id in &cids[..n_cells] {
        let region = random_region(r, &sids, 4);
        let material = if m.materials.is_empty() || r.gen_bool(0.3) {
            CellMaterial::Void
        } else {
            CellMaterial::Ref(m.materials.choose(r).unwrap().id)
        };
        let mut c = Cell::new(id, &random_name(r, "c"), region, material).unwrap();
        if material != CellMaterial::Void && r.gen_bool(0.3) {
            c = c.with_density(r.gen_range(0.001..30.0)).unwrap();
        }
        if r.gen_bool(0.3) {
            c = c.with_volume(r.gen_range(0.001..1e4)).unwrap();
        }
        m.cells.push(c);
    }
    let region = random_region(r, &sids, 2);
    m.cells
        .push(Cell::new(outer, "outer", region, CellMaterial::Outer).unwrap());
    m
}

/// A model made only of Rpp surfaces with corners on a 0.05 grid, some
/// shifted off it by half a step.
pub fn random_rpp_model(seed: u64) -> Model {
    let r = &mut rng(seed);
    let mut m = Model::new(format!("rpp {seed}"));
    let n = r.gen_range(2..7);
    for id in 1..=n as u32 {
        // half of the boxes put their faces on lattice planes
        let offset = if r.gen_bool(0.5) { 0.0 } else { 0.025 };
        let mut lim = || {
            let a = r.gen_range(-20..20) as f64 * 0.05 + offset;
            let b = a + r.gen_range(1..20) as f64 * 0.05;
            (a, b)
        };
        let (xmin, xmax) = lim();
        let (ymin, ymax) = lim();
        let (zmin, zmax) = lim();
        let kind = SurfaceKind::Rpp {
            xmin,
            xmax,
            ymin,
            ymax,
            zmin,
            zmax,
        };
        m.surfaces
            .push(make_surface(id, &format!("b{id}"), kind, "red", 1.0).unwrap());
    }
    let ids: Vec<u32> = (1..=n as u32).collect();
    for cid in 1..=4u32 {
        let region = random_region(r, &ids, 4);
        m.cells
            .push(Cell::new(cid, &format!("c{cid}"), region, CellMaterial::Void).unwrap());
    }
    m
}

const ON_FACE: f64 = 1e-9;

/// Direct evaluation of a region against Rpp surfaces by interval tests.
/// Returns `None` when the point lies on a face of a referenced box.
pub fn rpp_brute_force(m: &Model, region: &RegionExpr, p: Vec3) -> Option<bool> {
    match region {
        RegionExpr::Sense { surface_id, sign } => {
            let SurfaceKind::Rpp {
                xmin,
                xmax,
                ymin,
                ymax,
                zmin,
                zmax,
            } = *m.surface(*surface_id)?.kind()
            else {
                panic!("not an Rpp model");
            };
            let axis = |v: f64, lo: f64, hi: f64| {
                if (v - lo).abs() < ON_FACE || (v - hi).abs() < ON_FACE {
                    None
                } else {
                    Some(lo < v && v < hi)
                }
            };
            let inside = [
                axis(p.x, xmin, xmax),
                axis(p.y, ymin, ymax),
                axis(p.z, zmin, zmax),
            ];
            // a point on the face plane but outside the face is unambiguous
            let inside = if inside.contains(&Some(false)) {
                false
            } else if inside.contains(&None) {
                return None;
            } else {
                true
            };
            Some(match sign {
                csgdeck_core::Sign::Neg => inside,
                csgdeck_core::Sign::Pos => !inside,
            })
        }
        RegionExpr::Intersection(ts) => {
            let mut all = true;
            for t in ts {
                all &= rpp_brute_force(m, t, p)?;
            }
            Some(all)
        }
        RegionExpr::Union(ts) => {
            let mut any = false;
            for t in ts {
                any |= rpp_brute_force(m, t, p)?;
            }
            Some(any)
        }
        RegionExpr::Complement(inner) => Some(!rpp_brute_force(m, inner, p)?),
    }
}

/// Lattice of `n` points per axis spanning [-1, 1].
pub fn lattice(n: usize) -> impl Iterator<Item = Vec3> {
    let step = 2.0 / (n - 1) as f64;
    let c = move |i: usize| -1.0 + step * i as f64;
    (0..n).flat_map(move |i| {
        (0..n).flat_map(move |j| (0..n).map(move |k| Vec3::new(c(i), c(j), c(k))))
    })
}
