use proptest::prelude::*;

use super::*;
use crate::geometry::{make_surface, Aabb, Surface, SurfaceKind, Vec3};
use crate::materials::{define_material, RatioMode};

fn sphere(id: u32, center: Vec3, r: f64) -> Surface {
    make_surface(
        id,
        &format!("s{id}"),
        SurfaceKind::Sphere { center, r },
        "red",
        1.0,
    )
    .unwrap()
}

fn world(m: &mut Model, inner: RegionExpr, world_id: u32) {
    m.surfaces.push(sphere(world_id, Vec3::ZERO, 50.0));
    m.cells.push(
        Cell::new(
            900,
            "gap",
            RegionExpr::all([RegionExpr::neg(world_id), inner.complement()]),
            CellMaterial::Void,
        )
        .unwrap(),
    );
    m.cells
        .push(Cell::new(901, "outer", RegionExpr::pos(world_id), CellMaterial::Outer).unwrap());
}

fn ball_model(region: RegionExpr) -> Model {
    let mut m = Model::new("ball");
    m.surfaces.push(sphere(10, Vec3::ZERO, 1.0));
    m.cells
        .push(Cell::new(1, "ball", region, CellMaterial::Void).unwrap());
    m
}

#[test]
fn sense_leaves() {
    let s = sphere(10, Vec3::ZERO, 1.0);
    assert_eq!(
        sense_neg(&s),
        RegionExpr::Sense {
            surface_id: 10,
            sign: Sign::Neg
        }
    );
    assert_eq!(
        sense_pos(&s),
        RegionExpr::Sense {
            surface_id: 10,
            sign: Sign::Pos
        }
    );
    assert_eq!(region_to_text(&sense_neg(&s)), "-10");
    assert_eq!(region_to_text(&sense_pos(&s)), "10");
    assert_eq!(-&s, sense_neg(&s));
}

#[test]
fn parse_examples() {
    let e = parse_region_ids("-10 +20").unwrap();
    assert_eq!(
        e,
        RegionExpr::Intersection(vec![RegionExpr::neg(10), RegionExpr::pos(20)])
    );
    assert_eq!(region_to_text(&e), "-10 20");

    let e = parse_region_ids("-10 : -20").unwrap();
    assert_eq!(
        e,
        RegionExpr::Union(vec![RegionExpr::neg(10), RegionExpr::neg(20)])
    );
    assert_eq!(region_to_text(&e), "-10 : -20");

    let e = parse_region_ids("#(-10 : -20) -30").unwrap();
    assert_eq!(
        e,
        RegionExpr::Intersection(vec![
            RegionExpr::Complement(Box::new(RegionExpr::Union(vec![
                RegionExpr::neg(10),
                RegionExpr::neg(20)
            ]))),
            RegionExpr::neg(30),
        ])
    );
    assert_eq!(region_to_text(&e), "#(-10 : -20) -30");

    let e = parse_region_ids("(-1 : -2) 3").unwrap();
    assert_eq!(region_to_text(&e), "(-1 : -2) 3");
}

#[test]
fn parse_errors() {
    assert_eq!(
        parse_region_ids("   "),
        Err(RegionParseError::EmptyExpression)
    );
    assert!(matches!(
        parse_region_ids("-10 )"),
        Err(RegionParseError::SyntaxError { pos: 4, .. })
    ));
    assert!(matches!(
        parse_region_ids("(-10"),
        Err(RegionParseError::SyntaxError { .. })
    ));
    assert!(matches!(
        parse_region_ids("#10"),
        Err(RegionParseError::SyntaxError { .. })
    ));
    assert!(matches!(
        parse_region_ids("-10 :"),
        Err(RegionParseError::SyntaxError { .. })
    ));
    assert!(matches!(
        parse_region_ids("-0"),
        Err(RegionParseError::SyntaxError { .. })
    ));
    assert!(matches!(
        parse_region_ids("-ball"),
        Err(RegionParseError::UnknownSurfaceName { pos: 1, .. })
    ));
    let deep = format!(
        "{}-1{}",
        "(".repeat(MAX_NESTING + 1),
        ")".repeat(MAX_NESTING + 1)
    );
    assert!(parse_region_ids(&deep).is_err());
    let ok = format!("{}-1{}", "(".repeat(50), ")".repeat(50));
    assert_eq!(parse_region_ids(&ok).unwrap(), RegionExpr::neg(1));
}

#[test]
fn names_resolve() {
    let e = parse_region("-ball +shell 3", &|n: &str| match n {
        "ball" => Some(1),
        "shell" => Some(2),
        _ => None,
    })
    .unwrap();
    assert_eq!(region_to_text(&e), "-1 2 3");
}

#[test]
fn membership_examples() {
    let m = ball_model(RegionExpr::neg(10));
    assert!(cell_contains(&m, 1, Vec3::ZERO).unwrap());
    assert!(!cell_contains(&m, 1, Vec3::new(2.0, 0.0, 0.0)).unwrap());
    // on-surface points fall on the positive side
    assert!(!cell_contains(&m, 1, Vec3::new(1.0, 0.0, 0.0)).unwrap());
    let m = ball_model(RegionExpr::neg(10).complement());
    assert!(!cell_contains(&m, 1, Vec3::ZERO).unwrap());
    assert_eq!(
        cell_contains(&m, 7, Vec3::ZERO),
        Err(CellError::UnknownCell(7))
    );
}

#[test]
fn mc_volume_examples() {
    let m = ball_model(RegionExpr::neg(10));
    let b = Aabb::new(Vec3::splat(-1.0), Vec3::splat(1.0));
    let est = mc_cell_volume(&m, 1, 1_000_000, 7, Some(b)).unwrap();
    let exact = 4.0 * std::f64::consts::PI / 3.0;
    assert!(
        (est.estimate - exact).abs() <= 4.0 * est.std_error,
        "{est:?}"
    );
    assert!((est.std_error - 0.0040).abs() < 0.0001, "{}", est.std_error);

    let empty = ball_model(RegionExpr::all([RegionExpr::neg(10), RegionExpr::pos(10)]));
    let est = mc_cell_volume(&empty, 1, 10_000, 1, None).unwrap();
    assert_eq!((est.estimate, est.hits), (0.0, 0));

    assert_eq!(
        mc_cell_volume(&m, 1, 0, 1, None),
        Err(CellError::ZeroSamples)
    );
    assert_eq!(
        mc_cell_volume(&m, 2, 10, 1, None),
        Err(CellError::UnknownCell(2))
    );

    let mut half = ball_model(RegionExpr::all([RegionExpr::neg(10), RegionExpr::neg(11)]));
    half.surfaces
        .push(make_surface(11, "floor", SurfaceKind::PlaneZ { d: 0.0 }, "red", 1.0).unwrap());
    assert_eq!(
        mc_cell_volume(&half, 1, 10, 1, None),
        Err(CellError::UnboundedRegionNeedsBox(11))
    );
    let est = mc_cell_volume(&half, 1, 200_000, 3, Some(b)).unwrap();
    assert!((est.estimate - exact / 2.0).abs() <= 4.0 * est.std_error);
}

#[test]
fn mc_is_thread_count_independent() {
    let m = ball_model(RegionExpr::neg(10));
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| mc_cell_volume(&m, 1, 100_003, 99, None).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(3));
    assert_eq!(one, run(8));
    assert_eq!(one.estimate.to_bits(), run(2).estimate.to_bits());
}

fn valid_model() -> Model {
    let mut m = Model::new("v");
    m.surfaces.push(sphere(1, Vec3::ZERO, 1.0));
    m.materials.push(
        define_material(
            1,
            "water",
            1.0,
            &[("H", 2.0), ("O", 1.0)],
            RatioMode::Atom,
            false,
            "blue",
        )
        .unwrap(),
    );
    m.cells
        .push(Cell::new(1, "ball", RegionExpr::neg(1), CellMaterial::Ref(1)).unwrap());
    world(&mut m, RegionExpr::neg(1), 2);
    m
}

fn codes(m: &Model) -> Vec<DiagCode> {
    validate_model(m).into_iter().map(|d| d.code).collect()
}

#[test]
fn validation() {
    let m = valid_model();
    assert!(validate_model(&m).is_empty(), "{:?}", validate_model(&m));

    let mut dup = m.clone();
    dup.cells
        .push(Cell::new(1, "again", RegionExpr::neg(1), CellMaterial::Void).unwrap());
    assert!(codes(&dup).contains(&DiagCode::DuplicateCellId));
    assert!(has_errors(&validate_model(&dup)));

    let mut no_outer = m.clone();
    no_outer.cells.retain(|c| c.material != CellMaterial::Outer);
    assert!(codes(&no_outer).contains(&DiagCode::MissingOuter));

    let mut two_outer = m.clone();
    two_outer
        .cells
        .push(Cell::new(77, "o2", RegionExpr::pos(2), CellMaterial::Outer).unwrap());
    assert!(codes(&two_outer).contains(&DiagCode::MultipleOuter));

    let mut dangling = m.clone();
    dangling.cells[0].region = RegionExpr::neg(42);
    dangling.cells[0].material = CellMaterial::Ref(9);
    let c = codes(&dangling);
    assert!(c.contains(&DiagCode::DanglingSurfaceRef));
    assert!(c.contains(&DiagCode::DanglingMaterialRef));

    let mut unused = m.clone();
    unused.surfaces.push(sphere(3, Vec3::ZERO, 0.5));
    let d = validate_model(&unused);
    assert_eq!(d.len(), 1);
    assert_eq!(
        (d[0].code, d[0].severity),
        (DiagCode::UnusedSurface, Severity::Warning)
    );

    let mut empty = m.clone();
    empty.cells[0].region = RegionExpr::all([RegionExpr::neg(1), RegionExpr::pos(1)]);
    let d = validate_model(&empty);
    assert!(d
        .iter()
        .any(|d| d.code == DiagCode::ZeroVolume && d.severity == Severity::Warning));
    assert!(!has_errors(&d));
}

#[test]
fn cell_constructors() {
    assert_eq!(
        Cell::new(0, "x", RegionExpr::neg(1), CellMaterial::Void),
        Err(CellError::InvalidId(0))
    );
    assert!(Cell::new(1, "", RegionExpr::neg(1), CellMaterial::Void).is_err());
    let outer = Cell::new(1, "o", RegionExpr::pos(1), CellMaterial::Outer).unwrap();
    assert_eq!(outer.with_density(1.0), Err(CellError::OuterWithDensity(1)));
    let c = Cell::new(1, "c", RegionExpr::neg(1), CellMaterial::Ref(1)).unwrap();
    assert!(c.clone().with_density(-1.0).is_err());
    assert!(c.clone().with_volume(0.0).is_err());
    assert_eq!(c.with_density(2.5).unwrap().density_override, Some(2.5));
}

// ---- random regions ----

pub(crate) fn region(depth: u32) -> BoxedStrategy<RegionExpr> {
    let leaf = (1u32..8, any::<bool>())
        .prop_map(|(id, neg)| {
            if neg {
                RegionExpr::neg(id)
            } else {
                RegionExpr::pos(id)
            }
        })
        .boxed();
    leaf.prop_recursive(depth, 64, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..4).prop_map(RegionExpr::Intersection),
            prop::collection::vec(inner.clone(), 1..4).prop_map(RegionExpr::Union),
            inner.prop_map(|e| RegionExpr::Complement(Box::new(e))),
        ]
    })
    .boxed()
}

/// Seven spheres around the origin, ids 1..=7.
fn spheres_model() -> Model {
    let mut m = Model::new("spheres");
    for id in 1..=7u32 {
        let a = id as f64;
        let c = Vec3::new(a.cos(), a.sin(), 0.3 * a - 1.2) * 0.6;
        m.surfaces.push(sphere(id, c, 0.5 + 0.1 * a));
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_parse_round_trip(e in region(6)) {
        let text = region_to_text(&e);
        let back = parse_region_ids(&text).unwrap();
        prop_assert_eq!(&back, &e.normalized(), "{}", text);
        prop_assert_eq!(region_to_text(&back), region_to_text(&e.normalized()));
        prop_assert!(!text.contains('+'));
    }

    #[test]
    fn named_round_trip(e in region(4)) {
        let text = e.to_text_with(&|id| format!("s{id}"));
        let back = parse_region(&text, &|n: &str| n.strip_prefix('s')?.parse().ok()).unwrap();
        prop_assert_eq!(back, e.normalized());
    }

    #[test]
    fn normalized_is_idempotent(e in region(6)) {
        let n = e.normalized();
        prop_assert_eq!(n.normalized(), n.clone());
        prop_assert!(n.depth() <= e.depth());
    }

    #[test]
    fn de_morgan(a in region(3), b in region(3), seed in any::<u64>()) {
        let m = spheres_model();
        let lhs = RegionExpr::Union(vec![a.clone(), b.clone()]).complement();
        let rhs = RegionExpr::Intersection(vec![a.complement(), b.complement()]);
        let l = CompiledRegion::compile(&m, &lhs).unwrap();
        let r = CompiledRegion::compile(&m, &rhs).unwrap();
        let rng = crate::rng::CounterRng::new(seed);
        for i in 0..1000 {
            let [x, y, z] = rng.unit_cube(i);
            let p = Vec3::new(4.0 * x - 2.0, 4.0 * y - 2.0, 4.0 * z - 2.0);
            prop_assert_eq!(l.contains(p), r.contains(p));
        }
    }

    #[test]
    fn mc_repeatable(e in region(3), seed in any::<u64>()) {
        let m = spheres_model();
        let b = Aabb::new(Vec3::splat(-2.0), Vec3::splat(2.0));
        let x = mc_region_volume(&m, &e, 5000, seed, b).unwrap();
        let y = mc_region_volume(&m, &e, 5000, seed, b).unwrap();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn fuzz_parse_region(s in "[-+#:() 0-9a-z]{0,40}") {
        let _ = parse_region_ids(&s);
    }
}
