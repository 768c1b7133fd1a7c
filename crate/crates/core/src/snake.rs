//! The snake example: a chain of growing spheres along a damped sine with a
//! cone hat on the head.
//!
//! Segment `i` of `n` sits at `x_i = x_max * i / (n - 1)` on the curve
//! `z(x) = amplitude * sin(frequency * x) * damping_scale * exp(-damping_rate * x)`
//! with radius `r(x) = r0 * exp(growth * x)`.

use crate::cells::{Cell, CellMaterial, Model, RegionExpr};
use crate::geometry::{make_surface, Aabb, SurfaceKind, Vec3};
use crate::materials::MaterialDb;

pub const SKIN_MATERIAL: &str = "ICRP skin";
pub const HAT_MATERIAL: &str = "Polyethylene";

/// Gap between the model and the surrounding void sphere, in cm.
pub const VOID_MARGIN: f64 = 1.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SnakeParams {
    pub n_segments: usize,
    pub x_max: f64,
    pub amplitude: f64,
    pub frequency: f64,
    pub damping_scale: f64,
    pub damping_rate: f64,
    pub r0: f64,
    pub growth: f64,
}

impl Default for SnakeParams {
    fn default() -> Self {
        SnakeParams {
            n_segments: 50,
            x_max: 5.0,
            amplitude: 5.0,
            frequency: 3.0,
            damping_scale: 0.3,
            damping_rate: 0.4,
            r0: 0.02,
            growth: 0.2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SnakeError {
    #[error("invalid snake parameters: {0}")]
    InvalidParams(String),
    #[error("material database: {0}")]
    Material(String),
}

impl SnakeParams {
    pub fn check(&self) -> Result<(), SnakeError> {
        let bad = |m: &str| Err(SnakeError::InvalidParams(m.to_string()));
        if self.n_segments < 2 {
            return bad("n_segments must be at least 2");
        }
        if !(self.x_max.is_finite() && self.x_max > 0.0) {
            return bad("x_max must be positive");
        }
        if !(self.r0.is_finite() && self.r0 > 0.0) {
            return bad("r0 must be positive");
        }
        let all = [
            self.amplitude,
            self.frequency,
            self.damping_scale,
            self.damping_rate,
            self.growth,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return bad("curve constants must be finite");
        }
        Ok(())
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_max * i as f64 / (self.n_segments - 1) as f64
    }

    pub fn z(&self, x: f64) -> f64 {
        self.amplitude
            * (self.frequency * x).sin()
            * self.damping_scale
            * (-self.damping_rate * x).exp()
    }

    pub fn r(&self, x: f64) -> f64 {
        self.r0 * (self.growth * x).exp()
    }
}

/// Builds the snake model.
///
/// Surfaces: `seg0 .. seg{n-1}` (ids 1..=n), `hat` (n+1), `void` (n+2).
/// Segment cells subtract the next segment so neighbouring cells do not
/// overlap; the hat subtracts the head.
pub fn example_snake(p: &SnakeParams, db: &MaterialDb) -> Result<Model, SnakeError> {
    p.check()?;
    let n = p.n_segments;
    let mat = |e: crate::materials::MaterialError| SnakeError::Material(e.to_string());
    let geom = |e: crate::geometry::GeometryError| SnakeError::InvalidParams(e.to_string());
    let cell = |e: crate::cells::CellError| SnakeError::InvalidParams(e.to_string());

    let mut m = Model::new("snake");
    let skin = db.material(SKIN_MATERIAL, 1).map_err(mat)?;
    let hat_mat = db.material(HAT_MATERIAL, 2).map_err(mat)?;

    for i in 0..n {
        let x = p.x(i);
        let kind = SurfaceKind::Sphere {
            center: Vec3::new(x, 0.0, p.z(x)),
            r: p.r(x),
        };
        m.surfaces.push(
            make_surface(i as u32 + 1, &format!("seg{i}"), kind, "pastelgreen", 1.0)
                .map_err(geom)?,
        );
    }

    let x_head = p.x(n - 1);
    let head = Vec3::new(x_head, 0.0, p.z(x_head));
    let r_head = p.r(x_head);
    let hat_id = n as u32 + 1;
    let hat = SurfaceKind::Trc {
        base: head + Vec3::Z * (0.5 * r_head),
        h: Vec3::Z * (1.5 * r_head),
        r_base: r_head,
        r_top: 0.4 * r_head,
    };
    m.surfaces
        .push(make_surface(hat_id, "hat", hat, "red", 1.0).map_err(geom)?);

    let bounds = m
        .surfaces
        .iter()
        .map(|s| s.kind().aabb().expect("spheres and cones are bounded"))
        .reduce(|a: Aabb, b| a.union(&b))
        .expect("at least two surfaces");
    let void_id = n as u32 + 2;
    let void = SurfaceKind::Sphere {
        center: bounds.center(),
        r: 0.5 * bounds.extent().norm() + VOID_MARGIN,
    };
    m.surfaces
        .push(make_surface(void_id, "void", void, "gray", 0.1).map_err(geom)?);

    m.materials.push(skin);
    m.materials.push(hat_mat);

    for i in 0..n {
        let id = i as u32 + 1;
        let region = if i + 1 < n {
            RegionExpr::all([RegionExpr::neg(id), RegionExpr::pos(id + 1)])
        } else {
            RegionExpr::neg(id)
        };
        m.cells.push(
            Cell::new(id, &format!("segment{i}"), region, CellMaterial::Ref(1)).map_err(cell)?,
        );
    }
    let hat_region = RegionExpr::all([RegionExpr::neg(hat_id), RegionExpr::pos(n as u32)]);
    m.cells
        .push(Cell::new(hat_id, "hat", hat_region, CellMaterial::Ref(2)).map_err(cell)?);
    let void_region = RegionExpr::all(
        std::iter::once(RegionExpr::neg(void_id)).chain((1..=hat_id).map(RegionExpr::pos)),
    );
    m.cells
        .push(Cell::new(void_id, "void", void_region, CellMaterial::Void).map_err(cell)?);
    m.cells.push(
        Cell::new(
            void_id + 1,
            "outer",
            RegionExpr::pos(void_id),
            CellMaterial::Outer,
        )
        .map_err(cell)?,
    );
    Ok(m)
}
