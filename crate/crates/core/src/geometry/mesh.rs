//! Triangle meshes and surface tessellation.
//!
//! Bounded kinds produce closed, consistently outward-oriented meshes whose
//! vertices lie on the surface. `resolution` is the number of segments around
//! a full circle (cylinders, cones, torus tube and sweep); spheres use
//! `resolution` latitude bands and `2 * resolution` longitudes so that both
//! directions share the same angular step.

use std::collections::HashMap;
use std::f64::consts::PI;

use serde::Serialize;

use super::surface::{Surface, SurfaceKind};
use super::{Aabb, GeometryError, Vec3};

pub const MIN_RESOLUTION: u32 = 3;

/// Default half-extent of the quad drawn for an (infinite) plane, in cm.
pub const DEFAULT_PLANE_HALF_EXTENT: f64 = 10.0;

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct TriMesh {
    pub vertices: Vec<Vec3>,
    pub triangles: Vec<[u32; 3]>,
}

impl TriMesh {
    fn push(&mut self, v: Vec3) -> u32 {
        self.vertices.push(v);
        (self.vertices.len() - 1) as u32
    }

    fn tri(&mut self, a: u32, b: u32, c: u32) {
        self.triangles.push([a, b, c]);
    }

    fn quad(&mut self, a: u32, b: u32, c: u32, d: u32) {
        self.tri(a, b, c);
        self.tri(a, c, d);
    }

    fn corners(&self, t: &[u32; 3]) -> [Vec3; 3] {
        t.map(|i| self.vertices[i as usize])
    }

    /// Enclosed volume by the divergence theorem (sum of signed tetrahedra
    /// against the origin). Positive for outward-oriented closed meshes.
    pub fn signed_volume(&self) -> f64 {
        self.triangles
            .iter()
            .map(|t| {
                let [a, b, c] = self.corners(t);
                a.dot(b.cross(c))
            })
            .sum::<f64>()
            / 6.0
    }

    pub fn area(&self) -> f64 {
        self.triangles
            .iter()
            .map(|t| triangle_area(self.corners(t)))
            .sum()
    }

    pub fn aabb(&self) -> Option<Aabb> {
        Aabb::from_points(self.vertices.iter().copied())
    }

    /// True when every undirected edge is shared by exactly two triangles and
    /// the two uses run in opposite directions (closed, oriented 2-manifold).
    pub fn is_watertight(&self) -> bool {
        let mut directed: HashMap<(u32, u32), usize> = HashMap::new();
        for t in &self.triangles {
            for k in 0..3 {
                *directed.entry((t[k], t[(k + 1) % 3])).or_default() += 1;
            }
        }
        !self.triangles.is_empty()
            && directed
                .iter()
                .all(|(&(a, b), &n)| n == 1 && directed.get(&(b, a)) == Some(&1))
    }

    /// Smallest triangle area in the mesh.
    pub fn min_triangle_area(&self) -> f64 {
        self.triangles
            .iter()
            .map(|t| triangle_area(self.corners(t)))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn indices_in_range(&self) -> bool {
        let n = self.vertices.len() as u32;
        self.triangles.iter().flatten().all(|&i| i < n)
    }

    fn flip(&mut self) {
        for t in &mut self.triangles {
            t.swap(1, 2);
        }
    }

    fn orient_outward(&mut self) {
        if self.signed_volume() < 0.0 {
            self.flip();
        }
    }

    /// Emits a closed ring band between two rings of equal length.
    fn band(&mut self, lower: &[u32], upper: &[u32]) {
        let n = lower.len();
        for i in 0..n {
            let j = (i + 1) % n;
            self.quad(lower[i], lower[j], upper[j], upper[i]);
        }
    }

    /// Fan from `center` to a closed ring; `reverse` flips the winding.
    fn fan(&mut self, center: u32, ring: &[u32], reverse: bool) {
        let n = ring.len();
        for i in 0..n {
            let j = (i + 1) % n;
            if reverse {
                self.tri(center, ring[j], ring[i]);
            } else {
                self.tri(center, ring[i], ring[j]);
            }
        }
    }
}

fn triangle_area([a, b, c]: [Vec3; 3]) -> f64 {
    0.5 * (b - a).cross(c - a).norm()
}

/// Tessellates a surface; planes become a square of
/// [`DEFAULT_PLANE_HALF_EXTENT`].
pub fn tessellate(s: &Surface, resolution: u32) -> Result<TriMesh, GeometryError> {
    tessellate_kind(s.kind(), resolution, DEFAULT_PLANE_HALF_EXTENT)
}

pub fn tessellate_kind(
    kind: &SurfaceKind,
    resolution: u32,
    plane_half_extent: f64,
) -> Result<TriMesh, GeometryError> {
    if resolution < MIN_RESOLUTION {
        return Err(GeometryError::ResolutionTooLow(resolution));
    }
    let n = resolution as usize;
    let mut m = TriMesh::default();
    match *kind {
        SurfaceKind::PlaneGeneral { .. }
        | SurfaceKind::PlaneX { .. }
        | SurfaceKind::PlaneY { .. }
        | SurfaceKind::PlaneZ { .. } => {
            let (normal, d) = kind.plane().unwrap();
            let (u, v, w) = normal.frame();
            // closest point to the origin
            let center = w * (d / normal.norm());
            let h = plane_half_extent;
            let ids: Vec<u32> = [(-h, -h), (h, -h), (h, h), (-h, h)]
                .into_iter()
                .map(|(a, b)| m.push(center + u * a + v * b))
                .collect();
            // counter-clockwise about the positive normal
            m.quad(ids[0], ids[1], ids[2], ids[3]);
            return Ok(m);
        }
        SurfaceKind::Sphere { center, r } => {
            let lon = 2 * n;
            let south = m.push(center - Vec3::Z * r);
            let mut rings = Vec::with_capacity(n - 1);
            for j in 1..n {
                let phi = PI * j as f64 / n as f64;
                let (sp, cp) = phi.sin_cos();
                let ring: Vec<u32> = (0..lon)
                    .map(|i| {
                        let th = 2.0 * PI * i as f64 / lon as f64;
                        let dir = Vec3::new(sp * th.cos(), sp * th.sin(), -cp);
                        m.push(center + dir * r)
                    })
                    .collect();
                rings.push(ring);
            }
            let north = m.push(center + Vec3::Z * r);
            m.fan(south, &rings[0], true);
            for k in 0..rings.len() - 1 {
                let (lo, hi) = (rings[k].clone(), rings[k + 1].clone());
                m.band(&lo, &hi);
            }
            m.fan(north, rings.last().unwrap(), false);
        }
        SurfaceKind::Box { base, e1, e2, e3 } => {
            cuboid(&mut m, base, e1, e2, e3);
        }
        SurfaceKind::Rpp {
            xmin,
            xmax,
            ymin,
            ymax,
            zmin,
            zmax,
        } => {
            cuboid(
                &mut m,
                Vec3::new(xmin, ymin, zmin),
                Vec3::X * (xmax - xmin),
                Vec3::Y * (ymax - ymin),
                Vec3::Z * (zmax - zmin),
            );
        }
        SurfaceKind::Rcc { base, h, r } => {
            let (u, v, _) = h.frame();
            frustum(&mut m, base, h, u * r, v * r, u * r, v * r, n);
        }
        SurfaceKind::Trc {
            base,
            h,
            r_base,
            r_top,
        } => {
            let (u, v, _) = h.frame();
            frustum(
                &mut m,
                base,
                h,
                u * r_base,
                v * r_base,
                u * r_top,
                v * r_top,
                n,
            );
        }
        SurfaceKind::Rec { base, h, v1, v2 } => {
            frustum(&mut m, base, h, v1, v2, v1, v2, n);
        }
        SurfaceKind::TorusX { .. } | SurfaceKind::TorusY { .. } | SurfaceKind::TorusZ { .. } => {
            let (center, a, b, c, axis) = kind.torus().unwrap();
            let (u, v, w) = axis.frame();
            let rings: Vec<Vec<u32>> = (0..n)
                .map(|i| {
                    let th = 2.0 * PI * i as f64 / n as f64;
                    let radial = u * th.cos() + v * th.sin();
                    (0..n)
                        .map(|j| {
                            let ph = 2.0 * PI * j as f64 / n as f64;
                            m.push(center + radial * (a + c * ph.cos()) + w * (b * ph.sin()))
                        })
                        .collect()
                })
                .collect();
            for i in 0..n {
                let (r0, r1) = (rings[i].clone(), rings[(i + 1) % n].clone());
                m.band(&r0, &r1);
            }
        }
        SurfaceKind::Wed { vertex, e1, e2, e3 } => {
            let low: Vec<u32> = [vertex, vertex + e1, vertex + e2]
                .into_iter()
                .map(|p| m.push(p))
                .collect();
            let high: Vec<u32> = [vertex, vertex + e1, vertex + e2]
                .into_iter()
                .map(|p| m.push(p + e3))
                .collect();
            m.tri(low[0], low[2], low[1]);
            m.tri(high[0], high[1], high[2]);
            m.band(&low, &high);
        }
    }
    m.orient_outward();
    Ok(m)
}

fn cuboid(m: &mut TriMesh, base: Vec3, e1: Vec3, e2: Vec3, e3: Vec3) {
    let low: Vec<u32> = [base, base + e1, base + e1 + e2, base + e2]
        .into_iter()
        .map(|p| m.push(p))
        .collect();
    let high: Vec<u32> = low
        .iter()
        .map(|&i| {
            let p = m.vertices[i as usize] + e3;
            m.push(p)
        })
        .collect();
    m.quad(low[0], low[3], low[2], low[1]);
    m.quad(high[0], high[1], high[2], high[3]);
    m.band(&low, &high);
}

/// Generalized cylinder between an elliptical base section (semi-axes
/// `b1`, `b2`) and a parallel top section (`t1`, `t2`) offset by `h`.
/// Sections with zero size collapse to a single apex vertex.
#[allow(clippy::too_many_arguments)]
fn frustum(m: &mut TriMesh, base: Vec3, h: Vec3, b1: Vec3, b2: Vec3, t1: Vec3, t2: Vec3, n: usize) {
    let top = base + h;
    let section = |m: &mut TriMesh, c: Vec3, s1: Vec3, s2: Vec3| -> Option<Vec<u32>> {
        if s1.norm() == 0.0 && s2.norm() == 0.0 {
            return None;
        }
        Some(
            (0..n)
                .map(|i| {
                    let th = 2.0 * PI * i as f64 / n as f64;
                    m.push(c + s1 * th.cos() + s2 * th.sin())
                })
                .collect(),
        )
    };
    let low = section(m, base, b1, b2);
    let high = section(m, top, t1, t2);
    match (low, high) {
        (Some(low), Some(high)) => {
            let cb = m.push(base);
            let ct = m.push(top);
            m.fan(cb, &low, true);
            m.band(&low, &high);
            m.fan(ct, &high, false);
        }
        (Some(low), None) => {
            let cb = m.push(base);
            let apex = m.push(top);
            m.fan(cb, &low, true);
            m.fan(apex, &low, false);
        }
        (None, Some(high)) => {
            let apex = m.push(base);
            let ct = m.push(top);
            m.fan(apex, &high, true);
            m.fan(ct, &high, false);
        }
        (None, None) => unreachable!("validated cone has a positive radius"),
    }
}
