//! Implicit functions, sense classification and analytic properties.

use std::f64::consts::PI;

use super::surface::{Axis, Surface, SurfaceKind};
use super::{Aabb, GeometryError, Vec3};

/// Which side of a surface a point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    /// Interior of a macrobody, or `a*x + b*y + c*z < d` for a plane.
    Negative,
    On,
    Positive,
}

impl Sense {
    pub fn as_i8(self) -> i8 {
        match self {
            Sense::Negative => -1,
            Sense::On => 0,
            Sense::Positive => 1,
        }
    }
}

/// Perimeter of an ellipse with semi-axes `p` and `q`, using Ramanujan's
/// second approximation. Exact for circles; the relative error stays below
/// 1e-6 for aspect ratios up to 10.
pub fn ellipse_perimeter(p: f64, q: f64) -> f64 {
    let h = ((p - q) / (p + q)).powi(2);
    PI * (p + q) * (1.0 + 3.0 * h / (10.0 + (4.0 - 3.0 * h).sqrt()))
}

/// Decomposition of `q` against a unit axis: (axial coordinate, radial vector).
fn axial(q: Vec3, axis: Vec3) -> (f64, Vec3) {
    let t = q.dot(axis);
    (t, q - axis * t)
}

/// Signed distance-like value to a slab `0 <= t <= len`.
fn slab(t: f64, len: f64) -> f64 {
    (-t).max(t - len)
}

impl SurfaceKind {
    /// Implicit function: negative inside, zero on the surface, positive
    /// outside. The value has length units and approximates the distance to
    /// the surface near it, so tolerances can be scaled by [`Self::scale`].
    pub fn implicit(&self, p: Vec3) -> f64 {
        match *self {
            SurfaceKind::PlaneGeneral { .. }
            | SurfaceKind::PlaneX { .. }
            | SurfaceKind::PlaneY { .. }
            | SurfaceKind::PlaneZ { .. } => {
                let (n, d) = self.plane().unwrap();
                (n.dot(p) - d) / n.norm()
            }
            SurfaceKind::Sphere { center, r } => (p - center).norm() - r,
            SurfaceKind::Box { base, e1, e2, e3 } => {
                let q = p - base;
                [e1, e2, e3]
                    .iter()
                    .map(|e| {
                        let len = e.norm();
                        slab(q.dot(*e) / len, len)
                    })
                    .fold(f64::NEG_INFINITY, f64::max)
            }
            SurfaceKind::Rpp {
                xmin,
                xmax,
                ymin,
                ymax,
                zmin,
                zmax,
            } => (xmin - p.x)
                .max(p.x - xmax)
                .max(ymin - p.y)
                .max(p.y - ymax)
                .max(zmin - p.z)
                .max(p.z - zmax),
            SurfaceKind::Rcc { base, h, r } => {
                let len = h.norm();
                let (t, radial) = axial(p - base, h / len);
                (radial.norm() - r).max(slab(t, len))
            }
            SurfaceKind::Trc {
                base,
                h,
                r_base,
                r_top,
            } => {
                let len = h.norm();
                let (t, radial) = axial(p - base, h / len);
                let r_at = r_base + (r_top - r_base) * t / len;
                // scale by cos(half-angle) to get the distance to the slanted side
                let slant = len.hypot(r_base - r_top);
                ((radial.norm() - r_at) * len / slant).max(slab(t, len))
            }
            SurfaceKind::TorusX { .. }
            | SurfaceKind::TorusY { .. }
            | SurfaceKind::TorusZ { .. } => {
                let (center, a, b, c, axis) = self.torus().unwrap();
                let (_, _, w) = axis.frame();
                let (t, radial) = axial(p - center, w);
                let rho = radial.norm();
                let e = ((t / b).powi(2) + ((rho - a) / c).powi(2)).sqrt();
                (e - 1.0) * b.min(c)
            }
            SurfaceKind::Rec { base, h, v1, v2 } => {
                let len = h.norm();
                let (t, radial) = axial(p - base, h / len);
                let (l1, l2) = (v1.norm(), v2.norm());
                let u = radial.dot(v1) / l1;
                let w = radial.dot(v2) / l2;
                let e = ((u / l1).powi(2) + (w / l2).powi(2)).sqrt();
                ((e - 1.0) * l2).max(slab(t, len))
            }
            SurfaceKind::Wed { vertex, e1, e2, e3 } => {
                let q = p - vertex;
                let (l1, l2, l3) = (e1.norm(), e2.norm(), e3.norm());
                let s1 = q.dot(e1) / l1;
                let s2 = q.dot(e2) / l2;
                let s3 = q.dot(e3) / l3;
                // hypotenuse: s1/l1 + s2/l2 = 1, scaled to a distance
                let hyp = (s1 / l1 + s2 / l2 - 1.0) * (l1 * l2) / l1.hypot(l2);
                (-s1).max(-s2).max(hyp).max(slab(s3, l3))
            }
        }
    }

    /// Characteristic length used to scale on-surface tolerances.
    pub fn scale(&self) -> f64 {
        match *self {
            SurfaceKind::PlaneGeneral { .. }
            | SurfaceKind::PlaneX { .. }
            | SurfaceKind::PlaneY { .. }
            | SurfaceKind::PlaneZ { .. } => {
                let (n, d) = self.plane().unwrap();
                (d.abs() / n.norm()).max(1.0)
            }
            SurfaceKind::Sphere { r, .. } => r,
            SurfaceKind::Box { e1, e2, e3, .. } | SurfaceKind::Wed { e1, e2, e3, .. } => {
                e1.norm().max(e2.norm()).max(e3.norm())
            }
            SurfaceKind::Rpp {
                xmin,
                xmax,
                ymin,
                ymax,
                zmin,
                zmax,
            } => (xmax - xmin).max(ymax - ymin).max(zmax - zmin),
            SurfaceKind::Rcc { h, r, .. } => h.norm().max(r),
            SurfaceKind::Trc {
                h, r_base, r_top, ..
            } => h.norm().max(r_base).max(r_top),
            SurfaceKind::TorusX { a, b, c, .. }
            | SurfaceKind::TorusY { a, b, c, .. }
            | SurfaceKind::TorusZ { a, b, c, .. } => (a + c).max(b),
            SurfaceKind::Rec { h, v1, .. } => h.norm().max(v1.norm()),
        }
    }

    pub fn volume(&self) -> Result<f64, GeometryError> {
        Ok(match *self {
            SurfaceKind::Sphere { r, .. } => 4.0 * PI * r.powi(3) / 3.0,
            SurfaceKind::Box { e1, e2, e3, .. } => e1.dot(e2.cross(e3)).abs(),
            SurfaceKind::Rpp {
                xmin,
                xmax,
                ymin,
                ymax,
                zmin,
                zmax,
            } => (xmax - xmin) * (ymax - ymin) * (zmax - zmin),
            SurfaceKind::Rcc { h, r, .. } => PI * r * r * h.norm(),
            SurfaceKind::Trc {
                h, r_base, r_top, ..
            } => PI * h.norm() / 3.0 * (r_base * r_base + r_base * r_top + r_top * r_top),
            SurfaceKind::TorusX { a, b, c, .. }
            | SurfaceKind::TorusY { a, b, c, .. }
            | SurfaceKind::TorusZ { a, b, c, .. } => 2.0 * PI * PI * a * b * c,
            SurfaceKind::Rec { h, v1, v2, .. } => PI * v1.norm() * v2.norm() * h.norm(),
            SurfaceKind::Wed { e1, e2, e3, .. } => 0.5 * e1.dot(e2.cross(e3)).abs(),
            _ => return Err(GeometryError::UnboundedSurface),
        })
    }

    /// Total boundary area. Elliptical cross-sections (REC, tori with
    /// `b != c`) use [`ellipse_perimeter`] and are therefore approximate.
    pub fn area(&self) -> Result<f64, GeometryError> {
        Ok(match *self {
            SurfaceKind::Sphere { r, .. } => 4.0 * PI * r * r,
            SurfaceKind::Box { e1, e2, e3, .. } => {
                let (a, b, c) = (e1.norm(), e2.norm(), e3.norm());
                2.0 * (a * b + b * c + a * c)
            }
            SurfaceKind::Rpp {
                xmin,
                xmax,
                ymin,
                ymax,
                zmin,
                zmax,
            } => {
                let (a, b, c) = (xmax - xmin, ymax - ymin, zmax - zmin);
                2.0 * (a * b + b * c + a * c)
            }
            SurfaceKind::Rcc { h, r, .. } => 2.0 * PI * r * h.norm() + 2.0 * PI * r * r,
            SurfaceKind::Trc {
                h, r_base, r_top, ..
            } => {
                let slant = h.norm().hypot(r_base - r_top);
                PI * slant * (r_base + r_top) + PI * (r_base * r_base + r_top * r_top)
            }
            SurfaceKind::TorusX { a, b, c, .. }
            | SurfaceKind::TorusY { a, b, c, .. }
            | SurfaceKind::TorusZ { a, b, c, .. } => {
                // Pappus: tube perimeter swept around the major circle
                2.0 * PI * a * ellipse_perimeter(b, c)
            }
            SurfaceKind::Rec { h, v1, v2, .. } => {
                let (l1, l2) = (v1.norm(), v2.norm());
                ellipse_perimeter(l1, l2) * h.norm() + 2.0 * PI * l1 * l2
            }
            SurfaceKind::Wed { e1, e2, e3, .. } => {
                let (l1, l2, l3) = (e1.norm(), e2.norm(), e3.norm());
                l1 * l2 + l3 * (l1 + l2 + (e2 - e1).norm())
            }
            _ => return Err(GeometryError::UnboundedSurface),
        })
    }

    /// Volume centroid.
    pub fn centroid(&self) -> Result<Vec3, GeometryError> {
        Ok(match *self {
            SurfaceKind::Sphere { center, .. } => center,
            SurfaceKind::Box { base, e1, e2, e3 } => base + (e1 + e2 + e3) * 0.5,
            SurfaceKind::Rpp {
                xmin,
                xmax,
                ymin,
                ymax,
                zmin,
                zmax,
            } => Vec3::new(
                0.5 * (xmin + xmax),
                0.5 * (ymin + ymax),
                0.5 * (zmin + zmax),
            ),
            SurfaceKind::Rcc { base, h, .. } | SurfaceKind::Rec { base, h, .. } => base + h * 0.5,
            SurfaceKind::Trc {
                base,
                h,
                r_base: rb,
                r_top: rt,
            } => {
                let frac = (rb * rb + 2.0 * rb * rt + 3.0 * rt * rt)
                    / (4.0 * (rb * rb + rb * rt + rt * rt));
                base + h * frac
            }
            SurfaceKind::TorusX { center, .. }
            | SurfaceKind::TorusY { center, .. }
            | SurfaceKind::TorusZ { center, .. } => center,
            SurfaceKind::Wed { vertex, e1, e2, e3 } => vertex + (e1 + e2) / 3.0 + e3 * 0.5,
            _ => return Err(GeometryError::UnboundedSurface),
        })
    }

    /// Tight axis-aligned bounding box.
    pub fn aabb(&self) -> Result<Aabb, GeometryError> {
        // per-axis half extent of a disc of radius r normal to unit axis w
        fn disc(w: Vec3, r: f64) -> Vec3 {
            Vec3::new(
                r * (1.0 - w.x * w.x).max(0.0).sqrt(),
                r * (1.0 - w.y * w.y).max(0.0).sqrt(),
                r * (1.0 - w.z * w.z).max(0.0).sqrt(),
            )
        }
        // per-axis half extent of the ellipse spanned by semi-axis vectors
        fn ellipse(v1: Vec3, v2: Vec3) -> Vec3 {
            Vec3::new(v1.x.hypot(v2.x), v1.y.hypot(v2.y), v1.z.hypot(v2.z))
        }
        fn caps(base: Vec3, top: Vec3, half_base: Vec3, half_top: Vec3) -> Aabb {
            Aabb::new(
                (base - half_base).min(top - half_top),
                (base + half_base).max(top + half_top),
            )
        }
        Ok(match *self {
            SurfaceKind::Sphere { center, r } => {
                Aabb::new(center - Vec3::splat(r), center + Vec3::splat(r))
            }
            SurfaceKind::Box { base, e1, e2, e3 } => {
                let mut pts = Vec::with_capacity(8);
                for i in 0..8 {
                    let f = |bit: usize| if i & bit != 0 { 1.0 } else { 0.0 };
                    pts.push(base + e1 * f(1) + e2 * f(2) + e3 * f(4));
                }
                Aabb::from_points(pts).unwrap()
            }
            SurfaceKind::Rpp {
                xmin,
                xmax,
                ymin,
                ymax,
                zmin,
                zmax,
            } => Aabb::new(Vec3::new(xmin, ymin, zmin), Vec3::new(xmax, ymax, zmax)),
            SurfaceKind::Rcc { base, h, r } => {
                let d = disc(h.normalized(), r);
                caps(base, base + h, d, d)
            }
            SurfaceKind::Trc {
                base,
                h,
                r_base,
                r_top,
            } => {
                let w = h.normalized();
                caps(base, base + h, disc(w, r_base), disc(w, r_top))
            }
            SurfaceKind::TorusX { .. }
            | SurfaceKind::TorusY { .. }
            | SurfaceKind::TorusZ { .. } => {
                let (center, a, b, c, axis) = self.torus().unwrap();
                let half = match axis {
                    Axis::X => Vec3::new(b, a + c, a + c),
                    Axis::Y => Vec3::new(a + c, b, a + c),
                    Axis::Z => Vec3::new(a + c, a + c, b),
                };
                Aabb::new(center - half, center + half)
            }
            SurfaceKind::Rec { base, h, v1, v2 } => {
                let e = ellipse(v1, v2);
                caps(base, base + h, e, e)
            }
            SurfaceKind::Wed { vertex, e1, e2, e3 } => {
                let tri = [vertex, vertex + e1, vertex + e2];
                Aabb::from_points(tri.iter().flat_map(|&p| [p, p + e3])).unwrap()
            }
            _ => return Err(GeometryError::UnboundedSurface),
        })
    }

    /// Classifies `p` against the surface; points within `tol * scale()` of
    /// the surface report [`Sense::On`].
    pub fn sense(&self, p: Vec3, tol: f64) -> Sense {
        let f = self.implicit(p);
        if f.abs() <= tol * self.scale() {
            Sense::On
        } else if f < 0.0 {
            Sense::Negative
        } else {
            Sense::Positive
        }
    }
}

/// Signed side of `p` relative to `s`; see [`SurfaceKind::sense`].
pub fn sense(s: &Surface, p: Vec3, tol: f64) -> Sense {
    s.kind().sense(p, tol)
}

pub fn analytic_volume(s: &Surface) -> Result<f64, GeometryError> {
    s.kind().volume()
}

pub fn analytic_area(s: &Surface) -> Result<f64, GeometryError> {
    s.kind().area()
}

pub fn centroid(s: &Surface) -> Result<Vec3, GeometryError> {
    s.kind().centroid()
}

pub fn aabb(s: &Surface) -> Result<Aabb, GeometryError> {
    s.kind().aabb()
}
