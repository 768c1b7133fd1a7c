use serde::{Deserialize, Serialize};

use super::{GeometryError, Vec3};
use crate::scene::color::color_entry;

/// Largest angular deviation from 90 degrees accepted between edge or axis
/// vectors that must be orthogonal.
pub const ORTHOGONALITY_TOL_RAD: f64 = 1e-9;

/// Parameters of a surface primitive. Lengths are in centimetres.
///
/// The variants follow the PHITS/MCNP mnemonics: `P`, `PX`, `PY`, `PZ`,
/// `SPH`, `BOX`, `RPP`, `RCC`, `TRC`, `TX`/`TY`/`TZ`, `REC` and `WED`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SurfaceKind {
    /// Plane `a*x + b*y + c*z = d`.
    #[serde(rename = "p", alias = "P")]
    PlaneGeneral { a: f64, b: f64, c: f64, d: f64 },
    #[serde(rename = "px", alias = "PX")]
    PlaneX { d: f64 },
    #[serde(rename = "py", alias = "PY")]
    PlaneY { d: f64 },
    #[serde(rename = "pz", alias = "PZ")]
    PlaneZ { d: f64 },
    #[serde(rename = "sph", alias = "SPH")]
    Sphere { center: Vec3, r: f64 },
    /// Right parallelepiped spanned by three orthogonal edges from `base`.
    #[serde(rename = "box", alias = "BOX")]
    Box {
        base: Vec3,
        e1: Vec3,
        e2: Vec3,
        e3: Vec3,
    },
    #[serde(rename = "rpp", alias = "RPP")]
    Rpp {
        xmin: f64,
        xmax: f64,
        ymin: f64,
        ymax: f64,
        zmin: f64,
        zmax: f64,
    },
    /// Right circular cylinder; `h` runs from the base centre to the top centre.
    #[serde(rename = "rcc", alias = "RCC")]
    Rcc { base: Vec3, h: Vec3, r: f64 },
    /// Truncated right cone.
    #[serde(rename = "trc", alias = "TRC")]
    Trc {
        base: Vec3,
        h: Vec3,
        r_base: f64,
        r_top: f64,
    },
    /// Elliptical torus about an axis parallel to x. `a` is the major radius,
    /// `b` the tube semi-axis along the torus axis, `c` the radial one.
    #[serde(rename = "tx", alias = "TX")]
    TorusX {
        center: Vec3,
        a: f64,
        b: f64,
        c: f64,
    },
    #[serde(rename = "ty", alias = "TY")]
    TorusY {
        center: Vec3,
        a: f64,
        b: f64,
        c: f64,
    },
    #[serde(rename = "tz", alias = "TZ")]
    TorusZ {
        center: Vec3,
        a: f64,
        b: f64,
        c: f64,
    },
    /// Right elliptical cylinder with semi-axis vectors `v1` (major) and `v2`.
    #[serde(rename = "rec", alias = "REC")]
    Rec {
        base: Vec3,
        h: Vec3,
        v1: Vec3,
        v2: Vec3,
    },
    /// Right wedge: the triangle `vertex, vertex+e1, vertex+e2` swept along `e3`.
    #[serde(rename = "wed", alias = "WED")]
    Wed {
        vertex: Vec3,
        e1: Vec3,
        e2: Vec3,
        e3: Vec3,
    },
}

/// Torus axis direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    /// Right-handed frame `(u, v, axis)`.
    pub fn frame(self) -> (Vec3, Vec3, Vec3) {
        match self {
            Axis::X => (Vec3::Y, Vec3::Z, Vec3::X),
            Axis::Y => (Vec3::Z, Vec3::X, Vec3::Y),
            Axis::Z => (Vec3::X, Vec3::Y, Vec3::Z),
        }
    }
}

impl SurfaceKind {
    /// PHITS card mnemonic.
    pub fn mnemonic(&self) -> &'static str {
        match self {
            SurfaceKind::PlaneGeneral { .. } => "P",
            SurfaceKind::PlaneX { .. } => "PX",
            SurfaceKind::PlaneY { .. } => "PY",
            SurfaceKind::PlaneZ { .. } => "PZ",
            SurfaceKind::Sphere { .. } => "SPH",
            SurfaceKind::Box { .. } => "BOX",
            SurfaceKind::Rpp { .. } => "RPP",
            SurfaceKind::Rcc { .. } => "RCC",
            SurfaceKind::Trc { .. } => "TRC",
            SurfaceKind::TorusX { .. } => "TX",
            SurfaceKind::TorusY { .. } => "TY",
            SurfaceKind::TorusZ { .. } => "TZ",
            SurfaceKind::Rec { .. } => "REC",
            SurfaceKind::Wed { .. } => "WED",
        }
    }

    pub fn is_bounded(&self) -> bool {
        !matches!(
            self,
            SurfaceKind::PlaneGeneral { .. }
                | SurfaceKind::PlaneX { .. }
                | SurfaceKind::PlaneY { .. }
                | SurfaceKind::PlaneZ { .. }
        )
    }

    /// Card parameters in PHITS order.
    pub fn params(&self) -> Vec<f64> {
        fn v(out: &mut Vec<f64>, p: &Vec3) {
            out.extend_from_slice(&p.to_array());
        }
        let mut out = Vec::with_capacity(12);
        match self {
            SurfaceKind::PlaneGeneral { a, b, c, d } => out.extend([*a, *b, *c, *d]),
            SurfaceKind::PlaneX { d } | SurfaceKind::PlaneY { d } | SurfaceKind::PlaneZ { d } => {
                out.push(*d)
            }
            SurfaceKind::Sphere { center, r } => {
                v(&mut out, center);
                out.push(*r);
            }
            SurfaceKind::Box { base, e1, e2, e3 } => {
                for p in [base, e1, e2, e3] {
                    v(&mut out, p);
                }
            }
            SurfaceKind::Rpp {
                xmin,
                xmax,
                ymin,
                ymax,
                zmin,
                zmax,
            } => out.extend([*xmin, *xmax, *ymin, *ymax, *zmin, *zmax]),
            SurfaceKind::Rcc { base, h, r } => {
                v(&mut out, base);
                v(&mut out, h);
                out.push(*r);
            }
            SurfaceKind::Trc {
                base,
                h,
                r_base,
                r_top,
            } => {
                v(&mut out, base);
                v(&mut out, h);
                out.extend([*r_base, *r_top]);
            }
            SurfaceKind::TorusX { center, a, b, c }
            | SurfaceKind::TorusY { center, a, b, c }
            | SurfaceKind::TorusZ { center, a, b, c } => {
                v(&mut out, center);
                out.extend([*a, *b, *c]);
            }
            SurfaceKind::Rec { base, h, v1, v2 } => {
                for p in [base, h, v1, v2] {
                    v(&mut out, p);
                }
            }
            SurfaceKind::Wed { vertex, e1, e2, e3 } => {
                for p in [vertex, e1, e2, e3] {
                    v(&mut out, p);
                }
            }
        }
        out
    }

    /// Number of card parameters expected after `mnemonic`, or `None` for an
    /// unknown mnemonic. Matching is case-insensitive.
    pub fn arity(mnemonic: &str) -> Option<usize> {
        Some(match mnemonic.to_ascii_uppercase().as_str() {
            "P" => 4,
            "PX" | "PY" | "PZ" => 1,
            "SPH" => 4,
            "BOX" => 12,
            "RPP" => 6,
            "RCC" => 7,
            "TRC" => 8,
            "TX" | "TY" | "TZ" => 6,
            "REC" => 12,
            "WED" => 12,
            _ => return None,
        })
    }

    /// Inverse of [`SurfaceKind::mnemonic`] plus [`SurfaceKind::params`].
    /// Returns `None` when the mnemonic is unknown or the arity is wrong.
    pub fn from_params(mnemonic: &str, p: &[f64]) -> Option<SurfaceKind> {
        if Self::arity(mnemonic)? != p.len() {
            return None;
        }
        let v = |i: usize| Vec3::new(p[i], p[i + 1], p[i + 2]);
        Some(match mnemonic.to_ascii_uppercase().as_str() {
            "P" => SurfaceKind::PlaneGeneral {
                a: p[0],
                b: p[1],
                c: p[2],
                d: p[3],
            },
            "PX" => SurfaceKind::PlaneX { d: p[0] },
            "PY" => SurfaceKind::PlaneY { d: p[0] },
            "PZ" => SurfaceKind::PlaneZ { d: p[0] },
            "SPH" => SurfaceKind::Sphere {
                center: v(0),
                r: p[3],
            },
            "BOX" => SurfaceKind::Box {
                base: v(0),
                e1: v(3),
                e2: v(6),
                e3: v(9),
            },
            "RPP" => SurfaceKind::Rpp {
                xmin: p[0],
                xmax: p[1],
                ymin: p[2],
                ymax: p[3],
                zmin: p[4],
                zmax: p[5],
            },
            "RCC" => SurfaceKind::Rcc {
                base: v(0),
                h: v(3),
                r: p[6],
            },
            "TRC" => SurfaceKind::Trc {
                base: v(0),
                h: v(3),
                r_base: p[6],
                r_top: p[7],
            },
            "TX" | "TY" | "TZ" => {
                let (center, a, b, c) = (v(0), p[3], p[4], p[5]);
                match mnemonic.to_ascii_uppercase().as_str() {
                    "TX" => SurfaceKind::TorusX { center, a, b, c },
                    "TY" => SurfaceKind::TorusY { center, a, b, c },
                    _ => SurfaceKind::TorusZ { center, a, b, c },
                }
            }
            "REC" => SurfaceKind::Rec {
                base: v(0),
                h: v(3),
                v1: v(6),
                v2: v(9),
            },
            "WED" => SurfaceKind::Wed {
                vertex: v(0),
                e1: v(3),
                e2: v(6),
                e3: v(9),
            },
            _ => return None,
        })
    }

    /// `Some((center, a, b, c, axis))` for the torus variants.
    pub(crate) fn torus(&self) -> Option<(Vec3, f64, f64, f64, Axis)> {
        match *self {
            SurfaceKind::TorusX { center, a, b, c } => Some((center, a, b, c, Axis::X)),
            SurfaceKind::TorusY { center, a, b, c } => Some((center, a, b, c, Axis::Y)),
            SurfaceKind::TorusZ { center, a, b, c } => Some((center, a, b, c, Axis::Z)),
            _ => None,
        }
    }

    /// Plane normal `(a, b, c)` and offset `d` for the plane variants.
    pub(crate) fn plane(&self) -> Option<(Vec3, f64)> {
        match *self {
            SurfaceKind::PlaneGeneral { a, b, c, d } => Some((Vec3::new(a, b, c), d)),
            SurfaceKind::PlaneX { d } => Some((Vec3::X, d)),
            SurfaceKind::PlaneY { d } => Some((Vec3::Y, d)),
            SurfaceKind::PlaneZ { d } => Some((Vec3::Z, d)),
            _ => None,
        }
    }

    /// Checks every parameter invariant of the kind.
    pub fn validate(&self) -> Result<(), GeometryError> {
        if self.params().iter().any(|v| !v.is_finite()) {
            return Err(degenerate("non-finite parameter"));
        }
        match *self {
            SurfaceKind::PlaneGeneral { a, b, c, .. } => {
                if a == 0.0 && b == 0.0 && c == 0.0 {
                    return Err(degenerate("plane normal (a, b, c) is zero"));
                }
            }
            SurfaceKind::PlaneX { .. }
            | SurfaceKind::PlaneY { .. }
            | SurfaceKind::PlaneZ { .. } => {}
            SurfaceKind::Sphere { r, .. } => positive("sphere radius", r)?,
            SurfaceKind::Box { e1, e2, e3, .. } | SurfaceKind::Wed { e1, e2, e3, .. } => {
                for (name, e) in [("e1", e1), ("e2", e2), ("e3", e3)] {
                    positive(&format!("|{name}|"), e.norm())?;
                }
                orthogonal("e1", e1, "e2", e2)?;
                orthogonal("e2", e2, "e3", e3)?;
                orthogonal("e1", e1, "e3", e3)?;
            }
            SurfaceKind::Rpp {
                xmin,
                xmax,
                ymin,
                ymax,
                zmin,
                zmax,
            } => {
                for (axis, lo, hi) in [("x", xmin, xmax), ("y", ymin, ymax), ("z", zmin, zmax)] {
                    if lo >= hi {
                        return Err(degenerate(format!(
                            "RPP {axis} interval [{lo}, {hi}] is empty or inverted"
                        )));
                    }
                }
            }
            SurfaceKind::Rcc { h, r, .. } => {
                positive("|h|", h.norm())?;
                positive("cylinder radius", r)?;
            }
            SurfaceKind::Trc {
                h, r_base, r_top, ..
            } => {
                positive("|h|", h.norm())?;
                if r_base < 0.0 || r_top < 0.0 || r_base + r_top <= 0.0 {
                    return Err(degenerate(format!(
                        "cone radii must be non-negative with a positive sum, got {r_base} and {r_top}"
                    )));
                }
            }
            SurfaceKind::TorusX { a, b, c, .. }
            | SurfaceKind::TorusY { a, b, c, .. }
            | SurfaceKind::TorusZ { a, b, c, .. } => {
                positive("torus major radius a", a)?;
                positive("torus semi-axis b", b)?;
                positive("torus semi-axis c", c)?;
                if a <= c {
                    return Err(degenerate(format!(
                        "self-intersecting torus: major radius {a} must exceed radial semi-axis {c}"
                    )));
                }
            }
            SurfaceKind::Rec { h, v1, v2, .. } => {
                positive("|h|", h.norm())?;
                positive("|v2|", v2.norm())?;
                if v1.norm() < v2.norm() {
                    return Err(degenerate("REC major semi-axis v1 is shorter than v2"));
                }
                orthogonal("v1", v1, "v2", v2)?;
                orthogonal("v1", v1, "h", h)?;
                orthogonal("v2", v2, "h", h)?;
            }
        }
        Ok(())
    }
}

fn degenerate(msg: impl Into<String>) -> GeometryError {
    GeometryError::DegenerateGeometry(msg.into())
}

fn positive(what: &str, v: f64) -> Result<(), GeometryError> {
    if v > 0.0 {
        Ok(())
    } else {
        Err(degenerate(format!("{what} must be positive, got {v}")))
    }
}

fn orthogonal(na: &str, a: Vec3, nb: &str, b: Vec3) -> Result<(), GeometryError> {
    let cos = (a.dot(b) / (a.norm() * b.norm())).abs();
    // deviation from a right angle
    let dev = cos.min(1.0).asin();
    if dev > ORTHOGONALITY_TOL_RAD {
        Err(degenerate(format!(
            "{na} and {nb} are not orthogonal (off by {dev:e} rad)"
        )))
    } else {
        Ok(())
    }
}

/// A validated, identified surface primitive.
#[derive(Debug, Clone, PartialEq)]
pub struct Surface {
    id: u32,
    name: String,
    kind: SurfaceKind,
    color: String,
    opacity: f64,
}

/// Validates the parameters and builds a [`Surface`].
pub fn make_surface(
    id: u32,
    name: &str,
    kind: SurfaceKind,
    color: &str,
    opacity: f64,
) -> Result<Surface, GeometryError> {
    if id < 1 {
        return Err(GeometryError::InvalidId(id));
    }
    let name = name.trim();
    if name.is_empty() {
        return Err(GeometryError::EmptyName);
    }
    if name.chars().any(char::is_control) {
        return Err(GeometryError::InvalidName(name.to_string()));
    }
    if !(0.0..=1.0).contains(&opacity) {
        return Err(GeometryError::InvalidOpacity(opacity));
    }
    let color = color_entry(color)?.name.to_string();
    kind.validate()?;
    Ok(Surface {
        id,
        name: name.to_string(),
        kind,
        color,
        opacity,
    })
}

impl Surface {
    pub fn new(
        id: u32,
        name: &str,
        kind: SurfaceKind,
        color: &str,
        opacity: f64,
    ) -> Result<Surface, GeometryError> {
        make_surface(id, name, kind, color, opacity)
    }

    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &SurfaceKind {
        &self.kind
    }

    pub fn color(&self) -> &str {
        &self.color
    }

    pub fn opacity(&self) -> f64 {
        self.opacity
    }

    pub fn is_bounded(&self) -> bool {
        self.kind.is_bounded()
    }

    /// Same surface with a different id.
    pub fn with_id(&self, id: u32) -> Result<Surface, GeometryError> {
        make_surface(id, &self.name, self.kind.clone(), &self.color, self.opacity)
    }
}
