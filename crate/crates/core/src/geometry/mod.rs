//! Surface primitives and their numeric semantics.

mod mesh;
mod props;
mod surface;
mod vec3;

pub use mesh::{tessellate, tessellate_kind, TriMesh, DEFAULT_PLANE_HALF_EXTENT, MIN_RESOLUTION};
pub use props::{aabb, analytic_area, analytic_volume, centroid, ellipse_perimeter, sense, Sense};
pub use surface::{make_surface, Axis, Surface, SurfaceKind, ORTHOGONALITY_TOL_RAD};
pub use vec3::{Aabb, Vec3};

use crate::scene::color::UnknownColor;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),
    #[error("invalid surface id {0}: ids start at 1")]
    InvalidId(u32),
    #[error("surface name must not be empty")]
    EmptyName,
    #[error("surface name {0:?} contains control characters")]
    InvalidName(String),
    #[error("opacity {0} outside [0, 1]")]
    InvalidOpacity(f64),
    #[error(transparent)]
    UnknownColor(#[from] UnknownColor),
    #[error("surface is unbounded")]
    UnboundedSurface,
    #[error("tessellation resolution {0} is below the minimum of {MIN_RESOLUTION}")]
    ResolutionTooLow(u32),
}
