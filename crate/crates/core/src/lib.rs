//! Constructive-solid-geometry kernel for PHITS input decks.
//!
//! Surfaces, materials and cells are typed, validated values. A [`Model`]
//! collects them, answers point-membership queries, estimates cell volumes by
//! Monte Carlo, and serializes to (and parses from) the `[Material]`,
//! `[Surface]` and `[Cell]` sections of a PHITS input file.

pub mod cells;
pub mod doc;
pub mod geometry;
pub mod materials;
pub mod phits;
pub mod rng;
pub mod scene;
pub mod snake;
mod suggest;

pub use cells::{Cell, CellMaterial, Model, RegionExpr, Sign};
pub use geometry::{make_surface, Aabb, Surface, SurfaceKind, TriMesh, Vec3};
pub use materials::{Material, MaterialDb, RatioMode};
pub use phits::{export_input, parse_input, ExportFlags};
pub use scene::{build_scene, write_scene, SceneDoc, SceneOptions};
