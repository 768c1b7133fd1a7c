//! Region algebra, cells, the model container, membership and Monte Carlo
//! volumes.

mod eval;
mod model;
mod parse;
mod region;
mod validate;

pub use eval::{
    cell_contains, default_sampling_box, mc_cell_volume, mc_region_volume, CompiledRegion,
    VolumeEstimate,
};
pub use model::{Cell, CellMaterial, Model};
pub use parse::{is_valid_ref_name, parse_region, parse_region_ids, RegionParseError, MAX_NESTING};
pub use region::{region_to_text, sense_neg, sense_pos, RegionExpr, Sign};
pub use validate::{has_errors, validate_model, DiagCode, Diagnostic, Severity, PROBE_SAMPLES};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CellError {
    #[error("invalid cell id {0}: ids start at 1")]
    InvalidId(u32),
    #[error("cell name {0:?} must be nonempty printable text")]
    InvalidName(String),
    #[error("unknown cell {0}")]
    UnknownCell(u32),
    #[error("unknown surface {0}")]
    UnknownSurface(u32),
    #[error("surface {0} is unbounded; give an explicit sampling box")]
    UnboundedRegionNeedsBox(u32),
    #[error("the number of samples must be at least 1")]
    ZeroSamples,
    #[error("cell {0}: the outer region cannot carry a density")]
    OuterWithDensity(u32),
    #[error("cell {0}: density {1} must be positive")]
    InvalidDensity(u32, f64),
    #[error("cell {0}: volume {1} must be positive")]
    InvalidVolume(u32, f64),
}

#[cfg(test)]
mod tests;
