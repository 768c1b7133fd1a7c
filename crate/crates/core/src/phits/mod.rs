//! PHITS deck text: number formatting, export and import.

mod export;
mod import;
mod number;
mod semantic;

pub use export::{
    cell_card, export_cell_section, export_input, export_material_section, export_surface_section,
    format_number, material_card, surface_card, ExportFlags, CONTINUATION_INDENT, GENERATOR,
    MAX_REGION_WIDTH,
};
pub use import::{
    parse_input, ImportCode, ImportDiagnostic, ImportSeverity, Imported, ParseError, SourceSpan,
    CONTINUATION_COLUMNS,
};
pub use number::{parse_number, try_format_number};
pub use semantic::semantic_diff;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExportError {
    #[error("cannot write non-finite number {0}")]
    NonFiniteNumber(f64),
    #[error("no sections selected for export")]
    NothingSelected,
    #[error("unknown section {0:?} (expected material, surface or cell)")]
    UnknownSection(String),
}
