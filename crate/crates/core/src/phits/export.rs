use std::fmt::Write;

use super::number::try_format_number;
use super::ExportError;
use crate::cells::{region_to_text, Cell, CellMaterial, Model};
use crate::geometry::Surface;
use crate::materials::{Material, RatioMode};

/// Region text longer than this is wrapped onto indented continuation lines.
pub const MAX_REGION_WIDTH: usize = 200;
pub const CONTINUATION_INDENT: &str = "    ";

pub const GENERATOR: &str = concat!("csgdeck ", env!("CARGO_PKG_VERSION"));

/// Which sections [`export_input`] writes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExportFlags {
    pub include_material: bool,
    pub include_surface: bool,
    pub include_cell: bool,
    pub header_comment: Option<String>,
}

impl Default for ExportFlags {
    fn default() -> Self {
        Self::all()
    }
}

impl ExportFlags {
    pub fn all() -> Self {
        ExportFlags {
            include_material: true,
            include_surface: true,
            include_cell: true,
            header_comment: None,
        }
    }

    pub fn none() -> Self {
        ExportFlags {
            include_material: false,
            include_surface: false,
            include_cell: false,
            header_comment: None,
        }
    }

    /// Parses a comma-separated section list such as `material,cell`.
    pub fn from_sections(list: &str) -> Result<Self, ExportError> {
        let mut flags = Self::none();
        for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part.to_ascii_lowercase().as_str() {
                "material" | "materials" => flags.include_material = true,
                "surface" | "surfaces" => flags.include_surface = true,
                "cell" | "cells" => flags.include_cell = true,
                _ => return Err(ExportError::UnknownSection(part.to_string())),
            }
        }
        Ok(flags)
    }
}

/// Shortest round-trip decimal text; see [`try_format_number`].
pub fn format_number(v: f64) -> Result<String, ExportError> {
    try_format_number(v).ok_or(ExportError::NonFiniteNumber(v))
}

// Model values are validated finite on construction.
fn num(v: f64) -> String {
    try_format_number(v).unwrap_or_else(|| panic!("non-finite value {v} in a validated model"))
}

pub fn surface_card(s: &Surface) -> String {
    let mut line = format!("{} {}", s.id(), s.kind().mnemonic());
    for p in s.kind().params() {
        line.push(' ');
        line.push_str(&num(p));
    }
    let _ = write!(line, " $ {}", s.name());
    line
}

pub fn export_surface_section<'a, I: IntoIterator<Item = &'a Surface>>(surfaces: I) -> String {
    let mut out = String::from("[Surface]\n");
    for s in surfaces {
        out.push_str(&surface_card(s));
        out.push('\n');
    }
    out
}

pub fn material_card(m: &Material) -> String {
    let mut out = format!("MAT[{}] $ {} {} g/cc\n", m.id, m.name, num(m.density));
    let sign = match m.ratio_mode {
        RatioMode::Atom => 1.0,
        RatioMode::Mass => -1.0,
    };
    for (species, ratio) in &m.composition {
        let _ = writeln!(out, "  {species} {}", num(sign * ratio));
    }
    if m.gas {
        out.push_str("  GAS=1\n");
    }
    out
}

pub fn export_material_section<'a, I: IntoIterator<Item = &'a Material>>(materials: I) -> String {
    let mut out = String::from("[Material]\n");
    for m in materials {
        out.push_str(&material_card(m));
    }
    out
}

/// Splits region text at spaces into chunks of at most `width` characters
/// (a single longer token stays whole).
fn wrap_region(text: &str, width: usize) -> Vec<String> {
    let mut lines = Vec::new();
    let mut cur = String::new();
    for tok in text.split(' ') {
        if !cur.is_empty() && cur.len() + 1 + tok.len() > width {
            lines.push(std::mem::take(&mut cur));
        }
        if !cur.is_empty() {
            cur.push(' ');
        }
        cur.push_str(tok);
    }
    lines.push(cur);
    lines
}

pub fn cell_card(m: &Model, c: &Cell) -> String {
    let mut head = format!("{} {}", c.id, c.material.number());
    if let CellMaterial::Ref(_) = c.material {
        // a dangling material reference leaves nothing to export
        if let Some(d) = m.effective_density(c) {
            let _ = write!(head, " {}", num(-d));
        }
    }
    let region = region_to_text(&c.region);
    let chunks = if region.len() > MAX_REGION_WIDTH {
        wrap_region(&region, MAX_REGION_WIDTH)
    } else {
        vec![region]
    };
    let mut out = String::new();
    for (i, chunk) in chunks.iter().enumerate() {
        if i == 0 {
            let _ = write!(out, "{head} {chunk}");
        } else {
            let _ = write!(out, "\n{CONTINUATION_INDENT}{chunk}");
        }
    }
    if let Some(v) = c.volume_hint {
        let _ = write!(out, " VOL={}", num(v));
    }
    let _ = write!(out, " $ {}", c.name);
    out
}

pub fn export_cell_section(m: &Model) -> String {
    let mut out = String::from("[Cell]\n");
    for c in &m.cells {
        out.push_str(&cell_card(m, c));
        out.push('\n');
    }
    out
}

/// Full export: a comment header followed by the selected sections in
/// Material, Surface, Cell order. Output is byte-deterministic.
pub fn export_input(m: &Model, flags: &ExportFlags) -> Result<String, ExportError> {
    if !(flags.include_material || flags.include_surface || flags.include_cell) {
        return Err(ExportError::NothingSelected);
    }
    let mut out = format!("$ generated by {GENERATOR}\n");
    if !m.title.trim().is_empty() {
        let _ = writeln!(
            out,
            "$ title: {}",
            m.title.trim().replace(char::is_control, " ")
        );
    }
    if let Some(comment) = &flags.header_comment {
        for line in comment.lines() {
            let _ = writeln!(out, "$ {line}");
        }
    }
    let mut sections = Vec::new();
    if flags.include_material {
        sections.push(export_material_section(&m.materials));
    }
    if flags.include_surface {
        sections.push(export_surface_section(&m.surfaces));
    }
    if flags.include_cell {
        sections.push(export_cell_section(m));
    }
    for s in sections {
        out.push('\n');
        out.push_str(&s);
    }
    Ok(out)
}
