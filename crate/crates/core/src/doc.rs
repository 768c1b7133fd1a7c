//! Model documents: the declarative JSON form of a [`Model`].
//!
//! ```json
//! {
//!   "title": "demo",
//!   "surfaces": [{"id": 1, "name": "ball", "kind": "sph", "center": [0, 0, 0], "r": 1}],
//!   "materials": [{"id": 1, "db": "Water"}],
//!   "cells": [
//!     {"id": 1, "name": "inside", "material": 1, "region": "-ball"},
//!     {"id": 2, "name": "world", "material": "outer", "region": "ball"}
//!   ]
//! }
//! ```
//!
//! Regions use the region mini-language with surfaces referenced by name or
//! number. Materials either spell out a composition or name a database entry
//! (`db`), optionally overriding its fields.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cells::{
    is_valid_ref_name, parse_region, validate_model, Cell, CellMaterial, Diagnostic, Model,
    RegionParseError,
};
use crate::geometry::{make_surface, SurfaceKind};
use crate::materials::{Material, MaterialDb, RatioMode, Species};
use crate::scene::color::default_color;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDoc {
    #[serde(default)]
    pub title: String,
    #[serde(default)]
    pub surfaces: Vec<SurfaceDoc>,
    #[serde(default)]
    pub materials: Vec<MaterialDoc>,
    #[serde(default)]
    pub cells: Vec<CellDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceDoc {
    pub id: u32,
    pub name: String,
    #[serde(flatten)]
    pub kind: SurfaceKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opacity: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialDoc {
    pub id: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub db: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub composition: Option<Vec<(Species, f64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<RatioMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gas: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<String>,
}

/// `material` field of a cell: a material id, `"void"` or `"outer"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MaterialRef {
    Id(u32),
    Keyword(Keyword),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Keyword {
    Void,
    Outer,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellDoc {
    pub id: u32,
    pub name: String,
    pub material: MaterialRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub volume: Option<f64>,
    pub region: String,
}

#[derive(Debug, thiserror::Error)]
pub enum DocError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    /// JSON that does not match the document schema; `pointer` is a JSON
    /// pointer such as `/surfaces/3/r`.
    #[error("{pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("{pointer}: {message}")]
    Invalid { pointer: String, message: String },
    #[error("{pointer}: {source}")]
    Region {
        pointer: String,
        source: RegionParseError,
    },
}

impl DocError {
    pub fn pointer(&self) -> Option<&str> {
        match self {
            DocError::Io { .. } => None,
            DocError::Schema { pointer, .. }
            | DocError::Invalid { pointer, .. }
            | DocError::Region { pointer, .. } => Some(pointer),
        }
    }
}

fn invalid(pointer: String, message: impl fmt::Display) -> DocError {
    DocError::Invalid {
        pointer,
        message: message.to_string(),
    }
}

/// Converts a serde path (`surfaces[3].r`) to a JSON pointer (`/surfaces/3/r`).
fn to_pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

/// Parses the JSON text of a model document without resolving it.
pub fn parse_doc_text(text: &str) -> Result<ModelDoc, DocError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| DocError::Schema {
        pointer: to_pointer(e.path()),
        message: e.inner().to_string(),
    })
}

/// Resolves a document into a [`Model`]: builds surfaces and materials,
/// looks up database entries and parses regions. Model-level consistency
/// (dangling references, missing outer cell, ...) is left to
/// [`validate_model`].
pub fn doc_to_model(doc: &ModelDoc, db: &MaterialDb) -> Result<Model, DocError> {
    let mut m = Model::new(doc.title.clone());
    let mut by_name: HashMap<&str, u32> = HashMap::new();
    for (i, s) in doc.surfaces.iter().enumerate() {
        let pointer = format!("/surfaces/{i}");
        let color = s.color.as_deref().unwrap_or(default_color(i));
        let surface = make_surface(
            s.id,
            &s.name,
            s.kind.clone(),
            color,
            s.opacity.unwrap_or(1.0),
        )
        .map_err(|e| invalid(pointer.clone(), e))?;
        if by_name.insert(s.name.trim(), s.id).is_some() {
            return Err(invalid(
                format!("{pointer}/name"),
                format!("duplicate surface name {:?}", s.name),
            ));
        }
        m.surfaces.push(surface);
    }
    let names: HashMap<String, u32> = by_name
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();

    for (i, d) in doc.materials.iter().enumerate() {
        let pointer = format!("/materials/{i}");
        m.materials
            .push(resolve_material(d, i, db).map_err(|e| invalid(pointer, e))?);
    }

    for (i, c) in doc.cells.iter().enumerate() {
        let pointer = format!("/cells/{i}");
        let region =
            parse_region(&c.region, &|n: &str| names.get(n).copied()).map_err(|source| {
                DocError::Region {
                    pointer: format!("{pointer}/region"),
                    source,
                }
            })?;
        let material = match c.material {
            MaterialRef::Id(0) | MaterialRef::Keyword(Keyword::Void) => CellMaterial::Void,
            MaterialRef::Keyword(Keyword::Outer) => CellMaterial::Outer,
            MaterialRef::Id(id) => CellMaterial::Ref(id),
        };
        let mut cell =
            Cell::new(c.id, &c.name, region, material).map_err(|e| invalid(pointer.clone(), e))?;
        if let Some(d) = c.density {
            cell = cell
                .with_density(d)
                .map_err(|e| invalid(format!("{pointer}/density"), e))?;
        }
        if let Some(v) = c.volume {
            cell = cell
                .with_volume(v)
                .map_err(|e| invalid(format!("{pointer}/volume"), e))?;
        }
        m.cells.push(cell);
    }
    Ok(m)
}

fn resolve_material(d: &MaterialDoc, index: usize, db: &MaterialDb) -> Result<Material, String> {
    let base = match &d.db {
        Some(name) => Some(db.material(name, d.id).map_err(|e| e.to_string())?),
        None => None,
    };
    let missing = |field: &str| format!("{field} is required unless \"db\" names a database entry");
    let name = match (&d.name, &base) {
        (Some(n), _) => n.clone(),
        (None, Some(b)) => b.name.clone(),
        (None, None) => return Err(missing("name")),
    };
    let density = d
        .density
        .or(base.as_ref().map(|b| b.density))
        .ok_or_else(|| missing("density"))?;
    let composition = match (&d.composition, &base) {
        (Some(c), _) => c.clone(),
        (None, Some(b)) => b.composition.clone(),
        (None, None) => return Err(missing("composition")),
    };
    let mode = d
        .mode
        .or(base.as_ref().map(|b| b.ratio_mode))
        .unwrap_or(RatioMode::Atom);
    let gas = d.gas.or(base.as_ref().map(|b| b.gas)).unwrap_or(false);
    let color = match (&d.color, &base) {
        (Some(c), _) => c.clone(),
        (None, Some(b)) => b.color.clone(),
        (None, None) => default_color(index).to_string(),
    };
    Material::new(d.id, &name, density, composition, mode, gas, &color).map_err(|e| e.to_string())
}

/// A loaded document and the diagnostics of [`validate_model`].
#[derive(Debug, Clone)]
pub struct LoadedModel {
    pub model: Model,
    pub diagnostics: Vec<Diagnostic>,
}

/// Parses, resolves and validates a model document.
pub fn parse_model_doc(text: &str, db: &MaterialDb) -> Result<LoadedModel, DocError> {
    let doc = parse_doc_text(text)?;
    let model = doc_to_model(&doc, db)?;
    let diagnostics = validate_model(&model);
    Ok(LoadedModel { model, diagnostics })
}

pub fn load_model_doc(path: &Path, db: &MaterialDb) -> Result<LoadedModel, DocError> {
    let text = std::fs::read_to_string(path).map_err(|source| DocError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_model_doc(&text, db)
}

/// Document form of a model. Materials are written out in full; regions
/// refer to surfaces by name where the name is a unique valid reference.
pub fn model_to_doc(m: &Model) -> ModelDoc {
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for s in &m.surfaces {
        *counts.entry(s.name()).or_default() += 1;
    }
    let labels: HashMap<u32, String> = m
        .surfaces
        .iter()
        .filter(|s| is_valid_ref_name(s.name()) && counts[s.name()] == 1)
        .map(|s| (s.id(), s.name().to_string()))
        .collect();
    let label = |id: u32| labels.get(&id).cloned().unwrap_or_else(|| id.to_string());

    ModelDoc {
        title: m.title.clone(),
        surfaces: m
            .surfaces
            .iter()
            .map(|s| SurfaceDoc {
                id: s.id(),
                name: s.name().to_string(),
                kind: s.kind().clone(),
                color: Some(s.color().to_string()),
                opacity: Some(s.opacity()),
            })
            .collect(),
        materials: m
            .materials
            .iter()
            .map(|x| MaterialDoc {
                id: x.id,
                db: None,
                name: Some(x.name.clone()),
                density: Some(x.density),
                composition: Some(x.composition.clone()),
                mode: Some(x.ratio_mode),
                gas: Some(x.gas),
                color: Some(x.color.clone()),
            })
            .collect(),
        cells: m
            .cells
            .iter()
            .map(|c| CellDoc {
                id: c.id,
                name: c.name.clone(),
                material: match c.material {
                    CellMaterial::Void => MaterialRef::Keyword(Keyword::Void),
                    CellMaterial::Outer => MaterialRef::Keyword(Keyword::Outer),
                    CellMaterial::Ref(id) => MaterialRef::Id(id),
                },
                density: c.density_override,
                volume: c.volume_hint,
                region: c.region.to_text_with(&label),
            })
            .collect(),
    }
}

/// Pretty-printed, newline-terminated JSON of [`model_to_doc`].
pub fn write_model_doc(m: &Model) -> String {
    let mut s = serde_json::to_string_pretty(&model_to_doc(m)).expect("model documents serialize");
    s.push('\n');
    s
}
