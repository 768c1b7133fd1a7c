//! Plain-text material database.
//!
//! ```text
//! # comment
//! name | density | mode | species ratio, species ratio, ... [| flags]
//! ```
//!
//! `mode` is `atom` or `mass`; flags are whitespace separated and may be
//! `gas` or `color=<token>`. Names are matched case-insensitively with runs
//! of internal whitespace collapsed.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use super::{Material, MaterialError, RatioMode, Species};
use crate::scene::color::color_entry;
use crate::suggest::nearest;

/// The bundled database shipped with the crate.
pub const BUNDLED_DB: &str = include_str!("../../data/materials.db");

/// Environment variable listing extra database files, separated like `PATH`.
pub const MATERIAL_PATH_ENV: &str = "FITSGEO_MATERIAL_PATH";

const DEFAULT_COLOR: &str = "gray";

#[derive(Debug, thiserror::Error)]
pub enum MaterialDbError {
    #[error("{file}:{line}: {reason}")]
    Parse {
        file: String,
        line: usize,
        reason: String,
    },
    #[error("{file}:{line}: material {name:?} is already defined on line {first_line}")]
    DuplicateWithinFile {
        file: String,
        line: usize,
        first_line: usize,
        name: String,
    },
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// One database record, before an id is assigned.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialEntry {
    pub name: String,
    pub density: f64,
    pub ratio_mode: RatioMode,
    pub composition: Vec<(Species, f64)>,
    pub gas: bool,
    pub color: String,
    /// `file:line` the entry was read from.
    pub provenance: String,
}

#[derive(Debug, Clone, Default)]
pub struct MaterialDb {
    entries: BTreeMap<String, MaterialEntry>,
    warnings: Vec<String>,
}

/// Canonical lookup key: lower case, trimmed, whitespace runs collapsed.
pub fn normalize_name(name: &str) -> String {
    name.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

impl MaterialDb {
    pub fn new() -> Self {
        Self::default()
    }

    /// The bundled database.
    pub fn bundled() -> Self {
        let mut db = MaterialDb::new();
        db.merge_text(BUNDLED_DB, "<bundled>")
            .expect("bundled material database parses");
        db
    }

    /// The bundled database plus every file named in `FITSGEO_MATERIAL_PATH`.
    pub fn from_env() -> Result<Self, MaterialDbError> {
        let mut db = Self::bundled();
        if let Some(paths) = std::env::var_os(MATERIAL_PATH_ENV) {
            for path in std::env::split_paths(&paths).filter(|p| !p.as_os_str().is_empty()) {
                db.merge_file(&path)?;
            }
        }
        Ok(db)
    }

    pub fn merge_file(&mut self, path: &Path) -> Result<(), MaterialDbError> {
        let text = std::fs::read_to_string(path).map_err(|source| MaterialDbError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        self.merge_text(&text, &path.display().to_string())
    }

    /// Parses `text` and merges it in. Entries override earlier ones with the
    /// same name, recording a warning.
    pub fn merge_text(&mut self, text: &str, source: &str) -> Result<(), MaterialDbError> {
        let parsed = parse_db_text(text, source)?;
        for entry in parsed {
            let key = normalize_name(&entry.name);
            if let Some(old) = self.entries.get(&key) {
                let msg = format!(
                    "material {:?} from {} overrides {}",
                    entry.name, entry.provenance, old.provenance
                );
                log::warn!("{msg}");
                self.warnings.push(msg);
            }
            self.entries.insert(key, entry);
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&MaterialEntry> {
        self.entries.get(&normalize_name(name))
    }

    /// Entries in key order.
    pub fn entries(&self) -> impl Iterator<Item = &MaterialEntry> {
        self.entries.values()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Copy of the entry named `name` with `id` assigned.
    pub fn material(&self, name: &str, id: u32) -> Result<Material, MaterialError> {
        let key = normalize_name(name);
        let entry = self
            .entries
            .get(&key)
            .ok_or_else(|| MaterialError::NotFound {
                name: name.to_string(),
                suggestions: nearest(&key, self.entries.keys().map(String::as_str), 3),
            })?;
        Material::new(
            id,
            &entry.name,
            entry.density,
            entry.composition.clone(),
            entry.ratio_mode,
            entry.gas,
            &entry.color,
        )
    }
}

/// Loads and merges database files in order; later files win on collisions.
pub fn db_load<P: AsRef<Path>>(paths: &[P]) -> Result<MaterialDb, MaterialDbError> {
    let mut db = MaterialDb::new();
    for p in paths {
        db.merge_file(p.as_ref())?;
    }
    Ok(db)
}

pub fn material_from_db(db: &MaterialDb, name: &str, id: u32) -> Result<Material, MaterialError> {
    db.material(name, id)
}

fn parse_db_text(text: &str, source: &str) -> Result<Vec<MaterialEntry>, MaterialDbError> {
    let mut out: Vec<MaterialEntry> = Vec::new();
    let mut first_seen: BTreeMap<String, usize> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |reason: String| MaterialDbError::Parse {
            file: source.to_string(),
            line: line_no,
            reason,
        };
        let entry = parse_entry(line, &format!("{source}:{line_no}")).map_err(err)?;
        let key = normalize_name(&entry.name);
        if let Some(&first_line) = first_seen.get(&key) {
            return Err(MaterialDbError::DuplicateWithinFile {
                file: source.to_string(),
                line: line_no,
                first_line,
                name: entry.name,
            });
        }
        first_seen.insert(key, line_no);
        out.push(entry);
    }
    Ok(out)
}

fn parse_entry(line: &str, provenance: &str) -> Result<MaterialEntry, String> {
    let fields: Vec<&str> = line.split('|').map(str::trim).collect();
    if !(4..=5).contains(&fields.len()) {
        return Err(format!(
            "expected 4 or 5 '|'-separated fields, found {}",
            fields.len()
        ));
    }
    let name = fields[0].split_whitespace().collect::<Vec<_>>().join(" ");
    if name.is_empty() {
        return Err("empty material name".into());
    }
    let density: f64 = fields[1]
        .parse()
        .map_err(|_| format!("bad density {:?}", fields[1]))?;
    if !(density.is_finite() && density > 0.0) {
        return Err(format!("density must be positive, got {density}"));
    }
    let ratio_mode: RatioMode = fields[2]
        .parse()
        .map_err(|_| format!("bad mode {:?}: expected atom or mass", fields[2]))?;

    let mut composition = Vec::new();
    for component in fields[3].split(',') {
        let toks: Vec<&str> = component.split_whitespace().collect();
        let [species, ratio] = toks[..] else {
            return Err(format!(
                "bad component {:?}: expected `species ratio`",
                component.trim()
            ));
        };
        let species: Species = species
            .parse()
            .map_err(|e: super::BadSpecies| e.to_string())?;
        let ratio: f64 = ratio
            .parse()
            .map_err(|_| format!("bad ratio {ratio:?} for {species}"))?;
        if !(ratio.is_finite() && ratio > 0.0) {
            return Err(format!("ratio for {species} must be positive, got {ratio}"));
        }
        composition.push((species, ratio));
    }

    let mut gas = false;
    let mut color = DEFAULT_COLOR.to_string();
    if let Some(flags) = fields.get(4) {
        for flag in flags.split_whitespace() {
            if flag.eq_ignore_ascii_case("gas") {
                gas = true;
            } else if let Some(c) = flag.strip_prefix("color=") {
                color = color_entry(c).map_err(|e| e.to_string())?.name.to_string();
            } else {
                return Err(format!("unknown flag {flag:?}"));
            }
        }
    }

    Ok(MaterialEntry {
        name,
        density,
        ratio_mode,
        composition,
        gas,
        color,
        provenance: provenance.to_string(),
    })
}
