use std::path::Path;

use anyhow::{Context, Result};
use csgdeck_core::cells::{has_errors, validate_model, Diagnostic};
use csgdeck_core::doc::parse_model_doc;
use csgdeck_core::materials::MaterialDb;
use csgdeck_core::phits::ImportSeverity;
use csgdeck_core::{parse_input, Model};

/// A model plus every message produced while reading and validating it.
pub struct Loaded {
    pub model: Model,
    pub messages: Vec<String>,
    pub errors: bool,
}

/// Reads a model document (JSON) or a PHITS deck, chosen by content: text
/// whose first non-blank character is `{` is a document.
pub fn load(path: &Path, db: &MaterialDb) -> Result<Loaded> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut messages = Vec::new();
    let mut errors = false;
    let model = if text.trim_start().starts_with('{') {
        let l = parse_model_doc(&text, db).with_context(|| format!("{}", path.display()))?;
        report(&l.diagnostics, &mut messages, &mut errors);
        l.model
    } else {
        let imported = parse_input(&text).with_context(|| format!("{}", path.display()))?;
        for d in &imported.diagnostics {
            errors |= d.severity == ImportSeverity::Error;
            messages.push(d.to_string());
        }
        report(&validate_model(&imported.model), &mut messages, &mut errors);
        imported.model
    };
    Ok(Loaded {
        model,
        messages,
        errors,
    })
}

fn report(diags: &[Diagnostic], messages: &mut Vec<String>, errors: &mut bool) {
    *errors |= has_errors(diags);
    messages.extend(diags.iter().map(Diagnostic::to_string));
}
