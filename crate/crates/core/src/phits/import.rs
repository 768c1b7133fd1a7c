//! Reader for the `[Material]`, `[Surface]` and `[Cell]` sections.
//!
//! Accepts everything [`super::export_input`] writes plus the usual
//! hand-written variations: `$` comments anywhere, `#` comment lines,
//! blank lines, spaced section names (`[ S u r f a c e ]`), continuation
//! lines indented by four or more columns, explicit `+` senses and Fortran
//! `D` exponents. Other sections are skipped with a warning.

use std::collections::HashMap;
use std::fmt;

use super::number::parse_number;
use crate::cells::{parse_region_ids, Cell, CellMaterial, Model};
use crate::geometry::{make_surface, SurfaceKind};
use crate::materials::{Material, RatioMode, Species};
use crate::scene::color::default_color;

/// Columns of leading blanks that mark a continuation line.
pub const CONTINUATION_COLUMNS: usize = 4;

/// 1-based line and column range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: usize,
    pub col_start: usize,
    pub col_end: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}-{}", self.line, self.col_start, self.col_end)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("line {span}: {message}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ImportSeverity {
    Warning,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImportCode {
    UnknownSectionSkipped,
    ContentOutsideSection,
    UnknownMnemonic,
    IgnoredParameter,
    MaterialDensityUnknown,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImportDiagnostic {
    pub severity: ImportSeverity,
    pub code: ImportCode,
    pub span: SourceSpan,
    pub message: String,
}

impl fmt::Display for ImportDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            ImportSeverity::Warning => "warning",
            ImportSeverity::Error => "error",
        };
        write!(
            f,
            "{sev}[{:?}] line {}: {}",
            self.code, self.span, self.message
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Imported {
    pub model: Model,
    pub diagnostics: Vec<ImportDiagnostic>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Material,
    Surface,
    Cell,
    Skipped,
}

/// A token with its position.
#[derive(Debug, Clone)]
struct Tok<'a> {
    text: &'a str,
    span: SourceSpan,
}

/// One logical card: its tokens (continuations included) and comment.
#[derive(Debug, Default)]
struct Card<'a> {
    toks: Vec<Tok<'a>>,
    comment: Option<&'a str>,
    line: usize,
}

impl Card<'_> {
    fn span(&self) -> SourceSpan {
        match (self.toks.first(), self.toks.last()) {
            (Some(a), Some(b)) if a.span.line == b.span.line => SourceSpan {
                line: a.span.line,
                col_start: a.span.col_start,
                col_end: b.span.col_end,
            },
            (Some(a), _) => a.span,
            _ => SourceSpan {
                line: self.line,
                col_start: 1,
                col_end: 1,
            },
        }
    }
}

fn err(span: SourceSpan, message: impl Into<String>) -> ParseError {
    ParseError {
        span,
        message: message.into(),
    }
}

fn tokens(line_no: usize, line: &str, content_end: usize) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let col = |byte: usize| line[..byte].chars().count() + 1;
    for (i, c) in line[..content_end].char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, i));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, content_end));
    }
    out.into_iter()
        .map(|(s, e)| Tok {
            text: &line[s..e],
            span: SourceSpan {
                line: line_no,
                col_start: col(s),
                col_end: col(e),
            },
        })
        .collect()
}

/// Leading blank width, tabs counting as a full continuation indent.
fn indent_width(line: &str) -> usize {
    let mut w = 0;
    for c in line.chars() {
        match c {
            ' ' => w += 1,
            '\t' => w += CONTINUATION_COLUMNS,
            _ => break,
        }
    }
    w
}

/// Section name from a header line such as `[ M a t e r i a l ]`.
fn header_name(content: &str) -> Option<String> {
    let t = content.trim();
    let inner = t.strip_prefix('[')?;
    let close = inner.find(']')?;
    Some(
        inner[..close]
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .to_ascii_lowercase(),
    )
}

/// Parses deck text into a [`Model`].
pub fn parse_input(text: &str) -> Result<Imported, ParseError> {
    let mut diagnostics = Vec::new();
    let mut title = String::new();
    let mut section: Option<Section> = None;
    let mut cards: Vec<(Section, Card<'_>)> = Vec::new();
    let mut warned_outside = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.starts_with('#') {
            continue;
        }
        let (content_end, comment) = match line.find('$') {
            Some(i) => (i, Some(line[i + 1..].trim())),
            None => (line.len(), None),
        };
        let content = &line[..content_end];

        if let Some(name) = header_name(content) {
            let span = SourceSpan {
                line: line_no,
                col_start: 1,
                col_end: line.chars().count() + 1,
            };
            section = Some(match name.as_str() {
                "material" => Section::Material,
                "surface" => Section::Surface,
                "cell" => Section::Cell,
                _ => {
                    diagnostics.push(ImportDiagnostic {
                        severity: ImportSeverity::Warning,
                        code: ImportCode::UnknownSectionSkipped,
                        span,
                        message: format!("section [{name}] is not supported and was skipped"),
                    });
                    Section::Skipped
                }
            });
            continue;
        }

        let toks = tokens(line_no, line, content_end);
        let Some(sec) = section else {
            if toks.is_empty() {
                if let Some(t) = comment.and_then(|c| c.strip_prefix("title:")) {
                    title = t.trim().to_string();
                }
            } else if !warned_outside {
                warned_outside = true;
                diagnostics.push(ImportDiagnostic {
                    severity: ImportSeverity::Warning,
                    code: ImportCode::ContentOutsideSection,
                    span: toks[0].span,
                    message: "content before the first section header was ignored".into(),
                });
            }
            continue;
        };
        if sec == Section::Skipped {
            continue;
        }
        if toks.is_empty() {
            continue;
        }

        let continues = match sec {
            // material cards are free-form token streams
            Section::Material => !is_material_start(toks[0].text) && !cards.is_empty(),
            _ => indent_width(line) >= CONTINUATION_COLUMNS,
        };
        match cards.last_mut() {
            Some((s, card)) if continues && *s == sec => {
                card.toks.extend(toks);
                if comment.is_some_and(|c| !c.is_empty()) {
                    card.comment = comment;
                }
            }
            _ => cards.push((
                sec,
                Card {
                    toks,
                    comment: comment.filter(|c| !c.is_empty()),
                    line: line_no,
                },
            )),
        }
    }

    let mut model = Model::new(title);
    let mut pending_materials = Vec::new();
    let mut pending_cells = Vec::new();
    for (sec, card) in &cards {
        match sec {
            Section::Material => pending_materials.push(parse_material_card(card)?),
            Section::Surface => {
                if let Some(s) = parse_surface_card(card, model.surfaces.len(), &mut diagnostics)? {
                    model.surfaces.push(s);
                }
            }
            Section::Cell => pending_cells.push(parse_cell_card(card, &mut diagnostics)?),
            Section::Skipped => {}
        }
    }

    // Resolve densities: the MAT comment wins, else the first cell using it.
    let mut first_use: HashMap<u32, f64> = HashMap::new();
    for c in &pending_cells {
        if let (CellMaterial::Ref(id), Some(d)) = (c.cell.material, c.density) {
            first_use.entry(id).or_insert(d);
        }
    }
    for (i, pending) in pending_materials.into_iter().enumerate() {
        let density = match pending
            .density
            .or_else(|| first_use.get(&pending.id).copied())
        {
            Some(d) => d,
            None => {
                diagnostics.push(ImportDiagnostic {
                    severity: ImportSeverity::Error,
                    code: ImportCode::MaterialDensityUnknown,
                    span: pending.span,
                    message: format!(
                        "material {} has no density comment and no cell uses it; skipped",
                        pending.id
                    ),
                });
                continue;
            }
        };
        let m = Material::new(
            pending.id,
            &pending.name,
            density,
            pending.composition,
            pending.mode,
            pending.gas,
            default_color(i),
        )
        .map_err(|e| err(pending.span, e.to_string()))?;
        model.materials.push(m);
    }
    for pending in pending_cells {
        let mut cell = pending.cell;
        if let (CellMaterial::Ref(id), Some(d)) = (cell.material, pending.density) {
            if model.material(id).map(|m| m.density) != Some(d) {
                cell.density_override = Some(d);
            }
        }
        model.cells.push(cell);
    }
    Ok(Imported { model, diagnostics })
}

fn is_material_start(tok: &str) -> bool {
    material_id_token(tok).is_some() || tok.to_ascii_lowercase().starts_with("mat[")
}

/// `MAT[12]` or MCNP-style `M12`.
fn material_id_token(tok: &str) -> Option<&str> {
    let lower = tok.to_ascii_lowercase();
    if let Some(rest) = lower.strip_prefix("mat[") {
        let inner = rest.strip_suffix(']')?;
        return Some(&tok[4..4 + inner.len()]);
    }
    let digits = lower.strip_prefix('m')?;
    (!digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())).then(|| &tok[1..])
}

struct PendingMaterial {
    id: u32,
    name: String,
    density: Option<f64>,
    composition: Vec<(Species, f64)>,
    mode: RatioMode,
    gas: bool,
    span: SourceSpan,
}

/// `name density g/cc` from a MAT comment, read from the right so the name
/// keeps its exact spacing.
fn split_material_comment(comment: &str) -> (Option<String>, Option<f64>) {
    let t = comment.trim();
    let lower = t.to_ascii_lowercase();
    if let Some(rest) = lower.strip_suffix("g/cc").map(|r| &t[..r.len()]) {
        let rest = rest.trim_end();
        if let Some((name, num)) = rest.rsplit_once(char::is_whitespace) {
            if let Some(d) = parse_number(num).filter(|d| *d > 0.0) {
                let name = name.trim_end();
                if !name.is_empty() {
                    return (Some(name.to_string()), Some(d));
                }
            }
        }
    }
    ((!t.is_empty()).then(|| t.to_string()), None)
}

fn parse_material_card(card: &Card<'_>) -> Result<PendingMaterial, ParseError> {
    let head = &card.toks[0];
    // MAT[ 1 ] written with spaces arrives as several tokens
    let (id_text, mut rest) =
        if head.text.to_ascii_lowercase().starts_with("mat[") && !head.text.ends_with(']') {
            let close = card
                .toks
                .iter()
                .position(|t| t.text.ends_with(']'))
                .ok_or_else(|| err(head.span, "unterminated MAT[ ]"))?;
            let joined: String = card.toks[..=close].iter().map(|t| t.text).collect();
            (joined, close + 1)
        } else {
            (head.text.to_string(), 1)
        };
    let id: u32 = material_id_token(&id_text)
        .and_then(|s| s.trim().parse().ok())
        .filter(|&id| id >= 1)
        .ok_or_else(|| {
            err(
                head.span,
                format!("expected MAT[n] with n >= 1, found {id_text:?}"),
            )
        })?;

    let mut composition = Vec::new();
    let mut signs = (false, false);
    let mut gas = false;
    while rest < card.toks.len() {
        let t = &card.toks[rest];
        if let Some((key, value)) = t.text.split_once('=') {
            if key.eq_ignore_ascii_case("gas") {
                gas = match value {
                    "1" => true,
                    "0" => false,
                    _ => return Err(err(t.span, format!("GAS must be 0 or 1, found {value:?}"))),
                };
            }
            // other keywords (nlib=..., etc.) carry no geometry
            rest += 1;
            continue;
        }
        let species: Species = t
            .text
            .parse()
            .map_err(|e: crate::materials::BadSpecies| err(t.span, e.to_string()))?;
        let r = card
            .toks
            .get(rest + 1)
            .ok_or_else(|| err(t.span, format!("missing ratio after {}", t.text)))?;
        let ratio = parse_number(r.text)
            .filter(|v| *v != 0.0)
            .ok_or_else(|| err(r.span, format!("bad ratio {:?}", r.text)))?;
        if ratio < 0.0 {
            signs.1 = true;
        } else {
            signs.0 = true;
        }
        composition.push((species, ratio.abs()));
        rest += 2;
    }
    let span = card.span();
    if composition.is_empty() {
        return Err(err(span, format!("material {id} has no components")));
    }
    let mode = match signs {
        (true, true) => {
            return Err(err(
                span,
                format!("material {id} mixes atom (positive) and mass (negative) ratios"),
            ))
        }
        (false, true) => RatioMode::Mass,
        _ => RatioMode::Atom,
    };
    let (name, density) = card
        .comment
        .map(split_material_comment)
        .unwrap_or((None, None));
    Ok(PendingMaterial {
        id,
        name: name.unwrap_or_else(|| format!("mat{id}")),
        density,
        composition,
        mode,
        gas,
        span,
    })
}

fn parse_id(t: &Tok<'_>, what: &str) -> Result<u32, ParseError> {
    t.text
        .parse::<u32>()
        .ok()
        .filter(|&v| v >= 1)
        .ok_or_else(|| {
            err(
                t.span,
                format!("expected a positive {what} number, found {:?}", t.text),
            )
        })
}

fn parse_surface_card(
    card: &Card<'_>,
    index: usize,
    diagnostics: &mut Vec<ImportDiagnostic>,
) -> Result<Option<crate::geometry::Surface>, ParseError> {
    let id = parse_id(&card.toks[0], "surface")?;
    let mnem = card
        .toks
        .get(1)
        .ok_or_else(|| err(card.span(), format!("surface {id}: missing mnemonic")))?;
    if mnem.text.parse::<i64>().is_ok() {
        return Err(err(
            mnem.span,
            "transformed surfaces (TR numbers) are not supported",
        ));
    }
    let Some(arity) = SurfaceKind::arity(mnem.text) else {
        diagnostics.push(ImportDiagnostic {
            severity: ImportSeverity::Error,
            code: ImportCode::UnknownMnemonic,
            span: mnem.span,
            message: format!(
                "surface {id}: unknown mnemonic {:?}; card skipped",
                mnem.text
            ),
        });
        return Ok(None);
    };
    let params = &card.toks[2..];
    if params.len() != arity {
        return Err(err(
            card.span(),
            format!(
                "surface {id} {}: expected {arity} parameters, found {}",
                mnem.text.to_ascii_uppercase(),
                params.len()
            ),
        ));
    }
    let values = params
        .iter()
        .map(|t| {
            parse_number(t.text).ok_or_else(|| err(t.span, format!("bad number {:?}", t.text)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let kind = SurfaceKind::from_params(mnem.text, &values).expect("arity checked");
    let name = card
        .comment
        .map_or_else(|| format!("s{id}"), str::to_string);
    make_surface(id, &name, kind, default_color(index), 1.0)
        .map(Some)
        .map_err(|e| err(card.span(), format!("surface {id}: {e}")))
}

struct PendingCell {
    cell: Cell,
    /// g/cm3 from the card, positive.
    density: Option<f64>,
}

fn parse_cell_card(
    card: &Card<'_>,
    diagnostics: &mut Vec<ImportDiagnostic>,
) -> Result<PendingCell, ParseError> {
    let id = parse_id(&card.toks[0], "cell")?;
    let mat_tok = card
        .toks
        .get(1)
        .ok_or_else(|| err(card.span(), format!("cell {id}: missing material number")))?;
    let matnum: i64 = mat_tok.text.parse().map_err(|_| {
        err(
            mat_tok.span,
            format!("cell {id}: bad material number {:?}", mat_tok.text),
        )
    })?;
    let (material, mut at) = match matnum {
        0 => (CellMaterial::Void, 2),
        -1 => (CellMaterial::Outer, 2),
        n if n >= 1 && n <= u32::MAX as i64 => (CellMaterial::Ref(n as u32), 3),
        _ => {
            return Err(err(
                mat_tok.span,
                format!("cell {id}: invalid material number {matnum}"),
            ))
        }
    };
    let mut density = None;
    if at == 3 {
        let t = card
            .toks
            .get(2)
            .ok_or_else(|| err(card.span(), format!("cell {id}: missing density")))?;
        let d = parse_number(t.text)
            .ok_or_else(|| err(t.span, format!("cell {id}: bad density {:?}", t.text)))?;
        if d >= 0.0 {
            return Err(err(
                t.span,
                format!(
                    "cell {id}: only negative (g/cm3) densities are supported, found {}",
                    t.text
                ),
            ));
        }
        density = Some(-d);
    }

    let mut region = String::new();
    let mut volume = None;
    while at < card.toks.len() {
        let t = &card.toks[at];
        at += 1;
        if let Some((key, value)) = t.text.split_once('=') {
            if key.eq_ignore_ascii_case("vol") {
                volume = Some(
                    parse_number(value)
                        .filter(|v| *v > 0.0)
                        .ok_or_else(|| err(t.span, format!("cell {id}: bad VOL {value:?}")))?,
                );
            } else {
                diagnostics.push(ImportDiagnostic {
                    severity: ImportSeverity::Warning,
                    code: ImportCode::IgnoredParameter,
                    span: t.span,
                    message: format!("cell {id}: parameter {:?} ignored", t.text),
                });
            }
            continue;
        }
        if !region.is_empty() {
            region.push(' ');
        }
        region.push_str(t.text);
    }
    let expr =
        parse_region_ids(&region).map_err(|e| err(card.span(), format!("cell {id}: {e}")))?;
    let name = card
        .comment
        .map_or_else(|| format!("c{id}"), str::to_string);
    let mut cell =
        Cell::new(id, &name, expr, material).map_err(|e| err(card.span(), e.to_string()))?;
    if let Some(v) = volume {
        cell = cell
            .with_volume(v)
            .map_err(|e| err(card.span(), e.to_string()))?;
    }
    Ok(PendingCell { cell, density })
}
