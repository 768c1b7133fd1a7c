use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::eval::{default_sampling_box, mc_region_volume};
use super::{CellMaterial, Model};

/// Samples used by the zero-volume probe.
pub const PROBE_SAMPLES: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagCode {
    DuplicateSurfaceId,
    DuplicateMaterialId,
    DuplicateCellId,
    DanglingSurfaceRef,
    DanglingMaterialRef,
    MissingOuter,
    MultipleOuter,
    OuterWithDensity,
    InvalidDensity,
    UnusedSurface,
    ZeroVolume,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: DiagCode,
    /// Where the problem is, e.g. `cell 3` or `surface 10`.
    pub location: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(
            f,
            "{sev}[{:?}] {}: {}",
            self.code, self.location, self.message
        )
    }
}

fn diag(severity: Severity, code: DiagCode, location: String, message: String) -> Diagnostic {
    Diagnostic {
        severity,
        code,
        location,
        message,
    }
}

fn duplicates<I: IntoIterator<Item = u32>>(ids: I) -> BTreeSet<u32> {
    let mut seen = HashMap::new();
    for id in ids {
        *seen.entry(id).or_insert(0usize) += 1;
    }
    seen.into_iter()
        .filter(|&(_, n)| n > 1)
        .map(|(id, _)| id)
        .collect()
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(|d| d.severity == Severity::Error)
}

/// Structural checks plus a coarse Monte Carlo probe for empty cells.
pub fn validate_model(m: &Model) -> Vec<Diagnostic> {
    use DiagCode::*;
    use Severity::*;
    let mut out = Vec::new();

    for id in duplicates(m.surfaces.iter().map(|s| s.id())) {
        out.push(diag(
            Error,
            DuplicateSurfaceId,
            format!("surface {id}"),
            "surface id defined more than once".into(),
        ));
    }
    for id in duplicates(m.materials.iter().map(|x| x.id)) {
        out.push(diag(
            Error,
            DuplicateMaterialId,
            format!("material {id}"),
            "material id defined more than once".into(),
        ));
    }
    for id in duplicates(m.cells.iter().map(|c| c.id)) {
        out.push(diag(
            Error,
            DuplicateCellId,
            format!("cell {id}"),
            "cell id defined more than once".into(),
        ));
    }

    let surface_ids: BTreeSet<u32> = m.surfaces.iter().map(|s| s.id()).collect();
    let mut used = BTreeSet::new();
    for cell in &m.cells {
        let loc = format!("cell {}", cell.id);
        for sid in cell.region.surface_ids() {
            used.insert(sid);
            if !surface_ids.contains(&sid) {
                out.push(diag(
                    Error,
                    DanglingSurfaceRef,
                    loc.clone(),
                    format!("region references undefined surface {sid}"),
                ));
            }
        }
        if let CellMaterial::Ref(mid) = cell.material {
            if m.material(mid).is_none() {
                out.push(diag(
                    Error,
                    DanglingMaterialRef,
                    loc.clone(),
                    format!("undefined material {mid}"),
                ));
            }
        }
        if let Some(d) = cell.density_override {
            if cell.material == CellMaterial::Outer {
                out.push(diag(
                    Error,
                    OuterWithDensity,
                    loc.clone(),
                    "the outer region cannot carry a density".into(),
                ));
            } else if !(d.is_finite() && d > 0.0) {
                out.push(diag(
                    Error,
                    InvalidDensity,
                    loc.clone(),
                    format!("density {d} must be positive"),
                ));
            }
        }
    }

    let outer: Vec<u32> = m
        .cells
        .iter()
        .filter(|c| c.material == CellMaterial::Outer)
        .map(|c| c.id)
        .collect();
    match outer.len() {
        0 => out.push(diag(
            Error,
            MissingOuter,
            "model".into(),
            "no outer (-1) cell defined".into(),
        )),
        1 => {}
        _ => out.push(diag(
            Error,
            MultipleOuter,
            "model".into(),
            format!("several outer cells: {outer:?}"),
        )),
    }

    for s in &m.surfaces {
        if !used.contains(&s.id()) {
            out.push(diag(
                Warning,
                UnusedSurface,
                format!("surface {}", s.id()),
                format!("{:?} is not used by any cell", s.name()),
            ));
        }
    }

    // Only probe when references resolve; otherwise the errors above suffice.
    if !has_errors(&out) {
        let fallback = m.bounded_aabb();
        for cell in m.cells.iter().filter(|c| c.material != CellMaterial::Outer) {
            let bbox = match default_sampling_box(m, &cell.region) {
                Ok(b) => b,
                Err(_) => match fallback {
                    Some(b) => b,
                    None => continue,
                },
            };
            if let Ok(est) = mc_region_volume(m, &cell.region, PROBE_SAMPLES, 0, bbox) {
                if est.hits == 0 {
                    out.push(diag(
                        Warning,
                        ZeroVolume,
                        format!("cell {}", cell.id),
                        format!("no probe point out of {PROBE_SAMPLES} fell inside the cell"),
                    ));
                }
            }
        }
    }

    out.sort_by_key(|d| std::cmp::Reverse(d.severity));
    out
}
