use std::collections::BTreeMap;

use crate::cells::Model;

const RATIO_REL_TOL: f64 = 1e-12;

fn close(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= RATIO_REL_TOL * a.abs().max(b.abs())
}

/// Differences between two models that survive a deck round trip.
///
/// Colors and opacities are not part of deck text and are ignored. Surfaces,
/// materials and cells are matched by id; numbers must be equal except
/// material ratios, which are compared with a relative tolerance of 1e-12.
/// An empty result means the models are equivalent.
pub fn semantic_diff(a: &Model, b: &Model) -> Vec<String> {
    let mut out = Vec::new();
    if a.title.trim() != b.title.trim() {
        out.push(format!("title: {:?} vs {:?}", a.title, b.title));
    }

    let sa: BTreeMap<_, _> = a.surfaces.iter().map(|s| (s.id(), s)).collect();
    let sb: BTreeMap<_, _> = b.surfaces.iter().map(|s| (s.id(), s)).collect();
    if a.surfaces.len() != b.surfaces.len() {
        out.push(format!(
            "surface count: {} vs {}",
            a.surfaces.len(),
            b.surfaces.len()
        ));
    }
    for (id, x) in &sa {
        match sb.get(id) {
            None => out.push(format!("surface {id}: missing on the right")),
            Some(y) => {
                if x.name() != y.name() {
                    out.push(format!(
                        "surface {id}: name {:?} vs {:?}",
                        x.name(),
                        y.name()
                    ));
                }
                if x.kind() != y.kind() {
                    out.push(format!("surface {id}: {:?} vs {:?}", x.kind(), y.kind()));
                }
            }
        }
    }
    for id in sb.keys().filter(|id| !sa.contains_key(id)) {
        out.push(format!("surface {id}: missing on the left"));
    }

    let ma: BTreeMap<_, _> = a.materials.iter().map(|m| (m.id, m)).collect();
    let mb: BTreeMap<_, _> = b.materials.iter().map(|m| (m.id, m)).collect();
    for (id, x) in &ma {
        let Some(y) = mb.get(id) else {
            out.push(format!("material {id}: missing on the right"));
            continue;
        };
        if x.name != y.name {
            out.push(format!("material {id}: name {:?} vs {:?}", x.name, y.name));
        }
        if x.density != y.density {
            out.push(format!(
                "material {id}: density {} vs {}",
                x.density, y.density
            ));
        }
        if x.ratio_mode != y.ratio_mode {
            out.push(format!(
                "material {id}: {:?} vs {:?} ratios",
                x.ratio_mode, y.ratio_mode
            ));
        }
        if x.gas != y.gas {
            out.push(format!("material {id}: gas {} vs {}", x.gas, y.gas));
        }
        let ca: BTreeMap<_, _> = x.composition.iter().copied().collect();
        let cb: BTreeMap<_, _> = y.composition.iter().copied().collect();
        if ca.len() != cb.len() || ca.keys().ne(cb.keys()) {
            out.push(format!(
                "material {id}: species {:?} vs {:?}",
                ca.keys().map(|s| s.to_string()).collect::<Vec<_>>(),
                cb.keys().map(|s| s.to_string()).collect::<Vec<_>>()
            ));
        } else {
            for ((s, ra), rb) in ca.iter().zip(cb.values()) {
                if !close(*ra, *rb) {
                    out.push(format!("material {id}: {s} ratio {ra} vs {rb}"));
                }
            }
        }
    }
    for id in mb.keys().filter(|id| !ma.contains_key(id)) {
        out.push(format!("material {id}: missing on the left"));
    }

    let ca: BTreeMap<_, _> = a.cells.iter().map(|c| (c.id, c)).collect();
    let cb: BTreeMap<_, _> = b.cells.iter().map(|c| (c.id, c)).collect();
    for (id, x) in &ca {
        let Some(y) = cb.get(id) else {
            out.push(format!("cell {id}: missing on the right"));
            continue;
        };
        if x.name != y.name {
            out.push(format!("cell {id}: name {:?} vs {:?}", x.name, y.name));
        }
        if x.material != y.material {
            out.push(format!(
                "cell {id}: material {:?} vs {:?}",
                x.material, y.material
            ));
        }
        let (da, db) = (a.effective_density(x), b.effective_density(y));
        if da != db {
            out.push(format!("cell {id}: density {da:?} vs {db:?}"));
        }
        let (ra, rb) = (x.region.normalized(), y.region.normalized());
        if ra != rb {
            out.push(format!("cell {id}: region {ra} vs {rb}"));
        }
        if x.volume_hint != y.volume_hint {
            out.push(format!(
                "cell {id}: volume {:?} vs {:?}",
                x.volume_hint, y.volume_hint
            ));
        }
    }
    for id in cb.keys().filter(|id| !ca.contains_key(id)) {
        out.push(format!("cell {id}: missing on the left"));
    }
    out
}
