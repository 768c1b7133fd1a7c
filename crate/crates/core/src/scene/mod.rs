//! Scene documents: tessellated, colored surfaces for the 3D viewer.

pub mod color;

use std::fmt::Write;

use rayon::prelude::*;

use crate::cells::{CellMaterial, Model};
use crate::geometry::{tessellate, Aabb, GeometryError, Surface, TriMesh, Vec3};
use crate::phits::try_format_number;
use color::color_entry;

/// Scene document format version written by [`write_scene`].
pub const SCENE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct SceneLabel {
    pub text: String,
    pub anchor: Vec3,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SceneObject {
    pub surface_id: u32,
    pub name: String,
    pub rgb: [f64; 3],
    pub opacity: f64,
    pub mesh: TriMesh,
    pub label: Option<SceneLabel>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SceneDoc {
    pub version: u32,
    pub title: String,
    pub bbox: Aabb,
    pub objects: Vec<SceneObject>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SceneOptions {
    pub resolution: u32,
    pub labels: bool,
    pub opacity_override: Option<f64>,
}

impl Default for SceneOptions {
    fn default() -> Self {
        SceneOptions {
            resolution: 32,
            labels: false,
            opacity_override: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SceneError {
    #[error("the model has no surfaces to draw")]
    EmptyScene,
    #[error("opacity {0} outside [0, 1]")]
    InvalidOpacity(f64),
    #[error("surface {id}: {source}")]
    Geometry { id: u32, source: GeometryError },
}

/// Label anchor: the volume centroid, or for planes the point nearest the
/// origin.
pub fn label_anchor(s: &Surface) -> Vec3 {
    match s.kind().plane() {
        Some((n, d)) => n * (d / n.dot(n)),
        None => s.kind().centroid().expect("bounded kinds have a centroid"),
    }
}

/// Builds the scene: one object per surface in surface-id order.
///
/// Surfaces that only delimit the outer region (the world boundary) are
/// drawn without a label even when labels are on.
pub fn build_scene(m: &Model, opts: &SceneOptions) -> Result<SceneDoc, SceneError> {
    if m.surfaces.is_empty() {
        return Err(SceneError::EmptyScene);
    }
    if let Some(o) = opts.opacity_override {
        if !(0.0..=1.0).contains(&o) {
            return Err(SceneError::InvalidOpacity(o));
        }
    }
    let world: std::collections::BTreeSet<u32> = m
        .cells
        .iter()
        .filter(|c| c.material == CellMaterial::Outer)
        .flat_map(|c| c.region.surface_ids())
        .collect();
    let mut surfaces: Vec<&Surface> = m.surfaces.iter().collect();
    surfaces.sort_by_key(|s| s.id());

    let objects = surfaces
        .par_iter()
        .map(|s| {
            let mesh = tessellate(s, opts.resolution)
                .map_err(|source| SceneError::Geometry { id: s.id(), source })?;
            let rgb = color_entry(s.color()).map(|e| e.rgb).unwrap_or([0.5; 3]);
            let label = (opts.labels && !world.contains(&s.id())).then(|| SceneLabel {
                text: s.name().to_string(),
                anchor: label_anchor(s),
            });
            Ok(SceneObject {
                surface_id: s.id(),
                name: s.name().to_string(),
                rgb,
                opacity: opts.opacity_override.unwrap_or(s.opacity()),
                mesh,
                label,
            })
        })
        .collect::<Result<Vec<_>, SceneError>>()?;

    let bbox = objects
        .iter()
        .filter_map(|o| o.mesh.aabb())
        .reduce(|a, b| a.union(&b))
        .expect("meshes are nonempty");
    Ok(SceneDoc {
        version: SCENE_VERSION,
        title: m.title.clone(),
        bbox,
        objects,
    })
}

fn num(out: &mut String, v: f64) {
    out.push_str(&try_format_number(v).unwrap_or_else(|| "0".to_string()));
}

fn vec3(out: &mut String, v: Vec3) {
    out.push('[');
    for (i, c) in v.to_array().into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        num(out, c);
    }
    out.push(']');
}

fn string(out: &mut String, s: &str) {
    out.push_str(&serde_json::to_string(s).expect("strings serialize"));
}

/// Canonical JSON: fixed key order, objects sorted by surface id, numbers in
/// shortest round-trip form, one object per line.
pub fn write_scene(s: &SceneDoc) -> Vec<u8> {
    let mut objects: Vec<&SceneObject> = s.objects.iter().collect();
    objects.sort_by_key(|o| o.surface_id);

    let mut out = String::new();
    let _ = write!(out, "{{\"version\":{},\"title\":", s.version);
    string(&mut out, &s.title);
    out.push_str(",\"bbox\":{\"min\":");
    vec3(&mut out, s.bbox.min);
    out.push_str(",\"max\":");
    vec3(&mut out, s.bbox.max);
    out.push_str("},\"objects\":[");
    for (k, o) in objects.iter().enumerate() {
        out.push_str(if k == 0 { "\n" } else { ",\n" });
        let _ = write!(out, "{{\"surface_id\":{},\"name\":", o.surface_id);
        string(&mut out, &o.name);
        out.push_str(",\"rgb\":");
        vec3(&mut out, Vec3::new(o.rgb[0], o.rgb[1], o.rgb[2]));
        out.push_str(",\"opacity\":");
        num(&mut out, o.opacity);
        out.push_str(",\"mesh\":{\"vertices\":[");
        for (i, v) in o.mesh.vertices.iter().enumerate() {
            for (j, c) in v.to_array().into_iter().enumerate() {
                if i + j > 0 {
                    out.push(',');
                }
                num(&mut out, c);
            }
        }
        out.push_str("],\"triangles\":[");
        for (i, t) in o.mesh.triangles.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{},{},{}", t[0], t[1], t[2]);
        }
        out.push_str("]},\"label\":");
        match &o.label {
            Some(l) => {
                out.push_str("{\"text\":");
                string(&mut out, &l.text);
                out.push_str(",\"anchor\":");
                vec3(&mut out, l.anchor);
                out.push('}');
            }
            None => out.push_str("null"),
        }
        out.push('}');
    }
    out.push_str("\n]}\n");
    out.into_bytes()
}

#[cfg(test)]
mod tests;
