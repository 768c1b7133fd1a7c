use std::collections::HashMap;

use rayon::prelude::*;

use super::{CellError, Model, RegionExpr, Sign};
use crate::geometry::{Aabb, SurfaceKind, Vec3};
use crate::rng::CounterRng;

/// A region with its surface references resolved, ready for fast repeated
/// point queries.
#[derive(Debug, Clone)]
pub enum CompiledRegion<'a> {
    Leaf(&'a SurfaceKind, Sign),
    And(Vec<CompiledRegion<'a>>),
    Or(Vec<CompiledRegion<'a>>),
    Not(Box<CompiledRegion<'a>>),
}

impl<'a> CompiledRegion<'a> {
    pub fn compile(model: &'a Model, region: &RegionExpr) -> Result<Self, CellError> {
        let index: HashMap<u32, &SurfaceKind> = model
            .surfaces
            .iter()
            .map(|s| (s.id(), s.kind()))
            .rev()
            .collect();
        Self::build(&index, region)
    }

    fn build(index: &HashMap<u32, &'a SurfaceKind>, e: &RegionExpr) -> Result<Self, CellError> {
        Ok(match e {
            RegionExpr::Sense { surface_id, sign } => CompiledRegion::Leaf(
                index
                    .get(surface_id)
                    .copied()
                    .ok_or(CellError::UnknownSurface(*surface_id))?,
                *sign,
            ),
            RegionExpr::Intersection(ts) => CompiledRegion::And(
                ts.iter()
                    .map(|t| Self::build(index, t))
                    .collect::<Result<_, _>>()?,
            ),
            RegionExpr::Union(ts) => CompiledRegion::Or(
                ts.iter()
                    .map(|t| Self::build(index, t))
                    .collect::<Result<_, _>>()?,
            ),
            RegionExpr::Complement(inner) => {
                CompiledRegion::Not(Box::new(Self::build(index, inner)?))
            }
        })
    }

    /// Membership of `p`. A point exactly on a surface counts as being on
    /// its positive side.
    pub fn contains(&self, p: Vec3) -> bool {
        match self {
            CompiledRegion::Leaf(kind, sign) => {
                let inside = kind.implicit(p) < 0.0;
                match sign {
                    Sign::Neg => inside,
                    Sign::Pos => !inside,
                }
            }
            CompiledRegion::And(ts) => ts.iter().all(|t| t.contains(p)),
            CompiledRegion::Or(ts) => ts.iter().any(|t| t.contains(p)),
            CompiledRegion::Not(inner) => !inner.contains(p),
        }
    }
}

/// Whether `p` lies in cell `cell_id`.
pub fn cell_contains(m: &Model, cell_id: u32, p: Vec3) -> Result<bool, CellError> {
    let cell = m.cell(cell_id).ok_or(CellError::UnknownCell(cell_id))?;
    Ok(CompiledRegion::compile(m, &cell.region)?.contains(p))
}

/// Result of a Monte Carlo volume estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeEstimate {
    /// cm3
    pub estimate: f64,
    /// One binomial standard error, cm3.
    pub std_error: f64,
    pub hits: u64,
    pub samples: u64,
    pub seed: u64,
    pub sampling_box: Aabb,
}

/// Sampling box used when none is given: the union of the bounding boxes of
/// every surface the region references.
pub fn default_sampling_box(m: &Model, region: &RegionExpr) -> Result<Aabb, CellError> {
    let mut bbox: Option<Aabb> = None;
    for id in region.surface_ids() {
        let s = m.surface(id).ok_or(CellError::UnknownSurface(id))?;
        let b = s
            .kind()
            .aabb()
            .map_err(|_| CellError::UnboundedRegionNeedsBox(id))?;
        bbox = Some(bbox.map_or(b, |acc| acc.union(&b)));
    }
    // regions always reference at least one surface
    bbox.ok_or(CellError::UnboundedRegionNeedsBox(0))
}

/// Rejection-sampling volume of a region inside `bbox`.
///
/// Sample `i` depends only on `(seed, i)`, and hits are summed as integers,
/// so the result is bit-identical for any thread count.
pub fn mc_region_volume(
    m: &Model,
    region: &RegionExpr,
    n: u64,
    seed: u64,
    bbox: Aabb,
) -> Result<VolumeEstimate, CellError> {
    if n == 0 {
        return Err(CellError::ZeroSamples);
    }
    let compiled = CompiledRegion::compile(m, region)?;
    let rng = CounterRng::new(seed);
    let extent = bbox.extent();
    const BLOCK: u64 = 4096;
    let hits: u64 = (0..n.div_ceil(BLOCK))
        .into_par_iter()
        .map(|b| {
            (b * BLOCK..((b + 1) * BLOCK).min(n))
                .filter(|&i| {
                    let [u, v, w] = rng.unit_cube(i);
                    compiled.contains(bbox.min + extent.mul_elem(Vec3::new(u, v, w)))
                })
                .count() as u64
        })
        .sum();
    let vol = bbox.volume();
    let frac = hits as f64 / n as f64;
    Ok(VolumeEstimate {
        estimate: vol * frac,
        std_error: vol * (frac * (1.0 - frac) / n as f64).sqrt(),
        hits,
        samples: n,
        seed,
        sampling_box: bbox,
    })
}

/// Monte Carlo volume of cell `cell_id`; `bbox` defaults to
/// [`default_sampling_box`].
pub fn mc_cell_volume(
    m: &Model,
    cell_id: u32,
    n: u64,
    seed: u64,
    bbox: Option<Aabb>,
) -> Result<VolumeEstimate, CellError> {
    let cell = m.cell(cell_id).ok_or(CellError::UnknownCell(cell_id))?;
    if n == 0 {
        return Err(CellError::ZeroSamples);
    }
    let bbox = match bbox {
        Some(b) => b,
        None => default_sampling_box(m, &cell.region)?,
    };
    mc_region_volume(m, &cell.region, n, seed, bbox)
}
