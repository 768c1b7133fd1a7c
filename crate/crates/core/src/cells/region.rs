use std::collections::BTreeSet;
use std::fmt;
use std::ops::{BitAnd, BitOr, Neg, Not};

use crate::geometry::Surface;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    /// Interior side (`-id`).
    Neg,
    /// Exterior side (`+id`, printed unsigned).
    Pos,
}

/// Boolean combination of surface senses.
#[derive(Debug, Clone, PartialEq)]
pub enum RegionExpr {
    Sense { surface_id: u32, sign: Sign },
    Intersection(Vec<RegionExpr>),
    Union(Vec<RegionExpr>),
    Complement(Box<RegionExpr>),
}

pub fn sense_neg(s: &Surface) -> RegionExpr {
    RegionExpr::neg(s.id())
}

pub fn sense_pos(s: &Surface) -> RegionExpr {
    RegionExpr::pos(s.id())
}

impl RegionExpr {
    pub fn neg(surface_id: u32) -> Self {
        RegionExpr::Sense {
            surface_id,
            sign: Sign::Neg,
        }
    }

    pub fn pos(surface_id: u32) -> Self {
        RegionExpr::Sense {
            surface_id,
            sign: Sign::Pos,
        }
    }

    /// Intersection of `terms`, flattened. Panics on an empty list.
    pub fn all<I: IntoIterator<Item = RegionExpr>>(terms: I) -> Self {
        Self::join(terms, true)
    }

    /// Union of `terms`, flattened. Panics on an empty list.
    pub fn any<I: IntoIterator<Item = RegionExpr>>(terms: I) -> Self {
        Self::join(terms, false)
    }

    fn join<I: IntoIterator<Item = RegionExpr>>(terms: I, intersect: bool) -> Self {
        let mut flat = Vec::new();
        for t in terms {
            match (t, intersect) {
                (RegionExpr::Intersection(ts), true) | (RegionExpr::Union(ts), false) => {
                    flat.extend(ts)
                }
                (t, _) => flat.push(t),
            }
        }
        assert!(!flat.is_empty(), "region term list must be nonempty");
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else if intersect {
            RegionExpr::Intersection(flat)
        } else {
            RegionExpr::Union(flat)
        }
    }

    pub fn complement(self) -> Self {
        RegionExpr::Complement(Box::new(self))
    }

    /// Canonical structure: nested same-operator nodes flattened and
    /// single-term lists unwrapped.
    pub fn normalized(&self) -> RegionExpr {
        match self {
            RegionExpr::Sense { .. } => self.clone(),
            RegionExpr::Intersection(ts) => Self::all(ts.iter().map(Self::normalized)),
            RegionExpr::Union(ts) => Self::any(ts.iter().map(Self::normalized)),
            RegionExpr::Complement(inner) => inner.normalized().complement(),
        }
    }

    /// Every surface id referenced, sorted.
    pub fn surface_ids(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_ids(&mut out);
        out
    }

    fn collect_ids(&self, out: &mut BTreeSet<u32>) {
        match self {
            RegionExpr::Sense { surface_id, .. } => {
                out.insert(*surface_id);
            }
            RegionExpr::Intersection(ts) | RegionExpr::Union(ts) => {
                ts.iter().for_each(|t| t.collect_ids(out))
            }
            RegionExpr::Complement(inner) => inner.collect_ids(out),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            RegionExpr::Sense { .. } => 1,
            RegionExpr::Intersection(ts) | RegionExpr::Union(ts) => {
                1 + ts.iter().map(Self::depth).max().unwrap_or(0)
            }
            RegionExpr::Complement(inner) => 1 + inner.depth(),
        }
    }

    /// Replaces every surface id through `f`.
    pub fn map_ids(&self, f: &impl Fn(u32) -> u32) -> RegionExpr {
        match self {
            RegionExpr::Sense { surface_id, sign } => RegionExpr::Sense {
                surface_id: f(*surface_id),
                sign: *sign,
            },
            RegionExpr::Intersection(ts) => {
                RegionExpr::Intersection(ts.iter().map(|t| t.map_ids(f)).collect())
            }
            RegionExpr::Union(ts) => RegionExpr::Union(ts.iter().map(|t| t.map_ids(f)).collect()),
            RegionExpr::Complement(inner) => inner.map_ids(f).complement(),
        }
    }

    /// Prints with surfaces referred to by `label(id)`. Positive senses are
    /// written without a sign, unions are parenthesized inside intersections
    /// and complements always wrap their operand in parentheses.
    pub fn to_text_with(&self, label: &impl Fn(u32) -> String) -> String {
        let mut out = String::new();
        self.write(&mut out, label, false);
        out
    }

    fn write(&self, out: &mut String, label: &impl Fn(u32) -> String, in_intersection: bool) {
        match self {
            RegionExpr::Sense { surface_id, sign } => {
                if *sign == Sign::Neg {
                    out.push('-');
                }
                out.push_str(&label(*surface_id));
            }
            RegionExpr::Intersection(ts) => {
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    t.write(out, label, true);
                }
            }
            RegionExpr::Union(ts) => {
                if in_intersection {
                    out.push('(');
                }
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        out.push_str(" : ");
                    }
                    t.write(out, label, false);
                }
                if in_intersection {
                    out.push(')');
                }
            }
            RegionExpr::Complement(inner) => {
                out.push_str("#(");
                inner.write(out, label, false);
                out.push(')');
            }
        }
    }
}

/// Canonical text with numeric surface ids.
pub fn region_to_text(e: &RegionExpr) -> String {
    e.to_text_with(&|id| id.to_string())
}

impl fmt::Display for RegionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&region_to_text(self))
    }
}

/// `-&surface`: the interior of a surface.
impl Neg for &Surface {
    type Output = RegionExpr;
    fn neg(self) -> RegionExpr {
        sense_neg(self)
    }
}

impl Not for RegionExpr {
    type Output = RegionExpr;
    fn not(self) -> RegionExpr {
        self.complement()
    }
}

impl BitAnd for RegionExpr {
    type Output = RegionExpr;
    fn bitand(self, rhs: RegionExpr) -> RegionExpr {
        RegionExpr::all([self, rhs])
    }
}

impl BitOr for RegionExpr {
    type Output = RegionExpr;
    fn bitor(self, rhs: RegionExpr) -> RegionExpr {
        RegionExpr::any([self, rhs])
    }
}
