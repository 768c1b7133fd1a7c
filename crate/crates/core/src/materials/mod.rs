//! Material definitions and the predefined material database.

mod db;
mod species;

use serde::{Deserialize, Serialize};

pub use db::{
    db_load, material_from_db, normalize_name, MaterialDb, MaterialDbError, MaterialEntry,
    BUNDLED_DB, MATERIAL_PATH_ENV,
};
pub use species::{BadSpecies, Species, ELEMENT_SYMBOLS};

use crate::scene::color::{color_entry, UnknownColor};

/// How the component ratios of a material are to be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RatioMode {
    Atom,
    Mass,
}

impl std::str::FromStr for RatioMode {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s.trim().to_ascii_lowercase().as_str() {
            "atom" => Ok(RatioMode::Atom),
            "mass" => Ok(RatioMode::Mass),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MaterialError {
    #[error("invalid material id {0}: ids start at 1 (0 is reserved for void)")]
    InvalidId(u32),
    #[error("invalid density {0}: must be a positive number of g/cm3")]
    InvalidDensity(f64),
    #[error("material composition is empty")]
    EmptyComposition,
    #[error("invalid ratio {ratio} for {species}: ratios must be positive")]
    InvalidRatio { species: String, ratio: f64 },
    #[error(transparent)]
    BadSpecies(#[from] BadSpecies),
    #[error(transparent)]
    UnknownColor(#[from] UnknownColor),
    #[error("material name must be nonempty printable text")]
    EmptyName,
    #[error("material {name:?} not found (nearest: {})", suggestions.join(", "))]
    NotFound {
        name: String,
        suggestions: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Material {
    pub id: u32,
    pub name: String,
    /// Mass density, g/cm3.
    pub density: f64,
    pub composition: Vec<(Species, f64)>,
    pub ratio_mode: RatioMode,
    pub gas: bool,
    pub color: String,
}

/// Builds a validated material. Species are given as text (`"H"`, `"92235"`).
pub fn define_material<S: AsRef<str>>(
    id: u32,
    name: &str,
    density: f64,
    composition: &[(S, f64)],
    ratio_mode: RatioMode,
    gas: bool,
    color: &str,
) -> Result<Material, MaterialError> {
    let composition = composition
        .iter()
        .map(|(s, r)| Ok((s.as_ref().trim().parse::<Species>()?, *r)))
        .collect::<Result<Vec<_>, MaterialError>>()?;
    Material::new(id, name, density, composition, ratio_mode, gas, color)
}

impl Material {
    pub fn new(
        id: u32,
        name: &str,
        density: f64,
        composition: Vec<(Species, f64)>,
        ratio_mode: RatioMode,
        gas: bool,
        color: &str,
    ) -> Result<Material, MaterialError> {
        if id < 1 {
            return Err(MaterialError::InvalidId(id));
        }
        let name = name.trim();
        if name.is_empty() || name.chars().any(char::is_control) {
            return Err(MaterialError::EmptyName);
        }
        if !(density.is_finite() && density > 0.0) {
            return Err(MaterialError::InvalidDensity(density));
        }
        if composition.is_empty() {
            return Err(MaterialError::EmptyComposition);
        }
        if let Some((s, r)) = composition
            .iter()
            .find(|(_, r)| !(r.is_finite() && *r > 0.0))
        {
            return Err(MaterialError::InvalidRatio {
                species: s.to_string(),
                ratio: *r,
            });
        }
        let color = color_entry(color)?.name.to_string();
        Ok(Material {
            id,
            name: name.to_string(),
            density,
            composition,
            ratio_mode,
            gas,
            color,
        })
    }

    /// Component ratios normalized to sum to one, in composition order.
    pub fn fractions(&self) -> Vec<(Species, f64)> {
        let total: f64 = self.composition.iter().map(|(_, r)| r).sum();
        self.composition
            .iter()
            .map(|&(s, r)| (s, r / total))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn water_is_valid() {
        let m = define_material(
            1,
            "water",
            1.0,
            &[("H", 2.0), ("O", 1.0)],
            RatioMode::Atom,
            false,
            "blue",
        )
        .unwrap();
        assert_eq!(m.composition[0], (Species::Element(1), 2.0));
        let f = m.fractions();
        assert!((f[0].1 - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_inputs() {
        let comp = [("H", 2.0), ("O", 1.0)];
        assert_eq!(
            define_material(1, "water", -1.0, &comp, RatioMode::Atom, false, "blue").unwrap_err(),
            MaterialError::InvalidDensity(-1.0)
        );
        assert!(matches!(
            define_material(1, "x", 1.0, &[("Xx", 1.0)], RatioMode::Atom, false, "blue"),
            Err(MaterialError::BadSpecies(_))
        ));
        assert_eq!(
            define_material::<&str>(1, "x", 1.0, &[], RatioMode::Atom, false, "blue").unwrap_err(),
            MaterialError::EmptyComposition
        );
        assert!(matches!(
            define_material(1, "x", 1.0, &[("H", 0.0)], RatioMode::Atom, false, "blue"),
            Err(MaterialError::InvalidRatio { .. })
        ));
        assert_eq!(
            define_material(0, "x", 1.0, &comp, RatioMode::Atom, false, "blue").unwrap_err(),
            MaterialError::InvalidId(0)
        );
        assert!(matches!(
            define_material(1, "x", 1.0, &comp, RatioMode::Atom, false, "nocolor"),
            Err(MaterialError::UnknownColor(_))
        ));
    }
}
