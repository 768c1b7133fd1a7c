use super::{CellError, RegionExpr};
use crate::geometry::{Aabb, Surface};
use crate::materials::Material;

/// What fills a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellMaterial {
    /// Vacuum, material number 0.
    Void,
    /// The region outside the model where transport stops, material number -1.
    Outer,
    /// A material by id.
    Ref(u32),
}

impl CellMaterial {
    /// PHITS material number.
    pub fn number(self) -> i64 {
        match self {
            CellMaterial::Void => 0,
            CellMaterial::Outer => -1,
            CellMaterial::Ref(id) => id as i64,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub id: u32,
    pub name: String,
    pub region: RegionExpr,
    pub material: CellMaterial,
    /// Mass density in g/cm3 replacing the material's own.
    pub density_override: Option<f64>,
    /// Volume in cm3 handed to the transport code.
    pub volume_hint: Option<f64>,
}

impl Cell {
    pub fn new(
        id: u32,
        name: &str,
        region: RegionExpr,
        material: CellMaterial,
    ) -> Result<Cell, CellError> {
        if id < 1 {
            return Err(CellError::InvalidId(id));
        }
        let name = name.trim();
        if name.is_empty() || name.chars().any(char::is_control) {
            return Err(CellError::InvalidName(name.to_string()));
        }
        Ok(Cell {
            id,
            name: name.to_string(),
            region,
            material,
            density_override: None,
            volume_hint: None,
        })
    }

    pub fn with_density(mut self, density: f64) -> Result<Cell, CellError> {
        if self.material == CellMaterial::Outer {
            return Err(CellError::OuterWithDensity(self.id));
        }
        if !(density.is_finite() && density > 0.0) {
            return Err(CellError::InvalidDensity(self.id, density));
        }
        self.density_override = Some(density);
        Ok(self)
    }

    pub fn with_volume(mut self, volume: f64) -> Result<Cell, CellError> {
        if !(volume.is_finite() && volume > 0.0) {
            return Err(CellError::InvalidVolume(self.id, volume));
        }
        self.volume_hint = Some(volume);
        Ok(self)
    }
}

/// A complete geometry: surfaces, materials and cells in definition order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Model {
    pub title: String,
    pub surfaces: Vec<Surface>,
    pub materials: Vec<Material>,
    pub cells: Vec<Cell>,
}

impl Model {
    pub fn new(title: impl Into<String>) -> Self {
        Model {
            title: title.into(),
            ..Default::default()
        }
    }

    pub fn surface(&self, id: u32) -> Option<&Surface> {
        self.surfaces.iter().find(|s| s.id() == id)
    }

    pub fn surface_by_name(&self, name: &str) -> Option<&Surface> {
        self.surfaces.iter().find(|s| s.name() == name)
    }

    pub fn material(&self, id: u32) -> Option<&Material> {
        self.materials.iter().find(|m| m.id == id)
    }

    pub fn cell(&self, id: u32) -> Option<&Cell> {
        self.cells.iter().find(|c| c.id == id)
    }

    /// Density actually assigned to a cell: the override, else the
    /// material's. `None` for void/outer cells and dangling references.
    pub fn effective_density(&self, cell: &Cell) -> Option<f64> {
        match cell.material {
            CellMaterial::Ref(id) => cell
                .density_override
                .or_else(|| self.material(id).map(|m| m.density)),
            _ => None,
        }
    }

    /// Union of the bounding boxes of every bounded surface.
    pub fn bounded_aabb(&self) -> Option<Aabb> {
        self.surfaces
            .iter()
            .filter_map(|s| s.kind().aabb().ok())
            .reduce(|a, b| a.union(&b))
    }
}
