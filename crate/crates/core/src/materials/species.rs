use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Element symbols indexed by atomic number minus one.
pub const ELEMENT_SYMBOLS: [&str; 118] = [
    "H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne", "Na", "Mg", "Al", "Si", "P", "S", "Cl",
    "Ar", "K", "Ca", "Sc", "Ti", "V", "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As",
    "Se", "Br", "Kr", "Rb", "Sr", "Y", "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd", "In",
    "Sn", "Sb", "Te", "I", "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd", "Pm", "Sm", "Eu", "Gd", "Tb",
    "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf", "Ta", "W", "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl",
    "Pb", "Bi", "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U", "Np", "Pu", "Am", "Cm", "Bk",
    "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs", "Mt", "Ds", "Rg", "Cn", "Nh",
    "Fl", "Mc", "Lv", "Ts", "Og",
];

/// A material component: a natural element or a specific nuclide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Species {
    /// Natural element by atomic number.
    Element(u8),
    /// Nuclide as a `ZZZAAA` code (`Z * 1000 + A`).
    Nuclide(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad species {0:?}: expected an element symbol or a ZZZAAA nuclide code")]
pub struct BadSpecies(pub String);

impl Species {
    pub fn atomic_number(self) -> u8 {
        match self {
            Species::Element(z) => z,
            Species::Nuclide(code) => (code / 1000) as u8,
        }
    }
}

impl FromStr for Species {
    type Err = BadSpecies;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BadSpecies(s.to_string());
        if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) {
            let code: u32 = s.parse().map_err(|_| bad())?;
            let (z, a) = (code / 1000, code % 1000);
            // A = 0 is the MCNP spelling of the natural element
            if (1..=118).contains(&z) && (a == 0 || a >= z) {
                return Ok(Species::Nuclide(code));
            }
            return Err(bad());
        }
        ELEMENT_SYMBOLS
            .iter()
            .position(|sym| *sym == s)
            .map(|i| Species::Element(i as u8 + 1))
            .ok_or_else(bad)
    }
}

impl fmt::Display for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Species::Element(z) => f.write_str(ELEMENT_SYMBOLS[z as usize - 1]),
            Species::Nuclide(code) => write!(f, "{code}"),
        }
    }
}

impl TryFrom<String> for Species {
    type Error = BadSpecies;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Species> for String {
    fn from(s: Species) -> String {
        s.to_string()
    }
}
