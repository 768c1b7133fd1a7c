//! Named color palette shared by surfaces, materials and the scene document.
//!
//! Every token maps to an RGB triple for the 3D viewer and to the ANGEL color
//! identifier PHITS uses when plotting. Tokens that ANGEL already knows map to
//! themselves; the remainder map to the closest ANGEL color.

use serde::Serialize;

use crate::suggest::nearest;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ColorEntry {
    pub name: &'static str,
    pub rgb: [f64; 3],
    pub angel_name: &'static str,
}

const fn entry(name: &'static str, rgb: [f64; 3], angel_name: &'static str) -> ColorEntry {
    ColorEntry {
        name,
        rgb,
        angel_name,
    }
}

/// The bundled palette, ordered roughly by hue.
pub const COLOR_TABLE: &[ColorEntry] = &[
    entry("white", [1.0, 1.0, 1.0], "white"),
    entry("lightgray", [0.827, 0.827, 0.827], "lightgray"),
    entry("gray", [0.5, 0.5, 0.5], "gray"),
    entry("darkgray", [0.33, 0.33, 0.33], "darkgray"),
    entry("matblack", [0.1, 0.1, 0.1], "matblack"),
    entry("black", [0.0, 0.0, 0.0], "black"),
    entry("darkred", [0.545, 0.0, 0.0], "darkred"),
    entry("red", [1.0, 0.0, 0.0], "red"),
    entry("pink", [1.0, 0.753, 0.796], "pink"),
    entry("pastelpink", [1.0, 0.82, 0.86], "pastelpink"),
    entry("orange", [1.0, 0.647, 0.0], "orange"),
    entry("brown", [0.647, 0.165, 0.165], "brown"),
    entry("darkbrown", [0.396, 0.263, 0.129], "darkbrown"),
    entry("pastelbrown", [0.514, 0.412, 0.325], "pastelbrown"),
    entry("orangeyellow", [1.0, 0.8, 0.0], "orangeyellow"),
    entry("camel", [0.757, 0.604, 0.420], "camel"),
    entry("pastelyellow", [0.992, 0.992, 0.588], "pastelyellow"),
    entry("yellow", [1.0, 1.0, 0.0], "yellow"),
    entry("pastelgreen", [0.467, 0.867, 0.467], "pastelgreen"),
    entry("yellowgreen", [0.604, 0.804, 0.196], "yellowgreen"),
    entry("green", [0.0, 0.502, 0.0], "green"),
    entry("darkgreen", [0.0, 0.392, 0.0], "darkgreen"),
    entry("mossgreen", [0.541, 0.604, 0.357], "mossgreen"),
    entry("bluegreen", [0.051, 0.596, 0.729], "bluegreen"),
    entry("pastelcyan", [0.588, 0.871, 0.82], "pastelcyan"),
    entry("pastelblue", [0.682, 0.776, 0.812], "pastelblue"),
    entry("cyan", [0.0, 1.0, 1.0], "cyan"),
    entry("cyanblue", [0.0, 0.718, 0.922], "cyanblue"),
    entry("blue", [0.0, 0.0, 1.0], "blue"),
    entry("violet", [0.933, 0.51, 0.933], "violet"),
    entry("purple", [0.502, 0.0, 0.502], "purple"),
    entry("magenta", [1.0, 0.0, 1.0], "magenta"),
    entry("winered", [0.447, 0.184, 0.216], "winered"),
    entry("pastelmagenta", [0.957, 0.604, 0.761], "pastelmagenta"),
    entry("pastelpurple", [0.702, 0.62, 0.71], "pastelpurple"),
    entry("pastelviolet", [0.796, 0.6, 0.788], "pastelviolet"),
    // Aliases for the common spellings people type.
    entry("grey", [0.5, 0.5, 0.5], "gray"),
    entry("lightgrey", [0.827, 0.827, 0.827], "lightgray"),
    entry("darkgrey", [0.33, 0.33, 0.33], "darkgray"),
];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("unknown color {name:?} (did you mean: {})", suggestions.join(", "))]
pub struct UnknownColor {
    pub name: String,
    pub suggestions: Vec<String>,
}

fn canonical(name: &str) -> String {
    name.trim().to_ascii_lowercase()
}

/// Looks up a color token, case-insensitively.
pub fn color_entry(name: &str) -> Result<&'static ColorEntry, UnknownColor> {
    let key = canonical(name);
    COLOR_TABLE
        .iter()
        .find(|e| e.name == key)
        .ok_or_else(|| UnknownColor {
            name: name.to_string(),
            suggestions: nearest(&key, COLOR_TABLE.iter().map(|e| e.name), 3),
        })
}

/// The ANGEL color identifier for a palette token.
pub fn angel_color(name: &str) -> Result<&'static str, UnknownColor> {
    color_entry(name).map(|e| e.angel_name)
}

/// Palette cycled through when a surface or material is created without an
/// explicit color.
pub const DEFAULT_PALETTE: &[&str] = &[
    "red",
    "orange",
    "yellow",
    "green",
    "cyan",
    "blue",
    "violet",
    "magenta",
    "pastelyellow",
    "pastelgreen",
    "pastelcyan",
    "pastelblue",
    "pastelviolet",
    "pastelmagenta",
    "gray",
    "brown",
];

pub fn default_color(index: usize) -> &'static str {
    DEFAULT_PALETTE[index % DEFAULT_PALETTE.len()]
}
