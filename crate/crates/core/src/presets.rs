//! Algebras and tables shipped with the tool.

use crate::io::{AlgebraFile, IoError};
use crate::poincare::PdAlgebra;

const ALGEBRAS: &[(&str, &str)] = &[
    ("point", include_str!("../presets/point.json")),
    ("s2", include_str!("../presets/s2.json")),
    ("s3", include_str!("../presets/s3.json")),
    ("s4", include_str!("../presets/s4.json")),
    ("s5", include_str!("../presets/s5.json")),
    ("cp2", include_str!("../presets/cp2.json")),
    ("s2xs3", include_str!("../presets/s2xs3.json")),
    ("s3xs4", include_str!("../presets/s3xs4.json")),
];

const TABLES: &[(&str, &str)] = &[("s2xs3_table", include_str!("../presets/s2xs3_table.json"))];

pub fn table_names() -> impl Iterator<Item = &'static str> {
    TABLES.iter().map(|(n, _)| *n)
}

pub fn table_source(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    TABLES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Reads a generator table from `arg`, falling back to a preset.
pub fn load_table(arg: &str) -> Result<crate::sullivan::TableFile, IoError> {
    let path = std::path::Path::new(arg);
    let text = match (path.exists(), table_source(arg)) {
        (false, Some(s)) => s.to_string(),
        _ => std::fs::read_to_string(path).map_err(|source| IoError::Read {
            path: arg.to_string(),
            source,
        })?,
    };
    crate::sullivan::TableFile::parse(&text)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    ALGEBRAS.iter().map(|(n, _)| *n)
}

/// Source text of a preset, by name with or without `.json`.
pub fn source(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    ALGEBRAS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn file(name: &str) -> Option<AlgebraFile> {
    source(name).map(|s| AlgebraFile::parse(s).expect("presets parse"))
}

pub fn pd(name: &str) -> Option<PdAlgebra> {
    file(name).map(|f| f.pd_algebra().expect("presets are Poincaré duality algebras"))
}

/// Reads `arg` as a path, falling back to a preset of that name.
pub fn load(arg: &str) -> Result<AlgebraFile, IoError> {
    let path = std::path::Path::new(arg);
    if path.exists() {
        return AlgebraFile::read(path);
    }
    match source(arg) {
        Some(s) => AlgebraFile::parse(s),
        None => AlgebraFile::read(path),
    }
}
