//! The bundled fixture corpus, also available on disk under `fixtures/`.
//!
//! Proximity lattices: `C2`, `C3` (0 < a < 1), `B2`, `M3` with the lattice
//! order as relation; `FULL2` (C2 with every pair related); `C3R` (C3 with
//! `x R y` iff `x = 0` or `y = 1`). Spaces: `point`, `sierpinski` (opens
//! ∅, {x}, {x, y}), `discrete2`, `empty`.

use crate::error::{Error, Result};
use crate::io::{parse_document, Document, RawProximity};
use crate::lattice::FiniteLattice;
use crate::proximity::ProximityLattice;
use crate::spectra::FiniteSpace;

pub const PROXIMITY: [&str; 6] = ["C2", "C3", "B2", "M3", "FULL2", "C3R"];
pub const SPACES: [&str; 4] = ["point", "sierpinski", "discrete2", "empty"];

const SOURCES: [(&str, &str); 10] = [
    ("C2", include_str!("../fixtures/C2.json")),
    ("C3", include_str!("../fixtures/C3.json")),
    ("B2", include_str!("../fixtures/B2.json")),
    ("M3", include_str!("../fixtures/M3.json")),
    ("FULL2", include_str!("../fixtures/FULL2.json")),
    ("C3R", include_str!("../fixtures/C3R.json")),
    ("point", include_str!("../fixtures/point.json")),
    ("sierpinski", include_str!("../fixtures/sierpinski.json")),
    ("discrete2", include_str!("../fixtures/discrete2.json")),
    ("empty", include_str!("../fixtures/empty.json")),
];

/// Raw JSON text of a fixture.
pub fn source(name: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

fn unknown(name: &str) -> Error {
    Error::Parse(format!("unknown fixture `{name}`"))
}

pub fn raw_proximity(name: &str) -> Result<RawProximity> {
    match parse_document(source(name).ok_or_else(|| unknown(name))?)? {
        Document::Proximity(p) => Ok(p),
        _ => Err(unknown(name)),
    }
}

pub fn proximity(name: &str) -> Result<ProximityLattice> {
    let raw = raw_proximity(name)?;
    ProximityLattice::new(raw.lattice, raw.relation)
}

/// Underlying lattice of a proximity fixture.
pub fn lattice(name: &str) -> Result<FiniteLattice> {
    Ok(raw_proximity(name)?.lattice)
}

pub fn space(name: &str) -> Result<FiniteSpace> {
    match parse_document(source(name).ok_or_else(|| unknown(name))?)? {
        Document::Space(s) => Ok(s),
        _ => Err(unknown(name)),
    }
}

pub fn all_proximity() -> Vec<(&'static str, ProximityLattice)> {
    PROXIMITY
        .iter()
        .map(|&n| (n, proximity(n).expect("bundled fixture")))
        .collect()
}

pub fn all_spaces() -> Vec<(&'static str, FiniteSpace)> {
    SPACES.iter().map(|&n| (n, space(n).expect("bundled fixture"))).collect()
}
