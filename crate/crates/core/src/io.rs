//! JSON documents and DOT export.
//!
//! Every document may carry `"schema": "proxlat/1"`. Inputs:
//!
//! * lattice: `{"elements": [..], "leq": [[a, b], ..]}`
//! * proximity lattice: `{"lattice": <lattice>, "R": [[a, b], ..]}`; a
//!   missing `R` means the lattice order
//! * morphism: `{"source": <proximity or fixture name>, "target": .., "T": [..]}`
//! * space: `{"points": [..], "opens": [[..], ..]}`
//!
//! Outputs are built as `serde_json::Value`, whose maps are sorted, so
//! serialisation is deterministic.

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::lattice::{lattice_from_order, FiniteLattice};
use crate::relation::Relation;
use crate::spectra::FiniteSpace;

pub const SCHEMA: &str = "proxlat/1";

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeDoc {
    #[serde(default)]
    schema: Option<String>,
    elements: Vec<String>,
    #[serde(default)]
    leq: Vec<(String, String)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProximityDoc {
    #[serde(default)]
    schema: Option<String>,
    lattice: LatticeDoc,
    #[serde(rename = "R", default)]
    relation: Option<Vec<(String, String)>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ProximityRef {
    Fixture(String),
    Inline(ProximityDoc),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismDoc {
    #[serde(default)]
    schema: Option<String>,
    source: ProximityRef,
    target: ProximityRef,
    #[serde(rename = "T")]
    relation: Vec<(String, String)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceDoc {
    #[serde(default)]
    schema: Option<String>,
    points: Vec<String>,
    opens: Vec<Vec<String>>,
}

/// A lattice with a relation that has not yet been checked against the
/// axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawProximity {
    pub lattice: FiniteLattice,
    pub relation: Relation,
}

#[derive(Clone, Debug)]
pub enum Document {
    Lattice(FiniteLattice),
    Proximity(RawProximity),
    Morphism {
        source: RawProximity,
        target: RawProximity,
        relation: Relation,
    },
    Space(FiniteSpace),
}

fn check_schema(schema: &Option<String>) -> Result<()> {
    match schema {
        Some(s) if s != SCHEMA => Err(Error::Parse(format!("unsupported schema `{s}`, expected `{SCHEMA}`"))),
        _ => Ok(()),
    }
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn build_lattice(doc: LatticeDoc) -> Result<FiniteLattice> {
    check_schema(&doc.schema)?;
    lattice_from_order(&doc.elements, &doc.leq)
}

fn relation_from_names(
    source: &FiniteLattice,
    target: &FiniteLattice,
    pairs: &[(String, String)],
) -> Result<Relation> {
    let index = |l: &FiniteLattice, s: &str| l.index_of(s).ok_or_else(|| Error::UnknownElement(s.to_string()));
    let pairs = pairs
        .iter()
        .map(|(a, b)| Ok((index(source, a)?, index(target, b)?)))
        .collect::<Result<Vec<_>>>()?;
    Relation::from_pairs(source.len(), target.len(), pairs)
}

fn build_proximity(doc: ProximityDoc) -> Result<RawProximity> {
    check_schema(&doc.schema)?;
    let lattice = build_lattice(doc.lattice)?;
    let relation = match doc.relation {
        Some(pairs) => relation_from_names(&lattice, &lattice, &pairs)?,
        None => order_relation(&lattice),
    };
    Ok(RawProximity { lattice, relation })
}

fn resolve(r: ProximityRef) -> Result<RawProximity> {
    match r {
        ProximityRef::Inline(doc) => build_proximity(doc),
        ProximityRef::Fixture(name) => {
            let text = fixtures::source(&name).ok_or_else(|| Error::Parse(format!("unknown fixture `{name}`")))?;
            match parse_document(text)? {
                Document::Proximity(p) => Ok(p),
                Document::Lattice(l) => Ok(RawProximity {
                    relation: order_relation(&l),
                    lattice: l,
                }),
                _ => Err(Error::Parse(format!("fixture `{name}` is not a proximity lattice"))),
            }
        }
    }
}

pub fn order_relation(l: &FiniteLattice) -> Relation {
    Relation::from_fn(l.len(), l.len(), |a, b| l.leq(a, b))
}

/// Parses any input document, detecting its kind from the top-level keys.
pub fn parse_document(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text).map_err(parse_err)?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("top level must be a JSON object".into()))?;
    if obj.contains_key("T") {
        let doc: MorphismDoc = serde_json::from_value(value).map_err(parse_err)?;
        check_schema(&doc.schema)?;
        let source = resolve(doc.source)?;
        let target = resolve(doc.target)?;
        let relation = relation_from_names(&source.lattice, &target.lattice, &doc.relation)?;
        Ok(Document::Morphism {
            source,
            target,
            relation,
        })
    } else if obj.contains_key("lattice") {
        let doc: ProximityDoc = serde_json::from_value(value).map_err(parse_err)?;
        Ok(Document::Proximity(build_proximity(doc)?))
    } else if obj.contains_key("points") {
        let doc: SpaceDoc = serde_json::from_value(value).map_err(parse_err)?;
        check_schema(&doc.schema)?;
        Ok(Document::Space(FiniteSpace::from_names(&doc.points, &doc.opens)?))
    } else if obj.contains_key("elements") {
        let doc: LatticeDoc = serde_json::from_value(value).map_err(parse_err)?;
        Ok(Document::Lattice(build_lattice(doc)?))
    } else {
        Err(Error::Parse(
            "cannot tell the document kind: expected one of the keys T, lattice, points, elements".into(),
        ))
    }
}

// ---- output ----

pub fn names_of(names: &[String], set: Bits) -> Value {
    Value::Array(set.iter().map(|i| Value::String(names[i].clone())).collect())
}

pub fn lattice_json(l: &FiniteLattice) -> Value {
    let covers: Vec<Value> = l
        .covers()
        .into_iter()
        .map(|(a, b)| json!([l.name(a), l.name(b)]))
        .collect();
    json!({
        "elements": l.names(),
        "leq": covers,
    })
}

pub fn relation_json(r: &Relation, source: &[String], target: &[String]) -> Value {
    Value::Array(
        r.pairs()
            .map(|(a, b)| json!([source[a], target[b]]))
            .collect(),
    )
}

pub fn proximity_json(lattice: &FiniteLattice, relation: &Relation) -> Value {
    json!({
        "schema": SCHEMA,
        "lattice": lattice_json(lattice),
        "R": relation_json(relation, lattice.names(), lattice.names()),
    })
}

pub fn space_json(s: &FiniteSpace) -> Value {
    json!({
        "schema": SCHEMA,
        "points": s.points(),
        "opens": s.opens().iter().map(|u| names_of(s.points(), *u)).collect::<Vec<_>>(),
    })
}

/// Adds the schema tag to an object.
pub fn tagged(mut value: Value) -> Value {
    if let Value::Object(map) = &mut value {
        map.insert("schema".into(), Value::String(SCHEMA.into()));
    }
    value
}

pub fn object(entries: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in entries {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

/// Pretty JSON with a trailing newline.
pub fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialise");
    s.push('\n');
    s
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram; elements in `highlight` are drawn filled.
pub fn lattice_dot(l: &FiniteLattice, name: &str, highlight: Bits) -> String {
    let mut out = format!("digraph \"{}\" {{\n  rankdir=BT;\n  node [shape=ellipse];\n", dot_escape(name));
    for a in l.elements() {
        let style = if highlight.contains(a) { ", style=filled, fillcolor=lightgrey" } else { "" };
        out.push_str(&format!("  n{a} [label=\"{}\"{style}];\n", dot_escape(l.name(a))));
    }
    for (a, b) in l.covers() {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}

/// Specialization order of a space, covers only.
pub fn space_dot(s: &FiniteSpace, name: &str) -> String {
    let up = s.specialization();
    let mut out = format!("digraph \"{}\" {{\n  rankdir=BT;\n", dot_escape(name));
    for (x, p) in s.points().iter().enumerate() {
        out.push_str(&format!("  n{x} [label=\"{}\"];\n", dot_escape(p)));
    }
    for x in 0..s.len() {
        for y in up[x].iter().filter(|&y| y != x) {
            let covered = up[x]
                .iter()
                .all(|z| z == x || z == y || !up[z].contains(y));
            if covered {
                out.push_str(&format!("  n{x} -> n{y};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_document_kinds() {
        assert!(matches!(parse_document(r#"{"elements":["0"],"leq":[]}"#), Ok(Document::Lattice(_))));
        assert!(matches!(
            parse_document(r#"{"points":["x"],"opens":[[],["x"]]}"#),
            Ok(Document::Space(_))
        ));
        let m = r#"{"source":"C2","target":"C2","T":[["0","0"],["1","0"],["1","1"]]}"#;
        assert!(matches!(parse_document(m), Ok(Document::Morphism { .. })));
    }

    #[test]
    fn missing_relation_means_order() {
        let d = parse_document(r#"{"lattice":{"elements":["0","1"],"leq":[["0","1"]]}}"#).unwrap();
        let Document::Proximity(p) = d else { panic!() };
        assert_eq!(p.relation, order_relation(&p.lattice));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_document("[1]"), Err(Error::Parse(_))));
        assert!(matches!(parse_document("{"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_document(r#"{"schema":"other/2","elements":["0"]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_document(r#"{"elements":["0"],"leq":[["0","q"]]}"#),
            Err(Error::UnknownElement(_))
        ));
    }

    #[test]
    fn lattice_json_round_trips() {
        for name in ["C2", "C3", "B2", "M3"] {
            let l = fixtures::lattice(name).unwrap();
            let text = render(&lattice_json(&l));
            let Document::Lattice(back) = parse_document(&text).unwrap() else { panic!() };
            assert_eq!(back, l);
        }
    }

    #[test]
    fn dot_has_one_edge_per_cover() {
        let l = fixtures::lattice("M3").unwrap();
        let dot = lattice_dot(&l, "M3", Bits::empty());
        assert_eq!(dot.matches("->").count(), 6);
    }
}
