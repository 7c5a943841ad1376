//! The `proxlat` command line, as a library so tests can drive it in-process.
//!
//! Every verb writes JSON (or DOT for `export-dot`) to stdout or `--out`.
//! Exit status is 0 when every checked property holds, 1 when one fails and
//! 2 when the input cannot be read or parsed. Failures are reported on
//! stderr as a JSON diagnostic.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use proxlat::canext::{pi_extension, sigma_extension, CanonicalExtension};
use proxlat::io::{
    lattice_dot, lattice_json, names_of, object, parse_document, proximity_json, render, space_dot,
    space_json, tagged, Document, RawProximity, SCHEMA,
};
use proxlat::morphext::{check_preservation, compare_with_dual, extend};
use proxlat::proximity::{verify_axioms, verify_morphism, ProximityMorphism};
use proxlat::spectra::{canext_via_duality, presentation_round_trip, spectrum, FiniteSpace};
use proxlat::{fixtures, Bits, Error, FiniteLattice, ProximityLattice};

#[derive(Parser, Debug)]
#[command(name = "proxlat", version, about = "Finite proximity lattices and their canonical extensions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Report the axioms of a proximity lattice or the class of a morphism.
    Check {
        /// File path or bundled fixture name.
        input: String,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the π-extension (and the σ-extension with --sigma).
    Canext {
        /// File path or bundled fixture name.
        input: String,
        /// Also build the σ-extension.
        #[arg(long)]
        sigma: bool,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the Hasse diagram(s) as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Extend a morphism to the π-extensions and check what it preserves.
    Extend {
        /// File path or bundled fixture name.
        input: String,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The space of prime round filters.
    Spectrum {
        /// File path or bundled fixture name.
        input: String,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Co-compact dual of a space, or opposite of a (proximity) lattice.
    Dualize {
        /// File path or bundled fixture name.
        input: String,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the canonical extension against the spectrum (proximity
    /// lattice) or the presentation round trip (space).
    Roundtrip {
        /// File path or bundled fixture name.
        input: String,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hasse diagram of a lattice, or specialization order of a space.
    ExportDot {
        /// File path or bundled fixture name.
        input: String,
        /// Write the DOT text here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// What a run printed and its exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String, String),
    Property(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::EmptyCarrier
            | Error::TooLarge(_)
            | Error::UnknownElement(_)
            | Error::DuplicateElement(_)
            | Error::NotAPartialOrder(_)
            | Error::NotALattice { .. }
            | Error::DimensionMismatch(_)
            | Error::InvalidSpace(_) => Failure::Input(error_kind(&e).into(), e.to_string()),
            other => Failure::Property(other),
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::EmptyCarrier => "empty_carrier",
        Error::TooLarge(_) => "too_large",
        Error::UnknownElement(_) => "unknown_element",
        Error::DuplicateElement(_) => "duplicate_element",
        Error::NotAPartialOrder(_) => "not_a_partial_order",
        Error::NotALattice { .. } => "not_a_lattice",
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::AxiomsViolated(_) => "axioms_violated",
        Error::NotJoinStrong => "not_join_strong",
        Error::NotMeetStrong => "not_meet_strong",
        Error::NotDoublyStrong => "not_doubly_strong",
        Error::NotDistributive => "not_distributive",
        Error::NotAProximityMorphism => "not_a_proximity_morphism",
        Error::NotAJMorphism => "not_a_j_morphism",
        Error::NotAnMMorphism => "not_an_m_morphism",
        Error::KindMismatch { .. } => "kind_mismatch",
        Error::NotAnExtension(_) => "not_an_extension",
        Error::MalformedTranspose(_) => "malformed_transpose",
        Error::InvalidRoundSubset(_) => "invalid_round_subset",
        Error::NotT0 => "not_t0",
        Error::InvalidSpace(_) => "invalid_space",
        Error::NotARetraction => "not_a_retraction",
        Error::InvariantViolated(_) => "invariant_violated",
        Error::Parse(_) => "parse",
    }
}

fn diagnostic(kind: &str, message: &str, details: Option<Value>) -> String {
    let mut v = json!({
        "schema": SCHEMA,
        "status": "error",
        "error": { "kind": kind, "message": message },
    });
    if let Some(d) = details {
        v["error"]["details"] = d;
    }
    render(&v)
}

/// Runs the command line given by `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if status == 0 {
                Outcome { status, stdout: text, stderr: String::new() }
            } else {
                Outcome { status, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli.command) {
        Ok(out) => out,
        Err(Failure::Input(kind, message)) => Outcome {
            status: 2,
            stdout: String::new(),
            stderr: diagnostic(&kind, &message, None),
        },
        Err(Failure::Property(e)) => {
            let details = match &e {
                Error::AxiomsViolated(report) => Some(serde_json::to_value(report).expect("serialisable")),
                _ => None,
            };
            Outcome {
                status: 1,
                stdout: String::new(),
                stderr: diagnostic(error_kind(&e), &e.to_string(), details),
            }
        }
    }
}

fn read_input(input: &str) -> Result<Document, Failure> {
    let path = Path::new(input);
    let text = if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| Failure::Input("io".into(), format!("{input}: {e}")))?
    } else if let Some(text) = fixtures::source(input) {
        text.to_string()
    } else {
        return Err(Failure::Input(
            "io".into(),
            format!("`{input}` is neither a readable file nor a bundled fixture"),
        ));
    };
    Ok(parse_document(&text)?)
}

fn proximity_of(raw: RawProximity) -> Result<ProximityLattice, Failure> {
    Ok(ProximityLattice::new(raw.lattice, raw.relation)?)
}

fn expect_proximity(doc: Document) -> Result<ProximityLattice, Failure> {
    match doc {
        Document::Proximity(raw) => proximity_of(raw),
        Document::Lattice(l) => Ok(ProximityLattice::from_order(l)),
        _ => Err(Failure::Input("wrong_document".into(), "expected a proximity lattice".into())),
    }
}

fn emit(out: &Option<PathBuf>, text: String, status: i32) -> Result<Outcome, Failure> {
    match out {
        Some(path) => {
            write_file(path, &text)?;
            Ok(Outcome { status, stdout: String::new(), stderr: String::new() })
        }
        None => Ok(Outcome { status, stdout: text, stderr: String::new() }),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Input("io".into(), format!("{}: {e}", path.display())))
}

fn status_of(ok: bool) -> (i32, &'static str) {
    if ok {
        (0, "ok")
    } else {
        (1, "fail")
    }
}

/// A JSON value with each witness carrying the names of its elements.
fn named_witnesses(mut value: Value, names: &[String]) -> Value {
    if let Some(ws) = value.get_mut("witnesses").and_then(Value::as_array_mut) {
        for w in ws {
            let named: Vec<Value> = w["elements"]
                .as_array()
                .map(|es| {
                    es.iter()
                        .map(|e| e.as_u64().and_then(|i| names.get(i as usize)).map_or(Value::Null, |n| json!(n)))
                        .collect()
                })
                .unwrap_or_default();
            w["element_names"] = Value::Array(named);
        }
    }
    value
}

fn execute(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Check { input, out } => check(input, out),
        Command::Canext { input, sigma, out, dot } => canext(input, *sigma, out, dot),
        Command::Extend { input, out } => extend_cmd(input, out),
        Command::Spectrum { input, out } => spectrum_cmd(input, out),
        Command::Dualize { input, out } => dualize(input, out),
        Command::Roundtrip { input, out } => roundtrip(input, out),
        Command::ExportDot { input, out } => export_dot(input, out),
    }
}

fn check(input: &str, out: &Option<PathBuf>) -> Result<Outcome, Failure> {
    match read_input(input)? {
        Document::Morphism { source, target, relation } => {
            let (src, tgt) = (proximity_of(source)?, proximity_of(target)?);
            let report = verify_morphism(&src, &tgt, &relation)?;
            let (status, label) = status_of(report.proximity && report.characterizations_agree());
            let v = tagged(object(vec![
                ("kind", json!("morphism")),
                ("status", json!(label)),
                ("class", serde_json::to_value(report.class()).expect("serialisable")),
                ("report", serde_json::to_value(&report).expect("serialisable")),
            ]));
            emit(out, render(&v), status)
        }
        Document::Proximity(raw) => {
            let report = verify_axioms(&raw.lattice, &raw.relation);
            let (status, label) = status_of(report.axioms_ok());
            let value = named_witnesses(serde_json::to_value(&report).expect("serialisable"), raw.lattice.names());
            let v = tagged(object(vec![
                ("kind", json!("proximity")),
                ("status", json!(label)),
                ("report", value),
            ]));
            emit(out, render(&v), status)
        }
        Document::Lattice(l) => {
            let v = tagged(object(vec![
                ("kind", json!("lattice")),
                ("status", json!("ok")),
                ("elements", json!(l.len())),
                ("distributive", json!(l.is_distributive())),
            ]));
            emit(out, render(&v), 0)
        }
        Document::Space(s) => {
            let v = tagged(object(vec![
                ("kind", json!("space")),
                ("status", json!("ok")),
                ("points", json!(s.len())),
                ("t0", json!(s.is_t0())),
            ]));
            emit(out, render(&v), 0)
        }
    }
}

fn table(from: &[String], to: &FiniteLattice, values: &[usize]) -> Value {
    object(from.iter().zip(values).map(|(k, &v)| (k.as_str(), json!(to.name(v)))).collect())
}

fn extension_json(e: &CanonicalExtension) -> Value {
    let c = &e.lattice;
    let report = e.report();
    object(vec![
        ("kind", json!(e.kind.name())),
        ("lattice", lattice_json(c)),
        (
            "sets",
            object(
                c.elements()
                    .map(|u| (c.name(u), names_of(&e.polarity.x_names, e.sets[u])))
                    .collect(),
            ),
        ),
        ("f", table(&e.polarity.x_names, c, &e.f)),
        ("g", table(&e.polarity.y_names, c, &e.g)),
        ("embed", table(e.source.lattice().names(), c, &e.embed)),
        ("report", serde_json::to_value(&report).expect("serialisable")),
    ])
}

fn extension_dot(e: &CanonicalExtension, name: &str) -> String {
    let highlight: Bits = e.embed.iter().copied().collect();
    lattice_dot(&e.lattice, name, highlight)
}

fn canext(input: &str, sigma: bool, out: &Option<PathBuf>, dot: &Option<PathBuf>) -> Result<Outcome, Failure> {
    let p = expect_proximity(read_input(input)?)?;
    let pi = pi_extension(&p)?;
    let mut ok = pi.report().is_pi();
    let mut entries = vec![("pi", extension_json(&pi))];
    let mut dots = extension_dot(&pi, "pi");
    if sigma {
        let s = sigma_extension(&p)?;
        ok &= s.report().is_sigma();
        entries.push(("sigma", extension_json(&s)));
        dots.push_str(&extension_dot(&s, "sigma"));
    }
    let (status, label) = status_of(ok);
    entries.push(("status", json!(label)));
    if let Some(path) = dot {
        write_file(path, &dots)?;
    }
    emit(out, render(&tagged(object(entries))), status)
}

fn extend_cmd(input: &str, out: &Option<PathBuf>) -> Result<Outcome, Failure> {
    let Document::Morphism { source, target, relation } = read_input(input)? else {
        return Err(Failure::Input("wrong_document".into(), "expected a morphism".into()));
    };
    let t = ProximityMorphism::classify(proximity_of(source)?, proximity_of(target)?, relation)?;
    let m = extend(&t)?;
    let report = check_preservation(&m);
    let dual = if t.class.j && t.source.is_distributive() && t.target.is_distributive() {
        Some(compare_with_dual(&m)?)
    } else {
        None
    };
    let (c, d) = (&m.source.lattice, &m.target.lattice);
    let ok = report.proved_properties_hold() && dual.as_ref().is_none_or(|x| x.agrees());
    let (status, label) = status_of(ok);
    let v = tagged(object(vec![
        ("status", json!(label)),
        ("class", serde_json::to_value(t.class).expect("serialisable")),
        ("source", lattice_json(c)),
        ("target", lattice_json(d)),
        ("table", table(c.names(), d, &m.table)),
        (
            "ideal_elements",
            Value::Array(m.ideal_elements.iter().map(|&y| json!(c.name(y))).collect()),
        ),
        ("preservation", named_witnesses(serde_json::to_value(&report).expect("serialisable"), c.names())),
        (
            "dual_comparison",
            match &dual {
                Some(x) => json!({
                    "agrees": x.agrees(),
                    "checked": x.checked,
                    "discrepancies": x.discrepancies.iter().map(|&u| c.name(u)).collect::<Vec<_>>(),
                }),
                None => Value::Null,
            },
        ),
    ]));
    emit(out, render(&v), status)
}

fn spectrum_cmd(input: &str, out: &Option<PathBuf>) -> Result<Outcome, Failure> {
    let p = expect_proximity(read_input(input)?)?;
    let s = spectrum(&p)?;
    let l = p.lattice();
    let points = s.space.points();
    let v = object(vec![
        ("space", space_json(&s.space)),
        (
            "point_filters",
            object(points.iter().zip(&s.point_filters).map(|(x, f)| (x.as_str(), names_of(l.names(), *f))).collect()),
        ),
        (
            "basic_open",
            object(l.elements().map(|d| (l.name(d), names_of(points, s.basic_open[d]))).collect()),
        ),
        ("status", json!("ok")),
    ]);
    emit(out, render(&tagged(v)), 0)
}

fn dualize(input: &str, out: &Option<PathBuf>) -> Result<Outcome, Failure> {
    let v = match read_input(input)? {
        Document::Space(s) => space_json(&s.co_compact_dual()),
        Document::Proximity(raw) => {
            let p = proximity_of(raw)?.opposite();
            proximity_json(p.lattice(), p.relation())
        }
        Document::Lattice(l) => tagged(lattice_json(&l.opposite())),
        Document::Morphism { .. } => {
            return Err(Failure::Input("wrong_document".into(), "cannot dualize a morphism".into()))
        }
    };
    emit(out, render(&v), 0)
}

fn check_entry(name: &str, pass: bool, detail: Value) -> Value {
    json!({ "name": name, "pass": pass, "detail": detail })
}

fn roundtrip(input: &str, out: &Option<PathBuf>) -> Result<Outcome, Failure> {
    let checks = match read_input(input)? {
        Document::Space(s) => space_roundtrip(&s)?,
        doc => {
            let p = expect_proximity(doc)?;
            let d = canext_via_duality(&p)?;
            let report = serde_json::to_value(&d.report).expect("serialisable");
            let iso = d.isomorphism.as_ref().map(|m| table(m.source.names(), &m.target, &m.table));
            vec![
                check_entry("saturated_sets_form_pi_extension", d.report.is_pi(), report),
                check_entry("isomorphic_to_polarity_extension", d.isomorphism.is_some(), iso.unwrap_or(Value::Null)),
            ]
        }
    };
    let pass = checks.iter().all(|c| c["pass"] == json!(true));
    let v = tagged(object(vec![
        ("result", json!(if pass { "PASS" } else { "FAIL" })),
        ("checks", Value::Array(checks)),
    ]));
    emit(out, render(&v), if pass { 0 } else { 1 })
}

fn space_roundtrip(s: &FiniteSpace) -> Result<Vec<Value>, Failure> {
    let homeo = presentation_round_trip(s)?;
    let dual = s.co_compact_dual();
    let back = dual.co_compact_dual();
    Ok(vec![
        check_entry(
            "spectrum_of_open_basis_presentation",
            homeo.is_some(),
            homeo.map(|h| json!(h.iter().map(|&x| s.points()[x].clone()).collect::<Vec<_>>())).unwrap_or(Value::Null),
        ),
        check_entry("co_compact_dual_involution", back == *s, space_json(&dual)),
    ])
}

fn export_dot(input: &str, out: &Option<PathBuf>) -> Result<Outcome, Failure> {
    let name = Path::new(input)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| input.to_string());
    let text = match read_input(input)? {
        Document::Lattice(l) => lattice_dot(&l, &name, Bits::empty()),
        Document::Proximity(raw) => {
            // reflexive elements drawn filled
            let highlight = raw.lattice.elements().filter(|&a| raw.relation.contains(a, a)).collect();
            lattice_dot(&raw.lattice, &name, highlight)
        }
        Document::Space(s) => space_dot(&s, &name),
        Document::Morphism { .. } => {
            return Err(Failure::Input("wrong_document".into(), "export-dot takes a lattice or a space".into()))
        }
    };
    emit(out, text, 0)
}
