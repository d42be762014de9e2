//! Reading inputs, and the exit-code split between bad input and negative answers.

use std::fmt;
use std::path::Path;

use cdp_core::enumerate::{ClassificationResult, Enumeration};
use cdp_core::equiv::Normalized;
use cdp_core::fano::FanoCertificate;
use cdp_core::fixtures::{named_cdp, named_polytope};
use cdp_core::lattice::LatticePolytope;
use cdp_core::{Cdp, CdpJson};
use serde::de::DeserializeOwned;
use serde::Serialize;

#[derive(Debug)]
pub enum Failure {
    /// Exit code 1: the input is fine but the answer is no.
    Negative(String),
    /// Exit code 2.
    Input(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Negative(_) => 1,
            Failure::Input(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Negative(m) | Failure::Input(m) => f.write_str(m),
        }
    }
}

pub type Outcome<T = ()> = Result<T, Failure>;

pub fn input_err(e: impl fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

/// Anything the command line reads or writes.
pub enum Document {
    Cdp(CdpJson),
    Polytope(LatticePolytope),
    Certificate(FanoCertificate),
    Normalized(Normalized),
    Classification(ClassificationResult),
    Enumeration(Enumeration),
}

pub struct Source {
    pub label: String,
    pub text: String,
}

/// A file path, `-` for stdin, or the name of a bundled fixture (with or
/// without directory and `.json`).
pub fn read_source(arg: &str) -> Outcome<Source> {
    if arg == "-" {
        let text = std::io::read_to_string(std::io::stdin()).map_err(input_err)?;
        return Ok(Source { label: "<stdin>".into(), text });
    }
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{arg}: {e}")))?;
        return Ok(Source { label: arg.into(), text });
    }
    let stem = path.file_name().and_then(|s| s.to_str()).unwrap_or(arg);
    let stem = stem.trim_end_matches(".json").trim_end_matches(".polytope").trim_end_matches(".cdp");
    if let Some(c) = named_cdp(stem) {
        let c = c.map_err(input_err)?;
        return Ok(Source { label: format!("fixture {stem}"), text: serde_json::to_string(&c.to_json()).unwrap() });
    }
    if let Some(p) = named_polytope(stem) {
        let p = p.map_err(input_err)?;
        return Ok(Source { label: format!("fixture {stem}"), text: serde_json::to_string(&p).unwrap() });
    }
    Err(Failure::Input(format!("{arg}: no such file or bundled fixture")))
}

fn parse<T: DeserializeOwned>(src: &Source) -> Outcome<T> {
    serde_json::from_str(&src.text).map_err(|e| {
        if e.is_data() {
            Failure::Input(format!("{}: {e}", src.label))
        } else {
            Failure::Input(format!("{}:{}:{}: {e}", src.label, e.line(), e.column()))
        }
    })
}

pub fn read_document(arg: &str) -> Outcome<Document> {
    let src = read_source(arg)?;
    let value: serde_json::Value = parse(&src)?;
    let has = |k: &str| value.get(k).is_some();
    Ok(if has("classes") && has("breakdown") {
        Document::Classification(parse(&src)?)
    } else if has("classes") {
        Document::Enumeration(parse(&src)?)
    } else if has("moves") {
        Document::Normalized(parse(&src)?)
    } else if has("origin") && has("a") {
        Document::Certificate(parse(&src)?)
    } else if has("functions") {
        Document::Cdp(parse(&src)?)
    } else if has("vertices") {
        Document::Polytope(parse(&src)?)
    } else {
        return Err(Failure::Input(format!("{}: not a CDP, polytope, certificate or class list", src.label)));
    })
}

pub fn read_cdp(arg: &str) -> Outcome<Cdp> {
    match read_document(arg)? {
        Document::Cdp(raw) => Cdp::from_json(&raw).map_err(|e| Failure::Input(format!("{arg}: {e}"))),
        Document::Normalized(n) => Ok(n.cdp),
        _ => Err(Failure::Input(format!("{arg}: expected a CDP"))),
    }
}

/// A polytope, or the base of a CDP.
pub fn read_polytope(arg: &str) -> Outcome<LatticePolytope> {
    match read_document(arg)? {
        Document::Polytope(p) => Ok(p),
        Document::Cdp(raw) => Ok(raw.base),
        _ => Err(Failure::Input(format!("{arg}: expected a polytope"))),
    }
}

pub fn read_certificate(arg: &str) -> Outcome<FanoCertificate> {
    match read_document(arg)? {
        Document::Certificate(c) => Ok(c),
        _ => Err(Failure::Input(format!("{arg}: expected a certificate"))),
    }
}

pub fn print_json<T: Serialize>(x: &T) {
    println!("{}", serde_json::to_string_pretty(x).expect("serializable"));
}
