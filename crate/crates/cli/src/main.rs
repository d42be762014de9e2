mod io;
mod render;

use std::process::ExitCode;

use cdp_core::enumerate::{
    classify_2d, enumerate_fixed_base, ClassifyOptions, EnumerationError, EnumerationOptions, Strategy,
};
use cdp_core::equiv::{canonical_code, equivalent, is_toric, normalize};
use cdp_core::fano::{
    c_of_box, cdp_to_polytope, certificate_at, cross_example, directional_bound, find_certificate, polytope_to_cdp,
    verify_certificate,
};
use cdp_core::fixtures;
use cdp_core::lattice::{find_orth_basis, LatticePolytope, LatticeVector, OrthBasis};
use cdp_core::Cdp;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::io::{input_err, print_json, read_cdp, read_certificate, read_document, read_polytope, Document, Failure, Outcome};

#[derive(Parser)]
#[command(name = "cdp", version, about = "Combinatorial divisorial polytopes: Fano certificates, equivalence, enumeration")]
struct Cli {
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum TextOrJson {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Drawing {
    Ascii,
    Tikz,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file is a well-formed CDP (or any other document this tool writes).
    Validate { file: String },
    /// Search for a Fano certificate, or check a given one.
    Fano {
        file: String,
        /// Try only this origin, as comma-separated integers.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        origin: Option<Vec<i64>>,
        /// Verify this certificate instead of searching.
        #[arg(long)]
        certificate: Option<String>,
    },
    /// Normalize a Fano CDP and print the moves used.
    Normalize { file: String },
    /// Print the canonical code of a Fano CDP.
    Canon {
        file: String,
        #[arg(long, value_enum, default_value = "text")]
        format: TextOrJson,
    },
    /// Decide whether two Fano CDPs are equivalent.
    Equiv { a: String, b: String },
    /// Polytope to two-function CDP, or back.
    Convert { file: String },
    /// Directional radii and the function bound of a base.
    Bounds {
        file: String,
        #[arg(long, value_enum, default_value = "text")]
        format: TextOrJson,
    },
    /// All normalized non-toric Fano CDPs over a base with n functions.
    Enumerate {
        /// Segment endpoints `a,b`, or a polytope or CDP file.
        #[arg(long, allow_hyphen_values = true)]
        base: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10_000_000)]
        max_nodes: u64,
        /// Use the lattice-point search on any base.
        #[arg(long)]
        generic: bool,
    },
    /// The 34 two-dimensional non-toric Fano CDPs.
    #[command(name = "classify-2d")]
    Classify2d {
        #[arg(long, default_value_t = 10_000_000)]
        max_nodes: u64,
        /// Search with the bounds alone.
        #[arg(long)]
        no_pruning: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: TextOrJson,
    },
    /// Print a built-in CDP: `cross` (with --dim) or a fixture name; `list` shows the names.
    Example {
        name: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    /// Draw a CDP over a segment.
    Render {
        file: String,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Drawing,
    },
}

fn run(cli: Cli) -> Outcome {
    if let Some(k) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global().map_err(input_err)?;
    }
    match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Fano { file, origin, certificate } => fano(&file, origin, certificate),
        Command::Normalize { file } => {
            let c = read_cdp(&file)?;
            let cert = certify(&c)?;
            print_json(&normalize(&c, &cert).map_err(input_err)?);
            Ok(())
        }
        Command::Canon { file, format } => {
            let c = read_cdp(&file)?;
            let cert = certify(&c)?;
            let code = canonical_code(&c, &cert).map_err(input_err)?;
            match format {
                TextOrJson::Text => println!("{code}"),
                TextOrJson::Json => print_json(&json!({ "code": code, "certificate": cert })),
            }
            Ok(())
        }
        Command::Equiv { a, b } => {
            let (ca, cb) = (read_cdp(&a)?, read_cdp(&b)?);
            certify(&ca)?;
            certify(&cb)?;
            if equivalent(&ca, &cb).map_err(input_err)? {
                println!("equivalent");
                Ok(())
            } else {
                println!("not equivalent");
                Err(Failure::Negative(String::new()))
            }
        }
        Command::Convert { file } => match read_document(&file)? {
            Document::Polytope(p) => {
                print_json(&polytope_to_cdp(&p).map_err(input_err)?);
                Ok(())
            }
            Document::Cdp(raw) => {
                let c = Cdp::from_json(&raw).map_err(input_err)?;
                print_json(&cdp_to_polytope(&c).map_err(input_err)?);
                Ok(())
            }
            _ => Err(Failure::Input(format!("{file}: expected a polytope or a CDP"))),
        },
        Command::Bounds { file, format } => bounds(&file, format),
        Command::Enumerate { base, n, max_nodes, generic } => {
            let base = parse_base(&base)?;
            let opts = EnumerationOptions {
                max_nodes,
                strategy: if generic { Strategy::Generic } else { Strategy::Auto },
                pruning: None,
            };
            match enumerate_fixed_base(&base, n, &opts) {
                Ok(e) => {
                    print_json(&e);
                    eprintln!("{} classes, {} nodes", e.classes.len(), e.nodes);
                    Ok(())
                }
                Err(EnumerationError::Cdp(e)) => Err(input_err(e)),
                Err(e) => Err(Failure::Negative(e.to_string())),
            }
        }
        Command::Classify2d { max_nodes, no_pruning, format } => {
            let opts = ClassifyOptions { max_nodes, pruning: !no_pruning, ..Default::default() };
            let r = classify_2d(&opts).map_err(|e| Failure::Negative(e.to_string()))?;
            if format == TextOrJson::Json {
                print_json(&r);
                return Ok(());
            }
            println!("{:>3} {:>3}  functions", "m", "n");
            for c in &r.classes {
                let fs: Vec<String> = c.cdp.functions().iter().map(render::breakpoints).collect();
                println!("{:>3} {:>3}  {}", c.m, c.n, fs.join(" | "));
            }
            for (cell, count) in &r.breakdown {
                println!("(m,n) = ({cell}): {count}");
            }
            println!("{} classes", r.classes.len());
            Ok(())
        }
        Command::Example { name, dim } => {
            if name == "cross" {
                let (c, _) = cross_example(dim).map_err(input_err)?;
                print_json(&c);
            } else if name == "list" {
                for n in fixtures::names() {
                    println!("{n}");
                }
            } else if let Some(c) = fixtures::named_cdp(&name) {
                print_json(&c.map_err(input_err)?);
            } else if let Some(p) = fixtures::named_polytope(&name) {
                print_json(&p.map_err(input_err)?);
            } else {
                return Err(Failure::Input(format!("no example named {name}; try `cdp example list`")));
            }
            Ok(())
        }
        Command::Render { file, format } => {
            let c = read_cdp(&file)?;
            if c.dim() != 1 {
                return Err(Failure::Input("only CDPs over a segment can be drawn".into()));
            }
            let out = match format {
                Drawing::Ascii => render::ascii(&c),
                Drawing::Tikz => render::tikz(&c),
                Drawing::Svg => render::svg(&c),
            };
            print!("{out}");
            Ok(())
        }
    }
}

fn certify(c: &Cdp) -> Outcome<cdp_core::fano::FanoCertificate> {
    find_certificate(c).map_err(|e| {
        Failure::Negative(format!("not Fano (condition {}): {}", e.condition().number(), serde_json::to_string(&e).unwrap()))
    })
}

fn validate(file: &str) -> Outcome {
    match read_document(file)? {
        Document::Cdp(raw) => {
            let c = Cdp::from_json(&raw).map_err(|e| Failure::Negative(format!("invalid: {e}")))?;
            println!("valid CDP: {} functions over a {}-dimensional base", c.n(), c.dim());
        }
        Document::Polytope(p) => println!("valid polytope: {} vertices in dimension {}", p.vertices().len(), p.dim()),
        Document::Certificate(c) => println!("certificate at origin {:?} with shifts {:?}", c.origin.0, c.a),
        Document::Normalized(n) => {
            verify_certificate(&n.cdp, &n.certificate).map_err(|e| Failure::Negative(e.to_string()))?;
            println!("normalized CDP with {} functions, {} recorded moves", n.cdp.n(), n.moves.len());
        }
        Document::Classification(r) => {
            for c in &r.classes {
                let code = canonical_code(&c.cdp, &c.certificate).map_err(|e| Failure::Negative(e.to_string()))?;
                if code != c.code {
                    return Err(Failure::Negative(format!("stored code {} does not match {code}", c.code)));
                }
            }
            println!("{} classes, codes verified", r.classes.len());
        }
        Document::Enumeration(e) => {
            for c in &e.classes {
                if canonical_code(&c.cdp, &c.certificate).map_err(|e| Failure::Negative(e.to_string()))? != c.code {
                    return Err(Failure::Negative(format!("stored code {} does not match", c.code)));
                }
            }
            println!("{} classes, codes verified", e.classes.len());
        }
    }
    Ok(())
}

fn fano(file: &str, origin: Option<Vec<i64>>, certificate: Option<String>) -> Outcome {
    let c = read_cdp(file)?;
    let cert = if let Some(path) = certificate {
        let cert = read_certificate(&path)?;
        verify_certificate(&c, &cert).map_err(|e| Failure::Negative(format!("certificate rejected: {e}")))?;
        cert
    } else if let Some(o) = origin {
        certificate_at(&c, &LatticeVector(o))
            .map_err(|e| Failure::Negative(format!("not Fano at this origin: {}", serde_json::to_string(&e).unwrap())))?
    } else {
        certify(&c)?
    };
    print_json(&cert);
    Ok(())
}

fn parse_base(arg: &str) -> Outcome<LatticePolytope> {
    let ends: Option<Vec<i64>> = arg.split(',').map(|s| s.trim().parse().ok()).collect();
    match ends.as_deref() {
        Some([a, b]) => LatticePolytope::interval(*a, *b).map_err(input_err),
        _ => read_polytope(arg),
    }
}

fn bounds(file: &str, format: TextOrJson) -> Outcome {
    let (base, cdp) = match read_document(file)? {
        Document::Polytope(p) => (p, None),
        Document::Cdp(raw) => {
            let c = Cdp::from_json(&raw).map_err(input_err)?;
            (c.base().as_ref().clone(), Some(c))
        }
        _ => return Err(Failure::Input(format!("{file}: expected a polytope or a CDP"))),
    };
    let d = base.dim();
    let mut bases = vec![("standard".to_string(), (0..d).map(|k| LatticeVector::unit(d, k)).collect::<Vec<_>>())];
    if d == 2 {
        if let Ok(OrthBasis::Basis { e1, e2, .. }) = find_orth_basis(&base) {
            bases.push(("adapted".into(), vec![e1, e2]));
        }
    }
    let mut report = Vec::new();
    for (name, basis) in &bases {
        let alphas = basis.iter().map(|v| base.alpha_v(v).map_err(input_err)).collect::<Outcome<Vec<_>>>()?;
        let c = c_of_box(&base, basis).map_err(input_err)?;
        report.push(json!({ "basis": name, "vectors": basis, "alpha": alphas, "c": c }));
    }
    let mut directional = Vec::new();
    if let Some(c) = &cdp {
        if let Ok(cert) = find_certificate(c) {
            for (_, basis) in &bases {
                for v in basis {
                    directional.push(directional_bound(c, &cert, v).map_err(|e| Failure::Negative(e.to_string()))?);
                }
            }
        }
    }
    match format {
        TextOrJson::Json => print_json(&json!({ "bases": report, "directional": directional })),
        TextOrJson::Text => {
            for r in &report {
                println!("{} basis {}: alpha = {}, c = {}", r["basis"].as_str().unwrap(), r["vectors"], r["alpha"], r["c"]);
            }
            for b in &directional {
                println!("direction {:?}: r = {} <= 4/alpha = {}", b.v.0, b.r, b.bound);
            }
            if let Some(c) = &cdp {
                println!("n = {}, toric: {}", c.n(), is_toric(c));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let msg = f.to_string();
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(f.code() as u8)
        }
    }
}

