use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{error::ErrorKind, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use circuitsmith::circuits::{
    glue, sigma, verify_circuit, verify_sigma_complement, BordismData, BordismJson, CircuitJson,
    RelativeCircuitData, SigmaInput, Status,
};
use circuitsmith::complex::{ComplexJson, MapJson, SimplicialComplex, SimplicialMap};
use circuitsmith::homology::{evaluate, fundamental_class, homology, orient_circuit};
use circuitsmith::io::{check_size, read_json};
use circuitsmith::limit::{compose, limit_set, product, CompactifiedMap, CompactifiedMapJson};
use circuitsmith::psi::{
    dual_complex, psi, verify_bordism_certificate, verify_certificate, SigmaJson, TargetJson, TargetPair,
};
use circuitsmith::{Error, Result};

/// Verifies PL circuits, computes homology and limit sets, and emits
/// pseudocycle certificates.
///
/// Exit codes: 0 valid, 1 invalid or malformed input, 2 undecided.
#[derive(Parser)]
#[command(name = "circuitsmith", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    A,
    B,
    C,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a relative circuit.
    CheckCircuit {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        /// Candidate singular set, as a complex file.
        #[arg(long = "s")]
        singular: Option<PathBuf>,
    },
    /// Build the singular set Σ and check its complement.
    Sigma {
        #[arg(long, value_enum)]
        case: CaseArg,
        /// A circuit file (cases a and b) or a bordism file (case c).
        file: PathBuf,
    },
    /// Glue two circuits along boundary subcomplexes.
    Glue {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        iso: PathBuf,
        #[arg(long)]
        reverse: bool,
    },
    /// Integer homology of a complex or a pair.
    Homology {
        complex: PathBuf,
        #[arg(long)]
        rel: Option<PathBuf>,
    },
    /// Orientation and fundamental chain of a circuit.
    FundamentalClass { circuit: PathBuf },
    /// Homology coordinates of the image of a circuit's fundamental class.
    Evaluate {
        circuit: PathBuf,
        map: PathBuf,
        target: PathBuf,
    },
    /// Limit set of a map between punctured complexes.
    LimitSet { map: PathBuf },
    /// Composite of two maps, optionally with its laws checked.
    Compose {
        f: PathBuf,
        h: PathBuf,
        #[arg(long)]
        check: bool,
    },
    /// Product of two maps, optionally with its laws checked.
    Product {
        f: PathBuf,
        g: PathBuf,
        #[arg(long)]
        check: bool,
    },
    /// Certify a circuit with a map into a pair as a pseudocycle.
    Psi {
        circuit: PathBuf,
        map: PathBuf,
        target: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify a nullbordism with a map into a pair.
    CheckBordism {
        bordism: PathBuf,
        map: PathBuf,
        target: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The dual complex above the r-skeleton.
    DualComplex {
        complex: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        r: isize,
    },
    /// Recompute a certificate and report every mismatch.
    VerifyCert { cert: PathBuf },
}

fn load_complex(path: &Path) -> Result<SimplicialComplex> {
    let k = SimplicialComplex::from_json(&read_json::<ComplexJson>(path)?)?;
    check_size(&k)?;
    Ok(k)
}

fn load_circuit(path: &Path) -> Result<RelativeCircuitData> {
    let q = RelativeCircuitData::from_json(&read_json::<CircuitJson>(path)?)?;
    check_size(&q.complex)?;
    Ok(q)
}

fn load_target(path: &Path) -> Result<TargetPair> {
    let t = TargetPair::from_json(&read_json::<TargetJson>(path)?)?;
    check_size(&t.complex)?;
    Ok(t)
}

fn load_map(path: &Path, source: &SimplicialComplex, target: &SimplicialComplex) -> Result<SimplicialMap> {
    SimplicialMap::new(source.clone(), target.clone(), read_json::<MapJson>(path)?.to_map()?)
}

fn load_compactified(path: &Path) -> Result<CompactifiedMap> {
    let f = CompactifiedMap::from_json(&read_json::<CompactifiedMapJson>(path)?)?;
    check_size(f.domain().complex())?;
    Ok(f)
}

fn status_of(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn write_or_print(out: Option<&Path>, text: String, summary: Value) -> Result<Value> {
    match out {
        Some(p) => {
            std::fs::write(p, text + "\n").map_err(|e| Error::MalformedInput(format!("{}: {e}", p.display())))?;
            Ok(summary)
        }
        None => serde_json::from_str(&text).map_err(|e| Error::MalformedInput(e.to_string())),
    }
}

fn run(command: Command) -> Result<(Value, Status)> {
    match command {
        Command::CheckCircuit { file, k, singular } => {
            let mut json = read_json::<CircuitJson>(&file)?;
            json.k = Some(k);
            if let Some(s) = singular {
                json.singular = Some(read_json::<ComplexJson>(&s)?.maximal);
            }
            let q = RelativeCircuitData::from_json(&json)?;
            check_size(&q.complex)?;
            let v = verify_circuit(&q);
            let status = v.status();
            let singular: Vec<_> = q.singular.maximal_simplices();
            Ok((json!({ "status": status, "singular": singular, "verdict": v }), status))
        }
        Command::Sigma { case, file } => {
            let (s, v, boundary) = match case {
                CaseArg::A | CaseArg::B => {
                    let q = load_circuit(&file)?;
                    let input = if matches!(case, CaseArg::A) {
                        SigmaInput::Closed(&q)
                    } else {
                        SigmaInput::Relative(&q)
                    };
                    let s = sigma(input)?;
                    let v = verify_sigma_complement(input, &s);
                    (s, v, q.boundary.clone())
                }
                CaseArg::C => {
                    let r = BordismData::from_json(&read_json::<BordismJson>(&file)?)?;
                    check_size(&r.complex)?;
                    let input = SigmaInput::Bordism(&r);
                    let s = sigma(input)?;
                    let v = verify_sigma_complement(input, &s);
                    (s, v, r.side())
                }
            };
            let status = v.status();
            Ok((json!({ "status": status, "sigma": SigmaJson::new(&s, &boundary), "verdict": v }), status))
        }
        Command::Glue { a, b, iso, reverse } => {
            let (a, b) = (load_circuit(&a)?, load_circuit(&b)?);
            let iso = read_json::<MapJson>(&iso)?.to_map()?;
            let g = glue(&a, &b, &iso, reverse)?;
            let status = g.verdict.status();
            Ok((
                json!({
                    "status": status,
                    "circuit": g.circuit.to_json(),
                    "seam": g.seam.maximal_simplices(),
                    "subdivisions": g.subdivisions,
                    "orientation_consistent": g.orientation_consistent,
                    "verdict": g.verdict,
                }),
                status,
            ))
        }
        Command::Homology { complex, rel } => {
            let k = load_complex(&complex)?;
            let a = match rel {
                Some(p) => load_complex(&p)?,
                None => SimplicialComplex::new(),
            };
            let h = homology(&k, &a)?;
            Ok((json!({ "betti": h.betti_numbers(), "groups": h.summary() }), Status::Pass))
        }
        Command::FundamentalClass { circuit } => {
            let q = load_circuit(&circuit)?;
            let o = orient_circuit(&q);
            let z = fundamental_class(&q, &o)?;
            let signs: Vec<_> = o.signs.iter().collect();
            Ok((json!({ "orientation": signs, "chain": z }), Status::Pass))
        }
        Command::Evaluate { circuit, map, target } => {
            let q = load_circuit(&circuit)?;
            let t = load_target(&target)?;
            let a = load_map(&map, &q.complex, &t.complex)?;
            let z = fundamental_class(&q, &orient_circuit(&q))?;
            let h = homology(&t.complex, &t.sub)?;
            let e = evaluate(&a, &q.boundary, &z, &h)?;
            let group = h.summary().into_iter().find(|g| g.degree == q.k);
            Ok((json!({ "group": group, "coordinates": e.coordinates, "chain": e.chain }), Status::Pass))
        }
        Command::LimitSet { map } => {
            let f = load_compactified(&map)?;
            let l = limit_set(&f);
            Ok((
                json!({ "carrier": l.carrier, "limit_dimension": l.limit_dimension, "proper": l.is_empty() }),
                Status::Pass,
            ))
        }
        Command::Compose { f, h, check } => {
            let c = compose(&load_compactified(&f)?, &load_compactified(&h)?)?;
            let l = limit_set(&c.map);
            let mut out = json!({
                "composite": c.map.to_json(),
                "carrier": l.carrier,
                "limit_dimension": l.limit_dimension,
            });
            if !check {
                return Ok((out, Status::Pass));
            }
            out["laws"] = json!(c.laws);
            Ok((out, status_of(c.laws.all_hold())))
        }
        Command::Product { f, g, check } => {
            let p = product(&load_compactified(&f)?, &load_compactified(&g)?)?;
            let l = limit_set(&p.map);
            let mut out = json!({
                "product": p.map.to_json(),
                "carrier": l.carrier,
                "limit_dimension": l.limit_dimension,
            });
            if !check {
                return Ok((out, Status::Pass));
            }
            out["laws"] = json!(p.laws);
            Ok((out, status_of(p.laws.all_hold())))
        }
        Command::Psi { circuit, map, target, out } => {
            let q = load_circuit(&circuit)?;
            let t = load_target(&target)?;
            let a = load_map(&map, &q.complex, &t.complex)?;
            let c = psi(&q, &a, &t)?;
            let status = status_of(c.is_valid());
            let summary = json!({ "valid": c.is_valid(), "coordinates": c.homology_coordinates });
            Ok((write_or_print(out.as_deref(), c.to_json_string(), summary)?, status))
        }
        Command::CheckBordism { bordism, map, target, out } => {
            let r = BordismData::from_json(&read_json::<BordismJson>(&bordism)?)?;
            check_size(&r.complex)?;
            let t = load_target(&target)?;
            let d = load_map(&map, &r.complex, &t.complex)?;
            let c = verify_bordism_certificate(&r, &d, &t)?;
            let status = status_of(c.is_valid());
            let summary = json!({ "valid": c.is_valid(), "end_coordinates": c.end_coordinates });
            Ok((write_or_print(out.as_deref(), c.to_json_string(), summary)?, status))
        }
        Command::DualComplex { complex, r } => {
            let k = load_complex(&complex)?;
            let d = dual_complex(&k, r);
            let ok = d.within_bound() && d.join.total && d.join.unique;
            Ok((
                json!({
                    "r": r,
                    "dimension": d.dim(),
                    "dimension_bound": d.dimension_bound,
                    "within_bound": d.within_bound(),
                    "maximal": d.complex.maximal_simplices(),
                    "join": d.join,
                }),
                status_of(ok),
            ))
        }
        Command::VerifyCert { cert } => {
            let stored: Value = read_json(&cert)?;
            let r = verify_certificate(&stored)?;
            let status = status_of(r.reproduced());
            Ok((json!(r), status))
        }
    }
}

fn error_json(e: &Error) -> Value {
    let mut v = json!({ "error": e.to_string() });
    match e {
        Error::StageFailed { stage, witness, completed, .. } => {
            v["stage"] = json!(stage);
            v["witness"] = json!(witness);
            v["completed"] = json!(completed);
        }
        Error::NotSimplicial { source_simplex: s }
        | Error::NotMapOfPairs { simplex: s }
        | Error::NotFound(s)
        | Error::NotSubcomplex { witness: s, .. } => v["witness"] = json!([s]),
        Error::NonOrientable { witness } => v["witness"] = json!(witness),
        _ => {}
    }
    v
}

/// Prints to stdout, ignoring a closed pipe.
fn emit(v: &Value) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(v).expect("json"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok((value, status)) => {
            emit(&value);
            ExitCode::from(match status {
                Status::Pass => 0,
                Status::Fail => 1,
                Status::Unknown => 2,
            })
        }
        Err(e) => {
            emit(&error_json(&e));
            eprintln!("error: {e}");
            let unknown = matches!(e, Error::StageFailed { unknown: true, .. });
            ExitCode::from(if unknown { 2 } else { 1 })
        }
    }
}
