//! `cospan`: validate, transform and compare cubical cospans stored as JSON documents.
//!
//! Exit codes: 0 on success, 1 when a validation, comparison or law check fails (the witness
//! goes to the output), 2 on usage or parse errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cospan::collars::{check_collared, collared_degeneracy, concat_collared, concat_precollared, PreCollared};
use cospan::cubemodel::cube::first_difference;
use cospan::cubemodel::{format_index, from_faced_space, Cube, CubeError, FacedSpace, Sign, TMap};
use cospan::cylindrical::{cyl_concat, cyl_degeneracy};
use cospan::finspace::{core, poset_iso, FinSpace, SpaceMap};
use cospan::harness::{run_suite, suite_names, GenConfig};
use cospan::{dot, io};

#[derive(Parser)]
#[command(name = "cospan", version, about = "Finite models of cubical cospans")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format; documents default to json, reports to text.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    #[value(name = "+")]
    Plus,
    #[value(name = "-")]
    Minus,
}

#[derive(Subcommand)]
enum Verb {
    /// Parse and validate a space, map, cube, pre-collared cube, transversal map or faced space.
    Validate {
        file: PathBuf,
        /// Interval degree of the trivial collars given to arrows without a collar entry.
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Face of a cube in direction `--dir` on side `--sign`.
    Face {
        file: PathBuf,
        #[arg(long)]
        dir: usize,
        #[arg(long, value_enum, allow_hyphen_values = true)]
        sign: SignArg,
    },
    /// Degeneracy of a cube in direction `--dir`.
    Degen {
        file: PathBuf,
        #[arg(long)]
        dir: usize,
        /// Thirds-collared degeneracy instead of the identity cospan.
        #[arg(long, conflicts_with = "cylindrical")]
        collared: bool,
        /// Cylinder degeneracy of the cylindrical structure.
        #[arg(long)]
        cylindrical: bool,
    },
    /// Transposition of directions `--dir` and `--dir + 1`.
    Transpose {
        file: PathBuf,
        #[arg(long)]
        dir: usize,
    },
    /// Concatenation by chosen pushouts; collared documents are glued with their collars.
    Concat {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        dir: usize,
        /// Only glue pre-collars, without checking or re-deriving the collared witness.
        #[arg(long)]
        pre: bool,
    },
    /// Concatenation by standard homotopy pushouts.
    CylConcat {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        dir: usize,
    },
    /// Check that a pre-collared cube is collared and print its decomposition.
    CollarCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Core of a space: Kolmogorov quotient without beat points.
    Core { file: PathBuf },
    /// Compare two documents of the same kind: spaces up to homeomorphism, the rest exactly.
    Compare { left: PathBuf, right: PathBuf },
    /// Run a law suite on seeded instances.
    Suite {
        name: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        count: Option<usize>,
    },
    /// Re-export a document as Graphviz (default) or canonical JSON.
    ExportDot {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
}

enum CliError {
    Usage(String),
    Failed { message: String, witness: Value },
}

impl CliError {
    fn failed(message: impl ToString, witness: Value) -> CliError {
        CliError::Failed { message: message.to_string(), witness }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

/// Io errors about the document's shape are usage errors; the rest are validation failures.
fn from_io(path: &Path, e: io::IoError) -> CliError {
    use io::IoError::*;
    match e {
        Json(_) | UnknownRef(_) | BadPosition(_) | BadDirection { .. } | Duplicate { .. } => {
            usage(format!("{}: {e}", path.display()))
        }
        other => CliError::failed(format!("{}: {other}", path.display()), json!({ "file": path.display().to_string() })),
    }
}

enum Doc {
    Space(FinSpace),
    Map(SpaceMap),
    Cube(Cube),
    Collared(PreCollared),
    TMap(TMap),
    Faced(FacedSpace),
}

impl Doc {
    fn kind(&self) -> &'static str {
        match self {
            Doc::Space(_) => "space",
            Doc::Map(_) => "map",
            Doc::Cube(_) => "cube",
            Doc::Collared(_) => "pre-collared cube",
            Doc::TMap(_) => "transversal map",
            Doc::Faced(_) => "faced space",
        }
    }

    fn to_json(&self) -> Value {
        let v = match self {
            Doc::Space(x) => serde_json::to_value(io::space_doc(x)),
            Doc::Map(f) => serde_json::to_value(io::map_doc(f)),
            Doc::Cube(u) => serde_json::to_value(io::cube_doc(u)),
            Doc::Collared(u) => serde_json::to_value(io::precollared_doc(u)),
            Doc::TMap(f) => serde_json::to_value(io::tmap_doc(f)),
            Doc::Faced(f) => serde_json::to_value(io::faced_doc(f)),
        };
        v.expect("documents serialize")
    }

    fn to_dot(&self) -> Result<String, CliError> {
        Ok(match self {
            Doc::Space(x) => dot::cube_dot(&Cube::from_space(x)),
            Doc::Map(f) => dot::tmap_dot(&TMap::new(
                Cube::from_space(f.src()),
                Cube::from_space(f.dst()),
                vec![f.clone()],
            ).map_err(|e| CliError::failed(e, Value::Null))?),
            Doc::Cube(u) => dot::cube_dot(u),
            Doc::Collared(u) => dot::precollared_dot(u),
            Doc::TMap(f) => dot::tmap_dot(f),
            Doc::Faced(f) => dot::cube_dot(&from_faced_space(f).map_err(|e| CliError::failed(e, Value::Null))?),
        })
    }

    fn summary(&self) -> String {
        match self {
            Doc::Space(x) => format!("space with {} points", x.len()),
            Doc::Map(f) => format!("map from {} to {} points", f.src().len(), f.dst().len()),
            Doc::Cube(u) => format!("cube of degree {} with {} points", u.degree(), u.total_points()),
            Doc::Collared(u) => format!("pre-collared cube of degree {} with {} points", u.degree(), u.cube().total_points()),
            Doc::TMap(f) => format!("transversal map of degree {}", f.degree()),
            Doc::Faced(f) => format!("faced space with {} points and {} directions", f.total.len(), f.faces.len()),
        }
    }
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path, v: Value) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Reads a document, telling the kinds apart by their keys.
fn load(path: &Path, k: usize) -> Result<Doc, CliError> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let has = |key: &str| v.get(key).is_some();
    let err = |e| from_io(path, e);
    if has("components") {
        let d: io::TMapDoc = parse(path, v)?;
        Ok(Doc::TMap(io::tmap_from_doc(&d).map_err(err)?))
    } else if has("n") {
        let d: io::CubeDoc = parse(path, v)?;
        if d.collars.is_some() {
            Ok(Doc::Collared(io::precollared_from_doc_with(&d, k).map_err(err)?))
        } else {
            Ok(Doc::Cube(io::cube_from_doc(&d).map_err(err)?))
        }
    } else if has("total") {
        let d: io::FacedDoc = parse(path, v)?;
        Ok(Doc::Faced(io::faced_from_doc(&d).map_err(err)?))
    } else if has("assign") {
        let d: io::MapDoc = parse(path, v)?;
        Ok(Doc::Map(io::map_from_doc(&d).map_err(err)?))
    } else if has("elements") {
        let d: io::SpaceDoc = parse(path, v)?;
        Ok(Doc::Space(io::space_from_doc(&d).map_err(|e| err(e.into()))?))
    } else {
        Err(usage(format!("{}: not a space, map, cube, transversal map or faced space document", path.display())))
    }
}

fn collared(doc: Doc, k: usize, path: &Path) -> Result<PreCollared, CliError> {
    match doc {
        Doc::Collared(u) => Ok(u),
        Doc::Space(x) => Ok(PreCollared::from_space(&x)),
        Doc::Cube(u) => io::precollared_from_doc_with(&io::cube_doc(&u), k).map_err(|e| from_io(path, e)),
        other => Err(usage(format!("{}: expected a cube, got a {}", path.display(), other.kind()))),
    }
}

fn cube_of<'a>(doc: &'a Doc, path: &Path) -> Result<&'a Cube, CliError> {
    match doc {
        Doc::Cube(u) => Ok(u),
        Doc::Collared(u) => Ok(u.cube()),
        other => Err(usage(format!("{}: expected a cube, got a {}", path.display(), other.kind()))),
    }
}

/// An operation error on valid inputs carries the input cube as witness.
fn op_failed(e: impl ToString, input: &Doc) -> CliError {
    CliError::failed(e, json!({ "input": input.to_json() }))
}

fn emit(doc: &Doc, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => pretty(&doc.to_json()),
        Format::Dot => doc.to_dot()?,
        Format::Text => format!("{}\n", doc.summary()),
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn sign(s: SignArg) -> Sign {
    match s {
        SignArg::Plus => Sign::Plus,
        SignArg::Minus => Sign::Minus,
    }
}

/// The faces a concatenation in direction `i` glues along, as witness for a mismatch.
fn mismatch(u: &Cube, v: &Cube, i: usize, e: CubeError) -> CliError {
    let faces = (u.face(i, Sign::Plus), v.face(i, Sign::Minus));
    let witness = match faces {
        (Ok(a), Ok(b)) => json!({
            "error": e.to_string(),
            "left_plus_face": io::cube_doc(&a),
            "right_minus_face": io::cube_doc(&b),
        }),
        _ => json!({ "error": e.to_string() }),
    };
    CliError::failed(e, witness)
}

fn run(verb: Verb, format: Option<Format>) -> Result<String, CliError> {
    let doc_format = format.unwrap_or(Format::Json);
    match verb {
        Verb::Validate { file, k } => {
            check_k(k)?;
            let doc = load(&file, k)?;
            if let Doc::Faced(f) = &doc {
                from_faced_space(f).map_err(|e| op_failed(e, &doc))?;
            }
            match format.unwrap_or(Format::Text) {
                Format::Text => Ok(format!("ok: {}\n", doc.summary())),
                Format::Json => Ok(pretty(&json!({ "valid": true, "kind": doc.kind(), "summary": doc.summary() }))),
                Format::Dot => doc.to_dot(),
            }
        }
        Verb::Face { file, dir, sign: s } => {
            let out = match load(&file, 1)? {
                Doc::Collared(u) => Doc::Collared(u.face(dir, sign(s)).map_err(usage)?),
                other => Doc::Cube(cube_of(&other, &file)?.face(dir, sign(s)).map_err(usage)?),
            };
            emit(&out, doc_format)
        }
        Verb::Degen { file, dir, collared: thirds, cylindrical } => {
            let doc = load(&file, 1)?;
            let out = if thirds {
                let u = collared(doc, 1, &file)?;
                Doc::Collared(collared_degeneracy(&u, dir).map_err(usage)?)
            } else if cylindrical {
                {
                let u = match &doc {
                    Doc::Space(x) => Cube::from_space(x),
                    d => cube_of(d, &file)?.clone(),
                };
                Doc::Cube(cyl_degeneracy(&u, dir).map_err(usage)?)
            }
            } else {
                match doc {
                    Doc::Collared(u) => Doc::Collared(u.degeneracy(dir).map_err(usage)?),
                    Doc::Space(x) => Doc::Cube(Cube::from_space(&x).degeneracy(dir).map_err(usage)?),
                    other => Doc::Cube(cube_of(&other, &file)?.degeneracy(dir).map_err(usage)?),
                }
            };
            emit(&out, doc_format)
        }
        Verb::Transpose { file, dir } => {
            let out = match load(&file, 1)? {
                Doc::Collared(u) => Doc::Collared(u.transpose(dir).map_err(usage)?),
                other => Doc::Cube(cube_of(&other, &file)?.transpose(dir).map_err(usage)?),
            };
            emit(&out, doc_format)
        }
        Verb::Concat { left, right, dir, pre } => {
            let (a, b) = (load(&left, 1)?, load(&right, 1)?);
            let (ua, ub) = (cube_of(&a, &left)?.clone(), cube_of(&b, &right)?.clone());
            check_dir(dir, ua.degree())?;
            // glued on the underlying cubes first so that a mismatch reports its position
            let w = ua.concat(&ub, dir).map_err(|e| mismatch(&ua, &ub, dir, e))?;
            if !matches!(a, Doc::Collared(_)) && !matches!(b, Doc::Collared(_)) {
                return emit(&Doc::Cube(w), doc_format);
            }
            let (ca, cb) = (collared(a, 1, &left)?, collared(b, 1, &right)?);
            let w = if pre { concat_precollared(&ca, &cb, dir) } else { concat_collared(&ca, &cb, dir).map(|(w, _)| w) };
            let w = w.map_err(|e| {
                let witness = json!({
                    "error": e.to_string(),
                    "left": io::precollared_doc(&ca),
                    "right": io::precollared_doc(&cb),
                });
                CliError::failed(&e, witness)
            })?;
            emit(&Doc::Collared(w), doc_format)
        }
        Verb::CylConcat { left, right, dir } => {
            let (a, b) = (load(&left, 1)?, load(&right, 1)?);
            let (ua, ub) = (cube_of(&a, &left)?, cube_of(&b, &right)?);
            check_dir(dir, ua.degree())?;
            let w = cyl_concat(ua, ub, dir).map_err(|e| mismatch(ua, ub, dir, e))?;
            emit(&Doc::Cube(w), doc_format)
        }
        Verb::CollarCheck { file, k } => {
            check_k(k)?;
            let u = collared(load(&file, k)?, k, &file)?;
            match check_collared(&u) {
                Ok(w) => {
                    let counts: Vec<usize> =
                        w.parts.iter().map(|d| d.iter().map(|p| p.iter().filter(|&&b| b).count()).sum()).collect();
                    match format.unwrap_or(Format::Text) {
                        Format::Json => Ok(pretty(&json!({ "collared": true, "part_one": w.parts }))),
                        _ => {
                            let mut s = String::from("collared\n");
                            for (d, c) in counts.iter().enumerate() {
                                s.push_str(&format!("  direction {}: {c} points in the collared part\n", d + 1));
                            }
                            Ok(s)
                        }
                    }
                }
                Err(d) => Err(CliError::failed(
                    &d,
                    json!({ "collared": false, "diagnosis": d.kind(), "message": d.to_string(), "cube": io::precollared_doc(&u) }),
                )),
            }
        }
        Verb::Core { file } => {
            let x = match load(&file, 1)? {
                Doc::Space(x) => x,
                other => return Err(usage(format!("{}: expected a space, got a {}", file.display(), other.kind()))),
            };
            let c = core(&x);
            match format.unwrap_or(Format::Json) {
                Format::Text => Ok(format!("core has {} of {} points: {}\n", c.space.len(), x.len(), c.space.ids().join(" "))),
                f => emit(&Doc::Space(c.space), f),
            }
        }
        Verb::Compare { left, right } => compare(&left, &right, format.unwrap_or(Format::Text)),
        Verb::Suite { name, seed, count } => {
            let mut cfg = GenConfig::new(seed);
            if let Some(n) = count {
                cfg = cfg.with_count(n);
            }
            let report = run_suite(&name, &cfg).map_err(|e| usage(format!("{e}; known suites: {}", suite_names().join(", "))))?;
            let text = match format.unwrap_or(Format::Text) {
                Format::Json => pretty(&report.to_json()),
                Format::Text => report.to_text(),
                Format::Dot => return Err(usage("suite reports are text or json")),
            };
            if report.ok() {
                Ok(text)
            } else {
                Err(CliError::Failed { message: format!("suite {name} has failing laws"), witness: Value::String(text) })
            }
        }
        Verb::ExportDot { file, k } => {
            check_k(k)?;
            emit(&load(&file, k)?, format.unwrap_or(Format::Dot))
        }
    }
}

fn check_dir(dir: usize, n: usize) -> Result<(), CliError> {
    if dir < 1 || dir > n {
        return Err(usage(format!("--dir {dir} out of range for degree {n}")));
    }
    Ok(())
}

fn check_k(k: usize) -> Result<(), CliError> {
    if k == 0 {
        return Err(usage("--k must be at least 1"));
    }
    Ok(())
}

/// Spaces are compared up to homeomorphism, every other kind by its canonical document.
fn compare(left: &Path, right: &Path, format: Format) -> Result<String, CliError> {
    let (a, b) = (load(left, 1)?, load(right, 1)?);
    if a.kind() != b.kind() {
        return Err(usage(format!("cannot compare a {} with a {}", a.kind(), b.kind())));
    }
    let differ = |message: String| {
        CliError::failed(&message, json!({ "message": message, "left": a.to_json(), "right": b.to_json() }))
    };
    let witness = match (&a, &b) {
        (Doc::Space(x), Doc::Space(y)) => {
            let h = poset_iso(x, y).ok_or_else(|| differ("spaces are not homeomorphic".into()))?;
            if format != Format::Json {
                return Ok(format!("homeomorphic: {}\n", pairs(&h)));
            }
            serde_json::to_value(io::map_doc(&h)).expect("maps serialize")
        }
        (Doc::TMap(f), Doc::TMap(g)) if f != g => {
            let message = match (first_difference(f.src(), g.src()), first_difference(f.dst(), g.dst())) {
                (Some(e), _) => format!("sources differ: {e}"),
                (_, Some(e)) => format!("targets differ: {e}"),
                _ => {
                    let p = (0..f.src().positions()).find(|&p| f.comp(p) != g.comp(p)).unwrap_or(0);
                    format!("components differ at {}", format_index(&f.src().coords(p)))
                }
            };
            return Err(differ(message));
        }
        _ if a.to_json() != b.to_json() => {
            let message = match (&a, &b) {
                (Doc::Cube(u), Doc::Cube(v)) => first_difference(u, v).map(|e| e.to_string()),
                (Doc::Collared(u), Doc::Collared(v)) => {
                    Some(first_difference(u.cube(), v.cube()).map_or("collars differ".into(), |e| e.to_string()))
                }
                _ => None,
            };
            return Err(differ(message.unwrap_or_else(|| format!("{}s differ", a.kind()))));
        }
        _ => Value::Null,
    };
    Ok(match format {
        Format::Json => pretty(&json!({ "equal": true, "kind": a.kind(), "witness": witness })),
        _ => format!("equal {}s\n", a.kind()),
    })
}

fn pairs(h: &SpaceMap) -> String {
    (0..h.src().len()).map(|e| format!("{}->{}", h.src().id(e), h.dst().id(h.apply(e)))).collect::<Vec<_>>().join(" ")
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = run(cli.verb, cli.format).and_then(|text| write_out(&cli.out, &text));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Failed { message, witness }) => {
            eprintln!("failed: {message}");
            let text = match witness {
                Value::String(s) => s,
                Value::Null => String::new(),
                w => pretty(&w),
            };
            if let Err(CliError::Usage(m)) = write_out(&cli.out, &text) {
                eprintln!("error: {m}");
            }
            ExitCode::from(1)
        }
    }
}
