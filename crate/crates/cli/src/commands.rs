//! Command definitions and their execution.

use std::error::Error as StdError;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Number, Value};

use islandpoly::analysis::{detect, euler_emergence, tee, Classification, IdentityRegistry};
use islandpoly::closed_forms::{circle_modes, closed_beta, line_modes, ClosedKind};
use islandpoly::script::Script;
use islandpoly::{Beta, Engine, IntPoly};

use crate::checkfile::parse_checkfile;
use crate::smap::{parse_smap, render_smap, MapDocument};

type CmdResult = Result<Outcome, Box<dyn StdError>>;

/// How a command that ran to completion ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    /// A check produced a nonzero residual or the two sides disagreed.
    Failed,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::Failed => 1,
        }
    }
}

/// Exit code for unreadable or invalid input.
pub const INPUT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "islandpoly", version, about = "Island boundary polynomials of embedded graphs")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Enumeration worker threads.
    #[arg(long, global = true, env = "ISLANDPOLY_THREADS")]
    pub threads: Option<usize>,

    /// Enumerate past the 24 marked vertex guard.
    #[arg(long, global = true)]
    pub force: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Face count and host genus of a map document.
    Faces { map: PathBuf },
    /// The island boundary polynomial.
    Beta {
        map: PathBuf,
        /// Also compute the colored polynomial from the document's colors.
        #[arg(long)]
        colored: bool,
    },
    /// Island counts D_1..D_n.
    Counts { map: PathBuf },
    /// Apply an operation script and print the resulting document.
    Transform { map: PathBuf, script: PathBuf },
    /// Evaluate every identity instance in a check file.
    Check { file: PathBuf },
    /// Classify a polynomial, given directly or computed from a map.
    Detect {
        map: Option<PathBuf>,
        #[arg(long, conflicts_with = "map", requires = "n")]
        poly: Option<String>,
        /// Vertex count to classify against.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Both sides of the Euler emergence identity.
    Euler {
        map: PathBuf,
        /// Accept loops and parallel edges.
        #[arg(long)]
        allow_multigraph: bool,
    },
    /// Closed-form polynomial of a standard family.
    Closedform {
        #[command(subcommand)]
        kind: ClosedArg,
    },
    /// Island counts B(n, m) on a line or D(n, m) on a circle.
    Appendix {
        which: Which,
        n: usize,
        m: usize,
        /// Compute with one mode only.
        #[arg(long)]
        mode: Option<String>,
    },
    /// Entanglement entropy −Ω β(−1).
    Tee {
        map: PathBuf,
        /// Ω as an integer or fraction, e.g. `1/2`.
        #[arg(long)]
        omega: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum ClosedArg {
    /// Any tree on `n` vertices.
    Tree { n: usize },
    /// Cycle on `n` vertices.
    Cycle {
        n: usize,
        /// Cycle whose complement is connected.
        #[arg(long)]
        non_separating: bool,
    },
    /// `n` isolated vertices.
    Discrete { n: usize },
    /// Loop bouquet with `r` complement components and a pendant edge.
    Bouquet { r: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    #[value(name = "B")]
    B,
    #[value(name = "D")]
    D,
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let engine = engine(cli)?;
    let json = cli.json;
    match &cli.command {
        Command::Faces { map } => {
            let doc = load_map(map)?;
            let r = Report::new(&doc, &engine)?;
            if json {
                emit(out, &r.json())?;
            } else {
                writeln!(out, "faces: {}\ngenus: {}", r.faces, r.genus)?;
            }
        }
        Command::Beta { map, colored } => {
            let doc = load_map(map)?;
            let r = Report::new(&doc, &engine)?;
            let col = if *colored {
                let c = doc.coloring.as_ref().ok_or("document has no color lines")?;
                Some((engine.beta_colored(&doc.graph, c)?, c.color_count()))
            } else {
                None
            };
            if json {
                let mut v = r.json();
                if let Some((p, c)) = &col {
                    v["beta_colored"] = poly_json(p);
                    v["colors"] = json!(c);
                }
                emit(out, &v)?;
            } else {
                writeln!(out, "beta_bar: {}", r.beta.bar)?;
                writeln!(out, "beta_total: {}", r.beta.total)?;
                writeln!(out, "beta(-1): {}", r.beta.at_minus_one())?;
                if let Some((p, _)) = &col {
                    writeln!(out, "beta_colored: {p}")?;
                }
            }
        }
        Command::Counts { map } => {
            let doc = load_map(map)?;
            let r = Report::new(&doc, &engine)?;
            if json {
                emit(out, &r.json())?;
            } else {
                for (k, d) in r.beta.counts.0.iter().enumerate() {
                    writeln!(out, "D_{} = {d}", k + 1)?;
                }
            }
        }
        Command::Transform { map, script } => {
            let doc = load_map(map)?;
            let script = Script::parse(&read_input(script)?).map_err(|e| located(script, e))?;
            let graph = script.apply(&doc.graph)?;
            // contraction renumbers vertices, so colors are not carried over
            let doc = MapDocument { graph, coloring: None };
            if json {
                let mut v = Report::new(&doc, &engine)?.json();
                v["map"] = json!(render_smap(&doc));
                emit(out, &v)?;
            } else {
                write!(out, "{}", render_smap(&doc))?;
            }
        }
        Command::Check { file } => return check(file, &engine, json, out),
        Command::Detect { map, poly, n } => {
            let (p, n) = match (map, poly) {
                (Some(path), _) => {
                    let doc = load_map(path)?;
                    (engine.beta(&doc.graph)?.total, n.unwrap_or(doc.graph.n()))
                }
                (None, Some(text)) => (text.parse::<IntPoly>()?, n.ok_or("--n is required with --poly")?),
                (None, None) => return Err("give a map document or --poly".into()),
            };
            let r = detect(&p, n);
            if json {
                let mut v = json!({
                    "classification": r.classification.tag(),
                    "hypotheses": r.classification.hypotheses(),
                    "coefficients": ints_json(&r.coefficients),
                    "n": n,
                });
                match &r.classification {
                    Classification::DecoratedTree { a, b, loops, parallels } => {
                        v["a"] = int_json(a);
                        v["b"] = int_json(b);
                        v["loops"] = json!(loops);
                        v["parallels"] = json!(parallels);
                    }
                    Classification::Cycle { c } => v["c"] = json!(c),
                    _ => {}
                }
                emit(out, &v)?;
            } else {
                write!(out, "classification: {}", r.classification.tag())?;
                match &r.classification {
                    Classification::DecoratedTree { loops, parallels, .. } => {
                        write!(out, " ({loops} loops, {parallels} parallel edges)")?
                    }
                    Classification::Cycle { c } => write!(out, " (top coefficient {c})")?,
                    _ => {}
                }
                writeln!(out)?;
                if !r.classification.hypotheses().is_empty() {
                    writeln!(out, "applies when: {}", r.classification.hypotheses())?;
                }
                let cs: Vec<String> = r.coefficients.iter().map(|c| c.to_string()).collect();
                writeln!(out, "shifted basis: [{}]", cs.join(", "))?;
            }
        }
        Command::Euler { map, allow_multigraph } => {
            let doc = load_map(map)?;
            let r = euler_emergence(&doc.graph, *allow_multigraph, &engine)?;
            let ok = r.holds() && r.expansion_residual.is_zero();
            if json {
                emit(
                    out,
                    &json!({
                        "lhs": int_json(&r.lhs),
                        "rhs": int_json(&r.rhs),
                        "chi": r.chi,
                        "faces": r.faces,
                        "holds": r.holds(),
                        "expansion_residual": poly_json(&r.expansion_residual),
                    }),
                )?;
            } else {
                writeln!(out, "lhs: {}\nrhs: {} (chi {} - 2 * {} faces)", r.lhs, r.rhs, r.chi, r.faces)?;
                writeln!(out, "expansion residual: {}", r.expansion_residual)?;
                writeln!(out, "{}", if ok { "holds" } else { "FAILS" })?;
            }
            return Ok(if ok { Outcome::Ok } else { Outcome::Failed });
        }
        Command::Closedform { kind } => {
            let (name, kind) = match *kind {
                ClosedArg::Tree { n } => ("tree", ClosedKind::Tree(n)),
                ClosedArg::Cycle { n, non_separating } => (
                    "cycle",
                    ClosedKind::Cycle {
                        n,
                        separating: !non_separating,
                    },
                ),
                ClosedArg::Discrete { n } => ("discrete", ClosedKind::Discrete(n)),
                ClosedArg::Bouquet { r } => ("bouquet", ClosedKind::AppendedBouquet(r)),
            };
            let p = closed_beta(kind)?;
            if json {
                emit(
                    out,
                    &json!({
                        "kind": name,
                        "beta_total": poly_json(&p),
                        "beta_at_minus1": int_json(&p.at_minus_one()),
                    }),
                )?;
            } else {
                writeln!(out, "{p}")?;
            }
        }
        Command::Appendix { which, n, m, mode } => return appendix(*which, *n, *m, mode.as_deref(), json, out),
        Command::Tee { map, omega } => {
            let omega = parse_rational(omega)?;
            let doc = load_map(map)?;
            let at = engine.beta(&doc.graph)?.at_minus_one();
            let s = tee(&at, &omega);
            if json {
                emit(
                    out,
                    &json!({
                        "beta_at_minus1": int_json(&at),
                        "omega": omega.to_string(),
                        "tee": s.to_string(),
                    }),
                )?;
            } else {
                writeln!(out, "beta(-1): {at}\ntee: {s}")?;
            }
        }
    }
    Ok(Outcome::Ok)
}

fn engine(cli: &Cli) -> Result<Engine, Box<dyn StdError>> {
    let mut e = Engine::default();
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err("--threads must be at least 1".into());
        }
        e.threads = t;
    }
    e.force = cli.force;
    Ok(e)
}

/// `-` reads standard input.
fn read_input(path: &Path) -> io::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path)
}

fn located(path: &Path, e: impl std::fmt::Display) -> Box<dyn StdError> {
    format!("{}: {e}", path.display()).into()
}

fn load_map(path: &Path) -> Result<MapDocument, Box<dyn StdError>> {
    let text = read_input(path).map_err(|e| located(path, e))?;
    parse_smap(&text).map_err(|e| located(path, e))
}

struct Report {
    beta: Beta,
    faces: usize,
    genus: usize,
}

impl Report {
    fn new(doc: &MapDocument, engine: &Engine) -> Result<Self, Box<dyn StdError>> {
        let g = &doc.graph;
        Ok(Report {
            beta: engine.beta(g)?,
            faces: g.face_count(g.marked_vertex_set())?,
            genus: g.genus(),
        })
    }

    fn json(&self) -> Value {
        json!({
            "counts": ints_json(&self.beta.counts.0),
            "beta_bar": poly_json(&self.beta.bar),
            "beta_total": poly_json(&self.beta.total),
            "beta_at_minus1": int_json(&self.beta.at_minus_one()),
            "faces": self.faces,
            "genus": self.genus,
        })
    }
}

fn int_json(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("integers are valid JSON numbers"))
}

fn ints_json(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int_json).collect())
}

fn poly_json(p: &IntPoly) -> Value {
    ints_json(p.coeffs())
}

fn emit(out: &mut dyn Write, v: &Value) -> io::Result<()> {
    let s = serde_json::to_string_pretty(v).expect("values serialize");
    writeln!(out, "{s}")
}

fn parse_rational(s: &str) -> Result<BigRational, Box<dyn StdError>> {
    let bad = || format!("cannot read {s:?} as an integer or fraction");
    let r = match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err("zero denominator".into());
            }
            BigRational::new(p.trim().parse().map_err(|_| bad())?, q)
        }
        None => BigRational::from_integer(s.trim().parse().map_err(|_| bad())?),
    };
    Ok(r)
}

fn check(file: &Path, engine: &Engine, json: bool, out: &mut dyn Write) -> CmdResult {
    let text = read_input(file).map_err(|e| located(file, e))?;
    let entries = parse_checkfile(&text).map_err(|e| located(file, e))?;
    let reg = IdentityRegistry::standard();
    let mut all_ok = true;
    let mut rows = Vec::new();
    for entry in &entries {
        let kind = &entry.instance.kind;
        let residual = reg
            .check(&entry.instance, engine)
            .map_err(|e| located(file, format!("line {}: {e}", entry.line)))?;
        let ok = residual.is_zero();
        all_ok &= ok;
        if json {
            rows.push(json!({
                "line": entry.line,
                "kind": kind,
                "formula": reg.get(kind)?.formula(),
                "residual": poly_json(&residual),
                "ok": ok,
            }));
        } else {
            writeln!(
                out,
                "line {} {kind}: residual {residual} {}",
                entry.line,
                if ok { "ok" } else { "FAIL" }
            )?;
        }
    }
    if json {
        emit(out, &json!({ "instances": rows, "ok": all_ok }))?;
    }
    Ok(if all_ok { Outcome::Ok } else { Outcome::Failed })
}

fn appendix(which: Which, n: usize, m: usize, mode: Option<&str>, json: bool, out: &mut dyn Write) -> CmdResult {
    let reg = match which {
        Which::B => line_modes(),
        Which::D => circle_modes(),
    };
    let mut values: Vec<(&str, BigInt)> = Vec::new();
    let mut skipped: Vec<(&str, String)> = Vec::new();
    match mode {
        Some(name) => {
            let m_ = reg.get(name)?;
            values.push((m_.name(), m_.count(n, m)?));
        }
        None => {
            for md in reg.iter() {
                match md.count(n, m) {
                    Ok(v) => values.push((md.name(), v)),
                    Err(e) => skipped.push((md.name(), e.to_string())),
                }
            }
        }
    }
    let Some((_, first)) = values.first() else {
        let (_, why) = &skipped[0];
        return Err(why.clone().into());
    };
    let agree = values.iter().all(|(_, v)| v == first);
    let label = match which {
        Which::B => "B",
        Which::D => "D",
    };
    if json {
        let modes: Map<String, Value> = values.iter().map(|(k, v)| (k.to_string(), int_json(v))).collect();
        let skipped: Map<String, Value> = skipped.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        emit(
            out,
            &json!({
                "which": label,
                "n": n,
                "m": m,
                "modes": modes,
                "skipped": skipped,
                "value": if agree { int_json(first) } else { Value::Null },
                "agree": agree,
            }),
        )?;
    } else {
        if agree {
            writeln!(out, "{label}({n}, {m}) = {first}")?;
        } else {
            writeln!(out, "{label}({n}, {m}): modes disagree")?;
        }
        for (k, v) in &values {
            writeln!(out, "  {k}: {v}")?;
        }
        for (k, why) in &skipped {
            writeln!(out, "  {k}: skipped ({why})")?;
        }
    }
    Ok(if agree { Outcome::Ok } else { Outcome::Failed })
}
