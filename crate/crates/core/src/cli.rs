//! Command-line front end. Every number printed here comes straight from a
//! library call; this module only parses inputs and formats results.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::catalog::{self, CatalogEntry};
use crate::error::{Error, Result};
use crate::extremal::{self, Direction, SearchOptions, Verdict};
use crate::graph::parse_edge_list;
use crate::rcp::{brute_count, rcp_delcon, rcp_interpolate};
use crate::restraint::Restraint;

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest order accepted by `extremal` even with `--max-n`.
pub const EXTREMAL_CAP: usize = 10;

#[derive(Parser, Debug)]
#[command(name = "rcpoly", version, about = "Restrained chromatic polynomials of small graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GraphInput {
    /// A single graph6 record.
    #[arg(long)]
    pub graph6: Option<String>,
    /// File of graph6 records, one per line.
    #[arg(long)]
    pub graph6_file: Option<PathBuf>,
    /// Edge list file: vertex count, then `u v` per line.
    #[arg(long)]
    pub edges_file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Restrained chromatic polynomial of one graph and restraint.
    Poly {
        #[command(flatten)]
        input: GraphInput,
        /// Restraint, e.g. "1,2;3;" (default: no restraint).
        #[arg(long)]
        restraint: Option<String>,
        /// Also interpolate brute-force counts and compare.
        #[arg(long)]
        check: bool,
    },
    /// Number of permitted colourings at one x or over a window.
    Count {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        restraint: Option<String>,
        #[arg(long, conflicts_with = "x_window")]
        x: Option<u64>,
        /// Inclusive range LO:HI.
        #[arg(long)]
        x_window: Option<String>,
    },
    /// Extremal canonical simple restraints of a graph.
    Extremal {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value = "max")]
        direction: String,
        #[arg(long, default_value_t = extremal::DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Run one of the exhaustive verifiers.
    Verify {
        claim: Claim,
        /// Order to check (default: the standard range for the claim).
        #[arg(long)]
        n: Option<usize>,
        /// Catalog for catalog-driven claims (default: bundled connected graphs of order <= 6).
        #[arg(long)]
        graph6_file: Option<PathBuf>,
        /// Largest catalog order to include.
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Expected number of survey findings (default 2 on the bundled catalog).
        #[arg(long)]
        expect: Option<usize>,
        #[arg(long)]
        fail_fast: bool,
    },
    /// Validate a graph6 file as the complete connected catalog up to --max-n.
    CatalogCheck {
        #[arg(long)]
        graph6_file: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Claim {
    Theorem1,
    Theorem2,
    Lemma,
    MinConstant,
    Conjecture,
    Survey,
    Figure1,
}

struct Outcome {
    subcommand: &'static str,
    inputs: Value,
    results: Vec<Value>,
    exit: i32,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn bigint_value(v: &num_bigint::BigInt) -> Value {
    use num_traits::ToPrimitive;
    v.to_i64().map(Value::from).unwrap_or_else(|| Value::from(v.to_string()))
}

fn load_graphs(input: &GraphInput) -> Result<Vec<CatalogEntry>> {
    let given = [input.graph6.is_some(), input.graph6_file.is_some(), input.edges_file.is_some()];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(Error::Catalog("give exactly one of --graph6, --graph6-file, --edges-file".into()));
    }
    if let Some(text) = &input.graph6 {
        let graph = crate::parse_graph6(text)?;
        return Ok(vec![CatalogEntry { id: text.clone(), graph }]);
    }
    if let Some(path) = &input.graph6_file {
        return catalog::load_catalog(path);
    }
    let path = input.edges_file.as_ref().expect("checked above");
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(vec![CatalogEntry::new(parse_edge_list(&text)?)?])
}

fn restraint_for(spec: &Option<String>, n: usize) -> Result<Restraint> {
    match spec {
        Some(s) => s.parse(),
        None => Ok(Restraint::empty(n)),
    }
}

fn parse_window(s: &str) -> Result<(u64, u64)> {
    let bad = || Error::Restraint(format!("--x-window expects LO:HI, got {s:?}"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(Error::Restraint(format!("--x-window: {lo} > {hi}")));
    }
    Ok((lo, hi))
}

fn verdict_exit(verdicts: &[Verdict]) -> i32 {
    if verdicts.iter().all(|v| v.holds) {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLE
    }
}

fn verify_catalog(path: &Option<PathBuf>, max_n: usize) -> Result<Vec<CatalogEntry>> {
    let entries = match path {
        Some(p) => catalog::load_catalog(p)?,
        None => catalog::connected_le6()?,
    };
    Ok(entries.into_iter().filter(|e| e.graph.n() <= max_n).collect())
}

fn order_range(n: Option<usize>, default: std::ops::RangeInclusive<usize>, cap: std::ops::RangeInclusive<usize>) -> Result<Vec<usize>> {
    let orders: Vec<usize> = match n {
        Some(n) => vec![n],
        None => default.collect(),
    };
    if let Some(&bad) = orders.iter().find(|n| !cap.contains(n)) {
        return Err(Error::TooLarge { n: bad, limit: *cap.end() });
    }
    Ok(orders)
}

fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Poly { input, restraint, check } => {
            let graphs = load_graphs(input)?;
            let mut results = Vec::new();
            for e in &graphs {
                let r = restraint_for(restraint, e.graph.n())?;
                let p = rcp_delcon(&e.graph, &r)?;
                let mut row = json!({
                    "graph6": e.id,
                    "restraint": r.to_string(),
                    "coeffs": p.poly,
                    "threshold": p.threshold,
                    "text": p.poly.to_string(),
                });
                if *check {
                    row["interpolation_agrees"] = json!(rcp_interpolate(&e.graph, &r)? == p);
                }
                results.push(row);
            }
            Ok(Outcome {
                subcommand: "poly",
                inputs: json!({ "graphs": graphs.len(), "restraint": restraint, "check": check }),
                results,
                exit: EXIT_OK,
            })
        }
        Command::Count { input, restraint, x, x_window } => {
            let (lo, hi) = match (x, x_window) {
                (Some(x), None) => (*x, *x),
                (None, Some(w)) => parse_window(w)?,
                _ => return Err(Error::Restraint("give --x or --x-window".into())),
            };
            let graphs = load_graphs(input)?;
            let mut results = Vec::new();
            for e in &graphs {
                let r = restraint_for(restraint, e.graph.n())?;
                for xv in lo..=hi {
                    let c = brute_count(&e.graph, &r, xv)?;
                    results.push(json!({
                        "graph6": e.id,
                        "restraint": r.to_string(),
                        "x": xv,
                        "count": bigint_value(&c),
                    }));
                }
            }
            Ok(Outcome {
                subcommand: "count",
                inputs: json!({ "graphs": graphs.len(), "restraint": restraint, "x_window": [lo, hi] }),
                results,
                exit: EXIT_OK,
            })
        }
        Command::Extremal { input, direction, max_n } => {
            if *max_n > EXTREMAL_CAP {
                return Err(Error::TooLarge { n: *max_n, limit: EXTREMAL_CAP });
            }
            let direction: Direction = direction.parse()?;
            let graphs = load_graphs(input)?;
            let results = graphs
                .iter()
                .map(|e| {
                    let mut report = extremal::extremal_restraints_limited(&e.graph, direction, *max_n)?;
                    report.graph6 = e.id.clone();
                    Ok(to_value(&report))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Outcome {
                subcommand: "extremal",
                inputs: json!({ "graphs": graphs.len(), "direction": direction, "max_n": max_n }),
                results,
                exit: EXIT_OK,
            })
        }
        Command::Verify { claim, n, graph6_file, max_n, expect, fail_fast } => {
            let opts = SearchOptions { fail_fast: *fail_fast };
            let inputs = json!({
                "claim": format!("{claim:?}").to_lowercase(),
                "n": n,
                "graph6_file": graph6_file,
                "max_n": max_n,
                "fail_fast": fail_fast,
            });
            let (results, exit) = match claim {
                Claim::Theorem1 => {
                    let v = order_range(*n, 2..=6, 2..=7)?
                        .into_iter()
                        .map(|k| extremal::verify_theorem1(k, &opts))
                        .collect::<Result<Vec<_>>>()?;
                    (v.iter().map(to_value).collect(), verdict_exit(&v))
                }
                Claim::Theorem2 => {
                    let v = order_range(*n, 2..=6, 2..=7)?
                        .into_iter()
                        .map(|k| extremal::verify_theorem2(k, &opts))
                        .collect::<Result<Vec<_>>>()?;
                    (v.iter().map(to_value).collect(), verdict_exit(&v))
                }
                Claim::Lemma => {
                    let v = order_range(*n, 1..=5, 1..=6)?
                        .into_iter()
                        .map(|k| extremal::verify_lemma_trees(k, &opts))
                        .collect::<Result<Vec<_>>>()?;
                    (v.iter().map(to_value).collect(), verdict_exit(&v))
                }
                Claim::MinConstant => {
                    let cat = verify_catalog(graph6_file, *max_n)?;
                    let v = extremal::verify_min_is_constant(&cat, &opts)?;
                    let exit = verdict_exit(std::slice::from_ref(&v));
                    (vec![to_value(&v)], exit)
                }
                Claim::Conjecture => {
                    let mut cat = verify_catalog(graph6_file, *max_n)?;
                    if graph6_file.is_none() {
                        cat.retain(|e| e.graph.is_bipartite());
                    }
                    let v = extremal::check_conjecture_bipartite(&cat, &opts)?;
                    let exit = verdict_exit(std::slice::from_ref(&v));
                    (vec![to_value(&v)], exit)
                }
                Claim::Survey => {
                    let cat = verify_catalog(graph6_file, *max_n)?;
                    let expected = expect.or((graph6_file.is_none() && *max_n == 6).then_some(2));
                    let findings = extremal::survey_non_minimal_maximizers(&cat)?;
                    let holds = expected.is_none_or(|k| k == findings.len());
                    let v = json!({
                        "claim": "survey",
                        "holds": holds,
                        "graphs_surveyed": cat.len(),
                        "expected_findings": expected,
                        "findings": findings.len(),
                        "graph6": findings.iter().map(|f| f.graph6.clone()).collect::<Vec<_>>(),
                        "reports": to_value(&findings),
                    });
                    (vec![v], if holds { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
                }
                Claim::Figure1 => {
                    let cat = verify_catalog(graph6_file, *max_n)?;
                    let matches = extremal::reconstruct_figure_graph(&cat)?;
                    let holds = !matches.is_empty();
                    let v = json!({
                        "claim": "figure1",
                        "holds": holds,
                        "graphs": matches.iter().map(|m| m.graph6.clone()).collect::<Vec<_>>(),
                        "matches": to_value(&matches),
                    });
                    (vec![v], if holds { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
                }
            };
            Ok(Outcome { subcommand: "verify", inputs, results, exit })
        }
        Command::CatalogCheck { graph6_file, max_n } => {
            let entries = match graph6_file {
                Some(p) => catalog::load_catalog(p)?,
                None => catalog::connected_le6()?,
            };
            catalog::validate_connected_catalog(&entries, *max_n)?;
            let mut per_order = vec![0usize; max_n + 1];
            for e in &entries {
                per_order[e.graph.n()] += 1;
            }
            Ok(Outcome {
                subcommand: "catalog-check",
                inputs: json!({ "graph6_file": graph6_file, "max_n": max_n }),
                results: vec![json!({ "valid": true, "graphs": entries.len(), "per_order": per_order })],
                exit: EXIT_OK,
            })
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn write_csv(out: &mut dyn Write, results: &[Value]) -> std::io::Result<()> {
    let mut headers: Vec<String> = Vec::new();
    for r in results {
        if let Value::Object(m) = r {
            for k in m.keys() {
                if !headers.contains(k) {
                    headers.push(k.clone());
                }
            }
        }
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&headers)?;
    for r in results {
        let empty = Map::new();
        let m = r.as_object().unwrap_or(&empty);
        w.write_record(headers.iter().map(|h| m.get(h).map(scalar).unwrap_or_default()))?;
    }
    w.flush()
}

fn write_text(out: &mut dyn Write, outcome: &Outcome) -> std::io::Result<()> {
    writeln!(out, "{}", outcome.subcommand)?;
    for (i, r) in outcome.results.iter().enumerate() {
        writeln!(out, "[{i}]")?;
        match r {
            Value::Object(m) => {
                for (k, v) in m {
                    writeln!(out, "  {k}: {}", scalar(v))?;
                }
            }
            other => writeln!(out, "  {}", scalar(other))?,
        }
    }
    Ok(())
}

/// Parses `argv`, runs the subcommand, writes the report to `out` and
/// returns the process exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    if cli.jobs == Some(0) {
        let _ = writeln!(err, "rcpoly: --jobs must be at least 1");
        return EXIT_USAGE;
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "rcpoly: {e}");
            return EXIT_USAGE;
        }
    };
    let start = Instant::now();
    let outcome = match pool.install(|| execute(&cli.command)) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "rcpoly: {e}");
            return EXIT_USAGE;
        }
    };
    let elapsed = start.elapsed();
    let written = match cli.format {
        Format::Json => {
            let doc = json!({
                "subcommand": outcome.subcommand,
                "inputs": outcome.inputs,
                "results": outcome.results,
                "timing": { "elapsed_ms": elapsed.as_secs_f64() * 1e3 },
                "tool_version": env!("CARGO_PKG_VERSION"),
            });
            serde_json::to_writer_pretty(&mut *out, &doc)
                .map_err(std::io::Error::other)
                .and_then(|_| writeln!(out))
        }
        Format::Csv => write_csv(out, &outcome.results),
        Format::Text => write_text(out, &outcome),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "rcpoly: {e}");
        return EXIT_USAGE;
    }
    outcome.exit
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
