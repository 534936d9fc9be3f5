//! Command-line front end.
//!
//! [`run`] parses arguments, executes one command and returns everything the
//! process should emit, so the binary stays a thin wrapper and the commands
//! can be exercised in-process.
//!
//! Exit codes: 0 success, 1 "not isomorphic", 64 usage, 65 unreadable or
//! invalid input, 66 failed precondition (disconnected, not conformal),
//! 67 size limit exceeded, 70 internal inconsistency.

use std::fs;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::coloring::{chromatic_index, chromatic_number, col_algorithm, ColorMode, Coloring, ColoringError};
use crate::graphfactor::{factor_graph, FactorError};
use crate::hyperfactor::{factor_hypergraph, HyperfactorError};
use crate::hypergraph::{parse_hypergraph, Graph, Hypergraph, InputKind};
use crate::iso::{are_isomorphic, l2_isomorphic, random_conformal_hypergraph, IsoError};
use crate::product::{graph_product, hyper_product};
use crate::sections::{is_conformal, l2_section, two_section, SectionError};
use crate::Limits;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_ISOMORPHIC: i32 = 1;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INPUT: i32 = 65;
pub const EXIT_PRECONDITION: i32 = 66;
pub const EXIT_LIMIT: i32 = 67;
pub const EXIT_INTERNAL: i32 = 70;

/// What one invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("limit exceeded: {0}")]
    Limit(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Precondition(_) => EXIT_PRECONDITION,
            CliError::Limit(_) => EXIT_LIMIT,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<HyperfactorError> for CliError {
    fn from(e: HyperfactorError) -> Self {
        match e {
            HyperfactorError::Disconnected | HyperfactorError::NotConformal { .. } => {
                CliError::Precondition(e.to_string())
            }
            HyperfactorError::CliqueLimit(_) => CliError::Limit(e.to_string()),
            HyperfactorError::Inconsistent(_) => CliError::Internal(e.to_string()),
        }
    }
}

impl From<FactorError> for CliError {
    fn from(e: FactorError) -> Self {
        match e {
            FactorError::Disconnected => CliError::Precondition(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<SectionError> for CliError {
    fn from(e: SectionError) -> Self {
        match e {
            SectionError::CliqueLimit(_) => CliError::Limit(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<ColoringError> for CliError {
    fn from(e: ColoringError) -> Self {
        match e {
            ColoringError::SizeLimit { .. } => CliError::Limit(e.to_string()),
            ColoringError::Factor(inner) => inner.into(),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<IsoError> for CliError {
    fn from(e: IsoError) -> Self {
        CliError::Limit(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "hyperprod", version, about = "Cartesian products and prime factorization of hypergraphs")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest instance accepted by the exact coloring search.
    #[arg(long, global = true, default_value_t = Limits::default().max_exact_vertices)]
    max_exact_vertices: usize,
    /// Largest number of maximal cliques enumerated by the conformality test.
    #[arg(long, global = true, default_value_t = Limits::default().max_cliques)]
    max_cliques: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Input file (`.hg` text or canonical JSON); `-` reads standard input.
    file: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate, printing the canonical form.
    Validate {
        #[command(flatten)]
        input: Input,
        /// Require every hyperedge to be a pair.
        #[arg(long)]
        as_graph: bool,
    },
    /// Vertex and hyperedge counts, degrees and rank.
    Stats(Input),
    /// The 2-section graph.
    TwoSection(Input),
    /// The 2-section with hyperedge labels on every edge.
    L2Section(Input),
    /// Whether the hyperedges are exactly the maximal cliques of the 2-section.
    Conformal(Input),
    /// Cartesian product of two or more inputs, in the given order.
    Product {
        #[arg(required = true, num_args = 2..)]
        files: Vec<String>,
        #[arg(long)]
        as_graph: bool,
    },
    /// Prime factorization (connected conformal hypergraphs, or connected graphs with --as-graph).
    Factor {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        as_graph: bool,
    },
    /// Minimal weak coloring computed from the prime factors.
    Color(Input),
    /// Exact chromatic number.
    ChromaticNumber {
        #[command(flatten)]
        input: Input,
        /// Strong coloring: all vertices of a hyperedge pairwise distinct.
        #[arg(long)]
        strong: bool,
    },
    /// Exact chromatic index.
    ChromaticIndex(Input),
    /// Isomorphism test with a witness mapping.
    Isomorphic {
        first: String,
        second: String,
        /// Compare labelled 2-sections instead.
        #[arg(long)]
        l2: bool,
    },
    /// Random connected conformal hypergraph.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
    },
}

struct Context<'a> {
    format: Format,
    limits: Limits,
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Context<'_> {
    fn read(&mut self, path: &str) -> Result<String, CliError> {
        if path == "-" {
            if self.stdin_used {
                return Err(CliError::Usage("standard input can be read only once".into()));
            }
            self.stdin_used = true;
            let mut text = String::new();
            self.stdin.read_to_string(&mut text).map_err(|e| CliError::Input(format!("<stdin>: {e}")))?;
            Ok(text)
        } else {
            fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
        }
    }

    fn load(&mut self, path: &str, kind: InputKind) -> Result<Hypergraph, CliError> {
        let text = self.read(path)?;
        let parsed = if text.trim_start().starts_with('{') {
            Hypergraph::from_json(&text)
        } else {
            parse_hypergraph(&text, kind)
        };
        parsed.map_err(|e| CliError::Input(format!("{}: {e}", display_path(path))))
    }

    fn load_graph(&mut self, path: &str) -> Result<Graph, CliError> {
        let h = self.load(path, InputKind::Graph)?;
        Graph::try_from(h).map_err(|e| CliError::Input(format!("{}: {e}", display_path(path))))
    }

    fn emit(&self, json: Value, text: impl FnOnce() -> String) -> String {
        match self.format {
            Format::Json => format!("{json}\n"),
            Format::Text => text(),
        }
    }

    fn emit_hypergraph(&self, h: &Hypergraph) -> String {
        self.emit(h.to_json_value(), || h.to_text())
    }
}

fn display_path(path: &str) -> &str {
    if path == "-" {
        "<stdin>"
    } else {
        path
    }
}

fn coloring_text(f: &Coloring) -> String {
    let mut out = format!("k {}\n", f.used_colors());
    for (v, c) in &f.assignment {
        out.push_str(&format!("{v} {c}\n"));
    }
    out
}

fn execute(cmd: Command, cx: &mut Context) -> Result<(i32, String), CliError> {
    let ok = |s: String| Ok((EXIT_OK, s));
    match cmd {
        Command::Validate { input, as_graph } => {
            let h = if as_graph {
                cx.load_graph(&input.file)?.into_hypergraph()
            } else {
                cx.load(&input.file, InputKind::Hypergraph)?
            };
            ok(cx.emit_hypergraph(&h))
        }
        Command::Stats(input) => {
            let s = cx.load(&input.file, InputKind::Hypergraph)?.stats();
            let json = json!({
                "n": s.n,
                "m": s.m,
                "max_degree": s.max_degree,
                "rank": s.rank,
                "degree": s.degree.iter().map(|(v, d)| (v.to_string(), json!(d))).collect::<serde_json::Map<_, _>>(),
            });
            ok(cx.emit(json, || {
                let mut out = format!("n {}\nm {}\nmax_degree {}\nrank {}\n", s.n, s.m, s.max_degree, s.rank);
                for (v, d) in &s.degree {
                    out.push_str(&format!("degree {v} {d}\n"));
                }
                out
            }))
        }
        Command::TwoSection(input) => {
            let h = cx.load(&input.file, InputKind::Hypergraph)?;
            ok(cx.emit_hypergraph(&two_section(&h)))
        }
        Command::L2Section(input) => {
            let s = l2_section(&cx.load(&input.file, InputKind::Hypergraph)?);
            ok(cx.emit(s.to_json_value(), || s.to_text()))
        }
        Command::Conformal(input) => {
            let h = cx.load(&input.file, InputKind::Hypergraph)?;
            let r = is_conformal(&h, cx.limits.max_cliques)?;
            ok(cx.emit(r.to_json_value(), || match &r.witness {
                None => "conformal true\n".to_string(),
                Some(w) => format!(
                    "conformal false\nwitness {}\n",
                    w.iter().map(|v| v.as_str()).collect::<Vec<_>>().join(" ")
                ),
            }))
        }
        Command::Product { files, as_graph } => {
            let p = if as_graph {
                let gs = files.iter().map(|f| cx.load_graph(f)).collect::<Result<Vec<_>, _>>()?;
                graph_product(&gs).map_err(|e| CliError::Internal(e.to_string()))?.into_hypergraph()
            } else {
                let hs = files
                    .iter()
                    .map(|f| cx.load(f, InputKind::Hypergraph))
                    .collect::<Result<Vec<_>, _>>()?;
                hyper_product(&hs).map_err(|e| CliError::Internal(e.to_string()))?
            };
            ok(cx.emit_hypergraph(&p))
        }
        Command::Factor { input, as_graph } => {
            if as_graph {
                let g = cx.load_graph(&input.file)?;
                let f = factor_graph(&g)?;
                ok(cx.emit(f.to_json_value(), || {
                    factors_text(f.factors.iter().map(|g| g.as_hypergraph()), &f.coords)
                }))
            } else {
                let h = cx.load(&input.file, InputKind::Hypergraph)?;
                let f = factor_hypergraph(&h, &cx.limits)?;
                ok(cx.emit(f.to_json_value(), || factors_text(f.factors.iter(), &f.coords)))
            }
        }
        Command::Color(input) => {
            let h = cx.load(&input.file, InputKind::Hypergraph)?;
            let f = col_algorithm(&h, &cx.limits)?;
            ok(cx.emit(f.to_json_value(), || coloring_text(&f)))
        }
        Command::ChromaticNumber { input, strong } => {
            let h = cx.load(&input.file, InputKind::Hypergraph)?;
            let mode = if strong { ColorMode::Strong } else { ColorMode::Weak };
            let (_, f) = chromatic_number(&h, mode, &cx.limits)?;
            ok(cx.emit(f.to_json_value(), || coloring_text(&f)))
        }
        Command::ChromaticIndex(input) => {
            let h = cx.load(&input.file, InputKind::Hypergraph)?;
            let (q, f) = chromatic_index(&h, &cx.limits)?;
            ok(cx.emit(f.to_json_value(), || {
                let mut out = format!("k {q}\n");
                for (e, c) in &f.assignment {
                    out.push_str(&format!("{} | {c}\n", e.to_line()));
                }
                out
            }))
        }
        Command::Isomorphic { first, second, l2 } => {
            let a = cx.load(&first, InputKind::Hypergraph)?;
            let b = cx.load(&second, InputKind::Hypergraph)?;
            let w = if l2 {
                l2_isomorphic(&l2_section(&a), &l2_section(&b), &cx.limits)?
            } else {
                are_isomorphic(&a, &b, &cx.limits)?
            };
            match w {
                None => Ok((EXIT_NOT_ISOMORPHIC, "not isomorphic\n".to_string())),
                Some(w) => ok(cx.emit(w.to_json_value(), || {
                    w.mapping.iter().map(|(a, b)| format!("{a} {b}\n")).collect()
                })),
            }
        }
        Command::Random { n, p, seed } => {
            if n < 2 {
                return Err(CliError::Usage("--n must be at least 2".into()));
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(CliError::Usage("--p must lie in [0, 1]".into()));
            }
            ok(cx.emit_hypergraph(&random_conformal_hypergraph(n, p, seed)))
        }
    }
}

fn factors_text<'a, I>(factors: I, coords: &std::collections::BTreeMap<crate::VertexId, crate::TupleVertex>) -> String
where
    I: Iterator<Item = &'a Hypergraph>,
{
    let mut out = String::new();
    for (i, f) in factors.enumerate() {
        out.push_str(&format!("# factor {i}\n"));
        out.push_str(&f.to_text());
    }
    out.push_str("# coords\n");
    for (v, t) in coords {
        let parts: Vec<&str> = t.parts().iter().map(|p| p.as_str()).collect();
        out.push_str(&format!("# {v} {}\n", parts.join(" ")));
    }
    out
}

/// Runs one command. `args` includes the program name.
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if code == EXIT_OK {
                CommandResult { exit_code: code, stdout: rendered, stderr: String::new() }
            } else {
                CommandResult { exit_code: code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let limits = Limits {
        max_exact_vertices: cli.max_exact_vertices,
        max_cliques: cli.max_cliques,
        ..Limits::default()
    };
    let mut cx = Context { format: cli.format, limits, stdin, stdin_used: false };
    match execute(cli.command, &mut cx) {
        Ok((code, stdout)) => CommandResult { exit_code: code, stdout, stderr: String::new() },
        Err(e) => CommandResult { exit_code: e.code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
