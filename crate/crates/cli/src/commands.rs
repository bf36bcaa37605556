//! Command definitions and dispatch. Every command returns an [`Outcome`]
//! instead of printing, so tests can drive the tool in-process.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use mutvis_core::directed::{orient, DirectedDecomposition};
use mutvis_core::generators::{family, random_dh, ExpansionSpec, DEFAULT_WEIGHTS};
use mutvis_core::oracle::{mu_bruteforce, recognize_dh, DEFAULT_MU_CAP};
use mutvis_core::split::decomposition_from_sequence;
use mutvis_core::{Error, Graph, VertexSet};

use crate::bench::{format_table, run_bench, BENCH_WEIGHTS, DEFAULT_RUNS};
use crate::dot::{decomposition_dot, tree_dot};
use crate::edgelist::{read_edge_list, write_edge_list, ParseError};
use crate::report::{analyse, component_vertices};

/// Default oracle cap, overriding the built-in one.
pub const ORACLE_CAP_ENV: &str = "MUTVIS_ORACLE_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_VISIBLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_DH: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "mutvis",
    version,
    about = "Mutual-visibility sets of distance-hereditary graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute μ and a maximum mutual-visibility set.
    Mu(MuArgs),
    /// Print the directed split decomposition as DOT.
    Decompose(DecomposeArgs),
    /// Test whether a vertex set is a mutual-visibility set.
    Check(CheckArgs),
    /// Exhaustive μ on any small graph.
    Oracle(OracleArgs),
    /// Print a generated graph as an edge list.
    Gen(GenArgs),
    /// Time the pipeline on random graphs.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct MuArgs {
    pub file: PathBuf,
    /// Print the full result document as JSON.
    #[arg(long)]
    pub json: bool,
    /// Print only the set, one line, space separated.
    #[arg(long, conflicts_with = "json")]
    pub set_only: bool,
    /// Include phase timings (JSON) or print them to stderr.
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    pub file: PathBuf,
    /// DOT output (the default; accepted for explicitness).
    #[arg(long)]
    pub dot: bool,
    /// Emit the decomposition tree instead of the marked graph.
    #[arg(long)]
    pub tree: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub file: PathBuf,
    /// Vertex ids, separated by spaces or commas.
    #[arg(required = true, num_args = 1..)]
    pub vertices: Vec<String>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub file: PathBuf,
    /// Largest vertex count accepted.
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// A family name, or `random`.
    pub family: String,
    /// Integer family parameters.
    pub params: Vec<String>,
    /// Vertex count for `random`.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Pendant, true-twin and false-twin weights as `a,b,c`.
    #[arg(long)]
    pub weights: Option<String>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_RUNS)]
    pub runs: usize,
    #[arg(long)]
    pub weights: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, message: impl std::fmt::Display) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }

    fn warn(mut self, warnings: &[String]) -> Self {
        let mut text: String = warnings.iter().map(|w| format!("{w}\n")).collect();
        text.push_str(&self.stderr);
        self.stderr = text;
        self
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotDistanceHereditary { .. } => EXIT_NOT_DH,
        Error::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_USAGE,
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::fail(exit_code(&e), e)
    }
}

impl From<ParseError> for Outcome {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::Graph(e) => e.into(),
            other => Outcome::fail(EXIT_USAGE, other),
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    let result = match cli.command {
        Command::Mu(a) => cmd_mu(&a),
        Command::Decompose(a) => cmd_decompose(&a),
        Command::Check(a) => cmd_check(&a),
        Command::Oracle(a) => cmd_oracle(&a, std::env::var(ORACLE_CAP_ENV).ok().as_deref()),
        Command::Gen(a) => cmd_gen(&a),
        Command::Bench(a) => cmd_bench(&a),
    };
    result.unwrap_or_else(|o| o)
}

type CmdResult = std::result::Result<Outcome, Outcome>;

fn load(path: &std::path::Path) -> std::result::Result<Graph, Outcome> {
    read_edge_list(path).map_err(Outcome::from)
}

fn join(vs: &[usize]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn cmd_mu(a: &MuArgs) -> CmdResult {
    let g = load(&a.file)?;
    let analysis = analyse(&g, a.timings)?;
    let doc = &analysis.document;
    let mut out = Outcome::ok(if a.json {
        doc.to_json()
    } else if a.set_only {
        format!("{}\n", join(&doc.mu_set))
    } else {
        format!("{}\n", doc.mu)
    });
    if a.timings && !a.json {
        if let Some(t) = &doc.timings {
            writeln!(
                out.stderr,
                "decompose {:?}, orient {:?}, t-arrows {:?}, algorithm {:?}",
                t.decompose, t.orient, t.t_arrows, t.algorithm
            )
            .unwrap();
        }
    }
    Ok(out.warn(&analysis.warnings))
}

/// Directed decomposition of the largest component, with the original ids
/// of its vertices.
fn decompose_largest(
    g: &Graph,
) -> std::result::Result<(DirectedDecomposition, Vec<usize>, Vec<String>), Outcome> {
    if g.n() == 0 {
        return Err(Error::InvalidArgument("graph has no vertices".into()).into());
    }
    let components = component_vertices(g);
    let mut warnings = Vec::new();
    let labels = if components.len() == 1 {
        (0..g.n()).collect()
    } else {
        let mut best = &components[0];
        for c in &components {
            if c.len() > best.len() {
                best = c;
            }
        }
        warnings.push(format!(
            "warning: graph is disconnected ({} components); using the largest, which has {} vertices",
            components.len(),
            best.len()
        ));
        best.clone()
    };
    let sub = if components.len() == 1 {
        g.clone()
    } else {
        g.induced(&labels)
    };
    let seq = recognize_dh(&sub)?.into_sequence()?;
    let dd = orient(decomposition_from_sequence(&seq)?);
    Ok((dd, labels, warnings))
}

pub fn cmd_decompose(a: &DecomposeArgs) -> CmdResult {
    let g = load(&a.file)?;
    let (dd, labels, warnings) = decompose_largest(&g)?;
    let text = if a.tree {
        tree_dot(&dd)
    } else {
        decomposition_dot(&dd, &labels)
    };
    Ok(Outcome::ok(text).warn(&warnings))
}

fn parse_vertex_list(tokens: &[String]) -> std::result::Result<Vec<usize>, Outcome> {
    let mut out = Vec::new();
    for token in tokens.iter().flat_map(|t| t.split(',')) {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        let v = token
            .parse()
            .map_err(|_| Outcome::fail(EXIT_USAGE, format!("`{token}` is not a vertex id")))?;
        out.push(v);
    }
    Ok(out)
}

/// Lexicographically first pair of `set` that is not visible. Vertices in
/// different components never see each other.
pub fn first_failing_pair(
    g: &Graph,
    set: &VertexSet,
) -> mutvis_core::Result<Option<(usize, usize)>> {
    for &v in set.iter() {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: g.n(),
            });
        }
    }
    if g.is_connected() {
        return g.first_invisible_pair(set);
    }
    let labels = g.components();
    let members = set.as_slice();
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            if labels[u] != labels[v] || !g.pair_visible(set, u, v)? {
                return Ok(Some((u, v)));
            }
        }
    }
    Ok(None)
}

pub fn cmd_check(a: &CheckArgs) -> CmdResult {
    let g = load(&a.file)?;
    let set = VertexSet::new(parse_vertex_list(&a.vertices)?);
    Ok(match first_failing_pair(&g, &set)? {
        None => Outcome::ok("mutual-visibility set\n".into()),
        Some((u, v)) => Outcome {
            code: EXIT_NOT_VISIBLE,
            stdout: format!("not a mutual-visibility set: {u} {v}\n"),
            stderr: String::new(),
        },
    })
}

/// `env_cap` is the value of [`ORACLE_CAP_ENV`], if set.
pub fn cmd_oracle(a: &OracleArgs, env_cap: Option<&str>) -> CmdResult {
    let cap = match (a.cap, env_cap) {
        (Some(c), _) => c,
        (None, Some(text)) => text.trim().parse().map_err(|_| {
            Outcome::fail(
                EXIT_USAGE,
                format!("{ORACLE_CAP_ENV}=`{text}` is not a vertex count"),
            )
        })?,
        (None, None) => DEFAULT_MU_CAP,
    };
    let g = load(&a.file)?;
    if g.n() > cap {
        return Err(Error::CapExceeded { n: g.n(), cap }.into());
    }
    if g.n() == 0 {
        return Err(Error::InvalidArgument("graph has no vertices".into()).into());
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    for labels in component_vertices(&g) {
        let sub = g.induced(&labels);
        let (mu, witness) = mu_bruteforce(&sub, cap)?;
        if best.as_ref().is_none_or(|(b, _)| mu > *b) {
            best = Some((mu, witness.iter().map(|&v| labels[v]).collect()));
        }
    }
    let (mu, witness) = best.expect("non-empty graph");
    Ok(Outcome::ok(format!(
        "mu: {mu}\nwitness: {}\n",
        join(&witness)
    )))
}

fn parse_weights(text: Option<&str>, default: [f64; 3]) -> std::result::Result<[f64; 3], Outcome> {
    let Some(text) = text else {
        return Ok(default);
    };
    let parsed: Vec<f64> = text
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Outcome::fail(EXIT_USAGE, format!("weights `{text}` are not numbers")))?;
    <[f64; 3]>::try_from(parsed).map_err(|_| {
        Outcome::fail(
            EXIT_USAGE,
            format!("weights `{text}` need exactly three values"),
        )
    })
}

pub fn cmd_gen(a: &GenArgs) -> CmdResult {
    let g = if a.family == "random" {
        if !a.params.is_empty() {
            return Err(Outcome::fail(
                EXIT_USAGE,
                "random takes --n and --seed, not positional parameters",
            ));
        }
        let n =
            a.n.ok_or_else(|| Outcome::fail(EXIT_USAGE, "random needs --n"))?;
        let weights = parse_weights(a.weights.as_deref(), DEFAULT_WEIGHTS)?;
        random_dh(&ExpansionSpec::new(a.seed, n).with_weights(weights))?
    } else {
        let params = a
            .params
            .iter()
            .map(|p| p.parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| {
                Outcome::fail(
                    EXIT_USAGE,
                    format!("parameters {:?} must be non-negative integers", a.params),
                )
            })?;
        family(&a.family, &params)?
    };
    Ok(Outcome::ok(write_edge_list(&g)))
}

pub fn cmd_bench(a: &BenchArgs) -> CmdResult {
    let weights = parse_weights(a.weights.as_deref(), BENCH_WEIGHTS)?;
    let rows = run_bench(&a.sizes, a.seed, weights, a.runs)?;
    Ok(Outcome::ok(format_table(&rows)))
}
