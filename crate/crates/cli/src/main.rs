use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use degree_ramsey::arrowing::{
    brute_force_arrowing, decide_arrowing, decide_arrowing_parallel, verify_coloring, ArrowVerdict,
    SearchBudget,
};
use degree_ramsey::bounds::{
    bound_star, bound_tree_spider, bound_tree_upper, cycle_bounds, kmn_expected_copies,
    kmn_expected_upper, kmn_lower_bound, kmn_upper_constant, monte_carlo_kmn, BoundReport,
};
use degree_ramsey::construct::{
    bipartite_double_cover, high_girth_regular, one_factorization, regular_bipartite_supergraph,
    star_free_coloring,
};
use degree_ramsey::format::{
    parse_coloring, parse_graph, serialize_coloring, serialize_embedding, serialize_factorization,
    serialize_graph, serialize_peel, serialize_witness,
};
use degree_ramsey::graph::Graph;
use degree_ramsey::pattern::{make_pattern_graph, parse_pattern, PatternSpec};
use degree_ramsey::patterns::{embed_tree, kst_find, peel_dense_core, EmbedOutcome};
use degree_ramsey::pipelines::{
    all_pass, verify_lemma1, verify_lemma6, verify_theorem1_mc, verify_theorem2, verify_theorem3,
    Check,
};

const EXIT_USAGE: u8 = 3;
const EXIT_DATA: u8 = 4;

/// A command line that parsed but makes no sense.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Parser)]
#[command(
    name = "degree-ramsey",
    version,
    about = "Arrowing search, constructions and bounds for degree Ramsey numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether every s-coloring of the host has a monochromatic pattern.
    /// Exit 0: arrows, 1: does not arrow, 2: unknown.
    Arrow(ArrowArgs),
    /// Colorings produced by constructions.
    #[command(subcommand)]
    Color(ColorCommand),
    /// Build graphs.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Grow a copy of a tree in a host greedily. Exit 1 if it gets stuck.
    Embed {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        root_degree: Option<usize>,
    },
    /// Peel a graph down to its dense core.
    Peel {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Search a bipartite graph for K_{m,n} (m on side A). Exit 1 if absent.
    Kst {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(short)]
        m: usize,
        #[arg(short)]
        n: usize,
    },
    /// Evaluate a bound: star N S | tree-spider K S | tree-upper DELTA S |
    /// kmn-expected N M NN S | kmn-lower N M S | kmn-constant M S |
    /// cycle M S [N] | kmn-mc N M NN S TRIALS [SEED]
    Bounds {
        name: String,
        args: Vec<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Run a constructive argument end to end and print one CHECK line per check.
    #[command(subcommand)]
    VerifyTheorem(TheoremCommand),
}

#[derive(Args)]
struct ArrowArgs {
    #[arg(long)]
    host: PathBuf,
    #[arg(long)]
    pattern: String,
    #[arg(long)]
    colors: usize,
    #[arg(long, default_value_t = 50_000_000)]
    budget_nodes: u64,
    #[arg(long, default_value_t = 600.0)]
    budget_seconds: f64,
    /// Enumerate all colorings instead of searching (at most 10^7).
    #[arg(long)]
    oracle: bool,
    /// Write the certificate coloring here instead of stdout.
    #[arg(long)]
    cert_out: Option<PathBuf>,
    /// Check a certificate file instead of searching. Exit 1 if it is a
    /// valid certificate, 2 if it contains a monochromatic copy.
    #[arg(long, conflicts_with_all = ["oracle", "cert_out"])]
    verify_cert: Option<PathBuf>,
    /// Worker threads for the parallel search (1 = sequential search).
    #[arg(long)]
    threads: Option<usize>,
    /// Parallel search returns the same certificate as the sequential one.
    #[arg(long)]
    deterministic: bool,
}

#[derive(Subcommand)]
enum ColorCommand {
    /// Color a bipartite host so no vertex meets STAR-1 edges of one color.
    StarFree {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        colors: usize,
        #[arg(long)]
        star: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// A simple D-regular graph of girth at least G.
    HighGirthRegular {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        girth: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// The bipartite double cover G x K2.
    DoubleCover {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// A D-regular bipartite multigraph containing the input.
    Supergraph {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Split a regular bipartite multigraph into perfect matchings.
    Factorize {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum TheoremCommand {
    /// Star formula in both directions.
    Lemma1 {
        #[arg(long, default_value_t = 20)]
        hosts: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Spider with K legs of length 2 in a regular bipartite high-girth host.
    Theorem2 {
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        colors: usize,
        #[arg(long, default_value_t = 30)]
        colorings: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Any tree in a double cover of a high-girth regular graph.
    Theorem3 {
        /// Tree file; defaults to the path on 5 vertices.
        #[arg(long)]
        tree: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        colors: usize,
        #[arg(long, default_value_t = 50)]
        random: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Expected monochromatic K_{m,n} counts and a Monte Carlo run on K_N.
    #[command(name = "theorem1-mc")]
    Theorem1Mc {
        #[arg(long = "big-n", default_value_t = 6)]
        big_n: u64,
        #[arg(short, default_value_t = 2)]
        m: u64,
        #[arg(short, default_value_t = 2)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        colors: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// K_{m,n} threshold and search on random subgraphs of K_{M,N}.
    Lemma6 {
        #[arg(long = "big-m", default_value_t = 4)]
        big_m: usize,
        #[arg(long = "big-n", default_value_t = 7)]
        big_n: usize,
        #[arg(short, default_value_t = 2)]
        p: usize,
        #[arg(short, default_value_t = 2)]
        m: usize,
        #[arg(short, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// `--seed`, else `RAMSEY_SEED`, else 0.
fn resolve_seed(seed: Option<u64>) -> Result<u64> {
    if let Some(s) = seed {
        return Ok(s);
    }
    match std::env::var("RAMSEY_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| {
            usage(format!(
                "RAMSEY_SEED must be an unsigned integer, got `{v}`"
            ))
        }),
        Err(_) => Ok(0),
    }
}

fn arrow(args: ArrowArgs, out: &mut dyn Write) -> Result<u8> {
    let host = read_graph(&args.host)?;
    let pattern = parse_pattern(&args.pattern).map_err(|e| usage(format!("pattern: {e}")))?;
    if args.colors == 0 {
        return Err(usage("--colors must be positive"));
    }
    if let Some(path) = &args.verify_cert {
        let col = parse_coloring(&read(path)?, host.edge_count())
            .with_context(|| format!("parsing {}", path.display()))?;
        if col.colors() > args.colors {
            bail!(
                "certificate uses {} colors, more than --colors {}",
                col.colors(),
                args.colors
            );
        }
        return Ok(if verify_coloring(&host, &col, &pattern) {
            writeln!(out, "VALID certificate: no monochromatic {pattern}")?;
            1
        } else {
            writeln!(
                out,
                "INVALID certificate: contains a monochromatic {pattern}"
            )?;
            2
        });
    }
    if args.budget_nodes == 0 || args.budget_seconds <= 0.0 {
        return Err(usage("budgets must be positive"));
    }
    let budget = SearchBudget::new(args.budget_nodes, args.budget_seconds);
    let verdict = if args.oracle {
        brute_force_arrowing(&host, &pattern, args.colors)?
    } else {
        match args.threads {
            Some(0) => return Err(usage("--threads must be positive")),
            Some(t) if t > 1 => rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()?
                .install(|| {
                    decide_arrowing_parallel(
                        &host,
                        &pattern,
                        args.colors,
                        budget,
                        args.deterministic,
                    )
                }),
            _ => decide_arrowing(&host, &pattern, args.colors, budget),
        }
    };
    match &verdict {
        ArrowVerdict::Arrows { nodes_explored } => {
            writeln!(out, "ARROWS nodes={nodes_explored}")?;
        }
        ArrowVerdict::NotArrows { certificate } => {
            writeln!(out, "NOT_ARROWS")?;
            let text = serialize_coloring(certificate);
            match &args.cert_out {
                Some(path) => write_file(path, &text)?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        ArrowVerdict::Unknown { budget_spent } => {
            writeln!(out, "UNKNOWN nodes={budget_spent}")?;
        }
    }
    Ok(verdict.exit_code() as u8)
}

fn color(cmd: ColorCommand, out: &mut dyn Write) -> Result<u8> {
    let ColorCommand::StarFree {
        host,
        colors,
        star,
        out: path,
    } = cmd;
    let h = read_graph(&host)?;
    let col = star_free_coloring(&h, colors, star)?;
    debug_assert!(verify_coloring(&h, &col, &PatternSpec::Star(star)));
    write_file(&path, &serialize_coloring(&col))?;
    writeln!(out, "wrote {} edge colors to {}", col.len(), path.display())?;
    Ok(0)
}

fn construct(cmd: ConstructCommand, out: &mut dyn Write) -> Result<u8> {
    let text = match cmd {
        ConstructCommand::HighGirthRegular {
            degree,
            girth,
            seed,
        } => serialize_graph(&high_girth_regular(degree, girth, resolve_seed(seed)?)?),
        ConstructCommand::DoubleCover { input } => {
            serialize_graph(&bipartite_double_cover(&read_graph(&input)?))
        }
        ConstructCommand::Supergraph { input, degree } => {
            serialize_witness(&regular_bipartite_supergraph(&read_graph(&input)?, degree)?)
        }
        ConstructCommand::Factorize { input } => {
            serialize_factorization(&one_factorization(&read_graph(&input)?)?)
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(0)
}

fn embed(host: &Path, tree: &Path, root_degree: Option<usize>, out: &mut dyn Write) -> Result<u8> {
    let h = read_graph(host)?;
    let t = read_graph(tree)?;
    match embed_tree(&h, &t, root_degree)? {
        EmbedOutcome::Embedded(e) => {
            out.write_all(serialize_embedding(&e).as_bytes())?;
            Ok(0)
        }
        EmbedOutcome::NoRoot { required_degree } => {
            writeln!(out, "STUCK no host vertex of degree >= {required_degree}")?;
            Ok(1)
        }
        EmbedOutcome::Stuck {
            tree_vertex,
            host_vertex,
        } => {
            writeln!(out, "STUCK tree vertex {tree_vertex} at host vertex {host_vertex} has no free neighbour")?;
            Ok(1)
        }
    }
}

fn kst(input: &Path, m: usize, n: usize, out: &mut dyn Write) -> Result<u8> {
    let g = read_graph(input)?;
    match kst_find(&g, m, n)? {
        Some(cert) => {
            let join = |xs: &[usize]| {
                xs.iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            writeln!(out, "left {}", join(&cert.left))?;
            writeln!(out, "right {}", join(&cert.right))?;
            Ok(0)
        }
        None => {
            writeln!(out, "NONE")?;
            Ok(1)
        }
    }
}

fn expect_args<const N: usize>(name: &str, args: &[u64], optional: usize) -> Result<[u64; N]> {
    if args.len() + optional < N || args.len() > N {
        return Err(usage(format!(
            "bounds {name} takes {} arguments, got {}",
            N - optional,
            args.len()
        )));
    }
    let mut fixed = [u64::MAX; N];
    fixed[..args.len()].copy_from_slice(args);
    Ok(fixed)
}

fn bounds(name: &str, args: &[u64], json: bool, out: &mut dyn Write) -> Result<u8> {
    let reports: Vec<BoundReport> = match name {
        "star" => {
            let [n, s] = expect_args(name, args, 0)?;
            vec![bound_star(n, s)]
        }
        "tree-spider" => {
            let [k, s] = expect_args(name, args, 0)?;
            vec![bound_tree_spider(k, s)?]
        }
        "tree-upper" => {
            let [d, s] = expect_args(name, args, 0)?;
            vec![bound_tree_upper(d, s)?]
        }
        "kmn-expected" => {
            let [big_n, m, n, s] = expect_args(name, args, 0)?;
            vec![
                kmn_expected_upper(big_n, m, n, s)?,
                kmn_expected_copies(big_n, m, n, s)?,
            ]
        }
        "kmn-lower" => {
            let [n, m, s] = expect_args(name, args, 0)?;
            vec![kmn_lower_bound(n, m, s)?]
        }
        "kmn-constant" => {
            let [m, s] = expect_args(name, args, 0)?;
            vec![kmn_upper_constant(m, s)?]
        }
        "cycle" => {
            let [m, s, n] = expect_args(name, args, 1)?;
            cycle_bounds(m, s, (n != u64::MAX).then_some(n))?
        }
        "kmn-mc" => {
            let [big_n, m, n, s, trials, seed] = expect_args(name, args, 1)?;
            let seed = resolve_seed((seed != u64::MAX).then_some(seed))?;
            monte_carlo_kmn(big_n, m, n, s, trials, seed)?.to_reports()
        }
        other => return Err(usage(format!("unknown bound `{other}`"))),
    };
    for r in &reports {
        if json {
            writeln!(out, "{}", serde_json::to_string(r)?)?;
        } else {
            writeln!(out, "{}", r.to_tsv())?;
        }
    }
    Ok(0)
}

fn theorem(cmd: TheoremCommand, out: &mut dyn Write) -> Result<u8> {
    let checks: Vec<Check> = match cmd {
        TheoremCommand::Lemma1 { hosts, seed } => {
            let pairs: Vec<(usize, usize)> = [2, 3]
                .iter()
                .flat_map(|&s| [2, 3, 4].map(move |n| (s, n)))
                .collect();
            verify_lemma1(&pairs, hosts, resolve_seed(seed)?)
        }
        TheoremCommand::Theorem2 {
            k,
            colors,
            colorings,
            seed,
        } => verify_theorem2(k, colors, colorings, resolve_seed(seed)?),
        TheoremCommand::Theorem3 {
            tree,
            colors,
            random,
            seed,
        } => {
            let t = match tree {
                Some(path) => read_graph(&path)?,
                None => make_pattern_graph(&PatternSpec::Path(5)),
            };
            verify_theorem3(&t, colors, random, resolve_seed(seed)?)
        }
        TheoremCommand::Theorem1Mc {
            big_n,
            m,
            n,
            colors,
            trials,
            seed,
        } => verify_theorem1_mc(big_n, m, n, colors, trials, resolve_seed(seed)?),
        TheoremCommand::Lemma6 {
            big_m,
            big_n,
            p,
            m,
            n,
            samples,
            seed,
        } => verify_lemma6(big_m, big_n, p, m, n, samples, resolve_seed(seed)?),
    };
    for c in &checks {
        writeln!(out, "{c}")?;
    }
    Ok(if all_pass(&checks) { 0 } else { 1 })
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<u8> {
    match cli.command {
        Command::Arrow(args) => arrow(args, out),
        Command::Color(cmd) => color(cmd, out),
        Command::Construct(cmd) => construct(cmd, out),
        Command::Embed {
            host,
            tree,
            root_degree,
        } => embed(&host, &tree, root_degree, out),
        Command::Peel { input } => {
            out.write_all(serialize_peel(&peel_dense_core(&read_graph(&input)?)?).as_bytes())?;
            Ok(0)
        }
        Command::Kst { input, m, n } => kst(&input, m, n, out),
        Command::Bounds { name, args, json } => bounds(&name, &args, json, out),
        Command::VerifyTheorem(cmd) => theorem(cmd, out),
    }
}

/// Runs the tool on `argv` (program name first) and returns the exit code.
fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                EXIT_USAGE
            } else {
                EXIT_DATA
            }
        }
    }
}

fn main() -> ExitCode {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    ExitCode::from(code)
}
