use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use tree_ecc::oracle::Budget;
use tree_ecc::{diameter_report, ecc_all, EmbeddingMode, SubsetEccIndex, Tree};
use tree_ecc_cli::gen::{self, TreeShape};
use tree_ecc_cli::io::{self, fmt_weight, ParseError};
use tree_ecc_cli::{bench, verify};

#[derive(Parser)]
#[command(name = "tree-ecc", version, about = "Eccentricities on trees, tree systems and cube-free median graphs")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Compare results with the brute-force oracle.
    #[arg(long, global = true)]
    check: bool,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for query batches (0 = all cores).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Eccentricity of every point of an embedding.
    Ecc {
        embedding: PathBuf,
        /// Override the mode declared in the header.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// Weighted subset eccentricities on a tree.
    SubsetEcc {
        tree: PathBuf,
        queries: PathBuf,
        /// Node weights; all zero when omitted.
        #[arg(long)]
        alpha: Option<PathBuf>,
    },
    /// Diameter of a cube-free median graph.
    MedianDiameter { graph: PathBuf },
    /// Generate an instance.
    Gen {
        #[arg(value_enum)]
        kind: Kind,
        /// Main size (nodes, rows, first factor, clique size, trees).
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Second size (columns, second factor, independent vertices, tree size).
        #[arg(long, default_value_t = 10)]
        m: usize,
        /// Point, query or cut count.
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value = "uniform")]
        shape: String,
    },
    /// Check an input file against the oracles. The kind is detected from
    /// the contents.
    Verify {
        input: PathBuf,
        #[arg(long)]
        alpha: Option<PathBuf>,
        /// Subset queries for a tree, query points for a system.
        #[arg(long)]
        queries: Option<PathBuf>,
    },
    /// Timing series.
    Bench {
        #[arg(value_enum)]
        suite: Suite,
        /// Smaller sizes.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    System,
    Cartesian,
    Strong,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Tree,
    Alpha,
    Queries,
    Grid,
    TreeProduct,
    GatedSub,
    Glued,
    System,
    SplitEmbedding,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Subset,
    Max,
    Median,
}

struct CliError {
    class: &'static str,
    msg: String,
}

impl CliError {
    fn new(class: &'static str, msg: impl Into<String>) -> Self {
        CliError { class, msg: msg.into() }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::new("io", format!("{}: {e}", path.display())))
}

fn parsed<T>(path: &Path, r: std::result::Result<T, ParseError>) -> Result<T> {
    r.map_err(|e| CliError::new("parse", format!("{}: {e}", path.display())))
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::new("input", e.to_string())
}

fn check_report(r: verify::Report, verbose: bool) -> Result<()> {
    if !r.ok() {
        return Err(CliError::new("check-failed", r.to_string().replace('\n', "; ")));
    }
    if verbose {
        eprintln!("{r}");
    }
    Ok(())
}

fn oracle_err(e: verify::VerifyError) -> CliError {
    match e {
        verify::VerifyError::Oracle(e) => CliError::new("oracle", e.to_string()),
        verify::VerifyError::Index(e) => CliError::new("input", e),
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::new("usage", e.to_string()))
}

fn run(cli: &Cli) -> Result<String> {
    let mut out = String::new();
    match &cli.cmd {
        Cmd::Ecc { embedding, mode } => {
            let mut emb = parsed(embedding, io::parse_embedding(&read(embedding)?))?;
            if let Some(m) = mode {
                emb.mode = match m {
                    Mode::System => EmbeddingMode::System,
                    Mode::Cartesian => EmbeddingMode::Cartesian,
                    Mode::Strong => EmbeddingMode::Strong,
                };
            }
            let r = ecc_all(&emb).map_err(input_err)?;
            if cli.check {
                check_report(verify::embedding(&emb, Budget::DEFAULT).map_err(oracle_err)?, cli.verbose)?;
            }
            let _ = writeln!(out, "# point raw estimate");
            for (x, (raw, est)) in r.raw.iter().zip(&r.estimate).enumerate() {
                let _ = writeln!(out, "{x} {raw} {est}");
            }
            let _ = writeln!(out, "diameter {} {}", r.diameter_raw, r.diameter_estimate);
            let _ = writeln!(out, "radius {} {}", r.radius_raw, r.radius_estimate);
        }
        Cmd::SubsetEcc { tree, queries, alpha } => {
            let t = parsed(tree, io::parse_tree(&read(tree)?))?;
            let a = match alpha {
                Some(p) => parsed(p, io::parse_alpha(&read(p)?, t.node_count()))?,
                None => vec![0.0; t.node_count()],
            };
            let qs = parsed(queries, io::parse_queries(&read(queries)?, t.node_count()))?;
            let idx = SubsetEccIndex::preprocess(&t, &a).map_err(input_err)?;
            let vals: Vec<_> = pool(cli.jobs)?.install(|| {
                qs.par_iter().map(|q| idx.query(&q.nodes, &q.beta)).collect::<Vec<_>>()
            });
            for (q, v) in qs.iter().zip(vals) {
                let v = v.map_err(|e| CliError::new("input", format!("{}: line {}: {e}", queries.display(), q.line)))?;
                let _ = writeln!(out, "{}", fmt_weight(v));
            }
            if cli.check {
                check_report(verify::subset_queries(&t, &a, &qs, Budget::DEFAULT).map_err(oracle_err)?, cli.verbose)?;
            }
        }
        Cmd::MedianDiameter { graph } => {
            let g = parsed(graph, io::parse_graph(&read(graph)?))?;
            let r = diameter_report(&g).map_err(|e| CliError::new("not-in-class", e.to_string()))?;
            if cli.check {
                let want = tree_ecc::oracle::diameter(&g, Budget::DEFAULT)
                    .map_err(|e| CliError::new("oracle", e.to_string()))?;
                if want != r.diameter {
                    return Err(CliError::new("check-failed", format!("diameter {}, oracle {want}", r.diameter)));
                }
            }
            let _ = writeln!(out, "{}", r.diameter);
            if cli.verbose {
                let o = |x: Option<u32>| x.map_or("-".to_string(), |v| v.to_string());
                for l in &r.levels {
                    let b = &l.best;
                    let _ = writeln!(
                        out,
                        "# depth {} subproblems {} vertices {} largest {} center {} panels {} separated {} neighboring {} two-neighboring {}",
                        l.depth, l.subproblems, l.vertices, l.largest, b.center_ecc,
                        o(b.panels), o(b.separated), o(b.neighboring), o(b.two_neighboring)
                    );
                }
            }
        }
        Cmd::Gen { kind, n, m, count, shape } => {
            let shape = TreeShape::parse(shape)
                .ok_or_else(|| CliError::new("usage", format!("unknown tree shape `{shape}`")))?;
            out = generate(cli.seed, *kind, *n, *m, *count, shape)?;
        }
        Cmd::Verify { input, alpha, queries } => {
            let r = verify_file(cli.seed, input, alpha.as_deref(), queries.as_deref())?;
            let _ = writeln!(out, "{r}");
            if !r.ok() {
                emit(cli, &out)?;
                return Err(CliError::new("check-failed", format!("{}: {} of {} checks failed", input.display(), r.failed, r.checked)));
            }
        }
        Cmd::Bench { suite, quick } => {
            out = match suite {
                Suite::Subset => {
                    let exps: Vec<u32> = if *quick { (10..=13).collect() } else { (13..=18).collect() };
                    bench::table("subset-ecc, |U| = 16", &bench::subset_series(cli.seed, &exps, 2, 16, 2000, 3))
                }
                Suite::Max => bench::table(
                    "max index, n = number of trees",
                    &bench::max_series(cli.seed, &[1, 2, 4, 8], if *quick { 200 } else { 2000 }, 1000, 20000, 3),
                ),
                Suite::Median => {
                    let sides: &[(usize, usize)] = if *quick {
                        &[(16, 16), (16, 32), (32, 32)]
                    } else {
                        &[(25, 50), (50, 50), (50, 100), (100, 100), (100, 200)]
                    };
                    bench::table("median diameter on tree products", &bench::median_series(cli.seed, sides, 3))
                }
            };
        }
    }
    Ok(out)
}

fn generate(seed: u64, kind: Kind, n: usize, m: usize, count: usize, shape: TreeShape) -> Result<String> {
    let mut rng = gen::rng(seed);
    let positive = |x: usize, what: &str| {
        if x == 0 {
            Err(CliError::new("usage", format!("{what} must be positive")))
        } else {
            Ok(x)
        }
    };
    Ok(match kind {
        Kind::Tree => io::write_tree(&gen::random_tree(&mut rng, positive(n, "--n")?, shape)),
        Kind::Alpha => io::write_alpha(&gen::random_alpha(&mut rng, positive(n, "--n")?, 16, 0.1)),
        Kind::Queries => io::write_queries(&gen::random_queries(&mut rng, positive(n, "--n")?, count, m, 16)),
        Kind::Grid => io::write_graph(&gen::grid(positive(n, "--n")?, positive(m, "--m")?)),
        Kind::TreeProduct => {
            let a = gen::random_tree(&mut rng, positive(n, "--n")?, shape);
            let b = gen::random_tree(&mut rng, positive(m, "--m")?, shape);
            io::write_graph(&gen::tree_product(&a, &b))
        }
        Kind::GatedSub => {
            let a = gen::random_tree(&mut rng, positive(n, "--n")?, shape);
            let b = gen::random_tree(&mut rng, positive(m, "--m")?, shape);
            let g = gen::tree_product(&a, &b);
            io::write_graph(&gen::gated_subgraph(&mut rng, &g, count, 1).1)
        }
        Kind::Glued => io::write_graph(&gen::glued_products(&mut rng, positive(count, "--count")?, positive(n, "--n")?)),
        Kind::System => {
            let (sys, s) = gen::random_system(&mut rng, positive(n, "--n")?, positive(m, "--m")?, positive(count, "--count")?);
            io::write_system(&sys, &s)
        }
        Kind::SplitEmbedding => {
            let (_, emb) = gen::split_embedding(&mut rng, positive(n, "--n")?, m);
            io::write_embedding(&emb)
        }
    })
}

enum Detected {
    Tree,
    System,
    Embedding,
    Graph,
}

fn detect(text: &str) -> Detected {
    let mut lines = io::Lines::new(text);
    let first = lines.next().map(|l| l.1).unwrap_or_default();
    if first.first().and_then(|w| io::parse_mode(w)).is_some() {
        return Detected::Embedding;
    }
    if first.len() == 2 {
        return Detected::Graph;
    }
    match lines.next() {
        Some((_, toks)) if toks.len() == 1 => Detected::System,
        _ => Detected::Tree,
    }
}

fn verify_file(seed: u64, input: &Path, alpha: Option<&Path>, queries: Option<&Path>) -> Result<verify::Report> {
    let text = read(input)?;
    let mut rng = gen::rng(seed);
    let b = Budget::DEFAULT;
    let r = match detect(&text) {
        Detected::Embedding => {
            let emb = parsed(input, io::parse_embedding(&text))?;
            verify::embedding(&emb, b)
        }
        Detected::Graph => verify::median_graph(&parsed(input, io::parse_graph(&text))?, b),
        Detected::System => {
            let (sys, s) = parsed(input, io::parse_system(&text))?;
            let qs = match queries {
                Some(p) => parsed(p, io::parse_points(&read(p)?, &sys))?,
                None => {
                    let mut q = gen::random_points(&mut rng, sys.trees(), 20);
                    q.extend(s.iter().cloned());
                    q
                }
            };
            verify::odot_queries(&sys, &s, &qs, b)
        }
        Detected::Tree => {
            let t: Tree = parsed(input, io::parse_tree(&text))?;
            let n = t.node_count();
            let a = match alpha {
                Some(p) => parsed(p, io::parse_alpha(&read(p)?, n))?,
                None => vec![0.0; n],
            };
            let qs = match queries {
                Some(p) => parsed(p, io::parse_queries(&read(p)?, n))?,
                None => gen::random_queries(&mut rng, n, 50, 8.min(n), 16)
                    .into_iter()
                    .map(|(nodes, beta)| io::SubsetQuery { line: 0, nodes, beta })
                    .collect(),
            };
            verify::subset_queries(&t, &a, &qs, b)
        }
    };
    r.map_err(oracle_err)
}

fn emit(cli: &Cli, out: &str) -> Result<()> {
    match &cli.out {
        Some(p) => std::fs::write(p, out).map_err(|e| CliError::new("io", format!("{}: {e}", p.display()))),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|out| emit(&cli, &out)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {}", e.class, e.msg);
            ExitCode::FAILURE
        }
    }
}
