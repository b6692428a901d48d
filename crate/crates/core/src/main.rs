use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use log::{debug, warn};
use serde_json::json;

use kcover::covering::{find_covering_with_stats, verify_certificate, CoverConfig, CoverOutcome, CoveringCertificate};
use kcover::dot::to_dot;
use kcover::embed::{find_embedding, Engine, SearchConfig, Surface};
use kcover::graph::{parse_graph6, parse_name, write_graph6, Graph};
use kcover::kuratowski::DEFAULT_POOL_LIMIT;
use kcover::obstruction::{generate_obstructions, write_catalog};
use kcover::suite::{run_suite, Tier};
use kcover::Error;

// Like println!, but a closed stdout (e.g. `| head`) is not a panic.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "kcover", version, about = "Surface embeddings, obstructions and Kuratowski coverings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a graph embeds in a surface.
    Embed {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        surface: Surface,
        #[arg(long)]
        json: bool,
        /// Give up after this many search nodes per connected piece.
        #[arg(long)]
        node_limit: Option<u64>,
        #[arg(long)]
        cache_cap: Option<usize>,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Generate every obstruction of one order for a surface.
    Obstructions {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        surface: Surface,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Search for a Kuratowski covering and write its certificate.
    Cover {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        gtilde: usize,
        #[arg(long, default_value = "cert.json")]
        out: PathBuf,
        /// Also write DOT diagrams of the members and the failing unions.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_POOL_LIMIT)]
        pool_limit: usize,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Re-check a covering certificate from scratch.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Run the staged acceptance pipeline.
    Corpus {
        #[arg(long)]
        suite: Tier,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        jobs: Jobs,
    },
}

#[derive(Args)]
struct GraphArg {
    /// Graph name (K8-K3, K3,3, ...), graph6 string, or @file holding either.
    #[arg(long)]
    graph: String,
}

#[derive(Args)]
struct Jobs {
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

impl Jobs {
    fn install(&self) {
        if let Some(n) = self.jobs {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
                warn!("could not size the thread pool: {e}");
            }
        }
    }
}

fn load_graph(arg: &str) -> Result<Graph, Error> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Unsupported(format!("reading {path}: {e}")))?
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .unwrap_or("")
            .to_string(),
        None => arg.trim().to_string(),
    };
    match parse_name(&text) {
        Ok(g) => Ok(g),
        Err(name_err) => parse_graph6(&text).map_err(|_| name_err),
    }
}

fn cache_file() -> Option<PathBuf> {
    std::env::var_os("KCOVER_CACHE_DIR").map(|d| Path::new(&d).join("memo.tsv"))
}

fn load_cache(engine: &Engine) {
    let Some(path) = cache_file() else { return };
    let Ok(text) = std::fs::read_to_string(&path) else { return };
    let entries = text.lines().filter_map(|line| {
        let mut it = line.split('\t');
        let g = parse_graph6(it.next()?).ok()?;
        let s: Surface = it.next()?.parse().ok()?;
        let r: bool = it.next()?.parse().ok()?;
        Some((g, s, r))
    });
    engine.preload(entries);
    debug!("loaded {} cached results from {}", engine.stats().memo_entries, path.display());
}

fn save_cache(engine: &Engine) {
    let Some(path) = cache_file() else { return };
    let mut text = String::new();
    for (g6, s, r) in engine.memo_entries() {
        text.push_str(&format!("{g6}\t{s}\t{r}\n"));
    }
    let written = path.parent().map_or(Ok(()), std::fs::create_dir_all).and_then(|_| std::fs::write(&path, text));
    if let Err(e) = written {
        warn!("could not write {}: {e}", path.display());
    }
}

fn fail(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match cli.command {
        Command::Embed { graph, surface, json, node_limit, cache_cap, jobs } => {
            jobs.install();
            let g = match load_graph(&graph.graph) {
                Ok(g) => g,
                Err(e) => return fail(e),
            };
            let engine = Engine::new(SearchConfig { node_limit, cache_cap, ..SearchConfig::default() });
            load_cache(&engine);
            let t = Instant::now();
            let result = match engine.embeds(&g, surface) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            let elapsed = t.elapsed();
            save_cache(&engine);
            let stats = engine.stats();
            if json {
                let witness = if result && g.is_connected() {
                    find_embedding(&g, surface, node_limit).ok().flatten()
                } else {
                    None
                };
                let out = json!({
                    "graph": graph.graph,
                    "graph6": write_graph6(&g),
                    "surface": surface,
                    "embeds": result,
                    "elapsed_ms": elapsed.as_secs_f64() * 1e3,
                    "nodes": stats.nodes,
                    "embedding": witness,
                });
                out!("{}", serde_json::to_string_pretty(&out).expect("json"));
            } else {
                out!("{result}");
                out!("elapsed {:.3}s, {} search nodes", elapsed.as_secs_f64(), stats.nodes);
            }
            if result {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Obstructions { order, surface, out, jobs } => {
            jobs.install();
            let engine = Engine::new(SearchConfig::default());
            load_cache(&engine);
            let records = match generate_obstructions(&engine, order, surface) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            save_cache(&engine);
            match write_catalog(&out, order, surface, &records) {
                Ok((g6, meta)) => {
                    for r in &records {
                        match &r.known_as {
                            Some(name) => out!("{} {} ({name})", r.catalog_id, r.graph6),
                            None => out!("{} {}", r.catalog_id, r.graph6),
                        }
                    }
                    out!("count {}", records.len());
                    out!("wrote {} and {}", g6.display(), meta.display());
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::Cover { graph, gtilde, out, dot, pool_limit, jobs } => {
            jobs.install();
            let g = match load_graph(&graph.graph) {
                Ok(g) => g,
                Err(e) => return fail(e),
            };
            let config = CoverConfig { pool_limit, ..CoverConfig::default() };
            let engine = Engine::new(config.search.clone());
            load_cache(&engine);
            let t = Instant::now();
            let (outcome, stats) = match find_covering_with_stats(&engine, &g, gtilde, &config) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            save_cache(&engine);
            eprintln!(
                "pool {} members, {} search nodes, {} pair and {} triple checks, {:.3}s",
                stats.pool_size,
                stats.nodes,
                stats.pair_checks,
                stats.triple_checks,
                t.elapsed().as_secs_f64()
            );
            match outcome {
                CoverOutcome::Found(cert) => {
                    if let Err(e) = std::fs::write(&out, cert.to_json()) {
                        return fail(format!("writing {}: {e}", out.display()));
                    }
                    if let Some(dir) = dot {
                        if let Err(e) = write_diagrams(&dir, &g, &cert) {
                            return fail(format!("writing diagrams: {e}"));
                        }
                    }
                    out!("covering with {} members written to {}", cert.members.len(), out.display());
                    ExitCode::SUCCESS
                }
                CoverOutcome::NoCovering { pool_size } => {
                    out!("no covering among {pool_size} Kuratowski subgraphs");
                    ExitCode::from(3)
                }
                CoverOutcome::PoolLimitReached { pool_size } => {
                    out!("no covering among the first {pool_size} Kuratowski subgraphs (pool limit reached)");
                    ExitCode::from(3)
                }
            }
        }
        Command::Verify { cert } => {
            let text = match std::fs::read_to_string(&cert) {
                Ok(t) => t,
                Err(e) => return fail(format!("reading {}: {e}", cert.display())),
            };
            match verify_certificate(&text) {
                Ok(report) if report.pass => {
                    out!("pass");
                    ExitCode::SUCCESS
                }
                Ok(report) => {
                    out!("fail");
                    for v in &report.violations {
                        out!("  {v}");
                    }
                    ExitCode::from(1)
                }
                Err(e) => fail(e),
            }
        }
        Command::Corpus { suite, json, jobs } => {
            jobs.install();
            let results = run_suite(suite);
            if json {
                out!("{}", serde_json::to_string_pretty(&results).expect("json"));
            } else {
                for r in &results {
                    out!("{r}");
                }
            }
            if results.iter().all(|r| r.pass) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}

/// One DOT file per member and per union that fails its surface.
fn write_diagrams(dir: &Path, g: &Graph, cert: &CoveringCertificate) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let members = cert.member_subgraphs().map_err(std::io::Error::other)?;
    for (i, m) in members.iter().enumerate() {
        let title = format!("G{} ({})", i + 1, m.kind);
        std::fs::write(dir.join(format!("member-{}.dot", i + 1)), to_dot(g, &title, &m.edges, false))?;
    }
    for r in cert.pair_results.iter().chain(&cert.triple_results) {
        if r.embeds {
            continue;
        }
        let edges: Vec<(usize, usize)> = r.members.iter().flat_map(|&i| members[i].edges.iter().copied()).collect();
        let label: Vec<String> = r.members.iter().map(|i| (i + 1).to_string()).collect();
        let title = format!("G{} fails {}", label.join("+G"), r.surface);
        let file = format!("union-{}-{}.dot", label.join("-"), r.surface);
        std::fs::write(dir.join(file), to_dot(g, &title, &edges, true))?;
    }
    Ok(())
}
