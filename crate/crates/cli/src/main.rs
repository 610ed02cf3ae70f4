use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use critgen::certify::{certify_k_colorability, verify_certificate};
use critgen::criticality::{is_k_critical_family, is_k_vertex_critical, CriticalityReport, CriticalityWitness};
use critgen::detect::{all_induced_antiholes, all_induced_c5, is_family_free};
use critgen::enumerate::{generate_all, generate_from_seeds, GenConfig, GenResult};
use critgen::manifest::{load_database, read_graph6, save_run, write_corpus};
use critgen::structure::{
    partition_around_antihole, partition_around_c5, verify_antihole_claims, verify_c5_properties, PropertyReport,
};
use critgen::{canonical_form, graph6, Error, Graph, NamedGraph};

const CACHE_BUDGET_VAR: &str = "GRAPHGEN_CACHE_BUDGET";

#[derive(Parser)]
#[command(name = "critgen", version, about = "Generate and check k-vertex-critical (P5, dart)-free graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustively generate k-vertex-critical graphs in the class.
    Generate {
        #[arg(long)]
        k: usize,
        /// Comma-separated forbidden induced subgraphs.
        #[arg(long, default_value = "p5,dart")]
        family: String,
        /// `auto` for the standard seeds, otherwise graph6 files whose graphs are used as seeds.
        #[arg(long, num_args = 1.., default_value = "auto")]
        seeds: Vec<String>,
        /// Corpus path; a manifest is written next to it. Without it the corpus goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = critgen::MAX_VERTICES)]
        max_order: usize,
    },
    /// Check criticality of each input graph.
    Check {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Mode::Vertex)]
        mode: Mode,
        #[arg(long, default_value = "p5,dart")]
        family: String,
        input: Option<PathBuf>,
    },
    /// Check the partition properties around every induced C5 or odd antihole.
    Partition {
        #[arg(long, value_enum)]
        hole: Hole,
        input: Option<PathBuf>,
    },
    /// Print the canonical graph6 key of each input graph.
    Canon { input: Option<PathBuf> },
    /// Decide k-colorability of each input graph with a checkable certificate.
    Certify {
        #[arg(long)]
        k: usize,
        /// Manifest of a complete (k+1)-vertex-critical corpus.
        #[arg(long)]
        db: PathBuf,
        input: Option<PathBuf>,
    },
    /// Keep only the graphs that are k-critical relative to the family.
    FilterCritical {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "p5,dart")]
        family: String,
        input: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Vertex,
    Family,
}

#[derive(Clone, Copy, ValueEnum)]
enum Hole {
    C5,
    Antihole,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` when some check failed.
fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Generate { k, family, seeds, out, jobs, max_order } => {
            generate(k, &family, &seeds, out.as_deref(), jobs, max_order)
        }
        Command::Check { k, mode, family, input } => {
            let family = parse_family(&family)?;
            per_graph(input.as_deref(), |g, out| {
                let report = match mode {
                    Mode::Vertex => is_k_vertex_critical(g, k),
                    Mode::Family => match is_k_critical_family(g, k, &family) {
                        Ok(r) => r,
                        Err(Error::NotFamilyFree) => {
                            writeln!(out, "FAIL {} not-family-free", graph6::encode(g))?;
                            return Ok(false);
                        }
                        Err(e) => return Err(e.into()),
                    },
                };
                if report.holds() {
                    writeln!(out, "OK {}", graph6::encode(g))?;
                } else {
                    writeln!(out, "FAIL {} {}", graph6::encode(g), describe(&report))?;
                }
                Ok(report.holds())
            })
        }
        Command::Partition { hole, input } => per_graph(input.as_deref(), |g, out| partition(g, hole, out)),
        Command::Canon { input } => per_graph(input.as_deref(), |g, out| {
            writeln!(out, "{}", canonical_form(g))?;
            Ok(true)
        }),
        Command::Certify { k, db, input } => {
            let db = load_database(&db).with_context(|| format!("loading {}", db.display()))?;
            if db.k_plus_1() != k + 1 {
                bail!("database holds {}-vertex-critical graphs; --k {k} needs {}", db.k_plus_1(), k + 1);
            }
            per_graph(input.as_deref(), |g, out| match certify_k_colorability(g, k, &db) {
                Ok((_, cert)) => {
                    if verify_certificate(g, k, &cert, &db) {
                        writeln!(out, "{cert}")?;
                        Ok(true)
                    } else {
                        writeln!(out, "FAIL {} certificate did not verify", graph6::encode(g))?;
                        Ok(false)
                    }
                }
                Err(Error::NotFamilyFree) => {
                    writeln!(out, "FAIL {} not-family-free", graph6::encode(g))?;
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            })
        }
        Command::FilterCritical { k, family, input } => {
            let family = parse_family(&family)?;
            let mut kept = std::collections::BTreeMap::<usize, usize>::new();
            let ok = per_graph(input.as_deref(), |g, out| {
                if is_family_free(g, &family) && is_k_critical_family(g, k, &family)?.holds() {
                    writeln!(out, "{}", graph6::encode(g))?;
                    *kept.entry(g.order()).or_default() += 1;
                }
                Ok(true)
            })?;
            print_histogram(&mut io::stderr(), &kept)?;
            Ok(ok)
        }
    }
}

fn generate(
    k: usize,
    family_arg: &str,
    seeds: &[String],
    out: Option<&Path>,
    jobs: usize,
    max_order: usize,
) -> anyhow::Result<bool> {
    if jobs == 0 {
        bail!("--jobs must be at least 1");
    }
    let family = parse_family(family_arg)?;
    let auto = seeds.len() == 1 && seeds[0] == "auto";
    let mut cfg = if auto {
        GenConfig::new(k)?
    } else {
        let mut loaded = Vec::new();
        for path in seeds {
            loaded.extend(read_seed_file(Path::new(path))?);
        }
        GenConfig::with_seeds(k, loaded)
    };
    cfg.family = family;
    cfg.max_order = max_order;
    cfg.parallel = jobs > 1;
    cfg.cache_budget = match std::env::var(CACHE_BUDGET_VAR) {
        Ok(v) => Some(v.trim().parse().with_context(|| format!("{CACHE_BUDGET_VAR}={v:?} is not a byte count"))?),
        Err(_) => None,
    };
    cfg.validate()?;

    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    let result: GenResult = pool.install(|| if auto { generate_all(&cfg) } else { generate_from_seeds(&cfg) })?;

    let family_label = family_arg.split(',').map(str::trim).collect::<Vec<_>>().join(",");
    match out {
        Some(path) => {
            save_run(path, &result, &family_label, max_order)?;
            print_summary(&mut io::stdout().lock(), &result)?;
        }
        None => {
            write_corpus(&result, BufWriter::new(io::stdout().lock()))?;
            print_summary(&mut io::stderr(), &result)?;
        }
    }
    Ok(!result.truncated)
}

fn print_summary(w: &mut impl Write, r: &GenResult) -> io::Result<()> {
    writeln!(w, "k={}", r.k)?;
    print_histogram(w, &r.counts_by_order)?;
    writeln!(w, "truncated={}", r.truncated)?;
    writeln!(w, "nodes={} cache_hits={}", r.stats.nodes, r.stats.cache_hits)
}

fn print_histogram(w: &mut impl Write, counts: &std::collections::BTreeMap<usize, usize>) -> io::Result<()> {
    writeln!(w, "{:>6} {:>10}", "order", "count")?;
    for (n, c) in counts {
        writeln!(w, "{n:>6} {c:>10}")?;
    }
    writeln!(w, "{:>6} {:>10}", "total", counts.values().sum::<usize>())?;
    if let Some(max) = counts.keys().next_back() {
        writeln!(w, "max_order={max}")?;
    }
    Ok(())
}

fn parse_family(spec: &str) -> anyhow::Result<Vec<Graph>> {
    let mut out = Vec::new();
    for name in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let named: NamedGraph = name.parse()?;
        out.push(named.build()?);
    }
    if out.is_empty() {
        bail!("empty family");
    }
    Ok(out)
}

fn read_seed_file(path: &Path) -> anyhow::Result<Vec<Graph>> {
    let file = File::open(path).with_context(|| format!("opening seed file {}", path.display()))?;
    let mut seeds = Vec::new();
    for (line, g) in read_graph6(BufReader::new(file)) {
        seeds.push(g.with_context(|| format!("{}:{line}", path.display()))?);
    }
    if seeds.is_empty() {
        bail!("seed file {} holds no graphs", path.display());
    }
    Ok(seeds)
}

/// Applies `f` to each graph of the input stream, one result line each.
/// Malformed lines are reported and count as failures.
fn per_graph(
    input: Option<&Path>,
    mut f: impl FnMut(&Graph, &mut dyn Write) -> anyhow::Result<bool>,
) -> anyhow::Result<bool> {
    let reader: Box<dyn BufRead> = match input {
        None => Box::new(BufReader::new(io::stdin().lock())),
        Some(p) if p.as_os_str() == "-" => Box::new(BufReader::new(io::stdin().lock())),
        Some(p) => Box::new(BufReader::new(File::open(p).with_context(|| format!("opening {}", p.display()))?)),
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut all_ok = true;
    for (line, g) in read_graph6(reader) {
        match g {
            Ok(g) => all_ok &= f(&g, &mut out)?,
            Err(e) => {
                writeln!(out, "ERROR line {line}: {e}")?;
                all_ok = false;
            }
        }
    }
    out.flush()?;
    Ok(all_ok)
}

fn describe(r: &CriticalityReport) -> String {
    match &r.witness {
        Some(CriticalityWitness::ChiMismatch { chi }) => format!("chi={chi}"),
        Some(CriticalityWitness::Vertex(v)) => format!("noncritical-vertex={v}"),
        Some(CriticalityWitness::Edges(es)) => {
            let es: Vec<String> = es.iter().map(|(u, v)| format!("{u}-{v}")).collect();
            format!("removable-edges={}", es.join(","))
        }
        None => "unknown".into(),
    }
}

fn join(vs: &[usize]) -> String {
    vs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// `OK <g6> holes=<n>` or `FAIL <g6> hole=<vertices> <first failing line>`.
fn partition(g: &Graph, hole: Hole, out: &mut dyn Write) -> anyhow::Result<bool> {
    let code = graph6::encode(g);
    let mut holes = 0usize;
    let mut check = |c: &[usize], report: critgen::Result<PropertyReport>| -> anyhow::Result<bool> {
        holes += 1;
        let report = match report {
            Ok(r) => r,
            Err(Error::ClassViolation { vertex, neighborhood }) => {
                writeln!(out, "FAIL {code} hole={} class-violation vertex={vertex} neighborhood={}", join(c), join(&neighborhood))?;
                return Ok(false);
            }
            Err(e) => return Err(e.into()),
        };
        if report.all_hold() {
            return Ok(true);
        }
        let text = report.to_string();
        let first = text.lines().find(|l| l.contains("FAIL")).unwrap_or_default();
        writeln!(out, "FAIL {code} hole={} {first}", join(c))?;
        Ok(false)
    };
    match hole {
        Hole::C5 => {
            for c in all_induced_c5(g) {
                if !check(&c, partition_around_c5(g, &c).map(|p| verify_c5_properties(g, &p)))? {
                    return Ok(false);
                }
            }
        }
        Hole::Antihole => {
            let connected = g.is_connected();
            for m in (7..=g.order()).step_by(2) {
                for c in all_induced_antiholes(g, m)? {
                    let report = partition_around_antihole(g, &c).map(|p| verify_antihole_claims(g, &p, connected));
                    if !check(&c, report)? {
                        return Ok(false);
                    }
                }
            }
        }
    }
    writeln!(out, "OK {code} holes={holes}")?;
    Ok(true)
}
