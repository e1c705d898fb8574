use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use minsep_core::character::{capacity_estimate, frobenius_count_with, CharacterTable};
use minsep_core::enumerate::{enumerate_rg, EnumerateConfig, FaultInjection, RgEntry, BRUTE_FORCE_LIMIT, DEFAULT_CHUNK_SIZE};
use minsep_core::graph::reduce_to_cg;
use minsep_core::io::OutDir;
use minsep_core::rules::{all_type_triples, edge_bounds};
use minsep_core::verify::{run_all, VerifyConfig};
use minsep_core::{Error, GenusTable};

/// Genus at and above which enumeration takes hours.
const LONG_RUN_GENUS: u32 = 4;

#[derive(Parser)]
#[command(name = "minsep", version, about = "Enumerate minimal separating sets on closed orientable surfaces")]
struct Cli {
    /// Output directory for shards, class files and the table.
    #[arg(long, global = true, env = "MINSEP_OUT", default_value = "out")]
    out: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Workers {
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    workers: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate R_g and write one shard per cycle-type triple.
    Enumerate {
        #[arg(long)]
        genus: u32,
        /// Only search triples with this many edges.
        #[arg(long)]
        edges: Option<usize>,
        #[command(flatten)]
        workers: Workers,
        /// Class ranks per work unit.
        #[arg(long, default_value_t = DEFAULT_CHUNK_SIZE as u64, value_parser = clap::value_parser!(u64).range(1..))]
        chunk_size: u64,
        /// Abort a triple whose storage outgrows its estimate more than this many times.
        #[arg(long)]
        max_growth: Option<u32>,
        /// Permit genus 4 and above.
        #[arg(long)]
        allow_long: bool,
    },
    /// Reduce R_0..R_g to the graph classes C_0..C_g.
    Reduce {
        #[arg(long)]
        genus: u32,
        #[command(flatten)]
        workers: Workers,
    },
    /// Build the R, C, L, M table from the class files.
    Count {
        #[arg(long)]
        genus: u32,
    },
    /// Print Frobenius counts and storage estimates per triple.
    Estimate {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        edges: Option<usize>,
    },
    /// Run the property suites.
    Verify {
        /// Largest brin count for the exhaustive searches.
        #[arg(long, default_value_t = 6)]
        max_brins: usize,
        #[command(flatten)]
        workers: Workers,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Fault {
    SkipColorSwap,
}

/// A failed command and its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Capacity { .. } => 3,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(), Failure>;

/// Writes one line to stdout. A closed pipe ends the command quietly.
fn emit(line: fmt::Arguments) -> Outcome {
    let mut stdout = io::stdout().lock();
    writeln!(stdout, "{line}").map_err(|e| match e.kind() {
        io::ErrorKind::BrokenPipe => Failure {
            code: 0,
            message: String::new(),
        },
        _ => Failure {
            code: 2,
            message: format!("stdout: {e}"),
        },
    })
}

macro_rules! say {
    ($($arg:tt)*) => {
        emit(format_args!($($arg)*))?
    };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = OutDir::new(&cli.out);
    let result = match cli.command {
        Command::Enumerate {
            genus,
            edges,
            workers,
            chunk_size,
            max_growth,
            allow_long,
        } => {
            let cfg = EnumerateConfig {
                workers: workers.workers as usize,
                chunk_size: chunk_size as u128,
                edges,
                growth_limit: max_growth,
                faults: FaultInjection::default(),
            };
            enumerate(&out, genus, &cfg, allow_long)
        }
        Command::Reduce { genus, workers } => reduce(&out, genus, workers.workers as usize),
        Command::Count { genus } => count(&out, genus),
        Command::Estimate { genus, edges } => estimate(genus, edges),
        Command::Verify {
            max_brins,
            workers,
            inject_fault,
        } => verify(max_brins, workers.workers as usize, inject_fault),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("minsep: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn check_edges(genus: u32, edges: Option<usize>) -> Outcome {
    if let Some(e) = edges {
        let (lo, hi) = edge_bounds(genus)?;
        if e < lo || e > hi {
            return Err(Error::EdgesOutOfRange { genus, edges: e, lo, hi }.into());
        }
    }
    Ok(())
}

fn enumerate(out: &OutDir, genus: u32, cfg: &EnumerateConfig, allow_long: bool) -> Outcome {
    if genus == 0 {
        if cfg.edges.is_some() {
            return Err(Failure::input("--edges does not apply to genus 0"));
        }
        let manifest = out.write_base_case()?;
        say!("|R_0| = {}", manifest.total);
        return Ok(());
    }
    if genus >= LONG_RUN_GENUS && !allow_long {
        return Err(Failure::input(format!(
            "genus {genus} runs for hours; pass --allow-long to proceed"
        )));
    }
    check_edges(genus, cfg.edges)?;
    let run = enumerate_rg(genus, cfg)?;
    let manifest = out.write_enumeration(&run, cfg.edges)?;
    for t in &manifest.triples {
        say!("{}\t{}", t.key, t.count);
    }
    say!("|R_{genus}| = {}", manifest.total);
    Ok(())
}

/// `R_0`, from disk if enumerated there, otherwise the built-in circle.
fn read_rg(out: &OutDir, g: u32) -> Result<Vec<RgEntry>, Failure> {
    if g == 0 && !out.has_manifest(0) {
        return Ok(vec![RgEntry::circle()]);
    }
    let (manifest, entries) = out.read_shards(g).map_err(|e| match e {
        Error::MissingGenus(g) => Failure::input(format!(
            "no shards for genus {g} under {}; run `minsep enumerate --genus {g}` first",
            out.root().display()
        )),
        other => other.into(),
    })?;
    if let Some(e) = manifest.edges {
        return Err(Failure::input(format!(
            "shards for genus {g} were written with --edges {e}; enumerate the full genus first"
        )));
    }
    Ok(entries)
}

fn reduce(out: &OutDir, genus: u32, workers: usize) -> Outcome {
    let lists = (0..=genus).map(|g| read_rg(out, g)).collect::<Result<Vec<_>, _>>()?;
    let pool = rayon_pool(workers)?;
    let classes = pool.install(|| reduce_to_cg(&lists))?;
    for (g, c) in classes.iter().enumerate() {
        out.write_classes(g as u32, c)?;
        say!("|C_{g}| = {}", c.len());
    }
    Ok(())
}

fn rayon_pool(workers: usize) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Failure {
            code: 3,
            message: format!("cannot start worker pool: {e}"),
        })
}

fn count(out: &OutDir, genus: u32) -> Outcome {
    let mut r = Vec::new();
    let mut c = Vec::new();
    for g in 0..=genus {
        if g == 0 && !out.classes_path(0).is_file() {
            r.push(1);
            c.push(1);
            continue;
        }
        let classes = out.read_classes(g).map_err(|e| match e {
            Error::MissingGenus(g) => Failure::input(format!(
                "no class file for genus {g} under {}; run `minsep reduce --genus {genus}` first",
                out.root().display()
            )),
            other => other.into(),
        })?;
        c.push(classes.len() as u64);
        let total = if g == 0 && !out.has_manifest(0) {
            1
        } else {
            out.read_manifest(g)?.total
        };
        r.push(total);
    }
    let table = GenusTable::build(&r, &c)?;
    out.write_table(&table)?;
    say!("{}", table.to_csv().trim_end());
    Ok(())
}

fn estimate(genus: u32, edges: Option<usize>) -> Outcome {
    if genus == 0 {
        return Err(Error::GenusZero.into());
    }
    check_edges(genus, edges)?;
    let table = CharacterTable::new();
    let mut running: u128 = 0;
    say!("key\tN\testimate\ttotal");
    for t in all_type_triples(genus)?
        .into_iter()
        .filter(|t| edges.is_none_or(|e| t.edges() == e))
    {
        let n = frobenius_count_with(&table, &[t.sigma.clone(), t.alpha.clone(), t.phi.clone()])?;
        let est = capacity_estimate(&table, &t)?;
        running = running.saturating_add(est);
        say!("{}\t{n}\t{est}\t{running}", t.key());
    }
    Ok(())
}

fn verify(max_brins: usize, workers: usize, fault: Option<Fault>) -> Outcome {
    if max_brins > BRUTE_FORCE_LIMIT {
        let f = minsep_core::partition::factorial(max_brins);
        return Err(Error::BruteForceTooLarge {
            max_edges: max_brins,
            pairs: f * f,
            limit: BRUTE_FORCE_LIMIT,
        }
        .into());
    }
    let cfg = VerifyConfig {
        max_brins,
        workers,
        faults: FaultInjection {
            skip_color_swap: matches!(fault, Some(Fault::SkipColorSwap)),
        },
    };
    let reports = run_all(&cfg);
    let mut first_failure = None;
    for r in &reports {
        match &r.counterexample {
            None => say!("PASS {} ({} checks)", r.name, r.checked),
            Some(c) => {
                say!("FAIL {} after {} checks", r.name, r.checked);
                say!("{c}");
                first_failure.get_or_insert(r.name);
            }
        }
    }
    match first_failure {
        None => Ok(()),
        Some(name) => Err(Failure {
            code: 1,
            message: format!("suite {name} failed"),
        }),
    }
}
