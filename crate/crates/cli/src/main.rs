mod config;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use dualcode::bounds::{BoundsTable, Target};
use dualcode::classifier::{self, ClassifyOptions, PipelinePlan, Verdict};
use dualcode::par::Parallelism;
use dualcode::{equivalence, fixtures, metrics, BitMatrix};

use config::Config;

#[derive(Parser)]
#[command(name = "dualcode", version, about = "Classification of binary linear codes by dual distance")]
struct Cli {
    /// TOML file with defaults for the flags below.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify all [n,k] codes with dual distance >= D for n = k..N.
    Classify(ClassifyArgs),
    /// Print count tables for the databases in a directory.
    Report(ReportArgs),
    /// Weight enumerators and distances of a generator matrix.
    Metrics {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Canonical form of a generator matrix.
    Canon {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Decide whether [N,K,D] codes exist.
    Nonexist(NonexistArgs),
    /// Check the bundled [32,15] matrices.
    VerifyFixtures,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    dperp: usize,
    #[arg(long)]
    k: usize,
    #[arg(long = "max-n")]
    max_n: usize,
    /// Also write databases restricted to even codes.
    #[arg(long)]
    even: bool,
    /// Worker threads; 0 uses every core.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Stop once a length has more classes than this.
    #[arg(long = "max-codes")]
    max_codes: Option<usize>,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long)]
    dir: Option<PathBuf>,
    /// Machine-readable `n k dperp count star complete` rows instead of a table.
    #[arg(long)]
    rows: bool,
    /// Recompute canonical forms and dual distances while loading.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct NonexistArgs {
    /// Target as `N,K,D`.
    #[arg(long)]
    target: String,
    #[arg(long = "db-dir")]
    db_dir: Option<PathBuf>,
    /// Classify small missing families on the fly.
    #[arg(long = "desk-scale")]
    desk_scale: bool,
    /// Skip the direct family lookup.
    #[arg(long = "residual-only")]
    residual_only: bool,
    /// File of `n k dhi` upper bounds on the minimum distance.
    #[arg(long)]
    bounds: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
}

fn parallelism(flag: Option<usize>, cfg: &Config) -> Parallelism {
    Parallelism::jobs(flag.or(cfg.jobs).unwrap_or(0))
}

fn read_matrix(path: &Path) -> Result<BitMatrix> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    BitMatrix::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn parse_target(s: &str) -> Result<Target> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("target {s:?} should look like 33,18,8"))?;
    let [n, k, d] = parts[..] else { bail!("target {s:?} should have three entries") };
    Ok(Target { n, k, d })
}

fn classify(args: ClassifyArgs, cfg: &Config) -> Result<ExitCode> {
    let out = args.out.or_else(|| cfg.out.clone()).context("--out is required")?;
    let opts = ClassifyOptions { par: parallelism(args.jobs, cfg), max_codes: args.max_codes.or(cfg.max_codes) };
    let start = Instant::now();
    let (dbs, _) = classifier::classify_dimension_with(args.k, args.dperp, args.max_n, &opts, |db| {
        classifier::save_db(db, &out)?;
        if args.even {
            classifier::save_db(&db.even_subset(), &out)?;
        }
        eprintln!("n = {}: {} classes ({:.2?})", db.params.n, db.count(), start.elapsed());
        Ok(())
    })?;
    print!("{}", classifier::report_table(&dbs).render());
    if dbs.iter().any(|d| !d.complete) {
        println!("stopped early: class-count guard exceeded");
    }
    println!("{} databases written to {} in {:.2?}", dbs.len(), out.display(), start.elapsed());
    Ok(ExitCode::SUCCESS)
}

/// `(k, dperp)` families present in `dir`.
fn families(dir: &Path) -> Result<BTreeSet<(usize, usize)>> {
    let mut out = BTreeSet::new();
    for entry in std::fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))? {
        let name = entry?.file_name().to_string_lossy().into_owned();
        let Some(stem) = name.strip_suffix(".codedb") else { continue };
        if stem.starts_with("even_") {
            continue;
        }
        let fields: Vec<&str> = stem.split('_').collect();
        if let [_, k, d] = fields[..] {
            if let (Some(k), Some(d)) = (k.strip_prefix('k'), d.strip_prefix("dperp")) {
                if let (Ok(k), Ok(d)) = (k.parse(), d.parse()) {
                    out.insert((k, d));
                }
            }
        }
    }
    Ok(out)
}

fn report(args: ReportArgs, cfg: &Config) -> Result<ExitCode> {
    let dir = args.dir.or_else(|| cfg.db_dir.clone()).context("--dir is required")?;
    let verify = args.verify || cfg.verify.unwrap_or(false);
    let fams = families(&dir)?;
    let dperps: BTreeSet<usize> = fams.iter().map(|&(_, d)| d).collect();
    for dperp in dperps {
        let mut dbs = Vec::new();
        for &(k, _) in fams.iter().filter(|&&(_, d)| d == dperp) {
            dbs.extend(classifier::load_family(&dir, k, dperp, false, verify)?);
        }
        let table = classifier::report_table(&dbs);
        if args.rows {
            print!("{}", table.rows());
        } else {
            println!("dual distance >= {dperp}");
            print!("{}", table.render());
            println!();
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn show_metrics(input: &Path) -> Result<ExitCode> {
    let g = read_matrix(input)?;
    let (code, dual) = metrics::enumerators(&g)?;
    println!("n = {}, k = {}, rank = {}", g.cols(), g.rows(), g.rank());
    println!("weight enumerator: {code}");
    println!("minimum distance: {}", code.min_distance());
    println!("dual enumerator: {dual}");
    println!("dual distance: {}", metrics::dual_distance(&g)?);
    println!("even: {}", metrics::is_even(&g));
    println!("contains all-ones: {}", metrics::contains_all_ones(&g)?);
    Ok(ExitCode::SUCCESS)
}

fn canon(input: &Path) -> Result<ExitCode> {
    let g = read_matrix(input)?;
    let c = equivalence::canonize(&g)?;
    println!("{}", c.form);
    print!("{}", c.matrix);
    Ok(ExitCode::SUCCESS)
}

fn nonexist(args: NonexistArgs, cfg: &Config) -> Result<ExitCode> {
    let target = parse_target(&args.target)?;
    let bounds = match args.bounds.or_else(|| cfg.bounds.clone()) {
        Some(p) => {
            let text = std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
            BoundsTable::parse(&text)?
        }
        None => BoundsTable::bundled(),
    };
    let plan = PipelinePlan {
        db_dir: args.db_dir.or_else(|| cfg.db_dir.clone()),
        bounds,
        desk_scale: args.desk_scale || cfg.desk_scale.unwrap_or(false),
        residual_only: args.residual_only,
        verify_dbs: cfg.verify.unwrap_or(false),
        par: parallelism(args.jobs, cfg),
    };
    let (verdict, evidence) = classifier::nonexistence_pipeline(target, &plan)?;
    print!("{evidence}");
    println!("{target}: {verdict}");
    Ok(if verdict == Verdict::Unresolved { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn verify_fixtures() -> Result<ExitCode> {
    let checks = fixtures::verify_fixtures()?;
    let mut ok = true;
    for c in &checks {
        ok &= c.passed;
        let status = if c.passed { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            println!("{status} {}", c.name);
        } else {
            println!("{status} {} ({})", c.name, c.detail);
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    match cli.command {
        Command::Classify(a) => classify(a, &cfg),
        Command::Report(a) => report(a, &cfg),
        Command::Metrics { input } => show_metrics(&input),
        Command::Canon { input } => canon(&input),
        Command::Nonexist(a) => nonexist(a, &cfg),
        Command::VerifyFixtures => verify_fixtures(),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
