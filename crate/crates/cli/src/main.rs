use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use qkd_core::matrix::{profiles_from_csv, profiles_to_csv};
use qkd_core::{
    build_matrix, build_matrix_aligned, build_system, count_colorings, load_catalog, profile_all,
    standard_quandle_list, summarize, verify_against_reference, verify_quandle, ColoringProfile,
    Convention, FieldQuandle, KnotCatalog, ProfileOptions, ReferenceMatrix, TableAlignment,
};

const VERSION: &str = concat!(
    env!("CARGO_PKG_VERSION"),
    " (default convention: odd-forward)"
);

/// Quandle coloring invariants of knots up to ten crossings.
#[derive(Parser, Debug)]
#[command(name = "qkd", version = VERSION)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Catalog file (`NAME = tokens` per line); defaults to the bundled one.
    #[arg(long, global = true, env = "QKD_CATALOG")]
    catalog: Option<PathBuf>,

    /// Direction rule tying crossing-label parity to the coloring equation.
    #[arg(long, global = true, value_enum, default_value_t = ConventionArg::OddForward)]
    convention: ConventionArg,

    /// Worker threads for batch counting [default: available parallelism].
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,

    #[arg(long, global = true, value_enum, default_value_t = SolverArg::Both)]
    solver: SolverArg,

    /// Separator for row output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Report progress on stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    OddForward,
    OddBackward,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::OddForward => Convention::OddForward,
            ConventionArg::OddBackward => Convention::OddBackward,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SolverArg {
    Propagate,
    Linear,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Tsv,
}

impl Format {
    fn sep(self) -> &'static str {
        match self {
            Format::Csv => ",",
            Format::Tsv => "\t",
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect the standard quandle list.
    Quandles {
        #[command(subcommand)]
        action: QuandlesCmd,
    },
    /// Inspect the knot catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
    /// Count colorings of one knot.
    Color {
        knot: String,
        /// 1-based quandle index, or `all`.
        #[arg(long, short, default_value = "all")]
        quandle: String,
    },
    /// Batch profile and matrix runs.
    Matrix {
        #[command(subcommand)]
        action: MatrixCmd,
    },
}

#[derive(Subcommand, Debug)]
enum QuandlesCmd {
    /// Print `index<TAB>name<TAB>size` for each quandle.
    List,
    /// Check the quandle axioms exhaustively.
    Verify,
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    /// Print `index<TAB>name<TAB>crossings`.
    List,
    /// Print the Gauss code of one knot.
    Show { knot: String },
}

#[derive(Subcommand, Debug)]
enum MatrixCmd {
    /// Write profiles.csv and matrix.csv.
    Build {
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Compare the computed matrix with a reference CSV.
    Verify {
        /// Reference `i,j,quandle` CSV; defaults to the bundled tables.
        #[arg(long)]
        reference: Option<PathBuf>,
        /// Reuse a profiles CSV instead of recounting.
        #[arg(long)]
        profiles: Option<PathBuf>,
        /// Apply the known relabelling of the bundled tables (quandles 9/10,
        /// knots 10_83/10_86) before comparing.
        #[arg(long)]
        aligned: bool,
    },
    /// Print pair, zero and Fenn-Rourke-inconclusive counts.
    Summary {
        #[arg(long)]
        profiles: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    /// Exit 1.
    Check(String),
    /// Exit 2.
    Usage(String),
    /// Exit 3.
    Io(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

impl From<qkd_core::Error> for Failure {
    fn from(e: qkd_core::Error) -> Self {
        match e {
            qkd_core::Error::Io { .. } => Failure::Io(anyhow::anyhow!(e.to_string())),
            qkd_core::Error::Solver { .. } => Failure::Check(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.config.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();

    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Check(msg) | Failure::Usage(msg) => eprintln!("qkd: {msg}"),
                Failure::Io(e) => eprintln!("qkd: {e:#}"),
            }
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let cfg = &cli.config;
    match &cli.command {
        Command::Quandles { action } => cmd_quandles(action),
        Command::Catalog { action } => cmd_catalog(cfg, action),
        Command::Color { knot, quandle } => cmd_color(cfg, knot, quandle),
        Command::Matrix { action } => cmd_matrix(cfg, action),
    }
}

fn cmd_quandles(action: &QuandlesCmd) -> CmdResult {
    let list = standard_quandle_list();
    match action {
        QuandlesCmd::List => {
            print!("{}", list.to_tsv());
            Ok(())
        }
        QuandlesCmd::Verify => {
            let mut failed = 0;
            for (i, q) in list.iter() {
                let report = verify_quandle(q)?;
                if report.passes() {
                    println!("{i}\t{}\tok", q.name());
                } else {
                    failed += 1;
                    for (axiom, witness) in report.failures() {
                        println!("{i}\t{}\t{axiom} fails at {witness}", q.name());
                    }
                }
            }
            if failed > 0 {
                Err(Failure::Check(format!(
                    "{failed} quandle(s) fail the axioms"
                )))
            } else {
                Ok(())
            }
        }
    }
}

fn catalog(cfg: &RunConfig) -> Result<KnotCatalog, Failure> {
    Ok(load_catalog(cfg.catalog.as_deref())?)
}

fn cmd_catalog(cfg: &RunConfig, action: &CatalogCmd) -> CmdResult {
    let cat = catalog(cfg)?;
    match action {
        CatalogCmd::List => {
            for (i, e) in cat.entries().iter().enumerate() {
                println!("{}\t{}\t{}", i + 1, e.name, e.code.crossing_count());
            }
        }
        CatalogCmd::Show { knot } => {
            let e = cat
                .by_name(knot)
                .ok_or_else(|| Failure::Usage(format!("unknown knot {knot:?}")))?;
            println!("{} = {}", e.name, e.code.to_catalog_string());
        }
    }
    Ok(())
}

fn cmd_color(cfg: &RunConfig, knot: &str, which: &str) -> CmdResult {
    let cat = catalog(cfg)?;
    let entry = cat
        .by_name(knot)
        .ok_or_else(|| Failure::Usage(format!("unknown knot {knot:?}")))?;
    let list = standard_quandle_list();
    let indices: Vec<usize> = if which == "all" {
        (1..=list.len()).collect()
    } else {
        let i: usize = which
            .parse()
            .ok()
            .filter(|i| (1..=list.len()).contains(i))
            .ok_or_else(|| {
                Failure::Usage(format!(
                    "bad quandle index {which:?} (expected 1..={} or all)",
                    list.len()
                ))
            })?;
        vec![i]
    };

    let sys = build_system(&entry.code, cfg.convention.into());
    let sep = cfg.format.sep();
    let mut disagreements = Vec::new();
    for i in indices {
        let q = list.get(i).expect("index checked");
        let field = FieldQuandle::new(q).ok();
        if field.is_none() && cfg.solver != SolverArg::Propagate {
            log::warn!(
                "{} has no field structure; using propagation only",
                q.name()
            );
        }
        let propagated =
            (cfg.solver != SolverArg::Linear || field.is_none()).then(|| count_colorings(&sys, q));
        let linear = match (&field, cfg.solver) {
            (Some(fq), SolverArg::Linear | SolverArg::Both) => {
                Some(qkd_core::linear::count_system_linear(&sys, fq))
            }
            _ => None,
        };
        let primary = propagated.or(linear).expect("at least one solver ran");
        let mut row = format!(
            "{}{sep}{i}{sep}{}{sep}{}",
            entry.name, primary.count, primary.nontrivial
        );
        if cfg.solver == SolverArg::Both {
            let lin = linear.map_or("-".to_string(), |l| l.count.to_string());
            row.push_str(sep);
            row.push_str(&lin);
            if let (Some(p), Some(l)) = (propagated, linear) {
                if p.count != l.count {
                    disagreements.push(i);
                }
            }
        }
        println!("{row}");
    }
    if disagreements.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "solvers disagree for quandle(s) {disagreements:?}"
        )))
    }
}

fn compute_profiles(cfg: &RunConfig, cat: &KnotCatalog) -> Result<Vec<ColoringProfile>, Failure> {
    let list = standard_quandle_list();
    let options = ProfileOptions {
        jobs: cfg.jobs.map_or(0, usize::from),
        cross_check: cfg.solver == SolverArg::Both,
    };
    Ok(profile_all(
        cat,
        list.as_slice(),
        cfg.convention.into(),
        options,
    )?)
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::Io)
}

fn write_file(path: &Path, contents: &str) -> CmdResult {
    fs::write(path, contents)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(Failure::Io)
}

fn profiles_for(cfg: &RunConfig, cached: Option<&Path>) -> Result<Vec<ColoringProfile>, Failure> {
    match cached {
        Some(path) => Ok(profiles_from_csv(&read_file(path)?)?),
        None => compute_profiles(cfg, &catalog(cfg)?),
    }
}

fn cmd_matrix(cfg: &RunConfig, action: &MatrixCmd) -> CmdResult {
    match action {
        MatrixCmd::Build { out_dir } => {
            let profiles = compute_profiles(cfg, &catalog(cfg)?)?;
            let matrix = build_matrix(&profiles);
            fs::create_dir_all(out_dir)
                .with_context(|| format!("creating {}", out_dir.display()))
                .map_err(Failure::Io)?;
            let profiles_path = out_dir.join("profiles.csv");
            let matrix_path = out_dir.join("matrix.csv");
            write_file(&profiles_path, &profiles_to_csv(&profiles))?;
            write_file(&matrix_path, &matrix.to_csv())?;
            eprintln!(
                "wrote {} and {}",
                profiles_path.display(),
                matrix_path.display()
            );
            Ok(())
        }
        MatrixCmd::Verify {
            reference,
            profiles,
            aligned,
        } => {
            let profiles = profiles_for(cfg, profiles.as_deref())?;
            let quandles = profiles.first().map_or(0, |p| p.counts.len());
            let reference = match reference {
                Some(path) => {
                    ReferenceMatrix::parse(&read_file(path)?, profiles.len(), quandles as u8)?
                }
                None => ReferenceMatrix::bundled(),
            };
            let matrix = if *aligned {
                build_matrix_aligned(&profiles, &TableAlignment::bundled_reference())
            } else {
                build_matrix(&profiles)
            };
            let diff = verify_against_reference(&matrix, &reference)?;
            for m in &diff.mismatches {
                println!("{},{},{},{}", m.i, m.j, m.computed, m.reference);
            }
            println!(
                "{} mismatches ({} checked, {} not in reference)",
                diff.mismatches.len(),
                diff.checked,
                diff.unchecked
            );
            if diff.is_clean() {
                Ok(())
            } else {
                Err(Failure::Check(format!(
                    "{} entries differ from the reference",
                    diff.mismatches.len()
                )))
            }
        }
        MatrixCmd::Summary { profiles } => {
            let profiles = profiles_for(cfg, profiles.as_deref())?;
            let sizes = standard_quandle_list().sizes();
            if profiles.iter().any(|p| p.counts.len() != sizes.len()) {
                return Err(Failure::Usage(format!(
                    "profiles must have {} counts per knot",
                    sizes.len()
                )));
            }
            let matrix = build_matrix(&profiles);
            println!("{}", summarize(&matrix, &profiles, &sizes));
            Ok(())
        }
    }
}
