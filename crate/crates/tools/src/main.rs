//! `quadrics`: command-line front end.
//!
//! Exit codes: 0 success, 1 invariant/audit failure, 2 input or usage error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use quadrics_core::bounds::BoundEvaluator;
use quadrics_core::decompose::{audit, decompose};
use quadrics_core::incidence::incidence_graph;
use quadrics_core::mobius::{count_congruent_pentuples, distinct_cross_ratios, rich_transformations};

use quadrics_tools::formats::{
    classification_tag, crossratio_csv, graph_csv, parse_rational, parse_set, BoundReport,
    CrossRatioSummary, DecompositionJson, InstanceJson, QuadricJson,
};
use quadrics_tools::{experiment, Result, ToolError};

#[derive(Parser)]
#[command(name = "quadrics", version, about = "Exact point-plane incidence toolkit on quadrics")]
struct Cli {
    /// Base seed; commands without internal randomness accept and record it,
    /// and identical invocations always produce byte-identical outputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BetaKappa {
    /// Exponent of the log factor in the general incidence bound, as a
    /// rational string.
    #[arg(long, default_value = "2/11")]
    beta: String,
    /// Exponent of the log factor in the weak incidence bound.
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Print the classification tag of a quadric.
    Classify {
        /// Quadric JSON file.
        #[arg(long)]
        quadric: PathBuf,
    },
    /// Compute the incidence graph of an instance and export it as CSV.
    Incidence {
        /// Points JSON file (a JSON list of point objects).
        #[arg(long)]
        points: PathBuf,
        /// Planes JSON file (a JSON list of plane objects).
        #[arg(long)]
        planes: PathBuf,
        /// Output CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose an instance on a quadric; writes the decomposition JSON
    /// and prints a bound-report CSV line.
    Decompose {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        planes: PathBuf,
        #[arg(long)]
        quadric: PathBuf,
        /// Decomposition JSON output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-audit a previously written decomposition JSON instead of
        /// writing a new one; exits 1 when it no longer matches.
        #[arg(long)]
        verify: Option<PathBuf>,
        #[command(flatten)]
        bk: BetaKappa,
    },
    /// Tabulate k-rich transformations, congruent pentuples, and distinct
    /// cross-ratios of a number set.
    Crossratio {
        /// The set A: a JSON list of rational strings.
        #[arg(long)]
        set: PathBuf,
        /// Smallest tabulated richness (>= 3).
        #[arg(long, default_value_t = 3)]
        kmin: usize,
        /// Refuse sets larger than this (the enumeration is O(n^6)).
        #[arg(long, default_value_t = 30)]
        cap: usize,
        /// Also tabulate affine maps y = alpha x + beta.
        #[arg(long, default_value_t = false)]
        include_affine: bool,
        /// Output CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a sweep of generated instances with full invariant audits.
    Experiment {
        /// Config: a JSON list of instance specs.
        #[arg(long)]
        config: PathBuf,
        /// Report CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for preserved failing instances.
        #[arg(long)]
        fail_dir: Option<PathBuf>,
        #[command(flatten)]
        bk: BetaKappa,
    },
    /// Evaluate the closed-form bounds at given sizes.
    Bounds {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        /// Also evaluate the k-rich count bound at this k (>= 3).
        #[arg(long)]
        k: Option<u64>,
        #[command(flatten)]
        bk: BetaKappa,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(ToolError::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(ToolError::Audit(m)) => {
            eprintln!("audit failure: {m}");
            ExitCode::from(1)
        }
    }
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| ToolError::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_or_print(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| ToolError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn parse_beta(s: &str) -> Result<(i64, u64)> {
    let r = parse_rational(s)?;
    let num = i64::try_from(r.numer().clone())
        .map_err(|_| ToolError::Input(format!("--beta numerator out of range: {s}")))?;
    let den = u64::try_from(r.denom().clone())
        .map_err(|_| ToolError::Input(format!("--beta denominator out of range: {s}")))?;
    Ok((num, den))
}

fn load_instance(points: &PathBuf, planes: &PathBuf) -> Result<InstanceJson> {
    let points: Vec<quadrics_tools::formats::PointJson> = serde_json::from_str(&read(points)?)?;
    let planes: Vec<quadrics_tools::formats::PlaneJson> = serde_json::from_str(&read(planes)?)?;
    Ok(InstanceJson { points, planes })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Classify { quadric } => {
            let qj: QuadricJson = serde_json::from_str(&read(&quadric)?)?;
            let v = qj.to_quadric()?;
            let class = v.classify()?;
            println!("{}", classification_tag(&class));
            Ok(ExitCode::SUCCESS)
        }
        Command::Incidence { points, planes, out } => {
            let (p, h) = load_instance(&points, &planes)?.to_instance()?;
            let g = incidence_graph(&p, &h)?;
            write_or_print(&out, &graph_csv(&g))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { points, planes, quadric, out, verify, bk } => {
            let beta = parse_beta(&bk.beta)?;
            let (p, h) = load_instance(&points, &planes)?.to_instance()?;
            let qj: QuadricJson = serde_json::from_str(&read(&quadric)?)?;
            let v = qj.to_quadric()?;
            let graph = incidence_graph(&p, &h)?;
            let d = decompose(&p, &h, &v)?;
            let messages = audit(&d, &p, &h, &v, &graph);

            if let Some(prev_path) = verify {
                let prev: DecompositionJson = serde_json::from_str(&read(&prev_path)?)?;
                let (residual, factors, apex) = prev.to_parts()?;
                if residual != d.residual || factors != d.factors || apex != d.apex_incidences {
                    return Err(ToolError::Audit(format!(
                        "{} does not match a fresh decomposition",
                        prev_path.display()
                    )));
                }
            } else {
                let json =
                    serde_json::to_string_pretty(&DecompositionJson::from_decomposition(&d))?;
                write_or_print(&out, &(json + "\n"))?;
            }

            let mut ev = BoundEvaluator::new();
            let report = BoundReport::measure(&d, p.len(), h.len(), &mut ev, beta, bk.kappa);
            println!("{}", BoundReport::CSV_HEADER);
            println!("{}", report.csv_row());

            if messages.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                Err(ToolError::Audit(messages.join("; ")))
            }
        }
        Command::Crossratio { set, kmin, cap, include_affine, out } => {
            let a = parse_set(&read(&set)?)?;
            if a.len() > cap {
                return Err(ToolError::Input(format!(
                    "set has {} elements, above the cap {cap} (raise --cap to force)",
                    a.len()
                )));
            }
            let report = rich_transformations(&a, kmin, include_affine)?;
            if !report.histogram_consistent() {
                return Err(ToolError::Audit("richness histogram inconsistent".into()));
            }
            let mut ev = BoundEvaluator::new();
            write_or_print(&out, &crossratio_csv(&report, a.len(), &mut ev))?;
            let summary = CrossRatioSummary {
                n: a.len(),
                transformations: report.transformations.len(),
                q: if a.len() >= 5 { Some(count_congruent_pentuples(&a)?) } else { None },
                distinct_cross_ratios: if a.len() >= 4 {
                    Some(distinct_cross_ratios(&a)?)
                } else {
                    None
                },
            };
            println!("{}", serde_json::to_string(&summary)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Experiment { config, out, fail_dir, bk } => {
            let beta = parse_beta(&bk.beta)?;
            let mut specs = experiment::parse_config(&read(&config)?)?;
            for spec in &mut specs {
                spec.seed = spec.seed.wrapping_add(cli.seed);
            }
            let report = experiment::run_experiment(
                &specs,
                fail_dir.as_deref(),
                beta,
                bk.kappa,
            )?;
            write_or_print(&out, &report.csv())?;
            if report.any_failure {
                let detail: Vec<String> = report
                    .rows
                    .iter()
                    .filter(|r| !r.audit_ok)
                    .flat_map(|r| r.audit_messages.clone())
                    .collect();
                Err(ToolError::Audit(detail.join("; ")))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Bounds { m, n, k, bk } => {
            let beta = parse_beta(&bk.beta)?;
            let mut ev = BoundEvaluator::new();
            let b = ev.bound_general(m, n, beta.0, beta.1);
            println!("bound_general,{}", ev.to_decimal_string(&b));
            let b = ev.bound_quadric(m, n);
            println!("bound_quadric,{}", ev.to_decimal_string(&b));
            let b = ev.bound_weak(m, n, bk.kappa);
            println!("bound_weak,{}", ev.to_decimal_string(&b));
            if let Some(k) = k {
                if k < 3 {
                    return Err(ToolError::Input("--k must be >= 3".into()));
                }
                let b = ev.bound_ngek(n, k);
                println!("bound_ngek,{}", ev.to_decimal_string(&b));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
