//! Command-line interface to the exact-arithmetic engine.
//!
//! Exit codes: 0 on success, 1 on malformed or out-of-domain input, 2 when
//! an exact verification fails (an invalid hinted decomposition, a violated
//! invariant, an undetermined decomposition search).

use clap::{Args, Parser, Subcommand};
use equigeo::equigeo::{
    equigeodesic_check, equigeodesic_equations, geodesic_check, necessary_condition,
};
use equigeo::error::EngineError;
use equigeo::homogeneous::HomogeneousSpace;
use equigeo::metrics::{build_param_space, MetricParamSpace};
use equigeo::report;
use equigeo::roots::{
    mspace_case, mspace_equigeo_classify, mspace_shape, troots, FlagSpec, Series,
};
use equigeo::scalar::{parse_ratio, Q};
use num_traits::Zero;
use serde_json::Value;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "equigeo",
    about = "Exact computation of isotropy decompositions, invariant metrics \
             and equigeodesic vectors on compact homogeneous spaces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpaceArgs {
    /// JSON file describing the homogeneous space.
    #[arg(long)]
    space: PathBuf,
    /// Seed for the decomposition search and metric sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RootArgs {
    /// Root-system series: A, B, C or D.
    #[arg(long)]
    series: String,
    /// Rank of the root system.
    #[arg(long)]
    rank: usize,
    /// 1-based indices of the simple roots spanning the isotropy part
    /// (comma-separated; omit for a full torus).
    #[arg(long, value_delimiter = ',')]
    pik: Vec<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Isotropy decomposition, equivalence classes and intertwiner types.
    Decompose(SpaceArgs),
    /// Parameter space of invariant metrics, with optional positivity checks.
    Metrics {
        #[command(flatten)]
        space: SpaceArgs,
        /// Parameter vectors to test for positive-definiteness
        /// (comma-separated fractions; repeatable).
        #[arg(long)]
        coeffs: Vec<String>,
    },
    /// Decide whether a vector is equigeodesic and report a witness if not.
    Check {
        #[command(flatten)]
        space: SpaceArgs,
        /// The vector, as comma-separated fractions. Length dim(m) means
        /// adapted m-coordinates; the ambient dimension means ambient
        /// coordinates (projected onto m).
        #[arg(long)]
        vector: String,
        /// Force the ambient interpretation of --vector.
        #[arg(long)]
        ambient: bool,
        /// Number of sampled valid metrics to run the plain geodesic check
        /// against (reported as `geodesic_for`).
        #[arg(long, default_value_t = 5)]
        samples: u64,
    },
    /// The polynomial system cutting out all equigeodesic vectors.
    Equations {
        #[command(flatten)]
        space: SpaceArgs,
        /// Print the equations as plain text instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// t-root classes of a generalized flag manifold.
    Troots(RootArgs),
    /// M-space analysis: combinatorial shape from root data, or the
    /// equigeodesic classification of a vector on a realized pair.
    Mspace {
        /// Root-system series for the combinatorial mode.
        #[arg(long, conflicts_with = "flag", requires = "rank")]
        series: Option<String>,
        /// Rank of the root system.
        #[arg(long)]
        rank: Option<usize>,
        /// 1-based simple-root indices of the isotropy part.
        #[arg(long, value_delimiter = ',')]
        pik: Vec<usize>,
        /// JSON file for the flag manifold G/K of a realized pair.
        #[arg(long, requires = "space", requires = "vector")]
        flag: Option<PathBuf>,
        /// JSON file for the M-space G/K_1 of a realized pair.
        #[arg(long)]
        space: Option<PathBuf>,
        /// Ambient vector of n to classify (comma-separated fractions).
        #[arg(long)]
        vector: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exit_code_for(err: &EngineError) -> u8 {
    match err {
        EngineError::Input(_)
        | EngineError::Shape(_)
        | EngineError::Structure(_)
        | EngineError::Degenerate(_)
        | EngineError::NotApplicable(_) => 1,
        EngineError::Invariant(_)
        | EngineError::DecompositionInvalid(_)
        | EngineError::UndeterminedDecomposition(_) => 2,
    }
}

fn load_space(path: &PathBuf, seed: u64) -> Result<HomogeneousSpace, EngineError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| EngineError::Input(format!("cannot read {}: {e}", path.display())))?;
    equigeo::spec::space_from_str(&text, seed)
}

fn parse_fraction_list(s: &str, ctx: &str) -> Result<Vec<Q>, EngineError> {
    s.split(',')
        .map(|t| {
            parse_ratio(t.trim()).map_err(|e| EngineError::Input(format!("{ctx}: {e}")))
        })
        .collect()
}

/// Resolves a user-supplied vector to ambient coordinates inside m.
fn resolve_vector(
    space: &HomogeneousSpace,
    ps: &MetricParamSpace,
    raw: &str,
    force_ambient: bool,
) -> Result<Vec<Q>, EngineError> {
    let entries = parse_fraction_list(raw, "--vector")?;
    let (dm, dg) = (space.dim_m(), space.algebra.dim);
    let ambient = if force_ambient || (entries.len() == dg && dg != dm) {
        if entries.len() != dg {
            return Err(EngineError::Input(format!(
                "--vector: ambient vector needs {dg} entries, found {}",
                entries.len()
            )));
        }
        space.project_m(&entries)
    } else if entries.len() == dm {
        ps.from_adapted(&entries)
    } else {
        return Err(EngineError::Input(format!(
            "--vector: expected {dm} adapted or {dg} ambient entries, found {}",
            entries.len()
        )));
    };
    if ambient.iter().all(Zero::is_zero) {
        return Err(EngineError::Degenerate(
            "--vector: the m-part of the vector is zero".into(),
        ));
    }
    Ok(ambient)
}

fn parse_series(s: &str) -> Result<Series, EngineError> {
    Series::from_str(s)
        .map_err(|_| EngineError::Input(format!("unknown series `{s}`, expected A, B, C or D")))
}

fn flag_spec(series: &str, rank: usize, pik: &[usize]) -> Result<FlagSpec, EngineError> {
    let system = equigeo::roots::generate_roots(parse_series(series)?, rank)?;
    let pi_k = pik
        .iter()
        .map(|&i| {
            if i == 0 || i > rank {
                Err(EngineError::Input(format!(
                    "--pik: simple-root index {i} out of range 1..={rank}"
                )))
            } else {
                Ok(i - 1)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    FlagSpec::new(system, pi_k)
}

fn emit(out: &Option<PathBuf>, text: String) -> Result<(), EngineError> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| EngineError::Input(format!("cannot write {}: {e}", path.display()))),
    }
}

fn emit_json(out: &Option<PathBuf>, v: &Value) -> Result<(), EngineError> {
    emit(out, report::render(v))
}

fn run(cli: Cli) -> Result<(), EngineError> {
    match cli.command {
        Command::Decompose(args) => {
            let space = load_space(&args.space, args.seed)?;
            emit_json(&args.out, &report::decompose_report(&space))
        }
        Command::Metrics { space: args, coeffs } => {
            let space = load_space(&args.space, args.seed)?;
            let ps = build_param_space(&space)?;
            let sets = coeffs
                .iter()
                .map(|c| {
                    let v = parse_fraction_list(c, "--coeffs")?;
                    if v.len() != ps.dim() {
                        return Err(EngineError::Input(format!(
                            "--coeffs: expected {} entries, found {}",
                            ps.dim(),
                            v.len()
                        )));
                    }
                    Ok(v)
                })
                .collect::<Result<Vec<_>, _>>()?;
            emit_json(&args.out, &report::metrics_report(&space, &ps, &sets))
        }
        Command::Check { space: args, vector, ambient, samples } => {
            let space = load_space(&args.space, args.seed)?;
            let ps = build_param_space(&space)?;
            let x = resolve_vector(&space, &ps, &vector, ambient)?;
            let nec = necessary_condition(&space, &x)?;
            let equi = equigeodesic_check(&space, &ps, &x)?;
            let mut geodesic_for = Vec::new();
            for k in 0..samples {
                let coeffs = ps.sample_valid(args.seed.wrapping_add(k));
                if geodesic_check(&space, &ps, &coeffs, &x)? {
                    geodesic_for.push(k);
                }
            }
            emit_json(
                &args.out,
                &report::check_report(&ps, &x, &nec, &equi, &geodesic_for),
            )
        }
        Command::Equations { space: args, text } => {
            let space = load_space(&args.space, args.seed)?;
            let ps = build_param_space(&space)?;
            let forms = equigeodesic_equations(&space, &ps)?;
            if text {
                emit(&args.out, report::equations_text(&forms) + "\n")
            } else {
                emit_json(&args.out, &report::equations_report(&ps, &forms))
            }
        }
        Command::Troots(args) => {
            let table = troots(&flag_spec(&args.series, args.rank, &args.pik)?)?;
            emit_json(&args.out, &report::troots_report(&table))
        }
        Command::Mspace { series, rank, pik, flag, space, vector, seed, out } => {
            match (series, flag) {
                (Some(series), None) => {
                    let rank = rank.expect("clap enforces --rank with --series");
                    let shape = mspace_shape(&flag_spec(&series, rank, &pik)?)?;
                    emit_json(&out, &report::mspace_shape_report(&shape))
                }
                (None, Some(flag_path)) => {
                    let space_path = space.ok_or_else(|| {
                        EngineError::Input("--flag requires --space".into())
                    })?;
                    let raw = vector.ok_or_else(|| {
                        EngineError::Input("--flag requires --vector".into())
                    })?;
                    let flag = load_space(&flag_path, seed)?;
                    let mspace = load_space(&space_path, seed)?;
                    let x = parse_fraction_list(&raw, "--vector")?;
                    if x.len() != mspace.algebra.dim {
                        return Err(EngineError::Input(format!(
                            "--vector: expected {} ambient entries, found {}",
                            mspace.algebra.dim,
                            x.len()
                        )));
                    }
                    let flag_ps = build_param_space(&flag)?;
                    let ms_ps = build_param_space(&mspace)?;
                    let case = mspace_case(&flag, &mspace)?;
                    let classified =
                        mspace_equigeo_classify(&flag, &flag_ps, &mspace, &x)?;
                    let generic = equigeodesic_check(&mspace, &ms_ps, &x)?.holds;
                    emit_json(
                        &out,
                        &report::mspace_classify_report(case, classified, generic),
                    )
                }
                _ => Err(EngineError::Input(
                    "mspace needs either --series/--rank/--pik or --flag/--space/--vector"
                        .into(),
                )),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
