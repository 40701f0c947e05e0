//! `mobius`: subset-lattice transforms, evidence combination, decomposition
//! checks, Möbius functions, and cost benchmarks over JSON files.
//!
//! Exit codes: 0 on success, 2 on total conflict under `--normalize`, 1 on
//! any other error. Diagnostics go to stderr as `error[code]: message`.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mobius::bench::{benchmark_table, cost_table, ratio_table, run_benchmark, BenchArms};
use mobius::counter::OpCount;
use mobius::evidence::{
    combine_to_plausibility_counted, dempster_fast_counted, dempster_naive_counted, normalize,
    CombinationResult,
};
use mobius::io;
use mobius::poset::{mobius_function, mobius_function_entries, MobiusMethod};
use mobius::setfun::{validate_mass, Kind, SetFunction, MAX_ELEMENTS, WARN_ELEMENTS};
use mobius::transform::{
    complement_plausibility_counted, fast_transform_counted, naive_transform_counted, TransformKind,
};
use mobius::Error;

/// Environment variable capping the frame size accepted by the CLI.
const MAX_N_VAR: &str = "MOBIUS_MAX_N";

#[derive(Parser)]
#[command(
    name = "mobius",
    version,
    about = "Fast subset-lattice transforms and Dempster-Shafer combination"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Fast,
    Naive,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FromKind {
    Mass,
    Bel,
    Q,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ToKind {
    Mass,
    Bel,
    Q,
    Pl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Recursive,
    Chains,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CombineTarget {
    Mass,
    Pl,
}

#[derive(Subcommand)]
enum Command {
    /// Convert a set-function file between kinds.
    Transform {
        #[arg(long, value_enum)]
        from: FromKind,
        #[arg(long, value_enum)]
        to: ToKind,
        #[arg(long, value_enum, default_value = "fast")]
        algo: Algo,
        /// Include the empty set as a source in mass -> bel.
        #[arg(long)]
        include_empty: bool,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Print the instrumented operation counts.
        #[arg(long)]
        count: bool,
        /// Write the dense output format instead of the sparse one.
        #[arg(long)]
        dense: bool,
    },
    /// Combine two mass files with Dempster's rule.
    Combine {
        #[arg(long)]
        in1: PathBuf,
        #[arg(long)]
        in2: PathBuf,
        #[arg(long, value_enum, default_value = "fast")]
        algo: Algo,
        /// Redistribute the conflict mass after combining.
        #[arg(long)]
        normalize: bool,
        /// What to write: the combined mass or its plausibility.
        #[arg(long, value_enum, default_value = "mass")]
        to: CombineTarget,
        /// Reject inputs that are not valid mass functions.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        count: bool,
        #[arg(long)]
        dense: bool,
    },
    /// Check that a staged pipeline file decomposes its composite relation.
    Verify {
        #[arg(long)]
        malgorithm: PathBuf,
    },
    /// Compute the Möbius function of a partial-order graph file.
    MobiusFn {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long, value_enum, default_value = "recursive")]
        method: Method,
        /// Write the result as a weighted-graph JSON file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare slow and fast pipelines over a range of frame sizes.
    Bench {
        #[arg(long)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long, default_value_t = 1)]
        trials: u32,
        /// Comma-separated arms to run: naive, fast.
        #[arg(long, default_value = "naive,fast")]
        arms: String,
        /// CSV output path; without it the CSV goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Lib(Error),
    Usage { code: &'static str, message: String },
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn usage(code: &'static str, message: impl Into<String>) -> CliError {
        CliError::Usage {
            code,
            message: message.into(),
        }
    }

    fn code(&self) -> &str {
        match self {
            CliError::Lib(e) => e.code(),
            CliError::Usage { code, .. } => code,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Lib(e) => e.to_string(),
            CliError::Usage { message, .. } => message.clone(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(Error::TotalConflict) => 2,
            _ => 1,
        }
    }
}

/// Die quietly when a downstream pipe closes, like other line-oriented
/// tools, instead of panicking on the failed write.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {}", e.code(), e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn max_n() -> usize {
    std::env::var(MAX_N_VAR)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .map(|v| v.min(MAX_ELEMENTS))
        .unwrap_or(MAX_ELEMENTS)
}

fn check_capacity(n: usize) -> Result<(), CliError> {
    let cap = max_n();
    if n > cap {
        return Err(Error::CapacityExceeded { n, max: cap }.into());
    }
    if n > WARN_ELEMENTS {
        eprintln!(
            "warning: frame has {n} elements; dense vectors hold 2^{n} values ({} MiB per function)",
            (1u64 << n) * 8 / (1024 * 1024)
        );
    }
    Ok(())
}

fn load_checked(path: &Path) -> Result<SetFunction, CliError> {
    let f = io::load_set_function(path)?;
    check_capacity(f.frame().len())?;
    Ok(f)
}

fn print_counts(count: &OpCount) {
    println!("additions = {}", count.additions);
    println!("multiplications = {}", count.multiplications);
    if !count.per_stage.is_empty() {
        let stages: Vec<String> = count.per_stage.iter().map(u64::to_string).collect();
        println!("additions_per_stage = {}", stages.join(","));
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Transform {
            from,
            to,
            algo,
            include_empty,
            input,
            out,
            count,
            dense,
        } => cmd_transform(from, to, algo, include_empty, &input, &out, count, dense),
        Command::Combine {
            in1,
            in2,
            algo,
            normalize,
            to,
            strict,
            out,
            count,
            dense,
        } => cmd_combine(&in1, &in2, algo, normalize, to, strict, &out, count, dense),
        Command::Verify { malgorithm } => cmd_verify(&malgorithm),
        Command::MobiusFn { poset, method, out } => cmd_mobius_fn(&poset, method, out.as_deref()),
        Command::Bench {
            n_min,
            n_max,
            trials,
            arms,
            out,
        } => cmd_bench(n_min, n_max, trials, &arms, out.as_deref()),
    }
}

const SUPPORTED_CONVERSIONS: &str = "mass->mass, mass->bel, mass->q, mass->pl, \
                                     bel->bel, bel->mass, q->q, q->mass, q->pl";

fn expected_kind(from: FromKind) -> Kind {
    match from {
        FromKind::Mass => Kind::Mass,
        FromKind::Bel => Kind::Belief,
        FromKind::Q => Kind::Commonality,
    }
}

/// What a (from, to) pair asks for.
enum Plan {
    Identity,
    Kernel(TransformKind),
    MassToPlausibility,
}

fn plan_conversion(from: FromKind, to: ToKind, include_empty: bool) -> Result<Plan, CliError> {
    let plan = match (from, to) {
        (FromKind::Mass, ToKind::Mass)
        | (FromKind::Bel, ToKind::Bel)
        | (FromKind::Q, ToKind::Q) => Plan::Identity,
        (FromKind::Mass, ToKind::Bel) if include_empty => {
            Plan::Kernel(TransformKind::MassToBeliefFull)
        }
        (FromKind::Mass, ToKind::Bel) => Plan::Kernel(TransformKind::MassToBelief),
        (FromKind::Mass, ToKind::Q) => Plan::Kernel(TransformKind::MassToCommonality),
        (FromKind::Mass, ToKind::Pl) => Plan::MassToPlausibility,
        (FromKind::Bel, ToKind::Mass) => Plan::Kernel(TransformKind::BeliefToMass),
        (FromKind::Q, ToKind::Mass) => Plan::Kernel(TransformKind::CommonalityToMass),
        (FromKind::Q, ToKind::Pl) => Plan::Kernel(TransformKind::CommonalityToPlausibility),
        (FromKind::Bel, ToKind::Q) | (FromKind::Bel, ToKind::Pl) | (FromKind::Q, ToKind::Bel) => {
            return Err(CliError::usage(
                "unsupported-conversion",
                format!(
                    "no {}->{} transform; supported: {SUPPORTED_CONVERSIONS}",
                    kind_name(from),
                    to_name(to)
                ),
            ));
        }
    };
    Ok(plan)
}

#[allow(clippy::too_many_arguments)]
fn cmd_transform(
    from: FromKind,
    to: ToKind,
    algo: Algo,
    include_empty: bool,
    input: &Path,
    out: &Path,
    count: bool,
    dense: bool,
) -> Result<(), CliError> {
    let plan = plan_conversion(from, to, include_empty)?;
    let f = load_checked(input)?;
    let expected = expected_kind(from);
    if f.kind() != expected && f.kind() != Kind::Raw {
        return Err(Error::KindMismatch {
            expected,
            found: f.kind(),
        }
        .into());
    }

    let (result, ops) = match plan {
        Plan::Identity => (f.clone(), OpCount::new()),
        Plan::Kernel(kind) => match algo {
            Algo::Fast => fast_transform_counted(kind, &f)?,
            Algo::Naive => naive_transform_counted(kind, &f)?,
        },
        Plan::MassToPlausibility => mass_to_plausibility(&f, algo)?,
    };

    io::save_set_function(out, &result, dense)?;
    if count {
        print_counts(&ops);
    }
    Ok(())
}

fn kind_name(from: FromKind) -> &'static str {
    match from {
        FromKind::Mass => "mass",
        FromKind::Bel => "bel",
        FromKind::Q => "q",
    }
}

fn to_name(to: ToKind) -> &'static str {
    match to {
        ToKind::Mass => "mass",
        ToKind::Bel => "bel",
        ToKind::Q => "q",
        ToKind::Pl => "pl",
    }
}

/// mass -> pl. The fast road goes through the commonality; the naive road
/// sums over the complement, which assumes the masses total 1.
fn mass_to_plausibility(f: &SetFunction, algo: Algo) -> Result<(SetFunction, OpCount), CliError> {
    match algo {
        Algo::Fast => {
            let (q, mut ops) = fast_transform_counted(TransformKind::MassToCommonality, f)?;
            let (pl, more) = fast_transform_counted(TransformKind::CommonalityToPlausibility, &q)?;
            ops.absorb(&more);
            Ok((pl, ops))
        }
        Algo::Naive => {
            let total: f64 = f.values().iter().sum();
            if (total - 1.0).abs() > 1e-9 {
                eprintln!("warning: masses sum to {total}, the naive plausibility assumes 1");
            }
            Ok(complement_plausibility_counted(f)?)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_combine(
    in1: &Path,
    in2: &Path,
    algo: Algo,
    want_normalize: bool,
    to: CombineTarget,
    strict: bool,
    out: &Path,
    count: bool,
    dense: bool,
) -> Result<(), CliError> {
    let m1 = load_checked(in1)?;
    let m2 = load_checked(in2)?;
    if strict {
        for (path, m) in [(in1, &m1), (in2, &m2)] {
            let report = validate_mass(m, false);
            if !report.is_valid() {
                return Err(Error::InvalidMass(format!(
                    "{}: {}",
                    path.display(),
                    report.summary()
                ))
                .into());
            }
        }
    }

    let (mut result, mut ops) = match algo {
        Algo::Fast => dempster_fast_counted(&m1, &m2)?,
        Algo::Naive => dempster_naive_counted(&m1, &m2, strict)?,
    };
    println!("conflict = {}", io::round_sig(result.conflict));
    if want_normalize {
        result = normalize(&result)?;
    }

    match to {
        CombineTarget::Mass => io::save_set_function(out, &result.combined, dense)?,
        CombineTarget::Pl => {
            let (pl, more) = plausibility_of(&result, &m1, &m2, algo, want_normalize)?;
            ops.absorb(&more);
            io::save_set_function(out, &pl, dense)?;
        }
    }
    if count {
        print_counts(&ops);
    }
    Ok(())
}

/// Plausibility of a combination. Without normalization the fast algorithm
/// takes the direct road from the input masses; otherwise it starts from
/// the normalized combined mass.
fn plausibility_of(
    result: &CombinationResult,
    m1: &SetFunction,
    m2: &SetFunction,
    algo: Algo,
    normalized: bool,
) -> Result<(SetFunction, OpCount), CliError> {
    match (algo, normalized) {
        (Algo::Fast, false) => Ok(combine_to_plausibility_counted(m1, m2)?),
        (Algo::Fast, true) => {
            let (q, mut ops) =
                fast_transform_counted(TransformKind::MassToCommonality, &result.combined)?;
            let (pl, more) = fast_transform_counted(TransformKind::CommonalityToPlausibility, &q)?;
            ops.absorb(&more);
            Ok((pl, ops))
        }
        (Algo::Naive, _) => Ok(complement_plausibility_counted(&result.combined)?),
    }
}

fn cmd_verify(path: &Path) -> Result<(), CliError> {
    let pipeline = io::load_pipeline(path)?;
    let check = pipeline.verify_decomposition()?;
    match check.witness {
        None => println!("valid"),
        Some((s, t)) => {
            let source = pipeline.stages()[0].source_set().describe(s);
            let target = pipeline.stages()[pipeline.len() - 1]
                .target_set()
                .describe(t);
            println!("invalid: witness ({source}, {target})");
        }
    }
    Ok(())
}

fn cmd_mobius_fn(path: &Path, method: Method, out: Option<&Path>) -> Result<(), CliError> {
    let poset = io::load_graph(path)?;
    let method = match method {
        Method::Recursive => MobiusMethod::Recursive,
        Method::Chains => MobiusMethod::Chains,
    };
    let entries = mobius_function_entries(&poset, method)?;
    for (&(s, t), &value) in &entries {
        println!(
            "mu({}, {}) = {value}",
            poset.source().describe(s),
            poset.source().describe(t)
        );
    }
    if let Some(out) = out {
        let mu = mobius_function(&poset, method)?;
        io::save_weighted_graph(out, &mu)?;
    }
    Ok(())
}

fn cmd_bench(
    n_min: u32,
    n_max: u32,
    trials: u32,
    arms: &str,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let mut chosen = BenchArms {
        naive: false,
        fast: false,
    };
    for arm in arms.split(',').map(str::trim).filter(|a| !a.is_empty()) {
        match arm {
            "naive" => chosen.naive = true,
            "fast" => chosen.fast = true,
            other => {
                return Err(CliError::usage(
                    "bad-arm",
                    format!("unknown arm {other:?}; choose from: naive, fast"),
                ))
            }
        }
    }
    if !(chosen.naive || chosen.fast) {
        return Err(CliError::usage("bad-arm", "no arms selected"));
    }
    check_capacity(n_max as usize)?;
    if chosen.naive && n_max > 14 {
        eprintln!(
            "warning: the naive arm at n={n_max} runs 2^{} multiplications",
            2 * n_max
        );
    }

    let reports = run_benchmark(n_min, n_max, trials, chosen)?;
    let ns: Vec<u32> = (n_min..=n_max).collect();
    let csv = benchmark_table(&reports).to_csv();
    match out {
        Some(path) => {
            io::save_text(path, &csv)?;
            println!("{}", cost_table(&ns).to_text());
            println!("{}", ratio_table(&ns).to_text());
            for report in &reports {
                if !report.matches_analytic {
                    return Err(CliError::usage(
                        "counter-mismatch",
                        format!(
                            "{} arm at n={} drifted from the closed form",
                            report.arm, report.n
                        ),
                    ));
                }
            }
            println!("wrote {}", path.display());
        }
        None => print!("{csv}"),
    }
    Ok(())
}
