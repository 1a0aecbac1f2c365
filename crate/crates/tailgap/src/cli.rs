//! Command line surface.  Thin wrapper: every number printed comes from a
//! single library call, formatted with [`fmt_g17`] so output parses back
//! to the exact same float.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain or validation error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::distributions::{
    ContinuousMetaSpec, Expectation, MetaDistribution, MetaFamily, ParetoMixture, StableParams,
};
use crate::error::Error;
use crate::estimators::{
    hill_estimator, k_from_fraction, loglog_tail_estimate, pareto_mle, EstimateResult,
};
use crate::experiments::{
    emit_figure1, fmt_g17, log_grid, seed_stream, study_mixture_bias, study_stable, ModelSpec,
    StudyConfig,
};
use crate::metaprob::{
    asymptotic_gap, clipping_curve, density_gap, functional_bias, limit_convergence, tail_constant,
    PayoffSpec,
};

/// Environment variable consulted for a base seed when `--seed` is absent.
pub const SEED_ENV: &str = "TAILGAP_SEED";

/// Weight sums within this distance of 1 are silently rescaled (with a
/// note on standard error); anything further out is a domain error.
const WEIGHT_NORMALIZE_TOL: f64 = 1e-6;

enum CliError {
    Usage(String),
    Domain(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Domain(format!("io error: {e}"))
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "tailgap",
    version,
    about = "Pareto tails under exponent uncertainty: densities, gaps, biases, estimators, studies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate mixture density and survival at points
    Eval(EvalArgs),
    /// Density gap between the mixture and the plug-in law
    Gap(GapArgs),
    /// Expectation bias of a payoff under exponent uncertainty
    Bias(BiasArgs),
    /// Tail constant and scaled-density convergence table
    Kconst(KconstArgs),
    /// Clipped-payoff bias as a function of the cap
    Clip(ClipArgs),
    /// Draw variates from a mixture or an alpha-stable law
    Sample(SampleArgs),
    /// Run a tail-index estimator on a CSV of samples
    Estimate(EstimateArgs),
    /// Monte Carlo estimator bias study on mixture data
    #[command(name = "study-bias")]
    StudyBias(StudyArgs),
    /// Monte Carlo estimator study on alpha-stable data
    #[command(name = "study-stable")]
    StudyStable(StudyArgs),
    /// Three-curve density comparison table
    Figure1(Figure1Args),
}

/// Inline mixture sources shared by all subcommands: explicit states or a
/// continuous family to discretize.
#[derive(Args, Clone, Default)]
struct InlineMixtureFlags {
    /// Tail exponents, comma separated (at most 16)
    #[arg(long, value_delimiter = ',')]
    alphas: Vec<f64>,
    /// State weights, comma separated; must sum to 1 within 1e-6
    #[arg(long, value_delimiter = ',')]
    phis: Vec<f64>,
    /// Shared support lower bound
    #[arg(long)]
    xmin: Option<f64>,
    /// Continuous exponent family: uniform:LO,HI or triangular:LO,MODE,HI
    #[arg(long, value_name = "FAMILY")]
    meta: Option<String>,
    /// Quadrature nodes used to discretize --meta
    #[arg(long, default_value_t = 64)]
    nodes: usize,
}

/// Inline mixture flags plus a JSON file alternative.
#[derive(Args, Clone)]
struct MixtureFlags {
    #[command(flatten)]
    inline: InlineMixtureFlags,
    /// JSON mixture file: {"alphas": [...], "phis": [...], "x_min": ...}
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MixtureFile {
    alphas: Vec<f64>,
    phis: Vec<f64>,
    x_min: f64,
}

impl InlineMixtureFlags {
    fn has_states(&self) -> bool {
        !self.alphas.is_empty() || !self.phis.is_empty()
    }

    /// Resolves the inline sources, or `None` when no source was given.
    fn resolve(&self, err: &mut dyn Write) -> CliResult<Option<ParetoMixture>> {
        match (self.has_states(), &self.meta) {
            (true, Some(_)) => Err(CliError::Usage(
                "--alphas/--phis and --meta are mutually exclusive".into(),
            )),
            (false, None) => Ok(None),
            (true, None) => {
                let x_min = self
                    .xmin
                    .ok_or_else(|| CliError::Usage("inline mixtures need --xmin".into()))?;
                build_mixture(&self.alphas, &self.phis, x_min, err).map(Some)
            }
            (false, Some(spec)) => {
                let x_min = self
                    .xmin
                    .ok_or_else(|| CliError::Usage("--meta mixtures need --xmin".into()))?;
                let family = parse_meta_family(spec)?;
                let meta = ContinuousMetaSpec::new(family, self.nodes)
                    .and_then(|s| s.discretize())
                    .map_err(CliError::from)?;
                ParetoMixture::new(x_min, meta)
                    .map(Some)
                    .map_err(Into::into)
            }
        }
    }
}

impl MixtureFlags {
    fn resolve(&self, err: &mut dyn Write) -> CliResult<ParetoMixture> {
        if let Some(path) = &self.config {
            if self.inline.has_states() || self.inline.meta.is_some() || self.inline.xmin.is_some()
            {
                return Err(CliError::Usage(
                    "--config and inline mixture flags are mutually exclusive".into(),
                ));
            }
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            let file: MixtureFile = serde_json::from_str(&text).map_err(|e| {
                CliError::Usage(format!("invalid mixture JSON in {}: {e}", path.display()))
            })?;
            return build_mixture(&file.alphas, &file.phis, file.x_min, err);
        }
        self.inline.resolve(err)?.ok_or_else(|| {
            CliError::Usage(
                "no mixture given; use --alphas/--phis/--xmin, --meta, or --config".into(),
            )
        })
    }
}

/// Common construction path: length and 16-state caps, the 1e-6 weight
/// normalization rule, then the library constructor.
fn build_mixture(
    alphas: &[f64],
    phis: &[f64],
    x_min: f64,
    err: &mut dyn Write,
) -> CliResult<ParetoMixture> {
    if alphas.is_empty() || phis.is_empty() {
        return Err(CliError::Usage(
            "inline mixtures need both --alphas and --phis".into(),
        ));
    }
    if alphas.len() > 16 {
        return Err(CliError::Usage(format!(
            "inline mixtures cap at 16 states, got {}; use --config",
            alphas.len()
        )));
    }
    if alphas.len() != phis.len() {
        return Err(CliError::Usage(format!(
            "got {} exponents but {} weights",
            alphas.len(),
            phis.len()
        )));
    }
    let sum: f64 = phis.iter().sum();
    if !sum.is_finite() || (sum - 1.0).abs() > WEIGHT_NORMALIZE_TOL {
        return Err(CliError::Domain(format!(
            "weights sum to {sum}, outside the {WEIGHT_NORMALIZE_TOL} normalization tolerance"
        )));
    }
    if (sum - 1.0).abs() > 1e-12 {
        writeln!(err, "note: weights sum to {sum}; normalizing")?;
    }
    let states = alphas.iter().copied().zip(phis.iter().copied()).collect();
    let meta = MetaDistribution::normalized(states)?;
    Ok(ParetoMixture::new(x_min, meta)?)
}

fn parse_meta_family(spec: &str) -> CliResult<MetaFamily> {
    let usage = || {
        CliError::Usage(format!(
            "cannot parse --meta '{spec}'; expected uniform:LO,HI or triangular:LO,MODE,HI"
        ))
    };
    let (name, rest) = spec.split_once(':').ok_or_else(usage)?;
    let parts: Vec<f64> = rest
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| usage())?;
    match (name, parts.as_slice()) {
        ("uniform", &[lo, hi]) => Ok(MetaFamily::Uniform { lo, hi }),
        ("triangular", &[lo, mode, hi]) => Ok(MetaFamily::Triangular { lo, mode, hi }),
        _ => Err(usage()),
    }
}

fn parse_stable(spec: &str) -> CliResult<StableParams> {
    let parts: Vec<f64> = spec
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| {
            CliError::Usage(format!(
                "cannot parse --stable '{spec}'; expected ALPHA[,BETA[,SCALE[,LOCATION]]]"
            ))
        })?;
    let (alpha, beta, scale, location) = match *parts.as_slice() {
        [a] => (a, 0.0, 1.0, 0.0),
        [a, b] => (a, b, 1.0, 0.0),
        [a, b, s] => (a, b, s, 0.0),
        [a, b, s, l] => (a, b, s, l),
        _ => {
            return Err(CliError::Usage(
                "--stable takes one to four comma-separated values".into(),
            ))
        }
    };
    StableParams::new(alpha, beta, scale, location).map_err(Into::into)
}

fn resolve_seed(flag: Option<u64>) -> CliResult<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(text) => text.trim().parse::<u64>().map_err(|_| {
            CliError::Usage(format!("{SEED_ENV}='{text}' is not an unsigned integer"))
        }),
        Err(_) => Ok(0),
    }
}

/// Writes `content` to `path` when given, else to standard output.
fn write_output(path: Option<&Path>, content: &str, out: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, content)
            .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", p.display()))),
        None => {
            out.write_all(content.as_bytes())?;
            Ok(())
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    mixture: MixtureFlags,
    /// Evaluation points, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    x: Vec<f64>,
}

#[derive(Args)]
struct GapArgs {
    #[command(flatten)]
    mixture: MixtureFlags,
    /// Evaluation points, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    x: Vec<f64>,
}

#[derive(Args)]
struct BiasArgs {
    #[command(flatten)]
    mixture: MixtureFlags,
    /// Payoff: identity, power=P, tail=T, or clip=C
    #[arg(long)]
    payoff: String,
}

#[derive(Args)]
struct KconstArgs {
    #[command(flatten)]
    mixture: MixtureFlags,
    /// Upper end of the geometric evaluation grid
    #[arg(long, default_value_t = 1e6)]
    xmax: f64,
    /// Number of grid points
    #[arg(long, default_value_t = 16)]
    points: usize,
}

#[derive(Args)]
struct ClipArgs {
    #[command(flatten)]
    mixture: MixtureFlags,
    /// Clipping caps, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    caps: Vec<f64>,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    mixture: InlineMixtureFlags,
    /// Alpha-stable source: ALPHA[,BETA[,SCALE[,LOCATION]]]
    #[arg(long, value_name = "PARAMS")]
    stable: Option<String>,
    /// Number of variates
    #[arg(long)]
    n: usize,
    /// Base seed; falls back to TAILGAP_SEED, then 0
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path (standard output when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Hill,
    Mle,
    Loglog,
}

#[derive(Args)]
struct EstimateArgs {
    /// CSV of samples; the last field of each row is the value
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    method: MethodArg,
    /// Order statistics used by the Hill estimator
    #[arg(long)]
    k: Option<usize>,
    /// Tail fraction used by the Hill estimator (k = floor(f * n))
    #[arg(long)]
    k_fraction: Option<f64>,
    /// Known support bound for the MLE
    #[arg(long)]
    xmin: Option<f64>,
}

#[derive(Args)]
struct StudyArgs {
    #[command(flatten)]
    mixture: InlineMixtureFlags,
    /// Alpha-stable source: ALPHA[,BETA[,SCALE[,LOCATION]]]
    #[arg(long, value_name = "PARAMS")]
    stable: Option<String>,
    /// Full study config as JSON (exclusive with inline flags)
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Samples per trial
    #[arg(long)]
    n: Option<usize>,
    /// Number of Monte Carlo trials
    #[arg(long)]
    trials: Option<usize>,
    /// Hill tail fractions, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.01])]
    k_fractions: Vec<f64>,
    /// Base seed; falls back to TAILGAP_SEED, then 0
    #[arg(long)]
    seed: Option<u64>,
    /// Report path (standard output when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Figure1Args {
    #[command(flatten)]
    mixture: MixtureFlags,
    /// Upper end of the geometric grid
    #[arg(long, default_value_t = 1e6)]
    xmax: f64,
    /// Number of grid points
    #[arg(long, default_value_t = 60)]
    points: usize,
    /// Output CSV path (standard output when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Entry point for the binary: real argv, stdout, stderr.
pub fn run() -> i32 {
    let out = std::io::stdout();
    let err = std::io::stderr();
    run_from(std::env::args_os(), &mut out.lock(), &mut err.lock())
}

/// Testable entry point with injected argv and output streams.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            }
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(CliError::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    match cmd {
        Command::Eval(a) => cmd_eval(a, out, err),
        Command::Gap(a) => cmd_gap(a, out, err),
        Command::Bias(a) => cmd_bias(a, out, err),
        Command::Kconst(a) => cmd_kconst(a, out, err),
        Command::Clip(a) => cmd_clip(a, out, err),
        Command::Sample(a) => cmd_sample(a, out, err),
        Command::Estimate(a) => cmd_estimate(a, out),
        Command::StudyBias(a) => cmd_study(a, false, out, err),
        Command::StudyStable(a) => cmd_study(a, true, out, err),
        Command::Figure1(a) => cmd_figure1(a, out, err),
    }
}

fn cmd_eval(a: EvalArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let mix = a.mixture.resolve(err)?;
    writeln!(out, "x,pdf,survival")?;
    for &x in &a.x {
        let pdf = mix.pdf(x)?;
        let survival = mix.survival(x)?;
        writeln!(out, "{},{},{}", fmt_g17(x), fmt_g17(pdf), fmt_g17(survival))?;
    }
    Ok(())
}

fn cmd_gap(a: GapArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let mix = a.mixture.resolve(err)?;
    writeln!(
        out,
        "x,mixture_density,mean_param_density,gap,asymptotic_gap"
    )?;
    for &x in &a.x {
        let report = density_gap(&mix, x)?;
        let agap = asymptotic_gap(&mix, x)?;
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt_g17(report.at_x),
            fmt_g17(report.mixture_density),
            fmt_g17(report.mean_param_density),
            fmt_g17(report.gap),
            fmt_g17(agap)
        )?;
    }
    Ok(())
}

fn parse_payoff(spec: &str) -> CliResult<PayoffSpec> {
    if spec == "identity" {
        return Ok(PayoffSpec::Identity);
    }
    let usage = || {
        CliError::Usage(format!(
            "cannot parse --payoff '{spec}'; expected identity, power=P, tail=T, or clip=C"
        ))
    };
    let (name, value) = spec.split_once('=').ok_or_else(usage)?;
    let v: f64 = value.trim().parse().map_err(|_| usage())?;
    match name {
        "power" => Ok(PayoffSpec::Power(v)),
        "tail" => Ok(PayoffSpec::TailIndicator(v)),
        "clip" => Ok(PayoffSpec::Clipped(v)),
        _ => Err(usage()),
    }
}

fn cmd_bias(a: BiasArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let mix = a.mixture.resolve(err)?;
    let payoff = parse_payoff(&a.payoff)?;
    let bias = functional_bias(&mix, payoff)?;
    writeln!(out, "payoff,bias")?;
    match bias {
        Expectation::Finite(v) => writeln!(out, "{},{}", a.payoff, fmt_g17(v))?,
        Expectation::Divergent => writeln!(out, "{},inf", a.payoff)?,
    }
    Ok(())
}

fn cmd_kconst(a: KconstArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let mix = a.mixture.resolve(err)?;
    let tc = tail_constant(&mix);
    let grid = log_grid(mix.x_min(), a.xmax, a.points)?;
    let curve = limit_convergence(&mix, &grid)?;
    let achieving: Vec<String> = tc.achieving_states.iter().map(usize::to_string).collect();
    writeln!(
        out,
        "# k_value={} alpha_star={} achieving_states={}",
        fmt_g17(tc.k_value),
        fmt_g17(tc.alpha_star),
        achieving.join(";")
    )?;
    writeln!(out, "x,scaled_density")?;
    for (x, scaled) in curve {
        writeln!(out, "{},{}", fmt_g17(x), fmt_g17(scaled))?;
    }
    Ok(())
}

fn cmd_clip(a: ClipArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let mix = a.mixture.resolve(err)?;
    let curve = clipping_curve(&mix, &a.caps)?;
    writeln!(out, "cap,bias")?;
    for (cap, bias) in curve {
        writeln!(out, "{},{}", fmt_g17(cap), fmt_g17(bias))?;
    }
    Ok(())
}

fn cmd_sample(a: SampleArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let seed = resolve_seed(a.seed)?;
    let mut rng = seed_stream(seed, 0);
    let stable = a.stable.as_deref().map(parse_stable).transpose()?;
    let mixture = a.mixture.resolve(err)?;
    let content = match (mixture, stable) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "--stable and mixture flags are mutually exclusive".into(),
            ))
        }
        (None, None) => {
            return Err(CliError::Usage(
                "no source given; use mixture flags or --stable".into(),
            ))
        }
        (Some(mix), None) => {
            let mut text = String::from("component,value\n");
            for (label, x) in mix.sample_labeled(&mut rng, a.n) {
                text.push_str(&format!("{label},{}\n", fmt_g17(x)));
            }
            text
        }
        (None, Some(params)) => {
            let mut text = String::from("value\n");
            for x in params.sample(&mut rng, a.n) {
                text.push_str(&format!("{}\n", fmt_g17(x)));
            }
            text
        }
    };
    write_output(a.out.as_deref(), &content, out)
}

/// Reads samples from a CSV: last field of each row, skipping one header
/// line if its last field is not numeric.
fn read_samples(path: &Path) -> CliResult<Vec<f64>> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut values = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let field = trimmed.rsplit(',').next().expect("split is never empty");
        match field.trim().parse::<f64>() {
            Ok(v) => values.push(v),
            Err(_) if idx == 0 => continue,
            Err(_) => {
                return Err(CliError::Usage(format!(
                    "line {} of {} is not numeric: '{trimmed}'",
                    idx + 1,
                    path.display()
                )))
            }
        }
    }
    Ok(values)
}

fn cmd_estimate(a: EstimateArgs, out: &mut dyn Write) -> CliResult<()> {
    let samples = read_samples(&a.input)?;
    let est: EstimateResult = match a.method {
        MethodArg::Hill => {
            if a.xmin.is_some() {
                return Err(CliError::Usage(
                    "--xmin applies to --method mle only".into(),
                ));
            }
            let k = match (a.k, a.k_fraction) {
                (Some(k), None) => k,
                (None, Some(f)) => k_from_fraction(samples.len(), f)?,
                (None, None) => {
                    return Err(CliError::Usage(
                        "hill needs either --k or --k-fraction".into(),
                    ))
                }
                (Some(_), Some(_)) => {
                    return Err(CliError::Usage(
                        "--k and --k-fraction are mutually exclusive".into(),
                    ))
                }
            };
            hill_estimator(&samples, k)?
        }
        MethodArg::Mle => {
            if a.k.is_some() || a.k_fraction.is_some() {
                return Err(CliError::Usage(
                    "--k/--k-fraction apply to --method hill only".into(),
                ));
            }
            let x_min = a
                .xmin
                .ok_or_else(|| CliError::Usage("mle needs --xmin".into()))?;
            pareto_mle(&samples, x_min)?
        }
        MethodArg::Loglog => {
            if a.k.is_some() || a.k_fraction.is_some() || a.xmin.is_some() {
                return Err(CliError::Usage(
                    "loglog takes no --k/--k-fraction/--xmin".into(),
                ));
            }
            loglog_tail_estimate(&samples)?
        }
    };
    writeln!(out, "method,alpha_hat,k_used,n")?;
    writeln!(
        out,
        "{},{},{},{}",
        est.method,
        fmt_g17(est.alpha_hat),
        est.k_used,
        est.n
    )?;
    Ok(())
}

fn cmd_study(
    a: StudyArgs,
    stable: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<()> {
    let cfg = build_study_config(&a, stable, err)?;
    let report = if stable {
        study_stable(&cfg)?
    } else {
        study_mixture_bias(&cfg)?
    };
    let bytes = report.to_json_bytes()?;
    match a.out.as_deref() {
        Some(p) => fs::write(p, bytes)
            .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", p.display()))),
        None => {
            out.write_all(&bytes)?;
            Ok(())
        }
    }
}

fn build_study_config(a: &StudyArgs, stable: bool, err: &mut dyn Write) -> CliResult<StudyConfig> {
    if let Some(path) = &a.config {
        let inline_given = a.mixture.has_states()
            || a.mixture.meta.is_some()
            || a.mixture.xmin.is_some()
            || a.stable.is_some()
            || a.n.is_some()
            || a.trials.is_some()
            || a.seed.is_some();
        if inline_given {
            return Err(CliError::Usage(
                "--config is exclusive with inline study flags".into(),
            ));
        }
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        return StudyConfig::from_json_str(&text).map_err(Into::into);
    }
    let n_samples =
        a.n.ok_or_else(|| CliError::Usage("inline studies need --n".into()))?;
    let n_trials = a
        .trials
        .ok_or_else(|| CliError::Usage("inline studies need --trials".into()))?;
    let base_seed = resolve_seed(a.seed)?;
    let model = if stable {
        if a.mixture.has_states() || a.mixture.meta.is_some() {
            return Err(CliError::Usage(
                "study-stable takes --stable, not mixture flags".into(),
            ));
        }
        let spec = a
            .stable
            .as_deref()
            .ok_or_else(|| CliError::Usage("study-stable needs --stable".into()))?;
        let params = parse_stable(spec)?;
        ModelSpec::Stable {
            alpha: params.alpha(),
            beta: params.beta(),
            scale: params.scale(),
            location: params.location(),
        }
    } else {
        if a.stable.is_some() {
            return Err(CliError::Usage(
                "study-bias takes mixture flags, not --stable".into(),
            ));
        }
        let mix = a.mixture.resolve(err)?.ok_or_else(|| {
            CliError::Usage("study-bias needs --alphas/--phis/--xmin or --meta".into())
        })?;
        ModelSpec::Mixture {
            alphas: mix.meta().states().iter().map(|s| s.alpha).collect(),
            phis: mix.meta().states().iter().map(|s| s.phi).collect(),
            x_min: mix.x_min(),
        }
    };
    let cfg = StudyConfig {
        model,
        n_samples,
        n_trials,
        base_seed,
        k_fractions: a.k_fractions.clone(),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_figure1(a: Figure1Args, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let mix = a.mixture.resolve(err)?;
    let data = emit_figure1(&mix, a.xmax, a.points)?;
    write_output(a.out.as_deref(), &data.to_csv_string(), out)
}
