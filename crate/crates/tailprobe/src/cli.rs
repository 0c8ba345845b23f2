//! Command-line driver.
//!
//! Exit codes: 0 success, 1 domain/parse/IO failure, 2 usage error, and with
//! `--exit-verdict` on `test`, 3 for heavy and 4 for light.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use tailprobe_core::proxy::{discrete_s_tilde, proxy_s, threshold_and_gap};
use tailprobe_core::tester::{majority_vote, required_buckets, required_samples};
use tailprobe_core::{
    ComplexityConstants, DistributionModel, GapDenominator, SampleComplexity, TailParams,
    TestConfig, Variant, Verdict, WellBehavedBounds,
};

use crate::error::{Error, Result};
use crate::harness::{self, Samples};
use crate::io::{self, SampleFormat};
use crate::report::{self, decimal, OutcomeReport, Report, ReportFormat};

/// Exit code for a heavy verdict under `--exit-verdict`.
pub const EXIT_HEAVY: i32 = 3;
/// Exit code for a light verdict under `--exit-verdict`.
pub const EXIT_LIGHT: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "tailprobe",
    version,
    about = "Heavy- versus light-tail testing from samples"
)]
struct Cli {
    /// Worker threads for sorting and replicates [default: all cores]. Never changes output.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Draw seeded samples from an analytic distribution.
    Sample(SampleCmd),
    /// Analytic proxy, threshold, gap and discretised proxy per bucket (CSV).
    Proxy(ProxyCmd),
    /// Run the tester on a sample file or on seeded draws; writes a JSON report.
    Test(TestCmd),
    /// Repeat the tester over seeds and aggregate the statistic per bucket (CSV).
    Simulate(SimulateCmd),
    /// Bucket count k and per-split sample count n from the calculators.
    Complexity(ComplexityCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistName {
    /// Params: lambda (rate, per unit of x).
    Exponential,
    /// Params: a (shape), lambda (scale, units of x).
    Lomax,
    /// Params: sigma (scale, units of x).
    HalfGaussian,
    /// Params: gamma (rate, per unit of x), m (exponent, 0 < m < 1).
    StretchedExponential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GapChoice {
    /// alpha(1-z)^2 / (beta^3 B1).
    B1,
    /// alpha(1-z)^2 / (beta^3 B2).
    B2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormChoice {
    /// k^3 ln k B1^1.5 beta^2 / alpha.
    Statement,
    /// k^3 ln k beta^3 B2^1.5 / alpha.
    Proof,
}

#[derive(Debug, Args)]
struct DistArgs {
    /// Distribution family.
    #[arg(long, value_enum)]
    dist: DistName,
    /// Parameters as K=V[,K=V...]; names per family are listed under --dist.
    #[arg(long, value_name = "K=V,...")]
    params: String,
}

#[derive(Debug, Args)]
struct SampleCmd {
    #[command(flatten)]
    dist: DistArgs,
    /// Number of samples to write.
    #[arg(long)]
    n: usize,
    /// RNG seed (ChaCha8).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file, written atomically.
    #[arg(long)]
    out: PathBuf,
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = SampleFormat::Text)]
    format: SampleFormat,
}

#[derive(Debug, Args)]
struct ProxyCmd {
    #[command(flatten)]
    dist: DistArgs,
    /// Coarse bucket count; rows are z = i/k for i = 1..k-1.
    #[arg(long)]
    k: usize,
    /// Hazard-slope threshold alpha used in the gap.
    #[arg(long, default_value_t = 0.25)]
    alpha: f64,
    #[command(flatten)]
    bounds: OptionalBounds,
    /// Gap denominator.
    #[arg(long, value_enum, default_value_t = GapChoice::B1)]
    gap_denominator: GapChoice,
    /// Output CSV file, written atomically [default: stdout].
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OptionalBounds {
    /// Density bound beta [default: estimated from the distribution].
    #[arg(long)]
    beta: Option<f64>,
    /// Quantile second-derivative bound B1 [default: estimated].
    #[arg(long)]
    b1: Option<f64>,
    /// Quantile third-derivative bound B2 [default: estimated].
    #[arg(long)]
    b2: Option<f64>,
    /// Excluded upper tail mass zeta [default: 1/(2k)].
    #[arg(long)]
    zeta: Option<f64>,
}

#[derive(Debug, Args)]
struct WeakArgs {
    /// Use the single-split weak tester instead of the four-split tester.
    #[arg(long)]
    weak: bool,
    /// Weak tester scans buckets from ceil(c1 k).
    #[arg(long, default_value_t = 0.1, requires = "weak")]
    c1: f64,
    /// Weak tester scans buckets up to floor(c2 k).
    #[arg(long, default_value_t = 0.8, requires = "weak")]
    c2: f64,
}

impl WeakArgs {
    fn variant(&self) -> Variant {
        if self.weak {
            Variant::Weak {
                c1: self.c1,
                c2: self.c2,
            }
        } else {
            Variant::Full
        }
    }
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "dist"])))]
struct TestCmd {
    /// Sample file. The four-split tester deals it round-robin into four splits.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Sample file encoding.
    #[arg(long, value_enum, default_value_t = SampleFormat::Text, requires = "input")]
    format: SampleFormat,
    /// Draw samples from this family instead of reading a file.
    #[arg(long, value_enum, requires_all = ["params", "n"])]
    dist: Option<DistName>,
    /// Distribution parameters as K=V[,K=V...].
    #[arg(long, value_name = "K=V,...", requires = "dist")]
    params: Option<String>,
    /// Samples per split when drawing (the four-split tester draws 4n).
    #[arg(long, requires = "dist")]
    n: Option<usize>,
    /// RNG seed; run r of --reps uses seed + r.
    #[arg(long, default_value_t = 0, requires = "dist")]
    seed: u64,
    /// Coarse bucket count.
    #[arg(long)]
    k: usize,
    /// Hazard-slope threshold alpha (> 0).
    #[arg(long)]
    alpha: f64,
    /// Heavy mass rho in (0, 1).
    #[arg(long)]
    rho: f64,
    /// Density bound beta.
    #[arg(long)]
    beta: f64,
    /// Quantile second-derivative bound B1.
    #[arg(long)]
    b1: f64,
    /// Quantile third-derivative bound B2.
    #[arg(long)]
    b2: f64,
    /// Excluded upper tail mass zeta [default: 1/(2k)].
    #[arg(long)]
    zeta: Option<f64>,
    #[command(flatten)]
    weak: WeakArgs,
    /// Independent runs to majority-vote over (drawn samples only).
    #[arg(long, default_value_t = 1, requires = "dist")]
    reps: usize,
    /// Gap denominator.
    #[arg(long, value_enum, default_value_t = GapChoice::B1)]
    gap_denominator: GapChoice,
    /// Report file, written atomically [default: stdout].
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report encoding.
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    report_format: ReportFormat,
    /// Exit 3 on a heavy verdict and 4 on a light one.
    #[arg(long)]
    exit_verdict: bool,
}

#[derive(Debug, Args)]
struct SimulateCmd {
    #[command(flatten)]
    dist: DistArgs,
    /// Replicates (at least 2); replicate r uses seed + r.
    #[arg(long, default_value_t = 10)]
    reps: usize,
    /// Coarse bucket count.
    #[arg(long)]
    k: usize,
    /// Samples per split.
    #[arg(long)]
    n: usize,
    /// Base RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Hazard-slope threshold alpha.
    #[arg(long, default_value_t = 0.25)]
    alpha: f64,
    /// Heavy mass rho.
    #[arg(long, default_value_t = 0.5)]
    rho: f64,
    #[command(flatten)]
    bounds: OptionalBounds,
    #[command(flatten)]
    weak: WeakArgs,
    /// Gap denominator.
    #[arg(long, value_enum, default_value_t = GapChoice::B1)]
    gap_denominator: GapChoice,
    /// Report file, written atomically [default: stdout].
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report encoding.
    #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
    report_format: ReportFormat,
}

#[derive(Debug, Args)]
struct ComplexityCmd {
    /// Hazard-slope threshold alpha.
    #[arg(long)]
    alpha: f64,
    /// Heavy mass rho.
    #[arg(long)]
    rho: f64,
    /// Density bound beta.
    #[arg(long)]
    beta: f64,
    /// Quantile second-derivative bound B1.
    #[arg(long)]
    b1: f64,
    /// Quantile third-derivative bound B2.
    #[arg(long)]
    b2: f64,
    /// Constant multiplying the bucket-count expression.
    #[arg(long, default_value_t = 1.0)]
    ck: f64,
    /// Constant multiplying the sample-count expression.
    #[arg(long, default_value_t = 1.0)]
    cn: f64,
    /// Which sample-count expression to use.
    #[arg(long, value_enum, default_value_t = FormChoice::Statement)]
    form: FormChoice,
}

/// Parses `K=V[,K=V...]` into a model. Unknown or repeated keys are errors.
pub fn parse_model(family: &str, params: &str) -> Result<DistributionModel> {
    let names: &[&str] = match family {
        "exponential" => &["lambda"],
        "lomax" => &["a", "lambda"],
        "half-gaussian" => &["sigma"],
        "stretched-exponential" => &["gamma", "m"],
        other => return Err(Error::Usage(format!("unknown distribution {other:?}"))),
    };
    let mut values = vec![None; names.len()];
    for pair in params.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| Error::Usage(format!("parameter {pair:?} is not K=V")))?;
        let slot = names.iter().position(|n| *n == key.trim()).ok_or_else(|| {
            Error::Usage(format!(
                "unknown parameter {key:?} for {family}; expected {}",
                names.join(", ")
            ))
        })?;
        if values[slot].is_some() {
            return Err(Error::Usage(format!("parameter {key:?} given twice")));
        }
        let v: f64 = value.trim().parse().map_err(|_| {
            Error::Usage(format!(
                "parameter {key}: cannot parse {value:?} as a number"
            ))
        })?;
        values[slot] = Some(v);
    }
    let got = |j: usize| {
        values[j].ok_or_else(|| Error::Usage(format!("{family} needs parameter {}", names[j])))
    };
    Ok(match family {
        "exponential" => DistributionModel::exponential(got(0)?)?,
        "lomax" => DistributionModel::lomax(got(0)?, got(1)?)?,
        "half-gaussian" => DistributionModel::half_gaussian(got(0)?)?,
        _ => DistributionModel::stretched_exponential(got(0)?, got(1)?)?,
    })
}

fn dist_name(d: DistName) -> &'static str {
    match d {
        DistName::Exponential => "exponential",
        DistName::Lomax => "lomax",
        DistName::HalfGaussian => "half-gaussian",
        DistName::StretchedExponential => "stretched-exponential",
    }
}

fn gap_denominator(g: GapChoice) -> GapDenominator {
    match g {
        GapChoice::B1 => GapDenominator::BetaCubedB1,
        GapChoice::B2 => GapDenominator::BetaCubedB2,
    }
}

fn default_zeta(k: usize) -> f64 {
    1.0 / (2.0 * k.max(1) as f64)
}

fn resolve_bounds(
    model: &DistributionModel,
    b: &OptionalBounds,
    k: usize,
) -> Result<WellBehavedBounds> {
    let zeta = b.zeta.unwrap_or_else(|| default_zeta(k));
    let est = model.estimate_bounds(zeta)?;
    Ok(WellBehavedBounds::new(
        b.beta.unwrap_or(est.beta),
        b.b1.unwrap_or(est.b1),
        b.b2.unwrap_or(est.b2),
        zeta,
    )?)
}

fn emit(bytes: &[u8], path: Option<&PathBuf>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => io::write_atomic(p, bytes),
        None => Ok(out.write_all(bytes)?),
    }
}

fn run_sample(cmd: &SampleCmd) -> Result<i32> {
    let model = parse_model(dist_name(cmd.dist.dist), &cmd.dist.params)?;
    let values = model.sample(cmd.n, cmd.seed)?;
    io::write_atomic(&cmd.out, &io::encode_samples(&values, cmd.format))?;
    Ok(0)
}

fn run_proxy(cmd: &ProxyCmd, out: &mut dyn Write) -> Result<i32> {
    let model = parse_model(dist_name(cmd.dist.dist), &cmd.dist.params)?;
    if cmd.k < 2 {
        return Err(Error::Usage("--k must be at least 2".into()));
    }
    let bounds = resolve_bounds(&model, &cmd.bounds, cmd.k)?;
    let denom = gap_denominator(cmd.gap_denominator);
    let mut csv = String::from("i,z,proxy_s,threshold,gap,boundary,s_tilde\n");
    for i in 1..cmd.k {
        let z = i as f64 / cmd.k as f64;
        let tg = threshold_and_gap(z, cmd.alpha, &bounds, denom)?;
        let s = proxy_s(&model, z).ok().map(decimal).unwrap_or_default();
        let s_tilde = discrete_s_tilde(&model, i, cmd.k)
            .ok()
            .map(decimal)
            .unwrap_or_default();
        csv.push_str(&format!(
            "{i},{},{s},{},{},{},{s_tilde}\n",
            decimal(z),
            decimal(tg.threshold),
            decimal(tg.gap),
            decimal(tg.boundary()),
        ));
    }
    emit(csv.as_bytes(), cmd.out.as_ref(), out)?;
    Ok(0)
}

fn run_test(cmd: &TestCmd, out: &mut dyn Write) -> Result<i32> {
    let zeta = cmd.zeta.unwrap_or_else(|| default_zeta(cmd.k));
    let mut config = TestConfig::new(
        TailParams::new(cmd.alpha, cmd.rho)?,
        WellBehavedBounds::new(cmd.beta, cmd.b1, cmd.b2, zeta)?,
        cmd.k,
        cmd.weak.variant(),
    );
    config.gap_denominator = gap_denominator(cmd.gap_denominator);
    config.validate()?;
    if cmd.reps == 0 {
        return Err(Error::Usage("--reps must be at least 1".into()));
    }

    let report = match (&cmd.input, cmd.dist) {
        (Some(path), _) => {
            let values = io::read_samples(path, cmd.format)?;
            let outcome = Samples::from_values(values, config.variant)?.run(&config)?;
            OutcomeReport::from(outcome)
        }
        (None, Some(dist)) => {
            let model = parse_model(dist_name(dist), cmd.params.as_deref().unwrap_or(""))?;
            let n = cmd.n.expect("clap requires --n with --dist");
            let outcomes = harness::run_many(&model, cmd.reps, n, &config, cmd.seed)?;
            let verdicts: Vec<Verdict> = outcomes.iter().map(|o| o.verdict).collect();
            let heavy_votes = verdicts.iter().filter(|v| **v == Verdict::Heavy).count();
            OutcomeReport {
                verdict: majority_vote(&verdicts),
                reps: cmd.reps,
                heavy_votes,
                model: Some(model),
                outcome: outcomes.into_iter().next().expect("reps >= 1"),
            }
        }
        (None, None) => unreachable!("clap requires a source"),
    };

    let bytes = report::render(Report::Outcome(&report), cmd.report_format)?;
    emit(&bytes, cmd.out.as_ref(), out)?;
    let verdict = match report.verdict {
        Verdict::Heavy => "heavy",
        Verdict::Light => "light",
    };
    if cmd.out.is_some() {
        writeln!(out, "verdict={verdict}")?;
    }
    Ok(match (cmd.exit_verdict, report.verdict) {
        (false, _) => 0,
        (true, Verdict::Heavy) => EXIT_HEAVY,
        (true, Verdict::Light) => EXIT_LIGHT,
    })
}

fn run_simulate(cmd: &SimulateCmd, out: &mut dyn Write) -> Result<i32> {
    let model = parse_model(dist_name(cmd.dist.dist), &cmd.dist.params)?;
    let mut config = TestConfig::new(
        TailParams::new(cmd.alpha, cmd.rho)?,
        resolve_bounds(&model, &cmd.bounds, cmd.k)?,
        cmd.k,
        cmd.weak.variant(),
    );
    config.gap_denominator = gap_denominator(cmd.gap_denominator);
    let rep = harness::replicate(&model, cmd.reps, cmd.n, &config, cmd.seed)?;
    let bytes = report::render(Report::Replication(&rep), cmd.report_format)?;
    emit(&bytes, cmd.out.as_ref(), out)?;
    Ok(0)
}

fn run_complexity(cmd: &ComplexityCmd, out: &mut dyn Write) -> Result<i32> {
    let tail = TailParams::new(cmd.alpha, cmd.rho)?;
    // Neither calculator reads zeta.
    let bounds = WellBehavedBounds::new(cmd.beta, cmd.b1, cmd.b2, 0.5)?;
    let constants = ComplexityConstants {
        c_k: cmd.ck,
        c_n: cmd.cn,
    };
    if !(constants.c_k > 0.0 && constants.c_n > 0.0) {
        return Err(Error::Usage("--ck and --cn must be positive".into()));
    }
    let form = match cmd.form {
        FormChoice::Statement => SampleComplexity::Statement,
        FormChoice::Proof => SampleComplexity::Proof,
    };
    let k = required_buckets(&tail, &bounds, constants.c_k)?;
    let n = required_samples(k, &tail, &bounds, constants.c_n, form)?;
    writeln!(out, "k={k}")?;
    writeln!(out, "n={n}")?;
    Ok(0)
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Sample(c) => run_sample(c),
        Command::Proxy(c) => run_proxy(c, out),
        Command::Test(c) => run_test(c, out),
        Command::Simulate(c) => run_simulate(c, out),
        Command::Complexity(c) => run_complexity(c, out),
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the process exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().ansi().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return e.exit_code();
        }
    };
    let mut buf = Vec::new();
    let result = match cli.threads {
        Some(0) => Err(Error::Usage("--threads must be at least 1".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Usage(e.to_string()))
            .and_then(|pool| pool.install(|| dispatch(&cli, &mut buf))),
        None => dispatch(&cli, &mut buf),
    };
    let result = result.and_then(|code| Ok(out.write_all(&buf).map(|_| code)?));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Usage(_) => 2,
                _ => 1,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_params() {
        assert_eq!(
            parse_model("lomax", "a=2, lambda=3").unwrap(),
            DistributionModel::lomax(2.0, 3.0).unwrap()
        );
        assert!(matches!(
            parse_model("exponential", "rate=1"),
            Err(Error::Usage(_))
        ));
        assert!(matches!(parse_model("lomax", "a=1"), Err(Error::Usage(_))));
        assert!(matches!(
            parse_model("exponential", "lambda=1,lambda=2"),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            parse_model("exponential", "lambda=-1"),
            Err(Error::Core(_))
        ));
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
