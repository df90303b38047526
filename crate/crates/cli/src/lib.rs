//! Command-line front end for `pauli-geometry`.
//!
//! [`run`] parses arguments, executes one subcommand and writes the result
//! as JSON or CSV. Exit codes: 0 success, 1 output could not be written,
//! 2 usage error, 3 domain error (e.g. a map that is not a channel).

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use pauli_geometry::charts::{chart_csv, chart_data};
use pauli_geometry::cross_section::CrossSection;
use pauli_geometry::dynamics::{self, Rate, RateSpec};
use pauli_geometry::volume::{self, exact_supported, DEFAULT_SAMPLES};
use pauli_geometry::{
    classify, cross_section, eigenvalues_from_probabilities, exact_volume, is_l_divisible,
    tlg_rates_for_target, volume_ratio, ClassificationReport, Error, Family, LdivMode, Method,
    PauliEigenvalues, PauliProbabilities, RatioResult, RegionId, VolumeEstimate,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "pauli-geom",
    version,
    about = "Classify qubit Pauli maps and compute Hilbert-Schmidt volumes of their regions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the result to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify one Pauli map.
    Classify(ClassifyArgs),
    /// Volume of a region within a family.
    Volume(VolumeArgs),
    /// Ratio of two region volumes within a family.
    Ratio(RatioArgs),
    /// Relative-volume tables with the published values attached.
    Charts(ChartsArgs),
    /// Region outlines inside the eigenvalue cube.
    CrossSection(CrossSectionArgs),
    /// Eigenvalue path generated by time-dependent decoherence rates.
    Trajectory(TrajectoryArgs),
    /// Integrated rates that reach a target channel.
    Rates(RatesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

fn format_parser() -> impl TypedValueParser<Value = Format> {
    PossibleValuesParser::new(["json", "csv"]).map(|s| {
        if s == "csv" {
            Format::Csv
        } else {
            Format::Json
        }
    })
}

fn family_parser() -> impl TypedValueParser<Value = Family> {
    PossibleValuesParser::new(Family::ALL.map(Family::name))
        .map(|s| s.parse().expect("listed family"))
}

fn region_parser() -> impl TypedValueParser<Value = RegionId> {
    PossibleValuesParser::new(RegionId::ALL.map(RegionId::name))
        .map(|s| s.parse().expect("listed region"))
}

fn mode_parser() -> impl TypedValueParser<Value = LdivMode> {
    PossibleValuesParser::new(["literal", "cpdiv"]).map(|s| s.parse().expect("listed mode"))
}

fn method_parser() -> impl TypedValueParser<Value = Method> {
    PossibleValuesParser::new(["exact", "mc"]).map(|s| s.parse().expect("listed method"))
}

fn parse_list<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(format!(
            "expected {N} comma-separated numbers, got {}",
            parts.len()
        ));
    }
    let mut out = [0.0; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p
            .parse::<f64>()
            .map_err(|_| format!("'{p}' is not a number"))?;
        if !o.is_finite() {
            return Err(format!("'{p}' is not finite"));
        }
    }
    Ok(out)
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("'{s}' is not a positive number")),
    }
}

fn non_negative(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("'{s}' is not a non-negative number")),
    }
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    /// Eigenvalues λ1,λ2,λ3.
    #[arg(long, value_parser = parse_list::<3>, allow_hyphen_values = true,
          required_unless_present = "probabilities", conflicts_with = "probabilities")]
    eigenvalues: Option<[f64; 3]>,

    /// Pauli weights p0,p1,p2,p3 (must sum to 1).
    #[arg(long, value_parser = parse_list::<4>, allow_hyphen_values = true)]
    probabilities: Option<[f64; 4]>,

    #[arg(long, value_parser = format_parser(), default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct EngineArgs {
    #[arg(long, value_parser = family_parser())]
    family: Family,

    /// Reading of L-divisibility.
    #[arg(long, value_parser = mode_parser(), default_value = "literal")]
    ldiv_mode: LdivMode,

    /// Exact where supported, otherwise Monte Carlo.
    #[arg(long, value_parser = method_parser())]
    method: Option<Method>,

    /// Monte Carlo sample count.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..), default_value_t = DEFAULT_SAMPLES)]
    samples: u64,

    /// Monte Carlo seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long, value_parser = format_parser(), default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct VolumeArgs {
    #[arg(long, value_parser = region_parser())]
    region: RegionId,

    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Debug, Args)]
struct RatioArgs {
    /// Numerator region.
    #[arg(long, value_parser = region_parser())]
    num: RegionId,

    /// Denominator region.
    #[arg(long, value_parser = region_parser())]
    den: RegionId,

    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Debug, Args)]
struct ChartsArgs {
    #[arg(long, value_parser = mode_parser(), default_value = "literal")]
    ldiv_mode: LdivMode,

    #[arg(long, value_parser = format_parser(), default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
struct CrossSectionArgs {
    /// Restrict to one family (default: all).
    #[arg(long, value_parser = family_parser())]
    family: Option<Family>,

    #[arg(long, value_parser = format_parser(), default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct TrajectoryArgs {
    /// Three rates separated by ';'. Each is a number, `pw:t0:v0,t1:v1,...`
    /// (piecewise constant from t0 = 0), or an expression in `t`.
    #[arg(long, allow_hyphen_values = true)]
    rates: String,

    #[arg(long, value_parser = non_negative)]
    t_max: f64,

    /// Absolute quadrature tolerance per integrated rate.
    #[arg(long, value_parser = positive, default_value_t = dynamics::DEFAULT_TOL)]
    tol: f64,

    /// Number of grid intervals on [0, t-max].
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=10_000_000), default_value_t = 100)]
    steps: u64,

    #[arg(long, value_parser = format_parser(), default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
struct RatesArgs {
    /// Target eigenvalues λ1,λ2,λ3 (all positive).
    #[arg(long, value_parser = parse_list::<3>, allow_hyphen_values = true)]
    eigenvalues: [f64; 3],

    #[arg(long, value_parser = format_parser(), default_value = "json")]
    format: Format,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<String, Failure>;

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("results serialize");
    s.push('\n');
    s
}

fn csv(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut s = format!("{header}\n");
    for r in rows {
        s.push_str(&r);
        s.push('\n');
    }
    s
}

/// CSV field, quoted when it contains a separator or quote.
fn quoted(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn do_classify(a: &ClassifyArgs) -> Outcome {
    let e = match (a.eigenvalues, a.probabilities) {
        (Some(l), _) => PauliEigenvalues(l),
        (None, Some(p)) => eigenvalues_from_probabilities(&PauliProbabilities::new(p)?)?,
        (None, None) => unreachable!("clap requires one input"),
    };
    let r = classify(&e);
    Ok(match a.format {
        Format::Json => json(&r),
        Format::Csv => classify_csv(&r),
    })
}

fn classify_csv(r: &ClassificationReport) -> String {
    let [l1, l2, l3] = r.eigenvalues.0;
    let [p0, p1, p2, p3] = r.probabilities.0;
    let boundary: Vec<String> = r
        .boundary
        .iter()
        .map(|b| {
            serde_json::to_value(b)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default()
        })
        .collect();
    csv(
        "lambda1,lambda2,lambda3,p0,p1,p2,p3,positive_tp,cptp,entanglement_breaking,tlg_obtainable,invertible,p_divisible,cp_divisible,l_divisible_literal,l_divisible_cpdiv_mode,boundary",
        [format!(
            "{l1},{l2},{l3},{p0},{p1},{p2},{p3},{},{},{},{},{},{},{},{},{},{}",
            r.positive_tp,
            r.cptp,
            r.entanglement_breaking,
            r.tlg_obtainable,
            r.invertible,
            r.p_divisible,
            r.cp_divisible,
            r.l_divisible_literal,
            r.l_divisible_cpdiv_mode,
            boundary.join(";")
        )],
    )
}

fn pick_method(e: &EngineArgs, regions: &[RegionId]) -> Method {
    e.method.unwrap_or_else(|| {
        if regions
            .iter()
            .all(|&r| exact_supported(e.family, r, e.ldiv_mode))
        {
            Method::Exact
        } else {
            Method::MonteCarlo
        }
    })
}

fn do_volume(a: &VolumeArgs) -> Outcome {
    let e = &a.engine;
    let v = match pick_method(e, &[a.region]) {
        Method::Exact => exact_volume(e.family, a.region, e.ldiv_mode)?,
        Method::MonteCarlo => {
            volume::mc_volume(e.family, a.region, e.samples, e.seed, e.ldiv_mode)?
        }
    };
    Ok(match e.format {
        Format::Json => json(&v),
        Format::Csv => volume_csv(&v),
    })
}

fn volume_csv(v: &VolumeEstimate) -> String {
    csv(
        "family,region,mode,method,value,stderr,samples,seed",
        [format!(
            "{},{},{},{},{},{},{},{}",
            v.family,
            v.region,
            v.mode,
            v.method.name(),
            v.value,
            v.stderr,
            v.samples,
            v.seed
        )],
    )
}

fn do_ratio(a: &RatioArgs) -> Outcome {
    let e = &a.engine;
    let method = pick_method(e, &[a.num, a.den]);
    let r = volume_ratio(
        e.family,
        a.num,
        a.den,
        method,
        e.samples,
        e.seed,
        e.ldiv_mode,
    )?;
    Ok(match e.format {
        Format::Json => json(&r),
        Format::Csv => ratio_csv(&r),
    })
}

fn ratio_csv(r: &RatioResult) -> String {
    csv(
        "family,numerator,denominator,mode,method,value,stderr,samples,seed",
        [format!(
            "{},{},{},{},{},{},{},{},{}",
            r.family,
            r.numerator,
            r.denominator,
            r.mode,
            r.method.name(),
            r.value,
            r.stderr,
            r.samples,
            r.seed
        )],
    )
}

fn do_charts(a: &ChartsArgs) -> Outcome {
    let rows = chart_data(a.ldiv_mode)?;
    Ok(match a.format {
        Format::Json => json(&rows),
        Format::Csv => chart_csv(&rows),
    })
}

fn do_cross_section(a: &CrossSectionArgs) -> Outcome {
    let families: Vec<Family> = match a.family {
        Some(f) => vec![f],
        None => Family::ALL.to_vec(),
    };
    let sections: Vec<CrossSection> = families.into_iter().flat_map(cross_section).collect();
    Ok(match a.format {
        Format::Json => json(&sections),
        Format::Csv => {
            let mut rows = Vec::new();
            for s in &sections {
                for r in &s.regions {
                    for (i, [x, y, z]) in r.vertices.iter().enumerate() {
                        rows.push(format!(
                            "{},{},{},{i},{x},{y},{z}",
                            s.family,
                            quoted(&s.plane),
                            r.label
                        ));
                    }
                }
            }
            csv("family,plane,label,vertex,lambda1,lambda2,lambda3", rows)
        }
    })
}

thread_local! {
    static BUILTINS: meval::Context<'static> = meval::Context::new();
}

fn parse_rate(spec: &str, t_max: f64) -> Result<Rate, String> {
    let spec = spec.trim();
    if let Ok(c) = spec.parse::<f64>() {
        return if c.is_finite() {
            Ok(Rate::Constant(c))
        } else {
            Err(format!("rate '{spec}' is not finite"))
        };
    }
    if let Some(body) = spec.strip_prefix("pw:") {
        let mut breakpoints = Vec::new();
        let mut values = Vec::new();
        for piece in body.split(',') {
            let (t, v) = piece
                .split_once(':')
                .ok_or_else(|| format!("piecewise entry '{piece}' is not of the form t:value"))?;
            let num = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("'{s}' is not a number"))
            };
            breakpoints.push(num(t)?);
            values.push(num(v)?);
        }
        return Rate::piecewise(breakpoints, values).map_err(|e| e.to_string());
    }
    let expr: meval::Expr = spec
        .parse()
        .map_err(|e| format!("cannot parse rate '{spec}': {e}"))?;
    let eval = move |t: f64| BUILTINS.with(|ctx| expr.eval_with_context((("t", t), ctx)));
    for t in [0.0, t_max] {
        eval(t).map_err(|e| format!("cannot evaluate rate '{spec}' at t = {t}: {e}"))?;
    }
    Ok(Rate::function(move |t| eval(t).unwrap_or(f64::NAN)))
}

fn parse_rates(s: &str, t_max: f64) -> Result<[Rate; 3], String> {
    let parts: Vec<&str> = s.split(';').collect();
    if parts.len() != 3 {
        return Err(format!(
            "expected three rates separated by ';', got {}",
            parts.len()
        ));
    }
    Ok([
        parse_rate(parts[0], t_max)?,
        parse_rate(parts[1], t_max)?,
        parse_rate(parts[2], t_max)?,
    ])
}

fn do_trajectory(a: &TrajectoryArgs) -> Outcome {
    let rates = parse_rates(&a.rates, a.t_max)
        .map_err(|m| Failure::Usage(format!("invalid value for '--rates': {m}")))?;
    let spec = RateSpec::new(rates, a.t_max)?;
    let grid = if a.t_max == 0.0 {
        vec![0.0]
    } else {
        dynamics::uniform_grid(a.t_max, a.steps as usize)
    };
    let traj = dynamics::trajectory(&spec, &grid, a.tol)?;
    Ok(match a.format {
        Format::Json => json(&traj),
        Format::Csv => traj.to_csv(),
    })
}

#[derive(Serialize)]
struct RatesOutput {
    eigenvalues: PauliEigenvalues,
    integrated_rates: [f64; 3],
    /// All integrated rates non-negative: reachable by a Markovian semigroup.
    markovian: bool,
    l_divisible_literal: Option<bool>,
}

fn do_rates(a: &RatesArgs) -> Outcome {
    let e = PauliEigenvalues(a.eigenvalues);
    let g = tlg_rates_for_target(&e)?;
    let out = RatesOutput {
        eigenvalues: e,
        integrated_rates: g,
        markovian: g.iter().all(|&x| x >= 0.0),
        l_divisible_literal: is_l_divisible(&e, LdivMode::Literal).ok(),
    };
    Ok(match a.format {
        Format::Json => json(&out),
        Format::Csv => {
            let mut row = String::new();
            let _ = write!(row, "{},{},{},{}", g[0], g[1], g[2], out.markovian);
            csv("gamma1,gamma2,gamma3,markovian", [row])
        }
    })
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Classify(a) => do_classify(a),
        Command::Volume(a) => do_volume(a),
        Command::Ratio(a) => do_ratio(a),
        Command::Charts(a) => do_charts(a),
        Command::CrossSection(a) => do_cross_section(a),
        Command::Trajectory(a) => do_trajectory(a),
        Command::Rates(a) => do_rates(a),
    };
    match result {
        Ok(text) => {
            let written = match &cli.output {
                Some(path) => {
                    fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))
                }
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => EXIT_OK,
                Err(m) => {
                    let _ = writeln!(err, "error: cannot write output: {m}");
                    EXIT_IO
                }
            }
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}
