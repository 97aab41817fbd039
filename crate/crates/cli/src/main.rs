//! `perlick`: spectra, wavefunctions, verification suites, degeneracy tables
//! and curvature profiles of the Perlick Family I systems.

mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use perlick::closedform::ClosedFormState;
use perlick::degeneracy::{energy, multiplet_table, LevelLabel, RationalExponent};
use perlick::model::{conformal_edge, perlick_curvature, perlick_curvature_flat_radius, WeightFunction};
use perlick::oracle::{conformal_resolution_limit, Domain, Quadrature, BISECTION_TOLERANCE};
use perlick::quantize::{Angular, HamiltonianVariant};
use perlick::susy::build_eigenfunction;
use perlick::verify::{self, OracleGrid, Suite, SuiteReport};
use perlick::{CoordinateChart, PerlickIParams, RadialFunction};

use report::{Cell, Report};

const EXIT_DOMAIN: u8 = 1;
const EXIT_VERIFICATION: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(#[from] perlick::Error),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Output(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Domain(_) | CliError::Invalid(_) => "domain",
            CliError::Output(_) => "output",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "perlick", version, about = "Spectra and checks of the Perlick Family I systems")]
#[command(arg_required_else_help = true)]
struct Cli {
    /// Print the Hamiltonian variant conventions and exit.
    #[arg(long)]
    convention: bool,

    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,

    /// Add the wall-clock runtime to the diagnostics.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energy levels E(n, l) with their exact w.
    Spectrum(SpectrumArgs),
    /// Tabulate a normalized bound state.
    Wavefunction(WavefunctionArgs),
    /// Run a verification suite (or `all`).
    Verify(VerifyArgs),
    /// Degenerate multiplets for a rational exponent a = 1/β.
    Degeneracy(DegeneracyArgs),
    /// Scalar curvature profile.
    Curvature(CurvatureArgs),
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long, allow_negative_numbers = true)]
    mu: f64,
    #[arg(long, allow_negative_numbers = true)]
    k: f64,
    /// Deformation exponent; `p/q` or a decimal.
    #[arg(long, default_value = "1", value_parser = parse_rational)]
    beta: Rational64,
    /// Constant shift G of the potential.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    g: f64,
}

impl ModelArgs {
    fn params(&self) -> Result<PerlickIParams, CliError> {
        let beta = rational_f64(self.beta)?;
        Ok(PerlickIParams::new(beta, self.k, self.mu)?.with_g_shift(self.g)?)
    }

    fn record(&self, r: Report) -> Report {
        r.param("mu", self.mu)
            .param("k", self.k)
            .param("beta", self.beta.to_string())
            .param("g", self.g)
    }
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 3)]
    nmax: u32,
    #[arg(long, default_value_t = 3)]
    lmax: u32,
    /// Operator whose eigenvalues are listed.
    #[arg(long, default_value = "vm_general_beta", value_parser = parse_variant)]
    variant: HamiltonianVariant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Picture {
    /// Closed-form state in the conformal chart, weight 8r̃²/(1-k²r̃²)².
    Conformal,
    /// Ladder state of the one-dimensional hyperbolic problem, weight 1.
    Hyperbolic,
}

#[derive(Debug, Args)]
struct WavefunctionArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    l: u32,
    #[arg(long, value_enum, default_value_t = Picture::Conformal)]
    picture: Picture,
    #[arg(long, default_value_t = 200)]
    points: u32,
    /// Right end of the table (default: the chart edge, or 30 for the
    /// hyperbolic picture).
    #[arg(long)]
    xmax: Option<f64>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(value_parser = parse_suites)]
    suite: Vec<SuiteArg>,
    #[command(flatten)]
    model: ModelArgs,
    /// Shape parameter of the one-dimensional checks.
    #[arg(long, default_value_t = 1.0)]
    q: f64,
    #[arg(long, default_value_t = 3)]
    levels: u32,
    #[arg(long, default_value_t = 1e-3)]
    rmin: f64,
    #[arg(long, default_value_t = 30.0)]
    rmax: f64,
    #[arg(long, default_value_t = 3999)]
    points: usize,
    /// Exponent of the degeneracy suite, as `p/q`.
    #[arg(long, default_value = "1/2", value_parser = parse_fraction)]
    a: Rational64,
    /// Box n, l ≤ box of the degeneracy suite.
    #[arg(long = "box", default_value_t = 20)]
    box_size: u32,
    /// Largest n + l of the closed-form suite.
    #[arg(long, default_value_t = 5)]
    nlmax: u32,
    /// Curvature of the flat-limit suite.
    #[arg(long, default_value_t = 1e-4)]
    flat_k: f64,
}

#[derive(Debug, Args)]
struct DegeneracyArgs {
    /// a = 1/β as an exact fraction `p/q`.
    #[arg(long, value_parser = parse_fraction)]
    a: Rational64,
    #[arg(long, allow_negative_numbers = true)]
    mu: f64,
    #[arg(long, allow_negative_numbers = true)]
    k: f64,
    #[arg(long, default_value_t = 8)]
    nmax: u32,
    #[arg(long, default_value_t = 8)]
    lmax: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CurvatureChart {
    Conformal,
    FlatRadius,
}

#[derive(Debug, Args)]
struct CurvatureArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, value_enum, default_value_t = CurvatureChart::Conformal)]
    chart: CurvatureChart,
    #[arg(long, default_value_t = 100)]
    points: u32,
    /// Right end of the profile (default: the chart edge, or 10 on the
    /// flat-radius chart).
    #[arg(long)]
    xmax: Option<f64>,
}

fn parse_fraction(s: &str) -> Result<Rational64, String> {
    let bad = || format!("`{s}` is not an exact fraction p/q");
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: i64 = p.parse().map_err(|_| bad())?;
    let q: i64 = q.parse().map_err(|_| bad())?;
    if q == 0 {
        return Err(format!("`{s}` has a zero denominator"));
    }
    Ok(Rational64::new(p, q))
}

/// `p/q`, an integer, or a plain decimal read exactly (`1.25` = 5/4).
fn parse_rational(s: &str) -> Result<Rational64, String> {
    if s.contains('/') || !s.contains('.') {
        return parse_fraction(s);
    }
    let bad = || format!("`{s}` is not a fraction or a plain decimal");
    let (int, frac) = s.trim().split_once('.').ok_or_else(bad)?;
    if frac.len() > 17 || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let negative = int.starts_with('-');
    let int = int.trim_start_matches(['-', '+']);
    let digits = format!("{int}{frac}");
    let num: i64 = if digits.is_empty() { Err(bad())? } else { digits.parse().map_err(|_| bad())? };
    let den = 10i64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
    let r = Rational64::new(num, den);
    Ok(if negative { -r } else { r })
}

fn parse_variant(s: &str) -> Result<HamiltonianVariant, String> {
    HamiltonianVariant::from_name(s).ok_or_else(|| {
        let names: Vec<_> = HamiltonianVariant::ALL.iter().map(|v| v.name()).collect();
        format!("unknown variant `{s}` (expected one of {})", names.join(", "))
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum SuiteArg {
    All,
    One(Suite),
}

fn parse_suites(s: &str) -> Result<SuiteArg, String> {
    if s == "all" {
        return Ok(SuiteArg::All);
    }
    Suite::from_name(s).map(SuiteArg::One).ok_or_else(|| {
        let names: Vec<_> = Suite::ALL.iter().map(|v| v.name()).collect();
        format!("unknown suite `{s}` (expected all, {})", names.join(", "))
    })
}

fn rational_f64(r: Rational64) -> Result<f64, CliError> {
    r.to_f64().ok_or_else(|| CliError::Invalid(format!("{r} is not representable")))
}

fn exponent(beta: Rational64) -> Result<RationalExponent, CliError> {
    if beta <= Rational64::zero() {
        return Err(CliError::Invalid(format!("beta = {beta} must be positive")));
    }
    Ok(RationalExponent::from_ratio(beta.recip())?)
}

/// `count` interior points of `(0, end)`.
fn interior(end: f64, count: u32) -> impl Iterator<Item = f64> {
    (1..=count).map(move |i| end * i as f64 / (count + 1) as f64)
}

fn positive_end(xmax: Option<f64>, default: f64, edge: f64) -> Result<f64, CliError> {
    let end = xmax.unwrap_or(default);
    if !(end.is_finite() && end > 0.0 && end <= edge) {
        return Err(CliError::Invalid(format!("xmax = {end} must lie in (0, {edge}]")));
    }
    Ok(end)
}

fn spectrum(args: &SpectrumArgs) -> Result<Report, CliError> {
    let p = args.model.params()?;
    let v = args.variant;
    let general = matches!(v, HamiltonianVariant::VmGeneralBeta | HamiltonianVariant::HPrime);
    if !general && args.model.beta != Rational64::from_integer(1) {
        return Err(CliError::Invalid(format!("variant {} requires beta = 1", v.name())));
    }
    let a = exponent(args.model.beta)?;
    let mut r = args.model.record(Report::new("spectrum", vec!["n", "l", "w", "E"]));
    r = r.param("nmax", args.nmax).param("lmax", args.lmax).param("variant", v.name());
    for n in 0..=args.nmax {
        for l in 0..=args.lmax {
            let label = LevelLabel::new(n, l, a);
            let w = if general { label.w } else { Rational64::from_integer((n + l + 1) as i64) };
            match v.eigenvalue(n, Angular::L(l), &p) {
                Ok(e) => r.push(vec![n.into(), l.into(), w.to_string().into(), e.into()]),
                Err(perlick::Error::Unbound { .. }) => {}
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(r)
}

fn wavefunction(args: &WavefunctionArgs) -> Result<Report, CliError> {
    let p = args.model.params()?;
    if args.model.beta != Rational64::from_integer(1) {
        return Err(CliError::Invalid("wavefunction tables need beta = 1".into()));
    }
    if args.points == 0 {
        return Err(CliError::Invalid("points must be positive".into()));
    }
    let (mu, k) = (p.mu, p.k);
    let (state, end, norm): (Box<dyn RadialFunction>, f64, f64) = match args.picture {
        Picture::Conformal => {
            let s = ClosedFormState::new(args.n, args.l, mu, k)?;
            let quad = Quadrature::new(Domain::PullBack {
                chart: CoordinateChart::CONFORMAL,
                r_max: conformal_resolution_limit(k),
            });
            let w = WeightFunction::SchrodingerConformal;
            let norm = quad.integrate(|x| s.value(x).powi(2), |x| w.eval(x, &p), &p)?;
            let edge = conformal_edge(&p);
            (Box::new(s), positive_end(args.xmax, edge, edge)?, norm)
        }
        Picture::Hyperbolic => {
            let s = build_eigenfunction(args.n, (args.l + 1) as f64, mu, k)?;
            let quad = Quadrature::new(Domain::HalfLine { start: 0.0, scale: 1.0 });
            let norm = quad.integrate(|x| s.value(x).powi(2), |_| Ok(1.0), &p)?;
            (Box::new(s), positive_end(args.xmax, 30.0, f64::INFINITY)?, norm)
        }
    };
    if !(norm.is_finite() && norm > 0.0) {
        return Err(CliError::Output(format!("state norm {norm} is not positive")));
    }
    let c = norm.sqrt().recip();
    let coordinate = match args.picture {
        Picture::Conformal => "x",
        Picture::Hyperbolic => "r",
    };
    let mut r = args.model.record(Report::new("wavefunction", vec![coordinate, "psi"]));
    r = r
        .param("n", args.n)
        .param("l", args.l)
        .param("picture", format!("{:?}", args.picture).to_lowercase())
        .param("points", args.points);
    let xs: Vec<f64> = interior(end, args.points).collect();
    let values: Vec<f64> = xs.par_iter().map(|&x| c * state.value(x)).collect();
    for (x, v) in xs.into_iter().zip(values) {
        r.push(vec![x.into(), v.into()]);
    }
    r.tolerances.push(("quadrature_panels".into(), Cell::Int(64)));
    r.tolerances.push(("quadrature_order".into(), Cell::Int(16)));
    r.grid = vec![("start", 0.0.into()), ("end", end.into()), ("points", args.points.into())];
    Ok(r)
}

fn run_suite(suite: Suite, args: &VerifyArgs, p: &PerlickIParams) -> Result<SuiteReport, CliError> {
    let grid = OracleGrid {
        r_min: args.rmin,
        r_max: args.rmax,
        points: args.points,
    };
    let report = match suite {
        Suite::Oracle => verify::oracle_suite(p, args.q, args.levels, grid),
        Suite::Ladder => verify::ladder_suite(p, args.q),
        Suite::ClosedForm => verify::closedform_suite(p, args.nlmax),
        Suite::Curvature => verify::curvature_suite(p),
        Suite::Similarity => verify::similarity_suite(p),
        Suite::Degeneracy => verify::degeneracy_suite(RationalExponent::from_ratio(args.a)?, p, args.box_size),
        Suite::FlatLimit => verify::flat_limit_suite(p.mu, args.flat_k),
        Suite::Nodes => verify::nodes_suite(p, args.q),
        Suite::BoundStates => verify::bound_states_suite(p, args.q),
    }?;
    Ok(report)
}

fn verify(args: &VerifyArgs) -> Result<(Report, bool), CliError> {
    let p = args.model.params()?;
    let suites: Vec<Suite> = if args.suite.is_empty() || args.suite.contains(&SuiteArg::All) {
        Suite::ALL.to_vec()
    } else {
        args.suite.iter().filter_map(|s| match s {
            SuiteArg::One(s) => Some(*s),
            SuiteArg::All => None,
        }).collect()
    };
    let reports = suites
        .par_iter()
        .map(|&s| run_suite(s, args, &p))
        .collect::<Result<Vec<_>, _>>()?;
    let names: Vec<&str> = suites.iter().map(|s| s.name()).collect();
    let mut r = args.model.record(Report::new("verify", vec!["suite", "check", "measured", "bound", "passed"]));
    r = r
        .param("suites", names.join(","))
        .param("q", args.q)
        .param("levels", args.levels)
        .param("a", args.a.to_string())
        .param("box", args.box_size)
        .param("nlmax", args.nlmax)
        .param("flat_k", args.flat_k);
    for rep in &reports {
        for c in &rep.checks {
            r.push(vec![
                rep.suite.name().into(),
                c.name.clone().into(),
                c.measured.into(),
                c.bound.to_string().into(),
                c.passed.into(),
            ]);
            r.tolerances.push((format!("{}/{}", rep.suite.name(), c.name), c.bound.to_string().into()));
        }
    }
    r.tolerances.push(("bisection".into(), BISECTION_TOLERANCE.into()));
    if suites.contains(&Suite::Oracle) {
        r.grid = vec![
            ("r_min", args.rmin.into()),
            ("r_max", args.rmax.into()),
            ("points", (args.points as u64).into()),
            ("refinements", "N, 2N+1, 4N+3".into()),
        ];
    }
    let passed = reports.iter().all(SuiteReport::passed);
    Ok((r, passed))
}

fn degeneracy(args: &DegeneracyArgs) -> Result<Report, CliError> {
    if args.a <= Rational64::zero() {
        return Err(CliError::Invalid(format!("a = {} must be positive", args.a)));
    }
    let a = RationalExponent::from_ratio(args.a)?;
    // validates mu and k
    energy(&LevelLabel::new(0, 0, a), args.mu, args.k).or_else(|e| match e {
        perlick::Error::Unbound { .. } => Ok(0.0),
        e => Err(e),
    })?;
    let table = multiplet_table(a, args.mu, args.k, args.nmax, args.lmax)?;
    let mut r = Report::new("degeneracy", vec!["w", "E", "members", "multiplicity"])
        .param("a", args.a.to_string())
        .param("mu", args.mu)
        .param("k", args.k)
        .param("nmax", args.nmax)
        .param("lmax", args.lmax);
    for m in table {
        let members = m.members.iter().map(|x| (x.n, x.l)).collect();
        r.push(vec![m.w.to_string().into(), m.energy.into(), Cell::Pairs(members), m.multiplicity.into()]);
    }
    Ok(r)
}

fn curvature(args: &CurvatureArgs) -> Result<Report, CliError> {
    let p = args.model.params()?;
    if args.points == 0 {
        return Err(CliError::Invalid("points must be positive".into()));
    }
    let (coordinate, end) = match args.chart {
        CurvatureChart::Conformal => {
            let edge = conformal_edge(&p);
            ("x", positive_end(args.xmax, if edge.is_finite() { edge } else { 10.0 }, edge)?)
        }
        CurvatureChart::FlatRadius => ("r", positive_end(args.xmax, 10.0, f64::INFINITY)?),
    };
    let mut r = args.model.record(Report::new("curvature", vec![coordinate, "R"]));
    r = r.param("chart", coordinate).param("points", args.points);
    let xs: Vec<f64> = interior(end, args.points).collect();
    let values = xs
        .par_iter()
        .map(|&x| match args.chart {
            CurvatureChart::Conformal => perlick_curvature(x, &p),
            CurvatureChart::FlatRadius => perlick_curvature_flat_radius(x, &p),
        })
        .collect::<Result<Vec<_>, _>>()?;
    for (x, v) in xs.into_iter().zip(values) {
        r.push(vec![x.into(), v.into()]);
    }
    r.grid = vec![("start", 0.0.into()), ("end", end.into()), ("points", args.points.into())];
    Ok(r)
}

fn conventions() -> Report {
    let mut r = Report::new(
        "convention",
        vec![
            "variant",
            "chart",
            "coordinate",
            "energy_scale",
            "constant_shift_k2",
            "operator_constant_k2",
            "includes_g",
            "shape",
            "eigenvalue",
            "weight",
        ],
    );
    for v in HamiltonianVariant::ALL {
        let rec = v.record();
        r.push(vec![
            rec.name.into(),
            rec.chart.into(),
            rec.coordinate.into(),
            rec.energy_scale.into(),
            rec.constant_shift_k2.into(),
            rec.operator_constant_k2.into(),
            rec.includes_g.into(),
            rec.shape.into(),
            rec.eigenvalue.into(),
            rec.weight.into(),
        ]);
    }
    r
}

/// Runs the parsed command. Returns the report and whether every check
/// passed.
fn dispatch(cli: &Cli) -> Result<(Report, bool), CliError> {
    if cli.convention {
        return Ok((conventions(), true));
    }
    match cli.command.as_ref() {
        Some(Command::Spectrum(a)) => Ok((spectrum(a)?, true)),
        Some(Command::Wavefunction(a)) => Ok((wavefunction(a)?, true)),
        Some(Command::Verify(a)) => verify(a),
        Some(Command::Degeneracy(a)) => Ok((degeneracy(a)?, true)),
        Some(Command::Curvature(a)) => Ok((curvature(a)?, true)),
        None => Err(CliError::Invalid("no command given".into())),
    }
}

fn fail(e: &CliError) -> ExitCode {
    let line = serde_json::json!({ "error": e.kind(), "message": e.to_string() });
    eprintln!("{line}");
    ExitCode::from(EXIT_DOMAIN)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let start = Instant::now();
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n as usize).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(CliError::Output(e.to_string())),
        },
        None => dispatch(&cli),
    };
    let (mut report, passed) = match result {
        Ok(x) => x,
        Err(e) => return fail(&e),
    };
    if cli.timing {
        report.runtime_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => return fail(&e),
    };
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
        return ExitCode::from(EXIT_DOMAIN);
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFICATION)
    }
}
