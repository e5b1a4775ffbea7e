//! Command-line front end: densities, expected counts, asymptotics,
//! systems, matrices, complex-zero profiles, Monte Carlo estimators, and
//! the self-test suite, with CSV output for curves and JSON for scalars.

mod families;
mod output;

use clap::{Args, Parser, Subcommand};
use families::{Family, VgfFamily};
use output::{emit_csv, emit_json, Format};
use randzeros::ensembles::{kac_asymptotic, noncentral_asymptotic};
use randzeros::matrices::{
    char_poly, kac_matrix, matrix_poly_factor, real_eigen_asymptotic, real_eigen_expected,
};
use randzeros::mc::{
    aberth_roots, mc_complex_radial, mc_fixed_points, mc_matrix_poly, mc_real_eigenvalues,
    mc_real_zeros, sturm_count, MCConfig,
};
use randzeros::numerics::{GaussianStream, Interval};
use randzeros::systems::{systems_density, systems_expected};
use serde::Serialize;
use std::process::ExitCode;

/// Environment variable consulted for the default Monte Carlo seed.
const SEED_ENV: &str = "RANDZEROS_SEED";

#[derive(Parser)]
#[command(
    name = "randzeros",
    version,
    about = "Expected real and complex zeros of random functions, with Monte Carlo cross-checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Zero density over a grid of points
    Density(DensityArgs),
    /// Expected number of real zeros on an interval
    Expect(ExpectArgs),
    /// Asymptotic expansions of the iid-coefficient zero count
    Asymptotic(AsymptoticArgs),
    /// Expected zeros for ensembles with a non-central coefficient mean
    Noncentral(NoncentralArgs),
    /// Expected counts and densities for systems of equations
    Systems(SystemsArgs),
    /// Random-matrix eigenvalue counts and the test-matrix spectrum
    #[command(subcommand)]
    Matrix(MatrixCmd),
    /// Complex-zero radial profiles and strip counts
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Monte Carlo estimators
    #[command(subcommand)]
    Mc(McCmd),
    /// Run the full cross-validation suite
    Selftest,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family: kac | kostlan | power-series | correlated-power-series |
    /// entire | trig | dirichlet | chebyshev | sin-exp
    #[arg(long)]
    family: String,
    /// Degree (kac, kostlan, chebyshev)
    #[arg(long)]
    n: Option<usize>,
    /// Neighbor correlation (correlated-power-series), |r| <= 1/2
    #[arg(long)]
    r: Option<f64>,
    /// Mode scales for trig, comma separated
    #[arg(long, value_delimiter = ',')]
    sigma: Option<Vec<f64>>,
    /// Mode frequencies for trig, comma separated
    #[arg(long, value_delimiter = ',')]
    nu: Option<Vec<f64>>,
    /// Series truncation (dirichlet; default 100000)
    #[arg(long)]
    terms: Option<usize>,
}

#[derive(Args)]
struct DensityArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Evaluation grid lo:hi:count
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    #[arg(long, default_value = "csv")]
    format: Format,
    /// Evaluate through the kernel engine instead of the closed form
    #[arg(long)]
    engine: bool,
}

#[derive(Args)]
struct ExpectArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Interval lower end (default: the family domain)
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    /// Interval upper end (default: the family domain)
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    /// Quadrature tolerance when no closed form applies
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Args)]
struct AsymptoticArgs {
    /// Polynomial degree
    #[arg(long)]
    n: usize,
    /// Mean-to-deviation ratio; omitted gives the central expansion
    #[arg(long, allow_hyphen_values = true)]
    m: Option<f64>,
}

#[derive(Args)]
struct NoncentralArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Mean scale
    #[arg(long, allow_hyphen_values = true)]
    m: f64,
    /// Mean construction: 1 (constant normal projection) or
    /// 2 (tangent-matched)
    #[arg(long, default_value_t = 1)]
    case: u8,
    /// Anchor point for case 2
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    anchor: f64,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Args)]
struct SystemsArgs {
    /// Family: hypercube-kac | kostlan | harmonic | power-series | entire
    #[arg(long)]
    family: String,
    /// Number of equations/unknowns
    #[arg(long)]
    m: usize,
    /// Common degree
    #[arg(long)]
    d: Option<usize>,
    /// Per-equation degrees (kostlan), comma separated
    #[arg(long, value_delimiter = ',')]
    degrees: Option<Vec<usize>>,
    /// Evaluate the density at this point (comma separated) instead of
    /// the total count
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    at: Option<Vec<f64>>,
}

#[derive(Subcommand)]
enum MatrixCmd {
    /// Expected number of real eigenvalues (closed form)
    Expected {
        #[arg(long)]
        n: usize,
    },
    /// Large-n asymptotic sqrt(2n/pi)
    Asymptotic {
        #[arg(long)]
        n: usize,
    },
    /// Matrix-polynomial geometric factor sqrt(pi)Gamma((p+1)/2)/Gamma(p/2)
    Factor {
        #[arg(long)]
        p: usize,
    },
    /// The bidiagonal test matrix spectrum, verified by root brackets
    Kac {
        #[arg(long)]
        n: usize,
    },
    /// Eigenvalue scatter of sampled Gaussian matrices (CSV re,im,
    /// normalized by sqrt(n); n <= 12)
    Portrait {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        matrices: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// Cumulative expected zero count n(r) over a radius grid
    Radial {
        /// Family: kac-complex | kostlan-complex | entire-order-type
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: Option<usize>,
        /// Growth order (entire-order-type)
        #[arg(long)]
        order: Option<f64>,
        /// Growth type (entire-order-type)
        #[arg(long = "type")]
        type_param: Option<f64>,
        /// Radius grid lo:hi:count
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
    /// Expected zeros of a random Dirichlet series in a rectangle
    Strip {
        #[arg(long)]
        x1: f64,
        #[arg(long)]
        x2: f64,
        #[arg(long, allow_hyphen_values = true)]
        y1: f64,
        #[arg(long, allow_hyphen_values = true)]
        y2: f64,
    },
}

#[derive(Subcommand)]
enum McCmd {
    /// Sampled expected real-zero count of an ensemble
    Expect {
        #[command(flatten)]
        family: FamilyArgs,
        /// Constant-projection mean scale
        #[arg(long, allow_hyphen_values = true)]
        m: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<f64>,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Sampled fixed points of ratios of binomial-variance polynomials
    FixedPoints {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Sampled real-eigenvalue count of Gaussian matrices (n <= 8)
    Eigen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Sampled real eigenvalues of random matrix polynomials
    MatrixPoly {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Sampled radial profile of complex zeros
    Radial {
        /// Family: kac-complex | kostlan-complex
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        /// Radii, comma separated
        #[arg(long, value_delimiter = ',')]
        radii: Vec<f64>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

pub(crate) enum CliError {
    Usage(String),
    Numeric(randzeros::Error),
}

impl From<randzeros::Error> for CliError {
    fn from(e: randzeros::Error) -> Self {
        match e {
            randzeros::Error::Domain(_) | randzeros::Error::Unsupported(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Numeric(other),
        }
    }
}

type CliResult = Result<(), CliError>;

pub(crate) fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(usage(format!("grid must be lo:hi:count, got {text}")));
    }
    let lo: f64 = parts[0]
        .parse()
        .map_err(|_| usage(format!("bad grid lower bound {}", parts[0])))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|_| usage(format!("bad grid upper bound {}", parts[1])))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| usage(format!("bad grid count {}", parts[2])))?;
    if count < 2 || !(lo < hi) {
        return Err(usage("grid needs lo < hi and count >= 2"));
    }
    let step = (hi - lo) / (count - 1) as f64;
    Ok((0..count).map(|i| lo + step * i as f64).collect())
}

fn default_seed(cli_seed: Option<u64>) -> u64 {
    cli_seed.unwrap_or_else(|| {
        std::env::var(SEED_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(0)
    })
}

fn dispatch(cmd: Command) -> CliResult {
    match cmd {
        Command::Density(args) => density(args),
        Command::Expect(args) => expect(args),
        Command::Asymptotic(args) => asymptotic(args),
        Command::Noncentral(args) => noncentral(args),
        Command::Systems(args) => systems(args),
        Command::Matrix(cmd) => matrix(cmd),
        Command::Complex(cmd) => complex(cmd),
        Command::Mc(cmd) => mc(cmd),
        Command::Selftest => selftest(),
    }
}

#[derive(Serialize)]
struct DensityRow {
    t: f64,
    rho: f64,
}

fn density(args: DensityArgs) -> CliResult {
    let family = Family::from_args(&args.family)?;
    let grid = parse_grid(&args.grid)?;
    let mut meta = family.meta();
    meta.push(("grid".into(), args.grid.clone()));
    meta.push((
        "path".into(),
        if args.engine { "engine" } else { "closed-form" }.into(),
    ));
    let mut rows = Vec::with_capacity(grid.len());
    if args.engine || family.closed_form().is_none() {
        let e = family.ensemble()?;
        for t in grid {
            rows.push(DensityRow {
                t,
                rho: e.density(t)?,
            });
        }
    } else {
        let cf = family.closed_form().unwrap();
        for t in grid {
            rows.push(DensityRow {
                t,
                rho: cf.density(t)?,
            });
        }
    }
    match args.format {
        Format::Csv => emit_csv(&["t", "rho"], rows.iter().map(|r| vec![r.t, r.rho]), &meta),
        Format::Json => emit_json(&serde_json::json!({ "rows": rows }), &meta),
    }
    Ok(())
}

#[derive(Serialize)]
struct ExpectOut {
    expected: f64,
}

fn expect(args: ExpectArgs) -> CliResult {
    let family = Family::from_args(&args.family)?;
    let interval = family.interval(args.a, args.b)?;
    let mut meta = family.meta();
    meta.push(("a".into(), format!("{}", interval.lo)));
    meta.push(("b".into(), format!("{}", interval.hi)));
    let closed = family
        .closed_form()
        .and_then(|cf| cf.expected(interval).ok());
    let (expected, method) = match closed {
        Some(v) => (v, "closed-form"),
        None => {
            let e = family.ensemble()?;
            meta.push(("tol".into(), format!("{:e}", args.tol)));
            (
                e.expected_zeros(interval, args.tol)
                    ?
                    .value,
                "quadrature",
            )
        }
    };
    meta.push(("method".into(), method.into()));
    emit_json(&ExpectOut { expected }, &meta);
    Ok(())
}

#[derive(Serialize)]
struct AsymptoticOut {
    value: f64,
    terms: Vec<TermOut>,
}

#[derive(Serialize)]
struct TermOut {
    label: String,
    value: f64,
}

#[derive(Serialize)]
struct NoncentralAsymptoticOut {
    expected: f64,
    positive_zeros: f64,
}

fn asymptotic(args: AsymptoticArgs) -> CliResult {
    let meta = vec![("n".into(), args.n.to_string())];
    match args.m {
        None => {
            let a = kac_asymptotic(args.n);
            emit_json(
                &AsymptoticOut {
                    value: a.value,
                    terms: a
                        .terms
                        .into_iter()
                        .map(|(label, value)| TermOut { label, value })
                        .collect(),
                },
                &meta,
            );
        }
        Some(m) => {
            let (expected, positive_zeros) = noncentral_asymptotic(args.n, m)?;
            let mut meta = meta;
            meta.push(("m".into(), m.to_string()));
            emit_json(
                &NoncentralAsymptoticOut {
                    expected,
                    positive_zeros,
                },
                &meta,
            );
        }
    }
    Ok(())
}

fn noncentral(args: NoncentralArgs) -> CliResult {
    let family = Family::from_args(&args.family)?;
    let cf = family
        .closed_form()
        .ok_or_else(|| usage("non-central means exist for the closed-form families only"))?;
    let mean = match args.case {
        1 => randzeros::ensembles::case1_mean(&cf, args.m)?,
        2 => randzeros::ensembles::case2_mean(&cf, args.m, args.anchor)?,
        other => return Err(usage(format!("case must be 1 or 2, got {other}"))),
    };
    let e = family.ensemble()?.with_mean(mean)?;
    let interval = family.interval(args.a, args.b)?;
    let q = e
        .expected_zeros(interval, args.tol)
        ?;
    let mut meta = family.meta();
    meta.push(("m".into(), args.m.to_string()));
    meta.push(("case".into(), args.case.to_string()));
    if args.case == 2 {
        meta.push(("anchor".into(), args.anchor.to_string()));
    }
    meta.push(("a".into(), format!("{}", interval.lo)));
    meta.push(("b".into(), format!("{}", interval.hi)));
    meta.push(("tol".into(), format!("{:e}", args.tol)));
    emit_json(&ExpectOut { expected: q.value }, &meta);
    Ok(())
}

fn parse_system_family(args: &SystemsArgs) -> Result<randzeros::systems::SystemFamily, CliError> {
    use randzeros::systems::SystemFamily;
    let need_d = || {
        args.d
            .ok_or_else(|| usage(format!("family {} needs --d", args.family)))
    };
    Ok(match args.family.as_str() {
        "hypercube-kac" => SystemFamily::HypercubeKac {
            degree: need_d()?,
            vars: args.m,
        },
        "kostlan" => {
            let degrees = match (&args.degrees, args.d) {
                (Some(ds), _) => ds.clone(),
                (None, Some(d)) => vec![d; args.m],
                (None, None) => return Err(usage("kostlan needs --d or --degrees")),
            };
            if degrees.len() != args.m {
                return Err(usage("length of --degrees must equal --m"));
            }
            SystemFamily::Kostlan { degrees }
        }
        "harmonic" => SystemFamily::Harmonic {
            degree: need_d()?,
            vars: args.m,
        },
        "power-series" => SystemFamily::PowerSeries { vars: args.m },
        "entire" => SystemFamily::Entire { vars: args.m },
        other => return Err(usage(format!("unknown system family {other}"))),
    })
}

fn systems(args: SystemsArgs) -> CliResult {
    let family = parse_system_family(&args)?;
    let mut meta = vec![
        ("family".into(), args.family.clone()),
        ("m".into(), args.m.to_string()),
    ];
    if let Some(d) = args.d {
        meta.push(("d".into(), d.to_string()));
    }
    if let Some(ds) = &args.degrees {
        meta.push((
            "degrees".into(),
            ds.iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(","),
        ));
    }
    match &args.at {
        None => {
            let expected = systems_expected(&family)?;
            emit_json(&ExpectOut { expected }, &meta);
        }
        Some(point) => {
            if point.len() != args.m {
                return Err(usage("--at needs exactly m coordinates"));
            }
            let rho = systems_density(&family, point)?;
            meta.push((
                "at".into(),
                point
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            ));
            emit_json(&serde_json::json!({ "density": rho }), &meta);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ScalarOut {
    value: f64,
}

fn matrix(cmd: MatrixCmd) -> CliResult {
    match cmd {
        MatrixCmd::Expected { n } => {
            let value = real_eigen_expected(n)?;
            emit_json(&ScalarOut { value }, &[("n".into(), n.to_string())]);
        }
        MatrixCmd::Asymptotic { n } => {
            if n == 0 {
                return Err(usage("n must be >= 1"));
            }
            emit_json(
                &ScalarOut {
                    value: real_eigen_asymptotic(n),
                },
                &[("n".into(), n.to_string())],
            );
        }
        MatrixCmd::Factor { p } => {
            let value = matrix_poly_factor(p)?;
            emit_json(&ScalarOut { value }, &[("p".into(), p.to_string())]);
        }
        MatrixCmd::Kac { n } => {
            if n == 0 || n > 10 {
                return Err(usage("spectrum verification supports 1 <= n <= 10"));
            }
            let m = kac_matrix(n);
            let p = char_poly(&m)?;
            let mut spectrum = Vec::with_capacity(n + 1);
            for k in 0..=n {
                let center = 2.0 * k as f64 - n as f64;
                let c = sturm_count(&p, Interval::new(center - 0.5, center + 0.5))
                    ?;
                if c != 1 {
                    return Err(CliError::Numeric(randzeros::Error::Evaluation(format!(
                        "bracket around {center} holds {c} roots"
                    ))));
                }
                spectrum.push(center);
            }
            emit_json(
                &serde_json::json!({ "order": n + 1, "spectrum": spectrum }),
                &[("n".into(), n.to_string())],
            );
        }
        MatrixCmd::Portrait { n, matrices, seed } => {
            if n == 0 || n > 12 {
                return Err(usage("portrait supports 1 <= n <= 12"));
            }
            let seed = default_seed(seed);
            let scale = (n as f64).sqrt();
            let mut rows = Vec::new();
            for i in 0..matrices {
                let mut stream = GaussianStream::new(seed, i as u64);
                let a = randzeros::matrices::SquareMatrix::new(n, stream.take_normals(n * n))?;
                let p = char_poly(&a)?;
                let roots = aberth_roots(&p)?;
                for z in roots {
                    rows.push(vec![i as f64, z.re / scale, z.im / scale]);
                }
            }
            let meta = vec![
                ("n".into(), n.to_string()),
                ("matrices".into(), matrices.to_string()),
                ("seed".into(), seed.to_string()),
                ("normalization".into(), "sqrt(n)".into()),
            ];
            emit_csv(&["matrix", "re", "im"], rows.into_iter(), &meta);
        }
    }
    Ok(())
}

fn complex(cmd: ComplexCmd) -> CliResult {
    match cmd {
        ComplexCmd::Radial {
            family,
            n,
            order,
            type_param,
            grid,
            format,
        } => {
            let vgf = VgfFamily::parse(&family, n, order, type_param)?;
            let radii = parse_grid(&grid)?;
            let profile = vgf.inner().radial_profile(&radii)?;
            let mut meta = vgf.meta();
            meta.push(("grid".into(), grid.clone()));
            match format {
                Format::Csv => emit_csv(
                    &["r", "count"],
                    profile
                        .radii
                        .iter()
                        .zip(&profile.counts)
                        .map(|(&r, &c)| vec![r, c]),
                    &meta,
                ),
                Format::Json => emit_json(
                    &serde_json::json!({
                        "radii": profile.radii,
                        "counts": profile.counts,
                    }),
                    &meta,
                ),
            }
        }
        ComplexCmd::Strip { x1, x2, y1, y2 } => {
            let value = randzeros::complex_zeros::dirichlet_strip_count(x1, x2, y1, y2)?;
            emit_json(
                &ScalarOut { value },
                &[
                    ("x1".into(), x1.to_string()),
                    ("x2".into(), x2.to_string()),
                    ("y1".into(), y1.to_string()),
                    ("y2".into(), y2.to_string()),
                ],
            );
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct McOut {
    mean: f64,
    stderr: f64,
    samples: usize,
    seed: u64,
    resampled: usize,
}

impl From<randzeros::mc::MCEstimate> for McOut {
    fn from(e: randzeros::mc::MCEstimate) -> Self {
        McOut {
            mean: e.mean,
            stderr: e.stderr,
            samples: e.n,
            seed: e.seed,
            resampled: e.resampled,
        }
    }
}

fn mc(cmd: McCmd) -> CliResult {
    match cmd {
        McCmd::Expect {
            family,
            m,
            a,
            b,
            samples,
            seed,
            workers,
        } => {
            let fam = Family::from_args(&family)?;
            let mut ensemble = fam.ensemble()?;
            if let Some(m) = m {
                let cf = fam
                    .closed_form()
                    .ok_or_else(|| usage("--m needs a closed-form family"))?;
                ensemble = ensemble.with_mean(randzeros::ensembles::case1_mean(&cf, m)?)?;
            }
            let interval = fam.interval(a, b)?;
            let is_poly = matches!(
                ensemble.basis(),
                randzeros::kernel::Basis::Monomial { .. }
            );
            if !interval.is_finite() && !is_poly {
                return Err(usage(
                    "sign-scan families need a finite interval: pass --a and --b",
                ));
            }
            let seed = default_seed(seed);
            let cfg = MCConfig {
                samples,
                master_seed: seed,
                workers_hint: workers,
            };
            let est = mc_real_zeros(&ensemble, interval, &cfg)?;
            let mut meta = fam.meta();
            if let Some(m) = m {
                meta.push(("m".into(), m.to_string()));
            }
            meta.push(("a".into(), format!("{}", interval.lo)));
            meta.push(("b".into(), format!("{}", interval.hi)));
            emit_json(&McOut::from(est), &meta);
        }
        McCmd::FixedPoints { n, samples, seed } => {
            let seed = default_seed(seed);
            let est =
                mc_fixed_points(n, &MCConfig::new(samples, seed))?;
            emit_json(&McOut::from(est), &[("n".into(), n.to_string())]);
        }
        McCmd::Eigen { n, samples, seed } => {
            let seed = default_seed(seed);
            let est = mc_real_eigenvalues(n, &MCConfig::new(samples, seed))
                ?;
            emit_json(&McOut::from(est), &[("n".into(), n.to_string())]);
        }
        McCmd::MatrixPoly {
            n,
            p,
            samples,
            seed,
        } => {
            let seed = default_seed(seed);
            let est =
                mc_matrix_poly(n, p, &MCConfig::new(samples, seed))?;
            emit_json(
                &McOut::from(est),
                &[("n".into(), n.to_string()), ("p".into(), p.to_string())],
            );
        }
        McCmd::Radial {
            family,
            n,
            radii,
            samples,
            seed,
        } => {
            if radii.is_empty() {
                return Err(usage("--radii needs at least one radius"));
            }
            let vgf = VgfFamily::parse(&family, Some(n), None, None)?;
            let seed = default_seed(seed);
            let profile = mc_complex_radial(vgf.inner(), &radii, &MCConfig::new(samples, seed))
                ?;
            let mut meta = vgf.meta();
            meta.push(("resampled".into(), profile.resampled.to_string()));
            emit_json(
                &serde_json::json!({
                    "radii": profile.radii,
                    "mean": profile.mean,
                    "stderr": profile.stderr,
                    "samples": profile.n,
                    "seed": profile.seed,
                }),
                &meta,
            );
        }
    }
    Ok(())
}

fn selftest() -> CliResult {
    let results = randzeros::selftest::run_all();
    let mut all_ok = true;
    for c in &results {
        println!("{}", c.line());
        all_ok &= c.passed;
    }
    if all_ok {
        Ok(())
    } else {
        Err(CliError::Numeric(randzeros::Error::Evaluation(
            "one or more criteria failed (see lines above)".into(),
        )))
    }
}
