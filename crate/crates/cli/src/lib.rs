//! `sphero`: command-line front end for the spherical clothoid library.
//!
//! Subcommands: `curve` (coordinate/Frenet tables), `project` (stereographic
//! projection by both representations), `verify` (the full identity and
//! oracle battery), `oracle` (closed form vs integration deviations),
//! `polys` (Meixner-Pollaczek tables) and `plot` (SVG output).
//!
//! Exit codes are a stable contract: 0 success, 1 verification failure,
//! 2 usage or domain error, 3 numeric non-convergence.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use spherical_clothoid::curve::{self, CurveParams};
use spherical_clothoid::mp_polys::{self, MPParams};
use spherical_clothoid::oracle;
use spherical_clothoid::{Error, SeriesControl};
use std::io::Write;
use std::path::PathBuf;

mod svg;
mod verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Parser)]
#[command(name = "sphero", version, about = "Spherical clothoid sampling, projection and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate s, position, Frenet scalars and the sphere residual.
    Curve(CurveArgs),
    /// Tabulate the stereographic projection by the Kummer quotient and the
    /// parabolic cylinder quotient, with their disagreement.
    Project(ProjectArgs),
    /// Run the identity suite, curve residual grid and oracle comparisons.
    Verify(VerifyArgs),
    /// Maximum deviation of the closed form from the ODE and kinematic oracles.
    Oracle(OracleArgs),
    /// Tabulate associated Meixner-Pollaczek polynomials Q_n.
    Polys(PolysArgs),
    /// Emit an SVG plot of the stereographic projection.
    Plot(PlotArgs),
}

#[derive(Clone, Copy, PartialEq, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Args)]
struct CurveArgs {
    /// Geodesic-curvature slope.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, default_value_t = -5.0, allow_hyphen_values = true)]
    s_min: f64,
    #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
    s_max: f64,
    /// Number of samples (>= 2).
    #[arg(short = 'n', long = "samples", default_value_t = 201)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Decimal digits in csv output.
    #[arg(long, default_value_t = 15)]
    precision: usize,
}

#[derive(Args)]
struct ProjectArgs {
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    s_min: f64,
    #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
    s_max: f64,
    #[arg(short = 'n', long = "samples", default_value_t = 201)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 15)]
    precision: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Seed for the random identity draws.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random draws per identity.
    #[arg(long = "random", default_value_t = 50)]
    random: usize,
    /// Override every check's pass limit (ratio of residual to its
    /// pointwise tolerance; the built-in limit is 1).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    s_max: f64,
    /// Integration step.
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 15)]
    precision: usize,
}

#[derive(Args)]
struct PolysArgs {
    /// Polynomial argument x.
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
    /// Association parameter (> -1).
    #[arg(long, allow_hyphen_values = true)]
    c: f64,
    #[arg(long, default_value_t = 20)]
    n_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 15)]
    precision: usize,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, default_value_t = -5.0, allow_hyphen_values = true)]
    s_min: f64,
    #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
    s_max: f64,
    #[arg(short = 'n', long = "samples", default_value_t = 201)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Svg)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also draw the three orthographic coordinate views.
    #[arg(long)]
    views: bool,
}

/// Series control, honoring the SPHERO_MAX_TERMS environment override.
fn control() -> SeriesControl {
    let mut ctrl = SeriesControl::default();
    if let Ok(v) = std::env::var("SPHERO_MAX_TERMS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                ctrl.max_terms = n;
            }
        }
    }
    ctrl
}

/// Parse and execute; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version as "errors" with zero exit
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Curve(a) => cmd_curve(a),
        Command::Project(a) => cmd_project(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Polys(a) => cmd_polys(a),
        Command::Plot(a) => cmd_plot(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("sphero: {}", e);
            match e {
                Error::Domain(_) | Error::Pole { .. } | Error::DegenerateFrame(_) => EXIT_USAGE,
                Error::NonConvergence { .. } | Error::Overflow(_) => EXIT_NUMERIC,
            }
        }
    }
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::Domain(format!("cannot write {}: {}", path.display(), e))),
        None => {
            print!("{}", content);
            std::io::stdout().flush().ok();
            Ok(())
        }
    }
}

fn fmt(v: f64, precision: usize) -> String {
    format!("{:.*e}", precision, v)
}

fn sample_grid(s_min: f64, s_max: f64, n: usize) -> Result<Vec<f64>, Error> {
    if n < 2 {
        return Err(Error::Domain(format!("at least 2 samples required, got {}", n)));
    }
    if s_min >= s_max || s_min.is_nan() || s_max.is_nan() {
        return Err(Error::Domain(format!("need s_min < s_max, got [{}, {}]", s_min, s_max)));
    }
    Ok((0..n)
        .map(|i| s_min + (s_max - s_min) * i as f64 / (n - 1) as f64)
        .collect())
}

#[derive(Serialize)]
struct CurveRow {
    s: f64,
    x: f64,
    y: f64,
    z: f64,
    kappa: f64,
    tau: f64,
    kappa_g: f64,
    sphere_residual: f64,
}

fn cmd_curve(a: CurveArgs) -> Result<i32, Error> {
    if a.format == Format::Svg {
        return Err(Error::Domain("svg output is only valid for `plot`".into()));
    }
    let ctrl = control();
    let p = CurveParams::new(a.alpha)?;
    let mut rows = Vec::with_capacity(a.samples);
    for s in sample_grid(a.s_min, a.s_max, a.samples)? {
        let sample = curve::frenet(&p, s, ctrl)?;
        rows.push(CurveRow {
            s,
            x: sample.position.x,
            y: sample.position.y,
            z: sample.position.z,
            kappa: sample.kappa,
            tau: sample.tau,
            kappa_g: sample.kappa_g,
            sphere_residual: curve::residual_sphere(&p, s, ctrl)?,
        });
    }
    let content = match a.format {
        Format::Csv => {
            let mut w = String::from("s,x,y,z,kappa,tau,kappa_g,sphere_residual\n");
            for r in &rows {
                w.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    fmt(r.s, a.precision),
                    fmt(r.x, a.precision),
                    fmt(r.y, a.precision),
                    fmt(r.z, a.precision),
                    fmt(r.kappa, a.precision),
                    fmt(r.tau, a.precision),
                    fmt(r.kappa_g, a.precision),
                    fmt(r.sphere_residual, a.precision),
                ));
            }
            w
        }
        Format::Json => serde_json::to_string_pretty(&rows).unwrap() + "\n",
        Format::Svg => unreachable!(),
    };
    write_output(&a.out, &content)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct ProjectRow {
    s: f64,
    X: f64,
    Y: f64,
    X_pcf: f64,
    Y_pcf: f64,
    disagreement: f64,
}

fn cmd_project(a: ProjectArgs) -> Result<i32, Error> {
    if a.format == Format::Svg {
        return Err(Error::Domain("svg output is only valid for `plot`".into()));
    }
    let ctrl = control();
    let p = CurveParams::new(a.alpha)?;
    let mut rows = Vec::with_capacity(a.samples);
    for s in sample_grid(a.s_min, a.s_max, a.samples)? {
        let zeta = curve::stereographic(&p, s, ctrl)?;
        let zeta_pcf = curve::stereographic_pcf(&p, s)?;
        rows.push(ProjectRow {
            s,
            X: zeta.re,
            Y: zeta.im,
            X_pcf: zeta_pcf.re,
            Y_pcf: zeta_pcf.im,
            disagreement: (zeta - zeta_pcf).norm(),
        });
    }
    let content = match a.format {
        Format::Csv => {
            let mut w = String::from("s,X,Y,X_pcf,Y_pcf,disagreement\n");
            for r in &rows {
                w.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    fmt(r.s, a.precision),
                    fmt(r.X, a.precision),
                    fmt(r.Y, a.precision),
                    fmt(r.X_pcf, a.precision),
                    fmt(r.Y_pcf, a.precision),
                    fmt(r.disagreement, a.precision),
                ));
            }
            w
        }
        Format::Json => serde_json::to_string_pretty(&rows).unwrap() + "\n",
        Format::Svg => unreachable!(),
    };
    write_output(&a.out, &content)?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: VerifyArgs) -> Result<i32, Error> {
    let checks = verify::run_battery(a.seed, a.random, control(), a.tol)?;
    let all_passed = checks.iter().all(|c| c.passed);
    let content = serde_json::to_string_pretty(&checks).unwrap() + "\n";
    write_output(&a.out, &content)?;
    if all_passed {
        Ok(EXIT_OK)
    } else {
        let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        eprintln!("sphero verify: {} of {} checks failed: {}", failed.len(), checks.len(), failed.join(", "));
        Ok(EXIT_VERIFY_FAILED)
    }
}

#[derive(Serialize)]
struct OracleRow {
    oracle: String,
    max_deviation: f64,
}

fn cmd_oracle(a: OracleArgs) -> Result<i32, Error> {
    if a.format == Format::Svg {
        return Err(Error::Domain("svg output is only valid for `plot`".into()));
    }
    let ctrl = control();
    let p = CurveParams::new(a.alpha)?;
    if a.s_max < 0.0 {
        return Err(Error::Domain("s_max must be nonnegative".into()));
    }

    let ode = oracle::integrate_mehlum_ode(&p, a.s_max, a.step)?;
    let mut ode_dev: f64 = 0.0;
    for i in 0..ode.len() {
        let (s, _) = ode.samples[i];
        let closed = curve::eval_position(&p, s, ctrl)?;
        ode_dev = ode_dev.max((ode.vec3_at(i) - closed).norm());
    }

    let kinematic_dev = if a.s_max > 0.0 {
        let two_level = oracle::integrate_two_level(a.alpha, a.s_max, a.step)?;
        let trace = oracle::curve_trace_from_two_level(&two_level)?;
        let (_, aligned) = oracle::align_to_mehlum_frame(&trace)?;
        let mut dev: f64 = 0.0;
        for i in 0..aligned.len() {
            let (s, _) = aligned.samples[i];
            let closed = curve::eval_position(&p, s, ctrl)?;
            dev = dev.max((aligned.vec3_at(i) - closed).norm());
        }
        dev
    } else {
        0.0
    };

    let rows = vec![
        OracleRow {
            oracle: "ode".into(),
            max_deviation: ode_dev,
        },
        OracleRow {
            oracle: "kinematic".into(),
            max_deviation: kinematic_dev,
        },
    ];
    let content = match a.format {
        Format::Csv => {
            let mut w = String::from("oracle,max_deviation\n");
            for r in &rows {
                w.push_str(&format!("{},{}\n", r.oracle, fmt(r.max_deviation, a.precision)));
            }
            w
        }
        Format::Json => serde_json::to_string_pretty(&rows).unwrap() + "\n",
        Format::Svg => unreachable!(),
    };
    write_output(&a.out, &content)?;
    Ok(EXIT_OK)
}

fn cmd_polys(a: PolysArgs) -> Result<i32, Error> {
    if a.format == Format::Svg {
        return Err(Error::Domain("svg output is only valid for `plot`".into()));
    }
    if a.c <= -1.0 {
        return Err(Error::Domain(format!("association parameter must satisfy c > -1, got {}", a.c)));
    }
    let params = MPParams {
        lambda: 0.0,
        x: a.x,
        phi: std::f64::consts::FRAC_PI_2,
        c: a.c,
    };
    // one extra value so the residual column is defined at every row
    let seq = mp_polys::mp_sequence(params, a.n_max + 1)?;
    let content = match a.format {
        Format::Csv => {
            let mut w = String::from("n,Q_n,recurrence_residual\n");
            for n in 0..=a.n_max {
                w.push_str(&format!(
                    "{},{},{}\n",
                    n,
                    fmt(seq.values[n], a.precision),
                    fmt(seq.recurrence_residual(n), a.precision)
                ));
            }
            w
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                n: usize,
                q: f64,
                recurrence_residual: f64,
            }
            let rows: Vec<Row> = (0..=a.n_max)
                .map(|n| Row {
                    n,
                    q: seq.values[n],
                    recurrence_residual: seq.recurrence_residual(n),
                })
                .collect();
            serde_json::to_string_pretty(&rows).unwrap() + "\n"
        }
        Format::Svg => unreachable!(),
    };
    write_output(&a.out, &content)?;
    Ok(EXIT_OK)
}

fn cmd_plot(a: PlotArgs) -> Result<i32, Error> {
    if a.format != Format::Svg {
        return Err(Error::Domain("plot only supports --format svg".into()));
    }
    let ctrl = control();
    let p = CurveParams::new(a.alpha)?;
    let grid = sample_grid(a.s_min, a.s_max, a.samples)?;
    let mut projection = Vec::with_capacity(grid.len());
    let mut positions = Vec::with_capacity(grid.len());
    for &s in &grid {
        let zeta = curve::stereographic(&p, s, ctrl)?;
        projection.push((zeta.re, zeta.im));
        if a.views {
            let r = curve::eval_position(&p, s, ctrl)?;
            positions.push(r);
        }
    }
    let content = svg::render(&projection, if a.views { Some(&positions) } else { None });
    write_output(&a.out, &content)?;
    Ok(EXIT_OK)
}
