//! Command-line front end. [`run`] returns the process exit code:
//! 0 success, 1 a check failed, 2 invalid input, 3 domain or singular
//! parameter, 4 I/O.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::curve::SampledCurve;
use crate::exec::Execution;
use crate::figures::figure;
use crate::io::{self, GridSpec};
use crate::oracle::{circular_helix_start, initial_state_from_closed_form, integrate_frenet, InitialState, IntegratorConfig};
use crate::profiles::{Branch, CurvatureSpec, IntrinsicProfile, Sign, SlantParameters};
use crate::synthesis::{
    anti_salkowski_sampled, constant_precession_sampled, kappa_in_t, linspace, position_natural,
    position_parametric_t, salkowski_sampled,
};
use crate::verify::{compare_curves, run_suite, Tolerances, VerificationReport};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Reserved for future stochastic tests; nothing reads it yet.
pub const SEED_ENV: &str = "SLANTIX_SEED";

#[derive(Debug, Parser)]
#[command(name = "slantix", version, about = "Slant helices from intrinsic equations")]
pub struct Cli {
    /// Plain-text `key = value` file; command-line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a curve and write it out.
    #[command(args_override_self = true)]
    Generate(GenerateArgs),
    /// Run the verification suite on a generated or loaded curve.
    #[command(args_override_self = true)]
    Verify(VerifyArgs),
    /// Closed form against the Frenet-Serret integrator seeded from it.
    #[command(args_override_self = true)]
    Compare(CompareArgs),
    /// Data files for one of the three figure sets.
    #[command(args_override_self = true)]
    Figure(FigureArgs),
    /// List the available curve families.
    ListFamilies,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Salkowski,
    AntiSalkowski,
    Precession,
    /// Slant helix from a curvature law (--kappa0, --amplitude with --mu, or --kappa-table).
    Slant,
    /// Circular helix (--kappa0, --tau0).
    Helix,
    /// Intrinsic table from --table (columns s,kappa,tau).
    Tabulated,
    /// Negative control: kappa = 1, tau = s^2.
    ControlS2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Closed,
    Natural,
    Parametric,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Arcsin,
    Arccos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Obj,
    Dat,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,
    /// n = cos(phi), as a rational (1/3) or decimal.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_num)]
    pub n: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_num)]
    pub mu: Option<f64>,
    /// Use mu = m (the figure setting).
    #[arg(long)]
    pub mu_eq_m: bool,
    /// Torsion sign; defaults to the branch's own sign.
    #[arg(long, value_enum)]
    pub sign: Option<SignArg>,
    #[arg(long, value_enum, default_value = "arcsin")]
    pub branch: BranchArg,
    #[arg(long, value_enum)]
    pub route: Option<Route>,
    /// Slant-parameter grid start:end:count.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_grid)]
    pub t: Option<GridSpec>,
    /// Arc-length grid start:end:count.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_grid)]
    pub s: Option<GridSpec>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_num)]
    pub kappa0: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_num)]
    pub tau0: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_num)]
    pub amplitude: Option<f64>,
    /// Curvature table (columns s,kappa) for --family slant.
    #[arg(long)]
    pub kappa_table: Option<PathBuf>,
    /// Intrinsic table (columns s,kappa,tau) for --family tabulated.
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Integrator step for the oracle route.
    #[arg(long, value_parser = parse_num, default_value = "1e-4")]
    pub step: f64,
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Curve CSV to check instead of generating one.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Scale every default tolerance by this factor.
    #[arg(long, value_parser = parse_num)]
    pub tol_scale: Option<f64>,
    /// JSON report destination (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_parser = parse_num, default_value = "1e-6")]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    /// 1, 2 or 3.
    #[arg(long)]
    pub which: u8,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

fn parse_num(s: &str) -> std::result::Result<f64, String> {
    io::parse_number(s).map_err(|e| e.to_string())
}

fn parse_grid(s: &str) -> std::result::Result<GridSpec, String> {
    s.parse::<GridSpec>().map_err(|e| e.to_string())
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Domain(_) | Error::SingularParameter(_) | Error::Quadrature { .. } | Error::Degenerate(_) => EXIT_DOMAIN,
        Error::Io(_) => EXIT_IO,
        Error::Csv(e) if e.is_io_error() => EXIT_IO,
        _ => EXIT_INVALID,
    }
}

/// κ = 1, τ = s² tabulated on [a, b] at spacing ~0.005.
pub fn control_s2_profile(a: f64, b: f64) -> Result<IntrinsicProfile> {
    let count = (((b - a) / 0.005).ceil() as usize).max(2) + 1;
    let rows: Vec<(f64, f64, f64)> = linspace(a, b, count).into_iter().map(|s| (s, 1.0, s * s)).collect();
    IntrinsicProfile::tabulated(&rows)
}

impl FamilyArgs {
    fn family(&self) -> Result<FamilyName> {
        self.family.ok_or_else(|| Error::invalid("--family is required"))
    }

    fn params(&self) -> Result<SlantParameters> {
        let n = self.n.ok_or_else(|| Error::invalid("--n is required for this family"))?;
        let branch = match self.branch {
            BranchArg::Arcsin => Branch::Arcsin,
            BranchArg::Arccos => Branch::Arccos,
        };
        let p = SlantParameters::new(n, branch, Sign::Plus)?;
        Ok(match self.sign {
            Some(SignArg::Plus) => p,
            Some(SignArg::Minus) => p.with_sign(Sign::Minus),
            None => p.with_sign(p.natural_sign()),
        })
    }

    fn mu(&self, p: &SlantParameters) -> Result<f64> {
        match (self.mu, self.mu_eq_m) {
            (Some(_), true) => Err(Error::invalid("give either --mu or --mu-eq-m")),
            (Some(mu), false) => Ok(mu),
            (None, _) => Ok(p.m()),
        }
    }

    fn curvature(&self) -> Result<CurvatureSpec> {
        let spec = match (self.kappa0, self.amplitude, &self.kappa_table) {
            (Some(k), None, None) => CurvatureSpec::Constant { kappa0: k },
            (None, Some(a), None) => CurvatureSpec::Cosine {
                amplitude: a,
                mu: self.mu.ok_or_else(|| Error::invalid("--amplitude needs --mu"))?,
            },
            (None, None, Some(path)) => {
                let mut r = csv::Reader::from_path(path).map_err(Error::from)?;
                let mut xs = Vec::new();
                let mut ys = Vec::new();
                for row in r.deserialize::<(f64, f64)>() {
                    let (s, k) = row?;
                    xs.push(s);
                    ys.push(k);
                }
                CurvatureSpec::Tabulated(crate::interp::MonotoneCubic::new(xs, ys)?)
            }
            _ => return Err(Error::invalid("give exactly one of --kappa0, --amplitude or --kappa-table")),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// The intrinsic profile described by the flags.
    pub fn profile(&self) -> Result<IntrinsicProfile> {
        Ok(match self.family()? {
            FamilyName::Salkowski => IntrinsicProfile::Salkowski { params: self.params()? },
            FamilyName::AntiSalkowski => IntrinsicProfile::AntiSalkowski { params: self.params()? },
            FamilyName::Precession => {
                let p = self.params()?;
                IntrinsicProfile::constant_precession(self.mu(&p)?, p)?
            }
            FamilyName::Slant => IntrinsicProfile::slant_from_kappa(self.curvature()?, self.params()?)?,
            FamilyName::Helix => IntrinsicProfile::constant(
                self.kappa0.ok_or_else(|| Error::invalid("--kappa0 is required"))?,
                self.tau0.unwrap_or(0.0),
            )?,
            FamilyName::Tabulated => IntrinsicProfile::from_csv_path(
                self.table.as_ref().ok_or_else(|| Error::invalid("--table is required"))?,
            )?,
            FamilyName::ControlS2 => {
                let g = self.s.unwrap_or(GridSpec { start: -1.5, end: 1.5, count: 3001 });
                control_s2_profile(g.start, g.end)?
            }
        })
    }

    fn default_route(&self) -> Result<Route> {
        Ok(match self.family()? {
            FamilyName::Salkowski | FamilyName::AntiSalkowski | FamilyName::Precession => Route::Closed,
            FamilyName::Slant => Route::Natural,
            _ => Route::Oracle,
        })
    }

    fn t_grid(&self, p: &SlantParameters, default: (f64, f64)) -> Vec<f64> {
        match self.t {
            Some(g) => g.values(),
            None => linspace(default.0 / p.n(), default.1 / p.n(), 2001),
        }
    }

    fn s_grid(&self, default: (f64, f64)) -> Vec<f64> {
        match self.s {
            Some(g) => g.values(),
            None => linspace(default.0, default.1, 2001),
        }
    }

    fn closed(&self) -> Result<SampledCurve> {
        let p = self.params()?;
        match self.family()? {
            FamilyName::Salkowski => salkowski_sampled(&p, &self.t_grid(&p, (-1.2, 1.2))),
            FamilyName::AntiSalkowski => anti_salkowski_sampled(&p, &self.t_grid(&p, (0.1, 1.5))),
            FamilyName::Precession => {
                let mu = self.mu(&p)?;
                constant_precession_sampled(mu, &p, &self.s_grid((-1.4 / mu, 1.4 / mu)))
            }
            f => Err(Error::invalid(format!("family {f:?} has no closed form"))),
        }
    }

    /// Arc-length grid for routes that work in s.
    fn natural_grid(&self, profile: &IntrinsicProfile) -> Result<Vec<f64>> {
        if let Some(g) = self.s {
            return Ok(g.values());
        }
        if matches!(profile, IntrinsicProfile::Salkowski { .. } | IntrinsicProfile::AntiSalkowski { .. } | IntrinsicProfile::ConstantPrecession { .. }) {
            if self.t.is_none() || matches!(profile, IntrinsicProfile::ConstantPrecession { .. }) {
                return Ok(self.closed()?.arc_lengths());
            }
            // arc length at the ends of the t grid, uniformly in between
            let c = self.closed()?;
            let (a, b) = c.s_range().ok_or(Error::TooFewSamples { needed: 2, got: 0 })?;
            return Ok(linspace(a, b, c.len()));
        }
        let (a, b) = profile.domain();
        if a.is_finite() && b.is_finite() {
            let pad = 1e-6 * (b - a);
            return Ok(linspace(a + pad, b - pad, 2001));
        }
        Ok(linspace(-1.0, 1.0, 2001))
    }

    pub fn build(&self) -> Result<SampledCurve> {
        let profile = self.profile()?;
        let route = match self.route {
            Some(r) => r,
            None => self.default_route()?,
        };
        match route {
            Route::Closed => self.closed(),
            Route::Natural => {
                let p = *profile.slant_params().ok_or_else(|| Error::invalid("the natural route needs a slant family"))?;
                position_natural(&profile, &p, &self.natural_grid(&profile)?)
            }
            Route::Parametric => {
                let p = *profile.slant_params().ok_or_else(|| Error::invalid("the parametric route needs a slant family"))?;
                let kappa = kappa_in_t(&profile).ok_or_else(|| Error::invalid("no curvature law in t for this profile"))?;
                let grid = match (self.t, self.family()?) {
                    (Some(g), _) => g.values(),
                    (None, FamilyName::AntiSalkowski) => self.t_grid(&p, (0.1, 1.5)),
                    (None, _) => self.t_grid(&p, (-1.2, 1.2)),
                };
                position_parametric_t(&p, kappa, &grid)
            }
            Route::Oracle => {
                let cfg = IntegratorConfig::with_step(self.step);
                match self.family()? {
                    FamilyName::Salkowski | FamilyName::AntiSalkowski | FamilyName::Precession => {
                        let seed = self.closed()?;
                        let init = initial_state_from_closed_form(&seed, 0)?;
                        let end = seed.s_range().ok_or(Error::TooFewSamples { needed: 1, got: 0 })?.1;
                        integrate_frenet(&profile, &init, end, &cfg)
                    }
                    FamilyName::Helix => {
                        let (k, t) = (profile.kappa(0.0)?, profile.tau(0.0)?);
                        let g = self.s_grid((0.0, 2.0 * std::f64::consts::PI));
                        let init = circular_helix_start(k, t, g[0])?;
                        integrate_frenet(&profile, &init, g[g.len() - 1], &cfg)
                    }
                    FamilyName::Slant => {
                        let seed = position_natural(
                            &profile,
                            profile.slant_params().ok_or_else(|| Error::invalid("slant family without parameters"))?,
                            &self.natural_grid(&profile)?,
                        )?;
                        let mut init = initial_state_from_closed_form(&seed, 0)?;
                        init.position = seed.samples[0].position;
                        integrate_frenet(&profile, &init, seed.s_range().map(|r| r.1).unwrap_or(0.0), &cfg)
                    }
                    FamilyName::Tabulated | FamilyName::ControlS2 => {
                        let (a, b) = match self.s {
                            Some(g) => (g.start, g.end),
                            None => profile.domain(),
                        };
                        let init = InitialState::new(crate::frame::Vec3::zeros(), crate::frame::FrenetFrame::identity(), a)?;
                        integrate_frenet(&profile, &init, b, &cfg)
                    }
                }
            }
        }
    }
}

fn open_out(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn write_curve(curve: &SampledCurve, format: Format, name: &str, w: impl Write) -> Result<()> {
    match format {
        Format::Csv => io::write_csv(curve, w),
        Format::Obj => io::write_obj(curve, name, w),
        Format::Dat => io::write_dat(&[curve], w),
    }
}

fn generator_label(c: &SampledCurve) -> String {
    format!("{:?}", c.generator)
}

fn cmd_generate(args: &GenerateArgs, err: &mut dyn Write) -> Result<i32> {
    let curve = args.family.build()?;
    let name = args.family.family.map(|f| format!("{f:?}")).unwrap_or_default();
    let mut w = open_out(&args.out)?;
    write_curve(&curve, args.format, &name, &mut w)?;
    w.flush()?;
    writeln!(err, "{} samples, s-span {:.6}, generator {}", curve.len(), curve.s_span(), generator_label(&curve))?;
    Ok(EXIT_OK)
}

fn print_reports(reports: &[VerificationReport], err: &mut dyn Write) -> Result<bool> {
    let mut ok = true;
    for r in reports {
        let status = match r.pass {
            Some(true) => "PASS",
            Some(false) => {
                ok = false;
                "FAIL"
            }
            None => "INFO",
        };
        let tol = r.tolerance.map(|t| format!("{t:e}")).unwrap_or_else(|| "-".into());
        writeln!(err, "{status} {:<18} max {:.3e} tol {tol} ({} samples)", r.check, r.max, r.n_samples)?;
    }
    Ok(ok)
}

fn cmd_verify(args: &VerifyArgs, err: &mut dyn Write) -> Result<i32> {
    let mut curve = match &args.input {
        Some(path) => {
            let mut c = io::read_csv_path(path)?;
            if args.family.n.is_some() {
                c.params = Some(args.family.params()?);
            }
            c
        }
        None => args.family.build()?,
    };
    if curve.params.is_none() && args.family.n.is_some() && args.input.is_none() {
        curve.params = Some(args.family.params()?);
    }
    let mut tol = Tolerances::default();
    if let Some(k) = args.tol_scale {
        if !(k > 0.0) {
            return Err(Error::invalid("--tol-scale must be > 0"));
        }
        tol = Tolerances {
            unit_speed: tol.unit_speed * k,
            kappa: tol.kappa * k,
            tau: tol.tau * k,
            normal_angle: tol.normal_angle * k,
            axis: tol.axis * k,
            sigma: tol.sigma * k,
            darboux: tol.darboux * k,
        };
    }
    let reports = run_suite(&curve, &tol)?;
    let ok = print_reports(&reports, err)?;
    let mut w = open_out(&args.out)?;
    io::write_reports(&reports, &mut w)?;
    writeln!(w)?;
    w.flush()?;
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_compare(args: &CompareArgs, err: &mut dyn Write) -> Result<i32> {
    let closed = args.family.closed()?;
    let profile = args.family.profile()?;
    let init = initial_state_from_closed_form(&closed, 0)?;
    let end = closed.s_range().ok_or(Error::TooFewSamples { needed: 1, got: 0 })?.1;
    let oracle = integrate_frenet(&profile, &init, end, &IntegratorConfig::with_step(args.family.step))?;
    let mut report = compare_curves(&closed, &oracle, Some(args.tol))?;
    if report.failed() {
        report = report.note(format!(
            "RK4 error shrinks like step^4; step {} is too coarse for tolerance {}",
            args.family.step, args.tol
        ));
    }
    let ok = print_reports(std::slice::from_ref(&report), err)?;
    let mut w = open_out(&args.out)?;
    io::write_reports(std::slice::from_ref(&report), &mut w)?;
    writeln!(w)?;
    w.flush()?;
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_figure(args: &FigureArgs, err: &mut dyn Write) -> Result<i32> {
    let curves = figure(args.which)?;
    std::fs::create_dir_all(&args.out_dir)?;
    let generated: Vec<SampledCurve> =
        Execution::default().try_map_range(curves.len(), |i| curves[i].generate())?;
    for (c, curve) in curves.iter().zip(&generated) {
        let path = args.out_dir.join(format!("{}.csv", c.label()));
        io::write_csv(curve, BufWriter::new(File::create(&path)?))?;
        writeln!(err, "{}", path.display())?;
    }
    let dat = args.out_dir.join(format!("fig{}.dat", args.which));
    let refs: Vec<&SampledCurve> = generated.iter().collect();
    let mut w = BufWriter::new(File::create(&dat)?);
    io::write_dat(&refs, &mut w)?;
    w.flush()?;
    writeln!(err, "{}", dat.display())?;
    Ok(EXIT_OK)
}

fn cmd_list(out: &mut dyn Write) -> Result<i32> {
    for (name, what) in [
        ("salkowski", "kappa = 1, tau = ms/sqrt(1 - m^2 s^2); closed form in t (n != 1/2)"),
        ("anti-salkowski", "kappa = ms/sqrt(1 - m^2 s^2), tau = 1; closed form in t (n != 1/2)"),
        ("precession", "kappa = (mu/m) cos(mu s), tau = (mu/m) sin(mu s); closed form in s"),
        ("slant", "any positive kappa with tau from the slant condition"),
        ("helix", "circular helix, constant kappa and tau"),
        ("tabulated", "kappa, tau from a CSV table"),
        ("control-s2", "kappa = 1, tau = s^2 (not a slant helix)"),
    ] {
        writeln!(out, "{name:<15} {what}")?;
    }
    Ok(EXIT_OK)
}

/// Splices `--config` file contents in right after the subcommand so later
/// flags override them.
fn expand_config(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let pos = args.iter().position(|a| a == "--config" || a.to_string_lossy().starts_with("--config="));
    let Some(pos) = pos else { return Ok(args) };
    let arg = args[pos].to_string_lossy().into_owned();
    let (path, consumed) = match arg.strip_prefix("--config=") {
        Some(p) => (PathBuf::from(p), 1),
        None => (PathBuf::from(args.get(pos + 1).ok_or_else(|| Error::invalid("--config needs a path"))?), 2),
    };
    let text = std::fs::read_to_string(Path::new(&path))?;
    let extra = io::config_args(&text)?;
    let mut rest: Vec<OsString> = args[..pos].iter().chain(&args[pos + consumed..]).cloned().collect();
    let at = rest.len().min(2);
    rest.splice(at..at, extra.into_iter().map(OsString::from));
    Ok(rest)
}

/// Runs the CLI; diagnostics go to `err`, listings to `out`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let result = match &cli.command {
        Command::Generate(a) => cmd_generate(a, err),
        Command::Verify(a) => cmd_verify(a, err),
        Command::Compare(a) => cmd_compare(a, err),
        Command::Figure(a) => cmd_figure(a, err),
        Command::ListFamilies => cmd_list(out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    run_with(args, &mut std::io::stdout(), &mut std::io::stderr())
}
