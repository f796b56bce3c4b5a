//! Command-line front end: tritronquee traces and pole catalogs, the
//! total-integral comparison, the Riemann-Hilbert oracle, parametrix
//! diagnostics, and the acceptance suites. Emits deterministic CSV/JSON.
//!
//! Exit codes: 0 success, 1 numerical failure, 2 domain exclusion (for
//! example alpha in Z + 1/2).

mod config;

use clap::{Args, Parser, Subcommand};
use config::{parse_complex, CommandKind, RunConfig, SCHEMA_VERSION};
use painleve2::asymptotics::{oscillatory_prefactor, theta, PlusInfinitySeries};
use painleve2::integrals::total_integral_with;
use painleve2::numerics::C64;
use painleve2::ode::{trace_tritronquee_with, SolutionTrace};
use painleve2::params::{classify_regime, q_tau, Sign, TritronqueeSpec};
use painleve2::pcparametrix::{
    normalization_remainder, pc_coefficients, pc_connection_residual, pc_jump_residuals,
};
use painleve2::rhsolver::{extract_uvq, solve_w, uv_derivatives};
use painleve2::verify;
use serde_json::json;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "painleve2",
    about = "Increasing tritronquee solutions of the Painleve-II equation: traces, connection formulas, total integrals, and a Riemann-Hilbert oracle"
)]
struct Cli {
    /// TOML file with a serialized run configuration; explicit flags override
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
#[command(allow_negative_numbers = true)]
struct TraceArgs {
    /// complex parameter alpha as `re` or `re,im`
    #[arg(long, value_parser = parse_complex)]
    alpha: Option<(f64, f64)>,
    /// solution branch: plus or minus
    #[arg(long)]
    sign: Option<String>,
    #[arg(long)]
    xmin: Option<f64>,
    #[arg(long)]
    xmax: Option<f64>,
    /// dense-output grid spacing
    #[arg(long)]
    grid_step: Option<f64>,
    /// integration tolerance in [1e-12, 1e-6]
    #[arg(long)]
    tol: Option<f64>,
    /// output path (stdout when omitted)
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Parameter maps q0, q, tau and the regime of alpha
    Params {
        #[arg(long, value_parser = parse_complex)]
        alpha: Option<(f64, f64)>,
    },
    /// Dense trace of u(x) with the pole catalog (CSV)
    Trace(TraceArgs),
    /// Pole catalog only (JSON)
    Poles(TraceArgs),
    /// Both sides of the total-integral identity (JSON)
    TotalIntegral(TraceArgs),
    /// Riemann-Hilbert oracle at one (p, tau, y) (JSON)
    #[command(allow_negative_numbers = true)]
    Rh {
        #[arg(long)]
        p: Option<f64>,
        /// tau as `re` or `re,im`; defaults to the principal sqrt of
        /// e^{2 pi p} - 1
        #[arg(long, value_parser = parse_complex)]
        tau: Option<(f64, f64)>,
        #[arg(long)]
        y: Option<f64>,
        #[arg(long)]
        panels: Option<usize>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Parabolic cylinder parametrix diagnostics (JSON)
    #[command(allow_negative_numbers = true)]
    Pc {
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, value_parser = parse_complex)]
        tau: Option<(f64, f64)>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Comparison table of the trace against both asymptotic formulas at
    /// alpha = 0 (CSV)
    Fig2 {
        #[arg(long)]
        out: Option<String>,
    },
    /// Run the acceptance suites (JSON report, nonzero exit on failure)
    Verify {
        /// one of: params invariants series fig2 branches global integral rh
        /// vpotential pc
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let file_cfg = match &cli.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => match toml::from_str::<RunConfig>(&text) {
                Ok(cfg) => Some(cfg),
                Err(e) => {
                    eprintln!("error: bad config file: {e}");
                    return ExitCode::from(2);
                }
            },
            Err(e) => {
                eprintln!("error: cannot read config: {e}");
                return ExitCode::from(2);
            }
        },
        None => None,
    };
    match run(cli.command, file_cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_domain() { 2 } else { 1 })
        }
    }
}

fn resolve<T: Clone>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

fn parse_sign(s: Option<String>, file: Option<Sign>) -> Result<Sign, painleve2::Error> {
    match s.as_deref() {
        Some("plus") => Ok(Sign::Plus),
        Some("minus") => Ok(Sign::Minus),
        Some(other) => Err(painleve2::Error::Configuration(format!(
            "sign must be plus or minus, got {other}"
        ))),
        None => Ok(file.unwrap_or(Sign::Minus)),
    }
}

fn write_out(path: &Option<String>, content: &str) -> Result<(), painleve2::Error> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| painleve2::Error::Configuration(format!("cannot write {p}: {e}"))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| painleve2::Error::Configuration(e.to_string()))
        }
    }
}

/// C-style `%.12e` formatting (signed two-digit-or-more exponent).
fn fmt_e(v: f64) -> String {
    let s = format!("{v:.12e}");
    match s.split_once('e') {
        Some((mant, exp)) => {
            let (sign, digits) = if let Some(stripped) = exp.strip_prefix('-') {
                ('-', stripped)
            } else {
                ('+', exp)
            };
            format!("{mant}e{sign}{digits:0>2}")
        }
        None => s,
    }
}

fn build_trace(
    args: &TraceArgs,
    file_cfg: &Option<RunConfig>,
    kind: CommandKind,
) -> Result<(SolutionTrace, RunConfig), painleve2::Error> {
    let fc = file_cfg.clone();
    let mut cfg = RunConfig::new(kind);
    cfg.alpha = Some(resolve(
        args.alpha,
        fc.as_ref().and_then(|c| c.alpha),
        (0.0, 0.0),
    ));
    let sign = parse_sign(args.sign.clone(), fc.as_ref().and_then(|c| c.sign))?;
    cfg.sign = Some(sign);
    cfg.xmin = Some(resolve(args.xmin, fc.as_ref().and_then(|c| c.xmin), -60.0));
    cfg.xmax = Some(resolve(args.xmax, fc.as_ref().and_then(|c| c.xmax), 60.0));
    cfg.grid_step = Some(resolve(
        args.grid_step,
        fc.as_ref().and_then(|c| c.grid_step),
        0.1,
    ));
    cfg.tol = Some(resolve(args.tol, fc.as_ref().and_then(|c| c.tol), 1e-10));
    cfg.out = args.out.clone().or(fc.and_then(|c| c.out));
    let (are, aim) = cfg.alpha.unwrap();
    let tr = trace_tritronquee_with(
        C64::new(are, aim),
        sign,
        cfg.xmin.unwrap(),
        cfg.xmax.unwrap(),
        cfg.tol.unwrap(),
        cfg.grid_step.unwrap(),
        0.0,
    )?;
    Ok((tr, cfg))
}

fn run(cmd: Command, file_cfg: Option<RunConfig>) -> Result<ExitCode, painleve2::Error> {
    match cmd {
        Command::Params { alpha } => {
            let (are, aim) = resolve(alpha, file_cfg.as_ref().and_then(|c| c.alpha), (0.0, 0.0));
            let a = C64::new(are, aim);
            let (q0, q, tau) = q_tau(a)?;
            let report = json!({
                "schema_version": SCHEMA_VERSION,
                "alpha": [a.re, a.im],
                "q0": [q0.re, q0.im],
                "q": [q.re, q.im],
                "tau": [tau.re, tau.im],
                "regime": classify_regime(a).to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(ExitCode::SUCCESS)
        }

        Command::Trace(args) => {
            let (tr, cfg) = build_trace(&args, &file_cfg, CommandKind::Trace)?;
            let mut out = String::new();
            out.push_str(&format!(
                "# painleve2 trace schema_version={} config_hash={:016x}\n",
                SCHEMA_VERSION,
                cfg.hash()
            ));
            out.push_str("x, re_u, im_u, re_du, im_du\n");
            let mut pole_iter = tr.poles.iter().peekable();
            for ((&x, u), du) in tr.x_grid.iter().zip(&tr.u_values).zip(&tr.du_values) {
                while let Some(p) = pole_iter.peek() {
                    if p.location < x {
                        out.push_str(&format!("# pole {} {:+}\n", fmt_e(p.location), p.residue));
                        pole_iter.next();
                    } else {
                        break;
                    }
                }
                out.push_str(&format!(
                    "{}, {}, {}, {}, {}\n",
                    fmt_e(x),
                    fmt_e(u.re),
                    fmt_e(u.im),
                    fmt_e(du.re),
                    fmt_e(du.im)
                ));
            }
            for p in pole_iter {
                out.push_str(&format!("# pole {} {:+}\n", fmt_e(p.location), p.residue));
            }
            write_out(&cfg.out, &out)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Poles(args) => {
            let (tr, cfg) = build_trace(&args, &file_cfg, CommandKind::Poles)?;
            let poles: Vec<_> = tr
                .poles
                .iter()
                .map(|p| {
                    json!({
                        "location": p.location,
                        "residue": p.residue,
                        "regular_part_coefficients": p
                            .local_coeffs
                            .iter()
                            .map(|c| [c.re, c.im])
                            .collect::<Vec<_>>(),
                    })
                })
                .collect();
            let report = json!({
                "schema_version": SCHEMA_VERSION,
                "config_hash": format!("{:016x}", cfg.hash()),
                "alpha": cfg.alpha,
                "count": poles.len(),
                "poles": poles,
            });
            write_out(&cfg.out, &serde_json::to_string_pretty(&report).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }

        Command::TotalIntegral(args) => {
            let fc = file_cfg.clone();
            let alpha = resolve(args.alpha, fc.as_ref().and_then(|c| c.alpha), (0.0, 0.0));
            let xmin = resolve(args.xmin, fc.as_ref().and_then(|c| c.xmin), -90.0);
            let xmax = resolve(args.xmax, fc.as_ref().and_then(|c| c.xmax), 60.0);
            let tol = resolve(args.tol, fc.as_ref().and_then(|c| c.tol), 1e-10);
            let out = args.out.clone().or(fc.and_then(|c| c.out));
            let report = total_integral_with(C64::new(alpha.0, alpha.1), xmin, xmax, tol, None)?;
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "report": report,
            });
            write_out(&out, &serde_json::to_string_pretty(&doc).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Rh {
            p,
            tau,
            y,
            panels,
            out,
        } => {
            let fc = file_cfg.clone();
            let p = resolve(p, fc.as_ref().and_then(|c| c.p), 0.0);
            let y = resolve(y, fc.as_ref().and_then(|c| c.y), 0.0);
            let panels = resolve(panels, fc.as_ref().and_then(|c| c.panels), 24);
            let tau = match tau.or(fc.as_ref().and_then(|c| c.tau)) {
                Some((re, im)) => C64::new(re, im),
                None => (C64::new((2.0 * std::f64::consts::PI * p).exp() - 1.0, 0.0)).sqrt(),
            };
            let out = out.or(fc.and_then(|c| c.out));
            let sol = solve_w(p, tau, y, panels)?;
            let (u, v, q) = match extract_uvq(&sol) {
                Ok(t) => t,
                Err(_) => (sol.w1.m12, sol.w1.m21, C64::new(f64::NAN, f64::NAN)),
            };
            let (du, dv) = uv_derivatives(&sol);
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "p": p,
                "tau": [tau.re, tau.im],
                "y": y,
                "panels": panels,
                "u": [u.re, u.im],
                "v": [v.re, v.im],
                "q": [q.re, q.im],
                "du": [du.re, du.im],
                "dv": [dv.re, dv.im],
                "jump_residual": sol.jump_residual,
                "det_residual": sol.det_residual,
                "cond_estimate": sol.cond_estimate,
                "schwarz_deviation": sol.schwarz_deviation(),
            });
            write_out(&out, &serde_json::to_string_pretty(&doc).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Pc { p, tau, out } => {
            let fc = file_cfg.clone();
            let p = resolve(p, fc.as_ref().and_then(|c| c.p), 0.3);
            let tau = match tau.or(fc.as_ref().and_then(|c| c.tau)) {
                Some((re, im)) => C64::new(re, im),
                None => (C64::new((2.0 * std::f64::consts::PI * p).exp() - 1.0, 0.0)).sqrt(),
            };
            let out = out.or(fc.and_then(|c| c.out));
            let pc = pc_coefficients(C64::new(p, 0.0), tau)?;
            let jumps = pc_jump_residuals(&pc, &[0.5, 1.0, 1.5]);
            let lam = C64::new(
                10.0 * (std::f64::consts::PI / 8.0).cos(),
                10.0 * (std::f64::consts::PI / 8.0).sin(),
            );
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "p": p,
                "tau": [tau.re, tau.im],
                "a": [pc.a.re, pc.a.im],
                "r": [pc.r.re, pc.r.im],
                "s": [pc.s.re, pc.s.im],
                "rs_plus_2p": (pc.r * pc.s + 2.0 * C64::new(p, 0.0)).norm(),
                "jump_residuals": jumps,
                "connection_residual_t1": pc_connection_residual(&pc, 1.0),
                "connection_residual_t2": pc_connection_residual(&pc, 2.0),
                "normalization_remainder_at_10": normalization_remainder(lam, &pc).norm_max(),
            });
            write_out(&out, &serde_json::to_string_pretty(&doc).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Fig2 { out } => {
            let out = out.or(file_cfg.and_then(|c| c.out));
            let content = fig2_csv()?;
            write_out(&out, &content)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify { suite, out } => {
            if let Some(s) = &suite {
                if !verify::SUITES.contains(&s.as_str()) {
                    return Err(painleve2::Error::Configuration(format!(
                        "unknown suite '{s}'; expected one of {:?}",
                        verify::SUITES
                    )));
                }
            }
            let results = verify::run(suite.as_deref());
            for r in &results {
                println!(
                    "criterion {:2} [{}]: {} ({:.1}s)",
                    r.id,
                    r.name,
                    if r.passed { "PASS" } else { "FAIL" },
                    r.seconds
                );
                for ch in &r.checks {
                    println!(
                        "    [{}] {}: measured {:.3e} vs threshold {:.3e} {}",
                        if ch.passed { "ok " } else { "FAIL" },
                        ch.name,
                        ch.measured,
                        ch.threshold,
                        ch.note
                    );
                }
            }
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "criteria": results,
            });
            if out.is_some() {
                write_out(&out, &serde_json::to_string_pretty(&doc).unwrap())?;
            }
            let ok = results.iter().all(|r| r.passed);
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

/// Columns x, im_u_numeric, im_u_asym_plus (x > 0), im_u_asym_minus (x < 0)
/// over [-60, 60] with step 0.05, at alpha = 0.
fn fig2_csv() -> Result<String, painleve2::Error> {
    let alpha = C64::ZERO;
    let tr = trace_tritronquee_with(alpha, Sign::Minus, -60.0, 60.0, 1e-10, 0.05, 0.0)?;
    let spec = TritronqueeSpec::new(alpha, Sign::Minus)?;
    let series = PlusInfinitySeries::new(alpha, Sign::Minus, 2);
    let q = spec.q.re;
    let pref = oscillatory_prefactor(q, spec.tau);

    let mut cfg = RunConfig::new(CommandKind::Fig2);
    cfg.alpha = Some((0.0, 0.0));
    let mut out = String::new();
    out.push_str(&format!(
        "# painleve2 fig2 schema_version={} config_hash={:016x}\n",
        SCHEMA_VERSION,
        cfg.hash()
    ));
    out.push_str("x, im_u_numeric, im_u_asym_plus, im_u_asym_minus\n");
    let n = (120.0 / 0.05f64).round() as usize;
    for i in 0..=n {
        let x = -60.0 + 0.05 * i as f64;
        let u = match tr.eval(x) {
            Some((u, _)) => u,
            None => continue,
        };
        if u.re.abs() > 1e-6 {
            return Err(painleve2::Error::IntegrationFailure {
                x,
                msg: format!("trace not purely imaginary at alpha = 0: Re u = {}", u.re),
            });
        }
        let plus = if x > 0.0 {
            fmt_e(series.eval(C64::new(x, 0.0)).unwrap().im)
        } else {
            String::new()
        };
        let minus = if x < 0.0 {
            let th = theta(x, q)?;
            fmt_e((pref * (-x).powf(-0.25) * th.sin()).im)
        } else {
            String::new()
        };
        out.push_str(&format!(
            "{}, {}, {}, {}\n",
            fmt_e(x),
            fmt_e(u.im),
            plus,
            minus
        ));
    }
    Ok(out)
}
