//! Batch front end: every subcommand reads parameters (and curve files),
//! runs the library computation and prints one deterministic JSON report to
//! stdout. Exit codes: 0 success, 2 invalid input, 3 numerical failure.

mod report;
mod svg;

use clap::{Parser, Subcommand};
use milnorkit_core::census;
use milnorkit_core::curve::{CurveError, PlanarCurve};
use milnorkit_core::fibration::{self, FibrationError, FibreParams};
use milnorkit_core::pairing::{self, LagrangianVerdict, PuncturedSurface, RelClass};
use milnorkit_core::pearl;
use milnorkit_core::quotient::{self, HandleDiagram, QuotientParams};
use milnorkit_core::tol::TOL_TAU;
use report::{report, report_with_meta, to_stdout_string};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "milnorkit",
    version,
    about = "Invariants of A_n Milnor fibres and the rational homology balls B_{p,q}"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Critical values of the z-projection of S_n
    Critvals {
        #[arg(long)]
        n: u32,
    },
    /// Monotonicity constant of the matching torus over a curve file
    Tau {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        curve: PathBuf,
        /// Override the quadrature tolerance (default: MILNORKIT_TOL or 1e-6)
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Hamiltonian-isotopy comparison of the tori over two curves
    Classify {
        #[arg(long)]
        n: u32,
        #[arg(long = "curve-a")]
        curve_a: PathBuf,
        #[arg(long = "curve-b")]
        curve_b: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Maslov-2 disk census of the matching torus
    Census {
        #[arg(long)]
        n: u32,
        /// Reduce counts mod 2
        #[arg(long)]
        mod2: bool,
    },
    /// Floer cohomology ranks: --n for matching tori, --p/--q for quotient tori
    Hf {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Quotient topology of B_{p,q}: continued fraction, plumbing, homology, boundary
    Quotient {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
    },
    /// Intersection pairing of a symmetric relative class with its rotation
    Pairing {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        kappa: u32,
        /// Comma-separated coefficients a_1,..,a_p
        #[arg(long)]
        coeffs: String,
    },
    /// Existence of closed exact Lagrangian submanifolds in B_{p,q}
    Verdict {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
    },
    /// Render punctures, an optional curve, or a plumbing chain to SVG
    Render {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        curve: Option<PathBuf>,
        #[arg(long, requires = "q")]
        p: Option<u64>,
        #[arg(long, requires = "p")]
        q: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
}

enum CliError {
    Input(String),
    Numeric(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Numeric(m) => m,
        }
    }
}

fn curve_error(e: CurveError) -> CliError {
    match e {
        CurveError::AmbiguousWinding { .. } => CliError::Numeric(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

fn fibration_error(e: FibrationError) -> CliError {
    match e {
        FibrationError::Quadrature(_) | FibrationError::BracketFailure(_) => {
            CliError::Numeric(e.to_string())
        }
        FibrationError::Curve(c) => curve_error(c),
        _ => CliError::Input(e.to_string()),
    }
}

fn resolve_tol(flag: Option<f64>) -> Result<f64, CliError> {
    if let Some(t) = flag {
        if !(t > 0.0) {
            return Err(CliError::Input(format!(
                "tolerance must be positive, got {t}"
            )));
        }
        return Ok(t);
    }
    match std::env::var("MILNORKIT_TOL") {
        Ok(text) => text
            .parse::<f64>()
            .ok()
            .filter(|t| *t > 0.0)
            .ok_or_else(|| {
                CliError::Input(format!(
                    "MILNORKIT_TOL must be a positive number, got {text:?}"
                ))
            }),
        Err(_) => Ok(TOL_TAU),
    }
}

fn load_curve(path: &PathBuf) -> Result<PlanarCurve<f64>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    PlanarCurve::from_json(&text).map_err(curve_error)
}

fn complex_list(values: &[milnorkit_core::Point64]) -> Value {
    Value::Array(values.iter().map(|z| json!([z.re, z.im])).collect())
}

fn enclosed_json(set: &std::collections::BTreeSet<u32>) -> Value {
    Value::Array(set.iter().map(|&k| json!(k)).collect())
}

fn run(cli: Cli) -> Result<Value, CliError> {
    match cli.command {
        Command::Critvals { n } => {
            let params = FibreParams::new(n);
            let values = params.critical_values::<f64>();
            Ok(report(
                "critvals",
                json!({ "n": n }),
                json!({ "critical_values": complex_list(&values) }),
                TOL_TAU,
            ))
        }
        Command::Tau { n, curve, tol } => {
            let tol = resolve_tol(tol)?;
            let params = FibreParams::new(n);
            let c = load_curve(&curve)?;
            let tau = fibration::tau(&c, &params, tol).map_err(fibration_error)?;
            let enclosed = fibration::enclosed_criticals(&c, &params).map_err(fibration_error)?;
            Ok(report(
                "tau",
                json!({ "n": n, "curve": curve.display().to_string(), "points": c.len() }),
                json!({
                    "tau": tau.0,
                    "euclidean_area": c.signed_area(),
                    "image_area": tau.0 - c.signed_area(),
                    "enclosed_criticals": enclosed_json(&enclosed),
                }),
                tol,
            ))
        }
        Command::Classify {
            n,
            curve_a,
            curve_b,
            tol,
        } => {
            let tol = resolve_tol(tol)?;
            let params = FibreParams::new(n);
            let a = load_curve(&curve_a)?;
            let b = load_curve(&curve_b)?;
            let verdict =
                fibration::same_hamiltonian_class(&a, &b, &params, tol).map_err(fibration_error)?;
            let tau_a = fibration::tau(&a, &params, tol).map_err(fibration_error)?.0;
            let tau_b = fibration::tau(&b, &params, tol).map_err(fibration_error)?.0;
            let enc_a = fibration::enclosed_criticals(&a, &params).map_err(fibration_error)?;
            let enc_b = fibration::enclosed_criticals(&b, &params).map_err(fibration_error)?;
            Ok(report(
                "classify",
                json!({
                    "n": n,
                    "curve_a": curve_a.display().to_string(),
                    "curve_b": curve_b.display().to_string(),
                }),
                json!({
                    "verdict": verdict.to_string(),
                    "tau_a": tau_a,
                    "tau_b": tau_b,
                    "enclosed_a": enclosed_json(&enc_a),
                    "enclosed_b": enclosed_json(&enc_b),
                }),
                tol,
            ))
        }
        Command::Census { n, mod2 } => {
            let c = census::census(n);
            let entries: Vec<Value> = c
                .entries()
                .map(|(class, count)| {
                    let count = if mod2 { count % 2 } else { count };
                    json!({ "class": { "v": class.v, "l": class.l }, "count": count })
                })
                .collect();
            let total = census::total_boundary(&c);
            let cc = census::c_class(&c);
            Ok(report(
                "census",
                json!({ "n": n, "mod2": mod2 }),
                json!({
                    "entries": entries,
                    "total_count": c.total_count(),
                    "total_boundary": { "v": total.v, "l": total.l },
                    "c_class": { "v": cc.v as u8, "l": cc.l as u8 },
                }),
                TOL_TAU,
            ))
        }
        Command::Hf { n, p, q } => match (n, p, q) {
            (Some(n), None, None) => {
                let complex = pearl::build_pearl_complex(&census::census(n));
                let ranks = complex.hf_ranks();
                Ok(report_with_meta(
                    "hf",
                    json!({ "n": n }),
                    json!({ "ranks": { "even": ranks.even, "odd": ranks.odd } }),
                    TOL_TAU,
                    &[("dichotomy_completed", json!(complex.dichotomy_completed()))],
                ))
            }
            (None, Some(p), Some(q)) => {
                let transfer =
                    pearl::transfer_check(p, q).map_err(|e| CliError::Input(e.to_string()))?;
                let out = pearl::quotient_hf(p, q).map_err(|e| CliError::Input(e.to_string()))?;
                Ok(report(
                    "hf",
                    json!({ "p": p, "q": q }),
                    json!({
                        "ranks": { "even": out.ranks.even, "odd": out.ranks.odd },
                        "nonempty": out.nonempty,
                        "transfer": transfer,
                    }),
                    TOL_TAU,
                ))
            }
            _ => Err(CliError::Input(
                "hf takes either --n or both --p and --q".into(),
            )),
        },
        Command::Quotient { p, q } => {
            let params = QuotientParams::new(p, q).map_err(|e| CliError::Input(e.to_string()))?;
            let graph = quotient::hj_expansion(&params);
            let matrix = quotient::plumbing_matrix(&graph);
            let det = quotient::determinant(&matrix);
            let det_json = i64::try_from(&det)
                .map(|v| json!(v))
                .unwrap_or_else(|_| json!(det.to_string()));
            let lens = quotient::lens_boundary(&params);
            let ball_diagram = HandleDiagram::rational_ball(&params);
            let cover_diagram = HandleDiagram::milnor_cover(&params);
            let ball = quotient::handle_homology(&ball_diagram)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let cover = quotient::handle_homology(&cover_diagram)
                .map_err(|e| CliError::Input(e.to_string()))?;
            Ok(report(
                "quotient",
                json!({ "p": p, "q": q }),
                json!({
                    "hj": graph.coefficients(),
                    "euler_numbers": graph.euler_numbers(),
                    "plumbing_matrix": matrix,
                    "det": det_json,
                    "H1": ball.h1.to_string(),
                    "lens": { "order": lens.order, "type": [lens.lens_type.0, lens.lens_type.1] },
                    "ball_homology": {
                        "h1": ball.h1.to_string(),
                        "h2_rank": ball.h2_rank,
                        "chi": ball.chi,
                        "framing": ball_diagram.two_handles[0].framing,
                        "strands": ball_diagram.two_handles[0].strands,
                    },
                    "cover_homology": {
                        "h1": cover.h1.to_string(),
                        "h2_rank": cover.h2_rank,
                        "chi": cover.chi,
                        "framing": cover_diagram.two_handles[0].framing,
                        "two_handles": cover_diagram.two_handles.len(),
                    },
                }),
                TOL_TAU,
            ))
        }
        Command::Pairing {
            p,
            q,
            kappa,
            coeffs,
        } => {
            let surface =
                PuncturedSurface::new(p, q).map_err(|e| CliError::Input(e.to_string()))?;
            let a: Vec<i64> = coeffs
                .split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::Input(format!("bad coefficient list: {e}")))?;
            let value = pairing::closed_form_pairing(&surface, kappa, &a)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let class = RelClass::new(&surface, kappa, a.clone())
                .map_err(|e| CliError::Input(e.to_string()))?;
            let rotated = pairing::rotate_class(&surface, &class);
            let bilinear = pairing::pair(&surface, &class, &rotated)
                .map_err(|e| CliError::Input(e.to_string()))?;
            Ok(report(
                "pairing",
                json!({ "p": p, "q": q, "kappa": kappa, "coeffs": a }),
                json!({
                    "closed_form_pairing": value,
                    "pair_with_rotation": bilinear,
                    "odd": value % 2 != 0,
                    "rotated_kappa": rotated.kappa(),
                }),
                TOL_TAU,
            ))
        }
        Command::Verdict { p, q } => {
            let params = QuotientParams::new(p, q).map_err(|e| CliError::Input(e.to_string()))?;
            let verdict = pairing::exact_lagrangian_verdict(&params);
            let (name, reason, checked) = match verdict {
                LagrangianVerdict::RP2Exception => ("RP2Exception", Value::Null, 0),
                LagrangianVerdict::NoneExist {
                    reason,
                    checked_classes,
                } => ("NoneExist", json!(reason.to_string()), checked_classes),
            };
            Ok(report(
                "verdict",
                json!({ "p": p, "q": q }),
                json!({
                    "verdict": name,
                    "reason": reason,
                    "checked_classes": checked,
                }),
                TOL_TAU,
            ))
        }
        Command::Render {
            n,
            curve,
            p,
            q,
            out,
        } => {
            let mut scene = svg::SvgScene::new(640, 640);
            let mut punctures = 0u32;
            if n.is_none() && p.is_none() {
                return Err(CliError::Input(
                    "render needs --n (punctures/curve) or --p/--q (plumbing chain)".into(),
                ));
            }
            if let Some(n) = n {
                let params = FibreParams::new(n);
                let values = params.critical_values::<f64>();
                punctures = values.len() as u32;
                if let Some(path) = &curve {
                    let c = load_curve(path)?;
                    scene.add_curve(c.points());
                }
                scene.add_punctures(&values);
            }
            if let (Some(p), Some(q)) = (p, q) {
                let params =
                    QuotientParams::new(p, q).map_err(|e| CliError::Input(e.to_string()))?;
                scene.add_plumbing(&quotient::hj_expansion(&params));
            }
            let text = scene.to_svg();
            std::fs::write(&out, &text)
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", out.display())))?;
            Ok(report(
                "render",
                json!({
                    "n": n,
                    "curve": curve.map(|c| c.display().to_string()),
                    "p": p,
                    "q": q,
                }),
                json!({
                    "out": out.display().to_string(),
                    "punctures": punctures,
                    "bytes": text.len(),
                }),
                TOL_TAU,
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(value) => {
            print!("{}", to_stdout_string(&value));
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}
