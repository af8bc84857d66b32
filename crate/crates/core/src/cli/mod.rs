//! Command-line front end. [`run`] takes the argument list and output
//! streams so it can be driven from tests; `main` only forwards to it.

mod expr;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::complex::{is_homotopy_equivalent, EquivalenceSearch, Presentation, TwistedComplex, Verdict};
use crate::entropy::{certify, entropy_estimate, gy_check, TGrid};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::model::{emit_model, load_model};
use crate::presentation::{infer_p_object, p_object_check, BUILTIN_MODELS};
use crate::report::{emit_report, Format};
use crate::twists::{full_generator, TwistFunctor};

pub use expr::parse_expr;

pub const DEFAULT_SEED: u64 = 0x771757ed;

#[derive(Debug, Parser)]
#[command(name = "catent", version, about = "Twisted complexes, ℙ-twists and categorical entropy")]
struct Cli {
    /// Seed for the randomized equivalence search.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Tolerance for the spectral radius iteration.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Evaluate independent work items on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the axioms of a presentation.
    Validate { model: String },
    /// Decide whether an object is a ℙ^d-object.
    PobjectCheck {
        model: String,
        #[arg(long)]
        object: String,
        /// Defaults to half the top degree of End^*(E).
        #[arg(long)]
        dim: Option<u32>,
    },
    /// Apply a twist repeatedly and print the reduced slots after each step.
    Twist {
        model: String,
        #[command(flatten)]
        functor: FunctorArgs,
        #[arg(long)]
        apply_to: String,
        #[arg(long, default_value_t = 1)]
        iterations: usize,
    },
    /// Estimate entropy on a grid of t and write a report.
    Entropy {
        model: String,
        #[command(flatten)]
        functor: FunctorArgs,
        #[command(flatten)]
        growth: GrowthArgs,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Compare slot weights of Φ^n G with the tower bound.
    Certify {
        model: String,
        #[command(flatten)]
        functor: FunctorArgs,
        #[command(flatten)]
        growth: GrowthArgs,
    },
    /// Compare the t = 0 slope with log ρ of the K₀ action.
    GyCheck {
        model: String,
        #[command(flatten)]
        functor: FunctorArgs,
        #[command(flatten)]
        growth: GrowthArgs,
        /// Largest accepted |h0 − log ρ|.
        #[arg(long, default_value_t = 0.01)]
        max_gap: f64,
    },
    /// Test T_E²(X) ≃ P_E(X) for a spherical ℙ¹-object E.
    CompareTwists {
        model: String,
        #[arg(long)]
        object: String,
        #[arg(long)]
        apply_to: String,
    },
    /// Walk through a built-in model.
    Demo {
        #[arg(long)]
        model: String,
        /// Also write the model as a JSON file.
        #[arg(long)]
        save: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    P,
    Spherical,
    Shift,
}

#[derive(Debug, Args)]
struct FunctorArgs {
    #[arg(long = "type", value_enum, default_value = "p")]
    kind: Kind,
    #[arg(long, required_unless_present = "by")]
    object: Option<String>,
    /// d for ℙ-twists; inferred when omitted.
    #[arg(long)]
    dim: Option<u32>,
    /// Shift amount for `--type shift`.
    #[arg(long, allow_hyphen_values = true)]
    by: Option<i64>,
}

#[derive(Debug, Args)]
struct GrowthArgs {
    /// Split generator; defaults to the sum of all generators.
    #[arg(long)]
    generator: Option<String>,
    #[arg(long, default_value_t = 8)]
    n: usize,
    #[arg(long, default_value = "-1:1:0.25", allow_hyphen_values = true)]
    t_grid: String,
}

/// Failures that should exit with status 2.
fn is_usage(e: &Error) -> bool {
    matches!(e, Error::Input(_) | Error::UnknownObject(_) | Error::UnknownHom(_))
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    exec: Execution,
    seed: u64,
    tol: f64,
}

/// Runs one command; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut ctx = Ctx {
        out,
        exec: if cli.sequential { Execution::Sequential } else { Execution::default() },
        seed: cli.seed,
        tol: cli.tol,
    };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if is_usage(&e) {
                2
            } else {
                1
            }
        }
    }
}

fn model(name_or_path: &str) -> Result<Presentation> {
    load_model(name_or_path).map_err(|e| match e {
        // a file that exists but does not parse is a validation failure
        Error::UnknownObject(m) | Error::UnknownHom(m) => Error::Model(m),
        e => e,
    })
}

fn functor(p: &Presentation, a: &FunctorArgs) -> Result<TwistFunctor> {
    let object = || a.object.clone().ok_or_else(|| Error::Input("--object is required".into()));
    match a.kind {
        Kind::P => TwistFunctor::p_twist(p.clone(), &object()?, a.dim),
        Kind::Spherical => TwistFunctor::spherical(p.clone(), &object()?),
        Kind::Shift => a
            .by
            .map(TwistFunctor::Shift)
            .ok_or_else(|| Error::Input("--type shift needs --by".into())),
    }
}

fn generator(p: &Presentation, g: &GrowthArgs) -> Result<TwistedComplex> {
    match &g.generator {
        Some(e) => parse_expr(p, e),
        None => full_generator(p),
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e)
}

fn dispatch(cmd: Command, ctx: &mut Ctx<'_>) -> Result<i32> {
    match cmd {
        Command::Validate { model: m } => validate(&m, ctx),
        Command::PobjectCheck { model: m, object, dim } => {
            let p = model(&m)?;
            let verdict = match dim {
                Some(d) => p_object_check(&p, &object, d)?,
                None => infer_p_object(&p, &object)?,
            };
            match verdict {
                Ok(cert) => {
                    writeln!(ctx.out, "{object} is a ℙ^{}-object with generator {}", cert.dim, p.hom(cert.generator).name).map_err(io)?;
                    Ok(0)
                }
                Err(f) => {
                    writeln!(ctx.out, "{object} is not a ℙ-object: {f}").map_err(io)?;
                    Ok(1)
                }
            }
        }
        Command::Twist { model: m, functor: fa, apply_to, iterations } => {
            let p = model(&m)?;
            let phi = functor(&p, &fa)?;
            let x = parse_expr(&p, &apply_to)?;
            writeln!(ctx.out, "{phi} applied to {}", x.display_slots()).map_err(io)?;
            for (k, y) in phi.iterate(&x, iterations)?.iter().enumerate() {
                writeln!(ctx.out, "step {}: {}", k + 1, y.display_slots()).map_err(io)?;
            }
            Ok(0)
        }
        Command::Entropy { model: m, functor: fa, growth, out, format } => {
            let format: Format = format.parse()?;
            let p = model(&m)?;
            let phi = functor(&p, &fa)?;
            let g = generator(&p, &growth)?;
            let grid: TGrid = growth.t_grid.parse()?;
            let report = entropy_estimate(&phi, &g, growth.n, &grid, ctx.exec)?;
            emit_report(&report, &out, format)?;
            let n = report.n_max();
            for (k, t) in report.grid.iter().enumerate() {
                let show = |x: Option<f64>| x.map_or("undefined".to_string(), |v| format!("{v:.6}"));
                writeln!(
                    ctx.out,
                    "t = {t:.6}: slope a_{n} − a_{} = {}, a_{n}/{n} = {}",
                    n - 1,
                    show(report.slope_diff(n, k)),
                    show(report.slope_ratio(n, k))
                )
                .map_err(io)?;
            }
            let degenerate = report.degenerate();
            if !degenerate.is_empty() {
                writeln!(ctx.out, "contractible iterates at n = {degenerate:?}; slopes omitted there").map_err(io)?;
            }
            writeln!(ctx.out, "wrote {}", out.display()).map_err(io)?;
            Ok(0)
        }
        Command::Certify { model: m, functor: fa, growth } => {
            let p = model(&m)?;
            let phi = functor(&p, &fa)?;
            let g = generator(&p, &growth)?;
            let grid: TGrid = growth.t_grid.parse()?;
            let report = entropy_estimate(&phi, &g, growth.n, &grid, ctx.exec)?;
            let rows = certify(&report)?;
            writeln!(ctx.out, "n,t,slot_weight,tower_bound,holds").map_err(io)?;
            for r in &rows {
                writeln!(ctx.out, "{},{:.6},{:.6},{:.6},{}", r.n, r.t, r.weight, r.bound, r.holds).map_err(io)?;
            }
            let failed = rows.iter().filter(|r| !r.holds).count();
            writeln!(ctx.out, "{} of {} cells certified", rows.len() - failed, rows.len()).map_err(io)?;
            Ok(i32::from(failed > 0))
        }
        Command::GyCheck { model: m, functor: fa, growth, max_gap } => {
            let p = model(&m)?;
            let phi = functor(&p, &fa)?;
            let g = generator(&p, &growth)?;
            let r = gy_check(&phi, &g, growth.n, ctx.tol, ctx.exec)?;
            writeln!(ctx.out, "K0 matrix: {}", phi.k0_matrix(&p)?).map_err(io)?;
            writeln!(ctx.out, "h0_estimate = {:.6}", r.h0_estimate).map_err(io)?;
            writeln!(ctx.out, "log_rho = {:.6}", r.log_rho).map_err(io)?;
            writeln!(ctx.out, "gap = {:.6} (max {max_gap})", r.gap).map_err(io)?;
            Ok(i32::from(r.gap > max_gap))
        }
        Command::CompareTwists { model: m, object, apply_to } => {
            let p = model(&m)?;
            let te = TwistFunctor::spherical(p.clone(), &object)?;
            let pe = TwistFunctor::p_twist(p.clone(), &object, Some(1))?;
            let x = parse_expr(&p, &apply_to)?;
            let t2 = te.iterate(&x, 2)?.pop().expect("two iterates");
            let px = pe.apply(&x)?;
            writeln!(ctx.out, "T_E²(X) = {}", t2.display_slots()).map_err(io)?;
            writeln!(ctx.out, "P_E(X)  = {}", px.display_slots()).map_err(io)?;
            let search = EquivalenceSearch {
                seed: ctx.seed,
                execution: ctx.exec,
                ..EquivalenceSearch::default()
            };
            match is_homotopy_equivalent(&t2, &px, &search)? {
                Verdict::Equivalent(w) => {
                    writeln!(ctx.out, "equivalent; witness {w:?}").map_err(io)?;
                    Ok(0)
                }
                Verdict::Distinct(why) => {
                    writeln!(ctx.out, "distinct: {why}").map_err(io)?;
                    Ok(1)
                }
                Verdict::Inconclusive => {
                    writeln!(ctx.out, "inconclusive: invariants agree but no equivalence was found").map_err(io)?;
                    Ok(1)
                }
            }
        }
        Command::Demo { model: m, save } => demo(&m, save, ctx),
    }
}

fn validate(m: &str, ctx: &mut Ctx<'_>) -> Result<i32> {
    // validation already runs inside loading; report its result plainly
    match model(m) {
        Ok(p) => {
            writeln!(
                ctx.out,
                "valid: {} objects, {} basis morphisms over {}",
                p.object_count(),
                p.homs().len(),
                p.field().spec_string()
            )
            .map_err(io)?;
            Ok(0)
        }
        Err(e @ (Error::InvalidPresentation(_) | Error::Model(_))) => {
            writeln!(ctx.out, "invalid: {e}").map_err(io)?;
            Ok(1)
        }
        Err(e) => Err(e),
    }
}

fn demo(m: &str, save: Option<PathBuf>, ctx: &mut Ctx<'_>) -> Result<i32> {
    if !BUILTIN_MODELS.contains(&m) {
        return Err(Error::Input(format!("demo needs a built-in model, one of {}", BUILTIN_MODELS.join(", "))));
    }
    let p = model(m)?;
    let out = &mut *ctx.out;
    writeln!(out, "model {m}: {} objects, {} basis morphisms", p.object_count(), p.homs().len()).map_err(io)?;
    if let Some(path) = save {
        crate::report::write_atomic(&path, &emit_model(&p))?;
        writeln!(out, "saved model to {}", path.display()).map_err(io)?;
    }
    let pe = TwistFunctor::p_twist(p.clone(), "E", None)?;
    writeln!(out, "twist: {pe}").map_err(io)?;
    for o in p.objects() {
        let g = TwistedComplex::generator(p.clone(), o, 0);
        writeln!(out, "  P_E({}) = {}", p.object_name(o), pe.apply(&g)?.display_slots()).map_err(io)?;
    }
    writeln!(out, "  K0 matrix {}", pe.k0_matrix(&p)?).map_err(io)?;
    let g = full_generator(&p)?;
    let report = entropy_estimate(&pe, &g, 6, &TGrid::default(), ctx.exec)?;
    writeln!(out, "slopes a_6 − a_5 for G = {}:", g.display_slots()).map_err(io)?;
    for (k, t) in report.grid.iter().enumerate() {
        let s = report.slope(k).map_or("undefined".into(), |v| format!("{v:.6}"));
        writeln!(out, "  t = {t:>5.2}: {s}").map_err(io)?;
    }
    Ok(0)
}
