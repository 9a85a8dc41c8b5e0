mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use sigma_rigidity::chargenus::{a_hat, ochanine_genus_q, witten_genus_q, ManifoldData};
use sigma_rigidity::equivrep::VirtualRep;
use sigma_rigidity::lattice::{build_adapted_cover, verify_adapted, Lattice};
use sigma_rigidity::par::Execution;
use sigma_rigidity::sampling::{halton_disc, DEFAULT_CENTER, DEFAULT_RADIUS};
use sigma_rigidity::theta::{make_theta, verify_translation, ThetaKind};
use sigma_rigidity::thomfix::{rigidity_spread, verify_model, CcrMode, CheckResult, FixedPointModel};
use sigma_rigidity::Error;

use config::{parse_complex, parse_pair, Format, RunConfig};

#[derive(Parser)]
#[command(name = "sigma-rigidity", version, about = "Theta functions, elliptic genera and transfer checks")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Modulus as RE,IM.
    #[arg(long, global = true, default_value = "0,1", value_parser = parse_complex, allow_hyphen_values = true)]
    tau: Complex64,
    /// Number of q-product factors (default 60, or $SIGMA_RIGIDITY_QTERMS).
    #[arg(long, global = true)]
    qterms: Option<usize>,
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, global = true, default_value_t = 20)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate or check theta functions.
    #[command(subcommand)]
    Theta(ThetaCmd),
    /// Genera of manifolds given by Pontryagin numbers.
    #[command(subcommand)]
    Genus(GenusCmd),
    /// Virtual circle representations.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Build and verify the adapted cover for the n-torsion points.
    Cover {
        #[arg(long)]
        n: u64,
    },
    /// Fixed-point data: transfer checks and the localized sum.
    #[command(subcommand)]
    Thom(ThomCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Sigma,
    Ochanine,
    OchanineQuotient,
}

impl From<Kind> for ThetaKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Sigma => ThetaKind::Sigma,
            Kind::Ochanine => ThetaKind::Ochanine,
            Kind::OchanineQuotient => ThetaKind::OchanineQuotient,
        }
    }
}

#[derive(Subcommand)]
enum ThetaCmd {
    Eval {
        #[arg(long, value_enum, default_value_t = Kind::Sigma)]
        kind: Kind,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
    },
    /// Translation law along a vector `j g1 + k g2` of the character lattice.
    Verify {
        #[arg(long, value_enum, default_value_t = Kind::Sigma)]
        kind: Kind,
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        lambda: (i64, i64),
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Series {
    Ahat,
    Witten,
    Ochanine,
}

#[derive(Subcommand)]
enum GenusCmd {
    Eval {
        #[arg(long, value_enum)]
        series: Series,
        #[arg(long)]
        manifold: PathBuf,
        #[arg(long, default_value_t = 6)]
        qorder: usize,
    },
}

#[derive(Subcommand)]
enum RepCmd {
    Analyze {
        /// Laurent polynomial such as "z^3 - 9z".
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Strict,
    Weak,
}

#[derive(Subcommand)]
enum ThomCmd {
    Verify {
        #[arg(long)]
        fixture: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Sigma)]
        theta: Kind,
        #[arg(long, value_enum, default_value_t = Mode::Strict)]
        mode: Mode,
    },
    /// Spread of the localized sum over a fundamental domain.
    Rigidity {
        #[arg(long)]
        fixture: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Sigma)]
        theta: Kind,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Schema { .. } | Error::Json(_) | Error::MissingPontryagin(_) | Error::BadPontryaginMonomial(_) => 3,
            Error::Config(_)
            | Error::InvalidTau { .. }
            | Error::Parse { .. }
            | Error::Io(_)
            | Error::JetOrder { .. }
            | Error::DimensionCap { .. }
            | Error::QOrderCap { .. }
            | Error::ZeroTorsionOrder => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: String) -> Failure {
    Failure { code: 2, message }
}

/// 15 significant digits.
fn num(x: f64) -> Value {
    Value::String(format!("{x:.14e}"))
}

fn complex(z: Complex64) -> Value {
    json!({"re": num(z.re), "im": num(z.im)})
}

fn check(r: &CheckResult, tol: f64) -> Value {
    json!({
        "max_residual": num(r.max_residual),
        "evaluated": r.evaluated,
        "skipped": r.skipped,
        "pass": r.pass(tol),
    })
}

fn samples(cfg: &RunConfig) -> Vec<Complex64> {
    halton_disc(DEFAULT_CENTER, DEFAULT_RADIUS, cfg.samples, cfg.seed)
}

fn run_config(c: &Common) -> Result<RunConfig, Failure> {
    let cfg = RunConfig {
        tau: c.tau,
        q_terms: config::q_terms(c.qterms).map_err(usage)?,
        tol: c.tol,
        samples: c.samples,
        seed: c.seed,
        format: c.format,
    };
    cfg.validate().map_err(usage)?;
    Ok(cfg)
}

fn run(cfg: &RunConfig, command: Command) -> Result<(Value, bool), Failure> {
    match command {
        Command::Theta(ThetaCmd::Eval { kind, z }) => {
            let th = make_theta(kind.into(), cfg.tau, cfg.q_terms)?;
            let v = th.eval(z)?;
            Ok((json!({"kind": th.name(), "tau": complex(cfg.tau), "z": complex(z), "value": complex(v)}), true))
        }
        Command::Theta(ThetaCmd::Verify { kind, lambda }) => {
            let th = make_theta(kind.into(), cfg.tau, cfg.q_terms)?;
            let r = verify_translation(th.as_ref(), lambda, &samples(cfg), Execution::Parallel);
            let pass = r.evaluated > 0 && r.max_residual < cfg.tol;
            let out = json!({
                "kind": th.name(),
                "lambda": [lambda.0, lambda.1],
                "max_residual": num(r.max_residual),
                "evaluated": r.evaluated,
                "skipped": r.skipped,
                "pass": pass,
            });
            Ok((out, pass))
        }
        Command::Genus(GenusCmd::Eval { series, manifold, qorder }) => {
            let m = ManifoldData::from_json_str(&std::fs::read_to_string(&manifold).map_err(Error::from)?)?;
            let value = match series {
                Series::Ahat => Value::String(a_hat(&m)?.to_string()),
                Series::Witten => q_coeffs(&witten_genus_q(&m, qorder)?),
                Series::Ochanine => q_coeffs(&ochanine_genus_q(&m, qorder)?),
            };
            Ok((json!({"dim": m.dim, "value": value}), true))
        }
        Command::Rep(RepCmd::Analyze { f }) => rep_analyze(&f, cfg),
        Command::Cover { n } => {
            let lat = Lattice::witten(cfg.tau)?;
            let cover = build_adapted_cover(&lat, &lat.torsion_points(n)?)?;
            let rep = verify_adapted(&cover);
            let checks: Vec<Value> =
                rep.checks.iter().map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail})).collect();
            let radii = cover.special_discs().first().map(|(_, d)| d.radius).unwrap_or(0.0);
            let out = json!({
                "n": n,
                "special_points": cover.special_discs().len(),
                "special_radius": num(radii),
                "ordinary_radius": num(cover.ordinary_radius()),
                "probes": rep.probes,
                "checks": checks,
                "pass": rep.pass(),
            });
            Ok((out, rep.pass()))
        }
        Command::Thom(ThomCmd::Verify { fixture, theta, mode }) => {
            let model = FixedPointModel::from_path(&fixture)?;
            let th = make_theta(theta.into(), cfg.tau, cfg.q_terms)?;
            let mode = match mode {
                Mode::Strict => CcrMode::Strict,
                Mode::Weak => CcrMode::Weak,
            };
            let rep = verify_model(&model, th.as_ref(), &samples(cfg), mode, Execution::Parallel)?;
            let ccr: Vec<Value> = rep
                .ccr
                .iter()
                .map(|r| {
                    let checks: Vec<Value> =
                        r.checks.iter().map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail})).collect();
                    json!({"pass": r.pass(), "checks": checks})
                })
                .collect();
            let special: Vec<Value> = rep
                .special
                .iter()
                .map(|s| {
                    let comps: Vec<Value> = s
                        .components
                        .iter()
                        .map(|c| {
                            json!({
                                "component": c.component,
                                "delta": c.delta,
                                "delta_prime": c.delta_prime,
                                "epsilon": c.epsilon,
                                "alpha": c.alpha.to_string(),
                                "g": c.g.to_string(),
                                "alpha_equals_g": c.alpha_equals_g,
                                "root_identity": c.root_identity,
                                "transfer": check(&c.transfer, cfg.tol),
                                "cocycle": check(&c.cocycle, cfg.tol),
                            })
                        })
                        .collect();
                    json!({
                        "a": [num(s.coords.0), num(s.coords.1)],
                        "n": s.n,
                        "epsilon_constant": s.epsilon_constant,
                        "components": comps,
                    })
                })
                .collect();
            let pass = rep.pass(cfg.tol);
            let out = json!({
                "fixture": model.name,
                "theta": th.name(),
                "ccr": ccr,
                "ellipticity": rep.ellipticity.iter().map(|e| check(e, cfg.tol)).collect::<Vec<_>>(),
                "special": special,
                "max_transfer_residual": num(rep.max_transfer_residual()),
                "pass": pass,
            });
            Ok((out, pass))
        }
        Command::Thom(ThomCmd::Rigidity { fixture, theta }) => {
            let model = FixedPointModel::from_path(&fixture)?;
            let th = make_theta(theta.into(), cfg.tau, cfg.q_terms)?;
            let s = rigidity_spread(&model, th.as_ref(), cfg.samples, cfg.seed, Execution::Parallel)?;
            let pass = s.evaluated > 0 && s.spread < cfg.tol;
            let out = json!({
                "fixture": model.name,
                "spread": num(s.spread),
                "reference": complex(s.reference),
                "evaluated": s.evaluated,
                "skipped": s.skipped,
                "pass": pass,
            });
            Ok((out, pass))
        }
    }
}

fn q_coeffs(s: &sigma_rigidity::jet::QSeries) -> Value {
    Value::Array(s.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

fn rep_analyze(f: &str, cfg: &RunConfig) -> Result<(Value, bool), Failure> {
    let rep: VirtualRep = f.parse()?;
    let th = make_theta(ThetaKind::Sigma, cfg.tau, cfg.q_terms)?;
    let lat = th.curve_lattice().clone();
    let per = rep.check_double_periodicity(th.as_ref(), &samples(cfg), Execution::Parallel);
    let parity = rep.check_parity(th.as_ref(), &samples(cfg));
    let trivial = rep.is_trivial();
    let divisor_trivial = rep.divisor_trivial(&lat)?;
    // a trivial sheaf has a doubly periodic section, a nontrivial one does not
    let periodic = per.evaluated > 0 && per.max_residual < cfg.tol;
    let consistent = trivial == divisor_trivial && periodic == trivial && parity.sign == parity.expected;
    let out = json!({
        "f": rep.to_string(),
        "degree": rep.degree(),
        "p1": rep.p1_equivariant(),
        "w2": rep.w2_equivariant(),
        "trivial": trivial,
        "divisor_trivial": divisor_trivial,
        "periodicity_residual": num(per.max_residual),
        "parity": parity.name(),
        "parity_residual": num(parity.residual),
        "pass": consistent,
    });
    Ok((out, consistent))
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&join(prefix, k), x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&join(prefix, &i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push(format!("{prefix}: {s}")),
        other => out.push(format!("{prefix}: {other}")),
    }
}

fn join(prefix: &str, k: &str) -> String {
    if prefix.is_empty() {
        k.to_string()
    } else {
        format!("{prefix}.{k}")
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run_config(&cli.common).and_then(|cfg| run(&cfg, cli.command).map(|r| (r, cfg.format))) {
        Ok(((report, pass), format)) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
                Format::Text => {
                    let mut lines = Vec::new();
                    flatten("", &report, &mut lines);
                    println!("{}", lines.join("\n"));
                }
            }
            ExitCode::from(if pass { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            if f.code == 2 {
                eprintln!("run with --help for usage");
            }
            ExitCode::from(f.code)
        }
    }
}
