//! Command line front end: TOML problem files in, deterministic JSON out.
//!
//! Exit codes: 0 on success, 1 for errors and failed verification suites,
//! 2 when a size or operation guard refuses the computation. Errors are
//! reported as a JSON object on standard output.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use tatekit::cohomology::tate_group;
use tatekit::cup::{cup_inh_limited, DEFAULT_OP_LIMIT};
use tatekit::cyclic::{verify_degree_raising, CyclicContext};
use tatekit::gmodule::{GModule, ModElement};
use tatekit::group::FiniteGroup;
use tatekit::io::{cocycle_from_doc, cocycle_to_json, parse_cocycle};
use tatekit::problem::{parse_problem, ProblemSpec, MAX_ORDER};
use tatekit::verify::{run_suite, VerifyOptions};
use tatekit::TateError;

#[derive(Parser)]
#[command(
    name = "tatekit",
    version,
    about = "Tate cohomology of finite groups in exact integer arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant factors and representative cocycles of one Tate group.
    Cohomology {
        /// Problem file (TOML) declaring the group and its modules.
        #[arg(long)]
        problem: PathBuf,
        /// Module name from the problem file.
        #[arg(long)]
        module: String,
        /// Degree, any sign.
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
    },
    /// Cup product of two cocycles, with its class in cohomology.
    Cup {
        /// Problem file declaring the modules both cocycles live over.
        #[arg(long)]
        problem: PathBuf,
        /// Left factor as a cocycle JSON file.
        #[arg(long)]
        left: PathBuf,
        /// Right factor as a cocycle JSON file.
        #[arg(long)]
        right: PathBuf,
    },
    /// Degree-two carry cocycle of a cyclic group and its coefficient
    /// version against an invariant element.
    Fundamental {
        /// Order of the cyclic group.
        #[arg(long)]
        n: usize,
        /// Coefficient module: "Z" or "Z/m".
        #[arg(long, default_value = "Z")]
        coeff: String,
        /// Coordinates of the invariant element, comma separated.
        #[arg(long, default_value = "1", allow_negative_numbers = true)]
        e: String,
    },
    /// Degree-raising cocycles for every degree minus-one class of a
    /// lattice over a cyclic group.
    Torus {
        /// Problem file declaring a cyclic group and the lattice.
        #[arg(long)]
        problem: PathBuf,
        /// Lattice module name from the problem file.
        #[arg(long)]
        module: String,
    },
    /// Self-check suites with a deterministic JSON report.
    Verify {
        /// Suite name or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        /// Largest group order in the batteries.
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        /// Largest absolute degree swept.
        #[arg(long, default_value_t = 3)]
        max_degree: i64,
        /// Seed for the sampled checks.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

enum CliError {
    Tate(TateError),
    Read(PathBuf, std::io::Error),
}

impl From<TateError> for CliError {
    fn from(e: TateError) -> Self {
        CliError::Tate(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Tate(TateError::from(e))
    }
}

fn error_kind(e: &CliError) -> &'static str {
    match e {
        CliError::Read(..) => "io",
        CliError::Tate(t) if t.is_size_guard() => "size-guard",
        CliError::Tate(t) => match t {
            TateError::Toml(_)
            | TateError::Json(_)
            | TateError::Spec { .. }
            | TateError::ValueRange
            | TateError::CoordLength { .. }
            | TateError::ElementRange { .. }
            | TateError::DegreeRange { .. } => "input",
            TateError::Internal { .. } | TateError::PullbackFailed => "internal",
            _ => "validation",
        },
    }
}

fn error_message(e: &CliError) -> String {
    match e {
        CliError::Read(path, err) => format!("cannot read {}: {err}", path.display()),
        CliError::Tate(t) => t.to_string(),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Read(path.to_path_buf(), e))
}

fn load_problem(path: &Path) -> Result<ProblemSpec, CliError> {
    Ok(parse_problem(&read_file(path)?)?)
}

fn invariants_json(inv: &[BigInt]) -> Result<Value, CliError> {
    let v: Vec<i64> = inv
        .iter()
        .map(|x| x.to_i64().ok_or(TateError::ValueRange))
        .collect::<Result<_, _>>()?;
    Ok(json!(v))
}

fn coords_json(coords: &[BigInt]) -> Result<Value, CliError> {
    invariants_json(coords)
}

fn op_limit() -> Result<u128, CliError> {
    match std::env::var("TATEKIT_MAX_OPS") {
        Ok(s) => s.trim().parse::<u128>().map_err(|_| {
            CliError::Tate(TateError::Spec {
                context: format!("TATEKIT_MAX_OPS must be a nonnegative integer, got {s:?}"),
            })
        }),
        Err(_) => Ok(DEFAULT_OP_LIMIT),
    }
}

/// Builds the trivial coefficient module named by "Z" or "Z/m".
fn coeff_module(g: &Arc<FiniteGroup>, spec: &str) -> Result<Arc<GModule>, CliError> {
    if spec == "Z" {
        return Ok(GModule::trivial_z(g));
    }
    if let Some(m) = spec.strip_prefix("Z/") {
        if let Ok(m) = m.parse::<u64>() {
            if m >= 1 {
                return Ok(GModule::trivial_z_mod(g, m));
            }
        }
    }
    Err(CliError::Tate(TateError::Spec {
        context: format!("coefficient module must be \"Z\" or \"Z/m\" with m >= 1, got {spec:?}"),
    }))
}

fn parse_coords(text: &str) -> Result<Vec<i64>, CliError> {
    text.split(',')
        .map(|p| {
            p.trim().parse::<i64>().map_err(|_| {
                CliError::Tate(TateError::Spec {
                    context: format!("coordinate list must be comma-separated integers, got {text:?}"),
                })
            })
        })
        .collect()
}

fn emit(v: &Value) -> Result<(), CliError> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Cohomology {
            problem,
            module,
            degree,
        } => {
            let spec = load_problem(&problem)?;
            let m = spec.module(&module)?;
            let h = tate_group(m, degree)?;
            let mut reps = Vec::new();
            for r in h.representatives() {
                reps.push(cocycle_to_json(r, &module)?);
            }
            emit(&json!({
                "degree": degree,
                "invariant_factors": invariants_json(h.invariant_factors())?,
                "module": module,
                "representatives": reps,
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Cup {
            problem,
            left,
            right,
        } => {
            let spec = load_problem(&problem)?;
            let ldoc = parse_cocycle(&read_file(&left)?)?;
            let rdoc = parse_cocycle(&read_file(&right)?)?;
            let lc = cocycle_from_doc(&ldoc, spec.module(&ldoc.module)?)?;
            let rc = cocycle_from_doc(&rdoc, spec.module(&rdoc.module)?)?;
            if !lc.is_cocycle()? {
                return Err(CliError::Tate(TateError::NotCocycle {
                    context: "left cup factor",
                }));
            }
            if !rc.is_cocycle()? {
                return Err(CliError::Tate(TateError::NotCocycle {
                    context: "right cup factor",
                }));
            }
            let prod = cup_inh_limited(&lc, &rc, op_limit()?)?;
            let h = tate_group(prod.module(), prod.degree())?;
            let prod_name = format!("{}(x){}", ldoc.module, rdoc.module);
            emit(&json!({
                "cocycle": cocycle_to_json(&prod, &prod_name)?,
                "degree": prod.degree(),
                "invariant_factors": invariants_json(h.invariant_factors())?,
                "class_coordinates": coords_json(&h.class_coords(&prod)?)?,
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Fundamental { n, coeff, e } => {
            if n < 2 {
                return Err(CliError::Tate(TateError::Spec {
                    context: format!("cyclic order must be at least 2, got {n}"),
                }));
            }
            if n as u128 > MAX_ORDER {
                return Err(CliError::Tate(TateError::SizeGuard {
                    what: "group order",
                    needed: n as u128,
                    limit: MAX_ORDER,
                }));
            }
            let g = FiniteGroup::cyclic(n)?;
            let bm = coeff_module(&g, &coeff)?;
            let e_coords = parse_coords(&e)?;
            let e_elem = ModElement::from_i64(&bm, &e_coords)?;
            let ctx = CyclicContext::new(&g, &bm, e_elem, None)?;
            let b = ctx.b_cocycle()?;
            let h2 = tate_group(b.module(), 2)?;
            let order = h2
                .class_order(&b)?
                .to_i64()
                .ok_or(TateError::ValueRange)?;
            let model = ctx.fundamental_cocycle_model()?;
            let cup = ctx.fundamental_cocycle_cup()?;
            emit(&json!({
                "n": n,
                "coefficients": bm.name(),
                "e": coords_json(ctx.invariant_element().coords())?,
                "b": cocycle_to_json(&b, b.module().name())?,
                "class_order": order,
                "a": cocycle_to_json(&model, bm.name())?,
                "cup_agrees": model == cup,
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Torus { problem, module } => {
            let spec = load_problem(&problem)?;
            let x = spec.module(&module)?;
            let g = spec.group();
            let z = GModule::trivial_z(g);
            let e = ModElement::from_i64(&z, &[1])?;
            let ctx = CyclicContext::new(g, &z, e, None)?;
            let report = verify_degree_raising(&ctx, x)?;
            let mut cases = Vec::new();
            for case in &report.cases {
                cases.push(json!({
                    "x": coords_json(case.x.coords())?,
                    "z": cocycle_to_json(&case.closed, case.closed.module().name())?,
                    "is_cocycle": case.cocycle_ok,
                    "matches_cup": case.tables_equal,
                }));
            }
            emit(&json!({
                "module": module,
                "invariant_factors": invariants_json(&report.invariant_factors)?,
                "cases": cases,
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            max_order,
            max_degree,
            seed,
        } => {
            let opts = VerifyOptions {
                max_order,
                max_degree,
                seed,
            };
            let report = run_suite(&suite, &opts)?;
            let ok = report["ok"].as_bool().unwrap_or(false);
            emit(&report)?;
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let obj = json!({
                "error": {
                    "kind": error_kind(&e),
                    "message": error_message(&e),
                }
            });
            println!("{}", serde_json::to_string_pretty(&obj).unwrap_or_else(|_| obj.to_string()));
            match &e {
                CliError::Tate(t) if t.is_size_guard() => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
