use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use nsolenoid::arith::parse_rational;
use nsolenoid::classify::{bundle_data, conjugacy_flag, isomorphic};
use nsolenoid::encoding::*;
use nsolenoid::ktheory::{
    cohomologous, k0_stage_map, k_member, phi_k0_matrix, q_add, r_k, trace_lift_q, upsilon_matrix,
    weakly_equivalent,
};
use nsolenoid::multiplier::{classify_type, is_simple, psi, symmetrizer, theta, Pair};
use nsolenoid::{Error, IsoVerdict, QGroupElement, WeakVerdict, XiElement};
use nsolenoid_oracle::{cocycle_fuzz, colimit_compare, compare_symmetrizer, selftest, FuzzKind, OracleConfig};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "nsolenoid", version, about = "Invariants of noncommutative solenoids")]
struct Cli {
    /// Search bound for shifts and orbits.
    #[arg(long, global = true, default_value_t = 32)]
    bound: usize,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Numerator window of the brute symmetrizer search.
    #[arg(long, global = true)]
    window_p: Option<i64>,
    /// Exponent window of the brute symmetrizer search.
    #[arg(long, global = true)]
    window_k: Option<u32>,
    /// Colimit depth.
    #[arg(long, global = true)]
    depth: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Modulus, base, carrier, first values and type of an element.
    Info { file: PathBuf },
    /// Whether the twisted algebra is simple.
    Simple { file: PathBuf },
    Symmetrizer {
        file: PathBuf,
        /// Also compare against the brute window search.
        #[arg(long)]
        brute: bool,
    },
    /// Ψ_α(g, h) for points written "x,y".
    Psi {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// Θ_α(g, h) for points written "x,y".
    Theta {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    K0 {
        #[command(subcommand)]
        op: K0Op,
    },
    /// Whether the extension cocycles of two carriers are cohomologous.
    Cohomologous { first: PathBuf, second: PathBuf },
    /// Weak equivalence of two carriers (prime N).
    Weak { first: PathBuf, second: PathBuf },
    /// The isomorphism decision.
    Iso { first: PathBuf, second: PathBuf },
    /// Whether the two dual actions can be conjugate.
    Conjugacy { first: PathBuf, second: PathBuf },
    /// Bundle data of a periodic element.
    Bundle { file: PathBuf },
    /// Compares a finite-stage colimit with K_α.
    Colimit {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        window: i64,
    },
    /// Seeded fuzzing of one cocycle identity.
    Fuzz {
        file: PathBuf,
        /// xi, zeta or psi_bichar.
        #[arg(long)]
        kind: FuzzKind,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Runs every oracle.
    Selftest {
        #[arg(long)]
        trials: Option<usize>,
    },
}

#[derive(Subcommand)]
enum K0Op {
    /// Trace of (z, x) in 𝒬_α.
    Trace {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Whether (first, x) lies in 𝒦_α.
    Member {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        first: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// (z1, x1) ⊞ (z2, x2).
    Add {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        z1: String,
        #[arg(long, allow_hyphen_values = true)]
        x1: String,
        #[arg(long, allow_hyphen_values = true)]
        z2: String,
        #[arg(long, allow_hyphen_values = true)]
        x2: String,
    },
    /// Connecting map and embedding at stage k.
    Stage {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

enum Status {
    Ok,
    Unknown,
    Failed,
}

fn load(path: &Path) -> Result<XiElement, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    element_from_str(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn point(s: &str, n: u64) -> Result<Pair, Error> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected a point \"x,y\", got {s:?}")))?;
    Ok((qn_from_str(a, n)?, qn_from_str(b, n)?))
}

fn integer(s: &str) -> Result<num_bigint::BigInt, Error> {
    let r = parse_rational(s)?;
    if !r.is_integer() {
        return Err(Error::Parse(format!("expected an integer, got {s}")));
    }
    Ok(r.to_integer())
}

fn or_undecidable<T>(r: Result<T, Error>, f: impl FnOnce(T) -> Value) -> Result<Value, Error> {
    match r {
        Ok(v) => Ok(f(v)),
        Err(Error::Undecidable) => Ok(json!("undecidable")),
        Err(e) => Err(e),
    }
}

fn info(a: &XiElement) -> Result<Value, Error> {
    let known = a.carrier().prefix_len().map_or(8, |l| l.min(8));
    let values: Vec<Value> = (0..known)
        .map(|n| a.value(n).map(|v| rational_to_json(&v)))
        .collect::<Result<_, _>>()?;
    let mut out = element_to_json(a);
    out["values"] = Value::Array(values);
    out["type"] = or_undecidable(classify_type(a), class_to_json)?;
    out["period"] = or_undecidable(a.period(), |p| json!(p))?;
    out["simple"] = or_undecidable(is_simple(a), |s| json!(s))?;
    out["symmetrizer"] = or_undecidable(symmetrizer(a), |s| symmetrizer_to_json(&s))?;
    Ok(out)
}

fn config(cli: &Cli) -> OracleConfig {
    let d = OracleConfig::default();
    OracleConfig {
        window_p: cli.window_p.unwrap_or(d.window_p),
        window_k: cli.window_k.unwrap_or(d.window_k),
        depth: cli.depth.unwrap_or(d.depth),
        seed: cli.seed.unwrap_or(d.seed),
        ..d
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn run(cli: &Cli) -> Result<(Value, Status), Error> {
    let bound = cli.bound;
    let ok = |v: Value| Ok((v, Status::Ok));
    match &cli.cmd {
        Cmd::Info { file } => ok(info(&load(file)?)?),
        Cmd::Simple { file } => ok(json!({ "simple": is_simple(&load(file)?)? })),
        Cmd::Symmetrizer { file, brute } => {
            let a = load(file)?;
            let mut out = symmetrizer_to_json(&symmetrizer(&a)?);
            if *brute {
                let cfg = config(cli);
                let cmp = compare_symmetrizer(&a, cfg.window_p, cfg.window_k)?;
                out["brute"] = to_json(&cmp);
                if !cmp.agrees {
                    return Ok((out, Status::Failed));
                }
            }
            ok(out)
        }
        Cmd::Psi { file, g, h } => {
            let a = load(file)?;
            let n = a.modulus();
            ok(angle_to_json(&psi(&a, &point(g, n)?, &point(h, n)?)?))
        }
        Cmd::Theta { file, g, h } => {
            let a = load(file)?;
            let n = a.modulus();
            ok(angle_to_json(&theta(&a, &point(g, n)?, &point(h, n)?)?))
        }
        Cmd::K0 { op } => match op {
            K0Op::Trace { file, z, x } => {
                let a = Arc::new(load(file)?);
                let e = QGroupElement::new(&a, integer(z)?, qn_from_str(x, a.modulus())?)?;
                ok(rational_to_json(&trace_lift_q(&a, &e)?))
            }
            K0Op::Member { file, first, x } => {
                let a = load(file)?;
                ok(json!({ "member": k_member(&a, &parse_rational(first)?, &qn_from_str(x, a.modulus())?)? }))
            }
            K0Op::Add { file, z1, x1, z2, x2 } => {
                let a = Arc::new(load(file)?);
                let n = a.modulus();
                let p = QGroupElement::new(&a, integer(z1)?, qn_from_str(x1, n)?)?;
                let q = QGroupElement::new(&a, integer(z2)?, qn_from_str(x2, n)?)?;
                let s = q_add(&a, &p, &q)?;
                let mut out = q_element_to_json(&s);
                out["trace"] = rational_to_json(&trace_lift_q(&a, &s)?);
                ok(out)
            }
            K0Op::Stage { file, k } => {
                let a = load(file)?;
                ok(json!({
                    "k": k,
                    "r_k": r_k(&a, *k)?.to_string(),
                    "phi": int_matrix_to_json(&phi_k0_matrix(&a, *k)?),
                    "stage_map": int_matrix_to_json(&k0_stage_map(&a, *k)?),
                    "upsilon": rat_matrix_to_json(&upsilon_matrix(&a, *k)?),
                }))
            }
        },
        Cmd::Cohomologous { first, second } => {
            let (a, b) = (load(first)?, load(second)?);
            let w = cohomologous(a.carrier(), b.carrier())?;
            ok(json!({ "cohomologous": w.is_some(), "witness": w.map(|w| w.to_string()) }))
        }
        Cmd::Weak { first, second } => {
            let (a, b) = (load(first)?, load(second)?);
            let v = weakly_equivalent(a.carrier(), b.carrier(), bound)?;
            let status = if matches!(v, WeakVerdict::Unknown { .. }) { Status::Unknown } else { Status::Ok };
            Ok((weak_to_json(&v), status))
        }
        Cmd::Iso { first, second } => {
            let v = isomorphic(&load(first)?, &load(second)?, bound)?;
            let status = if matches!(v, IsoVerdict::Unknown { .. }) { Status::Unknown } else { Status::Ok };
            Ok((verdict_to_json(&v), status))
        }
        Cmd::Conjugacy { first, second } => ok(conjugacy_to_json(&conjugacy_flag(&load(first)?, &load(second)?, bound)?)),
        Cmd::Bundle { file } => ok(bundle_to_json(&bundle_data(&load(file)?)?)),
        Cmd::Colimit { file, window } => {
            let cfg = config(cli);
            let rep = colimit_compare(&load(file)?, cfg.depth, *window, cfg.max_depth)?;
            let status = if rep.holds { Status::Ok } else { Status::Failed };
            Ok((to_json(&rep), status))
        }
        Cmd::Fuzz { file, kind, trials } => {
            let cfg = config(cli);
            let rep = cocycle_fuzz(*kind, &load(file)?, *trials, cfg.seed)?;
            let status = if rep.passed { Status::Ok } else { Status::Failed };
            Ok((to_json(&rep), status))
        }
        Cmd::Selftest { trials } => {
            let mut cfg = config(cli);
            if let Some(t) = trials {
                cfg.trials = *t;
            }
            let rep = selftest(&cfg)?;
            let status = if rep.passed { Status::Ok } else { Status::Failed };
            Ok((to_json(&rep), status))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((v, status)) => {
            println!("{v}");
            match status {
                Status::Ok => ExitCode::SUCCESS,
                Status::Unknown => ExitCode::from(3),
                Status::Failed => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
