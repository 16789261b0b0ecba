//! `ifourier`: tables, verification suites and demos from the
//! integral-fourier library. JSON on stdout by default; progress on stderr.
//!
//! Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage
//! or input error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use integral_fourier::charcalc::{ch_component, chern_char_component, f_ct, f_td, f_td_inv, todd_component};
use integral_fourier::fourier::{
    beauville_projectors, eigen_grading_check, fourier_model_check, nilpotency_check, oracle_check,
    projector_check, projector_ring, projector_table, scaled_fourier_check, MAX_G, ORACLE_MAX_G,
};
use integral_fourier::identities::{
    pappas_shape_check, pappas_shape_sweep, verify_identities, verify_key_collapse, IdentityReport,
};
use integral_fourier::lambda::big_t;
use integral_fourier::sl2::{
    decompose, flek_coefficient, torsion_injectivity_demo, verify_decomposition, verify_flek, Sl2Module,
    Sl2ModuleJson,
};
use integral_fourier::suite::{run_suite, SuiteConfig};
use integral_fourier::{Error, Execution};

/// Default output directory when `--output` is not given.
const OUTPUT_DIR_ENV: &str = "IFOURIER_OUTPUT_DIR";

#[derive(Parser)]
#[command(name = "ifourier", version, about = "Integral Fourier duality: tables, checks and demos")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the result here instead of stdout (default: $IFOURIER_OUTPUT_DIR/<command>.<ext> if set).
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Evaluate independent checks sequentially.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Table of T_m = ∏_p p^⌊m/(p−1)⌋.
    Tm {
        #[arg(long, default_value_t = 10)]
        max: u64,
    },
    /// Todd polynomial Td_m (or fTd_m = T_m·Td_m with --integral).
    Todd {
        #[arg(long)]
        degree: u32,
        /// Bundle rank (default: the degree, so no Chern class vanishes).
        #[arg(long)]
        rank: Option<u32>,
        #[arg(long)]
        integral: bool,
    },
    /// fs_m = m!·ch_m in r and c′_i, with ch_m.
    ChernChar {
        #[arg(long)]
        degree: u32,
    },
    /// fTd^inv_n for a bundle of the given rank.
    FtdInv {
        #[arg(long)]
        rank: u32,
        #[arg(long)]
        degree: u32,
    },
    /// fCT_m.
    Fct {
        #[arg(long)]
        degree: u32,
    },
    /// Symbolic identity checks.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Beauville projector coefficients a_{i,n} and their checks.
    Projectors {
        #[arg(long)]
        g: u32,
        #[arg(long, default_value_t = 0)]
        d: u32,
    },
    /// Fourier relations on the tautological model (ν = 1).
    FourierCheck {
        #[arg(long)]
        g: u32,
    },
    /// Cross-checks against the cohomology oracle.
    OracleCheck {
        #[arg(long)]
        g: u32,
    },
    /// Integral sl2-modules.
    Sl2 {
        #[command(subcommand)]
        what: Sl2Command,
    },
    /// Demonstrations.
    Demo {
        #[command(subcommand)]
        what: DemoCommand,
    },
    /// Everything, at desk-scale parameters.
    Suite {
        /// Random sl2 modules per g.
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// The four Todd/Chern-character identities for one rank.
    Identities {
        #[arg(long, default_value_t = 2)]
        rank: u32,
        #[arg(long, default_value_t = 6)]
        max_deg: u32,
    },
    /// The combinatorial collapse to T_{2g}·[μ = 0].
    KeyCollapse {
        /// Single g (default: 1, 2 and 3).
        #[arg(long)]
        g: Option<u32>,
        #[arg(long, default_value_t = 3)]
        mu_max: u32,
    },
    /// Integrality of the Pappas-type constants.
    PappasShape {
        #[arg(long)]
        g: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        /// Sweep bound on g + n when g, n are not given.
        #[arg(long, default_value_t = 12)]
        bound: u32,
    },
}

#[derive(Subcommand)]
enum Sl2Command {
    /// Isotypic decomposition of a module given as JSON.
    Decompose {
        #[arg(long)]
        input: PathBuf,
    },
    /// flek coefficient(s), or the flek checks on a module with --input.
    Flek {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum DemoCommand {
    /// Injectivity of e^{i−1} on (ℤ/p^k)^{2g} at the lowest weight.
    Torsion {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
}

/// Result of a command: JSON value, text rendering, and whether every
/// check passed.
struct Outcome {
    value: Value,
    text: String,
    ok: bool,
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvariantFailure(_) => Failure::Math(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serialisable")
}

fn reports(rs: Vec<IdentityReport>) -> Outcome {
    let ok = rs.iter().all(IdentityReport::passed);
    let mut text = String::new();
    for r in &rs {
        let params: Vec<String> = r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = write!(text, "{:<28} {:<28} {}", r.name, params.join(" "), if r.passed() { "pass" } else { "FAIL" });
        if !r.passed() {
            let _ = write!(text, "  residual: {}", r.residual);
        }
        for (k, v) in &r.notes {
            let _ = write!(text, "  {k}={v}");
        }
        text.push('\n');
    }
    Outcome { value: to_value(&rs), text, ok }
}

fn check_model_g(g: u32) -> Result<(), Failure> {
    if g == 0 || g > MAX_G {
        return Err(usage(format!("g must be in 1..={MAX_G}")));
    }
    Ok(())
}

fn check_oracle_g(g: u32) -> Result<(), Failure> {
    if g == 0 || g > ORACLE_MAX_G {
        return Err(usage(format!("g must be in 1..={ORACLE_MAX_G} for oracle commands")));
    }
    Ok(())
}

fn read_module(path: &PathBuf) -> Result<Sl2Module, Failure> {
    let s = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let j: Sl2ModuleJson = serde_json::from_str(&s).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(Sl2Module::from_json(&j)?)
}

fn polynomial(label: &str, p: &integral_fourier::charcalc::GradedPolynomial, extra: Value) -> Outcome {
    let mut value = json!({ "label": label, "polynomial": p, "integral": p.is_integral() });
    if let (Value::Object(m), Value::Object(e)) = (&mut value, extra) {
        m.extend(e);
    }
    Outcome { value, text: format!("{label} = {p}\n"), ok: true }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    Ok(match &cli.command {
        Command::Tm { max } => {
            if *max > 200 {
                return Err(usage("--max is limited to 200"));
            }
            let rows: Vec<Value> = (0..=*max).map(|m| json!({ "m": m, "T": big_t(m).to_string() })).collect();
            let text = (0..=*max).map(|m| format!("{m:>4}  {}\n", big_t(m))).collect();
            Outcome { value: json!({ "table": rows }), text, ok: true }
        }
        Command::Todd { degree, rank, integral } => {
            let r = rank.unwrap_or((*degree).max(1));
            if *integral {
                polynomial(&format!("fTd_{degree}"), &f_td(*degree, r)?, json!({ "rank": r, "T": big_t(*degree as u64).to_string() }))
            } else {
                polynomial(&format!("Td_{degree}"), &todd_component(*degree, r)?, json!({ "rank": r }))
            }
        }
        Command::ChernChar { degree } => {
            let fs = chern_char_component(*degree)?;
            let ch = ch_component(*degree)?;
            Outcome {
                value: json!({ "degree": degree, "fs": fs, "ch": ch }),
                text: format!("fs_{degree} = {fs}\nch_{degree} = {ch}\n"),
                ok: true,
            }
        }
        Command::FtdInv { rank, degree } => {
            polynomial(&format!("fTdInv_{degree}"), &f_td_inv(*rank, *degree)?, json!({ "rank": rank }))
        }
        Command::Fct { degree } => polynomial(&format!("fCT_{degree}"), &f_ct(*degree)?, json!({})),
        Command::Verify { what } => match what {
            Verify::Identities { rank, max_deg } => {
                if *rank == 0 || *rank > 4 || *max_deg > 8 {
                    return Err(usage("need 1 ≤ rank ≤ 4 and max-deg ≤ 8"));
                }
                reports(verify_identities(*rank, *max_deg, exec)?)
            }
            Verify::KeyCollapse { g, mu_max } => {
                let gs: Vec<u32> = g.map_or_else(|| vec![1, 2, 3], |g| vec![g]);
                reports(gs.iter().map(|&g| verify_key_collapse(g, *mu_max)).collect::<Result<_, _>>()?)
            }
            Verify::PappasShape { g, n, bound } => match (g, n) {
                (Some(g), Some(n)) => reports(vec![pappas_shape_check(*g, *n)?]),
                (None, None) => reports(pappas_shape_sweep(*bound, exec)?),
                _ => return Err(usage("give both --g and --n, or neither")),
            },
        },
        Command::Projectors { g, d } => {
            check_model_g(*g)?;
            if *d > 4 {
                return Err(usage("--d is limited to 4"));
            }
            let ring = projector_ring(*g, *d, 1)?;
            let p = beauville_projectors(*g, *d, (2 * g + d + 1) as usize, &ring)?;
            let table = projector_table(&p);
            let report = projector_check(*g, *d)?;
            let mut text = String::new();
            for e in &table {
                let _ = writeln!(text, "a[{},{:>2}] = {}", e.i, e.n, e.a);
            }
            let summary = reports(vec![report.clone()]);
            text.push_str(&summary.text);
            Outcome {
                value: json!({ "g": g, "d": d, "coefficients": table, "report": report }),
                text,
                ok: summary.ok,
            }
        }
        Command::FourierCheck { g } => {
            check_model_g(*g)?;
            reports(vec![fourier_model_check(*g)?, eigen_grading_check(*g)?])
        }
        Command::OracleCheck { g } => {
            check_oracle_g(*g)?;
            reports(vec![oracle_check(*g)?, scaled_fourier_check(*g)?, nilpotency_check(*g)?])
        }
        Command::Sl2 { what } => match what {
            Sl2Command::Decompose { input } => {
                let v = read_module(input)?;
                let dec = decompose(&v, exec)?;
                let check = verify_decomposition(&v, &dec)?;
                let mut text = String::new();
                for c in dec.components.iter().filter(|c| !c.multiplicity.is_zero()) {
                    let _ = write!(text, "Sym^{} ⊗ (Λ^{}", c.n, c.multiplicity.free_rank);
                    for (p, k, n) in &c.multiplicity.torsion {
                        let _ = write!(text, " ⊕ (ℤ/{p}^{k})^{n}");
                    }
                    text.push_str(")\n");
                }
                let summary = reports(vec![check.clone()]);
                text.push_str(&summary.text);
                let mut value = to_value(&dec.to_json());
                value["report"] = to_value(&check);
                Outcome { value, text, ok: summary.ok }
            }
            Sl2Command::Flek { n, k, l, input } => {
                if let Some(path) = input {
                    let v = read_module(path)?;
                    reports(vec![verify_flek(&v, n.unwrap_or(v.g()))?])
                } else {
                    let n = n.ok_or_else(|| usage("--n is required without --input"))?;
                    if n > 20 {
                        return Err(usage("--n is limited to 20"));
                    }
                    let ks: Vec<u32> = k.map_or_else(|| (0..=n).collect(), |k| vec![k]);
                    let mut rows = Vec::new();
                    let mut text = String::new();
                    for &k in &ks {
                        let ls: Vec<u32> = l.map_or_else(|| (0..=k + 1).collect(), |l| vec![l]);
                        for l in ls {
                            let c = flek_coefficient(n, k, l)?;
                            let _ = writeln!(text, "n={n} k={k} l={l}  {c}");
                            rows.push(json!({ "n": n, "k": k, "l": l, "coefficient": c.to_string() }));
                        }
                    }
                    Outcome { value: json!({ "flek": rows }), text, ok: true }
                }
            }
        },
        Command::Demo { what: DemoCommand::Torsion { g, p, k } } => {
            if *g == 0 || *g > MAX_G || *k > 6 {
                return Err(usage(format!("need 1 ≤ g ≤ {MAX_G} and k ≤ 6")));
            }
            reports(vec![torsion_injectivity_demo(*g, *p, *k)?])
        }
        Command::Suite { count, seed } => {
            let config = SuiteConfig { round_trip_count: *count, seed: *seed };
            let rs = run_suite(config, exec, &mut |line| eprintln!("[suite] {line}"))?;
            let out = reports(rs);
            let failed = out.value.as_array().map_or(0, |a| a.iter().filter(|r| r["status"] != "pass").count());
            Outcome {
                value: json!({ "passed": out.ok, "failed": failed, "reports": out.value }),
                text: out.text,
                ok: out.ok,
            }
        }
    })
}

fn slug(cli: &Cli) -> &'static str {
    match &cli.command {
        Command::Tm { .. } => "tm",
        Command::Todd { .. } => "todd",
        Command::ChernChar { .. } => "chern-char",
        Command::FtdInv { .. } => "ftd-inv",
        Command::Fct { .. } => "fct",
        Command::Verify { what: Verify::Identities { .. } } => "verify-identities",
        Command::Verify { what: Verify::KeyCollapse { .. } } => "verify-key-collapse",
        Command::Verify { what: Verify::PappasShape { .. } } => "verify-pappas-shape",
        Command::Projectors { .. } => "projectors",
        Command::FourierCheck { .. } => "fourier-check",
        Command::OracleCheck { .. } => "oracle-check",
        Command::Sl2 { what: Sl2Command::Decompose { .. } } => "sl2-decompose",
        Command::Sl2 { what: Sl2Command::Flek { .. } } => "sl2-flek",
        Command::Demo { .. } => "demo-torsion",
        Command::Suite { .. } => "suite",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Math(msg)) => {
            eprintln!("check failed: {msg}");
            return ExitCode::from(1);
        }
    };
    let rendered = match cli.format {
        Format::Json => serde_json::to_string_pretty(&outcome.value).expect("serialisable") + "\n",
        Format::Text => outcome.text,
    };
    let ext = if cli.format == Format::Json { "json" } else { "txt" };
    let target = cli
        .output
        .clone()
        .or_else(|| std::env::var_os(OUTPUT_DIR_ENV).map(|d| PathBuf::from(d).join(format!("{}.{ext}", slug(&cli)))));
    match target {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
            eprintln!("wrote {}", path.display());
        }
        None => print!("{rendered}"),
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
