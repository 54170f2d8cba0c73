use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value as Json};

use radford::classify::{
    common_context, default_grid, equivalence_witness_diag, scan_star_candidates, solve_equivalence_n2,
    EquivalenceResult, Verdict, DEFAULT_SEARCH_HEIGHT,
};
use radford::coalgebra::Hopf;
use radford::expr::{parse_element, parse_scalar};
use radford::json::{
    automorphism_to_json, element_to_json, equivalence_to_json, parse_star_json, report_to_json, scalar_to_json,
    skew_to_json, star_to_json, tensor_to_json,
};
use radford::scalars::{make_context, Context, Scalar};
use radford::solver::{is_grouplike, skew_primitive_space};
use radford::star::{apply_star, make_star_diag, verify_hopf_axioms, verify_star_axioms, PairCoverage, StarStructure};

#[derive(Parser)]
#[command(name = "radford", version, about = "Exact computations in the Radford Hopf algebra H_n")]
struct Cli {
    /// Order of ω.
    #[arg(long)]
    n: usize,
    /// Conductor of the scalar field, a multiple of n and 4. Defaults to lcm(4, n).
    #[arg(long, global = true)]
    m: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print an element in normal form.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Product of two elements.
    Mul {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Coproduct, by multiplicative extension.
    Delta {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Coproduct, by the closed q-binomial formula.
    DeltaClosed {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Counit of an element.
    Counit {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Antipode of an element.
    Antipode {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Apply S this many times.
        #[arg(long, default_value_t = 1)]
        power: usize,
    },
    /// Order of the antipode.
    AntipodeOrder,
    /// Apply a *-structure read from a file.
    StarApply {
        #[arg(long)]
        star: PathBuf,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Check the Hopf or *-structure axioms.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Exact linear solves.
    #[command(subcommand)]
    Solve(SolveCommand),
    /// Whether an element is group-like.
    Grouplike {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Equivalence of *-structures.
    #[command(subcommand)]
    Equiv(EquivCommand),
    /// Search a scalar grid for *-structures.
    Scan {
        /// Comma-separated scalar expressions. Defaults to 0 and the m-th roots of unity.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        grid: Vec<String>,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Check the Hopf algebra axioms.
    Hopf {
        /// Check every basis pair for the binary laws.
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        /// Number of sampled basis pairs.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the *-structure axioms for a structure read from a file.
    /// Verify the *-structure in a JSON file.
    Star { file: PathBuf },
}

#[derive(Subcommand)]
enum SolveCommand {
    /// Basis of {h : Δ(h) = h⊗g^w + 1⊗h}.
    Skew {
        #[arg(long)]
        w: usize,
    },
}

#[derive(Subcommand)]
enum EquivCommand {
    /// Compare x* = αx, y* = βy with x* = x, y* = y.
    Diag {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Compare two n = 2 matrix structures.
    N2 {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

/// Anything that should end with exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

struct Output {
    text: String,
    json: Json,
    success: bool,
}

impl Output {
    fn ok(text: impl Into<String>, json: Json) -> Self {
        Output { text: text.into(), json, success: true }
    }
}

fn read_star(path: &Path, ctx: &Context) -> Result<StarStructure, UsageError> {
    let text = fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    parse_star_json(&text, ctx).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<Output, UsageError> {
    let ctx = make_context(cli.n, cli.m)?;
    let element = |text: &str| parse_element(text, &ctx);
    let hopf = || Hopf::new(&ctx);

    Ok(match &cli.command {
        Command::Normalize { expr } => {
            let e = element(expr)?;
            Output::ok(e.to_string(), element_to_json(&e))
        }
        Command::Mul { a, b } => {
            let e = element(a)?.mul(&element(b)?);
            Output::ok(e.to_string(), element_to_json(&e))
        }
        Command::Delta { expr } => {
            let t = hopf().delta(&element(expr)?);
            Output::ok(t.to_string(), tensor_to_json(&t))
        }
        Command::DeltaClosed { expr } => {
            let t = hopf().delta_closed_element(&element(expr)?);
            Output::ok(t.to_string(), tensor_to_json(&t))
        }
        Command::Counit { expr } => {
            let c = hopf().counit(&element(expr)?);
            Output::ok(c.to_string(), scalar_value_json(&c))
        }
        Command::Antipode { expr, power } => {
            let h = hopf();
            let mut e = element(expr)?;
            for _ in 0..*power {
                e = h.antipode(&e);
            }
            Output::ok(e.to_string(), element_to_json(&e))
        }
        Command::AntipodeOrder => {
            let k = hopf().antipode_order();
            Output::ok(k.to_string(), json!({ "order": k }))
        }
        Command::StarApply { star, expr } => {
            let st = read_star(star, &ctx)?;
            let e = element(expr)?;
            let wide = common_context(&[&ctx, st.context()])
                .ok_or_else(|| UsageError("incompatible conductors".into()))?;
            let out = apply_star(&st.embed(&wide)?, &e.embed(&wide)?);
            Output::ok(out.to_string(), element_to_json(&out))
        }
        Command::Verify(VerifyCommand::Hopf { exhaustive, samples, seed }) => {
            let coverage = match (exhaustive, samples) {
                (true, _) => PairCoverage::Exhaustive,
                (false, Some(count)) => PairCoverage::Sampled { count: *count, seed: *seed },
                (false, None) => PairCoverage::default_for(cli.n),
            };
            let report = verify_hopf_axioms(&hopf(), coverage);
            Output {
                text: report.to_string(),
                json: report_to_json(&report),
                success: report.all_passed(),
            }
        }
        Command::Verify(VerifyCommand::Star { file }) => {
            let report = verify_star_axioms(&read_star(file, &ctx)?);
            Output {
                text: report.to_string(),
                json: report_to_json(&report),
                success: report.all_passed(),
            }
        }
        Command::Solve(SolveCommand::Skew { w }) => {
            if *w >= cli.n {
                return Err(UsageError(format!("--w must be below n = {}", cli.n)));
            }
            let basis = skew_primitive_space(&hopf(), *w);
            let mut text = format!("dimension {}", basis.len());
            for b in &basis {
                text.push_str(&format!("\n{b}"));
            }
            Output::ok(text, skew_to_json(&basis))
        }
        Command::Grouplike { expr } => {
            let answer = is_grouplike(&hopf(), &element(expr)?);
            Output::ok(answer.to_string(), json!({ "grouplike": answer }))
        }
        Command::Equiv(EquivCommand::Diag { alpha, beta }) => {
            let st = make_star_diag(parse_scalar(alpha, &ctx)?, parse_scalar(beta, &ctx)?)?;
            if cli.n == 2 {
                let one = Scalar::one(&ctx);
                let identity = make_star_diag(one.clone(), one)?;
                let result = solve_equivalence_n2(&as_matrix(&st)?, &as_matrix(&identity)?, DEFAULT_SEARCH_HEIGHT)?;
                equivalence_output(&result)
            } else {
                diag_output(&st)
            }
        }
        Command::Equiv(EquivCommand::N2 { a, b }) => {
            let (sa, sb) = (read_star(a, &ctx)?, read_star(b, &ctx)?);
            let wide = common_context(&[&ctx, sa.context(), sb.context()])
                .ok_or_else(|| UsageError("incompatible conductors".into()))?;
            let (sa, sb) = (as_matrix(&sa.embed(&wide)?)?, as_matrix(&sb.embed(&wide)?)?);
            equivalence_output(&solve_equivalence_n2(&sa, &sb, DEFAULT_SEARCH_HEIGHT)?)
        }
        Command::Scan { grid } => {
            let grid = if grid.is_empty() {
                default_grid(&ctx)
            } else {
                grid.iter().map(|t| parse_scalar(t, &ctx)).collect::<Result<_, _>>()?
            };
            let found: Vec<StarStructure> = scan_star_candidates(&ctx, &grid)
                .into_iter()
                .map(|st| st.normalized().unwrap_or(st))
                .collect();
            let mut text = format!("{} structures", found.len());
            for st in &found {
                text.push_str(&format!("\n{}", describe_star(st)));
            }
            Output::ok(
                text,
                json!({ "count": found.len(), "survivors": found.iter().map(star_to_json).collect::<Vec<_>>() }),
            )
        }
    })
}

fn describe_star(st: &StarStructure) -> String {
    match st {
        StarStructure::Diagonal { alpha, beta } => format!("diag({alpha}, {beta})"),
        StarStructure::Matrix2 { a } => format!("[[{}, {}], [{}, {}]]", a[0][0], a[0][1], a[1][0], a[1][1]),
        StarStructure::Raw { g, x, y } => format!("g* = {g}, x* = {x}, y* = {y}"),
    }
}

fn scalar_value_json(c: &Scalar) -> Json {
    json!({
        "context": { "n": c.context().n(), "m": c.context().m() },
        "value": scalar_to_json(c),
    })
}

/// The matrix form of an `n = 2` structure.
fn as_matrix(st: &StarStructure) -> Result<StarStructure, UsageError> {
    match st.normalized() {
        Some(StarStructure::Diagonal { alpha, beta }) => {
            let z = Scalar::zero(alpha.context());
            Ok(radford::star::make_star_matrix([[alpha, z.clone()], [z, beta]])?)
        }
        Some(m @ StarStructure::Matrix2 { .. }) => Ok(m),
        _ => Err(UsageError("expected a diagonal or matrix *-structure".into())),
    }
}

fn equivalence_output(result: &EquivalenceResult) -> Output {
    let mut text = match result.verdict {
        Verdict::Equivalent => "equivalent".to_string(),
        Verdict::NotEquivalent => "not equivalent".to_string(),
        Verdict::UnknownWithinBound => "unknown within bound".to_string(),
    };
    text.push_str(&format!("\nnullspace dimension {}", result.nullspace_dimension));
    if let Some(w) = &result.witness {
        let m = w.matrix();
        text.push_str(&format!("\nwitness [[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1]));
    }
    Output {
        text,
        json: equivalence_to_json(result),
        success: result.verdict == Verdict::Equivalent,
    }
}

fn diag_output(st: &StarStructure) -> Output {
    match equivalence_witness_diag(st) {
        Ok(phi) => {
            let m = phi.matrix();
            Output::ok(
                format!("equivalent\nwitness diag({}, {}) over m = {}", m[0][0], m[1][1], phi.context().m()),
                json!({ "equivalent": true, "witness": automorphism_to_json(&phi) }),
            )
        }
        Err(e) => Output {
            text: format!("unknown within bound: {e}"),
            json: json!({ "equivalent": "unknown-within-bound" }),
            success: false,
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("serializable")
            } else {
                out.text.trim_end().to_string()
            };
            // a closed pipe is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
