use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use symfix_core::kernel::format_rational;
use symfix_core::multiset_lemma::{classify, enumerate_satisfying};
use symfix_core::report::parse_constraint_list;
use symfix_core::search::{
    brute_oracle, budget_from_env, enumerate, generate_example, theorem_probe, ExampleRecipe, ProbeBounds,
    ProbeName, ProbeVerdict, SearchError, SearchSpec,
};
use symfix_core::{run_selected, ChernExpr, ConstraintId, FixedPointData};

const EXIT_FEASIBLE: u8 = 0;
const EXIT_INFEASIBLE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Checks fixed-point data of circle actions against localization
/// constraints and searches small data sets exhaustively.
#[derive(Parser)]
#[command(name = "symfix", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the constraint suite on a data document.
    Check {
        /// Path, `-` for stdin, or inline JSON.
        input: String,
        /// Comma list of constraint ids, e.g. C-AK,C-BAL. Defaults to all.
        #[arg(long)]
        constraints: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Integrate a Chern-class expression such as `c1^2*c3` or `c2 - 1/2*c1^2`.
    Integrate {
        input: String,
        #[arg(long)]
        class: String,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate feasible data sets; one JSON document per line, then a summary.
    Enumerate {
        #[arg(long)]
        points: usize,
        /// Manifold dimension 2n.
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        max_weight: i64,
        #[command(flatten)]
        search: SearchFlags,
        #[arg(long)]
        constraints: Option<String>,
        /// Use the unpruned ordered-tuple search instead.
        #[arg(long)]
        oracle: bool,
    },
    /// List multisets satisfying the four multiset hypotheses.
    LemmaMulti {
        #[arg(long)]
        max_n: i64,
        #[arg(long)]
        max_size: usize,
    },
    /// Emit the data of a known action.
    Example {
        /// sphere, cpn or product.
        #[arg(long)]
        family: String,
        /// e.g. `1`, `0,1,2`, or `sphere:1;sphere:2`.
        #[arg(long)]
        params: String,
    },
    /// Check a structural statement over a bounded search.
    Probe {
        /// no-one-point, two-point-classification, odd-count-parity,
        /// somewhere-injective-bound or three-point-explore.
        name: String,
        #[arg(long, default_value_t = 3)]
        max_points: usize,
        /// Largest manifold dimension 2n.
        #[arg(long)]
        max_dim: usize,
        #[arg(long)]
        max_weight: i64,
        #[command(flatten)]
        search: SearchFlags,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct SearchFlags {
    /// Raw candidate budget; defaults to SYMFIX_BUDGET or 1e8.
    #[arg(long)]
    budget: Option<u128>,
    #[arg(long)]
    jobs: Option<usize>,
    /// Keep data whose weights share a common factor.
    #[arg(long)]
    include_ineffective: bool,
}

impl SearchFlags {
    fn budget(&self) -> u128 {
        self.budget.unwrap_or_else(budget_from_env)
    }
}

enum Failure {
    Input(String),
    Budget(String),
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            SearchError::InvalidSpec(_) => Failure::Input(e.to_string()),
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn read_input(input: &str) -> Result<FixedPointData, Failure> {
    let text = if input.trim_start().starts_with('{') {
        input.to_string()
    } else if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| input_err(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(input).map_err(|e| input_err(format!("{input}: {e}")))?
    };
    FixedPointData::from_json(&text).map_err(input_err)
}

fn half_dim_of(dim: usize) -> Result<usize, Failure> {
    if dim == 0 || dim % 2 == 1 {
        return Err(Failure::Input(format!("dimension must be a positive even number, got {dim}")));
    }
    Ok(dim / 2)
}

fn constraint_ids(list: Option<&str>) -> Result<Vec<ConstraintId>, Failure> {
    match list {
        None => Ok(ConstraintId::ALL.to_vec()),
        Some(s) => {
            let ids = parse_constraint_list(s).map_err(input_err)?;
            if ids.is_empty() {
                return Err(Failure::Input("--constraints is empty".into()));
            }
            Ok(ids)
        }
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<u8, Failure> {
    let w = |out: &mut dyn Write, s: &str| writeln!(out, "{s}").map_err(|e| input_err(format!("stdout: {e}")));
    match cli.command {
        Command::Check { input, constraints, json } => {
            let ids = constraint_ids(constraints.as_deref())?;
            let data = read_input(&input)?;
            let report = run_selected(&data, &ids);
            w(out, (if json { report.to_json() } else { report.to_table() }).trim_end())?;
            Ok(if report.feasible { EXIT_FEASIBLE } else { EXIT_INFEASIBLE })
        }
        Command::Integrate { input, class, json } => {
            let expr = ChernExpr::parse(&class).map_err(input_err)?;
            let data = read_input(&input)?;
            let value = expr.integrate(&data).map_err(input_err)?;
            if json {
                let terms: serde_json::Map<String, serde_json::Value> =
                    value.terms().map(|(p, c)| (p.to_string(), json!(format_rational(c)))).collect();
                let doc = json!({"class": class, "value": value.to_string(), "terms": terms});
                w(out, &doc.to_string())?;
            } else {
                w(out, &value.to_string())?;
            }
            Ok(EXIT_FEASIBLE)
        }
        Command::Enumerate { points, dim, max_weight, search, constraints, oracle } => {
            let spec = SearchSpec::new(points, half_dim_of(dim)?, max_weight)
                .effective_only(!search.include_ineffective)
                .with_constraints(constraint_ids(constraints.as_deref())?)
                .with_budget(search.budget())
                .with_jobs(search.jobs);
            let spec = if oracle { SearchSpec { oracle_budget: spec.budget, ..spec } } else { spec };
            let result = if oracle { brute_oracle(&spec)? } else { enumerate(&spec)? };
            for d in &result.configurations {
                w(out, &d.to_json())?;
            }
            w(out, &result.summary_json())?;
            Ok(EXIT_FEASIBLE)
        }
        Command::LemmaMulti { max_n, max_size } => {
            let mut status = EXIT_FEASIBLE;
            for m in enumerate_satisfying(max_n, max_size) {
                match classify(&m) {
                    Some(p) => w(out, &format!("{m} (a,b) = ({},{})", p.a, p.b))?,
                    None => {
                        status = EXIT_INFEASIBLE;
                        w(out, &format!("{m} unclassified"))?
                    }
                }
            }
            Ok(status)
        }
        Command::Example { family, params } => {
            let recipe = ExampleRecipe::from_family(&family, &params).map_err(input_err)?;
            let data = generate_example(&recipe).map_err(input_err)?;
            w(out, &data.to_json())?;
            Ok(EXIT_FEASIBLE)
        }
        Command::Probe { name, max_points, max_dim, max_weight, search, json } => {
            let name: ProbeName = name.parse().map_err(Failure::Input)?;
            let bounds = ProbeBounds {
                effective_only: !search.include_ineffective,
                budget: search.budget(),
                ..ProbeBounds::new(max_points, half_dim_of(max_dim)?, max_weight)
            };
            let report = theorem_probe(name, &bounds)?;
            if json {
                w(out, &serde_json::to_string_pretty(&report).expect("report serializes"))?;
            } else {
                for r in &report.runs {
                    w(
                        out,
                        &format!(
                            "k={} n={} W={}: {} feasible, {} counterexamples",
                            r.points,
                            r.half_dim,
                            r.max_weight,
                            r.feasible,
                            r.counterexamples.len()
                        ),
                    )?;
                    for d in r.counterexamples.iter().chain(&r.listed) {
                        w(out, &format!("  {d}"))?;
                    }
                }
                let verdict = match report.verdict {
                    ProbeVerdict::Pass => "pass",
                    ProbeVerdict::Fail => "fail",
                    ProbeVerdict::Exploration => "exploration (nothing asserted)",
                };
                w(out, &format!("{name}: {verdict}"))?;
            }
            Ok(if report.verdict == ProbeVerdict::Fail { EXIT_INFEASIBLE } else { EXIT_FEASIBLE })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_BUDGET)
        }
    }
}
