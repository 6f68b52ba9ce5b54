//! The `crystald` command line.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::crystal_core::{budget_from_env, generate_component, CrystalElement, CrystalGraph};
use crate::error::CrystalError;
use crate::foundations::DominantWeight;
use crate::kn_model::{kn_highest, validate_kn, KnCheck, KnTableau};
use crate::kn_spinor_iso::psi_lambda;
use crate::lusztig::{convex_order, xi_lambda, LusztigElement};
use crate::oracle::weyl_dim;
use crate::separation::{chi_lambda, separate_traced};
use crate::spinor_model::{highest_element, SpinorTuple};
use crate::verify::{self, SuiteReport};

#[derive(Parser, Debug)]
#[command(name = "crystald", version, about = "Type D crystal models and their embeddings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Rank; checked against λ and the input when both are given.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Highest weight, e.g. "5/2,3/2,3/2,1/2,-1/2" or "1,1,0,0".
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Node budget for component generation; overrides CRYSTALD_BUDGET.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a KN tableau or spinor tuple given by --input.
    Validate {
        /// Also evaluate clause (d-7) as printed.
        #[arg(long)]
        d7: bool,
    },
    /// Map a KN tableau to the spinor model, the Verma crystal or Lusztig data.
    Embed {
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Separate a spinor tuple into body and tail.
    Separate {
        /// Include every slide and the columns after each round.
        #[arg(long)]
        trace: bool,
    },
    /// The component of the highest weight element as a graph.
    Graph {
        #[arg(long, value_enum, default_value_t = Model::Kn)]
        model: Model,
    },
    /// All elements of the component of the highest weight element.
    Enumerate {
        #[arg(long, value_enum, default_value_t = Model::Kn)]
        model: Model,
    },
    /// The convex order on positive roots.
    Roots,
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Random draws for the sampled suites.
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Spinor,
    Verma,
    Lusztig,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    Kn,
    Spinor,
    Verma,
    Lusztig,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Dimension,
    Morphism,
    Knuth,
    Rsk,
    Signatures,
    Separation,
    Sliding,
}

/// A failure with its exit code: 1 for invalid data, 2 for usage and I/O.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, message: msg.into() }
}

impl From<CrystalError> for Failure {
    fn from(e: CrystalError) -> Self {
        let code = if matches!(e, CrystalError::Parse(_)) { 2 } else { 1 };
        Failure { code, message: e.to_string() }
    }
}

/// What a command produced: text to print and the exit code.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

fn ok_json<T: Serialize>(v: &T) -> Outcome {
    Outcome { text: serde_json::to_string_pretty(v).expect("serializable output"), code: 0 }
}

impl Cli {
    fn weight(&self) -> Result<DominantWeight, Failure> {
        let s = self.lambda.as_deref().ok_or_else(|| usage("--lambda is required"))?;
        let lam = DominantWeight::parse(s).map_err(|e| usage(e.to_string()))?;
        self.check_rank(lam.n())?;
        Ok(lam)
    }

    fn check_rank(&self, n: usize) -> Result<(), Failure> {
        match self.n {
            Some(m) if m != n => Err(usage(format!("--n {m} does not match rank {n}"))),
            _ => Ok(()),
        }
    }

    fn read_input(&self) -> Result<Value, Failure> {
        let path = self.input.as_ref().ok_or_else(|| usage("--input is required"))?;
        let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
    }

    fn parse_input<T: serde::de::DeserializeOwned>(&self, v: Value, what: &str) -> Result<T, Failure> {
        serde_json::from_value(v).map_err(|e| usage(format!("input is not a {what}: {e}")))
    }

    fn kn_input(&self) -> Result<KnTableau, Failure> {
        let t: KnTableau = self.parse_input(self.read_input()?, "KN tableau")?;
        self.check_rank(t.n)?;
        if let Some(l) = &self.lambda {
            let lam = DominantWeight::parse(l).map_err(|e| usage(e.to_string()))?;
            if lam != t.lambda {
                return Err(usage(format!("--lambda {lam} does not match the input's {}", t.lambda)));
            }
        }
        Ok(t)
    }

    fn budget(&self) -> usize {
        self.budget.filter(|&b| b > 0).unwrap_or_else(budget_from_env)
    }
}

fn suite_outcome(reports: Vec<SuiteReport>) -> Outcome {
    let passed = reports.iter().all(SuiteReport::passed);
    let mut out = ok_json(&json!({ "passed": passed, "reports": reports }));
    out.code = if passed { 0 } else { 1 };
    out
}

fn run_verify(cli: &Cli, suite: Suite, samples: usize) -> Result<Outcome, Failure> {
    let n = match (&cli.lambda, cli.n) {
        (Some(_), _) => cli.weight()?.n(),
        (None, Some(n)) => n,
        (None, None) => 4,
    };
    if n < 4 {
        return Err(CrystalError::Rank(n).into());
    }
    let weights = match &cli.lambda {
        Some(_) => vec![cli.weight()?],
        None => verify::weights_for(n),
    };
    let comps = || verify::components(&weights, cli.budget());
    let report = match suite {
        Suite::Dimension => verify::dimension_suite(&comps()?),
        Suite::Morphism => verify::morphism_suite(&comps()?),
        Suite::Knuth => verify::knuth_suite(&comps()?, cli.seed, 10_000),
        Suite::Rsk => verify::rsk_suite(n, 8),
        Suite::Signatures => verify::signatures_suite(&comps()?),
        Suite::Separation => verify::separation_suite(&comps()?, cli.seed, samples),
        Suite::Sliding => verify::sliding_suite(&comps()?),
    };
    Ok(suite_outcome(vec![report]))
}

fn run_validate(cli: &Cli, d7: bool) -> Result<Outcome, Failure> {
    let v = cli.read_input()?;
    if v.get("factors").is_some() {
        let t: SpinorTuple = cli.parse_input(v, "spinor tuple")?;
        cli.check_rank(t.n)?;
        let res = t.validate();
        let valid = res.is_ok();
        let mut out = ok_json(&json!({
            "kind": "spinor",
            "valid": valid,
            "violations": res.err().map(|e| vec![e.to_string()]).unwrap_or_default(),
        }));
        out.code = if valid { 0 } else { 1 };
        return Ok(out);
    }
    let t: KnTableau = cli.parse_input(v, "KN tableau")?;
    cli.check_rank(t.n)?;
    let violations = validate_kn(&t, KnCheck { d7 })?;
    let mut out = ok_json(&json!({ "kind": "kn", "valid": violations.is_empty(), "violations": violations }));
    out.code = if violations.is_empty() { 0 } else { 1 };
    Ok(out)
}

fn run_embed(cli: &Cli, to: Target) -> Result<Outcome, Failure> {
    let t = cli.kn_input()?;
    Ok(match to {
        Target::Spinor => ok_json(&psi_lambda(&t)?),
        Target::Verma => ok_json(&chi_lambda(&psi_lambda(&t)?)?),
        Target::Lusztig => ok_json(&xi_lambda(&t)?),
    })
}

fn run_separate(cli: &Cli, trace: bool) -> Result<Outcome, Failure> {
    let t: SpinorTuple = cli.parse_input(cli.read_input()?, "spinor tuple")?;
    cli.check_rank(t.n)?;
    let s = separate_traced(&t)?;
    Ok(if trace { ok_json(&s) } else { ok_json(&s.element) })
}

fn emit<E: CrystalElement>(
    cli: &Cli,
    lam: &DominantWeight,
    g: &CrystalGraph<E>,
    enumerate: bool,
    value: impl Fn(&E) -> Value,
) -> Outcome {
    if !enumerate {
        return match cli.format {
            Format::Dot => Outcome { text: g.to_dot(), code: 0 },
            Format::Json => ok_json(&g.to_json()),
        };
    }
    let nodes: Vec<Value> = g.nodes.iter().map(value).collect();
    ok_json(&json!({
        "lambda": lam.to_string(),
        "count": nodes.len(),
        "weyl_dim": weyl_dim(lam).to_string(),
        "elements": nodes,
    }))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable element")
}

fn run_graph(cli: &Cli, model: Model, enumerate: bool) -> Result<Outcome, Failure> {
    let lam = cli.weight()?;
    let budget = cli.budget();
    Ok(match model {
        Model::Kn => emit(cli, &lam, &generate_component(kn_highest(&lam), budget)?, enumerate, to_value),
        Model::Spinor => emit(cli, &lam, &generate_component(highest_element(&lam), budget)?, enumerate, to_value),
        Model::Verma => {
            let g = generate_component(chi_lambda(&highest_element(&lam))?, budget)?;
            emit(cli, &lam, &g, enumerate, to_value)
        }
        Model::Lusztig => {
            let g = generate_component(LusztigElement::from_kn(&kn_highest(&lam))?, budget)?;
            emit(cli, &lam, &g, enumerate, |x| to_value(&x.datum))
        }
    })
}

fn run_roots(cli: &Cli) -> Result<Outcome, Failure> {
    let n = match (cli.n, &cli.lambda) {
        (Some(n), _) => n,
        (None, Some(_)) => cli.weight()?.n(),
        (None, None) => return Err(usage("--n is required")),
    };
    let order = convex_order(n)?;
    let rows: Vec<Value> = order
        .beta
        .iter()
        .enumerate()
        .map(|(k, r)| json!({ "k": k + 1, "root": r, "vector2": r.weight(n).0, "nilradical": k < order.m() }))
        .collect();
    Ok(ok_json(&json!({ "n": n, "N": order.len(), "M": order.m(), "beta": rows })))
}

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    if let Some(t) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    match &cli.command {
        Command::Validate { d7 } => run_validate(cli, *d7),
        Command::Embed { to } => run_embed(cli, *to),
        Command::Separate { trace } => run_separate(cli, *trace),
        Command::Graph { model } => run_graph(cli, *model, false),
        Command::Enumerate { model } => run_graph(cli, *model, true),
        Command::Roots => run_roots(cli),
        Command::Verify { suite, samples } => run_verify(cli, *suite, *samples),
    }
}

/// Parses `args`, runs the command, writes the result and returns the exit code.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.output {
                Some(p) => fs::write(p, format!("{}\n", out.text)),
                None => writeln!(std::io::stdout(), "{}", out.text),
            };
            if let Err(e) = written {
                if e.kind() == std::io::ErrorKind::BrokenPipe {
                    return out.code;
                }
                eprintln!("crystald: cannot write output: {e}");
                return 2;
            }
            out.code
        }
        Err(f) => {
            eprintln!("crystald: {}", f.message);
            f.code
        }
    }
}
