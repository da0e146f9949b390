//! `inqbq`: support checking, countermodel search and finite verification
//! reports for inquisitive first-order logic.
//!
//! Exit codes: 0 supported / no countermodel / all reports pass, 1 not
//! supported / countermodel / some report fails, 2 any error.

mod input;
mod render;

// stdout writes ignore errors so that piping into `head` is not a crash
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout().lock(), $($arg)*);
    }};
}

macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use inqbq::logic::{entails, equivalent, id_entails_via_translation, valid, Countermodel, SearchConfig, Verdict};
use inqbq::models::{
    canonical_full_model, count_models, enumerate_models, model_to_value, quotient_id_model, EnumerationConfig, Pruning,
};
use inqbq::paperlab::{default_suite, SuiteConfig};
use inqbq::semantics::{supports_with, EvalConfig, Strategy, DEFAULT_BUDGET};
use inqbq::syntax::{print_formula, Formula};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "inqbq", version, about = "Model checker for inquisitive first-order logic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a state of a model supports a formula.
    Check(CheckArgs),
    /// Search for a countermodel to an entailment.
    Entail(EntailArgs),
    /// Search for a countermodel to a formula.
    Valid(ValidArgs),
    /// Search for a point where two formulas differ.
    Equiv(EquivArgs),
    /// Run the built-in verification suite.
    PaperVerify(VerifyArgs),
    /// Collapse a state with uniform equality into an id-model.
    Quotient(QuotientArgs),
    /// List or count the models within bounds.
    Enumerate(EnumerateArgs),
    /// Print the canonical full model on n individuals.
    Canonical(CanonicalArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Auto,
    Naive,
    Memo,
    Lattice,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PruningArg {
    None,
    WorldOrder,
    Full,
}

impl From<PruningArg> for Pruning {
    fn from(p: PruningArg) -> Self {
        match p {
            PruningArg::None => Pruning::None,
            PruningArg::WorldOrder => Pruning::WorldOrder,
            PruningArg::Full => Pruning::Full,
        }
    }
}

#[derive(Args, Clone)]
struct EvalArgs {
    /// Evaluation step limit per model.
    #[arg(long, env = "INQBQ_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    strategy: StrategyArg,
    /// Evaluate without caches or shortcuts (same as `--strategy naive`).
    #[arg(long)]
    no_cache: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

impl EvalArgs {
    fn config(&self) -> EvalConfig {
        if self.no_cache {
            return EvalConfig::naive().with_budget(self.budget);
        }
        let strategy = match self.strategy {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Naive => Strategy::Naive,
            StrategyArg::Memo => Strategy::Memo,
            StrategyArg::Lattice => Strategy::Lattice,
        };
        let base = if strategy == Strategy::Naive { EvalConfig::naive() } else { EvalConfig::default() };
        base.with_strategy(strategy).with_budget(self.budget)
    }
}

#[derive(Args, Clone)]
struct SearchArgs {
    #[arg(long, default_value_t = 3)]
    max_worlds: usize,
    #[arg(long, default_value_t = 3)]
    max_domain: usize,
    /// Only consider models whose equality is the identity everywhere.
    #[arg(long)]
    id_only: bool,
    #[arg(long, value_enum, default_value_t = PruningArg::WorldOrder)]
    pruning: PruningArg,
    /// Signature as a JSON file or inline JSON; inferred from the formulas
    /// when absent, in which case unbound bare names are constants.
    #[arg(long)]
    sig: Option<String>,
    /// Check candidates sequentially, in enumeration order.
    #[arg(long)]
    deterministic: bool,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    workers: Option<usize>,
    /// Write the countermodel as a query file that `check` re-evaluates.
    #[arg(long)]
    emit_query: Option<PathBuf>,
    #[command(flatten)]
    eval: EvalArgs,
}

impl SearchArgs {
    fn config(&self) -> Result<SearchConfig> {
        if self.max_worlds == 0 || self.max_domain == 0 {
            bail!("bounds must be at least 1");
        }
        if self.workers == Some(0) {
            bail!("--workers must be at least 1");
        }
        Ok(SearchConfig::new(self.max_worlds, self.max_domain)
            .id_only(self.id_only)
            .pruning(self.pruning.into())
            .eval(self.eval.config())
            .deterministic(self.deterministic)
            .workers(if self.deterministic { Some(1) } else { self.workers }))
    }
}

#[derive(Args)]
struct CheckArgs {
    /// Query file with `model`, `state`, `assignment` and `formula`.
    #[arg(required_unless_present_all = ["model", "formula"], conflicts_with_all = ["model", "formula"])]
    query: Option<PathBuf>,
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long)]
    formula: Option<String>,
    /// `all` or comma-separated world names.
    #[arg(long, default_value = "all")]
    state: String,
    /// Variable values as `x=d`.
    #[arg(long = "assign")]
    assign: Vec<String>,
    #[command(flatten)]
    eval: EvalArgs,
}

#[derive(Args)]
struct EntailArgs {
    premises: Vec<String>,
    #[arg(long, short)]
    conclusion: String,
    /// Decide id-entailment through general search with rigid equality as
    /// an extra premise.
    #[arg(long, requires = "id_only")]
    via_rigid_equality: bool,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct ValidArgs {
    formula: String,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct EquivArgs {
    lhs: String,
    rhs: String,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest canonical model; 4 runs the extended checks.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=4))]
    maxd: u64,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    /// Random sentences in the support/truth report.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// List every instance in JSON output, not only failures.
    #[arg(long)]
    instances: bool,
    #[arg(long)]
    deterministic: bool,
    #[arg(long)]
    workers: Option<usize>,
    #[command(flatten)]
    eval: EvalArgs,
}

#[derive(Args)]
struct QuotientArgs {
    model: PathBuf,
    #[arg(long, default_value = "all")]
    state: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Signature as a JSON file or inline JSON.
    #[arg(long, required_unless_present = "for_formula")]
    sig: Option<String>,
    /// Infer the signature from this formula instead.
    #[arg(long = "for", conflicts_with = "sig")]
    for_formula: Option<String>,
    #[arg(long, default_value_t = 2)]
    max_worlds: usize,
    #[arg(long, default_value_t = 2)]
    max_domain: usize,
    #[arg(long)]
    id_only: bool,
    #[arg(long, value_enum, default_value_t = PruningArg::WorldOrder)]
    pruning: PruningArg,
    /// Only print how many models there are.
    #[arg(long)]
    count: bool,
    /// Stop after this many models.
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct CanonicalArgs {
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn cmd_check(args: &CheckArgs) -> Result<u8> {
    let q = match &args.query {
        Some(path) => input::query_file(path)?,
        None => {
            let model = input::model_file(args.model.as_deref().expect("required by clap"))?;
            let text = args.formula.clone().expect("required by clap");
            let formula = input::formula(&text, model.signature())?;
            let state = input::state_arg(&model, &args.state)?;
            let assignment = input::assignment_args(&model, &args.assign)?;
            if input::has_unassigned(&formula, &assignment) {
                bail!("free variables of `{text}` need values (use --assign x=d)");
            }
            input::Query { model, state, assignment, formula, text }
        }
    };
    let supported = supports_with(&q.model, q.state, &q.assignment, &q.formula, &args.eval.config())?;
    match args.eval.format {
        Format::Json => outln!(
            "{}",
            pretty(&json!({
                "formula": print_formula(&q.formula),
                "state": q.state.worlds().map(|w| q.model.world_names()[w].clone()).collect::<Vec<_>>(),
                "assignment": q.assignment.to_names(&q.model),
                "supported": supported,
            }))
        ),
        Format::Text => {
            let verdict = if supported { "supported" } else { "not supported" };
            outln!("{verdict}: {} at {}", q.text.trim(), render::state(&q.model, q.state));
        }
    }
    Ok(if supported { 0 } else { 1 })
}

/// Prints a verdict, optionally saving a re-checkable query for `formula`.
fn report_verdict(verdict: &Verdict, formula: &Formula, search: &SearchArgs) -> Result<u8> {
    if let (Some(path), Some(cm)) = (&search.emit_query, verdict.countermodel()) {
        std::fs::write(path, pretty(&query_value(cm, formula)) + "\n")
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    match search.eval.format {
        Format::Json => outln!("{}", verdict.to_json()),
        Format::Text => out!("{}", render::verdict(verdict)),
    }
    Ok(if verdict.is_countermodel() { 1 } else { 0 })
}

fn query_value(cm: &Countermodel, formula: &Formula) -> Value {
    json!({
        "model": model_to_value(&cm.model),
        "state": cm.state.worlds().map(|w| cm.model.world_names()[w].clone()).collect::<Vec<_>>(),
        "assignment": cm.assignment.to_names(&cm.model),
        "formula": print_formula(formula),
    })
}

fn cmd_entail(args: &EntailArgs) -> Result<u8> {
    let cfg = args.search.config()?;
    let mut texts: Vec<&str> = args.premises.iter().map(String::as_str).collect();
    texts.push(&args.conclusion);
    let sig = input::signature(args.search.sig.as_deref(), &texts)?;
    let premises = args.premises.iter().map(|p| input::formula(p, &sig)).collect::<Result<Vec<_>>>()?;
    let conclusion = input::formula(&args.conclusion, &sig)?;
    let verdict = if args.via_rigid_equality {
        id_entails_via_translation(&sig, &premises, &conclusion, &cfg)?
    } else {
        entails(&sig, &premises, &conclusion, &cfg)?
    };
    report_verdict(&verdict, &conclusion, &args.search)
}

fn cmd_valid(args: &ValidArgs) -> Result<u8> {
    let cfg = args.search.config()?;
    let sig = input::signature(args.search.sig.as_deref(), &[&args.formula])?;
    let f = input::formula(&args.formula, &sig)?;
    let verdict = valid(&sig, &f, &cfg)?;
    report_verdict(&verdict, &f, &args.search)
}

fn cmd_equiv(args: &EquivArgs) -> Result<u8> {
    let cfg = args.search.config()?;
    let sig = input::signature(args.search.sig.as_deref(), &[&args.lhs, &args.rhs])?;
    let lhs = input::formula(&args.lhs, &sig)?;
    let rhs = input::formula(&args.rhs, &sig)?;
    let verdict = equivalent(&sig, &lhs, &rhs, &cfg)?;
    // the saved query asks about the left-hand side
    report_verdict(&verdict, &lhs, &args.search)
}

fn cmd_paper_verify(args: &VerifyArgs) -> Result<u8> {
    if args.workers == Some(0) {
        bail!("--workers must be at least 1");
    }
    let cfg = SuiteConfig {
        max_domain: args.maxd as usize,
        eval: args.eval.config(),
        seed: args.seed,
        support_truth_samples: args.samples,
        deterministic: args.deterministic,
        workers: if args.deterministic { Some(1) } else { args.workers },
    };
    let reports = default_suite(&cfg)?;
    let all_passed = reports.iter().all(|r| r.all_passed());
    match args.eval.format {
        Format::Json => {
            let list: Vec<Value> = reports.iter().map(|r| r.to_value(args.instances)).collect();
            outln!("{}", pretty(&json!({ "all_passed": all_passed, "reports": list })));
        }
        Format::Text => {
            for r in &reports {
                outln!("{r}");
            }
            let failed = reports.iter().filter(|r| !r.all_passed()).count();
            let checks: usize = reports.iter().map(|r| r.total()).sum();
            outln!("{} reports, {checks} checks, {failed} failing reports", reports.len());
        }
    }
    Ok(if all_passed { 0 } else { 1 })
}

fn cmd_quotient(args: &QuotientArgs) -> Result<u8> {
    let m = input::model_file(&args.model)?;
    let s = input::state_arg(&m, &args.state)?;
    let q = quotient_id_model(&m, s)?;
    let classes: serde_json::Map<String, Value> = m
        .domain_names()
        .iter()
        .enumerate()
        .map(|(d, name)| (name.clone(), Value::from(q.model.domain_names()[q.map_element(d)].clone())))
        .collect();
    match args.format {
        Format::Json => outln!("{}", pretty(&json!({ "model": model_to_value(&q.model), "classes": classes }))),
        Format::Text => {
            for (d, c) in &classes {
                outln!("{d} -> {}", c.as_str().unwrap_or_default());
            }
            out!("{}", render::model(&q.model));
        }
    }
    Ok(0)
}

fn cmd_enumerate(args: &EnumerateArgs) -> Result<u8> {
    let sig = match &args.for_formula {
        Some(text) => input::signature(None, &[text])?,
        None => input::signature(args.sig.as_deref(), &[])?,
    };
    let cfg = EnumerationConfig::new(args.max_worlds, args.max_domain).id_only(args.id_only).pruning(args.pruning.into());
    if args.count {
        outln!("{}", count_models(&sig, &cfg)?);
        return Ok(0);
    }
    let limit = args.limit.unwrap_or(usize::MAX);
    for (i, m) in enumerate_models(&sig, &cfg)?.take(limit).enumerate() {
        match args.format {
            Format::Json => outln!("{}", serde_json::to_string(&model_to_value(&m))?),
            Format::Text => out!("model {i}\n{}\n", render::model(&m)),
        }
    }
    Ok(0)
}

fn cmd_canonical(args: &CanonicalArgs) -> Result<u8> {
    let m = canonical_full_model(args.n)?;
    match args.format {
        Format::Json => outln!("{}", pretty(&model_to_value(&m))),
        Format::Text => out!("{}", render::model(&m)),
    }
    Ok(0)
}

fn is_resource(e: &anyhow::Error) -> bool {
    use inqbq::logic::LogicError;
    use inqbq::models::ModelError;
    use inqbq::semantics::EvalError;
    let lib = if let Some(x) = e.downcast_ref::<inqbq::Error>() {
        x.clone()
    } else if let Some(x) = e.downcast_ref::<LogicError>() {
        x.clone().into()
    } else if let Some(x) = e.downcast_ref::<EvalError>() {
        x.clone().into()
    } else if let Some(x) = e.downcast_ref::<ModelError>() {
        x.clone().into()
    } else {
        return false;
    };
    lib.is_resource()
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Check(a) => cmd_check(a),
        Command::Entail(a) => cmd_entail(a),
        Command::Valid(a) => cmd_valid(a),
        Command::Equiv(a) => cmd_equiv(a),
        Command::PaperVerify(a) => cmd_paper_verify(a),
        Command::Quotient(a) => cmd_quotient(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Canonical(a) => cmd_canonical(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let prefix = if is_resource(&e) { "resource limit" } else { "error" };
            eprintln!("{prefix}: {e:#}");
            ExitCode::from(2)
        }
    }
}
