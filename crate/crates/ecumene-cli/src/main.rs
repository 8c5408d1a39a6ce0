//! Batch front end: prove sequents, check proof scripts, run the
//! translations, and execute the corpus. Exit codes: 0 success/proved,
//! 1 unproved or failed checks, 2 usage and I/O errors.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use ecumene_core::corpus::{default_corpus_dir, run_corpus};
use ecumene_core::labek::{prove_labek, AxiomScheme, Extension, Theory};
use ecumene_core::leci::prove;
use ecumene_core::outcome::{SearchBudget, SearchOutcome};
use ecumene_core::parser::{
    parse_formula, parse_labeled_sequent, parse_modal_formula, parse_sequent,
};
use ecumene_core::render::{render, render_sequent};
use ecumene_core::script::ProofScript;
use ecumene_core::semantics::{find_countermodel, FrameProperty};
use ecumene_core::translate::{ik_translate, proof_translate, seq_translate, std_translate};
use ecumene_core::Var;

#[derive(Parser)]
#[command(name = "ecumene", version, about = "Ecumenical sequent calculi: proving, checking, translating")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Prove a sequent and print the proof script on success.
    Prove(ProveArgs),
    /// Check a proof-script file against its calculus.
    Check(CheckArgs),
    /// Translate formulas, sequents, or whole proofs.
    Translate(TranslateArgs),
    /// Run the corpus and print a pass/fail matrix.
    Corpus(CorpusArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SystemArg {
    Leci,
    Labek,
}

#[derive(Args)]
struct BudgetArgs {
    /// Maximum proof depth.
    #[arg(long, default_value_t = 30)]
    depth: usize,
    /// Maximum number of visited search nodes.
    #[arg(long, default_value_t = 50_000)]
    nodes: usize,
    /// Instantiations allowed per universal formula along a branch.
    #[arg(long, default_value_t = 2)]
    insts: usize,
}

impl BudgetArgs {
    fn budget(&self) -> Result<SearchBudget> {
        let b = SearchBudget {
            max_depth: self.depth,
            max_instantiations_per_universal: self.insts,
            max_nodes: self.nodes,
        };
        if !b.is_valid() {
            bail!("budget limits must be positive");
        }
        Ok(b)
    }
}

#[derive(Args)]
struct ProveArgs {
    /// Calculus to use; inferred from the sequent shape when omitted.
    #[arg(long, value_enum)]
    system: Option<SystemArg>,
    /// Frame-rule extensions (labeled calculus): T, 4, 5, B.
    #[arg(long = "ext")]
    extensions: Vec<String>,
    /// Axiom-scheme files admitted as leaves (name taken from the file stem).
    #[arg(long = "axiom")]
    axioms: Vec<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
    /// On failure, search for a countermodel.
    #[arg(long)]
    countermodel: bool,
    /// World bound for the countermodel search.
    #[arg(long, default_value_t = 4)]
    max_worlds: usize,
    /// The sequent text, e.g. `|- a_i \/c ~a_i` or `x R y |- x: box a_i`.
    sequent: String,
}

#[derive(Args)]
struct CheckArgs {
    /// Admit the cut rule regardless of the script header.
    #[arg(long)]
    allow_cut: bool,
    #[arg(long)]
    json: bool,
    /// Path to a proof-script JSON file.
    script: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TranslateMode {
    /// Modal formula to first-order formula at a world variable.
    Std,
    /// Double-negation image inside the modal fragment.
    Ik,
    /// Labeled sequent to first-order sequent.
    Seq,
    /// Labeled proof script to an unlabeled proof script.
    Proof,
}

#[derive(Args)]
struct TranslateArgs {
    #[arg(long, value_enum)]
    mode: TranslateMode,
    /// World variable for the standard translation.
    #[arg(long, default_value = "x")]
    var: String,
    #[arg(long)]
    json: bool,
    /// Formula text, sequent text, or (for `--mode proof`) a script path.
    input: String,
}

#[derive(Args)]
struct CorpusArgs {
    /// Glob filter over entry ids, e.g. `labek_axiom_k*`.
    #[arg(long)]
    filter: Option<String>,
    /// Corpus directory; defaults to $ECUMENE_CORPUS or ./corpus.
    #[arg(long)]
    dir: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    // Die quietly when a pipeline closes stdout early (`... | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Prove(args) => cmd_prove(args),
        Command::Check(args) => cmd_check(args),
        Command::Translate(args) => cmd_translate(args),
        Command::Corpus(args) => cmd_corpus(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn load_axioms(paths: &[PathBuf]) -> Result<Vec<AxiomScheme>> {
    let mut out = Vec::new();
    for path in paths {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading axiom file {}", path.display()))?;
        let scheme = parse_modal_formula(text.trim())
            .map_err(|e| anyhow!("axiom file {}: {e}", path.display()))?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "axiom".to_string());
        out.push(AxiomScheme::new(name, scheme));
    }
    Ok(out)
}

fn theory_from(extensions: &[String], axioms: Vec<AxiomScheme>) -> Result<Theory> {
    let mut th = Theory::plain();
    for e in extensions {
        let ext = Extension::parse(e).ok_or_else(|| anyhow!("unknown extension `{e}`"))?;
        th.extensions.insert(ext);
    }
    th.axioms = axioms;
    Ok(th)
}

fn frame_props_of(th: &Theory) -> Vec<FrameProperty> {
    th.extensions
        .iter()
        .map(|e| match e {
            Extension::T => FrameProperty::Reflexive,
            Extension::Four => FrameProperty::Transitive,
            Extension::Five => FrameProperty::Euclidean,
            Extension::B => FrameProperty::Symmetric,
        })
        .collect()
}

fn cmd_prove(args: ProveArgs) -> Result<ExitCode> {
    let budget = args.budget.budget()?;
    let system = match args.system {
        Some(s) => s,
        None => {
            if parse_labeled_sequent(&args.sequent).is_ok() {
                SystemArg::Labek
            } else {
                SystemArg::Leci
            }
        }
    };
    match system {
        SystemArg::Leci => {
            if !args.extensions.is_empty() || !args.axioms.is_empty() {
                bail!("extensions and axioms apply to the labeled calculus only");
            }
            let seq = parse_sequent(&args.sequent).map_err(|e| anyhow!("{e}"))?;
            let outcome = prove(&seq, &budget).map_err(|e| anyhow!("{e}"))?;
            finish_prove(
                args.json,
                args.countermodel.then_some(args.max_worlds),
                &[],
                outcome.map_proof(|p| ProofScript::leci(p, false)),
                seq.antecedent.is_empty().then_some(seq.succedent.clone()),
            )
        }
        SystemArg::Labek => {
            let seq = parse_labeled_sequent(&args.sequent).map_err(|e| anyhow!("{e}"))?;
            let th = theory_from(&args.extensions, load_axioms(&args.axioms)?)?;
            let outcome = prove_labek(&seq, &th, &budget).map_err(|e| anyhow!("{e}"))?;
            let props = frame_props_of(&th);
            let closed = (seq.antecedent.is_empty() && seq.rel_atoms.is_empty())
                .then_some(seq.succedent.1.clone());
            finish_prove(
                args.json,
                args.countermodel.then_some(args.max_worlds),
                &props,
                outcome.map_proof(|p| ProofScript::labek(p, th.clone(), false)),
                closed,
            )
        }
    }
}

trait MapProof<P> {
    fn map_proof<Q>(self, f: impl FnOnce(P) -> Q) -> SearchOutcome<Q>;
}

impl<P> MapProof<P> for SearchOutcome<P> {
    fn map_proof<Q>(self, f: impl FnOnce(P) -> Q) -> SearchOutcome<Q> {
        match self {
            SearchOutcome::Proved(p) => SearchOutcome::Proved(f(p)),
            SearchOutcome::Refuted(r) => SearchOutcome::Refuted(r),
            SearchOutcome::Unknown(u) => SearchOutcome::Unknown(u),
        }
    }
}

fn finish_prove(
    json: bool,
    countermodel_worlds: Option<usize>,
    props: &[FrameProperty],
    outcome: SearchOutcome<ProofScript>,
    closed_goal: Option<ecumene_core::Formula>,
) -> Result<ExitCode> {
    match outcome {
        SearchOutcome::Proved(script) => {
            if json {
                println!(
                    "{{\"outcome\":\"proved\",\"proof\":{}}}",
                    script.to_json().trim_end()
                );
            } else {
                println!("proved");
                print!("{}", script.to_json());
            }
            Ok(ExitCode::SUCCESS)
        }
        SearchOutcome::Unknown(report) => {
            let mut refutation = None;
            if let (Some(max_worlds), Some(goal)) = (countermodel_worlds, closed_goal) {
                if goal.is_modal_fragment() {
                    refutation =
                        find_countermodel(&goal, max_worlds, props).map_err(|e| anyhow!("{e}"))?;
                }
            }
            if json {
                let mut obj = serde_json::json!({
                    "outcome": if refutation.is_some() { "refuted" } else { "unknown" },
                    "saturated": report.saturated,
                    "nodes_visited": report.nodes_visited,
                });
                if let Some((model, world)) = &refutation {
                    obj["countermodel"] = serde_json::to_value(model)?;
                    obj["refuting_world"] = serde_json::Value::String(world.clone());
                }
                println!("{obj}");
            } else {
                println!(
                    "unknown (saturated: {}, nodes visited: {})",
                    report.saturated, report.nodes_visited
                );
                if let Some((model, world)) = &refutation {
                    println!("refuted by countermodel at world `{world}`:");
                    println!("{}", serde_json::to_string_pretty(model)?);
                }
            }
            Ok(ExitCode::from(1))
        }
        SearchOutcome::Refuted(r) => {
            if json {
                println!(
                    "{{\"outcome\":\"refuted\",\"world\":{:?}}}",
                    r.world
                );
            } else {
                println!("refuted at world `{}`", r.world);
            }
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_check(args: CheckArgs) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&args.script)
        .with_context(|| format!("reading {}", args.script.display()))?;
    let script = ProofScript::from_json(&text).map_err(|e| anyhow!("{e}"))?;
    match script.check(args.allow_cut) {
        Ok(()) => {
            if args.json {
                println!(
                    "{{\"ok\":true,\"conclusion\":{:?}}}",
                    script.conclusion_text()
                );
            } else {
                println!("ok: {}", script.conclusion_text());
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            if args.json {
                println!("{{\"ok\":false,\"violation\":{:?}}}", e.to_string());
            } else {
                println!("violation: {e}");
            }
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_translate(args: TranslateArgs) -> Result<ExitCode> {
    let output = match args.mode {
        TranslateMode::Std => {
            let f = parse_formula(&args.input).map_err(|e| anyhow!("{e}"))?;
            let t = std_translate(&f, &Var::new(args.var.clone())).map_err(|e| anyhow!("{e}"))?;
            render(&t)
        }
        TranslateMode::Ik => {
            let f = parse_formula(&args.input).map_err(|e| anyhow!("{e}"))?;
            let t = ik_translate(&f).map_err(|e| anyhow!("{e}"))?;
            render(&t)
        }
        TranslateMode::Seq => {
            let s = parse_labeled_sequent(&args.input).map_err(|e| anyhow!("{e}"))?;
            let t = seq_translate(&s).map_err(|e| anyhow!("{e}"))?;
            render_sequent(&t)
        }
        TranslateMode::Proof => {
            let text = std::fs::read_to_string(&args.input)
                .with_context(|| format!("reading {}", args.input))?;
            let script = ProofScript::from_json(&text).map_err(|e| anyhow!("{e}"))?;
            let ProofScript::Labek { proof, .. } = script else {
                bail!("proof translation expects a labeled script");
            };
            let translated = proof_translate(&proof).map_err(|e| anyhow!("{e}"))?;
            let out = ProofScript::leci(translated, false);
            if args.json {
                println!("{}", out.to_json().trim_end());
            } else {
                print!("{}", out.to_json());
            }
            return Ok(ExitCode::SUCCESS);
        }
    };
    if args.json {
        println!("{{\"output\":{output:?}}}");
    } else {
        println!("{output}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_corpus(args: CorpusArgs) -> Result<ExitCode> {
    let dir = args.dir.unwrap_or_else(default_corpus_dir);
    let budget = args.budget.budget()?;
    let results = run_corpus(&dir, args.filter.as_deref(), &budget)
        .map_err(|e| anyhow!("{e}"))?;
    if results.is_empty() {
        bail!("no corpus entries matched");
    }
    let failed: Vec<_> = results.iter().filter(|r| !r.passed).collect();
    if args.json {
        println!("{}", serde_json::to_string_pretty(&results)?);
    } else {
        for r in &results {
            let status = if r.passed { "PASS" } else { "FAIL" };
            println!("{status} {:<44} {:>6} ms  {}", r.id, r.millis, r.detail);
        }
        println!(
            "{} passed, {} failed, {} total",
            results.len() - failed.len(),
            failed.len(),
            results.len()
        );
    }
    if failed.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
