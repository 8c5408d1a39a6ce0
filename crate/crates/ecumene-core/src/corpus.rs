//! The versioned corpus: provable and refutable sequents plus proof-script
//! files, each with an expected outcome, loaded from a directory of JSON
//! data so new entries need no rebuild.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::labek::{check_labek_proof, prove_labek, AxiomScheme, Extension, Theory};
use crate::leci::{check_leci_proof, prove};
use crate::outcome::{SearchBudget, SearchOutcome};
use crate::parser::{parse_labeled_sequent, parse_modal_formula, parse_sequent};
use crate::script::ProofScript;
use crate::semantics::{find_countermodel, FrameProperty};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed corpus index: {0}")]
    Index(String),
    #[error("duplicate entry id `{0}`")]
    DuplicateId(String),
}

/// One corpus entry. `kind` decides which fields apply: theorems and
/// non-theorems carry a sequent, proof scripts a file path.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub id: String,
    pub kind: EntryKind,
    pub system: System,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extensions: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub axioms: Vec<AxiomSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequent: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub script: Option<String>,
    /// Require the saturation flag on an expected Unknown.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub saturated: bool,
    /// Expect a countermodel within this many worlds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub countermodel_max_worlds: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub frame_properties: Vec<String>,
    /// Allow cut when checking a script (in addition to its header).
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub allow_cut: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<BudgetSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryKind {
    Theorem,
    NonTheorem,
    ProofScript,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum System {
    Leci,
    Labek,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxiomSpec {
    pub name: String,
    pub scheme: String,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BudgetSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub insts: Option<usize>,
}

impl BudgetSpec {
    pub fn apply(&self, base: &SearchBudget) -> SearchBudget {
        SearchBudget {
            max_depth: self.depth.unwrap_or(base.max_depth),
            max_nodes: self.nodes.unwrap_or(base.max_nodes),
            max_instantiations_per_universal: self
                .insts
                .unwrap_or(base.max_instantiations_per_universal),
        }
    }
}

impl CorpusEntry {
    pub fn theory(&self) -> Result<Theory, String> {
        let mut th = Theory::plain();
        for e in &self.extensions {
            th.extensions.insert(
                Extension::parse(e).ok_or_else(|| format!("unknown extension `{e}`"))?,
            );
        }
        for ax in &self.axioms {
            let scheme =
                parse_modal_formula(&ax.scheme).map_err(|err| format!("axiom scheme: {err}"))?;
            th.axioms.push(AxiomScheme::new(ax.name.clone(), scheme));
        }
        Ok(th)
    }
}

/// Outcome of running one entry against its expectation.
#[derive(Debug, Clone, Serialize)]
pub struct EntryResult {
    pub id: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

/// Default corpus location: `$ECUMENE_CORPUS`, or `corpus/` next to the
/// current directory.
pub fn default_corpus_dir() -> PathBuf {
    match std::env::var_os("ECUMENE_CORPUS") {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from("corpus"),
    }
}

pub fn load_corpus(dir: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    let index = dir.join("entries.json");
    let text = fs::read_to_string(&index).map_err(|source| CorpusError::Io {
        path: index.clone(),
        source,
    })?;
    let entries: Vec<CorpusEntry> =
        serde_json::from_str(&text).map_err(|e| CorpusError::Index(e.to_string()))?;
    let mut seen = BTreeSet::new();
    for e in &entries {
        if !seen.insert(e.id.clone()) {
            return Err(CorpusError::DuplicateId(e.id.clone()));
        }
    }
    Ok(entries)
}

/// Run every entry whose id matches `filter` (glob-style `*` wildcards),
/// ordered by id.
pub fn run_corpus(
    dir: &Path,
    filter: Option<&str>,
    budget: &SearchBudget,
) -> Result<Vec<EntryResult>, CorpusError> {
    let mut entries = load_corpus(dir)?;
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(entries
        .iter()
        .filter(|e| filter.is_none_or(|pat| glob_match(pat, &e.id)))
        .map(|e| run_entry(dir, e, budget))
        .collect())
}

/// Tiny glob where only `*` is special.
fn glob_match(pattern: &str, text: &str) -> bool {
    fn go(p: &[u8], t: &[u8]) -> bool {
        match p.split_first() {
            None => t.is_empty(),
            Some((b'*', rest)) => {
                (0..=t.len()).any(|skip| go(rest, &t[skip..]))
            }
            Some((c, rest)) => t.split_first().is_some_and(|(tc, tr)| tc == c && go(rest, tr)),
        }
    }
    go(pattern.as_bytes(), text.as_bytes())
}

pub fn run_entry(dir: &Path, entry: &CorpusEntry, base_budget: &SearchBudget) -> EntryResult {
    let start = Instant::now();
    let outcome = run_entry_inner(dir, entry, base_budget);
    let millis = start.elapsed().as_millis();
    match outcome {
        Ok(detail) => EntryResult {
            id: entry.id.clone(),
            passed: true,
            detail,
            millis,
        },
        Err(detail) => EntryResult {
            id: entry.id.clone(),
            passed: false,
            detail,
            millis,
        },
    }
}

fn run_entry_inner(
    dir: &Path,
    entry: &CorpusEntry,
    base_budget: &SearchBudget,
) -> Result<String, String> {
    let budget = entry
        .budget
        .as_ref()
        .map(|b| b.apply(base_budget))
        .unwrap_or(*base_budget);
    match entry.kind {
        EntryKind::Theorem => {
            let detail = prove_expecting(entry, &budget, true)?;
            Ok(detail)
        }
        EntryKind::NonTheorem => {
            let mut detail = prove_expecting(entry, &budget, false)?;
            if let Some(max_worlds) = entry.countermodel_max_worlds {
                detail.push_str("; ");
                detail.push_str(&find_expected_countermodel(entry, max_worlds)?);
            }
            Ok(detail)
        }
        EntryKind::ProofScript => {
            let rel = entry
                .script
                .as_ref()
                .ok_or_else(|| "proof_script entry without a script path".to_string())?;
            let path = dir.join(rel);
            let text = fs::read_to_string(&path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let script = ProofScript::from_json(&text).map_err(|e| e.to_string())?;
            script
                .check(entry.allow_cut)
                .map_err(|e| format!("script check failed: {e}"))?;
            Ok(format!("script ok: {}", script.conclusion_text()))
        }
    }
}

fn prove_expecting(
    entry: &CorpusEntry,
    budget: &SearchBudget,
    expect_proved: bool,
) -> Result<String, String> {
    let text = entry
        .sequent
        .as_ref()
        .ok_or_else(|| "entry without a sequent".to_string())?;
    match entry.system {
        System::Leci => {
            let seq = parse_sequent(text).map_err(|e| e.to_string())?;
            let outcome = prove(&seq, budget).map_err(|e| e.to_string())?;
            match (expect_proved, outcome) {
                (true, SearchOutcome::Proved(p)) => {
                    check_leci_proof(&p, false)
                        .map_err(|e| format!("proof does not re-check: {e}"))?;
                    Ok(format!("proved, {} nodes", p.node_count()))
                }
                (false, SearchOutcome::Unknown(r)) => {
                    if entry.saturated && !r.saturated {
                        return Err("expected a saturated failure".to_string());
                    }
                    Ok(format!(
                        "unknown (saturated: {}), {} visited",
                        r.saturated, r.nodes_visited
                    ))
                }
                (true, _) => Err("expected Proved".to_string()),
                (false, _) => Err("expected Unknown".to_string()),
            }
        }
        System::Labek => {
            let seq = parse_labeled_sequent(text).map_err(|e| e.to_string())?;
            let th = entry.theory()?;
            let outcome = prove_labek(&seq, &th, budget).map_err(|e| e.to_string())?;
            match (expect_proved, outcome) {
                (true, SearchOutcome::Proved(p)) => {
                    check_labek_proof(&p, &th, false)
                        .map_err(|e| format!("proof does not re-check: {e}"))?;
                    Ok(format!("proved, {} nodes", p.node_count()))
                }
                (false, SearchOutcome::Unknown(r)) => {
                    if entry.saturated && !r.saturated {
                        return Err("expected a saturated failure".to_string());
                    }
                    Ok(format!(
                        "unknown (saturated: {}), {} visited",
                        r.saturated, r.nodes_visited
                    ))
                }
                (true, _) => Err("expected Proved".to_string()),
                (false, _) => Err("expected Unknown".to_string()),
            }
        }
    }
}

fn find_expected_countermodel(entry: &CorpusEntry, max_worlds: usize) -> Result<String, String> {
    let text = entry
        .sequent
        .as_ref()
        .ok_or_else(|| "entry without a sequent".to_string())?;
    let formula = match entry.system {
        System::Leci => {
            let seq = parse_sequent(text).map_err(|e| e.to_string())?;
            if !seq.antecedent.is_empty() {
                return Err("countermodel checks need an empty antecedent".to_string());
            }
            seq.succedent
        }
        System::Labek => {
            let seq = parse_labeled_sequent(text).map_err(|e| e.to_string())?;
            if !seq.antecedent.is_empty() || !seq.rel_atoms.is_empty() {
                return Err("countermodel checks need an empty antecedent".to_string());
            }
            seq.succedent.1
        }
    };
    let props: Vec<FrameProperty> = entry
        .frame_properties
        .iter()
        .map(|p| FrameProperty::parse(p).ok_or_else(|| format!("unknown frame property `{p}`")))
        .collect::<Result<_, _>>()?;
    match find_countermodel(&formula, max_worlds, &props).map_err(|e| e.to_string())? {
        Some((model, world)) => Ok(format!(
            "countermodel with {} worlds at `{world}`",
            model.worlds.len()
        )),
        None => Err(format!("no countermodel within {max_worlds} worlds")),
    }
}
