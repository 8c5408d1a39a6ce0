//! The JSON proof-script format: a tree of `{rule, conclusion,
//! instantiation?, premises}` nodes under a header naming the system and,
//! for the labeled calculus, the theory. Scripts emitted by the provers
//! round-trip bit-exactly through this module.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::Formula;
use crate::labek::{check_labek_proof, AxiomScheme, Extension, Theory};
use crate::leci::check_leci_proof;
use crate::parser::{parse_labeled_sequent, parse_modal_formula, parse_sequent, ParseError};
use crate::proof::{Instantiation, LabekProof, LabekRule, LeciProof, LeciRule, ProofNode};
use crate::render::{render_labeled_sequent, render_sequent};

#[derive(Debug, Clone, Error)]
pub enum ScriptError {
    #[error("malformed script JSON: {0}")]
    Json(String),
    #[error("unknown rule name `{rule}` at {}", crate::proof::path_string(.path))]
    UnknownRule { rule: String, path: Vec<usize> },
    #[error("unknown extension `{0}`")]
    UnknownExtension(String),
    #[error("bad sequent text in script: {0}")]
    Sequent(#[from] ParseError),
    #[error("proof rejected: {0}")]
    Leci(#[from] crate::leci::CheckError),
    #[error("proof rejected: {0}")]
    Labek(#[from] crate::labek::CheckError),
}

/// A checked or checkable proof document.
#[derive(Debug, Clone)]
pub enum ProofScript {
    Leci {
        allow_cut: bool,
        proof: LeciProof,
    },
    Labek {
        theory: Theory,
        allow_cut: bool,
        proof: LabekProof,
    },
}

impl ProofScript {
    pub fn leci(proof: LeciProof, allow_cut: bool) -> Self {
        ProofScript::Leci { allow_cut, proof }
    }

    pub fn labek(proof: LabekProof, theory: Theory, allow_cut: bool) -> Self {
        ProofScript::Labek {
            theory,
            allow_cut,
            proof,
        }
    }

    /// Run the matching checker with the header's settings (`allow_cut` may
    /// be forced on by the caller).
    pub fn check(&self, force_allow_cut: bool) -> Result<(), ScriptError> {
        match self {
            ProofScript::Leci { allow_cut, proof } => {
                check_leci_proof(proof, *allow_cut || force_allow_cut)?;
                Ok(())
            }
            ProofScript::Labek {
                theory,
                allow_cut,
                proof,
            } => {
                check_labek_proof(proof, theory, *allow_cut || force_allow_cut)?;
                Ok(())
            }
        }
    }

    pub fn conclusion_text(&self) -> String {
        match self {
            ProofScript::Leci { proof, .. } => render_sequent(&proof.conclusion),
            ProofScript::Labek { proof, .. } => render_labeled_sequent(&proof.conclusion),
        }
    }

    pub fn to_json(&self) -> String {
        let raw = match self {
            ProofScript::Leci { allow_cut, proof } => RawScript {
                system: "leci".to_string(),
                extensions: Vec::new(),
                axioms: Vec::new(),
                allow_cut: *allow_cut,
                proof: leci_to_raw(proof),
            },
            ProofScript::Labek {
                theory,
                allow_cut,
                proof,
            } => RawScript {
                system: "labek".to_string(),
                extensions: theory
                    .extensions
                    .iter()
                    .map(|e| e.as_str().to_string())
                    .collect(),
                axioms: theory
                    .axioms
                    .iter()
                    .map(|ax| RawAxiom {
                        name: ax.name.clone(),
                        scheme: crate::render::render(&ax.scheme),
                    })
                    .collect(),
                allow_cut: *allow_cut,
                proof: labek_to_raw(proof),
            },
        };
        let mut out = serde_json::to_string_pretty(&raw).expect("script serialization");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<ProofScript, ScriptError> {
        let raw: RawScript =
            serde_json::from_str(text).map_err(|e| ScriptError::Json(e.to_string()))?;
        match raw.system.as_str() {
            "leci" => Ok(ProofScript::Leci {
                allow_cut: raw.allow_cut,
                proof: raw_to_leci(&raw.proof, &mut Vec::new())?,
            }),
            "labek" => {
                let mut theory = Theory::plain();
                for e in &raw.extensions {
                    let ext = Extension::parse(e)
                        .ok_or_else(|| ScriptError::UnknownExtension(e.clone()))?;
                    theory.extensions.insert(ext);
                }
                for ax in &raw.axioms {
                    let scheme: Formula = parse_modal_formula(&ax.scheme)?;
                    theory.axioms.push(AxiomScheme::new(ax.name.clone(), scheme));
                }
                Ok(ProofScript::Labek {
                    theory,
                    allow_cut: raw.allow_cut,
                    proof: raw_to_labek(&raw.proof, &mut Vec::new())?,
                })
            }
            other => Err(ScriptError::Json(format!("unknown system `{other}`"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawScript {
    system: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    extensions: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    axioms: Vec<RawAxiom>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    allow_cut: bool,
    proof: RawNode,
}

#[derive(Serialize, Deserialize)]
struct RawAxiom {
    name: String,
    scheme: String,
}

#[derive(Serialize, Deserialize)]
struct RawNode {
    rule: String,
    conclusion: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    instantiation: Option<Instantiation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    premises: Vec<RawNode>,
}

fn leci_to_raw(p: &LeciProof) -> RawNode {
    RawNode {
        rule: p.rule.as_str().to_string(),
        conclusion: render_sequent(&p.conclusion),
        instantiation: p.instantiation.clone(),
        premises: p.premises.iter().map(leci_to_raw).collect(),
    }
}

fn labek_to_raw(p: &LabekProof) -> RawNode {
    RawNode {
        rule: p.rule.as_str().to_string(),
        conclusion: render_labeled_sequent(&p.conclusion),
        instantiation: p.instantiation.clone(),
        premises: p.premises.iter().map(labek_to_raw).collect(),
    }
}

fn raw_to_leci(raw: &RawNode, path: &mut Vec<usize>) -> Result<LeciProof, ScriptError> {
    let rule = LeciRule::parse(&raw.rule).ok_or_else(|| ScriptError::UnknownRule {
        rule: raw.rule.clone(),
        path: path.clone(),
    })?;
    let conclusion = parse_sequent(&raw.conclusion)?;
    let mut premises = Vec::with_capacity(raw.premises.len());
    for (i, prem) in raw.premises.iter().enumerate() {
        path.push(i);
        premises.push(raw_to_leci(prem, path)?);
        path.pop();
    }
    let mut node = ProofNode::new(rule, conclusion, premises);
    node.instantiation = raw.instantiation.clone();
    Ok(node)
}

fn raw_to_labek(raw: &RawNode, path: &mut Vec<usize>) -> Result<LabekProof, ScriptError> {
    let rule = LabekRule::parse(&raw.rule).ok_or_else(|| ScriptError::UnknownRule {
        rule: raw.rule.clone(),
        path: path.clone(),
    })?;
    let conclusion = parse_labeled_sequent(&raw.conclusion)?;
    let mut premises = Vec::with_capacity(raw.premises.len());
    for (i, prem) in raw.premises.iter().enumerate() {
        path.push(i);
        premises.push(raw_to_labek(prem, path)?);
        path.pop();
    }
    let mut node = ProofNode::new(rule, conclusion, premises);
    node.instantiation = raw.instantiation.clone();
    Ok(node)
}
