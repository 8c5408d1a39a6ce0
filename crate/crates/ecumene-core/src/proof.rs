//! Proof objects: rule-instance-annotated derivation trees, plus the JSON
//! proof-script format shared by the provers and checkers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::sequent::{LabeledSequent, Sequent};

/// A derivation node. `S` is the sequent type, `R` the rule-name type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofNode<S, R> {
    pub rule: R,
    pub conclusion: S,
    pub instantiation: Option<Instantiation>,
    pub premises: Vec<ProofNode<S, R>>,
}

impl<S, R> ProofNode<S, R> {
    pub fn new(rule: R, conclusion: S, premises: Vec<ProofNode<S, R>>) -> Self {
        ProofNode {
            rule,
            conclusion,
            instantiation: None,
            premises,
        }
    }

    pub fn with_inst(mut self, inst: Instantiation) -> Self {
        self.instantiation = Some(inst);
        self
    }

    pub fn height(&self) -> usize {
        1 + self
            .premises
            .iter()
            .map(|p| p.height())
            .max()
            .unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(|p| p.node_count()).sum::<usize>()
    }

    /// Nodes matching a predicate, with their root paths (child indices).
    pub fn find_nodes<'a>(
        &'a self,
        pred: &impl Fn(&ProofNode<S, R>) -> bool,
    ) -> Vec<(Vec<usize>, &'a ProofNode<S, R>)> {
        let mut out = Vec::new();
        self.find_rec(pred, &mut Vec::new(), &mut out);
        out
    }

    fn find_rec<'a>(
        &'a self,
        pred: &impl Fn(&ProofNode<S, R>) -> bool,
        path: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, &'a ProofNode<S, R>)>,
    ) {
        if pred(self) {
            out.push((path.clone(), self));
        }
        for (i, p) in self.premises.iter().enumerate() {
            path.push(i);
            p.find_rec(pred, path, out);
            path.pop();
        }
    }
}

/// Witness / eigenvariable / axiom-instance record attached to a node.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instantiation {
    /// Term chosen by `forall_l` / `exists_i_r`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Fresh variable or label introduced by an eigenvariable rule.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigen: Option<String>,
    /// Name of the axiom scheme closing an `axiom` leaf.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axiom: Option<String>,
}

impl Instantiation {
    pub fn witness(v: impl Into<String>) -> Self {
        Instantiation {
            witness: Some(v.into()),
            ..Default::default()
        }
    }

    pub fn eigen(v: impl Into<String>) -> Self {
        Instantiation {
            eigen: Some(v.into()),
            ..Default::default()
        }
    }

    pub fn axiom(name: impl Into<String>) -> Self {
        Instantiation {
            axiom: Some(name.into()),
            ..Default::default()
        }
    }
}

macro_rules! rule_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub fn as_str(&self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }

            pub fn parse(s: &str) -> Option<Self> {
                match s {
                    $($text => Some($name::$variant),)+
                    _ => None,
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

rule_enum! {
    /// Rule names of the unlabeled ecumenical sequent calculus.
    LeciRule {
        Init => "init",
        W => "w",
        AndL => "and_l",
        AndR => "and_r",
        OrIL => "or_i_l",
        OrIR1 => "or_i_r1",
        OrIR2 => "or_i_r2",
        OrCL => "or_c_l",
        OrCR => "or_c_r",
        ImpIL => "imp_i_l",
        ImpIR => "imp_i_r",
        ImpCL => "imp_c_l",
        ImpCR => "imp_c_r",
        NegL => "neg_l",
        NegR => "neg_r",
        BotL => "bot_l",
        Lc => "l_c",
        Rc => "r_c",
        ForallL => "forall_l",
        ForallR => "forall_r",
        ExistsIL => "exists_i_l",
        ExistsIR => "exists_i_r",
        ExistsCL => "exists_c_l",
        ExistsCR => "exists_c_r",
        Cut => "cut",
    }
}

rule_enum! {
    /// Rule names of the labeled modal calculus, including the frame-rule
    /// extensions and the axiom-leaf mechanism.
    LabekRule {
        Init => "init",
        W => "w",
        AndL => "and_l",
        AndR => "and_r",
        OrIL => "or_i_l",
        OrIR1 => "or_i_r1",
        OrIR2 => "or_i_r2",
        OrCL => "or_c_l",
        OrCR => "or_c_r",
        ImpIL => "imp_i_l",
        ImpIR => "imp_i_r",
        ImpCL => "imp_c_l",
        ImpCR => "imp_c_r",
        NegL => "neg_l",
        NegR => "neg_r",
        Bot => "bot",
        Lc => "l_c",
        Rc => "r_c",
        BoxL => "box_l",
        BoxR => "box_r",
        DiaIL => "dia_i_l",
        DiaIR => "dia_i_r",
        DiaCL => "dia_c_l",
        DiaCR => "dia_c_r",
        Refl => "t",
        Trans => "4",
        Eucl => "5",
        Symm => "b",
        Axiom => "axiom",
        Cut => "cut",
    }
}

pub type LeciProof = ProofNode<Sequent, LeciRule>;
pub type LabekProof = ProofNode<LabeledSequent, LabekRule>;

impl LabekProof {
    pub fn cut_free(&self) -> bool {
        self.rule != LabekRule::Cut && self.premises.iter().all(|p| p.cut_free())
    }
}

impl LeciProof {
    pub fn cut_free(&self) -> bool {
        self.rule != LeciRule::Cut && self.premises.iter().all(|p| p.cut_free())
    }
}

/// Human-readable node path, `root` or `root.0.1`.
pub fn path_string(path: &[usize]) -> String {
    if path.is_empty() {
        "root".to_string()
    } else {
        let mut s = "root".to_string();
        for i in path {
            s.push('.');
            s.push_str(&i.to_string());
        }
        s
    }
}
