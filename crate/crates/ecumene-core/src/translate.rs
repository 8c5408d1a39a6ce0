//! The three translations: the modal-to-first-order standard translation,
//! the labeled-sequent translation with its constructive proof translation,
//! and the double-negation translation into the intuitionistic modal
//! fragment.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::formula::{fresh_var, Formula, Label, Var};
use crate::labek::{check_labek_proof, Theory};
use crate::proof::{path_string, Instantiation, LabekProof, LabekRule, LeciProof, LeciRule, ProofNode};
use crate::sequent::{LabeledSequent, Sequent};

#[derive(Debug, Clone, Error)]
pub enum TranslateError {
    #[error("formula is outside the modal fragment")]
    Fragment,
    #[error("rule `{rule}` at {} has no first-order translation", path_string(.path))]
    UnsupportedRule { rule: String, path: Vec<usize> },
    #[error("input proof does not check in the plain labeled calculus: {0}")]
    InvalidProof(#[from] crate::labek::CheckError),
    #[error("translation invariant broken at {}: {message}", path_string(.path))]
    Internal { path: Vec<usize>, message: String },
}

/// One labeled-rule application and the rule fragment it expanded to.
#[derive(Debug, Clone)]
pub struct TraceRecord {
    pub rule: LabekRule,
    pub conclusion: String,
    pub fragment: Vec<LeciRule>,
}

pub type TranslationTrace = Vec<TraceRecord>;

/// Bound world-variable naming: one designated name per modal depth,
/// skipping anything in `avoid`, so translations of alpha-equivalent inputs
/// are syntactically identical and label substitution commutes with
/// translation.
#[derive(Debug, Clone)]
struct WorldNames {
    avoid: BTreeSet<Var>,
}

impl WorldNames {
    fn new(avoid: BTreeSet<Var>) -> Self {
        WorldNames { avoid }
    }

    fn at_depth(&self, depth: usize) -> Var {
        let mut name = format!("w{depth}");
        while self.avoid.contains(&Var::new(name.clone())) {
            name.push('\'');
        }
        Var::new(name)
    }
}

fn std_tr(f: &Formula, x: &Var, depth: usize, names: &WorldNames) -> Result<Formula, TranslateError> {
    Ok(match f {
        Formula::IntAtom(n, args) if args.is_empty() => Formula::iatom(n.clone(), vec![x.clone()]),
        Formula::ClAtom(n, args) if args.is_empty() => Formula::catom(n.clone(), vec![x.clone()]),
        Formula::Bottom => Formula::Bottom,
        Formula::Neg(a) => Formula::neg(std_tr(a, x, depth, names)?),
        Formula::And(l, r) => Formula::and(std_tr(l, x, depth, names)?, std_tr(r, x, depth, names)?),
        Formula::OrI(l, r) => Formula::or_i(std_tr(l, x, depth, names)?, std_tr(r, x, depth, names)?),
        Formula::OrC(l, r) => Formula::or_c(std_tr(l, x, depth, names)?, std_tr(r, x, depth, names)?),
        Formula::ImpI(l, r) => Formula::imp_i(std_tr(l, x, depth, names)?, std_tr(r, x, depth, names)?),
        Formula::ImpC(l, r) => Formula::imp_c(std_tr(l, x, depth, names)?, std_tr(r, x, depth, names)?),
        Formula::Box(a) => {
            let y = names.at_depth(depth);
            Formula::forall(
                y.clone(),
                Formula::imp_i(Formula::rel(x.clone(), y.clone()), std_tr(a, &y, depth + 1, names)?),
            )
        }
        Formula::DiaI(a) => {
            let y = names.at_depth(depth);
            Formula::exists_i(
                y.clone(),
                Formula::and(Formula::rel(x.clone(), y.clone()), std_tr(a, &y, depth + 1, names)?),
            )
        }
        Formula::DiaC(a) => {
            let y = names.at_depth(depth);
            Formula::exists_c(
                y.clone(),
                Formula::and(Formula::rel(x.clone(), y.clone()), std_tr(a, &y, depth + 1, names)?),
            )
        }
        _ => return Err(TranslateError::Fragment),
    })
}

/// Standard translation of a modal formula at world variable `x`: the box
/// becomes a guarded universal, the two diamonds the two existentials.
pub fn std_translate(f: &Formula, x: &Var) -> Result<Formula, TranslateError> {
    if !f.is_modal_fragment() {
        return Err(TranslateError::Fragment);
    }
    let names = WorldNames::new([x.clone()].into());
    std_tr(f, x, 1, &names)
}

/// Sequent translation: relational atoms become R-predicates, labeled
/// formulas their standard translations at the label.
pub fn seq_translate(s: &LabeledSequent) -> Result<Sequent, TranslateError> {
    let names = WorldNames::new(s.labels().iter().map(Label::to_var).collect());
    let mut ante = Vec::new();
    for (x, y) in &s.rel_atoms {
        ante.push(Formula::rel(x.to_var(), y.to_var()));
    }
    for (x, f) in &s.antecedent {
        ante.push(std_tr(f, &x.to_var(), 1, &names)?);
    }
    let succ = std_tr(&s.succedent.1, &s.succedent.0.to_var(), 1, &names)?;
    Ok(Sequent::new(ante, succ))
}

/// Double-negation translation into the intuitionistic modal fragment:
/// classical atoms, connectives and the classical diamond unfold through
/// negation; everything else is homomorphic.
pub fn ik_translate(f: &Formula) -> Result<Formula, TranslateError> {
    if !f.is_modal_fragment() {
        return Err(TranslateError::Fragment);
    }
    Ok(ik_tr(f))
}

fn ik_tr(f: &Formula) -> Formula {
    match f {
        Formula::IntAtom(..) | Formula::Bottom => f.clone(),
        Formula::ClAtom(n, args) => {
            Formula::neg(Formula::neg(Formula::IntAtom(n.clone(), args.clone())))
        }
        Formula::Neg(a) => Formula::neg(ik_tr(a)),
        Formula::And(l, r) => Formula::and(ik_tr(l), ik_tr(r)),
        Formula::OrI(l, r) => Formula::or_i(ik_tr(l), ik_tr(r)),
        Formula::ImpI(l, r) => Formula::imp_i(ik_tr(l), ik_tr(r)),
        Formula::OrC(l, r) => Formula::neg(Formula::and(
            Formula::neg(ik_tr(l)),
            Formula::neg(ik_tr(r)),
        )),
        Formula::ImpC(l, r) => Formula::neg(Formula::and(ik_tr(l), Formula::neg(ik_tr(r)))),
        Formula::Box(a) => Formula::boxed(ik_tr(a)),
        Formula::DiaI(a) => Formula::dia_i(ik_tr(a)),
        Formula::DiaC(a) => Formula::neg(Formula::boxed(Formula::neg(ik_tr(a)))),
        Formula::Rel(..)
        | Formula::Forall(..)
        | Formula::ExistsI(..)
        | Formula::ExistsC(..) => unreachable!("guarded by fragment check"),
    }
}

/// Pointwise double-negation translation of a labeled sequent; relational
/// atoms are untouched.
pub fn ik_translate_sequent(s: &LabeledSequent) -> Result<LabeledSequent, TranslateError> {
    let mut ante = Vec::new();
    for (x, f) in &s.antecedent {
        ante.push((x.clone(), ik_translate(f)?));
    }
    Ok(LabeledSequent::new(
        s.rel_atoms.clone(),
        ante,
        (s.succedent.0.clone(), ik_translate(&s.succedent.1)?),
    ))
}

// ---------------------------------------------------------------------------
// Constructive proof translation.
//
// Each labeled rule expands to a fixed unlabeled fragment. The one delicate
// case is the right rule for the classical diamond: its unlabeled premise
// carries `forall y. ~(R(x,y) /\ A'(y))` while the labeled premise carries
// the translation of `box ~A`, which is `forall y. (R(x,y) ->i ~A'(y))`.
// Instead of bridging with a cut, the antecedent occurrence is tracked as a
// marked item and the rules that can consume it (`box_l`, `neg_l`, `init`)
// emit equivalent fragments against the conjunction-shaped formula, keeping
// the output cut-free.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Mark {
    /// Ordinary occurrence: `translated` is the standard translation.
    Plain,
    /// `box ~A` introduced by the classical-diamond right rule, kept in the
    /// negated-conjunction shape `forall w. ~(R(x,w) /\ A'(w))`.
    CoBox,
    /// `~A` produced by `box_l` on a `CoBox` item, kept as
    /// `~(R(x,y) /\ A'(y))`. The guarding `R(x,y)` is in context.
    CoNeg,
}

#[derive(Debug, Clone)]
struct Item {
    label: Label,
    original: Formula,
    translated: Formula,
    mark: Mark,
}

impl Item {
    fn plain(label: Label, original: Formula, translated: Formula) -> Self {
        Item {
            label,
            original,
            translated,
            mark: Mark::Plain,
        }
    }
}

/// Translate a checked plain (no extensions, no cut) labeled proof into an
/// unlabeled proof of the translated sequent.
pub fn proof_translate(p: &LabekProof) -> Result<LeciProof, TranslateError> {
    proof_translate_traced(p).map(|(proof, _)| proof)
}

pub fn proof_translate_traced(
    p: &LabekProof,
) -> Result<(LeciProof, TranslationTrace), TranslateError> {
    check_labek_proof(p, &Theory::plain(), false)?;

    let mut avoid: BTreeSet<Var> = BTreeSet::new();
    collect_labels(p, &mut avoid);
    let names = WorldNames::new(avoid);

    let root = &p.conclusion;
    let mut items = Vec::new();
    let mut ante = Vec::new();
    for (x, y) in &root.rel_atoms {
        ante.push(Formula::rel(x.to_var(), y.to_var()));
    }
    for (x, f) in &root.antecedent {
        let tr = std_tr(f, &x.to_var(), 1, &names)?;
        items.push(Item::plain(x.clone(), f.clone(), tr.clone()));
        ante.push(tr);
    }
    let succ = std_tr(&root.succedent.1, &root.succedent.0.to_var(), 1, &names)?;
    let seq = Sequent::new(ante, succ);

    let _ = names;
    let mut tx = Translator {
        trace: Vec::new(),
        path: Vec::new(),
    };
    let proof = tx.node(p, items, seq)?;
    Ok((proof, tx.trace))
}

fn collect_labels(p: &LabekProof, out: &mut BTreeSet<Var>) {
    for l in p.conclusion.labels() {
        out.insert(l.to_var());
    }
    for prem in &p.premises {
        collect_labels(prem, out);
    }
}

struct Translator {
    trace: TranslationTrace,
    path: Vec<usize>,
}

impl Translator {
    fn internal(&self, message: impl Into<String>) -> TranslateError {
        TranslateError::Internal {
            path: self.path.clone(),
            message: message.into(),
        }
    }

    fn record(&mut self, p: &LabekProof, fragment: Vec<LeciRule>) {
        self.trace.push(TraceRecord {
            rule: p.rule,
            conclusion: p.conclusion.to_string(),
            fragment,
        });
    }

    fn child(
        &mut self,
        p: &LabekProof,
        idx: usize,
        items: Vec<Item>,
        seq: Sequent,
    ) -> Result<LeciProof, TranslateError> {
        self.path.push(idx);
        let result = self.node(&p.premises[idx], items, seq);
        self.path.pop();
        result
    }

    /// Locate the item for an antecedent occurrence, preferring unmarked
    /// copies. Returns its index.
    fn find_item(
        &self,
        items: &[Item],
        label: &Label,
        original: &Formula,
    ) -> Result<usize, TranslateError> {
        items
            .iter()
            .position(|it| it.mark == Mark::Plain && it.label == *label && it.original == *original)
            .or_else(|| {
                items
                    .iter()
                    .position(|it| it.label == *label && it.original == *original)
            })
            .ok_or_else(|| self.internal(format!("no item for {label}: {original}")))
    }

    /// The premise antecedent after removing `drop` and appending `add`,
    /// both on items and on the unlabeled sequent.
    fn step(
        items: &[Item],
        seq: &Sequent,
        drop: Option<usize>,
        add: Vec<Item>,
        new_succ: Option<Formula>,
    ) -> (Vec<Item>, Sequent) {
        let mut items2 = items.to_vec();
        let mut seq2 = seq.clone();
        if let Some(idx) = drop {
            let removed = items2.remove(idx);
            seq2 = seq2
                .remove_one(&removed.translated)
                .expect("item tracked in sequent");
        }
        for it in add {
            seq2.antecedent.push(it.translated.clone());
            items2.push(it);
        }
        if let Some(s) = new_succ {
            seq2.succedent = s;
        }
        (items2, seq2)
    }

    fn node(
        &mut self,
        p: &LabekProof,
        items: Vec<Item>,
        seq: Sequent,
    ) -> Result<LeciProof, TranslateError> {
        debug_assert_eq!(p.conclusion.antecedent.len(), items.len());
        let conc = &p.conclusion;
        match p.rule {
            LabekRule::Init => {
                let idx = self.find_item(&items, &conc.succedent.0, &conc.succedent.1)?;
                match items[idx].mark {
                    Mark::Plain => {
                        self.record(p, vec![LeciRule::Init]);
                        Ok(ProofNode::new(LeciRule::Init, seq, vec![]))
                    }
                    Mark::CoBox => {
                        let proof = self.cobox_init(&items[idx], seq)?;
                        self.record(
                            p,
                            vec![
                                LeciRule::ForallR,
                                LeciRule::ImpIR,
                                LeciRule::NegR,
                                LeciRule::ForallL,
                                LeciRule::NegL,
                                LeciRule::AndR,
                            ],
                        );
                        Ok(proof)
                    }
                    Mark::CoNeg => {
                        let proof = self.coneg_close(&items[idx], seq, None)?;
                        self.record(p, vec![LeciRule::NegR, LeciRule::NegL, LeciRule::AndR]);
                        Ok(proof)
                    }
                }
            }
            LabekRule::Bot => {
                self.record(p, vec![LeciRule::BotL]);
                Ok(ProofNode::new(LeciRule::BotL, seq, vec![]))
            }
            LabekRule::W => {
                self.record(p, vec![LeciRule::W]);
                let prem = seq.with_succedent(Formula::Bottom);
                let sub = self.child(p, 0, items, prem)?;
                Ok(ProofNode::new(LeciRule::W, seq, vec![sub]))
            }
            LabekRule::AndL => {
                let (x, f) = principal_of(conc, &p.premises[0].conclusion)
                    .ok_or_else(|| self.internal("and_l principal not found"))?;
                let Formula::And(a, b) = &f else {
                    return Err(self.internal("and_l principal is not a conjunction"));
                };
                let idx = self.find_item(&items, &x, &f)?;
                let Formula::And(ta, tb) = items[idx].translated.clone() else {
                    return Err(self.internal("translated principal lost its shape"));
                };
                let add = vec![
                    Item::plain(x.clone(), (**a).clone(), (*ta).clone()),
                    Item::plain(x.clone(), (**b).clone(), (*tb).clone()),
                ];
                let (items2, seq2) = Self::step(&items, &seq, Some(idx), add, None);
                self.record(p, vec![LeciRule::AndL]);
                let sub = self.child(p, 0, items2, seq2)?;
                Ok(ProofNode::new(LeciRule::AndL, seq, vec![sub]))
            }
            LabekRule::AndR => {
                let (x, f) = conc.succedent.clone();
                let Formula::And(a, b) = &f else {
                    return Err(self.internal("and_r succedent is not a conjunction"));
                };
                let Formula::And(ta, tb) = seq.succedent.clone() else {
                    return Err(self.internal("translated succedent lost its shape"));
                };
                let _ = (x, a, b);
                self.record(p, vec![LeciRule::AndR]);
                let left = self.child(p, 0, items.clone(), seq.with_succedent((*ta).clone()))?;
                let right = self.child(p, 1, items, seq.with_succedent((*tb).clone()))?;
                Ok(ProofNode::new(LeciRule::AndR, seq, vec![left, right]))
            }
            LabekRule::OrIL => {
                let (x, f) = principal_of(conc, &p.premises[0].conclusion)
                    .ok_or_else(|| self.internal("or_i_l principal not found"))?;
                let Formula::OrI(a, b) = &f else {
                    return Err(self.internal("or_i_l principal is not a disjunction"));
                };
                let idx = self.find_item(&items, &x, &f)?;
                let Formula::OrI(ta, tb) = items[idx].translated.clone() else {
                    return Err(self.internal("translated principal lost its shape"));
                };
                let (items_a, seq_a) = Self::step(
                    &items,
                    &seq,
                    Some(idx),
                    vec![Item::plain(x.clone(), (**a).clone(), (*ta).clone())],
                    None,
                );
                let (items_b, seq_b) = Self::step(
                    &items,
                    &seq,
                    Some(idx),
                    vec![Item::plain(x.clone(), (**b).clone(), (*tb).clone())],
                    None,
                );
                self.record(p, vec![LeciRule::OrIL]);
                let left = self.child(p, 0, items_a, seq_a)?;
                let right = self.child(p, 1, items_b, seq_b)?;
                Ok(ProofNode::new(LeciRule::OrIL, seq, vec![left, right]))
            }
            LabekRule::OrIR1 | LabekRule::OrIR2 => {
                let Formula::OrI(ta, tb) = seq.succedent.clone() else {
                    return Err(self.internal("translated succedent lost its shape"));
                };
                let (rule, pick) = if p.rule == LabekRule::OrIR1 {
                    (LeciRule::OrIR1, ta)
                } else {
                    (LeciRule::OrIR2, tb)
                };
                self.record(p, vec![rule]);
                let sub = self.child(p, 0, items, seq.with_succedent((*pick).clone()))?;
                Ok(ProofNode::new(rule, seq, vec![sub]))
            }
            LabekRule::OrCL => {
                let (x, f) = principal_of(conc, &p.premises[0].conclusion)
                    .ok_or_else(|| self.internal("or_c_l principal not found"))?;
                let Formula::OrC(a, b) = &f else {
                    return Err(self.internal("or_c_l principal is not a classical disjunction"));
                };
                let idx = self.find_item(&items, &x, &f)?;
                let Formula::OrC(ta, tb) = items[idx].translated.clone() else {
                    return Err(self.internal("translated principal lost its shape"));
                };
                let (items_a, seq_a) = Self::step(
                    &items,
                    &seq,
                    Some(idx),
                    vec![Item::plain(x.clone(), (**a).clone(), (*ta).clone())],
                    None,
                );
                let (items_b, seq_b) = Self::step(
                    &items,
                    &seq,
                    Some(idx),
                    vec![Item::plain(x.clone(), (**b).clone(), (*tb).clone())],
                    None,
                );
                self.record(p, vec![LeciRule::OrCL]);
                let left = self.child(p, 0, items_a, seq_a)?;
                let right = self.child(p, 1, items_b, seq_b)?;
                Ok(ProofNode::new(LeciRule::OrCL, seq, vec![left, right]))
            }
            LabekRule::OrCR => {
                let (x, _) = conc.succedent.clone();
                let Formula::OrC(ta, tb) = seq.succedent.clone() else {
                    return Err(self.internal("translated succedent lost its shape"));
                };
                let Formula::OrC(a, b) = conc.succedent.1.clone() else {
                    return Err(self.internal("or_c_r succedent is not a classical disjunction"));
                };
                let add = vec![
                    Item::plain(x.clone(), Formula::neg((*a).clone()), Formula::neg((*ta).clone())),
                    Item::plain(x.clone(), Formula::neg((*b).clone()), Formula::neg((*tb).clone())),
                ];
                let (items2, seq2) = Self::step(&items, &seq, None, add, Some(Formula::Bottom));
                self.record(p, vec![LeciRule::OrCR]);
                let sub = self.child(p, 0, items2, seq2)?;
                Ok(ProofNode::new(LeciRule::OrCR, seq, vec![sub]))
            }
            LabekRule::ImpIL => {
                let (x, f) = imp_l_principal(
                    conc,
                    &p.premises[0].conclusion,
                    &p.premises[1].conclusion,
                    false,
                )
                .ok_or_else(|| self.internal("imp_i_l principal not found"))?;
                let Formula::ImpI(a, b) = &f else {
                    return Err(self.internal("imp_i_l principal is not an implication"));
                };
                let idx = self.find_item(&items, &x, &f)?;
                let Formula::ImpI(ta, tb) = items[idx].translated.clone() else {
                    return Err(self.internal("translated principal lost its shape"));
                };
                let _ = a;
                // Left premise keeps the principal and targets x:A.
                let left_seq = seq.with_succedent((*ta).clone());
                let (items_r, seq_r) = Self::step(
                    &items,
                    &seq,
                    Some(idx),
                    vec![Item::plain(x.clone(), (**b).clone(), (*tb).clone())],
                    None,
                );
                self.record(p, vec![LeciRule::ImpIL]);
                let left = self.child(p, 0, items.clone(), left_seq)?;
                let right = self.child(p, 1, items_r, seq_r)?;
                Ok(ProofNode::new(LeciRule::ImpIL, seq, vec![left, right]))
            }
            LabekRule::ImpIR => {
                let (x, _) = conc.succedent.clone();
                let Formula::ImpI(a, b) = conc.succedent.1.clone() else {
                    return Err(self.internal("imp_i_r succedent is not an implication"));
                };
                let Formula::ImpI(ta, tb) = seq.succedent.clone() else {
                    return Err(self.internal("translated succedent lost its shape"));
                };
                let (items2, seq2) = Self::step(
                    &items,
                    &seq,
                    None,
                    vec![Item::plain(x.clone(), (*a).clone(), (*ta).clone())],
                    Some((*tb).clone()),
                );
                let _ = b;
                self.record(p, vec![LeciRule::ImpIR]);
                let sub = self.child(p, 0, items2, seq2)?;
                Ok(ProofNode::new(LeciRule::ImpIR, seq, vec![sub]))
            }
            LabekRule::ImpCL => {
                let (x, f) = imp_l_principal(
                    conc,
                    &p.premises[0].conclusion,
                    &p.premises[1].conclusion,
                    true,
                )
                .ok_or_else(|| self.internal("imp_c_l principal not found"))?;
                let Formula::ImpC(a, b) = &f else {
                    return Err(self.internal("imp_c_l principal is not a classical implication"));
                };
                let idx = self.find_item(&items, &x, &f)?;
                let Formula::ImpC(ta, tb) = items[idx].translated.clone() else {
                    return Err(self.internal("translated principal lost its shape"));
                };
                let _ = a;
                let left_seq = seq.with_succedent((*ta).clone());
                let (items_r, seq_r) = Self::step(
                    &items,
                    &seq,
                    Some(idx),
                    vec![Item::plain(x.clone(), (**b).clone(), (*tb).clone())],
                    Some(Formula::Bottom),
                );
                self.record(p, vec![LeciRule::ImpCL]);
                let left = self.child(p, 0, items.clone(), left_seq)?;
                let right = self.child(p, 1, items_r, seq_r)?;
                Ok(ProofNode::new(LeciRule::ImpCL, seq, vec![left, right]))
            }
            LabekRule::ImpCR => {
                let (x, _) = conc.succedent.clone();
                let Formula::ImpC(a, b) = conc.succedent.1.clone() else {
                    return Err(self.internal("imp_c_r succedent is not a classical implication"));
                };
                let Formula::ImpC(ta, tb) = seq.succedent.clone() else {
                    return Err(self.internal("translated succedent lost its shape"));
                };
                let add = vec![
                    Item::plain(x.clone(), (*a).clone(), (*ta).clone()),
                    Item::plain(x.clone(), Formula::neg((*b).clone()), Formula::neg((*tb).clone())),
                ];
                let (items2, seq2) = Self::step(&items, &seq, None, add, Some(Formula::Bottom));
                self.record(p, vec![LeciRule::ImpCR]);
                let sub = self.child(p, 0, items2, seq2)?;
                Ok(ProofNode::new(LeciRule::ImpCR, seq, vec![sub]))
            }
            LabekRule::NegL => {
                let (x, f) = neg_l_principal(conc, &p.premises[0].conclusion)
                    .ok_or_else(|| self.internal("neg_l principal not found"))?;
                let idx = self.find_item(&items, &x, &f)?;
                match items[idx].mark.clone() {
                    Mark::CoNeg => {
                        let item = items[idx].clone();
                        let Formula::Neg(body) = item.translated.clone() else {
                            return Err(self.internal("marked negation lost its shape"));
                        };
                        let Formula::And(_, ta) = (*body).clone() else {
                            return Err(self.internal("marked negation lost its shape"));
                        };
                        // Premise keeps the item and targets x:A, i.e. the
                        // second conjunct.
                        let prem_seq = seq.with_succedent((*ta).clone());
                        self.record(p, vec![LeciRule::NegL, LeciRule::AndR]);
                        let sub = self.child(p, 0, items.clone(), prem_seq)?;
                        self.coneg_close(&item, seq, Some(sub))
                    }
                    _ => {
                        let Formula::Neg(ta) = items[idx].translated.clone() else {
                            return Err(self.internal("translated principal lost its shape"));
                        };
                        let prem_seq = seq.with_succedent((*ta).clone());
                        self.record(p, vec![LeciRule::NegL]);
                        let sub = self.child(p, 0, items, prem_seq)?;
                        Ok(ProofNode::new(LeciRule::NegL, seq, vec![sub]))
                    }
                }
            }
            LabekRule::NegR => {
                let (x, _) = conc.succedent.clone();
                let Formula::Neg(a) = conc.succedent.1.clone() else {
                    return Err(self.internal("neg_r succedent is not a negation"));
                };
                let Formula::Neg(ta) = seq.succedent.clone() else {
                    return Err(self.internal("translated succedent lost its shape"));
                };
                let (items2, seq2) = Self::step(
                    &items,
                    &seq,
                    None,
                    vec![Item::plain(x.clone(), (*a).clone(), (*ta).clone())],
                    Some(Formula::Bottom),
                );
                self.record(p, vec![LeciRule::NegR]);
                let sub = self.child(p, 0, items2, seq2)?;
                Ok(ProofNode::new(LeciRule::NegR, seq, vec![sub]))
            }
            LabekRule::Lc => {
                let (x, f) = principal_of(conc, &p.premises[0].conclusion)
                    .ok_or_else(|| self.internal("l_c principal not found"))?;
                let Formula::ClAtom(n, _) = &f else {
                    return Err(self.internal("l_c principal is not a classical atom"));
                };
                let idx = self.find_item(&items, &x, &f)?;
                let add = vec![Item::plain(
                    x.clone(),
                    Formula::iprop(n.clone()),
                    Formula::iatom(n.clone(), vec![x.to_var()]),
                )];
                let (items2, seq2) = Self::step(&items, &seq, Some(idx), add, None);
                self.record(p, vec![LeciRule::Lc]);
                let sub = self.child(p, 0, items2, seq2)?;
                Ok(ProofNode::new(LeciRule::Lc, seq, vec![sub]))
            }
            LabekRule::Rc => {
                let (x, f) = conc.succedent.clone();
                let Formula::ClAtom(n, _) = &f else {
                    return Err(self.internal("r_c succedent is not a classical atom"));
                };
                let add = vec![Item::plain(
                    x.clone(),
                    Formula::neg(Formula::iprop(n.clone())),
                    Formula::neg(Formula::iatom(n.clone(), vec![x.to_var()])),
                )];
                let (items2, seq2) = Self::step(&items, &seq, None, add, Some(Formula::Bottom));
                self.record(p, vec![LeciRule::Rc]);
                let sub = self.child(p, 0, items2, seq2)?;
                Ok(ProofNode::new(LeciRule::Rc, seq, vec![sub]))
            }
            LabekRule::BoxL => {
                let prem = &p.premises[0].conclusion;
                let added = formula_added(conc, prem)
                    .ok_or_else(|| self.internal("box_l premise adds nothing"))?;
                let (y, a) = added;
                let x = conc
                    .antecedent
                    .iter()
                    .filter_map(|(x, f)| match f {
                        Formula::Box(inner) if **inner == a && conc.has_rel(x, &y) => Some(x),
                        _ => None,
                    })
                    .next()
                    .ok_or_else(|| self.internal("box_l principal not found"))?
                    .clone();
                let idx = self.find_item(&items, &x, &Formula::boxed(a.clone()))?;
                let item = items[idx].clone();
                match item.mark {
                    Mark::CoBox => {
                        // forall_l introducing the marked instance.
                        let Formula::Forall(w, body) = item.translated.clone() else {
                            return Err(self.internal("marked box lost its shape"));
                        };
                        let inst = body.subst(&w, &y.to_var());
                        let new_item = Item {
                            label: y.clone(),
                            original: a.clone(),
                            translated: inst,
                            mark: Mark::CoNeg,
                        };
                        let (items2, seq2) = Self::step(&items, &seq, None, vec![new_item], None);
                        self.record(p, vec![LeciRule::ForallL]);
                        let sub = self.child(p, 0, items2, seq2)?;
                        Ok(ProofNode::new(LeciRule::ForallL, seq, vec![sub])
                            .with_inst(Instantiation::witness(y.as_str())))
                    }
                    _ => {
                        // forall_l, then imp_i_l with an init-closed left leaf.
                        let Formula::Forall(w, body) = item.translated.clone() else {
                            return Err(self.internal("translated box lost its shape"));
                        };
                        let inst = body.subst(&w, &y.to_var());
                        let Formula::ImpI(rel, ta) = inst.clone() else {
                            return Err(self.internal("box instance lost its shape"));
                        };
                        let mid_seq = seq.with_extra([inst.clone()]);
                        let left_seq = mid_seq.with_succedent((*rel).clone());
                        let new_item = Item::plain(y.clone(), a.clone(), (*ta).clone());
                        let (items2, seq2) = Self::step(&items, &seq, None, vec![new_item], None);
                        self.record(p, vec![LeciRule::ForallL, LeciRule::ImpIL, LeciRule::Init]);
                        let right = self.child(p, 0, items2, seq2)?;
                        let left = ProofNode::new(LeciRule::Init, left_seq, vec![]);
                        let imp = ProofNode::new(LeciRule::ImpIL, mid_seq, vec![left, right]);
                        Ok(ProofNode::new(LeciRule::ForallL, seq, vec![imp])
                            .with_inst(Instantiation::witness(y.as_str())))
                    }
                }
            }
            LabekRule::BoxR => {
                let prem = &p.premises[0].conclusion;
                let (x, y) = rel_added(conc, prem)
                    .ok_or_else(|| self.internal("box_r premise adds no relational atom"))?;
                let Formula::Forall(w, body) = seq.succedent.clone() else {
                    return Err(self.internal("translated succedent lost its shape"));
                };
                let inst = body.subst(&w, &y.to_var());
                let Formula::ImpI(rel, ta) = inst.clone() else {
                    return Err(self.internal("box instance lost its shape"));
                };
                let _ = x;
                let mid_seq = seq.with_succedent(inst.clone());
                let mut seq2 = seq.clone();
                seq2.antecedent.push((*rel).clone());
                seq2.succedent = (*ta).clone();
                self.record(p, vec![LeciRule::ForallR, LeciRule::ImpIR]);
                let sub = self.child(p, 0, items, seq2)?;
                let imp = ProofNode::new(LeciRule::ImpIR, mid_seq, vec![sub]);
                Ok(ProofNode::new(LeciRule::ForallR, seq, vec![imp])
                    .with_inst(Instantiation::eigen(y.as_str())))
            }
            LabekRule::DiaIL | LabekRule::DiaCL => {
                let classical = p.rule == LabekRule::DiaCL;
                let prem = &p.premises[0].conclusion;
                let (x, y) = rel_added(conc, prem)
                    .ok_or_else(|| self.internal("diamond-left premise adds no relational atom"))?;
                let (_, added_body) = prem
                    .antecedent
                    .iter()
                    .find(|(l, _)| *l == y)
                    .ok_or_else(|| self.internal("diamond-left premise adds no body"))?
                    .clone();
                let wanted = if classical {
                    Formula::dia_c(added_body.clone())
                } else {
                    Formula::dia_i(added_body.clone())
                };
                let (label, f) = conc
                    .antecedent
                    .iter()
                    .find(|(l, f)| *l == x && *f == wanted)
                    .ok_or_else(|| self.internal("diamond-left principal not found"))?
                    .clone();
                let a = added_body;
                let idx = self.find_item(&items, &label, &f)?;
                let (bound, body) = match items[idx].translated.clone() {
                    Formula::ExistsI(w, b) | Formula::ExistsC(w, b) => (w, b),
                    _ => return Err(self.internal("translated diamond lost its shape")),
                };
                let inst = body.subst(&bound, &y.to_var());
                let Formula::And(rel, ta) = inst.clone() else {
                    return Err(self.internal("diamond instance lost its shape"));
                };
                let (ex_rule, _) = if classical {
                    (LeciRule::ExistsCL, LeciRule::AndL)
                } else {
                    (LeciRule::ExistsIL, LeciRule::AndL)
                };
                // After exists-left the conjunction is in context; and_l
                // splits it into the relational guard and the body.
                let mut items_mid = items.clone();
                items_mid.remove(idx);
                let mut mid_seq = seq.remove_one(&items[idx].translated).expect("tracked");
                mid_seq.antecedent.push(inst.clone());
                let mut seq2 = mid_seq.remove_one(&inst).expect("just added");
                seq2.antecedent.push((*rel).clone());
                seq2.antecedent.push((*ta).clone());
                let mut items2 = items_mid;
                items2.push(Item::plain(y.clone(), a, (*ta).clone()));
                self.record(p, vec![ex_rule, LeciRule::AndL]);
                let sub = self.child(p, 0, items2, seq2)?;
                let and = ProofNode::new(LeciRule::AndL, mid_seq, vec![sub]);
                Ok(ProofNode::new(ex_rule, seq, vec![and])
                    .with_inst(Instantiation::eigen(y.as_str())))
            }
            LabekRule::DiaIR => {
                let prem = &p.premises[0].conclusion;
                let y = prem.succedent.0.clone();
                let (bound, body) = match seq.succedent.clone() {
                    Formula::ExistsI(w, b) => (w, b),
                    _ => return Err(self.internal("translated succedent lost its shape")),
                };
                let inst = body.subst(&bound, &y.to_var());
                let Formula::And(rel, ta) = inst.clone() else {
                    return Err(self.internal("diamond instance lost its shape"));
                };
                let mid_seq = seq.with_succedent(inst.clone());
                let left_seq = mid_seq.with_succedent((*rel).clone());
                let right_seq = mid_seq.with_succedent((*ta).clone());
                self.record(p, vec![LeciRule::ExistsIR, LeciRule::AndR, LeciRule::Init]);
                let right = self.child(p, 0, items, right_seq)?;
                let left = ProofNode::new(LeciRule::Init, left_seq, vec![]);
                let and = ProofNode::new(LeciRule::AndR, mid_seq, vec![left, right]);
                Ok(ProofNode::new(LeciRule::ExistsIR, seq, vec![and])
                    .with_inst(Instantiation::witness(y.as_str())))
            }
            LabekRule::DiaCR => {
                let (x, f) = conc.succedent.clone();
                let Formula::DiaC(a) = &f else {
                    return Err(self.internal("dia_c_r succedent is not a classical diamond"));
                };
                let (bound, body) = match seq.succedent.clone() {
                    Formula::ExistsC(w, b) => (w, b),
                    _ => return Err(self.internal("translated succedent lost its shape")),
                };
                // The exists_c_r premise formula, which doubles as the
                // marked translation of `box ~A`.
                let guard = Formula::forall(bound.clone(), Formula::neg((*body).clone()));
                let new_item = Item {
                    label: x.clone(),
                    original: Formula::boxed(Formula::neg((**a).clone())),
                    translated: guard,
                    mark: Mark::CoBox,
                };
                let (items2, seq2) =
                    Self::step(&items, &seq, None, vec![new_item], Some(Formula::Bottom));
                self.record(p, vec![LeciRule::ExistsCR]);
                let sub = self.child(p, 0, items2, seq2)?;
                Ok(ProofNode::new(LeciRule::ExistsCR, seq, vec![sub]))
            }
            LabekRule::Refl | LabekRule::Trans | LabekRule::Eucl | LabekRule::Symm
            | LabekRule::Axiom | LabekRule::Cut => Err(TranslateError::UnsupportedRule {
                rule: p.rule.as_str().to_string(),
                path: self.path.clone(),
            }),
        }
    }

    /// Close a goal `F, Δ |- forall y.(R(x,y) ->i ~A'(y))` where `F` is the
    /// marked shape `forall y. ~(R(x,y) /\ A'(y))`.
    fn cobox_init(&mut self, item: &Item, seq: Sequent) -> Result<LeciProof, TranslateError> {
        let Formula::Forall(w, body) = item.translated.clone() else {
            return Err(self.internal("marked box lost its shape"));
        };
        let Formula::Forall(w2, succ_body) = seq.succedent.clone() else {
            return Err(self.internal("cobox init succedent lost its shape"));
        };
        let z = fresh_var("z", &seq.free_vars());
        let succ_inst = succ_body.subst(&w2, &z);
        let Formula::ImpI(rel, neg_a) = succ_inst.clone() else {
            return Err(self.internal("cobox init succedent instance lost its shape"));
        };
        let Formula::Neg(ta) = (*neg_a).clone() else {
            return Err(self.internal("cobox init succedent instance lost its shape"));
        };

        // forall_r
        let s1 = seq.with_succedent(succ_inst.clone());
        // imp_i_r
        let s2 = s1.with_succedent((*neg_a).clone()).with_extra([(*rel).clone()]);
        // neg_r
        let s3 = s2.with_succedent(Formula::Bottom).with_extra([(*ta).clone()]);
        // forall_l on F
        let f_inst = body.subst(&w, &z);
        let s4 = s3.with_extra([f_inst.clone()]);
        // neg_l on the instance
        let Formula::Neg(conj) = f_inst.clone() else {
            return Err(self.internal("marked instance lost its shape"));
        };
        let s5 = s4.with_succedent((*conj).clone());
        // and_r, both sides closed by init
        let Formula::And(rel2, ta2) = (*conj).clone() else {
            return Err(self.internal("marked instance lost its shape"));
        };
        let left = ProofNode::new(LeciRule::Init, s5.with_succedent((*rel2).clone()), vec![]);
        let right = ProofNode::new(LeciRule::Init, s5.with_succedent((*ta2).clone()), vec![]);
        let and = ProofNode::new(LeciRule::AndR, s5.clone(), vec![left, right]);
        let negl = ProofNode::new(LeciRule::NegL, s4, vec![and]);
        let foralll = ProofNode::new(LeciRule::ForallL, s3, vec![negl])
            .with_inst(Instantiation::witness(z.as_str()));
        let negr = ProofNode::new(LeciRule::NegR, s2, vec![foralll]);
        let impir = ProofNode::new(LeciRule::ImpIR, s1, vec![negr]);
        Ok(ProofNode::new(LeciRule::ForallR, seq, vec![impir])
            .with_inst(Instantiation::eigen(z.as_str())))
    }

    /// Use a marked item `~(R(x,y) /\ A'(y))` against the current goal.
    /// With `body_proof = None` the goal is `|- ~A'(y)` (init case) and the
    /// A'-side closes by init; otherwise the goal is `|- bot` (neg_l case)
    /// and `body_proof` proves `|- A'(y)`.
    fn coneg_close(
        &mut self,
        item: &Item,
        seq: Sequent,
        body_proof: Option<LeciProof>,
    ) -> Result<LeciProof, TranslateError> {
        let Formula::Neg(conj) = item.translated.clone() else {
            return Err(self.internal("marked negation lost its shape"));
        };
        let Formula::And(rel, ta) = (*conj).clone() else {
            return Err(self.internal("marked negation lost its shape"));
        };
        match body_proof {
            None => {
                // Goal: Δ |- ~A'(y). neg_r, then neg_l, then and_r.
                let s1 = seq.with_succedent(Formula::Bottom).with_extra([(*ta).clone()]);
                let s2 = s1.with_succedent((*conj).clone());
                let left = ProofNode::new(LeciRule::Init, s2.with_succedent((*rel).clone()), vec![]);
                let right = ProofNode::new(LeciRule::Init, s2.with_succedent((*ta).clone()), vec![]);
                let and = ProofNode::new(LeciRule::AndR, s2, vec![left, right]);
                let negl = ProofNode::new(LeciRule::NegL, s1, vec![and]);
                Ok(ProofNode::new(LeciRule::NegR, seq, vec![negl]))
            }
            Some(body) => {
                // Goal: Δ |- bot with the item kept. neg_l, then and_r with
                // the R-side closed by init.
                let s1 = seq.with_succedent((*conj).clone());
                let left = ProofNode::new(LeciRule::Init, s1.with_succedent((*rel).clone()), vec![]);
                let and = ProofNode::new(LeciRule::AndR, s1, vec![left, body]);
                Ok(ProofNode::new(LeciRule::NegL, seq, vec![and]))
            }
        }
    }
}

/// The antecedent occurrence consumed between conclusion and premise.
fn principal_of(conc: &LabeledSequent, prem: &LabeledSequent) -> Option<(Label, Formula)> {
    let mut prem_items = prem.antecedent.clone();
    let mut missing = None;
    for item in &conc.antecedent {
        if let Some(idx) = prem_items.iter().position(|i| i == item) {
            prem_items.remove(idx);
        } else {
            missing = Some(item.clone());
        }
    }
    missing
}

/// Principal of an implication-left rule: kept in the left premise (whose
/// succedent names its antecedent half), dropped from the right premise
/// (whose new formula names its consequent half). Both sides are used so
/// same-label implications sharing an antecedent cannot be confused.
fn imp_l_principal(
    conc: &LabeledSequent,
    left_prem: &LabeledSequent,
    right_prem: &LabeledSequent,
    classical: bool,
) -> Option<(Label, Formula)> {
    let (x, goal) = &left_prem.succedent;
    conc.antecedent
        .iter()
        .find(|(l, f)| {
            if l != x {
                return false;
            }
            let (a, b) = match (classical, f) {
                (false, Formula::ImpI(a, b)) | (true, Formula::ImpC(a, b)) => (a, b),
                _ => return false,
            };
            if **a != *goal {
                return false;
            }
            // The right premise must be the conclusion minus this occurrence
            // plus the consequent at the same label.
            conc.remove_one(&(l.clone(), f.clone())).is_some_and(|rest| {
                let mut expected = rest.with_formulas([(l.clone(), (**b).clone())]);
                expected.succedent = right_prem.succedent.clone();
                right_prem.multiset_eq(&expected)
            })
        })
        .cloned()
}

fn neg_l_principal(conc: &LabeledSequent, prem: &LabeledSequent) -> Option<(Label, Formula)> {
    let (x, goal) = &prem.succedent;
    conc.antecedent
        .iter()
        .find(|(l, f)| l == x && matches!(f, Formula::Neg(a) if **a == *goal))
        .cloned()
}

/// The labeled formula added by a premise (for `box_l`).
fn formula_added(conc: &LabeledSequent, prem: &LabeledSequent) -> Option<(Label, Formula)> {
    let mut conc_items = conc.antecedent.clone();
    let mut added = None;
    for item in &prem.antecedent {
        if let Some(idx) = conc_items.iter().position(|i| i == item) {
            conc_items.remove(idx);
        } else {
            added = Some(item.clone());
        }
    }
    added
}

/// The relational atom added by a premise (for the eigenlabel rules).
fn rel_added(conc: &LabeledSequent, prem: &LabeledSequent) -> Option<(Label, Label)> {
    let mut conc_rel = conc.rel_atoms.clone();
    let mut added = None;
    for item in &prem.rel_atoms {
        if let Some(idx) = conc_rel.iter().position(|i| i == item) {
            conc_rel.remove(idx);
        } else {
            added = Some(item.clone());
        }
    }
    added
}
