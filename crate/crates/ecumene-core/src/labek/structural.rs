//! Height-preserving structural transformations on labeled proofs:
//! weakening, label renaming and substitution, contraction of relational
//! atoms and formulas, and the left-rule inversions contraction needs.
//! These are the executable counterparts of the admissibility lemmas the
//! cut-elimination rewriting relies on.

use std::collections::{BTreeMap, BTreeSet};

use crate::formula::{Formula, Label};
use crate::proof::{LabekProof, LabekRule, ProofNode};
use crate::sequent::LabeledSequent;

/// All labels occurring anywhere in the tree.
pub fn subtree_labels(p: &LabekProof) -> BTreeSet<Label> {
    let mut out = BTreeSet::new();
    collect(p, &mut out);
    out
}

fn collect(p: &LabekProof, out: &mut BTreeSet<Label>) {
    out.extend(p.conclusion.labels());
    for prem in &p.premises {
        collect(prem, out);
    }
}

/// Apply a label mapping to every sequent in the tree. Correctness is the
/// caller's concern (injective renamings always preserve validity).
pub fn rename_labels(p: &LabekProof, map: &BTreeMap<Label, Label>) -> LabekProof {
    let rename = |l: &Label| map.get(l).cloned().unwrap_or_else(|| l.clone());
    let conclusion = LabeledSequent::new(
        p.conclusion
            .rel_atoms
            .iter()
            .map(|(a, b)| (rename(a), rename(b)))
            .collect(),
        p.conclusion
            .antecedent
            .iter()
            .map(|(l, f)| (rename(l), f.clone()))
            .collect(),
        (rename(&p.conclusion.succedent.0), p.conclusion.succedent.1.clone()),
    );
    let premises = p
        .premises
        .iter()
        .map(|prem| rename_labels(prem, map))
        .collect();
    let mut node = ProofNode::new(p.rule, conclusion, premises);
    node.instantiation = p.instantiation.clone();
    if let Some(inst) = &mut node.instantiation {
        if let Some(e) = &inst.eigen {
            inst.eigen = Some(rename(&Label::new(e.clone())).0);
        }
    }
    node
}

/// The eigenlabel a node introduces, if its rule has one.
fn eigenlabel(p: &LabekProof) -> Option<Label> {
    match p.rule {
        LabekRule::BoxR | LabekRule::DiaIL | LabekRule::DiaCL => {
            let conc = p.conclusion.labels();
            p.premises
                .first()?
                .conclusion
                .labels()
                .into_iter()
                .find(|l| !conc.contains(l))
        }
        _ => None,
    }
}

/// Rename eigenlabels clashing with `avoid` so the proof can be weakened by
/// (or substituted with) labels from `avoid` without breaking freshness.
pub fn freshen_eigenlabels(p: &LabekProof, avoid: &BTreeSet<Label>) -> LabekProof {
    let mut premises: Vec<LabekProof> = p.premises.clone();
    if let Some(y) = eigenlabel(p) {
        if avoid.contains(&y) {
            let mut used = avoid.clone();
            used.extend(subtree_labels(p));
            let fresh = crate::formula::fresh_label("y", &used);
            let map = BTreeMap::from([(y, fresh)]);
            premises = premises
                .iter()
                .map(|prem| rename_labels(prem, &map))
                .collect();
        }
    }
    let premises = premises
        .iter()
        .map(|prem| freshen_eigenlabels(prem, avoid))
        .collect();
    let mut node = ProofNode::new(p.rule, p.conclusion.clone(), premises);
    node.instantiation = p.instantiation.clone();
    node
}

/// Admissible weakening: add relational atoms and labeled formulas to every
/// antecedent. Eigenlabels are freshened against the added labels first.
pub fn weaken(
    p: &LabekProof,
    rels: &[(Label, Label)],
    formulas: &[(Label, Formula)],
) -> LabekProof {
    let mut avoid = BTreeSet::new();
    for (a, b) in rels {
        avoid.insert(a.clone());
        avoid.insert(b.clone());
    }
    for (l, _) in formulas {
        avoid.insert(l.clone());
    }
    let fresh = freshen_eigenlabels(p, &avoid);
    add_everywhere(&fresh, rels, formulas)
}

fn add_everywhere(
    p: &LabekProof,
    rels: &[(Label, Label)],
    formulas: &[(Label, Formula)],
) -> LabekProof {
    let mut conclusion = p.conclusion.clone();
    conclusion.rel_atoms.extend(rels.iter().cloned());
    conclusion.antecedent.extend(formulas.iter().cloned());
    let premises = p
        .premises
        .iter()
        .map(|prem| add_everywhere(prem, rels, formulas))
        .collect();
    let mut node = ProofNode::new(p.rule, conclusion, premises);
    node.instantiation = p.instantiation.clone();
    node
}

/// Admissible label substitution `from := to` (non-injective allowed).
/// Eigenlabels are freshened against both names first, so only free labels
/// are affected.
pub fn subst_label(p: &LabekProof, from: &Label, to: &Label) -> LabekProof {
    if from == to {
        return p.clone();
    }
    let avoid: BTreeSet<Label> = [from.clone(), to.clone()].into();
    let fresh = freshen_eigenlabels(p, &avoid);
    rename_labels(&fresh, &BTreeMap::from([(from.clone(), to.clone())]))
}

/// Contraction of a duplicated relational atom: relational atoms persist
/// upward through every rule, so one copy can be dropped from every sequent.
/// Requires at least two copies at the root.
pub fn contract_rel(p: &LabekProof, atom: &(Label, Label)) -> LabekProof {
    debug_assert!(
        p.conclusion.rel_atoms.iter().filter(|r| *r == atom).count() >= 2,
        "contract_rel needs a duplicate"
    );
    drop_rel_everywhere(p, atom)
}

fn drop_rel_everywhere(p: &LabekProof, atom: &(Label, Label)) -> LabekProof {
    let mut conclusion = p.conclusion.clone();
    if let Some(idx) = conclusion.rel_atoms.iter().position(|r| r == atom) {
        conclusion.rel_atoms.remove(idx);
    }
    let premises = p
        .premises
        .iter()
        .map(|prem| drop_rel_everywhere(prem, atom))
        .collect();
    let mut node = ProofNode::new(p.rule, conclusion, premises);
    node.instantiation = p.instantiation.clone();
    node
}

/// Admissible contraction: a proof of `item, item, Γ |- s` becomes a proof
/// of `item, Γ |- s`. Implemented by the standard induction, inverting the
/// consuming left rules where the contracted formula was principal.
pub fn contract(p: &LabekProof, item: &(Label, Formula)) -> LabekProof {
    let count = p
        .conclusion
        .antecedent
        .iter()
        .filter(|i| *i == item)
        .count();
    debug_assert!(count >= 2, "contract needs a duplicate of {item:?}");
    let conclusion = p.conclusion.remove_one(item).expect("duplicate present");

    // Is the principal of the last rule (if any) our item?
    let principal_is_item = principal_matches(p, item);

    if !principal_is_item {
        // Context case: both copies persist into every premise.
        let premises = p.premises.iter().map(|prem| contract(prem, item)).collect();
        let mut node = ProofNode::new(p.rule, conclusion, premises);
        node.instantiation = p.instantiation.clone();
        return node;
    }

    match p.rule {
        // Principal kept in the premises: contract there and reapply.
        LabekRule::NegL | LabekRule::BoxL => {
            let premises = p.premises.iter().map(|prem| contract(prem, item)).collect();
            let mut node = ProofNode::new(p.rule, conclusion, premises);
            node.instantiation = p.instantiation.clone();
            node
        }
        LabekRule::ImpIL | LabekRule::ImpCL => {
            // Left premise keeps the principal: contract it. Right premise
            // holds the leftover copy next to B: invert it away, then
            // contract the duplicated B.
            let (x, f) = item.clone();
            let b = match &f {
                Formula::ImpI(_, b) | Formula::ImpC(_, b) => (**b).clone(),
                _ => unreachable!("principal shape checked"),
            };
            let left = contract(&p.premises[0], item);
            let right_inverted = invert_imp_right(&p.premises[1], item);
            let right = contract(&right_inverted, &(x, b));
            let mut node = ProofNode::new(p.rule, conclusion, vec![left, right]);
            node.instantiation = p.instantiation.clone();
            node
        }
        // Principal consumed: invert the leftover copy in each premise,
        // contract the duplicated pieces, reapply.
        LabekRule::AndL => {
            let (x, f) = item.clone();
            let Formula::And(a, b) = &f else { unreachable!() };
            let inv = invert_and(&p.premises[0], item);
            let c1 = contract(&inv, &(x.clone(), (**a).clone()));
            let c2 = contract(&c1, &(x.clone(), (**b).clone()));
            let mut node = ProofNode::new(p.rule, conclusion, vec![c2]);
            node.instantiation = p.instantiation.clone();
            node
        }
        LabekRule::OrIL | LabekRule::OrCL => {
            let (x, f) = item.clone();
            let (a, b) = match &f {
                Formula::OrI(a, b) | Formula::OrC(a, b) => ((**a).clone(), (**b).clone()),
                _ => unreachable!(),
            };
            let inv_a = invert_or(&p.premises[0], item, true);
            let left = contract(&inv_a, &(x.clone(), a));
            let inv_b = invert_or(&p.premises[1], item, false);
            let right = contract(&inv_b, &(x.clone(), b));
            let mut node = ProofNode::new(p.rule, conclusion, vec![left, right]);
            node.instantiation = p.instantiation.clone();
            node
        }
        LabekRule::DiaIL | LabekRule::DiaCL => {
            let (x, f) = item.clone();
            let a = match &f {
                Formula::DiaI(a) | Formula::DiaC(a) => (**a).clone(),
                _ => unreachable!(),
            };
            // The premise used eigenlabel y; invert the leftover copy at a
            // fresh label y2, collapse y2 onto y, contract the duplicates.
            let prem = &p.premises[0];
            let y = eigenlabel(p).expect("diamond-left has an eigenlabel");
            let mut used = subtree_labels(p);
            used.extend([x.clone(), y.clone()]);
            let y2 = crate::formula::fresh_label("y", &used);
            let inverted = invert_diamond(prem, item, &y2);
            let collapsed = subst_label(&inverted, &y2, &y);
            let contracted_rel = contract_rel(&collapsed, &(x.clone(), y.clone()));
            let contracted = contract(&contracted_rel, &(y.clone(), a));
            let mut node = ProofNode::new(p.rule, conclusion, vec![contracted]);
            node.instantiation = p.instantiation.clone();
            node
        }
        LabekRule::Lc => {
            let (x, f) = item.clone();
            let Formula::ClAtom(n, args) = &f else { unreachable!() };
            let inv = invert_lc(&p.premises[0], item);
            let c = contract(&inv, &(x, Formula::IntAtom(n.clone(), args.clone())));
            let mut node = ProofNode::new(p.rule, conclusion, vec![c]);
            node.instantiation = p.instantiation.clone();
            node
        }
        _ => {
            // Rules without a formula principal never reach here.
            let premises = p.premises.iter().map(|prem| contract(prem, item)).collect();
            let mut node = ProofNode::new(p.rule, conclusion, premises);
            node.instantiation = p.instantiation.clone();
            node
        }
    }
}

/// Whether the last rule's principal formula equals `item`.
pub fn principal_matches(p: &LabekProof, item: &(Label, Formula)) -> bool {
    let (x, f) = item;
    match p.rule {
        LabekRule::AndL
        | LabekRule::OrIL
        | LabekRule::OrCL
        | LabekRule::DiaIL
        | LabekRule::DiaCL
        | LabekRule::Lc => {
            // Consumed: appears once less in the first premise.
            let in_conc = p.conclusion.antecedent.iter().filter(|i| *i == item).count();
            let in_prem = p.premises[0]
                .conclusion
                .antecedent
                .iter()
                .filter(|i| *i == item)
                .count();
            in_prem < in_conc
        }
        LabekRule::NegL => {
            matches!(&f, Formula::Neg(a) if p.premises[0].conclusion.succedent == (x.clone(), (**a).clone()))
        }
        LabekRule::ImpIL => {
            matches!(&f, Formula::ImpI(a, _) if p.premises[0].conclusion.succedent == (x.clone(), (**a).clone()))
                && count_drops(p, item)
        }
        LabekRule::ImpCL => {
            matches!(&f, Formula::ImpC(a, _) if p.premises[0].conclusion.succedent == (x.clone(), (**a).clone()))
                && count_drops(p, item)
        }
        LabekRule::BoxL => {
            // Kept, but recognizable: the one formula the premise adds is
            // this box's body at an R-successor of this label.
            match &f {
                Formula::Box(a) => {
                    let mut rest = p.premises[0].conclusion.antecedent.clone();
                    for i in &p.conclusion.antecedent {
                        if let Some(idx) = rest.iter().position(|j| j == i) {
                            rest.remove(idx);
                        }
                    }
                    match rest.as_slice() {
                        [(y, g)] => g == &**a && p.conclusion.has_rel(x, y),
                        _ => false,
                    }
                }
                _ => false,
            }
        }
        _ => false,
    }
}

/// For implication-left rules: the right premise drops the principal.
fn count_drops(p: &LabekProof, item: &(Label, Formula)) -> bool {
    let in_conc = p.conclusion.antecedent.iter().filter(|i| *i == item).count();
    let in_right = p.premises[1]
        .conclusion
        .antecedent
        .iter()
        .filter(|i| *i == item)
        .count();
    in_right < in_conc
}

// ---------------------------------------------------------------------------
// Inversions: occurrence replacement by structural induction. Each follows
// the same scheme: if the last rule consumed the target occurrence, use its
// premise; if an initial rule closed on the target, rebuild the leaf over
// the replaced sequent; otherwise push into the premises and reapply.
// ---------------------------------------------------------------------------

struct Inversion<'a> {
    /// Occurrence being replaced.
    item: &'a (Label, Formula),
    /// Its replacement: relational atoms and labeled formulas.
    rels: Vec<(Label, Label)>,
    formulas: Vec<(Label, Formula)>,
}

impl Inversion<'_> {
    fn replace(&self, s: &LabeledSequent) -> LabeledSequent {
        let mut out = s.remove_one(self.item).expect("occurrence present");
        out.rel_atoms.extend(self.rels.iter().cloned());
        out.antecedent.extend(self.formulas.iter().cloned());
        out
    }

    /// Generic traversal. `on_principal` fires when the last rule consumes
    /// the (sole) target occurrence; `rebuild_init` when an init closes on
    /// it and no other copy can serve.
    fn run(
        &self,
        p: &LabekProof,
        on_principal: &impl Fn(&Self, &LabekProof) -> LabekProof,
        rebuild_init: &impl Fn(&Self, LabeledSequent) -> LabekProof,
    ) -> LabekProof {
        let count = p
            .conclusion
            .antecedent
            .iter()
            .filter(|i| *i == self.item)
            .count();
        debug_assert!(count >= 1, "inversion target must occur");

        if count == 1 && principal_matches(p, self.item) {
            return on_principal(self, p);
        }
        if p.rule == LabekRule::Init && p.conclusion.succedent == *self.item && count == 1 {
            return rebuild_init(self, self.replace(&p.conclusion));
        }
        // Context case: the occurrence persists into every premise (when
        // several copies exist and one was principal, a surviving copy is
        // the occurrence).
        let conclusion = self.replace(&p.conclusion);
        let premises = p
            .premises
            .iter()
            .map(|prem| self.run(prem, on_principal, rebuild_init))
            .collect();
        let mut node = ProofNode::new(p.rule, conclusion, premises);
        node.instantiation = p.instantiation.clone();
        node
    }
}

/// From `x:A/\B, Γ |- s` to `x:A, x:B, Γ |- s`.
pub fn invert_and(p: &LabekProof, item: &(Label, Formula)) -> LabekProof {
    let (x, f) = item;
    let Formula::And(a, b) = f else {
        panic!("invert_and on non-conjunction")
    };
    let avoid: BTreeSet<Label> = [x.clone()].into();
    let p = freshen_eigenlabels(p, &avoid);
    let inv = Inversion {
        item,
        rels: vec![],
        formulas: vec![(x.clone(), (**a).clone()), (x.clone(), (**b).clone())],
    };
    inv.run(
        &p,
        &|_, node| node.premises[0].clone(),
        &|inv, seq| {
            // x:A, x:B, Γ |- x:A/\B closes by and_r over two inits.
            let (x, f) = inv.item;
            let Formula::And(a, b) = f else { unreachable!() };
            let left = ProofNode::new(
                LabekRule::Init,
                seq.with_succedent((x.clone(), (**a).clone())),
                vec![],
            );
            let right = ProofNode::new(
                LabekRule::Init,
                seq.with_succedent((x.clone(), (**b).clone())),
                vec![],
            );
            ProofNode::new(LabekRule::AndR, seq, vec![left, right])
        },
    )
}

/// From `x:A v B, Γ |- s` to `x:A, Γ |- s` (`left`) or `x:B, Γ |- s`.
/// Handles both disjunction flavors.
pub fn invert_or(p: &LabekProof, item: &(Label, Formula), left: bool) -> LabekProof {
    let (x, f) = item;
    let (a, b, classical) = match f {
        Formula::OrI(a, b) => (a, b, false),
        Formula::OrC(a, b) => (a, b, true),
        _ => panic!("invert_or on non-disjunction"),
    };
    let picked = if left { (**a).clone() } else { (**b).clone() };
    let avoid: BTreeSet<Label> = [x.clone()].into();
    let p = freshen_eigenlabels(p, &avoid);
    let inv = Inversion {
        item,
        rels: vec![],
        formulas: vec![(x.clone(), picked)],
    };
    inv.run(
        &p,
        &|_, node| node.premises[if left { 0 } else { 1 }].clone(),
        &|inv, seq| {
            let (x, f) = inv.item;
            if classical {
                // x:picked, Γ |- x:AvcB via or_c_r then neg_l/init.
                let (na, nb) = match f {
                    Formula::OrC(a, b) => (
                        Formula::neg((**a).clone()),
                        Formula::neg((**b).clone()),
                    ),
                    _ => unreachable!(),
                };
                let s1 = seq
                    .with_formulas([(x.clone(), na.clone()), (x.clone(), nb.clone())])
                    .with_succedent((x.clone(), Formula::Bottom));
                let target = if left { na } else { nb };
                let Formula::Neg(body) = &target else { unreachable!() };
                let s2 = s1.with_succedent((x.clone(), (**body).clone()));
                let init = ProofNode::new(LabekRule::Init, s2, vec![]);
                let negl = ProofNode::new(LabekRule::NegL, s1, vec![init]);
                ProofNode::new(LabekRule::OrCR, seq, vec![negl])
            } else {
                let rule = if left { LabekRule::OrIR1 } else { LabekRule::OrIR2 };
                let picked = match f {
                    Formula::OrI(a, b) => if left { (**a).clone() } else { (**b).clone() },
                    _ => unreachable!(),
                };
                let init = ProofNode::new(
                    LabekRule::Init,
                    seq.with_succedent((x.clone(), picked)),
                    vec![],
                );
                ProofNode::new(rule, seq, vec![init])
            }
        },
    )
}

/// From `x:dia A, Γ |- s` to `x R y, y:A, Γ |- s` for a label `y` fresh to
/// the whole proof. Handles both diamond flavors.
pub fn invert_diamond(p: &LabekProof, item: &(Label, Formula), y: &Label) -> LabekProof {
    let (x, f) = item;
    let (a, classical) = match f {
        Formula::DiaI(a) => ((**a).clone(), false),
        Formula::DiaC(a) => ((**a).clone(), true),
        _ => panic!("invert_diamond on non-diamond"),
    };
    let avoid: BTreeSet<Label> = [x.clone(), y.clone()].into();
    let p = freshen_eigenlabels(p, &avoid);
    let inv = Inversion {
        item,
        rels: vec![(x.clone(), y.clone())],
        formulas: vec![(y.clone(), a.clone())],
    };
    inv.run(
        &p,
        &|inv, node| {
            // Rename the rule's eigenlabel to the requested y.
            let y0 = eigenlabel(node).expect("diamond-left has an eigenlabel");
            let _ = inv;
            subst_label(&node.premises[0], &y0, y)
        },
        &|inv, seq| {
            let (x, f) = inv.item;
            if classical {
                // x R y, y:A, Γ |- x:dia_c A:
                // dia_c_r; box_l on box ~A along x R y; W to y; neg_l; init.
                let Formula::DiaC(a) = f else { unreachable!() };
                let box_neg = Formula::boxed(Formula::neg((**a).clone()));
                let s1 = seq
                    .with_formulas([(x.clone(), box_neg)])
                    .with_succedent((x.clone(), Formula::Bottom));
                let s2 = s1.with_formulas([(y.clone(), Formula::neg((**a).clone()))]);
                let s3 = s2.with_succedent((y.clone(), Formula::Bottom));
                let s4 = s3.with_succedent((y.clone(), (**a).clone()));
                let init = ProofNode::new(LabekRule::Init, s4, vec![]);
                let negl = ProofNode::new(LabekRule::NegL, s3, vec![init]);
                let w = ProofNode::new(LabekRule::W, s2, vec![negl]);
                let boxl = ProofNode::new(LabekRule::BoxL, s1, vec![w]);
                ProofNode::new(LabekRule::DiaCR, seq, vec![boxl])
            } else {
                let Formula::DiaI(a) = f else { unreachable!() };
                let init = ProofNode::new(
                    LabekRule::Init,
                    seq.with_succedent((y.clone(), (**a).clone())),
                    vec![],
                );
                ProofNode::new(LabekRule::DiaIR, seq, vec![init])
            }
        },
    )
}

/// From `x:P_c, Γ |- s` to `x:P_i, Γ |- s`.
pub fn invert_lc(p: &LabekProof, item: &(Label, Formula)) -> LabekProof {
    let (x, f) = item;
    let Formula::ClAtom(n, args) = f else {
        panic!("invert_lc on non-classical atom")
    };
    let avoid: BTreeSet<Label> = [x.clone()].into();
    let p = freshen_eigenlabels(p, &avoid);
    let inv = Inversion {
        item,
        rels: vec![],
        formulas: vec![(x.clone(), Formula::IntAtom(n.clone(), args.clone()))],
    };
    inv.run(
        &p,
        &|_, node| node.premises[0].clone(),
        &|inv, seq| {
            // x:P_i, Γ |- x:P_c via r_c; neg_l; init.
            let (x, f) = inv.item;
            let Formula::ClAtom(n, args) = f else { unreachable!() };
            let p_i = Formula::IntAtom(n.clone(), args.clone());
            let s1 = seq
                .with_formulas([(x.clone(), Formula::neg(p_i.clone()))])
                .with_succedent((x.clone(), Formula::Bottom));
            let s2 = s1.with_succedent((x.clone(), p_i));
            let init = ProofNode::new(LabekRule::Init, s2, vec![]);
            let negl = ProofNode::new(LabekRule::NegL, s1, vec![init]);
            ProofNode::new(LabekRule::Rc, seq, vec![negl])
        },
    )
}

/// Right-premise inversion of the implication-left rules: from
/// `x:A -> B, Γ |- s` to `x:B, Γ |- s`. Handles both flavors; for the
/// classical rule the premise's bottom label is redirected with weakening.
pub fn invert_imp_right(p: &LabekProof, item: &(Label, Formula)) -> LabekProof {
    let (x, f) = item;
    let b = match f {
        Formula::ImpI(_, b) | Formula::ImpC(_, b) => (**b).clone(),
        _ => panic!("invert_imp_right on non-implication"),
    };
    let avoid: BTreeSet<Label> = [x.clone()].into();
    let p = freshen_eigenlabels(p, &avoid);
    let inv = Inversion {
        item,
        rels: vec![],
        formulas: vec![(x.clone(), b)],
    };
    inv.run(
        &p,
        &|inv, node| {
            let right = node.premises[1].clone();
            match inv.item.1 {
                Formula::ImpC(..) => {
                    // Right premise concludes bottom at an arbitrary label;
                    // the conclusion wants it at the rule's label.
                    let want = node.conclusion.succedent.clone();
                    if right.conclusion.succedent == want {
                        right
                    } else {
                        let target = right.conclusion.with_succedent(want);
                        ProofNode::new(LabekRule::W, target, vec![right])
                    }
                }
                _ => right,
            }
        },
        &|inv, seq| {
            let (x, f) = inv.item;
            match f {
                Formula::ImpI(a, b) => {
                    // x:B, Γ |- x:A->iB via imp_i_r then init.
                    let s1 = seq
                        .with_formulas([(x.clone(), (**a).clone())])
                        .with_succedent((x.clone(), (**b).clone()));
                    let init = ProofNode::new(LabekRule::Init, s1, vec![]);
                    ProofNode::new(LabekRule::ImpIR, seq, vec![init])
                }
                Formula::ImpC(a, b) => {
                    // x:B, Γ |- x:A->cB via imp_c_r; neg_l on ~B; init.
                    let s1 = seq
                        .with_formulas([
                            (x.clone(), (**a).clone()),
                            (x.clone(), Formula::neg((**b).clone())),
                        ])
                        .with_succedent((x.clone(), Formula::Bottom));
                    let s2 = s1.with_succedent((x.clone(), (**b).clone()));
                    let init = ProofNode::new(LabekRule::Init, s2, vec![]);
                    let negl = ProofNode::new(LabekRule::NegL, s1, vec![init]);
                    ProofNode::new(LabekRule::ImpCR, seq, vec![negl])
                }
                _ => unreachable!(),
            }
        },
    )
}
