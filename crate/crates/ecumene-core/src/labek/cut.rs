//! Stepwise cut elimination for labeled proofs. Each step rewrites the
//! topmost cut into zero or more cuts that are strictly smaller in the
//! lexicographic measure (ecumenical weight of the cut formula, combined
//! premise height): principal cuts reduce the weight, parametric cuts
//! permute upward and reduce the height.

use std::collections::BTreeSet;

use thiserror::Error;

use super::structural::{
    contract, contract_rel, freshen_eigenlabels, subst_label, subtree_labels, weaken,
};
use super::{check_labek_proof, CheckError, Theory};
use crate::formula::{Formula, Label};
use crate::proof::{path_string, LabekProof, LabekRule, ProofNode};
use crate::sequent::LabeledSequent;

/// (ecumenical weight of cut formula, height of left premise + height of
/// right premise).
pub type CutMeasure = (u64, usize);

#[derive(Debug, Clone)]
pub struct CutStep {
    pub proof: LabekProof,
    pub eliminated: CutMeasure,
    /// Measures of the cuts the rewrite introduced; each is strictly
    /// smaller than `eliminated` lexicographically.
    pub introduced: Vec<CutMeasure>,
}

#[derive(Debug, Clone, Error)]
pub enum CutError {
    #[error("proof contains no cut")]
    NoCut,
    #[error("more than one topmost cut; eliminate them one at a time")]
    MultipleTopmost,
    #[error("proof does not check with cut allowed: {0}")]
    Invalid(#[from] CheckError),
    #[error("unsupported cut at {}: {reason}", path_string(.path))]
    Unsupported { path: Vec<usize>, reason: String },
    #[error("rewrite produced an invalid proof at {}: {1}", path_string(.0))]
    Internal(Vec<usize>, CheckError),
    #[error("cut elimination did not terminate within {0} steps")]
    StepLimit(usize),
}

/// Rewrite the unique topmost cut (a cut with cut-free premises) one step.
pub fn eliminate_cut_step(p: &LabekProof, th: &Theory) -> Result<CutStep, CutError> {
    check_labek_proof(p, th, true)?;
    let mut paths = Vec::new();
    topmost_cuts(p, &mut Vec::new(), &mut paths);
    let path = match paths.as_slice() {
        [] => return Err(CutError::NoCut),
        [one] => one.clone(),
        _ => return Err(CutError::MultipleTopmost),
    };
    let node = node_at(p, &path);
    let eliminated = (
        node.premises[0].conclusion.succedent.1.ew(),
        node.premises[0].height() + node.premises[1].height(),
    );
    let mut introduced = Vec::new();
    let reduced = reduce(node, &path, &mut introduced)?;
    let proof = replace_at(p, &path, reduced);
    if let Err(e) = check_labek_proof(&proof, th, true) {
        return Err(CutError::Internal(path, e));
    }
    Ok(CutStep {
        proof,
        eliminated,
        introduced,
    })
}

/// Iterate `eliminate_cut_step` to a cut-free proof.
pub fn eliminate_cuts(
    p: &LabekProof,
    th: &Theory,
    max_steps: usize,
) -> Result<(LabekProof, Vec<CutStep>), CutError> {
    let mut current = p.clone();
    let mut steps = Vec::new();
    for _ in 0..max_steps {
        if current.cut_free() {
            return Ok((current, steps));
        }
        let step = eliminate_cut_step(&current, th)?;
        current = step.proof.clone();
        steps.push(step);
    }
    if current.cut_free() {
        Ok((current, steps))
    } else {
        Err(CutError::StepLimit(max_steps))
    }
}

fn topmost_cuts(p: &LabekProof, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if p.rule == LabekRule::Cut && p.premises.iter().all(|q| q.cut_free()) {
        out.push(path.clone());
        return;
    }
    for (i, prem) in p.premises.iter().enumerate() {
        path.push(i);
        topmost_cuts(prem, path, out);
        path.pop();
    }
}

fn node_at<'a>(p: &'a LabekProof, path: &[usize]) -> &'a LabekProof {
    path.iter().fold(p, |n, i| &n.premises[*i])
}

fn replace_at(p: &LabekProof, path: &[usize], new: LabekProof) -> LabekProof {
    match path.split_first() {
        None => new,
        Some((i, rest)) => {
            let mut node = p.clone();
            node.premises[*i] = replace_at(&p.premises[*i], rest, new);
            node
        }
    }
}

/// Build a cut node over shared context, recording its measure.
fn make_cut(left: LabekProof, right: LabekProof, intro: &mut Vec<CutMeasure>) -> LabekProof {
    intro.push((
        left.conclusion.succedent.1.ew(),
        left.height() + right.height(),
    ));
    let conclusion = LabeledSequent::new(
        left.conclusion.rel_atoms.clone(),
        left.conclusion.antecedent.clone(),
        right.conclusion.succedent.clone(),
    );
    ProofNode::new(LabekRule::Cut, conclusion, vec![left, right])
}

fn unary(rule: LabekRule, conclusion: LabeledSequent, premise: LabekProof) -> LabekProof {
    ProofNode::new(rule, conclusion, vec![premise])
}

/// Multiset differences between a conclusion and one premise.
struct Delta {
    consumed: Vec<(Label, Formula)>,
    added: Vec<(Label, Formula)>,
    added_rels: Vec<(Label, Label)>,
}

fn delta(conc: &LabeledSequent, prem: &LabeledSequent) -> Delta {
    let mut consumed = Vec::new();
    let mut prem_f = prem.antecedent.clone();
    for item in &conc.antecedent {
        if let Some(idx) = prem_f.iter().position(|i| i == item) {
            prem_f.remove(idx);
        } else {
            consumed.push(item.clone());
        }
    }
    let mut added_rels = prem.rel_atoms.clone();
    for r in &conc.rel_atoms {
        if let Some(idx) = added_rels.iter().position(|s| s == r) {
            added_rels.remove(idx);
        }
    }
    Delta {
        consumed,
        added: prem_f,
        added_rels,
    }
}

fn right_rule_for(f: &Formula, rule: LabekRule) -> bool {
    matches!(
        (f, rule),
        (Formula::And(..), LabekRule::AndR)
            | (Formula::OrI(..), LabekRule::OrIR1)
            | (Formula::OrI(..), LabekRule::OrIR2)
            | (Formula::OrC(..), LabekRule::OrCR)
            | (Formula::ImpI(..), LabekRule::ImpIR)
            | (Formula::ImpC(..), LabekRule::ImpCR)
            | (Formula::Neg(..), LabekRule::NegR)
            | (Formula::ClAtom(..), LabekRule::Rc)
            | (Formula::Box(..), LabekRule::BoxR)
            | (Formula::DiaI(..), LabekRule::DiaIR)
            | (Formula::DiaC(..), LabekRule::DiaCR)
    )
}

fn reduce(
    cut: &LabekProof,
    path: &[usize],
    intro: &mut Vec<CutMeasure>,
) -> Result<LabekProof, CutError> {
    let conclusion = cut.conclusion.clone();
    let cf = cut.premises[0].conclusion.succedent.clone();

    // Make eigenlabels in the two subtrees fresh for each other.
    let mut avoid: BTreeSet<Label> = conclusion.labels();
    avoid.extend(subtree_labels(&cut.premises[1]));
    let p1 = freshen_eigenlabels(&cut.premises[0], &avoid);
    let mut avoid2: BTreeSet<Label> = conclusion.labels();
    avoid2.extend(subtree_labels(&p1));
    let p2 = freshen_eigenlabels(&cut.premises[1], &avoid2);

    let unsupported = |reason: &str| CutError::Unsupported {
        path: path.to_vec(),
        reason: reason.to_string(),
    };

    // Cut on bottom: weakening absorbs it outright.
    if cf.1 == Formula::Bottom {
        return Ok(unary(LabekRule::W, conclusion, p1));
    }

    // Axiom / leaf / weakening cases on the left premise.
    match p1.rule {
        LabekRule::Init => {
            // The cut formula already occurs in the context.
            return Ok(contract(&p2, &cf));
        }
        LabekRule::Bot => {
            return Ok(ProofNode::new(LabekRule::Bot, conclusion, vec![]));
        }
        LabekRule::W => {
            return Ok(unary(LabekRule::W, conclusion, p1.premises[0].clone()));
        }
        LabekRule::Axiom => {
            return Err(unsupported(
                "cut against an axiom leaf is the theory mechanism and is not eliminable",
            ));
        }
        _ => {}
    }

    // Leaf / weakening cases on the right premise.
    match p2.rule {
        LabekRule::Init => {
            if p2.conclusion.succedent == cf {
                return Ok(p1);
            }
            return Ok(ProofNode::new(LabekRule::Init, conclusion, vec![]));
        }
        LabekRule::Bot => {
            return Ok(ProofNode::new(LabekRule::Bot, conclusion, vec![]));
        }
        LabekRule::Axiom => {
            let mut leaf = ProofNode::new(LabekRule::Axiom, conclusion, vec![]);
            leaf.instantiation = p2.instantiation.clone();
            return Ok(leaf);
        }
        LabekRule::W => {
            let inner = make_cut(p1, p2.premises[0].clone(), intro);
            return Ok(unary(LabekRule::W, conclusion, inner));
        }
        _ => {}
    }

    if super::structural::principal_matches(&p2, &cf) {
        if right_rule_for(&cf.1, p1.rule) {
            principal_reduction(&conclusion, &cf, &p1, &p2, intro, &unsupported)
        } else {
            permute_left(&conclusion, &cf, &p1, &p2, intro, &unsupported)
        }
    } else {
        permute_right(&conclusion, &cf, &p1, &p2, intro, &unsupported)
    }
}

fn principal_reduction(
    _conclusion: &LabeledSequent,
    cf: &(Label, Formula),
    p1: &LabekProof,
    p2: &LabekProof,
    intro: &mut Vec<CutMeasure>,
    unsupported: &impl Fn(&str) -> CutError,
) -> Result<LabekProof, CutError> {
    let x = cf.0.clone();
    match &cf.1 {
        Formula::And(_, _) => {
            let (pa, pb) = (p1.premises[0].clone(), p1.premises[1].clone());
            let p2i = p2.premises[0].clone();
            let a1 = pa.conclusion.succedent.clone();
            let left = weaken(&pb, &[], std::slice::from_ref(&a1));
            let inner = make_cut(left, p2i, intro);
            Ok(make_cut(pa, inner, intro))
        }
        Formula::OrI(_, _) => {
            let branch = if p1.rule == LabekRule::OrIR1 { 0 } else { 1 };
            Ok(make_cut(
                p1.premises[0].clone(),
                p2.premises[branch].clone(),
                intro,
            ))
        }
        Formula::ImpI(_, _) => {
            let d1 = make_cut(p1.clone(), p2.premises[0].clone(), intro);
            let d2 = make_cut(d1, p1.premises[0].clone(), intro);
            Ok(make_cut(d2, p2.premises[1].clone(), intro))
        }
        Formula::Neg(_) => {
            let d1 = make_cut(p1.clone(), p2.premises[0].clone(), intro);
            Ok(make_cut(d1, p1.premises[0].clone(), intro))
        }
        Formula::OrC(a, _) => {
            let na = (x.clone(), Formula::neg((**a).clone()));
            let d1 = unary(
                LabekRule::NegR,
                p2.premises[0]
                    .conclusion
                    .remove_one(&(x.clone(), (**a).clone()))
                    .ok_or_else(|| unsupported("or_c_l premise lost its assumption"))?
                    .with_succedent(na.clone()),
                p2.premises[0].clone(),
            );
            let b = match &cf.1 {
                Formula::OrC(_, b) => (**b).clone(),
                _ => unreachable!(),
            };
            let d2 = unary(
                LabekRule::NegR,
                p2.premises[1]
                    .conclusion
                    .remove_one(&(x.clone(), b.clone()))
                    .ok_or_else(|| unsupported("or_c_l premise lost its assumption"))?
                    .with_succedent((x.clone(), Formula::neg(b))),
                p2.premises[1].clone(),
            );
            let d3 = make_cut(weaken(&d2, &[], &[na]), p1.premises[0].clone(), intro);
            Ok(make_cut(d1, d3, intro))
        }
        Formula::ImpC(a, b) => {
            let d1 = make_cut(p1.clone(), p2.premises[0].clone(), intro);
            let right = p2.premises[1].clone();
            let bottom_at_x = right
                .conclusion
                .with_succedent((x.clone(), Formula::Bottom));
            let right = if right.conclusion.succedent.0 == x {
                right
            } else {
                unary(LabekRule::W, bottom_at_x, right)
            };
            let d2 = unary(
                LabekRule::NegR,
                right
                    .conclusion
                    .remove_one(&(x.clone(), (**b).clone()))
                    .ok_or_else(|| unsupported("imp_c_l premise lost its assumption"))?
                    .with_succedent((x.clone(), Formula::neg((**b).clone()))),
                right,
            );
            let d3 = make_cut(
                weaken(&d2, &[], &[(x.clone(), (**a).clone())]),
                p1.premises[0].clone(),
                intro,
            );
            Ok(make_cut(d1, d3, intro))
        }
        Formula::ClAtom(n, args) => {
            let p_i = Formula::IntAtom(n.clone(), args.clone());
            let d1 = unary(
                LabekRule::NegR,
                p2.premises[0]
                    .conclusion
                    .remove_one(&(x.clone(), p_i.clone()))
                    .ok_or_else(|| unsupported("l_c premise lost its atom"))?
                    .with_succedent((x.clone(), Formula::neg(p_i))),
                p2.premises[0].clone(),
            );
            Ok(make_cut(d1, p1.premises[0].clone(), intro))
        }
        Formula::Box(a) => {
            // p2 is box_l: its premise added the body at some v with x R v.
            let d = delta(&p2.conclusion, &p2.premises[0].conclusion);
            let (v, _) = d
                .added
                .first()
                .cloned()
                .ok_or_else(|| unsupported("box_l premise adds nothing"))?;
            let body = (v.clone(), (**a).clone());
            let d1 = make_cut(
                weaken(p1, &[], std::slice::from_ref(&body)),
                p2.premises[0].clone(),
                intro,
            );
            // Instantiate the right-premise eigenlabel to v.
            let p1i = p1.premises[0].clone();
            let d_box = delta(&p1.conclusion, &p1i.conclusion);
            let (xx, y0) = d_box
                .added_rels
                .first()
                .cloned()
                .ok_or_else(|| unsupported("box_r premise adds no relational atom"))?;
            let substituted = subst_label(&p1i, &y0, &v);
            let d2 = contract_rel(&substituted, &(xx, v));
            Ok(make_cut(d2, d1, intro))
        }
        Formula::DiaI(_) => {
            // p1 is dia_i_r at some v; p2 is dia_i_l with eigenlabel y0.
            let v = p1.premises[0].conclusion.succedent.0.clone();
            let p2i = p2.premises[0].clone();
            let d = delta(&p2.conclusion, &p2i.conclusion);
            let (xx, y0) = d
                .added_rels
                .first()
                .cloned()
                .ok_or_else(|| unsupported("dia_i_l premise adds no relational atom"))?;
            let substituted = subst_label(&p2i, &y0, &v);
            let d1 = contract_rel(&substituted, &(xx, v));
            Ok(make_cut(p1.premises[0].clone(), d1, intro))
        }
        Formula::DiaC(a) => {
            // The printed case: the weight drops from ew(A)+4 to ew(A)+2.
            let p1i = p1.premises[0].clone(); // x: box ~A, Γ |- x: bot
            let p2i = p2.premises[0].clone(); // x R y0, y0: A, Γ |- x: bot
            let d = delta(&p2.conclusion, &p2i.conclusion);
            let (xx, y0) = d
                .added_rels
                .first()
                .cloned()
                .ok_or_else(|| unsupported("dia_c_l premise adds no relational atom"))?;
            let d1 = unary(
                LabekRule::W,
                p2i.conclusion
                    .with_succedent((y0.clone(), Formula::Bottom)),
                p2i,
            );
            let d2 = unary(
                LabekRule::NegR,
                d1.conclusion
                    .remove_one(&(y0.clone(), (**a).clone()))
                    .ok_or_else(|| unsupported("dia_c_l premise lost its body"))?
                    .with_succedent((y0.clone(), Formula::neg((**a).clone()))),
                d1,
            );
            let box_neg = (
                xx.clone(),
                Formula::boxed(Formula::neg((**a).clone())),
            );
            let mut d3_conc = d2.conclusion.clone();
            let idx = d3_conc
                .rel_atoms
                .iter()
                .position(|r| *r == (xx.clone(), y0.clone()))
                .ok_or_else(|| unsupported("relational atom for box_r missing"))?;
            d3_conc.rel_atoms.remove(idx);
            let d3 = unary(LabekRule::BoxR, d3_conc.with_succedent(box_neg), d2);
            Ok(make_cut(d3, p1i, intro))
        }
        _ => Err(unsupported("no principal reduction for this cut formula")),
    }
}

/// Push the cut into the right premise's subproofs: the cut formula is not
/// principal there, so the last rule reapplies below the smaller cuts.
fn permute_right(
    conclusion: &LabeledSequent,
    cf: &(Label, Formula),
    p1: &LabekProof,
    p2: &LabekProof,
    intro: &mut Vec<CutMeasure>,
    unsupported: &impl Fn(&str) -> CutError,
) -> Result<LabekProof, CutError> {
    if p2.premises.is_empty() {
        return Err(unsupported("leaf right premise was not handled"));
    }
    let mut q: Option<(Label, Formula)> = None;
    let mut new_premises = Vec::new();
    for prem in &p2.premises {
        let d = delta(&p2.conclusion, &prem.conclusion);
        let mut consumed = d.consumed.clone();
        // The cut formula itself is context here, never consumed.
        if let Some(idx) = consumed.iter().position(|i| i == cf) {
            consumed.remove(idx);
        }
        if let Some(c) = consumed.first() {
            if q.is_none() {
                q = Some(c.clone());
            }
        }
        let left = weaken(p1, &d.added_rels, &d.added);
        let right = weaken(prem, &[], &consumed);
        let rho = make_cut(left, right, intro);
        new_premises.push((rho, consumed.is_empty()));
    }
    finish_permutation(conclusion, p2, q, new_premises)
}

/// Push the cut into the left premise's subproofs. Minor premises (whose
/// succedent is not the cut formula) pass through untouched.
fn permute_left(
    conclusion: &LabeledSequent,
    cf: &(Label, Formula),
    p1: &LabekProof,
    p2: &LabekProof,
    intro: &mut Vec<CutMeasure>,
    unsupported: &impl Fn(&str) -> CutError,
) -> Result<LabekProof, CutError> {
    if p1.premises.is_empty() {
        return Err(unsupported("leaf left premise was not handled"));
    }
    let mut q: Option<(Label, Formula)> = None;
    let mut new_premises = Vec::new();
    for prem in &p1.premises {
        let d = delta(&p1.conclusion, &prem.conclusion);
        if let Some(c) = d.consumed.first() {
            if q.is_none() {
                q = Some(c.clone());
            }
        }
        let restored = weaken(prem, &[], &d.consumed);
        if prem.conclusion.succedent == *cf {
            let right = weaken(p2, &d.added_rels, &d.added);
            let rho = make_cut(restored, right, intro);
            new_premises.push((rho, d.consumed.is_empty()));
        } else {
            new_premises.push((restored, d.consumed.is_empty()));
        }
    }
    // The reapplied rule's conclusion takes the cut's succedent when the
    // original conclusion carried the cut formula.
    let target = conclusion.succedent.clone();
    let mut reapplied_conclusion = p1.conclusion.with_succedent(target);
    let node = {
        if let Some(qq) = &q {
            reapplied_conclusion.antecedent.push(qq.clone());
        }
        let premises = new_premises
            .into_iter()
            .map(|(rho, consumed_empty)| match &q {
                Some(qq) if consumed_empty => weaken(&rho, &[], std::slice::from_ref(qq)),
                _ => rho,
            })
            .collect();
        let mut node = ProofNode::new(p1.rule, reapplied_conclusion, premises);
        node.instantiation = p1.instantiation.clone();
        node
    };
    Ok(match q {
        Some(qq) => contract(&node, &qq),
        None => node,
    })
}

fn finish_permutation(
    conclusion: &LabeledSequent,
    p2: &LabekProof,
    q: Option<(Label, Formula)>,
    new_premises: Vec<(LabekProof, bool)>,
) -> Result<LabekProof, CutError> {
    let mut reapplied_conclusion = conclusion.clone();
    if let Some(qq) = &q {
        reapplied_conclusion.antecedent.push(qq.clone());
    }
    let premises = new_premises
        .into_iter()
        .map(|(rho, consumed_empty)| match &q {
            Some(qq) if consumed_empty => weaken(&rho, &[], std::slice::from_ref(qq)),
            _ => rho,
        })
        .collect();
    let mut node = ProofNode::new(p2.rule, reapplied_conclusion, premises);
    node.instantiation = p2.instantiation.clone();
    Ok(match q {
        Some(qq) => contract(&node, &qq),
        None => node,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_labeled_sequent;

    fn ls(s: &str) -> LabeledSequent {
        parse_labeled_sequent(s).unwrap()
    }

    /// Concrete cut with both premises principal on `x: dia_c a_i`.
    fn dia_c_cut() -> LabekProof {
        // Γ = x R x, x: a_i, x: box ~a_i
        // p1: Γ |- x: dia_c a_i  via dia_c_r; box_l; neg_l; init
        let p1 = ProofNode::new(
            LabekRule::DiaCR,
            ls("x R x, x: a_i, x: box ~a_i |- x: dia_c a_i"),
            vec![ProofNode::new(
                LabekRule::BoxL,
                ls("x: box ~a_i, x R x, x: a_i, x: box ~a_i |- x: bot"),
                vec![ProofNode::new(
                    LabekRule::NegL,
                    ls("x: ~a_i, x: box ~a_i, x R x, x: a_i, x: box ~a_i |- x: bot"),
                    vec![ProofNode::new(
                        LabekRule::Init,
                        ls("x: ~a_i, x: box ~a_i, x R x, x: a_i, x: box ~a_i |- x: a_i"),
                        vec![],
                    )],
                )],
            )],
        );
        // p2: x: dia_c a_i, Γ |- x: bot  via dia_c_l; box_l; W; neg_l; init
        let p2 = ProofNode::new(
            LabekRule::DiaCL,
            ls("x: dia_c a_i, x R x, x: a_i, x: box ~a_i |- x: bot"),
            vec![ProofNode::new(
                LabekRule::BoxL,
                ls("x R y, y: a_i, x R x, x: a_i, x: box ~a_i |- x: bot"),
                vec![ProofNode::new(
                    LabekRule::W,
                    ls("y: ~a_i, x R y, y: a_i, x R x, x: a_i, x: box ~a_i |- x: bot"),
                    vec![ProofNode::new(
                        LabekRule::NegL,
                        ls("y: ~a_i, x R y, y: a_i, x R x, x: a_i, x: box ~a_i |- y: bot"),
                        vec![ProofNode::new(
                            LabekRule::Init,
                            ls("y: ~a_i, x R y, y: a_i, x R x, x: a_i, x: box ~a_i |- y: a_i"),
                            vec![],
                        )],
                    )],
                )],
            )],
        );
        ProofNode::new(
            LabekRule::Cut,
            ls("x R x, x: a_i, x: box ~a_i |- x: bot"),
            vec![p1, p2],
        )
    }

    #[test]
    fn printed_diamond_case_drops_weight_by_two() {
        let p = dia_c_cut();
        check_labek_proof(&p, &Theory::plain(), true).unwrap();
        let step = eliminate_cut_step(&p, &Theory::plain()).unwrap();
        // ew(dia_c a) = 4 becomes ew(box ~a) = 2.
        assert_eq!(step.eliminated.0, 4);
        assert_eq!(step.introduced.len(), 1);
        assert_eq!(step.introduced[0].0, 2);
    }

    #[test]
    fn full_elimination_reaches_cut_free() {
        let p = dia_c_cut();
        let (free, steps) = eliminate_cuts(&p, &Theory::plain(), 200).unwrap();
        assert!(free.cut_free());
        assert!(!steps.is_empty());
        check_labek_proof(&free, &Theory::plain(), false).unwrap();
        assert!(free.conclusion.multiset_eq(&p.conclusion));
        for step in &steps {
            for m in &step.introduced {
                assert!(*m < step.eliminated, "measure must drop: {m:?} vs {:?}", step.eliminated);
            }
        }
    }

    #[test]
    fn cut_against_init_leaf_removed() {
        let p = ProofNode::new(
            LabekRule::Cut,
            ls("x: a_i |- x: a_i"),
            vec![
                ProofNode::new(LabekRule::Init, ls("x: a_i |- x: a_i"), vec![]),
                ProofNode::new(LabekRule::Init, ls("x: a_i, x: a_i |- x: a_i"), vec![]),
            ],
        );
        let step = eliminate_cut_step(&p, &Theory::plain()).unwrap();
        assert!(step.proof.cut_free());
        assert!(step.introduced.is_empty());
        check_labek_proof(&step.proof, &Theory::plain(), false).unwrap();
    }

    #[test]
    fn no_cut_is_an_error() {
        let p = ProofNode::new(LabekRule::Init, ls("x: a_i |- x: a_i"), vec![]);
        assert!(matches!(
            eliminate_cut_step(&p, &Theory::plain()),
            Err(CutError::NoCut)
        ));
    }
}
