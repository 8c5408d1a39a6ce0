//! The unlabeled ecumenical sequent calculus: schema checker and bounded
//! backward prover. Classical left rules and the classical-atom rules pin
//! the succedent to bottom; implication-left rules and `forall_l` keep their
//! principal formula in a premise.

mod search;

pub use search::{prove, prove_fo, prove_prop};
#[doc(hidden)]
pub use search::prove_prop_unrestricted;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::formula::{Formula, Var};
use crate::proof::{path_string, LeciProof, LeciRule};
use crate::sequent::Sequent;

/// Violation found while checking a proof: the offending node, its rule, and
/// the failed side condition.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("{rule} at {}: {message}", path_string(.path))]
pub struct CheckError {
    pub path: Vec<usize>,
    pub rule: String,
    pub message: String,
}

fn fail(path: &[usize], rule: LeciRule, message: impl Into<String>) -> CheckError {
    CheckError {
        path: path.to_vec(),
        rule: rule.as_str().to_string(),
        message: message.into(),
    }
}

/// Check that every node of `p` instantiates a rule schema exactly.
/// `allow_cut` admits the cut rule; everything else is unaffected.
pub fn check_leci_proof(p: &LeciProof, allow_cut: bool) -> Result<(), CheckError> {
    check_node(p, allow_cut, &mut Vec::new())
}

fn check_node(p: &LeciProof, allow_cut: bool, path: &mut Vec<usize>) -> Result<(), CheckError> {
    check_rule(p, allow_cut, path)?;
    for (i, premise) in p.premises.iter().enumerate() {
        path.push(i);
        check_node(premise, allow_cut, path)?;
        path.pop();
    }
    Ok(())
}

/// Multiset membership up to alpha.
fn contains(ante: &[Formula], f: &Formula) -> bool {
    ante.iter().any(|g| g.alpha_eq(f))
}

/// Distinct antecedent formulas (up to alpha) matching a shape filter.
fn candidates(ante: &[Formula], shape: impl Fn(&Formula) -> bool) -> Vec<&Formula> {
    let mut seen: Vec<Formula> = Vec::new();
    let mut out = Vec::new();
    for f in ante {
        if shape(f) && !seen.iter().any(|s| s == &f.alpha_canon()) {
            seen.push(f.alpha_canon());
            out.push(f);
        }
    }
    out
}

fn premise_count(p: &LeciProof, n: usize, path: &[usize]) -> Result<(), CheckError> {
    if p.premises.len() == n {
        Ok(())
    } else {
        Err(fail(
            path,
            p.rule,
            format!("expected {n} premise(s), found {}", p.premises.len()),
        ))
    }
}

/// The premise a rule prescribes, compared as a multiset.
fn expect_premise(
    p: &LeciProof,
    idx: usize,
    expected: &Sequent,
    path: &[usize],
    what: &str,
) -> Result<(), CheckError> {
    let actual = &p.premises[idx].conclusion;
    if actual.multiset_eq(expected) {
        Ok(())
    } else {
        Err(fail(
            path,
            p.rule,
            format!("{what}: premise {idx} is `{actual}`, schema requires `{expected}`"),
        ))
    }
}

/// Try each principal candidate; succeed if any yields all prescribed
/// premises. `build` returns the expected premise list for one candidate.
fn try_principals(
    p: &LeciProof,
    path: &[usize],
    cands: Vec<&Formula>,
    build: impl Fn(&Formula) -> Option<Vec<Sequent>>,
    shape_msg: &str,
) -> Result<(), CheckError> {
    if cands.is_empty() {
        return Err(fail(path, p.rule, format!("no antecedent formula {shape_msg}")));
    }
    let mut last_err = None;
    for f in cands {
        let Some(expected) = build(f) else { continue };
        if expected.len() != p.premises.len() {
            last_err = Some(fail(
                path,
                p.rule,
                format!("expected {} premise(s), found {}", expected.len(), p.premises.len()),
            ));
            continue;
        }
        let mut ok = true;
        for (i, e) in expected.iter().enumerate() {
            if let Err(err) = expect_premise(p, i, e, path, "principal mismatch") {
                last_err = Some(err);
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(());
        }
    }
    Err(last_err.unwrap_or_else(|| {
        fail(path, p.rule, format!("no antecedent formula {shape_msg} fits the premises"))
    }))
}

/// Find `t` such that `inst` is alpha-equal to `pattern[t/x]`. Returns
/// `Ok(None)` when `x` does not occur free (any term works).
fn infer_witness(pattern: &Formula, x: &Var, inst: &Formula) -> Result<Option<Var>, ()> {
    if !pattern.free_vars().contains(x) {
        return if pattern.alpha_eq(inst) { Ok(None) } else { Err(()) };
    }
    let mut cands: BTreeSet<Var> = inst.free_vars();
    cands.insert(x.clone());
    for t in cands {
        if pattern.subst(x, &t).alpha_eq(inst) {
            return Ok(Some(t));
        }
    }
    Err(())
}

/// Eigenvariable side condition: `v` must not occur free in the conclusion.
fn eigen_fresh(v: &Var, conclusion: &Sequent) -> bool {
    !conclusion.free_vars().contains(v)
}

fn check_rule(p: &LeciProof, allow_cut: bool, path: &[usize]) -> Result<(), CheckError> {
    let seq = &p.conclusion;
    let gamma = &seq.antecedent;
    let succ = &seq.succedent;
    match p.rule {
        LeciRule::Init => {
            premise_count(p, 0, path)?;
            if contains(gamma, succ) {
                Ok(())
            } else {
                Err(fail(path, p.rule, "succedent does not occur in the antecedent"))
            }
        }
        LeciRule::BotL => {
            premise_count(p, 0, path)?;
            if contains(gamma, &Formula::Bottom) {
                Ok(())
            } else {
                Err(fail(path, p.rule, "no bottom in the antecedent"))
            }
        }
        LeciRule::W => {
            premise_count(p, 1, path)?;
            expect_premise(p, 0, &seq.with_succedent(Formula::Bottom), path, "weakening")
        }
        LeciRule::AndL => {
            premise_count(p, 1, path)?;
            try_principals(
                p,
                path,
                candidates(gamma, |f| matches!(f, Formula::And(..))),
                |f| {
                    let Formula::And(a, b) = f else { return None };
                    let rest = seq.remove_one(f)?;
                    Some(vec![rest.with_extra([(**a).clone(), (**b).clone()])])
                },
                "of shape `A /\\ B`",
            )
        }
        LeciRule::AndR => {
            premise_count(p, 2, path)?;
            let Formula::And(a, b) = succ else {
                return Err(fail(path, p.rule, "succedent is not a conjunction"));
            };
            expect_premise(p, 0, &seq.with_succedent((**a).clone()), path, "left conjunct")?;
            expect_premise(p, 1, &seq.with_succedent((**b).clone()), path, "right conjunct")
        }
        LeciRule::OrIL => {
            premise_count(p, 2, path)?;
            try_principals(
                p,
                path,
                candidates(gamma, |f| matches!(f, Formula::OrI(..))),
                |f| {
                    let Formula::OrI(a, b) = f else { return None };
                    let rest = seq.remove_one(f)?;
                    Some(vec![
                        rest.with_extra([(**a).clone()]),
                        rest.with_extra([(**b).clone()]),
                    ])
                },
                "of shape `A \\/i B`",
            )
        }
        LeciRule::OrIR1 | LeciRule::OrIR2 => {
            premise_count(p, 1, path)?;
            let Formula::OrI(a, b) = succ else {
                return Err(fail(path, p.rule, "succedent is not an intuitionistic disjunction"));
            };
            let pick = if p.rule == LeciRule::OrIR1 { a } else { b };
            expect_premise(p, 0, &seq.with_succedent((**pick).clone()), path, "chosen disjunct")
        }
        LeciRule::OrCL => {
            premise_count(p, 2, path)?;
            if *succ != Formula::Bottom {
                return Err(fail(path, p.rule, "conclusion succedent must be bottom"));
            }
            try_principals(
                p,
                path,
                candidates(gamma, |f| matches!(f, Formula::OrC(..))),
                |f| {
                    let Formula::OrC(a, b) = f else { return None };
                    let rest = seq.remove_one(f)?;
                    Some(vec![
                        rest.with_extra([(**a).clone()]),
                        rest.with_extra([(**b).clone()]),
                    ])
                },
                "of shape `A \\/c B`",
            )
        }
        LeciRule::OrCR => {
            premise_count(p, 1, path)?;
            let Formula::OrC(a, b) = succ else {
                return Err(fail(path, p.rule, "succedent is not a classical disjunction"));
            };
            let expected = seq
                .with_succedent(Formula::Bottom)
                .with_extra([Formula::neg((**a).clone()), Formula::neg((**b).clone())]);
            expect_premise(p, 0, &expected, path, "negated disjuncts")
        }
        LeciRule::ImpIL => {
            premise_count(p, 2, path)?;
            try_principals(
                p,
                path,
                candidates(gamma, |f| matches!(f, Formula::ImpI(..))),
                |f| {
                    let Formula::ImpI(a, b) = f else { return None };
                    let rest = seq.remove_one(f)?;
                    Some(vec![
                        seq.with_succedent((**a).clone()), // principal kept
                        rest.with_extra([(**b).clone()]),
                    ])
                },
                "of shape `A ->i B`",
            )
        }
        LeciRule::ImpIR => {
            premise_count(p, 1, path)?;
            let Formula::ImpI(a, b) = succ else {
                return Err(fail(path, p.rule, "succedent is not an intuitionistic implication"));
            };
            let expected = seq.with_succedent((**b).clone()).with_extra([(**a).clone()]);
            expect_premise(p, 0, &expected, path, "assumed antecedent")
        }
        LeciRule::ImpCL => {
            premise_count(p, 2, path)?;
            if *succ != Formula::Bottom {
                return Err(fail(path, p.rule, "conclusion succedent must be bottom"));
            }
            try_principals(
                p,
                path,
                candidates(gamma, |f| matches!(f, Formula::ImpC(..))),
                |f| {
                    let Formula::ImpC(a, b) = f else { return None };
                    let rest = seq.remove_one(f)?;
                    Some(vec![
                        seq.with_succedent((**a).clone()), // principal kept
                        rest.with_extra([(**b).clone()]),
                    ])
                },
                "of shape `A ->c B`",
            )
        }
        LeciRule::ImpCR => {
            premise_count(p, 1, path)?;
            let Formula::ImpC(a, b) = succ else {
                return Err(fail(path, p.rule, "succedent is not a classical implication"));
            };
            let expected = seq
                .with_succedent(Formula::Bottom)
                .with_extra([(**a).clone(), Formula::neg((**b).clone())]);
            expect_premise(p, 0, &expected, path, "assumed antecedent and negated consequent")
        }
        LeciRule::NegL => {
            premise_count(p, 1, path)?;
            if *succ != Formula::Bottom {
                return Err(fail(path, p.rule, "conclusion succedent must be bottom"));
            }
            try_principals(
                p,
                path,
                candidates(gamma, |f| matches!(f, Formula::Neg(..))),
                |f| {
                    let Formula::Neg(a) = f else { return None };
                    Some(vec![seq.with_succedent((**a).clone())]) // principal kept
                },
                "of shape `~A`",
            )
        }
        LeciRule::NegR => {
            premise_count(p, 1, path)?;
            let Formula::Neg(a) = succ else {
                return Err(fail(path, p.rule, "succedent is not a negation"));
            };
            let expected = seq.with_succedent(Formula::Bottom).with_extra([(**a).clone()]);
            expect_premise(p, 0, &expected, path, "assumed body")
        }
        LeciRule::Lc => {
            premise_count(p, 1, path)?;
            if *succ != Formula::Bottom {
                return Err(fail(path, p.rule, "conclusion succedent must be bottom"));
            }
            try_principals(
                p,
                path,
                candidates(gamma, |f| matches!(f, Formula::ClAtom(..))),
                |f| {
                    let Formula::ClAtom(n, args) = f else { return None };
                    let rest = seq.remove_one(f)?;
                    Some(vec![rest.with_extra([Formula::IntAtom(n.clone(), args.clone())])])
                },
                "that is a classical atom",
            )
        }
        LeciRule::Rc => {
            premise_count(p, 1, path)?;
            let Formula::ClAtom(n, args) = succ else {
                return Err(fail(path, p.rule, "succedent is not a classical atom"));
            };
            let expected = seq
                .with_succedent(Formula::Bottom)
                .with_extra([Formula::neg(Formula::IntAtom(n.clone(), args.clone()))]);
            expect_premise(p, 0, &expected, path, "negated intuitionistic atom")
        }
        LeciRule::ForallL => {
            premise_count(p, 1, path)?;
            // Premise: A[t/x], forall x.A, Γ |- C (principal kept).
            let prem = &p.premises[0].conclusion;
            if !prem.succedent.alpha_eq(succ) {
                return Err(fail(path, p.rule, "premise succedent changed"));
            }
            try_principals(
                p,
                path,
                candidates(gamma, |f| matches!(f, Formula::Forall(..))),
                |f| {
                    let Formula::Forall(x, a) = f else { return None };
                    // Identify the added instance by multiset difference.
                    let extra = multiset_extra(&prem.antecedent, gamma)?;
                    infer_witness(a, x, &extra).ok()?;
                    Some(vec![seq.with_extra([extra])])
                },
                "of shape `forall x. A` whose instance matches the premise",
            )
        }
        LeciRule::ForallR => {
            premise_count(p, 1, path)?;
            let Formula::Forall(x, a) = succ else {
                return Err(fail(path, p.rule, "succedent is not universally quantified"));
            };
            let prem = &p.premises[0].conclusion;
            if !multiset_same(&prem.antecedent, gamma) {
                return Err(fail(path, p.rule, "premise antecedent changed"));
            }
            match infer_witness(a, x, &prem.succedent) {
                Err(()) => Err(fail(path, p.rule, "premise succedent is not an instance of the body")),
                Ok(None) => Ok(()),
                Ok(Some(y)) => {
                    if let Some(rec) = p.instantiation.as_ref().and_then(|i| i.eigen.as_ref()) {
                        if rec != y.as_str() {
                            return Err(fail(
                                path,
                                p.rule,
                                format!("recorded eigenvariable `{rec}` disagrees with inferred `{y}`"),
                            ));
                        }
                    }
                    if eigen_fresh(&y, seq) {
                        Ok(())
                    } else {
                        Err(fail(
                            path,
                            p.rule,
                            format!("eigenvariable `{y}` occurs free in the conclusion"),
                        ))
                    }
                }
            }
        }
        LeciRule::ExistsIL | LeciRule::ExistsCL => {
            premise_count(p, 1, path)?;
            let classical = p.rule == LeciRule::ExistsCL;
            if classical && *succ != Formula::Bottom {
                return Err(fail(path, p.rule, "conclusion succedent must be bottom"));
            }
            let prem = &p.premises[0].conclusion;
            if !prem.succedent.alpha_eq(succ) {
                return Err(fail(path, p.rule, "premise succedent changed"));
            }
            let shape: fn(&Formula) -> bool = if classical {
                |f| matches!(f, Formula::ExistsC(..))
            } else {
                |f| matches!(f, Formula::ExistsI(..))
            };
            let conclusion = seq.clone();
            try_principals(
                p,
                path,
                candidates(gamma, shape),
                |f| {
                    let (x, a) = match f {
                        Formula::ExistsI(x, a) | Formula::ExistsC(x, a) => (x, a),
                        _ => return None,
                    };
                    let rest = conclusion.remove_one(f)?;
                    let extra = multiset_extra(&prem.antecedent, &rest.antecedent)?;
                    match infer_witness(a, x, &extra) {
                        Err(()) => None,
                        Ok(None) => Some(vec![rest.with_extra([extra])]),
                        Ok(Some(y)) => {
                            if eigen_fresh(&y, &conclusion) {
                                Some(vec![rest.with_extra([extra])])
                            } else {
                                None
                            }
                        }
                    }
                },
                "existentially quantified with a fresh-instance premise",
            )
        }
        LeciRule::ExistsIR => {
            premise_count(p, 1, path)?;
            let Formula::ExistsI(x, a) = succ else {
                return Err(fail(path, p.rule, "succedent is not an intuitionistic existential"));
            };
            let prem = &p.premises[0].conclusion;
            if !multiset_same(&prem.antecedent, gamma) {
                return Err(fail(path, p.rule, "premise antecedent changed"));
            }
            if infer_witness(a, x, &prem.succedent).is_err() {
                return Err(fail(path, p.rule, "premise succedent is not an instance of the body"));
            }
            Ok(())
        }
        LeciRule::ExistsCR => {
            premise_count(p, 1, path)?;
            let Formula::ExistsC(x, a) = succ else {
                return Err(fail(path, p.rule, "succedent is not a classical existential"));
            };
            let expected = seq
                .with_succedent(Formula::Bottom)
                .with_extra([Formula::forall(x.clone(), Formula::neg((**a).clone()))]);
            expect_premise(p, 0, &expected, path, "universally negated body")
        }
        LeciRule::Cut => {
            if !allow_cut {
                return Err(fail(path, p.rule, "cut is not admitted (allow_cut = false)"));
            }
            premise_count(p, 2, path)?;
            let cut_formula = p.premises[0].conclusion.succedent.clone();
            expect_premise(p, 0, &seq.with_succedent(cut_formula.clone()), path, "cut left premise")?;
            let expected = seq.with_extra([cut_formula]);
            expect_premise(p, 1, &expected, path, "cut right premise")
        }
    }
}

/// `larger` must equal `base` plus exactly one extra formula; returns it.
fn multiset_extra(larger: &[Formula], base: &[Formula]) -> Option<Formula> {
    if larger.len() != base.len() + 1 {
        return None;
    }
    let mut rest: Vec<Formula> = larger.iter().map(|f| f.alpha_canon()).collect();
    for f in base {
        let canon = f.alpha_canon();
        let idx = rest.iter().position(|g| *g == canon)?;
        rest.remove(idx);
    }
    debug_assert_eq!(rest.len(), 1);
    // Return the original (non-canonical) formula from `larger`.
    let canon = rest.pop()?;
    larger.iter().find(|f| f.alpha_canon() == canon).cloned()
}

fn multiset_same(a: &[Formula], b: &[Formula]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut l: Vec<Formula> = a.iter().map(|f| f.alpha_canon()).collect();
    let mut r: Vec<Formula> = b.iter().map(|f| f.alpha_canon()).collect();
    l.sort();
    r.sort();
    l == r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_sequent;
    use crate::proof::ProofNode;

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    #[test]
    fn init_leaf_checks() {
        let p = LeciProof::new(LeciRule::Init, seq("a_i |- a_i"), vec![]);
        assert!(check_leci_proof(&p, false).is_ok());
        let bad = LeciProof::new(LeciRule::Init, seq("a_i |- b_i"), vec![]);
        assert!(check_leci_proof(&bad, false).is_err());
    }

    #[test]
    fn classical_excluded_middle_script() {
        // |- a \/c ~a  via or_c_r then neg_l/init, no classical-reductio leaf.
        let p = ProofNode::new(
            LeciRule::OrCR,
            seq("|- a_i \\/c ~a_i"),
            vec![ProofNode::new(
                LeciRule::NegL,
                seq("~a_i, ~~a_i |- bot"),
                vec![ProofNode::new(
                    LeciRule::Init,
                    seq("~a_i, ~~a_i |- ~a_i"),
                    vec![],
                )],
            )],
        );
        assert!(check_leci_proof(&p, false).is_ok());
    }

    #[test]
    fn neg_l_checks_principal_kept() {
        let bad = ProofNode::new(
            LeciRule::NegL,
            seq("~a_i |- bot"),
            vec![ProofNode::new(LeciRule::Init, seq("|- a_i"), vec![])],
        );
        let err = check_leci_proof(&bad, false).unwrap_err();
        assert_eq!(err.rule, "neg_l");
    }

    #[test]
    fn eigenvariable_freshness_enforced() {
        // forall_r with eigenvariable free in the conclusion must fail.
        let conclusion = seq("p_i(y) |- forall x. q_i(x)");
        let premise = seq("p_i(y) |- q_i(y)");
        let p = ProofNode::new(
            LeciRule::ForallR,
            conclusion,
            vec![ProofNode::new(LeciRule::Init, premise, vec![])],
        );
        let err = check_leci_proof(&p, false).unwrap_err();
        assert!(err.message.contains("eigenvariable"), "{err}");
    }

    #[test]
    fn cut_gated_by_flag() {
        let p = ProofNode::new(
            LeciRule::Cut,
            seq("a_i |- a_i"),
            vec![
                ProofNode::new(LeciRule::Init, seq("a_i |- a_i"), vec![]),
                ProofNode::new(LeciRule::Init, seq("a_i, a_i |- a_i"), vec![]),
            ],
        );
        assert!(check_leci_proof(&p, true).is_ok());
        assert!(check_leci_proof(&p, false).is_err());
    }

    #[test]
    fn w_rule_unrestricted_in_checker() {
        let p = ProofNode::new(
            LeciRule::W,
            seq("bot |- a_i"),
            vec![ProofNode::new(LeciRule::BotL, seq("bot |- bot"), vec![])],
        );
        assert!(check_leci_proof(&p, false).is_ok());
    }
}
