//! Bounded backward proof search. Invertible rules run eagerly; the
//! remaining choices backtrack under a sequent-history loop check, which
//! makes the propositional fragment a decision procedure.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::formula::{fresh_var, Formula, Var};
use crate::outcome::{deepening_steps, EngineError, SearchBudget, SearchOutcome, UnknownReport};
use crate::proof::{Instantiation, LeciProof, LeciRule, ProofNode};
use crate::sequent::Sequent;

/// Decision procedure entry point for the propositional fragment: with the
/// loop check, termination yields either a proof or a saturated failure.
pub fn prove_prop(s: &Sequent, b: &SearchBudget) -> Result<SearchOutcome<LeciProof>, EngineError> {
    if !s.is_propositional() {
        return Err(EngineError::Fragment("propositional"));
    }
    run(s, b, true)
}

/// First-order prover: sound but incomplete; never claims saturation, since
/// witness selection is bounded.
pub fn prove_fo(s: &Sequent, b: &SearchBudget) -> Result<SearchOutcome<LeciProof>, EngineError> {
    if !s.is_fo_fragment() {
        return Err(EngineError::Fragment("first-order"));
    }
    run(s, b, s.is_propositional())
}

/// Dispatch on the sequent's fragment.
pub fn prove(s: &Sequent, b: &SearchBudget) -> Result<SearchOutcome<LeciProof>, EngineError> {
    if s.is_propositional() {
        prove_prop(s, b)
    } else {
        prove_fo(s, b)
    }
}

/// Comparison oracle for the invertible-rule-safety obligation: the same
/// search with the eager commitment disabled, every rule a backtrack point.
/// Propositional only; not part of the normal API.
#[doc(hidden)]
pub fn prove_prop_unrestricted(
    s: &Sequent,
    b: &SearchBudget,
) -> Result<SearchOutcome<LeciProof>, EngineError> {
    if !s.is_propositional() {
        return Err(EngineError::Fragment("propositional"));
    }
    if !b.is_valid() {
        return Err(EngineError::Budget);
    }
    let mut search = Search {
        budget: b,
        depth_limit: b.max_depth,
        nodes: 0,
        history: HashSet::new(),
        inst_counts: BTreeMap::new(),
        commit_invertibles: false,
    };
    Ok(match search.attempt(s, 0) {
        Ok(proof) => SearchOutcome::Proved(proof),
        Err(fail) => SearchOutcome::Unknown(UnknownReport {
            saturated: fail.saturated,
            nodes_visited: search.nodes,
        }),
    })
}

fn run(
    s: &Sequent,
    b: &SearchBudget,
    saturation_meaningful: bool,
) -> Result<SearchOutcome<LeciProof>, EngineError> {
    if !b.is_valid() {
        return Err(EngineError::Budget);
    }
    let mut search = Search {
        budget: b,
        depth_limit: 0,
        nodes: 0,
        history: HashSet::new(),
        inst_counts: BTreeMap::new(),
        commit_invertibles: true,
    };
    // Iterative deepening: failing branches are cut early in shallow
    // passes; a pass that saturates without hitting a limit is final.
    let mut result = Fail { saturated: false };
    for limit in deepening_steps(b.max_depth) {
        search.depth_limit = limit;
        search.history.clear();
        match search.attempt(s, 0) {
            Ok(proof) => return Ok(SearchOutcome::Proved(proof)),
            Err(fail) => {
                let done = fail.saturated;
                result = fail;
                if done || search.nodes > b.max_nodes {
                    break;
                }
            }
        }
    }
    Ok(SearchOutcome::Unknown(UnknownReport {
        saturated: result.saturated && saturation_meaningful,
        nodes_visited: search.nodes,
    }))
}



struct Fail {
    /// Exhaustive failure: every alternative explored, no budget cut.
    saturated: bool,
}

struct Search<'a> {
    budget: &'a SearchBudget,
    depth_limit: usize,
    nodes: usize,
    history: HashSet<(BTreeSet<Formula>, Formula)>,
    /// forall_l applications per canonical universal along the current path.
    inst_counts: BTreeMap<Formula, usize>,
    /// When false, invertible rules become backtrack points too.
    commit_invertibles: bool,
}

type Step = Result<LeciProof, Fail>;

impl Search<'_> {
    fn attempt(&mut self, seq: &Sequent, depth: usize) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes || depth > self.depth_limit {
            return Err(Fail { saturated: false });
        }

        if let Some(leaf) = self.closure(seq) {
            return Ok(leaf);
        }
        if self.commit_invertibles {
            if let Some(step) = self.eager(seq, depth) {
                return step;
            }
        }

        let key = seq.canonical_key();
        if !self.history.insert(key.clone()) {
            return Err(Fail { saturated: true });
        }
        let result = self.choices(seq, depth);
        self.history.remove(&key);
        result
    }

    fn closure(&self, seq: &Sequent) -> Option<LeciProof> {
        if seq
            .antecedent
            .iter()
            .any(|f| f.alpha_eq(&seq.succedent))
        {
            return Some(ProofNode::new(LeciRule::Init, seq.clone(), vec![]));
        }
        if seq.antecedent.contains(&Formula::Bottom) {
            return Some(ProofNode::new(LeciRule::BotL, seq.clone(), vec![]));
        }
        None
    }

    /// First applicable invertible rule, applied without a choice point.
    fn eager(&mut self, seq: &Sequent, depth: usize) -> Option<Step> {
        let succ = &seq.succedent;

        // Antecedent decompositions.
        if let Some(f) = first(&seq.antecedent, |f| matches!(f, Formula::And(..))) {
            let Formula::And(a, b) = &f else { unreachable!() };
            let rest = seq.remove_one(&f).unwrap();
            let prem = rest.with_extra([(**a).clone(), (**b).clone()]);
            return Some(self.unary(LeciRule::AndL, seq, prem, depth, None));
        }
        if let Some(f) = first(&seq.antecedent, |f| matches!(f, Formula::ExistsI(..))) {
            let Formula::ExistsI(x, a) = &f else { unreachable!() };
            let y = fresh_var(x.as_str(), &seq.free_vars());
            let rest = seq.remove_one(&f).unwrap();
            let prem = rest.with_extra([a.subst(x, &y)]);
            return Some(self.unary(
                LeciRule::ExistsIL,
                seq,
                prem,
                depth,
                Some(Instantiation::eigen(y.as_str())),
            ));
        }
        if *succ == Formula::Bottom {
            if let Some(f) = first(&seq.antecedent, |f| matches!(f, Formula::ExistsC(..))) {
                let Formula::ExistsC(x, a) = &f else { unreachable!() };
                let y = fresh_var(x.as_str(), &seq.free_vars());
                let rest = seq.remove_one(&f).unwrap();
                let prem = rest.with_extra([a.subst(x, &y)]);
                return Some(self.unary(
                    LeciRule::ExistsCL,
                    seq,
                    prem,
                    depth,
                    Some(Instantiation::eigen(y.as_str())),
                ));
            }
            if let Some(f) = first(&seq.antecedent, |f| matches!(f, Formula::ClAtom(..))) {
                let Formula::ClAtom(n, args) = &f else { unreachable!() };
                let rest = seq.remove_one(&f).unwrap();
                let prem = rest.with_extra([Formula::IntAtom(n.clone(), args.clone())]);
                return Some(self.unary(LeciRule::Lc, seq, prem, depth, None));
            }
        }

        // Succedent introductions.
        match succ {
            Formula::ImpI(a, b) => {
                let prem = seq.with_succedent((**b).clone()).with_extra([(**a).clone()]);
                return Some(self.unary(LeciRule::ImpIR, seq, prem, depth, None));
            }
            Formula::Neg(a) => {
                let prem = seq
                    .with_succedent(Formula::Bottom)
                    .with_extra([(**a).clone()]);
                return Some(self.unary(LeciRule::NegR, seq, prem, depth, None));
            }
            Formula::ImpC(a, b) => {
                let prem = seq
                    .with_succedent(Formula::Bottom)
                    .with_extra([(**a).clone(), Formula::neg((**b).clone())]);
                return Some(self.unary(LeciRule::ImpCR, seq, prem, depth, None));
            }
            Formula::OrC(a, b) => {
                let prem = seq
                    .with_succedent(Formula::Bottom)
                    .with_extra([Formula::neg((**a).clone()), Formula::neg((**b).clone())]);
                return Some(self.unary(LeciRule::OrCR, seq, prem, depth, None));
            }
            Formula::ClAtom(n, args) => {
                let prem = seq
                    .with_succedent(Formula::Bottom)
                    .with_extra([Formula::neg(Formula::IntAtom(n.clone(), args.clone()))]);
                return Some(self.unary(LeciRule::Rc, seq, prem, depth, None));
            }
            Formula::ExistsC(x, a) => {
                let prem = seq
                    .with_succedent(Formula::Bottom)
                    .with_extra([Formula::forall(x.clone(), Formula::neg((**a).clone()))]);
                return Some(self.unary(LeciRule::ExistsCR, seq, prem, depth, None));
            }
            Formula::Forall(x, a) => {
                let y = fresh_var(x.as_str(), &seq.free_vars());
                let prem = seq.with_succedent(a.subst(x, &y));
                return Some(self.unary(
                    LeciRule::ForallR,
                    seq,
                    prem,
                    depth,
                    Some(Instantiation::eigen(y.as_str())),
                ));
            }
            _ => {}
        }

        // Invertible branching rules.
        if let Some(f) = first(&seq.antecedent, |f| matches!(f, Formula::OrI(..))) {
            let Formula::OrI(a, b) = &f else { unreachable!() };
            let rest = seq.remove_one(&f).unwrap();
            let prems = vec![
                rest.with_extra([(**a).clone()]),
                rest.with_extra([(**b).clone()]),
            ];
            return Some(self.nary(LeciRule::OrIL, seq, prems, depth, None));
        }
        if *succ == Formula::Bottom {
            if let Some(f) = first(&seq.antecedent, |f| matches!(f, Formula::OrC(..))) {
                let Formula::OrC(a, b) = &f else { unreachable!() };
                let rest = seq.remove_one(&f).unwrap();
                let prems = vec![
                    rest.with_extra([(**a).clone()]),
                    rest.with_extra([(**b).clone()]),
                ];
                return Some(self.nary(LeciRule::OrCL, seq, prems, depth, None));
            }
        }
        if let Formula::And(a, b) = succ {
            let prems = vec![
                seq.with_succedent((**a).clone()),
                seq.with_succedent((**b).clone()),
            ];
            return Some(self.nary(LeciRule::AndR, seq, prems, depth, None));
        }
        None
    }

    fn unary(
        &mut self,
        rule: LeciRule,
        seq: &Sequent,
        premise: Sequent,
        depth: usize,
        inst: Option<Instantiation>,
    ) -> Step {
        let sub = self.attempt(&premise, depth + 1)?;
        let mut node = ProofNode::new(rule, seq.clone(), vec![sub]);
        node.instantiation = inst;
        Ok(node)
    }

    fn nary(
        &mut self,
        rule: LeciRule,
        seq: &Sequent,
        premises: Vec<Sequent>,
        depth: usize,
        inst: Option<Instantiation>,
    ) -> Step {
        let mut subs = Vec::with_capacity(premises.len());
        for prem in &premises {
            subs.push(self.attempt(prem, depth + 1)?);
        }
        let mut node = ProofNode::new(rule, seq.clone(), subs);
        node.instantiation = inst;
        Ok(node)
    }

    /// Propositional invertible moves as explicit alternatives, for the
    /// unrestricted comparison mode.
    fn invertible_moves(&self, seq: &Sequent) -> Vec<(LeciRule, Vec<Sequent>)> {
        let succ = seq.succedent.clone();
        let mut out = Vec::new();
        for f in distinct(&seq.antecedent, |f| matches!(f, Formula::And(..))) {
            let Formula::And(a, b) = &f else { unreachable!() };
            let rest = seq.remove_one(&f).unwrap();
            out.push((
                LeciRule::AndL,
                vec![rest.with_extra([(**a).clone(), (**b).clone()])],
            ));
        }
        for f in distinct(&seq.antecedent, |f| matches!(f, Formula::OrI(..))) {
            let Formula::OrI(a, b) = &f else { unreachable!() };
            let rest = seq.remove_one(&f).unwrap();
            out.push((
                LeciRule::OrIL,
                vec![
                    rest.with_extra([(**a).clone()]),
                    rest.with_extra([(**b).clone()]),
                ],
            ));
        }
        if succ == Formula::Bottom {
            for f in distinct(&seq.antecedent, |f| matches!(f, Formula::OrC(..))) {
                let Formula::OrC(a, b) = &f else { unreachable!() };
                let rest = seq.remove_one(&f).unwrap();
                out.push((
                    LeciRule::OrCL,
                    vec![
                        rest.with_extra([(**a).clone()]),
                        rest.with_extra([(**b).clone()]),
                    ],
                ));
            }
            for f in distinct(&seq.antecedent, |f| matches!(f, Formula::ClAtom(..))) {
                let Formula::ClAtom(n, args) = &f else { unreachable!() };
                let rest = seq.remove_one(&f).unwrap();
                out.push((
                    LeciRule::Lc,
                    vec![rest.with_extra([Formula::IntAtom(n.clone(), args.clone())])],
                ));
            }
        }
        match &succ {
            Formula::ImpI(a, b) => out.push((
                LeciRule::ImpIR,
                vec![seq.with_succedent((**b).clone()).with_extra([(**a).clone()])],
            )),
            Formula::Neg(a) => out.push((
                LeciRule::NegR,
                vec![seq
                    .with_succedent(Formula::Bottom)
                    .with_extra([(**a).clone()])],
            )),
            Formula::ImpC(a, b) => out.push((
                LeciRule::ImpCR,
                vec![seq
                    .with_succedent(Formula::Bottom)
                    .with_extra([(**a).clone(), Formula::neg((**b).clone())])],
            )),
            Formula::OrC(a, b) => out.push((
                LeciRule::OrCR,
                vec![seq
                    .with_succedent(Formula::Bottom)
                    .with_extra([Formula::neg((**a).clone()), Formula::neg((**b).clone())])],
            )),
            Formula::ClAtom(n, args) => out.push((
                LeciRule::Rc,
                vec![seq
                    .with_succedent(Formula::Bottom)
                    .with_extra([Formula::neg(Formula::IntAtom(n.clone(), args.clone()))])],
            )),
            Formula::And(a, b) => out.push((
                LeciRule::AndR,
                vec![
                    seq.with_succedent((**a).clone()),
                    seq.with_succedent((**b).clone()),
                ],
            )),
            _ => {}
        }
        out
    }

    /// Backtracking phase over the non-invertible rules.
    fn choices(&mut self, seq: &Sequent, depth: usize) -> Step {
        let succ = seq.succedent.clone();
        let mut saturated = true;
        let mut tried = 0usize;
        let mut capped = false;

        macro_rules! attempt_choice {
            ($step:expr) => {
                tried += 1;
                match $step {
                    Ok(proof) => return Ok(proof),
                    Err(fail) => saturated &= fail.saturated,
                }
            };
        }

        if !self.commit_invertibles {
            for (rule, premises) in self.invertible_moves(seq) {
                attempt_choice!(self.nary(rule, seq, premises, depth, None));
            }
        }

        if let Formula::OrI(a, b) = &succ {
            attempt_choice!(self.unary(
                LeciRule::OrIR1,
                seq,
                seq.with_succedent((**a).clone()),
                depth,
                None
            ));
            attempt_choice!(self.unary(
                LeciRule::OrIR2,
                seq,
                seq.with_succedent((**b).clone()),
                depth,
                None
            ));
        }

        if let Formula::ExistsI(x, a) = &succ {
            let (terms, was_capped) = self.candidate_terms(seq);
            capped |= was_capped;
            for t in terms {
                attempt_choice!(self.unary(
                    LeciRule::ExistsIR,
                    seq,
                    seq.with_succedent(a.subst(x, &t)),
                    depth,
                    Some(Instantiation::witness(t.as_str())),
                ));
            }
        }

        for f in distinct(&seq.antecedent, |f| matches!(f, Formula::ImpI(..))) {
            let Formula::ImpI(a, b) = &f else { unreachable!() };
            let rest = seq.remove_one(&f).unwrap();
            let prems = vec![
                seq.with_succedent((**a).clone()), // principal kept
                rest.with_extra([(**b).clone()]),
            ];
            attempt_choice!(self.nary(LeciRule::ImpIL, seq, prems, depth, None));
        }

        if succ == Formula::Bottom {
            for f in distinct(&seq.antecedent, |f| matches!(f, Formula::Neg(..))) {
                let Formula::Neg(a) = &f else { unreachable!() };
                attempt_choice!(self.unary(
                    LeciRule::NegL,
                    seq,
                    seq.with_succedent((**a).clone()), // principal kept
                    depth,
                    None
                ));
            }
            for f in distinct(&seq.antecedent, |f| matches!(f, Formula::ImpC(..))) {
                let Formula::ImpC(a, b) = &f else { unreachable!() };
                let rest = seq.remove_one(&f).unwrap();
                let prems = vec![
                    seq.with_succedent((**a).clone()), // principal kept
                    rest.with_extra([(**b).clone()]),
                ];
                attempt_choice!(self.nary(LeciRule::ImpCL, seq, prems, depth, None));
            }
        }

        for f in distinct(&seq.antecedent, |f| matches!(f, Formula::Forall(..))) {
            let canon = f.alpha_canon();
            let used = self.inst_counts.get(&canon).copied().unwrap_or(0);
            if used >= self.budget.max_instantiations_per_universal {
                capped = true;
                continue;
            }
            let Formula::Forall(x, a) = &f else { unreachable!() };
            let (terms, was_capped) = self.candidate_terms(seq);
            capped |= was_capped;
            for t in terms {
                self.inst_counts.insert(canon.clone(), used + 1);
                let prem = seq.with_extra([a.subst(x, &t)]); // principal kept
                let step = self.unary(
                    LeciRule::ForallL,
                    seq,
                    prem,
                    depth,
                    Some(Instantiation::witness(t.as_str())),
                );
                self.inst_counts.insert(canon.clone(), used);
                attempt_choice!(step);
            }
        }

        // Weakening, only on demand: the succedent is discarded to unlock a
        // classical left rule.
        if succ != Formula::Bottom && has_bottom_consumer(&seq.antecedent) {
            attempt_choice!(self.unary(
                LeciRule::W,
                seq,
                seq.with_succedent(Formula::Bottom),
                depth,
                None
            ));
        }

        if tried == 0 {
            // Dead end with nothing to try: exhaustive failure.
            return Err(Fail { saturated: true });
        }
        Err(Fail {
            saturated: saturated && !capped,
        })
    }

    /// Witness candidates: free variables of the sequent plus one fresh.
    fn candidate_terms(&self, seq: &Sequent) -> (Vec<Var>, bool) {
        let fv = seq.free_vars();
        let fresh = fresh_var("z", &fv);
        let mut terms: Vec<Var> = fv.into_iter().collect();
        terms.push(fresh);
        // The fresh-plus-occurring policy is itself a bound; only flag
        // capping when the list had to be truncated.
        const MAX_TERMS: usize = 16;
        if terms.len() > MAX_TERMS {
            terms.truncate(MAX_TERMS);
            (terms, true)
        } else {
            (terms, false)
        }
    }
}

fn first(ante: &[Formula], shape: impl Fn(&Formula) -> bool) -> Option<Formula> {
    ante.iter().find(|f| shape(f)).cloned()
}

/// Distinct (up to alpha) antecedent formulas matching a shape.
fn distinct(ante: &[Formula], shape: impl Fn(&Formula) -> bool) -> Vec<Formula> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for f in ante {
        if shape(f) && seen.insert(f.alpha_canon()) {
            out.push(f.clone());
        }
    }
    out
}

/// Formulas whose left rules require a bottom succedent.
fn has_bottom_consumer(ante: &[Formula]) -> bool {
    ante.iter().any(|f| {
        matches!(
            f,
            Formula::Neg(..)
                | Formula::OrC(..)
                | Formula::ImpC(..)
                | Formula::ExistsC(..)
                | Formula::ClAtom(..)
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leci::check_leci_proof;
    use crate::parser::parse_sequent;

    fn outcome(src: &str) -> SearchOutcome<LeciProof> {
        let seq = parse_sequent(src).unwrap();
        prove(&seq, &SearchBudget::default()).unwrap()
    }

    fn assert_proved(src: &str) {
        let out = outcome(src);
        match out {
            SearchOutcome::Proved(p) => {
                check_leci_proof(&p, false).unwrap();
            }
            _ => panic!("expected Proved for {src}"),
        }
    }

    fn assert_saturated_unknown(src: &str) {
        let out = outcome(src);
        assert!(
            out.is_saturated_unknown(),
            "expected saturated Unknown for {src}"
        );
    }

    #[test]
    fn negation_variants_coincide() {
        assert_proved("|- (a_i ->c bot) <->i (a_i ->i bot)");
        assert_proved("|- (a_i ->i bot) <->i ~a_i");
    }

    #[test]
    fn classical_connectives_definable() {
        assert_proved("|- (a_i \\/c b_i) <->i ~(~a_i /\\ ~b_i)");
        assert_proved("|- (a_i ->c b_i) <->i ~(a_i /\\ ~b_i)");
    }

    #[test]
    fn excluded_middle_split() {
        assert_proved("|- a_i \\/c ~a_i");
        assert_saturated_unknown("|- a_i \\/i ~a_i");
    }

    #[test]
    fn double_negation_split() {
        assert_proved("|- ~~a_i ->c a_i");
        assert_saturated_unknown("|- ~~a_i ->i a_i");
    }

    #[test]
    fn modus_ponens_split() {
        assert_proved("|- (a_i /\\ (a_i ->i b_i)) ->i b_i");
        assert_saturated_unknown("|- (a_i /\\ (a_i ->c b_i)) ->i b_i");
    }

    #[test]
    fn externally_classical_recovery() {
        assert_proved("|- (a_i ->c b_c) ->i (a_i ->i b_c)");
        assert_proved("|- (a_i /\\ (a_i ->c b_c)) ->i b_c");
        assert_proved("|- ~~b_c ->i b_c");
    }

    #[test]
    fn quantifier_asymmetry() {
        assert_proved("|- (exists_c x. p_i(x)) <->i ~forall x. ~p_i(x)");
        assert_proved("|- (forall x. p_i(x)) ->i ~exists_c x. ~p_i(x)");
        let out = outcome("|- ~(exists_c x. ~p_i(x)) ->i forall x. p_i(x)");
        assert!(
            !out.is_proved(),
            "intuitionistic-atom direction must stay unproved"
        );
        assert_proved("|- ~(exists_c x. ~p_c(x)) ->i forall x. p_c(x)");
    }

    #[test]
    fn proved_outcomes_recheck_cut_free() {
        for src in [
            "|- (a_i ->i b_i) ->i (a_i ->c b_i)",
            "a_i, a_i ->i b_i |- b_i",
            "|- a_i ->i a_i \\/i b_i",
        ] {
            assert_proved(src);
        }
    }

    #[test]
    fn consequence_reduces_to_implication() {
        // Antecedent form and implication form agree.
        assert_proved("a_i, b_i |- a_i /\\ b_i");
        assert_proved("|- (a_i /\\ b_i) ->i a_i /\\ b_i");
    }

    #[test]
    fn fragment_violations_are_errors() {
        let modal = parse_sequent("|- a_i").unwrap();
        assert!(prove_prop(&modal, &SearchBudget::default()).is_ok());
        let fo = parse_sequent("|- forall x. p_i(x)").unwrap();
        assert!(matches!(
            prove_prop(&fo, &SearchBudget::default()),
            Err(EngineError::Fragment(_))
        ));
        assert!(prove_fo(&fo, &SearchBudget::default()).is_ok());
    }
}
