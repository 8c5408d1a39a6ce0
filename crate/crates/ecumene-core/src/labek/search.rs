//! Bounded backward search for the labeled calculus. Frame rules saturate
//! eagerly, invertible rules fire without choice points, and the remaining
//! alternatives backtrack under a loop check that compares sequents up to
//! label renaming. Theory axioms are assumed as antecedent instances and
//! discharged by cuts against axiom leaves in the emitted proof.

use std::collections::{BTreeSet, HashSet};

use super::{check_labek_proof, Extension, Theory};
use crate::formula::{Formula, Label};
use crate::outcome::{EngineError, SearchBudget, SearchOutcome, UnknownReport};
use crate::proof::{Instantiation, LabekProof, LabekRule, ProofNode};
use crate::sequent::{CanonicalLabeled, LabeledSequent};

/// Prove a labeled sequent in the base calculus extended by `th`.
pub fn prove_labek(
    s: &LabeledSequent,
    th: &Theory,
    b: &SearchBudget,
) -> Result<SearchOutcome<LabekProof>, EngineError> {
    if !s.is_modal_fragment() {
        return Err(EngineError::Fragment("modal"));
    }
    if !b.is_valid() {
        return Err(EngineError::Budget);
    }
    let mut search = Search {
        budget: b,
        theory: th,
        depth_limit: 0,
        nodes: 0,
        history: HashSet::new(),
        label_counter: 0,
    };
    match search.deepening(s) {
        Ok(proof) => return Ok(SearchOutcome::Proved(proof)),
        Err(fail) => {
            if th.axioms.is_empty() {
                return Ok(SearchOutcome::Unknown(UnknownReport {
                    saturated: fail.saturated,
                    nodes_visited: search.nodes,
                }));
            }
        }
    }

    // Retry with axiom-scheme instances assumed in the antecedent,
    // instantiated over the goal's subformulas: one instance at a time (the
    // common case), then all of them together.
    let assumptions = axiom_assumptions(s, th);
    let mut attempts: Vec<Vec<(Label, Formula, String)>> =
        assumptions.iter().cloned().map(|a| vec![a]).collect();
    if assumptions.len() > 1 {
        attempts.push(assumptions);
    }
    for set in attempts {
        let enriched = s.with_formulas(set.iter().map(|(x, f, _)| (x.clone(), f.clone())));
        if let Ok(proof) = search.deepening(&enriched) {
            let proof = discharge_assumptions(proof, &set, th);
            return Ok(SearchOutcome::Proved(proof));
        }
        if search.nodes > b.max_nodes {
            break;
        }
    }
    Ok(SearchOutcome::Unknown(UnknownReport {
        saturated: false,
        nodes_visited: search.nodes,
    }))
}

/// Candidate axiom instances: single-metavariable schemes instantiated with
/// every subformula of the goal, at every goal label.
fn axiom_assumptions(
    s: &LabeledSequent,
    th: &Theory,
) -> Vec<(Label, Formula, String)> {
    const MAX_ASSUMPTIONS: usize = 64;
    let mut subformulas: Vec<Formula> = Vec::new();
    let mut push_subs = |f: &Formula| {
        for sub in f.subformulas() {
            if !subformulas.contains(sub) {
                subformulas.push(sub.clone());
            }
        }
    };
    push_subs(&s.succedent.1);
    for (_, f) in &s.antecedent {
        push_subs(f);
    }
    let labels = s.labels();
    let mut out = Vec::new();
    for scheme in &th.axioms {
        let metavars = scheme_metavars(&scheme.scheme);
        // Ground schemes are assumed as they stand; single-metavariable
        // schemes are instantiated over the goal's subformulas. Schemes
        // with several metavariables are left to explicit proof scripts.
        let instances: Vec<Formula> = match metavars.as_slice() {
            [] => vec![scheme.scheme.clone()],
            [var] => subformulas
                .iter()
                .map(|f| scheme_instantiate(&scheme.scheme, var, f))
                .collect(),
            _ => continue,
        };
        for inst in instances {
            for x in &labels {
                if out.len() >= MAX_ASSUMPTIONS {
                    return out;
                }
                out.push((x.clone(), inst.clone(), scheme.name.clone()));
            }
        }
    }
    out
}

fn scheme_metavars(scheme: &Formula) -> Vec<String> {
    let mut out = Vec::new();
    for f in scheme.subformulas() {
        if let Formula::IntAtom(n, args) = f {
            if args.is_empty() && !out.contains(n) {
                out.push(n.clone());
            }
        }
    }
    out
}

fn scheme_instantiate(scheme: &Formula, var: &str, with: &Formula) -> Formula {
    match scheme {
        Formula::IntAtom(n, args) if args.is_empty() && n == var => with.clone(),
        Formula::IntAtom(..) | Formula::ClAtom(..) | Formula::Bottom | Formula::Rel(..) => {
            scheme.clone()
        }
        Formula::Neg(a) => Formula::neg(scheme_instantiate(a, var, with)),
        Formula::Box(a) => Formula::boxed(scheme_instantiate(a, var, with)),
        Formula::DiaI(a) => Formula::dia_i(scheme_instantiate(a, var, with)),
        Formula::DiaC(a) => Formula::dia_c(scheme_instantiate(a, var, with)),
        Formula::And(l, r) => Formula::and(
            scheme_instantiate(l, var, with),
            scheme_instantiate(r, var, with),
        ),
        Formula::OrI(l, r) => Formula::or_i(
            scheme_instantiate(l, var, with),
            scheme_instantiate(r, var, with),
        ),
        Formula::OrC(l, r) => Formula::or_c(
            scheme_instantiate(l, var, with),
            scheme_instantiate(r, var, with),
        ),
        Formula::ImpI(l, r) => Formula::imp_i(
            scheme_instantiate(l, var, with),
            scheme_instantiate(r, var, with),
        ),
        Formula::ImpC(l, r) => Formula::imp_c(
            scheme_instantiate(l, var, with),
            scheme_instantiate(r, var, with),
        ),
        Formula::Forall(x, a) => {
            Formula::forall(x.clone(), scheme_instantiate(a, var, with))
        }
        Formula::ExistsI(x, a) => {
            Formula::exists_i(x.clone(), scheme_instantiate(a, var, with))
        }
        Formula::ExistsC(x, a) => {
            Formula::exists_c(x.clone(), scheme_instantiate(a, var, with))
        }
    }
}

/// Drop unused assumptions from the proof, then discharge the used ones with
/// cuts against axiom leaves so the result stands on the original sequent.
fn discharge_assumptions(
    mut proof: LabekProof,
    assumptions: &[(Label, Formula, String)],
    th: &Theory,
) -> LabekProof {
    let mut used = Vec::new();
    for (x, f, name) in assumptions.iter().rev() {
        let stripped = strip_everywhere(&proof, &(x.clone(), f.clone()));
        if check_labek_proof(&stripped, th, true).is_ok() {
            proof = stripped;
        } else {
            used.push((x.clone(), f.clone(), name.clone()));
        }
    }
    for (x, f, name) in used {
        let conclusion = proof
            .conclusion
            .remove_one(&(x.clone(), f.clone()))
            .expect("assumption present at root");
        let leaf = ProofNode::new(
            LabekRule::Axiom,
            conclusion.with_succedent((x.clone(), f.clone())),
            vec![],
        )
        .with_inst(Instantiation::axiom(name));
        proof = ProofNode::new(LabekRule::Cut, conclusion, vec![leaf, proof]);
    }
    proof
}

/// Remove one occurrence of a labeled formula from every sequent of the
/// tree. Only valid (and only checked) for occurrences that are never
/// principal.
fn strip_everywhere(p: &LabekProof, item: &(Label, Formula)) -> LabekProof {
    let conclusion = p.conclusion.remove_one(item).unwrap_or_else(|| p.conclusion.clone());
    let premises = p
        .premises
        .iter()
        .map(|prem| strip_everywhere(prem, item))
        .collect();
    let mut node = ProofNode::new(p.rule, conclusion, premises);
    node.instantiation = p.instantiation.clone();
    node
}

struct Fail {
    saturated: bool,
}

struct Search<'a> {
    budget: &'a SearchBudget,
    theory: &'a Theory,
    depth_limit: usize,
    nodes: usize,
    history: HashSet<CanonicalLabeled>,
    label_counter: usize,
}

type Step = Result<LabekProof, Fail>;

impl Search<'_> {
    /// Iterative-deepening driver; a saturated shallow pass is final.
    fn deepening(&mut self, seq: &LabeledSequent) -> Step {
        let mut last = Fail { saturated: false };
        for limit in crate::outcome::deepening_steps(self.budget.max_depth) {
            self.depth_limit = limit;
            self.history.clear();
            match self.attempt(seq, 0) {
                Ok(proof) => return Ok(proof),
                Err(fail) => {
                    let done = fail.saturated;
                    last = fail;
                    if done || self.nodes > self.budget.max_nodes {
                        break;
                    }
                }
            }
        }
        Err(last)
    }

    fn fresh_label(&mut self, seq: &LabeledSequent) -> Label {
        let labels = seq.labels();
        loop {
            let candidate = Label::new(format!("y{}", self.label_counter));
            self.label_counter += 1;
            if !labels.contains(&candidate) {
                return candidate;
            }
        }
    }

    fn attempt(&mut self, seq: &LabeledSequent, depth: usize) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes || depth > self.depth_limit {
            return Err(Fail { saturated: false });
        }

        if let Some(leaf) = self.closure(seq) {
            return Ok(leaf);
        }
        if let Some(step) = self.eager(seq, depth) {
            return step;
        }

        let key = seq.canonical_key();
        if !self.history.insert(key.clone()) {
            return Err(Fail { saturated: true });
        }
        let result = self.choices(seq, depth);
        self.history.remove(&key);
        result
    }

    fn closure(&self, seq: &LabeledSequent) -> Option<LabekProof> {
        if seq.antecedent.contains(&seq.succedent) {
            return Some(ProofNode::new(LabekRule::Init, seq.clone(), vec![]));
        }
        if seq.antecedent.iter().any(|(_, f)| *f == Formula::Bottom) {
            return Some(ProofNode::new(LabekRule::Bot, seq.clone(), vec![]));
        }
        if let Some(ax) = self.theory.axiom_for(&seq.succedent.1) {
            return Some(
                ProofNode::new(LabekRule::Axiom, seq.clone(), vec![])
                    .with_inst(Instantiation::axiom(ax.name.clone())),
            );
        }
        None
    }

    fn eager(&mut self, seq: &LabeledSequent, depth: usize) -> Option<Step> {
        let (sl, sf) = (seq.succedent.0.clone(), seq.succedent.1.clone());

        if let Some((x, f)) = first(seq, |f| matches!(f, Formula::And(..))) {
            let Formula::And(a, b) = &f else { unreachable!() };
            let rest = seq.remove_one(&(x.clone(), f.clone())).unwrap();
            let prem =
                rest.with_formulas([(x.clone(), (**a).clone()), (x.clone(), (**b).clone())]);
            return Some(self.unary(LabekRule::AndL, seq, prem, depth, None));
        }
        if let Some((x, f)) = first(seq, |f| matches!(f, Formula::DiaI(..))) {
            let Formula::DiaI(a) = &f else { unreachable!() };
            let y = self.fresh_label(seq);
            let rest = seq.remove_one(&(x.clone(), f.clone())).unwrap();
            let prem = rest
                .with_rel(x.clone(), y.clone())
                .with_formulas([(y.clone(), (**a).clone())]);
            return Some(self.unary(
                LabekRule::DiaIL,
                seq,
                prem,
                depth,
                Some(Instantiation::eigen(y.as_str())),
            ));
        }
        if sf == Formula::Bottom {
            if let Some((x, f)) =
                first(seq, |f| matches!(f, Formula::DiaC(..))).filter(|(x, _)| *x == sl)
            {
                let Formula::DiaC(a) = &f else { unreachable!() };
                let y = self.fresh_label(seq);
                let rest = seq.remove_one(&(x.clone(), f.clone())).unwrap();
                let prem = rest
                    .with_rel(x.clone(), y.clone())
                    .with_formulas([(y.clone(), (**a).clone())]);
                return Some(self.unary(
                    LabekRule::DiaCL,
                    seq,
                    prem,
                    depth,
                    Some(Instantiation::eigen(y.as_str())),
                ));
            }
            if let Some((x, f)) =
                first(seq, |f| matches!(f, Formula::ClAtom(..))).filter(|(x, _)| *x == sl)
            {
                let Formula::ClAtom(n, args) = &f else { unreachable!() };
                let rest = seq.remove_one(&(x.clone(), f.clone())).unwrap();
                let prem =
                    rest.with_formulas([(x.clone(), Formula::IntAtom(n.clone(), args.clone()))]);
                return Some(self.unary(LabekRule::Lc, seq, prem, depth, None));
            }
        }

        match &sf {
            Formula::ImpI(a, b) => {
                let prem = seq
                    .with_formulas([(sl.clone(), (**a).clone())])
                    .with_succedent((sl.clone(), (**b).clone()));
                return Some(self.unary(LabekRule::ImpIR, seq, prem, depth, None));
            }
            Formula::Neg(a) => {
                let prem = seq
                    .with_formulas([(sl.clone(), (**a).clone())])
                    .with_succedent((sl.clone(), Formula::Bottom));
                return Some(self.unary(LabekRule::NegR, seq, prem, depth, None));
            }
            Formula::ImpC(a, b) => {
                let prem = seq
                    .with_formulas([
                        (sl.clone(), (**a).clone()),
                        (sl.clone(), Formula::neg((**b).clone())),
                    ])
                    .with_succedent((sl.clone(), Formula::Bottom));
                return Some(self.unary(LabekRule::ImpCR, seq, prem, depth, None));
            }
            Formula::OrC(a, b) => {
                let prem = seq
                    .with_formulas([
                        (sl.clone(), Formula::neg((**a).clone())),
                        (sl.clone(), Formula::neg((**b).clone())),
                    ])
                    .with_succedent((sl.clone(), Formula::Bottom));
                return Some(self.unary(LabekRule::OrCR, seq, prem, depth, None));
            }
            Formula::ClAtom(n, args) => {
                let prem = seq
                    .with_formulas([(
                        sl.clone(),
                        Formula::neg(Formula::IntAtom(n.clone(), args.clone())),
                    )])
                    .with_succedent((sl.clone(), Formula::Bottom));
                return Some(self.unary(LabekRule::Rc, seq, prem, depth, None));
            }
            Formula::DiaC(a) => {
                let prem = seq
                    .with_formulas([(
                        sl.clone(),
                        Formula::boxed(Formula::neg((**a).clone())),
                    )])
                    .with_succedent((sl.clone(), Formula::Bottom));
                return Some(self.unary(LabekRule::DiaCR, seq, prem, depth, None));
            }
            Formula::Box(a) => {
                let y = self.fresh_label(seq);
                let prem = seq
                    .with_rel(sl.clone(), y.clone())
                    .with_succedent((y.clone(), (**a).clone()));
                return Some(self.unary(
                    LabekRule::BoxR,
                    seq,
                    prem,
                    depth,
                    Some(Instantiation::eigen(y.as_str())),
                ));
            }
            _ => {}
        }

        if let Some((x, f)) = first(seq, |f| matches!(f, Formula::OrI(..))) {
            let Formula::OrI(a, b) = &f else { unreachable!() };
            let rest = seq.remove_one(&(x.clone(), f.clone())).unwrap();
            let prems = vec![
                rest.with_formulas([(x.clone(), (**a).clone())]),
                rest.with_formulas([(x.clone(), (**b).clone())]),
            ];
            return Some(self.nary(LabekRule::OrIL, seq, prems, depth));
        }
        if sf == Formula::Bottom {
            if let Some((x, f)) =
                first(seq, |f| matches!(f, Formula::OrC(..))).filter(|(x, _)| *x == sl)
            {
                let Formula::OrC(a, b) = &f else { unreachable!() };
                let rest = seq.remove_one(&(x.clone(), f.clone())).unwrap();
                let prems = vec![
                    rest.with_formulas([(x.clone(), (**a).clone())]),
                    rest.with_formulas([(x.clone(), (**b).clone())]),
                ];
                return Some(self.nary(LabekRule::OrCL, seq, prems, depth));
            }
        }

        if let Formula::And(a, b) = &sf {
            let prems = vec![
                seq.with_succedent((sl.clone(), (**a).clone())),
                seq.with_succedent((sl.clone(), (**b).clone())),
            ];
            return Some(self.nary(LabekRule::AndR, seq, prems, depth));
        }

        // Frame-rule saturation: add one missing relational consequence.
        if let Some((rule, x, y)) = self.missing_rel(seq) {
            let prem = seq.with_rel(x, y);
            return Some(self.unary(rule, seq, prem, depth, None));
        }
        None
    }

    /// First relational atom an enabled frame rule can add.
    fn missing_rel(&self, seq: &LabeledSequent) -> Option<(LabekRule, Label, Label)> {
        if self.theory.allows(Extension::T) {
            for x in seq.labels() {
                if !seq.has_rel(&x, &x) {
                    return Some((LabekRule::Refl, x.clone(), x));
                }
            }
        }
        if self.theory.allows(Extension::Four) {
            for (x, y) in &seq.rel_atoms {
                for (y2, z) in &seq.rel_atoms {
                    if y == y2 && !seq.has_rel(x, z) {
                        return Some((LabekRule::Trans, x.clone(), z.clone()));
                    }
                }
            }
        }
        if self.theory.allows(Extension::Five) {
            for (x, y) in &seq.rel_atoms {
                for (x2, z) in &seq.rel_atoms {
                    if x == x2 && !seq.has_rel(y, z) {
                        return Some((LabekRule::Eucl, y.clone(), z.clone()));
                    }
                }
            }
        }
        if self.theory.allows(Extension::B) {
            for (x, y) in &seq.rel_atoms {
                if !seq.has_rel(y, x) {
                    return Some((LabekRule::Symm, y.clone(), x.clone()));
                }
            }
        }
        None
    }

    fn unary(
        &mut self,
        rule: LabekRule,
        seq: &LabeledSequent,
        premise: LabeledSequent,
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
        rule: LabekRule,
        seq: &LabeledSequent,
        premises: Vec<LabeledSequent>,
        depth: usize,
    ) -> Step {
        let mut subs = Vec::with_capacity(premises.len());
        for prem in &premises {
            subs.push(self.attempt(prem, depth + 1)?);
        }
        Ok(ProofNode::new(rule, seq.clone(), subs))
    }

    fn choices(&mut self, seq: &LabeledSequent, depth: usize) -> Step {
        let (sl, sf) = (seq.succedent.0.clone(), seq.succedent.1.clone());
        let mut saturated = true;
        let mut tried = 0usize;

        macro_rules! attempt_choice {
            ($step:expr) => {
                tried += 1;
                match $step {
                    Ok(proof) => return Ok(proof),
                    Err(fail) => saturated &= fail.saturated,
                }
            };
        }

        if let Formula::OrI(a, b) = &sf {
            attempt_choice!(self.unary(
                LabekRule::OrIR1,
                seq,
                seq.with_succedent((sl.clone(), (**a).clone())),
                depth,
                None
            ));
            attempt_choice!(self.unary(
                LabekRule::OrIR2,
                seq,
                seq.with_succedent((sl.clone(), (**b).clone())),
                depth,
                None
            ));
        }

        if let Formula::DiaI(a) = &sf {
            let targets: Vec<Label> = seq
                .rel_atoms
                .iter()
                .filter(|(x, _)| *x == sl)
                .map(|(_, y)| y.clone())
                .collect();
            for y in dedup(targets) {
                attempt_choice!(self.unary(
                    LabekRule::DiaIR,
                    seq,
                    seq.with_succedent((y, (**a).clone())),
                    depth,
                    None
                ));
            }
        }

        for (x, f) in distinct(seq, |f| matches!(f, Formula::Box(..))) {
            let Formula::Box(a) = &f else { unreachable!() };
            let targets: Vec<Label> = seq
                .rel_atoms
                .iter()
                .filter(|(s, _)| *s == x)
                .map(|(_, y)| y.clone())
                .collect();
            for y in dedup(targets) {
                let new_item = (y.clone(), (**a).clone());
                if seq.antecedent.contains(&new_item) {
                    continue; // already instantiated here
                }
                attempt_choice!(self.unary(
                    LabekRule::BoxL,
                    seq,
                    seq.with_formulas([new_item]),
                    depth,
                    None
                ));
            }
        }

        for (x, f) in distinct(seq, |f| matches!(f, Formula::ImpI(..))) {
            let Formula::ImpI(a, b) = &f else { unreachable!() };
            let rest = seq.remove_one(&(x.clone(), f.clone())).unwrap();
            let prems = vec![
                seq.with_succedent((x.clone(), (**a).clone())), // principal kept
                rest.with_formulas([(x.clone(), (**b).clone())]),
            ];
            attempt_choice!(self.nary(LabekRule::ImpIL, seq, prems, depth));
        }

        if sf == Formula::Bottom {
            for (x, f) in distinct(seq, |f| matches!(f, Formula::Neg(..))) {
                if x != sl {
                    continue;
                }
                let Formula::Neg(a) = &f else { unreachable!() };
                attempt_choice!(self.unary(
                    LabekRule::NegL,
                    seq,
                    seq.with_succedent((x.clone(), (**a).clone())), // kept
                    depth,
                    None
                ));
            }
            for (x, f) in distinct(seq, |f| matches!(f, Formula::ImpC(..))) {
                if x != sl {
                    continue;
                }
                let Formula::ImpC(a, b) = &f else { unreachable!() };
                let rest = seq.remove_one(&(x.clone(), f.clone())).unwrap();
                let prems = vec![
                    seq.with_succedent((x.clone(), (**a).clone())), // kept
                    rest.with_formulas([(x.clone(), (**b).clone())])
                        .with_succedent((x.clone(), Formula::Bottom)),
                ];
                attempt_choice!(self.nary(LabekRule::ImpCL, seq, prems, depth));
            }
        }

        // Weakening: retarget the succedent to bottom at a label whose
        // formulas can consume it.
        for z in consumer_labels(seq) {
            if sf == Formula::Bottom && z == sl {
                continue;
            }
            attempt_choice!(self.unary(
                LabekRule::W,
                seq,
                seq.with_succedent((z.clone(), Formula::Bottom)),
                depth,
                None
            ));
        }

        if tried == 0 {
            return Err(Fail { saturated: true });
        }
        Err(Fail { saturated })
    }
}

fn first(
    seq: &LabeledSequent,
    shape: impl Fn(&Formula) -> bool,
) -> Option<(Label, Formula)> {
    seq.antecedent.iter().find(|(_, f)| shape(f)).cloned()
}

fn distinct(
    seq: &LabeledSequent,
    shape: impl Fn(&Formula) -> bool,
) -> Vec<(Label, Formula)> {
    let mut seen = BTreeSet::new();
    seq.antecedent
        .iter()
        .filter(|(_, f)| shape(f))
        .filter(|item| seen.insert((*item).clone()))
        .cloned()
        .collect()
}

fn dedup(labels: Vec<Label>) -> Vec<Label> {
    let mut seen = BTreeSet::new();
    labels.into_iter().filter(|l| seen.insert(l.clone())).collect()
}

/// Labels at which a bottom succedent can be consumed by a left rule.
fn consumer_labels(seq: &LabeledSequent) -> Vec<Label> {
    let mut seen = BTreeSet::new();
    seq.antecedent
        .iter()
        .filter(|(_, f)| {
            matches!(
                f,
                Formula::Neg(..)
                    | Formula::OrC(..)
                    | Formula::ImpC(..)
                    | Formula::DiaC(..)
                    | Formula::ClAtom(..)
            )
        })
        .map(|(l, _)| l.clone())
        .filter(|l| seen.insert(l.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labek::AxiomScheme;
    use crate::parser::parse_labeled_sequent;

    fn prove_plain(src: &str) -> SearchOutcome<LabekProof> {
        let seq = parse_labeled_sequent(src).unwrap();
        prove_labek(&seq, &Theory::plain(), &SearchBudget::default()).unwrap()
    }

    fn assert_proved_plain(src: &str) {
        match prove_plain(src) {
            SearchOutcome::Proved(p) => {
                check_labek_proof(&p, &Theory::plain(), false).unwrap();
                assert!(p.cut_free());
            }
            _ => panic!("expected Proved for {src}"),
        }
    }

    #[test]
    fn distribution_axioms_provable() {
        assert_proved_plain("|- x: box (a_i ->i b_i) ->i (box a_i ->i box b_i)");
        assert_proved_plain("|- x: box (a_i ->i b_i) ->i (dia_i a_i ->i dia_i b_i)");
        assert_proved_plain("|- x: dia_i (a_i \\/i b_i) ->i (dia_i a_i \\/i dia_i b_i)");
        assert_proved_plain("|- x: (dia_i a_i ->i box b_i) ->i box (a_i ->i b_i)");
        assert_proved_plain("|- x: dia_i bot ->i bot");
    }

    #[test]
    fn classical_diamond_duality() {
        assert_proved_plain("|- x: dia_c a_i <->i ~box ~a_i");
        assert_proved_plain("|- x: box a_c <->i ~dia_c ~a_c");
    }

    #[test]
    fn box_dia_i_not_interdefinable() {
        let out = prove_plain("|- x: ~dia_i ~a_i ->i box a_i");
        assert!(!out.is_proved());
    }

    #[test]
    fn t_rule_enables_reflexivity_theorems() {
        let th = Theory::with_extensions([Extension::T]);
        let b = SearchBudget::default();
        for src in ["|- x: box a_i ->i a_i", "|- x: a_i ->i dia_i a_i"] {
            let seq = parse_labeled_sequent(src).unwrap();
            let out = prove_labek(&seq, &th, &b).unwrap();
            match out {
                SearchOutcome::Proved(p) => {
                    check_labek_proof(&p, &th, false).unwrap();
                }
                _ => panic!("expected Proved for {src}"),
            }
        }
    }

    #[test]
    fn collapse_with_interdefinability_axiom() {
        let seq = parse_labeled_sequent("|- x: a_i \\/i ~a_i").unwrap();
        let b = SearchBudget::default();

        let plain_t = Theory::with_extensions([Extension::T]);
        let out = prove_labek(&seq, &plain_t, &b).unwrap();
        assert!(out.is_saturated_unknown(), "expected saturation in plain EKT");

        let with_axiom = plain_t.clone().with_axiom(AxiomScheme::interdefinability());
        match prove_labek(&seq, &with_axiom, &b).unwrap() {
            SearchOutcome::Proved(p) => {
                check_labek_proof(&p, &with_axiom, false).unwrap();
                // The discharge is by cut against axiom leaves.
                assert!(!p.cut_free());
            }
            _ => panic!("expected Proved with the interdefinability axiom"),
        }
    }

    #[test]
    fn monotone_under_theory_extension() {
        let seq = parse_labeled_sequent("|- x: box (a_i ->i b_i) ->i (box a_i ->i box b_i)")
            .unwrap();
        let b = SearchBudget::default();
        for th in [
            Theory::plain(),
            Theory::with_extensions([Extension::T]),
            Theory::with_extensions([Extension::T, Extension::Four]),
            Theory::with_extensions([Extension::T, Extension::Four, Extension::Five, Extension::B]),
        ] {
            let out = prove_labek(&seq, &th, &b).unwrap();
            assert!(out.is_proved(), "k must stay provable under {th:?}");
        }
    }
}
