//! The labeled sequent calculus for the ecumenical modal logic: rule-schema
//! checker, frame-rule extensions, axiom leaves, and bounded proof search.
//! Cut elimination lives in `cut`, the structural toolkit it relies on in
//! `structural`.

pub mod cut;
mod search;
pub mod structural;

pub use cut::{eliminate_cut_step, eliminate_cuts, CutError, CutStep};
pub use search::prove_labek;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::formula::{Formula, Label};
use crate::proof::{path_string, LabekProof, LabekRule};
use crate::sequent::LabeledSequent;

/// Frame-rule extensions internalizing the Table-1 conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Extension {
    T,
    Four,
    Five,
    B,
}

impl Extension {
    pub fn as_str(&self) -> &'static str {
        match self {
            Extension::T => "T",
            Extension::Four => "4",
            Extension::Five => "5",
            Extension::B => "B",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "T" | "t" => Some(Extension::T),
            "4" => Some(Extension::Four),
            "5" => Some(Extension::Five),
            "B" | "b" => Some(Extension::B),
            _ => None,
        }
    }

    pub fn rule(&self) -> LabekRule {
        match self {
            Extension::T => LabekRule::Refl,
            Extension::Four => LabekRule::Trans,
            Extension::Five => LabekRule::Eucl,
            Extension::B => LabekRule::Symm,
        }
    }
}

/// A named axiom scheme admitted as a leaf. Zero-arity intuitionistic atoms
/// in the scheme are metavariables ranging over modal-fragment formulas;
/// everything else matches literally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomScheme {
    pub name: String,
    pub scheme: Formula,
}

impl AxiomScheme {
    pub fn new(name: impl Into<String>, scheme: Formula) -> Self {
        AxiomScheme {
            name: name.into(),
            scheme,
        }
    }

    /// The interdefinability axiom `~dia_i ~A ->i box A` whose addition
    /// collapses the intuitionistic disjunction to the classical one.
    pub fn interdefinability() -> Self {
        let a = Formula::iprop("a");
        AxiomScheme::new(
            "interdef",
            Formula::imp_i(
                Formula::neg(Formula::dia_i(Formula::neg(a.clone()))),
                Formula::boxed(a),
            ),
        )
    }

    pub fn matches(&self, target: &Formula) -> bool {
        let mut env = BTreeMap::new();
        scheme_match(&self.scheme, target, &mut env)
    }
}

fn scheme_match(scheme: &Formula, target: &Formula, env: &mut BTreeMap<String, Formula>) -> bool {
    match (scheme, target) {
        (Formula::IntAtom(n, args), t) if args.is_empty() => match env.get(n) {
            Some(bound) => bound == t,
            None => {
                if t.is_modal_fragment() {
                    env.insert(n.clone(), t.clone());
                    true
                } else {
                    false
                }
            }
        },
        (Formula::ClAtom(n1, a1), Formula::ClAtom(n2, a2)) => n1 == n2 && a1 == a2,
        (Formula::Bottom, Formula::Bottom) => true,
        (Formula::Neg(a), Formula::Neg(b)) => scheme_match(a, b, env),
        (Formula::Box(a), Formula::Box(b)) => scheme_match(a, b, env),
        (Formula::DiaI(a), Formula::DiaI(b)) => scheme_match(a, b, env),
        (Formula::DiaC(a), Formula::DiaC(b)) => scheme_match(a, b, env),
        (Formula::And(a, b), Formula::And(c, d))
        | (Formula::OrI(a, b), Formula::OrI(c, d))
        | (Formula::OrC(a, b), Formula::OrC(c, d))
        | (Formula::ImpI(a, b), Formula::ImpI(c, d))
        | (Formula::ImpC(a, b), Formula::ImpC(c, d)) => {
            scheme_match(a, c, env) && scheme_match(b, d, env)
        }
        _ => false,
    }
}

/// Enabled extensions and axiom leaves for checking and search.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Theory {
    pub extensions: BTreeSet<Extension>,
    pub axioms: Vec<AxiomScheme>,
}

impl Theory {
    pub fn plain() -> Self {
        Theory::default()
    }

    pub fn with_extensions(exts: impl IntoIterator<Item = Extension>) -> Self {
        Theory {
            extensions: exts.into_iter().collect(),
            axioms: Vec::new(),
        }
    }

    pub fn with_axiom(mut self, ax: AxiomScheme) -> Self {
        self.axioms.push(ax);
        self
    }

    pub fn allows(&self, ext: Extension) -> bool {
        self.extensions.contains(&ext)
    }

    pub fn axiom_for(&self, target: &Formula) -> Option<&AxiomScheme> {
        self.axioms.iter().find(|ax| ax.matches(target))
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("{rule} at {}: {message}", path_string(.path))]
pub struct CheckError {
    pub path: Vec<usize>,
    pub rule: String,
    pub message: String,
}

fn fail(path: &[usize], rule: LabekRule, message: impl Into<String>) -> CheckError {
    CheckError {
        path: path.to_vec(),
        rule: rule.as_str().to_string(),
        message: message.into(),
    }
}

/// Check a labeled proof against the base rules, the theory's frame rules
/// and axiom leaves, and (when allowed) cut. With `allow_cut` unset, cut
/// nodes are still accepted when their left premise is an axiom leaf: that
/// is the theory mechanism for assuming axiom instances, not a use of the
/// admissible cut.
pub fn check_labek_proof(p: &LabekProof, th: &Theory, allow_cut: bool) -> Result<(), CheckError> {
    check_node(p, th, allow_cut, &mut Vec::new())
}

fn check_node(
    p: &LabekProof,
    th: &Theory,
    allow_cut: bool,
    path: &mut Vec<usize>,
) -> Result<(), CheckError> {
    check_rule(p, th, allow_cut, path)?;
    for (i, premise) in p.premises.iter().enumerate() {
        path.push(i);
        check_node(premise, th, allow_cut, path)?;
        path.pop();
    }
    Ok(())
}

fn premise_count(p: &LabekProof, n: usize, path: &[usize]) -> Result<(), CheckError> {
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

fn expect_premise(
    p: &LabekProof,
    idx: usize,
    expected: &LabeledSequent,
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

fn try_principals(
    p: &LabekProof,
    path: &[usize],
    cands: Vec<(Label, Formula)>,
    build: impl Fn(&Label, &Formula) -> Option<Vec<LabeledSequent>>,
    shape_msg: &str,
) -> Result<(), CheckError> {
    if cands.is_empty() {
        return Err(fail(path, p.rule, format!("no labeled formula {shape_msg}")));
    }
    let mut last_err = None;
    for (x, f) in cands {
        let Some(expected) = build(&x, &f) else { continue };
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
        fail(path, p.rule, format!("no labeled formula {shape_msg} fits the premises"))
    }))
}

fn principals(
    s: &LabeledSequent,
    shape: impl Fn(&Formula) -> bool,
) -> Vec<(Label, Formula)> {
    let mut seen = BTreeSet::new();
    s.antecedent
        .iter()
        .filter(|(_, f)| shape(f))
        .filter(|item| seen.insert((*item).clone()))
        .cloned()
        .collect()
}

fn check_rule(
    p: &LabekProof,
    th: &Theory,
    allow_cut: bool,
    path: &[usize],
) -> Result<(), CheckError> {
    let seq = &p.conclusion;
    let (sl, sf) = (&seq.succedent.0, &seq.succedent.1);
    match p.rule {
        LabekRule::Init => {
            premise_count(p, 0, path)?;
            if seq.antecedent.contains(&seq.succedent) {
                Ok(())
            } else {
                Err(fail(path, p.rule, "succedent does not occur in the antecedent"))
            }
        }
        LabekRule::Bot => {
            premise_count(p, 0, path)?;
            if seq.antecedent.iter().any(|(_, f)| *f == Formula::Bottom) {
                Ok(())
            } else {
                Err(fail(path, p.rule, "no labeled bottom in the antecedent"))
            }
        }
        LabekRule::Axiom => {
            premise_count(p, 0, path)?;
            let recorded = p.instantiation.as_ref().and_then(|i| i.axiom.as_ref());
            let matched = match recorded {
                Some(name) => th
                    .axioms
                    .iter()
                    .find(|ax| ax.name == *name)
                    .is_some_and(|ax| ax.matches(sf)),
                None => th.axiom_for(sf).is_some(),
            };
            if matched {
                Ok(())
            } else {
                Err(fail(
                    path,
                    p.rule,
                    "succedent is not an instance of an enabled axiom scheme",
                ))
            }
        }
        LabekRule::W => {
            premise_count(p, 1, path)?;
            let prem = &p.premises[0].conclusion;
            if prem.succedent.1 != Formula::Bottom {
                return Err(fail(path, p.rule, "premise succedent must be a labeled bottom"));
            }
            let expected = seq.with_succedent(prem.succedent.clone());
            expect_premise(p, 0, &expected, path, "context must be unchanged")
        }
        LabekRule::AndL => {
            premise_count(p, 1, path)?;
            try_principals(
                p,
                path,
                principals(seq, |f| matches!(f, Formula::And(..))),
                |x, f| {
                    let Formula::And(a, b) = f else { return None };
                    let rest = seq.remove_one(&(x.clone(), f.clone()))?;
                    Some(vec![rest.with_formulas([
                        (x.clone(), (**a).clone()),
                        (x.clone(), (**b).clone()),
                    ])])
                },
                "of shape `x: A /\\ B`",
            )
        }
        LabekRule::AndR => {
            premise_count(p, 2, path)?;
            let Formula::And(a, b) = sf else {
                return Err(fail(path, p.rule, "succedent is not a conjunction"));
            };
            expect_premise(
                p,
                0,
                &seq.with_succedent((sl.clone(), (**a).clone())),
                path,
                "left conjunct",
            )?;
            expect_premise(
                p,
                1,
                &seq.with_succedent((sl.clone(), (**b).clone())),
                path,
                "right conjunct",
            )
        }
        LabekRule::OrIL => {
            premise_count(p, 2, path)?;
            try_principals(
                p,
                path,
                principals(seq, |f| matches!(f, Formula::OrI(..))),
                |x, f| {
                    let Formula::OrI(a, b) = f else { return None };
                    let rest = seq.remove_one(&(x.clone(), f.clone()))?;
                    Some(vec![
                        rest.with_formulas([(x.clone(), (**a).clone())]),
                        rest.with_formulas([(x.clone(), (**b).clone())]),
                    ])
                },
                "of shape `x: A \\/i B`",
            )
        }
        LabekRule::OrIR1 | LabekRule::OrIR2 => {
            premise_count(p, 1, path)?;
            let Formula::OrI(a, b) = sf else {
                return Err(fail(path, p.rule, "succedent is not an intuitionistic disjunction"));
            };
            let pick = if p.rule == LabekRule::OrIR1 { a } else { b };
            expect_premise(
                p,
                0,
                &seq.with_succedent((sl.clone(), (**pick).clone())),
                path,
                "chosen disjunct",
            )
        }
        LabekRule::OrCL => {
            premise_count(p, 2, path)?;
            if *sf != Formula::Bottom {
                return Err(fail(path, p.rule, "conclusion succedent must be a labeled bottom"));
            }
            try_principals(
                p,
                path,
                principals(seq, |f| matches!(f, Formula::OrC(..))),
                |x, f| {
                    if x != sl {
                        return None; // principal label must match the bottom's label
                    }
                    let Formula::OrC(a, b) = f else { return None };
                    let rest = seq.remove_one(&(x.clone(), f.clone()))?;
                    Some(vec![
                        rest.with_formulas([(x.clone(), (**a).clone())]),
                        rest.with_formulas([(x.clone(), (**b).clone())]),
                    ])
                },
                "of shape `x: A \\/c B` at the succedent's label",
            )
        }
        LabekRule::OrCR => {
            premise_count(p, 1, path)?;
            let Formula::OrC(a, b) = sf else {
                return Err(fail(path, p.rule, "succedent is not a classical disjunction"));
            };
            let expected = seq
                .with_succedent((sl.clone(), Formula::Bottom))
                .with_formulas([
                    (sl.clone(), Formula::neg((**a).clone())),
                    (sl.clone(), Formula::neg((**b).clone())),
                ]);
            expect_premise(p, 0, &expected, path, "negated disjuncts at the same label")
        }
        LabekRule::ImpIL => {
            premise_count(p, 2, path)?;
            try_principals(
                p,
                path,
                principals(seq, |f| matches!(f, Formula::ImpI(..))),
                |x, f| {
                    let Formula::ImpI(a, b) = f else { return None };
                    let rest = seq.remove_one(&(x.clone(), f.clone()))?;
                    Some(vec![
                        seq.with_succedent((x.clone(), (**a).clone())), // principal kept
                        rest.with_formulas([(x.clone(), (**b).clone())]),
                    ])
                },
                "of shape `x: A ->i B`",
            )
        }
        LabekRule::ImpIR => {
            premise_count(p, 1, path)?;
            let Formula::ImpI(a, b) = sf else {
                return Err(fail(path, p.rule, "succedent is not an intuitionistic implication"));
            };
            let expected = seq
                .with_succedent((sl.clone(), (**b).clone()))
                .with_formulas([(sl.clone(), (**a).clone())]);
            expect_premise(p, 0, &expected, path, "assumed antecedent at the same label")
        }
        LabekRule::ImpCL => {
            premise_count(p, 2, path)?;
            if *sf != Formula::Bottom {
                return Err(fail(path, p.rule, "conclusion succedent must be a labeled bottom"));
            }
            // The right premise may conclude bottom at any label.
            let right_succ = p.premises[1].conclusion.succedent.clone();
            if right_succ.1 != Formula::Bottom {
                return Err(fail(path, p.rule, "right premise succedent must be a labeled bottom"));
            }
            try_principals(
                p,
                path,
                principals(seq, |f| matches!(f, Formula::ImpC(..))),
                |x, f| {
                    if x != sl {
                        return None;
                    }
                    let Formula::ImpC(a, b) = f else { return None };
                    let rest = seq.remove_one(&(x.clone(), f.clone()))?;
                    Some(vec![
                        seq.with_succedent((x.clone(), (**a).clone())), // principal kept
                        rest.with_formulas([(x.clone(), (**b).clone())])
                            .with_succedent(right_succ.clone()),
                    ])
                },
                "of shape `x: A ->c B` at the succedent's label",
            )
        }
        LabekRule::ImpCR => {
            premise_count(p, 1, path)?;
            let Formula::ImpC(a, b) = sf else {
                return Err(fail(path, p.rule, "succedent is not a classical implication"));
            };
            let expected = seq
                .with_succedent((sl.clone(), Formula::Bottom))
                .with_formulas([
                    (sl.clone(), (**a).clone()),
                    (sl.clone(), Formula::neg((**b).clone())),
                ]);
            expect_premise(p, 0, &expected, path, "assumptions at the same label")
        }
        LabekRule::NegL => {
            premise_count(p, 1, path)?;
            if *sf != Formula::Bottom {
                return Err(fail(path, p.rule, "conclusion succedent must be a labeled bottom"));
            }
            try_principals(
                p,
                path,
                principals(seq, |f| matches!(f, Formula::Neg(..))),
                |x, f| {
                    if x != sl {
                        return None;
                    }
                    let Formula::Neg(a) = f else { return None };
                    Some(vec![seq.with_succedent((x.clone(), (**a).clone()))]) // kept
                },
                "of shape `x: ~A` at the succedent's label",
            )
        }
        LabekRule::NegR => {
            premise_count(p, 1, path)?;
            let Formula::Neg(a) = sf else {
                return Err(fail(path, p.rule, "succedent is not a negation"));
            };
            let expected = seq
                .with_succedent((sl.clone(), Formula::Bottom))
                .with_formulas([(sl.clone(), (**a).clone())]);
            expect_premise(p, 0, &expected, path, "assumed body at the same label")
        }
        LabekRule::Lc => {
            premise_count(p, 1, path)?;
            if *sf != Formula::Bottom {
                return Err(fail(path, p.rule, "conclusion succedent must be a labeled bottom"));
            }
            try_principals(
                p,
                path,
                principals(seq, |f| matches!(f, Formula::ClAtom(..))),
                |x, f| {
                    if x != sl {
                        return None;
                    }
                    let Formula::ClAtom(n, args) = f else { return None };
                    let rest = seq.remove_one(&(x.clone(), f.clone()))?;
                    Some(vec![rest.with_formulas([(
                        x.clone(),
                        Formula::IntAtom(n.clone(), args.clone()),
                    )])])
                },
                "that is a classical atom at the succedent's label",
            )
        }
        LabekRule::Rc => {
            premise_count(p, 1, path)?;
            let Formula::ClAtom(n, args) = sf else {
                return Err(fail(path, p.rule, "succedent is not a classical atom"));
            };
            let expected = seq
                .with_succedent((sl.clone(), Formula::Bottom))
                .with_formulas([(
                    sl.clone(),
                    Formula::neg(Formula::IntAtom(n.clone(), args.clone())),
                )]);
            expect_premise(p, 0, &expected, path, "negated intuitionistic atom")
        }
        LabekRule::BoxL => {
            premise_count(p, 1, path)?;
            let mut cands = Vec::new();
            for (x, f) in principals(seq, |f| matches!(f, Formula::Box(..))) {
                for (a, b) in &seq.rel_atoms {
                    if *a == x {
                        cands.push((x.clone(), f.clone(), b.clone()));
                    }
                }
            }
            if cands.is_empty() {
                return Err(fail(
                    path,
                    p.rule,
                    "no boxed formula with a matching relational atom",
                ));
            }
            let mut last_err = None;
            for (x, f, y) in cands {
                let Formula::Box(a) = &f else { continue };
                let expected = seq.with_formulas([(y.clone(), (**a).clone())]); // principal kept
                match expect_premise(p, 0, &expected, path, "instantiated body") {
                    Ok(()) => {
                        let _ = x;
                        return Ok(());
                    }
                    Err(e) => last_err = Some(e),
                }
            }
            Err(last_err.unwrap())
        }
        LabekRule::BoxR => {
            premise_count(p, 1, path)?;
            let Formula::Box(a) = sf else {
                return Err(fail(path, p.rule, "succedent is not a boxed formula"));
            };
            let prem = &p.premises[0].conclusion;
            let Some((x, y)) = new_rel(seq, prem) else {
                return Err(fail(path, p.rule, "premise must add one relational atom"));
            };
            if x != *sl {
                return Err(fail(path, p.rule, "relational atom must start at the succedent label"));
            }
            if seq.labels().contains(&y) {
                return Err(fail(
                    path,
                    p.rule,
                    format!("eigenlabel `{y}` occurs in the conclusion"),
                ));
            }
            let expected = seq
                .with_rel(x, y.clone())
                .with_succedent((y, (**a).clone()));
            expect_premise(p, 0, &expected, path, "body at the fresh label")
        }
        LabekRule::DiaIL | LabekRule::DiaCL => {
            premise_count(p, 1, path)?;
            let classical = p.rule == LabekRule::DiaCL;
            if classical && *sf != Formula::Bottom {
                return Err(fail(path, p.rule, "conclusion succedent must be a labeled bottom"));
            }
            let prem = &p.premises[0].conclusion;
            let Some((x, y)) = new_rel(seq, prem) else {
                return Err(fail(path, p.rule, "premise must add one relational atom"));
            };
            if seq.labels().contains(&y) {
                return Err(fail(
                    path,
                    p.rule,
                    format!("eigenlabel `{y}` occurs in the conclusion"),
                ));
            }
            let shape: fn(&Formula) -> bool = if classical {
                |f| matches!(f, Formula::DiaC(..))
            } else {
                |f| matches!(f, Formula::DiaI(..))
            };
            try_principals(
                p,
                path,
                principals(seq, shape)
                    .into_iter()
                    .filter(|(l, _)| *l == x && (!classical || l == sl))
                    .collect(),
                |x, f| {
                    let a = match f {
                        Formula::DiaI(a) | Formula::DiaC(a) => (**a).clone(),
                        _ => return None,
                    };
                    let rest = seq.remove_one(&(x.clone(), f.clone()))?;
                    Some(vec![rest
                        .with_rel(x.clone(), y.clone())
                        .with_formulas([(y.clone(), a)])])
                },
                "of diamond shape at the relational atom's source",
            )
        }
        LabekRule::DiaIR => {
            premise_count(p, 1, path)?;
            let Formula::DiaI(a) = sf else {
                return Err(fail(path, p.rule, "succedent is not an intuitionistic diamond"));
            };
            let prem = &p.premises[0].conclusion;
            let y = prem.succedent.0.clone();
            if !seq.has_rel(sl, &y) {
                return Err(fail(
                    path,
                    p.rule,
                    format!("no relational atom `{sl} R {y}` in the conclusion"),
                ));
            }
            let expected = seq.with_succedent((y, (**a).clone()));
            expect_premise(p, 0, &expected, path, "body at the accessible label")
        }
        LabekRule::DiaCR => {
            premise_count(p, 1, path)?;
            let Formula::DiaC(a) = sf else {
                return Err(fail(path, p.rule, "succedent is not a classical diamond"));
            };
            let expected = seq
                .with_succedent((sl.clone(), Formula::Bottom))
                .with_formulas([(
                    sl.clone(),
                    Formula::boxed(Formula::neg((**a).clone())),
                )]);
            expect_premise(p, 0, &expected, path, "boxed negation at the same label")
        }
        LabekRule::Refl | LabekRule::Trans | LabekRule::Eucl | LabekRule::Symm => {
            let ext = match p.rule {
                LabekRule::Refl => Extension::T,
                LabekRule::Trans => Extension::Four,
                LabekRule::Eucl => Extension::Five,
                LabekRule::Symm => Extension::B,
                _ => unreachable!(),
            };
            if !th.allows(ext) {
                return Err(fail(
                    path,
                    p.rule,
                    format!("frame rule `{}` is not in the enabled theory", ext.as_str()),
                ));
            }
            premise_count(p, 1, path)?;
            let prem = &p.premises[0].conclusion;
            let Some((x, y)) = new_rel(seq, prem) else {
                return Err(fail(path, p.rule, "premise must add one relational atom"));
            };
            let justified = match ext {
                Extension::T => x == y,
                Extension::Four => seq
                    .rel_atoms
                    .iter()
                    .any(|(a, b)| *a == x && seq.has_rel(b, &y)),
                Extension::Five => seq
                    .rel_atoms
                    .iter()
                    .any(|(a, b)| *b == x && seq.has_rel(a, &y)),
                Extension::B => seq.has_rel(&y, &x),
            };
            if !justified {
                return Err(fail(
                    path,
                    p.rule,
                    format!("added atom `{x} R {y}` is not licensed by `{}`", ext.as_str()),
                ));
            }
            let expected = seq.with_rel(x, y);
            expect_premise(p, 0, &expected, path, "context must be otherwise unchanged")
        }
        LabekRule::Cut => {
            premise_count(p, 2, path)?;
            let cut_formula = p.premises[0].conclusion.succedent.clone();
            if !allow_cut && p.premises[0].rule != LabekRule::Axiom {
                return Err(fail(
                    path,
                    p.rule,
                    "cut is not admitted (allow_cut = false) and the left premise is not an axiom leaf",
                ));
            }
            expect_premise(
                p,
                0,
                &seq.with_succedent(cut_formula.clone()),
                path,
                "cut left premise",
            )?;
            let expected = seq.with_formulas([cut_formula]);
            expect_premise(p, 1, &expected, path, "cut right premise")
        }
    }
}

/// The single relational atom a premise adds over the conclusion, if any.
fn new_rel(conc: &LabeledSequent, prem: &LabeledSequent) -> Option<(Label, Label)> {
    let mut rest = prem.rel_atoms.clone();
    for r in &conc.rel_atoms {
        let idx = rest.iter().position(|s| s == r)?;
        rest.remove(idx);
    }
    if rest.len() == 1 {
        rest.pop()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_labeled_sequent;
    use crate::proof::ProofNode;

    fn ls(s: &str) -> LabeledSequent {
        parse_labeled_sequent(s).unwrap()
    }

    #[test]
    fn reflexivity_pair_from_hypothesis() {
        // xRx |- x:(box a ->i a) /\ (a ->i dia_i a) — no frame rule needed.
        let p = ProofNode::new(
            LabekRule::AndR,
            ls("x R x |- x: (box a_i ->i a_i) /\\ (a_i ->i dia_i a_i)"),
            vec![
                ProofNode::new(
                    LabekRule::ImpIR,
                    ls("x R x |- x: box a_i ->i a_i"),
                    vec![ProofNode::new(
                        LabekRule::BoxL,
                        ls("x R x, x: box a_i |- x: a_i"),
                        vec![ProofNode::new(
                            LabekRule::Init,
                            ls("x R x, x: a_i, x: box a_i |- x: a_i"),
                            vec![],
                        )],
                    )],
                ),
                ProofNode::new(
                    LabekRule::ImpIR,
                    ls("x R x |- x: a_i ->i dia_i a_i"),
                    vec![ProofNode::new(
                        LabekRule::DiaIR,
                        ls("x R x, x: a_i |- x: dia_i a_i"),
                        vec![ProofNode::new(
                            LabekRule::Init,
                            ls("x R x, x: a_i |- x: a_i"),
                            vec![],
                        )],
                    )],
                ),
            ],
        );
        assert!(check_labek_proof(&p, &Theory::plain(), false).is_ok());
    }

    #[test]
    fn t_rule_gated_by_theory() {
        let p = ProofNode::new(
            LabekRule::Refl,
            ls("|- x: box a_i ->i a_i"),
            vec![ProofNode::new(
                LabekRule::ImpIR,
                ls("x R x |- x: box a_i ->i a_i"),
                vec![ProofNode::new(
                    LabekRule::BoxL,
                    ls("x R x, x: box a_i |- x: a_i"),
                    vec![ProofNode::new(
                        LabekRule::Init,
                        ls("x R x, x: a_i, x: box a_i |- x: a_i"),
                        vec![],
                    )],
                )],
            )],
        );
        assert!(check_labek_proof(&p, &Theory::with_extensions([Extension::T]), false).is_ok());
        let err = check_labek_proof(&p, &Theory::plain(), false).unwrap_err();
        assert_eq!(err.rule, "t");
    }

    #[test]
    fn eigenlabel_freshness_enforced() {
        let p = ProofNode::new(
            LabekRule::BoxR,
            ls("y: b_i |- x: box a_i"),
            vec![ProofNode::new(
                LabekRule::Init,
                ls("x R y, y: b_i |- y: a_i"),
                vec![],
            )],
        );
        let err = check_labek_proof(&p, &Theory::plain(), false).unwrap_err();
        assert!(err.message.contains("eigenlabel"), "{err}");
    }

    #[test]
    fn imp_c_l_right_premise_bottom_label_is_free() {
        let p = ProofNode::new(
            LabekRule::ImpCL,
            ls("x: a_i ->c bot, x: a_i, y: c_i |- x: bot"),
            vec![
                ProofNode::new(
                    LabekRule::Init,
                    ls("x: a_i ->c bot, x: a_i, y: c_i |- x: a_i"),
                    vec![],
                ),
                ProofNode::new(
                    LabekRule::Bot,
                    ls("x: bot, x: a_i, y: c_i |- y: bot"),
                    vec![],
                ),
            ],
        );
        assert!(check_labek_proof(&p, &Theory::plain(), false).is_ok());
    }

    #[test]
    fn axiom_scheme_matching() {
        let ax = AxiomScheme::interdefinability();
        let f = crate::parser::parse_modal_formula("~dia_i ~(a_i \\/i ~a_i) ->i box (a_i \\/i ~a_i)")
            .unwrap();
        assert!(ax.matches(&f));
        let g = crate::parser::parse_modal_formula("~dia_i ~a_i ->i box b_i").unwrap();
        assert!(!ax.matches(&g));
    }

    #[test]
    fn w_rule_retargets_bottom_label() {
        let p = ProofNode::new(
            LabekRule::W,
            ls("x: bot |- y: a_i"),
            vec![ProofNode::new(LabekRule::Bot, ls("x: bot |- x: bot"), vec![])],
        );
        assert!(check_labek_proof(&p, &Theory::plain(), false).is_ok());
    }
}
