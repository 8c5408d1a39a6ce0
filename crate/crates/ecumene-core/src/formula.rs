//! Formula language shared by every engine: ecumenical propositional,
//! modal, and first-order connectives with split classical/intuitionistic
//! variants, plus the weight measure and substitution utilities.

use std::collections::BTreeSet;
use std::fmt;

/// First-order term variable. Terms are always variables here: the
/// translations only ever produce variables and the relational predicate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub String);

impl Var {
    pub fn new(name: impl Into<String>) -> Self {
        Var(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// World label used by labeled sequents. Labels and term variables live in
/// disjoint namespaces; the sequent translation bridges them by name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub String);

impl Label {
    pub fn new(name: impl Into<String>) -> Self {
        Label(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn to_var(&self) -> Var {
        Var(self.0.clone())
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Atom polarity: intuitionistic or classical predicate symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomKind {
    Int,
    Cl,
}

/// Unified formula AST.
///
/// The neutral connectives (`Bottom`, `Neg`, `And`, `Forall`, `Box`) are
/// shared; disjunction, implication, the existential and the diamond come in
/// intuitionistic (`..I`) and classical (`..C`) flavors with different rules
/// in the calculi and different semantic clauses.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    /// Intuitionistic predicate `p_i(ts)`; zero-arity atoms double as
    /// propositional symbols.
    IntAtom(String, Vec<Var>),
    /// Classical predicate `p_c(ts)`.
    ClAtom(String, Vec<Var>),
    Bottom,
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    OrI(Box<Formula>, Box<Formula>),
    OrC(Box<Formula>, Box<Formula>),
    ImpI(Box<Formula>, Box<Formula>),
    ImpC(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
    DiaI(Box<Formula>),
    DiaC(Box<Formula>),
    Forall(Var, Box<Formula>),
    ExistsI(Var, Box<Formula>),
    ExistsC(Var, Box<Formula>),
    /// Accessibility atom `R(x,y)` of the first-order target language.
    Rel(Var, Var),
}

impl Formula {
    pub fn iatom(name: impl Into<String>, args: Vec<Var>) -> Self {
        Formula::IntAtom(name.into(), args)
    }

    pub fn catom(name: impl Into<String>, args: Vec<Var>) -> Self {
        Formula::ClAtom(name.into(), args)
    }

    /// Zero-arity intuitionistic atom.
    pub fn iprop(name: impl Into<String>) -> Self {
        Formula::IntAtom(name.into(), Vec::new())
    }

    /// Zero-arity classical atom.
    pub fn cprop(name: impl Into<String>) -> Self {
        Formula::ClAtom(name.into(), Vec::new())
    }

    #[allow(clippy::should_implement_trait)] // constructor, not an operator impl
    pub fn neg(f: Formula) -> Self {
        Formula::Neg(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or_i(l: Formula, r: Formula) -> Self {
        Formula::OrI(Box::new(l), Box::new(r))
    }

    pub fn or_c(l: Formula, r: Formula) -> Self {
        Formula::OrC(Box::new(l), Box::new(r))
    }

    pub fn imp_i(l: Formula, r: Formula) -> Self {
        Formula::ImpI(Box::new(l), Box::new(r))
    }

    pub fn imp_c(l: Formula, r: Formula) -> Self {
        Formula::ImpC(Box::new(l), Box::new(r))
    }

    /// `A <->i B`, the intuitionistic biconditional `(A ->i B) /\ (B ->i A)`.
    pub fn iff_i(l: Formula, r: Formula) -> Self {
        Formula::and(
            Formula::imp_i(l.clone(), r.clone()),
            Formula::imp_i(r, l),
        )
    }

    pub fn boxed(f: Formula) -> Self {
        Formula::Box(Box::new(f))
    }

    pub fn dia_i(f: Formula) -> Self {
        Formula::DiaI(Box::new(f))
    }

    pub fn dia_c(f: Formula) -> Self {
        Formula::DiaC(Box::new(f))
    }

    pub fn forall(x: Var, f: Formula) -> Self {
        Formula::Forall(x, Box::new(f))
    }

    pub fn exists_i(x: Var, f: Formula) -> Self {
        Formula::ExistsI(x, Box::new(f))
    }

    pub fn exists_c(x: Var, f: Formula) -> Self {
        Formula::ExistsC(x, Box::new(f))
    }

    pub fn rel(x: Var, y: Var) -> Self {
        Formula::Rel(x, y)
    }

    /// Ecumenical weight: the double-negation overhead of the classical
    /// connectives. Neutral and intuitionistic connectives cost 1, classical
    /// ones 4, atoms and bottom 0. Quantifiers follow the same split
    /// (`forall`/`exists_i` cost 1, `exists_c` costs 4).
    pub fn ew(&self) -> u64 {
        match self {
            Formula::IntAtom(..) | Formula::Bottom | Formula::Rel(..) => 0,
            Formula::ClAtom(..) => 4,
            Formula::Neg(a) | Formula::Box(a) | Formula::DiaI(a) => a.ew() + 1,
            Formula::DiaC(a) => a.ew() + 4,
            Formula::And(l, r) | Formula::OrI(l, r) | Formula::ImpI(l, r) => {
                l.ew() + r.ew() + 1
            }
            Formula::OrC(l, r) | Formula::ImpC(l, r) => l.ew() + r.ew() + 4,
            Formula::Forall(_, a) | Formula::ExistsI(_, a) => a.ew() + 1,
            Formula::ExistsC(_, a) => a.ew() + 4,
        }
    }

    /// True iff the formula avoids quantifiers and relational atoms and all
    /// its atoms are propositional (zero arity). This is the language the
    /// labeled calculus and the Kripke semantics operate on.
    pub fn is_modal_fragment(&self) -> bool {
        match self {
            Formula::IntAtom(_, args) | Formula::ClAtom(_, args) => args.is_empty(),
            Formula::Bottom => true,
            Formula::Rel(..)
            | Formula::Forall(..)
            | Formula::ExistsI(..)
            | Formula::ExistsC(..) => false,
            Formula::Neg(a) | Formula::Box(a) | Formula::DiaI(a) | Formula::DiaC(a) => {
                a.is_modal_fragment()
            }
            Formula::And(l, r)
            | Formula::OrI(l, r)
            | Formula::OrC(l, r)
            | Formula::ImpI(l, r)
            | Formula::ImpC(l, r) => l.is_modal_fragment() && r.is_modal_fragment(),
        }
    }

    /// True iff no modal operator occurs.
    pub fn is_fo_fragment(&self) -> bool {
        match self {
            Formula::IntAtom(..) | Formula::ClAtom(..) | Formula::Bottom | Formula::Rel(..) => {
                true
            }
            Formula::Box(_) | Formula::DiaI(_) | Formula::DiaC(_) => false,
            Formula::Neg(a) => a.is_fo_fragment(),
            Formula::And(l, r)
            | Formula::OrI(l, r)
            | Formula::OrC(l, r)
            | Formula::ImpI(l, r)
            | Formula::ImpC(l, r) => l.is_fo_fragment() && r.is_fo_fragment(),
            Formula::Forall(_, a) | Formula::ExistsI(_, a) | Formula::ExistsC(_, a) => {
                a.is_fo_fragment()
            }
        }
    }

    /// Propositional: modal fragment without the modalities.
    pub fn is_propositional(&self) -> bool {
        self.is_modal_fragment() && !self.has_modality()
    }

    fn has_modality(&self) -> bool {
        match self {
            Formula::Box(_) | Formula::DiaI(_) | Formula::DiaC(_) => true,
            Formula::IntAtom(..) | Formula::ClAtom(..) | Formula::Bottom | Formula::Rel(..) => {
                false
            }
            Formula::Neg(a) => a.has_modality(),
            Formula::And(l, r)
            | Formula::OrI(l, r)
            | Formula::OrC(l, r)
            | Formula::ImpI(l, r)
            | Formula::ImpC(l, r) => l.has_modality() || r.has_modality(),
            Formula::Forall(_, a) | Formula::ExistsI(_, a) | Formula::ExistsC(_, a) => {
                a.has_modality()
            }
        }
    }

    /// Externally classical: bottom, a classical atom, or a classical root
    /// connective. Such formulas behave classically in any context. The box
    /// is neutral, so `box A` is not externally classical.
    pub fn is_externally_classical(&self) -> bool {
        matches!(
            self,
            Formula::Bottom
                | Formula::ClAtom(..)
                | Formula::ImpC(..)
                | Formula::OrC(..)
                | Formula::ExistsC(..)
                | Formula::DiaC(..)
        )
    }

    /// Classical: built from classical atoms using only classical and
    /// neutral connectives (including the neutral box in the modal fragment).
    pub fn is_classical(&self) -> bool {
        match self {
            Formula::ClAtom(..) | Formula::Bottom => true,
            Formula::IntAtom(..) | Formula::Rel(..) => false,
            Formula::Neg(a) | Formula::Box(a) | Formula::DiaC(a) => a.is_classical(),
            Formula::DiaI(_) => false,
            Formula::And(l, r) | Formula::OrC(l, r) | Formula::ImpC(l, r) => {
                l.is_classical() && r.is_classical()
            }
            Formula::OrI(..) | Formula::ImpI(..) => false,
            Formula::Forall(_, a) | Formula::ExistsC(_, a) => a.is_classical(),
            Formula::ExistsI(..) => false,
        }
    }

    /// Replace every classical connective and atom by its intuitionistic
    /// counterpart (drop the `c` subscripts).
    pub fn to_intuitionistic(&self) -> Formula {
        match self {
            Formula::ClAtom(n, args) => Formula::IntAtom(n.clone(), args.clone()),
            Formula::IntAtom(..) | Formula::Bottom | Formula::Rel(..) => self.clone(),
            Formula::Neg(a) => Formula::neg(a.to_intuitionistic()),
            Formula::And(l, r) => Formula::and(l.to_intuitionistic(), r.to_intuitionistic()),
            Formula::OrI(l, r) | Formula::OrC(l, r) => {
                Formula::or_i(l.to_intuitionistic(), r.to_intuitionistic())
            }
            Formula::ImpI(l, r) | Formula::ImpC(l, r) => {
                Formula::imp_i(l.to_intuitionistic(), r.to_intuitionistic())
            }
            Formula::Box(a) => Formula::boxed(a.to_intuitionistic()),
            Formula::DiaI(a) | Formula::DiaC(a) => Formula::dia_i(a.to_intuitionistic()),
            Formula::Forall(x, a) => Formula::forall(x.clone(), a.to_intuitionistic()),
            Formula::ExistsI(x, a) | Formula::ExistsC(x, a) => {
                Formula::exists_i(x.clone(), a.to_intuitionistic())
            }
        }
    }

    /// Free term variables.
    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        match self {
            Formula::IntAtom(_, args) | Formula::ClAtom(_, args) => {
                for v in args {
                    if !bound.contains(v) {
                        out.insert(v.clone());
                    }
                }
            }
            Formula::Rel(x, y) => {
                for v in [x, y] {
                    if !bound.contains(v) {
                        out.insert(v.clone());
                    }
                }
            }
            Formula::Bottom => {}
            Formula::Neg(a) | Formula::Box(a) | Formula::DiaI(a) | Formula::DiaC(a) => {
                a.collect_free(bound, out)
            }
            Formula::And(l, r)
            | Formula::OrI(l, r)
            | Formula::OrC(l, r)
            | Formula::ImpI(l, r)
            | Formula::ImpC(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            Formula::Forall(x, a) | Formula::ExistsI(x, a) | Formula::ExistsC(x, a) => {
                bound.push(x.clone());
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Capture-avoiding substitution of variable `t` for every free
    /// occurrence of `x`. Bound variables are renamed when they would
    /// capture `t`.
    pub fn subst(&self, x: &Var, t: &Var) -> Formula {
        if x == t {
            return self.clone();
        }
        match self {
            Formula::IntAtom(n, args) => Formula::IntAtom(
                n.clone(),
                args.iter()
                    .map(|v| if v == x { t.clone() } else { v.clone() })
                    .collect(),
            ),
            Formula::ClAtom(n, args) => Formula::ClAtom(
                n.clone(),
                args.iter()
                    .map(|v| if v == x { t.clone() } else { v.clone() })
                    .collect(),
            ),
            Formula::Rel(a, b) => Formula::Rel(
                if a == x { t.clone() } else { a.clone() },
                if b == x { t.clone() } else { b.clone() },
            ),
            Formula::Bottom => Formula::Bottom,
            Formula::Neg(a) => Formula::neg(a.subst(x, t)),
            Formula::Box(a) => Formula::boxed(a.subst(x, t)),
            Formula::DiaI(a) => Formula::dia_i(a.subst(x, t)),
            Formula::DiaC(a) => Formula::dia_c(a.subst(x, t)),
            Formula::And(l, r) => Formula::and(l.subst(x, t), r.subst(x, t)),
            Formula::OrI(l, r) => Formula::or_i(l.subst(x, t), r.subst(x, t)),
            Formula::OrC(l, r) => Formula::or_c(l.subst(x, t), r.subst(x, t)),
            Formula::ImpI(l, r) => Formula::imp_i(l.subst(x, t), r.subst(x, t)),
            Formula::ImpC(l, r) => Formula::imp_c(l.subst(x, t), r.subst(x, t)),
            Formula::Forall(y, a) => {
                let (y, a) = Self::subst_under_binder(y, a, x, t);
                Formula::forall(y, a)
            }
            Formula::ExistsI(y, a) => {
                let (y, a) = Self::subst_under_binder(y, a, x, t);
                Formula::exists_i(y, a)
            }
            Formula::ExistsC(y, a) => {
                let (y, a) = Self::subst_under_binder(y, a, x, t);
                Formula::exists_c(y, a)
            }
        }
    }

    fn subst_under_binder(y: &Var, body: &Formula, x: &Var, t: &Var) -> (Var, Formula) {
        if y == x {
            // x is shadowed; nothing to do below.
            return (y.clone(), body.clone());
        }
        if y == t && body.free_vars().contains(x) {
            // Renaming required: t would be captured.
            let mut avoid = body.free_vars();
            avoid.insert(t.clone());
            avoid.insert(x.clone());
            let fresh = fresh_var(y.as_str(), &avoid);
            let renamed = body.subst(y, &fresh);
            (fresh, renamed.subst(x, t))
        } else {
            (y.clone(), body.subst(x, t))
        }
    }

    /// Canonical renaming of bound variables to positional names, so that
    /// alpha-equivalent formulas become syntactically equal. The `#n` names
    /// are rejected by the parser and never rendered.
    pub fn alpha_canon(&self) -> Formula {
        self.canon_rec(&mut Vec::new(), &mut 0)
    }

    fn canon_rec(&self, env: &mut Vec<(Var, Var)>, counter: &mut usize) -> Formula {
        let lookup = |v: &Var, env: &[(Var, Var)]| {
            env.iter()
                .rev()
                .find(|(orig, _)| orig == v)
                .map(|(_, canon)| canon.clone())
                .unwrap_or_else(|| v.clone())
        };
        match self {
            Formula::IntAtom(n, args) => Formula::IntAtom(
                n.clone(),
                args.iter().map(|v| lookup(v, env)).collect(),
            ),
            Formula::ClAtom(n, args) => Formula::ClAtom(
                n.clone(),
                args.iter().map(|v| lookup(v, env)).collect(),
            ),
            Formula::Rel(a, b) => Formula::Rel(lookup(a, env), lookup(b, env)),
            Formula::Bottom => Formula::Bottom,
            Formula::Neg(a) => Formula::neg(a.canon_rec(env, counter)),
            Formula::Box(a) => Formula::boxed(a.canon_rec(env, counter)),
            Formula::DiaI(a) => Formula::dia_i(a.canon_rec(env, counter)),
            Formula::DiaC(a) => Formula::dia_c(a.canon_rec(env, counter)),
            Formula::And(l, r) => {
                Formula::and(l.canon_rec(env, counter), r.canon_rec(env, counter))
            }
            Formula::OrI(l, r) => {
                Formula::or_i(l.canon_rec(env, counter), r.canon_rec(env, counter))
            }
            Formula::OrC(l, r) => {
                Formula::or_c(l.canon_rec(env, counter), r.canon_rec(env, counter))
            }
            Formula::ImpI(l, r) => {
                Formula::imp_i(l.canon_rec(env, counter), r.canon_rec(env, counter))
            }
            Formula::ImpC(l, r) => {
                Formula::imp_c(l.canon_rec(env, counter), r.canon_rec(env, counter))
            }
            Formula::Forall(x, a) => {
                let (x, a) = Self::canon_binder(x, a, env, counter);
                Formula::forall(x, a)
            }
            Formula::ExistsI(x, a) => {
                let (x, a) = Self::canon_binder(x, a, env, counter);
                Formula::exists_i(x, a)
            }
            Formula::ExistsC(x, a) => {
                let (x, a) = Self::canon_binder(x, a, env, counter);
                Formula::exists_c(x, a)
            }
        }
    }

    fn canon_binder(
        x: &Var,
        body: &Formula,
        env: &mut Vec<(Var, Var)>,
        counter: &mut usize,
    ) -> (Var, Formula) {
        let canon = Var::new(format!("#{}", *counter));
        *counter += 1;
        env.push((x.clone(), canon.clone()));
        let body = body.canon_rec(env, counter);
        env.pop();
        (canon, body)
    }

    /// Alpha-equivalence: equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        self == other || self.alpha_canon() == other.alpha_canon()
    }

    /// Names of the propositional atoms occurring in the formula, ignoring
    /// polarity (the semantics valuates intuitionistic atoms; classical
    /// atoms with the same name read the same valuation).
    pub fn atom_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atom_names(&mut out);
        out
    }

    fn collect_atom_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::IntAtom(n, _) | Formula::ClAtom(n, _) => {
                out.insert(n.clone());
            }
            Formula::Bottom | Formula::Rel(..) => {}
            Formula::Neg(a) | Formula::Box(a) | Formula::DiaI(a) | Formula::DiaC(a) => {
                a.collect_atom_names(out)
            }
            Formula::And(l, r)
            | Formula::OrI(l, r)
            | Formula::OrC(l, r)
            | Formula::ImpI(l, r)
            | Formula::ImpC(l, r) => {
                l.collect_atom_names(out);
                r.collect_atom_names(out);
            }
            Formula::Forall(_, a) | Formula::ExistsI(_, a) | Formula::ExistsC(_, a) => {
                a.collect_atom_names(out)
            }
        }
    }

    /// All subformulas including `self`, in preorder.
    pub fn subformulas(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            out.push(f);
            match f {
                Formula::IntAtom(..)
                | Formula::ClAtom(..)
                | Formula::Bottom
                | Formula::Rel(..) => {}
                Formula::Neg(a) | Formula::Box(a) | Formula::DiaI(a) | Formula::DiaC(a) => {
                    stack.push(a)
                }
                Formula::And(l, r)
                | Formula::OrI(l, r)
                | Formula::OrC(l, r)
                | Formula::ImpI(l, r)
                | Formula::ImpC(l, r) => {
                    stack.push(r);
                    stack.push(l);
                }
                Formula::Forall(_, a) | Formula::ExistsI(_, a) | Formula::ExistsC(_, a) => {
                    stack.push(a)
                }
            }
        }
        out
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::IntAtom(..) | Formula::ClAtom(..) | Formula::Bottom | Formula::Rel(..) => 0,
            Formula::Neg(a)
            | Formula::Box(a)
            | Formula::DiaI(a)
            | Formula::DiaC(a)
            | Formula::Forall(_, a)
            | Formula::ExistsI(_, a)
            | Formula::ExistsC(_, a) => 1 + a.depth(),
            Formula::And(l, r)
            | Formula::OrI(l, r)
            | Formula::OrC(l, r)
            | Formula::ImpI(l, r)
            | Formula::ImpC(l, r) => 1 + l.depth().max(r.depth()),
        }
    }
}

/// First variable named `base`, `base0`, `base1`, ... not in `avoid`.
pub fn fresh_var(base: &str, avoid: &BTreeSet<Var>) -> Var {
    let bare = Var::new(base);
    if !avoid.contains(&bare) {
        return bare;
    }
    // Strip a numeric suffix so y3 freshens to y4, y5, ...
    let stem: String = {
        let trimmed = base.trim_end_matches(|c: char| c.is_ascii_digit());
        if trimmed.is_empty() {
            base.to_string()
        } else {
            trimmed.to_string()
        }
    };
    (0..)
        .map(|i| Var::new(format!("{stem}{i}")))
        .find(|v| !avoid.contains(v))
        .expect("unbounded name supply")
}

/// First label named `base0`, `base1`, ... not in `avoid`.
pub fn fresh_label(base: &str, avoid: &BTreeSet<Label>) -> Label {
    let bare = Label::new(base);
    if !avoid.contains(&bare) {
        return bare;
    }
    (0..)
        .map(|i| Label::new(format!("{base}{i}")))
        .find(|l| !avoid.contains(l))
        .expect("unbounded name supply")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Formula {
        Formula::iprop("a")
    }

    fn ac() -> Formula {
        Formula::cprop("a")
    }

    #[test]
    fn ew_base_clauses() {
        assert_eq!(Formula::Bottom.ew(), 0);
        assert_eq!(a().ew(), 0);
        assert_eq!(ac().ew(), 4);
        assert_eq!(Formula::dia_c(a()).ew(), 4);
        assert_eq!(Formula::imp_c(a(), ac()).ew(), 8);
        assert_eq!(Formula::imp_i(a(), a()).ew(), 1);
        assert_eq!(Formula::boxed(Formula::neg(a())).ew(), 2);
    }

    #[test]
    fn externally_classical_examples() {
        assert!(Formula::Bottom.is_externally_classical());
        assert!(Formula::or_c(a(), a()).is_externally_classical());
        assert!(!Formula::neg(ac()).is_externally_classical());
        assert!(!Formula::boxed(ac()).is_externally_classical());
    }

    #[test]
    fn classical_examples() {
        assert!(Formula::neg(Formula::and(ac(), Formula::neg(ac()))).is_classical());
        assert!(!a().is_classical());
        assert!(!Formula::imp_i(ac(), ac()).is_classical());
        assert!(Formula::boxed(ac()).is_classical());
        assert!(Formula::dia_c(ac()).is_classical());
        assert!(!Formula::dia_i(ac()).is_classical());
    }

    #[test]
    fn subst_examples() {
        let x = Var::new("x");
        let y = Var::new("y");
        let p = |v: &Var| Formula::iatom("p", vec![v.clone()]);
        assert_eq!(p(&x).subst(&x, &y), p(&y));

        let closed = Formula::forall(x.clone(), p(&x));
        assert_eq!(closed.subst(&x, &y), closed);

        // subst(forall y. R(x,y), x, y) must rename the binder.
        let f = Formula::forall(y.clone(), Formula::rel(x.clone(), y.clone()));
        let g = f.subst(&x, &y);
        if let Formula::Forall(b, body) = &g {
            assert_ne!(*b, y);
            assert_eq!(**body, Formula::rel(y.clone(), b.clone()));
        } else {
            panic!("expected forall, got {g:?}");
        }
        // No free-variable check regression: y is now free, x is gone.
        assert_eq!(g.free_vars(), [y.clone()].into_iter().collect());
    }

    #[test]
    fn alpha_eq_binders() {
        let x = Var::new("x");
        let y = Var::new("y");
        let f = Formula::forall(x.clone(), Formula::iatom("p", vec![x.clone()]));
        let g = Formula::forall(y.clone(), Formula::iatom("p", vec![y.clone()]));
        assert!(f.alpha_eq(&g));
        let h = Formula::forall(y.clone(), Formula::iatom("p", vec![x.clone()]));
        assert!(!f.alpha_eq(&h));
    }

    #[test]
    fn fragment_classifiers() {
        let modal = Formula::boxed(Formula::imp_i(a(), ac()));
        assert!(modal.is_modal_fragment());
        assert!(!modal.is_fo_fragment());
        let x = Var::new("x");
        let fo = Formula::forall(x.clone(), Formula::iatom("p", vec![x.clone()]));
        assert!(fo.is_fo_fragment());
        assert!(!fo.is_modal_fragment());
        let applied = Formula::iatom("p", vec![x]);
        assert!(!applied.is_modal_fragment());
    }
}
