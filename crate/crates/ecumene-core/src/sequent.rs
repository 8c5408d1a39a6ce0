//! Sequent data types for both calculi, with the canonical forms used by
//! the loop checks.

use std::collections::{BTreeMap, BTreeSet};

use crate::formula::{Formula, Label, Var};

/// Single-succedent sequent `Γ |- A`. The antecedent is a multiset.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub antecedent: Vec<Formula>,
    pub succedent: Formula,
}

impl Sequent {
    pub fn new(antecedent: Vec<Formula>, succedent: Formula) -> Self {
        Sequent {
            antecedent,
            succedent,
        }
    }

    pub fn goal(succedent: Formula) -> Self {
        Sequent::new(Vec::new(), succedent)
    }

    /// Remove one antecedent occurrence alpha-equal to `f`.
    pub fn remove_one(&self, f: &Formula) -> Option<Sequent> {
        let idx = self.antecedent.iter().position(|g| g.alpha_eq(f))?;
        let mut ante = self.antecedent.clone();
        ante.remove(idx);
        Some(Sequent::new(ante, self.succedent.clone()))
    }

    pub fn with_extra(&self, extra: impl IntoIterator<Item = Formula>) -> Sequent {
        let mut ante = self.antecedent.clone();
        ante.extend(extra);
        Sequent::new(ante, self.succedent.clone())
    }

    pub fn with_succedent(&self, succedent: Formula) -> Sequent {
        Sequent::new(self.antecedent.clone(), succedent)
    }

    /// Multiset equality up to alpha on both sides.
    pub fn multiset_eq(&self, other: &Sequent) -> bool {
        if !self.succedent.alpha_eq(&other.succedent) {
            return false;
        }
        let mut left: Vec<Formula> = self.antecedent.iter().map(|f| f.alpha_canon()).collect();
        let mut right: Vec<Formula> = other.antecedent.iter().map(|f| f.alpha_canon()).collect();
        left.sort();
        right.sort();
        left == right
    }

    /// Canonical key for the history check: the antecedent as a set (the
    /// contraction-absorbing comparison), formulas alpha-normalized.
    pub fn canonical_key(&self) -> (BTreeSet<Formula>, Formula) {
        (
            self.antecedent.iter().map(|f| f.alpha_canon()).collect(),
            self.succedent.alpha_canon(),
        )
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = self.succedent.free_vars();
        for f in &self.antecedent {
            out.extend(f.free_vars());
        }
        out
    }

    pub fn is_propositional(&self) -> bool {
        self.antecedent.iter().all(|f| f.is_propositional()) && self.succedent.is_propositional()
    }

    pub fn is_fo_fragment(&self) -> bool {
        self.antecedent.iter().all(|f| f.is_fo_fragment()) && self.succedent.is_fo_fragment()
    }
}

/// Labeled sequent `Γ |- x:A` where `Γ` mixes relational atoms `x R y` and
/// labeled formulas `x:B`. Formulas are restricted to the modal fragment.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledSequent {
    pub rel_atoms: Vec<(Label, Label)>,
    pub antecedent: Vec<(Label, Formula)>,
    pub succedent: (Label, Formula),
}

impl LabeledSequent {
    pub fn new(
        rel_atoms: Vec<(Label, Label)>,
        antecedent: Vec<(Label, Formula)>,
        succedent: (Label, Formula),
    ) -> Self {
        LabeledSequent {
            rel_atoms,
            antecedent,
            succedent,
        }
    }

    pub fn goal(label: Label, f: Formula) -> Self {
        LabeledSequent::new(Vec::new(), Vec::new(), (label, f))
    }

    pub fn labels(&self) -> BTreeSet<Label> {
        let mut out = BTreeSet::new();
        for (x, y) in &self.rel_atoms {
            out.insert(x.clone());
            out.insert(y.clone());
        }
        for (x, _) in &self.antecedent {
            out.insert(x.clone());
        }
        out.insert(self.succedent.0.clone());
        out
    }

    pub fn has_rel(&self, x: &Label, y: &Label) -> bool {
        self.rel_atoms.iter().any(|(a, b)| a == x && b == y)
    }

    pub fn remove_one(&self, item: &(Label, Formula)) -> Option<LabeledSequent> {
        let idx = self.antecedent.iter().position(|g| g == item)?;
        let mut ante = self.antecedent.clone();
        ante.remove(idx);
        Some(LabeledSequent::new(
            self.rel_atoms.clone(),
            ante,
            self.succedent.clone(),
        ))
    }

    pub fn with_formulas(&self, extra: impl IntoIterator<Item = (Label, Formula)>) -> Self {
        let mut ante = self.antecedent.clone();
        ante.extend(extra);
        LabeledSequent::new(self.rel_atoms.clone(), ante, self.succedent.clone())
    }

    pub fn with_rel(&self, x: Label, y: Label) -> Self {
        let mut rel = self.rel_atoms.clone();
        rel.push((x, y));
        LabeledSequent::new(rel, self.antecedent.clone(), self.succedent.clone())
    }

    pub fn with_succedent(&self, succedent: (Label, Formula)) -> Self {
        LabeledSequent::new(self.rel_atoms.clone(), self.antecedent.clone(), succedent)
    }

    /// Multiset equality on relational atoms and labeled formulas.
    pub fn multiset_eq(&self, other: &LabeledSequent) -> bool {
        if self.succedent != other.succedent {
            return false;
        }
        let mut r1 = self.rel_atoms.clone();
        let mut r2 = other.rel_atoms.clone();
        r1.sort();
        r2.sort();
        if r1 != r2 {
            return false;
        }
        let mut a1 = self.antecedent.clone();
        let mut a2 = other.antecedent.clone();
        a1.sort();
        a2.sort();
        a1 == a2
    }

    /// Canonical key modulo label renaming: labels are grouped by a local
    /// signature and only permutations within groups are explored, capped so
    /// the loop check stays cheap. Beyond the cap the signature ordering
    /// alone is used, which is still sound (merely a weaker loop check).
    pub fn canonical_key(&self) -> CanonicalLabeled {
        let labels: Vec<Label> = self.labels().into_iter().collect();
        if labels.len() > 1 {
            let groups = self.signature_groups(&labels);
            let mut assignments = Vec::new();
            permute_groups(&groups, &mut Vec::new(), &mut assignments, 24);
            let mut best: Option<CanonicalLabeled> = None;
            for perm in &assignments {
                let map: BTreeMap<&Label, usize> =
                    perm.iter().enumerate().map(|(i, l)| (l, i)).collect();
                let key = self.rename_key(&map);
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
            if let Some(best) = best {
                return best;
            }
            // Over the cap: deterministic signature order.
            let flat: Vec<&Label> = groups.iter().flatten().collect();
            let map: BTreeMap<&Label, usize> =
                flat.into_iter().enumerate().map(|(i, l)| (l, i)).collect();
            return self.rename_key(&map);
        }
        let map: BTreeMap<&Label, usize> =
            labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
        self.rename_key(&map)
    }

    fn rename_key(&self, map: &BTreeMap<&Label, usize>) -> CanonicalLabeled {
        CanonicalLabeled {
            rel: self
                .rel_atoms
                .iter()
                .map(|(x, y)| (map[x], map[y]))
                .collect(),
            formulas: self
                .antecedent
                .iter()
                .map(|(x, f)| (map[x], f.clone()))
                .collect(),
            succedent: (map[&self.succedent.0], self.succedent.1.clone()),
        }
    }

    fn signature_groups(&self, labels: &[Label]) -> Vec<Vec<Label>> {
        let mut sig_map: BTreeMap<Vec<u8>, Vec<Label>> = BTreeMap::new();
        for l in labels {
            let mut formulas: Vec<&Formula> = self
                .antecedent
                .iter()
                .filter(|(x, _)| x == l)
                .map(|(_, f)| f)
                .collect();
            formulas.sort();
            let out_deg = self.rel_atoms.iter().filter(|(x, _)| x == l).count();
            let in_deg = self.rel_atoms.iter().filter(|(_, y)| y == l).count();
            let is_succ = self.succedent.0 == *l;
            let sig = format!("{formulas:?}|{out_deg}|{in_deg}|{is_succ}").into_bytes();
            sig_map.entry(sig).or_default().push(l.clone());
        }
        sig_map.into_values().collect()
    }

    pub fn is_modal_fragment(&self) -> bool {
        self.antecedent.iter().all(|(_, f)| f.is_modal_fragment())
            && self.succedent.1.is_modal_fragment()
    }
}

/// Loop-check key for labeled sequents: label names replaced by indices,
/// multisets flattened to sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalLabeled {
    rel: BTreeSet<(usize, usize)>,
    formulas: BTreeSet<(usize, Formula)>,
    succedent: (usize, Formula),
}

/// Cartesian product of within-group permutations, capped at `limit` total
/// assignments. Exceeding the cap returns nothing and callers fall back to
/// the identity renaming.
fn permute_groups(
    groups: &[Vec<Label>],
    prefix: &mut Vec<Label>,
    out: &mut Vec<Vec<Label>>,
    limit: usize,
) {
    if out.len() >= limit {
        out.clear();
        return;
    }
    match groups.split_first() {
        None => out.push(prefix.clone()),
        Some((first, rest)) => {
            let mut perm = first.clone();
            permutations(&mut perm, 0, &mut |p| {
                if out.len() < limit {
                    let mut next = prefix.clone();
                    next.extend_from_slice(p);
                    let mut saved = std::mem::take(prefix);
                    *prefix = next;
                    permute_groups(rest, prefix, out, limit);
                    std::mem::swap(prefix, &mut saved);
                }
            });
        }
    }
}

fn permutations(items: &mut Vec<Label>, k: usize, visit: &mut impl FnMut(&[Label])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Formula;

    #[test]
    fn canonical_key_quotients_label_names() {
        let x = Label::new("x");
        let y = Label::new("y");
        let u = Label::new("u");
        let v = Label::new("v");
        let a = Formula::iprop("a");
        let s1 = LabeledSequent::new(
            vec![(x.clone(), y.clone())],
            vec![(y.clone(), a.clone())],
            (x.clone(), Formula::boxed(a.clone())),
        );
        let s2 = LabeledSequent::new(
            vec![(u.clone(), v.clone())],
            vec![(v.clone(), a.clone())],
            (u.clone(), Formula::boxed(a.clone())),
        );
        assert_eq!(s1.canonical_key(), s2.canonical_key());

        let s3 = LabeledSequent::new(
            vec![(y.clone(), x.clone())],
            vec![(y.clone(), a.clone())],
            (x, Formula::boxed(a)),
        );
        assert_ne!(s1.canonical_key(), s3.canonical_key());
    }

    #[test]
    fn sequent_set_key_absorbs_duplicates() {
        let a = Formula::iprop("a");
        let s1 = Sequent::new(vec![a.clone(), a.clone()], Formula::Bottom);
        let s2 = Sequent::new(vec![a.clone()], Formula::Bottom);
        assert_eq!(s1.canonical_key(), s2.canonical_key());
        assert!(!s1.multiset_eq(&s2));
    }
}
