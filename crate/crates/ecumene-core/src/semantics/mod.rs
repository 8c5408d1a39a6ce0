//! Finite birelational Kripke models: well-formedness checking, the
//! ecumenical forcing relation, frame properties, and (in `enumerate`) the
//! exhaustive countermodel oracle.

pub mod enumerate;

pub use enumerate::{enumerate_models, find_countermodel, is_valid_in_all};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::Formula;

/// A finite birelational model over named worlds. `leq` is the
/// intuitionistic order, `r` the modal accessibility relation, `val` the
/// (monotone) valuation assigning intuitionistic atoms to worlds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KripkeModel {
    pub worlds: Vec<String>,
    pub leq: Vec<(String, String)>,
    #[serde(rename = "R")]
    pub r: Vec<(String, String)>,
    pub val: BTreeMap<String, BTreeSet<String>>,
}

/// Frame conditions on the accessibility relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FrameProperty {
    Reflexive,
    Transitive,
    Euclidean,
    Symmetric,
}

impl FrameProperty {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "reflexive" | "T" | "t" => Some(FrameProperty::Reflexive),
            "transitive" | "4" => Some(FrameProperty::Transitive),
            "euclidean" | "5" => Some(FrameProperty::Euclidean),
            "symmetric" | "B" | "b" => Some(FrameProperty::Symmetric),
            _ => None,
        }
    }
}

/// A failed model invariant, with the witnessing worlds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelViolation {
    UnknownWorld(String),
    DuplicateWorld(String),
    NotReflexive(String),
    NotTransitive(String, String, String),
    NotAntisymmetric(String, String),
    NonMonotone { atom: String, lower: String, upper: String },
    F1 { w: String, v: String, v2: String },
    F2 { w2: String, w: String, v: String },
}

impl fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelViolation::UnknownWorld(w) => write!(f, "undeclared world `{w}`"),
            ModelViolation::DuplicateWorld(w) => write!(f, "duplicate world `{w}`"),
            ModelViolation::NotReflexive(w) => write!(f, "order not reflexive at `{w}`"),
            ModelViolation::NotTransitive(a, b, c) => {
                write!(f, "order not transitive: {a} <= {b} <= {c} but not {a} <= {c}")
            }
            ModelViolation::NotAntisymmetric(a, b) => {
                write!(f, "order not antisymmetric on {a}, {b}")
            }
            ModelViolation::NonMonotone { atom, lower, upper } => write!(
                f,
                "valuation not monotone: `{atom}` holds at {lower} but not at {upper} >= {lower}"
            ),
            ModelViolation::F1 { w, v, v2 } => write!(
                f,
                "F1 fails: {w} R {v} and {v} <= {v2} but no w' >= {w} with w' R {v2}"
            ),
            ModelViolation::F2 { w2, w, v } => write!(
                f,
                "F2 fails: {w} <= {w2} and {w} R {v} but no v' >= {v} with {w2} R v'"
            ),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("model violates its invariants: {}", summarize(.0))]
    InvalidModel(Vec<ModelViolation>),
    #[error("formula is outside the modal fragment")]
    Fragment,
    #[error("world `{0}` is not in the model")]
    UnknownWorld(String),
    #[error("models larger than 64 worlds are not supported")]
    TooLarge,
}

fn summarize(vs: &[ModelViolation]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// Whether antisymmetry of the order is required. The partial-order mode is
/// the default; the preorder mode exists for experimentation only and is
/// excluded from acceptance runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderMode {
    #[default]
    PartialOrder,
    Preorder,
}

/// Check all model invariants, reporting every violation.
pub fn check_model(m: &KripkeModel) -> Vec<ModelViolation> {
    check_model_with(m, OrderMode::PartialOrder)
}

pub fn check_model_with(m: &KripkeModel, mode: OrderMode) -> Vec<ModelViolation> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for w in &m.worlds {
        if !seen.insert(w.clone()) {
            out.push(ModelViolation::DuplicateWorld(w.clone()));
        }
    }
    let known = |w: &String| seen.contains(w);
    for (a, b) in m.leq.iter().chain(m.r.iter()) {
        for w in [a, b] {
            if !known(w) {
                out.push(ModelViolation::UnknownWorld(w.clone()));
            }
        }
    }
    for w in m.val.keys() {
        if !known(w) {
            out.push(ModelViolation::UnknownWorld(w.clone()));
        }
    }
    if !out.is_empty() {
        return out;
    }

    let leq = |a: &String, b: &String| a == b || m.leq.contains(&(a.clone(), b.clone()));
    for w in &m.worlds {
        if !leq(w, w) {
            // Reflexivity is implicit in `leq`; listing (w,w) is allowed but
            // never required, so this cannot fire. Kept for clarity.
            out.push(ModelViolation::NotReflexive(w.clone()));
        }
    }
    for a in &m.worlds {
        for b in &m.worlds {
            if a != b && leq(a, b) && leq(b, a) && mode == OrderMode::PartialOrder && a < b {
                out.push(ModelViolation::NotAntisymmetric(a.clone(), b.clone()));
            }
            for c in &m.worlds {
                if leq(a, b) && leq(b, c) && !leq(a, c) {
                    out.push(ModelViolation::NotTransitive(a.clone(), b.clone(), c.clone()));
                }
            }
        }
    }

    let empty = BTreeSet::new();
    for (w, atoms) in &m.val {
        for v in &m.worlds {
            if leq(w, v) {
                let upper = m.val.get(v).unwrap_or(&empty);
                for atom in atoms {
                    if !upper.contains(atom) {
                        out.push(ModelViolation::NonMonotone {
                            atom: atom.clone(),
                            lower: w.clone(),
                            upper: v.clone(),
                        });
                    }
                }
            }
        }
    }

    let rel = |a: &String, b: &String| m.r.contains(&(a.clone(), b.clone()));
    for w in &m.worlds {
        for v in &m.worlds {
            if !rel(w, v) {
                continue;
            }
            for v2 in &m.worlds {
                if leq(v, v2) && !m.worlds.iter().any(|w2| leq(w, w2) && rel(w2, v2)) {
                    out.push(ModelViolation::F1 {
                        w: w.clone(),
                        v: v.clone(),
                        v2: v2.clone(),
                    });
                }
            }
            for w2 in &m.worlds {
                if leq(w, w2) && !m.worlds.iter().any(|v2| rel(w2, v2) && leq(v, v2)) {
                    out.push(ModelViolation::F2 {
                        w2: w2.clone(),
                        w: w.clone(),
                        v: v.clone(),
                    });
                }
            }
        }
    }
    out
}

/// Validated model in index form, with bitmask rows for fast evaluation.
#[derive(Debug, Clone)]
pub struct EvalModel {
    pub names: Vec<String>,
    /// `leq_up[w]` = bitmask of worlds v with w <= v (reflexive closure).
    pub leq_up: Vec<u64>,
    /// `r_succ[w]` = bitmask of R-successors of w.
    pub r_succ: Vec<u64>,
    /// Atom name -> bitmask of worlds where the intuitionistic atom holds.
    pub val: BTreeMap<String, u64>,
}

impl EvalModel {
    /// Validate and compile a named model.
    pub fn compile(m: &KripkeModel) -> Result<EvalModel, SemanticsError> {
        Self::compile_with(m, OrderMode::PartialOrder)
    }

    pub fn compile_with(m: &KripkeModel, mode: OrderMode) -> Result<EvalModel, SemanticsError> {
        let violations = check_model_with(m, mode);
        if !violations.is_empty() {
            return Err(SemanticsError::InvalidModel(violations));
        }
        if m.worlds.len() > 64 {
            return Err(SemanticsError::TooLarge);
        }
        let index: BTreeMap<&String, usize> =
            m.worlds.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let n = m.worlds.len();
        let mut leq_up = vec![0u64; n];
        for (i, row) in leq_up.iter_mut().enumerate() {
            *row |= 1 << i;
        }
        for (a, b) in &m.leq {
            leq_up[index[a]] |= 1 << index[b];
        }
        let mut r_succ = vec![0u64; n];
        for (a, b) in &m.r {
            r_succ[index[a]] |= 1 << index[b];
        }
        let mut val = BTreeMap::new();
        for (w, atoms) in &m.val {
            for atom in atoms {
                *val.entry(atom.clone()).or_insert(0u64) |= 1 << index[w];
            }
        }
        Ok(EvalModel {
            names: m.worlds.clone(),
            leq_up,
            r_succ,
            val,
        })
    }

    pub fn world_count(&self) -> usize {
        self.leq_up.len()
    }

    pub fn world_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|w| w == name)
    }

    fn all_mask(&self) -> u64 {
        if self.world_count() == 64 {
            u64::MAX
        } else {
            (1u64 << self.world_count()) - 1
        }
    }

    /// Worlds forcing `~X` given the worlds forcing `X`: no extension
    /// forces `X`.
    fn neg_mask(&self, x: u64) -> u64 {
        let mut out = 0;
        for w in 0..self.world_count() {
            if self.leq_up[w] & x == 0 {
                out |= 1 << w;
            }
        }
        out
    }

    fn imp_mask(&self, a: u64, b: u64) -> u64 {
        let mut out = 0;
        for w in 0..self.world_count() {
            if self.leq_up[w] & a & !b == 0 {
                out |= 1 << w;
            }
        }
        out
    }

    /// Two-step box clause: every `<=`-extension's R-successors force `a`.
    fn box_mask(&self, a: u64) -> u64 {
        let mut out = 0;
        for w in 0..self.world_count() {
            let mut holds = true;
            let mut ups = self.leq_up[w];
            while ups != 0 {
                let w2 = ups.trailing_zeros() as usize;
                ups &= ups - 1;
                if self.r_succ[w2] & !a != 0 {
                    holds = false;
                    break;
                }
            }
            if holds {
                out |= 1 << w;
            }
        }
        out
    }

    fn dia_i_mask(&self, a: u64) -> u64 {
        let mut out = 0;
        for w in 0..self.world_count() {
            if self.r_succ[w] & a != 0 {
                out |= 1 << w;
            }
        }
        out
    }

    /// Bitmask of worlds forcing `f`. The classical connectives evaluate via
    /// their negative unfoldings, so the identities hold by construction.
    pub fn eval_mask(&self, f: &Formula) -> Result<u64, SemanticsError> {
        Ok(match f {
            Formula::IntAtom(n, args) if args.is_empty() => {
                self.val.get(n).copied().unwrap_or(0)
            }
            Formula::ClAtom(n, args) if args.is_empty() => {
                let p = self.val.get(n).copied().unwrap_or(0);
                self.neg_mask(self.neg_mask(p))
            }
            Formula::Bottom => 0,
            Formula::Neg(a) => self.neg_mask(self.eval_mask(a)?),
            Formula::And(l, r) => self.eval_mask(l)? & self.eval_mask(r)?,
            Formula::OrI(l, r) => self.eval_mask(l)? | self.eval_mask(r)?,
            Formula::OrC(l, r) => {
                let nl = self.neg_mask(self.eval_mask(l)?);
                let nr = self.neg_mask(self.eval_mask(r)?);
                self.neg_mask(nl & nr)
            }
            Formula::ImpI(l, r) => self.imp_mask(self.eval_mask(l)?, self.eval_mask(r)?),
            Formula::ImpC(l, r) => {
                let a = self.eval_mask(l)?;
                let nb = self.neg_mask(self.eval_mask(r)?);
                self.neg_mask(a & nb)
            }
            Formula::Box(a) => self.box_mask(self.eval_mask(a)?),
            Formula::DiaI(a) => self.dia_i_mask(self.eval_mask(a)?),
            Formula::DiaC(a) => {
                let na = self.neg_mask(self.eval_mask(a)?);
                self.neg_mask(self.box_mask(na))
            }
            _ => return Err(SemanticsError::Fragment),
        })
    }

    pub fn forces_at(&self, world: usize, f: &Formula) -> Result<bool, SemanticsError> {
        Ok(self.eval_mask(f)? & (1 << world) != 0)
    }

    /// True when every world forces `f`.
    pub fn validates(&self, f: &Formula) -> Result<bool, SemanticsError> {
        Ok(self.eval_mask(f)? == self.all_mask())
    }

    pub fn satisfies(&self, p: FrameProperty) -> bool {
        let n = self.world_count();
        match p {
            FrameProperty::Reflexive => (0..n).all(|w| self.r_succ[w] & (1 << w) != 0),
            FrameProperty::Transitive => (0..n).all(|x| {
                let mut ys = self.r_succ[x];
                let mut ok = true;
                while ys != 0 {
                    let y = ys.trailing_zeros() as usize;
                    ys &= ys - 1;
                    if self.r_succ[y] & !self.r_succ[x] != 0 {
                        ok = false;
                        break;
                    }
                }
                ok
            }),
            FrameProperty::Euclidean => (0..n).all(|x| {
                let mut ys = self.r_succ[x];
                let mut ok = true;
                while ys != 0 {
                    let y = ys.trailing_zeros() as usize;
                    ys &= ys - 1;
                    if self.r_succ[x] & !self.r_succ[y] != 0 {
                        ok = false;
                        break;
                    }
                }
                ok
            }),
            FrameProperty::Symmetric => (0..n).all(|x| {
                let mut ys = self.r_succ[x];
                let mut ok = true;
                while ys != 0 {
                    let y = ys.trailing_zeros() as usize;
                    ys &= ys - 1;
                    if self.r_succ[y] & (1 << x) == 0 {
                        ok = false;
                        break;
                    }
                }
                ok
            }),
        }
    }

    /// Convert back to the named representation.
    pub fn to_model(&self) -> KripkeModel {
        let n = self.world_count();
        let mut leq = Vec::new();
        let mut r = Vec::new();
        for w in 0..n {
            for v in 0..n {
                if w != v && self.leq_up[w] & (1 << v) != 0 {
                    leq.push((self.names[w].clone(), self.names[v].clone()));
                }
                if self.r_succ[w] & (1 << v) != 0 {
                    r.push((self.names[w].clone(), self.names[v].clone()));
                }
            }
        }
        let mut val: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for (atom, mask) in &self.val {
            for w in 0..n {
                if mask & (1 << w) != 0 {
                    val.entry(self.names[w].clone())
                        .or_default()
                        .insert(atom.clone());
                }
            }
        }
        KripkeModel {
            worlds: self.names.clone(),
            leq,
            r,
            val,
        }
    }
}

/// Forcing at a named world: exactly the birelational clauses, classical
/// connectives via their double-negation unfoldings.
pub fn forces(m: &KripkeModel, world: &str, f: &Formula) -> Result<bool, SemanticsError> {
    if !f.is_modal_fragment() {
        return Err(SemanticsError::Fragment);
    }
    let eval = EvalModel::compile(m)?;
    let w = eval
        .world_index(world)
        .ok_or_else(|| SemanticsError::UnknownWorld(world.to_string()))?;
    eval.forces_at(w, f)
}

/// Statement of the semantic agreement between a formula and its
/// double-negation image: `forces(m,w,f) == forces(m,w,ik_translate(f))`.
/// Must hold for every well-formed model.
pub fn forcing_agreement(m: &KripkeModel, world: &str, f: &Formula) -> Result<bool, SemanticsError> {
    let direct = forces(m, world, f)?;
    let image = crate::translate::ik_translate(f).map_err(|_| SemanticsError::Fragment)?;
    let translated = forces(m, world, &image)?;
    Ok(direct == translated)
}

/// Evaluate a Table-1 frame condition on R.
pub fn check_frame_property(m: &KripkeModel, p: FrameProperty) -> Result<bool, SemanticsError> {
    Ok(EvalModel::compile(m)?.satisfies(p))
}
