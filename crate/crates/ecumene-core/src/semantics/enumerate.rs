//! Exhaustive model enumeration modulo isomorphism, and the countermodel
//! search built on it. Orders are enumerated canonically under all label
//! permutations; accessibility relations canonically under the order's
//! automorphisms; valuations range over up-sets per atom.

use std::collections::BTreeMap;

use super::{EvalModel, FrameProperty, KripkeModel, SemanticsError};
use crate::formula::Formula;

/// Visit one representative of every isomorphism class of well-formed
/// models with at most `max_worlds` worlds, valuations over `atoms`, and R
/// satisfying `props`. The visitor returns `false` to stop early; the
/// function reports whether enumeration ran to completion.
pub fn enumerate_models(
    max_worlds: usize,
    atoms: &[String],
    props: &[FrameProperty],
    visit: &mut impl FnMut(&EvalModel) -> bool,
) -> bool {
    assert!((1..=6).contains(&max_worlds), "enumeration is for desk-scale model counts");
    for n in 1..=max_worlds {
        let perms = permutations(n);
        for leq_up in canonical_posets(n, &perms) {
            let auts: Vec<&Vec<usize>> = perms
                .iter()
                .filter(|p| apply_perm_rows(&leq_up, p) == leq_up)
                .collect();
            let upsets = up_sets(&leq_up);
            let rel_count: u64 = 1 << (n * n);
            for rel_bits in 0..rel_count {
                let r_succ = decode_rows(rel_bits, n);
                if !frame_ok(&leq_up, &r_succ) {
                    continue;
                }
                // Canonical representative under the order's automorphisms.
                if auts
                    .iter()
                    .any(|p| encode_rows(&apply_perm_rows(&r_succ, p)) < rel_bits)
                {
                    continue;
                }
                let frame = EvalModel {
                    names: (0..n).map(|i| format!("w{i}")).collect(),
                    leq_up: leq_up.clone(),
                    r_succ,
                    val: BTreeMap::new(),
                };
                if !props.iter().all(|p| frame.satisfies(*p)) {
                    continue;
                }
                if !visit_valuations(&frame, atoms, &upsets, visit) {
                    return false;
                }
            }
        }
    }
    true
}

fn visit_valuations(
    frame: &EvalModel,
    atoms: &[String],
    upsets: &[u64],
    visit: &mut impl FnMut(&EvalModel) -> bool,
) -> bool {
    if atoms.is_empty() {
        return visit(frame);
    }
    let mut choice = vec![0usize; atoms.len()];
    loop {
        let mut model = frame.clone();
        for (atom, &idx) in atoms.iter().zip(&choice) {
            model.val.insert(atom.clone(), upsets[idx]);
        }
        if !visit(&model) {
            return false;
        }
        // Odometer over up-set indices.
        let mut i = 0;
        loop {
            if i == choice.len() {
                return true;
            }
            choice[i] += 1;
            if choice[i] < upsets.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Search for a model and world refuting `f`, exhaustively up to
/// `max_worlds` worlds modulo isomorphism.
pub fn find_countermodel(
    f: &Formula,
    max_worlds: usize,
    props: &[FrameProperty],
) -> Result<Option<(KripkeModel, String)>, SemanticsError> {
    if !f.is_modal_fragment() {
        return Err(SemanticsError::Fragment);
    }
    let atoms: Vec<String> = f.atom_names().into_iter().collect();
    let mut found = None;
    enumerate_models(max_worlds, &atoms, props, &mut |m| {
        match m.eval_mask(f) {
            Ok(mask) => {
                let missing = !mask & ((1u64 << m.world_count()) - 1);
                if missing != 0 {
                    let w = missing.trailing_zeros() as usize;
                    found = Some((m.to_model(), m.names[w].clone()));
                    false
                } else {
                    true
                }
            }
            Err(_) => false,
        }
    });
    Ok(found)
}

/// True iff `f` holds at every world of every enumerated model.
pub fn is_valid_in_all(
    f: &Formula,
    max_worlds: usize,
    props: &[FrameProperty],
) -> Result<bool, SemanticsError> {
    Ok(find_countermodel(f, max_worlds, props)?.is_none())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut items: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    heap(&mut items, n, &mut out);
    out
}

fn heap(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap(items, k - 1, out);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

/// All partial orders on `n` elements, canonical under label permutation,
/// as reflexive up-mask rows.
fn canonical_posets(n: usize, perms: &[Vec<usize>]) -> Vec<Vec<u64>> {
    let strict_pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |b| a != *b).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for bits in 0u64..(1 << strict_pairs.len()) {
        let mut rows = vec![0u64; n];
        for (i, row) in rows.iter_mut().enumerate() {
            *row |= 1 << i;
        }
        for (k, (a, b)) in strict_pairs.iter().enumerate() {
            if bits & (1 << k) != 0 {
                rows[*a] |= 1 << b;
            }
        }
        if !is_partial_order(&rows) {
            continue;
        }
        let code = encode_rows(&rows);
        if perms
            .iter()
            .all(|p| encode_rows(&apply_perm_rows(&rows, p)) >= code)
        {
            out.push(rows);
        }
    }
    out
}

fn is_partial_order(rows: &[u64]) -> bool {
    let n = rows.len();
    for a in 0..n {
        for b in 0..n {
            if a != b && rows[a] & (1 << b) != 0 {
                if rows[b] & (1 << a) != 0 {
                    return false; // antisymmetry
                }
                if rows[b] & !rows[a] != 0 {
                    return false; // transitivity
                }
            }
        }
    }
    true
}

/// Frame conditions F1 and F2 linking the order and R.
fn frame_ok(leq_up: &[u64], r_succ: &[u64]) -> bool {
    let n = leq_up.len();
    // up_r[w] = union of R-successors over all w' >= w.
    let mut up_r = vec![0u64; n];
    for w in 0..n {
        let mut ups = leq_up[w];
        while ups != 0 {
            let w2 = ups.trailing_zeros() as usize;
            ups &= ups - 1;
            up_r[w] |= r_succ[w2];
        }
    }
    for w in 0..n {
        let mut vs = r_succ[w];
        while vs != 0 {
            let v = vs.trailing_zeros() as usize;
            vs &= vs - 1;
            // F1: every v' >= v is reachable from some w' >= w.
            if leq_up[v] & !up_r[w] != 0 {
                return false;
            }
            // F2: every w' >= w reaches some v' >= v.
            let mut ups = leq_up[w];
            while ups != 0 {
                let w2 = ups.trailing_zeros() as usize;
                ups &= ups - 1;
                if r_succ[w2] & leq_up[v] == 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Up-closed subsets of the order: the monotone valuations of one atom.
fn up_sets(leq_up: &[u64]) -> Vec<u64> {
    let n = leq_up.len();
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        let mut ok = true;
        let mut ms = mask;
        while ms != 0 {
            let w = ms.trailing_zeros() as usize;
            ms &= ms - 1;
            if leq_up[w] & !mask != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(mask);
        }
    }
    out
}

fn decode_rows(bits: u64, n: usize) -> Vec<u64> {
    (0..n)
        .map(|a| (bits >> (a * n)) & ((1 << n) - 1))
        .collect()
}

fn apply_perm_rows(rows: &[u64], perm: &[usize]) -> Vec<u64> {
    let n = rows.len();
    let mut out = vec![0u64; n];
    for a in 0..n {
        for b in 0..n {
            if rows[a] & (1 << b) != 0 {
                out[perm[a]] |= 1 << perm[b];
            }
        }
    }
    out
}

fn encode_rows(rows: &[u64]) -> u64 {
    let n = rows.len();
    let mut code = 0u64;
    for (a, row) in rows.iter().enumerate() {
        code |= (row & ((1 << n) - 1)) << (a * n);
    }
    code
}
