//! Cut-elimination stress: cuts placed so the rewriting must permute over
//! left rules, right rules, eigenlabel rules and frame rules before any
//! principal reduction fires, plus contraction through every consuming
//! left rule.

use ecumene_core::labek::structural::contract;
use ecumene_core::labek::{
    check_labek_proof, eliminate_cuts, prove_labek, Extension, Theory,
};
use ecumene_core::outcome::{SearchBudget, SearchOutcome};
use ecumene_core::parser::{parse_labeled_sequent, parse_modal_formula};
use ecumene_core::proof::{LabekProof, LabekRule, ProofNode};
use ecumene_core::Label;

fn lab(rule: LabekRule, conclusion: &str, premises: Vec<LabekProof>) -> LabekProof {
    ProofNode::new(rule, parse_labeled_sequent(conclusion).unwrap(), premises)
}

fn assert_eliminates(name: &str, proof: LabekProof, th: &Theory) {
    check_labek_proof(&proof, th, true).unwrap_or_else(|e| panic!("{name} invalid: {e}"));
    let (free, steps) =
        eliminate_cuts(&proof, th, 500).unwrap_or_else(|e| panic!("{name}: {e}"));
    assert!(free.cut_free(), "{name}: cut left over");
    check_labek_proof(&free, th, false)
        .unwrap_or_else(|e| panic!("{name}: result rejected: {e}"));
    assert!(
        free.conclusion.multiset_eq(&proof.conclusion),
        "{name}: conclusion changed"
    );
    for step in &steps {
        for m in &step.introduced {
            assert!(
                *m < step.eliminated,
                "{name}: measure did not drop ({m:?} vs {:?})",
                step.eliminated
            );
        }
    }
}

/// The left premise ends in a left rule: the cut must permute left before
/// the conjunction reduction applies.
#[test]
fn permutes_over_left_rules() {
    let p1 = lab(
        LabekRule::AndL,
        "x: a_i /\\ b_i |- x: b_i /\\ a_i",
        vec![lab(
            LabekRule::AndR,
            "x: a_i, x: b_i |- x: b_i /\\ a_i",
            vec![
                lab(LabekRule::Init, "x: a_i, x: b_i |- x: b_i", vec![]),
                lab(LabekRule::Init, "x: a_i, x: b_i |- x: a_i", vec![]),
            ],
        )],
    );
    let p2 = lab(
        LabekRule::AndL,
        "x: b_i /\\ a_i, x: a_i /\\ b_i |- x: b_i",
        vec![lab(
            LabekRule::Init,
            "x: b_i, x: a_i, x: a_i /\\ b_i |- x: b_i",
            vec![],
        )],
    );
    let proof = lab(
        LabekRule::Cut,
        "x: a_i /\\ b_i |- x: b_i",
        vec![p1, p2],
    );
    assert_eliminates("left-rule permutation", proof, &Theory::plain());
}

/// The right premise ends in a right rule with the cut formula passive: the
/// cut permutes right, over an eigenlabel rule.
#[test]
fn permutes_over_eigenlabel_right_rule() {
    let p1 = lab(
        LabekRule::AndL,
        "x: c_i /\\ c_i |- x: c_i",
        vec![lab(LabekRule::Init, "x: c_i, x: c_i |- x: c_i", vec![])],
    );
    let p2 = lab(
        LabekRule::BoxR,
        "x: c_i, x: c_i /\\ c_i |- x: box (a_i ->i a_i)",
        vec![lab(
            LabekRule::ImpIR,
            "x R y, x: c_i, x: c_i /\\ c_i |- y: a_i ->i a_i",
            vec![lab(
                LabekRule::Init,
                "y: a_i, x R y, x: c_i, x: c_i /\\ c_i |- y: a_i",
                vec![],
            )],
        )],
    );
    let proof = lab(
        LabekRule::Cut,
        "x: c_i /\\ c_i |- x: box (a_i ->i a_i)",
        vec![p1, p2],
    );
    assert_eliminates("eigenlabel permutation", proof, &Theory::plain());
}

/// The left premise ends in the reflexivity frame rule: the cut permutes
/// over it, keeping the theory valid.
#[test]
fn permutes_over_frame_rules() {
    let th = Theory::with_extensions([Extension::T]);
    let p1 = lab(
        LabekRule::Refl,
        "x: a_i |- x: dia_i a_i",
        vec![lab(
            LabekRule::DiaIR,
            "x R x, x: a_i |- x: dia_i a_i",
            vec![lab(LabekRule::Init, "x R x, x: a_i |- x: a_i", vec![])],
        )],
    );
    let p2 = lab(
        LabekRule::DiaIL,
        "x: dia_i a_i, x: a_i |- x: dia_i a_i",
        vec![lab(
            LabekRule::DiaIR,
            "x R y, y: a_i, x: a_i |- x: dia_i a_i",
            vec![lab(LabekRule::Init, "x R y, y: a_i, x: a_i |- y: a_i", vec![])],
        )],
    )
    .with_inst(ecumene_core::Instantiation::eigen("y"));
    let proof = lab(
        LabekRule::Cut,
        "x: a_i |- x: dia_i a_i",
        vec![p1, p2],
    );
    assert_eliminates("frame-rule permutation", proof, &th);
}

/// The right premise threads the cut formula through weakening and an
/// implication before consuming it.
#[test]
fn permutes_through_weakening_and_implication() {
    let p1 = lab(
        LabekRule::OrIR1,
        "x: a_i, x: ~(a_i \\/i b_i) |- x: a_i \\/i b_i",
        vec![lab(
            LabekRule::Init,
            "x: a_i, x: ~(a_i \\/i b_i) |- x: a_i",
            vec![],
        )],
    );
    let p2 = lab(
        LabekRule::NegL,
        "x: a_i \\/i b_i, x: a_i, x: ~(a_i \\/i b_i) |- x: bot",
        vec![lab(
            LabekRule::Init,
            "x: a_i \\/i b_i, x: a_i, x: ~(a_i \\/i b_i) |- x: a_i \\/i b_i",
            vec![],
        )],
    );
    let proof = lab(
        LabekRule::Cut,
        "x: a_i, x: ~(a_i \\/i b_i) |- x: bot",
        vec![p1, p2],
    );
    assert_eliminates("weakening/implication threading", proof, &Theory::plain());
}

/// Stacked cuts: eliminating the topmost first, iteration clears both.
#[test]
fn eliminates_stacked_cuts() {
    let inner = lab(
        LabekRule::Cut,
        "x: a_i, x: b_i |- x: a_i /\\ b_i",
        vec![
            lab(
                LabekRule::AndR,
                "x: a_i, x: b_i |- x: a_i /\\ b_i",
                vec![
                    lab(LabekRule::Init, "x: a_i, x: b_i |- x: a_i", vec![]),
                    lab(LabekRule::Init, "x: a_i, x: b_i |- x: b_i", vec![]),
                ],
            ),
            lab(
                LabekRule::Init,
                "x: a_i /\\ b_i, x: a_i, x: b_i |- x: a_i /\\ b_i",
                vec![],
            ),
        ],
    );
    let outer = lab(
        LabekRule::Cut,
        "x: a_i, x: b_i |- x: b_i",
        vec![
            inner,
            lab(
                LabekRule::AndL,
                "x: a_i /\\ b_i, x: a_i, x: b_i |- x: b_i",
                vec![lab(
                    LabekRule::Init,
                    "x: a_i, x: b_i, x: a_i, x: b_i |- x: b_i",
                    vec![],
                )],
            ),
        ],
    );
    assert_eliminates("stacked cuts", outer, &Theory::plain());
}

/// Graft a cut against an init leaf onto every node of every corpus proof:
/// eliminating it exercises contraction through each rule shape the corpus
/// uses.
#[test]
fn init_cuts_grafted_on_corpus_proofs_eliminate() {
    use ecumene_core::labek::structural::weaken;
    use ecumene_core::script::ProofScript;
    use std::path::PathBuf;

    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join("corpus/scripts");
    let mut grafts = 0;
    for name in [
        "axiom_k.json",
        "axiom_k1.json",
        "axiom_k2.json",
        "axiom_k3.json",
        "axiom_k4.json",
        "refl_pair.json",
    ] {
        let text = std::fs::read_to_string(dir.join(name)).unwrap();
        let ProofScript::Labek { proof, theory, .. } = ProofScript::from_json(&text).unwrap()
        else {
            panic!("{name} is labeled");
        };
        // Pick each subtree whose conclusion has a nonempty antecedent.
        let nodes = proof.find_nodes(&|n| !n.conclusion.antecedent.is_empty());
        for (_, node) in nodes {
            let seq = node.conclusion.clone();
            let cut_formula = seq.antecedent[0].clone();
            let left = ProofNode::new(
                LabekRule::Init,
                seq.with_succedent(cut_formula.clone()),
                vec![],
            );
            let right = weaken(node, &[], std::slice::from_ref(&cut_formula));
            let grafted = ProofNode::new(LabekRule::Cut, seq, vec![left, right]);
            check_labek_proof(&grafted, &theory, true)
                .unwrap_or_else(|e| panic!("{name}: grafted cut invalid: {e}"));
            let (free, steps) = eliminate_cuts(&grafted, &theory, 200)
                .unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(free.cut_free());
            check_labek_proof(&free, &theory, false)
                .unwrap_or_else(|e| panic!("{name}: eliminated graft rejected: {e}"));
            assert!(free.conclusion.multiset_eq(&grafted.conclusion));
            for step in &steps {
                for m in &step.introduced {
                    assert!(*m < step.eliminated, "{name}: measure regressed");
                }
            }
            grafts += 1;
        }
    }
    assert!(grafts >= 20, "expected many graft points, got {grafts}");
}

/// Contraction works through every consuming left rule, including the
/// classical ones that pin the succedent to bottom.
#[test]
fn contraction_covers_classical_consumers() {
    let cases = [
        (
            "x: a_i \\/c b_i, x: a_i \\/c b_i, x: ~a_i, x: ~b_i |- x: bot",
            "a_i \\/c b_i",
        ),
        ("x: p_c, x: p_c, x: ~p_i |- x: bot", "p_c"),
        (
            "x: a_i ->c bot, x: a_i ->c bot, x: a_i |- x: bot",
            "a_i ->c bot",
        ),
        (
            "x: dia_c a_i, x: dia_c a_i, x: box ~a_i |- x: bot",
            "dia_c a_i",
        ),
        (
            "x: dia_i a_i, x: dia_i a_i |- x: dia_i (a_i \\/i b_i)",
            "dia_i a_i",
        ),
    ];
    for (src, dup) in cases {
        let seq = parse_labeled_sequent(src).unwrap();
        let proof = match prove_labek(&seq, &Theory::plain(), &SearchBudget::default()).unwrap() {
            SearchOutcome::Proved(p) => p,
            _ => panic!("{src} should be provable"),
        };
        let item = (Label::new("x"), parse_modal_formula(dup).unwrap());
        let contracted = contract(&proof, &item);
        check_labek_proof(&contracted, &Theory::plain(), false)
            .unwrap_or_else(|e| panic!("{src}: contracted proof rejected: {e}"));
        assert_eq!(
            contracted
                .conclusion
                .antecedent
                .iter()
                .filter(|i| **i == item)
                .count(),
            1,
            "{src}: expected one copy left"
        );
        assert!(contracted.height() <= proof.height(), "{src}: height grew");
    }
}
