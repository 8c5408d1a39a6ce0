//! Builders for the proof-script corpus files and the test keeping them in
//! sync. Run with `ECUMENE_REGEN=1` to rewrite `corpus/scripts/` from the
//! builders; without it the committed files must match byte for byte.

use std::path::PathBuf;

use ecumene_core::labek::{AxiomScheme, Extension, Theory};
use ecumene_core::parser::{parse_labeled_sequent, parse_sequent};
use ecumene_core::proof::{Instantiation, LabekProof, LabekRule, LeciProof, LeciRule, ProofNode};
use ecumene_core::script::ProofScript;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join("corpus")
}

fn lab(rule: LabekRule, conclusion: &str, premises: Vec<LabekProof>) -> LabekProof {
    ProofNode::new(rule, parse_labeled_sequent(conclusion).unwrap(), premises)
}

fn lab_eigen(rule: LabekRule, conclusion: &str, eigen: &str, premises: Vec<LabekProof>) -> LabekProof {
    lab(rule, conclusion, premises).with_inst(Instantiation::eigen(eigen))
}

fn lec(rule: LeciRule, conclusion: &str, premises: Vec<LeciProof>) -> LeciProof {
    ProofNode::new(rule, parse_sequent(conclusion).unwrap(), premises)
}

/// Distribution over implication: box (a ->i b) ->i (box a ->i box b).
fn axiom_k() -> ProofScript {
    let proof = lab(
        LabekRule::ImpIR,
        "|- x: box (a_i ->i b_i) ->i (box a_i ->i box b_i)",
        vec![lab(
            LabekRule::ImpIR,
            "x: box (a_i ->i b_i) |- x: box a_i ->i box b_i",
            vec![lab_eigen(
                LabekRule::BoxR,
                "x: box a_i, x: box (a_i ->i b_i) |- x: box b_i",
                "y",
                vec![lab(
                    LabekRule::BoxL,
                    "x R y, x: box a_i, x: box (a_i ->i b_i) |- y: b_i",
                    vec![lab(
                        LabekRule::BoxL,
                        "x R y, y: a_i, x: box a_i, x: box (a_i ->i b_i) |- y: b_i",
                        vec![lab(
                            LabekRule::ImpIL,
                            "x R y, y: a_i ->i b_i, y: a_i, x: box a_i, x: box (a_i ->i b_i) |- y: b_i",
                            vec![
                                lab(
                                    LabekRule::Init,
                                    "x R y, y: a_i ->i b_i, y: a_i, x: box a_i, x: box (a_i ->i b_i) |- y: a_i",
                                    vec![],
                                ),
                                lab(
                                    LabekRule::Init,
                                    "x R y, y: b_i, y: a_i, x: box a_i, x: box (a_i ->i b_i) |- y: b_i",
                                    vec![],
                                ),
                            ],
                        )],
                    )],
                )],
            )],
        )],
    );
    ProofScript::labek(proof, Theory::plain(), false)
}

/// Distribution over the intuitionistic diamond.
fn axiom_k1() -> ProofScript {
    let proof = lab(
        LabekRule::ImpIR,
        "|- x: box (a_i ->i b_i) ->i (dia_i a_i ->i dia_i b_i)",
        vec![lab(
            LabekRule::ImpIR,
            "x: box (a_i ->i b_i) |- x: dia_i a_i ->i dia_i b_i",
            vec![lab_eigen(
                LabekRule::DiaIL,
                "x: dia_i a_i, x: box (a_i ->i b_i) |- x: dia_i b_i",
                "y",
                vec![lab(
                    LabekRule::DiaIR,
                    "x R y, y: a_i, x: box (a_i ->i b_i) |- x: dia_i b_i",
                    vec![lab(
                        LabekRule::BoxL,
                        "x R y, y: a_i, x: box (a_i ->i b_i) |- y: b_i",
                        vec![lab(
                            LabekRule::ImpIL,
                            "x R y, y: a_i ->i b_i, y: a_i, x: box (a_i ->i b_i) |- y: b_i",
                            vec![
                                lab(
                                    LabekRule::Init,
                                    "x R y, y: a_i ->i b_i, y: a_i, x: box (a_i ->i b_i) |- y: a_i",
                                    vec![],
                                ),
                                lab(
                                    LabekRule::Init,
                                    "x R y, y: b_i, y: a_i, x: box (a_i ->i b_i) |- y: b_i",
                                    vec![],
                                ),
                            ],
                        )],
                    )],
                )],
            )],
        )],
    );
    ProofScript::labek(proof, Theory::plain(), false)
}

/// The diamond distributes over intuitionistic disjunction.
fn axiom_k2() -> ProofScript {
    let goal = "x: dia_i a_i \\/i dia_i b_i";
    let proof = lab(
        LabekRule::ImpIR,
        "|- x: dia_i (a_i \\/i b_i) ->i (dia_i a_i \\/i dia_i b_i)",
        vec![lab_eigen(
            LabekRule::DiaIL,
            &format!("x: dia_i (a_i \\/i b_i) |- {goal}"),
            "y",
            vec![lab(
                LabekRule::OrIL,
                &format!("x R y, y: a_i \\/i b_i |- {goal}"),
                vec![
                    lab(
                        LabekRule::OrIR1,
                        &format!("x R y, y: a_i |- {goal}"),
                        vec![lab(
                            LabekRule::DiaIR,
                            "x R y, y: a_i |- x: dia_i a_i",
                            vec![lab(LabekRule::Init, "x R y, y: a_i |- y: a_i", vec![])],
                        )],
                    ),
                    lab(
                        LabekRule::OrIR2,
                        &format!("x R y, y: b_i |- {goal}"),
                        vec![lab(
                            LabekRule::DiaIR,
                            "x R y, y: b_i |- x: dia_i b_i",
                            vec![lab(LabekRule::Init, "x R y, y: b_i |- y: b_i", vec![])],
                        )],
                    ),
                ],
            )],
        )],
    );
    ProofScript::labek(proof, Theory::plain(), false)
}

/// (dia_i a ->i box b) ->i box (a ->i b).
fn axiom_k3() -> ProofScript {
    let proof = lab(
        LabekRule::ImpIR,
        "|- x: (dia_i a_i ->i box b_i) ->i box (a_i ->i b_i)",
        vec![lab_eigen(
            LabekRule::BoxR,
            "x: dia_i a_i ->i box b_i |- x: box (a_i ->i b_i)",
            "y",
            vec![lab(
                LabekRule::ImpIR,
                "x R y, x: dia_i a_i ->i box b_i |- y: a_i ->i b_i",
                vec![lab(
                    LabekRule::ImpIL,
                    "y: a_i, x R y, x: dia_i a_i ->i box b_i |- y: b_i",
                    vec![
                        lab(
                            LabekRule::DiaIR,
                            "y: a_i, x R y, x: dia_i a_i ->i box b_i |- x: dia_i a_i",
                            vec![lab(
                                LabekRule::Init,
                                "y: a_i, x R y, x: dia_i a_i ->i box b_i |- y: a_i",
                                vec![],
                            )],
                        ),
                        lab(
                            LabekRule::BoxL,
                            "x: box b_i, y: a_i, x R y |- y: b_i",
                            vec![lab(
                                LabekRule::Init,
                                "y: b_i, x: box b_i, y: a_i, x R y |- y: b_i",
                                vec![],
                            )],
                        ),
                    ],
                )],
            )],
        )],
    );
    ProofScript::labek(proof, Theory::plain(), false)
}

/// dia_i bot ->i bot.
fn axiom_k4() -> ProofScript {
    let proof = lab(
        LabekRule::ImpIR,
        "|- x: dia_i bot ->i bot",
        vec![lab_eigen(
            LabekRule::DiaIL,
            "x: dia_i bot |- x: bot",
            "y",
            vec![lab(LabekRule::Bot, "x R y, y: bot |- x: bot", vec![])],
        )],
    );
    ProofScript::labek(proof, Theory::plain(), false)
}

/// From a reflexivity hypothesis, both box a ->i a and a ->i dia_i a.
fn refl_pair() -> ProofScript {
    let proof = lab(
        LabekRule::AndR,
        "x R x |- x: (box a_i ->i a_i) /\\ (a_i ->i dia_i a_i)",
        vec![
            lab(
                LabekRule::ImpIR,
                "x R x |- x: box a_i ->i a_i",
                vec![lab(
                    LabekRule::BoxL,
                    "x: box a_i, x R x |- x: a_i",
                    vec![lab(
                        LabekRule::Init,
                        "x: a_i, x: box a_i, x R x |- x: a_i",
                        vec![],
                    )],
                )],
            ),
            lab(
                LabekRule::ImpIR,
                "x R x |- x: a_i ->i dia_i a_i",
                vec![lab(
                    LabekRule::DiaIR,
                    "x: a_i, x R x |- x: dia_i a_i",
                    vec![lab(LabekRule::Init, "x: a_i, x R x |- x: a_i", vec![])],
                )],
            ),
        ],
    );
    ProofScript::labek(proof, Theory::plain(), false)
}

/// The collapse derivation: with reflexivity and the interdefinability
/// axiom (assumed via cut against an axiom leaf), the intuitionistic
/// excluded middle becomes derivable.
fn collapse() -> ProofScript {
    let inst = "x: ~dia_i ~(a_i \\/i ~a_i) ->i box (a_i \\/i ~a_i)";
    let left_left = lab(
        LabekRule::Axiom,
        &format!("|- {inst}"),
        vec![],
    )
    .with_inst(Instantiation::axiom("interdef"));
    let inner = lab(
        LabekRule::NegL,
        &format!("x R y, y: ~(a_i \\/i ~a_i), {inst} |- y: bot"),
        vec![lab(
            LabekRule::OrIR2,
            &format!("x R y, y: ~(a_i \\/i ~a_i), {inst} |- y: a_i \\/i ~a_i"),
            vec![lab(
                LabekRule::NegR,
                &format!("x R y, y: ~(a_i \\/i ~a_i), {inst} |- y: ~a_i"),
                vec![lab(
                    LabekRule::NegL,
                    &format!("y: a_i, x R y, y: ~(a_i \\/i ~a_i), {inst} |- y: bot"),
                    vec![lab(
                        LabekRule::OrIR1,
                        &format!("y: a_i, x R y, y: ~(a_i \\/i ~a_i), {inst} |- y: a_i \\/i ~a_i"),
                        vec![lab(
                            LabekRule::Init,
                            &format!("y: a_i, x R y, y: ~(a_i \\/i ~a_i), {inst} |- y: a_i"),
                            vec![],
                        )],
                    )],
                )],
            )],
        )],
    );
    let left_right = lab(
        LabekRule::ImpIL,
        &format!("{inst} |- x: box (a_i \\/i ~a_i)"),
        vec![
            lab(
                LabekRule::NegR,
                &format!("{inst} |- x: ~dia_i ~(a_i \\/i ~a_i)"),
                vec![lab_eigen(
                    LabekRule::DiaIL,
                    &format!("x: dia_i ~(a_i \\/i ~a_i), {inst} |- x: bot"),
                    "y",
                    vec![lab(
                        LabekRule::W,
                        &format!("x R y, y: ~(a_i \\/i ~a_i), {inst} |- x: bot"),
                        vec![inner],
                    )],
                )],
            ),
            lab(
                LabekRule::Init,
                "x: box (a_i \\/i ~a_i) |- x: box (a_i \\/i ~a_i)",
                vec![],
            ),
        ],
    );
    let left = lab(
        LabekRule::Cut,
        "|- x: box (a_i \\/i ~a_i)",
        vec![left_left, left_right],
    );
    let right = lab(
        LabekRule::Refl,
        "x: box (a_i \\/i ~a_i) |- x: a_i \\/i ~a_i",
        vec![lab(
            LabekRule::BoxL,
            "x R x, x: box (a_i \\/i ~a_i) |- x: a_i \\/i ~a_i",
            vec![lab(
                LabekRule::Init,
                "x R x, x: a_i \\/i ~a_i, x: box (a_i \\/i ~a_i) |- x: a_i \\/i ~a_i",
                vec![],
            )],
        )],
    );
    let proof = lab(LabekRule::Cut, "|- x: a_i \\/i ~a_i", vec![left, right]);
    let theory = Theory::with_extensions([Extension::T]).with_axiom(AxiomScheme::interdefinability());
    ProofScript::labek(proof, theory, true)
}

/// Classical excluded middle in the unlabeled calculus, cut-free.
fn classical_em() -> ProofScript {
    let proof = lec(
        LeciRule::OrCR,
        "|- a_i \\/c ~a_i",
        vec![lec(
            LeciRule::NegL,
            "~a_i, ~~a_i |- bot",
            vec![lec(LeciRule::Init, "~a_i, ~~a_i |- ~a_i", vec![])],
        )],
    );
    ProofScript::leci(proof, false)
}

/// Cut whose formula is a classical diamond, principal on both sides:
/// eliminating it follows the weight-reducing reduction.
fn cut_classical_diamond() -> ProofScript {
    let p1 = lab(
        LabekRule::DiaCR,
        "x R x, x: a_i, x: box ~a_i |- x: dia_c a_i",
        vec![lab(
            LabekRule::BoxL,
            "x: box ~a_i, x R x, x: a_i, x: box ~a_i |- x: bot",
            vec![lab(
                LabekRule::NegL,
                "x: ~a_i, x: box ~a_i, x R x, x: a_i, x: box ~a_i |- x: bot",
                vec![lab(
                    LabekRule::Init,
                    "x: ~a_i, x: box ~a_i, x R x, x: a_i, x: box ~a_i |- x: a_i",
                    vec![],
                )],
            )],
        )],
    );
    let p2 = lab_eigen(
        LabekRule::DiaCL,
        "x: dia_c a_i, x R x, x: a_i, x: box ~a_i |- x: bot",
        "y",
        vec![lab(
            LabekRule::BoxL,
            "x R y, y: a_i, x R x, x: a_i, x: box ~a_i |- x: bot",
            vec![lab(
                LabekRule::W,
                "y: ~a_i, x R y, y: a_i, x R x, x: a_i, x: box ~a_i |- x: bot",
                vec![lab(
                    LabekRule::NegL,
                    "y: ~a_i, x R y, y: a_i, x R x, x: a_i, x: box ~a_i |- y: bot",
                    vec![lab(
                        LabekRule::Init,
                        "y: ~a_i, x R y, y: a_i, x R x, x: a_i, x: box ~a_i |- y: a_i",
                        vec![],
                    )],
                )],
            )],
        )],
    );
    let proof = lab(
        LabekRule::Cut,
        "x R x, x: a_i, x: box ~a_i |- x: bot",
        vec![p1, p2],
    );
    ProofScript::labek(proof, Theory::plain(), true)
}

/// Cut on an implication, principal on both sides.
fn cut_implication() -> ProofScript {
    let p1 = lab(
        LabekRule::ImpIR,
        "x: a_i, x: b_i |- x: b_i ->i a_i",
        vec![lab(
            LabekRule::Init,
            "x: b_i, x: a_i, x: b_i |- x: a_i",
            vec![],
        )],
    );
    let p2 = lab(
        LabekRule::ImpIL,
        "x: b_i ->i a_i, x: a_i, x: b_i |- x: a_i",
        vec![
            lab(
                LabekRule::Init,
                "x: b_i ->i a_i, x: a_i, x: b_i |- x: b_i",
                vec![],
            ),
            lab(
                LabekRule::Init,
                "x: a_i, x: a_i, x: b_i |- x: a_i",
                vec![],
            ),
        ],
    );
    let proof = lab(LabekRule::Cut, "x: a_i, x: b_i |- x: a_i", vec![p1, p2]);
    ProofScript::labek(proof, Theory::plain(), true)
}

/// Cut on a conjunction, principal on both sides.
fn cut_conjunction() -> ProofScript {
    let p1 = lab(
        LabekRule::AndR,
        "x: a_i, x: b_i |- x: a_i /\\ b_i",
        vec![
            lab(LabekRule::Init, "x: a_i, x: b_i |- x: a_i", vec![]),
            lab(LabekRule::Init, "x: a_i, x: b_i |- x: b_i", vec![]),
        ],
    );
    let p2 = lab(
        LabekRule::AndL,
        "x: a_i /\\ b_i, x: a_i, x: b_i |- x: b_i /\\ a_i",
        vec![lab(
            LabekRule::AndR,
            "x: a_i, x: b_i, x: a_i, x: b_i |- x: b_i /\\ a_i",
            vec![
                lab(
                    LabekRule::Init,
                    "x: a_i, x: b_i, x: a_i, x: b_i |- x: b_i",
                    vec![],
                ),
                lab(
                    LabekRule::Init,
                    "x: a_i, x: b_i, x: a_i, x: b_i |- x: a_i",
                    vec![],
                ),
            ],
        )],
    );
    let proof = lab(
        LabekRule::Cut,
        "x: a_i, x: b_i |- x: b_i /\\ a_i",
        vec![p1, p2],
    );
    ProofScript::labek(proof, Theory::plain(), true)
}

/// Cut on a disjunction, principal on both sides.
fn cut_disjunction() -> ProofScript {
    let p1 = lab(
        LabekRule::OrIR1,
        "x: a_i |- x: a_i \\/i b_i",
        vec![lab(LabekRule::Init, "x: a_i |- x: a_i", vec![])],
    );
    let p2 = lab(
        LabekRule::OrIL,
        "x: a_i \\/i b_i, x: a_i |- x: b_i \\/i a_i",
        vec![
            lab(
                LabekRule::OrIR2,
                "x: a_i, x: a_i |- x: b_i \\/i a_i",
                vec![lab(LabekRule::Init, "x: a_i, x: a_i |- x: a_i", vec![])],
            ),
            lab(
                LabekRule::OrIR1,
                "x: b_i, x: a_i |- x: b_i \\/i a_i",
                vec![lab(LabekRule::Init, "x: b_i, x: a_i |- x: b_i", vec![])],
            ),
        ],
    );
    let proof = lab(LabekRule::Cut, "x: a_i |- x: b_i \\/i a_i", vec![p1, p2]);
    ProofScript::labek(proof, Theory::plain(), true)
}

/// Cut on a negation, principal on both sides.
fn cut_negation() -> ProofScript {
    let p1 = lab(
        LabekRule::NegR,
        "x: a_i ->i bot, x: a_i |- x: ~a_i",
        vec![lab(
            LabekRule::ImpIL,
            "x: a_i, x: a_i ->i bot, x: a_i |- x: bot",
            vec![
                lab(
                    LabekRule::Init,
                    "x: a_i, x: a_i ->i bot, x: a_i |- x: a_i",
                    vec![],
                ),
                lab(
                    LabekRule::Bot,
                    "x: bot, x: a_i, x: a_i |- x: bot",
                    vec![],
                ),
            ],
        )],
    );
    let p2 = lab(
        LabekRule::NegL,
        "x: ~a_i, x: a_i ->i bot, x: a_i |- x: bot",
        vec![lab(
            LabekRule::Init,
            "x: ~a_i, x: a_i ->i bot, x: a_i |- x: a_i",
            vec![],
        )],
    );
    let proof = lab(
        LabekRule::Cut,
        "x: a_i ->i bot, x: a_i |- x: bot",
        vec![p1, p2],
    );
    ProofScript::labek(proof, Theory::plain(), true)
}

pub fn all_scripts() -> Vec<(&'static str, ProofScript)> {
    vec![
        ("axiom_k", axiom_k()),
        ("axiom_k1", axiom_k1()),
        ("axiom_k2", axiom_k2()),
        ("axiom_k3", axiom_k3()),
        ("axiom_k4", axiom_k4()),
        ("refl_pair", refl_pair()),
        ("collapse", collapse()),
        ("classical_em", classical_em()),
        ("cut_classical_diamond", cut_classical_diamond()),
        ("cut_implication", cut_implication()),
        ("cut_conjunction", cut_conjunction()),
        ("cut_disjunction", cut_disjunction()),
        ("cut_negation", cut_negation()),
    ]
}

#[test]
fn scripts_check() {
    for (name, script) in all_scripts() {
        script
            .check(false)
            .unwrap_or_else(|e| panic!("script {name} rejected: {e}"));
    }
}

#[test]
fn committed_scripts_in_sync() {
    let dir = corpus_dir().join("scripts");
    if std::env::var("ECUMENE_REGEN").is_ok() {
        std::fs::create_dir_all(&dir).unwrap();
        for (name, script) in all_scripts() {
            std::fs::write(dir.join(format!("{name}.json")), script.to_json()).unwrap();
        }
        return;
    }
    for (name, script) in all_scripts() {
        let path = dir.join(format!("{name}.json"));
        let committed = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("missing {}: {e}; run with ECUMENE_REGEN=1", path.display()));
        assert_eq!(
            committed,
            script.to_json(),
            "{name}.json differs from its builder; run with ECUMENE_REGEN=1"
        );
    }
}

#[test]
fn scripts_round_trip_bit_exactly() {
    for (name, script) in all_scripts() {
        let json = script.to_json();
        let reloaded = ProofScript::from_json(&json)
            .unwrap_or_else(|e| panic!("script {name} does not reload: {e}"));
        assert_eq!(reloaded.to_json(), json, "round trip changed {name}");
    }
}
