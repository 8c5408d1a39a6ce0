//! Per-module invariants: consequence-versus-implication agreement,
//! classical-succedent collapse, eager-versus-unrestricted search,
//! cut-admissibility at the unlabeled level, conformance of the shared
//! fragment with the standard intuitionistic labeled rules, theory
//! monotonicity, and double-negation provability agreement.

use std::collections::BTreeSet;
use std::path::PathBuf;

use ecumene_core::corpus::{load_corpus, EntryKind, System};
use ecumene_core::formula::Formula;
use ecumene_core::labek::{check_labek_proof, prove_labek, Extension, Theory};
use ecumene_core::leci::{check_leci_proof, prove, prove_prop, prove_prop_unrestricted};
use ecumene_core::outcome::{SearchBudget, SearchOutcome};
use ecumene_core::parser::{parse_labeled_sequent, parse_sequent};
use ecumene_core::proof::{LabekProof, LabekRule, LeciProof, LeciRule, ProofNode};
use ecumene_core::translate::ik_translate_sequent;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join("corpus")
}

fn proved_leci(src: &str) -> bool {
    let seq = parse_sequent(src).unwrap();
    prove(&seq, &SearchBudget::default()).unwrap().is_proved()
}

/// Consequence reduces to implication: `Γ |- B` is provable exactly when
/// `|- /\Γ ->i B` is.
#[test]
fn consequence_matches_implication_form() {
    let cases = [
        "a_i, a_i ->i b_i |- b_i",
        "a_i |- a_i \\/i b_i",
        "~a_i, a_i |- bot",
        "a_i ->c b_c, a_i |- b_c",
        "a_i \\/i b_i |- a_i",
        "~~a_i |- a_i",
        "a_i ->c b_i, a_i |- b_i",
    ];
    for src in cases {
        let seq = parse_sequent(src).unwrap();
        let conjunction = seq
            .antecedent
            .iter()
            .cloned()
            .reduce(Formula::and)
            .expect("nonempty antecedent");
        let implication = parse_sequent("|- a_i").unwrap().with_succedent(Formula::imp_i(
            conjunction,
            seq.succedent.clone(),
        ));
        let direct = prove(&seq, &SearchBudget::default()).unwrap().is_proved();
        let folded = prove(&implication, &SearchBudget::default())
            .unwrap()
            .is_proved();
        assert_eq!(direct, folded, "disagreement on {src}");
    }
}

/// On classical succedents the two implications prove the same things; on
/// an intuitionistic succedent they genuinely differ.
#[test]
fn classical_succedent_collapses_implications() {
    let instances = [
        ("a_i", "b_c"),
        ("a_i /\\ (a_i ->c b_c)", "b_c"),
        ("~~b_c", "b_c"),
        ("a_i", "b_c \\/c ~b_c"),
        ("c_i", "b_c /\\ c_c"),
    ];
    for (gamma, classical) in instances {
        let imp_c = format!("|- ({gamma}) ->c ({classical})");
        let imp_i = format!("|- ({gamma}) ->i ({classical})");
        assert_eq!(
            proved_leci(&imp_c),
            proved_leci(&imp_i),
            "classical succedent `{classical}` must not distinguish the implications"
        );
    }
    // Negative control: an intuitionistic succedent separates them.
    assert!(proved_leci("|- ~~b_i ->c b_i"));
    assert!(!proved_leci("|- ~~b_i ->i b_i"));
}

/// Eager invertible application never loses provability: outcomes agree
/// with the search that treats every rule as a backtrack point.
#[test]
fn eager_matches_unrestricted_search() {
    let budget = SearchBudget {
        max_depth: 14,
        max_instantiations_per_universal: 2,
        max_nodes: 200_000,
    };
    let mut compared = 0;
    for entry in load_corpus(&corpus_dir()).unwrap() {
        if entry.system != System::Leci || entry.kind == EntryKind::ProofScript {
            continue;
        }
        let seq = parse_sequent(entry.sequent.as_ref().unwrap()).unwrap();
        if !seq.is_propositional() {
            continue;
        }
        let eager = prove_prop(&seq, &budget).unwrap().is_proved();
        let unrestricted = prove_prop_unrestricted(&seq, &budget)
            .unwrap()
            .is_proved();
        assert_eq!(eager, unrestricted, "strategies disagree on {}", entry.id);
        compared += 1;
    }
    assert!(compared >= 10, "expected a propositional corpus to compare");
}

fn lec(rule: LeciRule, conclusion: &str, premises: Vec<LeciProof>) -> LeciProof {
    ProofNode::new(rule, parse_sequent(conclusion).unwrap(), premises)
}

/// Unlabeled cut admissibility at desk scale: proofs with cut check only
/// under the flag, and their conclusions re-prove cut-free.
#[test]
fn leci_cut_provability_agrees() {
    let conjunction_cut = lec(
        LeciRule::Cut,
        "a_i, b_i |- b_i /\\ a_i",
        vec![
            lec(
                LeciRule::AndR,
                "a_i, b_i |- a_i /\\ b_i",
                vec![
                    lec(LeciRule::Init, "a_i, b_i |- a_i", vec![]),
                    lec(LeciRule::Init, "a_i, b_i |- b_i", vec![]),
                ],
            ),
            lec(
                LeciRule::AndL,
                "a_i /\\ b_i, a_i, b_i |- b_i /\\ a_i",
                vec![lec(
                    LeciRule::AndR,
                    "a_i, b_i, a_i, b_i |- b_i /\\ a_i",
                    vec![
                        lec(LeciRule::Init, "a_i, b_i, a_i, b_i |- b_i", vec![]),
                        lec(LeciRule::Init, "a_i, b_i, a_i, b_i |- a_i", vec![]),
                    ],
                )],
            ),
        ],
    );
    let negation_cut = lec(
        LeciRule::Cut,
        "a_i ->i bot, a_i |- bot",
        vec![
            lec(
                LeciRule::NegR,
                "a_i ->i bot, a_i |- ~a_i",
                vec![lec(
                    LeciRule::ImpIL,
                    "a_i, a_i ->i bot, a_i |- bot",
                    vec![
                        lec(LeciRule::Init, "a_i, a_i ->i bot, a_i |- a_i", vec![]),
                        lec(LeciRule::BotL, "bot, a_i, a_i |- bot", vec![]),
                    ],
                )],
            ),
            lec(
                LeciRule::NegL,
                "~a_i, a_i ->i bot, a_i |- bot",
                vec![lec(
                    LeciRule::Init,
                    "~a_i, a_i ->i bot, a_i |- a_i",
                    vec![],
                )],
            ),
        ],
    );
    for (name, proof) in [("conjunction", conjunction_cut), ("negation", negation_cut)] {
        check_leci_proof(&proof, true).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(
            check_leci_proof(&proof, false).is_err(),
            "{name}: cut must be gated"
        );
        match prove(&proof.conclusion, &SearchBudget::default()).unwrap() {
            SearchOutcome::Proved(p) => {
                assert!(p.cut_free());
                check_leci_proof(&p, false).unwrap();
            }
            _ => panic!("{name}: conclusion must re-prove cut-free"),
        }
    }
}

fn lab(rule: LabekRule, conclusion: &str, premises: Vec<LabekProof>) -> LabekProof {
    ProofNode::new(rule, parse_labeled_sequent(conclusion).unwrap(), premises)
}

/// Restricted to the intuitionistic and neutral operators, the applicable
/// rules coincide with the standard intuitionistic labeled system: every
/// rule of the hand-encoded table is accepted on its schema instance, and
/// proofs over the fragment use only table rules.
#[test]
fn shared_fragment_matches_standard_labeled_rules() {
    // One checkable instance per rule of the table, premise shapes written
    // from the standard system.
    let table_instances: Vec<(&str, LabekProof)> = vec![
        ("init", lab(LabekRule::Init, "x: a_i |- x: a_i", vec![])),
        ("bot", lab(LabekRule::Bot, "x: bot |- z: c_i", vec![])),
        (
            "and_l",
            lab(
                LabekRule::AndL,
                "x: a_i /\\ b_i |- x: a_i",
                vec![lab(LabekRule::Init, "x: a_i, x: b_i |- x: a_i", vec![])],
            ),
        ),
        (
            "and_r",
            lab(
                LabekRule::AndR,
                "x: a_i, x: b_i |- x: a_i /\\ b_i",
                vec![
                    lab(LabekRule::Init, "x: a_i, x: b_i |- x: a_i", vec![]),
                    lab(LabekRule::Init, "x: a_i, x: b_i |- x: b_i", vec![]),
                ],
            ),
        ),
        (
            "or_i_l",
            lab(
                LabekRule::OrIL,
                "x: a_i \\/i a_i |- x: a_i",
                vec![
                    lab(LabekRule::Init, "x: a_i |- x: a_i", vec![]),
                    lab(LabekRule::Init, "x: a_i |- x: a_i", vec![]),
                ],
            ),
        ),
        (
            "or_i_r1",
            lab(
                LabekRule::OrIR1,
                "x: a_i |- x: a_i \\/i b_i",
                vec![lab(LabekRule::Init, "x: a_i |- x: a_i", vec![])],
            ),
        ),
        (
            "or_i_r2",
            lab(
                LabekRule::OrIR2,
                "x: b_i |- x: a_i \\/i b_i",
                vec![lab(LabekRule::Init, "x: b_i |- x: b_i", vec![])],
            ),
        ),
        (
            "imp_i_l",
            lab(
                LabekRule::ImpIL,
                "x: a_i ->i b_i, x: a_i |- x: b_i",
                vec![
                    lab(
                        LabekRule::Init,
                        "x: a_i ->i b_i, x: a_i |- x: a_i",
                        vec![],
                    ),
                    lab(LabekRule::Init, "x: b_i, x: a_i |- x: b_i", vec![]),
                ],
            ),
        ),
        (
            "imp_i_r",
            lab(
                LabekRule::ImpIR,
                "|- x: a_i ->i a_i",
                vec![lab(LabekRule::Init, "x: a_i |- x: a_i", vec![])],
            ),
        ),
        (
            "neg_l",
            lab(
                LabekRule::NegL,
                "x: ~a_i, x: a_i |- x: bot",
                vec![lab(LabekRule::Init, "x: ~a_i, x: a_i |- x: a_i", vec![])],
            ),
        ),
        (
            "neg_r",
            lab(
                LabekRule::NegR,
                "x: bot |- x: ~a_i",
                vec![lab(LabekRule::Bot, "x: a_i, x: bot |- x: bot", vec![])],
            ),
        ),
        (
            "box_l",
            lab(
                LabekRule::BoxL,
                "x R y, x: box a_i |- y: a_i",
                vec![lab(
                    LabekRule::Init,
                    "x R y, y: a_i, x: box a_i |- y: a_i",
                    vec![],
                )],
            ),
        ),
        (
            "box_r",
            lab(
                LabekRule::BoxR,
                "x: box a_i |- x: box a_i",
                vec![lab(
                    LabekRule::BoxL,
                    "x R y, x: box a_i |- y: a_i",
                    vec![lab(
                        LabekRule::Init,
                        "x R y, y: a_i, x: box a_i |- y: a_i",
                        vec![],
                    )],
                )],
            ),
        ),
        (
            "dia_i_l",
            lab(
                LabekRule::DiaIL,
                "x: dia_i a_i |- x: dia_i a_i",
                vec![lab(
                    LabekRule::DiaIR,
                    "x R y, y: a_i |- x: dia_i a_i",
                    vec![lab(LabekRule::Init, "x R y, y: a_i |- y: a_i", vec![])],
                )],
            ),
        ),
        (
            "dia_i_r",
            lab(
                LabekRule::DiaIR,
                "x R y, y: a_i |- x: dia_i a_i",
                vec![lab(LabekRule::Init, "x R y, y: a_i |- y: a_i", vec![])],
            ),
        ),
    ];
    for (name, proof) in &table_instances {
        check_labek_proof(proof, &Theory::plain(), false)
            .unwrap_or_else(|e| panic!("table rule {name} rejected: {e}"));
    }

    let table_rules: BTreeSet<LabekRule> = table_instances
        .iter()
        .flat_map(|(_, proof)| collect_rules(proof))
        .collect();

    // Proof traces over the shared fragment use table rules only.
    let budget = SearchBudget::default();
    for src in [
        "|- x: box (a_i ->i b_i) ->i (box a_i ->i box b_i)",
        "|- x: box (a_i ->i b_i) ->i (dia_i a_i ->i dia_i b_i)",
        "|- x: dia_i (a_i \\/i b_i) ->i (dia_i a_i \\/i dia_i b_i)",
        "|- x: (dia_i a_i ->i box b_i) ->i box (a_i ->i b_i)",
        "|- x: dia_i bot ->i bot",
        "x R x |- x: (box a_i ->i a_i) /\\ (a_i ->i dia_i a_i)",
        "x: box (a_i /\\ b_i) |- x: box b_i",
        "x: ~a_i |- x: a_i ->i bot",
    ] {
        let seq = parse_labeled_sequent(src).unwrap();
        let SearchOutcome::Proved(p) = prove_labek(&seq, &Theory::plain(), &budget).unwrap()
        else {
            panic!("{src} should be provable");
        };
        for rule in collect_rules(&p) {
            assert!(
                table_rules.contains(&rule),
                "{src}: rule {rule} is outside the shared-fragment table"
            );
        }
    }
}

fn collect_rules(p: &LabekProof) -> BTreeSet<LabekRule> {
    let mut out = BTreeSet::new();
    fn go(p: &LabekProof, out: &mut BTreeSet<LabekRule>) {
        out.insert(p.rule);
        for q in &p.premises {
            go(q, out);
        }
    }
    go(p, &mut out);
    out
}

/// Proof translation must identify principals by the premises, not by
/// shape alone: same-label implications sharing an antecedent, and
/// same-label diamonds, are told apart.
#[test]
fn proof_translation_disambiguates_principals() {
    use ecumene_core::translate::{proof_translate, seq_translate};
    let budget = SearchBudget::default();
    for src in [
        "x: a_i ->i b_i, x: a_i ->i c_i, x: a_i |- x: c_i",
        "x: a_i ->i b_i, x: a_i ->i c_i, x: a_i |- x: b_i /\\ c_i",
        "x: dia_i a_i, x: dia_i b_i |- x: dia_i (b_i \\/i b_i)",
        "x: a_i ->c bot, x: a_i ->c c_i, x: a_i |- x: bot",
    ] {
        let seq = parse_labeled_sequent(src).unwrap();
        let SearchOutcome::Proved(p) = prove_labek(&seq, &Theory::plain(), &budget).unwrap()
        else {
            panic!("{src} should be provable");
        };
        let translated =
            proof_translate(&p).unwrap_or_else(|e| panic!("{src}: translation failed: {e}"));
        check_leci_proof(&translated, false)
            .unwrap_or_else(|e| panic!("{src}: translated proof rejected: {e}"));
        assert!(translated
            .conclusion
            .multiset_eq(&seq_translate(&seq).unwrap()));
    }
}

/// The proof translation expands each modal rule to its fixed unlabeled
/// fragment; the trace records those expansions.
#[test]
fn proof_translation_trace_matches_the_table() {
    use ecumene_core::translate::proof_translate_traced;
    let budget = SearchBudget::default();
    let seq = parse_labeled_sequent("|- x: box (a_i ->i b_i) ->i (box a_i ->i box b_i)").unwrap();
    let SearchOutcome::Proved(p) = prove_labek(&seq, &Theory::plain(), &budget).unwrap() else {
        panic!("provable");
    };
    let (_, trace) = proof_translate_traced(&p).unwrap();
    let fragment_of = |rule: LabekRule| -> Vec<LeciRule> {
        trace
            .iter()
            .find(|r| r.rule == rule)
            .unwrap_or_else(|| panic!("no {rule} node in the proof"))
            .fragment
            .clone()
    };
    assert_eq!(
        fragment_of(LabekRule::BoxL),
        vec![LeciRule::ForallL, LeciRule::ImpIL, LeciRule::Init],
        "box-left expands to forall-left and implication-left with an init-closed guard"
    );
    assert_eq!(
        fragment_of(LabekRule::BoxR),
        vec![LeciRule::ForallR, LeciRule::ImpIR]
    );
    assert_eq!(fragment_of(LabekRule::Init), vec![LeciRule::Init]);

    // The classical diamond rows.
    let dual = parse_labeled_sequent("|- x: dia_c a_i <->i ~box ~a_i").unwrap();
    let SearchOutcome::Proved(p) = prove_labek(&dual, &Theory::plain(), &budget).unwrap() else {
        panic!("provable");
    };
    let (_, trace) = proof_translate_traced(&p).unwrap();
    let dia_c_r = trace
        .iter()
        .find(|r| r.rule == LabekRule::DiaCR)
        .expect("a dia_c_r node");
    assert_eq!(dia_c_r.fragment, vec![LeciRule::ExistsCR]);
    let dia_c_l = trace
        .iter()
        .find(|r| r.rule == LabekRule::DiaCL)
        .expect("a dia_c_l node");
    assert_eq!(dia_c_l.fragment, vec![LeciRule::ExistsCL, LeciRule::AndL]);
}

/// Anything proved under a theory stays proved under any larger theory.
#[test]
fn theory_extension_is_monotone() {
    let budget = SearchBudget::default();
    let theories = [
        Theory::plain(),
        Theory::with_extensions([Extension::T]),
        Theory::with_extensions([Extension::T, Extension::Four]),
        Theory::with_extensions([
            Extension::T,
            Extension::Four,
            Extension::Five,
            Extension::B,
        ]),
    ];
    for entry in load_corpus(&corpus_dir()).unwrap() {
        if entry.system != System::Labek
            || entry.kind != EntryKind::Theorem
            || !entry.axioms.is_empty()
        {
            continue;
        }
        let base = entry.theory().unwrap();
        let seq = parse_labeled_sequent(entry.sequent.as_ref().unwrap()).unwrap();
        for th in &theories {
            if !base.extensions.iter().all(|e| th.allows(*e)) {
                continue;
            }
            let out = prove_labek(&seq, th, &budget).unwrap();
            assert!(
                out.is_proved(),
                "{} lost under extensions {:?}",
                entry.id,
                th.extensions
            );
        }
    }
}

/// Provability agrees with the double-negation image of a sequent, in both
/// directions, on the corpus.
#[test]
fn double_negation_image_preserves_provability() {
    let budget = SearchBudget::default();
    for entry in load_corpus(&corpus_dir()).unwrap() {
        if entry.system != System::Labek
            || entry.kind == EntryKind::ProofScript
            || !entry.axioms.is_empty()
        {
            continue;
        }
        let seq = parse_labeled_sequent(entry.sequent.as_ref().unwrap()).unwrap();
        let image = ik_translate_sequent(&seq).unwrap();
        let th = entry.theory().unwrap();
        let budget = entry
            .budget
            .as_ref()
            .map(|b| b.apply(&budget))
            .unwrap_or(budget);
        let direct = prove_labek(&seq, &th, &budget).unwrap().is_proved();
        let translated = prove_labek(&image, &th, &budget).unwrap().is_proved();
        assert_eq!(
            direct, translated,
            "{}: provability changed under the double-negation image",
            entry.id
        );
    }
}

/// All formulas over one atom up to the given connective depth, deduplicated.
fn enumerate_formulas(depth: usize) -> Vec<Formula> {
    if depth == 0 {
        return vec![Formula::iprop("a"), Formula::cprop("a"), Formula::Bottom];
    }
    let smaller = enumerate_formulas(depth - 1);
    let mut out = smaller.clone();
    for f in &smaller {
        out.push(Formula::neg(f.clone()));
    }
    for f in &smaller {
        for g in &smaller {
            out.push(Formula::and(f.clone(), g.clone()));
            out.push(Formula::or_i(f.clone(), g.clone()));
            out.push(Formula::or_c(f.clone(), g.clone()));
            out.push(Formula::imp_i(f.clone(), g.clone()));
            out.push(Formula::imp_c(f.clone(), g.clone()));
        }
    }
    out.sort();
    out.dedup();
    out
}

fn decision_procedure_partitions(formulas: &[Formula]) {
    use ecumene_core::semantics::find_countermodel;
    use ecumene_core::sequent::Sequent;
    let budget = SearchBudget::default();
    for f in formulas {
        match prove_prop(&Sequent::goal(f.clone()), &budget).unwrap() {
            SearchOutcome::Proved(p) => {
                check_leci_proof(&p, false).unwrap();
            }
            SearchOutcome::Unknown(r) => {
                assert!(r.saturated, "propositional search must decide `{f}`");
                let found = find_countermodel(f, 3, &[]).unwrap().is_some()
                    || find_countermodel(f, 4, &[]).unwrap().is_some();
                assert!(found, "saturated failure without a countermodel: `{f}`");
            }
            _ => unreachable!(),
        }
    }
}

/// Sampled slice of the exhaustive depth-2 space: every outcome is either a
/// checkable proof or a saturated failure with a small countermodel.
#[test]
fn decision_procedure_agrees_with_semantics_sampled() {
    let all = enumerate_formulas(2);
    let sampled: Vec<Formula> = all.into_iter().step_by(37).collect();
    assert!(sampled.len() > 300);
    decision_procedure_partitions(&sampled);
}

/// The full exhaustive sweep (about 13k formulas, minutes of work).
#[test]
#[ignore = "exhaustive sweep; run with `cargo test -- --ignored`"]
fn decision_procedure_agrees_with_semantics_exhaustive() {
    decision_procedure_partitions(&enumerate_formulas(2));
}
