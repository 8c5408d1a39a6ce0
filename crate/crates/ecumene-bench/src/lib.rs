//! Shared inputs for the benchmark suite.

use ecumene_core::labek::{AxiomScheme, Extension, Theory};
use ecumene_core::parser::{parse_labeled_sequent, parse_sequent};
use ecumene_core::sequent::{LabeledSequent, Sequent};

pub fn propositional_goals() -> Vec<Sequent> {
    [
        "|- (a_i \\/c b_i) <->i ~(~a_i /\\ ~b_i)",
        "|- a_i \\/c ~a_i",
        "|- ~~b_c ->i b_c",
        "|- (a_i /\\ (a_i ->c b_c)) ->i b_c",
        "|- a_i \\/i ~a_i",
    ]
    .iter()
    .map(|s| parse_sequent(s).unwrap())
    .collect()
}

pub fn first_order_goals() -> Vec<Sequent> {
    [
        "|- (exists_c x. p_i(x)) <->i ~(forall x. ~p_i(x))",
        "|- ~(exists_c x. ~p_c(x)) ->i forall x. p_c(x)",
    ]
    .iter()
    .map(|s| parse_sequent(s).unwrap())
    .collect()
}

pub fn modal_goals() -> Vec<LabeledSequent> {
    [
        "|- x: box (a_i ->i b_i) ->i (box a_i ->i box b_i)",
        "|- x: dia_c a_i <->i ~box ~a_i",
        "|- x: box a_c <->i ~dia_c ~a_c",
    ]
    .iter()
    .map(|s| parse_labeled_sequent(s).unwrap())
    .collect()
}

pub fn collapse_goal() -> (LabeledSequent, Theory) {
    let seq = parse_labeled_sequent("|- x: a_i \\/i ~a_i").unwrap();
    let th =
        Theory::with_extensions([Extension::T]).with_axiom(AxiomScheme::interdefinability());
    (seq, th)
}
