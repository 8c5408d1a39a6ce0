//! Pretty printer emitting the ASCII syntax with minimal parentheses.
//! `parse_formula(render(f))` returns a formula alpha-equivalent to `f`.

use std::fmt::Write;

use crate::formula::Formula;
use crate::sequent::{LabeledSequent, Sequent};

/// Binding strength of a context, loosest to tightest.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Imp,
    Or,
    And,
    Unary,
}

pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(&mut out, f, Level::Imp);
    out
}

fn write_formula(out: &mut String, f: &Formula, ctx: Level) {
    let level = level_of(f);
    let parens = level < ctx;
    if parens {
        out.push('(');
    }
    match f {
        Formula::IntAtom(n, args) => write_atom(out, n, "_i", args),
        Formula::ClAtom(n, args) => write_atom(out, n, "_c", args),
        Formula::Bottom => out.push_str("bot"),
        Formula::Rel(x, y) => {
            let _ = write!(out, "R({x},{y})");
        }
        Formula::Neg(a) => {
            out.push('~');
            write_formula(out, a, Level::Unary);
        }
        Formula::Box(a) => {
            out.push_str("box ");
            write_formula(out, a, Level::Unary);
        }
        Formula::DiaI(a) => {
            out.push_str("dia_i ");
            write_formula(out, a, Level::Unary);
        }
        Formula::DiaC(a) => {
            out.push_str("dia_c ");
            write_formula(out, a, Level::Unary);
        }
        Formula::Forall(x, a) => {
            let _ = write!(out, "forall {x}. ");
            write_formula(out, a, Level::Unary);
        }
        Formula::ExistsI(x, a) => {
            let _ = write!(out, "exists_i {x}. ");
            write_formula(out, a, Level::Unary);
        }
        Formula::ExistsC(x, a) => {
            let _ = write!(out, "exists_c {x}. ");
            write_formula(out, a, Level::Unary);
        }
        Formula::And(l, r) => {
            // Left-associative: the left child may sit at the same level.
            write_formula(out, l, Level::And);
            out.push_str(" /\\ ");
            write_formula(out, r, Level::Unary);
        }
        Formula::OrI(l, r) => {
            write_formula(out, l, Level::Or);
            out.push_str(" \\/i ");
            write_formula(out, r, Level::And);
        }
        Formula::OrC(l, r) => {
            write_formula(out, l, Level::Or);
            out.push_str(" \\/c ");
            write_formula(out, r, Level::And);
        }
        Formula::ImpI(l, r) => {
            // Right-associative: the right child may sit at the same level.
            write_formula(out, l, Level::Or);
            out.push_str(" ->i ");
            write_formula(out, r, Level::Imp);
        }
        Formula::ImpC(l, r) => {
            write_formula(out, l, Level::Or);
            out.push_str(" ->c ");
            write_formula(out, r, Level::Imp);
        }
    }
    if parens {
        out.push(')');
    }
}

fn write_atom(out: &mut String, name: &str, suffix: &str, args: &[crate::formula::Var]) {
    out.push_str(name);
    out.push_str(suffix);
    if !args.is_empty() {
        out.push('(');
        for (i, v) in args.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(v.as_str());
        }
        out.push(')');
    }
}

fn level_of(f: &Formula) -> Level {
    match f {
        Formula::ImpI(..) | Formula::ImpC(..) => Level::Imp,
        Formula::OrI(..) | Formula::OrC(..) => Level::Or,
        Formula::And(..) => Level::And,
        _ => Level::Unary,
    }
}

pub fn render_sequent(s: &Sequent) -> String {
    let mut out = String::new();
    for (i, f) in s.antecedent.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&render(f));
    }
    if !s.antecedent.is_empty() {
        out.push(' ');
    }
    out.push_str("|- ");
    out.push_str(&render(&s.succedent));
    out
}

pub fn render_labeled_sequent(s: &LabeledSequent) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (x, y) in &s.rel_atoms {
        parts.push(format!("{x} R {y}"));
    }
    for (x, f) in &s.antecedent {
        parts.push(format!("{x}: {}", render(f)));
    }
    let mut out = parts.join(", ");
    if !out.is_empty() {
        out.push(' ');
    }
    let _ = write!(out, "|- {}: {}", s.succedent.0, render(&s.succedent.1));
    out
}

impl std::fmt::Display for Formula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&render(self))
    }
}

impl std::fmt::Display for Sequent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&render_sequent(self))
    }
}

impl std::fmt::Display for LabeledSequent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&render_labeled_sequent(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{Label, Var};
    use crate::parser::{parse_formula, parse_labeled_sequent, parse_sequent};

    #[test]
    fn renders_expected_text() {
        let a = Formula::iprop("a");
        assert_eq!(render(&Formula::boxed(a.clone())), "box a_i");
        assert_eq!(
            render(&Formula::or_c(a.clone(), Formula::neg(a.clone()))),
            "a_i \\/c ~a_i"
        );
    }

    #[test]
    fn right_assoc_imp_needs_no_parens() {
        let f = parse_formula("a_i ->i (b_i ->i c_i)").unwrap();
        assert_eq!(render(&f), "a_i ->i b_i ->i c_i");
        let g = parse_formula("(a_i ->i b_i) ->i c_i").unwrap();
        assert_eq!(render(&g), "(a_i ->i b_i) ->i c_i");
    }

    #[test]
    fn sequent_round_trip() {
        for src in [
            "a_i, b_c |- a_i /\\ b_c",
            "|- forall x. p_i(x) ->i ~exists_c y. ~p_i(y)",
        ] {
            let s = parse_sequent(src).unwrap();
            assert_eq!(parse_sequent(&render_sequent(&s)).unwrap(), s);
        }
    }

    #[test]
    fn labeled_round_trip() {
        let s = parse_labeled_sequent("x R y, x: box a_i |- y: a_i").unwrap();
        assert_eq!(render_labeled_sequent(&s), "x R y, x: box a_i |- y: a_i");
        assert_eq!(
            parse_labeled_sequent(&render_labeled_sequent(&s)).unwrap(),
            s
        );
    }

    #[test]
    fn quantifier_binds_tightly() {
        let x = Var::new("x");
        let f = Formula::imp_i(
            Formula::forall(x.clone(), Formula::iatom("p", vec![x.clone()])),
            Formula::iprop("q"),
        );
        let txt = render(&f);
        assert_eq!(txt, "forall x. p_i(x) ->i q_i");
        assert_eq!(parse_formula(&txt).unwrap(), f);
    }

    #[test]
    fn display_uses_renderer() {
        let s = LabeledSequent::goal(Label::new("x"), Formula::iprop("a"));
        assert_eq!(s.to_string(), "|- x: a_i");
    }
}
