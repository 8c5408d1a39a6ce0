//! Ecumenical proof engines: a sequent calculus where classical and
//! intuitionistic connectives coexist, its labeled modal extension, the
//! translations connecting them, and finite birelational Kripke models as a
//! semantic oracle.

pub mod corpus;
pub mod formula;
pub mod labek;
pub mod leci;
pub mod outcome;
pub mod parser;
pub mod proof;
pub mod render;
pub mod semantics;
pub mod script;
pub mod sequent;
pub mod translate;

pub use formula::{Formula, Label, Var};
pub use labek::{AxiomScheme, Extension, Theory};
pub use outcome::{EngineError, Refutation, SearchBudget, SearchOutcome, UnknownReport};
pub use parser::{
    parse_formula, parse_labeled_sequent, parse_modal_formula, parse_sequent, ParseError,
    SourceSpan,
};
pub use proof::{Instantiation, LabekProof, LabekRule, LeciProof, LeciRule, ProofNode};
pub use render::{render, render_labeled_sequent, render_sequent};
pub use sequent::{LabeledSequent, Sequent};
