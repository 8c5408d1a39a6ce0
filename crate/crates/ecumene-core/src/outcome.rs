//! Search budget and the three-valued outcome shared by both provers.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semantics::KripkeModel;

/// Rejected search input.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("sequent is outside the {0} fragment")]
    Fragment(&'static str),
    #[error("invalid search budget: all limits must be positive")]
    Budget,
}

/// Resource limits for backward proof search. All fields must be positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_depth: usize,
    pub max_instantiations_per_universal: usize,
    pub max_nodes: usize,
}

impl SearchBudget {
    pub fn new(max_depth: usize, max_instantiations_per_universal: usize, max_nodes: usize) -> Self {
        let b = SearchBudget {
            max_depth,
            max_instantiations_per_universal,
            max_nodes,
        };
        assert!(b.is_valid(), "budget fields must be positive");
        b
    }

    pub fn is_valid(&self) -> bool {
        self.max_depth > 0 && self.max_instantiations_per_universal > 0 && self.max_nodes > 0
    }

    pub fn with_depth(mut self, max_depth: usize) -> Self {
        self.max_depth = max_depth;
        self
    }
}

impl Default for SearchBudget {
    /// Defaults sized so the whole corpus runs in well under a minute.
    fn default() -> Self {
        SearchBudget {
            max_depth: 30,
            max_instantiations_per_universal: 2,
            max_nodes: 50_000,
        }
    }
}

/// Why a search gave up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnknownReport {
    /// True when the search space was exhausted with the loop check and no
    /// budget limit was hit: on the propositional fragment this certifies
    /// unprovability.
    pub saturated: bool,
    pub nodes_visited: usize,
}

/// A world in a countermodel refuting the goal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refutation {
    pub model: KripkeModel,
    pub world: String,
}

/// Outcome of bounded proof search. `Proved` carries a proof object that the
/// matching checker accepts; `Refuted` is only ever attached by the semantic
/// oracle, never by search itself.
#[derive(Debug, Clone)]
pub enum SearchOutcome<P> {
    Proved(P),
    Refuted(Refutation),
    Unknown(UnknownReport),
}

impl<P> SearchOutcome<P> {
    pub fn is_proved(&self) -> bool {
        matches!(self, SearchOutcome::Proved(_))
    }

    pub fn proof(&self) -> Option<&P> {
        match self {
            SearchOutcome::Proved(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_saturated_unknown(&self) -> bool {
        matches!(self, SearchOutcome::Unknown(r) if r.saturated)
    }
}

/// Depth limits for iterative-deepening search, ending exactly at `max`.
pub(crate) fn deepening_steps(max: usize) -> Vec<usize> {
    let mut steps: Vec<usize> = (1..).map(|i| i * 6).take_while(|d| *d < max).collect();
    steps.push(max);
    steps
}
