//! Exhaustive and randomized oracles.
//!
//! These searches are independent of the closed-form constructions: they
//! only know the correlation definitions and produce witnesses that are
//! checked again by [`crate::verify`] before being returned.

pub mod dlx;
mod gdd;
mod oracles;
pub mod packing;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use gdd::gdd_search;
pub use oracles::{equi_search, optimal_search, tight_search};

/// Node and wall-clock limits shared by the search engines.
#[derive(Debug, Clone)]
pub struct Budget {
    max_nodes: u64,
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_nodes: u64::MAX,
            deadline: None,
        }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes,
            deadline: None,
        }
    }

    pub fn from_config(config: &SearchConfig) -> Self {
        Budget {
            max_nodes: config.node_budget,
            deadline: Instant::now().checked_add(config.time_budget),
        }
    }

    pub fn exceeded(&self, nodes: u64) -> bool {
        if nodes > self.max_nodes {
            return true;
        }
        nodes % 1024 == 0 && self.deadline.is_some_and(|d| Instant::now() > d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Exhaustive,
    BranchAndBound,
    ExactCover,
    HillClimbRestart,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub time_budget: Duration,
    pub node_budget: u64,
    pub strategy: Strategy,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            time_budget: Duration::from_secs(60),
            node_budget: 1_000_000_000,
            strategy: Strategy::Exhaustive,
            seed: 0,
        }
    }
}

impl SearchConfig {
    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_time_budget(mut self, budget: Duration) -> Self {
        self.time_budget = budget;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome<T> {
    /// Best witness found. For existence searches `None` means no witness.
    pub best: Option<T>,
    pub best_size: usize,
    /// The search completed: the size is optimal (or, for existence
    /// searches, the answer is decided).
    pub proven_optimal: bool,
    pub nodes: u64,
    pub elapsed: Duration,
}
