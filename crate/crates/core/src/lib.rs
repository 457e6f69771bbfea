//! Exact maximization of a monotone submodular function under a knapsack
//! constraint by depth-first branch and bound.
//!
//! The crate is organised bottom-up: [`oracle`] defines the set-function
//! contract and the benchmark objectives, [`bounds`] the node upper bounds,
//! [`greedy`] the primal heuristic, [`solver`] the search itself, and
//! [`instances`] / [`report`] the file formats around it.

pub mod bounds;
pub mod error;
pub mod greedy;
pub mod instances;
pub mod node;
pub mod oracle;
pub mod problem;
mod ranked;
pub mod report;
pub mod solver;

pub use error::{Result, SkpError};
pub use greedy::{greedy_add, GreedyMode, GreedyStep, GreedyTrace};
pub use node::SearchNode;
pub use oracle::{ElementId, SubmodularOracle};
pub use problem::{Instance, Universe};
pub use solver::{
    brute_force, solve, solve_with_observer, BoundKind, Branching, SolveReport, SolveStatus,
    SolverConfig,
};
