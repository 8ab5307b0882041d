//! Exact big-integer evaluation of the bound functions and recursions:
//! the table-driven strength-threshold base functions, the
//! strengthening-loop dimension and protection functions C and h, the
//! epsilon/k parameters, the Lambda towers and the top-level lambda
//! recursion, plus the closed-form scalar bounds.
//!
//! Evaluations run under an explicit step budget. The lambda recursion for
//! d >= 2 is astronomically large by construction; the evaluator reports
//! which recursion level exhausted the budget instead of approximating.

mod atable;
mod expr;
mod lambda;
mod scalar_bounds;

pub use atable::ATable;
pub use expr::{eval_b_eta, eval_c, eval_h, BoundBudget, BoundError, BoundFunction};
pub use lambda::{epsilon_sanity, eval_epsilon_k, eval_lambda, LambdaOutcome};
pub use scalar_bounds::{scalar_bound, ScalarBoundQuery};
