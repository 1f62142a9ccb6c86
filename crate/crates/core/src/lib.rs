//! Interval optimization with generalized-Hukuhara (gH) arithmetic.
//!
//! - [`interval`]: compact intervals, the gH-difference, the special product,
//!   dominance and the W scalarization map.
//! - [`ivf`]: interval-valued functions, numeric gH-derivatives and the
//!   subgradient/convexity checkers.
//! - [`solver`]: the gH-subgradient method with efficient/nondominated archives.
//! - [`lasso`]: interval-valued lasso regression built on the solver.
//! - [`worked_example`]: a small nonsmooth test problem with a known optimum.

pub mod interval;
pub mod ivf;
pub mod lasso;
pub mod solver;
pub mod worked_example;

pub use interval::{format_real, interval_dot, Dominance, Interval, IntervalError, IntervalVector, VecOp, Weights};
pub use ivf::{Ivf, IvfError, SubgradientCheckReport, SubgradientOracle};
pub use lasso::{LassoDataset, LassoError, LassoFit, LassoProblem, PredictionReport, TuningParameter};
pub use solver::{
    best_trajectory, solve, Archive, IterationTrace, SolverConfig, SolverError, StepSchedule,
    ZeroDirectionPolicy,
};
