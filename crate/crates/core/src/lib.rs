//! Trees of Hanoi: full m-ary trees moved between places, one leaf at a time,
//! never standing on a node that is not larger.
//!
//! * [`model`]: positions, configurations and move legality.
//! * [`solvers`]: recursive solvers producing explicit move lists.
//! * [`counting`]: exact move counts, including the closed form in Q(√D).
//! * [`oracle`]: breadth-first shortest solutions for small heights.
//! * [`verifier`]: trace replay, ancestor condition, largest-node moves.
//! * [`trace`]: the JSON-lines trace format.
//! * [`cli`]: the `hanoi-trees` command line.

pub mod cli;
pub mod counting;
pub mod model;
pub mod oracle;
pub mod solvers;
pub mod trace;
pub mod verifier;

pub use counting::{count_f_closed, count_fgh, count_t, CountTable, FghCounts, QuadraticValue};
pub use model::{Configuration, GameParams, Move, MoveError, Position, StackTree, TreeLayout};
pub use oracle::{shortest, shortest_restricted, shortest_unreduced, SearchOptions, TaskSpec};
pub use trace::Trace;
pub use verifier::{check_ancestor, check_trace, Verdict};
