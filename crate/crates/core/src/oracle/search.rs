//! Level-synchronous breadth-first search.
//!
//! Visited keys live in an insertion-ordered map, so each BFS level is a
//! contiguous index range and every entry stores the index of its parent.
//! Frontier expansion may run on the rayon pool; successors are merged back
//! in frontier order, so counts and witnesses do not depend on parallelism.

use std::hash::Hash;

use indexmap::map::Entry;
use indexmap::IndexMap;
use rayon::prelude::*;

use crate::model::Move;

use super::OracleError;

/// A state graph explored by [`bfs`].
pub(crate) trait Space: Sync {
    type State: Send;
    type Key: Hash + Eq + Clone + Send + Sync;

    fn start(&self) -> Self::State;
    fn encode(&self, state: &Self::State) -> Self::Key;
    fn decode(&self, key: &Self::Key) -> Self::State;
    fn successors(&self, state: &Self::State) -> Vec<(Move, Self::State)>;
    fn is_goal(&self, state: &Self::State) -> bool;
    /// Approximate heap bytes owned by a key.
    fn key_heap_bytes(&self, key: &Self::Key) -> usize;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub memory_budget_bytes: usize,
    pub parallel: bool,
}

impl SearchOptions {
    pub const DEFAULT_BUDGET: usize = 2 << 30;

    pub fn with_budget_mb(mb: usize) -> Self {
        Self {
            memory_budget_bytes: mb.saturating_mul(1 << 20),
            ..Self::default()
        }
    }
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            memory_budget_bytes: Self::DEFAULT_BUDGET,
            parallel: true,
        }
    }
}

pub(crate) struct BfsOutcome<K> {
    /// Keys from the start to a goal, inclusive.
    pub path: Vec<K>,
    pub explored: usize,
}

// Per-entry bookkeeping beyond the key itself: the stored hash and the
// hash-table index slot.
const ENTRY_OVERHEAD: usize = 24;

pub(crate) fn bfs<S: Space>(
    space: &S,
    options: &SearchOptions,
) -> Result<BfsOutcome<S::Key>, OracleError> {
    let start_state = space.start();
    let start = space.encode(&start_state);
    if space.is_goal(&start_state) {
        return Ok(BfsOutcome {
            path: vec![start],
            explored: 1,
        });
    }
    let entry_size = std::mem::size_of::<(S::Key, usize)>() + ENTRY_OVERHEAD;
    let mut key_heap = space.key_heap_bytes(&start);
    let mut visited: IndexMap<S::Key, usize> = IndexMap::new();
    visited.insert(start, usize::MAX);
    let over_budget = |visited: &IndexMap<S::Key, usize>, bytes: usize| {
        visited.capacity() * entry_size + bytes > options.memory_budget_bytes
    };
    let exceeded = |explored: usize| OracleError::MemoryBudgetExceeded {
        explored,
        budget_bytes: options.memory_budget_bytes,
    };

    let mut level = 0..1;
    loop {
        if level.is_empty() {
            return Err(OracleError::GoalUnreachable {
                explored: visited.len(),
            });
        }
        let expand = |i: usize| -> Vec<(S::Key, bool)> {
            let (key, _) = visited.get_index(i).expect("frontier index");
            let state = space.decode(key);
            space
                .successors(&state)
                .into_iter()
                .map(|(_, next)| {
                    let goal = space.is_goal(&next);
                    (space.encode(&next), goal)
                })
                .collect()
        };
        let expanded: Vec<Vec<(S::Key, bool)>> = if options.parallel {
            level.clone().into_par_iter().map(expand).collect()
        } else {
            level.clone().map(expand).collect()
        };

        let pending: usize = expanded
            .iter()
            .flatten()
            .map(|(key, _)| entry_size + space.key_heap_bytes(key))
            .sum();
        if over_budget(&visited, key_heap + pending) {
            return Err(exceeded(visited.len()));
        }

        let mut found = None;
        'merge: for (parent, successors) in level.clone().zip(expanded) {
            for (key, goal) in successors {
                let heap = space.key_heap_bytes(&key);
                if let Entry::Vacant(slot) = visited.entry(key) {
                    let index = slot.index();
                    slot.insert(parent);
                    key_heap += heap;
                    if over_budget(&visited, key_heap) {
                        return Err(exceeded(visited.len()));
                    }
                    if goal {
                        found = Some(index);
                        break 'merge;
                    }
                }
            }
        }
        if let Some(index) = found {
            let explored = visited.len();
            let mut path = Vec::new();
            let mut cursor = index;
            while cursor != usize::MAX {
                let (key, &parent) = visited.get_index(cursor).expect("parent index");
                path.push(key.clone());
                cursor = parent;
            }
            path.reverse();
            return Ok(BfsOutcome { path, explored });
        }
        level = level.end..visited.len();
    }
}

/// Turns a key path into concrete moves starting from the space's start state.
pub(crate) fn concretize<S: Space>(space: &S, path: &[S::Key]) -> Vec<Move> {
    let mut state = space.start();
    let mut moves = Vec::with_capacity(path.len().saturating_sub(1));
    for next in &path[1..] {
        let (mv, after) = space
            .successors(&state)
            .into_iter()
            .find(|(_, s)| space.encode(s) == *next)
            .expect("consecutive path keys are adjacent");
        moves.push(mv);
        state = after;
    }
    moves
}
