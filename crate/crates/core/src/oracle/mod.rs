//! Brute-force shortest move sequences for relocation tasks.
//!
//! [`shortest`] searches configurations modulo permutations of the old
//! places, of the new places, and of the legs under every node.
//! [`shortest_unreduced`] searches raw configurations and exists to check
//! that quotient. [`shortest_restricted`] plays the game in which a node may
//! only be put on one of its original ancestors or on a bare place.

mod canon;
mod search;
mod task;

use std::collections::HashMap;

use thiserror::Error;

pub use canon::{canonical_key, CanonicalKey};
pub use search::SearchOptions;
pub use task::{TaskError, TaskSpec};

use crate::model::{Configuration, Move, OriginLabels, Position, StackTree};
use crate::trace::Trace;
use search::Space;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("memory budget of {budget_bytes} bytes exceeded after {explored} states")]
    MemoryBudgetExceeded {
        explored: usize,
        budget_bytes: usize,
    },
    #[error("goal unreachable after exploring {explored} states")]
    GoalUnreachable { explored: usize },
}

/// Minimal move count with one witness of that length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub count: usize,
    pub witness: Trace,
    /// Distinct keys stored when the goal was found.
    pub explored: usize,
}

/// Shortest solution of `task`, searching canonical keys.
pub fn shortest(task: &TaskSpec, options: &SearchOptions) -> Result<SearchResult, OracleError> {
    run(&ReducedSpace { task }, task, options)
}

/// Shortest solution of `task` over raw configurations, no symmetry used.
pub fn shortest_unreduced(
    task: &TaskSpec,
    options: &SearchOptions,
) -> Result<SearchResult, OracleError> {
    run(&RawSpace { task }, task, options)
}

/// Shortest solution of `task` when every node must be put on an original
/// ancestor or a bare place.
pub fn shortest_restricted(
    task: &TaskSpec,
    options: &SearchOptions,
) -> Result<SearchResult, OracleError> {
    run(&RestrictedSpace::new(task), task, options)
}

fn run<S: Space>(
    space: &S,
    task: &TaskSpec,
    options: &SearchOptions,
) -> Result<SearchResult, OracleError> {
    let outcome = search::bfs(space, options)?;
    let moves = search::concretize(space, &outcome.path);
    let mut last = task.initial_configuration();
    for mv in &moves {
        last.play(mv).expect("witness moves are legal");
    }
    let final_layout = last.layout().expect("goal configurations hold full trees");
    Ok(SearchResult {
        count: moves.len(),
        witness: Trace::new(*task.params(), task.initial_layout(), moves).with_final(final_layout),
        explored: outcome.explored,
    })
}

fn plain_successors(config: &Configuration) -> Vec<(Move, Configuration)> {
    config
        .legal_moves()
        .into_iter()
        .map(|mv| {
            let next = config.apply_move(&mv).expect("legal move");
            (mv, next)
        })
        .collect()
}

fn configuration_heap_bytes(config: &Configuration) -> usize {
    let slot = std::mem::size_of::<Option<StackTree>>();
    let params = config.params();
    params.places * slot + config.node_count() * params.m * slot
}

struct ReducedSpace<'a> {
    task: &'a TaskSpec,
}

impl Space for ReducedSpace<'_> {
    type State = Configuration;
    type Key = CanonicalKey;

    fn start(&self) -> Configuration {
        self.task.initial_configuration()
    }

    fn encode(&self, state: &Configuration) -> CanonicalKey {
        canonical_key(state, self.task)
    }

    fn decode(&self, key: &CanonicalKey) -> Configuration {
        canon::representative(key, self.task)
    }

    fn successors(&self, state: &Configuration) -> Vec<(Move, Configuration)> {
        plain_successors(state)
    }

    fn is_goal(&self, state: &Configuration) -> bool {
        self.task.is_goal(state)
    }

    fn key_heap_bytes(&self, key: &CanonicalKey) -> usize {
        key.as_bytes().len()
    }
}

struct RawSpace<'a> {
    task: &'a TaskSpec,
}

impl Space for RawSpace<'_> {
    type State = Configuration;
    type Key = Configuration;

    fn start(&self) -> Configuration {
        self.task.initial_configuration()
    }

    fn encode(&self, state: &Configuration) -> Configuration {
        state.clone()
    }

    fn decode(&self, key: &Configuration) -> Configuration {
        key.clone()
    }

    fn successors(&self, state: &Configuration) -> Vec<(Move, Configuration)> {
        plain_successors(state)
    }

    fn is_goal(&self, state: &Configuration) -> bool {
        self.task.is_goal(state)
    }

    fn key_heap_bytes(&self, key: &Configuration) -> usize {
        configuration_heap_bytes(key)
    }
}

struct LabeledState {
    config: Configuration,
    labels: OriginLabels,
}

/// Labeled game. Keys list every slot in leg order with the node's origin
/// index; only the new places are sorted, since labels pin the old ones.
struct RestrictedSpace<'a> {
    task: &'a TaskSpec,
    origins: Vec<(Position, u32)>,
    index_of: HashMap<Position, u16>,
}

impl<'a> RestrictedSpace<'a> {
    fn new(task: &'a TaskSpec) -> Self {
        let origins = task.initial_configuration().nodes();
        let index_of = origins
            .iter()
            .enumerate()
            .map(|(i, (p, _))| (p.clone(), u16::try_from(i).expect("node count fits u16")))
            .collect();
        Self {
            task,
            origins,
            index_of,
        }
    }

    fn encode_slot(&self, state: &LabeledState, at: &Position, out: &mut Vec<u8>) {
        let Some(tree) = state.config.tree_at(at) else {
            out.push(0);
            return;
        };
        let origin = state.labels.origin(at).expect("every node is labeled");
        out.push(1);
        out.extend_from_slice(&self.index_of[origin].to_be_bytes());
        for leg in 0..tree.legs().len() {
            self.encode_slot(state, &at.child(leg), out);
        }
    }

    fn decode_slot(
        &self,
        bytes: &[u8],
        cursor: &mut usize,
        at: Position,
        nodes: &mut Vec<(Position, u32)>,
        labels: &mut Vec<(Position, Position)>,
    ) {
        let tag = bytes[*cursor];
        *cursor += 1;
        if tag == 0 {
            return;
        }
        let index = u16::from_be_bytes([bytes[*cursor], bytes[*cursor + 1]]) as usize;
        *cursor += 2;
        let (origin, size) = &self.origins[index];
        nodes.push((at.clone(), *size));
        labels.push((at.clone(), origin.clone()));
        for leg in 0..self.task.params().m {
            self.decode_slot(bytes, cursor, at.child(leg), nodes, labels);
        }
    }
}

impl Space for RestrictedSpace<'_> {
    type State = LabeledState;
    type Key = Vec<u8>;

    fn start(&self) -> LabeledState {
        let config = self.task.initial_configuration();
        let labels = OriginLabels::from_configuration(&config);
        LabeledState { config, labels }
    }

    fn encode(&self, state: &LabeledState) -> Vec<u8> {
        let mut out = Vec::new();
        for &place in self.task.old_places() {
            self.encode_slot(state, &Position::place(place), &mut out);
        }
        let mut fresh: Vec<Vec<u8>> = self
            .task
            .new_places()
            .iter()
            .map(|&place| {
                let mut buf = Vec::new();
                self.encode_slot(state, &Position::place(place), &mut buf);
                buf
            })
            .collect();
        fresh.sort_unstable();
        out.extend(fresh.into_iter().flatten());
        out
    }

    fn decode(&self, key: &Vec<u8>) -> LabeledState {
        let mut cursor = 0;
        let mut nodes = Vec::new();
        let mut labels = Vec::new();
        for &place in self.task.old_places().iter().chain(self.task.new_places()) {
            self.decode_slot(
                key,
                &mut cursor,
                Position::place(place),
                &mut nodes,
                &mut labels,
            );
        }
        LabeledState {
            config: Configuration::from_nodes(*self.task.params(), &nodes)
                .expect("keys encode valid configurations"),
            labels: OriginLabels::from_pairs(labels),
        }
    }

    fn successors(&self, state: &LabeledState) -> Vec<(Move, LabeledState)> {
        state
            .config
            .legal_moves()
            .into_iter()
            .filter(|mv| state.labels.respects_ancestry(mv))
            .map(|mv| {
                let config = state.config.apply_move(&mv).expect("legal move");
                let mut labels = state.labels.clone();
                labels.apply(&mv);
                (mv, LabeledState { config, labels })
            })
            .collect()
    }

    fn is_goal(&self, state: &LabeledState) -> bool {
        self.task.is_goal(&state.config)
    }

    fn key_heap_bytes(&self, key: &Vec<u8>) -> usize {
        key.len()
    }
}
