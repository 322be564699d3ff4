//! Canonical keys modulo old-place, new-place and leg permutations.
//!
//! A tree encodes as `[size, son count, sons...]` with the sons' encodings
//! sorted, an empty place as `[0]`. The key is the sorted old-place
//! encodings followed by the sorted new-place encodings. Decoding yields a
//! representative configuration: groups fill their places in ascending
//! order and sons fill legs from leg 0.

use crate::model::{Configuration, Position, StackTree};

use super::task::TaskSpec;

/// Opaque canonical encoding of a configuration under a task's symmetries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

fn encode_tree(tree: &StackTree, out: &mut Vec<u8>) {
    out.push(u8::try_from(tree.size()).expect("oracle sizes fit in a byte"));
    let mut sons: Vec<Vec<u8>> = tree
        .legs()
        .iter()
        .flatten()
        .map(|son| {
            let mut buf = Vec::new();
            encode_tree(son, &mut buf);
            buf
        })
        .collect();
    sons.sort_unstable();
    out.push(u8::try_from(sons.len()).expect("oracle arity fits in a byte"));
    for son in sons {
        out.extend_from_slice(&son);
    }
}

fn encode_place(tree: Option<&StackTree>) -> Vec<u8> {
    let mut buf = Vec::new();
    match tree {
        None => buf.push(0),
        Some(tree) => encode_tree(tree, &mut buf),
    }
    buf
}

fn encode_group(config: &Configuration, places: &[usize], out: &mut Vec<u8>) {
    let mut encodings: Vec<Vec<u8>> = places
        .iter()
        .map(|&p| encode_place(config.place_contents(p)))
        .collect();
    encodings.sort_unstable();
    for e in encodings {
        out.extend_from_slice(&e);
    }
}

/// Canonical key of `config` under the symmetries of `task`.
pub fn canonical_key(config: &Configuration, task: &TaskSpec) -> CanonicalKey {
    let mut out = Vec::with_capacity(2 * config.node_count() + task.params().places);
    encode_group(config, task.old_places(), &mut out);
    encode_group(config, task.new_places(), &mut out);
    CanonicalKey(out)
}

fn decode_tree(bytes: &[u8], cursor: &mut usize, at: Position, out: &mut Vec<(Position, u32)>) {
    let size = bytes[*cursor];
    let sons = bytes[*cursor + 1] as usize;
    *cursor += 2;
    out.push((at.clone(), u32::from(size)));
    for leg in 0..sons {
        decode_tree(bytes, cursor, at.child(leg), out);
    }
}

/// The representative configuration of a key.
pub(crate) fn representative(key: &CanonicalKey, task: &TaskSpec) -> Configuration {
    let bytes = key.as_bytes();
    let mut cursor = 0;
    let mut nodes = Vec::new();
    for &place in task.old_places().iter().chain(task.new_places()) {
        if bytes[cursor] == 0 {
            cursor += 1;
        } else {
            decode_tree(bytes, &mut cursor, Position::place(place), &mut nodes);
        }
    }
    debug_assert_eq!(cursor, bytes.len());
    Configuration::from_nodes(*task.params(), &nodes).expect("keys encode valid configurations")
}
