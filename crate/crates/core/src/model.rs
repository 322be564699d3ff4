//! Game state: positions, stacking trees, configurations and the move rules.
//!
//! A node may only be moved while it is a leaf, and only to a free slot where
//! it is again a leaf: either a bare place or an empty leg of a strictly
//! larger node. Legs are addressed by index, so `1RL` names the left leg of
//! the right son of whatever stands on place 1.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

/// Arity, height and number of places of a game.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GameParams {
    /// Number of legs per node.
    pub m: usize,
    /// Height of the full trees in play.
    pub n: u32,
    /// Number of places, numbered from 1.
    pub places: usize,
}

impl GameParams {
    pub fn new(m: usize, n: u32, places: usize) -> Result<Self, ModelError> {
        if m == 0 {
            return Err(ModelError::InvalidParams("arity must be at least 1".into()));
        }
        if places == 0 {
            return Err(ModelError::InvalidParams(
                "at least one place is required".into(),
            ));
        }
        if n > 64 {
            return Err(ModelError::InvalidParams(format!(
                "height {n} is too large"
            )));
        }
        Ok(Self { m, n, places })
    }

    /// The standard single-tree game with `m + 2` places.
    pub fn standard(m: usize, n: u32) -> Result<Self, ModelError> {
        Self::new(m, n, m + 2)
    }

    /// Longest path a node position can have.
    pub fn max_depth(&self) -> usize {
        self.n.saturating_sub(1) as usize
    }

    pub fn check_position(&self, pos: &Position) -> Result<(), ModelError> {
        if pos.place == 0 || pos.place > self.places {
            return Err(ModelError::PlaceOutOfRange {
                place: pos.place,
                places: self.places,
            });
        }
        if let Some(&leg) = pos.path.iter().find(|&&leg| leg >= self.m) {
            return Err(ModelError::LegOutOfRange { leg, m: self.m });
        }
        if pos.path.len() > self.max_depth() {
            return Err(ModelError::PathTooLong {
                len: pos.path.len(),
                max: self.max_depth(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid game parameters: {0}")]
    InvalidParams(String),
    #[error("malformed position {0:?}")]
    MalformedPosition(String),
    #[error("place {place} out of range 1..={places}")]
    PlaceOutOfRange { place: usize, places: usize },
    #[error("leg {leg} out of range 0..{m}")]
    LegOutOfRange { leg: usize, m: usize },
    #[error("path of length {len} exceeds the maximum depth {max}")]
    PathTooLong { len: usize, max: usize },
    #[error("place {0} listed twice")]
    DuplicatePlace(usize),
    #[error("tree height {height} exceeds game height {n}")]
    HeightTooLarge { height: u32, n: u32 },
    #[error("cannot put a node of size {size} at {position}: {reason}")]
    BadNode {
        position: String,
        size: u32,
        reason: &'static str,
    },
}

/// A place plus a root-to-node path of leg indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    place: usize,
    path: Vec<usize>,
}

impl Position {
    pub fn new(place: usize, path: Vec<usize>) -> Self {
        Self { place, path }
    }

    /// A bare place.
    pub fn place(place: usize) -> Self {
        Self {
            place,
            path: Vec::new(),
        }
    }

    pub fn place_index(&self) -> usize {
        self.place
    }

    pub fn path(&self) -> &[usize] {
        &self.path
    }

    pub fn depth(&self) -> usize {
        self.path.len()
    }

    pub fn is_place(&self) -> bool {
        self.path.is_empty()
    }

    pub fn child(&self, leg: usize) -> Self {
        let mut path = Vec::with_capacity(self.path.len() + 1);
        path.extend_from_slice(&self.path);
        path.push(leg);
        Self {
            place: self.place,
            path,
        }
    }

    /// Position of the father slot, `None` for a bare place.
    pub fn parent(&self) -> Option<Self> {
        if self.path.is_empty() {
            return None;
        }
        Some(Self {
            place: self.place,
            path: self.path[..self.path.len() - 1].to_vec(),
        })
    }

    pub fn is_prefix_of(&self, other: &Position) -> bool {
        self.place == other.place && other.path.starts_with(&self.path)
    }

    pub fn is_proper_prefix_of(&self, other: &Position) -> bool {
        self.is_prefix_of(other) && self.path.len() < other.path.len()
    }

    /// Two positions overlap when one lies inside the subtree slot of the other.
    pub fn overlaps(&self, other: &Position) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// Parses the textual position syntax, validating it against `params`.
    pub fn parse(text: &str, params: &GameParams) -> Result<Self, ModelError> {
        let pos = Self::parse_unchecked(text, params.m)?;
        params.check_position(&pos)?;
        Ok(pos)
    }

    /// Parses without range checks beyond syntax.
    pub fn parse_unchecked(text: &str, m: usize) -> Result<Self, ModelError> {
        let malformed = || ModelError::MalformedPosition(text.to_string());
        let digits_end = text
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(text.len());
        if digits_end == 0 {
            return Err(malformed());
        }
        let place: usize = text[..digits_end].parse().map_err(|_| malformed())?;
        let rest = &text[digits_end..];
        let path = if rest.is_empty() {
            Vec::new()
        } else if let Some(dotted) = rest.strip_prefix('.') {
            dotted
                .split('.')
                .map(|leg| {
                    if leg.is_empty() || !leg.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(malformed());
                    }
                    leg.parse::<usize>().map_err(|_| malformed())
                })
                .collect::<Result<Vec<_>, _>>()?
        } else if m == 2 {
            rest.chars()
                .map(|c| match c {
                    'L' => Ok(0),
                    'R' => Ok(1),
                    _ => Err(malformed()),
                })
                .collect::<Result<Vec<_>, _>>()?
        } else {
            return Err(malformed());
        };
        Ok(Self { place, path })
    }

    /// Canonical rendering: `L`/`R` letters for binary games, dotted leg
    /// indices otherwise.
    pub fn format(&self, m: usize) -> String {
        let mut out = self.place.to_string();
        if m == 2 {
            out.extend(
                self.path
                    .iter()
                    .map(|&leg| if leg == 0 { 'L' } else { 'R' }),
            );
        } else {
            for leg in &self.path {
                out.push('.');
                out.push_str(&leg.to_string());
            }
        }
        out
    }
}

/// Dotted form, which parses back under any arity.
impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.place)?;
        for leg in &self.path {
            write!(f, ".{leg}")?;
        }
        Ok(())
    }
}

/// A node together with whatever stands on its legs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StackTree {
    size: u32,
    legs: Vec<Option<StackTree>>,
}

impl StackTree {
    pub fn leaf(size: u32, m: usize) -> Self {
        Self {
            size,
            legs: vec![None; m],
        }
    }

    /// Full m-ary tree whose root has size `height`.
    pub fn full(height: u32, m: usize) -> Self {
        assert!(height > 0, "a full tree needs height at least 1");
        let mut tree = Self::leaf(height, m);
        if height > 1 {
            let child = Self::full(height - 1, m);
            for leg in tree.legs.iter_mut() {
                *leg = Some(child.clone());
            }
        }
        tree
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn legs(&self) -> &[Option<StackTree>] {
        &self.legs
    }

    pub fn is_leaf(&self) -> bool {
        self.legs.iter().all(Option::is_none)
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .legs
            .iter()
            .flatten()
            .map(StackTree::node_count)
            .sum::<usize>()
    }

    /// Height of the full tree this is, if it is one.
    pub fn full_height(&self) -> Option<u32> {
        if self.is_leaf() {
            return (self.size == 1).then_some(1);
        }
        for leg in &self.legs {
            match leg {
                Some(child) if child.full_height() == Some(self.size - 1) => {}
                _ => return None,
            }
        }
        Some(self.size)
    }

    fn get(&self, path: &[usize]) -> Option<&StackTree> {
        match path.split_first() {
            None => Some(self),
            Some((&leg, rest)) => self.legs.get(leg)?.as_ref()?.get(rest),
        }
    }

    fn slot_mut(&mut self, path: &[usize]) -> Option<&mut Option<StackTree>> {
        let (&leg, rest) = path.split_first()?;
        let slot = self.legs.get_mut(leg)?;
        if rest.is_empty() {
            Some(slot)
        } else {
            slot.as_mut()?.slot_mut(rest)
        }
    }

    fn collect(&self, at: &Position, out: &mut Vec<(Position, u32)>) {
        out.push((at.clone(), self.size));
        for (leg, child) in self.legs.iter().enumerate() {
            if let Some(child) = child {
                child.collect(&at.child(leg), out);
            }
        }
    }

    fn render(&self, indent: usize, label: &str, out: &mut String) {
        out.push_str(&format!("{:indent$}{label}: {}\n", "", self.size));
        for (leg, child) in self.legs.iter().enumerate() {
            if let Some(child) = child {
                child.render(indent + 2, &format!("leg {leg}"), out);
            }
        }
    }
}

/// Relocation of a single leaf.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub from: Position,
    pub to: Position,
}

impl Move {
    pub fn new(from: Position, to: Position) -> Self {
        Self { from, to }
    }

    pub fn reversed(&self) -> Self {
        Self {
            from: self.to.clone(),
            to: self.from.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("invalid position: {0}")]
    InvalidPosition(ModelError),
    #[error("no node at the source position")]
    SourceEmpty,
    #[error("the node at the source position is not a leaf")]
    SourceNotLeaf,
    #[error("the destination position is occupied")]
    DestinationOccupied,
    #[error("the destination has no father node")]
    DestinationParentMissing,
    #[error("a node of size {moved} cannot stand on a node of size {father}")]
    SizeViolation { moved: u32, father: u32 },
}

impl MoveError {
    /// Stable machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            MoveError::InvalidPosition(_) => "InvalidPosition",
            MoveError::SourceEmpty => "SourceEmpty",
            MoveError::SourceNotLeaf => "SourceNotLeaf",
            MoveError::DestinationOccupied => "DestinationOccupied",
            MoveError::DestinationParentMissing => "DestinationParentMissing",
            MoveError::SizeViolation { .. } => "SizeViolation",
        }
    }
}

/// Full tree of the given height standing on a place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeLayout {
    pub place: usize,
    pub height: u32,
}

impl TreeLayout {
    pub fn new(place: usize, height: u32) -> Self {
        Self { place, height }
    }
}

/// The contents of every place.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    params: GameParams,
    places: Vec<Option<StackTree>>,
}

impl Configuration {
    pub fn empty(params: GameParams) -> Self {
        Self {
            params,
            places: vec![None; params.places],
        }
    }

    /// Full trees on the listed places, everything else empty. Zero-height
    /// entries leave their place empty.
    pub fn initial(params: GameParams, layout: &[TreeLayout]) -> Result<Self, ModelError> {
        let mut config = Self::empty(params);
        let mut seen = vec![false; params.places];
        for tree in layout {
            params.check_position(&Position::place(tree.place))?;
            if std::mem::replace(&mut seen[tree.place - 1], true) {
                return Err(ModelError::DuplicatePlace(tree.place));
            }
            if tree.height > params.n {
                return Err(ModelError::HeightTooLarge {
                    height: tree.height,
                    n: params.n,
                });
            }
            if tree.height > 0 {
                config.places[tree.place - 1] = Some(StackTree::full(tree.height, params.m));
            }
        }
        Ok(config)
    }

    /// Builds a configuration from explicit `(position, size)` pairs. Fathers
    /// must be listed before their sons.
    pub fn from_nodes(params: GameParams, nodes: &[(Position, u32)]) -> Result<Self, ModelError> {
        let mut config = Self::empty(params);
        for (pos, size) in nodes {
            params.check_position(pos)?;
            let bad = |reason| ModelError::BadNode {
                position: pos.format(params.m),
                size: *size,
                reason,
            };
            if *size == 0 {
                return Err(bad("sizes are positive"));
            }
            if let Some(parent) = pos.parent() {
                match config.node_at(&parent) {
                    None => return Err(bad("no father node")),
                    Some(father) if father <= *size => return Err(bad("father is not larger")),
                    Some(_) => {}
                }
            }
            let slot = config.slot_mut(pos).ok_or_else(|| bad("no father node"))?;
            if slot.is_some() {
                return Err(bad("position already occupied"));
            }
            *slot = Some(StackTree::leaf(*size, params.m));
        }
        Ok(config)
    }

    pub fn params(&self) -> &GameParams {
        &self.params
    }

    pub fn place_contents(&self, place: usize) -> Option<&StackTree> {
        self.places.get(place.checked_sub(1)?)?.as_ref()
    }

    pub fn tree_at(&self, pos: &Position) -> Option<&StackTree> {
        self.place_contents(pos.place)?.get(&pos.path)
    }

    pub fn node_at(&self, pos: &Position) -> Option<u32> {
        self.tree_at(pos).map(StackTree::size)
    }

    fn slot_mut(&mut self, pos: &Position) -> Option<&mut Option<StackTree>> {
        let place = self.places.get_mut(pos.place.checked_sub(1)?)?;
        if pos.path.is_empty() {
            Some(place)
        } else {
            place.as_mut()?.slot_mut(&pos.path)
        }
    }

    /// Every node with its position, in preorder by place.
    pub fn nodes(&self) -> Vec<(Position, u32)> {
        let mut out = Vec::new();
        for (i, tree) in self.places.iter().enumerate() {
            if let Some(tree) = tree {
                tree.collect(&Position::place(i + 1), &mut out);
            }
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.places
            .iter()
            .flatten()
            .map(StackTree::node_count)
            .sum()
    }

    /// Number of nodes of each size.
    pub fn size_multiset(&self) -> BTreeMap<u32, usize> {
        let mut sizes = BTreeMap::new();
        for (_, size) in self.nodes() {
            *sizes.entry(size).or_insert(0) += 1;
        }
        sizes
    }

    /// The configuration as a list of full trees on places, if every
    /// occupied place holds a full tree.
    pub fn layout(&self) -> Option<Vec<TreeLayout>> {
        self.places
            .iter()
            .enumerate()
            .filter_map(|(i, tree)| tree.as_ref().map(|t| (i + 1, t)))
            .map(|(place, tree)| {
                tree.full_height()
                    .map(|height| TreeLayout { place, height })
            })
            .collect()
    }

    /// All legal moves, sorted by the textual form of `(from, to)`.
    pub fn legal_moves(&self) -> Vec<Move> {
        let m = self.params.m;
        let nodes = self.nodes();
        let mut moves = Vec::new();
        for (from, size) in &nodes {
            if !self.tree_at(from).is_some_and(StackTree::is_leaf) {
                continue;
            }
            for (i, tree) in self.places.iter().enumerate() {
                if tree.is_none() {
                    moves.push(Move::new(from.clone(), Position::place(i + 1)));
                }
            }
            for (father, father_size) in &nodes {
                if father_size <= size || father == from {
                    continue;
                }
                let Some(tree) = self.tree_at(father) else {
                    continue;
                };
                for (leg, slot) in tree.legs.iter().enumerate() {
                    if slot.is_none() {
                        moves.push(Move::new(from.clone(), father.child(leg)));
                    }
                }
            }
        }
        let mut keyed: Vec<_> = moves
            .into_iter()
            .map(|mv| ((mv.from.format(m), mv.to.format(m)), mv))
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.into_iter().map(|(_, mv)| mv).collect()
    }

    /// Applies a move in place. On error the configuration is unchanged.
    pub fn play(&mut self, mv: &Move) -> Result<(), MoveError> {
        self.params
            .check_position(&mv.from)
            .and_then(|_| self.params.check_position(&mv.to))
            .map_err(MoveError::InvalidPosition)?;
        let moved = match self.tree_at(&mv.from) {
            None => return Err(MoveError::SourceEmpty),
            Some(tree) if !tree.is_leaf() => return Err(MoveError::SourceNotLeaf),
            Some(tree) => tree.size,
        };
        if self.tree_at(&mv.to).is_some() {
            return Err(MoveError::DestinationOccupied);
        }
        if let Some(father) = mv.to.parent() {
            // The source itself cannot serve as the new father.
            if mv.from == father {
                return Err(MoveError::DestinationParentMissing);
            }
            match self.node_at(&father) {
                None => return Err(MoveError::DestinationParentMissing),
                Some(father) if father <= moved => {
                    return Err(MoveError::SizeViolation { moved, father })
                }
                Some(_) => {}
            }
        }
        let node = self
            .slot_mut(&mv.from)
            .and_then(Option::take)
            .expect("source checked above");
        *self.slot_mut(&mv.to).expect("destination checked above") = Some(node);
        Ok(())
    }

    /// Returns the configuration after `mv`.
    pub fn apply_move(&self, mv: &Move) -> Result<Configuration, MoveError> {
        let mut next = self.clone();
        next.play(mv)?;
        Ok(next)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, tree) in self.places.iter().enumerate() {
            match tree {
                None => out.push_str(&format!("place {}: empty\n", i + 1)),
                Some(tree) => tree.render(0, &format!("place {}", i + 1), &mut out),
            }
        }
        f.write_str(out.trim_end())
    }
}

/// Original position of every node, carried through moves.
///
/// The base game treats equal-size nodes as interchangeable; the ancestor
/// condition needs to know where each node started.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OriginLabels {
    current_to_origin: HashMap<Position, Position>,
}

impl OriginLabels {
    /// Labels every node of `config` with its current position.
    pub fn from_configuration(config: &Configuration) -> Self {
        Self {
            current_to_origin: config
                .nodes()
                .into_iter()
                .map(|(p, _)| (p.clone(), p))
                .collect(),
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Position, Position)>) -> Self {
        Self {
            current_to_origin: pairs.into_iter().collect(),
        }
    }

    pub fn origin(&self, current: &Position) -> Option<&Position> {
        self.current_to_origin.get(current)
    }

    /// Whether `mv` puts its node on an original ancestor or a bare place.
    /// Positions without a label never qualify as fathers.
    pub fn respects_ancestry(&self, mv: &Move) -> bool {
        let Some(father) = mv.to.parent() else {
            return true;
        };
        match (self.origin(&mv.from), self.origin(&father)) {
            (Some(node), Some(father)) => father.is_proper_prefix_of(node),
            _ => false,
        }
    }

    /// Follows a move that has already been checked for legality.
    pub fn apply(&mut self, mv: &Move) {
        if let Some(origin) = self.current_to_origin.remove(&mv.from) {
            self.current_to_origin.insert(mv.to.clone(), origin);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Position, &Position)> {
        self.current_to_origin.iter()
    }
}

pub fn parse_position(text: &str, params: &GameParams) -> Result<Position, ModelError> {
    Position::parse(text, params)
}

pub fn format_position(pos: &Position, params: &GameParams) -> String {
    pos.format(params.m)
}

pub fn initial_configuration(
    params: GameParams,
    layout: &[TreeLayout],
) -> Result<Configuration, ModelError> {
    Configuration::initial(params, layout)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn binary(n: u32) -> GameParams {
        GameParams::standard(2, n).unwrap()
    }

    fn pos(text: &str, params: &GameParams) -> Position {
        Position::parse(text, params).unwrap()
    }

    fn height_three() -> Configuration {
        Configuration::initial(binary(3), &[TreeLayout::new(1, 3)]).unwrap()
    }

    fn mixed_sizes() -> Configuration {
        let p = binary(3);
        let nodes = [
            ("1", 3),
            ("1R", 2),
            ("1RL", 1),
            ("2", 2),
            ("2L", 1),
            ("2R", 1),
            ("4", 1),
        ];
        let nodes: Vec<_> = nodes.iter().map(|&(t, s)| (pos(t, &p), s)).collect();
        Configuration::from_nodes(p, &nodes).unwrap()
    }

    fn mv(from: &str, to: &str, params: &GameParams) -> Move {
        Move::new(pos(from, params), pos(to, params))
    }

    #[test]
    fn parses_letter_and_dotted_syntax() {
        let p = binary(3);
        assert_eq!(pos("1RL", &p), Position::new(1, vec![1, 0]));
        assert_eq!(pos("3", &p), Position::place(3));
        assert_eq!(pos("1.1.0", &p), Position::new(1, vec![1, 0]));
        let ternary = GameParams::standard(3, 3).unwrap();
        assert_eq!(pos("2.0.2", &ternary), Position::new(2, vec![0, 2]));
    }

    #[test]
    fn rejects_bad_positions() {
        let p = binary(3);
        assert!(matches!(
            Position::parse("1LX", &p),
            Err(ModelError::MalformedPosition(_))
        ));
        for bad in ["", "L", "1.", "1..0", "1.a", "1L.0", "-1"] {
            assert!(
                matches!(
                    Position::parse(bad, &p),
                    Err(ModelError::MalformedPosition(_))
                ),
                "{bad}"
            );
        }
        assert!(matches!(
            Position::parse("5", &p),
            Err(ModelError::PlaceOutOfRange { .. })
        ));
        assert!(matches!(
            Position::parse("0", &p),
            Err(ModelError::PlaceOutOfRange { .. })
        ));
        assert!(matches!(
            Position::parse("1.2", &p),
            Err(ModelError::LegOutOfRange { leg: 2, m: 2 })
        ));
        assert!(matches!(
            Position::parse("1LLL", &p),
            Err(ModelError::PathTooLong { len: 3, max: 2 })
        ));
        let ternary = GameParams::standard(3, 3).unwrap();
        assert!(matches!(
            Position::parse("1L", &ternary),
            Err(ModelError::MalformedPosition(_))
        ));
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(Position::new(1, vec![1, 0]).format(2), "1RL");
        assert_eq!(Position::place(4).format(2), "4");
        assert_eq!(Position::new(2, vec![0, 2]).format(3), "2.0.2");
        assert_eq!(Position::new(2, vec![0, 0]).format(1), "2.0.0");
    }

    #[test]
    fn height_three_layout() {
        let c = height_three();
        let p = *c.params();
        let texts: Vec<_> = c.nodes().iter().map(|(q, _)| q.format(2)).collect();
        assert_eq!(texts, ["1", "1L", "1LL", "1LR", "1R", "1RL", "1RR"]);
        assert_eq!(c.node_at(&pos("1", &p)), Some(3));
        assert_eq!(c.node_at(&pos("2", &p)), None);
        assert_eq!(c.node_at(&pos("1RL", &p)), Some(1));
        assert_eq!(c.layout(), Some(vec![TreeLayout::new(1, 3)]));
    }

    #[test]
    fn empty_and_two_tree_layouts() {
        let empty = Configuration::initial(binary(0), &[]).unwrap();
        assert_eq!(empty.node_count(), 0);
        assert!(empty.legal_moves().is_empty());

        let p = GameParams::new(2, 2, 5).unwrap();
        let c = Configuration::initial(p, &[TreeLayout::new(1, 2), TreeLayout::new(2, 2)]).unwrap();
        assert_eq!(c.node_count(), 6);
        assert!(c.place_contents(3).is_none());
    }

    #[test]
    fn initial_rejects_bad_layouts() {
        let p = binary(2);
        assert_eq!(
            Configuration::initial(p, &[TreeLayout::new(1, 2), TreeLayout::new(1, 1)]),
            Err(ModelError::DuplicatePlace(1))
        );
        assert!(matches!(
            Configuration::initial(p, &[TreeLayout::new(5, 1)]),
            Err(ModelError::PlaceOutOfRange { .. })
        ));
        assert!(matches!(
            Configuration::initial(p, &[TreeLayout::new(1, 3)]),
            Err(ModelError::HeightTooLarge { .. })
        ));
    }

    #[test]
    fn lone_node_has_three_moves() {
        let c = Configuration::initial(binary(1), &[TreeLayout::new(1, 1)]).unwrap();
        let moves: Vec<_> = c
            .legal_moves()
            .iter()
            .map(|m| (m.from.format(2), m.to.format(2)))
            .collect();
        let expected: Vec<_> = ["2", "3", "4"]
            .iter()
            .map(|t| ("1".to_string(), t.to_string()))
            .collect();
        assert_eq!(moves, expected);
    }

    #[test]
    fn mixed_sizes_sequence() {
        let a = mixed_sizes();
        let p = *a.params();
        let first = mv("1RL", "1L", &p);
        assert!(a.legal_moves().contains(&first));
        let b = a
            .apply_move(&first)
            .unwrap()
            .apply_move(&mv("1R", "3", &p))
            .unwrap();
        let expected = Configuration::from_nodes(
            p,
            &[
                (pos("1", &p), 3),
                (pos("1L", &p), 1),
                (pos("2", &p), 2),
                (pos("2L", &p), 1),
                (pos("2R", &p), 1),
                (pos("3", &p), 2),
                (pos("4", &p), 1),
            ],
        )
        .unwrap();
        assert_eq!(b, expected);
        assert_eq!(a.size_multiset(), b.size_multiset());
    }

    #[test]
    fn root_with_sons_cannot_move() {
        let c = height_three();
        let p = *c.params();
        assert!(c.legal_moves().iter().all(|m| m.from != Position::place(1)));
        assert_eq!(
            c.apply_move(&mv("1", "2", &p)),
            Err(MoveError::SourceNotLeaf)
        );
    }

    #[test]
    fn move_error_kinds() {
        let a = mixed_sizes();
        let p = *a.params();
        assert_eq!(
            a.apply_move(&mv("3", "1L", &p)),
            Err(MoveError::SourceEmpty)
        );
        assert_eq!(
            a.apply_move(&mv("4", "2L", &p)),
            Err(MoveError::DestinationOccupied)
        );
        assert_eq!(
            a.apply_move(&mv("4", "4", &p)),
            Err(MoveError::DestinationOccupied)
        );
        assert_eq!(
            a.apply_move(&mv("4", "3L", &p)),
            Err(MoveError::DestinationParentMissing)
        );
        assert_eq!(
            a.apply_move(&Move::new(
                pos("1RL", &p),
                Position::parse_unchecked("1RLL", 2).unwrap()
            )),
            Err(MoveError::InvalidPosition(ModelError::PathTooLong {
                len: 3,
                max: 2
            }))
        );
        // Equal sizes never stack.
        assert_eq!(
            a.apply_move(&mv("2L", "4L", &p)),
            Err(MoveError::SizeViolation {
                moved: 1,
                father: 1
            })
        );
        assert_eq!(
            a.apply_move(&mv("4", "1RL", &p)),
            Err(MoveError::DestinationOccupied)
        );
    }

    #[test]
    fn leaf_cannot_stand_on_its_own_leg() {
        let p = binary(3);
        let c = Configuration::from_nodes(p, &[(pos("1", &p), 3), (pos("1L", &p), 2)]).unwrap();
        assert_eq!(
            c.apply_move(&mv("1L", "1LL", &p)),
            Err(MoveError::DestinationParentMissing)
        );
    }

    #[test]
    fn from_nodes_validation() {
        let p = binary(3);
        assert!(Configuration::from_nodes(p, &[(pos("1L", &p), 1)]).is_err());
        assert!(Configuration::from_nodes(p, &[(pos("1", &p), 2), (pos("1L", &p), 2)]).is_err());
        assert!(Configuration::from_nodes(p, &[(pos("1", &p), 2), (pos("1", &p), 1)]).is_err());
    }

    #[test]
    fn display_dumps_tree() {
        let c = Configuration::initial(binary(2), &[TreeLayout::new(2, 2)]).unwrap();
        let text = c.to_string();
        assert!(text.starts_with("place 1: empty\nplace 2: 2\n  leg 0: 1\n  leg 1: 1"));
    }

    fn arb_position(m: usize, n: u32, places: usize) -> impl Strategy<Value = Position> {
        let depth = n.saturating_sub(1) as usize;
        (1..=places, prop::collection::vec(0..m, 0..=depth))
            .prop_map(|(place, path)| Position::new(place, path))
    }

    /// A configuration reached by a random walk from a random layout.
    fn arb_configuration() -> impl Strategy<Value = Configuration> {
        (1usize..=3, 1u32..=3, 0usize..=2)
            .prop_flat_map(|(m, n, extra)| {
                let places = m + 2 + extra;
                (
                    Just((m, n, places)),
                    prop::collection::vec(0..=n, places),
                    prop::collection::vec(any::<prop::sample::Index>(), 0..40),
                )
            })
            .prop_map(|((m, n, places), heights, walk)| {
                let params = GameParams::new(m, n, places).unwrap();
                let layout: Vec<_> = heights
                    .iter()
                    .enumerate()
                    .map(|(i, &h)| TreeLayout::new(i + 1, h))
                    .collect();
                let mut c = Configuration::initial(params, &layout).unwrap();
                for pick in walk {
                    let moves = c.legal_moves();
                    if moves.is_empty() {
                        break;
                    }
                    c.play(pick.get(&moves)).unwrap();
                }
                c
            })
    }

    proptest! {
        #[test]
        fn position_text_round_trips(
            m in 1usize..=9,
            place in 1usize..=12,
            path in prop::collection::vec(0usize..9, 0..6),
        ) {
            let path: Vec<_> = path.into_iter().map(|leg| leg % m).collect();
            let p = GameParams::new(m, 7, 12).unwrap();
            let q = Position::new(place, path);
            let text = q.format(m);
            prop_assert_eq!(Position::parse(&text, &p).unwrap(), q.clone());
            prop_assert_eq!(Position::parse(&text, &p).unwrap().format(m), text);
        }

        #[test]
        fn legal_moves_are_exactly_the_successful_moves(
            c in arb_configuration(),
            probes in prop::collection::vec(any::<(prop::sample::Index, prop::sample::Index)>(), 30),
        ) {
            let p = *c.params();
            let legal = c.legal_moves();
            prop_assert_eq!(&legal, &c.legal_moves());
            let sizes = c.size_multiset();
            for mv in &legal {
                let next = c.apply_move(mv).unwrap();
                prop_assert_eq!(next.size_multiset(), sizes.clone());
            }
            // Enumerate candidate positions from nodes plus their legs and places.
            let mut universe: Vec<Position> = (1..=p.places).map(Position::place).collect();
            for (q, _) in c.nodes() {
                if q.depth() < p.max_depth() {
                    universe.extend((0..p.m).map(|leg| q.child(leg)));
                }
                universe.push(q);
            }
            universe.sort();
            universe.dedup();
            for (a, b) in probes {
                let mv = Move::new(a.get(&universe).clone(), b.get(&universe).clone());
                let ok = c.apply_move(&mv).is_ok();
                prop_assert_eq!(ok, legal.contains(&mv), "{:?}", mv);
            }
        }

        #[test]
        fn arbitrary_positions_never_panic(
            c in arb_configuration(),
            a in arb_position(3, 3, 5),
            b in arb_position(3, 3, 5),
        ) {
            let mv = Move::new(a, b);
            let res = c.apply_move(&mv);
            prop_assert_eq!(res.is_ok(), c.legal_moves().contains(&mv));
        }
    }
}
