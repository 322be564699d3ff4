//! Recursive solvers that emit explicit move lists.
//!
//! `t` is the straightforward four-way split. `f`, `g` and `h` are the
//! optimal family: `g` relocates two trees and `h` three, each by moving its
//! subtrees aside, moving the roots, and rebuilding on top of them. The m-ary
//! family generalizes `g` to m trees and `h` to m + 1 trees.
//!
//! The `*_moves` functions accept arbitrary non-overlapping positions; the
//! `solve_*` functions work on whole trees standing on places and wrap the
//! result in a [`Trace`].

use thiserror::Error;

use crate::model::{GameParams, ModelError, Move, Position, TreeLayout};
use crate::trace::Trace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("positions {0:?} and {1:?} overlap")]
    Overlap(Position, Position),
    #[error("arity must be at least 1")]
    InvalidArity,
    #[error("expected {expected} positions, got {got}")]
    WrongRoleCount { expected: usize, got: usize },
    #[error("{0:?} is not a bare place")]
    NotAPlace(Position),
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn check_disjoint(positions: &[&Position]) -> Result<(), SolveError> {
    for (i, a) in positions.iter().enumerate() {
        for b in &positions[i + 1..] {
            if a.overlaps(b) {
                return Err(SolveError::Overlap((*a).clone(), (*b).clone()));
            }
        }
    }
    Ok(())
}

fn legs(pos: &Position, m: usize) -> Vec<Position> {
    (0..m).map(|leg| pos.child(leg)).collect()
}

fn left(pos: &Position) -> Position {
    pos.child(0)
}

fn right(pos: &Position) -> Position {
    pos.child(1)
}

/// Moves the full binary tree of height `n` from `a` to `b` via `c` and `d`,
/// always putting nodes on original ancestors.
pub fn t_moves(
    n: u32,
    a: &Position,
    b: &Position,
    c: &Position,
    d: &Position,
) -> Result<Vec<Move>, SolveError> {
    check_disjoint(&[a, b, c, d])?;
    let mut out = Vec::new();
    proc_t(n, a, b, c, d, &mut out);
    Ok(out)
}

fn proc_t(n: u32, a: &Position, b: &Position, c: &Position, d: &Position, out: &mut Vec<Move>) {
    if n == 0 {
        return;
    }
    let (al, ar) = (left(a), right(a));
    proc_t(n - 1, &al, c, b, d, out);
    proc_t(n - 1, &ar, d, &al, b, out);
    out.push(Move::new(a.clone(), b.clone()));
    proc_t(n - 1, c, &left(b), a, &right(b), out);
    proc_t(n - 1, d, &right(b), a, c, out);
}

/// Moves the full binary tree of height `n` from `a` to `b` via `c` and `d`
/// in the minimal number of moves.
pub fn f_moves(
    n: u32,
    a: &Position,
    b: &Position,
    c: &Position,
    d: &Position,
) -> Result<Vec<Move>, SolveError> {
    check_disjoint(&[a, b, c, d])?;
    let mut out = Vec::new();
    proc_f(n, a, b, c, d, &mut out);
    Ok(out)
}

/// Moves two trees of height `n` from `a` and `b` to `c` and `d` via `e`.
pub fn g_moves(
    n: u32,
    a: &Position,
    b: &Position,
    c: &Position,
    d: &Position,
    e: &Position,
) -> Result<Vec<Move>, SolveError> {
    check_disjoint(&[a, b, c, d, e])?;
    let mut out = Vec::new();
    proc_g(n, a, b, c, d, e, &mut out);
    Ok(out)
}

/// Moves three trees of height `n` from `a`, `b`, `c` to `x`, `y`, `z`.
pub fn h_moves(
    n: u32,
    a: &Position,
    b: &Position,
    c: &Position,
    x: &Position,
    y: &Position,
    z: &Position,
) -> Result<Vec<Move>, SolveError> {
    check_disjoint(&[a, b, c, x, y, z])?;
    let mut out = Vec::new();
    proc_h(n, a, b, c, x, y, z, &mut out);
    Ok(out)
}

fn proc_f(n: u32, a: &Position, b: &Position, c: &Position, d: &Position, out: &mut Vec<Move>) {
    if n == 0 {
        return;
    }
    proc_g(n - 1, &left(a), &right(a), c, d, b, out);
    out.push(Move::new(a.clone(), b.clone()));
    proc_g(n - 1, c, d, &left(b), &right(b), a, out);
}

fn proc_g(
    n: u32,
    a: &Position,
    b: &Position,
    c: &Position,
    d: &Position,
    e: &Position,
    out: &mut Vec<Move>,
) {
    if n == 0 {
        return;
    }
    proc_g(n - 1, &left(a), &right(a), d, e, c, out);
    out.push(Move::new(a.clone(), c.clone()));
    proc_h(n - 1, &left(b), &right(b), d, a, &left(c), &right(c), out);
    out.push(Move::new(b.clone(), d.clone()));
    proc_g(n - 1, a, e, &left(d), &right(d), b, out);
}

#[allow(clippy::too_many_arguments)]
fn proc_h(
    n: u32,
    a: &Position,
    b: &Position,
    c: &Position,
    x: &Position,
    y: &Position,
    z: &Position,
    out: &mut Vec<Move>,
) {
    if n == 0 {
        return;
    }
    proc_g(n - 1, &left(a), &right(a), y, z, x, out);
    out.push(Move::new(a.clone(), x.clone()));
    proc_h(n - 1, &left(b), &right(b), y, a, &left(x), &right(x), out);
    out.push(Move::new(b.clone(), y.clone()));
    proc_h(n - 1, &left(c), &right(c), z, b, &left(y), &right(y), out);
    out.push(Move::new(c.clone(), z.clone()));
    proc_g(n - 1, a, b, &left(z), &right(z), c, out);
}

/// Role assignment for the m-ary single-tree solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaryRoles {
    pub source: Position,
    pub target: Position,
    /// Exactly `m` intermediate positions.
    pub via: Vec<Position>,
}

/// Moves the full m-ary tree of height `n` from `roles.source` to
/// `roles.target` using the `m` intermediates.
pub fn mary_moves(n: u32, m: usize, roles: &MaryRoles) -> Result<Vec<Move>, SolveError> {
    if m == 0 {
        return Err(SolveError::InvalidArity);
    }
    if roles.via.len() != m {
        return Err(SolveError::WrongRoleCount {
            expected: m,
            got: roles.via.len(),
        });
    }
    let mut all = vec![&roles.source, &roles.target];
    all.extend(roles.via.iter());
    check_disjoint(&all)?;
    let mut out = Vec::new();
    mary_f(n, m, &roles.source, &roles.target, &roles.via, &mut out);
    Ok(out)
}

/// m-ary `g`: relocates `m` trees with one spare position.
pub fn mary_g_moves(
    n: u32,
    m: usize,
    sources: &[Position],
    targets: &[Position],
    spare: &Position,
) -> Result<Vec<Move>, SolveError> {
    if m == 0 {
        return Err(SolveError::InvalidArity);
    }
    for got in [sources.len(), targets.len()] {
        if got != m {
            return Err(SolveError::WrongRoleCount { expected: m, got });
        }
    }
    let mut all: Vec<_> = sources.iter().chain(targets).collect();
    all.push(spare);
    check_disjoint(&all)?;
    let mut out = Vec::new();
    mary_g(n, m, sources, targets, spare, &mut out);
    Ok(out)
}

/// m-ary `h`: relocates `m + 1` trees without a spare.
pub fn mary_h_moves(
    n: u32,
    m: usize,
    sources: &[Position],
    targets: &[Position],
) -> Result<Vec<Move>, SolveError> {
    if m == 0 {
        return Err(SolveError::InvalidArity);
    }
    for got in [sources.len(), targets.len()] {
        if got != m + 1 {
            return Err(SolveError::WrongRoleCount {
                expected: m + 1,
                got,
            });
        }
    }
    let all: Vec<_> = sources.iter().chain(targets).collect();
    check_disjoint(&all)?;
    let mut out = Vec::new();
    mary_h(n, m, sources, targets, &mut out);
    Ok(out)
}

fn mary_f(n: u32, m: usize, a: &Position, b: &Position, via: &[Position], out: &mut Vec<Move>) {
    if n == 0 {
        return;
    }
    mary_g(n - 1, m, &legs(a, m), via, b, out);
    out.push(Move::new(a.clone(), b.clone()));
    mary_g(n - 1, m, via, &legs(b, m), a, out);
}

// The first tree's subtrees go to the other targets and the spare; every
// later root then swaps its subtrees plus the tree parked on its target into
// the previous source and the previous root's legs.
fn mary_g(
    n: u32,
    m: usize,
    src: &[Position],
    dst: &[Position],
    spare: &Position,
    out: &mut Vec<Move>,
) {
    if n == 0 {
        return;
    }
    let mut parked: Vec<Position> = dst[1..].to_vec();
    parked.push(spare.clone());
    mary_g(n - 1, m, &legs(&src[0], m), &parked, &dst[0], out);
    out.push(Move::new(src[0].clone(), dst[0].clone()));
    for i in 1..m {
        shift_root(n, m, src, dst, i, out);
    }
    let mut rest: Vec<Position> = src[..m - 1].to_vec();
    rest.push(spare.clone());
    mary_g(n - 1, m, &rest, &legs(&dst[m - 1], m), &src[m - 1], out);
}

fn mary_h(n: u32, m: usize, src: &[Position], dst: &[Position], out: &mut Vec<Move>) {
    if n == 0 {
        return;
    }
    mary_g(n - 1, m, &legs(&src[0], m), &dst[1..], &dst[0], out);
    out.push(Move::new(src[0].clone(), dst[0].clone()));
    for i in 1..=m {
        shift_root(n, m, src, dst, i, out);
    }
    mary_g(n - 1, m, &src[..m], &legs(&dst[m], m), &src[m], out);
}

fn shift_root(n: u32, m: usize, src: &[Position], dst: &[Position], i: usize, out: &mut Vec<Move>) {
    let mut from = legs(&src[i], m);
    from.push(dst[i].clone());
    let mut to = vec![src[i - 1].clone()];
    to.extend(legs(&dst[i - 1], m));
    mary_h(n - 1, m, &from, &to, out);
    out.push(Move::new(src[i].clone(), dst[i].clone()));
}

fn require_places(positions: &[&Position]) -> Result<(), SolveError> {
    match positions.iter().find(|p| !p.is_place()) {
        Some(p) => Err(SolveError::NotAPlace((*p).clone())),
        None => Ok(()),
    }
}

fn single_tree_trace(
    m: usize,
    n: u32,
    places: &[&Position],
    moves: Vec<Move>,
) -> Result<Trace, SolveError> {
    let count = places
        .iter()
        .map(|p| p.place_index())
        .max()
        .unwrap_or(0)
        .max(m + 2);
    let params = GameParams::new(m, n, count)?;
    for p in places {
        params.check_position(p)?;
    }
    let initial = vec![TreeLayout::new(places[0].place_index(), n)];
    Ok(Trace::new(params, initial, moves))
}

/// Procedure `t` on whole trees: `a`, `b`, `c`, `d` must be places.
pub fn solve_t(
    n: u32,
    a: &Position,
    b: &Position,
    c: &Position,
    d: &Position,
) -> Result<Trace, SolveError> {
    require_places(&[a, b, c, d])?;
    let moves = t_moves(n, a, b, c, d)?;
    single_tree_trace(2, n, &[a, b, c, d], moves)
}

/// Procedure `f` on whole trees: `a`, `b`, `c`, `d` must be places.
pub fn solve_f(
    n: u32,
    a: &Position,
    b: &Position,
    c: &Position,
    d: &Position,
) -> Result<Trace, SolveError> {
    require_places(&[a, b, c, d])?;
    let moves = f_moves(n, a, b, c, d)?;
    single_tree_trace(2, n, &[a, b, c, d], moves)
}

/// m-ary solver on whole trees: all roles must be places.
pub fn solve_mary(n: u32, m: usize, roles: &MaryRoles) -> Result<Trace, SolveError> {
    let mut all = vec![&roles.source, &roles.target];
    all.extend(roles.via.iter());
    require_places(&all)?;
    let moves = mary_moves(n, m, roles)?;
    single_tree_trace(m, n, &all, moves)
}

/// Procedure `g` on two whole trees standing on places `a` and `b`.
pub fn solve_g(
    n: u32,
    a: &Position,
    b: &Position,
    c: &Position,
    d: &Position,
    e: &Position,
) -> Result<Trace, SolveError> {
    let all = [a, b, c, d, e];
    require_places(&all)?;
    let moves = g_moves(n, a, b, c, d, e)?;
    multi_tree_trace(n, &all, 2, moves)
}

/// Procedure `h` on three whole trees standing on places `a`, `b`, `c`.
pub fn solve_h(
    n: u32,
    a: &Position,
    b: &Position,
    c: &Position,
    x: &Position,
    y: &Position,
    z: &Position,
) -> Result<Trace, SolveError> {
    let all = [a, b, c, x, y, z];
    require_places(&all)?;
    let moves = h_moves(n, a, b, c, x, y, z)?;
    multi_tree_trace(n, &all, 3, moves)
}

fn multi_tree_trace(
    n: u32,
    places: &[&Position],
    trees: usize,
    moves: Vec<Move>,
) -> Result<Trace, SolveError> {
    let count = places.iter().map(|p| p.place_index()).max().unwrap_or(1);
    let params = GameParams::new(2, n, count)?;
    for p in places {
        params.check_position(p)?;
    }
    let initial = places[..trees]
        .iter()
        .map(|p| TreeLayout::new(p.place_index(), n))
        .collect();
    Ok(Trace::new(params, initial, moves))
}

/// Standard role assignment on `m + 2` places: intermediates are the
/// remaining places in ascending order.
pub fn standard_roles(m: usize, from: usize, to: usize) -> Result<MaryRoles, SolveError> {
    if m == 0 {
        return Err(SolveError::InvalidArity);
    }
    let places = m + 2;
    for p in [from, to] {
        if p == 0 || p > places {
            return Err(ModelError::PlaceOutOfRange { place: p, places }.into());
        }
    }
    if from == to {
        return Err(SolveError::Overlap(
            Position::place(from),
            Position::place(to),
        ));
    }
    Ok(MaryRoles {
        source: Position::place(from),
        target: Position::place(to),
        via: (1..=places)
            .filter(|&p| p != from && p != to)
            .map(Position::place)
            .collect(),
    })
}
