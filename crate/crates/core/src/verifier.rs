//! Trace replay and the structural checks behind the optimality argument.

use std::fmt;

use thiserror::Error;

use crate::model::{Configuration, ModelError, Move, MoveError, OriginLabels, Position};
use crate::oracle::TaskSpec;
use crate::trace::Trace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    IllegalMove(MoveError),
    FinalMismatch,
    /// The moved node's origin does not extend its new father's origin.
    AncestorViolation {
        node: Position,
        father: Position,
    },
}

impl RejectReason {
    pub fn kind(&self) -> &'static str {
        match self {
            RejectReason::IllegalMove(e) => e.kind(),
            RejectReason::FinalMismatch => "FinalMismatch",
            RejectReason::AncestorViolation { .. } => "AncestorViolation",
        }
    }
}

/// Why a trace was rejected. `step` is the 1-based index of the failing
/// move, absent when every move was legal but the end state is wrong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub step: Option<usize>,
    pub reason: RejectReason,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(step) = self.step {
            write!(f, "step {step}: ")?;
        }
        match &self.reason {
            RejectReason::IllegalMove(e) => write!(f, "{} ({e})", e.kind()),
            RejectReason::FinalMismatch => {
                f.write_str("FinalMismatch (final configuration differs)")
            }
            RejectReason::AncestorViolation { node, father } => write!(
                f,
                "AncestorViolation (node from {node} put on node from {father})"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject(Rejection),
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }

    pub fn rejection(&self) -> Option<&Rejection> {
        match self {
            Verdict::Accept => None,
            Verdict::Reject(r) => Some(r),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("trace header does not describe the given initial configuration")]
    HeaderMismatch,
    #[error("trace header is invalid: {0}")]
    Header(#[from] ModelError),
    #[error("trace is illegal: {0}")]
    Illegal(Rejection),
}

fn check_header(initial: &Configuration, trace: &Trace) -> Result<(), VerifyError> {
    if trace.initial_configuration()? != *initial {
        return Err(VerifyError::HeaderMismatch);
    }
    Ok(())
}

/// Replays `moves` from `initial`, returning the final configuration.
pub fn replay(initial: &Configuration, moves: &[Move]) -> Result<Configuration, Rejection> {
    let mut config = initial.clone();
    for (i, mv) in moves.iter().enumerate() {
        config.play(mv).map_err(|e| Rejection {
            step: Some(i + 1),
            reason: RejectReason::IllegalMove(e),
        })?;
    }
    Ok(config)
}

/// Accepts when every move is legal in turn and the trace ends in
/// `expected_final`.
pub fn check_trace(
    initial: &Configuration,
    trace: &Trace,
    expected_final: &Configuration,
) -> Result<Verdict, VerifyError> {
    check_header(initial, trace)?;
    Ok(match replay(initial, &trace.moves) {
        Err(rejection) => Verdict::Reject(rejection),
        Ok(last) if last != *expected_final => Verdict::Reject(Rejection {
            step: None,
            reason: RejectReason::FinalMismatch,
        }),
        Ok(_) => Verdict::Accept,
    })
}

/// Accepts when every move puts its node on a bare place or on a node whose
/// original position is a proper prefix of the moved node's original
/// position. Illegal moves reject as in [`check_trace`].
pub fn check_ancestor(initial: &Configuration, trace: &Trace) -> Result<Verdict, VerifyError> {
    check_header(initial, trace)?;
    let mut config = initial.clone();
    let mut labels = OriginLabels::from_configuration(initial);
    for (i, mv) in trace.moves.iter().enumerate() {
        let step = Some(i + 1);
        if let Err(e) = config.play(mv) {
            return Ok(Verdict::Reject(Rejection {
                step,
                reason: RejectReason::IllegalMove(e),
            }));
        }
        if !labels.respects_ancestry(mv) {
            let father = mv.to.parent().expect("bare places always qualify");
            return Ok(Verdict::Reject(Rejection {
                step,
                reason: RejectReason::AncestorViolation {
                    node: labels
                        .origin(&mv.from)
                        .cloned()
                        .expect("moved node is labeled"),
                    father: labels.origin(&father).cloned().expect("father is labeled"),
                },
            }));
        }
        labels.apply(mv);
    }
    Ok(Verdict::Accept)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlaceKind {
    Old,
    New,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootMove {
    pub step: usize,
    pub from_place: usize,
    pub to_place: usize,
    pub from_kind: PlaceKind,
    pub to_kind: PlaceKind,
}

/// Every move of a largest node in a trace, classified by place kind.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LargestMoveReport {
    pub moves: Vec<RootMove>,
    pub old_to_new: usize,
    pub old_to_old: usize,
    pub new_to_new: usize,
    pub new_to_old: usize,
}

impl LargestMoveReport {
    pub fn total(&self) -> usize {
        self.moves.len()
    }

    /// Each root moved at most once, and only from an old to a new place.
    pub fn only_old_to_new(&self) -> bool {
        self.old_to_new == self.total()
    }
}

/// Lists every move of a node of the task's full height.
pub fn analyze_largest_moves(
    trace: &Trace,
    task: &TaskSpec,
) -> Result<LargestMoveReport, VerifyError> {
    let initial = task.initial_configuration();
    check_header(&initial, trace)?;
    let height = task.params().n;
    let kind = |place: usize| {
        if task.is_old(place) {
            PlaceKind::Old
        } else {
            PlaceKind::New
        }
    };
    let mut report = LargestMoveReport::default();
    let mut config = initial;
    for (i, mv) in trace.moves.iter().enumerate() {
        let largest = config.node_at(&mv.from) == Some(height);
        config.play(mv).map_err(|e| {
            VerifyError::Illegal(Rejection {
                step: Some(i + 1),
                reason: RejectReason::IllegalMove(e),
            })
        })?;
        if !largest {
            continue;
        }
        let (from, to) = (mv.from.place_index(), mv.to.place_index());
        let entry = RootMove {
            step: i + 1,
            from_place: from,
            to_place: to,
            from_kind: kind(from),
            to_kind: kind(to),
        };
        match (entry.from_kind, entry.to_kind) {
            (PlaceKind::Old, PlaceKind::New) => report.old_to_new += 1,
            (PlaceKind::Old, PlaceKind::Old) => report.old_to_old += 1,
            (PlaceKind::New, PlaceKind::New) => report.new_to_new += 1,
            (PlaceKind::New, PlaceKind::Old) => report.new_to_old += 1,
        }
        report.moves.push(entry);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{GameParams, TreeLayout};
    use crate::solvers::{solve_f, solve_h, solve_t};

    fn p(place: usize) -> Position {
        Position::place(place)
    }

    fn goal(trace: &Trace, place: usize) -> Configuration {
        Configuration::initial(trace.params, &[TreeLayout::new(place, trace.params.n)]).unwrap()
    }

    #[test]
    fn accepts_solver_output() {
        let trace = solve_f(3, &p(1), &p(2), &p(3), &p(4)).unwrap();
        let initial = trace.initial_configuration().unwrap();
        assert_eq!(
            check_trace(&initial, &trace, &goal(&trace, 2)),
            Ok(Verdict::Accept)
        );
    }

    #[test]
    fn empty_trace() {
        let params = GameParams::standard(2, 2).unwrap();
        let trace = Trace::new(params, vec![TreeLayout::new(1, 2)], vec![]);
        let initial = trace.initial_configuration().unwrap();
        assert_eq!(check_trace(&initial, &trace, &initial), Ok(Verdict::Accept));
        let verdict = check_trace(&initial, &trace, &goal(&trace, 2)).unwrap();
        assert_eq!(
            verdict.rejection().unwrap().reason,
            RejectReason::FinalMismatch
        );
        assert_eq!(verdict.rejection().unwrap().step, None);
    }

    #[test]
    fn reports_first_illegal_step() {
        let params = GameParams::standard(2, 2).unwrap();
        let pos = |t: &str| Position::parse(t, &params).unwrap();
        let moves = vec![
            Move::new(pos("1L"), pos("3")),
            Move::new(pos("1R"), pos("4")),
            Move::new(pos("3"), pos("4L")),
        ];
        let trace = Trace::new(params, vec![TreeLayout::new(1, 2)], moves);
        let initial = trace.initial_configuration().unwrap();
        let verdict = check_trace(&initial, &trace, &goal(&trace, 2)).unwrap();
        let rejection = verdict.rejection().unwrap();
        assert_eq!(rejection.step, Some(3));
        assert_eq!(rejection.reason.kind(), "SizeViolation");
        assert_eq!(
            rejection.to_string(),
            "step 3: SizeViolation (a node of size 1 cannot stand on a node of size 1)"
        );
    }

    #[test]
    fn header_mismatch() {
        let trace = solve_f(2, &p(1), &p(2), &p(3), &p(4)).unwrap();
        let other = Configuration::initial(trace.params, &[TreeLayout::new(2, 2)]).unwrap();
        assert_eq!(
            check_trace(&other, &trace, &goal(&trace, 2)),
            Err(VerifyError::HeaderMismatch)
        );
    }

    #[test]
    fn ancestor_condition() {
        let t = solve_t(3, &p(1), &p(2), &p(3), &p(4)).unwrap();
        let initial = t.initial_configuration().unwrap();
        assert_eq!(check_ancestor(&initial, &t), Ok(Verdict::Accept));

        let f = solve_f(3, &p(1), &p(2), &p(3), &p(4)).unwrap();
        let verdict = check_ancestor(&initial, &f).unwrap();
        let rejection = verdict.rejection().unwrap();
        assert_eq!(rejection.reason.kind(), "AncestorViolation");

        let params = GameParams::standard(2, 1).unwrap();
        let lone = Trace::new(
            params,
            vec![TreeLayout::new(1, 1)],
            vec![Move::new(p(1), p(3))],
        );
        let initial = lone.initial_configuration().unwrap();
        assert_eq!(check_ancestor(&initial, &lone), Ok(Verdict::Accept));
    }

    #[test]
    fn ancestor_check_reports_illegal_moves() {
        let params = GameParams::standard(2, 2).unwrap();
        let bad = Trace::new(
            params,
            vec![TreeLayout::new(1, 2)],
            vec![Move::new(p(1), p(2))],
        );
        let initial = bad.initial_configuration().unwrap();
        let verdict = check_ancestor(&initial, &bad).unwrap();
        assert_eq!(verdict.rejection().unwrap().reason.kind(), "SourceNotLeaf");
    }

    #[test]
    fn largest_moves() {
        let task = TaskSpec::f_task(2, 3).unwrap();
        let f = solve_f(3, &p(1), &p(2), &p(3), &p(4)).unwrap();
        let report = analyze_largest_moves(&f, &task).unwrap();
        assert_eq!(report.total(), 1);
        assert!(report.only_old_to_new());
        assert_eq!(report.moves[0].step, 10);

        let task = TaskSpec::h_task(2, 1).unwrap();
        let h = solve_h(1, &p(1), &p(2), &p(3), &p(4), &p(5), &p(6)).unwrap();
        let report = analyze_largest_moves(&h, &task).unwrap();
        assert_eq!((report.total(), report.old_to_new), (3, 3));
    }

    #[test]
    fn largest_moves_classifies_wasteful_moves() {
        let task = TaskSpec::f_task(2, 1).unwrap();
        let params = *task.params();
        let moves = vec![
            Move::new(p(1), p(3)),
            Move::new(p(3), p(4)),
            Move::new(p(4), p(1)),
        ];
        let trace = Trace::new(params, task.initial_layout(), moves);
        let report = analyze_largest_moves(&trace, &task).unwrap();
        assert_eq!(
            (
                report.old_to_new,
                report.new_to_new,
                report.new_to_old,
                report.old_to_old
            ),
            (1, 1, 1, 0)
        );
        assert!(!report.only_old_to_new());
    }
}
