use thiserror::Error;

use crate::model::{Configuration, GameParams, ModelError, TreeLayout};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaskError {
    #[error("place {0} is listed more than once")]
    DuplicatePlace(usize),
    #[error("place {0} is neither old nor new")]
    UnassignedPlace(usize),
    #[error("k = {k} exceeds the {what} place count {count}")]
    TooManyTrees {
        k: usize,
        what: &'static str,
        count: usize,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A relocation task: full trees of height `n` on the old places, of which
/// `k` must end up on new places while the others stay put.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskSpec {
    params: GameParams,
    old_places: Vec<usize>,
    new_places: Vec<usize>,
    k: usize,
}

impl TaskSpec {
    pub fn new(
        params: GameParams,
        mut old_places: Vec<usize>,
        mut new_places: Vec<usize>,
        k: usize,
    ) -> Result<Self, TaskError> {
        old_places.sort_unstable();
        new_places.sort_unstable();
        let mut seen = vec![false; params.places];
        for &place in old_places.iter().chain(&new_places) {
            if place == 0 || place > params.places {
                return Err(ModelError::PlaceOutOfRange {
                    place,
                    places: params.places,
                }
                .into());
            }
            if std::mem::replace(&mut seen[place - 1], true) {
                return Err(TaskError::DuplicatePlace(place));
            }
        }
        if let Some(i) = seen.iter().position(|&s| !s) {
            return Err(TaskError::UnassignedPlace(i + 1));
        }
        for (what, count) in [("old", old_places.len()), ("new", new_places.len())] {
            if k > count {
                return Err(TaskError::TooManyTrees { k, what, count });
            }
        }
        Ok(Self {
            params,
            old_places,
            new_places,
            k,
        })
    }

    /// One tree on place 1, moved to any of the other `m + 1` places.
    pub fn f_task(m: usize, n: u32) -> Result<Self, TaskError> {
        let params = GameParams::standard(m, n)?;
        Self::new(params, vec![1], (2..=m + 2).collect(), 1)
    }

    /// `m` trees moved to `m` of `m + 1` empty places.
    pub fn g_task(m: usize, n: u32) -> Result<Self, TaskError> {
        let params = GameParams::new(m, n, 2 * m + 1)?;
        Self::new(params, (1..=m).collect(), (m + 1..=2 * m + 1).collect(), m)
    }

    /// `m + 1` trees moved onto `m + 1` empty places.
    pub fn h_task(m: usize, n: u32) -> Result<Self, TaskError> {
        let params = GameParams::new(m, n, 2 * m + 2)?;
        Self::new(
            params,
            (1..=m + 1).collect(),
            (m + 2..=2 * m + 2).collect(),
            m + 1,
        )
    }

    pub fn params(&self) -> &GameParams {
        &self.params
    }

    pub fn old_places(&self) -> &[usize] {
        &self.old_places
    }

    pub fn new_places(&self) -> &[usize] {
        &self.new_places
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_old(&self, place: usize) -> bool {
        self.old_places.binary_search(&place).is_ok()
    }

    pub fn is_new(&self, place: usize) -> bool {
        self.new_places.binary_search(&place).is_ok()
    }

    pub fn initial_layout(&self) -> Vec<TreeLayout> {
        self.old_places
            .iter()
            .map(|&place| TreeLayout::new(place, self.params.n))
            .collect()
    }

    pub fn initial_configuration(&self) -> Configuration {
        Configuration::initial(self.params, &self.initial_layout())
            .expect("task places were validated")
    }

    /// Goal with the first `k` old trees moved to the first `k` new places.
    pub fn goal_configuration(&self) -> Configuration {
        let layout: Vec<_> = self.old_places[self.k..]
            .iter()
            .chain(&self.new_places[..self.k])
            .map(|&place| TreeLayout::new(place, self.params.n))
            .collect();
        Configuration::initial(self.params, &layout).expect("task places were validated")
    }

    /// `k` new places hold full trees, the other new places are empty, and
    /// the remaining old places still hold full trees.
    pub fn is_goal(&self, config: &Configuration) -> bool {
        let n = self.params.n;
        if n == 0 {
            return true;
        }
        let full = |place: usize| {
            config
                .place_contents(place)
                .is_some_and(|t| t.size() == n && t.full_height() == Some(n))
        };
        let empty = |place: usize| config.place_contents(place).is_none();
        let count_full = |places: &[usize]| places.iter().filter(|&&p| full(p)).count();
        let all_full_or_empty = |places: &[usize]| places.iter().all(|&p| full(p) || empty(p));
        count_full(&self.new_places) == self.k
            && count_full(&self.old_places) == self.old_places.len() - self.k
            && all_full_or_empty(&self.new_places)
            && all_full_or_empty(&self.old_places)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_tasks() {
        let f = TaskSpec::f_task(2, 3).unwrap();
        assert_eq!(
            (f.old_places(), f.new_places(), f.k()),
            (&[1][..], &[2, 3, 4][..], 1)
        );
        let g = TaskSpec::g_task(2, 2).unwrap();
        assert_eq!(g.params().places, 5);
        assert_eq!(
            (g.old_places(), g.new_places(), g.k()),
            (&[1, 2][..], &[3, 4, 5][..], 2)
        );
        let h = TaskSpec::h_task(2, 1).unwrap();
        assert_eq!(
            (h.old_places(), h.new_places(), h.k()),
            (&[1, 2, 3][..], &[4, 5, 6][..], 3)
        );
        assert!(h.is_old(2) && h.is_new(6) && !h.is_new(1));
    }

    #[test]
    fn validation() {
        let p = GameParams::new(2, 1, 4).unwrap();
        assert_eq!(
            TaskSpec::new(p, vec![1, 1], vec![2, 3, 4], 1),
            Err(TaskError::DuplicatePlace(1))
        );
        assert_eq!(
            TaskSpec::new(p, vec![1], vec![2, 3], 1),
            Err(TaskError::UnassignedPlace(4))
        );
        assert!(matches!(
            TaskSpec::new(p, vec![1], vec![2, 3, 4], 2),
            Err(TaskError::TooManyTrees { what: "old", .. })
        ));
        assert!(TaskSpec::new(p, vec![1, 5], vec![2, 3, 4], 1).is_err());
    }

    #[test]
    fn goal_predicate() {
        let task = TaskSpec::g_task(2, 2).unwrap();
        assert!(!task.is_goal(&task.initial_configuration()));
        assert!(task.is_goal(&task.goal_configuration()));
        let p = *task.params();
        let other =
            Configuration::initial(p, &[TreeLayout::new(4, 2), TreeLayout::new(5, 2)]).unwrap();
        assert!(task.is_goal(&other));
        let partial =
            Configuration::initial(p, &[TreeLayout::new(1, 2), TreeLayout::new(5, 2)]).unwrap();
        assert!(!task.is_goal(&partial));

        // Generalized: three old trees, two of which move.
        let p = GameParams::new(2, 1, 6).unwrap();
        let task = TaskSpec::new(p, vec![1, 2, 3], vec![4, 5, 6], 2).unwrap();
        let done = Configuration::initial(
            p,
            &[
                TreeLayout::new(2, 1),
                TreeLayout::new(4, 1),
                TreeLayout::new(6, 1),
            ],
        )
        .unwrap();
        assert!(task.is_goal(&done));
        assert!(!task.is_goal(&task.initial_configuration()));
    }

    #[test]
    fn zero_height_is_trivially_solved() {
        let task = TaskSpec::f_task(2, 0).unwrap();
        assert!(task.is_goal(&task.initial_configuration()));
    }
}
