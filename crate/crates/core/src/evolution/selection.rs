use std::cmp::Ordering;

use crate::fitness::Evaluation;
use crate::num::Scalar;

/// Total order on fitness used by survivor selection.
pub trait FitnessOrd {
    fn fitness_cmp(&self, other: &Self) -> Ordering;
}

impl FitnessOrd for f64 {
    fn fitness_cmp(&self, other: &Self) -> Ordering {
        self.total_cmp(other)
    }
}

impl FitnessOrd for f32 {
    fn fitness_cmp(&self, other: &Self) -> Ordering {
        self.total_cmp(other)
    }
}

impl<T: Scalar> FitnessOrd for Evaluation<T> {
    /// Ties are decided on the integer coordinates `(𝕀, 𝕁 − ε)`; otherwise
    /// the real fitness decides, with the coordinates as a fallback when
    /// rounding makes two distinct values compare equal.
    fn fitness_cmp(&self, other: &Self) -> Ordering {
        let by_coords = self.score.cmp_coords(&other.score);
        if by_coords == Ordering::Equal {
            return Ordering::Equal;
        }
        match self.fitness.partial_cmp(&other.fitness) {
            Some(Ordering::Equal) | None => by_coords,
            Some(ord) => ord,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Origin {
    Offspring,
    Parent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Survivor {
    pub origin: Origin,
    pub index: usize,
}

/// Keeps the best `parents.len()` of parents ∪ offspring. Equal fitness
/// favours offspring, then the lower index.
pub fn select<F: FitnessOrd>(parents: &[F], offspring: &[F]) -> Vec<Survivor> {
    let lambda = parents.len();
    let mut pool: Vec<(Survivor, &F)> = offspring
        .iter()
        .enumerate()
        .map(|(index, f)| {
            (
                Survivor {
                    origin: Origin::Offspring,
                    index,
                },
                f,
            )
        })
        .chain(parents.iter().enumerate().map(|(index, f)| {
            (
                Survivor {
                    origin: Origin::Parent,
                    index,
                },
                f,
            )
        }))
        .collect();
    // Stable: offspring precede parents and indices ascend within a group.
    pool.sort_by(|a, b| b.1.fitness_cmp(a.1));
    pool.into_iter().take(lambda).map(|(s, _)| s).collect()
}
