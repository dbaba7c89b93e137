//! Closed-form fitness of a genotype on MCC, plus the partition coordinates
//! and match vector used to instrument runs.
//!
//! A cell `m` forms `I^m = min(n_B + n_C, 2r)` triangles of class `m` and
//! `J^m = min(n_B, b) + min(n_A, a + max(b - n_B, 0))` segments. Surplus
//! B-blocks in the last cell also cover `ε` class-`M` segments. With
//! aggregates `𝕀 = ΣI^m` and `𝕁 = ΣJ^m`,
//!
//! ```text
//! F = (Ar_tri·(𝕀 + 2r) + Ar_seg·(𝕁 + 2r − ε)) / π
//! ```

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::genotype::{CellCounts, Genotype};
use crate::geometry::ProblemParams;
use crate::num::Scalar;

pub fn cell_i<T>(p: &ProblemParams<T>, cell: &CellCounts) -> u64 {
    (cell.b + cell.c).min((p.b + p.c) as u64)
}

pub fn cell_j<T>(p: &ProblemParams<T>, cell: &CellCounts) -> u64 {
    let (a, b) = (p.a as u64, p.b as u64);
    cell.b.min(b) + cell.a.min(a + b.saturating_sub(cell.b))
}

/// Class-`M` segments wrongly claimed by surplus B-blocks of the last cell.
pub fn epsilon<T>(p: &ProblemParams<T>, g: &Genotype) -> u64 {
    let last = g.last_cell();
    let surplus_b = last.b.saturating_sub(p.b as u64);
    let missing_c = (p.c as u64).saturating_sub(last.c);
    surplus_b.min(missing_c)
}

/// The integer content of a fitness value: `(𝕀, 𝕁, ε)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Score {
    pub i_total: u64,
    pub j_total: u64,
    pub epsilon: u64,
}

impl Score {
    pub fn of<T>(p: &ProblemParams<T>, g: &Genotype) -> Self {
        let (i_total, j_total) = g
            .cells()
            .iter()
            .fold((0, 0), |(i, j), c| (i + cell_i(p, c), j + cell_j(p, c)));
        Self {
            i_total,
            j_total,
            epsilon: epsilon(p, g),
        }
    }

    /// Sub-subspace index `(i, j)` with `j = 𝕁 − ε`.
    pub fn coords(&self) -> (u64, u64) {
        (self.i_total, self.j_total - self.epsilon)
    }

    pub fn value<T: Scalar>(&self, p: &ProblemParams<T>) -> T {
        let two_r = 2 * p.key.r as u64;
        let triangles = T::from_count(self.i_total + two_r);
        let segments = T::from_count(self.j_total + two_r - self.epsilon);
        (p.ar_tri * triangles + p.ar_seg * segments) / T::PI()
    }

    /// Lexicographic order on `coords`, which agrees with fitness order.
    pub fn cmp_coords(&self, other: &Score) -> Ordering {
        self.coords().cmp(&other.coords())
    }
}

/// Fitness with its integer score, the form carried through selection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation<T> {
    pub score: Score,
    pub fitness: T,
}

pub fn evaluate<T: Scalar>(p: &ProblemParams<T>, g: &Genotype) -> Evaluation<T> {
    let score = Score::of(p, g);
    Evaluation {
        score,
        fitness: score.value(p),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitnessBreakdown<T> {
    pub i_per_cell: Vec<u64>,
    pub j_per_cell: Vec<u64>,
    pub epsilon: u64,
    pub i_total: u64,
    pub j_total: u64,
    pub fitness: T,
}

pub fn fitness<T: Scalar>(p: &ProblemParams<T>, g: &Genotype) -> FitnessBreakdown<T> {
    let i_per_cell: Vec<u64> = g.cells().iter().map(|c| cell_i(p, c)).collect();
    let j_per_cell: Vec<u64> = g.cells().iter().map(|c| cell_j(p, c)).collect();
    let score = Score {
        i_total: i_per_cell.iter().sum(),
        j_total: j_per_cell.iter().sum(),
        epsilon: epsilon(p, g),
    };
    FitnessBreakdown {
        i_per_cell,
        j_per_cell,
        epsilon: score.epsilon,
        i_total: score.i_total,
        j_total: score.j_total,
        fitness: score.value(p),
    }
}

/// Structural optimality: every cell can cover all of its class, and the
/// last cell has enough C-blocks that no B-block spills onto class `M`.
///
/// Earlier cells may trade C-blocks for B-blocks on their second-half
/// sectors, since the next cell's A-blocks win back the spilled segments.
pub fn is_optimal<T>(p: &ProblemParams<T>, g: &Genotype) -> bool {
    let r = p.key.r as u64;
    g.cells()
        .iter()
        .all(|c| c.a >= r.max((2 * r).saturating_sub(c.b)) && c.b + c.c >= 2 * r)
        && g.last_cell().c >= r
}

/// Optimality read off the fitness value.
pub fn is_optimal_by_fitness<T: Scalar>(p: &ProblemParams<T>, g: &Genotype) -> bool {
    (evaluate(p, g).fitness - T::one()).abs() <= T::unit_tolerance()
}

pub fn partition_coords<T>(p: &ProblemParams<T>, g: &Genotype) -> (u64, u64) {
    Score::of(p, g).coords()
}

/// Remaining distances `(N − 𝕀, N − (𝕁 − ε))` for the two phases.
pub fn distances<T>(p: &ProblemParams<T>, g: &Genotype) -> (u64, u64) {
    let (i, j) = partition_coords(p, g);
    let n = p.big_n as u64;
    (n - i, n - j)
}

/// Which cells already match the optimum for the current phase.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchVector {
    pub bits: Vec<bool>,
    pub ones: usize,
    pub zeros: usize,
}

impl fmt::Display for MatchVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub fn match_vector<T>(p: &ProblemParams<T>, g: &Genotype) -> MatchVector {
    let score = Score::of(p, g);
    let full = 2 * p.key.r as u64;
    let phase_two = score.i_total == p.big_n as u64;
    let last = g.cells().len() - 1;
    let bits: Vec<bool> = g
        .cells()
        .iter()
        .enumerate()
        .map(|(idx, c)| {
            if phase_two {
                cell_j(p, c) == full && (idx != last || score.epsilon == 0)
            } else {
                cell_i(p, c) == full
            }
        })
        .collect();
    let ones = bits.iter().filter(|&&b| b).count();
    MatchVector {
        zeros: bits.len() - ones,
        ones,
        bits,
    }
}
