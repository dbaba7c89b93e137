use crate::genotype::{BlockType, CellCounts, Genotype};
use crate::rng::SplitMix64;

use super::config::{InnerMutation, MutationConfig, OuterMutation};

/// One block-level edit of a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operation {
    Addition(BlockType),
    Deletion(BlockType),
    /// Move one block from the first type to the second.
    Modification(BlockType, BlockType),
}

impl Operation {
    /// Draws the block type, then the operation, then (for a modification)
    /// the destination type, all uniformly.
    pub fn sample(rng: &mut SplitMix64) -> Self {
        let v = BlockType::from_index(rng.below_usize(3));
        match rng.below(3) {
            0 => Operation::Addition(v),
            1 => Operation::Deletion(v),
            _ => Operation::Modification(v, v.others()[rng.below_usize(2)]),
        }
    }

    /// Deletions and modifications of an absent type leave the cell as is.
    pub fn apply(self, mut cell: CellCounts) -> CellCounts {
        match self {
            Operation::Addition(v) => {
                let n = cell.get_mut(v);
                *n = n.checked_add(1).expect("block count overflow");
            }
            Operation::Deletion(v) => {
                let n = cell.get_mut(v);
                *n = n.saturating_sub(1);
            }
            Operation::Modification(v, w) => {
                if cell.get(v) > 0 {
                    *cell.get_mut(v) -= 1;
                    let n = cell.get_mut(w);
                    *n = n.checked_add(1).expect("block count overflow");
                }
            }
        }
        cell
    }
}

pub fn mutate_cell_once(cell: CellCounts, rng: &mut SplitMix64) -> CellCounts {
    Operation::sample(rng).apply(cell)
}

pub fn inner_mutation(
    cell: CellCounts,
    mode: InnerMutation,
    shifted: bool,
    rng: &mut SplitMix64,
) -> CellCounts {
    let times = operation_count(mode, shifted, rng);
    (0..times).fold(cell, |c, _| mutate_cell_once(c, rng))
}

/// Number of operations a picked cell receives.
pub fn operation_count(mode: InnerMutation, shifted: bool, rng: &mut SplitMix64) -> u32 {
    match mode {
        InnerMutation::Local => 1,
        InnerMutation::Global => rng.poisson1() + u32::from(shifted),
    }
}

/// Indices (0-based, ascending) of the cells the outer level picks.
pub fn select_cells(cells: usize, outer: OuterMutation, rng: &mut SplitMix64) -> Vec<usize> {
    match outer {
        OuterMutation::OneBit => vec![rng.below_usize(cells)],
        OuterMutation::BitWise => (0..cells).filter(|_| rng.below_usize(cells) == 0).collect(),
    }
}

/// Picks cells first, then mutates each picked cell.
pub fn outer_mutation(g: &Genotype, cfg: &MutationConfig, rng: &mut SplitMix64) -> Genotype {
    let picked = select_cells(g.cells().len(), cfg.outer, rng);
    let mut child = g.clone();
    for idx in picked {
        let cell = &mut child.cells_mut()[idx];
        *cell = inner_mutation(*cell, cfg.inner, cfg.global_shifted, rng);
    }
    child
}
