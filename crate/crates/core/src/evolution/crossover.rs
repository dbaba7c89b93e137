use crate::genotype::Genotype;
use crate::rng::SplitMix64;

/// Cells `1..=cut` from `a`, the rest from `b`.
pub fn one_point_at(a: &Genotype, b: &Genotype, cut: usize) -> Genotype {
    let mut child = a.clone();
    child.cells_mut()[cut..].copy_from_slice(&b.cells()[cut..]);
    child
}

/// Cut point uniform in `[1, M-2]`; with a single cell the child is `a`.
pub fn one_point_crossover(a: &Genotype, b: &Genotype, rng: &mut SplitMix64) -> Genotype {
    let cells = a.cells().len();
    if cells < 2 {
        return a.clone();
    }
    one_point_at(a, b, 1 + rng.below_usize(cells - 1))
}

pub fn uniform_crossover(a: &Genotype, b: &Genotype, rng: &mut SplitMix64) -> Genotype {
    let mut child = a.clone();
    for (cell, other) in child.cells_mut().iter_mut().zip(b.cells()) {
        if rng.coin() {
            *cell = *other;
        }
    }
    child
}
