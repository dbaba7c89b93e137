//! Two-level encoding: `M-1` cells, each a triple of block counts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::ProblemKey;
use crate::rng::SplitMix64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BlockType {
    A,
    B,
    C,
}

impl BlockType {
    pub const ALL: [BlockType; 3] = [BlockType::A, BlockType::B, BlockType::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i]
    }

    /// The two other types, in A, B, C order.
    pub fn others(self) -> [BlockType; 2] {
        match self {
            BlockType::A => [BlockType::B, BlockType::C],
            BlockType::B => [BlockType::A, BlockType::C],
            BlockType::C => [BlockType::A, BlockType::B],
        }
    }
}

/// Block counts of one cell, serialized as `[n_A, n_B, n_C]`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[u64; 3]", into = "[u64; 3]")]
pub struct CellCounts {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl CellCounts {
    pub const ZERO: CellCounts = CellCounts { a: 0, b: 0, c: 0 };

    pub const fn new(a: u64, b: u64, c: u64) -> Self {
        Self { a, b, c }
    }

    pub fn uniform(n: u64) -> Self {
        Self::new(n, n, n)
    }

    pub fn get(&self, t: BlockType) -> u64 {
        match t {
            BlockType::A => self.a,
            BlockType::B => self.b,
            BlockType::C => self.c,
        }
    }

    pub fn get_mut(&mut self, t: BlockType) -> &mut u64 {
        match t {
            BlockType::A => &mut self.a,
            BlockType::B => &mut self.b,
            BlockType::C => &mut self.c,
        }
    }

    pub fn l1_distance(&self, other: &CellCounts) -> u64 {
        self.a.abs_diff(other.a) + self.b.abs_diff(other.b) + self.c.abs_diff(other.c)
    }
}

impl From<[u64; 3]> for CellCounts {
    fn from([a, b, c]: [u64; 3]) -> Self {
        Self { a, b, c }
    }
}

impl From<CellCounts> for [u64; 3] {
    fn from(c: CellCounts) -> Self {
        [c.a, c.b, c.c]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GenotypeFile")]
pub struct Genotype {
    #[serde(flatten)]
    problem: ProblemKey,
    cells: Vec<CellCounts>,
}

#[derive(Deserialize)]
struct GenotypeFile {
    #[serde(rename = "M")]
    classes: usize,
    r: usize,
    cells: Vec<CellCounts>,
}

impl TryFrom<GenotypeFile> for Genotype {
    type Error = Error;

    fn try_from(f: GenotypeFile) -> Result<Self> {
        Genotype::new(ProblemKey::new(f.classes, f.r)?, f.cells)
    }
}

impl Genotype {
    pub fn new(problem: ProblemKey, cells: Vec<CellCounts>) -> Result<Self> {
        if cells.len() != problem.cells() {
            return Err(Error::CellCount {
                expected: problem.cells(),
                found: cells.len(),
            });
        }
        Ok(Self { problem, cells })
    }

    pub fn zeros(problem: ProblemKey) -> Self {
        Self::filled(problem, CellCounts::ZERO)
    }

    pub fn filled(problem: ProblemKey, cell: CellCounts) -> Self {
        Self {
            problem,
            cells: vec![cell; problem.cells()],
        }
    }

    pub fn problem(&self) -> ProblemKey {
        self.problem
    }

    pub fn cells(&self) -> &[CellCounts] {
        &self.cells
    }

    pub fn cells_mut(&mut self) -> &mut [CellCounts] {
        &mut self.cells
    }

    /// 1-based cell access, matching the class the cell is responsible for.
    pub fn cell(&self, m: usize) -> &CellCounts {
        &self.cells[m - 1]
    }

    pub fn last_cell(&self) -> &CellCounts {
        self.cells.last().expect("at least one cell")
    }

    pub fn ensure_problem(&self, key: ProblemKey) -> Result<()> {
        if self.problem != key {
            return Err(Error::ProblemMismatch {
                m: key.classes,
                r: key.r,
                found_m: self.problem.classes,
                found_r: self.problem.r,
            });
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("genotype serializes")
    }
}

/// Initial solution: every count uniform on `[1, s]`.
pub fn random_genotype(problem: ProblemKey, s: u64, rng: &mut SplitMix64) -> Genotype {
    assert!(s >= 1, "initialization bound must be at least 1");
    let cells = (0..problem.cells())
        .map(|_| {
            let a = rng.range_inclusive(1, s);
            let b = rng.range_inclusive(1, s);
            let c = rng.range_inclusive(1, s);
            CellCounts::new(a, b, c)
        })
        .collect();
    Genotype { problem, cells }
}
