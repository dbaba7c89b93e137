//! Region-level simulation of the cell/block network on MCC.
//!
//! Under optimal block parameters an A-block covers one segment, a B-block
//! one whole sector and a C-block one triangle, so a block is fully described
//! by the atomic region(s) it covers. Each cell ORs its blocks; the fixed
//! hidden layer and softmax turn the `M-1` cell bits into a class.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fitness::fitness;
use crate::genotype::{BlockType, CellCounts, Genotype};
use crate::geometry::{
    class_sectors, class_segment_sectors, class_triangle_sectors, enumerate_regions, locate_point,
    region_label, AtomicRegion, Location, ProblemKey, ProblemParams,
};
use crate::num::Scalar;

/// Weight from cell `j` into hidden neuron `i` (both 1-based).
pub fn hidden_weight(i: usize, j: usize) -> f64 {
    if j == i {
        1.0
    } else if j + 1 == i {
        0.5
    } else if j == i + 1 {
        0.4
    } else {
        0.0
    }
}

pub const LAST_NEURON_BIAS: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForwardOutput<T> {
    pub h: Vec<T>,
    #[serde(rename = "P")]
    pub p: Vec<T>,
    pub predicted_class: usize,
}

pub fn forward<T: Scalar>(p: &ProblemParams<T>, bits: &[bool]) -> Result<ForwardOutput<T>> {
    let classes = p.classes();
    if bits.len() != classes - 1 {
        return Err(Error::BitLength {
            expected: classes - 1,
            found: bits.len(),
        });
    }
    let h: Vec<T> = (1..=classes)
        .map(|i| {
            let bias = if i == classes { LAST_NEURON_BIAS } else { 0.0 };
            let sum: f64 = bits
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(j, _)| hidden_weight(i, j + 1))
                .sum();
            T::lit(sum + bias)
        })
        .collect();
    let max = h.iter().copied().fold(T::neg_infinity(), T::max);
    let exps: Vec<T> = h.iter().map(|&v| (v - max).exp()).collect();
    let total = exps.iter().copied().fold(T::zero(), |a, b| a + b);
    let probs = exps.into_iter().map(|e| e / total).collect();
    let mut predicted = 0;
    for (i, v) in h.iter().enumerate() {
        if *v > h[predicted] {
            predicted = i;
        }
    }
    Ok(ForwardOutput {
        h,
        p: probs,
        predicted_class: predicted + 1,
    })
}

/// Parses a bit string such as `"0110"`.
pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|ch| match ch {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Config(format!("invalid bit {other:?} in {s:?}"))),
        })
        .collect()
}

/// What a single block covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "TargetRepr", from = "TargetRepr")]
pub enum Target {
    Segment(usize),
    Sector(usize),
    Triangle(usize),
    Wasted,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TargetRepr {
    Wasted(WastedTag),
    Region { k: usize, part: TargetPart },
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum WastedTag {
    Wasted,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum TargetPart {
    Tri,
    Seg,
    Sector,
}

impl From<Target> for TargetRepr {
    fn from(t: Target) -> Self {
        match t {
            Target::Segment(k) => TargetRepr::Region {
                k,
                part: TargetPart::Seg,
            },
            Target::Sector(k) => TargetRepr::Region {
                k,
                part: TargetPart::Sector,
            },
            Target::Triangle(k) => TargetRepr::Region {
                k,
                part: TargetPart::Tri,
            },
            Target::Wasted => TargetRepr::Wasted(WastedTag::Wasted),
        }
    }
}

impl From<TargetRepr> for Target {
    fn from(t: TargetRepr) -> Self {
        match t {
            TargetRepr::Wasted(_) => Target::Wasted,
            TargetRepr::Region {
                k,
                part: TargetPart::Seg,
            } => Target::Segment(k),
            TargetRepr::Region {
                k,
                part: TargetPart::Sector,
            } => Target::Sector(k),
            TargetRepr::Region {
                k,
                part: TargetPart::Tri,
            } => Target::Triangle(k),
        }
    }
}

impl Target {
    fn regions(self) -> impl Iterator<Item = AtomicRegion> {
        let (tri, seg) = match self {
            Target::Segment(k) => (None, Some(k)),
            Target::Sector(k) => (Some(k), Some(k)),
            Target::Triangle(k) => (Some(k), None),
            Target::Wasted => (None, None),
        };
        tri.map(AtomicRegion::triangle)
            .into_iter()
            .chain(seg.map(AtomicRegion::segment))
    }

    fn fits(self, block: BlockType) -> bool {
        matches!(
            (block, self),
            (_, Target::Wasted)
                | (BlockType::A, Target::Segment(_))
                | (BlockType::B, Target::Sector(_))
                | (BlockType::C, Target::Triangle(_))
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockAssignment {
    pub cell: usize,
    #[serde(rename = "type")]
    pub block: BlockType,
    pub target: Target,
}

pub fn assignment_to_json(assignment: &[BlockAssignment]) -> String {
    serde_json::to_string(assignment).expect("assignment serializes")
}

pub fn assignment_from_json(text: &str) -> Result<Vec<BlockAssignment>> {
    Ok(serde_json::from_str(text)?)
}

/// Covered regions per cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coverage {
    pub cells: Vec<BTreeSet<AtomicRegion>>,
}

impl Coverage {
    /// Cell output bits for a point in `region`.
    pub fn bits(&self, region: AtomicRegion) -> Vec<bool> {
        self.cells.iter().map(|c| c.contains(&region)).collect()
    }
}

pub fn coverage<T: Scalar>(
    p: &ProblemParams<T>,
    assignment: &[BlockAssignment],
) -> Result<Coverage> {
    let cells = p.classes() - 1;
    let mut covered = vec![BTreeSet::new(); cells];
    for blk in assignment {
        if blk.cell == 0 || blk.cell > cells {
            return Err(Error::Assignment(format!(
                "cell {} outside 1..={cells}",
                blk.cell
            )));
        }
        if !blk.target.fits(blk.block) {
            return Err(Error::Assignment(format!(
                "{:?}-block cannot target {:?}",
                blk.block, blk.target
            )));
        }
        for reg in blk.target.regions() {
            if reg.sector == 0 || reg.sector > p.n {
                return Err(Error::SectorOutOfRange {
                    index: reg.sector,
                    sectors: p.n,
                });
            }
            covered[blk.cell - 1].insert(reg);
        }
    }
    Ok(Coverage { cells: covered })
}

/// Deterministic assignment realizing the closed-form counts, filling
/// targets in ascending sector order.
pub fn greedy_assignment<T: Scalar>(p: &ProblemParams<T>, g: &Genotype) -> Vec<BlockAssignment> {
    let r = p.r();
    let mut out = Vec::new();
    for (idx, cell) in g.cells().iter().enumerate() {
        let m = idx + 1;
        let sec = class_sectors(p, m);
        let tri = class_triangle_sectors(p, m);
        let seg = class_segment_sectors(p, m);
        let mut push = |block, target| {
            out.push(BlockAssignment {
                cell: m,
                block,
                target,
            })
        };

        let n_b = cell.b as usize;
        let main_b = n_b.min(r);
        for &k in &sec[..main_b] {
            push(BlockType::B, Target::Sector(k));
        }
        let open = &sec[main_b..];

        let mut n_c = cell.c as usize;
        let own_tri = n_c.min(r);
        for &k in &tri[..own_tri] {
            push(BlockType::C, Target::Triangle(k));
        }
        n_c -= own_tri;
        let paired_c = n_c.min(open.len());
        for &k in &open[..paired_c] {
            push(BlockType::C, Target::Triangle(k));
        }
        for _ in paired_c..n_c {
            push(BlockType::C, Target::Wasted);
        }

        let surplus_b = n_b - main_b;
        let extra_b = surplus_b.min(r - own_tri);
        for &k in &tri[own_tri..own_tri + extra_b] {
            push(BlockType::B, Target::Sector(k));
        }
        for _ in extra_b..surplus_b {
            push(BlockType::B, Target::Wasted);
        }

        let mut n_a = cell.a as usize;
        let own_seg = n_a.min(r);
        for &k in &seg[..own_seg] {
            push(BlockType::A, Target::Segment(k));
        }
        n_a -= own_seg;
        let paired_a = n_a.min(open.len());
        for &k in &open[..paired_a] {
            push(BlockType::A, Target::Segment(k));
        }
        for _ in paired_a..n_a {
            push(BlockType::A, Target::Wasted);
        }
    }
    out
}

fn region_correct<T: Scalar>(
    p: &ProblemParams<T>,
    region: AtomicRegion,
    bits: &[bool],
) -> Result<bool> {
    Ok(forward(p, bits)?.predicted_class == region_label(p, region)?)
}

/// Area fraction of the disc classified correctly under `assignment`.
pub fn accuracy<T: Scalar>(p: &ProblemParams<T>, assignment: &[BlockAssignment]) -> Result<T> {
    let cov = coverage(p, assignment)?;
    let mut correct = T::zero();
    for region in enumerate_regions(p) {
        if region_correct(p, region, &cov.bits(region))? {
            correct = correct + p.area(region.part);
        }
    }
    Ok(correct / T::PI())
}

/// Forward pass for a concrete input point.
pub fn classify_point<T: Scalar>(
    p: &ProblemParams<T>,
    assignment: &[BlockAssignment],
    x: [T; 2],
) -> Result<ForwardOutput<T>> {
    match locate_point(p, x) {
        Location::OutsideCircle => Err(Error::OutsideCircle {
            x: x[0].as_f64(),
            y: x[1].as_f64(),
        }),
        Location::Inside(region) => forward(p, &coverage(p, assignment)?.bits(region)),
    }
}

/// Limits for [`brute_force_best_accuracy`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceCaps {
    pub max_classes: usize,
    pub max_r: usize,
    pub max_count: u64,
}

impl Default for BruteForceCaps {
    fn default() -> Self {
        Self {
            max_classes: 3,
            max_r: 2,
            max_count: 3,
        }
    }
}

fn binomial(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Candidate targets per block type for cell `m`: its own class regions,
/// plus the sectors holding its second-half triangles for B.
fn candidate_targets<T>(p: &ProblemParams<T>, m: usize) -> [Vec<Target>; 3] {
    let sec = class_sectors(p, m);
    let tri = class_triangle_sectors(p, m);
    let seg = class_segment_sectors(p, m);
    let a = seg
        .iter()
        .chain(&sec)
        .map(|&k| Target::Segment(k))
        .collect();
    let b = sec.iter().chain(&tri).map(|&k| Target::Sector(k)).collect();
    let c = tri
        .iter()
        .chain(&sec)
        .map(|&k| Target::Triangle(k))
        .collect();
    [a, b, c]
}

/// Number of target multisets (with `Wasted`) the search ranges over.
pub fn enumeration_estimate<T>(p: &ProblemParams<T>, g: &Genotype) -> f64 {
    g.cells()
        .iter()
        .enumerate()
        .map(|(idx, cell)| {
            let cands = candidate_targets(p, idx + 1);
            BlockType::ALL
                .iter()
                .map(|&t| {
                    let n = cell.get(t);
                    binomial(cands[t.index()].len() as u64 + n, n)
                })
                .product::<f64>()
        })
        .product()
}

fn subset_masks(targets: &[Target], max_size: usize, n: usize) -> Vec<u64> {
    let mut masks = HashSet::new();
    let len = targets.len();
    for bits in 0u32..(1 << len) {
        if bits.count_ones() as usize > max_size {
            continue;
        }
        let mut mask = 0u64;
        for (i, t) in targets.iter().enumerate() {
            if bits >> i & 1 == 1 {
                for reg in t.regions() {
                    mask |= 1 << reg.index(n);
                }
            }
        }
        masks.insert(mask);
    }
    masks.into_iter().collect()
}

/// Best achievable accuracy over every assignment of the genotype's blocks
/// to candidate targets.
///
/// Each block either covers one candidate or nothing. Duplicate targets
/// cover nothing new, so the per-type choices collapse to subsets of at most
/// `n_type` candidates; the cells are then combined exhaustively.
pub fn brute_force_best_accuracy<T: Scalar>(
    p: &ProblemParams<T>,
    g: &Genotype,
    caps: BruteForceCaps,
) -> Result<T> {
    g.ensure_problem(p.key)?;
    let estimate = enumeration_estimate(p, g);
    let too_large = |reason: String| Err(Error::InstanceTooLarge { reason, estimate });
    if p.classes() > caps.max_classes {
        return too_large(format!("M = {} exceeds {}", p.classes(), caps.max_classes));
    }
    if p.r() > caps.max_r {
        return too_large(format!("r = {} exceeds {}", p.r(), caps.max_r));
    }
    if let Some(c) = g
        .cells()
        .iter()
        .flat_map(|c| BlockType::ALL.map(|t| c.get(t)))
        .find(|&n| n > caps.max_count)
    {
        return too_large(format!("block count {c} exceeds {}", caps.max_count));
    }

    let n = p.n;
    let cells = p.classes() - 1;
    let regions = enumerate_regions(p);

    // Area credited to each region for every cell-bit pattern.
    let patterns = 1usize << cells;
    let mut credit = vec![vec![T::zero(); patterns]; regions.len()];
    for (idx, &region) in regions.iter().enumerate() {
        for (pattern, slot) in credit[idx].iter_mut().enumerate() {
            let bits: Vec<bool> = (0..cells).map(|c| pattern >> c & 1 == 1).collect();
            if region_correct(p, region, &bits)? {
                *slot = p.area(region.part);
            }
        }
    }
    let baseline = credit.iter().fold(T::zero(), |acc, row| acc + row[0]);

    let cell_masks: Vec<Vec<u64>> = g
        .cells()
        .iter()
        .enumerate()
        .map(|(idx, counts)| {
            let [ca, cb, cc] = candidate_targets(p, idx + 1);
            let ma = subset_masks(&ca, counts.a as usize, n);
            let mb = subset_masks(&cb, counts.b as usize, n);
            let mc = subset_masks(&cc, counts.c as usize, n);
            let mut all = HashSet::new();
            for &x in &ma {
                for &y in &mb {
                    for &z in &mc {
                        all.insert(x | y | z);
                    }
                }
            }
            let mut v: Vec<u64> = all.into_iter().collect();
            v.sort_unstable();
            v
        })
        .collect();

    let score = |choice: &[u64]| -> T {
        let union = choice.iter().fold(0u64, |acc, m| acc | m);
        let mut total = baseline;
        let mut rest = union;
        while rest != 0 {
            let idx = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let pattern = choice
                .iter()
                .enumerate()
                .fold(0usize, |acc, (c, m)| acc | ((m >> idx & 1) as usize) << c);
            total = total + credit[idx][pattern] - credit[idx][0];
        }
        total
    };

    let best = cell_masks[0]
        .par_iter()
        .map(|&first| {
            let mut choice = vec![first; cells];
            let mut odometer = vec![0usize; cells];
            let mut best = T::neg_infinity();
            loop {
                for c in 1..cells {
                    choice[c] = cell_masks[c][odometer[c]];
                }
                best = best.max(score(&choice));
                let mut c = cells;
                loop {
                    c -= 1;
                    if c == 0 {
                        return best;
                    }
                    odometer[c] += 1;
                    if odometer[c] < cell_masks[c].len() {
                        break;
                    }
                    odometer[c] = 0;
                }
            }
        })
        .reduce(|| T::neg_infinity(), T::max);
    Ok(best / T::PI())
}

/// Every genotype of `key` with all counts in `0..=max_count`, the last
/// block type of the last cell varying fastest.
pub fn genotype_grid(key: ProblemKey, max_count: u64) -> impl Iterator<Item = Genotype> {
    let digits = 3 * key.cells();
    let base = max_count + 1;
    let total = base
        .checked_pow(digits as u32)
        .expect("grid size overflows u64");
    (0..total).map(move |mut code| {
        let mut counts = vec![0u64; digits];
        for slot in counts.iter_mut().rev() {
            *slot = code % base;
            code /= base;
        }
        let cells = counts
            .chunks(3)
            .map(|c| CellCounts::new(c[0], c[1], c[2]))
            .collect();
        Genotype::new(key, cells).expect("grid genotype matches its problem")
    })
}

/// Outcome of comparing the closed-form fitness with exhaustive search and
/// with the greedy construction over a genotype grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub genotypes: usize,
    pub max_deviation_brute_force: f64,
    pub max_deviation_greedy: f64,
    pub tolerance: f64,
    /// First genotype exceeding the tolerance, if any.
    pub first_mismatch: Option<Genotype>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

pub fn oracle_check<T: Scalar>(
    p: &ProblemParams<T>,
    max_count: u64,
    caps: BruteForceCaps,
    tolerance: f64,
) -> Result<OracleReport> {
    if max_count > caps.max_count {
        let worst = Genotype::filled(p.key, CellCounts::uniform(max_count));
        return Err(Error::InstanceTooLarge {
            reason: format!("block count {max_count} exceeds {}", caps.max_count),
            estimate: enumeration_estimate(p, &worst),
        });
    }
    let mut report = OracleReport {
        genotypes: 0,
        max_deviation_brute_force: 0.0,
        max_deviation_greedy: 0.0,
        tolerance,
        first_mismatch: None,
    };
    for g in genotype_grid(p.key, max_count) {
        let closed = fitness(p, &g).fitness.as_f64();
        let brute = brute_force_best_accuracy(p, &g, caps)?.as_f64();
        let greedy = accuracy(p, &greedy_assignment(p, &g))?.as_f64();
        let (db, dg) = ((brute - closed).abs(), (greedy - closed).abs());
        report.max_deviation_brute_force = report.max_deviation_brute_force.max(db);
        report.max_deviation_greedy = report.max_deviation_greedy.max(dg);
        if (db > tolerance || dg > tolerance) && report.first_mismatch.is_none() {
            report.first_mismatch = Some(g);
        }
        report.genotypes += 1;
    }
    Ok(report)
}
