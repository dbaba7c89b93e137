//! Fixtures and checks shared by the integration test targets.
#![allow(dead_code)]

use std::collections::BTreeMap;

use enas_lab::fitness::{fitness, is_optimal, match_vector, partition_coords};
use enas_lab::network::{
    accuracy, assignment_from_json, coverage, forward, genotype_grid, greedy_assignment,
    BlockAssignment,
};
use enas_lab::{AtomicRegion, CellCounts, Genotype, Problem, ProblemKey};

pub fn fig2b() -> (Problem, Genotype) {
    let p = enas_lab::problem(3, 2).unwrap();
    let g = Genotype::new(
        p.key,
        vec![CellCounts::new(0, 3, 0), CellCounts::new(1, 3, 0)],
    )
    .unwrap();
    (p, g)
}

/// Block placement drawn in the figure: cell 1 on sectors 1, 4, 7; cell 2 on
/// sectors 2, 5, 11 with its A-block on segment 7.
pub fn figure_assignment() -> Vec<BlockAssignment> {
    assignment_from_json(
        r#"[
        {"cell": 1, "type": "B", "target": {"k": 1, "part": "sector"}},
        {"cell": 1, "type": "B", "target": {"k": 4, "part": "sector"}},
        {"cell": 1, "type": "B", "target": {"k": 7, "part": "sector"}},
        {"cell": 2, "type": "A", "target": {"k": 7, "part": "seg"}},
        {"cell": 2, "type": "B", "target": {"k": 2, "part": "sector"}},
        {"cell": 2, "type": "B", "target": {"k": 5, "part": "sector"}},
        {"cell": 2, "type": "B", "target": {"k": 11, "part": "sector"}}
    ]"#,
    )
    .unwrap()
}

pub struct TableRow {
    pub case: usize,
    /// `sec7`, `tri7` or `seg7`.
    pub regions: &'static [&'static str],
    pub label: usize,
    pub bits: &'static str,
    pub h: [f64; 3],
    pub probs: [f64; 3],
    pub predicted: usize,
    pub correct: bool,
}

pub const TABLE: [TableRow; 7] = [
    TableRow {
        case: 1,
        regions: &["sec1", "sec4", "tri7"],
        label: 1,
        bits: "10",
        h: [1.0, 0.5, 0.1],
        probs: [0.50, 0.30, 0.20],
        predicted: 1,
        correct: true,
    },
    TableRow {
        case: 2,
        regions: &["seg9", "tri10", "seg12"],
        label: 1,
        bits: "00",
        h: [0.0, 0.0, 0.1],
        probs: [0.32, 0.32, 0.36],
        predicted: 3,
        correct: false,
    },
    TableRow {
        case: 3,
        regions: &["sec2", "sec5", "tri11"],
        label: 2,
        bits: "01",
        h: [0.4, 1.0, 0.6],
        probs: [0.25, 0.45, 0.30],
        predicted: 2,
        correct: true,
    },
    TableRow {
        case: 4,
        regions: &["tri8", "seg10"],
        label: 2,
        bits: "00",
        h: [0.0, 0.0, 0.1],
        probs: [0.32, 0.32, 0.36],
        predicted: 3,
        correct: false,
    },
    TableRow {
        case: 5,
        regions: &["seg7"],
        label: 2,
        bits: "11",
        h: [1.4, 1.5, 0.6],
        probs: [0.39, 0.43, 0.18],
        predicted: 2,
        correct: true,
    },
    TableRow {
        case: 6,
        regions: &["sec3", "sec6", "tri9", "tri12", "seg8"],
        label: 3,
        bits: "00",
        h: [0.0, 0.0, 0.1],
        probs: [0.32, 0.32, 0.36],
        predicted: 3,
        correct: true,
    },
    TableRow {
        case: 7,
        regions: &["seg11"],
        label: 3,
        bits: "01",
        h: [0.4, 1.0, 0.6],
        probs: [0.25, 0.45, 0.30],
        predicted: 2,
        correct: false,
    },
];

pub fn expand(name: &str) -> Vec<AtomicRegion> {
    let k: usize = name[3..].parse().unwrap();
    match &name[..3] {
        "sec" => vec![AtomicRegion::triangle(k), AtomicRegion::segment(k)],
        "tri" => vec![AtomicRegion::triangle(k)],
        "seg" => vec![AtomicRegion::segment(k)],
        other => panic!("unknown region kind {other}"),
    }
}

/// Checks every row of the worked table against the figure assignment.
pub fn check_table_row(row: &TableRow) -> Result<(), String> {
    let (p, _) = fig2b();
    let cov = coverage(&p, &figure_assignment()).map_err(|e| e.to_string())?;
    for name in row.regions {
        for region in expand(name) {
            let label = enas_lab::geometry::region_label(&p, region).unwrap();
            if label != row.label {
                return Err(format!(
                    "{region} has label {label}, table says {}",
                    row.label
                ));
            }
            let bits = cov.bits(region);
            let text: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
            if text != row.bits {
                return Err(format!(
                    "{region}: cell outputs {text}, expected {}",
                    row.bits
                ));
            }
            let out = forward(&p, &bits).unwrap();
            for (got, want) in out.h.iter().zip(row.h) {
                if (got - want).abs() > 1e-12 {
                    return Err(format!("{region}: h = {:?}, expected {:?}", out.h, row.h));
                }
            }
            for (got, want) in out.p.iter().zip(row.probs) {
                if (got - want).abs() > 0.005 {
                    return Err(format!(
                        "{region}: P = {:?}, expected {:?}",
                        out.p, row.probs
                    ));
                }
            }
            if out.predicted_class != row.predicted {
                return Err(format!(
                    "{region}: class {}, expected {}",
                    out.predicted_class, row.predicted
                ));
            }
            if (out.predicted_class == label) != row.correct {
                return Err(format!("{region}: correctness flag disagrees"));
            }
        }
    }
    Ok(())
}

/// Direct transcription of the closed-form fitness, kept separate from the
/// library so the two can be compared.
pub fn fitness_by_hand(m: usize, r: usize, cells: &[CellCounts]) -> f64 {
    use std::f64::consts::PI;
    let (r, n) = (r as u64, (2 * r * m) as f64);
    let tri = 0.5 * (2.0 * PI / n).sin();
    let seg = PI / n - tri;
    let mut big_i = 0;
    let mut big_j = 0;
    for c in cells {
        big_i += (c.b + c.c).min(2 * r);
        big_j += c.b.min(r) + c.a.min(r + r.saturating_sub(c.b));
    }
    let last = cells.last().unwrap();
    let eps = (last.b as i64 - r as i64)
        .min(r as i64 - last.c as i64)
        .max(0) as u64;
    (tri * (big_i + 2 * r) as f64 + seg * (big_j + 2 * r - eps) as f64) / PI
}

/// Grid properties of the fitness for one instance; returns the number of
/// genotypes checked.
pub fn check_fitness_grid(m: usize, r: usize, max_count: u64) -> Result<usize, String> {
    let p = enas_lab::problem(m, r).unwrap();
    let key = ProblemKey::new(m, r).unwrap();
    let n_cells = (m - 1) as u64;
    let big_n = 2 * r as u64 * n_cells;
    let lo = 1.0 / m as f64;
    let mut by_coords: BTreeMap<(u64, u64), (f64, f64)> = BTreeMap::new();
    let mut count = 0;
    for g in genotype_grid(key, max_count) {
        let fb = fitness(&p, &g);
        let f = fb.fitness;
        let ctx = || g.to_json();
        if !(lo - 1e-12..=1.0 + 1e-12).contains(&f) {
            return Err(format!("fitness {f} outside [1/M, 1] for {}", ctx()));
        }
        if (f - fitness_by_hand(m, r, g.cells())).abs() > 1e-12 {
            return Err(format!("hand transcription disagrees for {}", ctx()));
        }
        if (accuracy(&p, &greedy_assignment(&p, &g)).unwrap() - f).abs() > 1e-9 {
            return Err(format!("greedy accuracy disagrees for {}", ctx()));
        }
        if fb.j_total < fb.epsilon {
            return Err(format!("J - eps negative for {}", ctx()));
        }
        if ((f - 1.0).abs() < 1e-12) != is_optimal(&p, &g) {
            return Err(format!("fitness 1 and optimality disagree for {}", ctx()));
        }
        if fb.i_total < big_n {
            let ones = match_vector(&p, &g).ones as u64;
            let floor = fb.i_total.saturating_sub(n_cells * (2 * r as u64 - 1));
            if ones < floor || ones > fb.i_total / (2 * r as u64) {
                return Err(format!(
                    "match vector ones {ones} out of bounds for {}",
                    ctx()
                ));
            }
        }
        for cell in 0..g.cells().len() {
            for t in enas_lab::BlockType::ALL {
                let mut h = g.clone();
                *h.cells_mut()[cell].get_mut(t) += 1;
                let after = fitness(&p, &h).fitness;
                if after < f {
                    return Err(format!(
                        "adding {t:?} to cell {} lowers fitness of {}",
                        cell + 1,
                        ctx()
                    ));
                }
            }
        }
        let e = by_coords.entry(partition_coords(&p, &g)).or_insert((f, f));
        e.0 = e.0.min(f);
        e.1 = e.1.max(f);
        count += 1;
    }
    // Lexicographic order on (I, J - eps) must be strict order on fitness.
    let groups: Vec<_> = by_coords.into_iter().collect();
    for w in groups.windows(2) {
        let ((c1, (_, hi1)), (c2, (lo2, _))) = (w[0], w[1]);
        if hi1 >= lo2 {
            return Err(format!("coordinates {c1:?} and {c2:?} overlap in fitness"));
        }
    }
    Ok(count)
}
