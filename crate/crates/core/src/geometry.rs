//! The MCC benchmark instance: a unit disc cut into `n = 2rM` equal sectors,
//! each split by its chord into a triangle and a segment.
//!
//! Sector `k` (1-based) spans angles `[(k-1)·2π/n, k·2π/n)`. Sectors
//! `1..=rM` belong wholesale to class `((k-1) mod M) + 1`; in sectors
//! `rM+1..=n` the triangle keeps that class and the segment carries the next
//! class cyclically.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::Scalar;

/// The `(M, r)` pair that identifies an instance everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProblemKey {
    #[serde(rename = "M")]
    pub classes: usize,
    pub r: usize,
}

impl ProblemKey {
    pub fn new(classes: usize, r: usize) -> Result<Self> {
        if classes < 2 {
            return Err(Error::ParameterDomain(format!(
                "M = {classes}, need M >= 2"
            )));
        }
        if r < 2 {
            return Err(Error::ParameterDomain(format!("r = {r}, need r >= 2")));
        }
        Ok(Self { classes, r })
    }

    pub fn sectors(&self) -> usize {
        2 * self.r * self.classes
    }

    /// `N = 2r(M-1)`, the range of the aggregate triangle/segment counts.
    pub fn phase_scale(&self) -> usize {
        2 * self.r * (self.classes - 1)
    }

    pub fn cells(&self) -> usize {
        self.classes - 1
    }
}

impl fmt::Display for ProblemKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(M={}, r={})", self.classes, self.r)
    }
}

/// A fully derived instance with exact region areas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemParams<T> {
    pub key: ProblemKey,
    /// Sector count `n = 2rM`.
    pub n: usize,
    /// Per-class counts of segments, sectors and triangles (`a = b = c = r`).
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// `N = n - 2r`.
    pub big_n: usize,
    pub ar_tri: T,
    pub ar_seg: T,
    pub ar_sec: T,
}

pub fn make_problem<T: Scalar>(classes: usize, r: usize) -> Result<ProblemParams<T>> {
    ProblemParams::from_key(ProblemKey::new(classes, r)?)
}

impl<T: Scalar> ProblemParams<T> {
    pub fn from_key(key: ProblemKey) -> Result<Self> {
        let key = ProblemKey::new(key.classes, key.r)?;
        let n = key.sectors();
        let nf = T::from_count(n as u64);
        let ar_sec = T::PI() / nf;
        let ar_tri = T::lit(0.5) * (T::TAU() / nf).sin();
        let ar_seg = ar_sec - ar_tri;
        Ok(Self {
            key,
            n,
            a: key.r,
            b: key.r,
            c: key.r,
            big_n: key.phase_scale(),
            ar_tri,
            ar_seg,
            ar_sec,
        })
    }

    pub fn classes(&self) -> usize {
        self.key.classes
    }

    pub fn r(&self) -> usize {
        self.key.r
    }

    pub fn area(&self, part: Part) -> T {
        match part {
            Part::Triangle => self.ar_tri,
            Part::Segment => self.ar_seg,
        }
    }

    pub fn sector_width(&self) -> T {
        T::TAU() / T::from_count(self.n as u64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Part {
    #[serde(rename = "tri")]
    Triangle,
    #[serde(rename = "seg")]
    Segment,
}

/// One triangle or one segment: the finest unit any block acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomicRegion {
    /// 1-based sector index.
    pub sector: usize,
    pub part: Part,
}

impl AtomicRegion {
    pub fn triangle(sector: usize) -> Self {
        Self {
            sector,
            part: Part::Triangle,
        }
    }

    pub fn segment(sector: usize) -> Self {
        Self {
            sector,
            part: Part::Segment,
        }
    }

    /// Dense index in `0..2n`: triangles first, then segments.
    pub fn index(&self, n: usize) -> usize {
        match self.part {
            Part::Triangle => self.sector - 1,
            Part::Segment => n + self.sector - 1,
        }
    }

    pub fn from_index(index: usize, n: usize) -> Self {
        if index < n {
            Self::triangle(index + 1)
        } else {
            Self::segment(index - n + 1)
        }
    }
}

impl fmt::Display for AtomicRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.part {
            Part::Triangle => write!(f, "S_tri^{}", self.sector),
            Part::Segment => write!(f, "S_seg^{}", self.sector),
        }
    }
}

fn check_sector<T>(p: &ProblemParams<T>, sector: usize) -> Result<()> {
    if sector == 0 || sector > p.n {
        return Err(Error::SectorOutOfRange {
            index: sector,
            sectors: p.n,
        });
    }
    Ok(())
}

/// The class (1-based) owning every point of `region`.
pub fn region_label<T>(p: &ProblemParams<T>, region: AtomicRegion) -> Result<usize> {
    check_sector(p, region.sector)?;
    let m = p.key.classes;
    let base = (region.sector - 1) % m + 1;
    let second_half = region.sector > p.key.r * m;
    Ok(match (second_half, region.part) {
        (true, Part::Segment) => base % m + 1,
        _ => base,
    })
}

/// Class owning the whole sector in the first half; `None` for second-half
/// sectors, whose two parts differ.
pub fn sector_class<T>(p: &ProblemParams<T>, sector: usize) -> Option<usize> {
    (sector >= 1 && sector <= p.key.r * p.key.classes).then(|| (sector - 1) % p.key.classes + 1)
}

/// Sectors of `Sec^m`, ascending.
pub fn class_sectors<T>(p: &ProblemParams<T>, m: usize) -> Vec<usize> {
    (0..p.key.r).map(|k| m + k * p.key.classes).collect()
}

/// Sectors whose triangle forms `Tri^m`, ascending.
pub fn class_triangle_sectors<T>(p: &ProblemParams<T>, m: usize) -> Vec<usize> {
    (p.key.r..2 * p.key.r)
        .map(|k| m + k * p.key.classes)
        .collect()
}

/// Sectors whose segment forms `Seg^m`, ascending.
pub fn class_segment_sectors<T>(p: &ProblemParams<T>, m: usize) -> Vec<usize> {
    let classes = p.key.classes;
    (p.key.r..2 * p.key.r)
        .map(|k| {
            if m == 1 {
                (k + 1) * classes
            } else {
                (m - 1) + k * classes
            }
        })
        .collect()
}

/// Result of locating a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside(AtomicRegion),
    OutsideCircle,
}

/// Finds the atomic region containing `x`. Boundary rays go to the
/// higher-index sector; chord points go to the triangle.
pub fn locate_point<T: Scalar>(p: &ProblemParams<T>, x: [T; 2]) -> Location {
    let [px, py] = x;
    if px.hypot(py) > T::one() {
        return Location::OutsideCircle;
    }
    let mut angle = py.atan2(px);
    if angle < T::zero() {
        angle = angle + T::TAU();
    }
    let width = p.sector_width();
    let k = ((angle / width).floor().to_usize().unwrap_or(0) + 1).clamp(1, p.n);
    let bisector = (T::from_count(k as u64) - T::lit(0.5)) * width;
    let along = px * bisector.cos() + py * bisector.sin();
    let part = if along > (T::PI() / T::from_count(p.n as u64)).cos() {
        Part::Segment
    } else {
        Part::Triangle
    };
    Location::Inside(AtomicRegion { sector: k, part })
}

/// All `2n` atomic regions: triangles `1..=n`, then segments `1..=n`.
pub fn enumerate_regions<T>(p: &ProblemParams<T>) -> Vec<AtomicRegion> {
    (1..=p.n)
        .map(AtomicRegion::triangle)
        .chain((1..=p.n).map(AtomicRegion::segment))
        .collect()
}

/// A point strictly inside `region`, away from every boundary.
pub fn interior_point<T: Scalar>(p: &ProblemParams<T>, region: AtomicRegion) -> [T; 2] {
    let width = p.sector_width();
    let theta = (T::from_count(region.sector as u64) - T::lit(0.5)) * width;
    let chord = (T::PI() / T::from_count(p.n as u64)).cos();
    let radius = match region.part {
        Part::Triangle => chord * T::lit(0.5),
        Part::Segment => (chord + T::one()) * T::lit(0.5),
    };
    [radius * theta.cos(), radius * theta.sin()]
}
