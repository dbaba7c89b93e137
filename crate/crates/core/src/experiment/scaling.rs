use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Regressor `rM·ln(rM)`.
pub fn scaling_x(classes: usize, r: usize) -> f64 {
    let t = (classes * r) as f64;
    t * t.ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub coefficient: f64,
    pub r_squared: f64,
    pub points: usize,
}

/// Least-squares fit of `y ≈ c·x` through the origin, with the coefficient of
/// determination measured against the mean of `y`.
pub fn fit_scaling(points: &[(f64, f64)]) -> Result<ScalingFit> {
    if points.len() < 3 {
        return Err(Error::DegenerateFit(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    if points.iter().all(|p| p.0 == points[0].0) {
        return Err(Error::DegenerateFit("all x values are equal".into()));
    }
    let sxy: f64 = points.iter().map(|(x, y)| x * y).sum();
    let sxx: f64 = points.iter().map(|(x, _)| x * x).sum();
    let c = sxy / sxx;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / points.len() as f64;
    let ss_res: f64 = points.iter().map(|(x, y)| (y - c * x).powi(2)).sum();
    let ss_tot: f64 = points.iter().map(|(_, y)| (y - mean_y).powi(2)).sum();
    let r_squared = if ss_tot == 0.0 {
        if ss_res == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        1.0 - ss_res / ss_tot
    };
    Ok(ScalingFit {
        coefficient: c,
        r_squared,
        points: points.len(),
    })
}
