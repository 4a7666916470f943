//! Box-counting dimension estimation for point sets on the line and in
//! the plane.
//!
//! Counting uses a grid anchored at 0 with half-open cells [j eps, (j+1) eps);
//! no grid-offset averaging. The estimate is the least-squares slope of
//! log N(eps) against log(1/eps) over the scales eps_j = base^-j that
//! survive the saturation window rule.

use crate::cantor::{BinaryAddress, CantorSet};
use crate::error::{Error, Result};
use crate::funcgen::CodeFunction;
use serde::Serialize;

/// Scales where the count reaches this fraction of the distinct point
/// count are in the saturation regime (the grid resolves the sample, not
/// the set) and are dropped. A count of 1 is never treated as saturated,
/// so degenerate single-point inputs still regress to slope 0.
pub const SATURATION_FRACTION: f64 = 0.9;

const MIN_SCALES: usize = 3;

#[derive(Clone, Debug, Serialize)]
pub struct BoxDimEstimate {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// (eps, count) pairs that entered the regression.
    pub scales_used: Vec<(f64, usize)>,
    pub window_rule_applied: String,
}

#[inline]
fn grid_index(x: f64, eps: f64) -> i64 {
    (x / eps).floor() as i64
}

/// Number of occupied cells [j eps, (j+1) eps) on the line.
pub fn box_count_1d(points: &[f64], eps: f64) -> usize {
    assert!(eps > 0.0, "box size must be positive");
    let mut cells: Vec<i64> = points.iter().map(|&x| grid_index(x, eps)).collect();
    cells.sort_unstable();
    cells.dedup();
    cells.len()
}

/// Number of occupied square cells on the plane.
pub fn box_count_2d(points: &[(f64, f64)], eps: f64) -> usize {
    assert!(eps > 0.0, "box size must be positive");
    let mut cells: Vec<(i64, i64)> = points
        .iter()
        .map(|&(x, y)| (grid_index(x, eps), grid_index(y, eps)))
        .collect();
    cells.sort_unstable();
    cells.dedup();
    cells.len()
}

fn distinct_1d(points: &[f64]) -> usize {
    let mut v: Vec<f64> = points.to_vec();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v.len()
}

fn distinct_2d(points: &[(f64, f64)]) -> usize {
    let mut v: Vec<(u64, u64)> = points
        .iter()
        .map(|&(x, y)| (x.to_bits(), y.to_bits()))
        .collect();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn estimate_from_counts(
    counts: Vec<(f64, usize)>,
    distinct: usize,
) -> Result<BoxDimEstimate> {
    let total = counts.len();
    let threshold = SATURATION_FRACTION * distinct as f64;
    let kept: Vec<(f64, usize)> = counts
        .into_iter()
        .filter(|&(_, n)| n == 1 || (n as f64) < threshold)
        .collect();
    let dropped = total - kept.len();
    if kept.len() < MIN_SCALES {
        return Err(Error::InsufficientScales {
            admissible: kept.len(),
            needed: MIN_SCALES,
        });
    }

    // least squares of ln N against ln(1/eps)
    let xs: Vec<f64> = kept.iter().map(|&(eps, _)| (1.0 / eps).ln()).collect();
    let ys: Vec<f64> = kept.iter().map(|&(_, n)| (n as f64).ln()).collect();
    let m = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / m;
    let mean_y = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x) * (x - mean_x)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_tot: f64 = ys.iter().map(|y| (y - mean_y) * (y - mean_y)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let e = y - (slope * x + intercept);
            e * e
        })
        .sum();
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };

    Ok(BoxDimEstimate {
        slope,
        intercept,
        r_squared,
        scales_used: kept,
        window_rule_applied: format!(
            "dropped {dropped}/{total} scales with count >= {SATURATION_FRACTION} * {distinct} distinct points (counts of 1 kept)"
        ),
    })
}

fn validate_scale_range(base: f64, j_min: u32, j_max: u32) -> Result<()> {
    if !base.is_finite() || base <= 1.0 {
        return Err(Error::Parameter(format!(
            "box-count base must exceed 1, got {base}"
        )));
    }
    if j_max <= j_min {
        return Err(Error::Parameter(format!(
            "scale range needs j_max > j_min, got {j_min}..{j_max}"
        )));
    }
    Ok(())
}

/// Box-dimension estimate for a set of reals over eps_j = base^-j,
/// j = j_min..=j_max.
pub fn box_dim(points: &[f64], base: f64, j_min: u32, j_max: u32) -> Result<BoxDimEstimate> {
    validate_scale_range(base, j_min, j_max)?;
    if points.is_empty() {
        return Err(Error::Parameter("no points to count".into()));
    }
    let counts = (j_min..=j_max)
        .map(|j| {
            let eps = base.powi(-(j as i32));
            (eps, box_count_1d(points, eps))
        })
        .collect();
    estimate_from_counts(counts, distinct_1d(points))
}

/// Planar variant of [`box_dim`].
pub fn box_dim_2d(
    points: &[(f64, f64)],
    base: f64,
    j_min: u32,
    j_max: u32,
) -> Result<BoxDimEstimate> {
    validate_scale_range(base, j_min, j_max)?;
    if points.is_empty() {
        return Err(Error::Parameter("no points to count".into()));
    }
    let counts = (j_min..=j_max)
        .map(|j| {
            let eps = base.powi(-(j as i32));
            (eps, box_count_2d(points, eps))
        })
        .collect();
    estimate_from_counts(counts, distinct_2d(points))
}

/// The sampled graph {(x(omega), f(omega))} over all addresses of length d,
/// in address order; x-coordinates are strictly increasing.
pub fn graph_points(set: &CantorSet, f: &CodeFunction, d: u32) -> Result<Vec<(f64, f64)>> {
    if d > set.depth() {
        return Err(Error::AddressRange {
            len: d,
            depth: set.depth(),
        });
    }
    BinaryAddress::all_of_len(d)
        .map(|addr| Ok((set.address_to_point(&addr)?, f.evaluate(&addr)?)))
        .collect()
}

/// Full Cartesian product, guarded by a size cap.
pub fn product_points(xs: &[f64], ys: &[f64], cap: u64) -> Result<Vec<(f64, f64)>> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::Parameter("product factors must be nonempty".into()));
    }
    let size = xs.len() as u128 * ys.len() as u128;
    if size > cap as u128 {
        return Err(Error::ProductTooLarge { size, cap });
    }
    let mut out = Vec::with_capacity(size as usize);
    for &x in xs {
        for &y in ys {
            out.push((x, y));
        }
    }
    Ok(out)
}
