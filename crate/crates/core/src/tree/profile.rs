//! Leaf counts and tree lengths over a grid of scales.

use super::{build_raw, sweep};
use crate::error::{Error, Result};
use crate::path::{RawExtension, SampledPath};
use rayon::prelude::*;
use serde::Serialize;

/// Default ratio between consecutive scales.
pub const DEFAULT_RATIO: f64 = 0.840_896_415_253_714_6; // 2^(-1/4)
pub const DEFAULT_SCALES: usize = 40;
/// Scales below this multiple of the largest knot increment are discretization noise.
pub const FLOOR_FACTOR: f64 = 4.0;

/// Decreasing list of positive scales.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaleGrid {
    pub scales: Vec<f64>,
    /// Discretization floor that was applied, if any.
    pub floor: Option<f64>,
}

impl ScaleGrid {
    /// `amax * ratio^k` for `k < count`.
    pub fn geometric(amax: f64, ratio: f64, count: usize) -> Result<Self> {
        if !(amax > 0.0) || !amax.is_finite() {
            return Err(Error::NonPositiveScale(amax));
        }
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "scale ratio {ratio} not in (0, 1)"
            )));
        }
        if count == 0 {
            return Err(Error::InvalidArgument("empty scale grid".into()));
        }
        let scales = (0..count).map(|k| amax * ratio.powi(k as i32)).collect();
        Ok(ScaleGrid {
            scales,
            floor: None,
        })
    }

    /// `count` geometrically spaced scales from `amax` down to `amin`.
    pub fn between(amax: f64, amin: f64, count: usize) -> Result<Self> {
        if !(amin > 0.0) {
            return Err(Error::NonPositiveScale(amin));
        }
        if !(amax >= amin) {
            return Err(Error::InvalidArgument(format!(
                "amax {amax} below amin {amin}"
            )));
        }
        if count == 1 || amax == amin {
            return Ok(ScaleGrid {
                scales: vec![amax],
                floor: None,
            });
        }
        let ratio = (amin / amax).powf(1.0 / (count - 1) as f64);
        let mut g = ScaleGrid::geometric(amax, ratio, count)?;
        *g.scales.last_mut().unwrap() = amin;
        Ok(g)
    }

    pub fn explicit(mut scales: Vec<f64>) -> Result<Self> {
        if scales.is_empty() {
            return Err(Error::InvalidArgument("empty scale grid".into()));
        }
        if let Some(&bad) = scales.iter().find(|a| !(**a > 0.0) || !a.is_finite()) {
            return Err(Error::NonPositiveScale(bad));
        }
        scales.sort_by(|a, b| b.partial_cmp(a).unwrap());
        scales.dedup();
        Ok(ScaleGrid {
            scales,
            floor: None,
        })
    }

    /// Default grid: `amax = sup - inf`, ratio `2^(-1/4)`, 40 scales, cut at the
    /// discretization floor when the path is finely sampled.
    pub fn for_path(path: &SampledPath) -> Result<Self> {
        let range = path.range();
        if range == 0.0 {
            return Err(Error::ConstantPath);
        }
        let g = ScaleGrid::geometric(range, DEFAULT_RATIO, DEFAULT_SCALES)?;
        Ok(match discretization_floor(path) {
            Some(f) => g.with_floor(f),
            None => g,
        })
    }

    /// Drop scales below `floor` (always keeps at least the largest scale).
    pub fn with_floor(mut self, floor: f64) -> Self {
        let keep = self.scales.iter().filter(|&&a| a >= floor).count().max(1);
        self.scales.truncate(keep);
        self.floor = Some(floor);
        self
    }
}

/// `FLOOR_FACTOR` times the largest knot increment, or `None` when that would
/// exceed the range (coarse deterministic paths are exact at every scale).
pub fn discretization_floor(path: &SampledPath) -> Option<f64> {
    let f = FLOOR_FACTOR * path.max_increment();
    (f < path.range()).then_some(f)
}

/// Per-scale leaf counts and lengths, with the exact branch-height census.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrimProfile {
    pub scales: Vec<f64>,
    /// `N^a` from the trimming sweep.
    pub counts: Vec<usize>,
    /// `L^a = int_a^inf N^b db`, integrated exactly from the census.
    pub lengths: Vec<f64>,
    /// `L^a` from the leaf-sum formula over the sweep events.
    pub lengths_leaf_sum: Vec<f64>,
    /// Drawdown statistic per scale (None below two leaves).
    pub drawdown: Vec<Option<f64>>,
    /// Branch heights in decreasing order; `N(a) = #{h >= a}`.
    pub heights: Vec<f64>,
    pub floor: Option<f64>,
    /// `sup - inf` of the path.
    pub range: f64,
}

impl TrimProfile {
    pub fn len(&self) -> usize {
        self.scales.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scales.is_empty()
    }

    /// `#{branch heights >= a}`.
    pub fn exact_count(&self, a: f64) -> usize {
        self.heights.partition_point(|&h| h >= a)
    }

    /// `sum (h - a)^+`.
    pub fn exact_length(&self, a: f64) -> f64 {
        let k = self.heights.partition_point(|&h| h > a);
        self.heights[..k].iter().map(|h| h - a).sum()
    }

    /// Right end of each step of `a -> N(a)`: `N = k` on `(h_{k+1}, h_k]`.
    pub fn breakpoints(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for (i, &h) in self.heights.iter().enumerate() {
            match out.last_mut() {
                Some(last) if last.0 == h => last.1 = i + 1,
                _ => out.push((h, i + 1)),
            }
        }
        out
    }

    pub fn total_leaves(&self) -> usize {
        self.heights.len()
    }

    /// Largest disagreement between the two length routes.
    pub fn length_discrepancy(&self) -> f64 {
        self.lengths
            .iter()
            .zip(&self.lengths_leaf_sum)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

pub fn trim_profile(path: &SampledPath, grid: &ScaleGrid) -> Result<TrimProfile> {
    if path.is_constant() {
        return Err(Error::ConstantPath);
    }
    let ext = RawExtension::new(path);
    let tree = build_raw(&ext.t, &ext.v);
    let heights = tree.persistence();
    let events: Vec<_> = grid
        .scales
        .par_iter()
        .map(|&a| sweep(&ext.t, &ext.v, a))
        .collect();
    let mut prof = TrimProfile {
        scales: grid.scales.clone(),
        counts: events.iter().map(|e| e.count).collect(),
        lengths: Vec::new(),
        lengths_leaf_sum: events.iter().map(|e| e.leaf_sum_length()).collect(),
        drawdown: events.iter().map(|e| e.drawdown_statistic()).collect(),
        heights,
        floor: grid.floor,
        range: path.range(),
    };
    prof.lengths = prof.scales.iter().map(|&a| prof.exact_length(a)).collect();
    Ok(prof)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::fixtures;

    #[test]
    fn p0_profile() {
        let g = ScaleGrid::explicit(vec![0.5, 1.5, 3.5]).unwrap();
        let p = trim_profile(&fixtures::p0(), &g).unwrap();
        assert_eq!(p.scales, vec![3.5, 1.5, 0.5]);
        assert_eq!(p.counts, vec![0, 1, 2]);
        assert_eq!(p.lengths, vec![0.0, 1.5, 3.0]);
        assert_eq!(p.lengths_leaf_sum, vec![0.0, 1.5, 3.0]);
        assert_eq!(p.breakpoints(), vec![(3.0, 1), (1.0, 2)]);
        assert_eq!(p.exact_count(1.0), 2);
        assert_eq!(p.exact_count(1.0001), 1);
        assert_eq!(p.exact_count(3.0), 1);
        assert_eq!(p.exact_count(3.0001), 0);
    }

    #[test]
    fn default_grid() {
        let g = ScaleGrid::for_path(&fixtures::p0()).unwrap();
        assert_eq!(g.scales.len(), DEFAULT_SCALES);
        assert_eq!(g.scales[0], 3.0);
        assert!((g.scales[4] - 1.5).abs() < 1e-15);
        assert_eq!(g.floor, None);
        let b = ScaleGrid::between(3.0, 0.5, 3).unwrap();
        assert_eq!(b.scales[0], 3.0);
        assert_eq!(b.scales[2], 0.5);
    }
}
