//! p-variation, its tree bounds, and roughness / Hurst estimators built on
//! the trimming profile.

mod pvar;

pub use pvar::{pvar_exact, turning_points};

use crate::error::{Error, Result};
use crate::path::SampledPath;
use crate::tree::{build_merge_tree, trim_events, TrimProfile};
use serde::Serialize;

/// Scales kept by the estimators need at least this many leaves.
pub const MIN_LEAVES: usize = 20;
pub const MIN_SCALES: usize = 5;
pub const MIN_R2: f64 = 0.9;
/// Above this many knots `pvar_bounds` skips the exact value.
pub const EXACT_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PvarBounds {
    pub p: f64,
    /// `sup_a a^p N^a`.
    pub lower: f64,
    /// `2 sup_a a^p N^a`, valid when `omega(0) = omega(1) = inf omega`.
    pub lower_doubled: Option<f64>,
    /// `2p int h^(p-1) d lambda`.
    pub upper: f64,
    pub exact: Option<f64>,
}

/// `sup_a a^p #{h >= a}` over the census of branch heights (sorted decreasingly).
pub fn census_lower_bound(heights: &[f64], p: f64) -> f64 {
    let mut best: f64 = 0.0;
    let mut i = 0;
    while i < heights.len() {
        let h = heights[i];
        let mut j = i;
        while j < heights.len() && heights[j] == h {
            j += 1;
        }
        best = best.max(h.powf(p) * j as f64);
        i = j;
    }
    best
}

pub fn pvar_bounds(path: &SampledPath, p: f64) -> Result<PvarBounds> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidExponent(p));
    }
    let tree = build_merge_tree(path)?;
    let lower = census_lower_bound(&tree.persistence(), p);
    let upper = 2.0 * p * tree.height_integral(p)?;
    let exact = if path.len() <= EXACT_CAP {
        Some(pvar_exact(path.values(), p)?)
    } else {
        None
    };
    Ok(PvarBounds {
        p,
        lower,
        lower_doubled: path.satisfies_root_condition().then_some(2.0 * lower),
        upper,
        exact,
    })
}

/// Range of scales the estimators may use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Window {
    pub amin: f64,
    pub amax: f64,
    pub min_leaves: usize,
}

impl Default for Window {
    fn default() -> Self {
        Window {
            amin: 0.0,
            amax: f64::INFINITY,
            min_leaves: MIN_LEAVES,
        }
    }
}

impl Window {
    pub fn between(amin: f64, amax: f64) -> Self {
        Window {
            amin,
            amax,
            ..Window::default()
        }
    }

    /// Indices of profile scales inside the window, above the discretization
    /// floor, with enough leaves and below saturation (all leaves resolved).
    pub fn select(&self, prof: &TrimProfile) -> Vec<usize> {
        let floor = prof.floor.unwrap_or(0.0);
        let total = prof.total_leaves();
        (0..prof.len())
            .filter(|&k| {
                let a = prof.scales[k];
                let n = prof.counts[k];
                a >= self.amin
                    && a <= self.amax
                    && a >= floor
                    && n >= self.min_leaves
                    && n < total
                    && prof.lengths[k] > 0.0
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Ordinary least squares of `y` on `x`.
pub fn fit_line(x: &[f64], y: &[f64]) -> LineFit {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxx += (a - mx) * (a - mx);
        sxy += (a - mx) * (b - my);
        syy += (b - my) * (b - my);
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    LineFit {
        slope,
        intercept: my - slope * mx,
        r2,
    }
}

/// NaN for an empty slice.
pub fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

/// Regression of `log N^a` (and `log L^a`) on `log(1/a)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingFit {
    /// `max(slope, 1)`: estimate of the variation index and upper box dimension.
    pub estimate: f64,
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    /// `slope of log L^a + 1`.
    pub length_estimate: f64,
    /// Smallest and largest scale used.
    pub window: (f64, f64),
    pub scales_used: usize,
    /// The tree is finite and fully resolved, so `N^a` stays bounded.
    pub bounded: bool,
}

fn log_axes(prof: &TrimProfile, idx: &[usize]) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let x = idx.iter().map(|&k| -prof.scales[k].ln()).collect();
    let yn = idx.iter().map(|&k| (prof.counts[k] as f64).ln()).collect();
    let yl = idx.iter().map(|&k| prof.lengths[k].ln()).collect();
    (x, yn, yl)
}

pub fn variation_index(prof: &TrimProfile, window: &Window) -> Result<ScalingFit> {
    let idx = window.select(prof);
    if idx.len() < MIN_SCALES {
        if prof.total_leaves() < window.min_leaves {
            let lo = prof.scales.last().copied().unwrap_or(0.0);
            let hi = prof.scales.first().copied().unwrap_or(0.0);
            return Ok(ScalingFit {
                estimate: 1.0,
                slope: 0.0,
                intercept: (prof.total_leaves() as f64).ln(),
                r2: 1.0,
                length_estimate: 1.0,
                window: (lo, hi),
                scales_used: 0,
                bounded: true,
            });
        }
        return Err(Error::InsufficientScales(idx.len(), MIN_SCALES));
    }
    let (x, yn, yl) = log_axes(prof, &idx);
    let fit = fit_line(&x, &yn);
    if !(fit.r2 >= MIN_R2) {
        return Err(Error::PoorFit(fit.r2));
    }
    let lfit = fit_line(&x, &yl);
    Ok(ScalingFit {
        estimate: fit.slope.max(1.0),
        slope: fit.slope,
        intercept: fit.intercept,
        r2: fit.r2,
        length_estimate: lfit.slope + 1.0,
        window: (prof.scales[*idx.last().unwrap()], prof.scales[idx[0]]),
        scales_used: idx.len(),
        bounded: false,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HurstEstimate {
    /// `1 / (1 + median_a a N^a / L^a)`.
    pub hurst: f64,
    pub ratio_median: f64,
    /// From the slope of `log L^a`: `1 / (1 + slope)`.
    pub regression_hurst: f64,
    pub r2: f64,
    pub window: (f64, f64),
    pub scales_used: usize,
}

pub fn hurst_ratio(prof: &TrimProfile, window: &Window) -> Result<HurstEstimate> {
    let idx = window.select(prof);
    if idx.len() < MIN_SCALES {
        return Err(Error::InsufficientScales(idx.len(), MIN_SCALES));
    }
    let mut ratios: Vec<f64> = idx
        .iter()
        .map(|&k| prof.scales[k] * prof.counts[k] as f64 / prof.lengths[k])
        .collect();
    let ratio = median(&mut ratios);
    let (x, _, yl) = log_axes(prof, &idx);
    let lfit = fit_line(&x, &yl);
    Ok(HurstEstimate {
        hurst: 1.0 / (1.0 + ratio),
        ratio_median: ratio,
        regression_hurst: 1.0 / (1.0 + lfit.slope),
        r2: lfit.r2,
        window: (prof.scales[*idx.last().unwrap()], prof.scales[idx[0]]),
        scales_used: idx.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DrawdownEstimate {
    /// `(1 / (a N^a)) sum_{i < N} (omega(T_i) - omega(S_{i-1}))`, tends to `(2H - 1) / (1 - H)`.
    pub statistic: f64,
    /// `(statistic + 1) / (statistic + 2)`.
    pub hurst: f64,
    pub scale: f64,
    pub leaves: usize,
}

fn drawdown_hurst(stat: f64) -> f64 {
    (stat + 1.0) / (stat + 2.0)
}

/// Drawdown estimator at a single scale.
pub fn hurst_drawdown(path: &SampledPath, a: f64) -> Result<DrawdownEstimate> {
    let ev = trim_events(path, a)?;
    let statistic = ev
        .drawdown_statistic()
        .ok_or(Error::TooFewLeaves(ev.count))?;
    if ev.count < MIN_LEAVES {
        return Err(Error::TooFewLeaves(ev.count));
    }
    Ok(DrawdownEstimate {
        statistic,
        hurst: drawdown_hurst(statistic),
        scale: a,
        leaves: ev.count,
    })
}

/// Drawdown estimator at the finest usable scale of a profile. The statistic
/// carries a bias of order `a^(1/H - 1)` from the coarse branches, so coarser
/// scales only make it worse.
pub fn hurst_drawdown_profile(prof: &TrimProfile, window: &Window) -> Result<DrawdownEstimate> {
    let idx = window.select(prof);
    let Some((k, statistic)) = idx
        .iter()
        .filter_map(|&k| prof.drawdown[k].map(|d| (k, d)))
        .min_by(|a, b| prof.scales[a.0].partial_cmp(&prof.scales[b.0]).unwrap())
    else {
        let most = prof.counts.iter().copied().max().unwrap_or(0);
        return Err(Error::TooFewLeaves(
            most.min(window.min_leaves.saturating_sub(1)),
        ));
    };
    Ok(DrawdownEstimate {
        statistic,
        hurst: drawdown_hurst(statistic),
        scale: prof.scales[k],
        leaves: prof.counts[k],
    })
}

/// Expected excursion time `xi(a) = E[S^a + T^a]` for the check `xi(a) N^a -> 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum Xi {
    /// `2 a^2 / sigma^2`.
    Brownian { sigma: f64 },
    /// `c a^alpha`.
    Power { c: f64, alpha: f64 },
    /// Mean time between consecutive drawdown stopping times, estimated
    /// from the ensemble itself.
    Empirical,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevyCheck {
    pub scales: Vec<f64>,
    /// Ensemble mean of `xi(a) N^a` per scale.
    pub mean: Vec<f64>,
    /// Standard error of the mean.
    pub stderr: Vec<f64>,
}

/// Ensemble check of `xi(a) N^a -> 1`. `cycles[m][k]` is the mean gap between
/// stopping times of member `m` at scale `k` (only needed for [`Xi::Empirical`]).
pub fn levy_xi_check(
    profiles: &[TrimProfile],
    xi: &Xi,
    cycles: Option<&[Vec<f64>]>,
) -> Result<LevyCheck> {
    if profiles.is_empty() {
        return Err(Error::EmptyInput);
    }
    let scales = profiles[0].scales.clone();
    if profiles.iter().any(|p| p.scales != scales) {
        return Err(Error::InvalidArgument(
            "profiles use different grids".into(),
        ));
    }
    let m = profiles.len() as f64;
    let mut mean = Vec::with_capacity(scales.len());
    let mut stderr = Vec::with_capacity(scales.len());
    for (k, &a) in scales.iter().enumerate() {
        let xs: Vec<f64> = match xi {
            Xi::Brownian { sigma } => {
                let x = 2.0 * a * a / (sigma * sigma);
                profiles.iter().map(|p| x * p.counts[k] as f64).collect()
            }
            Xi::Power { c, alpha } => {
                let x = c * a.powf(*alpha);
                profiles.iter().map(|p| x * p.counts[k] as f64).collect()
            }
            Xi::Empirical => {
                let cyc = cycles.ok_or_else(|| {
                    Error::InvalidArgument("empirical xi needs cycle times".into())
                })?;
                let pooled: f64 = cyc.iter().map(|c| c[k]).sum::<f64>() / m;
                profiles
                    .iter()
                    .map(|p| pooled * p.counts[k] as f64)
                    .collect()
            }
        };
        let mu = xs.iter().sum::<f64>() / m;
        let var = xs.iter().map(|x| (x - mu).powi(2)).sum::<f64>() / (m - 1.0).max(1.0);
        mean.push(mu);
        stderr.push((var / m).sqrt());
    }
    Ok(LevyCheck {
        scales,
        mean,
        stderr,
    })
}

/// Summary written by the `pvar` command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariationReport {
    pub schema: u32,
    pub p: f64,
    pub exact: Option<f64>,
    pub lower: f64,
    pub lower_doubled: Option<f64>,
    pub upper: f64,
    pub index: Option<f64>,
    pub hurst_ratio: Option<f64>,
    pub hurst_drawdown: Option<f64>,
    pub window: Option<(f64, f64)>,
    pub r2: Option<f64>,
}

impl VariationReport {
    pub fn new(bounds: &PvarBounds, fit: Option<&ScalingFit>) -> Self {
        VariationReport {
            schema: 1,
            p: bounds.p,
            exact: bounds.exact,
            lower: bounds.lower,
            lower_doubled: bounds.lower_doubled,
            upper: bounds.upper,
            index: fit.map(|f| f.estimate),
            hurst_ratio: None,
            hurst_drawdown: None,
            window: fit.map(|f| f.window),
            r2: fit.map(|f| f.r2),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{fixtures, star_path};
    use crate::tree::{trim_profile, ScaleGrid};

    #[test]
    fn p0_bounds() {
        let b = pvar_bounds(&fixtures::p0(), 2.0).unwrap();
        assert_eq!(b.lower, 9.0);
        assert_eq!(b.lower_doubled, Some(18.0));
        assert_eq!(b.exact, Some(18.0));
        assert_eq!(b.upper, 20.0);
        assert!(pvar_bounds(&fixtures::p1(), 2.0)
            .unwrap()
            .lower_doubled
            .is_none());
    }

    #[test]
    fn finite_tree_has_index_one() {
        let p = fixtures::p0();
        let prof = trim_profile(&p, &ScaleGrid::for_path(&p).unwrap()).unwrap();
        let fit = variation_index(&prof, &Window::default()).unwrap();
        assert_eq!(fit.estimate, 1.0);
        assert!(fit.bounded);
    }

    #[test]
    fn star_index() {
        let s = star_path(0.5, 64).unwrap();
        let grid = ScaleGrid::geometric(1.0, 2f64.powf(-1.0 / 16.0), 80).unwrap();
        let prof = trim_profile(&s, &grid).unwrap();
        let fit = variation_index(&prof, &Window::default()).unwrap();
        assert!((fit.estimate - 2.0).abs() < 0.2, "{fit:?}");
    }

    #[test]
    fn line_fit_exact() {
        let f = fit_line(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]);
        assert_eq!((f.slope, f.intercept, f.r2), (2.0, 1.0, 1.0));
    }

    #[test]
    fn median_even_odd() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
        assert!(median(&mut []).is_nan());
    }
}
