//! The integral written over the tree of the integrator.
//!
//! Route A integrates against the flattened paths `omega^a` down the scale
//! grid. Route B integrates the level sums
//! `I^a = sum (rho(tau_up) - rho(tau_down))` over the leaves of `T^a` that do
//! not sit on the arc between the images of 0 and 1, and adds the integral
//! against the valley floor, which carries that arc.

use super::{gauss_rule, stieltjes, Integrand};
use crate::error::{Error, Result};
use crate::path::{valley_floor, RawExtension, SampledPath};
use crate::tree::{discretization_floor, flatten, leaf_pairs_seg, sweep, ScaleGrid};
use rayon::prelude::*;
use serde::Serialize;

/// Largest path (in knots) for which `Auto` integrates the level sums exactly.
pub const EXACT_LEVEL_CAP: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LevelQuadrature {
    /// `Exact` for small paths, `Grid` otherwise.
    Auto,
    /// Split `a` where the leaf configuration changes, Gauss-Legendre in between.
    Exact,
    /// Trapezoid over the scale grid, tail below the last scale as error bar.
    Grid,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TreeIntegralOptions {
    /// Stabilization tolerance, relative to `1 + |value|`.
    pub tol: f64,
    pub quadrature: LevelQuadrature,
    /// Gauss-Legendre panels per smooth piece of the Stieltjes integrals.
    pub panels: usize,
}

impl Default for TreeIntegralOptions {
    fn default() -> Self {
        TreeIntegralOptions {
            tol: 1e-6,
            quadrature: LevelQuadrature::Auto,
            panels: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreeIntegral {
    /// Route A at the finest scale.
    pub value: f64,
    pub route_a: f64,
    pub route_b: f64,
    /// `int I^a da`.
    pub level_part: f64,
    /// `int rho d(valley floor)`.
    pub valley_part: f64,
    /// `(a, int rho d omega^a)` down the grid.
    pub trace: Vec<(f64, f64)>,
    /// `(a, I^a)` on the grid.
    pub level_sums: Vec<(f64, f64)>,
    /// Estimated contribution of scales below the grid to route B.
    pub error_bar: f64,
    pub quadrature: LevelQuadrature,
    /// Trace is Cauchy at the last two scales and the routes agree.
    pub converged: bool,
}

impl TreeIntegral {
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NonConvergent(format!(
                "route A {} vs route B {} (error bar {})",
                self.route_a, self.route_b, self.error_bar
            )))
        }
    }
}

/// Grid used when none is given: the profile grid for finely sampled paths,
/// otherwise 61 scales from the range down to `1e-12` of it.
pub fn default_grid(path: &SampledPath) -> Result<ScaleGrid> {
    if path.is_constant() {
        return Err(Error::ConstantPath);
    }
    match discretization_floor(path) {
        Some(_) => ScaleGrid::for_path(path),
        None => ScaleGrid::between(path.range(), 1e-12 * path.range(), 61),
    }
}

/// Per leaf: boundary flag, knot segments of both times and their positions
/// among the integrand's own knots.
type Config = Vec<(bool, [usize; 4])>;

struct Levels<'a> {
    ext: RawExtension,
    rho: &'a Integrand,
}

impl Levels<'_> {
    fn eval(&self, a: f64) -> (f64, Config) {
        let ev = sweep(&self.ext.t, &self.ext.v, a);
        let pairs = leaf_pairs_seg(&self.ext.t, &self.ext.v, &ev);
        let mut sum = 0.0;
        let mut cfg = Vec::with_capacity(pairs.len());
        let bp = self.rho.breakpoints();
        for (p, seg) in pairs {
            if !p.boundary {
                sum += self.rho.eval(p.tau_up) - self.rho.eval(p.tau_down);
            }
            let ku = bp.partition_point(|&x| x <= p.tau_up);
            let kd = bp.partition_point(|&x| x <= p.tau_down);
            cfg.push((p.boundary, [seg[0], seg[1], ku, kd]));
        }
        (sum, cfg)
    }

    fn sum(&self, a: f64) -> f64 {
        self.eval(a).0
    }

    /// `int_0^range I^a da`, split wherever the leaf configuration changes.
    fn exact(&self, range: f64) -> f64 {
        let rule = gauss_rule();
        let eps = range * f64::EPSILON;
        let min_width = range * 1e-13;
        let (i_lo, c_lo) = self.eval(eps);
        let mut total = eps * i_lo;
        let hi = range;
        let (i_hi, c_hi) = self.eval(hi);
        let mut stack = vec![(eps, hi, i_lo, i_hi, c_lo, c_hi)];
        while let Some((a0, a1, i0, i1, c0, c1)) = stack.pop() {
            if c0 == c1 {
                let h = a1 - a0;
                total += h * rule
                    .iter()
                    .map(|&(x, w)| w * self.sum(a0 + x * h))
                    .sum::<f64>();
            } else if a1 - a0 <= min_width {
                total += 0.5 * (i0 + i1) * (a1 - a0);
            } else {
                let m = 0.5 * (a0 + a1);
                let (im, cm) = self.eval(m);
                stack.push((a0, m, i0, im, c0, cm.clone()));
                stack.push((m, a1, im, i1, cm, c1));
            }
        }
        total
    }
}

/// `I^a`: sum of `rho(tau_up) - rho(tau_down)` over the leaves of `T^a` off the root arc.
pub fn level_sum(rho: &Integrand, path: &SampledPath, a: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::NonPositiveScale(a));
    }
    let lv = Levels {
        ext: RawExtension::new(path),
        rho,
    };
    Ok(lv.sum(a))
}

pub fn tree_integral(
    rho: &Integrand,
    path: &SampledPath,
    grid: &ScaleGrid,
    opts: &TreeIntegralOptions,
) -> Result<TreeIntegral> {
    if path.is_constant() {
        return Err(Error::ConstantPath);
    }
    let range = path.range();
    let m = opts.panels;
    let floor = valley_floor(path);
    let valley_part = stieltjes(rho, &floor, m);

    let trace: Vec<(f64, f64)> = grid
        .scales
        .par_iter()
        .map(|&a| {
            let v = match flatten(path, a) {
                Ok(flat) => stieltjes(rho, &flat, m),
                Err(Error::EmptyTrimmedTree(_)) => valley_part,
                Err(e) => return Err(e),
            };
            Ok((a, v))
        })
        .collect::<Result<_>>()?;

    let lv = Levels {
        ext: RawExtension::new(path),
        rho,
    };
    let level_sums: Vec<(f64, f64)> = grid.scales.par_iter().map(|&a| (a, lv.sum(a))).collect();

    let quadrature = match opts.quadrature {
        LevelQuadrature::Auto if path.len() <= EXACT_LEVEL_CAP => LevelQuadrature::Exact,
        LevelQuadrature::Auto => LevelQuadrature::Grid,
        q => q,
    };
    let (level_part, error_bar) = match quadrature {
        LevelQuadrature::Exact => (lv.exact(range), 0.0),
        _ => {
            let mut pts: Vec<(f64, f64)> = Vec::with_capacity(level_sums.len() + 1);
            if level_sums[0].0 < range {
                pts.push((range, 0.0));
            }
            pts.extend(level_sums.iter().filter(|p| p.0 <= range));
            let s: f64 = pts
                .windows(2)
                .map(|w| 0.5 * (w[0].1 + w[1].1) * (w[0].0 - w[1].0))
                .sum();
            let (amin, imin) = *pts.last().unwrap();
            (s, amin * imin.abs())
        }
    };
    let route_b = level_part + valley_part;
    let route_a = trace.last().map(|p| p.1).unwrap_or(valley_part);
    let scale = 1.0 + route_a.abs();
    let cauchy = trace.len() >= 2 && {
        let k = trace.len();
        (trace[k - 1].1 - trace[k - 2].1).abs() <= opts.tol * scale
    };
    let agree = (route_a - route_b).abs() <= opts.tol * scale + error_bar;
    Ok(TreeIntegral {
        value: route_a,
        route_a,
        route_b,
        level_part,
        valley_part,
        trace,
        level_sums,
        error_bar,
        quadrature,
        converged: cauchy && agree,
    })
}

/// `sup_a sum |rho(tau_up) - rho(tau_down)|^q` over the grid, a lower bound
/// for the conditional q-variation of `rho` given `omega`.
pub fn conditional_variation_lb(
    rho: &Integrand,
    path: &SampledPath,
    q: f64,
    grid: &ScaleGrid,
) -> Result<f64> {
    if !(q >= 1.0) || !q.is_finite() {
        return Err(Error::InvalidExponent(q));
    }
    let ext = RawExtension::new(path);
    let best = grid
        .scales
        .par_iter()
        .map(|&a| {
            let ev = sweep(&ext.t, &ext.v, a);
            leaf_pairs_seg(&ext.t, &ext.v, &ev)
                .iter()
                .filter(|(p, _)| !p.boundary)
                .map(|(p, _)| (rho.eval(p.tau_up) - rho.eval(p.tau_down)).abs().powf(q))
                .sum::<f64>()
        })
        .reduce(|| 0.0, f64::max);
    Ok(best)
}
