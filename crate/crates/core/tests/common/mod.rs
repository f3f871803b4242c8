#![allow(dead_code)]

use pathforest::{CadlagPath, SampledPath};
use proptest::prelude::*;

/// Knot times from positive gaps, pinned to `[0, 1]`.
pub fn unit_times(gaps: &[f64]) -> Vec<f64> {
    let total: f64 = gaps.iter().sum();
    let mut t = Vec::with_capacity(gaps.len() + 1);
    t.push(0.0);
    let mut c = 0.0;
    for g in gaps {
        c += g;
        t.push(c / total);
    }
    *t.last_mut().unwrap() = 1.0;
    t
}

/// Random piecewise-linear path with `2..=max` knots, values in `[-lim, lim]`.
pub fn path_with(max: usize, lim: f64) -> impl Strategy<Value = SampledPath> {
    (2..=max)
        .prop_flat_map(move |n| {
            (
                prop::collection::vec(0.1f64..1.0, n - 1),
                prop::collection::vec(-lim..lim, n),
            )
        })
        .prop_map(|(gaps, v)| SampledPath::new(unit_times(&gaps), v).unwrap())
        .prop_filter("non-constant", |p| !p.is_constant())
}

pub fn path(max: usize) -> impl Strategy<Value = SampledPath> {
    path_with(max, 10.0)
}

/// Random cadlag path: some knots jump, the rest move continuously.
pub fn cadlag(max: usize) -> impl Strategy<Value = CadlagPath> {
    (3..=max)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(0.1f64..1.0, n - 1),
                prop::collection::vec(-5.0f64..5.0, n),
                prop::collection::vec(prop::option::weighted(0.4, -3.0f64..3.0), n),
            )
        })
        .prop_map(|(gaps, left, jumps)| {
            let right: Vec<f64> = left
                .iter()
                .zip(&jumps)
                .enumerate()
                .map(|(k, (l, j))| if k == 0 { *l } else { l + j.unwrap_or(0.0) })
                .collect();
            CadlagPath::new(unit_times(&gaps), left, right).unwrap()
        })
}

/// Two-sample Kolmogorov-Smirnov distance.
pub fn ks2(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| x.partial_cmp(y).unwrap());
    b.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / a.len() as f64 - j as f64 / b.len() as f64).abs());
    }
    d
}

/// KS distance of a sample against the uniform law on `[0, 1]`.
pub fn ks_uniform(xs: &[f64]) -> f64 {
    let mut x = xs.to_vec();
    x.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = x.len() as f64;
    x.iter()
        .enumerate()
        .map(|(i, &v)| ((i + 1) as f64 / n - v).max(v - i as f64 / n))
        .fold(0.0, f64::max)
}

/// Union of the knot times of two paths.
pub fn merged_times(a: &SampledPath, b: &SampledPath) -> Vec<f64> {
    let mut t: Vec<f64> = a.times().iter().chain(b.times()).cloned().collect();
    t.sort_by(|x, y| x.partial_cmp(y).unwrap());
    t.dedup();
    t
}
