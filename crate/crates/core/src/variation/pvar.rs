//! Exact p-variation of a finite sequence.

use crate::error::{Error, Result};

/// Keep the end points and the strict local extrema; for `p >= 1` the
/// supremum over subdivisions only ever uses these.
pub fn turning_points(values: &[f64]) -> Vec<f64> {
    let mut dedup: Vec<f64> = Vec::with_capacity(values.len());
    for &x in values {
        if dedup.last() != Some(&x) {
            dedup.push(x);
        }
    }
    if dedup.len() <= 2 {
        return dedup;
    }
    let mut out = Vec::with_capacity(dedup.len());
    out.push(dedup[0]);
    for w in dedup.windows(3) {
        if (w[1] - w[0]) * (w[2] - w[1]) < 0.0 {
            out.push(w[1]);
        }
    }
    out.push(*dedup.last().unwrap());
    out
}

struct MinMaxTree {
    size: usize,
    mn: Vec<f64>,
    mx: Vec<f64>,
}

impl MinMaxTree {
    fn new(v: &[f64]) -> Self {
        let size = v.len().next_power_of_two();
        let mut mn = vec![f64::INFINITY; 2 * size];
        let mut mx = vec![f64::NEG_INFINITY; 2 * size];
        for (i, &x) in v.iter().enumerate() {
            mn[size + i] = x;
            mx[size + i] = x;
        }
        for i in (1..size).rev() {
            mn[i] = mn[2 * i].min(mn[2 * i + 1]);
            mx[i] = mx[2 * i].max(mx[2 * i + 1]);
        }
        MinMaxTree { size, mn, mx }
    }
}

/// `sup` over subdivisions of `sum |x_{t_{k+1}} - x_{t_k}|^p`, exactly.
///
/// Dynamic programme `best[j] = max_i best[i] + |x_j - x_i|^p` on the turning
/// points, with branch-and-bound over a min/max segment tree. `best` is
/// nondecreasing, so `best[hi] + (max distance to the block)^p` bounds a block.
pub fn pvar_exact(values: &[f64], p: f64) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidExponent(p));
    }
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let v = turning_points(values);
    let m = v.len();
    if m < 2 {
        return Ok(0.0);
    }
    if p == 1.0 {
        return Ok(v.windows(2).map(|w| (w[1] - w[0]).abs()).sum());
    }
    let tree = MinMaxTree::new(&v);
    let mut best = vec![0.0; m];
    let mut stack: Vec<(usize, usize, usize)> = Vec::with_capacity(64);
    for j in 1..m {
        let x = v[j];
        let mut cur = best[j - 1] + (x - v[j - 1]).abs().powf(p);
        if j >= 2 {
            // Candidates i in [0, j - 2].
            let last = j - 2;
            stack.clear();
            stack.push((1, 0, tree.size - 1));
            while let Some((node, lo, hi)) = stack.pop() {
                if lo > last {
                    continue;
                }
                let top = hi.min(last);
                let reach = (x - tree.mn[node]).abs().max((tree.mx[node] - x).abs());
                if best[top] + reach.powf(p) <= cur {
                    continue;
                }
                if lo == hi {
                    let c = best[lo] + (x - v[lo]).abs().powf(p);
                    if c > cur {
                        cur = c;
                    }
                    continue;
                }
                let mid = (lo + hi) / 2;
                // Left pushed first so the right (larger best) is explored first.
                stack.push((2 * node, lo, mid));
                stack.push((2 * node + 1, mid + 1, hi));
            }
        }
        best[j] = cur;
    }
    Ok(best[m - 1])
}
