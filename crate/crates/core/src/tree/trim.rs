//! Trimming times, leaves of the trimmed tree and the flattened path.

use crate::error::{Error, Result};
use crate::path::polyline::{self, crossing};
use crate::path::{RawExtension, SampledPath};
use serde::Serialize;

/// Alternating drawdown/drawup stopping times at one scale.
///
/// Times are reported on `[0, 1]` (clipped when the sweep runs into the ramps
/// of the minimal extension). `s` and `u` omit the initial `S_0 = U_0 = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrimEvents {
    pub scale: f64,
    /// `T_1 .. T_N`.
    pub t: Vec<f64>,
    /// `S_1 .. S_{N-1}` (and `S_N` when it exists).
    pub s: Vec<f64>,
    /// Argmin on `[T_i, S_i]`, one per entry of `s`.
    pub u: Vec<f64>,
    /// Number of leaves of the trimmed tree.
    pub count: usize,
    /// Path values at `T_i` and at `S_0, S_1, ...` (`S_0` is the infimum).
    pub t_values: Vec<f64>,
    pub s_values: Vec<f64>,
    /// Whether the last `T` fell after time 1 (in the right ramp).
    pub last_t_clipped: bool,
    #[serde(skip)]
    pub(crate) t_raw: Vec<f64>,
    #[serde(skip)]
    pub(crate) t_seg: Vec<usize>,
}

impl TrimEvents {
    /// `sum_{i=1}^{N} (omega(T_i) - omega(S_{i-1})) + (N - 1) a`, the tree length above `a`.
    pub fn leaf_sum_length(&self) -> f64 {
        if self.count == 0 {
            return 0.0;
        }
        let s: f64 = (0..self.count)
            .map(|i| self.t_values[i] - self.s_values[i])
            .sum();
        s + (self.count as f64 - 1.0) * self.scale
    }

    /// `(1 / (a N)) sum_{i=1}^{N-1} (omega(T_i) - omega(S_{i-1}))`.
    pub fn drawdown_statistic(&self) -> Option<f64> {
        if self.count < 2 {
            return None;
        }
        let s: f64 = (0..self.count - 1)
            .map(|i| self.t_values[i] - self.s_values[i])
            .sum();
        Some(s / (self.scale * self.count as f64))
    }
}

/// One sweep over the extended knots.
pub(crate) fn sweep(t: &[f64], v: &[f64], a: f64) -> TrimEvents {
    let n = t.len();
    let mut ev = TrimEvents {
        scale: a,
        t: Vec::new(),
        s: Vec::new(),
        u: Vec::new(),
        count: 0,
        t_values: Vec::new(),
        s_values: vec![v[0]],
        last_t_clipped: false,
        t_raw: Vec::new(),
        t_seg: Vec::new(),
    };
    // Current position: on segment k at (ct, cv).
    let (mut k, mut ct, mut cv) = (0usize, t[0], v[0]);
    'outer: loop {
        // Seek T: first time the drawdown from the running max reaches a.
        // Non-strict, so a branch of height exactly a is kept, as in
        // `N(a) = #{h >= a}`; elsewhere this is the infimum of the strict set.
        let mut m = cv;
        loop {
            if k + 1 >= n {
                break 'outer;
            }
            let y1 = v[k + 1];
            if y1 > m {
                m = y1;
            } else {
                let level = m - a;
                if y1 <= level {
                    let tc = if cv <= level {
                        ct
                    } else {
                        crossing(ct, cv, t[k + 1], y1, level)
                    };
                    ev.t_raw.push(tc);
                    ev.t_seg.push(k);
                    ev.t.push(tc.clamp(0.0, 1.0));
                    ev.t_values.push(level);
                    ev.count += 1;
                    ct = tc;
                    cv = level;
                    break;
                }
            }
            k += 1;
            ct = t[k];
            cv = v[k];
        }
        // Seek S: first time the drawup from the running min reaches a.
        let mut m = cv;
        let mut um = ct;
        loop {
            if k + 1 >= n {
                break 'outer;
            }
            let y1 = v[k + 1];
            if y1 < m {
                m = y1;
                um = t[k + 1];
            } else {
                let level = m + a;
                if y1 >= level {
                    let tc = if cv >= level {
                        ct
                    } else {
                        crossing(ct, cv, t[k + 1], y1, level)
                    };
                    ev.s.push(tc.clamp(0.0, 1.0));
                    ev.u.push(um.clamp(0.0, 1.0));
                    ev.s_values.push(level);
                    ct = tc;
                    cv = level;
                    break;
                }
            }
            k += 1;
            ct = t[k];
            cv = v[k];
        }
    }
    if let Some(&last) = ev.t_raw.last() {
        ev.last_t_clipped = last > 1.0;
    }
    ev
}

fn check_scale(a: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::NonPositiveScale(a));
    }
    Ok(())
}

/// Stopping times of the trimming sweep at scale `a`.
pub fn trim_events(path: &SampledPath, a: f64) -> Result<TrimEvents> {
    check_scale(a)?;
    let ext = RawExtension::new(path);
    Ok(sweep(&ext.t, &ext.v, a))
}

/// Leaf of the trimmed tree: `tau_up` and `tau_down` are the first and last
/// times mapped onto it, both at `level`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LeafPair {
    pub tau_up: f64,
    pub tau_down: f64,
    pub level: f64,
    /// The leaf lies on the arc joining the images of 0 and 1: one of its
    /// times falls in a ramp of the extension and was clipped.
    pub boundary: bool,
}

pub(crate) fn leaf_pairs_raw(t: &[f64], v: &[f64], ev: &TrimEvents) -> Vec<LeafPair> {
    leaf_pairs_seg(t, v, ev)
        .into_iter()
        .map(|(p, _)| p)
        .collect()
}

/// Leaf pairs together with the knot segments holding `tau_up` and `tau_down`.
pub(crate) fn leaf_pairs_seg(t: &[f64], v: &[f64], ev: &TrimEvents) -> Vec<(LeafPair, [usize; 2])> {
    let mut out = Vec::with_capacity(ev.count);
    for i in 0..ev.count {
        let down = ev.t_raw[i];
        let level = ev.t_values[i];
        // Last knot strictly before T_i, then walk back until the path dips below level.
        let mut j = ev.t_seg[i];
        if t[j] >= down && j > 0 {
            j -= 1;
        }
        while j > 0 && !(v[j] < level) {
            j -= 1;
        }
        let up = if v[j] < level {
            crossing(t[j], v[j], t[j + 1], v[j + 1], level)
        } else {
            t[0]
        };
        let pair = LeafPair {
            tau_up: up.clamp(0.0, 1.0),
            tau_down: down.clamp(0.0, 1.0),
            level,
            boundary: up < 0.0 || down > 1.0,
        };
        out.push((pair, [j, ev.t_seg[i]]));
    }
    out
}

pub fn leaf_pairs(path: &SampledPath, a: f64) -> Result<Vec<LeafPair>> {
    check_scale(a)?;
    let ext = RawExtension::new(path);
    let ev = sweep(&ext.t, &ext.v, a);
    Ok(leaf_pairs_raw(&ext.t, &ext.v, &ev))
}

/// Flattened path `omega^a(t) = omega(inf {u >= t : pi(u) in T^a})`.
///
/// On each `[T_i, T_{i+1}]` this is the running minimum from `T_i` until the
/// argmin and the minimum over the remaining time afterwards.
pub fn flatten(path: &SampledPath, a: f64) -> Result<SampledPath> {
    check_scale(a)?;
    let ext = RawExtension::new(path);
    let ev = sweep(&ext.t, &ext.v, a);
    // At a = sup - inf the trimmed tree is the root alone.
    if ev.count == 0 || a >= path.range() {
        return Err(Error::EmptyTrimmedTree(a));
    }
    let (t, v) = (&ext.t, &ext.v);
    // Knots with the T_i inserted; cuts holds their indices.
    let mut at = Vec::with_capacity(t.len() + ev.count);
    let mut av = Vec::with_capacity(t.len() + ev.count);
    let mut cuts = vec![0usize];
    let mut next = 0;
    let mut pending = false;
    for k in 0..t.len() {
        at.push(t[k]);
        av.push(v[k]);
        if pending {
            cuts.push(at.len() - 1);
            pending = false;
        }
        // At most one T per segment: between two of them the path must climb.
        if next < ev.count && ev.t_seg[next] == k {
            let tc = ev.t_raw[next];
            if tc == t[k] {
                cuts.push(at.len() - 1);
            } else if k + 1 < t.len() && tc == t[k + 1] {
                pending = true;
            } else {
                at.push(tc);
                av.push(ev.t_values[next]);
                cuts.push(at.len() - 1);
            }
            next += 1;
        }
    }
    cuts.push(at.len() - 1);
    cuts.dedup();
    let mut ot = Vec::with_capacity(at.len());
    let mut ov = Vec::with_capacity(at.len());
    for w in cuts.windows(2) {
        polyline::valley(&at[w[0]..=w[1]], &av[w[0]..=w[1]], &mut ot, &mut ov);
    }
    // Restrict to the original domain.
    let lo = ot.partition_point(|&x| x < 0.0);
    let hi = ot.partition_point(|&x| x <= 1.0);
    let mut rt = ot[lo..hi].to_vec();
    let mut rv = ov[lo..hi].to_vec();
    polyline::compress_flats(&mut rt, &mut rv);
    Ok(SampledPath::from_raw_unchecked(rt, rv))
}
