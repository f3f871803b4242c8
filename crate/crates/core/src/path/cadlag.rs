use super::SampledPath;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Right-continuous path with left limits.
///
/// At knot `k` the path jumps from `left[k]` to `right[k]`; between knots it
/// runs linearly from `right[k]` to `left[k + 1]`. No jump at time 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CadlagPath {
    times: Vec<f64>,
    left: Vec<f64>,
    right: Vec<f64>,
}

impl CadlagPath {
    pub fn new(times: Vec<f64>, left: Vec<f64>, right: Vec<f64>) -> Result<Self> {
        if times.is_empty() {
            return Err(Error::EmptyInput);
        }
        if left.len() != times.len() || right.len() != times.len() {
            return Err(Error::DimensionMismatch {
                expected: times.len(),
                got: left.len().min(right.len()),
            });
        }
        for i in 0..times.len() {
            if !times[i].is_finite() || !left[i].is_finite() || !right[i].is_finite() {
                return Err(Error::NonFiniteValue(i));
            }
            if i > 0 && times[i] <= times[i - 1] {
                return Err(Error::NonMonotoneTime(i));
            }
        }
        if times.len() < 2 || times[0] != 0.0 || *times.last().unwrap() != 1.0 {
            return Err(Error::OutOfRange(times[0], *times.last().unwrap()));
        }
        if left[0] != right[0] {
            return Err(Error::InvalidArgument("jump at time 0".into()));
        }
        Ok(CadlagPath { times, left, right })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn left(&self) -> &[f64] {
        &self.left
    }

    pub fn right(&self) -> &[f64] {
        &self.right
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Jump sizes `right - left` at each knot.
    pub fn jumps(&self) -> Vec<f64> {
        self.left
            .iter()
            .zip(&self.right)
            .map(|(l, r)| r - l)
            .collect()
    }

    /// Values visited in time order: left limit then right value at each jump.
    pub fn interleaved_values(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * self.len());
        for k in 0..self.len() {
            if self.left[k] != self.right[k] {
                out.push(self.left[k]);
            }
            out.push(self.right[k]);
        }
        out
    }

    pub fn value_at(&self, t: f64) -> f64 {
        let n = self.times.len();
        if t >= self.times[n - 1] {
            return self.right[n - 1];
        }
        if t <= 0.0 {
            return self.right[0];
        }
        let k = self.times.partition_point(|&s| s <= t) - 1;
        let (t0, t1) = (self.times[k], self.times[k + 1]);
        self.right[k] + (self.left[k + 1] - self.right[k]) * (t - t0) / (t1 - t0)
    }
}

/// How the embedding distributes the time budget among jumps.
#[derive(Debug, Clone, PartialEq)]
pub enum JumpWeights {
    /// Proportional to jump size.
    Proportional,
    /// Equal share for every jump.
    Uniform,
    /// One non-negative weight per knot (ignored where there is no jump).
    Custom(Vec<f64>),
}

/// Where an original knot went: its jump occupies `[start, end]` in the new time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimeMapEntry {
    pub original: f64,
    pub start: f64,
    pub end: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedPath {
    pub path: SampledPath,
    pub time_map: Vec<TimeMapEntry>,
}

impl EmbeddedPath {
    /// New time corresponding to original time `t` (right value at a jump).
    pub fn map_time(&self, t: f64) -> f64 {
        let m = &self.time_map;
        let k = m.partition_point(|e| e.original <= t);
        if k == 0 {
            return m[0].end;
        }
        let e = m[k - 1];
        if e.original == t || k == m.len() {
            return e.end;
        }
        let f = m[k];
        e.end + (f.start - e.end) * (t - e.original) / (f.original - e.original)
    }

    /// Original time of new time `s`; a whole jump window maps to its jump time.
    pub fn original_time(&self, s: f64) -> f64 {
        let m = &self.time_map;
        let k = m.partition_point(|e| e.start <= s);
        if k == 0 {
            return m[0].original;
        }
        let e = m[k - 1];
        if s <= e.end || k == m.len() {
            return e.original;
        }
        let f = m[k];
        e.original + (f.original - e.original) * (s - e.end) / (f.start - e.end)
    }
}

/// Continuous path that runs through every jump linearly inside an opened window.
///
/// New time is `(t + W(t-) + w_t * x) / 2`, where `W` is the cumulative normalized
/// jump weight and `x` the fraction of the jump traversed. Without jumps the
/// time map is the identity.
pub fn embed_cadlag(path: &CadlagPath, weights: &JumpWeights) -> Result<EmbeddedPath> {
    let n = path.len();
    let jumps = path.jumps();
    let raw: Vec<f64> = match weights {
        JumpWeights::Proportional => jumps.iter().map(|j| j.abs()).collect(),
        JumpWeights::Uniform => jumps
            .iter()
            .map(|&j| if j != 0.0 { 1.0 } else { 0.0 })
            .collect(),
        JumpWeights::Custom(w) => {
            if w.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: w.len(),
                });
            }
            if w.iter().any(|x| !x.is_finite() || *x < 0.0) {
                return Err(Error::InvalidArgument("jump weights must be >= 0".into()));
            }
            w.iter()
                .zip(&jumps)
                .map(|(&w, &j)| if j != 0.0 { w } else { 0.0 })
                .collect()
        }
    };
    let total: f64 = raw.iter().sum();
    let has_jumps = jumps.iter().any(|&j| j != 0.0);
    if has_jumps && total <= 0.0 {
        return Err(Error::InvalidArgument(
            "every jump needs a positive weight".into(),
        ));
    }
    if has_jumps && raw.iter().zip(&jumps).any(|(&w, &j)| j != 0.0 && w <= 0.0) {
        return Err(Error::InvalidArgument(
            "every jump needs a positive weight".into(),
        ));
    }

    let mut times = Vec::with_capacity(2 * n);
    let mut values = Vec::with_capacity(2 * n);
    let mut time_map = Vec::with_capacity(n);
    let mut cum = 0.0;
    let push = |t: f64, v: f64, times: &mut Vec<f64>, values: &mut Vec<f64>| {
        let t = match times.last() {
            Some(&last) if t <= last => f64::next_up(last),
            _ => t,
        };
        times.push(t);
        values.push(v);
        t
    };
    for k in 0..n {
        let t = path.times[k];
        if !has_jumps {
            push(t, path.right[k], &mut times, &mut values);
            time_map.push(TimeMapEntry {
                original: t,
                start: t,
                end: t,
            });
            continue;
        }
        let w = raw[k] / total;
        let start = push(0.5 * (t + cum), path.left[k], &mut times, &mut values);
        let end = if jumps[k] != 0.0 {
            cum += w;
            push(0.5 * (t + cum), path.right[k], &mut times, &mut values)
        } else {
            start
        };
        time_map.push(TimeMapEntry {
            original: t,
            start,
            end,
        });
    }
    // Rounding in the cumulative sum must not move the end point off 1.
    let last = times.len() - 1;
    times[last] = 1.0;
    time_map.last_mut().unwrap().end = 1.0;
    if last > 0 && times[last - 1] >= 1.0 {
        return Err(Error::InvalidArgument("degenerate jump weights".into()));
    }
    Ok(EmbeddedPath {
        path: SampledPath::new(times, values)?,
        time_map,
    })
}
