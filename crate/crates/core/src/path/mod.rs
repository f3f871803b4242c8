//! Piecewise-linear paths on `[0, 1]`, interval infima, the tree semi-distance,
//! the minimal extension and the valley floor.

mod cadlag;
pub(crate) mod polyline;

pub use cadlag::{embed_cadlag, CadlagPath, EmbeddedPath, JumpWeights, TimeMapEntry};

use crate::error::{Error, Result};
use crate::rmq::RangeMinIndex;
use serde::{Deserialize, Serialize};

/// Continuous path given by its knots and linear interpolation between them.
///
/// Times start at 0, end at 1 and are strictly increasing; values are finite.
/// The path may be constant (integrands and valley floors often are); the
/// tree-building operations reject constant paths themselves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledPath {
    times: Vec<f64>,
    values: Vec<f64>,
}

fn check_knots(times: &[f64], values: &[f64]) -> Result<()> {
    if times.is_empty() || values.is_empty() {
        return Err(Error::EmptyInput);
    }
    if times.len() != values.len() {
        return Err(Error::DimensionMismatch {
            expected: times.len(),
            got: values.len(),
        });
    }
    for (i, (&t, &v)) in times.iter().zip(values).enumerate() {
        if !t.is_finite() || !v.is_finite() {
            return Err(Error::NonFiniteValue(i));
        }
        if i > 0 && t <= times[i - 1] {
            return Err(Error::NonMonotoneTime(i));
        }
    }
    Ok(())
}

impl SampledPath {
    /// Build from knots already on `[0, 1]`.
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        check_knots(&times, &values)?;
        if times.len() < 2 {
            return Err(Error::NonMonotoneTime(0));
        }
        if times[0] != 0.0 || *times.last().unwrap() != 1.0 {
            return Err(Error::OutOfRange(times[0], *times.last().unwrap()));
        }
        Ok(SampledPath { times, values })
    }

    /// Knots at `k / n` for `k = 0..=n`.
    pub fn uniform(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::EmptyInput);
        }
        let n = (values.len() - 1) as f64;
        let mut times: Vec<f64> = (0..values.len()).map(|k| k as f64 / n).collect();
        *times.last_mut().unwrap() = 1.0;
        SampledPath::new(times, values)
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        let (t, v) = pairs.iter().cloned().unzip();
        SampledPath::new(t, v)
    }

    pub(crate) fn from_raw_unchecked(times: Vec<f64>, values: Vec<f64>) -> Self {
        debug_assert!(check_knots(&times, &values).is_ok());
        SampledPath { times, values }
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Linear interpolation; clamps outside `[0, 1]`.
    pub fn value_at(&self, t: f64) -> f64 {
        polyline::eval(&self.times, &self.values, t)
    }

    pub fn inf(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn sup(&self) -> f64 {
        self.values
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `sup - inf`.
    pub fn range(&self) -> f64 {
        self.sup() - self.inf()
    }

    pub fn is_constant(&self) -> bool {
        self.range() == 0.0
    }

    pub fn total_variation(&self) -> f64 {
        self.values.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
    }

    /// Largest increment between consecutive knots.
    pub fn max_increment(&self) -> f64 {
        self.values
            .windows(2)
            .map(|w| (w[1] - w[0]).abs())
            .fold(0.0, f64::max)
    }

    /// Whether `omega(0) = omega(1) = inf omega`.
    pub fn satisfies_root_condition(&self) -> bool {
        let inf = self.inf();
        self.values[0] == inf && *self.values.last().unwrap() == inf
    }

    /// Infimum over `[s, t]` by a linear scan. See [`PathIndex`] for repeated queries.
    pub fn infimum(&self, s: f64, t: f64) -> Result<f64> {
        check_interval(s, t)?;
        let (i, j) = self.interior_range(s, t);
        let mut m = self.value_at(s).min(self.value_at(t));
        if i < j {
            m = self.values[i..j].iter().cloned().fold(m, f64::min);
        }
        Ok(m)
    }

    /// Half-open index range of knots strictly inside `(s, t)`.
    fn interior_range(&self, s: f64, t: f64) -> (usize, usize) {
        let i = self.times.partition_point(|&x| x <= s);
        let j = self.times.partition_point(|&x| x < t);
        (i, j.max(i))
    }

    /// Knots scaled by a constant.
    pub fn scaled(&self, c: f64) -> SampledPath {
        SampledPath {
            times: self.times.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// The piece over `[s, t]`, with time rescaled affinely onto `[0, 1]`.
    pub fn restrict(&self, s: f64, t: f64) -> Result<SampledPath> {
        check_interval(s, t)?;
        if s == t {
            return Err(Error::OutOfRange(s, t));
        }
        let (i, j) = self.interior_range(s, t);
        let w = t - s;
        let mut times = Vec::with_capacity(j - i + 2);
        let mut values = Vec::with_capacity(j - i + 2);
        times.push(0.0);
        values.push(self.value_at(s));
        for k in i..j {
            let u = (self.times[k] - s) / w;
            if u > *times.last().unwrap() && u < 1.0 {
                times.push(u);
                values.push(self.values[k]);
            }
        }
        times.push(1.0);
        values.push(self.value_at(t));
        Ok(SampledPath { times, values })
    }

    /// Values at `k / m`, `k = 0..=m`, in one pass over the knots.
    pub fn sample_uniform(&self, m: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(m + 1);
        let mut k = 0;
        let n = self.times.len();
        for i in 0..=m {
            let x = i as f64 / m as f64;
            while k + 2 < n && self.times[k + 1] <= x {
                k += 1;
            }
            out.push(polyline::lerp(
                self.times[k],
                self.values[k],
                self.times[k + 1],
                self.values[k + 1],
                x.clamp(self.times[k], self.times[k + 1]),
            ));
        }
        out
    }
}

fn check_interval(s: f64, t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&s) || !(0.0..=1.0).contains(&t) || s > t {
        return Err(Error::OutOfRange(s, t));
    }
    Ok(())
}

/// Affinely rescale raw time stamps onto `[0, 1]`.
pub fn normalize(times: &[f64], values: &[f64]) -> Result<SampledPath> {
    check_knots(times, values)?;
    if times.len() < 2 {
        return Err(Error::ConstantPath);
    }
    let (t0, t1) = (times[0], *times.last().unwrap());
    let span = t1 - t0;
    let mut ts: Vec<f64> = times.iter().map(|t| (t - t0) / span).collect();
    ts[0] = 0.0;
    *ts.last_mut().unwrap() = 1.0;
    for i in 1..ts.len() {
        if ts[i] <= ts[i - 1] {
            return Err(Error::NonMonotoneTime(i));
        }
    }
    let path = SampledPath::new(ts, values.to_vec())?;
    if path.is_constant() {
        return Err(Error::ConstantPath);
    }
    Ok(path)
}

/// Preprocessed path answering interval infima and `delta` in O(log n).
#[derive(Debug, Clone)]
pub struct PathIndex<'a> {
    path: &'a SampledPath,
    rmq: RangeMinIndex,
}

impl<'a> PathIndex<'a> {
    pub fn new(path: &'a SampledPath) -> Self {
        PathIndex {
            path,
            rmq: RangeMinIndex::new(&path.values),
        }
    }

    pub fn infimum(&self, s: f64, t: f64) -> Result<f64> {
        check_interval(s, t)?;
        let (i, j) = self.path.interior_range(s, t);
        let mut m = self.path.value_at(s).min(self.path.value_at(t));
        if i < j {
            m = m.min(self.rmq.min(i, j - 1));
        }
        Ok(m)
    }

    /// Tree semi-distance `omega(s) + omega(t) - 2 inf_[s,t] omega`; symmetric in its arguments.
    pub fn delta(&self, s: f64, t: f64) -> Result<f64> {
        let (lo, hi) = if s <= t { (s, t) } else { (t, s) };
        let m = self.infimum(lo, hi)?;
        Ok(self.path.value_at(lo) + self.path.value_at(hi) - 2.0 * m)
    }
}

/// Semi-distance without preprocessing.
pub fn delta(path: &SampledPath, s: f64, t: f64) -> Result<f64> {
    let (lo, hi) = if s <= t { (s, t) } else { (t, s) };
    let m = path.infimum(lo, hi)?;
    Ok(path.value_at(lo) + path.value_at(hi) - 2.0 * m)
}

/// Minimal extension: ramps down to the infimum before 0 and after 1 where needed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extension {
    /// Extended path, re-normalized onto `[0, 1]`.
    pub path: SampledPath,
    /// Original time `t` sits at `offset + scale * t` in the extended domain.
    pub offset: f64,
    pub scale: f64,
    pub left_ramp: bool,
    pub right_ramp: bool,
}

impl Extension {
    pub fn to_extended(&self, t: f64) -> f64 {
        self.offset + self.scale * t
    }

    pub fn to_original(&self, u: f64) -> f64 {
        (u - self.offset) / self.scale
    }
}

/// Extended knots on the raw domain `[-1, 2]` (only the needed ramps are added),
/// so that original times keep their exact values.
#[derive(Debug, Clone)]
pub(crate) struct RawExtension {
    pub t: Vec<f64>,
    pub v: Vec<f64>,
    pub left_ramp: bool,
    pub right_ramp: bool,
}

impl RawExtension {
    pub fn new(path: &SampledPath) -> Self {
        let inf = path.inf();
        let left_ramp = path.values[0] > inf;
        let right_ramp = *path.values.last().unwrap() > inf;
        let n = path.len() + left_ramp as usize + right_ramp as usize;
        let mut t = Vec::with_capacity(n);
        let mut v = Vec::with_capacity(n);
        if left_ramp {
            t.push(-1.0);
            v.push(inf);
        }
        t.extend_from_slice(&path.times);
        v.extend_from_slice(&path.values);
        if right_ramp {
            t.push(2.0);
            v.push(inf);
        }
        RawExtension {
            t,
            v,
            left_ramp,
            right_ramp,
        }
    }
}

pub fn extend(path: &SampledPath) -> Extension {
    let raw = RawExtension::new(path);
    let lo = if raw.left_ramp { -1.0 } else { 0.0 };
    let hi = if raw.right_ramp { 2.0 } else { 1.0 };
    let span = hi - lo;
    let mut t: Vec<f64> = raw.t.iter().map(|x| (x - lo) / span).collect();
    *t.last_mut().unwrap() = 1.0;
    t[0] = 0.0;
    Extension {
        path: SampledPath::from_raw_unchecked(t, raw.v),
        offset: -lo / span,
        scale: 1.0 / span,
        left_ramp: raw.left_ramp,
        right_ramp: raw.right_ramp,
    }
}

/// `inf_[0,t] omega  max  inf_[t,1] omega`.
pub fn valley_floor(path: &SampledPath) -> SampledPath {
    let mut t = Vec::new();
    let mut v = Vec::new();
    polyline::valley(&path.times, &path.values, &mut t, &mut v);
    polyline::compress_flats(&mut t, &mut v);
    SampledPath::from_raw_unchecked(t, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::fixtures;

    #[test]
    fn normalize_rescales_time() {
        let p = normalize(&[0.0, 2.0], &[0.0, 1.0]).unwrap();
        assert_eq!(p.times(), &[0.0, 1.0]);
        assert_eq!(p.values(), &[0.0, 1.0]);
    }

    #[test]
    fn normalize_errors() {
        assert_eq!(normalize(&[], &[]), Err(Error::EmptyInput));
        assert_eq!(
            normalize(&[0.0, 0.5, 0.5], &[0.0, 1.0, 2.0]),
            Err(Error::NonMonotoneTime(2))
        );
        assert_eq!(
            normalize(&[0.0, 1.0], &[2.0, 2.0]),
            Err(Error::ConstantPath)
        );
        assert_eq!(
            normalize(&[0.0, 1.0], &[0.0, f64::NAN]),
            Err(Error::NonFiniteValue(1))
        );
    }

    #[test]
    fn infimum_on_p0() {
        let p = fixtures::p0();
        let idx = PathIndex::new(&p);
        assert_eq!(idx.infimum(0.0, 1.0).unwrap(), 0.0);
        assert_eq!(idx.infimum(0.25, 0.75).unwrap(), 1.0);
        assert!((idx.infimum(0.3, 0.4).unwrap() - 1.4).abs() < 1e-15);
        assert_eq!(p.infimum(0.25, 0.75).unwrap(), 1.0);
        assert!(matches!(idx.infimum(0.5, 1.5), Err(Error::OutOfRange(..))));
        assert!(matches!(idx.infimum(0.6, 0.4), Err(Error::OutOfRange(..))));
    }

    #[test]
    fn delta_on_p0() {
        let p = fixtures::p0();
        let idx = PathIndex::new(&p);
        assert_eq!(idx.delta(0.25, 0.75).unwrap(), 3.0);
        assert_eq!(idx.delta(0.0, 1.0).unwrap(), 0.0);
        assert_eq!(idx.delta(0.75, 0.25).unwrap(), 3.0);
        assert_eq!(delta(&p, 0.25, 0.75).unwrap(), 3.0);
    }

    #[test]
    fn extension_of_fixtures() {
        let p0 = fixtures::p0();
        let e = extend(&p0);
        assert_eq!(e.path, p0);
        assert!(!e.left_ramp && !e.right_ramp);

        let e = extend(&fixtures::p1());
        assert!(e.left_ramp && e.right_ramp);
        assert_eq!(e.path.values(), &[0.0, 1.0, 0.0, 2.0, 0.0]);
        assert!((e.to_extended(0.0) - 1.0 / 3.0).abs() < 1e-15);
        assert!((e.to_original(e.to_extended(0.7)) - 0.7).abs() < 1e-15);
        assert!(e.path.satisfies_root_condition());

        let mono = SampledPath::from_pairs(&[(0.0, 0.0), (1.0, 1.0)]).unwrap();
        let e = extend(&mono);
        assert!(!e.left_ramp && e.right_ramp);
        assert_eq!(e.path.values(), &[0.0, 1.0, 0.0]);
    }

    #[test]
    fn valley_floor_of_fixtures() {
        let vf = valley_floor(&fixtures::p0());
        assert!(vf.values().iter().all(|&v| v == 0.0));
        let p1 = fixtures::p1();
        let vf = valley_floor(&p1);
        for k in 0..=20 {
            let t = k as f64 / 20.0;
            assert!((vf.value_at(t) - p1.value_at(t)).abs() < 1e-15);
        }
        let mono = SampledPath::from_pairs(&[(0.0, 0.0), (1.0, 1.0)]).unwrap();
        assert_eq!(valley_floor(&mono), mono);
    }

    #[test]
    fn valley_floor_flattens_interior_bumps() {
        // 1 -> 0 -> 3 -> 1 -> 2: the bump above 1 after the minimum is removed.
        let p = SampledPath::uniform(vec![1.0, 0.0, 3.0, 1.0, 2.0]).unwrap();
        let vf = valley_floor(&p);
        assert_eq!(vf.value_at(0.5), 1.0);
        assert_eq!(vf.value_at(0.75), 1.0);
        assert_eq!(vf.value_at(1.0), 2.0);
        assert!((vf.value_at(0.125) - 0.5).abs() < 1e-15);
        assert!((vf.value_at(0.3) - 0.6).abs() < 1e-14);
        assert_eq!(vf.value_at(0.4), 1.0);
    }
}
