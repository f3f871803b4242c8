//! Low-level helpers on raw knot arrays.

/// Linear interpolation with clamping at both ends.
pub fn eval(t: &[f64], v: &[f64], x: f64) -> f64 {
    let n = t.len();
    if x <= t[0] {
        return v[0];
    }
    if x >= t[n - 1] {
        return v[n - 1];
    }
    let k = t.partition_point(|&s| s <= x) - 1;
    lerp(t[k], v[k], t[k + 1], v[k + 1], x)
}

#[inline]
pub fn lerp(t0: f64, v0: f64, t1: f64, v1: f64, x: f64) -> f64 {
    if x == t1 {
        return v1;
    }
    v0 + (v1 - v0) * ((x - t0) / (t1 - t0))
}

/// Time at which the segment `(t0, v0) -> (t1, v1)` hits `level`, clamped to the segment.
#[inline]
pub fn crossing(t0: f64, v0: f64, t1: f64, v1: f64, level: f64) -> f64 {
    let tc = t0 + (level - v0) / (v1 - v0) * (t1 - t0);
    tc.clamp(t0, t1)
}

fn push(out_t: &mut Vec<f64>, out_v: &mut Vec<f64>, t: f64, v: f64) {
    if let Some(&last) = out_t.last() {
        if t <= last {
            // Coincident point; keep the later value.
            *out_v.last_mut().unwrap() = v;
            return;
        }
    }
    out_t.push(t);
    out_v.push(v);
}

/// Running minimum from the first knot (may be appended to non-empty output).
pub fn prefix_min(t: &[f64], v: &[f64], out_t: &mut Vec<f64>, out_v: &mut Vec<f64>) {
    let mut m = v[0];
    push(out_t, out_v, t[0], m);
    for k in 0..t.len() - 1 {
        let (y0, y1) = (v[k], v[k + 1]);
        if y1 < m {
            if y0 > m {
                push(out_t, out_v, crossing(t[k], y0, t[k + 1], y1, m), m);
            }
            m = y1;
        }
        push(out_t, out_v, t[k + 1], m);
    }
}

/// Running minimum taken backwards from the last knot.
pub fn suffix_min(t: &[f64], v: &[f64], out_t: &mut Vec<f64>, out_v: &mut Vec<f64>) {
    let n = t.len();
    let mut rt = Vec::with_capacity(n + n / 2);
    let mut rv = Vec::with_capacity(n + n / 2);
    let mut m = v[n - 1];
    rt.push(-t[n - 1]);
    rv.push(m);
    for k in (1..n).rev() {
        let (y1, y0) = (v[k], v[k - 1]);
        if y0 < m {
            if y1 > m {
                let tc = crossing(t[k - 1], y0, t[k], y1, m);
                if -tc > *rt.last().unwrap() {
                    rt.push(-tc);
                    rv.push(m);
                }
            }
            m = y0;
        }
        if -t[k - 1] > *rt.last().unwrap() {
            rt.push(-t[k - 1]);
            rv.push(m);
        } else {
            *rv.last_mut().unwrap() = m;
        }
    }
    for i in (0..rt.len()).rev() {
        push(out_t, out_v, -rt[i], rv[i]);
    }
}

/// `inf_[t0,t] v  max  inf_[t,tn] v` on the given knots, appended to the output.
pub fn valley(t: &[f64], v: &[f64], out_t: &mut Vec<f64>, out_v: &mut Vec<f64>) {
    let mut u = 0;
    for k in 1..v.len() {
        if v[k] < v[u] {
            u = k;
        }
    }
    prefix_min(&t[..=u], &v[..=u], out_t, out_v);
    suffix_min(&t[u..], &v[u..], out_t, out_v);
}

/// Drop interior points of runs with equal values.
pub fn compress_flats(t: &mut Vec<f64>, v: &mut Vec<f64>) {
    let n = t.len();
    if n < 3 {
        return;
    }
    let mut w = 1;
    for k in 1..n {
        let interior = k + 1 < n && v[k] == v[w - 1] && v[k] == v[k + 1];
        if !interior {
            t[w] = t[k];
            v[w] = v[k];
            w += 1;
        }
    }
    t.truncate(w);
    v.truncate(w);
}
