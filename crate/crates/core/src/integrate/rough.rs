//! Paths with second-level increments and integrals of controlled integrands.
//!
//! Matrices are `d x d`, row-major. `gamma(s, t)[i * d + j]` is
//! `int_s^t (xi^i(u) - xi^i(s)) d xi^j(u)`; the derivative of a controlled
//! integrand uses the same layout, `phi[i * d + j] = d rho_j / d xi^i`, so that
//! `Phi(Gamma)` is the entrywise dot product.

use crate::error::{Error, Result};
use crate::path::SampledPath;
use crate::variation::fit_line;
use serde::Serialize;

pub trait RoughPath {
    fn dim(&self) -> usize;
    fn xi(&self, t: f64) -> Vec<f64>;
    fn gamma(&self, s: f64, t: f64) -> Vec<f64>;
    /// Declared Holder exponent `r`.
    fn exponent(&self) -> f64;
}

/// Piecewise-linear lift of `d` sampled paths on their merged knots.
///
/// Stores `Gamma(0, t_k)` at every knot and extends to arbitrary `(s, t)` by
/// the multiplicative identity.
#[derive(Debug, Clone)]
pub struct LinearLift {
    d: usize,
    times: Vec<f64>,
    /// `d` values per knot.
    xs: Vec<f64>,
    /// `d * d` entries per knot.
    prefix: Vec<f64>,
    r: f64,
}

/// Lift with exponent 1 (override with [`LinearLift::with_exponent`]).
pub fn lift_linear(paths: &[SampledPath]) -> Result<LinearLift> {
    if paths.is_empty() {
        return Err(Error::EmptyInput);
    }
    let d = paths.len();
    let mut times: Vec<f64> = paths
        .iter()
        .flat_map(|p| p.times().iter().cloned())
        .collect();
    times.sort_by(|a, b| a.partial_cmp(b).unwrap());
    times.dedup();
    let n = times.len();
    let mut xs = vec![0.0; n * d];
    for (c, p) in paths.iter().enumerate() {
        let mut w = super::Walker::new(p);
        for (k, &t) in times.iter().enumerate() {
            xs[k * d + c] = w.at(t);
        }
    }
    let mut prefix = vec![0.0; n * d * d];
    for k in 0..n - 1 {
        let (base, rest) = prefix.split_at_mut((k + 1) * d * d);
        let prev = &base[k * d * d..];
        let next = &mut rest[..d * d];
        for i in 0..d {
            let off = xs[k * d + i] - xs[i];
            let di = xs[(k + 1) * d + i] - xs[k * d + i];
            for j in 0..d {
                let dj = xs[(k + 1) * d + j] - xs[k * d + j];
                next[i * d + j] = prev[i * d + j] + off * dj + 0.5 * di * dj;
            }
        }
    }
    Ok(LinearLift {
        d,
        times,
        xs,
        prefix,
        r: 1.0,
    })
}

impl LinearLift {
    pub fn with_exponent(mut self, r: f64) -> Self {
        self.r = r;
        self
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    fn locate(&self, t: f64) -> usize {
        let n = self.times.len();
        self.times.partition_point(|&x| x <= t).clamp(1, n - 1) - 1
    }

    fn point(&self, t: f64, k: usize) -> Vec<f64> {
        let d = self.d;
        let (t0, t1) = (self.times[k], self.times[k + 1]);
        let f = ((t - t0) / (t1 - t0)).clamp(0.0, 1.0);
        (0..d)
            .map(|i| {
                let a = self.xs[k * d + i];
                let b = self.xs[(k + 1) * d + i];
                if f == 1.0 {
                    b
                } else {
                    a + (b - a) * f
                }
            })
            .collect()
    }

    /// `Gamma(0, t)`.
    fn from_origin(&self, t: f64) -> (Vec<f64>, Vec<f64>) {
        let d = self.d;
        let k = self.locate(t);
        let x = self.point(t, k);
        let mut g = self.prefix[k * d * d..(k + 1) * d * d].to_vec();
        for i in 0..d {
            let off = self.xs[k * d + i] - self.xs[i];
            let di = x[i] - self.xs[k * d + i];
            for j in 0..d {
                let dj = x[j] - self.xs[k * d + j];
                g[i * d + j] += off * dj + 0.5 * di * dj;
            }
        }
        (x, g)
    }

    /// Empirical `mu` of the Holder bounds at exponent `r`, over dyadic
    /// intervals down to `2^-levels`.
    pub fn holder_constant(&self, r: f64, levels: u32) -> f64 {
        let mut mu: f64 = 0.0;
        for l in 0..=levels {
            let m = 1usize << l;
            let h = 1.0 / m as f64;
            for k in 0..m {
                let (s, t) = (k as f64 * h, (k + 1) as f64 * h);
                let xs = self.xi(s);
                let xt = self.xi(t);
                let dx = xs
                    .iter()
                    .zip(&xt)
                    .map(|(a, b)| (b - a).powi(2))
                    .sum::<f64>()
                    .sqrt();
                let g = self.gamma(s, t).iter().map(|x| x * x).sum::<f64>().sqrt();
                mu = mu.max(dx / h.powf(r)).max(g / h.powf(2.0 * r));
            }
        }
        mu
    }
}

impl RoughPath for LinearLift {
    fn dim(&self) -> usize {
        self.d
    }

    fn xi(&self, t: f64) -> Vec<f64> {
        self.point(t, self.locate(t))
    }

    fn gamma(&self, s: f64, t: f64) -> Vec<f64> {
        let d = self.d;
        let (xs, gs) = self.from_origin(s);
        let (xt, gt) = self.from_origin(t);
        let mut g = vec![0.0; d * d];
        for i in 0..d {
            let off = xs[i] - self.xs[i];
            for j in 0..d {
                g[i * d + j] = gt[i * d + j] - gs[i * d + j] - off * (xt[j] - xs[j]);
            }
        }
        g
    }

    fn exponent(&self) -> f64 {
        self.r
    }
}

/// Rough path given by closed-form `xi` and `Gamma`.
pub struct ClosedFormRoughPath<X, G> {
    pub d: usize,
    pub xi: X,
    pub gamma: G,
    pub r: f64,
}

impl<X, G> RoughPath for ClosedFormRoughPath<X, G>
where
    X: Fn(f64) -> Vec<f64>,
    G: Fn(f64, f64) -> Vec<f64>,
{
    fn dim(&self) -> usize {
        self.d
    }

    fn xi(&self, t: f64) -> Vec<f64> {
        (self.xi)(t)
    }

    fn gamma(&self, s: f64, t: f64) -> Vec<f64> {
        (self.gamma)(s, t)
    }

    fn exponent(&self) -> f64 {
        self.r
    }
}

/// One-form `rho` along the path, with its derivative `phi` in the rough-path sense.
pub trait ControlledIntegrand {
    fn dim(&self) -> usize;
    /// `rho_j(t)`, the coefficient of `d xi^j`.
    fn rho(&self, t: f64) -> Vec<f64>;
    /// `phi[i * d + j] = d rho_j / d xi^i` at `t`.
    fn phi(&self, t: f64) -> Vec<f64>;
}

pub struct FnControlled<R, P> {
    pub d: usize,
    pub rho: R,
    pub phi: P,
}

impl<R, P> ControlledIntegrand for FnControlled<R, P>
where
    R: Fn(f64) -> Vec<f64>,
    P: Fn(f64) -> Vec<f64>,
{
    fn dim(&self) -> usize {
        self.d
    }

    fn rho(&self, t: f64) -> Vec<f64> {
        (self.rho)(t)
    }

    fn phi(&self, t: f64) -> Vec<f64> {
        (self.phi)(t)
    }
}

fn check_dims(ci: &dyn ControlledIntegrand, rp: &dyn RoughPath) -> Result<()> {
    if ci.dim() != rp.dim() {
        return Err(Error::DimensionMismatch {
            expected: rp.dim(),
            got: ci.dim(),
        });
    }
    Ok(())
}

/// `sum_k rho(t_k) (xi(t_{k+1}) - xi(t_k)) + Phi(t_k) Gamma(t_k, t_{k+1})`.
pub fn g_sum(ci: &dyn ControlledIntegrand, rp: &dyn RoughPath, partition: &[f64]) -> Result<f64> {
    check_dims(ci, rp)?;
    if partition.len() < 2 {
        return Err(Error::EmptyInput);
    }
    let mut total = 0.0;
    let mut x0 = rp.xi(partition[0]);
    for w in partition.windows(2) {
        let x1 = rp.xi(w[1]);
        let rho = ci.rho(w[0]);
        let phi = ci.phi(w[0]);
        let g = rp.gamma(w[0], w[1]);
        let first: f64 = rho
            .iter()
            .zip(x0.iter().zip(&x1))
            .map(|(r, (a, b))| r * (b - a))
            .sum();
        let second: f64 = phi.iter().zip(&g).map(|(p, q)| p * q).sum();
        total += first + second;
        x0 = x1;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoughOptions {
    pub tol: f64,
    pub max_depth: u32,
}

impl Default for RoughOptions {
    fn default() -> Self {
        RoughOptions {
            tol: 1e-10,
            max_depth: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoughIntegral {
    pub value: f64,
    /// `(mesh, g)` for the dyadic partitions `2^-k (t - s)`.
    pub levels: Vec<(f64, f64)>,
    /// Slope of `log |g_2n - g_n|` against `log mesh`, when at least three
    /// differences clear rounding noise.
    pub exponent: Option<f64>,
    pub converged: bool,
}

/// Integral of a controlled integrand over `[s, t]` by dyadic refinement.
pub fn rough_integral(
    ci: &dyn ControlledIntegrand,
    rp: &dyn RoughPath,
    s: f64,
    t: f64,
    opts: &RoughOptions,
) -> Result<RoughIntegral> {
    let r = rp.exponent();
    if !(r > 1.0 / 3.0) {
        return Err(Error::InvalidExponent(r));
    }
    if !(s < t) {
        return Err(Error::OutOfRange(s, t));
    }
    check_dims(ci, rp)?;
    let mut levels = Vec::new();
    let mut converged = false;
    for k in 0..=opts.max_depth {
        let m = 1usize << k;
        let part: Vec<f64> = (0..=m)
            .map(|i| {
                if i == m {
                    t
                } else {
                    s + (t - s) * i as f64 / m as f64
                }
            })
            .collect();
        let g = g_sum(ci, rp, &part)?;
        let done = levels
            .last()
            .map(|&(_, prev): &(f64, f64)| (g - prev).abs() < opts.tol)
            .unwrap_or(false);
        levels.push(((t - s) / m as f64, g));
        if done {
            converged = true;
            break;
        }
    }
    let value = levels.last().unwrap().1;
    if !converged {
        return Err(Error::NonConvergent(format!(
            "dyadic sums not settled at depth {}: last value {value}",
            opts.max_depth
        )));
    }
    Ok(RoughIntegral {
        value,
        exponent: refinement_exponent(&levels),
        levels,
        converged,
    })
}

fn refinement_exponent(levels: &[(f64, f64)]) -> Option<f64> {
    let noise = 1e-13 * (1.0 + levels.last()?.1.abs());
    let mut x = Vec::new();
    let mut y = Vec::new();
    for w in levels.windows(2) {
        let d = (w[1].1 - w[0].1).abs();
        if d > noise {
            x.push(w[0].0.ln());
            y.push(d.ln());
        }
    }
    (x.len() >= 3).then(|| fit_line(&x, &y).slope)
}

/// Generalized Riemann sum for `int rho d omega` with `xi = (omega, eta)`:
/// `sum rho(t_i) d omega + phi(t_i)/2 (d omega)^2 + psi(t_i) gamma(t_i, t_{i+1})`,
/// where `gamma` is the `(eta, omega)` entry of the second level.
pub fn taylor_sum(
    rp: &dyn RoughPath,
    rho: impl Fn(f64) -> f64,
    phi: impl Fn(f64) -> f64,
    psi: impl Fn(f64) -> f64,
    partition: &[f64],
) -> Result<f64> {
    if rp.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: rp.dim(),
        });
    }
    if partition.len() < 2 {
        return Err(Error::EmptyInput);
    }
    let mut total = 0.0;
    for w in partition.windows(2) {
        let d_omega = rp.xi(w[1])[0] - rp.xi(w[0])[0];
        let gamma = rp.gamma(w[0], w[1])[2];
        total += rho(w[0]) * d_omega + 0.5 * phi(w[0]) * d_omega * d_omega + psi(w[0]) * gamma;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn circle(n: usize) -> Vec<SampledPath> {
        let c = (0..=n)
            .map(|k| (2.0 * PI * k as f64 / n as f64).cos())
            .collect();
        let s = (0..=n)
            .map(|k| (2.0 * PI * k as f64 / n as f64).sin())
            .collect();
        vec![
            SampledPath::uniform(c).unwrap(),
            SampledPath::uniform(s).unwrap(),
        ]
    }

    #[test]
    fn equal_components_have_no_area() {
        let t = SampledPath::new(vec![0.0, 0.4, 1.0], vec![0.0, 0.4, 1.0]).unwrap();
        let lift = lift_linear(&[t.clone(), t]).unwrap();
        let g = lift.gamma(0.0, 1.0);
        assert!((g[1] - g[2]).abs() < 1e-15);
    }

    #[test]
    fn symmetric_part_is_half_square() {
        let lift = lift_linear(&circle(64)).unwrap();
        let (s, t) = (0.13, 0.71);
        let g = lift.gamma(s, t);
        let (a, b) = (lift.xi(s), lift.xi(t));
        for i in 0..2 {
            for j in 0..2 {
                let sym = 0.5 * (g[i * 2 + j] + g[j * 2 + i]);
                let want = 0.5 * (b[i] - a[i]) * (b[j] - a[j]);
                assert!((sym - want).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn circle_area() {
        let lift = lift_linear(&circle(4096)).unwrap();
        let g = lift.gamma(0.0, 1.0);
        assert!((0.5 * (g[1] - g[2]) - PI).abs() < 1e-3);
    }

    #[test]
    fn dimension_mismatch() {
        let lift = lift_linear(&circle(8)).unwrap();
        let ci = FnControlled {
            d: 1,
            rho: |_t: f64| vec![1.0],
            phi: |_t: f64| vec![0.0],
        };
        assert!(matches!(
            g_sum(&ci, &lift, &[0.0, 1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn telescoping_sum_is_exact() {
        let rp = ClosedFormRoughPath {
            d: 1,
            xi: |t: f64| vec![t],
            gamma: |s: f64, t: f64| vec![0.5 * (t - s) * (t - s)],
            r: 1.0,
        };
        let ci = FnControlled {
            d: 1,
            rho: |t: f64| vec![t],
            phi: |_t: f64| vec![1.0],
        };
        for depth in 0..12 {
            let m = 1usize << depth;
            let part: Vec<f64> = (0..=m).map(|i| i as f64 / m as f64).collect();
            assert_eq!(g_sum(&ci, &rp, &part).unwrap(), 0.5);
        }
        let r = rough_integral(&ci, &rp, 0.0, 1.0, &Default::default()).unwrap();
        assert_eq!(r.value, 0.5);
    }

    #[test]
    fn low_exponent_rejected() {
        let lift = lift_linear(&circle(8)).unwrap().with_exponent(0.3);
        let ci = FnControlled {
            d: 2,
            rho: |_t: f64| vec![1.0, 0.0],
            phi: |_t: f64| vec![0.0; 4],
        };
        assert!(matches!(
            rough_integral(&ci, &lift, 0.0, 1.0, &Default::default()),
            Err(Error::InvalidExponent(_))
        ));
    }
}
