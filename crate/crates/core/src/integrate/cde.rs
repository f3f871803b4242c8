//! `x(t) = x0 + int_0^t f(x(s)) d xi(s)` driven by sampled paths.

use super::rough::{lift_linear, RoughPath};
use super::Walker;
use crate::error::{Error, Result};
use crate::path::SampledPath;
use serde::Serialize;

/// `f: R^n -> L(R^d, R^n)`.
pub trait VectorField {
    fn state_dim(&self) -> usize;
    fn driver_dim(&self) -> usize;
    /// `f(x)` as an `n x d` row-major matrix.
    fn eval(&self, x: &[f64]) -> Vec<f64>;
    /// `d f_{mj} / d x_l` at index `(m * d + j) * n + l`.
    fn jacobian(&self, x: &[f64]) -> Vec<f64>;
}

/// `f_{mj}(x) = sum_l a[(m * d + j) * n + l] x_l`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearField {
    pub n: usize,
    pub d: usize,
    pub a: Vec<f64>,
}

impl LinearField {
    /// `dx = x d omega` in one dimension.
    pub fn scalar() -> Self {
        LinearField {
            n: 1,
            d: 1,
            a: vec![1.0],
        }
    }
}

impl VectorField for LinearField {
    fn state_dim(&self) -> usize {
        self.n
    }

    fn driver_dim(&self) -> usize {
        self.d
    }

    fn eval(&self, x: &[f64]) -> Vec<f64> {
        let (n, d) = (self.n, self.d);
        (0..n * d)
            .map(|r| (0..n).map(|l| self.a[r * n + l] * x[l]).sum())
            .collect()
    }

    fn jacobian(&self, _x: &[f64]) -> Vec<f64> {
        self.a.clone()
    }
}

/// `f` independent of the state.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantField {
    pub n: usize,
    pub d: usize,
    pub m: Vec<f64>,
}

impl ConstantField {
    pub fn identity(d: usize) -> Self {
        let mut m = vec![0.0; d * d];
        for i in 0..d {
            m[i * d + i] = 1.0;
        }
        ConstantField { n: d, d, m }
    }
}

impl VectorField for ConstantField {
    fn state_dim(&self) -> usize {
        self.n
    }

    fn driver_dim(&self) -> usize {
        self.d
    }

    fn eval(&self, _x: &[f64]) -> Vec<f64> {
        self.m.clone()
    }

    fn jacobian(&self, _x: &[f64]) -> Vec<f64> {
        vec![0.0; self.n * self.d * self.n]
    }
}

/// Field from closures.
pub struct FnField<F, J> {
    pub n: usize,
    pub d: usize,
    pub f: F,
    pub jac: J,
}

impl<F, J> VectorField for FnField<F, J>
where
    F: Fn(&[f64]) -> Vec<f64>,
    J: Fn(&[f64]) -> Vec<f64>,
{
    fn state_dim(&self) -> usize {
        self.n
    }

    fn driver_dim(&self) -> usize {
        self.d
    }

    fn eval(&self, x: &[f64]) -> Vec<f64> {
        (self.f)(x)
    }

    fn jacobian(&self, x: &[f64]) -> Vec<f64> {
        (self.jac)(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CdeScheme {
    /// Fixed point of `x = x0 + int f(x) d xi`, trapezoidal on the fine grid.
    Picard,
    /// One-step expansion with the second-level increments of the lift.
    Taylor,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CdeOptions {
    pub scheme: CdeScheme,
    /// Picard stops when the sup distance of successive iterates is below this.
    pub tol: f64,
    pub max_iter: usize,
    /// The time grid has at least this many uniform steps (merged with the
    /// driver knots for Picard; the full step count for Taylor).
    pub steps: usize,
    /// Bisections allowed when Picard does not settle.
    pub max_splits: usize,
}

impl Default for CdeOptions {
    fn default() -> Self {
        CdeOptions {
            scheme: CdeScheme::Picard,
            tol: 1e-12,
            max_iter: 100,
            steps: 1024,
            max_splits: 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CdeSolution {
    pub times: Vec<f64>,
    /// `n` values per time.
    pub states: Vec<f64>,
    pub n: usize,
    pub iterations: usize,
    pub splits: usize,
}

impl CdeSolution {
    pub fn state(&self, k: usize) -> &[f64] {
        &self.states[k * self.n..(k + 1) * self.n]
    }

    pub fn final_state(&self) -> &[f64] {
        self.state(self.times.len() - 1)
    }

    pub fn component(&self, m: usize) -> Result<SampledPath> {
        let v = (0..self.times.len())
            .map(|k| self.states[k * self.n + m])
            .collect();
        SampledPath::new(self.times.clone(), v)
    }
}

pub fn cde_solve(
    field: &dyn VectorField,
    drivers: &[SampledPath],
    x0: &[f64],
    opts: &CdeOptions,
) -> Result<CdeSolution> {
    let (n, d) = (field.state_dim(), field.driver_dim());
    if drivers.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: drivers.len(),
        });
    }
    if x0.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x0.len(),
        });
    }
    if opts.steps == 0 {
        return Err(Error::InvalidArgument("at least one step".into()));
    }
    match opts.scheme {
        CdeScheme::Picard => picard(field, drivers, x0, opts),
        CdeScheme::Taylor => taylor(field, drivers, x0, opts),
    }
}

fn uniform(m: usize) -> impl Iterator<Item = f64> {
    (0..=m).map(move |k| k as f64 / m as f64)
}

fn sample(drivers: &[SampledPath], times: &[f64]) -> Vec<f64> {
    let d = drivers.len();
    let mut xi = vec![0.0; times.len() * d];
    for (c, p) in drivers.iter().enumerate() {
        let mut w = Walker::new(p);
        for (k, &t) in times.iter().enumerate() {
            xi[k * d + c] = w.at(t);
        }
    }
    xi
}

struct Picard<'a> {
    field: &'a dyn VectorField,
    xi: Vec<f64>,
    n: usize,
    d: usize,
    opts: &'a CdeOptions,
    iterations: usize,
    splits: usize,
}

impl Picard<'_> {
    /// Solve on grid indices `[k0, k1]` from `start`, writing into `out`.
    fn solve(
        &mut self,
        k0: usize,
        k1: usize,
        start: &[f64],
        out: &mut [f64],
        depth: usize,
    ) -> Result<()> {
        let (n, d) = (self.n, self.d);
        let len = k1 - k0 + 1;
        let mut cur: Vec<f64> = start.iter().cloned().cycle().take(len * n).collect();
        let mut fv: Vec<f64> = Vec::with_capacity(len * n * d);
        for _ in 0..self.opts.max_iter {
            self.iterations += 1;
            fv.clear();
            for k in 0..len {
                fv.extend(self.field.eval(&cur[k * n..(k + 1) * n]));
            }
            let mut next = vec![0.0; len * n];
            next[..n].copy_from_slice(start);
            let mut dist: f64 = 0.0;
            for k in 0..len - 1 {
                let g = k0 + k;
                for m in 0..n {
                    let mut inc = 0.0;
                    for j in 0..d {
                        let dx = self.xi[(g + 1) * d + j] - self.xi[g * d + j];
                        inc += 0.5
                            * (fv[k * n * d + m * d + j] + fv[(k + 1) * n * d + m * d + j])
                            * dx;
                    }
                    next[(k + 1) * n + m] = next[k * n + m] + inc;
                }
            }
            for (a, b) in next.iter().zip(&cur) {
                dist = dist.max((a - b).abs());
            }
            cur = next;
            if !dist.is_finite() {
                break;
            }
            if dist < self.opts.tol * (1.0 + cur.iter().fold(0.0f64, |m, x| m.max(x.abs()))) {
                out[k0 * n..(k1 + 1) * n].copy_from_slice(&cur);
                return Ok(());
            }
        }
        if depth >= self.opts.max_splits || len < 3 {
            return Err(Error::NoConvergence(format!(
                "no contraction on grid steps {k0}..{k1}"
            )));
        }
        self.splits += 1;
        let mid = (k0 + k1) / 2;
        self.solve(k0, mid, start, out, depth + 1)?;
        let mid_state = out[mid * n..(mid + 1) * n].to_vec();
        self.solve(mid, k1, &mid_state, out, depth + 1)
    }
}

fn picard(
    field: &dyn VectorField,
    drivers: &[SampledPath],
    x0: &[f64],
    opts: &CdeOptions,
) -> Result<CdeSolution> {
    let mut times: Vec<f64> = drivers
        .iter()
        .flat_map(|p| p.times().iter().cloned())
        .chain(uniform(opts.steps))
        .collect();
    times.sort_by(|a, b| a.partial_cmp(b).unwrap());
    times.dedup();
    let n = field.state_dim();
    let mut solver = Picard {
        field,
        xi: sample(drivers, &times),
        n,
        d: field.driver_dim(),
        opts,
        iterations: 0,
        splits: 0,
    };
    let mut states = vec![0.0; times.len() * n];
    solver.solve(0, times.len() - 1, x0, &mut states, 0)?;
    Ok(CdeSolution {
        times,
        states,
        n,
        iterations: solver.iterations,
        splits: solver.splits,
    })
}

fn taylor(
    field: &dyn VectorField,
    drivers: &[SampledPath],
    x0: &[f64],
    opts: &CdeOptions,
) -> Result<CdeSolution> {
    let (n, d) = (field.state_dim(), field.driver_dim());
    let lift = lift_linear(drivers)?;
    let times: Vec<f64> = uniform(opts.steps).collect();
    let mut states = Vec::with_capacity(times.len() * n);
    states.extend_from_slice(x0);
    let mut x = x0.to_vec();
    let mut prev = lift.xi(0.0);
    for w in times.windows(2) {
        let next = lift.xi(w[1]);
        let g = lift.gamma(w[0], w[1]);
        let f = field.eval(&x);
        let jac = field.jacobian(&x);
        let mut step = vec![0.0; n];
        for (m, s) in step.iter_mut().enumerate() {
            for j in 0..d {
                *s += f[m * d + j] * (next[j] - prev[j]);
                for i in 0..d {
                    // d rho_j / d xi^i for rho = f_{m.}(x): sum_l df_{mj}/dx_l f_{li}.
                    let phi: f64 = (0..n)
                        .map(|l| jac[(m * d + j) * n + l] * f[l * d + i])
                        .sum();
                    *s += phi * g[i * d + j];
                }
            }
        }
        for (xm, s) in x.iter_mut().zip(&step) {
            *xm += s;
        }
        states.extend_from_slice(&x);
        prev = next;
    }
    Ok(CdeSolution {
        times,
        states,
        n,
        iterations: 0,
        splits: 0,
    })
}
