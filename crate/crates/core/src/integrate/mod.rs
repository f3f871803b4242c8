//! Integrals against one-dimensional paths: Stieltjes quadrature, the tree
//! integral (by flattening and by level sums), Young Riemann sums, the
//! conditional-variation lower bound, rough integrals with second-level
//! increments and a solver for controlled differential equations.

mod cde;
mod rough;
mod tree;
mod young;

pub use cde::{
    cde_solve, CdeOptions, CdeScheme, CdeSolution, ConstantField, FnField, LinearField, VectorField,
};
pub use rough::{
    g_sum, lift_linear, rough_integral, taylor_sum, ClosedFormRoughPath, ControlledIntegrand,
    FnControlled, LinearLift, RoughIntegral, RoughOptions, RoughPath,
};
pub use tree::{
    conditional_variation_lb, default_grid, level_sum, tree_integral, LevelQuadrature,
    TreeIntegral, TreeIntegralOptions, EXACT_LEVEL_CAP,
};
pub use young::{young, young_cadlag, YoungIntegral, YoungOptions};

use crate::path::SampledPath;
use gauss_quad::GaussLegendre;
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

/// Named scalar functions with a closed-form antiderivative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Primitive {
    Constant {
        c: f64,
    },
    Identity,
    Square,
    Cos,
    Sin,
    Exp,
    /// `sum c_k x^k`.
    Polynomial {
        coeffs: Vec<f64>,
    },
}

impl Primitive {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Primitive::Constant { c } => *c,
            Primitive::Identity => x,
            Primitive::Square => x * x,
            Primitive::Cos => x.cos(),
            Primitive::Sin => x.sin(),
            Primitive::Exp => x.exp(),
            Primitive::Polynomial { coeffs } => horner(coeffs, x),
        }
    }

    /// An antiderivative `F` with `F' = f`.
    pub fn antiderivative(&self, x: f64) -> f64 {
        match self {
            Primitive::Constant { c } => c * x,
            Primitive::Identity => 0.5 * x * x,
            Primitive::Square => x * x * x / 3.0,
            Primitive::Cos => x.sin(),
            Primitive::Sin => -x.cos(),
            Primitive::Exp => x.exp(),
            Primitive::Polynomial { coeffs } => {
                let up: Vec<f64> = std::iter::once(0.0)
                    .chain(coeffs.iter().enumerate().map(|(k, c)| c / (k + 1) as f64))
                    .collect();
                horner(&up, x)
            }
        }
    }
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Bounded function of time to integrate against a path.
#[derive(Debug, Clone, PartialEq)]
pub enum Integrand {
    /// Piecewise-linear series in time.
    Sampled(SampledPath),
    /// `f(x(t))` for a path `x`, typically the integrator itself.
    OfPath { f: Primitive, path: SampledPath },
    /// `sum c_k t^k`.
    Polynomial(Vec<f64>),
}

impl Integrand {
    pub fn constant(c: f64) -> Self {
        Integrand::Polynomial(vec![c])
    }

    pub fn time() -> Self {
        Integrand::Polynomial(vec![0.0, 1.0])
    }

    pub fn of_path(f: Primitive, path: &SampledPath) -> Self {
        Integrand::OfPath {
            f,
            path: path.clone(),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Integrand::Sampled(p) => p.value_at(t),
            Integrand::OfPath { f, path } => f.eval(path.value_at(t)),
            Integrand::Polynomial(c) => horner(c, t),
        }
    }

    /// Times where the integrand may fail to be smooth.
    pub fn breakpoints(&self) -> &[f64] {
        match self {
            Integrand::Sampled(p) | Integrand::OfPath { path: p, .. } => p.times(),
            Integrand::Polynomial(_) => &[],
        }
    }

    /// Integrand seen on `[s, t]` rescaled to `[0, 1]`, matching
    /// [`SampledPath::restrict`].
    pub fn restrict(&self, s: f64, t: f64) -> crate::Result<Self> {
        Ok(match self {
            Integrand::Sampled(p) => Integrand::Sampled(p.restrict(s, t)?),
            Integrand::OfPath { f, path } => Integrand::OfPath {
                f: f.clone(),
                path: path.restrict(s, t)?,
            },
            Integrand::Polynomial(c) => {
                // p(s + w u) expanded in u.
                let w = t - s;
                let n = c.len();
                let mut out = vec![0.0; n];
                for (j, &cj) in c.iter().enumerate() {
                    let mut binom = 1.0;
                    for (k, o) in out.iter_mut().enumerate().take(j + 1) {
                        *o += cj * binom * s.powi((j - k) as i32) * w.powi(k as i32);
                        binom *= (j - k) as f64 / (k + 1) as f64;
                    }
                }
                Integrand::Polynomial(out)
            }
        })
    }

    pub(crate) fn walker(&self) -> IntegrandWalker<'_> {
        match self {
            Integrand::Sampled(p) => IntegrandWalker::Path(Walker::new(p), None),
            Integrand::OfPath { f, path } => IntegrandWalker::Path(Walker::new(path), Some(f)),
            Integrand::Polynomial(c) => IntegrandWalker::Poly(c),
        }
    }
}

/// Evaluates a path at nondecreasing times in amortized constant time.
pub(crate) struct Walker<'a> {
    t: &'a [f64],
    v: &'a [f64],
    k: usize,
}

impl<'a> Walker<'a> {
    pub fn new(path: &'a SampledPath) -> Self {
        Walker {
            t: path.times(),
            v: path.values(),
            k: 0,
        }
    }

    pub fn at(&mut self, x: f64) -> f64 {
        let n = self.t.len();
        if n == 1 {
            return self.v[0];
        }
        while self.k + 2 < n && self.t[self.k + 1] <= x {
            self.k += 1;
        }
        let k = self.k;
        let x = x.clamp(self.t[k], self.t[k + 1]);
        crate::path::polyline::lerp(self.t[k], self.v[k], self.t[k + 1], self.v[k + 1], x)
    }
}

pub(crate) enum IntegrandWalker<'a> {
    Path(Walker<'a>, Option<&'a Primitive>),
    Poly(&'a [f64]),
}

impl IntegrandWalker<'_> {
    pub fn at(&mut self, x: f64) -> f64 {
        match self {
            IntegrandWalker::Path(w, f) => {
                let y = w.at(x);
                match f {
                    Some(f) => f.eval(y),
                    None => y,
                }
            }
            IntegrandWalker::Poly(c) => horner(c, x),
        }
    }
}

/// Gauss-Legendre order used on every smooth piece.
pub const GAUSS_ORDER: usize = 8;

/// Nodes on `[0, 1]` and weights summing to 1.
pub(crate) fn gauss_rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let gl = GaussLegendre::new(GAUSS_ORDER).expect("order >= 2");
        let mut r: Vec<(f64, f64)> = gl
            .as_node_weight_pairs()
            .iter()
            .map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w))
            .collect();
        r.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        r
    })
}

/// `int_lo^hi g` with `m` composite Gauss-Legendre panels.
pub(crate) fn gauss(lo: f64, hi: f64, m: usize, mut g: impl FnMut(f64) -> f64) -> f64 {
    let rule = gauss_rule();
    let m = m.max(1);
    let h = (hi - lo) / m as f64;
    let mut total = 0.0;
    for i in 0..m {
        let a = lo + i as f64 * h;
        let s: f64 = rule.iter().map(|&(x, w)| w * g(a + x * h)).sum();
        total += s * h;
    }
    total
}

/// `int rho d(omega)` for the piecewise-linear `omega`, by Gauss-Legendre on
/// every piece between knots of the path and of the integrand, `m` panels each.
///
/// Exact for polynomial integrands of degree below `2 * GAUSS_ORDER`.
pub fn stieltjes(rho: &Integrand, path: &SampledPath, m: usize) -> f64 {
    stieltjes_raw(rho, path.times(), path.values(), m)
}

pub(crate) fn stieltjes_raw(rho: &Integrand, t: &[f64], v: &[f64], m: usize) -> f64 {
    let bp = rho.breakpoints();
    let mut b = 0;
    let mut total = 0.0;
    for k in 0..t.len().saturating_sub(1) {
        let (t0, t1) = (t[k], t[k + 1]);
        let dv = v[k + 1] - v[k];
        if dv == 0.0 {
            continue;
        }
        let slope = dv / (t1 - t0);
        while b < bp.len() && bp[b] <= t0 {
            b += 1;
        }
        let mut lo = t0;
        let mut bb = b;
        let mut seg = 0.0;
        loop {
            let hi = if bb < bp.len() && bp[bb] < t1 {
                bp[bb]
            } else {
                t1
            };
            seg += gauss(lo, hi, m, |x| rho.eval(x));
            if hi == t1 {
                break;
            }
            lo = hi;
            bb += 1;
        }
        total += slope * seg;
    }
    total
}
