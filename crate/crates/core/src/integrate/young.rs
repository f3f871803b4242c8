//! Left-point Riemann sums with Richardson refinement. Each segment between
//! knots of either function is cut into equal cells and every level halves
//! all cells, so the first-order error term cancels exactly. Merging a
//! uniform grid with the knots instead leaves tiny boundary cells whose
//! error survives every dyadic level.

use super::{Integrand, Walker};
use crate::error::{Error, Result};
use crate::path::{embed_cadlag, CadlagPath, JumpWeights, SampledPath};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq)]
pub struct YoungOptions {
    /// Mesh of the first partition.
    pub initial_mesh: f64,
    /// Give up below this mesh.
    pub min_mesh: f64,
    /// Stop when two successive steps of the refined values are both below this.
    pub tol: f64,
}

impl Default for YoungOptions {
    fn default() -> Self {
        YoungOptions {
            initial_mesh: 1.0 / 256.0,
            min_mesh: 1.0 / (1u64 << 24) as f64,
            tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct YoungIntegral {
    pub value: f64,
    /// `(mesh, Richardson value)` per refinement.
    pub trace: Vec<(f64, f64)>,
    pub converged: bool,
}

/// Cell boundaries: every segment between consecutive knots cut into
/// `base[i] * 2^level` equal cells, so each level halves every cell exactly.
/// A segment's base count follows the largest of its shares of time, of the
/// range of `omega` and of the range of `rho`, so steep pieces get fine cells.
struct Partition {
    knots: Vec<f64>,
    base: Vec<usize>,
    size: Vec<f64>,
}

fn share(values: &[f64]) -> Vec<f64> {
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let r = hi - lo;
    values
        .windows(2)
        .map(|w| {
            if r > 0.0 {
                (w[1] - w[0]).abs() / r
            } else {
                0.0
            }
        })
        .collect()
}

impl Partition {
    fn new(
        a: &[f64],
        b: &[f64],
        initial_mesh: f64,
        rho: &mut dyn FnMut(f64) -> f64,
        omega: &SampledPath,
    ) -> Partition {
        let mut knots: Vec<f64> = a
            .iter()
            .chain(b)
            .cloned()
            .filter(|t| (0.0..=1.0).contains(t))
            .chain([0.0, 1.0])
            .collect();
        knots.sort_by(|x, y| x.partial_cmp(y).unwrap());
        knots.dedup();
        let mut w = Walker::new(omega);
        let om: Vec<f64> = knots.iter().map(|&t| w.at(t)).collect();
        let rh: Vec<f64> = knots.iter().map(|&t| rho(t)).collect();
        let (so, sr) = (share(&om), share(&rh));
        let size: Vec<f64> = knots
            .windows(2)
            .enumerate()
            .map(|(i, w)| (w[1] - w[0]).max(so[i]).max(sr[i]))
            .collect();
        let base = size
            .iter()
            .map(|x| (x / initial_mesh).ceil().max(1.0) as usize)
            .collect();
        Partition { knots, base, size }
    }

    fn mesh(&self, level: u32) -> f64 {
        let m = self
            .size
            .iter()
            .zip(&self.base)
            .map(|(x, &n)| x / n as f64)
            .fold(0.0, f64::max);
        m / (1u64 << level) as f64
    }

    /// `sum rho(s_i) (omega(s_{i+1}) - omega(s_i))`.
    fn left_sum(&self, rho: &mut dyn FnMut(f64) -> f64, omega: &SampledPath, level: u32) -> f64 {
        let mut w = Walker::new(omega);
        let mut total = 0.0;
        for (seg, &n) in self.knots.windows(2).zip(&self.base) {
            let (a, b) = (seg[0], seg[1]);
            let n = n << level;
            let mut x = a;
            let mut prev = w.at(a);
            for k in 1..=n {
                let next = if k == n {
                    b
                } else {
                    a + (b - a) * (k as f64 / n as f64)
                };
                let v = w.at(next);
                total += rho(x) * (v - prev);
                prev = v;
                x = next;
            }
        }
        total
    }
}

fn refine(
    part: &Partition,
    mut sums: impl FnMut(u32) -> f64,
    opts: &YoungOptions,
) -> Result<YoungIntegral> {
    let mut level = 0;
    let mut coarse = sums(0);
    let mut trace = Vec::new();
    let mut last: Option<f64> = None;
    let mut settled = 0;
    while part.mesh(level + 1) >= opts.min_mesh {
        level += 1;
        let fine = sums(level);
        let r = 2.0 * fine - coarse;
        trace.push((part.mesh(level), r));
        if let Some(prev) = last {
            if (r - prev).abs() < opts.tol {
                settled += 1;
                if settled == 2 {
                    return Ok(YoungIntegral {
                        value: r,
                        trace,
                        converged: true,
                    });
                }
            } else {
                settled = 0;
            }
        }
        last = Some(r);
        coarse = fine;
    }
    Err(Error::NonConvergent(format!(
        "Riemann sums not settled at mesh {}: last value {:?}",
        part.mesh(level),
        last
    )))
}

fn check(opts: &YoungOptions) -> Result<()> {
    if opts.initial_mesh > 0.0 && opts.min_mesh > 0.0 && opts.tol > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(
            "Young options must be positive".into(),
        ))
    }
}

/// Young integral `int_0^1 rho d(omega)` as the limit of left-point Riemann sums.
pub fn young(rho: &Integrand, path: &SampledPath, opts: &YoungOptions) -> Result<YoungIntegral> {
    check(opts)?;
    let mut w = rho.walker();
    let part = Partition::new(
        path.times(),
        rho.breakpoints(),
        opts.initial_mesh,
        &mut |x| w.at(x),
        path,
    );
    refine(
        &part,
        |level| {
            let mut w = rho.walker();
            part.left_sum(&mut |x| w.at(x), path, level)
        },
        opts,
    )
}

/// Young integral against a cadlag path, computed on its continuous embedding;
/// `rho` is read through the inverse time change, so it should be continuous
/// at the jump times.
pub fn young_cadlag(
    rho: &Integrand,
    path: &CadlagPath,
    weights: &JumpWeights,
    opts: &YoungOptions,
) -> Result<YoungIntegral> {
    check(opts)?;
    let emb = embed_cadlag(path, weights)?;
    let mapped: Vec<f64> = rho.breakpoints().iter().map(|&t| emb.map_time(t)).collect();
    let mut w = rho.walker();
    let part = Partition::new(
        emb.path.times(),
        &mapped,
        opts.initial_mesh,
        &mut |s| w.at(emb.original_time(s)),
        &emb.path,
    );
    refine(
        &part,
        |level| {
            let mut w = rho.walker();
            let mut at = |s: f64| w.at(emb.original_time(s));
            part.left_sum(&mut at, &emb.path, level)
        },
        opts,
    )
}
