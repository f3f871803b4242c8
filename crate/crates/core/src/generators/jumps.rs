use super::Rng;
use crate::error::{Error, Result};
use crate::path::CadlagPath;
use rand::Rng as _;
use rand_distr::{Distribution, Exp1, Poisson, StandardNormal};
use std::f64::consts::FRAC_PI_2;

/// Symmetric alpha-stable variable with characteristic function `exp(-|u|^alpha)`
/// (Chambers-Mallows-Stuck).
fn cms(alpha: f64, rng: &mut Rng) -> f64 {
    let v: f64 = rng.gen_range(-FRAC_PI_2..FRAC_PI_2);
    let w: f64 = Exp1.sample(rng);
    if alpha == 1.0 {
        return v.tan();
    }
    (alpha * v).sin() / v.cos().powf(1.0 / alpha)
        * ((v - alpha * v).cos() / w).powf((1.0 - alpha) / alpha)
}

/// Symmetric alpha-stable Levy process observed at `k / n`, held constant
/// between observations so that every increment is a jump.
///
/// Normalized so that `E exp(iuX_t) = exp(-t sigma^alpha |u|^alpha / 2)`;
/// at `alpha = 2` this is Brownian motion with variance `sigma^2 t`.
pub fn stable(alpha: f64, n: usize, sigma: f64, rng: &mut Rng) -> Result<CadlagPath> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(Error::InvalidAlpha(alpha));
    }
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let dt = 1.0 / n as f64;
    let scale = sigma * (dt / 2.0).powf(1.0 / alpha);
    let mut times = Vec::with_capacity(n + 1);
    let mut left = Vec::with_capacity(n + 1);
    let mut right = Vec::with_capacity(n + 1);
    times.push(0.0);
    left.push(0.0);
    right.push(0.0);
    let mut x = 0.0;
    for k in 1..=n {
        times.push(k as f64 * dt);
        left.push(x);
        x += scale * cms(alpha, rng);
        right.push(x);
    }
    *times.last_mut().unwrap() = 1.0;
    CadlagPath::new(times, left, right)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum JumpLaw {
    /// Centered normal jumps with the given standard deviation.
    Gaussian(f64),
    /// Every jump has this size.
    Constant(f64),
}

/// Compound Poisson process on `[0, 1]` with the given jump rate.
pub fn cpoisson(rate: f64, law: JumpLaw, rng: &mut Rng) -> Result<CadlagPath> {
    if !(rate >= 0.0) || !rate.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "jump rate {rate} must be >= 0"
        )));
    }
    let count = if rate == 0.0 {
        0
    } else {
        Poisson::new(rate).unwrap().sample(rng) as usize
    };
    let mut jt: Vec<f64> = (0..count)
        .map(|_| loop {
            let u: f64 = rng.gen();
            if u > 0.0 {
                break u;
            }
        })
        .collect();
    jt.sort_by(|a, b| a.partial_cmp(b).unwrap());
    jt.dedup();
    let mut times = vec![0.0];
    let mut left = vec![0.0];
    let mut right = vec![0.0];
    let mut x = 0.0;
    for &t in &jt {
        let j = match law {
            JumpLaw::Gaussian(s) => s * rng.sample::<f64, _>(StandardNormal),
            JumpLaw::Constant(c) => c,
        };
        times.push(t);
        left.push(x);
        x += j;
        right.push(x);
    }
    if *times.last().unwrap() < 1.0 {
        times.push(1.0);
        left.push(x);
        right.push(x);
    }
    CadlagPath::new(times, left, right)
}
