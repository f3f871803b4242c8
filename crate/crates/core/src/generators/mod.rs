//! Sample paths: fractional Brownian motion, symmetric stable and compound
//! Poisson processes, star paths and fixtures.
//!
//! Randomness comes from ChaCha8 with a 64-bit seed and a 64-bit stream id;
//! ensemble member `i` uses stream `i`, so members are independent of the
//! order in which they are drawn.

mod fbm;
pub mod fixtures;
mod jumps;

pub use fbm::{brownian, fbm, fgn_autocovariance, FbmMethod, CIRCULANT_THRESHOLD};
pub use jumps::{cpoisson, stable, JumpLaw};

use crate::error::{Error, Result};
use crate::path::{CadlagPath, SampledPath};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub type Rng = ChaCha8Rng;

/// Generator for ensemble member `stream` of the ensemble `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum Model {
    Fbm { hurst: f64 },
    Brownian,
    Stable { alpha: f64 },
    CompoundPoisson { rate: f64, jump_std: f64 },
    Star { alpha: f64, teeth: usize },
}

/// Full description of a generated path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub model: Model,
    /// Number of increments (the path has `n + 1` knots).
    pub n: usize,
    pub seed: u64,
    #[serde(default)]
    pub stream: u64,
    #[serde(default = "one")]
    pub sigma: f64,
}

fn one() -> f64 {
    1.0
}

impl GenSpec {
    pub fn new(model: Model, n: usize, seed: u64) -> Self {
        GenSpec {
            model,
            n,
            seed,
            stream: 0,
            sigma: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Generated {
    Continuous(SampledPath),
    Cadlag(CadlagPath),
}

pub fn generate(spec: &GenSpec) -> Result<Generated> {
    if spec.n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let mut rng = stream_rng(spec.seed, spec.stream);
    Ok(match spec.model {
        Model::Fbm { hurst } => {
            Generated::Continuous(fbm(hurst, spec.n, spec.sigma, FbmMethod::Auto, &mut rng)?)
        }
        Model::Brownian => Generated::Continuous(brownian(spec.n, spec.sigma, &mut rng)),
        Model::Stable { alpha } => Generated::Cadlag(stable(alpha, spec.n, spec.sigma, &mut rng)?),
        Model::CompoundPoisson { rate, jump_std } => {
            Generated::Cadlag(cpoisson(rate, JumpLaw::Gaussian(jump_std), &mut rng)?)
        }
        Model::Star { alpha, teeth } => Generated::Continuous(star_path(alpha, teeth)?),
    })
}

/// Teeth of height `k^(-alpha)` at `1/(2k)`, touching 0 at `1/(2k+1)`, `k = 1..=teeth`.
pub fn star_path(alpha: f64, teeth: usize) -> Result<SampledPath> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "star exponent {alpha} must be > 0"
        )));
    }
    if teeth == 0 {
        return Err(Error::InvalidArgument(
            "star path needs at least one tooth".into(),
        ));
    }
    let mut t = vec![0.0];
    let mut v = vec![0.0];
    for m in (1..=2 * teeth + 1).rev() {
        t.push(1.0 / m as f64);
        v.push(if m % 2 == 0 {
            ((m / 2) as f64).powf(-alpha)
        } else {
            0.0
        });
    }
    SampledPath::new(t, v)
}
