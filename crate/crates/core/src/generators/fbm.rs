use super::Rng;
use crate::error::{Error, Result};
use crate::path::SampledPath;
use rand::Rng as _;
use rand_distr::StandardNormal;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

/// Above this many increments the circulant embedding is used.
pub const CIRCULANT_THRESHOLD: usize = 4096;
/// Size cap for the quadratic-time fallback.
const DIRECT_CAP: usize = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FbmMethod {
    Auto,
    /// Durbin-Levinson factorization of the Toeplitz covariance, O(n^2).
    Direct,
    /// Davies-Harte circulant embedding, O(n log n).
    Circulant,
}

/// Autocovariance of unit-variance fractional Gaussian noise at lag `k`.
pub fn fgn_autocovariance(hurst: f64, k: usize) -> f64 {
    let h2 = 2.0 * hurst;
    let k = k as f64;
    0.5 * ((k + 1.0).powf(h2) - 2.0 * k.powf(h2) + (k - 1.0).abs().powf(h2))
}

fn check_hurst(h: f64) -> Result<()> {
    if !(h > 0.0 && h < 1.0) {
        return Err(Error::InvalidHurst(h));
    }
    Ok(())
}

fn normal(rng: &mut Rng) -> f64 {
    rng.sample(StandardNormal)
}

fn fgn_direct(h: f64, n: usize, rng: &mut Rng) -> Vec<f64> {
    let gamma: Vec<f64> = (0..=n).map(|k| fgn_autocovariance(h, k)).collect();
    let mut x = Vec::with_capacity(n);
    let mut phi: Vec<f64> = Vec::with_capacity(n);
    let mut prev: Vec<f64> = Vec::with_capacity(n);
    let mut var = gamma[0];
    x.push(var.sqrt() * normal(rng));
    for i in 1..n {
        let mut acc = gamma[i];
        for j in 0..i - 1 {
            acc -= phi[j] * gamma[i - 1 - j];
        }
        let kappa = acc / var;
        prev.clear();
        prev.extend_from_slice(&phi);
        for j in 0..i - 1 {
            phi[j] = prev[j] - kappa * prev[i - 2 - j];
        }
        phi.push(kappa);
        var *= 1.0 - kappa * kappa;
        let mean: f64 = (0..i).map(|j| phi[j] * x[i - 1 - j]).sum();
        x.push(mean + var.max(0.0).sqrt() * normal(rng));
    }
    x
}

fn fgn_circulant(h: f64, n: usize, rng: &mut Rng) -> Result<Vec<f64>> {
    let m = 2 * n;
    let mut c: Vec<Complex64> = (0..m)
        .map(|k| {
            let lag = if k <= n { k } else { m - k };
            Complex64::new(fgn_autocovariance(h, lag), 0.0)
        })
        .collect();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(m);
    fft.process(&mut c);
    let tol = 1e-10 * c[0].re.abs().max(1.0);
    let mut lam = Vec::with_capacity(m);
    for z in &c {
        if z.re < -tol {
            return Err(Error::EmbeddingNotPsd);
        }
        lam.push(z.re.max(0.0));
    }
    let mut w = vec![Complex64::new(0.0, 0.0); m];
    let scale = |k: usize| (lam[k] / m as f64).sqrt();
    w[0] = Complex64::new(scale(0) * normal(rng), 0.0);
    w[n] = Complex64::new(scale(n) * normal(rng), 0.0);
    for k in 1..n {
        let s = scale(k) / std::f64::consts::SQRT_2;
        let z = Complex64::new(s * normal(rng), s * normal(rng));
        w[k] = z;
        w[m - k] = z.conj();
    }
    fft.process(&mut w);
    Ok(w[..n].iter().map(|z| z.re).collect())
}

fn cumulative(increments: &[f64], scale: f64) -> SampledPath {
    let mut v = Vec::with_capacity(increments.len() + 1);
    let mut acc = 0.0;
    v.push(0.0);
    for x in increments {
        acc += scale * x;
        v.push(acc);
    }
    SampledPath::uniform(v).expect("finite increments")
}

/// Fractional Brownian motion on `[0, 1]` with `n` increments, `W_0 = 0` and
/// `cov(W_s, W_t) = sigma^2 / 2 (s^2H + t^2H - |t - s|^2H)`.
pub fn fbm(
    hurst: f64,
    n: usize,
    sigma: f64,
    method: FbmMethod,
    rng: &mut Rng,
) -> Result<SampledPath> {
    check_hurst(hurst)?;
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let direct = match method {
        FbmMethod::Auto => n <= CIRCULANT_THRESHOLD,
        FbmMethod::Direct => true,
        FbmMethod::Circulant => false,
    };
    let inc = if direct {
        fgn_direct(hurst, n, rng)
    } else {
        match fgn_circulant(hurst, n, rng) {
            Ok(x) => x,
            Err(Error::EmbeddingNotPsd) if n <= DIRECT_CAP => fgn_direct(hurst, n, rng),
            Err(e) => return Err(e),
        }
    };
    Ok(cumulative(&inc, sigma * (n as f64).powf(-hurst)))
}

/// Standard Brownian motion scaled by `sigma`, from independent increments.
pub fn brownian(n: usize, sigma: f64, rng: &mut Rng) -> SampledPath {
    let inc: Vec<f64> = (0..n).map(|_| normal(rng)).collect();
    cumulative(&inc, sigma / (n as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::stream_rng;

    #[test]
    fn rejects_bad_hurst() {
        let mut r = stream_rng(1, 0);
        for h in [0.0, 1.0, -0.2, 1.5, f64::NAN] {
            assert!(matches!(
                fbm(h, 16, 1.0, FbmMethod::Auto, &mut r),
                Err(Error::InvalidHurst(_))
            ));
        }
    }

    #[test]
    fn half_hurst_covariance_is_white() {
        assert_eq!(fgn_autocovariance(0.5, 0), 1.0);
        assert!(fgn_autocovariance(0.5, 3).abs() < 1e-15);
    }

    #[test]
    fn circulant_eigenvalues_nonnegative() {
        let mut r = stream_rng(2, 0);
        for h in [0.1, 0.3, 0.5, 0.7, 0.9] {
            assert!(fgn_circulant(h, 256, &mut r).is_ok());
        }
    }

    #[test]
    fn endpoint_variance() {
        // Var W_1 = sigma^2 for both methods.
        for method in [FbmMethod::Direct, FbmMethod::Circulant] {
            let m = 2000;
            let s: f64 = (0..m)
                .map(|i| {
                    let mut r = stream_rng(11, i);
                    let p = fbm(0.7, 64, 2.0, method, &mut r).unwrap();
                    p.values()[64].powi(2)
                })
                .sum::<f64>()
                / m as f64;
            assert!((s - 4.0).abs() < 0.35, "{method:?}: {s}");
        }
    }

    #[test]
    fn brownian_quadratic_variation() {
        let mut r = stream_rng(5, 0);
        let w = brownian(1 << 20, 1.5, &mut r);
        let qv: f64 = w.values().windows(2).map(|d| (d[1] - d[0]).powi(2)).sum();
        assert!((qv / 2.25 - 1.0).abs() < 0.01, "{qv}");
    }
}
