mod common;

use common::path;
use pathforest::generators::star_path;
use pathforest::variation::{pvar_bounds, pvar_exact};
use proptest::prelude::*;

/// Maximum over all subsequences keeping both endpoints, summed left to right.
pub fn brute_force(v: &[f64], p: f64) -> f64 {
    let n = v.len();
    if n < 2 {
        return 0.0;
    }
    let inner = n - 2;
    let mut best = 0.0f64;
    for mask in 0u32..(1 << inner) {
        let mut prev = v[0];
        let mut s = 0.0;
        for i in 0..inner {
            if mask & (1 << i) != 0 {
                s += (v[i + 1] - prev).abs().powf(p);
                prev = v[i + 1];
            }
        }
        s += (v[n - 1] - prev).abs().powf(p);
        best = best.max(s);
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn dp_equals_enumeration_on_integers(
        v in prop::collection::vec(-8i32..=8, 2..=12),
        p in prop::sample::select(vec![1.0, 2.0, 3.0]),
    ) {
        // Every partial sum is an exact integer, so ties cannot round apart.
        let v: Vec<f64> = v.into_iter().map(f64::from).collect();
        prop_assert_eq!(pvar_exact(&v, p).unwrap(), brute_force(&v, p));
    }

    #[test]
    fn dp_matches_enumeration(
        v in prop::collection::vec(-5.0f64..5.0, 2..=12),
        p in prop::sample::select(vec![1.0, 1.5, 2.0, 2.5, 3.0]),
    ) {
        let (a, b) = (pvar_exact(&v, p).unwrap(), brute_force(&v, p));
        prop_assert!((a - b).abs() <= 1e-12 * b.max(1.0), "{} vs {}", a, b);
    }

    #[test]
    fn tree_bounds_sandwich(p in path(120), e in prop::sample::select(vec![1.5, 2.0, 3.0])) {
        let b = pvar_bounds(&p, e).unwrap();
        let exact = b.exact.unwrap();
        prop_assert!(b.lower <= exact * (1.0 + 1e-12), "{} > {}", b.lower, exact);
        prop_assert!(exact <= b.upper * (1.0 + 1e-12), "{} > {}", exact, b.upper);
    }

    #[test]
    fn star_path_variation(alpha in 0.2f64..2.0, p in 1.0f64..4.0, teeth in 1usize..60) {
        let s = star_path(alpha, teeth).unwrap();
        let want: f64 = 2.0 * (1..=teeth).map(|k| (k as f64).powf(-alpha * p)).sum::<f64>();
        let got = pvar_exact(s.values(), p).unwrap();
        prop_assert!((got - want).abs() <= 1e-12 * want, "{} vs {}", got, want);
    }
}
