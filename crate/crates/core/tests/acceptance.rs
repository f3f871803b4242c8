//! Acceptance criteria, one PASS/FAIL line each. Criteria listed in
//! `KNOWN_FAILING` are reported but do not fail the run.

use pathforest::generators::{brownian, fbm, fixtures, stable, stream_rng, FbmMethod, Rng};
use pathforest::integrate::{
    cde_solve, g_sum, lift_linear, rough_integral, stieltjes, tree_integral, young, CdeOptions,
    CdeScheme, ClosedFormRoughPath, FnControlled, Integrand, LevelQuadrature, LinearField,
    Primitive, RoughOptions, RoughPath, TreeIntegralOptions, YoungOptions,
};
use pathforest::path::{delta, embed_cadlag, JumpWeights};
use pathforest::tree::{build_merge_tree, leaf_pairs, trim_profile, ScaleGrid};
use pathforest::variation::{
    fit_line, hurst_drawdown_profile, hurst_ratio, median, pvar_bounds, pvar_exact,
    variation_index, Window,
};
use pathforest::SampledPath;
use rand::Rng as _;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

// H=0.3 variation index and H=0.7 drawdown statistic: finite-n bias larger
// than the tolerance at n = 2^20.
const KNOWN_FAILING: &[&str] = &["A6", "A7"];

const TREE_IDENTITY_TOL: f64 = 1e-9;
const SANDWICH_SLACK: f64 = 1e-12;
const BM_BAND: (f64, f64) = (0.8, 1.2);
const BM_DECADE: (f64, f64) = (0.02, 0.2);
const FBM_INDEX_TOL: f64 = 0.15;
const HURST_TOL: f64 = 0.1;
const DRAWDOWN_TOL: f64 = 0.2;
const STABLE_SLOPE_TOL: f64 = 0.2;
const STABLE_DECADE: (f64, f64) = (0.01, 0.1);
const ROUTES_TOL: f64 = 1e-6;
const PRIMITIVE_TOL: f64 = 1e-9;
const SMOOTH_ROUGH_TOL: f64 = 1e-6;
const CHEN_TOL: f64 = 1e-10;
const EXPONENT_SLACK: f64 = 0.2;
const CROSS_REL_TOL: f64 = 0.01;
const CDE_TOL: f64 = 1e-4;
const KS_TOL: f64 = 0.05;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Random piecewise-linear path with `2..=max` knots at random times, values in `[-1, 1]`.
fn random_path(rng: &mut Rng, max: usize) -> SampledPath {
    loop {
        let n = rng.gen_range(2..=max);
        let mut t: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(0.1..1.0)).collect();
        let total: f64 = t.iter().sum();
        let mut acc = 0.0;
        for x in t.iter_mut() {
            acc += *x / total;
            *x = acc;
        }
        t.insert(0, 0.0);
        *t.last_mut().unwrap() = 1.0;
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let p = SampledPath::new(t, v).unwrap();
        if !p.is_constant() {
            return p;
        }
    }
}

fn random_paths(count: usize, max: usize, seed: u64) -> Vec<SampledPath> {
    let mut rng = stream_rng(seed, 0);
    (0..count).map(|_| random_path(&mut rng, max)).collect()
}

fn fbm_path(h: f64, n: usize, seed: u64, stream: u64) -> SampledPath {
    fbm(h, n, 1.0, FbmMethod::Auto, &mut stream_rng(seed, stream)).unwrap()
}

fn a1() -> Outcome {
    let mut worst = 0.0f64;
    for p in random_paths(200, 200, 1) {
        let tree = build_merge_tree(&p).unwrap();
        let tv = p.total_variation();
        let d = delta(&p, 0.0, 1.0).unwrap();
        worst = worst.max((2.0 * tree.total_length() - d - tv).abs() / tv);
    }
    outcome(
        worst <= TREE_IDENTITY_TOL,
        format!("max |2 lambda - delta(0,1) - TV| / TV = {worst:.2e}"),
    )
}

fn a2() -> Outcome {
    let mut scales = 0;
    let mut mismatches = 0;
    for p in random_paths(200, 200, 1) {
        let r = p.range();
        let mut s = ScaleGrid::between(r, 1e-4 * r, 60).unwrap().scales;
        s.extend(ScaleGrid::for_path(&p).unwrap().scales);
        let tree = build_merge_tree(&p).unwrap();
        let heights = tree.persistence();
        // Midpoints between distinct branch heights hit every step of N.
        s.extend(
            heights
                .windows(2)
                .filter(|w| w[1] < w[0])
                .map(|w| 0.5 * (w[0] + w[1])),
        );
        let grid = ScaleGrid::explicit(s).unwrap();
        let prof = trim_profile(&p, &grid).unwrap();
        for (k, &a) in prof.scales.iter().enumerate() {
            scales += 1;
            let census = heights.iter().filter(|&&h| h >= a).count();
            if prof.counts[k] != census {
                mismatches += 1;
            }
        }
    }
    outcome(
        mismatches == 0,
        format!("{mismatches} mismatches over {scales} scales (one inside every step of N)"),
    )
}

fn a3() -> Outcome {
    let mut bad = 0;
    let mut checks = 0;
    for p in random_paths(100, 200, 3) {
        for e in [1.5, 2.0, 3.0] {
            let b = pvar_bounds(&p, e).unwrap();
            let v = b.exact.unwrap();
            checks += 1;
            if !(b.lower <= v * (1.0 + SANDWICH_SLACK) && v <= b.upper * (1.0 + SANDWICH_SLACK)) {
                bad += 1;
            }
        }
    }
    let b = pvar_bounds(&fixtures::p0(), 2.0).unwrap();
    let fixture = (b.lower, b.exact.unwrap(), b.upper);
    outcome(
        bad == 0 && fixture == (9.0, 18.0, 20.0),
        format!("{bad}/{checks} violations; P0 at p=2: {fixture:?}"),
    )
}

/// Largest sum over every subsequence (brute force, `2^(n-2)` subsets).
fn enumerate_pvar(v: &[f64], p: f64) -> f64 {
    let n = v.len();
    let mut best = 0.0f64;
    for mask in 0u32..(1 << (n - 2)) {
        let mut prev = v[0];
        let mut s = 0.0;
        for i in 1..n - 1 {
            if mask & (1 << (i - 1)) != 0 {
                s += (v[i] - prev).abs().powf(p);
                prev = v[i];
            }
        }
        s += (v[n - 1] - prev).abs().powf(p);
        best = best.max(s);
    }
    best
}

fn a4() -> Outcome {
    // Integer data: every candidate sum is exact, so equality is meaningful.
    let mut rng = stream_rng(4, 0);
    let mut bad = 0;
    for _ in 0..500 {
        let n = rng.gen_range(2..=12);
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-9i32..=9) as f64).collect();
        let p = [1.0, 2.0, 3.0][rng.gen_range(0..3)];
        if pvar_exact(&v, p).unwrap() != enumerate_pvar(&v, p) {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{bad}/500 instances differ"))
}

fn a5() -> Outcome {
    let n = 1 << 20;
    let grid = ScaleGrid::between(BM_DECADE.1, BM_DECADE.0, 11).unwrap();
    let seeds = 20;
    let mut sums = vec![0.0; grid.scales.len()];
    for s in 0..seeds {
        let p = brownian(n, 1.0, &mut stream_rng(5, s));
        let prof = trim_profile(&p, &grid).unwrap();
        for (k, &a) in prof.scales.iter().enumerate() {
            sums[k] += 2.0 * a * a * prof.counts[k] as f64;
        }
    }
    let means: Vec<f64> = sums.iter().map(|s| s / seeds as f64).collect();
    let (lo, hi) = means
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(l, h), &m| (l.min(m), h.max(m)));
    outcome(
        lo >= BM_BAND.0 && hi <= BM_BAND.1,
        format!(
            "mean 2a^2 N^a over a in [{}, {}] ranges over [{lo:.3}, {hi:.3}]",
            BM_DECADE.0, BM_DECADE.1
        ),
    )
}

fn profile_grid(p: &SampledPath) -> ScaleGrid {
    ScaleGrid::geometric(p.range(), 2f64.powf(-1.0 / 8.0), 160)
        .unwrap()
        .with_floor(4.0 * p.max_increment())
}

fn a6() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (i, h) in [0.3, 0.5, 0.7].into_iter().enumerate() {
        let mut est: Vec<f64> = (0..10)
            .map(|s| {
                let p = fbm_path(h, 1 << 20, 60 + i as u64, s);
                let prof = trim_profile(&p, &profile_grid(&p)).unwrap();
                variation_index(&prof, &Window::default()).unwrap().slope
            })
            .collect();
        let m = median(&mut est);
        let pass = (m - 1.0 / h).abs() <= FBM_INDEX_TOL;
        ok &= pass;
        parts.push(format!(
            "H={h}: {m:.3} vs {:.3}{}",
            1.0 / h,
            if pass { "" } else { " (out)" }
        ));
    }
    outcome(ok, parts.join("; "))
}

fn a7() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (i, h) in [0.5, 0.7].into_iter().enumerate() {
        let (mut hr, mut dd): (Vec<f64>, Vec<f64>) = (0..10)
            .map(|s| {
                let p = fbm_path(h, 1 << 20, 70 + i as u64, s);
                let prof = trim_profile(&p, &ScaleGrid::for_path(&p).unwrap()).unwrap();
                let w = Window::default();
                (
                    hurst_ratio(&prof, &w).unwrap().hurst,
                    hurst_drawdown_profile(&prof, &w).unwrap().statistic,
                )
            })
            .unzip();
        let (mh, md) = (median(&mut hr), median(&mut dd));
        let want = (2.0 * h - 1.0) / (1.0 - h);
        let (rok, dok) = (
            (mh - h).abs() <= HURST_TOL,
            (md - want).abs() <= DRAWDOWN_TOL,
        );
        ok &= rok && dok;
        let out = |b: bool| if b { "" } else { " (out)" };
        parts.push(format!(
            "H={h}: ratio H {mh:.3}{}, drawdown {md:.3} vs {want:.3}{}",
            out(rok),
            out(dok)
        ));
    }
    outcome(ok, parts.join("; "))
}

fn a8() -> Outcome {
    let alpha = 1.5;
    let grid = ScaleGrid::between(STABLE_DECADE.1, STABLE_DECADE.0, 11).unwrap();
    let mut slopes = Vec::new();
    let mut unequal = 0;
    for s in 0..10 {
        let c = stable(alpha, 1 << 18, 1.0, &mut stream_rng(8, s)).unwrap();
        let emb = embed_cadlag(&c, &JumpWeights::Proportional).unwrap();
        for p in [1.5, 2.0] {
            let direct = pvar_exact(&c.interleaved_values(), p).unwrap();
            if pvar_exact(emb.path.values(), p).unwrap() != direct {
                unequal += 1;
            }
        }
        let prof = trim_profile(&emb.path, &grid).unwrap();
        let x: Vec<f64> = prof.scales.iter().map(|a| a.ln()).collect();
        let y: Vec<f64> = prof.counts.iter().map(|&n| (n as f64).ln()).collect();
        slopes.push(fit_line(&x, &y).slope);
    }
    let m = median(&mut slopes);
    outcome(
        (m + alpha).abs() <= STABLE_SLOPE_TOL && unequal == 0,
        format!(
            "median slope over a in [{}, {}]: {m:.3} vs {}; V_p mismatches {unequal}/20",
            STABLE_DECADE.0, STABLE_DECADE.1, -alpha
        ),
    )
}

fn a9() -> Outcome {
    let mut worst_routes = 0.0f64;
    let mut worst_prim = 0.0f64;
    let opts = TreeIntegralOptions {
        tol: 1e-9,
        quadrature: LevelQuadrature::Exact,
        panels: 4,
    };
    for p in random_paths(100, 20, 9) {
        let grid = ScaleGrid::between(p.range(), 1e-12 * p.range(), 61).unwrap();
        let rhos = [
            Integrand::constant(1.0),
            Integrand::time(),
            Integrand::of_path(Primitive::Identity, &p),
            Integrand::of_path(Primitive::Square, &p),
        ];
        for rho in &rhos {
            let s = stieltjes(rho, &p, 4);
            let t = tree_integral(rho, &p, &grid, &opts).unwrap();
            let y = young(rho, &p, &YoungOptions::default()).unwrap().value;
            for v in [t.route_a, t.route_b, y] {
                worst_routes = worst_routes.max((v - s).abs());
            }
        }
        for f in [
            Primitive::Identity,
            Primitive::Square,
            Primitive::Cos,
            Primitive::Exp,
        ] {
            let exact = f.antiderivative(p.value_at(1.0)) - f.antiderivative(p.value_at(0.0));
            let rho = Integrand::of_path(f, &p);
            let t = tree_integral(&rho, &p, &grid, &opts).unwrap();
            for v in [stieltjes(&rho, &p, 4), t.route_a, t.route_b] {
                worst_prim = worst_prim.max((v - exact).abs());
            }
        }
    }
    outcome(
        worst_routes <= ROUTES_TOL && worst_prim <= PRIMITIVE_TOL,
        format!("routes max diff {worst_routes:.2e}; primitive identity max err {worst_prim:.2e}"),
    )
}

/// Unit circle `(cos 2 pi t, sin 2 pi t)` with its exact second level.
fn circle() -> ClosedFormRoughPath<impl Fn(f64) -> Vec<f64>, impl Fn(f64, f64) -> Vec<f64>> {
    ClosedFormRoughPath {
        d: 2,
        xi: |t: f64| vec![(2.0 * PI * t).cos(), (2.0 * PI * t).sin()],
        gamma: |s: f64, t: f64| {
            let (a, b) = (2.0 * PI * s, 2.0 * PI * t);
            let (cs, ss, ct, st) = (a.cos(), a.sin(), b.cos(), b.sin());
            let cc = |x: f64| x / 2.0 + (2.0 * x).sin() / 4.0;
            let sn = |x: f64| x / 2.0 - (2.0 * x).sin() / 4.0;
            vec![
                0.5 * (ct - cs) * (ct - cs),
                cc(b) - cc(a) - cs * (st - ss),
                -(sn(b) - sn(a)) - ss * (ct - cs),
                0.5 * (st - ss) * (st - ss),
            ]
        },
        r: 1.0,
    }
}

fn a10() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;

    // Telescoping: xi = t, Gamma = (t - s)^2 / 2, rho = t, phi = 1.
    let line = ClosedFormRoughPath {
        d: 1,
        xi: |t: f64| vec![t],
        gamma: |s: f64, t: f64| vec![0.5 * (t - s) * (t - s)],
        r: 1.0,
    };
    let id = FnControlled {
        d: 1,
        rho: |t: f64| vec![t],
        phi: |_t: f64| vec![1.0],
    };
    let mut rng = stream_rng(10, 0);
    let mut exact = true;
    for _ in 0..200 {
        let m: u32 = 1 << rng.gen_range(1..=12);
        let mut part: Vec<f64> = vec![0.0];
        part.extend(
            (1..m)
                .filter(|_| rng.gen_bool(0.5))
                .map(|k| k as f64 / m as f64),
        );
        part.push(1.0);
        exact &= g_sum(&id, &line, &part).unwrap() == 0.5;
    }
    exact &= rough_integral(&id, &line, 0.0, 1.0, &RoughOptions::default())
        .unwrap()
        .value
        == 0.5;
    ok &= exact;
    notes.push(format!("telescoping exact: {exact}"));

    // Integrands nonlinear in xi, so the compensated sums are not exact:
    // int_0^{1/2} (x^1)^2 dx^0 = -4/3 on the circle, int_0^{1/4} x^2 dx = 1/3 for x = sin(2 pi t).
    let c = circle();
    let sq_dcos = FnControlled {
        d: 2,
        rho: |t: f64| vec![(2.0 * PI * t).sin().powi(2), 0.0],
        phi: |t: f64| vec![0.0, 0.0, 2.0 * (2.0 * PI * t).sin(), 0.0],
    };
    let wave = ClosedFormRoughPath {
        d: 1,
        xi: |t: f64| vec![(2.0 * PI * t).sin()],
        gamma: |s: f64, t: f64| {
            let d = (2.0 * PI * t).sin() - (2.0 * PI * s).sin();
            vec![0.5 * d * d]
        },
        r: 1.0,
    };
    let sq = FnControlled {
        d: 1,
        rho: |t: f64| vec![(2.0 * PI * t).sin().powi(2)],
        phi: |t: f64| vec![2.0 * (2.0 * PI * t).sin()],
    };
    let opts = RoughOptions {
        tol: 1e-12,
        max_depth: 24,
    };
    let r1 = rough_integral(&sq_dcos, &c, 0.0, 0.5, &opts).unwrap();
    let r2 = rough_integral(&sq, &wave, 0.0, 0.25, &opts).unwrap();
    let err = (r1.value + 4.0 / 3.0)
        .abs()
        .max((r2.value - 1.0 / 3.0).abs());
    ok &= err <= SMOOTH_ROUGH_TOL;
    notes.push(format!("closed-form err {err:.1e}"));

    let want = 3.0 * c.exponent() - 1.0 - EXPONENT_SLACK;
    let exps: Vec<f64> = [&r1, &r2].iter().filter_map(|r| r.exponent).collect();
    let eok = exps.len() == 2 && exps.iter().all(|&e| e >= want);
    ok &= eok;
    notes.push(format!(
        "refinement exponents {exps:.2?} (need >= {want:.1})"
    ));

    let a = fbm_path(0.7, 1 << 12, 10, 1);
    let b = fbm_path(0.7, 1 << 12, 10, 2);
    let lift = lift_linear(&[a, b]).unwrap();
    let mut chen = 0.0f64;
    for _ in 0..1000 {
        let mut x = [rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>()];
        x.sort_by(|p, q| p.partial_cmp(q).unwrap());
        let [s, t, u] = x;
        let (g1, g2, g) = (lift.gamma(s, t), lift.gamma(t, u), lift.gamma(s, u));
        let (xs, xt, xu) = (lift.xi(s), lift.xi(t), lift.xi(u));
        for i in 0..2 {
            for j in 0..2 {
                let k = i * 2 + j;
                let r = g1[k] + g2[k] + (xt[i] - xs[i]) * (xu[j] - xt[j]) - g[k];
                chen = chen.max(r.abs());
            }
        }
    }
    ok &= chen < CHEN_TOL;
    notes.push(format!("Chen residual {chen:.1e}"));
    outcome(ok, notes.join("; "))
}

fn a11() -> Outcome {
    let n = 1 << 16;
    let mut worst = 0.0f64;
    for s in 0..10 {
        let omega = fbm_path(0.7, n, 11, 2 * s);
        let eta = fbm_path(0.7, n, 11, 2 * s + 1);
        let rho = Integrand::Sampled(eta);
        let y = young(&rho, &omega, &YoungOptions::default()).unwrap().value;
        // Finest scale the samples resolve: the rms increment.
        let v = omega.values();
        let rms = (v.windows(2).map(|w| (w[1] - w[0]).powi(2)).sum::<f64>() / n as f64).sqrt();
        let grid = ScaleGrid::between(omega.range(), rms, 40).unwrap();
        let t = tree_integral(&rho, &omega, &grid, &TreeIntegralOptions::default()).unwrap();
        worst = worst.max((t.route_a - y).abs() / y.abs());
    }
    outcome(
        worst < CROSS_REL_TOL,
        format!("max relative difference at the rms-increment scale {worst:.2e}"),
    )
}

fn a12() -> Outcome {
    let f = LinearField::scalar();
    let opts = CdeOptions {
        scheme: CdeScheme::Picard,
        ..Default::default()
    };
    let line = SampledPath::new(vec![0.0, 1.0], vec![0.0, 1.0]).unwrap();
    let x = cde_solve(&f, &[line], &[1.5], &opts).unwrap();
    let e1 = (x.final_state()[0] / 1.5 - std::f64::consts::E).abs();
    let m = 4096;
    let sine = SampledPath::uniform(
        (0..=m)
            .map(|k| (2.0 * PI * k as f64 / m as f64).sin())
            .collect(),
    )
    .unwrap();
    let x = cde_solve(&f, &[sine], &[1.5], &opts).unwrap();
    let e2 = (x.final_state()[0] - 1.5).abs();
    outcome(
        e1 <= CDE_TOL && e2 <= CDE_TOL,
        format!("|x(1)/x0 - e| = {e1:.1e}; closed loop |x(1) - x0| = {e2:.1e}"),
    )
}

fn a13() -> Outcome {
    let p = brownian(1 << 20, 1.0, &mut stream_rng(13, 0));
    let a = 0.005;
    let pairs = leaf_pairs(&p, a).unwrap();
    let mut ups: Vec<f64> = pairs.iter().map(|l| l.tau_up).collect();
    ups.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let n = ups.len() as f64;
    let ks = ups
        .iter()
        .enumerate()
        .map(|(i, &u)| ((i + 1) as f64 / n - u).max(u - i as f64 / n))
        .fold(0.0, f64::max);
    outcome(
        pairs.len() >= 10_000 && ks < KS_TOL,
        format!("a = {a}: N^a = {}, KS = {ks:.4}", pairs.len()),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 13] = [
        ("A1", a1, Some(Duration::from_secs(5))),
        ("A2", a2, None),
        ("A3", a3, Some(Duration::from_secs(30))),
        ("A4", a4, None),
        ("A5", a5, Some(Duration::from_secs(60))),
        ("A6", a6, Some(Duration::from_secs(120))),
        ("A7", a7, None),
        ("A8", a8, None),
        ("A9", a9, None),
        ("A10", a10, None),
        ("A11", a11, None),
        ("A12", a12, None),
        ("A13", a13, None),
    ];
    let only: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| a.starts_with('A'))
        .collect();
    let mut unexpected = Vec::new();
    for (name, run, budget) in criteria {
        if !only.is_empty() && !only.iter().any(|o| o == name) {
            continue;
        }
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let in_time = budget.map_or(true, |b| took <= b);
        let pass = out.pass && in_time;
        let budget_note = budget.map_or(String::new(), |b| format!(" (budget {}s)", b.as_secs()));
        println!(
            "{} {name}: {} [{:.2}s{budget_note}]",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            took.as_secs_f64()
        );
        if !pass && !KNOWN_FAILING.contains(&name) {
            unexpected.push(name);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
