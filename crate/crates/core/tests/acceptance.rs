//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use watermelon::detasym::{fk_direct, fk_expand, powerlaw_residual, ShiftVectors, TruncatedSeries};
use watermelon::exactnum::PiPoly;
use watermelon::fit::{decay_rate, fit_exponent, linear_regression};
use watermelon::green::{
    g_fin_closed_row1, green_open_row1, potential_kernel_asympt, potential_kernel_exact, potential_kernel_numeric,
    shared_table,
};
use watermelon::lattice::{convergence_sweep, forests_bruteforce, standard_corpus, watermelon_prob_finite, RectDomain};
use watermelon::melon::{table_closed, table_open, watermelon_constant, watermelon_prob_halfplane, WatermelonSpec};
use watermelon::sampler::{mc_estimate, verify_early_exit, RngSeed};
use watermelon::BoundaryCondition::{self, Closed, Open};

type Outcome = Result<String, String>;

fn pp(s: &str) -> PiPoly {
    s.parse().expect("literal parses")
}

fn ensure(ok: bool, msg: String) -> Outcome {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

const TABLE_OPEN: [&str; 5] = [
    "1 - 2/pi",
    "3/4 - 2/pi",
    "-1 + 40/3/pi - 448/9/pi^2 + 512/9/pi^3",
    "-435/16 + 1843/6/pi - 11584/9/pi^2 + 64000/27/pi^3 - 131072/81/pi^4",
    "-8075/16 + 155293/24/pi - 7333616/225/pi^2 + 401408/5/pi^3 - 194510848/2025/pi^4 + 268435456/6075/pi^5",
];

const TABLE_CLOSED: [&str; 5] = [
    "1",
    "2/pi",
    "-1/4 + 2/pi",
    "1/2 - 26/3/pi + 128/3/pi^2 - 512/9/pi^3",
    "-7/16 + 145/6/pi - 896/3/pi^2 + 33280/27/pi^3 - 131072/81/pi^4",
];

fn tables() -> Outcome {
    let mut bad = Vec::new();
    for k in 1..=5 {
        if table_open(k) != pp(TABLE_OPEN[k - 1]) {
            bad.push(format!("open k={k}"));
        }
        if table_closed(k) != pp(TABLE_CLOSED[k - 1]) {
            bad.push(format!("closed k={k}"));
        }
    }
    ensure(bad.is_empty(), format!("10 rows compared, mismatches: {bad:?}"))
}

fn green_lists() -> Outcome {
    let open = ["1 - 2/pi", "2/pi - 1/2", "10/3/pi - 1", "38/3/pi - 4", "802/15/pi - 17", "1194/5/pi - 76"];
    let closed = ["-1/4", "-1/4 - 1/pi", "-3/4", "13/3/pi - 9/4", "64/3/pi - 31/4", "459/5/pi - 121/4"];
    let t = shared_table(12);
    let mut bad = Vec::new();
    for n in 0..=5 {
        let (o, c) = (pp(open[n as usize]), pp(closed[n as usize]));
        if t.green_open(n, 1, 1) != o || green_open_row1(n) != o {
            bad.push(format!("open n={n}"));
        }
        if t.green_closed(n, 1, 1).finite != c || g_fin_closed_row1(n) != c {
            bad.push(format!("closed n={n}"));
        }
    }
    ensure(bad.is_empty(), format!("12 values x 2 routes, mismatches: {bad:?}"))
}

fn kernel_oracle() -> Outcome {
    let mut worst: f64 = 0.0;
    for m in -10i64..=10 {
        for n in -10i64..=10 {
            let exact = potential_kernel_exact(m, n).to_f64();
            let numeric = if m.abs() >= n.abs() && m >= 0 && n >= 0 {
                potential_kernel_numeric(m, n, 32).map_err(|e| e.to_string())?
            } else {
                // the integrand is even in m and n and symmetric under m <-> n
                let (a, b) = (m.abs().max(n.abs()), m.abs().min(n.abs()));
                potential_kernel_numeric(b, a, 32).map_err(|e| e.to_string())?
            };
            worst = worst.max((exact - numeric).abs());
        }
    }
    ensure(worst <= 1e-7, format!("max |exact - quadrature| = {worst:.2e} over 441 points"))
}

fn kernel_expansion() -> Outcome {
    let err = |r: i64| (potential_kernel_exact(r, 0).to_f64() - potential_kernel_asympt(r as f64)).abs();
    let e = [err(10), err(20), err(40)];
    let q = [e[0] / e[1], e[1] / e[2]];
    ensure(
        q.iter().all(|q| (10.0..=22.0).contains(q)),
        format!("errors {:.3e}, {:.3e}, {:.3e}; ratios {:.2}, {:.2}", e[0], e[1], e[2], q[0], q[1]),
    )
}

fn lemma_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_501);
    let rat = |rng: &mut ChaCha8Rng| {
        BigRational::new(BigInt::from(rng.gen_range(-9i64..=9)), BigInt::from(rng.gen_range(1i64..=7)))
    };
    let mut checked = 0;
    for k in 1..=3usize {
        for _ in 0..50 {
            let t = rng.gen_range(0..=8usize);
            let b = TruncatedSeries::new((0..=t + 2 * (k - 1)).map(|_| rat(&mut rng)).collect());
            let u = (0..k).map(|_| rat(&mut rng)).collect();
            let v = (0..k).map(|_| rat(&mut rng)).collect();
            let sv = ShiftVectors::new(u, v).map_err(|e| e.to_string())?;
            let a = fk_expand(&b, &sv, t).map_err(|e| e.to_string())?;
            let d = fk_direct(&b, &sv, t).map_err(|e| e.to_string())?;
            if a != d {
                return Err(format!("mismatch at k={k}, cutoff {t}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} random instances equal exactly"))
}

fn powerlaw_lemma() -> Outcome {
    let (u, v) = ([0.0, 1.0], [1.0, 3.0]);
    let pts: Vec<(f64, f64)> = [1e2, 1e3, 1e4]
        .iter()
        .map(|&r| (r, powerlaw_residual(2.0, &u, &v, r).abs()))
        .collect();
    let slope = -decay_rate(&pts).map_err(|e| e.to_string())?.exponent;
    ensure((slope + 1.0).abs() <= 0.15, format!("residual slope {slope:.4}"))
}

fn sweep(bc: BoundaryCondition, k: usize) -> Result<Vec<(f64, f64)>, String> {
    (16..=256)
        .map(|r| {
            let spec = WatermelonSpec::new(bc, k, r).map_err(|e| e.to_string())?;
            let p = watermelon_prob_halfplane(&spec).map_err(|e| e.to_string())?;
            Ok((r as f64, p.value))
        })
        .collect()
}

fn theorem_open() -> Outcome {
    let s1 = sweep(Open, 1)?;
    let f1 = fit_exponent(&s1).map_err(|e| e.to_string())?;
    let amp = s1.last().map(|&(r, p)| p * r * r).unwrap();
    let c1 = 1.0 / (PI - 2.0);
    let f2 = fit_exponent(&sweep(Open, 2)?).map_err(|e| e.to_string())?;
    let ok = (f1.exponent - 2.0).abs() <= 0.1 && (amp / c1 - 1.0).abs() <= 0.03 && (f2.exponent - 6.0).abs() <= 0.3;
    ensure(
        ok,
        format!(
            "k=1 p = {:.4}, r^2 P(256) = {amp:.5} vs C = {c1:.5}; k=2 p = {:.4}",
            f1.exponent, f2.exponent
        ),
    )
}

/// Slope of the fit residuals against `ln ln r` and its standard error.
fn loglog_trend(pts: &[(f64, f64)], residuals: &[f64]) -> (f64, f64) {
    let x: Vec<f64> = pts.iter().map(|p| p.0.ln().ln()).collect();
    let (_, b, se, _) = linear_regression(&x, residuals);
    (b, se)
}

fn theorem_closed() -> Outcome {
    let s2 = sweep(Closed, 2)?;
    let f2 = fit_exponent(&s2).map_err(|e| e.to_string())?;
    let a2 = s2.last().map(|&(r, p)| p * r * r).unwrap();
    let s3 = sweep(Closed, 3)?;
    let f3 = fit_exponent(&s3).map_err(|e| e.to_string())?;
    let a3 = s3.last().map(|&(r, p)| p * r.powi(6)).unwrap();
    let c3 = watermelon_constant(Closed, 3).value;
    let c3_formula = 2.0 / (PI * PI * (2.0 / PI - 0.25));
    let (b2, se2) = loglog_trend(&s2, &f2.residuals);
    let (b3, se3) = loglog_trend(&s3, &f3.residuals);
    let ok = (f2.exponent - 2.0).abs() <= 0.1
        && (a2 / 0.5 - 1.0).abs() <= 0.03
        && (f3.exponent - 6.0).abs() <= 0.3
        && (a3 / c3 - 1.0).abs() <= 0.03
        && (c3 / c3_formula - 1.0).abs() < 1e-12
        && b2.abs() <= 2.0 * se2
        && b3.abs() <= 2.0 * se3;
    ensure(
        ok,
        format!(
            "k=2 p = {:.4}, r^2 P(256) = {a2:.5}; k=3 p = {:.4}, r^6 P(256) = {a3:.5} vs C = {c3:.5}; \
             ln ln r trend {b2:.2e} ± {se2:.2e}, {b3:.2e} ± {se3:.2e}",
            f2.exponent, f3.exponent
        ),
    )
}

fn forest_oracles() -> Outcome {
    let corpus = standard_corpus();
    let mut both = 0;
    for (i, g) in corpus.iter().enumerate() {
        let f = forests_bruteforce(g).map_err(|e| e.to_string())?;
        if !f.identities_hold(g) {
            return Err(format!("graph {i}: det {} vs {} forests", f.det_laplacian, f.z_rooted));
        }
        both += (f.by_permutation.len() > 1) as usize;
    }
    ensure(
        corpus.len() >= 10 && both >= 1,
        format!("{} graphs, matrix-tree and all-minors exact; {both} with two pairings", corpus.len()),
    )
}

fn monte_carlo() -> Outcome {
    for bc in [Open, Closed] {
        let small = RectDomain::half_box(41, bc).map_err(|e| e.to_string())?;
        verify_early_exit(&small, 2, 4, 10_000, RngSeed(7)).map_err(|e| e.to_string())?;
    }
    let mut lines = vec!["early exit verified on 2 x 10^4 paired samples".to_string()];
    let mut ok = true;
    for (bc, k) in [(Open, 1), (Closed, 2)] {
        let d = RectDomain::new(401, 201, bc).map_err(|e| e.to_string())?;
        let exact = watermelon_prob_finite(&d, k, 8).map_err(|e| e.to_string())?;
        for seed in [1, 2] {
            let e = mc_estimate(&d, k, 8, 100_000, RngSeed(seed)).map_err(|e| e.to_string())?;
            let z = (e.p_hat - exact) / e.stderr;
            ok &= z.abs() < 3.0;
            lines.push(format!("{bc} k={k} seed {seed}: {:.5e} vs {exact:.5e} (z = {z:+.2})", e.p_hat));
        }
    }
    ensure(ok, lines.join("; "))
}

fn finite_volume() -> Outcome {
    let spec = WatermelonSpec::new(Open, 1, 2).map_err(|e| e.to_string())?;
    let limit = watermelon_prob_halfplane(&spec).map_err(|e| e.to_string())?.value;
    let t = convergence_sweep(Open, 1, 2, &[65, 129, 257]).map_err(|e| e.to_string())?;
    let gaps: Vec<f64> = t.rows.iter().map(|r| (r.prob - limit).abs()).collect();
    let steps: Vec<f64> = t.rows[1..].iter().map(|r| r.delta_prev.unwrap().abs()).collect();
    let ok = gaps[0] >= 3.0 * gaps[1] && gaps[1] >= 3.0 * gaps[2] && steps[0] >= 3.0 * steps[1];
    ensure(
        ok,
        format!(
            "gaps to the limit {:.3e}, {:.3e}, {:.3e}; step ratio {:.2}",
            gaps[0],
            gaps[1],
            gaps[2],
            steps[0] / steps[1]
        ),
    )
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 11] = [
        ("table reproduction", 5, tables),
        ("green value lists", 5, green_lists),
        ("kernel oracle agreement", 30, kernel_oracle),
        ("asymptotic expansion", 5, kernel_expansion),
        ("fundamental lemma identity", 60, lemma_identity),
        ("power-law lemma", 10, powerlaw_lemma),
        ("open-boundary power law", 60, theorem_open),
        ("closed-boundary power law", 60, theorem_closed),
        ("matrix-tree and all-minors oracles", 10, forest_oracles),
        ("Monte Carlo consistency", 600, monte_carlo),
        ("finite-volume convergence", 300, finite_volume),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let within = elapsed <= Duration::from_secs(*budget);
        let (status, detail) = match outcome {
            Ok(d) if within => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over the {budget} s budget")),
            Err(d) => ("FAIL", d),
        };
        failed += (status == "FAIL") as usize;
        println!("{status} {:>2} {name} [{:.2} s]: {detail}", i + 1, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
