//! Leading large-`r` behavior of `det[g(r + v_i - u_j)]` for power and logarithmic `g`,
//! with high-precision direct evaluation for comparison.

use astro_float::{BigFloat, Consts, RoundingMode};

const PREC: usize = 512;
const RM: RoundingMode = RoundingMode::ToEven;

fn vandermonde_f64(x: &[f64]) -> f64 {
    let mut acc = 1.0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            acc *= x[i] - x[j];
        }
    }
    acc
}

/// `Δ(v)·Δ(-u)` in floating point.
pub fn vandermonde_product_f64(u: &[f64], v: &[f64]) -> f64 {
    let neg_u: Vec<f64> = u.iter().map(|x| -x).collect();
    vandermonde_f64(v) * vandermonde_f64(&neg_u)
}

fn pochhammer(a: f64, n: usize) -> f64 {
    (0..n).map(|i| a + i as f64).product()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn check_lengths(u: &[f64], v: &[f64]) -> usize {
    assert_eq!(u.len(), v.len(), "shift vectors must have equal length");
    assert!(!u.is_empty());
    u.len()
}

/// `Δ(v)Δ(-u)·r^{-k(α+k-1)}·Π_{i<k} (α)_i/i!`.
pub fn powerlaw_leading(alpha: f64, u: &[f64], v: &[f64], r: f64) -> f64 {
    let k = check_lengths(u, v);
    let coeff: f64 = (0..k).map(|i| pochhammer(alpha, i) / factorial(i)).product();
    vandermonde_product_f64(u, v) * coeff * r.powf(-(k as f64) * (alpha + k as f64 - 1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogMode {
    /// Leading behavior of the `c₁`-free part.
    LogTerm,
    /// Coefficient of `c₁`.
    ConstTerm,
}

/// Leading terms of `det[c₁ - c₂ ln(r + v_i - u_j)]`, which is affine in `c₁`.
///
/// `LogTerm` gives `-Δ(v)Δ(-u)·ln r·c₂ᵏ/((k-1)!·r^{k(k-1)})`; the relative correction
/// is `O(1/ln r)`. `ConstTerm` gives `Δ(v)Δ(-u)·c₂^{k-1}/((k-1)!·r^{k(k-1)})`.
pub fn log_leading(c2: f64, u: &[f64], v: &[f64], r: f64, mode: LogMode) -> f64 {
    let k = check_lengths(u, v);
    let kk = k as i32;
    let common = vandermonde_product_f64(u, v) / (factorial(k - 1) * r.powi(kk * (kk - 1)));
    match mode {
        LogMode::LogTerm => -common * r.ln() * c2.powi(kk),
        LogMode::ConstTerm => common * c2.powi(kk - 1),
    }
}

struct Hp {
    cc: Consts,
}

impl Hp {
    fn new() -> Self {
        Hp {
            cc: Consts::new().expect("constant cache"),
        }
    }

    fn num(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, PREC)
    }

    fn to_f64(&mut self, x: &BigFloat) -> f64 {
        x.format(astro_float::Radix::Dec, RM, &mut self.cc)
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(f64::NAN)
    }

    fn det(&self, mut a: Vec<Vec<BigFloat>>) -> BigFloat {
        let n = a.len();
        let mut det = self.num(1.0);
        for c in 0..n {
            let p = (c..n)
                .max_by(|&i, &j| a[i][c].abs_cmp(&a[j][c]).unwrap_or(0).cmp(&0))
                .unwrap();
            if a[p][c].is_zero() {
                return self.num(0.0);
            }
            if p != c {
                a.swap(p, c);
                det = det.neg();
            }
            det = det.mul(&a[c][c], PREC, RM);
            for i in c + 1..n {
                let f = a[i][c].div(&a[c][c], PREC, RM);
                for j in c..n {
                    let t = f.mul(&a[c][j], PREC, RM);
                    a[i][j] = a[i][j].sub(&t, PREC, RM);
                }
            }
        }
        det
    }

    /// Entry arguments `r + v_i - u_j`.
    fn shifts(&self, u: &[f64], v: &[f64], r: f64) -> Vec<Vec<BigFloat>> {
        let r = self.num(r);
        v.iter()
            .map(|&vi| u.iter().map(|&uj| r.add(&self.num(vi - uj), PREC, RM)).collect())
            .collect()
    }
}

fn powerlaw_ratio_hp(hp: &mut Hp, alpha: f64, u: &[f64], v: &[f64], r: f64) -> BigFloat {
    let k = check_lengths(u, v);
    let neg_alpha = hp.num(-alpha);
    let m: Vec<Vec<BigFloat>> = hp
        .shifts(u, v, r)
        .into_iter()
        .map(|row| row.iter().map(|x| x.pow(&neg_alpha, PREC, RM, &mut hp.cc)).collect())
        .collect();
    let det = hp.det(m);
    let coeff: f64 = (0..k).map(|i| pochhammer(alpha, i) / factorial(i)).product();
    let exponent = hp.num(-(k as f64) * (alpha + k as f64 - 1.0));
    let scale = hp.num(r).pow(&exponent, PREC, RM, &mut hp.cc);
    let lead = scale.mul(&hp.num(coeff * vandermonde_product_f64(u, v)), PREC, RM);
    det.div(&lead, PREC, RM)
}

/// `det[(r + v_i - u_j)^{-α}]` divided by [`powerlaw_leading`], evaluated with 512-bit floats.
pub fn powerlaw_ratio(alpha: f64, u: &[f64], v: &[f64], r: f64) -> f64 {
    let mut hp = Hp::new();
    let ratio = powerlaw_ratio_hp(&mut hp, alpha, u, v, r);
    hp.to_f64(&ratio)
}

/// `powerlaw_ratio - 1`, subtracted before rounding to `f64`.
pub fn powerlaw_residual(alpha: f64, u: &[f64], v: &[f64], r: f64) -> f64 {
    let mut hp = Hp::new();
    let ratio = powerlaw_ratio_hp(&mut hp, alpha, u, v, r);
    let res = ratio.sub(&hp.num(1.0), PREC, RM);
    hp.to_f64(&res)
}

/// `det[c₁ - c₂ ln(r + v_i - u_j)]` with 512-bit floats.
pub fn log_det(c1: f64, c2: f64, u: &[f64], v: &[f64], r: f64) -> f64 {
    check_lengths(u, v);
    let mut hp = Hp::new();
    let (c1, c2) = (hp.num(c1), hp.num(c2));
    let m: Vec<Vec<BigFloat>> = hp
        .shifts(u, v, r)
        .into_iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let l = x.ln(PREC, RM, &mut hp.cc);
                    c1.sub(&c2.mul(&l, PREC, RM), PREC, RM)
                })
                .collect()
        })
        .collect();
    let det = hp.det(m);
    hp.to_f64(&det)
}
