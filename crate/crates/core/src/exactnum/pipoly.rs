//! Exact numbers `c0 + c1/π + … + cd/π^d` with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::interval::{pi_interval, RealInterval};
use super::poly::RatPoly;
use super::ring::{abs_bits, bareiss_det, ExactRing};
use super::ExactError;

/// An element of ℚ[π⁻¹]; coefficient `i` multiplies `π^-i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PiPoly(RatPoly);

/// Ring operation selector for [`pipoly_combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

pub fn pipoly_combine(a: &PiPoly, b: &PiPoly, op: RingOp) -> PiPoly {
    match op {
        RingOp::Add => a + b,
        RingOp::Sub => a - b,
        RingOp::Mul => a * b,
    }
}

/// Exact determinant by fraction-free elimination.
pub fn pipoly_det(m: &[Vec<PiPoly>]) -> Result<PiPoly, ExactError> {
    super::check_square(m)?;
    Ok(bareiss_det(m))
}

pub fn pipoly_eval(p: &PiPoly, precision_bits: u32) -> Result<RealInterval, ExactError> {
    p.eval_interval(precision_bits)
}

impl PiPoly {
    pub fn zero() -> Self {
        PiPoly(RatPoly::zero())
    }

    pub fn one() -> Self {
        PiPoly(RatPoly::one())
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        PiPoly(RatPoly::new(coeffs))
    }

    /// `rational + inv_pi/π`.
    pub fn linear(rational: BigRational, inv_pi: BigRational) -> Self {
        Self::from_coeffs(vec![rational, inv_pi])
    }

    /// Build from `(numerator, denominator)` integer pairs; handy for literals.
    pub fn from_ratios(pairs: &[(i64, i64)]) -> Self {
        Self::from_coeffs(
            pairs
                .iter()
                .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
        )
    }

    pub fn constant(c: BigRational) -> Self {
        PiPoly(RatPoly::constant(c))
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    /// `c·π^-power`.
    pub fn monomial(c: BigRational, power: usize) -> Self {
        PiPoly(RatPoly::monomial(c, power))
    }

    pub fn coeffs(&self) -> &[BigRational] {
        self.0.coeffs()
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.0.coeff(i)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PiPoly(self.0.scale(c))
    }

    /// Rough bit size of the largest coefficient numerator/denominator.
    fn coefficient_bits(&self) -> u64 {
        self.coeffs()
            .iter()
            .map(|c| abs_bits(c.numer()).max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }

    /// Certified enclosure with width at most `2^(1-bits)·max(1, |value|)`.
    pub fn eval_interval(&self, precision_bits: u32) -> Result<RealInterval, ExactError> {
        if precision_bits < 32 {
            return Err(ExactError::Precision(precision_bits));
        }
        if self.is_zero() {
            return Ok(RealInterval::point(BigRational::zero()));
        }
        let bits = precision_bits as u64;
        let degree = self.degree().unwrap_or(0) as u64;
        // π error is amplified by at most Σ i·|c_i|·π^(1-i) ≤ 2^(coef bits)·d².
        let mut guard = 16 + 2 * self.coefficient_bits() + 2 * (64 - degree.leading_zeros() as u64);
        loop {
            let iv = self.eval_at_precision(bits + guard);
            let one = BigRational::one();
            let scale = if iv.mag() > one { iv.mag() } else { one };
            let limit = scale * BigRational::new(BigInt::one(), BigInt::one() << (bits - 1));
            if iv.width() <= limit {
                return Ok(iv);
            }
            guard *= 2;
        }
    }

    fn eval_at_precision(&self, bits: u64) -> RealInterval {
        let inv_pi = pi_interval(bits).recip().round_outward(bits + 4);
        let coeffs = self.coeffs();
        let mut acc = RealInterval::point(coeffs[coeffs.len() - 1].clone());
        for c in coeffs.iter().rev().skip(1) {
            acc = acc.mul(&inv_pi).add_exact(c).round_outward(bits + 8);
        }
        acc
    }

    /// Enclosure whose width is at most `2^-rel_bits` times its smallest magnitude.
    /// Requires a nonzero value.
    pub fn eval_relative(&self, rel_bits: u32) -> RealInterval {
        assert!(!self.is_zero(), "relative enclosure of zero");
        let mut bits = rel_bits.max(32) + 4;
        loop {
            let iv = self
                .eval_interval(bits)
                .expect("precision above the minimum");
            if !iv.contains_zero() {
                let lo = iv.lo.abs();
                let hi = iv.hi.abs();
                let smaller = if lo < hi { lo } else { hi };
                let rel = BigRational::new(BigInt::one(), BigInt::one() << rel_bits) * smaller;
                if iv.width() <= rel {
                    return iv;
                }
            }
            bits *= 2;
        }
    }

    /// Float value with full double precision relative accuracy.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        self.eval_relative(60).mid_f64()
    }

    /// JSON form: array of `[numerator, denominator]` string pairs, index = power of π⁻¹.
    pub fn to_json_pairs(&self) -> Vec<[String; 2]> {
        self.coeffs()
            .iter()
            .map(|c| [c.numer().to_string(), c.denom().to_string()])
            .collect()
    }

    pub fn from_json_pairs(pairs: &[[String; 2]]) -> Result<Self, ExactError> {
        let coeffs = pairs
            .iter()
            .map(|[n, d]| {
                let n: BigInt = n.parse().map_err(|_| ExactError::Parse(n.clone()))?;
                let d: BigInt = d.parse().map_err(|_| ExactError::Parse(d.clone()))?;
                if d.is_zero() {
                    return Err(ExactError::Parse(format!("{n}/{d}")));
                }
                Ok(BigRational::new(n, d))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_coeffs(coeffs))
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical text form: nonzero terms by increasing power, e.g.
/// `-1 + 40/3/pi - 448/9/pi^2 + 512/9/pi^3`; the zero polynomial prints `0`.
impl fmt::Display for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = fmt_rational(&c.abs());
            let suffix = match i {
                0 => String::new(),
                1 => "/pi".to_string(),
                _ => format!("/pi^{i}"),
            };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{mag}{suffix}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FromStr for PiPoly {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ExactError::Parse(s.to_string());
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(bad());
        }
        // Split into signed terms separated by " + " / " - ".
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let mut rest = trimmed;
        let mut negative = false;
        if let Some(r) = rest.strip_prefix('-') {
            negative = true;
            rest = r;
        }
        loop {
            let plus = rest.find(" + ");
            let minus = rest.find(" - ");
            let next = match (plus, minus) {
                (Some(p), Some(m)) => Some(p.min(m)),
                (p, m) => p.or(m),
            };
            match next {
                Some(pos) => {
                    terms.push((negative, &rest[..pos]));
                    negative = &rest[pos..pos + 3] == " - ";
                    rest = &rest[pos + 3..];
                }
                None => {
                    terms.push((negative, rest));
                    break;
                }
            }
        }
        let mut coeffs: Vec<BigRational> = Vec::new();
        for (neg, term) in terms {
            let (num_part, power) = match term.find("/pi") {
                Some(pos) => {
                    let tail = &term[pos + 3..];
                    let power = if tail.is_empty() {
                        1
                    } else {
                        let p: usize = tail
                            .strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse()
                            .map_err(|_| bad())?;
                        if p < 2 {
                            return Err(bad());
                        }
                        p
                    };
                    (&term[..pos], power)
                }
                None => (term, 0),
            };
            if num_part.starts_with('-') || num_part.starts_with('+') {
                return Err(bad());
            }
            let value: BigRational = match num_part.split_once('/') {
                Some((n, d)) => {
                    let n: BigInt = n.parse().map_err(|_| bad())?;
                    let d: BigInt = d.parse().map_err(|_| bad())?;
                    if d.is_zero() {
                        return Err(bad());
                    }
                    BigRational::new(n, d)
                }
                None => BigRational::from_integer(num_part.parse().map_err(|_| bad())?),
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigRational::zero());
            }
            coeffs[power] += if neg { -value } else { value };
        }
        Ok(PiPoly::from_coeffs(coeffs))
    }
}

impl Serialize for PiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json_pairs().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs = Vec::<[String; 2]>::deserialize(deserializer)?;
        PiPoly::from_json_pairs(&pairs).map_err(D::Error::custom)
    }
}

impl Add for &PiPoly {
    type Output = PiPoly;
    fn add(self, rhs: &PiPoly) -> PiPoly {
        PiPoly(&self.0 + &rhs.0)
    }
}

impl Sub for &PiPoly {
    type Output = PiPoly;
    fn sub(self, rhs: &PiPoly) -> PiPoly {
        PiPoly(&self.0 - &rhs.0)
    }
}

impl Mul for &PiPoly {
    type Output = PiPoly;
    fn mul(self, rhs: &PiPoly) -> PiPoly {
        PiPoly(&self.0 * &rhs.0)
    }
}

impl Neg for &PiPoly {
    type Output = PiPoly;
    fn neg(self) -> PiPoly {
        PiPoly(-&self.0)
    }
}

impl Add for PiPoly {
    type Output = PiPoly;
    fn add(self, rhs: PiPoly) -> PiPoly {
        &self + &rhs
    }
}

impl Sub for PiPoly {
    type Output = PiPoly;
    fn sub(self, rhs: PiPoly) -> PiPoly {
        &self - &rhs
    }
}

impl Mul for PiPoly {
    type Output = PiPoly;
    fn mul(self, rhs: PiPoly) -> PiPoly {
        &self * &rhs
    }
}

impl ExactRing for PiPoly {
    fn ring_zero() -> Self {
        PiPoly::zero()
    }
    fn ring_one() -> Self {
        PiPoly::one()
    }
    fn ring_is_zero(&self) -> bool {
        PiPoly::is_zero(self)
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        PiPoly(self.0.div_exact(&other.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ring::laplace_det;

    fn pp(s: &str) -> PiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn combine_examples() {
        let a = pp("1 - 2/pi");
        let b = pp("-1/2 + 2/pi");
        assert_eq!(pipoly_combine(&a, &b, RingOp::Add), pp("1/2"));
        let t = pp("2/pi");
        assert_eq!(pipoly_combine(&t, &t, RingOp::Mul), pp("4/pi^2"));
        let c = pp("3/4 - 2/pi");
        let prod = pipoly_combine(&a, &c, RingOp::Mul);
        assert_eq!(prod, pp("3/4 - 7/2/pi + 4/pi^2"));
        // both sides numerically
        let lhs = a.to_f64() * c.to_f64();
        assert!((lhs - prod.to_f64()).abs() < 1e-12);
        assert_eq!(pipoly_combine(&a, &a, RingOp::Sub), PiPoly::zero());
    }

    #[test]
    fn determinant_examples() {
        let g0 = pp("1 - 2/pi");
        let g1 = pp("-1/2 + 2/pi");
        assert_eq!(pipoly_det(&[vec![g0.clone()]]).unwrap(), g0);
        let m = vec![vec![g0.clone(), g1.clone()], vec![g1.clone(), g0.clone()]];
        assert_eq!(pipoly_det(&m).unwrap(), pp("3/4 - 2/pi"));
        let swapped = vec![m[1].clone(), m[0].clone()];
        assert_eq!(pipoly_det(&swapped).unwrap(), -&pp("3/4 - 2/pi"));
        assert!(pipoly_det(&[vec![g0.clone(), g1]]).is_err());
    }

    #[test]
    fn bareiss_agrees_with_cofactor_expansion() {
        let entries = ["1 - 2/pi", "3/7/pi^2", "-5 + 1/pi", "2", "0", "1/3/pi", "-1/2", "4/pi", "7/5 - 1/pi^3"];
        let m: Vec<Vec<PiPoly>> = entries.chunks(3).map(|r| r.iter().map(|s| pp(s)).collect()).collect();
        assert_eq!(pipoly_det(&m).unwrap(), laplace_det(&m));
    }

    #[test]
    fn evaluation_encloses_known_values() {
        let iv = pipoly_eval(&pp("1 - 2/pi"), 64).unwrap();
        let approx: BigRational = "36338022763241865692/100000000000000000000".parse().unwrap();
        let eps = BigRational::new(BigInt::one(), BigInt::from(10).pow(19));
        assert!(iv.lo <= &approx + &eps && &approx - &eps <= iv.hi);
        assert!(iv.width() <= BigRational::new(BigInt::one(), BigInt::one() << 63u32));

        let zero = pipoly_eval(&PiPoly::zero(), 64).unwrap();
        assert!(zero.lo.is_zero() && zero.hi.is_zero());

        let two = pipoly_eval(&pp("2/pi"), 64).unwrap();
        assert!((two.mid_f64() - 0.636_619_772_367_581_3).abs() < 1e-15);
        assert!(pipoly_eval(&pp("2/pi"), 16).is_err());
    }

    #[test]
    fn text_form_examples() {
        let p = pp("-1 + 40/3/pi - 448/9/pi^2 + 512/9/pi^3");
        assert_eq!(p.to_string(), "-1 + 40/3/pi - 448/9/pi^2 + 512/9/pi^3");
        assert_eq!(PiPoly::zero().to_string(), "0");
        assert_eq!(pp("2/pi").to_string(), "2/pi");
        assert_eq!(pp("-2/pi + 1").to_string(), "1 - 2/pi");
        assert!("1 + ".parse::<PiPoly>().is_err());
        assert!("1/0".parse::<PiPoly>().is_err());
        assert!("3/pi^x".parse::<PiPoly>().is_err());
    }

    #[test]
    fn json_form() {
        let p = pp("3/4 - 2/pi");
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"[["3","4"],["-2","1"]]"#);
        let back: PiPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&PiPoly::zero()).unwrap(), "[]");
    }
}
