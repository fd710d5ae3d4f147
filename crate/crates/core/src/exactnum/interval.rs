//! Certified enclosures of real numbers by intervals with rational endpoints.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

/// Serialized view of an interval: endpoints as `p/q` strings plus float approximations.
#[derive(Serialize)]
pub struct IntervalJson {
    pub lo: String,
    pub hi: String,
    pub mid: f64,
}

impl RealInterval {
    pub fn point(x: BigRational) -> Self {
        RealInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&BigRational::zero())
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn mid_f64(&self) -> f64 {
        rational_to_f64(&self.midpoint())
    }

    /// Largest absolute value in the interval.
    pub fn mag(&self) -> BigRational {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn add(&self, other: &RealInterval) -> RealInterval {
        RealInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn add_exact(&self, c: &BigRational) -> RealInterval {
        RealInterval {
            lo: &self.lo + c,
            hi: &self.hi + c,
        }
    }

    pub fn mul(&self, other: &RealInterval) -> RealInterval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().cloned().unwrap();
        let hi = products.iter().max().cloned().unwrap();
        RealInterval { lo, hi }
    }

    /// Reciprocal of an interval that excludes zero.
    pub fn recip(&self) -> RealInterval {
        assert!(!self.contains_zero(), "reciprocal of an interval containing zero");
        RealInterval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        }
    }

    /// Widen both endpoints outward onto the dyadic grid `2^-bits`.
    pub fn round_outward(&self, bits: u64) -> RealInterval {
        let scale = BigRational::from_integer(BigInt::one() << bits);
        let lo = (&self.lo * &scale).floor() / &scale;
        let hi = (&self.hi * &scale).ceil() / &scale;
        RealInterval { lo, hi }
    }

    pub fn to_json(&self) -> IntervalJson {
        IntervalJson {
            lo: self.lo.to_string(),
            hi: self.hi.to_string(),
            mid: self.mid_f64(),
        }
    }
}

/// Correctly scaled conversion of a big rational to the nearest-ish `f64`.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let neg = x.is_negative();
    let num = x.numer().abs();
    let den = x.denom().clone();
    // Shift so the integer quotient carries ~64 significant bits.
    let shift = 64i64 - (num.bits() as i64 - den.bits() as i64);
    let (n, d) = if shift >= 0 {
        (num << (shift as u64), den)
    } else {
        (num, den << ((-shift) as u64))
    };
    let q = n.div_floor(&d);
    let v = ldexp(q.to_f64().unwrap_or(f64::INFINITY), -shift);
    if neg {
        -v
    } else {
        v
    }
}

fn ldexp(mut m: f64, mut e: i64) -> f64 {
    while e > 1000 {
        m *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        m *= 2f64.powi(-1000);
        e += 1000;
    }
    m * 2f64.powi(e as i32)
}

/// Bracketing partial sums of `atan(1/x)`; the true value lies between them.
fn atan_recip_bracket(x: u64, bits: u64) -> (BigRational, BigRational) {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = x.clone();
    let mut sum = BigRational::zero();
    let tol = BigRational::new(BigInt::one(), BigInt::one() << (bits + 4));
    let mut n: u64 = 0;
    loop {
        let term = BigRational::new(BigInt::one(), BigInt::from(2 * n + 1) * &power);
        let next = if n % 2 == 0 { &sum + &term } else { &sum - &term };
        if term < tol && n > 0 {
            return if sum < next { (sum, next) } else { (next, sum) };
        }
        sum = next;
        power *= &x2;
        n += 1;
    }
}

/// Rigorous enclosure of π of width at most ~`2^-bits`, from Machin's formula
/// `π = 16·atan(1/5) − 4·atan(1/239)`.
pub fn pi_interval(bits: u64) -> RealInterval {
    let (a_lo, a_hi) = atan_recip_bracket(5, bits + 4);
    let (b_lo, b_hi) = atan_recip_bracket(239, bits + 4);
    let sixteen = BigRational::from_integer(BigInt::from(16));
    let four = BigRational::from_integer(BigInt::from(4));
    RealInterval {
        lo: &sixteen * &a_lo - &four * &b_hi,
        hi: &sixteen * &a_hi - &four * &b_lo,
    }
    .round_outward(bits + 2)
}
