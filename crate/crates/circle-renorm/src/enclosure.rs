//! Exact rational intervals.
//!
//! Every real quantity in the certified code paths is carried as an interval
//! with `BigRational` endpoints. The arithmetic itself is exact, so interval
//! widths only reflect genuine input uncertainty (typically the enclosure of
//! an irrational rotation number by two consecutive convergents).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;

/// A decimal value with an explicit absolute error bound, for reports.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Approx {
    pub value: f64,
    pub err: f64,
}

impl Approx {
    pub fn exact(value: f64) -> Self {
        Approx { value, err: 0.0 }
    }
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.12} ± {:.3e}", self.value, self.err)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Enclosure {
    lo: BigRational,
    hi: BigRational,
}

impl Enclosure {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        if lo <= hi {
            Enclosure { lo, hi }
        } else {
            Enclosure { lo: hi, hi: lo }
        }
    }

    pub fn point(v: BigRational) -> Self {
        Enclosure { lo: v.clone(), hi: v }
    }

    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Self::point)
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::point(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::point(BigRational::one())
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid().to_f64().unwrap_or(f64::NAN)
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal midpoint with half-width as the error bound (plus one ulp for
    /// the final float conversion).
    pub fn to_approx(&self) -> Approx {
        let value = self.mid_f64();
        let err = 0.5 * self.width_f64() + value.abs() * f64::EPSILON;
        Approx { value, err }
    }

    pub fn add(&self, o: &Self) -> Self {
        Enclosure { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Enclosure { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Self {
        Enclosure { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        Enclosure { lo, hi }
    }

    /// Reciprocal; `None` if the interval contains zero.
    pub fn recip(&self) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        Some(Enclosure { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        o.recip().map(|r| self.mul(&r))
    }

    pub fn scale_rat(&self, s: &BigRational) -> Self {
        if s.is_negative() {
            Enclosure { lo: &self.hi * s, hi: &self.lo * s }
        } else {
            Enclosure { lo: &self.lo * s, hi: &self.hi * s }
        }
    }

    pub fn scale_int(&self, s: i64) -> Self {
        self.scale_rat(&BigRational::from_integer(BigInt::from(s)))
    }

    pub fn add_rat(&self, s: &BigRational) -> Self {
        Enclosure { lo: &self.lo + s, hi: &self.hi + s }
    }

    /// 1 - self.
    pub fn one_minus(&self) -> Self {
        Enclosure { lo: BigRational::one() - &self.hi, hi: BigRational::one() - &self.lo }
    }

    pub fn hull(&self, o: &Self) -> Self {
        Enclosure {
            lo: if self.lo < o.lo { self.lo.clone() } else { o.lo.clone() },
            hi: if self.hi > o.hi { self.hi.clone() } else { o.hi.clone() },
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains_rat(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Certainly below the other interval.
    pub fn lt(&self, o: &Self) -> bool {
        self.hi < o.lo
    }

    pub fn le_rat(&self, v: &BigRational) -> bool {
        &self.hi <= v
    }

    pub fn ge_rat(&self, v: &BigRational) -> bool {
        &self.lo >= v
    }

    /// Common floor of both endpoints, if unambiguous.
    pub fn floor_exact(&self) -> Option<BigInt> {
        let fl = self.lo.floor().to_integer();
        let fh = self.hi.floor().to_integer();
        if fl == fh {
            Some(fl)
        } else {
            None
        }
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_approx())
    }
}
