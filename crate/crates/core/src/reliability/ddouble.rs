//! Minimal double-double arithmetic (about 32 significant digits).

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct DDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DDouble {
    pub const ZERO: DDouble = DDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: DDouble = DDouble { hi: 1.0, lo: 0.0 };

    pub fn new(x: f64) -> Self {
        DDouble { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }
}

impl From<f64> for DDouble {
    fn from(x: f64) -> Self {
        DDouble::new(x)
    }
}

impl Neg for DDouble {
    type Output = DDouble;
    fn neg(self) -> DDouble {
        DDouble { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for DDouble {
    type Output = DDouble;
    fn add(self, rhs: DDouble) -> DDouble {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DDouble { hi, lo }
    }
}

impl Sub for DDouble {
    type Output = DDouble;
    fn sub(self, rhs: DDouble) -> DDouble {
        self + (-rhs)
    }
}

impl Mul for DDouble {
    type Output = DDouble;
    fn mul(self, rhs: DDouble) -> DDouble {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DDouble { hi, lo }
    }
}

impl Div for DDouble {
    type Output = DDouble;
    fn div(self, rhs: DDouble) -> DDouble {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * DDouble::new(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * DDouble::new(q2);
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DDouble { hi, lo } + DDouble::new(q3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_digits_lost_in_f64() {
        let big = DDouble::new(1e16);
        let sum = big + DDouble::ONE - big;
        assert_eq!(sum.to_f64(), 1.0);
        let third = DDouble::ONE / DDouble::new(3.0);
        let back = third * DDouble::new(3.0) - DDouble::ONE;
        assert!(back.to_f64().abs() < 1e-31);
    }

    #[test]
    fn product_keeps_low_order_bits() {
        let a = DDouble::new(1.0 + f64::EPSILON);
        let sq = a * a - DDouble::ONE - DDouble::new(2.0 * f64::EPSILON);
        assert_eq!(sq.to_f64(), f64::EPSILON * f64::EPSILON);
    }
}
