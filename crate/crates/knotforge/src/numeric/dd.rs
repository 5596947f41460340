//! Double-double arithmetic: unevaluated sums of two f64 giving roughly
//! 106 bits of precision. Used only for numeric residual checks; nothing
//! algebraic ever depends on these values.

use num_traits::ToPrimitive;

use crate::exactalg::Rational;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DD {
    pub hi: f64,
    pub lo: f64,
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
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl DD {
    pub const ZERO: DD = DD { hi: 0.0, lo: 0.0 };
    pub const ONE: DD = DD { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> DD {
        DD { hi: x, lo: 0.0 }
    }

    pub fn from_int(x: i64) -> DD {
        // i64 may exceed 2^53; split into two exactly representable halves.
        let hi = (x >> 27) as f64 * (1u64 << 27) as f64;
        let lo = (x & ((1 << 27) - 1)) as f64;
        DD::from_f64(hi).add(DD::from_f64(lo))
    }

    /// Closest double-double to an exact rational.
    pub fn from_rational(r: &Rational) -> DD {
        let hi = r.to_f64().unwrap_or(f64::INFINITY);
        if !hi.is_finite() {
            return DD { hi, lo: 0.0 };
        }
        let rest = r - Rational::from_float(hi).expect("finite float");
        let lo = rest.to_f64().unwrap_or(0.0);
        DD { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, other: DD) -> DD {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        DD { hi, lo }
    }

    pub fn sub(self, other: DD) -> DD {
        self.add(other.neg())
    }

    pub fn neg(self) -> DD {
        DD { hi: -self.hi, lo: -self.lo }
    }

    pub fn mul(self, other: DD) -> DD {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        DD { hi, lo }
    }

    pub fn div(self, other: DD) -> DD {
        let q1 = self.hi / other.hi;
        // One Newton correction in double-double.
        let r = self.sub(other.mul(DD::from_f64(q1)));
        let q2 = r.hi / other.hi;
        let r2 = r.sub(other.mul(DD::from_f64(q2)));
        let q3 = r2.hi / other.hi;
        DD::from_f64(q1).add(DD::from_f64(q2)).add(DD::from_f64(q3))
    }

    pub fn abs(self) -> DD {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexDD {
    pub re: DD,
    pub im: DD,
}

impl ComplexDD {
    pub const ZERO: ComplexDD = ComplexDD { re: DD::ZERO, im: DD::ZERO };
    pub const ONE: ComplexDD = ComplexDD { re: DD::ONE, im: DD::ZERO };

    pub fn new(re: f64, im: f64) -> ComplexDD {
        ComplexDD { re: DD::from_f64(re), im: DD::from_f64(im) }
    }

    pub fn from_dd(re: DD) -> ComplexDD {
        ComplexDD { re, im: DD::ZERO }
    }

    pub fn add(self, o: ComplexDD) -> ComplexDD {
        ComplexDD { re: self.re.add(o.re), im: self.im.add(o.im) }
    }

    pub fn sub(self, o: ComplexDD) -> ComplexDD {
        ComplexDD { re: self.re.sub(o.re), im: self.im.sub(o.im) }
    }

    pub fn neg(self) -> ComplexDD {
        ComplexDD { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(self, o: ComplexDD) -> ComplexDD {
        ComplexDD {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    pub fn div(self, o: ComplexDD) -> ComplexDD {
        let d = o.re.mul(o.re).add(o.im.mul(o.im));
        let re = self.re.mul(o.re).add(self.im.mul(o.im)).div(d);
        let im = self.im.mul(o.re).sub(self.re.mul(o.im)).div(d);
        ComplexDD { re, im }
    }

    pub fn norm_sq(self) -> DD {
        self.re.mul(self.re).add(self.im.mul(self.im))
    }

    /// Modulus, via f64 sqrt on the double-double square; accurate enough
    /// for residual thresholds.
    pub fn abs(self) -> f64 {
        self.norm_sq().to_f64().max(0.0).sqrt()
    }
}
