//! Univariate Laurent polynomials with exact rational coefficients.
//!
//! Used for quantum invariants, which naturally live in `Z[t, t^-1]`. The
//! variable name is not stored; context supplies it (always `t` in this
//! crate). Exponents are `i64`, coefficients nonzero rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::multipoly::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::one())
    }

    pub fn monomial(exp: i64, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms(terms: &[(i64, Rational)]) -> Self {
        let mut map: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e, c) in terms {
            let entry = map.entry(*e).or_insert_with(Rational::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: map }
    }

    pub fn from_int_terms(terms: &[(i64, i64)]) -> Self {
        let converted: Vec<(i64, Rational)> = terms
            .iter()
            .map(|(e, c)| (*e, Rational::from(BigInt::from(*c))))
            .collect();
        Self::from_terms(&converted)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect();
        LaurentPoly { terms }
    }

    /// Substitutes `t -> t^-1`.
    pub fn invert_var(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        LaurentPoly { terms }
    }

    /// Substitutes `t -> t^k` for nonzero `k` (negative allowed).
    pub fn stretch(&self, k: i64) -> Self {
        assert!(k != 0, "stretch by zero");
        let terms = self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect();
        LaurentPoly { terms }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(e, c)| (*e, c * r)).collect();
        LaurentPoly { terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Evaluates at a rational point; requires no negative exponents unless
    /// the point is nonzero.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                pow_rat(x, *e as u64)
            } else {
                pow_rat(&x.recip(), (-e) as u64)
            };
            acc += c * p;
        }
        acc
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    /// True when every exponent is congruent to `residue` modulo `modulus`.
    pub fn exponents_congruent(&self, residue: i64, modulus: i64) -> bool {
        self.terms
            .keys()
            .all(|e| (e - residue).rem_euclid(modulus) == 0)
    }
}

fn pow_rat(x: &Rational, mut n: u64) -> Rational {
    let mut acc = Rational::one();
    let mut base = x.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc *= &base;
        }
        n >>= 1;
        if n > 0 {
            base = &base * &base;
        }
    }
    acc
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let entry = terms.entry(*e).or_insert_with(Rational::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { terms }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let entry = terms.entry(*e).or_insert_with(Rational::zero);
            *entry -= c;
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { terms }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut terms: BTreeMap<i64, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let entry = terms.entry(ea + eb).or_insert_with(Rational::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { terms }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect();
        LaurentPoly { terms }
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending exponents, `t` as the variable: `t^4 - 2 + 3*t^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (*e, abs.is_one()) {
                (0, _) => write!(f, "{}", abs)?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{}*t", abs)?,
                (_, true) => write!(f, "t^{}", e)?,
                (_, false) => write!(f, "{}*t^{}", abs, e)?,
            }
        }
        Ok(())
    }
}
