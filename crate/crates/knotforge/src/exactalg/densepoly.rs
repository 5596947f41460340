//! Dense univariate polynomials over Q, used internally by the Sturm chain
//! and Hensel lifting code. Coefficients ascending; no trailing zeros.

use num_traits::{One, Signed, Zero};

use super::multipoly::Rational;

pub type DensePoly = Vec<Rational>;

pub fn trim(mut p: DensePoly) -> DensePoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn is_zero(p: &DensePoly) -> bool {
    p.is_empty()
}

/// Degree of a nonzero polynomial.
pub fn deg(p: &DensePoly) -> usize {
    debug_assert!(!p.is_empty());
    p.len() - 1
}

pub fn add(a: &DensePoly, b: &DensePoly) -> DensePoly {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

pub fn sub(a: &DensePoly, b: &DensePoly) -> DensePoly {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(out)
}

pub fn neg(a: &DensePoly) -> DensePoly {
    a.iter().map(|c| -c.clone()).collect()
}

pub fn mul(a: &DensePoly, b: &DensePoly) -> DensePoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    trim(out)
}

pub fn scale(a: &DensePoly, c: &Rational) -> DensePoly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

/// Field division with remainder: `a = q*b + r`, `deg r < deg b`.
pub fn divmod(a: &DensePoly, b: &DensePoly) -> (DensePoly, DensePoly) {
    assert!(!b.is_empty(), "division by zero");
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let lead = b.last().unwrap().clone();
    let mut r = a.clone();
    let mut q = vec![Rational::zero(); a.len() - b.len() + 1];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        q[k] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            let delta = bc * &c;
            r[k + i] -= delta;
        }
        debug_assert!(r.last().unwrap().is_zero());
        r = trim(r);
    }
    (trim(q), r)
}

pub fn derivative(a: &DensePoly) -> DensePoly {
    if a.len() <= 1 {
        return Vec::new();
    }
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from(num_bigint::BigInt::from(i)))
        .collect();
    trim(out)
}

/// Divides by the positive rational content, preserving signs.
pub fn primitive_signed(a: &DensePoly) -> DensePoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut num_gcd = num_bigint::BigInt::zero();
    let mut den_lcm = num_bigint::BigInt::one();
    for c in a {
        num_gcd = num_integer::Integer::gcd(&num_gcd, c.numer());
        den_lcm = num_integer::Integer::lcm(&den_lcm, c.denom());
    }
    let content = Rational::new(num_gcd, den_lcm);
    debug_assert!(content.is_positive());
    let inv = content.recip();
    a.iter().map(|c| c * &inv).collect()
}

pub fn make_monic(a: &DensePoly) -> DensePoly {
    if a.is_empty() {
        return Vec::new();
    }
    let inv = a.last().unwrap().recip();
    scale(a, &inv)
}

/// Monic gcd over Q.
pub fn gcd(a: &DensePoly, b: &DensePoly) -> DensePoly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let (_, r) = divmod(&x, &y);
        x = y;
        y = r;
        // Keep coefficients tame.
        if !y.is_empty() {
            y = primitive_signed(&y);
        }
    }
    if x.is_empty() {
        x
    } else {
        make_monic(&x)
    }
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn ext_gcd(a: &DensePoly, b: &DensePoly) -> (DensePoly, DensePoly, DensePoly) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0: DensePoly = vec![Rational::one()];
    let mut s1: DensePoly = Vec::new();
    let mut t0: DensePoly = Vec::new();
    let mut t1: DensePoly = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = divmod(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        let t = sub(&t0, &mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    if r0.is_empty() {
        return (r0, s0, t0);
    }
    let inv = r0.last().unwrap().recip();
    (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
}
