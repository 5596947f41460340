//! Pseudo-division, multivariate gcd, squarefree parts, and resultants.
//!
//! Polynomials are viewed recursively: univariate in a chosen main variable
//! with coefficients in the remaining variables. The gcd uses a primitive
//! pseudo-remainder sequence, which keeps intermediate coefficients small at
//! the price of recursive content computations. Resultants come in two
//! independent implementations, a remainder-sequence one used in production
//! and a Sylvester-matrix one kept as a cross-check; tests require them to
//! agree.

use num_traits::One;

use super::multipoly::{var_cmp, MultiPoly, Rational};

/// Pseudo-division: returns `(k, q, r)` with `lc^k * a = q * b + r` and
/// `deg_var(r) < deg_var(b)`, where `lc` is the leading coefficient of `b`
/// in `var`. Always uses the full multiplier `k = deg a - deg b + 1`.
/// Panics if `b` is zero in `var`.
pub fn pseudo_divrem(a: &MultiPoly, b: &MultiPoly, var: &str) -> (u32, MultiPoly, MultiPoly) {
    assert!(!b.is_zero(), "pseudo-division by zero");
    let da = a.degree(var);
    let db = b.degree(var);
    if a.is_zero() || da < db {
        return (0, MultiPoly::zero(), a.clone());
    }
    let lc = b.leading_coeff_in(var);
    let k = da - db + 1;
    let mut q = MultiPoly::zero();
    let mut r = a.clone();
    let mut steps = 0u32;
    let v = MultiPoly::var(var);
    while !r.is_zero() && r.degree(var) >= db {
        let dr = r.degree(var);
        let s = &r.leading_coeff_in(var) * &v.pow(dr - db);
        q = &(&lc * &q) + &s;
        r = &(&lc * &r) - &(&s * b);
        steps += 1;
        debug_assert!(r.is_zero() || r.degree(var) < dr);
    }
    // Pad so the multiplier is exactly lc^k regardless of early termination.
    for _ in steps..k {
        q = &lc * &q;
        r = &lc * &r;
    }
    (k, q, r)
}

/// Content of `p` with respect to `var`: the gcd of its coefficients as
/// polynomials in the remaining variables, integer-primitive with positive
/// leading coefficient.
pub fn content_wrt(p: &MultiPoly, var: &str) -> MultiPoly {
    if p.is_zero() {
        return MultiPoly::zero();
    }
    let mut g = MultiPoly::zero();
    for c in p.coeffs_in(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd_multi(&g, &c);
        if g.is_constant() {
            break;
        }
    }
    g
}

/// `p` divided by its content with respect to `var`; integer-primitive.
pub fn primitive_part_wrt(p: &MultiPoly, var: &str) -> MultiPoly {
    if p.is_zero() {
        return MultiPoly::zero();
    }
    let c = content_wrt(p, var);
    let q = p.try_div_exact(&c).expect("content must divide");
    q.content_primitive().1
}

/// Main variable used for recursive algorithms: the canonically last
/// variable occurring in either argument.
fn pick_main_var(a: &MultiPoly, b: &MultiPoly) -> Option<String> {
    a.vars()
        .iter()
        .chain(b.vars().iter())
        .max_by(|x, y| var_cmp(x, y))
        .cloned()
}

/// Greatest common divisor in `Q[...]`, normalized integer-primitive with
/// positive leading coefficient. `gcd(0, 0) = 0`; nonzero constants give 1.
pub fn gcd_multi(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.content_primitive().1;
    }
    if b.is_zero() {
        return a.content_primitive().1;
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    let var = pick_main_var(a, b).unwrap();
    let ca = content_wrt(a, &var);
    let cb = content_wrt(b, &var);
    let cont_gcd = gcd_multi(&ca, &cb);
    let mut big = a.try_div_exact(&ca).unwrap();
    let mut small = b.try_div_exact(&cb).unwrap();
    if big.degree(&var) < small.degree(&var) {
        std::mem::swap(&mut big, &mut small);
    }
    // Primitive PRS: every remainder is stripped to its primitive part.
    while !small.is_zero() {
        let (_, _, r) = pseudo_divrem(&big, &small, &var);
        big = small;
        small = if r.is_zero() { MultiPoly::zero() } else { primitive_part_wrt(&r, &var) };
    }
    let prim = primitive_part_wrt(&big, &var);
    (&cont_gcd * &prim).content_primitive().1
}

/// Squarefree part of `p` with respect to `var`: `p / gcd(p, dp/dvar)`,
/// integer-primitive with positive leading coefficient. Polynomials free of
/// `var` are returned normalized but otherwise untouched.
pub fn squarefree_part_wrt(p: &MultiPoly, var: &str) -> MultiPoly {
    if p.is_zero() {
        return MultiPoly::zero();
    }
    let dp = p.derivative(var);
    if dp.is_zero() {
        return p.content_primitive().1;
    }
    let g = gcd_multi(p, &dp);
    let q = p.try_div_exact(&g).expect("gcd must divide");
    q.content_primitive().1
}

/// Resultant of `a` and `b` with respect to `var`, computed through a
/// pseudo-remainder recursion with content stripping. Satisfies the exact
/// sign convention `Res(a, b) = (-1)^(deg a * deg b) Res(b, a)`.
pub fn resultant(a: &MultiPoly, b: &MultiPoly, var: &str) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero();
    }
    res_rec(a, b, var)
}

fn res_rec(a: &MultiPoly, b: &MultiPoly, var: &str) -> MultiPoly {
    let da = a.degree(var);
    let db = b.degree(var);
    if db == 0 {
        return b.pow(da);
    }
    if da == 0 {
        return a.pow(db);
    }
    if da < db {
        let sub = res_rec(b, a, var);
        return if (da as u64 * db as u64) % 2 == 1 { -&sub } else { sub };
    }
    let (_, _, r) = pseudo_divrem(a, b, var);
    if r.is_zero() {
        return MultiPoly::zero();
    }
    // Strip scalar and polynomial content from the remainder before
    // recursing; Res(b, c*r') = c^(deg b) Res(b, r') for c free of var.
    let (crat, rint) = r.content_primitive();
    let cpoly = content_wrt(&rint, var);
    let rp = rint.try_div_exact(&cpoly).unwrap();
    let dr = rp.degree(var);
    let sub = res_rec(b, &rp, var);
    let mut num = &sub * &cpoly.pow(db);
    num = num.scale(&pow_rational(&crat, db));
    // lc(b)^(deg r + (delta+1) deg b - deg a) relates Res(b, r) to Res(b, a).
    let e = dr + (da - db + 1) * db - da;
    let lcb = b.leading_coeff_in(var);
    let corrected = num
        .try_div_exact(&lcb.pow(e))
        .expect("resultant correction divides exactly");
    if (da as u64 * db as u64) % 2 == 1 {
        -&corrected
    } else {
        corrected
    }
}

fn pow_rational(x: &Rational, mut n: u32) -> Rational {
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

/// Resultant through the Sylvester matrix and fraction-free elimination.
/// Slower than `resultant` but independent of it; used as a cross-check.
pub fn resultant_sylvester(a: &MultiPoly, b: &MultiPoly, var: &str) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero();
    }
    let da = a.degree(var) as usize;
    let db = b.degree(var) as usize;
    if da == 0 {
        return a.pow(db as u32);
    }
    if db == 0 {
        return b.pow(da as u32);
    }
    let ca = a.coeffs_in(var);
    let cb = b.coeffs_in(var);
    let n = da + db;
    let mut m = vec![vec![MultiPoly::zero(); n]; n];
    for (row, cells) in m.iter_mut().take(db).enumerate() {
        for (j, c) in ca.iter().rev().enumerate() {
            cells[row + j] = c.clone();
        }
    }
    for (row, cells) in m.iter_mut().skip(db).take(da).enumerate() {
        for (j, c) in cb.iter().rev().enumerate() {
            cells[row + j] = c.clone();
        }
    }
    bareiss_det(m)
}

/// Fraction-free determinant; every interior division is exact.
pub fn bareiss_det(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one();
    }
    let mut sign_flip = false;
    let mut prev = MultiPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return MultiPoly::zero();
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            let mik = m[i][k].clone();
            for j in k + 1..n {
                let t = &(&pivot * &m[i][j]) - &(&mik * &m[k][j]);
                m[i][j] = t.try_div_exact(&prev).expect("bareiss division exact");
            }
            m[i][k] = MultiPoly::zero();
        }
        prev = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -&det
    } else {
        det
    }
}
