//! The n-dimensional quantum sl2 R-matrix in the variable t (q = t^4) and
//! the dense tensor-vector letter action it drives.
//!
//! Entries live in Z[t^{±1}]: quantum binomials are balanced Laurent
//! polynomials in t^2, and the braiding sends e_i ⊗ e_j to a Z[t^{±1}]-linear
//! combination of e_{j+k} ⊗ e_{i-k}.  Total weight i + j is conserved, which
//! keeps the dense vectors sparse in practice.  None of the formulas here are
//! taken on trust: the tests check the Yang-Baxter relation, invertibility,
//! and the partial-closure scalar t^{±(n²-1)} that the framing correction
//! assumes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactalg::{LaurentPoly, Rational};

/// Laurent polynomial in t with integer coefficients; the working type of
/// the state-sum engine.  Invariant: no zero coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct ZL {
    terms: BTreeMap<i64, BigInt>,
}

impl ZL {
    pub fn zero() -> Self {
        ZL {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// t^exp.
    pub fn monomial(exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(exp, BigInt::one());
        ZL { terms }
    }

    /// t^exp - t^{-exp} for exp > 0.
    pub fn two_term(exp: i64) -> Self {
        debug_assert!(exp > 0);
        let mut terms = BTreeMap::new();
        terms.insert(exp, BigInt::one());
        terms.insert(-exp, -BigInt::one());
        ZL { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn negate(&mut self) {
        for c in self.terms.values_mut() {
            *c = -&*c;
        }
    }

    /// self * t^k.
    pub fn shift(&self, k: i64) -> Self {
        ZL {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &ZL) {
        for (e, c) in &other.terms {
            let v = self.terms.entry(*e).or_default();
            *v += c;
            if v.is_zero() {
                self.terms.remove(e);
            }
        }
    }

    /// self += a * b.
    pub fn add_mul_assign(&mut self, a: &ZL, b: &ZL) {
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e = ea + eb;
                let v = self.terms.entry(e).or_default();
                *v += ca * cb;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
        }
    }

    pub fn mul(&self, other: &ZL) -> ZL {
        let mut out = ZL::zero();
        out.add_mul_assign(self, other);
        out
    }

    /// (exponent, coefficient) if self is a single term.
    pub fn monomial_parts(&self) -> Option<(i64, &BigInt)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((*e, c))
        } else {
            None
        }
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        let terms: Vec<(i64, Rational)> = self
            .terms
            .iter()
            .map(|(e, c)| (*e, Rational::from(c.clone())))
            .collect();
        LaurentPoly::from_terms(&terms)
    }
}

/// Balanced quantum integer [n] = t^{2(n-1)} + t^{2(n-3)} + ... + t^{-2(n-1)}.
pub(crate) fn quantum_int_zl(n: usize) -> ZL {
    let mut out = ZL::zero();
    for i in 0..n {
        out.add_assign(&ZL::monomial(2 * (n as i64 - 1 - 2 * i as i64)));
    }
    out
}

/// Balanced quantum binomials in v = t^2: rows a = 0..=amax of [a choose k].
/// Pascal step: [a,k] = v^k [a-1,k] + v^{k-a} [a-1,k-1].
fn qbinom_table(amax: usize) -> Vec<Vec<ZL>> {
    let mut q: Vec<Vec<ZL>> = vec![vec![ZL::one()]];
    for a in 1..=amax {
        let mut row = Vec::with_capacity(a + 1);
        for k in 0..=a {
            let mut acc = ZL::zero();
            if k < a {
                acc.add_assign(&q[a - 1][k].shift(2 * k as i64));
            }
            if k >= 1 {
                acc.add_assign(&q[a - 1][k - 1].shift(2 * (k as i64 - a as i64)));
            }
            row.push(acc);
        }
        q.push(row);
    }
    q
}

/// Braiding tables for the n-dimensional irreducible representation.
///
/// `pos[i][j][k]` is the coefficient of e_{j+k} ⊗ e_{i-k} in R(e_i ⊗ e_j),
/// `neg[i][j][k]` the coefficient of e_{j-k} ⊗ e_{i+k} in R^{-1}(e_i ⊗ e_j).
/// The inverse is not a trusted formula: each weight block of R is triangular
/// with monic monomial diagonal, so it is inverted exactly over Z[t^{±1}] by
/// back-substitution.
pub(crate) struct RMatrix {
    pub pos: Vec<Vec<Vec<ZL>>>,
    pub neg: Vec<Vec<Vec<ZL>>>,
}

impl RMatrix {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let m = n as i64 - 1;
        let qb = qbinom_table(n - 1);
        let mut pos = vec![vec![Vec::new(); n]; n];
        for (i, prow) in pos.iter_mut().enumerate() {
            for (j, slot) in prow.iter_mut().enumerate() {
                let kmax = i.min(n - 1 - j);
                let mut row = Vec::with_capacity(kmax + 1);
                for (k, qbk) in qb[i].iter().take(kmax + 1).enumerate() {
                    let ki = k as i64;
                    let e = (m - 2 * i as i64 + 2 * ki) * (m - 2 * j as i64 - 2 * ki)
                        + ki * (ki - 1);
                    let mut c = ZL::monomial(e).mul(qbk);
                    for r in 0..ki {
                        c = c.mul(&ZL::two_term(2 * (m - j as i64 - r)));
                    }
                    row.push(c);
                }
                *slot = row;
            }
        }

        // Invert each weight block w = i + j.  Enumerate inputs by first
        // index i = i_min + c and outputs by first index f = i_max - r; then
        // U[r][c] is upper triangular with the k = 0 monomials on the
        // diagonal.
        let mut neg = vec![vec![Vec::new(); n]; n];
        for w in 0..=2 * (n - 1) {
            let i_min = w.saturating_sub(n - 1);
            let i_max = w.min(n - 1);
            let size = i_max - i_min + 1;
            let mut u = vec![vec![ZL::zero(); size]; size];
            for (c, ucol) in (i_min..=i_max).enumerate() {
                let i = ucol;
                let j = w - i;
                for (k, coeff) in pos[i][j].iter().enumerate() {
                    let r = i_max - (j + k);
                    u[r][c] = coeff.clone();
                }
            }
            // Row rp of `inv` solves U x = unit_rp, i.e. it is the rp-th
            // column of U^{-1} indexed by input position c.
            let mut inv: Vec<Vec<ZL>> = Vec::with_capacity(size);
            for rp in 0..size {
                let mut x = vec![ZL::zero(); size];
                let (de, dc) = u[rp][rp].monomial_parts().expect("diagonal is a monomial");
                debug_assert!(dc.is_one());
                x[rp] = ZL::monomial(-de);
                for r in (0..rp).rev() {
                    let mut acc = ZL::zero();
                    for (s, xs) in x.iter().enumerate().take(rp + 1).skip(r + 1) {
                        acc.add_mul_assign(&u[r][s], xs);
                    }
                    if acc.is_zero() {
                        continue;
                    }
                    acc.negate();
                    let (de, _) = u[r][r].monomial_parts().expect("diagonal is a monomial");
                    x[r] = acc.shift(-de);
                }
                inv.push(x);
            }
            for (r, xrow) in inv.iter().enumerate() {
                let a = i_max - r;
                let b = w - a;
                let kmax = b.min(n - 1 - a);
                let mut row = Vec::with_capacity(kmax + 1);
                for k in 0..=kmax {
                    row.push(xrow[b - k - i_min].clone());
                }
                neg[a][b] = row;
            }
        }
        RMatrix { pos, neg }
    }
}

/// Apply the braiding (or its inverse) on tensor factors (p, p+1) to a dense
/// vector indexed by base-n digit strings, digit s at stride `strides[s]`.
pub(crate) fn apply_at(
    v: &[ZL],
    p: usize,
    positive: bool,
    r: &RMatrix,
    n: usize,
    strides: &[usize],
) -> Vec<ZL> {
    let sp = strides[p];
    let sq = strides[p + 1];
    let mut out = vec![ZL::zero(); v.len()];
    for (idx, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let i = (idx / sp) % n;
        let j = (idx / sq) % n;
        let base = idx - i * sp - j * sq;
        if positive {
            for (k, coeff) in r.pos[i][j].iter().enumerate() {
                let tgt = base + (j + k) * sp + (i - k) * sq;
                out[tgt].add_mul_assign(c, coeff);
            }
        } else {
            for (k, coeff) in r.neg[i][j].iter().enumerate() {
                let tgt = base + (j - k) * sp + (i + k) * sq;
                out[tgt].add_mul_assign(c, coeff);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zl(terms: &[(i64, i64)]) -> ZL {
        let mut out = ZL::zero();
        for &(e, c) in terms {
            let mut m = ZL::zero();
            m.terms.insert(e, BigInt::from(c));
            out.add_assign(&m);
        }
        out
    }

    fn basis(dim: usize, idx: usize) -> Vec<ZL> {
        let mut v = vec![ZL::zero(); dim];
        v[idx] = ZL::one();
        v
    }

    #[test]
    fn quantum_binomials_are_balanced() {
        let q = qbinom_table(4);
        // [2 choose 1] = t^2 + t^{-2}, [4 choose 2] = t^8 + t^4 + 2 + t^{-4} + t^{-8}.
        assert_eq!(q[2][1], zl(&[(2, 1), (-2, 1)]));
        assert_eq!(q[4][2], zl(&[(8, 1), (4, 1), (0, 2), (-4, 1), (-8, 1)]));
        for a in 0..=4usize {
            assert_eq!(q[a][0], ZL::one());
            assert_eq!(q[a][a], ZL::one());
        }
    }

    #[test]
    fn braiding_matches_temperley_lieb_at_n2() {
        // R = t·Id + t^{-1}·E in the two-dimensional representation.
        let r = RMatrix::new(2);
        assert_eq!(r.pos[0][0][0], zl(&[(1, 1)]));
        assert_eq!(r.pos[0][1][0], zl(&[(-1, 1)]));
        assert_eq!(r.pos[1][0][0], zl(&[(-1, 1)]));
        assert_eq!(r.pos[1][0][1], zl(&[(1, 1), (-3, -1)]));
        assert_eq!(r.pos[1][1][0], zl(&[(1, 1)]));
    }

    #[test]
    fn braiding_is_invertible() {
        for n in 1..=5usize {
            let r = RMatrix::new(n);
            let strides = [1, n];
            let dim = n * n;
            for idx in 0..dim {
                let v = basis(dim, idx);
                let w = apply_at(&v, 0, true, &r, n, &strides);
                let w = apply_at(&w, 0, false, &r, n, &strides);
                assert_eq!(w, v, "R R^{{-1}} != id at n={n}, idx={idx}");
                let w = apply_at(&v, 0, false, &r, n, &strides);
                let w = apply_at(&w, 0, true, &r, n, &strides);
                assert_eq!(w, v, "R^{{-1}} R != id at n={n}, idx={idx}");
            }
        }
    }

    #[test]
    fn yang_baxter_holds() {
        for n in 2..=4usize {
            let r = RMatrix::new(n);
            let strides = [1, n, n * n];
            let dim = n * n * n;
            for idx in 0..dim {
                let v = basis(dim, idx);
                let a = apply_at(&v, 0, true, &r, n, &strides);
                let a = apply_at(&a, 1, true, &r, n, &strides);
                let a = apply_at(&a, 0, true, &r, n, &strides);
                let b = apply_at(&v, 1, true, &r, n, &strides);
                let b = apply_at(&b, 0, true, &r, n, &strides);
                let b = apply_at(&b, 1, true, &r, n, &strides);
                assert_eq!(a, b, "Yang-Baxter fails at n={n}, idx={idx}");
            }
        }
    }

    #[test]
    fn weight_is_conserved() {
        let n = 4usize;
        let r = RMatrix::new(n);
        let strides = [1, n];
        for idx in 0..n * n {
            let weight = idx % n + idx / n;
            for positive in [true, false] {
                let w = apply_at(&basis(n * n, idx), 0, positive, &r, n, &strides);
                for (tgt, c) in w.iter().enumerate() {
                    if !c.is_zero() {
                        assert_eq!(tgt % n + tgt / n, weight);
                    }
                }
            }
        }
    }

    #[test]
    fn partial_closure_gives_framing_scalar() {
        // Closing the second strand of a single crossing against the enhanced
        // trace weights t^{2(n-1-2j)} multiplies the remaining strand by
        // t^{±(n²-1)}; the framing correction in colored_jones assumes this.
        for n in 2..=4usize {
            let r = RMatrix::new(n);
            let strides = [1, n];
            for positive in [true, false] {
                for i in 0..n {
                    let mut scalar = ZL::zero();
                    for j in 0..n {
                        let idx = i + j * n;
                        let w = apply_at(&basis(n * n, idx), 0, positive, &r, n, &strides);
                        let mu = 2 * (n as i64 - 1 - 2 * j as i64);
                        scalar.add_assign(&w[idx].shift(mu));
                    }
                    let e = if positive { 1 } else { -1 } * ((n * n) as i64 - 1);
                    assert_eq!(scalar, ZL::monomial(e), "n={n}, i={i}");
                }
            }
        }
    }
}
