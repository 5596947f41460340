//! Kauffman bracket state sum over braid closures: an independent oracle for
//! the Jones polynomial, used to pin the conventions of the R-matrix engine.
//!
//! Each crossing is smoothed two ways (sigma_i -> A·id + A^{-1}·e_i, inverse
//! crossings swap the weights); loops of the resolved diagram are counted
//! with a union-find; writhe normalization multiplies by (-A)^{-3w}.  The
//! output variable is t = A, so that q = t^4 matches colored_jones at n = 2.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::rmatrix::ZL;
use super::{BraidError, BraidWord};
use crate::exactalg::LaurentPoly;

/// Hard cap on the 2^c state sum.
pub const CROSSING_BUDGET: usize = 24;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn classes(&mut self) -> usize {
        let n = self.parent.len();
        (0..n).filter(|&x| self.find(x) == x).count()
    }
}

/// Jones polynomial of the braid closure via the Kauffman bracket, in the
/// t-convention of `colored_jones` (n = 2 gives [2] times this value).
pub fn kauffman_bracket_jones(b: &BraidWord) -> Result<LaurentPoly, BraidError> {
    let c = b.letters().len();
    if c > CROSSING_BUDGET {
        return Err(BraidError::TooManyCrossings {
            crossings: c,
            budget: CROSSING_BUDGET,
        });
    }
    let cycles = b.permutation_cycles();
    if cycles != 1 {
        return Err(BraidError::ClosureNotKnot { cycles });
    }
    let k = b.strands() as usize;
    let node = |level: usize, pos: usize| level * k + pos;
    // delta = -A^2 - A^{-2}
    let delta = {
        let mut d = ZL::monomial(2);
        d.add_assign(&ZL::monomial(-2));
        d.negate();
        d
    };
    let mut delta_pow = vec![ZL::one()];
    let mut bracket = ZL::zero();
    for mask in 0u32..(1u32 << c) {
        let mut uf = UnionFind::new((c + 1) * k);
        let mut aexp = 0i64;
        for (lvl, &letter) in b.letters().iter().enumerate() {
            let i = letter.unsigned_abs() as usize - 1;
            let smooth_id = (mask >> lvl) & 1 == 0;
            aexp += match (letter > 0, smooth_id) {
                (true, true) | (false, false) => 1,
                _ => -1,
            };
            for pos in 0..k {
                if smooth_id || (pos != i && pos != i + 1) {
                    uf.union(node(lvl, pos), node(lvl + 1, pos));
                }
            }
            if !smooth_id {
                uf.union(node(lvl, i), node(lvl, i + 1));
                uf.union(node(lvl + 1, i), node(lvl + 1, i + 1));
            }
        }
        for pos in 0..k {
            uf.union(node(c, pos), node(0, pos));
        }
        let loops = uf.classes();
        while delta_pow.len() < loops {
            let next = delta_pow.last().unwrap().mul(&delta);
            delta_pow.push(next);
        }
        bracket.add_assign(&delta_pow[loops - 1].shift(aexp));
    }
    let w = b.writhe();
    let mut f = bracket.shift(-3 * w);
    if w % 2 != 0 {
        f.negate();
    }
    Ok(f.to_laurent())
}

/// Knot determinant |V(q = -1)| read off a Jones polynomial in t (q = t^4).
/// Returns None unless every exponent is divisible by 4 with integer
/// coefficient.
pub fn determinant_from_jones(v: &LaurentPoly) -> Option<BigInt> {
    let mut acc = BigInt::zero();
    for (e, c) in v.terms() {
        if e.rem_euclid(4) != 0 || !c.is_integer() {
            return None;
        }
        if e.div_euclid(4).rem_euclid(2) == 0 {
            acc += c.numer();
        } else {
            acc -= c.numer();
        }
    }
    Some(acc.abs())
}
