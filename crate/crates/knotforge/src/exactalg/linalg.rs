//! Exact nullspaces of integer matrices.
//!
//! The expensive rational elimination is replaced by eliminations modulo
//! word-sized primes followed by Chinese remaindering and rational
//! reconstruction. The result is still exact: reconstructed vectors are
//! verified against the matrix with big-rational arithmetic, and a vector
//! count equal to the modular nullity certifies completeness, because the
//! modular nullity bounds the rational nullity from above while the
//! verified independent vectors bound it from below.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::factor::is_prime_u64;
use super::modp::Fp;
use super::multipoly::Rational;

/// Rank and pivot columns of `m` modulo `p`, by Gauss-Jordan elimination.
/// Returns the reduced rows as well, for nullspace extraction.
fn rref_mod_p(m: &[Vec<BigInt>], p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let fp = Fp::new(p);
    let pbig = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| u64::try_from(&c.mod_floor(&pbig)).unwrap())
                .collect()
        })
        .collect();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = fp.inv(a[rank][col]);
        for x in a[rank].iter_mut() {
            *x = fp.mul(*x, inv);
        }
        for i in 0..rows {
            if i != rank && a[i][col] != 0 {
                let factor = a[i][col];
                for j in 0..cols {
                    let t = fp.mul(factor, a[rank][j]);
                    a[i][j] = fp.sub(a[i][j], t);
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    a.truncate(rank);
    (pivots, a)
}

/// Dimension of the nullspace of `m` modulo `p`. An upper bound for the
/// rational nullity, with equality for all but finitely many primes.
pub fn nullity_mod_p(m: &[Vec<BigInt>], p: u64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let (pivots, _) = rref_mod_p(m, p);
    cols - pivots.len()
}

/// Canonical nullspace basis modulo `p`: one vector per free column, with a
/// one in that column and zeros in the other free columns.
fn nullspace_mod_p(m: &[Vec<BigInt>], p: u64, cols: usize) -> (Vec<usize>, Vec<Vec<u64>>) {
    let fp = Fp::new(p);
    let (pivots, rref) = rref_mod_p(m, p);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = fp.sub(0, rref[r][free]);
        }
        basis.push(v);
    }
    (pivots, basis)
}

/// Rational reconstruction of `c mod m`: the unique `n/d` with
/// `|n|, |d| <= sqrt(m/2)` when it exists.
fn rational_reconstruct(c: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = num_integer::Roots::sqrt(&(m / BigInt::from(2)));
    let mut r0 = m.clone();
    let mut r1 = c.mod_floor(m);
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while r1 > bound {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        let t = &t0 - &q * &t1;
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    if t1.is_zero() {
        return None;
    }
    if t1.abs() > bound {
        return None;
    }
    if t1.is_negative() {
        r1 = -r1;
        t1 = -t1;
    }
    Some(Rational::new(r1, t1))
}

/// Exact rational nullspace basis of an integer matrix, in the canonical
/// reduced form (one vector per free column of the row-reduced matrix).
/// The basis is verified against every row before being returned.
pub fn rational_nullspace(m: &[Vec<BigInt>]) -> Vec<Vec<Rational>> {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    if cols == 0 {
        return Vec::new();
    }

    let mut prime = 2147483648u64; // first candidate below is 2^31 - 1
    let mut consensus: Option<(Vec<usize>, Vec<Vec<BigInt>>, BigInt)> = None;
    let mut primes_used = 0;
    while primes_used < 200 {
        prime -= 1;
        while !is_prime_u64(prime) {
            prime -= 1;
        }
        let (pivots, basis) = nullspace_mod_p(m, prime, cols);
        primes_used += 1;
        match &mut consensus {
            None => {
                let acc: Vec<Vec<BigInt>> = basis
                    .iter()
                    .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                    .collect();
                consensus = Some((pivots, acc, BigInt::from(prime)));
            }
            Some((cpiv, acc, modulus)) => {
                // Higher rank wins; for equal rank the lexicographically
                // earliest pivot set is the one of good reduction.
                let replace = pivots.len() > cpiv.len()
                    || (pivots.len() == cpiv.len() && pivots < *cpiv);
                if replace {
                    let acc_new: Vec<Vec<BigInt>> = basis
                        .iter()
                        .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                        .collect();
                    consensus = Some((pivots, acc_new, BigInt::from(prime)));
                } else if pivots == *cpiv {
                    // Fold the new residues in by Chinese remaindering.
                    let pb = BigInt::from(prime);
                    let minv = invert_mod(&modulus.mod_floor(&pb), &pb);
                    for (av, bv) in acc.iter_mut().zip(basis.iter()) {
                        for (aj, &bj) in av.iter_mut().zip(bv.iter()) {
                            let diff = (BigInt::from(bj) - &*aj).mod_floor(&pb);
                            let k = (&diff * &minv).mod_floor(&pb);
                            *aj += &*modulus * k;
                        }
                    }
                    *modulus *= pb;
                }
                // A lower-rank or lex-later prime is bad reduction: skip it.
            }
        }
        let (_, acc, modulus) = consensus.as_ref().unwrap();
        if primes_used >= 2 || m.len() < 8 {
            if let Some(candidate) = try_reconstruct(acc, modulus) {
                if verify_nullspace(m, &candidate) {
                    return candidate;
                }
            }
        }
    }
    panic!("rational nullspace reconstruction did not converge");
}

fn try_reconstruct(acc: &[Vec<BigInt>], modulus: &BigInt) -> Option<Vec<Vec<Rational>>> {
    let mut out = Vec::with_capacity(acc.len());
    for v in acc {
        let mut rv = Vec::with_capacity(v.len());
        for c in v {
            rv.push(rational_reconstruct(c, modulus)?);
        }
        out.push(rv);
    }
    Some(out)
}

fn verify_nullspace(m: &[Vec<BigInt>], basis: &[Vec<Rational>]) -> bool {
    for v in basis {
        for row in m {
            let mut dot = Rational::zero();
            for (c, x) in row.iter().zip(v.iter()) {
                if !c.is_zero() && !x.is_zero() {
                    dot += Rational::from(c.clone()) * x;
                }
            }
            if !dot.is_zero() {
                return false;
            }
        }
    }
    true
}

fn invert_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "modulus collision in CRT");
    e.x.mod_floor(m)
}

/// Clears denominators and common integer content from a rational vector,
/// making the first nonzero entry positive.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let mut den_lcm = BigInt::one();
    for c in v {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&den_lcm / c.denom())).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if !g.is_zero() && !g.is_one() {
        for c in &mut ints {
            *c /= &g;
        }
    }
    if let Some(first) = ints.iter().find(|c| !c.is_zero()) {
        if first.is_negative() {
            for c in &mut ints {
                *c = -&*c;
            }
        }
    }
    ints
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&c| bi(c)).collect()).collect()
    }

    #[test]
    fn nullity_counts() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        assert_eq!(nullity_mod_p(&m, 1009), 1);
        let full = mat(&[&[1, 0], &[0, 1]]);
        assert_eq!(nullity_mod_p(&full, 1009), 0);
    }

    #[test]
    fn nullspace_simple_kernel() {
        // Kernel of [1 2 3; 1 1 1] is spanned by (1, -2, 1).
        let m = mat(&[&[1, 2, 3], &[1, 1, 1]]);
        let ns = rational_nullspace(&m);
        assert_eq!(ns.len(), 1);
        let ints = primitive_integer_vector(&ns[0]);
        assert_eq!(ints, vec![bi(1), bi(-2), bi(1)]);
    }

    #[test]
    fn nullspace_trivial() {
        let m = mat(&[&[2, 1], &[1, 1]]);
        assert!(rational_nullspace(&m).is_empty());
    }

    #[test]
    fn nullspace_rational_entries() {
        // Kernel of [3 5] is spanned by (1, -3/5) in reduced form.
        let m = mat(&[&[3, 5]]);
        let ns = rational_nullspace(&m);
        assert_eq!(ns.len(), 1);
        let ints = primitive_integer_vector(&ns[0]);
        assert_eq!(ints, vec![bi(5), bi(-3)]);
    }

    #[test]
    fn nullspace_matches_direct_elimination_random() {
        // Random small matrices: compare dimension with a direct rational
        // Gauss elimination, and confirm every vector annihilates.
        let mut state = 0x853c49e6748fea9bu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..50 {
            let rows = 2 + (next() % 4) as usize;
            let cols = 2 + (next() % 4) as usize;
            let m: Vec<Vec<BigInt>> = (0..rows)
                .map(|_| (0..cols).map(|_| bi((next() % 7) as i64 - 3)).collect())
                .collect();
            let ns = rational_nullspace(&m);
            // Direct rank over Q.
            let mut a: Vec<Vec<Rational>> = m
                .iter()
                .map(|r| r.iter().map(|c| Rational::from(c.clone())).collect())
                .collect();
            let mut rank = 0;
            for col in 0..cols {
                let Some(p) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
                    continue;
                };
                a.swap(rank, p);
                let inv = a[rank][col].recip();
                for x in a[rank].iter_mut() {
                    *x *= &inv;
                }
                for i in 0..rows {
                    if i != rank && !a[i][col].is_zero() {
                        let f = a[i][col].clone();
                        for j in 0..cols {
                            let t = &f * &a[rank][j];
                            a[i][j] -= t;
                        }
                    }
                }
                rank += 1;
                if rank == rows {
                    break;
                }
            }
            assert_eq!(ns.len(), cols - rank);
            assert!(verify_nullspace(&m, &ns));
        }
    }

    #[test]
    fn reconstruction_finds_fractions() {
        // 1/3 mod 1000003.
        let m = BigInt::from(1000003);
        let third = invert_mod(&bi(3), &m);
        let r = rational_reconstruct(&third, &m).unwrap();
        assert_eq!(r, Rational::new(bi(1), bi(3)));
        let neg = (&m - &third * BigInt::from(2)).mod_floor(&m); // -2/3
        let r2 = rational_reconstruct(&neg, &m).unwrap();
        assert_eq!(r2, Rational::new(bi(-2), bi(3)));
    }
}
