//! Univariate polynomial arithmetic over a prime field F_p and Berlekamp's
//! factorization algorithm. The prime is a runtime `u64`; products go
//! through `u128` so any prime below 2^63 is safe.
//!
//! Polynomials are dense coefficient vectors, ascending, with no trailing
//! zeros (the zero polynomial is the empty vector).

pub type PolyP = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            e >>= 1;
            a = self.mul(a, a);
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn trim(&self, mut f: PolyP) -> PolyP {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    pub fn poly_add(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, &c) in a.iter().enumerate() {
            out[i] = self.add(out[i], c);
        }
        for (i, &c) in b.iter().enumerate() {
            out[i] = self.add(out[i], c);
        }
        self.trim(out)
    }

    pub fn poly_sub(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, &c) in a.iter().enumerate() {
            out[i] = self.add(out[i], c);
        }
        for (i, &c) in b.iter().enumerate() {
            out[i] = self.sub(out[i], c);
        }
        self.trim(out)
    }

    pub fn poly_mul(&self, a: &PolyP, b: &PolyP) -> PolyP {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ca) in a.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(ca, cb));
            }
        }
        self.trim(out)
    }

    /// Division with remainder; `b` must be nonzero.
    pub fn poly_divmod(&self, a: &PolyP, b: &PolyP) -> (PolyP, PolyP) {
        assert!(!b.is_empty(), "poly division by zero");
        if a.len() < b.len() {
            return (Vec::new(), a.clone());
        }
        let lead_inv = self.inv(*b.last().unwrap());
        let mut r = a.clone();
        let mut q = vec![0u64; a.len() - b.len() + 1];
        while r.len() >= b.len() {
            let k = r.len() - b.len();
            let c = self.mul(*r.last().unwrap(), lead_inv);
            q[k] = c;
            for (i, &bc) in b.iter().enumerate() {
                r[k + i] = self.sub(r[k + i], self.mul(bc, c));
            }
            r = self.trim(r);
        }
        (self.trim(q), r)
    }

    pub fn poly_rem(&self, a: &PolyP, b: &PolyP) -> PolyP {
        self.poly_divmod(a, b).1
    }

    pub fn poly_monic(&self, a: &PolyP) -> PolyP {
        if a.is_empty() {
            return Vec::new();
        }
        let inv = self.inv(*a.last().unwrap());
        a.iter().map(|&c| self.mul(c, inv)).collect()
    }

    pub fn poly_gcd(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_empty() {
            let r = self.poly_rem(&x, &y);
            x = y;
            y = r;
        }
        self.poly_monic(&x)
    }

    pub fn poly_deriv(&self, a: &PolyP) -> PolyP {
        if a.len() <= 1 {
            return Vec::new();
        }
        let out = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, (i as u64) % self.p))
            .collect();
        self.trim(out)
    }

    /// `x^e mod f` by square and multiply.
    pub fn poly_xpow_mod(&self, mut e: u64, f: &PolyP) -> PolyP {
        assert!(f.len() >= 2, "modulus must have positive degree");
        let mut acc = vec![1u64];
        let mut base = self.poly_rem(&vec![0, 1], f);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_rem(&self.poly_mul(&acc, &base), f);
            }
            e >>= 1;
            if e > 0 {
                base = self.poly_rem(&self.poly_mul(&base, &base), f);
            }
        }
        acc
    }

    /// Inverse of `a` modulo `f` over F_p; `None` when they share a factor.
    pub fn poly_invmod(&self, a: &PolyP, f: &PolyP) -> Option<PolyP> {
        let mut r0 = f.clone();
        let mut r1 = self.poly_rem(a, f);
        let mut t0: PolyP = Vec::new();
        let mut t1: PolyP = vec![1];
        while !r1.is_empty() {
            let (q, r) = self.poly_divmod(&r0, &r1);
            let t = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        if r0.len() != 1 {
            return None;
        }
        let inv = self.inv(r0[0]);
        Some(t0.iter().map(|&c| self.mul(c, inv)).collect())
    }

    pub fn is_squarefree(&self, f: &PolyP) -> bool {
        if f.len() <= 1 {
            return true;
        }
        let d = self.poly_deriv(f);
        if d.is_empty() {
            return false;
        }
        self.poly_gcd(f, &d).len() == 1
    }
}

/// Berlekamp factorization of a monic squarefree polynomial over F_p.
/// Returns the monic irreducible factors in a deterministic order.
pub fn berlekamp(fp: Fp, f: &PolyP) -> Vec<PolyP> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    debug_assert!(fp.is_squarefree(f));
    // Petr matrix: row i holds x^{i p} mod f.
    let xp = fp.poly_xpow_mod(fp.p, f);
    let mut rows: Vec<PolyP> = Vec::with_capacity(n);
    rows.push(vec![1]);
    for i in 1..n {
        let prev = rows[i - 1].clone();
        rows.push(fp.poly_rem(&fp.poly_mul(&prev, &xp), f));
    }
    // Nullspace of (Q - I)^T ... we work with Q - I directly; vectors v with
    // v Q = v correspond to polynomials fixed by Frobenius. Row i of Q holds
    // the coordinates of x^{ip}, so the fixed polynomials are the nullspace
    // of (Q^T - I).
    let mut mat = vec![vec![0u64; n]; n];
    for (i, row) in rows.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            mat[j][i] = c; // transpose
        }
    }
    for (i, row) in mat.iter_mut().enumerate() {
        row[i] = fp.sub(row[i], 1);
    }
    let basis = nullspace_fp(fp, mat);
    let r = basis.len();
    if r == 1 {
        return vec![fp.poly_monic(f)];
    }
    let mut factors = vec![fp.poly_monic(f)];
    for v in basis {
        if factors.len() == r {
            break;
        }
        let vpoly = fp.trim(v);
        if vpoly.len() <= 1 {
            continue; // constant vector splits nothing
        }
        let mut next: Vec<PolyP> = Vec::new();
        for w in factors {
            if w.len() - 1 <= 1 {
                next.push(w);
                continue;
            }
            let mut rem_w = w;
            let mut pieces: Vec<PolyP> = Vec::new();
            for c in 0..fp.p {
                if rem_w.len() - 1 == 0 {
                    break;
                }
                let mut shifted = vpoly.clone();
                shifted[0] = fp.sub(shifted[0], c);
                let g = fp.poly_gcd(&rem_w, &fp.trim(shifted));
                if g.len() > 1 && g.len() < rem_w.len() {
                    rem_w = fp.poly_divmod(&rem_w, &g).0;
                    pieces.push(g);
                }
            }
            if rem_w.len() > 1 {
                pieces.push(rem_w);
            }
            next.extend(pieces);
        }
        factors = next;
    }
    factors.sort();
    factors
}

/// Nullspace basis over F_p by Gauss-Jordan; deterministic.
pub fn nullspace_fp(fp: Fp, mut m: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivot_of_col = vec![usize::MAX; cols];
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = fp.inv(m[rank][col]);
        for x in m[rank].iter_mut() {
            *x = fp.mul(*x, inv);
        }
        for i in 0..rows {
            if i != rank && m[i][col] != 0 {
                let factor = m[i][col];
                for j in 0..cols {
                    let t = fp.mul(factor, m[rank][j]);
                    m[i][j] = fp.sub(m[i][j], t);
                }
            }
        }
        pivot_of_col[col] = rank;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free] != usize::MAX {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for col in 0..cols {
            let piv = pivot_of_col[col];
            if piv != usize::MAX {
                v[col] = fp.sub(0, m[piv][free]);
            }
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let fp = Fp::new(17);
        assert_eq!(fp.mul(16, 16), 1);
        assert_eq!(fp.inv(5), 7); // 5*7 = 35 = 2*17 + 1
        assert_eq!(fp.pow(3, 16), 1);
    }

    #[test]
    fn poly_divmod_roundtrip() {
        let fp = Fp::new(17);
        let a = vec![3, 0, 5, 11, 1];
        let b = vec![2, 7, 1];
        let (q, r) = fp.poly_divmod(&a, &b);
        let back = fp.poly_add(&fp.poly_mul(&q, &b), &r);
        assert_eq!(back, a);
        assert!(r.len() < b.len());
    }

    #[test]
    fn xpow_fermat() {
        // x^p = x mod (x^2 - a) has the Frobenius shape; sanity: x^17 mod
        // (x^2+1) over F_17: x^2 = -1, x^16 = 1, so x^17 = x.
        let fp = Fp::new(17);
        let f = vec![1, 0, 1];
        assert_eq!(fp.poly_xpow_mod(17, &f), vec![0, 1]);
    }

    #[test]
    fn berlekamp_splits_product_of_linears() {
        // x^2 - 1 = (x-1)(x+1) over F_17.
        let fp = Fp::new(17);
        let f = vec![16, 0, 1];
        let mut factors = berlekamp(fp, &f);
        factors.sort();
        assert_eq!(factors.len(), 2);
        let prod = fp.poly_mul(&factors[0], &factors[1]);
        assert_eq!(prod, f);
    }

    #[test]
    fn berlekamp_irreducible_detected() {
        // x^2 + 1 is irreducible over F_19 (-1 is not a QR mod 19).
        let fp = Fp::new(19);
        let f = vec![1, 0, 1];
        let factors = berlekamp(fp, &f);
        assert_eq!(factors, vec![f]);
    }

    #[test]
    fn berlekamp_x4_plus_1_mod_17() {
        // x^4 + 1 splits into four linears mod 17 since 17 = 1 mod 16 gives
        // primitive 8th roots of unity.
        let fp = Fp::new(17);
        let f = vec![1, 0, 0, 0, 1];
        let factors = berlekamp(fp, &f);
        assert_eq!(factors.len(), 4);
        assert!(factors.iter().all(|g| g.len() == 2));
        let mut prod = vec![1];
        for g in &factors {
            prod = fp.poly_mul(&prod, g);
        }
        assert_eq!(prod, f);
    }

    #[test]
    fn berlekamp_mixed_degrees() {
        // f = (x^2 + 1)(x + 3) over F_19: one quadratic, one linear.
        let fp = Fp::new(19);
        let f = fp.poly_mul(&vec![1, 0, 1], &vec![3, 1]);
        let factors = berlekamp(fp, &f);
        assert_eq!(factors.len(), 2);
        let mut prod = vec![1];
        for g in &factors {
            prod = fp.poly_mul(&prod, g);
        }
        assert_eq!(prod, fp.poly_monic(&f));
        let degs: Vec<usize> = factors.iter().map(|g| g.len() - 1).collect();
        assert!(degs.contains(&1) && degs.contains(&2));
    }

    #[test]
    fn nullspace_dimensions() {
        let fp = Fp::new(17);
        // Rank-1 3x3 matrix: nullity 2.
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![3, 6, 9]];
        let ns = nullspace_fp(fp, m.clone());
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &m {
                let dot = row
                    .iter()
                    .zip(v.iter())
                    .fold(0u64, |acc, (&a, &b)| fp.add(acc, fp.mul(a, b)));
                assert_eq!(dot, 0);
            }
        }
    }
}
