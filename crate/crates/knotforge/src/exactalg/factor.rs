//! Factorization over Q: univariate by the classical reduce mod p, Hensel
//! lift, recombine route; bivariate by specializing one variable, factoring
//! the specialization, and lifting the factors as power series.
//!
//! Every returned factor is integer-primitive and irreducible over Q with a
//! positive leading coefficient under the graded-lex order, and the input
//! equals `content * product(factor_i ^ mult_i)` exactly; tests verify that
//! identity on randomized products.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::densepoly::{self, DensePoly};
use super::gcd::{content_wrt, gcd_multi};
use super::modp::{berlekamp, Fp, PolyP};
use super::multipoly::{MultiPoly, Rational};

#[derive(Clone, Debug)]
pub struct Factorization {
    pub content: Rational,
    /// Irreducible factors with multiplicities, deterministically ordered.
    pub factors: Vec<(MultiPoly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back together.
    pub fn expand(&self) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.content.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }
}

fn sort_factors(factors: &mut [(MultiPoly, u32)]) {
    factors.sort_by(|a, b| {
        (a.0.total_degree(), a.0.to_string()).cmp(&(b.0.total_degree(), b.0.to_string()))
    });
}

/// Squarefree decomposition with respect to `var` (Yun's algorithm).
/// Input must be non-constant; returns primitive pairwise-coprime squarefree
/// parts with multiplicities, ignoring scalar content.
pub fn squarefree_decomposition(f: &MultiPoly, var: &str) -> Vec<(MultiPoly, u32)> {
    let f = f.content_primitive().1;
    let df = f.derivative(var);
    assert!(!df.is_zero(), "input constant in the squarefree variable");
    let g = gcd_multi(&f, &df);
    if g.is_constant() {
        return vec![(f, 1)];
    }
    let mut out = Vec::new();
    let mut w = f.try_div_exact(&g).unwrap();
    let y = df.try_div_exact(&g).unwrap();
    let mut z = &y - &w.derivative(var);
    let mut i = 1u32;
    while !w.is_constant() {
        let h = gcd_multi(&w, &z);
        if !h.is_constant() {
            out.push((h.clone(), i));
        }
        w = w.try_div_exact(&h).unwrap();
        let y2 = z.try_div_exact(&h).unwrap();
        z = &y2 - &w.derivative(var);
        i += 1;
    }
    out
}

/// Full factorization of a univariate polynomial over Q.
pub fn factor_univariate(p: &MultiPoly, var: &str) -> Factorization {
    assert!(
        p.vars().iter().all(|v| v == var),
        "factor_univariate: extra variables present"
    );
    if p.is_zero() {
        return Factorization { content: Rational::zero(), factors: Vec::new() };
    }
    let (content, prim) = p.content_primitive();
    if prim.is_constant() {
        return Factorization { content, factors: Vec::new() };
    }
    let mut factors: Vec<(MultiPoly, u32)> = Vec::new();
    for (sqf, mult) in squarefree_decomposition(&prim, var) {
        for irr in factor_squarefree_uni(&sqf, var) {
            factors.push((irr, mult));
        }
    }
    sort_factors(&mut factors);
    Factorization { content, factors }
}

/// Irreducible factors of a squarefree integer-primitive univariate
/// polynomial.
fn factor_squarefree_uni(f: &MultiPoly, var: &str) -> Vec<MultiPoly> {
    let n = f.degree(var);
    if n <= 1 {
        return vec![f.normalize_sign()];
    }
    let coeffs: Vec<BigInt> = f
        .as_univariate(var)
        .expect("univariate input")
        .iter()
        .map(|c| {
            debug_assert!(c.denom().is_one());
            c.numer().clone()
        })
        .collect();
    let lc = coeffs.last().unwrap().clone();

    // Use the prime giving the fewest modular factors among a few
    // candidates; fewer factors means a smaller recombination search.
    let mut best: Option<(u64, Vec<PolyP>)> = None;
    let mut prime = 17u64;
    let mut examined = 0;
    while examined < 5 {
        prime = next_prime_from(prime);
        let fp = Fp::new(prime);
        if (&lc % BigInt::from(prime)).is_zero() {
            continue;
        }
        let fbar: PolyP = fp.trim(
            coeffs
                .iter()
                .map(|c| {
                    let r = c.mod_floor(&BigInt::from(prime));
                    u64::try_from(&r).unwrap()
                })
                .collect(),
        );
        if fbar.len() != coeffs.len() || !fp.is_squarefree(&fbar) {
            continue;
        }
        examined += 1;
        let modular = berlekamp(fp, &fp.poly_monic(&fbar));
        let better = best.as_ref().map_or(true, |(_, b)| modular.len() < b.len());
        if better {
            best = Some((prime, modular));
        }
        if best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (p, modular) = best.expect("no usable prime found");
    if modular.len() == 1 {
        return vec![f.normalize_sign()];
    }

    // Lift the monic factorization of f/lc past twice the factor
    // coefficient bound.
    let bound = factor_coeff_bound(&coeffs);
    let mut pk = BigInt::from(p);
    let mut steps = 0u32;
    while pk <= &bound * BigInt::from(2) {
        pk *= BigInt::from(p);
        steps += 1;
    }
    let lifted = hensel_lift_uni(&coeffs, p, steps, &modular);

    recombine_uni(f, var, &lifted, &pk)
}

/// Upper bound on the absolute value of any coefficient of `lc * g` where
/// `g` divides `f` over Q (Mignotte-style, deliberately generous).
fn factor_coeff_bound(coeffs: &[BigInt]) -> BigInt {
    let norm_sq: BigInt = coeffs.iter().map(|c| c * c).sum();
    let norm = num_integer::Roots::sqrt(&norm_sq) + 1;
    let lc_abs = coeffs.last().unwrap().abs();
    (BigInt::one() << (coeffs.len() + 1)) * norm * lc_abs
}

fn next_prime_from(p: u64) -> u64 {
    let mut q = p + 1;
    loop {
        if is_prime_u64(q) {
            return q;
        }
        q += 1;
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for d in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == d {
            return true;
        }
        if n % d == 0 {
            return false;
        }
    }
    let mut d = 37u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Linear Hensel lifting: raises the factorization `f/lc = prod g_i` from
/// mod p to mod p^(steps+1). The `g_i` stay monic; coefficients are kept in
/// `[0, p^j)`.
fn hensel_lift_uni(
    coeffs: &[BigInt],
    p: u64,
    steps: u32,
    modular: &[PolyP],
) -> Vec<Vec<BigInt>> {
    let fp = Fp::new(p);
    let r = modular.len();
    // Bezout data: sigma_i = (prod_{j!=i} g_j)^{-1} mod g_i over F_p.
    let mut sigmas: Vec<PolyP> = Vec::with_capacity(r);
    for i in 0..r {
        let mut prod: PolyP = vec![1];
        for (j, g) in modular.iter().enumerate() {
            if j != i {
                prod = fp.poly_rem(&fp.poly_mul(&prod, g), &modular[i]);
            }
        }
        let sigma = fp
            .poly_invmod(&prod, &modular[i])
            .expect("modular factors must be pairwise coprime");
        sigmas.push(sigma);
    }
    let mut lifted: Vec<Vec<BigInt>> = modular
        .iter()
        .map(|g| g.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let pbig = BigInt::from(p);
    let mut modulus = pbig.clone();
    for _ in 0..steps {
        let next_mod = &modulus * &pbig;
        // Target: f * lc^{-1} mod next_mod, monic.
        let lc = coeffs.last().unwrap();
        let ilc = invert_mod(lc, &next_mod);
        let target: Vec<BigInt> = coeffs
            .iter()
            .map(|c| (c * &ilc).mod_floor(&next_mod))
            .collect();
        let mut prod: Vec<BigInt> = vec![BigInt::one()];
        for g in &lifted {
            prod = bigint_poly_mul_mod(&prod, g, &next_mod);
        }
        let err: Vec<BigInt> = (0..target.len())
            .map(|i| {
                let a = target.get(i).cloned().unwrap_or_else(BigInt::zero);
                let b = prod.get(i).cloned().unwrap_or_else(BigInt::zero);
                (a - b).mod_floor(&next_mod)
            })
            .collect();
        // err is divisible by the current modulus; reduce the quotient mod p.
        let ebar: PolyP = fp.trim(
            err.iter()
                .map(|c| {
                    let (q, rem) = c.div_mod_floor(&modulus);
                    debug_assert!(rem.is_zero());
                    u64::try_from(&q.mod_floor(&pbig)).unwrap()
                })
                .collect(),
        );
        for i in 0..r {
            let delta = fp.poly_rem(&fp.poly_mul(&ebar, &sigmas[i]), &modular[i]);
            for (d, &c) in delta.iter().enumerate() {
                if c != 0 {
                    lifted[i][d] = (&lifted[i][d] + &modulus * BigInt::from(c))
                        .mod_floor(&next_mod);
                }
            }
        }
        modulus = next_mod;
    }
    lifted
}

fn bigint_poly_mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    for c in &mut out {
        *c = c.mod_floor(m);
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn invert_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "element not invertible");
    e.x.mod_floor(m)
}

/// Symmetric representative in (-m/2, m/2].
fn symmetric_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * BigInt::from(2) > *m {
        r - m
    } else {
        r
    }
}

/// Searches subsets of the lifted modular factors for true divisors.
fn recombine_uni(
    f: &MultiPoly,
    var: &str,
    lifted: &[Vec<BigInt>],
    pk: &BigInt,
) -> Vec<MultiPoly> {
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut current = f.clone();
    let mut found = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= remaining.len() {
        let combos = combinations(remaining.len(), size);
        for combo in combos {
            let subset: Vec<usize> = combo.iter().map(|&i| remaining[i]).collect();
            let lc_big = current
                .leading_coeff_in(var)
                .as_constant()
                .unwrap()
                .numer()
                .clone();
            let mut cand: Vec<BigInt> = vec![lc_big.clone()];
            for &i in &subset {
                cand = bigint_poly_mul_mod(&cand, &lifted[i], pk);
            }
            let cand_sym: Vec<Rational> = cand
                .iter()
                .map(|c| Rational::from(symmetric_mod(c, pk)))
                .collect();
            let cand_poly = MultiPoly::from_univariate(var, &cand_sym)
                .content_primitive()
                .1;
            if cand_poly.is_constant() {
                continue;
            }
            if let Some(q) = current.try_div_exact(&cand_poly) {
                found.push(cand_poly.normalize_sign());
                current = q;
                remaining.retain(|i| !subset.contains(i));
                continue 'outer;
            }
        }
        size += 1;
    }
    if !current.is_constant() {
        found.push(current.content_primitive().1);
    }
    found
}

/// All size-k index subsets of 0..n in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        out.push(combo.clone());
        // Advance.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if combo[i] != i + n - k {
                break;
            }
        }
        if combo[i] == i + n - k {
            return out;
        }
        combo[i] += 1;
        for j in i + 1..k {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

/// Full factorization of a polynomial in at most the two given variables.
/// `yvar` is the variable the lifting runs in.
pub fn factor_bivariate(p: &MultiPoly, xvar: &str, yvar: &str) -> Factorization {
    assert!(
        p.vars().iter().all(|v| v == xvar || v == yvar),
        "factor_bivariate: extra variables present"
    );
    if p.is_zero() {
        return Factorization { content: Rational::zero(), factors: Vec::new() };
    }
    if p.degree(yvar) == 0 {
        return factor_univariate(p, xvar);
    }
    if p.degree(xvar) == 0 {
        return factor_univariate(p, yvar);
    }
    let (mut content, prim) = p.content_primitive();
    let mut factors: Vec<(MultiPoly, u32)> = Vec::new();
    // Split off the content in x, factor it on its own.
    let conty = content_wrt(&prim, yvar);
    let main = prim.try_div_exact(&conty).unwrap();
    if !conty.is_constant() {
        let sub = factor_univariate(&conty, xvar);
        content *= sub.content;
        factors.extend(sub.factors);
    } else {
        content *= conty.as_constant().unwrap();
    }
    for (sqf, mult) in squarefree_decomposition(&main, yvar) {
        if sqf.degree(xvar) == 0 {
            for (irr, m2) in factor_univariate(&sqf, yvar).factors {
                factors.push((irr, m2 * mult));
            }
            continue;
        }
        for irr in factor_squarefree_biv(&sqf, xvar, yvar) {
            factors.push((irr, mult));
        }
    }
    sort_factors(&mut factors);
    Factorization { content, factors }
}

/// Irreducible factors of a squarefree bivariate polynomial that is
/// primitive with respect to `yvar` and has positive degree in both
/// variables.
fn factor_squarefree_biv(f: &MultiPoly, xvar: &str, yvar: &str) -> Vec<MultiPoly> {
    if f.degree(yvar) == 1 {
        return vec![f.normalize_sign()];
    }
    let lcy = f.leading_coeff_in(yvar);
    // Specialization point: leading coefficient stays nonzero and the
    // specialized polynomial stays squarefree.
    let mut x0: Option<BigInt> = None;
    'search: for radius in 0..=(2 * f.total_degree() as i64 + 10) {
        for sign in [1i64, -1] {
            if radius == 0 && sign < 0 {
                continue;
            }
            let cand = BigInt::from(radius * sign);
            let cr = Rational::from(cand.clone());
            if lcy.eval(&[(xvar, cr.clone())]).is_zero() {
                continue;
            }
            let spec = f.subst_rational(xvar, &cr);
            let d = spec.derivative(yvar);
            if gcd_multi(&spec, &d).is_constant() {
                x0 = Some(cand);
                break 'search;
            }
        }
    }
    let x0 = x0.expect("no squarefree specialization point found");
    let x0r = Rational::from(x0.clone());

    let spec = f.subst_rational(xvar, &x0r);
    let uni = factor_univariate(&spec, yvar);
    if uni.factors.len() == 1 {
        // Full-degree irreducible specialization forces irreducibility.
        return vec![f.normalize_sign()];
    }

    // Shift so the specialization point is the series origin.
    let shift = &MultiPoly::var(xvar) + &MultiPoly::constant(x0r.clone());
    let fs = f.subst_poly(xvar, &shift);
    let lcy_s = fs.leading_coeff_in(yvar);
    let prec = f.degree(xvar) + lcy.degree(xvar) + 1;
    let inv_lc = series_inverse(&lcy_s, xvar, prec);
    let fmon = trunc_x(&(&fs * &inv_lc), xvar, prec);

    // Base factors, monic, as dense polynomials in y over Q.
    let base: Vec<DensePoly> = uni
        .factors
        .iter()
        .map(|(g, m)| {
            assert_eq!(*m, 1, "squarefree specialization");
            densepoly::make_monic(&g.as_univariate(yvar).unwrap())
        })
        .collect();
    let sigmas: Vec<DensePoly> = (0..base.len())
        .map(|i| {
            let mut prod: DensePoly = vec![Rational::one()];
            for (j, g) in base.iter().enumerate() {
                if j != i {
                    prod = densepoly::divmod(&densepoly::mul(&prod, g), &base[i]).1;
                }
            }
            let (g, s, _) = densepoly::ext_gcd(&prod, &base[i]);
            assert_eq!(g, vec![Rational::one()], "base factors must be coprime");
            s
        })
        .collect();

    // Linear lift in powers of x.
    let mut lifted: Vec<MultiPoly> = base
        .iter()
        .map(|g| MultiPoly::from_univariate(yvar, g))
        .collect();
    let xv = MultiPoly::var(xvar);
    for j in 1..prec {
        let mut prod = MultiPoly::one();
        for g in &lifted {
            prod = trunc_x(&(&prod * g), xvar, prec);
        }
        let diff = &fmon - &prod;
        if diff.is_zero() {
            break;
        }
        let ej_poly = {
            let cs = diff.coeffs_in(xvar);
            if (j as usize) < cs.len() {
                cs[j as usize].clone()
            } else {
                MultiPoly::zero()
            }
        };
        if ej_poly.is_zero() {
            continue;
        }
        let ej = ej_poly.as_univariate(yvar).unwrap();
        let xj = xv.pow(j);
        for (i, g) in lifted.iter_mut().enumerate() {
            let delta = densepoly::divmod(&densepoly::mul(&ej, &sigmas[i]), &base[i]).1;
            if densepoly::is_zero(&delta) {
                continue;
            }
            let dp = MultiPoly::from_univariate(yvar, &delta);
            *g = &*g + &(&xj * &dp);
        }
    }

    // Recombine subsets; candidates carry the full leading coefficient and
    // are stripped to their primitive part before trial division.
    let unshift = &MultiPoly::var(xvar) - &MultiPoly::constant(x0r);
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut current = f.clone();
    let mut found = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= remaining.len() {
        for combo in combinations(remaining.len(), size) {
            let subset: Vec<usize> = combo.iter().map(|&i| remaining[i]).collect();
            let mut cand = lcy_s.clone();
            for &i in &subset {
                cand = trunc_x(&(&cand * &lifted[i]), xvar, prec);
            }
            let candy = content_wrt(&cand, yvar);
            let cand_prim = cand
                .try_div_exact(&candy)
                .unwrap()
                .content_primitive()
                .1;
            let cand_unshift = cand_prim.subst_poly(xvar, &unshift).content_primitive().1;
            if cand_unshift.is_constant() {
                continue;
            }
            if let Some(q) = current.try_div_exact(&cand_unshift) {
                found.push(cand_unshift.normalize_sign());
                current = q;
                remaining.retain(|i| !subset.contains(i));
                continue 'outer;
            }
        }
        size += 1;
    }
    if !current.is_constant() {
        found.push(current.content_primitive().1);
    }
    found
}

/// Truncates x-degrees at `prec`.
fn trunc_x(p: &MultiPoly, xvar: &str, prec: u32) -> MultiPoly {
    if p.degree(xvar) < prec {
        return p.clone();
    }
    let cs = p.coeffs_in(xvar);
    MultiPoly::from_coeffs_in(xvar, &cs[..(prec as usize).min(cs.len())])
}

/// Power-series inverse of `c` (a polynomial in `xvar` with nonzero constant
/// term) to precision `prec`.
fn series_inverse(c: &MultiPoly, xvar: &str, prec: u32) -> MultiPoly {
    let c0 = c.eval(&[(xvar, Rational::zero())]);
    assert!(!c0.is_zero(), "series inverse needs a unit constant term");
    let mut inv = MultiPoly::constant(c0.recip());
    let mut k = 1u32;
    let two = MultiPoly::from_int(2);
    while k < prec {
        k *= 2;
        let prod = trunc_x(&(c * &inv), xvar, k);
        inv = trunc_x(&(&inv * &(&two - &prod)), xvar, k);
    }
    trunc_x(&inv, xvar, prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn upoly(coeffs: &[i64]) -> MultiPoly {
        let terms: Vec<(Vec<u32>, i64)> = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (vec![i as u32], c))
            .collect();
        MultiPoly::from_int_terms(&["u"], &terms)
    }

    #[test]
    fn factor_quadratic_split() {
        // u^2 - 1 = (u-1)(u+1).
        let f = upoly(&[-1, 0, 1]);
        let fac = factor_univariate(&f, "u");
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.factors.iter().all(|(_, m)| *m == 1));
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn factor_irreducible_quadratics() {
        for coeffs in [[-2i64, 0, 1], [3, 0, 1], [1, 1, 1]] {
            let f = upoly(&coeffs);
            let fac = factor_univariate(&f, "u");
            assert_eq!(fac.factors.len(), 1, "{f} should be irreducible");
            assert_eq!(fac.factors[0].1, 1);
            assert_eq!(fac.expand(), f);
        }
    }

    #[test]
    fn factor_x4_plus_1() {
        // Irreducible over Q though reducible mod every prime.
        let f = upoly(&[1, 0, 0, 0, 1]);
        let fac = factor_univariate(&f, "u");
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].0, f);
    }

    #[test]
    fn factor_with_multiplicity_and_content() {
        // 12 (u-1)^2 (u^2+u+1).
        let f = &upoly(&[-1, 1]).pow(2).scale(&Rational::from(BigInt::from(12)))
            * &upoly(&[1, 1, 1]);
        let fac = factor_univariate(&f, "u");
        assert_eq!(fac.content, Rational::from(BigInt::from(12)));
        assert_eq!(fac.factors.len(), 2);
        let mults: Vec<u32> = fac.factors.iter().map(|(_, m)| *m).collect();
        assert!(mults.contains(&2) && mults.contains(&1));
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn factor_degree_six_product() {
        // (u^2-2)(u^2-3)(u^2-6): pairwise distinct quadratics whose product
        // tests recombination, since mod many primes extra splittings occur.
        let f = &(&upoly(&[-2, 0, 1]) * &upoly(&[-3, 0, 1])) * &upoly(&[-6, 0, 1]);
        let fac = factor_univariate(&f, "u");
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn factor_cyclotomic_like() {
        // u^6 - 1 = (u-1)(u+1)(u^2+u+1)(u^2-u+1).
        let f = upoly(&[-1, 0, 0, 0, 0, 0, 1]);
        let fac = factor_univariate(&f, "u");
        assert_eq!(fac.factors.len(), 4);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn factor_random_products_roundtrip() {
        let mut state = 0xb5297a4d3f84d5b5u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let pool = [
            vec![-1i64, 1],
            vec![1, 1],
            vec![-2, 0, 1],
            vec![1, 1, 1],
            vec![2, -1, 1],
            vec![-3, 0, 1],
            vec![1, 0, 0, 1],
        ];
        for trial in 0..120 {
            let mut f = MultiPoly::one();
            let mut true_deg = 0usize;
            for _ in 0..(1 + next() % 3) {
                let pick = (next() % pool.len() as u64) as usize;
                let mult = 1 + (next() % 2) as u32;
                f = &f * &upoly(&pool[pick]).pow(mult);
                true_deg += (pool[pick].len() - 1) * mult as usize;
            }
            let scale = (next() % 5) as i64 + 1;
            f = f.scale(&Rational::from(BigInt::from(scale)));
            let fac = factor_univariate(&f, "u");
            assert_eq!(fac.expand(), f, "trial {trial} failed to multiply back");
            assert_eq!(f.degree("u") as usize, true_deg);
            for (g, _) in &fac.factors {
                // Each reported factor must itself be irreducible: factoring
                // it again returns it unchanged.
                let sub = factor_univariate(g, "u");
                assert_eq!(sub.factors.len(), 1);
                assert_eq!(sub.factors[0], (g.clone(), 1));
            }
        }
    }

    #[test]
    fn bivariate_split_product() {
        // (u + s)(u - s) = u^2 - s^2.
        let f = MultiPoly::from_int_terms(&["s", "u"], &[(vec![0, 2], 1), (vec![2, 0], -1)]);
        let fac = factor_bivariate(&f, "s", "u");
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn bivariate_irreducible_fast_path() {
        // u^2 - s stays irreducible; specialization at s=2 gives u^2-2.
        let f = MultiPoly::from_int_terms(&["s", "u"], &[(vec![0, 2], 1), (vec![1, 0], -1)]);
        let fac = factor_bivariate(&f, "s", "u");
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0], (f, 1));
    }

    #[test]
    fn bivariate_with_x_content() {
        // s^2 (u+1)(u+s): content in the lifting variable is split off.
        let f = &(&MultiPoly::var("s").pow(2)
            * &MultiPoly::from_int_terms(&["s", "u"], &[(vec![0, 1], 1), (vec![0, 0], 1)]))
            * &MultiPoly::from_int_terms(&["s", "u"], &[(vec![0, 1], 1), (vec![1, 0], 1)]);
        let fac = factor_bivariate(&f, "s", "u");
        assert_eq!(fac.expand(), f);
        let mults: Vec<u32> = fac.factors.iter().map(|(_, m)| *m).collect();
        assert!(mults.contains(&2));
        assert_eq!(fac.factors.len(), 3);
    }

    #[test]
    fn bivariate_nontrivial_lift() {
        // (u^2 + s u + 1)(u^2 - s u + 1): both factors need the series lift
        // because every specialization factors further over Q or stays
        // quadratic.
        let a = MultiPoly::from_int_terms(&["s", "u"], &[(vec![0, 2], 1), (vec![1, 1], 1), (vec![0, 0], 1)]);
        let b = MultiPoly::from_int_terms(&["s", "u"], &[(vec![0, 2], 1), (vec![1, 1], -1), (vec![0, 0], 1)]);
        let f = &a * &b;
        let fac = factor_bivariate(&f, "s", "u");
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn bivariate_lc_vanishing_at_origin() {
        // (s u + 1)(u + s): the leading coefficient in u vanishes at s=0,
        // forcing a shifted specialization.
        let a = MultiPoly::from_int_terms(&["s", "u"], &[(vec![1, 1], 1), (vec![0, 0], 1)]);
        let b = MultiPoly::from_int_terms(&["s", "u"], &[(vec![0, 1], 1), (vec![1, 0], 1)]);
        let f = &a * &b;
        let fac = factor_bivariate(&f, "s", "u");
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn bivariate_random_products_roundtrip() {
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let pool: Vec<MultiPoly> = vec![
            MultiPoly::from_int_terms(&["s", "u"], &[(vec![0, 1], 1), (vec![1, 0], 1)]),
            MultiPoly::from_int_terms(&["s", "u"], &[(vec![0, 1], 1), (vec![1, 0], -1)]),
            MultiPoly::from_int_terms(&["s", "u"], &[(vec![0, 2], 1), (vec![1, 0], -1)]),
            MultiPoly::from_int_terms(&["s", "u"], &[(vec![0, 2], 1), (vec![1, 1], 1), (vec![0, 0], 1)]),
            MultiPoly::from_int_terms(&["s", "u"], &[(vec![0, 1], 1), (vec![2, 0], 1), (vec![0, 0], 2)]),
            MultiPoly::from_int_terms(&["s", "u"], &[(vec![1, 1], 1), (vec![0, 0], 1)]),
        ];
        for trial in 0..40 {
            let mut f = MultiPoly::one();
            for _ in 0..(1 + next() % 3) {
                let pick = (next() % pool.len() as u64) as usize;
                f = &f * &pool[pick];
            }
            let fac = factor_bivariate(&f, "s", "u");
            assert_eq!(fac.expand(), f, "trial {trial} failed to multiply back");
        }
    }
}
