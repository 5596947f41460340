//! A-polynomials of 2-bridge knots by resultant elimination, together with
//! the involution sigma(P)(m,l) = P(1/m, 1/l), balancedness certificates,
//! balanced-irreducibility over Z[m,l] / Z[m²,l], and trace-field degree
//! bounds read off the parabolic slice of the Riley polynomial.
//!
//! Pipeline: the longitude lambda = w̃·w·a^{−2e} is evaluated symbolically as
//! a matrix over Z[s,u] with a monomial s-denominator; reducing mod phi(s,u)
//! leaves it upper triangular, and its (1,1) entry is the longitude
//! eigenvalue l on the meridian's invariant line.  Eliminating u between phi
//! and l·D − Λ, substituting s = m², and stripping content / m-factors /
//! l-factors / repeated factors yields Â; A = (l−1)·Â.

use std::collections::BTreeMap;

use num_traits::One;

use crate::exactalg::multipoly::{Monomial, MultiPoly, Rational};
use crate::exactalg::{
    factor_bivariate, factor_univariate, has_nonreal_root, pseudo_divrem, primitive_part_wrt,
    resultant, squarefree_part_wrt,
};
use crate::twobridge::{
    letter_matrix, riley_polynomial, Gen, Letter, Mat2Poly, RileyPoly, TwoBridgeKnot,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum APolyError {
    /// The reduced longitude matrix was not upper triangular mod phi:
    /// the (2,1) entry did not vanish, so the representation convention broke.
    LongitudeConvention(String),
    /// Elimination returned zero even after squarefree splitting.
    ZeroResultant(String),
    /// A polynomial that must be balanced is not.
    NotBalanced(String),
    /// A polynomial lies outside the stated coefficient ring.
    NotInRing(String),
    /// Operation requires a hyperbolic knot (q ≠ 1).
    NotHyperbolic(String),
}

impl std::fmt::Display for APolyError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            APolyError::LongitudeConvention(s) => {
                write!(f, "longitude matrix not upper triangular mod phi: {s}")
            }
            APolyError::ZeroResultant(s) => write!(f, "elimination resultant vanished: {s}"),
            APolyError::NotBalanced(s) => write!(f, "polynomial is not balanced: {s}"),
            APolyError::NotInRing(s) => write!(f, "polynomial lies outside the ring: {s}"),
            APolyError::NotHyperbolic(s) => write!(f, "operation requires a hyperbolic knot: {s}"),
        }
    }
}

impl std::error::Error for APolyError {}

/// A-polynomial data of one knot.
#[derive(Clone, Debug)]
pub struct APolyReport {
    pub knot: TwoBridgeKnot,
    /// Full A-polynomial: primitive, squarefree, contains the factor l−1.
    pub a: MultiPoly,
    /// Nonabelian part Â = A / (l−1).
    pub ahat: MultiPoly,
    pub m_degree: u32,
    pub l_degree: u32,
    /// (delta, a, b) with sigma(Â) = delta·m^a·l^b·Â as Laurent polynomials.
    pub balanced_cert: (i8, i64, i64),
    /// True when A has integer coefficients and only even m-exponents.
    pub in_z_m2_l: bool,
    /// Â is balanced-irreducible in Z[m²,l].
    pub balanced_irreducible: bool,
}

/// Coefficient rings for balanced-irreducibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    Zml,
    Zm2l,
}

impl std::fmt::Display for Ring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Ring::Zml => write!(f, "Z[m,l]"),
            Ring::Zm2l => write!(f, "Z[m^2,l]"),
        }
    }
}

/// Outcome of a balanced-irreducibility test.
#[derive(Clone, Debug, PartialEq)]
pub enum BalancedFactorization {
    Irreducible,
    /// Both witnesses are balanced, in the ring, nonconstant, and multiply
    /// to the input up to sign.
    Reducible(MultiPoly, MultiPoly),
}

impl BalancedFactorization {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, BalancedFactorization::Irreducible)
    }
}

/// Degrees of the Q-irreducible factors of the parabolic polynomial, with a
/// non-real-root flag each; the trace-field degree is among `candidate_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceFieldReport {
    pub factor_degrees: Vec<(u32, bool)>,
    pub candidate_d: Vec<u32>,
}

/// Pass/fail of the degree bound m_deg(Â), l_deg(Â) ≥ d for each candidate d,
/// plus the unconditional ≥ 2 check.
#[derive(Clone, Debug)]
pub struct DegreeBoundReport {
    pub knot: TwoBridgeKnot,
    pub m_degree: u32,
    pub l_degree: u32,
    pub candidate_d: Vec<u32>,
    pub per_candidate: Vec<(u32, bool)>,
    pub min_two: bool,
    pub all_pass: bool,
}

/// lambda = w̃·w·a^{−2e}: w reversed, then w, then the a-power that kills the
/// total exponent sum 2e of w̃w. Commutes with a in the knot group.
pub fn longitude_word(k: &TwoBridgeKnot) -> Vec<Letter> {
    let w = k.relator_word();
    let e: i32 = w.iter().map(|l| l.exp).sum();
    let mut lambda: Vec<Letter> = w.iter().rev().copied().collect();
    lambda.extend(w.iter().copied());
    if e != 0 {
        lambda.push(Letter { gen: Gen::A, exp: -2 * e });
    }
    lambda
}

/// Pseudo-reduces every entry mod phi (main variable u) and rescales to a
/// common multiplier lc^J; returns the reduced matrix and that multiplier.
fn reduce_matrix_mod(m: &Mat2Poly, phi: &MultiPoly, lc: &MultiPoly) -> (Mat2Poly, MultiPoly) {
    let parts: Vec<(u32, MultiPoly)> = [&m.a, &m.b, &m.c, &m.d]
        .iter()
        .map(|e| {
            let (k, _, r) = pseudo_divrem(e, phi, "u");
            (k, r)
        })
        .collect();
    let j = parts.iter().map(|(k, _)| *k).max().unwrap();
    let mut scaled = parts
        .iter()
        .map(|(k, r)| if j > *k { &lc.pow(j - *k) * r } else { r.clone() });
    let reduced = Mat2Poly {
        a: scaled.next().unwrap(),
        b: scaled.next().unwrap(),
        c: scaled.next().unwrap(),
        d: scaled.next().unwrap(),
    };
    (reduced, lc.pow(j))
}

/// rho(lambda) reduced mod phi: both diagonal entries plus the accumulated
/// scalar denominator (an s-power times lc_u(phi)-powers).
fn longitude_diagonal(rp: &RileyPoly) -> Result<(MultiPoly, MultiPoly, MultiPoly), APolyError> {
    let phi = &rp.phi;
    let dphi = phi.degree("u");
    let lc = phi.leading_coeff_in("u");
    let s = MultiPoly::var("s");
    let mut m = Mat2Poly::identity();
    let mut denom = MultiPoly::one();
    for letter in longitude_word(&rp.knot) {
        let (base, dk) = letter_matrix(Letter { gen: letter.gen, exp: letter.exp.signum() });
        for _ in 0..letter.exp.unsigned_abs() {
            m = m.mul(&base);
            if dk > 0 {
                denom = &denom * &s;
            }
            let top = [&m.a, &m.b, &m.c, &m.d]
                .iter()
                .map(|e| e.degree("u"))
                .max()
                .unwrap();
            if top >= dphi {
                let (red, mult) = reduce_matrix_mod(&m, phi, &lc);
                m = red;
                denom = &denom * &mult;
            }
        }
    }
    if !m.c.is_zero() {
        return Err(APolyError::LongitudeConvention(format!(
            "{}: residual (2,1) entry has {} terms",
            rp.knot,
            m.c.num_terms()
        )));
    }
    debug_assert!(m.a.degree("u") < dphi);
    Ok((m.a, m.d, denom))
}

/// Divides the pair by their common s-power and scales the denominator to be
/// integer-primitive with positive sign; for Riley inputs it comes out a
/// monic s-power.
fn normalize_eigenvalue_pair(lambda: &MultiPoly, denom: &MultiPoly) -> (MultiPoly, MultiPoly) {
    let s_min = |p: &MultiPoly| -> u32 {
        match p.vars().iter().position(|v| v == "s") {
            Some(idx) => p.terms().map(|(mo, _)| mo.0[idx]).min().unwrap_or(0),
            None => 0,
        }
    };
    let g = s_min(lambda).min(s_min(denom));
    let (mut lam, mut den) = (lambda.clone(), denom.clone());
    if g > 0 {
        let sg = MultiPoly::var("s").pow(g);
        lam = lam.try_div_exact(&sg).expect("common s-power divides");
        den = den.try_div_exact(&sg).expect("common s-power divides");
    }
    // den = c·primitive; rescale the pair by 1/c so den is primitive with
    // positive sign
    let (c, den_prim) = den.content_primitive();
    (lam.scale(&(Rational::one() / c)), den_prim)
}

/// Longitude eigenvalue on the meridian's invariant line: numerator Λ(s,u)
/// and denominator (a monic s-power for Riley polynomials).
pub fn longitude_eigenvalue(rp: &RileyPoly) -> Result<(MultiPoly, MultiPoly), APolyError> {
    let (l11, _, denom) = longitude_diagonal(rp)?;
    Ok(normalize_eigenvalue_pair(&l11, &denom))
}

/// Res_u(phi, l·D − Λ) with a defensive squarefree retry.
fn eliminate(phi: &MultiPoly, lam: &MultiPoly, den: &MultiPoly, who: &str) -> Result<MultiPoly, APolyError> {
    let eliminant = &(&MultiPoly::var("l") * den) - lam;
    let e = resultant(phi, &eliminant, "u");
    if !e.is_zero() {
        return Ok(e);
    }
    let sf = squarefree_part_wrt(phi, "u");
    let e = resultant(&sf, &eliminant, "u");
    if e.is_zero() {
        return Err(APolyError::ZeroResultant(who.to_string()));
    }
    Ok(e)
}

/// Shared cleanup: substitute s = m², strip content, m-factors, l-factors,
/// and repeated factors; sign-normalized integer-primitive output.
fn cleanup_to_ahat(e_sl: &MultiPoly) -> MultiPoly {
    let mut p = e_sl.subst_var_pow("s", "m", 2).content_primitive().1;
    p = primitive_part_wrt(&p, "l");
    p = primitive_part_wrt(&p, "m");
    p = squarefree_part_wrt(&p, "l");
    p = primitive_part_wrt(&p, "l");
    p = primitive_part_wrt(&p, "m");
    p.content_primitive().1
}

/// A and Â only (no factorization work); Â from the (1,1) eigenvalue.
pub fn a_polynomial_core(k: &TwoBridgeKnot) -> Result<(MultiPoly, MultiPoly), APolyError> {
    let rp = riley_polynomial(k);
    let (lam, den) = longitude_eigenvalue(&rp)?;
    let e = eliminate(&rp.phi, &lam, &den, &k.to_string())?;
    let ahat = cleanup_to_ahat(&e);
    let l_minus_1 = &MultiPoly::var("l") - &MultiPoly::one();
    let a = (&ahat * &l_minus_1).content_primitive().1;
    Ok((a, ahat))
}

/// Â computed from the complementary eigenline: the l → 1/l orientation,
/// i.e. the A-polynomial of the mirror.
pub fn a_polynomial_mirror(k: &TwoBridgeKnot) -> Result<MultiPoly, APolyError> {
    let rp = riley_polynomial(k);
    let (_, l22, denom) = longitude_diagonal(&rp)?;
    let (lam, den) = normalize_eigenvalue_pair(&l22, &denom);
    let e = eliminate(&rp.phi, &lam, &den, &k.to_string())?;
    Ok(cleanup_to_ahat(&e))
}

fn coeffs_integral(p: &MultiPoly) -> bool {
    p.terms().all(|(_, c)| c.denom().is_one())
}

fn m_exponents_even(p: &MultiPoly) -> bool {
    match p.vars().iter().position(|v| v == "m") {
        None => true,
        Some(idx) => p.terms().all(|(mo, _)| mo.0[idx] % 2 == 0),
    }
}

fn in_ring(p: &MultiPoly, ring: Ring) -> bool {
    coeffs_integral(p)
        && match ring {
            Ring::Zml => true,
            Ring::Zm2l => m_exponents_even(p),
        }
}

/// Full A-polynomial report; populates every field.
pub fn a_polynomial(k: &TwoBridgeKnot) -> Result<APolyReport, APolyError> {
    let (a, ahat) = a_polynomial_core(k)?;
    let balanced_cert = balanced_check(&ahat)
        .ok_or_else(|| APolyError::NotBalanced(format!("Ahat of {k}")))?;
    let in_z_m2_l = in_ring(&a, Ring::Zm2l);
    let balanced_irreducible = if in_ring(&ahat, Ring::Zm2l) {
        is_balanced_irreducible(&ahat, Ring::Zm2l)?.is_irreducible()
    } else {
        false
    };
    Ok(APolyReport {
        knot: *k,
        m_degree: ahat.degree("m"),
        l_degree: ahat.degree("l"),
        a,
        ahat,
        balanced_cert,
        in_z_m2_l,
        balanced_irreducible,
    })
}

/// sigma(P) = P(1/m, 1/l) cleared by the minimal monomial: the exponents of
/// m and l are reversed within their degree windows.
pub fn sigma_action(p: &MultiPoly) -> MultiPoly {
    let vars: Vec<&str> = p.vars().iter().map(|v| v.as_str()).collect();
    let degs: Vec<u32> = vars
        .iter()
        .map(|v| if *v == "m" || *v == "l" { p.degree(v) } else { 0 })
        .collect();
    let terms: Vec<(Vec<u32>, Rational)> = p
        .terms()
        .map(|(mo, c)| {
            let e = mo
                .0
                .iter()
                .zip(vars.iter())
                .zip(degs.iter())
                .map(|((&e, v), &d)| if *v == "m" || *v == "l" { d - e } else { e })
                .collect();
            (e, c.clone())
        })
        .collect();
    MultiPoly::from_terms(&vars, &terms)
}

/// Finds (delta, a, b) with P(1/m, 1/l) = delta·m^a·l^b·P(m,l) as Laurent
/// polynomials, or None if P is not balanced.
pub fn balanced_check(p: &MultiPoly) -> Option<(i8, i64, i64)> {
    if p.is_zero() {
        return None;
    }
    let vars = p.vars();
    let window = |name: &str| -> Option<(usize, u32)> {
        let idx = vars.iter().position(|v| v == name)?;
        let max = p.terms().map(|(mo, _)| mo.0[idx]).max().unwrap();
        let min = p.terms().map(|(mo, _)| mo.0[idx]).min().unwrap();
        Some((idx, max + min))
    };
    let wm = window("m");
    let wl = window("l");
    let mut reversed: BTreeMap<Monomial, Rational> = BTreeMap::new();
    for (mo, c) in p.terms() {
        let mut e = mo.0.clone();
        if let Some((i, v)) = wm {
            e[i] = v - e[i];
        }
        if let Some((i, v)) = wl {
            e[i] = v - e[i];
        }
        reversed.insert(Monomial(e), c.clone());
    }
    let orig: BTreeMap<Monomial, Rational> =
        p.terms().map(|(mo, c)| (mo.clone(), c.clone())).collect();
    let delta = if reversed == orig {
        1i8
    } else {
        let negated: BTreeMap<Monomial, Rational> =
            orig.iter().map(|(mo, c)| (mo.clone(), -c)).collect();
        if reversed == negated {
            -1i8
        } else {
            return None;
        }
    };
    let a = -i64::from(wm.map(|(_, v)| v).unwrap_or(0));
    let b = -i64::from(wl.map(|(_, v)| v).unwrap_or(0));
    Some((delta, a, b))
}

/// Tests whether P factors as a product of two nonconstant balanced
/// polynomials lying in `ring`; P itself must be balanced and in `ring`.
pub fn is_balanced_irreducible(
    p: &MultiPoly,
    ring: Ring,
) -> Result<BalancedFactorization, APolyError> {
    if balanced_check(p).is_none() {
        return Err(APolyError::NotBalanced(p.to_string()));
    }
    if !in_ring(p, ring) {
        return Err(APolyError::NotInRing(format!("{p} not in {ring}")));
    }
    let fac = factor_bivariate(p, "m", "l");
    let mut flat: Vec<MultiPoly> = Vec::new();
    for (f, mult) in &fac.factors {
        for _ in 0..*mult {
            flat.push(f.clone());
        }
    }
    let n = flat.len();
    if n <= 1 {
        return Ok(BalancedFactorization::Irreducible);
    }
    // subsets ordered by size then index pattern, so witnesses are stable
    let mut masks: Vec<u32> = (1..(1u32 << n) - 1).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        let mut side = MultiPoly::one();
        let mut rest = MultiPoly::one();
        for (i, f) in flat.iter().enumerate() {
            if mask & (1 << i) != 0 {
                side = &side * f;
            } else {
                rest = &rest * f;
            }
        }
        let side = side.content_primitive().1;
        let rest = rest.content_primitive().1;
        if side.is_constant() || rest.is_constant() {
            continue;
        }
        if balanced_check(&side).is_some()
            && balanced_check(&rest).is_some()
            && in_ring(&side, ring)
            && in_ring(&rest, ring)
        {
            return Ok(BalancedFactorization::Reducible(side, rest));
        }
    }
    Ok(BalancedFactorization::Irreducible)
}

/// Degrees of Q-irreducible factors of phi(1,u) with non-real-root flags;
/// the trace-field degree is one of the flagged degrees.
pub fn trace_field_degrees(k: &TwoBridgeKnot) -> Result<TraceFieldReport, APolyError> {
    if !k.is_hyperbolic() {
        return Err(APolyError::NotHyperbolic(k.to_string()));
    }
    let par = crate::twobridge::parabolic_polynomial(k);
    let fac = factor_univariate(&par, "u");
    let mut factor_degrees = Vec::new();
    let mut candidates = Vec::new();
    let mut total = 0u64;
    for (f, mult) in &fac.factors {
        let deg = f.degree("u");
        let nonreal = has_nonreal_root(f, "u");
        factor_degrees.push((deg, nonreal));
        if nonreal {
            candidates.push(deg);
        }
        total += u64::from(deg) * u64::from(*mult);
    }
    assert_eq!(total, (k.p() - 1) / 2, "parabolic degree mismatch for {k}");
    candidates.sort_unstable();
    candidates.dedup();
    Ok(TraceFieldReport { factor_degrees, candidate_d: candidates })
}

/// Checks m_deg(Â) ≥ d and l_deg(Â) ≥ d for every candidate trace-field
/// degree d, plus the unconditional ≥ 2 bound.
pub fn degree_bound_check(k: &TwoBridgeKnot) -> Result<DegreeBoundReport, APolyError> {
    if !k.is_hyperbolic() {
        return Err(APolyError::NotHyperbolic(k.to_string()));
    }
    let (_, ahat) = a_polynomial_core(k)?;
    let tf = trace_field_degrees(k)?;
    let m_degree = ahat.degree("m");
    let l_degree = ahat.degree("l");
    let per_candidate: Vec<(u32, bool)> = tf
        .candidate_d
        .iter()
        .map(|&d| (d, m_degree >= d && l_degree >= d))
        .collect();
    let min_two = m_degree >= 2 && l_degree >= 2;
    let all_pass = min_two && per_candidate.iter().all(|(_, ok)| *ok);
    Ok(DegreeBoundReport {
        knot: *k,
        m_degree,
        l_degree,
        candidate_d: tf.candidate_d,
        per_candidate,
        min_two,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::resultant_sylvester;
    use crate::numeric::{roots, ComplexDD};
    use crate::twobridge::{knots_up_to, verify_representation, word_matrix, word_matrix_numeric};
    use num_traits::Zero;

    fn knot(p: i64, q: i64) -> TwoBridgeKnot {
        TwoBridgeKnot::new(p, q).unwrap()
    }

    fn mp(vars: &[&str], terms: &[(Vec<u32>, i64)]) -> MultiPoly {
        MultiPoly::from_int_terms(vars, terms)
    }

    #[test]
    fn longitude_word_shape() {
        // b(3,1): w = ab, e = 2, lambda = b a a b a^{-4}
        let lam = longitude_word(&knot(3, 1));
        let expect = [
            (Gen::B, 1),
            (Gen::A, 1),
            (Gen::A, 1),
            (Gen::B, 1),
            (Gen::A, -4),
        ];
        assert_eq!(lam.len(), 5);
        for (l, (g, e)) in lam.iter().zip(expect.iter()) {
            assert_eq!((l.gen, l.exp), (*g, *e));
        }
        // b(5,3): e = 0, no correction needed
        let lam = longitude_word(&knot(5, 3));
        assert_eq!(lam.len(), 8);
        let total: i32 = lam.iter().map(|l| l.exp).sum();
        assert_eq!(total, 0);
    }

    #[test]
    fn longitude_is_nullhomologous() {
        // u = 0 collapses every letter matrix to upper triangular form with
        // s-power diagonal; the (1,1) entry must equal the denominator s^k
        for k in knots_up_to(13) {
            let lam = longitude_word(&k);
            let total: i32 = lam.iter().map(|l| l.exp).sum();
            assert_eq!(total, 0, "{k}");
            let (n, kpow) = word_matrix(&lam);
            let at0 = |p: &MultiPoly| p.subst_rational("u", &Rational::zero());
            assert!(at0(&n.c).is_zero(), "{k}");
            assert_eq!(at0(&n.a), MultiPoly::var("s").pow(kpow), "{k}");
        }
    }

    #[test]
    fn longitude_eigenvalue_trefoil_frozen() {
        // by hand: reducing rho(lambda) mod phi = s²−su−s+1 leaves
        // Lambda/D = −1/s³, the classical l = −m^{−6}
        let rp = riley_polynomial(&knot(3, 1));
        let (lam, den) = longitude_eigenvalue(&rp).unwrap();
        assert_eq!(lam, MultiPoly::from_int(-1));
        assert_eq!(den, MultiPoly::var("s").pow(3));
    }

    #[test]
    fn longitude_eigenvalue_shape_sweep() {
        for k in knots_up_to(13) {
            let rp = riley_polynomial(&k);
            let (lam, den) = longitude_eigenvalue(&rp).unwrap();
            // denominator is a monic s-power
            assert_eq!(den.num_terms(), 1, "{k}");
            assert_eq!(den.leading_coeff(), Rational::one(), "{k}");
            assert!(den.vars().iter().all(|v| v == "s"), "{k}");
            // numerator is reduced below deg_u(phi)
            assert!(lam.degree("u") < rp.phi.degree("u"), "{k}");
        }
    }

    #[test]
    fn longitude_commutes_with_meridian_numerically() {
        let mut checked = 0usize;
        for (p, q) in [(3, 1), (5, 3), (7, 3), (9, 5)] {
            let k = knot(p, q);
            let phi = riley_polynomial(&k).phi;
            let lam = longitude_word(&k);
            let spec = phi.subst_rational("s", &Rational::new(5.into(), 4.into()));
            let s0 = ComplexDD::new(1.25, 0.0);
            for u0 in roots(&spec.as_univariate("u").unwrap()) {
                let (ok, res) = verify_representation(&k, s0, u0, 1e-9);
                assert!(ok, "rep residual {res}");
                let lm = word_matrix_numeric(&lam, s0, u0);
                let am = word_matrix_numeric(&[Letter { gen: Gen::A, exp: 1 }], s0, u0);
                let comm = lm.mul(&am).sub(&am.mul(&lm)).max_norm();
                assert!(comm < 1e-9, "b({p},{q}) commutator {comm}");
                checked += 1;
            }
        }
        assert!(checked >= 10);
    }

    #[test]
    fn trefoil_apoly_frozen() {
        let r = a_polynomial(&knot(3, 1)).unwrap();
        let ahat = mp(&["m", "l"], &[(vec![6, 1], 1), (vec![0, 0], 1)]);
        assert_eq!(r.ahat, ahat);
        let lm1 = &MultiPoly::var("l") - &MultiPoly::one();
        assert_eq!(r.a, (&ahat * &lm1).content_primitive().1);
        assert_eq!((r.m_degree, r.l_degree), (6, 1));
        assert_eq!(r.balanced_cert, (1, -6, -1));
        assert!(r.in_z_m2_l);
        assert!(r.balanced_irreducible);
    }

    #[test]
    fn figure8_apoly_frozen() {
        let r = a_polynomial(&knot(5, 3)).unwrap();
        let ahat = mp(
            &["m", "l"],
            &[
                (vec![8, 1], 1),
                (vec![6, 1], -1),
                (vec![4, 1], -2),
                (vec![2, 1], -1),
                (vec![0, 1], 1),
                (vec![4, 2], -1),
                (vec![4, 0], -1),
            ],
        );
        assert_eq!(r.ahat, ahat);
        assert_eq!((r.m_degree, r.l_degree), (8, 2));
        assert_eq!(r.balanced_cert, (1, -8, -2));
        assert!(r.in_z_m2_l);
        assert!(r.balanced_irreducible);
        // A = (l−1)·Â exactly
        assert_eq!(
            r.a.try_div_exact(&(&MultiPoly::var("l") - &MultiPoly::one())).unwrap(),
            r.ahat
        );
    }

    #[test]
    fn sylvester_elimination_oracle_agrees() {
        // same Â through the independent Sylvester/Bareiss resultant
        for (p, q) in [(3, 1), (5, 3), (7, 3)] {
            let k = knot(p, q);
            let rp = riley_polynomial(&k);
            let (lam, den) = longitude_eigenvalue(&rp).unwrap();
            let eliminant = &(&MultiPoly::var("l") * &den) - &lam;
            let e = resultant_sylvester(&rp.phi, &eliminant, "u");
            let ahat = cleanup_to_ahat(&e);
            let (_, expected) = a_polynomial_core(&k).unwrap();
            assert_eq!(ahat, expected, "b({p},{q})");
        }
    }

    #[test]
    fn five_two_knot_degrees() {
        // b(7,3) is the 5_2 knot: classical degrees (m,l) = (14,3)
        let r = a_polynomial(&knot(7, 3)).unwrap();
        assert_eq!((r.m_degree, r.l_degree), (14, 3));
        assert!(r.in_z_m2_l);
        assert!(r.balanced_irreducible);
    }

    #[test]
    fn sigma_involution_and_examples() {
        let p = mp(&["m", "l"], &[(vec![2, 1], 1), (vec![0, 0], 1)]);
        assert_eq!(sigma_action(&p), p, "m²l+1 is self-reversed");
        let q = mp(&["m", "l"], &[(vec![1, 0], 1), (vec![0, 1], 1)]);
        assert_eq!(sigma_action(&q), q, "m+l maps to l+m");
        for poly in [
            mp(&["m", "l"], &[(vec![1, 0], 1), (vec![0, 1], 1), (vec![0, 0], 1)]),
            mp(&["m", "l"], &[(vec![3, 2], 1), (vec![1, 1], -2), (vec![0, 0], 7)]),
            a_polynomial(&knot(5, 3)).unwrap().ahat,
        ] {
            assert_eq!(sigma_action(&sigma_action(&poly)), poly);
        }
    }

    #[test]
    fn balanced_check_cases() {
        let lm1 = &MultiPoly::var("l") - &MultiPoly::one();
        assert_eq!(balanced_check(&lm1), Some((-1, 0, -1)));
        let p = mp(&["m", "l"], &[(vec![2, 1], 1), (vec![0, 0], 1)]);
        assert_eq!(balanced_check(&p), Some((1, -2, -1)));
        let q = mp(&["m", "l"], &[(vec![1, 0], 1), (vec![0, 1], 1)]);
        assert_eq!(balanced_check(&q), Some((1, -1, -1)));
        let r = mp(&["m", "l"], &[(vec![1, 0], 1), (vec![0, 1], 1), (vec![0, 0], 1)]);
        assert_eq!(balanced_check(&r), None);
        // products of balanced polynomials stay balanced
        let a = a_polynomial(&knot(5, 3)).unwrap().a;
        assert!(balanced_check(&a).is_some());
    }

    #[test]
    fn balanced_irreducibility_cases() {
        let fig8 = a_polynomial(&knot(5, 3)).unwrap();
        // (l−1)·Â splits into balanced factors, witnessed smallest-first
        match is_balanced_irreducible(&fig8.a, Ring::Zm2l).unwrap() {
            BalancedFactorization::Reducible(s, r) => {
                assert_eq!(s, &MultiPoly::var("l") - &MultiPoly::one());
                assert_eq!(r, fig8.ahat);
            }
            BalancedFactorization::Irreducible => panic!("A must split off l−1"),
        }
        assert!(is_balanced_irreducible(&fig8.ahat, Ring::Zm2l).unwrap().is_irreducible());
        let p = mp(&["m", "l"], &[(vec![2, 1], 1), (vec![0, 0], 1)]);
        assert!(is_balanced_irreducible(&p, Ring::Zm2l).unwrap().is_irreducible());
        // m²l²−1 = (ml−1)(ml+1): both factors balanced in Z[m,l] but odd in m
        let sq = mp(&["m", "l"], &[(vec![2, 2], 1), (vec![0, 0], -1)]);
        match is_balanced_irreducible(&sq, Ring::Zml).unwrap() {
            BalancedFactorization::Reducible(s, r) => {
                assert_eq!(&s * &r, sq);
                assert_eq!(s.degree("m"), 1);
            }
            BalancedFactorization::Irreducible => panic!("reducible in Z[m,l]"),
        }
        assert!(is_balanced_irreducible(&sq, Ring::Zm2l).unwrap().is_irreducible());
        // precondition errors
        let nb = mp(&["m", "l"], &[(vec![1, 0], 1), (vec![0, 1], 1), (vec![0, 0], 1)]);
        assert!(matches!(
            is_balanced_irreducible(&nb, Ring::Zml),
            Err(APolyError::NotBalanced(_))
        ));
        let odd = mp(&["m", "l"], &[(vec![1, 1], 1), (vec![0, 0], 1)]);
        assert!(matches!(
            is_balanced_irreducible(&odd, Ring::Zm2l),
            Err(APolyError::NotInRing(_))
        ));
    }

    #[test]
    fn trace_field_cases() {
        let tf = trace_field_degrees(&knot(5, 3)).unwrap();
        assert_eq!(tf.candidate_d, vec![2]);
        assert_eq!(tf.factor_degrees, vec![(2, true)]);
        let tf = trace_field_degrees(&knot(7, 3)).unwrap();
        assert_eq!(tf.candidate_d, vec![3]);
        assert!(matches!(
            trace_field_degrees(&knot(5, 1)),
            Err(APolyError::NotHyperbolic(_))
        ));
        for k in knots_up_to(13) {
            if !k.is_hyperbolic() {
                continue;
            }
            let tf = trace_field_degrees(&k).unwrap();
            assert!(!tf.candidate_d.is_empty(), "{k} needs a non-real candidate");
        }
    }

    #[test]
    fn degree_bounds_hold() {
        let r = degree_bound_check(&knot(5, 3)).unwrap();
        assert_eq!((r.m_degree, r.l_degree), (8, 2));
        assert!(r.min_two && r.all_pass);
        assert_eq!(r.per_candidate, vec![(2, true)]);
        let r = degree_bound_check(&knot(7, 3)).unwrap();
        assert!(r.l_degree >= 3 && r.all_pass);
        assert!(matches!(
            degree_bound_check(&knot(7, 1)),
            Err(APolyError::NotHyperbolic(_))
        ));
    }

    #[test]
    fn epsilon1_action_fixes_a() {
        // m → −m leaves A unchanged: A lives in Z[m²,l]
        let neg_m = -&MultiPoly::var("m");
        for (p, q) in [(5, 3), (7, 3)] {
            let a = a_polynomial(&knot(p, q)).unwrap().a;
            assert_eq!(a.subst_poly("m", &neg_m), a, "b({p},{q})");
        }
    }

    #[test]
    fn mirror_inverts_l() {
        for (p, q) in [(3, 1), (5, 3), (7, 3)] {
            let k = knot(p, q);
            let (_, ahat) = a_polynomial_core(&k).unwrap();
            let mirror = a_polynomial_mirror(&k).unwrap();
            // reverse l-exponents of Â and renormalize
            let vars: Vec<&str> = ahat.vars().iter().map(|v| v.as_str()).collect();
            let li = vars.iter().position(|v| *v == "l").unwrap();
            let dl = ahat.degree("l");
            let terms: Vec<(Vec<u32>, Rational)> = ahat
                .terms()
                .map(|(mo, c)| {
                    let mut e = mo.0.clone();
                    e[li] = dl - e[li];
                    (e, c.clone())
                })
                .collect();
            let reversed = MultiPoly::from_terms(&vars, &terms).content_primitive().1;
            assert_eq!(mirror, reversed, "b({p},{q})");
        }
    }

    #[test]
    fn torus_knots_have_apolys_too() {
        // q = 1 inputs are valid for a_polynomial (only the trace-field and
        // degree-bound checks require hyperbolicity)
        let r = a_polynomial(&knot(5, 1)).unwrap();
        assert!(r.l_degree >= 1 && r.m_degree >= 1);
        assert!(balanced_check(&r.ahat).is_some());
    }

    #[test]
    fn eigenvalue_data_is_integral() {
        for (p, q) in [(3, 1), (5, 3), (7, 3), (9, 5)] {
            let rp = riley_polynomial(&knot(p, q));
            let (lam, den) = longitude_eigenvalue(&rp).unwrap();
            assert!(coeffs_integral(&lam), "b({p},{q})");
            assert!(coeffs_integral(&den), "b({p},{q})");
        }
    }
}
