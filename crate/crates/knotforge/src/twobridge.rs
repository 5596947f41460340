//! Two-bridge knots b(p,q), their group presentations, and Riley polynomials.
//!
//! The knot group of b(p,q) is generated by two meridians a, b with the single
//! relation w·a = b·w, where w = a^{e1} b^{e2} a^{e3} ⋯ (p−1 alternating
//! letters) and e_i = (−1)^⌊iq/p⌋.  Nonabelian SL2 representations are
//! parametrized by (s, u) through the matrices
//!
//!   rho(a) = [[s, 1], [0, 1]],   rho(b) = [[s, 0], [−s·u, 1]],
//!
//! and the Riley polynomial phi(s,u) = W11 + (1−s)·W12 (W = rho(w)) cuts out
//! exactly the parameter pairs where the relator holds.  `verify_representation`
//! is the numeric oracle for that convention.

use num_traits::One;

use crate::exactalg::multipoly::{MultiPoly, Rational};
use crate::numeric::{ComplexDD, Mat2DD};

/// Rejection reasons for (p,q) pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoBridgeError {
    /// p must be odd (even p gives a two-component link, not a knot).
    EvenP(i64),
    /// gcd(p,q) must be 1.
    NotCoprime(i64, i64),
    /// p < 3, or q has no odd representative in [1, p−2] mod p.
    OutOfRange(i64, i64),
}

impl std::fmt::Display for TwoBridgeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TwoBridgeError::EvenP(p) => write!(f, "b({p},_): p must be odd"),
            TwoBridgeError::NotCoprime(p, q) => write!(f, "b({p},{q}): p and q must be coprime"),
            TwoBridgeError::OutOfRange(p, q) => write!(
                f,
                "b({p},{q}): q has no odd representative in [1, {}]",
                p - 2
            ),
        }
    }
}

impl std::error::Error for TwoBridgeError {}

/// Generator of the 2-bridge knot group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    A,
    B,
}

/// One syllable g^exp of a word in the knot group; exp is any nonzero integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Gen,
    pub exp: i32,
}

/// The knot b(p,q): p odd ≥ 3, q odd, 1 ≤ q ≤ p−2, gcd(p,q) = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoBridgeKnot {
    p: u64,
    q: u64,
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl TwoBridgeKnot {
    /// Reduces q mod p into the window [1, p−2] and validates the pair.
    /// The boolean reports whether the input was already in canonical form.
    /// The even residue p−q is never substituted: that is the mirror knot.
    pub fn normalize(p: i64, q: i64) -> Result<(Self, bool), TwoBridgeError> {
        if p >= 2 && p % 2 == 0 {
            return Err(TwoBridgeError::EvenP(p));
        }
        if p < 3 {
            return Err(TwoBridgeError::OutOfRange(p, q));
        }
        if gcd_i64(p, q) != 1 {
            return Err(TwoBridgeError::NotCoprime(p, q));
        }
        let r = q.rem_euclid(p);
        if r % 2 == 0 {
            return Err(TwoBridgeError::OutOfRange(p, q));
        }
        let knot = TwoBridgeKnot { p: p as u64, q: r as u64 };
        Ok((knot, q == r))
    }

    /// `normalize` without the canonical-input flag.
    pub fn new(p: i64, q: i64) -> Result<Self, TwoBridgeError> {
        Ok(Self::normalize(p, q)?.0)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// b(p,q) is hyperbolic iff q ≠ 1.
    pub fn is_hyperbolic(&self) -> bool {
        self.q != 1
    }

    /// b(p,1) is the (2,p) torus knot.
    pub fn is_torus(&self) -> bool {
        self.q == 1
    }

    /// Same knot type iff p matches and q' ≡ q^{±1} (mod p).
    pub fn is_equivalent_to(&self, other: &TwoBridgeKnot) -> bool {
        if self.p != other.p {
            return false;
        }
        let p = self.p;
        other.q == self.q || (self.q * other.q) % p == 1
    }

    /// Signs e_i = (−1)^⌊iq/p⌋ for i = 1..p−1; palindromic since q is odd.
    pub fn epsilon_sequence(&self) -> Vec<i8> {
        (1..self.p)
            .map(|i| if (i * self.q / self.p) % 2 == 0 { 1 } else { -1 })
            .collect()
    }

    /// The relator word w = a^{e1} b^{e2} a^{e3} ⋯ (p−1 letters).
    pub fn relator_word(&self) -> Vec<Letter> {
        self.epsilon_sequence()
            .iter()
            .enumerate()
            .map(|(i, &e)| Letter {
                gen: if i % 2 == 0 { Gen::A } else { Gen::B },
                exp: e as i32,
            })
            .collect()
    }
}

impl std::fmt::Display for TwoBridgeKnot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "b({},{})", self.p, self.q)
    }
}

/// 2×2 matrix over Q[s,u]; words evaluate to such a matrix divided by s^k.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2Poly {
    pub a: MultiPoly,
    pub b: MultiPoly,
    pub c: MultiPoly,
    pub d: MultiPoly,
}

impl Mat2Poly {
    pub fn identity() -> Self {
        Mat2Poly {
            a: MultiPoly::one(),
            b: MultiPoly::zero(),
            c: MultiPoly::zero(),
            d: MultiPoly::one(),
        }
    }

    pub fn mul(&self, o: &Mat2Poly) -> Mat2Poly {
        Mat2Poly {
            a: &(&self.a * &o.a) + &(&self.b * &o.c),
            b: &(&self.a * &o.b) + &(&self.b * &o.d),
            c: &(&self.c * &o.a) + &(&self.d * &o.c),
            d: &(&self.c * &o.b) + &(&self.d * &o.d),
        }
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Mat2Poly {
        Mat2Poly { a: f(&self.a), b: f(&self.b), c: f(&self.c), d: f(&self.d) }
    }
}

/// Matrix of one letter as (numerator over Z[s,u], power of the denominator s^k).
/// Inverses carry denominator s: rho(a)^{-1} = [[1,−1],[0,s]]/s, and likewise b.
pub fn letter_matrix(letter: Letter) -> (Mat2Poly, u32) {
    let s = MultiPoly::var("s");
    let su = &s * &MultiPoly::var("u");
    let one = MultiPoly::one();
    let zero = MultiPoly::zero();
    match (letter.gen, letter.exp.signum()) {
        (Gen::A, 1) => (
            Mat2Poly { a: s, b: one, c: zero, d: MultiPoly::one() },
            0,
        ),
        (Gen::A, -1) => (
            Mat2Poly { a: one, b: -&MultiPoly::one(), c: zero, d: s },
            1,
        ),
        (Gen::B, 1) => (
            Mat2Poly { a: s, b: zero, c: -&su, d: one },
            0,
        ),
        (Gen::B, -1) => (
            Mat2Poly { a: one, b: zero, c: su, d: s },
            1,
        ),
        _ => panic!("letter with zero exponent"),
    }
}

/// Exact product rho(word) = (matrix, k) with entries in Z[s,u], denominator s^k.
pub fn word_matrix(word: &[Letter]) -> (Mat2Poly, u32) {
    let mut m = Mat2Poly::identity();
    let mut k = 0u32;
    for letter in word {
        let (base, dk) = letter_matrix(*letter);
        for _ in 0..letter.exp.unsigned_abs() {
            m = m.mul(&base);
            k += dk;
        }
    }
    (m, k)
}

/// Riley polynomial phi(s,u) together with its knot.
#[derive(Clone, Debug)]
pub struct RileyPoly {
    pub phi: MultiPoly,
    pub knot: TwoBridgeKnot,
}

/// Strips any monomial factor s^j (the denominator bookkeeping can leave one).
fn strip_s_content(p: &MultiPoly) -> MultiPoly {
    let pos = p.vars().iter().position(|v| v == "s");
    let Some(idx) = pos else { return p.clone() };
    let min_e = p.terms().map(|(m, _)| m.0[idx]).min().unwrap_or(0);
    if min_e == 0 {
        return p.clone();
    }
    let s_pow = MultiPoly::var("s").pow(min_e);
    p.try_div_exact(&s_pow).expect("monomial content division is exact")
}

/// phi(s,u) = W11 + (1−s)·W12, integer-primitive with positive leading sign.
pub fn riley_polynomial(k: &TwoBridgeKnot) -> RileyPoly {
    let (w, _) = word_matrix(&k.relator_word());
    let one_minus_s = &MultiPoly::one() - &MultiPoly::var("s");
    let raw = &w.a + &(&one_minus_s * &w.b);
    let phi = strip_s_content(&raw).content_primitive().1;
    assert_eq!(
        u64::from(phi.degree("u")),
        (k.p() - 1) / 2,
        "riley polynomial of {k} has wrong u-degree"
    );
    RileyPoly { phi, knot: *k }
}

/// phi(1,u): the parabolic slice, which carries the trace field.
pub fn parabolic_polynomial(k: &TwoBridgeKnot) -> MultiPoly {
    riley_polynomial(k).phi.subst_rational("s", &Rational::one()).content_primitive().1
}

/// phi(−1,u): the trace-zero (binary dihedral) slice; squarefree of degree (p−1)/2.
pub fn dihedral_locus(k: &TwoBridgeKnot) -> MultiPoly {
    riley_polynomial(k)
        .phi
        .subst_rational("s", &-Rational::one())
        .content_primitive()
        .1
}

/// s → 1/s cleared by s^{deg_s}: the Riley polynomial is fixed by this up to sign.
pub fn s_inversion(p: &MultiPoly) -> MultiPoly {
    let pos = p.vars().iter().position(|v| v == "s");
    let Some(idx) = pos else { return p.clone() };
    let deg = p.degree("s");
    let vars: Vec<&str> = p.vars().iter().map(|v| v.as_str()).collect();
    let terms: Vec<(Vec<u32>, Rational)> = p
        .terms()
        .map(|(m, c)| {
            let mut e = m.0.clone();
            e[idx] = deg - e[idx];
            (e, c.clone())
        })
        .collect();
    MultiPoly::from_terms(&vars, &terms)
}

fn mat2_numeric(letter: Letter, s0: ComplexDD, u0: ComplexDD) -> Mat2DD {
    let one = ComplexDD::ONE;
    let zero = ComplexDD::ZERO;
    let base = match letter.gen {
        Gen::A => Mat2DD { a: s0, b: one, c: zero, d: one },
        Gen::B => Mat2DD { a: s0, b: zero, c: s0.mul(u0).neg(), d: one },
    };
    if letter.exp > 0 {
        base
    } else {
        // inverse of [[a,b],[c,d]] is [[d,−b],[−c,a]]/det
        let det = base.a.mul(base.d).sub(base.b.mul(base.c));
        Mat2DD {
            a: base.d.div(det),
            b: base.b.neg().div(det),
            c: base.c.neg().div(det),
            d: base.a.div(det),
        }
    }
}

/// Numeric product of a word at (s0, u0).
pub fn word_matrix_numeric(word: &[Letter], s0: ComplexDD, u0: ComplexDD) -> Mat2DD {
    let mut m = Mat2DD::identity();
    for letter in word {
        let base = mat2_numeric(*letter, s0, u0);
        for _ in 0..letter.exp.unsigned_abs() {
            m = m.mul(&base);
        }
    }
    m
}

/// Checks the relator wa = bw numerically at (s0, u0); returns (pass, residual).
/// This is the convention oracle: any root of phi must pass at tol = 1e-9.
pub fn verify_representation(
    k: &TwoBridgeKnot,
    s0: ComplexDD,
    u0: ComplexDD,
    tol: f64,
) -> (bool, f64) {
    let w = word_matrix_numeric(&k.relator_word(), s0, u0);
    let a = mat2_numeric(Letter { gen: Gen::A, exp: 1 }, s0, u0);
    let b = mat2_numeric(Letter { gen: Gen::B, exp: 1 }, s0, u0);
    let residual = w.mul(&a).sub(&b.mul(&w)).max_norm();
    (residual.is_finite() && residual < tol, residual)
}

/// All valid knots with 3 ≤ p ≤ p_max.
pub fn knots_up_to(p_max: u64) -> Vec<TwoBridgeKnot> {
    let mut out = Vec::new();
    let mut p = 3i64;
    while p as u64 <= p_max {
        let mut q = 1i64;
        while q <= p - 2 {
            if gcd_i64(p, q) == 1 {
                out.push(TwoBridgeKnot { p: p as u64, q: q as u64 });
            }
            q += 2;
        }
        p += 2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{factor_bivariate, gcd_multi};
    use crate::numeric::roots;
    use num_traits::{Signed, ToPrimitive, Zero};

    #[test]
    fn normalize_window_and_flags() {
        let (k, canonical) = TwoBridgeKnot::normalize(3, 1).unwrap();
        assert_eq!((k.p(), k.q()), (3, 1));
        assert!(canonical && k.is_torus() && !k.is_hyperbolic());

        let (k, canonical) = TwoBridgeKnot::normalize(5, 3).unwrap();
        assert_eq!((k.p(), k.q()), (5, 3));
        assert!(canonical && k.is_hyperbolic() && !k.is_torus());

        let (k, canonical) = TwoBridgeKnot::normalize(7, 5).unwrap();
        assert_eq!((k.p(), k.q()), (7, 5));
        assert!(canonical);

        // reduction mod p: 13 ≡ 3 and −7 ≡ 3 (mod 5)
        let (k, canonical) = TwoBridgeKnot::normalize(5, 13).unwrap();
        assert_eq!((k.p(), k.q()), (5, 3));
        assert!(!canonical);
        let (k, canonical) = TwoBridgeKnot::normalize(5, -7).unwrap();
        assert_eq!((k.p(), k.q()), (5, 3));
        assert!(!canonical);
    }

    #[test]
    fn normalize_rejections() {
        assert_eq!(TwoBridgeKnot::normalize(4, 1), Err(TwoBridgeError::EvenP(4)));
        assert_eq!(TwoBridgeKnot::normalize(9, 3), Err(TwoBridgeError::NotCoprime(9, 3)));
        // even residue: the odd window would need the mirror p−q, which is excluded
        assert_eq!(TwoBridgeKnot::normalize(5, 2), Err(TwoBridgeError::OutOfRange(5, 2)));
        assert_eq!(TwoBridgeKnot::normalize(5, 7), Err(TwoBridgeError::OutOfRange(5, 7)));
        assert_eq!(TwoBridgeKnot::normalize(1, 1), Err(TwoBridgeError::OutOfRange(1, 1)));
        assert_eq!(TwoBridgeKnot::normalize(-3, 1), Err(TwoBridgeError::OutOfRange(-3, 1)));
        let msg = TwoBridgeError::OutOfRange(5, 2).to_string();
        assert!(msg.contains("b(5,2)"));
    }

    #[test]
    fn equivalence_is_inverse_mod_p() {
        let k73 = TwoBridgeKnot::new(7, 3).unwrap();
        let k75 = TwoBridgeKnot::new(7, 5).unwrap();
        let k71 = TwoBridgeKnot::new(7, 1).unwrap();
        // 3·5 = 15 ≡ 1 (mod 7)
        assert!(k73.is_equivalent_to(&k75));
        assert!(k75.is_equivalent_to(&k73));
        assert!(k73.is_equivalent_to(&k73));
        assert!(!k73.is_equivalent_to(&k71));
        let k95 = TwoBridgeKnot::new(9, 5).unwrap();
        let k97 = TwoBridgeKnot::new(9, 7).unwrap();
        assert!(!k95.is_equivalent_to(&k97));
        let k53 = TwoBridgeKnot::new(5, 3).unwrap();
        assert!(!k53.is_equivalent_to(&k73));
    }

    #[test]
    fn epsilon_oracles() {
        let k31 = TwoBridgeKnot::new(3, 1).unwrap();
        assert_eq!(k31.epsilon_sequence(), vec![1, 1]);
        let k53 = TwoBridgeKnot::new(5, 3).unwrap();
        assert_eq!(k53.epsilon_sequence(), vec![1, -1, -1, 1]);
        let k73 = TwoBridgeKnot::new(7, 3).unwrap();
        assert_eq!(k73.epsilon_sequence(), vec![1, 1, -1, -1, 1, 1]);
    }

    #[test]
    fn epsilon_palindrome_sweep() {
        for k in knots_up_to(25) {
            let eps = k.epsilon_sequence();
            assert_eq!(eps.len() as u64, k.p() - 1);
            let rev: Vec<i8> = eps.iter().rev().copied().collect();
            assert_eq!(eps, rev, "{k} epsilon sequence not palindromic");
        }
    }

    #[test]
    fn relator_word_alternates() {
        let k = TwoBridgeKnot::new(7, 3).unwrap();
        let w = k.relator_word();
        assert_eq!(w.len(), 6);
        for (i, l) in w.iter().enumerate() {
            assert_eq!(l.gen, if i % 2 == 0 { Gen::A } else { Gen::B });
            assert_eq!(l.exp.abs(), 1);
        }
    }

    #[test]
    fn riley_trefoil_frozen() {
        // by hand: W = rho(a)rho(b) = [[s²−su, 1],[−su, 1]],
        // phi = W11 + (1−s)W12 = s² − su − s + 1
        let k = TwoBridgeKnot::new(3, 1).unwrap();
        let phi = riley_polynomial(&k).phi;
        let expect = MultiPoly::from_int_terms(
            &["s", "u"],
            &[(vec![2, 0], 1), (vec![1, 1], -1), (vec![1, 0], -1), (vec![0, 0], 1)],
        );
        assert_eq!(phi, expect);
    }

    #[test]
    fn riley_figure8_frozen() {
        // by hand: w = a b⁻¹ a⁻¹ b gives raw numerator
        // s²u² + s(−s²+3s−1)(u+1); stripping s and fixing the sign leaves
        // s²u − su² − 3su + s² + u − 3s + 1.
        let k = TwoBridgeKnot::new(5, 3).unwrap();
        let phi = riley_polynomial(&k).phi;
        let expect = MultiPoly::from_int_terms(
            &["s", "u"],
            &[
                (vec![2, 1], 1),
                (vec![1, 2], -1),
                (vec![1, 1], -3),
                (vec![2, 0], 1),
                (vec![0, 1], 1),
                (vec![1, 0], -3),
                (vec![0, 0], 1),
            ],
        );
        assert_eq!(phi, expect);
        assert_eq!(phi.degree("u"), 2);
    }

    #[test]
    fn riley_degree_and_s_symmetry_sweep() {
        for k in knots_up_to(25) {
            let phi = riley_polynomial(&k).phi;
            assert_eq!(u64::from(phi.degree("u")), (k.p() - 1) / 2, "{k}");
            let rev = s_inversion(&phi);
            assert!(rev == phi || rev == -&phi, "{k} not s-palindromic");
        }
    }

    #[test]
    fn parabolic_figure8_negative_discriminant() {
        let k = TwoBridgeKnot::new(5, 3).unwrap();
        let par = parabolic_polynomial(&k);
        let expect =
            MultiPoly::from_int_terms(&["u"], &[(vec![2], 1), (vec![1], 1), (vec![0], 1)]);
        assert_eq!(par, expect);
        // b² − 4ac = 1 − 4 = −3 < 0: imaginary quadratic trace field
        let a = par.coeff(&[2]);
        let b = par.coeff(&[1]);
        let c = par.coeff(&[0]);
        assert!((&b * &b - Rational::from_integer(4.into()) * &a * &c).is_negative());
    }

    #[test]
    fn parabolic_degree_sweep() {
        for k in knots_up_to(25) {
            let par = parabolic_polynomial(&k);
            assert_eq!(u64::from(par.degree("u")), (k.p() - 1) / 2, "{k}");
        }
    }

    #[test]
    fn dihedral_squarefree_sweep() {
        let k31 = TwoBridgeKnot::new(3, 1).unwrap();
        assert_eq!(dihedral_locus(&k31).degree("u"), 1);
        for k in knots_up_to(25) {
            let d = dihedral_locus(&k);
            assert_eq!(u64::from(d.degree("u")), (k.p() - 1) / 2, "{k}");
            let g = gcd_multi(&d, &d.derivative("u"));
            assert!(g.is_constant(), "{k} dihedral locus not squarefree");
        }
    }

    #[test]
    fn riley_irreducible_for_prime_p() {
        for k in knots_up_to(13) {
            if !is_prime(k.p()) {
                continue;
            }
            let phi = riley_polynomial(&k).phi;
            let fac = factor_bivariate(&phi, "s", "u");
            assert_eq!(fac.factors.len(), 1, "{k} riley polynomial should be irreducible");
            assert_eq!(fac.factors[0].1, 1, "{k} riley polynomial should be squarefree");
        }
    }

    fn is_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn representation_oracle_on_roots() {
        // every refined root of phi(s0, ·) satisfies the relator numerically
        let knots = [(3, 1), (5, 3), (7, 3), (7, 5), (9, 5), (11, 3)];
        let s_values = [Rational::one(), Rational::new(5.into(), 4.into())];
        let mut checked = 0usize;
        for (p, q) in knots {
            let k = TwoBridgeKnot::new(p, q).unwrap();
            let phi = riley_polynomial(&k).phi;
            for s0 in &s_values {
                let spec = phi.subst_rational("s", s0);
                let coeffs = spec.as_univariate("u").expect("univariate in u");
                let s0c = ComplexDD::new(s0.to_f64().unwrap(), 0.0);
                for u0 in roots(&coeffs) {
                    let (ok, res) = verify_representation(&k, s0c, u0, 1e-9);
                    assert!(ok, "b({p},{q}) at s={s0}: residual {res}");
                    checked += 1;
                }
            }
        }
        assert!(checked >= 20, "only {checked} roots sampled");
    }

    #[test]
    fn representation_oracle_rejects_non_roots() {
        let k = TwoBridgeKnot::new(5, 3).unwrap();
        let (ok, res) =
            verify_representation(&k, ComplexDD::new(2.0, 0.0), ComplexDD::new(10.0, 10.0), 1e-9);
        assert!(!ok && res > 1.0);
        // u = 0 is not on the zero locus: rho(a) and rho(b) differ there, so the
        // relator fails and phi(s,0) stays nonzero
        let (ok, _) = verify_representation(&k, ComplexDD::new(1.7, 0.0), ComplexDD::ZERO, 1e-9);
        assert!(!ok);
        let phi = riley_polynomial(&k).phi;
        let at_u0 = phi.subst_rational("u", &Rational::zero());
        assert!(!at_u0.is_zero());
    }

    #[test]
    fn knot_enumeration() {
        let all = knots_up_to(9);
        let expect = [(3, 1), (5, 1), (5, 3), (7, 1), (7, 3), (7, 5), (9, 1), (9, 5), (9, 7)];
        assert_eq!(
            all.iter().map(|k| (k.p(), k.q())).collect::<Vec<_>>(),
            expect.to_vec()
        );
    }
}
