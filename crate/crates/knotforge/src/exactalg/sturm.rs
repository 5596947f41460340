//! Real root counting for squarefree univariate polynomials over Q via
//! Sturm chains. Exact: no floating point anywhere, so the "does this
//! factor have a non-real root" question gets a provable answer.

use num_traits::Signed;

use super::densepoly::{self, DensePoly};
use super::multipoly::MultiPoly;

/// Number of distinct real roots of a squarefree polynomial.
pub fn real_root_count(f: &DensePoly) -> usize {
    if f.len() <= 1 {
        return 0;
    }
    let chain = sturm_chain(f);
    let at_minus_inf = sign_variations(&chain, false);
    let at_plus_inf = sign_variations(&chain, true);
    at_minus_inf - at_plus_inf
}

/// Convenience wrapper over a `MultiPoly` known to be univariate in `var`.
pub fn real_root_count_poly(f: &MultiPoly, var: &str) -> usize {
    let dense = densepoly::trim(f.as_univariate(var).expect("univariate input"));
    real_root_count(&dense)
}

/// True when the squarefree polynomial has at least one non-real root.
pub fn has_nonreal_root(f: &MultiPoly, var: &str) -> bool {
    let deg = f.degree(var) as usize;
    real_root_count_poly(f, var) < deg
}

fn sturm_chain(f: &DensePoly) -> Vec<DensePoly> {
    let mut chain = vec![f.clone(), densepoly::derivative(f)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            return chain;
        }
        let (_, r) = densepoly::divmod(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            return chain;
        }
        // Negated remainder; scaling by a positive rational preserves signs.
        let next = densepoly::primitive_signed(&densepoly::neg(&r));
        chain.push(next);
    }
}

/// Sign variations of the chain at +infinity or -infinity.
fn sign_variations(chain: &[DensePoly], plus: bool) -> usize {
    let mut signs: Vec<i32> = Vec::new();
    for p in chain {
        if p.is_empty() {
            continue;
        }
        let lead = p.last().unwrap();
        let mut s = if lead.is_positive() { 1 } else { -1 };
        if !plus && densepoly::deg(p) % 2 == 1 {
            s = -s;
        }
        if s != 0 {
            signs.push(s);
        }
    }
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}
