//! Simultaneous root refinement (Aberth-Ehrlich) at double-double
//! precision with deterministic starting points, so repeated runs give
//! identical output.

use super::dd::{ComplexDD, DD};
use crate::exactalg::Rational;

/// All complex roots of the squarefree polynomial with the given exact
/// rational coefficients (ascending, dense). Deterministic.
pub fn roots(coeffs: &[Rational]) -> Vec<ComplexDD> {
    let c: Vec<ComplexDD> = coeffs
        .iter()
        .map(|r| ComplexDD::from_dd(DD::from_rational(r)))
        .collect();
    roots_dd(&c)
}

fn horner(c: &[ComplexDD], z: ComplexDD) -> ComplexDD {
    let mut acc = ComplexDD::ZERO;
    for k in c.iter().rev() {
        acc = acc.mul(z).add(*k);
    }
    acc
}

fn derivative(c: &[ComplexDD]) -> Vec<ComplexDD> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, k)| k.mul(ComplexDD::new(i as f64, 0.0)))
        .collect()
}

pub fn roots_dd(coeffs: &[ComplexDD]) -> Vec<ComplexDD> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|k| k.abs() == 0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    // Strip roots at the origin exactly.
    let zeros_at_origin = c.iter().take_while(|k| k.abs() == 0.0).count();
    let mut out = vec![ComplexDD::ZERO; zeros_at_origin];
    let c = &c[zeros_at_origin..];
    let n = c.len() - 1;
    if n == 0 {
        return out;
    }

    // Cauchy-style inclusion radius: 1 + max |a_i / a_n|.
    let lead = *c.last().unwrap();
    let radius = 1.0
        + c[..n]
            .iter()
            .map(|k| k.div(lead).abs())
            .fold(0.0f64, f64::max);
    // Deterministic starting points spread on a circle, angle offset to
    // avoid real-axis symmetry traps.
    let mut z: Vec<ComplexDD> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.354) / n as f64;
            ComplexDD::new(radius * theta.cos(), radius * theta.sin())
        })
        .collect();
    let dc = derivative(c);
    let scale = radius.max(1.0);
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        let snapshot = z.clone();
        for i in 0..n {
            let zi = snapshot[i];
            let p = horner(c, zi);
            let dp = horner(&dc, zi);
            if p.abs() == 0.0 {
                continue;
            }
            let newton = if dp.abs() == 0.0 {
                ComplexDD::new(1e-3, 1e-3)
            } else {
                p.div(dp)
            };
            let mut sum = ComplexDD::ZERO;
            for (j, zj) in snapshot.iter().enumerate() {
                if j != i {
                    sum = sum.add(ComplexDD::ONE.div(zi.sub(*zj)));
                }
            }
            let denom = ComplexDD::ONE.sub(newton.mul(sum));
            let step = if denom.abs() == 0.0 { newton } else { newton.div(denom) };
            z[i] = zi.sub(step);
            max_step = max_step.max(step.abs());
        }
        if max_step < 1e-28 * scale {
            break;
        }
    }
    out.extend(z);
    // Deterministic order: by real part, then imaginary part.
    out.sort_by(|a, b| {
        let ka = (a.re.to_f64(), a.im.to_f64());
        let kb = (b.re.to_f64(), b.im.to_f64());
        ka.partial_cmp(&kb).unwrap()
    });
    out
}

/// Maximum residual |p(z)| over the returned roots; a cheap quality gauge.
pub fn max_residual(coeffs: &[Rational], roots: &[ComplexDD]) -> f64 {
    let c: Vec<ComplexDD> = coeffs
        .iter()
        .map(|r| ComplexDD::from_dd(DD::from_rational(r)))
        .collect();
    roots
        .iter()
        .map(|&z| horner(&c, z).abs())
        .fold(0.0, f64::max)
}
