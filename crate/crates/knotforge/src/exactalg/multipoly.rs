//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors under the graded
//! lexicographic order. The variable list of every polynomial is kept in the
//! canonical order `t < m < l < s < u`, with any other name sorting after
//! those alphabetically, and is pruned so that each listed variable actually
//! occurs. Those two invariants make structural equality semantic equality
//! and make printed output reproducible across runs.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Rank of a variable name in the canonical order.
fn var_rank(name: &str) -> (u8, &str) {
    match name {
        "t" => (0, name),
        "m" => (1, name),
        "l" => (2, name),
        "s" => (3, name),
        "u" => (4, name),
        other => (5, other),
    }
}

/// Compares variable names in the canonical order.
pub fn var_cmp(a: &str, b: &str) -> Ordering {
    var_rank(a).cmp(&var_rank(b))
}

/// Exponent vector of a single term; ordered graded-lexicographically.
///
/// Total degree decides first; ties go to the monomial with the larger
/// exponent on the earliest variable. All monomials of one polynomial have
/// the same length as its variable list.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => self.0.cmp(&other.0),
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `Q[vars]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { vars: Vec::new(), terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(Vec::new()), c);
        }
        MultiPoly { vars: Vec::new(), terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from(BigInt::from(n)))
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The polynomial `name`.
    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), Rational::one());
        MultiPoly { vars: vec![name.to_string()], terms }
    }

    /// Builds a polynomial from raw `(exponents, coefficient)` pairs over the
    /// given variable list. Repeated monomials are summed.
    pub fn from_terms(vars: &[&str], terms: &[(Vec<u32>, Rational)]) -> Self {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (exps, c) in terms {
            assert_eq!(exps.len(), vars.len(), "exponent arity mismatch");
            let entry = map.entry(Monomial(exps.clone())).or_insert_with(Rational::zero);
            *entry += c;
        }
        let p = MultiPoly { vars: vars.iter().map(|s| s.to_string()).collect(), terms: map };
        p.normalized()
    }

    /// Convenience for integer coefficients.
    pub fn from_int_terms(vars: &[&str], terms: &[(Vec<u32>, i64)]) -> Self {
        let converted: Vec<(Vec<u32>, Rational)> = terms
            .iter()
            .map(|(e, c)| (e.clone(), Rational::from(BigInt::from(*c))))
            .collect();
        Self::from_terms(vars, &converted)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    /// The value of a constant polynomial; `None` if any variable occurs.
    pub fn as_constant(&self) -> Option<Rational> {
        if !self.vars.is_empty() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Degree in one variable; 0 for the zero polynomial and for absent names.
    pub fn degree(&self, var: &str) -> u32 {
        match self.var_index(var) {
            None => 0,
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
        }
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    fn var_index(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    /// Leading coefficient under the graded-lex order; 0 for the zero poly.
    pub fn leading_coeff(&self) -> Rational {
        self.terms
            .iter()
            .next_back()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn leading_monomial(&self) -> Option<(Vec<String>, Vec<u32>)> {
        self.terms
            .iter()
            .next_back()
            .map(|(m, _)| (self.vars.clone(), m.0.clone()))
    }

    /// Re-establishes the representation invariants: sorted variable list,
    /// no zero coefficients, no unused variables.
    fn normalized(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        // Sort variables canonically, permuting exponents to match.
        let mut order: Vec<usize> = (0..self.vars.len()).collect();
        order.sort_by(|&a, &b| var_cmp(&self.vars[a], &self.vars[b]));
        let sorted = order.iter().map(|&i| self.vars[i].clone()).collect::<Vec<_>>();
        if sorted != self.vars {
            let terms = std::mem::take(&mut self.terms);
            let mut remapped = BTreeMap::new();
            for (m, c) in terms {
                let exps: Vec<u32> = order.iter().map(|&i| m.0[i]).collect();
                let entry = remapped.entry(Monomial(exps)).or_insert_with(Rational::zero);
                *entry += c;
            }
            remapped.retain(|_, c| !c.is_zero());
            self.terms = remapped;
            self.vars = sorted;
        }
        // Drop variables that no term uses.
        let n = self.vars.len();
        let mut used = vec![false; n];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        if used.iter().any(|&u| !u) {
            let keep: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
            self.vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
            let terms = std::mem::take(&mut self.terms);
            self.terms = terms
                .into_iter()
                .map(|(m, c)| (Monomial(keep.iter().map(|&i| m.0[i]).collect()), c))
                .collect();
        }
        self
    }

    /// Rewrites both polynomials over the union of their variable lists.
    fn unify(a: &MultiPoly, b: &MultiPoly) -> (Vec<String>, MultiPoly, MultiPoly) {
        if a.vars == b.vars {
            return (a.vars.clone(), a.clone(), b.clone());
        }
        let mut vars: Vec<String> = a.vars.iter().chain(b.vars.iter()).cloned().collect();
        vars.sort_by(|x, y| var_cmp(x, y));
        vars.dedup();
        let lift = |p: &MultiPoly| -> MultiPoly {
            let idx: Vec<usize> = p
                .vars
                .iter()
                .map(|v| vars.iter().position(|w| w == v).unwrap())
                .collect();
            let terms = p
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![0u32; vars.len()];
                    for (j, &exp) in m.0.iter().enumerate() {
                        e[idx[j]] = exp;
                    }
                    (Monomial(e), c.clone())
                })
                .collect();
            MultiPoly { vars: vars.clone(), terms }
        };
        (vars.clone(), lift(a), lift(b))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rational) -> Rational) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect();
        MultiPoly { vars: self.vars.clone(), terms }.normalized()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        self.map_coeffs(|c| c * r)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Substitutes a rational value for one variable.
    pub fn subst_rational(&self, var: &str, value: &Rational) -> Self {
        let Some(i) = self.var_index(var) else {
            return self.clone();
        };
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            let mut exps = m.0.clone();
            exps[i] = 0;
            let mut coeff = c.clone();
            if e > 0 {
                let mut p = value.clone();
                let mut acc = Rational::one();
                let mut k = e;
                while k > 0 {
                    if k & 1 == 1 {
                        acc *= &p;
                    }
                    k >>= 1;
                    if k > 0 {
                        p = &p * &p;
                    }
                }
                coeff *= acc;
            }
            let entry = terms.entry(Monomial(exps)).or_insert_with(Rational::zero);
            *entry += coeff;
        }
        MultiPoly { vars: self.vars.clone(), terms }.normalized()
    }

    /// Substitutes `old ↦ new^k`, e.g. `s ↦ m^2`.
    pub fn subst_var_pow(&self, old: &str, new: &str, k: u32) -> Self {
        let Some(i) = self.var_index(old) else {
            return self.clone();
        };
        let mut vars = self.vars.clone();
        vars[i] = new.to_string();
        let mut out = MultiPoly { vars, terms: BTreeMap::new() };
        // Same slot reused for the new name; a pre-existing occurrence of
        // `new` is merged by normalization below.
        let mut terms: Vec<(Monomial, Rational)> = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            exps[i] = exps[i].checked_mul(k).expect("exponent overflow");
            terms.push((Monomial(exps), c.clone()));
        }
        if out.vars.iter().filter(|v| *v == new).count() > 1 {
            // Collision with an existing variable: fold the scaled exponent
            // into the original slot.
            let j = out.vars.iter().position(|v| v == new).unwrap();
            let j2 = out.vars.iter().rposition(|v| v == new).unwrap();
            let (lo, hi) = (j.min(i), j.max(i));
            debug_assert!(j2 == i || j == i);
            let mut merged = BTreeMap::new();
            for (m, c) in terms {
                let mut e = m.0.clone();
                e[lo] += e[hi];
                e.remove(hi);
                let entry = merged.entry(Monomial(e)).or_insert_with(Rational::zero);
                *entry += c;
            }
            out.vars.remove(hi);
            out.terms = merged;
        } else {
            out.terms = terms.into_iter().collect();
        }
        out.normalized()
    }

    /// Substitutes a polynomial for one variable.
    pub fn subst_poly(&self, var: &str, value: &MultiPoly) -> Self {
        let Some(i) = self.var_index(var) else {
            return self.clone();
        };
        let mut result = Self::zero();
        // Group by exponent of `var` and apply Horner over those groups.
        let mut by_exp: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            let mut exps = m.0.clone();
            exps[i] = 0;
            let part = by_exp.entry(e).or_insert_with(Self::zero);
            let single = MultiPoly {
                vars: self.vars.clone(),
                terms: [(Monomial(exps), c.clone())].into_iter().collect(),
            }
            .normalized();
            *part = &*part + &single;
        }
        let mut exps: Vec<u32> = by_exp.keys().cloned().collect();
        exps.sort_unstable_by(|a, b| b.cmp(a));
        let mut prev_e: Option<u32> = None;
        for e in exps {
            if let Some(pe) = prev_e {
                result = &result * &value.pow(pe - e);
            }
            result = &result + by_exp.get(&e).unwrap();
            prev_e = Some(e);
        }
        if let Some(pe) = prev_e {
            if pe > 0 {
                result = &result * &value.pow(pe);
            }
        }
        result
    }

    pub fn derivative(&self, var: &str) -> Self {
        let Some(i) = self.var_index(var) else {
            return Self::zero();
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] = e - 1;
            terms.insert(Monomial(exps), c * Rational::from(BigInt::from(e)));
        }
        MultiPoly { vars: self.vars.clone(), terms }.normalized()
    }

    /// Coefficients of powers of `var`, ascending and dense. The entries are
    /// polynomials over the remaining variables. Index `k` holds the
    /// coefficient of `var^k`; the vector has `degree(var) + 1` entries
    /// (a single zero entry for the zero polynomial).
    pub fn coeffs_in(&self, var: &str) -> Vec<MultiPoly> {
        let d = self.degree(var) as usize;
        let mut out = vec![Self::zero(); d + 1];
        match self.var_index(var) {
            None => {
                out[0] = self.clone();
            }
            Some(i) => {
                for (m, c) in &self.terms {
                    let e = m.0[i] as usize;
                    let mut exps = m.0.clone();
                    exps[i] = 0;
                    let single = MultiPoly {
                        vars: self.vars.clone(),
                        terms: [(Monomial(exps), c.clone())].into_iter().collect(),
                    }
                    .normalized();
                    out[e] = &out[e] + &single;
                }
            }
        }
        out
    }

    /// Inverse of `coeffs_in`: rebuilds `sum_k coeffs[k] * var^k`.
    pub fn from_coeffs_in(var: &str, coeffs: &[MultiPoly]) -> Self {
        let v = Self::var(var);
        let mut acc = Self::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * &v) + c;
        }
        acc
    }

    /// Leading coefficient viewed as a polynomial in `var`.
    pub fn leading_coeff_in(&self, var: &str) -> MultiPoly {
        if self.is_zero() {
            return Self::zero();
        }
        self.coeffs_in(var).pop().unwrap()
    }

    /// Rational content and integer-primitive part with positive leading
    /// coefficient, so that `self = content * primitive`. Zero gives (0, 0).
    pub fn content_primitive(&self) -> (Rational, MultiPoly) {
        if self.is_zero() {
            return (Rational::zero(), Self::zero());
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_integer::Integer::gcd(&num_gcd, c.numer());
            den_lcm = num_integer::Integer::lcm(&den_lcm, c.denom());
        }
        let mut content = Rational::new(num_gcd, den_lcm);
        if self.leading_coeff().is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content, self.map_coeffs(|c| c * &inv))
    }

    /// Multiplies by -1 if the graded-lex leading coefficient is negative.
    pub fn normalize_sign(&self) -> Self {
        if self.leading_coeff().is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact division; `None` when the divisor does not divide evenly.
    pub fn try_div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = divisor.as_constant() {
            let inv = c.recip();
            return Some(self.map_coeffs(|x| x * &inv));
        }
        let var = divisor.vars[0].clone();
        let dc = divisor.coeffs_in(&var);
        let e = dc.len() - 1;
        let lead = dc[e].clone();
        let mut rem = self.coeffs_in(&var);
        if rem.len() < dc.len() {
            return None;
        }
        let mut quot = vec![Self::zero(); rem.len() - e];
        for k in (e..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let qk = rem[k].try_div_exact(&lead)?;
            for (i, d) in dc.iter().enumerate() {
                let sub = &qk * d;
                rem[k - e + i] = &rem[k - e + i] - &sub;
            }
            debug_assert!(rem[k].is_zero());
            quot[k - e] = qk;
        }
        if rem.iter().any(|r| !r.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs_in(&var, &quot))
    }

    /// Dense rational coefficient list when the polynomial involves at most
    /// the single variable `var`; `None` otherwise. Ascending by power.
    pub fn as_univariate(&self, var: &str) -> Option<Vec<Rational>> {
        if self.vars.iter().any(|v| v != var) {
            return None;
        }
        if self.is_zero() {
            return Some(vec![Rational::zero()]);
        }
        if self.vars.is_empty() {
            return Some(vec![self.as_constant().unwrap()]);
        }
        let d = self.degree(var) as usize;
        let mut out = vec![Rational::zero(); d + 1];
        for (m, c) in &self.terms {
            out[m.0[0] as usize] = c.clone();
        }
        Some(out)
    }

    /// Builds a univariate polynomial from ascending dense coefficients.
    pub fn from_univariate(var: &str, coeffs: &[Rational]) -> Self {
        let terms: Vec<(Vec<u32>, Rational)> = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (vec![i as u32], c.clone()))
            .collect();
        Self::from_terms(&[var], &terms)
    }

    /// JSON form: the variable list plus `[[exponents...], "coefficient"]`
    /// pairs in ascending graded-lex order. Coefficients are decimal strings,
    /// `num/den` when not integral, so the round trip is exact.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let coeff = if c.denom().is_one() {
                    c.numer().to_string()
                } else {
                    format!("{}/{}", c.numer(), c.denom())
                };
                serde_json::json!([m.0, coeff])
            })
            .collect();
        serde_json::json!({ "vars": self.vars, "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Option<Self> {
        use std::str::FromStr;
        let vars: Vec<String> = v
            .get("vars")?
            .as_array()?
            .iter()
            .map(|s| s.as_str().map(str::to_owned))
            .collect::<Option<_>>()?;
        let var_refs: Vec<&str> = vars.iter().map(String::as_str).collect();
        let mut terms = Vec::new();
        for t in v.get("terms")?.as_array()? {
            let pair = t.as_array()?;
            if pair.len() != 2 {
                return None;
            }
            let exps: Vec<u32> = pair[0]
                .as_array()?
                .iter()
                .map(|e| e.as_u64().and_then(|e| u32::try_from(e).ok()))
                .collect::<Option<_>>()?;
            if exps.len() != vars.len() {
                return None;
            }
            let c = Rational::from_str(pair[1].as_str()?).ok()?;
            terms.push((exps, c));
        }
        Some(Self::from_terms(&var_refs, &terms))
    }

    /// Evaluates with every variable bound. Panics if a variable is missing
    /// from the assignment list.
    pub fn eval(&self, assignment: &[(&str, Rational)]) -> Rational {
        let mut p = self.clone();
        for (v, r) in assignment {
            p = p.subst_rational(v, r);
        }
        p.as_constant().expect("unbound variable in eval")
    }

    /// Coefficient of the monomial with the given exponents (aligned to
    /// `self.vars()`).
    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (vars, a, b) = MultiPoly::unify(self, rhs);
        let mut terms = a.terms;
        for (m, c) in b.terms {
            let entry = terms.entry(m).or_insert_with(Rational::zero);
            *entry += c;
        }
        MultiPoly { vars, terms }.normalized()
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let (vars, a, b) = MultiPoly::unify(self, rhs);
        let mut terms = a.terms;
        for (m, c) in b.terms {
            let entry = terms.entry(m).or_insert_with(Rational::zero);
            *entry -= c;
        }
        MultiPoly { vars, terms }.normalized()
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        let (vars, a, b) = MultiPoly::unify(self, rhs);
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let exps: Vec<u32> = ma
                    .0
                    .iter()
                    .zip(mb.0.iter())
                    .map(|(&x, &y)| x.checked_add(y).expect("exponent overflow"))
                    .collect();
                let entry = terms.entry(Monomial(exps)).or_insert_with(Rational::zero);
                *entry += ca * cb;
            }
        }
        MultiPoly { vars, terms }.normalized()
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.map_coeffs(|c| -c)
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical text form: terms descending in graded-lex order, explicit
    /// `*` and `^`, e.g. `-m^4*l + 2*l - 1/3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || m.total_degree() == 0 {
                parts.push(abs.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.vars[i].clone()),
                    _ => parts.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
