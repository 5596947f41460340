//! Linear q-difference recurrences for colored Jones tables.
//!
//! A recurrence operator is `α = Σ_i a_i(t, M) L^i` in the quantum torus with
//! `LM = t² ML`; it acts on a table by `(α J)(n) = Σ_i a_i(t, t^{2n}) J_{n+i}(t)`.
//! Operators are guessed from finitely many table rows by exact linear
//! algebra over Q, re-verified on rows the fit never saw, and specialized at
//! `t = -1` to meet the character-variety side of the pipeline.
//!
//! Guessed operators are normalized: integer coefficients with joint content
//! one, only even exponents in `t` and `M`, joint minimum exponent zero in
//! both variables, `a_0 ≠ 0` and `a_dL ≠ 0`, and a positive graded-lex
//! leading coefficient in the top `L`-coefficient.

use std::collections::BTreeMap;
use std::error::Error;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cjones::ColoredJonesTable;
use crate::exactalg::linalg::{primitive_integer_vector, rational_nullspace};
use crate::exactalg::modp::Fp;
use crate::exactalg::{LaurentPoly, MultiPoly, Rational};

/// Prime used to screen cap candidates before exact solving. Elimination mod
/// p never reports a smaller nullspace than the rational one, so a zero
/// nullity here soundly rules a candidate out.
const FILTER_PRIME: u64 = 2_147_483_647;

/// Rows with n <= 1 are convention rows (J_0 = 0 and J_1 = 1 carry no
/// information); fitting and verification both start here.
const FIRST_ROW: u32 = 2;

/// Table rows excluded from every fit and checked against the result.
const HOLDOUT_ROWS: u32 = 3;

/// A fit must be overdetermined by at least this many scalar equations.
const EQUATION_MARGIN: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QHoloError {
    /// The table has no entry for the color a row of the identity needs.
    MissingEntry { n: i64 },
    /// The table yields fewer scalar equations than unknowns plus margin.
    TableTooSmall { needed: usize, have: usize },
    /// No operator within the caps annihilates the whole table.
    NotFound { max_dl: u32, max_dm: u32, max_dt: u32 },
    /// l - 1 does not divide the specialized operator: the guess is an
    /// artifact of too-small caps, not a recurrence of the underlying knot.
    QuotientFailed,
}

impl fmt::Display for QHoloError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QHoloError::MissingEntry { n } => {
                write!(f, "table has no entry for color {n}")
            }
            QHoloError::TableTooSmall { needed, have } => {
                write!(
                    f,
                    "fit needs at least {needed} scalar equations but the table yields {have}"
                )
            }
            QHoloError::NotFound { max_dl, max_dm, max_dt } => {
                write!(
                    f,
                    "no recurrence of order <= {max_dl} with degree caps ({max_dm}, {max_dt}) \
                     annihilates the table"
                )
            }
            QHoloError::QuotientFailed => {
                write!(f, "l - 1 does not divide the specialized operator")
            }
        }
    }
}

impl Error for QHoloError {}

/// `Σ_i a_i(t, M) L^i` with `a_i` polynomials in the variables t and M.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceOp {
    coeffs: Vec<MultiPoly>,
    dm: u32,
    dt: u32,
    fit: (u32, u32),
    holdout: (u32, u32),
}

impl RecurrenceOp {
    /// Wraps explicit coefficients without normalizing them; the guessing
    /// functions are what guarantee the documented normal form. The metadata
    /// caps are the smallest a search could have used: dM bounds the
    /// M-exponents directly, while the t-window is two-sided, so dt is half
    /// the t-spread rounded up.
    pub fn from_coeffs(coeffs: Vec<MultiPoly>) -> Self {
        let coeffs = if coeffs.is_empty() { vec![MultiPoly::zero()] } else { coeffs };
        let dm = coeffs.iter().map(|c| c.degree("M") / 2).max().unwrap_or(0);
        let dt = coeffs.iter().map(|c| (c.degree("t") + 3) / 4).max().unwrap_or(0);
        RecurrenceOp { coeffs, dm, dt, fit: (1, 0), holdout: (1, 0) }
    }

    /// Order: the highest power of L.
    pub fn dl(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    /// Coefficient of L^i at index i.
    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    /// Degree caps (dM, dt) the operator was searched under.
    pub fn caps(&self) -> (u32, u32) {
        (self.dm, self.dt)
    }

    /// Inclusive window of colors used to fit the operator.
    pub fn fit_window(&self) -> (u32, u32) {
        self.fit
    }

    /// Inclusive window of colors held out of the fit; empty when none were.
    pub fn holdout_window(&self) -> (u32, u32) {
        self.holdout
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// JSON form: coefficient lists in the variable order t, M, L. Each
    /// entry of `coeffs` is the list of `[t_exp, m_exp, coefficient]` terms
    /// of one a_i, outer index i being the power of L.
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|a| {
                let terms: Vec<serde_json::Value> = poly_terms(a)
                    .into_iter()
                    .map(|((te, me), c)| {
                        serde_json::json!([te, me, rational_string(&c)])
                    })
                    .collect();
                serde_json::Value::Array(terms)
            })
            .collect();
        serde_json::json!({
            "vars": ["t", "M", "L"],
            "dl": self.dl(),
            "dm": self.dm,
            "dt": self.dt,
            "fit": [self.fit.0, self.fit.1],
            "holdout": [self.holdout.0, self.holdout.1],
            "coeffs": coeffs,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Option<RecurrenceOp> {
        let coeffs_json = v.get("coeffs")?.as_array()?;
        let mut coeffs = Vec::with_capacity(coeffs_json.len());
        for entry in coeffs_json {
            let mut terms = Vec::new();
            for term in entry.as_array()? {
                let t = term.as_array()?;
                if t.len() != 3 {
                    return None;
                }
                let te = u32::try_from(t[0].as_u64()?).ok()?;
                let me = u32::try_from(t[1].as_u64()?).ok()?;
                let c = Rational::from_str(t[2].as_str()?).ok()?;
                terms.push((vec![te, me], c));
            }
            coeffs.push(MultiPoly::from_terms(&["t", "M"], &terms));
        }
        if coeffs.is_empty() {
            return None;
        }
        let window = |key: &str| -> Option<(u32, u32)> {
            let w = v.get(key)?.as_array()?;
            Some((
                u32::try_from(w.first()?.as_u64()?).ok()?,
                u32::try_from(w.get(1)?.as_u64()?).ok()?,
            ))
        };
        Some(RecurrenceOp {
            coeffs,
            dm: u32::try_from(v.get("dm")?.as_u64()?).ok()?,
            dt: u32::try_from(v.get("dt")?.as_u64()?).ok()?,
            fit: window("fit")?,
            holdout: window("holdout")?,
        })
    }
}

/// Specialization of a recurrence at t = -1, quotiented by l - 1.
#[derive(Debug, Clone, PartialEq)]
pub struct AJWitness {
    /// α(-1, m, l): integer, primitive, sign-normalized.
    pub alpha_at_minus1: MultiPoly,
    /// α(-1, m, l) / (l - 1), normalized the same way.
    pub hat_alpha: MultiPoly,
    /// Row counts (fitted, held out) behind the operator.
    pub verification_range: (u32, u32),
}

/// Length of an inclusive window, zero when empty.
fn window_len(w: (u32, u32)) -> u32 {
    if w.1 >= w.0 {
        w.1 - w.0 + 1
    } else {
        0
    }
}

/// Terms of a polynomial in t and M as ((t_exp, m_exp), coeff), whatever
/// subset of the two variables it actually mentions.
fn poly_terms(a: &MultiPoly) -> Vec<((u32, u32), Rational)> {
    let tpos = a.vars().iter().position(|v| v == "t");
    let mpos = a.vars().iter().position(|v| v == "M");
    a.terms()
        .map(|(mono, c)| {
            let te = tpos.map_or(0, |p| mono.0[p]);
            let me = mpos.map_or(0, |p| mono.0[p]);
            ((te, me), c.clone())
        })
        .collect()
}

fn rational_string(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// a(t, t^{2n}) as a Laurent polynomial in t.
fn coeff_at_color(a: &MultiPoly, n: u32) -> LaurentPoly {
    let terms: Vec<(i64, Rational)> = poly_terms(a)
        .into_iter()
        .map(|((te, me), c)| (te as i64 + 2 * n as i64 * me as i64, c))
        .collect();
    LaurentPoly::from_terms(&terms)
}

/// `Σ_i a_i(t, t^{2n}) J_{n+i}(t)`, exactly.
pub fn apply_operator(
    op: &RecurrenceOp,
    table: &ColoredJonesTable,
    n: u32,
) -> Result<LaurentPoly, QHoloError> {
    let mut acc = LaurentPoly::zero();
    for (i, a) in op.coeffs.iter().enumerate() {
        let color = n as i64 + i as i64;
        let j = table.get(color).ok_or(QHoloError::MissingEntry { n: color })?;
        if a.is_zero() {
            continue;
        }
        acc = &acc + &(&coeff_at_color(a, n) * &j);
    }
    Ok(acc)
}

/// Number of unknown coefficients c_{i,μ,τ} for the caps: the unknown
/// multiplies t^{2τ} M^{2μ} L^i with 0 <= μ <= dm and -dt <= τ <= dt. The
/// t-window is two-sided because operators are only determined up to a
/// t-power unit; the M-window stays one-sided so that the monomial
/// alignment of a solution is pinned, keeping first-success nullspaces
/// small.
fn column_count(dl: u32, dm: u32, dt: u32) -> usize {
    (dl as usize + 1) * (dm as usize + 1) * (2 * dt as usize + 1)
}

fn column_triples(dl: u32, dm: u32, dt: u32) -> Vec<(u32, u32, i64)> {
    let mut triples = Vec::with_capacity(column_count(dl, dm, dt));
    for i in 0..=dl {
        for mu in 0..=dm {
            for tau in -(dt as i64)..=dt as i64 {
                triples.push((i, mu, tau));
            }
        }
    }
    triples
}

/// The scalar equations of one fitting window. Equation (n, e) states that
/// the coefficient of t^e in `Σ_{i,μ,τ} c_{iμτ} t^{2τ+4nμ} J_{n+i}` vanishes,
/// so the matrix entry in column (i, μ, τ) is the coefficient of
/// t^{e-2τ-4nμ} in J_{n+i}. Rows are generated on demand; only the table
/// coefficients and their residues mod the filter prime are stored.
struct FitSystem {
    dl: u32,
    colors: Vec<u32>,
    jexact: Vec<Vec<BTreeMap<i64, Rational>>>,
    jres: Vec<Vec<BTreeMap<i64, u64>>>,
    spans: Vec<(i64, i64)>,
    fp: Fp,
}

impl FitSystem {
    fn new(table: &ColoredJonesTable, dl: u32, fit: (u32, u32)) -> Result<FitSystem, QHoloError> {
        let fp = Fp::new(FILTER_PRIME);
        let pbig = BigInt::from(FILTER_PRIME);
        let mut colors = Vec::new();
        let mut jexact = Vec::new();
        let mut jres = Vec::new();
        let mut spans = Vec::new();
        for n in fit.0..=fit.1 {
            let mut exact_row = Vec::with_capacity(dl as usize + 1);
            let mut res_row = Vec::with_capacity(dl as usize + 1);
            let mut lo = i64::MAX;
            let mut hi = i64::MIN;
            for i in 0..=dl {
                let color = (n + i) as i64;
                let j = table.get(color).ok_or(QHoloError::MissingEntry { n: color })?;
                if let (Some(a), Some(b)) = (j.min_exp(), j.max_exp()) {
                    lo = lo.min(a);
                    hi = hi.max(b);
                }
                let mut exact = BTreeMap::new();
                let mut res = BTreeMap::new();
                for (&e, c) in j.terms() {
                    let num = u64::try_from(&c.numer().mod_floor(&pbig)).unwrap();
                    let den = u64::try_from(&c.denom().mod_floor(&pbig)).unwrap();
                    res.insert(e, fp.mul(num, fp.inv(den)));
                    exact.insert(e, c.clone());
                }
                exact_row.push(exact);
                res_row.push(res);
            }
            if lo > hi {
                continue;
            }
            colors.push(n);
            jexact.push(exact_row);
            jres.push(res_row);
            spans.push((lo, hi));
        }
        Ok(FitSystem { dl, colors, jexact, jres, spans, fp })
    }

    /// Row keys (index into `colors`, target exponent e) for the caps. The
    /// offsets 2τ + 4nμ range over [-2dt, 2dt + 4n·dm] in steps of two, and
    /// every table exponent is even, so stepping by two covers every
    /// possible equation.
    fn row_keys(&self, dm: u32, dt: u32) -> Vec<(usize, i64)> {
        let mut keys = Vec::new();
        for (k, &n) in self.colors.iter().enumerate() {
            let (lo, hi) = self.spans[k];
            let top = hi + 4 * n as i64 * dm as i64 + 2 * dt as i64;
            let mut e = lo - 2 * dt as i64;
            while e <= top {
                keys.push((k, e));
                e += 2;
            }
        }
        keys
    }

    /// Column values of one equation; `true` when any entry is nonzero.
    fn fill_row<T: Copy + Default>(
        &self,
        maps: &[Vec<BTreeMap<i64, T>>],
        triples: &[(u32, u32, i64)],
        key: (usize, i64),
        out: &mut [T],
    ) -> bool {
        let (k, e) = key;
        let n = self.colors[k] as i64;
        let mut any = false;
        for (col, &(i, mu, tau)) in triples.iter().enumerate() {
            let want = e - 2 * tau - 4 * n * mu as i64;
            if let Some(&v) = maps[k][i as usize].get(&want) {
                out[col] = v;
                any = true;
            } else {
                out[col] = T::default();
            }
        }
        any
    }

    /// Count of nonzero equations and an upper bound for the rational
    /// nullity, from one elimination mod the filter prime. Once full column
    /// rank is reached the remaining rows are only counted.
    fn prefilter(&self, dm: u32, dt: u32) -> (usize, usize) {
        let triples = column_triples(self.dl, dm, dt);
        let cols = triples.len();
        let fp = self.fp;
        let mut equations = 0usize;
        // Echelon basis kept sorted by leading column.
        let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
        let mut row = vec![0u64; cols];
        for key in self.row_keys(dm, dt) {
            if !self.fill_row(&self.jres, &triples, key, &mut row) {
                continue;
            }
            equations += 1;
            if basis.len() == cols {
                continue;
            }
            for (lead, brow) in &basis {
                if row[*lead] != 0 {
                    let f = row[*lead];
                    for j in *lead..cols {
                        row[j] = fp.sub(row[j], fp.mul(f, brow[j]));
                    }
                }
            }
            if let Some(lc) = row.iter().position(|&x| x != 0) {
                let inv = fp.inv(row[lc]);
                let mut stored = vec![0u64; cols];
                for j in lc..cols {
                    stored[j] = fp.mul(row[j], inv);
                }
                let at = basis.partition_point(|(lead, _)| *lead < lc);
                basis.insert(at, (lc, stored));
            }
        }
        (equations, cols - basis.len())
    }

    /// Exact rational nullspace of the full system, denominators cleared
    /// row by row.
    fn nullspace(&self, dm: u32, dt: u32) -> Vec<Vec<Rational>> {
        let triples = column_triples(self.dl, dm, dt);
        let cols = triples.len();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        let mut row = vec![Rational::zero(); cols];
        for key in self.row_keys(dm, dt) {
            if !self.fill_row_rational(&triples, key, &mut row) {
                continue;
            }
            let mut denom = BigInt::one();
            for c in &row {
                if !c.is_zero() {
                    denom = denom.lcm(c.denom());
                }
            }
            let scaled: Vec<BigInt> = row
                .iter()
                .map(|c| {
                    if c.is_zero() {
                        BigInt::zero()
                    } else {
                        c.numer() * (&denom / c.denom())
                    }
                })
                .collect();
            rows.push(scaled);
        }
        rational_nullspace(&rows)
    }

    fn fill_row_rational(
        &self,
        triples: &[(u32, u32, i64)],
        key: (usize, i64),
        out: &mut [Rational],
    ) -> bool {
        let (k, e) = key;
        let n = self.colors[k] as i64;
        let mut any = false;
        for (col, &(i, mu, tau)) in triples.iter().enumerate() {
            let want = e - 2 * tau - 4 * n * mu as i64;
            match self.jexact[k][i as usize].get(&want) {
                Some(v) => {
                    out[col] = v.clone();
                    any = true;
                }
                None => out[col] = Rational::zero(),
            }
        }
        any
    }
}

/// Normal form of one integer nullspace vector: coefficients divided by
/// their common content, gathered as exponent maps per power of L, shifted
/// so L, t and M all start at exponent zero.
fn candidate_maps(
    ints: &[BigInt],
    triples: &[(u32, u32, i64)],
    dl: u32,
) -> Option<Vec<BTreeMap<(u32, u32), BigInt>>> {
    let mut content = BigInt::zero();
    for c in ints {
        content = content.gcd(c);
    }
    if content.is_zero() {
        return None;
    }
    let mut raw: Vec<BTreeMap<(i64, i64), BigInt>> = vec![BTreeMap::new(); dl as usize + 1];
    for (col, &(i, mu, tau)) in triples.iter().enumerate() {
        if !ints[col].is_zero() {
            raw[i as usize].insert((2 * tau, 2 * mu as i64), &ints[col] / &content);
        }
    }
    let lo_l = raw.iter().position(|m| !m.is_empty())?;
    let hi_l = raw.iter().rposition(|m| !m.is_empty())?;
    let mut tmin = i64::MAX;
    let mut mmin = i64::MAX;
    for m in &raw[lo_l..=hi_l] {
        for &(te, me) in m.keys() {
            tmin = tmin.min(te);
            mmin = mmin.min(me);
        }
    }
    // Sign: positive graded-lex leading coefficient in the top coefficient.
    let top = &raw[hi_l];
    let lead = top
        .iter()
        .max_by_key(|(&(te, me), _)| (te + me, te))
        .map(|(_, c)| c.clone())?;
    let flip = lead.is_negative();
    let mut out = Vec::with_capacity(hi_l - lo_l + 1);
    for m in &raw[lo_l..=hi_l] {
        let mut shifted = BTreeMap::new();
        for (&(te, me), c) in m {
            let c = if flip { -c } else { c.clone() };
            shifted.insert(((te - tmin) as u32, (me - mmin) as u32), c);
        }
        out.push(shifted);
    }
    Some(out)
}

/// Picks the best candidate from a nullspace basis: lowest effective order,
/// then fewest terms, then smallest term list. Ties cannot survive the last
/// comparison, so the choice is deterministic.
///
/// A two-dimensional nullspace usually means the caps leave one step of
/// t-shift slack, so the reduced basis mixes an operator with its t²-shifted
/// copy. Every support-minimal element of a plane either is a basis vector
/// or vanishes at a column where neither basis vector does, so adding the
/// column-vanishing combinations to the candidate pool recovers the pure
/// operator.
fn select_operator(
    basis: &[Vec<Rational>],
    dl: u32,
    dm: u32,
    dt: u32,
    fit: (u32, u32),
    holdout: (u32, u32),
) -> Option<RecurrenceOp> {
    let triples = column_triples(dl, dm, dt);
    let mut candidates: Vec<Vec<BigInt>> =
        basis.iter().map(|v| primitive_integer_vector(v)).collect();
    let mut combos = Vec::new();
    if let [w1, w2] = &candidates[..] {
        for c in 0..w1.len() {
            if !w1[c].is_zero() && !w2[c].is_zero() {
                let u: Vec<BigInt> =
                    (0..w1.len()).map(|j| &w2[c] * &w1[j] - &w1[c] * &w2[j]).collect();
                combos.push(u);
            }
        }
    }
    candidates.extend(combos);
    let mut best: Option<(usize, usize, Vec<BTreeMap<(u32, u32), BigInt>>)> = None;
    for v in &candidates {
        let Some(maps) = candidate_maps(v, &triples, dl) else { continue };
        let order = maps.len();
        let support: usize = maps.iter().map(|m| m.len()).sum();
        let better = match &best {
            None => true,
            Some((bo, bs, bm)) => (order, support, &maps) < (*bo, *bs, bm),
        };
        if better {
            best = Some((order, support, maps));
        }
    }
    let (_, _, maps) = best?;
    let coeffs: Vec<MultiPoly> = maps
        .iter()
        .map(|m| {
            let terms: Vec<(Vec<u32>, Rational)> = m
                .iter()
                .map(|(&(te, me), c)| (vec![te, me], Rational::from(c.clone())))
                .collect();
            MultiPoly::from_terms(&["t", "M"], &terms)
        })
        .collect();
    Some(RecurrenceOp { coeffs, dm, dt, fit, holdout })
}

/// Largest n with all of J_n .. J_{n+dl} in the table.
fn last_usable(table: &ColoredJonesTable, dl: u32) -> Option<u32> {
    table.max_color().checked_sub(dl)
}

/// Finds the operators of order exactly dl (allowing lower effective order
/// after normalization) annihilating every fitted row, or None when the caps
/// admit none. Errors when the table cannot overdetermine the system.
pub fn guess_recurrence(
    table: &ColoredJonesTable,
    dl: u32,
    dm: u32,
    dt: u32,
) -> Result<Option<RecurrenceOp>, QHoloError> {
    let cols = column_count(dl, dm, dt);
    let last = match last_usable(table, dl) {
        Some(last) if last >= FIRST_ROW => last,
        _ => return Err(QHoloError::TableTooSmall { needed: cols + EQUATION_MARGIN, have: 0 }),
    };
    let fit = (FIRST_ROW, last);
    let sys = FitSystem::new(table, dl, fit)?;
    let (equations, bound) = sys.prefilter(dm, dt);
    if equations < cols + EQUATION_MARGIN {
        return Err(QHoloError::TableTooSmall { needed: cols + EQUATION_MARGIN, have: equations });
    }
    if bound == 0 {
        return Ok(None);
    }
    let basis = sys.nullspace(dm, dt);
    if basis.is_empty() {
        return Ok(None);
    }
    Ok(select_operator(&basis, dl, dm, dt, fit, (1, 0)))
}

/// Whether the operator annihilates every table row in `from..=to`.
fn annihilates(
    op: &RecurrenceOp,
    table: &ColoredJonesTable,
    from: u32,
    to: u32,
) -> Result<bool, QHoloError> {
    for n in from..=to {
        if !apply_operator(op, table, n)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches caps in graded order — order first, then combined degree — and
/// returns the first operator that fits the early rows and annihilates the
/// held-out ones (and with them every usable row). The search within one
/// order is pruned by a single elimination at the outer caps: an empty
/// nullspace there rules out every smaller cap pair.
pub fn minimal_recurrence(
    table: &ColoredJonesTable,
    max_dl: u32,
    max_dm: u32,
    max_dt: u32,
) -> Result<RecurrenceOp, QHoloError> {
    for dl in 1..=max_dl {
        let Some(last) = last_usable(table, dl) else { continue };
        if last < FIRST_ROW + HOLDOUT_ROWS {
            continue;
        }
        let fit = (FIRST_ROW, last - HOLDOUT_ROWS);
        let holdout = (last - HOLDOUT_ROWS + 1, last);
        let sys = FitSystem::new(table, dl, fit)?;
        let (_, bound) = sys.prefilter(max_dm, max_dt);
        if bound == 0 {
            continue;
        }
        for s in 0..=(max_dm + max_dt) {
            for dm in s.saturating_sub(max_dt)..=s.min(max_dm) {
                let dt = s - dm;
                let cols = column_count(dl, dm, dt);
                let (equations, bound) = sys.prefilter(dm, dt);
                if equations < cols + EQUATION_MARGIN || bound == 0 {
                    continue;
                }
                let basis = sys.nullspace(dm, dt);
                if basis.is_empty() {
                    continue;
                }
                let Some(op) = select_operator(&basis, dl, dm, dt, fit, holdout) else {
                    continue;
                };
                if annihilates(&op, table, FIRST_ROW, last)? {
                    return Ok(op);
                }
            }
        }
    }
    Err(QHoloError::NotFound { max_dl, max_dm, max_dt })
}

/// α(-1, m, l) and its exact quotient by l - 1. The operator's coefficients
/// have only even t-exponents, so α(1) = α(-1) holds structurally; it is
/// asserted anyway. A failed quotient means the operator was a guessing
/// artifact and the caps must grow.
pub fn specialize_and_quotient(op: &RecurrenceOp) -> Result<AJWitness, QHoloError> {
    let minus_one = Rational::from(BigInt::from(-1));
    let plus_one = Rational::from(BigInt::from(1));
    let ell = MultiPoly::var("l");
    let mut alpha = MultiPoly::zero();
    for (i, a) in op.coeffs.iter().enumerate() {
        let at_minus = a.subst_rational("t", &minus_one).subst_var_pow("M", "m", 1);
        let at_plus = a.subst_rational("t", &plus_one).subst_var_pow("M", "m", 1);
        assert_eq!(at_minus, at_plus, "operator has odd t-exponents");
        alpha = &alpha + &(&at_minus * &ell.pow(i as u32));
    }
    if alpha.is_zero() {
        return Err(QHoloError::QuotientFailed);
    }
    let alpha = alpha.content_primitive().1.normalize_sign();
    let l_minus_1 = MultiPoly::from_int_terms(&["l"], &[(vec![1], 1), (vec![0], -1)]);
    let hat = alpha.try_div_exact(&l_minus_1).ok_or(QHoloError::QuotientFailed)?;
    let hat = hat.content_primitive().1.normalize_sign();
    Ok(AJWitness {
        alpha_at_minus1: alpha,
        hat_alpha: hat,
        verification_range: (window_len(op.fit), window_len(op.holdout)),
    })
}

/// Whether `t^{2a} M^b L^{dL} α(t, M^{-1}, L^{-1}) = ±α(t, M, L)` for some
/// integers a, b, in the quantum torus with LM = t²ML. Pushing L^{dL} through
/// M^{-me} costs t^{-2·dL·me}, so the reversed coefficient of L^i is
/// a_{dL-i} with each term (te, me) sent to (te - 2·dL·me, -me); the check
/// aligns both families at joint minimum exponents and compares.
pub fn operator_balance_check(op: &RecurrenceOp) -> bool {
    let dl = op.dl() as i64;
    let family = |reversed: bool| -> Vec<BTreeMap<(i64, i64), Rational>> {
        (0..=dl)
            .map(|i| {
                let src = if reversed { dl - i } else { i } as usize;
                poly_terms(&op.coeffs[src])
                    .into_iter()
                    .map(|((te, me), c)| {
                        let (te, me) = (te as i64, me as i64);
                        if reversed {
                            ((te - 2 * dl * me, -me), c)
                        } else {
                            ((te, me), c)
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let mins = |fam: &[BTreeMap<(i64, i64), Rational>]| -> (i64, i64) {
        let mut tmin = i64::MAX;
        let mut mmin = i64::MAX;
        for m in fam {
            for &(te, me) in m.keys() {
                tmin = tmin.min(te);
                mmin = mmin.min(me);
            }
        }
        (tmin, mmin)
    };
    let align = |fam: Vec<BTreeMap<(i64, i64), Rational>>| -> Vec<BTreeMap<(i64, i64), Rational>> {
        let (tmin, mmin) = mins(&fam);
        if tmin == i64::MAX {
            return fam;
        }
        fam.into_iter()
            .map(|m| m.into_iter().map(|((te, me), c)| ((te - tmin, me - mmin), c)).collect())
            .collect()
    };
    let forward = align(family(false));
    let reversed = align(family(true));
    let matches = |sign: i64| {
        forward.iter().zip(reversed.iter()).all(|(f, r)| {
            f.len() == r.len()
                && f.iter().all(|(k, c)| {
                    r.get(k).is_some_and(|rc| {
                        if sign > 0 {
                            rc == c
                        } else {
                            *rc == -c.clone()
                        }
                    })
                })
        })
    };
    matches(1) || matches(-1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cjones::{jones_table, BraidWord};

    fn table_for(strands: u32, letters: Vec<i32>, max: u32) -> ColoredJonesTable {
        let b = BraidWord::new(strands, letters).unwrap();
        jones_table(&b, max, None).unwrap()
    }

    fn unknot_table(max: u32) -> ColoredJonesTable {
        table_for(1, vec![], max)
    }

    fn trefoil_table(max: u32) -> ColoredJonesTable {
        table_for(2, vec![1, 1, 1], max)
    }

    /// t²(M²-1)L - (t⁴M²-1), the order-one annihilator of the unknot table.
    fn unknot_op() -> RecurrenceOp {
        let a0 = MultiPoly::from_int_terms(&["t", "M"], &[(vec![0, 0], 1), (vec![4, 2], -1)]);
        let a1 = MultiPoly::from_int_terms(&["t", "M"], &[(vec![2, 2], 1), (vec![2, 0], -1)]);
        RecurrenceOp::from_coeffs(vec![a0, a1])
    }

    #[test]
    fn zero_and_shift_operators_apply_exactly() {
        let table = trefoil_table(5);
        let zero = RecurrenceOp::from_coeffs(vec![MultiPoly::zero(), MultiPoly::zero()]);
        for n in 1..=4 {
            assert!(apply_operator(&zero, &table, n).unwrap().is_zero());
        }

        // f(n) = t^{2n} is annihilated by L - t².
        let entries: std::collections::BTreeMap<u32, LaurentPoly> = (1..=6)
            .map(|n| (n, LaurentPoly::from_int_terms(&[(2 * n as i64, 1)])))
            .collect();
        let geom = ColoredJonesTable::from_parts(BraidWord::new(1, vec![]).unwrap(), entries);
        let shift = RecurrenceOp::from_coeffs(vec![
            MultiPoly::from_int_terms(&["t"], &[(vec![2], -1)]),
            MultiPoly::one(),
        ]);
        for n in 1..=5 {
            assert!(apply_operator(&shift, &geom, n).unwrap().is_zero());
        }
        assert_eq!(
            apply_operator(&shift, &geom, 6).unwrap_err(),
            QHoloError::MissingEntry { n: 7 }
        );
    }

    #[test]
    fn unknot_annihilator_is_a_frozen_oracle() {
        let table = unknot_table(9);
        let op = unknot_op();
        for n in 1..=8 {
            assert!(apply_operator(&op, &table, n).unwrap().is_zero(), "row {n}");
        }
        let witness = specialize_and_quotient(&op).unwrap();
        let expected_alpha = MultiPoly::from_int_terms(
            &["m", "l"],
            &[(vec![2, 1], 1), (vec![0, 1], -1), (vec![2, 0], -1), (vec![0, 0], 1)],
        );
        let expected_hat =
            MultiPoly::from_int_terms(&["m"], &[(vec![2], 1), (vec![0], -1)]);
        assert_eq!(witness.alpha_at_minus1, expected_alpha);
        assert_eq!(witness.hat_alpha, expected_hat);
        assert!(crate::apoly::balanced_check(&witness.alpha_at_minus1).is_some());
    }

    #[test]
    fn guessing_recovers_the_unknot_annihilator() {
        let table = unknot_table(10);
        // The annihilator spreads over three steps of t², so it fits the
        // two-sided window at dt = 1 (as t^{-2}·op) and nothing smaller;
        // dropping the M cap to zero also finds nothing.
        assert_eq!(guess_recurrence(&table, 1, 1, 0).unwrap(), None);
        assert_eq!(guess_recurrence(&table, 1, 0, 1).unwrap(), None);
        let op = guess_recurrence(&table, 1, 1, 1).unwrap().unwrap();
        assert_eq!(op.coeffs(), unknot_op().coeffs());
        assert_eq!(op.caps(), (1, 1));
        assert_eq!(op.fit_window(), (2, 9));
    }

    #[test]
    fn guessing_below_the_true_order_finds_nothing() {
        let table = trefoil_table(10);
        assert_eq!(guess_recurrence(&table, 1, 4, 8).unwrap(), None);
    }

    #[test]
    fn insufficient_tables_error_instead_of_guessing() {
        let table = trefoil_table(5);
        match guess_recurrence(&table, 2, 6, 6) {
            Err(QHoloError::TableTooSmall { needed, have }) => {
                assert_eq!(needed, column_count(2, 6, 6) + EQUATION_MARGIN);
                assert!(have < needed);
            }
            other => panic!("expected TableTooSmall, got {other:?}"),
        }
    }

    #[test]
    fn minimal_recurrence_is_first_order_for_the_unknot() {
        let table = unknot_table(10);
        let op = minimal_recurrence(&table, 2, 2, 3).unwrap();
        assert_eq!(op.dl(), 1);
        assert_eq!(op.caps(), (1, 1));
        assert_eq!(op.fit_window(), (2, 6));
        assert_eq!(op.holdout_window(), (7, 9));
        assert_eq!(op.coeffs(), unknot_op().coeffs());
        assert!(operator_balance_check(&op));
    }

    /// a₀ = t² - t¹⁴M⁴, a₁ = -t²⁰M¹⁰ + t⁸M⁶ + t⁴M⁴ - 1, a₂ = t²²M¹⁰ - t¹⁸M⁶.
    fn trefoil_op() -> RecurrenceOp {
        let a0 = MultiPoly::from_int_terms(&["t", "M"], &[(vec![14, 4], -1), (vec![2, 0], 1)]);
        let a1 = MultiPoly::from_int_terms(
            &["t", "M"],
            &[(vec![20, 10], -1), (vec![8, 6], 1), (vec![4, 4], 1), (vec![0, 0], -1)],
        );
        let a2 = MultiPoly::from_int_terms(&["t", "M"], &[(vec![22, 10], 1), (vec![18, 6], -1)]);
        RecurrenceOp::from_coeffs(vec![a0, a1, a2])
    }

    #[test]
    fn minimal_recurrence_is_second_order_for_the_trefoil() {
        let table = trefoil_table(12);
        let op = minimal_recurrence(&table, 3, 8, 10).unwrap();
        assert_eq!(op.dl(), 2);
        assert_eq!(op.caps(), (5, 6));
        assert_eq!(op.fit_window(), (2, 7));
        assert_eq!(op.holdout_window(), (8, 10));
        assert_eq!(op.coeffs(), trefoil_op().coeffs());
        assert!(annihilates(&op, &table, 2, 10).unwrap());
        assert!(operator_balance_check(&op));
        let witness = specialize_and_quotient(&op).unwrap();
        let expected_alpha = MultiPoly::from_int_terms(
            &["m", "l"],
            &[
                (vec![10, 2], 1),
                (vec![10, 1], -1),
                (vec![6, 2], -1),
                (vec![6, 1], 1),
                (vec![4, 1], 1),
                (vec![4, 0], -1),
                (vec![0, 1], -1),
                (vec![0, 0], 1),
            ],
        );
        let expected_hat = MultiPoly::from_int_terms(
            &["m", "l"],
            &[(vec![10, 1], 1), (vec![6, 1], -1), (vec![4, 0], 1), (vec![0, 0], -1)],
        );
        assert_eq!(witness.alpha_at_minus1, expected_alpha);
        assert_eq!(witness.hat_alpha, expected_hat);
        assert!(crate::apoly::balanced_check(&witness.alpha_at_minus1).is_some());
    }

    #[test]
    fn larger_caps_still_produce_annihilating_operators() {
        let table = unknot_table(10);
        let op = guess_recurrence(&table, 1, 2, 3).unwrap().unwrap();
        assert_eq!(op.dl(), 1);
        assert!(annihilates(&op, &table, 2, 9).unwrap());
    }

    #[test]
    fn corrupted_tables_are_rejected() {
        let clean = unknot_table(10);
        let mut entries: std::collections::BTreeMap<u32, LaurentPoly> =
            (1..=10).map(|n| (n, clean.get(n as i64).unwrap())).collect();
        let bumped = &entries[&9] + &LaurentPoly::from_int_terms(&[(0, 1)]);
        entries.insert(9, bumped);
        let corrupt =
            ColoredJonesTable::from_parts(BraidWord::new(1, vec![]).unwrap(), entries);
        // The damaged row sits in every fit window, so guessing sees an
        // inconsistent system; the graded search then finds nothing to keep.
        assert_eq!(guess_recurrence(&corrupt, 1, 1, 2).unwrap(), None);
        assert_eq!(
            minimal_recurrence(&corrupt, 1, 2, 3),
            Err(QHoloError::NotFound { max_dl: 1, max_dm: 2, max_dt: 3 })
        );
    }

    #[test]
    fn specialization_requires_the_quotient_to_divide() {
        let op = RecurrenceOp::from_coeffs(vec![MultiPoly::one(), MultiPoly::one()]);
        assert_eq!(specialize_and_quotient(&op).unwrap_err(), QHoloError::QuotientFailed);
    }

    #[test]
    fn balance_detects_symmetry_and_its_absence() {
        assert!(operator_balance_check(&unknot_op()));
        let perturbed = RecurrenceOp::from_coeffs(vec![
            MultiPoly::from_int_terms(
                &["t", "M"],
                &[(vec![0, 0], 1), (vec![4, 2], -1), (vec![2, 2], 1)],
            ),
            MultiPoly::from_int_terms(&["t", "M"], &[(vec![2, 2], 1), (vec![2, 0], -1)]),
        ]);
        assert!(!operator_balance_check(&perturbed));
    }

    #[test]
    fn operators_round_trip_through_json() {
        let op = minimal_recurrence(&unknot_table(10), 2, 2, 3).unwrap();
        let json = op.to_json();
        let back = RecurrenceOp::from_json(&json).unwrap();
        assert_eq!(back, op);
        let text = serde_json::to_string(&json).unwrap();
        let reparsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(RecurrenceOp::from_json(&reparsed).unwrap(), op);
    }
}
