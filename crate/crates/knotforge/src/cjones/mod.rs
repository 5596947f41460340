//! Colored Jones polynomials of knots presented as closed braids.
//!
//! The engine applies the n-dimensional quantum sl2 braiding (variable t,
//! q = t^4) letter by letter to dense tensor vectors, closes up with the
//! enhanced trace, and corrects for framing by t^{-w(n²-1)}.  Values are
//! normalized so the unknot at color n is the quantum integer [n], and the
//! conventions are pinned empirically: the closure of sigma_1^3 at n = 2
//! reproduces the classical Jones polynomial of the right trefoil, and the
//! Kauffman bracket oracle in `bracket` must agree at n = 2.

mod bracket;
mod catalog;
mod rmatrix;

pub use bracket::{determinant_from_jones, kauffman_bracket_jones, CROSSING_BUDGET};
pub use catalog::{braid_for, catalog, CatalogEntry};

use std::collections::BTreeMap;
use std::error::Error;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactalg::{LaurentPoly, Rational};
use rmatrix::{apply_at, quantum_int_zl, RMatrix, ZL};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BraidError {
    LetterOutOfRange { letter: i32, strands: u32 },
    ClosureNotKnot { cycles: usize },
    ColorTooSmall,
    TooManyCrossings { crossings: usize, budget: usize },
}

impl fmt::Display for BraidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BraidError::LetterOutOfRange { letter, strands } => write!(
                f,
                "braid letter {letter} out of range for {strands} strand(s)"
            ),
            BraidError::ClosureNotKnot { cycles } => write!(
                f,
                "braid closure has {cycles} components, expected a knot"
            ),
            BraidError::ColorTooSmall => write!(f, "colored Jones color must be at least 1"),
            BraidError::TooManyCrossings { crossings, budget } => write!(
                f,
                "diagram has {crossings} crossings, state-sum budget is {budget}"
            ),
        }
    }
}

impl Error for BraidError {}

/// A word in the braid group B_k: letter i (1-based) is the positive crossing
/// of strands i, i+1; negative letters are inverse crossings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: u32,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: u32, letters: Vec<i32>) -> Result<Self, BraidError> {
        assert!(strands >= 1, "a braid needs at least one strand");
        for &l in &letters {
            if l == 0 || l.unsigned_abs() >= strands {
                return Err(BraidError::LetterOutOfRange { letter: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// Underlying permutation, as the array sending final position to the
    /// starting position of the strand that ends there.
    pub fn permutation(&self) -> Vec<usize> {
        let mut p: Vec<usize> = (0..self.strands as usize).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            p.swap(i, i + 1);
        }
        p
    }

    /// Number of components of the braid closure.
    pub fn permutation_cycles(&self) -> usize {
        let p = self.permutation();
        let mut seen = vec![false; p.len()];
        let mut cycles = 0;
        for start in 0..p.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = p[x];
            }
        }
        cycles
    }

    pub fn closure_is_knot(&self) -> bool {
        self.permutation_cycles() == 1
    }

    /// Cyclic rotation of the word; the closure is unchanged.
    pub fn cycled(&self, rot: usize) -> BraidWord {
        let mut letters = self.letters.clone();
        let len = letters.len().max(1);
        letters.rotate_left(rot % len);
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// Markov stabilization: one more strand, one more crossing; the closure
    /// is unchanged.
    pub fn stabilized(&self, positive: bool) -> BraidWord {
        let mut letters = self.letters.clone();
        let l = self.strands as i32;
        letters.push(if positive { l } else { -l });
        BraidWord {
            strands: self.strands + 1,
            letters,
        }
    }

    pub fn mirror(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().map(|l| -l).collect(),
        }
    }

    /// Stable content hash used as the cache key.
    pub fn id_hash(&self) -> u64 {
        let mut h = 0xcbf2_9ce4_8422_2325u64;
        let mut eat = |byte: u8| {
            h ^= byte as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        };
        for b in self.strands.to_le_bytes() {
            eat(b);
        }
        for l in &self.letters {
            for b in l.to_le_bytes() {
                eat(b);
            }
        }
        h
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}[", self.strands)?;
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

/// Quantum integer [n] = (t^{2n} - t^{-2n}) / (t^2 - t^{-2}); the colored
/// Jones value of the unknot at color n.
pub fn quantum_integer(n: u32) -> LaurentPoly {
    quantum_int_zl(n as usize).to_laurent()
}

/// Colored Jones polynomial of the braid closure at color n (the n-dimensional
/// representation), zero framing, normalized to [n] on the unknot.
pub fn colored_jones(b: &BraidWord, n: u32) -> Result<LaurentPoly, BraidError> {
    if n == 0 {
        return Err(BraidError::ColorTooSmall);
    }
    let cycles = b.permutation_cycles();
    if cycles != 1 {
        return Err(BraidError::ClosureNotKnot { cycles });
    }
    let nn = n as usize;
    let k = b.strands as usize;
    let r = RMatrix::new(nn);
    let strides: Vec<usize> = (0..k).map(|s| nn.pow(s as u32)).collect();
    let dim = nn.pow(k as u32);
    let starts = nn.pow(k as u32 - 1);
    // The closure cut open along strand 0 is a (1,1)-tangle, hence a scalar
    // on the irreducible representation: it suffices to propagate the states
    // e_0 ⊗ y and take the enhanced partial trace over y.
    let lambda = (0..starts)
        .into_par_iter()
        .map(|y| {
            let idx0 = y * nn;
            let mut v = vec![ZL::zero(); dim];
            v[idx0] = ZL::one();
            for &letter in &b.letters {
                v = apply_at(&v, letter.unsigned_abs() as usize - 1, letter > 0, &r, nn, &strides);
            }
            let diag = std::mem::take(&mut v[idx0]);
            if diag.is_zero() {
                return ZL::zero();
            }
            let mut mu = 0i64;
            let mut rest = y;
            for _ in 1..k {
                let d = (rest % nn) as i64;
                rest /= nn;
                mu += 2 * (nn as i64 - 1 - 2 * d);
            }
            diag.shift(mu)
        })
        .reduce(ZL::zero, |mut a, b| {
            a.add_assign(&b);
            a
        });
    let framing = -b.writhe() * ((n as i64) * (n as i64) - 1);
    Ok(lambda.mul(&quantum_int_zl(nn)).shift(framing).to_laurent())
}

/// Colored Jones values of one braid closure for colors 1..=max_color, with
/// the sign conventions J_0 = 0 and J_{-n} = -J_n available through `get`.
#[derive(Debug, Clone, PartialEq)]
pub struct ColoredJonesTable {
    braid: BraidWord,
    entries: BTreeMap<u32, LaurentPoly>,
}

impl ColoredJonesTable {
    /// Assembles a table from precomputed entries; used by recurrence tests
    /// that need hand-built or deliberately damaged tables.
    #[cfg(test)]
    pub(crate) fn from_parts(braid: BraidWord, entries: BTreeMap<u32, LaurentPoly>) -> Self {
        ColoredJonesTable { braid, entries }
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn max_color(&self) -> u32 {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }

    pub fn get(&self, n: i64) -> Option<LaurentPoly> {
        if n == 0 {
            return Some(LaurentPoly::zero());
        }
        let entry = self.entries.get(&u32::try_from(n.unsigned_abs()).ok()?)?;
        Some(if n < 0 { -entry } else { entry.clone() })
    }
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    strands: u32,
    letters: Vec<i32>,
    n: u32,
    terms: Vec<(i64, String)>,
}

fn cache_path(dir: &Path, b: &BraidWord, n: u32) -> PathBuf {
    dir.join(format!("jones-{:016x}-n{}.json", b.id_hash(), n))
}

fn cache_load(dir: &Path, b: &BraidWord, n: u32) -> Option<LaurentPoly> {
    let text = fs::read_to_string(cache_path(dir, b, n)).ok()?;
    let entry: CacheEntry = serde_json::from_str(&text).ok()?;
    if entry.strands != b.strands || entry.letters != b.letters || entry.n != n {
        return None;
    }
    let mut terms = Vec::with_capacity(entry.terms.len());
    for (e, c) in &entry.terms {
        let coeff = BigInt::parse_bytes(c.as_bytes(), 10)?;
        terms.push((*e, Rational::from(coeff)));
    }
    Some(LaurentPoly::from_terms(&terms))
}

fn cache_store(dir: &Path, b: &BraidWord, n: u32, j: &LaurentPoly) {
    // Best effort: a failed write only costs a recompute next time.
    if fs::create_dir_all(dir).is_err() {
        return;
    }
    let terms: Vec<(i64, String)> = j
        .terms()
        .map(|(e, c)| {
            debug_assert!(c.is_integer());
            (*e, c.numer().to_string())
        })
        .collect();
    let entry = CacheEntry {
        strands: b.strands,
        letters: b.letters.clone(),
        n,
        terms,
    };
    let path = cache_path(dir, b, n);
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    if let Ok(text) = serde_json::to_string(&entry) {
        if fs::write(&tmp, text).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }
}

/// Compute (or load from `cache_dir`) the colored Jones table of a braid
/// closure for colors 1..=max_color.  Cache entries are one JSON file per
/// color, written atomically and keyed by a content hash of the braid word.
pub fn jones_table(
    b: &BraidWord,
    max_color: u32,
    cache_dir: Option<&Path>,
) -> Result<ColoredJonesTable, BraidError> {
    let mut entries = BTreeMap::new();
    for n in 1..=max_color {
        if let Some(dir) = cache_dir {
            if let Some(j) = cache_load(dir, b, n) {
                entries.insert(n, j);
                continue;
            }
        }
        let j = colored_jones(b, n)?;
        if let Some(dir) = cache_dir {
            cache_store(dir, b, n, &j);
        }
        entries.insert(n, j);
    }
    Ok(ColoredJonesTable {
        braid: b.clone(),
        entries,
    })
}
