//! Checked-in braid presentations of small two-bridge knots.
//!
//! Every entry is validated by the tests: the closure must be a knot and the
//! Kauffman bracket determinant |V(q=-1)| must equal p, which is the knot
//! determinant of b(p,q).

use std::sync::OnceLock;

use serde::Deserialize;

use super::BraidWord;
use crate::twobridge::TwoBridgeKnot;

#[derive(Debug, Clone, Deserialize)]
pub struct CatalogEntry {
    pub p: u64,
    pub q: u64,
    pub strands: u32,
    pub braid: Vec<i32>,
}

impl CatalogEntry {
    pub fn braid_word(&self) -> BraidWord {
        BraidWord::new(self.strands, self.braid.clone()).expect("catalog braid letters are valid")
    }
}

static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();

/// The full checked-in catalog, ordered by (p, q).
pub fn catalog() -> &'static [CatalogEntry] {
    CATALOG.get_or_init(|| {
        serde_json::from_str(include_str!("../../data/braid_catalog.json"))
            .expect("catalog data parses")
    })
}

/// Braid presentation of a knot, if its equivalence class is in the catalog.
pub fn braid_for(k: &TwoBridgeKnot) -> Option<BraidWord> {
    catalog().iter().find_map(|e| {
        let cand = TwoBridgeKnot::new(e.p as i64, e.q as i64).ok()?;
        if k.is_equivalent_to(&cand) {
            Some(e.braid_word())
        } else {
            None
        }
    })
}
