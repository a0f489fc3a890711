//! Exact homology of block-graded integer complexes.
//!
//! Integer coefficients give free ranks and torsion through Smith normal
//! form; rational and prime-field dimensions are derived from the same
//! invariant factors, so one factorization per matrix serves every
//! coefficient choice.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::snf::{smith_normal_form, SmithForm};
use crate::tqft::{GradedComplex, Mode};

/// Coefficient ring for a homology run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coeff {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl Coeff {
    pub fn parse(s: &str) -> Option<Coeff> {
        match s {
            "Z" => Some(Coeff::Integers),
            "Q" => Some(Coeff::Rationals),
            "F2" => Some(Coeff::PrimeField(2)),
            _ => {
                let p = s.strip_prefix("Fp:")?.parse::<u64>().ok()?;
                is_prime(p).then_some(Coeff::PrimeField(p))
            }
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Integers => write!(f, "Z"),
            Coeff::Rationals => write!(f, "Q"),
            Coeff::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Triple grading; ordered by `(k, q, h)` to match the serialized layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grading {
    pub h: i32,
    pub q: i32,
    pub k: i32,
}

impl Ord for Grading {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.k, self.q, self.h).cmp(&(other.k, other.q, other.h))
    }
}

impl PartialOrd for Grading {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// One homology group: free rank plus invariant factors in divisibility
/// order (every factor exceeds 1; fields carry no torsion).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupEntry {
    pub free: usize,
    pub torsion: Vec<BigInt>,
}

impl GroupEntry {
    pub fn is_trivial(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for GroupEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Homology of a graded complex, indexed by the triple grading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedGroup {
    pub mode: Mode,
    pub coeff: Coeff,
    entries: BTreeMap<Grading, GroupEntry>,
}

impl GradedGroup {
    pub(crate) fn from_parts(
        mode: Mode,
        coeff: Coeff,
        entries: BTreeMap<Grading, GroupEntry>,
    ) -> Self {
        GradedGroup { mode, coeff, entries }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Grading, &GroupEntry)> {
        self.entries.iter()
    }

    pub fn entry(&self, h: i32, q: i32, k: i32) -> GroupEntry {
        self.entries.get(&Grading { h, q, k }).cloned().unwrap_or_default()
    }

    pub fn total_free(&self) -> usize {
        self.entries.values().map(|e| e.free).sum()
    }

    pub fn total_torsion(&self) -> usize {
        self.entries.values().map(|e| e.torsion.len()).sum()
    }

    pub fn has_torsion(&self) -> bool {
        self.total_torsion() > 0
    }

    /// Free rank per homological degree.
    pub fn free_by_h(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for (g, e) in &self.entries {
            if e.free > 0 {
                *out.entry(g.h).or_default() += e.free;
            }
        }
        out
    }

    /// Free rank per winding degree.
    pub fn free_by_k(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for (g, e) in &self.entries {
            if e.free > 0 {
                *out.entry(g.k).or_default() += e.free;
            }
        }
        out
    }

    /// Alternating sum of free ranks over `h`, per `(q, k)`.
    pub fn euler_by_block(&self) -> BTreeMap<(i32, i32), i64> {
        let mut out = BTreeMap::new();
        for (g, e) in &self.entries {
            let sign = if g.h.rem_euclid(2) == 0 { 1 } else { -1 };
            *out.entry((g.q, g.k)).or_default() += sign * e.free as i64;
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Entry {
            h: i32,
            q: i32,
            k: i32,
            free: usize,
            torsion: Vec<u64>,
        }
        let entries: Vec<Entry> = self
            .entries
            .iter()
            .map(|(g, e)| Entry {
                h: g.h,
                q: g.q,
                k: g.k,
                free: e.free,
                torsion: e
                    .torsion
                    .iter()
                    .map(|t| t.to_u64().expect("torsion factor exceeds u64"))
                    .collect(),
            })
            .collect();
        let mode = match self.mode {
            Mode::Annular => "annular",
            Mode::Plain => "plain",
        };
        let mut obj = serde_json::json!({
            "mode": mode,
            "coeff": match self.coeff {
                Coeff::Integers => "Z",
                Coeff::Rationals => "Q",
                Coeff::PrimeField(_) => "Fp",
            },
            "entries": serde_json::to_value(entries).unwrap(),
        });
        if let Coeff::PrimeField(p) = self.coeff {
            obj["p"] = serde_json::json!(p);
        }
        obj
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} homology over {}", match self.mode {
            Mode::Annular => "annular",
            Mode::Plain => "plain",
        }, self.coeff)?;
        writeln!(f, "{:>4} {:>4} {:>4}  group", "h", "q", "k")?;
        let field = match self.coeff {
            Coeff::Integers => None,
            Coeff::Rationals => Some("Q".to_string()),
            Coeff::PrimeField(p) => Some(format!("F{p}")),
        };
        for (g, e) in &self.entries {
            match &field {
                None => writeln!(f, "{:>4} {:>4} {:>4}  {}", g.h, g.q, g.k, e)?,
                Some(name) if e.free == 1 => {
                    writeln!(f, "{:>4} {:>4} {:>4}  {}", g.h, g.q, g.k, name)?
                }
                Some(name) => {
                    writeln!(f, "{:>4} {:>4} {:>4}  {}^{}", g.h, g.q, g.k, name, e.free)?
                }
            }
        }
        Ok(())
    }
}

/// Homology of every block, over the requested coefficients.
pub fn homology(complex: &GradedComplex, coeff: Coeff) -> GradedGroup {
    let blocks: Vec<_> = complex.blocks().collect();
    let per_block: Vec<Vec<(Grading, GroupEntry)>> = blocks
        .par_iter()
        .map(|(key, block)| {
            // One Smith form per boundary matrix in the block.
            let forms: BTreeMap<i32, SmithForm> = block
                .h_range()
                .filter_map(|h| block.matrix(h).map(|m| (h, smith_normal_form(m))))
                .collect();
            let rank = |h: i32| -> usize {
                forms.get(&h).map_or(0, |f| match coeff {
                    Coeff::Integers | Coeff::Rationals => f.rank,
                    Coeff::PrimeField(p) => f.rank_mod(p),
                })
            };
            block
                .h_range()
                .filter_map(|h| {
                    let dim = block.dim(h);
                    let free = dim - rank(h) - rank(h - 1);
                    let torsion: Vec<BigInt> = match coeff {
                        Coeff::Integers => forms
                            .get(&(h - 1))
                            .map(|f| f.factors.clone())
                            .unwrap_or_default(),
                        _ => Vec::new(),
                    };
                    let entry = GroupEntry { free, torsion };
                    (!entry.is_trivial())
                        .then(|| (Grading { h, q: key.q, k: key.k }, entry))
                })
                .collect()
        })
        .collect();
    let mut entries = BTreeMap::new();
    for list in per_block {
        for (g, e) in list {
            entries.insert(g, e);
        }
    }
    GradedGroup { mode: complex.mode, coeff, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::SliceWord;
    use crate::tqft::{assemble, assemble_with, AssembleOptions};

    fn word(text: &str) -> SliceWord {
        SliceWord::parse(text).unwrap()
    }

    #[test]
    fn coeff_parsing() {
        assert_eq!(Coeff::parse("Z"), Some(Coeff::Integers));
        assert_eq!(Coeff::parse("Q"), Some(Coeff::Rationals));
        assert_eq!(Coeff::parse("F2"), Some(Coeff::PrimeField(2)));
        assert_eq!(Coeff::parse("Fp:7"), Some(Coeff::PrimeField(7)));
        assert_eq!(Coeff::parse("Fp:6"), None);
        assert_eq!(Coeff::parse("R"), None);
    }

    #[test]
    fn core_circle_annular_homology() {
        let cx = assemble(&word("strands 1\n"), Mode::Annular).unwrap();
        let g = homology(&cx, Coeff::Integers);
        assert_eq!(g.entry(0, 1, 1), GroupEntry { free: 1, torsion: vec![] });
        assert_eq!(g.entry(0, -1, -1), GroupEntry { free: 1, torsion: vec![] });
        assert_eq!(g.total_free(), 2);
        assert!(!g.has_torsion());
    }

    #[test]
    fn sigma1_closure_annular_profile() {
        let cx = assemble(&word("strands 2\nP 1\n"), Mode::Annular).unwrap();
        let g = homology(&cx, Coeff::Rationals);
        assert_eq!(g.free_by_k(), BTreeMap::from([(-2, 1), (0, 2), (2, 1)]));
        assert_eq!(g.total_free(), 4);
    }

    #[test]
    fn sigma1_closure_plain_is_unknot() {
        let cx = assemble(&word("strands 2\nP 1\n"), Mode::Plain).unwrap();
        let g = homology(&cx, Coeff::Integers);
        assert_eq!(g.total_free(), 2);
        assert!(!g.has_torsion());
        assert_eq!(g.entry(0, 1, 0).free, 1);
        assert_eq!(g.entry(0, -1, 0).free, 1);
    }

    #[test]
    fn unknot_in_ball_plain() {
        for text in ["strands 0\nU 1\nA 1\n", "strands 0\nU 1\nP 1\nA 1\n"] {
            let g = homology(&assemble(&word(text), Mode::Plain).unwrap(), Coeff::Integers);
            assert_eq!(g.total_free(), 2, "word {text:?}");
            assert!(!g.has_torsion());
        }
    }

    #[test]
    fn trefoil_in_ball_integer_homology() {
        // Plat closure of sigma_2^3 on four strands: the right-handed trefoil.
        let w = word("strands 0\nU 1\nU 1\nP 2\nP 2\nP 2\nA 1\nA 1\n");
        let g = homology(&assemble(&w, Mode::Plain).unwrap(), Coeff::Integers);
        assert_eq!(g.total_free(), 4);
        assert_eq!(g.total_torsion(), 1);
        assert_eq!(g.entry(0, 1, 0).free, 1);
        assert_eq!(g.entry(0, 3, 0).free, 1);
        assert_eq!(g.entry(2, 5, 0).free, 1);
        assert_eq!(g.entry(3, 9, 0).free, 1);
        assert_eq!(g.entry(3, 7, 0).torsion, vec![BigInt::from(2)]);
    }

    #[test]
    fn hopf_link_in_ball() {
        let w = word("strands 0\nU 1\nU 1\nP 2\nP 2\nA 1\nA 1\n");
        let g = homology(&assemble(&w, Mode::Plain).unwrap(), Coeff::Rationals);
        assert_eq!(g.total_free(), 4);
        assert_eq!(g.free_by_h(), BTreeMap::from([(0, 2), (2, 2)]));
    }

    #[test]
    fn in_ball_words_are_supported_at_k_zero() {
        let w = word("strands 0\nU 1\nU 1\nP 2\nP 2\nP 2\nA 1\nA 1\n");
        let g = homology(&assemble(&w, Mode::Annular).unwrap(), Coeff::Integers);
        assert!(g.entries().all(|(grad, _)| grad.k == 0));
        let plain = homology(&assemble(&w, Mode::Plain).unwrap(), Coeff::Integers);
        let strip_k: Vec<(i32, i32, GroupEntry)> = g
            .entries()
            .map(|(grad, e)| (grad.h, grad.q, e.clone()))
            .collect();
        let plain_entries: Vec<(i32, i32, GroupEntry)> = plain
            .entries()
            .map(|(grad, e)| (grad.h, grad.q, e.clone()))
            .collect();
        assert_eq!(strip_k, plain_entries);
    }

    #[test]
    fn euler_characteristic_preserved_by_homology() {
        let w = SliceWord::from_braid(2, &[1, 1]).unwrap();
        let cx = assemble(&w, Mode::Annular).unwrap();
        let g = homology(&cx, Coeff::Rationals);
        let mut chain: BTreeMap<(i32, i32), i64> = BTreeMap::new();
        for (key, block) in cx.blocks() {
            *chain.entry((key.q, key.k)).or_default() += block.euler_characteristic();
        }
        chain.retain(|_, v| *v != 0);
        let mut hom = g.euler_by_block();
        hom.retain(|_, v| *v != 0);
        assert_eq!(chain, hom);
    }

    #[test]
    fn f2_rank_dominates_rational_rank() {
        let w = word("strands 0\nU 1\nU 1\nP 2\nP 2\nP 2\nA 1\nA 1\n");
        let cx = assemble(&w, Mode::Plain).unwrap();
        let q = homology(&cx, Coeff::Rationals);
        let f2 = homology(&cx, Coeff::PrimeField(2));
        assert!(f2.total_free() >= q.total_free());
        // The trefoil's Z/2 contributes to two adjacent degrees over F2.
        assert_eq!(f2.total_free(), q.total_free() + 2);
    }

    #[test]
    fn crossing_reorder_invariance() {
        let w = SliceWord::from_braid(3, &[1, -2, 1]).unwrap();
        let base = homology(&assemble(&w, Mode::Annular).unwrap(), Coeff::Integers);
        for order in [vec![2, 1, 0], vec![1, 2, 0], vec![2, 0, 1]] {
            let opts = AssembleOptions { order: Some(order), ..Default::default() };
            let cx = assemble_with(&w, Mode::Annular, &opts).unwrap();
            let g = homology(&cx, Coeff::Integers);
            assert_eq!(g, base);
        }
    }

    #[test]
    fn json_shape() {
        let g = homology(&assemble(&word("strands 1\n"), Mode::Annular).unwrap(), Coeff::Integers);
        let v = g.to_json();
        assert_eq!(v["mode"], "annular");
        assert_eq!(v["coeff"], "Z");
        assert_eq!(v["entries"][0]["k"], -1);
        assert_eq!(v["entries"][1]["free"], 1);
    }
}
