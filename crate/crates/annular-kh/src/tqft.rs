//! Assembly of the cube complex: the full Khovanov differential `D` and
//! its winding-preserving part `D0`.
//!
//! Every circle carries the same rank-2 module and every edge map applies
//! the Frobenius multiplication/comultiplication to the circles it touches.
//! The annular differential is the winding-degree-0 truncation of that map;
//! the twelve annular merge/split rules fall out of the truncation rather
//! than being special-cased.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::cube::{
    edge_incidence, gradings, labels_from_mask, EdgeIncidence, MergeOrSplit, ResolutionCache,
    ResolvedState, Sign, Vertex,
};
use crate::diagram::SliceWord;
use crate::snf::SparseIntMat;

/// Which differential the complex carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Winding-preserving differential `D0`; blocks are graded by `(q, k)`.
    Annular,
    /// Full differential `D`; blocks are graded by `q` only.
    Plain,
}

/// Grading key of a block. Ordered by `(k, q)` so serialized output is
/// sorted the way the JSON schema wants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct BlockKey {
    pub k: i32,
    pub q: i32,
}

/// One chain generator inside a block level: vertex bits, label bits
/// (set bit means `+`), and the winding grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct GenInfo {
    pub vertex: u64,
    pub labels: u64,
    pub k: i32,
}

/// A single `(q, k)` block: generators per homological degree and the
/// boundary matrices between consecutive degrees.
#[derive(Debug, Clone)]
pub struct Block {
    h_min: i32,
    levels: Vec<Vec<GenInfo>>,
    mats: Vec<SparseIntMat>,
}

impl Block {
    pub fn h_min(&self) -> i32 {
        self.h_min
    }

    pub fn h_range(&self) -> impl Iterator<Item = i32> + '_ {
        self.h_min..self.h_min + self.levels.len() as i32
    }

    pub fn dim(&self, h: i32) -> usize {
        self.level(h).map_or(0, |l| l.len())
    }

    pub fn level(&self, h: i32) -> Option<&[GenInfo]> {
        if h < self.h_min {
            return None;
        }
        self.levels.get((h - self.h_min) as usize).map(|v| v.as_slice())
    }

    /// Boundary matrix leaving degree `h`, if one exists.
    pub fn matrix(&self, h: i32) -> Option<&SparseIntMat> {
        if h < self.h_min {
            return None;
        }
        self.mats.get((h - self.h_min) as usize)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.h_range()
            .map(|h| {
                let sign = if h.rem_euclid(2) == 0 { 1 } else { -1 };
                sign * self.dim(h) as i64
            })
            .sum()
    }
}

/// Block-graded sparse integer cochain complex.
#[derive(Debug, Clone)]
pub struct GradedComplex {
    pub mode: Mode,
    seam_width: usize,
    blocks: BTreeMap<BlockKey, Block>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AssembleError {
    #[error("cube with {vertices} vertices and about {generators} generators exceeds the budget of {budget}")]
    Budget { vertices: u128, generators: u128, budget: u128 },
    #[error("crossing order must be a permutation of 0..{expected}")]
    BadOrder { expected: usize },
}

/// Assembly knobs. `corrupt_signs` drops all edge signs; it exists so the
/// self-test can demonstrate that the `d^2 = 0` audit actually fires.
#[derive(Debug, Clone)]
pub struct AssembleOptions {
    pub max_generators: u128,
    pub order: Option<Vec<usize>>,
    pub corrupt_signs: bool,
}

impl Default for AssembleOptions {
    fn default() -> Self {
        AssembleOptions { max_generators: 8_000_000, order: None, corrupt_signs: false }
    }
}

/// Sign of the edge `v -> v + e_i`: parity of the vertex bits above `i`.
pub fn edge_sign(v: Vertex, i: usize) -> i64 {
    debug_assert!(!v.bit(i));
    if v.weight_above(i) % 2 == 0 {
        1
    } else {
        -1
    }
}

fn merge_label(a: Sign, b: Sign) -> Option<Sign> {
    match (a, b) {
        (Sign::Plus, Sign::Plus) => Some(Sign::Plus),
        (Sign::Plus, Sign::Minus) | (Sign::Minus, Sign::Plus) => Some(Sign::Minus),
        (Sign::Minus, Sign::Minus) => None,
    }
}

fn split_labels(s: Sign) -> &'static [(Sign, Sign)] {
    match s {
        Sign::Plus => &[(Sign::Plus, Sign::Minus), (Sign::Minus, Sign::Plus)],
        Sign::Minus => &[(Sign::Minus, Sign::Minus)],
    }
}

/// The unsigned edge map on labelings, as `(source mask, target mask)`
/// pairs with coefficient +1. In annular mode only winding-preserving
/// terms survive, which reproduces the twelve annular merge/split rules.
pub fn edge_label_map(
    inc: &EdgeIncidence,
    src: &ResolvedState,
    dst: &ResolvedState,
    mode: Mode,
) -> Vec<(u64, u64)> {
    let src_n = src.circle_count();
    let mut out = Vec::new();
    for mask in 0..1u64 << src_n {
        let labels = labels_from_mask(mask, src_n);
        let mut carried = 0u64;
        for (s, t) in inc.carry.iter().enumerate() {
            if let Some(t) = t {
                if mask >> s & 1 == 1 {
                    carried |= 1 << t;
                }
            }
        }
        let mut targets: Vec<u64> = Vec::new();
        match &inc.op {
            MergeOrSplit::Merge { from, to } => {
                if let Some(lbl) = merge_label(labels[from[0].id], labels[from[1].id]) {
                    let mut t = carried;
                    if lbl == Sign::Plus {
                        t |= 1 << to.id;
                    }
                    targets.push(t);
                }
            }
            MergeOrSplit::Split { from, to } => {
                for (la, lb) in split_labels(labels[from.id]) {
                    let mut t = carried;
                    if *la == Sign::Plus {
                        t |= 1 << to[0].id;
                    }
                    if *lb == Sign::Plus {
                        t |= 1 << to[1].id;
                    }
                    targets.push(t);
                }
            }
        }
        if mode == Mode::Annular {
            let src_k = winding_grade(src, mask);
            targets.retain(|&t| winding_grade(dst, t) == src_k);
        }
        out.extend(targets.into_iter().map(|t| (mask, t)));
    }
    out
}

fn winding_grade(state: &ResolvedState, mask: u64) -> i32 {
    state
        .circles()
        .iter()
        .filter(|c| c.is_nontrivial())
        .map(|c| if mask >> c.id & 1 == 1 { 1 } else { -1 })
        .sum()
}

/// Builds the block-graded complex of a diagram.
pub fn assemble(word: &SliceWord, mode: Mode) -> Result<GradedComplex, AssembleError> {
    assemble_with(word, mode, &AssembleOptions::default())
}

pub fn assemble_with(
    word: &SliceWord,
    mode: Mode,
    opts: &AssembleOptions,
) -> Result<GradedComplex, AssembleError> {
    let c = word.crossings();
    if c > 24 {
        return Err(AssembleError::Budget {
            vertices: 1u128 << c,
            generators: 1u128 << c,
            budget: opts.max_generators,
        });
    }
    let order: Vec<usize> = match &opts.order {
        Some(o) => {
            let mut seen = vec![false; c];
            if o.len() != c || o.iter().any(|&i| i >= c || std::mem::replace(&mut seen[i], true)) {
                return Err(AssembleError::BadOrder { expected: c });
            }
            o.clone()
        }
        None => (0..c).collect(),
    };
    // Cube coordinate j controls word crossing order[j].
    let to_word_bits = |cube: u64| -> u64 {
        let mut bits = 0u64;
        for (j, &i) in order.iter().enumerate() {
            if cube >> j & 1 == 1 {
                bits |= 1 << i;
            }
        }
        bits
    };

    let cache = ResolutionCache::new(word);
    let vertex_count = 1u64 << c;

    // Budget check before any generator is allocated.
    let estimate: u128 = (0..vertex_count)
        .into_par_iter()
        .map(|bits| 1u128 << cache.resolve(Vertex::new(bits)).circle_count())
        .sum();
    if estimate > opts.max_generators {
        return Err(AssembleError::Budget {
            vertices: vertex_count as u128,
            generators: estimate,
            budget: opts.max_generators,
        });
    }

    // Enumerate generators, grouped by block and homological degree.
    let gen_lists: Vec<(BlockKey, i32, GenInfo)> = (0..vertex_count)
        .into_par_iter()
        .flat_map_iter(|cube_bits| {
            let wv = Vertex::new(to_word_bits(cube_bits));
            let state = cache.resolve(wv);
            let n = state.circle_count();
            let word = cache.word();
            (0..1u64 << n).map(move |mask| {
                let labels = labels_from_mask(mask, n);
                let (h, q, k) = gradings(word, &state, wv, &labels);
                let key = match mode {
                    Mode::Annular => BlockKey { q, k },
                    Mode::Plain => BlockKey { q, k: 0 },
                };
                (key, h, GenInfo { vertex: cube_bits, labels: mask, k })
            })
        })
        .collect();

    let mut grouped: BTreeMap<BlockKey, BTreeMap<i32, Vec<GenInfo>>> = BTreeMap::new();
    for (key, h, info) in gen_lists {
        grouped.entry(key).or_default().entry(h).or_default().push(info);
    }
    let mut blocks: BTreeMap<BlockKey, Block> = grouped
        .into_iter()
        .map(|(key, by_h)| {
            let h_min = *by_h.keys().next().unwrap();
            let h_max = *by_h.keys().last().unwrap();
            let mut levels = vec![Vec::new(); (h_max - h_min + 1) as usize];
            for (h, mut gens) in by_h {
                gens.sort_unstable();
                levels[(h - h_min) as usize] = gens;
            }
            (key, Block { h_min, levels, mats: Vec::new() })
        })
        .collect();

    // Edge pass: triplets per (block, source level).
    let triplets: Vec<(BlockKey, i32, (usize, usize, i64))> = (0..vertex_count)
        .into_par_iter()
        .flat_map_iter(|cube_bits| {
            let v_cube = Vertex::new(cube_bits);
            let wv = Vertex::new(to_word_bits(cube_bits));
            let src = cache.resolve(wv);
            let word = cache.word();
            let mut local = Vec::new();
            for j in 0..c {
                if v_cube.bit(j) {
                    continue;
                }
                let u_cube = v_cube.with_bit(j);
                let wu = Vertex::new(to_word_bits(u_cube.bits()));
                let dst = cache.resolve(wu);
                let word_i = order[j];
                let inc = edge_incidence(word, wv, word_i, &src, &dst);
                let sign = if opts.corrupt_signs { 1 } else { edge_sign(v_cube, j) };
                for (src_mask, dst_mask) in edge_label_map(&inc, &src, &dst, mode) {
                    let src_labels = labels_from_mask(src_mask, src.circle_count());
                    let (h, q, k) = gradings(word, &src, wv, &src_labels);
                    let key = match mode {
                        Mode::Annular => BlockKey { q, k },
                        Mode::Plain => BlockKey { q, k: 0 },
                    };
                    let col = GenInfo { vertex: cube_bits, labels: src_mask, k };
                    let dst_labels = labels_from_mask(dst_mask, dst.circle_count());
                    let (dh, dq, dk) = gradings(word, &dst, wu, &dst_labels);
                    debug_assert_eq!(dq, q);
                    debug_assert_eq!(dh, h + 1);
                    let row = GenInfo { vertex: u_cube.bits(), labels: dst_mask, k: dk };
                    local.push((key, h, col, row, sign));
                }
            }
            local.into_iter().map(|(key, h, col, row, sign)| {
                let block = &blocks[&key];
                let ci = block.level(h).unwrap().binary_search(&col).unwrap();
                let ri = block.level(h + 1).unwrap().binary_search(&row).unwrap();
                (key, h, (ri, ci, sign))
            })
        })
        .collect();

    let mut by_block: BTreeMap<(BlockKey, i32), Vec<(usize, usize, i64)>> = BTreeMap::new();
    for (key, h, t) in triplets {
        by_block.entry((key, h)).or_default().push(t);
    }
    for (key, block) in blocks.iter_mut() {
        let levels = block.levels.len();
        block.mats = (0..levels.saturating_sub(1))
            .map(|idx| {
                let h = block.h_min + idx as i32;
                let nrows = block.levels[idx + 1].len();
                let ncols = block.levels[idx].len();
                match by_block.remove(&(*key, h)) {
                    Some(ts) => SparseIntMat::from_triplets(nrows, ncols, ts),
                    None => SparseIntMat::zero(nrows, ncols),
                }
            })
            .collect();
    }
    debug_assert!(by_block.is_empty());

    Ok(GradedComplex { mode, seam_width: word.seam_width(), blocks })
}

/// Location of a failed `d^2 = 0` check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFailure {
    pub key: BlockKey,
    pub h: i32,
}

impl GradedComplex {
    pub fn seam_width(&self) -> usize {
        self.seam_width
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&BlockKey, &Block)> {
        self.blocks.iter()
    }

    pub fn block(&self, key: &BlockKey) -> Option<&Block> {
        self.blocks.get(key)
    }

    pub fn total_dim(&self) -> usize {
        self.blocks
            .values()
            .map(|b| b.levels.iter().map(Vec::len).sum::<usize>())
            .sum()
    }

    /// Checks `d_{h+1} . d_h = 0` in every block.
    pub fn verify_d_squared(&self) -> Result<(), SquareFailure> {
        for (key, block) in &self.blocks {
            for idx in 0..block.mats.len().saturating_sub(1) {
                if !block.mats[idx + 1].mul(&block.mats[idx]).is_zero() {
                    return Err(SquareFailure { key: *key, h: block.h_min + idx as i32 });
                }
            }
        }
        Ok(())
    }

    /// Debug dump: one `q= k= h= dim=` line per level, followed by the
    /// `r c val` triplets of the matrix leaving that level.
    pub fn debug_dump(&self) -> String {
        let mut out = String::new();
        for (key, block) in &self.blocks {
            for h in block.h_range() {
                writeln!(out, "q={} k={} h={} dim={}", key.q, key.k, h, block.dim(h)).unwrap();
                if let Some(mat) = block.matrix(h) {
                    for (r, c, v) in mat.entries() {
                        writeln!(out, "{r} {c} {v}").unwrap();
                    }
                }
            }
        }
        out
    }
}
