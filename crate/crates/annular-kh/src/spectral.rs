//! Spectral sequences of finite filtered complexes over the rationals.
//!
//! The engine computes pages by explicit subquotient bases:
//! `Z_r(p,h) = { x in F_p C^h : dx in F_{p-r} }` and
//! `E_r(p,h) = Z_r(p,h) / (Z_{r-1}(p-1,h) + d Z_{r-1}(p+r-1,h-1))`,
//! with every space represented by an explicit column basis. Two
//! instantiations matter here: the winding filtration of the full Khovanov
//! complex, and the homological-degree filtration of an abstract cube with
//! signed edge maps.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::cube::{
    edge_incidence, gradings, labels_from_mask, ResolutionCache, Vertex,
};
use crate::diagram::SliceWord;
use crate::linalg::{Field, Mat, Rat};
use crate::tqft::{assemble, edge_label_map, AssembleError, BlockKey, Mode};

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("differential raises the filtration at h={h}, entry ({row},{col})")]
    NotFiltered { h: i32, row: usize, col: usize },
    #[error("differential does not square to zero at h={h}")]
    SquareNonzero { h: i32 },
    #[error("edge maps fail anticommutation at the 2-face w={w:b}, directions {i} and {j}")]
    Anticommutation { w: u64, i: usize, j: usize },
    #[error(transparent)]
    Assemble(#[from] AssembleError),
}

/// A finite cochain complex over the rationals with a bounded filtration.
/// Basis element `b` at degree `h` has filtration degree `degrees[h][b]`;
/// the differential never raises the filtration.
#[derive(Debug, Clone)]
pub struct FilteredComplex {
    h_min: i32,
    degrees: Vec<Vec<i32>>,
    diffs: Vec<Mat<Rat>>,
}

impl FilteredComplex {
    /// Validates the filtration and `d^2 = 0` and builds the complex.
    /// `diffs[t]` maps degree `h_min + t` to `h_min + t + 1`.
    pub fn new(
        h_min: i32,
        degrees: Vec<Vec<i32>>,
        diffs: Vec<Mat<Rat>>,
    ) -> Result<Self, SpectralError> {
        assert_eq!(diffs.len() + 1, degrees.len().max(1));
        for (t, d) in diffs.iter().enumerate() {
            assert_eq!(d.cols(), degrees[t].len());
            assert_eq!(d.rows(), degrees[t + 1].len());
            for r in 0..d.rows() {
                for c in 0..d.cols() {
                    if !d.get(r, c).is_zero() && degrees[t + 1][r] > degrees[t][c] {
                        return Err(SpectralError::NotFiltered {
                            h: h_min + t as i32,
                            row: r,
                            col: c,
                        });
                    }
                }
            }
        }
        for t in 0..diffs.len().saturating_sub(1) {
            if !diffs[t + 1].matmul(&diffs[t]).is_zero() {
                return Err(SpectralError::SquareNonzero { h: h_min + t as i32 });
            }
        }
        Ok(FilteredComplex { h_min, degrees, diffs })
    }

    pub fn dim(&self) -> usize {
        self.degrees.iter().map(Vec::len).sum()
    }

    fn level(&self, h: i32) -> Option<usize> {
        let t = h - self.h_min;
        (t >= 0 && (t as usize) < self.degrees.len()).then_some(t as usize)
    }

    /// Basis of `Z_r(p,h)` as columns in the coordinates of `C^h`.
    fn z_basis(&self, h: i32, p: i32, r: i32) -> Mat<Rat> {
        let Some(t) = self.level(h) else { return Mat::zero(0, 0) };
        let dim = self.degrees[t].len();
        let src: Vec<usize> = (0..dim).filter(|&b| self.degrees[t][b] <= p).collect();
        if src.is_empty() {
            return Mat::zero(dim, 0);
        }
        let kernel_in_src = match self.diffs.get(t) {
            Some(d) => {
                let tgt: Vec<usize> = (0..self.degrees[t + 1].len())
                    .filter(|&b| self.degrees[t + 1][b] > p - r)
                    .collect();
                d.select(&tgt, &src).kernel_basis()
            }
            None => Mat::from_fn(src.len(), src.len(), |a, b| {
                if a == b {
                    Rat::from_i64(1)
                } else {
                    Rat::from_i64(0)
                }
            }),
        };
        let mut out = Mat::zero(dim, kernel_in_src.cols());
        for (s, &b) in src.iter().enumerate() {
            for c in 0..kernel_in_src.cols() {
                out.set(b, c, kernel_in_src.get(s, c).clone());
            }
        }
        out
    }

    /// Image of `Z_r(p,h-1)` under the differential, in `C^h` coordinates.
    fn d_of_z(&self, h: i32, p: i32, r: i32) -> Mat<Rat> {
        let dim_h = self.level(h).map_or(0, |t| self.degrees[t].len());
        match self.level(h - 1) {
            Some(t) => self.diffs[t].matmul(&self.z_basis(h - 1, p, r)),
            None => Mat::zero(dim_h, 0),
        }
    }

    /// Dimensions of the homology of the total complex, by degree.
    pub fn total_homology_dims(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for (t, basis) in self.degrees.iter().enumerate() {
            let h = self.h_min + t as i32;
            let rank_out = self.diffs.get(t).map_or(0, Mat::rank);
            let rank_in = if t > 0 { self.diffs[t - 1].rank() } else { 0 };
            let dim = basis.len() - rank_out - rank_in;
            if dim > 0 {
                out.insert(h, dim);
            }
        }
        out
    }

    /// All pages through stabilization, plus the collapse index: the first
    /// page from which every later page has the same dimensions.
    pub fn pages(&self) -> SpectralReport {
        let all_f: Vec<i32> = self.degrees.iter().flatten().copied().collect();
        let (f_min, f_max) = match (all_f.iter().min(), all_f.iter().max()) {
            (Some(&lo), Some(&hi)) => (lo, hi),
            _ => (0, 0),
        };
        let stable_r = (f_max - f_min + 1).max(1);

        let mut pages = Vec::new();
        // Page 0 is the associated graded: count basis elements per (h, f).
        let mut dims0: BTreeMap<(i32, i32), usize> = BTreeMap::new();
        for (t, basis) in self.degrees.iter().enumerate() {
            let h = self.h_min + t as i32;
            for &f in basis {
                *dims0.entry((h, f)).or_default() += 1;
            }
        }
        pages.push(PageTable { r: 0, dims: dims0 });

        for r in 1..=stable_r {
            let mut dims: BTreeMap<(i32, i32), usize> = BTreeMap::new();
            for (t, _) in self.degrees.iter().enumerate() {
                let h = self.h_min + t as i32;
                for p in f_min..=f_max {
                    let z = self.z_basis(h, p, r);
                    if z.cols() == 0 {
                        continue;
                    }
                    let below = self.z_basis(h, p - 1, r - 1);
                    let image = self.d_of_z(h, p + r - 1, r - 1);
                    let denom = below.hcat(&image).rank();
                    let dim = z.cols() - denom;
                    if dim > 0 {
                        dims.insert((h, p), dim);
                    }
                }
            }
            pages.push(PageTable { r: r as usize, dims });
        }

        let last = pages.last().unwrap().dims.clone();
        let collapse_at = (1..=stable_r as usize)
            .find(|&r| pages[r].dims == last)
            .unwrap_or(stable_r as usize);
        SpectralReport { pages, collapse_at }
    }
}

/// Dimension table of one page.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageTable {
    pub r: usize,
    /// `(h, f) -> dim`, nonzero entries only.
    pub dims: BTreeMap<(i32, i32), usize>,
}

impl PageTable {
    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn dims_by_h(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for (&(h, _), &d) in &self.dims {
            *out.entry(h).or_default() += d;
        }
        out
    }

    pub fn dims_by_f(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for (&(_, f), &d) in &self.dims {
            *out.entry(f).or_default() += d;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralReport {
    pub pages: Vec<PageTable>,
    pub collapse_at: usize,
}

impl SpectralReport {
    pub fn page(&self, r: usize) -> &PageTable {
        &self.pages[r.min(self.pages.len() - 1)]
    }

    pub fn infinity(&self) -> &PageTable {
        self.pages.last().unwrap()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let pages: Vec<serde_json::Value> = self
            .pages
            .iter()
            .map(|p| {
                let dims: Vec<serde_json::Value> = p
                    .dims
                    .iter()
                    .map(|(&(h, f), &dim)| serde_json::json!({"h": h, "f": f, "dim": dim}))
                    .collect();
                serde_json::json!({"r": p.r, "dims": dims})
            })
            .collect();
        serde_json::json!({"pages": pages, "collapse_at": self.collapse_at})
    }
}

impl fmt::Display for SpectralReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for page in &self.pages {
            writeln!(f, "page E_{} (total {})", page.r, page.total())?;
            for (&(h, p), &dim) in &page.dims {
                writeln!(f, "  h={h:>3} f={p:>3} dim={dim}")?;
            }
        }
        writeln!(f, "collapse at page {}", self.collapse_at)
    }
}

/// The winding filtration of the full Khovanov complex: filtration degree
/// `(k - k_min)/2`, so the annular differential preserves it and the
/// remainder drops it by one step.
pub fn winding_filtration(word: &SliceWord) -> Result<FilteredComplex, SpectralError> {
    let cx = assemble(word, Mode::Plain)?;
    let mut k_min = i32::MAX;
    for (_, block) in cx.blocks() {
        for h in block.h_range() {
            for g in block.level(h).unwrap() {
                k_min = k_min.min(g.k);
            }
        }
    }
    if k_min == i32::MAX {
        k_min = 0;
    }

    // Global basis per degree: blocks in key order, then block-local index.
    let mut h_lo = i32::MAX;
    let mut h_hi = i32::MIN;
    for (_, block) in cx.blocks() {
        h_lo = h_lo.min(block.h_min());
        h_hi = h_hi.max(block.h_range().last().unwrap());
    }
    let levels = (h_hi - h_lo + 1) as usize;
    let mut degrees: Vec<Vec<i32>> = vec![Vec::new(); levels];
    let mut offsets: BTreeMap<(BlockKey, i32), usize> = BTreeMap::new();
    for (key, block) in cx.blocks() {
        for h in block.h_range() {
            let t = (h - h_lo) as usize;
            offsets.insert((*key, h), degrees[t].len());
            for g in block.level(h).unwrap() {
                degrees[t].push((g.k - k_min) / 2);
            }
        }
    }
    let mut diffs: Vec<Mat<Rat>> = (0..levels.saturating_sub(1))
        .map(|t| Mat::zero(degrees[t + 1].len(), degrees[t].len()))
        .collect();
    for (key, block) in cx.blocks() {
        for h in block.h_range() {
            let Some(mat) = block.matrix(h) else { continue };
            if block.level(h + 1).is_none() {
                continue;
            }
            let t = (h - h_lo) as usize;
            let col0 = offsets[&(*key, h)];
            let row0 = offsets[&(*key, h + 1)];
            for (r, c, v) in mat.entries() {
                diffs[t].set(row0 + r, col0 + c, Rat::from_int(v));
            }
        }
    }
    FilteredComplex::new(h_lo, degrees, diffs)
}

/// An abstract cube: a vector space per vertex and an unsigned map along
/// every decreasing edge. The engine applies the sign `(-1)^{sum_{j>=i} v_j}`
/// on the edge dropping coordinate `i`.
#[derive(Debug, Clone)]
pub struct CubeComplex {
    pub crossings: usize,
    /// Dimension of the space at each vertex, indexed by vertex bits.
    pub vertex_dims: Vec<usize>,
    /// Unsigned edge maps: `(v, i)` with bit `i` set in `v` maps the space
    /// at `v` to the space at `v - e_i`.
    pub edges: BTreeMap<(u64, usize), Mat<Rat>>,
}

/// A 2-face on which the signed edge maps fail to anticommute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceFailure {
    pub w: u64,
    pub i: usize,
    pub j: usize,
}

impl CubeComplex {
    fn eta_sign(v: u64, i: usize) -> Rat {
        let weight = (v >> i).count_ones();
        if weight % 2 == 0 {
            Rat::from_i64(1)
        } else {
            Rat::from_i64(-1)
        }
    }

    fn signed_edge(&self, v: u64, i: usize) -> Mat<Rat> {
        let m = &self.edges[&(v, i)];
        let s = Self::eta_sign(v, i);
        Mat::from_fn(m.rows(), m.cols(), |r, c| s.mul(m.get(r, c)))
    }

    /// Verifies `sum_v f_vu f_wv = 0` over every 2-face; returns the
    /// failing faces (empty on success).
    pub fn check_anticommutation(&self) -> Vec<FaceFailure> {
        let c = self.crossings;
        let mut failures = Vec::new();
        for w in 0..1u64 << c {
            for i in 0..c {
                if w >> i & 1 == 0 {
                    continue;
                }
                for j in i + 1..c {
                    if w >> j & 1 == 0 {
                        continue;
                    }
                    let via_i = self
                        .signed_edge(w & !(1 << i), j)
                        .matmul(&self.signed_edge(w, i));
                    let via_j = self
                        .signed_edge(w & !(1 << j), i)
                        .matmul(&self.signed_edge(w, j));
                    let sum = Mat::from_fn(via_i.rows(), via_i.cols(), |r, cc| {
                        via_i.get(r, cc).add(via_j.get(r, cc))
                    });
                    if !sum.is_zero() {
                        failures.push(FaceFailure { w, i, j });
                    }
                }
            }
        }
        failures
    }

    /// The total complex filtered by the coordinate sum `|v|`, with the
    /// differential dropping `|v|` by one. Fails if the 2-face identity
    /// does not hold.
    pub fn filtration(&self) -> Result<FilteredComplex, SpectralError> {
        if let Some(f) = self.check_anticommutation().into_iter().next() {
            return Err(SpectralError::Anticommutation { w: f.w, i: f.i, j: f.j });
        }
        let c = self.crossings;
        // Degree h = c - |v|; vertices ordered by bits within a degree.
        let mut verts_by_h: Vec<Vec<u64>> = vec![Vec::new(); c + 1];
        for v in 0..1u64 << c {
            verts_by_h[c - v.count_ones() as usize].push(v);
        }
        let mut degrees: Vec<Vec<i32>> = Vec::with_capacity(c + 1);
        let mut offsets: BTreeMap<u64, usize> = BTreeMap::new();
        for verts in &verts_by_h {
            let mut level = Vec::new();
            for &v in verts {
                offsets.insert(v, level.len());
                let f = v.count_ones() as i32;
                level.extend(std::iter::repeat(f).take(self.vertex_dims[v as usize]));
            }
            degrees.push(level);
        }
        let mut diffs: Vec<Mat<Rat>> = (0..c)
            .map(|t| Mat::zero(degrees[t + 1].len(), degrees[t].len()))
            .collect();
        for (&(v, i), _) in &self.edges {
            let u = v & !(1 << i);
            let t = (c as u32 - v.count_ones()) as usize;
            let signed = self.signed_edge(v, i);
            let col0 = offsets[&v];
            let row0 = offsets[&u];
            for r in 0..signed.rows() {
                for cc in 0..signed.cols() {
                    let val = signed.get(r, cc).clone();
                    if !val.is_zero() {
                        diffs[t].set(row0 + r, col0 + cc, val);
                    }
                }
            }
        }
        FilteredComplex::new(0, degrees, diffs)
    }
}

/// The Khovanov cube of a diagram as an abstract cube complex, restricted
/// to one `(q, k)` block if requested. Cube vertices are relabeled by
/// complement so that the edge maps run in the decreasing direction.
pub fn cube_complex_from_word(
    word: &SliceWord,
    mode: Mode,
    block: Option<BlockKey>,
) -> CubeComplex {
    let c = word.crossings();
    let cache = ResolutionCache::new(word);
    let full = (1u64 << c) - 1;
    let in_block = |q: i32, k: i32| match (mode, block) {
        (_, None) => true,
        (Mode::Annular, Some(b)) => b.q == q && b.k == k,
        (Mode::Plain, Some(b)) => b.q == q,
    };

    // Generator masks per word-vertex, sorted, restricted to the block.
    let masks_at = |wv: Vertex| -> Vec<u64> {
        let state = cache.resolve(wv);
        let n = state.circle_count();
        (0..1u64 << n)
            .filter(|&m| {
                let labels = labels_from_mask(m, n);
                let (_, q, k) = gradings(word, &state, wv, &labels);
                in_block(q, k)
            })
            .collect()
    };

    let mut vertex_dims = vec![0usize; 1 << c];
    let mut masks: Vec<Vec<u64>> = vec![Vec::new(); 1 << c];
    for x in 0..1u64 << c {
        let wv = Vertex::new(full ^ x);
        let m = masks_at(wv);
        vertex_dims[x as usize] = m.len();
        masks[x as usize] = m;
    }

    let mut edges = BTreeMap::new();
    for x in 0..1u64 << c {
        for i in 0..c {
            if x >> i & 1 == 0 {
                continue;
            }
            let y = x & !(1 << i);
            // Engine edge x -> x - e_i is the word edge v -> v + e_i.
            let v = Vertex::new(full ^ x);
            let u = Vertex::new(full ^ y);
            let src = cache.resolve(v);
            let dst = cache.resolve(u);
            let inc = edge_incidence(word, v, i, &src, &dst);
            let pairs = edge_label_map(&inc, &src, &dst, mode);
            let src_masks = &masks[x as usize];
            let dst_masks = &masks[y as usize];
            let mut m = Mat::zero(dst_masks.len(), src_masks.len());
            for (sm, dm) in pairs {
                let (Ok(col), Ok(row)) =
                    (src_masks.binary_search(&sm), dst_masks.binary_search(&dm))
                else {
                    continue;
                };
                m.set(row, col, Rat::from_i64(1));
            }
            edges.insert((x, i), m);
        }
    }
    CubeComplex { crossings: c, vertex_dims, edges }
}

/// Spectral-sequence report of the winding filtration, as a `(coeff)`
/// dimension story over the rationals.
pub fn winding_report(word: &SliceWord) -> Result<SpectralReport, SpectralError> {
    Ok(winding_filtration(word)?.pages())
}

/// Spectral-sequence report of the cube filtration of the annular complex.
pub fn cube_report(word: &SliceWord) -> Result<SpectralReport, SpectralError> {
    cube_complex_from_word(word, Mode::Annular, None)
        .filtration()
        .map(|f| f.pages())
}
