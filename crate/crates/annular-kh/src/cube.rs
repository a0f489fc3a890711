//! The cube of resolutions: circle tracing, winding numbers, generators.

use std::sync::Arc;

use dashmap::DashMap;

use crate::diagram::{SliceKind, SliceWord, UnionFind};

/// A cube vertex: one bit per crossing, indexed by the crossing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    bits: u64,
}

impl Vertex {
    pub fn new(bits: u64) -> Self {
        Vertex { bits }
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn bit(self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn with_bit(self, i: usize) -> Self {
        Vertex { bits: self.bits | 1 << i }
    }

    /// Trailing weight `sum_{j > i} v_j`, for the differential sign.
    pub fn weight_above(self, i: usize) -> u32 {
        (self.bits >> (i + 1)).count_ones()
    }
}

/// One circle of a resolution, tagged with its winding number around the
/// annulus core. Embedded circles always have winding -1, 0 or +1; the
/// circle is non-trivial exactly when the winding is nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Circle {
    pub id: usize,
    pub winding: i32,
}

impl Circle {
    pub fn is_nontrivial(self) -> bool {
        self.winding != 0
    }
}

/// The circles of one cube-vertex resolution.
///
/// Arcs are the points `(level, position)` of the cut-open diagram; each arc
/// belongs to exactly one circle. Circle ids are canonical: ordered by the
/// smallest arc they contain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedState {
    circles: Vec<Circle>,
    point_circle: Vec<usize>,
    level_offsets: Vec<usize>,
    levels: usize,
}

impl ResolvedState {
    pub fn circles(&self) -> &[Circle] {
        &self.circles
    }

    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn nontrivial_count(&self) -> usize {
        self.circles.iter().filter(|c| c.is_nontrivial()).count()
    }

    /// Circle id of the arc at `(level, position)` (level 0 is the seam,
    /// positions are 1-based).
    pub fn circle_at(&self, level: usize, position: usize) -> usize {
        let t = level % self.levels.max(1);
        self.point_circle[self.level_offsets[t] + position - 1]
    }

    /// Sorted multiset of windings, for structural comparisons.
    pub fn winding_multiset(&self) -> Vec<i32> {
        let mut w: Vec<i32> = self.circles.iter().map(|c| c.winding).collect();
        w.sort_unstable();
        w
    }
}

/// Whether the 0-smoothing of a crossing slice is the vertical (identity)
/// picture. For positive crossings the 0-smoothing is vertical and the
/// 1-smoothing is the cup-cap turnback; negative crossings are reversed.
fn smoothing_is_vertical(kind: SliceKind, bit: bool) -> bool {
    match kind {
        SliceKind::PositiveCrossing => !bit,
        SliceKind::NegativeCrossing => bit,
        _ => unreachable!("not a crossing"),
    }
}

/// Side on which an edge attaches to a point: through the slice above the
/// point's level, or through the slice below it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Up,
    Down,
}

/// Resolves the diagram at a cube vertex and traces the circles.
pub fn resolve(word: &SliceWord, v: Vertex) -> ResolvedState {
    let profile = word.width_profile();
    let n = word.slices().len();
    if n == 0 {
        // Only the core-parallel circles: one per seam strand.
        let k = word.seam_width();
        return ResolvedState {
            circles: (0..k).map(|id| Circle { id, winding: 1 }).collect(),
            point_circle: (0..k).collect(),
            level_offsets: vec![0],
            levels: 1,
        };
    }

    let level_offsets: Vec<usize> = profile[..n]
        .iter()
        .scan(0usize, |acc, w| {
            let o = *acc;
            *acc += w;
            Some(o)
        })
        .collect();
    let total: usize = profile[..n].iter().sum();
    let point = |t: usize, p: usize| level_offsets[t % n] + (p - 1);

    // Each point has exactly one edge on each side. An edge stores its far
    // endpoint and the side it attaches to over there.
    fn connect(
        up: &mut [Option<(usize, Side)>],
        down: &mut [Option<(usize, Side)>],
        a: usize,
        sa: Side,
        b: usize,
        sb: Side,
    ) {
        let slot_a = match sa {
            Side::Up => &mut up[a],
            Side::Down => &mut down[a],
        };
        debug_assert!(slot_a.is_none());
        *slot_a = Some((b, sb));
        let slot_b = match sb {
            Side::Up => &mut up[b],
            Side::Down => &mut down[b],
        };
        debug_assert!(slot_b.is_none());
        *slot_b = Some((a, sa));
    }
    let mut up: Vec<Option<(usize, Side)>> = vec![None; total];
    let mut down: Vec<Option<(usize, Side)>> = vec![None; total];

    let mut crossing_index = 0usize;
    for (idx, s) in word.slices().iter().enumerate() {
        let below = idx;
        let above = idx + 1;
        let w = profile[below];
        let i = s.position;
        macro_rules! vertical {
            ($p_lo:expr, $p_hi:expr) => {
                connect(
                    &mut up,
                    &mut down,
                    point(below, $p_lo),
                    Side::Up,
                    point(above, $p_hi),
                    Side::Down,
                )
            };
        }
        match s.kind {
            SliceKind::PositiveCrossing | SliceKind::NegativeCrossing => {
                let vert = smoothing_is_vertical(s.kind, v.bit(crossing_index));
                crossing_index += 1;
                for p in 1..=w {
                    if p == i || p == i + 1 {
                        continue;
                    }
                    vertical!(p, p);
                }
                if vert {
                    vertical!(i, i);
                    vertical!(i + 1, i + 1);
                } else {
                    // Turnback: a cap below and a cup above.
                    connect(&mut up, &mut down, point(below, i), Side::Up, point(below, i + 1), Side::Up);
                    connect(&mut up, &mut down, point(above, i), Side::Down, point(above, i + 1), Side::Down);
                }
            }
            SliceKind::Cup => {
                connect(&mut up, &mut down, point(above, i), Side::Down, point(above, i + 1), Side::Down);
                for p in 1..=w {
                    let q = if p < i { p } else { p + 2 };
                    vertical!(p, q);
                }
            }
            SliceKind::Cap => {
                connect(&mut up, &mut down, point(below, i), Side::Up, point(below, i + 1), Side::Up);
                for p in 1..=w {
                    if p == i || p == i + 1 {
                        continue;
                    }
                    let q = if p < i { p } else { p - 2 };
                    vertical!(p, q);
                }
            }
        }
    }
    debug_assert!(up.iter().all(Option::is_some) && down.iter().all(Option::is_some));

    // Partition by union-find: canonical, direction-free.
    let mut uf = UnionFind::new(total);
    for (a, slot) in up.iter().enumerate() {
        let (b, _) = slot.unwrap();
        uf.union(a, b);
    }
    for (a, slot) in down.iter().enumerate() {
        let (b, _) = slot.unwrap();
        uf.union(a, b);
    }

    // Canonical ids ordered by minimal arc.
    let mut roots: Vec<usize> = (0..total).filter(|&x| uf.find(x) == x).collect();
    roots.sort_unstable();
    let mut point_circle = vec![usize::MAX; total];
    for p in 0..total {
        let r = uf.find(p);
        let id = roots.binary_search(&r).unwrap();
        point_circle[p] = id;
    }

    // Walk each circle to count signed seam passages. Entering a seam point
    // through its lower side means the walk crosses the seam upward.
    let seam_width = word.seam_width();
    let mut windings = vec![0i32; roots.len()];
    let mut visited = vec![false; total];
    for start in 0..total {
        if visited[start] {
            continue;
        }
        let mut winding = 0i32;
        let mut here = start;
        let mut leave = Side::Up;
        loop {
            visited[here] = true;
            let (next, far_side) = match leave {
                Side::Up => up[here].unwrap(),
                Side::Down => down[here].unwrap(),
            };
            if next < seam_width {
                // Seam points are exactly the level-0 points.
                winding += match far_side {
                    Side::Down => 1,
                    Side::Up => -1,
                };
            }
            here = next;
            leave = match far_side {
                Side::Up => Side::Down,
                Side::Down => Side::Up,
            };
            if here == start && leave == Side::Up {
                break;
            }
        }
        windings[point_circle[start]] = winding;
    }

    let circles = windings
        .iter()
        .enumerate()
        .map(|(id, &winding)| Circle { id, winding })
        .collect();
    ResolvedState { circles, point_circle, level_offsets, levels: n }
}

/// A circle participating in a merge or split, with its non-triviality tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CirclePart {
    pub id: usize,
    pub nontrivial: bool,
}

/// What happens along a cube edge: two circles of the source resolution
/// merge, or one circle splits in two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MergeOrSplit {
    Merge { from: [CirclePart; 2], to: CirclePart },
    Split { from: CirclePart, to: [CirclePart; 2] },
}

/// A cube edge `v -> v + e_i` together with the correspondence between the
/// untouched circles on both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeIncidence {
    pub op: MergeOrSplit,
    /// `carry[source circle id] = Some(target circle id)` for bystanders,
    /// `None` for circles consumed by the merge/split.
    pub carry: Vec<Option<usize>>,
}

/// Classifies the edge `v -> v + e_i` (requires `v_i = 0`).
pub fn edge_incidence(
    word: &SliceWord,
    v: Vertex,
    i: usize,
    src: &ResolvedState,
    dst: &ResolvedState,
) -> EdgeIncidence {
    assert!(!v.bit(i), "edge requires a 0-smoothing at crossing {i}");
    let slice_idx = word.crossing_order()[i];
    let pos = word.slices()[slice_idx].position;
    // The four points around the crossing site.
    let site = [
        (slice_idx, pos),
        (slice_idx, pos + 1),
        (slice_idx + 1, pos),
        (slice_idx + 1, pos + 1),
    ];
    let mut src_ids = Vec::new();
    let mut dst_ids = Vec::new();
    for &(t, p) in &site {
        let a = src.circle_at(t, p);
        if !src_ids.contains(&a) {
            src_ids.push(a);
        }
        let b = dst.circle_at(t, p);
        if !dst_ids.contains(&b) {
            dst_ids.push(b);
        }
    }

    let part = |state: &ResolvedState, id: usize| CirclePart {
        id,
        nontrivial: state.circles()[id].is_nontrivial(),
    };
    let op = match (src_ids.len(), dst_ids.len()) {
        (2, 1) => MergeOrSplit::Merge {
            from: [part(src, src_ids[0]), part(src, src_ids[1])],
            to: part(dst, dst_ids[0]),
        },
        (1, 2) => MergeOrSplit::Split {
            from: part(src, src_ids[0]),
            to: [part(dst, dst_ids[0]), part(dst, dst_ids[1])],
        },
        other => unreachable!("cube edge changed circle count by {other:?}"),
    };

    // Bystanders keep their arcs, so matching any one arc identifies them.
    // Representative arcs per source circle: first point of each circle.
    let mut carry = vec![None; src.circle_count()];
    let mut rep = vec![usize::MAX; src.circle_count()];
    for (p, &c) in src.point_circle.iter().enumerate() {
        if rep[c] == usize::MAX {
            rep[c] = p;
        }
    }
    for (c, carry_slot) in carry.iter_mut().enumerate() {
        if src_ids.contains(&c) {
            continue;
        }
        *carry_slot = Some(dst.point_circle[rep[c]]);
    }
    EdgeIncidence { op, carry }
}

/// Circle label: the rank-2 module generator attached to a circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A chain-group generator: cube vertex plus one label per circle, with the
/// triple grading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub vertex: Vertex,
    pub labels: Vec<Sign>,
    pub h: i32,
    pub q: i32,
    pub k: i32,
}

impl Generator {
    pub fn new(word: &SliceWord, state: &ResolvedState, vertex: Vertex, labels: Vec<Sign>) -> Self {
        let (h, q, k) = gradings(word, state, vertex, &labels);
        Generator { vertex, labels, h, q, k }
    }
}

/// The triple grading of a labeled resolution.
///
/// `h = |v| - n_minus`, `q = sum(labels) + |v| + n_plus - 2 n_minus`, and
/// `k` sums the labels of the non-trivial circles only.
pub fn gradings(word: &SliceWord, state: &ResolvedState, v: Vertex, labels: &[Sign]) -> (i32, i32, i32) {
    assert_eq!(labels.len(), state.circle_count());
    let (n_plus, n_minus) = word.signed_crossings();
    let weight = v.weight() as i32;
    let h = weight - n_minus as i32;
    let deg: i32 = labels.iter().map(|s| s.value()).sum();
    let q = deg + weight + n_plus as i32 - 2 * n_minus as i32;
    let k: i32 = state
        .circles()
        .iter()
        .zip(labels)
        .filter(|(c, _)| c.is_nontrivial())
        .map(|(_, s)| s.value())
        .sum();
    (h, q, k)
}

/// Labeling encoded as a bitmask over circle ids; bit set means `+`.
pub fn labels_from_mask(mask: u64, circles: usize) -> Vec<Sign> {
    (0..circles)
        .map(|i| if mask >> i & 1 == 1 { Sign::Plus } else { Sign::Minus })
        .collect()
}

/// Lazily memoized resolutions of one diagram, shared across threads.
/// Losing an insert race returns the value that won; entries are pure
/// functions of the vertex, so the race is harmless.
pub struct ResolutionCache<'a> {
    word: &'a SliceWord,
    memo: DashMap<u64, Arc<ResolvedState>>,
}

impl<'a> ResolutionCache<'a> {
    pub fn new(word: &'a SliceWord) -> Self {
        ResolutionCache { word, memo: DashMap::new() }
    }

    pub fn word(&self) -> &'a SliceWord {
        self.word
    }

    pub fn resolve(&self, v: Vertex) -> Arc<ResolvedState> {
        if let Some(hit) = self.memo.get(&v.bits()) {
            return hit.clone();
        }
        let state = Arc::new(resolve(self.word, v));
        self.memo.entry(v.bits()).or_insert(state).clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::SliceWord;

    fn word(text: &str) -> SliceWord {
        SliceWord::parse(text).unwrap()
    }

    #[test]
    fn core_circle_resolution() {
        let w = word("strands 1\n");
        let r = resolve(&w, Vertex::new(0));
        assert_eq!(r.winding_multiset(), vec![1]);
    }

    #[test]
    fn sigma1_zero_smoothing_has_two_core_circles() {
        let w = word("strands 2\nP 1\n");
        let r = resolve(&w, Vertex::new(0));
        assert_eq!(r.winding_multiset(), vec![1, 1]);
    }

    #[test]
    fn sigma1_one_smoothing_is_one_trivial_circle() {
        let w = word("strands 2\nP 1\n");
        let r = resolve(&w, Vertex::new(1));
        assert_eq!(r.winding_multiset(), vec![0]);
    }

    #[test]
    fn negative_crossing_swaps_smoothings() {
        let w = word("strands 2\nN 1\n");
        assert_eq!(resolve(&w, Vertex::new(0)).winding_multiset(), vec![0]);
        assert_eq!(resolve(&w, Vertex::new(1)).winding_multiset(), vec![1, 1]);
    }

    #[test]
    fn turnback_tangle_closure_is_one_trivial_circle() {
        let w = word("strands 2\nA 1\nU 1\n");
        let r = resolve(&w, Vertex::new(0));
        assert_eq!(r.winding_multiset(), vec![0]);
    }

    #[test]
    fn unknot_in_ball() {
        let w = word("strands 0\nU 1\nA 1\n");
        let r = resolve(&w, Vertex::new(0));
        assert_eq!(r.winding_multiset(), vec![0]);
    }

    #[test]
    fn mirror_resolutions_match_at_complement_vertex() {
        let w = SliceWord::from_braid(3, &[1, -2, 1]).unwrap();
        let m = w.mirror();
        let c = w.crossings();
        for bits in 0..1u64 << c {
            let v = Vertex::new(bits);
            let vbar = Vertex::new(!bits & ((1 << c) - 1));
            assert_eq!(
                resolve(&w, v).winding_multiset(),
                resolve(&m, vbar).winding_multiset()
            );
        }
    }

    #[test]
    fn disjoint_union_resolutions_are_unions() {
        let a = SliceWord::from_braid(2, &[1]).unwrap();
        let b = word("strands 0\nU 1\nA 1\n");
        let both = a.disjoint_union(&b);
        for bits in 0..2u64 {
            let mut expected = resolve(&a, Vertex::new(bits)).winding_multiset();
            expected.extend(resolve(&b, Vertex::new(0)).winding_multiset());
            expected.sort_unstable();
            assert_eq!(
                resolve(&both, Vertex::new(bits)).winding_multiset(),
                expected
            );
        }
    }

    #[test]
    fn sigma1_edge_is_a_merge_of_two_nontrivial_circles() {
        let w = word("strands 2\nP 1\n");
        let v = Vertex::new(0);
        let src = resolve(&w, v);
        let dst = resolve(&w, Vertex::new(1));
        let inc = edge_incidence(&w, v, 0, &src, &dst);
        match inc.op {
            MergeOrSplit::Merge { from, to } => {
                assert!(from[0].nontrivial && from[1].nontrivial);
                assert!(!to.nontrivial);
            }
            other => panic!("expected merge, got {other:?}"),
        }
        assert_eq!(inc.carry, vec![None, None]);
    }

    #[test]
    fn two_unknot_word_edge_merges_trivial_circles() {
        // Two side-by-side unknots joined through one crossing.
        let w = word("strands 0\nU 1\nU 1\nP 2\nA 1\nA 1\n");
        let v = Vertex::new(0);
        let src = resolve(&w, v);
        let dst = resolve(&w, Vertex::new(1));
        assert_eq!(src.winding_multiset(), vec![0, 0]);
        assert_eq!(dst.winding_multiset(), vec![0]);
        let inc = edge_incidence(&w, v, 0, &src, &dst);
        match inc.op {
            MergeOrSplit::Merge { from, to } => {
                assert!(!from[0].nontrivial && !from[1].nontrivial && !to.nontrivial);
            }
            other => panic!("expected merge, got {other:?}"),
        }
    }

    #[test]
    fn split_edges_have_winding_consistent_tags() {
        let w = word("strands 2\nN 1\n");
        let v = Vertex::new(0);
        let src = resolve(&w, v);
        let dst = resolve(&w, Vertex::new(1));
        let inc = edge_incidence(&w, v, 0, &src, &dst);
        match inc.op {
            MergeOrSplit::Split { from, to } => {
                assert!(!from.nontrivial);
                assert!(to[0].nontrivial && to[1].nontrivial);
            }
            other => panic!("expected split, got {other:?}"),
        }
    }

    #[test]
    fn grading_examples() {
        let k1 = word("strands 1\n");
        let r = resolve(&k1, Vertex::new(0));
        assert_eq!(gradings(&k1, &r, Vertex::new(0), &[Sign::Plus]), (0, 1, 1));

        let u1 = word("strands 0\nU 1\nA 1\n");
        let r = resolve(&u1, Vertex::new(0));
        assert_eq!(gradings(&u1, &r, Vertex::new(0), &[Sign::Minus]), (0, -1, 0));

        let sigma = word("strands 2\nP 1\n");
        let v = Vertex::new(1);
        let r = resolve(&sigma, v);
        assert_eq!(gradings(&sigma, &r, v, &[Sign::Plus]), (1, 3, 0));
    }

    #[test]
    fn k_is_bounded_by_seam_width_with_matching_parity() {
        for w in [
            SliceWord::from_braid(3, &[1, -2, 1]).unwrap(),
            word("strands 2\nA 1\nU 1\n"),
            word("strands 4\nA 2\nU 2\n"),
        ] {
            let c = w.crossings();
            let seam = w.seam_width() as i32;
            for bits in 0..1u64 << c {
                let v = Vertex::new(bits);
                let r = resolve(&w, v);
                assert!(r.circles().iter().all(|c| c.winding.abs() <= 1));
                let total: i32 = r.circles().iter().map(|c| c.winding.abs()).sum();
                assert!(total <= seam);
                assert_eq!((total - seam).rem_euclid(2), 0);
                assert!(r.nontrivial_count() <= w.seam_width());
                for mask in 0..1u64 << r.circle_count() {
                    let labels = labels_from_mask(mask, r.circle_count());
                    let (_, _, k) = gradings(&w, &r, v, &labels);
                    assert!(k.abs() <= seam);
                    assert_eq!((k - seam).rem_euclid(2), 0);
                }
            }
        }
    }

    #[test]
    fn cache_returns_equal_states() {
        let w = SliceWord::from_braid(2, &[1, 1]).unwrap();
        let cache = ResolutionCache::new(&w);
        let a = cache.resolve(Vertex::new(2));
        let b = cache.resolve(Vertex::new(2));
        assert_eq!(*a, *b);
        assert_eq!(*a, resolve(&w, Vertex::new(2)));
    }
}
