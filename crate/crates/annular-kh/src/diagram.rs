//! Annular link diagrams as slice words.
//!
//! A diagram in the thickened annulus is presented cut open along a seam
//! arc: `seam_width` strands cross the seam, and a list of elementary
//! slices (crossings, cups, caps) is read bottom to top. The top of the
//! word is glued back to the bottom along the seam.

use std::fmt;

use thiserror::Error;

/// The four elementary tangle slices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SliceKind {
    PositiveCrossing,
    NegativeCrossing,
    Cup,
    Cap,
}

impl SliceKind {
    pub fn is_crossing(self) -> bool {
        matches!(self, SliceKind::PositiveCrossing | SliceKind::NegativeCrossing)
    }

    fn letter(self) -> char {
        match self {
            SliceKind::PositiveCrossing => 'P',
            SliceKind::NegativeCrossing => 'N',
            SliceKind::Cup => 'U',
            SliceKind::Cap => 'A',
        }
    }
}

/// One slice acting at a 1-based strand position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slice {
    pub kind: SliceKind,
    pub position: usize,
}

impl Slice {
    pub fn new(kind: SliceKind, position: usize) -> Self {
        Slice { kind, position }
    }

    /// Width after this slice, or `None` if the slice is illegal at `width`.
    fn apply(&self, width: usize) -> Option<usize> {
        let i = self.position;
        match self.kind {
            SliceKind::PositiveCrossing | SliceKind::NegativeCrossing => {
                (i >= 1 && i < width).then_some(width)
            }
            SliceKind::Cup => (i >= 1 && i <= width + 1).then(|| width + 2),
            SliceKind::Cap => (i >= 1 && i < width).then(|| width - 2),
        }
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind.letter(), self.position)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("slice {index} ({slice}) is illegal at width {width}")]
    IllegalSlice { index: usize, width: usize, slice: String },
    #[error("width profile ends at {end} but the seam width is {seam}")]
    SeamMismatch { seam: usize, end: usize },
    #[error("braid generator {value} out of range for {strands} strands")]
    BraidIndex { strands: usize, value: i64 },
    #[error("cable multiplicity must be at least 1")]
    ZeroCable,
}

/// A validated annular diagram: seam width plus slices, glued seam to seam.
///
/// `crossing_order` lists the slice indices of the crossings in word order;
/// it fixes the ordering of the cube coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceWord {
    seam_width: usize,
    slices: Vec<Slice>,
    crossing_order: Vec<usize>,
}

impl SliceWord {
    /// Validates the width profile and builds the word.
    pub fn new(seam_width: usize, slices: Vec<Slice>) -> Result<Self, DiagramError> {
        let mut width = seam_width;
        for (index, s) in slices.iter().enumerate() {
            width = s.apply(width).ok_or_else(|| DiagramError::IllegalSlice {
                index,
                width,
                slice: s.to_string(),
            })?;
        }
        if width != seam_width {
            return Err(DiagramError::SeamMismatch { seam: seam_width, end: width });
        }
        let crossing_order = slices
            .iter()
            .enumerate()
            .filter(|(_, s)| s.kind.is_crossing())
            .map(|(i, _)| i)
            .collect();
        Ok(SliceWord { seam_width, slices, crossing_order })
    }

    pub fn seam_width(&self) -> usize {
        self.seam_width
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    /// Slice indices of the crossings, in word order.
    pub fn crossing_order(&self) -> &[usize] {
        &self.crossing_order
    }

    pub fn crossings(&self) -> usize {
        self.crossing_order.len()
    }

    /// (positive, negative) crossing counts.
    pub fn signed_crossings(&self) -> (usize, usize) {
        let pos = self
            .slices
            .iter()
            .filter(|s| s.kind == SliceKind::PositiveCrossing)
            .count();
        (pos, self.crossings() - pos)
    }

    /// Strand count at every level `0..=len`; starts and ends at the seam width.
    pub fn width_profile(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.slices.len() + 1);
        let mut width = self.seam_width;
        out.push(width);
        for s in &self.slices {
            width = s.apply(width).expect("validated word");
            out.push(width);
        }
        out
    }

    /// Parses the newline-delimited text format.
    ///
    /// ```text
    /// strands 2
    /// P 1
    /// ```
    /// Lines starting with `#` and blank lines are ignored. A `braid` header
    /// (`braid 3 1 -2`) desugars through [`SliceWord::from_braid`].
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let mut seam: Option<usize> = None;
        let mut slices = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut tokens = trimmed.split_whitespace();
            let head = tokens.next().unwrap();
            let col = raw.find(head).unwrap_or(0) + 1;
            if seam.is_none() {
                match head {
                    "strands" => {
                        let n = parse_int(tokens.next(), line, col, "strand count")?;
                        if n < 0 {
                            return Err(syntax(line, col, "strand count must be non-negative"));
                        }
                        reject_extra(tokens.next(), line, col)?;
                        seam = Some(n as usize);
                        continue;
                    }
                    "braid" => {
                        let n = parse_int(tokens.next(), line, col, "strand count")?;
                        if n < 1 {
                            return Err(syntax(line, col, "braid strand count must be positive"));
                        }
                        let word: Vec<i64> = tokens
                            .map(|t| {
                                t.parse::<i64>()
                                    .map_err(|_| syntax(line, col, &format!("bad generator `{t}`")))
                            })
                            .collect::<Result<_, _>>()?;
                        return SliceWord::from_braid(n as usize, &word);
                    }
                    _ => {
                        return Err(syntax(line, col, "expected `strands <n>` or `braid <n> ...`"))
                    }
                }
            }
            let kind = match head {
                "P" => SliceKind::PositiveCrossing,
                "N" => SliceKind::NegativeCrossing,
                "U" => SliceKind::Cup,
                "A" => SliceKind::Cap,
                other => return Err(syntax(line, col, &format!("unknown slice `{other}`"))),
            };
            let pos = parse_int(tokens.next(), line, col, "position")?;
            if pos < 1 {
                return Err(syntax(line, col, "position must be at least 1"));
            }
            reject_extra(tokens.next(), line, col)?;
            slices.push(Slice::new(kind, pos as usize));
        }
        match seam {
            Some(k) => SliceWord::new(k, slices),
            None => Err(syntax(1, 1, "missing `strands <n>` header")),
        }
    }

    /// Serializes back to the text format; `parse` round-trips.
    pub fn to_text(&self) -> String {
        let mut out = format!("strands {}\n", self.seam_width);
        for s in &self.slices {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out
    }

    /// Closure of a braid word: generator `+j` becomes a positive crossing
    /// at position `j`, `-j` a negative one.
    pub fn from_braid(strands: usize, word: &[i64]) -> Result<Self, DiagramError> {
        let mut slices = Vec::with_capacity(word.len());
        for &g in word {
            let j = g.unsigned_abs() as usize;
            if g == 0 || j >= strands {
                return Err(DiagramError::BraidIndex { strands, value: g });
            }
            let kind = if g > 0 {
                SliceKind::PositiveCrossing
            } else {
                SliceKind::NegativeCrossing
            };
            slices.push(Slice::new(kind, j));
        }
        SliceWord::new(strands, slices)
    }

    /// Mirror image: every crossing sign is swapped.
    pub fn mirror(&self) -> Self {
        let slices = self
            .slices
            .iter()
            .map(|s| match s.kind {
                SliceKind::PositiveCrossing => Slice::new(SliceKind::NegativeCrossing, s.position),
                SliceKind::NegativeCrossing => Slice::new(SliceKind::PositiveCrossing, s.position),
                _ => *s,
            })
            .collect();
        SliceWord::new(self.seam_width, slices).expect("mirror preserves the width profile")
    }

    /// Isotopy sliding the seam past the first slice: the slice moves to the
    /// end of the word and the seam width becomes the width after it.
    pub fn seam_rotate(&self) -> Self {
        if self.slices.is_empty() {
            return self.clone();
        }
        let first = self.slices[0];
        let new_seam = first.apply(self.seam_width).expect("validated word");
        let mut slices: Vec<Slice> = self.slices[1..].to_vec();
        slices.push(first);
        SliceWord::new(new_seam, slices).expect("rotation preserves the width profile")
    }

    /// Side-by-side union: `self` keeps its band, `other`'s strands and slice
    /// positions shift above it.
    pub fn disjoint_union(&self, other: &SliceWord) -> Self {
        let mut slices = self.slices.clone();
        slices.extend(
            other
                .slices
                .iter()
                .map(|s| Slice::new(s.kind, s.position + self.seam_width)),
        );
        SliceWord::new(self.seam_width + other.seam_width, slices)
            .expect("both factors validated")
    }

    /// Blackboard-framed `n`-cable: every strand becomes `n` parallel strands.
    ///
    /// A crossing turns into the n^2-crossing block crossing the two cables;
    /// cups and caps turn into `n` nested cups/caps.
    pub fn cable(&self, n: usize) -> Result<Self, DiagramError> {
        if n == 0 {
            return Err(DiagramError::ZeroCable);
        }
        let mut slices = Vec::new();
        for s in &self.slices {
            let base = (s.position - 1) * n;
            match s.kind {
                SliceKind::PositiveCrossing | SliceKind::NegativeCrossing => {
                    // Walk each strand of the lower cable across the upper one.
                    for r in (1..=n).rev() {
                        for t in 0..n {
                            slices.push(Slice::new(s.kind, base + r + t));
                        }
                    }
                }
                SliceKind::Cup => {
                    for j in 0..n {
                        slices.push(Slice::new(SliceKind::Cup, base + 1 + j));
                    }
                }
                SliceKind::Cap => {
                    for j in 0..n {
                        slices.push(Slice::new(SliceKind::Cap, base + n - j));
                    }
                }
            }
        }
        SliceWord::new(self.seam_width * n, slices)
    }

    /// Number of link components, tracing strands through the crossings.
    pub fn link_components(&self) -> usize {
        let profile = self.width_profile();
        let n = self.slices.len();
        if n == 0 {
            return self.seam_width;
        }
        // Points (level t, position p) with level n glued to level 0.
        let offsets: Vec<usize> = profile[..n]
            .iter()
            .scan(0usize, |acc, w| {
                let o = *acc;
                *acc += w;
                Some(o)
            })
            .collect();
        let total: usize = profile[..n].iter().sum();
        let point = |t: usize, p: usize| offsets[t % n] + (p - 1);
        let mut uf = UnionFind::new(total);
        for (idx, s) in self.slices.iter().enumerate() {
            let below = idx;
            let above = idx + 1;
            let w = profile[below];
            let i = s.position;
            match s.kind {
                SliceKind::PositiveCrossing | SliceKind::NegativeCrossing => {
                    // Strands pass through the crossing.
                    for p in 1..=w {
                        let q = if p == i {
                            i + 1
                        } else if p == i + 1 {
                            i
                        } else {
                            p
                        };
                        uf.union(point(below, p), point(above, q));
                    }
                }
                SliceKind::Cup => {
                    uf.union(point(above, i), point(above, i + 1));
                    for p in 1..=w {
                        let q = if p < i { p } else { p + 2 };
                        uf.union(point(below, p), point(above, q));
                    }
                }
                SliceKind::Cap => {
                    uf.union(point(below, i), point(below, i + 1));
                    for p in 1..=w {
                        if p == i || p == i + 1 {
                            continue;
                        }
                        let q = if p < i { p } else { p - 2 };
                        uf.union(point(below, p), point(above, q));
                    }
                }
            }
        }
        uf.class_count()
    }
}

impl fmt::Display for SliceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "strands {}", self.seam_width)?;
        for s in &self.slices {
            write!(f, "; {s}")?;
        }
        Ok(())
    }
}

fn syntax(line: usize, col: usize, msg: &str) -> DiagramError {
    DiagramError::Syntax { line, col, msg: msg.to_string() }
}

fn parse_int(
    tok: Option<&str>,
    line: usize,
    col: usize,
    what: &str,
) -> Result<i64, DiagramError> {
    let t = tok.ok_or_else(|| syntax(line, col, &format!("missing {what}")))?;
    t.parse::<i64>()
        .map_err(|_| syntax(line, col, &format!("bad {what} `{t}`")))
}

fn reject_extra(tok: Option<&str>, line: usize, col: usize) -> Result<(), DiagramError> {
    match tok {
        Some(t) => Err(syntax(line, col, &format!("unexpected token `{t}`"))),
        None => Ok(()),
    }
}

/// Plain union-find, used for strand and circle tracing.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Keep the smaller index as root so class ids are canonical.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub fn class_count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(text: &str) -> SliceWord {
        SliceWord::parse(text).unwrap()
    }

    #[test]
    fn parse_core_circle() {
        let w = word("strands 1\n");
        assert_eq!(w.seam_width(), 1);
        assert!(w.slices().is_empty());
    }

    #[test]
    fn parse_sigma1() {
        let w = word("strands 2\nP 1\n");
        assert_eq!(w.seam_width(), 2);
        assert_eq!(w.slices(), &[Slice::new(SliceKind::PositiveCrossing, 1)]);
        assert_eq!(w.crossings(), 1);
    }

    #[test]
    fn parse_unknot() {
        let w = word("strands 0\nU 1\nA 1\n");
        assert_eq!(w.seam_width(), 0);
        assert_eq!(w.slices().len(), 2);
        assert_eq!(w.width_profile(), vec![0, 2, 0]);
    }

    #[test]
    fn parse_skips_comments_and_blanks() {
        let w = word("# a core circle\n\nstrands 1\n# done\n");
        assert_eq!(w.seam_width(), 1);
    }

    #[test]
    fn parse_braid_header() {
        let w = word("braid 3 1 -2\n");
        assert_eq!(w, SliceWord::from_braid(3, &[1, -2]).unwrap());
    }

    #[test]
    fn parse_reports_location() {
        let err = SliceWord::parse("strands 2\nQ 1\n").unwrap_err();
        assert_eq!(
            err,
            DiagramError::Syntax { line: 2, col: 1, msg: "unknown slice `Q`".into() }
        );
    }

    #[test]
    fn rejects_width_violation_with_index() {
        let err = SliceWord::new(
            1,
            vec![Slice::new(SliceKind::Cap, 1), Slice::new(SliceKind::Cup, 1)],
        )
        .unwrap_err();
        assert_eq!(
            err,
            DiagramError::IllegalSlice { index: 0, width: 1, slice: "A 1".into() }
        );
    }

    #[test]
    fn rejects_seam_mismatch() {
        let err = SliceWord::new(0, vec![Slice::new(SliceKind::Cup, 1)]).unwrap_err();
        assert_eq!(err, DiagramError::SeamMismatch { seam: 0, end: 2 });
    }

    #[test]
    fn round_trip_text() {
        let w = word("strands 2\nP 1\nN 1\n");
        assert_eq!(SliceWord::parse(&w.to_text()).unwrap(), w);
    }

    #[test]
    fn braid_examples() {
        assert_eq!(SliceWord::from_braid(2, &[1]).unwrap(), word("strands 2\nP 1\n"));
        assert_eq!(
            SliceWord::from_braid(3, &[1, -2]).unwrap(),
            word("strands 3\nP 1\nN 2\n")
        );
        assert_eq!(SliceWord::from_braid(2, &[]).unwrap(), word("strands 2\n"));
        assert_eq!(
            SliceWord::from_braid(2, &[2]).unwrap_err(),
            DiagramError::BraidIndex { strands: 2, value: 2 }
        );
    }

    #[test]
    fn mirror_swaps_signs() {
        let w = SliceWord::from_braid(3, &[1, -2]).unwrap();
        assert_eq!(w.mirror(), SliceWord::from_braid(3, &[-1, 2]).unwrap());
        assert_eq!(w.mirror().mirror(), w);
        let crossingless = word("strands 0\nU 1\nA 1\n");
        assert_eq!(crossingless.mirror(), crossingless);
    }

    #[test]
    fn seam_rotate_examples() {
        let sigma = word("strands 2\nP 1\n");
        assert_eq!(sigma.seam_rotate(), sigma);
        let unknot = word("strands 0\nU 1\nA 1\n");
        let rotated = unknot.seam_rotate();
        assert_eq!(rotated, word("strands 2\nA 1\nU 1\n"));
        let two = SliceWord::from_braid(2, &[1, 1]).unwrap();
        assert_eq!(two.seam_rotate(), two);
    }

    #[test]
    fn seam_rotate_full_cycle_is_identity() {
        let w = word("strands 2\nU 2\nP 1\nA 2\nP 1\n");
        let mut r = w.clone();
        for _ in 0..w.slices().len() {
            r = r.seam_rotate();
        }
        assert_eq!(r, w);
    }

    #[test]
    fn disjoint_union_examples() {
        let u1 = word("strands 0\nU 1\nA 1\n");
        let k1 = word("strands 1\n");
        let both = u1.disjoint_union(&k1);
        assert_eq!(both.seam_width(), 1);
        assert_eq!(both.slices().len(), 2);

        let kk = k1.disjoint_union(&k1);
        assert_eq!(kk, word("strands 2\n"));

        let sigma = word("strands 2\nP 1\n");
        let with_unknot = sigma.disjoint_union(&u1);
        assert_eq!(with_unknot.seam_width(), 2);
        assert_eq!(
            with_unknot.slices(),
            &[
                Slice::new(SliceKind::PositiveCrossing, 1),
                Slice::new(SliceKind::Cup, 3),
                Slice::new(SliceKind::Cap, 3),
            ]
        );
    }

    #[test]
    fn cable_examples() {
        let k1 = word("strands 1\n");
        assert_eq!(k1.cable(2).unwrap(), word("strands 2\n"));
        assert_eq!(k1.cable(3).unwrap(), word("strands 3\n"));

        let sigma = word("strands 2\nP 1\n");
        assert_eq!(sigma.cable(1).unwrap(), sigma);
        let doubled = sigma.cable(2).unwrap();
        assert_eq!(doubled.seam_width(), 4);
        assert_eq!(doubled.crossings(), 4);

        let unknot = word("strands 0\nU 1\nA 1\n");
        let two_cable = unknot.cable(2).unwrap();
        assert_eq!(two_cable, word("strands 0\nU 1\nU 2\nA 2\nA 1\n"));
    }

    #[test]
    fn cable_crossing_count_scales_by_square() {
        let w = SliceWord::from_braid(2, &[1, 1, 1]).unwrap();
        for n in 1..=3 {
            assert_eq!(w.cable(n).unwrap().crossings(), n * n * 3);
        }
    }

    #[test]
    fn link_component_counts() {
        assert_eq!(word("strands 1\n").link_components(), 1);
        assert_eq!(word("strands 2\n").link_components(), 2);
        assert_eq!(word("strands 2\nP 1\n").link_components(), 1);
        assert_eq!(word("strands 0\nU 1\nA 1\nU 1\nA 1\n").link_components(), 2);
        // Trefoil as the closure of sigma_1^3.
        assert_eq!(SliceWord::from_braid(2, &[1, 1, 1]).unwrap().link_components(), 1);
        // Hopf link as the closure of sigma_1^2.
        assert_eq!(SliceWord::from_braid(2, &[1, 1]).unwrap().link_components(), 2);
    }

    #[test]
    fn crossing_order_is_word_order() {
        let w = word("strands 2\nU 2\nP 1\nA 2\nN 1\n");
        assert_eq!(w.crossing_order(), &[1, 3]);
    }
}
