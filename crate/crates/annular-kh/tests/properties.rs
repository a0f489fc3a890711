//! Property tests for the structural invariants.

use annular_kh::cube::{gradings, labels_from_mask, resolve, Vertex};
use annular_kh::diagram::{Slice, SliceKind, SliceWord};
use annular_kh::homology::{homology, Coeff};
use annular_kh::tqft::{assemble, Mode};
use proptest::prelude::*;

fn kind_of(tag: u8) -> SliceKind {
    match tag % 4 {
        0 => SliceKind::PositiveCrossing,
        1 => SliceKind::NegativeCrossing,
        2 => SliceKind::Cup,
        _ => SliceKind::Cap,
    }
}

/// Raw slice streams, legal or not.
fn raw_streams() -> impl Strategy<Value = (usize, Vec<(u8, u8)>)> {
    (0usize..=4, prop::collection::vec((any::<u8>(), any::<u8>()), 0..12))
}

/// Valid words: interpret a raw stream so that every slice is legal, then
/// close the width profile back to the seam.
fn valid_words(max_crossings: usize) -> impl Strategy<Value = SliceWord> {
    raw_streams().prop_map(move |(seam, stream)| {
        let mut slices = Vec::new();
        let mut width = seam;
        let mut crossings = 0;
        for (tag, pos) in stream {
            let mut options = Vec::new();
            if width >= 2 && crossings < max_crossings {
                options.push(SliceKind::PositiveCrossing);
                options.push(SliceKind::NegativeCrossing);
            }
            if width <= 5 {
                options.push(SliceKind::Cup);
            }
            if width >= 2 {
                options.push(SliceKind::Cap);
            }
            if options.is_empty() {
                break;
            }
            let kind = options[kind_of(tag) as usize % options.len()];
            let position = match kind {
                SliceKind::Cup => 1 + pos as usize % (width + 1),
                _ => 1 + pos as usize % (width - 1).max(1),
            };
            if kind.is_crossing() {
                crossings += 1;
            }
            width = match kind {
                SliceKind::Cup => width + 2,
                SliceKind::Cap => width - 2,
                _ => width,
            };
            slices.push(Slice::new(kind, position));
        }
        while width > seam {
            slices.push(Slice::new(SliceKind::Cap, 1));
            width -= 2;
        }
        while width < seam {
            slices.push(Slice::new(SliceKind::Cup, 1));
            width += 2;
        }
        SliceWord::new(seam, slices).expect("constructed to be legal")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The validator accepts a raw stream exactly when an independent
    /// width simulation says it is legal.
    #[test]
    fn validation_matches_width_simulation((seam, stream) in raw_streams()) {
        let slices: Vec<Slice> = stream
            .iter()
            .map(|&(tag, pos)| Slice::new(kind_of(tag), 1 + pos as usize % 8))
            .collect();
        let mut width = seam as i64;
        let mut legal = true;
        for s in &slices {
            let i = s.position as i64;
            let ok = match s.kind {
                SliceKind::PositiveCrossing | SliceKind::NegativeCrossing => i < width,
                SliceKind::Cup => i <= width + 1,
                SliceKind::Cap => i < width,
            };
            if !ok {
                legal = false;
                break;
            }
            width += match s.kind {
                SliceKind::Cup => 2,
                SliceKind::Cap => -2,
                _ => 0,
            };
        }
        legal &= width == seam as i64;
        prop_assert_eq!(SliceWord::new(seam, slices).is_ok(), legal);
    }

    #[test]
    fn mirror_is_an_involution(w in valid_words(6)) {
        prop_assert_eq!(w.mirror().mirror(), w);
    }

    #[test]
    fn round_trip_through_text(w in valid_words(6)) {
        prop_assert_eq!(SliceWord::parse(&w.to_text()).unwrap(), w);
    }

    /// Accepted words always trace: every resolution is a disjoint set of
    /// embedded circles with windings in {-1, 0, 1} and the right parity.
    #[test]
    fn resolutions_trace_with_legal_windings(w in valid_words(4)) {
        let seam = w.seam_width() as i32;
        for bits in 0..1u64 << w.crossings() {
            let r = resolve(&w, Vertex::new(bits));
            prop_assert!(r.circles().iter().all(|c| c.winding.abs() <= 1));
            let total: i32 = r.circles().iter().map(|c| c.winding.abs()).sum();
            prop_assert!(total <= seam);
            prop_assert_eq!((total - seam).rem_euclid(2), 0);
            prop_assert!(r.nontrivial_count() <= w.seam_width());
        }
    }

    /// Generator count at a vertex is 2^circles, and the winding grading
    /// obeys the seam bound with matching parity.
    #[test]
    fn generator_grading_bounds(w in valid_words(3)) {
        let seam = w.seam_width() as i32;
        for bits in 0..1u64 << w.crossings() {
            let v = Vertex::new(bits);
            let r = resolve(&w, v);
            let n = r.circle_count();
            let mut seen = 0usize;
            for mask in 0..1u64 << n {
                let labels = labels_from_mask(mask, n);
                let (_, _, k) = gradings(&w, &r, v, &labels);
                prop_assert!(k.abs() <= seam);
                prop_assert_eq!((k - seam).rem_euclid(2), 0);
                seen += 1;
            }
            prop_assert_eq!(seen, 1 << n);
        }
    }

    /// Both differentials square to zero.
    #[test]
    fn differentials_square_to_zero(w in valid_words(4)) {
        for mode in [Mode::Annular, Mode::Plain] {
            let cx = assemble(&w, mode).unwrap();
            prop_assert!(cx.verify_d_squared().is_ok());
        }
    }

    /// Euler characteristics of chain level and homology agree per block.
    #[test]
    fn euler_characteristic_is_preserved(w in valid_words(3)) {
        let cx = assemble(&w, Mode::Annular).unwrap();
        let g = homology(&cx, Coeff::Rationals);
        let mut chain: std::collections::BTreeMap<(i32, i32), i64> = Default::default();
        for (key, block) in cx.blocks() {
            *chain.entry((key.q, key.k)).or_default() += block.euler_characteristic();
        }
        chain.retain(|_, v| *v != 0);
        let mut hom = g.euler_by_block();
        hom.retain(|_, v| *v != 0);
        prop_assert_eq!(chain, hom);
    }

    /// Plain homology rank never exceeds annular rank.
    #[test]
    fn plain_rank_bounded_by_annular_rank(w in valid_words(3)) {
        let a = homology(&assemble(&w, Mode::Annular).unwrap(), Coeff::Rationals);
        let p = homology(&assemble(&w, Mode::Plain).unwrap(), Coeff::Rationals);
        prop_assert!(p.total_free() <= a.total_free());
    }

    /// Rank over F2 dominates the rational rank.
    #[test]
    fn f2_rank_dominates(w in valid_words(3)) {
        let cx = assemble(&w, Mode::Plain).unwrap();
        let q = homology(&cx, Coeff::Rationals);
        let f2 = homology(&cx, Coeff::PrimeField(2));
        prop_assert!(f2.total_free() >= q.total_free());
    }
}
