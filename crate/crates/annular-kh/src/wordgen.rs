//! Random valid slice words, for fuzzing and the self-test corpus.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::diagram::{Slice, SliceKind, SliceWord};

/// Bounds for the generator. Widths stay small enough that the cube stays
/// cheap while still covering all slice kinds and seam interactions.
#[derive(Debug, Clone, Copy)]
pub struct WordGenConfig {
    pub max_crossings: usize,
    pub max_seam_width: usize,
    pub max_middle_slices: usize,
    pub max_width: usize,
}

impl Default for WordGenConfig {
    fn default() -> Self {
        WordGenConfig { max_crossings: 6, max_seam_width: 4, max_middle_slices: 10, max_width: 7 }
    }
}

/// Deterministic stream of random valid words from a seed.
pub fn random_words(seed: u64, count: usize, config: WordGenConfig) -> Vec<SliceWord> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count).map(|_| random_word(&mut rng, config)).collect()
}

fn random_word(rng: &mut StdRng, config: WordGenConfig) -> SliceWord {
    let seam = rng.gen_range(0..=config.max_seam_width);
    let mut slices = Vec::new();
    let mut width = seam;
    let mut crossings = 0;
    for _ in 0..rng.gen_range(0..=config.max_middle_slices) {
        let mut options: Vec<SliceKind> = Vec::new();
        if width >= 2 && crossings < config.max_crossings {
            options.push(SliceKind::PositiveCrossing);
            options.push(SliceKind::NegativeCrossing);
        }
        if width + 2 <= config.max_width {
            options.push(SliceKind::Cup);
        }
        if width >= 2 {
            options.push(SliceKind::Cap);
        }
        if options.is_empty() {
            break;
        }
        let kind = options[rng.gen_range(0..options.len())];
        let position = match kind {
            SliceKind::Cup => rng.gen_range(1..=width + 1),
            _ => rng.gen_range(1..width),
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
    // Close the width profile back to the seam.
    while width > seam {
        let position = rng.gen_range(1..width);
        slices.push(Slice::new(SliceKind::Cap, position));
        width -= 2;
    }
    while width < seam {
        let position = rng.gen_range(1..=width + 1);
        slices.push(Slice::new(SliceKind::Cup, position));
        width += 2;
    }
    SliceWord::new(seam, slices).expect("generator produces valid words")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_words_are_valid_and_deterministic() {
        let a = random_words(7, 50, WordGenConfig::default());
        let b = random_words(7, 50, WordGenConfig::default());
        assert_eq!(a, b);
        assert!(a.iter().any(|w| w.crossings() > 0));
        for w in &a {
            assert!(w.crossings() <= 6);
            assert!(w.seam_width() <= 4);
        }
    }

    #[test]
    fn generated_words_resolve_everywhere() {
        use crate::cube::{resolve, Vertex};
        for w in random_words(11, 30, WordGenConfig::default()) {
            for bits in 0..1u64 << w.crossings() {
                let r = resolve(&w, Vertex::new(bits));
                assert!(r.circles().iter().all(|c| c.winding.abs() <= 1));
            }
        }
    }
}
