//! Derived invariants: annular and plain homology facades, tangle
//! Khovanov homology, braid and unlink certificates, colored Khovanov
//! homology via cabling, and the mirror duality report.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{DiagramError, SliceWord};
use crate::homology::{homology, Coeff, GradedGroup};
use crate::tqft::{assemble, AssembleError, Mode};

#[derive(Debug, Error)]
pub enum AppError {
    #[error(transparent)]
    Assemble(#[from] AssembleError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("declared {declared} components but the diagram traces {traced}")]
    ComponentMismatch { declared: usize, traced: usize },
    #[error("colored homology needs a 1-1 tangle word (seam width 1), got {0}")]
    NotAKnotTangle(usize),
}

/// Annular Khovanov homology of a slice word.
pub fn akh(word: &SliceWord, coeff: Coeff) -> Result<GradedGroup, AppError> {
    Ok(homology(&assemble(word, Mode::Annular)?, coeff))
}

/// Plain Khovanov homology (the winding grading is collapsed to zero in
/// the reported table; it is not preserved by the full differential).
pub fn kh(word: &SliceWord, coeff: Coeff) -> Result<GradedGroup, AppError> {
    Ok(homology(&assemble(word, Mode::Plain)?, coeff))
}

/// Tangle Khovanov homology of the closed-up tangle: the summand of the
/// annular homology at winding grading equal to the seam width, over the
/// rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TkhTable {
    pub seam_width: usize,
    /// `(h, q) -> dim` at `k = seam_width`.
    pub dims: BTreeMap<(i32, i32), usize>,
}

impl TkhTable {
    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .dims
            .iter()
            .map(|(&(h, q), &dim)| serde_json::json!({"h": h, "q": q, "dim": dim}))
            .collect();
        serde_json::json!({
            "k": self.seam_width,
            "total": self.total(),
            "entries": entries,
        })
    }
}

impl fmt::Display for TkhTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tangle homology at k={} (total {})", self.seam_width, self.total())?;
        for (&(h, q), &dim) in &self.dims {
            writeln!(f, "  h={h:>3} q={q:>3} dim={dim}")?;
        }
        Ok(())
    }
}

pub fn tkh(word: &SliceWord) -> Result<TkhTable, AppError> {
    let g = akh(word, Coeff::Rationals)?;
    let seam = word.seam_width() as i32;
    let dims = g
        .entries()
        .filter(|(grad, _)| grad.k == seam)
        .map(|(grad, e)| ((grad.h, grad.q), e.free))
        .collect();
    Ok(TkhTable { seam_width: word.seam_width(), dims })
}

/// A decided certificate, carrying the witness table it examined.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub passed: bool,
    pub witness: serde_json::Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictKind {
    BraidCertificate,
    UnlinkCertificate,
}

impl Verdict {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": match self.kind {
                VerdictKind::BraidCertificate => "BraidCertificate",
                VerdictKind::UnlinkCertificate => "UnlinkCertificate",
            },
            "passed": self.passed,
            "witness": self.witness,
        })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            VerdictKind::BraidCertificate => "braid certificate",
            VerdictKind::UnlinkCertificate => "unlink certificate",
        };
        write!(f, "{name}: {}", if self.passed { "PASSED" } else { "FAILED" })
    }
}

/// A tangle closes up to a braid exactly when its tangle Khovanov homology
/// is one-dimensional over a field of characteristic zero. Both outcomes
/// of this certificate are conclusive.
pub fn braid_certificate(word: &SliceWord) -> Result<Verdict, AppError> {
    let table = tkh(word)?;
    Ok(Verdict {
        kind: VerdictKind::BraidCertificate,
        passed: table.total() == 1,
        witness: table.to_json(),
    })
}

/// Unlink certificate: the integer annular homology must be supported at
/// winding grading zero and match the unlink table there (everything in
/// homological degree zero, torsion-free, binomial quantum profile).
/// A pass certifies an unlink in the annulus; a failure is inconclusive
/// about the link type in the ambient three-sphere.
pub fn unlink_certificate(word: &SliceWord, components: usize) -> Result<Verdict, AppError> {
    let traced = word.link_components();
    if traced != components {
        return Err(AppError::ComponentMismatch { declared: components, traced });
    }
    let g = akh(word, Coeff::Integers)?;
    let supported_at_zero = g.entries().all(|(grad, _)| grad.k == 0);
    let mut matches_unlink = supported_at_zero && !g.has_torsion();
    if matches_unlink {
        for (grad, e) in g.entries() {
            if grad.h != 0 {
                matches_unlink = false;
                break;
            }
            let expected = binomial(components, (grad.q + components as i32) / 2);
            if grad.q.abs() > components as i32
                || (grad.q + components as i32) % 2 != 0
                || e.free != expected
            {
                matches_unlink = false;
                break;
            }
        }
        // All 2^n dimensions must be present, not just the ones we saw.
        if matches_unlink {
            matches_unlink = g.total_free() == 1usize << components;
        }
    }
    Ok(Verdict {
        kind: VerdictKind::UnlinkCertificate,
        passed: matches_unlink,
        witness: g.to_json(),
    })
}

fn binomial(n: usize, k: i32) -> usize {
    if k < 0 || k as usize > n {
        return 0;
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Reduced colored Khovanov homology of a knot presented as a 1-1 tangle:
/// the tangle homology of the blackboard-framed n-cable. Gradings are not
/// renormalized for the framing.
pub fn colored_khr(word: &SliceWord, cables: usize) -> Result<TkhTable, AppError> {
    if word.seam_width() != 1 {
        return Err(AppError::NotAKnotTangle(word.seam_width()));
    }
    let cabled = word.cable(cables)?;
    tkh(&cabled)
}

/// Mirror duality report: rational annular homology of the mirror at
/// `(-h, -q, -k)` against the original at `(h, q, k)`.
#[derive(Debug, Clone)]
pub struct MirrorReport {
    pub symmetric: bool,
    pub mismatches: Vec<(i32, i32, i32, usize, usize)>,
    pub original: GradedGroup,
    pub mirrored: GradedGroup,
}

pub fn mirror_duality_report(word: &SliceWord) -> Result<MirrorReport, AppError> {
    let original = akh(word, Coeff::Rationals)?;
    let mirrored = akh(&word.mirror(), Coeff::Rationals)?;
    let mut mismatches = Vec::new();
    let mut keys: Vec<(i32, i32, i32)> = original
        .entries()
        .map(|(g, _)| (g.h, g.q, g.k))
        .chain(mirrored.entries().map(|(g, _)| (-g.h, -g.q, -g.k)))
        .collect();
    keys.sort_unstable();
    keys.dedup();
    for (h, q, k) in keys {
        let a = original.entry(h, q, k).free;
        let b = mirrored.entry(-h, -q, -k).free;
        if a != b {
            mismatches.push((h, q, k, a, b));
        }
    }
    Ok(MirrorReport { symmetric: mismatches.is_empty(), mismatches, original, mirrored })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::SliceWord;

    fn word(text: &str) -> SliceWord {
        SliceWord::parse(text).unwrap()
    }

    /// `unknots` split unknots next to `cores` core-parallel circles.
    fn unlink_word(unknots: usize, cores: usize) -> SliceWord {
        let mut u = SliceWord::parse("strands 0\n").unwrap();
        for _ in 0..unknots {
            u = u.disjoint_union(&word("strands 0\nU 1\nA 1\n"));
        }
        u.disjoint_union(&SliceWord::new(cores, vec![]).unwrap())
    }

    #[test]
    fn crossingless_dimension_formula() {
        for unknots in 0..=3 {
            for cores in 0..=3 {
                let w = unlink_word(unknots, cores);
                let g = akh(&w, Coeff::Rationals).unwrap();
                let by_k = g.free_by_k();
                for i in -(cores as i32 + 2)..=(cores as i32 + 2) {
                    let expected = if i.abs() <= cores as i32 && (cores as i32 - i) % 2 == 0 {
                        (1usize << unknots) * binomial(cores, (cores as i32 + i) / 2)
                    } else {
                        0
                    };
                    assert_eq!(
                        by_k.get(&i).copied().unwrap_or(0),
                        expected,
                        "unknots={unknots} cores={cores} i={i}"
                    );
                }
            }
        }
    }

    #[test]
    fn tkh_of_identity_braids_is_one() {
        for n in 1..=3 {
            let w = SliceWord::from_braid(n, &[]).unwrap();
            let t = tkh(&w).unwrap();
            assert_eq!(t.total(), 1, "identity braid on {n} strands");
        }
    }

    #[test]
    fn tkh_of_sigma1_is_one() {
        let t = tkh(&SliceWord::from_braid(2, &[1]).unwrap()).unwrap();
        assert_eq!(t.total(), 1);
    }

    #[test]
    fn tkh_of_turnback_is_zero() {
        let t = tkh(&word("strands 2\nA 1\nU 1\n")).unwrap();
        assert_eq!(t.total(), 0);
    }

    #[test]
    fn braid_certificates() {
        assert!(braid_certificate(&SliceWord::from_braid(2, &[1, -1]).unwrap())
            .unwrap()
            .passed);
        assert!(!braid_certificate(&word("strands 2\nA 1\nU 1\n")).unwrap().passed);
        // sigma_1^2 composed with a turnback is not a braid.
        assert!(!braid_certificate(&word("strands 2\nP 1\nP 1\nA 1\nU 1\n"))
            .unwrap()
            .passed);
    }

    #[test]
    fn unlink_certificates() {
        let split_u2 = word("strands 0\nU 1\nA 1\nU 1\nA 1\n");
        assert!(unlink_certificate(&split_u2, 2).unwrap().passed);

        let sigma = SliceWord::from_braid(2, &[1]).unwrap();
        assert!(!unlink_certificate(&sigma, 1).unwrap().passed);

        let core = word("strands 1\n");
        assert!(!unlink_certificate(&core, 1).unwrap().passed);
    }

    #[test]
    fn unlink_certificate_checks_component_count() {
        let core = word("strands 1\n");
        assert!(matches!(
            unlink_certificate(&core, 2),
            Err(AppError::ComponentMismatch { declared: 2, traced: 1 })
        ));
    }

    #[test]
    fn colored_unknot_is_one_dimensional() {
        let unknot_tangle = word("strands 1\n");
        for n in 1..=3 {
            let t = colored_khr(&unknot_tangle, n).unwrap();
            assert_eq!(t.total(), 1, "n={n}");
        }
    }

    #[test]
    fn colored_with_one_cable_is_tkh() {
        let w = word("strands 1\nU 2\nP 1\nA 2\n");
        let colored = colored_khr(&w, 1).unwrap();
        let direct = tkh(&w).unwrap();
        assert_eq!(colored, direct);
    }

    #[test]
    fn colored_rejects_wide_tangles() {
        let w = SliceWord::from_braid(2, &[1]).unwrap();
        assert!(matches!(colored_khr(&w, 2), Err(AppError::NotAKnotTangle(2))));
    }

    #[test]
    fn trefoil_tangle_reduced_homology() {
        // 1-1 tangle whose closure is the trefoil with one strand through
        // the annulus: sigma_1^3 with one strand closed off in the ball.
        let w = word("strands 1\nU 2\nP 1\nP 1\nP 1\nA 2\n");
        let t = tkh(&w).unwrap();
        assert_eq!(t.total(), 3);
        assert_eq!(colored_khr(&w, 1).unwrap().total(), 3);
    }

    #[test]
    fn mirror_duality_on_small_words() {
        for w in [
            word("strands 1\n"),
            SliceWord::from_braid(2, &[1]).unwrap(),
            word("strands 0\nU 1\nU 1\nP 2\nP 2\nP 2\nA 1\nA 1\n"),
        ] {
            let report = mirror_duality_report(&w).unwrap();
            assert!(report.symmetric, "mismatches: {:?}", report.mismatches);
        }
    }

    #[test]
    fn kh_rank_never_exceeds_akh_rank() {
        for w in [
            SliceWord::from_braid(2, &[1, 1]).unwrap(),
            SliceWord::from_braid(3, &[1, -2]).unwrap(),
            word("strands 2\nA 1\nU 1\n"),
        ] {
            let a = akh(&w, Coeff::Rationals).unwrap();
            let k = kh(&w, Coeff::Rationals).unwrap();
            assert!(k.total_free() <= a.total_free());
            for (h, dim) in k.free_by_h() {
                assert!(dim <= a.free_by_h().get(&h).copied().unwrap_or(0));
            }
        }
    }

    #[test]
    fn tkh_parity_is_odd_for_braids_and_stable_under_crossing_switch() {
        for braid in [vec![1i64], vec![1, 1], vec![1, -1], vec![1, 1, 1]] {
            let w = SliceWord::from_braid(2, &braid).unwrap();
            assert_eq!(tkh(&w).unwrap().total() % 2, 1, "braid {braid:?}");
            // Switch the first crossing.
            let mut switched = braid.clone();
            switched[0] = -switched[0];
            let sw = SliceWord::from_braid(2, &switched).unwrap();
            assert_eq!(
                tkh(&w).unwrap().total() % 2,
                tkh(&sw).unwrap().total() % 2
            );
        }
    }

    #[test]
    fn binomial_basics() {
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(3, 2), 3);
        assert_eq!(binomial(3, -1), 0);
        assert_eq!(binomial(0, 0), 1);
    }
}
