//! Exact annular Khovanov homology for links in a thickened annulus.
//!
//! Diagrams are slice words (Morse presentations cut open along a seam);
//! the cube of resolutions is assembled into sparse integer complexes,
//! homology is computed exactly by Smith normal form, and a spectral
//! sequence engine for finite filtered complexes drives the winding
//! filtration and the cube filtration. On top sit the derived invariants:
//! tangle Khovanov homology, braid and unlink certificates, and colored
//! Khovanov homology via cabling.
//!
//! Start with [`diagram::SliceWord`], then [`apps::akh`] and friends; the
//! `examples/` directory has one runnable example per capability.

pub mod apps;
pub mod cli;
pub mod cube;
pub mod diagram;
pub mod homology;
pub mod linalg;
pub mod oracle;
pub mod selftest;
pub mod snf;
pub mod spectral;
pub mod tqft;
pub mod wordgen;

pub use apps::{akh, braid_certificate, colored_khr, kh, mirror_duality_report, tkh, unlink_certificate};
pub use diagram::{Slice, SliceKind, SliceWord};
pub use homology::{Coeff, GradedGroup};
pub use tqft::{assemble, GradedComplex, Mode};
