//! Local-global questions over Q: Hilbert symbols, conics, the two-torsion
//! of Weierstrass cubics, and exact point checks on quartics.

pub mod conic;
pub mod cubic;
pub mod hilbert;
pub mod poly;
pub mod quartic;
pub mod rational;

pub use conic::{
    analyze_conic, conic_local_invariants, conic_rational_point, conic_sdr, holzer_search, line_sdr, reduce_conic,
    ConicReport, MatrixPencil, PencilJson, ReducedDiagonal, TernaryQuadraticForm,
};
pub use cubic::{
    cubic_local_global_verdict, cubic_local_root_density, has_root_mod_p, CubicVerdict, GaloisImage, RootDensity,
    WeierstrassCubic,
};
pub use hilbert::{candidate_places, hilbert_symbol, hilbert_symbol_by_search, hilbert_symbol_int, nontrivial_places};
pub use poly::{det, Poly3, PolyJson, TermJson};
pub use quartic::{quartic_point_check, QuarticCheck, SAMPLE_QUARTICS};
pub use rational::{format_rational, parse_rational, Place};
