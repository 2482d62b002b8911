//! Explicit subgroups built from finite-field data, and the certifier that
//! combines a global image with local images.

mod certify;
mod dihedral;
mod obstruction;

pub use certify::{
    certify_counterexample, CertificateFile, GeneratorList, LocalImageSpec, LocalVerdict, ObstructionCertificate,
    Verdict,
};
pub use dihedral::{build_dihedral_pair, verify_pair, DihedralPair, PairReport, MAX_PAIR_M};
pub use obstruction::{
    build_obstruction_group, embed_planes, obstruction_report, swap_planes, ObstructionGroup, ObstructionReport,
};
