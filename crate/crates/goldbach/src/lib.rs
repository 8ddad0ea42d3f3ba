//! Averaged Goldbach representations in arithmetic progressions.
//!
//! The crate computes the Λ-weighted representation function
//! R(n, q₁, a₁, q₂, a₂) exactly, locates nontrivial zeros of Dirichlet
//! L-functions with argument-principle certificates, and assembles the
//! mean value Σ_{n≤X} R into a main term, oscillating zero-sum terms built
//! from the kernel W(X,z,w) = Γ(z)Γ(w)/Γ(z+w) · X^{z+w}/(z+w), real-zero
//! corrections, and a monitored residual. A circle-method harness checks
//! the generating-function identities the expansion rests on.
//!
//! See the book under `book/` for a guided tour; the `goldbach` CLI drives
//! the same pipelines from the command line.

pub mod characters;
pub mod circle;
pub mod error;
pub mod fft;
pub mod hurwitz;
pub mod lemmas;
pub mod lfun;
pub mod mangoldt;
pub mod quadrature;
pub mod representation;
pub mod special;
pub mod summation;
pub mod theorem;
pub mod zeros;

pub use characters::{
    build_group, conductor_and_primitive, euler_phi, gauss_sum, principal_indicator,
    CharacterGroup, DirichletCharacter,
};
pub use error::{Error, Result};
pub use mangoldt::{sieve_mangoldt, MangoldtTable};
pub use representation::{
    representation_direct, representation_fft, ClassPair, RepresentationTable, ResidueClass,
};
pub use theorem::{g_term, h_term, ruppel_comparison, theorem_report, GroupZeros, TheoremReport};
pub use zeros::{
    find_critical_zeros, ingest_zero_table, scan_real_zeros, siegel_audit, SiegelReport, Zero,
    ZeroKind, ZeroSet,
};
