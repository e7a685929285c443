//! Threshold graphs built from error-correcting codes, and the gap-creating
//! reductions they power for k-MaxCover and k-SetCover.
//!
//! Everything here is meant to run at desk scale: every construction comes
//! with an exhaustive checker so that completeness and soundness guarantees
//! can be verified on concrete instances rather than assumed.
//!
//! Module map:
//!
//! * [`codes`]: Reed–Solomon, seeded random and perfect-hash-family codes,
//!   exact relative distance and collision number.
//! * [`threshold`]: the bipartite threshold graph of a code with an implicit
//!   adjacency rule, and a verifier for its three properties.
//! * [`maxcover`]: k-MaxCover instances, an exact solver, the pseudo-projection
//!   profile, and the code-based gap composition (plus the degree-bounded
//!   two-part variant).
//! * [`setcover`]: partitioned SetCover instances, exact cover search, and the
//!   threshold-graph composition of a SetCover instance.
//! * [`frontends`]: k-Clique and bounded-occurrence 3-SAT reductions into
//!   pseudo-projection MaxCover, plus DIMACS and edge-list parsers.
//! * [`pipeline`]: end-to-end clique and SAT pipelines producing reports.
//! * [`format`]: versioned JSON encodings for every instance type.

pub mod codes;
pub mod combinatorics;
pub mod format;
pub mod frontends;
pub mod maxcover;
pub mod pipeline;
pub mod rational;
pub mod setcover;
pub mod threshold;

pub use codes::{Code, CodeError, CodeKind};
pub use maxcover::{MaxCoverGraph, MaxCoverInstance};
pub use rational::Rational;
pub use setcover::SetCoverInstance;
pub use threshold::ThresholdGraph;
