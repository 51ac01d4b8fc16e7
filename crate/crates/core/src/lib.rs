//! Centrally symmetric PL spheres without induced cs 4-cycles, built one
//! dimension at a time, and their quotients: small triangulations of `RP^d`.
//!
//! The pipeline is [`tower::build`] to get the flag of spheres with their
//! certificates, [`cs::quotient_rp`] to pass to projective space, and the
//! checks in [`verify`] and [`homology`] to validate the output.

pub mod complex;
pub mod cs;
pub mod error;
pub mod format;
pub mod homology;
pub mod kuhnel;
pub mod prism;
pub mod tower;
mod util;
pub mod verify;

pub use complex::{FVector, Face, SimplicialComplex, VertexId, VertexSet};
pub use cs::{check_cs, find_induced_cs_4cycle, quotient_rp, Antipodal, CsComplex};
pub use error::{Error, Result};
pub use homology::{betti_gf2, homology_z, HomologyGroups};
pub use kuhnel::{barycentric_boundary_simplex, kuhnel_rpd};
pub use tower::{build, build_rpd, Certificate, Tower};
