//! Exact arithmetic for normal semigroup rings.
//!
//! Given a strongly convex rational polyhedral cone, a torus-invariant Weil
//! divisor and a monomial ideal, this crate computes graded local cohomology
//! of the associated rank-one reflexive module, classifies the chambers of the
//! induced hyperplane arrangement, and certifies or enumerates maximal
//! Cohen-Macaulay modules of rank one by exact integer feasibility.
//!
//! All arithmetic is arbitrary-precision integer/rational; there is no
//! floating point anywhere in the crate.
//!
//! The main entry points are:
//!
//! * [`cone::Cone`] and [`cone::FaceLattice`]: validated cones and their
//!   face posets,
//! * [`simplicial`]: exact reduced and relative simplicial cohomology over a
//!   configurable coefficient field,
//! * [`toric`]: divisors, monomial ideals, supports and cosupports,
//! * [`feasibility`]: exact rational LP (simplex with Bland's rule) and
//!   certified integer feasibility,
//! * [`chambers`]: classification of the chambers `C^s`, `C^ss`, `C` of the
//!   shifted arrangement,
//! * [`engine`]: graded local cohomology, depth, singularity sets, and
//!   Cohen-Macaulay certification/enumeration.

pub mod chambers;
pub mod cone;
pub mod engine;
pub mod feasibility;
pub mod linalg;
pub mod rayset;
pub mod simplicial;
pub mod toric;

pub use cone::{Cone, ConeError, Face, FaceLattice};
pub use rayset::RaySet;

/// Default cap on the number of rays accepted by the `2^n` sweep operations.
pub const DEFAULT_RAY_CAP: usize = 12;

/// Error raised by sweep operations when the ray count exceeds the cap.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cone has {rays} rays, exceeding the sweep cap of {cap}")]
pub struct TooManyRays {
    pub rays: usize,
    pub cap: usize,
}

pub(crate) fn check_ray_cap(rays: usize, cap: usize) -> Result<(), TooManyRays> {
    if rays > cap {
        Err(TooManyRays { rays, cap })
    } else {
        Ok(())
    }
}
