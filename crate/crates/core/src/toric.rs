//! Divisors, monomial ideals, and the derived combinatorics: support,
//! cosupport, and the negative-ray set `Σ_m`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::cone::{Cone, FaceId, FaceLattice, LatticeVector};
use crate::linalg::dot;
use crate::rayset::RaySet;
use crate::simplicial::SimplicialComplex;

/// A torus-invariant Weil divisor `D = Σ n_ρ D_ρ`, one integer coefficient
/// per ray in the cone's ray order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Divisor {
    pub coefficients: Vec<BigInt>,
}

impl Divisor {
    pub fn new(coefficients: Vec<BigInt>) -> Self {
        Divisor { coefficients }
    }

    pub fn zero(n_rays: usize) -> Self {
        Divisor { coefficients: vec![BigInt::zero(); n_rays] }
    }

    /// The threshold `−n_ρ` of ray `i` in the defining inequalities
    /// `⟨m, n(ρ)⟩ ≥ −n_ρ` of `M^D`.
    pub fn threshold(&self, i: usize) -> BigInt {
        -&self.coefficients[i]
    }
}

/// A monomial ideal: either the maximal homogeneous ideal `𝔪`, or a finitely
/// generated ideal given by the degrees of its generators inside `σ_M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialIdeal {
    Maximal,
    Generated(Vec<LatticeVector>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("generator {index} lies outside the dual semigroup (negative pairing on ray {ray})")]
    InvalidGenerator { index: usize, ray: usize },
    #[error("a generated ideal needs at least one generator")]
    NoGenerators,
}

/// A star-closed set of faces, the support of a monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSet {
    face_ids: BTreeSet<FaceId>,
}

impl SupportSet {
    /// Wraps a star-closed set of faces.
    pub fn from_star_closed(lattice: &FaceLattice, face_ids: BTreeSet<FaceId>) -> Self {
        debug_assert_eq!(lattice.star(&face_ids), face_ids, "support must be star-closed");
        SupportSet { face_ids }
    }

    pub fn face_ids(&self) -> &BTreeSet<FaceId> {
        &self.face_ids
    }

    pub fn is_empty(&self) -> bool {
        self.face_ids.is_empty()
    }

    pub fn contains(&self, id: FaceId) -> bool {
        self.face_ids.contains(&id)
    }
}

/// The support of `B`: faces `τ` such that no element of the ideal has degree
/// in `τ^⊥ ∩ σ̌`. For a finitely generated ideal this holds exactly when no
/// generator pairs to zero with every ray of `τ` (sums of nonnegatives vanish
/// only termwise). For the maximal ideal the support is `{σ}`.
pub fn support(
    cone: &Cone,
    lattice: &FaceLattice,
    ideal: &MonomialIdeal,
) -> Result<SupportSet, IdealError> {
    match ideal {
        MonomialIdeal::Maximal => Ok(SupportSet {
            face_ids: BTreeSet::from([lattice.top()]),
        }),
        MonomialIdeal::Generated(gens) => {
            if gens.is_empty() {
                return Err(IdealError::NoGenerators);
            }
            let pairings: Vec<Vec<BigInt>> = gens
                .iter()
                .enumerate()
                .map(|(gi, g)| {
                    let p = cone.pairings(g);
                    if let Some(ray) = p.iter().position(|x| x < &BigInt::zero()) {
                        return Err(IdealError::InvalidGenerator { index: gi + 1, ray: ray + 1 });
                    }
                    Ok(p)
                })
                .collect::<Result<_, _>>()?;
            let mut ids = BTreeSet::new();
            for (id, face) in lattice.faces().iter().enumerate() {
                let in_orthogonal = |p: &Vec<BigInt>| face.rays.iter().all(|r| p[r].is_zero());
                if !pairings.iter().any(in_orthogonal) {
                    ids.insert(id);
                }
            }
            Ok(SupportSet { face_ids: ids })
        }
    }
}

/// The cosupport `Ξ_F = {Π ⊆ Σ : τ_Π ∉ star(F)}`, a simplicial subcomplex of
/// the full simplex on the rays.
pub fn cosupport(lattice: &FaceLattice, support: &SupportSet) -> SimplicialComplex {
    let star = lattice.star(&support.face_ids);
    let n = lattice.n_rays();
    let mut faces = BTreeSet::new();
    for pi in RaySet::full(n).subsets() {
        if !star.contains(&lattice.minimal_face(pi)) {
            faces.insert(pi.0);
        }
    }
    SimplicialComplex::from_closed(n, faces)
}

/// `Σ_m = {ρ : ⟨m, n(ρ)⟩ < −n_ρ}`, the rays whose divisor-shifted inequality
/// fails strictly at degree `m`. Empty exactly when `m ∈ M^D`.
pub fn sigma_m(cone: &Cone, divisor: &Divisor, m: &[BigInt]) -> RaySet {
    RaySet::from_indices((0..cone.n_rays()).filter(|&i| {
        dot(m, cone.ray(i)) < divisor.threshold(i)
    }))
}
