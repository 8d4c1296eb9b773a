//! Validated strongly convex rational polyhedral cones and their face
//! lattices.
//!
//! A cone is given by the primitive generators of its rays in the lattice `N`.
//! Validation enforces the standing assumptions: primitive nonzero rays,
//! strict convexity, full dimension, and extremality of every ray; a failing
//! input is rejected, never repaired.
//!
//! Facets are found by brute-force supporting-hyperplane enumeration over ray
//! subsets of size `d − 1`; the remaining faces are the closure of the facet
//! ray-sets under intersection. Ray indices in errors and displays are
//! 1-based.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::feasibility::in_nonneg_span;
use crate::linalg::{self, dot};
use crate::rayset::RaySet;

/// A vector in the lattice `N` (or `M`); the pairing is the integer dot
/// product in the chosen coordinates.
pub type LatticeVector = Vec<BigInt>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("no rays given")]
    EmptyRays,
    #[error("rank must be positive")]
    ZeroRank,
    #[error("ray {ray} has the wrong number of entries")]
    WrongLength { ray: usize },
    #[error("ray {ray} is not a primitive nonzero lattice vector")]
    NotPrimitive { ray: usize },
    #[error("cone is not strictly convex: ray {ray} spans a line inside it")]
    NotStrictlyConvex { ray: usize },
    #[error("rays span a subspace of dimension {found}, expected {expected}")]
    NotFullDimensional { found: usize, expected: usize },
    #[error("ray {ray} is a nonnegative combination of the other rays")]
    RedundantRay { ray: usize },
    #[error("at most 64 rays are supported, got {got}")]
    UnsupportedRayCount { got: usize },
}

/// A validated strongly convex full-dimensional cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    rank: usize,
    rays: Vec<LatticeVector>,
}

impl Cone {
    /// Validates and constructs a cone. Errors name the offending ray with a
    /// 1-based index.
    pub fn validate(rank: usize, rays: Vec<LatticeVector>) -> Result<Self, ConeError> {
        if rank == 0 {
            return Err(ConeError::ZeroRank);
        }
        if rays.is_empty() {
            return Err(ConeError::EmptyRays);
        }
        if rays.len() > 64 {
            return Err(ConeError::UnsupportedRayCount { got: rays.len() });
        }
        for (i, ray) in rays.iter().enumerate() {
            if ray.len() != rank {
                return Err(ConeError::WrongLength { ray: i + 1 });
            }
            let g = ray.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if g != BigInt::from(1) {
                return Err(ConeError::NotPrimitive { ray: i + 1 });
            }
        }
        for (i, ray) in rays.iter().enumerate() {
            let neg: LatticeVector = ray.iter().map(|x| -x).collect();
            if in_nonneg_span(&rays, &neg) {
                return Err(ConeError::NotStrictlyConvex { ray: i + 1 });
            }
        }
        let found = linalg::rank_int(&rays);
        if found != rank {
            return Err(ConeError::NotFullDimensional { found, expected: rank });
        }
        for i in 0..rays.len() {
            let others: Vec<LatticeVector> = rays
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, r)| r.clone())
                .collect();
            if in_nonneg_span(&others, &rays[i]) {
                return Err(ConeError::RedundantRay { ray: i + 1 });
            }
        }
        Ok(Cone { rank, rays })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &LatticeVector {
        &self.rays[i]
    }

    /// `⟨m, n(ρ_i)⟩` for every ray, in order.
    pub fn pairings(&self, m: &[BigInt]) -> Vec<BigInt> {
        self.rays.iter().map(|r| dot(m, r)).collect()
    }
}

/// A face of the cone, identified by the set of rays it contains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub rays: RaySet,
    pub dim: usize,
}

/// A facet together with its primitive inner normal: the normal pairs to zero
/// on the facet's rays and strictly positively on all others.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub rays: RaySet,
    pub normal: LatticeVector,
}

/// The complete face poset of a cone, from the zero cone to the cone itself.
#[derive(Debug, Clone)]
pub struct FaceLattice {
    n_rays: usize,
    faces: Vec<Face>,
    index: BTreeMap<u64, usize>,
    facets: Vec<Facet>,
}

pub type FaceId = usize;

impl FaceLattice {
    pub fn compute(cone: &Cone) -> Self {
        let n = cone.n_rays();
        let d = cone.rank();
        let mut facets: Vec<Facet> = Vec::new();
        let mut seen: BTreeSet<u64> = BTreeSet::new();
        for subset in (0..n).combinations(d.saturating_sub(1)) {
            let rows: Vec<LatticeVector> =
                subset.iter().map(|&i| cone.ray(i).clone()).collect();
            let Some(mut normal) = linalg::kernel_primitive(&rows, d) else {
                continue;
            };
            let mut pairings = cone.pairings(&normal);
            if pairings.iter().any(|p| p.is_positive())
                && pairings.iter().any(|p| p.is_negative())
            {
                continue; // not supporting
            }
            if pairings.iter().any(|p| p.is_negative()) {
                for v in &mut normal {
                    *v = -&*v;
                }
                for p in &mut pairings {
                    *p = -&*p;
                }
            }
            let zero_set =
                RaySet::from_indices((0..n).filter(|&i| pairings[i].is_zero()));
            if seen.insert(zero_set.0) {
                facets.push(Facet { rays: zero_set, normal });
            }
        }
        facets.sort_by_key(|f| f.rays.0);

        // all faces: close the facet ray-sets under intersection, plus σ
        let mut face_sets: BTreeSet<u64> = BTreeSet::new();
        face_sets.insert(RaySet::full(n).0);
        for f in &facets {
            face_sets.insert(f.rays.0);
        }
        loop {
            let mut fresh = Vec::new();
            for &a in &face_sets {
                for f in &facets {
                    let meet = a & f.rays.0;
                    if !face_sets.contains(&meet) {
                        fresh.push(meet);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            face_sets.extend(fresh);
        }

        let mut faces: Vec<Face> = face_sets
            .into_iter()
            .map(|mask| {
                let set = RaySet(mask);
                let rows: Vec<LatticeVector> =
                    set.iter().map(|i| cone.ray(i).clone()).collect();
                Face { rays: set, dim: linalg::rank_int(&rows) }
            })
            .collect();
        faces.sort_by_key(|f| (f.dim, f.rays.0));
        let index = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.rays.0, i))
            .collect();
        FaceLattice { n_rays: n, faces, index, facets }
    }

    pub fn n_rays(&self) -> usize {
        self.n_rays
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    pub fn face_id(&self, rays: RaySet) -> Option<FaceId> {
        self.index.get(&rays.0).copied()
    }

    /// Id of the zero cone (empty ray set).
    pub fn zero_cone(&self) -> FaceId {
        self.face_id(RaySet::empty()).expect("zero cone present")
    }

    /// Id of the cone itself (all rays).
    pub fn top(&self) -> FaceId {
        self.face_id(RaySet::full(self.n_rays)).expect("top present")
    }

    /// The minimal face whose ray set contains `pi`; the zero cone for
    /// `pi = ∅`.
    pub fn minimal_face(&self, pi: RaySet) -> FaceId {
        let mut meet = RaySet::full(self.n_rays);
        for f in &self.facets {
            if pi.is_subset(&f.rays) {
                meet = meet.intersection(&f.rays);
            }
        }
        self.face_id(meet)
            .expect("meet of facets is a face by closure")
    }

    /// `star(F) = {η : τ ≺ η for some τ ∈ F}`.
    pub fn star(&self, fs: &BTreeSet<FaceId>) -> BTreeSet<FaceId> {
        let mut out = BTreeSet::new();
        for (id, face) in self.faces.iter().enumerate() {
            if fs
                .iter()
                .any(|&t| self.faces[t].rays.is_subset(&face.rays))
            {
                out.insert(id);
            }
        }
        out
    }

    /// `codim τ = d − dim τ`, with `d` the dimension of the top face.
    pub fn codim(&self, id: FaceId) -> usize {
        self.faces[self.top()].dim - self.faces[id].dim
    }
}
