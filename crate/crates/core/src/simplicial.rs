//! The ordered simplex over the rays, its subcomplexes, and exact reduced and
//! relative cohomology over a configurable coefficient field.
//!
//! Faces are subsets of the vertex universe `{1..n}` (stored as [`RaySet`]
//! bitmasks); orientation signs come from the fixed global vertex order. A
//! face with `s` vertices sits in cochain degree `s − 1`, so the empty face is
//! the augmentation in degree `−1`.
//!
//! Cohomology dimensions are rank deficiencies of the integer coboundary
//! matrices, computed exactly: fraction-free elimination over the integers in
//! characteristic zero, Gaussian elimination over the prime field otherwise.
//! No floating point is involved anywhere.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::linalg;
use crate::rayset::RaySet;

/// Coefficient field, determined by its characteristic (0 or a prime).
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    characteristic: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0} is not zero or a prime")]
pub struct NotPrime(pub u64);

impl FieldSpec {
    pub const RATIONAL: FieldSpec = FieldSpec { characteristic: 0 };

    pub fn new(characteristic: u64) -> Result<Self, NotPrime> {
        if characteristic == 0 || linalg::is_prime_u64(characteristic) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(NotPrime(characteristic))
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    fn rank(&self, m: &[Vec<BigInt>]) -> usize {
        if self.characteristic == 0 {
            linalg::rank_int(m)
        } else {
            linalg::rank_mod_p(m, self.characteristic)
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::RATIONAL
    }
}

/// A downward-closed family of faces over an ordered vertex universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    universe: usize,
    faces: BTreeSet<u64>,
}

impl SimplicialComplex {
    /// Builds the downward closure of the given faces.
    pub fn from_faces<I: IntoIterator<Item = RaySet>>(universe: usize, faces: I) -> Self {
        let mut out = BTreeSet::new();
        for f in faces {
            for sub in f.subsets() {
                out.insert(sub.0);
            }
        }
        SimplicialComplex { universe, faces: out }
    }

    /// Wraps an already downward-closed family.
    pub fn from_closed(universe: usize, faces: BTreeSet<u64>) -> Self {
        let k = SimplicialComplex { universe, faces };
        debug_assert!(k.is_downward_closed());
        k
    }

    /// The full simplex on a vertex subset.
    pub fn full_simplex(universe: usize, vertices: RaySet) -> Self {
        SimplicialComplex::from_faces(universe, [vertices])
    }

    /// The empty family (no faces at all, not even the empty face).
    pub fn void(universe: usize) -> Self {
        SimplicialComplex { universe, faces: BTreeSet::new() }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn contains(&self, f: RaySet) -> bool {
        self.faces.contains(&f.0)
    }

    pub fn n_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> impl Iterator<Item = RaySet> + '_ {
        self.faces.iter().map(|&m| RaySet(m))
    }

    pub fn is_downward_closed(&self) -> bool {
        self.faces.iter().all(|&m| {
            RaySet(m)
                .indices()
                .into_iter()
                .all(|i| self.faces.contains(&(m & !(1 << i))))
        })
    }

    /// Faces grouped by vertex count, each group sorted by mask.
    fn by_size(&self) -> Vec<Vec<RaySet>> {
        let max = self
            .faces
            .iter()
            .map(|&m| RaySet(m).len())
            .max()
            .unwrap_or(0);
        let mut out = vec![Vec::new(); max + 1];
        for &m in &self.faces {
            out[RaySet(m).len()].push(RaySet(m));
        }
        out
    }

    /// Connected components of the 1-skeleton; 0 for a complex without
    /// vertices.
    pub fn connected_components(&self) -> usize {
        let verts: Vec<usize> = self
            .faces
            .iter()
            .filter(|&&m| RaySet(m).len() == 1)
            .map(|&m| m.trailing_zeros() as usize)
            .collect();
        if verts.is_empty() {
            return 0;
        }
        let mut parent: Vec<usize> = (0..self.universe).collect();
        fn find(p: &mut Vec<usize>, i: usize) -> usize {
            if p[i] != i {
                let r = find(p, p[i]);
                p[i] = r;
            }
            p[i]
        }
        for &m in &self.faces {
            let f = RaySet(m);
            if f.len() == 2 {
                let idx = f.indices();
                let (a, b) = (find(&mut parent, idx[0]), find(&mut parent, idx[1]));
                parent[a] = b;
            }
        }
        verts
            .iter()
            .map(|&v| find(&mut parent, v))
            .collect::<BTreeSet<_>>()
            .len()
    }
}

/// The subcomplex of faces of `k` contained in `pi`.
pub fn restrict(k: &SimplicialComplex, pi: RaySet) -> SimplicialComplex {
    SimplicialComplex {
        universe: k.universe,
        faces: k
            .faces
            .iter()
            .copied()
            .filter(|&m| RaySet(m).is_subset(&pi))
            .collect(),
    }
}

/// Cohomology dimensions indexed by degree, starting at `min_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyDims {
    pub min_degree: isize,
    pub dims: Vec<usize>,
}

impl CohomologyDims {
    pub fn dim(&self, degree: isize) -> usize {
        let idx = degree - self.min_degree;
        if idx < 0 || idx as usize >= self.dims.len() {
            0
        } else {
            self.dims[idx as usize]
        }
    }

    pub fn is_all_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// `(degree, dim)` pairs with nonzero dimension.
    pub fn nonzero(&self) -> Vec<(isize, usize)> {
        self.dims
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(i, &d)| (self.min_degree + i as isize, d))
            .collect()
    }
}

/// Coboundary matrix from the `lo` basis (columns) to the `hi` basis (rows),
/// with signs from the global vertex order.
fn coboundary(lo: &[RaySet], hi: &[RaySet], universe: usize) -> Vec<Vec<BigInt>> {
    let index: std::collections::HashMap<u64, usize> =
        hi.iter().enumerate().map(|(i, f)| (f.0, i)).collect();
    let mut m = vec![vec![BigInt::zero(); lo.len()]; hi.len()];
    for (col, f) in lo.iter().enumerate() {
        for v in 0..universe {
            if f.contains(v) {
                continue;
            }
            let mut g = *f;
            g.insert(v);
            if let Some(&row) = index.get(&g.0) {
                let below = (f.0 & ((1u64 << v) - 1)).count_ones();
                m[row][col] = if below.is_multiple_of(2) {
                    BigInt::from(1)
                } else {
                    BigInt::from(-1)
                };
            }
        }
    }
    m
}

/// Ranks of consecutive coboundary maps of a graded basis; `ranks[s]` is the
/// rank of the map from size-`s` faces to size-`s+1` faces.
fn coboundary_ranks(
    by_size: &[Vec<RaySet>],
    universe: usize,
    field: &FieldSpec,
    max_size: usize,
) -> Vec<usize> {
    let mut ranks = vec![0usize; max_size + 1];
    for (s, rank) in ranks.iter_mut().enumerate() {
        let lo = by_size.get(s).map(Vec::as_slice).unwrap_or(&[]);
        let hi = by_size.get(s + 1).map(Vec::as_slice).unwrap_or(&[]);
        if lo.is_empty() || hi.is_empty() {
            continue;
        }
        *rank = field.rank(&coboundary(lo, hi, universe));
    }
    ranks
}

/// `dim_k H̃^i(K; k)` for `i = −1 .. n−1`, where `n` is the universe size.
pub fn reduced_cohomology_dims(k: &SimplicialComplex, field: &FieldSpec) -> CohomologyDims {
    reduced_cohomology_dims_through(k, field, k.universe as isize - 1)
}

/// Same as [`reduced_cohomology_dims`] but only computes degrees up to
/// `max_degree`. The sweep operations only ever need low degrees, where the
/// coboundary matrices stay tiny.
pub fn reduced_cohomology_dims_through(
    k: &SimplicialComplex,
    field: &FieldSpec,
    max_degree: isize,
) -> CohomologyDims {
    let len = (max_degree + 2).max(0) as usize; // degrees -1 ..= max_degree
    if len == 0 {
        return CohomologyDims { min_degree: -1, dims: Vec::new() };
    }
    let by_size = k.by_size();
    let max_size = (max_degree + 1) as usize;
    let ranks = coboundary_ranks(&by_size, k.universe, field, max_size);
    let mut dims = vec![0usize; len];
    for (i, d) in dims.iter_mut().enumerate() {
        let s = i; // face size at degree i - 1
        let cells = by_size.get(s).map(Vec::len).unwrap_or(0);
        let out_rank = ranks.get(s).copied().unwrap_or(0);
        let in_rank = if s == 0 {
            0
        } else {
            ranks.get(s - 1).copied().unwrap_or(0)
        };
        *d = cells - out_rank - in_rank;
    }
    CohomologyDims { min_degree: -1, dims }
}

/// Relative cohomology of the pair `(Π, Π ∩ K)`: the cohomology of the
/// quotient of the augmented complex of `Π` by the subcomplex spanned by the
/// faces lying in `K`, concretely the cochain complex spanned by the faces of
/// `Π` *not* in `K`.
///
/// Degrees run from 0. For every `Π` and subcomplex `K` the output satisfies
/// the degree shift `relative[i] = reduced(restrict(K, Π))[i − 1]`; for
/// `Π = ∅` this is the two-term augmentation convention, under which the
/// quotient has rank one in degree 0 exactly when `∅ ∈ K`.
pub fn relative_cohomology_dims(
    pi: RaySet,
    k: &SimplicialComplex,
    field: &FieldSpec,
) -> CohomologyDims {
    let n = k.universe;
    let len = n + 2; // degrees 0 ..= n + 1
    if pi.is_empty() {
        let mut dims = vec![0usize; len];
        if k.contains(RaySet::empty()) {
            dims[0] = 1;
        }
        return CohomologyDims { min_degree: 0, dims };
    }
    let mut by_size: Vec<Vec<RaySet>> = vec![Vec::new(); pi.len() + 1];
    for f in pi.subsets() {
        if !k.contains(f) {
            by_size[f.len()].push(f);
        }
    }
    for g in by_size.iter_mut() {
        g.sort();
    }
    let ranks = coboundary_ranks(&by_size, n, field, pi.len());
    // degree i holds faces of size i + 1
    let mut dims = vec![0usize; len];
    for (i, d) in dims.iter_mut().enumerate() {
        let s = i + 1;
        let cells = by_size.get(s).map(Vec::len).unwrap_or(0);
        let out_rank = ranks.get(s).copied().unwrap_or(0);
        let in_rank = ranks.get(s - 1).copied().unwrap_or(0);
        *d = cells - out_rank - in_rank;
    }
    CohomologyDims { min_degree: 0, dims }
}

/// The augmented cochain complex of the full simplex on `pi`, with the
/// two-term convention for `pi = ∅`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    pub min_degree: isize,
    /// Face labels per term; the synthetic augmentation term of the
    /// empty-set convention carries no labels but has rank one.
    pub faces: Vec<Vec<RaySet>>,
    pub ranks: Vec<usize>,
    /// `maps[k]` sends term `k` to term `k + 1`; rows index the higher basis.
    pub maps: Vec<Vec<Vec<BigInt>>>,
}

pub fn augmented_cochain(pi: RaySet) -> CochainComplex {
    if pi.is_empty() {
        return CochainComplex {
            min_degree: -2,
            faces: vec![Vec::new(), vec![RaySet::empty()]],
            ranks: vec![1, 1],
            maps: vec![vec![vec![BigInt::from(1)]]],
        };
    }
    let universe = pi.indices().into_iter().max().unwrap() + 1;
    let mut by_size: Vec<Vec<RaySet>> = vec![Vec::new(); pi.len() + 1];
    for f in pi.subsets() {
        by_size[f.len()].push(f);
    }
    for g in by_size.iter_mut() {
        g.sort();
    }
    let maps = (0..pi.len())
        .map(|s| coboundary(&by_size[s], &by_size[s + 1], universe))
        .collect();
    CochainComplex {
        min_degree: -1,
        ranks: by_size.iter().map(Vec::len).collect(),
        faces: by_size,
        maps,
    }
}

impl CochainComplex {
    /// Checks `δ ∘ δ = 0` for every pair of consecutive maps.
    pub fn composite_is_zero(&self) -> bool {
        for w in self.maps.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let cols = a.first().map_or(0, Vec::len);
            for col in 0..cols {
                for brow in b {
                    let mut acc = BigInt::zero();
                    for (mid, arow) in a.iter().enumerate() {
                        acc += &brow[mid] * &arow[col];
                    }
                    if !acc.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle4() -> SimplicialComplex {
        SimplicialComplex::from_faces(
            4,
            [
                RaySet::from_indices([0, 1]),
                RaySet::from_indices([1, 2]),
                RaySet::from_indices([2, 3]),
                RaySet::from_indices([0, 3]),
            ],
        )
    }

    #[test]
    fn augmented_cochain_of_a_vertex_edge_and_empty_set() {
        let v = augmented_cochain(RaySet::from_indices([0]));
        assert_eq!(v.ranks, vec![1, 1]);
        assert_eq!(v.maps[0], vec![vec![BigInt::from(1)]]);

        let e = augmented_cochain(RaySet::from_indices([0, 1]));
        assert_eq!(e.ranks, vec![1, 2, 1]);
        assert_eq!(e.maps[1], vec![vec![BigInt::from(-1), BigInt::from(1)]]);
        assert!(e.composite_is_zero());

        let empty = augmented_cochain(RaySet::empty());
        assert_eq!(empty.min_degree, -2);
        assert_eq!(empty.ranks, vec![1, 1]);
        assert_eq!(empty.maps[0], vec![vec![BigInt::from(1)]]);
    }

    #[test]
    fn restriction_examples() {
        let full = SimplicialComplex::full_simplex(4, RaySet::full(4));
        let r = restrict(&full, RaySet::from_indices([0, 2]));
        assert_eq!(r.n_faces(), 4);

        let circle = circle4();
        let two_points = restrict(&circle, RaySet::from_indices([0, 2]));
        let expected: BTreeSet<u64> = [0u64, 0b1, 0b100].into_iter().collect();
        assert_eq!(two_points.faces, expected);

        let just_empty = restrict(&circle, RaySet::empty());
        assert_eq!(just_empty.n_faces(), 1);
    }

    #[test]
    fn reduced_cohomology_of_standard_complexes() {
        let field = FieldSpec::RATIONAL;
        let two_points = SimplicialComplex::from_faces(
            4,
            [RaySet::from_indices([0]), RaySet::from_indices([2])],
        );
        let dims = reduced_cohomology_dims(&two_points, &field);
        assert_eq!(dims.nonzero(), vec![(0, 1)]);

        let circle = circle4();
        let dims = reduced_cohomology_dims(&circle, &field);
        assert_eq!(dims.nonzero(), vec![(1, 1)]);

        let point = SimplicialComplex::from_faces(3, [RaySet::empty()]);
        let dims = reduced_cohomology_dims(&point, &field);
        assert_eq!(dims.nonzero(), vec![(-1, 1)]);

        let void = SimplicialComplex::void(3);
        assert!(reduced_cohomology_dims(&void, &field).is_all_zero());
    }

    #[test]
    fn relative_cohomology_examples() {
        let field = FieldSpec::RATIONAL;
        let circle = circle4();
        let rel = relative_cohomology_dims(RaySet::from_indices([0, 2]), &circle, &field);
        assert_eq!(rel.nonzero(), vec![(1, 1)]);

        // K contains the full simplex on Π: quotient complex is zero
        let full = SimplicialComplex::full_simplex(4, RaySet::full(4));
        let rel = relative_cohomology_dims(RaySet::from_indices([1, 3]), &full, &field);
        assert!(rel.is_all_zero());

        let just_empty = SimplicialComplex::from_faces(2, [RaySet::empty()]);
        let rel = relative_cohomology_dims(RaySet::from_indices([0]), &just_empty, &field);
        assert_eq!(rel.nonzero(), vec![(0, 1)]);
    }

    #[test]
    fn degree_shift_against_restriction() {
        let field = FieldSpec::RATIONAL;
        let circle = circle4();
        for pi in RaySet::full(4).subsets() {
            let rel = relative_cohomology_dims(pi, &circle, &field);
            let red = reduced_cohomology_dims(&restrict(&circle, pi), &field);
            for i in 0..=5isize {
                assert_eq!(rel.dim(i), red.dim(i - 1), "pi = {pi}, degree {i}");
            }
        }
    }

    #[test]
    fn euler_characteristic_identity() {
        let field = FieldSpec::RATIONAL;
        for k in [
            circle4(),
            SimplicialComplex::full_simplex(4, RaySet::full(4)),
            SimplicialComplex::from_faces(
                4,
                [RaySet::from_indices([0]), RaySet::from_indices([2])],
            ),
            SimplicialComplex::from_faces(4, [RaySet::empty()]),
        ] {
            let dims = reduced_cohomology_dims(&k, &field);
            let alt: i64 = dims
                .dims
                .iter()
                .enumerate()
                .map(|(i, &d)| {
                    let deg = dims.min_degree + i as isize;
                    if deg.rem_euclid(2) == 0 {
                        d as i64
                    } else {
                        -(d as i64)
                    }
                })
                .sum();
            let cells: i64 = k
                .faces()
                .map(|f| {
                    let deg = f.len() as isize - 1;
                    if deg.rem_euclid(2) == 0 {
                        1
                    } else {
                        -1
                    }
                })
                .sum();
            assert_eq!(alt, cells);
        }
    }

    #[test]
    fn characteristic_p_agrees_on_torsion_free_complexes() {
        let torsion_free = [
            circle4(),
            SimplicialComplex::from_faces(
                5,
                [
                    RaySet::from_indices([0]),
                    RaySet::from_indices([2]),
                    RaySet::from_indices([4]),
                ],
            ),
            SimplicialComplex::full_simplex(4, RaySet::full(4)),
        ];
        let q = FieldSpec::RATIONAL;
        for k in &torsion_free {
            for p in [2u64, 3, 5, 7] {
                let fp = FieldSpec::new(p).unwrap();
                assert_eq!(
                    reduced_cohomology_dims(k, &q),
                    reduced_cohomology_dims(k, &fp)
                );
            }
        }
    }

    #[test]
    fn field_spec_rejects_composite_characteristic() {
        assert!(FieldSpec::new(0).is_ok());
        assert!(FieldSpec::new(2).is_ok());
        assert!(FieldSpec::new(97).is_ok());
        assert!(FieldSpec::new(6).is_err());
        assert!(FieldSpec::new(1).is_err());
    }

    #[test]
    fn connected_components_counts() {
        assert_eq!(circle4().connected_components(), 1);
        let two = SimplicialComplex::from_faces(
            4,
            [RaySet::from_indices([0]), RaySet::from_indices([2])],
        );
        assert_eq!(two.connected_components(), 2);
        assert_eq!(
            SimplicialComplex::from_faces(4, [RaySet::empty()]).connected_components(),
            0
        );
        assert_eq!(SimplicialComplex::void(4).connected_components(), 0);
    }
}
