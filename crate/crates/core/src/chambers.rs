//! The hyperplane arrangement induced by a cone and divisor, and the
//! classification of its chambers.
//!
//! Each subset `Π` of the rays carries three systems over `M`: the strict
//! chamber `C^s_Π` (`<` / `>`), the semi-strict chamber `C^ss_Π` (`<` / `≥`)
//! and the closed chamber `C_Π` (`≤` / `≥`), with thresholds `−n_ρ` shifted by
//! the divisor. Reports are keyed by `Π` under the input ray order; where a
//! source labels these chambers differently, the oracle-derived `Π` wins.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cone::{Cone, FaceLattice};
use crate::feasibility::{
    integer_feasible, real_feasible, recession_dim, simplex_nonneg, FeasibilityVerdict,
    InequalitySystem, LpResult, Rel,
};
use crate::rayset::RaySet;
use crate::simplicial::{
    reduced_cohomology_dims, restrict, CohomologyDims, FieldSpec, SimplicialComplex,
};
use crate::toric::Divisor;
use crate::{check_ray_cap, TooManyRays};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ChamberFlavor {
    Strict,
    SemiStrict,
    Closed,
}

/// The inequality system of the chamber attached to `pi`:
/// `⟨m, n(ρ)⟩ < −n_ρ` on `pi` and `⟨m, n(ρ)⟩ ≥ −n_ρ` off it (semi-strict
/// flavor); the strict flavor sharpens the second family to `>`, the closed
/// flavor weakens the first to `≤`.
pub fn chamber_system(
    cone: &Cone,
    divisor: &Divisor,
    pi: RaySet,
    flavor: ChamberFlavor,
) -> InequalitySystem {
    let mut sys = InequalitySystem::new(cone.rank());
    for i in 0..cone.n_rays() {
        let threshold = divisor.threshold(i);
        let rel = if pi.contains(i) {
            match flavor {
                ChamberFlavor::Closed => Rel::Le,
                _ => Rel::Lt,
            }
        } else {
            match flavor {
                ChamberFlavor::Strict => Rel::Gt,
                _ => Rel::Ge,
            }
        };
        sys.push(cone.ray(i).clone(), rel, threshold);
    }
    sys
}

/// Whether the cones spanned by the rays in `pi` and by the remaining rays
/// share a nonzero vector. Defined as `false` for `pi ∈ {∅, Σ}` (one side is
/// the zero cone).
pub fn cones_intersect(cone: &Cone, pi: RaySet) -> bool {
    let n = cone.n_rays();
    if pi.is_empty() || pi == RaySet::full(n) {
        return false;
    }
    // λ, μ ≥ 0 with Σ λ_i n_i = Σ μ_j n_j and Σλ + Σμ = 1; strong convexity
    // of the two subcones forces any solution to have a nonzero common value
    let inside: Vec<usize> = pi.indices();
    let outside: Vec<usize> = pi.complement(n).indices();
    let k = inside.len() + outside.len();
    let rat = |x: &BigInt| BigRational::from(x.clone());
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut rhs: Vec<BigRational> = Vec::new();
    for j in 0..cone.rank() {
        let mut row = Vec::with_capacity(k);
        for &i in &inside {
            row.push(rat(&cone.ray(i)[j]));
        }
        for &i in &outside {
            row.push(-rat(&cone.ray(i)[j]));
        }
        rows.push(row.clone());
        rhs.push(BigRational::zero());
        rows.push(row.into_iter().map(|x| -x).collect());
        rhs.push(BigRational::zero());
    }
    let ones = vec![BigRational::one(); k];
    rows.push(ones.clone());
    rhs.push(BigRational::one());
    rows.push(ones.into_iter().map(|x| -x).collect());
    rhs.push(-BigRational::one());
    matches!(
        simplex_nonneg(&vec![BigRational::zero(); k], &rows, &rhs),
        LpResult::Optimal { .. }
    )
}

/// Everything the classification knows about one chamber.
#[derive(Clone, Debug)]
pub struct ChamberReport {
    pub pi: RaySet,
    pub strict_nonempty: bool,
    pub semistrict_nonempty: bool,
    pub lattice_witness: Option<Vec<BigInt>>,
    pub recession_dim: usize,
    pub bounded: bool,
    pub cones_intersect: bool,
    /// Reduced cohomology of `Π ∩ Ξ` for the supplied cosupport complex.
    pub cohomology: CohomologyDims,
}

pub fn classify_chamber(
    cone: &Cone,
    _lattice: &FaceLattice,
    divisor: &Divisor,
    pi: RaySet,
    xi: &SimplicialComplex,
    field: &FieldSpec,
) -> ChamberReport {
    let strict = chamber_system(cone, divisor, pi, ChamberFlavor::Strict);
    let semistrict = chamber_system(cone, divisor, pi, ChamberFlavor::SemiStrict);
    let strict_nonempty = real_feasible(&strict)
        .expect("chamber system is well-formed")
        .is_feasible();
    let semistrict_nonempty = real_feasible(&semistrict)
        .expect("chamber system is well-formed")
        .is_feasible();
    debug_assert_eq!(strict_nonempty, semistrict_nonempty);
    let lattice_witness = match integer_feasible(&semistrict).expect("well-formed") {
        FeasibilityVerdict::Feasible(w) => match w {
            crate::feasibility::Witness::Lattice(v) => Some(v),
            crate::feasibility::Witness::Rational(_) => unreachable!("integer search"),
        },
        FeasibilityVerdict::Infeasible(_) => None,
    };
    let rec = recession_dim(&semistrict).expect("well-formed");
    ChamberReport {
        pi,
        strict_nonempty,
        semistrict_nonempty,
        lattice_witness,
        recession_dim: rec,
        bounded: rec == 0,
        cones_intersect: cones_intersect(cone, pi),
        cohomology: reduced_cohomology_dims(&restrict(xi, pi), field),
    }
}

/// One report per subset `Π`, in binary counting order on the ray indices.
/// The sweep runs on the current rayon pool; output order is independent of
/// the worker count.
pub fn enumerate_chambers(
    cone: &Cone,
    lattice: &FaceLattice,
    divisor: &Divisor,
    xi: &SimplicialComplex,
    field: &FieldSpec,
    cap: usize,
) -> Result<Vec<ChamberReport>, TooManyRays> {
    let n = cone.n_rays();
    check_ray_cap(n, cap)?;
    let mut reports: Vec<ChamberReport> = (0u64..1 << n)
        .into_par_iter()
        .map(|mask| classify_chamber(cone, lattice, divisor, RaySet(mask), xi, field))
        .collect();
    reports.sort_by_key(|r| r.pi.0);
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::{cosupport, support, MonomialIdeal};

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn four_ray() -> (Cone, FaceLattice, SimplicialComplex) {
        let c = Cone::validate(
            3,
            vec![bi(&[1, 0, 0]), bi(&[0, 1, 0]), bi(&[-1, 1, 1]), bi(&[0, 0, 1])],
        )
        .unwrap();
        let fl = FaceLattice::compute(&c);
        let xi = cosupport(&fl, &support(&c, &fl, &MonomialIdeal::Maximal).unwrap());
        (c, fl, xi)
    }

    #[test]
    fn chamber_system_thresholds() {
        let (c, _, _) = four_ray();
        let d = Divisor::new(bi(&[0, -2, 0, 0]));
        let sys = chamber_system(&c, &d, RaySet::from_indices([1, 3]), ChamberFlavor::SemiStrict);
        assert_eq!(sys.rows[0].rel, Rel::Ge);
        assert_eq!(sys.rows[1].rel, Rel::Lt);
        assert_eq!(sys.rows[1].rhs, BigInt::from(2));
        assert_eq!(sys.rows[3].rel, Rel::Lt);
        assert_eq!(sys.rows[3].rhs, BigInt::from(0));

        // Π = ∅ yields the system defining M^D
        let md = chamber_system(&c, &d, RaySet::empty(), ChamberFlavor::SemiStrict);
        assert!(md.rows.iter().all(|r| r.rel == Rel::Ge));

        // Π = Σ, D = 0, strict: the interior of the negative dual cone
        let all = chamber_system(&c, &Divisor::zero(4), RaySet::full(4), ChamberFlavor::Strict);
        assert!(all.rows.iter().all(|r| r.rel == Rel::Lt && r.rhs.is_zero()));
    }

    #[test]
    fn cones_intersect_on_the_cube_cones() {
        let cube = Cone::validate(
            4,
            [
                [0, 0, 0, 1],
                [1, 0, 0, 1],
                [0, 1, 0, 1],
                [0, 0, 1, 1],
                [1, 1, 0, 1],
                [1, 0, 1, 1],
                [0, 1, 1, 1],
                [1, 1, 1, 1],
            ]
            .iter()
            .map(|p| bi(p))
            .collect(),
        )
        .unwrap();
        let pi = RaySet::from_indices([0, 2, 3, 5]);
        assert!(cones_intersect(&cube, pi));

        let cube_prime = Cone::validate(
            4,
            [
                [0, 0, 0, 1],
                [1, 0, 0, 1],
                [0, 1, 0, 1],
                [0, -1, 1, 1],
                [1, 1, 0, 1],
                [1, -1, 1, 1],
                [0, 1, 1, 1],
                [1, 1, 1, 1],
            ]
            .iter()
            .map(|p| bi(p))
            .collect(),
        )
        .unwrap();
        assert!(!cones_intersect(&cube_prime, pi));

        let (c, _, _) = four_ray();
        assert!(!cones_intersect(&c, RaySet::from_indices([0])));
        assert!(!cones_intersect(&c, RaySet::empty()));
        assert!(!cones_intersect(&c, RaySet::full(4)));
        // the diagonal pairs do intersect
        assert!(cones_intersect(&c, RaySet::from_indices([0, 2])));
        assert!(cones_intersect(&c, RaySet::from_indices([1, 3])));
    }

    #[test]
    fn classify_the_bounded_chamber() {
        let (c, fl, xi) = four_ray();
        let d = Divisor::new(bi(&[0, -2, 0, 0]));
        let r = classify_chamber(&c, &fl, &d, RaySet::from_indices([1, 3]), &xi, &FieldSpec::RATIONAL);
        assert!(r.strict_nonempty);
        assert!(r.bounded);
        assert_eq!(r.recession_dim, 0);
        assert!(r.lattice_witness.is_some());
        assert_eq!(r.cohomology.dim(0), 1);

        let d1 = Divisor::new(bi(&[0, -1, 0, 0]));
        let r1 = classify_chamber(&c, &fl, &d1, RaySet::from_indices([1, 3]), &xi, &FieldSpec::RATIONAL);
        assert!(r1.bounded);
        assert!(r1.lattice_witness.is_none());
    }

    #[test]
    fn enumerate_the_four_ray_chambers() {
        let (c, fl, xi) = four_ray();
        for k in 1..=3 {
            let d = Divisor::new(bi(&[0, -k, 0, 0]));
            let reports =
                enumerate_chambers(&c, &fl, &d, &xi, &FieldSpec::RATIONAL, 12).unwrap();
            assert_eq!(reports.len(), 16);
            let strict = reports.iter().filter(|r| r.strict_nonempty).count();
            assert_eq!(strict, 15, "k = {k}");
            let empty: Vec<RaySet> = reports
                .iter()
                .filter(|r| !r.strict_nonempty)
                .map(|r| r.pi)
                .collect();
            assert_eq!(empty, vec![RaySet::from_indices([0, 2])]);
            let bounded: Vec<RaySet> = reports
                .iter()
                .filter(|r| r.bounded && r.semistrict_nonempty)
                .map(|r| r.pi)
                .collect();
            assert_eq!(bounded, vec![RaySet::from_indices([1, 3])]);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let (c, fl, xi) = four_ray();
        let d = Divisor::zero(4);
        let err = enumerate_chambers(&c, &fl, &d, &xi, &FieldSpec::RATIONAL, 3).unwrap_err();
        assert_eq!(err, TooManyRays { rays: 4, cap: 3 });
    }
}
