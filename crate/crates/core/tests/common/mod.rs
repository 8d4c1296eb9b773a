//! Shared helpers for the integration suites: seeded generators for valid
//! cones, divisors and inequality systems, plus independent oracles (LP-based
//! face search, brute-force lattice enumeration) that never touch the code
//! paths they are checking.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::Rng;
use toric_mcm::feasibility::{real_feasible, InequalitySystem, Rel};
use toric_mcm::{Cone, ConeError, RaySet};

pub fn bi(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// The four-ray rank-3 cone used throughout the worked examples.
pub fn four_ray_cone() -> Cone {
    Cone::validate(
        3,
        vec![bi(&[1, 0, 0]), bi(&[0, 1, 0]), bi(&[-1, 1, 1]), bi(&[0, 0, 1])],
    )
    .unwrap()
}

/// Its extension by one orthogonal ray into rank 4.
pub fn five_ray_cone() -> Cone {
    Cone::validate(
        4,
        vec![
            bi(&[1, 0, 0, 0]),
            bi(&[0, 1, 0, 0]),
            bi(&[-1, 1, 1, 0]),
            bi(&[0, 0, 1, 0]),
            bi(&[0, 0, 0, 1]),
        ],
    )
    .unwrap()
}

/// The cone over the unit cube shifted into the hyperplane `x_4 = 1`.
pub fn cube_cone() -> Cone {
    let pts: [[i64; 4]; 8] = [
        [0, 0, 0, 1],
        [1, 0, 0, 1],
        [0, 1, 0, 1],
        [0, 0, 1, 1],
        [1, 1, 0, 1],
        [1, 0, 1, 1],
        [0, 1, 1, 1],
        [1, 1, 1, 1],
    ];
    Cone::validate(4, pts.iter().map(|p| bi(p)).collect()).unwrap()
}

/// The combinatorially equivalent variant with rays 4 and 6 tilted.
pub fn cube_prime_cone() -> Cone {
    let pts: [[i64; 4]; 8] = [
        [0, 0, 0, 1],
        [1, 0, 0, 1],
        [0, 1, 0, 1],
        [0, -1, 1, 1],
        [1, 1, 0, 1],
        [1, -1, 1, 1],
        [0, 1, 1, 1],
        [1, 1, 1, 1],
    ];
    Cone::validate(4, pts.iter().map(|p| bi(p)).collect()).unwrap()
}

/// A random valid cone of the given rank with at most `max_rays` rays: rays
/// are chosen over distinct lattice points in the hyperplane `last = 1`
/// (hence primitive and strongly convex), redundant rays are dropped until
/// validation passes, degenerate samples are rejected.
pub fn random_cone<R: Rng>(rng: &mut R, rank: usize, max_rays: usize, coord: i64) -> Cone {
    assert!(rank >= 2);
    loop {
        let k = rng.gen_range(rank..=max_rays.max(rank));
        let mut pts: BTreeSet<Vec<i64>> = BTreeSet::new();
        for _ in 0..k * 4 {
            if pts.len() == k {
                break;
            }
            let p: Vec<i64> = (0..rank - 1).map(|_| rng.gen_range(-coord..=coord)).collect();
            pts.insert(p);
        }
        if pts.len() < rank {
            continue;
        }
        let mut rays: Vec<Vec<BigInt>> = pts
            .into_iter()
            .map(|mut p| {
                p.push(1);
                bi(&p)
            })
            .collect();
        loop {
            match Cone::validate(rank, rays.clone()) {
                Ok(c) => return c,
                Err(ConeError::RedundantRay { ray }) => {
                    rays.remove(ray - 1);
                }
                Err(_) => break,
            }
        }
    }
}

pub fn random_divisor<R: Rng>(rng: &mut R, n_rays: usize, bound: i64) -> Vec<BigInt> {
    bi(&(0..n_rays)
        .map(|_| rng.gen_range(-bound..=bound))
        .collect::<Vec<_>>())
}

/// LP-based face oracle: `S` is the ray set of a face iff some functional
/// vanishes on `S` and is at least 1 on every other ray. Independent of the
/// kernel-plus-closure path used by `FaceLattice`.
pub fn oracle_face_sets(cone: &Cone) -> BTreeSet<u64> {
    let n = cone.n_rays();
    let mut out = BTreeSet::new();
    for s in RaySet::full(n).subsets() {
        let mut sys = InequalitySystem::new(cone.rank());
        for i in 0..n {
            if s.contains(i) {
                sys.push(cone.ray(i).clone(), Rel::Eq, BigInt::from(0));
            } else {
                sys.push(cone.ray(i).clone(), Rel::Ge, BigInt::from(1));
            }
        }
        if real_feasible(&sys).unwrap().is_feasible() {
            out.insert(s.0);
        }
    }
    out
}

/// Exhaustive search for an integer point of the system in `[−b, b]^d`,
/// entirely in machine integers.
pub fn brute_lattice_point(sys: &InequalitySystem, b: i64) -> Option<Vec<i64>> {
    let d = sys.dim;
    let rows: Vec<(Vec<i64>, Rel, i64)> = sys
        .rows
        .iter()
        .map(|r| {
            (
                r.normal.iter().map(|x| i64::try_from(x).unwrap()).collect(),
                r.rel,
                i64::try_from(&r.rhs).unwrap(),
            )
        })
        .collect();
    let mut point = vec![-b; d];
    loop {
        let ok = rows.iter().all(|(n, rel, rhs)| {
            let lhs: i64 = n.iter().zip(&point).map(|(a, x)| a * x).sum();
            match rel {
                Rel::Lt => lhs < *rhs,
                Rel::Le => lhs <= *rhs,
                Rel::Eq => lhs == *rhs,
                Rel::Ge => lhs >= *rhs,
                Rel::Gt => lhs > *rhs,
            }
        });
        if ok {
            return Some(point);
        }
        let mut i = 0;
        loop {
            if i == d {
                return None;
            }
            if point[i] < b {
                point[i] += 1;
                break;
            }
            point[i] = -b;
            i += 1;
        }
    }
}

/// Nonzero integer direction of the weakened system's recession cone inside
/// `[−b, b]^d`, if any.
pub fn brute_recession_direction(sys: &InequalitySystem, b: i64) -> Option<Vec<i64>> {
    let d = sys.dim;
    let oriented = sys.oriented();
    let rows: Vec<Vec<i64>> = oriented
        .iter()
        .map(|r| r.coeffs.iter().map(|x| i64::try_from(x).unwrap()).collect())
        .collect();
    let mut point = vec![-b; d];
    loop {
        if point.iter().any(|&x| x != 0) {
            let ok = rows.iter().all(|n| {
                let lhs: i64 = n.iter().zip(&point).map(|(a, x)| a * x).sum();
                lhs <= 0
            });
            if ok {
                return Some(point.clone());
            }
        }
        let mut i = 0;
        loop {
            if i == d {
                return None;
            }
            if point[i] < b {
                point[i] += 1;
                break;
            }
            point[i] = -b;
            i += 1;
        }
    }
}

/// A random mixed system with small integer data.
pub fn random_system<R: Rng>(rng: &mut R, dim: usize, max_rows: usize, bound: i64) -> InequalitySystem {
    let mut sys = InequalitySystem::new(dim);
    let n_rows = rng.gen_range(1..=max_rows);
    for _ in 0..n_rows {
        let normal: Vec<i64> = (0..dim).map(|_| rng.gen_range(-bound..=bound)).collect();
        let rel = match rng.gen_range(0..5) {
            0 => Rel::Lt,
            1 => Rel::Le,
            2 => Rel::Eq,
            3 => Rel::Ge,
            _ => Rel::Gt,
        };
        sys.push(bi(&normal), rel, BigInt::from(rng.gen_range(-bound..=bound)));
    }
    sys
}
