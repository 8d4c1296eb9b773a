//! Exact integer and rational matrix routines: rank, kernel vectors, Hermite
//! normal form, and reduction of a vector modulo an integer row lattice.
//!
//! Everything here is fraction-free or plain rational elimination over
//! arbitrary-precision integers; inputs at desk scale are tiny.

// in-place elimination indexes two rows of the same matrix per step
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Rank of an integer matrix (rows of equal length) by fraction-free
/// Bareiss elimination.
pub fn rank_int(rows: &[Vec<BigInt>]) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = (&m[i][j] * &m[r][c] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Rank of a rational matrix: clear denominators rowwise, then `rank_int`.
pub fn rank_rat(rows: &[Vec<BigRational>]) -> usize {
    let cleared: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();
    rank_int(&cleared)
}

/// Rank of an integer matrix over the prime field `GF(p)`.
pub fn rank_mod_p(rows: &[Vec<BigInt>], p: u64) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    let pb = BigInt::from(p);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let r = x.mod_floor(&pb);
                    u64::try_from(r).expect("residue fits u64")
                })
                .collect()
        })
        .collect();
    let nrows = m.len();
    let ncols = m[0].len();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| !m[i][c].is_multiple_of(p)) else {
            continue;
        };
        m.swap(r, piv);
        let inv = mod_inverse(m[r][c], p);
        for v in m[r][c..].iter_mut() {
            *v = mulmod(*v, inv, p);
        }
        for i in 0..nrows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in c..ncols {
                    let t = mulmod(f, m[r][j], p);
                    m[i][j] = (m[i][j] + p - t) % p;
                }
            }
        }
        r += 1;
    }
    r
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended euclid; p prime, a != 0 mod p
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "not invertible");
    ((t % p as i128 + p as i128) % p as i128) as u64
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

/// A primitive integer kernel vector of an integer matrix whose null space is
/// one-dimensional; `None` when the nullity differs from 1.
///
/// Rows may be empty (the zero map on `ncols` variables), in which case the
/// kernel is the whole space and the call returns `None` unless `ncols == 1`.
pub fn kernel_primitive(rows: &[Vec<BigInt>], ncols: usize) -> Option<Vec<BigInt>> {
    // rational RREF
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from(x.clone())).collect())
        .collect();
    let nrows = m.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for j in c..ncols {
            let v = &m[r][j] * &inv;
            m[r][j] = v;
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncols {
                    let v = &m[i][j] - &f * &m[r][j];
                    m[i][j] = v;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if ncols - pivot_cols.len() != 1 {
        return None;
    }
    let free_col = (0..ncols).find(|c| !pivot_cols.contains(c))?;
    let mut sol = vec![BigRational::zero(); ncols];
    sol[free_col] = BigRational::one();
    for (row, &pc) in pivot_cols.iter().enumerate() {
        sol[pc] = -m[row][free_col].clone();
    }
    // clear denominators, divide by gcd
    let lcm = sol
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = sol.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for v in &mut ints {
            *v = &*v / &g;
        }
    }
    Some(ints)
}

/// Row-style Hermite normal form of an integer matrix.
///
/// Returns the nonzero rows in echelon order together with their pivot
/// columns. Pivots are positive and entries above each pivot are reduced into
/// `[0, pivot)`, so the rows are a canonical basis of the row lattice.
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    if rows.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        loop {
            // pick the row with smallest nonzero |entry| in column c at or below r
            let mut best: Option<usize> = None;
            for i in r..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                best = match best {
                    None => Some(i),
                    Some(b) if m[i][c].abs() < m[b][c].abs() => Some(i),
                    keep => keep,
                };
            }
            let Some(b) = best else {
                break;
            };
            m.swap(r, b);
            let mut any_left = false;
            for i in r + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                for j in 0..ncols {
                    let v = &m[i][j] - &q * &m[r][j];
                    m[i][j] = v;
                }
                if !m[i][c].is_zero() {
                    any_left = true;
                }
            }
            if !any_left {
                break;
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                for v in m[r].iter_mut() {
                    *v = -v.clone();
                }
            }
            // reduce entries above the pivot into [0, pivot)
            for i in 0..r {
                let q = m[i][c].div_floor(&m[r][c]);
                if !q.is_zero() {
                    for j in 0..ncols {
                        let v = &m[i][j] - &q * &m[r][j];
                        m[i][j] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.len() {
                break;
            }
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// Canonical representative of `v` modulo the row lattice of `hnf`.
///
/// `hnf` must come from [`hermite_normal_form`]; the output is the unique
/// vector in `v + rowspan` whose entry at each pivot column lies in
/// `[0, pivot)`.
pub fn reduce_mod_row_lattice(
    v: &[BigInt],
    hnf: &[Vec<BigInt>],
    pivots: &[usize],
) -> Vec<BigInt> {
    let mut out = v.to_vec();
    for (row, &c) in hnf.iter().zip(pivots) {
        let q = out[c].div_floor(&row[c]);
        if !q.is_zero() {
            for j in 0..out.len() {
                let w = &out[j] - &q * &row[j];
                out[j] = w;
            }
        }
    }
    out
}

/// Integer dot product.
pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rank_of_ray_matrices() {
        let m = vec![bi(&[1, 0, 0]), bi(&[0, 1, 0]), bi(&[-1, 1, 1]), bi(&[0, 0, 1])];
        assert_eq!(rank_int(&m), 3);
        let degenerate = vec![bi(&[1, 0]), bi(&[-1, 0])];
        assert_eq!(rank_int(&degenerate), 1);
        assert_eq!(rank_int(&[]), 0);
    }

    #[test]
    fn rank_mod_p_matches_char_zero_on_unimodular_data() {
        let m = vec![bi(&[1, 2, 3]), bi(&[0, 1, 4]), bi(&[5, 6, 0])];
        let r0 = rank_int(&m);
        for p in [2u64, 3, 5, 7, 101] {
            // determinant is 1, so the rank cannot drop mod any prime
            assert_eq!(rank_mod_p(&m, p), r0, "p = {p}");
        }
    }

    #[test]
    fn kernel_of_facet_equations() {
        // facet {2,3} of the four-ray cone: normal of span{(0,1,0),(-1,1,1)}
        let m = vec![bi(&[0, 1, 0]), bi(&[-1, 1, 1])];
        let k = kernel_primitive(&m, 3).unwrap();
        assert_eq!(dot(&k, &bi(&[0, 1, 0])), BigInt::zero());
        assert_eq!(dot(&k, &bi(&[-1, 1, 1])), BigInt::zero());
        let g = k.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
        assert!(g.is_one());
        // rank-deficient input has nullity 2
        assert!(kernel_primitive(&[bi(&[1, 0, 0])], 3).is_none());
    }

    #[test]
    fn hnf_reduction_is_canonical_and_lattice_invariant() {
        // dual ray matrix of the four-ray cone: rows are coordinate slices
        let rows = vec![bi(&[1, 0, -1, 0]), bi(&[0, 1, 1, 0]), bi(&[0, 0, 1, 1])];
        let (h, piv) = hermite_normal_form(&rows);
        assert_eq!(h.len(), 3);
        // v and v + row reduce identically
        let v = bi(&[0, -2, 0, 0]);
        let mut shifted = v.clone();
        for j in 0..4 {
            shifted[j] += &h[0][j] * BigInt::from(3) - &h[2][j];
        }
        assert_eq!(
            reduce_mod_row_lattice(&v, &h, &piv),
            reduce_mod_row_lattice(&shifted, &h, &piv)
        );
        // distinct classes stay distinct
        let d1 = bi(&[-1, 0, 0, 0]);
        let d2 = bi(&[0, -1, 0, 0]);
        assert_ne!(
            reduce_mod_row_lattice(&d1, &h, &piv),
            reduce_mod_row_lattice(&d2, &h, &piv)
        );
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(3));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael
        assert!(!is_prime_u64(1_000_000_006));
    }
}
