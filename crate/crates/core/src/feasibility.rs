//! Exact rational linear feasibility and certified integer feasibility.
//!
//! Systems mix strict and weak linear inequalities over the lattice `Z^d`.
//! Everything reduces to an exact simplex over arbitrary-precision rationals
//! with Bland's rule (hence terminating):
//!
//! * strict rows over the reals are handled by maximizing a shared slack `t`
//!   (`a·x < b` becomes `a·x + t ≤ b`); the system is strictly feasible
//!   exactly when the optimum is positive;
//! * strict rows over the integers are tightened by one (`a·x < b` is
//!   `a·x ≤ b − 1` for integer data) and a depth-first coordinate search with
//!   exact LP bound propagation runs inside an a-priori solvability box;
//! * rational infeasibility is certified by a nonnegative row combination
//!   (Motzkin transposition), found by solving the alternative system and
//!   re-verified arithmetically before it is returned.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg;

/// Relation of one inequality row.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Rel {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Rel {
    pub fn symbol(&self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Eq => "=",
            Rel::Ge => ">=",
            Rel::Gt => ">",
        }
    }
}

/// One row `normal · m  rel  rhs` with integer data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IneqRow {
    pub normal: Vec<BigInt>,
    pub rel: Rel,
    pub rhs: BigInt,
}

/// A mixed strict/weak linear system over `Z^d`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InequalitySystem {
    pub dim: usize,
    pub rows: Vec<IneqRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FeasibilityError {
    #[error("row {row} has {got} coefficients, expected {expected}")]
    DimensionMismatch { row: usize, got: usize, expected: usize },
}

/// A row oriented into `coeffs · x ≤ rhs` (or `< rhs` when `strict`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedRow {
    pub coeffs: Vec<BigInt>,
    pub rhs: BigInt,
    pub strict: bool,
}

impl InequalitySystem {
    pub fn new(dim: usize) -> Self {
        InequalitySystem { dim, rows: Vec::new() }
    }

    pub fn push(&mut self, normal: Vec<BigInt>, rel: Rel, rhs: BigInt) {
        self.rows.push(IneqRow { normal, rel, rhs });
    }

    pub fn validate(&self) -> Result<(), FeasibilityError> {
        for (i, row) in self.rows.iter().enumerate() {
            if row.normal.len() != self.dim {
                return Err(FeasibilityError::DimensionMismatch {
                    row: i + 1,
                    got: row.normal.len(),
                    expected: self.dim,
                });
            }
        }
        Ok(())
    }

    /// Rows rewritten as `coeffs · x ≤ rhs` / `< rhs`; equalities become two
    /// weak rows.
    pub fn oriented(&self) -> Vec<OrientedRow> {
        let mut out = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let neg: Vec<BigInt> = row.normal.iter().map(|x| -x).collect();
            match row.rel {
                Rel::Lt => out.push(OrientedRow {
                    coeffs: row.normal.clone(),
                    rhs: row.rhs.clone(),
                    strict: true,
                }),
                Rel::Le => out.push(OrientedRow {
                    coeffs: row.normal.clone(),
                    rhs: row.rhs.clone(),
                    strict: false,
                }),
                Rel::Ge => out.push(OrientedRow { coeffs: neg, rhs: -&row.rhs, strict: false }),
                Rel::Gt => out.push(OrientedRow { coeffs: neg, rhs: -&row.rhs, strict: true }),
                Rel::Eq => {
                    out.push(OrientedRow {
                        coeffs: row.normal.clone(),
                        rhs: row.rhs.clone(),
                        strict: false,
                    });
                    out.push(OrientedRow { coeffs: neg, rhs: -&row.rhs, strict: false });
                }
            }
        }
        out
    }

    /// Oriented rows with strict rows tightened by one; exact for integer
    /// solution sets.
    pub fn tightened(&self) -> Vec<OrientedRow> {
        self.oriented()
            .into_iter()
            .map(|mut r| {
                if r.strict {
                    r.rhs -= 1;
                    r.strict = false;
                }
                r
            })
            .collect()
    }

    pub fn satisfied_by_rational(&self, x: &[BigRational]) -> bool {
        self.rows.iter().all(|row| {
            let lhs: BigRational = row
                .normal
                .iter()
                .zip(x)
                .map(|(c, v)| BigRational::from(c.clone()) * v)
                .sum();
            let rhs = BigRational::from(row.rhs.clone());
            match row.rel {
                Rel::Lt => lhs < rhs,
                Rel::Le => lhs <= rhs,
                Rel::Eq => lhs == rhs,
                Rel::Ge => lhs >= rhs,
                Rel::Gt => lhs > rhs,
            }
        })
    }

    pub fn satisfied_by_integer(&self, x: &[BigInt]) -> bool {
        self.rows.iter().all(|row| {
            let lhs = linalg::dot(&row.normal, x);
            match row.rel {
                Rel::Lt => lhs < row.rhs,
                Rel::Le => lhs <= row.rhs,
                Rel::Eq => lhs == row.rhs,
                Rel::Ge => lhs >= row.rhs,
                Rel::Gt => lhs > row.rhs,
            }
        })
    }
}

/// Nonnegative multipliers over oriented rows certifying rational
/// infeasibility: the combination has zero normal and either negative
/// right-hand side, or zero right-hand side with positive mass on strict rows.
#[derive(Clone, Debug)]
pub struct FarkasCertificate {
    pub multipliers: Vec<BigRational>,
    pub rows: Vec<OrientedRow>,
}

impl FarkasCertificate {
    pub fn verify(&self) -> bool {
        if self.multipliers.len() != self.rows.len() {
            return false;
        }
        if self.multipliers.iter().any(|y| y.is_negative()) {
            return false;
        }
        let dim = match self.rows.first() {
            Some(r) => r.coeffs.len(),
            None => return false,
        };
        let mut combo = vec![BigRational::zero(); dim];
        let mut rhs = BigRational::zero();
        let mut strict_mass = BigRational::zero();
        for (y, row) in self.multipliers.iter().zip(&self.rows) {
            for (acc, c) in combo.iter_mut().zip(&row.coeffs) {
                *acc += y * BigRational::from(c.clone());
            }
            rhs += y * BigRational::from(row.rhs.clone());
            if row.strict {
                strict_mass += y;
            }
        }
        if combo.iter().any(|c| !c.is_zero()) {
            return false;
        }
        rhs.is_negative() || (rhs.is_zero() && strict_mass.is_positive())
    }
}

#[derive(Clone, Debug, Default)]
pub struct InfeasibilityEvidence {
    /// Rational-infeasibility certificate, when one exists.
    pub farkas: Option<FarkasCertificate>,
    /// For integer verdicts: the exhausted `‖m‖∞` search bound.
    pub search_bound: Option<BigInt>,
}

#[derive(Clone, Debug)]
pub enum Witness {
    Rational(Vec<BigRational>),
    Lattice(Vec<BigInt>),
}

#[derive(Clone, Debug)]
pub enum FeasibilityVerdict {
    Feasible(Witness),
    Infeasible(InfeasibilityEvidence),
}

impl FeasibilityVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityVerdict::Feasible(_))
    }

    pub fn lattice_witness(&self) -> Option<&Vec<BigInt>> {
        match self {
            FeasibilityVerdict::Feasible(Witness::Lattice(w)) => Some(w),
            _ => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Exact simplex core (nonnegative variables, rows A x ≤ b, maximize c·x).
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum LpResult {
    Optimal { objective: BigRational, point: Vec<BigRational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, e: usize) {
        let inv = self.rows[r][e].recip();
        for v in self.rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        self.rhs[r] = &self.rhs[r] * &inv;
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][e].is_zero() {
                continue;
            }
            let f = self.rows[i][e].clone();
            for j in 0..self.ncols {
                let v = &self.rows[i][j] - &f * &self.rows[r][j];
                self.rows[i][j] = v;
            }
            let v = &self.rhs[i] - &f * &self.rhs[r];
            self.rhs[i] = v;
        }
        self.basis[r] = e;
    }

    /// Maximize `cost · vars` with Bland's rule; `allowed` limits the columns
    /// eligible to enter the basis. Returns `None` on unboundedness.
    fn optimize(&mut self, cost: &[BigRational], allowed: usize) -> Option<()> {
        loop {
            // reduced costs r_j = c_j - c_B · B^-1 A_j
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut rj = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        rj -= &cost[b] * &self.rows[i][j];
                    }
                }
                if rj.is_positive() {
                    entering = Some(j);
                    break; // Bland: smallest index
                }
            }
            let Some(e) = entering else {
                return Some(());
            };
            let mut leaving: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][e].is_positive() {
                    let ratio = &self.rhs[i] / &self.rows[i][e];
                    leaving = match leaving {
                        None => Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < lr || (ratio == lr && self.basis[i] < self.basis[li]) {
                                Some((i, ratio))
                            } else {
                                Some((li, lr))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = leaving else {
                return None; // unbounded
            };
            self.pivot(r, e);
        }
    }

    fn objective_value(&self, cost: &[BigRational]) -> BigRational {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, &b)| &cost[b] * &self.rhs[i])
            .sum()
    }
}

/// Maximize `c · x` subject to `A x ≤ b`, `x ≥ 0`, exactly.
pub(crate) fn simplex_nonneg(
    c: &[BigRational],
    a: &[Vec<BigRational>],
    b: &[BigRational],
) -> LpResult {
    let n = c.len();
    let m = a.len();
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut artificial_rows = Vec::new();
    for (i, arow) in a.iter().enumerate() {
        debug_assert_eq!(arow.len(), n);
        let mut row = vec![BigRational::zero(); n + m];
        let negate = b[i].is_negative();
        for (j, v) in arow.iter().enumerate() {
            row[j] = if negate { -v.clone() } else { v.clone() };
        }
        row[n + i] = if negate {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        rows.push(row);
        rhs.push(if negate { -b[i].clone() } else { b[i].clone() });
        if negate {
            artificial_rows.push(i);
        } else {
            basis.push(n + i);
        }
    }
    // artificial columns appended after slacks
    let nart = artificial_rows.len();
    let ncols = n + m + nart;
    for row in rows.iter_mut() {
        row.resize(ncols, BigRational::zero());
    }
    let mut basis_full = vec![usize::MAX; m];
    {
        let mut bi = basis.into_iter();
        let mut ai = 0;
        for i in 0..m {
            if artificial_rows.contains(&i) {
                rows[i][n + m + ai] = BigRational::one();
                basis_full[i] = n + m + ai;
                ai += 1;
            } else {
                basis_full[i] = bi.next().unwrap();
            }
        }
    }
    let mut t = Tableau { rows, rhs, basis: basis_full, ncols };

    if nart > 0 {
        let mut phase1 = vec![BigRational::zero(); ncols];
        for v in phase1[n + m..].iter_mut() {
            *v = -BigRational::one();
        }
        t.optimize(&phase1, ncols)
            .expect("phase-1 objective is bounded");
        if t.objective_value(&phase1).is_negative() {
            return LpResult::Infeasible;
        }
        // drive remaining artificials out of the basis or drop their rows
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= n + m {
                if let Some(j) = (0..n + m).find(|&j| !t.rows[i][j].is_zero()) {
                    t.pivot(i, j);
                } else {
                    t.rows.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
            i += 1;
        }
    }

    let mut cost = vec![BigRational::zero(); ncols];
    cost[..n].clone_from_slice(c);
    if t.optimize(&cost, n + m).is_none() {
        return LpResult::Unbounded;
    }
    let mut point = vec![BigRational::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        if bv < n {
            point[bv] = t.rhs[i].clone();
        }
    }
    LpResult::Optimal { objective: t.objective_value(&cost), point }
}

/// An LP whose variables are free (unrestricted sign); rows are `a · x ≤ b`.
pub(crate) struct FreeLp {
    pub dim: usize,
    pub rows: Vec<(Vec<BigRational>, BigRational)>,
}

impl FreeLp {
    pub fn maximize(&self, obj: &[BigRational]) -> LpResult {
        debug_assert_eq!(obj.len(), self.dim);
        // split x = u - v with u, v ≥ 0
        let c: Vec<BigRational> = obj
            .iter()
            .flat_map(|x| [x.clone(), -x.clone()])
            .collect();
        let a: Vec<Vec<BigRational>> = self
            .rows
            .iter()
            .map(|(row, _)| row.iter().flat_map(|x| [x.clone(), -x.clone()]).collect())
            .collect();
        let b: Vec<BigRational> = self.rows.iter().map(|(_, rhs)| rhs.clone()).collect();
        match simplex_nonneg(&c, &a, &b) {
            LpResult::Optimal { objective, point } => {
                let x: Vec<BigRational> = (0..self.dim)
                    .map(|i| &point[2 * i] - &point[2 * i + 1])
                    .collect();
                LpResult::Optimal { objective, point: x }
            }
            other => other,
        }
    }
}

fn rat(x: &BigInt) -> BigRational {
    BigRational::from(x.clone())
}

fn oriented_free_lp(rows: &[OrientedRow], dim: usize) -> FreeLp {
    FreeLp {
        dim,
        rows: rows
            .iter()
            .map(|r| (r.coeffs.iter().map(rat).collect(), rat(&r.rhs)))
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

/// Decides feasibility over the rationals, honoring strict rows strictly.
pub fn real_feasible(sys: &InequalitySystem) -> Result<FeasibilityVerdict, FeasibilityError> {
    sys.validate()?;
    let oriented = sys.oriented();
    let verdict = real_feasible_oriented(&oriented, sys.dim);
    if let FeasibilityVerdict::Feasible(Witness::Rational(w)) = &verdict {
        debug_assert!(sys.satisfied_by_rational(w), "witness failed substitution");
    }
    Ok(verdict)
}

fn real_feasible_oriented(oriented: &[OrientedRow], dim: usize) -> FeasibilityVerdict {
    if oriented.is_empty() {
        return FeasibilityVerdict::Feasible(Witness::Rational(vec![
            BigRational::zero();
            dim
        ]));
    }
    let has_strict = oriented.iter().any(|r| r.strict);
    if !has_strict {
        let lp = oriented_free_lp(oriented, dim);
        return match lp.maximize(&vec![BigRational::zero(); dim]) {
            LpResult::Optimal { point, .. } => {
                FeasibilityVerdict::Feasible(Witness::Rational(point))
            }
            LpResult::Infeasible => FeasibilityVerdict::Infeasible(InfeasibilityEvidence {
                farkas: farkas_certificate(oriented, dim),
                search_bound: None,
            }),
            LpResult::Unbounded => unreachable!("zero objective cannot be unbounded"),
        };
    }
    // maximize the shared strict slack t, capped at 1
    let mut lp = FreeLp { dim: dim + 1, rows: Vec::new() };
    for r in oriented {
        let mut coeffs: Vec<BigRational> = r.coeffs.iter().map(rat).collect();
        coeffs.push(if r.strict {
            BigRational::one()
        } else {
            BigRational::zero()
        });
        lp.rows.push((coeffs, rat(&r.rhs)));
    }
    let mut t_cap = vec![BigRational::zero(); dim + 1];
    t_cap[dim] = BigRational::one();
    lp.rows.push((t_cap.clone(), BigRational::one()));
    let mut t_nonneg = vec![BigRational::zero(); dim + 1];
    t_nonneg[dim] = -BigRational::one();
    lp.rows.push((t_nonneg, BigRational::zero()));
    let mut obj = vec![BigRational::zero(); dim + 1];
    obj[dim] = BigRational::one();
    match lp.maximize(&obj) {
        LpResult::Optimal { objective, point } => {
            if objective.is_positive() {
                FeasibilityVerdict::Feasible(Witness::Rational(point[..dim].to_vec()))
            } else {
                FeasibilityVerdict::Infeasible(InfeasibilityEvidence {
                    farkas: farkas_certificate(oriented, dim),
                    search_bound: None,
                })
            }
        }
        LpResult::Infeasible => FeasibilityVerdict::Infeasible(InfeasibilityEvidence {
            farkas: farkas_certificate(oriented, dim),
            search_bound: None,
        }),
        LpResult::Unbounded => unreachable!("slack is capped at 1"),
    }
}

/// Finds `y ≥ 0` with `yᵀA = 0` and either `yᵀb ≤ −1`, or `yᵀb ≤ 0` with unit
/// mass on the strict rows (Motzkin transposition), by solving the
/// alternative system. The returned certificate is verified before return.
fn farkas_certificate(oriented: &[OrientedRow], dim: usize) -> Option<FarkasCertificate> {
    let k = oriented.len();
    if k == 0 {
        return None;
    }
    let build = |strict_mass: bool| -> Option<Vec<BigRational>> {
        // variables y_i ≥ 0; use the nonneg simplex directly
        let mut a: Vec<Vec<BigRational>> = Vec::new();
        let mut b: Vec<BigRational> = Vec::new();
        for j in 0..dim {
            let col: Vec<BigRational> = oriented.iter().map(|r| rat(&r.coeffs[j])).collect();
            a.push(col.clone());
            b.push(BigRational::zero());
            a.push(col.into_iter().map(|x| -x).collect());
            b.push(BigRational::zero());
        }
        let brow: Vec<BigRational> = oriented.iter().map(|r| rat(&r.rhs)).collect();
        if strict_mass {
            a.push(brow);
            b.push(BigRational::zero());
            let mass: Vec<BigRational> = oriented
                .iter()
                .map(|r| {
                    if r.strict {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect();
            a.push(mass.clone());
            b.push(BigRational::one());
            a.push(mass.into_iter().map(|x| -x).collect());
            b.push(-BigRational::one());
        } else {
            a.push(brow);
            b.push(-BigRational::one());
        }
        match simplex_nonneg(&vec![BigRational::zero(); k], &a, &b) {
            LpResult::Optimal { point, .. } => Some(point),
            _ => None,
        }
    };
    let has_strict = oriented.iter().any(|r| r.strict);
    let y = build(false).or_else(|| if has_strict { build(true) } else { None })?;
    let cert = FarkasCertificate { multipliers: y, rows: oriented.to_vec() };
    debug_assert!(cert.verify(), "alternative-system solution failed verification");
    cert.verify().then_some(cert)
}

/// `‖m‖∞` bound confining the integer search: `(d+1) · d! · A^d` with
/// `A = max(1, largest |entry| among normals and right-hand sides)`.
pub fn solvability_bound(rows: &[OrientedRow], dim: usize) -> BigInt {
    let mut a = BigInt::one();
    for r in rows {
        for c in &r.coeffs {
            if c.abs() > a {
                a = c.abs();
            }
        }
        if r.rhs.abs() > a {
            a = r.rhs.abs();
        }
    }
    let mut fact = BigInt::one();
    for i in 2..=dim {
        fact *= BigInt::from(i);
    }
    BigInt::from(dim + 1) * fact * a.pow(dim as u32)
}

/// Window prune over parallel row pairs: for rows `λu·x ≤ b1` and
/// `−μu·x ≤ b2` with `u` primitive, the integer value `u·x` must lie in
/// `[⌈−b2/μ⌉, ⌊b1/λ⌋]`; an empty window refutes integer feasibility.
fn parallel_window_empty(rows: &[OrientedRow]) -> bool {
    use std::collections::BTreeMap;
    let mut windows: BTreeMap<Vec<BigInt>, (Option<BigInt>, Option<BigInt>)> = BTreeMap::new();
    for r in rows {
        let g = r
            .coeffs
            .iter()
            .fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            continue; // zero row; rational check handles contradictions
        }
        let mut dir: Vec<BigInt> = r.coeffs.iter().map(|x| x / &g).collect();
        let first = dir.iter().find(|x| !x.is_zero()).unwrap().clone();
        let flipped = first.is_negative();
        if flipped {
            for v in &mut dir {
                *v = -&*v;
            }
        }
        let entry = windows.entry(dir).or_insert((None, None));
        if !flipped {
            // dir·x ≤ floor(rhs / g)
            let ub = r.rhs.div_floor(&g);
            entry.1 = Some(match entry.1.take() {
                Some(old) => old.min(ub),
                None => ub,
            });
        } else {
            // dir·x ≥ ceil(-rhs / g)
            let lb = (-&r.rhs).div_ceil(&g);
            entry.0 = Some(match entry.0.take() {
                Some(old) => old.max(lb),
                None => lb,
            });
        }
    }
    windows
        .values()
        .any(|(lo, hi)| matches!((lo, hi), (Some(l), Some(h)) if l > h))
}

/// Decides existence of an integer point; strict rows are tightened first.
///
/// Feasible verdicts carry an integer witness (re-verified against the
/// original system). Infeasible verdicts report the exhausted `‖m‖∞` bound
/// and, when the rational relaxation is already empty, a Farkas certificate.
pub fn integer_feasible(sys: &InequalitySystem) -> Result<FeasibilityVerdict, FeasibilityError> {
    sys.validate()?;
    let rows = sys.tightened();
    let dim = sys.dim;
    if rows.is_empty() {
        return Ok(FeasibilityVerdict::Feasible(Witness::Lattice(vec![
            BigInt::zero();
            dim
        ])));
    }
    let bound = solvability_bound(&rows, dim);
    if let FeasibilityVerdict::Infeasible(ev) = real_feasible_oriented(&rows, dim) {
        return Ok(FeasibilityVerdict::Infeasible(InfeasibilityEvidence {
            farkas: ev.farkas,
            search_bound: Some(bound),
        }));
    }
    if parallel_window_empty(&rows) {
        return Ok(FeasibilityVerdict::Infeasible(InfeasibilityEvidence {
            farkas: None,
            search_bound: Some(bound),
        }));
    }
    // escalate through small boxes first: witnesses are typically tiny, and
    // only the full solvability box decides infeasibility
    let fixed: Vec<Option<BigInt>> = vec![None; dim];
    let mut found = None;
    let mut b = BigInt::from(2);
    while b < bound {
        if let Some(w) = dfs_search(&rows, dim, &b, &fixed) {
            found = Some(w);
            break;
        }
        b *= 8;
    }
    if found.is_none() {
        found = dfs_search(&rows, dim, &bound, &fixed);
    }
    match found {
        Some(point) => {
            debug_assert!(
                sys.satisfied_by_integer(&point),
                "integer witness failed substitution"
            );
            Ok(FeasibilityVerdict::Feasible(Witness::Lattice(point)))
        }
        None => Ok(FeasibilityVerdict::Infeasible(InfeasibilityEvidence {
            farkas: None,
            search_bound: Some(bound),
        })),
    }
}

/// The rows restricted to the unfixed coordinates, with the fixed values
/// substituted into the right-hand sides. `None` when a fully substituted
/// row is already violated.
fn substitute_rows(
    rows: &[OrientedRow],
    fixed: &[Option<BigInt>],
    free_idx: &[usize],
) -> Option<Vec<OrientedRow>> {
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        let mut rhs = r.rhs.clone();
        for (j, fv) in fixed.iter().enumerate() {
            if let Some(v) = fv {
                rhs -= &r.coeffs[j] * v;
            }
        }
        let coeffs: Vec<BigInt> = free_idx.iter().map(|&j| r.coeffs[j].clone()).collect();
        if coeffs.iter().all(|c| c.is_zero()) {
            if rhs.is_negative() {
                return None;
            }
            continue;
        }
        out.push(OrientedRow { coeffs, rhs, strict: false });
    }
    Some(out)
}

/// LP over the substituted rows plus the `±bound` box rows.
fn sub_lp(subbed: &[OrientedRow], n_free: usize, bound: &BigInt) -> FreeLp {
    let mut lp = FreeLp { dim: n_free, rows: Vec::new() };
    for r in subbed {
        lp.rows
            .push((r.coeffs.iter().map(rat).collect(), rat(&r.rhs)));
    }
    let bnd = rat(bound);
    for k in 0..n_free {
        let mut up = vec![BigRational::zero(); n_free];
        up[k] = BigRational::one();
        lp.rows.push((up.clone(), bnd.clone()));
        let mut lo = vec![BigRational::zero(); n_free];
        lo[k] = -BigRational::one();
        lp.rows.push((lo, bnd.clone()));
    }
    lp
}

fn dfs_search(
    rows: &[OrientedRow],
    dim: usize,
    bound: &BigInt,
    fixed: &[Option<BigInt>],
) -> Option<Vec<BigInt>> {
    // every node owns its assignment; propagation must not leak into siblings
    let mut fixed = fixed.to_vec();
    // bound propagation: per-coordinate exact min/max by LP on the current box
    let mut intervals: Vec<(usize, BigInt, BigInt)>;
    loop {
        let free_idx: Vec<usize> = (0..dim).filter(|&i| fixed[i].is_none()).collect();
        if free_idx.is_empty() {
            let point: Vec<BigInt> = fixed.iter().map(|v| v.clone().unwrap()).collect();
            let ok = rows
                .iter()
                .all(|r| linalg::dot(&r.coeffs, &point) <= r.rhs);
            return ok.then_some(point);
        }
        let Some(subbed) = substitute_rows(rows, &fixed, &free_idx) else {
            return None;
        };
        if parallel_window_empty(&subbed) {
            return None;
        }
        let lp = sub_lp(&subbed, free_idx.len(), bound);
        intervals = Vec::with_capacity(free_idx.len());
        let mut refixed = false;
        for (k, &i) in free_idx.iter().enumerate() {
            let mut obj = vec![BigRational::zero(); free_idx.len()];
            obj[k] = BigRational::one();
            let hi = match lp.maximize(&obj) {
                LpResult::Optimal { objective, .. } => objective,
                LpResult::Infeasible => return None,
                LpResult::Unbounded => unreachable!("box keeps the LP bounded"),
            };
            obj[k] = -BigRational::one();
            let lo = match lp.maximize(&obj) {
                LpResult::Optimal { objective, .. } => -objective,
                LpResult::Infeasible => return None,
                LpResult::Unbounded => unreachable!("box keeps the LP bounded"),
            };
            let lo_int = lo.ceil().to_integer();
            let hi_int = hi.floor().to_integer();
            if lo_int > hi_int {
                return None;
            }
            if lo_int == hi_int {
                fixed[i] = Some(lo_int);
                refixed = true;
                break;
            }
            intervals.push((i, lo_int, hi_int));
        }
        if !refixed {
            break;
        }
    }
    // branch on the narrowest interval, exploring outward from its midpoint
    let (coord, lo, hi) = intervals
        .iter()
        .min_by_key(|(i, lo, hi)| (hi - lo, *i))
        .cloned()
        .unwrap();
    let mid = (&lo + &hi).div_floor(&BigInt::from(2));
    let mut up = mid.clone();
    let mut down = &mid - BigInt::one();
    loop {
        let mut tried = false;
        if up <= hi {
            fixed[coord] = Some(up.clone());
            if let Some(found) = dfs_search(rows, dim, bound, &fixed) {
                return Some(found);
            }
            up += 1;
            tried = true;
        }
        if down >= lo {
            fixed[coord] = Some(down.clone());
            if let Some(found) = dfs_search(rows, dim, bound, &fixed) {
                return Some(found);
            }
            down -= 1;
            tried = true;
        }
        if !tried {
            fixed[coord] = None;
            return None;
        }
    }
}

/// Dimension of the recession cone of the weakened system
/// `{v : a·v ≤ 0 for every oriented row}`.
pub fn recession_dim(sys: &InequalitySystem) -> Result<usize, FeasibilityError> {
    sys.validate()?;
    let dim = sys.dim;
    let rows: Vec<Vec<BigInt>> = sys.oriented().into_iter().map(|r| r.coeffs).collect();
    if rows.is_empty() {
        return Ok(dim);
    }
    // a row is implicit if its inequality is forced to equality on the cone
    let mut implicit: Vec<Vec<BigInt>> = Vec::new();
    for (i, _) in rows.iter().enumerate() {
        let mut lp = FreeLp { dim: dim + 1, rows: Vec::new() };
        for (j, row) in rows.iter().enumerate() {
            let mut coeffs: Vec<BigRational> = row.iter().map(rat).collect();
            coeffs.push(if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            });
            lp.rows.push((coeffs, BigRational::zero()));
        }
        let mut cap = vec![BigRational::zero(); dim + 1];
        cap[dim] = BigRational::one();
        lp.rows.push((cap, BigRational::one()));
        let mut nonneg = vec![BigRational::zero(); dim + 1];
        nonneg[dim] = -BigRational::one();
        lp.rows.push((nonneg, BigRational::zero()));
        let mut obj = vec![BigRational::zero(); dim + 1];
        obj[dim] = BigRational::one();
        match lp.maximize(&obj) {
            LpResult::Optimal { objective, .. } => {
                if !objective.is_positive() {
                    implicit.push(rows[i].clone());
                }
            }
            LpResult::Infeasible => unreachable!("origin is always in the recession cone"),
            LpResult::Unbounded => unreachable!("slack is capped at 1"),
        }
    }
    Ok(dim - linalg::rank_int(&implicit))
}

/// Is `w` a nonnegative rational combination of `gens`?
pub fn in_nonneg_span(gens: &[Vec<BigInt>], w: &[BigInt]) -> bool {
    let k = gens.len();
    let d = w.len();
    if k == 0 {
        return w.iter().all(|x| x.is_zero());
    }
    // λ ≥ 0 with Σ λ_i g_i = w, as a phase-1 problem in the nonneg simplex
    let mut a: Vec<Vec<BigRational>> = Vec::new();
    let mut b: Vec<BigRational> = Vec::new();
    for j in 0..d {
        let col: Vec<BigRational> = gens.iter().map(|g| rat(&g[j])).collect();
        a.push(col.clone());
        b.push(rat(&w[j]));
        a.push(col.into_iter().map(|x| -x).collect());
        b.push(-rat(&w[j]));
    }
    matches!(
        simplex_nonneg(&vec![BigRational::zero(); k], &a, &b),
        LpResult::Optimal { .. }
    )
}
