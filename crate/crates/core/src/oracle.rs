//! Exact rational linear algebra used as ground truth: affine rank,
//! convex-hull membership, extreme points and strict-separation face tests.
//!
//! All decisions go through `BigRational`; nothing here touches floats.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::perm::{Permutation, Side, Transposition};

pub const MAX_POINTS: usize = 200;
pub const MAX_DIM: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("empty point set")]
    Empty,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("scale guard exceeded: {points} points in dimension {dim} (limits {MAX_POINTS}, {MAX_DIM})")]
    ScaleGuard { points: usize, dim: usize },
    #[error("candidate face is not a subset of the point set")]
    NotSubset,
}

fn check_points(points: &[Vec<i64>]) -> Result<usize, OracleError> {
    let dim = points.first().ok_or(OracleError::Empty)?.len();
    if points.len() > MAX_POINTS || dim > MAX_DIM {
        return Err(OracleError::ScaleGuard { points: points.len(), dim });
    }
    if let Some(p) = points.iter().find(|p| p.len() != dim) {
        return Err(OracleError::DimensionMismatch { expected: dim, got: p.len() });
    }
    Ok(dim)
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> =
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            for j in c + 1..cols {
                let v = (&m[rank][c] * &m[r][j] - &m[r][c] * &m[rank][j]) / &prev;
                m[r][j] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Dimension of the affine hull of `points`.
pub fn affine_rank(points: &[Vec<i64>]) -> Result<usize, OracleError> {
    let dim = points.first().ok_or(OracleError::Empty)?.len();
    if let Some(p) = points.iter().find(|p| p.len() != dim) {
        return Err(OracleError::DimensionMismatch { expected: dim, got: p.len() });
    }
    let p0 = &points[0];
    let diffs: Vec<Vec<i64>> =
        points[1..].iter().map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
    Ok(integer_rank(&diffs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: BigRational, x: Vec<BigRational> },
    Infeasible,
    Unbounded,
}

/// `maximize c·x  s.t.  rows, x ≥ 0`, solved by the two-phase simplex method
/// with Bland's rule on a dense exact tableau.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    vars: usize,
    rows: Vec<(Vec<BigRational>, Relation, BigRational)>,
    objective: Vec<BigRational>,
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl LinearProgram {
    pub fn new(vars: usize) -> Self {
        LinearProgram { vars, rows: Vec::new(), objective: vec![BigRational::zero(); vars] }
    }

    pub fn constraint(&mut self, coeffs: &[i64], rel: Relation, rhs: i64) {
        assert_eq!(coeffs.len(), self.vars);
        self.rows.push((coeffs.iter().map(|&c| q(c)).collect(), rel, q(rhs)));
    }

    pub fn maximize(&mut self, coeffs: &[i64]) {
        assert_eq!(coeffs.len(), self.vars);
        self.objective = coeffs.iter().map(|&c| q(c)).collect();
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).solve(&self.objective, self.vars)
    }
}

struct Tableau {
    // m rows of width `width + 1`; the last entry is the rhs
    a: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    width: usize,
    first_artificial: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let m = lp.rows.len();
        // normalize to rhs ≥ 0
        let rows: Vec<(Vec<BigRational>, Relation, BigRational)> = lp
            .rows
            .iter()
            .map(|(c, rel, b)| {
                if b.is_negative() {
                    let flipped = match rel {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (c.iter().map(|x| -x).collect(), flipped, -b)
                } else {
                    (c.clone(), *rel, b.clone())
                }
            })
            .collect();
        let slacks = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let artificials = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let first_artificial = lp.vars + slacks;
        let width = first_artificial + artificials;
        let mut a = vec![vec![BigRational::zero(); width + 1]; m];
        let mut basis = vec![0; m];
        let (mut s, mut art) = (lp.vars, first_artificial);
        for (r, (coeffs, rel, b)) in rows.into_iter().enumerate() {
            a[r][..lp.vars].clone_from_slice(&coeffs);
            a[r][width] = b;
            match rel {
                Relation::Le => {
                    a[r][s] = BigRational::one();
                    basis[r] = s;
                    s += 1;
                }
                Relation::Ge => {
                    a[r][s] = -BigRational::one();
                    s += 1;
                    a[r][art] = BigRational::one();
                    basis[r] = art;
                    art += 1;
                }
                Relation::Eq => {
                    a[r][art] = BigRational::one();
                    basis[r] = art;
                    art += 1;
                }
            }
        }
        Tableau { a, basis, width, first_artificial }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.a[row][col].recip();
        for x in self.a[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.a[row].clone();
        for (r, line) in self.a.iter_mut().enumerate() {
            if r == row || line[col].is_zero() {
                continue;
            }
            let f = line[col].clone();
            for (x, p) in line.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Reduced costs `c_j - c_B B^{-1} A_j` restricted to columns `< limit`.
    fn reduced_costs(&self, cost: &[BigRational], limit: usize) -> Vec<BigRational> {
        let mut d: Vec<BigRational> = (0..limit).map(|j| cost[j].clone()).collect();
        for (r, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            for (j, dj) in d.iter_mut().enumerate() {
                if !self.a[r][j].is_zero() {
                    *dj -= &cost[b] * &self.a[r][j];
                }
            }
        }
        d
    }

    /// Runs the simplex loop maximizing `cost` over columns `< limit`. Returns false if unbounded.
    fn optimize(&mut self, cost: &[BigRational], limit: usize) -> bool {
        loop {
            let d = self.reduced_costs(cost, limit);
            let Some(col) = (0..limit).find(|&j| d[j].is_positive()) else { return true };
            let mut best: Option<(usize, BigRational)> = None;
            for r in 0..self.a.len() {
                if !self.a[r][col].is_positive() {
                    continue;
                }
                let ratio = &self.a[r][self.width] / &self.a[r][col];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, col),
            }
        }
    }

    fn objective_value(&self, cost: &[BigRational]) -> BigRational {
        self.basis
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (r, &b)| acc + &cost[b] * &self.a[r][self.width])
    }

    fn solve(mut self, objective: &[BigRational], vars: usize) -> LpOutcome {
        if self.first_artificial < self.width {
            let mut phase1 = vec![BigRational::zero(); self.width];
            for c in phase1.iter_mut().skip(self.first_artificial) {
                *c = -BigRational::one();
            }
            self.optimize(&phase1, self.width);
            if self.objective_value(&phase1).is_negative() {
                return LpOutcome::Infeasible;
            }
            // drive zero-level artificials out of the basis; drop redundant rows
            let mut r = 0;
            while r < self.a.len() {
                if self.basis[r] >= self.first_artificial {
                    match (0..self.first_artificial).find(|&j| !self.a[r][j].is_zero()) {
                        Some(j) => self.pivot(r, j),
                        None => {
                            self.a.remove(r);
                            self.basis.remove(r);
                            continue;
                        }
                    }
                }
                r += 1;
            }
        }
        let mut cost = vec![BigRational::zero(); self.width];
        cost[..vars].clone_from_slice(objective);
        if !self.optimize(&cost, self.first_artificial) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![BigRational::zero(); vars];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < vars {
                x[b] = self.a[r][self.width].clone();
            }
        }
        LpOutcome::Optimal { value: self.objective_value(&cost), x }
    }
}

/// Whether `target` is a convex combination of `points`.
pub fn hull_membership(target: &[i64], points: &[Vec<i64>]) -> Result<bool, OracleError> {
    let dim = check_points(points)?;
    if target.len() != dim {
        return Err(OracleError::DimensionMismatch { expected: dim, got: target.len() });
    }
    if points.iter().any(|p| p == target) {
        return Ok(true);
    }
    let mut lp = LinearProgram::new(points.len());
    lp.constraint(&vec![1; points.len()], Relation::Eq, 1);
    for (i, &t) in target.iter().enumerate() {
        let row: Vec<i64> = points.iter().map(|p| p[i]).collect();
        lp.constraint(&row, Relation::Eq, t);
    }
    Ok(!matches!(lp.solve(), LpOutcome::Infeasible))
}

/// The points not expressible as convex combinations of the others, in input order.
/// Duplicates collapse to their first occurrence.
pub fn extreme_points(points: &[Vec<i64>]) -> Result<Vec<Vec<i64>>, OracleError> {
    check_points(points)?;
    let mut distinct: Vec<Vec<i64>> = Vec::new();
    for p in points {
        if !distinct.contains(p) {
            distinct.push(p.clone());
        }
    }
    if distinct.len() == 1 {
        return Ok(distinct);
    }
    let mut out = Vec::new();
    for (i, p) in distinct.iter().enumerate() {
        let others: Vec<Vec<i64>> =
            distinct.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect();
        if !hull_membership(p, &others)? {
            out.push(p.clone());
        }
    }
    Ok(out)
}

/// Maximum separation margin `δ` of a functional `ω ∈ [-1, 1]^d` that is
/// constant on `face` and at least `δ` lower on every other point.
/// `None` means no point lies outside `face`.
pub fn separation_margin(
    face: &[Vec<i64>],
    points: &[Vec<i64>],
) -> Result<Option<BigRational>, OracleError> {
    let dim = check_points(points)?;
    if face.is_empty() {
        return Err(OracleError::Empty);
    }
    if face.iter().any(|s| !points.contains(s)) {
        return Err(OracleError::NotSubset);
    }
    let rest: Vec<&Vec<i64>> = points.iter().filter(|p| !face.contains(p)).collect();
    if rest.is_empty() {
        return Ok(None);
    }
    // variables w = ω + 1 ∈ [0, 2], then δ ≥ 0
    let s0 = &face[0];
    let mut lp = LinearProgram::new(dim + 1);
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for s in &face[1..] {
        let diff: Vec<i64> = s.iter().zip(s0).map(|(a, b)| a - b).collect();
        let mut trial = basis.clone();
        trial.push(diff.clone());
        if integer_rank(&trial) > basis.len() {
            basis = trial;
            let shift: i64 = diff.iter().sum();
            let mut row = diff;
            row.push(0);
            lp.constraint(&row, Relation::Eq, shift);
        }
    }
    for t in rest {
        // ω·s0 − ω·t ≥ δ
        let diff: Vec<i64> = s0.iter().zip(t).map(|(a, b)| a - b).collect();
        let shift: i64 = diff.iter().sum();
        let mut row: Vec<i64> = diff.iter().map(|x| -x).collect();
        row.push(1);
        lp.constraint(&row, Relation::Le, -shift);
    }
    for i in 0..dim {
        let mut row = vec![0; dim + 1];
        row[i] = 1;
        lp.constraint(&row, Relation::Le, 2);
    }
    let mut obj = vec![0; dim + 1];
    obj[dim] = 1;
    lp.maximize(&obj);
    match lp.solve() {
        LpOutcome::Optimal { value, .. } => Ok(Some(value)),
        // ω = 0, δ = 0 is always feasible and the box bounds everything
        LpOutcome::Infeasible | LpOutcome::Unbounded => unreachable!("margin LP is feasible and bounded"),
    }
}

/// Whether `face` is exactly the set of points of `points` on some face of their hull.
pub fn is_face(face: &[Vec<i64>], points: &[Vec<i64>]) -> Result<bool, OracleError> {
    Ok(match separation_margin(face, points)? {
        None => true,
        Some(delta) => delta.is_positive(),
    })
}

/// Points maximizing `ω·p`.
pub fn argmax(points: &[Vec<i64>], omega: &[i64]) -> Vec<Vec<i64>> {
    let value = |p: &Vec<i64>| p.iter().zip(omega).map(|(a, b)| a * b).sum::<i64>();
    let best = points.iter().map(value).max();
    points.iter().filter(|p| Some(value(p)) == best).cloned().collect()
}

/// One reduced word of `v`, as simple-reflection indices `i_1, ..., i_ℓ`
/// with `v = s_{i_1} ⋯ s_{i_ℓ}`.
pub fn reduced_word(v: &Permutation) -> Vec<usize> {
    let mut w = *v;
    let mut word = Vec::with_capacity(v.length());
    while let Some(&i) = w.descents(Side::Right).first() {
        word.push(i);
        w = w.times(Transposition::simple(i).expect("descent index"));
    }
    word.reverse();
    word
}

/// `{u : some reduced subword of a reduced word of v multiplies to u}`, the
/// subword description of the lower interval `[e, v]`.
pub fn subword_lower_set(v: &Permutation) -> BTreeSet<Permutation> {
    let mut reached = BTreeSet::from([Permutation::identity(v.n())]);
    for i in reduced_word(v) {
        let s = Transposition::simple(i).expect("word index");
        let grown: Vec<Permutation> =
            reached.iter().filter(|z| !z.has_right_descent(i)).map(|z| z.times(s)).collect();
        reached.extend(grown);
    }
    reached
}
