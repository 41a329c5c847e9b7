//! R-polynomials: the descent recurrence, its inversion-minimal
//! generalization, the `R̃` normalization, and special matchings.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;
use thiserror::Error;

use crate::interval::{inversion_minimal_transpositions, is_inversion_minimal, lifting_relations_hold, BruhatInterval, IntervalError};
use crate::perm::{Permutation, Transposition};

/// Dense integer polynomial in `q`; index = degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial(Vec<i64>);

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial(coeffs)
    }

    pub fn zero() -> Self {
        IntPolynomial(Vec::new())
    }

    pub fn one() -> Self {
        IntPolynomial(vec![1])
    }

    /// `q^d`.
    pub fn monomial(d: usize) -> Self {
        let mut c = vec![0; d + 1];
        c[d] = 1;
        IntPolynomial(c)
    }

    /// `q - 1`.
    pub fn q_minus_one() -> Self {
        IntPolynomial(vec![-1, 1])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> i64 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn constant(&self) -> i64 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| acc * x + c)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.0.len().max(rhs.0.len());
        let at = |p: &IntPolynomial, i: usize| p.0.get(i).copied().unwrap_or(0);
        IntPolynomial::new((0..len).map(|i| at(self, i) + at(rhs, i)).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial(self.0.iter().map(|c| -c).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &-rhs
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut c = vec![0; self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPolynomial::new(c)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for IntPolynomial {
    /// Descending degree: `q^8 - 4q^7 + ... - 4q + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (d, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "q")?,
                (1, _) => write!(f, "{a}q")?,
                (_, 1) => write!(f, "q^{d}")?,
                _ => write!(f, "{a}q^{d}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RpolyError {
    #[error("{t} is not inversion-minimal on ({u}, {v}): {reason}")]
    NotInversionMinimal { u: Permutation, v: Permutation, t: Transposition, reason: String },
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error("matching is not total: {0} has no partner")]
    NotTotal(Permutation),
    #[error("matching is not an involution at {0}")]
    NotInvolution(Permutation),
    #[error("matching pairs {0} with {1}, which is not a Hasse edge")]
    NotEdge(Permutation, Permutation),
    #[error("matching is not special")]
    NotSpecial,
    #[error("interval must start at the identity, got [{0}, {1}]")]
    NotLowerInterval(Permutation, Permutation),
    #[error("{0} is not in the interval")]
    Outside(Permutation),
}

/// Why `t = (i k)` fails inversion-minimality: either the endpoints do not
/// flip, or a smaller window `[p, q]` already does.
pub fn inversion_minimality_failure(u: &Permutation, v: &Permutation, t: Transposition) -> Option<String> {
    if is_inversion_minimal(u, v, t) {
        return None;
    }
    let (i, k) = (t.i(), t.k());
    if k > u.n() {
        return Some(format!("position {k} exceeds n = {}", u.n()));
    }
    if !(v.at(i) > v.at(k) && u.at(i) < u.at(k)) {
        return Some(format!("need v_{i} > v_{k} and u_{i} < u_{k}"));
    }
    for p in i..=k {
        for q in p + 1..=k {
            if (p, q) != (i, k) && v.at(p) > v.at(q) && u.at(p) < u.at(q) {
                return Some(format!("smaller window [{p},{q}] inside [{i},{k}] also flips"));
            }
        }
    }
    unreachable!("non-minimal transposition without a reason")
}

thread_local! {
    static R_MEMO: RefCell<HashMap<(Permutation, Permutation), IntPolynomial>> = RefCell::new(HashMap::new());
    static RT_MEMO: RefCell<HashMap<(Permutation, Permutation), IntPolynomial>> = RefCell::new(HashMap::new());
}

fn first_descent(v: &Permutation) -> Option<usize> {
    (1..v.n()).find(|&i| v.has_right_descent(i))
}

/// One step of the descent recurrence at `s_i ∈ D_R(v)`.
fn r_step(u: &Permutation, v: &Permutation, i: usize) -> IntPolynomial {
    let s = Transposition::simple(i).expect("valid simple reflection");
    let (us, vs) = (u.times(s), v.times(s));
    if u.has_right_descent(i) {
        r_polynomial(&us, &vs)
    } else {
        &(&IntPolynomial::monomial(1) * &r_polynomial(&us, &vs)) + &(&IntPolynomial::q_minus_one() * &r_polynomial(u, &vs))
    }
}

/// `R_{u,v}(q)`, memoized per thread; recursion uses the least right descent of `v`.
pub fn r_polynomial(u: &Permutation, v: &Permutation) -> IntPolynomial {
    if u.n() != v.n() || !u.bruhat_le(v) {
        return IntPolynomial::zero();
    }
    if u == v {
        return IntPolynomial::one();
    }
    if let Some(hit) = R_MEMO.with(|m| m.borrow().get(&(*u, *v)).cloned()) {
        return hit;
    }
    let i = first_descent(v).expect("v > u has a descent");
    let r = r_step(u, v, i);
    R_MEMO.with(|m| m.borrow_mut().insert((*u, *v), r.clone()));
    r
}

/// `R_{u,v}` with the first recursion step forced through `s_i ∈ D_R(v)`.
pub fn r_polynomial_via_descent(u: &Permutation, v: &Permutation, i: usize) -> Option<IntPolynomial> {
    if i == 0 || i >= v.n() || !v.has_right_descent(i) {
        return None;
    }
    if !u.bruhat_le(v) {
        return Some(IntPolynomial::zero());
    }
    if u == v {
        return Some(IntPolynomial::one());
    }
    Some(r_step(u, v, i))
}

/// `R̃_{u,v}`, defined by `R̃_{u,v} = R̃_{us,vs}` if `s ∈ D_R(u)` and
/// `R̃_{us,vs} + q R̃_{u,vs}` otherwise, for `s ∈ D_R(v)`.
pub fn r_tilde(u: &Permutation, v: &Permutation) -> IntPolynomial {
    if u.n() != v.n() || !u.bruhat_le(v) {
        return IntPolynomial::zero();
    }
    if u == v {
        return IntPolynomial::one();
    }
    if let Some(hit) = RT_MEMO.with(|m| m.borrow().get(&(*u, *v)).cloned()) {
        return hit;
    }
    let i = first_descent(v).expect("v > u has a descent");
    let s = Transposition::simple(i).expect("valid simple reflection");
    let (us, vs) = (u.times(s), v.times(s));
    let r = if u.has_right_descent(i) {
        r_tilde(&us, &vs)
    } else {
        &r_tilde(&us, &vs) + &(&IntPolynomial::monomial(1) * &r_tilde(u, &vs))
    };
    RT_MEMO.with(|m| m.borrow_mut().insert((*u, *v), r.clone()));
    r
}

/// Recovers `R(q) = Σ_k c_k q^{(L-k)/2} (q-1)^k` from `R̃ = Σ_k c_k q^k`,
/// where `L = ℓ(v) - ℓ(u)`.
pub fn r_from_tilde(tilde: &IntPolynomial, length_difference: usize) -> IntPolynomial {
    let mut out = IntPolynomial::zero();
    for (k, &c) in tilde.coeffs().iter().enumerate() {
        if c == 0 {
            continue;
        }
        assert!(k <= length_difference && (length_difference - k) % 2 == 0, "parity of R̃");
        let term = &IntPolynomial::monomial((length_difference - k) / 2) * &IntPolynomial::q_minus_one().pow(k);
        out = &out + &(&IntPolynomial::new(vec![c]) * &term);
    }
    out
}

/// Both sides of `R_{u,v} = q R_{ut,vt} + (q-1) R_{u,vt}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneralizedSides {
    pub t: Transposition,
    pub lhs: IntPolynomial,
    pub rhs: IntPolynomial,
    pub r_ut_vt: IntPolynomial,
    pub r_u_vt: IntPolynomial,
}

impl GeneralizedSides {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Evaluates both sides for any `t`, without checking minimality.
pub fn generalized_sides(u: &Permutation, v: &Permutation, t: Transposition) -> GeneralizedSides {
    let (ut, vt) = (u.times(t), v.times(t));
    let r_ut_vt = r_polynomial(&ut, &vt);
    let r_u_vt = r_polynomial(u, &vt);
    let rhs = &(&IntPolynomial::monomial(1) * &r_ut_vt) + &(&IntPolynomial::q_minus_one() * &r_u_vt);
    GeneralizedSides { t, lhs: r_polynomial(u, v), rhs, r_ut_vt, r_u_vt }
}

pub fn generalized_r_identity(u: &Permutation, v: &Permutation, t: Transposition) -> Result<GeneralizedSides, RpolyError> {
    if !u.bruhat_le(v) {
        return Err(IntervalError::NotLeq(*u, *v).into());
    }
    if let Some(reason) = inversion_minimality_failure(u, v, t) {
        return Err(RpolyError::NotInversionMinimal { u: *u, v: *v, t, reason });
    }
    Ok(generalized_sides(u, v, t))
}

/// The tilde form `R̃_{u,v} = R̃_{ut,vt} + q R̃_{u,vt}`.
pub fn generalized_r_tilde_identity(u: &Permutation, v: &Permutation, t: Transposition) -> bool {
    let (ut, vt) = (u.times(t), v.times(t));
    r_tilde(u, v) == &r_tilde(&ut, &vt) + &(&IntPolynomial::monomial(1) * &r_tilde(u, &vt))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub u: Permutation,
    pub v: Permutation,
    pub t: Transposition,
    pub lifting_relations_hold: bool,
    pub t_inversion_minimal: bool,
    pub sides: GeneralizedSides,
    /// The identity for every inversion-minimal transposition of the same pair.
    pub minimal_alternatives: Vec<(Transposition, bool)>,
}

impl CounterexampleReport {
    /// Relations hold, identity fails, and every minimal alternative succeeds.
    pub fn confirmed(&self) -> bool {
        self.lifting_relations_hold
            && !self.t_inversion_minimal
            && !self.sides.holds()
            && !self.minimal_alternatives.is_empty()
            && self.minimal_alternatives.iter().all(|&(_, ok)| ok)
    }
}

pub fn counterexample_report(u: Permutation, v: Permutation, t: Transposition) -> CounterexampleReport {
    let minimal_alternatives = inversion_minimal_transpositions(&u, &v)
        .unwrap_or_default()
        .into_iter()
        .map(|s| (s, generalized_sides(&u, &v, s).holds()))
        .collect();
    CounterexampleReport {
        u,
        v,
        t,
        lifting_relations_hold: lifting_relations_hold(&u, &v, t),
        t_inversion_minimal: is_inversion_minimal(&u, &v, t),
        sides: generalized_sides(&u, &v, t),
        minimal_alternatives,
    }
}

/// The pair `u = 1324, v = 4231, t = (2 4)`: the lifting relations hold but the identity fails.
pub fn recurrence_counterexample_check() -> CounterexampleReport {
    counterexample_report("1324".parse().unwrap(), "4231".parse().unwrap(), Transposition::new(2, 4).unwrap())
}

/// An involution on the elements of an interval.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Matching {
    map: BTreeMap<Permutation, Permutation>,
}

impl Matching {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records both `M(a) = b` and `M(b) = a`.
    pub fn pair(&mut self, a: Permutation, b: Permutation) {
        self.map.insert(a, b);
        self.map.insert(b, a);
    }

    pub fn from_map(map: BTreeMap<Permutation, Permutation>) -> Self {
        Matching { map }
    }

    pub fn get(&self, z: &Permutation) -> Option<Permutation> {
        self.map.get(z).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, &Permutation)> {
        self.map.iter()
    }

    /// `x ↦ x·t` on the interval, when it stays inside.
    pub fn multiplication(interval: &BruhatInterval, t: Transposition, side: crate::perm::Side) -> Option<Self> {
        let mut m = Matching::new();
        for z in interval.elements() {
            let image = match side {
                crate::perm::Side::Right => z.times(t),
                crate::perm::Side::Left => z.left_times(t),
            };
            if !interval.contains(&image) {
                return None;
            }
            m.map.insert(*z, image);
        }
        Some(m)
    }
}

/// Structural checks (total, involutive, along Hasse edges), then the special condition.
pub fn is_special_matching(interval: &BruhatInterval, m: &Matching) -> Result<bool, RpolyError> {
    for z in interval.elements() {
        let w = m.get(z).ok_or(RpolyError::NotTotal(*z))?;
        if !interval.contains(&w) {
            return Err(RpolyError::Outside(w));
        }
        if m.get(&w) != Some(*z) {
            return Err(RpolyError::NotInvolution(*z));
        }
        if z.cover_transposition(&w).is_none() && w.cover_transposition(z).is_none() {
            return Err(RpolyError::NotEdge(*z, w));
        }
    }
    Ok(interval.covers().all(|(x, y)| {
        let (mx, my) = (m.get(&x).expect("total"), m.get(&y).expect("total"));
        mx == y || mx.bruhat_le(&my)
    }))
}

/// `R_{u,w} = q^c R_{M(u),M(w)} + (q^c - 1) R_{u,M(w)}`, `c = [M(u) ⋗ u]`, on `[e, w]`.
pub fn special_matching_r_identity(interval: &BruhatInterval, m: &Matching, u: &Permutation) -> Result<bool, RpolyError> {
    let (e, w) = (interval.u(), interval.v());
    if e != Permutation::identity(e.n()) {
        return Err(RpolyError::NotLowerInterval(e, w));
    }
    if !is_special_matching(interval, m)? {
        return Err(RpolyError::NotSpecial);
    }
    let mu = m.get(u).ok_or(RpolyError::Outside(*u))?;
    let mw = m.get(&w).expect("total");
    let qc = if u.cover_transposition(&mu).is_some() { IntPolynomial::monomial(1) } else { IntPolynomial::one() };
    let rhs = &(&qc * &r_polynomial(&mu, &mw)) + &(&(&qc - &IntPolynomial::one()) * &r_polynomial(u, &mw));
    Ok(r_polynomial(u, &w) == rhs)
}

/// Covers `x ⋖ y` of the interval, both ends assigned, with `M(x) ≠ y` and
/// `M(x) ≰ M(y)`, reading `pairs` as a partial involution.
pub fn cover_violations(interval: &BruhatInterval, pairs: &[(Permutation, Permutation)]) -> Vec<(Permutation, Permutation)> {
    let mut m = Matching::new();
    for &(a, b) in pairs {
        m.pair(a, b);
    }
    interval
        .covers()
        .filter(|(x, y)| match (m.get(x), m.get(y)) {
            (Some(mx), Some(my)) => mx != *y && !mx.bruhat_le(&my),
            _ => false,
        })
        .collect()
}

/// Why propagation stopped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Contradiction {
    /// `below ⋖ above`, `M(below) ≠ above` and `M(below) ≰ M(above)`.
    ViolatedCover { below: Permutation, above: Permutation, m_below: Permutation, m_above: Permutation },
    /// No unmatched Hasse neighbour is consistent; each choice is listed with a cover it breaks.
    NoCandidate { element: Permutation, blocked: Vec<BlockedChoice> },
    /// A seed pair is already blocked by the assignments before it.
    SeedConflict { element: Permutation, image: Permutation },
    /// Every branch of the search failed.
    Exhausted,
}

impl fmt::Display for Contradiction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Contradiction::ViolatedCover { below, above, m_below, m_above } => {
                write!(f, "cover {below} ⋖ {above} broken: M({below}) = {m_below} ≰ {m_above} = M({above})")
            }
            Contradiction::NoCandidate { element, blocked } => {
                write!(f, "{element} has no legal partner")?;
                for b in blocked {
                    write!(f, "; {} breaks {} ⋖ {} ({} ≰ {})", b.image, b.below, b.above, b.m_below, b.m_above)?;
                }
                Ok(())
            }
            Contradiction::SeedConflict { element, image } => write!(f, "seed M({element}) = {image} is already blocked"),
            Contradiction::Exhausted => f.write_str("every branch of the search failed"),
        }
    }
}

/// `M(element) = image` would break the cover `below ⋖ above`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockedChoice {
    pub image: Permutation,
    pub below: Permutation,
    pub above: Permutation,
    pub m_below: Permutation,
    pub m_above: Permutation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureWitness {
    /// Assignments `M(x) = y` in the order they were forced, seeds first.
    pub forced: Vec<(Permutation, Permutation)>,
    pub contradiction: Contradiction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Extension {
    Found { matching: Matching },
    Failed { witness: FailureWitness },
}

/// Partial matching over interval indices, with a log of forced pairs.
#[derive(Clone)]
struct Partial<'a> {
    iv: &'a BruhatInterval,
    m: Vec<Option<usize>>,
    log: Vec<(usize, usize)>,
}

impl<'a> Partial<'a> {
    fn new(iv: &'a BruhatInterval) -> Self {
        Partial { iv, m: vec![None; iv.len()], log: Vec::new() }
    }

    fn el(&self, i: usize) -> Permutation {
        self.iv.elements()[i]
    }

    fn neighbours(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.iv.up_indices(x).iter().chain(self.iv.down_indices(x)).map(|&(b, _)| b)
    }

    /// The cover condition for `a ⋖ b`, if both ends are assigned.
    fn cover_ok(&self, a: usize, b: usize) -> bool {
        match (self.m[a], self.m[b]) {
            (Some(ma), Some(mb)) => ma == b || self.el(ma).bruhat_le(&self.el(mb)),
            _ => true,
        }
    }

    /// Cover conditions touching `x` or `z` under `M(x) = z`; with `upward_only`
    /// just those where `x` or `z` is the lower end.
    fn consistent(&mut self, x: usize, z: usize, upward_only: bool) -> bool {
        self.m[x] = Some(z);
        self.m[z] = Some(x);
        let ok = [x, z].iter().all(|&a| {
            self.iv.up_indices(a).iter().all(|&(b, _)| self.cover_ok(a, b))
                && (upward_only || self.iv.down_indices(a).iter().all(|&(b, _)| self.cover_ok(b, a)))
        });
        self.m[x] = None;
        self.m[z] = None;
        ok
    }

    fn candidates_with(&mut self, x: usize, upward_only: bool) -> Vec<usize> {
        let nb: Vec<usize> = self.neighbours(x).filter(|&z| self.m[z].is_none()).collect();
        nb.into_iter().filter(|&z| self.consistent(x, z, upward_only)).collect()
    }

    fn candidates(&mut self, x: usize) -> Vec<usize> {
        self.candidates_with(x, false)
    }

    fn assign(&mut self, x: usize, z: usize) -> Result<(), Contradiction> {
        self.m[x] = Some(z);
        self.m[z] = Some(x);
        self.log.push((x, z));
        for &a in &[x, z] {
            for &(b, _) in self.iv.up_indices(a) {
                self.violation(a, b)?;
            }
            for &(b, _) in self.iv.down_indices(a) {
                self.violation(b, a)?;
            }
        }
        Ok(())
    }

    fn violation(&self, a: usize, b: usize) -> Result<(), Contradiction> {
        if self.cover_ok(a, b) {
            return Ok(());
        }
        Err(Contradiction::ViolatedCover {
            below: self.el(a),
            above: self.el(b),
            m_below: self.el(self.m[a].expect("assigned")),
            m_above: self.el(self.m[b].expect("assigned")),
        })
    }

    /// Unit propagation to a fixpoint, visiting elements from the top down.
    /// Choices pinned by the covers above are forced first, the way one
    /// derives them by hand; the full cover conditions are the fallback.
    fn propagate(&mut self) -> Result<(), Contradiction> {
        'outer: loop {
            for upward_only in [true, false] {
                for x in (0..self.m.len()).rev() {
                    if self.m[x].is_some() {
                        continue;
                    }
                    let c = self.candidates_with(x, upward_only);
                    match c.len() {
                        0 => return Err(self.dead_end(x)),
                        1 => {
                            self.assign(x, c[0])?;
                            continue 'outer;
                        }
                        _ => {}
                    }
                }
            }
            return Ok(());
        }
    }

    fn dead_end(&mut self, x: usize) -> Contradiction {
        let free: Vec<usize> = self.neighbours(x).filter(|&z| self.m[z].is_none()).collect();
        let blocked = free
            .into_iter()
            .filter_map(|z| {
                let mut trial = self.clone();
                match trial.assign(x, z) {
                    Err(Contradiction::ViolatedCover { below, above, m_below, m_above }) => {
                        Some(BlockedChoice { image: self.el(z), below, above, m_below, m_above })
                    }
                    _ => None,
                }
            })
            .collect();
        Contradiction::NoCandidate { element: self.el(x), blocked }
    }

    fn seed(&mut self, x: usize, z: usize) -> Result<(), Contradiction> {
        match (self.m[x], self.m[z]) {
            (Some(a), _) if a == z => Ok(()),
            (None, None) => self.assign(x, z),
            _ => Err(Contradiction::SeedConflict { element: self.el(x), image: self.el(z) }),
        }
    }

    fn search(&mut self) -> bool {
        if self.propagate().is_err() {
            return false;
        }
        let open: Vec<usize> = (0..self.m.len()).filter(|&x| self.m[x].is_none()).collect();
        let Some(&x) = open.iter().min_by_key(|&&x| (self.clone().candidates(x).len(), std::cmp::Reverse(x))) else {
            return true;
        };
        for z in self.candidates(x) {
            let mut next = self.clone();
            if next.assign(x, z).is_ok() && next.search() {
                *self = next;
                return true;
            }
        }
        false
    }

    fn witness(&self, contradiction: Contradiction) -> FailureWitness {
        FailureWitness { forced: self.log.iter().map(|&(a, b)| (self.el(a), self.el(b))).collect(), contradiction }
    }

    fn matching(&self) -> Matching {
        let mut m = Matching::new();
        for (x, z) in self.m.iter().enumerate() {
            m.map.insert(self.el(x), self.el(z.expect("complete")));
        }
        m
    }
}

/// Searches for a special matching of `[u, v]` with `M(v) = vt` and `M(u) = ut`.
///
/// Seeds `M(v) = vt` alone first and propagates forced assignments; a
/// contradiction there rules out every matching with that top value. Then
/// `M(u) = ut` is added and the remainder is settled by backtracking.
pub fn extend_to_special_matching(u: &Permutation, v: &Permutation, t: Transposition) -> Result<Extension, RpolyError> {
    let iv = BruhatInterval::new(*u, *v)?;
    if let Some(reason) = inversion_minimality_failure(u, v, t) {
        return Err(RpolyError::NotInversionMinimal { u: *u, v: *v, t, reason });
    }
    let idx = |z: &Permutation| iv.index_of(z).expect("lift stays in the interval");
    let (iu, iv_top, iut, ivt) = (idx(u), idx(v), idx(&u.times(t)), idx(&v.times(t)));
    let mut p = Partial::new(&iv);
    let staged = p.seed(iv_top, ivt).and_then(|_| p.propagate()).and_then(|_| p.seed(iu, iut));
    if let Err(c) = staged {
        return Ok(Extension::Failed { witness: p.witness(c) });
    }
    let before_search = p.clone();
    if p.search() {
        let matching = p.matching();
        debug_assert!(is_special_matching(&iv, &matching).unwrap_or(false));
        Ok(Extension::Found { matching })
    } else {
        let mut q = before_search;
        let c = q.propagate().err().unwrap_or(Contradiction::Exhausted);
        Ok(Extension::Failed { witness: q.witness(c) })
    }
}

/// All special matchings of an interval, by exhaustive backtracking.
pub fn special_matchings(interval: &BruhatInterval) -> Vec<Matching> {
    fn go(p: &Partial, out: &mut Vec<Matching>, iv: &BruhatInterval) {
        let Some(x) = p.m.iter().position(Option::is_none) else {
            let m = p.matching();
            if is_special_matching(iv, &m).unwrap_or(false) {
                out.push(m);
            }
            return;
        };
        let nb: Vec<usize> = p.neighbours(x).filter(|&z| p.m[z].is_none()).collect();
        for z in nb {
            let mut next = p.clone();
            if next.assign(x, z).is_ok() {
                go(&next, out, iv);
            }
        }
    }
    let mut out = Vec::new();
    go(&Partial::new(interval), &mut out, interval);
    out
}
