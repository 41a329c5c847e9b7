//! Bruhat intervals `[u, v]`, maximal chains, inversion-minimal
//! transpositions and the generalized lifting property.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex};

use serde::Serialize;
use thiserror::Error;

use crate::perm::{PermError, Permutation, Transposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("u not ≤ v: {0} ≰ {1}")]
    NotLeq(Permutation, Permutation),
    #[error("u not < v: need {0} < {1}")]
    NotLess(Permutation, Permutation),
    #[error("u = v = {0}; no inversion-minimal transposition")]
    Equal(Permutation),
    #[error("{0} does not belong to the interval")]
    NotInInterval(Permutation),
    #[error("not a maximal chain: {0}")]
    BadChain(String),
    #[error("simple reflection s_{0} is not in D_R(v) \\ D_R(u)")]
    LiftPrecondition(usize),
    #[error("lifting property violated for ({0}, {1}) with t = {2}")]
    TheoremViolation(Permutation, Permutation, Transposition),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// The closed interval `[u, v]` with its Hasse diagram.
///
/// Elements are sorted by `(length, word)`; `covers` holds index pairs
/// `(a, b)` with `elements[a] ⋖ elements[b]`.
#[derive(Debug, Clone)]
pub struct BruhatInterval {
    u: Permutation,
    v: Permutation,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    covers: Vec<(usize, usize)>,
    up: Vec<Vec<(usize, Transposition)>>,
    down: Vec<Vec<(usize, Transposition)>>,
}

impl BruhatInterval {
    /// Enumerates `[u, v]` by walking upward covers from `u`, pruned by `≤ v`.
    pub fn new(u: Permutation, v: Permutation) -> Result<Self, IntervalError> {
        if u.n() != v.n() {
            return Err(PermError::SizeMismatch(u.n(), v.n()).into());
        }
        if !u.bruhat_le(&v) {
            return Err(IntervalError::NotLeq(u, v));
        }
        let mut seen: HashMap<Permutation, ()> = HashMap::new();
        let mut queue = VecDeque::from([u]);
        seen.insert(u, ());
        let mut elements = Vec::new();
        while let Some(z) = queue.pop_front() {
            elements.push(z);
            for (c, _) in z.upper_covers() {
                if !seen.contains_key(&c) && c.bruhat_le(&v) {
                    seen.insert(c, ());
                    queue.push_back(c);
                }
            }
        }
        elements.sort_by_key(|z| (z.length(), *z));
        let index: HashMap<Permutation, usize> =
            elements.iter().enumerate().map(|(i, z)| (*z, i)).collect();
        let mut up = vec![Vec::new(); elements.len()];
        let mut down = vec![Vec::new(); elements.len()];
        let mut covers = Vec::new();
        for (a, z) in elements.iter().enumerate() {
            for (c, t) in z.upper_covers() {
                if let Some(&b) = index.get(&c) {
                    covers.push((a, b));
                    up[a].push((b, t));
                    down[b].push((a, t));
                }
            }
        }
        Ok(BruhatInterval { u, v, elements, index, covers, up, down })
    }

    pub fn u(&self) -> Permutation {
        self.u
    }

    pub fn v(&self) -> Permutation {
        self.v
    }

    pub fn n(&self) -> usize {
        self.u.n()
    }

    /// `length(v) - length(u)`.
    pub fn rank(&self) -> usize {
        self.v.length() - self.u.length()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, z: &Permutation) -> bool {
        self.index.contains_key(z)
    }

    pub fn index_of(&self, z: &Permutation) -> Option<usize> {
        self.index.get(z).copied()
    }

    /// Cover relations as index pairs into [`Self::elements`].
    pub fn cover_indices(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn covers(&self) -> impl Iterator<Item = (Permutation, Permutation)> + '_ {
        self.covers.iter().map(|&(a, b)| (self.elements[a], self.elements[b]))
    }

    /// Elements of the interval covering `elements[idx]`, with the transposition labels.
    pub fn up_indices(&self, idx: usize) -> &[(usize, Transposition)] {
        &self.up[idx]
    }

    pub fn down_indices(&self, idx: usize) -> &[(usize, Transposition)] {
        &self.down[idx]
    }

    /// `{z ∈ [u,v] : x ⋖ z}` with labels.
    pub fn upper_covers_of(&self, x: &Permutation) -> Vec<(Permutation, Transposition)> {
        self.index
            .get(x)
            .map(|&i| self.up[i].iter().map(|&(b, t)| (self.elements[b], t)).collect())
            .unwrap_or_default()
    }

    pub fn lower_covers_of(&self, x: &Permutation) -> Vec<(Permutation, Transposition)> {
        self.index
            .get(x)
            .map(|&i| self.down[i].iter().map(|&(b, t)| (self.elements[b], t)).collect())
            .unwrap_or_default()
    }

    /// `{(ut, t) : u ⋖ ut ≤ v}`.
    pub fn atoms(&self) -> Vec<(Permutation, Transposition)> {
        self.upper_covers_of(&self.u)
    }

    /// `{(vt, t) : u ≤ vt ⋖ v}`.
    pub fn coatoms(&self) -> Vec<(Permutation, Transposition)> {
        self.lower_covers_of(&self.v)
    }

    /// All maximal chains from `u` to `v`.
    pub fn maximal_chains(&self) -> Vec<MaximalChain> {
        let mut out = Vec::new();
        let start = self.index[&self.u];
        let target = self.index[&self.v];
        let mut stack = vec![start];
        self.extend_chains(target, &mut stack, &mut out);
        out
    }

    fn extend_chains(&self, target: usize, stack: &mut Vec<usize>, out: &mut Vec<MaximalChain>) {
        let last = *stack.last().expect("nonempty");
        if last == target {
            out.push(MaximalChain { elements: stack.iter().map(|&i| self.elements[i]).collect() });
            return;
        }
        for &(b, _) in &self.up[last] {
            stack.push(b);
            self.extend_chains(target, stack, out);
            stack.pop();
        }
    }
}

/// Thread-safe memo of enumerated intervals.
#[derive(Default)]
pub struct IntervalCache {
    table: Mutex<HashMap<(Permutation, Permutation), Arc<BruhatInterval>>>,
}

impl IntervalCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, u: Permutation, v: Permutation) -> Result<Arc<BruhatInterval>, IntervalError> {
        if let Some(hit) = self.table.lock().expect("poisoned").get(&(u, v)) {
            return Ok(hit.clone());
        }
        let interval = Arc::new(BruhatInterval::new(u, v)?);
        self.table.lock().expect("poisoned").insert((u, v), interval.clone());
        Ok(interval)
    }

    pub fn len(&self) -> usize {
        self.table.lock().expect("poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A saturated chain `u = x_0 ⋖ x_1 ⋖ ... ⋖ x_l = v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalChain {
    elements: Vec<Permutation>,
}

impl MaximalChain {
    pub fn new(elements: Vec<Permutation>) -> Result<Self, IntervalError> {
        if elements.is_empty() {
            return Err(IntervalError::BadChain("empty chain".into()));
        }
        for w in elements.windows(2) {
            if w[0].cover_transposition(&w[1]).is_none() {
                return Err(IntervalError::BadChain(format!("{} does not cover {}", w[1], w[0])));
            }
        }
        Ok(MaximalChain { elements })
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// Number of cover steps.
    pub fn len(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn bottom(&self) -> Permutation {
        self.elements[0]
    }

    pub fn top(&self) -> Permutation {
        *self.elements.last().expect("nonempty")
    }

    /// The labels `x_(i)^{-1} x_(i+1)`.
    pub fn transpositions(&self) -> Vec<Transposition> {
        self.elements
            .windows(2)
            .map(|w| w[0].cover_transposition(&w[1]).expect("validated chain"))
            .collect()
    }
}

/// Whether `[i, k]` is an inclusion-minimal window with `v_i > v_k` and `u_i < u_k`.
pub fn is_inversion_minimal(u: &Permutation, v: &Permutation, t: Transposition) -> bool {
    let (i, k) = (t.i(), t.k());
    let flips = |p: usize, q: usize| v.at(p) > v.at(q) && u.at(p) < u.at(q);
    if u.n() != v.n() || k > u.n() || !flips(i, k) {
        return false;
    }
    for p in i..=k {
        for q in p + 1..=k {
            if (p, q) != (i, k) && flips(p, q) {
                return false;
            }
        }
    }
    true
}

/// All transpositions inversion-minimal on `(u, v)`, in lexicographic order.
pub fn inversion_minimal_transpositions(
    u: &Permutation,
    v: &Permutation,
) -> Result<Vec<Transposition>, IntervalError> {
    if u.n() != v.n() {
        return Err(PermError::SizeMismatch(u.n(), v.n()).into());
    }
    if u == v {
        return Err(IntervalError::Equal(*u));
    }
    let n = u.n();
    let mut out = Vec::new();
    for i in 1..=n {
        for k in i + 1..=n {
            let t = Transposition::new(i, k)?;
            if is_inversion_minimal(u, v, t) {
                out.push(t);
            }
        }
    }
    Ok(out)
}

/// Output of the generalized lifting property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lift {
    pub t: Transposition,
    pub ut: Permutation,
    pub vt: Permutation,
}

/// Checks the four relations `u ≤ vt ⋖ v` and `u ⋖ ut ≤ v`.
pub fn lifting_relations_hold(u: &Permutation, v: &Permutation, t: Transposition) -> bool {
    let ut = u.times(t);
    let vt = v.times(t);
    u.bruhat_le(&vt)
        && vt.cover_transposition(v).is_some()
        && u.cover_transposition(&ut).is_some()
        && ut.bruhat_le(v)
}

/// For `u < v`, the lexicographically smallest inversion-minimal `t` together
/// with `ut` and `vt`, after asserting `u ≤ vt ⋖ v` and `u ⋖ ut ≤ v`.
pub fn generalized_lift(u: &Permutation, v: &Permutation) -> Result<Lift, IntervalError> {
    if u.n() != v.n() {
        return Err(PermError::SizeMismatch(u.n(), v.n()).into());
    }
    if u == v || !u.bruhat_le(v) {
        return Err(IntervalError::NotLess(*u, *v));
    }
    let t = *inversion_minimal_transpositions(u, v)?
        .first()
        .ok_or(IntervalError::NotLess(*u, *v))?;
    if !lifting_relations_hold(u, v, t) {
        return Err(IntervalError::TheoremViolation(*u, *v, t));
    }
    Ok(Lift { t, ut: u.times(t), vt: v.times(t) })
}

/// Classical lifting: for `s_i ∈ D_R(v) \ D_R(u)` returns `(vs, us)`.
pub fn classical_lift(
    u: &Permutation,
    v: &Permutation,
    i: usize,
) -> Result<(Permutation, Permutation), IntervalError> {
    if u.n() != v.n() {
        return Err(PermError::SizeMismatch(u.n(), v.n()).into());
    }
    if u == v || !u.bruhat_le(v) {
        return Err(IntervalError::NotLess(*u, *v));
    }
    if i == 0 || i >= u.n() || !v.has_right_descent(i) || u.has_right_descent(i) {
        return Err(IntervalError::LiftPrecondition(i));
    }
    let s = Transposition::simple(i)?;
    let (vs, us) = (v.times(s), u.times(s));
    if !(u.bruhat_le(&vs) && us.bruhat_le(v)) {
        return Err(IntervalError::TheoremViolation(*u, *v, s));
    }
    Ok((vs, us))
}

/// A maximal chain of `[u, v]` built by repeatedly lifting from the top:
/// each step `x ⋖ x·t` uses a `t` with `u ≤ v·t ⋖ v` in the original interval.
pub fn chain_via_coatoms(interval: &BruhatInterval) -> Result<MaximalChain, IntervalError> {
    // lifting (x, v) gives x ⋖ x·t ≤ v and x ≤ v·t ⋖ v, so t labels a coatom
    let v = interval.v();
    let mut chain = vec![interval.u()];
    let mut x = interval.u();
    while x != v {
        let lift = generalized_lift(&x, &v)?;
        x = lift.ut;
        chain.push(x);
    }
    MaximalChain::new(chain)
}

/// A maximal chain of `[u, v]` whose labels all come from the atoms of `u`.
pub fn chain_via_atoms(interval: &BruhatInterval) -> Result<MaximalChain, IntervalError> {
    // lifting (u, y) gives u ⋖ u·t ≤ y, so descending from v uses atom labels
    let u = interval.u();
    let mut chain = vec![interval.v()];
    let mut y = interval.v();
    while y != u {
        let lift = generalized_lift(&u, &y)?;
        y = lift.vt;
        chain.push(y);
    }
    chain.reverse();
    MaximalChain::new(chain)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("pattern has repeated value {0}")]
    Repeated(i64),
    #[error("patterns have different lengths {0} and {1}")]
    LengthMismatch(usize, usize),
}

/// A sequence of distinct integers up to order-isomorphism, stored as its
/// canonical rank representative `1..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern(Vec<usize>);

impl Pattern {
    pub fn new(values: &[i64]) -> Result<Self, PatternError> {
        let mut sorted = values.to_vec();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(PatternError::Repeated(w[0]));
        }
        let ranks = values
            .iter()
            .map(|x| sorted.binary_search(x).expect("present") + 1)
            .collect();
        Ok(Pattern(ranks))
    }

    /// `x̄_i = #{j : x_j ≤ x_i}`.
    pub fn canonical(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether the last entry ranks exactly one above the first.
    pub fn ends_adjacent_ascending(&self) -> bool {
        self.0.len() >= 2 && self.0[self.0.len() - 1] == self.0[0] + 1
    }
}

/// Inversion-Inversion pair: every inversion of `x` is an inversion of `y`.
pub fn inversion_inversion_check(x: &[i64], y: &[i64]) -> Result<bool, PatternError> {
    let (px, py) = (Pattern::new(x)?, Pattern::new(y)?);
    if px.len() != py.len() {
        return Err(PatternError::LengthMismatch(px.len(), py.len()));
    }
    Ok(is_inversion_inversion_pair(&px, &py))
}

pub fn is_inversion_inversion_pair(x: &Pattern, y: &Pattern) -> bool {
    let (a, b) = (x.canonical(), y.canonical());
    a.len() == b.len()
        && (0..a.len()).all(|i| (i + 1..a.len()).all(|j| a[i] < a[j] || b[i] > b[j]))
}

/// The two window patterns attached to `t = (i k)`: `v·t` and `u` restricted to positions `i..=k`.
pub fn window_patterns(u: &Permutation, v: &Permutation, t: Transposition) -> (Pattern, Pattern) {
    let vt = v.times(t);
    let window = |w: &Permutation| -> Vec<i64> { (t.i()..=t.k()).map(|p| w.at(p) as i64).collect() };
    (
        Pattern::new(&window(&vt)).expect("distinct values"),
        Pattern::new(&window(u)).expect("distinct values"),
    )
}

/// Pattern characterization of inversion-minimality: the windows of `v·t`
/// and `u` form an Inversion-Inversion pair whose end entries are adjacent
/// ascending ranks.
pub fn pattern_criterion(u: &Permutation, v: &Permutation, t: Transposition) -> bool {
    let (x, y) = window_patterns(u, v, t);
    is_inversion_inversion_pair(&x, &y) && x.ends_adjacent_ascending() && y.ends_adjacent_ascending()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn t(i: usize, k: usize) -> Transposition {
        Transposition::new(i, k).unwrap()
    }

    #[test]
    fn singleton_and_paper_intervals() {
        let w = p("2413");
        let single = BruhatInterval::new(w, w).unwrap();
        assert_eq!(single.elements(), &[w]);
        assert!(single.atoms().is_empty() && single.coatoms().is_empty());

        let iv = BruhatInterval::new(p("1324"), p("2431")).unwrap();
        let mut got: Vec<String> = iv.elements().iter().map(|z| z.to_string()).collect();
        got.sort();
        assert_eq!(got, ["1324", "1342", "1423", "1432", "2314", "2341", "2413", "2431"]);

        assert_eq!(BruhatInterval::new(p("1234"), p("3412")).unwrap().len(), 14);
        assert!(matches!(
            BruhatInterval::new(p("2431"), p("1324")),
            Err(IntervalError::NotLeq(_, _))
        ));
    }

    #[test]
    fn covers_are_restricted_bruhat_covers() {
        let iv = BruhatInterval::new(p("1234"), p("3412")).unwrap();
        for a in iv.elements() {
            for b in iv.elements() {
                let listed = iv.covers().any(|(x, y)| x == *a && y == *b);
                assert_eq!(listed, crate::perm::is_cover(a, b));
            }
        }
    }

    #[test]
    fn atoms_and_coatoms_examples() {
        let iv = BruhatInterval::new(p("2143"), p("3241")).unwrap();
        let atoms: Vec<_> = iv.atoms().into_iter().map(|(_, t)| t).collect();
        let coatoms: Vec<_> = iv.coatoms().into_iter().map(|(_, t)| t).collect();
        assert!(atoms.contains(&t(2, 4)) && atoms.contains(&t(1, 4)));
        assert!(coatoms.contains(&t(2, 4)) && coatoms.contains(&t(1, 2)));

        let iv = BruhatInterval::new(p("1243"), p("4132")).unwrap();
        assert!(iv.coatoms().iter().any(|&(z, s)| s == t(1, 3) && z == p("3142")));
        assert!(iv.atoms().iter().any(|&(z, s)| s == t(1, 2) && z == p("2143")));
    }

    #[test]
    fn inversion_minimal_examples() {
        let ts = inversion_minimal_transpositions(&p("2143"), &p("3241")).unwrap();
        assert!(ts.contains(&t(2, 4)));

        let (u, v) = (p("1243"), p("4312"));
        let ts = inversion_minimal_transpositions(&u, &v).unwrap();
        assert!(!ts.contains(&t(2, 4)));
        // the Bruhat relations still hold for (2 4)
        assert!(lifting_relations_hold(&u, &v, t(2, 4)));

        let u = p("13245");
        let v = u.times(t(3, 4));
        assert!(inversion_minimal_transpositions(&u, &v).unwrap().contains(&t(3, 4)));
        assert!(matches!(inversion_minimal_transpositions(&u, &u), Err(IntervalError::Equal(_))));
    }

    #[test]
    fn generalized_lift_examples() {
        let (u, v) = (p("2143"), p("3241"));
        let lift = generalized_lift(&u, &v).unwrap();
        // (1,4) is not inversion-minimal here: v_1 = 3 > 1 = v_4 but the window contains (2,4)
        assert_eq!(lift.t, t(2, 4));
        assert_eq!(lift.vt, p("3142"));
        assert_eq!(lift.ut, p("2341"));

        let e = Permutation::identity(4);
        let s2 = e.times(t(2, 3));
        let lift = generalized_lift(&e, &s2).unwrap();
        assert_eq!((lift.t, lift.ut, lift.vt), (t(2, 3), s2, e));

        assert!(generalized_lift(&v, &u).is_err());
        assert!(generalized_lift(&u, &u).is_err());
    }

    #[test]
    fn classical_lift_examples() {
        let e = Permutation::identity(3);
        let s1 = e.times(t(1, 2));
        assert_eq!(classical_lift(&e, &s1, 1).unwrap(), (e, s1));

        let (u, v) = (p("1324"), p("2431"));
        assert_eq!(classical_lift(&u, &v, 3).unwrap(), (p("2413"), p("1342")));
        assert!(matches!(classical_lift(&u, &v, 2), Err(IntervalError::LiftPrecondition(2))));
    }

    #[test]
    fn some_pair_has_no_classical_lift() {
        let all = all_permutations(4);
        let found = all.iter().any(|u| {
            all.iter().any(|v| {
                u != v
                    && u.bruhat_le(v)
                    && (1..4).all(|i| !(v.has_right_descent(i) && !u.has_right_descent(i)))
            })
        });
        assert!(found);
    }

    #[test]
    fn chains_examples() {
        let w = p("3142");
        let single = BruhatInterval::new(w, w).unwrap();
        assert_eq!(chain_via_atoms(&single).unwrap().elements(), &[w]);
        assert_eq!(chain_via_coatoms(&single).unwrap().len(), 0);

        let iv = BruhatInterval::new(p("1234"), p("1432")).unwrap();
        assert_eq!(chain_via_atoms(&iv).unwrap().len(), 3);
        assert_eq!(chain_via_coatoms(&iv).unwrap().len(), 3);
        assert_eq!(iv.maximal_chains().len(), 4);
    }

    #[test]
    fn chain_labels_come_from_atoms_and_coatoms() {
        let iv = BruhatInterval::new(p("1234"), p("3412")).unwrap();
        let atom_t: Vec<_> = iv.atoms().into_iter().map(|(_, t)| t).collect();
        let coatom_t: Vec<_> = iv.coatoms().into_iter().map(|(_, t)| t).collect();
        assert!(chain_via_atoms(&iv).unwrap().transpositions().iter().all(|t| atom_t.contains(t)));
        assert!(chain_via_coatoms(&iv).unwrap().transpositions().iter().all(|t| coatom_t.contains(t)));
    }

    #[test]
    fn pattern_examples() {
        assert_eq!(Pattern::new(&[5, 2, 3]).unwrap().canonical(), &[3, 1, 2]);
        assert!(inversion_inversion_check(&[4, 1, 3], &[4, 1, 3]).unwrap());
        assert!(inversion_inversion_check(&[1, 2, 3], &[3, 2, 1]).unwrap());
        assert!(!inversion_inversion_check(&[3, 2, 1], &[1, 2, 3]).unwrap());
        assert_eq!(inversion_inversion_check(&[1, 1], &[1, 2]), Err(PatternError::Repeated(1)));
        assert!(inversion_inversion_check(&[1, 2], &[1, 2, 3]).is_err());
    }

    #[test]
    fn chain_rejects_non_covers() {
        assert!(MaximalChain::new(vec![p("1234"), p("1432")]).is_err());
        assert!(MaximalChain::new(vec![]).is_err());
    }

    #[test]
    fn cache_returns_shared_interval() {
        let cache = IntervalCache::new();
        let a = cache.get(p("1234"), p("3412")).unwrap();
        let b = cache.get(p("1234"), p("3412")).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(cache.len(), 1);
    }
}
