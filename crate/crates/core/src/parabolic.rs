//! Type-A parabolic Bruhat interval polytopes
//! `Q^J_{u,v} = conv{p(z) : u ≤ z ≤ v}` with `p(z) = Σ_{j ∈ J} χ{z(1), ..., z(j)}`.
//!
//! `J` names fundamental-weight indices; `W_J` is generated by the `s_i` with
//! `i ∉ J`, so a coset `zW_J` permutes positions inside the blocks obtained by
//! cutting `1..n` after each `j ∈ J`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::interval::{BruhatInterval, IntervalError};
use crate::oracle::{self, OracleError};
use crate::perm::{all_permutations, Permutation};

pub const PARABOLIC_MAX_N: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParabolicError {
    #[error("J must be a subset of 1..{max}, got {index}")]
    BadIndex { index: usize, max: usize },
    #[error("cannot parse J from {0:?} (expected e.g. \"1,3\")")]
    Parse(String),
    #[error("{v} is not minimal in its coset for J = {j}; try {rep}")]
    NotMinimal { v: Permutation, j: ParabolicSubset, rep: Permutation },
    #[error("size mismatch: J is over S_{0}, permutation in S_{1}")]
    SizeMismatch(usize, usize),
    #[error("size guard: n = {0} exceeds {PARABOLIC_MAX_N}")]
    SizeGuard(usize),
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// `J ⊆ {1..n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParabolicSubset {
    n: usize,
    j: BTreeSet<usize>,
}

impl ParabolicSubset {
    pub fn new(n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self, ParabolicError> {
        let j: BTreeSet<usize> = indices.into_iter().collect();
        if let Some(&index) = j.iter().find(|&&i| i == 0 || i >= n) {
            return Err(ParabolicError::BadIndex { index, max: n.saturating_sub(1) });
        }
        Ok(ParabolicSubset { n, j })
    }

    /// `J = {1..n-1}`.
    pub fn full_flag(n: usize) -> Self {
        ParabolicSubset { n, j: (1..n).collect() }
    }

    /// Parses `"1,3"` for permutations of size `n`.
    pub fn parse(n: usize, s: &str) -> Result<Self, ParabolicError> {
        let idx: Result<Vec<usize>, _> =
            s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(usize::from_str).collect();
        Self::new(n, idx.map_err(|_| ParabolicError::Parse(s.to_string()))?)
    }

    /// Every `J ⊆ {1..n-1}`, ordered by bitmask.
    pub fn all(n: usize) -> Vec<Self> {
        (0u32..1 << (n - 1))
            .map(|m| ParabolicSubset { n, j: (1..n).filter(|i| m >> (i - 1) & 1 == 1).collect() })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.j.iter().copied()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.j.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.j.len()
    }

    pub fn is_empty(&self) -> bool {
        self.j.is_empty()
    }

    /// Position blocks permuted by `W_J`.
    pub fn position_blocks(&self) -> Vec<std::ops::RangeInclusive<usize>> {
        let mut cuts: Vec<usize> = self.j.iter().copied().collect();
        cuts.push(self.n);
        let mut start = 1;
        cuts.into_iter()
            .map(|c| {
                let r = start..=c;
                start = c + 1;
                r
            })
            .collect()
    }

    fn check(&self, z: &Permutation) -> Result<(), ParabolicError> {
        if z.n() != self.n {
            return Err(ParabolicError::SizeMismatch(self.n, z.n()));
        }
        Ok(())
    }
}

impl fmt::Display for ParabolicSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.j.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for ParabolicSubset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.j.serialize(s)
    }
}

/// The shortest element of `zW_J`: values sorted within each position block.
pub fn min_coset_rep(z: &Permutation, j: &ParabolicSubset) -> Result<Permutation, ParabolicError> {
    j.check(z)?;
    let mut word = z.word().to_vec();
    for block in j.position_blocks() {
        word[block.start() - 1..*block.end()].sort_unstable();
    }
    Ok(Permutation::new(&word).expect("still a permutation"))
}

/// `z ∈ W^J`: no right descent at any `i ∉ J`.
pub fn is_min_rep(z: &Permutation, j: &ParabolicSubset) -> bool {
    z.n() == j.n() && (1..z.n()).all(|i| j.contains(i) || !z.has_right_descent(i))
}

/// `p(z) = Σ_{j ∈ J} χ{z(1), ..., z(j)}`, indexed by value.
pub fn weight_point(z: &Permutation, j: &ParabolicSubset) -> Result<Vec<i64>, ParabolicError> {
    j.check(z)?;
    let mut p = vec![0; z.n()];
    for k in j.indices() {
        for i in 1..=k {
            p[z.at(i) - 1] += 1;
        }
    }
    Ok(p)
}

fn require_min_rep(v: &Permutation, j: &ParabolicSubset) -> Result<(), ParabolicError> {
    j.check(v)?;
    if !is_min_rep(v, j) {
        return Err(ParabolicError::NotMinimal { v: *v, j: j.clone(), rep: min_coset_rep(v, j)? });
    }
    Ok(())
}

/// Distinct weight points of `[u, v]`, sorted.
pub fn parabolic_bip_vertices(
    u: &Permutation,
    v: &Permutation,
    j: &ParabolicSubset,
) -> Result<Vec<Vec<i64>>, ParabolicError> {
    require_min_rep(v, j)?;
    let iv = BruhatInterval::new(*u, *v)?;
    points_of(&iv, j)
}

fn points_of(iv: &BruhatInterval, j: &ParabolicSubset) -> Result<Vec<Vec<i64>>, ParabolicError> {
    let mut pts: Vec<Vec<i64>> = iv.elements().iter().map(|z| weight_point(z, j)).collect::<Result<_, _>>()?;
    pts.sort();
    pts.dedup();
    Ok(pts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParabolicFacesReport {
    pub u: Permutation,
    pub v: Permutation,
    pub j: ParabolicSubset,
    pub points: usize,
    /// Cosets `zW_J` met by `[u, v]`.
    pub cosets: usize,
    pub all_points_extreme: bool,
    /// Faces found, by dimension.
    pub f_vector: Vec<usize>,
    /// Every face is `Q^J_{a,b}` for some `a ≤ b` in `S_n` with `b ∈ W^J`.
    pub faces_are_bips: bool,
    /// Every face is `p([x, y])` for some `x ≤ y` inside `[u, v]` (a
    /// stronger statement, reported rather than required).
    pub faces_from_subintervals: bool,
    /// Each edge joins the points of some cover `x ⋖ y` in `[u, v]`.
    pub edges_from_covers: bool,
    /// Faces that are not parabolic Bruhat interval polytopes, as point lists.
    pub violations: Vec<Vec<Vec<i64>>>,
}

impl ParabolicFacesReport {
    pub fn ok(&self) -> bool {
        self.all_points_extreme
            && self.points == self.cosets
            && self.faces_are_bips
            && self.edges_from_covers
            && self.violations.is_empty()
    }
}

type PointSets = Arc<HashSet<Vec<Vec<i64>>>>;

/// `{p([a, b]) : a ≤ b in S_n, b ∈ W^J}`, memoized per `J`.
fn all_bip_point_sets(j: &ParabolicSubset) -> Result<PointSets, ParabolicError> {
    static CACHE: OnceLock<Mutex<HashMap<ParabolicSubset, PointSets>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache poisoned").get(j) {
        return Ok(hit.clone());
    }
    let all = all_permutations(j.n());
    let mut sets = HashSet::new();
    for b in all.iter().filter(|b| is_min_rep(b, j)) {
        for a in all.iter().filter(|a| a.bruhat_le(b)) {
            sets.insert(points_of(&BruhatInterval::new(*a, *b)?, j)?);
        }
    }
    let sets = Arc::new(sets);
    cache.lock().expect("cache poisoned").insert(j.clone(), sets.clone());
    Ok(sets)
}

fn functionals(n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                [-1, 0, 1].into_iter().map(move |c| {
                    let mut w = w.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// Finds faces of `Q^J_{u,v}` with the LP oracle among argmax sets of
/// functionals in `{-1,0,1}^n` and all subinterval point sets, then checks
/// that each is itself a parabolic Bruhat interval polytope.
pub fn parabolic_faces_check(
    u: &Permutation,
    v: &Permutation,
    j: &ParabolicSubset,
) -> Result<ParabolicFacesReport, ParabolicError> {
    require_min_rep(v, j)?;
    if u.n() > PARABOLIC_MAX_N {
        return Err(ParabolicError::SizeGuard(u.n()));
    }
    let iv = BruhatInterval::new(*u, *v)?;
    let points = points_of(&iv, j)?;
    let els = iv.elements();
    let wp: Vec<Vec<i64>> = els.iter().map(|z| weight_point(z, j)).collect::<Result<_, _>>()?;
    let cosets: HashSet<Permutation> =
        els.iter().map(|z| min_coset_rep(z, j)).collect::<Result<_, _>>()?;

    let bips = all_bip_point_sets(j)?;
    let mut subintervals: HashSet<Vec<Vec<i64>>> = HashSet::new();
    let mut candidates: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    for x in els {
        for y in els {
            if !x.bruhat_le(y) {
                continue;
            }
            let mut s: Vec<Vec<i64>> =
                (0..els.len()).filter(|&c| x.bruhat_le(&els[c]) && els[c].bruhat_le(y)).map(|c| wp[c].clone()).collect();
            s.sort();
            s.dedup();
            subintervals.insert(s.clone());
            candidates.insert(s);
        }
    }
    for w in functionals(u.n()) {
        candidates.insert(oracle::argmax(&points, &w));
    }

    let mut faces: BTreeMap<usize, usize> = BTreeMap::new();
    let mut violations = Vec::new();
    let mut edges_from_covers = true;
    let mut faces_from_subintervals = true;
    for s in &candidates {
        if !oracle::is_face(s, &points)? {
            continue;
        }
        let dim = oracle::affine_rank(s)?;
        *faces.entry(dim).or_default() += 1;
        if !bips.contains(s) {
            violations.push(s.clone());
        }
        faces_from_subintervals &= subintervals.contains(s);
        if dim == 1 {
            let joined = iv.cover_indices().iter().any(|&(a, b)| {
                let pair = [wp[a].clone(), wp[b].clone()];
                s.len() == 2 && s.contains(&pair[0]) && s.contains(&pair[1]) && pair[0] != pair[1]
            });
            edges_from_covers &= joined;
        }
    }
    let top = faces.keys().max().copied().unwrap_or(0);
    let f_vector = (0..=top).map(|d| faces.get(&d).copied().unwrap_or(0)).collect();
    Ok(ParabolicFacesReport {
        u: *u,
        v: *v,
        j: j.clone(),
        points: points.len(),
        cosets: cosets.len(),
        all_points_extreme: oracle::extreme_points(&points)?.len() == points.len(),
        f_vector,
        faces_are_bips: violations.is_empty(),
        faces_from_subintervals,
        edges_from_covers,
        violations,
    })
}
