//! Batch property suites over `S_n`: every comparable pair for `n ≤ 5`, or a
//! seeded sample of pairs. Instances are evaluated in parallel and merged in
//! instance order, so a report depends only on its configuration.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::interval::{
    chain_via_atoms, chain_via_coatoms, classical_lift, inversion_minimal_transpositions, is_inversion_minimal,
    is_inversion_inversion_pair, lifting_relations_hold, pattern_criterion, BruhatInterval, MaximalChain, Pattern,
};
use crate::oracle;
use crate::parabolic::{
    is_min_rep, min_coset_rep, parabolic_bip_vertices, parabolic_faces_check, weight_point, ParabolicSubset,
    PARABOLIC_MAX_N,
};
use crate::perm::{all_permutations, is_cover, Permutation, Side, Transposition};
use crate::polytope::{
    affine_span_equations, atom_graph, bip_inequalities, chain_graph, chain_graph_is_forest, coatom_graph,
    crown_type, dimension, enumerate_faces, f_vector, face_min_max, is_face, is_toric, minkowski_check,
    normal_cone, polytope_edges, vertices, MatroidConvention, MINKOWSKI_MAX_N,
};
use crate::rpoly::{
    extend_to_special_matching, generalized_r_identity, generalized_r_tilde_identity, r_from_tilde, r_polynomial,
    r_polynomial_via_descent, r_tilde, special_matching_r_identity, special_matchings, Extension,
};

pub const EXHAUSTIVE_MAX_N: usize = 5;
pub const SAMPLED_MAX_N: usize = 7;
/// Intervals up to this size get the LP-heavy checks on every subinterval;
/// larger ones get a seeded subsample (faces) or are skipped (parabolic).
pub const LP_FULL_LIMIT: usize = 24;
const LP_SAMPLE_PAIRS: usize = 30;
const RANDOM_FUNCTIONALS: usize = 12;
const RANDOM_CHAINS: usize = 16;
const MATCHING_MAX_LENGTH: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Lifting,
    Dimension,
    Faces,
    Rpoly,
    Parabolic,
    Minkowski,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Lifting, Suite::Dimension, Suite::Faces, Suite::Rpoly, Suite::Parabolic, Suite::Minkowski];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lifting => "lifting",
            Suite::Dimension => "dimension",
            Suite::Faces => "faces",
            Suite::Rpoly => "rpoly",
            Suite::Parabolic => "parabolic",
            Suite::Minkowski => "minkowski",
        }
    }

    fn properties(self) -> &'static [(&'static str, Kind)] {
        use Kind::*;
        match self {
            Suite::Lifting => &[
                ("subword-oracle", Assert),
                ("lemma-ini", Assert),
                ("minimal-transposition-exists", Assert),
                ("generalized-lifting", Assert),
                ("minimal-iff-pattern", Assert),
                ("dot-bijection", Assert),
                ("chain-via-atoms", Assert),
                ("chain-via-coatoms", Assert),
                ("classical-lifting", Assert),
                ("classical-descent-available", Report),
            ],
            Suite::Dimension => &[
                ("chain-independence", Assert),
                ("atom-coatom-partition", Assert),
                ("increasing-cycle-free", Assert),
                ("dimension-equals-affine-rank", Assert),
                ("affine-span", Assert),
                ("inequality-exact", Assert),
                ("toric-iff-forest", Assert),
                ("rank3-toric-iff-crown-3-or-4", Assert),
            ],
            Suite::Faces => &[
                ("face-criterion-vs-lp", Assert),
                ("witness-argmax", Assert),
                ("faces-are-intervals", Assert),
                ("edge-lemma", Assert),
                ("diameter-equals-rank", Assert),
            ],
            Suite::Rpoly => &[
                ("degree-leading-constant", Assert),
                ("descent-independence", Assert),
                ("tilde-consistency", Assert),
                ("generalized-recurrence", Assert),
                ("generalized-tilde-recurrence", Assert),
                ("special-matching-identity", Assert),
                ("matching-extension-found", Report),
            ],
            Suite::Parabolic => &[
                ("weight-point-cosets", Assert),
                ("full-flag-affine-map", Assert),
                ("remark-pair", Assert),
                ("faces-theorem", Assert),
                ("points-biject-cosets", Assert),
                ("faces-from-subintervals", Report),
                ("full-flag-f-vector-of-inverse", Assert),
                ("full-flag-f-vector-direct", Report),
            ],
            Suite::Minkowski => &[("minkowski-first-values", Report), ("minkowski-top-positions", Report)],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Suite {
    type Err = CheckError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| CheckError::UnknownSuite(s.to_string()))
    }
}

/// `"all"` or a single suite name.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>, CheckError> {
    if s == "all" {
        Ok(Suite::ALL.to_vec())
    } else {
        Ok(vec![s.parse()?])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    /// Must hold on every checked case.
    Assert,
    /// Counted, never fails the suite.
    Report,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("unknown suite {0:?} (expected lifting, dimension, faces, rpoly, parabolic, minkowski or all)")]
    UnknownSuite(String),
    #[error("n = {n} out of range 1..={max} for {mode} runs")]
    BadSize { n: usize, max: usize, mode: &'static str },
    #[error("sample size must be positive")]
    EmptySample,
    #[error("worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckConfig {
    pub n: usize,
    /// `None` runs every comparable pair.
    pub sample: Option<usize>,
    pub seed: u64,
    pub jobs: usize,
}

impl CheckConfig {
    pub fn exhaustive(n: usize) -> Self {
        CheckConfig { n, sample: None, seed: 0, jobs: 1 }
    }

    pub fn sampled(n: usize, pairs: usize, seed: u64) -> Self {
        CheckConfig { n, sample: Some(pairs), seed, jobs: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub name: &'static str,
    pub kind: Kind,
    pub checked: u64,
    pub held: u64,
    /// The first failing case in instance order.
    pub first_failure: Option<String>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.kind == Kind::Report || self.held == self.checked
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub properties: Vec<PropertyReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyReport::passed)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyReport> {
        self.properties.iter().find(|p| p.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub n: usize,
    pub sample: Option<usize>,
    pub seed: u64,
    /// Comparable pairs `u ≤ v` evaluated.
    pub instances: usize,
    pub suites: Vec<SuiteReport>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn suite(&self, suite: Suite) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.suite == suite)
    }
}

#[derive(Debug, Clone, Default)]
struct Count {
    checked: u64,
    held: u64,
    first_failure: Option<String>,
}

#[derive(Debug, Clone)]
struct Tally {
    suite: Suite,
    counts: Vec<Count>,
}

impl Tally {
    fn new(suite: Suite) -> Self {
        Tally { suite, counts: vec![Count::default(); suite.properties().len()] }
    }

    fn record(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        let idx = self
            .suite
            .properties()
            .iter()
            .position(|(p, _)| *p == name)
            .unwrap_or_else(|| panic!("unknown property {name}"));
        let c = &mut self.counts[idx];
        c.checked += 1;
        if ok {
            c.held += 1;
        } else if c.first_failure.is_none() {
            c.first_failure = Some(detail());
        }
    }

    fn merge(&mut self, other: Tally) {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            a.checked += b.checked;
            a.held += b.held;
            if a.first_failure.is_none() {
                a.first_failure = b.first_failure;
            }
        }
    }

    fn into_report(self) -> SuiteReport {
        let properties = self
            .suite
            .properties()
            .iter()
            .zip(self.counts)
            .map(|(&(name, kind), c)| PropertyReport {
                name,
                kind,
                checked: c.checked,
                held: c.held,
                first_failure: c.first_failure,
            })
            .collect();
        SuiteReport { suite: self.suite, properties }
    }
}

/// `count` comparable pairs drawn from `S_n` by a ChaCha8 stream seeded with `seed`.
pub fn sample_pairs(n: usize, count: usize, seed: u64) -> Vec<(Permutation, Permutation)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut word: Vec<u8> = (1..=n as u8).collect();
    let mut draw = |rng: &mut ChaCha8Rng| {
        word.shuffle(rng);
        Permutation::new(&word).expect("shuffled identity")
    };
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (a, b) = (draw(&mut rng), draw(&mut rng));
        if a.bruhat_le(&b) {
            out.push((a, b));
        } else if b.bruhat_le(&a) {
            out.push((b, a));
        }
    }
    out
}

/// Every `u ≤ v` in `S_n`, `u` in lexicographic order.
pub fn comparable_pairs(n: usize) -> Vec<(Permutation, Permutation)> {
    let all = all_permutations(n);
    all.iter().flat_map(|u| all.iter().filter(|v| u.bruhat_le(v)).map(move |v| (*u, *v))).collect()
}

fn instance_rng(seed: u64, idx: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (idx as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn run_checks(suites: &[Suite], cfg: &CheckConfig) -> Result<CheckReport, CheckError> {
    let (max, mode) = match cfg.sample {
        None => (EXHAUSTIVE_MAX_N, "exhaustive"),
        Some(_) => (SAMPLED_MAX_N, "sampled"),
    };
    if cfg.n == 0 || cfg.n > max {
        return Err(CheckError::BadSize { n: cfg.n, max, mode });
    }
    if cfg.sample == Some(0) {
        return Err(CheckError::EmptySample);
    }
    let instances = match cfg.sample {
        None => comparable_pairs(cfg.n),
        Some(m) => sample_pairs(cfg.n, m, cfg.seed),
    };
    let mut suites: Vec<Suite> = suites.to_vec();
    suites.sort();
    suites.dedup();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| CheckError::Pool(e.to_string()))?;
    let per_instance: Vec<Vec<Tally>> = pool.install(|| {
        instances
            .par_iter()
            .enumerate()
            .map(|(idx, &(u, v))| evaluate(&suites, cfg, idx, u, v))
            .collect()
    });

    let mut totals: Vec<Tally> = suites.iter().map(|&s| global(s, cfg, &instances)).collect();
    for tallies in per_instance {
        for (t, x) in totals.iter_mut().zip(tallies) {
            t.merge(x);
        }
    }
    Ok(CheckReport {
        n: cfg.n,
        sample: cfg.sample,
        seed: cfg.seed,
        instances: instances.len(),
        suites: totals.into_iter().map(Tally::into_report).collect(),
    })
}

fn evaluate(suites: &[Suite], cfg: &CheckConfig, idx: usize, u: Permutation, v: Permutation) -> Vec<Tally> {
    let iv = BruhatInterval::new(u, v).expect("sampled pairs are comparable");
    let mut rng = instance_rng(cfg.seed, idx);
    suites
        .iter()
        .map(|&s| {
            let mut t = Tally::new(s);
            match s {
                Suite::Lifting => lifting(&iv, &mut t),
                Suite::Dimension => dimension_suite(&iv, &mut rng, &mut t),
                Suite::Faces => faces(&iv, &mut rng, &mut t),
                Suite::Rpoly => rpoly(&iv, &mut t),
                Suite::Parabolic => parabolic(&iv, &mut t),
                Suite::Minkowski => minkowski(&iv, &mut t),
            }
            t
        })
        .collect()
}

/// Properties quantified over all of `S_n` (or over patterns) rather than over one interval.
fn global(suite: Suite, cfg: &CheckConfig, instances: &[(Permutation, Permutation)]) -> Tally {
    let mut t = Tally::new(suite);
    let n = cfg.n;
    match suite {
        Suite::Lifting => {
            let tops: BTreeSet<Permutation> = match cfg.sample {
                None => all_permutations(n).into_iter().collect(),
                Some(_) => instances.iter().map(|&(_, v)| v).collect(),
            };
            let all = all_permutations(n);
            for v in &tops {
                let lower = oracle::subword_lower_set(v);
                for z in &all {
                    t.record("subword-oracle", z.bruhat_le(v) == lower.contains(z), || format!("z={z} v={v}"));
                }
            }
            lemma_ini(&mut t);
        }
        Suite::Parabolic if n <= PARABOLIC_MAX_N => {
            let all = all_permutations(n);
            for j in ParabolicSubset::all(n) {
                let keyed: Vec<(Vec<i64>, Permutation)> = all
                    .iter()
                    .map(|z| (weight_point(z, &j).expect("size"), min_coset_rep(z, &j).expect("size")))
                    .collect();
                for (a, x) in keyed.iter().enumerate() {
                    for (b, y) in keyed.iter().enumerate() {
                        t.record("weight-point-cosets", (x.0 == y.0) == (x.1 == y.1), || {
                            format!("J={j} z={} z'={}", all[a], all[b])
                        });
                    }
                }
            }
            let full = ParabolicSubset::full_flag(n);
            for z in &all {
                let inv = z.inverse();
                let expected: Vec<i64> = (1..=n).map(|a| (n - inv.at(a)) as i64).collect();
                t.record("full-flag-affine-map", weight_point(z, &full).expect("size") == expected, || {
                    format!("z={z}")
                });
            }
            if n == 4 {
                let j = ParabolicSubset::parse(4, "1,3").expect("valid");
                let v: Permutation = "4231".parse().expect("valid");
                let a = parabolic_bip_vertices(&Permutation::identity(4), &v, &j);
                let b = parabolic_bip_vertices(&"1324".parse().expect("valid"), &v, &j);
                t.record("remark-pair", matches!((&a, &b), (Ok(x), Ok(y)) if x == y), || {
                    format!("{a:?} vs {b:?}")
                });
            }
        }
        _ => {}
    }
    t
}

/// Every Inversion-Inversion pair of patterns of length ≤ 5 whose ends are
/// adjacent ascending ranks starts with the same rank.
fn lemma_ini(t: &mut Tally) {
    for m in 2..=5 {
        let patterns: Vec<Pattern> = all_permutations(m)
            .iter()
            .map(|p| Pattern::new(&p.to_vector()).expect("distinct"))
            .collect();
        for x in &patterns {
            for y in &patterns {
                if is_inversion_inversion_pair(x, y) && x.ends_adjacent_ascending() && y.ends_adjacent_ascending() {
                    t.record("lemma-ini", x.canonical()[0] == y.canonical()[0], || {
                        format!("x={:?} y={:?}", x.canonical(), y.canonical())
                    });
                }
            }
        }
    }
}

fn lifting(iv: &BruhatInterval, t: &mut Tally) {
    let (u, v) = (iv.u(), iv.v());
    let n = u.n();
    let ctx = || format!("u={u} v={v}");
    for i in 1..n {
        for k in i + 1..=n {
            let tr = Transposition::new(i, k).expect("i < k");
            t.record("minimal-iff-pattern", is_inversion_minimal(&u, &v, tr) == pattern_criterion(&u, &v, tr), || {
                format!("{} t={tr}", ctx())
            });
        }
    }
    if u == v {
        return;
    }
    let minimal = inversion_minimal_transpositions(&u, &v).unwrap_or_default();
    t.record("minimal-transposition-exists", !minimal.is_empty(), ctx);
    for &tr in &minimal {
        t.record("generalized-lifting", lifting_relations_hold(&u, &v, tr), || format!("{} t={tr}", ctx()));
        let (i, k) = (tr.i(), tr.k());
        let agree = (i + 1..k).all(|j| {
            let c = [u.at(j) > u.at(i), u.at(j) > u.at(k), v.at(j) > v.at(k), v.at(j) > v.at(i)];
            c.iter().all(|&b| b == c[0])
        });
        t.record("dot-bijection", agree, || format!("{} t={tr}", ctx()));
    }

    let atom_ts: Vec<Transposition> = iv.atoms().into_iter().map(|(_, t)| t).collect();
    let coatom_ts: Vec<Transposition> = iv.coatoms().into_iter().map(|(_, t)| t).collect();
    let uses_only = |chain: Result<MaximalChain, _>, allowed: &[Transposition]| match chain {
        Ok(c) => {
            c.bottom() == u
                && c.top() == v
                && c.transpositions().len() == iv.rank()
                && c.transpositions().iter().all(|x| allowed.contains(x))
        }
        Err(_) => false,
    };
    t.record("chain-via-atoms", uses_only(chain_via_atoms(iv), &atom_ts), ctx);
    t.record("chain-via-coatoms", uses_only(chain_via_coatoms(iv), &coatom_ts), ctx);

    let descents: Vec<usize> =
        v.descents(Side::Right).into_iter().filter(|&i| !u.has_right_descent(i)).collect();
    t.record("classical-descent-available", !descents.is_empty(), ctx);
    for i in descents {
        let ok = match classical_lift(&u, &v, i) {
            Ok((vs, us)) => u.bruhat_le(&vs) && is_cover(&vs, &v) && is_cover(&u, &us) && us.bruhat_le(&v),
            Err(_) => false,
        };
        t.record("classical-lifting", ok, || format!("{} s={i}", ctx()));
    }
}

fn random_chain(iv: &BruhatInterval, rng: &mut ChaCha8Rng) -> MaximalChain {
    let mut idx = 0;
    let mut out = vec![iv.elements()[0]];
    while !iv.up_indices(idx).is_empty() {
        let ups = iv.up_indices(idx);
        idx = ups[rng.gen_range(0..ups.len())].0;
        out.push(iv.elements()[idx]);
    }
    MaximalChain::new(out).expect("walk along covers")
}

fn dimension_suite(iv: &BruhatInterval, rng: &mut ChaCha8Rng, t: &mut Tally) {
    let (u, v) = (iv.u(), iv.v());
    let n = u.n();
    let ctx = || format!("u={u} v={v}");
    let blocks = atom_graph(&u, &v).components();

    let chains = if iv.len() <= LP_FULL_LIMIT {
        iv.maximal_chains()
    } else {
        let mut cs: Vec<MaximalChain> = (0..RANDOM_CHAINS).map(|_| random_chain(iv, rng)).collect();
        cs.extend(chain_via_atoms(iv));
        cs.extend(chain_via_coatoms(iv));
        cs
    };
    for c in &chains {
        t.record("chain-independence", chain_graph(c).components() == blocks, || {
            let word: Vec<String> = c.elements().iter().map(|z| z.to_string()).collect();
            format!("{} chain={}", ctx(), word.join(">"))
        });
    }
    let (ag, cg) = (atom_graph(&u, &v), coatom_graph(&u, &v));
    t.record("atom-coatom-partition", ag.components() == cg.components(), ctx);
    t.record("increasing-cycle-free", ag.increasing_cycle_free() && cg.increasing_cycle_free(), ctx);

    let verts = vertices(iv);
    let rank = oracle::affine_rank(&verts);
    t.record("dimension-equals-affine-rank", rank.ok() == dimension(&u, &v).ok(), ctx);
    let span_ok = match affine_span_equations(&u, &v) {
        Ok(eqs) => {
            eqs.len() == blocks.len()
                && verts.iter().all(|x| eqs.iter().all(|e| e.coeffs.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() == e.rhs))
        }
        Err(_) => false,
    };
    t.record("affine-span", span_ok, ctx);

    if let Ok(desc) = bip_inequalities(iv) {
        for w in all_permutations(n) {
            t.record("inequality-exact", desc.contains(&w.to_vector()) == iv.contains(&w), || {
                format!("{} w={w}", ctx())
            });
        }
    } else {
        t.record("inequality-exact", false, ctx);
    }

    let toric = is_toric(&u, &v).expect("comparable");
    t.record("toric-iff-forest", chain_graph_is_forest(iv).ok() == Some(toric), ctx);
    if iv.rank() == 3 {
        let ok = match crown_type(iv) {
            Ok(Some(k)) => (2..=4).contains(&k) && toric == (k == 3 || k == 4),
            _ => false,
        };
        t.record("rank3-toric-iff-crown-3-or-4", ok, ctx);
    }
}

fn faces(iv: &BruhatInterval, rng: &mut ChaCha8Rng, t: &mut Tally) {
    let (u, v) = (iv.u(), iv.v());
    let n = u.n();
    let ctx = || format!("u={u} v={v}");
    let els = iv.elements();
    let m = els.len();
    let verts = vertices(iv);
    let le: Vec<Vec<bool>> = els.iter().map(|a| els.iter().map(|b| a.bruhat_le(b)).collect()).collect();
    let sorted = |mut s: Vec<Vec<i64>>| {
        s.sort();
        s
    };
    let sub = |a: usize, b: usize| sorted((0..m).filter(|&c| le[a][c] && le[c][b]).map(|c| verts[c].clone()).collect());

    let mut pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).filter(|&(a, b)| le[a][b]).collect();
    if m > LP_FULL_LIMIT {
        pairs.shuffle(rng);
        pairs.truncate(LP_SAMPLE_PAIRS);
        pairs.sort();
    }
    let mut functionals: Vec<Vec<i64>> = Vec::new();
    if m <= oracle::MAX_POINTS {
        for &(a, b) in &pairs {
            let (x, y) = (els[a], els[b]);
            let s = sub(a, b);
            let crit = is_face(&x, &y, &u, &v).expect("contained");
            let lp = oracle::is_face(&s, &verts);
            t.record("face-criterion-vs-lp", lp.as_ref().ok() == Some(&crit), || format!("{} x={x} y={y}", ctx()));
            if crit {
                let cone = normal_cone(&x, &y, &u, &v).expect("face");
                t.record("witness-argmax", sorted(oracle::argmax(&verts, &cone.witness)) == s, || {
                    format!("{} x={x} y={y} ω={:?}", ctx(), cone.witness)
                });
                functionals.push(cone.witness);
            }
        }
        for _ in 0..RANDOM_FUNCTIONALS {
            functionals.push((0..n).map(|_| rng.gen_range(-3..=3)).collect());
        }
        for w in &functionals {
            let s = sorted(oracle::argmax(&verts, w));
            let members: Vec<Permutation> = els.iter().filter(|z| s.contains(&z.to_vector())).copied().collect();
            let ok = oracle::is_face(&s, &verts).unwrap_or(false)
                && match face_min_max(&members) {
                    Ok((x, y)) => {
                        let (a, b) = (iv.index_of(&x).expect("member"), iv.index_of(&y).expect("member"));
                        sub(a, b) == s
                    }
                    Err(_) => false,
                };
            t.record("faces-are-intervals", ok, || format!("{} ω={w:?}", ctx()));
        }
    }

    let edges = polytope_edges(iv);
    for x in 1..m.saturating_sub(1) {
        let up = edges.iter().any(|&(a, _)| a == x);
        let down = edges.iter().any(|&(_, b)| b == x);
        t.record("edge-lemma", up && down, || format!("{} x={}", ctx(), els[x]));
    }
    t.record("diameter-equals-rank", crate::polytope::diameter(iv) == iv.rank(), ctx);
}

fn rpoly(iv: &BruhatInterval, t: &mut Tally) {
    let (u, v) = (iv.u(), iv.v());
    let ctx = || format!("u={u} v={v}");
    let l = iv.rank();
    let r = r_polynomial(&u, &v);
    let sign = if l % 2 == 0 { 1 } else { -1 };
    t.record("degree-leading-constant", r.degree() == Some(l) && r.leading() == 1 && r.constant() == sign, ctx);
    for i in v.descents(Side::Right) {
        t.record("descent-independence", r_polynomial_via_descent(&u, &v, i).as_ref() == Some(&r), || {
            format!("{} s={i}", ctx())
        });
    }
    t.record("tilde-consistency", r_from_tilde(&r_tilde(&u, &v), l) == r, ctx);
    for tr in inversion_minimal_transpositions(&u, &v).unwrap_or_default() {
        let ok = generalized_r_identity(&u, &v, tr).map(|s| s.holds()).unwrap_or(false);
        t.record("generalized-recurrence", ok, || format!("{} t={tr}", ctx()));
        t.record("generalized-tilde-recurrence", generalized_r_tilde_identity(&u, &v, tr), || {
            format!("{} t={tr}", ctx())
        });
        let found = matches!(extend_to_special_matching(&u, &v, tr), Ok(Extension::Found { .. }));
        t.record("matching-extension-found", found, || format!("{} t={tr}", ctx()));
    }
    if u == Permutation::identity(u.n()) && u != v && v.length() <= MATCHING_MAX_LENGTH {
        let matchings = special_matchings(iv);
        t.record("special-matching-identity", !matchings.is_empty(), || format!("{} has no special matching", ctx()));
        for mm in &matchings {
            for z in iv.elements() {
                t.record("special-matching-identity", special_matching_r_identity(iv, mm, z).unwrap_or(false), || {
                    format!("{} z={z}", ctx())
                });
            }
        }
    }
}

fn parabolic(iv: &BruhatInterval, t: &mut Tally) {
    let (u, v) = (iv.u(), iv.v());
    let n = u.n();
    if n > PARABOLIC_MAX_N || iv.len() > LP_FULL_LIMIT {
        return;
    }
    let full = ParabolicSubset::full_flag(n);
    for j in ParabolicSubset::all(n) {
        if !is_min_rep(&v, &j) {
            continue;
        }
        let ctx = || format!("u={u} v={v} J={j}");
        let report = match parabolic_faces_check(&u, &v, &j) {
            Ok(r) => r,
            Err(e) => {
                t.record("faces-theorem", false, || format!("{}: {e}", ctx()));
                continue;
            }
        };
        t.record("faces-theorem", report.ok(), || format!("{}: {:?}", ctx(), report.violations));
        t.record("points-biject-cosets", report.points == report.cosets, ctx);
        t.record("faces-from-subintervals", report.faces_from_subintervals, ctx);
        if j == full {
            let inv = BruhatInterval::new(u.inverse(), v.inverse()).expect("inversion preserves order");
            t.record("full-flag-f-vector-of-inverse", report.f_vector == f_vector(&enumerate_faces(&inv)), ctx);
            t.record("full-flag-f-vector-direct", report.f_vector == f_vector(&enumerate_faces(iv)), ctx);
        }
    }
}

fn minkowski(iv: &BruhatInterval, t: &mut Tally) {
    if iv.n() > MINKOWSKI_MAX_N {
        return;
    }
    for c in MatroidConvention::ALL {
        let name = match c {
            MatroidConvention::FirstValues => "minkowski-first-values",
            MatroidConvention::TopPositions => "minkowski-top-positions",
        };
        let equal = minkowski_check(iv, c).map(|r| r.equal).unwrap_or(false);
        t.record(name, equal, || format!("u={} v={}", iv.u(), iv.v()));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic() {
        assert_eq!(sample_pairs(5, 20, 7), sample_pairs(5, 20, 7));
        assert_ne!(sample_pairs(5, 20, 7), sample_pairs(5, 20, 8));
        assert!(sample_pairs(5, 20, 7).iter().all(|(u, v)| u.bruhat_le(v)));
    }

    #[test]
    fn small_exhaustive_run_passes() {
        let report = run_checks(&Suite::ALL, &CheckConfig::exhaustive(3)).unwrap();
        assert_eq!(report.instances, comparable_pairs(3).len());
        for s in &report.suites {
            for p in &s.properties {
                assert!(p.passed(), "{} {} {:?}", s.suite, p.name, p.first_failure);
            }
        }
    }

    #[test]
    fn jobs_do_not_change_the_report() {
        let one = run_checks(&[Suite::Lifting, Suite::Faces], &CheckConfig::sampled(4, 30, 3)).unwrap();
        let four = run_checks(&[Suite::Lifting, Suite::Faces], &CheckConfig { jobs: 4, ..CheckConfig::sampled(4, 30, 3) })
            .unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn size_limits() {
        assert!(run_checks(&[Suite::Lifting], &CheckConfig::exhaustive(6)).is_err());
        assert!(run_checks(&[Suite::Lifting], &CheckConfig::exhaustive(0)).is_err());
        assert!(run_checks(&[Suite::Lifting], &CheckConfig::sampled(4, 0, 1)).is_err());
        assert_eq!(parse_suites("all").unwrap().len(), 6);
        assert!(parse_suites("nope").is_err());
    }
}
