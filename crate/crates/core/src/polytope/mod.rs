//! The Bruhat interval polytope `Q_{u,v} = conv{(z(1), ..., z(n)) : u ≤ z ≤ v}`:
//! partitions and dimension, matroid descriptions, faces, diameter, toric and
//! crown criteria.

mod faces;
mod graph;
mod matroid;
mod minkowski;

pub use faces::{
    diameter, enumerate_faces, f_vector, face_graph, is_face, normal_cone, polytope_edges, Face, FaceGraph,
    NormalCone,
};
pub use graph::{LabeledGraph, SetPartition};
pub use matroid::{
    bip_inequalities, interval_matroid, interval_matroids, rank_sum_system, subset_elements, subset_mask, Equality,
    Inequality, Matroid, MatroidConvention, PolytopeDescription, Subset,
};
pub use minkowski::{minkowski_check, minkowski_sum_vertices, MinkowskiVerdict, MINKOWSKI_MAX_N};

use thiserror::Error;

use crate::interval::{BruhatInterval, IntervalError, MaximalChain};
use crate::oracle::OracleError;
use crate::perm::{PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("containment u ≤ x ≤ y ≤ v violated for x = {x}, y = {y} in [{u}, {v}]")]
    NotContained { x: Permutation, y: Permutation, u: Permutation, v: Permutation },
    #[error("[{0}, {1}] is not a face")]
    NotFace(Permutation, Permutation),
    #[error("crown type needs an interval of rank 3, got rank {0}")]
    RankNotThree(usize),
    #[error("vertex set has no Bruhat {0}")]
    NoMinMax(&'static str),
    #[error("not a matroid: {0}")]
    NotMatroid(String),
    #[error("matroid with no bases")]
    NoBases,
    #[error("matroid rank must satisfy 1 ≤ k ≤ n-1, got {0}")]
    BadRank(usize),
    #[error("size guard: n = {0} exceeds {1}")]
    SizeGuard(usize, usize),
    #[error("affine span mismatch on block {0:?}")]
    SpanMismatch(Vec<usize>),
}

impl From<PermError> for PolytopeError {
    fn from(e: PermError) -> Self {
        PolytopeError::Interval(e.into())
    }
}

pub(crate) fn check_leq(u: &Permutation, v: &Permutation) -> Result<(), PolytopeError> {
    if u.n() != v.n() {
        return Err(PermError::SizeMismatch(u.n(), v.n()).into());
    }
    if !u.bruhat_le(v) {
        return Err(IntervalError::NotLeq(*u, *v).into());
    }
    Ok(())
}

/// Permutation vectors of `[u, v]`, in the interval's element order.
pub fn vertices(interval: &BruhatInterval) -> Vec<Vec<i64>> {
    interval.elements().iter().map(|z| z.to_vector()).collect()
}

/// `G^C`: one edge `(a b)` per step `x_(i)^{-1} x_(i+1)` of the chain.
pub fn chain_graph(chain: &MaximalChain) -> LabeledGraph {
    LabeledGraph::from_transpositions(chain.bottom().n(), chain.transpositions())
}

/// Edges `(a b)` for the atoms `u ⋖ u·(a b) ≤ v`.
pub fn atom_graph(u: &Permutation, v: &Permutation) -> LabeledGraph {
    let ts = u.upper_covers().into_iter().filter(|(z, _)| z.bruhat_le(v)).map(|(_, t)| t);
    LabeledGraph::from_transpositions(u.n(), ts)
}

/// Edges `(a b)` for the coatoms `u ≤ v·(a b) ⋖ v`.
pub fn coatom_graph(u: &Permutation, v: &Permutation) -> LabeledGraph {
    let ts = v.lower_covers().into_iter().filter(|(z, _)| u.bruhat_le(z)).map(|(_, t)| t);
    LabeledGraph::from_transpositions(u.n(), ts)
}

/// `B_{u,v}`, read off the atom graph.
pub fn block_partition(u: &Permutation, v: &Permutation) -> Result<SetPartition, PolytopeError> {
    check_leq(u, v)?;
    Ok(atom_graph(u, v).components())
}

/// `dim Q_{u,v} = n - #blocks(B_{u,v})`.
pub fn dimension(u: &Permutation, v: &Permutation) -> Result<usize, PolytopeError> {
    Ok(u.n() - block_partition(u, v)?.len())
}

/// One equation `Σ_{i ∈ B} x_i = Σ_{i ∈ B} u_i` per block `B` of `B_{u,v}`.
pub fn affine_span_equations(u: &Permutation, v: &Permutation) -> Result<Vec<Equality>, PolytopeError> {
    let n = u.n();
    block_partition(u, v)?
        .blocks()
        .iter()
        .map(|b| {
            let rhs: i64 = b.iter().map(|&i| u.at(i) as i64).sum();
            let rhs_v: i64 = b.iter().map(|&i| v.at(i) as i64).sum();
            if rhs != rhs_v {
                return Err(PolytopeError::SpanMismatch(b.clone()));
            }
            let mut coeffs = vec![0; n];
            for &i in b {
                coeffs[i - 1] = 1;
            }
            Ok(Equality { coeffs, rhs })
        })
        .collect()
}

/// Combinatorial toric criterion: `#blocks(B_{u,v}) = n - (ℓ(v) - ℓ(u))`.
pub fn is_toric(u: &Permutation, v: &Permutation) -> Result<bool, PolytopeError> {
    let rank = v.length() - u.length();
    Ok(block_partition(u, v)?.len() + rank == u.n())
}

/// The forest form of the toric criterion, on the chain built from atoms.
pub fn chain_graph_is_forest(interval: &BruhatInterval) -> Result<bool, PolytopeError> {
    let chain = crate::interval::chain_via_atoms(interval)?;
    Ok(chain_graph(&chain).is_forest())
}

/// `Some(k)` when the rank-3 interval is a `k`-crown: `k` atoms and `k`
/// coatoms whose covers form a single `2k`-cycle. `None` if that shape fails.
pub fn crown_type(interval: &BruhatInterval) -> Result<Option<usize>, PolytopeError> {
    if interval.rank() != 3 {
        return Err(PolytopeError::RankNotThree(interval.rank()));
    }
    let base = interval.u().length();
    let level = |r: usize| -> Vec<usize> {
        (0..interval.len()).filter(|&i| interval.elements()[i].length() == base + r).collect()
    };
    let (atoms, coatoms) = (level(1), level(2));
    let k = atoms.len();
    if coatoms.len() != k || interval.len() != 2 * k + 2 {
        return Ok(None);
    }
    let degree_two = atoms.iter().all(|&a| interval.up_indices(a).len() == 2)
        && coatoms.iter().all(|&c| interval.down_indices(c).len() == 2);
    if !degree_two {
        return Ok(None);
    }
    // walk the bipartite cycle from the first atom
    let mut seen = 1;
    let (start, mut prev, mut cur) = (atoms[0], usize::MAX, atoms[0]);
    loop {
        let nbrs: Vec<usize> = if atoms.contains(&cur) {
            interval.up_indices(cur).iter().map(|&(b, _)| b).collect()
        } else {
            interval.down_indices(cur).iter().map(|&(b, _)| b).collect()
        };
        let next = if nbrs[0] != prev { nbrs[0] } else { nbrs[1] };
        if next == start {
            break;
        }
        prev = cur;
        cur = next;
        seen += 1;
    }
    Ok((seen == 2 * k).then_some(k))
}

/// The Bruhat-minimum and -maximum of a vertex set.
pub fn face_min_max(elements: &[Permutation]) -> Result<(Permutation, Permutation), PolytopeError> {
    let min = elements
        .iter()
        .find(|x| elements.iter().all(|z| x.bruhat_le(z)))
        .ok_or(PolytopeError::NoMinMax("minimum"))?;
    let max = elements
        .iter()
        .find(|y| elements.iter().all(|z| z.bruhat_le(y)))
        .ok_or(PolytopeError::NoMinMax("maximum"))?;
    Ok((*min, *max))
}
