use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::{atom_graph, check_leq, PolytopeError, SetPartition};
use crate::interval::BruhatInterval;
use crate::perm::Permutation;

/// `G_{x,y}^{u,v}`: nodes are the blocks of `B_{x,y}`; edges are directed
/// between block indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceGraph {
    pub nodes: SetPartition,
    pub edges: Vec<(usize, usize)>,
}

impl FaceGraph {
    /// Kahn order with smallest-node tie-break; `None` on a cycle (a merged
    /// self-loop counts as one).
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let m = self.nodes.len();
        if self.edges.iter().any(|&(a, b)| a == b) {
            return None;
        }
        let mut indeg = vec![0; m];
        for &(_, b) in &self.edges {
            indeg[b] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..m).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(m);
        while let Some(a) = ready.pop_first() {
            order.push(a);
            for &(s, b) in &self.edges {
                if s == a {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        ready.insert(b);
                    }
                }
            }
        }
        (order.len() == m).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }
}

fn check_containment(x: &Permutation, y: &Permutation, u: &Permutation, v: &Permutation) -> Result<(), PolytopeError> {
    check_leq(u, v)?;
    if x.n() != u.n() || y.n() != u.n() || !(u.bruhat_le(x) && x.bruhat_le(y) && y.bruhat_le(v)) {
        return Err(PolytopeError::NotContained { x: *x, y: *y, u: *u, v: *v });
    }
    Ok(())
}

pub fn face_graph(x: &Permutation, y: &Permutation, u: &Permutation, v: &Permutation) -> Result<FaceGraph, PolytopeError> {
    check_containment(x, y, u, v)?;
    let nodes = atom_graph(x, y).components();
    let mut edges = Vec::new();
    // covers y ⋖ y·(i j) ≤ v give i → j
    for (z, t) in y.upper_covers() {
        if z.bruhat_le(v) {
            edges.push((nodes.block_of(t.i()), nodes.block_of(t.k())));
        }
    }
    // cocovers u ≤ x·(i j) ⋖ x give j → i
    for (z, t) in x.lower_covers() {
        if u.bruhat_le(&z) {
            edges.push((nodes.block_of(t.k()), nodes.block_of(t.i())));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(FaceGraph { nodes, edges })
}

/// `Q_{x,y}` is a face of `Q_{u,v}` iff the face graph is acyclic.
pub fn is_face(x: &Permutation, y: &Permutation, u: &Permutation, v: &Permutation) -> Result<bool, PolytopeError> {
    Ok(face_graph(x, y, u, v)?.is_acyclic())
}

/// Constraints cutting out the normal cone of `Q_{x,y}` in `Q_{u,v}`, plus
/// one integer witness `ω` in its relative interior.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalCone {
    /// `ω_i = ω_j`.
    pub equalities: Vec<(usize, usize)>,
    /// `ω_i < ω_j`.
    pub strict: Vec<(usize, usize)>,
    pub witness: Vec<i64>,
}

pub fn normal_cone(x: &Permutation, y: &Permutation, u: &Permutation, v: &Permutation) -> Result<NormalCone, PolytopeError> {
    let g = face_graph(x, y, u, v)?;
    let order = g.topological_order().ok_or(PolytopeError::NotFace(*x, *y))?;
    let mut level = vec![0i64; g.nodes.len()];
    for (rank, &node) in order.iter().enumerate() {
        level[node] = rank as i64;
    }
    let n = u.n();
    let witness = (1..=n).map(|i| level[g.nodes.block_of(i)]).collect();
    let equalities = g
        .nodes
        .blocks()
        .iter()
        .flat_map(|b| b.windows(2).map(|w| (w[0], w[1])))
        .collect();
    let strict = g
        .edges
        .iter()
        .map(|&(a, b)| (g.nodes.blocks()[a][0], g.nodes.blocks()[b][0]))
        .collect();
    Ok(NormalCone { equalities, strict, witness })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Face {
    pub dim: usize,
    pub x: Permutation,
    pub y: Permutation,
}

/// Every face `Q_{x,y}` of `Q_{u,v}`, sorted by `(dim, x, y)`.
pub fn enumerate_faces(interval: &BruhatInterval) -> Vec<Face> {
    let (u, v) = (interval.u(), interval.v());
    let els = interval.elements();
    let mut out = Vec::new();
    for x in els {
        for y in els {
            if x.bruhat_le(y) && is_face(x, y, &u, &v).expect("contained") {
                let dim = x.n() - atom_graph(x, y).components().len();
                out.push(Face { dim, x: *x, y: *y });
            }
        }
    }
    out.sort();
    out
}

/// Face counts indexed by dimension.
pub fn f_vector(faces: &[Face]) -> Vec<usize> {
    let top = faces.iter().map(|f| f.dim).max().unwrap_or(0);
    let mut f = vec![0; top + 1];
    for face in faces {
        f[face.dim] += 1;
    }
    f
}

/// The 1-skeleton as index pairs into `interval.elements()`. Edges of a Bruhat
/// interval polytope are one-dimensional faces, which are exactly the covers
/// passing the face test.
pub fn polytope_edges(interval: &BruhatInterval) -> Vec<(usize, usize)> {
    let (u, v) = (interval.u(), interval.v());
    interval
        .cover_indices()
        .iter()
        .copied()
        .filter(|&(a, b)| is_face(&interval.elements()[a], &interval.elements()[b], &u, &v).expect("contained"))
        .collect()
}

/// Graph diameter of the 1-skeleton, by BFS from every vertex.
pub fn diameter(interval: &BruhatInterval) -> usize {
    let m = interval.len();
    let mut adj = vec![Vec::new(); m];
    for (a, b) in polytope_edges(interval) {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut best = 0;
    for s in 0..m {
        let mut dist = vec![usize::MAX; m];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            for &b in &adj[a] {
                if dist[b] == usize::MAX {
                    dist[b] = dist[a] + 1;
                    queue.push_back(b);
                }
            }
        }
        best = best.max(dist.into_iter().max().unwrap_or(0));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn example_face_graph() {
        let g = face_graph(&p("2143"), &p("4132"), &p("1243"), &p("4132")).unwrap();
        assert_eq!(g.nodes.to_string(), "|134|2|");
        assert_eq!(g.edges, vec![(1, 0)]);
        assert!(g.is_acyclic());
        let cone = normal_cone(&p("2143"), &p("4132"), &p("1243"), &p("4132")).unwrap();
        assert_eq!(cone.witness, vec![1, 0, 1, 1]);
        assert_eq!(cone.strict, vec![(2, 1)]);
        assert_eq!(cone.equalities, vec![(1, 3), (3, 4)]);
    }

    #[test]
    fn whole_polytope_and_points() {
        let (u, v) = (p("1243"), p("4132"));
        let g = face_graph(&u, &v, &u, &v).unwrap();
        assert!(g.edges.is_empty() && g.is_acyclic());
        let w = p("3142");
        let g = face_graph(&w, &w, &w, &w).unwrap();
        assert_eq!(g.nodes.len(), 4);
        assert!(g.edges.is_empty());
        assert!(face_graph(&u, &v, &v, &v).is_err());
    }

    #[test]
    fn hexagon() {
        let iv = BruhatInterval::new(p("123"), p("321")).unwrap();
        let faces = enumerate_faces(&iv);
        assert_eq!(f_vector(&faces), vec![6, 6, 1]);
        assert_eq!(diameter(&iv), 3);
        let single = BruhatInterval::new(p("213"), p("213")).unwrap();
        assert_eq!(f_vector(&enumerate_faces(&single)), vec![1]);
        assert_eq!(diameter(&single), 0);
    }

    #[test]
    fn not_a_face_has_no_cone() {
        // [123, 231] is not a face of the hexagon: 123 and 231 are not adjacent there
        let r = normal_cone(&p("123"), &p("231"), &p("123"), &p("321"));
        assert!(matches!(r, Err(PolytopeError::NotFace(_, _))));
    }
}
