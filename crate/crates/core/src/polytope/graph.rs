use std::fmt;

use serde::Serialize;

use crate::perm::Transposition;

/// Undirected multigraph on `{1..n}`; parallel edges are kept so forest tests
/// can see a transposition used twice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl LabeledGraph {
    pub fn new(n: usize) -> Self {
        LabeledGraph { n, edges: Vec::new() }
    }

    pub fn from_transpositions(n: usize, ts: impl IntoIterator<Item = Transposition>) -> Self {
        let mut g = Self::new(n);
        for t in ts {
            g.add_edge(t.i(), t.k());
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b && a >= 1 && b >= 1 && a.max(b) <= self.n, "bad edge ({a},{b})");
        self.edges.push((a.min(b), a.max(b)));
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge multiset, each as `(a, b)` with `a < b`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n + 1]; self.n + 1];
        for &(a, b) in &self.edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        adj
    }

    pub fn components(&self) -> SetPartition {
        let mut parent: Vec<usize> = (0..=self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let labels: Vec<usize> = (1..=self.n).map(|i| find(&mut parent, i)).collect();
        SetPartition::from_labels(&labels)
    }

    /// No parallel edges and no cycles.
    pub fn is_forest(&self) -> bool {
        let mut distinct = self.edges.clone();
        distinct.sort_unstable();
        distinct.dedup();
        distinct.len() == self.edges.len()
            && self.n - self.components().len() == self.edges.len()
    }

    /// No cycle `v_0 < v_1 < ... < v_{k-1}` closing back to `v_0`; a doubled
    /// edge counts as the cycle with `k = 2`.
    pub fn increasing_cycle_free(&self) -> bool {
        let mut distinct = self.edges.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != self.edges.len() {
            return false;
        }
        let adj = self.adjacency();
        for v0 in 1..=self.n {
            // far[w]: w reachable from v0 by an increasing path of at least two edges
            let mut near = vec![false; self.n + 1];
            let mut far = vec![false; self.n + 1];
            for w in v0 + 1..=self.n {
                for p in v0 + 1..w {
                    if adj[p][w] && (near[p] || far[p]) {
                        far[w] = true;
                    }
                }
                near[w] = adj[v0][w];
                if far[w] && adj[w][v0] {
                    return false;
                }
            }
        }
        true
    }
}

/// A partition of `{1..n}` into blocks, each sorted, blocks ordered by minimum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn singletons(n: usize) -> Self {
        SetPartition { blocks: (1..=n).map(|i| vec![i]).collect() }
    }

    /// Groups `1..=labels.len()` by equal label.
    pub fn from_labels<L: PartialEq>(labels: &[L]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut reps: Vec<&L> = Vec::new();
        for (i, l) in labels.iter().enumerate() {
            match reps.iter().position(|r| *r == l) {
                Some(b) => blocks[b].push(i + 1),
                None => {
                    reps.push(l);
                    blocks.push(vec![i + 1]);
                }
            }
        }
        SetPartition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Index of the block holding `i`.
    pub fn block_of(&self, i: usize) -> usize {
        self.blocks.iter().position(|b| b.contains(&i)).expect("element of ground set")
    }
}

impl fmt::Display for SetPartition {
    /// `|1|234|`, with commas inside blocks once `n ≥ 10`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n() >= 10 { "," } else { "" };
        write!(f, "|")?;
        for b in &self.blocks {
            let parts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            write!(f, "{}|", parts.join(sep))?;
        }
        Ok(())
    }
}

impl Serialize for SetPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.blocks.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_display() {
        let p = SetPartition::from_labels(&[0, 1, 1, 1]);
        assert_eq!(p.to_string(), "|1|234|");
        assert_eq!(SetPartition::singletons(3).to_string(), "|1|2|3|");
        assert_eq!(p.block_of(3), 1);
    }

    #[test]
    fn components_and_forests() {
        let mut g = LabeledGraph::new(4);
        g.add_edge(3, 4);
        g.add_edge(2, 4);
        assert!(g.is_forest());
        assert_eq!(g.components().to_string(), "|1|234|");
        g.add_edge(2, 3);
        assert!(!g.is_forest());
        assert_eq!(g.components().to_string(), "|1|234|");

        let mut twice = LabeledGraph::new(3);
        twice.add_edge(1, 2);
        twice.add_edge(2, 1);
        assert!(!twice.is_forest());
        assert!(!twice.increasing_cycle_free());
    }

    #[test]
    fn increasing_cycles() {
        assert!(LabeledGraph::new(5).increasing_cycle_free());
        let mut tri = LabeledGraph::new(3);
        tri.add_edge(1, 2);
        tri.add_edge(2, 3);
        tri.add_edge(1, 3);
        assert!(!tri.increasing_cycle_free());

        // the 4-cycle 1-3-2-4-1 has no increasing traversal
        let mut square = LabeledGraph::new(4);
        for (a, b) in [(1, 3), (3, 2), (2, 4), (4, 1)] {
            square.add_edge(a, b);
        }
        assert!(square.increasing_cycle_free());
        // 1-2-3-4-1 does
        let mut inc = LabeledGraph::new(4);
        for (a, b) in [(1, 2), (2, 3), (3, 4), (4, 1)] {
            inc.add_edge(a, b);
        }
        assert!(!inc.increasing_cycle_free());
    }
}
