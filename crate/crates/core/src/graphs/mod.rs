//! Simple undirected graphs on vertices `1..=n`, the families and operations
//! used to build test instances, and the structural predicates the
//! classification theory relies on.
//!
//! Labels are 1-based on every public surface. Internally each vertex owns a
//! 64-bit adjacency row indexed from 0, which caps graphs at 64 vertices; the
//! dynamics layer has a much lower ceiling anyway.

mod enumerate;
mod family;
mod graph6;
mod materialized;
mod spec;

pub use enumerate::{
    canonical_mask, graph_from_mask, graph_mask, is_canonical, labeled_graph_count, pair_count, EnumerateOptions,
    GraphEnumerator,
};
pub use family::{all_prufer_sequences, family, prufer_tree, random_prufer_sequence, Family};
pub use graph6::{emit_graph6, parse_graph6};
pub use materialized::{EdgeKind, MaterializedGraph};
pub use spec::{parse_spec, print_spec};

use crate::error::{Error, Result};

pub const MAX_GRAPH_VERTICES: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph({}; ", self.n)?;
        let edges: Vec<String> = self.edges().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "{})", edges.join(","))
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if n > MAX_GRAPH_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_GRAPH_VERTICES,
            });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from 1-based vertex pairs. Duplicate pairs collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        self.adj[a - 1] |= 1 << (b - 1);
        self.adj[b - 1] |= 1 << (a - 1);
        Ok(())
    }

    pub(crate) fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a - 1] &= !(1 << (b - 1));
        self.adj[b - 1] &= !(1 << (a - 1));
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Adjacency test on 1-based labels; out-of-range labels are never adjacent.
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a >= 1 && b >= 1 && a <= self.n && b <= self.n && (self.adj[a - 1] >> (b - 1)) & 1 == 1
    }

    #[inline]
    pub(crate) fn adjacent0(&self, a: usize, b: usize) -> bool {
        (self.adj[a] >> b) & 1 == 1
    }

    /// Adjacency row of 0-based vertex `v` as a bitmask over 0-based vertices.
    #[inline]
    pub(crate) fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|r| r.count_ones() as usize).collect()
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        bits(self.adj[v - 1]).map(|u| u + 1).collect()
    }

    /// Edges `(a, b)` with `a < b`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| bits(self.adj[a] & !(2u64 << a).wrapping_sub(1)).map(move |b| (a + 1, b + 1)))
    }

    fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn complement(&self) -> Graph {
        let full = self.full_mask();
        let adj = (0..self.n).map(|v| !self.adj[v] & full & !(1 << v)).collect();
        Graph { n: self.n, adj }
    }

    /// The `n`-vertex complement: the graph whose complement is `self` plus
    /// `n - m` isolated vertices labelled `m+1..=n`.
    pub fn compl_n(&self, n: usize) -> Result<Graph> {
        if n < self.n {
            return Err(Error::InvalidParameter(format!(
                "n-vertex complement needs n >= {} (got {n})",
                self.n
            )));
        }
        if n == self.n {
            return Ok(self.complement());
        }
        Ok(self.disjoint_union(&Graph::empty(n - self.n)?)?.complement())
    }

    /// Glues vertex `v1` of `self` to vertex `v2` of `other`. `self` keeps its
    /// labels, the glued vertex is `v1`, and the remaining vertices of `other`
    /// follow as `n1+1..` in increasing original order.
    pub fn wedge(&self, v1: usize, other: &Graph, v2: usize) -> Result<Graph> {
        self.check_vertex(v1)?;
        other.check_vertex(v2)?;
        let map = wedge_relabeling(self.n, v1, other.n, v2);
        let mut g = self.clone();
        g.n = self.n + other.n - 1;
        if g.n > MAX_GRAPH_VERTICES {
            return Err(Error::TooManyVertices {
                n: g.n,
                max: MAX_GRAPH_VERTICES,
            });
        }
        g.adj.resize(g.n, 0);
        for (a, b) in other.edges() {
            g.add_edge(map[a - 1], map[b - 1])?;
        }
        Ok(g)
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_GRAPH_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_GRAPH_VERTICES,
            });
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|r| r << self.n));
        Ok(Graph { n, adj })
    }

    /// Graph with edge `{perm[a-1], perm[b-1]}` for each edge `{a, b}`;
    /// `perm` is a 1-based permutation of `1..=n`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "relabeling has length {}, expected {}",
                perm.len(),
                self.n
            )));
        }
        let mut seen = 0u64;
        for &p in perm {
            self.check_vertex(p)?;
            seen |= 1 << (p - 1);
        }
        if seen != self.full_mask() {
            return Err(Error::InvalidParameter("relabeling is not a permutation".into()));
        }
        let mut g = Graph::empty(self.n)?;
        for (a, b) in self.edges() {
            g.add_edge(perm[a - 1], perm[b - 1])?;
        }
        Ok(g)
    }

    /// Induced subgraph on `vertices` (relabelled `1..` in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let mut g = Graph::empty(vertices.len())?;
        for (i, &a) in vertices.iter().enumerate() {
            self.check_vertex(a)?;
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i + 1, j + 1)?;
                }
            }
        }
        Ok(g)
    }

    /// Connected components as sorted vertex lists, ordered by minimum vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut unseen = self.full_mask();
        let mut out = Vec::new();
        while unseen != 0 {
            let root = unseen.trailing_zeros() as usize;
            let comp = self.reach(1 << root, self.full_mask());
            unseen &= !comp;
            out.push(bits(comp).map(|v| v + 1).collect());
        }
        out
    }

    /// Closure of `start` under adjacency, restricted to `allowed`.
    pub(crate) fn reach(&self, start: u64, allowed: u64) -> u64 {
        let mut seen = start & allowed;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & allowed & !seen;
            seen |= frontier;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.reach(1, self.full_mask()) == self.full_mask()
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() + 1 == self.n
    }

    pub fn complement_components(&self) -> Vec<Vec<usize>> {
        self.complement().components()
    }

    /// 2-colouring by BFS per component, with each component's minimum vertex
    /// in the first part. `None` when an odd cycle exists.
    pub fn is_bipartite(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for root in 0..self.n {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(false);
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                let cv = color[v].unwrap();
                for u in bits(self.adj[v]) {
                    match color[u] {
                        None => {
                            color[u] = Some(!cv);
                            queue.push_back(u);
                        }
                        Some(cu) if cu == cv => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let (mut x, mut y) = (Vec::new(), Vec::new());
        for (v, c) in color.iter().enumerate() {
            if *c == Some(false) {
                x.push(v + 1);
            } else {
                y.push(v + 1);
            }
        }
        Some((x, y))
    }

    /// Looks for vertices `a, b, c, d` where `a` and `b` both have degree 3,
    /// `N(a) = {b, c, d}`, `N(b) = {a, c, d}`, and some simple `c`–`d` path of
    /// length at least 2 avoids `a` and `b`. Returns the lexicographically
    /// first witness with `a < b` and `c < d`.
    pub fn has_local_blocking_config(&self) -> Option<(usize, usize, usize, usize)> {
        let full = self.full_mask();
        for a in 0..self.n {
            if self.adj[a].count_ones() != 3 {
                continue;
            }
            for b in bits(self.adj[a]).filter(|&b| b > a) {
                if self.adj[b].count_ones() != 3 {
                    continue;
                }
                let rest_a = self.adj[a] & !(1 << b);
                let rest_b = self.adj[b] & !(1 << a);
                if rest_a != rest_b {
                    continue;
                }
                let c = rest_a.trailing_zeros() as usize;
                let d = 63 - rest_a.leading_zeros() as usize;
                // c-d path of length >= 2 avoiding a, b: leave c through some
                // z other than d and reach d without revisiting a, b or c.
                let allowed = full & !(1 << a) & !(1 << b) & !(1 << c);
                let starts = self.adj[c] & allowed & !(1 << d);
                if starts != 0 && self.reach(starts, allowed) & (1 << d) != 0 {
                    return Some((a + 1, b + 1, c + 1, d + 1));
                }
            }
        }
        None
    }

    /// Graph whose complement consists of exactly the complement edges of
    /// `self` that lie inside `component` (labels preserved). For a connected
    /// component `C` of the complement this is `compl_n(C)` up to relabeling.
    pub fn isolate_complement_component(&self, component: &[usize]) -> Result<Graph> {
        let mut mask = 0u64;
        for &v in component {
            self.check_vertex(v)?;
            mask |= 1 << (v - 1);
        }
        let comp = self.complement();
        let mut g = Graph::empty(self.n)?.complement();
        for (a, b) in comp.edges() {
            if mask >> (a - 1) & 1 == 1 && mask >> (b - 1) & 1 == 1 {
                g.remove_edge(a, b);
            }
        }
        Ok(g)
    }
}

/// Maps 1-based vertices of the second wedge factor to labels in the wedge.
pub fn wedge_relabeling(n1: usize, v1: usize, n2: usize, v2: usize) -> Vec<usize> {
    let mut next = n1;
    (1..=n2)
        .map(|u| {
            if u == v2 {
                v1
            } else {
                next += 1;
                next
            }
        })
        .collect()
}

/// Iterator over the set bit indices of a mask, lowest first.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}
