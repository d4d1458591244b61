use super::{bits, wedge_relabeling, Graph};
use crate::error::{Error, Result};

/// How a cyclically adjacent pair of replicas interacts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// Non-edge: the replicas pass each other.
    Window,
    Refract,
    Reflect,
}

/// A graph whose edges are split into refraction and reflection edges.
/// Plain graphs embed as the refraction-only case.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MaterializedGraph {
    graph: Graph,
    reflect: Vec<u64>,
}

impl std::fmt::Debug for MaterializedGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Materialized({})", super::print_spec(self))
    }
}

impl From<Graph> for MaterializedGraph {
    fn from(graph: Graph) -> Self {
        MaterializedGraph::refraction_only(graph)
    }
}

impl MaterializedGraph {
    pub fn refraction_only(graph: Graph) -> Self {
        let reflect = vec![0; graph.order()];
        MaterializedGraph { graph, reflect }
    }

    /// Marks `reflect_edges` (which must be edges of `graph`) as reflective;
    /// every other edge refracts.
    pub fn new(graph: Graph, reflect_edges: &[(usize, usize)]) -> Result<Self> {
        let mut m = MaterializedGraph::refraction_only(graph);
        for &(a, b) in reflect_edges {
            m.graph.check_vertex(a)?;
            m.graph.check_vertex(b)?;
            if !m.graph.has_edge(a, b) {
                return Err(Error::InvalidParameter(format!(
                    "reflection edge {a}-{b} is not an edge of the graph"
                )));
            }
            m.reflect[a - 1] |= 1 << (b - 1);
            m.reflect[b - 1] |= 1 << (a - 1);
        }
        Ok(m)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn is_refraction_only(&self) -> bool {
        self.reflect.iter().all(|&r| r == 0)
    }

    pub fn reflect_edges(&self) -> Vec<(usize, usize)> {
        self.graph.edges().filter(|&(a, b)| self.is_reflect(a, b)).collect()
    }

    pub fn refract_edges(&self) -> Vec<(usize, usize)> {
        self.graph.edges().filter(|&(a, b)| !self.is_reflect(a, b)).collect()
    }

    pub fn is_reflect(&self, a: usize, b: usize) -> bool {
        self.graph.has_edge(a, b) && (self.reflect[a - 1] >> (b - 1)) & 1 == 1
    }

    /// Edge kind on 0-based vertices.
    #[inline]
    pub(crate) fn kind0(&self, a: usize, b: usize) -> EdgeKind {
        if !self.graph.adjacent0(a, b) {
            EdgeKind::Window
        } else if (self.reflect[a] >> b) & 1 == 1 {
            EdgeKind::Reflect
        } else {
            EdgeKind::Refract
        }
    }

    pub fn edge_kind(&self, a: usize, b: usize) -> EdgeKind {
        self.kind0(a - 1, b - 1)
    }

    /// Every way of splitting the edges of `graph` into reflection and
    /// refraction edges, ordered by the bitmask of reflective edges.
    pub fn all_partitions(graph: &Graph) -> Vec<MaterializedGraph> {
        let edges: Vec<_> = graph.edges().collect();
        (0u64..1 << edges.len())
            .map(|sel| {
                let chosen: Vec<_> = bits(sel).map(|k| edges[k]).collect();
                MaterializedGraph::new(graph.clone(), &chosen).expect("edges come from the graph")
            })
            .collect()
    }

    pub fn wedge(&self, v1: usize, other: &MaterializedGraph, v2: usize) -> Result<Self> {
        let graph = self.graph.wedge(v1, &other.graph, v2)?;
        let map = wedge_relabeling(self.order(), v1, other.order(), v2);
        let mut reflect = self.reflect_edges();
        reflect.extend(other.reflect_edges().into_iter().map(|(a, b)| (map[a - 1], map[b - 1])));
        MaterializedGraph::new(graph, &reflect)
    }

    pub fn disjoint_union(&self, other: &MaterializedGraph) -> Result<Self> {
        let graph = self.graph.disjoint_union(&other.graph)?;
        let shift = self.order();
        let mut reflect = self.reflect_edges();
        reflect.extend(other.reflect_edges().into_iter().map(|(a, b)| (a + shift, b + shift)));
        MaterializedGraph::new(graph, &reflect)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::family;

    #[test]
    fn partition_invariants() {
        let c4 = family("cycle", &[4]).unwrap();
        let parts = MaterializedGraph::all_partitions(&c4);
        assert_eq!(parts.len(), 16);
        for m in &parts {
            let (r, f) = (m.reflect_edges(), m.refract_edges());
            assert_eq!(r.len() + f.len(), 4);
            assert!(r.iter().all(|e| !f.contains(e)));
        }
        assert!(parts[0].is_refraction_only());
    }

    #[test]
    fn reflect_edge_must_exist() {
        let p3 = family("path", &[3]).unwrap();
        assert!(MaterializedGraph::new(p3.clone(), &[(1, 3)]).is_err());
        let m = MaterializedGraph::new(p3, &[(2, 1)]).unwrap();
        assert_eq!(m.edge_kind(1, 2), EdgeKind::Reflect);
        assert_eq!(m.edge_kind(3, 2), EdgeKind::Refract);
        assert_eq!(m.edge_kind(1, 3), EdgeKind::Window);
    }

    #[test]
    fn wedge_keeps_reflect_labels() {
        let p2 = family("path", &[2]).unwrap();
        let r = MaterializedGraph::new(p2.clone(), &[(1, 2)]).unwrap();
        let w = MaterializedGraph::from(p2).wedge(2, &r, 1).unwrap();
        assert_eq!(w.reflect_edges(), vec![(2, 3)]);
        assert_eq!(w.refract_edges(), vec![(1, 2)]);
        let u = w.disjoint_union(&r).unwrap();
        assert_eq!(u.reflect_edges(), vec![(2, 3), (4, 5)]);
    }
}
