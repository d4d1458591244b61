use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graphs::{
    all_prufer_sequences, canonical_mask, labeled_graph_count, pair_count, prufer_tree, EnumerateOptions, Graph,
    GraphEnumerator,
};

/// Instances standing in for "all graphs on `n` vertices".
pub struct GraphSource {
    pub graphs: Vec<Graph>,
    /// `exhaustive`, `iso-dedup` or `sampled`.
    pub mode: &'static str,
}

/// All labelled graphs for `n <= 6`, one per isomorphism class at `n = 7`,
/// and `samples` seeded random graphs above.
pub fn graphs_for_order(n: usize, seed: u64, samples: usize) -> Result<GraphSource> {
    if n <= 6 {
        let graphs = GraphEnumerator::new(n, EnumerateOptions::default())?.collect();
        return Ok(GraphSource {
            graphs,
            mode: "exhaustive",
        });
    }
    if n == 7 {
        let opts = EnumerateOptions {
            connected: false,
            iso_dedup: true,
        };
        let graphs = GraphEnumerator::new(n, opts)?.collect();
        return Ok(GraphSource {
            graphs,
            mode: "iso-dedup",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let full = labeled_graph_count(n) - 1;
    let graphs = (0..samples)
        .map(|_| {
            let mask = rng.gen::<u64>() & full;
            crate::graphs::graph_from_mask(n, mask)
        })
        .collect::<Result<_>>()?;
    debug_assert!(pair_count(n) < 64);
    Ok(GraphSource {
        graphs,
        mode: "sampled",
    })
}

/// One labelled tree per isomorphism class on `m` vertices (`2 <= m <= 8`).
pub fn unlabeled_trees(m: usize) -> Result<Vec<Graph>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for seq in all_prufer_sequences(m) {
        let t = prufer_tree(&seq)?;
        if seen.insert(canonical_mask(&t)?) {
            out.push(t);
        }
    }
    Ok(out)
}

/// AHU encoding of the tree rooted at 0-based `v` (entered from `parent`).
fn rooted_code(t: &Graph, v: usize, parent: Option<usize>) -> String {
    let mut children: Vec<String> = t
        .neighbors(v + 1)
        .into_iter()
        .map(|u| u - 1)
        .filter(|&u| Some(u) != parent)
        .map(|u| rooted_code(t, u, Some(v)))
        .collect();
    children.sort();
    format!("({})", children.concat())
}

/// One representative `(tree, root)` per rooted-tree isomorphism class with
/// `1..=max_size` vertices, smallest first. The root is a 1-based label.
pub fn rooted_trees(max_size: usize) -> Result<Vec<(Graph, usize)>> {
    let mut out = vec![(Graph::empty(1)?, 1)];
    for m in 2..=max_size {
        let mut seen = BTreeSet::new();
        for t in unlabeled_trees(m)? {
            for root in 1..=m {
                if seen.insert(rooted_code(&t, root - 1, None)) {
                    out.push((t.clone(), root));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_class_counts() {
        // unlabelled trees: 1, 1, 1, 2, 3, 6, 11
        let counts: Vec<usize> = (2..=7).map(|m| unlabeled_trees(m).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 6, 11]);
        // rooted trees on 1..=5 vertices: 1, 1, 2, 4, 9
        assert_eq!(rooted_trees(5).unwrap().len(), 1 + 1 + 2 + 4 + 9);
    }

    #[test]
    fn sources_by_order() {
        assert_eq!(graphs_for_order(4, 1, 10).unwrap().graphs.len(), 64);
        let s7 = graphs_for_order(7, 1, 10).unwrap();
        assert_eq!((s7.mode, s7.graphs.len()), ("iso-dedup", 1044));
        let a = graphs_for_order(8, 7, 5).unwrap();
        let b = graphs_for_order(8, 7, 5).unwrap();
        assert_eq!(a.mode, "sampled");
        assert_eq!(a.graphs, b.graphs);
        assert_ne!(a.graphs, graphs_for_order(8, 8, 5).unwrap().graphs);
    }
}
