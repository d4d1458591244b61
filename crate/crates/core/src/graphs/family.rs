use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Named graph families with their standard labelings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Complete(usize),
    /// Edges `{i, i+1}` plus `{n, 1}`.
    Cycle(usize),
    Path(usize),
    /// Vertices `1..=l` against `l+1..=l+r`.
    CompleteBipartite(usize, usize),
    /// Centre `1`, leaves `2..=n`.
    Star(usize),
    /// Labelled tree decoded from a Prüfer sequence over `1..=len+2`.
    Prufer(Vec<usize>),
}

impl Family {
    pub fn build(&self) -> Result<Graph> {
        match self {
            Family::Complete(n) => {
                need(*n >= 1, "complete graph needs n >= 1")?;
                Ok(Graph::empty(*n)?.complement())
            }
            Family::Cycle(n) => {
                need(*n >= 3, "cycle needs n >= 3")?;
                let mut edges: Vec<_> = (1..*n).map(|i| (i, i + 1)).collect();
                edges.push((*n, 1));
                Graph::from_edges(*n, &edges)
            }
            Family::Path(n) => {
                need(*n >= 1, "path needs n >= 1")?;
                let edges: Vec<_> = (1..*n).map(|i| (i, i + 1)).collect();
                Graph::from_edges(*n, &edges)
            }
            Family::CompleteBipartite(l, r) => {
                need(*l >= 1 && *r >= 1, "complete bipartite graph needs both parts nonempty")?;
                let mut edges = Vec::with_capacity(l * r);
                for a in 1..=*l {
                    for b in l + 1..=l + r {
                        edges.push((a, b));
                    }
                }
                Graph::from_edges(l + r, &edges)
            }
            Family::Star(n) => {
                need(*n >= 2, "star needs n >= 2")?;
                let edges: Vec<_> = (2..=*n).map(|b| (1, b)).collect();
                Graph::from_edges(*n, &edges)
            }
            Family::Prufer(seq) => prufer_tree(seq),
        }
    }
}

fn need(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.into()))
    }
}

/// Builds a family member by name: `complete`, `cycle`, `path`, `kbip`,
/// `star` or `prufer`.
pub fn family(name: &str, params: &[usize]) -> Result<Graph> {
    let one = |what: &str| -> Result<usize> {
        match params {
            [n] => Ok(*n),
            _ => Err(Error::InvalidParameter(format!("{what} takes exactly one parameter"))),
        }
    };
    let fam = match name {
        "complete" => Family::Complete(one("complete")?),
        "cycle" => Family::Cycle(one("cycle")?),
        "path" => Family::Path(one("path")?),
        "star" => Family::Star(one("star")?),
        "kbip" => match params {
            [l, r] => Family::CompleteBipartite(*l, *r),
            _ => return Err(Error::InvalidParameter("kbip takes two parameters".into())),
        },
        "prufer" => Family::Prufer(params.to_vec()),
        other => return Err(Error::UnknownFamily(other.into())),
    };
    fam.build()
}

/// Decodes a Prüfer sequence of length `m - 2` over `1..=m` into the labelled
/// tree on `m` vertices.
pub fn prufer_tree(seq: &[usize]) -> Result<Graph> {
    let m = seq.len() + 2;
    if let Some(&bad) = seq.iter().find(|&&x| x == 0 || x > m) {
        return Err(Error::InvalidParameter(format!("Prüfer entry {bad} outside 1..={m}")));
    }
    let mut degree = vec![1usize; m + 1];
    for &x in seq {
        degree[x] += 1;
    }
    let mut g = Graph::empty(m)?;
    for &x in seq {
        let leaf = (1..=m).find(|&v| degree[v] == 1).expect("a leaf always exists");
        g.add_edge(leaf, x)?;
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (1..=m).filter(|&v| degree[v] == 1).collect();
    g.add_edge(rest[0], rest[1])?;
    Ok(g)
}

/// Every Prüfer sequence for trees on `m >= 2` vertices, in lexicographic order.
pub fn all_prufer_sequences(m: usize) -> Vec<Vec<usize>> {
    assert!(m >= 2, "trees need at least two vertices");
    let len = m - 2;
    let total = m.pow(len as u32);
    (0..total)
        .map(|mut code| {
            let mut seq = vec![0; len];
            for slot in seq.iter_mut().rev() {
                *slot = code % m + 1;
                code /= m;
            }
            seq
        })
        .collect()
}

/// Uniformly random labelled tree on `m >= 2` vertices, as a Prüfer sequence.
pub fn random_prufer_sequence<R: Rng>(m: usize, rng: &mut R) -> Vec<usize> {
    (0..m.saturating_sub(2)).map(|_| rng.gen_range(1..=m)).collect()
}
