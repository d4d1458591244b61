use itertools::Itertools;

use super::graph6::pair_at;
use super::Graph;
use crate::error::{Error, Result};

/// Largest `n` for plain labelled enumeration (the mask must fit in 64 bits).
pub const MAX_LABELED_N: usize = 11;
/// Largest `n` for isomorphism-deduplicated enumeration (brute force over `S_n`).
pub const MAX_ISO_N: usize = 8;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub connected: bool,
    pub iso_dedup: bool,
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub fn labeled_graph_count(n: usize) -> u64 {
    1u64 << pair_count(n)
}

/// Graph whose edge set is the set bits of `mask`, bit `k` being the `k`-th
/// pair in graph6 column order.
pub fn graph_from_mask(n: usize, mask: u64) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    let mut m = mask;
    while m != 0 {
        let k = m.trailing_zeros() as usize;
        let (a, b) = pair_at(k);
        g.add_edge(a, b)?;
        m &= m - 1;
    }
    Ok(g)
}

pub fn graph_mask(g: &Graph) -> u64 {
    let n = g.order();
    (0..pair_count(n))
        .filter(|&k| {
            let (a, b) = pair_at(k);
            g.has_edge(a, b)
        })
        .fold(0, |acc, k| acc | 1 << k)
}

/// Precomputed material for brute-force canonicalization on `n` vertices.
struct Canonizer {
    pairs: Vec<(u8, u8)>,
    perms: Vec<Vec<u8>>,
}

impl Canonizer {
    fn new(n: usize) -> Self {
        let pairs = (0..pair_count(n))
            .map(|k| {
                let (a, b) = pair_at(k);
                ((a - 1) as u8, (b - 1) as u8)
            })
            .collect();
        let perms = (0..n as u8).permutations(n).collect();
        Canonizer { pairs, perms }
    }

    /// Bit `k` of the relabelled graph: pair `k = (i, j)` is an edge iff
    /// `{q(i), q(j)}` is an edge of `g`.
    #[inline]
    fn permuted_bit(rows: &[u64], q: &[u8], (i, j): (u8, u8)) -> u64 {
        (rows[q[i as usize] as usize] >> q[j as usize]) & 1
    }

    fn is_canonical(&self, rows: &[u64], mask: u64) -> bool {
        for q in &self.perms {
            for k in (0..self.pairs.len()).rev() {
                let hb = Self::permuted_bit(rows, q, self.pairs[k]);
                let gb = (mask >> k) & 1;
                if hb != gb {
                    if hb < gb {
                        return false;
                    }
                    break;
                }
            }
        }
        true
    }

    fn canonical_mask(&self, rows: &[u64]) -> u64 {
        self.perms
            .iter()
            .map(|q| {
                self.pairs
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (k, &p)| acc | Self::permuted_bit(rows, q, p) << k)
            })
            .min()
            .unwrap_or(0)
    }
}

/// Lexicographically minimal adjacency mask over all relabelings of `g`.
pub fn canonical_mask(g: &Graph) -> Result<u64> {
    check_iso_range(g.order())?;
    let rows: Vec<u64> = (0..g.order()).map(|v| g.row(v)).collect();
    Ok(Canonizer::new(g.order()).canonical_mask(&rows))
}

pub fn is_canonical(g: &Graph) -> Result<bool> {
    Ok(canonical_mask(g)? == graph_mask(g))
}

fn check_iso_range(n: usize) -> Result<()> {
    if n > MAX_ISO_N {
        Err(Error::OutOfRange(format!(
            "isomorphism dedup supports n <= {MAX_ISO_N} (got {n})"
        )))
    } else {
        Ok(())
    }
}

/// All labelled graphs on `n` vertices in increasing mask order, optionally
/// filtered to connected graphs and/or canonical representatives.
pub struct GraphEnumerator {
    n: usize,
    options: EnumerateOptions,
    next: u64,
    end: u64,
    canon: Option<Canonizer>,
}

impl GraphEnumerator {
    pub fn new(n: usize, options: EnumerateOptions) -> Result<Self> {
        Self::with_range(n, options, 0, labeled_graph_count(n.min(MAX_LABELED_N)))
    }

    /// Restricts enumeration to masks in `start..end`, for sharding.
    pub fn with_range(n: usize, options: EnumerateOptions, start: u64, end: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if n > MAX_LABELED_N {
            return Err(Error::OutOfRange(format!(
                "labelled enumeration supports n <= {MAX_LABELED_N} (got {n})"
            )));
        }
        if options.iso_dedup {
            check_iso_range(n)?;
        }
        Ok(GraphEnumerator {
            n,
            options,
            next: start,
            end: end.min(labeled_graph_count(n)),
            canon: options.iso_dedup.then(|| Canonizer::new(n)),
        })
    }
}

impl Iterator for GraphEnumerator {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            let g = graph_from_mask(self.n, mask).expect("n validated");
            if self.options.connected && !g.is_connected() {
                continue;
            }
            if let Some(c) = &self.canon {
                let rows: Vec<u64> = (0..self.n).map(|v| g.row(v)).collect();
                if !c.is_canonical(&rows, mask) {
                    continue;
                }
            }
            return Some(g);
        }
        None
    }
}
