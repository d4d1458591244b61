//! Counterexample searches for the open conjectures. A search collects every
//! counterexample in its slice instead of stopping at the first.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::json;

use super::checks::{cls, counterexample};
use super::families::unlabeled_trees;
use super::{evaluate, Counterexample, Params, Tally};
use crate::error::{Error, Result};
use crate::graphs::{canonical_mask, family, EnumerateOptions, Graph, GraphEnumerator, MaterializedGraph};
use crate::orbits::{all_orbits, MAX_ORBIT_N};

pub(crate) fn dispatch(id: &str, p: &Params) -> Result<Tally> {
    match id {
        "wedge-nonensnaring" => wedge_nonensnaring(p),
        "compl-parity" => compl_parity(p),
        "compl-tree" => compl_tree(p),
        "orbit-sizes" => orbit_sizes(p),
        _ => Err(Error::UnknownConjecture(id.to_string())),
    }
}

fn bounded(hi: usize) -> Result<usize> {
    if hi > MAX_ORBIT_N {
        return Err(Error::OutOfRange(format!(
            "this search supports n <= {MAX_ORBIT_N} (got {hi})"
        )));
    }
    Ok(hi)
}

fn iso_classes(n: usize) -> Result<Vec<Graph>> {
    let opts = EnumerateOptions {
        connected: false,
        iso_dedup: true,
    };
    Ok(GraphEnumerator::new(n, opts)?.collect())
}

/// Wedges of two non-ensnaring graphs, one per isomorphism class of wedge.
fn wedge_nonensnaring(p: &Params) -> Result<Tally> {
    let max_part = p.max_part.unwrap_or(4);
    let hi = bounded(p.max_n.unwrap_or(7))?;
    if max_part > 7 {
        return Err(Error::OutOfRange(format!(
            "parts support up to 7 vertices (got {max_part})"
        )));
    }
    let mut parts = Vec::new();
    for k in 2..=max_part {
        for g in iso_classes(k)? {
            if !cls(&g)?.is_ensnaring() {
                parts.push(g);
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut items = Vec::new();
    for i in 0..parts.len() {
        for j in i..parts.len() {
            let (a, b) = (&parts[i], &parts[j]);
            if a.order() + b.order() - 1 > hi {
                continue;
            }
            for v1 in 1..=a.order() {
                for v2 in 1..=b.order() {
                    let w = a.wedge(v1, b, v2)?;
                    if seen.insert((w.order(), canonical_mask(&w)?)) {
                        items.push(w);
                    }
                }
            }
        }
    }
    let out = evaluate(&items, |g| {
        let c = cls(g)?;
        Ok(c.is_ensnaring().then(|| {
            counterexample(
                &g.clone().into(),
                "wedge of non-ensnaring graphs is ensnaring".into(),
                Some(&c),
            )
        }))
    })?;
    Ok(Tally {
        range: format!("non-ensnaring parts on 2..={max_part} vertices, wedge n<={hi}"),
        instances: out.0,
        failures: out.1,
        seed: None,
    })
}

/// For each `H`, whether `compl_n(H)` is ensnaring must agree across all `n`
/// of the same parity.
fn compl_parity(p: &Params) -> Result<Tally> {
    let max_part = p.max_part.unwrap_or(4);
    let hi = bounded(p.max_n.unwrap_or(8))?;
    let mut items = Vec::new();
    for k in 1..=max_part.min(hi.saturating_sub(1)) {
        items.extend(iso_classes(k)?);
    }
    let out = evaluate(&items, |h| {
        let mut by_parity: [BTreeMap<usize, bool>; 2] = Default::default();
        // Two-vertex graphs are classified by convention, not by the dynamics.
        for n in (h.order() + 1).max(3)..=hi {
            by_parity[n % 2].insert(n, cls(&h.compl_n(n)?)?.is_ensnaring());
        }
        let constant = by_parity
            .iter()
            .all(|m| m.values().all(|&e| Some(&e) == m.values().next()));
        if constant {
            return Ok(None);
        }
        let fmt = |m: &BTreeMap<usize, bool>| {
            m.iter()
                .map(|(n, e)| format!("{n}:{}", if *e { "E" } else { "-" }))
                .collect::<Vec<_>>()
                .join(",")
        };
        Ok(Some(Counterexample {
            graph: crate::graphs::print_spec(&h.clone().into()),
            detail: format!("ensnaring by n: even {} odd {}", fmt(&by_parity[0]), fmt(&by_parity[1])),
            witness: Some(json!({ "even": by_parity[0], "odd": by_parity[1] })),
        }))
    })?;
    Ok(Tally {
        range: format!("H on 1..={max_part} vertices up to isomorphism, max(m+1,3)<=n<={hi}"),
        instances: out.0,
        failures: out.1,
        seed: None,
    })
}

/// For a tree `T` on `m` vertices and even `n > m`, `compl_n(T)` is
/// ensnaring exactly when `m` is odd.
fn compl_tree(p: &Params) -> Result<Tally> {
    let max_part = p.max_part.unwrap_or(5);
    let hi = bounded(p.max_n.unwrap_or(8))?;
    if max_part > 8 {
        return Err(Error::OutOfRange(format!(
            "trees support up to 8 vertices (got {max_part})"
        )));
    }
    let mut items = Vec::new();
    for m in 2..=max_part {
        for t in unlabeled_trees(m)? {
            for n in (m + 1..=hi).filter(|n| n % 2 == 0) {
                items.push((m, t.compl_n(n)?, t.clone()));
            }
        }
    }
    let out = evaluate(&items, |(m, g, t)| {
        let expect = m % 2 == 1;
        let c = cls(g)?;
        Ok((c.is_ensnaring() != expect).then(|| {
            let tree = crate::graphs::print_spec(&t.clone().into());
            counterexample(
                &g.clone().into(),
                format!("compl_{}({tree}) ensnaring={}", g.order(), c.is_ensnaring()),
                Some(&c),
            )
        }))
    })?;
    Ok(Tally {
        range: format!("trees on 2..={max_part} vertices, even n<={hi}"),
        instances: out.0,
        failures: out.1,
        seed: None,
    })
}

pub(crate) fn orbit_size_formula(m: usize, n: usize) -> u64 {
    6 * (m * n + 4 - n - 3 * m) as u64
}

/// Every orbit of `compl_n(P_m)` (odd `m`, even `n`) has period 6 or
/// `6(mn - n - 3m + 4)`.
fn orbit_sizes(p: &Params) -> Result<Tally> {
    let pairs: Vec<(usize, usize)> = match (p.m, p.n) {
        (Some(m), Some(n)) => {
            if m % 2 == 0 || n % 2 == 1 || m < 3 || n <= m {
                return Err(Error::InvalidParameter(format!(
                    "orbit-sizes needs odd m >= 3 and even n > m (got m={m}, n={n})"
                )));
            }
            bounded(n)?;
            vec![(m, n)]
        }
        (None, None) => {
            let hi = bounded(p.max_n.unwrap_or(8))?;
            let mut v = Vec::new();
            for m in (3..hi).step_by(2) {
                for n in (m + 1..=hi).filter(|n| n % 2 == 0) {
                    v.push((m, n));
                }
            }
            v
        }
        _ => {
            return Err(Error::InvalidParameter(
                "orbit-sizes needs both m and n, or neither".into(),
            ))
        }
    };
    let mut failures = Vec::new();
    let workers = rayon::current_num_threads().max(1);
    for &(m, n) in &pairs {
        let g = MaterializedGraph::from(family("path", &[m])?.compl_n(n)?);
        let expected = orbit_size_formula(m, n);
        let mut periods = BTreeMap::new();
        for o in all_orbits(&g, workers)? {
            *periods.entry(o.period).or_insert(0u64) += 1;
        }
        let bad: Vec<u64> = periods.keys().copied().filter(|&q| q != 6 && q != expected).collect();
        if !bad.is_empty() {
            failures.push(Counterexample {
                graph: crate::graphs::print_spec(&g),
                detail: format!("compl_{n}(P_{m}) has periods {bad:?}, expected 6 or {expected}"),
                witness: Some(json!({ "m": m, "n": n, "periods": periods })),
            });
        }
    }
    let range = pairs
        .iter()
        .map(|(m, n)| format!("({m},{n})"))
        .collect::<Vec<_>>()
        .join(" ");
    Ok(Tally {
        range: format!("compl_n(P_m) for (m,n) in {range}"),
        instances: pairs.len() as u64,
        failures,
        seed: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{run_conjecture, ConjectureStatus, CONJECTURE_IDS};

    #[test]
    fn formula_values() {
        assert_eq!(orbit_size_formula(3, 6), 42);
        assert_eq!(orbit_size_formula(3, 8), 66);
        assert_eq!(orbit_size_formula(5, 8), 126);
    }

    #[test]
    fn orbit_sizes_small_slice() {
        let p = Params {
            m: Some(3),
            n: Some(6),
            ..Params::default()
        };
        let r = run_conjecture("orbit-sizes", &p).unwrap();
        assert_eq!(r.status, ConjectureStatus::Consistent, "{}", r.summary_line());
        let bad = Params {
            m: Some(4),
            n: Some(6),
            ..Params::default()
        };
        assert!(matches!(
            run_conjecture("orbit-sizes", &bad),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn every_id_runs_on_a_small_slice() {
        for id in CONJECTURE_IDS {
            let p = Params {
                max_n: Some(6),
                max_part: Some(3),
                ..Params::default()
            };
            let r = run_conjecture(id, &p).unwrap();
            assert!(r.instances > 0, "{id}");
            assert_eq!(r.status == ConjectureStatus::Refuted, !r.counterexamples.is_empty());
        }
        assert!(run_conjecture("nope", &Params::default()).is_err());
        assert!(run_conjecture("compl-tree", &Params::with_max_n(11))
            .unwrap_err()
            .is_range_error());
    }
}
