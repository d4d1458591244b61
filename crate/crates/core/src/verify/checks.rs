//! One finite-range check per classification theorem.

use serde_json::json;

use super::families::{graphs_for_order, rooted_trees};
use super::{evaluate, Counterexample, Params, Tally};
use crate::classify::{classify, Classification, Kind};
use crate::dynamics::{state_count, step, BilliardState, Orientation};
use crate::error::{Error, Result};
use crate::graphs::{all_prufer_sequences, family, print_spec, prufer_tree, Graph, MaterializedGraph};
use crate::orbits::{orbit_states, orbit_summary, trace, MAX_ORBIT_N};

/// Largest order for checks that quantify over all graphs of an order.
const ALL_GRAPHS_CEILING: usize = 8;

pub(crate) fn dispatch(id: &str, p: &Params) -> Result<Tally> {
    match id {
        "expelling-bipartite" => expelling_bipartite(p),
        "complete" => complete(p),
        "cycles" => cycles(p),
        "wedge" => wedge(p),
        "union" => union(p),
        "rev-cycles" => rev_cycles(p),
        "wedge-complete-orbit" => wedge_complete_orbit(p),
        "complete-tree" => complete_tree(p),
        "multitree" => multitree(p),
        "local-config" => local_config(p),
        "compl-components" => compl_components(p),
        "compl-complete" => compl_complete(p),
        "compl-bipartite" => compl_bipartite(p),
        "mat-cycle" => mat_cycle(p),
        _ => Err(Error::UnknownCheck(id.to_string())),
    }
}

pub(crate) fn cls(g: &Graph) -> Result<Classification> {
    classify(&MaterializedGraph::from(g.clone()))
}

pub(crate) fn counterexample(m: &MaterializedGraph, detail: String, c: Option<&Classification>) -> Counterexample {
    Counterexample {
        graph: print_spec(m),
        detail,
        witness: c.map(Classification::to_json),
    }
}

fn fail(g: &Graph, detail: String, c: &Classification) -> Counterexample {
    counterexample(&g.clone().into(), detail, Some(c))
}

fn kind_name(c: &Classification) -> &'static str {
    match c.kind {
        Kind::Ensnaring => "ensnaring",
        Kind::Expelling => "expelling",
        Kind::Mixed => "mixed",
    }
}

/// Graphs of every order in range, with the seed if any order was sampled.
fn all_graphs(p: &Params, lo: usize, hi: usize) -> Result<(Vec<Graph>, Option<u64>)> {
    let (lo, hi) = p.range(lo, hi, ALL_GRAPHS_CEILING)?;
    let mut graphs = Vec::new();
    let mut seed = None;
    for n in lo.max(1)..=hi {
        let src = graphs_for_order(n, p.seed, p.samples)?;
        if src.mode == "sampled" {
            seed = Some(p.seed);
        }
        graphs.extend(src.graphs);
    }
    Ok((graphs, seed))
}

fn tally(range: String, (instances, failures): (u64, Vec<Counterexample>), seed: Option<u64>) -> Tally {
    Tally {
        range,
        instances,
        failures,
        seed,
    }
}

fn expelling_bipartite(p: &Params) -> Result<Tally> {
    let (graphs, seed) = all_graphs(p, 1, 6)?;
    let (lo, hi) = p.range(1, 6, ALL_GRAPHS_CEILING)?;
    let out = evaluate(&graphs, |g| {
        let c = cls(g)?;
        let bipartite = g.is_bipartite().is_some();
        Ok((c.is_expelling() != bipartite)
            .then(|| fail(g, format!("bipartite={bipartite} but classified {}", kind_name(&c)), &c)))
    })?;
    Ok(tally(format!("all graphs, n={lo}..={hi}"), out, seed))
}

fn complete(p: &Params) -> Result<Tally> {
    let (lo, hi) = p.range(3, 8, MAX_ORBIT_N)?;
    let orders: Vec<usize> = (lo.max(3)..=hi).collect();
    let out = evaluate(&orders, |&n| {
        let g = family("complete", &[n])?;
        let c = cls(&g)?;
        if !c.is_ensnaring() || c.revolutionary {
            return Ok(Some(fail(
                &g,
                format!("K_{n} classified {} revolutionary={}", kind_name(&c), c.revolutionary),
                &c,
            )));
        }
        let m = MaterializedGraph::from(g.clone());
        for idx in 0..state_count(n) {
            let s = BilliardState::from_index(n, idx)?;
            let (_, ev) = step(&m, &s);
            if ev.stone_delta != 0 {
                return Ok(Some(fail(&g, format!("stone moves from state {s}"), &c)));
            }
        }
        Ok(None)
    })?;
    Ok(tally(format!("K_n, n={lo}..={hi}"), out, None))
}

fn cycles(p: &Params) -> Result<Tally> {
    let (lo, hi) = p.range(3, 9, MAX_ORBIT_N)?;
    let orders: Vec<usize> = (lo.max(3)..=hi).collect();
    let out = evaluate(&orders, |&n| {
        let g = family("cycle", &[n])?;
        let c = cls(&g)?;
        let odd = n % 2 == 1;
        Ok((c.is_ensnaring() != odd).then(|| fail(&g, format!("C_{n} classified {}", kind_name(&c)), &c)))
    })?;
    Ok(tally(format!("C_n, n={lo}..={hi}"), out, None))
}

/// Odd cycles are revolutionary exactly from five vertices on, and the stone
/// started at the identity drifts `n - 3` positions counterclockwise every
/// `n - 1` steps.
fn rev_cycles(p: &Params) -> Result<Tally> {
    let (lo, hi) = p.range(3, 9, MAX_ORBIT_N)?;
    let orders: Vec<usize> = (lo.max(3)..=hi).filter(|n| n % 2 == 1).collect();
    let out = evaluate(&orders, |&n| {
        let g = family("cycle", &[n])?;
        let c = cls(&g)?;
        if c.revolutionary != (n >= 5) {
            return Ok(Some(fail(&g, format!("C_{n} revolutionary={}", c.revolutionary), &c)));
        }
        let m = MaterializedGraph::from(g.clone());
        let start = BilliardState::identity(n, 1, Orientation::Clockwise)?;
        let laps = 3;
        let records = trace(&m, &start, (laps * (n - 1)) as u64)?;
        for l in 1..=laps {
            let r = &records[l * (n - 1) - 1];
            let expected = -((l * (n - 3)) as i64);
            if r.stone_cumulative != expected {
                return Ok(Some(fail(
                    &g,
                    format!(
                        "stone at {} after {} steps, expected {expected}",
                        r.stone_cumulative, r.step
                    ),
                    &c,
                )));
            }
        }
        Ok(None)
    })?;
    Ok(tally(format!("odd C_n, n={lo}..={hi}"), out, None))
}

fn named(name: &str) -> Result<Graph> {
    let (fam, k) = name.split_at(1);
    let k: usize = k.parse().map_err(|_| Error::InvalidParameter(name.to_string()))?;
    match fam {
        "K" => family("complete", &[k]),
        "C" => family("cycle", &[k]),
        "P" => family("path", &[k]),
        _ => Err(Error::UnknownFamily(name.to_string())),
    }
}

fn wedge(p: &Params) -> Result<Tally> {
    let (_, hi) = p.range(0, 8, MAX_ORBIT_N)?;
    let parts = ["K3", "K4", "C5", "C7"].map(named);
    let parts: Vec<Graph> = parts.into_iter().collect::<Result<_>>()?;
    let mut items = Vec::new();
    for i in 0..parts.len() {
        for j in i..parts.len() {
            let (a, b) = (&parts[i], &parts[j]);
            if a.order() + b.order() - 1 > hi {
                continue;
            }
            for v1 in 1..=a.order() {
                for v2 in 1..=b.order() {
                    items.push(a.wedge(v1, b, v2)?);
                }
            }
        }
    }
    let out = evaluate(&items, |g| {
        let c = cls(g)?;
        Ok((!c.is_ensnaring()).then(|| fail(g, format!("wedge classified {}", kind_name(&c)), &c)))
    })?;
    Ok(tally(format!("wedges of K3,K4,C5,C7 with n<={hi}"), out, None))
}

fn union(p: &Params) -> Result<Tally> {
    let (_, hi) = p.range(0, 8, MAX_ORBIT_N)?;
    let names = ["K3", "K4", "C3", "C5", "P2", "P3"];
    let parts: Vec<(Graph, Classification)> = names
        .iter()
        .map(|s| {
            let g = named(s)?;
            let c = cls(&g)?;
            Ok((g, c))
        })
        .collect::<Result<_>>()?;
    let mut items = Vec::new();
    for (a, ca) in &parts {
        for (b, cb) in &parts {
            if a.order() + b.order() <= hi {
                let expect = ca.is_ensnaring() && !ca.revolutionary && cb.is_ensnaring() && !cb.revolutionary;
                items.push((a.disjoint_union(b)?, expect));
            }
        }
    }
    let out = evaluate(&items, |(g, expect)| {
        let c = cls(g)?;
        Ok((c.is_ensnaring() != *expect).then(|| {
            fail(
                g,
                format!("expected ensnaring={expect}, classified {}", kind_name(&c)),
                &c,
            )
        }))
    })?;
    Ok(tally(format!("unions of K3,K4,C3,C5,P2,P3 with n<={hi}"), out, None))
}

/// Every state whose coin sits on a non-glued vertex of the clique lies in a
/// contractible orbit.
fn wedge_complete_orbit(p: &Params) -> Result<Tally> {
    let max_part = p.max_part.unwrap_or(4);
    let mut items = Vec::new();
    for k in 3..=4 {
        let clique = family("complete", &[k])?;
        for h_order in 1..=max_part {
            if k + h_order - 1 > MAX_ORBIT_N {
                return Err(Error::OutOfRange(format!(
                    "wedge order {} exceeds {MAX_ORBIT_N}",
                    k + h_order - 1
                )));
            }
            for h in graphs_for_order(h_order, p.seed, p.samples)?.graphs {
                for v in 1..=h_order {
                    items.push((k, clique.wedge(1, &h, v)?));
                }
            }
        }
    }
    let out = evaluate(&items, |(k, g)| {
        let m = MaterializedGraph::from(g.clone());
        let n = g.order();
        let total = state_count(n);
        let mut seen = vec![false; total as usize];
        for idx in 0..total {
            if seen[idx as usize] {
                continue;
            }
            let s = BilliardState::from_index(n, idx)?;
            let coin = s.coin_vertex();
            if !(2..=*k).contains(&coin) {
                continue;
            }
            for t in orbit_states(&m, &s)? {
                seen[t.index() as usize] = true;
            }
            let o = orbit_summary(&m, &s)?;
            if !o.contractible {
                return Ok(Some(Counterexample {
                    graph: print_spec(&m),
                    detail: format!("state {s} has coin on clique vertex {coin} but its orbit winds"),
                    witness: Some(o.to_json()),
                }));
            }
        }
        Ok(None)
    })?;
    Ok(tally(
        format!("K_3,K_4 wedged with all graphs on <={max_part} vertices"),
        out,
        None,
    ))
}

fn complete_tree(p: &Params) -> Result<Tally> {
    let max_part = p.max_part.unwrap_or(4);
    if 4 + max_part - 1 > MAX_ORBIT_N {
        return Err(Error::OutOfRange(format!(
            "trees on up to {max_part} vertices exceed n={MAX_ORBIT_N}"
        )));
    }
    let mut trees = vec![Graph::empty(1)?];
    for m in 2..=max_part {
        for seq in all_prufer_sequences(m) {
            trees.push(prufer_tree(&seq)?);
        }
    }
    let mut items = Vec::new();
    for k in 3..=4 {
        let clique = family("complete", &[k])?;
        for t in &trees {
            for c in 1..=k {
                for v in 1..=t.order() {
                    items.push(clique.wedge(c, t, v)?);
                }
            }
        }
    }
    let out = evaluate(&items, |g| {
        let c = cls(g)?;
        Ok((!c.is_ensnaring()).then(|| fail(g, format!("classified {}", kind_name(&c)), &c)))
    })?;
    Ok(tally(
        format!("K_3,K_4 wedged with labelled trees on <={max_part} vertices"),
        out,
        None,
    ))
}

/// Nondecreasing sequences of rooted-tree indices of length `slots` whose
/// extra vertices sum to at most `budget`.
fn multisets(sizes: &[usize], slots: usize, budget: usize) -> Vec<Vec<usize>> {
    fn go(sizes: &[usize], from: usize, slots: usize, budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == slots {
            out.push(cur.clone());
            return;
        }
        for i in from..sizes.len() {
            let extra = sizes[i] - 1;
            if extra <= budget {
                cur.push(i);
                go(sizes, i, slots, budget - extra, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(sizes, 0, slots, budget, &mut Vec::new(), &mut out);
    out
}

/// A rooted tree on every clique vertex, composed in ascending clique order.
fn multitree(p: &Params) -> Result<Tally> {
    let (_, hi) = p.range(0, 8, MAX_ORBIT_N)?;
    let rooted = rooted_trees(hi.saturating_sub(2).max(1))?;
    let sizes: Vec<usize> = rooted.iter().map(|(t, _)| t.order()).collect();
    let mut items = Vec::new();
    for k in 3..=hi {
        let clique = family("complete", &[k])?;
        for choice in multisets(&sizes, k, hi - k) {
            let mut g = clique.clone();
            for (c, &i) in choice.iter().enumerate() {
                let (t, root) = &rooted[i];
                g = g.wedge(c + 1, t, *root)?;
            }
            items.push(g);
        }
    }
    let out = evaluate(&items, |g| {
        let c = cls(g)?;
        Ok((!c.is_ensnaring()).then(|| fail(g, format!("classified {}", kind_name(&c)), &c)))
    })?;
    Ok(tally(
        format!("K_m with rooted trees on each vertex, n<={hi}"),
        out,
        None,
    ))
}

fn local_config(p: &Params) -> Result<Tally> {
    let (graphs, seed) = all_graphs(p, 1, 6)?;
    let (lo, hi) = p.range(1, 6, ALL_GRAPHS_CEILING)?;
    let out = evaluate(&graphs, |g| {
        let Some((a, b, c, d)) = g.has_local_blocking_config() else {
            return Ok(None);
        };
        let cl = cls(g)?;
        Ok(cl
            .is_ensnaring()
            .then(|| fail(g, format!("configuration a={a} b={b} c={c} d={d} but ensnaring"), &cl)))
    })?;
    Ok(tally(format!("all graphs, n={lo}..={hi}"), out, seed))
}

fn compl_components(p: &Params) -> Result<Tally> {
    let (graphs, seed) = all_graphs(p, 3, 5)?;
    let (lo, hi) = p.range(3, 5, ALL_GRAPHS_CEILING)?;
    let out = evaluate(&graphs, |g| {
        let c = cls(g)?;
        let mut all = true;
        let mut parts = Vec::new();
        for comp in g.complement_components() {
            let ens = cls(&g.isolate_complement_component(&comp)?)?.is_ensnaring();
            parts.push(json!({ "component": comp, "ensnaring": ens }));
            all &= ens;
        }
        if c.is_ensnaring() == all {
            return Ok(None);
        }
        let mut ce = counterexample(
            &g.clone().into(),
            format!("classified {} but components ensnaring={all}", kind_name(&c)),
            Some(&c),
        );
        ce.witness = Some(json!({ "classification": c.to_json(), "components": parts }));
        Ok(Some(ce))
    })?;
    Ok(tally(format!("all graphs, n={lo}..={hi}"), out, seed))
}

fn compl_complete(p: &Params) -> Result<Tally> {
    let (lo, hi) = p.range(2, 7, MAX_ORBIT_N)?;
    let mut items = Vec::new();
    for n in lo.max(2)..=hi {
        for m in 2..=n {
            items.push((m, family("complete", &[m])?.compl_n(n)?));
        }
    }
    let out = evaluate(&items, |(m, g)| {
        let c = cls(g)?;
        Ok(c.is_ensnaring()
            .then(|| fail(g, format!("compl_{}(K_{m}) is ensnaring", g.order()), &c)))
    })?;
    Ok(tally(
        format!("compl_n(K_m), 2<=m<=n, n={}..={hi}", lo.max(2)),
        out,
        None,
    ))
}

fn compl_bipartite(p: &Params) -> Result<Tally> {
    let (lo, hi) = p.range(3, 7, MAX_ORBIT_N)?;
    let mut items = Vec::new();
    for n in lo.max(3)..=hi {
        for l in 1..n {
            for r in 1..n - l {
                items.push((l, r, family("kbip", &[l, r])?.compl_n(n)?));
            }
        }
    }
    let out = evaluate(&items, |(l, r, g)| {
        let n = g.order();
        let expect = (n - l - r) % 2 == 1 && (*l, *r) != (1, 1);
        let c = cls(g)?;
        Ok((c.is_ensnaring() != expect).then(|| {
            fail(
                g,
                format!(
                    "compl_{n}(K_{{{l},{r}}}): expected ensnaring={expect}, classified {}",
                    kind_name(&c)
                ),
                &c,
            )
        }))
    })?;
    Ok(tally(
        format!("compl_n(K_(l,r)), l+r<n, n={}..={hi}", lo.max(3)),
        out,
        None,
    ))
}

fn mat_cycle(p: &Params) -> Result<Tally> {
    let (lo, hi) = p.range(3, 7, MAX_ORBIT_N)?;
    let mut items = Vec::new();
    for n in lo.max(3)..=hi {
        items.extend(MaterializedGraph::all_partitions(&family("cycle", &[n])?));
    }
    let out = evaluate(&items, |m| {
        let k = m.refract_edges().len();
        let expect = if k == 0 || k % 2 == 1 {
            Kind::Ensnaring
        } else {
            Kind::Expelling
        };
        let c = classify(m)?;
        Ok((c.kind != expect).then(|| {
            counterexample(
                m,
                format!("{k} refraction edges, classified {}", kind_name(&c)),
                Some(&c),
            )
        }))
    })?;
    Ok(tally(format!("edge partitions of C_n, n={lo}..={hi}"), out, None))
}
