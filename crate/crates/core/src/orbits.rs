//! Orbit tracing, winding vectors and the partition of the state space.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use serde_json::{json, Value};

use crate::dynamics::{
    check_dynamics, is_prerefractive, state_count, step, BilliardState, StepEvent, MAX_STATE_VERTICES,
};
use crate::error::{Error, Result};
use crate::graphs::MaterializedGraph;

/// Largest order accepted by [`all_orbits`]: one visited bit per state.
pub const MAX_ORBIT_N: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSummary {
    /// Member with the smallest state index.
    pub representative: BilliardState,
    pub period: u64,
    /// Net clockwise revolutions of each vertex's replica, indexed by vertex.
    pub winding: Vec<i64>,
    /// Net clockwise revolutions of the stone.
    pub stone_winding: i64,
    pub contractible: bool,
    pub has_prerefractive: bool,
}

impl OrbitSummary {
    pub fn to_json(&self) -> Value {
        json!({
            "rep": self.representative.to_string(),
            "period": self.period,
            "winding": self.winding,
            "stoneWinding": self.stone_winding,
            "contractible": self.contractible,
        })
    }
}

/// Walks the orbit of `start`, calling `visit` on every member (starting with
/// `start`) and its index.
fn walk(
    m: &MaterializedGraph,
    start: &BilliardState,
    mut visit: impl FnMut(&BilliardState, u64),
) -> Result<OrbitSummary> {
    let n = start.order();
    let mut counts = [0i64; MAX_STATE_VERTICES];
    let mut stone = 0i64;
    let mut period = 0u64;
    let mut best = (start.index(), *start);
    let mut prerefractive = false;
    let mut cur = *start;
    loop {
        let idx = if period == 0 { best.0 } else { cur.index() };
        if idx < best.0 {
            best = (idx, cur);
        }
        visit(&cur, idx);
        prerefractive |= is_prerefractive(m, &cur);
        let (next, ev) = step(m, &cur);
        if let Some((cw, ccw)) = ev.swapped {
            counts[cw - 1] += 1;
            counts[ccw - 1] -= 1;
        }
        stone += ev.stone_delta;
        period += 1;
        cur = next;
        if cur == *start {
            break;
        }
    }
    let nn = n as i64;
    let mut winding = Vec::with_capacity(n);
    for (v, &c) in counts[..n].iter().enumerate() {
        if c % nn != 0 {
            return Err(Error::WindingNotDivisible {
                counter: format!("vertex {}", v + 1),
                value: c,
                n,
            });
        }
        winding.push(c / nn);
    }
    if stone % nn != 0 {
        return Err(Error::WindingNotDivisible {
            counter: "stone".into(),
            value: stone,
            n,
        });
    }
    Ok(OrbitSummary {
        representative: best.1,
        period,
        contractible: winding.iter().all(|&w| w == 0),
        winding,
        stone_winding: stone / nn,
        has_prerefractive: prerefractive,
    })
}

/// Summary of the orbit through `s`; independent of which member is passed.
pub fn orbit_summary(m: &MaterializedGraph, s: &BilliardState) -> Result<OrbitSummary> {
    check_dynamics(m, s)?;
    walk(m, s, |_, _| {})
}

/// Members of the orbit through `s`, in forward order starting at `s`.
pub fn orbit_states(m: &MaterializedGraph, s: &BilliardState) -> Result<Vec<BilliardState>> {
    check_dynamics(m, s)?;
    let mut out = Vec::new();
    let mut cur = *s;
    loop {
        out.push(cur);
        cur = step(m, &cur).0;
        if cur == *s {
            return Ok(out);
        }
    }
}

fn check_orbit_range(m: &MaterializedGraph) -> Result<()> {
    let n = m.order();
    if !(3..=MAX_ORBIT_N).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "orbit enumeration supports 3 <= n <= {MAX_ORBIT_N} (got {n})"
        )));
    }
    Ok(())
}

struct Visited(Vec<AtomicU64>);

impl Visited {
    fn new(len: u64) -> Self {
        Visited((0..len.div_ceil(64)).map(|_| AtomicU64::new(0)).collect())
    }

    #[inline]
    fn get(&self, idx: u64) -> bool {
        self.0[(idx / 64) as usize].load(Ordering::Relaxed) >> (idx % 64) & 1 == 1
    }

    #[inline]
    fn set(&self, idx: u64) {
        self.0[(idx / 64) as usize].fetch_or(1 << (idx % 64), Ordering::Relaxed);
    }
}

/// Visits orbits in increasing representative order until `f` breaks.
/// Returns the number of orbits visited.
pub fn scan_orbits(m: &MaterializedGraph, mut f: impl FnMut(&OrbitSummary) -> ControlFlow<()>) -> Result<usize> {
    check_orbit_range(m)?;
    let n = m.order();
    let total = state_count(n);
    let mut visited = vec![0u64; total.div_ceil(64) as usize];
    let mut count = 0;
    for idx in 0..total {
        if visited[(idx / 64) as usize] >> (idx % 64) & 1 == 1 {
            continue;
        }
        let s = BilliardState::from_index(n, idx)?;
        let summary = walk(m, &s, |_, i| visited[(i / 64) as usize] |= 1 << (i % 64))?;
        count += 1;
        if f(&summary).is_break() {
            break;
        }
    }
    Ok(count)
}

/// Partition of the whole state space into orbits, sorted by representative
/// index. The output does not depend on `workers`.
pub fn all_orbits(m: &MaterializedGraph, workers: usize) -> Result<Vec<OrbitSummary>> {
    check_orbit_range(m)?;
    if workers <= 1 {
        let mut out = Vec::new();
        scan_orbits(m, |o| {
            out.push(o.clone());
            ControlFlow::Continue(())
        })?;
        return Ok(out);
    }
    let n = m.order();
    let total = state_count(n);
    let visited = Visited::new(total);
    const BLOCK: u64 = 1 << 12;
    let blocks = total.div_ceil(BLOCK) as usize;
    let next_block = AtomicUsize::new(0);
    let results: Vec<Result<Vec<OrbitSummary>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| -> Result<Vec<OrbitSummary>> {
                    let mut local = Vec::new();
                    loop {
                        let b = next_block.fetch_add(1, Ordering::Relaxed);
                        if b >= blocks {
                            return Ok(local);
                        }
                        let lo = b as u64 * BLOCK;
                        for idx in lo..(lo + BLOCK).min(total) {
                            if visited.get(idx) {
                                continue;
                            }
                            let s = BilliardState::from_index(n, idx)?;
                            local.push(walk(m, &s, |_, i| visited.set(i))?);
                        }
                    }
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("orbit worker panicked"))
            .collect()
    });
    let mut merged = Vec::new();
    for r in results {
        merged.extend(r?);
    }
    // An orbit traced concurrently by two workers shows up twice, but always
    // under its minimal representative.
    merged.sort_by_key(|o| o.representative.index());
    merged.dedup_by_key(|o| o.representative.index());
    Ok(merged)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    /// Number of steps taken so far (1-based).
    pub step: u64,
    /// State after this step.
    pub state: BilliardState,
    pub event: StepEvent,
    /// Net clockwise steps per vertex since the start.
    pub cumulative: Vec<i64>,
    pub stone_cumulative: i64,
}

impl TraceRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "step": self.step,
            "state": self.state.to_string(),
            "event": {
                "kind": self.event.kind,
                "swapped": self.event.swapped.map(|(a, b)| vec![a, b]),
                "stoneDelta": self.event.stone_delta,
            },
            "cumulative": self.cumulative,
            "stoneCumulative": self.stone_cumulative,
        })
    }
}

/// The first `steps` events from `s` with running counters.
pub fn trace(m: &MaterializedGraph, s: &BilliardState, steps: u64) -> Result<Vec<TraceRecord>> {
    if steps == 0 {
        return Ok(Vec::new());
    }
    check_dynamics(m, s)?;
    let mut counts = vec![0i64; s.order()];
    let mut stone = 0;
    let mut cur = *s;
    let mut out = Vec::with_capacity(steps as usize);
    for k in 1..=steps {
        let (next, ev) = step(m, &cur);
        if let Some((cw, ccw)) = ev.swapped {
            counts[cw - 1] += 1;
            counts[ccw - 1] -= 1;
        }
        stone += ev.stone_delta;
        out.push(TraceRecord {
            step: k,
            state: next,
            event: ev,
            cumulative: counts.clone(),
            stone_cumulative: stone,
        });
        cur = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::Orientation::*;
    use crate::graphs::{family, Graph};

    fn fam(name: &str, p: &[usize]) -> MaterializedGraph {
        family(name, p).unwrap().into()
    }

    #[test]
    fn complete_three_orbits_have_period_six() {
        let k3 = fam("complete", &[3]);
        let orbits = all_orbits(&k3, 1).unwrap();
        assert_eq!(orbits.iter().map(|o| o.period).sum::<u64>(), 36);
        for o in &orbits {
            assert_eq!(o.period, 6);
            assert_eq!(o.winding, vec![0, 0, 0]);
            assert_eq!(o.stone_winding, 0);
            assert!(o.contractible);
        }
    }

    #[test]
    fn path_three_has_an_expelling_orbit_of_period_eighteen() {
        let p3 = fam("path", &[3]);
        let orbits = all_orbits(&p3, 1).unwrap();
        assert!(orbits.iter().any(|o| o.period == 18 && !o.contractible));
    }

    #[test]
    fn cycle_five_trace_and_stone_winding() {
        let c5 = fam("cycle", &[5]);
        let s = BilliardState::identity(5, 1, Clockwise).unwrap();
        let t = trace(&c5, &s, 4).unwrap();
        let kinds: Vec<_> = t.iter().map(|r| r.event.kind).collect();
        use crate::dynamics::EventKind::*;
        assert_eq!(kinds, vec![Refract, Window, Window, Refract]);
        assert_eq!(t[3].stone_cumulative, -2);
        let o = orbit_summary(&c5, &s).unwrap();
        assert!(o.contractible);
        assert_ne!(o.stone_winding, 0);
    }

    #[test]
    fn trace_edge_cases() {
        let k3 = fam("complete", &[3]);
        let s = BilliardState::identity(3, 2, Counterclockwise).unwrap();
        assert!(trace(&k3, &s, 0).unwrap().is_empty());
        let t = trace(&k3, &s, 6).unwrap();
        assert_eq!(t.last().unwrap().stone_cumulative, 0);
        assert_eq!(t.last().unwrap().state, s);
        let small: MaterializedGraph = Graph::empty(2).unwrap().into();
        let s2 = BilliardState::identity(2, 1, Clockwise).unwrap();
        assert!(trace(&small, &s2, 0).unwrap().is_empty());
        assert!(trace(&small, &s2, 1).is_err());
    }

    #[test]
    fn summary_is_member_independent() {
        let p4 = fam("path", &[4]);
        let s = BilliardState::identity(4, 2, Clockwise).unwrap();
        let a = orbit_summary(&p4, &s).unwrap();
        for member in orbit_states(&p4, &s).unwrap() {
            assert_eq!(orbit_summary(&p4, &member).unwrap(), a);
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        for g in [
            fam("cycle", &[6]),
            fam("path", &[5]),
            fam("complete", &[3]).graph().compl_n(6).unwrap().into(),
        ] {
            let seq = all_orbits(&g, 1).unwrap();
            for w in [2, 3, 8] {
                assert_eq!(all_orbits(&g, w).unwrap(), seq);
            }
        }
    }

    #[test]
    fn scan_stops_early() {
        let p4 = fam("path", &[4]);
        let mut seen = 0;
        let visited = scan_orbits(&p4, |_| {
            seen += 1;
            if seen == 2 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .unwrap();
        assert_eq!(visited, 2);
    }

    #[test]
    fn orbit_range_limits() {
        assert!(all_orbits(&fam("path", &[11]), 1).unwrap_err().is_range_error());
        assert!(all_orbits(&fam("path", &[2]), 1).is_err());
    }

    #[test]
    fn json_shape() {
        let k3 = fam("complete", &[3]);
        let o = &all_orbits(&k3, 1).unwrap()[0];
        let v = o.to_json();
        assert_eq!(v["rep"], "perm=1,2,3;i=1;eps=-1");
        assert_eq!(v["period"], 6);
        assert_eq!(v["stoneWinding"], 0);
        let s = BilliardState::identity(3, 1, Clockwise).unwrap();
        let r = &trace(&k3, &s, 1).unwrap()[0];
        let j = r.to_json();
        assert_eq!(j["event"]["kind"], "refract");
        assert_eq!(j["event"]["swapped"], json!([1, 2]));
    }
}
