//! Acceptance criteria, one test each. Every test writes a single
//! `PASS`/`FAIL` line to stderr (uncaptured) and panics on failure.
//!
//! Run with `cargo test --release -p billiard-core --test acceptance`.

use std::io::Write;
use std::time::Instant;

use billiard_core::dynamics::state_count;
use billiard_core::graphs::{family, EnumerateOptions, GraphEnumerator};
use billiard_core::verify::{run_check, run_conjecture, CheckReport, ConjectureStatus, Params};
use billiard_core::{
    all_orbits, classify, conjugate, theta, theta_inverse, trace, BilliardState, Graph, Kind, MaterializedGraph,
    Orientation,
};

fn report(no: u32, title: &str, start: Instant, outcome: Result<String, String>) {
    let secs = start.elapsed().as_secs_f64();
    let line = match &outcome {
        Ok(detail) => format!("PASS criterion {no:>2}: {title} ({detail}) [{secs:.1}s]"),
        Err(why) => format!("FAIL criterion {no:>2}: {title}: {why} [{secs:.1}s]"),
    };
    // Written to the raw handle so the line shows even when output is captured.
    let _ = writeln!(std::io::stderr(), "{line}");
    if let Err(why) = outcome {
        panic!("criterion {no}: {why}");
    }
}

fn check(id: &str, params: Params) -> Result<CheckReport, String> {
    let r = run_check(id, &params).map_err(|e| format!("{id}: {e}"))?;
    if r.passed {
        Ok(r)
    } else {
        Err(r.summary_line())
    }
}

fn range(min_n: usize, max_n: usize) -> Params {
    Params {
        min_n: Some(min_n),
        max_n: Some(max_n),
        ..Params::default()
    }
}

fn cls(g: Graph) -> Result<billiard_core::Classification, String> {
    classify(&g.into()).map_err(|e| e.to_string())
}

fn graph(name: &str, params: &[usize]) -> Graph {
    family(name, params).unwrap()
}

#[test]
fn criterion_01_expelling_iff_bipartite() {
    let start = Instant::now();
    let outcome = check("expelling-bipartite", range(3, 6)).and_then(|r| {
        if r.instances == 8 + 64 + 1024 + 32768 {
            Ok(format!("{} labelled graphs, n=3..=6", r.instances))
        } else {
            Err(format!("expected 33864 graphs, tested {}", r.instances))
        }
    });
    report(1, "expelling iff bipartite", start, outcome);
}

#[test]
fn criterion_02_figure_orbits() {
    let start = Instant::now();
    let outcome = (|| {
        let p3 = all_orbits(&graph("path", &[3]).into(), 1).map_err(|e| e.to_string())?;
        if !p3.iter().any(|o| o.period == 18 && o.winding.iter().any(|&w| w != 0)) {
            return Err("P_3 has no period-18 orbit with nonzero winding".into());
        }
        let k3 = all_orbits(&graph("complete", &[3]).into(), 1).map_err(|e| e.to_string())?;
        if let Some(o) = k3.iter().find(|o| o.period != 6 || !o.contractible) {
            return Err(format!("K_3 orbit of period {} winding {:?}", o.period, o.winding));
        }
        Ok(format!(
            "P_3 period-18 orbit found, {} K_3 orbits of period 6",
            k3.len()
        ))
    })();
    report(2, "P_3 and K_3 orbits", start, outcome);
}

#[test]
fn criterion_03_complete_graphs() {
    let start = Instant::now();
    let outcome =
        check("complete", range(3, 8)).map(|r| format!("K_3..K_8, {} graphs, stone never moves", r.instances));
    report(3, "K_n ensnaring, not revolutionary", start, outcome);
}

#[test]
fn criterion_04_cycles() {
    let start = Instant::now();
    let outcome = (|| {
        check("cycles", range(3, 9))?;
        check("rev-cycles", range(3, 9))?;
        let c5 = graph("cycle", &[5]).into();
        let s = BilliardState::identity(5, 1, Orientation::Clockwise).unwrap();
        let records = trace(&c5, &s, 40).map_err(|e| e.to_string())?;
        for l in 1..=10 {
            let got = records[4 * l - 1].stone_cumulative;
            if got != -2 * l as i64 {
                return Err(format!("C_5 stone at {got} after {} steps", 4 * l));
            }
        }
        Ok("C_3..C_9 by parity, odd C_5..C_9 revolutionary, C_5 stone -2 per 4 steps".to_string())
    })();
    report(4, "cycles", start, outcome);
}

#[test]
fn criterion_05_wedge() {
    let start = Instant::now();
    let outcome = check("wedge", Params::with_max_n(8)).map(|r| format!("{} wedges", r.instances));
    report(5, "wedges of ensnaring graphs", start, outcome);
}

#[test]
fn criterion_06_union() {
    let start = Instant::now();
    let outcome = (|| {
        let r = check("union", Params::with_max_n(8))?;
        let k3 = graph("complete", &[3]);
        let c5 = graph("cycle", &[5]);
        if !cls(k3.disjoint_union(&k3).unwrap())?.is_ensnaring() {
            return Err("K_3 + K_3 not ensnaring".into());
        }
        if cls(c5.disjoint_union(&k3).unwrap())?.is_ensnaring() {
            return Err("C_5 + K_3 ensnaring".into());
        }
        Ok(format!("{} ordered pairs", r.instances))
    })();
    report(6, "disjoint unions", start, outcome);
}

#[test]
fn criterion_07_complete_plus_trees() {
    let start = Instant::now();
    let outcome = (|| {
        let trees = check(
            "complete-tree",
            Params {
                max_part: Some(4),
                ..Params::default()
            },
        )?;
        let multi = check("multitree", Params::with_max_n(8))?;
        Ok(format!(
            "{} tree wedges, {} multitree graphs",
            trees.instances, multi.instances
        ))
    })();
    report(7, "complete graphs with trees", start, outcome);
}

#[test]
fn criterion_08_local_configuration() {
    let start = Instant::now();
    let outcome = check("local-config", range(1, 6)).map(|r| format!("{} labelled graphs", r.instances));
    report(8, "local configuration blocks ensnaring", start, outcome);
}

#[test]
fn criterion_09_complement_theory() {
    let start = Instant::now();
    let outcome = (|| {
        let a = check("compl-complete", range(2, 7))?;
        let b = check("compl-bipartite", range(3, 7))?;
        let c = check("compl-components", range(3, 5))?;
        if !cls(graph("kbip", &[1, 2]).compl_n(6).unwrap())?.is_ensnaring() {
            return Err("compl_6(K_1,2) not ensnaring".into());
        }
        Ok(format!("{} + {} + {} instances", a.instances, b.instances, c.instances))
    })();
    report(9, "n-vertex complements", start, outcome);
}

#[test]
fn criterion_10_orbit_sizes() {
    let start = Instant::now();
    let outcome = (|| {
        for (m, n) in [(3, 6), (3, 8), (5, 8)] {
            let p = Params {
                m: Some(m),
                n: Some(n),
                ..Params::default()
            };
            let r = run_conjecture("orbit-sizes", &p).map_err(|e| e.to_string())?;
            if r.status != ConjectureStatus::Consistent {
                return Err(r.summary_line());
            }
        }
        Ok("(3,6) (3,8) (5,8) consistent".to_string())
    })();
    report(10, "compl_n(P_m) orbit sizes", start, outcome);
}

fn bijection_and_conjugation(m: &MaterializedGraph) -> Result<(), String> {
    let n = m.order();
    for idx in 0..state_count(n) {
        let s = BilliardState::from_index(n, idx).unwrap();
        let (t, _) = theta(m, &s).unwrap();
        if theta_inverse(m, &t).unwrap() != s {
            return Err(format!("{}: inverse fails at {s}", billiard_core::print_spec(m)));
        }
        let (back, _) = theta(m, &conjugate(&t)).unwrap();
        if conjugate(&back) != s {
            return Err(format!(
                "{}: conjugation identity fails at {s}",
                billiard_core::print_spec(m)
            ));
        }
    }
    Ok(())
}

#[test]
fn criterion_11_property_suites() {
    let start = Instant::now();
    let outcome = (|| {
        let mut variants = 0u64;
        for n in 3..=5 {
            for g in GraphEnumerator::new(n, EnumerateOptions::default()).unwrap() {
                for m in MaterializedGraph::all_partitions(&g) {
                    bijection_and_conjugation(&m)?;
                    variants += 1;
                }
            }
        }
        let mut graphs = 0u64;
        for n in 3..=6 {
            for g in GraphEnumerator::new(n, EnumerateOptions::default()).unwrap() {
                let m = MaterializedGraph::from(g);
                // Non-divisible counters surface as errors here.
                let orbits = all_orbits(&m, 1).map_err(|e| format!("{}: {e}", billiard_core::print_spec(&m)))?;
                let total: u64 = orbits.iter().map(|o| o.period).sum();
                if total != state_count(n) {
                    return Err(format!("{}: periods sum to {total}", billiard_core::print_spec(&m)));
                }
                if let Some(o) = orbits.iter().find(|o| o.winding.iter().sum::<i64>() != 0) {
                    return Err(format!("winding {:?} does not sum to 0", o.winding));
                }
                graphs += 1;
            }
        }
        Ok(format!(
            "{variants} materialized graphs bijective, {graphs} graphs with balanced windings"
        ))
    })();
    report(11, "dynamics properties", start, outcome);
}

#[test]
fn criterion_12_materialized_cycles() {
    let start = Instant::now();
    let outcome = (|| {
        let r = check("mat-cycle", range(3, 7))?;
        // spot check: C_4 with two refraction edges is expelling
        let c4 = graph("cycle", &[4]);
        let m = MaterializedGraph::new(c4, &[(1, 2), (2, 3)]).unwrap();
        let kind = classify(&m).map_err(|e| e.to_string())?.kind;
        if kind != Kind::Expelling {
            return Err(format!("C_4 with two refraction edges is {kind:?}"));
        }
        Ok(format!("{} edge partitions", r.instances))
    })();
    report(12, "materialized cycles", start, outcome);
}
