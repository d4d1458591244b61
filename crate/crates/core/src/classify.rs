//! Graph-level classification by the winding vectors of all orbits: a graph
//! is ensnaring when every orbit has zero winding vector, expelling when none
//! does, and mixed otherwise.

use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::graphs::MaterializedGraph;
use crate::orbits::{all_orbits, scan_orbits, OrbitSummary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Ensnaring,
    Expelling,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub kind: Kind,
    /// Only set for the one-vertex graph, which counts as both.
    pub also_expelling: bool,
    pub revolutionary: bool,
    pub orbit_count: usize,
    pub noncontractible_count: usize,
    /// A non-contractible orbit for non-ensnaring graphs, or an orbit with
    /// nonzero stone winding for revolutionary ones.
    pub witness: Option<OrbitSummary>,
}

impl Classification {
    pub fn is_ensnaring(&self) -> bool {
        self.kind == Kind::Ensnaring
    }

    pub fn is_expelling(&self) -> bool {
        self.kind == Kind::Expelling || self.also_expelling
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind,
            "alsoExpelling": self.also_expelling,
            "revolutionary": self.revolutionary,
            "orbits": self.orbit_count,
            "noncontractible": self.noncontractible_count,
            "witness": self.witness.as_ref().map(OrbitSummary::to_json),
        })
    }

    fn convention(kind: Kind, also_expelling: bool, revolutionary: bool) -> Self {
        Classification {
            kind,
            also_expelling,
            revolutionary,
            orbit_count: 0,
            noncontractible_count: 0,
            witness: None,
        }
    }
}

/// Fixed answers below three vertices, where stone diagrams are undefined.
fn small_order(m: &MaterializedGraph) -> Option<Classification> {
    match m.order() {
        1 => Some(Classification::convention(Kind::Ensnaring, true, true)),
        // With two vertices a refraction is indistinguishable from a window.
        // A mirror pins both replicas together, so the lone edge being
        // reflective makes the graph ensnaring instead.
        2 if m.is_refraction_only() => Some(Classification::convention(Kind::Expelling, false, false)),
        2 => Some(Classification::convention(Kind::Ensnaring, false, false)),
        _ => None,
    }
}

fn from_orbits(orbits: &[OrbitSummary]) -> Classification {
    let noncontractible = orbits.iter().filter(|o| !o.contractible).count();
    let kind = if noncontractible == 0 {
        Kind::Ensnaring
    } else if noncontractible == orbits.len() {
        Kind::Expelling
    } else {
        Kind::Mixed
    };
    let revolutionary_orbit = orbits.iter().find(|o| o.stone_winding != 0);
    let revolutionary = kind == Kind::Ensnaring && revolutionary_orbit.is_some();
    let witness = if kind != Kind::Ensnaring {
        orbits.iter().find(|o| !o.contractible)
    } else if revolutionary {
        revolutionary_orbit
    } else {
        None
    };
    Classification {
        kind,
        also_expelling: false,
        revolutionary,
        orbit_count: orbits.len(),
        noncontractible_count: noncontractible,
        witness: witness.cloned(),
    }
}

pub fn classify(m: &MaterializedGraph) -> Result<Classification> {
    classify_with(m, 1)
}

/// As [`classify`], enumerating orbits on `workers` threads.
pub fn classify_with(m: &MaterializedGraph, workers: usize) -> Result<Classification> {
    if let Some(c) = small_order(m) {
        return Ok(c);
    }
    Ok(from_orbits(&all_orbits(m, workers)?))
}

/// Yes/no questions that allow a scan to stop early.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Question {
    /// Stops at the first non-contractible orbit.
    Ensnaring,
    /// Stops at the first contractible orbit.
    Expelling,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Full(Classification),
    Answer {
        question: Question,
        holds: bool,
        orbits_scanned: usize,
    },
}

impl Outcome {
    pub fn to_json(&self) -> Value {
        match self {
            Outcome::Full(c) => c.to_json(),
            Outcome::Answer {
                question,
                holds,
                orbits_scanned,
            } => json!({
                "question": question,
                "holds": holds,
                "orbitsScanned": orbits_scanned,
            }),
        }
    }
}

pub fn answer(m: &MaterializedGraph, question: Question) -> Result<Outcome> {
    if let Some(c) = small_order(m) {
        let holds = match question {
            Question::Ensnaring => c.is_ensnaring(),
            Question::Expelling => c.is_expelling(),
        };
        return Ok(Outcome::Answer {
            question,
            holds,
            orbits_scanned: 0,
        });
    }
    let mut holds = true;
    let scanned = scan_orbits(m, |o| {
        let stop = match question {
            Question::Ensnaring => !o.contractible,
            Question::Expelling => o.contractible,
        };
        if stop {
            holds = false;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(Outcome::Answer {
        question,
        holds,
        orbits_scanned: scanned,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Early-exit mode; `None` classifies fully.
    pub question: Option<Question>,
}

/// Classifies each graph independently (in parallel), returning results in
/// input order. A failing graph yields an `Err` without affecting the rest.
pub fn classify_many(
    graphs: Vec<MaterializedGraph>,
    options: ClassifyOptions,
) -> Vec<(MaterializedGraph, Result<Outcome>)> {
    graphs
        .into_par_iter()
        .map(|g| {
            let out = match options.question {
                None => classify(&g).map(Outcome::Full),
                Some(q) => answer(&g, q),
            };
            (g, out)
        })
        .collect()
}
