//! Stone diagrams and the one-step map.
//!
//! A state places the replica of every vertex on a distinct position of the
//! cycle `1..=n` (clockwise is increasing position), together with a pointer
//! `i` and an orientation. The stone sits on position `i` when oriented
//! clockwise and on `i + 1` when oriented counterclockwise; it coexists with
//! the replica there and points toward the replica one step further in its
//! direction of travel.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{EdgeKind, MaterializedGraph};

pub const MAX_STATE_VERTICES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Counterclockwise,
    Clockwise,
}

impl Orientation {
    pub fn from_sign(sign: i64) -> Option<Self> {
        match sign {
            1 => Some(Orientation::Clockwise),
            -1 => Some(Orientation::Counterclockwise),
            _ => None,
        }
    }

    #[inline]
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Clockwise => 1,
            Orientation::Counterclockwise => -1,
        }
    }

    #[inline]
    pub fn flip(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::Counterclockwise,
            Orientation::Counterclockwise => Orientation::Clockwise,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BilliardState {
    n: u8,
    /// 0-based pointer; the external label is `pointer + 1`.
    pointer: u8,
    orientation: Orientation,
    /// 0-based vertex -> 0-based position.
    position: [u8; MAX_STATE_VERTICES],
    /// 0-based position -> 0-based vertex.
    occupant: [u8; MAX_STATE_VERTICES],
}

impl fmt::Debug for BilliardState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl BilliardState {
    /// `placement[a-1]` is the position `v(a)` in `1..=n` of the replica of
    /// vertex `a`. The pointer is taken modulo `n`, so `0` and `n` agree.
    pub fn new(placement: &[usize], pointer: usize, orientation: Orientation) -> Result<Self> {
        let n = placement.len();
        if n == 0 || n > MAX_STATE_VERTICES {
            return Err(Error::OutOfRange(format!(
                "states support 1..={MAX_STATE_VERTICES} vertices (got {n})"
            )));
        }
        let mut position = [0u8; MAX_STATE_VERTICES];
        let mut occupant = [u8::MAX; MAX_STATE_VERTICES];
        for (a, &p) in placement.iter().enumerate() {
            if p == 0 || p > n {
                return Err(Error::StateParse(format!("position {p} outside 1..={n}")));
            }
            if occupant[p - 1] != u8::MAX {
                return Err(Error::StateParse(format!("position {p} used twice")));
            }
            position[a] = (p - 1) as u8;
            occupant[p - 1] = a as u8;
        }
        for o in occupant.iter_mut().skip(n) {
            *o = 0;
        }
        if pointer > n {
            return Err(Error::StateParse(format!("pointer {pointer} outside 0..={n}")));
        }
        Ok(BilliardState {
            n: n as u8,
            pointer: ((pointer + n - 1) % n) as u8,
            orientation,
            position,
            occupant,
        })
    }

    /// Every replica on its own vertex.
    pub fn identity(n: usize, pointer: usize, orientation: Orientation) -> Result<Self> {
        let placement: Vec<usize> = (1..=n).collect();
        Self::new(&placement, pointer, orientation)
    }

    pub fn order(&self) -> usize {
        self.n as usize
    }

    /// Positions `v(1), ..., v(n)`.
    pub fn placement(&self) -> Vec<usize> {
        self.position[..self.order()].iter().map(|&p| p as usize + 1).collect()
    }

    /// Position of the replica of vertex `a`.
    pub fn position_of(&self, a: usize) -> usize {
        self.position[a - 1] as usize + 1
    }

    /// Vertex whose replica sits on position `p` (taken modulo `n`).
    pub fn occupant_at(&self, p: usize) -> usize {
        let n = self.order();
        self.occupant[(p + n - 1) % n] as usize + 1
    }

    /// Pointer in `1..=n`.
    pub fn pointer(&self) -> usize {
        self.pointer as usize + 1
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    #[inline]
    fn stone0(&self) -> usize {
        match self.orientation {
            Orientation::Clockwise => self.pointer as usize,
            Orientation::Counterclockwise => (self.pointer as usize + 1) % self.order(),
        }
    }

    #[inline]
    fn ahead0(&self, steps: usize) -> usize {
        let n = self.order();
        match self.orientation {
            Orientation::Clockwise => (self.stone0() + steps) % n,
            Orientation::Counterclockwise => (self.stone0() + n * steps - steps) % n,
        }
    }

    /// Position of the stone in `1..=n`.
    pub fn stone_position(&self) -> usize {
        self.stone0() + 1
    }

    /// The vertex whose replica coexists with the stone.
    pub fn coin_vertex(&self) -> usize {
        self.occupant[self.stone0()] as usize + 1
    }

    /// The vertex whose replica the stone points toward.
    pub fn pointed_vertex(&self) -> usize {
        self.occupant[self.ahead0(1)] as usize + 1
    }

    /// Dense index into the `2n * n!` states: Lehmer rank of the placement
    /// times `2n`, plus twice the 0-based pointer, plus one when clockwise.
    pub fn index(&self) -> u64 {
        let n = self.order();
        let mut used = 0u32;
        let mut rank = 0u64;
        for k in 0..n {
            let p = self.position[k] as u32;
            let smaller_unused = ((1u32 << p) - 1) & !used;
            rank = rank * (n - k) as u64 + smaller_unused.count_ones() as u64;
            used |= 1 << p;
        }
        rank * 2 * n as u64 + 2 * self.pointer as u64 + (self.orientation == Orientation::Clockwise) as u64
    }

    pub fn from_index(n: usize, index: u64) -> Result<Self> {
        if n == 0 || n > MAX_STATE_VERTICES {
            return Err(Error::OutOfRange(format!(
                "states support 1..={MAX_STATE_VERTICES} vertices (got {n})"
            )));
        }
        if index >= state_count(n) {
            return Err(Error::OutOfRange(format!(
                "state index {index} outside 0..{}",
                state_count(n)
            )));
        }
        let orientation = if index % 2 == 1 {
            Orientation::Clockwise
        } else {
            Orientation::Counterclockwise
        };
        let pointer = ((index / 2) % n as u64) as u8;
        let mut rank = index / (2 * n as u64);
        let mut digits = vec![0u64; n];
        for k in (0..n).rev() {
            let base = (n - k) as u64;
            digits[k] = rank % base;
            rank /= base;
        }
        let mut position = [0u8; MAX_STATE_VERTICES];
        let mut occupant = [0u8; MAX_STATE_VERTICES];
        let mut free: Vec<u8> = (0..n as u8).collect();
        for (k, &d) in digits.iter().enumerate() {
            let p = free.remove(d as usize);
            position[k] = p;
            occupant[p as usize] = k as u8;
        }
        Ok(BilliardState {
            n: n as u8,
            pointer,
            orientation,
            position,
            occupant,
        })
    }
}

/// `|S_n x Z/n x {+-1}| = 2n * n!`.
pub fn state_count(n: usize) -> u64 {
    (1..=n as u64).product::<u64>() * 2 * n as u64
}

impl fmt::Display for BilliardState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let perm: Vec<String> = self.placement().iter().map(|p| p.to_string()).collect();
        let eps = match self.orientation {
            Orientation::Clockwise => "+1",
            Orientation::Counterclockwise => "-1",
        };
        write!(f, "perm={};i={};eps={eps}", perm.join(","), self.pointer())
    }
}

impl FromStr for BilliardState {
    type Err = Error;

    /// `perm=p1,...,pn;i=I;eps=+1|-1` with `pk = v(k)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::StateParse(format!("{m} in `{s}`"));
        let mut perm = None;
        let mut pointer = None;
        let mut eps = None;
        for field in s.trim().split(';') {
            let (key, value) = field.split_once('=').ok_or_else(|| bad("missing `=`"))?;
            match key.trim() {
                "perm" => {
                    let p: std::result::Result<Vec<usize>, _> = value.split(',').map(|x| x.trim().parse()).collect();
                    perm = Some(p.map_err(|_| bad("bad permutation"))?);
                }
                "i" => pointer = Some(value.trim().parse::<usize>().map_err(|_| bad("bad pointer"))?),
                "eps" => {
                    eps = Some(match value.trim() {
                        "+1" | "1" => Orientation::Clockwise,
                        "-1" => Orientation::Counterclockwise,
                        _ => return Err(bad("eps must be +1 or -1")),
                    })
                }
                other => return Err(bad(&format!("unknown field `{other}`"))),
            }
        }
        BilliardState::new(
            &perm.ok_or_else(|| bad("missing perm"))?,
            pointer.ok_or_else(|| bad("missing i"))?,
            eps.ok_or_else(|| bad("missing eps"))?,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    Window,
    Refract,
    Reflect,
}

/// What one application of the map did.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StepEvent {
    pub kind: EventKind,
    /// `(moved clockwise, moved counterclockwise)` as 1-based vertices.
    pub swapped: Option<(usize, usize)>,
    /// Net clockwise steps of the stone: -1, 0 or 1.
    #[serde(rename = "stoneDelta")]
    pub stone_delta: i64,
}

pub fn check_dynamics(m: &MaterializedGraph, s: &BilliardState) -> Result<()> {
    if s.order() != m.order() {
        return Err(Error::OrderMismatch {
            state: s.order(),
            graph: m.order(),
        });
    }
    if m.order() < 3 {
        return Err(Error::OutOfRange(format!(
            "stone diagrams need n >= 3 (got {})",
            m.order()
        )));
    }
    Ok(())
}

/// One step without validation; callers guarantee matching orders and `n >= 3`.
#[inline]
pub(crate) fn step(m: &MaterializedGraph, s: &BilliardState) -> (BilliardState, StepEvent) {
    let n = s.n;
    let p = s.pointer;
    let q = if p + 1 == n { 0 } else { p + 1 };
    let a = s.occupant[p as usize];
    let b = s.occupant[q as usize];
    let forward = match s.orientation {
        Orientation::Clockwise => q,
        Orientation::Counterclockwise => (p + n - 1) % n,
    };
    let backward = match s.orientation {
        Orientation::Clockwise => (p + n - 1) % n,
        Orientation::Counterclockwise => q,
    };
    let mut t = *s;
    let eps = s.orientation.sign();
    match m.kind0(a as usize, b as usize) {
        EdgeKind::Window => {
            t.occupant[p as usize] = b;
            t.occupant[q as usize] = a;
            t.position[a as usize] = q;
            t.position[b as usize] = p;
            t.pointer = forward;
            let ev = StepEvent {
                kind: EventKind::Window,
                swapped: Some((a as usize + 1, b as usize + 1)),
                stone_delta: eps,
            };
            (t, ev)
        }
        EdgeKind::Refract => {
            t.occupant[p as usize] = b;
            t.occupant[q as usize] = a;
            t.position[a as usize] = q;
            t.position[b as usize] = p;
            t.pointer = backward;
            t.orientation = s.orientation.flip();
            let ev = StepEvent {
                kind: EventKind::Refract,
                swapped: Some((a as usize + 1, b as usize + 1)),
                stone_delta: 0,
            };
            (t, ev)
        }
        EdgeKind::Reflect => {
            t.pointer = forward;
            let ev = StepEvent {
                kind: EventKind::Reflect,
                swapped: None,
                stone_delta: eps,
            };
            (t, ev)
        }
    }
}

/// One application of the map: look at the replicas on positions `i` and
/// `i + 1`; pass them through each other (non-edge), swap them and turn the
/// stone around (refraction edge), or leave them and move on (reflection edge).
pub fn theta(m: &MaterializedGraph, s: &BilliardState) -> Result<(BilliardState, StepEvent)> {
    check_dynamics(m, s)?;
    Ok(step(m, s))
}

/// Same stone position and replicas, opposite orientation.
pub fn conjugate(s: &BilliardState) -> BilliardState {
    let mut t = *s;
    let n = s.n;
    t.pointer = match s.orientation {
        Orientation::Clockwise => (s.pointer + n - 1) % n,
        Orientation::Counterclockwise => (s.pointer + 1) % n,
    };
    t.orientation = s.orientation.flip();
    t
}

#[inline]
pub(crate) fn step_back(m: &MaterializedGraph, s: &BilliardState) -> BilliardState {
    conjugate(&step(m, &conjugate(s)).0)
}

/// Inverse map, computed as `conjugate . theta . conjugate`.
pub fn theta_inverse(m: &MaterializedGraph, s: &BilliardState) -> Result<BilliardState> {
    check_dynamics(m, s)?;
    Ok(step_back(m, s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PivotalKind {
    NotPrerefractive,
    PrePivotal,
    PostPivotal,
    Flipping,
}

fn check_refraction_only(m: &MaterializedGraph) -> Result<()> {
    if m.is_refraction_only() {
        Ok(())
    } else {
        Err(Error::NotRefractionOnly(m.reflect_edges().len()))
    }
}

/// A state is prerefractive when the coexisting vertex `a` and the pointed-at
/// vertex `b` are non-adjacent. The case is then decided by the vertex `x`
/// two steps ahead of the stone.
pub fn pivotal_kind(m: &MaterializedGraph, s: &BilliardState) -> Result<PivotalKind> {
    check_dynamics(m, s)?;
    check_refraction_only(m)?;
    Ok(pivotal_kind_unchecked(m, s))
}

pub(crate) fn pivotal_kind_unchecked(m: &MaterializedGraph, s: &BilliardState) -> PivotalKind {
    let g = m.graph();
    let a = s.occupant[s.stone0()] as usize;
    let b = s.occupant[s.ahead0(1)] as usize;
    if g.adjacent0(a, b) {
        return PivotalKind::NotPrerefractive;
    }
    let x = s.occupant[s.ahead0(2)] as usize;
    match (g.adjacent0(a, x), g.adjacent0(b, x)) {
        (false, _) => PivotalKind::PrePivotal,
        (true, false) => PivotalKind::PostPivotal,
        (true, true) => PivotalKind::Flipping,
    }
}

#[inline]
pub(crate) fn is_prerefractive(m: &MaterializedGraph, s: &BilliardState) -> bool {
    let a = s.occupant[s.stone0()] as usize;
    let b = s.occupant[s.ahead0(1)] as usize;
    !m.graph().adjacent0(a, b)
}

/// Bridged edge of `s`: `(coexisting, pointed-at)` for the nearest
/// prerefractive state among `s` and its predecessors, looking back at most
/// `period_bound` steps.
pub fn bridged_edge(m: &MaterializedGraph, s: &BilliardState, period_bound: usize) -> Result<Option<(usize, usize)>> {
    check_dynamics(m, s)?;
    check_refraction_only(m)?;
    let mut cur = *s;
    for _ in 0..=period_bound {
        if is_prerefractive(m, &cur) {
            return Ok(Some((cur.coin_vertex(), cur.pointed_vertex())));
        }
        cur = step_back(m, &cur);
    }
    Ok(None)
}
