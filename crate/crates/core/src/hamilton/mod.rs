//! Hamilton cycles in sampled graphs and their colours.

mod exact;
mod lower_bound;
mod rotation;

pub use exact::{find_hamilton_exact, EXACT_LIMIT};
pub use lower_bound::{
    gf2_rank, min_colour_cycle_bruteforce, verify_span_lower_bound, MinColourCycle, SpanCheck,
    BRUTE_FORCE_LIMIT,
};
pub use rotation::{find_hamilton_rotation, RotationOutcome, STALL_FACTOR};

use serde::Serialize;
use thiserror::Error;

use crate::colouring::ProperColouring;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// First defect found in a proposed Hamilton cycle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleViolation {
    #[error("a Hamilton cycle needs at least 3 vertices, host has {n}")]
    TooSmall { n: usize },
    #[error("vertex {vertex} is out of range")]
    OutOfRange { vertex: usize },
    #[error("vertex {vertex} repeats at position {position}")]
    RepeatedVertex { vertex: usize, position: usize },
    #[error("vertex {vertex} is never visited")]
    OmittedVertex { vertex: usize },
    #[error("{{{u}, {v}}} is not an edge")]
    NonEdge { u: usize, v: usize },
}

/// Checks that `order` visits every vertex of the `n`-vertex host once.
fn check_permutation(n: usize, order: &[usize]) -> Result<(), CycleViolation> {
    if n < 3 {
        return Err(CycleViolation::TooSmall { n });
    }
    let mut seen = vec![false; n];
    for (position, &vertex) in order.iter().enumerate() {
        if vertex >= n {
            return Err(CycleViolation::OutOfRange { vertex });
        }
        if std::mem::replace(&mut seen[vertex], true) {
            return Err(CycleViolation::RepeatedVertex { vertex, position });
        }
    }
    match seen.iter().position(|&s| !s) {
        Some(vertex) => Err(CycleViolation::OmittedVertex { vertex }),
        None => Ok(()),
    }
}

/// Cyclically consecutive pairs of `order`.
fn cycle_edges(order: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    order.iter().zip(order.iter().cycle().skip(1)).map(|(&u, &v)| (u, v))
}

pub fn validate_cycle(g: &Graph, order: &[usize]) -> Result<(), CycleViolation> {
    check_permutation(g.n(), order)?;
    match cycle_edges(order).find(|&(u, v)| !g.has_edge(u, v)) {
        Some((u, v)) => Err(CycleViolation::NonEdge { u, v }),
        None => Ok(()),
    }
}

/// Distinct colours on the edges of a closed walk in `K_n`, ascending.
pub fn cycle_colour_count(c: &ProperColouring, order: &[usize]) -> Vec<u32> {
    let mut colours: Vec<u32> = cycle_edges(order).map(|(u, v)| c.colour(u, v)).collect();
    colours.sort_unstable();
    colours.dedup();
    colours
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HamiltonCycle {
    pub order: Vec<usize>,
    /// Distinct colours on the cycle's edges, ascending.
    pub colours: Vec<u32>,
}

impl HamiltonCycle {
    /// Checks `order` is a Hamilton cycle of the complete graph under `c` and
    /// counts its colours.
    pub fn in_complete(c: &ProperColouring, order: Vec<usize>) -> Result<Self> {
        check_permutation(c.n(), &order)?;
        let colours = cycle_colour_count(c, &order);
        Ok(Self { order, colours })
    }

    pub fn colour_count(&self) -> usize {
        self.colours.len()
    }
}

/// Turns a Hamilton cycle of the extended colouring on `K_{n+1}` into one
/// of `K_n`: drop vertex `n` and join the two path ends.
pub fn close_path_to_cycle(c: &ProperColouring, extended: &[usize]) -> Result<HamiltonCycle> {
    let n = c.n();
    check_permutation(n + 1, extended)?;
    let at = extended
        .iter()
        .position(|&v| v == n)
        .expect("permutation of 0..=n contains n");
    let order: Vec<usize> = extended[at + 1..]
        .iter()
        .chain(&extended[..at])
        .copied()
        .collect();
    HamiltonCycle::in_complete(c, order)
}

pub(crate) fn too_large(what: &'static str, n: usize, limit: usize) -> Error {
    Error::TooLarge { what, n, limit }
}
