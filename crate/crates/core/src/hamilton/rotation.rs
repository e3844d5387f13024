//! Randomized Pósa rotation-extension.
//!
//! A path is grown greedily from a random start. When neither end has an
//! unvisited neighbour, the end `x` is rotated: pick a path vertex `v_i`
//! adjacent to `x`, reverse the segment after `v_i`, and `v_{i+1}` becomes
//! the new end. A spanning path whose ends are adjacent closes the cycle.
//!
//! Extension is always preferred to rotation, neighbours are chosen
//! uniformly, and the last `n` rotation endpoints are tabu unless no other
//! choice exists. A restart happens after `STALL_FACTOR * n` rotations
//! without the path growing.

use std::collections::VecDeque;

use serde::Serialize;

use crate::graph::Graph;
use crate::rng::SplitMix64;

pub const STALL_FACTOR: usize = 50;

const OFF_PATH: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum RotationOutcome {
    Found {
        order: Vec<usize>,
        rotations: usize,
        restarts: usize,
    },
    /// The rotation budget ran out. This says nothing about whether the
    /// graph is Hamiltonian.
    Exhausted { rotations: usize, restarts: usize },
}

impl RotationOutcome {
    pub fn order(&self) -> Option<&[usize]> {
        match self {
            RotationOutcome::Found { order, .. } => Some(order),
            RotationOutcome::Exhausted { .. } => None,
        }
    }

    pub fn rotations(&self) -> usize {
        match *self {
            RotationOutcome::Found { rotations, .. } | RotationOutcome::Exhausted { rotations, .. } => {
                rotations
            }
        }
    }
}

struct Path {
    order: Vec<usize>,
    pos: Vec<usize>,
}

impl Path {
    fn new(n: usize, start: usize) -> Self {
        let mut pos = vec![OFF_PATH; n];
        pos[start] = 0;
        Self {
            order: vec![start],
            pos,
        }
    }

    fn push(&mut self, v: usize) {
        self.pos[v] = self.order.len();
        self.order.push(v);
    }

    fn end(&self) -> usize {
        *self.order.last().unwrap()
    }

    /// Reverses `order[from..]` and fixes positions.
    fn reverse_from(&mut self, from: usize) {
        self.order[from..].reverse();
        for (i, &v) in self.order.iter().enumerate().skip(from) {
            self.pos[v] = i;
        }
    }

    fn unvisited_neighbours(&self, g: &Graph, v: usize, out: &mut Vec<usize>) {
        out.clear();
        out.extend(
            g.neighbours(v)
                .iter()
                .map(|&w| w as usize)
                .filter(|&w| self.pos[w] == OFF_PATH),
        );
    }
}

struct Tabu {
    recent: VecDeque<usize>,
    count: Vec<u32>,
    capacity: usize,
}

impl Tabu {
    fn new(n: usize) -> Self {
        Self {
            recent: VecDeque::with_capacity(n),
            count: vec![0; n],
            capacity: n,
        }
    }

    fn contains(&self, v: usize) -> bool {
        self.count[v] > 0
    }

    fn push(&mut self, v: usize) {
        if self.recent.len() == self.capacity {
            let old = self.recent.pop_front().unwrap();
            self.count[old] -= 1;
        }
        self.recent.push_back(v);
        self.count[v] += 1;
    }
}

/// Searches for a Hamilton cycle with at most `budget` rotations. The result
/// depends only on `(g, seed, budget)`.
pub fn find_hamilton_rotation(g: &Graph, seed: u64, budget: usize) -> RotationOutcome {
    let n = g.n();
    let mut rotations = 0usize;
    let mut restarts = 0usize;
    if n < 3 || (0..n).any(|v| g.degree(v) < 2) {
        return RotationOutcome::Exhausted { rotations, restarts };
    }
    let stall_limit = STALL_FACTOR * n;
    let mut rng = SplitMix64::new(seed);
    let mut candidates = Vec::new();

    while rotations < budget {
        let mut path = Path::new(n, rng.index(n));
        let mut tabu = Tabu::new(n);
        let mut best = 1usize;
        let mut stall = 0usize;

        loop {
            path.unvisited_neighbours(g, path.end(), &mut candidates);
            if !candidates.is_empty() {
                path.push(candidates[rng.index(candidates.len())]);
                if path.order.len() > best {
                    best = path.order.len();
                    stall = 0;
                }
                continue;
            }
            path.unvisited_neighbours(g, path.order[0], &mut candidates);
            if !candidates.is_empty() {
                path.reverse_from(0);
                continue;
            }
            if path.order.len() == n && g.has_edge(path.end(), path.order[0]) {
                return RotationOutcome::Found {
                    order: path.order,
                    rotations,
                    restarts,
                };
            }
            if rotations >= budget {
                break;
            }
            if stall >= stall_limit {
                restarts += 1;
                break;
            }

            // Pivots v_i with i < len - 2, so the new end v_{i+1} differs from
            // the current one. Prefer non-tabu new ends.
            let end = path.end();
            let last = path.order.len() - 1;
            candidates.clear();
            candidates.extend(
                g.neighbours(end)
                    .iter()
                    .map(|&w| path.pos[w as usize])
                    .filter(|&i| i + 1 < last && !tabu.contains(path.order[i + 1])),
            );
            if candidates.is_empty() {
                candidates.extend(
                    g.neighbours(end)
                        .iter()
                        .map(|&w| path.pos[w as usize])
                        .filter(|&i| i + 1 < last),
                );
            }
            rotations += 1;
            stall += 1;
            if candidates.is_empty() {
                restarts += 1;
                break;
            }
            let pivot = candidates[rng.index(candidates.len())];
            path.reverse_from(pivot + 1);
            tabu.push(path.end());
        }
    }
    RotationOutcome::Exhausted { rotations, restarts }
}
