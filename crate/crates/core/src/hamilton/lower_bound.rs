//! Minimum-colour Hamilton cycles by exhaustive search, and the GF(2) span
//! argument for the xor colouring of `K_{2^k}`.
//!
//! On `Z_2^k` with edge colours `i XOR j`, walking a Hamilton cycle from `0`
//! to any vertex `i` XORs together the colours of the edges passed, so the
//! colours on the cycle span `Z_2^k` and there are at least `k` of them.

use serde::Serialize;

use crate::colouring::{xor_colour_vector, ProperColouring};
use crate::error::{Error, Result};

use super::{too_large, HamiltonCycle};

pub const BRUTE_FORCE_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinColourCycle {
    pub minimum: usize,
    pub witness: HamiltonCycle,
}

struct Search<'a> {
    c: &'a ProperColouring,
    n: usize,
    order: Vec<usize>,
    used: Vec<bool>,
    /// Multiplicity of each colour on the current path.
    colour_uses: Vec<u32>,
    distinct: usize,
    best: usize,
    best_order: Vec<usize>,
}

impl Search<'_> {
    fn add_colour(&mut self, colour: u32) {
        let slot = &mut self.colour_uses[colour as usize];
        if *slot == 0 {
            self.distinct += 1;
        }
        *slot += 1;
    }

    fn remove_colour(&mut self, colour: u32) {
        let slot = &mut self.colour_uses[colour as usize];
        *slot -= 1;
        if *slot == 0 {
            self.distinct -= 1;
        }
    }

    fn extend(&mut self) {
        // Adding edges never lowers the count, so a partial path that already
        // matches the best cannot improve on it.
        if self.distinct >= self.best {
            return;
        }
        let last = *self.order.last().unwrap();
        if self.order.len() == self.n {
            let closing = self.c.colour(last, self.order[0]);
            self.add_colour(closing);
            if self.distinct < self.best {
                self.best = self.distinct;
                self.best_order.clone_from(&self.order);
            }
            self.remove_colour(closing);
            return;
        }
        for v in 1..self.n {
            if self.used[v] {
                continue;
            }
            let colour = self.c.colour(last, v);
            self.used[v] = true;
            self.order.push(v);
            self.add_colour(colour);
            self.extend();
            self.remove_colour(colour);
            self.order.pop();
            self.used[v] = false;
        }
    }
}

/// Fewest colours on any Hamilton cycle of `K_n` under `c`, with a witness.
pub fn min_colour_cycle_bruteforce(c: &ProperColouring) -> Result<MinColourCycle> {
    let n = c.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(too_large("minimum-colour brute force", n, BRUTE_FORCE_LIMIT));
    }
    if n < 3 {
        return Err(Error::InvalidOrder {
            n,
            reason: "a Hamilton cycle needs at least 3 vertices",
        });
    }
    let mut used = vec![false; n];
    used[0] = true;
    let mut search = Search {
        c,
        n,
        order: vec![0],
        used,
        colour_uses: vec![0; c.colour_count() as usize],
        distinct: 0,
        best: usize::MAX,
        best_order: Vec::new(),
    };
    search.extend();
    let witness = HamiltonCycle::in_complete(c, search.best_order)?;
    debug_assert_eq!(witness.colour_count(), search.best);
    Ok(MinColourCycle {
        minimum: search.best,
        witness,
    })
}

/// Rank over GF(2) of a set of bit vectors.
pub fn gf2_rank<I: IntoIterator<Item = u32>>(vectors: I) -> usize {
    let mut basis = [0u32; 32];
    let mut rank = 0;
    for mut x in vectors {
        while x != 0 {
            let top = 31 - x.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = x;
                rank += 1;
                break;
            }
            x ^= basis[top];
        }
    }
    rank
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpanCheck {
    pub k: u32,
    pub rank: usize,
    pub pass: bool,
}

/// Rank of the colour vectors on a Hamilton cycle of the xor colouring of
/// `K_{2^k}`; the cycle passes iff they span `Z_2^k`.
pub fn verify_span_lower_bound(
    k: u32,
    host: &ProperColouring,
    cycle: &[usize],
) -> Result<SpanCheck> {
    let n = 1usize
        .checked_shl(k)
        .filter(|&n| n == host.n())
        .ok_or_else(|| Error::Config(format!("host has {} vertices, not 2^{k}", host.n())))?;
    if let Some((u, v, _)) = host
        .edges()
        .find(|&(u, v, colour)| xor_colour_vector(colour) as usize != u ^ v)
    {
        return Err(Error::Config(format!(
            "host is not the xor colouring of K_{n}: edge {{{u}, {v}}}"
        )));
    }
    let cycle = HamiltonCycle::in_complete(host, cycle.to_vec())?;
    let rank = gf2_rank(cycle.colours.iter().map(|&c| xor_colour_vector(c)));
    Ok(SpanCheck {
        k,
        rank,
        pass: rank == k as usize,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{circle_colouring, cyclic_colouring_odd, xor_colouring};

    #[test]
    fn circle_four_needs_two() {
        let c = circle_colouring(4).unwrap();
        let m = min_colour_cycle_bruteforce(&c).unwrap();
        assert_eq!(m.minimum, 2);
        assert_eq!(m.witness.colour_count(), 2);
    }

    #[test]
    fn xor_eight_needs_three() {
        let c = xor_colouring(3).unwrap();
        assert_eq!(min_colour_cycle_bruteforce(&c).unwrap().minimum, 3);
    }

    #[test]
    fn odd_orders_work_too() {
        let c = cyclic_colouring_odd(7).unwrap();
        assert!(min_colour_cycle_bruteforce(&c).unwrap().minimum >= 2);
    }

    #[test]
    fn brute_force_limits() {
        assert!(min_colour_cycle_bruteforce(&circle_colouring(12).unwrap()).is_err());
    }

    #[test]
    fn gf2_rank_basics() {
        assert_eq!(gf2_rank([]), 0);
        assert_eq!(gf2_rank([0b01, 0b10, 0b11]), 2);
        assert_eq!(gf2_rank([0b100, 0b010, 0b001, 0b111]), 3);
        assert_eq!(gf2_rank([0, 0]), 0);
    }

    #[test]
    fn span_of_square_in_z2_squared() {
        let host = xor_colouring(2).unwrap();
        // 00-01-11-10-00
        let check = verify_span_lower_bound(2, &host, &[0b00, 0b01, 0b11, 0b10]).unwrap();
        assert_eq!(check, SpanCheck { k: 2, rank: 2, pass: true });
    }

    #[test]
    fn span_rejects_wrong_host() {
        let host = circle_colouring(8).unwrap();
        assert!(verify_span_lower_bound(3, &host, &[0, 1, 2, 3, 4, 5, 6, 7]).is_err());
        let host = xor_colouring(3).unwrap();
        assert!(verify_span_lower_bound(2, &host, &[0, 1, 2, 3]).is_err());
    }
}
