//! Exact Hamilton-cycle search by dynamic programming over vertex subsets.

use crate::error::Result;
use crate::graph::Graph;

use super::too_large;

pub const EXACT_LIMIT: usize = 20;

/// Returns a Hamilton cycle if one exists. `None` certifies that the graph
/// is not Hamiltonian.
///
/// `reach[S]` is the set of vertices `v` such that some path starting at
/// vertex 0 visits exactly `S` and ends at `v`.
pub fn find_hamilton_exact(g: &Graph) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if n > EXACT_LIMIT {
        return Err(too_large("exact Hamilton search", n, EXACT_LIMIT));
    }
    if n < 3 {
        return Ok(None);
    }
    let nbr: Vec<u32> = (0..n).map(|v| g.row_mask(v) as u32).collect();
    let full = (1u32 << n) - 1;
    let mut reach = vec![0u32; 1 << n];
    reach[1] = 1;
    for mask in (1..=full).step_by(2) {
        let mut ends = reach[mask as usize];
        while ends != 0 {
            let v = ends.trailing_zeros() as usize;
            ends &= ends - 1;
            let mut next = nbr[v] & !mask;
            while next != 0 {
                let w = next.trailing_zeros();
                next &= next - 1;
                reach[(mask | 1 << w) as usize] |= 1 << w;
            }
        }
    }

    let closing = reach[full as usize] & nbr[0];
    if closing == 0 {
        return Ok(None);
    }
    let mut cur = closing.trailing_zeros() as usize;
    let mut mask = full;
    let mut order = vec![cur];
    while mask != 1 {
        mask &= !(1 << cur);
        let prev = reach[mask as usize] & nbr[cur];
        debug_assert!(prev != 0);
        cur = prev.trailing_zeros() as usize;
        order.push(cur);
    }
    order.reverse();
    Ok(Some(order))
}
