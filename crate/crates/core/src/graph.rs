//! Simple undirected graphs with sorted adjacency lists and bitset rows.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    rows: Vec<Vec<u64>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64);
        Self {
            adj: vec![Vec::new(); n],
            rows: vec![vec![0; words]; n],
        }
    }

    /// Builds a simple graph; duplicate edges collapse and loops are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Config(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        if self.has_edge(u, v) {
            return;
        }
        self.rows[u][v / 64] |= 1 << (v % 64);
        self.rows[v][u / 64] |= 1 << (u % 64);
        self.adj[u].push(v as u32);
        self.adj[v].push(u as u32);
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        Self::from_edges(n, (0..n).map(|u| (u, (u + 1) % n))).unwrap()
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u][v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn neighbours(&self, u: usize) -> &[u32] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    /// `Some(d)` if every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .map(|&v| v as usize)
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Neighbour bitmask for graphs with at most 64 vertices.
    pub(crate) fn row_mask(&self, u: usize) -> u64 {
        self.rows[u][0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_counts() {
        let g = Graph::complete(6);
        assert_eq!(g.edge_count(), 15);
        assert_eq!(g.regular_degree(), Some(5));
        assert!(g.has_edge(0, 5) && g.has_edge(5, 0));
    }

    #[test]
    fn duplicates_collapse_and_loops_fail() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.neighbours(1), &[0, 2]);
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn bitset_crosses_word_boundary() {
        let g = Graph::from_edges(130, [(0, 129), (63, 64)]).unwrap();
        assert!(g.has_edge(129, 0));
        assert!(g.has_edge(64, 63));
        assert!(!g.has_edge(0, 128));
        assert_eq!(g.regular_degree(), None);
    }
}
