//! Random colour selection and the union graph it spans.
//!
//! Each of the `d` summands is drawn independently: a uniform `r` in
//! `0..n` is `Identity` when `r = n - 1` and colour `r` otherwise. That is
//! the same law as "a uniform colour with probability `(n-1)/n`, the
//! identity with probability `1/n`", using one draw per summand.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::colouring::ProperColouring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::SplitMix64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SampleEntry {
    Colour(u32),
    Identity,
}

/// Colours serialize as their id, the identity as the string `"I"`.
impl Serialize for SampleEntry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SampleEntry::Colour(c) => s.serialize_u32(*c),
            SampleEntry::Identity => s.serialize_str("I"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColourSample {
    pub d: usize,
    pub entries: Vec<SampleEntry>,
    pub seed: u64,
}

/// Checks the even-order, `n - 1` colour setting the sampler works in.
pub(crate) fn require_one_factorization(c: &ProperColouring) -> Result<()> {
    let n = c.n();
    if !n.is_multiple_of(2) {
        return Err(Error::InvalidOrder {
            n,
            reason: "sampling needs an even-order colouring; extend odd colourings first",
        });
    }
    if c.colour_count() as usize != n - 1 {
        return Err(Error::Config(format!(
            "sampling needs exactly n - 1 = {} colours, found {}",
            n - 1,
            c.colour_count()
        )));
    }
    Ok(())
}

pub fn sample_colours(c: &ProperColouring, d: usize, seed: u64) -> Result<ColourSample> {
    require_one_factorization(c)?;
    let n = c.n() as u64;
    let mut rng = SplitMix64::new(seed);
    let entries = (0..d)
        .map(|_| match rng.below(n) {
            r if r == n - 1 => SampleEntry::Identity,
            r => SampleEntry::Colour(r as u32),
        })
        .collect();
    Ok(ColourSample { d, entries, seed })
}

/// Edges of one colour class, which must be a perfect matching.
pub fn matching_edges(c: &ProperColouring, colour: u32) -> Result<Vec<(usize, usize)>> {
    if colour >= c.colour_count() {
        return Err(Error::ColourOutOfRange {
            colour,
            colour_count: c.colour_count(),
        });
    }
    let edges = c.class_edges(colour);
    if 2 * edges.len() != c.n() {
        return Err(Error::NotPerfectMatching { colour });
    }
    Ok(edges)
}

/// Why a sample does not give a simple `d`-regular graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegeneracyReport {
    /// Positions of `Identity` summands.
    pub identity_positions: Vec<usize>,
    /// Colours drawn more than once, with their multiplicity.
    pub repeated_colours: Vec<(u32, usize)>,
}

/// The union graph `H` of a sample, with colours inherited from the host.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledGraph {
    pub n: usize,
    /// Number of colour classes in the union; equals the sample's `d` when
    /// `clean`.
    pub d: usize,
    pub graph: Graph,
    /// Distinct colours spanning the graph, ascending.
    pub colours: Vec<u32>,
    /// True iff the sample had `d` distinct colours and no identity.
    pub clean: bool,
    /// Parallel to `graph.neighbours(u)`.
    edge_colours: Vec<Vec<u32>>,
}

impl SampledGraph {
    fn from_colours(c: &ProperColouring, colours: Vec<u32>, clean: bool) -> Self {
        let n = c.n();
        let mut selected = vec![false; c.colour_count() as usize];
        for &colour in &colours {
            selected[colour as usize] = true;
        }
        let edges: Vec<(usize, usize)> = c
            .edges()
            .filter(|&(_, _, colour)| selected[colour as usize])
            .map(|(u, v, _)| (u, v))
            .collect();
        let graph = Graph::from_edges(n, edges).expect("colouring edges are simple");
        let edge_colours = (0..n)
            .map(|u| graph.neighbours(u).iter().map(|&v| c.colour(u, v as usize)).collect())
            .collect();
        Self {
            n,
            d: colours.len(),
            graph,
            colours,
            clean,
            edge_colours,
        }
    }

    /// Colour of `{u, v}` if it is an edge of the union graph.
    pub fn edge_colour(&self, u: usize, v: usize) -> Option<u32> {
        let pos = self.graph.neighbours(u).binary_search(&(v as u32)).ok()?;
        Some(self.edge_colours[u][pos])
    }
}

/// The union of the sampled colour classes when the sample is clean;
/// otherwise a report of what went wrong.
pub fn build_union_graph(
    c: &ProperColouring,
    s: &ColourSample,
) -> std::result::Result<SampledGraph, DegeneracyReport> {
    let mut identity_positions = Vec::new();
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for (i, e) in s.entries.iter().enumerate() {
        match *e {
            SampleEntry::Identity => identity_positions.push(i),
            SampleEntry::Colour(colour) => *counts.entry(colour).or_default() += 1,
        }
    }
    let repeated_colours: Vec<(u32, usize)> =
        counts.iter().filter(|&(_, &m)| m > 1).map(|(&c, &m)| (c, m)).collect();
    if !identity_positions.is_empty() || !repeated_colours.is_empty() {
        return Err(DegeneracyReport {
            identity_positions,
            repeated_colours,
        });
    }
    Ok(SampledGraph::from_colours(c, counts.into_keys().collect(), true))
}

/// The simple graph spanned by the distinct colours of any sample, with
/// identities dropped. Marked clean only if the sample was clean.
pub fn support_graph(c: &ProperColouring, s: &ColourSample) -> SampledGraph {
    match build_union_graph(c, s) {
        Ok(g) => g,
        Err(_) => {
            let mut colours: Vec<u32> = s
                .entries
                .iter()
                .filter_map(|e| match e {
                    SampleEntry::Colour(c) => Some(*c),
                    SampleEntry::Identity => None,
                })
                .collect();
            colours.sort_unstable();
            colours.dedup();
            SampledGraph::from_colours(c, colours, false)
        }
    }
}

/// Probability that `d` summands are pairwise-distinct colours and none is
/// the identity: `prod_{l=1..d} (n - l) / n`.
pub fn distinctness_probability(n: usize, d: usize) -> Result<f64> {
    if d >= n {
        return Err(Error::Config(format!(
            "distinctness probability needs d < n, got d = {d}, n = {n}"
        )));
    }
    let nf = n as f64;
    Ok((1..=d).map(|l| (nf - l as f64) / nf).product())
}
