//! Proper edge colourings of complete graphs.
//!
//! Vertices and colours are dense 0-based ids. Edge colours live in a flat
//! lower-triangular array: the pair `{u, v}` with `u < v` sits at
//! `v * (v - 1) / 2 + u`.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProperColouring {
    n: usize,
    colour_count: u32,
    colours: Vec<u32>,
    missing: Vec<Option<u32>>,
}

#[inline]
fn pair_index(u: usize, v: usize) -> usize {
    let (lo, hi) = if u < v { (u, v) } else { (v, u) };
    hi * (hi - 1) / 2 + lo
}

impl ProperColouring {
    /// Builds a colouring of `K_n` from `f(u, v)` (called once per pair with
    /// `u < v`) and checks that it is proper.
    pub fn from_fn<F>(n: usize, colour_count: u32, f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> u32,
    {
        let c = Self::from_fn_unvalidated(n, colour_count, f)?;
        if let Some(v) = validate_proper(&c).violations.first() {
            return Err(Error::Improper {
                vertex: v.vertex,
                colour: v.colour,
            });
        }
        Ok(c)
    }

    /// Like [`from_fn`](Self::from_fn) but only range-checks colour ids. The
    /// result may be improper; use it for diagnostics and counter tests only.
    pub fn from_fn_unvalidated<F>(n: usize, colour_count: u32, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> u32,
    {
        if n < 2 {
            return Err(Error::InvalidOrder {
                n,
                reason: "need at least 2 vertices",
            });
        }
        let mut colours = vec![0; n * (n - 1) / 2];
        for v in 1..n {
            for u in 0..v {
                let colour = f(u, v);
                if colour >= colour_count {
                    return Err(Error::ColourOutOfRange {
                        colour,
                        colour_count,
                    });
                }
                colours[pair_index(u, v)] = colour;
            }
        }
        let missing = compute_missing(n, colour_count, &colours);
        Ok(Self {
            n,
            colour_count,
            colours,
            missing,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn colour_count(&self) -> u32 {
        self.colour_count
    }

    /// Colour of the edge `{u, v}`. Panics on `u == v` or out-of-range ids.
    #[inline]
    pub fn colour(&self, u: usize, v: usize) -> u32 {
        assert!(u != v && u < self.n && v < self.n, "no edge {{{u}, {v}}}");
        self.colours[pair_index(u, v)]
    }

    /// The unique colour absent at `u`, if `u` misses exactly one colour.
    pub fn missing(&self, u: usize) -> Option<u32> {
        self.missing[u]
    }

    /// Edges `(u, v)`, `u < v`, of one colour class.
    pub fn class_edges(&self, colour: u32) -> Vec<(usize, usize)> {
        self.edges().filter(|&(_, _, c)| c == colour).map(|(u, v, _)| (u, v)).collect()
    }

    /// Every edge as `(u, v, colour)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).map(move |v| (u, v, self.colour(u, v))))
    }

    /// For each colour, the partner of every vertex in that class (or
    /// `None` when the vertex is uncovered). Indexed `[colour][vertex]`.
    pub fn matchings(&self) -> Vec<Vec<Option<u32>>> {
        let mut partner = vec![vec![None; self.n]; self.colour_count as usize];
        for (u, v, c) in self.edges() {
            let row = &mut partner[c as usize];
            row[u] = Some(v as u32);
            row[v] = Some(u as u32);
        }
        partner
    }
}

fn compute_missing(n: usize, colour_count: u32, colours: &[u32]) -> Vec<Option<u32>> {
    let mut seen = vec![false; colour_count as usize];
    (0..n)
        .map(|u| {
            seen.iter_mut().for_each(|s| *s = false);
            for v in (0..n).filter(|&v| v != u) {
                seen[colours[pair_index(u, v)] as usize] = true;
            }
            let mut absent = seen.iter().enumerate().filter(|(_, &s)| !s);
            match (absent.next(), absent.next()) {
                (Some((c, _)), None) => Some(c as u32),
                _ => None,
            }
        })
        .collect()
}

/// The standard 1-factorization of `K_n`, `n` even: vertices `0..n-1` on a
/// circle get colour `(i + j) mod (n - 1)`, and the centre vertex `n - 1` is
/// joined to `i` in colour `2i mod (n - 1)`.
pub fn circle_colouring(n: usize) -> Result<ProperColouring> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::InvalidOrder {
            n,
            reason: "circle colouring needs an even n >= 4",
        });
    }
    let m = n - 1;
    ProperColouring::from_fn(n, m as u32, |u, v| {
        if v == m {
            ((2 * u) % m) as u32
        } else {
            ((u + v) % m) as u32
        }
    })
}

/// Colour `(i + j) mod n` on `K_n`, `n` odd. Vertex `u` misses `2u mod n`.
pub fn cyclic_colouring_odd(n: usize) -> Result<ProperColouring> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidOrder {
            n,
            reason: "cyclic colouring needs an odd n >= 3",
        });
    }
    ProperColouring::from_fn(n, n as u32, |u, v| ((u + v) % n) as u32)
}

/// Colouring of `K_{2^k}` on the vertex set `Z_2^k`: the edge `{i, j}` gets the
/// nonzero vector `i XOR j`. Colour ids are that vector minus one, so colour
/// `c` stands for the vector `c + 1`.
pub fn xor_colouring(k: u32) -> Result<ProperColouring> {
    if !(1..=20).contains(&k) {
        return Err(Error::InvalidOrder {
            n: 1usize.checked_shl(k).unwrap_or(0),
            reason: "xor colouring needs 1 <= k <= 20",
        });
    }
    let n = 1usize << k;
    ProperColouring::from_fn(n, (n - 1) as u32, |u, v| ((u ^ v) - 1) as u32)
}

/// Vector in `Z_2^k` represented by an xor-colouring colour id.
#[inline]
pub fn xor_colour_vector(colour: u32) -> u32 {
    colour + 1
}

/// Adds vertex `n` to an odd-order colouring with exactly `n` colours and
/// colours each new edge `{u, n}` with the colour missing at `u`.
pub fn extend_odd_to_even(c: &ProperColouring) -> Result<ProperColouring> {
    let n = c.n();
    if n.is_multiple_of(2) {
        return Err(Error::InvalidOrder {
            n,
            reason: "extension needs an odd-order colouring",
        });
    }
    if c.colour_count() as usize != n {
        return Err(Error::Config(format!(
            "extension needs exactly n = {n} colours, found {}",
            c.colour_count()
        )));
    }
    let missing = (0..n)
        .map(|u| c.missing(u).ok_or(Error::MissingColourUndefined { vertex: u }))
        .collect::<Result<Vec<_>>>()?;
    ProperColouring::from_fn(n + 1, c.colour_count(), |u, v| {
        if v == n {
            missing[u]
        } else {
            c.colour(u, v)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProperViolation {
    pub vertex: usize,
    pub colour: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassShape {
    /// Covers every vertex exactly once.
    Perfect,
    /// Covers all vertices but one, each at most once.
    NearPerfect,
    /// A matching covering fewer vertices.
    Partial,
    /// Two edges of the class share a vertex.
    NotAMatching,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    /// One entry per (vertex, colour) pair where the colour repeats at the
    /// vertex. Empty iff the colouring is proper.
    pub violations: Vec<ProperViolation>,
    /// Number of edges in each colour class.
    pub class_sizes: Vec<usize>,
    pub class_shapes: Vec<ClassShape>,
}

impl ValidationReport {
    pub fn is_proper(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_proper(c: &ProperColouring) -> ValidationReport {
    let n = c.n();
    let cc = c.colour_count() as usize;
    let mut hits = vec![0u32; n * cc];
    let mut class_sizes = vec![0usize; cc];
    for (u, v, colour) in c.edges() {
        let colour = colour as usize;
        class_sizes[colour] += 1;
        hits[u * cc + colour] += 1;
        hits[v * cc + colour] += 1;
    }
    let mut violations = Vec::new();
    let mut bad_class = vec![false; cc];
    for u in 0..n {
        for colour in 0..cc {
            if hits[u * cc + colour] > 1 {
                violations.push(ProperViolation {
                    vertex: u,
                    colour: colour as u32,
                });
                bad_class[colour] = true;
            }
        }
    }
    let class_shapes = class_sizes
        .iter()
        .zip(&bad_class)
        .map(|(&size, &bad)| match (bad, 2 * size) {
            (true, _) => ClassShape::NotAMatching,
            (false, covered) if covered == n => ClassShape::Perfect,
            (false, covered) if covered + 1 == n => ClassShape::NearPerfect,
            _ => ClassShape::Partial,
        })
        .collect();
    ValidationReport {
        violations,
        class_sizes,
        class_shapes,
    }
}

/// Edge-list text form: a header line `n colour_count`, then one line
/// `u v c` per edge with `u < v`.
pub fn serialize_colouring(c: &ProperColouring) -> String {
    let mut out = String::with_capacity(12 * c.colours.len() + 16);
    writeln!(out, "{} {}", c.n(), c.colour_count()).unwrap();
    for (u, v, colour) in c.edges() {
        writeln!(out, "{u} {v} {colour}").unwrap();
    }
    out
}

/// Parses the edge-list form. Lines starting with `#` and blank lines are
/// skipped. The colouring must list every edge exactly once and be proper.
pub fn parse_colouring(text: &str) -> Result<ProperColouring> {
    let perr = |line: usize, message: String| Error::Parse { line, message };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| perr(1, "missing header \"n colour_count\"".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, colour_count] = fields[..] else {
        return Err(perr(hline, format!("expected \"n colour_count\", got {header:?}")));
    };
    let n: usize = n
        .parse()
        .map_err(|e| perr(hline, format!("bad vertex count {n:?}: {e}")))?;
    let colour_count: u32 = colour_count
        .parse()
        .map_err(|e| perr(hline, format!("bad colour count {colour_count:?}: {e}")))?;
    if n < 2 {
        return Err(perr(hline, format!("vertex count {n} is below 2")));
    }

    const UNSET: u32 = u32::MAX;
    let cc = colour_count as usize;
    let mut colours = vec![UNSET; n * (n - 1) / 2];
    let mut used = vec![false; n * cc];
    let mut seen_edges = 0usize;
    let mut last_line = hline;
    for (lineno, line) in lines {
        last_line = lineno;
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [u, v, colour] = fields[..] else {
            return Err(perr(lineno, format!("expected \"u v c\", got {line:?}")));
        };
        let num = |s: &str, what: &str| {
            s.parse::<usize>()
                .map_err(|e| perr(lineno, format!("bad {what} {s:?}: {e}")))
        };
        let (u, v, colour) = (num(u, "vertex")?, num(v, "vertex")?, num(colour, "colour")?);
        if u >= n || v >= n {
            return Err(perr(lineno, format!("vertex out of range 0..{n}")));
        }
        if u >= v {
            return Err(perr(lineno, format!("edge must be written with u < v, got {u} {v}")));
        }
        if colour >= cc {
            return Err(perr(
                lineno,
                format!("colour {colour} out of range 0..{colour_count}"),
            ));
        }
        let slot = &mut colours[pair_index(u, v)];
        if *slot != UNSET {
            return Err(perr(lineno, format!("duplicate edge {u} {v}")));
        }
        *slot = colour as u32;
        seen_edges += 1;
        for w in [u, v] {
            let flag = &mut used[w * cc + colour];
            if *flag {
                return Err(perr(
                    lineno,
                    format!("improper colouring: colour {colour} repeats at vertex {w}"),
                ));
            }
            *flag = true;
        }
    }
    if seen_edges != colours.len() {
        return Err(perr(
            last_line,
            format!(
                "expected {} edges, found {seen_edges}",
                colours.len()
            ),
        ));
    }
    let missing = compute_missing(n, colour_count, &colours);
    Ok(ProperColouring {
        n,
        colour_count,
        colours,
        missing,
    })
}

pub fn read_colouring(path: &Path) -> Result<ProperColouring> {
    parse_colouring(&std::fs::read_to_string(path)?)
}

pub fn write_colouring(path: &Path, c: &ProperColouring) -> Result<()> {
    std::fs::write(path, serialize_colouring(c))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Incident colours of `u`, by direct scan.
    fn incident(c: &ProperColouring, u: usize) -> Vec<u32> {
        (0..c.n()).filter(|&v| v != u).map(|v| c.colour(u, v)).collect()
    }

    #[test]
    fn circle_four_matches_formula() {
        let c = circle_colouring(4).unwrap();
        assert_eq!(c.colour_count(), 3);
        assert_eq!(c.colour(0, 1), 1);
        assert_eq!(c.colour(1, 2), 0);
        assert_eq!(c.colour(2, 3), 1);
        assert_eq!(c.colour(3, 0), 0);
        assert!(validate_proper(&c).is_proper());
    }

    #[test]
    fn circle_six_classes_are_perfect_matchings() {
        let c = circle_colouring(6).unwrap();
        let report = validate_proper(&c);
        assert_eq!(report.class_sizes, vec![3; 5]);
        assert!(report.class_shapes.iter().all(|&s| s == ClassShape::Perfect));
        for colour in 0..5 {
            let edges = c.class_edges(colour);
            let mut covered: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
            covered.sort_unstable();
            assert_eq!(covered, (0..6).collect::<Vec<_>>());
        }
    }

    #[test]
    fn circle_rejects_bad_orders() {
        assert!(circle_colouring(5).is_err());
        assert!(circle_colouring(2).is_err());
        assert!(circle_colouring(0).is_err());
    }

    #[test]
    fn cyclic_missing_colours() {
        let c = cyclic_colouring_odd(5).unwrap();
        assert_eq!(c.missing(0), Some(0));
        assert_eq!(c.missing(1), Some(2));
        assert_eq!(c.missing(2), Some(4));
        for u in 0..5 {
            let inc = incident(&c, u);
            let m = c.missing(u).unwrap();
            assert!(!inc.contains(&m));
        }
        let report = validate_proper(&c);
        assert_eq!(report.class_sizes, vec![2; 5]);
        assert!(report.class_shapes.iter().all(|&s| s == ClassShape::NearPerfect));
    }

    #[test]
    fn cyclic_three() {
        let c = cyclic_colouring_odd(3).unwrap();
        assert_eq!(c.colour(0, 1), 1);
        assert_eq!(c.colour(0, 2), 2);
        assert_eq!(c.colour(1, 2), 0);
        assert!(cyclic_colouring_odd(4).is_err());
    }

    #[test]
    fn xor_colours_depend_on_difference() {
        let c = xor_colouring(2).unwrap();
        assert_eq!(c.colour_count(), 3);
        assert_eq!(c.colour(0b00, 0b01), c.colour(0b10, 0b11));
        let c3 = xor_colouring(3).unwrap();
        let report = validate_proper(&c3);
        assert!(report.is_proper());
        assert_eq!(report.class_sizes, vec![4; 7]);
        assert!(report.class_shapes.iter().all(|&s| s == ClassShape::Perfect));
        assert_eq!(xor_colour_vector(c3.colour(0b101, 0b011)), 0b110);
    }

    #[test]
    fn even_colourings_have_no_missing_colour() {
        let c = circle_colouring(8).unwrap();
        assert!((0..8).all(|u| c.missing(u).is_none()));
    }

    #[test]
    fn validate_reports_repeated_colour() {
        // colour({0,1}) = colour({0,2}) = 0
        let c = ProperColouring::from_fn_unvalidated(3, 2, |u, v| match (u, v) {
            (0, 1) | (0, 2) => 0,
            _ => 1,
        })
        .unwrap();
        let report = validate_proper(&c);
        assert!(report.violations.contains(&ProperViolation { vertex: 0, colour: 0 }));
        assert_eq!(report.class_shapes[0], ClassShape::NotAMatching);
        assert!(matches!(
            ProperColouring::from_fn(3, 2, |u, _| u as u32),
            Err(Error::Improper { .. })
        ));
    }

    #[test]
    fn extension_of_cyclic_three() {
        let c = extend_odd_to_even(&cyclic_colouring_odd(3).unwrap()).unwrap();
        assert_eq!(c.n(), 4);
        assert_eq!(c.colour_count(), 3);
        assert_eq!(incident(&c, 3), vec![0, 2, 1]);
        assert!(validate_proper(&c).is_proper());
    }

    #[test]
    fn extension_of_cyclic_five() {
        let c = extend_odd_to_even(&cyclic_colouring_odd(5).unwrap()).unwrap();
        assert_eq!((c.n(), c.colour_count()), (6, 5));
        let report = validate_proper(&c);
        assert!(report.is_proper());
        assert!(report.class_shapes.iter().all(|&s| s == ClassShape::Perfect));
    }

    #[test]
    fn extension_rejects_even_input() {
        assert!(extend_odd_to_even(&circle_colouring(6).unwrap()).is_err());
    }

    #[test]
    fn extension_rejects_undefined_missing_map() {
        // K_3 with 4 colours: every vertex misses two colours.
        let c = ProperColouring::from_fn(3, 4, |u, v| (u + v) as u32).unwrap();
        assert!(extend_odd_to_even(&c).is_err());
    }

    #[test]
    fn serialize_header_and_lines() {
        let text = serialize_colouring(&circle_colouring(4).unwrap());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "4 3");
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[1], "0 1 1");
    }

    #[test]
    fn round_trip_xor() {
        let c = xor_colouring(3).unwrap();
        assert_eq!(parse_colouring(&serialize_colouring(&c)).unwrap(), c);
    }

    #[test]
    fn parse_skips_comments() {
        let text = "# K_3\n3 3\n0 1 1\n# middle\n0 2 2\n\n1 2 0\n";
        let c = parse_colouring(text).unwrap();
        assert_eq!(c, cyclic_colouring_odd(3).unwrap());
    }

    fn parse_err_line(text: &str) -> usize {
        match parse_colouring(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        // colour out of range
        assert_eq!(parse_err_line("4 3\n0 1 5\n"), 2);
        // malformed
        assert_eq!(parse_err_line("3 3\n0 1\n"), 2);
        assert_eq!(parse_err_line("3\n"), 1);
        // vertex out of range
        assert_eq!(parse_err_line("3 3\n0 1 1\n0 7 2\n"), 3);
        // duplicate
        assert_eq!(parse_err_line("3 3\n0 1 1\n0 1 1\n"), 3);
        // improper: colour 1 twice at vertex 0
        assert_eq!(parse_err_line("3 3\n0 1 1\n0 2 1\n1 2 0\n"), 3);
        // missing edge
        assert_eq!(parse_err_line("3 3\n0 1 1\n0 2 2\n"), 3);
        // reversed pair
        assert_eq!(parse_err_line("3 3\n1 0 1\n"), 2);
    }
}
