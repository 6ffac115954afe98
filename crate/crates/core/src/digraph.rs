//! Weighted k-colored digraphs.
//!
//! Between any ordered pair of vertices there are either no edges or exactly
//! `k` edges, one per color, each with a nonzero weight. Vertices and colors
//! are numbered from 1.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Polynomial, VarId};

/// A set of colors drawn from `1..=64`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorSet(u64);

impl ColorSet {
    pub const MAX_COLORS: usize = 64;

    pub fn empty() -> Self {
        ColorSet(0)
    }

    /// `{1, ..., k}`.
    pub fn full(k: usize) -> Self {
        assert!(k <= Self::MAX_COLORS, "at most 64 colors are supported");
        if k == 64 {
            ColorSet(u64::MAX)
        } else {
            ColorSet((1u64 << k) - 1)
        }
    }

    pub fn single(color: usize) -> Self {
        assert!(
            (1..=Self::MAX_COLORS).contains(&color),
            "color {color} out of range"
        );
        ColorSet(1 << (color - 1))
    }

    pub fn from_bits(bits: u64) -> Self {
        ColorSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, color: usize) -> bool {
        (1..=Self::MAX_COLORS).contains(&color) && self.0 & (1 << (color - 1)) != 0
    }

    pub fn insert(&mut self, color: usize) {
        *self = self.union(ColorSet::single(color));
    }

    pub fn union(self, other: Self) -> Self {
        ColorSet(self.0 | other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ColorSet(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64)
            .filter(move |b| self.0 & (1 << b) != 0)
            .map(|b| b + 1)
    }

    /// All subsets of `{1..=k}` with exactly `size` members, in increasing
    /// bit order.
    pub fn subsets_of_size(k: usize, size: usize) -> Vec<ColorSet> {
        let full = ColorSet::full(k).0;
        let mut out = Vec::new();
        let mut s = full;
        // enumerate all submasks of `full`, descending; fine for k <= ~20
        loop {
            if s.count_ones() as usize == size {
                out.push(ColorSet(s));
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & full;
        }
        out.reverse();
        out
    }
}

impl FromIterator<usize> for ColorSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter()
            .fold(ColorSet::empty(), |acc, c| acc.union(ColorSet::single(c)))
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "c{c}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredDigraph {
    n: usize,
    k: usize,
    edges: BTreeMap<(usize, usize), Vec<Polynomial>>,
}

impl ColoredDigraph {
    pub fn new(n: usize, k: usize) -> Self {
        ColoredDigraph {
            n,
            k,
            edges: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn colors(&self) -> ColorSet {
        ColorSet::full(self.k)
    }

    /// Installs the edge bundle `from -> to`, replacing any previous one.
    /// Nothing is checked here; see [`validate`].
    pub fn set_bundle(&mut self, from: usize, to: usize, weights: Vec<Polynomial>) {
        self.edges.insert((from, to), weights);
    }

    pub fn bundle(&self, from: usize, to: usize) -> Option<&[Polynomial]> {
        self.edges.get(&(from, to)).map(Vec::as_slice)
    }

    pub fn bundles(&self) -> impl Iterator<Item = ((usize, usize), &[Polynomial])> {
        self.edges.iter().map(|(pair, w)| (*pair, w.as_slice()))
    }

    /// Weight of the edge `from -> to` with the given color.
    pub fn weight(&self, from: usize, to: usize, color: usize) -> Option<&Polynomial> {
        color
            .checked_sub(1)
            .and_then(|c| self.edges.get(&(from, to))?.get(c))
    }

    /// Out-neighbours of `v`, ascending.
    pub fn successors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .range((v, 0)..=(v, usize::MAX))
            .map(|((_, to), _)| *to)
    }

    /// Relabels vertices through `perm`, where `perm[v - 1]` is the new
    /// label of `v`.
    pub fn relabel(&self, perm: &[usize]) -> ColoredDigraph {
        let mut out = ColoredDigraph::new(self.n, self.k);
        for ((from, to), w) in &self.edges {
            out.set_bundle(perm[from - 1], perm[to - 1], w.clone());
        }
        out
    }
}

/// Every way `g` breaks the colored-digraph rules, as readable messages.
pub fn validate(g: &ColoredDigraph) -> Vec<String> {
    let mut out = Vec::new();
    if g.n == 0 {
        out.push("graph must have at least one vertex".to_string());
    }
    if g.k == 0 {
        out.push("graph must have at least one color".to_string());
    }
    if g.k > ColorSet::MAX_COLORS {
        out.push(format!(
            "at most {} colors are supported",
            ColorSet::MAX_COLORS
        ));
    }
    for ((from, to), weights) in &g.edges {
        for v in [from, to] {
            if *v == 0 || *v > g.n {
                out.push(format!(
                    "edge {from}->{to}: vertex {v} is outside 1..={}",
                    g.n
                ));
            }
        }
        if weights.len() != g.k {
            out.push(format!(
                "edge {from}->{to}: expected {} weights, found {}",
                g.k,
                weights.len()
            ));
        }
        for (c, w) in weights.iter().enumerate() {
            if w.is_zero() {
                out.push(format!(
                    "edge {from}->{to}: weight of color {} is zero",
                    c + 1
                ));
            }
        }
    }
    out
}

/// The graph with `n` vertices and `r` colors whose only edges are the `r`
/// self-loops at each vertex; the loop at `v_j` with color `c_i` weighs
/// `a[j]^(i)`.
pub fn build_gamma_rc(n: usize, r: usize) -> ColoredDigraph {
    let mut g = ColoredDigraph::new(n, r);
    for j in 1..=n {
        let weights = (1..=r)
            .map(|i| Polynomial::var(VarId::a(j as u32, i as u32)))
            .collect();
        g.set_bundle(j, j, weights);
    }
    g
}

/// A random graph: every ordered pair (loops included) carries a bundle with
/// probability `edge_density`, weights uniform in `[-bound, bound] \ {0}`.
pub fn random_digraph(
    n: usize,
    k: usize,
    edge_density: f64,
    weight_bound: u32,
    seed: u64,
) -> ColoredDigraph {
    assert!(
        edge_density > 0.0 && edge_density <= 1.0,
        "density must lie in (0, 1]"
    );
    assert!(weight_bound >= 1, "weight bound must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = weight_bound as i64;
    let mut g = ColoredDigraph::new(n, k);
    for from in 1..=n {
        for to in 1..=n {
            if rng.gen::<f64>() >= edge_density {
                continue;
            }
            let weights = (0..k)
                .map(|_| {
                    let draw = rng.gen_range(0..2 * b);
                    let w = if draw < b { draw - b } else { draw - b + 1 };
                    Polynomial::constant(w)
                })
                .collect();
            g.set_bundle(from, to, weights);
        }
    }
    g
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    n: usize,
    colors: usize,
    edges: Vec<EdgeEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeEntry {
    from: usize,
    to: usize,
    weights: Vec<WeightValue>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WeightValue {
    Int(serde_json::Number),
    Symbolic(String),
}

/// Parses the JSON graph format. Structural problems are errors; rule
/// violations (wrong bundle length, zero weights) are left for [`validate`].
pub fn parse_digraph(text: &str) -> Result<ColoredDigraph> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::GraphParse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut g = ColoredDigraph::new(file.n, file.colors);
    for (idx, edge) in file.edges.into_iter().enumerate() {
        let locate = |message: String| Error::GraphParse {
            line: 0,
            column: 0,
            message: format!("edges[{idx}]: {message}"),
        };
        if g.bundle(edge.from, edge.to).is_some() {
            return Err(locate(format!("duplicate edge {}->{}", edge.from, edge.to)));
        }
        let weights = edge
            .weights
            .into_iter()
            .map(|w| match w {
                WeightValue::Int(num) => num
                    .to_string()
                    .parse::<BigInt>()
                    .map(Polynomial::constant)
                    .map_err(|_| locate(format!("weight {num} is not an integer"))),
                WeightValue::Symbolic(s) => s
                    .parse::<Polynomial>()
                    .map_err(|e| locate(format!("weight \"{s}\": {e}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        g.set_bundle(edge.from, edge.to, weights);
    }
    Ok(g)
}

/// Canonical JSON text for `g`: edges sorted by `(from, to)`, integer
/// weights as JSON integers, symbolic weights as polynomial strings.
pub fn serialize_digraph(g: &ColoredDigraph) -> String {
    let file = GraphFile {
        n: g.n,
        colors: g.k,
        edges: g
            .edges
            .iter()
            .map(|((from, to), weights)| EdgeEntry {
                from: *from,
                to: *to,
                weights: weights
                    .iter()
                    .map(|w| match w.as_constant() {
                        Some(c) => WeightValue::Int(
                            c.to_string()
                                .parse()
                                .expect("integer literal is a valid JSON number"),
                        ),
                        None => WeightValue::Symbolic(w.to_string()),
                    })
                    .collect(),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("graph serializes");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn color_set_basics() {
        let s: ColorSet = [1, 3].into_iter().collect();
        assert_eq!(s.len(), 2);
        assert!(s.contains(3) && !s.contains(2) && !s.contains(0));
        assert!(s.is_disjoint(ColorSet::single(2)));
        assert!(s.is_subset(ColorSet::full(3)));
        assert_eq!(s.to_string(), "{c1,c3}");
        assert_eq!(ColorSet::subsets_of_size(4, 2).len(), 6);
        assert_eq!(ColorSet::subsets_of_size(3, 0), vec![ColorSet::empty()]);
        assert_eq!(ColorSet::full(64).len(), 64);
    }

    #[test]
    fn validation_examples() {
        let mut g = ColoredDigraph::new(1, 1);
        g.set_bundle(1, 1, vec![Polynomial::constant(2)]);
        assert!(validate(&g).is_empty());

        let mut short = ColoredDigraph::new(2, 3);
        short.set_bundle(1, 2, vec![Polynomial::constant(1), Polynomial::constant(1)]);
        let v = validate(&short);
        assert_eq!(v.len(), 1);
        assert!(v[0].contains("1->2"), "{v:?}");

        let mut zero = ColoredDigraph::new(2, 2);
        zero.set_bundle(2, 1, vec![Polynomial::constant(1), Polynomial::zero()]);
        let v = validate(&zero);
        assert_eq!(v.len(), 1);
        assert!(v[0].contains("2->1") && v[0].contains("color 2"), "{v:?}");

        let mut out_of_range = ColoredDigraph::new(2, 1);
        out_of_range.set_bundle(1, 3, vec![Polynomial::constant(1)]);
        assert_eq!(validate(&out_of_range).len(), 1);
    }

    #[test]
    fn gamma_rc_shape() {
        let g = build_gamma_rc(1, 1);
        assert_eq!(g.weight(1, 1, 1), Some(&Polynomial::var(VarId::a(1, 1))));
        let g = build_gamma_rc(2, 2);
        assert_eq!(g.bundles().count(), 2);
        for j in 1..=2 {
            for i in 1..=2 {
                assert_eq!(
                    g.weight(j, j, i),
                    Some(&Polynomial::var(VarId::a(j as u32, i as u32)))
                );
            }
        }
        assert!(g.bundle(1, 2).is_none());
        for n in 1..=4 {
            for r in 1..=4 {
                assert!(validate(&build_gamma_rc(n, r)).is_empty());
            }
        }
    }

    #[test]
    fn random_graphs() {
        let a = random_digraph(3, 2, 0.5, 3, 42);
        let b = random_digraph(3, 2, 0.5, 3, 42);
        assert_eq!(a, b);
        let full = random_digraph(2, 1, 1.0, 1, 7);
        assert_eq!(full.bundles().count(), 4);
        for seed in 0..100 {
            let g = random_digraph(4, 3, 0.5, 3, seed);
            assert!(validate(&g).is_empty());
            for (_, w) in g.bundles() {
                for c in w {
                    let v = c.as_constant().unwrap();
                    assert!(v != BigInt::from(0) && v.magnitude() <= &3u32.into());
                }
            }
        }
    }

    #[test]
    fn file_round_trip() {
        let g = build_gamma_rc(2, 2);
        let text = serialize_digraph(&g);
        let back = parse_digraph(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(serialize_digraph(&back), text);

        let numeric = random_digraph(3, 2, 0.7, 3, 9);
        let text = serialize_digraph(&numeric);
        assert!(!text.contains("a["));
        assert_eq!(serialize_digraph(&parse_digraph(&text).unwrap()), text);
    }

    #[test]
    fn compact_input_is_accepted() {
        let g = parse_digraph(
            r#"{"n": 2, "colors": 1, "edges": [{"from": 2, "to": 1, "weights": [-3]}, {"from": 1, "to": 2, "weights": [5]}]}"#,
        )
        .unwrap();
        assert_eq!(g.weight(1, 2, 1), Some(&Polynomial::constant(5)));
        let text = serialize_digraph(&g);
        assert!(text.find("\"from\": 1").unwrap() < text.find("\"from\": 2").unwrap());
    }

    #[test]
    fn parse_errors() {
        match parse_digraph(r#"{"n": 1, "edges": []}"#) {
            Err(Error::GraphParse { message, line, .. }) => {
                assert!(message.contains("colors"), "{message}");
                assert_eq!(line, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        let dup = r#"{"n": 1, "colors": 1, "edges": [{"from": 1, "to": 1, "weights": [1]}, {"from": 1, "to": 1, "weights": [2]}]}"#;
        match parse_digraph(dup) {
            Err(Error::GraphParse { message, .. }) => assert!(message.contains("duplicate")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_digraph(
            r#"{"n": 1, "colors": 1, "edges": [{"from": 1, "to": 1, "weights": [1.5]}]}"#
        )
        .is_err());
        let wrong_len = parse_digraph(
            r#"{"n": 1, "colors": 2, "edges": [{"from": 1, "to": 1, "weights": [1]}]}"#,
        )
        .unwrap();
        assert_eq!(validate(&wrong_len).len(), 1);
    }
}
