//! Exhaustive enumeration of colored linear subdigraphs and colored closed
//! walks, and the signed weight sums built from them.

use std::collections::BTreeMap;
use std::fmt;

use crate::digraph::{ColorSet, ColoredDigraph};
use crate::poly::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub color: usize,
}

/// A directed cycle as its edge sequence, rotated to start at its smallest
/// vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle(Vec<Edge>);

impl Cycle {
    /// Accepts any rotation of a closed edge sequence.
    pub fn new(mut edges: Vec<Edge>) -> Self {
        assert!(!edges.is_empty(), "a cycle has at least one edge");
        let start = (0..edges.len()).min_by_key(|&i| edges[i].from).unwrap_or(0);
        edges.rotate_left(start);
        Cycle(edges)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min_vertex(&self) -> usize {
        self.0[0].from
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|e| e.from)
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices().any(|u| u == v)
    }

    pub fn colors(&self) -> ColorSet {
        self.0.iter().map(|e| e.color).collect()
    }

    /// The cycle's edges starting with the one leaving `v`.
    pub fn rotated_to(&self, v: usize) -> Option<Vec<Edge>> {
        let pos = self.0.iter().position(|e| e.from == v)?;
        let mut edges = self.0.clone();
        edges.rotate_left(pos);
        Some(edges)
    }

    pub fn weight(&self, g: &ColoredDigraph) -> Polynomial {
        edge_product(g, &self.0)
    }

    /// Vertices pairwise distinct, edges chained and closed, colors pairwise
    /// distinct.
    pub fn is_well_formed(&self) -> bool {
        let n = self.0.len();
        let chained = (0..n).all(|i| self.0[i].to == self.0[(i + 1) % n].from);
        let mut vs: Vec<usize> = self.vertices().collect();
        vs.sort_unstable();
        vs.dedup();
        chained && vs.len() == n && self.colors().len() == n
    }
}

fn edge_product(g: &ColoredDigraph, edges: &[Edge]) -> Polynomial {
    let mut acc = Polynomial::one();
    for e in edges {
        let w = g.weight(e.from, e.to, e.color).unwrap_or_else(|| {
            panic!(
                "edge {}->{} color {} is not in the graph",
                e.from, e.to, e.color
            )
        });
        acc = &acc * w;
    }
    acc
}

/// Pairwise vertex-disjoint cycles whose edges carry pairwise-distinct
/// colors. Cycles are kept sorted by smallest vertex, so two values are equal
/// exactly when they describe the same subdigraph.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearSubdigraph {
    cycles: Vec<Cycle>,
}

impl LinearSubdigraph {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(mut cycles: Vec<Cycle>) -> Self {
        cycles.sort_by_key(Cycle::min_vertex);
        LinearSubdigraph { cycles }
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.cycles.iter().map(Cycle::len).sum()
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn colors(&self) -> ColorSet {
        self.cycles
            .iter()
            .fold(ColorSet::empty(), |acc, c| acc.union(c.colors()))
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.cycles.iter().flat_map(Cycle::vertices)
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.cycles.iter().any(|c| c.contains_vertex(v))
    }

    pub fn cycle_through(&self, v: usize) -> Option<&Cycle> {
        self.cycles.iter().find(|c| c.contains_vertex(v))
    }

    pub fn with_cycle(&self, cycle: Cycle) -> Self {
        let mut cycles = self.cycles.clone();
        cycles.push(cycle);
        Self::new(cycles)
    }

    pub fn without_cycle_through(&self, v: usize) -> Self {
        LinearSubdigraph {
            cycles: self
                .cycles
                .iter()
                .filter(|c| !c.contains_vertex(v))
                .cloned()
                .collect(),
        }
    }

    pub fn weight(&self, g: &ColoredDigraph) -> Polynomial {
        Polynomial::product(
            self.cycles
                .iter()
                .map(|c| c.weight(g))
                .collect::<Vec<_>>()
                .iter(),
        )
    }

    /// `(-1)^{c(γ)} W(γ)`.
    pub fn signed_weight(&self, g: &ColoredDigraph) -> Polynomial {
        let w = self.weight(g);
        if self.cycle_count() % 2 == 1 {
            -w
        } else {
            w
        }
    }

    pub fn is_well_formed_in(&self, g: &ColoredDigraph) -> bool {
        let mut vs: Vec<usize> = self.vertices().collect();
        let total = vs.len();
        vs.sort_unstable();
        vs.dedup();
        vs.len() == total
            && self.colors().len() == self.len()
            && self.cycles.iter().all(Cycle::is_well_formed)
            && self
                .cycles
                .iter()
                .flat_map(|c| c.edges())
                .all(|e| g.weight(e.from, e.to, e.color).is_some())
            && self
                .cycles
                .windows(2)
                .all(|w| w[0].min_vertex() < w[1].min_vertex())
    }
}

impl fmt::Display for LinearSubdigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        for (i, c) in self.cycles.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str("(")?;
            for e in c.edges() {
                write!(f, "{}-c{}->", e.from, e.color)?;
            }
            write!(f, "{})", c.min_vertex())?;
        }
        Ok(())
    }
}

/// A rooted closed walk whose edges have pairwise-distinct colors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClosedWalk {
    root: usize,
    /// `(next vertex, edge color)` per step
    steps: Vec<(usize, usize)>,
}

impl ClosedWalk {
    pub fn new(root: usize, steps: Vec<(usize, usize)>) -> Self {
        ClosedWalk { root, steps }
    }

    pub fn from_edges(edges: &[Edge]) -> Self {
        let root = edges.first().map(|e| e.from).expect("walk needs an edge");
        ClosedWalk {
            root,
            steps: edges.iter().map(|e| (e.to, e.color)).collect(),
        }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn steps(&self) -> &[(usize, usize)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `v_0, v_1, ..., v_L`.
    pub fn vertices(&self) -> Vec<usize> {
        std::iter::once(self.root)
            .chain(self.steps.iter().map(|s| s.0))
            .collect()
    }

    pub fn terminal(&self) -> usize {
        self.steps.last().map_or(self.root, |s| s.0)
    }

    pub fn edges(&self) -> Vec<Edge> {
        let vs = self.vertices();
        self.steps
            .iter()
            .enumerate()
            .map(|(i, &(to, color))| Edge {
                from: vs[i],
                to,
                color,
            })
            .collect()
    }

    pub fn colors(&self) -> ColorSet {
        self.steps.iter().map(|s| s.1).collect()
    }

    pub fn weight(&self, g: &ColoredDigraph) -> Polynomial {
        edge_product(g, &self.edges())
    }

    pub fn is_well_formed_in(&self, g: &ColoredDigraph) -> bool {
        self.terminal() == self.root
            && self.colors().len() == self.len()
            && self
                .edges()
                .iter()
                .all(|e| g.weight(e.from, e.to, e.color).is_some())
    }
}

impl fmt::Display for ClosedWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.root)?;
        for (v, c) in &self.steps {
            write!(f, "-c{c}->{v}")?;
        }
        Ok(())
    }
}

struct ClsdSearch<'a> {
    g: &'a ColoredDigraph,
    max_len: usize,
    allowed: ColorSet,
    used_vertex: Vec<bool>,
    used_colors: ColorSet,
    current: Vec<Cycle>,
    current_len: usize,
    out: Vec<LinearSubdigraph>,
}

impl ClsdSearch<'_> {
    fn run(&mut self, cursor: usize) {
        if !self.current.is_empty() {
            self.out.push(LinearSubdigraph {
                cycles: self.current.clone(),
            });
        }
        for v in cursor..=self.g.n() {
            if self.used_vertex[v] {
                continue;
            }
            let mut found = Vec::new();
            let mut path = Vec::new();
            self.cycles_from(v, v, &mut path, &mut found);
            for cycle in found {
                for u in cycle.vertices() {
                    self.used_vertex[u] = true;
                }
                let colors = cycle.colors();
                self.used_colors = self.used_colors.union(colors);
                self.current_len += cycle.len();
                self.current.push(cycle);
                self.run(v + 1);
                let cycle = self.current.pop().expect("pushed above");
                self.current_len -= cycle.len();
                self.used_colors = self.used_colors.difference(colors);
                for u in cycle.vertices() {
                    self.used_vertex[u] = false;
                }
            }
        }
    }

    /// Cycles through `start` using only vertices above `start`.
    fn cycles_from(&self, start: usize, at: usize, path: &mut Vec<Edge>, found: &mut Vec<Cycle>) {
        if self.current_len + path.len() >= self.max_len {
            return;
        }
        let path_colors: ColorSet = path.iter().map(|e| e.color).collect();
        let blocked = self.used_colors.union(path_colors);
        for next in self.g.successors(at) {
            let closes = next == start;
            if !closes
                && (next < start || self.used_vertex[next] || path.iter().any(|e| e.to == next))
            {
                continue;
            }
            for color in 1..=self.g.k() {
                if blocked.contains(color) || !self.allowed.contains(color) {
                    continue;
                }
                path.push(Edge {
                    from: at,
                    to: next,
                    color,
                });
                if closes {
                    found.push(Cycle(path.clone()));
                } else {
                    self.cycles_from(start, next, path, found);
                }
                path.pop();
            }
        }
    }
}

/// All nonempty colored linear subdigraphs of `g`, optionally restricted to
/// length `p` and color set exactly `colors`.
pub fn enum_clsd(
    g: &ColoredDigraph,
    length: Option<usize>,
    colors: Option<ColorSet>,
) -> Vec<LinearSubdigraph> {
    let mut search = ClsdSearch {
        g,
        max_len: length.unwrap_or(usize::MAX).min(g.k()).min(g.n()),
        allowed: colors.unwrap_or_else(|| g.colors()),
        used_vertex: vec![false; g.n() + 1],
        used_colors: ColorSet::empty(),
        current: Vec::new(),
        current_len: 0,
        out: Vec::new(),
    };
    search.run(1);
    let mut out = search.out;
    out.retain(|gamma| {
        length.is_none_or(|p| gamma.len() == p) && colors.is_none_or(|s| gamma.colors() == s)
    });
    out
}

/// All colored closed walks of positive length, optionally restricted to
/// length `q` and color set exactly `colors`.
pub fn enum_ccw(
    g: &ColoredDigraph,
    length: Option<usize>,
    colors: Option<ColorSet>,
) -> Vec<ClosedWalk> {
    #[allow(clippy::too_many_arguments)]
    fn extend(
        g: &ColoredDigraph,
        root: usize,
        at: usize,
        max_len: usize,
        allowed: ColorSet,
        used: ColorSet,
        steps: &mut Vec<(usize, usize)>,
        out: &mut Vec<ClosedWalk>,
    ) {
        if steps.len() >= max_len {
            return;
        }
        for next in g.successors(at) {
            for color in 1..=g.k() {
                if used.contains(color) || !allowed.contains(color) {
                    continue;
                }
                steps.push((next, color));
                if next == root {
                    out.push(ClosedWalk::new(root, steps.clone()));
                }
                let used = used.union(ColorSet::single(color));
                extend(g, root, next, max_len, allowed, used, steps, out);
                steps.pop();
            }
        }
    }

    let max_len = length.unwrap_or(usize::MAX).min(g.k());
    let allowed = colors.unwrap_or_else(|| g.colors());
    let mut out = Vec::new();
    for root in 1..=g.n() {
        extend(
            g,
            root,
            root,
            max_len,
            allowed,
            ColorSet::empty(),
            &mut Vec::new(),
            &mut out,
        );
    }
    out.retain(|w| length.is_none_or(|q| w.len() == q) && colors.is_none_or(|t| w.colors() == t));
    out
}

/// `ℓ_{p,S}`: the sum of `(-1)^{c(γ)} W(γ)` over linear subdigraphs of
/// length `p` with color set `S`; 1 for `p = 0, S = ∅`.
pub fn ell(g: &ColoredDigraph, p: usize, s: ColorSet) -> Polynomial {
    if p != s.len() {
        return Polynomial::zero();
    }
    if p == 0 {
        return Polynomial::one();
    }
    Polynomial::sum(
        enum_clsd(g, Some(p), Some(s))
            .iter()
            .map(|gamma| gamma.signed_weight(g))
            .collect::<Vec<_>>()
            .iter(),
    )
}

/// `c_{q,T}`: the sum of `W(w)` over closed walks of length `q` with color
/// set `T`; 1 for `q = 0, T = ∅`.
pub fn c_walk(g: &ColoredDigraph, q: usize, t: ColorSet) -> Polynomial {
    if q != t.len() {
        return Polynomial::zero();
    }
    if q == 0 {
        return Polynomial::one();
    }
    let mut acc = Polynomial::zero();
    for w in enum_ccw(g, Some(q), Some(t)) {
        acc += w.weight(g);
    }
    acc
}

/// `ℓ_{|S|,S}` for every color set `S` (the empty set included), from a
/// single enumeration.
pub fn ell_table(g: &ColoredDigraph) -> BTreeMap<ColorSet, Polynomial> {
    let mut table = BTreeMap::from([(ColorSet::empty(), Polynomial::one())]);
    for gamma in enum_clsd(g, None, None) {
        *table.entry(gamma.colors()).or_default() += gamma.signed_weight(g);
    }
    table.retain(|_, p| !p.is_zero());
    table
}

/// `c_{|T|,T}` for every color set `T` (the empty set included).
pub fn walk_table(g: &ColoredDigraph) -> BTreeMap<ColorSet, Polynomial> {
    let mut table = BTreeMap::from([(ColorSet::empty(), Polynomial::one())]);
    for w in enum_ccw(g, None, None) {
        *table.entry(w.colors()).or_default() += w.weight(g);
    }
    table.retain(|_, p| !p.is_zero());
    table
}
