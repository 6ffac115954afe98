//! The sign-reversing involution on (closed walk, linear subdigraph) pairs.
//!
//! A pair `(w, γ)` is GOOD when `w` is a simple cycle vertex-disjoint from
//! `γ`, and BAD otherwise. On BAD pairs the walk is scanned from its root:
//! at each vertex, membership in `γ` is tested first (the root included), and
//! only then whether the vertex closes a cycle within the walk.
//!
//! * Meeting a vertex `y` of `γ` splices `γ`'s cycle through `y` into the
//!   walk at that point and drops it from `γ`.
//! * Closing a cycle cuts that cycle out of the walk and adds it to `γ`.
//!
//! Each move flips the parity of `c(γ)` and the two moves undo each other.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::digraph::ColoredDigraph;
use crate::enumerate::{enum_ccw, enum_clsd, ClosedWalk, Cycle, Edge, LinearSubdigraph};
use crate::error::{Error, Result};
use crate::newton::{ell_total, theorem2_sum, verify_theorem2, NewtonCase};
use crate::poly::Polynomial;

/// An open or closed walk given by its start and `(next, color)` steps.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Walk {
    pub start: usize,
    pub steps: Vec<(usize, usize)>,
}

impl Walk {
    pub fn trivial(at: usize) -> Self {
        Walk {
            start: at,
            steps: Vec::new(),
        }
    }

    pub fn end(&self) -> usize {
        self.steps.last().map_or(self.start, |s| s.0)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn vertices(&self) -> Vec<usize> {
        std::iter::once(self.start)
            .chain(self.steps.iter().map(|s| s.0))
            .collect()
    }
}

impl From<&ClosedWalk> for Walk {
    fn from(w: &ClosedWalk) -> Self {
        Walk {
            start: w.root(),
            steps: w.steps().to_vec(),
        }
    }
}

/// `w1 ⊙ w2`: `w2` continued from the end of `w1`.
pub fn walk_concat(w1: &Walk, w2: &Walk) -> Result<Walk> {
    if w1.end() != w2.start {
        return Err(Error::WalkEndpointMismatch {
            end: w1.end(),
            start: w2.start,
        });
    }
    let mut steps = w1.steps.clone();
    steps.extend_from_slice(&w2.steps);
    Ok(Walk {
        start: w1.start,
        steps,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WalkGammaPair {
    pub walk: ClosedWalk,
    pub gamma: LinearSubdigraph,
}

impl WalkGammaPair {
    pub fn new(walk: ClosedWalk, gamma: LinearSubdigraph) -> Self {
        WalkGammaPair { walk, gamma }
    }

    /// `(-1)^{c(γ)} W(w) W(γ)`.
    pub fn weight(&self, g: &ColoredDigraph) -> Polynomial {
        &self.walk.weight(g) * &self.gamma.signed_weight(g)
    }

    pub fn len(&self) -> usize {
        self.walk.len() + self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn colors_disjoint(&self) -> bool {
        self.walk.colors().is_disjoint(self.gamma.colors())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairClass {
    Good,
    Bad,
}

pub fn classify(pair: &WalkGammaPair) -> PairClass {
    let vs = pair.walk.vertices();
    let body = &vs[..vs.len() - 1];
    let mut seen = BTreeSet::new();
    let simple = body.iter().all(|v| seen.insert(*v));
    let disjoint = body.iter().all(|v| !pair.gamma.contains_vertex(*v));
    if simple && disjoint {
        PairClass::Good
    } else {
        PairClass::Bad
    }
}

pub fn involute(pair: &WalkGammaPair) -> Result<WalkGammaPair> {
    let vs = pair.walk.vertices();
    let steps = pair.walk.steps();
    let mut first_seen: BTreeMap<usize, usize> = BTreeMap::new();
    // the final vertex repeats the root; reaching it means the walk is GOOD
    for (t, &v) in vs.iter().enumerate().take(vs.len() - 1) {
        if let Some(cycle) = pair.gamma.cycle_through(v) {
            let around = cycle.rotated_to(v).expect("cycle passes through v");
            let mut new_steps = steps[..t].to_vec();
            new_steps.extend(around.iter().map(|e| (e.to, e.color)));
            new_steps.extend_from_slice(&steps[t..]);
            return Ok(WalkGammaPair {
                walk: ClosedWalk::new(pair.walk.root(), new_steps),
                gamma: pair.gamma.without_cycle_through(v),
            });
        }
        if let Some(&s) = first_seen.get(&v) {
            let cut: Vec<Edge> = (s..t)
                .map(|i| Edge {
                    from: vs[i],
                    to: steps[i].0,
                    color: steps[i].1,
                })
                .collect();
            let mut new_steps = steps[..s].to_vec();
            new_steps.extend_from_slice(&steps[t..]);
            return Ok(WalkGammaPair {
                walk: ClosedWalk::new(pair.walk.root(), new_steps),
                gamma: pair.gamma.with_cycle(Cycle::new(cut)),
            });
        }
        first_seen.insert(v, t);
    }
    Err(Error::GoodPair)
}

/// Pairs `(w, γ)` with `L(w) >= 1`, `L(w) + L(γ) = r` and disjoint colors.
#[derive(Debug, Clone)]
pub struct PairEnumeration {
    pub pairs: Vec<WalkGammaPair>,
    /// The empty-walk contribution `sum_{|S| = r} ℓ_{r,S}`, present unless
    /// only positive-length walks were requested. Empty walks are never
    /// materialized as pairs.
    pub empty_walk_term: Option<Polynomial>,
}

pub fn enumerate_pairs(
    g: &ColoredDigraph,
    r: usize,
    require_positive_walk: bool,
) -> PairEnumeration {
    let mut by_len: BTreeMap<usize, Vec<LinearSubdigraph>> = BTreeMap::new();
    by_len.entry(0).or_default().push(LinearSubdigraph::empty());
    for gamma in enum_clsd(g, None, None) {
        by_len.entry(gamma.len()).or_default().push(gamma);
    }
    let mut pairs = Vec::new();
    for w in enum_ccw(g, None, None) {
        if w.len() > r {
            continue;
        }
        let walk_colors = w.colors();
        for gamma in by_len.get(&(r - w.len())).into_iter().flatten() {
            if walk_colors.is_disjoint(gamma.colors()) {
                pairs.push(WalkGammaPair::new(w.clone(), gamma.clone()));
            }
        }
    }
    PairEnumeration {
        pairs,
        empty_walk_term: (!require_positive_walk).then(|| ell_total(g, r)),
    }
}

#[derive(Debug, Clone)]
pub struct GoodGroup {
    pub members: usize,
    pub weight_sum: Polynomial,
    /// `r (-1)^{c-1} W` for the group's subdigraph.
    pub expected_weight_sum: Polynomial,
}

#[derive(Debug, Clone)]
pub struct InvolutionAudit {
    pub r: usize,
    pub case: NewtonCase,
    pub pair_count: usize,
    pub bad_count: usize,
    pub good_count: usize,
    /// BAD pairs on which the involution law failed, with a reason.
    pub involution_failures: Vec<(WalkGammaPair, String)>,
    /// GOOD pairs grouped by the subdigraph `γ ∪ w`.
    pub good_groups: BTreeMap<LinearSubdigraph, GoodGroup>,
    /// `r`-edge subdigraphs that own no GOOD pair (only meaningful for `r <= n`).
    pub orphaned_subdigraphs: Vec<LinearSubdigraph>,
    pub bad_weight_sum: Polynomial,
    pub good_weight_sum: Polynomial,
    /// Sum of all pair weights plus the `T = ∅` term (`r * ell_total` when
    /// `r <= n`, `ell_total` otherwise).
    pub total: Polynomial,
    /// The matching residual computed by the identity checker.
    pub theorem_residual: Polynomial,
}

impl InvolutionAudit {
    pub fn involution_ok(&self) -> bool {
        self.involution_failures.is_empty() && self.bad_weight_sum.is_zero()
    }

    pub fn good_count_ok(&self) -> bool {
        match self.case {
            NewtonCase::RExceedsN => self.good_count == 0,
            NewtonCase::RAtMostN => {
                self.orphaned_subdigraphs.is_empty()
                    && self.good_groups.values().all(|grp| {
                        grp.members == self.r && grp.weight_sum == grp.expected_weight_sum
                    })
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.involution_ok()
            && self.good_count_ok()
            && self.total.is_zero()
            && self.total == self.theorem_residual
    }
}

pub fn audit_involution(g: &ColoredDigraph, r: usize) -> InvolutionAudit {
    let case = NewtonCase::of(r, g.n());
    let enumeration = enumerate_pairs(g, r, false);
    let all: BTreeSet<&WalkGammaPair> = enumeration.pairs.iter().collect();

    let mut failures = Vec::new();
    let mut good_groups: BTreeMap<LinearSubdigraph, GoodGroup> = BTreeMap::new();
    let mut bad_weight_sum = Polynomial::zero();
    let mut good_weight_sum = Polynomial::zero();
    let (mut bad_count, mut good_count) = (0, 0);

    for pair in &enumeration.pairs {
        let weight = pair.weight(g);
        match classify(pair) {
            PairClass::Bad => {
                bad_count += 1;
                bad_weight_sum += &weight;
                if let Err(reason) = check_involution(g, pair, &weight, &all) {
                    failures.push((pair.clone(), reason));
                }
            }
            PairClass::Good => {
                good_count += 1;
                good_weight_sum += &weight;
                let cycle = Cycle::new(pair.walk.edges());
                let whole = pair.gamma.with_cycle(cycle);
                let group = good_groups.entry(whole.clone()).or_insert_with(|| {
                    let sign = if whole.cycle_count() % 2 == 1 { 1 } else { -1 };
                    GoodGroup {
                        members: 0,
                        weight_sum: Polynomial::zero(),
                        expected_weight_sum: whole.weight(g).scale(&BigInt::from(sign * r as i64)),
                    }
                });
                group.members += 1;
                group.weight_sum += &weight;
            }
        }
    }

    let orphaned_subdigraphs = match case {
        NewtonCase::RExceedsN => Vec::new(),
        NewtonCase::RAtMostN => enum_clsd(g, Some(r), None)
            .into_iter()
            .filter(|gamma| !good_groups.contains_key(gamma))
            .collect(),
    };

    let empty_walk = enumeration.empty_walk_term.unwrap_or_default();
    let factor = match case {
        NewtonCase::RExceedsN => BigInt::from(1),
        NewtonCase::RAtMostN => BigInt::from(r),
    };
    let total = &(&bad_weight_sum + &good_weight_sum) + &empty_walk.scale(&factor);
    let theorem_residual = match case {
        NewtonCase::RExceedsN => theorem2_sum(g, r),
        NewtonCase::RAtMostN => verify_theorem2(g, r).residual,
    };

    InvolutionAudit {
        r,
        case,
        pair_count: enumeration.pairs.len(),
        bad_count,
        good_count,
        involution_failures: failures,
        good_groups,
        orphaned_subdigraphs,
        bad_weight_sum,
        good_weight_sum,
        total,
        theorem_residual,
    }
}

fn check_involution(
    g: &ColoredDigraph,
    pair: &WalkGammaPair,
    weight: &Polynomial,
    domain: &BTreeSet<&WalkGammaPair>,
) -> Result<(), String> {
    let image = involute(pair).map_err(|e| e.to_string())?;
    if !domain.contains(&image) {
        return Err(format!(
            "image ({}, {}) is outside the pair set",
            image.walk, image.gamma
        ));
    }
    if classify(&image) != PairClass::Bad {
        return Err("image is GOOD".into());
    }
    if !image.colors_disjoint() {
        return Err("image colors overlap".into());
    }
    if image.weight(g) != -weight {
        return Err("weight is not negated".into());
    }
    match involute(&image) {
        Ok(back) if &back == pair => Ok(()),
        Ok(back) => Err(format!(
            "second application gives ({}, {})",
            back.walk, back.gamma
        )),
        Err(e) => Err(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::build_gamma_rc;

    fn loop_walk(v: usize, colors: &[usize]) -> ClosedWalk {
        ClosedWalk::new(v, colors.iter().map(|c| (v, *c)).collect())
    }

    fn loop_gamma(v: usize, color: usize) -> LinearSubdigraph {
        LinearSubdigraph::new(vec![Cycle::new(vec![Edge {
            from: v,
            to: v,
            color,
        }])])
    }

    #[test]
    fn concat_examples() {
        let w = Walk {
            start: 1,
            steps: vec![(2, 1), (1, 2)],
        };
        assert_eq!(walk_concat(&w, &Walk::trivial(1)).unwrap(), w);
        let w3 = Walk {
            start: 1,
            steps: vec![(3, 3), (3, 4), (1, 5)],
        };
        assert_eq!(walk_concat(&w, &w3).unwrap().len(), 5);
        assert!(matches!(
            walk_concat(&w, &Walk::trivial(2)),
            Err(Error::WalkEndpointMismatch { end: 1, start: 2 })
        ));
    }

    #[test]
    fn classify_examples() {
        let good = WalkGammaPair::new(loop_walk(1, &[1]), LinearSubdigraph::empty());
        assert_eq!(classify(&good), PairClass::Good);
        let shared = WalkGammaPair::new(loop_walk(1, &[1]), loop_gamma(1, 2));
        assert_eq!(classify(&shared), PairClass::Bad);
        let revisit = WalkGammaPair::new(loop_walk(1, &[1, 2]), LinearSubdigraph::empty());
        assert_eq!(classify(&revisit), PairClass::Bad);
        assert_eq!(involute(&good), Err(Error::GoodPair));
    }

    #[test]
    fn hand_traced_involution() {
        let g = build_gamma_rc(1, 2);
        let start = WalkGammaPair::new(loop_walk(1, &[1, 2]), LinearSubdigraph::empty());
        let image = involute(&start).unwrap();
        assert_eq!(
            image,
            WalkGammaPair::new(loop_walk(1, &[2]), loop_gamma(1, 1))
        );
        assert_eq!(image.weight(&g), -start.weight(&g));
        // the root lies on γ, so the loop is spliced in front
        assert_eq!(involute(&image).unwrap(), start);
    }

    #[test]
    fn pair_enumeration_examples() {
        let g = build_gamma_rc(1, 1);
        let e = enumerate_pairs(&g, 1, true);
        assert_eq!(e.pairs.len(), 1);
        assert!(e.empty_walk_term.is_none());
        assert!(e.pairs[0].gamma.is_empty());

        let g = build_gamma_rc(1, 2);
        let e = enumerate_pairs(&g, 2, false);
        let expected: BTreeSet<WalkGammaPair> = [
            WalkGammaPair::new(loop_walk(1, &[1, 2]), LinearSubdigraph::empty()),
            WalkGammaPair::new(loop_walk(1, &[2, 1]), LinearSubdigraph::empty()),
            WalkGammaPair::new(loop_walk(1, &[1]), loop_gamma(1, 2)),
            WalkGammaPair::new(loop_walk(1, &[2]), loop_gamma(1, 1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(e.pairs.iter().cloned().collect::<BTreeSet<_>>(), expected);
        assert_eq!(e.pairs.len(), 4);
        assert_eq!(e.empty_walk_term, Some(Polynomial::zero()));
    }

    #[test]
    fn audit_small_graphs() {
        let audit = audit_involution(&build_gamma_rc(1, 2), 2);
        assert_eq!(audit.good_count, 0);
        assert!(audit.passed());

        let audit = audit_involution(&build_gamma_rc(2, 1), 1);
        assert_eq!(audit.good_groups.len(), 2);
        assert!(audit.good_groups.values().all(|grp| grp.members == 1));
        assert!(audit.passed());
    }

    #[test]
    fn two_colored_two_cycle_has_two_rooted_members() {
        let mut g = ColoredDigraph::new(2, 2);
        g.set_bundle(1, 2, vec![Polynomial::constant(2), Polynomial::constant(3)]);
        g.set_bundle(
            2,
            1,
            vec![Polynomial::constant(-1), Polynomial::constant(5)],
        );
        let audit = audit_involution(&g, 2);
        assert!(audit.passed());
        assert_eq!(audit.good_groups.len(), 2);
        for group in audit.good_groups.values() {
            assert_eq!(group.members, 2);
        }
    }
}
