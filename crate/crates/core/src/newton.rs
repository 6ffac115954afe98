//! Colored walk / linear-subdigraph identities and the multi-alphabet
//! Newton–Girard identity they imply.
//!
//! For a colored digraph with `n` vertices and `k` colors, and `r >= 1`:
//!
//! * `r > n`: `sum_{S ∩ T = ∅, |S|+|T| = r} c_{|T|,T} ℓ_{|S|,S} = 0`;
//! * `r <= n`: `sum_{S ∩ T = ∅, |S|+|T| = r, T ≠ ∅} c_{|T|,T} ℓ_{|S|,S} + r sum_{|S| = r} ℓ_{r,S} = 0`.
//!
//! The single-term form `r ℓ_{r,C}` with `C` the full color set agrees with
//! the aggregated sum only when `k = r`; reports carry both residuals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::digraph::{ColorSet, ColoredDigraph};
use crate::enumerate::{ell, ell_table, walk_table};
use crate::exactnum::factorial;
use crate::poly::{Polynomial, VarId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NewtonCase {
    /// `r > n`
    RExceedsN,
    /// `r <= n`
    RAtMostN,
}

impl NewtonCase {
    pub fn of(r: usize, n: usize) -> Self {
        if r > n {
            NewtonCase::RExceedsN
        } else {
            NewtonCase::RAtMostN
        }
    }
}

/// How the `T = ∅` part enters the `r <= n` residual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EllForm {
    /// `r * sum_{|S| = r} ℓ_{r,S}`
    Aggregated,
    /// `r * ℓ_{r,C}` for the full color set `C`
    Literal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonReport {
    pub case: NewtonCase,
    pub r: usize,
    pub n: usize,
    pub form: EllForm,
    /// Must be the zero polynomial.
    pub residual: Polynomial,
    /// Nonzero contributions keyed by `(S, T)`: the subdigraph colors and the
    /// walk colors. Sums to `residual`.
    pub breakdown: BTreeMap<(ColorSet, ColorSet), Polynomial>,
    /// The residual under the other reading of the `T = ∅` term (for the
    /// symbolic identity: the other sign of the `Y` term).
    pub alternate_residual: Polynomial,
}

impl NewtonReport {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn breakdown_total(&self) -> Polynomial {
        Polynomial::sum(self.breakdown.values())
    }
}

fn insert_nonzero(
    map: &mut BTreeMap<(ColorSet, ColorSet), Polynomial>,
    key: (ColorSet, ColorSet),
    value: Polynomial,
) {
    if !value.is_zero() {
        map.insert(key, value);
    }
}

/// Every nonzero `c_{|T|,T} ℓ_{|S|,S}` with `S ∩ T = ∅`, `|S| + |T| = r`.
pub fn theorem2_terms(g: &ColoredDigraph, r: usize) -> BTreeMap<(ColorSet, ColorSet), Polynomial> {
    let ells = ell_table(g);
    let walks = walk_table(g);
    let mut out = BTreeMap::new();
    for (t, cw) in &walks {
        if t.len() > r {
            continue;
        }
        for (s, l) in &ells {
            if s.len() + t.len() == r && s.is_disjoint(*t) {
                insert_nonzero(&mut out, (*s, *t), cw * l);
            }
        }
    }
    out
}

/// `sum_{p+q=r, S ∩ T = ∅} c_{q,T} ℓ_{p,S}`, the `q = 0` term included.
pub fn theorem2_sum(g: &ColoredDigraph, r: usize) -> Polynomial {
    Polynomial::sum(theorem2_terms(g, r).values())
}

/// `sum_{S ⊆ C, |S| = r} ℓ_{r,S}`.
pub fn ell_total(g: &ColoredDigraph, r: usize) -> Polynomial {
    if r > g.k() {
        return Polynomial::zero();
    }
    let mut acc = Polynomial::zero();
    for s in ColorSet::subsets_of_size(g.k(), r) {
        acc += ell(g, r, s);
    }
    acc
}

pub fn verify_theorem2(g: &ColoredDigraph, r: usize) -> NewtonReport {
    verify_theorem2_with(g, r, EllForm::Aggregated)
}

pub fn verify_theorem2_with(g: &ColoredDigraph, r: usize, form: EllForm) -> NewtonReport {
    let case = NewtonCase::of(r, g.n());
    let terms = theorem2_terms(g, r);
    if case == NewtonCase::RExceedsN {
        let residual = Polynomial::sum(terms.values());
        return NewtonReport {
            case,
            r,
            n: g.n(),
            form,
            alternate_residual: residual.clone(),
            residual,
            breakdown: terms,
        };
    }

    let scale = BigInt::from(r);
    let mut aggregated = BTreeMap::new();
    let mut literal = BTreeMap::new();
    for ((s, t), v) in terms {
        if t.is_empty() {
            aggregated.insert((s, t), v.scale(&scale));
        } else {
            aggregated.insert((s, t), v.clone());
            literal.insert((s, t), v);
        }
    }
    if r <= g.k() {
        let full = g.colors();
        insert_nonzero(
            &mut literal,
            (full, ColorSet::empty()),
            ell(g, r, full).scale(&scale),
        );
    }
    let aggregated_residual = Polynomial::sum(aggregated.values());
    let literal_residual = Polynomial::sum(literal.values());
    let (residual, breakdown, alternate_residual) = match form {
        EllForm::Aggregated => (aggregated_residual, aggregated, literal_residual),
        EllForm::Literal => (literal_residual, literal, aggregated_residual),
    };
    NewtonReport {
        case,
        r,
        n: g.n(),
        form,
        residual,
        breakdown,
        alternate_residual,
    }
}

fn alpha(j: usize, i: usize) -> Polynomial {
    Polynomial::var(VarId::a(j as u32, i as u32))
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (idx, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(idx);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

fn increasing_tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for j in start..=n {
            cur.push(j);
            go(j + 1, n, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, len, &mut Vec::new(), &mut out);
    out
}

/// `X`: over orderings `(i'_1, ..., i'_k)` of the colors in `[r]` outside
/// `chosen`, the sum of `a[j_1]^(i'_1) ... a[j_k]^(i'_k)` over
/// `j_1 < ... < j_k <= n`. Equal to 1 when `k = 0`.
pub fn compute_x(r: usize, n: usize, k: usize, chosen: ColorSet) -> Polynomial {
    assert!(k <= r, "k must not exceed r");
    assert_eq!(chosen.len(), r - k, "chosen colors must number r - k");
    let remaining: Vec<usize> = (1..=r).filter(|i| !chosen.contains(*i)).collect();
    let mut out = Polynomial::zero();
    let js = increasing_tuples(n, k);
    for order in permutations(&remaining) {
        for j in &js {
            let mut term = Polynomial::one();
            for (p, &color) in order.iter().enumerate() {
                term = &term * &alpha(j[p], color);
            }
            out += term;
        }
    }
    out
}

/// `Y`: `X` with nothing chosen, i.e. all orderings of `[r]` over increasing
/// `r`-tuples of vertices.
pub fn compute_y(r: usize, n: usize) -> Polynomial {
    compute_x(r, n, r, ColorSet::empty())
}

/// `sum_{j=1}^{n} prod_{i in chosen} a[j]^(i)`, or 1 for an empty `chosen`.
fn mixed_power_sum(n: usize, chosen: ColorSet) -> Polynomial {
    if chosen.is_empty() {
        return Polynomial::one();
    }
    let mut out = Polynomial::zero();
    for j in 1..=n {
        out += Polynomial::product(
            chosen
                .iter()
                .map(|i| alpha(j, i))
                .collect::<Vec<_>>()
                .iter(),
        );
    }
    out
}

/// The multi-alphabet Newton–Girard identity, assembled directly from
/// `X` and `Y` without any graph.
///
/// Breakdown keys are `(S, T)` with `T` the chosen colors (the power-sum
/// factor) and `S` the rest, so they line up with [`verify_theorem2`] on the
/// self-loop graph. The `r <= n` correction enters as `r (-1)^r Y`; the
/// unsigned `r Y` variant is recorded as the alternate residual.
pub fn verify_theorem3(r: usize, n: usize) -> NewtonReport {
    let case = NewtonCase::of(r, n);
    let top = match case {
        NewtonCase::RExceedsN => r,
        NewtonCase::RAtMostN => r - 1,
    };
    let mut breakdown = BTreeMap::new();
    for k in 0..=top {
        let sign = if k % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let weight = factorial((r - k) as u64) * sign;
        for chosen in ColorSet::subsets_of_size(r, r - k) {
            let term = &mixed_power_sum(n, chosen) * &compute_x(r, n, k, chosen);
            let rest = ColorSet::full(r).difference(chosen);
            insert_nonzero(&mut breakdown, (rest, chosen), term.scale(&weight));
        }
    }
    let mut alternate = Polynomial::sum(breakdown.values());
    if case == NewtonCase::RAtMostN {
        let y = compute_y(r, n);
        let signed = if r.is_multiple_of(2) {
            BigInt::from(r)
        } else {
            -BigInt::from(r)
        };
        alternate += y.scale(&BigInt::from(r));
        insert_nonzero(
            &mut breakdown,
            (ColorSet::full(r), ColorSet::empty()),
            y.scale(&signed),
        );
    }
    NewtonReport {
        case,
        r,
        n,
        form: EllForm::Literal,
        residual: Polynomial::sum(breakdown.values()),
        breakdown,
        alternate_residual: alternate,
    }
}

/// Identifies every alphabet with the first: `a[j]^(i) -> a[j]^(1)`.
pub fn collapse_alphabets(p: &Polynomial) -> Polynomial {
    p.rename(|v| match v {
        VarId::A { sub, .. } => VarId::A { sup: 1, sub },
        other => other,
    })
}

/// Coefficients `e_0 = 1, e_1, ..., e_n` of `prod (x - root)`, highest power
/// first, so `e_t = (-1)^t σ_t`.
pub fn monic_coefficients<T>(roots: &[T]) -> Vec<T>
where
    T: Clone + Zero + One + for<'a> std::ops::Sub<&'a T, Output = T>,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    let mut coeffs = vec![T::one()];
    for root in roots {
        let mut next = coeffs.clone();
        next.push(T::zero());
        for t in 1..next.len() {
            next[t] = next[t].clone() - &(&coeffs[t - 1] * root);
        }
        coeffs = next;
    }
    coeffs
}

/// `p_r + e_1 p_{r-1} + ... ` up to `e_{min(r-1, n)} p_{r-min(r-1,n)}`, plus
/// `r e_r` when `r <= n`, for integer roots.
pub fn classical_newton_residual(roots: &[BigInt], r: usize) -> BigInt {
    let n = roots.len();
    let e = monic_coefficients(roots);
    let p = |t: usize| -> BigInt { roots.iter().map(|a| num_traits::pow(a.clone(), t)).sum() };
    let mut total: BigInt = e
        .iter()
        .take(n.min(r - 1) + 1)
        .enumerate()
        .map(|(t, et)| et * p(r - t))
        .sum();
    if r <= n {
        total += BigInt::from(r) * &e[r];
    }
    total
}

pub fn classical_newton_check(roots: &[BigInt], r: usize) -> bool {
    classical_newton_residual(roots, r).is_zero()
}

/// The classical residual over the symbolic roots `a[1]^(1), ..., a[n]^(1)`,
/// split as `(sum_t e_t p_{r-t}, r e_r)` (the second part zero when `r > n`).
pub fn classical_newton_symbolic(n: usize, r: usize) -> (Polynomial, Polynomial) {
    let roots: Vec<Polynomial> = (1..=n).map(|j| alpha(j, 1)).collect();
    let e = monic_coefficients(&roots);
    let p = |t: usize| {
        Polynomial::sum(
            roots
                .iter()
                .map(|a| a.pow(t as u32))
                .collect::<Vec<_>>()
                .iter(),
        )
    };
    let mut power_part = Polynomial::zero();
    for (t, et) in e.iter().enumerate().take(n.min(r - 1) + 1) {
        power_part += et * &p(r - t);
    }
    let correction = if r <= n {
        e[r].scale(&BigInt::from(r))
    } else {
        Polynomial::zero()
    };
    (power_part, correction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::build_gamma_rc;

    fn a(j: u32, i: u32) -> Polynomial {
        Polynomial::var(VarId::a(j, i))
    }

    #[test]
    fn one_vertex_two_loops_case_one() {
        let g = build_gamma_rc(1, 2);
        assert!(theorem2_sum(&g, 2).is_zero());
        let terms = theorem2_terms(&g, 2);
        let ab = &a(1, 1) * &a(1, 2);
        assert_eq!(
            terms[&(ColorSet::empty(), ColorSet::full(2))],
            ab.scale(&2.into())
        );
        assert_eq!(terms[&(ColorSet::single(1), ColorSet::single(2))], -&ab);
        assert_eq!(terms.len(), 3);
        assert!(verify_theorem2(&g, 2).passed());
    }

    #[test]
    fn more_colors_than_r_empties_the_sum() {
        let g = build_gamma_rc(2, 2);
        assert!(theorem2_sum(&g, 3).is_zero());
        assert!(theorem2_terms(&g, 3).is_empty());
        let mut single = ColoredDigraph::new(1, 1);
        single.set_bundle(1, 1, vec![Polynomial::constant(5)]);
        assert!(theorem2_sum(&single, 2).is_zero());
    }

    #[test]
    fn ell_total_examples() {
        let g = build_gamma_rc(1, 2);
        assert_eq!(ell_total(&g, 1), -(&a(1, 1) + &a(1, 2)));
        assert!(ell_total(&g, 2).is_zero());
        let g = build_gamma_rc(2, 2);
        assert_eq!(ell_total(&g, 2), ell(&g, 2, ColorSet::full(2)));
    }

    #[test]
    fn literal_form_fails_when_colors_exceed_r() {
        let g = build_gamma_rc(1, 2);
        let report = verify_theorem2(&g, 1);
        assert_eq!(report.case, NewtonCase::RAtMostN);
        assert!(report.passed());
        assert_eq!(report.alternate_residual, &a(1, 1) + &a(1, 2));
        let literal = verify_theorem2_with(&g, 1, EllForm::Literal);
        assert!(!literal.passed());
        assert_eq!(literal.breakdown_total(), literal.residual);
    }

    #[test]
    fn literal_and_aggregated_agree_when_k_equals_r() {
        for n in 1..=3 {
            for r in 1..=n {
                let g = build_gamma_rc(n, r);
                let agg = verify_theorem2(&g, r);
                let lit = verify_theorem2_with(&g, r, EllForm::Literal);
                assert_eq!(agg.breakdown, lit.breakdown);
                assert!(agg.passed() && lit.passed());
            }
        }
    }

    #[test]
    fn x_and_y_examples() {
        assert_eq!(compute_x(3, 2, 0, ColorSet::full(3)), Polynomial::one());
        assert_eq!(compute_x(2, 2, 1, ColorSet::single(1)), &a(1, 2) + &a(2, 2));
        assert!(compute_x(2, 1, 2, ColorSet::empty()).is_zero());
        assert_eq!(compute_y(1, 1), a(1, 1));
        assert_eq!(
            compute_y(2, 2),
            &(&a(1, 1) * &a(2, 2)) + &(&a(1, 2) * &a(2, 1))
        );
        assert!(compute_y(3, 2).is_zero());
    }

    #[test]
    fn theorem3_small_cases() {
        let r11 = verify_theorem3(1, 1);
        assert_eq!(r11.case, NewtonCase::RAtMostN);
        assert!(r11.passed());
        // with +rY the r = 1 residual would be 2 a[1]^(1)
        assert_eq!(r11.alternate_residual, a(1, 1).scale(&2.into()));
        let r21 = verify_theorem3(2, 1);
        assert_eq!(r21.case, NewtonCase::RExceedsN);
        assert!(r21.passed());
    }

    #[test]
    fn theorem3_matches_self_loop_graph() {
        for r in 1..=3 {
            for n in 1..=3 {
                let symbolic = verify_theorem3(r, n);
                let graph = verify_theorem2(&build_gamma_rc(n, r), r);
                assert!(symbolic.passed(), "r={r} n={n}: {}", symbolic.residual);
                assert_eq!(symbolic.breakdown, graph.breakdown, "r={r} n={n}");
            }
        }
    }

    #[test]
    fn classical_examples() {
        let b = |v: &[i64]| v.iter().map(|x| BigInt::from(*x)).collect::<Vec<_>>();
        assert!(classical_newton_check(&b(&[7]), 2));
        assert!(classical_newton_check(&b(&[2, 3]), 1));
        assert_eq!(monic_coefficients(&b(&[2, 3])), b(&[1, -5, 6]));
        for r in 1..=7 {
            assert!(classical_newton_check(&b(&[-5, 0, 2, 2, 4]), r), "r={r}");
        }
    }

    #[test]
    fn collapsed_theorem3_is_scaled_classical() {
        for r in 1..=3 {
            for n in 1..=3 {
                let report = verify_theorem3(r, n);
                let walk_part: Polynomial = Polynomial::sum(
                    report
                        .breakdown
                        .iter()
                        .filter(|((_, t), _)| !t.is_empty() || report.case == NewtonCase::RExceedsN)
                        .map(|(_, v)| v)
                        .collect::<Vec<_>>(),
                );
                let (power_part, correction) = classical_newton_symbolic(n, r);
                assert!((&power_part + &correction).is_zero());
                let scale = factorial(r as u64);
                assert_eq!(
                    collapse_alphabets(&walk_part),
                    power_part.scale(&scale),
                    "r={r} n={n}"
                );
            }
        }
    }
}
