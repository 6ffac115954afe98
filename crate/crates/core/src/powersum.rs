//! The generalized power-sum identity and its classical specializations.
//!
//! For `m, r >= 1` the identity reads
//!
//! ```text
//! sum_{k=1}^{m} Pi_r([k]) y_{k+1}
//!   = sum_{U ⊆ [m+1], |U| >= 2} ( sum_{∅ ≠ V ⊆ U \ {max U}} (-1)^{|U|-|V|-1} Pi_r(V) ) y_{max U}
//! ```
//!
//! where `Pi_r(P) = prod_{j=1}^{r} sum_{i in P} x_i^{(j)}`. Both sides are
//! built symbolically, and a third route sums the "good words"
//! `x_{i_1}^{(1)} ... x_{i_r}^{(r)} y_t` with every `i_p < t` directly.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::exactnum::{bernoulli_number, binomial, exact_div, factorial, Rational};
use crate::poly::{Monomial, Polynomial, VarId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerSumInstance {
    m: u32,
    r: u32,
}

impl PowerSumInstance {
    /// `None` unless `m >= 1` and `r >= 1`.
    pub fn new(m: u32, r: u32) -> Option<Self> {
        (m >= 1 && r >= 1).then_some(Self { m, r })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn r(&self) -> u32 {
        self.r
    }
}

/// `prod_{j=1}^{r} (sum_{i in P} x_i^{(j)})`; zero for an empty `P`.
pub fn pi_r(set: &[u32], r: u32) -> Polynomial {
    if set.is_empty() {
        return Polynomial::zero();
    }
    let mut acc = Polynomial::one();
    for j in 1..=r {
        let mut factor = Polynomial::zero();
        for &i in set {
            factor += Polynomial::var(VarId::x(i, j));
        }
        acc = &acc * &factor;
    }
    acc
}

fn members(mask: u32) -> Vec<u32> {
    (0..32)
        .filter(|b| mask & (1 << b) != 0)
        .map(|b| b + 1)
        .collect()
}

pub fn theorem1_lhs(inst: PowerSumInstance) -> Polynomial {
    let mut out = Polynomial::zero();
    for k in 1..=inst.m {
        let prefix: Vec<u32> = (1..=k).collect();
        out += &pi_r(&prefix, inst.r) * &Polynomial::var(VarId::y(k + 1));
    }
    out
}

/// Inner signed sum for one index set `U` (given as a bitmask over
/// `1..=m+1`, bit `b` standing for `b + 1`), without the trailing `y` factor.
pub fn inner_sum(u_mask: u32, r: u32) -> Polynomial {
    let size = u_mask.count_ones() as i64;
    if size < 2 {
        return Polynomial::zero();
    }
    let top = 31 - u_mask.leading_zeros();
    let rest = u_mask & !(1 << top);
    let mut out = Polynomial::zero();
    // nonempty submasks of `rest`, including `rest` itself
    let mut v = rest;
    while v != 0 {
        let sign = if (size - v.count_ones() as i64 - 1) % 2 == 0 {
            1
        } else {
            -1
        };
        out += pi_r(&members(v), r).scale(&BigInt::from(sign));
        v = (v - 1) & rest;
    }
    out
}

/// Right side, enumerating every `U ⊆ [m+1]` with `|U| >= 2`.
pub fn theorem1_rhs(inst: PowerSumInstance) -> Polynomial {
    theorem1_rhs_with(inst, false)
}

/// Right side; with `prune` set, index sets with `|U| - 1 > r` are skipped
/// since their inner sums vanish.
pub fn theorem1_rhs_with(inst: PowerSumInstance, prune: bool) -> Polynomial {
    let mut out = Polynomial::zero();
    for u in 1u32..(1 << (inst.m + 1)) {
        let size = u.count_ones();
        if size < 2 || (prune && size - 1 > inst.r) {
            continue;
        }
        let top = 32 - u.leading_zeros();
        out += &inner_sum(u, inst.r) * &Polynomial::var(VarId::y(top));
    }
    out
}

/// Sum of all good words, read commutatively.
pub fn goodwords_oracle(inst: PowerSumInstance) -> Polynomial {
    let mut out = Polynomial::zero();
    let r = inst.r as usize;
    for t in 2..=inst.m + 1 {
        let mut idx = vec![1u32; r];
        loop {
            let mut word = Monomial::var(VarId::y(t));
            for (p, &i) in idx.iter().enumerate() {
                word = &word * &Monomial::var(VarId::x(i, p as u32 + 1));
            }
            out.add_term(word, BigInt::one());
            // odometer over subscripts in 1..t
            let mut p = 0;
            while p < r {
                idx[p] += 1;
                if idx[p] < t {
                    break;
                }
                idx[p] = 1;
                p += 1;
            }
            if p == r {
                break;
            }
        }
    }
    out
}

/// Number of good words: `sum_{t=2}^{m+1} (t-1)^r`.
pub fn goodword_count(inst: PowerSumInstance) -> BigInt {
    (1..=inst.m)
        .map(|s| num_traits::pow(BigInt::from(s), inst.r as usize))
        .sum()
}

/// Stirling number of the second kind by the alternating closed form
/// `S(m, k) = (1/k!) sum_{j=1}^{k} (-1)^{k-j} C(k, j) j^m`.
pub fn stirling2(m: u32, k: u32) -> Result<BigInt> {
    if k == 0 || m == 0 {
        return Ok(if m == k {
            BigInt::one()
        } else {
            BigInt::zero()
        });
    }
    let mut total = BigInt::zero();
    for j in 1..=k {
        let term = binomial(k as u64, j as i64) * num_traits::pow(BigInt::from(j), m as usize);
        if (k - j).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    exact_div(&total, &factorial(k as u64), "stirling2")
}

/// Both sides of `sum_{k=1}^{m} k^alpha c_k = sum_{j=1}^{m} j! S(alpha, j) sum_{k=j}^{m} C(k, j) c_k`
/// for `c` indexed from 1.
pub fn lemma21_sides(alpha: u32, c: &[BigInt]) -> Result<(BigInt, BigInt)> {
    let m = c.len();
    let lhs: BigInt = c
        .iter()
        .enumerate()
        .map(|(i, ck)| num_traits::pow(BigInt::from(i + 1), alpha as usize) * ck)
        .sum();
    let mut rhs = BigInt::zero();
    for j in 1..=m {
        let s = stirling2(alpha, j as u32)?;
        if s.is_zero() {
            continue;
        }
        let inner: BigInt = (j..=m)
            .map(|k| binomial(k as u64, j as i64) * &c[k - 1])
            .sum();
        rhs += factorial(j as u64) * s * inner;
    }
    Ok((lhs, rhs))
}

pub fn verify_lemma21(alpha: u32, c: &[BigInt]) -> Result<bool> {
    let (lhs, rhs) = lemma21_sides(alpha, c)?;
    Ok(lhs == rhs)
}

/// `sum_{i=1}^{n} i^m` by direct summation.
pub fn powersum_direct(m: u32, n: u32) -> BigInt {
    (1..=n)
        .map(|i| num_traits::pow(BigInt::from(i), m as usize))
        .sum()
}

/// `sum_{k=0}^{min(m,n)} C(n+1, k+1) S(m, k) k!`, which equals `sum_{i=1}^{n} i^m`.
pub fn powersum_stirling(m: u32, n: u32) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for k in 0..=m.min(n) {
        total += binomial(n as u64 + 1, k as i64 + 1) * stirling2(m, k)? * factorial(k as u64);
    }
    Ok(total)
}

/// The Stirling power-sum formula with an extra `1/(m+1)` prefactor. It does
/// not equal the power sum (it gives `1/2` at `m = n = 1`) and is kept only
/// so the correction stays checkable.
pub fn powersum_stirling_prefactored(m: u32, n: u32) -> Result<Rational> {
    let mut total = BigInt::zero();
    for k in 0..=n {
        total += binomial(n as u64 + 1, k as i64 + 1) * stirling2(m, k)? * factorial(k as u64);
    }
    Ok(Rational::new(total, BigInt::from(m + 1)))
}

/// `(1/(m+1)) sum_{k=0}^{m} C(m+1, k) B_k n^{m+1-k}`, which equals
/// `sum_{k=1}^{n-1} k^m`.
pub fn powersum_bernoulli(m: u32, n: u32) -> Rational {
    let mut total = Rational::zero();
    for k in 0..=m {
        let weight = binomial(m as u64 + 1, k as i64)
            * num_traits::pow(BigInt::from(n), (m + 1 - k) as usize);
        total += bernoulli_number(k as usize) * Rational::from_integer(weight);
    }
    total / Rational::from_integer(BigInt::from(m + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32, j: u32) -> Polynomial {
        Polynomial::var(VarId::x(i, j))
    }

    fn y(l: u32) -> Polynomial {
        Polynomial::var(VarId::y(l))
    }

    fn inst(m: u32, r: u32) -> PowerSumInstance {
        PowerSumInstance::new(m, r).unwrap()
    }

    #[test]
    fn instance_bounds() {
        assert!(PowerSumInstance::new(0, 1).is_none());
        assert!(PowerSumInstance::new(1, 0).is_none());
    }

    #[test]
    fn pi_r_examples() {
        assert_eq!(pi_r(&[1], 1), x(1, 1));
        let expected = &(&x(1, 1) + &x(2, 1)) * &(&x(1, 2) + &x(2, 2));
        assert_eq!(pi_r(&[1, 2], 2), expected);
        assert_eq!(expected.num_terms(), 4);
        assert!(pi_r(&[], 3).is_zero());
    }

    #[test]
    fn small_instances_by_hand() {
        let m1 = &x(1, 1) * &y(2);
        assert_eq!(theorem1_lhs(inst(1, 1)), m1);
        assert_eq!(theorem1_rhs(inst(1, 1)), m1);
        assert_eq!(goodwords_oracle(inst(1, 1)), m1);

        let m2 = &(&(&x(1, 1) * &y(2)) + &(&x(1, 1) * &y(3))) + &(&x(2, 1) * &y(3));
        assert_eq!(theorem1_lhs(inst(2, 1)), m2);
        assert_eq!(theorem1_rhs(inst(2, 1)), m2);
        assert_eq!(goodwords_oracle(inst(2, 1)), m2);
        // U = {1,2,3}: x1 + x2 - (x1 + x2) = 0
        assert!(inner_sum(0b111, 1).is_zero());

        assert_eq!(theorem1_lhs(inst(1, 2)), &(&x(1, 1) * &x(1, 2)) * &y(2));
    }

    #[test]
    fn good_word_count_m2_r2() {
        let oracle = goodwords_oracle(inst(2, 2));
        let words: BigInt = oracle.terms().map(|(_, c)| c.clone()).sum();
        assert_eq!(words, BigInt::from(5));
        assert_eq!(goodword_count(inst(2, 2)), BigInt::from(5));
    }

    #[test]
    fn pruned_rhs_matches_full() {
        for m in 1..=4 {
            for r in 1..=3 {
                assert_eq!(
                    theorem1_rhs_with(inst(m, r), true),
                    theorem1_rhs(inst(m, r))
                );
            }
        }
    }

    #[test]
    fn stirling_examples() {
        for m in 1..=8 {
            assert_eq!(stirling2(m, 1).unwrap(), BigInt::one());
            assert_eq!(stirling2(m, 0).unwrap(), BigInt::zero());
        }
        assert_eq!(stirling2(3, 2).unwrap(), BigInt::from(3));
        assert_eq!(stirling2(2, 3).unwrap(), BigInt::zero());
        assert_eq!(stirling2(0, 0).unwrap(), BigInt::one());
    }

    #[test]
    fn stirling_matches_triangle() {
        // S(m, k) = k S(m-1, k) + S(m-1, k-1)
        let mut tri = vec![vec![BigInt::zero(); 13]; 13];
        tri[0][0] = BigInt::one();
        for m in 1..=12 {
            for k in 1..=12 {
                tri[m][k] = BigInt::from(k) * &tri[m - 1][k] + &tri[m - 1][k - 1];
            }
        }
        for (m, row) in tri.iter().enumerate() {
            for (k, expected) in row.iter().enumerate() {
                assert_eq!(
                    &stirling2(m as u32, k as u32).unwrap(),
                    expected,
                    "S({m},{k})"
                );
            }
        }
    }

    #[test]
    fn lemma21_examples() {
        let ones = |n: usize| vec![BigInt::one(); n];
        assert!(verify_lemma21(1, &ones(1)).unwrap());
        let (lhs, rhs) = lemma21_sides(2, &ones(3)).unwrap();
        assert_eq!(lhs, BigInt::from(14));
        assert_eq!(rhs, BigInt::from(14));
        let c: Vec<BigInt> = [3, -5, 0, 4, -1, 2].into_iter().map(BigInt::from).collect();
        assert!(verify_lemma21(3, &c).unwrap());
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(powersum_stirling(1, 1).unwrap(), BigInt::from(1));
        assert_eq!(powersum_stirling(2, 3).unwrap(), BigInt::from(14));
        assert_eq!(powersum_stirling(5, 10).unwrap(), BigInt::from(220825));
        assert_eq!(powersum_direct(5, 10), BigInt::from(220825));

        assert_eq!(powersum_bernoulli(1, 2), Rational::from_integer(1.into()));
        assert_eq!(powersum_bernoulli(2, 3), Rational::from_integer(5.into()));
        assert_eq!(powersum_bernoulli(3, 1), Rational::zero());

        assert_eq!(
            powersum_stirling_prefactored(1, 1).unwrap(),
            Rational::new(1.into(), 2.into())
        );
    }
}
