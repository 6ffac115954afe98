//! Exact integer and rational kernels: binomials, factorials and Bernoulli
//! numbers.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Bernoulli number `B_k` with `B_1 = -1/2`.
///
/// Values come from `sum_{j=0}^{m} C(m+1, j) B_j = 0`, `B_0 = 1`, and are
/// cached process-wide up to the largest index requested so far.
pub fn bernoulli_number(k: usize) -> Rational {
    let mut table = BERNOULLI.lock().unwrap_or_else(|e| e.into_inner());
    if table.is_empty() {
        table.push(Rational::one());
    }
    while table.len() <= k {
        let m = table.len() as u64;
        let partial = table
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (j, b)| {
                acc + Rational::from_integer(binomial(m + 1, j as i64)) * b
            });
        let next = -partial / Rational::from_integer(BigInt::from(m + 1));
        table.push(next);
    }
    table[k].clone()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RationalOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rational_arith(a: &Rational, b: &Rational, op: RationalOp) -> Result<Rational> {
    Ok(match op {
        RationalOp::Add => a + b,
        RationalOp::Sub => a - b,
        RationalOp::Mul => a * b,
        RationalOp::Div => {
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            a / b
        }
    })
}

/// Builds a canonical rational; a zero denominator is an error.
pub fn rational(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Rational> {
    let denom = denom.into();
    if denom.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(numer.into(), denom))
}

/// Exact quotient `a / b`, failing when `b` does not divide `a`.
pub(crate) fn exact_div(a: &BigInt, b: &BigInt, context: &'static str) -> Result<BigInt> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (q, r) = num_integer::Integer::div_rem(a, b);
    if !r.is_zero() {
        return Err(Error::InexactDivision {
            context,
            numerator: a.to_string(),
            denominator: b.to_string(),
        });
    }
    Ok(q)
}
