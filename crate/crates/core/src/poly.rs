//! Sparse multivariate polynomials over the integers.
//!
//! Three variable families are supported: `x[i]^(j)`, `y[l]` and `a[j]^(i)`.
//! Variables order by family (`x < y < a`), then superscript, then
//! subscript. Monomials order by total degree, then lexicographically with
//! the earliest variable most significant. Terms print highest first.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    /// `x_sub^{(sup)}`
    X { sup: u32, sub: u32 },
    /// `y_index`
    Y(u32),
    /// `alpha_sub^{(sup)}`
    A { sup: u32, sub: u32 },
}

impl VarId {
    pub fn x(sub: u32, sup: u32) -> Self {
        VarId::X { sup, sub }
    }

    pub fn y(index: u32) -> Self {
        VarId::Y(index)
    }

    pub fn a(sub: u32, sup: u32) -> Self {
        VarId::A { sup, sub }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::X { sup, sub } => write!(f, "x[{sub}]^({sup})"),
            VarId::Y(l) => write!(f, "y[{l}]"),
            VarId::A { sup, sub } => write!(f, "a[{sub}]^({sup})"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial(BTreeMap<VarId, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(BTreeMap::from([(v, 1)]))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn exponent(&self, v: &VarId) -> u32 {
        self.0.get(v).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VarId, &u32)> {
        self.0.iter()
    }

    fn times_var(&mut self, v: VarId, exp: u32) {
        if exp > 0 {
            *self.0.entry(v).or_insert(0) += exp;
        }
    }

    fn lex_cmp(&self, other: &Self) -> Ordering {
        let mut a = self.0.iter();
        let mut b = other.0.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => continue,
                        o => return o,
                    },
                    // the earlier variable is missing from the other side
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                },
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, rhs: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (v, e) in rhs.iter() {
            out.times_var(*v, *e);
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial in `Z[x, y, a]`. No zero coefficients are ever stored, so
/// structural equality is polynomial equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: VarId) -> Self {
        Self::term(1, Monomial::var(v))
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// The value if this polynomial is an integer constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn variables(&self) -> Vec<VarId> {
        let mut vars: Vec<VarId> = self
            .terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| *v))
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }

    pub fn eval(&self, assignment: &BTreeMap<VarId, BigInt>) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (v, e) in m.iter() {
                let x = assignment.get(v).ok_or(Error::UnassignedVariable(*v))?;
                value *= num_traits::pow(x.clone(), *e as usize);
            }
            total += value;
        }
        Ok(total)
    }

    /// Replaces every variable through `f`, merging terms that collide.
    pub fn rename(&self, mut f: impl FnMut(VarId) -> VarId) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut image = Monomial::one();
            for (v, e) in m.iter() {
                image.times_var(f(*v), *e);
            }
            out.add_term(image, c.clone());
        }
        out
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Polynomial>) -> Self {
        let mut acc = Self::zero();
        for p in items {
            acc += p;
        }
        acc
    }

    pub fn product<'a>(items: impl IntoIterator<Item = &'a Polynomial>) -> Self {
        items.into_iter().fold(Self::one(), |acc, p| &acc * p)
    }
}

impl From<VarId> for Polynomial {
    fn from(v: VarId) -> Self {
        Polynomial::var(v)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;

    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += rhs;
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Sub<&Polynomial> for Polynomial {
    type Output = Polynomial;

    fn sub(mut self, rhs: &Polynomial) -> Polynomial {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
        self
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma * mb, ca * cb);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Zero for Polynomial {
    fn zero() -> Self {
        Polynomial::zero()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Polynomial {
    fn one() -> Self {
        Polynomial::one()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
        .polynomial()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::PolyParse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", b as char))
        }
    }

    fn digits(&mut self) -> Option<&str> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn index(&mut self) -> Result<u32> {
        let at = self.pos;
        match self.digits().map(str::parse::<u32>) {
            Some(Ok(v)) if v >= 1 => Ok(v),
            _ => {
                self.pos = at;
                self.err("expected a positive index")
            }
        }
    }

    fn polynomial(mut self) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        self.skip_ws();
        let mut negative = self.eat(b'-');
        loop {
            self.skip_ws();
            let (m, c) = self.term()?;
            out.add_term(m, if negative { -c } else { c });
            self.skip_ws();
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return self.err("expected '+', '-' or end of input"),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(Monomial, BigInt)> {
        let mut m = Monomial::one();
        let coeff = match self.digits() {
            Some(d) => {
                let c: BigInt = d.parse().unwrap();
                if !self.eat(b'*') {
                    return Ok((m, c));
                }
                c
            }
            None => BigInt::one(),
        };
        loop {
            let (v, e) = self.power()?;
            m.times_var(v, e);
            if !self.eat(b'*') {
                return Ok((m, coeff));
            }
        }
    }

    fn power(&mut self) -> Result<(VarId, u32)> {
        let family = match self.peek() {
            Some(b @ (b'x' | b'y' | b'a')) => b,
            _ => return self.err("expected a variable"),
        };
        self.pos += 1;
        self.expect(b'[')?;
        let sub = self.index()?;
        self.expect(b']')?;
        let v = if family == b'y' {
            VarId::Y(sub)
        } else {
            self.expect(b'^')?;
            self.expect(b'(')?;
            let sup = self.index()?;
            self.expect(b')')?;
            if family == b'x' {
                VarId::X { sup, sub }
            } else {
                VarId::A { sup, sub }
            }
        };
        let exp = if self.eat(b'^') { self.index()? } else { 1 };
        Ok((v, exp))
    }
}
