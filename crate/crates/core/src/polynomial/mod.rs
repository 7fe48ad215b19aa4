//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by [`ExponentVector`], ordered graded
//! lexicographically, so iteration, printing and hashing are deterministic. No
//! stored coefficient is ever zero; the zero polynomial is the empty map.

mod curve;
mod parse;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational as Rational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use crate::newton::face_polynomial;
pub(crate) use curve::rational_pow;
pub use curve::{substitute_monomial_curve, LaurentPolynomial, MonomialCurve};
pub use parse::{parse, parse_inferring_count};

/// Exponents `(a_1, ..., a_n)` of the monomial `x_1^a_1 ... x_n^a_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, j: usize) -> Self {
        let mut e = vec![0; n];
        e[j] = 1;
        Self(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Total degree `|a|`.
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&e| i64::from(e)).collect()
    }

    pub fn dot(&self, q: &[i64]) -> i64 {
        self.0.iter().zip(q).map(|(&a, &b)| i64::from(a) * b).sum()
    }

    pub fn dot_rational(&self, q: &[Rational]) -> Rational {
        self.0
            .iter()
            .zip(q)
            .fold(Rational::zero(), |acc, (&a, b)| acc + b * BigInt::from(a))
    }

    /// `true` when every variable outside `mask` has exponent zero.
    pub fn lies_in(&self, mask: SubspaceMask) -> bool {
        self.0.iter().enumerate().all(|(j, &e)| e == 0 || mask.contains(j))
    }

    fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for ExponentVector {
    /// Graded lexicographic: total degree first, then `x1 > x2 > ...`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

/// A coordinate subspace `R^J`, stored as a bitset over 0-based variable indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubspaceMask(u64);

impl SubspaceMask {
    pub const EMPTY: Self = Self(0);

    pub fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= 64, "subspace masks support at most 64 variables");
        if n == 64 {
            Self(u64::MAX)
        } else {
            Self((1u64 << n) - 1)
        }
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        Self(indices.iter().fold(0, |acc, &j| acc | (1 << j)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, j: usize) -> bool {
        j < 64 && self.0 & (1 << j) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&j| self.contains(j))
    }

    /// All nonempty subsets of `{0, ..., n-1}` in increasing bit order.
    pub fn nonempty_subsets(n: usize) -> impl Iterator<Item = SubspaceMask> {
        (1..=Self::full(n).0).map(Self)
    }
}

/// Sparse polynomial `sum a_alpha x^alpha` over the rationals in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(ExponentVector::zero(n), c);
        p
    }

    pub fn variable(n: usize, j: usize) -> Self {
        Self::monomial(ExponentVector::unit(n, j), Rational::one())
    }

    pub fn monomial(alpha: ExponentVector, c: Rational) -> Self {
        let mut p = Self::zero(alpha.len());
        p.add_term(alpha, c);
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, combining repeats.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, Rational)>,
    {
        let mut p = Self::zero(n);
        for (alpha, c) in terms {
            if alpha.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: alpha.len(),
                });
            }
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, alpha: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, alpha: &ExponentVector) -> Option<&Rational> {
        self.terms.get(alpha)
    }

    pub fn support(&self) -> impl Iterator<Item = &ExponentVector> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|a| a.degree() == 0)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&ExponentVector::zero(self.n))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(ExponentVector::degree).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(a, v)| (a.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.n, Rational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact value at a rational point.
    pub fn evaluate(&self, p: &[Rational]) -> Rational {
        assert_eq!(p.len(), self.n, "point dimension mismatch");
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, (alpha, c)| acc + c * monomial_value(alpha, p))
    }

    /// Floating-point value, for search heuristics only.
    pub fn evaluate_f64(&self, p: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(alpha, c)| {
                let mut v = c.to_f64().unwrap_or(f64::NAN);
                for (&e, &x) in alpha.as_slice().iter().zip(p) {
                    v *= num_traits::Float::powi(x, e as i32);
                }
                v
            })
            .sum()
    }

    /// `f` with `x_j := 0` for every `j` outside `mask`.
    pub fn restrict_to_subspace(&self, mask: SubspaceMask) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.lies_in(mask))
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    /// The sub-sum over exponents `alpha` with `<q, alpha> = d`.
    pub fn terms_on_hyperplane(&self, q: &[i64], d: i64) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.dot(q) == d)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn partial_derivative(&self, j: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (alpha, c) in &self.terms {
            let e = alpha.0[j];
            if e == 0 {
                continue;
            }
            let mut beta = alpha.clone();
            beta.0[j] -= 1;
            out.add_term(beta, c * BigInt::from(e));
        }
        out
    }

    pub fn partial_derivatives(&self) -> Vec<Self> {
        (0..self.n).map(|j| self.partial_derivative(j)).collect()
    }

    /// `max |a_alpha|`.
    pub fn norm(&self) -> Result<Rational> {
        self.terms.values().map(Signed::abs).max().ok_or(Error::ZeroPolynomial)
    }

    /// Reinterprets the polynomial in `m >= n` variables, the new ones unused.
    pub fn embed(&self, m: usize) -> Self {
        assert!(m >= self.n);
        Self {
            n: m,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| {
                    let mut e = a.0.clone();
                    e.resize(m, 0);
                    (ExponentVector(e), c.clone())
                })
                .collect(),
        }
    }

    /// Canonical text form accepted by [`parse`].
    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }
}

pub(crate) fn monomial_value(alpha: &ExponentVector, p: &[Rational]) -> Rational {
    let mut v = Rational::one();
    for (&e, x) in alpha.as_slice().iter().zip(p) {
        if e > 0 {
            v *= num_traits::pow(x.clone(), e as usize);
        }
    }
    v
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = Polynomial::zero(self.n);
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                out.add_term(a.add(b), c * d);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (alpha, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || alpha.degree() == 0 {
                factors.push(alloc::format!("{abs}"));
            }
            for (j, &e) in alpha.as_slice().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(alloc::format!("x{}", j + 1)),
                    _ => factors.push(alloc::format!("x{}^{}", j + 1, e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Aggregates `g_1 = ... = g_l = 0, h_1 >= 0, ..., h_m >= 0` into the single
/// polynomial `sum g_i^2 + sum (h_j - y_j^2)^2` in the variables
/// `(x_1, ..., x_n, y_1, ..., y_m)`; `y_j` is variable `n + j`.
pub fn semialgebraic_to_zero_set(equations: &[Polynomial], inequalities: &[Polynomial]) -> Result<Polynomial> {
    let first = equations
        .first()
        .or(inequalities.first())
        .ok_or_else(|| Error::EmptyInput("no equations or inequalities".into()))?;
    let n = first.nvars();
    for p in equations.iter().chain(inequalities) {
        if p.nvars() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.nvars(),
            });
        }
    }
    let m = inequalities.len();
    let total = n + m;
    let mut out = Polynomial::zero(total);
    for g in equations {
        let g = g.embed(total);
        out = &out + &(&g * &g);
    }
    for (j, h) in inequalities.iter().enumerate() {
        let y = Polynomial::variable(total, n + j);
        let diff = &h.embed(total) - &(&y * &y);
        out = &out + &(&diff * &diff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn p(s: &str, n: usize) -> Polynomial {
        parse(s, n).unwrap()
    }

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(p("x1*x2 - 1", 2).evaluate(&[rat(1), rat(1)]), rat(0));
        assert_eq!(p("(x1-x2)^2", 2).evaluate(&[rat(3), rat(1)]), rat(4));
        assert_eq!(p("x1^2 + x2^2 - 1", 2).evaluate(&[r(1, 2), r(1, 2)]), r(-1, 2));
    }

    #[test]
    fn restriction_examples() {
        let j1 = SubspaceMask::from_indices(&[0]);
        assert_eq!(p("x1*x2 - 1", 2).restrict_to_subspace(j1), p("-1", 2));
        assert!(p("x1*x2", 2).restrict_to_subspace(j1).is_zero());
        let j2 = SubspaceMask::from_indices(&[1]);
        assert_eq!(p("(x1-x2)^2", 2).restrict_to_subspace(j2), p("x2^2", 2));
        let f = p("x1^2*x2 + 3*x2 - 7", 2);
        assert_eq!(f.restrict_to_subspace(SubspaceMask::full(2)), f);
        assert_eq!(
            f.restrict_to_subspace(SubspaceMask::EMPTY),
            Polynomial::constant(2, rat(-7))
        );
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(
            p("x1^2*x2", 2).partial_derivatives(),
            vec![p("2*x1*x2", 2), p("x1^2", 2)]
        );
        assert!(p("5", 2).partial_derivatives().iter().all(Polynomial::is_zero));
        assert_eq!(
            p("(x1-x2)^2", 2).partial_derivatives(),
            vec![p("2*x1 - 2*x2", 2), p("-2*x1 + 2*x2", 2)]
        );
    }

    #[test]
    fn norm_examples() {
        assert_eq!(p("(x1-x2)^2", 2).norm().unwrap(), rat(2));
        assert_eq!(p("x1^2+x2^2-1", 2).norm().unwrap(), rat(1));
        assert_eq!(p("1/3*x1 + 5*x2", 2).norm().unwrap(), rat(5));
        assert_eq!(Polynomial::zero(2).norm(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(p("(x1-x2)^2", 2).to_text(), "x1^2 - 2*x1*x2 + x2^2");
        assert_eq!(p("-1 + x2^2 + x1^2", 2).to_text(), "x1^2 + x2^2 - 1");
        assert_eq!(p("1/3*x1 - 5/2", 2).to_text(), "1/3*x1 - 5/2");
        assert_eq!(Polynomial::zero(3).to_text(), "0");
        assert_eq!(p("-x1^3", 2).to_text(), "-x1^3");
    }

    #[test]
    fn semialgebraic_examples() {
        let x1 = p("x1", 1);
        assert_eq!(
            semialgebraic_to_zero_set(core::slice::from_ref(&x1), &[]).unwrap(),
            p("x1^2", 1)
        );

        let h = p("1 - x1^2", 1);
        assert_eq!(
            semialgebraic_to_zero_set(&[], &[h]).unwrap(),
            p("(1 - x1^2 - x2^2)^2", 2)
        );

        let g = p("x1 - 1", 1);
        let out = semialgebraic_to_zero_set(&[g], &[x1]).unwrap();
        assert_eq!(out, p("(x1 - 1)^2 + (x1 - x2^2)^2", 2));
        // zero set is {(1, 1), (1, -1)}
        assert!(out.evaluate(&[rat(1), rat(1)]).is_zero());
        assert!(out.evaluate(&[rat(1), rat(-1)]).is_zero());
        assert!(out.evaluate(&[rat(0), rat(0)]).is_positive());

        assert!(matches!(semialgebraic_to_zero_set(&[], &[]), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn grlex_order() {
        let a = ExponentVector::new(vec![2, 0]);
        let b = ExponentVector::new(vec![1, 1]);
        let c = ExponentVector::new(vec![0, 3]);
        assert!(a > b);
        assert!(c > a);
    }
}
