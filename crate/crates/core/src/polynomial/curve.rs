use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational as Rational;
use num_traits::{One, ToPrimitive, Zero};

use super::Polynomial;
use crate::error::{Error, Result};

/// The curve `t -> (x0_1 t^q_1, ..., x0_n t^q_n)` for `t > 0`.
///
/// A rational direction is scaled by the least common multiple of its
/// denominators (stored as `multiplier`) so that the exponents are integers; `d`
/// is the minimum of `<q, alpha>` over the support of the polynomial the curve was
/// built for, under the scaled `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialCurve {
    x0: Vec<Rational>,
    q: Vec<i64>,
    multiplier: BigInt,
    d: i64,
}

impl MonomialCurve {
    pub fn new(f: &Polynomial, x0: Vec<Rational>, q: &[Rational]) -> Result<Self> {
        let multiplier = q.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let scaled = q
            .iter()
            .map(|v| {
                (v * &multiplier)
                    .to_integer()
                    .to_i64()
                    .ok_or(Error::Overflow("monomial curve exponent"))
            })
            .collect::<Result<Vec<i64>>>()?;
        let mut curve = Self::with_integer_direction(f, x0, scaled)?;
        curve.multiplier = multiplier;
        Ok(curve)
    }

    pub fn with_integer_direction(f: &Polynomial, x0: Vec<Rational>, q: Vec<i64>) -> Result<Self> {
        let n = f.nvars();
        if x0.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: x0.len(),
            });
        }
        if q.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: q.len(),
            });
        }
        if x0.iter().any(Zero::is_zero) {
            return Err(Error::MissingPrerequisite(
                "monomial curve base point must have nonzero entries".into(),
            ));
        }
        if q.iter().all(|&v| v == 0) {
            return Err(Error::ZeroDirection);
        }
        let d = f.support().map(|a| a.dot(&q)).min().ok_or(Error::ZeroPolynomial)?;
        Ok(Self {
            x0,
            q,
            multiplier: BigInt::one(),
            d,
        })
    }

    pub fn base_point(&self) -> &[Rational] {
        &self.x0
    }

    pub fn direction(&self) -> &[i64] {
        &self.q
    }

    pub fn multiplier(&self) -> &BigInt {
        &self.multiplier
    }

    /// `d(q, Gamma(f))` for the polynomial the curve was built for.
    pub fn valuation(&self) -> i64 {
        self.d
    }

    /// The curve tends to infinity as `t -> 0+`.
    pub fn escapes(&self) -> bool {
        self.q.iter().any(|&v| v < 0)
    }

    pub fn point_at(&self, t: &Rational) -> Vec<Rational> {
        self.x0
            .iter()
            .zip(&self.q)
            .map(|(x, &e)| x * rational_pow(t, e))
            .collect()
    }
}

pub(crate) fn rational_pow(t: &Rational, e: i64) -> Rational {
    let p = num_traits::pow(t.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// Finite Laurent polynomial in one variable `t`, zero coefficients dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPolynomial {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coefficient(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn leading_term(&self) -> Option<(i64, &Rational)> {
        self.terms.iter().next().map(|(&e, c)| (e, c))
    }

    pub fn evaluate(&self, t: &Rational) -> Rational {
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, (&e, c)| acc + c * rational_pow(t, e))
    }

    fn add_term(&mut self, e: i64, c: Rational) {
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }
}

/// `f(x0_1 t^q_1, ..., x0_n t^q_n) = sum a_alpha x0^alpha t^<q, alpha>`.
pub fn substitute_monomial_curve(f: &Polynomial, curve: &MonomialCurve) -> LaurentPolynomial {
    assert_eq!(f.nvars(), curve.x0.len(), "curve dimension mismatch");
    let mut out = LaurentPolynomial::default();
    for (alpha, c) in f.terms() {
        out.add_term(alpha.dot(&curve.q), c * super::monomial_value(alpha, &curve.x0));
    }
    out
}
