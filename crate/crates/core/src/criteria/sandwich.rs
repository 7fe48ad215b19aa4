//! Empirical comparison of `sigma f` with `P(x) = sum |x^alpha|` over the lattice
//! points of the Newton polytope, outside a ball.

use alloc::vec::Vec;

use num_rational::BigRational as Rational;
use num_traits::{Float, One, Signed, Zero};
use rand::Rng;

use super::{Geometry, StabilityReport, StabilityVerdict};
use crate::error::{Error, Result};
use crate::linalg::{exact_from_f64, rat, simplest_in_closed};
use crate::newton::abs_monomial_sum;
use crate::rng::{gaussian, stream, streams};

const MAX_RADIUS: f64 = 1e6;
const GRID: i64 = 1024;
const MAX_CURVE_STEPS: u32 = 400;

/// A sample beyond the radius where `sigma f / P <= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichViolation {
    pub point: Vec<Rational>,
    pub ratio: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SandwichEstimate {
    pub sign: i8,
    pub radius: f64,
    pub seed: u64,
    pub requested: usize,
    pub accepted: usize,
    /// Smallest observed `sigma f(x) / P(x)`.
    pub c1_hat: Rational,
    /// Largest observed `sigma f(x) / P(x)`.
    pub c2_hat: Rational,
    /// Point attaining `c1_hat`.
    pub argmin: Vec<Rational>,
    pub violations: Vec<SandwichViolation>,
}

struct Accumulator<'a> {
    g: &'a Geometry,
    lattice: &'a [crate::polynomial::ExponentVector],
    sign: Rational,
    radius2: Rational,
    accepted: usize,
    min: Option<(Rational, Vec<Rational>)>,
    max: Option<Rational>,
    violations: Vec<SandwichViolation>,
}

impl Accumulator<'_> {
    fn offer(&mut self, x: Vec<Rational>) -> bool {
        let norm2 = x.iter().fold(Rational::zero(), |acc, v| acc + v * v);
        if norm2 <= self.radius2 {
            return false;
        }
        let p = abs_monomial_sum(self.lattice, &x);
        if !p.is_positive() {
            return false;
        }
        let ratio = &self.sign * self.g.polynomial().evaluate(&x) / p;
        self.accepted += 1;
        if !ratio.is_positive() {
            self.violations.push(SandwichViolation {
                point: x.clone(),
                ratio: ratio.clone(),
            });
        }
        if self.max.as_ref().is_none_or(|m| &ratio > m) {
            self.max = Some(ratio.clone());
        }
        if self.min.as_ref().is_none_or(|(m, _)| &ratio < m) {
            self.min = Some((ratio, x));
        }
        true
    }
}

fn pow2(k: i64) -> Rational {
    let two = rat(2);
    if k >= 0 {
        num_traits::pow(two, k as usize)
    } else {
        num_traits::pow(two, (-k) as usize).recip()
    }
}

/// Samples `x` with `|x| > radius` and records the range of `sigma f / P`.
///
/// Half the samples are Gaussian directions at log-uniform radii in
/// `[radius, 1e6]`, rounded to multiples of `1/1024`. The other half follow
/// monomial curves `x_j = c_j t^{q_j}` with `t = 2^-k`, `c_j` in
/// `{+-1/2, +-1, +-2}` and `q` the witness normal of a random face at infinity,
/// which is where the ratio can approach zero.
pub fn sandwich_check(g: &Geometry, sign: i8, radius: f64, samples: usize, seed: u64) -> Result<SandwichEstimate> {
    if sign != 1 && sign != -1 {
        return Err(Error::InternalInconsistency("sandwich sign must be +-1".into()));
    }
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::MissingPrerequisite("sandwich radius must be positive".into()));
    }
    if samples == 0 {
        return Err(Error::EmptyInput("sample count".into()));
    }
    let lattice = g.lattice_points()?;
    let n = g.polynomial().nvars();
    let r_exact = exact_from_f64(radius);
    let mut acc = Accumulator {
        g,
        lattice,
        sign: rat(sign.into()),
        radius2: &r_exact * &r_exact,
        accepted: 0,
        min: None,
        max: None,
        violations: Vec::new(),
    };
    let mut rng = stream(seed, streams::SANDWICH, 0);
    let curve_faces: Vec<&[i64]> = g
        .boundary()
        .iter()
        .filter_map(|&i| g.faces()[i].witness_normal())
        .filter(|q| q.iter().any(|&v| v < 0))
        .collect();
    let curve_target = if curve_faces.is_empty() { 0 } else { samples / 2 };
    let ray_target = samples - curve_target;

    let span = Float::ln(MAX_RADIUS / radius.min(MAX_RADIUS));
    let mut taken = 0;
    let mut attempts = 0;
    while taken < ray_target && attempts < 4 * ray_target {
        attempts += 1;
        let d: Vec<f64> = (0..n).map(|_| gaussian(&mut rng)).collect();
        let len = Float::sqrt(d.iter().map(|v| v * v).sum::<f64>());
        if len == 0.0 {
            continue;
        }
        let r = radius * Float::exp(rng.gen::<f64>() * span);
        let x: Vec<Rational> = d
            .iter()
            .map(|v| {
                let scaled = Float::round(v / len * r * GRID as f64) as i64;
                Rational::new(scaled.into(), GRID.into())
            })
            .collect();
        if acc.offer(x) {
            taken += 1;
        }
    }

    let choices = [rat(1) / rat(2), rat(1), rat(2)];
    let mut taken = 0;
    let mut attempts = 0;
    while taken < curve_target && attempts < 4 * curve_target {
        attempts += 1;
        let q = curve_faces[rng.gen_range(0..curve_faces.len())];
        let c: Vec<Rational> = (0..n)
            .map(|_| {
                let v = choices[rng.gen_range(0..3)].clone();
                if rng.gen::<bool>() {
                    -v
                } else {
                    v
                }
            })
            .collect();
        let point = |k: i64| -> Vec<Rational> { c.iter().zip(q).map(|(cj, &qj)| cj * pow2(-k * qj)).collect() };
        let Some(k0) = (1..=MAX_CURVE_STEPS as i64).find(|&k| {
            let x = point(k);
            x.iter().fold(Rational::zero(), |a, v| a + v * v) > acc.radius2
        }) else {
            continue;
        };
        let k = k0 + rng.gen_range(0..=8);
        if acc.offer(point(k)) {
            taken += 1;
        }
    }

    let (c1_hat, argmin) = acc
        .min
        .ok_or_else(|| Error::EmptyInput("no sandwich sample beyond the radius".into()))?;
    Ok(SandwichEstimate {
        sign,
        radius,
        seed,
        requested: samples,
        accepted: acc.accepted,
        c1_hat,
        c2_hat: acc.max.unwrap_or_else(Rational::one),
        argmin,
        violations: acc.violations,
    })
}

/// Perturbation size believed to preserve compactness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonEstimate {
    pub value: Rational,
    /// `c1_hat / 2`.
    pub from_sandwich: Rational,
    /// Smallest `|a_alpha|` over vertices of the Newton polytope.
    pub min_vertex_coefficient: Rational,
    /// Always true: `c1_hat` is an empirical lower bound.
    pub heuristic: bool,
}

/// `min(c1_hat / 2, min |a_v|)`, rounded down to a short rational.
pub fn epsilon_estimate(g: &Geometry, stability: &StabilityReport, est: &SandwichEstimate) -> Result<EpsilonEstimate> {
    match stability.verdict {
        StabilityVerdict::StablyCompactCertified(s) if s == est.sign => {}
        _ => {
            return Err(Error::MissingPrerequisite(
                "epsilon needs a stably compact certificate with a matching sandwich".into(),
            ))
        }
    }
    if !est.c1_hat.is_positive() {
        return Err(Error::MissingPrerequisite(
            "sandwich lower constant is not positive".into(),
        ));
    }
    let half = &est.c1_hat / rat(2);
    let f = g.polynomial();
    let min_vertex = g
        .polytope()
        .vertices()
        .iter()
        .map(|v| f.coefficient(v).map(Signed::abs).unwrap_or_default())
        .min()
        .ok_or(Error::ZeroPolynomial)?;
    let bound = if half < min_vertex {
        half.clone()
    } else {
        min_vertex.clone()
    };
    let slack = Rational::new(1.into(), 1_000_000.into());
    let value = simplest_in_closed(&(&bound * (Rational::one() - slack)), &bound);
    Ok(EpsilonEstimate {
        value,
        from_sandwich: half,
        min_vertex_coefficient: min_vertex,
        heuristic: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::{face_sign_verdicts, stable_compactness};
    use crate::polynomial::parse;
    use crate::signcheck::Budget;

    #[test]
    fn circle_ratio_stays_positive() {
        let g = Geometry::new(&parse("x1^2 + x2^2 - 1", 2).unwrap()).unwrap();
        let est = sandwich_check(&g, 1, 10.0, 400, 0).unwrap();
        assert!(est.violations.is_empty());
        assert!(est.c1_hat.is_positive());
        assert!(est.c2_hat <= rat(1));
        let v = face_sign_verdicts(&g, &Budget::default()).unwrap();
        let st = stable_compactness(&g, &v).unwrap();
        let eps = epsilon_estimate(&g, &st, &est).unwrap();
        assert!(eps.value.is_positive() && eps.value <= eps.from_sandwich);
    }

    #[test]
    fn square_ratio_reaches_zero() {
        let g = Geometry::new(&parse("(x1 - x2)^2", 2).unwrap()).unwrap();
        let est = sandwich_check(&g, 1, 10.0, 400, 0).unwrap();
        assert!(est.c1_hat < Rational::new(1.into(), 1_000_000.into()));
        let v = face_sign_verdicts(&g, &Budget::default()).unwrap();
        let st = stable_compactness(&g, &v).unwrap();
        assert!(matches!(
            epsilon_estimate(&g, &st, &est),
            Err(Error::MissingPrerequisite(_))
        ));
    }
}
