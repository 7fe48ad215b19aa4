//! Numerical probes on large spheres. Results are evidence, never proofs.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational as Rational;
use num_traits::{Float, Signed, Zero};
use rand::Rng;

use crate::linalg::to_f64;
use crate::polynomial::Polynomial;
use crate::rng::{gaussian, stream, streams};

const SPHERE_GRID: i64 = 1024;
const RELATIVE_ZERO: f64 = 1e-8;
const MAX_POINTS_PER_RADIUS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeBudget {
    /// Points sampled along each great circle.
    pub points_per_circle: usize,
    /// Random great circles per radius, on top of the coordinate planes.
    pub random_circles: usize,
    pub bisection_steps: usize,
    /// Refine local minima of `|f|` and accept near-zeros as evidence.
    pub track_minimum: bool,
    pub descent_steps: usize,
}

impl Default for ProbeBudget {
    fn default() -> Self {
        Self {
            points_per_circle: 512,
            random_circles: 12,
            bisection_steps: 60,
            track_minimum: true,
            descent_steps: 200,
        }
    }
}

/// A floating-point location where `f` is numerically zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproximatePoint {
    pub radius: f64,
    pub point: Vec<f64>,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProbeEvidence {
    NoFarZeros { radii: Vec<f64>, circles: usize, seed: u64 },
    FarZeroEvidence { points: Vec<ApproximatePoint>, seed: u64 },
}

impl ProbeEvidence {
    pub fn name(&self) -> &'static str {
        match self {
            ProbeEvidence::NoFarZeros { .. } => "no_far_zeros",
            ProbeEvidence::FarZeroEvidence { .. } => "far_zero_evidence",
        }
    }

    pub fn found_far_zeros(&self) -> bool {
        matches!(self, ProbeEvidence::FarZeroEvidence { .. })
    }

    /// Far zeros found at radius at least `r`.
    pub fn points_at_least(&self, r: f64) -> impl Iterator<Item = &ApproximatePoint> {
        let points: &[ApproximatePoint] = match self {
            ProbeEvidence::FarZeroEvidence { points, .. } => points,
            ProbeEvidence::NoFarZeros { .. } => &[],
        };
        points.iter().filter(move |p| p.radius >= r)
    }
}

struct Evaluator {
    n: usize,
    terms: Vec<(Vec<i32>, f64)>,
    norm: f64,
}

impl Evaluator {
    fn new(f: &Polynomial) -> Self {
        let terms: Vec<(Vec<i32>, f64)> = f
            .terms()
            .map(|(a, c)| (a.as_slice().iter().map(|&e| e as i32).collect(), to_f64(c)))
            .collect();
        let norm = terms.iter().map(|(_, c)| Float::abs(*c)).fold(0.0, f64::max);
        Self {
            n: f.nvars(),
            terms,
            norm,
        }
    }

    /// `(f(x), sum |a_alpha x^alpha|)`.
    fn eval(&self, x: &[f64]) -> (f64, f64) {
        let mut value = 0.0;
        let mut scale = 0.0;
        for (a, c) in &self.terms {
            let m: f64 = a.iter().zip(x).map(|(&e, &v)| Float::powi(v, e)).product();
            value += c * m;
            scale += Float::abs(c * m);
        }
        (value, scale)
    }

    fn is_near_zero(&self, x: &[f64]) -> Option<f64> {
        let (v, _) = self.eval(x);
        let p: f64 = self
            .terms
            .iter()
            .map(|(a, _)| {
                a.iter()
                    .zip(x)
                    .map(|(&e, &t)| Float::powi(Float::abs(t), e))
                    .product::<f64>()
            })
            .sum();
        (Float::abs(v) <= RELATIVE_ZERO * (1.0 + self.norm * p)).then_some(v)
    }

    /// `f / scale`, bounded in `[-1, 1]`.
    fn relative(&self, x: &[f64]) -> f64 {
        let (v, s) = self.eval(x);
        if s > 0.0 {
            v / s
        } else {
            0.0
        }
    }
}

struct Circle {
    radius: f64,
    u: Vec<f64>,
    v: Vec<f64>,
}

impl Circle {
    fn at(&self, theta: f64) -> Vec<f64> {
        let (s, c) = (Float::sin(theta), Float::cos(theta));
        self.u
            .iter()
            .zip(&self.v)
            .map(|(a, b)| self.radius * (c * a + s * b))
            .collect()
    }
}

fn unit(n: usize, j: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[j] = 1.0;
    e
}

fn random_orthonormal_pair<R: Rng>(n: usize, rng: &mut R) -> Option<(Vec<f64>, Vec<f64>)> {
    let u: Vec<f64> = (0..n).map(|_| gaussian(rng)).collect();
    let nu = Float::sqrt(u.iter().map(|a| a * a).sum::<f64>());
    if nu < 1e-12 {
        return None;
    }
    let u: Vec<f64> = u.iter().map(|a| a / nu).collect();
    let w: Vec<f64> = (0..n).map(|_| gaussian(rng)).collect();
    let d: f64 = w.iter().zip(&u).map(|(a, b)| a * b).sum();
    let v: Vec<f64> = w.iter().zip(&u).map(|(a, b)| a - d * b).collect();
    let nv = Float::sqrt(v.iter().map(|a| a * a).sum::<f64>());
    if nv < 1e-12 {
        return None;
    }
    Some((u, v.iter().map(|a| a / nv).collect()))
}

fn circles<R: Rng>(n: usize, radius: f64, random: usize, rng: &mut R) -> Vec<Circle> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(Circle {
                radius,
                u: unit(n, i),
                v: unit(n, j),
            });
        }
    }
    if n > 2 {
        for _ in 0..random {
            if let Some((u, v)) = random_orthonormal_pair(n, rng) {
                out.push(Circle { radius, u, v });
            }
        }
    }
    out
}

fn golden_minimum(h: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let phi = (Float::sqrt(5.0f64) - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    for _ in 0..80 {
        if h(c) < h(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - phi * (b - a);
        d = a + phi * (b - a);
    }
    (a + b) / 2.0
}

/// Gradient descent of `(f / scale)^2` restricted to the sphere of radius `r`.
fn sphere_descent(ev: &Evaluator, start: &[f64], r: f64, steps: usize) -> Vec<f64> {
    let objective = |x: &[f64]| {
        let v = ev.relative(x);
        v * v
    };
    let mut x = start.to_vec();
    let mut step = 0.05 * r;
    let mut cost = objective(&x);
    for _ in 0..steps {
        let h = 1e-7 * r;
        let grad: Vec<f64> = (0..ev.n)
            .map(|j| {
                let mut y = x.clone();
                y[j] += h;
                (objective(&y) - cost) / h
            })
            .collect();
        let radial: f64 = grad.iter().zip(&x).map(|(g, v)| g * v).sum::<f64>() / (r * r);
        let tangent: Vec<f64> = grad.iter().zip(&x).map(|(g, v)| g - radial * v).collect();
        let gn = Float::sqrt(tangent.iter().map(|g| g * g).sum::<f64>());
        if gn == 0.0 || step < 1e-14 * r {
            break;
        }
        let trial: Vec<f64> = x.iter().zip(&tangent).map(|(v, g)| v - step * g / gn).collect();
        let tn = Float::sqrt(trial.iter().map(|v| v * v).sum::<f64>());
        let trial: Vec<f64> = trial.iter().map(|v| v * r / tn).collect();
        let tc = objective(&trial);
        if tc < cost {
            x = trial;
            cost = tc;
            step *= 1.2;
        } else {
            step *= 0.5;
        }
    }
    x
}

/// Searches spheres of the given radii for points where `f` changes sign or is
/// numerically zero. Sign changes along a great circle are bisected in the
/// angle; with `track_minimum`, local minima of `|f| / sum |a x^alpha|` are
/// refined by golden-section search and then by descent on the sphere.
pub fn numeric_compactness_probe(f: &Polynomial, radii: &[f64], budget: &ProbeBudget, seed: u64) -> ProbeEvidence {
    let ev = Evaluator::new(f);
    let n = ev.n;
    let mut rng = stream(seed, streams::PROBE, 0);
    let mut found: Vec<ApproximatePoint> = Vec::new();
    let mut circle_count = 0;
    for &r in radii {
        let mut here: Vec<ApproximatePoint> = Vec::new();
        let record = |x: Vec<f64>, value: f64, here: &mut Vec<ApproximatePoint>| {
            let close = here
                .iter()
                .any(|p| p.point.iter().zip(&x).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() < 1e-6 * r * r);
            if !close && here.len() < MAX_POINTS_PER_RADIUS {
                here.push(ApproximatePoint {
                    radius: r,
                    point: x,
                    value,
                });
            }
        };
        if n == 1 {
            for x in [r, -r] {
                if let Some(v) = ev.is_near_zero(&[x]) {
                    record(vec![x], v, &mut here);
                }
            }
            found.extend(here);
            continue;
        }
        let all = circles(n, r, budget.random_circles, &mut rng);
        circle_count += all.len();
        let m = budget.points_per_circle.max(8);
        let step = core::f64::consts::TAU / m as f64;
        for c in &all {
            let offset = rng.gen::<f64>() * step;
            let thetas: Vec<f64> = (0..m).map(|i| offset + i as f64 * step).collect();
            let values: Vec<f64> = thetas.iter().map(|&t| ev.relative(&c.at(t))).collect();
            for i in 0..m {
                let j = (i + 1) % m;
                let (t0, t1) = (
                    thetas[i],
                    if j == 0 {
                        thetas[0] + core::f64::consts::TAU
                    } else {
                        thetas[j]
                    },
                );
                let (v0, v1) = (values[i], values[j]);
                if v0 == 0.0 {
                    let x = c.at(t0);
                    let v = ev.eval(&x).0;
                    record(x, v, &mut here);
                } else if v0 * v1 < 0.0 {
                    let (mut a, mut b) = (t0, t1);
                    for _ in 0..budget.bisection_steps {
                        let mid = (a + b) / 2.0;
                        if ev.relative(&c.at(mid)) * v0 > 0.0 {
                            a = mid;
                        } else {
                            b = mid;
                        }
                    }
                    let x = c.at((a + b) / 2.0);
                    let v = ev.eval(&x).0;
                    record(x, v, &mut here);
                }
            }
            if !budget.track_minimum {
                continue;
            }
            for i in 0..m {
                let prev = values[(i + m - 1) % m].abs();
                let next = values[(i + 1) % m].abs();
                let cur = values[i].abs();
                if !(cur <= prev && cur <= next) || cur == 0.0 || values[(i + 1) % m] * values[i] < 0.0 {
                    continue;
                }
                let theta = golden_minimum(|t| ev.relative(&c.at(t)).abs(), thetas[i] - step, thetas[i] + step);
                let mut x = c.at(theta);
                if ev.is_near_zero(&x).is_none() && n > 2 && budget.descent_steps > 0 && cur < 0.05 {
                    x = sphere_descent(&ev, &x, r, budget.descent_steps);
                }
                if let Some(v) = ev.is_near_zero(&x) {
                    record(x, v, &mut here);
                }
            }
        }
        found.extend(here);
    }
    if found.is_empty() {
        ProbeEvidence::NoFarZeros {
            radii: radii.to_vec(),
            circles: circle_count,
            seed,
        }
    } else {
        ProbeEvidence::FarZeroEvidence { points: found, seed }
    }
}

/// Sign of `f` observed on sampled spheres.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EventualSign {
    NonnegBeyond,
    NonposBeyond,
    SignChange {
        positive: Vec<Rational>,
        negative: Vec<Rational>,
    },
}

impl EventualSign {
    pub fn name(&self) -> &'static str {
        match self {
            EventualSign::NonnegBeyond => "nonneg_beyond",
            EventualSign::NonposBeyond => "nonpos_beyond",
            EventualSign::SignChange { .. } => "sign_change",
        }
    }

    pub fn same_kind(&self, other: &Self) -> bool {
        core::mem::discriminant(self) == core::mem::discriminant(other)
    }
}

/// Evaluates `f` exactly at rational points close to the spheres of the given
/// radii (including `+-R e_j`) and reports the observed sign.
pub fn eventual_sign_probe(f: &Polynomial, radii: &[f64], samples: usize, seed: u64) -> EventualSign {
    let n = f.nvars();
    let mut rng = stream(seed, streams::EVENTUAL, 0);
    let mut positive: Option<Vec<Rational>> = None;
    let mut negative: Option<Vec<Rational>> = None;
    let per_radius = samples / radii.len().max(1);
    let grid = |v: f64| Rational::new((Float::round(v * SPHERE_GRID as f64) as i64).into(), SPHERE_GRID.into());
    for &r in radii {
        let mut points: Vec<Vec<Rational>> = Vec::new();
        for j in 0..n {
            for s in [1.0, -1.0] {
                let mut x = vec![Rational::zero(); n];
                x[j] = grid(s * r);
                points.push(x);
            }
        }
        for _ in 0..per_radius {
            let d: Vec<f64> = (0..n).map(|_| gaussian(&mut rng)).collect();
            let len = Float::sqrt(d.iter().map(|a| a * a).sum::<f64>());
            if len > 0.0 {
                points.push(d.iter().map(|a| grid(a / len * r)).collect());
            }
        }
        for x in points {
            let v = f.evaluate(&x);
            if v.is_positive() && positive.is_none() {
                positive = Some(x);
            } else if v.is_negative() && negative.is_none() {
                negative = Some(x);
            }
        }
        if positive.is_some() && negative.is_some() {
            break;
        }
    }
    match (positive, negative) {
        (Some(p), Some(q)) => EventualSign::SignChange {
            positive: p,
            negative: q,
        },
        (None, Some(_)) => EventualSign::NonposBeyond,
        _ => EventualSign::NonnegBeyond,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::parse;

    fn probe(text: &str, n: usize, radii: &[f64]) -> ProbeEvidence {
        numeric_compactness_probe(&parse(text, n).unwrap(), radii, &ProbeBudget::default(), 0)
    }

    #[test]
    fn circle_has_no_far_zeros() {
        assert!(!probe("x1^2 + x2^2 - 1", 2, &[10.0, 100.0]).found_far_zeros());
    }

    #[test]
    fn touching_zero_is_found_by_minimum_tracking() {
        let e = probe("(x1 - x2)^2", 2, &[100.0]);
        let p = e.points_at_least(100.0).next().expect("far zero");
        assert!((p.point[0] - p.point[1]).abs() < 1e-3);
    }

    #[test]
    fn crossing_zero_in_three_variables() {
        assert!(probe("x1*x2*x3 - 1", 3, &[50.0]).found_far_zeros());
        assert!(!probe("x1^2 + x2^2 + x3^2 - 1", 3, &[50.0]).found_far_zeros());
    }

    #[test]
    fn eventual_sign() {
        let f = parse("x1^2 + x2^2 - 1", 2).unwrap();
        assert_eq!(eventual_sign_probe(&f, &[10.0], 100, 0), EventualSign::NonnegBeyond);
        let g = parse("x1*x2 - 1", 2).unwrap();
        assert!(matches!(
            eventual_sign_probe(&g, &[10.0], 100, 0),
            EventualSign::SignChange { .. }
        ));
    }
}
