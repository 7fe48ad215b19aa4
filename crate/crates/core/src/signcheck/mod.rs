//! Sign behaviour of a polynomial on the punctured space `(R \ {0})^n`.
//!
//! The punctured space is split into `2^n` open orthants. Orthant `i` has sign
//! vector `sigma` with `sigma_j = -1` exactly when bit `j` of `i` is set, and is
//! reduced to the positive orthant by [`orthant_substitute`]. On the positive
//! orthant a tiered prover runs: single monomial, uniform coefficient sign,
//! exact univariate reduction for supports on a line, random sampling.
//!
//! Every witness is an exact rational point with its exact value, and every
//! strict verdict carries a [`Certificate`] that [`verify`] rechecks without
//! using the prover's code.

mod critical;
pub mod verify;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational as Rational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{primitive_integer, rat, round_to_denominator, to_f64, to_i64_vec};
use crate::newton::{face_polynomial, Face, NewtonPolytope};
use crate::polynomial::{rational_pow, ExponentVector, Polynomial};
use crate::rng::{derive_seed, stream, streams};
use crate::univariate::{analyze_positive_roots, multiple_positive_roots, sign, UniPoly};

pub use critical::CriticalSearch;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignKind {
    StrictlyPositive,
    StrictlyNegative,
    TakesZero,
    TakesBothSigns,
    Unknown,
}

impl SignKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SignKind::StrictlyPositive => "StrictlyPositive",
            SignKind::StrictlyNegative => "StrictlyNegative",
            SignKind::TakesZero => "TakesZero",
            SignKind::TakesBothSigns => "TakesBothSigns",
            SignKind::Unknown => "Unknown",
        }
    }

    /// `+1` / `-1` for the strict kinds.
    pub fn strict_sign(self) -> Option<i8> {
        match self {
            SignKind::StrictlyPositive => Some(1),
            SignKind::StrictlyNegative => Some(-1),
            _ => None,
        }
    }

    fn strict(s: i8) -> Self {
        if s > 0 {
            SignKind::StrictlyPositive
        } else {
            SignKind::StrictlyNegative
        }
    }
}

/// An exact point and the exact value of the polynomial there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub point: Vec<Rational>,
    pub value: Rational,
}

impl Witness {
    fn at(f: &Polynomial, point: Vec<Rational>) -> Self {
        let value = f.evaluate(&point);
        Self { point, value }
    }

    pub fn sign(&self) -> i8 {
        sign(&self.value)
    }
}

/// `f = x^base * u(x^direction)` with `u(s) = sum univariate[k] s^k`, and
/// `<inverse, direction> = 1` so that `x_j = s^inverse_j` realizes any `s > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineReduction {
    pub base: Vec<i64>,
    pub direction: Vec<i64>,
    pub univariate: Vec<Rational>,
    pub inverse: Vec<i64>,
}

impl LineReduction {
    pub fn univariate_poly(&self) -> UniPoly {
        UniPoly::new(self.univariate.clone())
    }

    /// A point of the positive orthant with `x^direction = s`.
    pub fn point_for(&self, s: &Rational) -> Vec<Rational> {
        self.inverse.iter().map(|&e| rational_pow(s, e)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A single term; its coefficient sign is the sign everywhere.
    MonomialFace { sign: i8 },
    /// Every coefficient has this strict sign.
    OrthantCoefficient { sign: i8 },
    /// Support on a line. `sign` is the sign of `u` away from its positive
    /// roots; `positive_roots` counts distinct roots in `(0, +inf)`.
    UnivariateSturm {
        reduction: LineReduction,
        positive_roots: usize,
        sign: i8,
        exact_roots: Vec<Rational>,
    },
    /// One positive-orthant certificate per orthant of the punctured space,
    /// each about `orthant_substitute(f, sigma_i)`.
    Orthants(Vec<Certificate>),
}

impl Certificate {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Certificate::MonomialFace { .. } => "MonomialFace",
            Certificate::OrthantCoefficient { .. } => "OrthantCoefficient",
            Certificate::UnivariateSturm { .. } => "UnivariateSturm",
            Certificate::Orthants(_) => "Orthants",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignVerdict {
    pub kind: SignKind,
    pub certificate: Option<Certificate>,
    pub witnesses: Vec<Witness>,
    /// Random samples evaluated.
    pub samples: usize,
    pub seed: u64,
    /// Why the search stopped without a decision.
    pub exhausted: Option<String>,
}

impl SignVerdict {
    fn decided(kind: SignKind, certificate: Option<Certificate>, witnesses: Vec<Witness>, seed: u64) -> Self {
        Self {
            kind,
            certificate,
            witnesses,
            samples: 0,
            seed,
            exhausted: None,
        }
    }

    pub fn zero_witness(&self) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.value.is_zero())
    }

    pub fn witness_with_sign(&self, s: i8) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.sign() == s)
    }

    /// The sign class is settled: strict, mixed, or touching zero with a
    /// certificate covering the whole domain.
    pub fn is_decided(&self) -> bool {
        match self.kind {
            SignKind::StrictlyPositive | SignKind::StrictlyNegative | SignKind::TakesBothSigns => true,
            SignKind::TakesZero => self.certificate.is_some(),
            SignKind::Unknown => false,
        }
    }
}

/// Search effort for the sampling tier and the critical-point search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub samples_per_orthant: usize,
    pub seed: u64,
    pub critical_starts: usize,
    pub critical_iterations: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            samples_per_orthant: 2000,
            seed: 0,
            critical_starts: 8,
            critical_iterations: 80,
        }
    }
}

impl Budget {
    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    /// Budget for an independent sub-task, with a derived seed.
    pub fn child(self, stream_id: u64, index: u64) -> Self {
        self.with_seed(derive_seed(self.seed, stream_id, index))
    }
}

/// Sign vector of orthant `index` in `n` variables.
pub fn orthant_signs(index: u64, n: usize) -> Vec<i8> {
    (0..n).map(|j| if index >> j & 1 == 1 { -1 } else { 1 }).collect()
}

/// `f(sigma_1 y_1, ..., sigma_n y_n)`.
pub fn orthant_substitute(f: &Polynomial, sigma: &[i8]) -> Polynomial {
    assert_eq!(sigma.len(), f.nvars(), "sign vector length mismatch");
    let terms = f.terms().map(|(alpha, c)| {
        let odd = alpha
            .as_slice()
            .iter()
            .zip(sigma)
            .filter(|(&e, &s)| s < 0 && e % 2 == 1)
            .count();
        let c = if odd % 2 == 1 { -c.clone() } else { c.clone() };
        (alpha.clone(), c)
    });
    Polynomial::from_terms(f.nvars(), terms).expect("same exponents")
}

fn map_point(sigma: &[i8], p: &[Rational]) -> Vec<Rational> {
    p.iter()
        .zip(sigma)
        .map(|(x, &s)| if s < 0 { -x.clone() } else { x.clone() })
        .collect()
}

/// Integer `e` with `<e, w> = 1` for primitive `w`, preferring a unit vector on
/// the last coordinate where `w_j = +-1`.
fn bezout_inverse(w: &[i64]) -> Option<Vec<i64>> {
    let n = w.len();
    if let Some(j) = (0..n).rev().find(|&j| w[j].abs() == 1) {
        let mut e = vec![0; n];
        e[j] = w[j];
        return Some(e);
    }
    let mut e = vec![0i64; n];
    let mut g = 0i64;
    for j in 0..n {
        if w[j] == 0 {
            continue;
        }
        if g == 0 {
            g = w[j];
            e[j] = 1;
            continue;
        }
        let ext = g.extended_gcd(&w[j]);
        for v in e.iter_mut() {
            *v *= ext.x;
        }
        e[j] = ext.y;
        g = ext.gcd;
    }
    match g {
        1 => Some(e),
        -1 => Some(e.into_iter().map(|v| -v).collect()),
        _ => None,
    }
}

/// Writes `f` as `x^base * u(x^direction)` when its support lies on a line.
pub fn line_reduction(f: &Polynomial) -> Option<LineReduction> {
    let support: Vec<&ExponentVector> = f.support().collect();
    if support.len() < 2 {
        return None;
    }
    let p0 = support[0].to_i64();
    let first_diff: Vec<i64> = support[1].to_i64().iter().zip(&p0).map(|(a, b)| a - b).collect();
    let dir = to_i64_vec(
        &primitive_integer(&first_diff.iter().map(|&x| rat(x)).collect::<Vec<_>>()),
        "line direction",
    )
    .ok()?;
    let lead = dir.iter().position(|&x| x != 0)?;
    let mut steps = Vec::with_capacity(support.len());
    for a in &support {
        let diff: Vec<i64> = a.to_i64().iter().zip(&p0).map(|(x, y)| x - y).collect();
        let t = diff[lead] / dir[lead];
        if diff.iter().zip(&dir).any(|(d, w)| *d != t * w) {
            return None;
        }
        steps.push(t);
    }
    let tmin = *steps.iter().min()?;
    let base: Vec<i64> = p0.iter().zip(&dir).map(|(p, w)| p + tmin * w).collect();
    let degree = (steps.iter().max()? - tmin) as usize;
    let mut univariate = vec![Rational::zero(); degree + 1];
    for ((_, c), t) in f.terms().zip(&steps) {
        univariate[(t - tmin) as usize] = c.clone();
    }
    let inverse = bezout_inverse(&dir)?;
    Some(LineReduction {
        base,
        direction: dir,
        univariate,
        inverse,
    })
}

fn coefficient_sign(f: &Polynomial) -> Option<i8> {
    let mut it = f.terms().map(|(_, c)| sign(c));
    let s = it.next()?;
    it.all(|t| t == s).then_some(s)
}

fn ones(n: usize) -> Vec<Rational> {
    vec![Rational::one(); n]
}

/// Sign of `f` on the open positive orthant.
pub fn sign_on_positive_orthant(f: &Polynomial, budget: &Budget) -> Result<SignVerdict> {
    positive_orthant(f, budget, 0)
}

fn positive_orthant(f: &Polynomial, budget: &Budget, index: u64) -> Result<SignVerdict> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.nvars();
    if f.len() == 1 {
        let s = coefficient_sign(f).expect("one term");
        return Ok(SignVerdict::decided(
            SignKind::strict(s),
            Some(Certificate::MonomialFace { sign: s }),
            Vec::new(),
            budget.seed,
        ));
    }
    if let Some(s) = coefficient_sign(f) {
        return Ok(SignVerdict::decided(
            SignKind::strict(s),
            Some(Certificate::OrthantCoefficient { sign: s }),
            Vec::new(),
            budget.seed,
        ));
    }
    if let Some(red) = line_reduction(f) {
        return Ok(line_verdict(f, red, budget.seed));
    }
    Ok(sample_verdict(f, n, budget, index))
}

fn line_verdict(f: &Polynomial, red: LineReduction, seed: u64) -> SignVerdict {
    let u = red.univariate_poly();
    let analysis = analyze_positive_roots(&u);
    let exact_roots: Vec<Rational> = analysis.roots.iter().filter_map(|r| r.exact.clone()).collect();
    let positive_roots = analysis.roots.len();
    let gap_witness = |s: i8| {
        analysis
            .gaps
            .iter()
            .find(|g| g.1 == s)
            .map(|g| Witness::at(f, red.point_for(&g.0)))
    };
    if let Some(s) = analysis.strict_sign() {
        let cert = Certificate::UnivariateSturm {
            reduction: red,
            positive_roots: 0,
            sign: s,
            exact_roots,
        };
        return SignVerdict::decided(SignKind::strict(s), Some(cert), Vec::new(), seed);
    }
    if analysis.changes_sign() {
        let witnesses = vec![
            gap_witness(1).expect("positive gap"),
            gap_witness(-1).expect("negative gap"),
        ];
        return SignVerdict::decided(SignKind::TakesBothSigns, None, witnesses, seed);
    }
    let s = analysis.off_root_sign().expect("nonempty gaps");
    let mut witnesses = Vec::new();
    if let Some(r) = exact_roots.first() {
        witnesses.push(Witness::at(f, red.point_for(r)));
    }
    witnesses.extend(gap_witness(s));
    let cert = Certificate::UnivariateSturm {
        reduction: red,
        positive_roots,
        sign: s,
        exact_roots,
    };
    SignVerdict::decided(SignKind::TakesZero, Some(cert), witnesses, seed)
}

/// Log-uniform magnitude in `[1e-3, 1e3]`, rounded to denominator `1e6`.
fn sample_magnitude<R: Rng>(rng: &mut R) -> Rational {
    let e: f64 = rng.gen_range(-3.0..=3.0);
    let m = num_traits::Float::powf(10.0f64, e);
    let r = round_to_denominator(m, 1_000_000);
    if r.is_zero() {
        Rational::new(BigInt::one(), BigInt::from(1000))
    } else {
        r
    }
}

fn grid_points(n: usize, cap: usize) -> impl Iterator<Item = Vec<Rational>> {
    let levels = [Rational::new(BigInt::one(), BigInt::from(2)), rat(1), rat(2)];
    let total = 3usize.saturating_pow(n as u32).min(cap);
    (0..total).map(move |mut k| {
        (0..n)
            .map(|_| {
                let v = levels[k % 3].clone();
                k /= 3;
                v
            })
            .collect()
    })
}

fn sample_verdict(f: &Polynomial, n: usize, budget: &Budget, index: u64) -> SignVerdict {
    let mut rng = stream(budget.seed, streams::ORTHANT, index);
    let mut pos: Option<Witness> = None;
    let mut neg: Option<Witness> = None;
    let mut zero: Option<Witness> = None;
    let mut used = 0usize;
    let grid = grid_points(n, budget.samples_per_orthant / 2);
    let random = core::iter::repeat_with(|| (0..n).map(|_| sample_magnitude(&mut rng)).collect::<Vec<_>>());
    for point in grid.chain(random).take(budget.samples_per_orthant) {
        used += 1;
        let w = Witness::at(f, point);
        let slot = match w.sign() {
            1 => &mut pos,
            -1 => &mut neg,
            _ => &mut zero,
        };
        if slot.is_none() {
            *slot = Some(w);
        }
        if pos.is_some() && neg.is_some() {
            break;
        }
    }
    let finish = |kind, witnesses| SignVerdict {
        kind,
        certificate: None,
        witnesses,
        samples: used,
        seed: budget.seed,
        exhausted: None,
    };
    match (pos, neg, zero) {
        (Some(p), Some(m), z) => {
            let mut ws = vec![p, m];
            let extra = z.or_else(|| bisect_for_zero(f, &ws[0].point, &ws[1].point));
            ws.extend(extra);
            finish(SignKind::TakesBothSigns, ws)
        }
        (p, m, Some(z)) => {
            let mut ws = vec![z];
            ws.extend(p.or(m));
            finish(SignKind::TakesZero, ws)
        }
        _ => SignVerdict {
            kind: SignKind::Unknown,
            certificate: None,
            witnesses: Vec::new(),
            samples: used,
            seed: budget.seed,
            exhausted: Some(format!(
                "{used} samples on the positive orthant found a single strict sign"
            )),
        },
    }
}

/// Bisects the segment between two opposite-sign points in floating point and
/// keeps the result only if a small-denominator rounding is an exact zero.
fn bisect_for_zero(f: &Polynomial, a: &[Rational], b: &[Rational]) -> Option<Witness> {
    let a: Vec<f64> = a.iter().map(to_f64).collect();
    let b: Vec<f64> = b.iter().map(to_f64).collect();
    let at = |t: f64| -> Vec<f64> { a.iter().zip(&b).map(|(x, y)| x + t * (y - x)).collect() };
    let sa = f.evaluate_f64(&a).signum();
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if f.evaluate_f64(&at(mid)).signum() == sa {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = at(0.5 * (lo + hi));
    for den in [1i64, 2, 3, 4, 5, 6, 8, 10, 12, 16, 20, 100, 1000] {
        let p: Vec<Rational> = x.iter().map(|&v| round_to_denominator(v, den)).collect();
        if p.iter().any(Zero::is_zero) {
            continue;
        }
        if f.evaluate(&p).is_zero() {
            return Some(Witness::at(f, p));
        }
    }
    None
}

/// Sign of `f` on `(R \ {0})^n`, combining all `2^n` orthants.
pub fn sign_on_punctured_space(f: &Polynomial, budget: &Budget) -> Result<SignVerdict> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.nvars();
    let mut per_orthant = Vec::with_capacity(1 << n);
    for idx in 0..(1u64 << n) {
        let sigma = orthant_signs(idx, n);
        let g = orthant_substitute(f, &sigma);
        let mut v = positive_orthant(&g, budget, idx)?;
        if let Some(s) = v.kind.strict_sign() {
            v.witnesses.push(Witness {
                point: ones(n),
                value: g.evaluate(&ones(n)),
            });
            debug_assert_eq!(v.witnesses[0].sign(), s);
        }
        for w in &mut v.witnesses {
            w.point = map_point(&sigma, &w.point);
        }
        per_orthant.push(v);
    }
    Ok(combine_orthants(per_orthant, budget.seed))
}

fn combine_orthants(per_orthant: Vec<SignVerdict>, seed: u64) -> SignVerdict {
    let samples = per_orthant.iter().map(|v| v.samples).sum();
    let all = || per_orthant.iter().flat_map(|v| v.witnesses.iter());
    let pos = all().find(|w| w.sign() > 0).cloned();
    let neg = all().find(|w| w.sign() < 0).cloned();
    let zero = all().find(|w| w.sign() == 0).cloned();
    let all_decided = per_orthant.iter().all(|v| v.kind != SignKind::Unknown);
    let certificate_set = || {
        per_orthant
            .iter()
            .map(|v| v.certificate.clone())
            .collect::<Option<Vec<_>>>()
            .map(Certificate::Orthants)
    };
    let base = |kind, certificate, witnesses| SignVerdict {
        kind,
        certificate,
        witnesses,
        samples,
        seed,
        exhausted: None,
    };
    if let (Some(p), Some(m)) = (&pos, &neg) {
        let mut ws = vec![p.clone(), m.clone()];
        ws.extend(zero);
        return base(SignKind::TakesBothSigns, None, ws);
    }
    let touches_zero = zero.is_some() || per_orthant.iter().any(|v| v.kind == SignKind::TakesZero);
    if touches_zero {
        let mut ws: Vec<Witness> = zero.into_iter().collect();
        ws.extend(pos.or(neg));
        let cert = if all_decided { certificate_set() } else { None };
        return base(SignKind::TakesZero, cert, ws);
    }
    if !all_decided {
        let mut v = base(SignKind::Unknown, None, Vec::new());
        v.exhausted = Some(format!(
            "{samples} samples across {} orthants found no sign change or zero",
            per_orthant.len()
        ));
        return v;
    }
    let s = per_orthant[0].kind.strict_sign().expect("strict");
    base(SignKind::strict(s), certificate_set(), Vec::new())
}

/// Outcome of the search for a common zero of `f_Delta` and its gradient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CriticalVerdict {
    /// No solution found; `certified` when this is proved.
    NoCriticalZeroFound { certified: bool },
    /// Exact rational solution in `(R \ {0})^n`.
    DegeneratePoint(Vec<Rational>),
    /// A solution exists on the line `x^direction = s` (in the given orthant)
    /// for an irrational `s` inside the interval.
    DegenerateIrrational {
        orthant: Vec<i8>,
        direction: Vec<i64>,
        lower: Rational,
        upper: Rational,
    },
    /// A numeric candidate converged but could not be confirmed exactly.
    Unknown,
}

impl CriticalVerdict {
    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            CriticalVerdict::DegeneratePoint(_) | CriticalVerdict::DegenerateIrrational { .. }
        )
    }

    pub fn name(&self) -> &'static str {
        match self {
            CriticalVerdict::NoCriticalZeroFound { .. } => "NoCriticalZeroFound",
            CriticalVerdict::DegeneratePoint(_) => "DegeneratePoint",
            CriticalVerdict::DegenerateIrrational { .. } => "DegenerateIrrational",
            CriticalVerdict::Unknown => "Unknown",
        }
    }
}

fn is_critical_zero(f: &Polynomial, p: &[Rational]) -> bool {
    p.iter().all(|x| !x.is_zero())
        && f.evaluate(p).is_zero()
        && f.partial_derivatives().iter().all(|d| d.evaluate(p).is_zero())
}

/// Decides whether `f_delta` has a common zero with all its partial derivatives
/// on `(R \ {0})^n`. `sign` is the face's sign verdict when already known.
pub fn face_critical_verdict(f_delta: &Polynomial, sign: Option<&SignVerdict>, budget: &Budget) -> CriticalVerdict {
    if f_delta.len() <= 1 {
        return CriticalVerdict::NoCriticalZeroFound { certified: true };
    }
    if let Some(v) = sign {
        if v.kind.strict_sign().is_some() && v.certificate.is_some() {
            return CriticalVerdict::NoCriticalZeroFound { certified: true };
        }
        for w in v.witnesses.iter().filter(|w| w.value.is_zero()) {
            if is_critical_zero(f_delta, &w.point) {
                return CriticalVerdict::DegeneratePoint(w.point.clone());
            }
        }
    }
    let n = f_delta.nvars();
    if line_reduction(f_delta).is_some() {
        for idx in 0..(1u64 << n) {
            let sigma = orthant_signs(idx, n);
            let g = orthant_substitute(f_delta, &sigma);
            let red = line_reduction(&g).expect("same support");
            if let Some(root) = multiple_positive_roots(&red.univariate_poly()).into_iter().next() {
                match root.exact {
                    Some(s) => {
                        let p = map_point(&sigma, &red.point_for(&s));
                        debug_assert!(is_critical_zero(f_delta, &p));
                        return CriticalVerdict::DegeneratePoint(p);
                    }
                    None => {
                        return CriticalVerdict::DegenerateIrrational {
                            orthant: sigma,
                            direction: red.direction.clone(),
                            lower: root.lower,
                            upper: root.upper,
                        }
                    }
                }
            }
        }
        return CriticalVerdict::NoCriticalZeroFound { certified: true };
    }
    let search = CriticalSearch::new(f_delta, budget);
    let mut converged = false;
    for idx in 0..(1u64 << n) {
        let sigma = orthant_signs(idx, n);
        for candidate in search.run(&sigma, idx) {
            converged = true;
            if let Some(p) = candidate.iter().find(|p| is_critical_zero(f_delta, p)) {
                return CriticalVerdict::DegeneratePoint(p.clone());
            }
        }
    }
    if converged {
        CriticalVerdict::Unknown
    } else {
        CriticalVerdict::NoCriticalZeroFound { certified: false }
    }
}

/// Per-face outcome of the nondegeneracy check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NondegeneracyReport {
    pub faces: Vec<(Face, CriticalVerdict)>,
}

impl NondegeneracyReport {
    pub fn any_degenerate(&self) -> bool {
        self.faces.iter().any(|(_, v)| v.is_degenerate())
    }

    /// Nondegenerate with proof for every face.
    pub fn certified_nondegenerate(&self) -> bool {
        self.faces
            .iter()
            .all(|(_, v)| *v == CriticalVerdict::NoCriticalZeroFound { certified: true })
    }
}

/// Runs [`face_critical_verdict`] on every face of `faces` flagged at infinity.
pub fn check_nondegeneracy(
    f: &Polynomial,
    polytope: &NewtonPolytope,
    faces: &[Face],
    budget: &Budget,
) -> Result<NondegeneracyReport> {
    let mut out = Vec::new();
    for (i, face) in faces.iter().enumerate().filter(|(_, fc)| fc.at_infinity()) {
        let fd = face_polynomial(f, polytope, face)?;
        let b = budget.child(streams::NONDEGEN, i as u64);
        out.push((face.clone(), face_critical_verdict(&fd, None, &b)));
    }
    Ok(NondegeneracyReport { faces: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::{annotated_faces, newton_polytope};
    use crate::polynomial::parse;
    use num_traits::Signed;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    fn pt(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn substitution_examples() {
        let f = parse("x1*x2 - 1", 2).unwrap();
        assert_eq!(orthant_substitute(&f, &[-1, 1]).to_text(), "-x1*x2 - 1");
        let g = parse("x1^2 + x2^2", 2).unwrap();
        assert_eq!(orthant_substitute(&g, &[-1, -1]), g);
        let h = parse("(x1 - x2)^2", 2).unwrap();
        assert_eq!(orthant_substitute(&h, &[-1, -1]), h);
    }

    #[test]
    fn positive_orthant_tiers() {
        let b = Budget::default();
        let v = sign_on_positive_orthant(&parse("x1^2 + x2^2", 2).unwrap(), &b).unwrap();
        assert_eq!(v.kind, SignKind::StrictlyPositive);
        assert_eq!(v.certificate, Some(Certificate::OrthantCoefficient { sign: 1 }));

        let sq = parse("(x1 - x2)^2", 2).unwrap();
        let v = sign_on_positive_orthant(&sq, &b).unwrap();
        assert_eq!(v.kind, SignKind::TakesZero);
        assert_eq!(v.witnesses[0].point, pt(&[1, 1]));
        match &v.certificate {
            Some(Certificate::UnivariateSturm {
                reduction,
                positive_roots,
                sign,
                ..
            }) => {
                assert_eq!(reduction.univariate, pt(&[1, -2, 1]));
                assert_eq!((*positive_roots, *sign), (1, 1));
            }
            other => panic!("unexpected certificate {other:?}"),
        }

        let hyp = parse("x1*x2 - 1", 2).unwrap();
        let v = sign_on_positive_orthant(&hyp, &b).unwrap();
        assert_eq!(v.kind, SignKind::TakesBothSigns);
        assert_eq!(v.witnesses[0].point, pt(&[1, 2]));
        assert_eq!(v.witnesses[0].value, rat(1));
        assert_eq!(v.witnesses[1].point, vec![rat(1), r(1, 2)]);
        assert_eq!(v.witnesses[1].value, r(-1, 2));
    }

    #[test]
    fn punctured_examples() {
        let b = Budget::default();
        let v = sign_on_punctured_space(&parse("x1^2 + x2^2", 2).unwrap(), &b).unwrap();
        assert_eq!(v.kind, SignKind::StrictlyPositive);
        assert!(matches!(v.certificate, Some(Certificate::Orthants(ref c)) if c.len() == 4));

        let v = sign_on_punctured_space(&parse("(x1 - x2)^2", 2).unwrap(), &b).unwrap();
        assert_eq!(v.kind, SignKind::TakesZero);
        assert_eq!(v.witnesses[0].point, pt(&[1, 1]));
        assert!(v.certificate.is_some());

        let v = sign_on_punctured_space(&parse("x1^3", 2).unwrap(), &b).unwrap();
        assert_eq!(v.kind, SignKind::TakesBothSigns);
        assert_eq!(v.witnesses[0].point, pt(&[1, 1]));
        assert_eq!(v.witnesses[1].point, pt(&[-1, 1]));
    }

    #[test]
    fn sampling_finds_mixed_signs() {
        // support not on a line and coefficients of mixed sign
        let f = parse("x1^2*x2 + x1*x2^2 - 3*x1*x2", 2).unwrap();
        let v = sign_on_positive_orthant(&f, &Budget::default()).unwrap();
        assert_eq!(v.kind, SignKind::TakesBothSigns);
        assert!(v.witnesses[0].value.is_positive() && v.witnesses[1].value.is_negative());
        for w in &v.witnesses {
            assert_eq!(f.evaluate(&w.point), w.value);
        }
    }

    #[test]
    fn motzkin_like_form_is_unknown_on_positive_orthant() {
        // x^4 y^2 + x^2 y^4 - 3 x^2 y^2 z^2 + z^6 is nonnegative with zeros at |x|=|y|=|z|
        let f = parse("x1^4*x2^2 + x1^2*x2^4 - 3*x1^2*x2^2*x3^2 + x3^6", 3).unwrap();
        let v = sign_on_positive_orthant(&f, &Budget::default()).unwrap();
        // the grid contains (1, 1, 1), an exact zero
        assert_eq!(v.kind, SignKind::TakesZero);
        assert!(v.zero_witness().is_some());
    }

    #[test]
    fn bezout_prefers_last_coordinate() {
        assert_eq!(bezout_inverse(&[1, 1]), Some(vec![0, 1]));
        assert_eq!(bezout_inverse(&[1, -1]), Some(vec![0, -1]));
        let e = bezout_inverse(&[2, 3]).unwrap();
        assert_eq!(2 * e[0] + 3 * e[1], 1);
        let e = bezout_inverse(&[6, 10, 15]).unwrap();
        assert_eq!(6 * e[0] + 10 * e[1] + 15 * e[2], 1);
    }

    #[test]
    fn nondegeneracy_examples() {
        let b = Budget::default();
        let sq = parse("(x1 - x2)^2", 2).unwrap();
        assert_eq!(
            face_critical_verdict(&sq, None, &b),
            CriticalVerdict::DegeneratePoint(pt(&[1, 1]))
        );
        let circle_edge = parse("x1^2 + x2^2", 2).unwrap();
        assert_eq!(
            face_critical_verdict(&circle_edge, None, &b),
            CriticalVerdict::NoCriticalZeroFound { certified: true }
        );
        let mono = parse("7*x1^3*x2", 2).unwrap();
        assert_eq!(
            face_critical_verdict(&mono, None, &b),
            CriticalVerdict::NoCriticalZeroFound { certified: true }
        );
        // (x1^2 - 2 x2^2)^2 has a critical zero only at irrational ratios
        let irr = parse("(x1^2 - 2*x2^2)^2", 2).unwrap();
        assert!(matches!(
            face_critical_verdict(&irr, None, &b),
            CriticalVerdict::DegenerateIrrational { .. }
        ));
    }

    #[test]
    fn nondegeneracy_over_faces() {
        let f = parse("x1^2 + x2^2 - 1", 2).unwrap();
        let p = newton_polytope(&f).unwrap();
        let faces = annotated_faces(&p).unwrap();
        let rep = check_nondegeneracy(&f, &p, &faces, &Budget::default()).unwrap();
        assert_eq!(rep.faces.len(), 3);
        assert!(rep.certified_nondegenerate());
    }

    #[test]
    fn critical_search_finds_two_dimensional_degeneracy() {
        // (x1 - x2)^2 + (x2 - x3)^2 is a 2-dimensional face polynomial with
        // critical zeros on the diagonal
        let f = parse("(x1 - x2)^2 + (x2 - x3)^2", 3).unwrap();
        let v = face_critical_verdict(&f, None, &Budget::default());
        match v {
            CriticalVerdict::DegeneratePoint(p) => assert!(is_critical_zero(&f, &p)),
            other => panic!("expected a degenerate point, got {other:?}"),
        }
    }
}
