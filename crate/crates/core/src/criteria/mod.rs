//! Compactness and stable compactness of the real zero set `Z(f)`.
//!
//! Everything is driven by the sign of the face polynomials `f_Delta` over the
//! faces of the Newton boundary at infinity, plus the support test
//! `f|_{R^J} != 0` over nonempty coordinate subspaces `R^J`:
//!
//! - refutation: a vanishing restriction, or exact points with
//!   `f_Delta(a) < 0 < f_Delta'(b)`, proves `Z(f)` is not compact;
//! - certification: every face polynomial strictly of one sign on
//!   `(R \ {0})^n`, with certificates, proves compactness and stable
//!   compactness;
//! - a face polynomial vanishing somewhere on `(R \ {0})^n` rules out stable
//!   compactness.
//!
//! Between these the answer is `Inconclusive`, with numeric evidence attached.

mod perturb;
mod probe;
mod sandwich;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational as Rational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::newton::{annotated_faces, face_polynomial, newton_polytope, Face, NewtonPolytope};
use crate::polynomial::{ExponentVector, Polynomial, SubspaceMask};
use crate::rng::{derive_seed, streams};
use crate::signcheck::{
    face_critical_verdict, sign_on_punctured_space, Budget, CriticalVerdict, SignKind, SignVerdict, Witness,
};

pub use perturb::{perturb, perturbations, trial_seed, PerturbationMode, PerturbationSpec};
pub use probe::{
    eventual_sign_probe, numeric_compactness_probe, ApproximatePoint, EventualSign, ProbeBudget, ProbeEvidence,
};
pub use sandwich::{epsilon_estimate, sandwich_check, EpsilonEstimate, SandwichEstimate, SandwichViolation};

/// A polynomial with its Newton polytope, annotated faces, the face
/// polynomials of the boundary at infinity and the lattice points of the
/// polytope.
#[derive(Clone, Debug)]
pub struct Geometry {
    f: Polynomial,
    polytope: NewtonPolytope,
    faces: Vec<Face>,
    boundary: Vec<usize>,
    face_polynomials: Vec<Polynomial>,
    lattice: core::result::Result<Vec<ExponentVector>, Error>,
}

impl Geometry {
    pub fn new(f: &Polynomial) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        let polytope = newton_polytope(f)?;
        let faces = annotated_faces(&polytope)?;
        let boundary: Vec<usize> = (0..faces.len()).filter(|&i| faces[i].at_infinity()).collect();
        let face_polynomials = boundary
            .iter()
            .map(|&i| face_polynomial(f, &polytope, &faces[i]))
            .collect::<Result<Vec<_>>>()?;
        let lattice = polytope.lattice_points();
        Ok(Self {
            f: f.clone(),
            polytope,
            faces,
            boundary,
            face_polynomials,
            lattice,
        })
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.f
    }

    pub fn polytope(&self) -> &NewtonPolytope {
        &self.polytope
    }

    /// All faces, ordered by dimension then vertex mask.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Indices into [`Geometry::faces`] of the faces at infinity.
    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    /// `(index into faces, face, f_Delta)` for each face at infinity.
    pub fn boundary_faces(&self) -> impl Iterator<Item = (usize, &Face, &Polynomial)> {
        self.boundary
            .iter()
            .zip(&self.face_polynomials)
            .map(|(&i, p)| (i, &self.faces[i], p))
    }

    pub fn lattice_points(&self) -> Result<&[ExponentVector]> {
        self.lattice.as_deref().map_err(Clone::clone)
    }
}

/// `(J, f|_{R^J} != 0)` for every nonempty `J`.
pub fn condition_i(f: &Polynomial) -> Vec<(SubspaceMask, bool)> {
    SubspaceMask::nonempty_subsets(f.nvars())
        .map(|j| (j, f.support().any(|a| a.lies_in(j))))
        .collect()
}

/// Sign verdict of the `k`-th face at infinity, with a seed derived from the
/// face index so that faces can be processed in any order.
pub fn face_sign_verdict(geometry: &Geometry, k: usize, budget: &Budget) -> Result<SignVerdict> {
    let index = geometry.boundary[k];
    sign_on_punctured_space(
        &geometry.face_polynomials[k],
        &budget.child(streams::FACE, index as u64),
    )
}

pub fn face_sign_verdicts(geometry: &Geometry, budget: &Budget) -> Result<Vec<SignVerdict>> {
    (0..geometry.boundary.len())
        .map(|k| face_sign_verdict(geometry, k, budget))
        .collect()
}

/// Exact evidence that `Z(f)` is not compact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotCompactWitness {
    /// `f` vanishes on `R^J`, so the axis ray `t e_axis` lies in `Z(f)`.
    VanishingSubspace { subspace: SubspaceMask, axis: usize },
    /// Face polynomials of opposite signs at exact points.
    OppositeFaceValues {
        negative_face: usize,
        negative: Witness,
        positive_face: usize,
        positive: Witness,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NecessaryStatus {
    ConsistentWithCompact,
    ViolatedNotCompact(NotCompactWitness),
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SufficientStatus {
    CompactCertified(i8),
    NotApplicable,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Overall {
    CompactCertified,
    NotCompactCertified,
    Inconclusive,
}

impl Overall {
    pub fn as_str(self) -> &'static str {
        match self {
            Overall::CompactCertified => "CompactCertified",
            Overall::NotCompactCertified => "NotCompactCertified",
            Overall::Inconclusive => "Inconclusive",
        }
    }
}

fn check_nonconstant(g: &Geometry, verdicts: &[SignVerdict]) -> Result<()> {
    if verdicts.len() != g.boundary.len() {
        return Err(Error::DimensionMismatch {
            expected: g.boundary.len(),
            found: verdicts.len(),
        });
    }
    Ok(())
}

fn vanishing_subspace(f: &Polynomial) -> Option<NotCompactWitness> {
    condition_i(f)
        .into_iter()
        .find(|(_, holds)| !holds)
        .map(|(j, _)| NotCompactWitness::VanishingSubspace {
            subspace: j,
            axis: j.indices().next().expect("nonempty"),
        })
}

/// An exact point where the face polynomial has sign `s`, if the verdict
/// provides one.
fn point_with_sign(face_poly: &Polynomial, v: &SignVerdict, s: i8) -> Option<Witness> {
    if let Some(w) = v.witness_with_sign(s) {
        return Some(w.clone());
    }
    if v.kind.strict_sign() == Some(s) {
        let point = vec![Rational::one(); face_poly.nvars()];
        let value = face_poly.evaluate(&point);
        return Some(Witness { point, value });
    }
    None
}

/// Tests the necessary conditions for compactness: the support condition over
/// nonempty `J` and the sign pattern of the face polynomials at infinity.
pub fn necessary_conditions(g: &Geometry, verdicts: &[SignVerdict]) -> Result<NecessaryStatus> {
    check_nonconstant(g, verdicts)?;
    if let Some(w) = vanishing_subspace(&g.f) {
        return Ok(NecessaryStatus::ViolatedNotCompact(w));
    }
    // Prefer a pair on one face, largest face first.
    let same_face = verdicts
        .iter()
        .zip(&g.face_polynomials)
        .enumerate()
        .rev()
        .find_map(|(k, (v, p))| Some((g.boundary[k], point_with_sign(p, v, -1)?, point_with_sign(p, v, 1)?)));
    if let Some((face, neg, pos)) = same_face {
        return Ok(NecessaryStatus::ViolatedNotCompact(
            NotCompactWitness::OppositeFaceValues {
                negative_face: face,
                negative: neg,
                positive_face: face,
                positive: pos,
            },
        ));
    }
    let find = |s: i8| {
        verdicts
            .iter()
            .zip(&g.face_polynomials)
            .enumerate()
            .find_map(|(k, (v, p))| point_with_sign(p, v, s).map(|w| (g.boundary[k], w)))
    };
    if let (Some((nf, neg)), Some((pf, pos))) = (find(-1), find(1)) {
        return Ok(NecessaryStatus::ViolatedNotCompact(
            NotCompactWitness::OppositeFaceValues {
                negative_face: nf,
                negative: neg,
                positive_face: pf,
                positive: pos,
            },
        ));
    }
    if verdicts.iter().all(SignVerdict::is_decided) {
        Ok(NecessaryStatus::ConsistentWithCompact)
    } else {
        Ok(NecessaryStatus::Inconclusive)
    }
}

fn uniform_strict_sign(verdicts: &[SignVerdict]) -> Option<i8> {
    let s = verdicts.first()?.kind.strict_sign()?;
    verdicts
        .iter()
        .all(|v| v.kind.strict_sign() == Some(s) && v.certificate.is_some())
        .then_some(s)
}

/// Tests the sufficient condition: the support condition holds and all face
/// polynomials at infinity are certified strictly of one common sign.
pub fn sufficient_conditions(g: &Geometry, verdicts: &[SignVerdict]) -> Result<SufficientStatus> {
    check_nonconstant(g, verdicts)?;
    if vanishing_subspace(&g.f).is_some() {
        return Ok(SufficientStatus::NotApplicable);
    }
    if let Some(s) = uniform_strict_sign(verdicts) {
        return Ok(SufficientStatus::CompactCertified(s));
    }
    let blocked = verdicts
        .iter()
        .any(|v| matches!(v.kind, SignKind::TakesZero | SignKind::TakesBothSigns));
    let strict_signs: Vec<i8> = verdicts.iter().filter_map(|v| v.kind.strict_sign()).collect();
    let mixed = strict_signs.windows(2).any(|w| w[0] != w[1]);
    if blocked || mixed {
        Ok(SufficientStatus::NotApplicable)
    } else {
        Ok(SufficientStatus::Inconclusive)
    }
}

/// Exact evidence against stable compactness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilityWitness {
    VanishingSubspace {
        subspace: SubspaceMask,
        axis: usize,
    },
    /// A face at infinity whose polynomial is not strictly signed on
    /// `(R \ {0})^n`; `witness` is a zero (or a point of each sign) when one is
    /// rational.
    Face {
        face: usize,
        kind: SignKind,
        witnesses: Vec<Witness>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilityVerdict {
    StablyCompactCertified(i8),
    NotStablyCompact(StabilityWitness),
    /// One variable: `Z(f)` is finite for every small perturbation.
    UnivariateFinite,
    Inconclusive,
}

impl StabilityVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            StabilityVerdict::StablyCompactCertified(_) => "StablyCompactCertified",
            StabilityVerdict::NotStablyCompact(_) => "NotStablyCompact",
            StabilityVerdict::UnivariateFinite => "UnivariateFinite",
            StabilityVerdict::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityReport {
    /// `(face index, f_Delta != 0 on (R \ {0})^n)`; `None` when undecided.
    pub condition_ii: Vec<(usize, Option<bool>)>,
    /// Common strict sign of the face polynomials when decided.
    pub common_sign: Option<i8>,
    pub epsilon_estimate: Option<EpsilonEstimate>,
    pub sandwich: Option<SandwichEstimate>,
    pub nondegeneracy: Vec<(usize, CriticalVerdict)>,
    pub verdict: StabilityVerdict,
}

/// Decides stable compactness from the face verdicts. Strict verdicts of both
/// signs can only occur next to a face that vanishes somewhere; when every
/// face is certified strict, a mix is reported as an internal inconsistency.
pub fn stable_compactness(g: &Geometry, verdicts: &[SignVerdict]) -> Result<StabilityReport> {
    check_nonconstant(g, verdicts)?;
    let condition_ii: Vec<(usize, Option<bool>)> = verdicts
        .iter()
        .zip(&g.boundary)
        .map(|(v, &i)| {
            let nonvanishing = match v.kind {
                SignKind::StrictlyPositive | SignKind::StrictlyNegative => Some(true),
                SignKind::TakesZero | SignKind::TakesBothSigns => Some(false),
                SignKind::Unknown => None,
            };
            (i, nonvanishing)
        })
        .collect();
    let report = |verdict, direction| StabilityReport {
        condition_ii: condition_ii.clone(),
        common_sign: direction,
        epsilon_estimate: None,
        sandwich: None,
        nondegeneracy: Vec::new(),
        verdict,
    };
    if let Some(NotCompactWitness::VanishingSubspace { subspace, axis }) = vanishing_subspace(&g.f) {
        return Ok(report(
            StabilityVerdict::NotStablyCompact(StabilityWitness::VanishingSubspace { subspace, axis }),
            None,
        ));
    }
    let face_witness = |kind: SignKind| {
        verdicts
            .iter()
            .zip(&g.boundary)
            .find(|(v, _)| v.kind == kind)
            .map(|(v, &i)| StabilityWitness::Face {
                face: i,
                kind,
                witnesses: match kind {
                    SignKind::TakesZero => v.zero_witness().cloned().into_iter().collect(),
                    _ => v
                        .witnesses
                        .iter()
                        .filter(|w| !w.value.is_zero())
                        .take(2)
                        .cloned()
                        .collect(),
                },
            })
    };
    if let Some(w) = face_witness(SignKind::TakesZero).or_else(|| face_witness(SignKind::TakesBothSigns)) {
        return Ok(report(StabilityVerdict::NotStablyCompact(w), None));
    }
    let strict_signs: Vec<i8> = verdicts.iter().filter_map(|v| v.kind.strict_sign()).collect();
    if strict_signs.len() == verdicts.len() && strict_signs.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::InternalInconsistency(
            "face polynomials at infinity are certified strictly positive and strictly negative".into(),
        ));
    }
    match uniform_strict_sign(verdicts) {
        Some(s) => Ok(report(StabilityVerdict::StablyCompactCertified(s), Some(s))),
        None => Ok(report(StabilityVerdict::Inconclusive, None)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSign {
    pub face: usize,
    pub polynomial: Polynomial,
    pub verdict: SignVerdict,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompactnessReport {
    pub condition_i: Vec<(SubspaceMask, bool)>,
    /// `f(0)`, the restriction to `J = {}`; informational only.
    pub empty_subspace_value: Rational,
    pub face_signs: Vec<FaceSign>,
    pub necessary_status: NecessaryStatus,
    pub sufficient_status: SufficientStatus,
    pub overall: Overall,
    pub probe_evidence: Option<ProbeEvidence>,
    pub eventual_sign: Option<EventualSign>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalyzeOptions {
    pub seed: u64,
    pub budget: Budget,
    pub radii: Vec<f64>,
    pub probe: ProbeBudget,
    pub sandwich_radius: f64,
    pub sandwich_samples: usize,
    pub eventual_samples: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            budget: Budget::default(),
            radii: vec![10.0, 100.0],
            probe: ProbeBudget::default(),
            sandwich_radius: 10.0,
            sandwich_samples: 10_000,
            eventual_samples: 2000,
        }
    }
}

impl AnalyzeOptions {
    /// Budget for the face sign checks, seeded from `seed`.
    pub fn face_budget(&self) -> Budget {
        self.budget.with_seed(self.seed)
    }

    pub fn sandwich_seed(&self) -> u64 {
        derive_seed(self.seed, streams::SANDWICH, 0)
    }

    pub fn probe_seed(&self) -> u64 {
        derive_seed(self.seed, streams::PROBE, 0)
    }

    pub fn eventual_seed(&self) -> u64 {
        derive_seed(self.seed, streams::EVENTUAL, 0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Analysis {
    pub nvars: usize,
    pub compactness: CompactnessReport,
    pub stability: StabilityReport,
    /// Internal consistency problems; empty for a sound run.
    pub inconsistencies: Vec<String>,
}

/// Compactness verdict alone: geometry, face signs and the two criteria, without
/// the sandwich, probes or non-degeneracy checks.
pub fn overall_verdict(f: &Polynomial, budget: &Budget) -> Result<Overall> {
    if f.nvars() == 1 && !f.is_constant() {
        return Ok(Overall::CompactCertified);
    }
    let g = Geometry::new(f)?;
    let verdicts = face_sign_verdicts(&g, budget)?;
    let certified = matches!(
        sufficient_conditions(&g, &verdicts)?,
        SufficientStatus::CompactCertified(_)
    );
    let refuted = matches!(
        necessary_conditions(&g, &verdicts)?,
        NecessaryStatus::ViolatedNotCompact(_)
    );
    Ok(match (certified, refuted) {
        (true, false) => Overall::CompactCertified,
        (false, true) => Overall::NotCompactCertified,
        _ => Overall::Inconclusive,
    })
}

/// Full analysis with face sign verdicts computed sequentially.
pub fn analyze(f: &Polynomial, options: &AnalyzeOptions) -> Result<Analysis> {
    if f.nvars() == 1 && !f.is_constant() {
        return Ok(univariate_analysis(f, options));
    }
    let g = Geometry::new(f)?;
    let verdicts = face_sign_verdicts(&g, &options.face_budget())?;
    analyze_with_verdicts(&g, verdicts, options)
}

fn univariate_analysis(f: &Polynomial, options: &AnalyzeOptions) -> Analysis {
    let probe = numeric_compactness_probe(f, &options.radii, &options.probe, options.probe_seed());
    Analysis {
        nvars: 1,
        compactness: CompactnessReport {
            condition_i: condition_i(f),
            empty_subspace_value: f.constant_term(),
            face_signs: Vec::new(),
            necessary_status: NecessaryStatus::ConsistentWithCompact,
            sufficient_status: SufficientStatus::NotApplicable,
            overall: Overall::CompactCertified,
            probe_evidence: Some(probe),
            eventual_sign: None,
        },
        stability: StabilityReport {
            condition_ii: Vec::new(),
            common_sign: None,
            epsilon_estimate: None,
            sandwich: None,
            nondegeneracy: Vec::new(),
            verdict: StabilityVerdict::UnivariateFinite,
        },
        inconsistencies: Vec::new(),
    }
}

/// Full analysis from precomputed face verdicts (one per face at infinity, in
/// [`Geometry::boundary`] order).
pub fn analyze_with_verdicts(g: &Geometry, verdicts: Vec<SignVerdict>, options: &AnalyzeOptions) -> Result<Analysis> {
    let f = &g.f;
    let mut inconsistencies = Vec::new();
    let necessary = necessary_conditions(g, &verdicts)?;
    let sufficient = sufficient_conditions(g, &verdicts)?;
    let mut stability = match stable_compactness(g, &verdicts) {
        Ok(r) => r,
        Err(Error::InternalInconsistency(msg)) => {
            inconsistencies.push(msg);
            StabilityReport {
                condition_ii: Vec::new(),
                common_sign: None,
                epsilon_estimate: None,
                sandwich: None,
                nondegeneracy: Vec::new(),
                verdict: StabilityVerdict::Inconclusive,
            }
        }
        Err(e) => return Err(e),
    };

    let certified = matches!(sufficient, SufficientStatus::CompactCertified(_));
    let refuted = matches!(necessary, NecessaryStatus::ViolatedNotCompact(_));
    let mut overall = match (certified, refuted) {
        (true, false) => Overall::CompactCertified,
        (false, true) => Overall::NotCompactCertified,
        (false, false) => Overall::Inconclusive,
        (true, true) => {
            inconsistencies.push("compactness both certified and refuted".into());
            Overall::Inconclusive
        }
    };

    let budget = options.face_budget();
    stability.nondegeneracy = g
        .boundary_faces()
        .zip(&verdicts)
        .map(|((i, _, p), v)| {
            (
                i,
                face_critical_verdict(p, Some(v), &budget.child(streams::NONDEGEN, i as u64)),
            )
        })
        .collect();

    if let StabilityVerdict::StablyCompactCertified(s) = stability.verdict {
        if sufficient != SufficientStatus::CompactCertified(s) {
            inconsistencies.push("stably compact without the sufficient condition".into());
            overall = Overall::Inconclusive;
        }
        if stability.nondegeneracy.iter().any(|(_, v)| v.is_degenerate()) {
            inconsistencies.push("strictly signed face has a critical zero".into());
        }
        match sandwich_check(
            g,
            s,
            options.sandwich_radius,
            options.sandwich_samples,
            options.sandwich_seed(),
        ) {
            Ok(est) => {
                if !est.violations.is_empty() {
                    inconsistencies.push(format!(
                        "{} sandwich violations beyond radius {} for a stably compact polynomial",
                        est.violations.len(),
                        options.sandwich_radius
                    ));
                }
                stability.epsilon_estimate = epsilon_estimate(g, &stability, &est).ok();
                stability.sandwich = Some(est);
            }
            Err(Error::TooLarge(_)) => {}
            Err(e) => return Err(e),
        }
    }

    let mut eventual = None;
    if let Some(s) = uniform_strict_sign(&verdicts) {
        let expected = if s > 0 {
            EventualSign::NonnegBeyond
        } else {
            EventualSign::NonposBeyond
        };
        let radii = options.radii.clone();
        let seed = options.eventual_seed();
        let ev = eventual_sign_probe(f, &radii, options.eventual_samples, seed);
        if !ev.same_kind(&expected) {
            let top = radii.iter().cloned().fold(1.0f64, f64::max);
            let persists = [10.0, 100.0]
                .iter()
                .all(|m| !eventual_sign_probe(f, &[top * m], options.eventual_samples, seed).same_kind(&expected));
            if persists {
                inconsistencies.push("eventual sign disagrees with the common strict sign of the faces".into());
            }
        }
        eventual = Some(ev);
    }

    let probe = numeric_compactness_probe(f, &options.radii, &options.probe, options.probe_seed());
    let face_signs = verdicts
        .into_iter()
        .zip(g.boundary_faces())
        .map(|(verdict, (face, _, p))| FaceSign {
            face,
            polynomial: p.clone(),
            verdict,
        })
        .collect();
    Ok(Analysis {
        nvars: f.nvars(),
        compactness: CompactnessReport {
            condition_i: condition_i(f),
            empty_subspace_value: f.constant_term(),
            face_signs,
            necessary_status: necessary,
            sufficient_status: sufficient,
            overall,
            probe_evidence: Some(probe),
            eventual_sign: eventual,
        },
        stability,
        inconsistencies,
    })
}
