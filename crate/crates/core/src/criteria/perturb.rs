//! Perturbations `f + g` with `supp g` inside the Newton polytope of `f`.

use alloc::vec::Vec;

use num_rational::BigRational as Rational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Geometry;
use crate::error::{Error, Result};
use crate::linalg::rat;
use crate::polynomial::{ExponentVector, Polynomial};
use crate::rng::{derive_seed, streams};

const STEPS: i64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PerturbationMode {
    /// Coefficients `epsilon * k / 10^4`, `|k| < 10^4`, on every lattice point.
    Random,
    /// `g = -epsilon x^alpha` for a single exponent in the polytope.
    Directed(ExponentVector),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbationSpec {
    pub epsilon: Rational,
    pub mode: PerturbationMode,
}

/// Seed of the random stream used by trial `trial`.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    derive_seed(seed, streams::PERTURB, trial)
}

/// The perturbing polynomial `g` for trial `trial`.
pub fn perturb(g: &Geometry, spec: &PerturbationSpec, seed: u64, trial: u64) -> Result<Polynomial> {
    if !spec.epsilon.is_positive() {
        return Err(Error::NonPositiveEpsilon);
    }
    let n = g.polynomial().nvars();
    match &spec.mode {
        PerturbationMode::Directed(alpha) => {
            if alpha.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: alpha.len(),
                });
            }
            if !g.polytope().contains(&alpha.to_i64()) {
                return Err(Error::MissingPrerequisite(
                    "directed exponent lies outside the Newton polytope".into(),
                ));
            }
            Polynomial::from_terms(n, [(alpha.clone(), -spec.epsilon.clone())])
        }
        PerturbationMode::Random => {
            let lattice = g.lattice_points()?;
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, trial));
            let scale = &spec.epsilon / rat(STEPS);
            let terms: Vec<(ExponentVector, Rational)> = lattice
                .iter()
                .map(|a| (a.clone(), &scale * rat(rng.gen_range(-(STEPS - 1)..=STEPS - 1))))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            let out = Polynomial::from_terms(n, terms)?;
            if !out.is_zero() && out.norm()? >= spec.epsilon {
                return Err(Error::InternalInconsistency("perturbation norm exceeds epsilon".into()));
            }
            if out.support().any(|a| !g.polytope().contains(&a.to_i64())) {
                return Err(Error::InternalInconsistency(
                    "perturbation support escapes the polytope".into(),
                ));
            }
            Ok(out)
        }
    }
}

/// `f + g` for trials `0..trials`.
pub fn perturbations(g: &Geometry, spec: &PerturbationSpec, trials: usize, seed: u64) -> Result<Vec<Polynomial>> {
    (0..trials as u64)
        .map(|t| perturb(g, spec, seed, t).map(|p| g.polynomial() + &p))
        .collect()
}
