//! Dense univariate polynomials over the rationals, Sturm sequences and exact
//! analysis of the roots on the open half-line `(0, +inf)`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational as Rational;
use num_traits::{One, Signed, Zero};

use crate::linalg::{primitive_integer, rat, simplest_in_open};

/// `sum coeffs[k] s^k`, with no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn evaluate(&self, s: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * s + c)
    }

    pub fn sign_at(&self, s: &Rational) -> i8 {
        sign(&self.evaluate(s))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1;
            let factor = &rem[k] / &lead;
            if !factor.is_zero() {
                for (i, c) in d.coeffs.iter().enumerate() {
                    rem[k - dd + i] -= &factor * c;
                }
                quot[k - dd] = factor;
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let l = l.clone();
                Self::new(self.coeffs.iter().map(|c| c / &l).collect())
            }
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors (up to a constant).
    pub fn square_free_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Drops the factor `s^k` with `k` the order of vanishing at zero.
    pub fn without_zero_roots(&self) -> Self {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        Self::new(self.coeffs[k..].to_vec())
    }

    fn integer_leading(&self) -> BigInt {
        let ints = primitive_integer(&self.coeffs);
        ints.last().cloned().unwrap_or_else(BigInt::one).abs()
    }
}

pub(crate) fn sign(x: &Rational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Sturm chain `p, p', -rem(p, p'), ...` of a nonzero polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<UniPoly>,
}

impl SturmSequence {
    pub fn new(p: &UniPoly) -> Self {
        let mut chain = vec![p.clone()];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(d);
            loop {
                let k = chain.len();
                let (_, r) = chain[k - 2].div_rem(&chain[k - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(UniPoly::new(r.coeffs.iter().map(|c| -c).collect()));
            }
        }
        Self { chain }
    }

    fn count_variations<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::count_variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_infinity(&self) -> usize {
        Self::count_variations(self.chain.iter().map(|p| p.leading().map_or(0, sign)))
    }

    /// Distinct real roots in `(a, b]` for `a < b`, `p(a) != 0`.
    pub fn count_in(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }
}

/// A positive root known to lie in `(lower, upper)`, or exactly at `exact`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub lower: Rational,
    pub upper: Rational,
    pub exact: Option<Rational>,
}

impl IsolatedRoot {
    fn left(&self) -> &Rational {
        self.exact.as_ref().unwrap_or(&self.lower)
    }

    fn right(&self) -> &Rational {
        self.exact.as_ref().unwrap_or(&self.upper)
    }
}

/// Sign pattern of a polynomial on `(0, +inf)`: its distinct positive roots in
/// increasing order and one rational sample with its sign in each gap between
/// them (`gaps.len() == roots.len() + 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveRootAnalysis {
    pub roots: Vec<IsolatedRoot>,
    pub gaps: Vec<(Rational, i8)>,
}

impl PositiveRootAnalysis {
    /// Sign on the whole half-line when there are no positive roots.
    pub fn strict_sign(&self) -> Option<i8> {
        if self.roots.is_empty() {
            self.gaps.first().map(|g| g.1)
        } else {
            None
        }
    }

    pub fn changes_sign(&self) -> bool {
        self.gaps.windows(2).any(|w| w[0].1 != w[1].1)
    }

    /// Common sign away from the roots when the polynomial never changes sign.
    pub fn off_root_sign(&self) -> Option<i8> {
        if self.changes_sign() {
            None
        } else {
            self.gaps.first().map(|g| g.1)
        }
    }

    pub fn first_exact_root(&self) -> Option<&Rational> {
        self.roots.iter().find_map(|r| r.exact.as_ref())
    }
}

/// Cauchy bound: every root has absolute value below the returned value.
fn cauchy_bound(p: &UniPoly) -> Rational {
    let lead = p.leading().expect("nonzero").abs();
    let max = p.coeffs[..p.coeffs.len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    Rational::one() + max
}

/// Exact description of the positive roots and sign pattern of `u`, which must
/// be nonzero.
pub fn analyze_positive_roots(u: &UniPoly) -> PositiveRootAnalysis {
    assert!(!u.is_zero(), "zero polynomial has no sign pattern");
    let core = u.without_zero_roots();
    let sf = core.square_free_part();
    let mut roots = Vec::new();
    if sf.degree().unwrap_or(0) > 0 {
        let sturm = SturmSequence::new(&sf);
        let zero = Rational::zero();
        let v0 = sturm.variations_at(&zero);
        let below = |x: &Rational| v0 - sturm.variations_at(x).min(v0);
        let bound = cauchy_bound(&sf);
        let total = below(&bound);
        let mut work = vec![(zero.clone(), bound, 0usize, total)];
        let mut isolated = Vec::new();
        while let Some((lo, hi, clo, chi)) = work.pop() {
            match chi - clo {
                0 => {}
                1 => isolated.push((lo, hi, clo)),
                _ => {
                    let mid = (&lo + &hi) / rat(2);
                    let cm = below(&mid);
                    work.push((lo, mid.clone(), clo, cm));
                    work.push((mid, hi, cm, chi));
                }
            }
        }
        isolated.sort_by(|a, b| a.0.cmp(&b.0));
        let lead = sf.integer_leading();
        let threshold = Rational::new(BigInt::one(), BigInt::from(2) * &lead * &lead);
        for (mut lo, mut hi, clo) in isolated {
            if sf.evaluate(&hi).is_zero() {
                roots.push(IsolatedRoot {
                    lower: hi.clone(),
                    upper: hi.clone(),
                    exact: Some(hi),
                });
                continue;
            }
            let mut exact = None;
            while &hi - &lo >= threshold {
                let mid = (&lo + &hi) / rat(2);
                if sf.evaluate(&mid).is_zero() {
                    exact = Some(mid);
                    break;
                }
                if below(&mid) - clo == 1 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            if exact.is_none() {
                let candidate = simplest_in_open(&lo, Some(&hi));
                if sf.evaluate(&candidate).is_zero() {
                    exact = Some(candidate);
                }
            }
            match exact {
                Some(r) => roots.push(IsolatedRoot {
                    lower: r.clone(),
                    upper: r.clone(),
                    exact: Some(r),
                }),
                None => roots.push(IsolatedRoot {
                    lower: lo,
                    upper: hi,
                    exact: None,
                }),
            }
        }
        separate(&sf, &sturm, &mut roots);
    }
    let mut gaps = Vec::with_capacity(roots.len() + 1);
    let mut left = Rational::zero();
    for r in &roots {
        let point = simplest_in_open(&left, Some(r.left()));
        gaps.push((point.clone(), u.sign_at(&point)));
        left = r.right().clone();
    }
    let point = simplest_in_open(&left, None);
    gaps.push((point.clone(), u.sign_at(&point)));
    PositiveRootAnalysis { roots, gaps }
}

/// Shrinks irrational isolating intervals until consecutive roots are separated
/// by a nonempty open gap.
fn separate(sf: &UniPoly, sturm: &SturmSequence, roots: &mut [IsolatedRoot]) {
    fn halve(sf: &UniPoly, sturm: &SturmSequence, r: &mut IsolatedRoot) {
        let mid = (&r.lower + &r.upper) / rat(2);
        debug_assert!(!sf.evaluate(&mid).is_zero());
        if sturm.count_in(&r.lower, &mid) == 1 && !sf.evaluate(&r.lower).is_zero() {
            r.upper = mid;
        } else if sturm.count_in(&mid, &r.upper) == 1 {
            r.lower = mid;
        } else {
            r.upper = mid;
        }
    }
    for i in 1..roots.len() {
        while roots[i].left() <= roots[i - 1].right() {
            if roots[i - 1].exact.is_none() {
                halve(sf, sturm, &mut roots[i - 1]);
            }
            if roots[i].exact.is_none() && roots[i].left() <= roots[i - 1].right() {
                halve(sf, sturm, &mut roots[i]);
            }
        }
    }
}

/// Positive roots of `gcd(u, u')`, i.e. the positive roots of `u` of
/// multiplicity at least two.
pub fn multiple_positive_roots(u: &UniPoly) -> Vec<IsolatedRoot> {
    let g = u.gcd(&u.derivative());
    if g.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    analyze_positive_roots(&g).roots
}
