//! Independent checker for sign verdicts.
//!
//! Nothing here calls the prover: evaluation, the orthant substitution, the
//! line decomposition, polynomial gcd and positive-root counting (Descartes'
//! rule with Vincent-Collins-Akritas subdivision) are implemented separately.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use num_rational::BigRational as Rational;
use num_traits::{One, Signed, Zero};

use super::{Certificate, SignKind, SignVerdict};
use crate::polynomial::Polynomial;

type Dense = Vec<Rational>;

/// What a positive-orthant certificate proves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Claim {
    Strict(i8),
    /// Semidefinite of this sign with at least one zero.
    TouchesZero(i8),
}

fn sgn(x: &Rational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn eval_at(f: &Polynomial, p: &[Rational]) -> Rational {
    let mut total = Rational::zero();
    for (alpha, c) in f.terms() {
        let mut m = c.clone();
        for (x, &e) in p.iter().zip(alpha.as_slice()) {
            for _ in 0..e {
                m *= x;
            }
        }
        total += m;
    }
    total
}

/// Terms of `f(sigma y)` as `(exponent, coefficient)` pairs.
fn flip(f: &Polynomial, index: usize) -> Vec<(Vec<u32>, Rational)> {
    f.terms()
        .map(|(alpha, c)| {
            let mut c = c.clone();
            for (j, &e) in alpha.as_slice().iter().enumerate() {
                if index >> j & 1 == 1 && e & 1 == 1 {
                    c = -c;
                }
            }
            (alpha.as_slice().to_vec(), c)
        })
        .collect()
}

fn trim(mut p: Dense) -> Dense {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn remainder(a: &Dense, b: &Dense) -> Dense {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db {
        let k = r.len() - 1;
        let q = &r[k] / &lead;
        for i in 0..=db {
            let t = &q * &b[i];
            r[k - db + i] -= t;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn quotient(a: &Dense, b: &Dense) -> Dense {
    let mut r = a.clone();
    let db = b.len() - 1;
    let mut q = vec![Rational::zero(); a.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let k = r.len() - 1;
        let c = &r[k] / &b[db];
        for i in 0..=db {
            let t = &c * &b[i];
            r[k - db + i] -= t;
        }
        q[k - db] = c;
        r.pop();
        r = trim(r);
    }
    trim(q)
}

fn gcd(a: &Dense, b: &Dense) -> Dense {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = remainder(&x, &y);
        x = y;
        y = r;
    }
    x
}

fn derivative(p: &Dense) -> Dense {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(k.into()))
            .collect(),
    )
}

fn variations(p: &Dense) -> usize {
    let signs: Vec<i8> = p.iter().map(sgn).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `p(x + 1)` by repeated synthetic division.
fn shift_by_one(p: &Dense) -> Dense {
    let mut c = p.clone();
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = c[j + 1].clone();
            c[j] += t;
        }
    }
    c
}

/// Distinct roots in `(0, +inf)` of a square-free polynomial.
fn count_positive(p: &Dense) -> usize {
    let mut p = p.clone();
    while p.first().is_some_and(|c| c.is_zero()) {
        p.remove(0);
    }
    match variations(&p) {
        0 => 0,
        1 => 1,
        _ => {
            let at_one = p.iter().fold(Rational::zero(), |a, c| a + c);
            let above = count_positive(&shift_by_one(&p));
            let mut rev = p.clone();
            rev.reverse();
            let below = count_positive(&shift_by_one(&rev));
            above + below + usize::from(at_one.is_zero())
        }
    }
}

fn square_free(p: &Dense) -> Dense {
    let d = derivative(p);
    if d.is_empty() {
        return p.clone();
    }
    quotient(p, &gcd(p, &d))
}

/// Product of the factors of odd multiplicity (Yun's decomposition).
fn odd_part(p: &Dense) -> Dense {
    let mut out: Dense = vec![Rational::one()];
    let mut a = p.clone();
    let mut k = 1;
    while a.len() > 1 {
        let g = gcd(&a, &derivative(&a));
        let sf = quotient(&a, &g);
        // factors of multiplicity exactly k
        let next_sf = {
            let g2 = gcd(&g, &derivative(&g));
            if g.len() > 1 {
                quotient(&g, &g2)
            } else {
                vec![Rational::one()]
            }
        };
        let exact = quotient(&sf, &gcd(&sf, &next_sf));
        if k % 2 == 1 {
            out = multiply(&out, &exact);
        }
        a = g;
        k += 1;
    }
    out
}

fn multiply(a: &Dense, b: &Dense) -> Dense {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn check_orthant(terms: &[(Vec<u32>, Rational)], cert: &Certificate) -> Result<Claim, String> {
    match cert {
        Certificate::MonomialFace { sign } => {
            if terms.len() != 1 || sgn(&terms[0].1) != *sign {
                return Err("monomial certificate does not match a single term".into());
            }
            Ok(Claim::Strict(*sign))
        }
        Certificate::OrthantCoefficient { sign } => {
            if terms.is_empty() || terms.iter().any(|(_, c)| sgn(c) != *sign) {
                return Err(format!("not all coefficients have sign {sign}"));
            }
            Ok(Claim::Strict(*sign))
        }
        Certificate::UnivariateSturm {
            reduction,
            positive_roots,
            sign,
            ..
        } => {
            let w = &reduction.direction;
            if w.iter().all(|&x| x == 0) {
                return Err("zero line direction".into());
            }
            let e_dot_w: i64 = reduction.inverse.iter().zip(w).map(|(a, b)| a * b).sum();
            if e_dot_w != 1 {
                return Err("inverse exponent does not pair to 1 with the direction".into());
            }
            let u = &reduction.univariate;
            let mut seen = 0usize;
            for (alpha, c) in terms {
                let diff: Vec<i64> = alpha.iter().zip(&reduction.base).map(|(&a, &b)| a as i64 - b).collect();
                let j = w.iter().position(|&x| x != 0).expect("nonzero");
                if diff[j] % w[j] != 0 {
                    return Err("term off the reduction line".into());
                }
                let k = diff[j] / w[j];
                if k < 0 || diff.iter().zip(w).any(|(d, x)| *d != k * x) {
                    return Err("term off the reduction line".into());
                }
                if u.get(k as usize) != Some(c) {
                    return Err("univariate coefficient mismatch".into());
                }
                seen += 1;
            }
            if seen != u.iter().filter(|c| !c.is_zero()).count() {
                return Err("univariate polynomial has extra terms".into());
            }
            let u = trim(u.clone());
            let roots = count_positive(&square_free(&u));
            if roots != *positive_roots {
                return Err(format!(
                    "counted {roots} positive roots, certificate says {positive_roots}"
                ));
            }
            let lead = sgn(u.last().expect("nonzero"));
            if lead != *sign {
                return Err("sign at infinity differs from the certified sign".into());
            }
            if roots == 0 {
                Ok(Claim::Strict(*sign))
            } else if count_positive(&square_free(&odd_part(&u))) == 0 {
                Ok(Claim::TouchesZero(*sign))
            } else {
                Err("univariate factor changes sign on (0, inf)".into())
            }
        }
        Certificate::Orthants(_) => Err("nested orthant certificate".into()),
    }
}

/// Rechecks every witness value and, when present, the certificate, against
/// the claimed kind. `punctured` selects the domain: `(R \ {0})^n` or the open
/// positive orthant.
pub fn verify_verdict(f: &Polynomial, v: &SignVerdict, punctured: bool) -> Result<(), String> {
    for w in &v.witnesses {
        if w.point.len() != f.nvars() || w.point.iter().any(|x| x.is_zero()) {
            return Err("witness has a zero coordinate".into());
        }
        if !punctured && w.point.iter().any(|x| x.is_negative()) {
            return Err("witness outside the positive orthant".into());
        }
        if eval_at(f, &w.point) != w.value {
            return Err("witness value does not re-evaluate".into());
        }
    }
    let sign_of = |s: i8| v.witnesses.iter().any(|w| sgn(&w.value) == s);
    match v.kind {
        SignKind::TakesBothSigns => {
            if !(sign_of(1) && sign_of(-1)) {
                return Err("mixed-sign verdict lacks witnesses of both signs".into());
            }
        }
        SignKind::TakesZero if !sign_of(0) && v.certificate.is_none() => {
            return Err("zero verdict has neither a zero witness nor a certificate".into());
        }
        _ => {}
    }
    let Some(cert) = &v.certificate else {
        return match v.kind {
            SignKind::StrictlyPositive | SignKind::StrictlyNegative => Err("strict verdict without certificate".into()),
            _ => Ok(()),
        };
    };
    let claims: Vec<Claim> = match (cert, punctured) {
        (Certificate::Orthants(per), true) => {
            let n = f.nvars();
            if per.len() != 1 << n {
                return Err("wrong number of orthant certificates".into());
            }
            per.iter()
                .enumerate()
                .map(|(i, c)| check_orthant(&flip(f, i), c))
                .collect::<Result<_, _>>()?
        }
        (Certificate::Orthants(_), false) => return Err("orthant set on a single orthant".into()),
        (c, false) => vec![check_orthant(&flip(f, 0), c)?],
        (_, true) => return Err("single-orthant certificate for the punctured space".into()),
    };
    match v.kind {
        SignKind::StrictlyPositive | SignKind::StrictlyNegative => {
            let s = if v.kind == SignKind::StrictlyPositive { 1 } else { -1 };
            if claims.iter().all(|c| *c == Claim::Strict(s)) {
                Ok(())
            } else {
                Err("certificate does not prove the strict sign".into())
            }
        }
        SignKind::TakesZero => {
            let s = match claims[0] {
                Claim::Strict(s) | Claim::TouchesZero(s) => s,
            };
            let same = claims
                .iter()
                .all(|c| matches!(c, Claim::Strict(t) | Claim::TouchesZero(t) if *t == s));
            let touches = claims.iter().any(|c| matches!(c, Claim::TouchesZero(_))) || sign_of(0);
            if same && touches {
                Ok(())
            } else {
                Err("certificate does not prove a semidefinite sign with a zero".into())
            }
        }
        _ => Err("certificate attached to an undecided or mixed verdict".into()),
    }
}
