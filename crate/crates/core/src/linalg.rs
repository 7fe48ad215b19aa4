//! Exact rational linear algebra: row reduction, null spaces, primitive integer
//! scaling, rational reconstruction and Fourier-Motzkin feasibility.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational as Rational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub(crate) fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub(crate) fn dot_rat(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                let (pivot_row, row) = if i < r {
                    let (lo, hi) = rows.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = rows.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (v, p) in row.iter_mut().zip(pivot_row) {
                    *v = &*v - &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of `{x : A x = 0}`.
pub(crate) fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// Positive rescaling of a rational vector to a primitive integer vector.
pub(crate) fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub(crate) fn to_i64_vec(v: &[BigInt], what: &'static str) -> Result<Vec<i64>> {
    v.iter().map(|x| x.to_i64().ok_or(Error::Overflow(what))).collect()
}

pub(crate) fn floor(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

/// Simplest rational (smallest denominator, then smallest numerator) in the open
/// interval `(lo, hi)` with `0 <= lo < hi`; `hi = None` means `+inf`.
pub(crate) fn simplest_in_open(lo: &Rational, hi: Option<&Rational>) -> Rational {
    debug_assert!(!lo.is_negative());
    let n = floor(lo);
    let candidate = Rational::from_integer(&n + BigInt::one());
    match hi {
        None => candidate,
        Some(h) if &candidate < h => {
            // smallest integer strictly above lo that is below hi
            candidate
        }
        Some(h) => {
            let base = Rational::from_integer(n);
            let a = lo - &base;
            let b = h - &base;
            // lo and hi share the unit interval [n, n + 1]
            let inner_lo = b.recip();
            let inner_hi = if a.is_zero() { None } else { Some(a.recip()) };
            base + simplest_in_open(&inner_lo, inner_hi.as_ref()).recip()
        }
    }
}

/// Simplest rational in the closed interval `[lo, hi]` (any signs).
pub(crate) fn simplest_in_closed(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_in_closed(&-hi.clone(), &-lo.clone());
    }
    let fl = Rational::from_integer(floor(lo));
    if &fl == lo {
        return fl;
    }
    if &fl + Rational::one() <= *hi {
        return fl + Rational::one();
    }
    let a = lo - &fl;
    let b = hi - &fl;
    fl + simplest_in_closed(&b.recip(), &a.recip()).recip()
}

/// Exact rational equal to a finite `f64`.
pub(crate) fn exact_from_f64(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(Rational::zero)
}

/// Simplest rational within `tol` of `x`.
pub(crate) fn rationalize(x: f64, tol: f64) -> Rational {
    let lo = exact_from_f64(x - tol);
    let hi = exact_from_f64(x + tol);
    simplest_in_closed(&lo, &hi)
}

/// `round(x * den) / den`.
pub(crate) fn round_to_denominator(x: f64, den: i64) -> Rational {
    let scaled = x * den as f64;
    let r = num_traits::Float::round(scaled);
    let numer = BigInt::from(r as i64);
    Rational::new(numer, BigInt::from(den))
}

pub(crate) fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(if x.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

#[derive(Clone, Debug)]
struct Ineq {
    a: Vec<Rational>,
    b: Rational,
    history: Vec<u64>,
}

fn history_len(h: &[u64]) -> u32 {
    h.iter().map(|w| w.count_ones()).sum()
}

fn history_union(x: &[u64], y: &[u64]) -> Vec<u64> {
    x.iter().zip(y).map(|(a, b)| a | b).collect()
}

const FM_LIMIT: usize = 20_000;

/// Finds a point satisfying `eqs` (each `a.x = c`) and `ineqs` (each `a.x >= b`)
/// by Gaussian elimination of the equalities followed by Fourier-Motzkin
/// elimination with Chernikov's history rule. Returns `Ok(None)` when infeasible.
///
/// Duplicate removal can discard the row whose history keeps a combination
/// under the cap, so the pruned projection may be too weak. An empty interval
/// during back-substitution then triggers a rerun without pruning.
pub(crate) fn fm_feasible_point(
    nvars: usize,
    eqs: &[(Vec<Rational>, Rational)],
    ineqs: &[(Vec<Rational>, Rational)],
) -> Result<Option<Vec<Rational>>> {
    match fm_eliminate(nvars, eqs, ineqs, true) {
        Err(Error::InternalInconsistency(_)) => fm_eliminate(nvars, eqs, ineqs, false),
        other => other,
    }
}

fn fm_eliminate(
    nvars: usize,
    eqs: &[(Vec<Rational>, Rational)],
    ineqs: &[(Vec<Rational>, Rational)],
    prune: bool,
) -> Result<Option<Vec<Rational>>> {
    // x = x0 + N y
    let mut aug: Vec<Vec<Rational>> = eqs
        .iter()
        .map(|(a, c)| {
            let mut row = a.clone();
            row.push(c.clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug, nvars + 1);
    if pivots.contains(&nvars) {
        return Ok(None);
    }
    let free: Vec<usize> = (0..nvars).filter(|c| !pivots.contains(c)).collect();
    let mut x0 = vec![Rational::zero(); nvars];
    for (row, &p) in pivots.iter().enumerate() {
        x0[p] = aug[row][nvars].clone();
    }
    let basis: Vec<Vec<Rational>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); nvars];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -aug[row][f].clone();
            }
            v
        })
        .collect();
    let m = basis.len();
    let words = ineqs.len().div_ceil(64).max(1);
    let mut system: Vec<Ineq> = ineqs
        .iter()
        .enumerate()
        .map(|(i, (a, b))| {
            let mut history = vec![0u64; words];
            history[i / 64] |= 1 << (i % 64);
            Ineq {
                a: basis.iter().map(|col| dot_rat(a, col)).collect(),
                b: b - dot_rat(a, &x0),
                history,
            }
        })
        .collect();
    system = match clean(system) {
        Some(s) => s,
        None => return Ok(None),
    };
    let mut stages = Vec::with_capacity(m + 1);
    for k in 0..m {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for ineq in &system {
            if ineq.a[k].is_positive() {
                pos.push(ineq);
            } else if ineq.a[k].is_negative() {
                neg.push(ineq);
            } else {
                rest.push(ineq.clone());
            }
        }
        let cap = k as u32 + 2;
        for p in &pos {
            for q in &neg {
                let history = history_union(&p.history, &q.history);
                if prune && history_len(&history) > cap {
                    continue;
                }
                let lp = -q.a[k].clone();
                let lq = p.a[k].clone();
                let a: Vec<Rational> = p.a.iter().zip(&q.a).map(|(x, y)| x * &lp + y * &lq).collect();
                let b = &p.b * &lp + &q.b * &lq;
                rest.push(Ineq { a, b, history });
            }
        }
        stages.push(core::mem::take(&mut system));
        system = match clean(rest) {
            Some(s) => s,
            None => return Ok(None),
        };
        if system.len() > FM_LIMIT {
            return Err(Error::TooLarge(format!(
                "Fourier-Motzkin system grew to {} inequalities",
                system.len()
            )));
        }
    }
    let mut y = vec![Rational::zero(); m];
    for k in (0..m).rev() {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for ineq in &stages[k] {
            let coeff = &ineq.a[k];
            if coeff.is_zero() {
                continue;
            }
            let mut rhs = ineq.b.clone();
            for (a, yj) in ineq.a[k + 1..].iter().zip(&y[k + 1..]) {
                rhs -= a * yj;
            }
            let bound = rhs / coeff;
            if coeff.is_positive() {
                if lo.as_ref().is_none_or(|l| &bound > l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| &bound < h) {
                hi = Some(bound);
            }
        }
        y[k] = pick_value(lo.as_ref(), hi.as_ref())?;
    }
    let mut x = x0;
    for (yk, col) in y.iter().zip(&basis) {
        for (xi, ci) in x.iter_mut().zip(col) {
            *xi += yk * ci;
        }
    }
    Ok(Some(x))
}

fn pick_value(lo: Option<&Rational>, hi: Option<&Rational>) -> Result<Rational> {
    match (lo, hi) {
        (None, None) => Ok(Rational::zero()),
        (Some(l), None) => Ok(if l.is_positive() { l.ceil() } else { Rational::zero() }),
        (None, Some(h)) => Ok(if h.is_negative() { h.floor() } else { Rational::zero() }),
        (Some(l), Some(h)) => {
            if l > h {
                return Err(Error::InternalInconsistency(
                    "Fourier-Motzkin back-substitution found an empty interval".into(),
                ));
            }
            if !l.is_positive() && !h.is_negative() {
                return Ok(Rational::zero());
            }
            let c = if l.is_positive() { l.ceil() } else { h.floor() };
            if &c >= l && &c <= h {
                Ok(c)
            } else {
                Ok((l + h) / rat(2))
            }
        }
    }
}

/// Drops trivial rows, detects `0 >= b > 0`, normalizes and removes duplicates.
fn clean(system: Vec<Ineq>) -> Option<Vec<Ineq>> {
    let mut best: BTreeMap<Vec<Rational>, Ineq> = BTreeMap::new();
    for mut ineq in system {
        let scale = ineq.a.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero);
        if scale.is_zero() {
            if ineq.b.is_positive() {
                return None;
            }
            continue;
        }
        for v in ineq.a.iter_mut() {
            *v = &*v / &scale;
        }
        ineq.b = &ineq.b / &scale;
        match best.get(&ineq.a) {
            Some(existing) if existing.b >= ineq.b => {}
            _ => {
                best.insert(ineq.a.clone(), ineq);
            }
        }
    }
    Some(best.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn nullspace_of_plane() {
        let rows = vec![vec![rat(1), rat(1), rat(1)]];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(dot_rat(&rows[0], v).is_zero());
        }
    }

    #[test]
    fn primitive_scaling() {
        let v = primitive_integer(&[r(1, 2), r(-3, 4), r(0, 1)]);
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(-3), BigInt::zero()]);
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_in_open(&rat(0), Some(&rat(1))), r(1, 2));
        assert_eq!(simplest_in_open(&rat(1), None), rat(2));
        assert_eq!(simplest_in_open(&r(1, 3), Some(&r(1, 2))), r(2, 5));
        assert_eq!(simplest_in_closed(&r(3, 10), &r(4, 10)), r(1, 3));
        assert_eq!(simplest_in_closed(&r(-4, 10), &r(-3, 10)), r(-1, 3));
        assert_eq!(rationalize(0.333_333_333_3, 1e-9), r(1, 3));
    }

    #[test]
    fn fm_detects_infeasible_and_feasible() {
        // x >= 1, -x >= 0
        let ineqs = vec![(vec![rat(1)], rat(1)), (vec![rat(-1)], rat(0))];
        assert_eq!(fm_feasible_point(1, &[], &ineqs).unwrap(), None);
        // x + y = 2, x - y >= 1, y >= -5
        let eqs = vec![(vec![rat(1), rat(1)], rat(2))];
        let ineqs = vec![(vec![rat(1), rat(-1)], rat(1)), (vec![rat(0), rat(1)], rat(-5))];
        let x = fm_feasible_point(2, &eqs, &ineqs).unwrap().unwrap();
        assert_eq!(&x[0] + &x[1], rat(2));
        assert!(&x[0] - &x[1] >= rat(1));
        assert!(x[1] >= rat(-5));
    }
}
