//! Brute-force reference implementations used as oracles by the integration
//! tests. They share no code with the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

use newton_compact_core::polynomial::{ExponentVector, Polynomial};
use newton_compact_core::{BigInt, Rational};
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub fn r(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn q(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

pub fn poly(text: &str, n: usize) -> Polynomial {
    newton_compact_core::polynomial::parse(text, n).unwrap()
}

fn to_rat(p: &[u32]) -> Vec<Rational> {
    p.iter().map(|&e| r(i64::from(e))).collect()
}

/// Reduces `rows` (each of width `width`) to row echelon form in place and
/// returns the pivot columns.
fn echelon(rows: &mut [Vec<Rational>], width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..width {
        let Some(p) = (row..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(row, p);
        let lead = rows[row][col].clone();
        for v in rows[row].iter_mut() {
            *v = &*v / &lead;
        }
        for i in 0..rows.len() {
            if i != row && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                let base = rows[row].clone();
                for (v, b) in rows[i].iter_mut().zip(&base) {
                    *v = &*v - &factor * b;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    pivots
}

/// Unique solution of `sum_k lambda_k cols[k] = rhs`, if the columns are
/// independent and the system is consistent.
fn solve_unique(cols: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let k = cols.len();
    let mut rows: Vec<Vec<Rational>> = (0..rhs.len())
        .map(|i| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let pivots = echelon(&mut rows, k + 1);
    if pivots.len() != k || pivots.contains(&k) {
        return None;
    }
    Some((0..k).map(|i| rows[i][k].clone()).collect())
}

fn subsets(len: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if cur.len() == size {
        return out(cur);
    }
    for i in start..len {
        cur.push(i);
        if subsets(len, size, i + 1, cur, out) {
            return true;
        }
        cur.pop();
    }
    false
}

/// `p` lies in the convex hull of `pts`, decided through Caratheodory's theorem.
pub fn in_hull(p: &[Rational], pts: &[Vec<Rational>]) -> bool {
    let m = p.len();
    let mut rhs = p.to_vec();
    rhs.push(r(1));
    for size in 1..=(m + 1).min(pts.len()) {
        let mut found = false;
        subsets(pts.len(), size, 0, &mut Vec::new(), &mut |idx| {
            let cols: Vec<Vec<Rational>> = idx
                .iter()
                .map(|&i| {
                    let mut c = pts[i].clone();
                    c.push(r(1));
                    c
                })
                .collect();
            if let Some(l) = solve_unique(&cols, &rhs) {
                if l.iter().all(|v| !v.is_negative()) {
                    found = true;
                }
            }
            found
        });
        if found {
            return true;
        }
    }
    false
}

/// Points of `support` that are not convex combinations of the others.
pub fn oracle_vertices(support: &[ExponentVector]) -> BTreeSet<Vec<u32>> {
    let pts: Vec<Vec<Rational>> = support.iter().map(|a| to_rat(a.as_slice())).collect();
    (0..pts.len())
        .filter(|&i| {
            let others: Vec<Vec<Rational>> = (0..pts.len()).filter(|&j| j != i).map(|j| pts[j].clone()).collect();
            !in_hull(&pts[i], &others)
        })
        .map(|i| support[i].as_slice().to_vec())
        .collect()
}

/// Vectors orthogonal to every row, as a basis.
fn annihilator(rows: &[Vec<Rational>], m: usize) -> Vec<Vec<Rational>> {
    let mut rows = rows.to_vec();
    let pivots = if rows.is_empty() {
        Vec::new()
    } else {
        echelon(&mut rows, m)
    };
    (0..m)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![r(0); m];
            v[free] = r(1);
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[i][free].clone();
            }
            v
        })
        .collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(r(0), |acc, (x, y)| acc + x * y)
}

/// Vertex sets of all nonempty faces: `S` is one exactly when the affine hull
/// of `S` misses the convex hull of the remaining vertices.
pub fn oracle_faces(vertices: &BTreeSet<Vec<u32>>) -> BTreeSet<Vec<Vec<u32>>> {
    let verts: Vec<Vec<u32>> = vertices.iter().cloned().collect();
    let pts: Vec<Vec<Rational>> = verts.iter().map(|v| to_rat(v)).collect();
    let k = verts.len();
    let m = pts.first().map_or(0, Vec::len);
    let mut out = BTreeSet::new();
    for mask in 1u64..(1 << k) {
        let inside: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
        let outside: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 0).collect();
        let is_face = if outside.is_empty() {
            true
        } else {
            let base = &pts[inside[0]];
            let dirs: Vec<Vec<Rational>> = inside[1..]
                .iter()
                .map(|&i| pts[i].iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            let ann = annihilator(&dirs, m);
            if ann.is_empty() {
                false
            } else {
                let project = |p: &[Rational]| -> Vec<Rational> { ann.iter().map(|y| dot(y, p)).collect() };
                let rest: Vec<Vec<Rational>> = outside.iter().map(|&i| project(&pts[i])).collect();
                !in_hull(&project(base), &rest)
            }
        };
        if is_face {
            out.insert(inside.iter().map(|&i| verts[i].clone()).collect());
        }
    }
    out
}

/// Vertex sets of the faces minimizing some `q` in `[-bound, bound]^n` with a
/// negative entry.
pub fn oracle_faces_at_infinity(
    support: &[ExponentVector],
    vertices: &BTreeSet<Vec<u32>>,
    bound: i64,
) -> BTreeSet<Vec<Vec<u32>>> {
    let n = support[0].len();
    let mut out = BTreeSet::new();
    let side = (2 * bound + 1) as usize;
    for code in 0..side.pow(n as u32) {
        let mut c = code;
        let qv: Vec<i64> = (0..n)
            .map(|_| {
                let v = (c % side) as i64 - bound;
                c /= side;
                v
            })
            .collect();
        if qv.iter().all(|&v| v >= 0) {
            continue;
        }
        let value = |a: &ExponentVector| -> i64 { a.as_slice().iter().zip(&qv).map(|(&e, &w)| i64::from(e) * w).sum() };
        let d = support.iter().map(value).min().unwrap();
        let face: Vec<Vec<u32>> = support
            .iter()
            .filter(|a| value(a) == d && vertices.contains(a.as_slice()))
            .map(|a| a.as_slice().to_vec())
            .collect();
        out.insert(face.into_iter().collect::<BTreeSet<_>>().into_iter().collect());
    }
    out
}

/// `sum |x^alpha|` computed term by term.
pub fn abs_sum(points: &[Vec<u32>], x: &[Rational]) -> Rational {
    points.iter().fold(r(0), |acc, a| {
        let m = a
            .iter()
            .zip(x)
            .fold(r(1), |m, (&e, v)| m * num_traits::pow(v.abs(), e as usize));
        acc + m
    })
}

/// Nonzero rational with numerator and denominator in small ranges.
pub fn random_nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let a: i64 = rng.gen_range(-9..=9);
        let b: i64 = rng.gen_range(1..=5);
        if a != 0 {
            return q(a, b);
        }
    }
}

/// Random sparse polynomial with integer coefficients.
pub fn random_polynomial<R: Rng>(rng: &mut R, n: usize, max_terms: usize, max_exp: u32) -> Polynomial {
    loop {
        let terms: Vec<(ExponentVector, Rational)> = (0..rng.gen_range(1..=max_terms))
            .map(|_| {
                let a = ExponentVector::new((0..n).map(|_| rng.gen_range(0..=max_exp)).collect());
                let c = loop {
                    let c: i64 = rng.gen_range(-5..=5);
                    if c != 0 {
                        break c;
                    }
                };
                (a, r(c))
            })
            .collect();
        let f = Polynomial::from_terms(n, terms).unwrap();
        if !f.is_zero() && !f.is_constant() {
            return f;
        }
    }
}

pub fn is_one(x: &Rational) -> bool {
    x.is_one()
}

/// `f(p)` summed term by term with powers built by repeated multiplication.
pub fn eval(f: &Polynomial, p: &[Rational]) -> Rational {
    f.terms().fold(r(0), |acc, (a, c)| {
        let m = a
            .as_slice()
            .iter()
            .zip(p)
            .fold(r(1), |m, (&e, v)| (0..e).fold(m, |m, _| m * v));
        acc + c * m
    })
}

/// Sum of the terms of `f` with `<q, alpha>` minimal, and that minimum.
pub fn lowest_terms(f: &Polynomial, q: &[i64]) -> (i64, Vec<(Vec<u32>, Rational)>) {
    let value = |a: &[u32]| -> i64 { a.iter().zip(q).map(|(&e, &w)| i64::from(e) * w).sum() };
    let d = f.support().map(|a| value(a.as_slice())).min().unwrap();
    let terms = f
        .terms()
        .filter(|(a, _)| value(a.as_slice()) == d)
        .map(|(a, c)| (a.as_slice().to_vec(), c.clone()))
        .collect();
    (d, terms)
}
