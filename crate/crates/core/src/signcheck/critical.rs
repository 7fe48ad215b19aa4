//! Multistart Levenberg-Marquardt search for common zeros of a polynomial and
//! its Euler derivatives `x_j df/dx_j`, in log-absolute coordinates per orthant.
//!
//! Face polynomials are quasi-homogeneous, so their critical zeros come in
//! orbits of a torus action. Converged points are moved along the orbit until
//! as many coordinates as possible equal `+-1` before rounding to small
//! denominators; the caller checks the rounded candidates exactly.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational as Rational;

use super::Budget;
use crate::linalg::{nullspace, rat, rationalize, round_to_denominator, to_f64};
use crate::polynomial::Polynomial;
use crate::rng::{gaussian, stream, streams};

const TOLERANCE: f64 = 1e-10;
const DENOMINATORS: [i64; 14] = [1, 2, 3, 4, 5, 6, 8, 10, 12, 16, 25, 100, 360, 1000];

pub struct CriticalSearch {
    n: usize,
    exponents: Vec<Vec<f64>>,
    coefficients: Vec<f64>,
    parity: Vec<Vec<bool>>,
    orbit: Vec<Vec<f64>>,
    budget: Budget,
}

impl CriticalSearch {
    pub fn new(f: &Polynomial, budget: &Budget) -> Self {
        let n = f.nvars();
        let exponents: Vec<Vec<f64>> = f
            .support()
            .map(|a| a.as_slice().iter().map(|&e| e as f64).collect())
            .collect();
        let parity = f
            .support()
            .map(|a| a.as_slice().iter().map(|&e| e % 2 == 1).collect())
            .collect();
        let coefficients = f.terms().map(|(_, c)| to_f64(c)).collect();
        let support: Vec<Vec<i64>> = f.support().map(|a| a.to_i64()).collect();
        let diffs: Vec<Vec<Rational>> = support
            .iter()
            .skip(1)
            .map(|a| a.iter().zip(&support[0]).map(|(x, y)| rat(x - y)).collect())
            .collect();
        let orbit = nullspace(&diffs, n)
            .iter()
            .map(|v| v.iter().map(to_f64).collect())
            .collect();
        Self {
            n,
            exponents,
            coefficients,
            parity,
            orbit,
            budget: *budget,
        }
    }

    /// Normalized residuals `(f, x_1 d_1 f, ..., x_n d_n f) / sum |a x^alpha|`.
    fn residuals(&self, sigma: &[i8], z: &[f64]) -> Vec<f64> {
        let logs: Vec<f64> = self
            .exponents
            .iter()
            .map(|a| a.iter().zip(z).map(|(e, v)| e * v).sum())
            .collect();
        let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut out = vec![0.0; self.n + 1];
        let mut scale = 0.0;
        for ((l, c), (a, odd)) in logs
            .iter()
            .zip(&self.coefficients)
            .zip(self.exponents.iter().zip(&self.parity))
        {
            let flips = odd.iter().zip(sigma).filter(|(&o, &s)| o && s < 0).count();
            let sgn = if flips % 2 == 1 { -1.0 } else { 1.0 };
            let t = sgn * c * (l - top).exp();
            scale += t.abs();
            out[0] += t;
            for j in 0..self.n {
                out[j + 1] += a[j] * t;
            }
        }
        if scale > 0.0 {
            for r in out.iter_mut() {
                *r /= scale;
            }
        }
        out
    }

    fn norm2(r: &[f64]) -> f64 {
        r.iter().map(|v| v * v).sum()
    }

    fn minimize(&self, sigma: &[i8], mut z: Vec<f64>) -> Option<Vec<f64>> {
        let n = self.n;
        let mut lambda = 1e-3;
        let mut r = self.residuals(sigma, &z);
        let mut cost = Self::norm2(&r);
        for _ in 0..self.budget.critical_iterations {
            if cost < TOLERANCE * TOLERANCE {
                return Some(z);
            }
            let h = 1e-7;
            let mut jac = vec![vec![0.0; n]; r.len()];
            for k in 0..n {
                let mut zk = z.clone();
                zk[k] += h;
                let rk = self.residuals(sigma, &zk);
                for i in 0..r.len() {
                    jac[i][k] = (rk[i] - r[i]) / h;
                }
            }
            let mut improved = false;
            for _ in 0..12 {
                let mut a = vec![vec![0.0; n + 1]; n];
                for p in 0..n {
                    for q in 0..n {
                        a[p][q] = (0..r.len()).map(|i| jac[i][p] * jac[i][q]).sum();
                    }
                    a[p][p] += lambda * (1.0 + a[p][p]);
                    a[p][n] = -(0..r.len()).map(|i| jac[i][p] * r[i]).sum::<f64>();
                }
                let Some(step) = solve(a) else {
                    lambda *= 10.0;
                    continue;
                };
                let trial: Vec<f64> = z.iter().zip(&step).map(|(a, b)| a + b).collect();
                if trial.iter().any(|v| !v.is_finite() || v.abs() > 60.0) {
                    lambda *= 10.0;
                    continue;
                }
                let rt = self.residuals(sigma, &trial);
                let ct = Self::norm2(&rt);
                if ct < cost {
                    z = trial;
                    r = rt;
                    cost = ct;
                    lambda = (lambda * 0.3).max(1e-12);
                    improved = true;
                    break;
                }
                lambda *= 10.0;
            }
            if !improved {
                break;
            }
        }
        (cost < TOLERANCE * TOLERANCE * 1e4).then_some(z)
    }

    /// Shifts `z` along the torus orbit so that a maximal set of coordinates
    /// becomes zero (`|x_j| = 1`).
    fn normalize(&self, z: &[f64]) -> Vec<f64> {
        let mut z = z.to_vec();
        let mut basis = self.orbit.clone();
        for j in 0..self.n {
            let Some(k) = (0..basis.len())
                .filter(|&k| basis[k][j].abs() > 1e-12)
                .max_by(|&a, &b| basis[a][j].abs().total_cmp(&basis[b][j].abs()))
            else {
                continue;
            };
            let v = basis.remove(k);
            let t = z[j] / v[j];
            for (zi, vi) in z.iter_mut().zip(&v) {
                *zi -= t * vi;
            }
            for w in basis.iter_mut() {
                let s = w[j] / v[j];
                for (wi, vi) in w.iter_mut().zip(&v) {
                    *wi -= s * vi;
                }
            }
        }
        z
    }

    fn candidates(&self, sigma: &[i8], z: &[f64]) -> Vec<Vec<Rational>> {
        let x: Vec<f64> = z.iter().zip(sigma).map(|(v, &s)| f64::from(s) * v.exp()).collect();
        let mut out: Vec<Vec<Rational>> = Vec::new();
        let mut push = |p: Vec<Rational>| {
            if p.iter().all(|v| v != &rat(0)) && !out.contains(&p) {
                out.push(p);
            }
        };
        for den in DENOMINATORS {
            push(x.iter().map(|&v| round_to_denominator(v, den)).collect());
        }
        for tol in [1e-9, 1e-7, 1e-5] {
            push(x.iter().map(|&v| rationalize(v, tol * (1.0 + v.abs()))).collect());
        }
        out
    }

    /// Rational candidates from every converged start in orthant `sigma`.
    pub fn run(&self, sigma: &[i8], orthant: u64) -> Vec<Vec<Vec<Rational>>> {
        let mut rng = stream(self.budget.seed, streams::NONDEGEN, orthant);
        let mut found = Vec::new();
        for _ in 0..self.budget.critical_starts {
            let start: Vec<f64> = (0..self.n).map(|_| 1.5 * gaussian(&mut rng)).collect();
            if let Some(z) = self.minimize(sigma, start) {
                let z = self.normalize(&z);
                found.push(self.candidates(sigma, &z));
            }
        }
        found
    }
}

/// Solves the augmented system `[A | b]` by Gaussian elimination with partial
/// pivoting.
fn solve(mut a: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let n = a.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[p][c].abs() < 1e-300 {
            return None;
        }
        a.swap(c, p);
        for i in c + 1..n {
            let factor = a[i][c] / a[c][c];
            let (top, bottom) = a.split_at_mut(i);
            for (x, y) in bottom[0][c..=n].iter_mut().zip(&top[c][c..=n]) {
                *x -= factor * y;
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| a[i][k] * x[k]).sum();
        x[i] = (a[i][n] - s) / a[i][i];
    }
    Some(x)
}
