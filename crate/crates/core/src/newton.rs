//! Exact geometry of the Newton polytope of a polynomial.
//!
//! Facets are found with the double description method applied to the cone of
//! valid inequalities `{(c, b) : <c, p> >= b for all support points p}`, with `c`
//! restricted to the direction space of the affine hull. Faces are the
//! nonempty intersections of facets plus the polytope itself. Vertex sets are
//! `u64` bitmasks over the (grlex-sorted) vertex list.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational as Rational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{fm_feasible_point, nullspace, primitive_integer, rank, rat, rref, to_i64_vec};
use crate::polynomial::{monomial_value, ExponentVector, Polynomial};

/// Largest ambient dimension accepted.
pub const MAX_VARIABLES: usize = 6;
/// Largest support accepted.
pub const MAX_SUPPORT: usize = 64;
/// Largest bounding box scanned for lattice points.
pub const MAX_LATTICE_BOX: u128 = 1_000_000;

/// `<normal, alpha> >= offset` on the polytope, with equality on `vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
    mask: u64,
}

impl Facet {
    pub fn vertex_mask(&self) -> u64 {
        self.mask
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolytope {
    n: usize,
    support: Vec<ExponentVector>,
    vertices: Vec<ExponentVector>,
    facets: Vec<Facet>,
    dim: usize,
    affine_hull: Vec<(Vec<i64>, i64)>,
    face_masks: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    mask: u64,
    dim: usize,
    witness_normal: Option<Vec<i64>>,
    offset: Option<i64>,
    at_infinity: bool,
}

impl Face {
    /// Bitmask of polytope vertex indices.
    pub fn vertex_mask(&self) -> u64 {
        self.mask
    }

    pub fn vertex_indices(&self) -> Vec<usize> {
        mask_indices(self.mask).collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `q` with `Delta(q, Gamma)` equal to this face. Absent only for the
    /// improper face of a full-dimensional polytope.
    pub fn witness_normal(&self) -> Option<&[i64]> {
        self.witness_normal.as_deref()
    }

    /// `d(q, Gamma)` for the witness normal.
    pub fn offset(&self) -> Option<i64> {
        self.offset
    }

    pub fn at_infinity(&self) -> bool {
        self.at_infinity
    }
}

fn mask_indices(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

fn big_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

fn primitive_big(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v
        .iter()
        .fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

fn to_rational_row(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

/// Extreme rays of the pointed cone `{z : a_i . z >= 0}` with their zero sets
/// (bitmask over the rows).
fn double_description(rows: &[Vec<BigInt>], dim: usize) -> Vec<(Vec<BigInt>, u64)> {
    // pick `dim` independent rows to seed a simplicial cone
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let r: Vec<Rational> = row.iter().cloned().map(Rational::from_integer).collect();
        basis.push(r);
        if rank(&basis, dim) == basis.len() {
            chosen.push(i);
            if chosen.len() == dim {
                break;
            }
        } else {
            basis.pop();
        }
    }
    assert_eq!(chosen.len(), dim, "constraint matrix must have full column rank");
    // inverse of the seed matrix: its columns are the initial rays
    let mut aug: Vec<Vec<Rational>> = basis
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..dim).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    rref(&mut aug, dim);
    let mut processed: u64 = chosen.iter().fold(0, |m, &i| m | 1 << i);
    let mut rays: Vec<(Vec<BigInt>, u64)> = (0..dim)
        .map(|j| {
            let col: Vec<Rational> = (0..dim).map(|i| aug[i][dim + j].clone()).collect();
            let zero = chosen
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .fold(0u64, |m, (_, &i)| m | 1 << i);
            (primitive_integer(&col), zero)
        })
        .collect();
    for (i, a) in rows.iter().enumerate() {
        if processed >> i & 1 == 1 {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|(z, _)| big_dot(a, z)).collect();
        let mut next = Vec::new();
        for (k, (z, zero)) in rays.iter().enumerate() {
            if values[k].is_positive() {
                next.push((z.clone(), *zero));
            } else if values[k].is_zero() {
                next.push((z.clone(), *zero | 1 << i));
            }
        }
        for p in (0..rays.len()).filter(|&k| values[k].is_positive()) {
            for m in (0..rays.len()).filter(|&k| values[k].is_negative()) {
                let common = rays[p].1 & rays[m].1;
                if (common.count_ones() as usize) + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == m || r.1 & common != common);
                if !adjacent {
                    continue;
                }
                let z: Vec<BigInt> = rays[m]
                    .0
                    .iter()
                    .zip(&rays[p].0)
                    .map(|(zm, zp)| &values[p] * zm - &values[m] * zp)
                    .collect();
                next.push((primitive_big(z), common | 1 << i));
            }
        }
        rays = next;
        processed |= 1 << i;
    }
    rays
}

fn affine_rank(points: &[&ExponentVector]) -> usize {
    match points.split_first() {
        None => 0,
        Some((first, rest)) => {
            let base = first.to_i64();
            let rows: Vec<Vec<Rational>> = rest
                .iter()
                .map(|p| p.to_i64().iter().zip(&base).map(|(a, b)| rat(a - b)).collect())
                .collect();
            rank(&rows, base.len())
        }
    }
}

/// Exact convex hull of the support of `f`.
pub fn newton_polytope(f: &Polynomial) -> Result<NewtonPolytope> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.nvars();
    if n > MAX_VARIABLES {
        return Err(Error::TooLarge(format!("{n} variables (limit {MAX_VARIABLES})")));
    }
    let support: Vec<ExponentVector> = f.support().cloned().collect();
    polytope_of_points(n, support)
}

/// Convex hull of a nonempty set of distinct exponent vectors.
pub fn polytope_of_points(n: usize, mut support: Vec<ExponentVector>) -> Result<NewtonPolytope> {
    support.sort();
    support.dedup();
    if support.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    if support.len() > MAX_SUPPORT {
        return Err(Error::TooLarge(format!(
            "support of {} points (limit {MAX_SUPPORT})",
            support.len()
        )));
    }
    let base = support[0].to_i64();
    let diffs: Vec<Vec<Rational>> = support[1..]
        .iter()
        .map(|p| p.to_i64().iter().zip(&base).map(|(a, b)| rat(a - b)).collect())
        .collect();
    let affine_hull = nullspace(&diffs, n)
        .iter()
        .map(|h| {
            let h = to_i64_vec(&primitive_integer(h), "affine hull normal")?;
            let c = support[0].dot(&h);
            Ok((h, c))
        })
        .collect::<Result<Vec<_>>>()?;
    let dim = n - affine_hull.len();

    let mut raw_facets: Vec<(Vec<i64>, u64)> = Vec::new();
    if dim > 0 {
        let mut echelon = diffs.clone();
        let pivots = rref(&mut echelon, n);
        let directions: Vec<Vec<BigInt>> = echelon[..pivots.len()].iter().map(|r| primitive_integer(r)).collect();
        let rows: Vec<Vec<BigInt>> = support
            .iter()
            .map(|p| {
                let p: Vec<BigInt> = p.as_slice().iter().map(|&x| BigInt::from(x)).collect();
                let mut row: Vec<BigInt> = directions.iter().map(|b| big_dot(b, &p)).collect();
                row.push(-BigInt::one());
                row
            })
            .collect();
        for (ray, zero) in double_description(&rows, dim + 1) {
            if ray[..dim].iter().all(Zero::is_zero) {
                continue;
            }
            let mut c = vec![BigInt::zero(); n];
            for (beta, b) in ray[..dim].iter().zip(&directions) {
                for (cj, bj) in c.iter_mut().zip(b) {
                    *cj += beta * bj;
                }
            }
            let c = to_i64_vec(&primitive_big(c), "facet normal")?;
            raw_facets.push((c, zero));
        }
    }

    // vertices: points where the active facet normals span the direction space
    let is_vertex: Vec<bool> = (0..support.len())
        .map(|i| {
            if dim == 0 {
                return true;
            }
            let active: Vec<Vec<Rational>> = raw_facets
                .iter()
                .filter(|(_, z)| z >> i & 1 == 1)
                .map(|(c, _)| to_rational_row(c))
                .collect();
            rank(&active, n) == dim
        })
        .collect();
    let vertex_of: Vec<Option<usize>> = is_vertex
        .iter()
        .scan(0usize, |k, &v| {
            Some(if v {
                *k += 1;
                Some(*k - 1)
            } else {
                None
            })
        })
        .collect();
    let vertices: Vec<ExponentVector> = support
        .iter()
        .zip(&is_vertex)
        .filter(|(_, &v)| v)
        .map(|(p, _)| p.clone())
        .collect();
    let to_vertex_mask = |zero: u64| -> u64 {
        mask_indices(zero)
            .filter_map(|i| vertex_of[i])
            .fold(0u64, |m, k| m | 1 << k)
    };
    let mut facets: Vec<Facet> = raw_facets
        .into_iter()
        .map(|(normal, zero)| {
            let offset = support.iter().map(|p| p.dot(&normal)).min().unwrap_or(0);
            Facet {
                normal,
                offset,
                mask: to_vertex_mask(zero),
            }
        })
        .collect();
    facets.sort_by(|a, b| a.normal.cmp(&b.normal));

    let full = if vertices.len() == 64 {
        u64::MAX
    } else {
        (1u64 << vertices.len()) - 1
    };
    let mut masks: Vec<u64> = facets.iter().map(|f| f.mask).collect();
    let mut frontier = masks.clone();
    while !frontier.is_empty() {
        let mut fresh = Vec::new();
        for &a in &frontier {
            for f in &facets {
                let m = a & f.mask;
                if m != 0 && !masks.contains(&m) && !fresh.contains(&m) {
                    fresh.push(m);
                }
            }
        }
        masks.extend(fresh.iter().copied());
        frontier = fresh;
    }
    masks.push(full);
    masks.sort();
    masks.dedup();

    Ok(NewtonPolytope {
        n,
        support,
        vertices,
        facets,
        dim,
        affine_hull,
        face_masks: masks,
    })
}

impl NewtonPolytope {
    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sorted support points the polytope was built from.
    pub fn support(&self) -> &[ExponentVector] {
        &self.support
    }

    /// Extreme points in graded lexicographic order.
    pub fn vertices(&self) -> &[ExponentVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Equalities `<h, alpha> = c` cutting out the affine hull (empty when
    /// full-dimensional).
    pub fn affine_hull(&self) -> &[(Vec<i64>, i64)] {
        &self.affine_hull
    }

    pub fn full_mask(&self) -> u64 {
        self.face_masks.last().copied().unwrap_or(0)
    }

    pub fn is_face_mask(&self, mask: u64) -> bool {
        self.face_masks.binary_search(&mask).is_ok()
    }

    pub fn vertices_of(&self, mask: u64) -> Vec<&ExponentVector> {
        mask_indices(mask).map(|i| &self.vertices[i]).collect()
    }

    pub fn contains(&self, alpha: &[i64]) -> bool {
        self.affine_hull.iter().all(|(h, c)| dot_i64(h, alpha) == *c)
            && self.facets.iter().all(|f| dot_i64(&f.normal, alpha) >= f.offset)
    }

    fn mask_dim(&self, mask: u64) -> usize {
        affine_rank(&self.vertices_of(mask))
    }

    fn facets_containing(&self, mask: u64) -> impl Iterator<Item = &Facet> {
        self.facets.iter().filter(move |f| f.mask & mask == mask)
    }

    /// Vertex mask of `Delta(q, Gamma)` and `d(q, Gamma)`.
    fn argmin(&self, q: &[Rational]) -> (Rational, u64) {
        let values: Vec<Rational> = self.vertices.iter().map(|v| v.dot_rational(q)).collect();
        let d = values.iter().min().cloned().expect("nonempty polytope");
        let mask = values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v == d)
            .fold(0u64, |m, (i, _)| m | 1 << i);
        (d, mask)
    }

    /// Closed-form membership in the boundary at infinity: the relative
    /// interior of the normal cone of the face meets `{q : q_k < 0}`.
    fn normal_cone_escapes(&self, mask: u64) -> bool {
        if !self.affine_hull.is_empty() {
            // a nonzero affine-hull normal can be added with either sign
            return true;
        }
        if mask == self.full_mask() {
            return false;
        }
        self.facets_containing(mask).any(|f| f.normal.iter().any(|&c| c < 0))
    }

    /// Witness normal from the sum of the facet normals containing the face, or
    /// an affine-hull normal for the improper face.
    fn interior_normal(&self, mask: u64) -> Option<Vec<i64>> {
        if mask == self.full_mask() {
            return self.affine_hull.first().map(|(h, _)| h.clone());
        }
        let mut q = vec![0i64; self.n];
        for f in self.facets_containing(mask) {
            for (qj, c) in q.iter_mut().zip(&f.normal) {
                *qj += c;
            }
        }
        let prim = primitive_integer(&to_rational_row(&q));
        Some(to_i64_vec(&prim, "face normal").unwrap_or(q))
    }

    fn make_face(&self, mask: u64) -> Face {
        let witness_normal = self.interior_normal(mask);
        let offset = witness_normal.as_ref().map(|q| self.vertices_of(mask)[0].dot(q));
        Face {
            mask,
            dim: self.mask_dim(mask),
            witness_normal,
            offset,
            at_infinity: false,
        }
    }

    /// Integer points satisfying the facet inequalities and affine-hull
    /// equalities of the polytope.
    pub fn lattice_points(&self) -> Result<Vec<ExponentVector>> {
        self.lattice_points_in(self.full_mask())
    }

    /// Integer points of the face with the given vertex mask.
    pub fn lattice_points_in(&self, mask: u64) -> Result<Vec<ExponentVector>> {
        let verts = self.vertices_of(mask);
        let lo: Vec<u32> = (0..self.n)
            .map(|j| verts.iter().map(|v| v.as_slice()[j]).min().unwrap_or(0))
            .collect();
        let hi: Vec<u32> = (0..self.n)
            .map(|j| verts.iter().map(|v| v.as_slice()[j]).max().unwrap_or(0))
            .collect();
        let count: u128 = lo.iter().zip(&hi).map(|(a, b)| (b - a) as u128 + 1).product();
        if count > MAX_LATTICE_BOX {
            return Err(Error::TooLarge(format!(
                "lattice bounding box has {count} points (limit {MAX_LATTICE_BOX})"
            )));
        }
        let tight: Vec<&Facet> = if mask == self.full_mask() {
            Vec::new()
        } else {
            self.facets_containing(mask).collect()
        };
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            let alpha: Vec<i64> = cur.iter().map(|&x| x as i64).collect();
            if self.contains(&alpha) && tight.iter().all(|f| dot_i64(&f.normal, &alpha) == f.offset) {
                out.push(ExponentVector::new(cur.clone()));
            }
            let mut j = 0;
            loop {
                if j == self.n {
                    out.sort();
                    return Ok(out);
                }
                if cur[j] < hi[j] {
                    cur[j] += 1;
                    break;
                }
                cur[j] = lo[j];
                j += 1;
            }
        }
    }
}

fn dot_i64(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `d(q, Gamma)` and the face `Delta(q, Gamma)` carrying `q` (scaled to a
/// primitive integer vector) as its witness normal.
pub fn supporting_face(p: &NewtonPolytope, q: &[Rational]) -> Result<(Rational, Face)> {
    if q.len() != p.n {
        return Err(Error::DimensionMismatch {
            expected: p.n,
            found: q.len(),
        });
    }
    if q.iter().all(Zero::is_zero) {
        return Err(Error::ZeroDirection);
    }
    let (d, mask) = p.argmin(q);
    let normal = to_i64_vec(&primitive_integer(q), "supporting normal")?;
    let offset = p.vertices[mask.trailing_zeros() as usize].dot(&normal);
    let at_infinity = normal.iter().any(|&c| c < 0) || p.normal_cone_escapes(mask);
    Ok((
        d,
        Face {
            mask,
            dim: p.mask_dim(mask),
            witness_normal: Some(normal),
            offset: Some(offset),
            at_infinity,
        },
    ))
}

/// Every nonempty face, ordered by dimension then vertex mask. The improper
/// face is included. `at_infinity` is left unset.
pub fn enumerate_faces(p: &NewtonPolytope) -> Vec<Face> {
    let mut faces: Vec<Face> = p.face_masks.iter().map(|&m| p.make_face(m)).collect();
    faces.sort_by_key(|f| (f.dim, f.mask));
    faces
}

/// Sets `at_infinity` on each face, replacing the witness normal by one with a
/// negative entry when the face lies in the boundary at infinity.
pub fn boundary_at_infinity(p: &NewtonPolytope, faces: &[Face]) -> Result<Vec<Face>> {
    faces
        .iter()
        .map(|f| {
            if !p.is_face_mask(f.mask) {
                return Err(Error::NotAFace);
            }
            let mut f = f.clone();
            f.at_infinity = false;
            if f.witness_normal.is_none() {
                return Ok(f);
            }
            if f.witness_normal.as_ref().is_some_and(|q| q.iter().any(|&c| c < 0)) {
                f.at_infinity = true;
                return Ok(f);
            }
            let found = match escaping_normal(p, f.mask) {
                Ok(q) => q,
                Err(Error::TooLarge(_)) => fallback_escaping_normal(p, f.mask),
                Err(e) => return Err(e),
            };
            debug_assert_eq!(found.is_some(), p.normal_cone_escapes(f.mask));
            if let Some(q) = found {
                f.offset = Some(p.vertices[f.mask.trailing_zeros() as usize].dot(&q));
                f.witness_normal = Some(q);
                f.at_infinity = true;
            }
            Ok(f)
        })
        .collect()
}

/// All faces with their boundary-at-infinity flags.
pub fn annotated_faces(p: &NewtonPolytope) -> Result<Vec<Face>> {
    boundary_at_infinity(p, &enumerate_faces(p))
}

/// Solves for `q` with `<q, v - v0> = 0` on the face, `<q, u - v0> >= 1` off
/// it, and `q_k <= -1`, trying each coordinate `k` in turn.
fn escaping_normal(p: &NewtonPolytope, mask: u64) -> Result<Option<Vec<i64>>> {
    let n = p.n;
    let v0 = p.vertices[mask.trailing_zeros() as usize].to_i64();
    let diff = |v: &ExponentVector| -> Vec<Rational> { v.to_i64().iter().zip(&v0).map(|(a, b)| rat(a - b)).collect() };
    let eqs: Vec<(Vec<Rational>, Rational)> = mask_indices(mask)
        .map(|i| (diff(&p.vertices[i]), Rational::zero()))
        .filter(|(a, _)| a.iter().any(|x| !x.is_zero()))
        .collect();
    let others: Vec<(Vec<Rational>, Rational)> = (0..p.vertices.len())
        .filter(|i| mask >> i & 1 == 0)
        .map(|i| (diff(&p.vertices[i]), Rational::one()))
        .collect();
    for k in 0..n {
        let mut ineqs = others.clone();
        let mut row = vec![Rational::zero(); n];
        row[k] = -Rational::one();
        ineqs.push((row, Rational::one()));
        if let Some(q) = fm_feasible_point(n, &eqs, &ineqs)? {
            let q = to_i64_vec(&primitive_integer(&q), "escaping normal")?;
            debug_assert_eq!(p.argmin(&to_rational_row(&q)).1, mask);
            return Ok(Some(q));
        }
    }
    Ok(None)
}

/// Builds an escaping normal directly from the facet normals and affine-hull
/// normals when the elimination grows too large.
fn fallback_escaping_normal(p: &NewtonPolytope, mask: u64) -> Option<Vec<i64>> {
    let base = p.interior_normal(mask)?;
    let push = p
        .affine_hull
        .iter()
        .map(|(h, _)| {
            let j = h.iter().position(|&c| c != 0).unwrap_or(0);
            if h[j] > 0 {
                h.iter().map(|c| -c).collect::<Vec<_>>()
            } else {
                h.clone()
            }
        })
        .next()
        .or_else(|| {
            if mask == p.full_mask() {
                None
            } else {
                p.facets_containing(mask)
                    .find(|f| f.normal.iter().any(|&c| c < 0))
                    .map(|f| f.normal.clone())
            }
        })?;
    let k = push.iter().position(|&c| c < 0)?;
    // scale the push until it dominates the k-th entry of the interior normal
    let lambda = base[k].max(0) / (-push[k]) + 1;
    let q: Vec<i64> = base.iter().zip(&push).map(|(b, c)| b + lambda * c).collect();
    let prim = primitive_integer(&to_rational_row(&q));
    let q = to_i64_vec(&prim, "escaping normal").ok()?;
    (p.argmin(&to_rational_row(&q)).1 == mask).then_some(q)
}

/// `(1 / #(Gamma cap Z^n), 1)`: the constants with
/// `c1 * P(x) <= P~(x) <= c2 * P(x)`.
pub fn comparability_constants(p: &NewtonPolytope) -> Result<(Rational, Rational)> {
    let count = p.lattice_points()?.len();
    Ok((Rational::new(BigInt::one(), BigInt::from(count)), Rational::one()))
}

/// `sum |x^alpha|` over the given exponents.
pub fn abs_monomial_sum(points: &[ExponentVector], x: &[Rational]) -> Rational {
    points
        .iter()
        .fold(Rational::zero(), |acc, a| acc + monomial_value(a, x).abs())
}

pub fn abs_monomial_sum_f64(points: &[ExponentVector], x: &[f64]) -> f64 {
    use num_traits::Float;
    points
        .iter()
        .map(|a| {
            a.as_slice()
                .iter()
                .zip(x)
                .map(|(&e, &v)| Float::powi(Float::abs(v), e as i32))
                .product::<f64>()
        })
        .sum()
}

/// The sub-sum of `f` over exponents lying in `face`.
pub fn face_polynomial(f: &Polynomial, p: &NewtonPolytope, face: &Face) -> Result<Polynomial> {
    if f.nvars() != p.n || !f.support().eq(p.support.iter()) {
        return Err(Error::NotAFace);
    }
    if !p.is_face_mask(face.mask) {
        return Err(Error::NotAFace);
    }
    match (&face.witness_normal, face.offset) {
        (Some(q), Some(d)) => {
            if p.argmin(&to_rational_row(q)) != (rat(d), face.mask) {
                return Err(Error::NotAFace);
            }
            Ok(f.terms_on_hyperplane(q, d))
        }
        _ if face.mask == p.full_mask() => Ok(f.clone()),
        _ => Err(Error::NotAFace),
    }
}
