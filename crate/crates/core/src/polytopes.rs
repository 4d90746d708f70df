//! H- and V-polytopes, vertex enumeration and Minkowski sums.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::gale::{positively_spanning, VectorConfig};
use crate::linalg::{Matrix, Vector};
use crate::lp::{lp_feasible, nonneg_solution, LinConstraint};
use crate::scalar::Scalar;

/// `{x : A x <= b}`, bounded, full-dimensional and irredundant, with one
/// label per inequality (facet).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope<T> {
    a: Matrix<T>,
    b: Vector<T>,
    labels: Vec<usize>,
}

/// A vertex (or more generally a face) addressed by the labels of the facets
/// containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRecord<T> {
    pub tight_facets: BTreeSet<usize>,
    pub vertex_coords: Option<Vector<T>>,
}

impl<T: Scalar> HPolytope<T> {
    /// Validates boundedness, full dimension and irredundancy.
    pub fn new(a: Matrix<T>, b: Vector<T>, labels: Vec<usize>) -> Result<Self> {
        let p = Self::new_unchecked(a, b, labels)?;
        p.validate()?;
        Ok(p)
    }

    /// Labels `1..=m`.
    pub fn with_default_labels(a: Matrix<T>, b: Vector<T>) -> Result<Self> {
        let labels = (1..=a.nrows()).collect();
        Self::new(a, b, labels)
    }

    /// Checks shapes and labels only.
    pub(crate) fn new_unchecked(a: Matrix<T>, b: Vector<T>, labels: Vec<usize>) -> Result<Self> {
        if b.dim() != a.nrows() {
            return Err(Error::DimensionMismatch { expected: a.nrows(), found: b.dim() });
        }
        if labels.len() != a.nrows() {
            return Err(Error::DimensionMismatch { expected: a.nrows(), found: labels.len() });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(*l) {
                return Err(Error::DuplicateLabel(l.to_string()));
            }
        }
        if a.ncols() == 0 {
            return Err(Error::InvalidInput("polytope of ambient dimension 0".into()));
        }
        Ok(Self { a, b, labels })
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        let rows: Vec<Vector<T>> = self.a.rows().collect();
        if !positively_spanning(n, &rows)? {
            return Err(Error::Unbounded);
        }
        let relaxed: Vec<_> =
            rows.iter().zip(self.b.iter()).map(|(r, b)| LinConstraint::le(r.clone(), b.clone())).collect();
        if !lp_feasible(n, &relaxed)?.is_feasible() {
            return Err(Error::Empty);
        }
        if self.interior_point()?.is_none() {
            return Err(Error::NotFullDimensional);
        }
        for i in 0..rows.len() {
            let mut cs: Vec<_> = relaxed
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, c)| c.clone())
                .collect();
            cs.push(LinConstraint::gt(rows[i].clone(), self.b[i].clone()));
            if !lp_feasible(n, &cs)?.is_feasible() {
                return Err(Error::RedundantInequality(self.labels[i]));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.a.ncols()
    }

    pub fn num_facets(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &Matrix<T> {
        &self.a
    }

    pub fn b(&self) -> &Vector<T> {
        &self.b
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label_index(&self, label: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn contains(&self, x: &Vector<T>) -> bool {
        self.a.rows().zip(self.b.iter()).all(|(r, b)| r.dot(x) <= *b)
    }

    /// Labels of the inequalities tight at `x`.
    pub fn tight_set(&self, x: &Vector<T>) -> BTreeSet<usize> {
        self.a
            .rows()
            .zip(self.b.iter())
            .zip(&self.labels)
            .filter(|((r, b), _)| r.dot(x) == **b)
            .map(|(_, &l)| l)
            .collect()
    }

    /// A point with `A x < b`, found by maximizing the common slack.
    pub fn interior_point(&self) -> Result<Option<Vector<T>>> {
        let cs: Vec<_> = self
            .a
            .rows()
            .zip(self.b.iter())
            .map(|(r, b)| LinConstraint::lt(r, b.clone()))
            .collect();
        Ok(lp_feasible(self.dim(), &cs)?.witness)
    }

    /// All vertices with their full tight sets, by solving every
    /// `n x n` subsystem and keeping the feasible solutions.
    pub fn vertices(&self) -> Vec<FaceRecord<T>> {
        let n = self.dim();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for rows in (0..self.num_facets()).combinations(n) {
            let sub = Matrix::from_rows(n, rows.iter().map(|&i| self.a.row(i)).collect())
                .expect("rows share the ambient dimension");
            let rhs: Vector<T> = rows.iter().map(|&i| self.b[i].clone()).collect();
            let Some(x) = sub.solve(&rhs).expect("square system") else {
                continue;
            };
            if !self.contains(&x) || !seen.insert(x.clone()) {
                continue;
            }
            out.push(FaceRecord { tight_facets: self.tight_set(&x), vertex_coords: Some(x) });
        }
        out
    }

    pub fn is_simple(&self) -> bool {
        self.vertices().iter().all(|v| v.tight_facets.len() == self.dim())
    }

    /// Cartesian product; the block-diagonal system with `self`'s labels
    /// first and `other`'s labels shifted past them.
    pub fn product(&self, other: &Self) -> Self {
        let (n1, n2) = (self.dim(), other.dim());
        let shift = self.labels.iter().copied().max().unwrap_or(0);
        let mut rows = Vec::with_capacity(self.num_facets() + other.num_facets());
        for r in self.a.rows() {
            rows.push(r.concat(&Vector::zeros(n2)));
        }
        for r in other.a.rows() {
            rows.push(Vector::zeros(n1).concat(&r));
        }
        let a = Matrix::from_rows(n1 + n2, rows).expect("block rows");
        let b = self.b.concat(&other.b);
        let labels = self.labels.iter().copied().chain(other.labels.iter().map(|l| l + shift)).collect();
        Self { a, b, labels }
    }

    /// The polytope `self - shift`.
    pub fn translate(&self, shift: &Vector<T>) -> Self {
        let b = self
            .a
            .rows()
            .zip(self.b.iter())
            .map(|(r, b)| b.sub_ref(&r.dot(shift)))
            .collect();
        Self { a: self.a.clone(), b, labels: self.labels.clone() }
    }

    /// Translated copy with the origin in the interior together with the
    /// translation applied. A polytope whose right-hand sides are already
    /// positive is returned unchanged.
    pub fn recentre_with_shift(&self) -> Result<(Self, Vector<T>)> {
        if self.b.iter().all(Signed::is_positive) {
            return Ok((self.clone(), Vector::zeros(self.dim())));
        }
        let x0 = self.interior_point()?.ok_or(Error::NotFullDimensional)?;
        Ok((self.translate(&x0), x0))
    }

    pub fn recentre(&self) -> Result<Self> {
        Ok(self.recentre_with_shift()?.0)
    }

    /// Vertices `a_i / b_i` of the polar dual, labelled by facet.
    pub fn dual_generators(&self) -> Result<VectorConfig<T>> {
        let mut vectors = Vec::with_capacity(self.num_facets());
        for (i, r) in self.a.rows().enumerate() {
            let b = &self.b[i];
            if !b.is_positive() {
                return Err(Error::OriginNotInterior { label: self.labels[i], value: b.to_string() });
            }
            vectors.push(r.scale(&T::one().div_ref(b)));
        }
        VectorConfig::new(self.dim(), vectors, self.labels.clone())
    }
}

/// A finite point set; its convex hull is the polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolytope<T> {
    points: Vec<Vector<T>>,
    dim: usize,
}

impl<T: Scalar> VPolytope<T> {
    pub fn new(dim: usize, points: Vec<Vector<T>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("V-polytope without points".into()));
        }
        let mut seen = HashSet::new();
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
            }
            if !seen.insert(p) {
                return Err(Error::InvalidInput(format!("repeated point {p:?}")));
            }
        }
        Ok(Self { points, dim })
    }

    pub fn from_ints(points: &[&[i64]]) -> Result<Self> {
        let dim = points.first().map_or(0, |p| p.len());
        Self::new(dim, points.iter().map(|p| Vector::from_ints(p)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vector<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn hull_vertices(&self) -> Vec<usize> {
        hull_vertices(&self.points)
    }

    /// Number of vertices of the convex hull.
    pub fn f0(&self) -> usize {
        self.hull_vertices().len()
    }

    /// Copy keeping only the hull vertices.
    pub fn vertices_only(&self) -> Self {
        let points = self.hull_vertices().into_iter().map(|i| self.points[i].clone()).collect();
        Self { points, dim: self.dim }
    }

    pub fn affine_dim(&self) -> usize {
        let base = &self.points[0];
        let diffs: Vec<_> = self.points[1..].iter().map(|p| p.sub(base)).collect();
        Matrix::from_rows(self.dim, diffs).expect("equal dims").rank()
    }

    pub fn translate(&self, shift: &Vector<T>) -> Self {
        Self { points: self.points.iter().map(|p| p.add(shift)).collect(), dim: self.dim }
    }

    /// Facet description of a full-dimensional hull, labels `1..=m`.
    ///
    /// Every affinely independent `dim`-subset of vertices spans a candidate
    /// hyperplane; candidates with vertices strictly on both sides are
    /// dropped and the rest are normalized and deduplicated.
    pub fn facet_description(&self) -> Result<HPolytope<T>> {
        let d = self.dim;
        if self.affine_dim() < d {
            return Err(Error::NotFullDimensional);
        }
        let verts: Vec<Vector<T>> =
            self.hull_vertices().into_iter().map(|i| self.points[i].clone()).collect();
        let mut seen = HashSet::new();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for subset in (0..verts.len()).combinations(d) {
            let through: Vec<Vector<T>> =
                subset.iter().map(|&i| verts[i].concat(&Vector::new(vec![-T::one()]))).collect();
            let m = Matrix::from_rows(d + 1, through).expect("equal dims");
            let Ok(k) = m.kernel_basis() else {
                continue;
            };
            if k.ncols() != 1 {
                continue;
            }
            let mut h = k.column(0);
            let normal = Vector::new(h.entries()[..d].to_vec());
            let offset = h[d].clone();
            let sides: Vec<T> = verts.iter().map(|v| normal.dot(v).sub_ref(&offset)).collect();
            let pos = sides.iter().any(Signed::is_positive);
            let neg = sides.iter().any(Signed::is_negative);
            if pos && neg {
                continue;
            }
            if pos {
                h = h.neg();
            }
            let lead = h.iter().find(|x| !x.is_zero()).expect("nonzero normal").abs();
            let h = h.scale(&T::one().div_ref(&lead));
            if seen.insert(h.clone()) {
                rows.push(Vector::new(h.entries()[..d].to_vec()));
                rhs.push(h[d].clone());
            }
        }
        HPolytope::with_default_labels(Matrix::from_rows(d, rows)?, Vector::new(rhs))
    }
}

/// Indices of points that are vertices of the convex hull. Repeated points
/// are reported once, at their first occurrence.
///
/// A point is a vertex iff it is not a convex combination of the points
/// different from it (one small nonnegative feasibility problem per point).
/// Points already known to be interior are left out of later problems; the
/// hull does not change without them.
pub fn hull_vertices<T: Scalar>(points: &[Vector<T>]) -> Vec<usize> {
    let mut distinct: Vec<usize> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if !points[..i].contains(p) {
            distinct.push(i);
        }
    }
    let mut alive = vec![true; points.len()];
    let mut out = Vec::new();
    for &i in &distinct {
        let others: Vec<&Vector<T>> = distinct.iter().filter(|&&j| j != i && alive[j]).map(|&j| &points[j]).collect();
        if others.is_empty() || !in_convex_hull(&points[i], &others) {
            out.push(i);
        } else {
            alive[i] = false;
        }
    }
    out
}

/// Exact convex-hull membership.
pub fn in_convex_hull<T: Scalar>(p: &Vector<T>, points: &[&Vector<T>]) -> bool {
    if points.is_empty() {
        return false;
    }
    let d = p.dim();
    let mut a = Matrix::zeros(d + 1, points.len());
    for (j, q) in points.iter().enumerate() {
        for i in 0..d {
            a.set(i, j, q[i].clone());
        }
        a.set(d, j, T::one());
    }
    let rhs = p.concat(&Vector::new(vec![T::one()]));
    nonneg_solution(&a, &rhs).expect("consistent shapes").is_some()
}

/// Whether `sum_i points_i[choice_i]` is a vertex of the Minkowski sum:
/// some direction `c` is maximized uniquely at every chosen vertex.
pub fn minkowski_vertex_test<T: Scalar>(choice: &[usize], polys: &[VPolytope<T>]) -> Result<bool> {
    if choice.len() != polys.len() {
        return Err(Error::DimensionMismatch { expected: polys.len(), found: choice.len() });
    }
    let Some(first) = polys.first() else {
        return Ok(true);
    };
    let d = first.dim();
    let mut cs = Vec::new();
    for (&i, p) in choice.iter().zip(polys) {
        if p.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
        }
        let v = p.points().get(i).ok_or(Error::IndexOutOfRange { index: i, len: p.len() })?;
        for (j, w) in p.points().iter().enumerate() {
            if j != i {
                cs.push(LinConstraint::gt(v.sub(w), T::zero()));
            }
        }
    }
    Ok(lp_feasible(d, &cs)?.is_feasible())
}

/// Every vertex of `P_1 + ... + P_r` with the vertex tuple it comes from,
/// in lexicographic order of the tuples.
pub fn minkowski_sum_vertices<T: Scalar>(polys: &[VPolytope<T>]) -> Result<Vec<(Vec<usize>, Vector<T>)>> {
    let Some(first) = polys.first() else {
        return Ok(Vec::new());
    };
    let d = first.dim();
    if let Some(p) = polys.iter().find(|p| p.dim() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: p.dim() });
    }
    let mut out = Vec::new();
    for choice in polys.iter().map(|p| 0..p.len()).multi_cartesian_product() {
        if minkowski_vertex_test(&choice, polys)? {
            out.push((choice.clone(), tuple_sum(&choice, polys)));
        }
    }
    Ok(out)
}

/// `sum_i polys[i].points()[choice[i]]`.
pub fn tuple_sum<T: Scalar>(choice: &[usize], polys: &[VPolytope<T>]) -> Vector<T> {
    let mut acc = Vector::zeros(polys[0].dim());
    for (&i, p) in choice.iter().zip(polys) {
        acc = acc.add(&p.points()[i]);
    }
    acc
}

/// `prod f0(P_i)`, the number of vertex tuples.
pub fn trivial_upper_bound(f0s: &[usize]) -> BigUint {
    f0s.iter().fold(BigUint::one(), |acc, &f| acc * BigUint::from(f))
}

/// `P + Q` as the image of `P x Q` under `(x, y) -> x + y`: the product's
/// inequality description and the projection matrix `[I | I]`.
pub fn sum_as_projection<T: Scalar>(p: &VPolytope<T>, q: &VPolytope<T>) -> Result<(HPolytope<T>, Matrix<T>)> {
    let d = p.dim();
    if q.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: q.dim() });
    }
    let prod = p.facet_description()?.product(&q.facet_description()?);
    let mut proj = Matrix::zeros(d, 2 * d);
    for i in 0..d {
        proj.set(i, i, T::one());
        proj.set(i, d + i, T::one());
    }
    Ok((prod, proj))
}
