//! Vector configurations, positive spanning and Gale-dual faces.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::lp::{lp_feasible, nonneg_solution, LinConstraint};
use crate::scalar::Scalar;

/// Largest cardinality enumerated by [`VectorConfig::gale_faces_of_card`]
/// unless a larger cap is passed explicitly.
pub const DEFAULT_FACE_CARD_CAP: usize = 8;

/// A labelled finite family of vectors in `R^dim`. Repeated vectors are
/// allowed; labels are distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorConfig<T> {
    dim: usize,
    vectors: Vec<Vector<T>>,
    labels: Vec<usize>,
}

impl<T: Scalar> VectorConfig<T> {
    pub fn new(dim: usize, vectors: Vec<Vector<T>>, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != vectors.len() {
            return Err(Error::DimensionMismatch { expected: vectors.len(), found: labels.len() });
        }
        if let Some(v) = vectors.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: v.dim() });
        }
        let mut seen = HashSet::new();
        if let Some(l) = labels.iter().find(|l| !seen.insert(**l)) {
            return Err(Error::DuplicateLabel(l.to_string()));
        }
        Ok(Self { dim, vectors, labels })
    }

    /// Labels `1..=len`.
    pub fn with_default_labels(dim: usize, vectors: Vec<Vector<T>>) -> Result<Self> {
        let labels = (1..=vectors.len()).collect();
        Self::new(dim, vectors, labels)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        let dim = rows.first().map_or(0, |r| r.len());
        Self::with_default_labels(dim, rows.iter().map(|r| Vector::from_ints(r)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vector<T>] {
        &self.vectors
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn index_of(&self, label: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn get(&self, label: usize) -> Option<&Vector<T>> {
        self.index_of(label).map(|i| &self.vectors[i])
    }

    /// The vectors with the given labels.
    pub fn select(&self, labels: &BTreeSet<usize>) -> Result<Vec<Vector<T>>> {
        labels
            .iter()
            .map(|&l| self.get(l).cloned().ok_or_else(|| Error::UnknownLabel(l.to_string())))
            .collect()
    }

    /// Labels not in `labels`, in configuration order.
    pub fn complement(&self, labels: &BTreeSet<usize>) -> BTreeSet<usize> {
        self.labels.iter().copied().filter(|l| !labels.contains(l)).collect()
    }

    /// Image under a linear map.
    pub fn map(&self, m: &Matrix<T>) -> Result<Self> {
        let vectors = self.vectors.iter().map(|v| m.mul_vec(v)).collect::<Result<_>>()?;
        Self::new(m.nrows(), vectors, self.labels.clone())
    }

    pub fn rank(&self) -> usize {
        Matrix::from_rows(self.dim, self.vectors.clone()).expect("equal dims").rank()
    }

    pub fn positively_spanning(&self) -> Result<bool> {
        positively_spanning(self.dim, &self.vectors)
    }

    pub fn positively_dependent(&self) -> Result<bool> {
        positively_dependent(self.dim, &self.vectors)
    }

    /// Every single deletion still spans positively, i.e. the configuration
    /// is the Gale transform of the vertex set of a polytope.
    pub fn is_gale_transform(&self) -> Result<bool> {
        if self.len() < self.dim + 1 {
            return Ok(false);
        }
        for skip in 0..self.len() {
            let rest: Vec<_> =
                self.vectors.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, v)| v.clone()).collect();
            if !positively_spanning(self.dim, &rest)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `coface` is a face of the dual polytope: the vectors outside
    /// it are positively dependent. The full label set is always a face.
    pub fn gale_face_test(&self, coface: &BTreeSet<usize>) -> Result<bool> {
        if let Some(l) = coface.iter().find(|l| self.index_of(**l).is_none()) {
            return Err(Error::UnknownLabel(l.to_string()));
        }
        if !self.is_gale_transform()? {
            return Err(Error::NotGale);
        }
        self.face_test_unchecked(coface)
    }

    pub(crate) fn face_test_unchecked(&self, coface: &BTreeSet<usize>) -> Result<bool> {
        let rest = self.select(&self.complement(coface))?;
        if rest.is_empty() {
            return Ok(true);
        }
        positively_dependent(self.dim, &rest)
    }

    /// All faces with exactly `k` labels, in lexicographic order.
    pub fn gale_faces_of_card(&self, k: usize) -> Result<Vec<BTreeSet<usize>>> {
        self.gale_faces_of_card_capped(k, DEFAULT_FACE_CARD_CAP)
    }

    pub fn gale_faces_of_card_capped(&self, k: usize, cap: usize) -> Result<Vec<BTreeSet<usize>>> {
        if k > cap {
            return Err(Error::InvalidInput(format!("face cardinality {k} exceeds the cap {cap}")));
        }
        if k > self.len() {
            return Err(Error::InvalidInput(format!("face cardinality {k} exceeds {} labels", self.len())));
        }
        if !self.is_gale_transform()? {
            return Err(Error::NotGale);
        }
        let mut sorted = self.labels.clone();
        sorted.sort_unstable();
        let mut out = Vec::new();
        for subset in sorted.into_iter().combinations(k) {
            let s: BTreeSet<usize> = subset.into_iter().collect();
            if self.face_test_unchecked(&s)? {
                out.push(s);
            }
        }
        Ok(out)
    }

    /// Every `dim`-subset is linearly independent.
    pub fn general_position(&self) -> bool {
        if self.len() < self.dim {
            return true;
        }
        (0..self.len()).combinations(self.dim).all(|idx| {
            let m = Matrix::from_rows(self.dim, idx.iter().map(|&i| self.vectors[i].clone()).collect())
                .expect("equal dims");
            !m.determinant().expect("square").is_zero()
        })
    }

    /// Whether every facet (given by labels) is a face of the dual polytope.
    pub fn realizes_all(&self, facets: &[BTreeSet<usize>]) -> Result<bool> {
        if !self.is_gale_transform()? {
            return Err(Error::NotGale);
        }
        for f in facets {
            if let Some(l) = f.iter().find(|l| self.index_of(**l).is_none()) {
                return Err(Error::UnknownLabel(l.to_string()));
            }
            if !self.face_test_unchecked(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn check_dims<T: Scalar>(dim: usize, vectors: &[Vector<T>]) -> Result<()> {
    match vectors.iter().find(|v| v.dim() != dim) {
        Some(v) => Err(Error::DimensionMismatch { expected: dim, found: v.dim() }),
        None => Ok(()),
    }
}

/// Whether the nonnegative combinations of `vectors` are all of `R^dim`.
///
/// By Gordan's alternative this fails iff some `c != 0` has `<c, w> <= 0`
/// for every `w`. Such a `c` can be normalized to `|c_k| <= 1` with one
/// coordinate equal to `+1` or `-1`, giving `2 dim` small feasibility
/// problems.
pub fn positively_spanning<T: Scalar>(dim: usize, vectors: &[Vector<T>]) -> Result<bool> {
    check_dims(dim, vectors)?;
    if dim == 0 {
        return Ok(true);
    }
    if vectors.len() <= dim {
        return Ok(false);
    }
    let base: Vec<LinConstraint<T>> = vectors
        .iter()
        .map(|w| LinConstraint::le(w.clone(), T::zero()))
        .chain((0..dim).flat_map(|k| {
            [
                LinConstraint::le(Vector::unit(dim, k), T::one()),
                LinConstraint::ge(Vector::unit(dim, k), -T::one()),
            ]
        }))
        .collect();
    for j in 0..dim {
        for sign in [T::one(), -T::one()] {
            let mut cs = base.clone();
            cs.push(LinConstraint::eq(Vector::unit(dim, j), sign));
            if lp_feasible(dim, &cs)?.is_feasible() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `sum lambda_i w_i = 0` for some weights all `>= 1`, i.e. zero lies
/// in the relative interior of the convex hull. Substituting
/// `lambda = 1 + mu` turns it into `sum mu_i w_i = -sum w_i, mu >= 0`.
pub fn positively_dependent<T: Scalar>(dim: usize, vectors: &[Vector<T>]) -> Result<bool> {
    check_dims(dim, vectors)?;
    if vectors.is_empty() {
        return Err(Error::InvalidInput("positive dependence of an empty family".into()));
    }
    let a = Matrix::from_columns(dim, vectors)?;
    let total = vectors.iter().fold(Vector::zeros(dim), |acc, w| acc.add(w));
    Ok(nonneg_solution(&a, &total.neg())?.is_some())
}
