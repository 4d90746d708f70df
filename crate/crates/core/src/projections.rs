//! Projections of H-polytopes and which faces survive them.
//!
//! A setup fixes `P = {x : A x <= b}` with the origin inside, a surjection
//! `proj : R^n -> R^d` and a basis of its kernel. Each facet normal
//! `l_i = a_i / b_i` is restricted to the kernel, giving `g_i = kernel^T l_i`.
//! A face with tight set `I` survives as a face of the same type with a
//! trivial fiber iff `{g_i : i in I}` positively spans the kernel's dual.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::complexes::{Complex, Label};
use crate::error::{Error, Result};
use crate::gale::{positively_spanning, VectorConfig};
use crate::linalg::{Matrix, Vector};
use crate::polytopes::{hull_vertices, in_convex_hull, FaceRecord, HPolytope};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionSetup<T> {
    polytope: HPolytope<T>,
    proj: Matrix<T>,
    kernel: Matrix<T>,
    g_images: VectorConfig<T>,
}

/// One vertex of `P` in a census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexRecord {
    pub facets: Vec<usize>,
    pub strict: bool,
    pub preserved: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurvivalReport {
    pub vertices: Vec<VertexRecord>,
    pub total: usize,
    pub surviving: usize,
    pub image_vertex_count: usize,
}

impl SurvivalReport {
    pub fn failing(&self) -> impl Iterator<Item = &VertexRecord> {
        self.vertices.iter().filter(|v| !v.strict)
    }

    pub fn all_survive(&self) -> bool {
        self.surviving == self.total
    }
}

/// `A(P, proj)` given through its Gale dual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatedPolytope<T> {
    pub gale: VectorConfig<T>,
    pub dim: usize,
    pub num_vertices: usize,
    /// The Gale vectors are in general position, which makes the polytope
    /// simplicial; the converse can fail.
    pub general_position: bool,
}

impl<T: Scalar> ProjectionSetup<T> {
    pub fn polytope(&self) -> &HPolytope<T> {
        &self.polytope
    }

    pub fn proj(&self) -> &Matrix<T> {
        &self.proj
    }

    pub fn kernel(&self) -> &Matrix<T> {
        &self.kernel
    }

    pub fn g_images(&self) -> &VectorConfig<T> {
        &self.g_images
    }

    /// `n - d`.
    pub fn kernel_dim(&self) -> usize {
        self.kernel.ncols()
    }

    fn g_set(&self, labels: &BTreeSet<usize>) -> Result<Vec<Vector<T>>> {
        self.g_images.select(labels)
    }
}

/// Builds a setup with the kernel basis read off the reduced row echelon form.
pub fn make_setup<T: Scalar>(polytope: &HPolytope<T>, proj: &Matrix<T>) -> Result<ProjectionSetup<T>> {
    check_proj(polytope, proj)?;
    let kernel = proj.kernel_basis()?;
    make_setup_with_kernel(polytope, proj, kernel)
}

/// Same as [`make_setup`] with a caller-chosen kernel basis.
pub fn make_setup_with_kernel<T: Scalar>(
    polytope: &HPolytope<T>,
    proj: &Matrix<T>,
    kernel: Matrix<T>,
) -> Result<ProjectionSetup<T>> {
    check_proj(polytope, proj)?;
    let n = polytope.dim();
    let d = proj.nrows();
    if kernel.nrows() != n {
        return Err(Error::DimensionMismatch { expected: n, found: kernel.nrows() });
    }
    if kernel.ncols() != n - d {
        return Err(Error::DimensionMismatch { expected: n - d, found: kernel.ncols() });
    }
    let rank = kernel.rank();
    if rank != n - d {
        return Err(Error::RankDeficient { rank, expected: n - d });
    }
    if proj.mul(&kernel)?.rows().any(|r| !r.is_zero()) {
        return Err(Error::InvalidInput("kernel columns are not in the kernel of the projection".into()));
    }
    let g_images = polytope.dual_generators()?.map(&kernel.transpose())?;
    Ok(ProjectionSetup { polytope: polytope.clone(), proj: proj.clone(), kernel, g_images })
}

fn check_proj<T: Scalar>(polytope: &HPolytope<T>, proj: &Matrix<T>) -> Result<()> {
    let n = polytope.dim();
    if proj.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: proj.ncols() });
    }
    if proj.nrows() >= n {
        return Err(Error::InvalidInput(format!("projection to R^{} from R^{n} has a trivial kernel", proj.nrows())));
    }
    let rank = proj.rank();
    if rank != proj.nrows() {
        return Err(Error::RankDeficient { rank, expected: proj.nrows() });
    }
    Ok(())
}

/// `proj(F)` is a face of `proj(P)`: the origin lies in `conv{g_i : i in I}`.
pub fn face_preserved<T: Scalar>(s: &ProjectionSetup<T>, face: &BTreeSet<usize>) -> Result<bool> {
    let gs = s.g_set(face)?;
    let refs: Vec<&Vector<T>> = gs.iter().collect();
    Ok(in_convex_hull(&Vector::zeros(s.kernel_dim()), &refs))
}

/// `proj(F)` has the dimension of `F`: the `g_i` affinely span the kernel's dual.
pub fn face_comb_equiv<T: Scalar>(s: &ProjectionSetup<T>, face: &BTreeSet<usize>) -> Result<bool> {
    let gs = s.g_set(face)?;
    let Some((first, rest)) = gs.split_first() else {
        return Ok(s.kernel_dim() == 0);
    };
    let diffs = rest.iter().map(|g| g.sub(first)).collect();
    Ok(Matrix::from_rows(s.kernel_dim(), diffs)?.rank() == s.kernel_dim())
}

/// The Projection Lemma test: the `g_i` positively span.
pub fn face_strictly_preserved<T: Scalar>(s: &ProjectionSetup<T>, face: &BTreeSet<usize>) -> Result<bool> {
    positively_spanning(s.kernel_dim(), &s.g_set(face)?)
}

fn projected_vertices<T: Scalar>(s: &ProjectionSetup<T>, verts: &[FaceRecord<T>]) -> Vec<Vector<T>> {
    verts
        .iter()
        .map(|v| s.proj.mul_vec(v.vertex_coords.as_ref().expect("enumerated vertex")).expect("shapes"))
        .collect()
}

fn report(vertices: Vec<VertexRecord>, image_vertex_count: usize) -> SurvivalReport {
    let total = vertices.len();
    let surviving = vertices.iter().filter(|v| v.strict).count();
    SurvivalReport { vertices, total, surviving, image_vertex_count }
}

/// Classifies every vertex of `P` with the dual-face predicates.
pub fn vertex_survival_census<T: Scalar>(s: &ProjectionSetup<T>) -> Result<SurvivalReport> {
    let verts = s.polytope.vertices();
    let mut records = Vec::with_capacity(verts.len());
    for v in &verts {
        records.push(VertexRecord {
            facets: v.tight_facets.iter().copied().collect(),
            strict: face_strictly_preserved(s, &v.tight_facets)?,
            preserved: face_preserved(s, &v.tight_facets)?,
        });
    }
    let images = projected_vertices(s, &verts);
    Ok(report(records, hull_vertices(&images).len()))
}

/// Classifies every vertex directly in the image: `proj(v)` must be a hull
/// vertex of the projected vertex set, and strictness also needs `v` to be
/// its only preimage among the vertices.
pub fn oracle_survival<T: Scalar>(s: &ProjectionSetup<T>) -> Result<SurvivalReport> {
    let verts = s.polytope.vertices();
    let images = projected_vertices(s, &verts);
    let hull: HashSet<&Vector<T>> = hull_vertices(&images).into_iter().map(|i| &images[i]).collect();
    let records = verts
        .iter()
        .zip(&images)
        .map(|(v, img)| -> Result<VertexRecord> {
            let fiber = images.iter().filter(|w| *w == img).count();
            // on the boundary of the image iff the directions to the other
            // images fail to positively span
            let dirs: Vec<Vector<T>> = images.iter().filter(|w| *w != img).map(|w| w.sub(img)).collect();
            Ok(VertexRecord {
                facets: v.tight_facets.iter().copied().collect(),
                strict: hull.contains(img) && fiber == 1,
                preserved: !positively_spanning(s.proj.nrows(), &dirs)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(report(records, hull.len()))
}

/// The Gale dual description of `A(P, proj)`, defined only when every
/// vertex survives.
pub fn associated_polytope<T: Scalar>(s: &ProjectionSetup<T>) -> Result<AssociatedPolytope<T>> {
    let census = vertex_survival_census(s)?;
    if !census.all_survive() {
        return Err(Error::NotAllVerticesSurvive { failing: census.total - census.surviving, total: census.total });
    }
    if !s.g_images.is_gale_transform()? {
        return Err(Error::SpanningDefect);
    }
    let m = s.g_images.len();
    Ok(AssociatedPolytope {
        gale: s.g_images.clone(),
        dim: m - s.kernel_dim() - 1,
        num_vertices: m,
        general_position: s.g_images.general_position(),
    })
}

/// Boundary complex of the polar dual: one facet `I(v)` per vertex `v`,
/// on the facet labels of `P`.
pub fn dual_boundary_complex<T: Scalar>(p: &HPolytope<T>) -> Complex {
    let mut labels: Vec<usize> = p.labels().to_vec();
    labels.sort_unstable();
    let vertices = labels.iter().map(|&l| Label::Int(l as u64)).collect();
    let facets = p
        .vertices()
        .into_iter()
        .map(|v| v.tight_facets.into_iter().map(|l| Label::Int(l as u64)).collect())
        .collect();
    Complex::closure_from_facets(vertices, facets).expect("tight sets use facet labels")
}

/// Facet labels of a complex whose vertices are integer labels.
pub fn int_facets(k: &Complex) -> Result<Vec<BTreeSet<usize>>> {
    k.facet_labels()
        .into_iter()
        .map(|f| {
            f.into_iter()
                .map(|l| match l {
                    Label::Int(i) => usize::try_from(i).map_err(|_| Error::UnknownLabel(i.to_string())),
                    other => Err(Error::UnknownLabel(other.to_string())),
                })
                .collect()
        })
        .collect()
}

/// Every facet of `K` (on facet labels of `P`) is a face of the polytope
/// Gale-dual to the `g_i`.
pub fn verify_cc_realized<T: Scalar>(s: &ProjectionSetup<T>, k: &Complex) -> Result<bool> {
    s.g_images.realizes_all(&int_facets(k)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    fn set(ls: &[usize]) -> BTreeSet<usize> {
        ls.iter().copied().collect()
    }

    fn pentagon() -> ProjectionSetup<Rat> {
        let a = Matrix::from_ints(&[&[-1, 1], &[1, 2], &[1, 0], &[1, -2], &[-1, -1]]);
        let p = HPolytope::with_default_labels(a, Vector::from_ints(&[1, 2, 1, 2, 1])).unwrap();
        make_setup(&p, &Matrix::from_ints(&[&[1, 0]])).unwrap()
    }

    fn cube() -> HPolytope<Rat> {
        let a = Matrix::from_ints(&[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]]);
        HPolytope::with_default_labels(a, Vector::from_ints(&[1; 6])).unwrap()
    }

    #[test]
    fn pentagon_to_a_line() {
        let s = pentagon();
        assert_eq!(s.kernel_dim(), 1);
        let g: Vec<Vector<Rat>> = [1, 1, 0, -1, -1].iter().map(|&x| Vector::from_ints(&[x])).collect();
        assert_eq!(s.g_images().vectors(), g.as_slice());
        // leftmost vertex: strictly preserved
        let left = set(&[1, 5]);
        assert!(face_strictly_preserved(&s, &left).unwrap());
        assert!(face_preserved(&s, &left).unwrap());
        // top vertex lands inside the shadow
        let top = set(&[1, 2]);
        assert!(!face_preserved(&s, &top).unwrap());
        assert!(!face_strictly_preserved(&s, &top).unwrap());
        // end of the vertical edge: preserved with a two-point fiber
        let corner = set(&[2, 3]);
        assert!(face_preserved(&s, &corner).unwrap());
        assert!(face_comb_equiv(&s, &corner).unwrap());
        assert!(!face_strictly_preserved(&s, &corner).unwrap());
        assert!(!face_comb_equiv(&s, &set(&[3])).unwrap());
        let r = vertex_survival_census(&s).unwrap();
        assert_eq!((r.total, r.surviving, r.image_vertex_count), (5, 1, 2));
    }

    #[test]
    fn pentagon_census_matches_oracle() {
        let s = pentagon();
        assert_eq!(vertex_survival_census(&s).unwrap(), oracle_survival(&s).unwrap());
    }

    #[test]
    fn cube_shadows() {
        let axis = make_setup(&cube(), &Matrix::from_ints(&[&[1, 0, 0], &[0, 1, 0]])).unwrap();
        let r = vertex_survival_census(&axis).unwrap();
        assert_eq!((r.total, r.surviving, r.image_vertex_count), (8, 0, 4));
        assert_eq!(r, oracle_survival(&axis).unwrap());
        let tilted = make_setup(&cube(), &Matrix::from_ints(&[&[1, 1, 0], &[0, 0, 1]])).unwrap();
        let r = vertex_survival_census(&tilted).unwrap();
        assert_eq!((r.total, r.surviving, r.image_vertex_count), (8, 4, 4));
        assert_eq!(r, oracle_survival(&tilted).unwrap());
    }

    #[test]
    fn setup_errors() {
        let c = cube();
        assert_eq!(
            make_setup(&c, &Matrix::from_ints(&[&[1, 0, 0], &[2, 0, 0]])),
            Err(Error::RankDeficient { rank: 1, expected: 2 })
        );
        assert!(make_setup(&c, &Matrix::identity(3)).is_err());
        let off = c.translate(&Vector::from_ints(&[1, 0, 0]));
        assert!(matches!(make_setup(&off, &Matrix::from_ints(&[&[1, 0, 0]])), Err(Error::OriginNotInterior { .. })));
        let s = make_setup(&c, &Matrix::from_ints(&[&[1, 0, 0]])).unwrap();
        assert!(matches!(face_preserved(&s, &set(&[7])), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn segment_shadow_of_square_has_full_survival_only_with_generic_direction() {
        let a = Matrix::from_ints(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let sq = HPolytope::<Rat>::with_default_labels(a, Vector::from_ints(&[1, 1, 1, 1])).unwrap();
        let s = make_setup(&sq, &Matrix::from_ints(&[&[1, 2]])).unwrap();
        let r = vertex_survival_census(&s).unwrap();
        assert_eq!((r.surviving, r.image_vertex_count), (2, 2));
        assert!(matches!(associated_polytope(&s), Err(Error::NotAllVerticesSurvive { failing: 2, total: 4 })));
    }

    #[test]
    fn tetrahedron_to_plane_keeps_all_vertices() {
        let a = Matrix::from_ints(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1], &[1, 1, 1]]);
        let t = HPolytope::<Rat>::with_default_labels(a, Vector::from_ints(&[1, 1, 1, 1])).unwrap();
        let axis = make_setup(&t, &Matrix::from_ints(&[&[1, 0, 0], &[0, 1, 0]])).unwrap();
        let r = vertex_survival_census(&axis).unwrap();
        assert_eq!((r.total, r.surviving, r.image_vertex_count), (4, 2, 3));
        assert_eq!(r, oracle_survival(&axis).unwrap());
        let s = make_setup(&t, &Matrix::from_ints(&[&[1, 0, 1], &[0, 1, 2]])).unwrap();
        let r = vertex_survival_census(&s).unwrap();
        assert_eq!((r.total, r.surviving, r.image_vertex_count), (4, 4, 4));
        assert_eq!(r, oracle_survival(&s).unwrap());
        let ap = associated_polytope(&s).unwrap();
        assert_eq!((ap.dim, ap.num_vertices), (2, 4));
        let k = dual_boundary_complex(&t).complement_complex();
        assert!(verify_cc_realized(&s, &k).unwrap());
    }
}
