use std::collections::BTreeSet;

use galeproj::gale::{positively_dependent, positively_spanning, VectorConfig};
use galeproj::linalg::{Matrix, Vector};
use galeproj::lp::{lp_feasible, LinConstraint};
use galeproj::polytopes::HPolytope;
use galeproj::projections::{
    face_comb_equiv, face_preserved, face_strictly_preserved, make_setup, make_setup_with_kernel, oracle_survival,
    vertex_survival_census,
};
use galeproj::{Rat, Scalar};
use itertools::Itertools;
use proptest::prelude::*;

fn vecs(raw: &[Vec<i64>]) -> Vec<Vector<Rat>> {
    raw.iter().map(|v| Vector::from_ints(v)).collect()
}

/// Planar oracle in integers: the vectors positively span the plane iff no
/// closed half-plane through the origin contains all of them. A containing
/// half-plane can be rotated until its boundary hits one of the vectors, so
/// only the normals `+-perp(v_i)` need checking.
fn spans_plane(vs: &[Vec<i64>]) -> bool {
    if vs.iter().all(|v| v == &[0, 0]) {
        return false;
    }
    !vs.iter().filter(|v| *v != &[0, 0]).any(|v| {
        [[-v[1], v[0]], [v[1], -v[0]]]
            .iter()
            .any(|c| vs.iter().all(|w| c[0] * w[0] + c[1] * w[1] >= 0))
    })
}

fn small_vectors(dim: usize, max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 1..=max)
}

proptest! {
    #[test]
    fn spanning_matches_planar_oracle(vs in small_vectors(2, 6)) {
        prop_assert_eq!(positively_spanning(2, &vecs(&vs)).unwrap(), spans_plane(&vs));
    }

    /// Positive spanning is full rank plus a strictly positive dependence.
    #[test]
    fn spanning_is_rank_plus_dependence(vs in small_vectors(3, 6)) {
        let v = vecs(&vs);
        let rank = Matrix::from_rows(3, v.clone()).unwrap().rank();
        prop_assert_eq!(
            positively_spanning(3, &v).unwrap(),
            rank == 3 && positively_dependent(3, &v).unwrap()
        );
    }

    #[test]
    fn spanning_in_one_dimension(xs in prop::collection::vec(-3i64..=3, 1..6)) {
        let v: Vec<Vector<Rat>> = xs.iter().map(|&x| Vector::from_ints(&[x])).collect();
        let expected = xs.iter().any(|&x| x > 0) && xs.iter().any(|&x| x < 0);
        prop_assert_eq!(positively_spanning(1, &v).unwrap(), expected);
    }
}

/// A cube `[-1,1]^n` with extra cuts `c . x <= 1`; rejects redundant cuts.
fn cut_cube(n: usize, cuts: &[Vec<i64>]) -> Option<HPolytope<Rat>> {
    let mut rows = Vec::new();
    for i in 0..n {
        rows.push(Vector::unit(n, i));
        rows.push(Vector::unit(n, i).neg());
    }
    rows.extend(cuts.iter().map(|c| Vector::from_ints(c)));
    let m = rows.len();
    HPolytope::with_default_labels(Matrix::from_rows(n, rows).ok()?, Vector::from_ints(&vec![1; m])).ok()
}

fn instance() -> impl Strategy<Value = (usize, Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    (2usize..=3).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(prop::collection::vec(-2i64..=2, n), 0..=2),
            (1..n).prop_flat_map(move |d| prop::collection::vec(prop::collection::vec(-3i64..=3, n), d)),
        )
    })
}

fn int_rows(m: &[Vec<i64>]) -> Matrix<Rat> {
    let refs: Vec<&[i64]> = m.iter().map(Vec::as_slice).collect();
    Matrix::from_ints(&refs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The dual-face census agrees with projecting the vertices, and
    /// strictness implies the two weaker predicates.
    #[test]
    fn census_matches_oracle((n, cuts, proj) in instance()) {
        let p = cut_cube(n, &cuts);
        prop_assume!(p.is_some());
        let p = p.unwrap();
        let pi = int_rows(&proj);
        prop_assume!(pi.rank() == pi.nrows());
        let s = make_setup(&p, &pi).unwrap();
        let census = vertex_survival_census(&s).unwrap();
        prop_assert_eq!(&census, &oracle_survival(&s).unwrap());
        for v in p.vertices() {
            let f = &v.tight_facets;
            let strict = face_strictly_preserved(&s, f).unwrap();
            let pres = face_preserved(&s, f).unwrap();
            let comb = face_comb_equiv(&s, f).unwrap();
            // the converse fails when 0 is on the boundary of conv g_I
            prop_assert!(!strict || (pres && comb));
        }
    }

    /// Any other kernel basis `K U` gives the same census.
    #[test]
    fn census_ignores_kernel_basis((n, cuts, proj) in instance(), u in prop::collection::vec(-2i64..=2, 4)) {
        let p = cut_cube(n, &cuts);
        prop_assume!(p.is_some());
        let p = p.unwrap();
        let pi = int_rows(&proj);
        prop_assume!(pi.rank() == pi.nrows());
        let s = make_setup(&p, &pi).unwrap();
        let k = s.kernel().clone();
        let m = k.ncols();
        let mut um = Matrix::<Rat>::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                um.set(i, j, Rat::from_int(u[(i * m + j) % u.len()] + i64::from(i == j) * 5));
            }
        }
        prop_assume!(um.rank() == m);
        let s2 = make_setup_with_kernel(&p, &pi, k.mul(&um).unwrap()).unwrap();
        prop_assert_eq!(vertex_survival_census(&s).unwrap(), vertex_survival_census(&s2).unwrap());
    }
}

/// Face test by linear programming on the vertex set: `S` is a face iff
/// some `c` has `c . v = 1` on `S` and `c . w < 1` off it.
fn lp_face(points: &[Vector<Rat>], s: &[usize]) -> bool {
    let dim = points[0].dim();
    let cons: Vec<LinConstraint<Rat>> = points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            if s.contains(&i) {
                LinConstraint::eq(p.clone(), Rat::from_int(1))
            } else {
                LinConstraint::lt(p.clone(), Rat::from_int(1))
            }
        })
        .collect();
    lp_feasible(dim, &cons).unwrap().is_feasible()
}

/// Gale transform of the cross-polytope: both copies of `e_i` map to the
/// same `u_i`, where `u_1..u_d` are the vertices of a simplex around 0.
fn cross_gale(d: usize) -> VectorConfig<Rat> {
    let mut us: Vec<Vector<Rat>> = (0..d - 1).map(|i| Vector::unit(d - 1, i)).collect();
    us.push(Vector::from_ints(&vec![-1; d - 1]));
    let vs = us.iter().flat_map(|u| [u.clone(), u.clone()]).collect();
    VectorConfig::with_default_labels(d - 1, vs).unwrap()
}

#[test]
fn cross_polytope_faces_two_ways() {
    for d in 2..=4 {
        let points: Vec<Vector<Rat>> = (0..d).flat_map(|i| [Vector::unit(d, i), Vector::unit(d, i).neg()]).collect();
        let g = cross_gale(d);
        assert!(g.is_gale_transform().unwrap());
        for k in 1..=d {
            let lp: BTreeSet<BTreeSet<usize>> = (0..2 * d)
                .combinations(k)
                .filter(|s| lp_face(&points, s))
                .map(|s| s.into_iter().map(|i| i + 1).collect())
                .collect();
            let gale: BTreeSet<BTreeSet<usize>> = g.gale_faces_of_card(k).unwrap().into_iter().collect();
            assert_eq!(lp, gale, "d={d} k={k}");
            let binom = (0..k).fold(1usize, |acc, i| acc * (d - i) / (i + 1));
            assert_eq!(gale.len(), (1 << k) * binom, "d={d} k={k}");
        }
    }
}
