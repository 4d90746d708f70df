use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use super::{perturb_to_general_position, PipelineReport};
use crate::complexes::{points_complex, power_join, Complex, Label};
use crate::error::{Error, Result};
use crate::gale::VectorConfig;
use crate::linalg::{Matrix, Vector};
use crate::polytopes::HPolytope;
use crate::projections::{
    associated_polytope, dual_boundary_complex, int_facets, make_setup, oracle_survival, verify_cc_realized,
    vertex_survival_census,
};
use crate::Rat;

/// Seed used for the perturbation step of the example report.
const PERTURBATION_SEED: u64 = 1;

/// Six inequalities in `R^4`: a triangle in `(x1, x2)` times a triangle in
/// `(x3, x4)`, with the coupling `eps` bending the two middle facets.
pub fn example_inequalities(eps: &Rat) -> (Matrix<Rat>, Vector<Rat>) {
    let z = Rat::zero;
    let o = Rat::one;
    let rows = vec![
        Vector::new(vec![o(), o(), z(), z()]),
        Vector::new(vec![-o(), o(), z(), z()]),
        Vector::new(vec![z(), -o(), -eps.clone(), z()]),
        Vector::new(vec![z(), -eps.clone(), -o(), z()]),
        Vector::new(vec![z(), z(), o(), o()]),
        Vector::new(vec![z(), z(), o(), -o()]),
    ];
    (Matrix::from_rows(4, rows).expect("4 columns"), Vector::from_ints(&[1; 6]))
}

pub fn two_triangle_polytope(eps: &Rat) -> Result<HPolytope<Rat>> {
    let (a, b) = example_inequalities(eps);
    HPolytope::with_default_labels(a, b)
}

/// Projection to the first and last coordinates.
pub fn example_projection() -> Matrix<Rat> {
    Matrix::from_ints(&[&[1, 0, 0, 0], &[0, 0, 0, 1]])
}

/// The expected `g_i` written out by hand.
pub fn example_gale(eps: &Rat) -> VectorConfig<Rat> {
    let o = Rat::one;
    let z = Rat::zero;
    let vs = vec![
        Vector::new(vec![o(), z()]),
        Vector::new(vec![o(), z()]),
        Vector::new(vec![-o(), -eps.clone()]),
        Vector::new(vec![-eps.clone(), -o()]),
        Vector::new(vec![z(), o()]),
        Vector::new(vec![z(), o()]),
    ];
    VectorConfig::with_default_labels(2, vs).expect("six vectors in the plane")
}

fn label_set(s: &BTreeSet<usize>) -> String {
    format!("{{{}}}", s.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn k33_on_facets() -> Complex {
    power_join(&points_complex(3), 2)
        .relabel(|l| match l {
            Label::Tagged(f, inner) => match **inner {
                Label::Int(i) => Label::Int((*f as u64 - 1) * 3 + i),
                _ => unreachable!("integer points"),
            },
            _ => unreachable!("tagged join labels"),
        })
        .expect("injective relabelling")
}

fn face_counts(g: &VectorConfig<Rat>) -> Result<Vec<usize>> {
    (1..=3).map(|k| g.gale_faces_of_card(k).map(|f| f.len())).collect()
}

fn gale_claims(rep: &mut PipelineReport, g: &VectorConfig<Rat>) -> Result<()> {
    let is_gale = g.is_gale_transform()?;
    rep.check("gale-transform", "every single deletion of G positively spans the plane", is_gale, "");
    if !is_gale {
        return Ok(());
    }
    rep.quantity("general_position", g.general_position());
    let counts = face_counts(g)?;
    rep.quantity("associated_face_counts", &counts);
    rep.check(
        "octahedral",
        "the polytope Gale-dual to G has 6 vertices, 12 edges and 8 triangles",
        counts == [6, 12, 8],
        format!("{counts:?}"),
    );
    Ok(())
}

/// The two-triangle construction: a combinatorial product of two triangles
/// whose projection to the plane keeps 8 of its 9 vertices.
pub fn two_triangle_example(eps: &Rat) -> Result<PipelineReport> {
    if !eps.is_positive() || *eps > Rat::one() {
        return Err(Error::EpsilonOutOfRange(eps.to_string()));
    }
    let mut rep = PipelineReport::new("two-triangle-example");
    rep.input("epsilon", eps.to_string());
    let expected_g = example_gale(eps);

    let p = match two_triangle_polytope(eps) {
        Ok(p) => p,
        Err(e) => {
            rep.note(format!("the inequality system does not define a valid polytope ({e}); only G is examined"));
            gale_claims(&mut rep, &expected_g)?;
            return Ok(rep);
        }
    };

    let verts = p.vertices();
    rep.quantity("vertices", verts.len());
    rep.check("simple", "every vertex lies on exactly 4 facets", p.is_simple(), "");
    let expected_sets: BTreeSet<BTreeSet<usize>> = (1..=3)
        .flat_map(|i| (4..=6).map(move |j| (1..=6).filter(|&k| k != i && k != j).collect()))
        .collect();
    let found_sets: BTreeSet<BTreeSet<usize>> = verts.iter().map(|v| v.tight_facets.clone()).collect();
    rep.check(
        "product-combinatorics",
        "9 vertices with tight sets [6] minus {i, j}, i in {1,2,3}, j in {4,5,6}",
        verts.len() == 9 && found_sets == expected_sets,
        format!("{} vertices", verts.len()),
    );

    let s = make_setup(&p, &example_projection())?;
    let g = s.g_images();
    rep.quantity("g_images", g.vectors().iter().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>());
    rep.check("g-images", "the restricted dual vertices equal the hand-written G", *g == expected_g, "");
    gale_claims(&mut rep, g)?;

    let k = dual_boundary_complex(&p).complement_complex();
    let k33 = k33_on_facets();
    rep.check(
        "complement-is-k33",
        "the complement complex of the dual boundary is K33 on {1,2,3} and {4,5,6}",
        k == k33,
        "",
    );

    let census = vertex_survival_census(&s)?;
    let oracle = oracle_survival(&s)?;
    rep.quantity("survival", &census);
    rep.check(
        "census",
        "exactly 8 of the 9 vertices are strictly preserved",
        census.total == 9 && census.surviving == 8,
        format!("{} of {}", census.surviving, census.total),
    );
    rep.check(
        "image-octagon",
        "the projected polytope has 8 vertices",
        census.image_vertex_count == 8,
        format!("{}", census.image_vertex_count),
    );
    rep.check(
        "census-oracle",
        "the dual-face census agrees vertex by vertex with the image/fiber oracle",
        census == oracle,
        "",
    );

    let failing: Vec<BTreeSet<usize>> = census.failing().map(|v| v.facets.iter().copied().collect()).collect();
    let all: BTreeSet<usize> = (1..=6).collect();
    if let [f] = failing.as_slice() {
        rep.quantity("failing_vertex", label_set(f));
        rep.quantity("failing_vertex_complement", label_set(&all.difference(f).copied().collect()));
    }

    if g.is_gale_transform()? {
        let edges: BTreeSet<BTreeSet<usize>> = g.gale_faces_of_card(2)?.into_iter().collect();
        let missing: Vec<BTreeSet<usize>> = int_facets(&k33)?.into_iter().filter(|e| !edges.contains(e)).collect();
        rep.quantity("missing_edges", missing.iter().map(label_set).collect::<Vec<_>>());
        let matches_failure = match (missing.as_slice(), failing.as_slice()) {
            ([e], [f]) => all.difference(f).copied().collect::<BTreeSet<_>>() == *e,
            _ => false,
        };
        rep.check(
            "one-missing-edge",
            "exactly one K33 edge is missing from the edge graph of the associated polytope, \
             and it is the complement of the failing vertex",
            missing.len() == 1 && matches_failure,
            format!("missing {}", missing.iter().map(label_set).collect::<Vec<_>>().join(" ")),
        );
        if let [e] = missing.as_slice() {
            let facets: Vec<Vec<Label>> = int_facets(&k33)?
                .into_iter()
                .filter(|f| f != e)
                .map(|f| f.into_iter().map(|i| Label::Int(i as u64)).collect())
                .collect();
            let minus = Complex::closure_from_facets(k33.vertices().to_vec(), facets)?;
            rep.check(
                "realized-minus-edge",
                "K33 minus the missing edge is realized in the boundary of the associated polytope",
                verify_cc_realized(&s, &minus)?,
                "",
            );
            rep.check(
                "full-k33-not-realized",
                "the full K33 is not realized",
                !verify_cc_realized(&s, &k33)?,
                "",
            );
        }
    }

    rep.check(
        "associated-undefined",
        "the associated polytope is refused because one vertex fails to survive",
        matches!(associated_polytope(&s), Err(Error::NotAllVerticesSurvive { failing: 1, total: 9 })),
        "",
    );

    match perturb_to_general_position(&p, &example_projection(), PERTURBATION_SEED) {
        Ok(q) => {
            let sq = make_setup(&q, &example_projection())?;
            let counts = face_counts(sq.g_images())?;
            let survivors = vertex_survival_census(&sq)?.surviving;
            rep.quantity("perturbed_face_counts", &counts);
            rep.check(
                "perturbed",
                "a small perturbation puts G in general position and keeps the face counts and the 8 survivors",
                sq.g_images().general_position() && counts == [6, 12, 8] && survivors == 8,
                format!("{counts:?}, {survivors} survivors"),
            );
        }
        Err(e) => rep.check("perturbed", "a generic perturbation exists", false, e.to_string()),
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn quarter() {
        let r = two_triangle_example(&Rat::from_frac(1, 4)).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
        assert_eq!(r.quantities["failing_vertex"], "{1,2,5,6}");
        assert_eq!(r.quantities["missing_edges"][0], "{3,4}");
        assert_eq!(r.quantities["general_position"], false);
    }

    #[test]
    fn epsilon_one_examines_g_only() {
        let r = two_triangle_example(&Rat::one()).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
        assert!(!r.notes.is_empty());
        assert_eq!(r.quantities["general_position"], false);
    }

    #[test]
    fn epsilon_range() {
        assert!(matches!(two_triangle_example(&Rat::zero()), Err(Error::EpsilonOutOfRange(_))));
        assert!(matches!(two_triangle_example(&Rat::from_frac(3, 2)), Err(Error::EpsilonOutOfRange(_))));
    }

    #[test]
    fn epsilon_zero_square_shadow() {
        let p = two_triangle_polytope(&Rat::zero()).unwrap();
        let s = make_setup(&p, &example_projection()).unwrap();
        assert_eq!(vertex_survival_census(&s).unwrap().surviving, 4);
    }
}
