use std::collections::BTreeSet;

use rand::Rng;

use super::trial_rng;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::polytopes::HPolytope;
use crate::projections::make_setup;
use crate::scalar::Scalar;
use crate::Rat;

pub const MAX_PERTURBATION_ATTEMPTS: usize = 64;

/// Denominator of the perturbation: every entry of `A` and `b` moves by at
/// most `PERTURBATION_STEPS / PERTURBATION_DEN`.
const PERTURBATION_DEN: i64 = 200;
const PERTURBATION_STEPS: i64 = 3;

fn incidences(p: &HPolytope<Rat>) -> BTreeSet<BTreeSet<usize>> {
    p.vertices().into_iter().map(|v| v.tight_facets).collect()
}

fn jiggle(x: &Rat, rng: &mut impl Rng) -> Rat {
    x + Rat::from_frac(rng.random_range(-PERTURBATION_STEPS..=PERTURBATION_STEPS), PERTURBATION_DEN)
}

/// A small random perturbation of the system `A x <= b` with the same
/// vertex-facet incidences whose `g_i` (for `proj`) are in general position.
/// Scaling `b` alone only rescales each `g_i`, so the rows of `A` are moved
/// too. A polytope that already qualifies is returned unchanged.
pub fn perturb_to_general_position(p: &HPolytope<Rat>, proj: &Matrix<Rat>, seed: u64) -> Result<HPolytope<Rat>> {
    if !p.is_simple() {
        return Err(Error::HypothesisViolated("perturbation needs a simple polytope".into()));
    }
    if make_setup(p, proj)?.g_images().general_position() {
        return Ok(p.clone());
    }
    let reference = incidences(p);
    for attempt in 0..MAX_PERTURBATION_ATTEMPTS {
        let mut rng = trial_rng(seed, attempt as u64);
        let rows = p.a().rows().map(|r| r.iter().map(|x| jiggle(x, &mut rng)).collect()).collect();
        let b: Vector<Rat> = p.b().iter().map(|x| jiggle(x, &mut rng)).collect();
        let Ok(a) = Matrix::from_rows(p.dim(), rows) else { continue };
        let Ok(q) = HPolytope::new(a, b, p.labels().to_vec()) else { continue };
        if !q.is_simple() || incidences(&q) != reference {
            continue;
        }
        match make_setup(&q, proj) {
            Ok(s) if s.g_images().general_position() => return Ok(q),
            _ => continue,
        }
    }
    Err(Error::RetriesExhausted(MAX_PERTURBATION_ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> HPolytope<Rat> {
        let a = Matrix::from_ints(&[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]]);
        HPolytope::with_default_labels(a, Vector::from_ints(&[1; 6])).unwrap()
    }

    #[test]
    fn cube_gets_generic() {
        let proj = Matrix::from_ints(&[&[1, 1, 0], &[0, 0, 1]]);
        assert!(!make_setup(&cube(), &proj).unwrap().g_images().general_position());
        let q = perturb_to_general_position(&cube(), &proj, 7).unwrap();
        assert_eq!(q.vertices().len(), 8);
        assert!(make_setup(&q, &proj).unwrap().g_images().general_position());
        assert_eq!(perturb_to_general_position(&cube(), &proj, 7).unwrap(), q);
    }

    #[test]
    fn generic_input_is_unchanged() {
        let proj = Matrix::from_ints(&[&[1, 2, 3]]);
        let a = Matrix::from_ints(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1], &[1, 1, 1]]);
        let t = HPolytope::<Rat>::with_default_labels(a, Vector::from_ints(&[1, 1, 1, 1])).unwrap();
        let g = make_setup(&t, &proj).unwrap();
        assert!(g.g_images().general_position());
        assert_eq!(perturb_to_general_position(&t, &proj, 0).unwrap(), t);
    }

    #[test]
    fn non_simple_rejected() {
        let a = Matrix::from_ints(&[&[0, 0, -1], &[1, 0, 1], &[-1, 0, 1], &[0, 1, 1], &[0, -1, 1]]);
        let pyr = HPolytope::<Rat>::with_default_labels(a, Vector::from_ints(&[1, 1, 1, 1, 1])).unwrap();
        let proj = Matrix::from_ints(&[&[1, 0, 0]]);
        assert!(matches!(perturb_to_general_position(&pyr, &proj, 0), Err(Error::HypothesisViolated(_))));
    }
}
