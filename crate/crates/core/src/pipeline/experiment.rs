use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{main_theorem_bound, perturb_to_general_position, PipelineReport};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::polytopes::{hull_vertices, minkowski_sum_vertices, trivial_upper_bound, tuple_sum, HPolytope, VPolytope};
use crate::projections::{make_setup, oracle_survival, vertex_survival_census};
use crate::scalar::Scalar;
use crate::Rat;

/// Attempts per random polytope before giving up.
const MAX_REJECTIONS: usize = 20_000;
const COORD_RANGE: i64 = 100;
const COORD_DEN: i64 = 10;
const MAX_RANDOM_F0: usize = 10;

/// The generator for trial `trial` of a run seeded with `seed`: ChaCha8
/// keyed by the seed, one stream per trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn random_point(rng: &mut impl Rng, d: usize) -> Vector<Rat> {
    (0..d).map(|_| Rat::from_frac(rng.random_range(-COORD_RANGE..=COORD_RANGE), COORD_DEN)).collect()
}

/// `f0` points with coordinates in `[-10, 10] ∩ (1/10)Z`, resampled until
/// every point is a vertex and the hull is full-dimensional.
pub fn random_vpolytope(rng: &mut impl Rng, d: usize, f0: usize) -> Result<VPolytope<Rat>> {
    for _ in 0..MAX_REJECTIONS {
        let pts: Vec<Vector<Rat>> = (0..f0).map(|_| random_point(rng, d)).collect();
        let Ok(p) = VPolytope::new(d, pts) else { continue };
        if p.affine_dim() == d && p.hull_vertices().len() == f0 {
            return Ok(p);
        }
    }
    Err(Error::RetriesExhausted(MAX_REJECTIONS))
}

/// Outcome of one random Minkowski sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinkowskiTrial {
    pub trial: u64,
    pub vertex_count: usize,
    pub hull_count: usize,
    /// Normal-cone vertices and hull-oracle vertices coincide as point sets.
    pub agree: bool,
}

pub fn minkowski_trial(d: usize, f0s: &[usize], seed: u64, trial: u64) -> Result<MinkowskiTrial> {
    let mut rng = trial_rng(seed, trial);
    let polys = f0s.iter().map(|&f| random_vpolytope(&mut rng, d, f)).collect::<Result<Vec<_>>>()?;
    let sums = minkowski_sum_vertices(&polys)?;
    let all: Vec<Vector<Rat>> =
        polys.iter().map(|p| 0..p.len()).multi_cartesian_product().map(|c| tuple_sum(&c, &polys)).collect();
    let hull: BTreeSet<Vector<Rat>> = hull_vertices(&all).into_iter().map(|i| all[i].clone()).collect();
    let found: BTreeSet<Vector<Rat>> = sums.iter().map(|(_, v)| v.clone()).collect();
    Ok(MinkowskiTrial {
        trial,
        vertex_count: sums.len(),
        hull_count: hull.len(),
        agree: found == hull && found.len() == sums.len(),
    })
}

fn check_sizes(d: usize, f0s: &[usize]) -> Result<()> {
    if !(1..=3).contains(&d) {
        return Err(Error::InvalidInput(format!("random experiments support d = 1, 2, 3, got {d}")));
    }
    if f0s.is_empty() {
        return Err(Error::InvalidInput("no summands".into()));
    }
    if let Some(f) = f0s.iter().find(|&&f| f <= d || f > MAX_RANDOM_F0) {
        return Err(Error::InvalidInput(format!("vertex count {f} outside {}..={MAX_RANDOM_F0}", d + 1)));
    }
    Ok(())
}

/// Random sums of `r` polytopes with prescribed vertex counts; reports the
/// observed vertex counts against the trivial and the main bound.
pub fn random_experiment(d: usize, r: usize, f0s: &[usize], trials: u64, seed: u64) -> Result<PipelineReport> {
    check_sizes(d, f0s)?;
    if f0s.len() != r {
        return Err(Error::InvalidInput(format!("{} vertex counts for {r} summands", f0s.len())));
    }
    let mut rep = PipelineReport::new("random-experiment");
    rep.input("d", d);
    rep.input("r", r);
    rep.input("f0s", f0s);
    rep.input("trials", trials);
    rep.input("seed", seed);
    let results = (0..trials).map(|t| minkowski_trial(d, f0s, seed, t)).collect::<Result<Vec<_>>>()?;
    let counts: Vec<usize> = results.iter().map(|t| t.vertex_count).collect();
    let max = counts.iter().copied().max().unwrap_or(0);
    let trivial = trivial_upper_bound(f0s);
    rep.quantity("vertex_counts", &counts);
    rep.quantity("max_observed", max);
    rep.quantity("min_observed", counts.iter().copied().min().unwrap_or(0));
    rep.quantity("trivial_bound", trivial.to_string());
    let mismatches = results.iter().filter(|t| !t.agree).count();
    rep.check(
        "oracle-agreement",
        "normal-cone vertices equal the hull vertices of all tuple sums",
        mismatches == 0,
        format!("{mismatches} mismatches"),
    );
    rep.check(
        "trivial-bound",
        "no sum has more vertices than the product of the vertex counts",
        BigUint::from(max) <= trivial,
        format!("{max} <= {trivial}"),
    );
    if r >= d {
        let bound = main_theorem_bound(d, r, f0s)?;
        rep.quantity("main_theorem_bound", bound.to_string());
        rep.check(
            "main-bound",
            "with r >= d summands no sum exceeds (1 - (d+1)^-r) times the trivial bound",
            Rat::from_int(max as i64) <= bound,
            format!("{max} <= {bound}"),
        );
        rep.check(
            "trivial-not-attained",
            "the trivial bound is never attained when r >= d",
            BigUint::from(max) < trivial,
            format!("{max} < {trivial}"),
        );
    } else {
        rep.note("r < d: the main bound does not apply; counts are reported without a verdict");
    }
    if d == 2 {
        let planar: usize = f0s.iter().sum();
        rep.check(
            "planar-bound",
            "a planar sum has at most the total number of summand vertices",
            max <= planar,
            format!("{max} <= {planar}"),
        );
    }
    Ok(rep)
}

fn simplex_rows(d: usize) -> (Vec<Vector<Rat>>, Vec<Rat>) {
    let mut rows: Vec<Vector<Rat>> = (0..d).map(|i| Vector::unit(d, i).neg()).collect();
    rows.push(Vector::new(vec![Rat::from_int(1); d]));
    (rows, vec![Rat::from_int(1); d + 1])
}

fn simplex(d: usize) -> HPolytope<Rat> {
    let (rows, b) = simplex_rows(d);
    HPolytope::with_default_labels(Matrix::from_rows(d, rows).expect("dims"), Vector::new(b))
        .expect("a simplex around the origin")
}

fn random_simple_polytope(rng: &mut impl Rng, n: usize) -> Result<HPolytope<Rat>> {
    for _ in 0..MAX_REJECTIONS {
        let m = n + rng.random_range(2..=3);
        let rows: Vec<Vector<Rat>> =
            (0..m).map(|_| (0..n).map(|_| Rat::from_int(rng.random_range(-10..=10))).collect()).collect();
        let Ok(p) = HPolytope::with_default_labels(Matrix::from_rows(n, rows)?, Vector::new(vec![Rat::from_int(1); m]))
        else {
            continue;
        };
        if p.is_simple() {
            return Ok(p);
        }
    }
    Err(Error::RetriesExhausted(MAX_REJECTIONS))
}

fn random_projection(rng: &mut impl Rng, d: usize, n: usize) -> Matrix<Rat> {
    loop {
        let rows = (0..d).map(|_| (0..n).map(|_| Rat::from_int(rng.random_range(-5..=5))).collect()).collect();
        let m = Matrix::from_rows(n, rows).expect("dims");
        if m.rank() == d {
            return m;
        }
    }
}

/// A perturbed simple polytope and a random projection to `R^d`. Even
/// trials start from a product of two simplices of total dimension `d + 1`
/// or `d + 2`, odd trials from a random simple polytope in `R^{d+1}` or
/// `R^{d+2}`.
pub fn random_census_instance(d: usize, seed: u64, trial: u64) -> Result<(HPolytope<Rat>, Matrix<Rat>)> {
    let mut rng = trial_rng(seed, trial);
    let n = d + rng.random_range(1..=2);
    let p = if trial.is_multiple_of(2) {
        let a = rng.random_range(1..n);
        simplex(a).product(&simplex(n - a))
    } else {
        random_simple_polytope(&mut rng, n)?
    };
    let proj = random_projection(&mut rng, d, p.dim());
    let q = perturb_to_general_position(&p, &proj, rng.random())?;
    Ok((q, proj))
}

/// Dual-face census against the image/fiber oracle on random instances.
pub fn census_experiment(d: usize, trials: u64, seed: u64) -> Result<PipelineReport> {
    if !(1..=3).contains(&d) {
        return Err(Error::InvalidInput(format!("census experiments support d = 1, 2, 3, got {d}")));
    }
    let mut rep = PipelineReport::new("census-experiment");
    rep.input("d", d);
    rep.input("trials", trials);
    rep.input("seed", seed);
    let mut mismatches = Vec::new();
    let mut survivors = Vec::new();
    let mut full = 0;
    for t in 0..trials {
        let (p, proj) = random_census_instance(d, seed, t)?;
        let s = make_setup(&p, &proj)?;
        let census = vertex_survival_census(&s)?;
        if census != oracle_survival(&s)? {
            mismatches.push(t);
        }
        if census.image_vertex_count == census.total && !census.all_survive() {
            mismatches.push(t);
        }
        full += usize::from(census.all_survive());
        survivors.push(format!("{}/{}", census.surviving, census.total));
    }
    rep.quantity("survivors", &survivors);
    rep.quantity("full_survival_instances", full);
    rep.check(
        "census-oracle",
        "the dual-face census agrees with the image/fiber oracle on every instance",
        mismatches.is_empty(),
        format!("mismatching trials {mismatches:?}"),
    );
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = trial_rng(5, 3).random();
        let b: u64 = trial_rng(5, 3).random();
        let c: u64 = trial_rng(5, 4).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn random_polygons_have_requested_size() {
        let mut rng = trial_rng(1, 0);
        for f in 3..=6 {
            let p = random_vpolytope(&mut rng, 2, f).unwrap();
            assert_eq!(p.f0(), f);
        }
    }

    #[test]
    fn small_experiment() {
        let r = random_experiment(2, 2, &[3, 3], 20, 11).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
        assert!(r.quantities["max_observed"].as_u64().unwrap() <= 6);
        assert_eq!(r, random_experiment(2, 2, &[3, 3], 20, 11).unwrap());
        let r = random_experiment(3, 2, &[4, 4], 5, 2).unwrap();
        assert!(r.claim("main-bound").is_none());
    }

    #[test]
    fn small_census_experiment() {
        let r = census_experiment(2, 6, 3).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
    }
}
