use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::One;

use super::PipelineReport;
use crate::error::{Error, Result};
use crate::polytopes::{hull_vertices, minkowski_sum_vertices, trivial_upper_bound, tuple_sum, VPolytope};
use crate::scalar::Scalar;
use crate::Rat;

fn check_hypotheses(d: usize, r: usize, f0s: &[usize]) -> Result<()> {
    if d == 0 {
        return Err(Error::HypothesisViolated("dimension must be at least 1".into()));
    }
    if r < d {
        return Err(Error::HypothesisViolated(format!("{r} summands in dimension {d}: need r >= d")));
    }
    if f0s.len() != r {
        return Err(Error::HypothesisViolated(format!("{} vertex counts given for {r} summands", f0s.len())));
    }
    if let Some(f) = f0s.iter().find(|&&f| f <= d) {
        return Err(Error::HypothesisViolated(format!("a {d}-polytope has more than {d} vertices, got {f}")));
    }
    Ok(())
}

fn big(n: usize) -> BigUint {
    BigUint::from(n)
}

fn rat(n: &BigUint) -> Rat {
    Rat::from_integer(n.clone().into())
}

/// `(1 - (d+1)^-r) * prod f0_i`, the bound for `r >= d` summands of
/// dimension `d`.
pub fn main_theorem_bound(d: usize, r: usize, f0s: &[usize]) -> Result<Rat> {
    check_hypotheses(d, r, f0s)?;
    let base = big(d + 1).pow(r as u32);
    let factor = Rat::one() - Rat::new(1.into(), base.into());
    Ok(factor * rat(&trivial_upper_bound(f0s)))
}

/// The counting behind the bound: every `(d+1)`-tuple of summand vertices
/// rules out at least one vertex sum, and each vertex sum is counted by
/// `prod C(f0_i - 1, d)` tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pigeonhole {
    /// `prod f0_i / (d+1)`, a lower bound on the number of vertex tuples
    /// whose sum is not a vertex.
    pub bound: Rat,
    pub tuples: BigUint,
    pub per_sum: BigUint,
    pub ratio: Rat,
}

pub fn pigeonhole_lower_bound(d: usize, r: usize, f0s: &[usize]) -> Result<Pigeonhole> {
    check_hypotheses(d, r, f0s)?;
    let tuples = f0s.iter().fold(BigUint::one(), |acc, &f| acc * binomial(big(f), big(d + 1)));
    let per_sum = f0s.iter().fold(BigUint::one(), |acc, &f| acc * binomial(big(f - 1), big(d)));
    let ratio = Rat::new(tuples.clone().into(), per_sum.clone().into());
    let bound = f0s.iter().fold(Rat::one(), |acc, &f| acc * Rat::from_frac(f as i64, d as i64 + 1));
    Ok(Pigeonhole { bound, tuples, per_sum, ratio })
}

/// Vertex count of a planar Minkowski sum against `f0(P) + f0(Q)`, with
/// the normal-cone count cross-checked against the hull of all sums.
pub fn planar_bound_check<T: Scalar>(p: &VPolytope<T>, q: &VPolytope<T>) -> Result<PipelineReport> {
    for x in [p, q] {
        if x.dim() != 2 {
            return Err(Error::WrongDimension { expected: 2, found: x.dim() });
        }
    }
    let (p, q) = (p.vertices_only(), q.vertices_only());
    let polys = [p.clone(), q.clone()];
    let sums = minkowski_sum_vertices(&polys)?;
    let all: Vec<_> = (0..p.len())
        .flat_map(|i| (0..q.len()).map(move |j| vec![i, j]))
        .map(|c| tuple_sum(&c, &polys))
        .collect();
    let hull = hull_vertices(&all).len();
    let mut rep = PipelineReport::new("planar-bound");
    rep.input("f0_p", p.len());
    rep.input("f0_q", q.len());
    rep.quantity("f0_sum", sums.len());
    rep.quantity("f0_sum_hull", hull);
    rep.check(
        "hull-agreement",
        "normal-cone enumeration and the hull of all pairwise sums give the same count",
        sums.len() == hull,
        format!("{} vs {}", sums.len(), hull),
    );
    rep.check(
        "planar-bound",
        "a sum of two polygons has at most f0(P) + f0(Q) vertices",
        sums.len() <= p.len() + q.len(),
        format!("{} <= {}", sums.len(), p.len() + q.len()),
    );
    Ok(rep)
}
