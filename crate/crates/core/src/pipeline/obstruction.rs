use num_bigint::BigUint;
use num_traits::One;

use super::PipelineReport;
use crate::complexes::{points_complex, power_join};
use crate::error::{Error, Result};
use crate::obstructions::{
    bipartite_sum, chromatic_number, djn_dim_upper, kneser_graph, lovasz_kneser_chi, nonembeddable_join, ChiMode,
    Embeddable,
};

/// Largest `d` for which the Kneser graph of the whole join is also built
/// directly and compared with the factor route.
const DIRECT_ROUTE_MAX_D: usize = 4;

/// The coloring obstruction for `d`-fold products of `d`-simplices.
///
/// The complement complex of the dual boundary of `(Δ^d)^d` is the `d`-fold
/// join of `d + 1` points. If a projection to `R^d` kept every vertex, that
/// complex would sit in the boundary of a `(2d-1)`-polytope, i.e. in a
/// `(2d-2)`-sphere. The coloring bound shows it does not.
pub fn obstruction_pipeline(d: usize) -> Result<PipelineReport> {
    if d < 2 {
        return Err(Error::InvalidInput(format!("d = {d}: the statement needs d >= 2")));
    }
    let mut rep = PipelineReport::new("obstruction");
    rep.input("d", d);
    let factor = points_complex(d + 1);
    let k = power_join(&factor, d);
    let n = k.num_vertices();
    rep.quantity("n", n);
    rep.quantity("facets", k.facets().len());
    rep.check("vertex-count", "the join has d(d+1) vertices", n == d * (d + 1), format!("n = {n}"));

    let factor_nf = factor.minimal_nonfaces();
    let factor_graph = kneser_graph(&factor_nf);
    let factor_chi = chromatic_number(&factor_graph, ChiMode::Exact)?;
    let lk = lovasz_kneser_chi(d + 1, 2)?;
    rep.quantity("factor_nonfaces", factor_nf.len());
    rep.quantity("factor_chi", factor_chi.value);
    rep.quantity("lovasz_kneser_chi", lk);
    rep.check(
        "factor-coloring",
        "the exact chromatic number of KG(d+1, 2) equals d - 1",
        factor_chi.value == lk && lk == d - 1,
        format!("solver {}, formula {lk}", factor_chi.value),
    );

    let mut graph = factor_graph.clone();
    for _ in 1..d {
        graph = bipartite_sum(&graph, &factor_graph);
    }
    let chi = chromatic_number(&graph, ChiMode::Exact)?;
    rep.quantity("kneser_vertices", graph.num_vertices());
    rep.quantity("kneser_edges", graph.num_edges());
    rep.quantity("chi", chi.value);
    rep.check(
        "chi-additive",
        "the chromatic number of the d-fold bipartite sum is d(d-1)",
        chi.value == d * (d - 1) && chi.value == d * factor_chi.value,
        format!("chi = {}", chi.value),
    );

    if d <= DIRECT_ROUTE_MAX_D {
        let direct = kneser_graph(&k.minimal_nonfaces());
        let same_shape = direct.num_vertices() == graph.num_vertices()
            && direct.num_edges() == graph.num_edges()
            && direct.complement_components().len() == d;
        let direct_chi = chromatic_number(&direct, ChiMode::Exact)?;
        rep.check(
            "direct-route",
            "the Kneser graph of the join's minimal non-faces matches the bipartite sum",
            same_shape && direct_chi == chi,
            format!("{} vertices, {} edges, chi {}", direct.num_vertices(), direct.num_edges(), direct_chi.value),
        );
    } else {
        rep.note(format!("direct Kneser graph skipped for d > {DIRECT_ROUTE_MAX_D}; the factor route is used"));
    }

    let sphere = 2 * d as i64 - 2;
    let factors = vec![factor; d];
    let v = nonembeddable_join(&factors, &k, sphere, ChiMode::Exact)?;
    let target = 2 * d as i64 - 1;
    rep.quantity("sarkaria_lower", v.sarkaria_lower);
    rep.quantity("djn_dim_upper", djn_dim_upper(&k));
    rep.quantity("target_sphere", sphere);
    rep.quantity("embeddable", v.embeddable);
    rep.quantity("verdict", &v);
    rep.check(
        "lower-bound",
        "the coloring bound n - chi - 1 equals 2d - 1",
        v.sarkaria_lower == target,
        format!("{} - {} - 1 = {}", n, chi.value, v.sarkaria_lower),
    );
    rep.check(
        "upper-bound",
        "the deleted join has dimension 2d - 1",
        v.djn_dim_upper == target,
        format!("dim = {}", v.djn_dim_upper),
    );
    rep.check(
        "index-pinned",
        "lower and upper bounds coincide, so the index is exactly 2d - 1",
        v.chi_is_exact && v.interval_consistent && v.sarkaria_lower == v.djn_dim_upper,
        format!("[{}, {}]", v.sarkaria_lower, v.djn_dim_upper),
    );
    rep.check(
        "not-embeddable",
        "the join does not embed into the (2d-2)-sphere",
        v.embeddable == Embeddable::No,
        format!("{} > {}", v.sarkaria_lower, sphere),
    );
    let f0 = BigUint::from(d + 1).pow(d as u32);
    rep.quantity("product_vertices", f0.to_string());
    rep.quantity("projection_vertex_bound", (f0 - BigUint::one()).to_string());
    rep.note(
        "no projection of a combinatorial d-fold product of d-simplices to R^d keeps all (d+1)^d vertices, \
         so the image has at most (d+1)^d - 1 vertices",
    );
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let r = obstruction_pipeline(2).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
        assert_eq!(r.quantities["n"], 6);
        assert_eq!(r.quantities["chi"], 2);
        assert_eq!(r.quantities["sarkaria_lower"], 3);
        let r = obstruction_pipeline(3).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
        assert_eq!(r.quantities["sarkaria_lower"], 5);
        assert!(obstruction_pipeline(1).is_err());
    }
}
