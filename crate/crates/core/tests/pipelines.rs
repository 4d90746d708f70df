use galeproj::obstructions::{nonembeddable, ChiMode, Embeddable};
use galeproj::complexes::simplex_boundary;
use galeproj::pipeline::{
    census_experiment, main_theorem_bound, obstruction_pipeline, pigeonhole_lower_bound, random_experiment,
    two_triangle_example,
};
use galeproj::{Error, Rat, Scalar};
use serde_json::json;

#[test]
fn obstruction_small_cases() {
    for d in 2..=4 {
        let r = obstruction_pipeline(d).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
        assert_eq!(r.quantities["sarkaria_lower"], json!(2 * d - 1));
        assert_eq!(r.quantities["djn_dim_upper"], json!(2 * d - 1));
        assert_eq!(r.quantities["embeddable"], json!("no"));
    }
    assert!(obstruction_pipeline(1).is_err());
}

#[test]
fn triangle_boundary_gives_no_verdict_in_the_plane() {
    let v = nonembeddable(&simplex_boundary(4), 2, ChiMode::Exact).unwrap();
    assert_eq!(v.embeddable, Embeddable::Unknown);
}

#[test]
fn example_is_stable_in_epsilon() {
    let mut failing = Vec::new();
    for (p, q) in [(1, 8), (1, 4), (1, 2)] {
        let r = two_triangle_example(&Rat::from_frac(p, q)).unwrap();
        assert!(r.all_passed(), "eps = {p}/{q}\n{}", r.to_text());
        failing.push(r.quantities["failing_vertex"].clone());
    }
    assert!(failing.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn bounds_are_consistent() {
    for d in 1..=3 {
        for r in d..=3 {
            let f0s = vec![d + 2; r];
            let main = main_theorem_bound(d, r, &f0s).unwrap();
            let trivial = Rat::from_int((d as i64 + 2).pow(r as u32));
            assert!(main < trivial);
            let ph = pigeonhole_lower_bound(d, r, &f0s).unwrap();
            assert_eq!(ph.ratio, ph.bound);
        }
    }
    assert!(matches!(main_theorem_bound(3, 2, &[4, 4]), Err(Error::HypothesisViolated(_))));
}

#[test]
fn experiments_are_reproducible() {
    let a = random_experiment(2, 2, &[4, 5], 10, 7).unwrap();
    let b = random_experiment(2, 2, &[4, 5], 10, 7).unwrap();
    assert!(a.all_passed(), "{}", a.to_text());
    assert_eq!(a.to_json(), b.to_json());
    let c = random_experiment(2, 2, &[4, 5], 10, 8).unwrap();
    assert_eq!(c.inputs["seed"], json!(8));
}

#[test]
fn census_agrees_with_oracle() {
    for d in 1..=2 {
        let r = census_experiment(d, 8, 3).unwrap();
        assert!(r.all_passed(), "{}", r.to_text());
    }
}
