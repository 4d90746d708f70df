//! End-to-end drivers producing checkable reports.

mod bounds;
mod example;
mod experiment;
mod obstruction;
mod perturb;

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

pub use bounds::{main_theorem_bound, pigeonhole_lower_bound, planar_bound_check, Pigeonhole};
pub use example::{example_gale, example_inequalities, example_projection, two_triangle_example, two_triangle_polytope};
pub use experiment::{
    census_experiment, minkowski_trial, random_census_instance, random_experiment, random_vpolytope, trial_rng,
    MinkowskiTrial,
};
pub use obstruction::obstruction_pipeline;
pub use perturb::{perturb_to_general_position, MAX_PERTURBATION_ATTEMPTS};

/// One checked statement.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Claim {
    pub name: String,
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

/// Inputs, computed quantities and the claims checked against them.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineReport {
    pub scenario: String,
    pub inputs: Map<String, Value>,
    pub quantities: Map<String, Value>,
    pub claims: Vec<Claim>,
    pub notes: Vec<String>,
}

impl PipelineReport {
    pub fn new(scenario: &str) -> Self {
        Self {
            scenario: scenario.to_string(),
            inputs: Map::new(),
            quantities: Map::new(),
            claims: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) {
        self.inputs.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn quantity(&mut self, key: &str, value: impl Serialize) {
        self.quantities.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn check(&mut self, name: &str, claim: &str, passed: bool, detail: impl Into<String>) {
        self.claims.push(Claim { name: name.to_string(), claim: claim.to_string(), passed, detail: detail.into() });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn all_passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed)
    }

    pub fn claim(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "scenario: {}", self.scenario).unwrap();
        for (section, map) in [("inputs", &self.inputs), ("quantities", &self.quantities)] {
            if map.is_empty() {
                continue;
            }
            writeln!(out, "{section}:").unwrap();
            for (k, v) in map {
                writeln!(out, "  {k} = {v}").unwrap();
            }
        }
        writeln!(out, "claims:").unwrap();
        for c in &self.claims {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            writeln!(out, "  [{mark}] {}: {}", c.name, c.claim).unwrap();
            if !c.detail.is_empty() {
                writeln!(out, "         {}", c.detail).unwrap();
            }
        }
        for n in &self.notes {
            writeln!(out, "note: {n}").unwrap();
        }
        out
    }
}
