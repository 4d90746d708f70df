//! JSON file formats. Rationals are written as `"p/q"` strings; plain JSON
//! integers are accepted on input.
//!
//! * polytope: `{"type":"v","points":[[..],..]}` or
//!   `{"type":"h","a":[[..],..],"b":[..],"labels":[..]}` (labels optional);
//! * projection setup: `{"polytope":{h-polytope},"projection":[[..],..]}`;
//! * vector configuration: `{"vectors":[[..],..],"labels":[..]}`;
//! * complexes and graphs use their own serde forms.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gale::VectorConfig;
use crate::linalg::{Matrix, Vector};
use crate::polytopes::{HPolytope, VPolytope};
use crate::projections::{make_setup, ProjectionSetup};
use crate::scalar::{RatStr, Scalar};

pub type Row<T> = Vec<RatStr<T>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub enum PolytopeFile<T> {
    V { points: Vec<Row<T>> },
    H(HFile<T>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct HFile<T> {
    pub a: Vec<Row<T>>,
    pub b: Row<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct SetupFile<T> {
    pub polytope: HFile<T>,
    pub projection: Vec<Row<T>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct VectorConfigFile<T> {
    pub vectors: Vec<Row<T>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<usize>>,
}

fn to_vector<T: Scalar>(row: &[RatStr<T>]) -> Vector<T> {
    row.iter().map(|x| x.0.clone()).collect()
}

fn to_row<T: Scalar>(v: &Vector<T>) -> Row<T> {
    v.iter().cloned().map(RatStr).collect()
}

fn to_matrix<T: Scalar>(rows: &[Row<T>], what: &str) -> Result<Matrix<T>> {
    let ncols = rows.first().map(Vec::len).ok_or_else(|| Error::InvalidInput(format!("{what} has no rows")))?;
    Matrix::from_rows(ncols, rows.iter().map(|r| to_vector(r)).collect())
}

impl<T: Scalar> HFile<T> {
    pub fn to_polytope(&self) -> Result<HPolytope<T>> {
        let a = to_matrix(&self.a, "inequality matrix")?;
        let b = to_vector(&self.b);
        match &self.labels {
            Some(l) => HPolytope::new(a, b, l.clone()),
            None => HPolytope::with_default_labels(a, b),
        }
    }

    pub fn from_polytope(p: &HPolytope<T>) -> Self {
        Self { a: p.a().rows().map(|r| to_row(&r)).collect(), b: to_row(p.b()), labels: Some(p.labels().to_vec()) }
    }
}

impl<T: Scalar> PolytopeFile<T> {
    /// The point set of the polytope, via vertex enumeration for H-input.
    pub fn to_vpolytope(&self) -> Result<VPolytope<T>> {
        match self {
            PolytopeFile::V { points } => {
                let dim = points.first().map(Vec::len).ok_or_else(|| Error::InvalidInput("no points".into()))?;
                VPolytope::new(dim, points.iter().map(|p| to_vector(p)).collect())
            }
            PolytopeFile::H(h) => {
                let p = h.to_polytope()?;
                VPolytope::new(p.dim(), p.vertices().into_iter().filter_map(|v| v.vertex_coords).collect())
            }
        }
    }

    pub fn from_vpolytope(p: &VPolytope<T>) -> Self {
        PolytopeFile::V { points: p.points().iter().map(to_row).collect() }
    }
}

impl<T: Scalar> SetupFile<T> {
    pub fn to_setup(&self) -> Result<ProjectionSetup<T>> {
        make_setup(&self.polytope.to_polytope()?, &to_matrix(&self.projection, "projection")?)
    }

    pub fn from_parts(p: &HPolytope<T>, proj: &Matrix<T>) -> Self {
        Self { polytope: HFile::from_polytope(p), projection: proj.rows().map(|r| to_row(&r)).collect() }
    }
}

impl<T: Scalar> VectorConfigFile<T> {
    pub fn to_config(&self) -> Result<VectorConfig<T>> {
        let dim = self.vectors.first().map(Vec::len).ok_or_else(|| Error::InvalidInput("no vectors".into()))?;
        let vectors = self.vectors.iter().map(|v| to_vector(v)).collect();
        match &self.labels {
            Some(l) => VectorConfig::new(dim, vectors, l.clone()),
            None => VectorConfig::with_default_labels(dim, vectors),
        }
    }

    pub fn from_config(g: &VectorConfig<T>) -> Self {
        Self { vectors: g.vectors().iter().map(to_row).collect(), labels: Some(g.labels().to_vec()) }
    }
}

pub fn from_json_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    from_json_str(&text)
}
