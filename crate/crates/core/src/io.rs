//! JSON documents for graphs, fields, spaces, matrices and points. Scalars
//! travel as strings in the scalar grammar.

use crate::orthograph::{GraphError, OrthoGraph, Partition};
use crate::quadspace::{ProjPoint, QuadSpace, SpaceError, Vector};
use crate::rotation::{BasicRotation, OrthoMatrix, RotationError};
use crate::scalar::{FieldKind, FieldSpec, Scalar, ScalarError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{context}: {source}")]
    Scalar { context: String, source: ScalarError },
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Rotation(#[from] RotationError),
    #[error("{0}")]
    Invalid(String),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

pub type Result<T, E = IoError> = std::result::Result<T, E>;

pub fn parse_scalar(text: &str, spec: &FieldSpec, context: impl FnOnce() -> String) -> Result<Scalar> {
    Scalar::parse(text, spec).map_err(|source| IoError::Scalar { context: context(), source })
}

fn parse_all(texts: &[String], spec: &FieldSpec, what: &str) -> Result<Vec<Scalar>> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| parse_scalar(t, spec, || format!("{what}[{i}] = {t:?}")))
        .collect()
}

pub fn scalar_strings(xs: &[Scalar]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

/// `{"kind": "tower", "adjoined": ["2", "5"]}`; radicands are parsed in the
/// field built so far, so later ones may mention `sqrt1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    pub kind: FieldKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub adjoined: Vec<String>,
}

impl FieldDoc {
    pub fn build(&self) -> Result<FieldSpec> {
        match self.kind {
            FieldKind::Infinitesimal | FieldKind::Rationals if !self.adjoined.is_empty() => Err(IoError::Invalid(
                format!("field kind {:?} takes no radicands", self.kind).to_lowercase(),
            )),
            FieldKind::Infinitesimal => Ok(FieldSpec::infinitesimal()),
            _ => {
                let mut spec = FieldSpec::rationals();
                for (i, r) in self.adjoined.iter().enumerate() {
                    let x = parse_scalar(r, &spec, || format!("adjoined[{i}] = {r:?}"))?;
                    spec = spec
                        .adjoin(&x)
                        .map_err(|source| IoError::Scalar { context: format!("adjoined[{i}]"), source })?;
                }
                Ok(spec)
            }
        }
    }

    pub fn of(spec: &FieldSpec) -> Self {
        FieldDoc {
            kind: spec.kind(),
            adjoined: spec.radicands().iter().map(|r| r.to_string()).collect(),
        }
    }
}

/// `{"field": {...}, "dim": 4, "gram": ["1", "1", "2", "1"]}`; the Gram
/// diagonal defaults to all ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub field: FieldDoc,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<String>>,
}

impl SpaceDoc {
    pub fn build(&self) -> Result<QuadSpace> {
        let spec = self.field.build()?;
        match &self.gram {
            None => Ok(QuadSpace::standard(&spec, self.dim)?),
            Some(g) => {
                if g.len() != self.dim {
                    return Err(SpaceError::DimensionMismatch { expected: self.dim, got: g.len() }.into());
                }
                Ok(QuadSpace::new(&spec, parse_all(g, &spec, "gram")?)?)
            }
        }
    }

    pub fn of(space: &QuadSpace) -> Self {
        let all_one = space.gram().iter().all(Scalar::is_one);
        SpaceDoc {
            field: FieldDoc::of(space.spec()),
            dim: space.dim(),
            gram: (!all_one).then(|| scalar_strings(space.gram())),
        }
    }
}

/// `{"n": 6, "edges": [[0, 1], [1, 2]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphDoc {
    pub fn build(&self) -> Result<OrthoGraph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[a, b]| (a, b)).collect();
        Ok(OrthoGraph::new(self.n, &edges)?)
    }

    pub fn of(g: &OrthoGraph) -> Self {
        GraphDoc {
            n: g.n(),
            edges: g.edges().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

pub fn build_partition(n: usize, blocks: Vec<Vec<usize>>) -> Result<Partition> {
    Ok(Partition::new(n, blocks)?)
}

/// A matrix given row-major on a space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub space: SpaceDoc,
    pub rows: Vec<Vec<String>>,
}

impl MatrixDoc {
    pub fn build(&self) -> Result<OrthoMatrix> {
        let space = self.space.build()?;
        let spec = space.spec().clone();
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(r, row)| parse_all(row, &spec, &format!("rows[{r}]")))
            .collect::<Result<Vec<_>>>()?;
        Ok(OrthoMatrix::verify(&space, rows)?)
    }

    pub fn of(m: &OrthoMatrix) -> Self {
        MatrixDoc {
            space: SpaceDoc::of(m.space()),
            rows: m.rows().iter().map(|r| scalar_strings(r)).collect(),
        }
    }
}

/// A basic rotation by its plane and block parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RotationDoc {
    pub space: SpaceDoc,
    pub u: Vec<String>,
    pub v: Vec<String>,
    pub alpha: String,
    pub beta: String,
}

impl RotationDoc {
    pub fn build(&self) -> Result<BasicRotation> {
        let space = self.space.build()?;
        let spec = space.spec().clone();
        let u = space.vector(parse_all(&self.u, &spec, "u")?)?;
        let v = space.vector(parse_all(&self.v, &spec, "v")?)?;
        let alpha = parse_scalar(&self.alpha, &spec, || "alpha".into())?;
        let beta = parse_scalar(&self.beta, &spec, || "beta".into())?;
        Ok(BasicRotation::new(&u, &v, &alpha, &beta)?)
    }

    pub fn of(r: &BasicRotation) -> Self {
        let (u, v) = r.plane();
        RotationDoc {
            space: SpaceDoc::of(r.matrix().space()),
            u: scalar_strings(u.coords()),
            v: scalar_strings(v.coords()),
            alpha: r.alpha().to_string(),
            beta: r.beta().to_string(),
        }
    }
}

/// Either a bare list of coordinate lists, or the same with its space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointsDoc {
    Bare(Vec<Vec<String>>),
    WithSpace { space: SpaceDoc, points: Vec<Vec<String>> },
}

impl PointsDoc {
    /// Points in `space`, or in the document's own space when it names one.
    pub fn build(&self, space: &QuadSpace) -> Result<Vec<ProjPoint>> {
        let (space, pts) = match self {
            PointsDoc::Bare(p) => (space.clone(), p),
            PointsDoc::WithSpace { space: s, points } => (s.build()?, points),
        };
        pts.iter()
            .enumerate()
            .map(|(i, p)| parse_point(&space, p, &format!("points[{i}]")))
            .collect()
    }
}

pub fn parse_vector(space: &QuadSpace, coords: &[String], what: &str) -> Result<Vector> {
    Ok(space.vector(parse_all(coords, space.spec(), what)?)?)
}

pub fn parse_point(space: &QuadSpace, coords: &[String], what: &str) -> Result<ProjPoint> {
    Ok(ProjPoint::new(&parse_vector(space, coords, what)?)?)
}

/// Accepts `[1, eps, 0]` or `["1", "eps", "0"]`: bare words and numbers are
/// quoted before JSON parsing.
pub fn parse_coordinate_list(text: &str) -> Result<Vec<String>> {
    let trimmed = text.trim();
    if let Ok(v) = serde_json::from_str::<Vec<String>>(trimmed) {
        return Ok(v);
    }
    let inner = trimmed
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| IoError::Invalid(format!("expected a bracketed list, got {text:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(inner.split(',').map(|s| s.trim().trim_matches('"').to_string()).collect())
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}
