//! Positive-definite diagonal quadratic spaces, their vectors and projective
//! points.

use crate::scalar::{self, FieldSpec, Scalar, ScalarError};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("dimension must be at least 1")]
    EmptySpace,
    #[error("form is not positive definite: basis vector e{} has norm {norm}", index + 1)]
    NotPositiveDefinite { index: usize, norm: String },
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vectors belong to different spaces")]
    SpaceMismatch,
    #[error("operation requires a non-zero vector")]
    ZeroVector,
}

pub type Result<T, E = SpaceError> = std::result::Result<T, E>;

#[derive(Debug, PartialEq, Eq, Hash)]
struct SpaceRepr {
    spec: FieldSpec,
    gram: Vec<Scalar>,
}

/// `K^n` with the form `<u, v> = sum g_i u_i v_i`, every `g_i > 0`.
#[derive(Clone, Debug, Eq)]
pub struct QuadSpace(Arc<SpaceRepr>);

impl std::hash::Hash for QuadSpace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

impl PartialEq for QuadSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

/// Outcome of the definiteness test on a candidate diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Definiteness {
    Positive,
    /// A non-zero vector whose norm is not positive.
    Violated { witness: Vec<Scalar>, norm: Scalar },
}

impl Definiteness {
    pub fn is_positive(&self) -> bool {
        matches!(self, Definiteness::Positive)
    }
}

/// Decides positive definiteness of `diag(gram)` over `spec`.
pub fn is_positive_definite(spec: &FieldSpec, gram: &[Scalar]) -> Result<Definiteness> {
    for (i, g) in gram.iter().enumerate() {
        spec.check_same(g.spec())?;
        if !g.is_positive() {
            let mut witness = vec![Scalar::zero(spec); gram.len()];
            witness[i] = Scalar::one(spec);
            return Ok(Definiteness::Violated {
                witness,
                norm: g.clone(),
            });
        }
    }
    Ok(Definiteness::Positive)
}

impl QuadSpace {
    pub fn new(spec: &FieldSpec, gram: Vec<Scalar>) -> Result<Self> {
        if gram.is_empty() {
            return Err(SpaceError::EmptySpace);
        }
        if let Definiteness::Violated { witness, norm } = is_positive_definite(spec, &gram)? {
            let index = witness.iter().position(|c| !c.is_zero()).expect("basis vector");
            return Err(SpaceError::NotPositiveDefinite {
                index,
                norm: norm.to_string(),
            });
        }
        Ok(QuadSpace(Arc::new(SpaceRepr {
            spec: spec.clone(),
            gram,
        })))
    }

    /// `K^dim` with the standard form.
    pub fn standard(spec: &FieldSpec, dim: usize) -> Result<Self> {
        Self::new(spec, vec![Scalar::one(spec); dim])
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn dim(&self) -> usize {
        self.0.gram.len()
    }

    pub fn gram(&self) -> &[Scalar] {
        &self.0.gram
    }

    /// The same form over an extension field.
    pub fn extend(&self, spec: &FieldSpec) -> Result<QuadSpace> {
        if spec == self.spec() {
            return Ok(self.clone());
        }
        let gram = self.gram().iter().map(|g| g.embed(spec)).collect::<Result<Vec<_>, _>>()?;
        Ok(QuadSpace(Arc::new(SpaceRepr {
            spec: spec.clone(),
            gram,
        })))
    }

    pub fn vector(&self, coords: Vec<Scalar>) -> Result<Vector> {
        Vector::new(self, coords)
    }

    /// Parses coordinates given in the scalar text grammar.
    pub fn parse_vector<S: AsRef<str>>(&self, coords: &[S]) -> Result<Vector> {
        let coords = coords
            .iter()
            .map(|c| Scalar::parse(c.as_ref(), self.spec()))
            .collect::<Result<Vec<_>, _>>()?;
        self.vector(coords)
    }

    pub fn zero_vector(&self) -> Vector {
        Vector {
            space: self.clone(),
            coords: vec![Scalar::zero(self.spec()); self.dim()],
        }
    }

    /// The `i`-th standard basis vector (zero-based).
    pub fn basis(&self, i: usize) -> Vector {
        let mut v = self.zero_vector();
        v.coords[i] = Scalar::one(self.spec());
        v
    }
}

/// A coordinate vector of a [`QuadSpace`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    space: QuadSpace,
    coords: Vec<Scalar>,
}

impl Vector {
    pub fn new(space: &QuadSpace, coords: Vec<Scalar>) -> Result<Self> {
        if coords.len() != space.dim() {
            return Err(SpaceError::DimensionMismatch {
                expected: space.dim(),
                got: coords.len(),
            });
        }
        for c in &coords {
            space.spec().check_same(c.spec())?;
        }
        Ok(Vector {
            space: space.clone(),
            coords,
        })
    }

    pub fn space(&self) -> &QuadSpace {
        &self.space
    }

    pub fn spec(&self) -> &FieldSpec {
        self.space.spec()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    fn same_space(&self, other: &Vector) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(SpaceError::SpaceMismatch)
        }
    }

    /// `<self, other> = sum g_i x_i y_i`.
    pub fn inner(&self, other: &Vector) -> Result<Scalar> {
        self.same_space(other)?;
        let terms: Vec<Scalar> = self
            .space
            .gram()
            .iter()
            .zip(self.coords.iter().zip(&other.coords))
            .filter(|(_, (a, b))| !a.is_zero() && !b.is_zero())
            .map(|(g, (a, b))| g * &(a * b))
            .collect();
        Ok(scalar::sum(self.spec(), &terms))
    }

    pub fn norm_sq(&self) -> Scalar {
        self.inner(self).expect("same space")
    }

    pub fn try_add(&self, other: &Vector) -> Result<Vector> {
        self.same_space(other)?;
        Ok(self.map2(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Vector) -> Result<Vector> {
        self.same_space(other)?;
        Ok(self.map2(other, |a, b| a - b))
    }

    fn map2(&self, other: &Vector, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Vector {
        Vector {
            space: self.space.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Result<Vector> {
        self.spec().check_same(c.spec())?;
        Ok(Vector {
            space: self.space.clone(),
            coords: self.coords.iter().map(|x| x * c).collect(),
        })
    }

    pub fn neg(&self) -> Vector {
        Vector {
            space: self.space.clone(),
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }

    /// The same vector in `space`, which must be this vector's space over an
    /// extension field.
    pub fn embed(&self, space: &QuadSpace) -> Result<Vector> {
        if space == &self.space {
            return Ok(self.clone());
        }
        if self.spec().is_subfield_of(space.spec()) && self.space.extend(space.spec())? == *space {
            let coords = self.coords.iter().map(|c| c.embed(space.spec())).collect::<Result<Vec<_>, _>>()?;
            return Vector::new(space, coords);
        }
        Err(SpaceError::SpaceMismatch)
    }

    /// `z = y - <y,x> <x,x>^-1 x`: orthogonal to `x` and spanning the same
    /// plane with `x` as `y` does; zero exactly when `y` is a multiple of `x`.
    pub fn l1_witness(x: &Vector, y: &Vector) -> Result<Vector> {
        x.same_space(y)?;
        if x.is_zero() {
            return Err(SpaceError::ZeroVector);
        }
        let c = y.inner(x)?.try_div(&x.norm_sq())?;
        y.try_sub(&x.scale(&c)?)
    }

    /// A unit vector on the line of `self`, adjoining `sqrt(<x,x>)` when it is
    /// not already in the field. Returns the (possibly extended) spec.
    pub fn normalize(&self) -> Result<(FieldSpec, Vector)> {
        if self.is_zero() {
            return Err(SpaceError::ZeroVector);
        }
        let (spec, len) = self.norm_sq().sqrt_adjoin()?;
        let space = self.space.extend(&spec)?;
        let v = self.embed(&space)?;
        let inv = len.inv()?;
        Ok((spec, v.scale(&inv)?))
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A one-dimensional subspace, stored by its representative whose first
/// non-zero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    rep: Vector,
}

impl ProjPoint {
    pub fn new(v: &Vector) -> Result<Self> {
        let lead = v.coords.iter().find(|c| !c.is_zero()).ok_or(SpaceError::ZeroVector)?;
        let inv = lead.inv()?;
        Ok(ProjPoint { rep: v.scale(&inv)? })
    }

    pub fn space(&self) -> &QuadSpace {
        &self.rep.space
    }

    pub fn representative(&self) -> &Vector {
        &self.rep
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.rep.coords
    }

    /// `<p> _|_ <q>`; independent of the representatives.
    pub fn is_orthogonal(&self, other: &ProjPoint) -> Result<bool> {
        Ok(self.rep.inner(&other.rep)?.is_zero())
    }

    pub fn contains(&self, v: &Vector) -> Result<bool> {
        if v.is_zero() {
            return Ok(false);
        }
        Ok(&ProjPoint::new(v)? == self)
    }

    pub fn embed(&self, space: &QuadSpace) -> Result<ProjPoint> {
        Ok(ProjPoint {
            rep: self.rep.embed(space)?,
        })
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.rep)
    }
}
