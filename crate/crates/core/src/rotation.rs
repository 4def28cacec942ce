//! Exact orthogonal operators on a [`QuadSpace`]: validation, basic
//! rotations in a plane, half-angle roots, Givens factorization and the
//! induced maps on projective points.

use crate::quadspace::{ProjPoint, QuadSpace, SpaceError, Vector};
use crate::scalar::{self, FieldKind, FieldSpec, Scalar, ScalarError, MAX_TOWER_DEPTH};
use serde::Serialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RotationError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("matrix must be {dim}x{dim}, row {row} has {len} entries")]
    Shape { dim: usize, row: usize, len: usize },
    #[error("not orthogonal: <U e{}, U e{}> = {got}, expected {expected}", i + 1, j + 1)]
    NotOrthogonal { i: usize, j: usize, got: String, expected: String },
    #[error("determinant is -1, not a rotation")]
    NotARotation,
    #[error("not a basic rotation: {0}")]
    NotBasic(String),
    #[error("points coincide")]
    SamePoint,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("only 2^k-th roots are supported, got n = {0}")]
    UnsupportedRoot(u32),
    #[error("square roots are unavailable over {0}")]
    NonArchimedean(FieldSpec),
}

pub type Result<T, E = RotationError> = std::result::Result<T, E>;

type Rows = Vec<Vec<Scalar>>;

/// Depth limit for a computation starting at `spec` that may adjoin at most
/// `max_adjunctions` radicands.
fn depth_cap(spec: &FieldSpec, max_adjunctions: usize) -> usize {
    (spec.depth() + max_adjunctions).min(MAX_TOWER_DEPTH)
}

fn require_tower(spec: &FieldSpec) -> Result<()> {
    match spec.kind() {
        FieldKind::Infinitesimal => Err(RotationError::NonArchimedean(spec.clone())),
        _ => Ok(()),
    }
}

fn determinant(rows: &Rows, spec: &FieldSpec) -> Result<Scalar> {
    let mut m = rows.clone();
    let n = m.len();
    let mut det = Scalar::one(spec);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Ok(Scalar::zero(spec));
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let inv = m[c][c].inv()?;
        det = &det * &m[c][c];
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] * &inv;
            for k in c..n {
                let t = &f * &m[c][k];
                m[r][k] = &m[r][k] - &t;
            }
        }
    }
    Ok(det)
}

/// A `G`-orthogonal operator: `U^T G U = G` for the diagonal Gram matrix `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoMatrix {
    space: QuadSpace,
    rows: Rows,
    det: i8,
}

impl OrthoMatrix {
    /// Validates `rows` (row-major) as an orthogonal operator on `space`.
    pub fn verify(space: &QuadSpace, rows: Rows) -> Result<Self> {
        let n = space.dim();
        if rows.len() != n {
            return Err(RotationError::Shape { dim: n, row: rows.len(), len: 0 });
        }
        let spec = space.spec();
        let mut lifted = Vec::with_capacity(n);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(RotationError::Shape { dim: n, row: r, len: row.len() });
            }
            lifted.push(row.iter().map(|x| x.embed(spec)).collect::<Result<Vec<_>, _>>()?);
        }
        let g = space.gram();
        for i in 0..n {
            for j in i..n {
                let terms: Vec<Scalar> = (0..n).map(|k| &(&g[k] * &lifted[k][i]) * &lifted[k][j]).collect();
                let got = scalar::sum(spec, &terms);
                let expected = if i == j { g[i].clone() } else { Scalar::zero(spec) };
                if got != expected {
                    return Err(RotationError::NotOrthogonal {
                        i,
                        j,
                        got: got.to_string(),
                        expected: expected.to_string(),
                    });
                }
            }
        }
        let det = determinant(&lifted, spec)?;
        let det = if det.is_one() {
            1
        } else if (-&det).is_one() {
            -1
        } else {
            unreachable!("orthogonal matrices have determinant +-1, got {det}")
        };
        Ok(OrthoMatrix { space: space.clone(), rows: lifted, det })
    }

    /// Parses entries in the scalar grammar, then validates.
    pub fn parse<S: AsRef<str>>(space: &QuadSpace, rows: &[Vec<S>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|x| Scalar::parse(x.as_ref(), space.spec())).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Rows, _>>()?;
        Self::verify(space, rows)
    }

    pub fn identity(space: &QuadSpace) -> Self {
        let n = space.dim();
        let spec = space.spec();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Scalar::one(spec) } else { Scalar::zero(spec) }).collect())
            .collect();
        OrthoMatrix { space: space.clone(), rows, det: 1 }
    }

    pub fn space(&self) -> &QuadSpace {
        &self.space
    }

    pub fn spec(&self) -> &FieldSpec {
        self.space.spec()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn det(&self) -> i8 {
        self.det
    }

    pub fn is_identity(&self) -> bool {
        *self == OrthoMatrix::identity(&self.space)
    }

    /// The same operator over an extension field.
    pub fn embed(&self, spec: &FieldSpec) -> Result<Self> {
        if spec == self.spec() {
            return Ok(self.clone());
        }
        let space = self.space.extend(spec)?;
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.embed(spec)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Rows, _>>()?;
        Ok(OrthoMatrix { space, rows, det: self.det })
    }

    /// Lifts both operands to the smallest common field.
    fn aligned(&self, other: &OrthoMatrix) -> Result<(OrthoMatrix, OrthoMatrix)> {
        let spec = self.spec().join(other.spec())?;
        let (a, b) = (self.embed(&spec)?, other.embed(&spec)?);
        if a.space != b.space {
            return Err(SpaceError::SpaceMismatch.into());
        }
        Ok((a, b))
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        let spec = self.spec().join(x.spec())?;
        let m = self.embed(&spec)?;
        let x = x.embed(m.space())?;
        let coords = m
            .rows
            .iter()
            .map(|row| {
                let terms: Vec<Scalar> = row.iter().zip(x.coords()).map(|(a, b)| a * b).collect();
                scalar::sum(&spec, &terms)
            })
            .collect();
        Ok(m.space.vector(coords)?)
    }

    /// `self * other`, i.e. `other` acts first.
    pub fn mul(&self, other: &OrthoMatrix) -> Result<OrthoMatrix> {
        let (a, b) = self.aligned(other)?;
        let n = a.dim();
        let spec = a.spec().clone();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let terms: Vec<Scalar> = (0..n).map(|k| &a.rows[i][k] * &b.rows[k][j]).collect();
                        scalar::sum(&spec, &terms)
                    })
                    .collect()
            })
            .collect();
        Ok(OrthoMatrix { space: a.space.clone(), rows, det: a.det * b.det })
    }

    /// `G^-1 U^T G`.
    pub fn inverse(&self) -> OrthoMatrix {
        let g = self.space.gram();
        let n = self.dim();
        let rows = (0..n)
            .map(|i| {
                let gi = g[i].inv().expect("positive Gram entries");
                (0..n).map(|j| &(&gi * &self.rows[j][i]) * &g[j]).collect()
            })
            .collect();
        OrthoMatrix { space: self.space.clone(), rows, det: self.det }
    }

    pub fn neg(&self) -> OrthoMatrix {
        let rows = self.rows.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        let det = if self.dim().is_multiple_of(2) { self.det } else { -self.det };
        OrthoMatrix { space: self.space.clone(), rows, det }
    }

    pub fn pow(&self, k: u32) -> OrthoMatrix {
        (0..k).fold(OrthoMatrix::identity(&self.space), |acc, _| {
            acc.mul(self).expect("same space")
        })
    }

    /// The projective map `<x> -> <U x>`.
    pub fn induced_map(&self, pts: &[ProjPoint]) -> Result<Vec<ProjPoint>> {
        pts.iter()
            .map(|p| Ok(ProjPoint::new(&self.apply(p.representative())?)?))
            .collect()
    }
}

/// A determinant-one operator acting on the plane `T = span{u, v}` by the
/// block `[[alpha, -beta], [beta, alpha]]` in the orthonormal frame
/// `(u/|u|, v/|v|)`, and as the identity on `T^_|_`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicRotation {
    matrix: OrthoMatrix,
    u: Vector,
    v: Vector,
    alpha: Scalar,
    beta: Scalar,
}

impl BasicRotation {
    /// `u`, `v` non-zero and orthogonal with `alpha^2 + beta^2 = 1`. When
    /// `beta != 0` and the norms differ, `sqrt(<u,u><v,v>)` must lie in the
    /// field; see [`BasicRotation::adjoining`].
    pub fn new(u: &Vector, v: &Vector, alpha: &Scalar, beta: &Scalar) -> Result<Self> {
        if u.space() != v.space() {
            return Err(SpaceError::SpaceMismatch.into());
        }
        if u.is_zero() || v.is_zero() {
            return Err(SpaceError::ZeroVector.into());
        }
        if !u.inner(v)?.is_zero() {
            return Err(RotationError::NotBasic("plane vectors are not orthogonal".into()));
        }
        let spec = u.spec();
        let (alpha, beta) = (alpha.embed(spec)?, beta.embed(spec)?);
        if !(&alpha.square() + &beta.square()).is_one() {
            return Err(RotationError::NotBasic(format!("alpha^2 + beta^2 != 1 for ({alpha}, {beta})")));
        }
        let (nu, nv) = (u.norm_sq(), v.norm_sq());
        let r = if beta.is_zero() {
            Scalar::zero(spec)
        } else if nu == nv {
            nu.clone()
        } else {
            (&nu * &nv).sqrt_in_field()?.ok_or_else(|| {
                RotationError::Precondition(format!("sqrt({}) is not in {spec}", &nu * &nv))
            })?
        };
        let space = u.space();
        let g = space.gram();
        let (su, sv) = (&r / &nv, &r / &nu);
        let am1 = &alpha - &Scalar::one(spec);
        let mut cols = Vec::with_capacity(space.dim());
        for j in 0..space.dim() {
            let a = &(&g[j] * &u.coords()[j]) / &nu;
            let b = &(&g[j] * &v.coords()[j]) / &nv;
            let x = space.basis(j);
            let inplane = u.scale(&a)?.try_add(&v.scale(&b)?)?;
            let turned = v.scale(&(&a * &su))?.try_sub(&u.scale(&(&b * &sv))?)?;
            cols.push(x.try_add(&inplane.scale(&am1)?)?.try_add(&turned.scale(&beta)?)?);
        }
        let rows = (0..space.dim())
            .map(|i| cols.iter().map(|c| c.coords()[i].clone()).collect())
            .collect();
        let matrix = OrthoMatrix::verify(space, rows)?;
        debug_assert_eq!(matrix.det, 1);
        Ok(BasicRotation {
            matrix,
            u: u.clone(),
            v: v.clone(),
            alpha,
            beta,
        })
    }

    /// Like [`BasicRotation::new`], first adjoining `sqrt(<u,u><v,v>)` when
    /// the block needs it.
    pub fn adjoining(
        u: &Vector,
        v: &Vector,
        alpha: &Scalar,
        beta: &Scalar,
        max_adjunctions: usize,
    ) -> Result<(FieldSpec, Self)> {
        let spec = u.spec().join(alpha.spec())?.join(beta.spec())?;
        let (nu, nv) = (u.norm_sq(), v.norm_sq());
        let spec = if beta.is_zero() || nu == nv {
            spec
        } else {
            require_tower(&spec)?;
            let prod = (&nu * &nv).embed(&spec)?;
            prod.sqrt_adjoin_capped(depth_cap(u.spec(), max_adjunctions))?.0
        };
        let space = u.space().extend(&spec)?;
        let rot = BasicRotation::new(&u.embed(&space)?, &v.embed(&space)?, alpha, beta)?;
        Ok((spec, rot))
    }

    /// The rotation in the coordinate plane `(e_i, e_k)`.
    pub fn coordinate(space: &QuadSpace, i: usize, k: usize, alpha: &Scalar, beta: &Scalar) -> Result<Self> {
        BasicRotation::new(&space.basis(i), &space.basis(k), alpha, beta)
    }

    pub fn matrix(&self) -> &OrthoMatrix {
        &self.matrix
    }

    pub fn plane(&self) -> (&Vector, &Vector) {
        (&self.u, &self.v)
    }

    /// `(i, k)` when the plane is spanned by basis vectors `e_i`, `e_k`.
    pub fn coordinate_plane(&self) -> Option<(usize, usize)> {
        let axis = |x: &Vector| {
            let mut nz = x.coords().iter().enumerate().filter(|(_, c)| !c.is_zero());
            match (nz.next(), nz.next()) {
                (Some((i, _)), None) => Some(i),
                _ => None,
            }
        };
        Some((axis(&self.u)?, axis(&self.v)?))
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    pub fn beta(&self) -> &Scalar {
        &self.beta
    }

    pub fn spec(&self) -> &FieldSpec {
        self.matrix.spec()
    }

    pub fn block(&self) -> [[Scalar; 2]; 2] {
        [
            [self.alpha.clone(), -&self.beta],
            [self.beta.clone(), self.alpha.clone()],
        ]
    }

    pub fn inverse(&self) -> BasicRotation {
        BasicRotation {
            matrix: self.matrix.inverse(),
            u: self.u.clone(),
            v: self.v.clone(),
            alpha: self.alpha.clone(),
            beta: -&self.beta,
        }
    }

    pub fn embed(&self, spec: &FieldSpec) -> Result<Self> {
        let matrix = self.matrix.embed(spec)?;
        Ok(BasicRotation {
            u: self.u.embed(matrix.space())?,
            v: self.v.embed(matrix.space())?,
            alpha: self.alpha.embed(spec)?,
            beta: self.beta.embed(spec)?,
            matrix,
        })
    }

    pub fn fixpoint_class(&self) -> FixpointCertificate {
        fixpoint_class(&self.block()).expect("basic rotations have canonical blocks")
    }
}

/// A basic rotation with `phi_U(p) = q`, built in the plane spanned by `p`
/// and `q`. Returns the spec containing the frame and the block entries.
pub fn basic_rotation_mapping(p: &ProjPoint, q: &ProjPoint, max_adjunctions: usize) -> Result<(FieldSpec, BasicRotation)> {
    if p == q {
        return Err(RotationError::SamePoint);
    }
    let base = p.space().spec().join(q.space().spec())?;
    require_tower(&base)?;
    let cap = depth_cap(&base, max_adjunctions);
    let space = p.space().extend(&base)?;
    let x = p.representative().embed(&space)?;
    let y = q.representative().embed(&space)?;

    let unit = |w: &Vector| -> Result<(FieldSpec, Vector)> {
        let (spec, len) = w.norm_sq().sqrt_adjoin_capped(cap)?;
        let w = w.embed(&w.space().extend(&spec)?)?;
        Ok((spec, w.scale(&len.inv()?)?))
    };
    let (spec, u) = unit(&x)?;
    let y = y.embed(u.space())?;
    let w = Vector::l1_witness(&u, &y)?;
    let (spec2, v) = unit(&w)?;
    let u = u.embed(v.space())?;
    let (spec3, yn) = unit(&y.embed(v.space())?)?;
    let (u, v) = (u.embed(yn.space())?, v.embed(yn.space())?);
    debug_assert!(spec.is_subfield_of(&spec2) && spec2.is_subfield_of(&spec3));
    let alpha = yn.inner(&u)?;
    let beta = yn.inner(&v)?;
    let rot = BasicRotation::new(&u, &v, &alpha, &beta)?;
    Ok((spec3, rot))
}

/// For orthogonal `p`, `q` with `phi_U(p) = q`: whether `phi_U(q) = p`.
pub fn swap_check(u: &BasicRotation, p: &ProjPoint, q: &ProjPoint) -> Result<bool> {
    if p == q {
        return Err(RotationError::Precondition("p and q coincide".into()));
    }
    let m = u.matrix();
    let (p, q) = (p.embed(m.space())?, q.embed(m.space())?);
    if !p.is_orthogonal(&q)? {
        return Err(RotationError::Precondition("p and q are not orthogonal".into()));
    }
    if !q.contains(&m.apply(p.representative())?)? {
        return Err(RotationError::Precondition("U does not map p to q".into()));
    }
    Ok(p.contains(&m.apply(q.representative())?)?)
}

/// `V` in the same plane with `V^2 = U`, taking the root with `alpha' >= 0`;
/// the half turn gets the quarter turn.
pub fn rotation_sqrt(rot: &BasicRotation, max_adjunctions: usize) -> Result<(FieldSpec, BasicRotation)> {
    let spec = rot.spec().clone();
    require_tower(&spec)?;
    let cap = depth_cap(&spec, max_adjunctions);
    let one = Scalar::one(&spec);
    let (u, v) = rot.plane();
    if (-rot.alpha()).is_one() {
        return BasicRotation::adjoining(u, v, &Scalar::zero(&spec), &one, cap - spec.depth());
    }
    let half = Scalar::from_ratio(&spec, 1, 2);
    let (spec2, a2) = (&(&one + rot.alpha()) * &half).sqrt_adjoin_capped(cap)?;
    let b2 = rot.beta().embed(&spec2)?.try_div(&(&a2 + &a2))?;
    let space = u.space().extend(&spec2)?;
    let rot2 = BasicRotation::new(&u.embed(&space)?, &v.embed(&space)?, &a2, &b2)?;
    Ok((spec2, rot2))
}

/// `W` with `W^n = U` for `n` a power of two, by iterated half-angle roots.
pub fn rotation_root(rot: &BasicRotation, n: u32, max_adjunctions: usize) -> Result<(FieldSpec, BasicRotation)> {
    if n == 0 || !n.is_power_of_two() {
        return Err(RotationError::UnsupportedRoot(n));
    }
    let base = rot.spec().depth();
    let mut w = rot.clone();
    for _ in 0..n.trailing_zeros() {
        let used = w.spec().depth() - base;
        w = rotation_sqrt(&w, max_adjunctions - used)?.1;
    }
    Ok((w.spec().clone(), w))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FixpointClass {
    /// `beta = 0`: `U = +-I` on the plane, fixing every point of its line.
    IdentityOnLine,
    /// `beta != 0`: no eigenvector in the plane.
    FixpointFreeOnLine,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixpointCertificate {
    pub class: FixpointClass,
    /// `(tr)^2 - 4 det = 4(alpha^2 - 1)` of the block's characteristic
    /// polynomial; negative exactly for the fixpoint-free class.
    pub discriminant: Scalar,
}

/// Classifies a 2x2 block `[[alpha, -beta], [beta, alpha]]` with
/// `alpha^2 + beta^2 = 1`; anything else, reflections included, is rejected.
pub fn fixpoint_class(block: &[[Scalar; 2]; 2]) -> Result<FixpointCertificate> {
    let [[a, b], [c, d]] = block;
    let spec = a.spec().join(b.spec())?.join(c.spec())?.join(d.spec())?;
    let [a, b, c, d] = [a, b, c, d].map(|x| x.embed(&spec));
    let (a, b, c, d) = (a?, b?, c?, d?);
    let det = &(&a * &d) - &(&b * &c);
    if (-&det).is_one() {
        return Err(RotationError::NotBasic(format!("determinant -1 (reflection) for block [[{a}, {b}], [{c}, {d}]]")));
    }
    if a != d || b != -&c || !det.is_one() {
        return Err(RotationError::NotBasic(format!("block [[{a}, {b}], [{c}, {d}]] is not of the form [[alpha, -beta], [beta, alpha]] with alpha^2 + beta^2 = 1")));
    }
    let four = Scalar::from_int(&spec, 4);
    let discriminant = &four * &(&a.square() - &Scalar::one(&spec));
    let class = if c.is_zero() {
        FixpointClass::IdentityOnLine
    } else {
        FixpointClass::FixpointFreeOnLine
    };
    debug_assert_eq!(class == FixpointClass::FixpointFreeOnLine, discriminant.is_negative());
    Ok(FixpointCertificate { class, discriminant })
}

/// Factors `G_1, .., G_m` in coordinate planes with `G_1 ... G_m = U`.
#[derive(Debug, Clone)]
pub struct GivensDecomposition {
    pub spec: FieldSpec,
    pub factors: Vec<BasicRotation>,
    /// Radicands adjoined to the input's field.
    pub adjunctions: usize,
}

impl GivensDecomposition {
    pub fn product(&self, space: &QuadSpace) -> Result<OrthoMatrix> {
        let space = space.extend(&self.spec)?;
        self.factors
            .iter()
            .try_fold(OrthoMatrix::identity(&space), |acc, g| acc.mul(g.matrix()))
    }
}

/// Group of rows merged into its lead member, which carries the
/// accumulated value.
#[derive(Clone)]
struct Group {
    rows: u64,
    lead: usize,
    /// `sum_k g_k x_k^2` over the group.
    weight: Scalar,
}

impl Group {
    fn row(k: usize, x: &Scalar, g: &[Scalar]) -> Group {
        Group { rows: 1 << k, lead: k, weight: &g[k] * &x.square() }
    }
}

/// The pivot value after merging `b` into `a`, and the frame factor
/// `sqrt(g_a g_b)`, when both are already in the field.
fn merge_roots(a: &Group, b: &Group, g: &[Scalar]) -> Result<Option<(Scalar, Scalar)>> {
    let rho2 = (&a.weight + &b.weight).try_div(&g[a.lead])?;
    let Some(rho) = rho2.sqrt_in_field()? else { return Ok(None) };
    let r = if g[a.lead] == g[b.lead] {
        Some(g[a.lead].clone())
    } else {
        (&g[a.lead] * &g[b.lead]).sqrt_in_field()?
    };
    Ok(r.map(|r| (rho, r)))
}

/// Orders a pair so the first member leads: the group holding `pivot`,
/// else the one with the smaller lead.
fn ordered<'a>(x: &'a Group, y: &'a Group, pivot: usize) -> (&'a Group, &'a Group) {
    let first = if y.rows >> pivot & 1 == 1 {
        false
    } else {
        x.rows >> pivot & 1 == 1 || x.lead < y.lead
    };
    if first { (x, y) } else { (y, x) }
}

type Plan = (usize, Vec<(usize, usize)>);

/// A merge order needing the fewest new square roots, by exhaustive search
/// over partitions of the rows. A merge costs one when its pivot has no
/// square root in the current field.
fn cheapest_plan(groups: &[Group], pivot: usize, g: &[Scalar], memo: &mut HashMap<Vec<u64>, Plan>) -> Result<Plan> {
    if groups.len() == 1 {
        return Ok((0, Vec::new()));
    }
    let key = {
        let mut k: Vec<u64> = groups.iter().map(|x| x.rows).collect();
        k.sort_unstable();
        k
    };
    if let Some(hit) = memo.get(&key) {
        return Ok(hit.clone());
    }
    let mut best: Option<Plan> = None;
    'pairs: for i in 0..groups.len() {
        for j in i + 1..groups.len() {
            let (a, b) = ordered(&groups[i], &groups[j], pivot);
            let cost = usize::from(merge_roots(a, b, g)?.is_none());
            let mut rest: Vec<Group> = groups
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i && k != j)
                .map(|(_, x)| x.clone())
                .collect();
            rest.push(Group { rows: a.rows | b.rows, lead: a.lead, weight: &a.weight + &b.weight });
            let (c, mut plan) = cheapest_plan(&rest, pivot, g, memo)?;
            if best.as_ref().is_none_or(|(bc, _)| cost + c < *bc) {
                plan.insert(0, (a.lead, b.lead));
                best = Some((cost + c, plan));
                if cost + c == 0 {
                    break 'pairs;
                }
            }
        }
    }
    let best = best.expect("at least one pair");
    memo.insert(key, best.clone());
    Ok(best)
}

/// Left-multiplies by Givens rotations until the matrix is diagonal,
/// clearing the cheapest column first; each column is merged into its
/// diagonal row. Square roots are adjoined as the plan needs them.
fn eliminate(u: &OrthoMatrix, cap: usize) -> Result<(OrthoMatrix, Vec<BasicRotation>)> {
    let n = u.dim();
    let mut work = u.clone();
    let mut left: Vec<BasicRotation> = Vec::new();
    let mut open: Vec<usize> = (0..n).collect();

    while !open.is_empty() {
        let g = work.space().gram().to_vec();
        let mut choice: Option<(usize, Plan)> = None;
        for &col in &open {
            let groups: Vec<Group> = open
                .iter()
                .filter(|&&k| k == col || !work.rows[k][col].is_zero())
                .map(|&k| Group::row(k, &work.rows[k][col], &g))
                .collect();
            let plan = cheapest_plan(&groups, col, &g, &mut HashMap::new())?;
            if choice.as_ref().is_none_or(|(_, (c, _))| plan.0 < *c) {
                choice = Some((col, plan));
            }
        }
        let (col, (_, steps)) = choice.expect("open columns remain");
        open.retain(|&c| c != col);

        for (i, k) in steps {
            let g = work.space().gram().to_vec();
            let (a, b) = (Group::row(i, &work.rows[i][col], &g), Group::row(k, &work.rows[k][col], &g));
            if merge_roots(&a, &b, &g)?.is_none() {
                let rho2 = (&a.weight + &b.weight).try_div(&g[i])?;
                let (s1, _) = rho2.sqrt_adjoin_capped(cap)?;
                let gg = (&g[i] * &g[k]).embed(&s1)?;
                let (s2, _) = gg.sqrt_adjoin_capped(cap)?;
                work = work.embed(&s2)?;
                left = left.iter().map(|q| q.embed(&s2)).collect::<Result<_>>()?;
            }
            let g = work.space().gram().to_vec();
            let (xi, xk) = (&work.rows[i][col], &work.rows[k][col]);
            let (a, b) = (Group::row(i, xi, &g), Group::row(k, xk, &g));
            let (rho, r) = merge_roots(&a, &b, &g)?.expect("roots adjoined");
            let alpha = xi.try_div(&rho)?;
            let beta = -&(xk * &r).try_div(&(&rho * &g[i]))?;
            let q = BasicRotation::coordinate(work.space(), i, k, &alpha, &beta)?;
            work = q.matrix().mul(&work)?;
            debug_assert!(work.rows[k][col].is_zero() && work.rows[i][col] == rho);
            left.push(q);
        }
    }
    Ok((work, left))
}

/// Factors `u = G_1 ... G_m` from the elimination `Q_m .. Q_1 u = D`.
fn factor(u: &OrthoMatrix, cap: usize) -> Result<GivensDecomposition> {
    let (work, left) = eliminate(u, cap)?;
    let spec = work.spec().clone();
    let n = u.dim();
    let minus: Vec<usize> = (0..n).filter(|&i| work.rows[i][i].is_negative()).collect();
    debug_assert!(minus.len().is_multiple_of(2));
    let mut factors: Vec<BasicRotation> = left.iter().map(BasicRotation::inverse).collect();
    let (m1, z) = (-Scalar::one(&spec), Scalar::zero(&spec));
    for pair in minus.chunks(2) {
        factors.push(BasicRotation::coordinate(work.space(), pair[0], pair[1], &m1, &z)?);
    }
    Ok(GivensDecomposition {
        adjunctions: spec.depth() - u.spec().depth(),
        spec,
        factors,
    })
}

/// Factors `u` into coordinate-plane rotations. Both `u` and `u^-1` are
/// eliminated when the first needs square roots, keeping the cheaper; at
/// most `max_adjunctions` radicands are adjoined.
pub fn givens_decompose(u: &OrthoMatrix, max_adjunctions: usize) -> Result<GivensDecomposition> {
    require_tower(u.spec())?;
    if u.det() != 1 {
        return Err(RotationError::NotARotation);
    }
    let cap = depth_cap(u.spec(), max_adjunctions);
    let direct = factor(u, cap);
    let out = match direct {
        Ok(d) if d.adjunctions == 0 => d,
        direct => {
            let reverse = factor(&u.inverse(), cap).map(|d| GivensDecomposition {
                factors: d.factors.iter().rev().map(BasicRotation::inverse).collect(),
                ..d
            });
            match (direct, reverse) {
                (Ok(a), Ok(b)) => if b.adjunctions < a.adjunctions { b } else { a },
                (Ok(a), Err(_)) => a,
                (Err(_), Ok(b)) => b,
                (Err(e), Err(_)) => return Err(e),
            }
        }
    };
    let target = u.embed(&out.spec)?;
    if out.product(u.space())? != target {
        unreachable!("Givens factors do not reproduce the input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn s(spec: &FieldSpec, t: &str) -> Scalar {
        Scalar::parse(t, spec).unwrap()
    }

    fn mat(space: &QuadSpace, rows: &[&[&str]]) -> Result<OrthoMatrix> {
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        OrthoMatrix::parse(space, &rows)
    }

    fn q4() -> QuadSpace {
        QuadSpace::standard(&q(), 4).unwrap()
    }

    fn pt(space: &QuadSpace, xs: &[&str]) -> ProjPoint {
        ProjPoint::new(&space.parse_vector(xs).unwrap()).unwrap()
    }

    fn rot345() -> OrthoMatrix {
        mat(&q4(), &[&["3/5", "-4/5", "0", "0"], &["4/5", "3/5", "0", "0"], &["0", "0", "1", "0"], &["0", "0", "0", "1"]]).unwrap()
    }

    #[test]
    fn verify_examples() {
        let id = OrthoMatrix::identity(&q4());
        assert_eq!(id.det(), 1);
        assert_eq!(rot345().det(), 1);
        let shear = mat(&q4(), &[&["1", "1", "0", "0"], &["0", "1", "0", "0"], &["0", "0", "1", "0"], &["0", "0", "0", "1"]]);
        assert!(matches!(shear, Err(RotationError::NotOrthogonal { i: 0, j: 1, .. })));
        let swap = mat(&q4(), &[&["0", "1", "0", "0"], &["1", "0", "0", "0"], &["0", "0", "1", "0"], &["0", "0", "0", "1"]]).unwrap();
        assert_eq!(swap.det(), -1);
    }

    #[test]
    fn verify_weighted_gram() {
        let space = QuadSpace::new(&q(), vec![Scalar::from_int(&q(), 1), Scalar::from_int(&q(), 4)]).unwrap();
        // A quarter turn for <x,y> = x1 y1 + 4 x2 y2.
        let m = mat(&space, &[&["0", "-2"], &["1/2", "0"]]).unwrap();
        assert_eq!(m.det(), 1);
        assert_eq!(m.mul(&m.inverse()).unwrap(), OrthoMatrix::identity(&space));
        let d = givens_decompose(&m, 4).unwrap();
        assert_eq!(d.adjunctions, 0);
        assert_eq!(d.product(&space).unwrap(), m);
    }

    #[test]
    fn mapping_examples() {
        let sp = q4();
        let (spec, r) = basic_rotation_mapping(&pt(&sp, &["1", "0", "0", "0"]), &pt(&sp, &["3", "4", "0", "0"]), 4).unwrap();
        assert_eq!(spec, q());
        assert_eq!(r.matrix(), &rot345());

        let (_, r) = basic_rotation_mapping(&pt(&sp, &["1", "0", "0", "0"]), &pt(&sp, &["0", "1", "0", "0"]), 4).unwrap();
        assert_eq!(r.block()[0], [Scalar::zero(&q()), Scalar::from_int(&q(), -1)]);

        let (spec, r) = basic_rotation_mapping(&pt(&sp, &["1", "0", "0", "0"]), &pt(&sp, &["1", "1", "0", "0"]), 4).unwrap();
        assert_eq!(spec.to_string(), "Q(sqrt(2))");
        assert_eq!(r.alpha(), &s(&spec, "sqrt1/2"));
        assert_eq!(r.beta(), &s(&spec, "sqrt1/2"));
        let image = r.matrix().apply(&sp.basis(0)).unwrap();
        assert!(pt(&sp, &["1", "1", "0", "0"]).embed(r.matrix().space()).unwrap().contains(&image).unwrap());

        let p = pt(&sp, &["1", "0", "0", "0"]);
        assert_eq!(basic_rotation_mapping(&p, &p, 4), Err(RotationError::SamePoint));
    }

    #[test]
    fn swap_examples() {
        let sp = q4();
        let (e1, e2) = (pt(&sp, &["1", "0", "0", "0"]), pt(&sp, &["0", "1", "0", "0"]));
        let (_, r) = basic_rotation_mapping(&e1, &e2, 4).unwrap();
        assert!(swap_check(&r, &e1, &e2).unwrap());
        let id = BasicRotation::coordinate(&sp, 0, 1, &Scalar::one(&q()), &Scalar::zero(&q())).unwrap();
        assert!(matches!(swap_check(&id, &e1, &e1), Err(RotationError::Precondition(_))));
    }

    #[test]
    fn sqrt_examples() {
        let sp = q4();
        let quarter = BasicRotation::coordinate(&sp, 0, 1, &Scalar::zero(&q()), &Scalar::one(&q())).unwrap();
        let (spec, v) = rotation_sqrt(&quarter, 4).unwrap();
        assert_eq!(spec.to_string(), "Q(sqrt(2))");
        assert_eq!(v.alpha(), &s(&spec, "sqrt1/2"));
        assert_eq!(v.beta(), &s(&spec, "sqrt1/2"));
        assert_eq!(v.matrix().pow(2), quarter.matrix().embed(&spec).unwrap());

        let id = BasicRotation::coordinate(&sp, 0, 1, &Scalar::one(&q()), &Scalar::zero(&q())).unwrap();
        let (spec, v) = rotation_sqrt(&id, 4).unwrap();
        assert_eq!(spec, q());
        assert!(v.matrix().is_identity());

        let half = BasicRotation::coordinate(&sp, 0, 1, &Scalar::from_int(&q(), -1), &Scalar::zero(&q())).unwrap();
        let (_, v) = rotation_sqrt(&half, 4).unwrap();
        assert_eq!(v.matrix(), quarter.matrix());

        let (spec, w) = rotation_root(&quarter, 8, 4).unwrap();
        assert!(spec.depth() <= 3);
        assert_eq!(w.matrix().pow(8), quarter.matrix().embed(&spec).unwrap());
        assert_eq!(rotation_root(&quarter, 3, 4).unwrap_err(), RotationError::UnsupportedRoot(3));
    }

    #[test]
    fn fixpoint_examples() {
        let b = |xs: [&str; 4]| {
            let v = xs.map(|t| s(&q(), t));
            let [a, b, c, d] = v;
            [[a, b], [c, d]]
        };
        let c = fixpoint_class(&b(["-1", "0", "0", "-1"])).unwrap();
        assert_eq!(c.class, FixpointClass::IdentityOnLine);
        let c = fixpoint_class(&b(["3/5", "-4/5", "4/5", "3/5"])).unwrap();
        assert_eq!(c.class, FixpointClass::FixpointFreeOnLine);
        assert_eq!(c.discriminant, s(&q(), "-64/25"));
        assert!(matches!(fixpoint_class(&b(["3/5", "4/5", "4/5", "-3/5"])), Err(RotationError::NotBasic(m)) if m.contains("reflection")));
        assert!(fixpoint_class(&b(["1", "1", "0", "1"])).is_err());
    }

    #[test]
    fn givens_examples() {
        let d = givens_decompose(&rot345(), 4).unwrap();
        assert_eq!(d.factors.len(), 1);
        assert_eq!(d.factors[0].matrix(), &rot345());
        assert_eq!(d.adjunctions, 0);

        let d = givens_decompose(&OrthoMatrix::identity(&q4()), 4).unwrap();
        assert!(d.factors.is_empty());

        let minus = OrthoMatrix::identity(&q4()).neg();
        let d = givens_decompose(&minus, 4).unwrap();
        assert_eq!(d.factors.len(), 2);
        assert_eq!(d.product(&q4()).unwrap(), minus);
    }

    #[test]
    fn givens_needs_a_radical() {
        // Column (2/3, 2/3, 1/3) has no rational Givens pivot.
        let q3 = QuadSpace::standard(&q(), 3).unwrap();
        let u = mat(&q3, &[&["2/3", "-2/3", "1/3"], &["2/3", "1/3", "-2/3"], &["1/3", "2/3", "2/3"]]).unwrap();
        assert_eq!(u.det(), 1);
        let d = givens_decompose(&u, 4).unwrap();
        assert!(d.adjunctions >= 1);
        assert_eq!(d.product(&q3).unwrap(), u.embed(&d.spec).unwrap());
        assert!(d.factors.len() <= 3 + 1);
        assert!(matches!(givens_decompose(&u, 0), Err(RotationError::Scalar(ScalarError::DepthCap { .. }))));
    }

    #[test]
    fn givens_rejects_reflections() {
        let swap = mat(&q4(), &[&["0", "1", "0", "0"], &["1", "0", "0", "0"], &["0", "0", "1", "0"], &["0", "0", "0", "1"]]).unwrap();
        assert_eq!(givens_decompose(&swap, 4).unwrap_err(), RotationError::NotARotation);
    }

    #[test]
    fn induced_map_examples() {
        let sp = q4();
        let pts = vec![pt(&sp, &["1", "0", "0", "0"]), pt(&sp, &["0", "1", "0", "0"])];
        let quarter = BasicRotation::coordinate(&sp, 0, 1, &Scalar::zero(&q()), &Scalar::one(&q())).unwrap();
        let img = quarter.matrix().induced_map(&pts).unwrap();
        assert_eq!(img, vec![pts[1].clone(), pts[0].clone()]);
        assert_eq!(OrthoMatrix::identity(&sp).induced_map(&pts).unwrap(), pts);
        let m = rot345();
        assert_eq!(m.induced_map(&pts).unwrap(), m.neg().induced_map(&pts).unwrap());
    }
}
