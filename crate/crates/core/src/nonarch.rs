//! Infinitesimal and medial vectors over `Q(eps)` and the relation `~`
//! identifying lines whose medial representatives differ infinitesimally.
//!
//! A line admits a medial representative exactly when its norm has even
//! valuation. For such lines `<x> ~ <y>` holds exactly when
//! `1 - <x,y>^2 / (<x,x><y,y>)` is infinitesimal or zero: writing
//! `z = x - k y` with `k = <x,y>/<y,y>`, every `x - m y` has norm at least
//! `<z,z>`, and `k` is medial whenever `z` is infinitesimal and `x` medial.
//! The test is scale-free and makes sense over every spec; over Archimedean
//! fields it collapses to equality of lines.

use crate::quadspace::{ProjPoint, QuadSpace, SpaceError, Vector};
use crate::report::{Check, CheckReport};
use crate::rotation::{BasicRotation, OrthoMatrix, RotationError};
use crate::scalar::{FieldKind, FieldSpec, MagnitudeClass, Poly, Scalar, ScalarError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NonarchError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Rotation(#[from] RotationError),
    #[error("expected a space over Q(eps), got {0}")]
    WrongSpec(FieldSpec),
    #[error("rotation {index} has entry ({}, {}) of negative valuation", row + 1, col + 1)]
    UnboundedRotation { index: usize, row: usize, col: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = NonarchError> = std::result::Result<T, E>;

fn require_eps(spec: &FieldSpec) -> Result<()> {
    match spec.kind() {
        FieldKind::Infinitesimal => Ok(()),
        _ => Err(NonarchError::WrongSpec(spec.clone())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VectorClass {
    /// `<x,x>` infinitesimal; includes the zero vector.
    Infinitesimal,
    Medial,
    Neither,
}

fn class_of(norm: &Scalar) -> VectorClass {
    match norm.classify_magnitude() {
        MagnitudeClass::Zero | MagnitudeClass::Infinitesimal => VectorClass::Infinitesimal,
        MagnitudeClass::Medial => VectorClass::Medial,
        MagnitudeClass::Infinite => VectorClass::Neither,
    }
}

pub fn classify_vector(x: &Vector) -> Result<VectorClass> {
    require_eps(x.spec())?;
    Ok(class_of(&x.norm_sq()))
}

/// `x * eps^-v` with `2v` the valuation of `<x,x>`, when that is even.
fn medial_rep(x: &Vector) -> Result<Option<Vector>> {
    let v = x.norm_sq().valuation().ok_or(SpaceError::ZeroVector)?;
    if v % 2 != 0 {
        return Ok(None);
    }
    if x.spec().kind() != FieldKind::Infinitesimal {
        return Ok(Some(x.clone()));
    }
    let k = Scalar::one(x.spec()).shift_eps(-v / 2)?;
    Ok(Some(x.scale(&k)?))
}

/// A medial representative of `p`, if the line has one.
pub fn medial_representative(p: &ProjPoint) -> Result<Option<Vector>> {
    medial_rep(p.representative())
}

/// Medial `x' in p`, `y' in q` with `x' - y'` infinitesimal, and that
/// difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxWitness {
    pub x: Vector,
    pub y: Vector,
    pub difference: Vector,
}

/// Decides `p ~ q`, returning the witnessing representatives.
pub fn approx_witness(p: &ProjPoint, q: &ProjPoint) -> Result<Option<ApproxWitness>> {
    if p.space() != q.space() {
        return Err(SpaceError::SpaceMismatch.into());
    }
    let (Some(x), Some(y)) = (medial_representative(p)?, medial_representative(q)?) else {
        return Ok(None);
    };
    let k = x.inner(&y)?.try_div(&y.norm_sq())?;
    let y = y.scale(&k)?;
    let difference = x.try_sub(&y)?;
    if class_of(&difference.norm_sq()) != VectorClass::Infinitesimal {
        return Ok(None);
    }
    debug_assert_eq!(class_of(&y.norm_sq()), VectorClass::Medial);
    Ok(Some(ApproxWitness { x, y, difference }))
}

pub fn approx(p: &ProjPoint, q: &ProjPoint) -> Result<bool> {
    if p.space() != q.space() {
        return Err(SpaceError::SpaceMismatch.into());
    }
    if p.space().spec().kind() != FieldKind::Infinitesimal {
        return Ok(p == q);
    }
    Ok(approx_cleared(p.space(), p.coords(), q.coords()))
}

/// Multiplies a list of `Q(eps)` elements by the product of their distinct
/// denominators, giving polynomials and that multiplier.
fn clear_denominators(xs: &[Scalar]) -> (Vec<Poly>, Poly) {
    let parts: Vec<(&Poly, &Poly)> = xs.iter().map(|x| x.eps_fraction().expect("Q(eps) element")).collect();
    let mut dens: Vec<&Poly> = Vec::new();
    for (_, d) in &parts {
        if !d.is_one() && !dens.contains(d) {
            dens.push(d);
        }
    }
    let one = Poly::constant(num_rational::BigRational::from_integer(1.into()));
    let cleared = parts
        .iter()
        .map(|(n, d)| dens.iter().filter(|e| *e != d).fold((*n).clone(), |acc, e| acc.mul(e)))
        .collect();
    let multiplier = dens.iter().fold(one, |acc, e| acc.mul(e));
    (cleared, multiplier)
}

fn form(g: &[Poly], x: &[Poly], y: &[Poly]) -> Poly {
    g.iter()
        .zip(x.iter().zip(y))
        .fold(Poly::zero(), |acc, (gi, (xi, yi))| acc.add(&gi.mul(&xi.mul(yi))))
}

/// The sine test on denominator-free representatives. Scaling a line's
/// representative or the whole form by a non-zero factor changes neither
/// the ratio `(AB - C^2) / AB` nor the parity of norm valuations beyond the
/// form's own multiplier.
fn approx_cleared(space: &QuadSpace, x: &[Scalar], y: &[Scalar]) -> bool {
    let (g, lg) = clear_denominators(space.gram());
    let (x, _) = clear_denominators(x);
    let (y, _) = clear_denominators(y);
    let a = form(&g, &x, &x);
    let b = form(&g, &y, &y);
    let shift = lg.order().expect("non-zero multiplier");
    let even = |n: &Poly| (n.order().expect("non-zero norm") + shift).is_multiple_of(2);
    if !even(&a) || !even(&b) {
        return false;
    }
    let c = form(&g, &x, &y);
    let d = a.mul(&b).add(&c.mul(&c).neg());
    match d.order() {
        None => true,
        Some(v) => v > a.order().unwrap() + b.order().unwrap(),
    }
}

/// `<x,y>^2 <= <x,x><y,y>` and `<x,y>` infinitesimal, for `x`, `y` each
/// infinitesimal or medial and at least one infinitesimal.
pub fn schwarz_check(x: &Vector, y: &Vector) -> Result<bool> {
    let (cx, cy) = (classify_vector(x)?, classify_vector(y)?);
    if cx == VectorClass::Neither || cy == VectorClass::Neither {
        return Err(NonarchError::Precondition("vectors must be infinitesimal or medial".into()));
    }
    if cx != VectorClass::Infinitesimal && cy != VectorClass::Infinitesimal {
        return Err(NonarchError::Precondition("one vector must be infinitesimal".into()));
    }
    let xy = x.inner(y)?;
    let bound = &x.norm_sq() * &y.norm_sq();
    Ok(xy.square() <= bound && xy.classify_magnitude().is_infinitesimal_or_zero())
}

fn coords_json(p: &ProjPoint) -> serde_json::Value {
    json!(p.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

fn pair_json(a: &ProjPoint, b: &ProjPoint) -> serde_json::Value {
    json!([coords_json(a), coords_json(b)])
}

/// Rejects rotations with entries of negative valuation.
fn check_bounded(rotations: &[OrthoMatrix]) -> Result<()> {
    for (index, m) in rotations.iter().enumerate() {
        for (row, r) in m.rows().iter().enumerate() {
            if let Some(col) = r.iter().position(|x| x.valuation().is_some_and(|v| v < 0)) {
                return Err(NonarchError::UnboundedRotation { index, row, col });
            }
        }
    }
    Ok(())
}

/// The proof obligations for `~` on a finite sample: equivalence,
/// congruence, invariance under each rotation, and a non-trivial pair
/// `<u> ~ <u + eps v>` for orthogonal `u`, `v`, which is added to the sample.
pub fn congruence_suite(space: &QuadSpace, sample: &[ProjPoint], rotations: &[OrthoMatrix]) -> Result<CheckReport> {
    congruence_suite_with(space, sample, rotations, approx)
}

/// [`congruence_suite`] for an arbitrary candidate relation.
pub fn congruence_suite_with<F>(space: &QuadSpace, sample: &[ProjPoint], rotations: &[OrthoMatrix], relation: F) -> Result<CheckReport>
where
    F: Fn(&ProjPoint, &ProjPoint) -> Result<bool>,
{
    require_eps(space.spec())?;
    if space.dim() < 2 {
        return Err(NonarchError::Precondition("dimension must be at least 2".into()));
    }
    check_bounded(rotations)?;
    for p in sample {
        if p.space() != space {
            return Err(SpaceError::SpaceMismatch.into());
        }
    }
    for m in rotations {
        if m.space() != space {
            return Err(SpaceError::SpaceMismatch.into());
        }
    }

    let spec = space.spec();
    let (u, v) = (space.basis(0), space.basis(1));
    let shifted = u.try_add(&v.scale(&Scalar::eps(spec)?)?)?;
    let (pu, pw) = (ProjPoint::new(&u)?, ProjPoint::new(&shifted)?);

    let mut pts: Vec<ProjPoint> = sample.to_vec();
    for p in [&pu, &pw] {
        if !pts.contains(p) {
            pts.push(p.clone());
        }
    }
    let rel = |pts: &[ProjPoint]| -> Result<Vec<Vec<bool>>> {
        pts.iter().map(|a| pts.iter().map(|b| relation(a, b)).collect()).collect()
    };
    let n = pts.len();
    let r = rel(&pts)?;
    let mut report = CheckReport::default();

    let medial = pts.iter().find(|p| medial_representative(p).ok().flatten().is_none());
    report.push(Check::from_violation("medial_sample", medial.map(coords_json)).with_detail(json!({ "points": n })));

    let refl = (0..n).find(|&i| !r[i][i]);
    report.push(Check::from_violation("reflexive", refl.map(|i| coords_json(&pts[i]))));

    let symm = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| r[i][j] != r[j][i]);
    report.push(Check::from_violation("symmetric", symm.map(|(i, j)| pair_json(&pts[i], &pts[j]))));

    let mut trans = None;
    'outer: for i in 0..n {
        for j in (0..n).filter(|&j| r[i][j]) {
            if let Some(k) = (0..n).find(|&k| r[j][k] && !r[i][k]) {
                trans = Some(json!([coords_json(&pts[i]), coords_json(&pts[j]), coords_json(&pts[k])]));
                break 'outer;
            }
        }
    }
    report.push(Check::from_violation("transitive", trans));

    let mut cong = None;
    'outer: for i in 0..n {
        for j in (0..n).filter(|&j| r[i][j]) {
            if pts[i].is_orthogonal(&pts[j])? {
                cong = Some(pair_json(&pts[i], &pts[j]));
                break 'outer;
            }
        }
    }
    report.push(Check::from_violation("congruence", cong));

    for (index, m) in rotations.iter().enumerate() {
        let img = m.induced_map(&pts)?;
        let ri = rel(&img)?;
        let bad = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| r[i][j] != ri[i][j]);
        report.push(Check::from_violation(format!("invariance[{index}]"), bad.map(|(i, j)| pair_json(&pts[i], &pts[j]))));
    }
    if rotations.is_empty() {
        report.push(Check::pass("invariance").with_detail(json!("no rotations supplied")));
    }

    let nontrivial = pu != pw && relation(&pu, &pw)?;
    let check = if nontrivial {
        Check::pass("non_trivial").with_detail(pair_json(&pu, &pw))
    } else {
        Check::fail("non_trivial", pair_json(&pu, &pw))
    };
    report.push(check);
    Ok(report)
}

/// `K^dim` over `Q(eps)` with the standard form.
pub fn eps_space(dim: usize) -> Result<QuadSpace> {
    Ok(QuadSpace::standard(&FieldSpec::infinitesimal(), dim)?)
}

/// Ten rational directions, each followed by one `eps`-perturbation.
pub fn default_sample(space: &QuadSpace, seed: u64) -> Result<Vec<ProjPoint>> {
    require_eps(space.spec())?;
    if space.dim() < 2 {
        return Err(NonarchError::Precondition("dimension must be at least 2".into()));
    }
    let spec = space.spec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(20);
    let mut bases: Vec<ProjPoint> = Vec::new();
    while bases.len() < 10 {
        let coords: Vec<Scalar> = (0..space.dim()).map(|_| Scalar::from_int(spec, rng.gen_range(-3..=3))).collect();
        let x = space.vector(coords)?;
        if x.is_zero() {
            continue;
        }
        let p = ProjPoint::new(&x)?;
        if !bases.contains(&p) {
            bases.push(p);
        }
    }
    let eps = Scalar::eps(spec)?;
    for (k, b) in bases.iter().enumerate() {
        out.push(b.clone());
        let power = 1 + (k % 2) as u32;
        loop {
            let w: Vec<Scalar> = (0..space.dim())
                .map(|_| &Scalar::from_int(spec, rng.gen_range(-2..=2)) * &eps.pow(power))
                .collect();
            let x = b.representative().try_add(&space.vector(w)?)?;
            let p = ProjPoint::new(&x)?;
            if &p != b {
                out.push(p);
                break;
            }
        }
    }
    Ok(out)
}

/// Coordinate-plane rotations with `alpha = (1-t^2)/(1+t^2)`,
/// `beta = 2t/(1+t^2)` for `t` in `eps, 1+eps, 1/2-eps, 1/3+2eps`.
pub fn default_rotations(space: &QuadSpace) -> Result<Vec<OrthoMatrix>> {
    require_eps(space.spec())?;
    let spec = space.spec();
    let d = space.dim();
    ["eps", "1 + eps", "1/2 - eps", "1/3 + 2*eps"]
        .iter()
        .enumerate()
        .map(|(k, t)| {
            let t = Scalar::parse(t, spec)?;
            let one = Scalar::one(spec);
            let den = &one + &t.square();
            let alpha = (&one - &t.square()).try_div(&den)?;
            let beta = (&t + &t).try_div(&den)?;
            let (i, j) = (k % d, (k + 1) % d);
            Ok(BasicRotation::coordinate(space, i.min(j), i.max(j), &alpha, &beta)?.matrix().clone())
        })
        .collect()
}
