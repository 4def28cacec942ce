//! Generators for exact rotations and projective points.

use ortho_core::rotation::{BasicRotation, OrthoMatrix};
use ortho_core::{FieldSpec, ProjPoint, QuadSpace, Scalar, Vector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// `(alpha, beta)` with `alpha^2 + beta^2 = 1` from a Pythagorean triple of
/// height at most `max`.
pub fn pythagorean(rng: &mut ChaCha8Rng, spec: &FieldSpec, max: i64) -> (Scalar, Scalar) {
    let m = rng.gen_range(1..=max);
    let n = rng.gen_range(0..=m);
    let h = m * m + n * n;
    let mut a = Scalar::from_ratio(spec, m * m - n * n, h);
    let mut b = Scalar::from_ratio(spec, 2 * m * n, h);
    if rng.gen_bool(0.5) {
        std::mem::swap(&mut a, &mut b);
    }
    if rng.gen_bool(0.5) {
        a = -&a;
    }
    if rng.gen_bool(0.5) {
        b = -&b;
    }
    (a, b)
}

/// A product of `steps` rational coordinate rotations on a standard space.
pub fn random_rotation(rng: &mut ChaCha8Rng, space: &QuadSpace, steps: usize) -> OrthoMatrix {
    let n = space.dim();
    let mut u = OrthoMatrix::identity(space);
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let k = (i + rng.gen_range(1..n)) % n;
        let (a, b) = pythagorean(rng, space.spec(), 12);
        let g = BasicRotation::coordinate(space, i, k, &a, &b).unwrap();
        u = g.matrix().mul(&u).unwrap();
    }
    u
}

/// A non-zero vector with small integer entries.
pub fn random_vector(rng: &mut ChaCha8Rng, space: &QuadSpace, height: i64) -> Vector {
    loop {
        let coords = (0..space.dim())
            .map(|_| Scalar::from_int(space.spec(), rng.gen_range(-height..=height)))
            .collect();
        let v = space.vector(coords).unwrap();
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn random_point(rng: &mut ChaCha8Rng, space: &QuadSpace, height: i64) -> ProjPoint {
    ProjPoint::new(&random_vector(rng, space, height)).unwrap()
}

/// Two distinct orthogonal points.
pub fn orthogonal_pair(rng: &mut ChaCha8Rng, space: &QuadSpace, height: i64) -> (ProjPoint, ProjPoint) {
    loop {
        let x = random_vector(rng, space, height);
        let y = random_vector(rng, space, height);
        let z = Vector::l1_witness(&x, &y).unwrap();
        if !z.is_zero() {
            return (ProjPoint::new(&x).unwrap(), ProjPoint::new(&z).unwrap());
        }
    }
}
