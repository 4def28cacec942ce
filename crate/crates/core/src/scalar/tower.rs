//! Arithmetic in towers `Q(sqrt d1)(sqrt d2)...(sqrt dk)`.
//!
//! An element of level `k` is a vector of `2^k` rationals. The low half holds
//! `a` and the high half holds `b` in `a + b * sqrt(dk)`, with `a`, `b` and
//! `dk` elements of level `k - 1`. Unrolled, coordinate `m` is the coefficient
//! of the product of those `sqrt(di)` whose bit `i - 1` is set in `m`.
//!
//! Every `di` is positive and not a square at its level, so the representation
//! is unique and `sqrt(di)` is taken as the positive real root.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

pub(crate) type Coords = Vec<BigRational>;

pub(crate) fn zero(level: usize) -> Coords {
    vec![BigRational::zero(); 1 << level]
}

pub(crate) fn from_rational(q: BigRational, level: usize) -> Coords {
    let mut c = zero(level);
    c[0] = q;
    c
}

/// Pads coordinates of a lower level into a higher one.
pub(crate) fn lift(a: &[BigRational], level: usize) -> Coords {
    let mut c = a.to_vec();
    c.resize(1 << level, BigRational::zero());
    c
}

pub(crate) fn is_zero(a: &[BigRational]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// The element as a rational when all irrational coordinates vanish.
pub(crate) fn as_rational(a: &[BigRational]) -> Option<&BigRational> {
    if a[1..].iter().all(Zero::is_zero) {
        Some(&a[0])
    } else {
        None
    }
}

pub(crate) fn add(a: &[BigRational], b: &[BigRational]) -> Coords {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub(a: &[BigRational], b: &[BigRational]) -> Coords {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn neg(a: &[BigRational]) -> Coords {
    a.iter().map(|x| -x).collect()
}

pub(crate) fn scale(a: &[BigRational], q: &BigRational) -> Coords {
    a.iter().map(|x| x * q).collect()
}

fn split(a: &[BigRational]) -> (&[BigRational], &[BigRational]) {
    a.split_at(a.len() / 2)
}

fn join(lo: Coords, hi: Coords) -> Coords {
    let mut c = lo;
    c.extend(hi);
    c
}

/// Product at `level`; `radicands[i]` is `d(i+1)` at level `i`.
pub(crate) fn mul(a: &[BigRational], b: &[BigRational], radicands: &[Coords], level: usize) -> Coords {
    if level == 0 {
        return vec![&a[0] * &b[0]];
    }
    let (a0, a1) = split(a);
    let (b0, b1) = split(b);
    let d = &radicands[level - 1];
    let lo = level - 1;
    let a1_zero = is_zero(a1);
    let b1_zero = is_zero(b1);
    if a1_zero && b1_zero {
        return join(mul(a0, b0, radicands, lo), zero(lo));
    }
    let mut r0 = mul(a0, b0, radicands, lo);
    if !a1_zero && !b1_zero {
        let t = mul(a1, b1, radicands, lo);
        r0 = add(&r0, &mul(&t, d, radicands, lo));
    }
    let r1 = match (a1_zero, b1_zero) {
        (true, _) => mul(a0, b1, radicands, lo),
        (_, true) => mul(a1, b0, radicands, lo),
        _ => add(&mul(a0, b1, radicands, lo), &mul(a1, b0, radicands, lo)),
    };
    join(r0, r1)
}

/// Multiplicative inverse; `None` for zero.
pub(crate) fn inv(a: &[BigRational], radicands: &[Coords], level: usize) -> Option<Coords> {
    if level == 0 {
        return if a[0].is_zero() { None } else { Some(vec![a[0].recip()]) };
    }
    let (a0, a1) = split(a);
    let lo = level - 1;
    if is_zero(a1) {
        return inv(a0, radicands, lo).map(|i| join(i, zero(lo)));
    }
    // (a0 + a1 r)^-1 = (a0 - a1 r) / (a0^2 - d a1^2); the norm is non-zero since d is no square.
    let norm = sub(
        &mul(a0, a0, radicands, lo),
        &mul(&mul(a1, a1, radicands, lo), &radicands[lo], radicands, lo),
    );
    let ninv = inv(&norm, radicands, lo)?;
    Some(join(mul(a0, &ninv, radicands, lo), neg(&mul(a1, &ninv, radicands, lo))))
}

/// Sign in the real embedding that takes every adjoined root positive.
pub(crate) fn signum(a: &[BigRational], radicands: &[Coords], level: usize) -> Ordering {
    if level == 0 {
        return a[0].cmp(&BigRational::zero());
    }
    let (a0, a1) = split(a);
    let lo = level - 1;
    let s0 = signum(a0, radicands, lo);
    let s1 = signum(a1, radicands, lo);
    if s1 == Ordering::Equal || s0 == s1 {
        return s0;
    }
    if s0 == Ordering::Equal {
        return s1;
    }
    // Opposite signs: whichever of |a0| and |a1| sqrt(d) is larger wins.
    let gap = sub(
        &mul(a0, a0, radicands, lo),
        &mul(&mul(a1, a1, radicands, lo), &radicands[lo], radicands, lo),
    );
    match signum(&gap, radicands, lo) {
        Ordering::Greater => s0,
        _ => s1,
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

/// Some square root inside the same level, if one exists. The sign of the
/// returned root is unspecified.
pub(crate) fn sqrt(a: &[BigRational], radicands: &[Coords], level: usize) -> Option<Coords> {
    if level == 0 {
        return rational_sqrt(&a[0]).map(|r| vec![r]);
    }
    if is_zero(a) {
        return Some(zero(level));
    }
    let (a0, a1) = split(a);
    let lo = level - 1;
    let d = &radicands[lo];
    if is_zero(a1) {
        // (p + q r)^2 = a0 forces p q = 0.
        if let Some(p) = sqrt(a0, radicands, lo) {
            return Some(join(p, zero(lo)));
        }
        let dinv = inv(d, radicands, lo)?;
        return sqrt(&mul(a0, &dinv, radicands, lo), radicands, lo).map(|q| join(zero(lo), q));
    }
    // p^2 + d q^2 = a0 and 2 p q = a1, so p^2 is a root of t^2 - a0 t + d a1^2 / 4.
    let norm = sub(
        &mul(a0, a0, radicands, lo),
        &mul(&mul(a1, a1, radicands, lo), d, radicands, lo),
    );
    let s = sqrt(&norm, radicands, lo)?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for t in [add(a0, &s), sub(a0, &s)] {
        let t = scale(&t, &half);
        if let Some(p) = sqrt(&t, radicands, lo) {
            if is_zero(&p) {
                continue;
            }
            let pinv = inv(&p, radicands, lo)?;
            let q = scale(&mul(a1, &pinv, radicands, lo), &half);
            return Some(join(p, q));
        }
    }
    None
}

/// Writes a positive rational `p/q` as `s^2 * m` with `m` an integer free of
/// small square factors: `sqrt(p/q) = (s / q) * sqrt(p q)`.
pub(crate) fn split_square_factor(q: &BigRational) -> (BigRational, BigInt) {
    debug_assert!(q.is_positive());
    let mut m: BigInt = q.numer() * q.denom();
    let mut s = BigInt::one();
    let mut p = 2u32;
    while p < 2000 {
        let pp = BigInt::from(p * p);
        if pp > m {
            break;
        }
        while (&m % &pp).is_zero() {
            m /= &pp;
            s *= p;
        }
        p += 1;
    }
    if m.sign() == Sign::Plus {
        let r = m.sqrt();
        if &r * &r == m {
            s *= r;
            m = BigInt::one();
        }
    }
    (BigRational::new(s, q.denom().clone()), m)
}
