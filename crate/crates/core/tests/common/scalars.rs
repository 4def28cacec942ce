//! Random scalars paired with independent reference values.

use ortho_core::{FieldSpec, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Rationals,
    Tower,
    Eps,
}

pub const KINDS: [Kind; 3] = [Kind::Rationals, Kind::Tower, Kind::Eps];

/// `Q(sqrt 2)(sqrt 3)`.
pub fn tower_spec() -> FieldSpec {
    let q = FieldSpec::rationals();
    let s = q.adjoin(&Scalar::from_int(&q, 2)).unwrap();
    s.adjoin(&Scalar::from_int(&s, 3)).unwrap()
}

pub fn spec_of(kind: Kind) -> FieldSpec {
    match kind {
        Kind::Rationals => FieldSpec::rationals(),
        Kind::Tower => tower_spec(),
        Kind::Eps => FieldSpec::infinitesimal(),
    }
}

/// Integer polynomial in `eps`, lowest degree first.
pub type IPoly = Vec<i128>;

fn imul(a: &IPoly, b: &IPoly) -> IPoly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn isub(a: &IPoly, b: &IPoly) -> IPoly {
    (0..a.len().max(b.len()))
        .map(|i| a.get(i).copied().unwrap_or(0) - b.get(i).copied().unwrap_or(0))
        .collect()
}

/// Sign of a polynomial for all sufficiently small positive `eps`.
fn germ(p: &IPoly) -> Ordering {
    p.iter().find(|&&c| c != 0).map_or(Ordering::Equal, |c| c.cmp(&0))
}

/// A reference value: a float for Archimedean fields, an integer rational
/// function for `Q(eps)`.
#[derive(Debug, Clone)]
pub enum Reference {
    Float(f64),
    Germ { num: IPoly, den: IPoly },
}

impl Reference {
    /// Reference ordering, or `None` when floats are too close to tell.
    pub fn compare(&self, other: &Reference) -> Option<Ordering> {
        match (self, other) {
            (Reference::Float(a), Reference::Float(b)) => {
                ((a - b).abs() > 1e-9).then(|| a.partial_cmp(b).unwrap())
            }
            (Reference::Germ { num: n1, den: d1 }, Reference::Germ { num: n2, den: d2 }) => {
                let diff = isub(&imul(n1, d2), &imul(n2, d1));
                let d = germ(&imul(d1, d2));
                Some(if d == Ordering::Less { germ(&diff).reverse() } else { germ(&diff) })
            }
            _ => unreachable!("mixed references"),
        }
    }
}

fn rat(rng: &mut ChaCha8Rng) -> (i64, i64) {
    (rng.gen_range(-12..=12), rng.gen_range(1..=7))
}

fn poly_text(c: &[i128]) -> String {
    let terms: Vec<String> = c
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let mono: Vec<&str> = std::iter::repeat_n("eps", k).collect();
            if k == 0 {
                format!("({a})")
            } else {
                format!("({a})*{}", mono.join("*"))
            }
        })
        .collect();
    terms.join(" + ")
}

/// A random scalar of the given kind and its reference value.
pub fn gen(rng: &mut ChaCha8Rng, kind: Kind) -> (Scalar, Reference) {
    let spec = spec_of(kind);
    match kind {
        Kind::Rationals => {
            let (n, d) = rat(rng);
            (Scalar::from_ratio(&spec, n, d), Reference::Float(n as f64 / d as f64))
        }
        Kind::Tower => {
            let basis = ["1", "sqrt1", "sqrt2", "sqrt1*sqrt2"];
            let vals = [1.0, 2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt()];
            let mut text = String::from("0");
            let mut f = 0.0;
            for (b, v) in basis.iter().zip(vals) {
                if rng.gen_bool(0.3) {
                    continue;
                }
                let (n, d) = rat(rng);
                text.push_str(&format!(" + ({n})/({d})*{b}"));
                f += n as f64 / d as f64 * v;
            }
            (Scalar::parse(&text, &spec).unwrap(), Reference::Float(f))
        }
        Kind::Eps => {
            let num: IPoly = (0..3).map(|_| rng.gen_range(-5..=5)).collect();
            let mut den: IPoly = (0..3).map(|_| rng.gen_range(-3..=3)).collect();
            if den.iter().all(|&c| c == 0) {
                den[0] = 1;
            }
            let text = format!("({}) / ({})", poly_text(&num), poly_text(&den));
            (Scalar::parse(&text, &spec).unwrap(), Reference::Germ { num, den })
        }
    }
}

/// A random non-negative value whose square root may or may not exist.
pub fn gen_positive(rng: &mut ChaCha8Rng, spec: &FieldSpec) -> Scalar {
    loop {
        let terms = 1usize << spec.depth();
        let mut x = Scalar::zero(spec);
        for m in 0..terms {
            let (n, d) = rat(rng);
            let mut b = Scalar::from_ratio(spec, n, d);
            for k in 0..spec.depth() {
                if m >> k & 1 == 1 {
                    b = &b * &Scalar::sqrt_generator(spec, k).unwrap();
                }
            }
            x = &x + &b;
        }
        if x.is_positive() {
            return x;
        }
    }
}

/// Failures of the ordered-field axioms on one triple, by name.
pub fn axiom_failures(x: &(Scalar, Reference), y: &(Scalar, Reference), z: &(Scalar, Reference)) -> Vec<&'static str> {
    let (a, b, c) = (&x.0, &y.0, &z.0);
    let spec = a.spec().clone();
    let zero = Scalar::zero(&spec);
    let one = Scalar::one(&spec);
    let mut bad = Vec::new();
    let mut check = |ok: bool, name: &'static str| {
        if !ok {
            bad.push(name)
        }
    };
    check(&(a + b) + c == a + &(b + c), "add_assoc");
    check(a + b == b + a, "add_comm");
    check(a + &zero == *a, "add_zero");
    check((a + &(-a)).is_zero(), "add_neg");
    check(&(a * b) * c == a * &(b * c), "mul_assoc");
    check(a * b == b * a, "mul_comm");
    check(a * &one == *a, "mul_one");
    check(a * &(b + c) == &(a * b) + &(a * c), "distributive");
    if !a.is_zero() {
        check((a * &a.inv().unwrap()).is_one(), "mul_inv");
        check((&(a * b) / a) == *b, "div");
    }
    let lt = |p: &Scalar, q: &Scalar| p.compare(q).unwrap() == Ordering::Less;
    let trich = [lt(a, b), a == b, lt(b, a)].iter().filter(|&&t| t).count();
    check(trich == 1, "trichotomy");
    if lt(a, b) && lt(b, c) {
        check(lt(a, c), "transitive");
    }
    if lt(a, b) {
        check(lt(&(a + c), &(b + c)), "add_monotone");
    }
    if zero < *a && zero < *b {
        check(zero < a * b, "mul_positive");
    }
    check(a.square() >= zero, "square_nonnegative");
    check(a.abs() >= zero && (a.abs() == *a || a.abs() == -a), "abs");
    if let Some(r) = x.1.compare(&y.1) {
        check(a.compare(b).unwrap() == r, "order_oracle");
    }
    if let Some(r) = x.1.compare(&z.1) {
        check(a.compare(c).unwrap() == r, "order_oracle");
    }
    bad
}
