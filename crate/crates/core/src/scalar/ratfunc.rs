//! The field `Q(eps)` of rational functions, ordered so that `eps` is a
//! positive infinitesimal.
//!
//! Canonical form: numerator and denominator coprime, denominator monic,
//! zero stored as `0 / 1`.

use super::poly::Poly;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::constant(BigRational::one()),
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        RatFunc {
            num: Poly::constant(q),
            den: Poly::constant(BigRational::one()),
        }
    }

    pub fn eps() -> Self {
        RatFunc {
            num: Poly::monomial(BigRational::one(), 1),
            den: Poly::constant(BigRational::one()),
        }
    }

    /// Builds `num / den` in canonical form. `den` must be non-zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut num, _) = num.div_rem(&g);
        let (mut den, _) = den.div_rem(&g);
        let lead = den.leading().expect("non-zero").recip();
        num = num.scale(&lead);
        den = den.scale(&lead);
        RatFunc { num, den }
    }

    /// `num / den` for coprime parts; only normalizes the denominator.
    fn coprime(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lead = den.leading().expect("non-zero").recip();
        RatFunc {
            num: num.scale(&lead),
            den: den.scale(&lead),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::new(self.num.add(&o.num), self.den.clone());
        }
        let g = self.den.gcd(&o.den);
        if g.degree() == Some(0) {
            return RatFunc::coprime(
                self.num.mul(&o.den).add(&o.num.mul(&self.den)),
                self.den.mul(&o.den),
            );
        }
        let (bg, dg) = (exact_div(&self.den, &g), exact_div(&o.den, &g));
        let t = self.num.mul(&dg).add(&o.num.mul(&bg));
        if t.is_zero() {
            return RatFunc::zero();
        }
        let g2 = t.gcd(&g);
        RatFunc::coprime(exact_div(&t, &g2), bg.mul(&exact_div(&o.den, &g2)))
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        RatFunc::coprime(
            exact_div(&self.num, &g1).mul(&exact_div(&o.num, &g2)),
            exact_div(&self.den, &g2).mul(&exact_div(&o.den, &g1)),
        )
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            None
        } else {
            Some(RatFunc::new(self.den.clone(), self.num.clone()))
        }
    }

    /// `eps`-adic valuation; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        let n = self.num.order()? as i64;
        let d = self.den.order().expect("non-zero denominator") as i64;
        Some(n - d)
    }

    /// Sign of the germ at `0+`.
    pub fn signum(&self) -> Ordering {
        (self.num.germ_signum() * self.den.germ_signum()).cmp(&0)
    }

    /// The rational constant when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(BigRational::zero()),
            (Some(0), Some(0)) => Some(&self.num.coeffs()[0] / &self.den.coeffs()[0]),
            _ => None,
        }
    }

    /// Value at `eps = 0` for elements of non-negative valuation.
    pub fn standard_part(&self) -> Option<BigRational> {
        match self.valuation() {
            None => Some(BigRational::zero()),
            Some(v) if v > 0 => Some(BigRational::zero()),
            Some(0) => Some(self.num.lowest()? / self.den.lowest()?),
            Some(_) => None,
        }
    }
}

fn exact_div(a: &Poly, b: &Poly) -> Poly {
    if b.degree() == Some(0) {
        return a.scale(&b.leading().expect("non-zero").recip());
    }
    let (q, r) = a.div_rem(b);
    debug_assert!(r.is_zero());
    q
}
