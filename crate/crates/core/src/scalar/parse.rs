//! Text form of scalars.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | '+' unary | power
//! power := atom ('^' integer)?
//! atom  := integer | 'eps' | 'sqrt' k | '(' expr ')'
//! ```
//!
//! `sqrt<k>` is the positive root of the `k`-th radicand (one-based) of the
//! active spec. `Display` writes the same grammar, so values round-trip.

use super::{FieldKind, FieldSpec, Scalar, ScalarError, Value};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

const MAX_EXPONENT: u32 = 4096;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    spec: &'a FieldSpec,
}

type PResult<T> = Result<T, ScalarError>;

impl<'a> Parser<'a> {
    fn err(&self, offset: usize, message: impl Into<String>) -> ScalarError {
        ScalarError::Parse {
            offset,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> PResult<Scalar> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> PResult<Scalar> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                &acc * &rhs
            } else {
                acc.try_div(&rhs).map_err(|_| self.err(at, "division by zero"))?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<Scalar> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> PResult<Scalar> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        match self.digits().parse::<u32>() {
            Ok(e) if e <= MAX_EXPONENT => Ok(base.pow(e)),
            _ => Err(self.err(at, format!("expected an exponent in 0..={MAX_EXPONENT}"))),
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn atom(&mut self) -> PResult<Scalar> {
        let start = match self.peek() {
            None => return Err(self.err(self.pos, "unexpected end of input")),
            Some(_) => self.pos,
        };
        let c = self.src[start];
        if c.is_ascii_digit() {
            let n: BigInt = self.digits().parse().expect("digits");
            return Ok(Scalar::from_rational(self.spec, BigRational::from_integer(n)));
        }
        if c == b'(' {
            self.pos += 1;
            let v = self.expr()?;
            if self.peek() != Some(b')') {
                return Err(self.err(self.pos, "expected ')'"));
            }
            self.pos += 1;
            return Ok(v);
        }
        if c.is_ascii_alphabetic() {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                self.pos += 1;
            }
            let word = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            return match word {
                "eps" => Scalar::eps(self.spec).map_err(|e| self.err(start, e.to_string())),
                "sqrt" => {
                    let k = self.digits();
                    let k: usize = k
                        .parse()
                        .map_err(|_| self.err(self.pos, "expected radicand index after 'sqrt'"))?;
                    if k == 0 {
                        return Err(self.err(start, "radicand indices start at 1"));
                    }
                    Scalar::sqrt_generator(self.spec, k - 1).map_err(|e| self.err(start, e.to_string()))
                }
                other => Err(self.err(start, format!("unknown identifier '{other}'"))),
            };
        }
        Err(self.err(start, format!("unexpected character '{}'", c as char)))
    }
}

pub(super) fn parse(text: &str, spec: &FieldSpec) -> Result<Scalar, ScalarError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        spec,
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err(p.pos, "trailing input"));
    }
    Ok(v)
}

/// Writes `sum coeff * basis` with signs folded into the separators.
fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(BigRational, String)]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (c, basis)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        let a = c.abs();
        if basis.is_empty() {
            write!(f, "{a}")?;
        } else if a.is_one() {
            write!(f, "{basis}")?;
        } else {
            write!(f, "{a}*{basis}")?;
        }
    }
    Ok(())
}

fn tower_terms(coords: &[BigRational]) -> Vec<(BigRational, String)> {
    coords
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| {
            let basis = (0..usize::BITS as usize)
                .filter(|b| m >> b & 1 == 1)
                .map(|b| format!("sqrt{}", b + 1))
                .collect::<Vec<_>>()
                .join("*");
            (c.clone(), basis)
        })
        .collect()
}

fn poly_terms(coeffs: &[BigRational]) -> Vec<(BigRational, String)> {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let basis = match k {
                0 => String::new(),
                1 => "eps".to_string(),
                _ => format!("eps^{k}"),
            };
            (c.clone(), basis)
        })
        .collect()
}

struct Terms(Vec<(BigRational, String)>);

impl fmt::Display for Terms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.0)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Tower(c) => write_terms(f, &tower_terms(c)),
            Value::Eps(r) => {
                debug_assert_eq!(self.spec.kind(), FieldKind::Infinitesimal);
                let num = Terms(poly_terms(r.num().coeffs()));
                if r.den().is_one() {
                    write!(f, "{num}")
                } else {
                    write!(f, "({num})/({})", Terms(poly_terms(r.den().coeffs())))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_trip(text: &str, spec: &FieldSpec) {
        let v = parse(text, spec).unwrap();
        let shown = v.to_string();
        assert_eq!(parse(&shown, spec).unwrap(), v, "{text} -> {shown}");
    }

    #[test]
    fn parses_fractions_and_precedence() {
        let q = FieldSpec::rationals();
        assert_eq!(parse("1/3 + 2*3", &q).unwrap(), Scalar::from_ratio(&q, 19, 3));
        assert_eq!(parse("-(2 - 5)/6", &q).unwrap(), Scalar::from_ratio(&q, 1, 2));
        assert_eq!(parse("2/4", &q).unwrap().to_string(), "1/2");
    }

    #[test]
    fn parses_radicals() {
        let q = FieldSpec::rationals();
        let spec = FieldSpec::tower(&[Scalar::from_int(&q, 2)]).unwrap();
        let spec = spec.adjoin(&parse("5", &spec).unwrap()).unwrap();
        let v = parse("sqrt1*sqrt1 + sqrt2", &spec).unwrap();
        assert_eq!(v.to_string(), "2 + sqrt2");
        round_trip("1/2 - 3*sqrt1*sqrt2 + sqrt2/7", &spec);
        round_trip("-sqrt1", &spec);
    }

    #[test]
    fn parses_eps() {
        let spec = FieldSpec::infinitesimal();
        let v = parse("eps/(1+eps)", &spec).unwrap();
        assert_eq!(v.to_string(), "(eps)/(1 + eps)");
        round_trip("(2 - eps*eps)/(3 + eps)", &spec);
        round_trip("-eps*eps*eps/4", &spec);
        round_trip("(1 + eps)^3 - eps^2", &spec);
        assert_eq!(Scalar::parse("eps^3", &spec).unwrap().to_string(), "eps^3");
        assert_eq!(Scalar::parse("-2^2", &spec).unwrap(), Scalar::from_int(&spec, -4));
        assert!(Scalar::parse("eps^", &spec).is_err());
    }

    #[test]
    fn errors_carry_offsets() {
        let q = FieldSpec::rationals();
        assert_eq!(
            parse("1 + eps", &q),
            Err(ScalarError::Parse {
                offset: 4,
                message: "unsupported extension: eps is not an element of Q".into()
            })
        );
        assert!(matches!(parse("1/0", &q), Err(ScalarError::Parse { offset: 1, .. })));
        assert!(matches!(parse("(1", &q), Err(ScalarError::Parse { offset: 2, .. })));
        assert!(matches!(parse("sqrt1", &q), Err(ScalarError::Parse { offset: 0, .. })));
        assert!(matches!(parse("1 2", &q), Err(ScalarError::Parse { offset: 2, .. })));
        assert!(matches!(parse("", &q), Err(ScalarError::Parse { .. })));
    }
}
