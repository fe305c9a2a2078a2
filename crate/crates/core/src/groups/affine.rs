use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quadratic::parse_rational_literal;

/// The affine map `x -> b x + a` with rational `b > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineElement {
    b: BigRational,
    a: BigRational,
}

impl AffineElement {
    pub fn new(b: BigRational, a: BigRational) -> Result<Self> {
        if !b.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "affine slope must be positive, got {b}"
            )));
        }
        Ok(AffineElement { b, a })
    }

    pub fn from_integers(b: i64, a: i64) -> Result<Self> {
        Self::new(
            BigRational::from_integer(b.into()),
            BigRational::from_integer(a.into()),
        )
    }

    pub fn identity() -> Self {
        AffineElement {
            b: BigRational::one(),
            a: BigRational::zero(),
        }
    }

    pub fn slope(&self) -> &BigRational {
        &self.b
    }

    pub fn offset(&self) -> &BigRational {
        &self.a
    }

    pub fn is_identity(&self) -> bool {
        self.b.is_one() && self.a.is_zero()
    }

    /// `(b1,a1)(b2,a2) = (b1 b2, b1 a2 + a1)`, i.e. composition `g o h`.
    pub fn compose(&self, other: &AffineElement) -> AffineElement {
        AffineElement {
            b: &self.b * &other.b,
            a: &self.b * &other.a + &self.a,
        }
    }

    pub fn inverse(&self) -> AffineElement {
        let binv = self.b.recip();
        AffineElement {
            a: -(&self.a * &binv),
            b: binv,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected (b=..., a=...), got {s:?}"));
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let mut b = None;
        let mut a = None;
        for part in inner.split(',') {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            let v = parse_rational_literal(v.trim())?;
            match k.trim() {
                "b" => b = Some(v),
                "a" => a = Some(v),
                _ => return Err(bad()),
            }
        }
        AffineElement::new(b.ok_or_else(bad)?, a.ok_or_else(bad)?)
    }
}

fn fmt_q(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(b={}, a={})", fmt_q(&self.b), fmt_q(&self.a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_and_inverse() {
        let g = AffineElement::from_integers(2, 0).unwrap();
        let h = AffineElement::from_integers(1, 3).unwrap();
        assert_eq!(g.compose(&h), AffineElement::from_integers(2, 6).unwrap());
        let inv = AffineElement::from_integers(2, 6).unwrap().inverse();
        assert_eq!(inv.to_string(), "(b=1/2, a=-3)");
        assert!(AffineElement::parse("(b=0, a=1)").is_err());
        assert_eq!(
            AffineElement::parse("(b=1/2, a=3)").unwrap().to_string(),
            "(b=1/2, a=3)"
        );
    }
}
