//! Exact arithmetic in a real quadratic field `Q(sqrt d)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Radicand used when none is given.
pub const DEFAULT_RADICAND: u64 = 2;

/// An element `a + b*sqrt(d)` with rational `a`, `b` and square-free `d >= 2`.
///
/// Values with `b == 0` are rational and combine with any radicand. Combining
/// two irrational values with different radicands is a programming error and
/// panics.
#[derive(Clone, Debug)]
pub struct QuadraticNumber {
    a: BigRational,
    b: BigRational,
    d: u64,
}

fn is_square_free(d: u64) -> bool {
    let mut p = 2u64;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

impl QuadraticNumber {
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<Self> {
        if d < 2 || !is_square_free(d) {
            return Err(Error::InvalidArgument(format!(
                "radicand {d} is not a square-free integer >= 2"
            )));
        }
        Ok(QuadraticNumber { a, b, d })
    }

    pub fn from_rational(a: BigRational) -> Self {
        QuadraticNumber {
            a,
            b: BigRational::zero(),
            d: DEFAULT_RADICAND,
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: u64) -> Result<Self> {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn joint_radicand(&self, other: &Self) -> u64 {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => other.d,
            (false, true) => self.d,
            (false, false) => {
                assert_eq!(
                    self.d, other.d,
                    "cannot combine elements of Q(sqrt {}) and Q(sqrt {})",
                    self.d, other.d
                );
                self.d
            }
        }
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: compare a^2 with b^2 d.
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * BigRational::from_integer(self.d.into());
        if a2 > b2d {
            sa
        } else {
            sb
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        QuadraticNumber {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d,
        }
    }

    /// Field norm `a^2 - d b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.into())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("division by zero".into()));
        }
        let n = self.norm();
        let c = self.conjugate();
        Ok(QuadraticNumber {
            a: c.a / &n,
            b: c.b / &n,
            d: self.d,
        })
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        QuadraticNumber {
            a: &self.a * q,
            b: &self.b * q,
            d: self.d,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        let approx = self.to_f64().floor();
        let mut n = if approx.is_finite() {
            BigInt::from(approx as i128)
        } else {
            self.a.floor().to_integer()
        };
        loop {
            let nq = QuadraticNumber::from_rational(BigRational::from_integer(n.clone()));
            if *self < nq {
                n -= 1;
                continue;
            }
            let n1 = QuadraticNumber::from_rational(BigRational::from_integer(&n + 1));
            if *self >= n1 {
                n += 1;
                continue;
            }
            return n;
        }
    }
}

fn sign_of(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialEq for QuadraticNumber {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadraticNumber {}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl<'a> Add<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let d = self.joint_radicand(rhs);
        QuadraticNumber {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            d,
        }
    }
}

impl<'a> Sub<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let d = self.joint_radicand(rhs);
        QuadraticNumber {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            d,
        }
    }
}

impl<'a> Mul<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let d = self.joint_radicand(rhs);
        let dq = BigRational::from_integer(d.into());
        QuadraticNumber {
            a: &self.a * &rhs.a + &self.b * &rhs.b * dq,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d,
        }
    }
}

impl<'a> Div<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        self * &rhs.recip().expect("division by zero in Q(sqrt d)")
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber {
            a: -&self.a,
            b: -&self.b,
            d: self.d,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $m(self, rhs: QuadraticNumber) -> QuadraticNumber {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -&self
    }
}

impl From<BigRational> for QuadraticNumber {
    fn from(q: BigRational) -> Self {
        QuadraticNumber::from_rational(q)
    }
}

impl From<i64> for QuadraticNumber {
    fn from(n: i64) -> Self {
        QuadraticNumber::from_integer(n)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for QuadraticNumber {
    /// Same syntax the parser accepts: `1/2+3sqrt2`, `sqrt2-1`, `-sqrt5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rational(&self.a));
        }
        let mut out = String::new();
        if !self.a.is_zero() {
            out.push_str(&fmt_rational(&self.a));
        }
        let babs = self.b.abs();
        if self.b.is_negative() {
            out.push('-');
        } else if !self.a.is_zero() {
            out.push('+');
        }
        if !babs.is_one() {
            out.push_str(&fmt_rational(&babs));
        }
        out.push_str(&format!("sqrt{}", self.d));
        write!(f, "{out}")
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational literal {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = s.trim().parse().map_err(|_| bad())?;
        Ok(BigRational::from_integer(n))
    }
}

/// Parses a rational literal such as `3`, `-1/2`.
pub fn parse_rational_literal(s: &str) -> Result<BigRational> {
    parse_rational(s)
}

impl FromStr for QuadraticNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty quadratic literal".into()));
        }
        // Split into signed terms.
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for (i, c) in s.chars().enumerate() {
            if (c == '+' || c == '-') && i > 0 && !cur.is_empty() {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(c);
        }
        terms.push(cur);

        let mut a = BigRational::zero();
        let mut b = BigRational::zero();
        let mut d: Option<u64> = None;
        for term in terms {
            let (neg, body) = match term.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, term.strip_prefix('+').unwrap_or(&term)),
            };
            let mut value;
            if let Some(pos) = body.find("sqrt") {
                let coef = body[..pos].trim_end_matches('*');
                value = if coef.is_empty() {
                    BigRational::one()
                } else {
                    parse_rational(coef)?
                };
                let rad: u64 = body[pos + 4..]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad radicand in {term:?}")))?;
                if let Some(prev) = d {
                    if prev != rad {
                        return Err(Error::Parse(format!(
                            "mixed radicands {prev} and {rad} in {s:?}"
                        )));
                    }
                }
                d = Some(rad);
                if neg {
                    value = -value;
                }
                b += value;
            } else {
                value = parse_rational(body)?;
                if neg {
                    value = -value;
                }
                a += value;
            }
        }
        QuadraticNumber::new(a, b, d.unwrap_or(DEFAULT_RADICAND))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    #[test]
    fn sign_of_mixed_terms() {
        assert_eq!(q("-3+2sqrt2").signum(), -1);
        assert_eq!(q("3-2sqrt2").signum(), 1);
        assert_eq!(q("sqrt2-1").signum(), 1);
        assert_eq!(q("1/2+sqrt2-1").signum(), 1);
        assert_eq!(q("0").signum(), 0);
        // 1/2 + (sqrt2 - 1) < 1 since sqrt2 < 3/2
        assert!(q("1/2+sqrt2-1") < q("1"));
    }

    #[test]
    fn field_operations() {
        let x = q("1+sqrt2");
        let y = q("-1+sqrt2");
        assert_eq!(&x * &y, q("1"));
        assert_eq!(&x / &x, q("1"));
        assert_eq!((&x * &x).to_string(), "3+2sqrt2");
        assert_eq!(x.recip().unwrap(), y);
    }

    #[test]
    fn floor_is_exact() {
        assert_eq!(q("5sqrt2").floor(), BigInt::from(7));
        assert_eq!(q("-sqrt2").floor(), BigInt::from(-2));
        assert_eq!(q("3").floor(), BigInt::from(3));
        assert_eq!(q("-7/2").floor(), BigInt::from(-4));
    }

    #[test]
    fn parse_and_display() {
        for s in ["sqrt2-1", "1/2+3sqrt2", "-sqrt5", "7", "-2/3"] {
            let v = q(s);
            assert_eq!(q(&v.to_string()), v);
        }
        assert!("2sqrt4".parse::<QuadraticNumber>().is_err());
        assert!("sqrt2+sqrt3".parse::<QuadraticNumber>().is_err());
    }

    #[test]
    #[should_panic]
    fn mixed_radicands_panic() {
        let _ = q("sqrt2") + q("sqrt3");
    }
}
