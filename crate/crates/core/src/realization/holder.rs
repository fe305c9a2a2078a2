use std::cmp::Ordering;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::Element;
use crate::orders::{Order, Sign};

/// Largest `|q|` tried while bracketing `g^p` between powers of `f`.
pub const DEFAULT_EXPONENT_BOUND: u64 = 1 << 40;

/// The integers `q(p)` with `f^q(p) <= g^p < f^(q(p)+1)` for `p = 1..=P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HolderSeries {
    pub q: Vec<i64>,
}

impl HolderSeries {
    pub fn max_power(&self) -> usize {
        self.q.len()
    }

    /// `q(p) / p`.
    pub fn ratio(&self, p: usize) -> BigRational {
        BigRational::new(self.q[p - 1].into(), (p as i64).into())
    }

    /// Width `1/P` of the final bracket.
    pub fn width(&self) -> BigRational {
        BigRational::new(1.into(), (self.q.len() as i64).into())
    }
}

struct Bracketer<'a> {
    order: &'a Order,
    f: &'a Element,
    bound: u64,
}

impl Bracketer<'_> {
    /// `compare(f^q, x)`.
    fn cmp_power(&self, q: i64, x: &Element) -> Result<Ordering> {
        if q.unsigned_abs() > self.bound {
            return Err(Error::NonArchimedean(format!(
                "no power of {} up to {} brackets {}",
                self.f, self.bound, x
            )));
        }
        let fq = self.order.group().pow(self.f, q)?;
        self.order.compare(&fq, x)
    }

    /// The unique `q` with `f^q <= x < f^(q+1)`, searched from `guess`.
    fn bracket(&self, x: &Element, guess: i64) -> Result<i64> {
        let mut step = 1i64;
        let (mut lo, mut hi);
        if self.cmp_power(guess, x)? != Ordering::Greater {
            // f^guess <= x: gallop upward
            lo = guess;
            loop {
                let cand = lo.saturating_add(step);
                if self.cmp_power(cand, x)? == Ordering::Greater {
                    hi = cand;
                    break;
                }
                lo = cand;
                step = step.saturating_mul(2);
            }
        } else {
            hi = guess;
            loop {
                let cand = hi.saturating_sub(step);
                if self.cmp_power(cand, x)? != Ordering::Greater {
                    lo = cand;
                    break;
                }
                hi = cand;
                step = step.saturating_mul(2);
            }
        }
        // invariant: f^lo <= x < f^hi
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.cmp_power(mid, x)? == Ordering::Greater {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(lo)
    }
}

/// Brackets `g^p` between consecutive powers of the positive element `f`
/// for `p = 1..=max_power`.
///
/// Each search starts from `q(p-1) + q(1)`, which is within one of the
/// answer for Archimedean orderings. A search that exceeds `bound` reports
/// [`Error::NonArchimedean`].
pub fn holder_embedding(
    order: &Order,
    f: &Element,
    g: &Element,
    max_power: usize,
    bound: u64,
) -> Result<HolderSeries> {
    if order.sign_or_identity(f)? != Some(Sign::Positive) {
        return Err(Error::Precondition(format!("{f} is not positive")));
    }
    if max_power == 0 {
        return Err(Error::InvalidArgument("max power must be positive".into()));
    }
    let group = order.group();
    let b = Bracketer { order, f, bound };
    let mut q = Vec::with_capacity(max_power);
    let mut gp = group.identity();
    for _ in 0..max_power {
        gp = group.op(&gp, g)?;
        let guess = match q.as_slice() {
            [] => 0,
            [q1, .., last] => last + q1,
            [q1] => 2 * q1,
        };
        q.push(b.bracket(&gp, guess)?);
    }
    Ok(HolderSeries { q })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_of_multiples_of_sqrt2() {
        let o: Order = "zn:slope:1,sqrt2".parse().unwrap();
        let f = o.group().parse_element("(1,0)").unwrap();
        let g = o.group().parse_element("(0,1)").unwrap();
        let s = holder_embedding(&o, &f, &g, 5, DEFAULT_EXPONENT_BOUND).unwrap();
        assert_eq!(s.q, vec![1, 2, 4, 5, 7]);
        assert_eq!(s.ratio(5), BigRational::new(7.into(), 5.into()));
        let same = holder_embedding(&o, &f, &f, 4, DEFAULT_EXPONENT_BOUND).unwrap();
        assert_eq!(same.q, vec![1, 2, 3, 4]);
        let id = o.group().identity();
        let zero = holder_embedding(&o, &f, &id, 4, DEFAULT_EXPONENT_BOUND).unwrap();
        assert_eq!(zero.q, vec![0; 4]);
    }

    #[test]
    fn lexicographic_order_is_not_archimedean() {
        let o = Order::lex(2).unwrap();
        let f = o.group().parse_element("(0,1)").unwrap();
        let g = o.group().parse_element("(1,0)").unwrap();
        assert!(matches!(
            holder_embedding(&o, &f, &g, 3, 1 << 12),
            Err(Error::NonArchimedean(_))
        ));
        assert!(holder_embedding(&o, &g, &f, 3, 1 << 12).is_ok());
    }
}
