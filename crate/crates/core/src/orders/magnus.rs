//! The Magnus ordering of a free group.
//!
//! Each generator `x_i` is sent to `1 + X_i` in the ring of noncommuting
//! power series with integer coefficients, truncated at a fixed degree.
//! Monomials are stored densely: a monomial of degree `d` is the base-`k`
//! number spelled by its letters, offset by the count of shorter monomials,
//! so index order is graded-lexicographic with `X_1 < X_2 < ...`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::groups::FreeWord;

struct Series {
    rank: usize,
    degree: usize,
    offsets: Vec<usize>,
    coeffs: Vec<i128>,
}

impl Series {
    fn one(rank: usize, degree: usize) -> Series {
        let mut offsets = Vec::with_capacity(degree + 2);
        let mut total = 0usize;
        let mut layer = 1usize;
        for _ in 0..=degree {
            offsets.push(total);
            total += layer;
            layer *= rank;
        }
        offsets.push(total);
        let mut coeffs = vec![0i128; total];
        coeffs[0] = 1;
        Series {
            rank,
            degree,
            offsets,
            coeffs,
        }
    }

    /// Right multiplication by `(1 + X_g)^e`.
    fn mul_power(&mut self, g: usize, e: i64) -> Result<()> {
        let k = self.rank;
        // binomial(e, j) for j = 0..=degree, valid for negative e as well
        let mut binom = vec![1i128; self.degree + 1];
        for j in 1..=self.degree {
            binom[j] = binom[j - 1]
                .checked_mul((e as i128) - (j as i128) + 1)
                .map(|v| v / j as i128)
                .ok_or_else(overflow)?;
        }
        let mut out = vec![0i128; self.coeffs.len()];
        for d in 0..=self.degree {
            let width = self.offsets[d + 1] - self.offsets[d];
            for v in 0..width {
                let c = self.coeffs[self.offsets[d] + v];
                if c == 0 {
                    continue;
                }
                let mut index = v;
                for (j, b) in binom.iter().enumerate().take(self.degree - d + 1) {
                    if j > 0 {
                        index = index * k + g;
                    }
                    let slot = &mut out[self.offsets[d + j] + index];
                    *slot = c
                        .checked_mul(*b)
                        .and_then(|t| slot.checked_add(t))
                        .ok_or_else(overflow)?;
                }
            }
        }
        self.coeffs = out;
        Ok(())
    }

    /// Sign of the first nonzero coefficient after the constant term.
    fn leading_sign(&self) -> Option<Ordering> {
        self.coeffs[1..]
            .iter()
            .find(|&&c| c != 0)
            .map(|c| c.cmp(&0))
    }
}

fn overflow() -> Error {
    Error::InvalidArgument("Magnus coefficients overflow 128 bits".into())
}

/// Sign of a free-group element under the Magnus ordering, `None` for the
/// identity.
///
/// The truncation degree is raised one step at a time. A nontrivial word of
/// length `L` has a nonzero coefficient in degree at most `L`, so the loop
/// stops there at the latest.
pub(crate) fn magnus_sign(rank: usize, w: &FreeWord) -> Result<Option<Ordering>> {
    if w.is_identity() {
        return Ok(None);
    }
    if rank == 1 {
        let e: i64 = w.syllables().iter().map(|&(_, e)| e).sum();
        return Ok(Some(e.cmp(&0)));
    }
    for degree in 1..=w.len() {
        let mut s = Series::one(rank, degree);
        for &(g, e) in w.syllables() {
            s.mul_power(g as usize - 1, e)?;
        }
        if let Some(sign) = s.leading_sign() {
            return Ok(Some(sign));
        }
    }
    Err(Error::Precondition(format!(
        "no nonzero Magnus coefficient found for {w}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sign(s: &str) -> Option<Ordering> {
        magnus_sign(2, &FreeWord::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn generators_and_inverses() {
        assert_eq!(sign("a"), Some(Ordering::Greater));
        assert_eq!(sign("a^-1"), Some(Ordering::Less));
        assert_eq!(sign("b"), Some(Ordering::Greater));
        assert_eq!(sign("id"), None);
    }

    #[test]
    fn commutator_has_degree_two_leading_term() {
        // (1+X1)(1+X2)(1-X1+X1^2)(1-X2+X2^2) = 1 + X1X2 - X2X1 + ...
        assert_eq!(sign("a b a^-1 b^-1"), Some(Ordering::Greater));
        assert_eq!(sign("b a b^-1 a^-1"), Some(Ordering::Less));
    }

    #[test]
    fn leading_coefficient_of_a_power_quotient() {
        // a^2 b^-1 a^-2: degree one part is -X2
        assert_eq!(sign("a^2 b^-1 a^-2"), Some(Ordering::Less));
    }
}
