use std::fmt;

use crate::error::{Error, Result};

/// A freely reduced word in the free group of finite rank, stored as
/// syllables `(generator, exponent)` with generators numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord {
    syllables: Vec<(u32, i64)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(index: u32, exponent: i64) -> Self {
        let mut w = FreeWord::default();
        w.push(index, exponent);
        w
    }

    /// Builds a reduced word from arbitrary syllables.
    pub fn from_syllables<I: IntoIterator<Item = (u32, i64)>>(syllables: I) -> Self {
        let mut w = FreeWord::default();
        for (g, e) in syllables {
            w.push(g, e);
        }
        w
    }

    pub fn syllables(&self) -> &[(u32, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Word length (sum of absolute exponents).
    pub fn len(&self) -> usize {
        self.syllables
            .iter()
            .map(|&(_, e)| e.unsigned_abs() as usize)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn max_generator(&self) -> u32 {
        self.syllables.iter().map(|&(g, _)| g).max().unwrap_or(0)
    }

    fn push(&mut self, g: u32, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push((g, e));
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        for &(g, e) in &other.syllables {
            out.push(g, e);
        }
        out
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// Letters as (generator, +1/-1) pairs, left to right.
    pub fn letters(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.syllables
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n((g, e.signum()), e.unsigned_abs() as usize))
    }
}

pub(crate) fn generator_name(g: u32) -> String {
    if (1..=26).contains(&g) {
        ((b'a' + (g - 1) as u8) as char).to_string()
    } else {
        format!("x{g}")
    }
}

pub(crate) fn parse_generator_name(s: &str) -> Option<u32> {
    let bytes = s.as_bytes();
    if bytes.len() == 1 && bytes[0].is_ascii_lowercase() {
        return Some((bytes[0] - b'a' + 1) as u32);
    }
    s.strip_prefix('x')
        .and_then(|n| n.parse().ok())
        .filter(|&g| g > 0)
}

/// Splits `"a^-2"` into `("a", -2)`; a bare letter has exponent 1.
pub(crate) fn split_exponent(token: &str) -> Result<(&str, i64)> {
    match token.split_once('^') {
        Some((base, exp)) => {
            let e: i64 = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {token:?}")))?;
            Ok((base, e))
        }
        None => Ok((token, 1)),
    }
}

pub(crate) fn is_identity_literal(s: &str) -> bool {
    matches!(s.trim(), "" | "id" | "1")
}

impl FreeWord {
    pub fn parse(s: &str) -> Result<Self> {
        if is_identity_literal(s) {
            return Ok(FreeWord::identity());
        }
        let mut w = FreeWord::default();
        for token in s.split_whitespace() {
            let (base, e) = split_exponent(token)?;
            let g = parse_generator_name(base)
                .ok_or_else(|| Error::Parse(format!("unknown free generator {base:?}")))?;
            w.push(g, e);
        }
        Ok(w)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self
            .syllables
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    generator_name(g)
                } else {
                    format!("{}^{}", generator_name(g), e)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_and_display() {
        let a = FreeWord::parse("a").unwrap();
        assert!(a.mul(&a.inverse()).is_identity());
        let w = FreeWord::parse("a b^-2 b^2 a").unwrap();
        assert_eq!(w.to_string(), "a^2");
        assert_eq!(FreeWord::parse("a b^-2").unwrap().to_string(), "a b^-2");
        assert_eq!(FreeWord::parse("a b^-2").unwrap().len(), 3);
    }
}
