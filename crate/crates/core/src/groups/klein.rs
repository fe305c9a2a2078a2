use std::fmt;

use super::free::{is_identity_literal, split_exponent};
use crate::error::{Error, Result};

/// Normal form `b^n a^m` in `<a, b | b a b^-1 = a^-1>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct KleinElement {
    pub n: i64,
    pub m: i64,
}

impl KleinElement {
    pub fn new(n: i64, m: i64) -> Self {
        KleinElement { n, m }
    }

    pub fn identity() -> Self {
        KleinElement::default()
    }

    pub fn a() -> Self {
        KleinElement::new(0, 1)
    }

    pub fn b() -> Self {
        KleinElement::new(1, 0)
    }

    pub fn is_identity(&self) -> bool {
        self.n == 0 && self.m == 0
    }

    /// `(b^n a^m)(b^n' a^m') = b^(n+n') a^((-1)^n' m + m')`.
    pub fn mul(&self, other: &KleinElement) -> KleinElement {
        let twist = if other.n.rem_euclid(2) == 0 {
            self.m
        } else {
            -self.m
        };
        KleinElement {
            n: self.n + other.n,
            m: twist + other.m,
        }
    }

    pub fn inverse(&self) -> KleinElement {
        // (b^n a^m)^-1 = a^-m b^-n = b^-n a^((-1)^(n+1) m)
        let m = if self.n.rem_euclid(2) == 0 {
            -self.m
        } else {
            self.m
        };
        KleinElement { n: -self.n, m }
    }
}

/// Normal form of a word in `a^{+-1}`, `b^{+-1}`, e.g. `"b a b^-1"`.
pub fn klein_normal_form(word: &str) -> Result<KleinElement> {
    if is_identity_literal(word) {
        return Ok(KleinElement::identity());
    }
    let mut acc = KleinElement::identity();
    for token in word.split_whitespace() {
        let (base, e) = split_exponent(token)?;
        let step = match base {
            "a" => KleinElement::a(),
            "b" => KleinElement::b(),
            _ => return Err(Error::Parse(format!("unknown Klein letter {token:?}"))),
        };
        let step = if e < 0 { step.inverse() } else { step };
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&step);
        }
    }
    Ok(acc)
}

impl fmt::Display for KleinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("b", self.n), ("a", self.m)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "id")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_forms() {
        assert_eq!(
            klein_normal_form("b a b^-1").unwrap(),
            KleinElement::new(0, -1)
        );
        assert_eq!(klein_normal_form("a b").unwrap(), KleinElement::new(1, -1));
        assert_eq!(klein_normal_form("").unwrap(), KleinElement::new(0, 0));
        assert_eq!(
            KleinElement::b().mul(&KleinElement::a()),
            KleinElement::new(1, 1)
        );
        assert_eq!(
            KleinElement::a().mul(&KleinElement::b()),
            KleinElement::new(1, -1)
        );
        assert_eq!(
            klein_normal_form("b^2 a^-1").unwrap().to_string(),
            "b^2 a^-1"
        );
    }

    #[test]
    fn inverse_is_two_sided() {
        for n in -3..=3 {
            for m in -3..=3 {
                let g = KleinElement::new(n, m);
                assert!(g.mul(&g.inverse()).is_identity());
                assert!(g.inverse().mul(&g).is_identity());
            }
        }
    }
}
