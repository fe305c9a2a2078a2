use std::fmt;

use super::free::{is_identity_literal, split_exponent};
use crate::error::{Error, Result};

/// A word in the Artin generators of `B_n`.
///
/// Letters are stored as signed indices: `i` is `s_i`, `-i` is `s_i^-1`.
/// Words are not canonical; group equality goes through handle reduction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidWord {
    strands: u8,
    letters: Vec<i8>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i8>) -> Result<Self> {
        if !(2..=64).contains(&strands) {
            return Err(Error::InvalidArgument(format!(
                "braid groups need 2..=64 strands, got {strands}"
            )));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::InvalidArgument(format!(
                    "letter s{} is not a generator of B{strands}",
                    l.unsigned_abs()
                )));
            }
        }
        Ok(BraidWord {
            strands: strands as u8,
            letters,
        })
    }

    pub(crate) fn from_letters_unchecked(strands: usize, letters: Vec<i8>) -> Self {
        BraidWord {
            strands: strands as u8,
            letters,
        }
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord {
            strands: strands as u8,
            letters: Vec::new(),
        }
    }

    /// `s_i^e` as a word.
    pub fn generator(strands: usize, index: usize, exponent: i32) -> Result<Self> {
        let l = index as i8;
        let letters = if exponent >= 0 {
            vec![l; exponent as usize]
        } else {
            vec![-l; exponent.unsigned_abs() as usize]
        };
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands as usize
    }

    pub fn letters(&self) -> &[i8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation; no cancellation is performed.
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = Vec::with_capacity(self.letters.len() + other.letters.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> BraidWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.letters.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// Lowest generator index occurring in the word.
    pub fn min_index(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.unsigned_abs() as usize).min()
    }

    /// Shift every index by `-offset`, viewing a word in `<s_{offset+1},...>`
    /// as a word of `B_{n-offset}`.
    pub fn shift_down(&self, offset: usize) -> Result<BraidWord> {
        let letters = self
            .letters
            .iter()
            .map(|&l| {
                let i = l.unsigned_abs() as usize;
                if i <= offset {
                    Err(Error::InvalidArgument(format!(
                        "letter s{i} cannot be shifted down by {offset}"
                    )))
                } else {
                    Ok(l.signum() * (i - offset) as i8)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(self.strands() - offset, letters)
    }

    /// Inverse of [`shift_down`](Self::shift_down): embed into `B_{n+offset}`.
    pub fn shift_up(&self, offset: usize) -> BraidWord {
        BraidWord {
            strands: self.strands + offset as u8,
            letters: self
                .letters
                .iter()
                .map(|&l| l.signum() * (l.unsigned_abs() as usize + offset) as i8)
                .collect(),
        }
    }

    /// Permutation induced on strands (0-based), as the image of each position.
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.strands()).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            perm.swap(i, i + 1);
        }
        perm
    }

    pub fn parse(strands: usize, s: &str) -> Result<Self> {
        if is_identity_literal(s) {
            return Ok(BraidWord::identity(strands));
        }
        let mut letters = Vec::new();
        for token in s.split_whitespace() {
            let (base, e) = split_exponent(token)?;
            let idx: usize = base
                .strip_prefix('s')
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad braid letter {token:?}")))?;
            if idx == 0 || idx >= strands {
                return Err(Error::Parse(format!(
                    "s{idx} is not a generator of B{strands}"
                )));
            }
            let l = if e < 0 { -(idx as i8) } else { idx as i8 };
            for _ in 0..e.unsigned_abs() {
                letters.push(l);
            }
        }
        BraidWord::new(strands, letters)
    }
}

impl fmt::Display for BraidWord {
    /// Runs of equal letters are collapsed: `s1 s2^-1 s1^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "id");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let run = (j - i) as i64 * l.signum() as i64;
            let name = format!("s{}", l.unsigned_abs());
            parts.push(if run == 1 {
                name
            } else {
                format!("{name}^{run}")
            });
            i = j;
        }
        write!(f, "{}", parts.join(" "))
    }
}

const MODULUS: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

/// Evaluation points for the Burau fingerprint.
const BURAU_POINTS: [u64; 2] = [
    0x1d2b_4c9e_77f3_0a15 % MODULUS,
    0x0b5e_1f83_d2c4_96a7 % MODULUS,
];

/// Unreduced Burau matrices evaluated at fixed points modulo a Mersenne prime.
///
/// Equal braids have equal fingerprints; the converse is only probable, so
/// callers confirm candidate matches with handle reduction.
pub fn burau_fingerprint(w: &BraidWord) -> Vec<u64> {
    let n = w.strands();
    let mut out = Vec::with_capacity(BURAU_POINTS.len() * n * n);
    for &t in &BURAU_POINTS {
        let tinv = powmod(t, MODULUS - 2);
        let one_minus_t = (1 + MODULUS - t) % MODULUS;
        let one_minus_tinv = (1 + MODULUS - tinv) % MODULUS;
        let mut m = vec![0u64; n * n];
        for r in 0..n {
            m[r * n + r] = 1;
        }
        for &l in w.letters() {
            let c = l.unsigned_abs() as usize - 1;
            for r in 0..n {
                let x = m[r * n + c];
                let y = m[r * n + c + 1];
                if l > 0 {
                    // right multiply by [[1-t, t], [1, 0]]
                    m[r * n + c] = (mulmod(x, one_minus_t) + y) % MODULUS;
                    m[r * n + c + 1] = mulmod(x, t);
                } else {
                    // right multiply by [[0, 1], [1/t, 1-1/t]]
                    m[r * n + c] = mulmod(y, tinv);
                    m[r * n + c + 1] = (x + mulmod(y, one_minus_tinv)) % MODULUS;
                }
            }
        }
        out.extend_from_slice(&m);
    }
    out
}

/// Fingerprint of a product from the fingerprints of its factors.
pub fn burau_compose(strands: usize, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = strands;
    let block = n * n;
    let mut out = vec![0u64; a.len()];
    for (k, chunk) in out.chunks_mut(block).enumerate() {
        let (x, y) = (
            &a[k * block..(k + 1) * block],
            &b[k * block..(k + 1) * block],
        );
        for r in 0..n {
            for c in 0..n {
                let mut acc = 0u64;
                for m in 0..n {
                    acc = (acc + mulmod(x[r * n + m], y[m * n + c])) % MODULUS;
                }
                chunk[r * n + c] = acc;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_display_inverse() {
        let w = BraidWord::parse(3, "s1 s2^-1 s1").unwrap();
        assert_eq!(w.letters(), &[1, -2, 1]);
        assert_eq!(w.to_string(), "s1 s2^-1 s1");
        let v = BraidWord::parse(3, "s1 s2").unwrap();
        assert_eq!(v.inverse().to_string(), "s2^-1 s1^-1");
        assert_eq!(BraidWord::parse(3, "s2^4").unwrap().to_string(), "s2^4");
        assert!(BraidWord::parse(3, "s3").is_err());
    }

    #[test]
    fn fingerprint_respects_relations() {
        let a = BraidWord::parse(4, "s1 s2 s1").unwrap();
        let b = BraidWord::parse(4, "s2 s1 s2").unwrap();
        assert_eq!(burau_fingerprint(&a), burau_fingerprint(&b));
        let c = BraidWord::parse(4, "s1 s3 s1^-1 s3^-1").unwrap();
        assert_eq!(
            burau_fingerprint(&c),
            burau_fingerprint(&BraidWord::identity(4))
        );
        let d = BraidWord::parse(4, "s1").unwrap();
        let e = BraidWord::parse(4, "s2").unwrap();
        assert_ne!(burau_fingerprint(&d), burau_fingerprint(&e));
        let de = d.concat(&e);
        assert_eq!(
            burau_compose(4, &burau_fingerprint(&d), &burau_fingerprint(&e)),
            burau_fingerprint(&de)
        );
    }
}
