use super::handle::{handle_reduce, sign_of_reduced, step_cap, BraidSign, DehornoySign};
use crate::error::{Error, Result};
use crate::groups::BraidWord;

/// Sign under the Dubrovina–Dubrovin ordering of `B_n`.
///
/// The ordering is built by extending the reversed ordering of
/// `<s_2, ..., s_{n-1}>` (itself of the same kind, one level down) by
/// Dehornoy's ordering. After handle reduction the word is
/// `s_i`-signed for its lowest index `i`, and lives in the subgroup reached
/// after `i - 1` recursion steps, each of which reverses the sign once.
pub fn dd_sign(w: &BraidWord) -> Result<DehornoySign> {
    let mut s = sign_of_reduced(handle_reduce(w)?);
    if let Some(i) = s.witness_index {
        if (i - 1) % 2 == 1 {
            s.value = s.value.flip();
        }
    }
    Ok(s)
}

/// Generators `u_1, ..., u_{n-1}` of the positive cone of the
/// Dubrovina–Dubrovin ordering: `u_i = v_i^((-1)^(i-1))` with
/// `v_i = s_i s_{i+1} ... s_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSpec {
    pub strands: usize,
    pub generators: Vec<BraidWord>,
}

impl ConeSpec {
    pub fn new(strands: usize) -> Result<ConeSpec> {
        if strands < 2 {
            return Err(Error::InvalidArgument("need at least 2 strands".into()));
        }
        let generators = (1..strands)
            .map(|i| {
                let v: Vec<i8> = (i..strands).map(|j| j as i8).collect();
                let v = BraidWord::new(strands, v)?;
                Ok(if (i - 1) % 2 == 0 { v } else { v.inverse() })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ConeSpec {
            strands,
            generators,
        })
    }

    /// `u_i` for `1 <= i <= n-1`.
    pub fn u(&self, i: usize) -> &BraidWord {
        &self.generators[i - 1]
    }

    /// Evaluates a word over the generators; letter `k` means `u_k`, `-k` its inverse.
    pub fn evaluate(&self, word: &[i32]) -> BraidWord {
        let mut out = BraidWord::identity(self.strands);
        for &k in word {
            let u = self.u(k.unsigned_abs() as usize);
            out = if k > 0 {
                out.concat(u)
            } else {
                out.concat(&u.inverse())
            };
        }
        out
    }

    /// `u_2 u_3^-1 u_4 ... u_{n-1}^((-1)^(n-1))`, the factor appearing in the
    /// cone identities `W u_1^(n-1) W = u_1` and `W^2 = u_2^(n-1)`.
    pub fn alternating_word(&self) -> BraidWord {
        let word: Vec<i32> = (2..self.strands)
            .map(|k| if k % 2 == 0 { k as i32 } else { -(k as i32) })
            .collect();
        self.evaluate(&word)
    }
}

/// Rewrites a DD-positive braid of `B_3` as a positive word in
/// `u_1 = s_1 s_2` and `u_2 = s_2^-1`. The returned letters are `1` and `2`.
///
/// After handle reduction the braid is either a negative power of `s_2`, or
/// `s_1`-positive. In the second case `s_1 = u_1 u_2` and `s_2 = u_2^-1` give
/// a word with positive `u_1`-letters only, and each remaining `u_2^-1` is
/// removed with `u_2^-1 u_1 = u_1^2 u_2` or `u_1 u_2^-1 = u_2 u_1^2`, both
/// consequences of `u_2 u_1^2 u_2 = u_1`.
pub fn dd_cone_rewrite(w: &BraidWord) -> Result<Vec<u8>> {
    if w.strands() != 3 {
        return Err(Error::InvalidArgument(format!(
            "cone rewriting is implemented for B3 only, got B{}",
            w.strands()
        )));
    }
    let sign = dd_sign(w)?;
    if sign.value != BraidSign::Positive {
        return Err(Error::Precondition(format!(
            "{w} is not positive for the Dubrovina-Dubrovin ordering"
        )));
    }
    let reduced = sign.reduced;
    if sign.witness_index == Some(2) {
        // s_2^m with m < 0, i.e. u_2^-m
        return Ok(vec![2; reduced.len()]);
    }

    let mut word: Vec<i8> = Vec::with_capacity(2 * reduced.len());
    for &l in reduced.letters() {
        match l {
            1 => word.extend_from_slice(&[1, 2]),
            2 => word.push(-2),
            -2 => word.push(2),
            _ => unreachable!("a s1-positive reduced word has no s1^-1"),
        }
    }
    free_reduce_u(&mut word);
    let cap = step_cap();
    let mut steps = 0;
    while let Some(pos) = word.iter().position(|&x| x == -2) {
        steps += 1;
        if steps > cap {
            return Err(Error::StepCap(cap));
        }
        if word.get(pos + 1) == Some(&1) {
            word.splice(pos..pos + 2, [1, 1, 2]);
        } else if pos > 0 && word[pos - 1] == 1 {
            word.splice(pos - 1..pos + 1, [2, 1, 1]);
        } else {
            // The block of u_2^-1 letters starting here is followed by u_1
            // somewhere: rewrite the last letter of the block first.
            let end = word[pos..]
                .iter()
                .position(|&x| x != -2)
                .map(|d| pos + d)
                .ok_or_else(|| Error::Precondition("word has no u1 letter".into()))?;
            word.splice(end - 1..end + 1, [1, 1, 2]);
        }
        free_reduce_u(&mut word);
    }
    Ok(word.into_iter().map(|x| x as u8).collect())
}

fn free_reduce_u(word: &mut Vec<i8>) {
    let mut out: Vec<i8> = Vec::with_capacity(word.len());
    for &x in word.iter() {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    *word = out;
}

/// The braid represented by a word over `u_1, u_2` of `B_3`.
pub fn cone_word_to_braid(word: &[u8]) -> BraidWord {
    let spec = ConeSpec::new(3).expect("B3 cone is well formed");
    let letters: Vec<i32> = word.iter().map(|&k| k as i32).collect();
    spec.evaluate(&letters)
}
