use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{burau_fingerprint, BraidWord};

/// Default bound on handle-reduction steps per call.
pub const DEFAULT_STEP_CAP: usize = 1_000_000;

static STEP_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_STEP_CAP);
static CORRUPT_REDUCTION: AtomicBool = AtomicBool::new(false);

/// Sets the process-wide step cap used by [`handle_reduce`].
pub fn set_step_cap(cap: usize) {
    STEP_CAP.store(cap.max(1), Ordering::Relaxed);
}

pub fn step_cap() -> usize {
    STEP_CAP.load(Ordering::Relaxed)
}

/// Negative-control hook: when enabled, handle reduction drops the
/// conjugation step and returns wrong answers. Only the self-test uses this.
#[doc(hidden)]
pub fn set_corrupt_reduction(on: bool) {
    CORRUPT_REDUCTION.store(on, Ordering::Relaxed);
}

/// Sign class of a braid under Dehornoy's ordering (or its variants).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BraidSign {
    Positive,
    Negative,
    Identity,
}

impl BraidSign {
    pub fn flip(self) -> BraidSign {
        match self {
            BraidSign::Positive => BraidSign::Negative,
            BraidSign::Negative => BraidSign::Positive,
            BraidSign::Identity => BraidSign::Identity,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BraidSign::Positive => "+",
            BraidSign::Negative => "-",
            BraidSign::Identity => "id",
        }
    }
}

/// Result of [`dehornoy_sign`]: the sign, the index `i` for which the reduced
/// word is `s_i`-positive or `s_i`-negative, and the reduced word itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DehornoySign {
    pub value: BraidSign,
    pub witness_index: Option<usize>,
    pub reduced: BraidWord,
}

const NONE: usize = usize::MAX;

/// Handle reduction with the process-wide step cap.
pub fn handle_reduce(w: &BraidWord) -> Result<BraidWord> {
    handle_reduce_capped(w, step_cap())
}

/// Dehornoy's handle reduction.
///
/// A `s_i`-handle is a factor `s_i^e v s_i^-e` where `v` only involves
/// `s_j` with `j > i`. At each step the handle whose closing letter comes
/// first is reduced; it contains no other handle, so the step is permitted
/// and the procedure terminates. The output contains no handle, hence is
/// empty or `s_i`-positive/negative for its lowest index `i`.
#[allow(clippy::mut_range_bound)]
pub fn handle_reduce_capped(w: &BraidWord, cap: usize) -> Result<BraidWord> {
    let n = w.strands();
    let corrupt = CORRUPT_REDUCTION.load(Ordering::Relaxed);
    let mut word: Vec<i8> = w.letters().to_vec();
    // recent[j]: latest position of a letter with index j in the scanned prefix.
    let mut recent = vec![NONE; n];
    let mut start = 0usize;
    let mut steps = 0usize;
    'scan: loop {
        recent.fill(NONE);
        for (p, &l) in word[..start].iter().enumerate() {
            recent[l.unsigned_abs() as usize] = p;
        }
        for k in start..word.len() {
            let l = word[k];
            let i = l.unsigned_abs() as usize;
            let mut opener = NONE;
            for &p in &recent[1..=i] {
                if p != NONE && (opener == NONE || p > opener) {
                    opener = p;
                }
            }
            if opener != NONE && word[opener] == -l {
                steps += 1;
                if steps > cap {
                    return Err(Error::StepCap(cap));
                }
                let e = word[opener].signum();
                let up = (i + 1) as i8;
                let mut replacement = Vec::with_capacity(3 * (k - opener));
                for &x in &word[opener + 1..k] {
                    if x.unsigned_abs() as usize == i + 1 && !corrupt {
                        replacement.push(-e * up);
                        replacement.push(x.signum() * i as i8);
                        replacement.push(e * up);
                    } else {
                        replacement.push(x);
                    }
                }
                word.splice(opener..=k, replacement);
                start = opener;
                continue 'scan;
            }
            recent[i] = k;
        }
        break;
    }
    BraidWord::new(n, word)
}

/// Sign of a handle-free word: its lowest index occurs with a single sign.
pub(crate) fn sign_of_reduced(reduced: BraidWord) -> DehornoySign {
    match reduced.min_index() {
        None => DehornoySign {
            value: BraidSign::Identity,
            witness_index: None,
            reduced,
        },
        Some(i) => {
            let positive = reduced
                .letters()
                .iter()
                .find(|l| l.unsigned_abs() as usize == i)
                .map(|&l| l > 0)
                .expect("lowest index occurs");
            DehornoySign {
                value: if positive {
                    BraidSign::Positive
                } else {
                    BraidSign::Negative
                },
                witness_index: Some(i),
                reduced,
            }
        }
    }
}

/// Dehornoy sign of the braid represented by `w`.
pub fn dehornoy_sign(w: &BraidWord) -> Result<DehornoySign> {
    Ok(sign_of_reduced(handle_reduce(w)?))
}

/// Decides whether `w` represents the identity braid.
pub fn is_trivial(w: &BraidWord) -> Result<bool> {
    if w.is_empty() {
        return Ok(true);
    }
    let perm = w.permutation();
    if perm.iter().enumerate().any(|(i, &p)| i != p) {
        return Ok(false);
    }
    Ok(handle_reduce(w)?.is_empty())
}

/// Decides whether two words represent the same braid.
pub fn braid_equal(a: &BraidWord, b: &BraidWord) -> Result<bool> {
    if a.strands() != b.strands() {
        return Err(Error::GroupMismatch(
            format!("B{}", a.strands()),
            format!("B{}", b.strands()),
        ));
    }
    if a == b {
        return Ok(true);
    }
    // Equal braids have equal Burau images, so a mismatch settles it.
    if burau_fingerprint(a) != burau_fingerprint(b) {
        return Ok(false);
    }
    is_trivial(&a.concat(&b.inverse()))
}

/// Membership in the parabolic subgroup `<s_j, ..., s_{n-1}>`.
///
/// Returns a rewriting of `w` in those generators when it is a member.
pub fn parabolic_membership(w: &BraidWord, j: usize) -> Result<Option<BraidWord>> {
    let n = w.strands();
    if j == 0 || j >= n {
        return Err(Error::InvalidArgument(format!(
            "parabolic index {j} outside 1..={}",
            n - 1
        )));
    }
    let reduced = handle_reduce(w)?;
    match reduced.min_index() {
        Some(i) if i < j => Ok(None),
        _ => Ok(Some(reduced)),
    }
}
