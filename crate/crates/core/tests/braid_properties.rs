use ordkit::braid::{
    braid_equal, cone_word_to_braid, dd_cone_rewrite, dd_sign, dehornoy_sign, is_trivial, BraidSign,
};
use ordkit::groups::BraidWord;
use proptest::prelude::*;

fn letters(strands: usize, max_len: usize) -> impl Strategy<Value = Vec<i8>> {
    let k = (strands - 1) as i8;
    prop::collection::vec((1..=k, any::<bool>()), 0..=max_len).prop_map(|v| {
        v.into_iter()
            .map(|(i, neg)| if neg { -i } else { i })
            .collect()
    })
}

fn braid(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (3..=max_strands).prop_flat_map(move |n| {
        letters(n, max_len).prop_map(move |l| BraidWord::new(n, l).unwrap())
    })
}

fn braid_pair(max_len: usize) -> impl Strategy<Value = (BraidWord, BraidWord)> {
    (3usize..=5).prop_flat_map(move |n| {
        (letters(n, max_len), letters(n, max_len))
            .prop_map(move |(a, b)| (BraidWord::new(n, a).unwrap(), BraidWord::new(n, b).unwrap()))
    })
}

/// The braid and commutation relators of `B_n`, as words.
fn relators(n: usize) -> Vec<Vec<i8>> {
    let mut out = Vec::new();
    for i in 1..n as i8 {
        out.push(vec![i, -i]);
        for j in i + 1..n as i8 {
            if j == i + 1 {
                out.push(vec![i, j, i, -j, -i, -j]);
            } else {
                out.push(vec![i, j, -i, -j]);
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn trichotomy_and_inversion(w in braid(5, 20)) {
        let s = dehornoy_sign(&w).unwrap();
        let t = dehornoy_sign(&w.inverse()).unwrap();
        prop_assert_eq!(t.value, s.value.flip());
        prop_assert_eq!(s.value == BraidSign::Identity, is_trivial(&w).unwrap());
        prop_assert!(braid_equal(&s.reduced, &w).unwrap());
    }

    #[test]
    fn sign_is_invariant_under_relators(
        w in braid(5, 16),
        pick in any::<prop::sample::Index>(),
        at in any::<prop::sample::Index>(),
        flip in any::<bool>(),
    ) {
        let n = w.strands();
        let rels = relators(n);
        let mut rel = rels[pick.index(rels.len())].clone();
        if flip {
            rel = rel.iter().rev().map(|l| -l).collect();
        }
        let mut noisy = w.letters().to_vec();
        let pos = at.index(noisy.len() + 1);
        noisy.splice(pos..pos, rel);
        let noisy = BraidWord::new(n, noisy).unwrap();
        prop_assert!(braid_equal(&w, &noisy).unwrap());
        prop_assert_eq!(dehornoy_sign(&w).unwrap().value, dehornoy_sign(&noisy).unwrap().value);
        prop_assert_eq!(dd_sign(&w).unwrap().value, dd_sign(&noisy).unwrap().value);
    }

    #[test]
    fn positive_cones_are_semigroups((a, b) in braid_pair(12)) {
        for sign in [dehornoy_sign, dd_sign] {
            if sign(&a).unwrap().value == BraidSign::Positive
                && sign(&b).unwrap().value == BraidSign::Positive
            {
                prop_assert_eq!(sign(&a.concat(&b)).unwrap().value, BraidSign::Positive);
            }
        }
    }

    #[test]
    fn dd_sign_is_antisymmetric(w in braid(5, 16)) {
        let s = dd_sign(&w).unwrap();
        prop_assert_eq!(dd_sign(&w.inverse()).unwrap().value, s.value.flip());
        prop_assert_eq!(s.value == BraidSign::Identity, is_trivial(&w).unwrap());
    }

    #[test]
    fn dehornoy_orderings_nest(n in 3usize..=5, l in letters(4, 16)) {
        let l: Vec<i8> = l.into_iter().filter(|x| (x.unsigned_abs() as usize) < n - 1).collect();
        let small = BraidWord::new(n - 1, l).unwrap();
        let big = small.shift_up(1);
        prop_assert_eq!(big.strands(), n);
        prop_assert_eq!(dehornoy_sign(&big).unwrap().value, dehornoy_sign(&small).unwrap().value);
        prop_assert_eq!(big.shift_down(1).unwrap(), small);
    }

    #[test]
    fn cone_rewrite_is_positive_and_equal(l in letters(3, 14)) {
        let w = BraidWord::new(3, l).unwrap();
        let w = match dd_sign(&w).unwrap().value {
            BraidSign::Identity => return Ok(()),
            BraidSign::Positive => w,
            BraidSign::Negative => w.inverse(),
        };
        let u = dd_cone_rewrite(&w).unwrap();
        prop_assert!(u.iter().all(|&k| k == 1 || k == 2));
        prop_assert!(braid_equal(&cone_word_to_braid(&u), &w).unwrap());
    }
}
