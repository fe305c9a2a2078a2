//! Decision procedures for braid groups: handle reduction, Dehornoy's sign,
//! word equality, parabolic membership, and the Dubrovina–Dubrovin ordering
//! with its finitely generated positive cone.

mod dd;
mod handle;

pub use dd::{cone_word_to_braid, dd_cone_rewrite, dd_sign, ConeSpec};
pub use handle::{
    braid_equal, dehornoy_sign, handle_reduce, handle_reduce_capped, is_trivial,
    parabolic_membership, set_corrupt_reduction, set_step_cap, step_cap, BraidSign, DehornoySign,
    DEFAULT_STEP_CAP,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::BraidWord;

    fn w(n: usize, s: &str) -> BraidWord {
        BraidWord::parse(n, s).unwrap()
    }

    #[test]
    fn handle_reduction_examples() {
        assert!(handle_reduce(&w(3, "s1 s1^-1")).unwrap().is_empty());
        assert_eq!(
            handle_reduce(&w(3, "s1 s2 s1^-1")).unwrap(),
            w(3, "s2^-1 s1 s2")
        );
        assert_eq!(handle_reduce(&w(4, "s2 s3")).unwrap(), w(4, "s2 s3"));
    }

    #[test]
    fn step_cap_is_reported() {
        let long = w(3, "s1 s2 s1^-1 s2^-1 s1 s2^2 s1^-1");
        assert!(matches!(
            handle_reduce_capped(&long, 1),
            Err(crate::Error::StepCap(1))
        ));
    }

    #[test]
    fn dehornoy_sign_examples() {
        let s = dehornoy_sign(&w(3, "s2^-1 s1 s2")).unwrap();
        assert_eq!(s.value, BraidSign::Positive);
        assert_eq!(s.witness_index, Some(1));
        assert_eq!(
            dehornoy_sign(&w(3, "s1^-1 s2^4")).unwrap().value,
            BraidSign::Negative
        );
        let e = dehornoy_sign(&BraidWord::identity(3)).unwrap();
        assert_eq!(e.value, BraidSign::Identity);
        assert_eq!(e.witness_index, None);
    }

    #[test]
    fn equality_examples() {
        assert!(braid_equal(&w(3, "s1 s2 s1"), &w(3, "s2 s1 s2")).unwrap());
        let cone = ConeSpec::new(3).unwrap();
        let lhs = cone.evaluate(&[2, 1, 1, 2]);
        assert!(braid_equal(&lhs, cone.u(1)).unwrap());
        assert!(!braid_equal(&w(3, "s1"), &w(3, "s2")).unwrap());
        assert!(braid_equal(&w(3, "s1"), &w(4, "s1")).is_err());
    }

    #[test]
    fn parabolic_examples() {
        assert!(parabolic_membership(&w(3, "s2"), 2).unwrap().is_some());
        assert!(parabolic_membership(&w(4, "s1 s2 s1^-1"), 2)
            .unwrap()
            .is_none());
        let r = parabolic_membership(&w(4, "s2 s3 s2^-1"), 2)
            .unwrap()
            .unwrap();
        assert!(r.min_index().unwrap() >= 2);
        assert!(braid_equal(&r, &w(4, "s2 s3 s2^-1")).unwrap());
        assert!(parabolic_membership(&w(4, "s2"), 4).is_err());
        // A conjugate that hides s1 is still detected as a member.
        assert!(parabolic_membership(&w(4, "s1 s3 s1^-1"), 2)
            .unwrap()
            .is_some());
    }

    #[test]
    fn dd_sign_examples() {
        assert_eq!(dd_sign(&w(3, "s1 s2")).unwrap().value, BraidSign::Positive);
        assert_eq!(dd_sign(&w(3, "s2")).unwrap().value, BraidSign::Negative);
        assert_eq!(dd_sign(&w(3, "s1")).unwrap().value, BraidSign::Positive);
        // In B4: u_3 = s3 positive, u_2 = (s2 s3)^-1 positive.
        assert_eq!(dd_sign(&w(4, "s3")).unwrap().value, BraidSign::Positive);
        assert_eq!(
            dd_sign(&w(4, "s3^-1 s2^-1")).unwrap().value,
            BraidSign::Positive
        );
    }

    #[test]
    fn cone_generators_match_closed_forms() {
        let c = ConeSpec::new(4).unwrap();
        assert_eq!(c.u(1), &w(4, "s1 s2 s3"));
        assert_eq!(c.u(2), &w(4, "s3^-1 s2^-1"));
        assert_eq!(c.u(3), &w(4, "s3"));
        for n in 3..=5 {
            let c = ConeSpec::new(n).unwrap();
            for i in 1..n {
                assert_eq!(dd_sign(c.u(i)).unwrap().value, BraidSign::Positive);
            }
        }
    }

    #[test]
    fn cone_rewrite_examples() {
        assert_eq!(dd_cone_rewrite(&w(3, "s1")).unwrap(), vec![1, 2]);
        assert_eq!(dd_cone_rewrite(&w(3, "s1 s2")).unwrap(), vec![1]);
        let sq = w(3, "s1^2");
        let out = dd_cone_rewrite(&sq).unwrap();
        assert!(braid_equal(&cone_word_to_braid(&out), &sq).unwrap());
        assert_eq!(dd_cone_rewrite(&w(3, "s2^-3")).unwrap(), vec![2, 2, 2]);
        assert!(matches!(
            dd_cone_rewrite(&w(3, "s2")),
            Err(crate::Error::Precondition(_))
        ));
        assert!(dd_cone_rewrite(&w(4, "s1")).is_err());
    }
}
