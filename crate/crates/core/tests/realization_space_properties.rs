use ordkit::groups::{Element, Group, ZnVector};
use ordkit::orders::{klein_orders, Order, Sign};
use ordkit::orderspace::{
    order_distance, restrict_to_ball, BallRestriction, ExtensionSearch, Status,
};
use ordkit::realization::{holder_embedding, Realization, DEFAULT_EXPONENT_BOUND};
use proptest::prelude::*;

fn shipped() -> Vec<Order> {
    let mut out: Vec<Order> = [
        "dehornoy:b3",
        "dd:b3",
        "zn:lex:2",
        "zn:slope:1,sqrt2",
        "smirnov:sqrt2-1",
        "magnus:f2",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect();
    out.extend(klein_orders());
    out
}

fn b3_orders() -> Vec<Order> {
    [
        "dehornoy:b3",
        "dd:b3",
        "dehornoy:b3!reverse",
        "dehornoy:b3!conj=s1",
        "dehornoy:b3!conj=s2^-1",
        "dehornoy:b3!conj=s1 s2",
        "dd:b3!conj=s1",
        "dd:b3!reverse",
        "dehornoy:b3!extend=parabolic=2:(dd:b3)",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect()
}

fn restrict(r: &BallRestriction, radius: usize) -> Vec<(String, Sign)> {
    let group = &r.group;
    let ball = ordkit::groups::Ball::with_radius(group, radius).unwrap();
    ball.elements()[1..]
        .iter()
        .map(|g| {
            (
                g.to_string(),
                r.sign_of(g).unwrap().expect("ball element is listed"),
            )
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn realization_round_trips(which in 0usize..10, n in 2usize..120) {
        let orders = shipped();
        let o = &orders[which % orders.len()];
        let r = Realization::build(o, n).unwrap();
        prop_assert_eq!(r.check_invariants().unwrap(), None);
        for (i, g) in r.enumeration().iter().enumerate().skip(1) {
            prop_assert_eq!(r.recovered_sign(g).unwrap(), Some(o.sign(g).unwrap()), "{} at {}", o, i);
        }
        let table = r.to_table();
        let back = Realization::from_table(&table).unwrap();
        prop_assert_eq!(back.t_values(), r.t_values());
    }

    #[test]
    fn realization_is_monotone(which in 0usize..10, n in 2usize..80) {
        let orders = shipped();
        let o = &orders[which % orders.len()];
        let r = Realization::build(o, n).unwrap();
        let e = r.enumeration();
        for i in 0..e.len() {
            for j in 0..e.len() {
                prop_assert_eq!(o.compare(&e[i], &e[j]).unwrap(), r.t(i).cmp(r.t(j)));
            }
        }
    }

    #[test]
    fn holder_brackets_are_superadditive(x in -6i64..=6, y in -6i64..=6, p1 in 1usize..=12, p2 in 1usize..=12) {
        let o: Order = "zn:slope:1,sqrt2".parse().unwrap();
        let f = Element::Zn(ZnVector::new(vec![1, 0]));
        let g = Element::Zn(ZnVector::new(vec![x, y]));
        let series = holder_embedding(&o, &f, &g, p1 + p2, DEFAULT_EXPONENT_BOUND).unwrap();
        let q = |p: usize| series.q[p - 1];
        let sum = q(p1) + q(p2);
        prop_assert!(q(p1 + p2) == sum || q(p1 + p2) == sum + 1);
        let ratio = series.ratio(p1 + p2);
        let exact = x as f64 + y as f64 * 2f64.sqrt();
        let width = series.width();
        let approx: f64 = num_traits::ToPrimitive::to_f64(&ratio).unwrap();
        let w: f64 = num_traits::ToPrimitive::to_f64(&width).unwrap();
        prop_assert!(approx <= exact + 1e-9 && exact < approx + w + 1e-9);
    }

    #[test]
    fn distance_is_a_symmetric_ultrametric(i in 0usize..9, j in 0usize..9, k in 0usize..9) {
        let o = b3_orders();
        let d = |a: &Order, b: &Order| order_distance(a, b, 4).unwrap();
        let (ab, bc, ac) = (d(&o[i], &o[j]), d(&o[j], &o[k]), d(&o[i], &o[k]));
        prop_assert_eq!(&ab, &d(&o[j], &o[i]));
        prop_assert!(ac.n_prime >= ab.n_prime.min(bc.n_prime));
        prop_assert!(d(&o[i], &o[i]).bounded);
    }
}

#[test]
fn shipped_restrictions_satisfy_the_axioms() {
    for o in shipped() {
        let radius = if matches!(o.group(), Group::Braid { .. } | Group::Free { .. }) {
            3
        } else {
            4
        };
        let r = restrict_to_ball(&o, radius).unwrap();
        assert_eq!(r.axiom_violation().unwrap(), None, "{o}");
    }
}

#[test]
fn extensions_project_to_smaller_balls() {
    let cases = [(Group::zn(1), 3), (Group::zn(2), 1), (Group::Klein, 2)];
    for (group, r) in cases {
        let small = ExtensionSearch::new(&group, r).depth(6).run().unwrap();
        let big = ExtensionSearch::new(&group, r + 1).depth(6).run().unwrap();
        assert_eq!(small.status, Status::Consistent);
        assert_eq!(big.status, Status::Consistent);
        let survivors: Vec<_> = small.assignments.iter().map(|a| restrict(a, r)).collect();
        for a in &big.assignments {
            assert!(survivors.contains(&restrict(a, r)), "{group}: {a}");
        }
    }
}

#[test]
fn z2_unit_ball_matches_brute_force() {
    let group = Group::zn(2);
    let verdict = ExtensionSearch::new(&group, 1).depth(8).run().unwrap();
    // The four generators come in two inverse pairs and no product of
    // elements of the unit ball other than inverses lands back in it, so
    // every choice of one element per pair is consistent.
    assert_eq!(verdict.assignments.len(), 4);
    for spec in [
        "zn:lex:2",
        "zn:slope:1,sqrt2",
        "zn:slope:-1,sqrt2",
        "zn:lex:2!reverse",
    ] {
        let o: Order = spec.parse().unwrap();
        let r = restrict_to_ball(&o, 1).unwrap();
        assert!(verdict.assignments.contains(&r), "{spec}");
    }
}

#[test]
fn klein_and_z_counts() {
    for r in 1..=4 {
        let v = ExtensionSearch::new(&Group::zn(1), r).run().unwrap();
        assert_eq!(v.assignments.len(), 2, "Z radius {r}");
    }
    let v = ExtensionSearch::new(&Group::Klein, 4)
        .depth(6)
        .run()
        .unwrap();
    assert_eq!(v.assignments.len(), 4);
    for o in klein_orders() {
        assert!(
            v.assignments.contains(&restrict_to_ball(&o, 4).unwrap()),
            "{o}"
        );
    }
}

#[test]
fn certificates_replay() {
    let group = Group::zn(2);
    let e = |x: i64, y: i64| Element::Zn(ZnVector::new(vec![x, y]));
    let v = ExtensionSearch::new(&group, 2)
        .fix(e(1, 0), Sign::Positive)
        .fix(e(0, 1), Sign::Positive)
        .fix(e(1, 1), Sign::Negative)
        .run()
        .unwrap();
    assert_eq!(v.status, Status::Inconsistent);
    assert!(!v.certificates.is_empty());
    for c in &v.certificates {
        assert!(c.replay(&group).unwrap());
    }
}

#[test]
fn contradictory_fixed_signs_yield_a_certificate() {
    let group = Group::zn(1);
    let a = Element::Zn(ZnVector::new(vec![1]));
    let v = ExtensionSearch::new(&group, 2)
        .fix(a.clone(), Sign::Positive)
        .fix(a, Sign::Negative)
        .run()
        .unwrap();
    assert_eq!(v.status, Status::Inconsistent);
    assert!(v.certificates[0].replay(&group).unwrap());
}
