use std::cmp::Ordering;

use ordkit::groups::{Ball, Element, Group, KleinElement};
use ordkit::orders::{klein_orders, Order, Property, Sign, Subgroup};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn groups() -> Vec<Group> {
    vec![
        Group::free(2),
        Group::braid(3),
        Group::braid(4),
        Group::zn(2),
        Group::zn(3),
        Group::Affine,
        Group::Klein,
    ]
}

fn orders() -> Vec<Order> {
    let mut out: Vec<Order> = [
        "dehornoy:b3",
        "dd:b3",
        "dehornoy:b4",
        "dd:b4",
        "zn:lex:2",
        "zn:slope:1,sqrt2",
        "zn:slope:1,0,sqrt3",
        "smirnov:sqrt2-1",
        "magnus:f2",
        "dehornoy:b3!reverse",
        "dehornoy:b3!conj=s1 s2^-1",
        "dd:b4!extend=parabolic=3:(dehornoy:b4)",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect();
    out.extend(klein_orders());
    out
}

fn words(group: &Group, seed: u64, count: usize, len: usize) -> Vec<Element> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| group.random_word(&mut rng, len))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_laws(seed in any::<u64>(), len in 0usize..10) {
        for group in groups() {
            let w = words(&group, seed, 3, len);
            let (a, b, c) = (&w[0], &w[1], &w[2]);
            let left = group.op(&group.op(a, b).unwrap(), c).unwrap();
            let right = group.op(a, &group.op(b, c).unwrap()).unwrap();
            prop_assert!(group.equal(&left, &right).unwrap(), "{group}: associativity");
            let ai = group.invert(a);
            prop_assert!(group.equal(&group.invert(&ai), a).unwrap());
            prop_assert!(group.is_identity(&group.op(a, &ai).unwrap()).unwrap());
            prop_assert!(group.equal(&group.op(&group.identity(), a).unwrap(), a).unwrap());
            let text = group.format(a);
            prop_assert!(group.equal(&group.parse_element(&text).unwrap(), a).unwrap());
        }
    }

    #[test]
    fn klein_relation(n in -20i64..20, m in -20i64..20) {
        let g = Element::Klein(KleinElement::new(n, m));
        let group = Group::Klein;
        let a = Element::Klein(KleinElement::a());
        let b = Element::Klein(KleinElement::b());
        let lhs = group.product([&b, &a, &group.invert(&b)]).unwrap();
        prop_assert!(group.equal(&lhs, &group.invert(&a)).unwrap());
        let gi = group.invert(&g);
        prop_assert!(group.is_identity(&group.op(&g, &gi).unwrap()).unwrap());
    }

    #[test]
    fn order_axioms(seed in any::<u64>(), len in 1usize..8) {
        for o in orders() {
            let group = o.group();
            let w = words(group, seed, 3, len);
            let (f, g, h) = (&w[0], &w[1], &w[2]);
            let sg = o.sign_or_identity(g).unwrap();
            prop_assert_eq!(sg.is_none(), group.is_identity(g).unwrap(), "{}", o);
            let si = o.sign_or_identity(&group.invert(g)).unwrap();
            prop_assert_eq!(si, sg.map(Sign::flip), "{}: antisymmetry", o);
            if sg == Some(Sign::Positive) && o.sign_or_identity(h).unwrap() == Some(Sign::Positive) {
                let gh = group.op(g, h).unwrap();
                prop_assert_eq!(o.sign(&gh).unwrap(), Sign::Positive, "{}: closure", o);
            }
            let fg = group.op(f, g).unwrap();
            let fh = group.op(f, h).unwrap();
            prop_assert_eq!(o.compare(&fg, &fh).unwrap(), o.compare(g, h).unwrap(), "{}: left invariance", o);
            if o.claims_property(Property::BiInvariant) {
                let gf = group.op(g, f).unwrap();
                let hf = group.op(h, f).unwrap();
                prop_assert_eq!(o.compare(&gf, &hf).unwrap(), o.compare(g, h).unwrap(), "{}: bi-invariance", o);
            }
        }
    }

    #[test]
    fn conjugation_is_an_action(seed in any::<u64>(), len in 1usize..6) {
        for o in orders() {
            let group = o.group();
            let w = words(group, seed, 3, len);
            let (f, g, x) = (&w[0], &w[1], &w[2]);
            if group.is_identity(x).unwrap() {
                continue;
            }
            let twice = o.conjugate(f).unwrap().conjugate(g).unwrap();
            let once = o.conjugate(&group.op(g, f).unwrap()).unwrap();
            prop_assert_eq!(twice.sign(x).unwrap(), once.sign(x).unwrap(), "{}", o);
            let direct = o.sign(&group.product([&group.invert(f), x, f]).unwrap()).unwrap();
            prop_assert_eq!(o.conjugate(f).unwrap().sign(x).unwrap(), direct);
        }
    }

    #[test]
    fn extension_by_itself_is_idempotent(seed in any::<u64>(), len in 1usize..8) {
        for o in orders() {
            let group = o.group();
            let members = match group {
                Group::Braid { strands } => vec![Subgroup::Trivial, Subgroup::Whole, Subgroup::Parabolic(strands - 1)],
                Group::Klein => vec![Subgroup::Trivial, Subgroup::KleinA],
                _ => vec![Subgroup::Trivial, Subgroup::Whole],
            };
            for member in members {
                let e = o.extend(member.clone(), &o).unwrap();
                for x in words(group, seed, 4, len) {
                    if !group.is_identity(&x).unwrap() {
                        prop_assert_eq!(e.sign(&x).unwrap(), o.sign(&x).unwrap(), "{} with {}", o, member);
                    }
                }
            }
        }
    }

    #[test]
    fn reverse_flips_every_sign(seed in any::<u64>(), len in 1usize..8) {
        for o in orders() {
            let group = o.group();
            let r = o.reverse();
            for x in words(group, seed, 4, len) {
                let s = o.sign_or_identity(&x).unwrap();
                prop_assert_eq!(r.sign_or_identity(&x).unwrap(), s.map(Sign::flip));
            }
        }
    }
}

#[test]
fn balls_are_nested_and_shortlex() {
    for group in groups().into_iter().filter(|g| *g != Group::Affine) {
        let mut previous = 1;
        let ball = Ball::with_radius(&group, 3).unwrap();
        for r in 0..=3 {
            let small = Ball::with_radius(&group, r).unwrap();
            assert_eq!(small.elements(), ball.up_to(r), "{group} radius {r}");
            assert!(small.len() >= previous);
            previous = small.len();
        }
        assert_eq!(ball.count_up_to(0), 1);
    }
}

#[test]
fn order_specs_round_trip() {
    for o in orders() {
        let text = o.to_string();
        let back: Order = text.parse().unwrap();
        assert_eq!(back.to_string(), text);
        let ball = Ball::with_radius(o.group(), 2).unwrap();
        for g in &ball.elements()[1..] {
            assert_eq!(o.sign(g).unwrap(), back.sign(g).unwrap(), "{text} at {g}");
        }
        assert_ne!(
            o.compare(&ball.elements()[1], &ball.elements()[0]).unwrap(),
            Ordering::Equal
        );
    }
}
