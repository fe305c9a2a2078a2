//! Sampled consistency checks for ordering oracles.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{Order, Sign, Subgroup};
use crate::error::Result;
use crate::groups::{AffineElement, Element};
use crate::quadratic::QuadraticNumber;

/// A failure of the sign-function axioms on a sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `g` and `g^-1` received the same sign.
    Antisymmetry(Element),
    /// `f` and `g` are positive but `f g` is not.
    Closure(Element, Element),
}

/// Checks `sign(g) != sign(g^-1)` on `sample` and closure of the positive
/// elements of `sample` under products.
pub fn x_axiom_violation(order: &Order, sample: &[Element]) -> Result<Option<AxiomViolation>> {
    let group = order.group();
    let mut positives = Vec::new();
    for g in sample {
        let Some(s) = order.sign_or_identity(g)? else {
            continue;
        };
        if order.sign_or_identity(&group.invert(g))? != Some(s.flip()) {
            return Ok(Some(AxiomViolation::Antisymmetry(g.clone())));
        }
        if s == Sign::Positive {
            positives.push(g);
        }
    }
    for f in &positives {
        for g in &positives {
            if order.sign_or_identity(&group.op(f, g)?)? != Some(Sign::Positive) {
                return Ok(Some(AxiomViolation::Closure((*f).clone(), (*g).clone())));
            }
        }
    }
    Ok(None)
}

/// Returns a triple `(f, g, h)` with `compare(f g, f h) != compare(g, h)`.
pub fn left_invariance_violation<'a, I>(order: &Order, triples: I) -> Result<Option<[Element; 3]>>
where
    I: IntoIterator<Item = (&'a Element, &'a Element, &'a Element)>,
{
    let group = order.group();
    for (f, g, h) in triples {
        let lhs = order.compare(&group.op(f, g)?, &group.op(f, h)?)?;
        if lhs != order.compare(g, h)? {
            return Ok(Some([f.clone(), g.clone(), h.clone()]));
        }
    }
    Ok(None)
}

/// Searches `sample` for a positive `f` and an element `g` with `g f g^-1`
/// negative, which shows the ordering is not invariant under right
/// multiplication.
pub fn bi_invariance_witness(
    order: &Order,
    sample: &[Element],
) -> Result<Option<(Element, Element)>> {
    let group = order.group();
    let mut positives = Vec::new();
    for f in sample {
        if order.sign_or_identity(f)? == Some(Sign::Positive) {
            positives.push(f);
        }
    }
    for g in sample {
        for f in &positives {
            if order.sign_or_identity(&group.conjugate(g, f)?)? == Some(Sign::Negative) {
                return Ok(Some(((*f).clone(), g.clone())));
            }
        }
    }
    Ok(None)
}

/// Looks for `f < h < g` with `f, g` in `member` and `h` outside it among
/// `sample`. Returns `(f, h, g)` with `f`, `g` the members adjacent to `h`.
pub fn convexity_violation(
    order: &Order,
    member: &Subgroup,
    sample: &[Element],
) -> Result<Option<(Element, Element, Element)>> {
    let group = order.group();
    let mut tagged = Vec::with_capacity(sample.len() + 1);
    tagged.push((group.identity(), true));
    for g in sample {
        tagged.push((g.clone(), member.contains(group, g)?));
    }
    let mut error = None;
    tagged.sort_by(|(a, _), (b, _)| match order.compare(a, b) {
        Ok(o) => o,
        Err(e) => {
            error.get_or_insert(e);
            Ordering::Equal
        }
    });
    if let Some(e) = error {
        return Err(e);
    }
    let members: Vec<usize> = (0..tagged.len()).filter(|&i| tagged[i].1).collect();
    for w in members.windows(2) {
        for i in w[0] + 1..w[1] {
            if !tagged[i].1
                && order.compare(&tagged[w[0]].0, &tagged[i].0)? == Ordering::Less
                && order.compare(&tagged[i].0, &tagged[w[1]].0)? == Ordering::Less
            {
                return Ok(Some((
                    tagged[w[0]].0.clone(),
                    tagged[i].0.clone(),
                    tagged[w[1]].0.clone(),
                )));
            }
        }
    }
    Ok(None)
}

/// An affine element signed differently by the Smirnov orderings with
/// parameters `e1` and `e2`.
///
/// Such an element is `(1 - c*t, t)` for a small dyadic `t` and a dyadic `c`
/// strictly between `e1` and `e2`; the search refines the dyadic grid up to
/// `2^-max_bits`. Returns `None` when `e1 == e2` or the grid is too coarse.
pub fn smirnov_discriminator(
    e1: &QuadraticNumber,
    e2: &QuadraticNumber,
    max_bits: u32,
) -> Result<Option<Element>> {
    let (lo, hi) = match e1.cmp(e2) {
        Ordering::Equal => return Ok(None),
        Ordering::Less => (e1, e2),
        Ordering::Greater => (e2, e1),
    };
    let o1 = Order::smirnov(e1.clone())?;
    let o2 = Order::smirnov(e2.clone())?;
    for bits in 0..=max_bits {
        let scale = BigRational::from_integer(BigInt::from(1) << bits);
        let c_num = (lo.scale(&scale)).floor() + 1;
        let c = BigRational::new(c_num, scale.to_integer());
        if QuadraticNumber::from_rational(c.clone()) >= *hi {
            continue;
        }
        // Choose t = 2^-k with |c| t < 1 so that the slope 1 - c t is positive.
        let mut t = BigRational::one();
        while (&c * &t) >= BigRational::one() || (-(&c * &t)) >= BigRational::one() {
            t /= BigRational::from_integer(2.into());
        }
        let g = Element::Affine(AffineElement::new(BigRational::one() - &c * &t, t)?);
        if o1.sign(&g)? != o2.sign(&g)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::ball;

    #[test]
    fn smirnov_orders_are_told_apart() {
        let e1: QuadraticNumber = "sqrt2-1".parse().unwrap();
        let e2: QuadraticNumber = "sqrt2-1+1/1000".parse().unwrap();
        let g = smirnov_discriminator(&e1, &e2, 40).unwrap().unwrap();
        let o1 = Order::smirnov(e1.clone()).unwrap();
        let o2 = Order::smirnov(e2).unwrap();
        assert_ne!(o1.sign(&g).unwrap(), o2.sign(&g).unwrap());
        assert_eq!(smirnov_discriminator(&e1, &e1, 40).unwrap(), None);
    }

    #[test]
    fn dehornoy_is_not_bi_invariant() {
        let d = Order::dehornoy(3).unwrap();
        let sample = ball(d.group(), 2).unwrap();
        let (f, g) = bi_invariance_witness(&d, &sample).unwrap().unwrap();
        let gr = d.group();
        assert_eq!(d.sign(&f).unwrap(), Sign::Positive);
        assert_eq!(
            d.sign(&gr.conjugate(&g, &f).unwrap()).unwrap(),
            Sign::Negative
        );
        let lex = Order::lex(2).unwrap();
        let sample = ball(lex.group(), 3).unwrap();
        assert!(bi_invariance_witness(&lex, &sample).unwrap().is_none());
    }

    #[test]
    fn parabolic_subgroup_is_convex_for_dehornoy() {
        let d = Order::dehornoy(3).unwrap();
        let sample = ball(d.group(), 4).unwrap();
        assert!(convexity_violation(&d, &Subgroup::Parabolic(2), &sample)
            .unwrap()
            .is_none());
        let lex = Order::lex(2).unwrap();
        let sample = ball(lex.group(), 3).unwrap();
        assert!(convexity_violation(&lex, &Subgroup::Whole, &sample)
            .unwrap()
            .is_none());
    }

    #[test]
    fn axioms_hold_on_small_balls() {
        for o in [
            Order::dehornoy(3).unwrap(),
            Order::dd(3).unwrap(),
            Order::magnus(2).unwrap(),
            Order::klein(Sign::Negative, Sign::Positive),
        ] {
            let sample = ball(o.group(), 3).unwrap();
            assert_eq!(x_axiom_violation(&o, &sample).unwrap(), None, "{o}");
        }
    }
}
