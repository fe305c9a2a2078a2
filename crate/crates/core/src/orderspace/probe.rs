//! Searches for a second ordering that agrees with a given one on a ball.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::extensions::{ExtensionSearch, Status, DEFAULT_DEPTH, DEFAULT_NODE_BUDGET};
use super::{first_difference, restrict_to_ball, BallRestriction, Mode};
use crate::error::{Error, Result};
use crate::groups::{Ball, Element, Group, ZnVector};
use crate::orders::{convexity_violation, Order, Subgroup};
use crate::quadratic::QuadraticNumber;

/// The simplest rational strictly between two distinct quadratic numbers:
/// smallest denominator, then smallest absolute numerator.
pub fn simplest_between(a: &QuadraticNumber, b: &QuadraticNumber) -> Result<BigRational> {
    let (l, u) = match a.cmp(b) {
        std::cmp::Ordering::Less => (a, b),
        std::cmp::Ordering::Greater => (b, a),
        std::cmp::Ordering::Equal => {
            return Err(Error::InvalidArgument(format!("empty interval at {a}")))
        }
    };
    if l.is_negative() && u.is_positive() {
        return Ok(BigRational::zero());
    }
    if !u.is_positive() {
        return Ok(-simplest_between(&-u, &-l)?);
    }
    let n = l.floor();
    let next = BigRational::from_integer(&n + 1);
    if QuadraticNumber::from_rational(next.clone()) < *u {
        return Ok(next);
    }
    let base = QuadraticNumber::from_rational(BigRational::from_integer(n.clone()));
    let (lf, uf) = (l - &base, u - &base);
    let inner = if lf.is_zero() {
        BigRational::from_integer(uf.recip()?.floor() + 1)
    } else {
        simplest_between(&uf.recip()?, &lf.recip()?)?
    };
    Ok(BigRational::from_integer(n) + inner.recip())
}

/// Which part of [`isolated_probe`] produced an alternative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeStage {
    SlopePerturbation,
    Conjugation,
    ReverseExtension,
    ConsistencySearch,
}

#[derive(Clone, Debug)]
pub enum ProbeOutcome {
    /// A shipped ordering that agrees on the ball and differs at
    /// `discriminator`.
    Realized {
        alternative: Order,
        discriminator: Element,
        stage: ProbeStage,
    },
    /// A sign table on the next ball that survives saturation and differs
    /// from the probed ordering, without a known ordering realizing it.
    Unrealized {
        assignment: BallRestriction,
        own: BallRestriction,
    },
    /// Nothing found; `status` is the status of the final consistency search.
    NoneWithinBudget { status: Status, survivors: usize },
}

impl ProbeOutcome {
    pub fn is_realized(&self) -> bool {
        matches!(self, ProbeOutcome::Realized { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            ProbeOutcome::Realized { .. } => "realized",
            ProbeOutcome::Unrealized { .. } => "unrealized",
            ProbeOutcome::NoneWithinBudget { .. } => "none-within-budget",
        }
    }
}

impl Serialize for ProbeOutcome {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ProbeOutcome", 4)?;
        st.serialize_field("outcome", self.label())?;
        match self {
            ProbeOutcome::Realized {
                alternative,
                discriminator,
                stage,
            } => {
                st.serialize_field("alternative", &alternative.to_string())?;
                st.serialize_field("discriminator", &alternative.group().format(discriminator))?;
                st.serialize_field("stage", stage)?;
            }
            ProbeOutcome::Unrealized { assignment, own } => {
                let i = assignment.first_disagreement(own).unwrap_or(0);
                st.serialize_field("assignment", assignment)?;
                st.serialize_field(
                    "discriminator",
                    &assignment.group.format(&assignment.elements[i]),
                )?;
                st.serialize_field("stage", &ProbeStage::ConsistencySearch)?;
            }
            ProbeOutcome::NoneWithinBudget { status, survivors } => {
                st.serialize_field("search_status", status)?;
                st.serialize_field("survivors", survivors)?;
            }
        }
        st.end()
    }
}

#[derive(Clone, Debug)]
pub struct ProbeOptions {
    pub depth: usize,
    pub node_budget: usize,
    /// Radius of the conjugator ball; defaults to the probe radius.
    pub conjugator_radius: Option<usize>,
    /// Radius of the closure region; defaults to three times the probe radius.
    pub region_radius: Option<usize>,
    /// Finest perturbation `2^-bits` tried on slope vectors.
    pub perturbation_bits: u32,
    /// Element cap for discriminator searches.
    pub search_cap: usize,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions {
            depth: DEFAULT_DEPTH,
            node_budget: DEFAULT_NODE_BUDGET,
            conjugator_radius: None,
            region_radius: None,
            perturbation_bits: 64,
            search_cap: 20_000,
        }
    }
}

fn agrees(o: &Order, table: &BallRestriction) -> Result<bool> {
    for (g, s) in table.elements.iter().zip(&table.signs) {
        if o.sign(g)? != *s {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Discriminator beyond the ball of `radius`, searched up to `limit` or
/// until the ball would exceed `cap` elements.
fn discriminator(
    a: &Order,
    b: &Order,
    ball: &mut Ball,
    radius: usize,
    limit: usize,
    cap: usize,
) -> Result<Option<Element>> {
    for r in radius + 1..=limit {
        if ball.radius() < r {
            match ball.grow(cap) {
                Err(Error::BallCap { .. }) => return Ok(None),
                other => other?,
            }
        }
        if let Some((_, g)) = first_difference(a, b, ball, r, r)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

fn slope_stage(
    o: &Order,
    table: &BallRestriction,
    opts: &ProbeOptions,
) -> Result<Option<ProbeOutcome>> {
    let (Some(slope), Some(tiebreak)) = (o.slope(), o.tiebreak()) else {
        return Ok(None);
    };
    let n = slope.len();
    if n < 2 {
        return Ok(None);
    }
    for bits in 1..=opts.perturbation_bits {
        let step = BigRational::new(BigInt::one(), BigInt::one() << bits);
        for j in 0..n {
            for delta in [step.clone(), -step.clone()] {
                let mut s = slope.to_vec();
                s[j] = &s[j] + &QuadraticNumber::from_rational(delta.clone());
                let Ok(alt) = Order::zn(s.clone(), &tiebreak) else {
                    continue;
                };
                if !agrees(&alt, table)? {
                    continue;
                }
                for i in (0..n).filter(|&i| i != j && !slope[i].is_zero()) {
                    // P/Q strictly between -s_j/s_i and -(s_j + delta)/s_i
                    // makes <slope, v> and <s, v> differ in sign for
                    // v = P e_i + Q e_j.
                    let si = slope[i].recip()?;
                    let lo = -(&slope[j] * &si);
                    let hi = -(&s[j] * &si);
                    let q = simplest_between(&lo, &hi)?;
                    let mut v = vec![0i64; n];
                    let (Ok(p), Ok(d)) = (
                        i64::try_from(q.numer().clone()),
                        i64::try_from(q.denom().clone()),
                    ) else {
                        continue;
                    };
                    v[i] = p;
                    v[j] = d;
                    let g = Element::Zn(ZnVector::new(v));
                    if o.sign_or_identity(&g)? != alt.sign_or_identity(&g)? {
                        return Ok(Some(ProbeOutcome::Realized {
                            alternative: alt,
                            discriminator: g,
                            stage: ProbeStage::SlopePerturbation,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn known_convex_subgroups(group: &Group) -> Vec<Subgroup> {
    match group {
        Group::Braid { strands } => (2..*strands).rev().map(Subgroup::Parabolic).collect(),
        Group::Klein => vec![Subgroup::KleinA],
        _ => Vec::new(),
    }
}

/// Looks for an ordering different from `o` with the same signs on the ball
/// of `radius`.
///
/// Stages run in order: perturbed slope vectors for `Z^n` orderings,
/// conjugates `o.conjugate(g)` for `g` in a conjugator ball, reversal of
/// `o` on a convex subgroup, and finally an [`ExtensionSearch`] on the ball
/// of `radius + 1` with the signs of `o` on the ball of `radius` fixed.
pub fn isolated_probe(o: &Order, radius: usize, opts: &ProbeOptions) -> Result<ProbeOutcome> {
    let group = o.group();
    let table = restrict_to_ball(o, radius)?;
    if let Some(found) = slope_stage(o, &table, opts)? {
        return Ok(found);
    }
    let conj_radius = opts.conjugator_radius.unwrap_or(radius);
    let limit = radius + 2 * conj_radius + 1;
    let mut ball = Ball::with_radius(group, radius)?;
    if !group.is_abelian() {
        let conjugators = Ball::with_radius(group, conj_radius)?;
        for g in &conjugators.elements()[1..] {
            let alt = o.conjugate(g)?;
            if !agrees(&alt, &table)? {
                continue;
            }
            if let Some(d) = discriminator(o, &alt, &mut ball, radius, limit, opts.search_cap)? {
                return Ok(ProbeOutcome::Realized {
                    alternative: alt,
                    discriminator: d,
                    stage: ProbeStage::Conjugation,
                });
            }
        }
    }
    let sample = Ball::with_radius(group, radius + 1)?;
    for member in known_convex_subgroups(group) {
        if convexity_violation(o, &member, sample.elements())?.is_some() {
            continue;
        }
        let alt = o.extend(member, &o.reverse())?;
        if !agrees(&alt, &table)? {
            continue;
        }
        if let Some(d) = discriminator(o, &alt, &mut ball, radius, limit, opts.search_cap)? {
            return Ok(ProbeOutcome::Realized {
                alternative: alt,
                discriminator: d,
                stage: ProbeStage::ReverseExtension,
            });
        }
    }
    let own = restrict_to_ball(o, radius + 1)?;
    let verdict = ExtensionSearch::new(group, radius + 1)
        .mode(Mode::Left)
        .depth(opts.depth)
        .region_radius(opts.region_radius.unwrap_or(3 * radius).max(radius + 1))
        .budget(opts.node_budget)
        .fix_restriction(&table)
        .run()?;
    if let Some(a) = verdict
        .assignments
        .iter()
        .find(|a| a.first_disagreement(&own).is_some())
    {
        return Ok(ProbeOutcome::Unrealized {
            assignment: a.clone(),
            own,
        });
    }
    Ok(ProbeOutcome::NoneWithinBudget {
        status: verdict.status,
        survivors: verdict.assignments.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&q("-1/2"), &q("1/3")).unwrap(), r(0, 1));
        assert_eq!(simplest_between(&q("sqrt2"), &q("3/2")).unwrap(), r(10, 7));
        assert_eq!(simplest_between(&q("1"), &q("3/2")).unwrap(), r(4, 3));
        assert_eq!(
            simplest_between(&q("-3/2"), &q("-sqrt2")).unwrap(),
            r(-10, 7)
        );
        assert_eq!(simplest_between(&q("2"), &q("7/2")).unwrap(), r(3, 1));
    }

    #[test]
    fn slope_ordering_is_not_isolated() {
        let o: Order = "zn:slope:1,sqrt2".parse().unwrap();
        let out = isolated_probe(&o, 4, &ProbeOptions::default()).unwrap();
        let ProbeOutcome::Realized {
            alternative,
            discriminator,
            stage,
        } = out
        else {
            panic!("expected a realized alternative, got {out:?}");
        };
        assert_eq!(stage, ProbeStage::SlopePerturbation);
        assert_eq!(
            restrict_to_ball(&alternative, 4).unwrap(),
            restrict_to_ball(&o, 4).unwrap()
        );
        assert_ne!(
            o.sign(&discriminator).unwrap(),
            alternative.sign(&discriminator).unwrap()
        );
    }

    #[test]
    fn z_has_no_alternatives() {
        let o = Order::lex(1).unwrap();
        let out = isolated_probe(&o, 3, &ProbeOptions::default()).unwrap();
        assert!(matches!(
            out,
            ProbeOutcome::NoneWithinBudget {
                status: Status::Consistent,
                survivors: 1
            }
        ));
    }
}
