//! Finite approximations of the space of orderings: sign tables on generator
//! balls, the ball ultrametric, consistency search, isolation probes,
//! conjugate approximation, and Conrad-type diagnostics.

mod convergence;
mod extensions;
mod probe;
mod region;

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use convergence::{
    conjugate_convergence, conjugate_convergence_to, ConjugateApproximant, ConvergenceReport,
};
pub use extensions::{
    Certificate, Conclusion, ExtensionSearch, SearchVerdict, Status, Step, DEFAULT_DEPTH,
    DEFAULT_NODE_BUDGET, DEFAULT_REGION_CAP, MAX_CERTIFICATES,
};
pub use probe::{isolated_probe, simplest_between, ProbeOptions, ProbeOutcome, ProbeStage};
pub use region::{Mode, Region, Rule};

use crate::error::{Error, Result};
use crate::groups::{Ball, Element, Group, DEFAULT_BALL_CAP};
use crate::orders::{Order, Sign, Subgroup};

/// The signs of an ordering on the nonidentity elements of a generator ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallRestriction {
    pub group: Group,
    pub radius: usize,
    /// Nonidentity elements in shortlex order.
    pub elements: Vec<Element>,
    pub signs: Vec<Sign>,
}

impl BallRestriction {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Sign of `g`, when `g` is listed.
    pub fn sign_of(&self, g: &Element) -> Result<Option<Sign>> {
        let key = self.group.key(g);
        for (h, s) in self.elements.iter().zip(&self.signs) {
            if self.group.key(h) == key && self.group.equal(g, h)? {
                return Ok(Some(*s));
            }
        }
        Ok(None)
    }

    /// Index of the first element signed differently, for tables over the
    /// same ball.
    pub fn first_disagreement(&self, other: &BallRestriction) -> Option<usize> {
        self.signs
            .iter()
            .zip(&other.signs)
            .position(|(a, b)| a != b)
    }

    /// Positive elements of the table.
    pub fn positives(&self) -> impl Iterator<Item = &Element> {
        self.elements
            .iter()
            .zip(&self.signs)
            .filter(|(_, s)| **s == Sign::Positive)
            .map(|(g, _)| g)
    }

    /// Checks antisymmetry and closure of the positive elements under
    /// products that stay in the ball. Returns an offending pair.
    pub fn axiom_violation(&self) -> Result<Option<(Element, Element)>> {
        let group = &self.group;
        let region = Region::new(group, self.radius, DEFAULT_BALL_CAP)?;
        let mut sign = vec![None; region.len()];
        for (g, s) in self.elements.iter().zip(&self.signs) {
            let i = region.find(g)?.ok_or_else(|| {
                Error::InvalidArgument(format!("{g} is not in the ball of radius {}", self.radius))
            })?;
            sign[i as usize] = Some(*s);
        }
        for i in 1..region.len() as u32 {
            let j = region.inverse(i);
            if sign[i as usize] == sign[j as usize] {
                return Ok(Some((region.element(i).clone(), region.element(j).clone())));
            }
        }
        let positives: Vec<u32> = (1..region.len() as u32)
            .filter(|&i| sign[i as usize] == Some(Sign::Positive))
            .collect();
        for &a in &positives {
            for &b in &positives {
                if let Some(c) = region.combine(Rule::Product, a, b)? {
                    if sign[c as usize] != Some(Sign::Positive) {
                        return Ok(Some((region.element(a).clone(), region.element(b).clone())));
                    }
                }
            }
        }
        Ok(None)
    }
}

impl Serialize for BallRestriction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let signs: Vec<(String, Sign)> = self
            .elements
            .iter()
            .map(|g| self.group.format(g))
            .zip(self.signs.iter().copied())
            .collect();
        let mut st = s.serialize_struct("BallRestriction", 3)?;
        st.serialize_field("group", &self.group.to_string())?;
        st.serialize_field("radius", &self.radius)?;
        st.serialize_field("signs", &signs)?;
        st.end()
    }
}

impl fmt::Display for BallRestriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self
            .elements
            .iter()
            .zip(&self.signs)
            .map(|(g, s)| format!("{}:{}", self.group.format(g), s.symbol()))
            .collect();
        write!(f, "{{{}}}", cells.join(", "))
    }
}

fn restrict_elements(
    order: &Order,
    elements: &[Element],
    radius: usize,
) -> Result<BallRestriction> {
    let signs = elements[1..]
        .iter()
        .map(|g| order.sign(g))
        .collect::<Result<Vec<_>>>()?;
    Ok(BallRestriction {
        group: order.group().clone(),
        radius,
        elements: elements[1..].to_vec(),
        signs,
    })
}

/// Signs of `order` on the ball of the given radius.
pub fn restrict_to_ball(order: &Order, radius: usize) -> Result<BallRestriction> {
    let ball = Ball::with_radius(order.group(), radius)?;
    restrict_elements(order, ball.elements(), radius)
}

pub(crate) fn same_group(a: &Order, b: &Order) -> Result<()> {
    if a.group() != b.group() {
        return Err(Error::GroupMismatch(
            a.group().to_string(),
            b.group().to_string(),
        ));
    }
    Ok(())
}

/// First element, sphere by sphere from radius `from` up to `to`, signed
/// differently by the two orderings.
pub(crate) fn first_difference(
    a: &Order,
    b: &Order,
    ball: &mut Ball,
    from: usize,
    to: usize,
) -> Result<Option<(usize, Element)>> {
    for r in from.max(1)..=to {
        while ball.radius() < r {
            ball.grow(DEFAULT_BALL_CAP)?;
        }
        for g in ball.sphere(r) {
            if a.sign(g)? != b.sign(g)? {
                return Ok(Some((r, g.clone())));
            }
        }
    }
    Ok(None)
}

/// The ball ultrametric between two orderings, `e^-n'` with `n'` the
/// largest radius on which they agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Distance {
    pub n_prime: usize,
    /// True when the orderings agree on the whole ball of `max_radius`, so
    /// that the distance is only bounded by `e^-max_radius`.
    pub bounded: bool,
    pub max_radius: usize,
}

impl Distance {
    pub fn value(&self) -> f64 {
        (-(self.n_prime as f64)).exp()
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.bounded, self.n_prime) {
            (true, n) => write!(f, "<= e^-{n}"),
            (false, 0) => f.write_str("1"),
            (false, n) => write!(f, "e^-{n}"),
        }
    }
}

pub fn order_distance(a: &Order, b: &Order, max_radius: usize) -> Result<Distance> {
    same_group(a, b)?;
    let mut ball = Ball::new(a.group().clone());
    Ok(match first_difference(a, b, &mut ball, 1, max_radius)? {
        Some((r, _)) => Distance {
            n_prime: r - 1,
            bounded: false,
            max_radius,
        },
        None => Distance {
            n_prime: max_radius,
            bounded: true,
            max_radius,
        },
    })
}

/// The element `f^m1 g^n1 ... f^mk g^nk`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveWord {
    pub f: Element,
    pub g: Element,
    pub exponents: Vec<(i64, i64)>,
}

impl PositiveWord {
    pub fn evaluate(&self, group: &Group) -> Result<Element> {
        let mut w = group.identity();
        for &(m, n) in &self.exponents {
            w = group.op(&w, &group.pow(&self.f, m)?)?;
            w = group.op(&w, &group.pow(&self.g, n)?)?;
        }
        Ok(w)
    }

    /// `g^-1 f g^2`.
    pub fn conrad(f: Element, g: Element) -> PositiveWord {
        PositiveWord {
            f,
            g,
            exponents: vec![(0, -1), (1, 2)],
        }
    }
}

impl Serialize for PositiveWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PositiveWord", 3)?;
        st.serialize_field("f", &self.f.to_string())?;
        st.serialize_field("g", &self.g.to_string())?;
        st.serialize_field("exponents", &self.exponents)?;
        st.end()
    }
}

/// Sign of `f^m1 g^n1 ... f^mk g^nk` for positive `f`, `g` and positive
/// exponent sums. Conradian orderings always give `+`.
pub fn positive_word_check(order: &Order, word: &PositiveWord) -> Result<Sign> {
    for h in [&word.f, &word.g] {
        if order.sign_or_identity(h)? != Some(Sign::Positive) {
            return Err(Error::Precondition(format!("{h} is not positive")));
        }
    }
    let (sm, sn) = word
        .exponents
        .iter()
        .fold((0i64, 0i64), |(a, b), &(m, n)| (a + m, b + n));
    if sm <= 0 || sn <= 0 {
        return Err(Error::Precondition(format!(
            "exponent sums must be positive, got {sm} and {sn}"
        )));
    }
    order.sign(&word.evaluate(order.group())?)
}

fn positive_elements(order: &Order, sample: &[Element]) -> Result<Vec<Element>> {
    let mut out = Vec::new();
    for g in sample {
        if order.sign_or_identity(g)? == Some(Sign::Positive) {
            out.push(g.clone());
        }
    }
    Ok(out)
}

/// Looks for positive `f`, `g` in `sample` with `g^-1 f g^2` negative, which
/// proves the ordering is not Conradian.
pub fn conrad_check(order: &Order, sample: &[Element]) -> Result<Option<PositiveWord>> {
    let positives = positive_elements(order, sample)?;
    for g in &positives {
        for f in &positives {
            let w = PositiveWord::conrad(f.clone(), g.clone());
            if order.sign(&w.evaluate(order.group())?)? == Sign::Negative {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// A positive pair `(f, g)` with `f^-n g f^n` negative for every
/// `n <= max_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceSuspect {
    pub f: Element,
    pub g: Element,
    pub max_power: usize,
}

/// Searches positive pairs of `sample` for one that fails
/// `g f^n > f^n` for all `n <= max_power`.
pub fn right_recurrence_check(
    order: &Order,
    sample: &[Element],
    max_power: usize,
) -> Result<Option<RecurrenceSuspect>> {
    let group = order.group();
    let positives = positive_elements(order, sample)?;
    for f in &positives {
        let fi = group.invert(f);
        for g in &positives {
            let mut c = g.clone();
            let mut recurrent = false;
            for _ in 0..max_power {
                c = group.product([&fi, &c, f])?;
                if order.sign(&c)? == Sign::Positive {
                    recurrent = true;
                    break;
                }
            }
            if !recurrent {
                return Ok(Some(RecurrenceSuspect {
                    f: f.clone(),
                    g: g.clone(),
                    max_power,
                }));
            }
        }
    }
    Ok(None)
}

/// Which braid ordering [`conradian_soul_braid`] examines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BraidOrdering {
    Dehornoy,
    Dd,
}

impl std::str::FromStr for BraidOrdering {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dehornoy" => Ok(BraidOrdering::Dehornoy),
            "dd" => Ok(BraidOrdering::Dd),
            _ => Err(Error::Parse(format!("unknown braid ordering {s:?}"))),
        }
    }
}

/// The Conradian soul of a braid ordering among the parabolic chain.
#[derive(Clone, Debug, Serialize)]
pub struct SoulReport {
    pub strands: usize,
    pub ordering: BraidOrdering,
    /// The soul `<s_j, ..., s_{n-1}>` as `Parabolic(j)`, or `Trivial`.
    #[serde(serialize_with = "serialize_display")]
    pub soul: Subgroup,
    /// The next level of the chain, when one was killed.
    #[serde(serialize_with = "serialize_display_opt")]
    pub killed_level: Option<Subgroup>,
    /// A positive word in members of the killed level that is negative.
    pub witness: Option<PositiveWord>,
    pub sample_radius: usize,
}

fn serialize_display<T: fmt::Display, S: Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn serialize_display_opt<T: fmt::Display, S: Serializer>(
    v: &Option<T>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

impl SoulReport {
    /// Re-checks the killing witness: its letters lie in the killed level,
    /// are positive, and the word is negative.
    pub fn verify(&self) -> Result<bool> {
        let order = self.order()?;
        let (Some(level), Some(w)) = (&self.killed_level, &self.witness) else {
            return Ok(self.killed_level.is_none() && self.witness.is_none());
        };
        for h in [&w.f, &w.g] {
            if !level.contains(order.group(), h)? {
                return Ok(false);
            }
        }
        Ok(positive_word_check(&order, w)? == Sign::Negative)
    }

    fn order(&self) -> Result<Order> {
        match self.ordering {
            BraidOrdering::Dehornoy => Order::dehornoy(self.strands),
            BraidOrdering::Dd => Order::dd(self.strands),
        }
    }
}

/// Default radius of the sample used at each level of the chain.
pub const DEFAULT_SOUL_RADIUS: usize = 4;

/// Walks the chain `{id} < <s_{n-1}> < <s_{n-2}, s_{n-1}> < ... < B_n` and
/// returns the largest level on which no Conrad witness is found in the
/// ball of `sample_radius`, with the witness that kills the next level.
pub fn conradian_soul_braid(
    strands: usize,
    ordering: BraidOrdering,
    sample_radius: usize,
) -> Result<SoulReport> {
    if !(2..=5).contains(&strands) {
        return Err(Error::InvalidArgument(format!(
            "the soul computation supports 2 to 5 strands, got {strands}"
        )));
    }
    let order = match ordering {
        BraidOrdering::Dehornoy => Order::dehornoy(strands)?,
        BraidOrdering::Dd => Order::dd(strands)?,
    };
    let group = order.group();
    let ball = Ball::with_radius(group, sample_radius)?;
    let mut soul = Subgroup::Trivial;
    for j in (1..strands).rev() {
        let level = Subgroup::Parabolic(j);
        let mut sample = Vec::new();
        for g in ball.elements() {
            if level.contains(group, g)? {
                sample.push(g.clone());
            }
        }
        if let Some(w) = conrad_check(&order, &sample)? {
            return Ok(SoulReport {
                strands,
                ordering,
                soul,
                killed_level: Some(level),
                witness: Some(w),
                sample_radius,
            });
        }
        soul = level;
    }
    Ok(SoulReport {
        strands,
        ordering,
        soul,
        killed_level: None,
        witness: None,
        sample_radius,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::klein_orders;

    fn table(r: &BallRestriction) -> Vec<(String, &'static str)> {
        r.elements
            .iter()
            .map(|g| r.group.format(g))
            .zip(r.signs.iter().map(|s| s.symbol()))
            .collect()
    }

    fn pairs(v: &[(&str, &'static str)]) -> Vec<(String, &'static str)> {
        v.iter().map(|(a, b)| (a.to_string(), *b)).collect()
    }

    #[test]
    fn restrictions() {
        let z = Order::lex(1).unwrap();
        let r = restrict_to_ball(&z, 2).unwrap();
        assert_eq!(r.len(), 4);
        for (g, s) in r.elements.iter().zip(&r.signs) {
            let x = g.as_zn().unwrap().coords()[0];
            assert_eq!(
                *s,
                if x > 0 {
                    Sign::Positive
                } else {
                    Sign::Negative
                }
            );
        }
        let d = restrict_to_ball(&Order::dehornoy(3).unwrap(), 1).unwrap();
        let mut t = table(&d);
        t.sort();
        assert_eq!(
            t,
            pairs(&[("s1", "+"), ("s1^-1", "-"), ("s2", "+"), ("s2^-1", "-")])
        );
        let dd = restrict_to_ball(&Order::dd(3).unwrap(), 1).unwrap();
        let mut t = table(&dd);
        t.sort();
        assert_eq!(
            t,
            pairs(&[("s1", "+"), ("s1^-1", "-"), ("s2", "-"), ("s2^-1", "+")])
        );
        assert_eq!(dd.axiom_violation().unwrap(), None);
    }

    #[test]
    fn distances() {
        let d = Order::dehornoy(3).unwrap();
        let dd = Order::dd(3).unwrap();
        let same = order_distance(&d, &d, 3).unwrap();
        assert!(same.bounded);
        assert_eq!(same.to_string(), "<= e^-3");
        let x = order_distance(&d, &dd, 3).unwrap();
        assert_eq!((x.n_prime, x.bounded), (0, false));
        assert_eq!(x.to_string(), "1");
        assert!(order_distance(&d, &Order::lex(2).unwrap(), 2).is_err());
    }

    #[test]
    fn dehornoy_witness_word_is_negative() {
        let d = Order::dehornoy(3).unwrap();
        let g = d.group();
        let w = PositiveWord {
            f: g.parse_element("s1 s2").unwrap(),
            g: g.parse_element("s2").unwrap(),
            exponents: vec![(-1, -2), (2, 3)],
        };
        assert_eq!(positive_word_check(&d, &w).unwrap(), Sign::Negative);
        let m = Order::magnus(2).unwrap();
        let w = PositiveWord {
            f: m.group().parse_element("a").unwrap(),
            g: m.group().parse_element("b").unwrap(),
            exponents: vec![(-1, -2), (2, 3)],
        };
        assert_eq!(positive_word_check(&m, &w).unwrap(), Sign::Positive);
        let bad = PositiveWord {
            exponents: vec![(1, -1)],
            ..w
        };
        assert!(matches!(
            positive_word_check(&m, &bad),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn conrad_and_recurrence() {
        let lex = Order::lex(2).unwrap();
        let sample = crate::groups::ball(lex.group(), 3).unwrap();
        assert!(conrad_check(&lex, &sample).unwrap().is_none());
        assert!(right_recurrence_check(&lex, &sample, 1).unwrap().is_none());
        let d = Order::dehornoy(3).unwrap();
        let sample = crate::groups::ball(d.group(), 4).unwrap();
        let w = conrad_check(&d, &sample).unwrap().unwrap();
        assert_eq!(positive_word_check(&d, &w).unwrap(), Sign::Negative);
        for k in klein_orders() {
            let sample = crate::groups::ball(k.group(), 3).unwrap();
            assert!(
                right_recurrence_check(&k, &sample, 20).unwrap().is_none(),
                "{k}"
            );
        }
    }

    #[test]
    fn soul_of_dehornoy_b3() {
        let s = conradian_soul_braid(3, BraidOrdering::Dehornoy, 4).unwrap();
        assert_eq!(s.soul, Subgroup::Parabolic(2));
        assert_eq!(s.killed_level, Some(Subgroup::Parabolic(1)));
        assert!(s.verify().unwrap());
    }

    #[test]
    fn extensions_of_z_and_klein() {
        let z = Group::zn(1);
        for r in 1..4 {
            let v = ExtensionSearch::new(&z, r).run().unwrap();
            assert_eq!(v.status, Status::Consistent);
            assert_eq!(v.assignments.len(), 2, "radius {r}");
        }
        let v = ExtensionSearch::new(&Group::Klein, 4).run().unwrap();
        assert_eq!(v.assignments.len(), 4);
        for c in &v.certificates {
            assert!(c.replay(&Group::Klein).unwrap());
        }
    }
}
