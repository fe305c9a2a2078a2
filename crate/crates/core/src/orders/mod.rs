//! Ordering oracles and the operators acting on them.
//!
//! An [`Order`] is a total left-invariant order presented by its sign
//! function. Oracles are cheap to clone and immutable; operators such as
//! [`Order::conjugate`] or [`Order::reverse`] wrap an existing oracle.

mod checks;
mod magnus;
mod spec;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

pub use checks::{
    bi_invariance_witness, convexity_violation, left_invariance_violation, smirnov_discriminator,
    x_axiom_violation, AxiomViolation,
};

use crate::braid::{self, BraidSign};
use crate::error::{Error, Result};
use crate::groups::{Element, Group};
use crate::quadratic::QuadraticNumber;

/// The sign of a nonidentity element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn from_ordering(o: Ordering) -> Option<Sign> {
        match o {
            Ordering::Greater => Some(Sign::Positive),
            Ordering::Less => Some(Sign::Negative),
            Ordering::Equal => None,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        }
    }

    fn from_braid(s: BraidSign) -> Option<Sign> {
        match s {
            BraidSign::Positive => Some(Sign::Positive),
            BraidSign::Negative => Some(Sign::Negative),
            BraidSign::Identity => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Properties an oracle may claim, used to select applicable checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    LeftInvariant,
    BiInvariant,
    Conradian,
    Archimedean,
    RightRecurrent,
}

/// Subgroups with a decidable membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subgroup {
    /// `{id}`.
    Trivial,
    /// The whole group.
    Whole,
    /// `<s_j, ..., s_{n-1}>` in a braid group.
    Parabolic(usize),
    /// `<a>` in the Klein-bottle group.
    KleinA,
}

impl Subgroup {
    pub fn contains(&self, group: &Group, g: &Element) -> Result<bool> {
        match self {
            Subgroup::Trivial => group.is_identity(g),
            Subgroup::Whole => Ok(true),
            Subgroup::Parabolic(j) => {
                let w = g
                    .as_braid()
                    .ok_or_else(|| Error::GroupMismatch("braid group".into(), group.to_string()))?;
                Ok(braid::parabolic_membership(w, *j)?.is_some())
            }
            Subgroup::KleinA => {
                let k = g
                    .as_klein()
                    .ok_or_else(|| Error::GroupMismatch("klein".into(), group.to_string()))?;
                Ok(k.n == 0)
            }
        }
    }

    /// Checks that the subgroup makes sense in `group`.
    pub fn check(&self, group: &Group) -> Result<()> {
        match (self, group) {
            (Subgroup::Trivial | Subgroup::Whole, _) => Ok(()),
            (Subgroup::Parabolic(j), Group::Braid { strands }) if (1..*strands).contains(j) => {
                Ok(())
            }
            (Subgroup::KleinA, Group::Klein) => Ok(()),
            _ => Err(Error::InvalidArgument(format!(
                "subgroup {self} is not defined in {group}"
            ))),
        }
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subgroup::Trivial => f.write_str("trivial"),
            Subgroup::Whole => f.write_str("whole"),
            Subgroup::Parabolic(j) => write!(f, "parabolic={j}"),
            Subgroup::KleinA => f.write_str("klein-a"),
        }
    }
}

#[derive(Debug)]
enum Kind {
    Dehornoy,
    Dd,
    Slope {
        slope: Vec<QuadraticNumber>,
        tiebreak: Vec<usize>,
    },
    Smirnov(QuadraticNumber),
    Magnus,
    Klein {
        sb: Sign,
        sa: Sign,
    },
    Reverse(Order),
    Conjugate {
        base: Order,
        f: Element,
        f_inv: Element,
    },
    Extend {
        outer: Order,
        member: Subgroup,
        inner: Order,
    },
}

#[derive(Debug)]
struct Inner {
    group: Group,
    kind: Kind,
}

/// A total left-invariant ordering given by its sign function.
#[derive(Clone, Debug)]
pub struct Order(Arc<Inner>);

impl Order {
    fn wrap(group: Group, kind: Kind) -> Order {
        Order(Arc::new(Inner { group, kind }))
    }

    /// Dehornoy's ordering of `B_n`.
    pub fn dehornoy(strands: usize) -> Result<Order> {
        let g: Group = format!("b{strands}").parse()?;
        Ok(Order::wrap(g, Kind::Dehornoy))
    }

    /// The Dubrovina–Dubrovin ordering of `B_n`.
    pub fn dd(strands: usize) -> Result<Order> {
        let g: Group = format!("b{strands}").parse()?;
        Ok(Order::wrap(g, Kind::Dd))
    }

    /// Ordering of `Z^n` by the sign of `<slope, v>`, ties broken
    /// lexicographically with coordinates visited in `tiebreak` order.
    ///
    /// `tiebreak` lists 1-based coordinates; omitted ones follow in
    /// increasing order.
    pub fn zn(slope: Vec<QuadraticNumber>, tiebreak: &[usize]) -> Result<Order> {
        let n = slope.len();
        if n == 0 {
            return Err(Error::InvalidArgument("empty slope vector".into()));
        }
        if slope.iter().all(QuadraticNumber::is_zero) {
            return Err(Error::InvalidArgument("slope must be nonzero".into()));
        }
        let mut order = Vec::with_capacity(n);
        for &c in tiebreak {
            if c == 0 || c > n || order.contains(&(c - 1)) {
                return Err(Error::InvalidArgument(format!(
                    "bad tiebreak coordinate {c} for dimension {n}"
                )));
            }
            order.push(c - 1);
        }
        order.extend((0..n).filter(|i| !tiebreak.contains(&(i + 1))));
        Ok(Order::wrap(
            Group::zn(n),
            Kind::Slope {
                slope,
                tiebreak: order,
            },
        ))
    }

    /// Lexicographic ordering of `Z^n`.
    pub fn lex(dim: usize) -> Result<Order> {
        let slope = (0..dim)
            .map(|i| QuadraticNumber::from_integer(i64::from(i == 0)))
            .collect();
        Order::zn(slope, &[])
    }

    /// The ordering of the rational affine group with positive cone
    /// `{(b, a) : b + eps*a > 1}`; `eps` must be irrational.
    pub fn smirnov(eps: QuadraticNumber) -> Result<Order> {
        if eps.is_rational() {
            return Err(Error::InvalidArgument(format!(
                "Smirnov parameter {eps} must be irrational"
            )));
        }
        Ok(Order::wrap(Group::Affine, Kind::Smirnov(eps)))
    }

    /// The Magnus ordering of the free group of rank `rank`.
    pub fn magnus(rank: usize) -> Result<Order> {
        if rank == 0 {
            return Err(Error::InvalidArgument("rank must be positive".into()));
        }
        Ok(Order::wrap(Group::free(rank), Kind::Magnus))
    }

    /// The ordering of the Klein-bottle group with
    /// `sign(b^n a^m) = sb*sign(n)` for `n != 0` and `sa*sign(m)` otherwise.
    pub fn klein(sb: Sign, sa: Sign) -> Order {
        Order::wrap(Group::Klein, Kind::Klein { sb, sa })
    }

    pub fn group(&self) -> &Group {
        &self.0.group
    }

    /// Sign of `g`, or `None` when `g` is the identity.
    pub fn sign_or_identity(&self, g: &Element) -> Result<Option<Sign>> {
        let group = &self.0.group;
        group.check(g)?;
        match &self.0.kind {
            Kind::Dehornoy => {
                let w = g.as_braid().expect("checked");
                Ok(Sign::from_braid(braid::dehornoy_sign(w)?.value))
            }
            Kind::Dd => {
                let w = g.as_braid().expect("checked");
                Ok(Sign::from_braid(braid::dd_sign(w)?.value))
            }
            Kind::Slope { slope, tiebreak } => {
                let v = g.as_zn().expect("checked").coords();
                let dot = slope
                    .iter()
                    .zip(v)
                    .fold(QuadraticNumber::zero(), |acc, (s, &x)| {
                        &acc + &s.scale(&BigRational::from_integer(x.into()))
                    });
                let s = dot.signum();
                if s != 0 {
                    return Ok(Sign::from_ordering(s.cmp(&0)));
                }
                Ok(tiebreak
                    .iter()
                    .map(|&i| v[i])
                    .find(|&x| x != 0)
                    .and_then(|x| Sign::from_ordering(x.cmp(&0))))
            }
            Kind::Smirnov(eps) => {
                let a = g.as_affine().expect("checked");
                if a.is_identity() {
                    return Ok(None);
                }
                let value =
                    &QuadraticNumber::from_rational(a.slope().clone()) + &eps.scale(a.offset());
                let one = QuadraticNumber::one();
                Ok(Sign::from_ordering(value.cmp(&one)))
            }
            Kind::Magnus => {
                let rank = match group {
                    Group::Free { rank } => *rank,
                    _ => unreachable!(),
                };
                let s = magnus::magnus_sign(rank, g.as_free().expect("checked"))?;
                Ok(s.and_then(Sign::from_ordering))
            }
            Kind::Klein { sb, sa } => {
                let k = g.as_klein().expect("checked");
                let (s, x) = if k.n != 0 { (*sb, k.n) } else { (*sa, k.m) };
                Ok(Sign::from_ordering(x.cmp(&0)).map(|t| {
                    if s == Sign::Positive {
                        t
                    } else {
                        t.flip()
                    }
                }))
            }
            Kind::Reverse(base) => Ok(base.sign_or_identity(g)?.map(Sign::flip)),
            Kind::Conjugate { base, f, f_inv } => {
                let h = group.op(&group.op(f_inv, g)?, f)?;
                base.sign_or_identity(&h)
            }
            Kind::Extend {
                outer,
                member,
                inner,
            } => {
                if member.contains(group, g)? {
                    inner.sign_or_identity(g)
                } else {
                    outer.sign_or_identity(g)
                }
            }
        }
    }

    /// Sign of a nonidentity element.
    pub fn sign(&self, g: &Element) -> Result<Sign> {
        self.sign_or_identity(g)?.ok_or(Error::IdentitySign)
    }

    /// Compares `g` and `h`: `g < h` iff `g^-1 h` is positive.
    pub fn compare(&self, g: &Element, h: &Element) -> Result<Ordering> {
        let group = &self.0.group;
        let d = group.op(&group.invert(g), h)?;
        Ok(match self.sign_or_identity(&d)? {
            None => Ordering::Equal,
            Some(Sign::Positive) => Ordering::Less,
            Some(Sign::Negative) => Ordering::Greater,
        })
    }

    /// The ordering with positive cone `f P f^-1`, so that the new sign of
    /// `g` is the old sign of `f^-1 g f`. With this convention
    /// `o.conjugate(f).conjugate(g) == o.conjugate(g f)`.
    pub fn conjugate(&self, f: &Element) -> Result<Order> {
        let group = self.0.group.clone();
        group.check(f)?;
        let f_inv = group.invert(f);
        Ok(Order::wrap(
            group,
            Kind::Conjugate {
                base: self.clone(),
                f: f.clone(),
                f_inv,
            },
        ))
    }

    /// The opposite ordering.
    pub fn reverse(&self) -> Order {
        Order::wrap(self.0.group.clone(), Kind::Reverse(self.clone()))
    }

    /// Extension of `self` by `inner` across `member`: members are signed by
    /// `inner`, everything else by `self`. `member` should be convex for
    /// `self`; see [`convexity_violation`].
    pub fn extend(&self, member: Subgroup, inner: &Order) -> Result<Order> {
        if inner.group() != self.group() {
            return Err(Error::GroupMismatch(
                self.group().to_string(),
                inner.group().to_string(),
            ));
        }
        member.check(self.group())?;
        Ok(Order::wrap(
            self.0.group.clone(),
            Kind::Extend {
                outer: self.clone(),
                member,
                inner: inner.clone(),
            },
        ))
    }

    /// Properties this oracle claims.
    pub fn claims(&self) -> Vec<Property> {
        use Property::*;
        match &self.0.kind {
            Kind::Dehornoy | Kind::Dd | Kind::Smirnov(_) | Kind::Extend { .. } => {
                vec![LeftInvariant]
            }
            Kind::Slope { slope, .. } => {
                let mut v = vec![LeftInvariant, BiInvariant, Conradian, RightRecurrent];
                if slopes_independent(slope) {
                    v.push(Archimedean);
                }
                v
            }
            Kind::Magnus => vec![LeftInvariant, BiInvariant, Conradian, RightRecurrent],
            Kind::Klein { .. } => vec![LeftInvariant, Conradian, RightRecurrent],
            Kind::Reverse(base) | Kind::Conjugate { base, .. } => base.claims(),
        }
    }

    pub fn claims_property(&self, p: Property) -> bool {
        self.claims().contains(&p)
    }

    /// Family tag of the underlying oracle, ignoring operators.
    pub fn family(&self) -> &'static str {
        match &self.0.kind {
            Kind::Dehornoy => "dehornoy",
            Kind::Dd => "dd",
            Kind::Slope { .. } => "zn",
            Kind::Smirnov(_) => "smirnov",
            Kind::Magnus => "magnus",
            Kind::Klein { .. } => "klein",
            Kind::Reverse(b) | Kind::Conjugate { base: b, .. } => b.family(),
            Kind::Extend { outer, .. } => outer.family(),
        }
    }

    /// The slope vector of a `Z^n` oracle.
    pub fn slope(&self) -> Option<&[QuadraticNumber]> {
        match &self.0.kind {
            Kind::Slope { slope, .. } => Some(slope),
            _ => None,
        }
    }

    /// The full tiebreak of a `Z^n` oracle as 1-based coordinates.
    pub fn tiebreak(&self) -> Option<Vec<usize>> {
        match &self.0.kind {
            Kind::Slope { tiebreak, .. } => Some(tiebreak.iter().map(|i| i + 1).collect()),
            _ => None,
        }
    }

    /// The parameter of a Smirnov oracle.
    pub fn smirnov_parameter(&self) -> Option<&QuadraticNumber> {
        match &self.0.kind {
            Kind::Smirnov(e) => Some(e),
            _ => None,
        }
    }
}

/// True when the entries are linearly independent over the rationals, which
/// for a slope ordering means no nonzero vector is signed by the tiebreak.
fn slopes_independent(slope: &[QuadraticNumber]) -> bool {
    match slope {
        [s] => !s.is_zero(),
        [s, t] => {
            let det =
                s.rational_part() * t.irrational_part() - s.irrational_part() * t.rational_part();
            !det.is_zero() && (s.radicand() == t.radicand() || s.is_rational() || t.is_rational())
        }
        _ => false,
    }
}

/// The four orderings of the Klein-bottle group, indexed by `(sb, sa)` in
/// the order `++`, `+-`, `-+`, `--`.
pub fn klein_orders() -> Vec<Order> {
    let signs = [Sign::Positive, Sign::Negative];
    signs
        .iter()
        .flat_map(|&sb| signs.iter().map(move |&sa| Order::klein(sb, sa)))
        .collect()
}

impl fmt::Display for Order {
    /// Canonical spec string, accepted by [`str::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            Kind::Dehornoy => write!(f, "dehornoy:{}", self.0.group),
            Kind::Dd => write!(f, "dd:{}", self.0.group),
            Kind::Slope { slope, tiebreak } => {
                let is_lex = slope.iter().enumerate().all(|(i, s)| {
                    if i == 0 {
                        s.is_rational() && s.rational_part().is_one()
                    } else {
                        s.is_zero()
                    }
                }) && tiebreak.iter().enumerate().all(|(i, &c)| i == c);
                if is_lex {
                    return write!(f, "zn:lex:{}", slope.len());
                }
                let s: Vec<String> = slope.iter().map(|q| q.to_string()).collect();
                write!(f, "zn:slope:{}", s.join(","))?;
                if tiebreak.iter().enumerate().any(|(i, &c)| i != c) {
                    let t: Vec<String> = tiebreak.iter().map(|c| (c + 1).to_string()).collect();
                    write!(f, "@{}", t.join(","))?;
                }
                Ok(())
            }
            Kind::Smirnov(e) => write!(f, "smirnov:{e}"),
            Kind::Magnus => write!(f, "magnus:{}", self.0.group),
            Kind::Klein { sb, sa } => write!(f, "klein:{sb}{sa}"),
            Kind::Reverse(b) => write!(f, "{b}!reverse"),
            Kind::Conjugate { base, f: c, .. } => write!(f, "{base}!conj={c}"),
            Kind::Extend {
                outer,
                member,
                inner,
            } => write!(f, "{outer}!extend={member}:({inner})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(o: &Order, s: &str) -> Element {
        o.group().parse_element(s).unwrap()
    }

    #[test]
    fn sign_examples() {
        let lex = Order::lex(2).unwrap();
        assert_eq!(lex.sign(&el(&lex, "(1,-5)")).unwrap(), Sign::Positive);
        let d = Order::dehornoy(3).unwrap();
        assert_eq!(d.sign(&el(&d, "s1^-1 s2^4")).unwrap(), Sign::Negative);
        assert!(matches!(
            d.sign(&el(&d, "s1 s1^-1")),
            Err(Error::IdentitySign)
        ));
        let sm = Order::smirnov("sqrt2-1".parse().unwrap()).unwrap();
        assert_eq!(sm.sign(&el(&sm, "(b=1, a=1)")).unwrap(), Sign::Positive);
        assert_eq!(sm.sign(&el(&sm, "(b=1, a=-1)")).unwrap(), Sign::Negative);
        assert_eq!(sm.sign(&el(&sm, "(b=1/2, a=1)")).unwrap(), Sign::Negative);
    }

    #[test]
    fn compare_examples() {
        let lex = Order::lex(2).unwrap();
        assert_eq!(
            lex.compare(&el(&lex, "(0,0)"), &el(&lex, "(0,1)")).unwrap(),
            Ordering::Less
        );
        let d = Order::dehornoy(3).unwrap();
        let s1 = el(&d, "s1");
        assert_eq!(d.compare(&s1, &s1).unwrap(), Ordering::Equal);
        assert_eq!(d.compare(&el(&d, "s2"), &s1).unwrap(), Ordering::Less);
    }

    #[test]
    fn conjugation_by_delta() {
        let d = Order::dehornoy(3).unwrap();
        let delta = el(&d, "s1 s2 s1");
        let c = d.conjugate(&delta).unwrap();
        assert_eq!(c.sign(&el(&d, "s2")).unwrap(), Sign::Positive);
        let lex = Order::lex(2).unwrap();
        let c = lex.conjugate(&el(&lex, "(4,-7)")).unwrap();
        for s in ["(1,0)", "(0,-1)", "(-3,2)"] {
            let g = el(&lex, s);
            assert_eq!(c.sign(&g).unwrap(), lex.sign(&g).unwrap());
        }
    }

    #[test]
    fn reverse_examples() {
        let lex = Order::lex(2).unwrap();
        assert_eq!(
            lex.reverse().sign(&el(&lex, "(1,0)")).unwrap(),
            Sign::Negative
        );
        let d = Order::dehornoy(3).unwrap();
        assert_eq!(
            d.reverse().sign(&el(&d, "s1^-1 s2^4")).unwrap(),
            Sign::Positive
        );
    }

    #[test]
    fn extension_builds_the_three_strand_dd_order() {
        let d = Order::dehornoy(3).unwrap();
        let e = d.extend(Subgroup::Parabolic(2), &d.reverse()).unwrap();
        assert_eq!(e.sign(&el(&d, "s2")).unwrap(), Sign::Negative);
        assert_eq!(e.sign(&el(&d, "s1 s2")).unwrap(), Sign::Positive);
        assert_eq!(e.sign(&el(&d, "s1")).unwrap(), Sign::Positive);
        let dd = Order::dd(3).unwrap();
        for g in crate::groups::ball(d.group(), 4).unwrap().iter().skip(1) {
            assert_eq!(e.sign(g).unwrap(), dd.sign(g).unwrap());
        }
    }

    #[test]
    fn slope_examples() {
        let o = Order::zn(vec![1.into(), "sqrt2".parse().unwrap()], &[]).unwrap();
        assert_eq!(o.sign(&el(&o, "(1,0)")).unwrap(), Sign::Positive);
        assert_eq!(o.sign(&el(&o, "(-3,2)")).unwrap(), Sign::Negative);
        assert!(o.claims_property(Property::Archimedean));
        let t = Order::zn(vec![1.into(), 0.into()], &[2]).unwrap();
        assert_eq!(t.sign(&el(&t, "(0,1)")).unwrap(), Sign::Positive);
        assert!(!t.claims_property(Property::Archimedean));
        assert!(Order::zn(vec![0.into(), 0.into()], &[]).is_err());
    }

    #[test]
    fn klein_family() {
        let os = klein_orders();
        assert_eq!(os.len(), 4);
        let g = Group::Klein;
        let a = g.parse_element("a").unwrap();
        let b = g.parse_element("b").unwrap();
        let ba = g.parse_element("b a").unwrap();
        assert_eq!(os[0].sign(&ba).unwrap(), Sign::Positive);
        assert_eq!(
            os[0].sign(&g.parse_element("a^-1").unwrap()).unwrap(),
            Sign::Negative
        );
        let tables: Vec<(Sign, Sign)> = os
            .iter()
            .map(|o| (o.sign(&b).unwrap(), o.sign(&a).unwrap()))
            .collect();
        for i in 0..4 {
            for j in 0..i {
                assert_ne!(tables[i], tables[j]);
            }
        }
    }

    #[test]
    fn magnus_examples() {
        let m = Order::magnus(2).unwrap();
        assert_eq!(m.sign(&el(&m, "a")).unwrap(), Sign::Positive);
        assert_eq!(m.sign(&el(&m, "a^-1")).unwrap(), Sign::Negative);
        assert_eq!(m.sign(&el(&m, "a b a^-1 b^-1")).unwrap(), Sign::Positive);
    }
}
