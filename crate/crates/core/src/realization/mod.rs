//! Dynamical realizations of orderings.
//!
//! A [`Realization`] places the first `N` elements of an enumeration on the
//! rational line, order-preservingly, and evaluates the induced action by
//! piecewise-linear interpolation between grid points.

mod crossing;
mod holder;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use crossing::{
    check_almost_free, detect_crossing, recheck_crossing, AlmostFreeWitness, CrossingKind,
    CrossingWitness,
};
pub use holder::{holder_embedding, HolderSeries, DEFAULT_EXPONENT_BOUND};

use crate::error::{Error, Result};
use crate::groups::{Ball, Element, ElementIndex, Group, DEFAULT_BALL_CAP};
use crate::orders::{Order, Sign};
use crate::quadratic::parse_rational_literal;

/// Version tag written into serialized tables.
pub const TABLE_SCHEMA_VERSION: u32 = 1;

/// A finite dynamical realization: elements `g_0 = id, g_1, ...` and their
/// positions `t(g_i)` on the line.
#[derive(Clone, Debug)]
pub struct Realization {
    source: Order,
    index: ElementIndex,
    t: Vec<BigRational>,
    /// Enumeration indices sorted by increasing `t`.
    by_t: Vec<usize>,
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// The first `n` elements of the shortlex ball enumeration of `group`.
pub fn shortlex_prefix(group: &Group, n: usize) -> Result<Vec<Element>> {
    let mut ball = Ball::new(group.clone());
    while ball.len() < n {
        let before = ball.len();
        ball.grow(DEFAULT_BALL_CAP)?;
        if ball.len() == before {
            return Err(Error::InvalidArgument(format!(
                "{group} has fewer than {n} elements"
            )));
        }
    }
    Ok(ball.elements()[..n].to_vec())
}

impl Realization {
    /// Realization of `order` on the first `n` elements in shortlex order.
    pub fn build(order: &Order, n: usize) -> Result<Realization> {
        if n == 0 {
            return Err(Error::InvalidArgument("need at least one element".into()));
        }
        Realization::from_enumeration(order, shortlex_prefix(order.group(), n)?)
    }

    /// Realization for an explicit enumeration, which must start with the
    /// identity and consist of distinct elements.
    pub fn from_enumeration(order: &Order, elements: Vec<Element>) -> Result<Realization> {
        let group = order.group();
        match elements.first() {
            Some(g) if group.is_identity(g)? => {}
            _ => {
                return Err(Error::InvalidArgument(
                    "enumeration must start with the identity".into(),
                ))
            }
        }
        let mut r = Realization {
            source: order.clone(),
            index: ElementIndex::new(group.clone()),
            t: Vec::with_capacity(elements.len()),
            by_t: Vec::with_capacity(elements.len()),
        };
        for g in elements {
            r.push(g)?;
        }
        Ok(r)
    }

    fn push(&mut self, g: Element) -> Result<()> {
        let (i, fresh) = self.index.insert(g)?;
        if !fresh {
            return Err(Error::InvalidArgument(format!(
                "enumeration repeats {}",
                self.index.get(i)
            )));
        }
        if i == 0 {
            self.t.push(BigRational::zero());
            self.by_t.push(0);
            return Ok(());
        }
        let g = self.index.get(i).clone();
        // First position whose element is greater than g.
        let mut lo = 0;
        let mut hi = self.by_t.len();
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.source.compare(self.index.get(self.by_t[mid]), &g)? {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => unreachable!("distinct elements compare unequal"),
            }
        }
        let t = if lo == self.by_t.len() {
            &self.t[self.by_t[lo - 1]] + BigRational::one()
        } else if lo == 0 {
            &self.t[self.by_t[0]] - BigRational::one()
        } else {
            (&self.t[self.by_t[lo - 1]] + &self.t[self.by_t[lo]]) * half()
        };
        self.t.push(t);
        self.by_t.insert(lo, i);
        Ok(())
    }

    pub fn source(&self) -> &Order {
        &self.source
    }

    pub fn group(&self) -> &Group {
        self.index.group()
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// The enumeration, identity first.
    pub fn enumeration(&self) -> &[Element] {
        self.index.elements()
    }

    /// `t(g_i)` for the `i`-th enumerated element.
    pub fn t(&self, i: usize) -> &BigRational {
        &self.t[i]
    }

    pub fn t_values(&self) -> &[BigRational] {
        &self.t
    }

    /// Position of `g` in the enumeration.
    pub fn position(&self, g: &Element) -> Result<Option<usize>> {
        self.index.find(g)
    }

    pub fn t_of(&self, g: &Element) -> Result<Option<&BigRational>> {
        Ok(self.index.find(g)?.map(|i| &self.t[i]))
    }

    /// Enumeration indices sorted by increasing `t`.
    pub fn sorted_indices(&self) -> &[usize] {
        &self.by_t
    }

    /// Grid points in increasing order.
    pub fn grid(&self) -> Vec<&BigRational> {
        self.by_t.iter().map(|&i| &self.t[i]).collect()
    }

    /// For each grid point in increasing order, the image `t(g h)` when `g h`
    /// lies in the prefix.
    pub fn trace(&self, g: &Element) -> Result<Vec<Option<BigRational>>> {
        let group = self.group();
        self.by_t
            .iter()
            .map(|&i| {
                let gh = group.op(g, self.index.get(i))?;
                Ok(self.t_of(&gh)?.cloned())
            })
            .collect()
    }

    fn image_at(&self, g: &Element, sorted_pos: usize) -> Result<Option<BigRational>> {
        let h = self.index.get(self.by_t[sorted_pos]);
        let gh = self.group().op(g, h)?;
        Ok(self.t_of(&gh)?.cloned())
    }

    /// Image of `x` under the piecewise-linear extension of `g`.
    ///
    /// A grid point `t(h)` goes to `t(g h)`, which must lie in the prefix.
    /// Elsewhere the map is affine between the nearest grid points with known
    /// images, and a translation beyond the outermost ones.
    pub fn evaluate_action(&self, g: &Element, x: &BigRational) -> Result<BigRational> {
        let group = self.group();
        group.check(g)?;
        if group.is_identity(g)? {
            return Ok(x.clone());
        }
        let n = self.by_t.len();
        let pos = self.by_t.partition_point(|&i| &self.t[i] < x);
        if pos < n && &self.t[self.by_t[pos]] == x {
            return self.image_at(g, pos)?.ok_or_else(|| {
                Error::Domain(format!(
                    "{} is outside the realized prefix",
                    group
                        .op(g, self.index.get(self.by_t[pos]))
                        .expect("checked")
                ))
            });
        }
        let mut left = None;
        for k in (0..pos).rev() {
            if let Some(y) = self.image_at(g, k)? {
                left = Some((&self.t[self.by_t[k]], y));
                break;
            }
        }
        let mut right = None;
        for k in pos..n {
            if let Some(y) = self.image_at(g, k)? {
                right = Some((&self.t[self.by_t[k]], y));
                break;
            }
        }
        match (left, right) {
            (Some((x0, y0)), Some((x1, y1))) => Ok(&y0 + (&y1 - &y0) * ((x - x0) / (x1 - x0))),
            (Some((x0, y0)), None) => Ok(x + (y0 - x0)),
            (None, Some((x1, y1))) => Ok(x + (y1 - x1)),
            (None, None) => Err(Error::Domain(format!(
                "no product of {g} with a prefix element is realized"
            ))),
        }
    }

    /// The ordering read back from the action: `g` is positive iff it moves
    /// `t(id) = 0` to the right.
    pub fn recovered_sign(&self, g: &Element) -> Result<Option<Sign>> {
        let y = self.evaluate_action(g, &BigRational::zero())?;
        Ok(Sign::from_ordering(y.cmp(&BigRational::zero())))
    }

    /// Checks the realization invariants exactly and returns a description
    /// of the first failure.
    pub fn check_invariants(&self) -> Result<Option<String>> {
        if self.t.first().map(Zero::is_zero) != Some(true) {
            return Ok(Some("t(id) is not 0".into()));
        }
        for w in self.by_t.windows(2) {
            let (a, b) = (w[0], w[1]);
            if self.t[a] >= self.t[b] {
                return Ok(Some(format!(
                    "t-values of #{a} and #{b} are not increasing"
                )));
            }
            let (g, h) = (self.index.get(a), self.index.get(b));
            if self.source.compare(g, h)? != Ordering::Less {
                return Ok(Some(format!("t orders {g} below {h} against the source")));
            }
        }
        Ok(None)
    }

    /// Serializable form of the table.
    pub fn to_table(&self) -> RealizationTable {
        let group = self.group();
        RealizationTable {
            schema_version: TABLE_SCHEMA_VERSION,
            order: self.source.to_string(),
            group: group.to_string(),
            enumeration: self.enumeration().iter().map(|g| group.format(g)).collect(),
            t: self
                .enumeration()
                .iter()
                .zip(&self.t)
                .map(|(g, t)| (group.format(g), t.to_string()))
                .collect(),
        }
    }

    /// Rebuilds a realization from a table, checking that the stored
    /// t-values agree with the ones the induction produces.
    pub fn from_table(table: &RealizationTable) -> Result<Realization> {
        let order: Order = table.order.parse()?;
        let group = order.group().clone();
        let elements = table
            .enumeration
            .iter()
            .map(|s| group.parse_element(s))
            .collect::<Result<Vec<_>>>()?;
        let r = Realization::from_enumeration(&order, elements)?;
        for (g, t) in r.enumeration().iter().zip(&r.t) {
            let key = group.format(g);
            let stored = table
                .t
                .get(&key)
                .ok_or_else(|| Error::Parse(format!("table lacks t({key})")))?;
            if &parse_rational_literal(stored)? != t {
                return Err(Error::Parse(format!(
                    "stored t({key}) = {stored} disagrees with the induction ({t})"
                )));
            }
        }
        Ok(r)
    }
}

/// On-disk form of a realization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationTable {
    pub schema_version: u32,
    pub order: String,
    pub group: String,
    pub enumeration: Vec<String>,
    pub t: BTreeMap<String, String>,
}

/// Affine zero of `x -> d0 + (d1 - d0) (x - x0) / (x1 - x0)` on `[x0, x1]`
/// when `d0` and `d1` have opposite signs.
pub(crate) fn affine_root(
    x0: &BigRational,
    x1: &BigRational,
    d0: &BigRational,
    d1: &BigRational,
) -> Option<BigRational> {
    if d0.signum() * d1.signum() >= BigRational::zero() {
        return None;
    }
    Some(x0 + d0 * (x1 - x0) / (d0 - d1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn z1() -> Order {
        Order::lex(1).unwrap()
    }

    #[test]
    fn integer_realization() {
        let o = z1();
        let r = Realization::build(&o, 5).unwrap();
        let ts: Vec<String> = r.t_values().iter().map(|t| t.to_string()).collect();
        assert_eq!(ts, ["0", "1", "-1", "2", "-2"]);
        let a = o.group().parse_element("(1)").unwrap();
        assert_eq!(r.evaluate_action(&a, &q(1, 2)).unwrap(), q(3, 2));
        assert_eq!(r.evaluate_action(&a, &q(-5, 2)).unwrap(), q(-3, 2));
        assert!(r.check_invariants().unwrap().is_none());
        assert_eq!(r.recovered_sign(&a).unwrap(), Some(Sign::Positive));
    }

    #[test]
    fn midpoint_rule() {
        let o = z1();
        let g = o.group();
        let elems = ["(0)", "(2)", "(1)"]
            .iter()
            .map(|s| g.parse_element(s).unwrap())
            .collect();
        let r = Realization::from_enumeration(&o, elems).unwrap();
        assert_eq!(r.t(1), &q(1, 1));
        assert_eq!(r.t(2), &q(1, 2));
        let single = Realization::build(&o, 1).unwrap();
        assert_eq!(single.t_values(), &[BigRational::zero()]);
    }

    #[test]
    fn repeated_elements_are_rejected() {
        let o = Order::dehornoy(3).unwrap();
        let g = o.group();
        let elems = ["id", "s1 s2 s1", "s2 s1 s2"]
            .iter()
            .map(|s| g.parse_element(s).unwrap())
            .collect();
        assert!(Realization::from_enumeration(&o, elems).is_err());
    }

    #[test]
    fn outside_prefix_is_a_domain_error() {
        let o = z1();
        let r = Realization::build(&o, 3).unwrap();
        let a3 = o.group().parse_element("(3)").unwrap();
        assert!(matches!(
            r.evaluate_action(&a3, &q(0, 1)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn table_round_trip() {
        let o = Order::dd(3).unwrap();
        let r = Realization::build(&o, 40).unwrap();
        let back = Realization::from_table(&r.to_table()).unwrap();
        assert_eq!(back.t_values(), r.t_values());
    }
}
