//! Conjugates of an ordering that approximate a target ordering.

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{first_difference, restrict_to_ball, same_group};
use crate::error::{Error, Result};
use crate::groups::{Ball, Element};
use crate::orders::Order;

/// A conjugate `source.conjugate(conjugator)` agreeing with the target on
/// the ball of radius `agreement` and differing at `discriminator`, which
/// has word length `agreement + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateApproximant {
    pub conjugator: Element,
    pub agreement: usize,
    pub discriminator: Element,
}

#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub source: Order,
    pub target: Order,
    pub conjugator_radius: usize,
    pub target_radius: usize,
    /// One approximant per target radius reached, with strictly increasing
    /// agreement.
    pub approximants: Vec<ConjugateApproximant>,
    /// Every conjugate equals the source (abelian groups).
    pub fixed_point: bool,
    /// Conjugators whose conjugate showed no difference from the target up
    /// to radius `target_radius + conjugator_radius`.
    pub undistinguished: Vec<Element>,
}

impl ConvergenceReport {
    /// True when an approximant was emitted for every target radius.
    pub fn reached_target(&self) -> bool {
        self.approximants.len() == self.target_radius
    }

    /// Re-checks every approximant: equal sign tables on the ball of its
    /// agreement radius, and opposite signs at the discriminator.
    pub fn verify(&self) -> Result<bool> {
        for a in &self.approximants {
            let alt = self.source.conjugate(&a.conjugator)?;
            if restrict_to_ball(&alt, a.agreement)? != restrict_to_ball(&self.target, a.agreement)?
            {
                return Ok(false);
            }
            if alt.sign(&a.discriminator)? == self.target.sign(&a.discriminator)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl Serialize for ConvergenceReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let group = self.source.group();
        let rows: Vec<_> = self
            .approximants
            .iter()
            .enumerate()
            .map(|(m, a)| Row {
                m: m + 1,
                conjugator: group.format(&a.conjugator),
                agreement: a.agreement,
                discriminator: group.format(&a.discriminator),
            })
            .collect();
        let mut st = s.serialize_struct("ConvergenceReport", 7)?;
        st.serialize_field("source", &self.source.to_string())?;
        st.serialize_field("target", &self.target.to_string())?;
        st.serialize_field("conjugator_radius", &self.conjugator_radius)?;
        st.serialize_field("target_radius", &self.target_radius)?;
        st.serialize_field("fixed_point", &self.fixed_point)?;
        st.serialize_field("reached_target", &self.reached_target())?;
        st.serialize_field("approximants", &rows)?;
        st.end()
    }
}

#[derive(Serialize)]
struct Row {
    m: usize,
    conjugator: String,
    agreement: usize,
    discriminator: String,
}

/// A non-central conjugator and the first difference it shows, if any.
type Scan = (Element, Option<(usize, Element)>);

/// [`conjugate_convergence_to`] with the source as target.
pub fn conjugate_convergence(
    o: &Order,
    conjugator_radius: usize,
    target: usize,
) -> Result<ConvergenceReport> {
    conjugate_convergence_to(o, o, conjugator_radius, target)
}

/// Searches conjugators of word length at most `conjugator_radius` for
/// conjugates of `source` that agree with `target` on growing balls.
///
/// For `m = 1..=target_radius` the report holds the conjugate with the
/// smallest agreement radius that is at least `m` and larger than the one
/// chosen for `m - 1`; ties go to the shortlex-first conjugator. Central
/// conjugators are skipped. The search stops at the first `m` with no
/// candidate.
pub fn conjugate_convergence_to(
    source: &Order,
    target: &Order,
    conjugator_radius: usize,
    target_radius: usize,
) -> Result<ConvergenceReport> {
    same_group(source, target)?;
    if target_radius == 0 {
        return Err(Error::InvalidArgument(
            "target radius must be positive".into(),
        ));
    }
    let group = source.group();
    let mut report = ConvergenceReport {
        source: source.clone(),
        target: target.clone(),
        conjugator_radius,
        target_radius,
        approximants: Vec::new(),
        fixed_point: false,
        undistinguished: Vec::new(),
    };
    if group.is_abelian() {
        report.fixed_point = true;
        return Ok(report);
    }
    let generators = group.generators();
    let conjugators = Ball::with_radius(group, conjugator_radius)?;
    let near = Ball::with_radius(group, target_radius)?;
    // First pass, in parallel: the first difference within the target ball.
    let scans = conjugators.elements()[1..]
        .par_iter()
        .map(|g| -> Result<Option<Scan>> {
            for s in &generators {
                if !group.equal(&group.op(g, s)?, &group.op(s, g)?)? {
                    let alt = source.conjugate(g)?;
                    let mut ball = near.clone();
                    let diff = first_difference(&alt, target, &mut ball, 1, target_radius)?;
                    return Ok(Some((g.clone(), diff)));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut far = near;
    let mut candidates = Vec::new();
    for (g, diff) in scans.into_iter().flatten() {
        let diff = match diff {
            Some(d) => Some(d),
            None => {
                let alt = source.conjugate(&g)?;
                first_difference(
                    &alt,
                    target,
                    &mut far,
                    target_radius + 1,
                    target_radius + conjugator_radius,
                )?
            }
        };
        match diff {
            Some((r, d)) if r > 1 => candidates.push(ConjugateApproximant {
                conjugator: g,
                agreement: r - 1,
                discriminator: d,
            }),
            Some(_) => {}
            None => report.undistinguished.push(g),
        }
    }
    let mut previous = 0;
    for m in 1..=target_radius {
        let floor = m.max(previous + 1);
        let best = candidates
            .iter()
            .filter(|c| c.agreement >= floor)
            .min_by_key(|c| c.agreement);
        match best {
            Some(c) => {
                previous = c.agreement;
                report.approximants.push(c.clone());
            }
            None => break,
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_groups_are_fixed_points() {
        let o = Order::lex(2).unwrap();
        let r = conjugate_convergence(&o, 3, 2).unwrap();
        assert!(r.fixed_point);
        assert!(r.approximants.is_empty());
    }

    #[test]
    fn dehornoy_conjugates_approach_dehornoy() {
        let d = Order::dehornoy(3).unwrap();
        let r = conjugate_convergence(&d, 5, 2).unwrap();
        assert!(r.reached_target(), "{:?}", r.approximants);
        assert!(r.verify().unwrap());
        let radii: Vec<usize> = r.approximants.iter().map(|a| a.agreement).collect();
        assert!(radii.windows(2).all(|w| w[0] < w[1]));
    }
}
