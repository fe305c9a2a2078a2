//! Enumeration of sign assignments on a ball that survive cone saturation.

use std::collections::HashMap;

use serde::Serialize;

use super::region::{Clash, Derivation, Mode, Region, Rule, Saturator};
use super::BallRestriction;
use crate::error::{Error, Result};
use crate::groups::{Element, Group, DEFAULT_BALL_CAP};
use crate::orders::Sign;

/// Default saturation depth.
pub const DEFAULT_DEPTH: usize = 6;
/// Default number of search nodes before a search gives up.
pub const DEFAULT_NODE_BUDGET: usize = 200_000;
/// Largest closure region, in elements, used when no radius is given.
pub const DEFAULT_REGION_CAP: usize = 12_000;
/// Number of elimination certificates kept in a verdict.
pub const MAX_CERTIFICATES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// At least one assignment survived.
    Consistent,
    /// Every assignment was eliminated.
    Inconsistent,
    /// The node budget ran out.
    Unknown,
}

/// One step of a certificate: `values[left]` and `values[right]` combined
/// by `rule`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub rule: Rule,
    pub left: usize,
    pub right: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Conclusion {
    /// The value at this index is the identity.
    Identity(usize),
    /// The two values are inverse to each other.
    Opposite(usize, usize),
}

/// A straight-line derivation of a contradiction from assumed positive
/// elements. Values are numbered assumptions first, then steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    #[serde(serialize_with = "serialize_elements")]
    pub assumptions: Vec<Element>,
    pub steps: Vec<Step>,
    pub conclusion: Conclusion,
}

fn serialize_elements<S: serde::Serializer>(
    v: &[Element],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

impl Certificate {
    /// Recomputes every value with the exact group law and checks the
    /// conclusion.
    pub fn replay(&self, group: &Group) -> Result<bool> {
        let mut values = self.assumptions.clone();
        for s in &self.steps {
            if s.left >= values.len() || s.right >= values.len() {
                return Ok(false);
            }
            let v = s.rule.apply(group, &values[s.left], &values[s.right])?;
            values.push(v);
        }
        match self.conclusion {
            Conclusion::Identity(i) => match values.get(i) {
                Some(v) => group.is_identity(v),
                None => Ok(false),
            },
            Conclusion::Opposite(i, j) => match (values.get(i), values.get(j)) {
                (Some(a), Some(b)) => group.is_identity(&group.op(a, b)?),
                _ => Ok(false),
            },
        }
    }

    /// Replays the certificate and checks that every assumption is positive
    /// under `signs`.
    pub fn refutes(
        &self,
        group: &Group,
        positive: impl Fn(&Element) -> Result<bool>,
    ) -> Result<bool> {
        for a in &self.assumptions {
            if !positive(a)? {
                return Ok(false);
            }
        }
        self.replay(group)
    }

    fn extract(sat: &Saturator<'_>, clash: Clash) -> Certificate {
        let mut b = Builder {
            sat,
            assumptions: Vec::new(),
            steps: Vec::new(),
            assumed_at: HashMap::new(),
            step_at: HashMap::new(),
        };
        let conclusion = match clash {
            Clash::Identity(d) => Conclusion::Identity(b.value_of_derivation(0, d)),
            Clash::Opposite(x, d) => {
                let i = b.value_of_derivation(x, d);
                let j = b.value(sat.region().inverse(x));
                Conclusion::Opposite(i, j)
            }
        };
        let offset = b.assumptions.len();
        // Steps were numbered from zero; shift them behind the assumptions.
        let steps = b
            .steps
            .into_iter()
            .map(|s| Step {
                rule: s.rule,
                left: shift(s.left, offset),
                right: shift(s.right, offset),
            })
            .collect();
        let conclusion = match conclusion {
            Conclusion::Identity(i) => Conclusion::Identity(shift(i, offset)),
            Conclusion::Opposite(i, j) => Conclusion::Opposite(shift(i, offset), shift(j, offset)),
        };
        Certificate {
            assumptions: b.assumptions,
            steps,
            conclusion,
        }
    }
}

/// Values below `ASSUMED` are step numbers; assumption `k` is encoded as
/// `ASSUMED + k` until the final shift.
const ASSUMED: usize = usize::MAX / 2;

fn shift(v: usize, offset: usize) -> usize {
    if v >= ASSUMED {
        v - ASSUMED
    } else {
        v + offset
    }
}

struct Builder<'s, 'r> {
    sat: &'s Saturator<'r>,
    assumptions: Vec<Element>,
    steps: Vec<Step>,
    assumed_at: HashMap<u32, usize>,
    step_at: HashMap<u32, usize>,
}

impl Builder<'_, '_> {
    fn value(&mut self, x: u32) -> usize {
        match self
            .sat
            .derivation(x)
            .expect("cone member has a derivation")
        {
            Derivation::Assumed => {
                if let Some(&k) = self.assumed_at.get(&x) {
                    return ASSUMED + k;
                }
                let k = self.assumptions.len();
                self.assumptions.push(self.sat.region().element(x).clone());
                self.assumed_at.insert(x, k);
                ASSUMED + k
            }
            Derivation::Rule(rule, a, b) => {
                if let Some(&k) = self.step_at.get(&x) {
                    return k;
                }
                let left = self.value(a);
                let right = self.value(b);
                let k = self.steps.len();
                self.steps.push(Step { rule, left, right });
                self.step_at.insert(x, k);
                k
            }
        }
    }

    /// Value for `x` obtained by `d`, where `x` is not yet in the cone.
    fn value_of_derivation(&mut self, x: u32, d: Derivation) -> usize {
        match d {
            Derivation::Assumed => {
                let k = self.assumptions.len();
                self.assumptions.push(self.sat.region().element(x).clone());
                ASSUMED + k
            }
            Derivation::Rule(rule, a, b) => {
                let left = self.value(a);
                let right = self.value(b);
                self.steps.push(Step { rule, left, right });
                self.steps.len() - 1
            }
        }
    }
}

/// Outcome of [`ExtensionSearch::run`].
#[derive(Clone, Debug, Serialize)]
pub struct SearchVerdict {
    pub status: Status,
    /// Surviving assignments, in search order (positive branch first).
    pub assignments: Vec<BallRestriction>,
    /// Number of eliminated branches.
    pub eliminated: usize,
    /// Certificates of the first eliminated branches.
    pub certificates: Vec<Certificate>,
    pub nodes: usize,
    pub region_radius: usize,
    pub region_size: usize,
}

/// Enumerates sign assignments on a generator ball that survive
/// depth-bounded saturation of the closure rules of a [`Mode`].
#[derive(Clone, Debug)]
pub struct ExtensionSearch {
    group: Group,
    radius: usize,
    mode: Mode,
    depth: usize,
    fixed: Vec<(Element, Sign)>,
    region_radius: Option<usize>,
    region_cap: usize,
    budget: usize,
}

impl ExtensionSearch {
    pub fn new(group: &Group, radius: usize) -> Self {
        ExtensionSearch {
            group: group.clone(),
            radius,
            mode: Mode::Left,
            depth: DEFAULT_DEPTH,
            fixed: Vec::new(),
            region_radius: None,
            region_cap: DEFAULT_REGION_CAP,
            budget: DEFAULT_NODE_BUDGET,
        }
    }

    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    /// Requires `g` to have sign `s`.
    pub fn fix(mut self, g: Element, s: Sign) -> Self {
        self.fixed.push((g, s));
        self
    }

    /// Fixes every sign of `r`.
    pub fn fix_restriction(mut self, r: &BallRestriction) -> Self {
        self.fixed
            .extend(r.elements.iter().cloned().zip(r.signs.iter().copied()));
        self
    }

    /// Radius of the closure region. Without one, the region is the ball of
    /// radius `3 * radius`, shrunk until it has at most
    /// [`DEFAULT_REGION_CAP`] elements.
    pub fn region_radius(mut self, r: usize) -> Self {
        self.region_radius = Some(r);
        self
    }

    pub fn budget(mut self, nodes: usize) -> Self {
        self.budget = nodes;
        self
    }

    fn region(&self) -> Result<Region> {
        match self.region_radius {
            Some(r) => Region::new(&self.group, r.max(self.radius), DEFAULT_BALL_CAP),
            None => {
                let mut r = (3 * self.radius).max(self.radius);
                loop {
                    match Region::new(&self.group, r, self.region_cap) {
                        Err(Error::BallCap { .. }) if r > self.radius => r -= 1,
                        out => return out,
                    }
                }
            }
        }
    }

    pub fn run(&self) -> Result<SearchVerdict> {
        let region = self.region()?;
        let ball_len = region.ball().count_up_to(self.radius);
        // One variable per inverse pair, represented by its shortlex-first
        // member.
        let vars: Vec<u32> = (1..ball_len as u32)
            .filter(|&i| region.inverse(i) > i)
            .collect();
        let mut sat = Saturator::new(&region, self.mode, self.depth);
        let mut verdict = SearchVerdict {
            status: Status::Inconsistent,
            assignments: Vec::new(),
            eliminated: 0,
            certificates: Vec::new(),
            nodes: 0,
            region_radius: region.radius(),
            region_size: region.len(),
        };
        for (g, s) in &self.fixed {
            let i = region.find(g)?.ok_or_else(|| {
                Error::InvalidArgument(format!("fixed element {g} lies outside the closure region"))
            })?;
            let x = match s {
                Sign::Positive => i,
                Sign::Negative => region.inverse(i),
            };
            if let Err(c) = sat.assume(x)? {
                verdict.eliminated = 1;
                verdict.certificates.push(Certificate::extract(&sat, c));
                return Ok(verdict);
            }
        }
        let mut dfs = Dfs {
            vars: &vars,
            ball_len,
            radius: self.radius,
            budget: self.budget,
            verdict: &mut verdict,
            exhausted: false,
        };
        dfs.visit(&mut sat, 0)?;
        let exhausted = dfs.exhausted;
        verdict.status = if exhausted {
            Status::Unknown
        } else if verdict.assignments.is_empty() {
            Status::Inconsistent
        } else {
            Status::Consistent
        };
        Ok(verdict)
    }
}

struct Dfs<'v> {
    vars: &'v [u32],
    ball_len: usize,
    radius: usize,
    budget: usize,
    verdict: &'v mut SearchVerdict,
    exhausted: bool,
}

impl Dfs<'_> {
    fn visit(&mut self, sat: &mut Saturator<'_>, k: usize) -> Result<()> {
        if self.exhausted {
            return Ok(());
        }
        self.verdict.nodes += 1;
        if self.verdict.nodes > self.budget {
            self.exhausted = true;
            return Ok(());
        }
        // Skip variables whose sign is already forced.
        let region = sat.region();
        let mut k = k;
        while k < self.vars.len() {
            let x = self.vars[k];
            if !sat.contains(x) && !sat.contains(region.inverse(x)) {
                break;
            }
            k += 1;
        }
        if k == self.vars.len() {
            self.verdict.assignments.push(self.leaf(sat));
            return Ok(());
        }
        let x = self.vars[k];
        for choice in [x, region.inverse(x)] {
            let mark = sat.mark();
            match sat.assume(choice)? {
                Ok(()) => self.visit(sat, k + 1)?,
                Err(c) => {
                    self.verdict.eliminated += 1;
                    if self.verdict.certificates.len() < MAX_CERTIFICATES {
                        self.verdict.certificates.push(Certificate::extract(sat, c));
                    }
                }
            }
            sat.undo(mark);
            if self.exhausted {
                break;
            }
        }
        Ok(())
    }

    fn leaf(&self, sat: &Saturator<'_>) -> BallRestriction {
        let region = sat.region();
        let mut elements = Vec::with_capacity(self.ball_len - 1);
        let mut signs = Vec::with_capacity(self.ball_len - 1);
        for i in 1..self.ball_len as u32 {
            elements.push(region.element(i).clone());
            signs.push(if sat.contains(i) {
                Sign::Positive
            } else {
                Sign::Negative
            });
        }
        BallRestriction {
            group: region.group().clone(),
            radius: self.radius,
            elements,
            signs,
        }
    }
}
