//! A finite closure region with product lookup, and depth-bounded cone
//! saturation over it.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{burau_compose, Ball, Element, ElementKey, Group};

/// Closure rules applied during saturation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// `a b`
    Product,
    /// `a b a^-1`
    Conjugate,
    /// `a^-1 b a`
    ConjugateInverse,
    /// `a^-1 b a^2`
    Conrad,
}

impl Rule {
    /// Evaluates the rule exactly in `group`.
    pub fn apply(self, group: &Group, a: &Element, b: &Element) -> Result<Element> {
        let ai = group.invert(a);
        match self {
            Rule::Product => group.op(a, b),
            Rule::Conjugate => group.product([a, b, &ai]),
            Rule::ConjugateInverse => group.product([&ai, b, a]),
            Rule::Conrad => group.product([&ai, b, a, a]),
        }
    }
}

/// Which closure rules a saturation uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Products only: left-invariant orderings.
    #[default]
    Left,
    /// Products and conjugates: bi-invariant orderings.
    Bi,
    /// Products and `f^-1 g f^2`: Conradian orderings.
    Conrad,
}

impl Mode {
    fn rules(self) -> &'static [Rule] {
        match self {
            Mode::Left => &[Rule::Product],
            Mode::Bi => &[Rule::Product, Rule::Conjugate, Rule::ConjugateInverse],
            Mode::Conrad => &[Rule::Product, Rule::Conrad],
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "left" => Ok(Mode::Left),
            "bi" => Ok(Mode::Bi),
            "conrad" => Ok(Mode::Conrad),
            _ => Err(Error::Parse(format!("unknown closure mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
enum Keys {
    /// Burau fingerprints, combined by matrix multiplication.
    Braid { strands: usize, fps: Vec<Vec<u64>> },
    /// Normal forms, combined by the group law.
    Exact,
}

/// The elements of a generator ball with inverse and product lookup.
#[derive(Clone, Debug)]
pub struct Region {
    ball: Ball,
    inverse: Vec<u32>,
    keys: Keys,
    lookup: HashMap<ElementKey, u32>,
}

impl Region {
    pub fn new(group: &Group, radius: usize, cap: usize) -> Result<Region> {
        let ball = Ball::with_radius_capped(group, radius, cap)?;
        let elements = ball.elements().to_vec();
        let lookup: HashMap<ElementKey, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (group.key(g), i as u32))
            .collect();
        let keys = match group {
            Group::Braid { strands } => Keys::Braid {
                strands: *strands,
                fps: elements
                    .iter()
                    .map(|g| match group.key(g) {
                        ElementKey::Fingerprint(v) => v,
                        ElementKey::Exact(_) => unreachable!("braid keys are fingerprints"),
                    })
                    .collect(),
            },
            _ => Keys::Exact,
        };
        let inverse = elements
            .iter()
            .map(|g| {
                let inv = group.invert(g);
                let i = ball.find(&inv)?.ok_or_else(|| {
                    Error::Precondition(format!("ball is not closed under inversion at {inv}"))
                })?;
                Ok(i as u32)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Region {
            ball,
            inverse,
            keys,
            lookup,
        })
    }

    pub fn group(&self) -> &Group {
        self.ball.group()
    }

    pub fn radius(&self) -> usize {
        self.ball.radius()
    }

    pub fn len(&self) -> usize {
        self.ball.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ball.is_empty()
    }

    pub fn ball(&self) -> &Ball {
        &self.ball
    }

    pub fn element(&self, i: u32) -> &Element {
        &self.ball.elements()[i as usize]
    }

    pub fn inverse(&self, i: u32) -> u32 {
        self.inverse[i as usize]
    }

    pub fn find(&self, g: &Element) -> Result<Option<u32>> {
        Ok(self.ball.find(g)?.map(|i| i as u32))
    }

    /// Index of `rule(a, b)`, when it lies in the region.
    pub fn combine(&self, rule: Rule, a: u32, b: u32) -> Result<Option<u32>> {
        match &self.keys {
            Keys::Braid { strands, fps } => {
                let n = *strands;
                let (fa, fb, fai) = (
                    &fps[a as usize],
                    &fps[b as usize],
                    &fps[self.inverse(a) as usize],
                );
                let key = match rule {
                    Rule::Product => burau_compose(n, fa, fb),
                    Rule::Conjugate => burau_compose(n, &burau_compose(n, fa, fb), fai),
                    Rule::ConjugateInverse => burau_compose(n, &burau_compose(n, fai, fb), fa),
                    Rule::Conrad => {
                        let t = burau_compose(n, &burau_compose(n, fai, fb), fa);
                        burau_compose(n, &t, fa)
                    }
                };
                Ok(self.lookup.get(&ElementKey::Fingerprint(key)).copied())
            }
            Keys::Exact => {
                let g = rule.apply(self.group(), self.element(a), self.element(b))?;
                Ok(self.lookup.get(&ElementKey::Exact(g)).copied())
            }
        }
    }
}

/// How a cone member was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Derivation {
    Assumed,
    Rule(Rule, u32, u32),
}

/// A contradiction reached by saturation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Clash {
    /// The identity was derived.
    Identity(Derivation),
    /// `x` was derived while its inverse is already in the cone.
    Opposite(u32, Derivation),
}

#[derive(Clone, Copy, Debug)]
struct Node {
    depth: u8,
    derivation: Derivation,
}

/// Incremental, undoable saturation of a positive cone inside a region.
pub(crate) struct Saturator<'a> {
    region: &'a Region,
    rules: &'static [Rule],
    max_depth: u8,
    cone: Vec<Option<Node>>,
    members: Vec<u32>,
    queue: Vec<Vec<u32>>,
    trail: Vec<u32>,
}

/// A point to which a [`Saturator`] can be rolled back.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Mark {
    trail: usize,
    members: usize,
}

impl<'a> Saturator<'a> {
    pub fn new(region: &'a Region, mode: Mode, max_depth: usize) -> Self {
        let max_depth = max_depth.min(u8::MAX as usize) as u8;
        Saturator {
            region,
            rules: mode.rules(),
            max_depth,
            cone: vec![None; region.len()],
            members: Vec::new(),
            queue: vec![Vec::new(); max_depth as usize + 1],
            trail: Vec::new(),
        }
    }

    pub fn region(&self) -> &'a Region {
        self.region
    }

    pub fn contains(&self, i: u32) -> bool {
        self.cone[i as usize].is_some()
    }

    pub fn mark(&self) -> Mark {
        Mark {
            trail: self.trail.len(),
            members: self.members.len(),
        }
    }

    pub fn undo(&mut self, mark: Mark) {
        for i in self.trail.drain(mark.trail..) {
            self.cone[i as usize] = None;
        }
        self.members.truncate(mark.members);
        self.queue.iter_mut().for_each(Vec::clear);
    }

    fn add(&mut self, x: u32, derivation: Derivation, depth: u8) -> std::result::Result<(), Clash> {
        if x == 0 {
            return Err(Clash::Identity(derivation));
        }
        if self.contains(x) {
            return Ok(());
        }
        if self.contains(self.region.inverse(x)) {
            return Err(Clash::Opposite(x, derivation));
        }
        self.cone[x as usize] = Some(Node { depth, derivation });
        self.trail.push(x);
        self.queue[depth as usize].push(x);
        Ok(())
    }

    /// Adds `x` as an assumption and saturates.
    pub fn assume(&mut self, x: u32) -> Result<std::result::Result<(), Clash>> {
        if let Err(c) = self.add(x, Derivation::Assumed, 0) {
            self.queue.iter_mut().for_each(Vec::clear);
            return Ok(Err(c));
        }
        let out = self.saturate();
        if !matches!(out, Ok(Ok(()))) {
            self.queue.iter_mut().for_each(Vec::clear);
        }
        out
    }

    fn saturate(&mut self) -> Result<std::result::Result<(), Clash>> {
        while let Some(d) = self.queue.iter().position(|q| !q.is_empty()) {
            let x = self.queue[d].pop().expect("bucket is nonempty");
            self.members.push(x);
            let dx = self.depth(x);
            let count = self.members.len();
            for k in 0..count {
                let y = self.members[k];
                let depth = dx.max(self.depth(y)) + 1;
                if depth > self.max_depth {
                    continue;
                }
                for &rule in self.rules {
                    for (a, b) in [(x, y), (y, x)] {
                        if let Some(z) = self.region.combine(rule, a, b)? {
                            if let Err(c) = self.add(z, Derivation::Rule(rule, a, b), depth) {
                                return Ok(Err(c));
                            }
                        }
                    }
                }
            }
        }
        Ok(Ok(()))
    }

    fn depth(&self, x: u32) -> u8 {
        self.cone[x as usize].map_or(0, |n| n.depth)
    }

    pub(crate) fn derivation(&self, x: u32) -> Option<Derivation> {
        self.cone[x as usize].map(|n| n.derivation)
    }
}
