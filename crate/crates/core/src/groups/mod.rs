//! Group families, element representations, and generator balls.
//!
//! Every group instance carries a fixed symmetric generating set; balls and
//! shortlex enumerations are taken with respect to it.

mod affine;
mod braid_word;
mod free;
mod klein;
mod zn;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

pub use affine::AffineElement;
pub use braid_word::{burau_compose, burau_fingerprint, BraidWord};
pub use free::FreeWord;
pub use klein::{klein_normal_form, KleinElement};
pub use zn::ZnVector;

use crate::braid;
use crate::error::{Error, Result};

/// Element count above which ball enumeration reports a resource error.
pub const DEFAULT_BALL_CAP: usize = 2_000_000;

/// A concrete group instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Group {
    /// Free group of the given rank.
    Free { rank: usize },
    /// Braid group on the given number of strands.
    Braid { strands: usize },
    /// Free abelian group of the given dimension.
    Zn { dim: usize },
    /// Affine maps `x -> bx + a` over the rationals, `b > 0`.
    Affine,
    /// The Klein-bottle group `<a, b | b a b^-1 = a^-1>`.
    Klein,
}

/// An element of one of the supported groups.
///
/// The derived equality is syntactic; for braid words it does not decide
/// group equality. Use [`Group::equal`] for that.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Free(FreeWord),
    Braid(BraidWord),
    Zn(ZnVector),
    Affine(AffineElement),
    Klein(KleinElement),
}

/// Hash key used to bucket elements. Exact for every family except braids,
/// where it is a fingerprint that is confirmed by handle reduction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ElementKey {
    Exact(Element),
    Fingerprint(Vec<u64>),
}

impl ElementKey {
    pub fn is_exact(&self) -> bool {
        matches!(self, ElementKey::Exact(_))
    }
}

impl Group {
    pub fn free(rank: usize) -> Group {
        Group::Free { rank }
    }

    pub fn braid(strands: usize) -> Group {
        Group::Braid { strands }
    }

    pub fn zn(dim: usize) -> Group {
        Group::Zn { dim }
    }

    pub fn identity(&self) -> Element {
        match self {
            Group::Free { .. } => Element::Free(FreeWord::identity()),
            Group::Braid { strands } => Element::Braid(BraidWord::identity(*strands)),
            Group::Zn { dim } => Element::Zn(ZnVector::zero(*dim)),
            Group::Affine => Element::Affine(AffineElement::identity()),
            Group::Klein => Element::Klein(KleinElement::identity()),
        }
    }

    /// The fixed symmetric generating set, each generator followed by its
    /// inverse. This order defines shortlex enumeration.
    pub fn generators(&self) -> Vec<Element> {
        match self {
            Group::Free { rank } => (1..=*rank as u32)
                .flat_map(|g| {
                    [
                        Element::Free(FreeWord::generator(g, 1)),
                        Element::Free(FreeWord::generator(g, -1)),
                    ]
                })
                .collect(),
            Group::Braid { strands } => (1..*strands)
                .flat_map(|i| {
                    [1, -1].map(|e| {
                        Element::Braid(BraidWord::from_letters_unchecked(
                            *strands,
                            vec![e * i as i8],
                        ))
                    })
                })
                .collect(),
            Group::Zn { dim } => (0..*dim)
                .flat_map(|i| [1, -1].map(|s| Element::Zn(ZnVector::unit(*dim, i, s))))
                .collect(),
            Group::Affine => {
                let half = BigRational::new(1.into(), 2.into());
                vec![
                    Element::Affine(AffineElement::from_integers(2, 0).unwrap()),
                    Element::Affine(
                        AffineElement::new(half, BigRational::from_integer(0.into())).unwrap(),
                    ),
                    Element::Affine(AffineElement::from_integers(1, 1).unwrap()),
                    Element::Affine(AffineElement::from_integers(1, -1).unwrap()),
                ]
            }
            Group::Klein => vec![
                Element::Klein(KleinElement::a()),
                Element::Klein(KleinElement::a().inverse()),
                Element::Klein(KleinElement::b()),
                Element::Klein(KleinElement::b().inverse()),
            ],
        }
    }

    /// Human-readable names for the generators, aligned with [`generators`](Self::generators).
    pub fn generator_names(&self) -> Vec<String> {
        self.generators().iter().map(|g| self.format(g)).collect()
    }

    /// Checks that `g` is a well-formed element of this instance.
    pub fn check(&self, g: &Element) -> Result<()> {
        let ok = match (self, g) {
            (Group::Free { rank }, Element::Free(w)) => w.max_generator() as usize <= *rank,
            (Group::Braid { strands }, Element::Braid(w)) => w.strands() == *strands,
            (Group::Zn { dim }, Element::Zn(v)) => v.dim() == *dim,
            (Group::Affine, Element::Affine(_)) => true,
            (Group::Klein, Element::Klein(_)) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::GroupMismatch(
                self.to_string(),
                self.describe_element(g),
            ))
        }
    }

    fn describe_element(&self, g: &Element) -> String {
        match g {
            Element::Free(w) => format!("free word {w}"),
            Element::Braid(w) => format!("braid word {w} on {} strands", w.strands()),
            Element::Zn(v) => format!("vector {v}"),
            Element::Affine(a) => format!("affine map {a}"),
            Element::Klein(k) => format!("Klein element {k}"),
        }
    }

    /// The group operation `g h`.
    pub fn op(&self, g: &Element, h: &Element) -> Result<Element> {
        match (g, h) {
            (Element::Free(a), Element::Free(b)) => Ok(Element::Free(a.mul(b))),
            (Element::Braid(a), Element::Braid(b)) if a.strands() == b.strands() => {
                Ok(Element::Braid(a.concat(b)))
            }
            (Element::Zn(a), Element::Zn(b)) if a.dim() == b.dim() => Ok(Element::Zn(a.add(b))),
            (Element::Affine(a), Element::Affine(b)) => Ok(Element::Affine(a.compose(b))),
            (Element::Klein(a), Element::Klein(b)) => Ok(Element::Klein(a.mul(b))),
            _ => Err(Error::GroupMismatch(
                self.describe_element(g),
                self.describe_element(h),
            )),
        }
    }

    pub fn invert(&self, g: &Element) -> Element {
        match g {
            Element::Free(a) => Element::Free(a.inverse()),
            Element::Braid(a) => Element::Braid(a.inverse()),
            Element::Zn(a) => Element::Zn(a.neg()),
            Element::Affine(a) => Element::Affine(a.inverse()),
            Element::Klein(a) => Element::Klein(a.inverse()),
        }
    }

    /// Product of a sequence of elements (identity for an empty sequence).
    pub fn product<'a, I: IntoIterator<Item = &'a Element>>(&self, items: I) -> Result<Element> {
        let mut acc = self.identity();
        for g in items {
            acc = self.op(&acc, g)?;
        }
        Ok(acc)
    }

    /// `g^k` for any integer `k`.
    pub fn pow(&self, g: &Element, k: i64) -> Result<Element> {
        match g {
            Element::Braid(w) => return Ok(Element::Braid(w.pow(k))),
            Element::Zn(v) => return Ok(Element::Zn(v.scale(k))),
            _ => {}
        }
        let mut base = if k < 0 { self.invert(g) } else { g.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.op(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.op(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// `f g f^-1`.
    pub fn conjugate(&self, f: &Element, g: &Element) -> Result<Element> {
        self.op(&self.op(f, g)?, &self.invert(f))
    }

    pub fn is_identity(&self, g: &Element) -> Result<bool> {
        match g {
            Element::Free(w) => Ok(w.is_identity()),
            Element::Braid(w) => braid::is_trivial(w),
            Element::Zn(v) => Ok(v.is_zero()),
            Element::Affine(a) => Ok(a.is_identity()),
            Element::Klein(k) => Ok(k.is_identity()),
        }
    }

    /// Group equality: normal forms, or handle reduction for braid words.
    pub fn equal(&self, g: &Element, h: &Element) -> Result<bool> {
        match (g, h) {
            (Element::Braid(a), Element::Braid(b)) => braid::braid_equal(a, b),
            _ => {
                self.check(g)?;
                self.check(h)?;
                Ok(g == h)
            }
        }
    }

    pub fn key(&self, g: &Element) -> ElementKey {
        match g {
            Element::Braid(w) => ElementKey::Fingerprint(burau_fingerprint(w)),
            other => ElementKey::Exact(other.clone()),
        }
    }

    /// True when the family's equality is decided by comparing normal forms.
    pub fn has_normal_forms(&self) -> bool {
        !matches!(self, Group::Braid { .. })
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self, Group::Zn { .. })
            || matches!(self, Group::Free { rank: 1 })
            || matches!(self, Group::Braid { strands: 2 })
    }

    pub fn parse_element(&self, s: &str) -> Result<Element> {
        let g = match self {
            Group::Free { .. } => Element::Free(FreeWord::parse(s)?),
            Group::Braid { strands } => Element::Braid(BraidWord::parse(*strands, s)?),
            Group::Zn { dim } => Element::Zn(ZnVector::parse(*dim, s)?),
            Group::Affine => Element::Affine(AffineElement::parse(s)?),
            Group::Klein => Element::Klein(klein_normal_form(s)?),
        };
        self.check(&g)?;
        Ok(g)
    }

    pub fn format(&self, g: &Element) -> String {
        g.to_string()
    }

    /// Product of `len` uniformly chosen generators (not reduced).
    pub fn random_word<R: Rng + ?Sized>(&self, rng: &mut R, len: usize) -> Element {
        let gens = self.generators();
        let mut acc = self.identity();
        for _ in 0..len {
            let s = &gens[rng.gen_range(0..gens.len())];
            acc = self.op(&acc, s).expect("generators belong to the group");
        }
        acc
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Free { rank } => write!(f, "f{rank}"),
            Group::Braid { strands } => write!(f, "b{strands}"),
            Group::Zn { dim } => write!(f, "z{dim}"),
            Group::Affine => write!(f, "affine"),
            Group::Klein => write!(f, "klein"),
        }
    }
}

impl FromStr for Group {
    type Err = Error;

    /// Accepts `f2`, `b3`, `z2`, `affine`, `klein`.
    fn from_str(s: &str) -> Result<Group> {
        let s = s.trim().to_ascii_lowercase();
        let num = |rest: &str| -> Result<usize> {
            rest.parse()
                .map_err(|_| Error::Parse(format!("bad group parameter in {s:?}")))
        };
        let g = match s.as_str() {
            "affine" => Group::Affine,
            "klein" => Group::Klein,
            _ if s.starts_with('f') => Group::Free {
                rank: num(&s[1..])?,
            },
            _ if s.starts_with('b') => Group::Braid {
                strands: num(&s[1..])?,
            },
            _ if s.starts_with('z') => Group::Zn { dim: num(&s[1..])? },
            _ => return Err(Error::Parse(format!("unknown group {s:?}"))),
        };
        match g {
            Group::Free { rank: 0 } | Group::Zn { dim: 0 } => {
                Err(Error::Parse(format!("degenerate group {s:?}")))
            }
            Group::Braid { strands } if !(2..=64).contains(&strands) => Err(Error::Parse(format!(
                "braid groups need 2..=64 strands: {s:?}"
            ))),
            g => Ok(g),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Free(w) => w.fmt(f),
            Element::Braid(w) => w.fmt(f),
            Element::Zn(v) => v.fmt(f),
            Element::Affine(a) => a.fmt(f),
            Element::Klein(k) => k.fmt(f),
        }
    }
}

impl Element {
    pub fn as_braid(&self) -> Option<&BraidWord> {
        match self {
            Element::Braid(w) => Some(w),
            _ => None,
        }
    }

    pub fn as_zn(&self) -> Option<&ZnVector> {
        match self {
            Element::Zn(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_affine(&self) -> Option<&AffineElement> {
        match self {
            Element::Affine(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_klein(&self) -> Option<&KleinElement> {
        match self {
            Element::Klein(k) => Some(k),
            _ => None,
        }
    }

    pub fn as_free(&self) -> Option<&FreeWord> {
        match self {
            Element::Free(w) => Some(w),
            _ => None,
        }
    }
}

/// A set of pairwise distinct group elements with index lookup.
#[derive(Clone, Debug)]
pub struct ElementIndex {
    group: Group,
    elements: Vec<Element>,
    buckets: HashMap<ElementKey, Vec<usize>>,
}

impl ElementIndex {
    pub fn new(group: Group) -> Self {
        ElementIndex {
            group,
            elements: Vec::new(),
            buckets: HashMap::new(),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn find(&self, g: &Element) -> Result<Option<usize>> {
        let key = self.group.key(g);
        self.find_with_key(&key, g)
    }

    fn find_with_key(&self, key: &ElementKey, g: &Element) -> Result<Option<usize>> {
        let Some(bucket) = self.buckets.get(key) else {
            return Ok(None);
        };
        if key.is_exact() {
            return Ok(bucket.first().copied());
        }
        for &i in bucket {
            if self.group.equal(&self.elements[i], g)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Inserts `g` unless an equal element is present. Returns the index and
    /// whether the element was new.
    pub fn insert(&mut self, g: Element) -> Result<(usize, bool)> {
        let key = self.group.key(&g);
        if let Some(i) = self.find_with_key(&key, &g)? {
            return Ok((i, false));
        }
        let i = self.elements.len();
        self.elements.push(g);
        self.buckets.entry(key).or_default().push(i);
        Ok((i, true))
    }
}

/// A generator ball, enumerated in shortlex order of representative words.
#[derive(Clone, Debug)]
pub struct Ball {
    index: ElementIndex,
    sphere_offsets: Vec<usize>,
    generators: Vec<Element>,
}

impl Ball {
    /// The ball of radius 0.
    pub fn new(group: Group) -> Self {
        let generators = group.generators();
        let mut index = ElementIndex::new(group.clone());
        index
            .insert(group.identity())
            .expect("inserting into an empty index cannot fail");
        Ball {
            index,
            sphere_offsets: vec![0, 1],
            generators,
        }
    }

    pub fn with_radius(group: &Group, radius: usize) -> Result<Self> {
        Self::with_radius_capped(group, radius, DEFAULT_BALL_CAP)
    }

    pub fn with_radius_capped(group: &Group, radius: usize, cap: usize) -> Result<Self> {
        let mut ball = Ball::new(group.clone());
        while ball.radius() < radius {
            ball.grow(cap)?;
        }
        Ok(ball)
    }

    pub fn group(&self) -> &Group {
        self.index.group()
    }

    pub fn radius(&self) -> usize {
        self.sphere_offsets.len() - 2
    }

    /// Adds the next sphere.
    pub fn grow(&mut self, cap: usize) -> Result<()> {
        let r = self.radius();
        let start = self.sphere_offsets[r];
        let end = self.sphere_offsets[r + 1];
        for i in start..end {
            for s in 0..self.generators.len() {
                let g = self
                    .index
                    .group()
                    .op(self.index.get(i), &self.generators[s])?;
                let (_, fresh) = self.index.insert(g)?;
                if fresh && self.index.len() > cap {
                    return Err(Error::BallCap { radius: r + 1, cap });
                }
            }
        }
        self.sphere_offsets.push(self.index.len());
        Ok(())
    }

    /// All elements, shortlex ordered (identity first).
    pub fn elements(&self) -> &[Element] {
        self.index.elements()
    }

    /// Elements of the ball of radius `r <= self.radius()`.
    pub fn up_to(&self, r: usize) -> &[Element] {
        &self.index.elements()[..self.sphere_offsets[r.min(self.radius()) + 1]]
    }

    /// Elements of word length exactly `r`.
    pub fn sphere(&self, r: usize) -> &[Element] {
        &self.index.elements()[self.sphere_offsets[r]..self.sphere_offsets[r + 1]]
    }

    /// Count of elements within radius `r`.
    pub fn count_up_to(&self, r: usize) -> usize {
        self.sphere_offsets[r.min(self.radius()) + 1]
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Word length of the element stored at `i`.
    pub fn length_of(&self, i: usize) -> usize {
        self.sphere_offsets.partition_point(|&o| o <= i) - 1
    }

    pub fn find(&self, g: &Element) -> Result<Option<usize>> {
        self.index.find(g)
    }

    pub fn index(&self) -> &ElementIndex {
        &self.index
    }
}

/// All distinct elements of word length at most `radius`.
pub fn ball(group: &Group, radius: usize) -> Result<Vec<Element>> {
    Ok(Ball::with_radius(group, radius)?.elements().to_vec())
}
