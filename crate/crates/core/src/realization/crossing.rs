//! Crossed elements and transversal position at grid resolution.
//!
//! Grid points are never fixed by a nontrivial element, since the action on
//! the enumeration is free. Fixed points of the interpolated maps therefore
//! sit strictly between grid points, where `f(x) - x` changes sign along an
//! affine piece; they are computed exactly.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{affine_root, Realization};
use crate::error::{Error, Result};
use crate::groups::Element;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossingKind {
    /// `f` fixes `a` and `b` and nothing in between; `g` moves `a` or `b`
    /// into `]a, b[`.
    Crossed,
    /// `f(a) = a`, `f(x) < x` on `]a, b]`, `g(b) = b`, `g(x) > x` on `[a, b[`.
    Transversal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingWitness {
    pub f: Element,
    pub g: Element,
    pub a: BigRational,
    pub b: BigRational,
    pub kind: CrossingKind,
}

/// The interpolated map of one element: its known grid points and images,
/// and its fixed points in increasing order.
struct PlMap {
    xs: Vec<BigRational>,
    ys: Vec<BigRational>,
    /// `(point, true)` when the map crosses the diagonal from above to
    /// below, i.e. `h(x) > x` just left of the point and `h(x) < x` just
    /// right of it.
    roots: Vec<(BigRational, bool)>,
}

impl PlMap {
    fn new(r: &Realization, grid: &[BigRational], g: &Element) -> Result<PlMap> {
        let (xs, ys): (Vec<_>, Vec<_>) = r
            .trace(g)?
            .into_iter()
            .zip(grid)
            .filter_map(|(y, x)| y.map(|y| (x.clone(), y)))
            .unzip();
        let mut roots = Vec::new();
        for k in 1..xs.len() {
            let d0 = &ys[k - 1] - &xs[k - 1];
            let d1 = &ys[k] - &xs[k];
            if let Some(c) = affine_root(&xs[k - 1], &xs[k], &d0, &d1) {
                roots.push((c, d0.is_positive()));
            }
        }
        Ok(PlMap { xs, ys, roots })
    }

    fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let n = self.xs.len();
        if n == 0 {
            return None;
        }
        let pos = self.xs.partition_point(|p| p < x);
        if pos < n && &self.xs[pos] == x {
            return Some(self.ys[pos].clone());
        }
        Some(if pos == 0 {
            x + (&self.ys[0] - &self.xs[0])
        } else if pos == n {
            x + (&self.ys[n - 1] - &self.xs[n - 1])
        } else {
            let (x0, x1) = (&self.xs[pos - 1], &self.xs[pos]);
            let (y0, y1) = (&self.ys[pos - 1], &self.ys[pos]);
            y0 + (y1 - y0) * ((x - x0) / (x1 - x0))
        })
    }

    /// First fixed point strictly right of `x`.
    fn next_root(&self, x: &BigRational) -> Option<&(BigRational, bool)> {
        let i = self.roots.partition_point(|(c, _)| c <= x);
        self.roots.get(i)
    }

    fn moves_right_somewhere(&self) -> Option<usize> {
        (0..self.xs.len()).find(|&k| self.ys[k] > self.xs[k])
    }

    fn moves_left_somewhere(&self) -> Option<usize> {
        (0..self.xs.len()).find(|&k| self.ys[k] < self.xs[k])
    }
}

/// `f(a) = a` with `f` dropping below the diagonal at `a`, and `b` the first
/// fixed point of `g` right of `a`, reached from above, before `f` returns to
/// the diagonal.
fn transversal(f: &PlMap, g: &PlMap) -> Option<(BigRational, BigRational)> {
    for (i, (a, down)) in f.roots.iter().enumerate() {
        if !down {
            continue;
        }
        let Some((b, true)) = g.next_root(a) else {
            continue;
        };
        if g.roots.iter().any(|(c, _)| c == a) {
            continue;
        }
        let before_f_returns = f.roots.get(i + 1).is_none_or(|(c, _)| b < c);
        if before_f_returns {
            return Some((a.clone(), b.clone()));
        }
    }
    None
}

fn crossed(f: &PlMap, g: &PlMap) -> Option<(BigRational, BigRational)> {
    for w in f.roots.windows(2) {
        let (a, b) = (&w[0].0, &w[1].0);
        let inside = |y: Option<BigRational>| y.is_some_and(|y| a < &y && &y < b);
        if inside(g.eval(a)) || inside(g.eval(b)) {
            return Some((a.clone(), b.clone()));
        }
    }
    None
}

/// Scans pairs `(f, g)` of nontrivial prefix elements, in enumeration order,
/// for the transversal-position or crossed pattern of the interpolated maps.
///
/// At most `budget` ordered pairs are examined. Every returned witness
/// passes [`recheck_crossing`]; `None` only means the budget ran out.
pub fn detect_crossing(r: &Realization, budget: usize) -> Result<Option<CrossingWitness>> {
    let grid: Vec<BigRational> = r.grid().into_iter().cloned().collect();
    let group = r.group();
    let maps = r
        .enumeration()
        .iter()
        .map(|g| PlMap::new(r, &grid, g))
        .collect::<Result<Vec<_>>>()?;
    let mut examined = 0usize;
    let elements = r.enumeration();
    for i in 1..elements.len() {
        for j in 1..elements.len() {
            if i == j {
                continue;
            }
            if examined >= budget {
                return Ok(None);
            }
            examined += 1;
            let (f, g) = (&maps[i], &maps[j]);
            let found = transversal(f, g)
                .map(|(a, b)| (a, b, CrossingKind::Transversal))
                .or_else(|| crossed(f, g).map(|(a, b)| (a, b, CrossingKind::Crossed)));
            if let Some((a, b, kind)) = found {
                let w = CrossingWitness {
                    f: elements[i].clone(),
                    g: elements[j].clone(),
                    a,
                    b,
                    kind,
                };
                if !recheck_crossing(r, &w)? {
                    return Err(Error::Precondition(format!(
                        "crossing witness for {} and {} failed its re-check",
                        group.format(&w.f),
                        group.format(&w.g)
                    )));
                }
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Replays a witness through [`Realization::evaluate_action`].
///
/// The interpolated maps are affine between grid points, so a strict sign of
/// `h(x) - x` at the grid points inside `[a, b]` and at the endpoints
/// determines it on the whole interval.
pub fn recheck_crossing(r: &Realization, w: &CrossingWitness) -> Result<bool> {
    if w.a >= w.b {
        return Ok(false);
    }
    let interior: Vec<BigRational> = r
        .grid()
        .into_iter()
        .filter(|x| **x > w.a && **x < w.b)
        .cloned()
        .collect();
    // h(x) - x at a, at the interior breakpoints of h, and at b.
    let profile = |h: &Element| -> Result<Option<Vec<BigRational>>> {
        let mut out = Vec::with_capacity(interior.len() + 2);
        for x in std::iter::once(&w.a)
            .chain(&interior)
            .chain(std::iter::once(&w.b))
        {
            match r.evaluate_action(h, x) {
                Ok(y) => out.push(y - x),
                Err(Error::Domain(_)) if x != &w.a && x != &w.b => {}
                Err(e) => return Err(e),
            }
        }
        Ok(Some(out))
    };
    let (Some(df), Some(dg)) = (profile(&w.f)?, profile(&w.g)?) else {
        return Ok(false);
    };
    let (lf, lg) = (df.len() - 1, dg.len() - 1);
    match w.kind {
        CrossingKind::Transversal => Ok(df[0].is_zero()
            && df[1..].iter().all(Signed::is_negative)
            && dg[lg].is_zero()
            && dg[..lg].iter().all(Signed::is_positive)),
        CrossingKind::Crossed => {
            let inner = &df[1..lf];
            let same_sign = !inner.is_empty()
                && (inner.iter().all(Signed::is_positive) || inner.iter().all(Signed::is_negative));
            let inside = |x: &BigRational, d: &BigRational| {
                let y = x + d;
                y > w.a && y < w.b
            };
            Ok(df[0].is_zero()
                && df[lf].is_zero()
                && same_sign
                && (inside(&w.a, &dg[0]) || inside(&w.b, &dg[lg])))
        }
    }
}

/// An element moving one grid point right and another one left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostFreeWitness {
    pub g: Element,
    pub x: BigRational,
    pub y: BigRational,
}

/// Looks among the first `samples` nontrivial prefix elements for `g` and
/// grid points `x`, `y` with `g(x) > x` and `g(y) < y`.
pub fn check_almost_free(r: &Realization, samples: usize) -> Result<Option<AlmostFreeWitness>> {
    let grid: Vec<BigRational> = r.grid().into_iter().cloned().collect();
    for g in r.enumeration().iter().skip(1).take(samples) {
        let m = PlMap::new(r, &grid, g)?;
        if let (Some(i), Some(j)) = (m.moves_right_somewhere(), m.moves_left_somewhere()) {
            return Ok(Some(AlmostFreeWitness {
                g: g.clone(),
                x: m.xs[i].clone(),
                y: m.xs[j].clone(),
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::Order;

    #[test]
    fn abelian_realizations_have_no_crossings() {
        let o = Order::lex(2).unwrap();
        let r = Realization::build(&o, 60).unwrap();
        assert!(detect_crossing(&r, 100_000).unwrap().is_none());
        assert!(check_almost_free(&r, 60).unwrap().is_none());
    }

    #[test]
    fn dehornoy_realization_is_not_almost_free() {
        let o = Order::dehornoy(3).unwrap();
        let r = Realization::build(&o, 120).unwrap();
        let w = check_almost_free(&r, 120).unwrap().unwrap();
        assert!(r.evaluate_action(&w.g, &w.x).unwrap() > w.x);
        assert!(r.evaluate_action(&w.g, &w.y).unwrap() < w.y);
    }
}
