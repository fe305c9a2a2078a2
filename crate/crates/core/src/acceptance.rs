//! The acceptance suite: twelve end-to-end criteria with runtime budgets.

use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::braid::{
    braid_equal, cone_word_to_braid, dd_cone_rewrite, dd_sign, dehornoy_sign, BraidSign, ConeSpec,
};
use crate::error::Result;
use crate::groups::{ball, BraidWord, Element, Group};
use crate::orders::{klein_orders, Order, Sign, Subgroup};
use crate::orderspace::{
    conjugate_convergence, conjugate_convergence_to, conradian_soul_braid, isolated_probe,
    positive_word_check, restrict_to_ball, BraidOrdering, ExtensionSearch, PositiveWord,
    ProbeOptions, ProbeOutcome, DEFAULT_SOUL_RADIUS,
};
use crate::quadratic::QuadraticNumber;
use crate::realization::{detect_crossing, holder_embedding, Realization, DEFAULT_EXPONENT_BOUND};

/// Seed of every random sample drawn by the suite.
pub const SEED: u64 = 0x6f72_646b_6974;

pub struct Criterion {
    pub id: u32,
    /// Short tag matched by [`run`]'s filter.
    pub tag: &'static str,
    pub title: &'static str,
    pub budget: Duration,
    check: fn() -> Result<Check>,
}

/// Outcome of a criterion body before timing is applied.
struct Check {
    ok: bool,
    detail: String,
}

impl Check {
    fn new(ok: bool, detail: impl Into<String>) -> Check {
        Check {
            ok,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub tag: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub budget_seconds: f64,
}

impl std::fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "criterion {:>2} [{}] {}: {} ({}; {:.2}s of {:.0}s)",
            self.id,
            self.tag,
            self.title,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail,
            self.seconds,
            self.budget_seconds
        )
    }
}

impl Criterion {
    pub fn run(&self) -> CriterionReport {
        let start = Instant::now();
        let out = (self.check)();
        let elapsed = start.elapsed();
        let (ok, detail) = match out {
            Ok(c) => (c.ok, c.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let within = elapsed <= self.budget;
        CriterionReport {
            id: self.id,
            tag: self.tag,
            title: self.title,
            passed: ok && within,
            detail: if within {
                detail
            } else {
                format!("{detail}; over the runtime budget")
            },
            seconds: elapsed.as_secs_f64(),
            budget_seconds: self.budget.as_secs_f64(),
        }
    }
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            tag: "braid-identities",
            title: "braid relations and cone identities",
            budget: secs(10),
            check: braid_identities,
        },
        Criterion {
            id: 2,
            tag: "dehornoy-witness",
            title: "a negative positive-word in B3",
            budget: secs(1),
            check: dehornoy_witness,
        },
        Criterion {
            id: 3,
            tag: "trichotomy",
            title: "sign trichotomy and invariance on random braids",
            budget: secs(120),
            check: trichotomy,
        },
        Criterion {
            id: 4,
            tag: "dd-cone",
            title: "DD-positive braids rewrite into the cone",
            budget: secs(300),
            check: dd_cone,
        },
        Criterion {
            id: 5,
            tag: "klein-count",
            title: "four consistent assignments on the Klein group",
            budget: secs(60),
            check: klein_count,
        },
        Criterion {
            id: 6,
            tag: "slope-probe",
            title: "slope orderings of Z^2 are not isolated",
            budget: secs(120),
            check: slope_probe,
        },
        Criterion {
            id: 7,
            tag: "dd-isolation",
            title: "no alternative near the DD ordering of B3",
            budget: secs(600),
            check: dd_isolation,
        },
        Criterion {
            id: 8,
            tag: "realization",
            title: "dynamical realizations recover their source",
            budget: secs(300),
            check: realization_round_trip,
        },
        Criterion {
            id: 9,
            tag: "holder",
            title: "power brackets converge to sqrt2",
            budget: secs(60),
            check: holder,
        },
        Criterion {
            id: 10,
            tag: "crossing",
            title: "crossings separate Dehornoy from bi-invariant orders",
            budget: secs(300),
            check: crossing,
        },
        Criterion {
            id: 11,
            tag: "conjugates",
            title: "conjugates of Dehornoy's ordering accumulate on it",
            budget: secs(1800),
            check: conjugates,
        },
        Criterion {
            id: 12,
            tag: "soul",
            title: "Conradian souls and positive words",
            budget: secs(600),
            check: soul,
        },
    ]
}

/// Runs the criteria whose tag or number contains `filter`.
pub fn run(filter: Option<&str>) -> Vec<CriterionReport> {
    criteria()
        .iter()
        .filter(|c| filter.is_none_or(|f| c.tag.contains(f) || c.id.to_string() == f))
        .map(Criterion::run)
        .collect()
}

fn word(n: usize, s: &str) -> Result<BraidWord> {
    BraidWord::parse(n, s)
}

fn braid_identities() -> Result<Check> {
    let mut checked = 0;
    for n in 3..=5 {
        for i in 1..n {
            for j in i + 1..n {
                let (lhs, rhs) = if j == i + 1 {
                    (format!("s{i} s{j} s{i}"), format!("s{j} s{i} s{j}"))
                } else {
                    (format!("s{i} s{j}"), format!("s{j} s{i}"))
                };
                if !braid_equal(&word(n, &lhs)?, &word(n, &rhs)?)? {
                    return Ok(Check::new(
                        false,
                        format!("relation {lhs} = {rhs} fails in B{n}"),
                    ));
                }
                checked += 1;
            }
        }
        let cone = ConeSpec::new(n)?;
        let w = cone.alternating_word();
        let u1 = cone.u(1);
        let u2 = cone.u(2);
        let lhs = w.concat(&u1.pow(n as i64 - 1)).concat(&w);
        if !braid_equal(&lhs, u1)? {
            return Ok(Check::new(
                false,
                format!("W u1^(n-1) W = u1 fails in B{n}"),
            ));
        }
        if !braid_equal(&w.pow(2), &u2.pow(n as i64 - 1))? {
            return Ok(Check::new(false, format!("W^2 = u2^(n-1) fails in B{n}")));
        }
        checked += 2;
    }
    let cone = ConeSpec::new(3)?;
    let (u1, u2) = (cone.u(1), cone.u(2));
    if !braid_equal(&word(3, "s1")?, &u1.concat(u2))? {
        return Ok(Check::new(false, "s1 = u1 u2 fails"));
    }
    if !braid_equal(&u2.concat(&u1.pow(2)).concat(u2), u1)? {
        return Ok(Check::new(false, "u2 u1^2 u2 = u1 fails"));
    }
    Ok(Check::new(true, format!("{} identities", checked + 2)))
}

fn dehornoy_witness() -> Result<Check> {
    let target = word(3, "s1^-1 s2^4")?;
    let sign = dehornoy_sign(&target)?.value;
    let u = word(3, "s1 s2")?;
    let v = word(3, "s2")?;
    let w = u
        .inverse()
        .concat(&v.pow(-2))
        .concat(&u.pow(2))
        .concat(&v.pow(3));
    let equal = braid_equal(&w, &target)?;
    Ok(Check::new(
        sign == BraidSign::Negative && equal,
        format!("sign {}, equal {equal}", sign.symbol()),
    ))
}

fn random_relator<R: Rng>(rng: &mut R, n: usize) -> Vec<i8> {
    let i = rng.gen_range(1..n) as i8;
    let j = loop {
        let j = rng.gen_range(1..n) as i8;
        if j != i {
            break j;
        }
    };
    let mut r = if (i - j).abs() == 1 {
        vec![i, j, i, -j, -i, -j]
    } else {
        vec![i, j, -i, -j]
    };
    if rng.gen_bool(0.5) {
        r = r.iter().rev().map(|x| -x).collect();
    }
    let k = rng.gen_range(0..r.len());
    r.rotate_left(k);
    r
}

fn trichotomy() -> Result<Check> {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut words = 0;
    for n in 3..=5 {
        for _ in 0..1000 {
            let len = rng.gen_range(0..=20);
            let letters: Vec<i8> = (0..len)
                .map(|_| {
                    let k = rng.gen_range(1..n) as i8;
                    if rng.gen_bool(0.5) {
                        k
                    } else {
                        -k
                    }
                })
                .collect();
            let w = BraidWord::new(n, letters.clone())?;
            let s = dehornoy_sign(&w)?.value;
            let si = dehornoy_sign(&w.inverse())?.value;
            if si != s.flip() {
                return Ok(Check::new(false, format!("antisymmetry fails for {w}")));
            }
            if (s == BraidSign::Identity) != crate::braid::is_trivial(&w)? {
                return Ok(Check::new(
                    false,
                    format!("identity class mismatch for {w}"),
                ));
            }
            for _ in 0..10 {
                let mut l = letters.clone();
                let at = rng.gen_range(0..=l.len());
                let r = random_relator(&mut rng, n);
                l.splice(at..at, r);
                let v = BraidWord::new(n, l)?;
                if dehornoy_sign(&v)?.value != s {
                    return Ok(Check::new(
                        false,
                        format!("relator insertion changes the sign of {w}"),
                    ));
                }
            }
            words += 1;
        }
    }
    Ok(Check::new(true, format!("{words} words, 0 failures")))
}

fn dd_cone() -> Result<Check> {
    let group = Group::braid(3);
    let mut positives = 0;
    for g in ball(&group, 6)? {
        let w = g.as_braid().expect("braid element");
        if dd_sign(w)?.value != BraidSign::Positive {
            continue;
        }
        let u = dd_cone_rewrite(w)?;
        if !braid_equal(&cone_word_to_braid(&u), w)? {
            return Ok(Check::new(false, format!("rewrite of {w} is wrong")));
        }
        positives += 1;
    }
    Ok(Check::new(
        true,
        format!("{positives} positive elements rewritten"),
    ))
}

fn klein_count() -> Result<Check> {
    let mut counts = Vec::new();
    for r in [4, 5] {
        let v = ExtensionSearch::new(&Group::Klein, r).depth(6).run()?;
        let tables = klein_orders()
            .iter()
            .map(|o| restrict_to_ball(o, r))
            .collect::<Result<Vec<_>>>()?;
        if !v.assignments.iter().all(|a| tables.contains(a)) {
            return Ok(Check::new(
                false,
                format!("radius {r}: an assignment is not a Klein ordering"),
            ));
        }
        for c in &v.certificates {
            if !c.replay(&Group::Klein)? {
                return Ok(Check::new(
                    false,
                    format!("radius {r}: a certificate fails to replay"),
                ));
            }
        }
        counts.push(v.assignments.len());
    }
    Ok(Check::new(
        counts == [4, 4],
        format!("radius 4: {}, radius 5: {}", counts[0], counts[1]),
    ))
}

/// Twenty slope vectors with entries in Q(sqrt2).
fn sample_slopes() -> Result<Vec<Order>> {
    let mut out = Vec::new();
    for k in 0..20i64 {
        let a = format!("{}+{}sqrt2", k % 5 - 2, (k % 3) + 1);
        let b = format!("{}/{}-{}sqrt2", 7 - k, (k % 4) + 1, k % 2);
        let (a, b): (QuadraticNumber, QuadraticNumber) = (a.parse()?, b.parse()?);
        out.push(Order::zn(
            if k % 2 == 0 { vec![a, b] } else { vec![b, a] },
            &[],
        )?);
    }
    Ok(out)
}

fn slope_probe() -> Result<Check> {
    let opts = ProbeOptions::default();
    let orders = sample_slopes()?;
    let mut realized = 0;
    for o in &orders {
        if let ProbeOutcome::Realized {
            alternative,
            discriminator,
            ..
        } = isolated_probe(o, 4, &opts)?
        {
            let same = restrict_to_ball(&alternative, 4)? == restrict_to_ball(o, 4)?;
            let differs = alternative.sign(&discriminator)? != o.sign(&discriminator)?;
            if same && differs {
                realized += 1;
            }
        }
    }
    Ok(Check::new(
        realized == orders.len(),
        format!("{realized}/{} realized alternatives", orders.len()),
    ))
}

fn dd_isolation() -> Result<Check> {
    let dd = Order::dd(3)?;
    let opts = ProbeOptions {
        depth: 6,
        ..ProbeOptions::default()
    };
    let probe = isolated_probe(&dd, 3, &opts)?;
    let conv = conjugate_convergence(&dd, 4, 2)?;
    let agreeing = conv
        .approximants
        .iter()
        .filter(|a| a.agreement >= 2)
        .count();
    Ok(Check::new(
        matches!(probe, ProbeOutcome::NoneWithinBudget { .. }) && agreeing == 0,
        format!(
            "probe {}, {agreeing} distinct conjugates agreeing at radius 2",
            probe.label()
        ),
    ))
}

fn realization_round_trip() -> Result<Check> {
    let specs = [
        "zn:lex:2",
        "zn:slope:1,sqrt2",
        "dehornoy:b3",
        "dd:b3",
        "magnus:f2",
        "klein:++",
    ];
    for s in specs {
        let o: Order = s.parse()?;
        let r = Realization::build(&o, 200)?;
        if let Some(why) = r.check_invariants()? {
            return Ok(Check::new(false, format!("{s}: {why}")));
        }
        for g in r.enumeration() {
            if r.recovered_sign(g)? != o.sign_or_identity(g)? {
                return Ok(Check::new(
                    false,
                    format!("{s}: recovered sign differs at {g}"),
                ));
            }
        }
    }
    Ok(Check::new(
        true,
        format!("{} oracles, 200 elements each", specs.len()),
    ))
}

fn holder() -> Result<Check> {
    let o: Order = "zn:slope:1,sqrt2".parse()?;
    let group = o.group();
    let f = group.parse_element("(1,0)")?;
    let g = group.parse_element("(0,1)")?;
    let p_max = 10_000;
    let series = holder_embedding(&o, &f, &g, p_max, DEFAULT_EXPONENT_BOUND)?;
    let sqrt2 = QuadraticNumber::sqrt(2)?;
    let one = QuadraticNumber::one();
    for (k, &q) in series.q.iter().enumerate() {
        let p = k as i64 + 1;
        let gp = group.pow(&g, p)?;
        let lo = group.pow(&f, q)?;
        let hi = group.pow(&f, q + 1)?;
        let bracket = o.compare(&lo, &gp)?.is_le() && o.compare(&gp, &hi)?.is_lt();
        // |q/p - sqrt2| <= 1/p  <=>  |q - p sqrt2| <= 1
        let diff =
            &QuadraticNumber::from_integer(q) - &sqrt2.scale(&BigRational::from_integer(p.into()));
        let close = (if diff.is_negative() { -diff } else { diff }) <= one;
        if !(bracket && close) {
            return Ok(Check::new(false, format!("p = {p}, q = {q}")));
        }
    }
    Ok(Check::new(
        true,
        format!("P = {p_max}, q(P)/P = {}/{p_max}", series.q[p_max - 1]),
    ))
}

/// Pair budget shared by the three crossing searches.
const CROSSING_BUDGET: usize = 100_000;

fn crossing() -> Result<Check> {
    let d = Realization::build(&Order::dehornoy(3)?, 300)?;
    let found = detect_crossing(&d, CROSSING_BUDGET)?;
    let lex = detect_crossing(&Realization::build(&Order::lex(2)?, 300)?, CROSSING_BUDGET)?;
    let magnus = detect_crossing(
        &Realization::build(&Order::magnus(2)?, 300)?,
        CROSSING_BUDGET,
    )?;
    let ok = found.is_some() && lex.is_none() && magnus.is_none();
    let detail = match &found {
        Some(w) => format!(
            "Dehornoy witness ({}, {}); none for lex and Magnus",
            w.f, w.g
        ),
        None => "no Dehornoy witness".into(),
    };
    Ok(Check::new(ok, detail))
}

fn conjugates() -> Result<Check> {
    let d = Order::dehornoy(3)?;
    let r = conjugate_convergence(&d, 8, 4)?;
    let radii: Vec<usize> = r.approximants.iter().map(|a| a.agreement).collect();
    let increasing =
        radii.windows(2).all(|w| w[0] < w[1]) && radii.iter().enumerate().all(|(m, &n)| n > m);
    let ok_d = r.reached_target() && increasing && r.verify()?;
    let dd = Order::dd(3)?;
    let s = conjugate_convergence_to(&dd, &d, 8, 2)?;
    let ok_dd = s.reached_target() && s.verify()?;
    Ok(Check::new(
        ok_d && ok_dd,
        format!(
            "Dehornoy radii {radii:?}; DD conjugates reach radii {:?}",
            s.approximants
                .iter()
                .map(|a| a.agreement)
                .collect::<Vec<_>>()
        ),
    ))
}

fn random_positive<R: Rng>(rng: &mut R, o: &Order, max_len: usize) -> Result<Element> {
    let group = o.group();
    loop {
        let len = rng.gen_range(1..=max_len);
        let g = group.random_word(rng, len);
        match o.sign_or_identity(&g)? {
            Some(Sign::Positive) => return Ok(g),
            Some(Sign::Negative) => return Ok(group.invert(&g)),
            None => {}
        }
    }
}

fn random_admissible<R: Rng>(rng: &mut R, o: &Order) -> Result<PositiveWord> {
    let f = random_positive(rng, o, 3)?;
    let g = random_positive(rng, o, 3)?;
    loop {
        let k = rng.gen_range(1..=3);
        let exponents: Vec<(i64, i64)> = (0..k)
            .map(|_| (rng.gen_range(-2..=2), rng.gen_range(-2..=2)))
            .collect();
        let (sm, sn) = exponents
            .iter()
            .fold((0, 0), |(a, b), &(m, n)| (a + m, b + n));
        if sm > 0 && sn > 0 {
            return Ok(PositiveWord {
                f: f.clone(),
                g: g.clone(),
                exponents,
            });
        }
    }
}

fn soul() -> Result<Check> {
    let mut souls = Vec::new();
    for n in [3, 4] {
        let s = conradian_soul_braid(n, BraidOrdering::Dehornoy, DEFAULT_SOUL_RADIUS)?;
        if s.soul != Subgroup::Parabolic(n - 1) || !s.verify()? {
            return Ok(Check::new(false, format!("B{n}: soul {}", s.soul)));
        }
        souls.push(format!("B{n}: <s{}>", n - 1));
    }
    let mut rng = StdRng::seed_from_u64(SEED);
    for o in [Order::lex(2)?, Order::magnus(2)?] {
        for _ in 0..1000 {
            let w = random_admissible(&mut rng, &o)?;
            if positive_word_check(&o, &w)? != Sign::Positive {
                return Ok(Check::new(false, format!("{o}: negative word {w:?}")));
            }
        }
    }
    Ok(Check::new(
        true,
        format!("{}; 2000 positive words, 0 failures", souls.join(", ")),
    ))
}
