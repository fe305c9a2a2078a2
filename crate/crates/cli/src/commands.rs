use std::path::Path;

use ordkit::braid::{
    braid_equal, cone_word_to_braid, dd_cone_rewrite, dd_sign, dehornoy_sign,
    set_corrupt_reduction, DehornoySign,
};
use ordkit::groups::{Ball, BraidWord, Element, Group};
use ordkit::orders::{Order, Sign};
use ordkit::orderspace::{
    conjugate_convergence_to, conrad_check, conradian_soul_braid, isolated_probe, order_distance,
    right_recurrence_check, BraidOrdering, ExtensionSearch, Mode, ProbeOptions, DEFAULT_DEPTH,
    DEFAULT_NODE_BUDGET, DEFAULT_SOUL_RADIUS,
};
use ordkit::realization::{
    detect_crossing, holder_embedding, recheck_crossing, Realization, RealizationTable,
    DEFAULT_EXPONENT_BOUND,
};
use serde_json::json;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::{Report, Table};
use crate::{
    BraidCommand, Command, CrossingsArgs, HolderArgs, OrderCommand, RealizeArgs, SpaceCommand,
};

pub fn dispatch(command: Command, config: &RunConfig) -> Result<Report, CliError> {
    match command {
        Command::Braid(c) => braid(c),
        Command::Order(c) => order(c, config),
        Command::Realize(a) => realize(a, config),
        Command::Crossings(a) => crossings(a, config),
        Command::Holder(a) => holder(a, config),
        Command::Space(c) => space(c, config),
        Command::Selftest(a) => Ok(selftest(a.filter.as_deref(), a.corrupt_reduction)),
    }
}

fn parse_order(spec: &str) -> Result<Order, CliError> {
    Ok(spec.parse()?)
}

fn parse_in(order: &Order, word: &str) -> Result<Element, CliError> {
    Ok(order.group().parse_element(word)?)
}

fn sign_name(s: Option<Sign>) -> &'static str {
    s.map_or("id", Sign::symbol)
}

fn sign_report(
    command: &str,
    order: &str,
    element: &BraidWord,
    s: &DehornoySign,
) -> Result<Report, CliError> {
    Report::new(command)
        .field("order", order)?
        .field("element", element.to_string())?
        .field("sign", s.value.symbol())?
        .field("witness_index", s.witness_index)?
        .field("reduced", s.reduced.to_string())
        .map(|r| r.verdict(s.value.symbol()))
}

fn braid(c: BraidCommand) -> Result<Report, CliError> {
    match c {
        BraidCommand::Sign { order, element } => {
            let o = parse_order(&order)?;
            let w = BraidWord::parse(braid_strands(&o)?, &element)?;
            let s = match o.family() {
                "dehornoy" => dehornoy_sign(&w)?,
                "dd" => dd_sign(&w)?,
                _ => {
                    return Err(CliError::Usage(format!(
                        "braid sign needs a dehornoy or dd ordering, got {order}"
                    )))
                }
            };
            sign_report("braid sign", &o.to_string(), &w, &s)
        }
        BraidCommand::Equal { strands, a, b } => {
            let group: Group = format!("b{strands}").parse()?;
            let (wa, wb) = (
                BraidWord::parse(strands, &a)?,
                BraidWord::parse(strands, &b)?,
            );
            let eq = braid_equal(&wa, &wb)?;
            Ok(Report::new("braid equal")
                .field("group", group.to_string())?
                .field("a", wa.to_string())?
                .field("b", wb.to_string())?
                .field("equal", eq)?
                .verdict(eq.to_string()))
        }
        BraidCommand::Rewrite { element } => {
            let w = BraidWord::parse(3, &element)?;
            let s = dd_sign(&w)?;
            let u = dd_cone_rewrite(&w)?;
            let verified = braid_equal(&cone_word_to_braid(&u), &w)?;
            let text = if u.is_empty() {
                "1".to_string()
            } else {
                u.iter()
                    .map(|k| format!("u{k}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let mut r = sign_report("braid rewrite", "dd:b3", &w, &s)?
                .field("cone_word", text)?
                .field("verified", verified)?;
            r.failed = !verified;
            Ok(r)
        }
    }
}

fn braid_strands(o: &Order) -> Result<usize, CliError> {
    match o.group() {
        Group::Braid { strands } => Ok(*strands),
        g => Err(CliError::Usage(format!("expected a braid group, got {g}"))),
    }
}

fn default_radius(group: &Group) -> usize {
    match group {
        Group::Braid { .. } | Group::Free { .. } => 3,
        _ => 4,
    }
}

fn order(c: OrderCommand, config: &RunConfig) -> Result<Report, CliError> {
    match c {
        OrderCommand::Sign { order, element } => {
            let o = parse_order(&order)?;
            let g = parse_in(&o, &element)?;
            let s = sign_name(o.sign_or_identity(&g)?);
            Ok(Report::new("order sign")
                .field("order", o.to_string())?
                .field("element", o.group().format(&g))?
                .field("sign", s)?
                .verdict(s))
        }
        OrderCommand::Compare { order, a, b } => {
            let o = parse_order(&order)?;
            let (ga, gb) = (parse_in(&o, &a)?, parse_in(&o, &b)?);
            let symbol = match o.compare(&ga, &gb)? {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            };
            Ok(Report::new("order compare")
                .field("order", o.to_string())?
                .field("a", o.group().format(&ga))?
                .field("b", o.group().format(&gb))?
                .field("comparison", symbol)?
                .verdict(symbol))
        }
        OrderCommand::Conrad { order, radius } => {
            let o = parse_order(&order)?;
            let radius = config.pick(radius, "radius", default_radius(o.group()))?;
            let ball = Ball::with_radius(o.group(), radius)?;
            let w = conrad_check(&o, ball.elements())?;
            let verdict = if w.is_some() { "witness" } else { "pass" };
            Ok(Report::new("order conrad")
                .field("order", o.to_string())?
                .field("radius", radius)?
                .field("result", verdict)?
                .field("witness", &w)?
                .verdict(verdict))
        }
        OrderCommand::Recurrence {
            order,
            radius,
            max_power,
        } => {
            let o = parse_order(&order)?;
            let radius = config.pick(radius, "radius", default_radius(o.group()))?;
            let max_power = config.pick(max_power, "max-power", 20)?;
            let ball = Ball::with_radius(o.group(), radius)?;
            let s = right_recurrence_check(&o, ball.elements(), max_power)?;
            let verdict = if s.is_some() { "suspect" } else { "pass" };
            let group = o.group();
            let suspect = s.map(|s| json!({"f": group.format(&s.f), "g": group.format(&s.g), "max_power": s.max_power}));
            Ok(Report::new("order recurrence")
                .field("order", o.to_string())?
                .field("radius", radius)?
                .field("max_power", max_power)?
                .field("result", verdict)?
                .field("suspect", suspect)?
                .verdict(verdict))
        }
    }
}

fn realize(a: RealizeArgs, config: &RunConfig) -> Result<Report, CliError> {
    let o = parse_order(&a.order)?;
    let count = config.pick(a.count, "count", 100)?;
    let r = Realization::build(&o, count)?;
    let table = r.to_table();
    let mut csv = Table::new(["index", "element", "t"]);
    for (i, g) in table.enumeration.iter().enumerate() {
        csv.push([i.to_string(), g.clone(), table.t[g].clone()]);
    }
    let report = Report::new("realize").table(csv);
    match &a.out {
        Some(path) => {
            std::fs::write(path, serde_json::to_string_pretty(&table)? + "\n")?;
            report
                .field("order", &table.order)?
                .field("count", table.enumeration.len())?
                .field("out", path.display().to_string())
        }
        None => report.merge(&table),
    }
}

fn read_table(path: &Path) -> Result<RealizationTable, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("bad table {}: {e}", path.display())))
}

fn crossings(a: CrossingsArgs, config: &RunConfig) -> Result<Report, CliError> {
    let table = read_table(&a.table)?;
    let r = Realization::from_table(&table)?;
    let budget = config.pick(a.budget, "budget", 1_000_000)?;
    let found = detect_crossing(&r, budget)?;
    let group = r.group();
    let report = Report::new("crossings")
        .field("order", &table.order)?
        .field("count", r.len())?;
    match found {
        Some(w) => {
            let rechecked = recheck_crossing(&r, &w)?;
            let mut report = report
                .field("found", true)?
                .field("kind", w.kind)?
                .field("f", group.format(&w.f))?
                .field("g", group.format(&w.g))?
                .field("a", w.a.to_string())?
                .field("b", w.b.to_string())?
                .field("rechecked", rechecked)?
                .verdict("found");
            report.failed = !rechecked;
            Ok(report)
        }
        None => Ok(report.field("found", false)?.verdict("none")),
    }
}

fn holder(a: HolderArgs, config: &RunConfig) -> Result<Report, CliError> {
    let o = parse_order(&a.order)?;
    let (f, g) = (parse_in(&o, &a.f)?, parse_in(&o, &a.g)?);
    let pmax = config.pick(a.pmax, "pmax", 100)?;
    let bound = config.pick(a.bound, "bound", DEFAULT_EXPONENT_BOUND)?;
    let series = holder_embedding(&o, &f, &g, pmax, bound)?;
    let mut csv = Table::new(["p", "q", "ratio"]);
    for (i, q) in series.q.iter().enumerate() {
        let p = i + 1;
        csv.push([p.to_string(), q.to_string(), series.ratio(p).to_string()]);
    }
    Report::new("holder")
        .field("order", o.to_string())?
        .field("f", o.group().format(&f))?
        .field("g", o.group().format(&g))?
        .field("q", &series.q)?
        .field("ratio", series.ratio(pmax).to_string())?
        .field("width", series.width().to_string())
        .map(|r| r.table(csv))
}

fn parse_fix(group: &Group, s: &str) -> Result<(Element, Sign), CliError> {
    let (word, sign) = s
        .rsplit_once('=')
        .ok_or_else(|| CliError::Usage(format!("expected element=+ or element=-, got {s:?}")))?;
    let sign = match sign.trim() {
        "+" => Sign::Positive,
        "-" => Sign::Negative,
        other => return Err(CliError::Usage(format!("bad sign {other:?}"))),
    };
    Ok((group.parse_element(word)?, sign))
}

fn space(c: SpaceCommand, config: &RunConfig) -> Result<Report, CliError> {
    match c {
        SpaceCommand::Distance { a, b, max_radius } => {
            let (oa, ob) = (parse_order(&a)?, parse_order(&b)?);
            let max_radius = config.pick(max_radius, "max-radius", 5)?;
            let d = order_distance(&oa, &ob, max_radius)?;
            Ok(Report::new("space distance")
                .field("a", oa.to_string())?
                .field("b", ob.to_string())?
                .field("max_radius", max_radius)?
                .field("n_prime", d.n_prime)?
                .field("bounded", d.bounded)?
                .field("distance", d.to_string())?
                .verdict(d.n_prime.to_string()))
        }
        SpaceCommand::ExtendCount {
            group,
            radius,
            mode,
            depth,
            budget,
            region_radius,
            fix,
            list,
        } => {
            let group: Group = group.parse()?;
            let mode: Mode = match mode {
                Some(m) => m.parse()?,
                None => config
                    .get("mode")?
                    .map_or(Ok(Mode::Left), |m: String| m.parse())?,
            };
            let mut search = ExtensionSearch::new(&group, radius)
                .mode(mode)
                .depth(config.pick(depth, "depth", DEFAULT_DEPTH)?)
                .budget(config.pick(budget, "budget", DEFAULT_NODE_BUDGET)?);
            if let Some(r) = region_radius.or(config.get("region-radius")?) {
                search = search.region_radius(r);
            }
            for f in &fix {
                let (g, s) = parse_fix(&group, f)?;
                search = search.fix(g, s);
            }
            let v = search.run()?;
            let mut r = Report::new("space extend-count")
                .field("group", group.to_string())?
                .field("radius", radius)?
                .field("mode", mode)?
                .field("status", v.status)?
                .field("count", v.assignments.len())?
                .field("eliminated", v.eliminated)?
                .field("nodes", v.nodes)?
                .field("region_radius", v.region_radius)?
                .field("region_size", v.region_size)?
                .field("certificates", &v.certificates)?;
            if list {
                r = r.field("assignments", &v.assignments)?;
            }
            let verdict = serde_json::to_value(v.status)?;
            Ok(r.verdict(verdict.as_str().unwrap_or_default()))
        }
        SpaceCommand::Probe {
            order,
            radius,
            depth,
            budget,
            region_radius,
        } => {
            let o = parse_order(&order)?;
            let defaults = ProbeOptions::default();
            let opts = ProbeOptions {
                depth: config.pick(depth, "depth", defaults.depth)?,
                node_budget: config.pick(budget, "budget", defaults.node_budget)?,
                region_radius: region_radius.or(config.get("region-radius")?),
                ..defaults
            };
            let out = isolated_probe(&o, radius, &opts)?;
            Report::new("space probe")
                .field("order", o.to_string())?
                .field("radius", radius)?
                .field("depth", opts.depth)?
                .merge(&out)
                .map(|r| r.verdict(out.label()))
        }
        SpaceCommand::Converge {
            order,
            target,
            conjugator_radius,
            target_radius,
        } => {
            let o = parse_order(&order)?;
            let t = match &target {
                Some(t) => parse_order(t)?,
                None => o.clone(),
            };
            let report = conjugate_convergence_to(&o, &t, conjugator_radius, target_radius)?;
            let verified = report.verify()?;
            let group = o.group();
            let mut csv = Table::new(["m", "agreement", "conjugator", "discriminator"]);
            for (m, a) in report.approximants.iter().enumerate() {
                csv.push([
                    (m + 1).to_string(),
                    a.agreement.to_string(),
                    group.format(&a.conjugator),
                    group.format(&a.discriminator),
                ]);
            }
            let verdict = if report.fixed_point {
                "fixed-point"
            } else if report.reached_target() {
                "reached"
            } else {
                "short"
            };
            let undistinguished: Vec<String> = report
                .undistinguished
                .iter()
                .map(|g| group.format(g))
                .collect();
            let mut r = Report::new("space converge")
                .merge(&report)?
                .field("undistinguished", undistinguished)?
                .field("verified", verified)?
                .table(csv)
                .verdict(verdict);
            r.failed = !verified;
            Ok(r)
        }
        SpaceCommand::Soul {
            strands,
            ordering,
            radius,
        } => {
            let which: BraidOrdering = ordering.parse()?;
            let radius = config.pick(radius, "radius", DEFAULT_SOUL_RADIUS)?;
            let report = conradian_soul_braid(strands, which, radius)?;
            let verified = report.verify()?;
            let soul = report.soul.to_string();
            let mut r = Report::new("space soul")
                .merge(&report)?
                .field("verified", verified)?
                .verdict(soul);
            r.failed = !verified;
            Ok(r)
        }
    }
}

fn selftest(filter: Option<&str>, corrupt: bool) -> Report {
    set_corrupt_reduction(corrupt);
    let results = ordkit::acceptance::run(filter);
    set_corrupt_reduction(false);
    let passed = results.iter().filter(|r| r.passed).count();
    let failed = results.len() - passed;
    let mut lines: Vec<String> = results
        .iter()
        .map(|r| {
            let status = if r.passed { "PASS" } else { "FAIL" };
            format!(
                "criterion {:>2} [{}] {}: {} ({})",
                r.id, r.tag, r.title, status, r.detail
            )
        })
        .collect();
    lines.push(format!("selftest: {passed} passed, {failed} failed"));
    let mut csv = Table::new(["id", "tag", "passed", "detail"]);
    for r in &results {
        csv.push([
            r.id.to_string(),
            r.tag.to_string(),
            r.passed.to_string(),
            r.detail.clone(),
        ]);
    }
    let verdict = if failed == 0 { "pass" } else { "fail" };
    let results: Vec<_> = results
        .iter()
        .map(|r| json!({"id": r.id, "tag": r.tag, "title": r.title, "passed": r.passed, "detail": r.detail}))
        .collect();
    let mut report = Report::new("selftest")
        .field("results", results)
        .and_then(|r| r.field("passed", passed))
        .and_then(|r| r.field("failed", failed))
        .expect("selftest fields serialize")
        .table(csv)
        .lines(lines)
        .verdict(verdict);
    report.failed = failed > 0;
    report
}
