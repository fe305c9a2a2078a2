//! Text syntax for ordering oracles.
//!
//! ```text
//! spec     := base ('!' modifier)*  |  '(' spec ')'
//! base     := dehornoy:bN | dd:bN | zn:lex:N | zn:slope:Q,..[@i,..]
//!           | smirnov:Q | magnus:fK | klein:SS
//! modifier := reverse | conj=WORD | extend=MEMBER:SPEC
//! MEMBER   := trivial | whole | parabolic=J | klein-a
//! ```

use std::str::FromStr;

use super::{Order, Sign, Subgroup};
use crate::error::{Error, Result};
use crate::groups::Group;
use crate::quadratic::QuadraticNumber;

fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced ')' in {s:?}")));
                }
            }
            '!' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced '(' in {s:?}")));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

fn strip_parens(s: &str) -> &str {
    let t = s.trim();
    if t.starts_with('(') && t.ends_with(')') {
        let inner = &t[1..t.len() - 1];
        // Only strip when the outer pair matches.
        let mut depth = 0i32;
        for c in inner.chars() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth < 0 {
                        return t;
                    }
                }
                _ => {}
            }
        }
        if depth == 0 {
            return strip_parens(inner);
        }
    }
    t
}

fn braid_strands(arg: &str) -> Result<usize> {
    match arg.parse::<Group>()? {
        Group::Braid { strands } => Ok(strands),
        g => Err(Error::Parse(format!("expected a braid group, got {g}"))),
    }
}

fn parse_sign(c: char) -> Result<Sign> {
    match c {
        '+' => Ok(Sign::Positive),
        '-' => Ok(Sign::Negative),
        _ => Err(Error::Parse(format!("expected '+' or '-', got {c:?}"))),
    }
}

fn parse_base(s: &str) -> Result<Order> {
    let (family, arg) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("order spec {s:?} lacks a family prefix")))?;
    match family.trim() {
        "dehornoy" => Order::dehornoy(braid_strands(arg)?),
        "dd" => Order::dd(braid_strands(arg)?),
        "magnus" => match arg.parse::<Group>()? {
            Group::Free { rank } => Order::magnus(rank),
            g => Err(Error::Parse(format!("expected a free group, got {g}"))),
        },
        "smirnov" => Order::smirnov(arg.parse()?),
        "klein" => {
            let cs: Vec<char> = arg.trim().chars().collect();
            match cs[..] {
                [b, a] => Ok(Order::klein(parse_sign(b)?, parse_sign(a)?)),
                _ => Err(Error::Parse(format!(
                    "klein spec needs two signs, got {arg:?}"
                ))),
            }
        }
        "zn" => {
            let (kind, rest) = arg
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("bad zn spec {arg:?}")))?;
            match kind.trim() {
                "lex" => {
                    let n: usize = rest
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad dimension {rest:?}")))?;
                    Order::lex(n)
                }
                "slope" => {
                    let (slope, tie) = match rest.split_once('@') {
                        Some((a, b)) => (a, Some(b)),
                        None => (rest, None),
                    };
                    let slope = slope
                        .split(',')
                        .map(QuadraticNumber::from_str)
                        .collect::<Result<Vec<_>>>()?;
                    let tie = match tie {
                        Some(t) => t
                            .split(',')
                            .map(|c| {
                                c.trim()
                                    .parse::<usize>()
                                    .map_err(|_| Error::Parse(format!("bad coordinate {c:?}")))
                            })
                            .collect::<Result<Vec<_>>>()?,
                        None => Vec::new(),
                    };
                    Order::zn(slope, &tie)
                }
                other => Err(Error::Parse(format!("unknown zn ordering {other:?}"))),
            }
        }
        other => Err(Error::Parse(format!("unknown order family {other:?}"))),
    }
}

impl FromStr for Subgroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Subgroup> {
        let s = s.trim();
        match s {
            "trivial" => Ok(Subgroup::Trivial),
            "whole" => Ok(Subgroup::Whole),
            "klein-a" => Ok(Subgroup::KleinA),
            _ => match s.strip_prefix("parabolic=") {
                Some(j) => j
                    .parse()
                    .map(Subgroup::Parabolic)
                    .map_err(|_| Error::Parse(format!("bad parabolic index {j:?}"))),
                None => Err(Error::Parse(format!("unknown subgroup {s:?}"))),
            },
        }
    }
}

impl FromStr for Order {
    type Err = Error;

    fn from_str(s: &str) -> Result<Order> {
        let s = strip_parens(s);
        let parts = split_top_level(s)?;
        let mut order = {
            let base = parts[0].trim();
            if base.starts_with('(') {
                base.parse()?
            } else {
                parse_base(base)?
            }
        };
        for m in &parts[1..] {
            let m = m.trim();
            order = if m == "reverse" {
                order.reverse()
            } else if let Some(w) = m.strip_prefix("conj=") {
                let f = order.group().parse_element(w)?;
                order.conjugate(&f)?
            } else if let Some(rest) = m.strip_prefix("extend=") {
                let (member, inner) = rest.split_once(':').ok_or_else(|| {
                    Error::Parse(format!("extend needs MEMBER:SPEC, got {rest:?}"))
                })?;
                let inner: Order = inner.parse()?;
                order.extend(member.parse()?, &inner)?
            } else {
                return Err(Error::Parse(format!("unknown order modifier {m:?}")));
            };
        }
        Ok(order)
    }
}
