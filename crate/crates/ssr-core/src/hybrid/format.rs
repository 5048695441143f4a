use std::fmt::Write as _;

use super::{Assignment, Circle, CirclePart, E3Equation, E3LinInstance, HybridError, HybridInstance, ThreeEq, VarRef};
use crate::superstring::valid_name;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(n, raw)| {
        let line = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = line.split_whitespace().collect();
        (!words.is_empty()).then_some((n + 1, words))
    })
}

fn parse_err(line: usize, msg: impl Into<String>) -> HybridError {
    HybridError::Parse { line, msg: msg.into() }
}

fn parse_bit(line: usize, s: &str) -> Result<bool, HybridError> {
    match s {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(parse_err(line, format!("expected 0 or 1, got `{s}`"))),
    }
}

fn expect_header<'a>(lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>, header: &str) -> Result<(), HybridError> {
    match lines.next() {
        Some((_, words)) if words.join(" ") == header => Ok(()),
        Some((line, _)) => Err(parse_err(line, format!("expected header `{header}`"))),
        None => Err(parse_err(0, format!("missing header `{header}`"))),
    }
}

pub(super) fn write_e3(e3: &E3LinInstance) -> String {
    let mut out = String::from("e3lin v1\n");
    for eq in &e3.equations {
        let [a, b, c] = &eq.vars;
        writeln!(out, "eq {a} {b} {c} {}", eq.rhs as u8).unwrap();
    }
    out
}

pub(super) fn parse_e3(text: &str) -> Result<E3LinInstance, HybridError> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "e3lin v1")?;
    let mut equations = Vec::new();
    for (line, words) in lines {
        match words.as_slice() {
            ["eq", a, b, c, rhs] => {
                for v in [a, b, c] {
                    if !valid_name(v) {
                        return Err(parse_err(line, format!("invalid variable name `{v}`")));
                    }
                }
                equations.push(E3Equation {
                    vars: [(*a).into(), (*b).into(), (*c).into()],
                    rhs: parse_bit(line, rhs)?,
                });
            }
            _ => return Err(parse_err(line, "expected `eq <a> <b> <c> <rhs>`")),
        }
    }
    Ok(E3LinInstance { equations })
}

pub(super) fn write_hybrid(h: &HybridInstance) -> String {
    let mut out = String::from("hybrid v1\n");
    for c in h.circles() {
        writeln!(out, "circle {} {}", c.name(), c.len()).unwrap();
        for (i, j) in c.matching() {
            writeln!(out, "match {i} {j}").unwrap();
        }
    }
    for eq in h.eq3() {
        let [a, b, c] = eq.vars.map(|v| h.var_name(v));
        writeln!(out, "eq3 {a} {b} {c} {}", eq.rhs as u8).unwrap();
    }
    out
}

fn parse_ref(line: usize, s: &str, circles: &[CirclePart]) -> Result<VarRef, HybridError> {
    let (name, pos) = s
        .rsplit_once('.')
        .ok_or_else(|| parse_err(line, format!("expected <name>.<pos>, got `{s}`")))?;
    let pos: u32 = pos
        .parse()
        .map_err(|_| parse_err(line, format!("bad position in `{s}`")))?;
    let circle = circles
        .iter()
        .position(|(n, _, _)| &**n == name)
        .ok_or_else(|| HybridError::UnknownCircle(name.to_string()))?;
    Ok(VarRef::new(circle, pos))
}

fn parse_u32(line: usize, s: &str) -> Result<u32, HybridError> {
    s.parse()
        .map_err(|_| parse_err(line, format!("expected a number, got `{s}`")))
}

pub(super) fn parse_hybrid(text: &str) -> Result<HybridInstance, HybridError> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "hybrid v1")?;
    let mut circles: Vec<CirclePart> = Vec::new();
    let mut eq3 = Vec::new();
    for (line, words) in lines {
        match words.as_slice() {
            ["circle", name, len] => {
                circles.push(((*name).into(), parse_u32(line, len)?, Vec::new()));
            }
            ["match", i, j] => {
                let (i, j) = (parse_u32(line, i)?, parse_u32(line, j)?);
                let circle = circles
                    .last_mut()
                    .ok_or_else(|| parse_err(line, "`match` before any `circle`"))?;
                circle.2.push((i.min(j), i.max(j)));
            }
            ["eq3", a, b, c, rhs] => {
                let vars = [
                    parse_ref(line, a, &circles)?,
                    parse_ref(line, b, &circles)?,
                    parse_ref(line, c, &circles)?,
                ];
                eq3.push(ThreeEq {
                    vars,
                    rhs: parse_bit(line, rhs)?,
                });
            }
            _ => return Err(parse_err(line, format!("unrecognized line `{}`", words.join(" ")))),
        }
    }
    HybridInstance::from_parts(circles, eq3)
}

/// Renders `var=<name.pos> bit=<b>` lines.
pub fn write_assignment(h: &HybridInstance, phi: &Assignment) -> String {
    let mut out = String::new();
    for (c, circle) in h.circles().iter().enumerate() {
        for pos in 1..=circle.len() {
            let v = VarRef::new(c, pos);
            writeln!(out, "var={} bit={}", h.var_name(v), phi.get(v) as u8).unwrap();
        }
    }
    out
}

/// Parses `var=<name.pos> bit=<b>` lines; every variable of `h` must be present.
pub fn parse_assignment(h: &HybridInstance, text: &str) -> Result<Assignment, HybridError> {
    let mut bits: Vec<Vec<Option<bool>>> = h
        .circles()
        .iter()
        .map(|c: &Circle| vec![None; c.len() as usize])
        .collect();
    for (line, words) in content_lines(text) {
        let (var, bit) = match words.as_slice() {
            [var, bit] => (var.strip_prefix("var="), bit.strip_prefix("bit=")),
            _ => (None, None),
        };
        let (Some(var), Some(bit)) = (var, bit) else {
            // report lines such as `unsat=...` are ignored
            if words.iter().all(|w| w.contains('=')) {
                continue;
            }
            return Err(parse_err(line, "expected `var=<name.pos> bit=<b>`"));
        };
        let (name, pos) = var
            .rsplit_once('.')
            .ok_or_else(|| parse_err(line, format!("bad variable `{var}`")))?;
        let c = h
            .circle_index(name)
            .ok_or_else(|| HybridError::UnknownCircle(name.to_string()))?;
        let pos = parse_u32(line, pos)?;
        if pos == 0 || pos > h.circle(c).len() {
            return Err(parse_err(line, format!("position {pos} out of range")));
        }
        bits[c][pos as usize - 1] = Some(parse_bit(line, bit)?);
    }
    let mut out = Vec::with_capacity(bits.len());
    for (c, row) in bits.into_iter().enumerate() {
        let mut full = Vec::with_capacity(row.len());
        for (p, b) in row.into_iter().enumerate() {
            full.push(b.ok_or_else(|| HybridError::MissingVariable(h.var_name(VarRef::new(c, p as u32 + 1))))?);
        }
        out.push(full);
    }
    Ok(Assignment::from_bits(out))
}
