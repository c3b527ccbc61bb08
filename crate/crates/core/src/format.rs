//! Edge-list text format.
//!
//! ```text
//! # comment
//! vertex 0 a1        optional label declaration
//! 0 1 1/4            edge u v resistance
//! 0 2 -1/6 gadget    negative resistances need the gadget flag
//! ```
//!
//! Resistances are integers, decimals (`0.25`, `1e-3`) or fractions `p/q`,
//! all parsed exactly. Vertex ids need not be dense; they are mapped to
//! `0..n` in ascending order, and ids that do not match their canonical
//! position are kept as labels.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};
use crate::network::{Rational, ResistorNetwork};

/// Parses an exact rational from `p/q`, an integer, or a decimal with an
/// optional exponent.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer: BigInt = all_digits.parse().ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        Rational::from_integer(numer * Pow::pow(&ten, scale as u32))
    } else {
        Rational::new(numer, Pow::pow(&ten, scale.unsigned_abs()))
    };
    if negative {
        value = -value;
    }
    Some(value)
}

struct RawEdge {
    line: usize,
    u: u64,
    v: u64,
    r: Rational,
    gadget: bool,
}

pub fn parse_network(text: &str) -> Result<ResistorNetwork> {
    let mut declared: BTreeMap<u64, String> = BTreeMap::new();
    let mut label_lines: BTreeMap<String, u64> = BTreeMap::new();
    let mut raw = Vec::new();

    for (idx, full) in text.lines().enumerate() {
        let line = idx + 1;
        let content = full.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let syntax = |message: String| Error::Syntax { line, message };
        let mut tokens = content.split_whitespace();
        let first = tokens.next().unwrap_or_default();

        if first == "vertex" {
            let id = tokens
                .next()
                .ok_or_else(|| syntax("vertex declaration needs an id".into()))?;
            let id: u64 = id
                .parse()
                .map_err(|_| syntax(format!("invalid vertex id `{id}`")))?;
            let label = tokens.collect::<Vec<_>>().join(" ");
            let label = if label.is_empty() {
                id.to_string()
            } else {
                label
            };
            if declared.contains_key(&id) {
                return Err(Error::DuplicateVertex {
                    line,
                    id: id.to_string(),
                });
            }
            if label_lines.contains_key(&label) {
                return Err(Error::DuplicateVertex { line, id: label });
            }
            label_lines.insert(label.clone(), id);
            declared.insert(id, label);
            continue;
        }

        let parse_id = |tok: &str| -> Result<u64> {
            tok.parse::<u64>()
                .map_err(|_| syntax(format!("invalid vertex id `{tok}`")))
        };
        let u = parse_id(first)?;
        let v = parse_id(
            tokens
                .next()
                .ok_or_else(|| syntax("expected `u v r [gadget]`".into()))?,
        )?;
        let r_tok = tokens
            .next()
            .ok_or_else(|| syntax("missing resistance".into()))?;
        let r =
            parse_rational(r_tok).ok_or_else(|| syntax(format!("invalid resistance `{r_tok}`")))?;
        let gadget = match tokens.next() {
            None => false,
            Some("gadget") => true,
            Some(other) => return Err(syntax(format!("unexpected token `{other}`"))),
        };
        if let Some(extra) = tokens.next() {
            return Err(syntax(format!("unexpected token `{extra}`")));
        }
        if u == v {
            return Err(syntax(format!("self-loop at vertex {u}")));
        }
        if r.is_zero() {
            return Err(syntax("zero resistance".into()));
        }
        if r.is_negative() && !gadget {
            return Err(syntax(
                "negative resistance requires the gadget flag".into(),
            ));
        }
        raw.push(RawEdge {
            line,
            u,
            v,
            r,
            gadget,
        });
    }

    let mut ids: Vec<u64> = declared.keys().copied().collect();
    for e in &raw {
        ids.push(e.u);
        ids.push(e.v);
    }
    ids.sort_unstable();
    ids.dedup();
    let canonical: BTreeMap<u64, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();

    let labels: Vec<String> = ids
        .iter()
        .map(|id| declared.get(id).cloned().unwrap_or_else(|| id.to_string()))
        .collect();
    let trivial = labels.iter().enumerate().all(|(i, l)| *l == i.to_string());
    let mut net = if trivial {
        ResistorNetwork::new(ids.len())
    } else {
        ResistorNetwork::with_labels(labels)?
    };
    for e in raw {
        net.push_edge(canonical[&e.u], canonical[&e.v], e.r, e.gadget)
            .map_err(|err| Error::Syntax {
                line: e.line,
                message: err.to_string(),
            })?;
    }
    Ok(net)
}

/// Renders `net` in the edge-list format. Rationals are written exactly.
pub fn render_network(net: &ResistorNetwork) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# {} vertices, {} edges",
        net.vertex_count(),
        net.edge_count()
    );
    let mut touched = vec![false; net.vertex_count()];
    for e in net.edges() {
        touched[e.u] = true;
        touched[e.v] = true;
    }
    for (v, &seen) in touched.iter().enumerate() {
        if net.has_labels() || !seen {
            let _ = writeln!(out, "vertex {v} {}", net.label(v));
        }
    }
    for e in net.edges() {
        let _ = write!(out, "{} {} {}", e.u, e.v, e.resistance);
        if e.gadget {
            out.push_str(" gadget");
        }
        out.push('\n');
    }
    out
}

/// Renders a rational as `p/q`, or `p` when integral.
pub fn rational_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
