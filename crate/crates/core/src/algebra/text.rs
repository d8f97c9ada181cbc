//! Text form of monomials and elements.
//!
//! Generators are `t` (tau), `t0, t1, …` (tau_i), `x1, x2, …` (xi_i), `v1, …`
//! and `u1, …`. A monomial is a `*`-joined product of powers `g^k`; an element
//! is a `+`-joined sum. Whitespace is ignored.

use super::{AlgebraError, Element, GenKind, Monomial, Presentation};

pub fn format_monomial(m: &Monomial, p: &Presentation) -> String {
    let mut parts = Vec::new();
    match m.tau {
        0 => {}
        1 => parts.push("t".to_string()),
        k => parts.push(format!("t^{k}")),
    }
    for (g, &e) in p.generators().iter().zip(&m.exps) {
        match e {
            0 => {}
            1 => parts.push(g.kind.name()),
            e => parts.push(format!("{}^{e}", g.kind.name())),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Terms in descending monomial order, `0` for the zero element.
pub fn format_element(e: &Element, p: &Presentation) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    e.iter()
        .rev()
        .map(|m| format_monomial(m, p))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Parses a single product of generator powers, without rewriting.
pub fn parse_monomial(text: &str, p: &Presentation) -> Result<Monomial, AlgebraError> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(AlgebraError::Parse(text));
    }
    let mut m = p.one();
    if text == "1" {
        return Ok(m);
    }
    for factor in text.split('*') {
        let (name, power) = match factor.split_once('^') {
            Some((n, k)) => (
                n,
                k.parse::<u32>().map_err(|_| AlgebraError::Parse(factor.to_string()))?,
            ),
            None => (factor, 1),
        };
        if name == "t" {
            m.tau += power;
            continue;
        }
        if name == "1" {
            continue;
        }
        let kind = GenKind::parse(name).ok_or_else(|| AlgebraError::Parse(factor.to_string()))?;
        let i = p.generator_index(kind).ok_or_else(|| AlgebraError::UnknownGenerator {
            algebra: p.name(),
            generator: name.to_string(),
        })?;
        m.exps[i] += power;
    }
    Ok(m)
}

/// Parses and normalizes a homogeneous element. `0` is the zero element.
pub fn parse_element(text: &str, p: &Presentation) -> Result<Element, AlgebraError> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(AlgebraError::Parse(text));
    }
    let terms = text
        .split('+')
        .filter(|t| *t != "0")
        .map(|t| parse_monomial(t, p))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(first) = terms.first() {
        let d = p.degree(first);
        if terms.iter().any(|m| p.degree(m) != d) {
            return Err(AlgebraError::Inhomogeneous);
        }
    }
    let out = terms.iter().filter_map(|m| p.normalize(m)).collect();
    Ok(out)
}
