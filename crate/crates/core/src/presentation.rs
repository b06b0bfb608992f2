//! Line-oriented text format for ring presentations.
//!
//! ```text
//! # GF(2)[x]/x^3
//! gen x 1
//! gen x2 2
//! mul x x = x2
//! ```
//!
//! The unit `1` is implicit. Each nonzero product of an unordered pair is
//! listed once; every unlisted product is zero.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ring::{BasisElement, RingTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub degree: usize,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductRule {
    pub left: String,
    pub right: String,
    pub terms: Vec<String>,
    pub line: usize,
}

/// A parsed presentation; labels are known to be declared and unique.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StructureSpec {
    pub generators: Vec<Generator>,
    pub products: Vec<ProductRule>,
}

fn valid_label(s: &str) -> bool {
    !s.is_empty() && !s.contains(['+', '=', '#', '|', ':', '@']) && !s.chars().any(char::is_whitespace)
}

pub fn parse_presentation(text: &str) -> Result<StructureSpec> {
    let mut spec = StructureSpec::default();
    let mut declared: HashMap<String, usize> = HashMap::from([("1".to_string(), 0)]);
    let err = |line: usize, message: String| Error::Parse { line, message };

    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match tokens[0] {
            "gen" => {
                let [_, label, degree] = tokens[..] else {
                    return Err(err(line, "expected 'gen <label> <degree>'".into()));
                };
                if !valid_label(label) {
                    return Err(err(line, format!("invalid label '{label}'")));
                }
                let degree: usize = degree.parse().map_err(|_| err(line, format!("invalid degree '{degree}'")))?;
                if declared.insert(label.to_string(), line).is_some() {
                    return Err(err(line, format!("duplicate generator '{label}'")));
                }
                spec.generators.push(Generator { label: label.to_string(), degree, line });
            }
            "mul" => {
                if tokens.len() < 5 || tokens[3] != "=" {
                    return Err(err(line, "expected 'mul <a> <b> = <c>[+<d>...]'".into()));
                }
                let rhs: String = tokens[4..].concat();
                let terms: Vec<String> =
                    if rhs == "0" { Vec::new() } else { rhs.split('+').map(str::to_string).collect() };
                for label in [tokens[1], tokens[2]].into_iter().chain(terms.iter().map(String::as_str)) {
                    if label.is_empty() {
                        return Err(err(line, "empty term".into()));
                    }
                    if !declared.contains_key(label) {
                        return Err(err(line, format!("unknown label '{label}'")));
                    }
                }
                spec.products.push(ProductRule {
                    left: tokens[1].to_string(),
                    right: tokens[2].to_string(),
                    terms,
                    line,
                });
            }
            other => return Err(err(line, format!("unknown directive '{other}'"))),
        }
    }
    Ok(spec)
}

/// Builds and validates a ring from a presentation.
pub fn ring_from_table(spec: &StructureSpec) -> Result<RingTable> {
    let mut basis = vec![BasisElement { index: 0, degree: 0, label: "1".into() }];
    let mut index: HashMap<&str, usize> = HashMap::from([("1", 0)]);
    for g in &spec.generators {
        if index.insert(&g.label, basis.len()).is_some() {
            return Err(Error::DuplicateLabel { label: g.label.clone() });
        }
        basis.push(BasisElement { index: basis.len(), degree: g.degree, label: g.label.clone() });
    }
    let n = basis.len();
    let lookup = |label: &str| index.get(label).copied().ok_or_else(|| Error::UnknownLabel { label: label.into() });

    let mut table: Vec<Option<Vec<u64>>> = vec![None; n * n];
    for a in 0..n {
        table[a] = Some(vec![a as u64]);
        table[a * n] = Some(vec![a as u64]);
    }
    for rule in &spec.products {
        let a = lookup(&rule.left)?;
        let b = lookup(&rule.right)?;
        let mut terms = rule.terms.iter().map(|l| lookup(l).map(|i| i as u64)).collect::<Result<Vec<_>>>()?;
        terms.sort_unstable();
        if terms.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse { line: rule.line, message: "repeated term in product".into() });
        }
        let want = basis[a].degree + basis[b].degree;
        if let Some(&bad) = terms.iter().find(|&&t| basis[t as usize].degree != want) {
            return Err(Error::DegreeInconsistency(format!(
                "line {}: {} * {} = {} but degrees {} + {} != {}",
                rule.line,
                rule.left,
                rule.right,
                basis[bad as usize].label,
                basis[a].degree,
                basis[b].degree,
                basis[bad as usize].degree
            )));
        }
        for (i, j) in [(a, b), (b, a)] {
            match &table[i * n + j] {
                Some(existing) if *existing != terms => {
                    return Err(Error::ConflictingProduct { a: rule.left.clone(), b: rule.right.clone() })
                }
                _ => table[i * n + j] = Some(terms.clone()),
            }
        }
    }
    let table = table.into_iter().map(Option::unwrap_or_default).collect();
    RingTable::from_parts(basis, table, None)
}

/// Renders a ring in the presentation format; parsing the output reproduces
/// the same ring.
pub fn to_presentation(ring: &RingTable) -> String {
    let mut out = String::new();
    for e in &ring.basis()[1..] {
        let _ = writeln!(out, "gen {} {}", e.label, e.degree);
    }
    for a in 1..ring.len() {
        for b in a..ring.len() {
            let prod = ring.table_entry(a, b);
            if prod.is_empty() {
                continue;
            }
            let rhs: Vec<&str> = prod.iter().map(|&t| ring.label(t as usize)).collect();
            let _ = writeln!(out, "mul {} {} = {}", ring.label(a), ring.label(b), rhs.join("+"));
        }
    }
    out
}
