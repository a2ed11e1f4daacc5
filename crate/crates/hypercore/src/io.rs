//! File formats: the `.h3` text format, its JSON mirror, and `.grp`
//! group multiplication tables.
//!
//! `.h3` layout: first line `h3 <n> <m>`, then `m` lines `<u> <v> <w>`
//! with 0-based indices sorted ascending within a line, then an optional
//! line `part <c0> ... <c_{n-1}>`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph3;

#[derive(Serialize, Deserialize)]
struct H3Json {
    n: usize,
    edges: Vec<[usize; 3]>,
    partition: Option<Vec<usize>>,
}

/// Renders the `.h3` text form.
pub fn to_h3(h: &Hypergraph3) -> String {
    let mut out = format!("h3 {} {}\n", h.n(), h.m());
    for e in h.edges() {
        out.push_str(&format!("{} {} {}\n", e[0], e[1], e[2]));
    }
    if let Some(p) = h.partition() {
        out.push_str("part");
        for &c in p {
            out.push_str(&format!(" {c}"));
        }
        out.push('\n');
    }
    out
}

fn parse_fields(line: &str, expect: usize, what: &str) -> Result<Vec<usize>> {
    let fields: Vec<usize> = line
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad integer {t:?} in {what}")))
        })
        .collect::<Result<_>>()?;
    if fields.len() != expect {
        return Err(Error::Parse(format!(
            "{what}: expected {expect} fields, got {}",
            fields.len()
        )));
    }
    Ok(fields)
}

/// Parses the `.h3` text form.
pub fn parse_h3(text: &str) -> Result<Hypergraph3> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input".into()))?;
    let rest = header
        .strip_prefix("h3 ")
        .ok_or_else(|| Error::Parse("missing `h3` header".into()))?;
    let nm = parse_fields(rest, 2, "header")?;
    let (n, m) = (nm[0], nm[1]);
    let mut triples = Vec::with_capacity(m);
    for _ in 0..m {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {m} edge lines")))?;
        let f = parse_fields(line, 3, "edge line")?;
        triples.push([f[0], f[1], f[2]]);
    }
    let h = Hypergraph3::build(n, &triples)?;
    match lines.next() {
        None => Ok(h),
        Some(line) => {
            let rest = line
                .strip_prefix("part")
                .ok_or_else(|| Error::Parse(format!("unexpected trailing line {line:?}")))?;
            let labels = parse_fields(rest, n, "part line")?;
            h.with_partition(labels)
        }
    }
}

/// Renders the JSON mirror `{n, edges, partition}`.
pub fn to_json(h: &Hypergraph3) -> String {
    serde_json::to_string(&H3Json {
        n: h.n(),
        edges: h.edges().to_vec(),
        partition: h.partition().map(|p| p.to_vec()),
    })
    .expect("plain data serializes")
}

/// Parses the JSON mirror.
pub fn from_json(text: &str) -> Result<Hypergraph3> {
    let raw: H3Json = serde_json::from_str(text)?;
    let h = Hypergraph3::build(raw.n, &raw.edges)?;
    match raw.partition {
        Some(p) => h.with_partition(p),
        None => Ok(h),
    }
}

/// Reads a hypergraph from a path, accepting `.h3` or the JSON mirror
/// (selected by a leading `{`).
pub fn read_hypergraph(path: &std::path::Path) -> Result<Hypergraph3> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        from_json(&text)
    } else {
        parse_h3(&text)
    }
}

/// Parses a `.grp` multiplication table: line 1 `grp <m>`, then `m` rows
/// of `m` indices where row `a`, column `b` holds `a*b`.
pub fn parse_grp(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input".into()))?;
    let rest = header
        .strip_prefix("grp ")
        .ok_or_else(|| Error::Parse("missing `grp` header".into()))?;
    let m = parse_fields(rest, 1, "header")?[0];
    let mut rows = Vec::with_capacity(m);
    for _ in 0..m {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {m} table rows")))?;
        rows.push(parse_fields(line, m, "table row")?);
    }
    Ok(rows)
}

/// Renders a `.grp` table.
pub fn to_grp(table: &[Vec<usize>]) -> String {
    let mut out = format!("grp {}\n", table.len());
    for row in table {
        let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn h3_text_round_trip() {
        let h = Hypergraph3::build(4, &[[0, 1, 2], [0, 1, 3], [0, 2, 3]]).unwrap();
        let parsed = parse_h3(&to_h3(&h)).unwrap();
        assert_eq!(parsed, h);
    }

    #[test]
    fn h3_text_round_trip_with_partition() {
        let h = Hypergraph3::build(3, &[[0, 1, 2]])
            .unwrap()
            .with_partition(vec![0, 1, 2])
            .unwrap();
        assert_eq!(parse_h3(&to_h3(&h)).unwrap(), h);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_h3("").is_err());
        assert!(parse_h3("h3 2\n").is_err());
        assert!(parse_h3("h3 4 1\n0 1\n").is_err());
        assert!(parse_h3("h3 4 1\n0 1 2\njunk\n").is_err());
    }

    #[test]
    fn grp_round_trip() {
        let table = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(parse_grp(&to_grp(&table)).unwrap(), table);
    }

    prop_compose! {
        fn arb_hypergraph()(n in 3usize..10)
            (n in Just(n),
             picks in proptest::collection::vec((0usize..10, 0usize..10, 0usize..10), 0..25),
             with_part in proptest::bool::ANY)
            -> Hypergraph3
        {
            let mut triples = Vec::new();
            let mut seen = std::collections::HashSet::new();
            for (a, b, c) in picks {
                let (a, b, c) = (a % n, b % n, c % n);
                if a == b || b == c || a == c { continue; }
                let mut t = [a, b, c];
                t.sort_unstable();
                if seen.insert(t) { triples.push(t); }
            }
            let h = Hypergraph3::build(n, &triples).unwrap();
            if with_part {
                // A >=4-class labeling is always consistent.
                h.with_partition((0..n).map(|v| 3 + v % 2).collect()).unwrap()
            } else {
                h
            }
        }
    }

    proptest! {
        #[test]
        fn parse_is_inverse_of_render(h in arb_hypergraph()) {
            prop_assert_eq!(&parse_h3(&to_h3(&h)).unwrap(), &h);
            prop_assert_eq!(&from_json(&to_json(&h)).unwrap(), &h);
        }
    }
}
