//! Line-oriented text formats for instances and labelings.
//!
//! ```text
//! # comment
//! p el-ecs 3 2 2 0
//! e 1 2 1 2
//! e 2 3 -
//! ```
//!
//! Vertices are 1-indexed in files. A color tail is allowed only for list
//! kinds; `-` is the empty list and a missing tail the full list. Labeling
//! files hold one `c u v color` line per edge, with 0 for weak.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{edge, Graph};
use crate::instance::{Instance, Kind};
use crate::labeling::{labeling_from_triples, ColorSet, EdgeLists, Labeling, MAX_LIST_COLORS};

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        msg: msg.into(),
    })
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    match tok {
        None => perr(line, format!("missing {what}")),
        Some(t) => t
            .parse()
            .or_else(|_| perr(line, format!("invalid {what} `{t}`"))),
    }
}

fn vertex(tok: Option<&str>, line: usize, n: usize) -> Result<usize> {
    let v: usize = num(tok, line, "vertex")?;
    if v == 0 || v > n {
        return perr(line, format!("vertex {v} out of range 1..={n}"));
    }
    Ok(v - 1)
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<(Kind, usize, usize, u32, u64)> = None;
    let mut edges = Vec::new();
    let mut lists: Vec<(usize, usize, ColorSet)> = Vec::new();
    let mut last_line = 0;
    for (ln, line) in content_lines(text) {
        last_line = ln;
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("p") => {
                if header.is_some() {
                    return perr(ln, "second header line");
                }
                let kind: Kind = match tok.next() {
                    Some(s) => s.parse().or_else(|e: Error| perr(ln, e.to_string()))?,
                    None => return perr(ln, "missing problem kind"),
                };
                let n = num(tok.next(), ln, "vertex count")?;
                let m = num(tok.next(), ln, "edge count")?;
                let c: u32 = num(tok.next(), ln, "color count")?;
                let k = num(tok.next(), ln, "budget")?;
                if tok.next().is_some() {
                    return perr(ln, "trailing tokens in header");
                }
                if c == 0 {
                    return perr(ln, "c must be at least 1");
                }
                if kind.has_lists() && c > MAX_LIST_COLORS {
                    return perr(ln, format!("list kinds support at most {MAX_LIST_COLORS} colors"));
                }
                header = Some((kind, n, m, c, k));
            }
            Some("e") => {
                let Some((kind, n, m, c, _)) = header else {
                    return perr(ln, "edge before header");
                };
                if edges.len() == m {
                    return perr(ln, format!("more than {m} edge lines"));
                }
                let a = vertex(tok.next(), ln, n)?;
                let b = vertex(tok.next(), ln, n)?;
                if a == b {
                    return perr(ln, "self-loop");
                }
                let rest: Vec<&str> = tok.collect();
                if !rest.is_empty() {
                    if !kind.has_lists() {
                        return perr(ln, format!("color list on a {kind} edge"));
                    }
                    let mut s = ColorSet::EMPTY;
                    if rest != ["-"] {
                        for t in rest {
                            let x: u32 = num(Some(t), ln, "color")?;
                            if x == 0 || x > c {
                                return perr(ln, format!("color {x} out of range 1..={c}"));
                            }
                            if s.contains(x) {
                                return perr(ln, format!("color {x} listed twice"));
                            }
                            s = s.with(x);
                        }
                    }
                    lists.push((a, b, s));
                }
                edges.push((a, b, ln));
            }
            Some(t) => return perr(ln, format!("unknown line type `{t}`")),
            None => unreachable!(),
        }
    }
    let Some((kind, n, m, c, k)) = header else {
        return perr(last_line.max(1), "missing header line");
    };
    if edges.len() != m {
        return perr(last_line.max(1), format!("header announces {m} edges, found {}", edges.len()));
    }
    let mut sorted: Vec<(usize, usize, usize)> = edges.iter().map(|&(a, b, l)| {
        let (x, y) = edge(a, b);
        (x, y, l)
    }).collect();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
        return perr(w[1].2.max(w[0].2), "duplicate edge");
    }
    let graph = Graph::new(n, edges.iter().map(|&(a, b, _)| (a, b)))?;
    let psi = kind.has_lists().then(|| {
        let mut p = EdgeLists::full(c);
        for (a, b, s) in lists {
            p.set(edge(a, b), s);
        }
        p
    });
    Instance::new(kind, graph, c, k, psi)
}

pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    let g = &inst.graph;
    writeln!(out, "p {} {} {} {} {}", inst.kind, g.n(), g.m(), inst.c, inst.k).unwrap();
    for &(a, b) in g.edges() {
        write!(out, "e {} {}", a + 1, b + 1).unwrap();
        if let Some(s) = inst.psi.as_ref().and_then(|p| p.allowed.get(&(a, b))) {
            if s.is_empty() {
                out.push_str(" -");
            } else {
                for x in s.iter() {
                    write!(out, " {x}").unwrap();
                }
            }
        }
        out.push('\n');
    }
    out
}

/// Parses a labeling file against the instance's graph.
pub fn parse_labeling(text: &str, g: &Graph, c: u32) -> Result<Labeling> {
    let mut triples = Vec::new();
    for (ln, line) in content_lines(text) {
        let mut tok = line.split_whitespace();
        if tok.next() != Some("c") {
            return perr(ln, "expected `c u v color`");
        }
        let a = vertex(tok.next(), ln, g.n())?;
        let b = vertex(tok.next(), ln, g.n())?;
        let x: u32 = num(tok.next(), ln, "color")?;
        if tok.next().is_some() {
            return perr(ln, "trailing tokens");
        }
        if x > c {
            return perr(ln, format!("color {x} exceeds c = {c}"));
        }
        if !g.has_edge(a, b) {
            return perr(ln, format!("({},{}) is not an edge", a + 1, b + 1));
        }
        triples.push((a, b, x));
    }
    labeling_from_triples(g, c, &triples)
}

pub fn serialize_labeling(g: &Graph, l: &Labeling) -> String {
    let mut out = String::new();
    for (&(a, b), &x) in g.edges().iter().zip(&l.colors) {
        writeln!(out, "c {} {} {}", a + 1, b + 1, x).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let inst = parse_instance("# t\np ecs 3 3 3 0\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(inst.kind, Kind::Ecs);
        assert_eq!((inst.n(), inst.m(), inst.c, inst.k), (3, 3, 3, 0));
        assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn lists() {
        let inst = parse_instance("p el-ecs 3 2 3 1\ne 1 2 1 3\ne 3 2 -\n").unwrap();
        let p = inst.psi.as_ref().unwrap();
        assert_eq!(p.get((0, 1)), ColorSet::from_colors([1, 3]));
        assert_eq!(p.get((1, 2)), ColorSet::EMPTY);
        let text = serialize_instance(&inst);
        assert_eq!(parse_instance(&text).unwrap(), inst);
        let full = parse_instance("p el-mstc 2 1 2 0\ne 1 2\n").unwrap();
        assert_eq!(full.psi.unwrap().get((0, 1)), ColorSet::full(2));
    }

    #[test]
    fn errors_carry_lines() {
        let cases = [
            ("p ecs 2 1 1 0\ne 1 1\n", 2),
            ("p ecs 2 2 1 0\ne 1 2\ne 2 1\n", 3),
            ("p ecs 2 1 1 0\ne 1 3\n", 2),
            ("p el-ecs 2 1 2 0\ne 1 2 3\n", 2),
            ("p ecs 2 1 2 0\ne 1 2 1\n", 2),
            ("e 1 2\n", 1),
            ("p ecs 2 1 1 0\nx\n", 2),
        ];
        for (text, line) in cases {
            match parse_instance(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn labeling_roundtrip() {
        let g = Graph::complete(3);
        let l = Labeling {
            c: 3,
            colors: vec![1, 0, 2],
        };
        let text = serialize_labeling(&g, &l);
        assert_eq!(parse_labeling(&text, &g, 3).unwrap(), l);
        assert!(parse_labeling("c 1 2 1\n", &g, 3).is_err());
    }
}
