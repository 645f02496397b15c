//! Line-oriented instance format, 1-based ids:
//!
//! ```text
//! c comment
//! p mwlcp <n> <m> <ncolors>
//! e <u> <v>                    (m lines)
//! w <j> <weight>               (ncolors lines)
//! l <v> <len> <j1> ... <jlen>  (n lines)
//! ```

use std::collections::HashSet;
use std::fmt::Write;

use thiserror::Error;

use crate::error::Result as CoreResult;
use crate::graph::Graph;
use crate::instance::{build_instance, Color, Instance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Parsed file contents before instance normalization; lists may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub graph: Graph,
    pub weights: Vec<u64>,
    pub lists: Vec<Vec<Color>>,
}

impl InstanceFile {
    pub fn into_instance(self) -> CoreResult<Instance> {
        build_instance(self.graph, self.weights, self.lists)
    }
}

fn is_comment(line: &str) -> bool {
    line.is_empty() || line.starts_with('c')
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, ParseError> {
    match tok {
        None => err(line, format!("missing {what}")),
        Some(t) => t.parse().or_else(|_| err(line, format!("invalid {what} '{t}'"))),
    }
}

fn id(tok: Option<&str>, line: usize, what: &str, bound: usize) -> Result<usize, ParseError> {
    let x: usize = num(tok, line, what)?;
    if x == 0 || x > bound {
        return err(line, format!("{what} {x} out of range 1..={bound}"));
    }
    Ok(x - 1)
}

pub fn parse_instance_file(text: &str) -> Result<InstanceFile, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut graph = Graph::new(0);
    let mut edges = 0usize;
    let mut weights: Vec<Option<u64>> = Vec::new();
    let mut lists: Vec<Option<Vec<Color>>> = Vec::new();
    let mut last = 0;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if is_comment(line) {
            continue;
        }
        last = line_no;
        let mut toks = line.split_whitespace();
        let tag = toks.next().unwrap_or_default();
        let Some((n, m, k)) = header else {
            if tag != "p" {
                return err(line_no, "expected 'p mwlcp <n> <m> <ncolors>' header");
            }
            if toks.next() != Some("mwlcp") {
                return err(line_no, "header format must be 'mwlcp'");
            }
            let n = num(toks.next(), line_no, "vertex count")?;
            let m = num(toks.next(), line_no, "edge count")?;
            let k = num(toks.next(), line_no, "color count")?;
            if toks.next().is_some() {
                return err(line_no, "trailing tokens after header");
            }
            header = Some((n, m, k));
            graph = Graph::new(n);
            weights = vec![None; k];
            lists = vec![None; n];
            continue;
        };
        match tag {
            "p" => return err(line_no, "duplicate header"),
            "e" => {
                let u = id(toks.next(), line_no, "vertex", n)?;
                let v = id(toks.next(), line_no, "vertex", n)?;
                if u == v {
                    return err(line_no, format!("self-loop on vertex {}", u + 1));
                }
                if !graph.add_edge(u, v) {
                    return err(line_no, format!("duplicate edge ({}, {})", u + 1, v + 1));
                }
                edges += 1;
                if edges > m {
                    return err(line_no, format!("more than the declared {m} edges"));
                }
            }
            "w" => {
                let j = id(toks.next(), line_no, "color", k)?;
                let w: u64 = num(toks.next(), line_no, "weight")?;
                if weights[j].replace(w).is_some() {
                    return err(line_no, format!("duplicate weight for color {}", j + 1));
                }
            }
            "l" => {
                let v = id(toks.next(), line_no, "vertex", n)?;
                let len: usize = num(toks.next(), line_no, "list length")?;
                let mut list = Vec::with_capacity(len);
                let mut seen = HashSet::new();
                for _ in 0..len {
                    let j = id(toks.next(), line_no, "color", k)?;
                    if !seen.insert(j) {
                        return err(line_no, format!("color {} repeated in list", j + 1));
                    }
                    list.push(j);
                }
                if lists[v].replace(list).is_some() {
                    return err(line_no, format!("duplicate list for vertex {}", v + 1));
                }
            }
            other => return err(line_no, format!("unknown line type '{other}'")),
        }
        if toks.next().is_some() {
            return err(line_no, "trailing tokens");
        }
    }

    let Some((_, m, _)) = header else {
        return err(last.max(1), "missing 'p mwlcp' header");
    };
    if edges != m {
        return err(last, format!("declared {m} edges, found {edges}"));
    }
    if let Some(j) = weights.iter().position(Option::is_none) {
        return err(last, format!("no weight line for color {}", j + 1));
    }
    if let Some(v) = lists.iter().position(Option::is_none) {
        return err(last, format!("no list line for vertex {}", v + 1));
    }
    Ok(InstanceFile {
        graph,
        weights: weights.into_iter().flatten().collect(),
        lists: lists.into_iter().flatten().collect(),
    })
}

/// Parses and normalizes in one go; an empty list is reported as a parse
/// error here. Use [`parse_instance_file`] to treat it as infeasibility.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    parse_instance_file(text)?
        .into_instance()
        .map_err(|e| ParseError { line: 0, message: e.to_string() })
}

pub fn write_instance(inst: &Instance, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let g = inst.graph();
    let _ = writeln!(out, "p mwlcp {} {} {}", g.n(), g.num_edges(), inst.num_declared_colors());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    for (j, w) in inst.weights().iter().enumerate() {
        let _ = writeln!(out, "w {} {}", j + 1, w);
    }
    for (v, list) in inst.lists().iter().enumerate() {
        let _ = write!(out, "l {} {}", v + 1, list.len());
        for j in list {
            let _ = write!(out, " {}", j + 1);
        }
        out.push('\n');
    }
    out
}

/// A solution to check: either `v <vertex> <color>` lines or a key-value
/// result record (`v.<vertex>=<color>`), both 1-based.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolutionFile {
    pub status: Option<String>,
    pub weight: Option<u64>,
    pub assignment: Option<Vec<Color>>,
}

pub fn parse_solution(text: &str, n: usize) -> Result<SolutionFile, ParseError> {
    let mut sol = SolutionFile::default();
    let mut colors: Vec<Option<Color>> = vec![None; n];
    let mut any = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if is_comment(line) {
            continue;
        }
        let (vertex, color) = if let Some((key, value)) = line.split_once('=') {
            match key {
                "status" => {
                    sol.status = Some(value.to_string());
                    continue;
                }
                "weight" => {
                    sol.weight = Some(num(Some(value), line_no, "weight")?);
                    continue;
                }
                _ => match key.strip_prefix("v.") {
                    Some(v) => (Some(v), Some(value)),
                    None => continue,
                },
            }
        } else {
            let mut toks = line.split_whitespace();
            match toks.next() {
                Some("v") => (toks.next(), toks.next()),
                Some("s") => {
                    sol.status = toks.next().map(str::to_string);
                    if let Some(w) = toks.next() {
                        sol.weight = Some(num(Some(w), line_no, "weight")?);
                    }
                    continue;
                }
                _ => return err(line_no, "expected 'v <vertex> <color>'"),
            }
        };
        let v = id(vertex, line_no, "vertex", n)?;
        let j: usize = num(color, line_no, "color")?;
        if j == 0 {
            return err(line_no, "color ids are 1-based");
        }
        if colors[v].replace(j - 1).is_some() {
            return err(line_no, format!("vertex {} assigned twice", v + 1));
        }
        any = true;
    }
    if any {
        if let Some(v) = colors.iter().position(Option::is_none) {
            return err(0, format!("vertex {} has no color", v + 1));
        }
        sol.assignment = Some(colors.into_iter().flatten().collect());
    }
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "c sample\np mwlcp 3 2 3\ne 1 2\ne 2 3\nw 1 1\nw 2 2\nw 3 5\nl 1 2 1 2\nl 2 1 2\nl 3 2 1 3\n";

    #[test]
    fn parses_sample() {
        let inst = parse_instance(SAMPLE).unwrap();
        assert_eq!(inst.n(), 3);
        assert_eq!(inst.graph().edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(inst.weights(), &[1, 2, 5]);
        assert_eq!(inst.list(2), &[0, 2]);
        assert_eq!(write_instance(&inst, &["sample".into()]), SAMPLE);
    }

    #[test]
    fn reports_line_numbers() {
        let cases = [
            ("p mwlcp 2 1 1\ne 1 3\nw 1 1\nl 1 1 1\nl 2 1 1\n", 2),
            ("p mwlcp 2 2 1\ne 1 2\ne 2 1\nw 1 1\nl 1 1 1\nl 2 1 1\n", 3),
            ("p mwlcp 2 1 1\ne 1 1\n", 2),
            ("e 1 2\n", 1),
            ("p mwlcp 1 0 1\nw 1 1\nl 1 2 1\n", 3),
            ("p mwlcp 1 0 1\nw 1 1\nx 1\n", 3),
            ("p mwlcp 2 0 1\nw 1 1\nl 1 1 1\n", 3),
        ];
        for (text, line) in cases {
            let e = parse_instance_file(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
        }
    }

    #[test]
    fn empty_list_survives_raw_parse() {
        let file = parse_instance_file("p mwlcp 1 0 1\nw 1 1\nl 1 0\n").unwrap();
        assert_eq!(file.lists, vec![Vec::<usize>::new()]);
        assert!(file.into_instance().is_err());
    }

    #[test]
    fn solution_formats() {
        let plain = parse_solution("c x\nv 1 2\nv 2 1\n", 2).unwrap();
        assert_eq!(plain.assignment, Some(vec![1, 0]));
        let kv = parse_solution("status=optimal\nweight=3\nnodes=1\nv.2=1\nv.1=2\n", 2).unwrap();
        assert_eq!(kv.assignment, Some(vec![1, 0]));
        assert_eq!(kv.weight, Some(3));
        assert_eq!(kv.status.as_deref(), Some("optimal"));
        assert!(parse_solution("v 1 2\n", 2).is_err());
        assert!(parse_solution("v 1 2\nv 1 1\n", 2).is_err());
    }
}
