//! Text formats: tab-separated edge lists and `node,class` label files.

use std::fmt::Write as _;
use std::path::Path;

use log::warn;
use nalgebra::DMatrix;

use super::{Graph, LabelAssignment};
use crate::{Error, Result};

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_err(source: &str, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        source_name: source.to_string(),
        line,
        message: message.into(),
    }
}

pub fn load_edge_list(path: impl AsRef<Path>, directed: bool) -> Result<Graph> {
    let path = path.as_ref();
    parse_edge_list_named(&read(path)?, directed, &path.display().to_string())
}

/// Parses `src<TAB>dst<TAB>weight` lines with 0-based node ids. Blank lines
/// and lines starting with `#` are skipped. The node count is one more than
/// the largest id seen. Undirected input sets both orientations. When an arc
/// is given twice the last weight wins.
pub fn parse_edge_list(text: &str, directed: bool) -> Result<Graph> {
    parse_edge_list_named(text, directed, "<edges>")
}

fn parse_edge_list_named(text: &str, directed: bool, source: &str) -> Result<Graph> {
    let mut arcs: Vec<(usize, usize, f64, usize)> = Vec::new();
    let mut n = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        let fields: Vec<&str> = if fields.len() == 3 {
            fields
        } else {
            line.split_whitespace().collect()
        };
        if fields.len() != 3 {
            return Err(parse_err(
                source,
                line_no,
                format!("expected `src<TAB>dst<TAB>weight`, found {} field(s)", fields.len()),
            ));
        }
        let node = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| parse_err(source, line_no, format!("invalid node id `{s}`")))
        };
        let src = node(fields[0])?;
        let dst = node(fields[1])?;
        let weight: f64 = fields[2]
            .parse()
            .map_err(|_| parse_err(source, line_no, format!("invalid weight `{}`", fields[2])))?;
        if !(weight > 0.0 && weight.is_finite()) {
            return Err(parse_err(
                source,
                line_no,
                format!("weight must be positive, got {weight}"),
            ));
        }
        if src == dst {
            return Err(parse_err(source, line_no, format!("self-loop on node {src}")));
        }
        n = n.max(src + 1).max(dst + 1);
        arcs.push((src, dst, weight, line_no));
    }
    if n == 0 {
        return Err(Error::invalid(format!("{source}: edge list is empty")));
    }
    let mut affinity = DMatrix::zeros(n, n);
    for (src, dst, weight, line_no) in arcs {
        let previous = affinity[(src, dst)];
        if previous != 0.0 {
            warn!("{source}:{line_no}: duplicate arc {src}->{dst}, keeping weight {weight} (was {previous})");
        }
        affinity[(src, dst)] = weight;
        if !directed {
            affinity[(dst, src)] = weight;
        }
    }
    Graph::from_affinity(affinity, directed)
}

/// Writes the affinities in the edge-list format. Weights use the shortest
/// representation that parses back to the same `f64`. Undirected graphs list
/// each edge once, with `src < dst`.
pub fn write_edge_list(graph: &Graph) -> String {
    let n = graph.n();
    let a = graph.affinity();
    let mut out = String::new();
    for i in 0..n {
        for j in 0..n {
            if a[(i, j)] > 0.0 && (graph.is_directed() || i < j) {
                writeln!(out, "{i}\t{j}\t{}", a[(i, j)]).unwrap();
            }
        }
    }
    out
}

pub fn load_labels(path: impl AsRef<Path>, n: usize, classes: Option<usize>) -> Result<LabelAssignment> {
    let path = path.as_ref();
    parse_labels_named(&read(path)?, n, classes, &path.display().to_string())
}

/// Parses `node,class` lines. A first line whose first field is not a number
/// is treated as a header. When `classes` is `None` the class count is one
/// more than the largest class id. Every class needs at least two labeled
/// nodes.
pub fn parse_labels(text: &str, n: usize, classes: Option<usize>) -> Result<LabelAssignment> {
    parse_labels_named(text, n, classes, "<labels>")
}

fn parse_labels_named(
    text: &str,
    n: usize,
    classes: Option<usize>,
    source: &str,
) -> Result<LabelAssignment> {
    let mut labels: Vec<Option<usize>> = vec![None; n];
    let mut max_class = None;
    let mut first_record = true;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let is_first = std::mem::replace(&mut first_record, false);
        if is_first && fields[0].parse::<f64>().is_err() {
            continue;
        }
        if fields.len() != 2 {
            return Err(parse_err(source, line_no, "expected `node,class`"));
        }
        let node: usize = fields[0]
            .parse()
            .map_err(|_| parse_err(source, line_no, format!("invalid node id `{}`", fields[0])))?;
        let class: usize = fields[1]
            .parse()
            .map_err(|_| parse_err(source, line_no, format!("invalid class `{}`", fields[1])))?;
        if node >= n {
            return Err(parse_err(
                source,
                line_no,
                format!("node {node} out of range for a graph of {n} nodes"),
            ));
        }
        if let Some(m) = classes {
            if class >= m {
                return Err(parse_err(
                    source,
                    line_no,
                    format!("class {class} out of range for {m} classes"),
                ));
            }
        }
        match labels[node] {
            Some(existing) if existing != class => {
                return Err(parse_err(
                    source,
                    line_no,
                    format!("node {node} labeled both {existing} and {class}"),
                ))
            }
            _ => labels[node] = Some(class),
        }
        max_class = max_class.max(Some(class));
    }
    let m = match (classes, max_class) {
        (Some(m), _) => m,
        (None, Some(c)) => c + 1,
        (None, None) => return Err(Error::invalid(format!("{source}: no labels found"))),
    };
    let assignment = LabelAssignment::new(labels, m)?;
    assignment.require_min_seeds(2)?;
    Ok(assignment)
}

/// Writes labeled nodes as `node,class` lines, without a header.
pub fn write_labels(labels: &LabelAssignment) -> String {
    let mut out = String::new();
    for (i, l) in labels.labels().iter().enumerate() {
        if let Some(c) = l {
            writeln!(out, "{i},{c}").unwrap();
        }
    }
    out
}
