//! Line-oriented text format:
//!
//! ```text
//! # comment
//! vertices 3
//! edge 0 1 1.0
//! edge 1 2 2.5 fwd
//! ```
//!
//! Vertex names are either all nonnegative integers, used as ids directly, or
//! arbitrary labels, numbered densely in order of first appearance. A trailing
//! `fwd` / `bwd` orients the edge from `u` to `v` or back; when any edge is
//! oriented every edge must be.

use std::collections::HashMap;
use std::fmt::Write;

use super::{Direction, Network, Orientation, VertexId};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct NetworkFile {
    pub network: Network,
    pub labels: Vec<String>,
    pub orientation: Option<Orientation>,
}

impl NetworkFile {
    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label).map(VertexId)
    }
}

struct RawEdge<'a> {
    line: usize,
    u: &'a str,
    v: &'a str,
    length: f64,
    direction: Option<Direction>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_network(input: &str) -> Result<NetworkFile> {
    let mut header: Option<usize> = None;
    let mut raw = Vec::new();
    for (i, full) in input.lines().enumerate() {
        let line = i + 1;
        let body = full.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match tokens[0] {
            "vertices" => {
                if header.is_some() {
                    return Err(parse_err(line, "duplicate `vertices` header"));
                }
                if !raw.is_empty() {
                    return Err(parse_err(line, "`vertices` must precede every edge"));
                }
                if tokens.len() != 2 {
                    return Err(parse_err(line, "expected `vertices <n>`"));
                }
                let n = tokens[1]
                    .parse::<usize>()
                    .map_err(|_| parse_err(line, format!("bad vertex count `{}`", tokens[1])))?;
                header = Some(n);
            }
            "edge" => {
                if !(4..=5).contains(&tokens.len()) {
                    return Err(parse_err(
                        line,
                        "expected `edge <u> <v> <length> [fwd|bwd]`",
                    ));
                }
                let length = tokens[3]
                    .parse::<f64>()
                    .map_err(|_| parse_err(line, format!("bad length `{}`", tokens[3])))?;
                let direction = match tokens.get(4) {
                    None => None,
                    Some(&"fwd") => Some(Direction::Forward),
                    Some(&"bwd") => Some(Direction::Backward),
                    Some(other) => {
                        return Err(parse_err(
                            line,
                            format!("expected fwd or bwd, got `{other}`"),
                        ))
                    }
                };
                raw.push(RawEdge {
                    line,
                    u: tokens[1],
                    v: tokens[2],
                    length,
                    direction,
                });
            }
            other => return Err(parse_err(line, format!("unknown record `{other}`"))),
        }
    }

    let numeric = raw
        .iter()
        .all(|e| e.u.parse::<usize>().is_ok() && e.v.parse::<usize>().is_ok());
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut list = Vec::with_capacity(raw.len());
    let mut vertex_count;
    if numeric {
        vertex_count = header.unwrap_or(0);
        for e in &raw {
            let (u, v) = (e.u.parse::<usize>().unwrap(), e.v.parse::<usize>().unwrap());
            if let Some(n) = header {
                if u >= n || v >= n {
                    return Err(parse_err(
                        e.line,
                        format!("vertex {} out of range for `vertices {n}`", u.max(v)),
                    ));
                }
            }
            vertex_count = vertex_count.max(u + 1).max(v + 1);
            list.push((u, v, e.length));
        }
        if vertex_count == 0 {
            vertex_count = 1;
        }
        labels = (0..vertex_count).map(|i| i.to_string()).collect();
    } else {
        for e in &raw {
            let mut id = |name| -> usize {
                let next = labels.len();
                *ids.entry(name).or_insert_with(|| {
                    labels.push(name.to_string());
                    next
                })
            };
            let u = id(e.u);
            let v = id(e.v);
            list.push((u, v, e.length));
        }
        vertex_count = header.unwrap_or(0).max(labels.len()).max(1);
        if let Some(n) = header {
            if labels.len() > n {
                return Err(parse_err(
                    raw.last().map_or(0, |e| e.line),
                    format!("{} distinct labels exceed `vertices {n}`", labels.len()),
                ));
            }
        }
        while labels.len() < vertex_count {
            labels.push(format!("#{}", labels.len()));
        }
    }

    let oriented = raw.iter().filter(|e| e.direction.is_some()).count();
    if oriented != 0 && oriented != raw.len() {
        let missing = raw.iter().find(|e| e.direction.is_none()).unwrap();
        return Err(parse_err(
            missing.line,
            "edge lacks fwd/bwd while other edges are oriented",
        ));
    }

    let network = Network::new(vertex_count, &list).map_err(|err| match err {
        Error::NonPositiveLength { index, length } => {
            parse_err(raw[index].line, format!("non-positive length {length}"))
        }
        other => parse_err(0, other.to_string()),
    })?;
    let orientation = if oriented > 0 {
        let dirs = raw.iter().map(|e| e.direction.unwrap()).collect();
        Some(Orientation::new(&network, dirs)?)
    } else {
        None
    };
    Ok(NetworkFile {
        network,
        labels,
        orientation,
    })
}

/// Serializes with integer vertex names. Lengths use the shortest string that
/// parses back to the same `f64`.
pub fn write_network(net: &Network, orientation: Option<&Orientation>) -> String {
    let mut out = String::new();
    writeln!(out, "vertices {}", net.vertex_count()).unwrap();
    for e in net.edges() {
        write!(out, "edge {} {} {:?}", e.u.0, e.v.0, e.length).unwrap();
        if let Some(o) = orientation {
            let tag = match o.directions()[e.id.0] {
                Direction::Forward => "fwd",
                Direction::Backward => "bwd",
            };
            write!(out, " {tag}").unwrap();
        }
        out.push('\n');
    }
    out
}
