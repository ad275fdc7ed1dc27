//! Immutable weighted digraph in compressed sparse row form, plus the two
//! text formats it can be loaded from.

use std::fmt;
use std::io::{BufRead, BufReader, Read};
use std::str::FromStr;

use thiserror::Error;

pub type VertexId = usize;

/// Reasons a graph can be rejected while being built or parsed.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: vertex id {id} out of range for {n} vertices")]
    VertexOutOfRange { line: usize, id: i64, n: usize },
    #[error("line {line}: edge weight must be finite and positive, got {weight}")]
    NonPositiveWeight { line: usize, weight: String },
    #[error("line {line}: header declares {declared} edges but {found} were given")]
    EdgeCountMismatch {
        line: usize,
        declared: usize,
        found: usize,
    },
    #[error("i/o error while reading graph: {0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    /// `n m` header, then `u v w` lines with 0-based ids, `#` comments.
    EdgeList,
    /// DIMACS shortest-path (`p sp n m`, `a u v w`, 1-based, `c` comments).
    Dimacs,
}

impl GraphFormat {
    /// Guesses the format from the first meaningful line: DIMACS files
    /// start with a `c` or `p` record, edge lists with two integers.
    pub fn sniff(text: &str) -> GraphFormat {
        for line in text.lines() {
            let line = line.trim_start();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            return match line.as_bytes()[0] {
                b'c' | b'p' | b'a' => GraphFormat::Dimacs,
                _ => GraphFormat::EdgeList,
            };
        }
        GraphFormat::EdgeList
    }

    /// Offset between ids as written in this format and internal ids.
    pub fn id_base(self) -> usize {
        match self {
            GraphFormat::EdgeList => 0,
            GraphFormat::Dimacs => 1,
        }
    }
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edgelist" => Ok(GraphFormat::EdgeList),
            "dimacs" => Ok(GraphFormat::Dimacs),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub target: VertexId,
    pub weight: f64,
}

/// Directed graph with strictly positive, finite edge weights.
///
/// Out-edges of each vertex keep the order in which they were supplied.
/// Self-loops and parallel edges are allowed.
#[derive(Clone, PartialEq)]
pub struct Graph {
    offsets: Vec<usize>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph from `(source, target, weight)` triples.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId, f64)>,
    {
        let triples: Vec<_> = edges.into_iter().collect();
        for (i, &(u, v, w)) in triples.iter().enumerate() {
            let line = i + 1;
            for id in [u, v] {
                if id >= n {
                    return Err(GraphError::VertexOutOfRange {
                        line,
                        id: id as i64,
                        n,
                    });
                }
            }
            if !valid_weight(w) {
                return Err(GraphError::NonPositiveWeight {
                    line,
                    weight: w.to_string(),
                });
            }
        }
        Ok(Self::build_unchecked(n, triples))
    }

    fn build_unchecked(n: usize, triples: Vec<(VertexId, VertexId, f64)>) -> Graph {
        let mut offsets = vec![0usize; n + 1];
        for &(u, _, _) in &triples {
            offsets[u + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut edges = vec![
            Edge {
                target: 0,
                weight: 0.0
            };
            triples.len()
        ];
        for (u, v, w) in triples {
            edges[cursor[u]] = Edge {
                target: v,
                weight: w,
            };
            cursor[u] += 1;
        }
        Graph { offsets, edges }
    }

    /// An edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        Graph {
            offsets: vec![0; n + 1],
            edges: Vec::new(),
        }
    }

    pub fn parse<R: Read>(input: R, format: GraphFormat) -> Result<Graph, GraphError> {
        match format {
            GraphFormat::EdgeList => parse_edgelist(input),
            GraphFormat::Dimacs => parse_dimacs(input),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn out_edges(&self, u: VertexId) -> &[Edge] {
        &self.edges[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn out_degree(&self, u: VertexId) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.vertex_count()
    }

    /// All edges as `(source, target, weight)` in CSR order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, f64)> + '_ {
        self.vertices()
            .flat_map(move |u| self.out_edges(u).iter().map(move |e| (u, e.target, e.weight)))
    }

    /// The transpose: every edge `u -> v` becomes `v -> u` with the same weight.
    pub fn reverse(&self) -> Graph {
        let triples = self.edges().map(|(u, v, w)| (v, u, w)).collect();
        Self::build_unchecked(self.vertex_count(), triples)
    }

    /// Writes the graph in the native edge-list format.
    pub fn write_edgelist<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{} {}", self.vertex_count(), self.edge_count())?;
        for (u, v, w) in self.edges() {
            writeln!(out, "{u} {v} {w}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.vertex_count())
            .field("m", &self.edge_count())
            .finish()
    }
}

fn valid_weight(w: f64) -> bool {
    w.is_finite() && w > 0.0
}

struct Lines<R> {
    inner: std::io::Lines<BufReader<R>>,
    number: usize,
}

impl<R: Read> Lines<R> {
    fn new(input: R) -> Self {
        Lines {
            inner: BufReader::new(input).lines(),
            number: 0,
        }
    }

    /// Next line that is neither blank nor a comment, with its 1-based number.
    fn next_record(&mut self, comment: fn(&str) -> bool) -> Result<Option<(usize, String)>, GraphError> {
        for line in self.inner.by_ref() {
            self.number += 1;
            let line = line.map_err(|e| GraphError::Io(e.to_string()))?;
            let trimmed = line.trim();
            if trimmed.is_empty() || comment(trimmed) {
                continue;
            }
            return Ok(Some((self.number, trimmed.to_string())));
        }
        Ok(None)
    }
}

fn malformed(line: usize, reason: impl Into<String>) -> GraphError {
    GraphError::Malformed {
        line,
        reason: reason.into(),
    }
}

fn field<T: FromStr>(line: usize, token: Option<&str>, what: &str) -> Result<T, GraphError> {
    let token = token.ok_or_else(|| malformed(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| malformed(line, format!("cannot parse {what} from `{token}`")))
}

fn vertex(line: usize, raw: i64, base: usize, n: usize) -> Result<VertexId, GraphError> {
    let shifted = raw - base as i64;
    if shifted < 0 || shifted as usize >= n {
        return Err(GraphError::VertexOutOfRange { line, id: raw, n });
    }
    Ok(shifted as usize)
}

fn parse_edgelist<R: Read>(input: R) -> Result<Graph, GraphError> {
    let is_comment = |l: &str| l.starts_with('#');
    let mut lines = Lines::new(input);
    let (header_line, header) = lines
        .next_record(is_comment)?
        .ok_or_else(|| malformed(1, "missing `n m` header"))?;
    let mut tokens = header.split_whitespace();
    let n: usize = field(header_line, tokens.next(), "vertex count")?;
    let m: usize = field(header_line, tokens.next(), "edge count")?;
    if tokens.next().is_some() {
        return Err(malformed(header_line, "trailing tokens after `n m`"));
    }

    let mut triples = Vec::with_capacity(m);
    while let Some((line, record)) = lines.next_record(is_comment)? {
        if triples.len() == m {
            return Err(GraphError::EdgeCountMismatch {
                line,
                declared: m,
                found: m + 1,
            });
        }
        let mut tokens = record.split_whitespace();
        let u = vertex(line, field(line, tokens.next(), "source id")?, 0, n)?;
        let v = vertex(line, field(line, tokens.next(), "target id")?, 0, n)?;
        let raw_weight = tokens
            .next()
            .ok_or_else(|| malformed(line, "missing weight"))?;
        let w: f64 = raw_weight
            .parse()
            .map_err(|_| malformed(line, format!("cannot parse weight from `{raw_weight}`")))?;
        if !valid_weight(w) {
            return Err(GraphError::NonPositiveWeight {
                line,
                weight: raw_weight.to_string(),
            });
        }
        if tokens.next().is_some() {
            return Err(malformed(line, "trailing tokens after `u v w`"));
        }
        triples.push((u, v, w));
    }
    if triples.len() != m {
        return Err(GraphError::EdgeCountMismatch {
            line: header_line,
            declared: m,
            found: triples.len(),
        });
    }
    Ok(Graph::build_unchecked(n, triples))
}

fn parse_dimacs<R: Read>(input: R) -> Result<Graph, GraphError> {
    let is_comment = |l: &str| l.starts_with('c') && (l.len() == 1 || l.as_bytes()[1].is_ascii_whitespace());
    let mut lines = Lines::new(input);
    let mut header: Option<(usize, usize, usize)> = None;
    let mut triples = Vec::new();

    while let Some((line, record)) = lines.next_record(is_comment)? {
        let mut tokens = record.split_whitespace();
        match tokens.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(malformed(line, "duplicate problem line"));
                }
                match tokens.next() {
                    Some("sp") => {}
                    other => {
                        return Err(malformed(
                            line,
                            format!("expected `p sp n m`, got problem type {other:?}"),
                        ))
                    }
                }
                let n: usize = field(line, tokens.next(), "vertex count")?;
                let m: usize = field(line, tokens.next(), "arc count")?;
                if tokens.next().is_some() {
                    return Err(malformed(line, "trailing tokens after `p sp n m`"));
                }
                triples.reserve(m);
                header = Some((line, n, m));
            }
            Some("a") => {
                let (_, n, m) = header.ok_or_else(|| malformed(line, "arc before problem line"))?;
                if triples.len() == m {
                    return Err(GraphError::EdgeCountMismatch {
                        line,
                        declared: m,
                        found: m + 1,
                    });
                }
                let u = vertex(line, field(line, tokens.next(), "tail id")?, 1, n)?;
                let v = vertex(line, field(line, tokens.next(), "head id")?, 1, n)?;
                let raw_weight = tokens
                    .next()
                    .ok_or_else(|| malformed(line, "missing arc length"))?;
                let w: i64 = raw_weight.parse().map_err(|_| {
                    malformed(line, format!("arc length must be an integer, got `{raw_weight}`"))
                })?;
                if w <= 0 {
                    return Err(GraphError::NonPositiveWeight {
                        line,
                        weight: raw_weight.to_string(),
                    });
                }
                if tokens.next().is_some() {
                    return Err(malformed(line, "trailing tokens after `a u v w`"));
                }
                triples.push((u, v, w as f64));
            }
            Some(other) => return Err(malformed(line, format!("unknown record type `{other}`"))),
            None => unreachable!("blank lines are skipped"),
        }
    }

    let (header_line, n, m) = header.ok_or_else(|| malformed(lines.number.max(1), "missing `p sp n m` line"))?;
    if triples.len() != m {
        return Err(GraphError::EdgeCountMismatch {
            line: header_line,
            declared: m,
            found: triples.len(),
        });
    }
    Ok(Graph::build_unchecked(n, triples))
}
