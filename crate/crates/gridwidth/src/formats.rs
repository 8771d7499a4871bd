//! Text file formats: boundary profiles (CSV), vertex orderings, path
//! decompositions and edge-list graphs.
//!
//! Orderings carry coordinates in the caller's axis order; decompositions
//! carry vertex ids of the sorted shape (see [`GridShape::vertex_id`]).

use std::io::{self, BufRead, Write};

use gridwidth_core::certificate::{PathDecomposition, VertexOrdering};
use gridwidth_core::{Graph, GridShape, OracleError, Vertex};
use thiserror::Error;

/// Profiles longer than this are down-sampled unless the full profile is
/// requested.
pub const PROFILE_ROW_LIMIT: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

fn parse_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse { line, msg: msg.into() }
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T, FormatError> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected {what}, found {tok:?}")))
}

/// Non-empty lines with their 1-based line numbers.
fn content_lines<R: BufRead>(r: R) -> impl Iterator<Item = Result<(usize, String), FormatError>> {
    r.lines().enumerate().filter_map(|(i, l)| match l {
        Ok(l) if l.trim().is_empty() => None,
        Ok(l) => Some(Ok((i + 1, l))),
        Err(e) => Some(Err(e.into())),
    })
}

/// Row stride for a profile over `num_vertices` vertices.
pub fn profile_stride(num_vertices: u64, full: bool) -> u64 {
    let rows = num_vertices.saturating_add(1);
    if full || rows <= PROFILE_ROW_LIMIT {
        1
    } else {
        rows.div_ceil(PROFILE_ROW_LIMIT)
    }
}

/// Streams profile rows as CSV, keeping every `stride`-th `k` and always the
/// last one.
pub struct ProfileWriter<W: Write> {
    out: W,
    stride: u64,
    last_k: u64,
}

impl<W: Write> ProfileWriter<W> {
    pub fn new(mut out: W, num_vertices: u64, full: bool) -> io::Result<Self> {
        writeln!(out, "k,boundary")?;
        Ok(Self { out, stride: profile_stride(num_vertices, full), last_k: num_vertices })
    }

    pub fn row(&mut self, k: u64, boundary: u64) -> io::Result<()> {
        if k.is_multiple_of(self.stride) || k == self.last_k {
            writeln!(self.out, "{k},{boundary}")?;
        }
        Ok(())
    }

    pub fn finish(mut self) -> io::Result<W> {
        self.out.flush()?;
        Ok(self.out)
    }
}

pub fn read_profile<R: BufRead>(r: R) -> Result<Vec<(u64, u64)>, FormatError> {
    let mut lines = content_lines(r);
    match lines.next() {
        Some(Ok((_, h))) if h.trim() == "k,boundary" => {}
        Some(Ok((line, _))) => return Err(parse_err(line, "expected header `k,boundary`")),
        Some(Err(e)) => return Err(e),
        None => return Err(FormatError::Invalid("empty profile".into())),
    }
    let mut rows = Vec::new();
    for item in lines {
        let (line, text) = item?;
        let (k, b) = text
            .trim()
            .split_once(',')
            .ok_or_else(|| parse_err(line, "expected `k,boundary`"))?;
        rows.push((parse_num(k, line, "k")?, parse_num(b, line, "boundary")?));
    }
    Ok(rows)
}

pub fn write_ordering<W: Write>(
    mut out: W,
    shape: &GridShape,
    ordering: &VertexOrdering,
) -> Result<(), FormatError> {
    for (rank, &id) in ordering.order().iter().enumerate() {
        let v = shape
            .id_vertex(id as u64)
            .map_err(|e| FormatError::Invalid(e.to_string()))?;
        let user = shape.to_user_order(v.coords());
        write!(out, "{}\t", rank + 1)?;
        write_joined(&mut out, &user)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_ordering<R: BufRead>(r: R, shape: &GridShape) -> Result<VertexOrdering, FormatError> {
    let mut order = Vec::new();
    for item in content_lines(r) {
        let (line, text) = item?;
        let (rank, rest) = split_tab(&text, line)?;
        let rank: usize = parse_num(rank, line, "rank")?;
        if rank != order.len() + 1 {
            return Err(parse_err(line, format!("rank {rank} out of sequence")));
        }
        let coords = rest
            .split_whitespace()
            .map(|t| parse_num(t, line, "coordinate"))
            .collect::<Result<Vec<usize>, _>>()?;
        let v: Vertex = shape
            .from_user_order(&coords)
            .map_err(|e| parse_err(line, e.to_string()))?;
        let id = shape.vertex_id(&v).map_err(|e| parse_err(line, e.to_string()))?;
        order.push(id as usize);
    }
    Ok(VertexOrdering::new(order))
}

pub fn write_decomposition<W: Write>(mut out: W, pd: &PathDecomposition) -> io::Result<()> {
    for (i, bag) in pd.bags().iter().enumerate() {
        write!(out, "{}\t", i + 1)?;
        write_joined(&mut out, bag)?;
    }
    out.flush()
}

pub fn read_decomposition<R: BufRead>(r: R) -> Result<PathDecomposition, FormatError> {
    let mut bags = Vec::new();
    for item in content_lines(r) {
        let (line, text) = item?;
        let (index, rest) = split_tab(&text, line)?;
        let index: usize = parse_num(index, line, "bag index")?;
        if index != bags.len() + 1 {
            return Err(parse_err(line, format!("bag {index} out of sequence")));
        }
        let bag = rest
            .split_whitespace()
            .map(|t| parse_num(t, line, "vertex id"))
            .collect::<Result<Vec<usize>, _>>()?;
        bags.push(bag);
    }
    Ok(PathDecomposition::new(bags))
}

/// Writes `n m` followed by one `u v` line per edge with `u < v`.
pub fn write_graph<W: Write>(mut out: W, g: &Graph) -> io::Result<()> {
    writeln!(out, "{} {}", g.vertex_count(), g.edge_count())?;
    for u in 0..g.vertex_count() {
        for &v in g.neighbors(u).iter().filter(|&&v| v > u) {
            writeln!(out, "{u} {v}")?;
        }
    }
    out.flush()
}

pub fn read_graph<R: BufRead>(r: R) -> Result<Graph, FormatError> {
    let mut lines = content_lines(r);
    let (line, header) = lines
        .next()
        .ok_or_else(|| FormatError::Invalid("empty graph file".into()))??;
    let (n, m) = two_numbers(&header, line, "n m")?;
    let mut edges = Vec::with_capacity(m);
    for item in lines {
        let (line, text) = item?;
        edges.push(two_numbers(&text, line, "u v")?);
    }
    if edges.len() != m {
        return Err(FormatError::Invalid(format!(
            "header announces {m} edges, file lists {}",
            edges.len()
        )));
    }
    Graph::from_edges(n, &edges).map_err(|e: OracleError| FormatError::Invalid(e.to_string()))
}

fn two_numbers(text: &str, line: usize, what: &str) -> Result<(usize, usize), FormatError> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    let [a, b] = toks[..] else {
        return Err(parse_err(line, format!("expected `{what}`")));
    };
    Ok((parse_num(a, line, "integer")?, parse_num(b, line, "integer")?))
}

fn split_tab(text: &str, line: usize) -> Result<(&str, &str), FormatError> {
    text.split_once('\t')
        .ok_or_else(|| parse_err(line, "expected a tab after the index"))
}

fn write_joined<W: Write>(out: &mut W, xs: &[usize]) -> io::Result<()> {
    let mut sep = "";
    for x in xs {
        write!(out, "{sep}{x}")?;
        sep = " ";
    }
    writeln!(out)
}
