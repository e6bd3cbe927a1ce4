//! Plain-text formats. Blank lines and lines starting with `#` are ignored
//! everywhere; tokens are separated by whitespace.
//!
//! * tree: `n`, then `n - 1` lines `u v`
//! * alpha: `n` lines `node value`, value may be `-inf`
//! * system: `k`, `k` tree blocks, `m`, then `m` lines of `k` node ids
//! * embedding: header `mode quality [param]` followed by a system block
//!   (`mode` is `system`, `cartesian` or `strong`; `quality` is `exact`,
//!   `distortion a` or `stretch b`)
//! * graph: `n m`, then `m` lines `u v`
//! * subset queries: one line per query, `k u_1 .. u_k b_1 .. b_k`
//! * points: one line of `k` node ids per query

use std::fmt::{self, Write as _};
use std::str::FromStr;

use tree_ecc::{Embedding, EmbeddingMode, Graph, NodeId, Quality, Tree, TreeSystem, Weight};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line number, 0 for end of input.
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "end of input: {}", self.msg)
        } else {
            write!(f, "line {}: {}", self.line, self.msg)
        }
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, msg: msg.into() })
}

/// Meaningful lines with their numbers.
pub struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    pub fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate() }
    }

    fn next_line(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), ParseError> {
        self.next().ok_or_else(|| ParseError { line: 0, msg: format!("expected {what}") })
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        match self.next() {
            Some((line, _)) => err(line, "unexpected trailing content"),
            None => Ok(()),
        }
    }
}

impl<'a> Iterator for Lines<'a> {
    type Item = (usize, Vec<&'a str>);

    fn next(&mut self) -> Option<Self::Item> {
        for (i, l) in self.inner.by_ref() {
            let l = l.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            return Some((i + 1, l.split_whitespace().collect()));
        }
        None
    }
}

fn num<T: FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ParseError> {
    tok.parse().or_else(|_| err(line, format!("invalid {what} `{tok}`")))
}

fn arity(line: usize, toks: &[&str], want: usize, what: &str) -> Result<(), ParseError> {
    if toks.len() != want {
        return err(line, format!("expected {want} {what}, got {}", toks.len()));
    }
    Ok(())
}

/// Finite numbers or `-inf`.
pub fn parse_weight(line: usize, tok: &str) -> Result<Weight, ParseError> {
    let w: f64 = num(line, tok, "weight")?;
    if w.is_nan() || w == f64::INFINITY {
        return err(line, format!("weight `{tok}` must be finite or -inf"));
    }
    Ok(w)
}

fn count(lines: &mut Lines, what: &str) -> Result<(usize, usize), ParseError> {
    let (line, toks) = lines.next_line(what)?;
    arity(line, &toks, 1, "value")?;
    Ok((line, num(line, toks[0], what)?))
}

fn edge_lines(
    lines: &mut Lines,
    m: usize,
) -> Result<(Vec<(u64, u64)>, Vec<usize>), ParseError> {
    let mut edges = Vec::with_capacity(m);
    let mut at = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, toks) = lines.next_line("an edge line")?;
        arity(line, &toks, 2, "node ids")?;
        edges.push((num(line, toks[0], "node id")?, num(line, toks[1], "node id")?));
        at.push(line);
    }
    Ok((edges, at))
}

fn read_tree(lines: &mut Lines) -> Result<Tree, ParseError> {
    use tree_ecc::tree::TreeError as E;
    let (head, n) = count(lines, "node count")?;
    if n == 0 {
        return err(head, "a tree needs at least one node");
    }
    let (edges, at) = edge_lines(lines, n - 1)?;
    Tree::from_edges(n, &edges).map_err(|e| {
        let line = match e {
            E::OutOfRange { edge, .. }
            | E::SelfLoop { edge, .. }
            | E::DuplicateEdge { edge, .. }
            | E::Cycle { edge, .. } => at[edge],
            _ => head,
        };
        ParseError { line, msg: e.to_string() }
    })
}

pub fn parse_tree(text: &str) -> Result<Tree, ParseError> {
    let mut lines = Lines::new(text);
    let t = read_tree(&mut lines)?;
    lines.expect_end()?;
    Ok(t)
}

pub fn parse_alpha(text: &str, n: usize) -> Result<Vec<Weight>, ParseError> {
    let mut alpha: Vec<Option<Weight>> = vec![None; n];
    for (line, toks) in Lines::new(text) {
        arity(line, &toks, 2, "fields")?;
        let v: usize = num(line, toks[0], "node id")?;
        if v >= n {
            return err(line, format!("node {v} out of range for {n} nodes"));
        }
        if alpha[v].is_some() {
            return err(line, format!("node {v} given twice"));
        }
        alpha[v] = Some(parse_weight(line, toks[1])?);
    }
    alpha
        .iter()
        .enumerate()
        .map(|(v, a)| a.ok_or_else(|| ParseError { line: 0, msg: format!("no value for node {v}") }))
        .collect()
}

fn point_line(line: usize, toks: &[&str], sys: &TreeSystem) -> Result<Vec<NodeId>, ParseError> {
    arity(line, toks, sys.k(), "node ids")?;
    let p = toks
        .iter()
        .map(|t| num(line, t, "node id"))
        .collect::<Result<Vec<NodeId>, _>>()?;
    sys.check_point(&p, None).map_err(|e| ParseError { line, msg: e.to_string() })?;
    Ok(p)
}

fn read_system(lines: &mut Lines) -> Result<(TreeSystem, Vec<Vec<NodeId>>), ParseError> {
    let (head, k) = count(lines, "tree count")?;
    if k == 0 {
        return err(head, "a system needs at least one tree");
    }
    let trees = (0..k).map(|_| read_tree(lines)).collect::<Result<Vec<_>, _>>()?;
    let sys = TreeSystem::new(trees).expect("nonempty system");
    let (_, m) = count(lines, "point count")?;
    let mut pts = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, toks) = lines.next_line("a point line")?;
        pts.push(point_line(line, &toks, &sys)?);
    }
    Ok((sys, pts))
}

pub fn parse_system(text: &str) -> Result<(TreeSystem, Vec<Vec<NodeId>>), ParseError> {
    let mut lines = Lines::new(text);
    let r = read_system(&mut lines)?;
    lines.expect_end()?;
    Ok(r)
}

/// Query points for a system with `sys.k()` trees.
pub fn parse_points(text: &str, sys: &TreeSystem) -> Result<Vec<Vec<NodeId>>, ParseError> {
    Lines::new(text).map(|(line, toks)| point_line(line, &toks, sys)).collect()
}

pub fn mode_name(m: EmbeddingMode) -> &'static str {
    match m {
        EmbeddingMode::System => "system",
        EmbeddingMode::Cartesian => "cartesian",
        EmbeddingMode::Strong => "strong",
    }
}

pub fn parse_mode(s: &str) -> Option<EmbeddingMode> {
    match s {
        "system" => Some(EmbeddingMode::System),
        "cartesian" => Some(EmbeddingMode::Cartesian),
        "strong" => Some(EmbeddingMode::Strong),
        _ => None,
    }
}

pub fn parse_embedding(text: &str) -> Result<Embedding, ParseError> {
    let mut lines = Lines::new(text);
    let (line, toks) = lines.next_line("an embedding header")?;
    let mode = toks
        .first()
        .and_then(|m| parse_mode(m))
        .ok_or_else(|| ParseError { line, msg: "header must start with system, cartesian or strong".into() })?;
    let quality = match toks.get(1..) {
        Some(["exact"]) => Quality::Exact,
        Some(["distortion", a]) => {
            let a: f64 = num(line, a, "distortion")?;
            if !(a.is_finite() && a >= 1.0) {
                return err(line, "distortion must be a finite number >= 1");
            }
            Quality::Distortion(a)
        }
        Some(["stretch", b]) => {
            let b: f64 = num(line, b, "stretch")?;
            if !(b.is_finite() && b >= 0.0) {
                return err(line, "stretch must be a finite number >= 0");
            }
            Quality::Stretch(b)
        }
        _ => return err(line, "quality must be `exact`, `distortion a` or `stretch b`"),
    };
    let (sys, pts) = read_system(&mut lines)?;
    lines.expect_end()?;
    Embedding::new(sys, pts, mode, quality).map_err(|e| ParseError { line: 0, msg: e.to_string() })
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    use tree_ecc::GraphError as E;
    let mut lines = Lines::new(text);
    let (head, toks) = lines.next_line("a graph header")?;
    arity(head, &toks, 2, "header fields")?;
    let n: usize = num(head, toks[0], "vertex count")?;
    let m: usize = num(head, toks[1], "edge count")?;
    let (edges, at) = edge_lines(&mut lines, m)?;
    lines.expect_end()?;
    Graph::from_edges(n, &edges).map_err(|e| {
        let line = match e {
            E::OutOfRange { edge, .. } | E::SelfLoop { edge, .. } | E::DuplicateEdge { edge, .. } => {
                at[edge]
            }
            _ => head,
        };
        ParseError { line, msg: e.to_string() }
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubsetQuery {
    pub line: usize,
    pub nodes: Vec<NodeId>,
    pub beta: Vec<Weight>,
}

pub fn parse_queries(text: &str, n: usize) -> Result<Vec<SubsetQuery>, ParseError> {
    Lines::new(text)
        .map(|(line, toks)| {
            let k: usize = num(line, toks[0], "query size")?;
            if k == 0 {
                return err(line, "query set is empty");
            }
            arity(line, &toks[1..], 2 * k, "fields after the size")?;
            let nodes = toks[1..=k]
                .iter()
                .map(|t| {
                    let v: NodeId = num(line, t, "node id")?;
                    if v as usize >= n {
                        return err(line, format!("node {v} out of range for {n} nodes"));
                    }
                    Ok(v)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let beta = toks[k + 1..]
                .iter()
                .map(|t| {
                    let b: f64 = num(line, t, "beta")?;
                    if !b.is_finite() {
                        return err(line, format!("beta `{t}` must be finite"));
                    }
                    Ok(b)
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(SubsetQuery { line, nodes, beta })
        })
        .collect()
}

/// Shortest form that reads back to the same value.
pub fn fmt_weight(w: Weight) -> String {
    if w == f64::NEG_INFINITY {
        "-inf".into()
    } else if w == f64::INFINITY {
        "inf".into()
    } else {
        format!("{w}")
    }
}

fn push_tree(out: &mut String, t: &Tree) {
    let _ = writeln!(out, "{}", t.node_count());
    for (u, v) in t.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
}

pub fn write_tree(t: &Tree) -> String {
    let mut out = String::new();
    push_tree(&mut out, t);
    out
}

pub fn write_alpha(alpha: &[Weight]) -> String {
    let mut out = String::new();
    for (v, &a) in alpha.iter().enumerate() {
        let _ = writeln!(out, "{v} {}", fmt_weight(a));
    }
    out
}

fn push_system(out: &mut String, sys: &TreeSystem, pts: &[Vec<NodeId>]) {
    let _ = writeln!(out, "{}", sys.k());
    for t in sys.trees() {
        push_tree(out, t);
    }
    let _ = writeln!(out, "{}", pts.len());
    for p in pts {
        let line: Vec<String> = p.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
}

pub fn write_system(sys: &TreeSystem, pts: &[Vec<NodeId>]) -> String {
    let mut out = String::new();
    push_system(&mut out, sys, pts);
    out
}

pub fn write_embedding(emb: &Embedding) -> String {
    let mut out = String::new();
    let q = match emb.quality {
        Quality::Exact => "exact".to_string(),
        Quality::Distortion(a) => format!("distortion {a}"),
        Quality::Stretch(b) => format!("stretch {b}"),
    };
    let _ = writeln!(out, "{} {q}", mode_name(emb.mode));
    push_system(&mut out, &emb.system, &emb.points);
    out
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.node_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn write_queries(qs: &[(Vec<NodeId>, Vec<Weight>)]) -> String {
    let mut out = String::new();
    for (u, b) in qs {
        let _ = write!(out, "{}", u.len());
        for x in u {
            let _ = write!(out, " {x}");
        }
        for &x in b {
            let _ = write!(out, " {}", fmt_weight(x));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_errors_name_lines() {
        let e = parse_tree("3\n0 1\n# comment\n\n1 1\n").unwrap_err();
        assert_eq!(e.line, 5);
        let e = parse_tree("3\n0 1\n").unwrap_err();
        assert_eq!(e.line, 0);
        let e = parse_tree("2\n0 x\n").unwrap_err();
        assert_eq!((e.line, e.msg.as_str()), (2, "invalid node id `x`"));
        assert_eq!(parse_tree("1\n").unwrap().node_count(), 1);
    }

    #[test]
    fn alpha_values() {
        let a = parse_alpha("1 -inf\n0 2.5\n", 2).unwrap();
        assert_eq!(a, vec![2.5, f64::NEG_INFINITY]);
        assert_eq!(parse_alpha("0 inf\n", 1).unwrap_err().line, 1);
        assert_eq!(parse_alpha("0 nan\n", 1).unwrap_err().line, 1);
        assert!(parse_alpha("0 1\n", 2).is_err());
        assert_eq!(parse_alpha("0 1\n0 2\n", 2).unwrap_err().line, 2);
    }

    #[test]
    fn system_arity_mismatch() {
        let text = "2\n2\n0 1\n1\n2\n0 0\n1\n";
        let e = parse_system(text).unwrap_err();
        assert_eq!(e.line, 7);
        assert!(e.msg.contains("expected 2"));
        let e = parse_system("1\n2\n0 1\n1\n2\n").unwrap_err();
        assert_eq!(e.line, 5);
    }

    #[test]
    fn embedding_header() {
        let emb = parse_embedding("strong stretch 1.5\n1\n2\n0 1\n2\n0\n1\n").unwrap();
        assert_eq!(emb.mode, EmbeddingMode::Strong);
        assert_eq!(emb.quality, Quality::Stretch(1.5));
        assert_eq!(parse_embedding(&write_embedding(&emb)).unwrap().points, emb.points);
        assert_eq!(parse_embedding("ring exact\n").unwrap_err().line, 1);
        assert_eq!(parse_embedding("system distortion 0.5\n").unwrap_err().line, 1);
    }

    #[test]
    fn graph_and_queries() {
        let g = parse_graph("4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(parse_graph("3 2\n0 1\n0 1\n").unwrap_err().line, 3);
        assert_eq!(parse_graph("3 1\n0 1\n").unwrap_err().line, 1);
        let q = parse_queries("2 0 3 0.5 -1\n", 4).unwrap();
        assert_eq!(q[0].nodes, vec![0, 3]);
        assert_eq!(q[0].beta, vec![0.5, -1.0]);
        assert_eq!(parse_queries("\n1 4 0\n", 4).unwrap_err().line, 2);
        assert!(parse_queries("2 0 1 0\n", 4).is_err());
        assert!(parse_queries("1 0 -inf\n", 4).is_err());
    }
}
