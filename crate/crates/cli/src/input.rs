//! Line-oriented input formats.
//!
//! ```text
//! # comments run to the end of the line
//! graph 4 3          # kind n [m]; m is the edge count and only graphs take it
//! labels a b c d     # optional, right after the header
//! 0 1
//! 1 2
//! 2 3
//! ```
//!
//! `tournament n` is followed by an `n x n` 0/1 matrix with a zero diagonal.
//! `twostructure n` and `relation n` take an `n x n` matrix of color or class
//! ids; their diagonal is ignored and may be written `-`.

use std::fmt;

use umod_core::{
    GroundSet, HomogeneousRelation, StandardRelation, Tournament, TwoStructure, UndirectedGraph,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Graph,
    Tournament,
    TwoStructure,
    Relation,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Graph => "graph",
            Kind::Tournament => "tournament",
            Kind::TwoStructure => "twostructure",
            Kind::Relation => "relation",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Structure {
    Graph(UndirectedGraph),
    Tournament(Tournament),
    TwoStructure(TwoStructure),
    Relation(HomogeneousRelation),
}

#[derive(Debug, Clone)]
pub struct InputDocument {
    pub kind: Kind,
    pub structure: Structure,
    pub source: String,
}

impl InputDocument {
    pub fn relation(&self) -> HomogeneousRelation {
        match &self.structure {
            Structure::Graph(g) => g.standard_relation(),
            Structure::Tournament(t) => t.standard_relation(),
            Structure::TwoStructure(s) => s.standard_relation(),
            Structure::Relation(h) => h.clone(),
        }
    }
}

struct Token<'a> {
    line: usize,
    column: usize,
    text: &'a str,
}

impl Token<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.column, message: message.into() }
    }
}

/// Non-empty lines with their tokens, comments removed. Columns count
/// characters from 1.
fn tokenize(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (col, (byte, ch)) in body.char_indices().chain([(body.len(), ' ')]).enumerate() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some((col, byte)),
                (true, Some((c, b))) => {
                    tokens.push(Token { line: i + 1, column: c + 1, text: &body[b..byte] });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            lines.push(tokens);
        }
    }
    lines
}

fn number(tok: &Token<'_>, what: &str) -> Result<usize, ParseError> {
    tok.text.parse().map_err(|_| tok.error(format!("expected {what}, found {:?}", tok.text)))
}

fn vertex(tok: &Token<'_>, n: usize) -> Result<usize, ParseError> {
    let v = number(tok, "a vertex id")?;
    if v >= n {
        return Err(tok.error(format!("id {v} out of range for n = {n}")));
    }
    Ok(v)
}

struct Cursor<'a> {
    lines: std::vec::IntoIter<Vec<Token<'a>>>,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    fn next_line(&mut self, expected: &str) -> Result<Vec<Token<'a>>, ParseError> {
        match self.lines.next() {
            Some(l) => {
                self.last_line = l[0].line;
                Ok(l)
            }
            None => Err(ParseError {
                line: self.last_line + 1,
                column: 1,
                message: format!("unexpected end of input, expected {expected}"),
            }),
        }
    }

    fn finish(mut self) -> Result<(), ParseError> {
        match self.lines.next() {
            Some(l) => Err(l[0].error("unexpected content after the structure")),
            None => Ok(()),
        }
    }
}

pub fn parse_input(text: &str, source: &str) -> Result<InputDocument, ParseError> {
    let mut cur = Cursor { lines: tokenize(text).into_iter(), last_line: 0 };
    let header = cur.next_line("a header `kind n [m]`")?;
    let kind = match header[0].text {
        "graph" => Kind::Graph,
        "tournament" => Kind::Tournament,
        "twostructure" => Kind::TwoStructure,
        "relation" => Kind::Relation,
        other => return Err(header[0].error(format!("malformed header: unknown kind {other:?}"))),
    };
    let arity = if kind == Kind::Graph { 3 } else { 2 };
    if header.len() != arity {
        let at = header.get(arity).unwrap_or(header.last().unwrap());
        let shape = if kind == Kind::Graph { "graph n m" } else { "kind n" };
        return Err(at.error(format!("malformed header: expected `{shape}`")));
    }
    let n = number(&header[1], "the element count")?;
    if n == 0 {
        return Err(header[1].error("malformed header: n must be at least 1"));
    }

    let mut pending = None;
    let mut ground = None;
    if let Some(line) = cur.lines.next() {
        if line[0].text == "labels" {
            cur.last_line = line[0].line;
            ground = Some(labels(&line, n)?);
        } else {
            pending = Some(line);
        }
    }
    let mut next = |expected: &str| match pending.take() {
        Some(l) => {
            cur.last_line = l[0].line;
            Ok(l)
        }
        None => cur.next_line(expected),
    };

    let structure = match kind {
        Kind::Graph => {
            let m = number(&header[2], "the edge count")?;
            let mut adj = vec![false; n * n];
            for _ in 0..m {
                let line = next("an edge `u v`")?;
                if line.len() != 2 {
                    return Err(line[0].error("expected an edge `u v`"));
                }
                let (u, v) = (vertex(&line[0], n)?, vertex(&line[1], n)?);
                if u == v {
                    return Err(line[1].error(format!("self-loop on {u}")));
                }
                if adj[u * n + v] {
                    return Err(line[0].error(format!("duplicate edge {u} {v}")));
                }
                adj[u * n + v] = true;
                adj[v * n + u] = true;
            }
            Structure::Graph(UndirectedGraph::from_matrix(n, adj).expect("validated while parsing"))
        }
        Kind::Tournament => {
            let rows = matrix(&mut next, n, false)?;
            let mut beats = vec![false; n * n];
            for (i, row) in rows.iter().enumerate() {
                for (j, tok) in row.iter().enumerate() {
                    beats[i * n + j] = match tok.text {
                        "0" => false,
                        "1" => true,
                        _ => return Err(tok.error(format!("expected 0 or 1, found {:?}", tok.text))),
                    };
                }
                if beats[i * n + i] {
                    return Err(row[i].error("diagonal must be 0"));
                }
                for j in 0..i {
                    if beats[i * n + j] == beats[j * n + i] {
                        return Err(row[j].error(format!(
                            "asymmetric tournament row: pair ({j}, {i}) needs exactly one arc"
                        )));
                    }
                }
            }
            Structure::Tournament(Tournament::from_matrix(n, beats).expect("validated while parsing"))
        }
        Kind::TwoStructure | Kind::Relation => {
            let rows = matrix(&mut next, n, true)?;
            let mut ids = vec![0u32; n * n];
            for (i, row) in rows.iter().enumerate() {
                for (j, tok) in row.iter().enumerate() {
                    if i == j && tok.text == "-" {
                        continue;
                    }
                    ids[i * n + j] = tok.text.parse().map_err(|_| {
                        tok.error(format!("expected a non-negative class id, found {:?}", tok.text))
                    })?;
                }
            }
            if kind == Kind::Relation {
                Structure::Relation(HomogeneousRelation::from_classes(n, &ids).expect("shape checked"))
            } else {
                Structure::TwoStructure(TwoStructure::from_matrix(n, ids).expect("shape checked"))
            }
        }
    };
    cur.finish()?;

    let structure = match ground {
        None => structure,
        Some(g) => match structure {
            Structure::Graph(s) => Structure::Graph(s.with_ground(g).expect("label count checked")),
            Structure::Tournament(s) => Structure::Tournament(s.with_ground(g).expect("label count checked")),
            Structure::TwoStructure(s) => {
                Structure::TwoStructure(s.with_ground(g).expect("label count checked"))
            }
            Structure::Relation(s) => Structure::Relation(s.with_ground(g).expect("label count checked")),
        },
    };
    Ok(InputDocument { kind, structure, source: source.to_string() })
}

fn labels(line: &[Token<'_>], n: usize) -> Result<GroundSet, ParseError> {
    let names: Vec<String> = line[1..].iter().map(|t| t.text.to_string()).collect();
    if names.len() != n {
        let at = line.get(n + 1).unwrap_or(line.last().unwrap());
        return Err(at.error(format!("expected {n} labels, found {}", names.len())));
    }
    for (i, tok) in line[1..].iter().enumerate() {
        if names[..i].contains(&names[i]) {
            return Err(tok.error(format!("duplicate label {:?}", tok.text)));
        }
    }
    Ok(GroundSet::with_labels(names).expect("labels checked"))
}

fn matrix<'a>(
    next: &mut impl FnMut(&str) -> Result<Vec<Token<'a>>, ParseError>,
    n: usize,
    dash_diagonal: bool,
) -> Result<Vec<Vec<Token<'a>>>, ParseError> {
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let row = next(&format!("matrix row {i}"))?;
        if row.len() != n {
            let at = row.get(n).unwrap_or(row.last().unwrap());
            return Err(at.error(format!("row {i} has {} entries, expected {n}", row.len())));
        }
        if !dash_diagonal {
            if let Some(tok) = row.iter().find(|t| t.text == "-") {
                return Err(tok.error("`-` is not allowed in a tournament matrix"));
            }
        }
        rows.push(row);
    }
    Ok(rows)
}
