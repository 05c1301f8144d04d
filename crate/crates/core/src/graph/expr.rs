//! Graph expressions (`lex(path:4,cycle:5)`) and the plain edge-list file format.

use std::fmt;
use std::path::PathBuf;

use super::Graph;
use crate::error::{Error, Result};

/// Parsed graph expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphExpr {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Star(usize),
    Empty(usize),
    Lex(Box<GraphExpr>, Box<GraphExpr>),
    Union(Box<GraphExpr>, Box<GraphExpr>),
    File(PathBuf),
}

impl GraphExpr {
    pub fn build(&self) -> Result<Graph> {
        let g = match self {
            GraphExpr::Path(m) => Graph::path(*m)?,
            GraphExpr::Cycle(n) => Graph::cycle(*n)?,
            GraphExpr::Complete(n) => Graph::complete(*n),
            GraphExpr::Star(n) => Graph::star(*n)?,
            GraphExpr::Empty(n) => Graph::empty_graph(*n),
            GraphExpr::Lex(a, b) => a.build()?.lex_product(&b.build()?),
            GraphExpr::Union(a, b) => a.build()?.disjoint_union(&b.build()?),
            GraphExpr::File(p) => parse_edge_list(&std::fs::read_to_string(p)?)?,
        };
        Ok(g.with_label(self.to_string()))
    }

    /// Precondition checks that do not need the graph to be built.
    fn validate(&self, position: usize) -> Result<()> {
        match self {
            GraphExpr::Path(0) => Err(Error::parse(position, "path needs at least one vertex")),
            GraphExpr::Star(0) => Err(Error::parse(position, "star needs at least one vertex")),
            GraphExpr::Cycle(n) if *n < 3 => Err(Error::parse(
                position,
                format!("cycle needs at least 3 vertices, got {n}"),
            )),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GraphExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphExpr::Path(n) => write!(f, "path:{n}"),
            GraphExpr::Cycle(n) => write!(f, "cycle:{n}"),
            GraphExpr::Complete(n) => write!(f, "complete:{n}"),
            GraphExpr::Star(n) => write!(f, "star:{n}"),
            GraphExpr::Empty(n) => write!(f, "empty:{n}"),
            GraphExpr::Lex(a, b) => write!(f, "lex({a},{b})"),
            GraphExpr::Union(a, b) => write!(f, "union({a},{b})"),
            GraphExpr::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl std::str::FromStr for GraphExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph_expr(s)
    }
}

/// Parses a graph expression. Whitespace is ignored around tokens.
pub fn parse_graph_expr(input: &str) -> Result<GraphExpr> {
    let mut p = Parser { src: input, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != input.len() {
        return Err(Error::parse(p.pos, "trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{token}'")))
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(Error::parse(self.pos, "expected an integer"));
        }
        let start = self.pos;
        self.pos += digits;
        self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(start, "integer out of range"))
    }

    fn expr(&mut self) -> Result<GraphExpr> {
        self.skip_ws();
        let start = self.pos;
        for (kw, lex) in [("lex(", true), ("union(", false)] {
            if self.eat(kw) {
                let a = self.expr()?;
                self.expect(",")?;
                let b = self.expr()?;
                self.expect(")")?;
                let (a, b) = (Box::new(a), Box::new(b));
                return Ok(if lex {
                    GraphExpr::Lex(a, b)
                } else {
                    GraphExpr::Union(a, b)
                });
            }
        }
        if self.eat("file:") {
            let len = self.rest().find([',', ')']).unwrap_or(self.rest().len());
            let path = PathBuf::from(self.rest()[..len].trim());
            if path.as_os_str().is_empty() {
                return Err(Error::parse(self.pos, "expected a file path"));
            }
            self.pos += len;
            return Ok(GraphExpr::File(path));
        }
        type Ctor = fn(usize) -> GraphExpr;
        let families: [(&str, Ctor); 5] = [
            ("path:", GraphExpr::Path),
            ("cycle:", GraphExpr::Cycle),
            ("complete:", GraphExpr::Complete),
            ("star:", GraphExpr::Star),
            ("empty:", GraphExpr::Empty),
        ];
        for (kw, ctor) in families {
            if self.eat(kw) {
                let e = ctor(self.int()?);
                e.validate(start)?;
                return Ok(e);
            }
        }
        Err(Error::parse(
            start,
            "expected path:, cycle:, complete:, star:, empty:, lex(, union( or file:",
        ))
    }
}

/// Parses the edge-list format: a header line `n m` followed by `m` lines `u v`.
/// Blank lines and `#` comments are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let pair = |lineno: usize, l: &str| -> Result<(usize, usize)> {
        let nums: Vec<&str> = l.split_whitespace().collect();
        let bad = || {
            Error::parse(
                lineno,
                format!("line {lineno}: expected two integers, got '{l}'"),
            )
        };
        if nums.len() != 2 {
            return Err(bad());
        }
        Ok((
            nums[0].parse().map_err(|_| bad())?,
            nums[1].parse().map_err(|_| bad())?,
        ))
    };
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "missing 'n m' header"))?;
    let (n, m) = pair(lineno, header)?;
    let edges = lines.map(|(i, l)| pair(i, l)).collect::<Result<Vec<_>>>()?;
    if edges.len() != m {
        return Err(Error::parse(
            0,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    Graph::from_edges(n, edges)
}

/// Renders `n m` followed by one `u v` line per edge (`u < v`, lexicographic order).
pub fn write_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.vertex_count(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_expressions() {
        let e = parse_graph_expr("lex(path:2, complete:2)").unwrap();
        assert_eq!(e.to_string(), "lex(path:2,complete:2)");
        let g = e.build().unwrap();
        assert_eq!(g, Graph::complete(4));
        assert_eq!(g.label(), Some("lex(path:2,complete:2)"));

        let u = parse_graph_expr("union(star:3,empty:2)")
            .unwrap()
            .build()
            .unwrap();
        assert_eq!((u.vertex_count(), u.edge_count()), (5, 2));
    }

    #[test]
    fn reports_error_positions() {
        match parse_graph_expr("cycle:2") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 0),
            other => panic!("unexpected {other:?}"),
        }
        match parse_graph_expr("lex(path:2;path:3)") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 10),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_graph_expr("path:3 x").is_err());
        assert!(parse_graph_expr("torus:3").is_err());
    }

    #[test]
    fn edge_list_format() {
        let text = "# a path\n3 2\n\n0 1\n1 2 # tail comment\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g, Graph::path(3).unwrap());
        assert_eq!(write_edge_list(&g), "3 2\n0 1\n1 2\n");
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("2 1\n0 0\n").is_err());
        assert!(parse_edge_list("2 1\n0 5\n").is_err());
    }

    #[test]
    fn file_expression_reads_edge_list() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.txt");
        std::fs::write(&path, "4 3\n0 1\n1 2\n2 3\n").unwrap();
        let e = parse_graph_expr(&format!("lex(file:{},path:1)", path.display())).unwrap();
        assert_eq!(e.build().unwrap(), Graph::path(4).unwrap());
    }
}
