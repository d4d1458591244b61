//! Textual graph descriptions.
//!
//! ```text
//! spec     := "edges:" INT ";" pairlist | "g6:" GRAPH6 | family
//! pairlist := pair ("," pair)* | ""         pair := INT "-" INT ["!"]
//! family   := "complete:" INT | "cycle:" INT | "path:" INT | "star:" INT
//!           | "kbip:" INT "," INT | "prufer:" [INT ("," INT)*]
//!           | "compl:" spec "@" INT
//!           | "wedge:" spec "@" INT "+" spec "@" INT
//!           | "union:" spec "+" spec
//! ```
//!
//! A trailing `!` marks a reflection edge. Nested specs are parsed greedily;
//! a graph6 body is exactly as long as its size byte demands, so `@` inside
//! graph6 data is unambiguous.

use super::{family, graph6, parse_graph6, Graph, MaterializedGraph};
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::SpecParse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.fail(format!("expected `{tok}`"))
        }
    }

    fn peek_digit(&self) -> bool {
        self.rest().starts_with(|c: char| c.is_ascii_digit())
    }

    fn int(&mut self) -> Result<usize> {
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return self.fail("expected an integer");
        }
        let value = self.rest()[..len].parse().or_else(|_| self.fail("integer too large"))?;
        self.pos += len;
        Ok(value)
    }

    fn ints(&mut self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        if !self.peek_digit() {
            return Ok(out);
        }
        out.push(self.int()?);
        while self.rest().starts_with(',') && self.rest()[1..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
            out.push(self.int()?);
        }
        Ok(out)
    }

    fn at<T>(&self, start: usize, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            e @ Error::SpecParse { .. } => e,
            other => Error::SpecParse {
                pos: start,
                msg: other.to_string(),
            },
        })
    }

    fn spec(&mut self) -> Result<MaterializedGraph> {
        let start = self.pos;
        if self.eat("edges:") {
            let n = self.int()?;
            self.expect(";")?;
            let mut edges = Vec::new();
            let mut reflect = Vec::new();
            if self.peek_digit() {
                loop {
                    let a = self.int()?;
                    self.expect("-")?;
                    let b = self.int()?;
                    edges.push((a, b));
                    if self.eat("!") {
                        reflect.push((a, b));
                    }
                    if !(self.rest().starts_with(',') && self.rest()[1..].starts_with(|c: char| c.is_ascii_digit())) {
                        break;
                    }
                    self.pos += 1;
                }
            }
            let g = self.at(start, Graph::from_edges(n, &edges))?;
            return self.at(start, MaterializedGraph::new(g, &reflect));
        }
        if self.eat("g6:") {
            let rest = self.rest().as_bytes();
            let Some(&head) = rest.first() else {
                return self.fail("missing graph6 data");
            };
            if !(63..126).contains(&head) {
                return self.at(start, parse_graph6(&self.rest()[..1]).map(MaterializedGraph::from));
            }
            let n = (head - 63) as usize;
            let len = 1 + (n * n.saturating_sub(1) / 2).div_ceil(6);
            if rest.len() < len {
                return self.fail("truncated graph6 data");
            }
            let text = &self.rest()[..len];
            let g = self.at(start, graph6::parse_graph6(text))?;
            self.pos += len;
            return Ok(g.into());
        }
        if self.eat("compl:") {
            let inner = self.spec()?;
            self.expect("@")?;
            let n = self.int()?;
            if !inner.is_refraction_only() {
                return self.fail("compl: operand must not have reflection edges");
            }
            return self.at(start, inner.graph().compl_n(n).map(Into::into));
        }
        if self.eat("wedge:") {
            let g1 = self.spec()?;
            self.expect("@")?;
            let v1 = self.int()?;
            self.expect("+")?;
            let g2 = self.spec()?;
            self.expect("@")?;
            let v2 = self.int()?;
            return self.at(start, g1.wedge(v1, &g2, v2));
        }
        if self.eat("union:") {
            let g1 = self.spec()?;
            self.expect("+")?;
            let g2 = self.spec()?;
            return self.at(start, g1.disjoint_union(&g2));
        }
        for name in ["complete", "cycle", "path", "star", "kbip", "prufer"] {
            if self.rest().starts_with(name) && self.rest()[name.len()..].starts_with(':') {
                self.pos += name.len() + 1;
                let params = self.ints()?;
                return self.at(start, family(name, &params).map(Into::into));
            }
        }
        self.fail(
            "expected one of edges:, g6:, complete:, cycle:, path:, star:, kbip:, prufer:, compl:, wedge:, union:",
        )
    }
}

pub fn parse_spec(text: &str) -> Result<MaterializedGraph> {
    let mut p = Parser {
        src: text.trim(),
        pos: 0,
    };
    let g = p.spec()?;
    if p.pos != p.src.len() {
        return p.fail("trailing input");
    }
    Ok(g)
}

/// Canonical `edges:` form; reflection edges carry a trailing `!`.
pub fn print_spec(m: &MaterializedGraph) -> String {
    let pairs: Vec<String> = m
        .graph()
        .edges()
        .map(|(a, b)| {
            let bang = if m.is_reflect(a, b) { "!" } else { "" };
            format!("{a}-{b}{bang}")
        })
        .collect();
    format!("edges:{};{}", m.order(), pairs.join(","))
}
