//! Names such as `K8-(K1,2∪2K2)` or `K9 - 2K_2`.
//!
//! ```text
//! name    := base [ "-" pattern ]
//! base    := "K" n | "K" m "," n
//! pattern := join ( "∪" join )*
//! join    := term ( "∨" term )*
//! term    := [count] atom
//! atom    := "K" n | "K" m "," n | "P" n | "(" pattern ")"
//! ```
//!
//! `u` and `v` are accepted for `∪` and `∨`; LaTeX decorations (`_`, braces,
//! `$`, `\cup`, `\vee`) and whitespace are ignored. The pattern is laid out on
//! the lowest-numbered vertices, terms left to right on fresh vertices, and
//! `∨` identifies the last vertex of its left operand with the first vertex
//! of its right operand. Stars `K1,m` put the center first.

use super::{make_complete, make_complete_bipartite, make_path, one_vertex_join, Graph};
use crate::error::{Error, Result};

pub fn parse_name(name: &str) -> Result<Graph> {
    let norm = normalize(name);
    let mut p = Parser { s: norm.as_bytes(), pos: 0, original: name };
    let base = p.base()?;
    let graph = if p.eat(b'-') {
        let pattern = p.pattern()?;
        if !p.done() {
            return Err(p.err("trailing characters"));
        }
        remove_pattern(&base, &pattern).ok_or_else(|| Error::PatternDoesNotFit(name.trim().to_string()))?
    } else if p.done() {
        base
    } else {
        return Err(p.err("expected '-' after the base graph"));
    };
    Ok(graph.with_name(name.trim()))
}

fn normalize(name: &str) -> String {
    let s = name.replace("\\cup", "∪").replace("\\vee", "∨").replace('−', "-");
    s.chars()
        .filter(|c| !c.is_whitespace() && !matches!(c, '_' | '{' | '}' | '$'))
        .map(|c| match c {
            'u' => '|',
            '∪' => '|',
            'v' => '^',
            '∨' => '^',
            other => other,
        })
        .collect()
}

fn remove_pattern(base: &Graph, pattern: &Graph) -> Option<Graph> {
    if pattern.order() > base.order() {
        return None;
    }
    let mut g = base.clone();
    for (a, b) in pattern.edges() {
        if !g.has_edge(a, b) {
            return None;
        }
        g.remove_edge(a, b);
    }
    Some(g)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    original: &'a str,
}

impl Parser<'_> {
    fn err(&self, reason: &str) -> Error {
        Error::MalformedName { name: self.original.to_string(), reason: reason.to_string() }
    }

    fn done(&self) -> bool {
        self.pos == self.s.len()
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn require_number(&mut self) -> Result<usize> {
        self.number().ok_or_else(|| self.err("expected a number"))
    }

    /// `K n` or `K m,n` after the leading `K`.
    fn complete_like(&mut self) -> Result<Graph> {
        let m = self.require_number()?;
        let g = if self.eat(b',') {
            let n = self.require_number()?;
            make_complete_bipartite(m, n)?
        } else {
            make_complete(m)?
        };
        Ok(g)
    }

    fn base(&mut self) -> Result<Graph> {
        if !self.eat(b'K') {
            return Err(self.err("base graph must start with 'K'"));
        }
        self.complete_like()
    }

    fn pattern(&mut self) -> Result<Graph> {
        let mut g = self.join()?;
        while self.eat(b'|') {
            let rhs = self.join()?;
            g = g.disjoint_union(&rhs)?;
        }
        Ok(g)
    }

    fn join(&mut self) -> Result<Graph> {
        let mut g = self.term()?;
        while self.eat(b'^') {
            let rhs = self.term()?;
            if g.order() == 0 || rhs.order() == 0 {
                return Err(self.err("cannot join an empty graph"));
            }
            g = one_vertex_join(&g, &rhs, g.order() - 1, 0)?;
        }
        Ok(g)
    }

    fn term(&mut self) -> Result<Graph> {
        let count = if self.peek().is_some_and(|c| c.is_ascii_digit()) { self.require_number()? } else { 1 };
        if count == 0 {
            return Err(self.err("multiplicity must be positive"));
        }
        let atom = self.atom()?;
        let mut g = atom.clone();
        for _ in 1..count {
            g = g.disjoint_union(&atom)?;
        }
        Ok(g)
    }

    fn atom(&mut self) -> Result<Graph> {
        match self.peek() {
            Some(b'K') => {
                self.pos += 1;
                self.complete_like()
            }
            Some(b'P') => {
                self.pos += 1;
                let n = self.require_number()?;
                Ok(make_path(n)?)
            }
            Some(b'(') => {
                self.pos += 1;
                let g = self.pattern()?;
                if !self.eat(b')') {
                    return Err(self.err("unbalanced parenthesis"));
                }
                Ok(g)
            }
            _ => Err(self.err("expected K, P or '('")),
        }
    }
}
