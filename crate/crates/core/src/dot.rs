//! DOT (Graphviz) export, plus a small reader for the subset we emit.

use crate::error::{Error, Result};
use crate::graph::Graph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT document for `g`. Edges in `highlight` are drawn bold;
/// with `only_highlight` the other edges are left out.
pub fn to_dot(g: &Graph, title: &str, highlight: &[(usize, usize)], only_highlight: bool) -> String {
    let mut out = format!("graph {} {{\n  node [shape=circle];\n", quote(title));
    for v in 0..g.order() {
        out.push_str(&format!("  {v};\n"));
    }
    for (u, v) in g.edges() {
        let marked = highlight.contains(&(u, v)) || highlight.contains(&(v, u));
        if marked {
            out.push_str(&format!("  {u} -- {v} [color=red, penwidth=2];\n"));
        } else if !only_highlight {
            out.push_str(&format!("  {u} -- {v} [color=gray, style=dashed];\n"));
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DotGraph {
    pub name: Option<String>,
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Id(String),
    Punct(char),
    Edge,
}

fn lex(text: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let cs: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '/' && cs.get(i + 1) == Some(&'/') || c == '#' {
            while i < cs.len() && cs[i] != '\n' {
                i += 1;
            }
        } else if c == '-' && cs.get(i + 1) == Some(&'-') {
            toks.push(Tok::Edge);
            i += 2;
        } else if c == '-' && cs.get(i + 1) == Some(&'>') {
            return Err(Error::MalformedDot("directed edge in an undirected graph".into()));
        } else if "{}[];,=".contains(c) {
            toks.push(Tok::Punct(c));
            i += 1;
        } else if c == '"' {
            let mut s = String::new();
            i += 1;
            loop {
                match cs.get(i) {
                    None => return Err(Error::MalformedDot("unterminated string".into())),
                    Some('"') => break,
                    Some('\\') if i + 1 < cs.len() => {
                        s.push(cs[i + 1]);
                        i += 2;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        i += 1;
                    }
                }
            }
            i += 1;
            toks.push(Tok::Id(s));
        } else if c.is_alphanumeric() || c == '_' || c == '.' {
            let start = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_' || cs[i] == '.') {
                i += 1;
            }
            toks.push(Tok::Id(cs[start..i].iter().collect()));
        } else {
            return Err(Error::MalformedDot(format!("unexpected character {c:?}")));
        }
    }
    Ok(toks)
}

/// Parses undirected node and edge statements with optional attribute lists.
pub fn parse_dot(text: &str) -> Result<DotGraph> {
    let toks = lex(text)?;
    let mut pos = 0;
    let expect_id = |pos: &mut usize| -> Option<String> {
        match toks.get(*pos) {
            Some(Tok::Id(s)) => {
                *pos += 1;
                Some(s.clone())
            }
            _ => None,
        }
    };
    let mut out = DotGraph::default();
    if let Some(Tok::Id(s)) = toks.get(pos) {
        if s.eq_ignore_ascii_case("strict") {
            pos += 1;
        }
    }
    match expect_id(&mut pos) {
        Some(kw) if kw.eq_ignore_ascii_case("graph") => {}
        _ => return Err(Error::MalformedDot("expected `graph`".into())),
    }
    if let Some(Tok::Id(_)) = toks.get(pos) {
        out.name = expect_id(&mut pos);
    }
    if toks.get(pos) != Some(&Tok::Punct('{')) {
        return Err(Error::MalformedDot("expected `{`".into()));
    }
    pos += 1;
    loop {
        match toks.get(pos) {
            None => return Err(Error::MalformedDot("missing `}`".into())),
            Some(Tok::Punct('}')) => {
                pos += 1;
                break;
            }
            Some(Tok::Punct(';')) => pos += 1,
            Some(Tok::Id(_)) => {
                let first = expect_id(&mut pos).unwrap();
                let is_default = ["node", "edge", "graph"].contains(&first.as_str());
                let mut chain = vec![first.clone()];
                while toks.get(pos) == Some(&Tok::Edge) {
                    pos += 1;
                    chain.push(expect_id(&mut pos).ok_or_else(|| Error::MalformedDot("edge without endpoint".into()))?);
                }
                if toks.get(pos) == Some(&Tok::Punct('=')) {
                    // graph attribute `a = b`
                    pos += 1;
                    expect_id(&mut pos).ok_or_else(|| Error::MalformedDot("attribute without value".into()))?;
                    continue;
                }
                if toks.get(pos) == Some(&Tok::Punct('[')) {
                    pos += 1;
                    loop {
                        match toks.get(pos) {
                            Some(Tok::Punct(']')) => {
                                pos += 1;
                                break;
                            }
                            Some(Tok::Punct(',')) | Some(Tok::Punct(';')) => pos += 1,
                            Some(Tok::Id(_)) => {
                                pos += 1;
                                if toks.get(pos) == Some(&Tok::Punct('=')) {
                                    pos += 1;
                                    expect_id(&mut pos)
                                        .ok_or_else(|| Error::MalformedDot("attribute without value".into()))?;
                                }
                            }
                            _ => return Err(Error::MalformedDot("bad attribute list".into())),
                        }
                    }
                }
                if chain.len() == 1 {
                    if !is_default && !out.nodes.contains(&first) {
                        out.nodes.push(first);
                    }
                } else {
                    for w in chain.windows(2) {
                        for n in w {
                            if !out.nodes.contains(n) {
                                out.nodes.push(n.clone());
                            }
                        }
                        out.edges.push((w[0].clone(), w[1].clone()));
                    }
                }
            }
            Some(t) => return Err(Error::MalformedDot(format!("unexpected token {t:?}"))),
        }
    }
    if pos != toks.len() {
        return Err(Error::MalformedDot("trailing input after `}`".into()));
    }
    Ok(out)
}
