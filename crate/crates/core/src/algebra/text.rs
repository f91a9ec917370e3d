//! The algebra text format.
//!
//! ```text
//! [vertices]
//! 0 1 2
//! [arrows]
//! x0: 0 -> 1 @ (1,0,0)
//! [relations]
//! x1*y0 - y1*x0          # right-to-left: y0 first, then x1
//! a'*a = c'*c = e'*e     # a chain gives one relation per `=`
//! [dictionary]           # only in cornered-algebra files
//! alpha = d'*b
//! ```

use num_traits::{One, Zero};

use super::{AlgebraPresentation, Arrow, Path, PathCombination, Quiver};
use crate::error::{Error, Result};
use crate::linalg::{parse_scalar, Scalar};

/// A parsed algebra together with any `[dictionary]` lines, kept as text
/// because they refer to another algebra.
#[derive(Clone, Debug)]
pub struct AlgebraDocument {
    pub algebra: AlgebraPresentation,
    pub dictionary: Vec<DictionaryLine>,
    /// Line of the `[vertices]` header, and the line of each arrow.
    pub vertices_line: usize,
    pub arrow_lines: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DictionaryLine {
    pub line: usize,
    pub arrow: String,
    pub path: String,
}

pub(crate) struct Section {
    pub name: String,
    pub line: usize,
    pub lines: Vec<(usize, String)>,
}

/// Splits a document into a preamble and `[name]` sections. Comments and
/// blank lines are dropped; line numbers are 1-based.
pub(crate) fn split_sections(text: &str) -> (Vec<(usize, String)>, Vec<Section>) {
    let mut preamble = Vec::new();
    let mut sections: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            sections.push(Section {
                name: name.trim().to_string(),
                line,
                lines: Vec::new(),
            });
        } else if let Some(sec) = sections.last_mut() {
            sec.lines.push((line, content.to_string()));
        } else {
            preamble.push((line, content.to_string()));
        }
    }
    (preamble, sections)
}

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_algebra(text: &str) -> Result<AlgebraPresentation> {
    Ok(parse_algebra_document(text)?.algebra)
}

pub fn parse_algebra_document(text: &str) -> Result<AlgebraDocument> {
    let (preamble, sections) = split_sections(text);
    if let Some((line, _)) = preamble.first() {
        return Err(parse_err(*line, "text before the first section"));
    }
    let mut vertices: Option<Vec<String>> = None;
    let mut vertices_line = 1;
    let mut arrows: Option<Vec<(usize, String)>> = None;
    let mut relations: Vec<(usize, String)> = Vec::new();
    let mut dictionary = Vec::new();
    for sec in &sections {
        match sec.name.as_str() {
            "vertices" => {
                if vertices.is_some() {
                    return Err(parse_err(sec.line, "duplicate [vertices] section"));
                }
                vertices_line = sec.line;
                vertices = Some(
                    sec.lines
                        .iter()
                        .flat_map(|(_, l)| l.split([',', ' ', '\t']))
                        .filter(|s| !s.is_empty())
                        .map(str::to_string)
                        .collect(),
                );
            }
            "arrows" => {
                if arrows.is_some() {
                    return Err(parse_err(sec.line, "duplicate [arrows] section"));
                }
                arrows = Some(sec.lines.clone());
            }
            "relations" => relations.extend(sec.lines.iter().cloned()),
            "dictionary" => {
                for (line, l) in &sec.lines {
                    let (name, path) = l
                        .split_once('=')
                        .ok_or_else(|| parse_err(*line, "expected `arrow = path`"))?;
                    let name = name.trim();
                    if !is_identifier(name) {
                        return Err(parse_err(*line, format!("invalid arrow name `{name}`")));
                    }
                    dictionary.push(DictionaryLine {
                        line: *line,
                        arrow: name.to_string(),
                        path: path.trim().to_string(),
                    });
                }
            }
            other => return Err(parse_err(sec.line, format!("unknown section [{other}]"))),
        }
    }
    let vertices = vertices.ok_or_else(|| parse_err(1, "missing [vertices] section"))?;
    let mut parsed_arrows = Vec::new();
    let mut arrow_lines = Vec::new();
    for (line, l) in arrows.unwrap_or_default() {
        parsed_arrows.push(parse_arrow_line(&vertices, line, &l)?);
        arrow_lines.push(line);
    }
    let quiver = Quiver::new(vertices, parsed_arrows).map_err(|e| parse_err(1, e.to_string()))?;
    let mut rels = Vec::new();
    let mut rel_lines = Vec::new();
    for (line, l) in &relations {
        for r in parse_relation_chain(&quiver, l).map_err(|m| parse_err(*line, m))? {
            rels.push(r);
            rel_lines.push(*line);
        }
    }
    let algebra = AlgebraPresentation::new(quiver, rels).map_err(|e| match &e {
        Error::Inhomogeneous { index, .. } | Error::Relation { index, .. } => {
            parse_err(rel_lines[*index], e.to_string())
        }
        _ => e,
    })?;
    Ok(AlgebraDocument {
        algebra,
        dictionary,
        vertices_line,
        arrow_lines,
    })
}

fn parse_arrow_line(vertices: &[String], line: usize, text: &str) -> Result<Arrow> {
    let (name, rest) = text
        .split_once(':')
        .ok_or_else(|| parse_err(line, "expected `name: tail -> head`"))?;
    let name = name.trim();
    if !is_identifier(name) {
        return Err(parse_err(line, format!("invalid arrow name `{name}`")));
    }
    let (ends, weight) = match rest.split_once('@') {
        Some((e, w)) => (e, Some(w.trim())),
        None => (rest, None),
    };
    let (tail, head) = ends
        .split_once("->")
        .ok_or_else(|| parse_err(line, "expected `tail -> head`"))?;
    let find = |v: &str| {
        let v = v.trim();
        vertices
            .iter()
            .position(|x| x == v)
            .ok_or_else(|| parse_err(line, format!("unknown vertex `{v}`")))
    };
    let weight = match weight {
        None => None,
        Some(w) => {
            let inner = w
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| parse_err(line, "weight must be written `(w1,...,wd)`"))?;
            let entries = inner
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<i64>()
                        .map_err(|_| parse_err(line, format!("invalid weight entry `{}`", s.trim())))
                })
                .collect::<Result<Vec<_>>>()?;
            Some(entries)
        }
    };
    Ok(Arrow {
        name: name.to_string(),
        tail: find(tail)?,
        head: find(head)?,
        weight,
    })
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Ident(String),
    Number(Scalar),
    Idempotent(String),
    Plus,
    Minus,
    Star,
    Equals,
}

fn tokenize(text: &str) -> std::result::Result<Vec<Token>, String> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' | '\u{2212}' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '=' => {
                out.push(Token::Equals);
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let x = parse_scalar(&s)
                    .ok_or_else(|| format!("column {}: invalid number `{s}`", start + 1))?;
                out.push(Token::Number(x));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                if s == "e" && chars.get(i) == Some(&'(') {
                    let close = chars[i..]
                        .iter()
                        .position(|&c| c == ')')
                        .ok_or_else(|| format!("column {}: unclosed `e(`", start + 1))?;
                    let v: String = chars[i + 1..i + close].iter().collect();
                    out.push(Token::Idempotent(v.trim().to_string()));
                    i += close + 1;
                } else {
                    out.push(Token::Ident(s));
                }
            }
            other => return Err(format!("column {}: unexpected character `{other}`", i + 1)),
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Factor {
    Arrow(String),
    Idempotent(String),
}

/// One signed term: coefficient and factors in written (right-to-left) order.
type RawTerm = (Scalar, Vec<Factor>);

/// Parses `sum (= sum)*`.
fn parse_chain(text: &str) -> std::result::Result<Vec<Vec<RawTerm>>, String> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err("empty expression".into());
    }
    let mut sides = vec![Vec::new()];
    let mut i = 0;
    let mut expect_term = true;
    let mut sign = Scalar::one();
    while i < tokens.len() {
        match &tokens[i] {
            Token::Equals => {
                if expect_term {
                    return Err("missing term before `=`".into());
                }
                sides.push(Vec::new());
                sign = Scalar::one();
                expect_term = true;
                i += 1;
            }
            Token::Plus | Token::Minus if expect_term => {
                if tokens[i] == Token::Minus {
                    sign = -sign;
                }
                i += 1;
            }
            Token::Plus | Token::Minus => {
                sign = if tokens[i] == Token::Minus {
                    -Scalar::one()
                } else {
                    Scalar::one()
                };
                expect_term = true;
                i += 1;
            }
            _ if !expect_term => return Err("missing `+` or `-` between terms".into()),
            _ => {
                let mut coeff = std::mem::replace(&mut sign, Scalar::one());
                let mut factors = Vec::new();
                loop {
                    match tokens.get(i) {
                        Some(Token::Number(x)) => coeff *= x,
                        Some(Token::Ident(s)) => factors.push(Factor::Arrow(s.clone())),
                        Some(Token::Idempotent(v)) => factors.push(Factor::Idempotent(v.clone())),
                        _ => return Err("expected a path or a number".into()),
                    }
                    i += 1;
                    if tokens.get(i) == Some(&Token::Star) {
                        i += 1;
                    } else {
                        break;
                    }
                }
                sides.last_mut().expect("at least one side").push((coeff, factors));
                expect_term = false;
            }
        }
    }
    if expect_term {
        return Err("expression ends with an operator".into());
    }
    Ok(sides)
}

/// Turns written factors into a path. Idempotent factors only pin endpoints.
fn resolve_term(q: &Quiver, factors: &[Factor]) -> std::result::Result<Option<Path>, String> {
    let mut path: Option<Path> = None;
    let mut pinned: Option<usize> = None;
    for f in factors.iter().rev() {
        match f {
            Factor::Arrow(name) => {
                let a = q
                    .arrow_index(name)
                    .ok_or_else(|| format!("unknown arrow `{name}`"))?;
                let tail = q.arrow(a).tail;
                if let Some(v) = pinned.take() {
                    if v != tail {
                        return Err(format!(
                            "e({}) does not match the tail of `{name}`",
                            q.vertex_name(v)
                        ));
                    }
                }
                path = Some(match path {
                    None => Path::arrow(q, a),
                    Some(p) => p.then_arrow(q, a).map_err(|e| e.to_string())?,
                });
            }
            Factor::Idempotent(v) => {
                let v = q
                    .vertex_index(v)
                    .ok_or_else(|| format!("unknown vertex `{v}`"))?;
                let current = path.as_ref().map(Path::head).or(pinned);
                if let Some(c) = current {
                    if c != v {
                        return Err(format!(
                            "e({}) does not compose with e({})",
                            q.vertex_name(v),
                            q.vertex_name(c)
                        ));
                    }
                }
                pinned = Some(v);
            }
        }
    }
    Ok(path.or(pinned.map(Path::idempotent)))
}

fn resolve_sum(q: &Quiver, terms: &[RawTerm]) -> std::result::Result<PathCombination, String> {
    let mut out = Vec::new();
    for (c, factors) in terms {
        match resolve_term(q, factors)? {
            Some(p) => out.push((c.clone(), p)),
            None if c.is_zero() => {}
            None => return Err("a nonzero constant has no endpoints".into()),
        }
    }
    PathCombination::new(out).map_err(|e| e.to_string())
}

fn parse_relation_chain(q: &Quiver, text: &str) -> std::result::Result<Vec<PathCombination>, String> {
    let sides = parse_chain(text)?;
    let sums = sides
        .iter()
        .map(|s| resolve_sum(q, s))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if sums.len() == 1 {
        return Ok(sums);
    }
    sums.windows(2)
        .map(|w| {
            let mut terms = w[0].terms().to_vec();
            terms.extend(w[1].neg().terms().iter().cloned());
            PathCombination::new(terms).map_err(|e| e.to_string())
        })
        .collect()
}

/// Parses one signed sum of paths (no `=`).
pub fn parse_combination(q: &Quiver, text: &str) -> Result<PathCombination> {
    let sides = parse_chain(text).map_err(|m| parse_err(1, m))?;
    if sides.len() != 1 {
        return Err(parse_err(1, "unexpected `=`"));
    }
    resolve_sum(q, &sides[0]).map_err(|m| parse_err(1, m))
}

/// Parses a single path such as `x1*y0` or `e(2)`.
pub fn parse_path(q: &Quiver, text: &str) -> Result<Path> {
    let c = parse_combination(q, text)?;
    match c.terms() {
        [(coeff, p)] if coeff.is_one() => Ok(p.clone()),
        _ => Err(parse_err(1, format!("`{text}` is not a single path"))),
    }
}

pub(super) fn serialize(a: &AlgebraPresentation) -> String {
    let q = a.quiver();
    let mut out = String::from("[vertices]\n");
    out.push_str(&q.vertices().join(" "));
    out.push_str("\n\n[arrows]\n");
    for arr in q.arrows() {
        out.push_str(&format!(
            "{}: {} -> {}",
            arr.name,
            q.vertex_name(arr.tail),
            q.vertex_name(arr.head)
        ));
        if let Some(w) = &arr.weight {
            let w: Vec<String> = w.iter().map(i64::to_string).collect();
            out.push_str(&format!(" @ ({})", w.join(",")));
        }
        out.push('\n');
    }
    out.push_str("\n[relations]\n");
    for r in a.relations() {
        out.push_str(&r.display(q));
        out.push('\n');
    }
    out
}
