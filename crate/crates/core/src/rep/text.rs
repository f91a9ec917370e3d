//! The representation text format.
//!
//! ```text
//! algebra: corpus:mckay-1-3-111
//! keep: 0, 2                 # optional: the module lives on the cornered algebra
//! [dims]
//! 1 1                        # or `0=1 2=1`, or `*=1`
//! [matrix x1x0]
//! 1
//! ```
//!
//! Each `[matrix a]` block holds `dim(head)` rows of `dim(tail)` rationals.
//! Arrows without a block act by zero.

use std::sync::Arc;

use super::{scalar_text, DimensionVector, Representation};
use crate::algebra::text::{parse_err, split_sections};
use crate::algebra::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::linalg::{parse_scalar, Matrix};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RepHeader {
    pub algebra: Option<String>,
    pub keep: Option<Vec<String>>,
}

/// Reads the `key: value` lines before the first section.
pub fn read_header(text: &str) -> Result<RepHeader> {
    let (preamble, _) = split_sections(text);
    let mut header = RepHeader::default();
    for (line, l) in preamble {
        let (key, value) = l
            .split_once(':')
            .ok_or_else(|| parse_err(line, "expected `key: value`"))?;
        let value = value.trim();
        match key.trim() {
            "algebra" => header.algebra = Some(value.to_string()),
            "keep" => {
                header.keep = Some(
                    value
                        .split(',')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect(),
                )
            }
            other => return Err(parse_err(line, format!("unknown header key `{other}`"))),
        }
    }
    Ok(header)
}

pub fn parse_representation(text: &str, algebra: Arc<AlgebraPresentation>) -> Result<Representation> {
    let (_, sections) = split_sections(text);
    let q = algebra.quiver();
    let n = q.num_vertices();
    let mut dims: Option<Vec<usize>> = None;
    let mut blocks: Vec<Option<Matrix>> = vec![None; q.num_arrows()];
    let mut pending = Vec::new();
    for sec in &sections {
        if sec.name == "dims" {
            if dims.is_some() {
                return Err(parse_err(sec.line, "duplicate [dims] section"));
            }
            dims = Some(parse_dims(&sec.lines, sec.line, algebra.as_ref())?);
        } else if let Some(name) = sec.name.strip_prefix("matrix") {
            let name = name.trim();
            let a = q
                .arrow_index(name)
                .ok_or_else(|| parse_err(sec.line, format!("unknown arrow `{name}`")))?;
            if blocks[a].is_some() || pending.iter().any(|(b, _, _)| *b == a) {
                return Err(parse_err(sec.line, format!("duplicate matrix for `{name}`")));
            }
            pending.push((a, sec.line, &sec.lines));
        } else {
            return Err(parse_err(sec.line, format!("unknown section [{}]", sec.name)));
        }
    }
    let dims = dims.ok_or_else(|| parse_err(1, "missing [dims] section"))?;
    debug_assert_eq!(dims.len(), n);
    for (a, line, rows) in pending {
        let arr = q.arrow(a);
        let (h, t) = (dims[arr.head], dims[arr.tail]);
        if rows.len() != h && !(t == 0 && rows.is_empty()) {
            return Err(parse_err(
                line,
                format!("matrix `{}` needs {h} rows, found {}", arr.name, rows.len()),
            ));
        }
        let mut parsed = Vec::with_capacity(h);
        for (l, row) in rows {
            let entries = row
                .split([',', ' ', '\t'])
                .filter(|s| !s.is_empty())
                .map(|s| parse_scalar(s).ok_or_else(|| parse_err(*l, format!("invalid scalar `{s}`"))))
                .collect::<Result<Vec<_>>>()?;
            if entries.len() != t {
                return Err(parse_err(
                    *l,
                    format!("matrix `{}` needs {t} columns, found {}", arr.name, entries.len()),
                ));
            }
            parsed.push(entries);
        }
        let m = if parsed.is_empty() {
            Matrix::zeros(h, t)
        } else {
            Matrix::from_rows(parsed, t)?
        };
        blocks[a] = Some(m);
    }
    let matrices = q
        .arrows()
        .iter()
        .zip(blocks)
        .map(|(arr, b)| b.unwrap_or_else(|| Matrix::zeros(dims[arr.head], dims[arr.tail])))
        .collect();
    Representation::new(algebra, DimensionVector(dims), matrices)
}

fn parse_dims(lines: &[(usize, String)], header: usize, algebra: &AlgebraPresentation) -> Result<Vec<usize>> {
    let q = algebra.quiver();
    let n = q.num_vertices();
    let tokens: Vec<(usize, &str)> = lines
        .iter()
        .flat_map(|(l, s)| s.split([',', ' ', '\t']).filter(|t| !t.is_empty()).map(move |t| (*l, t)))
        .collect();
    let number = |l: usize, s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| parse_err(l, format!("invalid dimension `{s}`")))
    };
    if tokens.iter().all(|(_, t)| !t.contains('=')) {
        if tokens.len() != n {
            return Err(parse_err(
                header,
                format!("expected {n} dimensions, found {}", tokens.len()),
            ));
        }
        return tokens.iter().map(|(l, t)| number(*l, t)).collect();
    }
    let mut dims: Vec<Option<usize>> = vec![None; n];
    let mut default = None;
    for (l, t) in tokens {
        let (name, value) = t
            .split_once('=')
            .ok_or_else(|| parse_err(l, "mixing positional and named dimensions"))?;
        let value = number(l, value)?;
        if name == "*" {
            default = Some(value);
            continue;
        }
        let v = q
            .vertex_index(name)
            .ok_or_else(|| parse_err(l, format!("unknown vertex `{name}`")))?;
        dims[v] = Some(value);
    }
    dims.into_iter()
        .enumerate()
        .map(|(i, d)| {
            d.or(default).ok_or_else(|| {
                Error::Parse {
                    line: header,
                    message: format!("no dimension for vertex `{}`", q.vertex_name(i)),
                }
            })
        })
        .collect()
}

pub(super) fn serialize(rep: &Representation, algebra_ref: &str, keep: Option<&[String]>) -> String {
    let q = rep.algebra().quiver();
    let mut out = format!("algebra: {algebra_ref}\n");
    if let Some(k) = keep {
        out.push_str(&format!("keep: {}\n", k.join(", ")));
    }
    out.push_str("\n[dims]\n");
    let dims: Vec<String> = rep.dims().0.iter().map(usize::to_string).collect();
    out.push_str(&dims.join(" "));
    out.push('\n');
    for (arr, m) in q.arrows().iter().zip(rep.matrices()) {
        if m.is_zero() {
            continue;
        }
        out.push_str(&format!("\n[matrix {}]\n", arr.name));
        for i in 0..m.rows() {
            let row: Vec<String> = m.row(i).iter().map(scalar_text).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}
