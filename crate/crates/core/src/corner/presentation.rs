//! Presentations `A_C^I --P--> A_C^J --> e_k A e_C --> 0` of right
//! `A_C`-modules.
//!
//! Rows of `P` belong to generators and columns to relations among them:
//! column `i` says `sum_j g_j * P[j][i] = 0`, so entry `P[j][i]` is an element
//! of `A_C` ending where generator `g_j` starts. Tensoring with `N` turns `P`
//! into a block matrix whose cokernel is `e_k (A e_C ⊗ N)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{block_offsets, CorneringData};
use crate::algebra::text::{parse_err, split_sections};
use crate::algebra::{parse_combination, parse_path, Path, PathCombination};
use crate::error::{Error, Result};
use crate::linalg::{cokernel_dim, Matrix};
use crate::rep::Representation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    /// Parent vertex `k`.
    vertex: usize,
    /// Parent paths from kept vertices to `k`.
    generators: Vec<Path>,
    /// `entries[j][i]`, elements of the cornered algebra.
    entries: Vec<Vec<PathCombination>>,
    /// Cornered vertex where each column's entries start.
    column_tails: Vec<usize>,
}

impl ModulePresentation {
    /// Validates endpoints. All-zero columns are dropped since they impose
    /// nothing.
    pub fn new(
        cd: &CorneringData,
        vertex: usize,
        generators: Vec<Path>,
        entries: Vec<Vec<PathCombination>>,
    ) -> Result<Self> {
        let pq = cd.parent().quiver();
        let cq = cd.cornered().quiver();
        for g in &generators {
            if g.head() != vertex || !cd.is_kept(g.tail()) {
                return Err(Error::Presentation(format!(
                    "generator `{}` must run from a kept vertex to {}",
                    g.display(pq),
                    pq.vertex_name(vertex)
                )));
            }
        }
        if entries.len() != generators.len() {
            return Err(Error::Presentation(format!(
                "{} rows for {} generators",
                entries.len(),
                generators.len()
            )));
        }
        let cols = entries.first().map_or(0, Vec::len);
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Presentation("rows of different lengths".into()));
        }
        let mut kept_entries: Vec<Vec<PathCombination>> = vec![Vec::new(); generators.len()];
        let mut column_tails = Vec::new();
        for i in 0..cols {
            let mut tail = None;
            for (j, g) in generators.iter().enumerate() {
                let e = &entries[j][i];
                let (Some(t), Some(h)) = (e.tail(), e.head()) else {
                    continue;
                };
                let want = cd
                    .cornered_vertex(g.tail())
                    .expect("generator tails are kept");
                if h != want {
                    return Err(Error::Presentation(format!(
                        "entry ({}, {}) = `{}` must end at {}, where generator `{}` starts",
                        j + 1,
                        i + 1,
                        e.display(cq),
                        cq.vertex_name(want),
                        g.display(pq)
                    )));
                }
                match tail {
                    None => tail = Some(t),
                    Some(t0) if t0 != t => {
                        return Err(Error::Presentation(format!(
                            "entries of column {} start at different vertices",
                            i + 1
                        )))
                    }
                    _ => {}
                }
            }
            if let Some(t) = tail {
                column_tails.push(t);
                for (row, src) in kept_entries.iter_mut().zip(&entries) {
                    row.push(src[i].clone());
                }
            }
        }
        Ok(ModulePresentation {
            vertex,
            generators,
            entries: kept_entries,
            column_tails,
        })
    }

    pub fn vertex(&self) -> usize {
        self.vertex
    }

    pub fn generators(&self) -> &[Path] {
        &self.generators
    }

    pub fn rows(&self) -> usize {
        self.generators.len()
    }

    pub fn cols(&self) -> usize {
        self.column_tails.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &PathCombination {
        &self.entries[row][col]
    }

    pub fn column_tails(&self) -> &[usize] {
        &self.column_tails
    }

    /// Cornered vertex where generator `j` starts.
    pub fn row_tail(&self, cd: &CorneringData, j: usize) -> usize {
        cd.cornered_vertex(self.generators[j].tail())
            .expect("generator tails are kept")
    }

    /// The block matrix `P_N`: block `(j, i)` is entry `(j, i)` acting on `N`.
    pub fn evaluate(&self, cd: &CorneringData, n: &Representation) -> Result<Matrix> {
        let row_tails: Vec<usize> = (0..self.rows()).map(|j| self.row_tail(cd, j)).collect();
        let row_sizes: Vec<usize> = row_tails.iter().map(|&v| n.dims()[v]).collect();
        let col_sizes: Vec<usize> = self.column_tails.iter().map(|&v| n.dims()[v]).collect();
        let (row_off, rows) = block_offsets(&row_sizes);
        let (col_off, cols) = block_offsets(&col_sizes);
        let mut m = Matrix::zeros(rows, cols);
        for j in 0..self.rows() {
            for i in 0..self.cols() {
                let e = &self.entries[j][i];
                if e.is_zero() {
                    continue;
                }
                let block = n.evaluate_combination(e, self.column_tails[i], row_tails[j])?;
                m.set_block(row_off[j], col_off[i], &block);
            }
        }
        Ok(m)
    }

    /// `dim e_k (A e_C ⊗ N)`.
    pub fn induced_dim(&self, cd: &CorneringData, n: &Representation) -> Result<usize> {
        Ok(cokernel_dim(&self.evaluate(cd, n)?))
    }

    /// Text in the presentation file format.
    pub fn to_text(&self, cd: &CorneringData) -> String {
        let pq = cd.parent().quiver();
        let cq = cd.cornered().quiver();
        let mut out = format!("[presentation {}]\n", pq.vertex_name(self.vertex));
        let gens: Vec<String> = self.generators.iter().map(|g| g.display(pq)).collect();
        let _ = writeln!(out, "generators: {}", gens.join(", "));
        out.push_str("P:\n");
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|e| e.display(cq)).collect();
            let _ = writeln!(out, "{}", cells.join(", "));
        }
        out
    }

    /// Rows and columns as display strings, for reports.
    pub fn display_matrix(&self, cd: &CorneringData) -> Vec<Vec<String>> {
        let cq = cd.cornered().quiver();
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.display(cq)).collect())
            .collect()
    }

    /// Same presentation with columns sign-normalized (first nonzero
    /// coefficient positive) and sorted, for comparison up to column
    /// operations that do not change the cokernel.
    pub fn normalized_columns(&self, cd: &CorneringData) -> Vec<Vec<String>> {
        let cq = cd.cornered().quiver();
        let mut cols: Vec<Vec<String>> = (0..self.cols())
            .map(|i| {
                let first_negative = (0..self.rows())
                    .find_map(|j| self.entries[j][i].terms().first().map(|(c, _)| c < &num_traits::Zero::zero()))
                    .unwrap_or(false);
                (0..self.rows())
                    .map(|j| {
                        let e = &self.entries[j][i];
                        if first_negative { e.neg() } else { e.clone() }.display(cq)
                    })
                    .collect()
            })
            .collect();
        cols.sort();
        cols
    }
}

/// Parses `[presentation k]` sections:
///
/// ```text
/// [presentation 5]
/// generators: x4, y3, z2
/// P:
/// 0, -z1, y2
/// z0, 0, -x2
/// -y0, x1, 0
/// ```
///
/// Generators are parent paths; entries are written in the cornered algebra.
/// An optional `keep:` line before the first section must name the kept
/// vertices.
pub fn parse_presentations(cd: &CorneringData, text: &str) -> Result<BTreeMap<usize, ModulePresentation>> {
    let (preamble, sections) = split_sections(text);
    let pq = cd.parent().quiver();
    for (line, l) in &preamble {
        let Some(list) = l.strip_prefix("keep:") else {
            return Err(parse_err(*line, "expected `keep:` before the first section"));
        };
        let mut names: Vec<String> = list
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect();
        let mut kept = cd.keep_names();
        names.sort();
        kept.sort();
        if names != kept {
            return Err(parse_err(
                *line,
                format!("presentations are for C = {{{}}}, not {{{}}}", list.trim(), kept.join(", ")),
            ));
        }
    }
    let cq = cd.cornered().quiver();
    let mut out = BTreeMap::new();
    for sec in sections {
        let Some(name) = sec.name.strip_prefix("presentation") else {
            return Err(parse_err(sec.line, format!("unknown section [{}]", sec.name)));
        };
        let name = name.trim();
        let k = pq
            .vertex_index(name)
            .ok_or_else(|| parse_err(sec.line, format!("unknown vertex `{name}`")))?;
        if cd.is_kept(k) {
            return Err(parse_err(sec.line, format!("vertex {name} is kept and needs no presentation")));
        }
        let mut generators: Option<Vec<Path>> = None;
        let mut rows: Vec<Vec<PathCombination>> = Vec::new();
        let mut in_matrix = false;
        for (line, l) in &sec.lines {
            if let Some(g) = l.strip_prefix("generators:") {
                generators = Some(
                    g.split(',')
                        .map(|s| parse_path(pq, s.trim()).map_err(|e| parse_err(*line, e.to_string())))
                        .collect::<Result<_>>()?,
                );
            } else if l.trim() == "P:" {
                in_matrix = true;
            } else if in_matrix {
                rows.push(
                    l.split(',')
                        .map(|s| parse_combination(cq, s.trim()).map_err(|e| parse_err(*line, e.to_string())))
                        .collect::<Result<_>>()?,
                );
            } else {
                return Err(parse_err(*line, "expected `generators:` or `P:`"));
            }
        }
        let generators = generators.ok_or_else(|| parse_err(sec.line, "missing `generators:` line"))?;
        if rows.is_empty() {
            rows = vec![Vec::new(); generators.len()];
        }
        let p = ModulePresentation::new(cd, k, generators, rows).map_err(|e| parse_err(sec.line, e.to_string()))?;
        if out.insert(k, p).is_some() {
            return Err(parse_err(sec.line, format!("duplicate presentation for vertex {name}")));
        }
    }
    Ok(out)
}
