//! Quivers, paths and presented path algebras `kQ/I`.
//!
//! Paths are stored in traversal order: the first arrow walked is the first
//! entry. Text input and output use the usual right-to-left composition, so
//! `x1*y0` is the path that walks `y0` and then `x1`.

mod mckay;
pub(crate) mod text;

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{format_scalar, Scalar};

pub use mckay::{is_special_linear, mckay_abelian};
pub use text::{
    parse_algebra, parse_algebra_document, parse_combination, parse_path, AlgebraDocument,
    DictionaryLine,
};

/// Name of the distinguished vertex.
pub const ZERO_VERTEX: &str = "0";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub tail: usize,
    pub head: usize,
    pub weight: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    zero: usize,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
    out_arrows: Vec<Vec<usize>>,
    in_arrows: Vec<Vec<usize>>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::Quiver(format!("duplicate vertex `{v}`")));
            }
        }
        let zero = *vertex_index
            .get(ZERO_VERTEX)
            .ok_or_else(|| Error::Quiver("vertex `0` is missing".into()))?;
        let mut arrow_index = HashMap::new();
        let mut out_arrows = vec![Vec::new(); vertices.len()];
        let mut in_arrows = vec![Vec::new(); vertices.len()];
        let weight_len = arrows.first().and_then(|a| a.weight.as_ref().map(Vec::len));
        for (i, a) in arrows.iter().enumerate() {
            if arrow_index.insert(a.name.clone(), i).is_some() {
                return Err(Error::Quiver(format!("duplicate arrow `{}`", a.name)));
            }
            if a.tail >= vertices.len() || a.head >= vertices.len() {
                return Err(Error::Quiver(format!(
                    "arrow `{}` references a missing vertex",
                    a.name
                )));
            }
            let found = a.weight.as_ref().map(Vec::len);
            if found != weight_len {
                return match (weight_len, found) {
                    (Some(expected), Some(found)) => Err(Error::WeightLength {
                        arrow: a.name.clone(),
                        expected,
                        found,
                    }),
                    _ => Err(Error::Quiver(format!(
                        "arrow `{}`: weights must be given on all arrows or none",
                        a.name
                    ))),
                };
            }
            out_arrows[a.tail].push(i);
            in_arrows[a.head].push(i);
        }
        Ok(Quiver {
            vertices,
            arrows,
            zero,
            vertex_index,
            arrow_index,
            out_arrows,
            in_arrows,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    /// Index of the vertex named `0`.
    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_index.get(name).copied()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrow_index.get(name).copied()
    }

    pub fn out_arrows(&self, v: usize) -> &[usize] {
        &self.out_arrows[v]
    }

    pub fn in_arrows(&self, v: usize) -> &[usize] {
        &self.in_arrows[v]
    }

    /// Length of the weight vectors, if the arrows carry weights.
    pub fn weight_dim(&self) -> Option<usize> {
        self.arrows
            .first()
            .and_then(|a| a.weight.as_ref().map(Vec::len))
    }

    pub fn has_weights(&self) -> bool {
        self.weight_dim().is_some()
    }

    /// Resolves a list of vertex names, reporting the first unknown one.
    pub fn vertex_set(&self, names: &[&str]) -> Result<Vec<usize>> {
        let mut out: Vec<usize> = names
            .iter()
            .map(|n| {
                self.vertex_index(n.trim())
                    .ok_or_else(|| Error::Invalid(format!("unknown vertex `{}`", n.trim())))
            })
            .collect::<Result<_>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

/// A path in a quiver, first-traversed arrow first. A path with no arrows is
/// the idempotent at `tail == head`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    tail: usize,
    head: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn idempotent(v: usize) -> Self {
        Path {
            tail: v,
            head: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Self {
        let arr = q.arrow(a);
        Path {
            tail: arr.tail,
            head: arr.head,
            arrows: vec![a],
        }
    }

    /// Builds a path from arrows in traversal order.
    pub fn from_arrows(q: &Quiver, arrows: &[usize]) -> Result<Self> {
        let Some((&first, rest)) = arrows.split_first() else {
            return Err(Error::Invalid(
                "an empty arrow list does not determine a vertex".into(),
            ));
        };
        let mut p = Path::arrow(q, first);
        for &a in rest {
            p = p.then_arrow(q, a)?;
        }
        Ok(p)
    }

    pub fn tail(&self) -> usize {
        self.tail
    }

    pub fn head(&self) -> usize {
        self.head
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn then_arrow(mut self, q: &Quiver, a: usize) -> Result<Self> {
        let arr = q.arrow(a);
        if arr.tail != self.head {
            return Err(Error::Endpoint(format!(
                "arrow `{}` starts at {} but the path ends at {}",
                arr.name,
                q.vertex_name(arr.tail),
                q.vertex_name(self.head)
            )));
        }
        self.arrows.push(a);
        self.head = arr.head;
        Ok(self)
    }

    /// Sum of arrow weights; `None` when the quiver is unweighted.
    pub fn weight(&self, q: &Quiver) -> Option<Vec<i64>> {
        let d = q.weight_dim()?;
        let mut w = vec![0i64; d];
        for &a in &self.arrows {
            let aw = q.arrow(a).weight.as_ref()?;
            for (x, y) in w.iter_mut().zip(aw) {
                *x += y;
            }
        }
        Some(w)
    }

    /// Text form in right-to-left composition order, e.g. `x1*y0` or `e(2)`.
    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e({})", q.vertex_name(self.tail));
        }
        let names: Vec<&str> = self
            .arrows
            .iter()
            .rev()
            .map(|&a| q.arrow(a).name.as_str())
            .collect();
        names.join("*")
    }

    /// Sort key: length, then arrow indices in traversal order.
    pub fn canonical_key(&self) -> (usize, &[usize], usize) {
        (self.arrows.len(), &self.arrows, self.tail)
    }
}

/// Concatenation: walk `p`, then `r`.
pub fn compose(q: &Quiver, p: &Path, r: &Path) -> Result<Path> {
    if p.head != r.tail {
        return Err(Error::Endpoint(format!(
            "cannot follow `{}` (ending at {}) by `{}` (starting at {})",
            p.display(q),
            q.vertex_name(p.head),
            r.display(q),
            q.vertex_name(r.tail)
        )));
    }
    let mut arrows = p.arrows.clone();
    arrows.extend_from_slice(&r.arrows);
    Ok(Path {
        tail: p.tail,
        head: r.head,
        arrows,
    })
}

/// A linear combination of paths sharing a tail and a head. Duplicate paths
/// are merged and zero coefficients dropped on construction; the order of
/// first appearance is kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathCombination {
    terms: Vec<(Scalar, Path)>,
}

impl PathCombination {
    pub fn zero() -> Self {
        PathCombination { terms: Vec::new() }
    }

    pub fn from_path(p: Path) -> Self {
        PathCombination {
            terms: vec![(Scalar::one(), p)],
        }
    }

    pub fn new(terms: Vec<(Scalar, Path)>) -> Result<Self> {
        let mut merged: Vec<(Scalar, Path)> = Vec::new();
        for (c, p) in terms {
            if let Some(first) = merged.first() {
                if first.1.tail != p.tail || first.1.head != p.head {
                    return Err(Error::Endpoint(
                        "terms of one combination must share tail and head".into(),
                    ));
                }
            }
            match merged.iter_mut().find(|(_, q)| *q == p) {
                Some(slot) => slot.0 += c,
                None => merged.push((c, p)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        Ok(PathCombination { terms: merged })
    }

    pub fn terms(&self) -> &[(Scalar, Path)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn tail(&self) -> Option<usize> {
        self.terms.first().map(|(_, p)| p.tail)
    }

    pub fn head(&self) -> Option<usize> {
        self.terms.first().map(|(_, p)| p.head)
    }

    pub fn neg(&self) -> Self {
        PathCombination {
            terms: self.terms.iter().map(|(c, p)| (-c.clone(), p.clone())).collect(),
        }
    }

    /// The two paths of a binomial `u - v` (coefficients `c` and `-c`).
    pub fn as_binomial(&self) -> Option<(&Path, &Path)> {
        match self.terms.as_slice() {
            [(c1, u), (c2, v)] if (c1 + c2).is_zero() => Some((u, v)),
            _ => None,
        }
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (c, p)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                out.push_str(&format_scalar(&abs));
                out.push('*');
            }
            out.push_str(&p.display(q));
        }
        out
    }
}

/// A quiver with relations, each relation read as `= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    quiver: Quiver,
    relations: Vec<PathCombination>,
}

impl AlgebraPresentation {
    /// Checks endpoints, term lengths and weight homogeneity.
    pub fn new(quiver: Quiver, relations: Vec<PathCombination>) -> Result<Self> {
        for (i, r) in relations.iter().enumerate() {
            if r.terms.iter().any(|(_, p)| p.is_empty()) {
                return Err(Error::Relation {
                    index: i,
                    message: "relation terms must be paths of length at least one".into(),
                });
            }
            if let Some(first) = r.terms.first() {
                let w0 = first.1.weight(&quiver);
                if r.terms.iter().any(|(_, p)| p.weight(&quiver) != w0) {
                    return Err(Error::Inhomogeneous {
                        index: i,
                        relation: r.display(&quiver),
                    });
                }
            }
        }
        Ok(AlgebraPresentation { quiver, relations })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[PathCombination] {
        &self.relations
    }

    /// Every relation has the form `u - v`.
    pub fn is_binomial(&self) -> bool {
        self.binomials().is_ok()
    }

    /// The relations as pairs `(u, v)` meaning `u = v`. Zero relations are skipped.
    pub fn binomials(&self) -> Result<Vec<(&Path, &Path)>> {
        self.relations
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_zero())
            .map(|(i, r)| {
                r.as_binomial().ok_or_else(|| Error::NotBinomial {
                    index: i,
                    relation: r.display(&self.quiver),
                })
            })
            .collect()
    }

    /// Parse-compatible text.
    pub fn to_text(&self) -> String {
        text::serialize(self)
    }

    pub fn path(&self, text: &str) -> Result<Path> {
        parse_path(&self.quiver, text)
    }
}

/// Outcome of [`validate_weights`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightReport {
    pub failures: Vec<WeightFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFailure {
    pub relation: usize,
    pub reason: String,
}

impl WeightReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Re-checks endpoint coherence and weight homogeneity of every relation.
/// Unweighted quivers fail with a single entry.
pub fn validate_weights(quiver: &Quiver, relations: &[PathCombination]) -> WeightReport {
    let mut failures = Vec::new();
    if !quiver.has_weights() {
        failures.push(WeightFailure {
            relation: 0,
            reason: "arrows carry no weights".into(),
        });
        return WeightReport { failures };
    }
    for (i, r) in relations.iter().enumerate() {
        let Some((_, first)) = r.terms.first() else {
            continue;
        };
        if r
            .terms
            .iter()
            .any(|(_, p)| p.tail != first.tail || p.head != first.head)
        {
            failures.push(WeightFailure {
                relation: i,
                reason: format!("terms of `{}` do not share endpoints", r.display(quiver)),
            });
            continue;
        }
        let w0 = first.weight(quiver);
        for (_, p) in &r.terms[1..] {
            let w = p.weight(quiver);
            if w != w0 {
                failures.push(WeightFailure {
                    relation: i,
                    reason: format!(
                        "`{}` has weight {:?} but `{}` has weight {:?}",
                        first.display(quiver),
                        w0.unwrap_or_default(),
                        p.display(quiver),
                        w.unwrap_or_default()
                    ),
                });
                break;
            }
        }
    }
    WeightReport { failures }
}

impl fmt::Display for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn chain() -> Quiver {
        let arrows = vec![
            Arrow {
                name: "x0".into(),
                tail: 0,
                head: 1,
                weight: Some(vec![1, 0]),
            },
            Arrow {
                name: "x1".into(),
                tail: 1,
                head: 2,
                weight: Some(vec![1, 0]),
            },
            Arrow {
                name: "y0".into(),
                tail: 0,
                head: 2,
                weight: Some(vec![0, 1]),
            },
        ];
        Quiver::new(vec!["0".into(), "1".into(), "2".into()], arrows).unwrap()
    }

    #[test]
    fn compose_examples() {
        let q = chain();
        let x0 = Path::arrow(&q, 0);
        let x1 = Path::arrow(&q, 1);
        assert_eq!(compose(&q, &Path::idempotent(0), &x0).unwrap(), x0);
        let p = compose(&q, &x0, &x1).unwrap();
        assert_eq!((p.tail(), p.head(), p.len()), (0, 2, 2));
        assert_eq!(p.display(&q), "x1*x0");
        assert_eq!(p.weight(&q), Some(vec![2, 0]));
        assert!(matches!(
            compose(&q, &x0, &Path::arrow(&q, 2)),
            Err(Error::Endpoint(_))
        ));
    }

    #[test]
    fn quiver_validation() {
        let missing_zero = Quiver::new(vec!["1".into()], vec![]);
        assert!(matches!(missing_zero, Err(Error::Quiver(_))));
        let mixed = Quiver::new(
            vec!["0".into()],
            vec![
                Arrow {
                    name: "a".into(),
                    tail: 0,
                    head: 0,
                    weight: Some(vec![1]),
                },
                Arrow {
                    name: "b".into(),
                    tail: 0,
                    head: 0,
                    weight: Some(vec![1, 2]),
                },
            ],
        );
        assert!(matches!(mixed, Err(Error::WeightLength { found: 2, .. })));
    }

    #[test]
    fn combination_merges_and_checks_endpoints() {
        let q = chain();
        let x1x0 = Path::from_arrows(&q, &[0, 1]).unwrap();
        let y0 = Path::arrow(&q, 2);
        let c = PathCombination::new(vec![
            (int(1), x1x0.clone()),
            (int(2), y0.clone()),
            (int(-1), x1x0.clone()),
        ])
        .unwrap();
        assert_eq!(c.terms(), &[(int(2), y0.clone())]);
        assert!(PathCombination::new(vec![(int(1), y0), (int(1), Path::arrow(&q, 0))]).is_err());
    }

    #[test]
    fn inhomogeneous_relation_is_rejected_and_reported() {
        let q = chain();
        let rel = PathCombination::new(vec![
            (int(1), Path::from_arrows(&q, &[0, 1]).unwrap()),
            (int(-1), Path::arrow(&q, 2)),
        ])
        .unwrap();
        let report = validate_weights(&q, std::slice::from_ref(&rel));
        assert!(!report.passed());
        assert_eq!(report.failures[0].relation, 0);
        assert!(matches!(
            AlgebraPresentation::new(q, vec![rel]),
            Err(Error::Inhomogeneous { index: 0, .. })
        ));
    }
}
