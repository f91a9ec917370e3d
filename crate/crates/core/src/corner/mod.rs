//! Cornering: the algebra `A_C = e_C A e_C` for a vertex subset `C`, the
//! restriction of `A`-modules to `A_C`-modules, and presentations of the
//! right `A_C`-modules `e_k A e_C` used to compute the induced module
//! `A e_C ⊗ N`.

mod binomial;
mod presentation;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{parse_path, AlgebraDocument, AlgebraPresentation, Path, PathCombination};
use crate::error::{Error, Result};
use crate::linalg::int;
use crate::rep::{DimensionVector, QuotientCertificate, Representation};

pub use binomial::{BinomialCornering, CorneringOptions, DerivedPresentation, Factorization, InducedModule};
pub use presentation::{parse_presentations, ModulePresentation};

/// A vertex subset `C` of a parent algebra together with a presentation of
/// the cornered algebra `A_C` and, for every arrow of `A_C`, the parent path
/// it stands for.
#[derive(Clone, Debug)]
pub struct CorneringData {
    parent: Arc<AlgebraPresentation>,
    keep: Vec<usize>,
    cornered: Arc<AlgebraPresentation>,
    dictionary: Vec<Path>,
}

impl CorneringData {
    /// `keep` lists parent vertices; the cornered algebra must have exactly
    /// these vertices, matched by name.
    pub fn new(
        parent: Arc<AlgebraPresentation>,
        keep: Vec<usize>,
        cornered: Arc<AlgebraPresentation>,
        dictionary: Vec<Path>,
    ) -> Result<Self> {
        let pq = parent.quiver();
        let cq = cornered.quiver();
        let mut keep = keep;
        keep.sort_unstable();
        keep.dedup();
        if !keep.contains(&pq.zero()) {
            return Err(Error::Invalid("the kept vertices must include 0".into()));
        }
        if keep.iter().any(|&v| v >= pq.num_vertices()) {
            return Err(Error::Invalid("kept vertex out of range".into()));
        }
        if cq.num_vertices() != keep.len()
            || keep.iter().any(|&v| cq.vertex_index(pq.vertex_name(v)).is_none())
        {
            return Err(Error::Invalid(
                "the cornered algebra must have exactly the kept vertices".into(),
            ));
        }
        if dictionary.len() != cq.num_arrows() {
            return Err(Error::Invalid(format!(
                "{} dictionary paths for {} cornered arrows",
                dictionary.len(),
                cq.num_arrows()
            )));
        }
        let data = CorneringData {
            parent: parent.clone(),
            keep,
            cornered: cornered.clone(),
            dictionary,
        };
        for (a, p) in data.dictionary.iter().enumerate() {
            let arr = cq.arrow(a);
            if p.tail() != data.parent_vertex(arr.tail) || p.head() != data.parent_vertex(arr.head) {
                return Err(Error::Endpoint(format!(
                    "cornered arrow `{}` runs {} -> {} but its path `{}` does not",
                    arr.name,
                    cq.vertex_name(arr.tail),
                    cq.vertex_name(arr.head),
                    p.display(pq)
                )));
            }
            if p.is_empty() {
                return Err(Error::Invalid(format!(
                    "cornered arrow `{}` must stand for a path of positive length",
                    arr.name
                )));
            }
        }
        Ok(data)
    }

    /// Builds the cornering described by a cornered-algebra document. Its
    /// vertices name the kept parent vertices; arrows without a dictionary
    /// line must be parent arrows of the same name.
    pub fn from_document(parent: Arc<AlgebraPresentation>, doc: &AlgebraDocument) -> Result<Self> {
        let pq = parent.quiver();
        let cq = doc.algebra.quiver();
        let keep = cq
            .vertices()
            .iter()
            .map(|v| {
                pq.vertex_index(v).ok_or_else(|| Error::Parse {
                    line: doc.vertices_line,
                    message: format!("vertex `{v}` is not a parent vertex"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut dictionary = Vec::with_capacity(cq.num_arrows());
        for (i, arr) in cq.arrows().iter().enumerate() {
            let line = doc.dictionary.iter().find(|d| d.arrow == arr.name);
            let path = match line {
                Some(d) => parse_path(pq, &d.path).map_err(|e| Error::Parse {
                    line: d.line,
                    message: e.to_string(),
                })?,
                None => {
                    let a = pq.arrow_index(&arr.name).ok_or_else(|| Error::Parse {
                        line: doc.arrow_lines.get(i).copied().unwrap_or(doc.vertices_line),
                        message: format!(
                            "cornered arrow `{}` has no dictionary entry and no parent arrow",
                            arr.name
                        ),
                    })?;
                    Path::arrow(pq, a)
                }
            };
            let line = line.map_or(doc.arrow_lines.get(i).copied().unwrap_or(doc.vertices_line), |d| d.line);
            let parent_end = |v: usize| keep[v];
            if path.tail() != parent_end(arr.tail) || path.head() != parent_end(arr.head) || path.is_empty() {
                return Err(Error::Parse {
                    line,
                    message: format!(
                        "cornered arrow `{}` runs {} -> {} but its path `{}` does not",
                        arr.name,
                        cq.vertex_name(arr.tail),
                        cq.vertex_name(arr.head),
                        path.display(pq)
                    ),
                });
            }
            dictionary.push(path);
        }
        for d in &doc.dictionary {
            if cq.arrow_index(&d.arrow).is_none() {
                return Err(Error::Parse {
                    line: d.line,
                    message: format!("dictionary entry for unknown arrow `{}`", d.arrow),
                });
            }
        }
        Self::new(parent, keep, Arc::new(doc.algebra.clone()), dictionary).map_err(|e| Error::Parse {
            line: doc.vertices_line,
            message: e.to_string(),
        })
    }

    /// `C = Q_0`: the cornered algebra is the parent itself.
    pub fn identity(parent: Arc<AlgebraPresentation>) -> Self {
        let q = parent.quiver();
        let dictionary = (0..q.num_arrows()).map(|a| Path::arrow(q, a)).collect();
        CorneringData {
            keep: (0..q.num_vertices()).collect(),
            cornered: parent.clone(),
            parent,
            dictionary,
        }
    }

    pub fn parent(&self) -> &Arc<AlgebraPresentation> {
        &self.parent
    }

    pub fn cornered(&self) -> &Arc<AlgebraPresentation> {
        &self.cornered
    }

    /// Kept parent vertices in increasing order.
    pub fn keep(&self) -> &[usize] {
        &self.keep
    }

    pub fn keep_names(&self) -> Vec<String> {
        self.keep
            .iter()
            .map(|&v| self.parent.quiver().vertex_name(v).to_string())
            .collect()
    }

    pub fn dictionary(&self) -> &[Path] {
        &self.dictionary
    }

    pub fn is_kept(&self, parent_vertex: usize) -> bool {
        self.keep.binary_search(&parent_vertex).is_ok()
    }

    /// Parent index of a cornered vertex.
    pub fn parent_vertex(&self, cornered_vertex: usize) -> usize {
        let name = self.cornered.quiver().vertex_name(cornered_vertex);
        self.parent
            .quiver()
            .vertex_index(name)
            .expect("cornered vertices are parent vertices")
    }

    /// Cornered index of a parent vertex, if kept.
    pub fn cornered_vertex(&self, parent_vertex: usize) -> Option<usize> {
        self.cornered
            .quiver()
            .vertex_index(self.parent.quiver().vertex_name(parent_vertex))
    }

    /// Restriction `e_C M`: the kept spaces, with each cornered arrow acting
    /// by its parent path.
    pub fn corner_restrict(&self, m: &Representation) -> Result<Representation> {
        if !Arc::ptr_eq(m.algebra(), &self.parent) && m.algebra().as_ref() != self.parent.as_ref() {
            return Err(Error::Invalid("module is not over the parent algebra".into()));
        }
        let cq = self.cornered.quiver();
        let dims = DimensionVector(
            (0..cq.num_vertices())
                .map(|v| m.dims()[self.parent_vertex(v)])
                .collect(),
        );
        let matrices = self
            .dictionary
            .iter()
            .map(|p| m.evaluate_path(p))
            .collect::<Result<Vec<_>>>()?;
        Representation::new(self.cornered.clone(), dims, matrices)
    }

    /// Cornered-algebra text with a `[dictionary]` section.
    pub fn to_text(&self) -> String {
        let mut out = self.cornered.to_text();
        out.push_str("\n[dictionary]\n");
        let pq = self.parent.quiver();
        for (arr, p) in self.cornered.quiver().arrows().iter().zip(&self.dictionary) {
            out.push_str(&format!("{} = {}\n", arr.name, p.display(pq)));
        }
        out
    }

    /// The cornered path for a word of cornered arrows given in traversal order.
    pub fn cornered_path(&self, word: &[usize], tail: usize) -> Result<Path> {
        if word.is_empty() {
            Ok(Path::idempotent(tail))
        } else {
            Path::from_arrows(self.cornered.quiver(), word)
        }
    }

    /// The parent path obtained by substituting dictionary paths.
    pub fn expand(&self, p: &Path) -> Result<Path> {
        let pq = self.parent.quiver();
        let mut out = Path::idempotent(self.parent_vertex(p.tail()));
        for &a in p.arrows() {
            for &b in self.dictionary[a].arrows() {
                out = out.then_arrow(pq, b)?;
            }
        }
        Ok(out)
    }
}

/// Dimension vector of the induced module: `dim N` on kept vertices and the
/// cokernel dimension of the evaluated presentation elsewhere.
pub fn induced_dims(
    cd: &CorneringData,
    n: &Representation,
    presentations: &BTreeMap<usize, ModulePresentation>,
) -> Result<DimensionVector> {
    let pq = cd.parent().quiver();
    let mut dims = Vec::with_capacity(pq.num_vertices());
    for k in 0..pq.num_vertices() {
        match cd.cornered_vertex(k) {
            Some(c) => dims.push(n.dims()[c]),
            None => {
                let p = presentations
                    .get(&k)
                    .ok_or_else(|| Error::MissingPresentation(pq.vertex_name(k).to_string()))?;
                dims.push(p.induced_dim(cd, n)?);
            }
        }
    }
    Ok(DimensionVector(dims))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipCertificate {
    /// The induced module is already too small at this vertex.
    DimensionDeficit {
        vertex: usize,
        induced: usize,
        required: usize,
    },
    /// The induced module has no quotient of the target dimension vector.
    NoQuotient(QuotientCertificate),
}

#[derive(Clone, Debug)]
pub enum ImageMembership {
    InImage {
        induced_dims: DimensionVector,
        /// A parent module of the target dimension vector restricting to `N`.
        witness: Option<Representation>,
    },
    NotInImage {
        induced_dims: DimensionVector,
        certificate: MembershipCertificate,
    },
    Unknown {
        induced_dims: DimensionVector,
        reason: String,
    },
}

impl ImageMembership {
    pub fn induced_dims(&self) -> &DimensionVector {
        match self {
            ImageMembership::InImage { induced_dims, .. }
            | ImageMembership::NotInImage { induced_dims, .. }
            | ImageMembership::Unknown { induced_dims, .. } => induced_dims,
        }
    }

    pub fn is_in_image(&self) -> bool {
        matches!(self, ImageMembership::InImage { .. })
    }

    pub fn is_not_in_image(&self) -> bool {
        matches!(self, ImageMembership::NotInImage { .. })
    }
}

/// First vertex where the induced dimension falls short of the target.
pub(crate) fn dimension_deficit(dims: &DimensionVector, v: &DimensionVector) -> Option<MembershipCertificate> {
    (0..dims.len())
        .find(|&k| v[k] > 0 && dims[k] < v[k])
        .map(|k| MembershipCertificate::DimensionDeficit {
            vertex: k,
            induced: dims[k],
            required: v[k],
        })
}

/// Image test using presentations only. Without an explicit induced module
/// the answer is decisive only when the dimensions already rule the target
/// out, or match it exactly (the induced module is then its own quotient).
pub fn image_membership_by_dims(
    cd: &CorneringData,
    n: &Representation,
    v: &DimensionVector,
    presentations: &BTreeMap<usize, ModulePresentation>,
) -> Result<ImageMembership> {
    check_membership_input(cd, n, v)?;
    let dims = induced_dims(cd, n, presentations)?;
    if let Some(certificate) = dimension_deficit(&dims, v) {
        return Ok(ImageMembership::NotInImage {
            induced_dims: dims,
            certificate,
        });
    }
    if &dims == v {
        return Ok(ImageMembership::InImage {
            induced_dims: dims,
            witness: None,
        });
    }
    Ok(ImageMembership::Unknown {
        reason: "the induced module is larger than the target and was not constructed".into(),
        induced_dims: dims,
    })
}

pub(crate) fn check_membership_input(cd: &CorneringData, n: &Representation, v: &DimensionVector) -> Result<()> {
    let pq = cd.parent().quiver();
    if v.len() != pq.num_vertices() {
        return Err(Error::Dimension(format!(
            "target dimension vector {v} has the wrong length"
        )));
    }
    if v[pq.zero()] != 1 {
        return Err(Error::ZeroVertexDimension(v[pq.zero()]));
    }
    for &p in cd.keep() {
        let cv = cd.cornered_vertex(p).expect("kept");
        if n.dims()[cv] != v[p] {
            return Err(Error::Dimension(format!(
                "module has dimension {} at vertex {} but the target has {}",
                n.dims()[cv],
                pq.vertex_name(p),
                v[p]
            )));
        }
    }
    if !n.is_zero_generated()? {
        return Err(Error::NotZeroGenerated);
    }
    Ok(())
}

/// The Leibniz expansion of a square presentation whose entries are single
/// paths (up to sign): one signed list of paths per permutation with no
/// zero entry.
pub fn determinant_terms(p: &ModulePresentation) -> Result<Vec<(i64, Vec<Path>)>> {
    let n = p.rows();
    if p.cols() != n {
        return Err(Error::Presentation(format!(
            "determinant of a {}x{} presentation",
            n,
            p.cols()
        )));
    }
    let mut single = vec![vec![None; n]; n];
    for (j, row) in single.iter_mut().enumerate() {
        for (i, slot) in row.iter_mut().enumerate() {
            let e: &PathCombination = p.entry(j, i);
            match e.terms() {
                [] => {}
                [(c, path)] if *c == int(1) => *slot = Some((1i64, path.clone())),
                [(c, path)] if *c == int(-1) => *slot = Some((-1i64, path.clone())),
                _ => {
                    return Err(Error::Presentation(
                        "determinant expansion needs entries that are signed single paths".into(),
                    ))
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |perm| {
        let mut sign = permutation_sign(perm);
        let mut paths = Vec::with_capacity(n);
        for (j, &i) in perm.iter().enumerate() {
            match &single[j][i] {
                Some((s, path)) => {
                    sign *= s;
                    paths.push(path.clone());
                }
                None => return,
            }
        }
        out.push((sign, paths));
    });
    Ok(out)
}

fn permutations(perm: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permutations(perm, k + 1, f);
        perm.swap(k, i);
    }
}

fn permutation_sign(perm: &[usize]) -> i64 {
    let mut sign = 1;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    sign
}

pub(crate) fn block_offsets(sizes: &[usize]) -> (Vec<usize>, usize) {
    let mut offsets = Vec::with_capacity(sizes.len());
    let mut total = 0;
    for &s in sizes {
        offsets.push(total);
        total += s;
    }
    (offsets, total)
}

#[cfg(test)]
mod tests;

/// A cornering together with presentations for the vertices outside `C`:
/// derived for binomial algebras, or read from files otherwise.
#[derive(Clone, Debug)]
pub enum Cornering {
    Derived(Box<BinomialCornering>),
    Supplied {
        data: CorneringData,
        presentations: BTreeMap<usize, ModulePresentation>,
    },
}

impl Cornering {
    pub fn data(&self) -> &CorneringData {
        match self {
            Cornering::Derived(b) => b.data(),
            Cornering::Supplied { data, .. } => data,
        }
    }

    pub fn presentations(&self) -> BTreeMap<usize, ModulePresentation> {
        match self {
            Cornering::Derived(b) => b.presentations(),
            Cornering::Supplied { presentations, .. } => presentations.clone(),
        }
    }

    pub fn derived(&self) -> Option<&BinomialCornering> {
        match self {
            Cornering::Derived(b) => Some(b),
            Cornering::Supplied { .. } => None,
        }
    }

    pub fn induced_dims(&self, n: &Representation) -> Result<DimensionVector> {
        induced_dims(self.data(), n, &self.presentations())
    }

    /// Image test; decisive beyond dimension counts only for derived
    /// cornerings, where the induced module can be built.
    pub fn image_membership(&self, n: &Representation, v: &DimensionVector) -> Result<ImageMembership> {
        match self {
            Cornering::Derived(b) => b.image_membership(n, v),
            Cornering::Supplied { data, presentations } => image_membership_by_dims(data, n, v, presentations),
        }
    }
}
