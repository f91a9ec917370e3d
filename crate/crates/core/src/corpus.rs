//! The bundled corpus: algebras, modules and presentations from the worked
//! examples, embedded at compile time.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{parse_algebra, parse_algebra_document, AlgebraPresentation};
use crate::corner::{parse_presentations, BinomialCornering, Cornering, CorneringData, CorneringOptions};
use crate::error::{Error, Result};
use crate::rep::{parse_representation, read_header, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorpusKind {
    Algebra,
    /// A cornered algebra with a `[dictionary]` section.
    CorneredAlgebra,
    Representation,
    Presentation,
    /// Signed sums of path monomials for identity checks.
    Expression,
}

#[derive(Clone, Copy, Debug)]
pub struct CorpusFile {
    pub id: &'static str,
    pub kind: CorpusKind,
    pub text: &'static str,
}

macro_rules! file {
    ($id:literal, $kind:ident, $ext:literal) => {
        CorpusFile {
            id: $id,
            kind: CorpusKind::$kind,
            text: include_str!(concat!("../corpus/", $id, ".", $ext)),
        }
    };
}

const FILES: &[CorpusFile] = &[
    file!("mckay-1-3-111", Algebra, "alg"),
    file!("mckay-1-6-123", Algebra, "alg"),
    file!("dp6-dimer", Algebra, "alg"),
    file!("quaternion-reconstruction", Algebra, "alg"),
    file!("quaternion-corner", CorneredAlgebra, "alg"),
    file!("mckay-1-3-N", Representation, "rep"),
    file!("mckay-1-3-jN", Representation, "rep"),
    file!("mckay-1-6-xchain", Representation, "rep"),
    file!("dp6-Nprime", Representation, "rep"),
    file!("zero-module", Representation, "rep"),
    file!("mckay-1-6-p5", Presentation, "pres"),
    file!("dp6-p5", Presentation, "pres"),
    file!("quaternion-p4", Presentation, "pres"),
    file!("mckay-1-6-detP", Expression, "expr"),
    file!("dp6-detP", Expression, "expr"),
];

/// Cornerings of non-binomial corpus algebras, given by files.
struct SuppliedCornering {
    parent: &'static str,
    keep: &'static [&'static str],
    cornered: &'static str,
    presentations: &'static str,
}

const SUPPLIED: &[SuppliedCornering] = &[SuppliedCornering {
    parent: "quaternion-reconstruction",
    keep: &["0", "1", "2", "3"],
    cornered: "quaternion-corner",
    presentations: "quaternion-p4",
}];

pub fn files() -> &'static [CorpusFile] {
    FILES
}

pub fn file(id: &str) -> Result<&'static CorpusFile> {
    FILES
        .iter()
        .find(|f| f.id == id)
        .ok_or_else(|| Error::UnknownCorpus(id.to_string()))
}

pub fn text(id: &str) -> Result<&'static str> {
    Ok(file(id)?.text)
}

pub fn algebra(id: &str) -> Result<Arc<AlgebraPresentation>> {
    let f = file(id)?;
    match f.kind {
        CorpusKind::Algebra => Ok(Arc::new(parse_algebra(f.text)?)),
        CorpusKind::CorneredAlgebra => Ok(Arc::new(parse_algebra_document(f.text)?.algebra)),
        _ => Err(Error::UnknownCorpus(format!("{id} is not an algebra"))),
    }
}

/// The cornering of `parent` at the named vertices. Binomial algebras are
/// cornered directly; otherwise a corpus cornering registered for
/// `parent_id` with the same vertex set is used.
pub fn cornering(
    parent: Arc<AlgebraPresentation>,
    parent_id: Option<&str>,
    keep: &[usize],
    options: CorneringOptions,
) -> Result<Cornering> {
    let graded_binomial = parent
        .binomials()
        .map(|b| b.iter().all(|(u, v)| u.len() == v.len()))
        .unwrap_or(false);
    if graded_binomial {
        return Ok(Cornering::Derived(Box::new(BinomialCornering::new(parent, keep, options)?)));
    }
    let q = parent.quiver();
    let mut names: Vec<&str> = keep.iter().map(|&v| q.vertex_name(v)).collect();
    names.sort_unstable();
    let supplied = SUPPLIED.iter().find(|s| {
        let mut k = s.keep.to_vec();
        k.sort_unstable();
        Some(s.parent) == parent_id && k == names
    });
    let Some(s) = supplied else {
        return Err(Error::MissingPresentation(
            "the algebra is not binomial and no cornering is bundled for this vertex set; \
             supply the cornered algebra and presentations"
                .into(),
        ));
    };
    let doc = parse_algebra_document(text(s.cornered)?)?;
    let data = CorneringData::from_document(parent, &doc)?;
    let presentations = parse_presentations(&data, text(s.presentations)?)?;
    Ok(Cornering::Supplied { data, presentations })
}

/// A corpus module: the module, its parent algebra, and the cornering it
/// lives on when the file has a `keep:` line.
#[derive(Clone, Debug)]
pub struct LoadedModule {
    pub id: String,
    pub parent_id: String,
    pub parent: Arc<AlgebraPresentation>,
    pub cornering: Option<Cornering>,
    pub module: Representation,
}

pub fn module(id: &str, options: CorneringOptions) -> Result<LoadedModule> {
    let text = text(id)?;
    let header = read_header(text)?;
    let parent_ref = header
        .algebra
        .ok_or_else(|| Error::Invalid(format!("{id} names no algebra")))?;
    let parent_id = parent_ref.strip_prefix("corpus:").unwrap_or(&parent_ref).to_string();
    let parent = algebra(&parent_id)?;
    let cornering = match &header.keep {
        Some(names) => {
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let keep = parent.quiver().vertex_set(&refs)?;
            Some(cornering(parent.clone(), Some(&parent_id), &keep, options)?)
        }
        None => None,
    };
    let on = match &cornering {
        Some(c) => c.data().cornered().clone(),
        None => parent.clone(),
    };
    let module = parse_representation(text, on)?;
    Ok(LoadedModule {
        id: id.to_string(),
        parent_id,
        parent,
        cornering,
        module,
    })
}

/// A corpus entry: an algebra and every corpus file that refers to it.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: String,
    pub algebra: Arc<AlgebraPresentation>,
    pub related: Vec<&'static CorpusFile>,
}

pub fn load_corpus(id: &str) -> Result<CorpusEntry> {
    let algebra = algebra(id)?;
    let tag = format!("corpus:{id}");
    let mut related = Vec::new();
    for f in FILES {
        let refers = match f.kind {
            CorpusKind::Representation => read_header(f.text)?.algebra.as_deref() == Some(tag.as_str()),
            _ => SUPPLIED
                .iter()
                .any(|s| s.parent == id && (s.cornered == f.id || s.presentations == f.id)),
        };
        if refers {
            related.push(f);
        }
    }
    Ok(CorpusEntry {
        id: id.to_string(),
        algebra,
        related,
    })
}

/// Corpus ids of each kind.
pub fn ids(kind: CorpusKind) -> Vec<&'static str> {
    FILES.iter().filter(|f| f.kind == kind).map(|f| f.id).collect()
}

/// Presentations in a corpus file, parsed against a cornering.
pub fn presentations(
    id: &str,
    data: &CorneringData,
) -> Result<BTreeMap<usize, crate::corner::ModulePresentation>> {
    parse_presentations(data, text(id)?)
}
