//! Cornering of binomial algebras, where path classes form a basis.
//!
//! For these algebras everything is combinatorial on path classes:
//!
//! * the arrows of `A_C` are the classes between kept vertices that do not
//!   factor through a kept vertex,
//! * the relations of `A_C` are found by connecting the factorizations of
//!   each class into cornered arrows,
//! * `e_k A e_C` is presented by its minimal generators and the syzygies
//!   among them, found the same way,
//! * `A e_C ⊗ N` is built explicitly from those presentations.
//!
//! Every search runs up to a length bound and is repeated one step further;
//! anything new in that extra step is reported as [`Error::Unstable`].

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{
    block_offsets, check_membership_input, dimension_deficit, induced_dims, CorneringData,
    ImageMembership, MembershipCertificate, ModulePresentation,
};
use crate::algebra::{AlgebraPresentation, Arrow, Path, PathCombination, Quiver};
use crate::classes::{ClassId, PathClasses};
use crate::error::{Error, Result};
use crate::linalg::{int, left_kernel, rank, rref_section, Matrix};
use crate::rep::{DimensionVector, QuotientDecision, Representation};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CorneringOptions {
    /// Longest parent path examined for cornered arrows and presentations.
    /// Defaults to `|Q_0| * (longest relation term) * 4`.
    pub bound: Option<usize>,
    /// Longest parent path examined for relations of the cornered algebra.
    /// Defaults to twice the longest cornered arrow plus two, capped by `bound`.
    pub relation_bound: Option<usize>,
}

/// A class from a kept vertex to `k` written as `prefix` (a class between
/// kept vertices, possibly an idempotent) followed by generator `generator`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub prefix: ClassId,
    pub generator: usize,
}

/// A derived presentation of `e_k A e_C` with the bookkeeping needed to
/// build induced modules.
#[derive(Clone, Debug)]
pub struct DerivedPresentation {
    pub presentation: ModulePresentation,
    pub generator_classes: Vec<ClassId>,
    /// Parent path length of the class each column was found at.
    pub column_lengths: Vec<usize>,
    factorizations: HashMap<ClassId, Factorization>,
}

impl DerivedPresentation {
    pub fn factorization(&self, class: ClassId) -> Option<Factorization> {
        self.factorizations.get(&class).copied()
    }
}

/// The cornering of a binomial algebra at a vertex subset, with derived
/// presentations for every vertex outside it.
#[derive(Clone, Debug)]
pub struct BinomialCornering {
    data: CorneringData,
    classes: PathClasses,
    bound: usize,
    relation_bound: usize,
    /// Parent vertex to cornered vertex.
    corner_of: Vec<Option<usize>>,
    /// Class of each cornered arrow.
    arrow_classes: Vec<ClassId>,
    /// For classes between kept vertices: `(prefix, last cornered arrow)`.
    factor: Vec<Option<(ClassId, u32)>>,
    presentations: BTreeMap<usize, DerivedPresentation>,
}

impl BinomialCornering {
    /// Corners `parent` at `keep` (parent vertex indices, must contain 0).
    pub fn new(parent: Arc<AlgebraPresentation>, keep: &[usize], options: CorneringOptions) -> Result<Self> {
        let pq = parent.quiver();
        let binomials = parent.binomials()?;
        for (i, (u, v)) in binomials.iter().enumerate() {
            if u.len() != v.len() {
                return Err(Error::NotBinomial {
                    index: i,
                    relation: parent.relations()[i].display(pq),
                });
            }
        }
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.iter().any(|&v| v >= pq.num_vertices()) {
            return Err(Error::Invalid("kept vertex out of range".into()));
        }
        if !keep.contains(&pq.zero()) {
            return Err(Error::Invalid("the kept vertices must include 0".into()));
        }
        let bound = options.bound.unwrap_or_else(|| default_bound(&parent));
        let classes = PathClasses::build(&parent, bound + 1)?;
        let mut corner_of = vec![None; pq.num_vertices()];
        for (i, &v) in keep.iter().enumerate() {
            corner_of[v] = Some(i);
        }

        let (arrow_classes, factor) = cornered_arrows(&classes, &corner_of, bound)?;
        let max_arrow = arrow_classes.iter().map(|&c| classes.len(c)).max().unwrap_or(1);
        let relation_bound = options
            .relation_bound
            .unwrap_or(2 * max_arrow + 2)
            .min(bound);

        let cq = cornered_quiver(&classes, &keep, &corner_of, &arrow_classes)?;
        let dictionary: Vec<Path> = arrow_classes.iter().map(|&c| classes.representative(c)).collect();
        let mut bc = BinomialCornering {
            data: CorneringData::identity(parent.clone()),
            classes,
            bound,
            relation_bound,
            corner_of,
            arrow_classes,
            factor,
            presentations: BTreeMap::new(),
        };
        let relations = bc.cornered_relations(&cq)?;
        let cornered = Arc::new(AlgebraPresentation::new(cq, relations)?);
        bc.data = CorneringData::new(parent.clone(), keep, cornered, dictionary)?;
        for k in 0..pq.num_vertices() {
            if bc.corner_of[k].is_none() {
                let d = bc.derive_presentation(k)?;
                bc.presentations.insert(k, d);
            }
        }
        Ok(bc)
    }

    pub fn data(&self) -> &CorneringData {
        &self.data
    }

    pub fn classes(&self) -> &PathClasses {
        &self.classes
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn relation_bound(&self) -> usize {
        self.relation_bound
    }

    /// Classes standing for the cornered arrows, in arrow order.
    pub fn arrow_classes(&self) -> &[ClassId] {
        &self.arrow_classes
    }

    pub fn derived(&self, k: usize) -> Option<&DerivedPresentation> {
        self.presentations.get(&k)
    }

    /// Presentations of `e_k A e_C` for every vertex `k` outside `C`.
    pub fn presentations(&self) -> BTreeMap<usize, ModulePresentation> {
        self.presentations
            .iter()
            .map(|(&k, d)| (k, d.presentation.clone()))
            .collect()
    }

    /// The presentation of `e_k A e_C`; for a kept vertex this is the single
    /// generator `e_k` with no relations.
    pub fn presentation(&self, k: usize) -> Result<ModulePresentation> {
        if self.corner_of.get(k).copied().flatten().is_some() {
            return ModulePresentation::new(&self.data, k, vec![Path::idempotent(k)], vec![Vec::new()]);
        }
        self.presentations
            .get(&k)
            .map(|d| d.presentation.clone())
            .ok_or_else(|| Error::Invalid(format!("vertex {k} out of range")))
    }

    fn is_kept(&self, v: usize) -> bool {
        self.corner_of[v].is_some()
    }

    /// Cornered arrows (traversal order) spelling a class between kept vertices.
    pub fn word(&self, class: ClassId) -> Vec<usize> {
        let mut out = Vec::new();
        let mut c = class;
        while self.classes.len(c) > 0 {
            let (prefix, a) = self.factor[c as usize].expect("class between kept vertices");
            out.push(a as usize);
            c = prefix;
        }
        out.reverse();
        out
    }

    /// The cornered path spelling a class between kept vertices.
    pub fn cornered_path(&self, class: ClassId) -> Path {
        let tail = self.corner_of[self.classes.tail(class)].expect("kept tail");
        self.data
            .cornered_path(&self.word(class), tail)
            .expect("words of cornered arrows compose")
    }

    /// Action of a class between kept vertices on a cornered module.
    pub fn evaluate_class(&self, n: &Representation, class: ClassId) -> Result<Matrix> {
        n.evaluate_path(&self.cornered_path(class))
    }

    /// Relations of the cornered algebra. For each class `X` the
    /// factorizations into cornered arrows form a graph: two words are joined
    /// when they share their last arrow and agree before it, or share their
    /// first arrow and agree after it. Relations of shorter classes already
    /// account for those joins, so every extra component needs a relation.
    fn cornered_relations(&self, cq: &Quiver) -> Result<Vec<PathCombination>> {
        let pc = &self.classes;
        let by_source = self.arrows_by_vertex(true);
        let by_target = self.arrows_by_vertex(false);
        let limit = self.relation_bound + 1;
        // Node ids: words ending in α after prefix s (`left`) and words
        // starting with β before suffix t (`right`).
        let mut left: HashMap<(ClassId, u32), u32> = HashMap::new();
        let mut right: HashMap<(u32, ClassId), u32> = HashMap::new();
        let mut parent: Vec<u32> = Vec::new();
        let mut node_class: Vec<ClassId> = Vec::new();
        let mut left_nodes: Vec<(ClassId, u32)> = Vec::new();
        let intern = |parent: &mut Vec<u32>, node_class: &mut Vec<ClassId>, x: ClassId| {
            let id = parent.len() as u32;
            parent.push(id);
            node_class.push(x);
            id
        };
        // Every word of length at least two is β · m · α for a class m
        // between kept vertices (possibly an idempotent).
        for len_m in 0..limit {
            for m in pc.level(len_m) {
                let (mt, mh) = (pc.tail(m), pc.head(m));
                if !self.is_kept(mt) || !self.is_kept(mh) {
                    continue;
                }
                for &beta in &by_target[mt] {
                    let db = self.arrow_classes[beta as usize];
                    if pc.len(db) + len_m >= limit {
                        continue;
                    }
                    let s = pc.concat(db, m)?;
                    for &alpha in &by_source[mh] {
                        let da = self.arrow_classes[alpha as usize];
                        if pc.len(s) + pc.len(da) > limit {
                            continue;
                        }
                        let x = pc.concat(s, da)?;
                        let t = pc.concat(m, da)?;
                        let l = *left.entry((s, alpha)).or_insert_with(|| {
                            left_nodes.push((s, alpha));
                            intern(&mut parent, &mut node_class, x)
                        });
                        let r = *right
                            .entry((beta, t))
                            .or_insert_with(|| intern(&mut parent, &mut node_class, x));
                        union(&mut parent, l, r);
                    }
                }
            }
        }
        // Group the components of each class, keyed by their smallest left node.
        let mut components: BTreeMap<ClassId, BTreeMap<u32, (ClassId, u32)>> = BTreeMap::new();
        left_nodes.sort_by_key(|&(s, a)| (pc.len(s), s, a));
        for &(s, a) in &left_nodes {
            let id = left[&(s, a)];
            let root = find(&mut parent, id);
            let x = node_class[id as usize];
            components.entry(x).or_default().entry(root).or_insert((s, a));
        }
        let mut relations = Vec::new();
        for (x, comps) in components {
            if comps.len() < 2 {
                continue;
            }
            if pc.len(x) > self.relation_bound {
                return Err(Error::Unstable {
                    what: "relations of the cornered algebra".into(),
                    length: pc.len(x),
                });
            }
            let (s0, a0) = self.factor[x as usize].expect("reducible class");
            let base_root = find(&mut parent, left[&(s0, a0)]);
            let word_of = |s: ClassId, a: u32| {
                let mut w = self.word(s);
                w.push(a as usize);
                w
            };
            let base = Path::from_arrows(cq, &word_of(s0, a0))?;
            for (root, (s, a)) in comps {
                if root == base_root {
                    continue;
                }
                let other = Path::from_arrows(cq, &word_of(s, a))?;
                relations.push(PathCombination::new(vec![(int(1), base.clone()), (int(-1), other)])?);
            }
        }
        Ok(relations)
    }

    /// Cornered arrow indices grouped by parent tail (`by_tail`) or head.
    fn arrows_by_vertex(&self, by_tail: bool) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.corner_of.len()];
        for (i, &c) in self.arrow_classes.iter().enumerate() {
            let v = if by_tail { self.classes.tail(c) } else { self.classes.head(c) };
            out[v].push(i as u32);
        }
        out
    }

    /// Presents `e_k A e_C` for `k` outside `C`: generators are the classes
    /// from kept vertices to `k` that are not a longer class followed by a
    /// shorter one, and each column is a syzygy `g_j q = g_j' q'` not implied
    /// by earlier ones.
    fn derive_presentation(&self, k: usize) -> Result<DerivedPresentation> {
        let pc = &self.classes;
        let limit = self.bound + 1;
        let mut generators: Vec<ClassId> = Vec::new();
        let mut factorizations: HashMap<ClassId, Factorization> = HashMap::new();
        // Syzygies as (class, row j, q, row j', q').
        let mut syzygies: Vec<(ClassId, usize, ClassId, usize, ClassId)> = Vec::new();
        for len in 1..=limit {
            // Fibre elements (j, q) with q followed by g_j landing in this level.
            let mut fibres: BTreeMap<ClassId, Vec<(usize, ClassId)>> = BTreeMap::new();
            for (j, &g) in generators.iter().enumerate() {
                let lg = pc.len(g);
                let gt = pc.tail(g);
                for &q in pc.with_head(len - lg, gt) {
                    if !self.is_kept(pc.tail(q)) {
                        continue;
                    }
                    let y = pc.concat(q, g)?;
                    fibres.entry(y).or_default().push((j, q));
                    factorizations.entry(y).or_insert(Factorization {
                        prefix: q,
                        generator: j,
                    });
                }
            }
            let mut fresh: Vec<ClassId> = pc
                .with_head(len, k)
                .iter()
                .copied()
                .filter(|&y| self.is_kept(pc.tail(y)) && !fibres.contains_key(&y))
                .collect();
            fresh.sort_by_key(|&y| pc.representative_arrows(y));
            for y in fresh {
                if len == limit {
                    return Err(Error::Unstable {
                        what: format!("generators at vertex {}", pc.quiver().vertex_name(k)),
                        length: len,
                    });
                }
                factorizations.insert(
                    y,
                    Factorization {
                        prefix: pc.idempotent(pc.tail(y)),
                        generator: generators.len(),
                    },
                );
                generators.push(y);
            }
            // Joins implied by earlier syzygies multiplied by classes s.
            let mut joins: Vec<((usize, ClassId), (usize, ClassId))> = Vec::new();
            for &(yr, j, q, j2, q2) in &syzygies {
                for &s in pc.with_head(len - pc.len(yr), pc.tail(yr)) {
                    if !self.is_kept(pc.tail(s)) {
                        continue;
                    }
                    joins.push(((j, pc.concat(s, q)?), (j2, pc.concat(s, q2)?)));
                }
            }
            let mut join_map: HashMap<(usize, ClassId), Vec<(usize, ClassId)>> = HashMap::new();
            for (a, b) in joins {
                join_map.entry(a).or_default().push(b);
                join_map.entry(b).or_default().push(a);
            }
            for (&y, elems) in &fibres {
                if elems.len() < 2 {
                    continue;
                }
                let index: HashMap<(usize, ClassId), u32> =
                    elems.iter().enumerate().map(|(i, &e)| (e, i as u32)).collect();
                let mut parent: Vec<u32> = (0..elems.len() as u32).collect();
                for (i, e) in elems.iter().enumerate() {
                    for other in join_map.get(e).into_iter().flatten() {
                        if let Some(&o) = index.get(other) {
                            union(&mut parent, i as u32, o);
                        }
                    }
                }
                let mut sorted = elems.clone();
                sorted.sort_by_key(|&(j, q)| (j, pc.len(q), q));
                let base = sorted[0];
                let base_root = find(&mut parent, index[&base]);
                let mut seen = vec![base_root];
                for &e in &sorted[1..] {
                    let root = find(&mut parent, index[&e]);
                    if seen.contains(&root) {
                        continue;
                    }
                    if len == limit {
                        return Err(Error::Unstable {
                            what: format!("syzygies at vertex {}", pc.quiver().vertex_name(k)),
                            length: len,
                        });
                    }
                    seen.push(root);
                    union(&mut parent, base_root, root);
                    syzygies.push((y, base.0, base.1, e.0, e.1));
                }
            }
        }
        let generator_paths: Vec<Path> = generators.iter().map(|&g| pc.representative(g)).collect();
        let mut entries = vec![vec![PathCombination::zero(); syzygies.len()]; generators.len()];
        for (i, &(_, j, q, j2, q2)) in syzygies.iter().enumerate() {
            let (p, p2) = (self.cornered_path(q), self.cornered_path(q2));
            if j == j2 {
                entries[j][i] = PathCombination::new(vec![(int(1), p), (int(-1), p2)])?;
            } else {
                entries[j][i] = PathCombination::from_path(p);
                entries[j2][i] = PathCombination::new(vec![(int(-1), p2)])?;
            }
        }
        let column_lengths = syzygies.iter().map(|&(y, ..)| pc.len(y)).collect();
        let presentation = ModulePresentation::new(&self.data, k, generator_paths, entries)?;
        Ok(DerivedPresentation {
            presentation,
            generator_classes: generators,
            column_lengths,
            factorizations,
        })
    }

    /// `dim (A e_C ⊗ N)` at every vertex.
    pub fn induced_dims(&self, n: &Representation) -> Result<DimensionVector> {
        induced_dims(&self.data, n, &self.presentations())
    }

    /// Builds `A e_C ⊗ N` with explicit arrow matrices. At a vertex `k`
    /// outside `C` the space is the cokernel of `P_N`, with coordinates given
    /// by the reduced left kernel of `P_N`.
    pub fn build_induced_module(&self, n: &Representation) -> Result<InducedModule> {
        if n.algebra().as_ref() != self.data.cornered().as_ref() {
            return Err(Error::Invalid("module is not over the cornered algebra".into()));
        }
        let pq = self.data.parent().quiver();
        let nv = pq.num_vertices();
        let mut quotients = Vec::with_capacity(nv);
        let mut sections = Vec::with_capacity(nv);
        let mut presented = Vec::with_capacity(nv);
        for k in 0..nv {
            match self.corner_of[k] {
                Some(c) => {
                    let d = n.dims()[c];
                    quotients.push(Matrix::identity(d));
                    sections.push(Matrix::identity(d));
                    presented.push(Matrix::zeros(d, 0));
                }
                None => {
                    let p = self.presentations[&k].presentation.evaluate(&self.data, n)?;
                    let q = left_kernel(&p);
                    sections.push(rref_section(&q));
                    quotients.push(q.basis().clone());
                    presented.push(p);
                }
            }
        }
        let dims = DimensionVector(quotients.iter().map(Matrix::rows).collect());
        let mut matrices = Vec::with_capacity(pq.num_arrows());
        for (a, arr) in pq.arrows().iter().enumerate() {
            let t = self.lift_arrow(n, a)?;
            let (k, l) = (arr.tail, arr.head);
            if !quotients[l].mul(&t)?.mul(&presented[k])?.is_zero() {
                return Err(Error::Invalid(format!(
                    "arrow `{}` does not descend to the cokernel; the presentation is incomplete",
                    arr.name
                )));
            }
            matrices.push(quotients[l].mul(&t)?.mul(&sections[k])?);
        }
        let module = Representation::new(self.data.parent().clone(), dims, matrices)?;
        Ok(InducedModule {
            module,
            quotients,
            sections,
        })
    }

    /// Sources `(class, dims block)` spanning the free module at a vertex:
    /// the idempotent for kept vertices, the generators otherwise.
    fn sources(&self, n: &Representation, k: usize) -> Vec<(ClassId, usize)> {
        match self.corner_of[k] {
            Some(c) => vec![(self.classes.idempotent(k), n.dims()[c])],
            None => self.presentations[&k]
                .generator_classes
                .iter()
                .map(|&g| (g, n.dims()[self.corner_of[self.classes.tail(g)].expect("kept")]))
                .collect(),
        }
    }

    /// The arrow `a` between the free modules before passing to cokernels.
    fn lift_arrow(&self, n: &Representation, a: usize) -> Result<Matrix> {
        let pc = &self.classes;
        let arr = pc.quiver().arrow(a);
        let src = self.sources(n, arr.tail);
        let dst = self.sources(n, arr.head);
        let (src_off, cols) = block_offsets(&src.iter().map(|s| s.1).collect::<Vec<_>>());
        let (dst_off, rows) = block_offsets(&dst.iter().map(|s| s.1).collect::<Vec<_>>());
        let mut t = Matrix::zeros(rows, cols);
        for (j, &(g, _)) in src.iter().enumerate() {
            let x = pc.extend(g, a)?;
            let (i, prefix) = if self.is_kept(arr.head) {
                (0, x)
            } else {
                let f = self.presentations[&arr.head]
                    .factorization(x)
                    .ok_or_else(|| Error::Unstable {
                        what: "factorization through generators".into(),
                        length: pc.len(x),
                    })?;
                (f.generator, f.prefix)
            };
            let block = self.evaluate_class(n, prefix)?;
            t.set_block(dst_off[i], src_off[j], &block);
        }
        Ok(t)
    }

    /// The counit `A e_C ⊗ e_C M -> M` for a parent module `M`, one matrix
    /// per vertex, checked to be well defined and a module map.
    pub fn counit(&self, induced: &InducedModule, m: &Representation) -> Result<Vec<Matrix>> {
        let pq = self.data.parent().quiver();
        let mut eps = Vec::with_capacity(pq.num_vertices());
        for k in 0..pq.num_vertices() {
            if self.is_kept(k) {
                eps.push(Matrix::identity(m.dims()[k]));
                continue;
            }
            let gens = &self.presentations[&k].generator_classes;
            let blocks: Vec<Matrix> = gens
                .iter()
                .map(|&g| m.evaluate_path(&self.classes.representative(g)))
                .collect::<Result<_>>()?;
            let cols: usize = blocks.iter().map(Matrix::cols).sum();
            let mut e = Matrix::zeros(m.dims()[k], cols);
            let mut off = 0;
            for b in &blocks {
                e.set_block(0, off, b);
                off += b.cols();
            }
            eps.push(e.mul(&induced.sections[k])?);
        }
        for (a, arr) in pq.arrows().iter().enumerate() {
            let lhs = eps[arr.head].mul(induced.module.matrix(a))?;
            let rhs = m.matrix(a).mul(&eps[arr.tail])?;
            if lhs != rhs {
                return Err(Error::Invalid(format!(
                    "counit does not commute with arrow `{}`",
                    arr.name
                )));
            }
        }
        Ok(eps)
    }

    /// Whether the counit onto `M` is surjective at every vertex.
    pub fn counit_is_surjective(&self, m: &Representation) -> Result<bool> {
        let n = self.data.corner_restrict(m)?;
        let induced = self.build_induced_module(&n)?;
        let eps = self.counit(&induced, m)?;
        Ok(eps.iter().zip(&m.dims().0).all(|(e, &d)| rank(e) == d))
    }

    /// Decides whether `N` restricts from a parent module of dimension vector `v`.
    pub fn image_membership(&self, n: &Representation, v: &DimensionVector) -> Result<ImageMembership> {
        check_membership_input(&self.data, n, v)?;
        let dims = self.induced_dims(n)?;
        if let Some(certificate) = dimension_deficit(&dims, v) {
            return Ok(ImageMembership::NotInImage {
                induced_dims: dims,
                certificate,
            });
        }
        let induced = self.build_induced_module(n)?;
        Ok(match induced.module.admits_quotient_of_dim(v)? {
            QuotientDecision::Yes { quotient, .. } => ImageMembership::InImage {
                induced_dims: dims,
                witness: Some(quotient),
            },
            QuotientDecision::No(cert) => ImageMembership::NotInImage {
                induced_dims: dims,
                certificate: MembershipCertificate::NoQuotient(cert),
            },
            QuotientDecision::Unknown { reason } => ImageMembership::Unknown {
                induced_dims: dims,
                reason,
            },
        })
    }
}

/// `A e_C ⊗ N` with the coordinates used to build it: `quotients[k]` maps
/// the free module at `k` onto the space, `sections[k]` is a right inverse.
#[derive(Clone, Debug)]
pub struct InducedModule {
    pub module: Representation,
    pub quotients: Vec<Matrix>,
    pub sections: Vec<Matrix>,
}

fn default_bound(a: &AlgebraPresentation) -> usize {
    let longest = a
        .relations()
        .iter()
        .flat_map(|r| r.terms().iter().map(|(_, p)| p.len()))
        .max()
        .unwrap_or(1);
    a.quiver().num_vertices() * longest * 4
}

type Factors = Vec<Option<(ClassId, u32)>>;

/// Finds the irreducible classes between kept vertices level by level and
/// records for every class between kept vertices a last irreducible factor.
fn cornered_arrows(pc: &PathClasses, corner_of: &[Option<usize>], bound: usize) -> Result<(Vec<ClassId>, Factors)> {
    let kept = |v: usize| corner_of[v].is_some();
    let mut factor: Factors = vec![None; pc.num_classes()];
    let mut arrows: Vec<ClassId> = Vec::new();
    for len in 1..=bound + 1 {
        for (i, &d) in arrows.iter().enumerate() {
            let ld = pc.len(d);
            for &s in pc.with_head(len - ld, pc.tail(d)) {
                if !kept(pc.tail(s)) {
                    continue;
                }
                let x = pc.concat(s, d)?;
                if factor[x as usize].is_none() {
                    factor[x as usize] = Some((s, i as u32));
                }
            }
        }
        for x in pc.level(len) {
            if factor[x as usize].is_some() || !kept(pc.tail(x)) || !kept(pc.head(x)) {
                continue;
            }
            if len == bound + 1 {
                return Err(Error::Unstable {
                    what: "arrows of the cornered algebra".into(),
                    length: len,
                });
            }
            factor[x as usize] = Some((pc.idempotent(pc.tail(x)), arrows.len() as u32));
            arrows.push(x);
        }
    }
    Ok((arrows, factor))
}

/// Quiver on the kept vertices whose arrows are the irreducible classes.
/// Single parent arrows keep their names; longer classes are named by
/// their representative's arrow names in right-to-left order.
fn cornered_quiver(
    pc: &PathClasses,
    keep: &[usize],
    corner_of: &[Option<usize>],
    arrow_classes: &[ClassId],
) -> Result<Quiver> {
    let pq = pc.quiver();
    let vertices: Vec<String> = keep.iter().map(|&v| pq.vertex_name(v).to_string()).collect();
    let mut names: Vec<String> = Vec::with_capacity(arrow_classes.len());
    for &c in arrow_classes {
        let rep = pc.representative_arrows(c);
        let parts: Vec<&str> = rep.iter().rev().map(|&a| pq.arrow(a).name.as_str()).collect();
        let mut name = parts.concat();
        if names.contains(&name) || (rep.len() > 1 && pq.arrow_index(&name).is_some()) {
            name = parts.join("_");
        }
        names.push(name);
    }
    let arrows = arrow_classes
        .iter()
        .zip(names)
        .map(|(&c, name)| Arrow {
            name,
            tail: corner_of[pc.tail(c)].expect("kept"),
            head: corner_of[pc.head(c)].expect("kept"),
            weight: pc.weight(c),
        })
        .collect();
    Quiver::new(vertices, arrows)
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let p = parent[x as usize];
        parent[x as usize] = parent[p as usize];
        x = p;
    }
    x
}

fn union(parent: &mut [u32], a: u32, b: u32) {
    let (a, b) = (find(parent, a), find(parent, b));
    if a != b {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        parent[hi as usize] = lo;
    }
}
