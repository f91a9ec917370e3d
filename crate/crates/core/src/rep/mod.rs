//! Finite-dimensional representations of a presented algebra.
//!
//! Arrow `a: i -> j` acts by a `dim_j x dim_i` matrix applied on the left.

mod quotient;
mod text;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::algebra::{AlgebraPresentation, Path, PathCombination};
use crate::error::{Error, Result};
use crate::linalg::{
    common_kernel, format_scalar, largest_invariant_subspace, Action, Matrix, Scalar, Subspace,
};

pub use quotient::{QuotientCertificate, QuotientDecision};
pub use text::{parse_representation, read_header, RepHeader};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimensionVector(pub Vec<usize>);

impl DimensionVector {
    pub fn ones(n: usize) -> Self {
        DimensionVector(vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Entries at the listed vertices, in order.
    pub fn restrict(&self, vertices: &[usize]) -> DimensionVector {
        DimensionVector(vertices.iter().map(|&v| self.0[v]).collect())
    }

    /// Parses `1,3,1` or `(1,3,1)`.
    pub fn parse(text: &str) -> Result<Self> {
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        inner
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Invalid(format!("invalid dimension `{}`", s.trim())))
            })
            .collect::<Result<Vec<_>>>()
            .map(DimensionVector)
    }
}

impl std::ops::Index<usize> for DimensionVector {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A rational weight per vertex; a submodule `S` is measured by
/// `theta(S) = sum_i theta_i dim S_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityParameter(pub Vec<Scalar>);

impl StabilityParameter {
    /// `1` on every vertex of `keep` other than `zero`, `0` elsewhere, and
    /// the value at `zero` that makes the pairing with `dims` vanish.
    pub fn cornered(n: usize, zero: usize, keep: &[usize], dims: &DimensionVector) -> Result<Self> {
        if dims[zero] == 0 {
            return Err(Error::ZeroVertexDimension(0));
        }
        let mut theta = vec![Scalar::zero(); n];
        let mut total = Scalar::zero();
        for &i in keep {
            if i != zero {
                theta[i] = Scalar::one();
                total += Scalar::from_integer(dims[i].into());
            }
        }
        theta[zero] = -total / Scalar::from_integer(dims[zero].into());
        Ok(StabilityParameter(theta))
    }

    /// `1` on every vertex except `zero`, balanced at `zero`.
    pub fn zero_generated(n: usize, zero: usize, dims: &DimensionVector) -> Result<Self> {
        let all: Vec<usize> = (0..n).collect();
        Self::cornered(n, zero, &all, dims)
    }

    pub fn pairing(&self, dims: &[usize]) -> Scalar {
        self.0
            .iter()
            .zip(dims)
            .map(|(t, &d)| t * Scalar::from_integer(d.into()))
            .sum()
    }

    /// `theta_i > 0` away from `zero`.
    pub fn in_zero_generated_chamber(&self, zero: usize) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, t)| i == zero || t.is_positive())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationViolation {
    pub index: usize,
    pub relation: String,
    pub value: Matrix,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Representation {
    algebra: Arc<AlgebraPresentation>,
    dims: DimensionVector,
    matrices: Vec<Matrix>,
}

impl Representation {
    pub fn new(
        algebra: Arc<AlgebraPresentation>,
        dims: DimensionVector,
        matrices: Vec<Matrix>,
    ) -> Result<Self> {
        let q = algebra.quiver();
        if dims.len() != q.num_vertices() {
            return Err(Error::Dimension(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                q.num_vertices()
            )));
        }
        if matrices.len() != q.num_arrows() {
            return Err(Error::Dimension(format!(
                "{} matrices for {} arrows",
                matrices.len(),
                q.num_arrows()
            )));
        }
        for (arr, m) in q.arrows().iter().zip(&matrices) {
            if m.rows() != dims[arr.head] || m.cols() != dims[arr.tail] {
                return Err(Error::Dimension(format!(
                    "arrow `{}` needs a {}x{} matrix, found {}x{}",
                    arr.name,
                    dims[arr.head],
                    dims[arr.tail],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Representation {
            algebra,
            dims,
            matrices,
        })
    }

    pub fn zero(algebra: Arc<AlgebraPresentation>, dims: DimensionVector) -> Result<Self> {
        let matrices = algebra
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(*dims.0.get(a.head).unwrap_or(&0), *dims.0.get(a.tail).unwrap_or(&0)))
            .collect();
        Self::new(algebra, dims, matrices)
    }

    /// The one-dimensional simple at vertex `i`.
    pub fn simple(algebra: Arc<AlgebraPresentation>, i: usize) -> Result<Self> {
        let mut dims = vec![0; algebra.quiver().num_vertices()];
        dims[i] = 1;
        Self::zero(algebra, DimensionVector(dims))
    }

    /// All-ones dimension vector with arrow values given as 0/1 flags.
    pub fn from_flags(algebra: Arc<AlgebraPresentation>, flags: &[bool]) -> Result<Self> {
        let n = algebra.quiver().num_vertices();
        let matrices = flags
            .iter()
            .map(|&f| Matrix::from_i64(1, 1, &[i64::from(f)]))
            .collect();
        Self::new(algebra, DimensionVector::ones(n), matrices)
    }

    /// All-ones dimension vector with the given scalar per arrow.
    pub fn from_scalars(algebra: Arc<AlgebraPresentation>, values: Vec<Scalar>) -> Result<Self> {
        let n = algebra.quiver().num_vertices();
        let matrices = values
            .into_iter()
            .map(|v| Matrix::from_rows(vec![vec![v]], 1).expect("one entry"))
            .collect();
        Self::new(algebra, DimensionVector::ones(n), matrices)
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        &self.algebra
    }

    pub fn dims(&self) -> &DimensionVector {
        &self.dims
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn matrix(&self, arrow: usize) -> &Matrix {
        &self.matrices[arrow]
    }

    pub fn matrix_by_name(&self, name: &str) -> Option<&Matrix> {
        self.algebra
            .quiver()
            .arrow_index(name)
            .map(|a| &self.matrices[a])
    }

    fn actions(&self) -> Vec<Action<'_>> {
        self.algebra
            .quiver()
            .arrows()
            .iter()
            .zip(&self.matrices)
            .map(|(a, m)| Action {
                tail: a.tail,
                head: a.head,
                matrix: m,
            })
            .collect()
    }

    /// Ordered product of arrow matrices along the path.
    pub fn evaluate_path(&self, p: &Path) -> Result<Matrix> {
        let q = self.algebra.quiver();
        if p.tail() >= q.num_vertices() || p.head() >= q.num_vertices() {
            return Err(Error::Endpoint("path does not live on this quiver".into()));
        }
        let mut m = Matrix::identity(self.dims[p.tail()]);
        let mut at = p.tail();
        for &a in p.arrows() {
            let arr = q.arrow(a);
            if arr.tail != at {
                return Err(Error::Endpoint(format!(
                    "arrow `{}` does not continue the path",
                    arr.name
                )));
            }
            m = self.matrices[a].mul(&m)?;
            at = arr.head;
        }
        Ok(m)
    }

    pub fn evaluate_combination(&self, c: &PathCombination, tail: usize, head: usize) -> Result<Matrix> {
        let mut out = Matrix::zeros(self.dims[head], self.dims[tail]);
        for (coeff, p) in c.terms() {
            if p.tail() != tail || p.head() != head {
                return Err(Error::Endpoint(format!(
                    "term `{}` does not run from {} to {}",
                    p.display(self.algebra.quiver()),
                    tail,
                    head
                )));
            }
            out = out.add(&self.evaluate_path(p)?.scale(coeff))?;
        }
        Ok(out)
    }

    /// Relations that do not evaluate to zero.
    pub fn check_relations(&self) -> Vec<RelationViolation> {
        let q = self.algebra.quiver();
        let mut out = Vec::new();
        for (i, r) in self.algebra.relations().iter().enumerate() {
            let (Some(t), Some(h)) = (r.tail(), r.head()) else {
                continue;
            };
            let value = self
                .evaluate_combination(r, t, h)
                .expect("relations have coherent endpoints");
            if !value.is_zero() {
                out.push(RelationViolation {
                    index: i,
                    relation: r.display(q),
                    value,
                });
            }
        }
        out
    }

    pub fn satisfies_relations(&self) -> bool {
        self.check_relations().is_empty()
    }

    fn check_family(&self, family: &[Subspace]) -> Result<()> {
        if family.len() != self.dims.len()
            || family.iter().zip(&self.dims.0).any(|(s, &d)| s.ambient() != d)
        {
            return Err(Error::Dimension(
                "subspace family does not match the representation".into(),
            ));
        }
        Ok(())
    }

    /// The smallest arrow-closed family containing `seed`, i.e. `A * seed`.
    pub fn generation_closure(&self, seed: &[Subspace]) -> Result<Vec<Subspace>> {
        self.check_family(seed)?;
        let mut current = seed.to_vec();
        let actions = self.actions();
        loop {
            let mut changed = false;
            for a in &actions {
                let image = current[a.tail].map(a.matrix)?;
                if !current[a.head].contains_subspace(&image) {
                    current[a.head] = current[a.head].sum(&image)?;
                    changed = true;
                }
            }
            if !changed {
                return Ok(current);
            }
        }
    }

    /// Submodule generated by the whole space at vertex 0.
    pub fn generated_by_zero(&self) -> Result<Vec<Subspace>> {
        let zero = self.algebra.quiver().zero();
        let seed: Vec<Subspace> = self
            .dims
            .0
            .iter()
            .enumerate()
            .map(|(i, &d)| if i == zero { Subspace::full(d) } else { Subspace::zero(d) })
            .collect();
        self.generation_closure(&seed)
    }

    /// Whether the module is generated by its vertex-0 space. Requires `dim_0 = 1`.
    pub fn is_zero_generated(&self) -> Result<bool> {
        let zero = self.algebra.quiver().zero();
        if self.dims[zero] != 1 {
            return Err(Error::ZeroVertexDimension(self.dims[zero]));
        }
        Ok(self.generated_by_zero()?.iter().all(Subspace::is_full))
    }

    /// Every arrow matrix is the scalar 0 or 1 and every dimension is at most 1.
    pub fn is_torus_invariant(&self) -> bool {
        self.dims.0.iter().all(|&d| d <= 1)
            && self.matrices.iter().all(|m| {
                m.rows() * m.cols() == 0
                    || (m.rows() == 1 && m.cols() == 1 && (m[(0, 0)].is_zero() || m[(0, 0)].is_one()))
            })
    }

    /// Stability of a torus-invariant module: `theta(S) > 0` for every
    /// nonzero proper submodule. Such submodules are the full fibres over
    /// vertex sets closed under the nonzero arrows.
    pub fn is_stable_invariant(&self, theta: &StabilityParameter) -> Result<bool> {
        if !self.is_torus_invariant() {
            return Err(Error::NotTorusInvariant(
                "dimensions must be at most 1 and arrows 0 or 1".into(),
            ));
        }
        if theta.0.len() != self.dims.len() {
            return Err(Error::Dimension("stability parameter length".into()));
        }
        if !theta.pairing(&self.dims.0).is_zero() {
            return Err(Error::Invalid(
                "stability parameter does not pair to zero with the dimension vector".into(),
            ));
        }
        let q = self.algebra.quiver();
        let support: Vec<usize> = (0..self.dims.len()).filter(|&i| self.dims[i] == 1).collect();
        if support.len() > 24 {
            return Err(Error::Invalid("too many vertices for subset enumeration".into()));
        }
        let edges: Vec<(usize, usize)> = q
            .arrows()
            .iter()
            .zip(&self.matrices)
            .filter(|(_, m)| m.rows() == 1 && m.cols() == 1 && !m[(0, 0)].is_zero())
            .map(|(a, _)| {
                let pos = |v| support.iter().position(|&s| s == v).expect("supported");
                (pos(a.tail), pos(a.head))
            })
            .collect();
        let full: u32 = if support.is_empty() { 0 } else { (1u32 << support.len()) - 1 };
        for mask in 1..full {
            let closed = edges
                .iter()
                .all(|&(t, h)| mask >> t & 1 == 0 || mask >> h & 1 == 1);
            if !closed {
                continue;
            }
            let value: Scalar = (0..support.len())
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| theta.0[support[k]].clone())
                .sum();
            if !value.is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Vertices `i` such that the simple `S_i` embeds in the module.
    pub fn socle_simples(&self) -> BTreeSet<usize> {
        let q = self.algebra.quiver();
        (0..self.dims.len())
            .filter(|&i| self.dims[i] > 0)
            .filter(|&i| {
                let outs: Vec<Matrix> = q
                    .out_arrows(i)
                    .iter()
                    .map(|&a| self.matrices[a].clone())
                    .collect();
                !common_kernel(&outs, self.dims[i])
                    .expect("out-arrow matrices have dim_i columns")
                    .is_zero()
            })
            .collect()
    }

    /// The largest submodule that vanishes on every vertex of `avoid`.
    pub fn max_submodule_off(&self, avoid: &[usize]) -> Result<Vec<Subspace>> {
        let allowed: Vec<Subspace> = self
            .dims
            .0
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                if avoid.contains(&i) {
                    Subspace::zero(d)
                } else {
                    Subspace::full(d)
                }
            })
            .collect();
        largest_invariant_subspace(&self.actions(), &allowed)
    }

    /// Whether a family of subspaces is closed under every arrow.
    pub fn is_submodule(&self, family: &[Subspace]) -> Result<bool> {
        self.check_family(family)?;
        for a in self.actions() {
            if !family[a.head].contains_subspace(&family[a.tail].map(a.matrix)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The same module over an algebra with identical quiver (used to attach
    /// a representation to a re-parsed copy of its algebra).
    pub fn with_algebra(&self, algebra: Arc<AlgebraPresentation>) -> Result<Self> {
        Self::new(algebra, self.dims.clone(), self.matrices.clone())
    }

    /// Text form accepted by [`parse_representation`].
    pub fn to_text(&self, algebra_ref: &str, keep: Option<&[String]>) -> String {
        text::serialize(self, algebra_ref, keep)
    }

    /// Values of the 1x1 arrow matrices, for all-ones dimension vectors.
    pub fn scalar_values(&self) -> Option<Vec<Scalar>> {
        self.matrices
            .iter()
            .map(|m| (m.rows() == 1 && m.cols() == 1).then(|| m[(0, 0)].clone()))
            .collect()
    }

    /// For 0-generated modules with `dim_0 = 1`: an isomorphism onto
    /// `other` fixing the vertex-0 basis vector up to the scalar `1`, as one
    /// invertible matrix per vertex, or `None` if there is none.
    ///
    /// Both modules are spanned by paths from vertex 0 applied to the basis
    /// vector there, so a common spanning set of paths determines the only
    /// candidate map.
    pub fn isomorphism_to(&self, other: &Representation) -> Result<Option<Vec<Matrix>>> {
        if self.dims != other.dims {
            return Ok(None);
        }
        if !self.is_zero_generated()? || !other.is_zero_generated()? {
            return Err(Error::Invalid("isomorphism test needs 0-generated modules".into()));
        }
        let q = self.algebra.quiver();
        let n = self.dims.len();
        let zero = q.zero();
        // vectors[i] holds pairs (vector in self, vector in other) at vertex i.
        let mut vectors: Vec<Vec<(Vec<Scalar>, Vec<Scalar>)>> = vec![Vec::new(); n];
        vectors[zero].push((vec![Scalar::one()], vec![Scalar::one()]));
        let mut queue = std::collections::VecDeque::from([(zero, 0usize)]);
        while let Some((v, k)) = queue.pop_front() {
            let (x, y) = vectors[v][k].clone();
            for &a in q.out_arrows(v) {
                let h = q.arrows()[a].head;
                let fx = self.matrices[a].apply(&x)?;
                let fy = other.matrices[a].apply(&y)?;
                let span = Subspace::span(self.dims[h], &vectors[h].iter().map(|p| p.0.clone()).collect::<Vec<_>>())?;
                if !span.contains(&fx) {
                    vectors[h].push((fx, fy));
                    queue.push_back((h, vectors[h].len() - 1));
                }
            }
        }
        let mut maps = Vec::with_capacity(n);
        for (i, pairs) in vectors.iter().enumerate() {
            let d = self.dims[i];
            let cols_x: Vec<Vec<Scalar>> = pairs.iter().map(|p| p.0.clone()).collect();
            let cols_y: Vec<Vec<Scalar>> = pairs.iter().map(|p| p.1.clone()).collect();
            let bx = Matrix::from_rows(cols_x, d)?.transpose();
            let by = Matrix::from_rows(cols_y, d)?.transpose();
            let Some(inv) = bx.inverse() else {
                return Ok(None);
            };
            if by.inverse().is_none() {
                return Ok(None);
            }
            maps.push(by.mul(&inv)?);
        }
        for (a, arr) in q.arrows().iter().enumerate() {
            let left = maps[arr.head].mul(&self.matrices[a])?;
            let right = other.matrices[a].mul(&maps[arr.tail])?;
            if left != right {
                return Ok(None);
            }
        }
        Ok(Some(maps))
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.algebra.quiver();
        write!(f, "Representation {} {{", self.dims)?;
        for (a, m) in q.arrows().iter().zip(&self.matrices) {
            if !m.is_zero() {
                write!(f, " {}: {:?}", a.name, m)?;
            }
        }
        write!(f, " }}")
    }
}

pub(crate) fn scalar_text(x: &Scalar) -> String {
    format_scalar(x)
}

#[cfg(test)]
mod tests;
