//! Quotients of prescribed dimension vector.

use num_traits::{One, Zero};

use super::{DimensionVector, Representation};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, Subspace};

/// Cap on coordinate subsets tried by the graded search.
const SEARCH_LIMIT: usize = 1 << 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientCertificate {
    /// The module is too small at this vertex.
    DimensionTooSmall {
        vertex: usize,
        available: usize,
        required: usize,
    },
    /// The kernel of any such quotient would lie in the largest submodule
    /// vanishing on `avoided`, which is too small at `vertex`.
    SubmoduleTooSmall {
        vertex: usize,
        needed: DimensionVector,
        available: DimensionVector,
        avoided: Vec<usize>,
    },
}

#[derive(Clone, Debug)]
pub enum QuotientDecision {
    Yes {
        quotient: Representation,
        kernel: Vec<Subspace>,
    },
    No(QuotientCertificate),
    Unknown {
        reason: String,
    },
}

impl QuotientDecision {
    pub fn is_yes(&self) -> bool {
        matches!(self, QuotientDecision::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, QuotientDecision::No(_))
    }
}

impl Representation {
    /// The quotient by a submodule, in coordinates chosen by `Subspace::equations`.
    pub fn quotient(&self, sub: &[Subspace]) -> Result<Representation> {
        if !self.is_submodule(sub)? {
            return Err(Error::Invalid("not a submodule".into()));
        }
        let proj: Vec<Matrix> = sub.iter().map(Subspace::equations).collect();
        let sections: Vec<Matrix> = proj
            .iter()
            .map(|p| {
                if p.rows() == 0 {
                    Ok(Matrix::zeros(p.cols(), 0))
                } else {
                    p.right_inverse()
                        .ok_or_else(|| Error::Invalid("projection without full row rank".into()))
                }
            })
            .collect::<Result<_>>()?;
        let q = self.algebra.quiver();
        let matrices = q
            .arrows()
            .iter()
            .zip(&self.matrices)
            .map(|(a, m)| proj[a.head].mul(m)?.mul(&sections[a.tail]))
            .collect::<Result<Vec<_>>>()?;
        let dims = DimensionVector(proj.iter().map(Matrix::rows).collect());
        Representation::new(self.algebra.clone(), dims, matrices)
    }

    /// Decides whether the module surjects onto some module of dimension
    /// vector `v`. The kernel of such a surjection is a submodule of
    /// dimension `dims - v`, vanishing wherever `dims` and `v` agree.
    pub fn admits_quotient_of_dim(&self, v: &DimensionVector) -> Result<QuotientDecision> {
        let zero = self.algebra.quiver().zero();
        if v.len() != self.dims.len() {
            return Err(Error::Dimension(format!(
                "target dimension vector {v} has the wrong length"
            )));
        }
        if v[zero] != 1 {
            return Err(Error::ZeroVertexDimension(v[zero]));
        }
        if !self.is_zero_generated()? {
            return Err(Error::NotZeroGenerated);
        }
        let mut w = Vec::with_capacity(v.len());
        for (i, (&d, &t)) in self.dims.0.iter().zip(&v.0).enumerate() {
            if d < t {
                return Ok(QuotientDecision::No(QuotientCertificate::DimensionTooSmall {
                    vertex: i,
                    available: d,
                    required: t,
                }));
            }
            w.push(d - t);
        }
        let avoided: Vec<usize> = (0..w.len()).filter(|&i| w[i] == 0).collect();
        let max = self.max_submodule_off(&avoided)?;
        let available = DimensionVector(max.iter().map(Subspace::dim).collect());
        if let Some(vertex) = (0..w.len()).find(|&i| available[i] < w[i]) {
            return Ok(QuotientDecision::No(QuotientCertificate::SubmoduleTooSmall {
                vertex,
                needed: DimensionVector(w),
                available,
                avoided,
            }));
        }
        if available.0 == w {
            return self.yes(max);
        }
        match self.coordinate_submodule(&max, &w)? {
            Some(kernel) => self.yes(kernel),
            None => Ok(QuotientDecision::Unknown {
                reason: format!(
                    "largest submodule off the matching vertices has dimensions {available}, \
                     no coordinate submodule of dimensions {} was found",
                    DimensionVector(w)
                ),
            }),
        }
    }

    fn yes(&self, kernel: Vec<Subspace>) -> Result<QuotientDecision> {
        let quotient = self.quotient(&kernel)?;
        Ok(QuotientDecision::Yes { quotient, kernel })
    }

    /// Searches submodules of dimensions `w` spanned by standard basis
    /// vectors lying in `within`. This is complete when the basis consists of
    /// weight vectors with one-dimensional weight spaces.
    fn coordinate_submodule(&self, within: &[Subspace], w: &[usize]) -> Result<Option<Vec<Subspace>>> {
        let candidates: Vec<Vec<usize>> = within
            .iter()
            .map(|s| {
                (0..s.ambient())
                    .filter(|&c| {
                        let mut e = vec![Scalar::zero(); s.ambient()];
                        e[c] = Scalar::one();
                        s.contains(&e)
                    })
                    .collect()
            })
            .collect();
        let choices: Vec<Vec<Vec<usize>>> = candidates
            .iter()
            .zip(w)
            .map(|(c, &k)| combinations(c, k))
            .collect();
        let total = choices
            .iter()
            .try_fold(1usize, |acc, c| acc.checked_mul(c.len()));
        match total {
            Some(0) => return Ok(None),
            Some(t) if t <= SEARCH_LIMIT => {}
            _ => return Ok(None),
        }
        let mut index = vec![0usize; choices.len()];
        loop {
            let family: Vec<Subspace> = index
                .iter()
                .enumerate()
                .map(|(i, &k)| Subspace::coordinate(self.dims[i], &choices[i][k]))
                .collect();
            if self.is_submodule(&family)? {
                return Ok(Some(family));
            }
            let mut pos = 0;
            loop {
                if pos == index.len() {
                    return Ok(None);
                }
                index[pos] += 1;
                if index[pos] < choices[pos].len() {
                    break;
                }
                index[pos] = 0;
                pos += 1;
            }
        }
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}
