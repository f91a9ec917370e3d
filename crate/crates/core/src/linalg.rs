//! Dense exact linear algebra over the rationals.
//!
//! Every routine here is exact. Ranks go through fraction-free (Bareiss)
//! elimination on an integer copy of the matrix; bases of subspaces are kept
//! in reduced row-echelon form so that equal subspaces compare equal.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.strip_prefix('+').unwrap_or(num).parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Scalar::new(num, den))
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Row-major integer entries; panics if `entries.len() != rows * cols`.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must equal rows*cols");
        Matrix {
            rows,
            cols,
            data: entries.iter().map(|&e| int(e)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} applied to {}x{}",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[&Matrix], cols: usize) -> Result<Matrix> {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            if p.cols != cols {
                return Err(Error::Dimension(format!(
                    "expected {cols} columns, found {}",
                    p.cols
                )));
            }
            rows += p.rows;
            data.extend(p.data.iter().cloned());
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Matrix::identity(n));
        let (r, pivots) = rref(&aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// A right inverse of a matrix with full row rank.
    pub fn right_inverse(&self) -> Option<Matrix> {
        let t = self.transpose();
        let gram = self.mul(&t).ok()?;
        t.mul(&gram.inverse()?).ok()
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let (mut work, scale) = integer_rows(self);
        let n = self.rows;
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !work[i][k].is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != k {
                work.swap(p, k);
                sign = -sign;
            }
            bareiss_step(&mut work, k, k, &prev);
            prev = work[k][k].clone();
        }
        let det = if n == 0 { BigInt::one() } else { prev };
        Ok(Scalar::new(sign * det, scale))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Clears denominators row by row. Returns the integer rows and the product of
/// the row multipliers (needed to undo the scaling in a determinant).
fn integer_rows(m: &Matrix) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut total = BigInt::one();
    let rows = (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            total *= &l;
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect()
        })
        .collect();
    (rows, total)
}

/// One fraction-free elimination step below pivot `(r, c)`. The division by
/// the previous pivot is exact by Sylvester's identity.
fn bareiss_step(work: &mut [Vec<BigInt>], r: usize, c: usize, prev: &BigInt) {
    let cols = work[r].len();
    let (top, bottom) = work.split_at_mut(r + 1);
    let pivot_row = &top[r];
    let pivot = &pivot_row[c];
    for row in bottom.iter_mut() {
        let factor = row[c].clone();
        for j in c + 1..cols {
            let v = pivot * &row[j] - &factor * &pivot_row[j];
            row[j] = v / prev;
        }
        row[c] = BigInt::zero();
    }
}

/// Rank over the rationals via Bareiss elimination, taking the first nonzero
/// pivot in column order.
pub fn rank(m: &Matrix) -> usize {
    let (mut work, _) = integer_rows(m);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !work[i][c].is_zero()) else {
            continue;
        };
        work.swap(p, r);
        bareiss_step(&mut work, r, c, &prev);
        prev = work[r][c].clone();
        r += 1;
    }
    r
}

/// Dimension of the cokernel of `m` viewed as a map from `cols` to `rows`.
pub fn cokernel_dim(m: &Matrix) -> usize {
    m.rows - rank(m)
}

/// Reduced row-echelon form and pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = tmp;
            }
        }
        let inv = a[(r, c)].recip();
        for j in c..a.cols {
            let v = &a[(r, j)] * &inv;
            a[(r, j)] = v;
        }
        for i in 0..a.rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..a.cols {
                let v = &a[(r, j)] * &f;
                a[(i, j)] -= v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    let keep = pivots.len();
    a.data.truncate(keep * a.cols);
    a.rows = keep;
    (a, pivots)
}

/// A subspace of `Q^ambient`, stored as an RREF basis (one basis vector per row).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        let m = Matrix::from_rows(vectors.to_vec(), ambient)?;
        Ok(Self::row_space(&m))
    }

    pub fn row_space(m: &Matrix) -> Self {
        let (basis, pivots) = rref(m);
        Subspace { basis, pivots }
    }

    /// Span of the columns of `m`.
    pub fn image(m: &Matrix) -> Self {
        Self::row_space(&m.transpose())
    }

    pub fn coordinate(ambient: usize, coords: &[usize]) -> Self {
        let vectors: Vec<Vec<Scalar>> = coords
            .iter()
            .map(|&c| {
                let mut v = vec![Scalar::zero(); ambient];
                v[c] = Scalar::one();
                v
            })
            .collect();
        Self::span(ambient, &vectors).expect("coordinate vectors have the ambient length")
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if v.len() != self.ambient() {
            return false;
        }
        // Reduce v against the RREF basis; what is left must vanish.
        let mut w = v.to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (j, b) in self.basis.row(k).iter().enumerate() {
                if !b.is_zero() {
                    w[j] -= &f * b;
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        let m = Matrix::vstack(&[&self.basis, &other.basis], self.ambient())?;
        Ok(Self::row_space(&m))
    }

    /// Rows of the returned matrix cut out `self` as a kernel.
    pub fn equations(&self) -> Matrix {
        let k = kernel(&self.basis);
        k.basis
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient() != other.ambient() {
            return Err(Error::Dimension(format!(
                "intersecting subspaces of Q^{} and Q^{}",
                self.ambient(),
                other.ambient()
            )));
        }
        let eqs = Matrix::vstack(&[&self.equations(), &other.equations()], self.ambient())?;
        Ok(kernel(&eqs))
    }

    /// `{x in self : m x in target}`.
    pub fn preimage_within(&self, m: &Matrix, target: &Subspace) -> Result<Subspace> {
        if m.cols != self.ambient() || m.rows != target.ambient() {
            return Err(Error::Dimension(format!(
                "map {}x{} between Q^{} and Q^{}",
                m.rows,
                m.cols,
                self.ambient(),
                target.ambient()
            )));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        // Coordinates c with target_eqs * m * basis^T * c = 0.
        let b = self.basis.transpose();
        let cond = target.equations().mul(m)?.mul(&b)?;
        let coeffs = kernel(&cond);
        let vecs = coeffs
            .basis_vectors()
            .iter()
            .map(|c| b.apply(c))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(self.ambient(), &vecs)
    }

    /// Image of `self` under `m`.
    pub fn map(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols != self.ambient() {
            return Err(Error::Dimension(format!(
                "map with {} columns applied to subspace of Q^{}",
                m.cols,
                self.ambient()
            )));
        }
        let vecs = self
            .basis_vectors()
            .iter()
            .map(|v| m.apply(v))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(m.rows, &vecs)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in Q^{}: {:?})", self.dim(), self.ambient(), self.basis)
    }
}

/// Kernel of `m` (as a subspace of `Q^cols`).
pub fn kernel(m: &Matrix) -> Subspace {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let vectors: Vec<Vec<Scalar>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); m.cols];
            v[f] = Scalar::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -r[(k, f)].clone();
            }
            v
        })
        .collect();
    Subspace::span(m.cols, &vectors).expect("kernel vectors have length cols")
}

/// Basis of the row vectors `y` with `y m = 0`, in RREF. Its rows define the
/// quotient map onto the cokernel of `m`.
pub fn left_kernel(m: &Matrix) -> Subspace {
    kernel(&m.transpose())
}

/// Intersection of the kernels of maps sharing a source of dimension `cols`.
/// The empty family gives the whole space.
pub fn common_kernel(maps: &[Matrix], cols: usize) -> Result<Subspace> {
    let refs: Vec<&Matrix> = maps.iter().collect();
    for m in &refs {
        if m.cols != cols {
            return Err(Error::Dimension(format!(
                "map with {} columns in a family over Q^{cols}",
                m.cols
            )));
        }
    }
    if refs.is_empty() {
        return Ok(Subspace::full(cols));
    }
    Ok(kernel(&Matrix::vstack(&refs, cols)?))
}

/// A linear map between two vertex spaces, as used by
/// [`largest_invariant_subspace`].
#[derive(Clone, Copy, Debug)]
pub struct Action<'a> {
    pub tail: usize,
    pub head: usize,
    pub matrix: &'a Matrix,
}

/// The largest family `W_i ⊆ allowed_i` with `a(W_tail) ⊆ W_head` for every action,
/// computed as a decreasing fixpoint.
pub fn largest_invariant_subspace(
    actions: &[Action<'_>],
    allowed: &[Subspace],
) -> Result<Vec<Subspace>> {
    for a in actions {
        let (Some(t), Some(h)) = (allowed.get(a.tail), allowed.get(a.head)) else {
            return Err(Error::Dimension(format!(
                "action between vertices {} and {} outside the family",
                a.tail, a.head
            )));
        };
        if a.matrix.cols != t.ambient() || a.matrix.rows != h.ambient() {
            return Err(Error::Dimension(format!(
                "action {}->{} is {}x{}, spaces have dims {} and {}",
                a.tail,
                a.head,
                a.matrix.rows,
                a.matrix.cols,
                t.ambient(),
                h.ambient()
            )));
        }
    }
    let mut current = allowed.to_vec();
    loop {
        let mut changed = false;
        for a in actions {
            let shrunk = current[a.tail].preimage_within(a.matrix, &current[a.head])?;
            if shrunk.dim() < current[a.tail].dim() {
                current[a.tail] = shrunk;
                changed = true;
            }
        }
        if !changed {
            return Ok(current);
        }
    }
}

/// A right inverse of a full-row-rank RREF matrix: the identity placed in its
/// pivot rows.
pub fn rref_section(q: &Subspace) -> Matrix {
    let mut r = Matrix::zeros(q.ambient(), q.dim());
    for (k, &p) in q.pivots().iter().enumerate() {
        r[(p, k)] = Scalar::one();
    }
    r
}

pub fn is_nonnegative_integer(x: &Scalar) -> bool {
    x.is_integer() && !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: usize, cols: usize, e: &[i64]) -> Matrix {
        Matrix::from_i64(rows, cols, e)
    }

    /// Rank by plain rational Gauss-Jordan, independent of the Bareiss path.
    fn rank_by_rref(a: &Matrix) -> usize {
        rref(a).1.len()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(3)), 3);
        assert_eq!(rank(&Matrix::zeros(3, 3)), 0);
        // the dP6 matrix with a_i = 1 and everything else 0
        assert_eq!(rank(&m(3, 3, &[0, -1, 0, 0, 0, -1, -1, 0, 0])), 3);
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel_dim(&m(3, 3, &[0, 0, 0, 0, 0, -1, 0, 1, 0])), 1);
        assert_eq!(cokernel_dim(&m(3, 3, &[0, -1, 0, 0, 0, -1, -1, 0, 0])), 0);
        assert_eq!(cokernel_dim(&Matrix::zeros(3, 3)), 3);
        assert_eq!(cokernel_dim(&Matrix::zeros(2, 0)), 2);
    }

    #[test]
    fn common_kernel_examples() {
        let maps = vec![m(1, 3, &[1, 0, 0]), m(1, 3, &[0, 1, 0]), m(1, 3, &[0, 0, 1])];
        assert!(common_kernel(&maps, 3).unwrap().is_zero());
        assert!(common_kernel(&[], 2).unwrap().is_full());
        assert_eq!(common_kernel(&[Matrix::zeros(1, 3)], 3).unwrap().dim(), 3);
        assert!(common_kernel(&[Matrix::zeros(1, 2)], 3).is_err());
    }

    #[test]
    fn invariant_subspace_examples() {
        // Two vertices, one arrow 0 -> 1 acting by [1 0].
        let a = m(1, 2, &[1, 0]);
        let actions = [Action {
            tail: 0,
            head: 1,
            matrix: &a,
        }];
        let full = largest_invariant_subspace(&actions, &[Subspace::full(2), Subspace::full(1)])
            .unwrap();
        assert!(full[0].is_full() && full[1].is_full());
        let zero = largest_invariant_subspace(&actions, &[Subspace::zero(2), Subspace::zero(1)])
            .unwrap();
        assert!(zero[0].is_zero() && zero[1].is_zero());
        // Forbidding vertex 1 leaves only the kernel of the arrow at vertex 0.
        let off = largest_invariant_subspace(&actions, &[Subspace::full(2), Subspace::zero(1)])
            .unwrap();
        assert_eq!(off[0], Subspace::coordinate(2, &[1]));
        assert!(largest_invariant_subspace(&actions, &[Subspace::full(3), Subspace::full(1)])
            .is_err());
    }

    #[test]
    fn determinant_and_scalars() {
        assert_eq!(
            m(3, 3, &[0, -3, 5, 2, 0, -2, -3, 2, 0]).determinant().unwrap(),
            int(2)
        );
        assert_eq!(m(2, 2, &[1, 2, 2, 4]).determinant().unwrap(), int(0));
        let half = Matrix::identity(2).scale(&ratio(1, 2));
        assert_eq!(half.determinant().unwrap(), ratio(1, 4));
        let x = parse_scalar("-6/4").unwrap();
        assert_eq!(format_scalar(&x), "-3/2");
        assert_eq!(format_scalar(&parse_scalar("7").unwrap()), "7");
        assert!(parse_scalar("1/0").is_none());
        assert!(parse_scalar("abc").is_none());
    }

    #[test]
    fn subspace_operations() {
        let a = Subspace::coordinate(3, &[0, 1]);
        let b = Subspace::coordinate(3, &[1, 2]);
        assert_eq!(a.intersect(&b).unwrap(), Subspace::coordinate(3, &[1]));
        assert!(a.sum(&b).unwrap().is_full());
        assert!(a.contains(&[int(2), int(-1), int(0)]));
        assert!(!a.contains(&[int(0), int(0), int(1)]));
        let q = left_kernel(&m(3, 1, &[1, 1, 0]));
        assert_eq!(q.dim(), 2);
        let r = rref_section(&q);
        assert_eq!(q.basis().mul(&r).unwrap(), Matrix::identity(2));
        let a = m(2, 3, &[1, 2, 0, 0, 1, 1]);
        assert_eq!(a.mul(&a.right_inverse().unwrap()).unwrap(), Matrix::identity(2));
        assert!(m(2, 2, &[1, 2, 2, 4]).inverse().is_none());
        let b = m(2, 2, &[2, 1, 1, 1]);
        assert_eq!(b.mul(&b.inverse().unwrap()).unwrap(), Matrix::identity(2));
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(-3i64..4, r * c).prop_map(move |e| Matrix::from_i64(r, c, &e))
        })
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(a in small_matrix()) {
            prop_assert_eq!(rank(&a), rank(&a.transpose()));
        }

        #[test]
        fn bareiss_agrees_with_rref(a in small_matrix()) {
            prop_assert_eq!(rank(&a), rank_by_rref(&a));
        }

        #[test]
        fn rank_plus_cokernel_is_rows(a in small_matrix()) {
            prop_assert_eq!(rank(&a) + cokernel_dim(&a), a.rows());
            prop_assert_eq!(rank(&a) + kernel(&a).dim(), a.cols());
        }

        #[test]
        fn scaling_preserves_rank(a in small_matrix(), p in 1i64..9, q in 1i64..9) {
            prop_assert_eq!(rank(&a.scale(&ratio(-p, q))), rank(&a));
        }

        #[test]
        fn invariant_subspace_is_invariant_and_maximal(
            e in prop::collection::vec(-1i64..2, 4),
            f in prop::collection::vec(-1i64..2, 4),
        ) {
            // Vertex 0 (dim 2) -> vertex 1 (dim 2) -> vertex 0, allowed = full at 0, a line at 1.
            let a = Matrix::from_i64(2, 2, &e);
            let b = Matrix::from_i64(2, 2, &f);
            let actions = [
                Action { tail: 0, head: 1, matrix: &a },
                Action { tail: 1, head: 0, matrix: &b },
            ];
            let allowed = [Subspace::full(2), Subspace::coordinate(2, &[0])];
            let w = largest_invariant_subspace(&actions, &allowed).unwrap();
            for act in &actions {
                prop_assert!(w[act.head].contains_subspace(&w[act.tail].map(act.matrix).unwrap()));
            }
            for (i, al) in allowed.iter().enumerate() {
                prop_assert!(al.contains_subspace(&w[i]));
            }
            // Maximality: any candidate family built from allowed coordinate vectors and
            // invariant must sit inside w.
            for mask0 in 0..4u8 {
                for mask1 in 0..2u8 {
                    let c0: Vec<usize> = (0..2).filter(|k| mask0 >> k & 1 == 1).collect();
                    let c1: Vec<usize> = (0..1).filter(|k| mask1 >> k & 1 == 1).collect();
                    let cand = [Subspace::coordinate(2, &c0), Subspace::coordinate(2, &c1)];
                    let invariant = actions.iter().all(|act| {
                        cand[act.head].contains_subspace(&cand[act.tail].map(act.matrix).unwrap())
                    });
                    if invariant {
                        prop_assert!(w[0].contains_subspace(&cand[0]));
                        prop_assert!(w[1].contains_subspace(&cand[1]));
                    }
                }
            }
        }
    }
}
