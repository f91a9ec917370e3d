//! McKay quivers of diagonal cyclic group actions.

use super::{AlgebraPresentation, Arrow, Path, PathCombination, Quiver};
use crate::error::{Error, Result};
use crate::linalg::int;

/// Letters used for the first arrow families; later families are `w3`, `w4`, ...
const LETTERS: [&str; 3] = ["x", "y", "z"];

fn family_name(j: usize) -> String {
    LETTERS
        .get(j)
        .map(|s| s.to_string())
        .unwrap_or_else(|| format!("w{j}_"))
}

/// The McKay quiver with commutation relations for `Z/r` acting on `k^n` with
/// weights `(a_1, ..., a_n)`.
///
/// Vertices are `0..r`. Arrow `x^(j)_i` runs from `i` to `i + a_j` and carries
/// the `j`-th standard basis vector as its weight. For each pair `j < k` and
/// vertex `i` there is one relation
/// `x^(k)_{i+a_j} x^(j)_i = x^(j)_{i+a_k} x^(k)_i`.
pub fn mckay_abelian(order: usize, weights: &[i64]) -> Result<AlgebraPresentation> {
    if order == 0 {
        return Err(Error::Invalid("group order must be at least 1".into()));
    }
    let r = order as i64;
    let n = weights.len();
    let shift: Vec<usize> = weights.iter().map(|a| a.rem_euclid(r) as usize).collect();
    let vertices: Vec<String> = (0..order).map(|i| i.to_string()).collect();
    let mut arrows = Vec::with_capacity(order * n);
    for (j, &s) in shift.iter().enumerate() {
        let mut w = vec![0; n];
        w[j] = 1;
        for i in 0..order {
            arrows.push(Arrow {
                name: format!("{}{i}", family_name(j)),
                tail: i,
                head: (i + s) % order,
                weight: Some(w.clone()),
            });
        }
    }
    let quiver = Quiver::new(vertices, arrows)?;
    let arrow = |j: usize, i: usize| j * order + i;
    let mut relations = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            for i in 0..order {
                let lhs = Path::from_arrows(&quiver, &[arrow(j, i), arrow(k, (i + shift[j]) % order)])?;
                let rhs = Path::from_arrows(&quiver, &[arrow(k, i), arrow(j, (i + shift[k]) % order)])?;
                relations.push(PathCombination::new(vec![(int(1), lhs), (int(-1), rhs)])?);
            }
        }
    }
    AlgebraPresentation::new(quiver, relations)
}

/// Whether the weights sum to zero modulo the order (the action lies in SL).
pub fn is_special_linear(order: usize, weights: &[i64]) -> bool {
    order > 0 && weights.iter().sum::<i64>().rem_euclid(order as i64) == 0
}
