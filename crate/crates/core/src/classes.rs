//! Basis of a binomial path algebra by equivalence classes of paths.
//!
//! When every relation has the form `u - v` with `u`, `v` paths of equal
//! length, two paths are equal in `kQ/I` exactly when one can be rewritten
//! into the other by replacing subpaths `u` with `v`, and the classes form a
//! basis. [`PathClasses`] builds those classes length by length up to a
//! bound: a class of length `L + 1` is a class of length `L` extended by one
//! arrow, and two extensions are merged whenever a relation applies at the
//! end of the path.

use crate::algebra::{AlgebraPresentation, Path, Quiver};
use crate::error::{Error, Result};

pub type ClassId = u32;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct ClassInfo {
    tail: u32,
    head: u32,
    len: u32,
    /// Class of the path with the last arrow removed.
    prefix: u32,
    /// Last arrow of the canonical representative.
    last: u32,
}

/// Path classes of a binomial algebra, complete up to `max_len`.
#[derive(Clone, Debug)]
pub struct PathClasses {
    quiver: Quiver,
    max_len: usize,
    classes: Vec<ClassInfo>,
    /// `ext[ext_start[c] + k]` is the class of `c` followed by the `k`-th
    /// out-arrow of its head (or `NONE` beyond the bound).
    ext_start: Vec<u32>,
    ext: Vec<u32>,
    level_start: Vec<usize>,
    by_tail: Vec<Vec<Vec<ClassId>>>,
    by_head: Vec<Vec<Vec<ClassId>>>,
    /// Position of each arrow among the out-arrows of its tail.
    out_slot: Vec<usize>,
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi as usize] = lo;
        }
    }
}

impl PathClasses {
    /// Builds every class of length at most `max_len`. Fails unless every
    /// relation is a difference of two paths of the same length.
    pub fn build(algebra: &AlgebraPresentation, max_len: usize) -> Result<Self> {
        let q = algebra.quiver().clone();
        let mut rules: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for (i, r) in algebra.relations().iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let not_binomial = || Error::NotBinomial {
                index: i,
                relation: r.display(&q),
            };
            let (u, v) = r.as_binomial().ok_or_else(not_binomial)?;
            if u.len() != v.len() {
                return Err(not_binomial());
            }
            rules.push((u.arrows().to_vec(), v.arrows().to_vec()));
        }
        let n = q.num_vertices();
        let mut out_slot = vec![0; q.num_arrows()];
        for v in 0..n {
            for (k, &a) in q.out_arrows(v).iter().enumerate() {
                out_slot[a] = k;
            }
        }
        let mut pc = PathClasses {
            max_len,
            classes: Vec::new(),
            ext_start: Vec::new(),
            ext: Vec::new(),
            level_start: vec![0],
            by_tail: Vec::new(),
            by_head: Vec::new(),
            out_slot,
            quiver: q,
        };
        for v in 0..n {
            pc.push_class(ClassInfo {
                tail: v as u32,
                head: v as u32,
                len: 0,
                prefix: NONE,
                last: NONE,
            });
        }
        pc.finish_level(0);
        for len in 1..=max_len {
            pc.build_level(len, &rules);
        }
        Ok(pc)
    }

    fn push_class(&mut self, info: ClassInfo) -> ClassId {
        let id = self.classes.len() as u32;
        self.ext_start.push(self.ext.len() as u32);
        let slots = self.quiver.out_arrows(info.head as usize).len();
        self.ext.extend(std::iter::repeat_n(NONE, slots));
        self.classes.push(info);
        id
    }

    fn finish_level(&mut self, len: usize) {
        let n = self.quiver.num_vertices();
        let start = self.level_start[len];
        let end = self.classes.len();
        let mut tails = vec![Vec::new(); n];
        let mut heads = vec![Vec::new(); n];
        for c in start..end {
            tails[self.classes[c].tail as usize].push(c as u32);
            heads[self.classes[c].head as usize].push(c as u32);
        }
        self.by_tail.push(tails);
        self.by_head.push(heads);
        self.level_start.push(end);
    }

    fn build_level(&mut self, len: usize, rules: &[(Vec<usize>, Vec<usize>)]) {
        let prev = self.level_start[len - 1]..self.level_start[len];
        if prev.is_empty() {
            self.finish_level(len);
            return;
        }
        // Candidates are (class of length len-1, out-arrow) pairs, numbered by
        // their extension slot.
        let base = self.ext_start[prev.start] as usize;
        let slots = self.ext.len() - base;
        let mut uf = UnionFind::new(slots);
        for (u, v) in rules {
            let l = u.len();
            if l > len {
                continue;
            }
            let start_vertex = self.quiver.arrow(u[0]).tail;
            for &z in &self.by_head[len - l][start_vertex] {
                let a = self.slot_after(z, &u[..l - 1], u[l - 1]);
                let b = self.slot_after(z, &v[..l - 1], v[l - 1]);
                uf.union((a - base) as u32, (b - base) as u32);
            }
        }
        // Representatives: the minimal slot of each component is the
        // lexicographically smallest path, because previous-level ids are in
        // lexicographic order and slots follow arrow order.
        let mut root_to_new = vec![NONE; slots];
        let mut order: Vec<(u32, u32, u32)> = Vec::new(); // (slot, prefix, arrow)
        for c in prev.clone() {
            let head = self.classes[c].head as usize;
            let start = self.ext_start[c] as usize - base;
            for (k, &a) in self.quiver.out_arrows(head).iter().enumerate() {
                let slot = (start + k) as u32;
                if uf.find(slot) == slot {
                    order.push((slot, c as u32, a as u32));
                }
            }
        }
        // Slots are laid out by (prefix id, out-arrow position) and out-arrows
        // of one vertex are in increasing arrow index, so `order` is already
        // lexicographic.
        for &(slot, prefix, arrow) in &order {
            let arr = self.quiver.arrow(arrow as usize);
            let id = self.push_class(ClassInfo {
                tail: self.classes[prefix as usize].tail,
                head: arr.head as u32,
                len: len as u32,
                prefix,
                last: arrow,
            });
            root_to_new[slot as usize] = id;
        }
        for s in 0..slots {
            let root = uf.find(s as u32);
            self.ext[base + s] = root_to_new[root as usize];
        }
        self.finish_level(len);
    }

    /// Slot index of `(class of z followed by path, last)`.
    fn slot_after(&self, z: ClassId, path: &[usize], last: usize) -> usize {
        let mut c = z;
        for &a in path {
            c = self.ext[self.ext_start[c as usize] as usize + self.out_slot[a]];
        }
        self.ext_start[c as usize] as usize + self.out_slot[last]
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn idempotent(&self, v: usize) -> ClassId {
        v as ClassId
    }

    pub fn tail(&self, c: ClassId) -> usize {
        self.classes[c as usize].tail as usize
    }

    pub fn head(&self, c: ClassId) -> usize {
        self.classes[c as usize].head as usize
    }

    pub fn len(&self, c: ClassId) -> usize {
        self.classes[c as usize].len as usize
    }

    /// Classes of length `len` in lexicographic order of representatives.
    pub fn level(&self, len: usize) -> std::ops::Range<ClassId> {
        self.level_start[len] as ClassId..self.level_start[len + 1] as ClassId
    }

    pub fn with_tail(&self, len: usize, tail: usize) -> &[ClassId] {
        &self.by_tail[len][tail]
    }

    pub fn with_head(&self, len: usize, head: usize) -> &[ClassId] {
        &self.by_head[len][head]
    }

    fn check_len(&self, requested: usize) -> Result<()> {
        if requested > self.max_len {
            return Err(Error::BoundExceeded {
                built: self.max_len,
                requested,
            });
        }
        Ok(())
    }

    /// The class of `c` followed by arrow `a`.
    pub fn extend(&self, c: ClassId, a: usize) -> Result<ClassId> {
        let info = &self.classes[c as usize];
        let arr = self.quiver.arrow(a);
        if arr.tail != info.head as usize {
            return Err(Error::Endpoint(format!(
                "arrow `{}` does not start where the path ends",
                arr.name
            )));
        }
        self.check_len(info.len as usize + 1)?;
        Ok(self.ext[self.ext_start[c as usize] as usize + self.out_slot[a]])
    }

    pub fn class_of(&self, p: &Path) -> Result<ClassId> {
        self.check_len(p.len())?;
        let mut c = self.idempotent(p.tail());
        for &a in p.arrows() {
            c = self.extend(c, a)?;
        }
        Ok(c)
    }

    /// The class of `x` followed by `y`.
    pub fn concat(&self, x: ClassId, y: ClassId) -> Result<ClassId> {
        if self.head(x) != self.tail(y) {
            return Err(Error::Endpoint(format!(
                "class ending at {} followed by class starting at {}",
                self.quiver.vertex_name(self.head(x)),
                self.quiver.vertex_name(self.tail(y))
            )));
        }
        self.check_len(self.len(x) + self.len(y))?;
        let mut c = x;
        for a in self.representative_arrows(y) {
            c = self.ext[self.ext_start[c as usize] as usize + self.out_slot[a]];
        }
        Ok(c)
    }

    pub fn representative_arrows(&self, c: ClassId) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len(c));
        let mut cur = c;
        while self.classes[cur as usize].len > 0 {
            let info = &self.classes[cur as usize];
            out.push(info.last as usize);
            cur = info.prefix;
        }
        out.reverse();
        out
    }

    /// The lexicographically smallest path in the class.
    pub fn representative(&self, c: ClassId) -> Path {
        let arrows = self.representative_arrows(c);
        if arrows.is_empty() {
            Path::idempotent(self.tail(c))
        } else {
            Path::from_arrows(&self.quiver, &arrows).expect("representatives are paths")
        }
    }

    pub fn weight(&self, c: ClassId) -> Option<Vec<i64>> {
        self.representative(c).weight(&self.quiver)
    }

    pub fn display(&self, c: ClassId) -> String {
        self.representative(c).display(&self.quiver)
    }

    /// Number of classes from `tail` to `head` of length `len`.
    pub fn count_between(&self, len: usize, tail: usize, head: usize) -> usize {
        self.with_tail(len, tail)
            .iter()
            .filter(|&&c| self.head(c) == head)
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;
    use crate::algebra::{mckay_abelian, parse_algebra};

    /// Enumerates all paths of a length and groups them by brute-force rewriting.
    fn brute_force_count(alg: &AlgebraPresentation, len: usize) -> usize {
        let q = alg.quiver();
        let rules: Vec<(Vec<usize>, Vec<usize>)> = alg
            .binomials()
            .unwrap()
            .into_iter()
            .map(|(u, v)| (u.arrows().to_vec(), v.arrows().to_vec()))
            .collect();
        if len == 0 {
            return q.num_vertices();
        }
        let mut frontier: Vec<Vec<usize>> = (0..q.num_arrows()).map(|a| vec![a]).collect();
        for _ in 1..len {
            let mut next = Vec::new();
            for p in &frontier {
                let h = q.arrow(*p.last().unwrap()).head;
                for &a in q.out_arrows(h) {
                    let mut np = p.clone();
                    np.push(a);
                    next.push(np);
                }
            }
            frontier = next;
        }
        let all = frontier;
        let index: HashMap<Vec<usize>, usize> =
            all.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut uf = UnionFind::new(all.len());
        for (i, p) in all.iter().enumerate() {
            for (u, v) in &rules {
                for (from, to) in [(u, v), (v, u)] {
                    let l = from.len();
                    for s in 0..=p.len().saturating_sub(l) {
                        if p.len() >= l && &p[s..s + l] == from.as_slice() {
                            let mut r = p.clone();
                            r.splice(s..s + l, to.iter().cloned());
                            uf.union(i as u32, index[&r] as u32);
                        }
                    }
                }
            }
        }
        (0..all.len()).filter(|&i| uf.find(i as u32) == i as u32).count()
    }

    #[test]
    fn counts_match_brute_force() {
        let alg = mckay_abelian(3, &[1, 1, 1]).unwrap();
        let pc = PathClasses::build(&alg, 4).unwrap();
        for len in 0..=4 {
            assert_eq!(pc.level(len).len(), brute_force_count(&alg, len), "length {len}");
        }
        // Commutative polynomial ring in three variables: monomials of degree 4
        // per starting vertex.
        assert_eq!(pc.level(4).len(), 3 * 15);
    }

    #[test]
    fn non_commutative_example_matches_brute_force() {
        let alg = parse_algebra(
            "[vertices]\n0 1\n[arrows]\na: 0 -> 1\nb: 0 -> 1\nc: 1 -> 0\nd: 1 -> 0\n[relations]\nc*a - d*b\na*c - b*d\n",
        )
        .unwrap();
        let pc = PathClasses::build(&alg, 6).unwrap();
        for len in 0..=6 {
            assert_eq!(pc.level(len).len(), brute_force_count(&alg, len), "length {len}");
        }
    }

    #[test]
    fn canonical_representatives_and_concat() {
        let alg = mckay_abelian(6, &[1, 2, 3]).unwrap();
        let pc = PathClasses::build(&alg, 6).unwrap();
        let q = alg.quiver();
        let lhs = pc.class_of(&alg.path("x2*y0").unwrap()).unwrap();
        let rhs = pc.class_of(&alg.path("y1*x0").unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        // x-arrows come first in arrow order, so the x-first path is canonical.
        assert_eq!(pc.display(lhs), "y1*x0");
        let x0 = pc.class_of(&alg.path("x0").unwrap()).unwrap();
        let y1 = pc.class_of(&alg.path("y1").unwrap()).unwrap();
        assert_eq!(pc.concat(x0, y1).unwrap(), lhs);
        assert!(pc.concat(y1, x0).is_err());
        assert_eq!(pc.representative(lhs).weight(q), Some(vec![1, 1, 0]));
        let long = pc.class_of(&Path::idempotent(0)).unwrap();
        assert_eq!(pc.len(long), 0);
        let too_long = alg.path("x5*x4*x3*x2*x1*x0*z3").unwrap();
        assert!(matches!(pc.class_of(&too_long), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn rejects_non_binomial() {
        let alg = parse_algebra(
            "[vertices]\n0\n[arrows]\na: 0 -> 0\nb: 0 -> 0\n[relations]\na*a - b\n",
        )
        .unwrap();
        assert!(matches!(
            PathClasses::build(&alg, 2),
            Err(Error::NotBinomial { index: 0, .. })
        ));
    }
}
