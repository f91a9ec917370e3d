//! Torus-equivariant combinatorics for all-ones dimension vectors: the
//! lattice map, torus-fixed modules, essential vertices, generic sampling,
//! surjectivity scans and path-monomial identities.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::text::parse_err;
use crate::algebra::{parse_path, AlgebraPresentation, Path};
use crate::classes::{ClassId, PathClasses};
use crate::corner::{
    determinant_terms, BinomialCornering, Cornering, CorneringData, ImageMembership, MembershipCertificate,
    ModulePresentation,
};
use crate::error::{Error, Result};
use crate::linalg::{int, ratio, Scalar};
use crate::rep::{DimensionVector, Representation};

/// `pi(a) = (e_head - e_tail, weight(a))`, one column per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    vertices: usize,
    weight_rank: usize,
    /// `columns[a]` has length `vertices + weight_rank`.
    columns: Vec<Vec<i64>>,
}

impl LatticeMap {
    pub fn new(algebra: &AlgebraPresentation) -> Result<Self> {
        let q = algebra.quiver();
        let d = weight_rank(algebra)?;
        let n = q.num_vertices();
        let columns = q
            .arrows()
            .iter()
            .map(|a| {
                let mut col = vec![0i64; n + d];
                col[a.head] += 1;
                col[a.tail] -= 1;
                for (k, w) in a.weight.as_ref().expect("checked by weight_rank").iter().enumerate() {
                    col[n + k] = *w;
                }
                col
            })
            .collect();
        Ok(LatticeMap {
            vertices: n,
            weight_rank: d,
            columns,
        })
    }

    pub fn domain_rank(&self) -> usize {
        self.columns.len()
    }

    pub fn codomain_rank(&self) -> usize {
        self.vertices + self.weight_rank
    }

    pub fn column(&self, arrow: usize) -> &[i64] {
        &self.columns[arrow]
    }

    /// The stacked integer matrix, `codomain_rank` rows.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        (0..self.codomain_rank())
            .map(|r| self.columns.iter().map(|c| c[r]).collect())
            .collect()
    }

    pub fn apply(&self, u: &[i64]) -> Result<Vec<i64>> {
        if u.len() != self.domain_rank() {
            return Err(Error::Dimension(format!(
                "exponent vector of length {} for {} arrows",
                u.len(),
                self.domain_rank()
            )));
        }
        let mut out = vec![0i64; self.codomain_rank()];
        for (col, &x) in self.columns.iter().zip(u) {
            for (o, &c) in out.iter_mut().zip(col) {
                *o += c * x;
            }
        }
        Ok(out)
    }

    /// Whether `u - v` lies in the kernel, i.e. `y^u - y^v` lies in the
    /// lattice ideal.
    pub fn kernel_contains_difference(&self, u: &[u64], v: &[u64]) -> Result<bool> {
        if u.len() != v.len() {
            return Err(Error::Dimension(format!(
                "exponent vectors of lengths {} and {}",
                u.len(),
                v.len()
            )));
        }
        let diff: Vec<i64> = u.iter().zip(v).map(|(&a, &b)| a as i64 - b as i64).collect();
        Ok(self.apply(&diff)?.iter().all(|&x| x == 0))
    }
}

/// Common length of the arrow weights.
pub fn weight_rank(algebra: &AlgebraPresentation) -> Result<usize> {
    let mut d = None;
    for a in algebra.quiver().arrows() {
        let Some(w) = &a.weight else {
            return Err(Error::MissingWeights);
        };
        match d {
            None => d = Some(w.len()),
            Some(d0) if d0 != w.len() => {
                return Err(Error::WeightLength {
                    arrow: a.name.clone(),
                    expected: d0,
                    found: w.len(),
                })
            }
            _ => {}
        }
    }
    Ok(d.unwrap_or(0))
}

/// Exponent vector over the arrows of a product of paths.
pub fn exponent_vector(algebra: &AlgebraPresentation, paths: &[&Path]) -> Vec<u64> {
    let mut u = vec![0u64; algebra.quiver().num_arrows()];
    for p in paths {
        for &a in p.arrows() {
            u[a] += 1;
        }
    }
    u
}

/// A monomial in the path variables `lambda_p`: paths with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonomialWord(BTreeMap<Path, usize>);

impl MonomialWord {
    pub fn one() -> Self {
        MonomialWord::default()
    }

    pub fn from_paths<'a>(paths: impl IntoIterator<Item = &'a Path>) -> Self {
        let mut w = MonomialWord::one();
        for p in paths {
            w.push(p.clone(), 1);
        }
        w
    }

    pub fn push(&mut self, p: Path, multiplicity: usize) {
        if multiplicity > 0 {
            *self.0.entry(p).or_insert(0) += multiplicity;
        }
    }

    pub fn times(&self, other: &MonomialWord) -> MonomialWord {
        let mut out = self.clone();
        for (p, &m) in &other.0 {
            out.push(p.clone(), m);
        }
        out
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Path, usize)> {
        self.0.iter().map(|(p, &m)| (p, m))
    }

    /// Value on an all-ones module, where each path acts by a scalar.
    pub fn evaluate(&self, m: &Representation) -> Result<Scalar> {
        let mut out = Scalar::one();
        for (p, &k) in &self.0 {
            let v = m.evaluate_path(p)?;
            let x = if v.rows() == 1 && v.cols() == 1 {
                v[(0, 0)].clone()
            } else {
                return Err(Error::Dimension("monomials are evaluated on all-ones modules".into()));
            };
            for _ in 0..k {
                out *= &x;
            }
        }
        Ok(out)
    }

    pub fn display(&self, algebra: &AlgebraPresentation) -> String {
        let mut parts = Vec::new();
        for (p, &m) in &self.0 {
            let s = p.display(algebra.quiver());
            if m == 1 {
                parts.push(s);
            } else {
                parts.push(format!("({s})^{m}"));
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

/// A signed sum of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expression {
    pub terms: Vec<(i64, MonomialWord)>,
}

impl Expression {
    /// `det P` for a square presentation with signed single-path entries.
    pub fn determinant(p: &ModulePresentation) -> Result<Self> {
        Ok(Expression {
            terms: determinant_terms(p)?
                .into_iter()
                .map(|(c, paths)| (c, MonomialWord::from_paths(&paths)))
                .collect(),
        })
    }

    pub fn times(&self, m: &MonomialWord) -> Expression {
        Expression {
            terms: self.terms.iter().map(|(c, w)| (*c, w.times(m))).collect(),
        }
    }

    pub fn evaluate(&self, m: &Representation) -> Result<Scalar> {
        let mut out = Scalar::zero();
        for (c, w) in &self.terms {
            out += int(*c) * w.evaluate(m)?;
        }
        Ok(out)
    }

    pub fn display(&self, algebra: &AlgebraPresentation) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (c, w)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else if i > 0 { "+" } else { "" };
            let abs = c.unsigned_abs();
            if i > 0 {
                out.push(' ');
            }
            out.push_str(sign);
            if i > 0 {
                out.push(' ');
            }
            if abs != 1 {
                out.push_str(&format!("{abs} "));
            }
            out.push_str(&w.display(algebra));
        }
        out
    }
}

/// Parses one monomial per line, `coefficient path path ...`, with paths in
/// the `*` syntax of `algebra`. Blank lines, `#` comments and a `keep:` line
/// are skipped.
pub fn parse_expression(algebra: &AlgebraPresentation, text: &str) -> Result<Expression> {
    let mut terms = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() || line.starts_with("keep:") {
            continue;
        }
        let mut parts = line.split_whitespace();
        let c = parts.next().expect("line is not empty");
        let coeff: i64 = c
            .trim_start_matches('+')
            .parse()
            .map_err(|_| parse_err(i + 1, format!("`{c}` is not an integer coefficient")))?;
        let mut word = MonomialWord::one();
        for p in parts {
            let path = parse_path(algebra.quiver(), p).map_err(|e| parse_err(i + 1, e.to_string()))?;
            word.push(path, 1);
        }
        terms.push((coeff, word));
    }
    Ok(Expression { terms })
}

/// 0/1 assignments as module values; dims all one.
fn check_binomial(algebra: &AlgebraPresentation) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    Ok(algebra
        .binomials()?
        .into_iter()
        .map(|(u, v)| (u.arrows().to_vec(), v.arrows().to_vec()))
        .collect())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Zero,
    One,
    Open,
}

fn side(values: &[Option<bool>], arrows: &[usize]) -> Side {
    let mut open = false;
    for &a in arrows {
        match values[a] {
            Some(false) => return Side::Zero,
            None => open = true,
            Some(true) => {}
        }
    }
    if open {
        Side::Open
    } else {
        Side::One
    }
}

/// Forces values implied by the relations. Returns false on a conflict.
fn propagate(values: &mut [Option<bool>], rels: &[(Vec<usize>, Vec<usize>)]) -> bool {
    loop {
        let mut changed = false;
        for (u, v) in rels {
            for (x, y) in [(u, v), (v, u)] {
                match (side(values, x), side(values, y)) {
                    (Side::Zero, Side::One) => return false,
                    (Side::One, Side::Open) => {
                        for &a in y {
                            if values[a].is_none() {
                                values[a] = Some(true);
                                changed = true;
                            }
                        }
                    }
                    (Side::Zero, Side::Open) => {
                        let open: Vec<usize> = y.iter().copied().filter(|&a| values[a].is_none()).collect();
                        if open.len() == 1 {
                            values[open[0]] = Some(false);
                            changed = true;
                        }
                    }
                    _ => {}
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

/// Every vertex is reached from vertex 0 along arrows with value 1.
fn reaches_all(algebra: &AlgebraPresentation, flags: &[bool]) -> bool {
    let q = algebra.quiver();
    let mut seen = vec![false; q.num_vertices()];
    let mut stack = vec![q.zero()];
    seen[q.zero()] = true;
    while let Some(v) = stack.pop() {
        for &a in q.out_arrows(v) {
            let h = q.arrows()[a].head;
            if flags[a] && !seen[h] {
                seen[h] = true;
                stack.push(h);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Vertex potentials `phi` with `phi(head) - phi(tail) = weight(a)` along
/// every arrow with value 1, anchored at `phi(0) = 0`. `None` if the nonzero
/// arrows admit no such potential.
fn potential(algebra: &AlgebraPresentation, flags: &[bool]) -> Option<Vec<Option<Vec<i64>>>> {
    let q = algebra.quiver();
    let mut phi: Vec<Option<Vec<i64>>> = vec![None; q.num_vertices()];
    for start in 0..q.num_vertices() {
        if phi[start].is_some() {
            continue;
        }
        let d = q.arrows().first().and_then(|a| a.weight.as_ref()).map_or(0, Vec::len);
        phi[start] = Some(vec![0; d]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let pv = phi[v].clone().expect("visited");
            for (i, a) in q.arrows().iter().enumerate() {
                if !flags[i] || (a.tail != v && a.head != v) {
                    continue;
                }
                let w = a.weight.as_ref().expect("weighted");
                let (other, want): (usize, Vec<i64>) = if a.tail == v {
                    (a.head, pv.iter().zip(w).map(|(x, y)| x + y).collect())
                } else {
                    (a.tail, pv.iter().zip(w).map(|(x, y)| x - y).collect())
                };
                match &phi[other] {
                    Some(p) if *p != want => return None,
                    Some(_) => {}
                    None => {
                        phi[other] = Some(want);
                        stack.push(other);
                    }
                }
            }
        }
    }
    Some(phi)
}

/// Torus-fixed 0-generated modules of dimension vector all ones, sorted by
/// their flag vectors. These are the 0/1 solutions of the binomial relations
/// that are 0-generated and whose nonzero arrows carry a vertex potential
/// for the weights, so that the weight torus acts by a change of basis.
pub fn enumerate_fixed_points(algebra: &Arc<AlgebraPresentation>) -> Result<Vec<Representation>> {
    check_binomial(algebra)?;
    weight_rank(algebra)?;
    enumerate_01(algebra, true)
}

/// Every 0-generated module of dimension vector all ones with arrow values
/// 0 or 1, torus-fixed or not, sorted by flag vectors.
pub fn enumerate_coordinate_points(algebra: &Arc<AlgebraPresentation>) -> Result<Vec<Representation>> {
    enumerate_01(algebra, false)
}

/// Whether a 0/1 module is fixed by the weight torus.
pub fn is_weight_fixed(m: &Representation) -> bool {
    let flags: Option<Vec<bool>> = m
        .scalar_values()
        .map(|v| v.iter().map(|x| !x.is_zero()).collect());
    match flags {
        Some(f) => m.is_torus_invariant() && potential(m.algebra(), &f).is_some(),
        None => false,
    }
}

fn enumerate_01(algebra: &Arc<AlgebraPresentation>, fixed: bool) -> Result<Vec<Representation>> {
    let rels = check_binomial(algebra)?;
    let n = algebra.quiver().num_arrows();
    let mut found: Vec<Vec<bool>> = Vec::new();
    let mut values = vec![None; n];
    if propagate(&mut values, &rels) {
        search(algebra, &rels, fixed, values, &mut found);
    }
    found.sort();
    found.dedup();
    found
        .into_iter()
        .map(|f| Representation::from_flags(algebra.clone(), &f))
        .collect()
}

fn search(
    algebra: &AlgebraPresentation,
    rels: &[(Vec<usize>, Vec<usize>)],
    fixed: bool,
    values: Vec<Option<bool>>,
    found: &mut Vec<Vec<bool>>,
) {
    let Some(next) = values.iter().position(Option::is_none) else {
        let flags: Vec<bool> = values.iter().map(|v| v.expect("complete")).collect();
        if reaches_all(algebra, &flags) && (!fixed || potential(algebra, &flags).is_some()) {
            found.push(flags);
        }
        return;
    };
    if fixed {
        let assigned: Vec<bool> = values.iter().map(|v| *v == Some(true)).collect();
        if potential(algebra, &assigned).is_none() {
            return;
        }
    }
    // Unassigned arrows count as present, so an unreachable vertex prunes.
    let optimistic: Vec<bool> = values.iter().map(|v| v.unwrap_or(true)).collect();
    if !reaches_all(algebra, &optimistic) {
        return;
    }
    for choice in [false, true] {
        let mut v = values.clone();
        v[next] = Some(choice);
        if propagate(&mut v, rels) {
            search(algebra, rels, fixed, v, found);
        }
    }
}

/// Nonzero vertices `i` with `S_i` in the socle of some torus-fixed
/// 0-generated module.
pub fn essential_vertices(algebra: &Arc<AlgebraPresentation>) -> Result<BTreeSet<usize>> {
    let zero = algebra.quiver().zero();
    let mut out = BTreeSet::new();
    for m in enumerate_fixed_points(algebra)? {
        out.extend(m.socle_simples());
    }
    out.remove(&zero);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    Relation { index: usize, relation: String },
    NotZeroGenerated,
}

impl std::fmt::Display for Rejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rejection::Relation { relation, .. } => write!(f, "relation `{relation}` fails"),
            Rejection::NotZeroGenerated => f.write_str("not 0-generated"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Sample {
    Accepted(Representation),
    Rejected(Rejection),
}

/// The module with arrow `a` acting by `t^weight(a)`, or by 0 when `a` is in
/// `degenerate`.
pub fn sample_generic(
    algebra: &Arc<AlgebraPresentation>,
    t: &[Scalar],
    degenerate: &BTreeSet<usize>,
) -> Result<Sample> {
    let d = weight_rank(algebra)?;
    if t.len() != d {
        return Err(Error::Dimension(format!("torus point of length {} for weights of length {d}", t.len())));
    }
    if t.iter().any(Zero::is_zero) {
        return Err(Error::Invalid("torus coordinates must be nonzero".into()));
    }
    let values: Vec<Scalar> = algebra
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            if degenerate.contains(&i) {
                return Scalar::zero();
            }
            let mut x = Scalar::one();
            for (ti, &w) in t.iter().zip(a.weight.as_ref().expect("weighted")) {
                let p = if w >= 0 { ti.clone() } else { ti.recip() };
                for _ in 0..w.unsigned_abs() {
                    x *= &p;
                }
            }
            x
        })
        .collect();
    let m = Representation::from_scalars(algebra.clone(), values)?;
    if let Some(v) = m.check_relations().into_iter().next() {
        return Ok(Sample::Rejected(Rejection::Relation {
            index: v.index,
            relation: v.relation,
        }));
    }
    if !m.is_zero_generated()? {
        return Ok(Sample::Rejected(Rejection::NotZeroGenerated));
    }
    Ok(Sample::Accepted(m))
}

/// Seeded source of generic and degenerate 0-generated modules.
///
/// Torus coordinates are `p/q` with `p, q` uniform in `[1, 100]`. Every
/// second sample also zeroes a random arrow set, closed so that no binomial
/// relation has exactly one vanishing side; if the result is not
/// 0-generated, random arrows are restored until it is.
pub struct Sampler {
    algebra: Arc<AlgebraPresentation>,
    rels: Vec<(Vec<usize>, Vec<usize>)>,
    rank: usize,
    rng: ChaCha8Rng,
    count: u64,
}

#[derive(Clone, Debug)]
pub struct SampledModule {
    pub torus_point: Vec<Scalar>,
    pub degenerate: BTreeSet<usize>,
    pub module: Representation,
}

impl Sampler {
    pub fn new(algebra: Arc<AlgebraPresentation>, seed: u64) -> Result<Self> {
        let rels = check_binomial(&algebra)?;
        let rank = weight_rank(&algebra)?;
        Ok(Sampler {
            algebra,
            rels,
            rank,
            rng: ChaCha8Rng::seed_from_u64(seed),
            count: 0,
        })
    }

    fn torus_point(&mut self) -> Vec<Scalar> {
        (0..self.rank)
            .map(|_| {
                let p = self.rng.gen_range(1..=100);
                let q = self.rng.gen_range(1..=100);
                ratio(p, q)
            })
            .collect()
    }

    fn close(&mut self, zeroed: &mut BTreeSet<usize>) {
        loop {
            let mut changed = false;
            for k in 0..self.rels.len() {
                let (u, v) = &self.rels[k];
                let u_zero = u.iter().any(|a| zeroed.contains(a));
                let v_zero = v.iter().any(|a| zeroed.contains(a));
                let other = match (u_zero, v_zero) {
                    (true, false) => v,
                    (false, true) => u,
                    _ => continue,
                };
                if other.is_empty() {
                    continue;
                }
                let a = other[self.rng.gen_range(0..other.len())];
                zeroed.insert(a);
                changed = true;
            }
            if !changed {
                return;
            }
        }
    }

    pub fn next_sample(&mut self) -> Result<SampledModule> {
        let index = self.count;
        self.count += 1;
        let t = self.torus_point();
        let n = self.algebra.quiver().num_arrows();
        let mut seed: Vec<usize> = if index % 2 == 1 {
            (0..n).filter(|_| self.rng.gen_bool(0.5)).collect()
        } else {
            Vec::new()
        };
        loop {
            let mut zeroed: BTreeSet<usize> = seed.iter().copied().collect();
            self.close(&mut zeroed);
            match sample_generic(&self.algebra, &t, &zeroed)? {
                Sample::Accepted(module) => {
                    return Ok(SampledModule {
                        torus_point: t,
                        degenerate: zeroed,
                        module,
                    })
                }
                Sample::Rejected(_) if !seed.is_empty() => {
                    let k = self.rng.gen_range(0..seed.len());
                    seed.swap_remove(k);
                }
                Sample::Rejected(r) => {
                    return Err(Error::Invalid(format!("the generic torus point is rejected: {r}")));
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceSource {
    /// Index among the 0/1 0-generated modules, and whether it is fixed by
    /// the weight torus.
    CoordinatePoint { index: usize, fixed: bool },
    Sample(usize),
}

impl std::fmt::Display for InstanceSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InstanceSource::CoordinatePoint { index, fixed: true } => write!(f, "fixed point {index}"),
            InstanceSource::CoordinatePoint { index, fixed: false } => write!(f, "coordinate point {index}"),
            InstanceSource::Sample(i) => write!(f, "sample {i}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub source: InstanceSource,
    pub module: Representation,
    pub induced_dims: DimensionVector,
    pub certificate: MembershipCertificate,
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub target: DimensionVector,
    /// 0/1 0-generated cornered modules tested, and how many of them are
    /// fixed by the weight torus.
    pub coordinate_points: usize,
    pub fixed_points: usize,
    pub samples: usize,
    pub witnesses: Vec<Witness>,
    /// Instances where the quotient search gave up.
    pub unknown: usize,
    /// `(parent vertex, min, max)` of the induced dimension off `C`.
    pub induced_range: Vec<(usize, usize, usize)>,
    /// No undecided instance among the coordinate points, so the decision
    /// there (and on the fixed locus) is exact.
    pub fixed_locus_exact: bool,
}

impl ScanReport {
    pub fn surjective_on_tested(&self) -> bool {
        self.witnesses.is_empty() && self.unknown == 0
    }
}

/// Runs the image test for the all-ones parent vector over every 0/1
/// 0-generated cornered module (a superset of the torus-fixed ones) and
/// `samples` seeded generic ones.
pub fn surjectivity_scan(cornering: &Cornering, samples: usize, seed: u64) -> Result<ScanReport> {
    let cd = cornering.data();
    let cornered = cd.cornered().clone();
    let parent_n = cd.parent().quiver().num_vertices();
    let target = DimensionVector::ones(parent_n);
    weight_rank(&cornered)?;
    let mut instances: Vec<(InstanceSource, Representation)> = enumerate_coordinate_points(&cornered)?
        .into_iter()
        .enumerate()
        .map(|(index, m)| {
            let fixed = is_weight_fixed(&m);
            (InstanceSource::CoordinatePoint { index, fixed }, m)
        })
        .collect();
    let coordinate_points = instances.len();
    let fixed_count = instances
        .iter()
        .filter(|(s, _)| matches!(s, InstanceSource::CoordinatePoint { fixed: true, .. }))
        .count();
    if samples > 0 {
        let mut sampler = Sampler::new(cornered, seed)?;
        for i in 0..samples {
            instances.push((InstanceSource::Sample(i), sampler.next_sample()?.module));
        }
    }
    let off: Vec<usize> = (0..parent_n).filter(|&k| !cd.is_kept(k)).collect();
    let mut range: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    let mut witnesses = Vec::new();
    let mut unknown = 0;
    let mut fixed_locus_exact = true;
    for (source, m) in instances {
        let decision = cornering.image_membership(&m, &target)?;
        for &k in &off {
            let d = decision.induced_dims()[k];
            let e = range.entry(k).or_insert((d, d));
            e.0 = e.0.min(d);
            e.1 = e.1.max(d);
        }
        match decision {
            ImageMembership::InImage { .. } => {}
            ImageMembership::NotInImage {
                induced_dims,
                certificate,
            } => witnesses.push(Witness {
                source,
                module: m,
                induced_dims,
                certificate,
            }),
            ImageMembership::Unknown { .. } => {
                unknown += 1;
                if matches!(source, InstanceSource::CoordinatePoint { .. }) {
                    fixed_locus_exact = false;
                }
            }
        }
    }
    Ok(ScanReport {
        target,
        coordinate_points,
        fixed_points: fixed_count,
        samples,
        witnesses,
        unknown,
        induced_range: range.into_iter().map(|(k, (lo, hi))| (k, lo, hi)).collect(),
        fixed_locus_exact,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityOutcome {
    /// Every class of rewriting-equivalent monomials has net coefficient 0.
    Proven,
    /// The search closed every class without cancelling; `unbalanced` lists
    /// a representative monomial and net coefficient of each offending class.
    NotProven { unbalanced: Vec<(String, i64)> },
    /// The state cap was hit before the classes closed.
    Inconclusive { states: usize },
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub outcome: IdentityOutcome,
    /// Distinct monomial states visited.
    pub states: usize,
    /// Monomials in `multiplier * expr` before cancellation.
    pub terms: usize,
    /// Instances where `multiplier * expr` was evaluated, and those where it
    /// did not vanish.
    pub numeric_checks: usize,
    pub numeric_failures: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct IdentityOptions {
    pub max_states: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for IdentityOptions {
    fn default() -> Self {
        IdentityOptions {
            max_states: 200_000,
            samples: 1000,
            seed: 0,
        }
    }
}

/// A monomial as a sorted list of path classes between kept vertices.
type State = Vec<ClassId>;

struct Rewriter<'a> {
    corner: &'a BinomialCornering,
    splits: HashMap<ClassId, Vec<(ClassId, ClassId)>>,
}

impl<'a> Rewriter<'a> {
    fn pc(&self) -> &'a PathClasses {
        self.corner.classes()
    }

    fn state_of(&self, word: &MonomialWord) -> Result<State> {
        let cd = self.corner.data();
        let mut s = Vec::new();
        for (p, m) in word.factors() {
            if p.is_empty() {
                continue;
            }
            let c = self.pc().class_of(&cd.expand(p)?)?;
            s.extend(std::iter::repeat_n(c, m));
        }
        s.sort_unstable();
        Ok(s)
    }

    /// Factorizations `x = t * s` through a kept vertex with both factors of
    /// positive length.
    fn splits(&mut self, x: ClassId) -> Result<&[(ClassId, ClassId)]> {
        if !self.splits.contains_key(&x) {
            let pc = self.corner.classes();
            let cd = self.corner.data();
            let (tail, head, len) = (pc.tail(x), pc.head(x), pc.len(x));
            let mut out = Vec::new();
            for l in 1..len {
                for &s in pc.with_tail(l, tail) {
                    let mid = pc.head(s);
                    if !cd.is_kept(mid) {
                        continue;
                    }
                    for &t in pc.with_head(len - l, head) {
                        if pc.tail(t) == mid && pc.concat(s, t)? == x {
                            out.push((s, t));
                        }
                    }
                }
            }
            self.splits.insert(x, out);
        }
        Ok(&self.splits[&x])
    }

    fn neighbours(&mut self, s: &State) -> Result<Vec<State>> {
        let pc = self.corner.classes();
        let mut out = Vec::new();
        for i in 0..s.len() {
            for j in 0..s.len() {
                if i != j && pc.head(s[i]) == pc.tail(s[j]) {
                    let merged = pc.concat(s[i], s[j])?;
                    let mut n: State = s
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != i && k != j)
                        .map(|(_, &c)| c)
                        .collect();
                    n.push(merged);
                    n.sort_unstable();
                    out.push(n);
                }
            }
            if i > 0 && s[i] == s[i - 1] {
                continue;
            }
            let splits = self.splits(s[i])?.to_vec();
            for (a, b) in splits {
                let mut n = s.clone();
                n.remove(i);
                n.push(a);
                n.push(b);
                n.sort_unstable();
                out.push(n);
            }
        }
        Ok(out)
    }
}

/// Tries to prove `multiplier * expr = 0` as a function on the cornered
/// all-ones module space. In that setting `lambda_s lambda_t = lambda_{ts}`
/// for composable paths, and equal path classes have equal values, so two
/// monomials connected by merges and splits agree. The identity is proven
/// when every connected class of monomials has net coefficient zero.
/// The result is also evaluated on every 0/1 0-generated cornered module
/// and on seeded samples.
pub fn annihilation_identity_check(
    corner: &BinomialCornering,
    expr: &Expression,
    multiplier: &Path,
    options: IdentityOptions,
) -> Result<IdentityReport> {
    let mut m = MonomialWord::one();
    m.push(multiplier.clone(), 1);
    let full = expr.times(&m);
    let mut rw = Rewriter {
        corner,
        splits: HashMap::new(),
    };
    let mut component: HashMap<State, usize> = HashMap::new();
    let mut net: Vec<i64> = Vec::new();
    let mut reps: Vec<String> = Vec::new();
    let mut inconclusive = false;
    for (c, w) in &full.terms {
        let start = rw.state_of(w)?;
        if let Some(&k) = component.get(&start) {
            net[k] += c;
            continue;
        }
        let k = net.len();
        net.push(*c);
        reps.push(w.display(corner.data().cornered()));
        component.insert(start.clone(), k);
        let mut queue = VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            if component.len() >= options.max_states {
                inconclusive = true;
                break;
            }
            for n in rw.neighbours(&s)? {
                if let std::collections::hash_map::Entry::Vacant(e) = component.entry(n.clone()) {
                    e.insert(k);
                    queue.push_back(n);
                }
            }
        }
        if inconclusive {
            break;
        }
    }
    let states = component.len();
    let outcome = if inconclusive {
        IdentityOutcome::Inconclusive { states }
    } else if net.iter().all(|&c| c == 0) {
        IdentityOutcome::Proven
    } else {
        IdentityOutcome::NotProven {
            unbalanced: reps
                .into_iter()
                .zip(net)
                .filter(|&(_, c)| c != 0)
                .collect(),
        }
    };
    let cornered = corner.data().cornered().clone();
    let mut checks = 0;
    let mut failures = 0;
    let mut modules = enumerate_coordinate_points(&cornered)?;
    if options.samples > 0 {
        let mut sampler = Sampler::new(cornered, options.seed)?;
        for _ in 0..options.samples {
            modules.push(sampler.next_sample()?.module);
        }
    }
    for module in &modules {
        checks += 1;
        if !full.evaluate(module)?.is_zero() {
            failures += 1;
        }
    }
    Ok(IdentityReport {
        outcome,
        states,
        terms: full.terms.len(),
        numeric_checks: checks,
        numeric_failures: failures,
    })
}

/// Checks a cornering against sampled parent modules: for each sampled
/// all-ones parent module, the restriction must satisfy the cornered
/// relations. Returns the number of failures.
pub fn restriction_failures(cd: &CorneringData, parents: &[Representation]) -> Result<usize> {
    let mut failures = 0;
    for m in parents {
        if !cd.corner_restrict(m)?.satisfies_relations() {
            failures += 1;
        }
    }
    Ok(failures)
}
