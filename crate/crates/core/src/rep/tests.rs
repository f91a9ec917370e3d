use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::algebra::parse_algebra;
use crate::corner::CorneringOptions;
use crate::corpus;
use crate::linalg::{int, Subspace};

fn algebra(id: &str) -> Arc<AlgebraPresentation> {
    corpus::algebra(id).unwrap()
}

fn module(id: &str) -> Representation {
    corpus::module(id, CorneringOptions::default()).unwrap().module
}

fn flags(a: &Arc<AlgebraPresentation>, on: &[&str]) -> Representation {
    let q = a.quiver();
    let f: Vec<bool> = q.arrows().iter().map(|arr| on.contains(&arr.name.as_str())).collect();
    Representation::from_flags(a.clone(), &f).unwrap()
}

fn full_at(m: &Representation, v: usize) -> Vec<Subspace> {
    m.dims()
        .0
        .iter()
        .enumerate()
        .map(|(i, &d)| if i == v { Subspace::full(d) } else { Subspace::zero(d) })
        .collect()
}

fn dims_of(family: &[Subspace]) -> Vec<usize> {
    family.iter().map(Subspace::dim).collect()
}

#[test]
fn printed_induced_module_satisfies_relations() {
    assert!(module("mckay-1-3-jN").check_relations().is_empty());
}

#[test]
fn zero_module_satisfies_relations() {
    let a = algebra("mckay-1-6-123");
    let m = Representation::zero(a, DimensionVector(vec![2, 1, 0, 3, 1, 1])).unwrap();
    assert!(m.satisfies_relations());
}

#[test]
fn broken_commutativity_is_reported() {
    let a = algebra("mckay-1-3-111");
    let m = flags(&a, &["x0", "y1"]);
    let v = m.check_relations();
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].relation, "x1*y0 - y1*x0");
    assert_eq!(v[0].value[(0, 0)], int(-1));
}

#[test]
fn idempotent_acts_as_identity() {
    let a = algebra("mckay-1-3-111");
    let m = Representation::zero(a.clone(), DimensionVector::ones(3)).unwrap();
    let e = m.evaluate_path(&a.path("e(2)").unwrap()).unwrap();
    assert_eq!(e, Matrix::identity(1));
}

#[test]
fn paths_in_the_x_chain() {
    let n = module("mckay-1-6-xchain");
    let a = n.algebra().clone();
    let through_y = n.evaluate_path(&a.path("x2*y0").unwrap()).unwrap();
    assert!(through_y.is_zero());
    let along_x = n.evaluate_path(&a.path("x1*x0").unwrap()).unwrap();
    assert_eq!(along_x, Matrix::identity(1));
}

#[test]
fn paths_must_compose() {
    let n = module("mckay-1-6-xchain");
    let q = n.algebra().quiver().clone();
    let (y0, x1) = (q.arrow_index("y0").unwrap(), q.arrow_index("x1").unwrap());
    assert!(Path::from_arrows(&q, &[y0, x1]).is_err());
}

#[test]
fn closure_of_vertex_zero_in_the_x_chain() {
    let n = module("mckay-1-6-xchain");
    let closed = n.generation_closure(&full_at(&n, 0)).unwrap();
    assert!(closed.iter().all(Subspace::is_full));
}

#[test]
fn closure_of_nothing_is_nothing() {
    let n = module("mckay-1-6-xchain");
    let empty: Vec<Subspace> = n.dims().0.iter().map(|&d| Subspace::zero(d)).collect();
    assert_eq!(dims_of(&n.generation_closure(&empty).unwrap()), vec![0; 5]);
}

#[test]
fn closure_without_arrows_stays_put() {
    let a = algebra("mckay-1-3-111");
    let m = Representation::zero(a, DimensionVector::ones(3)).unwrap();
    assert_eq!(dims_of(&m.generation_closure(&full_at(&m, 0)).unwrap()), vec![1, 0, 0]);
}

#[test]
fn zero_generation_examples() {
    assert!(module("mckay-1-3-N").is_zero_generated().unwrap());
    assert!(module("dp6-Nprime").is_zero_generated().unwrap());
    let a = algebra("mckay-1-3-111");
    let zero = Representation::zero(a.clone(), DimensionVector::ones(3)).unwrap();
    assert!(!zero.is_zero_generated().unwrap());
    let empty_zero = Representation::zero(a, DimensionVector(vec![0, 1, 1])).unwrap();
    assert!(matches!(empty_zero.is_zero_generated(), Err(Error::ZeroVertexDimension(0))));
}

#[test]
fn isolated_vertex_is_unstable() {
    let a = algebra("mckay-1-3-111");
    let m = flags(&a, &["x0"]);
    let theta = StabilityParameter::zero_generated(3, 0, m.dims()).unwrap();
    assert!(!m.is_stable_invariant(&theta).unwrap());
    let chain = flags(&a, &["x0", "x1"]);
    assert!(chain.is_stable_invariant(&theta).unwrap());
}

#[test]
fn one_vertex_module_is_vacuously_stable() {
    let a = Arc::new(parse_algebra("[vertices]\n0\n").unwrap());
    let m = Representation::from_flags(a, &[]).unwrap();
    let theta = StabilityParameter(vec![int(0)]);
    assert!(m.is_stable_invariant(&theta).unwrap());
}

#[test]
fn stability_requires_torus_invariance() {
    let a = algebra("mckay-1-3-111");
    let mut values = vec![int(0); 9];
    values[0] = int(2);
    let m = Representation::from_scalars(a, values).unwrap();
    let theta = StabilityParameter::zero_generated(3, 0, m.dims()).unwrap();
    assert!(matches!(m.is_stable_invariant(&theta), Err(Error::NotTorusInvariant(_))));
}

#[test]
fn theta_for_a_corner_is_balanced() {
    let dims = DimensionVector::ones(6);
    let theta = StabilityParameter::cornered(6, 0, &[0, 1, 2, 3, 4], &dims).unwrap();
    assert_eq!(theta.0[0], int(-4));
    assert_eq!(theta.0[5], int(0));
    assert!(theta.pairing(&dims.0).is_zero());
    assert!(!theta.in_zero_generated_chamber(0));
    assert!(StabilityParameter::zero_generated(6, 0, &dims).unwrap().in_zero_generated_chamber(0));
}

#[test]
fn socle_of_the_x_power_fixed_point() {
    let a = algebra("mckay-1-3-111");
    let m = flags(&a, &["x0", "x1"]);
    assert_eq!(m.socle_simples().into_iter().collect::<Vec<_>>(), vec![2]);
}

#[test]
fn printed_induced_module_has_no_s1_in_socle() {
    let m = module("mckay-1-3-jN");
    assert!(!m.socle_simples().contains(&1));
}

#[test]
fn empty_module_has_empty_socle() {
    let a = algebra("mckay-1-3-111");
    let m = Representation::zero(a, DimensionVector(vec![0, 0, 0])).unwrap();
    assert!(m.socle_simples().is_empty());
}

#[test]
fn largest_submodule_off_the_corner() {
    let m = module("mckay-1-3-jN");
    assert_eq!(dims_of(&m.max_submodule_off(&[0, 2]).unwrap()), vec![0, 0, 0]);
    assert_eq!(dims_of(&m.max_submodule_off(&[0, 1, 2]).unwrap()), vec![0, 0, 0]);
}

#[test]
fn dead_row_gives_a_submodule_off_the_corner() {
    // x1 and y1 read the first two coordinates; the third is killed by every
    // arrow out of vertex 1.
    let a = algebra("mckay-1-3-111");
    let q = a.quiver();
    let dims = DimensionVector(vec![1, 3, 1]);
    let mut mats: Vec<Matrix> = q
        .arrows()
        .iter()
        .map(|arr| Matrix::zeros(dims[arr.head], dims[arr.tail]))
        .collect();
    mats[q.arrow_index("x0").unwrap()] = Matrix::from_i64(3, 1, &[1, 0, 0]);
    mats[q.arrow_index("y0").unwrap()] = Matrix::from_i64(3, 1, &[0, 1, 0]);
    mats[q.arrow_index("z0").unwrap()] = Matrix::from_i64(3, 1, &[0, 0, 1]);
    mats[q.arrow_index("x1").unwrap()] = Matrix::from_i64(1, 3, &[1, 0, 0]);
    mats[q.arrow_index("y1").unwrap()] = Matrix::from_i64(1, 3, &[0, 1, 0]);
    let m = Representation::new(a, dims, mats).unwrap();
    assert!(m.satisfies_relations());
    let sub = m.max_submodule_off(&[0, 2]).unwrap();
    assert_eq!(dims_of(&sub), vec![0, 1, 0]);
    assert!(m.socle_simples().contains(&1));
}

#[test]
fn printed_induced_module_has_no_all_ones_quotient() {
    let m = module("mckay-1-3-jN");
    match m.admits_quotient_of_dim(&DimensionVector::ones(3)).unwrap() {
        QuotientDecision::No(QuotientCertificate::SubmoduleTooSmall { needed, available, .. }) => {
            assert_eq!(needed.0, vec![0, 2, 0]);
            assert_eq!(available.0, vec![0, 0, 0]);
        }
        other => panic!("expected a certificate, got {other:?}"),
    }
}

#[test]
fn every_module_is_its_own_quotient() {
    for id in ["mckay-1-3-jN", "mckay-1-3-N", "dp6-Nprime"] {
        let m = module(id);
        assert!(m.admits_quotient_of_dim(m.dims()).unwrap().is_yes(), "{id}");
    }
}

#[test]
fn oversized_quotient_is_refused() {
    let m = module("mckay-1-3-jN");
    let d = m.admits_quotient_of_dim(&DimensionVector(vec![1, 4, 1])).unwrap();
    assert!(matches!(d, QuotientDecision::No(QuotientCertificate::DimensionTooSmall { vertex: 1, .. })));
}

#[test]
fn text_round_trip() {
    let m = module("mckay-1-3-jN");
    let text = m.to_text("corpus:mckay-1-3-111", None);
    let back = parse_representation(&text, m.algebra().clone()).unwrap();
    assert_eq!(back, m);
}

#[test]
fn quotient_witnesses_are_genuine() {
    // Every 0/1 module of the 1/3 quiver, against v = (1,1,1), (1,0,1), (1,1,0).
    let a = algebra("mckay-1-3-111");
    let targets = [vec![1, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
    let mut decided = 0;
    for bits in 0u32..512 {
        let f: Vec<bool> = (0..9).map(|i| bits >> i & 1 == 1).collect();
        let m = Representation::from_flags(a.clone(), &f).unwrap();
        if !m.satisfies_relations() || !m.is_zero_generated().unwrap() {
            continue;
        }
        for v in &targets {
            let v = DimensionVector(v.clone());
            if let QuotientDecision::Yes { quotient, .. } = m.admits_quotient_of_dim(&v).unwrap() {
                assert!(quotient.satisfies_relations());
                assert!(quotient.is_zero_generated().unwrap());
                assert_eq!(quotient.dims(), &v);
                decided += 1;
            }
        }
    }
    assert!(decided > 0);
}

/// A random 0/1 module of the 1/3 quiver, relations ignored.
fn arb_flags() -> impl Strategy<Value = Vec<bool>> {
    proptest::collection::vec(any::<bool>(), 9)
}

proptest! {
    #[test]
    fn closure_is_monotone_and_idempotent(f in arb_flags(), seed_bits in 0u8..8, extra in 0u8..8) {
        let a = algebra("mckay-1-3-111");
        let m = Representation::from_flags(a, &f).unwrap();
        let seed = |bits: u8| -> Vec<Subspace> {
            (0..3).map(|i| if bits >> i & 1 == 1 { Subspace::full(1) } else { Subspace::zero(1) }).collect()
        };
        let small = m.generation_closure(&seed(seed_bits)).unwrap();
        let large = m.generation_closure(&seed(seed_bits | extra)).unwrap();
        for (s, l) in small.iter().zip(&large) {
            prop_assert!(l.contains_subspace(s));
        }
        prop_assert_eq!(m.generation_closure(&small).unwrap(), small);
    }

    #[test]
    fn socle_lies_in_the_support(f in arb_flags(), d in proptest::collection::vec(0usize..2, 3)) {
        let a = algebra("mckay-1-3-111");
        let q = a.quiver().clone();
        let mats: Vec<Matrix> = q.arrows().iter().zip(&f).map(|(arr, &on)| {
            let (r, c) = (d[arr.head], d[arr.tail]);
            if on && r == 1 && c == 1 { Matrix::identity(1) } else { Matrix::zeros(r, c) }
        }).collect();
        let m = Representation::new(a, DimensionVector(d.clone()), mats).unwrap();
        for i in m.socle_simples() {
            prop_assert!(d[i] > 0);
        }
    }

    #[test]
    fn largest_submodule_off_contains_every_closed_support(f in arb_flags(), avoid_bits in 1u8..8) {
        // For 0/1 modules the submodules are the arrow-closed vertex sets.
        let a = algebra("mckay-1-3-111");
        let q = a.quiver().clone();
        let m = Representation::from_flags(a, &f).unwrap();
        let avoid: Vec<usize> = (0..3).filter(|i| avoid_bits >> i & 1 == 1).collect();
        let best = dims_of(&m.max_submodule_off(&avoid).unwrap());
        for mask in 0u8..8 {
            if avoid.iter().any(|&i| mask >> i & 1 == 1) {
                continue;
            }
            let closed = q.arrows().iter().zip(&f).all(|(arr, &on)| !on || mask >> arr.tail & 1 == 0 || mask >> arr.head & 1 == 1);
            if closed {
                for i in 0..3 {
                    if mask >> i & 1 == 1 {
                        prop_assert_eq!(best[i], 1);
                    }
                }
            }
        }
    }
}
