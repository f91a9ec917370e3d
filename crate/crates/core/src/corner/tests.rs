use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{parse_algebra_document, AlgebraPresentation};
use crate::corpus;
use crate::linalg::{int, ratio, rank, Matrix, Scalar};
use crate::rep::{DimensionVector, QuotientCertificate};
use crate::toric::{enumerate_fixed_points, sample_generic, Sample};

fn algebra(id: &str) -> Arc<AlgebraPresentation> {
    corpus::algebra(id).unwrap()
}

fn corner(id: &str, keep: &[usize]) -> BinomialCornering {
    BinomialCornering::new(algebra(id), keep, CorneringOptions::default()).unwrap()
}

fn module(id: &str) -> Representation {
    corpus::module(id, CorneringOptions::default()).unwrap().module
}

fn generator_names(p: &ModulePresentation, cd: &CorneringData) -> Vec<String> {
    p.generators().iter().map(|g| g.display(cd.parent().quiver())).collect()
}

#[test]
fn mckay_1_6_presentation_matches_the_printed_one() {
    let b = corner("mckay-1-6-123", &[0, 1, 2, 3, 4]);
    let derived = b.presentation(5).unwrap();
    let printed = &corpus::presentations("mckay-1-6-p5", b.data()).unwrap()[&5];
    assert_eq!(generator_names(&derived, b.data()), ["x4", "y3", "z2"]);
    assert_eq!(generator_names(printed, b.data()), ["x4", "y3", "z2"]);
    assert_eq!(derived.normalized_columns(b.data()), printed.normalized_columns(b.data()));
}

#[test]
fn dp6_presentation_matches_the_printed_one() {
    let b = corner("dp6-dimer", &[0, 1, 2, 3, 4]);
    let derived = b.presentation(5).unwrap();
    let printed = &corpus::presentations("dp6-p5", b.data()).unwrap()[&5];
    assert_eq!(generator_names(&derived, b.data()), ["x5", "y5", "z5"]);
    assert_eq!(derived.normalized_columns(b.data()), printed.normalized_columns(b.data()));
}

#[test]
fn kept_vertex_is_generated_by_its_idempotent() {
    let b = corner("mckay-1-6-123", &[0, 1, 2, 3, 4]);
    let p = b.presentation(3).unwrap();
    assert_eq!(p.rows(), 1);
    assert_eq!(p.cols(), 0);
    assert!(p.generators()[0].is_empty());
}

#[test]
fn derivation_is_stable_one_step_further() {
    for (id, keep) in [
        ("mckay-1-3-111", vec![0, 2]),
        ("mckay-1-6-123", vec![0, 1, 2, 3, 4]),
        ("dp6-dimer", vec![0, 1, 2, 3]),
    ] {
        let a = algebra(id);
        let base = BinomialCornering::new(a.clone(), &keep, CorneringOptions::default()).unwrap();
        let further = BinomialCornering::new(
            a,
            &keep,
            CorneringOptions {
                bound: Some(base.bound() + 1),
                relation_bound: None,
            },
        )
        .unwrap();
        assert_eq!(base.data().cornered().as_ref(), further.data().cornered().as_ref(), "{id}");
        assert_eq!(base.presentations(), further.presentations(), "{id}");
    }
}

#[test]
fn non_binomial_algebra_is_refused() {
    let err = BinomialCornering::new(algebra("quaternion-reconstruction"), &[0, 1, 2, 3], CorneringOptions::default());
    assert!(matches!(err, Err(Error::NotBinomial { .. })));
}

#[test]
fn generic_determinant_vanishes() {
    let b = corner("mckay-1-6-123", &[0, 1, 2, 3, 4]);
    let cornered = b.data().cornered().clone();
    let Sample::Accepted(n) = sample_generic(&cornered, &[int(2), int(3), int(5)], &BTreeSet::new()).unwrap() else {
        panic!("generic point rejected");
    };
    let q = cornered.quiver();
    let value = |name: &str| n.matrix(q.arrow_index(name).unwrap())[(0, 0)].clone();
    let printed = value("x1") * value("y2") * value("z0") - value("x2") * value("y0") * value("z1");
    assert_eq!(value("x1") * value("y2") * value("z0"), int(30));
    assert!(printed.is_zero());
    let pn = b.presentation(5).unwrap().evaluate(b.data(), &n).unwrap();
    assert!(pn.determinant().unwrap().is_zero());
}

#[test]
fn witness_presentation_is_a_signed_permutation() {
    let loaded = corpus::module("dp6-Nprime", CorneringOptions::default()).unwrap();
    let c = loaded.cornering.unwrap();
    let p = &c.presentations()[&5];
    let pn = p.evaluate(c.data(), &loaded.module).unwrap();
    assert_eq!((pn.rows(), pn.cols()), (3, 3));
    for i in 0..3 {
        let nonzero: Vec<Scalar> = pn.row(i).iter().filter(|x| !x.is_zero()).cloned().collect();
        assert_eq!(nonzero.len(), 1);
        assert!(nonzero[0] == int(1) || nonzero[0] == int(-1));
    }
    assert_eq!(rank(&pn), 3);
}

#[test]
fn zero_module_gives_zero_presentation_matrix() {
    let b = corner("mckay-1-6-123", &[0, 1, 2, 3, 4]);
    let n = Representation::zero(b.data().cornered().clone(), DimensionVector::ones(5)).unwrap();
    assert!(b.presentation(5).unwrap().evaluate(b.data(), &n).unwrap().is_zero());
}

#[test]
fn induced_dimensions_of_the_examples() {
    let loaded = corpus::module("mckay-1-3-N", CorneringOptions::default()).unwrap();
    let c = loaded.cornering.unwrap();
    assert_eq!(c.induced_dims(&loaded.module).unwrap().0, vec![1, 3, 1]);

    let loaded = corpus::module("dp6-Nprime", CorneringOptions::default()).unwrap();
    let c = loaded.cornering.unwrap();
    assert_eq!(c.induced_dims(&loaded.module).unwrap()[5], 0);
}

#[test]
fn whole_vertex_set_changes_nothing() {
    let a = algebra("mckay-1-3-111");
    let cd = CorneringData::identity(a.clone());
    for fixed in enumerate_fixed_points(&a).unwrap() {
        assert_eq!(cd.corner_restrict(&fixed).unwrap(), fixed);
        assert_eq!(induced_dims(&cd, &fixed, &BTreeMap::new()).unwrap(), *fixed.dims());
    }
}

#[test]
fn induced_module_matches_the_printed_one() {
    let loaded = corpus::module("mckay-1-3-N", CorneringOptions::default()).unwrap();
    let c = loaded.cornering.unwrap();
    let b = c.derived().unwrap();
    let induced = b.build_induced_module(&loaded.module).unwrap().module;
    let printed = module("mckay-1-3-jN");
    assert!(induced.satisfies_relations());
    assert_eq!(induced.socle_simples(), printed.socle_simples());
    let printed = printed.with_algebra(induced.algebra().clone()).unwrap();
    assert!(induced.isomorphism_to(&printed).unwrap().is_some());
}

#[test]
fn restricting_the_printed_module_recovers_n() {
    let loaded = corpus::module("mckay-1-3-N", CorneringOptions::default()).unwrap();
    let c = loaded.cornering.unwrap();
    let printed = module("mckay-1-3-jN").with_algebra(c.data().parent().clone()).unwrap();
    assert_eq!(c.data().corner_restrict(&printed).unwrap(), loaded.module);
}

#[test]
fn restricting_to_vertex_zero() {
    let b = corner("mckay-1-3-111", &[0]);
    let m = &enumerate_fixed_points(&algebra("mckay-1-3-111")).unwrap()[0];
    let r = b.data().corner_restrict(m).unwrap();
    assert_eq!(r.dims().0, vec![1]);
    assert!(r.satisfies_relations());
}

#[test]
fn x_chain_induces_an_all_ones_module() {
    let loaded = corpus::module("mckay-1-6-xchain", CorneringOptions::default()).unwrap();
    let c = loaded.cornering.unwrap();
    let b = c.derived().unwrap();
    let induced = b.build_induced_module(&loaded.module).unwrap().module;
    assert_eq!(induced.dims(), &DimensionVector::ones(6));
    assert_eq!(b.data().corner_restrict(&induced).unwrap(), loaded.module);
    match b.image_membership(&loaded.module, &DimensionVector::ones(6)).unwrap() {
        ImageMembership::InImage { witness: Some(w), .. } => {
            assert!(w.satisfies_relations());
            assert_eq!(b.data().corner_restrict(&w).unwrap(), loaded.module);
        }
        other => panic!("expected a witness, got {other:?}"),
    }
}

#[test]
fn example_n_is_not_in_the_image() {
    let loaded = corpus::module("mckay-1-3-N", CorneringOptions::default()).unwrap();
    let c = loaded.cornering.unwrap();
    match c.image_membership(&loaded.module, &DimensionVector::ones(3)).unwrap() {
        ImageMembership::NotInImage {
            induced_dims,
            certificate: MembershipCertificate::NoQuotient(QuotientCertificate::SubmoduleTooSmall { available, .. }),
        } => {
            assert_eq!(induced_dims.0, vec![1, 3, 1]);
            assert_eq!(available[1], 0);
        }
        other => panic!("unexpected decision {other:?}"),
    }
}

#[test]
fn example_n_prime_is_not_in_the_image() {
    let loaded = corpus::module("dp6-Nprime", CorneringOptions::default()).unwrap();
    let c = loaded.cornering.unwrap();
    let decision = c.image_membership(&loaded.module, &DimensionVector::ones(6)).unwrap();
    assert!(matches!(
        decision,
        ImageMembership::NotInImage {
            certificate: MembershipCertificate::DimensionDeficit { vertex: 5, induced: 0, required: 1 },
            ..
        } | ImageMembership::NotInImage {
            certificate: MembershipCertificate::DimensionDeficit { vertex: 4, .. },
            ..
        }
    ));
}

#[test]
fn recollement_properties_on_fixed_points() {
    for (id, keep) in [
        ("mckay-1-3-111", vec![0, 2]),
        ("mckay-1-6-123", vec![0, 1, 2, 3, 4]),
        ("dp6-dimer", vec![0, 1, 2, 3, 4]),
        ("dp6-dimer", vec![0, 1, 2, 3]),
    ] {
        let b = corner(id, &keep);
        let cd = b.data();
        let mut instances = enumerate_fixed_points(cd.cornered()).unwrap();
        for m in enumerate_fixed_points(cd.parent()).unwrap() {
            assert!(b.counit_is_surjective(&m).unwrap(), "{id}: counit onto {m:?}");
            instances.push(cd.corner_restrict(&m).unwrap());
        }
        for n in instances {
            let induced = b.build_induced_module(&n).unwrap().module;
            assert!(induced.satisfies_relations(), "{id}");
            assert!(induced.is_zero_generated().unwrap(), "{id}");
            assert_eq!(cd.corner_restrict(&induced).unwrap(), n, "{id}");
            assert_eq!(induced.dims(), &b.induced_dims(&n).unwrap(), "{id}");
            assert_eq!(induced.dims(), &induced_dims(cd, &n, &b.presentations()).unwrap(), "{id}");
        }
    }
}

#[test]
fn presentation_round_trips_through_text() {
    let b = corner("dp6-dimer", &[0, 1, 2, 3]);
    let mut text = format!("keep: {}\n\n", b.data().keep_names().join(", "));
    for p in b.presentations().values() {
        text.push_str(&p.to_text(b.data()));
        text.push('\n');
    }
    assert_eq!(parse_presentations(b.data(), &text).unwrap(), b.presentations());
}

#[test]
fn cornered_algebra_round_trips_through_text() {
    let b = corner("mckay-1-6-123", &[0, 1, 2, 3, 4]);
    let doc = parse_algebra_document(&b.data().to_text()).unwrap();
    let again = CorneringData::from_document(b.data().parent().clone(), &doc).unwrap();
    assert_eq!(again.cornered().as_ref(), b.data().cornered().as_ref());
    assert_eq!(again.dictionary(), b.data().dictionary());
}

#[test]
fn presentation_with_wrong_endpoints_is_refused() {
    let b = corner("mckay-1-6-123", &[0, 1, 2, 3, 4]);
    let bad = "[presentation 5]\ngenerators: x4, y3, z2\nP:\nx0, 0, 0\n0, 0, 0\n0, 0, 0\n";
    assert!(parse_presentations(b.data(), bad).is_err());
    let kept = "[presentation 4]\ngenerators: x3\n";
    assert!(parse_presentations(b.data(), kept).is_err());
    let wrong_keep = "keep: 0, 1\n[presentation 5]\ngenerators: x4\n";
    assert!(parse_presentations(b.data(), wrong_keep).is_err());
}

#[test]
fn determinant_terms_of_the_1_6_presentation() {
    let b = corner("mckay-1-6-123", &[0, 1, 2, 3, 4]);
    let terms = determinant_terms(&b.presentation(5).unwrap()).unwrap();
    let q = b.data().cornered().quiver();
    let mut shown: Vec<(i64, Vec<String>)> = terms
        .into_iter()
        .map(|(c, ps)| {
            let mut names: Vec<String> = ps.iter().map(|p| p.display(q)).collect();
            names.sort();
            (c, names)
        })
        .collect();
    shown.sort();
    // Up to an overall sign: x1 y2 z0 - x2 y0 z1.
    let sign = if shown[0].1 == ["x1", "y2", "z0"] { shown[0].0 } else { -shown[0].0 };
    let expected: Vec<(i64, Vec<String>)> = vec![
        (sign, vec!["x1".into(), "y2".into(), "z0".into()]),
        (-sign, vec!["x2".into(), "y0".into(), "z1".into()]),
    ];
    let mut expected = expected;
    expected.sort();
    assert_eq!(shown, expected);
}

/// A random all-ones module of the quaternion reconstruction algebra: every
/// two-cycle acts by the same scalar `t`, and `f` is solved from the
/// trinomial relation.
fn quaternion_sample(a: &Arc<AlgebraPresentation>, rng: &mut ChaCha8Rng) -> Option<Representation> {
    let mut draw = || ratio(rng.gen_range(1..=50), rng.gen_range(1..=50)) * int(if rng.gen_bool(0.5) { 1 } else { -1 });
    let (av, cv, ev, bv, dv, t) = (draw(), draw(), draw(), draw(), draw(), draw());
    let fv = (&bv * &av - &dv * &cv) / &ev;
    if fv.is_zero() {
        return None;
    }
    let q = a.quiver();
    let mut values = vec![Scalar::zero(); q.num_arrows()];
    for (name, v) in [("a", &av), ("c", &cv), ("e", &ev), ("b", &bv), ("d", &dv), ("f", &fv)] {
        values[q.arrow_index(name).unwrap()] = v.clone();
        values[q.arrow_index(&format!("{name}'")).unwrap()] = &t / v;
    }
    Some(Representation::from_scalars(a.clone(), values).unwrap())
}

#[test]
fn quaternion_cornering_agrees_on_sampled_modules() {
    let parent = algebra("quaternion-reconstruction");
    let c = corpus::cornering(parent.clone(), Some("quaternion-reconstruction"), &[0, 1, 2, 3], CorneringOptions::default())
        .unwrap();
    let cd = c.data();
    let p = &c.presentations()[&4];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 200 {
        let Some(m) = quaternion_sample(&parent, &mut rng) else {
            continue;
        };
        assert!(m.satisfies_relations());
        let n = cd.corner_restrict(&m).unwrap();
        assert!(n.satisfies_relations(), "cornered relations fail on {n:?}");
        // Every column is a syzygy among the generators b, d, f.
        for i in 0..p.cols() {
            let mut sum = Matrix::zeros(1, 1);
            for j in 0..p.rows() {
                let g = m.evaluate_path(&p.generators()[j]).unwrap();
                let entry = p.entry(j, i);
                for (coeff, path) in entry.terms() {
                    let value = m.evaluate_path(&cd.expand(path).unwrap()).unwrap();
                    sum = sum.add(&g.mul(&value).unwrap().scale(coeff)).unwrap();
                }
            }
            assert!(sum.is_zero(), "column {} is not a relation", i + 1);
        }
        assert_eq!(c.induced_dims(&n).unwrap()[4], 1);
        checked += 1;
    }
}

#[test]
fn zero_module_induces_nothing_off_the_corner() {
    let c = corpus::cornering(
        algebra("quaternion-reconstruction"),
        Some("quaternion-reconstruction"),
        &[0, 1, 2, 3],
        CorneringOptions::default(),
    )
    .unwrap();
    let zero = module("zero-module");
    let n = c.data().corner_restrict(&zero).unwrap();
    assert_eq!(c.induced_dims(&n).unwrap()[4], 3);
}
