use std::sync::Arc;

use proptest::prelude::*;
use pseudogauss::catalog;
use pseudogauss::multivector::{mv_inner, wedge};
use pseudogauss::spectral::fit_one_type;
use pseudogauss::{AmbientVector, Multivector, MultivectorSpace, Signature};

fn coords(m: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, m)
}

/// Leibniz expansion, fine for the small Gram matrices used here.
fn det_leibniz(a: &[Vec<f64>]) -> f64 {
    let k = a.len();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut total = 0.0;
    loop {
        let inversions = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * (0..k).map(|i| a[i][perm[i]]).product::<f64>();
        // next permutation in lexicographic order
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..k).rev().find(|&j| perm[j] > perm[i]).expect("exists");
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    total
}

fn synthetic(
    space: &Arc<MultivectorSpace>,
    lambda: f64,
    c: &[f64],
    nus: &[Vec<f64>],
) -> (Multivector, Vec<(Multivector, Multivector)>) {
    let c = Multivector::from_coeffs(space, c.to_vec()).unwrap();
    let samples = nus
        .iter()
        .map(|v| {
            let nu = Multivector::from_coeffs(space, v.clone()).unwrap();
            let mut lap = nu.clone();
            lap.add_scaled(-1.0, &c);
            (nu, lap.scale(lambda))
        })
        .collect();
    (c, samples)
}

fn grade3_space() -> Arc<MultivectorSpace> {
    MultivectorSpace::new(Signature::new(5, 2).unwrap(), 3).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fit_recovers_exact_one_type_data(
        lambda in prop_oneof![-6.0f64..-0.5, 0.5f64..6.0],
        c in coords(10),
        nus in prop::collection::vec(coords(10), 12),
    ) {
        let space = grade3_space();
        let (c, samples) = synthetic(&space, lambda, &c, &nus);
        let fit = fit_one_type(&samples).unwrap();
        prop_assert!((fit.lambda - lambda).abs() < 1e-10 * lambda.abs().max(1.0));
        prop_assert!(fit.c.dist_euclid(&c) < 1e-9);
        prop_assert!(fit.residual < 1e-10);
    }

    #[test]
    fn fit_is_scale_covariant(
        lambda in 0.5f64..6.0,
        k in prop_oneof![-3.0f64..-0.2, 0.2f64..3.0],
        c in coords(10),
        nus in prop::collection::vec(coords(10), 8),
    ) {
        let space = grade3_space();
        let (c, samples) = synthetic(&space, lambda, &c, &nus);
        let scaled: Vec<_> = samples.iter().map(|(a, b)| (a.scale(k), b.scale(k))).collect();
        let f1 = fit_one_type(&samples).unwrap();
        let f2 = fit_one_type(&scaled).unwrap();
        prop_assert!((f1.lambda - f2.lambda).abs() < 1e-9);
        prop_assert!(f2.c.dist_euclid(&c.scale(k)) < 1e-8);
    }

    #[test]
    fn wedge_inner_is_gram_determinant(
        s in 0usize..=3,
        f in prop::collection::vec(coords(5), 3),
        g in prop::collection::vec(coords(5), 3),
    ) {
        let sig = Signature::new(5, s).unwrap();
        let space = MultivectorSpace::new(sig, 3).unwrap();
        let fv: Vec<_> = f.iter().map(|v| AmbientVector::new(sig, v.clone()).unwrap()).collect();
        let gv: Vec<_> = g.iter().map(|v| AmbientVector::new(sig, v.clone()).unwrap()).collect();
        let lhs = mv_inner(&wedge(&space, &fv).unwrap(), &wedge(&space, &gv).unwrap()).unwrap();
        let gram: Vec<Vec<f64>> = f.iter().map(|a| g.iter().map(|b| sig.dot(a, b)).collect()).collect();
        let rhs = det_leibniz(&gram);
        prop_assert!((lhs - rhs).abs() < 1e-9 * (1.0 + rhs.abs()));
    }

    #[test]
    fn wedge_is_alternating(f in prop::collection::vec(coords(5), 3), t in -2.0f64..2.0) {
        let sig = Signature::new(5, 1).unwrap();
        let space = MultivectorSpace::new(sig, 3).unwrap();
        let v = |c: &Vec<f64>| AmbientVector::new(sig, c.clone()).unwrap();
        let w = wedge(&space, &[v(&f[0]), v(&f[1]), v(&f[2])]).unwrap();
        let swapped = wedge(&space, &[v(&f[1]), v(&f[0]), v(&f[2])]).unwrap();
        prop_assert!(w.dist_euclid(&swapped.scale(-1.0)) < 1e-12);
        // adding a multiple of another factor changes nothing
        let sheared: Vec<f64> = f[2].iter().zip(&f[0]).map(|(a, b)| a + t * b).collect();
        let w2 = wedge(&space, &[v(&f[0]), v(&f[1]), v(&sheared)]).unwrap();
        prop_assert!(w.dist_euclid(&w2) < 1e-10);
        let repeated = wedge(&space, &[v(&f[0]), v(&f[1]), v(&f[0])]).unwrap();
        prop_assert!(repeated.norm_euclid() < 1e-12);
    }

    #[test]
    fn frames_orthonormal_at_random_points(which in 0usize..14, t in prop::collection::vec(0.1f64..0.9, 3)) {
        let entry = &catalog::entries()[which];
        let imm = &entry.immersion;
        let u: Vec<f64> = imm.domain().iter().zip(&t).map(|((lo, hi), s)| lo + s * (hi - lo)).collect();
        let frame = imm.adapted_frame(&u).unwrap();
        prop_assert!(frame.orthonormality_defect() < 1e-12, "{} at {:?}", entry.name, u);
        prop_assert_eq!(frame.tangent_index(), imm.index());
    }
}

#[test]
fn leibniz_oracle_sanity() {
    assert_eq!(det_leibniz(&[vec![2.0]]), 2.0);
    assert_eq!(det_leibniz(&[vec![1.0, 2.0], vec![3.0, 4.0]]), -2.0);
    let a = vec![vec![2.0, 0.0, 1.0], vec![1.0, 3.0, 2.0], vec![1.0, 1.0, 2.0]];
    assert!((det_leibniz(&a) - 6.0).abs() < 1e-12);
}
