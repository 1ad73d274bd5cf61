//! Closed-form Laplacian of the Gauss map against the numeric Laplace-Beltrami
//! operator on a surface with no symmetry at all.

use std::sync::Arc;

use pseudogauss::jet::Jet;
use pseudogauss::report::evaluate_point;
use pseudogauss::{Immersion, JetChart, Signature};

/// `y / sqrt<y,y>` for a lopsided `y(u,v)`; `s` trailing coordinates are timelike.
fn generic(s: usize) -> Arc<JetChart> {
    let sig = Signature::new(5, s).unwrap();
    Arc::new(JetChart::new(2, 5, move |w: &[Jet]| {
        let (u, v) = (&w[0], &w[1]);
        let y = [
            (u + v).sin().scale(0.2).add_const(1.0),
            u + &v.sin().scale(0.3),
            v + &(u * v).scale(0.2),
            u.cos().scale(0.3),
            &v.scale(2.0).sin().scale(0.2) + &u.scale(0.1),
        ];
        let mut q = Jet::constant(y[0].layout(), 0.0);
        for (a, ya) in y.iter().enumerate() {
            q = &q + &(ya * ya).scale(sig.sign(a));
        }
        let inv = q.powf(-0.5);
        y.iter().map(|ya| ya * &inv).collect()
    }))
}

fn check(s: usize) {
    let sig = Signature::new(5, s).unwrap();
    let chart = generic(s);
    let probe = Immersion::new("probe", sig, 0, vec![(0.2, 0.8), (0.2, 0.8)], chart.clone()).unwrap();
    let index = evaluate_point(&probe, &[0.5, 0.5], 1e-3).unwrap().index;
    let imm = Immersion::new("generic", sig, index, vec![(0.2, 0.8), (0.2, 0.8)], chart).unwrap();
    for u in imm.sample_grid(&[4, 4], 0.0).unwrap() {
        let e = evaluate_point(&imm, &u, 1e-3).unwrap();
        assert_eq!(e.index, index, "index changes at {u:?}");
        assert!(e.sphere_defect < 1e-12);
        assert!(e.frame_defect < 1e-12);
        assert!(e.route_error < 1e-4, "route {:.3e} at {u:?}", e.route_error);
        assert!(e.derivative_error < 1e-5, "dif1 {:.3e} at {u:?}", e.derivative_error);
        // central differences: ten times smaller step, about a hundred times smaller error
        let fine = evaluate_point(&imm, &u, 1e-4).unwrap().derivative_error;
        let ratio = e.derivative_error / fine;
        assert!((80.0..120.0).contains(&ratio), "dif1 ratio {ratio:.1} at {u:?}");
        assert!(e.codazzi < 1e-6, "codazzi {:.3e} at {u:?}", e.codazzi);
        // not accidentally trivial
        let lap = e.sample.laplacian.norm_euclid();
        assert!(lap > 1e-1, "|lap| {lap:.3e}");
    }
}

#[test]
fn generic_surface_riemannian_ambient() {
    check(0);
}

#[test]
fn generic_surface_lorentzian_ambient() {
    check(1);
}
