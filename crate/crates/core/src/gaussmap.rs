//! The Gauss map `ν̃ = x ∧ e_1 ∧ … ∧ e_n` and its Laplacians.
//!
//! The Laplacian is the positive one, `Δ = Σ_i ε_i (∇_{e_i} e_i - e_i e_i)`,
//! so the Clifford torus has eigenvalue `+2`.

use std::fmt;
use std::sync::Arc;

use crate::curvature::{self, GeometryReport};
use crate::error::{GeomError, Result};
use crate::immersion::{AdaptedFrame, Immersion};
use crate::multivector::{wedge_raw, Multivector, MultivectorSpace};

/// Default step of the numeric Laplace–Beltrami operator.
pub const LB_STEP: f64 = 1e-3;
/// Step for the second numeric application in `Δ²ν̃`.
pub const BILAPLACIAN_STEP: f64 = 5e-3;

/// `Λ^{n+1} E^m_s` for the immersion.
pub fn gauss_space(imm: &Immersion) -> Arc<MultivectorSpace> {
    MultivectorSpace::new(imm.signature(), imm.dim() + 1).expect("grade n+1 ≤ m")
}

/// `x ∧ e_1 ∧ … ∧ e_n` with the listed slots replaced. Slot `0` is `x`,
/// slot `k ≥ 1` is `e_k`.
fn wedge_replaced(space: &Arc<MultivectorSpace>, frame: &AdaptedFrame, replace: &[(usize, &[f64])]) -> Multivector {
    let mut vs: Vec<&[f64]> = Vec::with_capacity(frame.n() + 1);
    vs.push(&frame.point);
    vs.extend(frame.tangents.iter().map(|v| v.as_slice()));
    for &(slot, v) in replace {
        vs[slot] = v;
    }
    wedge_raw(space, &vs)
}

pub fn gauss_map_from_frame(space: &Arc<MultivectorSpace>, frame: &AdaptedFrame) -> Multivector {
    wedge_replaced(space, frame, &[])
}

pub fn gauss_map(imm: &Immersion, u: &[f64]) -> Result<Multivector> {
    let frame = imm.adapted_frame(u)?;
    Ok(gauss_map_from_frame(&gauss_space(imm), &frame))
}

/// `e_i ν̃ = Σ_k Σ_r ε_r h^r_ik x ∧ … ∧ e_r (slot k) ∧ … ∧ e_n`, `r` over sphere normals.
pub fn gauss_map_derivative(geo: &GeometryReport, i: usize) -> Multivector {
    let frame = &geo.frame;
    let space = MultivectorSpace::new(geo.signature(), frame.n() + 1).expect("grade n+1 ≤ m");
    let mut out = Multivector::zero(&space);
    for k in 0..frame.n() {
        for r in 0..frame.normals.len() {
            let c = frame.normal_sign(r) * geo.h[r][i][k];
            if c != 0.0 {
                out.add_scaled(c, &wedge_replaced(&space, frame, &[(k + 1, frame.normal(r))]));
            }
        }
    }
    out
}

/// `e_i ν̃` by central differences of `ν̃` at chart step `step`.
pub fn gauss_map_derivative_fd(imm: &Immersion, frame: &AdaptedFrame, i: usize, step: f64) -> Result<Multivector> {
    let space = gauss_space(imm);
    let mut out = Multivector::zero(&space);
    for (j, &c) in frame.chart_to_frame[i].iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let mut up = frame.u.clone();
        let mut dn = frame.u.clone();
        up[j] += step;
        dn[j] -= step;
        let d = &gauss_map(imm, &up)? - &gauss_map(imm, &dn)?;
        out.add_scaled(c / (2.0 * step), &d);
    }
    Ok(out)
}

/// Closed-form Laplacian:
/// `Δν̃ = ‖ĥ‖² ν̃ + n Ĥ ∧ e_1 ∧ … ∧ e_n - n Σ_k x ∧ … ∧ D_{e_k}Ĥ (slot k) ∧ …
///       + Σ_{j≠k} Σ_{r<s} ε_r ε_s R^r_{sjk} x ∧ … ∧ e_r (slot j) ∧ … ∧ e_s (slot k) ∧ …`.
pub fn laplacian_formula(geo: &GeometryReport) -> Multivector {
    let frame = &geo.frame;
    let n = frame.n();
    let nf = n as f64;
    let space = MultivectorSpace::new(geo.signature(), n + 1).expect("grade n+1 ≤ m");
    let mut out = gauss_map_from_frame(&space, frame).scale(geo.hhat_sq);
    out.add_scaled(nf, &wedge_replaced(&space, frame, &[(0, &geo.hhat)]));
    for k in 0..n {
        out.add_scaled(-nf, &wedge_replaced(&space, frame, &[(k + 1, &geo.d_hhat[k])]));
    }
    let q = frame.normals.len();
    for j in 0..n {
        for k in 0..n {
            if j == k {
                continue;
            }
            for r in 0..q {
                for s in r + 1..q {
                    let c = frame.normal_sign(r) * frame.normal_sign(s) * geo.normal_curvature[r][s][j][k];
                    if c != 0.0 {
                        let w = wedge_replaced(&space, frame, &[(j + 1, frame.normal(r)), (k + 1, frame.normal(s))]);
                        out.add_scaled(c, &w);
                    }
                }
            }
        }
    }
    out
}

/// A multivector-valued function on the parameter domain.
#[derive(Clone)]
pub struct MultivectorField {
    label: String,
    eval: Arc<dyn Fn(&[f64]) -> Result<Multivector> + Send + Sync>,
}

impl fmt::Debug for MultivectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultivectorField({})", self.label)
    }
}

impl MultivectorField {
    pub fn new(label: impl Into<String>, eval: impl Fn(&[f64]) -> Result<Multivector> + Send + Sync + 'static) -> Self {
        MultivectorField {
            label: label.into(),
            eval: Arc::new(eval),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, u: &[f64]) -> Result<Multivector> {
        (self.eval)(u)
    }
}

/// `u ↦ ν̃(u)`.
pub fn gauss_field(imm: &Immersion) -> MultivectorField {
    let imm = imm.clone();
    MultivectorField::new("gauss_map", move |u| gauss_map(&imm, u))
}

/// `u ↦ Δν̃(u)` from the closed form.
pub fn laplacian_field(imm: &Immersion) -> MultivectorField {
    let imm = imm.clone();
    MultivectorField::new("laplacian_formula", move |u| {
        Ok(laplacian_formula(&curvature::geometry(&imm, u, false)?))
    })
}

fn require_hypersurface(imm: &Immersion) -> Result<()> {
    if imm.is_hypersurface() {
        Ok(())
    } else {
        Err(GeomError::NotHypersurface {
            n: imm.dim(),
            m: imm.signature().dim(),
        })
    }
}

/// `ē = e_{n+1} ∧ e_1 ∧ … ∧ e_n` at a frame.
pub fn companion_from_frame(space: &Arc<MultivectorSpace>, frame: &AdaptedFrame) -> Multivector {
    wedge_replaced(space, frame, &[(0, &frame.normals[0])])
}

/// `u ↦ ē(u)` for hypersurfaces of the sphere.
pub fn companion_field(imm: &Immersion) -> Result<MultivectorField> {
    require_hypersurface(imm)?;
    let imm = imm.clone();
    let space = gauss_space(&imm);
    Ok(MultivectorField::new("companion", move |u| {
        Ok(companion_from_frame(&space, &imm.adapted_frame(u)?))
    }))
}

/// `Δē = n α̂ ν̃ + n ē`.
pub fn laplacian_companion(geo: &GeometryReport) -> Result<Multivector> {
    let frame = &geo.frame;
    let (Some(alpha), 1) = (geo.alpha_hat, frame.normals.len()) else {
        return Err(GeomError::NotHypersurface {
            n: frame.n(),
            m: geo.signature().dim(),
        });
    };
    let nf = frame.n() as f64;
    let space = MultivectorSpace::new(geo.signature(), frame.n() + 1).expect("grade n+1 ≤ m");
    let mut out = gauss_map_from_frame(&space, frame).scale(nf * alpha);
    out.add_scaled(nf, &companion_from_frame(&space, frame));
    Ok(out)
}

/// Numeric Laplace–Beltrami of `field` at `u`:
/// `Δφ = -(g^{ij} ∂_ij φ - g^{ij} Γ^k_ij ∂_k φ)` with exact `g`, `Γ` and
/// central differences of `φ` improved by one Richardson step.
pub fn laplace_beltrami_numeric(
    imm: &Immersion,
    field: &MultivectorField,
    u: &[f64],
    step: f64,
) -> Result<Multivector> {
    let n = imm.dim();
    let (ginv, gamma_trace) = metric_data(imm, u)?;
    let center = field.eval(u)?;
    let diffs = |h: f64| -> Result<(Vec<Multivector>, Vec<Vec<Multivector>>)> {
        let at = |offs: &[(usize, f64)]| -> Result<Multivector> {
            let mut v = u.to_vec();
            for &(i, d) in offs {
                v[i] += d;
            }
            field.eval(&v)
        };
        let mut first = Vec::with_capacity(n);
        let mut second = vec![vec![Multivector::zero(center.space()); n]; n];
        for i in 0..n {
            let p = at(&[(i, h)])?;
            let m = at(&[(i, -h)])?;
            first.push((&p - &m).scale(0.5 / h));
            let mut d2 = &p + &m;
            d2.add_scaled(-2.0, &center);
            second[i][i] = d2.scale(1.0 / (h * h));
        }
        for i in 0..n {
            for j in i + 1..n {
                let pp = at(&[(i, h), (j, h)])?;
                let pm = at(&[(i, h), (j, -h)])?;
                let mp = at(&[(i, -h), (j, h)])?;
                let mm = at(&[(i, -h), (j, -h)])?;
                let d = &(&pp - &pm) - &(&mp - &mm);
                second[i][j] = d.scale(0.25 / (h * h));
                second[j][i] = second[i][j].clone();
            }
        }
        Ok((first, second))
    };
    let (f1, s1) = diffs(step)?;
    let (f2, s2) = diffs(step / 2.0)?;
    let rich = |a: &Multivector, b: &Multivector| -> Multivector {
        let mut r = b.scale(4.0 / 3.0);
        r.add_scaled(-1.0 / 3.0, a);
        r
    };
    let mut out = Multivector::zero(center.space());
    for i in 0..n {
        for j in 0..n {
            out.add_scaled(-ginv[i][j], &rich(&s1[i][j], &s2[i][j]));
        }
    }
    for k in 0..n {
        out.add_scaled(gamma_trace[k], &rich(&f1[k], &f2[k]));
    }
    Ok(out)
}

// g^{ij} and g^{ij} Γ^k_ij at u from exact second-order jets.
fn metric_data(imm: &Immersion, u: &[f64]) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    let n = imm.dim();
    let sig = imm.signature();
    let g = imm.induced_metric(u)?;
    let jets = imm.partials(u, 2);
    let d = |alpha: &[u8]| -> Vec<f64> { jets.iter().map(|j| j.derivative(alpha).unwrap()).collect() };
    let unit = |i: usize| {
        let mut a = vec![0u8; n];
        a[i] += 1;
        a
    };
    let first: Vec<Vec<f64>> = (0..n).map(|i| d(&unit(i))).collect();
    let gm = nalgebra::DMatrix::from_fn(n, n, |i, j| g[i][j]);
    let gi = gm.try_inverse().ok_or(GeomError::DegenerateMetric { det: 0.0 })?;
    let ginv: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| gi[(i, j)]).collect()).collect();
    let mut trace = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            let mut a = unit(i);
            a[j] += 1;
            let xij = d(&a);
            for (k, tk) in trace.iter_mut().enumerate() {
                // Γ^k_ij = g^{kl} ⟨x_ij, x_l⟩
                let gamma: f64 = (0..n).map(|l| ginv[k][l] * sig.dot(&xij, &first[l])).sum();
                *tk += ginv[i][j] * gamma;
            }
        }
    }
    Ok((ginv, trace))
}

/// `Δ²ν̃` as the numeric Laplacian of the closed-form `Δν̃` field.
pub fn bilaplacian(imm: &Immersion, u: &[f64], step: f64) -> Result<Multivector> {
    laplace_beltrami_numeric(imm, &laplacian_field(imm), u, step)
}

/// [`bilaplacian`] restricted to hypersurfaces of the sphere.
pub fn bilaplacian_hypersurface(imm: &Immersion, u: &[f64], step: f64) -> Result<Multivector> {
    require_hypersurface(imm)?;
    bilaplacian(imm, u, step)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::{Expr, ExprChart, FactorKind};
    use crate::indefinite::Signature;
    use crate::multivector::mv_inner;

    fn clifford() -> Immersion {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let comps = vec![
            Expr::factor(r, FactorKind::Cos, &[1.0, 0.0], 0.0),
            Expr::factor(r, FactorKind::Sin, &[1.0, 0.0], 0.0),
            Expr::factor(r, FactorKind::Cos, &[0.0, 1.0], 0.0),
            Expr::factor(r, FactorKind::Sin, &[0.0, 1.0], 0.0),
            Expr::zero(),
        ];
        Immersion::new(
            "clifford",
            Signature::new(5, 1).unwrap(),
            0,
            vec![(0.0, 6.0), (0.0, 6.0)],
            Arc::new(ExprChart::new(2, comps)),
        )
        .unwrap()
    }

    #[test]
    fn clifford_eigenvalue_two_both_routes() {
        let imm = clifford();
        let u = [0.8, 2.1];
        let geo = curvature::geometry(&imm, &u, false).unwrap();
        let nu = gauss_map(&imm, &u).unwrap();
        assert!((mv_inner(&nu, &nu).unwrap() - 1.0).abs() < 1e-12);
        let formula = laplacian_formula(&geo);
        assert!(formula.dist_euclid(&nu.scale(2.0)) < 1e-10);
        let numeric = laplace_beltrami_numeric(&imm, &gauss_field(&imm), &u, LB_STEP).unwrap();
        assert!(numeric.dist_euclid(&formula) < 1e-6);
    }

    #[test]
    fn derivative_formula_matches_fd() {
        let imm = clifford();
        let geo = curvature::geometry(&imm, &[0.3, 0.4], false).unwrap();
        for i in 0..2 {
            let a = gauss_map_derivative(&geo, i);
            let b = gauss_map_derivative_fd(&imm, &geo.frame, i, 1e-4).unwrap();
            assert!(a.dist_euclid(&b) < 1e-7);
        }
    }

    #[test]
    fn constant_field_has_zero_laplacian() {
        let imm = clifford();
        let space = gauss_space(&imm);
        let c = Multivector::from_coeffs(&space, (0..space.dim()).map(|k| k as f64).collect()).unwrap();
        let field = MultivectorField::new("const", move |_| Ok(c.clone()));
        let l = laplace_beltrami_numeric(&imm, &field, &[1.0, 1.0], LB_STEP).unwrap();
        assert!(l.norm_euclid() < 1e-9);
    }

    #[test]
    fn companion_requires_hypersurface() {
        assert!(matches!(
            companion_field(&clifford()),
            Err(GeomError::NotHypersurface { .. })
        ));
    }
}
