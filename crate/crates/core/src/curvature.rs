//! Second fundamental form and curvature invariants.
//!
//! Conventions, with `(e_A)` an [`AdaptedFrame`] and `x` appended as the
//! last normal:
//!
//! * `h^r_ij = ⟨∇̃_{e_i} e_j, e_r⟩`, so `h^x_ij = -ε_i δ_ij`;
//! * `(A_r)_{ji} = ε_j h^r_ij`, `tr A_r = Σ_i ε_i h^r_ii`;
//! * `H = (1/n) Σ_r ε_r tr(A_r) e_r` over all normals and `Ĥ = H + x`;
//! * `‖h‖² = Σ ε_i ε_j ε_r h^r_ij h^r_ji`, `‖ĥ‖²` the same without `x`;
//! * `S = n(n-1) + n²⟨Ĥ,Ĥ⟩ - ‖ĥ‖²`;
//! * `R^D(e_j,e_k;e_r,e_s) = Σ_i ε_i (h^r_ik h^s_ij - h^r_ij h^s_ik)`.

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::immersion::{AdaptedFrame, Connection, Immersion, FRAME_FD_STEP};
use crate::indefinite::{axpy, causal_character_raw, CausalCharacter, Signature};
use crate::jet::Jet;

/// `h[r][i][j]`, `r` over sphere normals then `x`.
pub type SecondFundamentalForm = Vec<Vec<Vec<f64>>>;

/// `R^D` as `rd[r][s][j][k]` over sphere normals.
pub type NormalCurvature = Vec<Vec<Vec<Vec<f64>>>>;

pub fn second_fundamental_form(imm: &Immersion, frame: &AdaptedFrame) -> SecondFundamentalForm {
    let n = imm.dim();
    let sig = imm.signature();
    let jets = imm.partials(&frame.u, 2);
    // x_kl
    let mut second = vec![vec![Vec::new(); n]; n];
    for k in 0..n {
        for l in 0..n {
            let mut alpha = vec![0u8; n];
            alpha[k] += 1;
            alpha[l] += 1;
            second[k][l] = jets.iter().map(|j| j.derivative(&alpha).unwrap()).collect::<Vec<f64>>();
        }
    }
    let c = &frame.chart_to_frame;
    (0..=imm.codim())
        .map(|r| {
            let er = frame.normal(r);
            let proj: Vec<Vec<f64>> = (0..n)
                .map(|k| (0..n).map(|l| sig.dot(&second[k][l], er)).collect())
                .collect();
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let mut s = 0.0;
                            for k in 0..n {
                                for l in 0..n {
                                    s += c[i][k] * c[j][l] * proj[k][l];
                                }
                            }
                            s
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// `(A_r)_{ji} = ε_j h^r_ij`, returned as `a[j][i]`.
pub fn shape_operator(frame: &AdaptedFrame, h: &SecondFundamentalForm, r: usize) -> Vec<Vec<f64>> {
    let n = frame.n();
    (0..n)
        .map(|j| (0..n).map(|i| frame.sign(j) * h[r][i][j]).collect())
        .collect()
}

/// Mean curvature vectors `(H, Ĥ)` and, for hypersurfaces, `α̂ = ⟨Ĥ, e_{n+1}⟩`.
pub fn mean_curvature(frame: &AdaptedFrame, h: &SecondFundamentalForm) -> (Vec<f64>, Vec<f64>, Option<f64>) {
    let n = frame.n();
    let m = frame.signature.dim();
    let mut big_h = vec![0.0; m];
    for (r, hr) in h.iter().enumerate() {
        let tr: f64 = (0..n).map(|i| frame.sign(i) * hr[i][i]).sum();
        axpy(frame.normal_sign(r) * tr / n as f64, frame.normal(r), &mut big_h);
    }
    let hhat: Vec<f64> = big_h.iter().zip(&frame.point).map(|(a, b)| a + b).collect();
    let alpha = (frame.normals.len() == 1).then(|| frame.signature.dot(&hhat, &frame.normals[0]));
    (big_h, hhat, alpha)
}

/// `‖h‖²`, or `‖ĥ‖²` when `spherical` drops the `x` direction.
pub fn squared_norm_h(frame: &AdaptedFrame, h: &SecondFundamentalForm, spherical: bool) -> f64 {
    let n = frame.n();
    let count = if spherical { h.len() - 1 } else { h.len() };
    let mut s = 0.0;
    for (r, hr) in h.iter().enumerate().take(count) {
        for i in 0..n {
            for j in 0..n {
                s += frame.sign(i) * frame.sign(j) * frame.normal_sign(r) * hr[i][j] * hr[j][i];
            }
        }
    }
    s
}

/// `S = n(n-1) + n²⟨Ĥ,Ĥ⟩ - ‖ĥ‖²`.
pub fn scalar_curvature(sig: Signature, n: usize, hhat: &[f64], hhat_sq: f64) -> f64 {
    let nf = n as f64;
    nf * (nf - 1.0) + nf * nf * sig.dot(hhat, hhat) - hhat_sq
}

pub fn normal_curvature(frame: &AdaptedFrame, h: &SecondFundamentalForm) -> NormalCurvature {
    let n = frame.n();
    let q = frame.normals.len();
    (0..q)
        .map(|r| {
            (0..q)
                .map(|s| {
                    (0..n)
                        .map(|j| {
                            (0..n)
                                .map(|k| {
                                    (0..n)
                                        .map(|i| frame.sign(i) * (h[r][i][k] * h[s][i][j] - h[r][i][j] * h[s][i][k]))
                                        .sum()
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn jet_det(g: &[Vec<Jet>]) -> Jet {
    let n = g.len();
    match n {
        1 => g[0][0].clone(),
        2 => &(&g[0][0] * &g[1][1]) - &(&g[0][1] * &g[1][0]),
        _ => {
            let mut acc = Jet::constant(g[0][0].layout(), 0.0);
            for c in 0..n {
                let minor: Vec<Vec<Jet>> = g[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != c)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &g[0][c] * &jet_det(&minor);
                acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn jet_inverse(g: &[Vec<Jet>]) -> Vec<Vec<Jet>> {
    let n = g.len();
    let inv_det = jet_det(g).recip();
    if n == 1 {
        return vec![vec![inv_det]];
    }
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    // adjugate: cofactor of (j, i)
                    let minor: Vec<Vec<Jet>> = g
                        .iter()
                        .enumerate()
                        .filter(|(r, _)| *r != j)
                        .map(|(_, row)| {
                            row.iter()
                                .enumerate()
                                .filter(|(c, _)| *c != i)
                                .map(|(_, v)| v.clone())
                                .collect()
                        })
                        .collect();
                    let cof = &jet_det(&minor) * &inv_det;
                    if (i + j) % 2 == 0 {
                        cof
                    } else {
                        -&cof
                    }
                })
                .collect()
        })
        .collect()
}

/// `Ĥ` at `u` and its chart partials `∂_k Ĥ`, exact through jets:
/// `Ĥ = x + (1/n) g^{ij} (∂_ij x - Γ^k_ij ∂_k x)`.
pub fn mean_curvature_jet(imm: &Immersion, u: &[f64]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = imm.dim();
    let sig = imm.signature();
    let m = sig.dim();
    let x = imm.partials(u, 3);
    let xi: Vec<Vec<Jet>> = (0..n).map(|i| x.iter().map(|c| c.partial(i)).collect()).collect();
    let xij: Vec<Vec<Vec<Jet>>> = (0..n)
        .map(|i| (0..n).map(|j| xi[i].iter().map(|c| c.partial(j)).collect()).collect())
        .collect();
    let xi: Vec<Vec<Jet>> = xi.iter().map(|v| v.iter().map(|c| c.truncate(1)).collect()).collect();
    let layout = xi[0][0].layout().clone();
    let dot = |a: &[Jet], b: &[Jet]| -> Jet {
        let mut acc = Jet::constant(&layout, 0.0);
        for (k, (p, q)) in a.iter().zip(b).enumerate() {
            let t = p * q;
            acc = if sig.sign(k) > 0.0 { &acc + &t } else { &acc - &t };
        }
        acc
    };
    let g: Vec<Vec<Jet>> = (0..n).map(|i| (0..n).map(|j| dot(&xi[i], &xi[j])).collect()).collect();
    let ginv = jet_inverse(&g);
    // ⟨x_ij, x_l⟩
    let proj: Vec<Vec<Vec<Jet>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|l| dot(&xij[i][j], &xi[l])).collect())
                .collect()
        })
        .collect();
    let mut hhat: Vec<Jet> = x.iter().map(|c| c.truncate(1)).collect();
    let inv_n = 1.0 / n as f64;
    for i in 0..n {
        for j in 0..n {
            let w = ginv[i][j].scale(inv_n);
            // normal part of x_ij
            let mut nij: Vec<Jet> = xij[i][j].clone();
            for k in 0..n {
                let mut gamma = Jet::constant(&layout, 0.0);
                for l in 0..n {
                    gamma = &gamma + &(&ginv[k][l] * &proj[i][j][l]);
                }
                for a in 0..m {
                    nij[a] = &nij[a] - &(&gamma * &xi[k][a]);
                }
            }
            for a in 0..m {
                hhat[a] = &hhat[a] + &(&w * &nij[a]);
            }
        }
    }
    let value = hhat.iter().map(Jet::value).collect();
    let partials = (0..n)
        .map(|k| {
            let mut alpha = vec![0u8; n];
            alpha[k] = 1;
            hhat.iter().map(|c| c.derivative(&alpha).unwrap()).collect()
        })
        .collect();
    (value, partials)
}

/// `D_{e_k} Ĥ`: the normal (within the sphere) part of `∇̃_{e_k} Ĥ`.
pub fn normal_derivative_hhat(imm: &Immersion, frame: &AdaptedFrame) -> Vec<Vec<f64>> {
    let (_, dh) = mean_curvature_jet(imm, &frame.u);
    normal_part_of_derivatives(imm.signature(), frame, &dh)
}

fn normal_part_of_derivatives(sig: Signature, frame: &AdaptedFrame, chart_partials: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = frame.n();
    (0..n)
        .map(|k| {
            let mut v = vec![0.0; sig.dim()];
            for (l, d) in chart_partials.iter().enumerate() {
                axpy(frame.chart_to_frame[k][l], d, &mut v);
            }
            for i in 0..n {
                let c = frame.sign(i) * sig.dot(&v, &frame.tangents[i]);
                axpy(-c, &frame.tangents[i], &mut v);
            }
            let c = sig.dot(&v, &frame.point);
            axpy(-c, &frame.point, &mut v);
            v
        })
        .collect()
}

/// Everything the Gauss-map formulas consume at one point.
#[derive(Clone, Debug, Serialize)]
pub struct GeometryReport {
    pub u: Vec<f64>,
    pub frame: AdaptedFrame,
    pub h: SecondFundamentalForm,
    pub mean_curvature: Vec<f64>,
    pub hhat: Vec<f64>,
    pub alpha_hat: Option<f64>,
    pub hhat_sq: f64,
    pub h_sq: f64,
    pub scalar_curvature: f64,
    pub gauss_curvature: Option<f64>,
    pub normal_curvature: NormalCurvature,
    pub d_hhat: Vec<Vec<f64>>,
    pub omega: Option<Connection>,
}

impl GeometryReport {
    pub fn n(&self) -> usize {
        self.frame.n()
    }

    pub fn signature(&self) -> Signature {
        self.frame.signature
    }

    /// `max |R^D|`.
    pub fn normal_curvature_max(&self) -> f64 {
        self.normal_curvature
            .iter()
            .flatten()
            .flatten()
            .flatten()
            .fold(0.0, |a: f64, b| a.max(b.abs()))
    }

    pub fn d_hhat_max(&self) -> f64 {
        self.d_hhat.iter().flatten().fold(0.0, |a: f64, b| a.max(b.abs()))
    }

    pub fn hhat_norm_euclid(&self) -> f64 {
        crate::indefinite::norm_euclid(&self.hhat)
    }

    /// `S` from the ambient quantities, `n²⟨H,H⟩ - ‖h‖²`.
    pub fn scalar_curvature_ambient(&self) -> f64 {
        let n = self.n() as f64;
        n * n * self.signature().dot(&self.mean_curvature, &self.mean_curvature) - self.h_sq
    }

    pub fn hhat_character(&self, tol: f64) -> CausalCharacter {
        causal_character_raw(self.signature(), &self.hhat, tol)
    }

    pub fn shape_operator(&self, r: usize) -> Vec<Vec<f64>> {
        shape_operator(&self.frame, &self.h, r)
    }
}

/// Full per-point geometry. The connection forms cost `4n` extra frames and
/// are only computed when `with_connection` is set.
pub fn geometry(imm: &Immersion, u: &[f64], with_connection: bool) -> Result<GeometryReport> {
    let frame = imm.adapted_frame(u)?;
    geometry_with_frame(imm, frame, with_connection)
}

pub fn geometry_with_frame(imm: &Immersion, frame: AdaptedFrame, with_connection: bool) -> Result<GeometryReport> {
    let n = imm.dim();
    let h = second_fundamental_form(imm, &frame);
    let (big_h, hhat, alpha_hat) = mean_curvature(&frame, &h);
    let hhat_sq = squared_norm_h(&frame, &h, true);
    let h_sq = squared_norm_h(&frame, &h, false);
    let s = scalar_curvature(imm.signature(), n, &hhat, hhat_sq);
    let rd = normal_curvature(&frame, &h);
    let d_hhat = normal_derivative_hhat(imm, &frame);
    let omega = if with_connection {
        Some(imm.frame_connection(&frame)?)
    } else {
        None
    };
    let finite = hhat.iter().chain(&big_h).all(|v| v.is_finite()) && s.is_finite();
    if !finite {
        return Err(GeomError::DomainSingularity(frame.u.clone()));
    }
    Ok(GeometryReport {
        u: frame.u.clone(),
        h,
        mean_curvature: big_h,
        hhat,
        alpha_hat,
        hhat_sq,
        h_sq,
        scalar_curvature: s,
        gauss_curvature: (n == 2).then_some(s / 2.0),
        normal_curvature: rd,
        d_hhat,
        omega,
        frame,
    })
}

/// Codazzi consistency `max |h^r_{ij,k} - h^r_{jk,i}|` over all normals
/// including `x`, with covariant derivatives
/// `h^r_{jk,i} = e_i(h^r_jk) - Σ_ℓ ε_ℓ (h^r_ℓk ω_jℓ(e_i) + h^r_ℓj ω_kℓ(e_i)) + Σ_s ε_s h^s_jk ω_sr(e_i)`.
pub fn codazzi_residual(imm: &Immersion, u: &[f64]) -> Result<f64> {
    codazzi_residual_with(imm, u, &|_, _| {})
}

/// As [`codazzi_residual`], with `perturb` applied to `h` at every point it is
/// evaluated (used to check that the diagnostic detects corrupted data).
pub fn codazzi_residual_with(
    imm: &Immersion,
    u: &[f64],
    perturb: &dyn Fn(&[f64], &mut SecondFundamentalForm),
) -> Result<f64> {
    let n = imm.dim();
    let hstep = FRAME_FD_STEP;
    let h_at = |v: &[f64]| -> Result<SecondFundamentalForm> {
        let f = imm.adapted_frame(v)?;
        let mut h = second_fundamental_form(imm, &f);
        perturb(v, &mut h);
        Ok(h)
    };
    let frame = imm.adapted_frame(u)?;
    let omega = imm.frame_connection(&frame)?;
    let h = h_at(u)?;
    let nr = h.len();
    // chart partials ∂_l h^r_jk
    let mut dh = vec![vec![vec![vec![0.0; n]; n]; nr]; n];
    for (l, dl) in dh.iter_mut().enumerate() {
        let shifted = |d: f64| -> Result<SecondFundamentalForm> {
            let mut v = u.to_vec();
            v[l] += d;
            h_at(&v)
        };
        let (p2, p1, m1, m2) = (
            shifted(2.0 * hstep)?,
            shifted(hstep)?,
            shifted(-hstep)?,
            shifted(-2.0 * hstep)?,
        );
        for r in 0..nr {
            for j in 0..n {
                for k in 0..n {
                    dl[r][j][k] = (-p2[r][j][k] + 8.0 * p1[r][j][k] - 8.0 * m1[r][j][k] + m2[r][j][k]) / (12.0 * hstep);
                }
            }
        }
    }
    let c = &frame.chart_to_frame;
    let cov = |r: usize, j: usize, k: usize, i: usize| -> f64 {
        let mut v: f64 = (0..n).map(|l| c[i][l] * dh[l][r][j][k]).sum();
        for ell in 0..n {
            v -= frame.sign(ell) * (h[r][ell][k] * omega.get(j, ell, i) + h[r][ell][j] * omega.get(k, ell, i));
        }
        for s in 0..nr {
            v += frame.normal_sign(s) * h[s][j][k] * omega.get(n + s, n + r, i);
        }
        v
    };
    let mut worst: f64 = 0.0;
    for r in 0..nr {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    worst = worst.max((cov(r, i, j, k) - cov(r, j, k, i)).abs());
                }
            }
        }
    }
    Ok(worst)
}

/// True iff `Ĥ` is null and nonzero at every report.
pub fn marginally_trapped(reports: &[GeometryReport], tol: f64) -> bool {
    !reports.is_empty()
        && reports
            .iter()
            .all(|r| r.hhat_norm_euclid() > tol && r.hhat_character(tol) == CausalCharacter::Null)
}

/// Sample mean and standard deviation.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len().max(1) as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// "Constant over the grid": standard deviation below `tol·(1 + |mean|)`.
pub fn is_constant(values: &[f64], tol: f64) -> bool {
    let (mean, std) = mean_std(values);
    std < tol * (1.0 + mean.abs())
}
