//! Spectral classification of the Gauss map.
//!
//! Verdicts are decided in a fixed cascade: harmonic, then 1-type (through
//! the origin or with a constant component), then biharmonic. The verdict is
//! then checked against the geometric characterizations and downgraded to
//! inconclusive on disagreement.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::curvature::{self, is_constant, GeometryReport};
use crate::error::{GeomError, Result};
use crate::gaussmap::{self, BILAPLACIAN_STEP};
use crate::immersion::Immersion;
use crate::indefinite::{causal_character_raw, norm_euclid, CausalCharacter};
use crate::multivector::{Multivector, MultivectorSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Harmonic,
    OneTypeThroughOrigin,
    OneTypeWithConstant,
    Biharmonic,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Harmonic => "harmonic",
            Verdict::OneTypeThroughOrigin => "one_type_through_origin",
            Verdict::OneTypeWithConstant => "one_type_with_constant",
            Verdict::Biharmonic => "biharmonic",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Result of [`fit_one_type`].
#[derive(Clone, Debug, Serialize)]
pub struct OneTypeFit {
    pub lambda: f64,
    pub c: Multivector,
    pub residual: f64,
}

/// Least-squares fit of `Δν̃_k = λ (ν̃_k - c)` in the Euclidean coefficient norm.
pub fn fit_one_type(samples: &[(Multivector, Multivector)]) -> Result<OneTypeFit> {
    if samples.len() < 3 {
        return Err(GeomError::DegenerateSamples(format!(
            "need at least 3 samples, got {}",
            samples.len()
        )));
    }
    let space = samples[0].0.space().clone();
    let k = samples.len() as f64;
    let mut nu_bar = Multivector::zero(&space);
    let mut lap_bar = Multivector::zero(&space);
    for (nu, lap) in samples {
        nu_bar.add_scaled(1.0 / k, nu);
        lap_bar.add_scaled(1.0 / k, lap);
    }
    let mut num = 0.0;
    let mut den = 0.0;
    let mut lap_sup: f64 = 0.0;
    for (nu, lap) in samples {
        let dn = nu - &nu_bar;
        let dl = lap - &lap_bar;
        num += dl.dot_euclid(&dn);
        den += dn.dot_euclid(&dn);
        lap_sup = lap_sup.max(lap.norm_euclid());
    }
    let nu_scale = samples.iter().map(|s| s.0.norm_euclid()).fold(0.0, f64::max);
    if den <= 1e-24 * k * nu_scale.max(1e-300).powi(2) {
        return Err(GeomError::DegenerateSamples("Gauss map samples are all equal".into()));
    }
    let lambda = num / den;
    if lap_sup == 0.0 {
        return Err(GeomError::DegenerateSamples("Laplacian vanishes identically".into()));
    }
    if lambda.abs() < 1e-8 {
        return Err(GeomError::NoOneTypeFit {
            lambda,
            null_type: true,
        });
    }
    let c = &nu_bar - &lap_bar.scale(1.0 / lambda);
    let residual = samples
        .iter()
        .map(|(nu, lap)| {
            let mut r = lap.clone();
            r.add_scaled(-lambda, &(nu - &c));
            r.norm_euclid()
        })
        .fold(0.0, f64::max);
    Ok(OneTypeFit { lambda, c, residual })
}

/// Constant component and eigenvector part for a totally umbilical hypersurface.
#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub c: Multivector,
    pub nu_p: Multivector,
    pub lambda_p: f64,
}

/// `c = (ν̃ - εα̂ ē)/(1+εα̂²)`, `ν̃_p = εα̂(α̂ ν̃ + ē)/(1+εα̂²)`, `λ_p = n(1+εα̂²)`
/// with `ε = ε_{n+1}`.
pub fn predicted_decomposition(geo: &GeometryReport) -> Result<Decomposition> {
    let frame = &geo.frame;
    let Some(alpha) = geo.alpha_hat else {
        return Err(GeomError::NotHypersurface {
            n: frame.n(),
            m: geo.signature().dim(),
        });
    };
    if alpha.abs() < 1e-9 {
        return Err(GeomError::TotallyGeodesic);
    }
    let eps = frame.normal_sign(0);
    let d = 1.0 + eps * alpha * alpha;
    if d.abs() < 1e-9 {
        return Err(GeomError::FlatUmbilical { value: d });
    }
    let space = MultivectorSpace::new(geo.signature(), frame.n() + 1)?;
    let nu = gaussmap::gauss_map_from_frame(&space, frame);
    let ebar = gaussmap::companion_from_frame(&space, frame);
    let mut c = nu.scale(1.0 / d);
    c.add_scaled(-eps * alpha / d, &ebar);
    let mut nu_p = nu.scale(eps * alpha * alpha / d);
    nu_p.add_scaled(eps * alpha / d, &ebar);
    Ok(Decomposition {
        c,
        nu_p,
        lambda_p: frame.n() as f64 * d,
    })
}

/// Monic `P` with `P(Δ)τ ≈ 0`; coefficients lowest degree first.
#[derive(Clone, Debug, Serialize)]
pub struct AnnihilatingPolynomial {
    pub coefficients: Vec<f64>,
    pub degree: usize,
    pub relative_residual: f64,
    /// Real roots; complex pairs are reported in `complex_roots`.
    pub roots: Vec<f64>,
    pub complex_roots: Vec<(f64, f64)>,
    pub simple_roots: bool,
}

/// Finds the lowest-degree monic polynomial annihilating the samples.
///
/// `stacks[k]` holds `(τ, Δτ, …, Δ^d τ)` at sample `k`, with `d ≥ max_deg`.
/// Degrees `1..=max_deg` are tried in order; the first whose relative
/// least-squares residual is below `tol` wins.
pub fn annihilating_polynomial(
    stacks: &[Vec<Multivector>],
    max_deg: usize,
    tol: f64,
) -> Result<AnnihilatingPolynomial> {
    if stacks.len() < max_deg + 1 {
        return Err(GeomError::DegenerateSamples(format!(
            "need at least {} samples for degree {max_deg}",
            max_deg + 1
        )));
    }
    if stacks.iter().any(|s| s.len() < max_deg + 1) {
        return Err(GeomError::DegenerateSamples(
            "sample stacks shorter than max_deg + 1".into(),
        ));
    }
    let tau_sup = stacks.iter().map(|s| s[0].norm_euclid()).fold(0.0, f64::max);
    if tau_sup < 1e-12 {
        return Err(GeomError::DegenerateSamples(
            "tension field vanishes (harmonic map)".into(),
        ));
    }
    let rows: usize = stacks.iter().map(|s| s[0].coeffs().len()).sum();
    let mut best = None;
    for d in 1..=max_deg {
        let a = DMatrix::from_fn(rows, d, |row, col| column_entry(stacks, col, row));
        let b = DVector::from_fn(rows, |row, _| -column_entry(stacks, d, row));
        let bnorm = b.norm().max(1e-300);
        let scale = (0..=d)
            .map(|k| DVector::from_fn(rows, |row, _| column_entry(stacks, k, row)).norm())
            .fold(0.0, f64::max);
        let svd = a.clone().svd(true, true);
        let sol = svd
            .solve(&b, 1e-12 * scale.max(1e-300))
            .map_err(|e| GeomError::DegenerateSamples(e.to_string()))?;
        let rel = (&a * &sol - &b).norm() / scale.max(bnorm);
        let mut coefficients: Vec<f64> = sol.iter().copied().collect();
        coefficients.push(1.0);
        let accept = rel < tol;
        if accept || d == max_deg {
            best = Some((coefficients, d, rel));
        }
        if accept {
            break;
        }
    }
    let (coefficients, degree, relative_residual) = best.expect("max_deg ≥ 1");
    let (roots, complex_roots) = poly_roots(&coefficients);
    let mut all: Vec<f64> = roots.clone();
    all.sort_by(f64::total_cmp);
    let simple_roots =
        complex_roots.is_empty() && all.windows(2).all(|w| (w[1] - w[0]).abs() > 1e-6 * (1.0 + w[0].abs()));
    Ok(AnnihilatingPolynomial {
        coefficients,
        degree,
        relative_residual,
        roots,
        complex_roots,
        simple_roots,
    })
}

fn column_entry(stacks: &[Vec<Multivector>], power: usize, mut row: usize) -> f64 {
    for s in stacks {
        let len = s[power].coeffs().len();
        if row < len {
            return s[power].coeffs()[row];
        }
        row -= len;
    }
    unreachable!("row within stacked length")
}

fn poly_roots(c: &[f64]) -> (Vec<f64>, Vec<(f64, f64)>) {
    match c.len() - 1 {
        1 => (vec![-c[0]], vec![]),
        2 => {
            let (b, q) = (c[1], c[0]);
            let disc = b * b - 4.0 * q;
            if disc >= 0.0 {
                let s = disc.sqrt();
                (vec![(-b - s) / 2.0, (-b + s) / 2.0], vec![])
            } else {
                let im = (-disc).sqrt() / 2.0;
                (vec![], vec![(-b / 2.0, -im), (-b / 2.0, im)])
            }
        }
        _ => {
            // companion matrix eigenvalues
            let d = c.len() - 1;
            let mut m = DMatrix::zeros(d, d);
            for i in 1..d {
                m[(i, i - 1)] = 1.0;
            }
            for i in 0..d {
                m[(i, d - 1)] = -c[i];
            }
            let ev = m.complex_eigenvalues();
            let mut re = Vec::new();
            let mut cx = Vec::new();
            for z in ev.iter() {
                if z.im.abs() < 1e-12 {
                    re.push(z.re);
                } else {
                    cx.push((z.re, z.im));
                }
            }
            (re, cx)
        }
    }
}

/// Geometric side of the constant-component characterization.
#[derive(Clone, Debug, Serialize)]
pub struct UmbilicalCriterion {
    pub holds: bool,
    pub parallel_mean_curvature: bool,
    pub first_normal_rank_one: bool,
    pub totally_umbilical: bool,
    pub non_flat: bool,
    pub diagnostics: Vec<String>,
}

/// Checks parallel `Ĥ`, first normal space of rank one, total umbilicity
/// `ĥ(e_i,e_j) = ε_i δ_ij Ĥ` and `1 + ⟨Ĥ,Ĥ⟩ ≠ 0` at every report.
/// Zero mean curvature gives `holds = false`; a null nonzero `Ĥ` is an error.
pub fn umbilical_criterion(reports: &[GeometryReport], tol: f64) -> Result<UmbilicalCriterion> {
    let mut diagnostics = Vec::new();
    if reports.iter().all(|r| r.hhat_norm_euclid() < tol) {
        diagnostics.push("mean curvature vector vanishes".into());
        return Ok(UmbilicalCriterion {
            holds: false,
            parallel_mean_curvature: true,
            first_normal_rank_one: false,
            totally_umbilical: false,
            non_flat: false,
            diagnostics,
        });
    }
    for r in reports {
        if r.hhat_norm_euclid() >= tol && r.hhat_character(tol) == CausalCharacter::Null {
            return Err(GeomError::NullMeanCurvature);
        }
    }
    let mut parallel = true;
    let mut rank_one = true;
    let mut umbilical = true;
    let mut non_flat = true;
    for r in reports {
        let sig = r.signature();
        let frame = &r.frame;
        let n = frame.n();
        if r.d_hhat_max() > tol {
            parallel = false;
        }
        let q = sig.dot(&r.hhat, &r.hhat);
        if (1.0 + q).abs() < tol {
            non_flat = false;
        }
        let unit: Vec<f64> = r.hhat.iter().map(|v| v / q.abs().sqrt()).collect();
        let eps_xi = q.signum();
        for i in 0..n {
            for j in 0..n {
                // ĥ(e_i, e_j) = Σ_r ε_r h^r_ij e_r over sphere normals
                let mut v = vec![0.0; sig.dim()];
                for k in 0..frame.normals.len() {
                    crate::indefinite::axpy(frame.normal_sign(k) * r.h[k][i][j], frame.normal(k), &mut v);
                }
                let along = eps_xi * sig.dot(&v, &unit);
                let off: Vec<f64> = v.iter().zip(&unit).map(|(a, b)| a - along * b).collect();
                if norm_euclid(&off) > tol {
                    rank_one = false;
                }
                let target = if i == j { frame.sign(i) } else { 0.0 };
                let dev: Vec<f64> = v.iter().zip(&r.hhat).map(|(a, b)| a - target * b).collect();
                if norm_euclid(&dev) > tol {
                    umbilical = false;
                }
            }
        }
    }
    for (ok, what) in [
        (parallel, "mean curvature vector is not parallel"),
        (rank_one, "first normal space has rank above one"),
        (umbilical, "not totally umbilical"),
        (non_flat, "1 + <H,H> vanishes (flat case)"),
    ] {
        if !ok {
            diagnostics.push(what.into());
        }
    }
    Ok(UmbilicalCriterion {
        holds: parallel && rank_one && umbilical && non_flat,
        parallel_mean_curvature: parallel,
        first_normal_rank_one: rank_one,
        totally_umbilical: umbilical,
        non_flat,
        diagnostics,
    })
}

/// Thresholds and steps used by [`classify`].
#[derive(Clone, Debug, Serialize)]
pub struct ClassifyConfig {
    pub tol_analytic: f64,
    pub tol_biharmonic: f64,
    pub bilaplacian_step: f64,
    pub held_out: usize,
    pub margin: f64,
    pub seed: u64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            tol_analytic: 1e-6,
            tol_biharmonic: 1e-3,
            bilaplacian_step: BILAPLACIAN_STEP,
            held_out: 5,
            margin: 0.1,
            seed: 20_240_601,
        }
    }
}

/// Per-point data shared by classification and the report.
#[derive(Clone, Debug)]
pub struct PointSample {
    pub geo: GeometryReport,
    pub nu: Multivector,
    pub laplacian: Multivector,
}

pub fn sample_point(imm: &Immersion, u: &[f64]) -> Result<PointSample> {
    let geo = curvature::geometry(imm, u, false)?;
    let space = gaussmap::gauss_space(imm);
    let nu = gaussmap::gauss_map_from_frame(&space, &geo.frame);
    let laplacian = gaussmap::laplacian_formula(&geo);
    Ok(PointSample { geo, nu, laplacian })
}

/// Samples every grid point in parallel; order follows the grid.
pub fn collect_samples(imm: &Immersion, grid: &[Vec<f64>]) -> Result<Vec<PointSample>> {
    grid.par_iter().map(|u| sample_point(imm, u)).collect()
}

/// Geometric predicates evaluated over a sample set.
#[derive(Clone, Debug, Serialize)]
pub struct GeometricCriteria {
    pub hhat_sup: f64,
    pub scalar_curvature_mean: f64,
    pub scalar_curvature_std: f64,
    pub normal_curvature_sup: f64,
    /// `Ĥ = 0 ∧ S constant ∧ R^D = 0`.
    pub minimal_const_s_flat_normal: bool,
    /// The above with `S ≠ n(n-1)`, i.e. eigenvalue `‖ĥ‖² ≠ 0`.
    pub one_type_through_origin: bool,
    /// `Ĥ = 0 ∧ R^D = 0 ∧ S = n(n-1)`.
    pub harmonic: bool,
}

pub fn geometric_criteria(samples: &[PointSample], tol: f64) -> GeometricCriteria {
    let n = samples.first().map(|s| s.geo.n()).unwrap_or(1) as f64;
    let hhat_sup = samples.iter().map(|s| s.geo.hhat_norm_euclid()).fold(0.0, f64::max);
    let svals: Vec<f64> = samples.iter().map(|s| s.geo.scalar_curvature).collect();
    let (s_mean, s_std) = curvature::mean_std(&svals);
    let rd_sup = samples.iter().map(|s| s.geo.normal_curvature_max()).fold(0.0, f64::max);
    let base = hhat_sup < tol && is_constant(&svals, tol) && rd_sup < tol;
    let target = n * (n - 1.0);
    let s_is_target = (s_mean - target).abs() < tol * (1.0 + target);
    GeometricCriteria {
        hhat_sup,
        scalar_curvature_mean: s_mean,
        scalar_curvature_std: s_std,
        normal_curvature_sup: rd_sup,
        minimal_const_s_flat_normal: base,
        one_type_through_origin: base && !s_is_target,
        harmonic: base && s_is_target,
    }
}

/// Classification outcome.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralFit {
    pub verdict: Verdict,
    /// Verdict of the cascade before geometric cross-checks.
    pub raw_verdict: Verdict,
    pub lambda_p: Option<f64>,
    pub c: Option<Multivector>,
    /// The non-constant part is always `ν̃ - c`.
    pub nu_p: Option<String>,
    pub residual: f64,
    pub held_out_residual: Option<f64>,
    pub samples_used: usize,
    pub gauss_sup: f64,
    pub laplacian_sup: f64,
    pub bilaplacian_sup: Option<f64>,
    pub fit_error: Option<String>,
    pub criteria: GeometricCriteria,
    pub umbilical: Option<UmbilicalCriterion>,
    pub diagnostics: Vec<String>,
}

pub fn classify(imm: &Immersion, grid: &[Vec<f64>], cfg: &ClassifyConfig) -> Result<SpectralFit> {
    let samples = collect_samples(imm, grid)?;
    classify_samples(imm, &samples, cfg)
}

/// The decision cascade over precomputed samples.
pub fn classify_samples(imm: &Immersion, samples: &[PointSample], cfg: &ClassifyConfig) -> Result<SpectralFit> {
    let tol = cfg.tol_analytic;
    let gauss_sup = samples.iter().map(|s| s.nu.norm_euclid()).fold(0.0, f64::max);
    let laplacian_sup = samples.iter().map(|s| s.laplacian.norm_euclid()).fold(0.0, f64::max);
    let criteria = geometric_criteria(samples, tol);
    let mut diagnostics = Vec::new();
    let mut out = SpectralFit {
        verdict: Verdict::Inconclusive,
        raw_verdict: Verdict::Inconclusive,
        lambda_p: None,
        c: None,
        nu_p: None,
        residual: laplacian_sup,
        held_out_residual: None,
        samples_used: samples.len(),
        gauss_sup,
        laplacian_sup,
        bilaplacian_sup: None,
        fit_error: None,
        criteria,
        umbilical: None,
        diagnostics: Vec::new(),
    };

    let mut verdict = None;
    if laplacian_sup < tol * (1.0 + gauss_sup) {
        verdict = Some(Verdict::Harmonic);
    } else {
        let pairs: Vec<(Multivector, Multivector)> =
            samples.iter().map(|s| (s.nu.clone(), s.laplacian.clone())).collect();
        match fit_one_type(&pairs) {
            Ok(fit) => {
                out.residual = fit.residual;
                let threshold = tol * (1.0 + laplacian_sup);
                if fit.residual < threshold {
                    let held = held_out_residual(imm, &fit, cfg)?;
                    out.held_out_residual = Some(held);
                    let held_threshold = (2.0 * fit.residual).max(1e-3 * threshold);
                    if held < held_threshold {
                        let constant = fit.c.norm_euclid() > 1e-6 * (1.0 + gauss_sup);
                        verdict = Some(if constant {
                            Verdict::OneTypeWithConstant
                        } else {
                            Verdict::OneTypeThroughOrigin
                        });
                        out.lambda_p = Some(fit.lambda);
                        out.nu_p = Some("nu - c".into());
                        out.c = Some(fit.c);
                    } else {
                        diagnostics.push(format!(
                            "1-type fit failed on held-out points: {held:.3e} vs threshold {held_threshold:.3e}"
                        ));
                    }
                }
            }
            Err(e) => out.fit_error = Some(e.to_string()),
        }
    }
    if verdict.is_none() {
        let bil: Vec<f64> = samples
            .par_iter()
            .map(|s| gaussmap::bilaplacian(imm, &s.geo.u, cfg.bilaplacian_step).map(|b| b.norm_euclid()))
            .collect::<Result<_>>()?;
        let sup = bil.into_iter().fold(0.0, f64::max);
        out.bilaplacian_sup = Some(sup);
        if sup < cfg.tol_biharmonic * (1.0 + laplacian_sup) {
            verdict = Some(Verdict::Biharmonic);
        }
    }
    let raw = verdict.unwrap_or(Verdict::Inconclusive);
    out.raw_verdict = raw;

    // cross-checks against the geometric characterizations
    let mut ok = true;
    let crit = &out.criteria;
    if (raw == Verdict::OneTypeThroughOrigin) != crit.one_type_through_origin {
        ok = false;
        diagnostics.push(format!(
            "1-type-through-origin verdict ({}) disagrees with geometric criterion ({})",
            raw == Verdict::OneTypeThroughOrigin,
            crit.one_type_through_origin
        ));
    }
    if (raw == Verdict::Harmonic) != crit.harmonic {
        ok = false;
        diagnostics.push(format!(
            "harmonic verdict ({}) disagrees with minimal/flat-normal/S = n(n-1) criterion ({})",
            raw == Verdict::Harmonic,
            crit.harmonic
        ));
    }
    let reports: Vec<GeometryReport> = samples.iter().map(|s| s.geo.clone()).collect();
    match umbilical_criterion(&reports, 1e-6) {
        Ok(t) => {
            if (raw == Verdict::OneTypeWithConstant) != t.holds {
                ok = false;
                diagnostics.push(format!(
                    "constant-component verdict ({}) disagrees with umbilical criterion ({})",
                    raw == Verdict::OneTypeWithConstant,
                    t.holds
                ));
            }
            out.umbilical = Some(t);
        }
        Err(GeomError::NullMeanCurvature) => {
            diagnostics.push("mean curvature vector is null: umbilical criterion not applicable".into());
        }
        Err(e) => return Err(e),
    }
    out.verdict = if ok { raw } else { Verdict::Inconclusive };
    out.diagnostics = diagnostics;
    Ok(out)
}

fn held_out_residual(imm: &Immersion, fit: &OneTypeFit, cfg: &ClassifyConfig) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let seed = rng.random::<u64>();
    let points = imm.random_points(cfg.held_out, cfg.margin, seed);
    let res: Vec<f64> = points
        .par_iter()
        .map(|u| {
            let s = sample_point(imm, u)?;
            let mut r = s.laplacian.clone();
            r.add_scaled(-fit.lambda, &(&s.nu - &fit.c));
            Ok(r.norm_euclid())
        })
        .collect::<Result<_>>()?;
    Ok(res.into_iter().fold(0.0, f64::max))
}

/// Whether `Ĥ` is null and nonzero at the sample.
pub fn hhat_is_null(geo: &GeometryReport, tol: f64) -> bool {
    geo.hhat_norm_euclid() > tol && causal_character_raw(geo.signature(), &geo.hhat, tol) == CausalCharacter::Null
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indefinite::Signature;

    fn random_mv(space: &std::sync::Arc<MultivectorSpace>, rng: &mut ChaCha8Rng) -> Multivector {
        Multivector::from_coeffs(space, (0..space.dim()).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap()
    }

    #[test]
    fn synthetic_fit_is_exact() {
        let space = MultivectorSpace::new(Signature::new(5, 1).unwrap(), 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let c = random_mv(&space, &mut rng);
        let lambda = 3.7;
        let samples: Vec<_> = (0..10)
            .map(|_| {
                let nu = random_mv(&space, &mut rng);
                let lap = (&nu - &c).scale(lambda);
                (nu, lap)
            })
            .collect();
        let fit = fit_one_type(&samples).unwrap();
        assert!((fit.lambda - lambda).abs() < 1e-12);
        assert!(fit.c.dist_euclid(&c) < 1e-12);
        assert!(fit.residual < 1e-10);
    }

    #[test]
    fn null_eigenvalue_is_reported() {
        let space = MultivectorSpace::new(Signature::new(4, 0).unwrap(), 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let lap = random_mv(&space, &mut rng);
        let samples: Vec<_> = (0..5).map(|_| (random_mv(&space, &mut rng), lap.clone())).collect();
        assert!(matches!(
            fit_one_type(&samples),
            Err(GeomError::NoOneTypeFit { null_type: true, .. })
        ));
    }

    #[test]
    fn too_few_samples() {
        let space = MultivectorSpace::new(Signature::new(4, 0).unwrap(), 2).unwrap();
        let z = Multivector::zero(&space);
        assert!(matches!(
            fit_one_type(&[(z.clone(), z.clone())]),
            Err(GeomError::DegenerateSamples(_))
        ));
    }

    #[test]
    fn polynomial_of_one_type_and_two_type() {
        let space = MultivectorSpace::new(Signature::new(5, 1).unwrap(), 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // one eigencomponent
        let one: Vec<Vec<Multivector>> = (0..4)
            .map(|_| {
                let t = random_mv(&space, &mut rng);
                vec![t.clone(), t.scale(2.0), t.scale(4.0)]
            })
            .collect();
        let p = annihilating_polynomial(&one, 2, 1e-9).unwrap();
        assert_eq!(p.degree, 1);
        assert!((p.roots[0] - 2.0).abs() < 1e-10);
        // two eigencomponents with eigenvalues 1 and 3
        let two: Vec<Vec<Multivector>> = (0..4)
            .map(|_| {
                let a = random_mv(&space, &mut rng);
                let b = random_mv(&space, &mut rng);
                let pw = |k: i32| {
                    let mut s = a.clone();
                    s.add_scaled(3f64.powi(k), &b);
                    s
                };
                vec![pw(0), pw(1), pw(2)]
            })
            .collect();
        let p = annihilating_polynomial(&two, 2, 1e-9).unwrap();
        assert_eq!(p.degree, 2);
        let mut r = p.roots.clone();
        r.sort_by(f64::total_cmp);
        assert!((r[0] - 1.0).abs() < 1e-8 && (r[1] - 3.0).abs() < 1e-8);
        assert!(p.simple_roots);
    }
}
