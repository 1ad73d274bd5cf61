//! Verification runs and their JSON reports.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{self, CatalogEntry, Claim, Expectation, Provenance};
use crate::chart::ChartFile;
use crate::curvature::{self, GeometryReport};
use crate::error::{GeomError, Result};
use crate::gaussmap::{self, LB_STEP};
use crate::immersion::Immersion;
use crate::indefinite::causal_character_raw;
use crate::multivector::{mv_inner, Multivector};
use crate::spectral::{self, ClassifyConfig, PointSample, SpectralFit, Verdict};

pub const SCHEMA_VERSION: u32 = 1;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exact-geometry identities (curvatures, shape operators) are checked to this.
pub const GEOMETRY_TOL: f64 = 1e-8;
pub const SPHERE_TOL: f64 = 1e-10;
pub const FRAME_TOL: f64 = 1e-12;
pub const CODAZZI_TOL: f64 = 1e-6;
/// Threshold on the first-derivative formula is this fraction of `tol_fd`.
pub const DIF1_FRACTION: f64 = 0.1;
/// Constancy and matching of constant components.
pub const CONSTANT_TOL: f64 = 1e-6;
pub const DECOMPOSITION_TOL: f64 = 1e-5;

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub surface: String,
    /// Dimension selector for families with several sizes.
    pub n: Option<usize>,
    pub grid: Option<Vec<usize>>,
    pub margin: f64,
    pub tol_analytic: f64,
    pub tol_fd: f64,
    pub tol_biharmonic: f64,
    pub fd_step: f64,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let c = ClassifyConfig::default();
        RunConfig {
            surface: String::new(),
            n: None,
            grid: None,
            margin: c.margin,
            tol_analytic: c.tol_analytic,
            tol_fd: 1e-4,
            tol_biharmonic: c.tol_biharmonic,
            fd_step: LB_STEP,
            seed: c.seed,
        }
    }
}

impl RunConfig {
    pub fn for_surface(name: &str) -> Self {
        RunConfig {
            surface: name.to_string(),
            ..RunConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(GeomError::InvalidParameter(m));
        if let Some(g) = &self.grid {
            if g.iter().any(|&c| c < 3) {
                return bad(format!("grid needs at least 3 points per axis, got {g:?}"));
            }
        }
        for (name, v) in [
            ("tol-analytic", self.tol_analytic),
            ("tol-fd", self.tol_fd),
            ("tol-biharmonic", self.tol_biharmonic),
            ("fd-step", self.fd_step),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        if !(0.0..0.5).contains(&self.margin) {
            return bad(format!("margin must lie in [0, 0.5), got {}", self.margin));
        }
        Ok(())
    }

    fn classify_config(&self) -> ClassifyConfig {
        ClassifyConfig {
            tol_analytic: self.tol_analytic,
            tol_biharmonic: self.tol_biharmonic,
            margin: self.margin,
            seed: self.seed,
            ..ClassifyConfig::default()
        }
    }
}

/// A catalog entry by name, or a chart file by path.
pub fn resolve_surface(cfg: &RunConfig) -> Result<(CatalogEntry, &'static str)> {
    let name = cfg.surface.as_str();
    if let Some(n) = cfg.n {
        if name == "horosphere" || name.starts_with("horosphere_") {
            return Ok((catalog::default_horosphere(n)?, "catalog"));
        }
    }
    match catalog::get(name) {
        Ok(e) => {
            if let Some(n) = cfg.n {
                if n != e.n() {
                    return Err(GeomError::InvalidParameter(format!(
                        "'{name}' has n = {}, not {n}",
                        e.n()
                    )));
                }
            }
            Ok((e, "catalog"))
        }
        Err(err) => {
            let path = Path::new(name);
            if !path.exists() {
                return Err(err);
            }
            let text = std::fs::read_to_string(path)?;
            let cf = ChartFile::parse(&text)?;
            let mut entry = CatalogEntry::from_immersion(Immersion::from_chart_file(&cf)?);
            entry.description = format!("chart file {name}");
            Ok((entry, "file"))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: Value,
    /// `"<"`, `">"` or `"=="` between `measured` and `threshold`.
    pub relation: &'static str,
    pub threshold: Value,
    pub source: Option<Provenance>,
}

fn below(name: impl Into<String>, measured: f64, threshold: f64, source: Option<Provenance>) -> Check {
    Check {
        name: name.into(),
        passed: measured < threshold,
        measured: json!(measured),
        relation: "<",
        threshold: json!(threshold),
        source,
    }
}

fn above(name: impl Into<String>, measured: f64, threshold: f64, source: Option<Provenance>) -> Check {
    Check {
        name: name.into(),
        passed: measured > threshold,
        measured: json!(measured),
        relation: ">",
        threshold: json!(threshold),
        source,
    }
}

fn equals(name: impl Into<String>, measured: Value, expected: Value, source: Option<Provenance>) -> Check {
    Check {
        name: name.into(),
        passed: measured == expected,
        measured,
        relation: "==",
        threshold: expected,
        source,
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Stats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

impl Stats {
    fn of(values: impl IntoIterator<Item = f64>) -> Option<Stats> {
        let v: Vec<f64> = values.into_iter().collect();
        if v.is_empty() {
            return None;
        }
        Some(Stats {
            min: v.iter().copied().fold(f64::INFINITY, f64::min),
            max: v.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            mean: v.iter().sum::<f64>() / v.len() as f64,
        })
    }
}

/// Per-point data beyond the spectral sample.
#[derive(Clone, Debug)]
pub struct PointEval {
    pub sample: PointSample,
    pub laplacian_numeric: Multivector,
    pub route_error: f64,
    pub derivative_error: f64,
    pub codazzi: f64,
    pub sphere_defect: f64,
    pub frame_defect: f64,
    pub gauss_norm_defect: f64,
    pub index: usize,
}

fn metric_index(g: &[Vec<f64>]) -> usize {
    let n = g.len();
    nalgebra::DMatrix::from_fn(n, n, |i, j| g[i][j])
        .symmetric_eigenvalues()
        .iter()
        .filter(|v| **v < 0.0)
        .count()
}

pub fn evaluate_point(imm: &Immersion, u: &[f64], fd_step: f64) -> Result<PointEval> {
    let sample = spectral::sample_point(imm, u)?;
    let geo = &sample.geo;
    let laplacian_numeric = gaussmap::laplace_beltrami_numeric(imm, &gaussmap::gauss_field(imm), u, fd_step)?;
    let route_error = laplacian_numeric.dist_euclid(&sample.laplacian);
    let mut derivative_error: f64 = 0.0;
    for i in 0..imm.dim() {
        let a = gaussmap::gauss_map_derivative(geo, i);
        let b = gaussmap::gauss_map_derivative_fd(imm, &geo.frame, i, fd_step)?;
        derivative_error = derivative_error.max(a.dist_euclid(&b));
    }
    let codazzi = curvature::codazzi_residual(imm, u)?;
    let p = &geo.frame.point;
    let sphere_defect = (imm.signature().dot(p, p) - 1.0).abs();
    let frame_defect = geo.frame.orthonormality_defect().max(geo.frame.completeness_defect());
    let gauss_norm_defect = (mv_inner(&sample.nu, &sample.nu)?.abs() - 1.0).abs();
    let index = metric_index(&geo.frame.metric);
    Ok(PointEval {
        sample,
        laplacian_numeric,
        route_error,
        derivative_error,
        codazzi,
        sphere_defect,
        frame_defect,
        gauss_norm_defect,
        index,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceInfo {
    pub name: String,
    pub description: String,
    pub source: &'static str,
    pub n: usize,
    pub index: usize,
    pub ambient: AmbientInfo,
    pub domain: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AmbientInfo {
    pub m: usize,
    pub s: usize,
}

/// Header for every serialized multivector: coefficients of `Λ^grade E^m_s`
/// in lexicographic order of index subsets.
#[derive(Clone, Debug, Serialize)]
pub struct MultivectorHeader {
    pub m: usize,
    pub s: usize,
    pub grade: usize,
    pub dim: usize,
    pub basis: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub surface: SurfaceInfo,
    pub config: RunConfig,
    pub grid: Vec<usize>,
    pub conventions: Value,
    pub multivectors: MultivectorHeader,
    pub samples: usize,
    pub summaries: BTreeMap<&'static str, Stats>,
    pub fit: SpectralFit,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl Report {
    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

pub fn conventions() -> Value {
    json!({
        "ambient": "E^m_s with the last s coordinates timelike",
        "frame": "e_1..e_n from Gram-Schmidt of the chart partials, then sphere normals, then x",
        "orientation": "tangents follow the chart; a normal without a hint is chosen so det[e_1..e_{m-1}, x] > 0",
        "gauss_map": "x ^ e_1 ^ ... ^ e_n",
        "laplacian": "positive: sum_i eps_i (nabla_{e_i} e_i - e_i e_i)",
        "second_fundamental_form": "h^r_ij = <D_{e_i} e_j, e_r>",
        "mean_curvature": "H = (1/n) sum_r eps_r tr(A_r) e_r, hat H = H + x",
        "fit_norm": "euclidean coefficient norm",
    })
}

/// Runs the full pipeline on one surface.
pub fn run_verify(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let (entry, source) = resolve_surface(cfg)?;
    verify_entry(&entry, source, cfg)
}

pub fn verify_entry(entry: &CatalogEntry, source: &'static str, cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let imm = &entry.immersion;
    let grid_counts = cfg.grid.clone().unwrap_or_else(|| entry.grid.clone());
    if grid_counts.len() != imm.dim() {
        return Err(GeomError::InvalidParameter(format!(
            "grid has {} axes, '{}' has {} parameters",
            grid_counts.len(),
            entry.name,
            imm.dim()
        )));
    }
    let grid = imm.sample_grid(&grid_counts, cfg.margin)?;
    let evals: Vec<PointEval> = grid
        .par_iter()
        .map(|u| evaluate_point(imm, u, cfg.fd_step))
        .collect::<Result<_>>()?;
    let samples: Vec<PointSample> = evals.iter().map(|e| e.sample.clone()).collect();
    let ccfg = cfg.classify_config();
    let fit = spectral::classify_samples(imm, &samples, &ccfg)?;

    let sup = |f: &dyn Fn(&PointEval) -> f64| evals.iter().map(f).fold(0.0, f64::max);
    let mut checks = vec![
        below(
            "sphere_constraint",
            sup(&|e| e.sphere_defect),
            SPHERE_TOL,
            Some(Provenance::Trivial),
        ),
        equals(
            "declared_index",
            json!(evals.iter().filter(|e| e.index != imm.index()).count()),
            json!(0),
            Some(Provenance::Trivial),
        ),
        below("frame_orthonormality", sup(&|e| e.frame_defect), FRAME_TOL, None),
        below(
            "gauss_map_unit",
            sup(&|e| e.gauss_norm_defect),
            SPHERE_TOL,
            Some(Provenance::Trivial),
        ),
        below("codazzi", sup(&|e| e.codazzi), CODAZZI_TOL, None),
        below("route_equivalence", sup(&|e| e.route_error), cfg.tol_fd, None),
        below(
            "derivative_formula",
            sup(&|e| e.derivative_error),
            DIF1_FRACTION * cfg.tol_fd,
            None,
        ),
    ];
    let ctx = Ctx {
        imm,
        entry,
        evals: &evals,
        fit: &fit,
        cfg,
    };
    for exp in &entry.expected {
        checks.extend(ctx.evaluate(exp)?);
    }
    let passed = checks.iter().all(|c| c.passed);

    let n = imm.dim();
    let geos = || evals.iter().map(|e| &e.sample.geo);
    let mut summaries = BTreeMap::new();
    let mut put = |k: &'static str, s: Option<Stats>| {
        if let Some(s) = s {
            summaries.insert(k, s);
        }
    };
    let sig = imm.signature();
    put("scalar_curvature", Stats::of(geos().map(|g| g.scalar_curvature)));
    put("sectional_curvature", Stats::of(geos().map(|g| sectional(g, n))));
    put("hhat_norm_euclid", Stats::of(geos().map(|g| g.hhat_norm_euclid())));
    put("hhat_inner", Stats::of(geos().map(|g| sig.dot(&g.hhat, &g.hhat))));
    put("hhat_sq", Stats::of(geos().map(|g| g.hhat_sq)));
    put("h_sq", Stats::of(geos().map(|g| g.h_sq)));
    put(
        "normal_curvature_max",
        Stats::of(geos().map(|g| g.normal_curvature_max())),
    );
    put("d_hhat_max", Stats::of(geos().map(|g| g.d_hhat_max())));
    put("alpha_hat", Stats::of(geos().filter_map(|g| g.alpha_hat)));
    put(
        "laplacian_norm",
        Stats::of(evals.iter().map(|e| e.sample.laplacian.norm_euclid())),
    );
    put("route_error", Stats::of(evals.iter().map(|e| e.route_error)));
    put("codazzi", Stats::of(evals.iter().map(|e| e.codazzi)));

    Ok(Report {
        schema_version: SCHEMA_VERSION,
        tool: "pseudogauss",
        version: VERSION,
        surface: SurfaceInfo {
            name: entry.name.clone(),
            description: entry.description.clone(),
            source,
            n,
            index: imm.index(),
            ambient: AmbientInfo {
                m: sig.dim(),
                s: sig.index(),
            },
            domain: imm.domain().to_vec(),
        },
        config: cfg.clone(),
        grid: grid_counts,
        conventions: conventions(),
        multivectors: MultivectorHeader {
            m: sig.dim(),
            s: sig.index(),
            grade: n + 1,
            dim: gaussmap::gauss_space(imm).dim(),
            basis: "lex_subsets",
        },
        samples: grid.len(),
        summaries,
        fit,
        checks,
        passed,
    })
}

fn sectional(g: &GeometryReport, n: usize) -> f64 {
    let nf = n as f64;
    g.scalar_curvature / (nf * (nf - 1.0))
}

struct Ctx<'a> {
    imm: &'a Immersion,
    entry: &'a CatalogEntry,
    evals: &'a [PointEval],
    fit: &'a SpectralFit,
    cfg: &'a RunConfig,
}

impl Ctx<'_> {
    fn geos(&self) -> impl Iterator<Item = &GeometryReport> {
        self.evals.iter().map(|e| &e.sample.geo)
    }

    fn sup(&self, f: impl Fn(&GeometryReport) -> f64) -> f64 {
        self.geos()
            .map(f)
            .fold(0.0, |a, b| if b.is_nan() { f64::NAN } else { a.max(b) })
    }

    fn evaluate(&self, exp: &Expectation) -> Result<Vec<Check>> {
        let src = Some(exp.source);
        let n = self.imm.dim();
        let nf = n as f64;
        let fit = self.fit;
        let c = match &exp.claim {
            Claim::Verdict { verdict } => equals("verdict", json!(fit.verdict), json!(verdict), src),
            Claim::Eigenvalue { value, tol } => {
                let d = fit.lambda_p.map_or(f64::INFINITY, |l| (l - value).abs());
                let mut c = below("eigenvalue", d, *tol, src);
                c.measured = json!(fit.lambda_p);
                c.threshold = json!({ "value": value, "tol": tol });
                c.relation = "abs_diff_below";
                c
            }
            Claim::EigenvalueFromMeanCurvature { tol } => {
                let d = match fit.lambda_p {
                    Some(l) => self.sup(|g| {
                        let eps = g.frame.normal_sign(0);
                        let a = g.alpha_hat.unwrap_or(f64::NAN);
                        (l - nf * (1.0 + eps * a * a)).abs()
                    }),
                    None => f64::INFINITY,
                };
                below("eigenvalue_from_mean_curvature", d, *tol, src)
            }
            Claim::ConstantComponentZero => {
                let v = fit.c.as_ref().map_or(f64::INFINITY, |c| c.norm_euclid());
                below("constant_component_zero", v, CONSTANT_TOL, src)
            }
            Claim::MeanCurvatureZero => below(
                "mean_curvature_zero",
                self.sup(|g| g.hhat_norm_euclid()),
                GEOMETRY_TOL,
                src,
            ),
            Claim::MeanCurvatureCharacter { character } => {
                let bad = self
                    .geos()
                    .filter(|g| causal_character_raw(g.signature(), &g.hhat, GEOMETRY_TOL) != *character)
                    .count();
                let mut c = equals("mean_curvature_character", json!(bad), json!(0), src);
                c.threshold = json!({ "mismatched_points": 0, "character": character });
                c.passed = bad == 0;
                c
            }
            Claim::MeanCurvatureParallel => below(
                "mean_curvature_parallel",
                self.sup(|g| g.d_hhat_max()),
                GEOMETRY_TOL,
                src,
            ),
            Claim::ConstantCurvature { value } => below(
                "constant_curvature",
                self.sup(|g| (sectional(g, n) - value).abs()),
                GEOMETRY_TOL,
                src,
            ),
            Claim::NormalCurvatureZero => below(
                "normal_curvature_zero",
                self.sup(|g| g.normal_curvature_max()),
                GEOMETRY_TOL,
                src,
            ),
            Claim::ScalarCurvature { value } => below(
                "scalar_curvature",
                self.sup(|g| (g.scalar_curvature - value).abs()),
                GEOMETRY_TOL,
                src,
            ),
            Claim::SquaredNormH { value } => below(
                "squared_norm_h",
                self.sup(|g| (g.hhat_sq - value).abs()),
                GEOMETRY_TOL,
                src,
            ),
            Claim::AlphaHat { value } => below(
                "alpha_hat",
                self.sup(|g| g.alpha_hat.map_or(f64::INFINITY, |a| (a - value).abs())),
                GEOMETRY_TOL,
                src,
            ),
            Claim::ShapeOperator { normal, value } => {
                let d = self.sup(|g| {
                    let a = g.shape_operator(*normal);
                    let mut worst: f64 = 0.0;
                    for (j, row) in a.iter().enumerate() {
                        for (i, v) in row.iter().enumerate() {
                            let target = if i == j { *value } else { 0.0 };
                            worst = worst.max((v - target).abs());
                        }
                    }
                    worst
                });
                below(format!("shape_operator_{normal}"), d, GEOMETRY_TOL, src)
            }
            Claim::FlatChartMetric { diagonal } => {
                let d = self.sup(|g| {
                    let mut worst: f64 = 0.0;
                    for (i, row) in g.frame.metric.iter().enumerate() {
                        for (j, v) in row.iter().enumerate() {
                            let target = if i == j { diagonal[i] } else { 0.0 };
                            worst = worst.max((v - target).abs());
                        }
                    }
                    worst
                });
                below("flat_chart_metric", d, SPHERE_TOL, src)
            }
            Claim::ConnectionTanU => {
                let worst = self
                    .evals
                    .par_iter()
                    .map(|e| {
                        let g = &e.sample.geo;
                        let w = self.imm.frame_connection(&g.frame)?;
                        let t = g.u[0].tan();
                        Ok((w.get(0, 1, 1) + t).abs().max(w.get(0, 1, 0).abs()))
                    })
                    .collect::<Result<Vec<f64>>>()?
                    .into_iter()
                    .fold(0.0, f64::max);
                below("connection_tan_u", worst, CONSTANT_TOL, src)
            }
            Claim::AssembledConstantComponent => return self.assembled_constant(src),
            Claim::UmbilicalDecomposition => return self.umbilical_decomposition(src),
            Claim::FlatUmbilical => {
                let bad = self
                    .geos()
                    .filter(|g| {
                        !matches!(
                            spectral::predicted_decomposition(g),
                            Err(GeomError::FlatUmbilical { .. })
                        )
                    })
                    .count();
                equals("flat_umbilical_rejected", json!(bad), json!(0), src)
            }
            Claim::LaplacianAbove { value } => above("laplacian_sup", fit.laplacian_sup, *value, src),
            Claim::LaplacianBelow { value } => below("laplacian_sup", fit.laplacian_sup, *value, src),
            Claim::BilaplacianBelow { value } => {
                let v = match fit.bilaplacian_sup {
                    Some(v) => v,
                    None => self.bilaplacian_sup()?,
                };
                below("bilaplacian_sup", v, *value, src)
            }
            Claim::CompanionLaplacian => {
                let field = gaussmap::companion_field(self.imm)?;
                let worst = self
                    .evals
                    .par_iter()
                    .map(|e| {
                        let g = &e.sample.geo;
                        let num = gaussmap::laplace_beltrami_numeric(self.imm, &field, &g.u, self.cfg.fd_step)?;
                        Ok(num.dist_euclid(&gaussmap::laplacian_companion(g)?))
                    })
                    .collect::<Result<Vec<f64>>>()?
                    .into_iter()
                    .fold(0.0, f64::max);
                below("companion_laplacian", worst, self.cfg.tol_fd, src)
            }
            Claim::CompanionOpposite => {
                let mut worst: f64 = 0.0;
                for e in self.evals {
                    let l = gaussmap::laplacian_companion(&e.sample.geo)?;
                    worst = worst.max((&l + &e.sample.laplacian).norm_euclid());
                }
                below("companion_opposite", worst, self.cfg.tol_analytic, src)
            }
            Claim::UmbilicalCriterion { holds } => {
                let got = fit.umbilical.as_ref().map(|t| t.holds);
                equals("umbilical_criterion", json!(got), json!(holds), src)
            }
            Claim::UmbilicalCriterionNullMean => {
                let reports: Vec<GeometryReport> = self.geos().cloned().collect();
                let r = spectral::umbilical_criterion(&reports, CONSTANT_TOL);
                let got = match r {
                    Err(e) => e.kind().to_string(),
                    Ok(t) => format!("holds = {}", t.holds),
                };
                equals("umbilical_criterion", json!(got), json!("null_mean_curvature"), src)
            }
            Claim::AnnihilatingRoot { value, tol } => {
                let stride = (self.evals.len() / 9).max(1);
                let picked: Vec<&PointEval> = self.evals.iter().step_by(stride).collect();
                let stacks: Vec<Vec<Multivector>> = picked
                    .par_iter()
                    .map(|e| {
                        let b = gaussmap::bilaplacian(self.imm, &e.sample.geo.u, gaussmap::BILAPLACIAN_STEP)?;
                        Ok(vec![e.sample.laplacian.clone(), b])
                    })
                    .collect::<Result<_>>()?;
                let p = spectral::annihilating_polynomial(&stacks, 1, self.cfg.tol_biharmonic)?;
                let root = p.roots.first().copied().unwrap_or(f64::NAN);
                let mut c = below("annihilating_root", (root - value).abs(), *tol, src);
                c.measured = json!({ "root": root, "relative_residual": p.relative_residual });
                c.threshold = json!({ "value": value, "tol": tol });
                c.relation = "abs_diff_below";
                c.passed = (root - value).abs() < *tol;
                c
            }
            Claim::NullCurve { tol } => {
                let z = self
                    .entry
                    .null_curve
                    .as_ref()
                    .ok_or_else(|| GeomError::InvalidParameter("entry has no null curve".into()))?;
                let (lo, hi) = self.imm.domain()[0];
                let grid: Vec<f64> = (0..=40).map(|k| lo + (hi - lo) * k as f64 / 40.0).collect();
                let r = catalog::null_curve_validator(z, &grid);
                let worst = r.position.max(r.speed).max(r.acceleration);
                let mut c = below("null_curve", worst, *tol, src);
                c.measured = json!(r);
                c.passed = r.passes(*tol);
                c
            }
        };
        Ok(vec![c])
    }

    fn bilaplacian_sup(&self) -> Result<f64> {
        Ok(self
            .evals
            .par_iter()
            .map(|e| {
                gaussmap::bilaplacian(self.imm, &e.sample.geo.u, gaussmap::BILAPLACIAN_STEP).map(|b| b.norm_euclid())
            })
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max))
    }

    // ν̃ + (e_3∧e_1∧e_2 - e_4∧e_1∧e_2)/√2 from the frame at u
    fn assembled_c(&self, u: &[f64]) -> Result<Multivector> {
        let frame = self.imm.adapted_frame(u)?;
        let space = gaussmap::gauss_space(self.imm);
        let nu = gaussmap::gauss_map_from_frame(&space, &frame);
        let mut c = nu.clone();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        for (k, sign) in [(0usize, 1.0), (1, -1.0)] {
            let mut f = frame.clone();
            f.point = frame.normals[k].clone();
            c.add_scaled(sign * r, &gaussmap::gauss_map_from_frame(&space, &f));
        }
        Ok(c)
    }

    fn assembled_constant(&self, src: Option<Provenance>) -> Result<Vec<Check>> {
        let cs: Vec<Multivector> = self
            .evals
            .par_iter()
            .map(|e| self.assembled_c(&e.sample.geo.u))
            .collect::<Result<_>>()?;
        let mean = mean_mv(&cs);
        let spread = cs.iter().map(|c| c.dist_euclid(&mean)).fold(0.0, f64::max);
        let h = self.cfg.fd_step;
        let mut deriv: f64 = 0.0;
        for e in self.evals.iter().step_by((self.evals.len() / 5).max(1)) {
            for i in 0..self.imm.dim() {
                let mut up = e.sample.geo.u.clone();
                let mut dn = up.clone();
                up[i] += h;
                dn[i] -= h;
                let d = (&self.assembled_c(&up)? - &self.assembled_c(&dn)?).scale(0.5 / h);
                deriv = deriv.max(d.norm_euclid());
            }
        }
        let vs_fit = self.fit.c.as_ref().map_or(f64::INFINITY, |c| c.dist_euclid(&mean));
        Ok(vec![
            below("assembled_c_spread", spread, CONSTANT_TOL, src),
            below("assembled_c_derivative", deriv, CONSTANT_TOL, src),
            below("assembled_c_matches_fit", vs_fit, CONSTANT_TOL, src),
        ])
    }

    fn umbilical_decomposition(&self, src: Option<Provenance>) -> Result<Vec<Check>> {
        let decs: Vec<spectral::Decomposition> = self
            .geos()
            .map(spectral::predicted_decomposition)
            .collect::<Result<_>>()?;
        let mean = mean_mv(&decs.iter().map(|d| d.c.clone()).collect::<Vec<_>>());
        let spread = decs.iter().map(|d| d.c.dist_euclid(&mean)).fold(0.0, f64::max);
        let fit = self.fit;
        let lambda_gap = fit.lambda_p.map_or(f64::INFINITY, |l| {
            decs.iter().map(|d| (d.lambda_p - l).abs()).fold(0.0, f64::max)
        });
        let c_gap = fit.c.as_ref().map_or(f64::INFINITY, |c| {
            decs.iter().map(|d| d.c.dist_euclid(c)).fold(0.0, f64::max)
        });
        // Δν̃_p = λ_p ν̃_p with Δ from the numeric route
        let eig = self
            .evals
            .iter()
            .zip(&decs)
            .map(|(e, d)| {
                let mut r = e.laplacian_numeric.clone();
                r.add_scaled(-d.lambda_p, &d.nu_p);
                r.norm_euclid()
            })
            .fold(0.0, f64::max);
        let split = self
            .evals
            .iter()
            .zip(&decs)
            .map(|(e, d)| (&d.c + &d.nu_p).dist_euclid(&e.sample.nu))
            .fold(0.0, f64::max);
        Ok(vec![
            below("decomposition_lambda_matches_fit", lambda_gap, DECOMPOSITION_TOL, src),
            below("decomposition_c_matches_fit", c_gap, DECOMPOSITION_TOL, src),
            below("decomposition_c_constant", spread, CONSTANT_TOL, src),
            below("decomposition_sum", split, CONSTANT_TOL, Some(Provenance::Trivial)),
            below("decomposition_eigen_numeric", eig, self.cfg.tol_fd, src),
        ])
    }
}

fn mean_mv(vs: &[Multivector]) -> Multivector {
    let mut m = Multivector::zero(vs[0].space());
    for v in vs {
        m.add_scaled(1.0 / vs.len() as f64, v);
    }
    m
}

/// Structured error record for reports and stderr.
pub fn error_record(name: &str, e: &GeomError) -> Value {
    json!({
        "surface": name,
        "error": { "kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code() }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteEntry {
    pub name: String,
    pub passed: bool,
    pub verdict: Option<Verdict>,
    pub lambda_p: Option<f64>,
    pub failed_checks: Vec<String>,
    pub error: Option<Value>,
}

/// Over all entries: verdict `one_type_through_origin` against the geometric
/// criterion. `literal` drops the `S ≠ n(n-1)` clause.
#[derive(Clone, Debug, Serialize)]
pub struct OneTypeSweep {
    pub mismatches: Vec<String>,
    pub literal_mismatches: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub config: RunConfig,
    pub entries: Vec<SuiteEntry>,
    pub one_type_sweep: OneTypeSweep,
    pub checks: Vec<Check>,
    pub passed: bool,
    #[serde(skip)]
    pub reports: Vec<Report>,
    #[serde(skip)]
    pub worst_exit: i32,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite serializes") + "\n"
    }
}

pub fn one_type_sweep(reports: &[Report]) -> OneTypeSweep {
    let mut mismatches = Vec::new();
    let mut literal_mismatches = Vec::new();
    for r in reports {
        let through = r.fit.verdict == Verdict::OneTypeThroughOrigin;
        if through != r.fit.criteria.one_type_through_origin {
            mismatches.push(r.surface.name.clone());
        }
        if through != r.fit.criteria.minimal_const_s_flat_normal {
            literal_mismatches.push(r.surface.name.clone());
        }
    }
    OneTypeSweep {
        mismatches,
        literal_mismatches,
    }
}

/// Every catalog entry with `base` tolerances; entries keep their own grids
/// unless `base.grid` is set.
pub fn run_suite(base: &RunConfig) -> Result<SuiteReport> {
    base.validate()?;
    let mut entries = Vec::new();
    let mut reports = Vec::new();
    let mut worst_exit = 0;
    for entry in catalog::entries() {
        let mut cfg = base.clone();
        cfg.surface = entry.name.clone();
        if cfg.grid.as_ref().is_some_and(|g| g.len() != entry.n()) {
            cfg.grid = None;
        }
        match verify_entry(&entry, "catalog", &cfg) {
            Ok(r) => {
                if !r.passed {
                    worst_exit = worst_exit.max(1);
                }
                entries.push(SuiteEntry {
                    name: entry.name.clone(),
                    passed: r.passed,
                    verdict: Some(r.fit.verdict),
                    lambda_p: r.fit.lambda_p,
                    failed_checks: r.failed_checks().iter().map(|c| c.name.clone()).collect(),
                    error: None,
                });
                reports.push(r);
            }
            Err(e) => {
                worst_exit = worst_exit.max(e.exit_code());
                entries.push(SuiteEntry {
                    name: entry.name.clone(),
                    passed: false,
                    verdict: None,
                    lambda_p: None,
                    failed_checks: vec![],
                    error: Some(error_record(&entry.name, &e)),
                });
            }
        }
    }
    let sweep = one_type_sweep(&reports);
    let checks = vec![equals(
        "one_type_sweep",
        json!(sweep.mismatches.len()),
        json!(0),
        Some(Provenance::Paper),
    )];
    if !checks[0].passed {
        worst_exit = worst_exit.max(1);
    }
    let passed = worst_exit == 0;
    Ok(SuiteReport {
        schema_version: SCHEMA_VERSION,
        tool: "pseudogauss",
        version: VERSION,
        config: base.clone(),
        entries,
        one_type_sweep: sweep,
        checks,
        passed,
        reports,
        worst_exit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        let mut c = RunConfig::for_surface("clifford_torus");
        assert!(c.validate().is_ok());
        c.grid = Some(vec![2, 9]);
        assert!(c.validate().is_err());
        c.grid = None;
        c.tol_fd = 0.0;
        assert_eq!(c.validate().unwrap_err().exit_code(), 2);
    }

    #[test]
    fn unknown_surface_is_config_error() {
        let e = run_verify(&RunConfig::for_surface("no_such_surface")).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn clifford_report_passes() {
        let r = run_verify(&RunConfig::for_surface("clifford_torus")).unwrap();
        assert!(r.passed, "{:?}", r.failed_checks());
        assert_eq!(r.fit.verdict, Verdict::OneTypeThroughOrigin);
        assert_eq!(r.samples, 81);
    }

    #[test]
    fn horosphere_dimension_selector() {
        let mut c = RunConfig::for_surface("horosphere");
        c.n = Some(3);
        let (e, _) = resolve_surface(&c).unwrap();
        assert_eq!(e.n(), 3);
        c.surface = "clifford_torus".into();
        assert!(resolve_surface(&c).is_err());
    }
}
