//! Immersions into pseudo-spheres, adapted frames and connection forms.

use std::fmt;
use std::sync::{Arc, OnceLock};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chart::{Chart, ChartFile, Expr, ExprChart};
use crate::error::{GeomError, Result};
use crate::indefinite::{gram_schmidt_raw, norm_euclid, project_out, Signature, DEFAULT_PIVOT_TOL};
use crate::jet::{Jet, JetLayout};
use crate::multivector::det;

/// Step for Richardson-synthesized chart derivatives.
pub const SYNTH_STEP: f64 = 1e-3;
/// Step for finite differences of the frame field.
pub const FRAME_FD_STEP: f64 = 1e-3;
/// `|det g|` below this is a degenerate metric.
pub const METRIC_DET_TOL: f64 = 1e-12;
/// Axis candidates with `|⟨w,w⟩|/‖w‖²` at least this are accepted outright.
const GOOD_NORMAL_RATIO: f64 = 0.1;

/// How each sphere normal is produced; fixed once per immersion so that
/// frames vary continuously over the domain.
#[derive(Clone, Debug, PartialEq)]
enum NormalSource {
    Hint(usize),
    Cross,
    Axis(usize),
    Pair(usize, usize, f64),
}

/// A parametrized submanifold `M^n_t` of `S^{m-1}_s(1) ⊂ E^m_s`.
#[derive(Clone)]
pub struct Immersion {
    name: String,
    signature: Signature,
    index: usize,
    domain: Vec<(f64, f64)>,
    chart: Arc<dyn Chart>,
    hints: Vec<Vec<Expr>>,
    tangent_mix: Option<Vec<Vec<f64>>>,
    template: Arc<OnceLock<std::result::Result<Vec<NormalSource>, GeomError>>>,
}

impl fmt::Debug for Immersion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Immersion")
            .field("name", &self.name)
            .field("n", &self.dim())
            .field("t", &self.index)
            .field("ambient", &self.signature)
            .field("domain", &self.domain)
            .field("chart", &self.chart)
            .finish()
    }
}

impl Immersion {
    pub fn new(
        name: impl Into<String>,
        signature: Signature,
        index: usize,
        domain: Vec<(f64, f64)>,
        chart: Arc<dyn Chart>,
    ) -> Result<Self> {
        let n = chart.dim();
        if chart.ambient_dim() != signature.dim() {
            return Err(GeomError::DimensionMismatch {
                expected: signature.dim(),
                found: chart.ambient_dim(),
            });
        }
        if domain.len() != n {
            return Err(GeomError::DimensionMismatch {
                expected: n,
                found: domain.len(),
            });
        }
        if n == 0 || n + 1 >= signature.dim() {
            return Err(GeomError::InvalidParameter(format!(
                "need 0 < n < m - 1, got n = {n}, m = {}",
                signature.dim()
            )));
        }
        if index > n {
            return Err(GeomError::InvalidParameter(format!("index {index} exceeds n = {n}")));
        }
        if chart.max_order().is_some_and(|p| p < 2) {
            return Err(GeomError::InvalidParameter(
                "charts must supply derivatives up to order 2".into(),
            ));
        }
        if let Some(&(lo, hi)) = domain
            .iter()
            .find(|(lo, hi)| lo.partial_cmp(hi) != Some(std::cmp::Ordering::Less))
        {
            return Err(GeomError::InvalidParameter(format!(
                "empty domain interval [{lo}, {hi}]"
            )));
        }
        Ok(Immersion {
            name: name.into(),
            signature,
            index,
            domain,
            chart,
            hints: Vec::new(),
            tangent_mix: None,
            template: Arc::new(OnceLock::new()),
        })
    }

    /// Normal hint fields, used in order before any automatic completion.
    pub fn with_hints(mut self, hints: Vec<Vec<Expr>>) -> Result<Self> {
        let m = self.signature.dim();
        if hints.len() > m - 1 - self.dim() {
            return Err(GeomError::InvalidParameter(format!(
                "{} normal hints for codimension {}",
                hints.len(),
                m - 1 - self.dim()
            )));
        }
        if let Some(h) = hints.iter().find(|h| h.len() != m) {
            return Err(GeomError::DimensionMismatch {
                expected: m,
                found: h.len(),
            });
        }
        self.hints = hints;
        self.template = Arc::new(OnceLock::new());
        Ok(self)
    }

    /// Frames are built from `Σ_j M_ij ∂_j x` instead of the raw partials.
    /// Needed when coordinate directions are null. `det M` must be positive.
    pub fn with_tangent_mix(mut self, mix: Vec<Vec<f64>>) -> Result<Self> {
        let n = self.dim();
        if mix.len() != n || mix.iter().any(|r| r.len() != n) {
            return Err(GeomError::InvalidParameter(format!("tangent mix must be {n}x{n}")));
        }
        let d = det(mix.iter().flatten().copied().collect(), n);
        if d <= 0.0 {
            return Err(GeomError::InvalidParameter(format!(
                "tangent mix must have positive determinant, got {d}"
            )));
        }
        self.tangent_mix = Some(mix);
        self.template = Arc::new(OnceLock::new());
        Ok(self)
    }

    pub fn from_chart_file(cf: &ChartFile) -> Result<Self> {
        let chart = Arc::new(ExprChart::new(cf.dim, cf.components.clone()));
        let mut imm =
            Immersion::new(&cf.name, cf.signature, cf.index, cf.domain.clone(), chart)?.with_hints(cf.hints.clone())?;
        if let Some(mix) = &cf.tangent_mix {
            imm = imm.with_tangent_mix(mix.clone())?;
        }
        Ok(imm)
    }

    /// Chart text export; `None` for closure charts.
    pub fn to_chart_file(&self) -> Option<ChartFile> {
        Some(ChartFile {
            name: self.name.clone(),
            dim: self.dim(),
            signature: self.signature,
            index: self.index,
            domain: self.domain.clone(),
            components: self.chart.expressions()?.to_vec(),
            hints: self.hints.clone(),
            tangent_mix: self.tangent_mix.clone(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Intrinsic dimension `n`.
    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    /// Declared index `t` of the induced metric.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn domain(&self) -> &[(f64, f64)] {
        &self.domain
    }

    pub fn chart(&self) -> &Arc<dyn Chart> {
        &self.chart
    }

    pub fn hints(&self) -> &[Vec<Expr>] {
        &self.hints
    }

    /// Number of sphere normals, `m - 1 - n`.
    pub fn codim(&self) -> usize {
        self.signature.dim() - 1 - self.dim()
    }

    pub fn is_hypersurface(&self) -> bool {
        self.codim() == 1
    }

    pub fn point(&self, u: &[f64]) -> Vec<f64> {
        self.chart.eval(u)
    }

    /// Component jets of the chart to `order`. Orders above the chart's
    /// declared maximum are synthesized by Richardson-extrapolated central
    /// differences of the highest available order.
    pub fn partials(&self, u: &[f64], order: usize) -> Vec<Jet> {
        match self.chart.max_order() {
            Some(p) if order > p => self.synthesize(u, order, p),
            _ => self.chart.jets(u, order),
        }
    }

    fn synthesize(&self, u: &[f64], order: usize, available: usize) -> Vec<Jet> {
        if order <= available {
            return self.chart.jets(u, order);
        }
        let n = u.len();
        let base = self.synthesize(u, order - 1, available);
        let layout = JetLayout::get(n, order);
        let h = SYNTH_STEP;
        // shifted lower-order jets: [i][k] for offsets +h, -h, +h/2, -h/2
        let shifted: Vec<Vec<Vec<Jet>>> = (0..n)
            .map(|i| {
                [h, -h, h / 2.0, -h / 2.0]
                    .iter()
                    .map(|d| {
                        let mut v = u.to_vec();
                        v[i] += d;
                        self.synthesize(&v, order - 1, available)
                    })
                    .collect()
            })
            .collect();
        base.iter()
            .enumerate()
            .map(|(c, jet)| {
                let mut coeffs = jet.coeffs().to_vec();
                for alpha in &layout.multi_indices()[coeffs.len()..] {
                    let i = alpha.iter().position(|&a| a > 0).expect("nonzero multi-index");
                    let mut beta = alpha.clone();
                    beta[i] -= 1;
                    let d = |k: usize| shifted[i][k][c].derivative(&beta).expect("beta in range");
                    let coarse = (d(0) - d(1)) / (2.0 * h);
                    let fine = (d(2) - d(3)) / h;
                    let value = (4.0 * fine - coarse) / 3.0;
                    coeffs.push(value / layout.alpha_factorial(alpha));
                }
                Jet::from_coeffs(&layout, coeffs)
            })
            .collect()
    }

    /// `∂_i x` for every chart direction, from order-1 jets.
    pub fn first_partials(&self, u: &[f64]) -> Vec<Vec<f64>> {
        let jets = self.partials(u, 1);
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut alpha = vec![0u8; n];
                alpha[i] = 1;
                jets.iter().map(|j| j.derivative(&alpha).unwrap()).collect()
            })
            .collect()
    }

    /// `g_ij = ⟨∂_i x, ∂_j x⟩`.
    pub fn induced_metric(&self, u: &[f64]) -> Result<Vec<Vec<f64>>> {
        let d = self.first_partials(u);
        let g = gram(self.signature, &d);
        let n = self.dim();
        let dg = det(g.iter().flatten().copied().collect(), n);
        if dg.abs() < METRIC_DET_TOL || !dg.is_finite() {
            return Err(GeomError::DegenerateMetric { det: dg });
        }
        Ok(g)
    }

    fn tangent_inputs(&self, partials: &[Vec<f64>]) -> Vec<Vec<f64>> {
        match &self.tangent_mix {
            None => partials.to_vec(),
            Some(mix) => mix
                .iter()
                .map(|row| {
                    let mut v = vec![0.0; self.signature.dim()];
                    for (c, p) in row.iter().zip(partials) {
                        crate::indefinite::axpy(*c, p, &mut v);
                    }
                    v
                })
                .collect(),
        }
    }

    fn tangent_frame(&self, u: &[f64]) -> Result<(Vec<f64>, Vec<Vec<f64>>, Vec<f64>, Vec<Vec<f64>>, Vec<Vec<f64>>)> {
        let g = self.induced_metric(u)?;
        let partials = self.first_partials(u);
        let x = self.point(u);
        let inputs = self.tangent_inputs(&partials);
        let (tangents, signs) = gram_schmidt_raw(self.signature, &inputs, (&[], &[]), DEFAULT_PIVOT_TOL)?;
        // e_i = Σ_j C_ij ∂_j x with C = B g^{-1}, B_ik = ⟨e_i, ∂_k x⟩
        let n = self.dim();
        let gm = DMatrix::from_fn(n, n, |i, j| g[i][j]);
        let ginv = gm.try_inverse().ok_or(GeomError::DegenerateMetric { det: 0.0 })?;
        let b = DMatrix::from_fn(n, n, |i, k| self.signature.dot(&tangents[i], &partials[k]));
        let c = b * ginv;
        let c = (0..n).map(|i| (0..n).map(|j| c[(i, j)]).collect()).collect();
        Ok((x, tangents, signs, c, g))
    }

    fn hint_vector(&self, k: usize, u: &[f64]) -> Vec<f64> {
        self.hints[k].iter().map(|e| e.eval(u)).collect()
    }

    /// Reference parameter used to fix the normal template: the domain centre.
    pub fn reference_point(&self) -> Vec<f64> {
        self.domain.iter().map(|(lo, hi)| 0.5 * (lo + hi)).collect()
    }

    fn template(&self) -> Result<&Vec<NormalSource>> {
        self.template
            .get_or_init(|| self.build_template())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn build_template(&self) -> std::result::Result<Vec<NormalSource>, GeomError> {
        let sig = self.signature;
        let m = sig.dim();
        let u = self.reference_point();
        let (x, tangents, tsigns, _, _) = self.tangent_frame(&u)?;
        if self.hints.is_empty() && self.is_hypersurface() {
            return Ok(vec![NormalSource::Cross]);
        }
        let mut basis = tangents;
        let mut signs = tsigns;
        basis.push(x);
        signs.push(1.0);
        let mut sources = Vec::new();
        for k in 0..self.hints.len() {
            let h = self.hint_vector(k, &u);
            let (e, s) = gram_schmidt_raw(sig, &[h], (&basis, &signs), DEFAULT_PIVOT_TOL)
                .map_err(|_| GeomError::NullPivot { index: self.dim() + k })?;
            basis.push(e[0].clone());
            signs.push(s[0]);
            sources.push(NormalSource::Hint(k));
        }
        while sources.len() < self.codim() {
            let ratio = |v: Vec<f64>| -> (f64, Vec<f64>) {
                let nv = norm_euclid(&v);
                let mut w = v;
                project_out(sig, &mut w, &basis, &signs);
                let nw = norm_euclid(&w);
                if nw < 1e-6 * nv {
                    return (0.0, w);
                }
                (sig.dot(&w, &w).abs() / (nw * nw), w)
            };
            let mut best: Option<(f64, NormalSource, Vec<f64>)> = None;
            for a in 0..m {
                let (r, w) = ratio(sig.basis(a));
                if r >= GOOD_NORMAL_RATIO {
                    best = Some((r, NormalSource::Axis(a), w));
                    break;
                }
                if best.as_ref().is_none_or(|b| r > b.0) {
                    best = Some((r, NormalSource::Axis(a), w));
                }
            }
            if best.as_ref().is_some_and(|b| b.0 < GOOD_NORMAL_RATIO) {
                for a in 0..m {
                    for b in a + 1..m {
                        for sgn in [1.0, -1.0] {
                            let mut v = sig.basis(a);
                            v[b] = sgn;
                            let (r, w) = ratio(v);
                            if best.as_ref().is_none_or(|bb| r > bb.0) {
                                best = Some((r, NormalSource::Pair(a, b, sgn), w));
                            }
                        }
                    }
                }
            }
            let (r, src, w) = best.expect("ambient has at least one axis");
            if r < 1e-6 {
                return Err(GeomError::NullPivot {
                    index: self.dim() + sources.len(),
                });
            }
            let q = sig.dot(&w, &w);
            basis.push(crate::indefinite::scaled(&w, 1.0 / q.abs().sqrt()));
            signs.push(q.signum());
            sources.push(src);
        }
        Ok(sources)
    }

    /// Oriented pseudo-orthonormal frame adapted to the immersion at `u`.
    ///
    /// Tangents come from Gram–Schmidt on the chart partials in chart order.
    /// Normals use the hint fields first and then a fixed completion chosen at
    /// the domain centre; the last automatically chosen normal is flipped if
    /// needed so that `det[e_1, …, e_{m-1}, x] > 0`.
    pub fn adapted_frame(&self, u: &[f64]) -> Result<AdaptedFrame> {
        let sig = self.signature;
        let m = sig.dim();
        let template = self.template()?;
        let (x, tangents, tsigns, c, g) = self.tangent_frame(u)?;
        let mut basis = tangents.clone();
        let mut signs = tsigns.clone();
        basis.push(x.clone());
        signs.push(1.0);
        let mut normals = Vec::new();
        let mut nsigns = Vec::new();
        for src in template {
            let v = match *src {
                NormalSource::Hint(k) => self.hint_vector(k, u),
                NormalSource::Axis(a) => sig.basis(a),
                NormalSource::Pair(a, b, s) => {
                    let mut v = sig.basis(a);
                    v[b] = s;
                    v
                }
                NormalSource::Cross => cross_normal(sig, &tangents, &x),
            };
            let (e, s) =
                gram_schmidt_raw(sig, &[v], (&basis, &signs), DEFAULT_PIVOT_TOL).map_err(|_| GeomError::NullPivot {
                    index: self.dim() + normals.len(),
                })?;
            basis.push(e[0].clone());
            signs.push(s[0]);
            normals.push(e[0].clone());
            nsigns.push(s[0]);
        }
        let mut frame = AdaptedFrame {
            u: u.to_vec(),
            signature: sig,
            point: x,
            tangents,
            normals,
            signs: tsigns.into_iter().chain(nsigns).collect(),
            chart_to_frame: c,
            metric: g,
        };
        let orientation = det((0..m).flat_map(|a| frame.vector(a).to_vec()).collect(), m);
        if orientation < 0.0 {
            let last_auto = template.iter().rposition(|s| !matches!(s, NormalSource::Hint(_)));
            if let Some(k) = last_auto {
                for c in frame.normals[k].iter_mut() {
                    *c = -*c;
                }
            }
        }
        Ok(frame)
    }

    /// Connection forms `ω_AB(e_i) = ⟨∇̃_{e_i} e_A, e_B⟩` over the full frame
    /// `(e_1, …, e_{m-1}, x)`, from 5-point differences of the frame field.
    pub fn frame_connection(&self, frame: &AdaptedFrame) -> Result<Connection> {
        let n = self.dim();
        let m = self.signature.dim();
        let h = FRAME_FD_STEP;
        let u = &frame.u;
        // ∂_j e_A for every chart direction j
        let mut dframe = vec![vec![vec![0.0; m]; m]; n];
        for (j, dj) in dframe.iter_mut().enumerate() {
            let at = |d: f64| -> Result<AdaptedFrame> {
                let mut v = u.clone();
                v[j] += d;
                self.adapted_frame(&v)
            };
            let (p2, p1, m1, m2) = (at(2.0 * h)?, at(h)?, at(-h)?, at(-2.0 * h)?);
            for (a, da) in dj.iter_mut().enumerate() {
                for (c, out) in da.iter_mut().enumerate() {
                    *out = (-p2.vector(a)[c] + 8.0 * p1.vector(a)[c] - 8.0 * m1.vector(a)[c] + m2.vector(a)[c])
                        / (12.0 * h);
                }
            }
        }
        let omega = (0..n)
            .map(|i| {
                (0..m)
                    .map(|a| {
                        let mut nabla = vec![0.0; m];
                        for j in 0..n {
                            crate::indefinite::axpy(frame.chart_to_frame[i][j], &dframe[j][a], &mut nabla);
                        }
                        (0..m).map(|b| self.signature.dot(&nabla, frame.vector(b))).collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Connection { omega })
    }

    /// Interior sample grid: `counts[i]` points per axis, the outer fraction
    /// `margin` of each interval excluded on both sides. Last axis fastest.
    pub fn sample_grid(&self, counts: &[usize], margin: f64) -> Result<Vec<Vec<f64>>> {
        let n = self.dim();
        if counts.len() != n {
            return Err(GeomError::InvalidParameter(format!(
                "grid has {} axes, surface has {n} parameters",
                counts.len()
            )));
        }
        if counts.contains(&0) || !(0.0..0.5).contains(&margin) {
            return Err(GeomError::InvalidParameter(format!(
                "invalid grid {counts:?} with margin {margin}"
            )));
        }
        let axes: Vec<Vec<f64>> = counts
            .iter()
            .zip(&self.domain)
            .map(|(&c, &(lo, hi))| {
                let a = lo + margin * (hi - lo);
                let b = hi - margin * (hi - lo);
                if c == 1 {
                    vec![0.5 * (a + b)]
                } else {
                    (0..c).map(|k| a + (b - a) * k as f64 / (c - 1) as f64).collect()
                }
            })
            .collect();
        let mut out = vec![Vec::new()];
        for axis in &axes {
            out = out
                .into_iter()
                .flat_map(|p| {
                    axis.iter().map(move |&t| {
                        let mut q = p.clone();
                        q.push(t);
                        q
                    })
                })
                .collect();
        }
        Ok(out)
    }

    /// Seeded uniform random points in the margin-shrunk domain.
    pub fn random_points(&self, count: usize, margin: f64, seed: u64) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                self.domain
                    .iter()
                    .map(|&(lo, hi)| {
                        let a = lo + margin * (hi - lo);
                        let b = hi - margin * (hi - lo);
                        rng.random_range(a..=b)
                    })
                    .collect()
            })
            .collect()
    }
}

pub(crate) fn gram(sig: Signature, vs: &[Vec<f64>]) -> Vec<Vec<f64>> {
    vs.iter().map(|a| vs.iter().map(|b| sig.dot(a, b)).collect()).collect()
}

// N with ⟨N, v⟩ = det[e_1, …, e_n, v, x]
fn cross_normal(sig: Signature, tangents: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    let m = sig.dim();
    (0..m)
        .map(|a| {
            let mut rows: Vec<f64> = tangents.iter().flatten().copied().collect();
            rows.extend(sig.basis(a).iter().map(|v| v * sig.sign(a)));
            rows.extend_from_slice(x);
            det(rows, m)
        })
        .collect()
}

/// Pseudo-orthonormal frame `(e_1, …, e_n, e_{n+1}, …, e_{m-1})` at a point,
/// with the position vector `x` as the final member.
#[derive(Clone, Debug, Serialize)]
pub struct AdaptedFrame {
    pub u: Vec<f64>,
    #[serde(skip)]
    pub signature: Signature,
    pub point: Vec<f64>,
    pub tangents: Vec<Vec<f64>>,
    pub normals: Vec<Vec<f64>>,
    /// `ε_A` for tangents then sphere normals.
    pub signs: Vec<f64>,
    /// `C` with `e_i = Σ_j C_ij ∂_j x`.
    pub chart_to_frame: Vec<Vec<f64>>,
    /// Induced metric in chart coordinates.
    pub metric: Vec<Vec<f64>>,
}

impl AdaptedFrame {
    pub fn n(&self) -> usize {
        self.tangents.len()
    }

    /// Frame vector `A` in `0..m`; index `m-1` is `x`.
    pub fn vector(&self, a: usize) -> &[f64] {
        let n = self.n();
        if a < n {
            &self.tangents[a]
        } else if a < n + self.normals.len() {
            &self.normals[a - n]
        } else {
            &self.point
        }
    }

    /// `ε_A`, with `ε = 1` for `x`.
    pub fn sign(&self, a: usize) -> f64 {
        self.signs.get(a).copied().unwrap_or(1.0)
    }

    /// Normal `r` in `0..=codim`, `x` last.
    pub fn normal(&self, r: usize) -> &[f64] {
        self.vector(self.n() + r)
    }

    pub fn normal_sign(&self, r: usize) -> f64 {
        self.sign(self.n() + r)
    }

    /// Number of timelike tangents.
    pub fn tangent_index(&self) -> usize {
        self.signs[..self.n()].iter().filter(|&&s| s < 0.0).count()
    }

    /// `max |⟨e_A, e_B⟩ - ε_A δ_AB|` over the full frame including `x`.
    pub fn orthonormality_defect(&self) -> f64 {
        let m = self.signature.dim();
        let mut worst: f64 = 0.0;
        for a in 0..m {
            for b in a..m {
                let target = if a == b { self.sign(a) } else { 0.0 };
                let ip = self.signature.dot(self.vector(a), self.vector(b));
                worst = worst.max((ip - target).abs());
            }
        }
        worst
    }

    /// `max |Σ_A ε_A e_A e_A^T η - I|`: the frame resolves the identity.
    pub fn completeness_defect(&self) -> f64 {
        let m = self.signature.dim();
        let mut worst: f64 = 0.0;
        for r in 0..m {
            for c in 0..m {
                let s: f64 = (0..m)
                    .map(|a| self.sign(a) * self.vector(a)[r] * self.vector(a)[c] * self.signature.sign(c))
                    .sum();
                let target = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((s - target).abs());
            }
        }
        worst
    }
}

/// `ω_AB(e_i)` stored as `omega[i][A][B]` over the full frame.
#[derive(Clone, Debug, Serialize)]
pub struct Connection {
    pub omega: Vec<Vec<Vec<f64>>>,
}

impl Connection {
    pub fn get(&self, a: usize, b: usize, i: usize) -> f64 {
        self.omega[i][a][b]
    }

    pub fn antisymmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for om in &self.omega {
            for a in 0..om.len() {
                for b in 0..om.len() {
                    worst = worst.max((om[a][b] + om[b][a]).abs());
                }
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::{FactorKind, TruncatedChart};

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
    fn clifford_metric_and_frame() {
        let imm = clifford();
        let g = imm.induced_metric(&[0.3, 1.1]).unwrap();
        assert!((g[0][0] - 0.5).abs() < 1e-15 && (g[1][1] - 0.5).abs() < 1e-15);
        assert!(g[0][1].abs() < 1e-15);
        let f = imm.adapted_frame(&[0.3, 1.1]).unwrap();
        assert!(f.orthonormality_defect() < 1e-12);
        assert!(f.completeness_defect() < 1e-12);
        assert_eq!(f.tangent_index(), 0);
        let m = 5;
        let d = det((0..m).flat_map(|a| f.vector(a).to_vec()).collect(), m);
        assert!(d > 0.0);
    }

    #[test]
    fn clifford_connection_is_trivial_in_tangent_block() {
        let imm = clifford();
        let f = imm.adapted_frame(&[0.7, 2.0]).unwrap();
        let w = imm.frame_connection(&f).unwrap();
        assert!(w.get(0, 1, 0).abs() < 1e-9 && w.get(0, 1, 1).abs() < 1e-9);
        assert!(w.antisymmetry_defect() < 1e-8);
    }

    #[test]
    fn synthesized_partials_match_exact() {
        let imm = clifford();
        let trunc = Immersion::new(
            "t",
            imm.signature(),
            0,
            imm.domain().to_vec(),
            Arc::new(TruncatedChart::new(Arc::clone(imm.chart()), 2)),
        )
        .unwrap();
        let u = [0.4, 1.3];
        let exact = imm.partials(&u, 4);
        let synth = trunc.partials(&u, 4);
        for (a, b) in exact.iter().zip(&synth) {
            for (alpha, (x, y)) in a.layout().multi_indices().iter().zip(a.coeffs().iter().zip(b.coeffs())) {
                let tol = if alpha.iter().map(|&k| k as usize).sum::<usize>() == 3 {
                    1e-8
                } else {
                    1e-5
                };
                assert!((x - y).abs() < tol, "{alpha:?}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn grid_shape_and_margin() {
        let imm = clifford();
        let g = imm.sample_grid(&[3, 4], 0.1).unwrap();
        assert_eq!(g.len(), 12);
        assert!((g[0][0] - 0.6).abs() < 1e-12 && (g[11][1] - 5.4).abs() < 1e-12);
        assert!(imm.sample_grid(&[3], 0.1).is_err());
    }

    #[test]
    fn degenerate_metric_is_reported() {
        // both partials vanish at u = 0
        let comps = vec![
            Expr::constant(1.0),
            Expr::factor(1.0, FactorKind::Poly(2), &[1.0, 0.0], 0.0),
            Expr::factor(1.0, FactorKind::Poly(2), &[0.0, 1.0], 0.0),
            Expr::zero(),
        ];
        let imm = Immersion::new(
            "flat",
            Signature::new(4, 0).unwrap(),
            0,
            vec![(-1.0, 1.0), (-1.0, 1.0)],
            Arc::new(ExprChart::new(2, comps)),
        )
        .unwrap();
        assert!(matches!(
            imm.induced_metric(&[0.0, 0.0]),
            Err(GeomError::DegenerateMetric { .. })
        ));
    }
}
