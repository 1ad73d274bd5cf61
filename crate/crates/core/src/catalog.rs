//! Built-in surfaces with their expected geometry.
//!
//! Every entry is an [`ExprChart`], so it can be exported in the chart text
//! format and re-parsed. Expected values carry a [`Provenance`] saying
//! whether they are quoted results, trivial identities or derived here.

use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::Arc;

use serde::Serialize;

use crate::chart::{Expr, ExprChart, FactorKind};
use crate::error::{GeomError, Result};
use crate::immersion::Immersion;
use crate::indefinite::{project_out, CausalCharacter, Signature};
use crate::spectral::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Stated in the source literature.
    Paper,
    /// Immediate from the construction.
    Trivial,
    /// Worked out independently and checked by an oracle.
    Derived,
}

/// A measurable expectation about an entry.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    Verdict {
        verdict: Verdict,
    },
    Eigenvalue {
        value: f64,
        tol: f64,
    },
    /// Fitted eigenvalue equals `n(1 + ε α̂²)` from the measured `α̂`.
    EigenvalueFromMeanCurvature {
        tol: f64,
    },
    ConstantComponentZero,
    MeanCurvatureZero,
    MeanCurvatureCharacter {
        character: CausalCharacter,
    },
    MeanCurvatureParallel,
    /// Sectional curvature `S / n(n-1)`.
    ConstantCurvature {
        value: f64,
    },
    NormalCurvatureZero,
    ScalarCurvature {
        value: f64,
    },
    SquaredNormH {
        value: f64,
    },
    AlphaHat {
        value: f64,
    },
    /// `A_r = value · I` for sphere normal `r`.
    ShapeOperator {
        normal: usize,
        value: f64,
    },
    /// Induced metric equals the constant diagonal metric.
    FlatChartMetric {
        diagonal: Vec<f64>,
    },
    /// `ω_12(e_2) = -tan u`.
    ConnectionTanU,
    /// `ν̃ + (e_3∧e_1∧e_2 - e_4∧e_1∧e_2)/√2` is constant and equals the fitted `c`.
    AssembledConstantComponent,
    /// Closed-form decomposition matches the fit; `c` constant; `Δν̃_p = λ_p ν̃_p`.
    UmbilicalDecomposition,
    /// The closed-form decomposition is rejected as flat.
    FlatUmbilical,
    LaplacianAbove {
        value: f64,
    },
    LaplacianBelow {
        value: f64,
    },
    BilaplacianBelow {
        value: f64,
    },
    /// `Δē = n α̂ ν̃ + n ē` by the numeric route.
    CompanionLaplacian,
    /// `Δē = -Δν̃`.
    CompanionOpposite,
    UmbilicalCriterion {
        holds: bool,
    },
    UmbilicalCriterionNullMean,
    /// Linear annihilating polynomial of `τ = Δν̃` with this root.
    AnnihilatingRoot {
        value: f64,
        tol: f64,
    },
    /// Light-cone curve constraints hold to `tol`.
    NullCurve {
        tol: f64,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct Expectation {
    #[serde(flatten)]
    pub claim: Claim,
    pub source: Provenance,
}

fn expect(claim: Claim, source: Provenance) -> Expectation {
    Expectation { claim, source }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub immersion: Immersion,
    pub expected: Vec<Expectation>,
    /// Default grid, one count per parameter.
    pub grid: Vec<usize>,
    pub parameters: Vec<(String, f64)>,
    pub null_curve: Option<NullCurve>,
}

impl CatalogEntry {
    /// Entry for a user surface: no expectations, default grid.
    pub fn from_immersion(immersion: Immersion) -> CatalogEntry {
        let n = immersion.dim();
        CatalogEntry {
            name: immersion.name().to_string(),
            description: "user chart".into(),
            immersion,
            expected: vec![],
            grid: vec![if n <= 2 { 9 } else { 5 }; n],
            parameters: vec![],
            null_curve: None,
        }
    }

    pub fn n(&self) -> usize {
        self.immersion.dim()
    }

    /// JSON description used by `catalog show`.
    pub fn describe(&self) -> serde_json::Value {
        let imm = &self.immersion;
        serde_json::json!({
            "name": self.name,
            "description": self.description,
            "n": imm.dim(),
            "index": imm.index(),
            "ambient": { "m": imm.signature().dim(), "s": imm.signature().index() },
            "domain": imm.domain(),
            "default_grid": self.grid,
            "parameters": self.parameters.iter().map(|(k, v)| serde_json::json!({"name": k, "value": v})).collect::<Vec<_>>(),
            "expected": self.expected,
            "chart": imm.to_chart_file().map(|c| c.to_text()),
        })
    }
}

fn x(i: usize, n: usize) -> Vec<f64> {
    let mut a = vec![0.0; n];
    a[i] = 1.0;
    a
}

fn f(coef: f64, kind: FactorKind, var: usize, n: usize) -> Expr {
    Expr::factor(coef, kind, &x(var, n), 0.0)
}

/// `(1/√2)(cos u, sin u, cos v, sin v, 0)` in `E^5_1`.
pub fn clifford_torus() -> CatalogEntry {
    let r = FRAC_1_SQRT_2;
    let comps = vec![
        f(r, FactorKind::Cos, 0, 2),
        f(r, FactorKind::Sin, 0, 2),
        f(r, FactorKind::Cos, 1, 2),
        f(r, FactorKind::Sin, 1, 2),
        Expr::zero(),
    ];
    let imm = Immersion::new(
        "clifford_torus",
        Signature::new(5, 1).expect("valid"),
        0,
        vec![(0.0, 6.0), (0.0, 6.0)],
        Arc::new(ExprChart::new(2, comps)),
    )
    .expect("valid chart");
    use Provenance::*;
    CatalogEntry {
        name: "clifford_torus".into(),
        description: "Clifford torus in a totally geodesic 3-sphere of de Sitter 4-space".into(),
        immersion: imm,
        expected: vec![
            expect(Claim::MeanCurvatureZero, Paper),
            expect(Claim::ConstantCurvature { value: 0.0 }, Paper),
            expect(Claim::NormalCurvatureZero, Derived),
            expect(
                Claim::Verdict {
                    verdict: Verdict::OneTypeThroughOrigin,
                },
                Paper,
            ),
            expect(Claim::Eigenvalue { value: 2.0, tol: 1e-6 }, Paper),
            expect(Claim::ConstantComponentZero, Paper),
            expect(Claim::UmbilicalCriterion { holds: false }, Trivial),
            expect(Claim::AnnihilatingRoot { value: 2.0, tol: 1e-3 }, Derived),
        ],
        grid: vec![9, 9],
        parameters: vec![],
        null_curve: None,
    }
}

/// `(1/√2)(0, cos u, sin u, cosh v, sinh v)` in `E^5_1`.
pub fn pr_clifford_torus() -> CatalogEntry {
    let r = FRAC_1_SQRT_2;
    let comps = vec![
        Expr::zero(),
        f(r, FactorKind::Cos, 0, 2),
        f(r, FactorKind::Sin, 0, 2),
        f(r, FactorKind::Cosh, 1, 2),
        f(r, FactorKind::Sinh, 1, 2),
    ];
    let imm = Immersion::new(
        "pr_clifford_torus",
        Signature::new(5, 1).expect("valid"),
        1,
        vec![(0.0, 6.0), (-1.0, 1.0)],
        Arc::new(ExprChart::new(2, comps)),
    )
    .expect("valid chart");
    use Provenance::*;
    CatalogEntry {
        name: "pr_clifford_torus".into(),
        description: "Lorentzian product of a circle and a hyperbola in de Sitter 4-space".into(),
        immersion: imm,
        expected: vec![
            expect(Claim::MeanCurvatureZero, Paper),
            expect(Claim::ConstantCurvature { value: 0.0 }, Paper),
            expect(Claim::NormalCurvatureZero, Paper),
            expect(
                Claim::Verdict {
                    verdict: Verdict::OneTypeThroughOrigin,
                },
                Paper,
            ),
            expect(Claim::Eigenvalue { value: 2.0, tol: 1e-6 }, Paper),
            expect(Claim::ConstantComponentZero, Paper),
        ],
        grid: vec![9, 9],
        parameters: vec![],
        null_curve: None,
    }
}

/// `(1, sin u, cos u cos v, cos u sin v, 1)` in `E^5_1` with its null, parallel `Ĥ`.
pub fn marginally_trapped_surface() -> CatalogEntry {
    let n = 2;
    let sphere = [
        f(1.0, FactorKind::Sin, 0, n),
        f(1.0, FactorKind::Cos, 0, n).mul(&f(1.0, FactorKind::Cos, 1, n)),
        f(1.0, FactorKind::Cos, 0, n).mul(&f(1.0, FactorKind::Sin, 1, n)),
    ];
    let mut comps = vec![Expr::constant(1.0)];
    comps.extend(sphere.iter().cloned());
    comps.push(Expr::constant(1.0));
    let r = FRAC_1_SQRT_2;
    let hint = |first: f64, last: f64| -> Vec<Expr> {
        let mut h = vec![Expr::constant(first * r)];
        h.extend(sphere.iter().map(|e| e.scale(r)));
        h.push(Expr::constant(last * r));
        h
    };
    let imm = Immersion::new(
        "marginally_trapped",
        Signature::new(5, 1).expect("valid"),
        0,
        vec![(-1.2, 1.2), (0.0, 6.0)],
        Arc::new(ExprChart::new(n, comps)),
    )
    .and_then(|i| i.with_hints(vec![hint(-1.0, 0.0), hint(1.0, 2.0)]))
    .expect("valid chart");
    use Provenance::*;
    CatalogEntry {
        name: "marginally_trapped".into(),
        description: "Totally umbilical marginally trapped spacelike surface in de Sitter 4-space".into(),
        immersion: imm,
        expected: vec![
            expect(Claim::ShapeOperator { normal: 0, value: -r }, Paper),
            expect(Claim::ShapeOperator { normal: 1, value: -r }, Paper),
            expect(Claim::ConnectionTanU, Paper),
            expect(
                Claim::MeanCurvatureCharacter {
                    character: CausalCharacter::Null,
                },
                Paper,
            ),
            expect(Claim::MeanCurvatureParallel, Paper),
            expect(Claim::ConstantCurvature { value: 1.0 }, Paper),
            expect(Claim::NormalCurvatureZero, Paper),
            expect(
                Claim::Verdict {
                    verdict: Verdict::OneTypeWithConstant,
                },
                Paper,
            ),
            expect(Claim::Eigenvalue { value: 2.0, tol: 1e-5 }, Paper),
            expect(Claim::AssembledConstantComponent, Paper),
            expect(Claim::UmbilicalCriterionNullMean, Paper),
        ],
        grid: vec![9, 9],
        parameters: vec![],
        null_curve: None,
    }
}

// Orthonormal completion of `fixed` (itself orthonormal with `signs`) by
// projected coordinate axes, spacelike members first.
fn complete_basis(sig: Signature, fixed: &[Vec<f64>], signs: &[f64]) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    let m = sig.dim();
    let want = m - fixed.len();
    let mut basis = fixed.to_vec();
    let mut bsigns = signs.to_vec();
    for ratio in [0.1, 1e-6] {
        for a in 0..m {
            if basis.len() == m {
                break;
            }
            let mut w = sig.basis(a);
            project_out(sig, &mut w, &basis, &bsigns);
            let q = sig.dot(&w, &w);
            let e2: f64 = w.iter().map(|v| v * v).sum();
            if e2 > 1e-12 && q.abs() > ratio * e2 {
                let k = 1.0 / q.abs().sqrt();
                basis.push(w.iter().map(|v| v * k).collect());
                bsigns.push(q.signum());
            }
        }
    }
    if basis.len() != m {
        return Err(GeomError::InvalidParameter(
            "could not complete an orthonormal basis".into(),
        ));
    }
    let mut out: Vec<(Vec<f64>, f64)> = basis.into_iter().zip(bsigns).skip(fixed.len()).collect();
    out.sort_by(|a, b| b.1.total_cmp(&a.1));
    debug_assert_eq!(out.len(), want);
    Ok(out.into_iter().unzip())
}

// Hyperspherical coordinates on `S^{k-1} ⊂ R^k` using variables
// `first..first+k-1`; the last variable is the azimuth.
fn unit_sphere(k: usize, first: usize, nvars: usize) -> Vec<Expr> {
    if k == 1 {
        return vec![Expr::constant(1.0)];
    }
    let c = f(1.0, FactorKind::Cos, first, nvars);
    let mut out: Vec<Expr> = unit_sphere(k - 1, first + 1, nvars).iter().map(|e| e.mul(&c)).collect();
    out.push(f(1.0, FactorKind::Sin, first, nvars));
    out
}

fn sphere_domain(k: usize) -> Vec<(f64, f64)> {
    match k {
        0 | 1 => vec![],
        _ => {
            let mut d = vec![(-0.9, 0.9); k - 2];
            d.push((0.2, 2.8));
            d
        }
    }
}

/// `⟨y,y⟩ = σ` in `R^{p+q}` with `p` spacelike then `q` timelike coordinates.
/// Returns components, domain and the index of the induced metric.
fn pseudo_sphere(p: usize, q: usize, sigma: f64) -> Result<(Vec<Expr>, Vec<(f64, f64)>, usize)> {
    let nvars = p + q - 1;
    let hyper = (0.3, 1.3);
    if sigma > 0.0 {
        if p == 0 {
            return Err(GeomError::InvalidParameter(
                "no spacelike directions for a positive pseudo-sphere".into(),
            ));
        }
        if q == 0 {
            return Ok((unit_sphere(p, 0, nvars), sphere_domain(p), 0));
        }
        let ys = unit_sphere(p, 1, nvars);
        let yt = unit_sphere(q, p, nvars);
        let ch = f(1.0, FactorKind::Cosh, 0, nvars);
        let sh = f(1.0, FactorKind::Sinh, 0, nvars);
        let mut comps: Vec<Expr> = ys.iter().map(|e| e.mul(&ch)).collect();
        comps.extend(yt.iter().map(|e| e.mul(&sh)));
        let mut dom = vec![hyper];
        dom.extend(sphere_domain(p));
        dom.extend(sphere_domain(q));
        Ok((comps, dom, q))
    } else {
        if q == 0 {
            return Err(GeomError::InvalidParameter(
                "no timelike directions for a negative pseudo-sphere".into(),
            ));
        }
        if p == 0 {
            return Ok((unit_sphere(q, 0, nvars), sphere_domain(q), q - 1));
        }
        let ys = unit_sphere(p, 1, nvars);
        let yt = unit_sphere(q, p, nvars);
        let ch = f(1.0, FactorKind::Cosh, 0, nvars);
        let sh = f(1.0, FactorKind::Sinh, 0, nvars);
        let mut comps: Vec<Expr> = ys.iter().map(|e| e.mul(&sh)).collect();
        comps.extend(yt.iter().map(|e| e.mul(&ch)));
        let mut dom = vec![hyper];
        dom.extend(sphere_domain(p));
        dom.extend(sphere_domain(q));
        Ok((comps, dom, q - 1))
    }
}

fn linear_combination(constant: &[f64], terms: &[(Expr, Vec<f64>)], m: usize) -> Vec<Expr> {
    (0..m)
        .map(|i| {
            let mut e = Expr::constant(constant[i]);
            for (t, dir) in terms {
                if dir[i] != 0.0 {
                    e = e.add(&t.scale(dir[i]));
                }
            }
            e
        })
        .collect()
}

/// `{x ∈ S^{n+1}_s : ⟨x,a⟩ = τ}` with unit normal `N = (a - τx)/√|⟨a,a⟩ - τ²|`.
/// A null `a` gives the pseudo-horosphere.
pub fn umbilical_hypersurface(name: &str, n: usize, sig: Signature, a: &[f64], tau: f64) -> Result<CatalogEntry> {
    let m = sig.dim();
    if m != n + 2 || a.len() != m {
        return Err(GeomError::DimensionMismatch {
            expected: n + 2,
            found: if m != n + 2 { m } else { a.len() },
        });
    }
    let kappa = sig.dot(a, a);
    let kr = kappa.round();
    if (kappa - kr).abs() > 1e-12 || kr.abs() > 1.0 {
        return Err(GeomError::InvalidParameter(format!(
            "<a,a> must be -1, 0 or 1, got {kappa}"
        )));
    }
    if kr == 0.0 {
        return horosphere(name, n, sig, a, tau);
    }
    let kappa = kr;
    let gap = kappa - tau * tau;
    if gap.abs() < 1e-12 {
        return Err(GeomError::InvalidParameter("<a,a> - tau^2 must be nonzero".into()));
    }
    let (f_basis, f_signs) = complete_basis(sig, &[a.to_vec()], &[kappa])?;
    let p = f_signs.iter().filter(|&&s| s > 0.0).count();
    let q = f_signs.len() - p;
    let sigma = (gap / kappa).signum();
    let rho = (gap / kappa).abs().sqrt();
    let (y, domain, index) = pseudo_sphere(p, q, sigma)?;
    let center: Vec<f64> = a.iter().map(|v| v * tau / kappa).collect();
    let terms: Vec<(Expr, Vec<f64>)> = y
        .into_iter()
        .zip(&f_basis)
        .map(|(e, dir)| (e, dir.iter().map(|v| v * rho).collect()))
        .collect();
    let comps = linear_combination(&center, &terms, m);
    let d = gap.abs().sqrt();
    let hint: Vec<Expr> = comps
        .iter()
        .zip(a)
        .map(|(xi, ai)| Expr::constant(ai / d).add(&xi.scale(-tau / d)))
        .collect();
    let imm = Immersion::new(name, sig, index, domain, Arc::new(ExprChart::new(n, comps)))?.with_hints(vec![hint])?;
    let k = kappa / gap;
    use Provenance::*;
    Ok(CatalogEntry {
        name: name.into(),
        description: format!("totally umbilical hypersurface <x,a> = {tau} with <a,a> = {kappa}"),
        immersion: imm,
        expected: vec![
            expect(Claim::ConstantCurvature { value: k }, Paper),
            expect(
                Claim::ShapeOperator {
                    normal: 0,
                    value: tau / d,
                },
                Paper,
            ),
            expect(Claim::AlphaHat { value: tau / d }, Derived),
            expect(
                Claim::Verdict {
                    verdict: Verdict::OneTypeWithConstant,
                },
                Paper,
            ),
            expect(
                Claim::Eigenvalue {
                    value: n as f64 * k,
                    tol: 1e-5,
                },
                Derived,
            ),
            expect(Claim::EigenvalueFromMeanCurvature { tol: 1e-5 }, Paper),
            expect(Claim::UmbilicalDecomposition, Paper),
            expect(Claim::UmbilicalCriterion { holds: true }, Paper),
        ],
        grid: vec![if n == 2 { 9 } else { 5 }; n],
        parameters: vec![("<a,a>".into(), kappa), ("tau".into(), tau)],
        null_curve: None,
    })
}

/// Paraboloid chart `x(w) = ((1 - ⟨w,w⟩)/(2τ)) a + τ b + w` over
/// `w ⊥ span{a, b}`, with `b` the null partner of `a` (`⟨a,b⟩ = 1`).
pub fn horosphere(name: &str, n: usize, sig: Signature, a: &[f64], tau: f64) -> Result<CatalogEntry> {
    let m = sig.dim();
    if m != n + 2 || a.len() != m {
        return Err(GeomError::DimensionMismatch {
            expected: n + 2,
            found: m,
        });
    }
    let an: f64 = a.iter().map(|v| v * v).sum();
    if an == 0.0 || sig.dot(a, a).abs() > 1e-12 * an {
        return Err(GeomError::InvalidParameter(
            "horosphere needs a nonzero null vector a".into(),
        ));
    }
    if tau == 0.0 {
        return Err(GeomError::InvalidParameter("horosphere needs tau != 0".into()));
    }
    // b = ā / ‖a‖², ā with timelike coordinates negated
    let b: Vec<f64> = a.iter().enumerate().map(|(i, v)| sig.sign(i) * v / an).collect();
    let r = FRAC_1_SQRT_2;
    let plus: Vec<f64> = a.iter().zip(&b).map(|(p, q)| r * (p + q)).collect();
    let minus: Vec<f64> = a.iter().zip(&b).map(|(p, q)| r * (p - q)).collect();
    let (w_basis, w_signs) = complete_basis(sig, &[plus, minus], &[1.0, -1.0])?;
    let constant: Vec<f64> = a.iter().zip(&b).map(|(ai, bi)| ai / (2.0 * tau) + tau * bi).collect();
    let mut terms = Vec::new();
    for (k, (dir, eps)) in w_basis.iter().zip(&w_signs).enumerate() {
        terms.push((f(1.0, FactorKind::Poly(1), k, n), dir.clone()));
        let quad: Vec<f64> = a.iter().map(|ai| -eps * ai / (2.0 * tau)).collect();
        terms.push((f(1.0, FactorKind::Poly(2), k, n), quad));
    }
    let comps = linear_combination(&constant, &terms, m);
    let hint: Vec<Expr> = comps
        .iter()
        .zip(a)
        .map(|(xi, ai)| Expr::constant(ai / tau).add(&xi.scale(-1.0)))
        .collect();
    let index = w_signs.iter().filter(|&&s| s < 0.0).count();
    let imm = Immersion::new(
        name,
        sig,
        index,
        vec![(-1.0, 1.0); n],
        Arc::new(ExprChart::new(n, comps)),
    )?
    .with_hints(vec![hint])?;
    use Provenance::*;
    Ok(CatalogEntry {
        name: name.into(),
        description: format!("pseudo-horosphere <x,a> = {tau} with a null, n = {n}"),
        immersion: imm,
        expected: vec![
            expect(Claim::ConstantCurvature { value: 0.0 }, Paper),
            expect(
                Claim::FlatChartMetric {
                    diagonal: w_signs.clone(),
                },
                Derived,
            ),
            expect(Claim::SquaredNormH { value: -(n as f64) }, Paper),
            expect(Claim::AlphaHat { value: 1.0 }, Paper),
            expect(Claim::ShapeOperator { normal: 0, value: 1.0 }, Paper),
            expect(
                Claim::Verdict {
                    verdict: Verdict::Biharmonic,
                },
                Paper,
            ),
            expect(Claim::LaplacianAbove { value: 0.1 }, Paper),
            expect(Claim::BilaplacianBelow { value: 1e-3 }, Paper),
            expect(Claim::CompanionLaplacian, Paper),
            expect(Claim::CompanionOpposite, Paper),
            expect(Claim::FlatUmbilical, Paper),
            expect(Claim::UmbilicalCriterion { holds: false }, Paper),
            expect(Claim::AnnihilatingRoot { value: 0.0, tol: 1e-3 }, Paper),
        ],
        grid: vec![if n == 2 { 9 } else { 5 }; n],
        parameters: vec![("tau".into(), tau)],
        null_curve: None,
    })
}

/// The six non-flat umbilical settings: both signs of `⟨a,a⟩`, `|τ|` on
/// either side of 1, a boosted `a`, and one three-dimensional case.
pub fn umbilical_settings() -> Vec<CatalogEntry> {
    let s = |m, k| Signature::new(m, k).expect("valid");
    let (ch, sh) = (0.5f64.cosh(), 0.5f64.sinh());
    vec![
        umbilical_hypersurface("umbilical_timelike_axis", 2, s(4, 1), &[0.0, 0.0, 0.0, 1.0], 0.5),
        umbilical_hypersurface("umbilical_index_two", 2, s(4, 2), &[0.0, 0.0, 0.0, 1.0], 2.0),
        umbilical_hypersurface("umbilical_boosted", 2, s(4, 1), &[ch, 0.0, 0.0, sh], 0.6),
        umbilical_hypersurface("umbilical_riemannian", 2, s(4, 0), &[1.0, 0.0, 0.0, 0.0], 0.6),
        umbilical_hypersurface("umbilical_hyperbolic", 2, s(4, 1), &[1.0, 0.0, 0.0, 0.0], 1.5),
        umbilical_hypersurface("umbilical_three_dim", 3, s(5, 1), &[1.0, 0.0, 0.0, 0.0, 0.0], 0.6),
    ]
    .into_iter()
    .map(|r| r.expect("valid umbilical setting"))
    .collect()
}

/// The null vector `(1, 0, …, 0, 1)` and `τ = 1`.
pub fn default_horosphere(n: usize) -> Result<CatalogEntry> {
    if !(2..=3).contains(&n) {
        return Err(GeomError::InvalidParameter(format!(
            "horosphere is built for n = 2 or 3, got {n}"
        )));
    }
    let m = n + 2;
    let mut a = vec![0.0; m];
    a[0] = 1.0;
    a[m - 1] = 1.0;
    let name = if n == 2 {
        "horosphere".to_string()
    } else {
        format!("horosphere_{n}")
    };
    horosphere(&name, n, Signature::new(m, 1)?, &a, 1.0)
}

/// Small round sphere of `S^3 ⊂ S^4_1`: codimension two, umbilical, `Ĥ` spacelike.
pub fn umbilical_sphere_s4() -> CatalogEntry {
    let inner =
        umbilical_hypersurface("tmp", 2, Signature::euclidean(4), &[1.0, 0.0, 0.0, 0.0], 0.6).expect("valid setting");
    let ex = inner.immersion.chart().expressions().expect("expression chart");
    let mut comps = ex.to_vec();
    comps.push(Expr::zero());
    let mut hint = inner.immersion.hints()[0].clone();
    hint.push(Expr::zero());
    let imm = Immersion::new(
        "umbilical_sphere_s4",
        Signature::new(5, 1).expect("valid"),
        0,
        inner.immersion.domain().to_vec(),
        Arc::new(ExprChart::new(2, comps)),
    )
    .and_then(|i| i.with_hints(vec![hint]))
    .expect("valid chart");
    let k = 1.0 / 0.64;
    use Provenance::*;
    CatalogEntry {
        name: "umbilical_sphere_s4".into(),
        description: "round 2-sphere of curvature 1/0.64 in a totally geodesic S^3 of de Sitter 4-space".into(),
        immersion: imm,
        expected: vec![
            expect(Claim::ConstantCurvature { value: k }, Paper),
            expect(
                Claim::MeanCurvatureCharacter {
                    character: CausalCharacter::Spacelike,
                },
                Derived,
            ),
            expect(Claim::MeanCurvatureParallel, Derived),
            expect(Claim::UmbilicalCriterion { holds: true }, Paper),
            expect(
                Claim::Verdict {
                    verdict: Verdict::OneTypeWithConstant,
                },
                Paper,
            ),
            expect(
                Claim::Eigenvalue {
                    value: 2.0 * k,
                    tol: 1e-5,
                },
                Derived,
            ),
        ],
        grid: vec![9, 9],
        parameters: vec![("tau".into(), 0.6)],
        null_curve: None,
    }
}

/// `(cosh s cos θ, cosh s sin θ, 0, 0, sinh s)`: a totally geodesic `S^2_1 ⊂ S^4_1`.
pub fn totally_geodesic() -> CatalogEntry {
    let comps = vec![
        f(1.0, FactorKind::Cosh, 0, 2).mul(&f(1.0, FactorKind::Cos, 1, 2)),
        f(1.0, FactorKind::Cosh, 0, 2).mul(&f(1.0, FactorKind::Sin, 1, 2)),
        Expr::zero(),
        Expr::zero(),
        f(1.0, FactorKind::Sinh, 0, 2),
    ];
    let imm = Immersion::new(
        "totally_geodesic",
        Signature::new(5, 1).expect("valid"),
        1,
        vec![(-1.0, 1.0), (0.0, 6.0)],
        Arc::new(ExprChart::new(2, comps)),
    )
    .expect("valid chart");
    use Provenance::*;
    CatalogEntry {
        name: "totally_geodesic".into(),
        description: "totally geodesic de Sitter plane in de Sitter 4-space".into(),
        immersion: imm,
        expected: vec![
            expect(Claim::MeanCurvatureZero, Trivial),
            expect(Claim::SquaredNormH { value: 0.0 }, Trivial),
            expect(Claim::ScalarCurvature { value: 2.0 }, Trivial),
            expect(Claim::NormalCurvatureZero, Trivial),
            expect(Claim::LaplacianBelow { value: 1e-8 }, Trivial),
            expect(
                Claim::Verdict {
                    verdict: Verdict::Harmonic,
                },
                Paper,
            ),
        ],
        grid: vec![9, 9],
        parameters: vec![],
        null_curve: None,
    }
}

/// A curve `u ↦ z(u)` in `E^m_s` given by one-variable expressions.
#[derive(Clone, Debug)]
pub struct NullCurve {
    pub components: Vec<Expr>,
    pub signature: Signature,
}

/// Largest constraint violations of a light-cone curve over a grid.
#[derive(Clone, Debug, Serialize)]
pub struct NullCurveReport {
    /// `sup |⟨z,z⟩|`
    pub position: f64,
    /// `sup |⟨z',z'⟩ - 4|`
    pub speed: f64,
    /// `sup |⟨z'',z''⟩|`
    pub acceleration: f64,
    /// `inf ‖z'''‖`
    pub jerk_min: f64,
}

impl NullCurveReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.position < tol && self.speed < tol && self.acceleration < tol && self.jerk_min > tol
    }
}

impl NullCurve {
    pub fn new(components: Vec<Expr>, signature: Signature) -> Result<Self> {
        if components.len() != signature.dim() {
            return Err(GeomError::DimensionMismatch {
                expected: signature.dim(),
                found: components.len(),
            });
        }
        Ok(NullCurve { components, signature })
    }

    /// `z^{(k)}` as expressions.
    pub fn derivative(&self, k: usize) -> Vec<Expr> {
        let mut out = self.components.clone();
        for _ in 0..k {
            out = out.iter().map(|e| e.partial(0)).collect();
        }
        out
    }

    pub fn eval(&self, k: usize, u: f64) -> Vec<f64> {
        self.derivative(k).iter().map(|e| e.eval(&[u])).collect()
    }

    pub fn scaled(&self, k: f64) -> NullCurve {
        NullCurve {
            components: self.components.iter().map(|e| e.scale(k)).collect(),
            signature: self.signature,
        }
    }
}

/// `√2 (cos u, sin u, sinh u, cosh u, 0)` in `E^5_2`.
pub fn chen_null_curve() -> NullCurve {
    let r = std::f64::consts::SQRT_2;
    let comps = vec![
        f(r, FactorKind::Cos, 0, 1),
        f(r, FactorKind::Sin, 0, 1),
        f(r, FactorKind::Sinh, 0, 1),
        f(r, FactorKind::Cosh, 0, 1),
        Expr::zero(),
    ];
    NullCurve::new(comps, Signature::new(5, 2).expect("valid")).expect("five components")
}

/// Checks `⟨z,z⟩ = 0`, `⟨z',z'⟩ = 4`, `⟨z'',z''⟩ = 0` and `z''' ≠ 0` on `grid`.
pub fn null_curve_validator(z: &NullCurve, grid: &[f64]) -> NullCurveReport {
    let sig = z.signature;
    let d: Vec<Vec<Expr>> = (0..4).map(|k| z.derivative(k)).collect();
    let at = |k: usize, u: f64| -> Vec<f64> { d[k].iter().map(|e| e.eval(&[u])).collect() };
    let mut rep = NullCurveReport {
        position: 0.0,
        speed: 0.0,
        acceleration: 0.0,
        jerk_min: f64::INFINITY,
    };
    for &u in grid {
        let (z0, z1, z2, z3) = (at(0, u), at(1, u), at(2, u), at(3, u));
        rep.position = rep.position.max(sig.dot(&z0, &z0).abs());
        rep.speed = rep.speed.max((sig.dot(&z1, &z1) - 4.0).abs());
        rep.acceleration = rep.acceleration.max(sig.dot(&z2, &z2).abs());
        rep.jerk_min = rep.jerk_min.min(crate::indefinite::norm_euclid(&z3));
    }
    rep
}

/// Tolerance for accepting a null curve.
pub const NULL_CURVE_TOL: f64 = 1e-10;

/// `L(u,v) = z(u)/(u+v) - z'(u)/2` over `domain`.
pub fn chen_flat_surface(z: &NullCurve, domain: [(f64, f64); 2]) -> Result<CatalogEntry> {
    let grid: Vec<f64> = (0..=40)
        .map(|k| domain[0].0 + (domain[0].1 - domain[0].0) * k as f64 / 40.0)
        .collect();
    let report = null_curve_validator(z, &grid);
    if !report.passes(NULL_CURVE_TOL) {
        return Err(GeomError::NullCurveRejected(format!(
            "<z,z> {:.2e}, <z',z'>-4 {:.2e}, <z'',z''> {:.2e}, inf|z'''| {:.2e}",
            report.position, report.speed, report.acceleration, report.jerk_min
        )));
    }
    let (lo, hi) = (domain[0].0 + domain[1].0, domain[0].1 + domain[1].1);
    if lo <= 1e-6 && hi >= -1e-6 {
        let u = domain[0].0.max(-domain[1].1);
        return Err(GeomError::DomainSingularity(vec![u, -u]));
    }
    let inv = Expr::factor(1.0, FactorKind::Poly(-1), &[1.0, 1.0], 0.0);
    let z0 = z.components.iter().map(|e| e.reparametrize(2, &[0]));
    let z1 = z.derivative(1).into_iter().map(|e| e.reparametrize(2, &[0]));
    let comps: Vec<Expr> = z0.zip(z1).map(|(a, b)| a.mul(&inv).add(&b.scale(-0.5))).collect();
    let imm = Immersion::new(
        "chen_flat",
        z.signature,
        1,
        domain.to_vec(),
        Arc::new(ExprChart::new(2, comps)),
    )?
    // coordinate directions are null; frame from ∂_u + ∂_v and ∂_v - ∂_u
    .with_tangent_mix(vec![vec![1.0, 1.0], vec![-1.0, 1.0]])?;
    use Provenance::*;
    Ok(CatalogEntry {
        name: "chen_flat".into(),
        description: "Lorentzian surface z(u)/(u+v) - z'(u)/2 over a light-cone curve".into(),
        immersion: imm,
        expected: vec![
            expect(Claim::NullCurve { tol: NULL_CURVE_TOL }, Derived),
            expect(Claim::MeanCurvatureZero, Paper),
            expect(Claim::NormalCurvatureZero, Paper),
            expect(Claim::ScalarCurvature { value: 2.0 }, Paper),
            expect(Claim::LaplacianBelow { value: 1e-4 }, Paper),
            expect(
                Claim::Verdict {
                    verdict: Verdict::Harmonic,
                },
                Paper,
            ),
        ],
        grid: vec![9, 9],
        parameters: vec![],
        null_curve: Some(z.clone()),
    })
}

pub fn chen_flat() -> CatalogEntry {
    chen_flat_surface(&chen_null_curve(), [(0.5, 1.5), (0.5, 1.5)]).expect("shipped curve validates")
}

/// Every built-in entry, in a fixed order.
pub fn entries() -> Vec<CatalogEntry> {
    let mut out = vec![
        clifford_torus(),
        pr_clifford_torus(),
        marginally_trapped_surface(),
        default_horosphere(2).expect("n = 2"),
        default_horosphere(3).expect("n = 3"),
    ];
    out.extend(umbilical_settings());
    out.push(umbilical_sphere_s4());
    out.push(totally_geodesic());
    out.push(chen_flat());
    out
}

pub fn names() -> Vec<String> {
    entries().into_iter().map(|e| e.name).collect()
}

pub fn get(name: &str) -> Result<CatalogEntry> {
    entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| GeomError::UnknownSurface(name.to_string()))
}
