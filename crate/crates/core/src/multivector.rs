//! Grade-k exterior powers `Λ^k E^m_s` with the determinant inner product.
//!
//! Coefficients are stored densely in lexicographic order of the basis
//! subsets `I = {i_1 < … < i_k}`. The rank of a subset in that order is given
//! by [`subset_rank`] and inverted by [`subset_unrank`]; reports serialize
//! multivectors as plain coefficient arrays in this order.

use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{GeomError, Result};
use crate::indefinite::{AmbientVector, Signature};

/// Binomial coefficient `C(n, k)` (0 when `k > n`).
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Lexicographic rank of the increasing subset `subset` of `{0, …, m−1}`.
pub fn subset_rank(m: usize, subset: &[usize]) -> usize {
    let k = subset.len();
    let mut rank = 0;
    let mut next = 0;
    for (j, &i) in subset.iter().enumerate() {
        for skipped in next..i {
            rank += binomial(m - 1 - skipped, k - 1 - j);
        }
        next = i + 1;
    }
    rank
}

/// Inverse of [`subset_rank`].
pub fn subset_unrank(m: usize, k: usize, mut rank: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut candidate = 0;
    for j in 0..k {
        loop {
            let block = binomial(m - 1 - candidate, k - 1 - j);
            if rank < block {
                break;
            }
            rank -= block;
            candidate += 1;
        }
        out.push(candidate);
        candidate += 1;
    }
    out
}

/// The space `Λ^k E^m_s ≅ E^N_q`.
#[derive(Debug, PartialEq)]
pub struct MultivectorSpace {
    ambient: Signature,
    grade: usize,
    subsets: Vec<Vec<usize>>,
    signs: Vec<f64>,
}

impl MultivectorSpace {
    pub fn new(ambient: Signature, grade: usize) -> Result<Arc<Self>> {
        let m = ambient.dim();
        if grade == 0 || grade > m {
            return Err(GeomError::InvalidParameter(format!(
                "grade {grade} out of range for {ambient}"
            )));
        }
        let n = binomial(m, grade);
        let subsets: Vec<Vec<usize>> = (0..n).map(|r| subset_unrank(m, grade, r)).collect();
        let signs = subsets
            .iter()
            .map(|s| s.iter().map(|&a| ambient.sign(a)).product())
            .collect();
        Ok(Arc::new(MultivectorSpace {
            ambient,
            grade,
            subsets,
            signs,
        }))
    }

    pub fn ambient(&self) -> Signature {
        self.ambient
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    /// `N = C(m, k)`.
    pub fn dim(&self) -> usize {
        self.subsets.len()
    }

    /// Number of basis elements with self-product −1.
    pub fn index(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0.0).count()
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// `⟨⟨f_I, f_I⟩⟩ = ε_{i_1} ⋯ ε_{i_k}`.
    pub fn basis_sign(&self, rank: usize) -> f64 {
        self.signs[rank]
    }
}

/// An element of `Λ^k E^m_s`.
#[derive(Clone, Debug)]
pub struct Multivector {
    space: Arc<MultivectorSpace>,
    coeffs: Vec<f64>,
}

impl PartialEq for Multivector {
    fn eq(&self, other: &Self) -> bool {
        *self.space == *other.space && self.coeffs == other.coeffs
    }
}

impl Serialize for Multivector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl Multivector {
    pub fn zero(space: &Arc<MultivectorSpace>) -> Self {
        Multivector {
            space: Arc::clone(space),
            coeffs: vec![0.0; space.dim()],
        }
    }

    pub fn from_coeffs(space: &Arc<MultivectorSpace>, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != space.dim() {
            return Err(GeomError::DimensionMismatch {
                expected: space.dim(),
                found: coeffs.len(),
            });
        }
        Ok(Multivector {
            space: Arc::clone(space),
            coeffs,
        })
    }

    pub fn space(&self) -> &Arc<MultivectorSpace> {
        &self.space
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn norm_euclid(&self) -> f64 {
        self.coeffs.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    /// Euclidean coefficient distance, the norm used for all fitting.
    pub fn dist_euclid(&self, other: &Multivector) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn dot_euclid(&self, other: &Multivector) -> f64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: f64) -> Multivector {
        Multivector {
            space: Arc::clone(&self.space),
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }

    /// `self += k · other`.
    pub fn add_scaled(&mut self, k: f64, other: &Multivector) {
        debug_assert_eq!(self.coeffs.len(), other.coeffs.len());
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += k * b;
        }
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|a| a.is_finite())
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out.add_scaled(1.0, rhs);
        out
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out.add_scaled(-1.0, rhs);
        out
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, k: f64) -> Multivector {
        self.scale(k)
    }
}

/// Determinant of a small dense square matrix given row-major.
pub(crate) fn det(mut a: Vec<f64>, k: usize) -> f64 {
    match k {
        0 => 1.0,
        1 => a[0],
        2 => a[0] * a[3] - a[1] * a[2],
        3 => {
            a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) + a[2] * (a[3] * a[7] - a[4] * a[6])
        }
        _ => {
            let mut d = 1.0;
            for col in 0..k {
                let piv = (col..k)
                    .max_by(|&i, &j| a[i * k + col].abs().total_cmp(&a[j * k + col].abs()))
                    .unwrap_or(col);
                if a[piv * k + col] == 0.0 {
                    return 0.0;
                }
                if piv != col {
                    for c in 0..k {
                        a.swap(piv * k + c, col * k + c);
                    }
                    d = -d;
                }
                let p = a[col * k + col];
                d *= p;
                for r in col + 1..k {
                    let f = a[r * k + col] / p;
                    if f != 0.0 {
                        for c in col..k {
                            a[r * k + c] -= f * a[col * k + c];
                        }
                    }
                }
            }
            d
        }
    }
}

/// Wedge product of raw coordinate vectors into `space`.
pub(crate) fn wedge_raw(space: &Arc<MultivectorSpace>, vectors: &[&[f64]]) -> Multivector {
    let k = space.grade;
    debug_assert_eq!(vectors.len(), k);
    let coeffs = space
        .subsets
        .iter()
        .map(|subset| {
            let mut minor = Vec::with_capacity(k * k);
            for v in vectors {
                minor.extend(subset.iter().map(|&c| v[c]));
            }
            det(minor, k)
        })
        .collect();
    Multivector {
        space: Arc::clone(space),
        coeffs,
    }
}

/// `v_1 ∧ ⋯ ∧ v_k`: coefficient on `f_I` is the minor of the vectors' `I`-columns.
pub fn wedge(space: &Arc<MultivectorSpace>, vectors: &[AmbientVector]) -> Result<Multivector> {
    if vectors.len() != space.grade {
        return Err(GeomError::DimensionMismatch {
            expected: space.grade,
            found: vectors.len(),
        });
    }
    if let Some(bad) = vectors.iter().find(|v| v.space() != space.ambient) {
        return Err(GeomError::DimensionMismatch {
            expected: space.ambient.dim(),
            found: bad.space().dim(),
        });
    }
    let raw: Vec<&[f64]> = vectors.iter().map(|v| v.coords()).collect();
    Ok(wedge_raw(space, &raw))
}

/// `⟨⟨A, B⟩⟩`, diagonal on the lexicographic basis.
pub fn mv_inner(a: &Multivector, b: &Multivector) -> Result<f64> {
    if *a.space != *b.space {
        return Err(GeomError::DimensionMismatch {
            expected: a.space.dim(),
            found: b.space.dim(),
        });
    }
    Ok(a.coeffs
        .iter()
        .zip(&b.coeffs)
        .zip(&a.space.signs)
        .map(|((x, y), s)| s * x * y)
        .sum())
}

/// `⟨⟨f_1∧…∧f_k, g_1∧…∧g_k⟩⟩ = det(⟨f_i, g_j⟩)` evaluated directly on the factors.
pub fn mv_inner_decomposable(f: &[AmbientVector], g: &[AmbientVector]) -> Result<f64> {
    if f.len() != g.len() {
        return Err(GeomError::DimensionMismatch {
            expected: f.len(),
            found: g.len(),
        });
    }
    let k = f.len();
    let mut gram = Vec::with_capacity(k * k);
    for fi in f {
        for gj in g {
            gram.push(crate::indefinite::inner(fi, gj)?);
        }
    }
    Ok(det(gram, k))
}
