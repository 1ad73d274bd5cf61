//! Vectors of pseudo-Euclidean space `E^m_s`.
//!
//! The metric is `diag(+1, …, +1, −1, …, −1)` with the last `s` coordinates
//! timelike. Everything downstream (frames, wedge spaces, catalog charts) uses
//! this ordering.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// Relative tolerance separating null pivots from roundoff.
pub const DEFAULT_PIVOT_TOL: f64 = 1e-9;

/// Ambient pseudo-Euclidean space `E^m_s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    m: usize,
    s: usize,
}

impl Signature {
    pub fn new(m: usize, s: usize) -> Result<Self> {
        if m == 0 || s > m {
            return Err(GeomError::InvalidSignature { m, s });
        }
        Ok(Signature { m, s })
    }

    /// Euclidean space `E^m`.
    pub fn euclidean(m: usize) -> Self {
        Signature { m, s: 0 }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn index(&self) -> usize {
        self.s
    }

    /// `ε_A` for the 0-based coordinate `a`.
    #[inline]
    pub fn sign(&self, a: usize) -> f64 {
        if a < self.m - self.s {
            1.0
        } else {
            -1.0
        }
    }

    pub fn signs(&self) -> Vec<f64> {
        (0..self.m).map(|a| self.sign(a)).collect()
    }

    /// `Σ ε_A v_A w_A` on raw coordinate slices.
    #[inline]
    pub fn dot(&self, v: &[f64], w: &[f64]) -> f64 {
        debug_assert_eq!(v.len(), self.m);
        debug_assert_eq!(w.len(), self.m);
        let p = self.m - self.s;
        let pos: f64 = v[..p].iter().zip(&w[..p]).map(|(a, b)| a * b).sum();
        let neg: f64 = v[p..].iter().zip(&w[p..]).map(|(a, b)| a * b).sum();
        pos - neg
    }

    /// Standard basis vector `f_a`.
    pub fn basis(&self, a: usize) -> Vec<f64> {
        let mut v = vec![0.0; self.m];
        v[a] = 1.0;
        v
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E^{}_{}", self.m, self.s)
    }
}

/// Causal character of a vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Null,
    Zero,
}

/// A vector of `E^m_s`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmbientVector {
    coords: Vec<f64>,
    space: Signature,
}

impl AmbientVector {
    pub fn new(space: Signature, coords: Vec<f64>) -> Result<Self> {
        if coords.len() != space.dim() {
            return Err(GeomError::DimensionMismatch {
                expected: space.dim(),
                found: coords.len(),
            });
        }
        Ok(AmbientVector { coords, space })
    }

    pub fn zero(space: Signature) -> Self {
        AmbientVector {
            coords: vec![0.0; space.dim()],
            space,
        }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn space(&self) -> Signature {
        self.space
    }

    pub fn norm_euclid(&self) -> f64 {
        norm_euclid(&self.coords)
    }
}

impl Add for &AmbientVector {
    type Output = AmbientVector;
    fn add(self, rhs: &AmbientVector) -> AmbientVector {
        assert_eq!(self.space, rhs.space, "signature mismatch");
        AmbientVector {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
            space: self.space,
        }
    }
}

impl Sub for &AmbientVector {
    type Output = AmbientVector;
    fn sub(self, rhs: &AmbientVector) -> AmbientVector {
        assert_eq!(self.space, rhs.space, "signature mismatch");
        AmbientVector {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
            space: self.space,
        }
    }
}

impl Mul<f64> for &AmbientVector {
    type Output = AmbientVector;
    fn mul(self, k: f64) -> AmbientVector {
        AmbientVector {
            coords: self.coords.iter().map(|a| a * k).collect(),
            space: self.space,
        }
    }
}

impl Neg for &AmbientVector {
    type Output = AmbientVector;
    fn neg(self) -> AmbientVector {
        self * -1.0
    }
}

/// Indefinite inner product `⟨v, w⟩`.
pub fn inner(v: &AmbientVector, w: &AmbientVector) -> Result<f64> {
    if v.space != w.space {
        return Err(GeomError::DimensionMismatch {
            expected: v.space.dim(),
            found: w.space.dim(),
        });
    }
    Ok(v.space.dot(&v.coords, &w.coords))
}

/// Classifies `v` by the sign of `⟨v, v⟩`, treating `|⟨v,v⟩| < tol·‖v‖²` as null.
pub fn causal_character(v: &AmbientVector, tol: f64) -> CausalCharacter {
    causal_character_raw(v.space, &v.coords, tol)
}

pub(crate) fn causal_character_raw(sig: Signature, v: &[f64], tol: f64) -> CausalCharacter {
    let e2 = v.iter().map(|a| a * a).sum::<f64>();
    if e2.sqrt() < tol {
        return CausalCharacter::Zero;
    }
    let q = sig.dot(v, v);
    if q.abs() < tol * e2 {
        CausalCharacter::Null
    } else if q > 0.0 {
        CausalCharacter::Spacelike
    } else {
        CausalCharacter::Timelike
    }
}

pub(crate) fn norm_euclid(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

pub(crate) fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub(crate) fn scaled(v: &[f64], k: f64) -> Vec<f64> {
    v.iter().map(|a| a * k).collect()
}

/// Removes from `w` its components along the pseudo-orthonormal vectors `basis`
/// (with self-products `signs`). Two passes for stability.
pub(crate) fn project_out(sig: Signature, w: &mut [f64], basis: &[Vec<f64>], signs: &[f64]) {
    for _ in 0..2 {
        for (e, &eps) in basis.iter().zip(signs) {
            let c = eps * sig.dot(w, e);
            axpy(-c, e, w);
        }
    }
}

/// Indefinite Gram–Schmidt on raw coordinates, continuing an existing
/// pseudo-orthonormal family `prefix`.
///
/// Each output is `w_k / sqrt|⟨w_k,w_k⟩|` where `w_k` is the input minus its
/// projections, so the change of basis is triangular with positive diagonal
/// and orientation is preserved.
pub(crate) fn gram_schmidt_raw(
    sig: Signature,
    vectors: &[Vec<f64>],
    prefix: (&[Vec<f64>], &[f64]),
    pivot_tol: f64,
) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    let mut basis: Vec<Vec<f64>> = prefix.0.to_vec();
    let mut signs: Vec<f64> = prefix.1.to_vec();
    let start = basis.len();
    for (index, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        project_out(sig, &mut w, &basis, &signs);
        let nv = norm_euclid(v);
        let nw = norm_euclid(&w);
        if nv == 0.0 || nw <= pivot_tol * nv {
            return Err(GeomError::LinearlyDependent { index });
        }
        let q = sig.dot(&w, &w);
        if q.abs() < pivot_tol * nw * nw {
            return Err(GeomError::NullPivot { index });
        }
        let k = 1.0 / q.abs().sqrt();
        basis.push(scaled(&w, k));
        signs.push(q.signum());
    }
    Ok((basis.split_off(start), signs.split_off(start)))
}

/// Pseudo-orthonormalizes `vectors`, returning the frame and the signs `ε_i`.
pub fn gram_schmidt_indefinite(vectors: &[AmbientVector], pivot_tol: f64) -> Result<(Vec<AmbientVector>, Vec<f64>)> {
    let Some(first) = vectors.first() else {
        return Ok((Vec::new(), Vec::new()));
    };
    let sig = first.space;
    if let Some(bad) = vectors.iter().find(|v| v.space != sig) {
        return Err(GeomError::DimensionMismatch {
            expected: sig.dim(),
            found: bad.space.dim(),
        });
    }
    let raw: Vec<Vec<f64>> = vectors.iter().map(|v| v.coords.clone()).collect();
    let (basis, signs) = gram_schmidt_raw(sig, &raw, (&[], &[]), pivot_tol)?;
    let out = basis
        .into_iter()
        .map(|coords| AmbientVector { coords, space: sig })
        .collect();
    Ok((out, signs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(sig: Signature, c: &[f64]) -> AmbientVector {
        AmbientVector::new(sig, c.to_vec()).unwrap()
    }

    #[test]
    fn inner_examples() {
        let e31 = Signature::new(3, 1).unwrap();
        assert_eq!(inner(&v(e31, &[0., 0., 1.]), &v(e31, &[0., 0., 1.])).unwrap(), -1.0);
        let e41 = Signature::new(4, 1).unwrap();
        let a = v(e41, &[1., -1., 0., 1.]);
        assert_eq!(inner(&a, &a).unwrap(), 1.0);
    }

    #[test]
    fn inner_on_marginally_trapped_chart_is_one() {
        let e51 = Signature::new(5, 1).unwrap();
        for &(u, w) in &[(0.1, 0.2), (-0.9, 2.5), (1.3, -0.7)] {
            let (su, cu) = f64::sin_cos(u);
            let (sw, cw) = f64::sin_cos(w);
            let x = v(e51, &[1.0, su, cu * cw, cu * sw, 1.0]);
            assert!((inner(&x, &x).unwrap() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn inner_rejects_mismatched_spaces() {
        let a = AmbientVector::zero(Signature::new(3, 1).unwrap());
        let b = AmbientVector::zero(Signature::new(3, 0).unwrap());
        assert!(matches!(inner(&a, &b), Err(GeomError::DimensionMismatch { .. })));
    }

    #[test]
    fn causal_characters() {
        let e41 = Signature::new(4, 1).unwrap();
        assert_eq!(
            causal_character(&v(e41, &[1., 0., 0., 1.]), 1e-12),
            CausalCharacter::Null
        );
        assert_eq!(
            causal_character(&v(e41, &[0., 1., 0., 0.]), 1e-12),
            CausalCharacter::Spacelike
        );
        assert_eq!(
            causal_character(&v(e41, &[0., 0., 0., 2.]), 1e-12),
            CausalCharacter::Timelike
        );
        assert_eq!(
            causal_character(&AmbientVector::zero(e41), 1e-12),
            CausalCharacter::Zero
        );
    }

    #[test]
    fn gram_schmidt_examples() {
        let e2 = Signature::euclidean(2);
        let (g, eps) = gram_schmidt_indefinite(&[v(e2, &[1., 0.]), v(e2, &[1., 1.])], DEFAULT_PIVOT_TOL).unwrap();
        assert_eq!(g[0].coords(), &[1.0, 0.0]);
        assert_eq!(g[1].coords(), &[0.0, 1.0]);
        assert_eq!(eps, vec![1.0, 1.0]);

        let e41 = Signature::new(4, 1).unwrap();
        let (g, eps) = gram_schmidt_indefinite(&[v(e41, &[0., 0., 0., 1.])], DEFAULT_PIVOT_TOL).unwrap();
        assert_eq!(g[0].coords(), &[0., 0., 0., 1.]);
        assert_eq!(eps, vec![-1.0]);

        let err = gram_schmidt_indefinite(&[v(e41, &[1., 0., 0., 1.])], DEFAULT_PIVOT_TOL);
        assert_eq!(err, Err(GeomError::NullPivot { index: 0 }));
    }

    #[test]
    fn gram_schmidt_reports_dependence() {
        let e3 = Signature::euclidean(3);
        let err = gram_schmidt_indefinite(&[v(e3, &[1., 2., 0.]), v(e3, &[2., 4., 0.])], DEFAULT_PIVOT_TOL);
        assert_eq!(err, Err(GeomError::LinearlyDependent { index: 1 }));
    }
}
