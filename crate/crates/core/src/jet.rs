//! Truncated multivariate Taylor series ("jets").
//!
//! A [`Jet`] in `n` variables of order `p` stores the Taylor coefficients
//! `c_α = ∂^α f / α!` for every multi-index `|α| ≤ p`. Arithmetic and the
//! elementary functions propagate them exactly, so charts written against
//! jets yield exact mixed partials of any order.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

/// Multi-index bookkeeping shared by all jets with the same `(n, p)`.
#[derive(Debug)]
pub struct JetLayout {
    nvars: usize,
    order: usize,
    indices: Vec<Vec<u8>>,
    lookup: HashMap<Vec<u8>, usize>,
    products: Vec<(u32, u32, u32)>,
    factorials: Vec<f64>,
}

impl JetLayout {
    /// Returns the (cached) layout for `nvars` variables truncated at `order`.
    pub fn get(nvars: usize, order: usize) -> Arc<JetLayout> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<JetLayout>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("jet layout cache poisoned");
        Arc::clone(
            guard
                .entry((nvars, order))
                .or_insert_with(|| Arc::new(JetLayout::build(nvars, order))),
        )
    }

    fn build(nvars: usize, order: usize) -> JetLayout {
        let mut indices: Vec<Vec<u8>> = Vec::new();
        for total in 0..=order {
            let mut cur = vec![0u8; nvars];
            fill(&mut indices, &mut cur, 0, total);
        }
        let lookup: HashMap<Vec<u8>, usize> = indices.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
        let mut products = Vec::new();
        for (i, a) in indices.iter().enumerate() {
            for (j, b) in indices.iter().enumerate() {
                let sum: Vec<u8> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if let Some(&k) = lookup.get(&sum) {
                    products.push((i as u32, j as u32, k as u32));
                }
            }
        }
        let mut factorials = vec![1.0; order + 2];
        for k in 1..factorials.len() {
            factorials[k] = factorials[k - 1] * k as f64;
        }
        JetLayout {
            nvars,
            order,
            indices,
            lookup,
            products,
            factorials,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn multi_indices(&self) -> &[Vec<u8>] {
        &self.indices
    }

    pub fn position(&self, alpha: &[u8]) -> Option<usize> {
        self.lookup.get(alpha).copied()
    }

    /// `α! = Π α_i!`.
    pub fn alpha_factorial(&self, alpha: &[u8]) -> f64 {
        alpha.iter().map(|&a| self.factorials[a as usize]).product()
    }
}

// all multi-indices of exactly `remaining` total degree over positions pos..
fn fill(out: &mut Vec<Vec<u8>>, cur: &mut Vec<u8>, pos: usize, remaining: usize) {
    if pos + 1 == cur.len() {
        cur[pos] = remaining as u8;
        out.push(cur.clone());
        cur[pos] = 0;
        return;
    }
    if cur.is_empty() {
        if remaining == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for k in (0..=remaining).rev() {
        cur[pos] = k as u8;
        fill(out, cur, pos + 1, remaining - k);
    }
    cur[pos] = 0;
}

/// A truncated Taylor expansion around a point.
#[derive(Clone, Debug)]
pub struct Jet {
    layout: Arc<JetLayout>,
    coeffs: Vec<f64>,
}

impl Jet {
    pub fn constant(layout: &Arc<JetLayout>, value: f64) -> Jet {
        let mut coeffs = vec![0.0; layout.len()];
        coeffs[0] = value;
        Jet {
            layout: Arc::clone(layout),
            coeffs,
        }
    }

    /// The coordinate function `u_i` expanded around `value`.
    pub fn variable(layout: &Arc<JetLayout>, i: usize, value: f64) -> Jet {
        let mut jet = Jet::constant(layout, value);
        if layout.order >= 1 {
            let mut alpha = vec![0u8; layout.nvars];
            alpha[i] = 1;
            let pos = layout.position(&alpha).expect("first-order index");
            jet.coeffs[pos] = 1.0;
        }
        jet
    }

    /// Jets of all coordinate functions at the point `u`.
    pub fn variables(u: &[f64], order: usize) -> Vec<Jet> {
        let layout = JetLayout::get(u.len(), order);
        u.iter()
            .enumerate()
            .map(|(i, &x)| Jet::variable(&layout, i, x))
            .collect()
    }

    /// Builds a jet from raw Taylor coefficients in layout order.
    pub fn from_coeffs(layout: &Arc<JetLayout>, coeffs: Vec<f64>) -> Jet {
        assert_eq!(coeffs.len(), layout.len());
        Jet {
            layout: Arc::clone(layout),
            coeffs,
        }
    }

    pub fn layout(&self) -> &Arc<JetLayout> {
        &self.layout
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `∂^α f` at the expansion point, or `None` beyond the truncation order.
    pub fn derivative(&self, alpha: &[u8]) -> Option<f64> {
        let pos = self.layout.position(alpha)?;
        Some(self.coeffs[pos] * self.layout.alpha_factorial(alpha))
    }

    /// `∂f/∂u_i` as a jet one order lower.
    pub fn partial(&self, i: usize) -> Jet {
        let order = self.layout.order.checked_sub(1).expect("partial of an order-0 jet");
        let layout = JetLayout::get(self.layout.nvars, order);
        let mut coeffs = vec![0.0; layout.len()];
        let mut up = vec![0u8; self.layout.nvars];
        for (pos, alpha) in layout.indices.iter().enumerate() {
            up.copy_from_slice(alpha);
            up[i] += 1;
            let src = self.layout.position(&up).expect("raised index within order");
            coeffs[pos] = (alpha[i] as f64 + 1.0) * self.coeffs[src];
        }
        Jet { layout, coeffs }
    }

    /// Drops all coefficients above `order`.
    pub fn truncate(&self, order: usize) -> Jet {
        assert!(order <= self.layout.order);
        let layout = JetLayout::get(self.layout.nvars, order);
        let coeffs = self.coeffs[..layout.len()].to_vec();
        Jet { layout, coeffs }
    }

    pub fn scale(&self, k: f64) -> Jet {
        Jet {
            layout: Arc::clone(&self.layout),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add_const(&self, k: f64) -> Jet {
        let mut out = self.clone();
        out.coeffs[0] += k;
        out
    }

    /// `f ∘ self` given `derivs[k] = f^(k)(self.value())` for `k ≤ order`.
    pub fn compose(&self, derivs: &[f64]) -> Jet {
        let p = self.layout.order;
        debug_assert!(derivs.len() > p);
        let mut delta = self.clone();
        delta.coeffs[0] = 0.0;
        let fact = &self.layout.factorials;
        let mut acc = Jet::constant(&self.layout, derivs[p] / fact[p]);
        for k in (0..p).rev() {
            acc = &acc * &delta;
            acc.coeffs[0] += derivs[k] / fact[k];
        }
        acc
    }

    fn derivs_cyclic(&self, base: [f64; 4]) -> Vec<f64> {
        (0..=self.layout.order).map(|k| base[k % 4]).collect()
    }

    pub fn sin(&self) -> Jet {
        let (s, c) = self.value().sin_cos();
        self.compose(&self.derivs_cyclic([s, c, -s, -c]))
    }

    pub fn cos(&self) -> Jet {
        let (s, c) = self.value().sin_cos();
        self.compose(&self.derivs_cyclic([c, -s, -c, s]))
    }

    pub fn sinh(&self) -> Jet {
        let (s, c) = (self.value().sinh(), self.value().cosh());
        self.compose(&self.derivs_cyclic([s, c, s, c]))
    }

    pub fn cosh(&self) -> Jet {
        let (s, c) = (self.value().sinh(), self.value().cosh());
        self.compose(&self.derivs_cyclic([c, s, c, s]))
    }

    pub fn exp(&self) -> Jet {
        let e = self.value().exp();
        self.compose(&vec![e; self.layout.order + 1])
    }

    /// Integer power, negative exponents included.
    pub fn powi(&self, k: i32) -> Jet {
        let x = self.value();
        let derivs: Vec<f64> = (0..=self.layout.order)
            .map(|j| {
                let mut falling = 1.0;
                for i in 0..j {
                    falling *= (k - i as i32) as f64;
                }
                if falling == 0.0 {
                    0.0
                } else {
                    falling * x.powi(k - j as i32)
                }
            })
            .collect();
        self.compose(&derivs)
    }

    pub fn powf(&self, k: f64) -> Jet {
        let x = self.value();
        let derivs: Vec<f64> = (0..=self.layout.order)
            .map(|j| {
                let mut falling = 1.0;
                for i in 0..j {
                    falling *= k - i as f64;
                }
                falling * x.powf(k - j as f64)
            })
            .collect();
        self.compose(&derivs)
    }

    pub fn sqrt(&self) -> Jet {
        self.powf(0.5)
    }

    pub fn recip(&self) -> Jet {
        self.powi(-1)
    }

    pub fn div(&self, rhs: &Jet) -> Jet {
        self * &rhs.recip()
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        Jet {
            layout: Arc::clone(&self.layout),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        Jet {
            layout: Arc::clone(&self.layout),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        debug_assert!(Arc::ptr_eq(&self.layout, &rhs.layout));
        let mut coeffs = vec![0.0; self.coeffs.len()];
        for &(i, j, k) in &self.layout.products {
            coeffs[k as usize] += self.coeffs[i as usize] * rhs.coeffs[j as usize];
        }
        Jet {
            layout: Arc::clone(&self.layout),
            coeffs,
        }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}
