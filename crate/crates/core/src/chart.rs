//! Parametrized charts `u ∈ R^n ↦ x(u) ∈ R^m` with exact derivatives.
//!
//! Two chart flavours are provided:
//!
//! * [`ExprChart`]: each component is a sum of terms
//!   `coef * f_1(a_1·u + φ_1) * f_2(a_2·u + φ_2) * …` with
//!   `f ∈ {sin, cos, sinh, cosh, exp, poly_k}`. These serialize to the chart
//!   text format and are what the catalog builds.
//! * [`JetChart`]: an arbitrary closure over [`Jet`]s.
//!
//! Both give exact partials of every order. [`TruncatedChart`] caps the
//! order a chart reports, which is how a chart with only low-order
//! derivative data is modelled.
//!
//! # Text format
//!
//! ```text
//! # comments start with '#'
//! name   my_surface
//! dim    2                      # n
//! signature 5 1                 # m s
//! index  0                      # t, index of the induced metric
//! domain 0 3.14 -1 1            # lo/hi per parameter
//! component 0.5*cos[1,0;0] + -0.5*sin[0,1;0.25]*poly_2[1,1;0]
//! …                             # exactly m component lines
//! hint <expr> | <expr> | …      # optional normal hint fields, m exprs each
//! tangent_mix 1 1 ; -1 1        # optional n×n mixing of coordinate partials
//! ```
//!
//! A factor `f[a_1,…,a_n;φ]` stands for `f(a_1 u_1 + … + a_n u_n + φ)`;
//! `poly_k` is the k-th power (negative `k` allowed) and `const` is 1.

use std::fmt::{self, Write as _};
use std::sync::Arc;

use crate::error::{GeomError, Result};
use crate::indefinite::Signature;
use crate::jet::Jet;

/// Elementary functions allowed in chart expressions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FactorKind {
    Sin,
    Cos,
    Sinh,
    Cosh,
    Exp,
    Poly(i32),
    Const,
}

impl FactorKind {
    fn name(&self) -> String {
        match self {
            FactorKind::Sin => "sin".into(),
            FactorKind::Cos => "cos".into(),
            FactorKind::Sinh => "sinh".into(),
            FactorKind::Cosh => "cosh".into(),
            FactorKind::Exp => "exp".into(),
            FactorKind::Poly(k) => format!("poly_{k}"),
            FactorKind::Const => "const".into(),
        }
    }

    fn parse(name: &str) -> Option<FactorKind> {
        Some(match name {
            "sin" => FactorKind::Sin,
            "cos" => FactorKind::Cos,
            "sinh" => FactorKind::Sinh,
            "cosh" => FactorKind::Cosh,
            "exp" => FactorKind::Exp,
            "const" => FactorKind::Const,
            _ => FactorKind::Poly(name.strip_prefix("poly_")?.parse().ok()?),
        })
    }

    fn eval(&self, s: f64) -> f64 {
        match self {
            FactorKind::Sin => s.sin(),
            FactorKind::Cos => s.cos(),
            FactorKind::Sinh => s.sinh(),
            FactorKind::Cosh => s.cosh(),
            FactorKind::Exp => s.exp(),
            FactorKind::Poly(k) => s.powi(*k),
            FactorKind::Const => 1.0,
        }
    }

    fn eval_jet(&self, s: &Jet) -> Jet {
        match self {
            FactorKind::Sin => s.sin(),
            FactorKind::Cos => s.cos(),
            FactorKind::Sinh => s.sinh(),
            FactorKind::Cosh => s.cosh(),
            FactorKind::Exp => s.exp(),
            FactorKind::Poly(k) => s.powi(*k),
            FactorKind::Const => Jet::constant(s.layout(), 1.0),
        }
    }

    /// `f'` as `(scale, kind)`; `None` when the derivative vanishes.
    fn derivative(&self) -> Option<(f64, FactorKind)> {
        match self {
            FactorKind::Sin => Some((1.0, FactorKind::Cos)),
            FactorKind::Cos => Some((-1.0, FactorKind::Sin)),
            FactorKind::Sinh => Some((1.0, FactorKind::Cosh)),
            FactorKind::Cosh => Some((1.0, FactorKind::Sinh)),
            FactorKind::Exp => Some((1.0, FactorKind::Exp)),
            FactorKind::Poly(0) | FactorKind::Const => None,
            FactorKind::Poly(k) => Some((*k as f64, FactorKind::Poly(k - 1))),
        }
    }
}

/// `f(a·u + φ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    pub kind: FactorKind,
    pub arg: Vec<f64>,
    pub phase: f64,
}

impl Factor {
    pub fn new(kind: FactorKind, arg: Vec<f64>, phase: f64) -> Self {
        Factor { kind, arg, phase }
    }

    fn argument(&self, u: &[f64]) -> f64 {
        self.arg.iter().zip(u).map(|(a, x)| a * x).sum::<f64>() + self.phase
    }
}

/// `coef * Π factors`.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coef: f64,
    pub factors: Vec<Factor>,
}

/// A scalar function of the chart parameters: a sum of [`Term`]s.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Expr {
    pub terms: Vec<Term>,
}

impl Expr {
    pub fn zero() -> Expr {
        Expr { terms: Vec::new() }
    }

    pub fn constant(c: f64) -> Expr {
        if c == 0.0 {
            return Expr::zero();
        }
        Expr {
            terms: vec![Term {
                coef: c,
                factors: Vec::new(),
            }],
        }
    }

    /// `coef * f(a·u + φ)`.
    pub fn factor(coef: f64, kind: FactorKind, arg: &[f64], phase: f64) -> Expr {
        Expr {
            terms: vec![Term {
                coef,
                factors: vec![Factor::new(kind, arg.to_vec(), phase)],
            }],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, u: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coef * t.factors.iter().map(|f| f.kind.eval(f.argument(u))).product::<f64>())
            .sum()
    }

    pub fn eval_jet(&self, vars: &[Jet]) -> Jet {
        let layout = vars[0].layout();
        let mut acc = Jet::constant(layout, 0.0);
        for t in &self.terms {
            let mut prod = Jet::constant(layout, t.coef);
            for f in &t.factors {
                let mut s = Jet::constant(layout, f.phase);
                for (a, v) in f.arg.iter().zip(vars) {
                    if *a != 0.0 {
                        s = &s + &v.scale(*a);
                    }
                }
                prod = &prod * &f.kind.eval_jet(&s);
            }
            acc = &acc + &prod;
        }
        acc
    }

    pub fn scale(&self, k: f64) -> Expr {
        if k == 0.0 {
            return Expr::zero();
        }
        Expr {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coef: t.coef * k,
                    factors: t.factors.clone(),
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &Expr) -> Expr {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Expr { terms }
    }

    /// Product, distributed term by term.
    pub fn mul(&self, other: &Expr) -> Expr {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let mut factors = a.factors.clone();
                factors.extend(b.factors.iter().cloned());
                terms.push(Term {
                    coef: a.coef * b.coef,
                    factors,
                });
            }
        }
        Expr { terms }
    }

    /// Symbolic `∂/∂u_i`.
    pub fn partial(&self, i: usize) -> Expr {
        let mut terms = Vec::new();
        for t in &self.terms {
            for (k, f) in t.factors.iter().enumerate() {
                let a = f.arg.get(i).copied().unwrap_or(0.0);
                if a == 0.0 {
                    continue;
                }
                let Some((scale, kind)) = f.kind.derivative() else {
                    continue;
                };
                let mut factors = t.factors.clone();
                factors[k] = Factor::new(kind, f.arg.clone(), f.phase);
                terms.push(Term {
                    coef: t.coef * a * scale,
                    factors,
                });
            }
        }
        Expr { terms }
    }

    /// Re-expresses the function in a parameter space of dimension `new_dim`,
    /// sending old parameter `j` to new parameter `map[j]`.
    pub fn reparametrize(&self, new_dim: usize, map: &[usize]) -> Expr {
        Expr {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coef: t.coef,
                    factors: t
                        .factors
                        .iter()
                        .map(|f| {
                            let mut arg = vec![0.0; new_dim];
                            for (j, a) in f.arg.iter().enumerate() {
                                arg[map[j]] += a;
                            }
                            Factor::new(f.kind, arg, f.phase)
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            write!(out, "{:?}", t.coef).unwrap();
            for f in &t.factors {
                out.push('*');
                out.push_str(&f.kind.name());
                out.push('[');
                for (j, a) in f.arg.iter().enumerate() {
                    if j > 0 {
                        out.push(',');
                    }
                    write!(out, "{a:?}").unwrap();
                }
                write!(out, ";{:?}]", f.phase).unwrap();
            }
        }
        out
    }

    /// Parses one expression; `dim` is the expected argument length.
    pub fn parse(text: &str, dim: usize) -> std::result::Result<Expr, String> {
        let mut p = Parser {
            s: text.as_bytes(),
            pos: 0,
        };
        let expr = p.expr(dim)?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(format!("unexpected trailing input at column {}", p.pos + 1));
        }
        Ok(expr)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> std::result::Result<(), String> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(format!("expected '{}' at column {}", c as char, self.pos + 1))
        }
    }

    fn number(&mut self) -> std::result::Result<f64, String> {
        self.skip_ws();
        let start = self.pos;
        let mut prev = 0u8;
        while let Some(&c) = self.s.get(self.pos) {
            let sign_ok = (c == b'-' || c == b'+') && (self.pos == start || prev == b'e' || prev == b'E');
            if c.is_ascii_alphanumeric() || c == b'.' || sign_ok {
                prev = c;
                self.pos += 1;
            } else {
                break;
            }
        }
        let tok = std::str::from_utf8(&self.s[start..self.pos]).map_err(|e| e.to_string())?;
        tok.parse::<f64>()
            .map_err(|_| format!("invalid number '{tok}' at column {}", start + 1))
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while let Some(&c) = self.s.get(self.pos) {
            if c.is_ascii_alphanumeric() || c == b'_' || (c == b'-' && self.pos > start) {
                self.pos += 1;
            } else {
                break;
            }
        }
        String::from_utf8_lossy(&self.s[start..self.pos]).into_owned()
    }

    fn factor(&mut self, dim: usize) -> std::result::Result<Factor, String> {
        let name = self.ident();
        let kind = FactorKind::parse(&name).ok_or_else(|| format!("unknown function '{name}'"))?;
        self.expect(b'[')?;
        let mut arg = Vec::with_capacity(dim);
        loop {
            arg.push(self.number()?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b';') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(format!("expected ',' or ';' at column {}", self.pos + 1)),
            }
        }
        if arg.len() != dim {
            return Err(format!(
                "factor '{name}' has {} argument coefficients, expected {dim}",
                arg.len()
            ));
        }
        let phase = self.number()?;
        self.expect(b']')?;
        Ok(Factor { kind, arg, phase })
    }

    fn term(&mut self, dim: usize, sign: f64) -> std::result::Result<Term, String> {
        let first = self.peek().ok_or("unexpected end of expression")?;
        let (coef, mut factors) = if first.is_ascii_digit() || first == b'.' || first == b'-' {
            (self.number()?, Vec::new())
        } else {
            (1.0, vec![self.factor(dim)?])
        };
        while self.peek() == Some(b'*') {
            self.pos += 1;
            factors.push(self.factor(dim)?);
        }
        Ok(Term {
            coef: sign * coef,
            factors,
        })
    }

    fn expr(&mut self, dim: usize) -> std::result::Result<Expr, String> {
        let mut terms = Vec::new();
        let mut sign = 1.0;
        loop {
            let t = self.term(dim, sign)?;
            if !(t.coef == 0.0 && t.factors.is_empty()) {
                terms.push(t);
            }
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1.0;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1.0;
                }
                _ => break,
            }
        }
        Ok(Expr { terms })
    }
}

/// A chart with exact derivative data.
pub trait Chart: Send + Sync + fmt::Debug {
    /// Number of parameters `n`.
    fn dim(&self) -> usize;

    /// Ambient dimension `m`.
    fn ambient_dim(&self) -> usize;

    /// Highest derivative order the chart supplies exactly (`None`: unlimited).
    fn max_order(&self) -> Option<usize> {
        None
    }

    /// Component jets of `x` at `u`, truncated at `order ≤ max_order`.
    fn jets(&self, u: &[f64], order: usize) -> Vec<Jet>;

    fn eval(&self, u: &[f64]) -> Vec<f64> {
        self.jets(u, 0).iter().map(Jet::value).collect()
    }

    /// Component expressions when the chart is expressible in the text format.
    fn expressions(&self) -> Option<&[Expr]> {
        None
    }
}

/// Chart given by component expressions.
#[derive(Clone, Debug, PartialEq)]
pub struct ExprChart {
    dim: usize,
    components: Vec<Expr>,
}

impl ExprChart {
    pub fn new(dim: usize, components: Vec<Expr>) -> Self {
        ExprChart { dim, components }
    }

    pub fn components(&self) -> &[Expr] {
        &self.components
    }
}

impl Chart for ExprChart {
    fn dim(&self) -> usize {
        self.dim
    }

    fn ambient_dim(&self) -> usize {
        self.components.len()
    }

    fn jets(&self, u: &[f64], order: usize) -> Vec<Jet> {
        let vars = Jet::variables(u, order);
        self.components.iter().map(|c| c.eval_jet(&vars)).collect()
    }

    fn eval(&self, u: &[f64]) -> Vec<f64> {
        self.components.iter().map(|c| c.eval(u)).collect()
    }

    fn expressions(&self) -> Option<&[Expr]> {
        Some(&self.components)
    }
}

type JetFn = dyn Fn(&[Jet]) -> Vec<Jet> + Send + Sync;

/// Chart given by a closure over jets.
#[derive(Clone)]
pub struct JetChart {
    dim: usize,
    ambient_dim: usize,
    f: Arc<JetFn>,
}

impl JetChart {
    pub fn new(dim: usize, ambient_dim: usize, f: impl Fn(&[Jet]) -> Vec<Jet> + Send + Sync + 'static) -> Self {
        JetChart {
            dim,
            ambient_dim,
            f: Arc::new(f),
        }
    }
}

impl fmt::Debug for JetChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "JetChart(n = {}, m = {})", self.dim, self.ambient_dim)
    }
}

impl Chart for JetChart {
    fn dim(&self) -> usize {
        self.dim
    }

    fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    fn jets(&self, u: &[f64], order: usize) -> Vec<Jet> {
        (self.f)(&Jet::variables(u, order))
    }
}

/// Wraps a chart and reports only derivatives up to `order`.
#[derive(Clone, Debug)]
pub struct TruncatedChart {
    inner: Arc<dyn Chart>,
    order: usize,
}

impl TruncatedChart {
    pub fn new(inner: Arc<dyn Chart>, order: usize) -> Self {
        TruncatedChart { inner, order }
    }
}

impl Chart for TruncatedChart {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    fn max_order(&self) -> Option<usize> {
        Some(self.order)
    }

    fn jets(&self, u: &[f64], order: usize) -> Vec<Jet> {
        assert!(order <= self.order, "order {order} exceeds declared {}", self.order);
        self.inner.jets(u, order)
    }
}

/// Parsed contents of a chart text file.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartFile {
    pub name: String,
    pub dim: usize,
    pub signature: Signature,
    pub index: usize,
    pub domain: Vec<(f64, f64)>,
    pub components: Vec<Expr>,
    pub hints: Vec<Vec<Expr>>,
    pub tangent_mix: Option<Vec<Vec<f64>>>,
}

impl ChartFile {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("# pseudogauss chart v1\n");
        writeln!(out, "name {}", self.name).unwrap();
        writeln!(out, "dim {}", self.dim).unwrap();
        writeln!(out, "signature {} {}", self.signature.dim(), self.signature.index()).unwrap();
        writeln!(out, "index {}", self.index).unwrap();
        out.push_str("domain");
        for (lo, hi) in &self.domain {
            write!(out, " {lo:?} {hi:?}").unwrap();
        }
        out.push('\n');
        for c in &self.components {
            writeln!(out, "component {}", c.to_text()).unwrap();
        }
        for h in &self.hints {
            let parts: Vec<String> = h.iter().map(Expr::to_text).collect();
            writeln!(out, "hint {}", parts.join(" | ")).unwrap();
        }
        if let Some(mix) = &self.tangent_mix {
            let rows: Vec<String> = mix
                .iter()
                .map(|r| r.iter().map(|a| format!("{a:?}")).collect::<Vec<_>>().join(" "))
                .collect();
            writeln!(out, "tangent_mix {}", rows.join(" ; ")).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<ChartFile> {
        let err = |line: usize, message: String| GeomError::ChartParse { line, message };
        let mut name = String::from("user_chart");
        let mut dim = None;
        let mut signature = None;
        let mut index = 0;
        let mut domain = Vec::new();
        let mut components = Vec::new();
        let mut hints = Vec::new();
        let mut tangent_mix = None;

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            let nums = |s: &str| -> Result<Vec<f64>> {
                s.split_whitespace()
                    .map(|t| t.parse::<f64>().map_err(|e| err(line_no, format!("'{t}': {e}"))))
                    .collect()
            };
            match key {
                "name" => name = rest.to_string(),
                "dim" => dim = Some(rest.parse::<usize>().map_err(|e| err(line_no, e.to_string()))?),
                "signature" => {
                    let v: Vec<usize> = rest
                        .split_whitespace()
                        .map(|t| t.parse::<usize>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|e| err(line_no, e.to_string()))?;
                    if v.len() != 2 {
                        return Err(err(line_no, "signature needs 'm s'".into()));
                    }
                    signature = Some(Signature::new(v[0], v[1])?);
                }
                "index" => {
                    index = rest
                        .parse()
                        .map_err(|e: std::num::ParseIntError| err(line_no, e.to_string()))?
                }
                "domain" => {
                    let v = nums(rest)?;
                    if v.len() % 2 != 0 {
                        return Err(err(line_no, "domain needs lo/hi pairs".into()));
                    }
                    domain = v.chunks(2).map(|c| (c[0], c[1])).collect();
                }
                "component" | "hint" | "tangent_mix" => {
                    let n = dim.ok_or_else(|| err(line_no, "'dim' must precede expressions".into()))?;
                    match key {
                        "component" => components.push(Expr::parse(rest, n).map_err(|m| err(line_no, m))?),
                        "hint" => hints.push(
                            rest.split('|')
                                .map(|p| Expr::parse(p, n).map_err(|m| err(line_no, m)))
                                .collect::<Result<Vec<_>>>()?,
                        ),
                        _ => {
                            let rows = rest.split(';').map(nums).collect::<Result<Vec<Vec<f64>>>>()?;
                            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                                return Err(err(line_no, format!("tangent_mix must be {n}x{n}")));
                            }
                            tangent_mix = Some(rows);
                        }
                    }
                }
                other => return Err(err(line_no, format!("unknown key '{other}'"))),
            }
        }

        let dim = dim.ok_or_else(|| err(0, "missing 'dim'".into()))?;
        let signature = signature.ok_or_else(|| err(0, "missing 'signature'".into()))?;
        if components.len() != signature.dim() {
            return Err(err(
                0,
                format!(
                    "{} components for ambient dimension {}",
                    components.len(),
                    signature.dim()
                ),
            ));
        }
        if domain.len() != dim {
            return Err(err(0, format!("domain has {} intervals, expected {dim}", domain.len())));
        }
        if let Some(h) = hints.iter().find(|h| h.len() != signature.dim()) {
            return Err(err(
                0,
                format!("hint has {} components, expected {}", h.len(), signature.dim()),
            ));
        }
        if index > dim {
            return Err(err(0, format!("index {index} exceeds dimension {dim}")));
        }
        Ok(ChartFile {
            name,
            dim,
            signature,
            index,
            domain,
            components,
            hints,
            tangent_mix,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_eval() {
        let e = Expr::parse("0.5*cos[1,0;0] - 2*sin[0,1;0.25]*poly_2[1,1;0] + 3", 2).unwrap();
        let (u, v) = (0.3f64, -0.8f64);
        let expected = 0.5 * u.cos() - 2.0 * (v + 0.25).sin() * (u + v).powi(2) + 3.0;
        assert!((e.eval(&[u, v]) - expected).abs() < 1e-15);
    }

    #[test]
    fn text_roundtrip_is_exact() {
        let e = Expr::parse("0.7071067811865476*cosh[1e-3,2;-0.1] + -1*poly_-1[1,1;0]", 2).unwrap();
        let back = Expr::parse(&e.to_text(), 2).unwrap();
        assert_eq!(e, back);
    }

    #[test]
    fn symbolic_partial_matches_jet() {
        let e = Expr::parse("1.5*sin[2,1;0.1]*cosh[0,1;0] + poly_-1[1,1;0]", 2).unwrap();
        let u = [0.4, 0.9];
        let vars = Jet::variables(&u, 2);
        let j = e.eval_jet(&vars);
        let du = e.partial(0).eval(&u);
        let dv = e.partial(1).eval(&u);
        assert!((j.derivative(&[1, 0]).unwrap() - du).abs() < 1e-13);
        assert!((j.derivative(&[0, 1]).unwrap() - dv).abs() < 1e-13);
        let duv = e.partial(0).partial(1).eval(&u);
        assert!((j.derivative(&[1, 1]).unwrap() - duv).abs() < 1e-12);
    }

    #[test]
    fn parse_errors_are_reported() {
        assert!(Expr::parse("tan[1;0]", 1).is_err());
        assert!(Expr::parse("sin[1,2;0]", 1).is_err());
        assert!(Expr::parse("sin[1;0", 1).is_err());
        let bad = "dim 1\nsignature 2 0\ndomain 0 1\ncomponent cos[1;0]\n";
        assert!(matches!(ChartFile::parse(bad), Err(GeomError::ChartParse { .. })));
    }

    #[test]
    fn chart_file_roundtrip() {
        let text = "name circle\ndim 1\nsignature 2 0\nindex 0\ndomain 0 3\n\
                    component cos[1;0]\ncomponent sin[1;0]\n";
        let cf = ChartFile::parse(text).unwrap();
        assert_eq!(ChartFile::parse(&cf.to_text()).unwrap(), cf);
    }
}
