//! Built-in test functions with closed-form derivative bundles.
//!
//! Experiments need `f` together with exact derivatives up to the Sobolev
//! order, so the corpus is a fixed set of named families rather than
//! free-form expressions: polynomials, `exp(x)`, `(1-x)^gamma`, `sin(kx)`,
//! the basis elements `q_j`, and expansions themselves.

use crate::error::{Error, Result};
use crate::sobolev::{self, Expansion, FunctionBundle, SobolevParams};

/// Polynomial in the monomial basis, `coeffs[i]` multiplying `x^i`.
#[derive(Debug, Clone)]
pub struct PolynomialBundle {
    coeffs: Vec<f64>,
}

impl PolynomialBundle {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }
}

impl FunctionBundle for PolynomialBundle {
    fn max_order(&self) -> usize {
        usize::MAX
    }

    fn eval(&self, k: usize, x: f64) -> f64 {
        // k-th derivative by the power rule, evaluated by Horner
        let mut acc = 0.0;
        for i in (k..self.coeffs.len()).rev() {
            let mut fall = 1.0;
            for j in 0..k {
                fall *= (i - j) as f64;
            }
            acc = acc * x + self.coeffs[i] * fall;
        }
        acc
    }
}

/// `exp(x)`; its own derivative at every order.
#[derive(Debug, Clone, Copy)]
pub struct ExpBundle;

impl FunctionBundle for ExpBundle {
    fn max_order(&self) -> usize {
        usize::MAX
    }

    fn eval(&self, _k: usize, x: f64) -> f64 {
        x.exp()
    }
}

/// `sin(freq * x)`; derivatives cycle through the quarter-period shift.
#[derive(Debug, Clone, Copy)]
pub struct SinBundle {
    freq: f64,
}

impl SinBundle {
    pub fn new(freq: f64) -> Self {
        Self { freq }
    }
}

impl FunctionBundle for SinBundle {
    fn max_order(&self) -> usize {
        usize::MAX
    }

    fn eval(&self, k: usize, x: f64) -> f64 {
        self.freq.powi(k as i32) * (self.freq * x + k as f64 * std::f64::consts::FRAC_PI_2).sin()
    }
}

/// `(1-x)^gamma` with the exact falling-factorial derivatives; singular
/// derivatives at `x = 1` are fine because quadrature nodes are interior.
#[derive(Debug, Clone, Copy)]
pub struct OneMinusXBundle {
    gamma: f64,
}

impl OneMinusXBundle {
    pub fn new(gamma: f64) -> Self {
        Self { gamma }
    }
}

impl FunctionBundle for OneMinusXBundle {
    fn max_order(&self) -> usize {
        usize::MAX
    }

    fn eval(&self, k: usize, x: f64) -> f64 {
        let mut c = 1.0;
        for j in 0..k {
            c *= -(self.gamma - j as f64);
        }
        c * (1.0 - x).powf(self.gamma - k as f64)
    }
}

/// The Sobolev basis element `q_n` as a bundle.
#[derive(Debug, Clone, Copy)]
pub struct QBundle {
    sp: SobolevParams,
    n: usize,
}

impl QBundle {
    pub fn new(sp: SobolevParams, n: usize) -> Self {
        Self { sp, n }
    }
}

impl FunctionBundle for QBundle {
    fn max_order(&self) -> usize {
        usize::MAX
    }

    fn eval(&self, k: usize, x: f64) -> f64 {
        sobolev::q_eval(self.sp, self.n, k, x).expect("q_eval on [-1,1]")
    }
}

/// A computed expansion viewed as a bundle (term-wise derivatives).
#[derive(Debug, Clone)]
pub struct ExpansionBundle {
    e: Expansion,
}

impl ExpansionBundle {
    pub fn new(e: Expansion) -> Self {
        Self { e }
    }
}

impl FunctionBundle for ExpansionBundle {
    fn max_order(&self) -> usize {
        usize::MAX
    }

    fn eval(&self, k: usize, x: f64) -> f64 {
        sobolev::evaluate_expansion(&self.e, k, x).expect("expansion eval on [-1,1]")
    }
}

/// Residual `f - S_n f` of a bundle against one of its expansions.
pub struct ResidualBundle<'a> {
    f: &'a dyn FunctionBundle,
    e: &'a Expansion,
}

impl<'a> ResidualBundle<'a> {
    pub fn new(f: &'a dyn FunctionBundle, e: &'a Expansion) -> Self {
        Self { f, e }
    }
}

impl FunctionBundle for ResidualBundle<'_> {
    fn max_order(&self) -> usize {
        self.f.max_order()
    }

    fn eval(&self, k: usize, x: f64) -> f64 {
        self.f.eval(k, x) - sobolev::evaluate_expansion(self.e, k, x).expect("expansion eval")
    }
}

/// Parses the CLI function notation: `q<j>`, `poly:<c0,c1,...>`, `expx`,
/// `onemx:<gamma>`, `sin:<freq>`.
pub fn parse_bundle(spec: &str, sp: SobolevParams) -> Result<Box<dyn FunctionBundle>> {
    if spec == "expx" {
        return Ok(Box::new(ExpBundle));
    }
    if let Some(j) = spec.strip_prefix('q') {
        let j: usize = j
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad basis index in '{spec}'")))?;
        return Ok(Box::new(QBundle::new(sp, j)));
    }
    if let Some(rest) = spec.strip_prefix("poly:") {
        let coeffs: std::result::Result<Vec<f64>, _> =
            rest.split(',').map(|s| s.trim().parse::<f64>()).collect();
        let coeffs =
            coeffs.map_err(|_| Error::InvalidParameter(format!("bad coefficients in '{spec}'")))?;
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("empty polynomial".into()));
        }
        return Ok(Box::new(PolynomialBundle::new(coeffs)));
    }
    if let Some(g) = spec.strip_prefix("onemx:") {
        let gamma: f64 = g
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad exponent in '{spec}'")))?;
        return Ok(Box::new(OneMinusXBundle::new(gamma)));
    }
    if let Some(k) = spec.strip_prefix("sin:") {
        let freq: f64 = k
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad frequency in '{spec}'")))?;
        return Ok(Box::new(SinBundle::new(freq)));
    }
    Err(Error::InvalidParameter(format!(
        "unknown function '{spec}' (expected q<j>, poly:<coeffs>, expx, onemx:<gamma>, sin:<freq>)"
    )))
}
