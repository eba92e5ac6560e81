//! The Jacobi-Sobolev orthonormal system and its Fourier machinery.
//!
//! For parameters `(alpha, beta, m)` the inner product pairs k-th derivatives
//! against the k-shifted Jacobi measure, `k = 0..m`. The orthonormal system
//! is `q_n = p_n / sqrt(s_{n,m})` with `s_{n,m} = sum_k r_{n,k}`, so all
//! evaluations reduce to shifted orthonormal Jacobi polynomials.
//!
//! The `W^{p,m}` norm is implemented with p-th powers inside the sum over
//! derivative orders, `(sum_k ||f^(k)||_p^p)^(1/p)`, the convention under
//! which the `p = 2` case is exactly the inner-product norm.

use crate::error::{Error, Result};
use crate::jacobi::{self, JacobiParams};
use crate::quadrature::{self, QuadratureRule};
use serde::{Deserialize, Serialize};

/// Parameters `(alpha, beta, m)` of the Sobolev inner product; `m >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SobolevParams {
    params: JacobiParams,
    m: usize,
}

impl SobolevParams {
    /// `m = 0` is rejected: that is the classical Jacobi case, not this
    /// inner product.
    pub fn new(alpha: f64, beta: f64, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter(
                "Sobolev order m must be >= 1".into(),
            ));
        }
        Ok(Self {
            params: JacobiParams::new(alpha, beta)?,
            m,
        })
    }

    pub fn jacobi(&self) -> JacobiParams {
        self.params
    }

    pub fn alpha(&self) -> f64 {
        self.params.alpha()
    }

    pub fn beta(&self) -> f64 {
        self.params.beta()
    }

    pub fn order(&self) -> usize {
        self.m
    }
}

/// A function on `[-1, 1]` together with its derivatives up to some order,
/// all evaluable pointwise. The inner product genuinely consumes `f^(k)`,
/// so implementations supply exact derivatives rather than differentiating
/// numerically.
pub trait FunctionBundle {
    /// Highest derivative order this bundle can evaluate.
    fn max_order(&self) -> usize;

    /// Value of the k-th derivative at `x`; `k = 0` is the function itself.
    fn eval(&self, k: usize, x: f64) -> f64;
}

fn require_order(f: &dyn FunctionBundle, m: usize) -> Result<()> {
    if f.max_order() < m {
        return Err(Error::InvalidParameter(format!(
            "bundle provides derivatives up to order {}, need {m}",
            f.max_order()
        )));
    }
    Ok(())
}

/// `s_{n,m} = sum_{k=0}^m r_{n,k}`; equals 1 exactly when `n = 0`.
pub fn s_factor(sp: SobolevParams, n: usize) -> f64 {
    (0..=sp.m)
        .map(|k| jacobi::derivative_factor(sp.params, n, k).value())
        .sum()
}

/// `ell`-th derivative of the Sobolev orthonormal polynomial `q_n` at `x`.
pub fn q_eval(sp: SobolevParams, n: usize, ell: usize, x: f64) -> Result<f64> {
    if ell > n {
        return Ok(0.0);
    }
    let scale = (jacobi::derivative_factor(sp.params, n, ell).value() / s_factor(sp, n)).sqrt();
    Ok(scale * jacobi::orthonormal_eval(sp.params.shift(ell), n - ell, x)?)
}

/// Suggested quadrature order for coefficient work at truncation degree `n`.
pub fn default_resolution(n: usize) -> usize {
    (2 * (n + 16)).max(64)
}

fn rules_per_order(sp: SobolevParams, resolution: usize) -> Result<Vec<QuadratureRule>> {
    (0..=sp.m)
        .map(|k| quadrature::gauss_jacobi_rule(sp.params.shift(k), resolution))
        .collect()
}

/// The Sobolev inner product `sum_k ∫ f^(k) g^(k) dμ_{alpha+k, beta+k}`.
pub fn sobolev_inner(
    sp: SobolevParams,
    f: &dyn FunctionBundle,
    g: &dyn FunctionBundle,
    resolution: usize,
) -> Result<f64> {
    require_order(f, sp.m)?;
    require_order(g, sp.m)?;
    let mut acc = 0.0;
    for (k, rule) in rules_per_order(sp, resolution)?.iter().enumerate() {
        acc += quadrature::integrate(rule, |x| f.eval(k, x) * g.eval(k, x))?;
    }
    Ok(acc)
}

/// Fourier-Sobolev coefficient `c_j(f) = <f, q_j>`.
pub fn fourier_coefficient(
    sp: SobolevParams,
    f: &dyn FunctionBundle,
    j: usize,
    resolution: usize,
) -> Result<f64> {
    let e = project(sp, f, j, resolution)?;
    Ok(*e.coeffs().last().unwrap())
}

/// Truncated expansion in the `q_j` basis with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    sp: SobolevParams,
    coeffs: Vec<f64>,
}

impl Expansion {
    pub fn new(sp: SobolevParams, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter(
                "expansion needs at least the degree-0 coefficient".into(),
            ));
        }
        Ok(Self { sp, coeffs })
    }

    pub fn params(&self) -> SobolevParams {
        self.sp
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Same coefficients cut off at truncation degree `n`.
    pub fn truncate(&self, n: usize) -> Expansion {
        Expansion {
            sp: self.sp,
            coeffs: self.coeffs[..=n.min(self.degree())].to_vec(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpansionRepr {
    alpha: f64,
    beta: f64,
    m: usize,
    n: usize,
    coeffs: Vec<f64>,
}

impl Serialize for Expansion {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ExpansionRepr {
            alpha: self.sp.alpha(),
            beta: self.sp.beta(),
            m: self.sp.m,
            n: self.degree(),
            coeffs: self.coeffs.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Expansion {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = ExpansionRepr::deserialize(de)?;
        let sp =
            SobolevParams::new(repr.alpha, repr.beta, repr.m).map_err(serde::de::Error::custom)?;
        if repr.coeffs.len() != repr.n + 1 {
            return Err(serde::de::Error::custom(format!(
                "coefficient count {} does not match n = {}",
                repr.coeffs.len(),
                repr.n
            )));
        }
        Expansion::new(sp, repr.coeffs).map_err(serde::de::Error::custom)
    }
}

fn project(
    sp: SobolevParams,
    f: &dyn FunctionBundle,
    n: usize,
    resolution: usize,
) -> Result<Expansion> {
    require_order(f, sp.m)?;
    // b[k][i] = ∫ f^(k) p_i at parameters shifted by k; one rule and one
    // orthonormal sweep per node, shared across all coefficients.
    let mut b: Vec<Vec<f64>> = Vec::with_capacity(sp.m + 1);
    for (k, rule) in rules_per_order(sp, resolution)?.iter().enumerate() {
        let mut bk = vec![0.0; n.saturating_sub(k) + 1];
        if k <= n {
            for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
                let fk = f.eval(k, x);
                if fk.is_nan() {
                    return Err(Error::NonFinite(format!(
                        "derivative order {k} is NaN at x = {x}"
                    )));
                }
                let seq = jacobi::orthonormal_sequence(sp.params.shift(k), n - k, x)?;
                for (bi, pi) in bk.iter_mut().zip(seq) {
                    *bi += w * fk * pi;
                }
            }
        }
        b.push(bk);
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let s = s_factor(sp, j);
        let mut c = 0.0;
        for (k, bk) in b.iter().enumerate().take(sp.m.min(j) + 1) {
            let r = jacobi::derivative_factor(sp.params, j, k).value();
            c += (r / s).sqrt() * bk[j - k];
        }
        coeffs.push(c);
    }
    Expansion::new(sp, coeffs)
}

/// Coefficients `c_0..c_n` of the partial sum `S_n f`.
pub fn partial_sum(
    sp: SobolevParams,
    f: &dyn FunctionBundle,
    n: usize,
    resolution: usize,
) -> Result<Expansion> {
    project(sp, f, n, resolution)
}

/// The k-th piece of the partial-sum decomposition: only the derivative
/// order `k` of `f` contributes, through the coefficients
/// `sqrt(r_{j,k} / s_{j,m}) b_j`.
pub fn decomposed_partial_sum(
    sp: SobolevParams,
    f: &dyn FunctionBundle,
    n: usize,
    k: usize,
    resolution: usize,
) -> Result<Expansion> {
    if k > sp.m {
        return Err(Error::InvalidParameter(format!(
            "decomposition order {k} exceeds m = {}",
            sp.m
        )));
    }
    if n < k {
        return Err(Error::InvalidParameter(format!(
            "truncation {n} below decomposition order {k}"
        )));
    }
    require_order(f, sp.m)?;
    let rule = quadrature::gauss_jacobi_rule(sp.params.shift(k), resolution)?;
    let mut bk = vec![0.0; n - k + 1];
    for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
        let fk = f.eval(k, x);
        if fk.is_nan() {
            return Err(Error::NonFinite(format!(
                "derivative order {k} is NaN at x = {x}"
            )));
        }
        let seq = jacobi::orthonormal_sequence(sp.params.shift(k), n - k, x)?;
        for (bi, pi) in bk.iter_mut().zip(seq) {
            *bi += w * fk * pi;
        }
    }
    let mut coeffs = vec![0.0; n + 1];
    for j in k..=n {
        let r = jacobi::derivative_factor(sp.params, j, k).value();
        coeffs[j] = (r / s_factor(sp, j)).sqrt() * bk[j - k];
    }
    Expansion::new(sp, coeffs)
}

/// `ell`-th derivative of the expansion at `x`, summed term-wise through the
/// closed-form derivative identity.
pub fn evaluate_expansion(e: &Expansion, ell: usize, x: f64) -> Result<f64> {
    let sp = e.sp;
    let n = e.degree();
    if ell > n {
        return Ok(0.0);
    }
    let shifted = sp.params.shift(ell);
    let seq = jacobi::orthonormal_sequence(shifted, n - ell, x)?;
    let mut acc = 0.0;
    for j in ell..=n {
        let r = jacobi::derivative_factor(sp.params, j, ell).value();
        acc += e.coeffs[j] * (r / s_factor(sp, j)).sqrt() * seq[j - ell];
    }
    Ok(acc)
}

/// `W^{p,m}` norm: `(sum_k ||f^(k)||_{L^p, k-shifted}^p)^(1/p)`, `1 <= p < inf`.
pub fn sobolev_norm(
    sp: SobolevParams,
    f: &dyn FunctionBundle,
    p: f64,
    resolution: usize,
) -> Result<f64> {
    if !(p >= 1.0) || p.is_infinite() {
        return Err(Error::InvalidParameter(format!(
            "W^{{p,m}} norm requires 1 <= p < inf; got {p}"
        )));
    }
    require_order(f, sp.m)?;
    let mut acc = 0.0;
    for k in 0..=sp.m {
        let nk = quadrature::lp_norm(|x| f.eval(k, x), p, sp.params.shift(k), resolution)?;
        acc += nk.powf(p);
    }
    Ok(acc.powf(1.0 / p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{PolynomialBundle, QBundle};

    fn spn(a: f64, b: f64, m: usize) -> SobolevParams {
        SobolevParams::new(a, b, m).unwrap()
    }

    #[test]
    fn rejects_order_zero() {
        assert!(SobolevParams::new(0.0, 0.0, 0).is_err());
    }

    #[test]
    fn s_factor_examples() {
        assert_eq!(s_factor(spn(0.7, -0.2, 3), 0), 1.0);
        // 1 + lambda_1 = 3 for Legendre parameters
        assert_eq!(s_factor(spn(0.0, 0.0, 1), 1), 3.0);
        // 1 + r_{3,1} + r_{3,2} = 1 + 12 + 120
        assert_eq!(s_factor(spn(0.0, 0.0, 2), 3), 133.0);
    }

    #[test]
    fn q_at_degree_zero_is_p0() {
        let sp = spn(1.0, 0.5, 2);
        let expected = jacobi::orthonormal_norm_const(sp.jacobi(), 0);
        assert!((q_eval(sp, 0, 0, 0.37).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn q_degree_one_closed_form() {
        // p_1(1) = sqrt(3/2), s_{1,1} = 3
        let v = q_eval(spn(0.0, 0.0, 1), 1, 0, 1.0).unwrap();
        assert!((v - 0.5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn q_derivative_matches_finite_difference() {
        let sp = spn(0.25, 1.0, 2);
        let (x, h) = (0.2, 1e-5);
        let fd = (q_eval(sp, 5, 1, x + h).unwrap() - q_eval(sp, 5, 1, x - h).unwrap()) / (2.0 * h);
        let exact = q_eval(sp, 5, 2, x).unwrap();
        assert!((fd - exact).abs() < 1e-6);
    }

    #[test]
    fn q_bundles_are_orthonormal() {
        let sp = spn(0.5, 0.0, 1);
        let q2 = QBundle::new(sp, 2);
        let q3 = QBundle::new(sp, 3);
        let res = default_resolution(3);
        assert!((sobolev_inner(sp, &q3, &q3, res).unwrap() - 1.0).abs() < 1e-10);
        assert!(sobolev_inner(sp, &q2, &q3, res).unwrap().abs() < 1e-10);
    }

    #[test]
    fn constant_inner_product_is_total_mass() {
        let sp = spn(0.0, 0.0, 3);
        let one = PolynomialBundle::new(vec![1.0]);
        assert!((sobolev_inner(sp, &one, &one, 64).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn coefficients_of_basis_elements() {
        let sp = spn(0.0, 0.0, 1);
        let q5 = QBundle::new(sp, 5);
        let res = default_resolution(5);
        assert!((fourier_coefficient(sp, &q5, 5, res).unwrap() - 1.0).abs() < 1e-10);
        assert!(fourier_coefficient(sp, &q5, 4, res).unwrap().abs() < 1e-10);
    }

    #[test]
    fn coefficient_of_constant() {
        let sp = spn(0.0, 0.0, 1);
        let one = PolynomialBundle::new(vec![1.0]);
        let c0 = fourier_coefficient(sp, &one, 0, 64).unwrap();
        assert!((c0 - 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn partial_sum_reproduces_polynomials() {
        let sp = spn(0.5, 1.5, 2);
        let f = PolynomialBundle::new(vec![0.3, -1.0, 0.0, 2.0, 0.5]);
        let e = partial_sum(sp, &f, 6, default_resolution(6)).unwrap();
        for &x in &[-0.9, -0.3, 0.0, 0.5, 0.99] {
            let v = evaluate_expansion(&e, 0, x).unwrap();
            assert!((v - f.eval(0, x)).abs() < 1e-8, "x={x}");
        }
    }

    #[test]
    fn partial_sum_of_basis_is_unit_vector() {
        let sp = spn(0.0, 0.0, 1);
        let q3 = QBundle::new(sp, 3);
        let e = partial_sum(sp, &q3, 6, default_resolution(6)).unwrap();
        for (j, &c) in e.coeffs().iter().enumerate() {
            let expected = if j == 3 { 1.0 } else { 0.0 };
            assert!((c - expected).abs() < 1e-10, "j={j} c={c}");
        }
        // degree above truncation projects to zero
        let q9 = QBundle::new(sp, 9);
        let e = partial_sum(sp, &q9, 6, default_resolution(9)).unwrap();
        for &c in e.coeffs() {
            assert!(c.abs() < 1e-10);
        }
    }

    #[test]
    fn projection_is_idempotent() {
        let sp = spn(1.0, 0.0, 1);
        let f = PolynomialBundle::new(vec![1.0, 2.0, -0.5, 0.25]);
        let e = partial_sum(sp, &f, 8, default_resolution(8)).unwrap();
        let again = partial_sum(
            sp,
            &crate::functions::ExpansionBundle::new(e.clone()),
            8,
            default_resolution(8),
        )
        .unwrap();
        for (c1, c2) in e.coeffs().iter().zip(again.coeffs()) {
            assert!((c1 - c2).abs() < 1e-9);
        }
    }

    #[test]
    fn expansion_derivative_matches_finite_difference() {
        let sp = spn(0.0, 0.5, 2);
        let f = PolynomialBundle::new(vec![0.1, 1.0, -0.7, 0.0, 0.3, 0.05]);
        let e = partial_sum(sp, &f, 7, default_resolution(7)).unwrap();
        let (x, h) = (0.31, 1e-5);
        let fd = (evaluate_expansion(&e, 0, x + h).unwrap()
            - evaluate_expansion(&e, 0, x - h).unwrap())
            / (2.0 * h);
        assert!((fd - evaluate_expansion(&e, 1, x).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn single_term_expansion_matches_q_eval() {
        let sp = spn(0.5, 0.5, 1);
        let mut coeffs = vec![0.0; 6];
        coeffs[5] = 1.0;
        let e = Expansion::new(sp, coeffs).unwrap();
        for ell in 0..=2 {
            let v = evaluate_expansion(&e, ell, 0.4).unwrap();
            assert!((v - q_eval(sp, 5, ell, 0.4).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn sobolev_norm_of_basis_is_one_at_p2() {
        let sp = spn(0.0, 0.0, 1);
        for n in [3usize, 12, 25] {
            let q = QBundle::new(sp, n);
            let v = sobolev_norm(sp, &q, 2.0, 64 * (n + 4)).unwrap();
            assert!((v - 1.0).abs() < 1e-8, "n={n}: {v}");
        }
    }

    #[test]
    fn sobolev_norm_of_constant() {
        let sp = spn(0.0, 0.0, 1);
        let one = PolynomialBundle::new(vec![1.0]);
        let v = sobolev_norm(sp, &one, 2.0, 128).unwrap();
        assert!((v - 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn sobolev_norm_self_convergence() {
        let sp = spn(0.0, 0.0, 1);
        let q = QBundle::new(sp, 50);
        let coarse = sobolev_norm(sp, &q, 2.2, 32 * 50).unwrap();
        let fine = sobolev_norm(sp, &q, 2.2, 128 * 50).unwrap();
        assert!(((coarse - fine) / fine).abs() < 0.01);
    }

    #[test]
    fn sobolev_norm_rejects_bad_exponents() {
        let sp = spn(0.0, 0.0, 1);
        let one = PolynomialBundle::new(vec![1.0]);
        assert!(sobolev_norm(sp, &one, 0.5, 64).is_err());
        assert!(sobolev_norm(sp, &one, f64::INFINITY, 64).is_err());
    }

    #[test]
    fn decomposition_sums_to_partial_sum() {
        let sp = spn(0.5, 0.0, 2);
        let f = PolynomialBundle::new(vec![0.2, 1.0, 0.0, -0.4, 0.1]);
        let n = 8;
        let res = default_resolution(n);
        let full = partial_sum(sp, &f, n, res).unwrap();
        let mut summed = vec![0.0; n + 1];
        for k in 0..=sp.order() {
            let part = decomposed_partial_sum(sp, &f, n, k, res).unwrap();
            for (s, c) in summed.iter_mut().zip(part.coeffs()) {
                *s += c;
            }
        }
        for (s, c) in summed.iter().zip(full.coeffs()) {
            assert!((s - c).abs() < 1e-10, "{s} vs {c}");
        }
    }

    #[test]
    fn decomposition_of_linear_function() {
        // f(x) = x: f' = 1 is orthogonal to every p_{j-1} at shifted
        // parameters with j - 1 >= 1, so only b_1 survives for k = 1
        let sp = spn(0.25, 0.75, 1);
        let f = PolynomialBundle::new(vec![0.0, 1.0]);
        let part = decomposed_partial_sum(sp, &f, 6, 1, 64).unwrap();
        for (j, &c) in part.coeffs().iter().enumerate() {
            if j == 1 {
                assert!(c.abs() > 1e-3);
            } else {
                assert!(c.abs() < 1e-12, "j={j} c={c}");
            }
        }
    }

    #[test]
    fn decomposition_rejects_bad_orders() {
        let sp = spn(0.0, 0.0, 1);
        let f = PolynomialBundle::new(vec![1.0, 1.0]);
        assert!(decomposed_partial_sum(sp, &f, 4, 2, 64).is_err());
        assert!(decomposed_partial_sum(sp, &f, 0, 1, 64).is_err());
    }

    #[test]
    fn expansion_json_round_trip() {
        let sp = spn(0.5, 0.0, 2);
        let e = Expansion::new(sp, vec![1.0 / 3.0, -0.25, 1e-17]).unwrap();
        let text = serde_json::to_string(&e).unwrap();
        assert!(text.contains("\"alpha\":0.5"));
        assert!(text.contains("\"n\":2"));
        let back: Expansion = serde_json::from_str(&text).unwrap();
        assert_eq!(e, back);
        // malformed payloads are rejected
        assert!(serde_json::from_str::<Expansion>(
            "{\"alpha\":0.5,\"beta\":0.0,\"m\":2,\"n\":3,\"coeffs\":[1.0]}"
        )
        .is_err());
    }
}
