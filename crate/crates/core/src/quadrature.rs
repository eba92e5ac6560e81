//! Gauss-Jacobi quadrature and weighted `L^p` norms on `[-1, 1]`.
//!
//! Rules are built by the Golub-Welsch method: nodes are the eigenvalues of
//! the symmetric tridiagonal Jacobi matrix (implicit-shift QL, eigenvalues
//! only), polished by one round of Newton on `P_n`, and weights come from the
//! Christoffel function `w_i = 1 / sum_j p_j(x_i)^2`.
//!
//! `L^p` norms of oscillatory integrands use composite panels with
//! Chebyshev-angle boundaries; the two endpoint panels carry one-sided
//! Gauss-Jacobi rules so the weight singularities are integrated exactly.

use crate::error::{Error, Result};
use crate::jacobi::{
    self, orthonormal_eval, orthonormal_sequence, recurrence_diag, recurrence_offdiag, JacobiParams,
};

/// Gauss rule for the measure `(1-x)^alpha (1+x)^beta dx`.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    params: JacobiParams,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn params(&self) -> JacobiParams {
        self.params
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL.
///
/// `d` is the diagonal, `e` the subdiagonal (`e[i]` couples rows `i`, `i+1`).
fn tridiag_eigenvalues(mut d: Vec<f64>, mut e: Vec<f64>) -> Vec<f64> {
    let n = d.len();
    e.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter <= 50, "tridiagonal QL failed to converge");
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0, 1.0);
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                f = (d[i] - g) * s + 2.0 * c * b;
                p = s * f;
                d[i + 1] = g + p;
                g = c * f - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    d
}

/// Builds the `npoints`-point Gauss-Jacobi rule; exact for polynomials of
/// degree `<= 2 npoints - 1` against the Jacobi measure.
pub fn gauss_jacobi_rule(params: JacobiParams, npoints: usize) -> Result<QuadratureRule> {
    if npoints == 0 {
        return Err(Error::InvalidParameter(
            "quadrature rule needs at least one point".into(),
        ));
    }
    let diag: Vec<f64> = (0..npoints).map(|i| recurrence_diag(params, i)).collect();
    let off: Vec<f64> = (1..npoints)
        .map(|i| recurrence_offdiag(params, i))
        .collect();
    let mut nodes = tridiag_eigenvalues(diag, off);

    // Newton polish on P_n; the eigenvalues are already accurate to a few ulp
    // so a couple of steps suffice.
    let n = npoints;
    let shifted = params.shift(1);
    let deriv_scale = jacobi::eigenvalue(params, n).value().sqrt();
    for x in nodes.iter_mut() {
        for _ in 0..2 {
            let p = orthonormal_eval(params, n, *x)?;
            let dp = deriv_scale * orthonormal_eval(shifted, n - 1, *x)?;
            if dp == 0.0 {
                break;
            }
            let step = p / dp;
            let next = *x - step;
            if next <= -1.0 || next >= 1.0 {
                break;
            }
            *x = next;
        }
    }
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut weights = Vec::with_capacity(n);
    for &x in &nodes {
        let seq = orthonormal_sequence(params, n - 1, x)?;
        let christoffel: f64 = seq.iter().map(|v| v * v).sum();
        weights.push(1.0 / christoffel);
    }
    Ok(QuadratureRule {
        params,
        nodes,
        weights,
    })
}

/// Applies the rule: `sum_i w_i f(x_i)`. A NaN at a node is an error.
pub fn integrate<F: Fn(f64) -> f64>(rule: &QuadratureRule, f: F) -> Result<f64> {
    let mut acc = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let v = f(x);
        if v.is_nan() {
            return Err(Error::NonFinite(format!("integrand is NaN at x = {x}")));
        }
        acc += w * v;
    }
    Ok(acc)
}

const PANEL_ORDER: usize = 16;

/// Integrates `g(x) dμ_{alpha,beta}` over composite panels with
/// Chebyshev-angle boundaries. Endpoint panels absorb the weight
/// singularities through mapped one-sided Gauss-Jacobi rules.
pub fn composite_integrate<F: Fn(f64) -> f64>(
    g: F,
    params: JacobiParams,
    npanels: usize,
) -> Result<f64> {
    let npanels = npanels.max(3);
    let (a, b) = (params.alpha(), params.beta());
    let right_rule = gauss_jacobi_rule(JacobiParams::new(a, 0.0)?, PANEL_ORDER)?;
    let left_rule = gauss_jacobi_rule(JacobiParams::new(0.0, b)?, PANEL_ORDER)?;
    let mid_rule = gauss_jacobi_rule(JacobiParams::new(0.0, 0.0)?, PANEL_ORDER)?;

    let boundary = |j: usize| -> f64 {
        // decreasing angle, increasing x
        (std::f64::consts::PI * (npanels - j) as f64 / npanels as f64).cos()
    };

    let mut total = 0.0;
    for j in 0..npanels {
        let lo = if j == 0 { -1.0 } else { boundary(j) };
        let hi = if j == npanels - 1 {
            1.0
        } else {
            boundary(j + 1)
        };
        let part = if j == 0 {
            // left endpoint panel: (1+x)^b handled by the rule
            let s = (1.0 + hi) / 2.0;
            let mut acc = 0.0;
            for (&t, &w) in left_rule.nodes.iter().zip(left_rule.weights.iter()) {
                let x = -1.0 + s * (1.0 + t);
                acc += w * g(x) * (1.0 - x).powf(a);
            }
            s.powf(b + 1.0) * acc
        } else if j == npanels - 1 {
            // right endpoint panel: (1-x)^a handled by the rule
            let s = (1.0 - lo) / 2.0;
            let mut acc = 0.0;
            for (&t, &w) in right_rule.nodes.iter().zip(right_rule.weights.iter()) {
                let x = 1.0 - s * (1.0 - t);
                acc += w * g(x) * (1.0 + x).powf(b);
            }
            s.powf(a + 1.0) * acc
        } else {
            let mid = 0.5 * (lo + hi);
            let half = 0.5 * (hi - lo);
            let mut acc = 0.0;
            for (&t, &w) in mid_rule.nodes.iter().zip(mid_rule.weights.iter()) {
                let x = mid + half * t;
                acc += w * g(x) * (1.0 - x).powf(a) * (1.0 + x).powf(b);
            }
            half * acc
        };
        if part.is_nan() {
            return Err(Error::NonFinite(format!(
                "composite panel [{lo}, {hi}] produced NaN"
            )));
        }
        total += part;
    }
    Ok(total)
}

/// Weighted `L^p` norm of `f` against `dμ_{alpha,beta}`.
///
/// For finite `p` the integrand `|f|^p` is handled by composite panels
/// (roughly `resolution` total nodes). `p = +inf` takes the max over a
/// Chebyshev-distributed grid of `resolution` points, which clusters at the
/// endpoints where Jacobi polynomials peak.
pub fn lp_norm<F: Fn(f64) -> f64>(
    f: F,
    p: f64,
    params: JacobiParams,
    resolution: usize,
) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "L^p norm requires p >= 1; got {p}"
        )));
    }
    if p.is_infinite() {
        let n = resolution.max(2);
        let mut best = 0.0f64;
        for i in 0..n {
            let theta = std::f64::consts::PI * i as f64 / (n - 1) as f64;
            let v = f(theta.cos()).abs();
            if v.is_nan() {
                return Err(Error::NonFinite("sup-norm scan hit NaN".into()));
            }
            best = best.max(v);
        }
        return Ok(best);
    }
    let npanels = (resolution / PANEL_ORDER).max(8);
    let integral = composite_integrate(|x| f(x).abs().powf(p), params, npanels)?;
    Ok(integral.powf(1.0 / p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jp(a: f64, b: f64) -> JacobiParams {
        JacobiParams::new(a, b).unwrap()
    }

    /// Moments `∫ x^k dμ` by the stable endpoint-integration recurrence
    /// `(k + a + b + 2) m_{k+1} = (b - a) m_k + k m_{k-1}`.
    pub(crate) fn moment_oracle(params: JacobiParams, kmax: usize) -> Vec<f64> {
        let (a, b) = (params.alpha(), params.beta());
        let mut m = vec![params.total_mass()];
        if kmax >= 1 {
            m.push((b - a) / (a + b + 2.0) * m[0]);
        }
        for k in 1..kmax {
            let kf = k as f64;
            m.push(((b - a) * m[k] + kf * m[k - 1]) / (kf + a + b + 2.0));
        }
        m
    }

    #[test]
    fn one_point_legendre_is_midpoint() {
        let rule = gauss_jacobi_rule(jp(0.0, 0.0), 1).unwrap();
        assert!(rule.nodes()[0].abs() < 1e-15);
        assert!((rule.weights()[0] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn zero_points_rejected() {
        assert!(gauss_jacobi_rule(jp(0.0, 0.0), 0).is_err());
    }

    #[test]
    fn total_weight_closed_form() {
        // ∫ (1-x) dx over [-1,1] = 2^2 B(2,1) = 2
        let rule = gauss_jacobi_rule(jp(1.0, 0.0), 8).unwrap();
        let total: f64 = rule.weights().iter().sum();
        assert!((total - 2.0).abs() < 1e-13);
    }

    #[test]
    fn high_moment_legendre() {
        let rule = gauss_jacobi_rule(jp(0.0, 0.0), 16).unwrap();
        let v = integrate(&rule, |x| x.powi(30)).unwrap();
        assert!((v - 2.0 / 31.0).abs() < 1e-12);
    }

    #[test]
    fn moment_exactness() {
        for &(a, b, n) in &[(0.0, 0.0, 12), (1.5, -0.5, 10), (-0.3, 2.0, 7)] {
            let params = jp(a, b);
            let rule = gauss_jacobi_rule(params, n).unwrap();
            let exact = moment_oracle(params, 2 * n - 1);
            for k in 0..=(2 * n - 1) {
                let got = integrate(&rule, |x| x.powi(k as i32)).unwrap();
                let scale = exact[k].abs().max(exact[0]);
                assert!(
                    (got - exact[k]).abs() < 1e-12 * scale,
                    "(a,b,n,k)=({a},{b},{n},{k}): {got} vs {}",
                    exact[k]
                );
            }
        }
    }

    #[test]
    fn nodes_interior_increasing_weights_positive() {
        for &(a, b, n) in &[(0.5, 0.5, 40), (-0.9, 3.0, 25), (2.0, 0.0, 100)] {
            let rule = gauss_jacobi_rule(jp(a, b), n).unwrap();
            for w in rule.weights() {
                assert!(*w > 0.0);
            }
            for pair in rule.nodes().windows(2) {
                assert!(pair[0] < pair[1]);
            }
            assert!(rule.nodes()[0] > -1.0 && rule.nodes()[n - 1] < 1.0);
        }
    }

    #[test]
    fn nodes_are_polynomial_roots() {
        let params = jp(0.7, 1.3);
        let n = 30;
        let rule = gauss_jacobi_rule(params, n).unwrap();
        let max_abs = (0..=512)
            .map(|i| {
                let x = (std::f64::consts::PI * i as f64 / 512.0).cos();
                crate::jacobi::jacobi_eval(params, n, x).unwrap().abs()
            })
            .fold(0.0f64, f64::max);
        for &x in rule.nodes() {
            let v = crate::jacobi::jacobi_eval(params, n, x).unwrap();
            assert!(v.abs() < 1e-8 * max_abs, "root residual {v} at {x}");
        }
    }

    #[test]
    fn rule_symmetry_under_parameter_swap() {
        let n = 21;
        let rule_ab = gauss_jacobi_rule(jp(1.25, 0.5), n).unwrap();
        let rule_ba = gauss_jacobi_rule(jp(0.5, 1.25), n).unwrap();
        for i in 0..n {
            assert!((rule_ab.nodes()[i] + rule_ba.nodes()[n - 1 - i]).abs() < 1e-12);
            assert!((rule_ab.weights()[i] - rule_ba.weights()[n - 1 - i]).abs() < 1e-12);
        }
    }

    #[test]
    fn orthonormality_through_integration() {
        let params = jp(0.0, 0.0);
        let rule = gauss_jacobi_rule(params, 12).unwrap();
        let pp = integrate(&rule, |x| {
            let v = orthonormal_eval(params, 2, x).unwrap();
            v * v
        })
        .unwrap();
        assert!((pp - 1.0).abs() < 1e-12);
        let cross = integrate(&rule, |x| {
            orthonormal_eval(params, 1, x).unwrap() * orthonormal_eval(params, 3, x).unwrap()
        })
        .unwrap();
        assert!(cross.abs() < 1e-12);
        let five = integrate(&rule, |x| {
            let v = orthonormal_eval(params, 5, x).unwrap();
            let w = crate::jacobi::orthonormal_norm_const(params, 5);
            // w_5 P_5 squared, written out to pin the normalization contract
            let p5 = crate::jacobi::jacobi_eval(params, 5, x).unwrap();
            assert!((v - w * p5).abs() < 1e-13 * v.abs().max(1.0));
            v * v
        })
        .unwrap();
        assert!((five - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nan_integrand_is_error() {
        let rule = gauss_jacobi_rule(jp(0.0, 0.0), 4).unwrap();
        assert!(integrate(&rule, |x| if x > 0.0 { f64::NAN } else { 1.0 }).is_err());
    }

    #[test]
    fn lp_norm_of_constant() {
        let v = lp_norm(|_| 1.0, 3.0, jp(0.0, 0.0), 256).unwrap();
        assert!((v - 2.0f64.powf(1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn lp_norm_rejects_small_p() {
        assert!(lp_norm(|_| 1.0, 0.5, jp(0.0, 0.0), 64).is_err());
    }

    #[test]
    fn l2_norm_of_orthonormal_polynomial() {
        for &(a, b, n) in &[(0.0, 0.0, 8), (1.0, 0.5, 17), (0.0, 2.0, 33)] {
            let params = jp(a, b);
            let v = lp_norm(
                |x| orthonormal_eval(params, n, x).unwrap(),
                2.0,
                params,
                64 * n,
            )
            .unwrap();
            assert!((v - 1.0).abs() < 1e-10, "(a,b,n)=({a},{b},{n}): {v}");
        }
    }

    #[test]
    fn lp_norm_self_convergence_high_degree() {
        let params = jp(0.0, 0.0);
        let n = 200;
        let f = |x: f64| orthonormal_eval(params, n, x).unwrap();
        let coarse = lp_norm(f, 6.0, params, 32 * n).unwrap();
        let fine = lp_norm(f, 6.0, params, 128 * n).unwrap();
        assert!(
            ((coarse - fine) / fine).abs() < 0.03,
            "coarse={coarse} fine={fine}"
        );
    }

    #[test]
    fn lp_norm_resolution_doubling_is_stable() {
        let params = jp(0.5, 0.0);
        let f = |x: f64| (3.0 * x).sin() + 0.25 * x;
        let coarse = lp_norm(f, 2.5, params, 512).unwrap();
        let fine = lp_norm(f, 2.5, params, 1024).unwrap();
        assert!(((coarse - fine) / fine).abs() < 1e-8);
    }

    #[test]
    fn sup_norm_of_polynomial() {
        // |p| maximized at the endpoints for Legendre
        let params = jp(0.0, 0.0);
        let v = lp_norm(
            |x| orthonormal_eval(params, 6, x).unwrap(),
            f64::INFINITY,
            params,
            32 * 6,
        )
        .unwrap();
        let endpoint = orthonormal_eval(params, 6, 1.0).unwrap();
        assert!((v - endpoint).abs() < 1e-12);
    }
}
