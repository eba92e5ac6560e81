//! Classical and orthonormal Jacobi polynomials.
//!
//! Everything here is parameterized by a pair of exponents `(alpha, beta)`,
//! both `> -1`, defining the measure `(1-x)^alpha (1+x)^beta dx` on `[-1, 1]`.
//! Classical polynomials `P_n` are evaluated by the three-term recurrence;
//! the orthonormal family `p_n = w_n P_n` uses normalization constants
//! computed through log-Gamma differences so that degrees well beyond the
//! Gamma overflow threshold stay finite.

use crate::error::{Error, Result};
use statrs::function::gamma::ln_gamma;

/// Exponent pair of the Jacobi weight `(1-x)^alpha (1+x)^beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    alpha: f64,
    beta: f64,
}

impl JacobiParams {
    /// Requires `alpha > -1` and `beta > -1` (integrability of the weight).
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0) || !(beta > -1.0) {
            return Err(Error::InvalidParameter(format!(
                "Jacobi exponents must satisfy alpha, beta > -1; got alpha={alpha}, beta={beta}"
            )));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Both exponents shifted by `k`, the measure that pairs with k-th
    /// derivatives.
    pub fn shift(&self, k: usize) -> Self {
        Self {
            alpha: self.alpha + k as f64,
            beta: self.beta + k as f64,
        }
    }

    /// Exponents swapped; the measure obtained under `x -> -x`.
    pub fn swapped(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
        }
    }

    /// Total mass `∫ dμ = 2^(alpha+beta+1) B(alpha+1, beta+1)`.
    pub fn total_mass(&self) -> f64 {
        let (a, b) = (self.alpha, self.beta);
        ((a + b + 1.0) * std::f64::consts::LN_2 + ln_gamma(a + 1.0) + ln_gamma(b + 1.0)
            - ln_gamma(a + b + 2.0))
        .exp()
    }
}

/// Eigenvalue `lambda_n = n (n + alpha + beta + 1)` of the Jacobi differential
/// operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalue(f64);

impl Eigenvalue {
    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Closed-form factor `r_{n,k}` relating k-th derivatives of `p_n` to shifted
/// orthonormal polynomials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeFactor(f64);

impl DerivativeFactor {
    pub fn value(&self) -> f64 {
        self.0
    }
}

pub fn eigenvalue(params: JacobiParams, n: usize) -> Eigenvalue {
    let nf = n as f64;
    Eigenvalue(nf * (nf + params.alpha + params.beta + 1.0))
}

/// `r_{n,k}`: the product of eigenvalues `lambda_{n-j}` at shifted parameters
/// `(alpha+j, beta+j)`, `j = 0..k`. `r_{n,0} = 1`; zero when `k > n`.
pub fn derivative_factor(params: JacobiParams, n: usize, k: usize) -> DerivativeFactor {
    if k > n {
        return DerivativeFactor(0.0);
    }
    let mut r = 1.0;
    for j in 0..k {
        r *= eigenvalue(params.shift(j), n - j).value();
    }
    DerivativeFactor(r)
}

fn check_point(x: f64) -> Result<()> {
    if x.is_nan() {
        return Err(Error::NonFinite("evaluation point is NaN".into()));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!(
            "evaluation point {x} outside [-1, 1]"
        )));
    }
    Ok(())
}

/// Classical Jacobi polynomial `P_n(x)` by the three-term recurrence.
pub fn jacobi_eval(params: JacobiParams, n: usize, x: f64) -> Result<f64> {
    check_point(x)?;
    let (a, b) = (params.alpha, params.beta);
    if n == 0 {
        return Ok(1.0);
    }
    let mut pm1 = 1.0;
    let mut p = 0.5 * ((a + b + 2.0) * x + (a - b));
    for j in 2..=n {
        let jf = j as f64;
        let c = 2.0 * jf + a + b;
        let c1 = 2.0 * jf * (jf + a + b) * (c - 2.0);
        let c2 = (c - 1.0) * (a * a - b * b);
        let c3 = (c - 2.0) * (c - 1.0) * c;
        let c4 = 2.0 * (jf + a - 1.0) * (jf + b - 1.0) * c;
        let next = ((c2 + c3 * x) * p - c4 * pm1) / c1;
        pm1 = p;
        p = next;
    }
    Ok(p)
}

/// `w_n`: the constant making `w_n P_n` a unit vector in `L^2(dμ)`.
///
/// Computed as `exp` of a log-Gamma combination; stays finite for degrees far
/// beyond the point where the individual Gamma values overflow.
pub fn orthonormal_norm_const(params: JacobiParams, n: usize) -> f64 {
    let (a, b) = (params.alpha, params.beta);
    let nf = n as f64;
    let ln_sq = (2.0 * nf + a + b + 1.0).ln() + ln_gamma(nf + 1.0) + ln_gamma(nf + a + b + 1.0)
        - (a + b + 1.0) * std::f64::consts::LN_2
        - ln_gamma(nf + a + 1.0)
        - ln_gamma(nf + b + 1.0);
    (0.5 * ln_sq).exp()
}

/// Orthonormal Jacobi polynomial `p_n(x) = w_n P_n(x)`.
pub fn orthonormal_eval(params: JacobiParams, n: usize, x: f64) -> Result<f64> {
    Ok(orthonormal_norm_const(params, n) * jacobi_eval(params, n, x)?)
}

/// Diagonal entry `a_n` of the Jacobi matrix for the orthonormal recurrence
/// `x p_n = b_{n+1} p_{n+1} + a_n p_n + b_n p_{n-1}`.
pub(crate) fn recurrence_diag(params: JacobiParams, n: usize) -> f64 {
    let (a, b) = (params.alpha, params.beta);
    if n == 0 {
        (b - a) / (a + b + 2.0)
    } else {
        let c = 2.0 * n as f64 + a + b;
        (b * b - a * a) / (c * (c + 2.0))
    }
}

/// Off-diagonal entry `b_n`, `n >= 1`, of the Jacobi matrix.
pub(crate) fn recurrence_offdiag(params: JacobiParams, n: usize) -> f64 {
    let (a, b) = (params.alpha, params.beta);
    debug_assert!(n >= 1);
    let sq = if n == 1 {
        // the general formula has a removable (1 + a + b) / (1 + a + b);
        // cancel it analytically to stay clear of a + b near -1
        4.0 * (1.0 + a) * (1.0 + b) / ((a + b + 2.0).powi(2) * (a + b + 3.0))
    } else {
        let nf = n as f64;
        let c = 2.0 * nf + a + b;
        4.0 * nf * (nf + a) * (nf + b) * (nf + a + b) / (c * c * (c + 1.0) * (c - 1.0))
    };
    sq.sqrt()
}

/// Values `p_0(x), ..., p_nmax(x)` of the orthonormal family in one sweep of
/// the symmetric recurrence.
pub fn orthonormal_sequence(params: JacobiParams, nmax: usize, x: f64) -> Result<Vec<f64>> {
    check_point(x)?;
    let mut out = Vec::with_capacity(nmax + 1);
    let p0 = 1.0 / params.total_mass().sqrt();
    out.push(p0);
    if nmax == 0 {
        return Ok(out);
    }
    let mut prev = 0.0;
    let mut cur = p0;
    let mut b_n = 0.0;
    for n in 0..nmax {
        let b_next = recurrence_offdiag(params, n + 1);
        let next = ((x - recurrence_diag(params, n)) * cur - b_n * prev) / b_next;
        out.push(next);
        prev = cur;
        cur = next;
        b_n = b_next;
    }
    Ok(out)
}

/// k-th derivative of the orthonormal polynomial:
/// `p_n^(k)(x) = sqrt(r_{n,k}) p_{n-k}` at parameters shifted by `k`.
pub fn orthonormal_derivative_eval(
    params: JacobiParams,
    n: usize,
    k: usize,
    x: f64,
) -> Result<f64> {
    if k > n {
        check_point(x)?;
        return Ok(0.0);
    }
    let r = derivative_factor(params, n, k).value();
    Ok(r.sqrt() * orthonormal_eval(params.shift(k), n - k, x)?)
}
