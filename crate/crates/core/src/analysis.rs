//! Quantitative experiments: critical windows, norm-growth fits, dual-norm
//! products, coefficient-ratio asymptotics, and partial-sum convergence runs.
//!
//! The growth experiments realize "norm comparable to n^s" statements as
//! least-squares slopes on (log n, log value) over geometric degree ladders,
//! which separates the bounded / logarithmic / polynomial regimes at desk
//! scale.

use crate::error::{Error, Result};
use crate::functions::{QBundle, ResidualBundle};
use crate::jacobi::{self, JacobiParams};
use crate::quadrature;
use crate::sobolev::{self, FunctionBundle, SobolevParams};
use serde::Serialize;

/// Open interval of exponents `p` with uniformly bounded partial sums.
/// The endpoints are mutual Hölder conjugates and bracket 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalWindow {
    p_lower: f64,
    p_upper: f64,
}

impl CriticalWindow {
    pub fn lower(&self) -> f64 {
        self.p_lower
    }

    pub fn upper(&self) -> f64 {
        self.p_upper
    }

    /// Strict containment; the boundary exponents count as outside.
    pub fn contains(&self, p: f64) -> bool {
        self.p_lower < p && p < self.p_upper
    }
}

fn window_from_gammas(ga: f64, gb: f64) -> CriticalWindow {
    let lower = |g: f64| 4.0 * (g + 1.0) / (2.0 * g + 3.0);
    let upper = |g: f64| {
        let d = 2.0 * g + 1.0;
        if d <= 0.0 {
            f64::INFINITY
        } else {
            4.0 * (g + 1.0) / d
        }
    };
    CriticalWindow {
        p_lower: lower(ga).max(lower(gb)),
        p_upper: upper(ga).min(upper(gb)),
    }
}

/// The uniform-boundedness window for the Sobolev partial sums: the max/min
/// of the displayed fractions at `gamma = alpha + m` and `beta + m`.
pub fn critical_window(alpha: f64, beta: f64, m: usize) -> Result<CriticalWindow> {
    if m == 0 {
        return Err(Error::InvalidParameter("window requires m >= 1".into()));
    }
    JacobiParams::new(alpha, beta)?;
    Ok(window_from_gammas(alpha + m as f64, beta + m as f64))
}

/// Pollard's window for classical Jacobi partial sums, `alpha, beta >= -1/2`.
/// At the boundary parameter `-1/2` the upper endpoint is open-ended and is
/// reported as `+inf`.
pub fn jacobi_partial_sum_window(alpha: f64, beta: f64) -> Result<CriticalWindow> {
    if !(alpha >= -0.5) || !(beta >= -0.5) {
        return Err(Error::InvalidParameter(format!(
            "classical window requires alpha, beta >= -1/2; got ({alpha}, {beta})"
        )));
    }
    Ok(window_from_gammas(alpha, beta))
}

/// A fitted log-log growth rate over a degree ladder.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthFit {
    pub exponent: f64,
    pub r2: f64,
    pub degrees: Vec<usize>,
    pub values: Vec<f64>,
}

/// Least-squares slope of `log value` against `log degree`. Requires at
/// least 5 positive samples spanning a decade.
pub fn fit_log_log(degrees: &[usize], values: &[f64]) -> Result<GrowthFit> {
    if degrees.len() != values.len() || degrees.len() < 5 {
        return Err(Error::InvalidParameter(
            "growth fit needs at least 5 (degree, value) samples".into(),
        ));
    }
    if (degrees[degrees.len() - 1] as f64) < 10.0 * degrees[0] as f64 {
        return Err(Error::InvalidParameter(
            "growth fit degrees must span at least one decade".into(),
        ));
    }
    if values.iter().any(|v| !(*v > 0.0)) {
        return Err(Error::InvalidParameter(
            "growth fit needs strictly positive values".into(),
        ));
    }
    let xs: Vec<f64> = degrees.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    Ok(GrowthFit {
        exponent: slope,
        r2,
        degrees: degrees.to_vec(),
        values: values.to_vec(),
    })
}

/// Norm-growth regime of `||p_n||_p` relative to the critical exponent
/// `4(gamma+1)/(2 gamma+1)`, `gamma = max(alpha, beta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LpRegime {
    Bounded,
    Logarithmic,
    Polynomial,
}

pub fn lp_regime(params: JacobiParams, p: f64) -> LpRegime {
    let g = params.alpha().max(params.beta());
    let critical = 4.0 * (g + 1.0) / (2.0 * g + 1.0);
    if p < critical {
        LpRegime::Bounded
    } else if p == critical {
        LpRegime::Logarithmic
    } else {
        LpRegime::Polynomial
    }
}

/// `||p_n||_{L^p}` for each degree, with a slope fit. Every norm is
/// recomputed at double resolution; disagreement beyond 0.5% is reported as
/// an unconverged-quadrature error.
pub fn jacobi_lp_growth(params: JacobiParams, p: f64, degrees: &[usize]) -> Result<GrowthFit> {
    let mut values = Vec::with_capacity(degrees.len());
    for &n in degrees {
        let f = |x: f64| jacobi::orthonormal_eval(params, n, x).unwrap();
        let res = 32 * n.max(8);
        let v = quadrature::lp_norm(f, p, params, res)?;
        let check = quadrature::lp_norm(f, p, params, 2 * res)?;
        if ((v - check) / check).abs() > 5e-3 {
            return Err(Error::Unconverged(format!(
                "L^{p} norm at degree {n}: {v} vs {check} at doubled resolution"
            )));
        }
        values.push(check);
    }
    fit_log_log(degrees, &values)
}

/// The dual-norm product `||q_n||_{W^{p,m}} ||q_n||_{W^{p',m}}` with
/// `1/p + 1/p' = 1`; bounded in `n` exactly inside the critical window.
pub fn norm_product(sp: SobolevParams, n: usize, p: f64, resolution: usize) -> Result<f64> {
    if !(p > 1.0) || p.is_infinite() {
        return Err(Error::InvalidParameter(format!(
            "norm product requires 1 < p < inf; got {p}"
        )));
    }
    let q = p / (p - 1.0);
    let bundle = QBundle::new(sp, n);
    let np = sobolev::sobolev_norm(sp, &bundle, p, resolution)?;
    let nq = sobolev::sobolev_norm(sp, &bundle, q, resolution)?;
    Ok(np * nq)
}

/// The scaled coefficient ratio `sqrt(r_{j,k} r_{j,l}) / s_{j,m}` times
/// `(j+1)^(2m-k-l)`, with limit and first-order Richardson estimates.
#[derive(Debug, Clone, Serialize)]
pub struct AsymRatio {
    pub a_estimate: f64,
    pub b_estimate: f64,
    pub degrees: Vec<usize>,
    pub values: Vec<f64>,
}

pub fn scaled_asym_ratio(sp: SobolevParams, k: usize, ell: usize, j: usize) -> f64 {
    let params = sp.jacobi();
    let rk = jacobi::derivative_factor(params, j, k).value();
    let rl = jacobi::derivative_factor(params, j, ell).value();
    let scale = ((j + 1) as f64).powi((2 * sp.order()) as i32 - (k + ell) as i32);
    (rk * rl).sqrt() / sobolev::s_factor(sp, j) * scale
}

pub fn asym_ratio_check(
    sp: SobolevParams,
    k: usize,
    ell: usize,
    degrees: &[usize],
) -> Result<AsymRatio> {
    if k > sp.order() || ell > sp.order() {
        return Err(Error::InvalidParameter(format!(
            "derivative orders ({k}, {ell}) exceed m = {}",
            sp.order()
        )));
    }
    if degrees.len() < 2 {
        return Err(Error::InvalidParameter(
            "asymptotic check needs at least two degrees".into(),
        ));
    }
    let values: Vec<f64> = degrees
        .iter()
        .map(|&j| scaled_asym_ratio(sp, k, ell, j))
        .collect();
    // model v(j) = A + B/(j+1): solve from the two largest degrees
    let (j1, j2) = (degrees[degrees.len() - 2], degrees[degrees.len() - 1]);
    let (v1, v2) = (values[values.len() - 2], values[values.len() - 1]);
    let (x1, x2) = ((j1 + 1) as f64, (j2 + 1) as f64);
    let a = (v2 * x2 - v1 * x1) / (x2 - x1);
    let b = (v1 - a) * x1;
    Ok(AsymRatio {
        a_estimate: a,
        b_estimate: b,
        degrees: degrees.to_vec(),
        values,
    })
}

/// Errors `||S_n f - f||_{W^{p,m}}` over a truncation ladder.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub truncations: Vec<usize>,
    pub errors: Vec<f64>,
}

impl ConvergenceReport {
    /// Strictly decreasing while the error is still above `floor`; noise at
    /// the quadrature floor does not count against monotonicity.
    pub fn decreasing_above(&self, floor: f64) -> bool {
        self.errors
            .windows(2)
            .all(|w| w[1] < w[0] || (w[0] < floor && w[1] < floor))
    }
}

pub fn convergence_experiment(
    sp: SobolevParams,
    f: &dyn FunctionBundle,
    p: f64,
    truncations: &[usize],
    resolution: usize,
) -> Result<ConvergenceReport> {
    if truncations.is_empty() || truncations.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "truncations must be a nonempty increasing list".into(),
        ));
    }
    let nmax = *truncations.last().unwrap();
    // project once at the largest truncation; shorter sums share coefficients
    let full = sobolev::partial_sum(sp, f, nmax, resolution)?;
    let mut errors = Vec::with_capacity(truncations.len());
    for &n in truncations {
        let e = full.truncate(n);
        let residual = ResidualBundle::new(f, &e);
        errors.push(sobolev::sobolev_norm(sp, &residual, p, resolution)?);
    }
    Ok(ConvergenceReport {
        truncations: truncations.to_vec(),
        errors,
    })
}
