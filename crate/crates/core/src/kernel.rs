//! Numeric spot checks of the trigonometric kernel machinery.
//!
//! In the angle variable `x = cos(theta)` the orthonormal Jacobi polynomials
//! turn into the functions `phi_k` carrying half-angle sine/cosine
//! prefactors; the off-diagonal kernel behind the coefficient multiplier is
//! probed through its Abel means at `r < 1`, checked region-wise against the
//! three-piece envelope with boundaries `M(theta)`, `m(theta)`, and the
//! weighted Hardy conditions behind the endpoint regions are evaluated as
//! suprema over an `r`-grid.

use crate::error::{Error, Result};
use crate::jacobi::{self, JacobiParams};
use crate::quadrature::{self, QuadratureRule};
use serde::Serialize;
use std::f64::consts::PI;

fn check_angle(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::InvalidParameter(format!(
            "angle {theta} outside the open interval (0, pi)"
        )));
    }
    Ok(())
}

fn phi_prefactor(params: JacobiParams, theta: f64) -> f64 {
    let (a, b) = (params.alpha(), params.beta());
    2.0f64.powf((a + b + 1.0) / 2.0)
        * (theta / 2.0).sin().powf(a + 0.5)
        * (theta / 2.0).cos().powf(b + 0.5)
}

/// Trigonometric Jacobi function
/// `phi_k(theta) = 2^((a+b+1)/2) sin(theta/2)^(a+1/2) cos(theta/2)^(b+1/2) p_k(cos theta)`,
/// an orthonormal family in `L^2((0, pi), d theta)`.
pub fn phi_eval(params: JacobiParams, k: usize, theta: f64) -> Result<f64> {
    check_angle(theta)?;
    Ok(phi_prefactor(params, theta) * jacobi::orthonormal_eval(params, k, theta.cos())?)
}

/// `phi_0 .. phi_kmax` at a fixed angle in one recurrence sweep.
pub fn phi_table(params: JacobiParams, kmax: usize, theta: f64) -> Result<Vec<f64>> {
    check_angle(theta)?;
    let pre = phi_prefactor(params, theta);
    let mut seq = jacobi::orthonormal_sequence(params, kmax, theta.cos())?;
    for v in seq.iter_mut() {
        *v *= pre;
    }
    Ok(seq)
}

/// Boundaries of the middle (logarithmic) region of the kernel envelope:
/// `lower = M(theta) = max(theta/2, (3 theta - pi)/2)` and
/// `upper = m(theta) = min(3 theta/2, (theta + pi)/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionBoundaries {
    pub lower: f64,
    pub upper: f64,
}

pub fn region_boundaries(theta: f64) -> Result<RegionBoundaries> {
    check_angle(theta)?;
    Ok(RegionBoundaries {
        lower: (theta / 2.0).max((3.0 * theta - PI) / 2.0),
        upper: (3.0 * theta / 2.0).min((theta + PI) / 2.0),
    })
}

fn check_abel_parameter(r: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "Abel parameter must lie in (0, 1); got {r}"
        )));
    }
    Ok(())
}

/// Truncation length making the geometric tail of the Abel series certifiably
/// below 1e-12 for `r <= 0.995`.
pub fn default_nterms(r: f64) -> usize {
    ((1e-14 * (1.0 - r)).ln() / r.ln()).ceil() as usize
}

fn abel_sum(t_theta: &[f64], t_omega: &[f64], r: f64, d: i64, m: usize) -> f64 {
    let j0 = (-d).max(0) as usize;
    let mut rj = r.powi(j0 as i32);
    let mut acc = 0.0;
    #[allow(clippy::needless_range_loop)]
    for j in j0..t_omega.len() {
        let shifted = (j as i64 + d) as usize;
        if shifted >= t_theta.len() {
            break;
        }
        acc += rj * t_theta[shifted] * t_omega[j] / (j + m + 1) as f64;
        rj *= r;
    }
    acc
}

/// Abel-mean kernel: the `r`-damped series
/// `sum_j r^j phi_{j+d}(theta) phi_j(omega) / (j + m + 1)` with the first
/// factor at `first` parameters and the second at `second`.
#[allow(clippy::too_many_arguments)]
pub fn abel_kernel(
    first: JacobiParams,
    second: JacobiParams,
    r: f64,
    d: i64,
    m: usize,
    theta: f64,
    omega: f64,
    nterms: usize,
) -> Result<f64> {
    check_abel_parameter(r)?;
    let j0 = (-d).max(0) as usize;
    let jmax = j0 + nterms;
    let t_theta = phi_table(first, (jmax as i64 + d).max(0) as usize, theta)?;
    let t_omega = phi_table(second, jmax, omega)?;
    Ok(abel_sum(&t_theta, &t_omega, r, d, m))
}

/// The three-piece envelope of the `d = -1` kernel at a grid point; `None`
/// on a region boundary (strict inequalities decide membership).
fn envelope(alpha: f64, beta: f64, theta: f64, omega: f64) -> Option<(usize, f64)> {
    let rb = region_boundaries(theta).ok()?;
    if omega < rb.lower {
        let v = omega.powf(alpha - 0.5) * (PI - theta).powf(beta + 0.5)
            / (theta.powf(alpha - 0.5) * (PI - omega).powf(beta + 0.5));
        Some((0, v))
    } else if omega > rb.upper {
        let v = theta.powf(alpha + 0.5) * (PI - omega).powf(beta - 0.5)
            / (omega.powf(alpha + 0.5) * (PI - theta).powf(beta - 0.5));
        Some((2, v))
    } else if omega > rb.lower && omega < rb.upper && omega != theta {
        Some((1, (2.0 * theta / (theta - omega).abs()).ln()))
    } else {
        None
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GridSpec {
    pub n_theta: usize,
    pub n_omega: usize,
}

/// Region-wise suprema of `|kernel| / envelope` over an interior tensor grid.
#[derive(Debug, Clone, Serialize)]
pub struct KernelBoundReport {
    pub alpha: f64,
    pub beta: f64,
    pub m: usize,
    pub r: f64,
    pub region_sup: [f64; 3],
    pub grid: GridSpec,
}

/// Sweeps the `d = -1` Abel kernel at parameters `(alpha, beta)` against
/// `(alpha - 1, beta - 1)` over an `n x n` interior grid and reports the
/// supremum of `|kernel| / envelope` for each of the three regions.
pub fn check_kernel_bound(
    alpha: f64,
    beta: f64,
    m: usize,
    r: f64,
    grid_n: usize,
) -> Result<KernelBoundReport> {
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "kernel envelope requires alpha, beta > 0; got ({alpha}, {beta})"
        )));
    }
    check_abel_parameter(r)?;
    let first = JacobiParams::new(alpha, beta)?;
    let second = JacobiParams::new(alpha - 1.0, beta - 1.0)?;
    let nterms = default_nterms(r);

    let angles: Vec<f64> = (1..=grid_n)
        .map(|i| PI * i as f64 / (grid_n + 1) as f64)
        .collect();
    let theta_tables: Vec<Vec<f64>> = angles
        .iter()
        .map(|&t| phi_table(first, nterms, t))
        .collect::<Result<_>>()?;
    let omega_tables: Vec<Vec<f64>> = angles
        .iter()
        .map(|&t| phi_table(second, nterms + 1, t))
        .collect::<Result<_>>()?;

    let mut region_sup = [0.0f64; 3];
    for (ti, &theta) in angles.iter().enumerate() {
        for (oi, &omega) in angles.iter().enumerate() {
            let Some((region, bound)) = envelope(alpha, beta, theta, omega) else {
                continue;
            };
            let kernel = abel_sum(&theta_tables[ti], &omega_tables[oi], r, -1, m);
            let ratio = kernel.abs() / bound;
            if ratio > region_sup[region] {
                region_sup[region] = ratio;
            }
        }
    }
    Ok(KernelBoundReport {
        alpha,
        beta,
        m,
        r,
        region_sup,
        grid: GridSpec {
            n_theta: grid_n,
            n_omega: grid_n,
        },
    })
}

/// Which of the two one-sided Hardy inequalities the weight pair feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HardyVariant {
    /// Integration from the left endpoint (the region-1 operator).
    Standard,
    /// Integration toward the right endpoint (the region-3 operator).
    Adjoint,
}

const HARDY_PANELS: usize = 40;
const HARDY_GRID: usize = 25;

/// `∫ f` over `[lo, hi]` with panels geometrically graded (ratio 1/2) toward
/// both endpoints; the slivers next to the endpoints are summed by geometric
/// extrapolation of the innermost panels, which is exact for the power-law
/// behaviour these integrands have. A non-integrable endpoint shows up as an
/// extrapolation ratio >= 1 and yields `+inf`.
fn graded_integral<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    panels_per_side: usize,
    rule: &QuadratureRule,
) -> f64 {
    let panel = |a: f64, b: f64| -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        rule.nodes()
            .iter()
            .zip(rule.weights())
            .map(|(&t, &w)| w * f(mid + half * t))
            .sum::<f64>()
            * half
    };
    let mid = 0.5 * (lo + hi);
    let mut total = 0.0;
    for (end, sign) in [(lo, 1.0f64), (hi, -1.0)] {
        let span = (mid - end) * sign;
        let mut last = 0.0;
        let mut prev = 0.0;
        let mut tail_usable = false;
        for j in 0..panels_per_side {
            let outer = end + sign * span * 0.5f64.powi(j as i32);
            let inner = end + sign * span * 0.5f64.powi(j as i32 + 1);
            let (a, b) = if sign > 0.0 {
                (inner, outer)
            } else {
                (outer, inner)
            };
            if b - a <= 4.0 * f64::EPSILON * b.abs().max(1.0) {
                // panel width at the rounding floor; whatever is left of the
                // interval is not resolvable and cannot carry finite mass
                tail_usable = false;
                break;
            }
            let v = panel(a, b);
            total += v;
            prev = last;
            last = v;
            tail_usable = j >= 1;
        }
        // geometric tail below the innermost breakpoint
        if tail_usable && last > 0.0 && prev > 0.0 {
            let rho = last / prev;
            if rho >= 1.0 {
                if last > 1e-9 * total.abs() {
                    return f64::INFINITY;
                }
            } else {
                total += last * rho / (1.0 - rho);
            }
        }
    }
    total
}

fn half_angle_weight(alpha: f64, beta: f64, p: f64, theta: f64) -> f64 {
    (theta / 2.0).sin().powf((alpha + 0.5) * (2.0 - p))
        * (theta / 2.0).cos().powf((beta + 0.5) * (2.0 - p))
}

/// The Hardy-condition supremum for the endpoint-region weight pairs:
/// `sup_r (∫ U^p)^(1/p) (∫ V^(-p'))^(1/p')` with the integration ranges
/// split at `r` according to the variant. `+inf` is returned (not an error)
/// when an endpoint integral diverges.
pub fn hardy_supremum(p: f64, alpha: f64, beta: f64, variant: HardyVariant) -> Result<f64> {
    if !(p > 1.0) || p.is_infinite() {
        return Err(Error::InvalidParameter(format!(
            "Hardy condition requires 1 < p < inf; got {p}"
        )));
    }
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "Hardy weights require alpha, beta > 0; got ({alpha}, {beta})"
        )));
    }
    let pc = p / (p - 1.0);
    // the singular ratio attached to both weights of the pair
    let shape: Box<dyn Fn(f64) -> f64> = match variant {
        HardyVariant::Standard => {
            Box::new(move |t: f64| (PI - t).powf(beta + 0.5) / t.powf(alpha - 0.5))
        }
        HardyVariant::Adjoint => {
            Box::new(move |t: f64| t.powf(alpha + 0.5) / (PI - t).powf(beta - 0.5))
        }
    };
    let u_p = |t: f64| half_angle_weight(alpha, beta, p, t) * shape(t).powf(p);
    let v_mpc = |t: f64| {
        (half_angle_weight(alpha - 1.0, beta - 1.0, p, t).powf(1.0 / p) * shape(t)).powf(-pc)
    };

    let rule = quadrature::gauss_jacobi_rule(JacobiParams::new(0.0, 0.0)?, 8)?;
    let mut sup = 0.0f64;
    for i in 1..=(2 * HARDY_GRID) {
        // log-spaced split points accumulating toward both endpoints
        let split = if i <= HARDY_GRID {
            PI * 0.5f64.powi((HARDY_GRID - i + 1) as i32)
        } else {
            PI * (1.0 - 0.5f64.powi((i - HARDY_GRID) as i32))
        };
        let (iu, iv) = match variant {
            HardyVariant::Standard => (
                graded_integral(&u_p, split, PI, HARDY_PANELS, &rule),
                graded_integral(&v_mpc, 0.0, split, HARDY_PANELS, &rule),
            ),
            HardyVariant::Adjoint => (
                graded_integral(&u_p, 0.0, split, HARDY_PANELS, &rule),
                graded_integral(&v_mpc, split, PI, HARDY_PANELS, &rule),
            ),
        };
        let product = iu.powf(1.0 / p) * iv.powf(1.0 / pc);
        if product.is_nan() {
            return Err(Error::NonFinite(format!(
                "Hardy product NaN at split {split}"
            )));
        }
        sup = sup.max(product);
    }
    Ok(sup)
}
