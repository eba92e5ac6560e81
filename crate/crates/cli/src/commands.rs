//! One function per subcommand. Each prints a one-line summary to stdout
//! and delivers the data table through `output`.

use crate::config::{parse_degrees, parse_p_grid, parse_points, Settings};
use crate::output::{deliver, deliver_text, fmt, Table};
use crate::CliError;
use jsobolev::analysis;
use jsobolev::functions::parse_bundle;
use jsobolev::kernel::{self, HardyVariant};
use jsobolev::sobolev::{self, SobolevParams};

type CmdResult = Result<(), CliError>;

fn sobolev_params(s: &Settings) -> Result<SobolevParams, CliError> {
    Ok(SobolevParams::new(s.alpha, s.beta, s.m)?)
}

pub fn window(s: &Settings) -> CmdResult {
    let w = analysis::critical_window(s.alpha, s.beta, s.m)?;
    println!("p_lower={} p_upper={}", w.lower(), w.upper());
    Ok(())
}

pub fn eval(s: &Settings) -> CmdResult {
    let sp = sobolev_params(s)?;
    let f = parse_bundle(s.need_f()?, sp)?;
    let xs = parse_points(
        s.x.as_deref()
            .ok_or_else(|| jsobolev::Error::InvalidParameter("missing --x".into()))?,
    )?;
    let mut table = Table::new(&["x", "k", "value"]);
    for &x in &xs {
        let v = f.eval(s.k, x);
        if v.is_nan() {
            return Err(jsobolev::Error::NonFinite(format!("NaN at x = {x}")).into());
        }
        table.push(vec![fmt(x), s.k.to_string(), fmt(v)]);
    }
    println!(
        "eval: {} points, derivative order {}, alpha={} beta={} m={}",
        xs.len(),
        s.k,
        s.alpha,
        s.beta,
        s.m
    );
    deliver(s, &table)?;
    Ok(())
}

pub fn coeffs(s: &Settings) -> CmdResult {
    let sp = sobolev_params(s)?;
    let n = s.need_n()?;
    let f = parse_bundle(s.need_f()?, sp)?;
    let e = sobolev::partial_sum(sp, f.as_ref(), n, s.resolution_for(n))?;
    let mut table = Table::new(&["j", "coeff"]);
    for (j, &c) in e.coeffs().iter().enumerate() {
        table.push(vec![j.to_string(), fmt(c)]);
    }
    println!(
        "coeffs: degrees 0..={n} of '{}' at alpha={} beta={} m={}",
        s.need_f()?,
        s.alpha,
        s.beta,
        s.m
    );
    deliver(s, &table)?;
    Ok(())
}

pub fn partial_sum(s: &Settings) -> CmdResult {
    let sp = sobolev_params(s)?;
    let n = s.need_n()?;
    let f = parse_bundle(s.need_f()?, sp)?;
    let truncations: Vec<usize> = (0..=n).collect();
    let report =
        analysis::convergence_experiment(sp, f.as_ref(), s.p, &truncations, s.resolution_for(n))?;
    let mut table = Table::new(&["n", "error"]);
    for (&j, &e) in report.truncations.iter().zip(&report.errors) {
        table.push(vec![j.to_string(), fmt(e)]);
    }
    println!(
        "partial-sum: '{}' truncated at 0..={n}, error in the order-{} Sobolev norm at p={}",
        s.need_f()?,
        s.m,
        s.p
    );
    deliver(s, &table)?;
    Ok(())
}

pub fn norms(s: &Settings) -> CmdResult {
    let sp = sobolev_params(s)?;
    let n = s.n.unwrap_or(0);
    let f = parse_bundle(s.need_f()?, sp)?;
    let ps = match &s.p_grid {
        Some(g) => parse_p_grid(g)?,
        None => vec![s.p],
    };
    let resolution = s.resolution_for(n.max(32));
    let mut table = Table::new(&["p", "value"]);
    for &p in &ps {
        let v = sobolev::sobolev_norm(sp, f.as_ref(), p, resolution)?;
        table.push(vec![fmt(p), fmt(v)]);
    }
    println!(
        "norms: '{}' at {} exponent(s), alpha={} beta={} m={}",
        s.need_f()?,
        ps.len(),
        s.alpha,
        s.beta,
        s.m
    );
    deliver(s, &table)?;
    Ok(())
}

pub fn sweep_p(s: &Settings) -> CmdResult {
    let sp = sobolev_params(s)?;
    let ps = parse_p_grid(
        s.p_grid
            .as_deref()
            .ok_or_else(|| jsobolev::Error::InvalidParameter("missing --p-grid".into()))?,
    )?;
    let degrees = parse_degrees(
        s.degrees
            .as_deref()
            .ok_or_else(|| jsobolev::Error::InvalidParameter("missing --degrees".into()))?,
    )?;
    let window = analysis::critical_window(s.alpha, s.beta, s.m)?;
    let mut table = Table::new(&["p", "n", "value", "slope_window_flag"]);
    for &p in &ps {
        let flag = if window.contains(p) { "1" } else { "0" };
        for &n in &degrees {
            let v = analysis::norm_product(sp, n, p, s.resolution_for(n))?;
            table.push(vec![fmt(p), n.to_string(), fmt(v), flag.to_string()]);
        }
    }
    println!(
        "sweep-p: dual-norm products over {} exponents x {} degrees; window ({}, {})",
        ps.len(),
        degrees.len(),
        window.lower(),
        window.upper()
    );
    deliver(s, &table)?;
    Ok(())
}

pub fn asym(s: &Settings) -> CmdResult {
    let sp = sobolev_params(s)?;
    let k = s.k;
    let ell = s.ell.unwrap_or(k);
    let degrees = match &s.degrees {
        Some(d) => parse_degrees(d)?,
        None => vec![16, 32, 64, 128, 256, 512, 1024, 2048, 4096],
    };
    let ratio = analysis::asym_ratio_check(sp, k, ell, &degrees)?;
    let mut table = Table::new(&["j", "value"]);
    for (&j, &v) in ratio.degrees.iter().zip(&ratio.values) {
        table.push(vec![j.to_string(), fmt(v)]);
    }
    println!(
        "asym: scaled coefficient ratio (k={k}, ell={ell}); limit ~ {} with 1/j correction {}",
        ratio.a_estimate, ratio.b_estimate
    );
    deliver(s, &table)?;
    Ok(())
}

pub fn kernel_check(s: &Settings) -> CmdResult {
    let report = kernel::check_kernel_bound(s.alpha, s.beta, s.m, s.r, s.grid)?;
    println!(
        "kernel-check: region suprema {} {} {} at r={} on a {}x{} grid",
        fmt(report.region_sup[0]),
        fmt(report.region_sup[1]),
        fmt(report.region_sup[2]),
        s.r,
        s.grid,
        s.grid
    );
    let mut text = serde_json::to_string_pretty(&report).expect("report serialization");
    text.push('\n');
    deliver_text(s, &text)?;
    Ok(())
}

pub fn hardy_check(s: &Settings) -> CmdResult {
    let variant = match s.variant.as_str() {
        "standard" => HardyVariant::Standard,
        _ => HardyVariant::Adjoint,
    };
    let sup = kernel::hardy_supremum(s.p, s.alpha, s.beta, variant)?;
    println!("hardy-check: sup={sup} ({} variant)", s.variant);
    let mut table = Table::new(&["variant", "p", "alpha", "beta", "sup"]);
    table.push(vec![
        s.variant.clone(),
        fmt(s.p),
        fmt(s.alpha),
        fmt(s.beta),
        fmt(sup),
    ]);
    deliver(s, &table)?;
    Ok(())
}
