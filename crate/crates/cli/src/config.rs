//! Flag / config-file / environment merging.
//!
//! Precedence, highest first: command-line flags, then the `--config` JSON
//! file, then the `JSOBOLEV_RESOLUTION` environment variable (resolution
//! only), then built-in defaults. Unknown keys in the config file are hard
//! errors.

use clap::Args;
use jsobolev::{Error, Result};
use serde::Deserialize;
use std::path::PathBuf;

/// Flags shared by every subcommand; all optional so that a config file can
/// supply any of them.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Left Jacobi exponent (weight `(1-x)^alpha`)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Right Jacobi exponent (weight `(1+x)^beta`)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// Number of derivative terms in the Sobolev inner product
    #[arg(long, global = true)]
    pub m: Option<usize>,
    /// Lebesgue exponent
    #[arg(long, global = true)]
    pub p: Option<f64>,
    /// Arithmetic exponent grid `a:b:step`
    #[arg(long = "p-grid", global = true)]
    pub p_grid: Option<String>,
    /// Degree ladder: comma list `16,32,64` or geometric `16:1024:*2`
    #[arg(long, global = true)]
    pub degrees: Option<String>,
    /// Truncation degree
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Test function: `q<j>`, `poly:<c0,c1,...>`, `expx`, `onemx:<g>`, `sin:<k>`
    #[arg(long, global = true)]
    pub f: Option<String>,
    /// Evaluation points, comma separated
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Derivative order
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Second derivative order (asymptotic ratios)
    #[arg(long, global = true)]
    pub ell: Option<usize>,
    /// Quadrature points per rule (default scales with the degree)
    #[arg(long, global = true)]
    pub resolution: Option<usize>,
    /// Abel parameter in (0, 1)
    #[arg(long, global = true)]
    pub r: Option<f64>,
    /// Grid points per axis for kernel checks
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Hardy variant: `standard` or `adjoint`
    #[arg(long, global = true)]
    pub variant: Option<String>,
    /// Output file for the data table
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format: `csv` or `json`
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// JSON config file; flags override its values
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Config-file schema. Field names match the long flag names.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    alpha: Option<f64>,
    beta: Option<f64>,
    m: Option<usize>,
    p: Option<f64>,
    p_grid: Option<String>,
    degrees: Option<String>,
    n: Option<usize>,
    f: Option<String>,
    x: Option<String>,
    k: Option<usize>,
    ell: Option<usize>,
    resolution: Option<usize>,
    r: Option<f64>,
    grid: Option<usize>,
    variant: Option<String>,
    out: Option<PathBuf>,
    format: Option<String>,
}

/// Fully merged settings with defaults applied where sensible; fields that
/// have no safe default stay optional and are demanded per command.
#[derive(Debug, Clone)]
pub struct Settings {
    pub alpha: f64,
    pub beta: f64,
    pub m: usize,
    pub p: f64,
    pub p_grid: Option<String>,
    pub degrees: Option<String>,
    pub n: Option<usize>,
    pub f: Option<String>,
    pub x: Option<String>,
    pub k: usize,
    pub ell: Option<usize>,
    pub resolution: Option<usize>,
    pub r: f64,
    pub grid: usize,
    pub variant: String,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl Settings {
    pub fn merge(args: &CommonArgs) -> Result<Self> {
        let file = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Error::InvalidParameter(format!("cannot read config {}: {e}", path.display()))
                })?;
                serde_json::from_str::<FileConfig>(&text).map_err(|e| {
                    Error::InvalidParameter(format!("bad config {}: {e}", path.display()))
                })?
            }
            None => FileConfig::default(),
        };
        let env_resolution = match std::env::var("JSOBOLEV_RESOLUTION") {
            Ok(s) => Some(s.parse::<usize>().map_err(|_| {
                Error::InvalidParameter(format!("bad JSOBOLEV_RESOLUTION value '{s}'"))
            })?),
            Err(_) => None,
        };
        let format = match args
            .format
            .clone()
            .or(file.format)
            .unwrap_or_else(|| "csv".into())
            .as_str()
        {
            "csv" => OutputFormat::Csv,
            "json" => OutputFormat::Json,
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown format '{other}' (expected csv or json)"
                )))
            }
        };
        let variant = args
            .variant
            .clone()
            .or(file.variant)
            .unwrap_or_else(|| "standard".into());
        if variant != "standard" && variant != "adjoint" {
            return Err(Error::InvalidParameter(format!(
                "unknown variant '{variant}' (expected standard or adjoint)"
            )));
        }
        Ok(Settings {
            alpha: args.alpha.or(file.alpha).unwrap_or(0.0),
            beta: args.beta.or(file.beta).unwrap_or(0.0),
            m: args.m.or(file.m).unwrap_or(1),
            p: args.p.or(file.p).unwrap_or(2.0),
            p_grid: args.p_grid.clone().or(file.p_grid),
            degrees: args.degrees.clone().or(file.degrees),
            n: args.n.or(file.n),
            f: args.f.clone().or(file.f),
            x: args.x.clone().or(file.x),
            k: args.k.or(file.k).unwrap_or(0),
            ell: args.ell.or(file.ell),
            resolution: args.resolution.or(file.resolution).or(env_resolution),
            r: args.r.or(file.r).unwrap_or(0.95),
            grid: args.grid.or(file.grid).unwrap_or(80),
            variant,
            out: args.out.clone().or(file.out),
            format,
        })
    }

    pub fn need_n(&self) -> Result<usize> {
        self.n
            .ok_or_else(|| Error::InvalidParameter("missing --n".into()))
    }

    pub fn need_f(&self) -> Result<&str> {
        self.f
            .as_deref()
            .ok_or_else(|| Error::InvalidParameter("missing --f".into()))
    }

    pub fn resolution_for(&self, n: usize) -> usize {
        self.resolution
            .unwrap_or_else(|| jsobolev::sobolev::default_resolution(n))
    }
}

/// Parses a degree ladder: `16,32,64` or geometric `start:stop:*factor`.
pub fn parse_degrees(spec: &str) -> Result<Vec<usize>> {
    if let Some((range, factor)) = spec.split_once(":*") {
        let (a, b) = range
            .split_once(':')
            .ok_or_else(|| Error::InvalidParameter(format!("bad degree range '{spec}'")))?;
        let (a, b, factor): (usize, usize, usize) = match (a.parse(), b.parse(), factor.parse()) {
            (Ok(a), Ok(b), Ok(f)) => (a, b, f),
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "bad degree range '{spec}'"
                )))
            }
        };
        if factor < 2 || a == 0 || b < a {
            return Err(Error::InvalidParameter(format!(
                "bad degree range '{spec}'"
            )));
        }
        let mut out = Vec::new();
        let mut d = a;
        while d <= b {
            out.push(d);
            d *= factor;
        }
        return Ok(out);
    }
    let list: std::result::Result<Vec<usize>, _> =
        spec.split(',').map(|s| s.trim().parse::<usize>()).collect();
    let list = list.map_err(|_| Error::InvalidParameter(format!("bad degree list '{spec}'")))?;
    if list.is_empty() || list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(format!(
            "degree list must be increasing: '{spec}'"
        )));
    }
    Ok(list)
}

/// Parses an arithmetic exponent grid `a:b:step`, endpoints inclusive.
pub fn parse_p_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::InvalidParameter(format!("bad exponent grid '{spec}' (want a:b:step)"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let a: f64 = parts[0].parse().map_err(|_| bad())?;
    let b: f64 = parts[1].parse().map_err(|_| bad())?;
    let step: f64 = parts[2].parse().map_err(|_| bad())?;
    if !(step > 0.0 && b >= a && a.is_finite() && b.is_finite()) {
        return Err(bad());
    }
    let count = ((b - a) / step).round() as usize;
    Ok((0..=count).map(|i| a + i as f64 * step).collect())
}

/// Parses a comma-separated point list.
pub fn parse_points(spec: &str) -> Result<Vec<f64>> {
    let pts: std::result::Result<Vec<f64>, _> =
        spec.split(',').map(|s| s.trim().parse::<f64>()).collect();
    let pts = pts.map_err(|_| Error::InvalidParameter(format!("bad point list '{spec}'")))?;
    if pts.is_empty() {
        return Err(Error::InvalidParameter("empty point list".into()));
    }
    Ok(pts)
}
