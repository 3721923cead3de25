//! Parsed and validated run configuration.
//!
//! Every flag is checked here before any computation starts; the math
//! modules never see an invalid configuration.

use truncfreud::prec::{ExtReal, PrecisionContext};

use crate::CliError;

/// Output format of the data-producing subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Gnuplot,
}

/// Validated configuration shared by the subcommands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub z_values: Vec<String>,
    pub n_max: usize,
    pub precision_bits: u32,
    pub format: OutputFormat,
    pub out: Option<std::path::PathBuf>,
    pub seed: u64,
    pub tol_identity: Option<f64>,
    pub ctx: PrecisionContext,
}

impl RunConfig {
    pub fn build(
        z: Option<&str>,
        z_grid: Option<&str>,
        n_max: usize,
        precision_bits: u32,
        format: OutputFormat,
        out: Option<std::path::PathBuf>,
        seed: u64,
        tol_identity: Option<f64>,
    ) -> Result<Self, CliError> {
        let ctx = PrecisionContext::new(precision_bits)
            .map_err(|e| CliError::Config(e.to_string()))?;
        let z_values = match (z, z_grid) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config(
                    "--z and --z-grid are mutually exclusive".into(),
                ))
            }
            (Some(z), None) => vec![validate_z(z, &ctx)?],
            (None, Some(grid)) => parse_z_grid(grid, &ctx)?,
            (None, None) => vec!["1".to_string()],
        };
        if n_max == 0 {
            return Err(CliError::Config("--nmax must be at least 1".into()));
        }
        if let Some(tol) = tol_identity {
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(CliError::Config(format!(
                    "--tol-identity must be a positive finite number, got {tol}"
                )));
            }
        }
        Ok(Self {
            z_values,
            n_max,
            precision_bits,
            format,
            out,
            seed,
            tol_identity,
            ctx,
        })
    }

    /// The single z of commands that do not take a grid.
    pub fn single_z(&self) -> Result<ExtReal, CliError> {
        if self.z_values.len() != 1 {
            return Err(CliError::Config(
                "this subcommand takes a single --z, not a grid".into(),
            ));
        }
        Ok(self
            .ctx
            .real_from_str(&self.z_values[0])
            .expect("validated earlier"))
    }

    pub fn z_reals(&self) -> Vec<ExtReal> {
        self.z_values
            .iter()
            .map(|s| self.ctx.real_from_str(s).expect("validated earlier"))
            .collect()
    }

    /// Significant digits justified by the working precision, capped at 30.
    pub fn digits(&self) -> usize {
        let justified = (f64::from(self.precision_bits) * std::f64::consts::LOG10_2) as usize;
        justified.saturating_sub(6).clamp(6, 30)
    }
}

fn validate_z(z: &str, ctx: &PrecisionContext) -> Result<String, CliError> {
    let v = ctx
        .real_from_str(z)
        .map_err(|e| CliError::Config(e.to_string()))?;
    if !v.is_positive() {
        return Err(CliError::Config(format!("z must be positive, got {z}")));
    }
    Ok(z.to_string())
}

/// Parse `a:b:n` into n evenly spaced decimal values from a to b inclusive.
///
/// Endpoints are rendered back to decimal strings so later re-parsing at any
/// precision reproduces the same grid.
fn parse_z_grid(grid: &str, ctx: &PrecisionContext) -> Result<Vec<String>, CliError> {
    let parts: Vec<&str> = grid.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Config(format!(
            "--z-grid expects a:b:n, got {grid:?}"
        )));
    }
    let a = ctx
        .real_from_str(parts[0])
        .map_err(|e| CliError::Config(e.to_string()))?;
    let b = ctx
        .real_from_str(parts[1])
        .map_err(|e| CliError::Config(e.to_string()))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| CliError::Config(format!("grid count must be an integer, got {}", parts[2])))?;
    if count < 2 {
        return Err(CliError::Config("grid needs at least two points".into()));
    }
    if !a.is_positive() || b <= a {
        return Err(CliError::Config(format!(
            "grid requires 0 < a < b, got a = {}, b = {}",
            parts[0], parts[1]
        )));
    }
    let step = (&b - &a) / (count as i64 - 1);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let zi = &a + &step * i as i64;
        out.push(zi.to_sci(30));
    }
    Ok(out)
}
