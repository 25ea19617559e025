use clap::{Args, ValueEnum};
use serde::Serialize;
use symcone_core::{Alpha, C2Weighting, FdScheme, InvariantCubic};

/// Output rendering for reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Everything that determines a run's numbers. Two runs with equal
/// `RunConfig` produce byte-identical reports (timings excluded, which is
/// why `--timings` is a rendering option and not part of this struct).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub n: usize,
    pub alpha: f64,
    pub abc: [f64; 3],
    pub seed: u64,
    pub tol_geom: f64,
    pub tol_exact: f64,
    pub samples: u64,
    pub fd_step: Option<f64>,
    pub trials: u32,
}

impl RunConfig {
    pub fn alpha(&self) -> Alpha {
        Alpha::new(self.alpha).expect("validated at parse time")
    }

    pub fn coeffs(&self) -> InvariantCubic {
        InvariantCubic::new(self.abc[0], self.abc[1], self.abc[2]).expect("validated at parse time")
    }

    pub fn alpha_slice(&self) -> InvariantCubic {
        InvariantCubic::new(self.alpha, 0.0, 0.0).expect("validated at parse time")
    }

    pub fn scheme(&self) -> FdScheme {
        match self.fd_step {
            Some(h) => FdScheme::new(h).expect("validated at parse time"),
            None => FdScheme::default(),
        }
    }

    /// Number of probe points for the derivative checks; the full `trials`
    /// budget is reserved for the cheap algebraic invariance sweeps.
    pub fn fd_points(&self) -> u32 {
        (self.trials / 10).max(1)
    }
}

/// Options that affect rendering and routing but not the computed numbers.
#[derive(Debug, Clone)]
pub struct RunOpts {
    pub format: Format,
    pub out: Option<std::path::PathBuf>,
    pub timings: bool,
    pub weighting: C2Weighting,
}

#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    /// Matrix order n of the cone points (vech dimension is n(n+1)/2).
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=10))]
    n: u64,

    /// Coefficient of the alpha-tensor slice (a, b, c) = (alpha, 0, 0).
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,

    /// Cubic family coefficients as a comma-separated triple a,b,c.
    #[arg(long, default_value = "1,1,1", value_parser = parse_abc)]
    abc: [f64; 3],

    /// Root seed; every sampler below derives its own stream from it.
    #[arg(long, default_value_t = 7)]
    seed: u64,

    /// Tolerance for finite-difference (geometric) checks.
    #[arg(long, default_value_t = 1e-5)]
    tol_geom: f64,

    /// Tolerance for algebraic identity checks.
    #[arg(long, default_value_t = 1e-10)]
    tol_exact: f64,

    /// Monte Carlo sample count.
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(2..))]
    samples: u64,

    /// Base finite-difference step; omitted means the built-in default,
    /// scaled per point. Accepted range is [1e-8, 1e-2].
    #[arg(long)]
    fd_step: Option<f64>,

    /// Trial count for randomized invariance sweeps.
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
    trials: u32,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,

    /// Include per-check wall times in the report (breaks byte-for-byte
    /// reproducibility of the output, numbers are unaffected).
    #[arg(long, default_value_t = false)]
    timings: bool,

    #[arg(long, hide = true, default_value_t = false)]
    inject_c2_fault: bool,
}

fn parse_abc(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated values, got {}", parts.len()));
    }
    let mut out = [0.0; 3];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("bad coefficient {:?}: {e}", part.trim()))?;
        if !slot.is_finite() {
            return Err(format!("coefficient {:?} is not finite", part.trim()));
        }
    }
    Ok(out)
}

impl ConfigArgs {
    /// Validate and split into the run determinants and the rendering options.
    pub fn build(&self) -> Result<(RunConfig, RunOpts), String> {
        if !self.alpha.is_finite() {
            return Err("--alpha must be finite".into());
        }
        if !(self.tol_geom.is_finite() && self.tol_geom > 0.0) {
            return Err("--tol-geom must be positive".into());
        }
        if !(self.tol_exact.is_finite() && self.tol_exact > 0.0) {
            return Err("--tol-exact must be positive".into());
        }
        if let Some(h) = self.fd_step {
            FdScheme::new(h).map_err(|e| format!("--fd-step: {e}"))?;
        }
        let config = RunConfig {
            n: self.n as usize,
            alpha: self.alpha,
            abc: self.abc,
            seed: self.seed,
            tol_geom: self.tol_geom,
            tol_exact: self.tol_exact,
            samples: self.samples,
            fd_step: self.fd_step,
            trials: self.trials,
        };
        let opts = RunOpts {
            format: self.format,
            out: self.out.clone(),
            timings: self.timings,
            weighting: if self.inject_c2_fault {
                C2Weighting::FaultFirstHalf
            } else {
                C2Weighting::Canonical
            },
        };
        Ok((config, opts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abc_parser_accepts_spaced_triples() {
        assert_eq!(parse_abc("1,2,3").unwrap(), [1.0, 2.0, 3.0]);
        assert_eq!(parse_abc(" 2, -3 , 1").unwrap(), [2.0, -3.0, 1.0]);
        assert_eq!(parse_abc("0.5,0,1e-3").unwrap(), [0.5, 0.0, 1e-3]);
    }

    #[test]
    fn abc_parser_rejects_malformed_input() {
        assert!(parse_abc("1,2").is_err());
        assert!(parse_abc("1,2,3,4").is_err());
        assert!(parse_abc("1,two,3").is_err());
        assert!(parse_abc("1,inf,3").is_err());
        assert!(parse_abc("").is_err());
    }
}
