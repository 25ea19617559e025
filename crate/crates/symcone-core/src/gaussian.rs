//! Information geometry of zero-mean Gaussians N(0, Sigma), identified with
//! the SPD cone. In the vech chart the Fisher metric and the alpha-tensor
//! family evaluate in closed form:
//!
//!   g(X, Y)        = (1/2) tr(Si X Si Y)
//!   T_alpha(X,Y,Z) = alpha tr(Si X Si Y Si Z)        with Si = Sigma^{-1}.
//!
//! Both are invariant under the congruence action, and the Monte Carlo score
//! estimator below provides the statistically independent oracle: the score
//! of the direction X is (1/2) x^T Si X Si x - (1/2) tr(Si X), and its second
//! and third joint moments reproduce the two closed forms.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::group::sym_sqrt;
use crate::linalg::{trace, trace_prod};
use crate::sym::{SpdPoint, SymMat};

/// The alpha parameter of the tensor family; finite by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(GeomError::NonFinite { what: "alpha" });
        }
        Ok(Alpha(alpha))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

fn check_orders(p: &SpdPoint, dirs: &[&SymMat]) -> Result<()> {
    for x in dirs {
        if x.n() != p.n() {
            return Err(GeomError::OrderMismatch { expected: p.n(), got: x.n() });
        }
    }
    Ok(())
}

/// tr(Si X Si Y) given precomputed products M_x = Si X, M_y = Si Y.
pub(crate) fn tr_pair(mx: &DMatrix<f64>, my: &DMatrix<f64>) -> f64 {
    trace_prod(mx, my)
}

/// tr(Si X Si Y Si Z) given the three precomputed products.
pub(crate) fn tr_triple(mx: &DMatrix<f64>, my: &DMatrix<f64>, mz: &DMatrix<f64>) -> f64 {
    let p = mx * my;
    trace_prod(&p, mz)
}

/// Fisher metric at Sigma: (1/2) tr(Sigma^{-1} X Sigma^{-1} Y).
pub fn fisher_at(p: &SpdPoint, x: &SymMat, y: &SymMat) -> Result<f64> {
    check_orders(p, &[x, y])?;
    let si = p.inverse_matrix();
    let mx = &si * x.to_matrix();
    let my = &si * y.to_matrix();
    Ok(0.5 * tr_pair(&mx, &my))
}

/// Alpha-tensor at Sigma: alpha tr(Sigma^{-1} X Sigma^{-1} Y Sigma^{-1} Z).
/// Fully symmetric in (X, Y, Z); identically zero for alpha = 0.
pub fn ac_alpha_at(alpha: Alpha, p: &SpdPoint, x: &SymMat, y: &SymMat, z: &SymMat) -> Result<f64> {
    check_orders(p, &[x, y, z])?;
    let si = p.inverse_matrix();
    let mx = &si * x.to_matrix();
    let my = &si * y.to_matrix();
    let mz = &si * z.to_matrix();
    Ok(alpha.value() * tr_triple(&mx, &my, &mz))
}

/// Directional log-density derivative at sample point `x`:
/// (1/2) x^T Si X Si x - (1/2) tr(Si X).
pub fn directional_score(p: &SpdPoint, dir: &SymMat, x: &DVector<f64>) -> Result<f64> {
    check_orders(p, &[dir])?;
    if x.nrows() != p.n() {
        return Err(GeomError::OrderMismatch { expected: p.n(), got: x.nrows() });
    }
    let si = p.inverse_matrix();
    let m = &si * dir.to_matrix() * &si;
    let quad = x.dot(&(&m * x));
    Ok(0.5 * quad - 0.5 * trace(&(&si * dir.to_matrix())))
}

/// Monte Carlo configuration. Sampling walks chunks of at most `chunk`
/// draws; chunk c uses an RNG stream keyed by (seed, c) and partial sums are
/// combined in chunk order, so estimates do not depend on how chunks would
/// be scheduled and repeat runs are bit-identical.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    pub chunk: u64,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig { samples: 1_000_000, seed: 0, chunk: 1 << 16 }
    }
}

/// Estimate with its standard error; serializes as
/// {"mean": ..., "std_error": ..., "samples": ...}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
}

fn mc_stream(seed: u64, chunk_index: u64) -> ChaCha12Rng {
    let mut key = [0u8; 32];
    key[0] = 0xA7;
    key[1..9].copy_from_slice(&seed.to_le_bytes());
    key[9..17].copy_from_slice(&chunk_index.to_le_bytes());
    ChaCha12Rng::from_seed(key)
}

/// Monte Carlo moment of a product of directional scores under N(0, Sigma):
/// with two directions this estimates the Fisher metric, with three the
/// alpha = 1 tensor. Draws use x = L z, L the symmetric square root.
pub fn mc_moment(p: &SpdPoint, dirs: &[&SymMat], cfg: &McConfig) -> Result<McEstimate> {
    match dirs.len() {
        2 | 3 => {}
        k => return Err(GeomError::BadArity { got: k }),
    }
    check_orders(p, dirs)?;
    if cfg.samples < 2 || cfg.chunk == 0 {
        return Err(GeomError::BadMcConfig);
    }

    let n = p.n();
    let l = sym_sqrt(p)?.matrix().clone();
    let si = p.inverse_matrix();
    // Per-direction quadratic form Si X Si and centering constant tr(Si X).
    let forms: Vec<DMatrix<f64>> = dirs.iter().map(|x| &si * x.to_matrix() * &si).collect();
    let centers: Vec<f64> = dirs.iter().map(|x| trace(&(&si * x.to_matrix()))).collect();

    let mut sum = 0.0_f64;
    let mut sum_sq = 0.0_f64;
    let mut done = 0u64;
    let mut chunk_index = 0u64;
    let mut z = DVector::zeros(n);
    while done < cfg.samples {
        let take = cfg.chunk.min(cfg.samples - done);
        let mut rng = mc_stream(cfg.seed, chunk_index);
        let mut csum = 0.0_f64;
        let mut csum_sq = 0.0_f64;
        for _ in 0..take {
            for i in 0..n {
                z[i] = rng.sample(StandardNormal);
            }
            let x = &l * &z;
            let mut prod = 1.0;
            for (form, center) in forms.iter().zip(&centers) {
                let quad = x.dot(&(form * &x));
                prod *= 0.5 * quad - 0.5 * center;
            }
            csum += prod;
            csum_sq += prod * prod;
        }
        sum += csum;
        sum_sq += csum_sq;
        done += take;
        chunk_index += 1;
    }

    let nf = cfg.samples as f64;
    let mean = sum / nf;
    let var = ((sum_sq - nf * mean * mean) / (nf - 1.0)).max(0.0);
    Ok(McEstimate { mean, std_error: (var / nf).sqrt(), samples: cfg.samples })
}
