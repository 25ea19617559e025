//! Symmetric matrices in the half-vectorized (vech) chart.
//!
//! The chart orders index pairs (i, j), i <= j, lexicographically; for n = 2
//! that is (0,0), (0,1), (1,1) and d = n(n+1)/2. The basis element for an
//! off-diagonal pair carries a 1 at both (i, j) and (j, i) with no 1/sqrt(2)
//! normalization, so vech coefficients are literally the upper-triangular
//! entries and the tensors evaluated at the identity keep integer components.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// Dimension of Sym(n), the vech length.
pub fn vech_len(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Index pairs (i, j), i <= j, in lexicographic order.
pub fn vech_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(vech_len(n));
    for i in 0..n {
        for j in i..n {
            pairs.push((i, j));
        }
    }
    pairs
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SymMatRepr {
    n: usize,
    vech: Vec<f64>,
}

/// A real symmetric n x n matrix stored as its vech vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SymMatRepr", into = "SymMatRepr")]
pub struct SymMat {
    n: usize,
    vech: Vec<f64>,
}

impl TryFrom<SymMatRepr> for SymMat {
    type Error = GeomError;
    fn try_from(r: SymMatRepr) -> Result<Self> {
        SymMat::from_vech(r.n, r.vech)
    }
}

impl From<SymMat> for SymMatRepr {
    fn from(m: SymMat) -> Self {
        SymMatRepr { n: m.n, vech: m.vech }
    }
}

impl SymMat {
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(GeomError::ZeroOrder);
        }
        Ok(SymMat { n, vech: vec![0.0; vech_len(n)] })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        for i in 0..n {
            let a = vech_index(n, i, i);
            m.vech[a] = 1.0;
        }
        Ok(m)
    }

    /// Builds from an explicit vech vector; the length must be n(n+1)/2 and
    /// every entry finite.
    pub fn from_vech(n: usize, vech: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(GeomError::ZeroOrder);
        }
        if vech.len() != vech_len(n) {
            return Err(GeomError::VechLength { len: vech.len(), n });
        }
        if vech.iter().any(|x| !x.is_finite()) {
            return Err(GeomError::NonFinite { what: "vech entries" });
        }
        Ok(SymMat { n, vech })
    }

    /// Reads the upper triangle of a square matrix, rejecting input whose
    /// asymmetry exceeds 1e-12 relative to its magnitude.
    pub fn from_matrix(m: &DMatrix<f64>) -> Result<Self> {
        let n = m.nrows();
        if n == 0 {
            return Err(GeomError::ZeroOrder);
        }
        if m.ncols() != n {
            return Err(GeomError::OrderMismatch { expected: n, got: m.ncols() });
        }
        let scale = crate::linalg::max_abs(m).max(1.0);
        let mut asym = 0.0_f64;
        for i in 0..n {
            for j in (i + 1)..n {
                asym = asym.max((m[(i, j)] - m[(j, i)]).abs());
            }
        }
        if asym > 1e-12 * scale {
            return Err(GeomError::NotSymmetric { asym });
        }
        let mut vech = Vec::with_capacity(vech_len(n));
        for i in 0..n {
            for j in i..n {
                vech.push(m[(i, j)]);
            }
        }
        Self::from_vech(n, vech)
    }

    /// Builds from (M + M^T)/2. Use where symmetry holds mathematically but
    /// floating products may drift in the last ulp.
    pub fn symmetrized(m: &DMatrix<f64>) -> Result<Self> {
        let n = m.nrows();
        if n == 0 {
            return Err(GeomError::ZeroOrder);
        }
        if m.ncols() != n {
            return Err(GeomError::OrderMismatch { expected: n, got: m.ncols() });
        }
        let mut vech = Vec::with_capacity(vech_len(n));
        for i in 0..n {
            for j in i..n {
                vech.push(if i == j { m[(i, i)] } else { 0.5 * (m[(i, j)] + m[(j, i)]) });
            }
        }
        Self::from_vech(n, vech)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vech(&self) -> &[f64] {
        &self.vech
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.vech[vech_index(self.n, i, j)]
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        let n = self.n;
        let mut m = DMatrix::zeros(n, n);
        let mut a = 0;
        for i in 0..n {
            for j in i..n {
                m[(i, j)] = self.vech[a];
                m[(j, i)] = self.vech[a];
                a += 1;
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.vech.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn scaled(&self, s: f64) -> SymMat {
        SymMat { n: self.n, vech: self.vech.iter().map(|x| s * x).collect() }
    }

    pub fn add(&self, other: &SymMat) -> Result<SymMat> {
        if self.n != other.n {
            return Err(GeomError::OrderMismatch { expected: self.n, got: other.n });
        }
        let vech = self.vech.iter().zip(&other.vech).map(|(x, y)| x + y).collect();
        Ok(SymMat { n: self.n, vech })
    }
}

/// Position of pair (i, j), i <= j, in the lexicographic vech order.
pub fn vech_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < n);
    // Pairs with first index < i contribute n + (n-1) + ... + (n-i+1).
    i * n - i * (i + 1) / 2 + j
}

/// The ordered vech basis E_0, ..., E_{d-1} of Sym(n).
///
/// `elem(a).vech()` is the a-th standard unit vector, so coordinates of any
/// symmetric matrix in this basis coincide with its vech entries.
#[derive(Debug, Clone)]
pub struct VechBasis {
    n: usize,
    pairs: Vec<(usize, usize)>,
    elems: Vec<SymMat>,
}

impl VechBasis {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(GeomError::ZeroOrder);
        }
        let pairs = vech_pairs(n);
        let d = pairs.len();
        let mut elems = Vec::with_capacity(d);
        for a in 0..d {
            let mut vech = vec![0.0; d];
            vech[a] = 1.0;
            elems.push(SymMat::from_vech(n, vech)?);
        }
        Ok(VechBasis { n, pairs, elems })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elem(&self, a: usize) -> &SymMat {
        &self.elems[a]
    }

    pub fn pair(&self, a: usize) -> (usize, usize) {
        self.pairs[a]
    }

    pub fn iter(&self) -> impl Iterator<Item = &SymMat> {
        self.elems.iter()
    }
}

/// Convenience constructor for the ordered basis; see [`VechBasis`].
pub fn sym_basis(n: usize) -> Result<VechBasis> {
    VechBasis::new(n)
}

/// Relative floor for the positive-definiteness check on [`SpdPoint`].
pub const DEFAULT_SPD_TOL: f64 = 1e-10;

/// A point of the SPD cone: a symmetric matrix whose spectrum clears
/// `lambda_min > floor * max(1, lambda_max)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpdPoint {
    mat: SymMat,
    lambda_min: f64,
    lambda_max: f64,
}

impl SpdPoint {
    pub fn new(mat: SymMat) -> Result<Self> {
        Self::with_floor(mat, DEFAULT_SPD_TOL)
    }

    pub fn with_floor(mat: SymMat, floor: f64) -> Result<Self> {
        let eig = mat.to_matrix().symmetric_eigen();
        let mut lambda_min = f64::INFINITY;
        let mut lambda_max = f64::NEG_INFINITY;
        for &l in eig.eigenvalues.iter() {
            lambda_min = lambda_min.min(l);
            lambda_max = lambda_max.max(l);
        }
        let abs_floor = floor * lambda_max.max(1.0);
        if !(lambda_min > abs_floor) {
            return Err(GeomError::NotPositiveDefinite { lambda_min, floor: abs_floor });
        }
        Ok(SpdPoint { mat, lambda_min, lambda_max })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(SymMat::identity(n)?)
    }

    pub fn n(&self) -> usize {
        self.mat.n()
    }

    pub fn sym(&self) -> &SymMat {
        &self.mat
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        self.mat.to_matrix()
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    /// The inverse, via Cholesky (valid on the validated cone interior).
    pub fn inverse_matrix(&self) -> DMatrix<f64> {
        match self.to_matrix().cholesky() {
            Some(ch) => ch.inverse(),
            // Spectrum was validated positive; an eigen fallback keeps the
            // path total without panicking on borderline conditioning.
            None => {
                let eig = self.to_matrix().symmetric_eigen();
                let inv_vals = eig.eigenvalues.map(|l| 1.0 / l);
                &eig.eigenvectors * DMatrix::from_diagonal(&inv_vals) * eig.eigenvectors.transpose()
            }
        }
    }
}
