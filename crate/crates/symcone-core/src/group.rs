//! The general linear group acting on the SPD cone by congruence,
//! h . Sigma = h Sigma h^T, with tangent pushforward X -> h X h^T.
//! The action is transitive; the isotropy group at the identity is O(n).

use nalgebra::DMatrix;

use crate::error::{GeomError, Result};
use crate::sym::{SpdPoint, SymMat};

/// Floor for the invertibility check on [`GroupElement`].
pub const DEFAULT_DET_TOL: f64 = 1e-10;

/// An invertible real n x n matrix, |det| above a configurable floor.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    mat: DMatrix<f64>,
    det: f64,
}

impl GroupElement {
    pub fn new(mat: DMatrix<f64>) -> Result<Self> {
        Self::with_floor(mat, DEFAULT_DET_TOL)
    }

    /// `floor = 0.0` admits any matrix with nonzero determinant; used for
    /// derived elements (square roots, inverses) whose determinant scale is
    /// dictated by upstream data rather than user input.
    pub fn with_floor(mat: DMatrix<f64>, floor: f64) -> Result<Self> {
        let n = mat.nrows();
        if n == 0 {
            return Err(GeomError::ZeroOrder);
        }
        if mat.ncols() != n {
            return Err(GeomError::OrderMismatch { expected: n, got: mat.ncols() });
        }
        if mat.iter().any(|x| !x.is_finite()) {
            return Err(GeomError::NonFinite { what: "group element entries" });
        }
        let det = mat.determinant();
        if !(det.abs() > floor) || !det.is_finite() {
            return Err(GeomError::Singular { det: det.abs(), floor });
        }
        Ok(GroupElement { mat, det })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(DMatrix::identity(n, n))
    }

    pub fn n(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    pub fn inverse(&self) -> Result<GroupElement> {
        match self.mat.clone().try_inverse() {
            Some(inv) => GroupElement::with_floor(inv, 0.0),
            None => Err(GeomError::Singular { det: self.det.abs(), floor: 0.0 }),
        }
    }

    /// The cone action h . Sigma = h Sigma h^T.
    pub fn act(&self, p: &SpdPoint) -> Result<SpdPoint> {
        if p.n() != self.n() {
            return Err(GeomError::OrderMismatch { expected: self.n(), got: p.n() });
        }
        let moved = &self.mat * p.to_matrix() * self.mat.transpose();
        SpdPoint::new(SymMat::symmetrized(&moved)?)
    }

    /// The tangent pushforward X -> h X h^T under the action above.
    pub fn pushforward(&self, x: &SymMat) -> Result<SymMat> {
        if x.n() != self.n() {
            return Err(GeomError::OrderMismatch { expected: self.n(), got: x.n() });
        }
        SymMat::symmetrized(&(&self.mat * x.to_matrix() * self.mat.transpose()))
    }
}

/// The symmetric square root h of Sigma, h h^T = h^2 = Sigma, via the
/// spectral decomposition. This is the canonical transport of the identity
/// fiber to Sigma used by the transport-independence checks.
pub fn sym_sqrt(p: &SpdPoint) -> Result<GroupElement> {
    let eig = p.to_matrix().symmetric_eigen();
    let roots = eig.eigenvalues.map(|l| l.max(0.0).sqrt());
    let h = &eig.eigenvectors * DMatrix::from_diagonal(&roots) * eig.eigenvectors.transpose();
    // Spectrum is positive by the SpdPoint invariant; the zero floor keeps
    // small-determinant roots of small-scale points admissible.
    GroupElement::with_floor(h, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn sym_sqrt_of_diagonal() {
        let p = SpdPoint::new(SymMat::from_vech(2, vec![4.0, 0.0, 9.0]).unwrap()).unwrap();
        let h = sym_sqrt(&p).unwrap();
        assert_relative_eq!(h.matrix()[(0, 0)], 2.0, max_relative = 1e-14);
        assert_relative_eq!(h.matrix()[(1, 1)], 3.0, max_relative = 1e-14);
        assert!(h.matrix()[(0, 1)].abs() < 1e-14);
    }

    #[test]
    fn sym_sqrt_round_trip() {
        let vech = vec![2.0, 0.3, -0.1, 1.5, 0.2, 1.0];
        let p = SpdPoint::new(SymMat::from_vech(3, vech).unwrap()).unwrap();
        let h = sym_sqrt(&p).unwrap();
        let back = h.matrix() * h.matrix().transpose();
        let scale = p.sym().max_abs();
        let dev = crate::linalg::max_abs(&(back - p.to_matrix()));
        assert!(dev < 1e-10 * scale, "dev = {dev:.3e}");
    }

    #[test]
    fn sym_sqrt_of_small_scale_point() {
        let p = SpdPoint::new(SymMat::from_vech(2, vec![1e-8, 0.0, 1e-8]).unwrap()).unwrap();
        let h = sym_sqrt(&p).unwrap();
        assert!(h.det() > 0.0);
    }

    #[test]
    fn act_on_identity_gives_gram() {
        let h = GroupElement::new(DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0])).unwrap();
        let moved = h.act(&SpdPoint::identity(2).unwrap()).unwrap();
        let gram = h.matrix() * h.matrix().transpose();
        assert_eq!(moved.to_matrix(), gram);
    }

    #[test]
    fn inverse_undoes_action() {
        let h = GroupElement::new(DMatrix::from_row_slice(2, 2, &[2.0, 1.0, -1.0, 1.0])).unwrap();
        let p = SpdPoint::new(SymMat::from_vech(2, vec![3.0, 0.5, 2.0]).unwrap()).unwrap();
        let back = h.inverse().unwrap().act(&h.act(&p).unwrap()).unwrap();
        let dev = crate::linalg::max_abs(&(back.to_matrix() - p.to_matrix()));
        assert!(dev < 1e-12);
    }

    #[test]
    fn singular_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        assert!(matches!(GroupElement::new(m), Err(GeomError::Singular { .. })));
    }
}
