//! Dense covariant tensor components in the vech chart, and the field
//! abstraction the connection machinery differentiates.

use nalgebra::DMatrix;

use crate::error::{GeomError, Result};
use crate::gaussian::tr_pair;
use crate::sym::{vech_len, SpdPoint};

/// Dense valence-k component array over the d-dimensional vech chart,
/// indexed row-major by multi-index (i_1, ..., i_k).
#[derive(Debug, Clone, PartialEq)]
pub struct Components {
    d: usize,
    valence: usize,
    data: Vec<f64>,
}

impl Components {
    pub fn zeros(d: usize, valence: usize) -> Self {
        Components { d, valence, data: vec![0.0; d.pow(valence as u32)] }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn valence(&self) -> usize {
        self.valence
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    #[inline]
    pub fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.valence);
        let mut o = 0;
        for &i in idx {
            debug_assert!(i < self.d);
            o = o * self.d + i;
        }
        o
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: f64) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn max_diff(&self, other: &Components) -> f64 {
        debug_assert_eq!(self.data.len(), other.data.len());
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Largest deviation between components related by an index permutation.
    /// Supported for valence 2 and 3.
    pub fn max_asymmetry(&self) -> f64 {
        let d = self.d;
        let mut worst = 0.0_f64;
        match self.valence {
            2 => {
                for a in 0..d {
                    for b in (a + 1)..d {
                        worst = worst.max((self.get(&[a, b]) - self.get(&[b, a])).abs());
                    }
                }
            }
            3 => {
                for a in 0..d {
                    for b in a..d {
                        for c in b..d {
                            let v = self.get(&[a, b, c]);
                            for p in [[a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
                                worst = worst.max((self.get(&p) - v).abs());
                            }
                        }
                    }
                }
            }
            k => panic!("max_asymmetry supports valence 2 and 3, got {k}"),
        }
        worst
    }

    /// Largest deviation under swapping the first two slots; used on the
    /// valence-(k+1) covariant derivative arrays.
    pub fn swap01_max_diff(&self) -> f64 {
        assert!(self.valence >= 2);
        let d = self.d;
        let tail: usize = d.pow((self.valence - 2) as u32);
        let mut worst = 0.0_f64;
        for a in 0..d {
            for b in (a + 1)..d {
                let oa = (a * d + b) * tail;
                let ob = (b * d + a) * tail;
                for t in 0..tail {
                    worst = worst.max((self.data[oa + t] - self.data[ob + t]).abs());
                }
            }
        }
        worst
    }

    /// Trilinear contraction against vech coordinate vectors.
    pub fn contract3(&self, x: &[f64], y: &[f64], z: &[f64]) -> f64 {
        assert_eq!(self.valence, 3);
        let d = self.d;
        debug_assert!(x.len() == d && y.len() == d && z.len() == d);
        let mut acc = 0.0;
        for a in 0..d {
            if x[a] == 0.0 {
                continue;
            }
            let mut ya = 0.0;
            for b in 0..d {
                if y[b] == 0.0 {
                    continue;
                }
                let base = (a * d + b) * d;
                let mut zb = 0.0;
                for c in 0..d {
                    zb += self.data[base + c] * z[c];
                }
                ya += y[b] * zb;
            }
            acc += x[a] * ya;
        }
        acc
    }

    /// Change of basis on every slot: out[x..] = sum T[a..] B[a][x] ...,
    /// where `b[(a, x)]` carries the new frame in old coordinates.
    pub fn basis_change(&self, b: &DMatrix<f64>) -> Components {
        let d = self.d;
        assert_eq!(b.nrows(), d);
        assert_eq!(b.ncols(), d);
        let mut cur = self.clone();
        // Contract one slot at a time; slot order does not matter.
        for slot in 0..self.valence {
            let mut next = Components::zeros(d, self.valence);
            let stride: usize = d.pow((self.valence - 1 - slot) as u32);
            let outer: usize = d.pow(slot as u32);
            for o in 0..outer {
                for x in 0..d {
                    for t in 0..stride {
                        let mut acc = 0.0;
                        for a in 0..d {
                            acc += cur.data[(o * d + a) * stride + t] * b[(a, x)];
                        }
                        next.data[(o * d + x) * stride + t] = acc;
                    }
                }
            }
            cur = next;
        }
        cur
    }
}

/// A covariant tensor field on the cone, evaluated through its full
/// component array at a point. Components of a well-formed field are
/// symmetric under index permutation to 1e-12 relative scale.
pub trait TensorField {
    /// Matrix order n of the underlying cone.
    fn order(&self) -> usize;

    /// Number of slots: 2 for metrics, 3 for cubic tensors.
    fn valence(&self) -> usize;

    fn components(&self, at: &SpdPoint) -> Result<Components>;

    /// Christoffel symbols of this field when it is a metric. The default
    /// route is the finite-difference construction; closed-form metrics
    /// override it.
    fn christoffel(
        &self,
        at: &SpdPoint,
        scheme: &crate::connection::FdScheme,
    ) -> Result<crate::connection::ChristoffelData> {
        crate::connection::christoffel_fd(self, at, scheme)
    }
}

/// The Fisher metric as a valence-2 field; Christoffel symbols come from
/// the Levi-Civita closed form.
#[derive(Debug, Clone, Copy)]
pub struct FisherField {
    n: usize,
}

impl FisherField {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(GeomError::ZeroOrder);
        }
        Ok(FisherField { n })
    }
}

impl TensorField for FisherField {
    fn order(&self) -> usize {
        self.n
    }

    fn valence(&self) -> usize {
        2
    }

    fn components(&self, at: &SpdPoint) -> Result<Components> {
        if at.n() != self.n {
            return Err(GeomError::OrderMismatch { expected: self.n, got: at.n() });
        }
        let basis = crate::sym::sym_basis(self.n)?;
        let d = vech_len(self.n);
        let si = at.inverse_matrix();
        let prods: Vec<DMatrix<f64>> =
            (0..d).map(|a| &si * basis.elem(a).to_matrix()).collect();
        let mut g = Components::zeros(d, 2);
        for a in 0..d {
            for b in a..d {
                let v = 0.5 * tr_pair(&prods[a], &prods[b]);
                g.set(&[a, b], v);
                g.set(&[b, a], v);
            }
        }
        Ok(g)
    }

    fn christoffel(
        &self,
        at: &SpdPoint,
        _scheme: &crate::connection::FdScheme,
    ) -> Result<crate::connection::ChristoffelData> {
        crate::connection::christoffel_closed_data(at)
    }
}

/// Closure-backed field for fixtures and tests.
pub struct FnField<F> {
    n: usize,
    valence: usize,
    f: F,
}

impl<F> FnField<F>
where
    F: Fn(&SpdPoint) -> Result<Components>,
{
    pub fn new(n: usize, valence: usize, f: F) -> Result<Self> {
        if n == 0 {
            return Err(GeomError::ZeroOrder);
        }
        if !(valence == 2 || valence == 3) {
            return Err(GeomError::ValenceMismatch { expected: 3, got: valence });
        }
        Ok(FnField { n, valence, f })
    }
}

impl<F> TensorField for FnField<F>
where
    F: Fn(&SpdPoint) -> Result<Components>,
{
    fn order(&self) -> usize {
        self.n
    }

    fn valence(&self) -> usize {
        self.valence
    }

    fn components(&self, at: &SpdPoint) -> Result<Components> {
        (self.f)(at)
    }
}

/// Smallest and largest eigenvalue of a valence-2 field's Gram matrix at a
/// point. Positive definiteness holds iff the lower bound is positive.
pub fn gram_eigen_bounds<G>(g: &G, at: &SpdPoint) -> Result<(f64, f64)>
where
    G: TensorField + ?Sized,
{
    if g.valence() != 2 {
        return Err(GeomError::ValenceMismatch { expected: 2, got: g.valence() });
    }
    let comps = g.components(at)?;
    let d = comps.d();
    let m = DMatrix::from_fn(d, d, |r, c| comps.get(&[r, c]));
    let eig = m.symmetric_eigen().eigenvalues;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in eig.iter() {
        lo = lo.min(*v);
        hi = hi.max(*v);
    }
    Ok((lo, hi))
}
