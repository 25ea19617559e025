//! The three-parameter family of invariant cubic tensors.
//!
//! Every congruence-invariant symmetric cubic form on the cone is a
//! combination of three trace monomials in the whitened directions
//! W = Sigma^{-1} X:
//!
//!   T_1 = tr(Wx Wy Wz)
//!   T_2 = (1/3) (tr Wx tr(Wy Wz) + tr Wy tr(Wx Wz) + tr Wz tr(Wx Wy))
//!   T_3 = tr Wx tr Wy tr Wz
//!
//! [`invariant_cubic_eval`] computes a T_1 + b T_2 + c T_3 at a point,
//! [`raw_components`] freezes the same tensor at the identity on the vech
//! basis, and [`InvariantCubicField`] exposes it as a field for the
//! derivative checks. [`eval_via_transport`] recomputes the value by
//! whitening the point to the identity first; closed form and transport
//! route must agree to rounding.

use std::collections::HashSet;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::connection::Verdict;
use crate::error::{GeomError, Result};
use crate::gaussian::{tr_pair, tr_triple};
use crate::group::sym_sqrt;
use crate::linalg::trace;
use crate::sample::{sample_orthogonal, sample_sym, subseed};
use crate::sym::{sym_basis, vech_len, SpdPoint, SymMat, VechBasis};
use crate::tensor::{Components, TensorField};

/// Coefficients (a, b, c) on the monomials (T_1, T_2, T_3).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvariantCubic {
    a: f64,
    b: f64,
    c: f64,
}

impl InvariantCubic {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(GeomError::NonFinite { what: "cubic family coefficients" });
        }
        Ok(InvariantCubic { a, b, c })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }
}

/// How the three summands of T_2 are weighted. `Canonical` is the
/// symmetric 1/3 each. `FaultFirstHalf` bumps only the first summand to
/// 1/2: the result is still a combination of invariant trace monomials
/// (so the field-level checks keep passing) but it is no longer symmetric
/// in its slots, which the frozen identity components expose.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum C2Weighting {
    Canonical,
    FaultFirstHalf,
}

impl C2Weighting {
    fn weights(self) -> (f64, f64, f64) {
        match self {
            C2Weighting::Canonical => (1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0),
            C2Weighting::FaultFirstHalf => (0.5, 1.0 / 3.0, 1.0 / 3.0),
        }
    }
}

fn check_orders(n: usize, dirs: &[&SymMat]) -> Result<()> {
    for x in dirs {
        if x.n() != n {
            return Err(GeomError::OrderMismatch { expected: n, got: x.n() });
        }
    }
    Ok(())
}

/// a T_1 + b T_2 + c T_3 from the shared trace kernels. The T_1 summand is
/// always the bare product `a * t3` and the others are added only when
/// their coefficients are nonzero, so (a, 0, 0) reproduces the alpha
/// tensor with alpha = a bit for bit.
#[inline]
fn combine(
    t: &InvariantCubic,
    w: (f64, f64, f64),
    t3: f64,
    tx: f64,
    ty: f64,
    tz: f64,
    pxy: f64,
    pxz: f64,
    pyz: f64,
) -> f64 {
    let mut v = t.a * t3;
    if t.b != 0.0 {
        v += t.b * (w.0 * tx * pyz + w.1 * ty * pxz + w.2 * tz * pxy);
    }
    if t.c != 0.0 {
        v += t.c * (tx * ty * tz);
    }
    v
}

pub fn invariant_cubic_eval(
    p: &SpdPoint,
    t: &InvariantCubic,
    x: &SymMat,
    y: &SymMat,
    z: &SymMat,
) -> Result<f64> {
    invariant_cubic_eval_weighted(p, t, x, y, z, C2Weighting::Canonical)
}

pub fn invariant_cubic_eval_weighted(
    p: &SpdPoint,
    t: &InvariantCubic,
    x: &SymMat,
    y: &SymMat,
    z: &SymMat,
    weighting: C2Weighting,
) -> Result<f64> {
    check_orders(p.n(), &[x, y, z])?;
    let si = p.inverse_matrix();
    let mx = &si * x.to_matrix();
    let my = &si * y.to_matrix();
    let mz = &si * z.to_matrix();
    let t3 = tr_triple(&mx, &my, &mz);
    Ok(combine(
        t,
        weighting.weights(),
        t3,
        trace(&mx),
        trace(&my),
        trace(&mz),
        tr_pair(&mx, &my),
        tr_pair(&mx, &mz),
        tr_pair(&my, &mz),
    ))
}

/// Independent route to the same value: whiten the point to the identity
/// with h = Sigma^{-1/2} and evaluate there on the pushed directions.
pub fn eval_via_transport(
    p: &SpdPoint,
    t: &InvariantCubic,
    x: &SymMat,
    y: &SymMat,
    z: &SymMat,
) -> Result<f64> {
    check_orders(p.n(), &[x, y, z])?;
    let h = sym_sqrt(p)?.inverse()?;
    let id = SpdPoint::identity(p.n())?;
    invariant_cubic_eval(
        &id,
        t,
        &h.pushforward(x)?,
        &h.pushforward(y)?,
        &h.pushforward(z)?,
    )
}

pub fn raw_components(n: usize, t: &InvariantCubic) -> Result<Components> {
    raw_components_weighted(n, t, C2Weighting::Canonical)
}

/// The tensor's components at the identity on the vech basis. Evaluated
/// once per non-decreasing triple and mirrored to the other slots, so the
/// stored array is symmetric to the bit. Under the canonical weighting the
/// mirroring is a no-op; under a slot-asymmetric weighting it bakes the
/// basis order into the array, which is what the rotation check detects.
pub fn raw_components_weighted(
    n: usize,
    t: &InvariantCubic,
    weighting: C2Weighting,
) -> Result<Components> {
    let basis = sym_basis(n)?;
    let d = basis.len();
    let w = weighting.weights();
    let mats: Vec<DMatrix<f64>> = basis.iter().map(|e| e.to_matrix()).collect();
    let trs: Vec<f64> = mats.iter().map(trace).collect();
    let mut pair = vec![0.0_f64; d * d];
    for a in 0..d {
        for b in a..d {
            let v = tr_pair(&mats[a], &mats[b]);
            pair[a * d + b] = v;
            pair[b * d + a] = v;
        }
    }

    let mut out = Components::zeros(d, 3);
    for p in 0..d {
        for q in p..d {
            let pq = &mats[p] * &mats[q];
            for r in q..d {
                let t3 = trace(&(&pq * &mats[r]));
                let v = combine(
                    t,
                    w,
                    t3,
                    trs[p],
                    trs[q],
                    trs[r],
                    pair[p * d + q],
                    pair[p * d + r],
                    pair[q * d + r],
                );
                for idx in [
                    [p, q, r],
                    [p, r, q],
                    [q, p, r],
                    [q, r, p],
                    [r, p, q],
                    [r, q, p],
                ] {
                    out.set(&idx, v);
                }
            }
        }
    }
    Ok(out)
}

/// A cubic tensor frozen at the identity: order, valence marker, and the
/// nonzero vech-basis components. The serialized form keeps one entry per
/// non-decreasing index triple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRepr", into = "RawRepr")]
pub struct RawCubicTensor {
    n: usize,
    comps: Components,
}

impl RawCubicTensor {
    pub fn new(n: usize, comps: Components) -> Result<Self> {
        if n == 0 {
            return Err(GeomError::ZeroOrder);
        }
        if comps.valence() != 3 {
            return Err(GeomError::ValenceMismatch { expected: 3, got: comps.valence() });
        }
        if comps.d() != vech_len(n) {
            return Err(GeomError::VechLength { len: comps.d(), n });
        }
        if comps.data().iter().any(|v| !v.is_finite()) {
            return Err(GeomError::NonFinite { what: "tensor components" });
        }
        Ok(RawCubicTensor { n, comps })
    }

    pub fn from_coeffs(n: usize, t: &InvariantCubic) -> Result<Self> {
        Self::new(n, raw_components(n, t)?)
    }

    pub fn from_coeffs_weighted(
        n: usize,
        t: &InvariantCubic,
        weighting: C2Weighting,
    ) -> Result<Self> {
        Self::new(n, raw_components_weighted(n, t, weighting)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn comps(&self) -> &Components {
        &self.comps
    }

    pub fn max_asymmetry(&self) -> f64 {
        self.comps.max_asymmetry()
    }

    /// Trilinear evaluation on vech coefficients.
    pub fn value(&self, x: &SymMat, y: &SymMat, z: &SymMat) -> Result<f64> {
        check_orders(self.n, &[x, y, z])?;
        Ok(self.comps.contract3(x.vech(), y.vech(), z.vech()))
    }
}

#[derive(Serialize, Deserialize)]
struct RawEntry {
    idx: [usize; 3],
    val: f64,
}

#[derive(Serialize, Deserialize)]
struct RawRepr {
    n: usize,
    valence: usize,
    basis: String,
    entries: Vec<RawEntry>,
}

impl TryFrom<RawRepr> for RawCubicTensor {
    type Error = GeomError;

    fn try_from(repr: RawRepr) -> Result<Self> {
        if repr.n == 0 {
            return Err(GeomError::ZeroOrder);
        }
        if repr.valence != 3 {
            return Err(GeomError::BadSerialForm { reason: "valence must be 3" });
        }
        if repr.basis != "vech-lex" {
            return Err(GeomError::BadSerialForm { reason: "basis must be vech-lex" });
        }
        let d = vech_len(repr.n);
        let mut comps = Components::zeros(d, 3);
        let mut seen = HashSet::new();
        for e in &repr.entries {
            if !(e.idx[0] <= e.idx[1] && e.idx[1] <= e.idx[2]) {
                return Err(GeomError::BadSerialForm { reason: "entry idx must be non-decreasing" });
            }
            if e.idx[2] >= d {
                return Err(GeomError::BadSerialForm { reason: "entry idx out of range" });
            }
            if !e.val.is_finite() {
                return Err(GeomError::BadSerialForm { reason: "entry value must be finite" });
            }
            if !seen.insert(e.idx) {
                return Err(GeomError::BadSerialForm { reason: "duplicate entry idx" });
            }
            let [p, q, r] = e.idx;
            for idx in [
                [p, q, r],
                [p, r, q],
                [q, p, r],
                [q, r, p],
                [r, p, q],
                [r, q, p],
            ] {
                comps.set(&idx, e.val);
            }
        }
        RawCubicTensor::new(repr.n, comps)
    }
}

impl From<RawCubicTensor> for RawRepr {
    fn from(t: RawCubicTensor) -> RawRepr {
        let d = t.comps.d();
        let mut entries = Vec::new();
        for p in 0..d {
            for q in p..d {
                for r in q..d {
                    let val = t.comps.get(&[p, q, r]);
                    if val != 0.0 {
                        entries.push(RawEntry { idx: [p, q, r], val });
                    }
                }
            }
        }
        RawRepr { n: t.n, valence: 3, basis: "vech-lex".to_string(), entries }
    }
}

/// Tolerance for the rotation-frame check on raw tensors.
pub const ON_INVARIANCE_TOL: f64 = 1e-10;

/// Checks that the frozen identity components define an O(n)-invariant
/// form: for random rotations Q and directions X, Y, Z the values on
/// (X, Y, Z) and (QXQ^T, QYQ^T, QZQ^T) must agree. Relative deviation is
/// measured against max(1, |v|, |v'|); zero trials pass vacuously.
pub fn on_invariance_check(t: &RawCubicTensor, trials: u32, seed: u64) -> Result<Verdict> {
    let n = t.n();
    let id = SpdPoint::identity(n)?;
    let mut worst = 0.0_f64;
    for trial in 0..trials as u64 {
        let q = sample_orthogonal(n, subseed(seed, 0xB1, trial))?;
        let x = sample_sym(n, subseed(seed, 0xB2, trial))?;
        let y = sample_sym(n, subseed(seed, 0xB3, trial))?;
        let z = sample_sym(n, subseed(seed, 0xB4, trial))?;
        let v = t.value(&x, &y, &z)?;
        let vr = t.value(&q.pushforward(&x)?, &q.pushforward(&y)?, &q.pushforward(&z)?)?;
        let rel = (v - vr).abs() / v.abs().max(vr.abs()).max(1.0);
        worst = worst.max(rel);
    }
    Ok(Verdict::new("on-invariance", &id, worst, ON_INVARIANCE_TOL))
}

/// The family as a tensor field over the cone. Components are evaluated
/// slot by slot (no mirroring), so whatever the weighting, the field is an
/// honest combination of invariant trace monomials.
pub struct InvariantCubicField {
    n: usize,
    coeffs: InvariantCubic,
    weighting: C2Weighting,
    basis: VechBasis,
}

impl InvariantCubicField {
    pub fn new(n: usize, coeffs: InvariantCubic) -> Result<Self> {
        Self::with_weighting(n, coeffs, C2Weighting::Canonical)
    }

    pub fn with_weighting(n: usize, coeffs: InvariantCubic, weighting: C2Weighting) -> Result<Self> {
        Ok(InvariantCubicField { n, coeffs, weighting, basis: sym_basis(n)? })
    }

    pub fn coeffs(&self) -> &InvariantCubic {
        &self.coeffs
    }

    pub fn weighting(&self) -> C2Weighting {
        self.weighting
    }
}

impl TensorField for InvariantCubicField {
    fn order(&self) -> usize {
        self.n
    }

    fn valence(&self) -> usize {
        3
    }

    fn components(&self, at: &SpdPoint) -> Result<Components> {
        if at.n() != self.n {
            return Err(GeomError::OrderMismatch { expected: self.n, got: at.n() });
        }
        let d = self.basis.len();
        let w = self.weighting.weights();
        let si = at.inverse_matrix();
        let m: Vec<DMatrix<f64>> = self.basis.iter().map(|e| &si * e.to_matrix()).collect();
        let trs: Vec<f64> = m.iter().map(trace).collect();
        let mut pair = vec![0.0_f64; d * d];
        for a in 0..d {
            for b in 0..d {
                pair[a * d + b] = tr_pair(&m[a], &m[b]);
            }
        }
        let prods: Vec<DMatrix<f64>> = (0..d * d)
            .map(|ab| &m[ab / d] * &m[ab % d])
            .collect();

        let mut out = Components::zeros(d, 3);
        for a in 0..d {
            for b in 0..d {
                let pab = &prods[a * d + b];
                for c in 0..d {
                    let t3 = trace(&(pab * &m[c]));
                    let v = combine(
                        &self.coeffs,
                        w,
                        t3,
                        trs[a],
                        trs[b],
                        trs[c],
                        pair[a * d + b],
                        pair[a * d + c],
                        pair[b * d + c],
                    );
                    out.set(&[a, b, c], v);
                }
            }
        }
        Ok(out)
    }
}
