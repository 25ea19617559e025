//! Correspondence between invariant cubic tensors and symmetric cubic
//! polynomials.
//!
//! Restricting a tensor's cubic form q(X) = T(X, X, X) to diagonal
//! arguments yields a symmetric homogeneous cubic in the diagonal entries.
//! That polynomial is written in the power-sum basis {p3, p2 p1, p1^3},
//! truncated to the monomial types that exist at the given order. The map
//! is a linear isomorphism onto its image; [`phi`] computes it,
//! [`phi_inverse`] picks the canonical preimage, and [`dimension`] ranks
//! the generator images (1, 2, then 3 from order three on). [`polarize`]
//! goes the other way around: it rebuilds the symmetric tensor from any
//! homogeneous cubic evaluator.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::invariant::{raw_components, InvariantCubic, RawCubicTensor};
use crate::sym::{sym_basis, vech_index, vech_len, SymMat};
use crate::tensor::Components;

/// Cubic form of the tensor: X -> T(X, X, X).
pub fn cubic_form(t: &RawCubicTensor, x: &SymMat) -> Result<f64> {
    t.value(x, x, x)
}

/// |q(2X) - 8 q(X)|: zero for homogeneous cubics, a cheap probe to reject
/// evaluators of any other degree before polarizing them.
pub fn homogeneity_defect<Q>(q: Q, x: &SymMat) -> f64
where
    Q: Fn(&SymMat) -> f64,
{
    (q(&x.scaled(2.0)) - 8.0 * q(x)).abs()
}

/// Recovers the symmetric trilinear tensor from its cubic form:
/// T(X,Y,Z) = (1/6) [q(X+Y+Z) - q(X+Y) - q(Y+Z) - q(X+Z) + q(X) + q(Y) + q(Z)].
/// Each non-decreasing basis triple is evaluated once and mirrored, so the
/// output is symmetric to the bit. Garbage in for non-cubic q; probe with
/// [`homogeneity_defect`] first.
pub fn polarize<Q>(q: Q, n: usize) -> Result<RawCubicTensor>
where
    Q: Fn(&SymMat) -> f64,
{
    let basis = sym_basis(n)?;
    let d = basis.len();
    let singles: Vec<f64> = (0..d).map(|a| q(basis.elem(a))).collect();
    let mut pairs = vec![0.0_f64; d * d];
    for a in 0..d {
        for b in a..d {
            let v = q(&basis.elem(a).add(basis.elem(b))?);
            pairs[a * d + b] = v;
            pairs[b * d + a] = v;
        }
    }

    let mut comps = Components::zeros(d, 3);
    for a in 0..d {
        for b in a..d {
            let sab = basis.elem(a).add(basis.elem(b))?;
            for c in b..d {
                let v = (q(&sab.add(basis.elem(c))?)
                    - pairs[a * d + b]
                    - pairs[b * d + c]
                    - pairs[a * d + c]
                    + singles[a]
                    + singles[b]
                    + singles[c])
                    / 6.0;
                for idx in [
                    [a, b, c],
                    [a, c, b],
                    [b, a, c],
                    [b, c, a],
                    [c, a, b],
                    [c, b, a],
                ] {
                    comps.set(&idx, v);
                }
            }
        }
    }
    RawCubicTensor::new(n, comps)
}

/// Coefficients of the diagonal restriction by monomial type: x_i^3,
/// x_i^2 x_j (order two and up), x_i x_j x_k (order three and up).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonomialCoeffs {
    n: usize,
    c300: f64,
    c210: Option<f64>,
    c111: Option<f64>,
}

impl MonomialCoeffs {
    pub fn new(n: usize, c300: f64, c210: Option<f64>, c111: Option<f64>) -> Result<Self> {
        if n == 0 {
            return Err(GeomError::ZeroOrder);
        }
        let pattern_ok = match n {
            1 => c210.is_none() && c111.is_none(),
            2 => c210.is_some() && c111.is_none(),
            _ => c210.is_some() && c111.is_some(),
        };
        if !pattern_ok {
            return Err(GeomError::BadSerialForm {
                reason: "monomial coefficient set does not match the order",
            });
        }
        if !(c300.is_finite()
            && c210.map_or(true, f64::is_finite)
            && c111.map_or(true, f64::is_finite))
        {
            return Err(GeomError::NonFinite { what: "monomial coefficients" });
        }
        Ok(MonomialCoeffs { n, c300, c210, c111 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c300(&self) -> f64 {
        self.c300
    }

    pub fn c210(&self) -> Result<f64> {
        self.c210.ok_or(GeomError::CoefficientUnavailable { name: "c210", n: self.n })
    }

    pub fn c111(&self) -> Result<f64> {
        self.c111.ok_or(GeomError::CoefficientUnavailable { name: "c111", n: self.n })
    }
}

fn diag_sym(n: usize, lam: &[f64]) -> Result<SymMat> {
    let mut vech = vec![0.0_f64; vech_len(n)];
    for (i, &l) in lam.iter().enumerate() {
        vech[vech_index(n, i, i)] = l;
    }
    SymMat::from_vech(n, vech)
}

/// Monomial coefficients of the diagonal restriction, extracted exactly
/// from evaluations at e1, e1+e2, e1+e2+e3 (those that exist at order n).
/// Meaningful only for rotation-invariant tensors; callers gate on that.
pub fn diag_restrict(t: &RawCubicTensor) -> Result<MonomialCoeffs> {
    let n = t.n();
    let mut lam = vec![0.0_f64; n];
    lam[0] = 1.0;
    let c300 = cubic_form(t, &diag_sym(n, &lam)?)?;
    let mut c210 = None;
    let mut c111 = None;
    if n >= 2 {
        lam[1] = 1.0;
        let f12 = cubic_form(t, &diag_sym(n, &lam)?)?;
        let v210 = (f12 - 2.0 * c300) / 2.0;
        c210 = Some(v210);
        if n >= 3 {
            lam[2] = 1.0;
            let f123 = cubic_form(t, &diag_sym(n, &lam)?)?;
            c111 = Some(f123 - 3.0 * c300 - 6.0 * v210);
        }
    }
    MonomialCoeffs::new(n, c300, c210, c111)
}

/// A symmetric homogeneous cubic in the power-sum basis, truncated to the
/// coordinates that are independent at order n: u p3 (+ v p2 p1 from order
/// two) (+ w p1^3 from order three).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolyRepr", into = "PolyRepr")]
pub struct SymCubicPoly {
    n: usize,
    u: f64,
    v: Option<f64>,
    w: Option<f64>,
}

impl SymCubicPoly {
    pub fn new(n: usize, u: f64, v: Option<f64>, w: Option<f64>) -> Result<Self> {
        if n == 0 {
            return Err(GeomError::ZeroOrder);
        }
        let pattern_ok = match n {
            1 => v.is_none() && w.is_none(),
            2 => v.is_some() && w.is_none(),
            _ => v.is_some() && w.is_some(),
        };
        if !pattern_ok {
            return Err(GeomError::BadSerialForm {
                reason: "power-sum coefficient set does not match the order",
            });
        }
        if !(u.is_finite() && v.map_or(true, f64::is_finite) && w.map_or(true, f64::is_finite)) {
            return Err(GeomError::NonFinite { what: "power-sum coefficients" });
        }
        Ok(SymCubicPoly { n, u, v, w })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficient of p3.
    pub fn u(&self) -> f64 {
        self.u
    }

    /// Coefficient of p2 p1; independent from order two on.
    pub fn v(&self) -> Result<f64> {
        self.v.ok_or(GeomError::CoefficientUnavailable { name: "p2p1", n: self.n })
    }

    /// Coefficient of p1^3; independent from order three on.
    pub fn w(&self) -> Result<f64> {
        self.w.ok_or(GeomError::CoefficientUnavailable { name: "p1^3", n: self.n })
    }

    pub fn max_abs(&self) -> f64 {
        self.u
            .abs()
            .max(self.v.map_or(0.0, f64::abs))
            .max(self.w.map_or(0.0, f64::abs))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoeffsRepr {
    p3: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p2p1: Option<f64>,
    #[serde(rename = "p1^3", default, skip_serializing_if = "Option::is_none")]
    p1_cubed: Option<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyRepr {
    n: usize,
    basis: String,
    coeffs: CoeffsRepr,
}

impl TryFrom<PolyRepr> for SymCubicPoly {
    type Error = GeomError;

    fn try_from(repr: PolyRepr) -> Result<Self> {
        if repr.basis != "power-sum" {
            return Err(GeomError::BadSerialForm { reason: "basis must be power-sum" });
        }
        SymCubicPoly::new(repr.n, repr.coeffs.p3, repr.coeffs.p2p1, repr.coeffs.p1_cubed)
    }
}

impl From<SymCubicPoly> for PolyRepr {
    fn from(p: SymCubicPoly) -> PolyRepr {
        PolyRepr {
            n: p.n,
            basis: "power-sum".to_string(),
            coeffs: CoeffsRepr { p3: p.u, p2p1: p.v, p1_cubed: p.w },
        }
    }
}

/// Change of basis from monomial types to power sums. The system is
/// triangular: p3 -> (1,0,0), p2 p1 -> (1,1,0), p1^3 -> (1,3,6) in
/// (c300, c210, c111), truncated to the types available at the order.
pub fn to_power_sums(m: &MonomialCoeffs) -> Result<SymCubicPoly> {
    match m.n() {
        1 => SymCubicPoly::new(1, m.c300(), None, None),
        2 => {
            let v = m.c210()?;
            SymCubicPoly::new(2, m.c300() - v, Some(v), None)
        }
        n => {
            let w = m.c111()? / 6.0;
            let v = m.c210()? - 3.0 * w;
            let u = m.c300() - v - w;
            SymCubicPoly::new(n, u, Some(v), Some(w))
        }
    }
}

/// (a, b, c) -> the power-sum polynomial of the diagonal restriction,
/// through the frozen identity components. Linear; for order three and up
/// it is the identity on coordinates.
pub fn phi(n: usize, c: &InvariantCubic) -> Result<SymCubicPoly> {
    let t = RawCubicTensor::new(n, raw_components(n, c)?)?;
    to_power_sums(&diag_restrict(&t)?)
}

/// Canonical preimage of a polynomial: coordinates are copied and the
/// coefficients without an independent counterpart at this order are set
/// to zero. Any other preimage differs by a combination that vanishes as a
/// tensor, so the choice is tensor-equivalent.
pub fn phi_inverse(p: &SymCubicPoly) -> Result<InvariantCubic> {
    match p.n() {
        1 => InvariantCubic::new(p.u(), 0.0, 0.0),
        2 => InvariantCubic::new(p.u(), p.v()?, 0.0),
        _ => InvariantCubic::new(p.u(), p.v()?, p.w()?),
    }
}

/// Dimension of the space of invariant cubic tensors at order n: the rank
/// of the generator images in the available monomial types, by singular
/// values with a relative threshold of 1e-9.
pub fn dimension(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(GeomError::ZeroOrder);
    }
    let k = n.min(3);
    let gens = [[1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [1.0, 3.0, 6.0]];
    let m = DMatrix::from_fn(3, k, |r, c| gens[r][c]);
    let sv = m.singular_values();
    let smax = sv.iter().cloned().fold(0.0_f64, f64::max);
    Ok(sv.iter().filter(|s| **s > 1e-9 * smax).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::trace;
    use crate::sample::sample_sym;
    use crate::sym::SpdPoint;

    fn coeffs(a: f64, b: f64, c: f64) -> InvariantCubic {
        InvariantCubic::new(a, b, c).unwrap()
    }

    fn raw(n: usize, a: f64, b: f64, c: f64) -> RawCubicTensor {
        RawCubicTensor::from_coeffs(n, &coeffs(a, b, c)).unwrap()
    }

    #[test]
    fn cubic_form_hand_values() {
        for n in [1usize, 2, 3] {
            let id = SpdPoint::identity(n).unwrap().sym().clone();
            let v = cubic_form(&raw(n, 1.0, 0.0, 0.0), &id).unwrap();
            assert!((v - n as f64).abs() < 1e-13, "n={n} got {v}");
        }
        // Trace-free direction kills (tr X)^3.
        let x = SymMat::from_vech(2, vec![1.3, 0.7, -1.3]).unwrap();
        let v = cubic_form(&raw(2, 0.0, 0.0, 1.0), &x).unwrap();
        assert!(v.abs() < 1e-13);
        // tr(X) tr(X^2) at diag(1, 2): 3 * 5.
        let x = SymMat::from_vech(2, vec![1.0, 0.0, 2.0]).unwrap();
        let v = cubic_form(&raw(2, 0.0, 1.0, 0.0), &x).unwrap();
        assert!((v - 15.0).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn cubic_form_matches_trace_monomials() {
        for n in [2usize, 3] {
            for seed in 0..4u64 {
                let x = sample_sym(n, 900 + seed).unwrap();
                let m = x.to_matrix();
                let t1 = trace(&(&m * &m * &m));
                let t2 = trace(&(&m * &m)) * trace(&m);
                let t3 = trace(&m).powi(3);
                for (t, want) in [
                    (raw(n, 1.0, 0.0, 0.0), t1),
                    (raw(n, 0.0, 1.0, 0.0), t2),
                    (raw(n, 0.0, 0.0, 1.0), t3),
                ] {
                    let got = cubic_form(&t, &x).unwrap();
                    let rel = (got - want).abs() / want.abs().max(1.0);
                    assert!(rel < 1e-12, "n={n} seed={seed} rel={rel:.3e}");
                }
            }
        }
    }

    #[test]
    fn polarize_recovers_trace_cubed_tensor() {
        let q = |x: &SymMat| {
            let m = x.to_matrix();
            trace(&(&m * &m * &m))
        };
        let got = polarize(q, 2).unwrap();
        let want = raw(2, 1.0, 0.0, 0.0);
        assert!(got.comps().max_diff(want.comps()) < 1e-12);
        assert_eq!(got.max_asymmetry(), 0.0);
    }

    #[test]
    fn polarize_zero_is_zero() {
        let got = polarize(|_x| 0.0, 3).unwrap();
        assert_eq!(got.comps().max_abs(), 0.0);
    }

    #[test]
    fn polarize_round_trips_the_family() {
        for n in [1usize, 2, 3] {
            let t = raw(n, 0.6, -1.2, 0.8);
            let q = |x: &SymMat| cubic_form(&t, x).unwrap();
            let back = polarize(q, n).unwrap();
            let rel = back.comps().max_diff(t.comps()) / t.comps().max_abs().max(1.0);
            assert!(rel < 1e-12, "n={n} rel={rel:.3e}");
        }
    }

    #[test]
    fn homogeneity_probe_flags_quadratics() {
        let x = SymMat::from_vech(2, vec![1.0, 0.5, 2.0]).unwrap();
        let quad = |x: &SymMat| {
            let m = x.to_matrix();
            trace(&(&m * &m))
        };
        assert!(homogeneity_defect(quad, &x) > 1.0);

        let t = raw(2, 1.0, 1.0, 1.0);
        let cubic = |x: &SymMat| cubic_form(&t, x).unwrap();
        let scale = cubic_form(&t, &x).unwrap().abs().max(1.0);
        assert!(homogeneity_defect(cubic, &x) / scale < 1e-12);
    }

    #[test]
    fn diag_restrict_frozen_values() {
        let m = diag_restrict(&raw(3, 0.5, 0.0, 0.0)).unwrap();
        assert!((m.c300() - 0.5).abs() < 1e-13);
        assert!(m.c210().unwrap().abs() < 1e-13);
        assert!(m.c111().unwrap().abs() < 1e-13);

        // p1^3 expands to monomial types (1, 3, 6).
        let m = diag_restrict(&raw(3, 0.0, 0.0, 1.0)).unwrap();
        assert!((m.c300() - 1.0).abs() < 1e-13);
        assert!((m.c210().unwrap() - 3.0).abs() < 1e-13);
        assert!((m.c111().unwrap() - 6.0).abs() < 1e-13);

        let m = diag_restrict(&raw(3, 0.0, 0.0, 0.0)).unwrap();
        assert_eq!(m.c300(), 0.0);
    }

    #[test]
    fn power_sum_solve_frozen_values() {
        let cases = [
            ((1.0, 0.0, 0.0), (1.0, 0.0, 0.0)),
            ((1.0, 3.0, 6.0), (0.0, 0.0, 1.0)),
            ((1.0, 1.0, 0.0), (0.0, 1.0, 0.0)),
        ];
        for ((c300, c210, c111), (u, v, w)) in cases {
            let m = MonomialCoeffs::new(3, c300, Some(c210), Some(c111)).unwrap();
            let p = to_power_sums(&m).unwrap();
            assert!((p.u() - u).abs() < 1e-13);
            assert!((p.v().unwrap() - v).abs() < 1e-13);
            assert!((p.w().unwrap() - w).abs() < 1e-13);
        }
    }

    #[test]
    fn phi_sends_the_alpha_slice_to_p3() {
        for n in [1usize, 2, 3, 5] {
            for alpha in [-1.0, 0.0, 0.5, 1.0] {
                let p = phi(n, &coeffs(alpha, 0.0, 0.0)).unwrap();
                assert!((p.u() - alpha).abs() < 1e-12, "n={n} alpha={alpha}");
                if n >= 2 {
                    assert!(p.v().unwrap().abs() < 1e-12);
                }
                if n >= 3 {
                    assert!(p.w().unwrap().abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn phi_is_the_identity_on_coordinates_from_order_three() {
        for n in [3usize, 4] {
            let p = phi(n, &coeffs(0.3, -0.9, 0.45)).unwrap();
            assert!((p.u() - 0.3).abs() < 1e-12);
            assert!((p.v().unwrap() + 0.9).abs() < 1e-12);
            assert!((p.w().unwrap() - 0.45).abs() < 1e-12);
        }
    }

    #[test]
    fn phi_kills_the_null_direction_at_order_two() {
        let p = phi(2, &coeffs(2.0, -3.0, 1.0)).unwrap();
        assert!(p.u().abs() < 1e-13);
        assert!(p.v().unwrap().abs() < 1e-13);
    }

    #[test]
    fn phi_two_dimensional_change_of_basis() {
        // At order 2: (a, b, c) -> (u, v) = (a - 2c, b + 3c).
        let p = phi(2, &coeffs(0.4, -0.7, 0.5)).unwrap();
        assert!((p.u() - (0.4 - 1.0)).abs() < 1e-12);
        assert!((p.v().unwrap() - (-0.7 + 1.5)).abs() < 1e-12);
    }

    #[test]
    fn phi_is_linear() {
        let c1 = coeffs(0.7, 0.2, -0.3);
        let c2 = coeffs(-0.1, 1.1, 0.6);
        let s = 2.5;
        let sum = coeffs(s * 0.7 - 0.1, s * 0.2 + 1.1, s * -0.3 + 0.6);
        let lhs = phi(3, &sum).unwrap();
        let p1 = phi(3, &c1).unwrap();
        let p2 = phi(3, &c2).unwrap();
        assert!((lhs.u() - (s * p1.u() + p2.u())).abs() < 1e-12);
        assert!(
            (lhs.v().unwrap() - (s * p1.v().unwrap() + p2.v().unwrap())).abs() < 1e-12
        );
        assert!(
            (lhs.w().unwrap() - (s * p1.w().unwrap() + p2.w().unwrap())).abs() < 1e-12
        );
    }

    #[test]
    fn phi_inverse_round_trips() {
        let polys = [
            SymCubicPoly::new(1, 0.8, None, None).unwrap(),
            SymCubicPoly::new(2, 0.8, Some(-0.4), None).unwrap(),
            SymCubicPoly::new(3, 0.8, Some(-0.4), Some(0.25)).unwrap(),
        ];
        for p in polys {
            let c = phi_inverse(&p).unwrap();
            let back = phi(p.n(), &c).unwrap();
            assert!((back.u() - p.u()).abs() < 1e-12);
            if p.n() >= 2 {
                assert!((back.v().unwrap() - p.v().unwrap()).abs() < 1e-12);
            }
            if p.n() >= 3 {
                assert!((back.w().unwrap() - p.w().unwrap()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn reconstruction_reproduces_the_tensor_at_every_order() {
        // Through the polynomial and back: representatives differ from the
        // input only by combinations that vanish as tensors.
        for n in [1usize, 2, 3] {
            let t = raw(n, 0.9, -1.3, 0.7);
            let p = to_power_sums(&diag_restrict(&t).unwrap()).unwrap();
            let back = RawCubicTensor::from_coeffs(n, &phi_inverse(&p).unwrap()).unwrap();
            let rel = back.comps().max_diff(t.comps()) / t.comps().max_abs().max(1.0);
            assert!(rel < 1e-12, "n={n} rel={rel:.3e}");
        }
    }

    #[test]
    fn dimension_sequence() {
        let dims: Vec<usize> = (1..=8).map(|n| dimension(n).unwrap()).collect();
        assert_eq!(dims, vec![1, 2, 3, 3, 3, 3, 3, 3]);
        assert!(dimension(0).is_err());
    }

    #[test]
    fn rank_drop_at_order_two_has_the_expected_null_vector() {
        // The generator images at n = 2 are annihilated by (2, -3, 1).
        let m = DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 1.0, 1.0, 1.0, 3.0]);
        let lam = DMatrix::from_row_slice(1, 3, &[2.0, -3.0, 1.0]);
        let prod = lam * m;
        assert_eq!(prod[(0, 0)], 0.0);
        assert_eq!(prod[(0, 1)], 0.0);
    }

    #[test]
    fn poly_serde_exact_shape_and_round_trip() {
        let p = SymCubicPoly::new(2, 1.0, Some(-0.5), None).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"n":2,"basis":"power-sum","coeffs":{"p3":1.0,"p2p1":-0.5}}"#);
        let back: SymCubicPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);

        let p = SymCubicPoly::new(3, 0.25, Some(1.5), Some(-2.0)).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"{"n":3,"basis":"power-sum","coeffs":{"p3":0.25,"p2p1":1.5,"p1^3":-2.0}}"#
        );
        let back: SymCubicPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn poly_serde_rejects_malformed_inputs() {
        let bad = [
            // Coefficient without an independent counterpart at n = 2.
            r#"{"n":2,"basis":"power-sum","coeffs":{"p3":1.0,"p2p1":0.0,"p1^3":1.0}}"#,
            // Missing p2p1 at n = 2.
            r#"{"n":2,"basis":"power-sum","coeffs":{"p3":1.0}}"#,
            // Wrong basis label.
            r#"{"n":2,"basis":"monomial","coeffs":{"p3":1.0,"p2p1":0.0}}"#,
            // Unknown coefficient key.
            r#"{"n":2,"basis":"power-sum","coeffs":{"p3":1.0,"p2p1":0.0,"p4":1.0}}"#,
            // Zero order.
            r#"{"n":0,"basis":"power-sum","coeffs":{"p3":1.0}}"#,
        ];
        for json in bad {
            assert!(serde_json::from_str::<SymCubicPoly>(json).is_err(), "{json}");
        }
    }

    #[test]
    fn coefficient_availability_is_guarded() {
        let p = SymCubicPoly::new(1, 1.0, None, None).unwrap();
        assert!(matches!(p.v(), Err(GeomError::CoefficientUnavailable { .. })));
        assert!(matches!(p.w(), Err(GeomError::CoefficientUnavailable { .. })));
        assert!(MonomialCoeffs::new(2, 1.0, None, None).is_err());
        assert!(SymCubicPoly::new(1, 1.0, Some(0.0), None).is_err());
    }
}
