//! Connections on the cone and the derivative checks built on them.
//!
//! The Levi-Civita connection of the Fisher metric has the closed form
//! Gamma_Sigma(X, Y) = -(X Si Y + Y Si X)/2, verified here against the
//! coordinate construction Gamma^c_ab = (1/2) g^{cd} (d_a g_bd + d_b g_ad -
//! d_d g_ab) with central differences. The canonical derivative at the
//! identity differentiates the pullback along the one-parameter congruence
//! flow q -> Exp(-tX) q Exp(-tX)^T; for every invariant field both
//! derivatives vanish, which is what the parallelism checks certify.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::sym::{sym_basis, vech_len, SpdPoint, SymMat};
use crate::tensor::{Components, TensorField};

/// Central second-order finite-difference scheme. The base step is scaled
/// by (1 + max |entries|) of the point (or direction) it displaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdScheme {
    step: f64,
}

pub const FD_MIN_STEP: f64 = 1e-8;
pub const FD_MAX_STEP: f64 = 1e-2;
pub const FD_DEFAULT_STEP: f64 = 1e-5;

/// Halvings attempted when a displaced point leaves the cone.
const MAX_HALVINGS: u32 = 8;

impl FdScheme {
    pub fn new(step: f64) -> Result<Self> {
        if !step.is_finite() || !(FD_MIN_STEP..=FD_MAX_STEP).contains(&step) {
            return Err(GeomError::StepOutOfRange { step, min: FD_MIN_STEP, max: FD_MAX_STEP });
        }
        Ok(FdScheme { step })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn step_at(&self, at: &SpdPoint) -> f64 {
        self.step * (1.0 + at.sym().max_abs())
    }
}

impl Default for FdScheme {
    fn default() -> Self {
        FdScheme { step: FD_DEFAULT_STEP }
    }
}

/// Christoffel symbols Gamma^c_ab in the vech chart, lower-symmetric by
/// construction (the (a, b) and (b, a) slots hold the same bits).
#[derive(Debug, Clone, PartialEq)]
pub struct ChristoffelData {
    d: usize,
    data: Vec<f64>,
}

impl ChristoffelData {
    fn zeros(d: usize) -> Self {
        ChristoffelData { d, data: vec![0.0; d * d * d] }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> f64 {
        self.data[(a * self.d + b) * self.d + c]
    }

    fn set_pair(&mut self, a: usize, b: usize, c: usize, v: f64) {
        let d = self.d;
        self.data[(a * d + b) * d + c] = v;
        self.data[(b * d + a) * d + c] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn max_diff(&self, other: &ChristoffelData) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// Levi-Civita Christoffel operator of the Fisher metric:
/// Gamma_Sigma(X, Y) = -(X Sigma^{-1} Y + Y Sigma^{-1} X)/2.
pub fn christoffel_closed(at: &SpdPoint, x: &SymMat, y: &SymMat) -> Result<SymMat> {
    if x.n() != at.n() || y.n() != at.n() {
        return Err(GeomError::OrderMismatch { expected: at.n(), got: x.n().max(y.n()) });
    }
    let si = at.inverse_matrix();
    let p = x.to_matrix() * &si * y.to_matrix();
    // -(P + P^T)/2; Y Si X is the transpose of X Si Y for symmetric inputs.
    SymMat::symmetrized(&(-&p))
}

/// The closed-form symbols on the vech basis, as coordinate data.
pub fn christoffel_closed_data(at: &SpdPoint) -> Result<ChristoffelData> {
    let n = at.n();
    let d = vech_len(n);
    let basis = sym_basis(n)?;
    let si = at.inverse_matrix();
    let right: Vec<DMatrix<f64>> = (0..d).map(|a| &si * basis.elem(a).to_matrix()).collect();
    let mut out = ChristoffelData::zeros(d);
    for a in 0..d {
        let ea = basis.elem(a).to_matrix();
        for b in a..d {
            let p = &ea * &right[b];
            let gamma = SymMat::symmetrized(&(-&p))?;
            for c in 0..d {
                out.set_pair(a, b, c, gamma.vech()[c]);
            }
        }
    }
    Ok(out)
}

/// Displaces `at` by +/- h along every basis direction, halving h up to
/// [`MAX_HALVINGS`] times if a displaced point leaves the cone. Returns the
/// step actually used together with the displaced points.
fn shifted_points(at: &SpdPoint, base_step: f64) -> Result<(f64, Vec<(SpdPoint, SpdPoint)>)> {
    let basis = sym_basis(at.n())?;
    let d = basis.len();
    let mut h = base_step;
    'attempt: for _ in 0..=MAX_HALVINGS {
        let mut shifts = Vec::with_capacity(d);
        for w in 0..d {
            let ew = basis.elem(w);
            let plus = SpdPoint::new(at.sym().add(&ew.scaled(h))?);
            let minus = SpdPoint::new(at.sym().add(&ew.scaled(-h))?);
            match (plus, minus) {
                (Ok(p), Ok(m)) => shifts.push((p, m)),
                _ => {
                    h *= 0.5;
                    continue 'attempt;
                }
            }
        }
        return Ok((h, shifts));
    }
    Err(GeomError::StepExitsCone { step: base_step, halvings: MAX_HALVINGS })
}

fn symmetrized_gram(g: &Components) -> Components {
    let d = g.d();
    let mut out = Components::zeros(d, 2);
    for a in 0..d {
        for b in a..d {
            let v = if a == b {
                g.get(&[a, a])
            } else {
                0.5 * (g.get(&[a, b]) + g.get(&[b, a]))
            };
            out.set(&[a, b], v);
            out.set(&[b, a], v);
        }
    }
    out
}

/// Coordinate Christoffel symbols of an arbitrary metric field by central
/// differences of its Gram components. Independent of
/// [`christoffel_closed_data`]; the two agree for the Fisher metric.
pub fn christoffel_fd<G>(g: &G, at: &SpdPoint, scheme: &FdScheme) -> Result<ChristoffelData>
where
    G: TensorField + ?Sized,
{
    if g.valence() != 2 {
        return Err(GeomError::ValenceMismatch { expected: 2, got: g.valence() });
    }
    if g.order() != at.n() {
        return Err(GeomError::OrderMismatch { expected: g.order(), got: at.n() });
    }
    let d = vech_len(at.n());
    let (h, shifts) = shifted_points(at, scheme.step_at(at))?;

    let g0 = symmetrized_gram(&g.components(at)?);
    let mut partials: Vec<Components> = Vec::with_capacity(d);
    for (plus, minus) in &shifts {
        let gp = symmetrized_gram(&g.components(plus)?);
        let gm = symmetrized_gram(&g.components(minus)?);
        let mut pw = Components::zeros(d, 2);
        for k in 0..d * d {
            pw.data_mut()[k] = (gp.data()[k] - gm.data()[k]) / (2.0 * h);
        }
        partials.push(pw);
    }

    let gram = DMatrix::from_fn(d, d, |a, b| g0.get(&[a, b]));
    let sv = gram.clone().singular_values();
    let smax = sv.iter().cloned().fold(0.0_f64, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(smin > 1e-12 * smax) {
        return Err(GeomError::DegenerateGram { ratio: smin / smax });
    }
    let ginv = gram
        .try_inverse()
        .ok_or(GeomError::DegenerateGram { ratio: smin / smax })?;

    let mut out = ChristoffelData::zeros(d);
    let mut term = vec![0.0_f64; d];
    for a in 0..d {
        for b in a..d {
            for (dd, t) in term.iter_mut().enumerate() {
                *t = partials[a].get(&[b, dd]) + partials[b].get(&[a, dd])
                    - partials[dd].get(&[a, b]);
            }
            for c in 0..d {
                let mut acc = 0.0;
                for (dd, t) in term.iter().enumerate() {
                    acc += ginv[(c, dd)] * t;
                }
                out.set_pair(a, b, c, 0.5 * acc);
            }
        }
    }
    Ok(out)
}

/// Covariant derivative array of a valence-k field (k = 2 or 3) with
/// respect to the metric's connection, indexed [w, i_1, ..., i_k]:
/// the partial derivative along E_w minus one Christoffel correction per
/// slot. Partials use central differences with cone-aware step halving.
pub fn cov_deriv<C, G>(
    field: &C,
    metric: &G,
    at: &SpdPoint,
    scheme: &FdScheme,
) -> Result<Components>
where
    C: TensorField + ?Sized,
    G: TensorField + ?Sized,
{
    let k = field.valence();
    if !(k == 2 || k == 3) {
        return Err(GeomError::ValenceMismatch { expected: 3, got: k });
    }
    if metric.valence() != 2 {
        return Err(GeomError::ValenceMismatch { expected: 2, got: metric.valence() });
    }
    let n = at.n();
    if field.order() != n || metric.order() != n {
        return Err(GeomError::OrderMismatch { expected: n, got: field.order() });
    }
    let d = vech_len(n);

    let gamma = metric.christoffel(at, scheme)?;
    let base = field.components(at)?;
    let (h, shifts) = shifted_points(at, scheme.step_at(at))?;

    let entries = d.pow(k as u32);
    let mut out = Components::zeros(d, k + 1);
    let mut idx = vec![0usize; k];
    for (w, (plus, minus)) in shifts.iter().enumerate() {
        let cp = field.components(plus)?;
        let cm = field.components(minus)?;
        idx.iter_mut().for_each(|i| *i = 0);
        for flat in 0..entries {
            let mut v = (cp.data()[flat] - cm.data()[flat]) / (2.0 * h);
            // One correction per slot: sum_e Gamma^e_{w, idx[s]} C[idx | s -> e].
            let mut stride = entries / d;
            for s in 0..k {
                let slot_ix = idx[s];
                let slot_base = flat - slot_ix * stride;
                let mut corr = 0.0;
                for e in 0..d {
                    corr += gamma.get(w, slot_ix, e) * base.data()[slot_base + e * stride];
                }
                v -= corr;
                stride /= d;
            }
            out.data_mut()[w * entries + flat] = v;
            // Advance the multi-index odometer.
            for s in (0..k).rev() {
                idx[s] += 1;
                if idx[s] < d {
                    break;
                }
                idx[s] = 0;
            }
        }
    }
    Ok(out)
}

/// Scale against which the derivative checks are normalized:
/// max(1, |C|_max at the point, |C|_max at the identity).
pub fn field_scale<C>(field: &C, at: &SpdPoint) -> Result<f64>
where
    C: TensorField + ?Sized,
{
    let here = field.components(at)?.max_abs();
    let at_id = field.components(&SpdPoint::identity(field.order())?)?.max_abs();
    Ok(here.max(at_id).max(1.0))
}

/// Outcome of a named check at a point. `max_violation` is normalized by
/// the relevant field scale so that `pass == (max_violation <= tol)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub n: usize,
    pub point: SymMat,
    pub max_violation: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Verdict {
    pub fn new(check: &str, at: &SpdPoint, max_violation: f64, tol: f64) -> Verdict {
        Verdict {
            check: check.to_string(),
            n: at.n(),
            point: at.sym().clone(),
            max_violation,
            tol,
            pass: max_violation <= tol,
        }
    }
}

/// Conjugate symmetry of the covariant derivative: the (0, k+1) array must
/// be symmetric in its first two slots. Symmetry across the remaining slots
/// is inherited from the field's own symmetry and is not re-measured here.
pub fn conjugate_symmetry_check<C, G>(
    field: &C,
    metric: &G,
    at: &SpdPoint,
    scheme: &FdScheme,
    tol: f64,
) -> Result<Verdict>
where
    C: TensorField + ?Sized,
    G: TensorField + ?Sized,
{
    let nabla = cov_deriv(field, metric, at, scheme)?;
    let scale = field_scale(field, at)?.max(nabla.max_abs());
    Ok(Verdict::new(
        "conjugate-symmetry",
        at,
        nabla.swap01_max_diff() / scale,
        tol,
    ))
}

/// Parallelism of the field: the covariant derivative array must vanish.
pub fn parallel_check<C, G>(
    field: &C,
    metric: &G,
    at: &SpdPoint,
    scheme: &FdScheme,
    tol: f64,
) -> Result<Verdict>
where
    C: TensorField + ?Sized,
    G: TensorField + ?Sized,
{
    let nabla = cov_deriv(field, metric, at, scheme)?;
    let scale = field_scale(field, at)?;
    Ok(Verdict::new("parallelism", at, nabla.max_abs() / scale, tol))
}

/// exp(f * A) for symmetric A, through the spectral decomposition.
fn sym_exp(a: &SymMat, f: f64) -> DMatrix<f64> {
    let eig = a.to_matrix().symmetric_eigen();
    let vals = eig.eigenvalues.map(|l| (f * l).exp());
    &eig.eigenvectors * DMatrix::from_diagonal(&vals) * eig.eigenvectors.transpose()
}

/// Canonical derivative of a field at the identity along direction v: the
/// central difference in t of the pullback of the field along the flow
/// q -> Exp(-tX) q Exp(-tX)^T of the action field with value v at the
/// identity (X = -v/2). Vanishes identically on invariant fields.
pub fn canonical_deriv<C>(field: &C, v: &SymMat, scheme: &FdScheme) -> Result<Components>
where
    C: TensorField + ?Sized,
{
    let n = field.order();
    if v.n() != n {
        return Err(GeomError::OrderMismatch { expected: n, got: v.n() });
    }
    let d = vech_len(n);
    let basis = sym_basis(n)?;
    let t = scheme.step() * (1.0 + v.max_abs());

    let pulled = |s: f64| -> Result<Components> {
        // Flow of the action field through the identity: point Exp(s v),
        // frame A_s = Exp(s v / 2) acting on tangents by congruence.
        let point = SpdPoint::new(SymMat::symmetrized(&sym_exp(v, s))?)?;
        let a_s = sym_exp(v, 0.5 * s);
        let mut b = DMatrix::zeros(d, d);
        for x in 0..d {
            let moved = SymMat::symmetrized(&(&a_s * basis.elem(x).to_matrix() * &a_s))?;
            for a in 0..d {
                b[(a, x)] = moved.vech()[a];
            }
        }
        Ok(field.components(&point)?.basis_change(&b))
    };

    let fp = pulled(t)?;
    let fm = pulled(-t)?;
    let mut out = Components::zeros(d, field.valence());
    for (o, (p, m)) in out
        .data_mut()
        .iter_mut()
        .zip(fp.data().iter().zip(fm.data()))
    {
        *o = (p - m) / (2.0 * t);
    }
    Ok(out)
}

/// Sign and rate check for the flow differentiation: the central difference
/// at 0 of t -> Exp(-tA) I Exp(-tA)^T must equal -2A, with O(t^2) error.
/// Returns the max-norm discrepancy at the given t in (0, 1e-2].
pub fn phi_eta_check(a: &SymMat, t: f64) -> Result<f64> {
    if !t.is_finite() || !(t > 0.0 && t <= 1e-2) {
        return Err(GeomError::StepOutOfRange { step: t, min: f64::MIN_POSITIVE, max: 1e-2 });
    }
    let flow = |s: f64| {
        let e = sym_exp(a, -s);
        &e * e.transpose()
    };
    let fd = (flow(t) - flow(-t)) / (2.0 * t);
    let target = -2.0 * a.to_matrix();
    Ok(crate::linalg::max_abs(&(fd - target)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym::SymMat;
    use crate::tensor::{FisherField, FnField};

    fn spd(n: usize, vech: Vec<f64>) -> SpdPoint {
        SpdPoint::new(SymMat::from_vech(n, vech).unwrap()).unwrap()
    }

    #[test]
    fn closed_form_one_dimensional_symbol() {
        // n = 1: Gamma^1_11 = -1 at Sigma = 1.
        let at = spd(1, vec![1.0]);
        let data = christoffel_closed_data(&at).unwrap();
        assert_eq!(data.get(0, 0, 0), -1.0);
        let basis = sym_basis(1).unwrap();
        let gamma = christoffel_closed(&at, basis.elem(0), basis.elem(0)).unwrap();
        assert_eq!(gamma.vech()[0], -1.0);
    }

    #[test]
    fn closed_form_squares_the_direction_at_identity() {
        // Gamma_I(X, X) = -X^2.
        let at = SpdPoint::identity(2).unwrap();
        let x = SymMat::from_vech(2, vec![1.0, 2.0, -1.0]).unwrap();
        let gamma = christoffel_closed(&at, &x, &x).unwrap();
        let expect = -(x.to_matrix() * x.to_matrix());
        assert_eq!(gamma.to_matrix(), expect);
    }

    #[test]
    fn fd_symbols_match_closed_form() {
        let scheme = FdScheme::default();
        for (n, seed) in [(1usize, 4u64), (2, 5), (3, 6)] {
            let at = crate::sample::sample_spd_bounded(n, seed, 50.0).unwrap();
            let fisher = FisherField::new(n).unwrap();
            let fd = christoffel_fd(&fisher, &at, &scheme).unwrap();
            let closed = christoffel_closed_data(&at).unwrap();
            let rel = fd.max_diff(&closed) / closed.max_abs().max(1.0);
            assert!(rel < 1e-5, "n={n} rel={rel:.3e}");
        }
    }

    #[test]
    fn fd_torsion_is_bit_symmetric() {
        let at = crate::sample::sample_spd_bounded(2, 8, 50.0).unwrap();
        let fd = christoffel_fd(&FisherField::new(2).unwrap(), &at, &FdScheme::default()).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    assert_eq!(fd.get(a, b, c).to_bits(), fd.get(b, a, c).to_bits());
                }
            }
        }
    }

    #[test]
    fn flat_metric_has_zero_symbols() {
        let d = vech_len(2);
        let flat = FnField::new(2, 2, move |_at: &SpdPoint| {
            let mut g = Components::zeros(d, 2);
            for a in 0..d {
                g.set(&[a, a], 1.0);
            }
            Ok(g)
        })
        .unwrap();
        let fd = christoffel_fd(&flat, &SpdPoint::identity(2).unwrap(), &FdScheme::default())
            .unwrap();
        assert!(fd.max_abs() < 1e-10);
    }

    #[test]
    fn degenerate_gram_is_an_error() {
        let d = vech_len(2);
        let zero = FnField::new(2, 2, move |_at: &SpdPoint| Ok(Components::zeros(d, 2))).unwrap();
        let err = christoffel_fd(&zero, &SpdPoint::identity(2).unwrap(), &FdScheme::default());
        assert!(matches!(err, Err(GeomError::DegenerateGram { .. })));
    }

    #[test]
    fn step_halving_recovers_near_the_boundary() {
        // Spectrum 1e-6: the scaled base step overshoots the cone and must
        // halve its way back in.
        let at = spd(2, vec![1e-6, 0.0, 1e-6]);
        let fd = christoffel_fd(&FisherField::new(2).unwrap(), &at, &FdScheme::default());
        assert!(fd.is_ok());
    }

    #[test]
    fn step_exhaustion_is_reported() {
        let at = spd(2, vec![1e-9, 0.0, 1e-9]);
        let fd = christoffel_fd(&FisherField::new(2).unwrap(), &at, &FdScheme::default());
        assert!(matches!(fd, Err(GeomError::StepExitsCone { .. })));
    }

    #[test]
    fn zero_field_has_zero_covariant_derivative() {
        let d = vech_len(2);
        let zero = FnField::new(2, 3, move |_at: &SpdPoint| Ok(Components::zeros(d, 3))).unwrap();
        let nabla = cov_deriv(
            &zero,
            &FisherField::new(2).unwrap(),
            &spd(2, vec![2.0, 0.3, 1.0]),
            &FdScheme::default(),
        )
        .unwrap();
        assert_eq!(nabla.max_abs(), 0.0);
    }

    #[test]
    fn fisher_metric_is_parallel_for_its_own_connection() {
        let fisher = FisherField::new(2).unwrap();
        for seed in [1u64, 2] {
            let at = crate::sample::sample_spd_bounded(2, seed, 30.0).unwrap();
            let v = parallel_check(&fisher, &fisher, &at, &FdScheme::default(), 1e-6).unwrap();
            assert!(v.pass, "violation {:.3e}", v.max_violation);
        }
    }

    #[test]
    fn position_dependent_fixture_fails_parallelism() {
        // C_000 = (Sigma_00)^2 and zero elsewhere is not parallel.
        let d = vech_len(2);
        let broken = FnField::new(2, 3, move |at: &SpdPoint| {
            let mut c = Components::zeros(d, 3);
            let s00 = at.sym().get(0, 0);
            c.set(&[0, 0, 0], s00 * s00);
            Ok(c)
        })
        .unwrap();
        let at = spd(2, vec![2.0, 0.4, 1.5]);
        let fisher = FisherField::new(2).unwrap();
        let v = parallel_check(&broken, &fisher, &at, &FdScheme::default(), 1e-5).unwrap();
        assert!(!v.pass);
    }

    #[test]
    fn canonical_deriv_of_fisher_vanishes() {
        let fisher = FisherField::new(2).unwrap();
        let v = crate::sample::sample_sym(2, 17).unwrap();
        let lie = canonical_deriv(&fisher, &v, &FdScheme::default()).unwrap();
        assert!(lie.max_abs() < 1e-6, "max {:.3e}", lie.max_abs());
    }

    #[test]
    fn flow_derivative_sign_and_rate() {
        let a = SymMat::identity(2).unwrap();
        let d1 = phi_eta_check(&a, 1e-4).unwrap();
        assert!(d1 < 1e-6, "discrepancy {d1:.3e}");
        let d2 = phi_eta_check(&a, 5e-5).unwrap();
        let ratio = d1 / d2;
        assert!((3.0..5.5).contains(&ratio), "ratio {ratio:.3}");

        let zero = SymMat::zeros(2).unwrap();
        assert_eq!(phi_eta_check(&zero, 1e-4).unwrap(), 0.0);

        assert!(phi_eta_check(&a, 0.0).is_err());
        assert!(phi_eta_check(&a, 0.1).is_err());
    }

    #[test]
    fn scheme_rejects_out_of_range_steps() {
        assert!(FdScheme::new(1e-5).is_ok());
        assert!(FdScheme::new(0.5).is_err());
        assert!(FdScheme::new(1e-9).is_err());
        assert!(FdScheme::new(f64::NAN).is_err());
    }
}
