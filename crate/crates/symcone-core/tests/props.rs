//! Property tests for the algebraic identities that must hold on random
//! inputs: chart round trips, symmetry of the cubic family, linearity,
//! polarization, and serialization faithfulness.

use proptest::collection::vec;
use proptest::prelude::*;
use symcone_core::sample::sample_spd_bounded;
use symcone_core::{
    cubic_form, invariant_cubic_eval, polarize, raw_components, vech_len, InvariantCubic,
    RawCubicTensor, SymMat,
};

fn coeff() -> impl Strategy<Value = f64> {
    -2.0..2.0f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vech_chart_round_trips_exactly(n in 1usize..=4, raw in vec(-5.0..5.0f64, 10)) {
        let v = raw[..vech_len(n)].to_vec();
        let s = SymMat::from_vech(n, v.clone()).unwrap();
        let back = SymMat::from_matrix(&s.to_matrix()).unwrap();
        prop_assert_eq!(back.vech(), &v[..]);
    }

    #[test]
    fn family_eval_is_symmetric_in_its_slots(
        n in 1usize..=3,
        seed in 0u64..1 << 20,
        (a, b, c) in (coeff(), coeff(), coeff()),
    ) {
        let p = sample_spd_bounded(n, seed, 50.0).unwrap();
        let t = InvariantCubic::new(a, b, c).unwrap();
        let dirs = [0, 1, 2].map(|k| {
            symcone_core::sample::sample_sym(n, seed.wrapping_add(1000 + k)).unwrap()
        });
        let [x, y, z] = &dirs;
        let base = invariant_cubic_eval(&p, &t, x, y, z).unwrap();
        let perms = [
            invariant_cubic_eval(&p, &t, x, z, y).unwrap(),
            invariant_cubic_eval(&p, &t, y, x, z).unwrap(),
            invariant_cubic_eval(&p, &t, y, z, x).unwrap(),
            invariant_cubic_eval(&p, &t, z, x, y).unwrap(),
            invariant_cubic_eval(&p, &t, z, y, x).unwrap(),
        ];
        let scale = base.abs().max(1.0);
        for v in perms {
            prop_assert!((v - base).abs() / scale < 1e-12);
        }
    }

    #[test]
    fn family_eval_is_trilinear(
        seed in 0u64..1 << 20,
        s in -2.0..2.0f64,
        (a, b, c) in (coeff(), coeff(), coeff()),
    ) {
        let n = 2;
        let p = sample_spd_bounded(n, seed, 50.0).unwrap();
        let t = InvariantCubic::new(a, b, c).unwrap();
        let draw = |k: u64| symcone_core::sample::sample_sym(n, seed.wrapping_add(2000 + k)).unwrap();
        let (x1, x2, y, z) = (draw(0), draw(1), draw(2), draw(3));
        let lhs = invariant_cubic_eval(&p, &t, &x1.add(&x2.scaled(s)).unwrap(), &y, &z).unwrap();
        let v1 = invariant_cubic_eval(&p, &t, &x1, &y, &z).unwrap();
        let v2 = invariant_cubic_eval(&p, &t, &x2, &y, &z).unwrap();
        let rhs = v1 + s * v2;
        let scale = v1.abs().max(v2.abs()).max(1.0);
        prop_assert!((lhs - rhs).abs() / scale < 1e-10);
    }

    #[test]
    fn raw_components_are_bit_symmetric(
        n in 1usize..=3,
        (a, b, c) in (coeff(), coeff(), coeff()),
    ) {
        let raw = raw_components(n, &InvariantCubic::new(a, b, c).unwrap()).unwrap();
        prop_assert_eq!(raw.max_asymmetry(), 0.0);
    }

    #[test]
    fn polarization_inverts_the_cubic_form(
        n in 1usize..=3,
        (a, b, c) in (coeff(), coeff(), coeff()),
    ) {
        let t = RawCubicTensor::from_coeffs(n, &InvariantCubic::new(a, b, c).unwrap()).unwrap();
        let back = polarize(|x| cubic_form(&t, x).unwrap(), n).unwrap();
        let rel = back.comps().max_diff(t.comps()) / t.comps().max_abs().max(1.0);
        prop_assert!(rel < 1e-12);
    }

    #[test]
    fn raw_tensor_serialization_is_faithful(
        n in 1usize..=3,
        (a, b, c) in (coeff(), coeff(), coeff()),
    ) {
        let t = RawCubicTensor::from_coeffs(n, &InvariantCubic::new(a, b, c).unwrap()).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        let back: RawCubicTensor = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.comps().max_diff(t.comps()), 0.0);
    }
}
