use serde_json::{json, Value};
use symcone_core::{
    ac_alpha_at, canonical_deriv, conjugate_symmetry_check, cov_deriv, diag_restrict, dimension,
    field_scale, fisher_at, gram_eigen_bounds, invariant_cubic_eval_weighted, mc_moment,
    on_invariance_check, parallel_check, phi_eta_check, phi_inverse, sample_general_linear_bounded,
    sample_spd_bounded, sample_sym, subseed, sym_basis, to_power_sums, vech_index, vech_len, Alpha,
    FisherField, InvariantCubicField, McConfig, McEstimate, RawCubicTensor, Result, SpdPoint,
    SymCubicPoly, SymMat,
};

use crate::config::{RunConfig, RunOpts};
use crate::report::{timed, CheckRecord, Report};

// Stream labels for the per-check seed derivations. Each sampling site gets
// its own label so adding or reordering checks never shifts another check's
// draws.
const L_BASIS: u64 = 0x10;
const L_PD_POINT: u64 = 0x11;
const L_INV_P: u64 = 0x12;
const L_INV_H: u64 = 0x13;
const L_INV_X: u64 = 0x14;
const L_INV_Y: u64 = 0x15;
const L_INV_Z: u64 = 0x16;
const L_RAW_ALPHA: u64 = 0x17;
const L_RAW_ABC: u64 = 0x18;
const L_FD_POINT: u64 = 0x19;
const L_COMPAT_POINT: u64 = 0x1A;
const L_CANON_DIR: u64 = 0x1B;
const L_FLOW_DIR: u64 = 0x1C;
const L_MC_POINT: u64 = 0x1D;
const L_MC_X: u64 = 0x1E;
const L_MC_Y: u64 = 0x1F;
const L_MC_Z: u64 = 0x20;
const L_MC_SEED: u64 = 0x21;
const L_DECOMP: u64 = 0x22;

// Condition-number caps for the random draws. Finite-difference checks need
// well-scaled points (the step tracks entry size while inverse-metric
// factors track the smallest eigenvalue), so they draw much tighter than
// the purely algebraic invariance sweeps.
const COND_INVARIANCE_POINT: f64 = 100.0;
const COND_INVARIANCE_GROUP: f64 = 30.0;
const COND_FD: f64 = 20.0;
const COND_COMPAT: f64 = 10.0;
const COND_MC: f64 = 20.0;

/// Fixed flow parameter for the identity-flow derivative probe.
const FLOW_T: f64 = 1e-4;

fn rel(v: f64, w: f64) -> f64 {
    (v - w).abs() / v.abs().max(w.abs()).max(1.0)
}

fn push(
    report: &mut Report,
    timings: bool,
    name: &str,
    inputs: Value,
    tol: f64,
    f: impl FnOnce() -> Result<f64>,
) -> Result<()> {
    let (violation, wall) = timed(timings, f);
    report.push(CheckRecord::new(name, &inputs, violation?, tol).with_wall_ms(wall));
    Ok(())
}

/// The full verification suite, one record per named check, in a fixed
/// order. Every random draw is derived from the config seed, so reports are
/// byte-identical across runs with equal config.
pub fn run_verify(cfg: &RunConfig, opts: &RunOpts) -> Result<Report> {
    let n = cfg.n;
    let seed = cfg.seed;
    let scheme = cfg.scheme();
    let weighting = opts.weighting;
    let timings = opts.timings;
    let fisher = FisherField::new(n)?;
    let alpha_field = InvariantCubicField::with_weighting(n, cfg.alpha_slice(), weighting)?;
    let family_field = InvariantCubicField::with_weighting(n, cfg.coeffs(), weighting)?;
    let mut report = Report::new("verify", cfg);

    push(
        &mut report,
        timings,
        "basis-roundtrip",
        json!({"check": "basis-roundtrip", "n": n, "seed": seed}),
        cfg.tol_exact,
        || {
            let basis = sym_basis(n)?;
            let mut worst = 0.0f64;
            let x = sample_sym(n, subseed(seed, L_BASIS, 0))?;
            let back = SymMat::from_matrix(&x.to_matrix())?;
            for (a, b) in x.vech().iter().zip(back.vech()) {
                worst = worst.max((a - b).abs());
            }
            for a in 0..basis.len() {
                let (i, j) = basis.pair(a);
                if vech_index(n, i, j) != a {
                    worst = worst.max(1.0);
                }
                for (e, v) in basis.elem(a).vech().iter().enumerate() {
                    let want = if e == a { 1.0 } else { 0.0 };
                    worst = worst.max((v - want).abs());
                }
            }
            Ok(worst)
        },
    )?;

    push(
        &mut report,
        timings,
        "metric-positive-definite",
        json!({"check": "metric-positive-definite", "n": n, "seed": seed, "points": cfg.fd_points()}),
        cfg.tol_exact,
        || {
            let mut worst = 0.0f64;
            for k in 0..=cfg.fd_points() as u64 {
                let p = if k == 0 {
                    SpdPoint::identity(n)?
                } else {
                    sample_spd_bounded(n, subseed(seed, L_PD_POINT, k), COND_INVARIANCE_POINT)?
                };
                let (lo, hi) = gram_eigen_bounds(&fisher, &p)?;
                worst = worst.max((-lo / hi).max(0.0));
            }
            Ok(worst)
        },
    )?;

    push(
        &mut report,
        timings,
        "invariance-fisher",
        json!({"check": "invariance-fisher", "n": n, "seed": seed, "trials": cfg.trials}),
        cfg.tol_exact,
        || {
            let mut worst = 0.0f64;
            for t in 0..cfg.trials as u64 {
                let p = sample_spd_bounded(n, subseed(seed, L_INV_P, t), COND_INVARIANCE_POINT)?;
                let h =
                    sample_general_linear_bounded(n, subseed(seed, L_INV_H, t), COND_INVARIANCE_GROUP)?;
                let x = sample_sym(n, subseed(seed, L_INV_X, t))?;
                let y = sample_sym(n, subseed(seed, L_INV_Y, t))?;
                let v = fisher_at(&p, &x, &y)?;
                let vh = fisher_at(&h.act(&p)?, &h.pushforward(&x)?, &h.pushforward(&y)?)?;
                worst = worst.max(rel(v, vh));
            }
            Ok(worst)
        },
    )?;

    push(
        &mut report,
        timings,
        "invariance-alpha-tensor",
        json!({"check": "invariance-alpha-tensor", "n": n, "seed": seed, "trials": cfg.trials, "alpha": cfg.alpha}),
        cfg.tol_exact,
        || {
            let alpha = cfg.alpha();
            let mut worst = 0.0f64;
            for t in 0..cfg.trials as u64 {
                let p = sample_spd_bounded(n, subseed(seed, L_INV_P, t), COND_INVARIANCE_POINT)?;
                let h =
                    sample_general_linear_bounded(n, subseed(seed, L_INV_H, t), COND_INVARIANCE_GROUP)?;
                let x = sample_sym(n, subseed(seed, L_INV_X, t))?;
                let y = sample_sym(n, subseed(seed, L_INV_Y, t))?;
                let z = sample_sym(n, subseed(seed, L_INV_Z, t))?;
                let v = ac_alpha_at(alpha, &p, &x, &y, &z)?;
                let vh = ac_alpha_at(
                    alpha,
                    &h.act(&p)?,
                    &h.pushforward(&x)?,
                    &h.pushforward(&y)?,
                    &h.pushforward(&z)?,
                )?;
                worst = worst.max(rel(v, vh));
            }
            Ok(worst)
        },
    )?;

    push(
        &mut report,
        timings,
        "invariance-cubic-family",
        json!({"check": "invariance-cubic-family", "n": n, "seed": seed, "trials": cfg.trials, "abc": cfg.abc}),
        cfg.tol_exact,
        || {
            let coeffs = cfg.coeffs();
            let mut worst = 0.0f64;
            for t in 0..cfg.trials as u64 {
                let p = sample_spd_bounded(n, subseed(seed, L_INV_P, t), COND_INVARIANCE_POINT)?;
                let h =
                    sample_general_linear_bounded(n, subseed(seed, L_INV_H, t), COND_INVARIANCE_GROUP)?;
                let x = sample_sym(n, subseed(seed, L_INV_X, t))?;
                let y = sample_sym(n, subseed(seed, L_INV_Y, t))?;
                let z = sample_sym(n, subseed(seed, L_INV_Z, t))?;
                let v = invariant_cubic_eval_weighted(&p, &coeffs, &x, &y, &z, weighting)?;
                let vh = invariant_cubic_eval_weighted(
                    &h.act(&p)?,
                    &coeffs,
                    &h.pushforward(&x)?,
                    &h.pushforward(&y)?,
                    &h.pushforward(&z)?,
                    weighting,
                )?;
                worst = worst.max(rel(v, vh));
            }
            Ok(worst)
        },
    )?;

    push(
        &mut report,
        timings,
        "invariance-raw-alpha",
        json!({"check": "invariance-raw-alpha", "n": n, "seed": seed, "trials": cfg.trials, "alpha": cfg.alpha}),
        cfg.tol_exact,
        || {
            let raw = RawCubicTensor::from_coeffs_weighted(n, &cfg.alpha_slice(), weighting)?;
            Ok(on_invariance_check(&raw, cfg.trials, subseed(seed, L_RAW_ALPHA, 0))?.max_violation)
        },
    )?;

    push(
        &mut report,
        timings,
        "invariance-raw-abc",
        json!({"check": "invariance-raw-abc", "n": n, "seed": seed, "trials": cfg.trials, "abc": cfg.abc}),
        cfg.tol_exact,
        || {
            let raw = RawCubicTensor::from_coeffs_weighted(n, &cfg.coeffs(), weighting)?;
            Ok(on_invariance_check(&raw, cfg.trials, subseed(seed, L_RAW_ABC, 0))?.max_violation)
        },
    )?;

    // Shared probe points for the derivative checks: the identity plus a
    // few well-conditioned random points.
    let mut fd_points = vec![SpdPoint::identity(n)?];
    for k in 0..cfg.fd_points() as u64 {
        fd_points.push(sample_spd_bounded(n, subseed(seed, L_FD_POINT, k), COND_FD)?);
    }

    push(
        &mut report,
        timings,
        "conjugate-symmetry-alpha",
        json!({"check": "conjugate-symmetry-alpha", "n": n, "seed": seed, "points": fd_points.len(), "alpha": cfg.alpha, "fd_step": cfg.fd_step}),
        cfg.tol_geom,
        || {
            let mut worst = 0.0f64;
            for p in &fd_points {
                let v = conjugate_symmetry_check(&alpha_field, &fisher, p, &scheme, cfg.tol_geom)?;
                worst = worst.max(v.max_violation);
            }
            Ok(worst)
        },
    )?;

    push(
        &mut report,
        timings,
        "conjugate-symmetry-abc",
        json!({"check": "conjugate-symmetry-abc", "n": n, "seed": seed, "points": fd_points.len(), "abc": cfg.abc, "fd_step": cfg.fd_step}),
        cfg.tol_geom,
        || {
            let mut worst = 0.0f64;
            for p in &fd_points {
                let v = conjugate_symmetry_check(&family_field, &fisher, p, &scheme, cfg.tol_geom)?;
                worst = worst.max(v.max_violation);
            }
            Ok(worst)
        },
    )?;

    push(
        &mut report,
        timings,
        "parallelism-alpha",
        json!({"check": "parallelism-alpha", "n": n, "seed": seed, "points": fd_points.len(), "alpha": cfg.alpha, "fd_step": cfg.fd_step}),
        cfg.tol_geom,
        || {
            let mut worst = 0.0f64;
            for p in &fd_points {
                let v = parallel_check(&alpha_field, &fisher, p, &scheme, cfg.tol_geom)?;
                worst = worst.max(v.max_violation);
            }
            Ok(worst)
        },
    )?;

    push(
        &mut report,
        timings,
        "parallelism-abc",
        json!({"check": "parallelism-abc", "n": n, "seed": seed, "points": fd_points.len(), "abc": cfg.abc, "fd_step": cfg.fd_step}),
        cfg.tol_geom,
        || {
            let mut worst = 0.0f64;
            for p in &fd_points {
                let v = parallel_check(&family_field, &fisher, p, &scheme, cfg.tol_geom)?;
                worst = worst.max(v.max_violation);
            }
            Ok(worst)
        },
    )?;

    push(
        &mut report,
        timings,
        "metric-compatibility",
        json!({"check": "metric-compatibility", "n": n, "seed": seed, "points": cfg.fd_points() + 1, "fd_step": cfg.fd_step}),
        cfg.tol_geom,
        || {
            let mut worst = 0.0f64;
            for k in 0..=cfg.fd_points() as u64 {
                let p = if k == 0 {
                    SpdPoint::identity(n)?
                } else {
                    sample_spd_bounded(n, subseed(seed, L_COMPAT_POINT, k), COND_COMPAT)?
                };
                let v = parallel_check(&fisher, &fisher, &p, &scheme, cfg.tol_geom)?;
                worst = worst.max(v.max_violation);
            }
            Ok(worst)
        },
    )?;

    push(
        &mut report,
        timings,
        "canonical-vs-levi-civita",
        json!({"check": "canonical-vs-levi-civita", "n": n, "seed": seed, "directions": cfg.fd_points(), "abc": cfg.abc, "fd_step": cfg.fd_step}),
        cfg.tol_geom,
        || {
            let id = SpdPoint::identity(n)?;
            let d = vech_len(n);
            let entries = d * d * d;
            let nabla = cov_deriv(&family_field, &fisher, &id, &scheme)?;
            let scale = field_scale(&family_field, &id)?;
            let mut worst = 0.0f64;
            for k in 0..cfg.fd_points() as u64 {
                let v = sample_sym(n, subseed(seed, L_CANON_DIR, k))?;
                let can = canonical_deriv(&family_field, &v, &scheme)?;
                for flat in 0..entries {
                    let mut lc = 0.0;
                    for w in 0..d {
                        lc += v.vech()[w] * nabla.data()[w * entries + flat];
                    }
                    let c = can.data()[flat];
                    worst = worst.max((c - lc).abs().max(c.abs()));
                }
            }
            Ok(worst / scale)
        },
    )?;

    push(
        &mut report,
        timings,
        "identity-flow-derivative",
        json!({"check": "identity-flow-derivative", "n": n, "seed": seed, "directions": cfg.fd_points(), "t": FLOW_T}),
        cfg.tol_geom,
        || {
            let mut worst = 0.0f64;
            for k in 0..cfg.fd_points() as u64 {
                let a = sample_sym(n, subseed(seed, L_FLOW_DIR, k))?;
                worst = worst.max(phi_eta_check(&a, FLOW_T)?);
            }
            Ok(worst)
        },
    )?;

    // Monte Carlo cross-checks, normalized so that tol = 1 means the
    // five-standard-error band.
    for k in [2usize, 3] {
        let name = if k == 2 { "mc-pair" } else { "mc-triple" };
        push(
            &mut report,
            timings,
            name,
            json!({"check": name, "n": n, "seed": seed, "samples": cfg.samples}),
            1.0,
            || {
                let mut worst = 0.0f64;
                for i in 0..2 {
                    let case = mc_case(cfg, k, i)?;
                    worst = worst
                        .max((case.estimate.mean - case.closed).abs() / (5.0 * case.estimate.std_error));
                }
                Ok(worst)
            },
        )?;
    }

    Ok(report)
}

pub struct McCase {
    pub label: &'static str,
    pub estimate: McEstimate,
    pub closed: f64,
}

/// One Monte Carlo comparison: k = 2 estimates the metric, k = 3 the cubic
/// score moment (which matches the tensor at coefficient one). Case 0 sits
/// at the identity, case 1 at a seeded random point.
fn mc_case(cfg: &RunConfig, k: usize, case: u64) -> Result<McCase> {
    let n = cfg.n;
    let seed = cfg.seed;
    let (label, p) = if case == 0 {
        ("identity", SpdPoint::identity(n)?)
    } else {
        ("random", sample_spd_bounded(n, subseed(seed, L_MC_POINT, case), COND_MC)?)
    };
    let x = sample_sym(n, subseed(seed, L_MC_X, case))?;
    let y = sample_sym(n, subseed(seed, L_MC_Y, case))?;
    let mc = McConfig {
        samples: cfg.samples,
        seed: subseed(seed, L_MC_SEED, k as u64 * 2 + case),
        chunk: 1 << 16,
    };
    let (estimate, closed) = if k == 2 {
        (mc_moment(&p, &[&x, &y], &mc)?, fisher_at(&p, &x, &y)?)
    } else {
        let z = sample_sym(n, subseed(seed, L_MC_Z, case))?;
        (
            mc_moment(&p, &[&x, &y, &z], &mc)?,
            ac_alpha_at(Alpha::new(1.0)?, &p, &x, &y, &z)?,
        )
    };
    Ok(McCase { label, estimate, closed })
}

/// Monte Carlo suite with one record per (moment, point) case; violations
/// are raw deviations and the tolerance is the five-standard-error band.
pub fn run_mc_check(cfg: &RunConfig, opts: &RunOpts) -> Result<Report> {
    let mut report = Report::new("mc-check", cfg);
    let mut cases = Vec::new();
    for k in [2usize, 3] {
        let kind = if k == 2 { "pair" } else { "triple" };
        for i in 0..2u64 {
            let (case, wall) = timed(opts.timings, || mc_case(cfg, k, i));
            let case = case?;
            let name = format!("mc-{kind}-{}", case.label);
            let bound = 5.0 * case.estimate.std_error;
            let inputs =
                json!({"check": name, "n": cfg.n, "seed": cfg.seed, "samples": cfg.samples});
            report.push(
                CheckRecord::new(&name, &inputs, (case.estimate.mean - case.closed).abs(), bound)
                    .with_wall_ms(wall),
            );
            cases.push(json!({
                "name": name,
                "estimate": case.estimate,
                "closed_form": case.closed,
                "bound": bound,
            }));
        }
    }
    report.result = Some(json!({"cases": cases}));
    Ok(report)
}

/// Decompose a frozen cubic tensor into power-sum polynomial coordinates.
/// The rotation-invariance gate runs first; a tensor that fails it gets a
/// failing report and no polynomial. On the invariant path the polynomial
/// is certified by rebuilding the tensor from the recovered coefficients.
pub fn run_decompose(
    cfg: &RunConfig,
    opts: &RunOpts,
    raw: &RawCubicTensor,
) -> Result<(Report, Option<SymCubicPoly>)> {
    let mut report = Report::new("decompose", cfg);
    let n = raw.n();

    let inputs = json!({"check": "on-invariance", "n": n, "seed": cfg.seed, "trials": cfg.trials, "raw": raw});
    let (verdict, wall) = timed(opts.timings, || {
        on_invariance_check(raw, cfg.trials, subseed(cfg.seed, L_DECOMP, 0))
    });
    let record = CheckRecord::new("on-invariance", &inputs, verdict?.max_violation, cfg.tol_exact)
        .with_wall_ms(wall);
    let invariant = record.pass;
    report.push(record);
    if !invariant {
        report.result = Some(json!({"poly": Value::Null, "reconstruction_deviation": Value::Null}));
        return Ok((report, None));
    }

    let (outcome, wall) = timed(opts.timings, || -> Result<(SymCubicPoly, [f64; 3], f64)> {
        let poly = to_power_sums(&diag_restrict(raw)?)?;
        let coeffs = phi_inverse(&poly)?;
        let rebuilt = RawCubicTensor::from_coeffs(n, &coeffs)?;
        let deviation =
            rebuilt.comps().max_diff(raw.comps()) / raw.comps().max_abs().max(1.0);
        Ok((poly, [coeffs.a(), coeffs.b(), coeffs.c()], deviation))
    });
    let (poly, abc, deviation) = outcome?;
    report.push(
        CheckRecord::new(
            "reconstruction",
            &json!({"check": "reconstruction", "n": n, "raw": raw}),
            deviation,
            cfg.tol_exact,
        )
        .with_wall_ms(wall),
    );
    report.result = Some(json!({
        "poly": poly,
        "coefficients": {"a": abc[0], "b": abc[1], "c": abc[2]},
        "reconstruction_deviation": deviation,
    }));
    let emit = report.overall_pass;
    Ok((report, emit.then_some(poly)))
}

/// Dimension of the invariant cubic space for each order up to `max_n`.
pub fn run_dims(cfg: &RunConfig, max_n: usize) -> Result<Report> {
    let mut report = Report::new("dims", cfg);
    let mut rows = Vec::new();
    for n in 1..=max_n {
        rows.push(json!({"n": n, "dimension": dimension(n)?}));
    }
    report.result = Some(json!({"rows": rows}));
    Ok(report)
}
