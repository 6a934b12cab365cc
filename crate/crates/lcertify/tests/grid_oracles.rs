//! Grid-evaluation oracles: the contour-integral route for Fhat, brute-force
//! alias sums against the claimed tail radii, direct completed values at the
//! samples, and the parameter-selection behaviors.

mod common;

use common::emzeta;
use common::oracles::lambda_zeta_direct;
use lcertify::ball::{Ball, CBall};
use lcertify::descriptor::load_descriptor;
use lcertify::error::Error;
use lcertify::grid::{choose_grid, invert_to_lambda, FhatContext, GridSpec};
use lcertify::special::log_gamma;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn zeta_spec(t_max: f64, tol: f64) -> GridSpec {
    let d = load_descriptor(common::fixture("zeta.json")).unwrap();
    choose_grid(&d, t_max, tol).unwrap()
}

/// Lambda_L(s) for zeta on the vertical line Re(s) = 2 (oracle integrand).
fn lambda_on_line(v: f64) -> CBall {
    let s = CBall::exact(2.0, v);
    let z = emzeta::zeta(&s).unwrap();
    let n = 1.0 / std::f64::consts::PI.sqrt();
    let n_pow = s.mul_ball(&Ball::exact(n).ln().unwrap()).exp();
    let g = log_gamma(&s.mul_f64(0.5)).unwrap().exp();
    z.mul(&n_pow).mul(&g)
}

/// Contour quadrature oracle:
/// Fhat(x) = (1/2pi) int Lambda(2+iv) e^(w(-3/2-iv)) dv - e^(-w/2)
/// (for zeta the residue term collapses to e^(-w/2) since N Gamma(1/2) = 1).
fn fhat_contour_oracle(x: f64, eta: f64) -> (CBall, f64) {
    let w = CBall::exact(x, std::f64::consts::FRAC_PI_4 * eta);
    let integrand = |v: f64| -> CBall {
        let expo = w.mul(&CBall::exact(-1.5, -v));
        lambda_on_line(v).mul(&expo.exp())
    };
    let v_max = 80.0;
    let n_steps = 8000usize;
    let h = 2.0 * v_max / n_steps as f64;
    let mut acc = CBall::ZERO;
    for i in 0..=n_steps {
        let v = -v_max + i as f64 * h;
        let wgt = if i == 0 || i == n_steps {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc = acc.add(&integrand(v).mul_f64(wgt));
    }
    acc = acc.mul_f64(h / 3.0 / (2.0 * std::f64::consts::PI));
    let res = w.mul_f64(-0.5).exp();
    let value = acc.sub(&res);
    // crude error estimate: Simpson h^4 scale plus the |v| > v_max tail
    // |integrand| <= |Gamma(1 + iv/2)| zeta(2) N^2-ish e^(x*(-3/2)) e^(pi eta v/4)
    let tail = 2.0 * (-(v_max) * std::f64::consts::PI * (0.5 - eta.abs() / 2.0) / 2.0).exp();
    let err = 1e-8 + tail;
    (value, err)
}

#[test]
fn fhat_matches_contour_oracle_at_3_points() {
    let d = load_descriptor(common::fixture("zeta.json")).unwrap();
    let mut spec = zeta_spec(20.0, 1e-8);
    spec.eta = 0.5; // moderate taper keeps the contour oracle well-conditioned
    let ctx = FhatContext::new(&d, &spec).unwrap();
    for x in [0.0f64, 0.8, 2.0] {
        let ours = ctx.fhat_point(x).unwrap();
        let (oracle, oerr) = fhat_contour_oracle(x, spec.eta);
        let diff = (ours.mid - oracle.mid).norm();
        assert!(
            diff <= ours.rad + oracle.rad + oerr,
            "x={x}: {ours:?} vs {oracle:?} (+- {oerr:.2e})"
        );
    }
}

#[test]
fn residue_term_vanishes_for_entire_l() {
    let d = load_descriptor(common::fixture("chi3_odd.json")).unwrap();
    let spec = choose_grid(&d, 20.0, 1e-8).unwrap();
    let ctx = FhatContext::new(&d, &spec).unwrap();
    let r = ctx.residue_term(1.0, None).unwrap();
    assert!(r.mid.norm() == 0.0 && r.rad == 0.0);
    let rk = ctx.residue_term(1.0, Some(spec.a_param)).unwrap();
    assert!(rk.mid.norm() == 0.0 && rk.rad == 0.0);
}

/// Brute-force alias sums: three explicit images lie within the claimed
/// alias correction's radius, at 10 random frequencies.
#[test]
fn alias_tail_brute_force() {
    let d = load_descriptor(common::fixture("zeta.json")).unwrap();
    let spec = zeta_spec(25.0, 1e-7);
    let ctx = FhatContext::new(&d, &spec).unwrap();
    let two_pi_a = 2.0 * std::f64::consts::PI * spec.a_param;
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    for _ in 0..10 {
        let n: usize = rng.random_range(0..spec.q / 2);
        let x = 2.0 * std::f64::consts::PI * n as f64 / spec.b_param;
        // claimed: sum_(l>=1) Fhat(x + 2 pi l A) = -res_kernel(x1) +- tail(x1)
        let x1 = x + two_pi_a;
        let claimed = ctx
            .residue_term(x1, Some(spec.a_param))
            .unwrap()
            .neg();
        let tail = lcertify::gfunc::alias_tail_bound(&d, x1, spec.eta, spec.a_param)
            .unwrap()
            .hi();
        let mut brute = CBall::ZERO;
        for l in 1..=3usize {
            brute = brute.add(&ctx.fhat_point(x + l as f64 * two_pi_a).unwrap());
        }
        // remaining images l >= 4 are far smaller than the l=1..3 radii
        let diff = (brute.mid - claimed.mid).norm();
        assert!(
            diff <= brute.rad + claimed.rad + tail,
            "n={n}: brute {brute:?} vs claimed {claimed:?} + tail {tail:.3e}"
        );
    }
    // for A >= 4 the alias radius at n = 0 is below 1e-10
    if spec.a_param >= 4.0 {
        let tail = lcertify::gfunc::alias_tail_bound(&d, two_pi_a, spec.eta, spec.a_param)
            .unwrap()
            .hi();
        assert!(tail < 1e-10);
    }
}

/// Criterion-5 material: 25 grid points at T = 50 match the direct
/// Euler-Maclaurin/log-Gamma evaluation within combined radii, with radii
/// at or below 1e-6, single-threaded within the runtime budget.
#[test]
fn invert_matches_direct_at_t50() {
    let d = load_descriptor(common::fixture("zeta.json")).unwrap();
    let t0 = std::time::Instant::now();
    let spec = zeta_spec(50.0, 1e-8);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let grid = pool.install(|| invert_to_lambda(&d, &spec)).unwrap();
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "single-threaded run took {elapsed:?}");
    let step = grid.samples.len() / 25;
    let mut checked = 0;
    for s in grid.samples.iter().step_by(step.max(1)) {
        let direct = lambda_zeta_direct(s.t).unwrap();
        assert!(
            (s.lambda.mid - direct.mid.re).abs() <= s.lambda.rad + direct.rad,
            "t = {}",
            s.t
        );
        assert!(s.lambda.rad <= 1e-6, "radius {} at t = {}", s.lambda.rad, s.t);
        // reality
        assert!(s.im_residual.contains(0.0));
        // the stated radius dominates the ledger entries
        let ledger_sum = s.ledger.fhat_spread + s.ledger.fft_round + s.ledger.f_alias;
        assert!(s.lambda.rad >= ledger_sum * 0.5, "ledger accounting at t = {}", s.t);
        checked += 1;
        if checked >= 25 {
            break;
        }
    }
    assert!(checked >= 25);
}

/// Enclosures of opposite sign bracket the first three zeta zeros.
#[test]
fn sign_changes_bracket_known_zeros() {
    let d = load_descriptor(common::fixture("zeta.json")).unwrap();
    let spec = zeta_spec(30.0, 1e-7);
    let grid = invert_to_lambda(&d, &spec).unwrap();
    let scan = lcertify::turing::scan_sign_changes(&grid);
    let known = [14.134725141734693, 21.022039638771555, 25.010857580145688];
    for z in known {
        assert!(
            scan.brackets.iter().any(|(a, b)| *a < z && z < *b),
            "zero at {z} not bracketed; brackets: {:?}",
            scan.brackets
        );
    }
    assert_eq!(scan.found_upto(30.0), 3);
}

/// Functional-equation residual on the grid: Lambda(1/2 + it) computed from
/// the positive-frequency samples agrees with the mirrored negative side.
#[test]
fn grid_functional_equation_residual() {
    let d = load_descriptor(common::fixture("zeta.json")).unwrap();
    let spec = zeta_spec(12.0, 1e-8);
    let grid = invert_to_lambda(&d, &spec).unwrap();
    // the mirrored sample at q - m carries radius inflated by the taper; the
    // check is meaningful for small t
    for s in grid.samples.iter().take_while(|s| s.t <= 4.0) {
        let direct = lambda_zeta_direct(s.t).unwrap();
        assert!(
            (s.lambda.mid - direct.mid.re).abs() <= s.lambda.rad + direct.rad + direct.mid.im.abs()
        );
    }
}

/// Tightening the tolerance never loosens the achieved radii.
#[test]
fn tolerance_monotonicity() {
    let d = load_descriptor(common::fixture("zeta.json")).unwrap();
    let loose = invert_to_lambda(&d, &choose_grid(&d, 20.0, 1e-6).unwrap()).unwrap();
    let tight = invert_to_lambda(&d, &choose_grid(&d, 20.0, 1e-8).unwrap()).unwrap();
    let worst = |g: &lcertify::grid::EvaluatedGrid| {
        g.samples.iter().map(|s| s.lambda.rad).fold(0.0f64, f64::max)
    };
    assert!(worst(&tight) <= worst(&loose), "{} vs {}", worst(&tight), worst(&loose));
}

#[test]
fn choose_grid_behaviors() {
    let d = load_descriptor(common::fixture("zeta.json")).unwrap();
    let s1 = choose_grid(&d, 50.0, 1e-8).unwrap();
    let s2 = choose_grid(&d, 100.0, 1e-8).unwrap();
    // A grows with the zero density as T doubles, and the log records it
    assert!(s2.a_param > s1.a_param * 1.01);
    assert!(!s2.rationale.is_empty());
    // absurd tolerance
    match choose_grid(&d, 50.0, 1e-300) {
        Err(Error::BudgetExceeded(_)) => {}
        other => panic!("expected BudgetExceeded, got {other:?}"),
    }
}
