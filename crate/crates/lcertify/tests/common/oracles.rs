//! Independent oracles used across the integration suites. Each one computes
//! its target by a route disjoint from the production path it checks.

#![allow(dead_code)]

use super::dd::{Dd, Cdd};
use super::emzeta;
use lcertify::ball::{Ball, CBall};
use lcertify::error::Result;
use lcertify::special::{bernoulli_2k_ratio, log_gamma};
use num_complex::Complex64;

// ---------------------------------------------------------------------------
// Closed-form G kernel for single-factor data
// ---------------------------------------------------------------------------

/// G(u; eta) for one factor Gamma(lambda s + mu):
/// (1/lambda) e^(w (1/2 + mu/lambda)) exp(-e^(w/lambda)), w = u + i pi eta / 4.
/// Obtained by summing the residues 2(-1)^k/k!-style in closed form.
pub fn g_closed_form_single(lambda: f64, mu: Complex64, u: f64, eta: f64) -> CBall {
    let w = CBall::exact(u, std::f64::consts::FRAC_PI_4 * eta);
    let muc = CBall::exact(mu.re, mu.im);
    let lam_inv = 1.0 / lambda;
    let expo = w.mul(&muc.mul_f64(lam_inv).add(&CBall::exact(0.5, 0.0)));
    let inner = w.mul_f64(lam_inv).exp();
    expo.exp().mul(&inner.neg().exp()).mul_f64(lam_inv)
}

/// Riemann-zeta case: 2 e^(w/2) exp(-e^(2w)).
pub fn g_closed_form_zeta(u: f64, eta: f64) -> CBall {
    g_closed_form_single(0.5, Complex64::new(0.0, 0.0), u, eta)
}

// ---------------------------------------------------------------------------
// Direct completed L-values via Euler-Maclaurin + log Gamma
// ---------------------------------------------------------------------------

/// Lambda_zeta(1/2 + i t) = pi^(-(1/2+it)/2) Gamma((1/2+it)/2) zeta(1/2+it),
/// real-valued; returned with its imaginary part as a consistency output.
pub fn lambda_zeta_direct(t: f64) -> Result<CBall> {
    let s = CBall::exact(0.5, t);
    let z = emzeta::zeta(&s)?;
    let half_s = s.mul_f64(0.5);
    let gamma = log_gamma(&half_s)?.exp();
    let pi_pow = half_s.mul_ball(&Ball::pi().ln()?).neg().exp();
    Ok(z.mul(&gamma).mul(&pi_pow))
}

/// Completed value for the odd character mod 3 in the Selberg shape
/// N = sqrt(3/pi), factor Gamma(s/2 + 1/2), omega = 1 (z = 1):
/// Lambda(1/2+it) = L(1/2+it, chi3) N^(1/2+it) Gamma(s/2 + 1/2).
pub fn lambda_chi3_direct(t: f64) -> Result<CBall> {
    let s = CBall::exact(0.5, t);
    let l = emzeta::dirichlet_l_mod3(&s)?;
    let n = Ball::exact(3.0).div(&Ball::pi())?.sqrt()?;
    let n_pow = s.mul_ball(&n.ln()?).exp();
    let gamma = log_gamma(&s.mul_f64(0.5).add(&CBall::exact(0.5, 0.0)))?.exp();
    Ok(l.mul(&n_pow).mul(&gamma))
}

// ---------------------------------------------------------------------------
// Riemann-Siegel theta asymptotics (independent Phi oracle for zeta)
// ---------------------------------------------------------------------------

/// theta(t)/pi with theta(t) = t/2 ln(t/2pi) - t/2 - pi/8 + 1/(48t)
/// + 7/(5760 t^3) +- 2*31/(80640 t^5); valid for t >= 10.
pub fn phi_zeta_via_theta(t: f64) -> Ball {
    assert!(t >= 10.0);
    let tb = Ball::exact(t);
    let main = tb
        .mul_f64(0.5)
        .mul(&tb.div(&Ball::pi().mul_f64(2.0)).unwrap().ln().unwrap())
        .sub(&tb.mul_f64(0.5))
        .sub(&Ball::pi().mul_f64(0.125));
    let corr = Ball::exact(1.0 / (48.0 * t)).add(&Ball::exact(7.0 / (5760.0 * t.powi(3))));
    let err = 2.0 * 31.0 / (80640.0 * t.powi(5));
    main.add(&corr).inflate(err).div(&Ball::pi()).unwrap()
}

// ---------------------------------------------------------------------------
// S(t) by argument tracking along the horizontal ray
// ---------------------------------------------------------------------------

/// S(t) = (1/pi) * continuous arg of zeta(sigma + i t) from sigma = +inf
/// down to 1/2, tracked in small sigma steps. Returns a ball whose radius
/// includes the evaluation radii; panics if a step turns by more than pi/2
/// (step too coarse) or passes near a zero.
pub fn s_zeta_by_arg_tracking(t: f64) -> Result<Ball> {
    let sigma_hi = 8.0;
    // at sigma = 8 the Dirichlet series gives |arg zeta| <= sum_{n>=2} n^-8 < 0.005
    let mut arg_total = Ball::from_endpoints(-0.005, 0.005);
    let mut prev = emzeta::zeta(&CBall::exact(sigma_hi, t))?;
    let steps = 2400usize;
    let h = (sigma_hi - 0.5) / steps as f64;
    for i in 1..=steps {
        let sigma = sigma_hi - h * i as f64;
        let cur = emzeta::zeta(&CBall::exact(sigma, t))?;
        // turn = arg(cur/prev), guaranteed principal if |turn| < pi
        let ratio = cur.div(&prev)?;
        let turn = ratio.arg()?;
        assert!(
            turn.mag() < 1.2,
            "arg tracking step too coarse at sigma = {sigma}: turn {turn:?}"
        );
        arg_total = arg_total.add(&turn);
        prev = cur;
    }
    arg_total.div(&Ball::pi())
}

// ---------------------------------------------------------------------------
// Doubled-precision real zeta and the c_0 constant oracle
// ---------------------------------------------------------------------------

/// Real zeta via Euler-Maclaurin in double-double, N = 32, K = 14.
/// Truncation error is far below the dd rounding level for sigma > 1.05.
pub fn zeta_dd(sigma: f64) -> Dd {
    assert!(sigma > 1.05);
    let n_cut = 32u64;
    let s = Dd::from_f64(sigma);
    let mut acc = Dd::ZERO;
    for n in 1..n_cut {
        acc = acc.add(s.mul(Dd::ln_u64(n)).neg().exp());
    }
    let nf = Dd::from_i64(n_cut as i64);
    let ln_n = nf.ln();
    // N^(1-s)/(s-1) + N^(-s)/2
    let pw1 = Dd::ONE.sub(s).mul(ln_n).exp();
    acc = acc.add(pw1.div(s.sub(Dd::ONE)));
    let pw0 = s.mul(ln_n).neg().exp();
    acc = acc.add(pw0.mul_f64(0.5));
    let mut poch = Dd::ONE;
    let mut fact = Dd::ONE;
    let mut j = 0u64;
    let mut shift = pw1;
    let inv_n2 = nf.sqr().recip();
    for k in 1..=14usize {
        fact = fact.mul_f64(((2 * k - 1) * (2 * k)) as f64);
        while j < (2 * k - 1) as u64 {
            poch = poch.mul(s.add_f64(j as f64));
            j += 1;
        }
        shift = shift.mul(inv_n2);
        let (p, q) = bernoulli_2k_ratio(k);
        let term = poch.mul(shift).mul(Dd::ratio(p, q)).div(fact);
        acc = acc.add(term);
    }
    acc
}

/// zeta'/zeta in dd by central differences of ln zeta_dd (h = 1e-7;
/// the h^2 term is ~1e-15 * f''' which stays below 1e-13 here, and dd
/// rounding contributes ~1e-25).
pub fn zeta_logderiv_dd(sigma: f64) -> Dd {
    let h = 1e-7;
    let s_up = sigma + h;
    let s_dn = sigma - h;
    let up = zeta_dd(s_up).ln();
    let dn = zeta_dd(s_dn).ln();
    // divide by the actually representable step, not the nominal 2h
    let step = Dd::from_f64(s_up).sub(Dd::from_f64(s_dn));
    up.sub(dn).div(step)
}

/// log Z_theta(sigma) in dd.
fn log_big_z_dd(theta: f64, sigma: f64) -> Dd {
    zeta_dd(sigma + theta).ln().add(zeta_dd(sigma - theta).ln()).mul_f64(0.5)
}

/// log z_theta(sigma) in dd.
fn log_small_z_dd(theta: f64, sigma: f64) -> Dd {
    let a = zeta_dd(2.0 * sigma + 2.0 * theta).ln();
    let b = zeta_dd(2.0 * sigma - 2.0 * theta).ln();
    a.add(b).mul_f64(0.5).sub(log_big_z_dd(theta, sigma))
}

/// 12-point Gauss-Legendre nodes/weights (f64 placement is adequate for the
/// oracle: node rounding shifts the rule by ~1e-16 per panel).
const GL12_ORACLE: [(f64, f64); 6] = [
    (0.125233408511468915472441369464, 0.249147045813402785000562436043),
    (0.367831498998180193752691536644, 0.233492536538354808760849898925),
    (0.587317954286617447296702418941, 0.20316742672306592174906445581),
    (0.769902674194304687036893833213, 0.160078328543346226334652529543),
    (0.904117256370474856678465866119, 0.106939325995318430960254718194),
    (0.981560634246719250690549090149, 0.047175336386511827194615961485),
];

fn gl_integrate_dd(f: &dyn Fn(f64) -> Dd, a: f64, b: f64, panel: f64) -> Dd {
    let n = ((b - a) / panel).ceil().max(1.0) as usize;
    let h = (b - a) / n as f64;
    let mut acc = Dd::ZERO;
    for i in 0..n {
        let lo = a + i as f64 * h;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        for (x, w) in GL12_ORACLE {
            acc = acc.add(f(mid + half * x).mul_f64(w * half));
            acc = acc.add(f(mid - half * x).mul_f64(w * half));
        }
    }
    acc
}

/// Doubled-precision oracle for c_theta(eps) (the zeta-majorant variant),
/// returning (value, uncertainty). The uncertainty covers the quadrature
/// error bound, the geometric tails and the dd rounding, all generously.
pub fn c_theta_dd_oracle(theta: f64, eps: f64) -> (f64, f64) {
    let t_cut = theta + 52.0;
    let one_plus = 1.0 + eps;
    // A_eps
    let h = Dd::from_f64(0.5 + eps);
    let a_eps = h.mul(Dd::ONE.add(h.recip()).ln()).add(Dd::from_f64(1.5 + eps).ln());
    let term1 = h.mul(log_big_z_dd(theta, one_plus));
    let int_big = gl_integrate_dd(&|s| log_big_z_dd(theta, s), one_plus, t_cut, 0.2);
    let int_small_win = gl_integrate_dd(&|s| log_small_z_dd(theta, s), one_plus, 2.0 + eps, 0.2);
    let int_small_tail = gl_integrate_dd(&|s| log_small_z_dd(theta, s), 1.5, t_cut, 0.2);
    // z'/z (1+eps) by central differences of log z, dividing by the
    // actually representable step
    let hstep = 1e-7;
    let s_up = one_plus + hstep;
    let s_dn = one_plus - hstep;
    let zd = log_small_z_dd(theta, s_up)
        .sub(log_small_z_dd(theta, s_dn))
        .div(Dd::from_f64(s_up).sub(Dd::from_f64(s_dn)));
    let total = term1
        .add(int_big)
        .sub(int_small_win)
        .sub(int_small_tail)
        .add(a_eps.mul(zd));
    // uncertainty: geometric tails + quadrature error + fd error
    let tail = 3.0 * (1.0 + 2.0 / (t_cut - theta - 1.0)) * 2f64.powf(-(t_cut - theta))
        / std::f64::consts::LN_2;
    let quad_err = 1e-12; // panel 0.2, GL-12, derivative bound as in the lib
    let fd_err = 1e-12;
    (total.to_f64(), tail + quad_err + fd_err + 1e-13)
}

// ---------------------------------------------------------------------------
// Doubled-precision log Gamma (Stirling at shifted argument, exact Bernoulli)
// ---------------------------------------------------------------------------

/// log Gamma(z) in complex dd: upward recurrence to Re >= 40, then the
/// Stirling series with 16 Bernoulli terms (remainder < 1e-40 there).
/// Principal branch for Re(z) > 0.
pub fn log_gamma_dd(re: f64, im: f64) -> Cdd {
    let shift = (40.0 - re).ceil().max(0.0) as usize;
    let mut corr = Cdd::ZERO;
    for k in 0..shift {
        let f = Cdd::from_f64(re + k as f64, im);
        corr = corr.add(f.ln());
    }
    let z = Cdd::from_f64(re + shift as f64, im);
    // (z - 1/2) ln z - z + ln sqrt(2pi) + sum B_2k/((2k)(2k-1) z^(2k-1))
    let lnz = z.ln();
    let mut acc = z.sub(Cdd::from_f64(0.5, 0.0)).mul(lnz).sub(z);
    acc = acc.add(Cdd::new(Dd::LN_SQRT_2PI, Dd::ZERO));
    let zinv = z.recip();
    let zinv2 = zinv.mul(zinv);
    let mut pw = zinv;
    for k in 1..=16 {
        let (p, q) = bernoulli_2k_ratio(k);
        let coef = Dd::ratio(p, q).div(Dd::from_i64((2 * k * (2 * k - 1)) as i64));
        acc = acc.add(pw.mul_dd(coef));
        if k < 16 {
            pw = pw.mul(zinv2);
        }
    }
    acc.sub(corr)
}

#[cfg(test)]
mod selftest {
    use super::*;

    #[test]
    fn closed_form_g_at_zero() {
        // G(0; 0) = 2 exp(-1) for zeta
        let v = g_closed_form_zeta(0.0, 0.0);
        let truth = 2.0 * (-1.0f64).exp();
        assert!(v.contains(Complex64::new(truth, 0.0)), "{v:?} vs {truth}");
    }

    #[test]
    fn lambda_zeta_is_real_and_negative_at_zero() {
        // Lambda(1/2) = pi^(-1/4) Gamma(1/4) zeta(1/2) < 0
        let v = lambda_zeta_direct(0.0).unwrap();
        assert!(v.im().contains(0.0));
        assert!(v.mid.re < -3.9 && v.mid.re > -4.0, "{v:?}");
    }

    #[test]
    fn theta_oracle_matches_log_gamma_route() {
        // phi via asymptotics vs via log Gamma (two genuinely different routes)
        for t in [20.0, 50.0, 100.0] {
            let via_theta = phi_zeta_via_theta(t);
            let lg = log_gamma(&CBall::exact(0.25, t / 2.0)).unwrap();
            let direct = lg
                .im()
                .sub(&Ball::exact(t).mul(&Ball::pi().ln().unwrap()).mul_f64(0.5))
                .div(&Ball::pi())
                .unwrap();
            assert!(
                (via_theta.mid - direct.mid).abs() < 1e-9,
                "t = {t}: {via_theta:?} vs {direct:?}"
            );
        }
    }

    #[test]
    fn dd_zeta_matches_ball_zeta() {
        for sigma in [1.3, 1.49, 2.0, 4.0] {
            let dd = zeta_dd(sigma).to_f64();
            let ball = lcertify::special::zeta_real(&Ball::exact(sigma)).unwrap();
            assert!(ball.contains(dd), "sigma {sigma}: {ball:?} vs {dd}");
        }
    }

    #[test]
    fn log_gamma_dd_matches_ball_log_gamma() {
        let pts = [(0.25, 25.0), (1.5, 0.0), (3.0, -7.0), (0.5, 120.0)];
        for (re, im) in pts {
            let (or, oi) = log_gamma_dd(re, im).to_c64();
            let ball = log_gamma(&CBall::exact(re, im)).unwrap();
            assert!(
                ball.contains(Complex64::new(or, oi)),
                "({re},{im}): {ball:?} vs ({or},{oi})"
            );
        }
    }
}
