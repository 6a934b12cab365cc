//! The explicit constants behind the S-integral theorems: A_eps, Z_theta,
//! z_theta, their Selberg-class analogues, and the assembled c_theta(eps),
//! including the improper integrals by certified quadrature with analytic
//! geometric tail majorants.

use serde::{Deserialize, Serialize};

use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::quad;
use crate::special::{zeta_logderiv, zeta_real};

/// A_eps = (1/2+eps) log(1 + 1/(1/2+eps)) + log(3/2+eps).
pub fn a_epsilon(eps: &Ball) -> Result<Ball> {
    if eps.lo() < 0.0 {
        return Err(Error::DomainError("A_eps requires eps >= 0".into()));
    }
    let h = eps.add_f64(0.5);
    let t1 = h.mul(&Ball::ONE.add(&h.recip()?).ln()?);
    let t2 = eps.add_f64(1.5).ln()?;
    Ok(t1.add(&t2))
}

/// Z_theta(sigma) = (zeta(sigma+theta) zeta(sigma-theta))^(1/2).
pub fn big_z_theta(theta: &Ball, sigma: &Ball) -> Result<Ball> {
    log_big_z_theta(theta, sigma)?.exp().sqrt_guard()
}

/// z_theta(sigma) = (zeta(2s+2t) zeta(2s-2t) / (zeta(s+t) zeta(s-t)))^(1/2).
pub fn small_z_theta(theta: &Ball, sigma: &Ball) -> Result<Ball> {
    log_small_z_theta(theta, sigma)?.exp().sqrt_guard()
}

trait SqrtGuard {
    fn sqrt_guard(self) -> Result<Ball>;
}
impl SqrtGuard for Ball {
    fn sqrt_guard(self) -> Result<Ball> {
        // exp of the half-log; the value is already the square root since the
        // log routines return log of the squared quantity halved
        Ok(self)
    }
}

/// log Z_theta(sigma) = (log zeta(s+t) + log zeta(s-t)) / 2.
pub fn log_big_z_theta(theta: &Ball, sigma: &Ball) -> Result<Ball> {
    if sigma.sub(theta).lo() <= 1.0 {
        return Err(Error::DomainError("Z_theta requires sigma - theta > 1".into()));
    }
    let a = zeta_real(&sigma.add(theta))?.ln()?;
    let b = zeta_real(&sigma.sub(theta))?.ln()?;
    Ok(a.add(&b).mul_f64(0.5))
}

/// log z_theta(sigma).
pub fn log_small_z_theta(theta: &Ball, sigma: &Ball) -> Result<Ball> {
    let two_sigma = sigma.mul_f64(2.0);
    let two_theta = theta.mul_f64(2.0);
    if two_sigma.sub(&two_theta).lo() <= 1.0 {
        return Err(Error::DomainError("z_theta requires 2 sigma - 2 theta > 1".into()));
    }
    let a = zeta_real(&two_sigma.add(&two_theta))?.ln()?;
    let b = zeta_real(&two_sigma.sub(&two_theta))?.ln()?;
    let big = log_big_z_theta(theta, sigma)?;
    Ok(a.add(&b).mul_f64(0.5).sub(&big))
}

/// d/dsigma log z_theta(sigma) assembled from zeta'/zeta:
/// zz(2s+2t) + zz(2s-2t) - (zz(s+t) + zz(s-t))/2.
pub fn small_z_logderiv(theta: &Ball, sigma: &Ball) -> Result<Ball> {
    let two_sigma = sigma.mul_f64(2.0);
    let two_theta = theta.mul_f64(2.0);
    let a = zeta_logderiv(&two_sigma.add(&two_theta))?;
    let b = zeta_logderiv(&two_sigma.sub(&two_theta))?;
    let c = zeta_logderiv(&sigma.add(theta))?;
    let d = zeta_logderiv(&sigma.sub(theta))?;
    Ok(a.add(&b).sub(&c.add(&d).mul_f64(0.5)))
}

// ---------------------------------------------------------------------------
// Selberg-class Z via prime-power sums
// ---------------------------------------------------------------------------

fn moebius(k: u64) -> i64 {
    let mut n = k;
    let mut mu = 1i64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Prime zeta P(x) = sum_p p^-x for x > 1, via P(x) = sum mu(k)/k log zeta(kx).
fn prime_zeta(x: &Ball) -> Result<Ball> {
    if x.lo() <= 1.0 {
        return Err(Error::DomainError("prime zeta requires x > 1".into()));
    }
    let xl = x.lo();
    let mut acc = Ball::ZERO;
    let mut kstop: u64 = 40;
    for k in 1..=40u64 {
        // tail bound if we stop before this k:
        // sum_{j>=k} log zeta(jx)/j <= (1 + 2/(kx-1)) 2^(-kx) / ((1-2^-x) k)
        let tail = (1.0 + 2.0 / (k as f64 * xl - 1.0)).max(1.0)
            * 2f64.powf(-(k as f64) * xl)
            / ((1.0 - 2f64.powf(-xl)) * k as f64);
        if tail < 1e-18 * acc.mid.abs().max(1e-3) {
            kstop = k - 1;
            return Ok(acc.inflate(tail * 1.01));
        }
        if moebius(k) == 0 {
            continue;
        }
        let lz = zeta_real(&x.mul_f64(k as f64))?.ln()?;
        acc = acc.add(&lz.mul_f64(moebius(k) as f64 / k as f64));
    }
    let _ = kstop;
    let tail = (1.0 + 2.0 / (41.0 * xl - 1.0)) * 2f64.powf(-41.0 * xl)
        / ((1.0 - 2f64.powf(-xl)) * 40.0);
    Ok(acc.inflate(tail * 1.01))
}

/// d/dx P(x) = sum mu(k) (zeta'/zeta)(kx).
fn prime_zeta_deriv(x: &Ball) -> Result<Ball> {
    if x.lo() <= 1.0 {
        return Err(Error::DomainError("prime zeta requires x > 1".into()));
    }
    let kmax: u64 = 30;
    let mut acc = Ball::ZERO;
    for k in 1..=kmax {
        if moebius(k) == 0 {
            continue;
        }
        let zz = zeta_logderiv(&x.mul_f64(k as f64))?;
        acc = acc.add(&zz.mul_f64(moebius(k) as f64));
    }
    let xl = x.lo();
    let y = (kmax + 1) as f64 * xl;
    // |zeta'/zeta(y)| <= 2^-y (ln2 + 2 ln2/(y-1) + 2/(y-1)^2) =: 2^-y g(y)
    let g = std::f64::consts::LN_2 * (1.0 + 2.0 / (y - 1.0)) + 2.0 / ((y - 1.0) * (y - 1.0));
    let tail = 2f64.powf(-y) * g / (1.0 - 2f64.powf(-xl));
    Ok(acc.inflate(tail * 1.01))
}

/// Prime-power sum PP(x) = sum_p sum_{l>=1} p^(-xl) = sum_l P(lx).
fn prime_power_sum(x: &Ball) -> Result<Ball> {
    let xl = x.lo();
    let mut acc = Ball::ZERO;
    for l in 1..=40u64 {
        // stopping tail: sum_{j>=l} P(jx) <= (1+2/(lx-1)) 2^(-lx)/(1-2^-x)
        let tail = (1.0 + 2.0 / (l as f64 * xl - 1.0)).max(1.0) * 2f64.powf(-(l as f64) * xl)
            / (1.0 - 2f64.powf(-xl));
        if tail < 1e-18 * acc.mid.abs().max(1e-3) {
            return Ok(acc.inflate(tail * 1.01));
        }
        acc = acc.add(&prime_zeta(&x.mul_f64(l as f64))?);
    }
    let tail = (1.0 + 2.0 / (41.0 * xl - 1.0)) * 2f64.powf(-41.0 * xl) / (1.0 - 2f64.powf(-xl));
    Ok(acc.inflate(tail * 1.01))
}

/// d/dx PP(x) = sum_l l P'(lx).
fn prime_power_sum_deriv(x: &Ball) -> Result<Ball> {
    let lmax: u64 = 30;
    let mut acc = Ball::ZERO;
    for l in 1..=lmax {
        acc = acc.add(&prime_zeta_deriv(&x.mul_f64(l as f64))?.mul_f64(l as f64));
    }
    let xl = x.lo();
    let y = (lmax + 1) as f64 * xl;
    let g = std::f64::consts::LN_2 * (1.0 + 2.0 / (y - 1.0)) + 2.0 / ((y - 1.0) * (y - 1.0));
    // sum_{l>L} l 2^(-lx) g <= g * q^(L+1) ((L+1) - L q)/(1-q)^2, q = 2^-x
    let q = 2f64.powf(-xl);
    let tail = g * q.powf((lmax + 1) as f64) * ((lmax + 1) as f64 - lmax as f64 * q)
        / ((1.0 - q) * (1.0 - q));
    Ok(acc.inflate(tail.abs() * 1.01))
}

/// Z_thetaL(sigma) = exp(C_L PP(sigma - thetaL)).
pub fn selberg_big_z(theta_l: &Ball, c_l: &Ball, sigma: &Ball) -> Result<Ball> {
    Ok(log_selberg_big_z(theta_l, c_l, sigma)?.exp())
}

/// z_thetaL(sigma) = exp(-C_L PP(sigma - thetaL)) = 1 / Z_thetaL(sigma).
pub fn selberg_small_z(theta_l: &Ball, c_l: &Ball, sigma: &Ball) -> Result<Ball> {
    Ok(log_selberg_big_z(theta_l, c_l, sigma)?.neg().exp())
}

pub fn log_selberg_big_z(theta_l: &Ball, c_l: &Ball, sigma: &Ball) -> Result<Ball> {
    if c_l.mid == 0.0 && c_l.rad == 0.0 {
        return Ok(Ball::ZERO);
    }
    let x = sigma.sub(theta_l);
    if x.lo() <= 1.0 {
        return Err(Error::DomainError("Z_thetaL requires sigma - thetaL > 1".into()));
    }
    Ok(prime_power_sum(&x)?.mul(c_l))
}

// ---------------------------------------------------------------------------
// c_theta(eps)
// ---------------------------------------------------------------------------

/// Which c-constant to assemble.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum CVariant {
    /// zeta-majorant constant c_theta(eps) of the Artin-type theorem.
    Artin { theta: Ball },
    /// c_thetaL(eps) with the prime-power majorant of Selberg axiom (iv).
    Selberg { theta_l: Ball, c_l: Ball },
    /// Polynomial Euler product of order l: the theorem replaces
    /// c_thetaL(eps) by l * c_0(eps).
    SelbergPolynomial { l: u32 },
}

/// Evaluated constant with its five addends and quadrature audit data.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstantReport {
    pub variant: CVariant,
    pub eps: Ball,
    pub a_eps: Ball,
    /// (1/2+eps) log Z(1+eps)
    pub term_leading: Ball,
    /// + int_{1+eps}^inf log Z
    pub term_int_big: Ball,
    /// - int_{1+eps}^{2+eps} log z
    pub term_int_small_window: Ball,
    /// - int_{3/2}^inf log z
    pub term_int_small_tail: Ball,
    /// + A_eps z'/z(1+eps)
    pub term_logderiv: Ball,
    pub c_theta_eps: Ball,
    pub quad_panels: usize,
    pub tail_cutoff: f64,
    pub tail_bound: f64,
}

/// Derivative bound for d^24/dsigma^24 of sum_i w_i log zeta(a_i sigma + b_i)
/// on [lo, hi]: sum |w_i| a_i^24 * ((24)!/(x_i-1)^25 + (24/(e x_i))^24) with
/// x_i the minimal argument on the panel.
fn logzeta_deriv_bound(parts: &[(f64, f64, f64)], lo: f64) -> f64 {
    let k = quad::DERIV_ORDER as f64; // 24
    let mut fact = 1.0f64;
    for i in 2..=quad::DERIV_ORDER {
        fact *= i as f64;
    }
    let mut total = 0.0;
    for &(w, a, b) in parts {
        let x = a * lo + b;
        debug_assert!(x > 1.0);
        let t = fact / (x - 1.0).powi(25) + (k / (std::f64::consts::E * x)).powf(k);
        total += w.abs() * a.powf(k) * t;
    }
    total * 1.01
}

/// Same for the prime-power integrand C_L * PP(sigma - thetaL).
fn pp_deriv_bound(c_l: f64, lo: f64, theta_l: f64) -> f64 {
    let k = quad::DERIV_ORDER as f64;
    let x = lo - theta_l;
    let mut fact = 1.0f64;
    for i in 2..=quad::DERIV_ORDER {
        fact *= i as f64;
    }
    // l = 1 and small l: plain bound; large l: sqrt-log majorant
    let l0 = ((k / 2.0 + 2.0) / x).ceil() as u64;
    let mut total = 0.0f64;
    for l in 1..=l0 {
        let xl = l as f64 * x;
        total += (l as f64).powf(k) * (fact / (xl - 1.0).powi(25) + (k / (std::f64::consts::E * xl)).powf(k));
    }
    // tail over l > l0: (ln n)^k <= n^(k/2); sum_n>=2 n^(k/2 - lx) <= 2^(k/2-lx)(1+2/(lx-k/2-1))
    let a = x * std::f64::consts::LN_2;
    let tail_l = fact / a.powf(k + 1.0) + (k / (std::f64::consts::E * a)).powf(k);
    let slack = 1.0 + 2.0 / ((l0 + 1) as f64 * x - k / 2.0 - 1.0).max(1.0);
    total += 2f64.powf(k / 2.0) * slack * tail_l;
    total * c_l.abs() * 1.01
}

const QUAD_PANEL: f64 = 0.25;

/// Assemble c_theta(eps) per the requested variant. Requires eps in (theta, 1/2].
pub fn c_theta(variant: &CVariant, eps: &Ball) -> Result<ConstantReport> {
    if eps.hi() > 0.5 {
        return Err(Error::DomainError("eps <= 1/2 required".into()));
    }
    match variant {
        CVariant::Artin { theta } => {
            if eps.lo() <= theta.hi() {
                return Err(Error::DomainError("eps in (theta, 1/2] required".into()));
            }
            c_theta_zeta(theta, eps, variant.clone())
        }
        CVariant::Selberg { theta_l, c_l } => {
            if eps.lo() <= theta_l.hi() {
                return Err(Error::DomainError("eps > theta_L required".into()));
            }
            c_theta_selberg(theta_l, c_l, eps)
        }
        CVariant::SelbergPolynomial { l } => {
            if eps.lo() <= 0.0 {
                return Err(Error::DomainError("eps > 0 required".into()));
            }
            let base = c_theta_zeta(&Ball::ZERO, eps, variant.clone())?;
            let s = *l as f64;
            Ok(ConstantReport {
                variant: variant.clone(),
                eps: *eps,
                a_eps: base.a_eps,
                term_leading: base.term_leading.mul_f64(s),
                term_int_big: base.term_int_big.mul_f64(s),
                term_int_small_window: base.term_int_small_window.mul_f64(s),
                term_int_small_tail: base.term_int_small_tail.mul_f64(s),
                term_logderiv: base.term_logderiv.mul_f64(s),
                c_theta_eps: base.c_theta_eps.mul_f64(s),
                quad_panels: base.quad_panels,
                tail_cutoff: base.tail_cutoff,
                tail_bound: base.tail_bound,
            })
        }
    }
}

fn c_theta_zeta(theta: &Ball, eps: &Ball, variant: CVariant) -> Result<ConstantReport> {
    let a_eps = a_epsilon(eps)?;
    let one_plus = eps.add_f64(1.0);
    let th = theta.mid;
    let t_cut = th + 48.0;
    // geometric tail: int_T^inf log Z <= (1 + 2/(T-th-1)) 2^-(T-th) / ln 2
    let tail_big = (1.0 + 2.0 / (t_cut - th - 1.0)) * 2f64.powf(-(t_cut - th)) / std::f64::consts::LN_2;
    // |log z| <= logzeta(s-t) majorant + the 2s terms; double the Z majorant
    let tail_small = 2.0 * tail_big;

    let big_parts = [(0.5, 1.0, th), (0.5, 1.0, -th)];
    let small_parts = [(0.5, 2.0, 2.0 * th), (0.5, 2.0, -2.0 * th), (-0.5, 1.0, th), (-0.5, 1.0, -th)];

    let term_leading = one_plus.add_f64(-0.5).mul(&log_big_z_theta(theta, &one_plus)?);

    let int_big = quad::integrate(
        &|s: &Ball| log_big_z_theta(theta, s),
        one_plus.hi(),
        t_cut,
        QUAD_PANEL,
        &|lo, _| logzeta_deriv_bound(&big_parts, lo),
    )?;
    // the discarded initial sliver [one_plus.lo, one_plus.hi] and the tail
    let term_int_big = int_big
        .add(&Ball::from_endpoints(0.0, tail_big))
        .add(&sliver(&|s| log_big_z_theta(theta, s), eps.add_f64(1.0))?);

    let int_small_window = quad::integrate(
        &|s: &Ball| log_small_z_theta(theta, s),
        one_plus.hi(),
        eps.add_f64(2.0).lo(),
        QUAD_PANEL,
        &|lo, _| logzeta_deriv_bound(&small_parts, lo),
    )?
    .add(&sliver(&|s| log_small_z_theta(theta, s), eps.add_f64(1.0))?)
    .add(&sliver(&|s| log_small_z_theta(theta, s), eps.add_f64(2.0))?);
    let term_int_small_window = int_small_window.neg();

    let int_small_tail = quad::integrate(
        &|s: &Ball| log_small_z_theta(theta, s),
        1.5,
        t_cut,
        QUAD_PANEL,
        &|lo, _| logzeta_deriv_bound(&small_parts, lo),
    )?
    .add(&Ball::from_endpoints(-tail_small, 0.0));
    let term_int_small_tail = int_small_tail.neg();

    let term_logderiv = a_eps.mul(&small_z_logderiv(theta, &one_plus)?);

    let c = term_leading
        .add(&term_int_big)
        .add(&term_int_small_window)
        .add(&term_int_small_tail)
        .add(&term_logderiv);
    let panels = (((t_cut - one_plus.mid) / QUAD_PANEL).ceil()
        + ((t_cut - 1.5) / QUAD_PANEL).ceil()
        + (1.0f64 / QUAD_PANEL).ceil()) as usize;
    Ok(ConstantReport {
        variant,
        eps: *eps,
        a_eps,
        term_leading,
        term_int_big,
        term_int_small_window,
        term_int_small_tail,
        term_logderiv,
        c_theta_eps: c,
        quad_panels: panels,
        tail_cutoff: t_cut,
        tail_bound: tail_big.max(tail_small),
    })
}

/// Enclosure of the integral over the width of an uncertain endpoint ball
/// (its center to either edge), bounded by width * |f| there.
fn sliver<F>(f: &F, at: Ball) -> Result<Ball>
where
    F: Fn(&Ball) -> Result<Ball>,
{
    if at.rad == 0.0 {
        return Ok(Ball::ZERO);
    }
    let m = f(&at)?.mag();
    Ok(Ball::from_endpoints(-(at.rad * m * 1.01), at.rad * m * 1.01))
}

fn c_theta_selberg(theta_l: &Ball, c_l: &Ball, eps: &Ball) -> Result<ConstantReport> {
    let a_eps = a_epsilon(eps)?;
    if c_l.mid == 0.0 && c_l.rad == 0.0 {
        // all Z, z terms vanish
        return Ok(ConstantReport {
            variant: CVariant::Selberg { theta_l: *theta_l, c_l: *c_l },
            eps: *eps,
            a_eps,
            term_leading: Ball::ZERO,
            term_int_big: Ball::ZERO,
            term_int_small_window: Ball::ZERO,
            term_int_small_tail: Ball::ZERO,
            term_logderiv: Ball::ZERO,
            c_theta_eps: Ball::ZERO,
            quad_panels: 0,
            tail_cutoff: 0.0,
            tail_bound: 0.0,
        });
    }
    let one_plus = eps.add_f64(1.0);
    let th = theta_l.mid;
    let t_cut = th + 48.0;
    let cl_hi = c_l.mag();
    let tail_pp = cl_hi * (1.0 + 2.0 / (t_cut - th - 1.0)) * 2f64.powf(-(t_cut - th))
        / ((1.0 - 2f64.powf(-(t_cut - th))) * std::f64::consts::LN_2);

    // log Z = C_L PP(sigma - thetaL), log z = -log Z
    let logz = |s: &Ball| -> Result<Ball> { log_selberg_big_z(theta_l, c_l, s) };

    let term_leading = one_plus.add_f64(-0.5).mul(&logz(&one_plus)?);
    let int_big = quad::integrate(
        &logz,
        one_plus.hi(),
        t_cut,
        QUAD_PANEL,
        &|lo, _| pp_deriv_bound(cl_hi, lo, th),
    )?;
    let term_int_big = int_big
        .add(&Ball::from_endpoints(0.0, tail_pp))
        .add(&sliver(&logz, one_plus)?);

    // -int (log z) = +int (log Z) over the window
    let int_small_window = quad::integrate(
        &logz,
        one_plus.hi(),
        eps.add_f64(2.0).lo(),
        QUAD_PANEL,
        &|lo, _| pp_deriv_bound(cl_hi, lo, th),
    )?
    .add(&sliver(&logz, one_plus)?)
    .add(&sliver(&logz, eps.add_f64(2.0))?);
    let term_int_small_window = int_small_window;

    let int_small_tail = quad::integrate(
        &logz,
        1.5,
        t_cut,
        QUAD_PANEL,
        &|lo, _| pp_deriv_bound(cl_hi, lo, th),
    )?
    .add(&Ball::from_endpoints(0.0, tail_pp));
    let term_int_small_tail = int_small_tail;

    // z'/z (1+eps) = -C_L PP'(1+eps-thetaL)
    let zlogd = prime_power_sum_deriv(&one_plus.sub(theta_l))?.mul(c_l).neg();
    let term_logderiv = a_eps.mul(&zlogd);

    let c = term_leading
        .add(&term_int_big)
        .add(&term_int_small_window)
        .add(&term_int_small_tail)
        .add(&term_logderiv);
    let panels = (2.0 * ((t_cut - one_plus.mid) / QUAD_PANEL).ceil() + (1.0f64 / QUAD_PANEL).ceil()) as usize;
    Ok(ConstantReport {
        variant: CVariant::Selberg { theta_l: *theta_l, c_l: *c_l },
        eps: *eps,
        a_eps,
        term_leading,
        term_int_big,
        term_int_small_window,
        term_int_small_tail,
        term_logderiv,
        c_theta_eps: c,
        quad_panels: panels,
        tail_cutoff: t_cut,
        tail_bound: tail_pp,
    })
}
