//! Euler-Maclaurin evaluation of Hurwitz/Riemann zeta for complex arguments,
//! over the crate's ball types. This is the oracle route for direct L-values
//! in the critical strip (the production path goes through the Fourier
//! kernel machinery instead).

#![allow(dead_code)]

use lcertify::ball::{Ball, CBall};
use lcertify::error::Result;
use lcertify::special::bernoulli_2k;
use num_complex::Complex64;

const EM_K: usize = 12;

/// (n + a)^(-s) as a ball.
fn pow_neg(base: f64, s: &CBall) -> Result<CBall> {
    let ln = Ball::exact(base).ln()?;
    Ok(s.mul_ball(&ln).neg().exp())
}

/// Hurwitz zeta zeta(s, a) for Re(s) > -(2K - 1), s != 1, 0 < a <= 1.
/// Euler-Maclaurin with the first-omitted-term remainder times the
/// |s + 2K + 1| / (sigma + 2K + 1) factor.
pub fn hurwitz_zeta(s: &CBall, a: f64) -> Result<CBall> {
    let sigma = s.mid.re;
    let t = s.mid.im.abs();
    assert!(sigma > -(2.0 * EM_K as f64 - 1.0) + 1.0);
    let n_cut = (24.0f64).max(0.8 * t / std::f64::consts::PI).ceil() as usize;
    let nf = n_cut as f64 + a;

    let mut acc = CBall::ZERO;
    for n in 0..n_cut {
        acc = acc.add(&pow_neg(n as f64 + a, s)?);
    }
    // (N+a)^(1-s)/(s-1)
    let one_minus_s = CBall::ONE.sub(s);
    let ln_n = Ball::exact(nf).ln()?;
    let pow1 = one_minus_s.mul_ball(&ln_n).exp();
    acc = acc.add(&pow1.div(&s.sub(&CBall::ONE))?);
    // + (N+a)^(-s)/2
    let pow0 = pow_neg(nf, s)?;
    acc = acc.add(&pow0.mul_f64(0.5));
    // Bernoulli terms
    let mut poch = CBall::ONE;
    let mut fact = Ball::ONE;
    let mut j = 0u64;
    let mut shift = pow1; // (N+a)^(1-s-2k) running
    let inv_n2 = Ball::exact(1.0 / (nf * nf));
    for k in 1..=EM_K + 1 {
        fact = fact.mul_f64(((2 * k - 1) * (2 * k)) as f64);
        while j < (2 * k - 1) as u64 {
            poch = poch.mul(&s.add(&CBall::exact(j as f64, 0.0)));
            j += 1;
        }
        shift = shift.mul_ball(&inv_n2);
        let coef = bernoulli_2k(k).div(&fact)?;
        let term = poch.mul(&shift).mul_ball(&coef);
        if k <= EM_K {
            acc = acc.add(&term);
        } else {
            let factor = s.add(&CBall::exact(2.0 * EM_K as f64 + 1.0, 0.0)).abs().hi()
                / (sigma + 2.0 * EM_K as f64 + 1.0);
            acc = acc.inflate(term.mag() * factor.max(1.0) * 1.01);
        }
    }
    Ok(acc)
}

/// Riemann zeta.
pub fn zeta(s: &CBall) -> Result<CBall> {
    hurwitz_zeta(s, 1.0)
}

/// L(s, chi_3) for the odd primitive character mod 3:
/// 3^(-s) (zeta(s, 1/3) - zeta(s, 2/3)).
pub fn dirichlet_l_mod3(s: &CBall) -> Result<CBall> {
    let a = hurwitz_zeta(s, 1.0 / 3.0)?;
    let b = hurwitz_zeta(s, 2.0 / 3.0)?;
    let scale = s.mul_ball(&Ball::exact(3.0).ln()?).neg().exp();
    Ok(scale.mul(&a.sub(&b)))
}

#[cfg(test)]
mod selftest {
    use super::*;

    #[test]
    fn zeta_at_2() {
        let v = zeta(&CBall::exact(2.0, 0.0)).unwrap();
        let truth = std::f64::consts::PI.powi(2) / 6.0;
        assert!(v.contains(Complex64::new(truth, 0.0)), "{v:?}");
    }

    #[test]
    fn zeta_on_critical_line() {
        // zeta(1/2 + 14.134725 i) is very close to the first zero
        let v = zeta(&CBall::exact(0.5, 14.134725141734693)).unwrap();
        assert!(v.abs().hi() < 1e-6, "{v:?}");
    }

    #[test]
    fn l_mod3_at_2() {
        // L(2, chi_3) = 0.7813024128964862... (classical value 4 pi^2/(27 sqrt 3)? check numerically)
        let v = dirichlet_l_mod3(&CBall::exact(2.0, 0.0)).unwrap();
        let direct: f64 = (1..2000)
            .map(|n| {
                let chi = match n % 3 {
                    1 => 1.0,
                    2 => -1.0,
                    _ => 0.0,
                };
                chi / (n * n) as f64
            })
            .sum();
        assert!((v.mid.re - direct).abs() < 1e-5, "{} vs {direct}", v.mid.re);
        assert!(v.rad < 1e-10);
    }
}
