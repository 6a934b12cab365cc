//! Strip estimates: the Gamma-ratio bounds, the convexity bound for both
//! classes, and the two worked example bounds as formula evaluators.

use crate::ball::{Ball, CBall};
use crate::constants::{big_z_theta, log_selberg_big_z};
use crate::descriptor::{
    abs_analytic_conductor_q, abs_selberg_conductor_ql, ClassTag, LFunctionDescriptor, PoleData,
};
use crate::error::{Error, Result};
use crate::special::zeta_real;

/// Floor on |s - 1| below which the pole-ratio factor is refused.
pub const DEFAULT_POLE_FLOOR: f64 = 1e-6;

/// |(mu + 2 - eps + i t)/2|^(1/2+eps), which dominates
/// |Gamma((mu+1+eps+it)/2) / Gamma((mu-eps+it)/2)| for eps in [-1/2, 1/2].
pub fn gamma_ratio_bound(mu: &CBall, eps: &Ball, t: &Ball) -> Result<Ball> {
    if eps.lo() < -0.5 || eps.hi() > 0.5 {
        return Err(Error::DomainError("gamma ratio bound requires eps in [-1/2, 1/2]".into()));
    }
    let z = mu
        .add(&CBall::exact(2.0, 0.0))
        .sub(&CBall::from_real(eps))
        .add(&CBall::from_real(t).mul_i())
        .mul_f64(0.5);
    z.abs().powf(&eps.add_f64(0.5))
}

/// |mu + 1 + (-eps + i t) lambda|^(2 lambda (1/2+eps)), dominating
/// |Gamma(mu + lambda(1+eps) + i lambda t) / Gamma(mu - lambda eps + i lambda t)|
/// for lambda < 1 and eps in [-1/2, (lambda^-1 - 1)/2].
pub fn gamma_ratio_bound_selberg(
    lambda: &Ball,
    mu: &CBall,
    eps: &Ball,
    t: &Ball,
) -> Result<Ball> {
    if lambda.hi() >= 1.0 {
        return Err(Error::DomainError("selberg gamma ratio bound requires lambda < 1".into()));
    }
    let upper = lambda.recip()?.add_f64(-1.0).mul_f64(0.5);
    if eps.lo() < -0.5 || eps.hi() > upper.hi() {
        return Err(Error::DomainError(
            "selberg gamma ratio bound requires eps in [-1/2, (lambda^-1 - 1)/2]".into(),
        ));
    }
    let inner = CBall::from_real(&eps.neg()).add(&CBall::from_real(t).mul_i());
    let z = mu.add(&CBall::ONE).add(&inner.mul_ball(lambda));
    z.abs().powf(&lambda.mul_f64(2.0).mul(&eps.add_f64(0.5)))
}

/// Input bundle for the convexity bound.
#[derive(Clone, Debug)]
pub struct StripBoundInput<'a> {
    pub descriptor: &'a LFunctionDescriptor,
    pub s: CBall,
    pub epsilon: Ball,
    /// Upper bound for b_(1+eps) = sup on Re(s)=1+eps of |L|; when absent the
    /// coefficient majorant of the descriptor's class is used.
    pub b_upper: Option<Ball>,
    pub pole_floor: f64,
}

impl<'a> StripBoundInput<'a> {
    pub fn new(descriptor: &'a LFunctionDescriptor, s: CBall, epsilon: Ball) -> Self {
        StripBoundInput { descriptor, s, epsilon, b_upper: None, pole_floor: DEFAULT_POLE_FLOOR }
    }
}

/// Default majorant for b_(1+eps) from the coefficient axioms:
/// Z_theta(1+eps)^r (Artin-type), Z_thetaL(1+eps) (Selberg),
/// Z_0(1+eps)^l (polynomial Euler product).
pub fn default_b_upper(d: &LFunctionDescriptor, eps: &Ball) -> Result<Ball> {
    let sigma = eps.add_f64(1.0);
    match d.class {
        ClassTag::ArtinType => {
            let r = d.gamma_factors.len() as u32;
            Ok(big_z_theta(&d.theta, &sigma)?.powi(r))
        }
        ClassTag::Selberg => Ok(log_selberg_big_z(&d.theta, &d.c_l, &sigma)?.exp()),
        ClassTag::SelbergPolynomial => {
            let l = d.euler_order.unwrap_or(1);
            Ok(zeta_real(&sigma)?.powi(l))
        }
    }
}

fn check_eps_range(d: &LFunctionDescriptor, eps: &Ball) -> Result<()> {
    if eps.lo() <= 0.0 {
        return Err(Error::DomainError("eps > 0 required".into()));
    }
    match d.class {
        ClassTag::ArtinType => {
            if eps.hi() > 0.5 {
                return Err(Error::DomainError("eps in (0, 1/2] required".into()));
            }
        }
        _ => {
            let mut cap: f64 = 0.5;
            for g in &d.gamma_factors {
                if g.lambda.hi() >= 1.0 {
                    return Err(Error::DomainError("all lambda_j < 1 required".into()));
                }
                let this = (1.0 / g.lambda.hi() - 1.0) * 0.5;
                cap = cap.min(this);
            }
            if eps.hi() > cap {
                return Err(Error::DomainError(format!(
                    "eps in (0, min{{1/2, (max lambda)^-1 - 1)/2}}] = (0, {cap}] required"
                )));
            }
        }
    }
    Ok(())
}

/// Convexity bound for Re(s) in [-eps, 1+eps]:
/// Artin-type: b_(1+eps) |Q(2+s)|^((1+eps-sigma)/2) |P(s-2)/P(s-1)|;
/// Selberg:    b_(1+eps) |Q_L(s)|^((1+eps-sigma)/2) |(s-2)/(s-1)|^k_L.
pub fn convexity_bound(input: &StripBoundInput) -> Result<Ball> {
    let d = input.descriptor;
    let eps = &input.epsilon;
    check_eps_range(d, eps)?;
    let sigma = input.s.re();
    if sigma.lo() < -eps.hi() - 1e-12 || sigma.hi() > 1.0 + eps.hi() + 1e-12 {
        return Err(Error::DomainError(format!(
            "Re(s) must lie in [-eps, 1+eps], got {sigma}"
        )));
    }
    let b = match &input.b_upper {
        Some(b) => *b,
        None => default_b_upper(d, eps)?,
    };
    let expo = eps.add_f64(1.0).sub(&sigma).mul_f64(0.5);
    match d.class {
        ClassTag::ArtinType => {
            let q = abs_analytic_conductor_q(d, &input.s.add(&CBall::exact(2.0, 0.0)))?;
            let mut ratio = Ball::ONE;
            if let PoleData::Taus(taus) = &d.pole {
                for tau in taus {
                    let den = input.s.sub(&CBall::ONE).sub(tau);
                    if den.abs().lo() < input.pole_floor {
                        return Err(Error::PoleProximity(format!("|s - 1 - tau| = {}", den.abs())));
                    }
                    let num = input.s.sub(&CBall::exact(2.0, 0.0)).sub(tau);
                    ratio = ratio.mul(&num.abs().div(&den.abs())?);
                }
            }
            Ok(b.mul(&q.powf(&expo)?).mul(&ratio))
        }
        _ => {
            let q = abs_selberg_conductor_ql(d, &input.s)?;
            let k = d.pole.order() as u32;
            let ratio = if k == 0 {
                Ball::ONE
            } else {
                let den = input.s.sub(&CBall::ONE);
                if den.abs().lo() < input.pole_floor {
                    return Err(Error::PoleProximity(format!("|s - 1| = {}", den.abs())));
                }
                let num = input.s.sub(&CBall::exact(2.0, 0.0));
                num.abs().div(&den.abs())?.powi(k)
            };
            Ok(b.mul(&q.powf(&expo)?).mul(&ratio))
        }
    }
}

/// Entire Artin L-function bound (Example 2.4):
/// zeta(1.49)^r N^((1.49-sigma)/2) (|3+s|/(2 pi))^((1.49-sigma) r / 2),
/// valid for Re(s) in [0.5, 1.49].
pub fn artin_example_bound(r: u32, n: &Ball, s: &CBall) -> Result<Ball> {
    let sigma = s.re();
    if sigma.lo() < 0.5 - 1e-12 || sigma.hi() > 1.49 + 1e-12 {
        return Err(Error::DomainError("Re(s) in [0.5, 1.49] required".into()));
    }
    if n.lo() <= 0.0 {
        return Err(Error::DomainError("N > 0 required".into()));
    }
    let zr = zeta_real(&Ball::exact(1.49))?.powi(r);
    let expo = sigma.neg().add_f64(1.49);
    let n_pow = n.powf(&expo.mul_f64(0.5))?;
    let base = s
        .add(&CBall::exact(3.0, 0.0))
        .abs()
        .div(&Ball::pi().mul_f64(2.0))?;
    let tail = base.powf(&expo.mul_f64(0.5 * r as f64))?;
    Ok(zr.mul(&n_pow).mul(&tail))
}

/// Leading constant of Example 2.5: zeta(1.4 + 7/64) zeta(1.4 - 7/64).
pub fn maass_leading_constant() -> Result<Ball> {
    let t = Ball::from_ratio(7, 64);
    let a = zeta_real(&t.add_f64(1.4))?;
    let b = zeta_real(&t.neg().add_f64(1.4))?;
    Ok(a.mul(&b))
}

/// Cuspidal Maass newform bound (Example 2.5), for sigma in [-0.4, 1.4]:
/// leading constant times ((5 sqrt N / 2pi)(|t| + D))^(1.4-sigma) for |t| < 5
/// or ((3 sqrt N / 4pi)(|t| + D))^(1.4-sigma) for |t| >= 5, with
/// D = 3 sigma - 1 + eps' + |r'| + (2 sigma - 1)^2 / (1 - sigma + eps').
pub fn maass_example_bound(n: u32, parity: u8, r_prime: &Ball, s: &CBall) -> Result<Ball> {
    if parity > 1 {
        return Err(Error::DomainError("parity must be 0 or 1".into()));
    }
    let sigma = s.re();
    if sigma.lo() < -0.4 - 1e-12 || sigma.hi() > 1.4 + 1e-12 {
        return Err(Error::DomainError("sigma in [-0.4, 1.4] required".into()));
    }
    let epsp = parity as f64;
    let denom = sigma.neg().add_f64(1.0 + epsp);
    if denom.contains(0.0) {
        return Err(Error::SingularD);
    }
    let d = sigma
        .mul_f64(3.0)
        .add_f64(epsp - 1.0)
        .add(&r_prime.abs())
        .add(&sigma.mul_f64(2.0).add_f64(-1.0).square().div(&denom)?);
    let t_abs = s.im().abs();
    // constant 5/(2 pi) below 5, 3/(4 pi) above; a straddling |t| ball takes
    // the larger constant (the resulting expression still dominates)
    let c = if t_abs.lo() >= 5.0 {
        Ball::exact(0.75).div(&Ball::pi())?
    } else {
        Ball::exact(2.5).div(&Ball::pi())?
    };
    let expo = sigma.neg().add_f64(1.4);
    if expo.mid == 0.0 && expo.rad == 0.0 {
        // sigma = 1.4 exactly: the power collapses to 1
        return maass_leading_constant();
    }
    let sqrt_n = Ball::exact(n as f64).sqrt()?;
    let base = c.mul(&sqrt_n).mul(&t_abs.add(&d));
    if base.lo() <= 0.0 {
        return Err(Error::DomainError(format!("bound base {base} must be positive")));
    }
    Ok(maass_leading_constant()?.mul(&base.powf(&expo)?))
}
