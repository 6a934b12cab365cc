//! Midpoint-radius enclosures over `f64`.
//!
//! `Ball` (real) and `CBall` (complex disc) are the numeric carriers for every
//! certified quantity in the crate. All operations round outward: whenever the
//! inputs enclose exact values, the result encloses the exact result. Centers
//! use round-to-nearest hardware arithmetic; the radius absorbs the rounding
//! through `next_up` inflation. Library calls (`exp`, `ln`, `sin`, ...) are
//! assumed correct to within `LIBM_ULPS` ulps of the true value, which is the
//! usual contract for the platform libm and is further padded by one ulp here.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Slack factor (in ulps) applied to every transcendental library call.
const LIBM_ULPS: u32 = 3;

#[inline]
fn up(x: f64) -> f64 {
    x.next_up()
}

/// Upward-rounded sum of nonnegative quantities.
#[inline]
fn add_up(a: f64, b: f64) -> f64 {
    up(a + b)
}

#[inline]
fn mul_up(a: f64, b: f64) -> f64 {
    up(a * b)
}

#[inline]
fn div_up(a: f64, b: f64) -> f64 {
    up(a / b)
}

/// Distance from `x` to the next representable in the direction away from 0,
/// i.e. an upper bound for the rounding error of any operation producing `x`.
#[inline]
fn ulp(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::INFINITY;
    }
    let a = x.abs();
    a.next_up() - a
}

#[inline]
fn half_ulp(x: f64) -> f64 {
    0.5 * ulp(x)
}

#[inline]
fn libm_slack(x: f64) -> f64 {
    LIBM_ULPS as f64 * ulp(x)
}

/// A real number known to lie in `[mid - rad, mid + rad]`.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub mid: f64,
    pub rad: f64,
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} +/- {:.3e}", self.mid, self.rad)
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} +/- {:.3e}", self.mid, self.rad)
    }
}

impl Ball {
    pub const ZERO: Ball = Ball { mid: 0.0, rad: 0.0 };
    pub const ONE: Ball = Ball { mid: 1.0, rad: 0.0 };

    #[inline]
    pub fn new(mid: f64, rad: f64) -> Ball {
        debug_assert!(rad >= 0.0 || rad.is_nan());
        Ball { mid, rad }
    }

    /// Exactly representable value; zero radius.
    #[inline]
    pub fn exact(x: f64) -> Ball {
        Ball { mid: x, rad: 0.0 }
    }

    pub fn from_i64(n: i64) -> Ball {
        let x = n as f64;
        // i64 -> f64 is exact for |n| < 2^53
        if x as i64 == n && n.abs() < (1i64 << 53) {
            Ball::exact(x)
        } else {
            Ball::new(x, ulp(x))
        }
    }

    /// Enclosure of `p/q` from exact integer inputs.
    pub fn from_ratio(p: i64, q: i64) -> Ball {
        Ball::from_i64(p).div(&Ball::from_i64(q)).expect("nonzero denominator")
    }

    /// Interval `[lo, hi]` as a ball.
    pub fn from_endpoints(lo: f64, hi: f64) -> Ball {
        debug_assert!(lo <= hi);
        let mid = 0.5 * (lo + hi);
        // mid is within the interval hull; max distance to either endpoint
        let r = add_up((hi - mid).max(mid - lo), half_ulp(mid));
        Ball::new(mid, r.max(0.0))
    }

    /// `pi` as a ball (the f64 constant is within half an ulp of pi).
    pub fn pi() -> Ball {
        Ball::new(std::f64::consts::PI, half_ulp(std::f64::consts::PI))
    }

    /// Euler-Mascheroni constant.
    pub fn euler_gamma() -> Ball {
        // 0.57721566490153286060651209008240243104... ; the f64 literal below is
        // the nearest double, so a half-ulp radius covers the true value.
        let g = 0.5772156649015328606065120900824024310422_f64;
        Ball::new(g, half_ulp(g))
    }

    pub fn ln_2() -> Ball {
        let l = std::f64::consts::LN_2;
        Ball::new(l, half_ulp(l))
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        if self.rad == 0.0 { self.mid } else { (self.mid - self.rad).next_down() }
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        if self.rad == 0.0 { self.mid } else { (self.mid + self.rad).next_up() }
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        (x - self.mid).abs() <= self.rad
    }

    pub fn contains_ball(&self, other: &Ball) -> bool {
        other.hi() <= self.hi() && other.lo() >= self.lo()
    }

    pub fn overlaps(&self, other: &Ball) -> bool {
        (self.mid - other.mid).abs() <= self.rad + other.rad
    }

    #[inline]
    pub fn is_finite(&self) -> bool {
        self.mid.is_finite() && self.rad.is_finite()
    }

    /// Upper bound for `|x|` over the ball.
    #[inline]
    pub fn mag(&self) -> f64 {
        add_up(self.mid.abs(), self.rad)
    }

    /// Lower bound for `|x|` over the ball (0 if the ball straddles 0).
    #[inline]
    pub fn mig(&self) -> f64 {
        let m = self.mid.abs() - self.rad;
        if m > 0.0 { m.next_down() } else { 0.0 }
    }

    #[inline]
    pub fn is_positive(&self) -> bool {
        self.lo() > 0.0
    }

    #[inline]
    pub fn is_negative(&self) -> bool {
        self.hi() < 0.0
    }

    #[inline]
    pub fn sign_definite(&self) -> bool {
        self.is_positive() || self.is_negative()
    }

    #[inline]
    pub fn neg(&self) -> Ball {
        Ball::new(-self.mid, self.rad)
    }

    pub fn add(&self, o: &Ball) -> Ball {
        let mid = self.mid + o.mid;
        if self.rad == 0.0 && o.rad == 0.0 && mid - self.mid == o.mid && mid - o.mid == self.mid {
            return Ball::exact(mid);
        }
        Ball::new(mid, add_up(add_up(self.rad, o.rad), half_ulp(mid)))
    }

    pub fn sub(&self, o: &Ball) -> Ball {
        self.add(&o.neg())
    }

    pub fn add_f64(&self, x: f64) -> Ball {
        self.add(&Ball::exact(x))
    }

    pub fn mul(&self, o: &Ball) -> Ball {
        let mid = self.mid * o.mid;
        if self.rad == 0.0 && o.rad == 0.0 && self.mid.mul_add(o.mid, -mid) == 0.0 {
            return Ball::exact(mid);
        }
        let r = add_up(
            add_up(mul_up(self.mid.abs(), o.rad), mul_up(o.mid.abs(), self.rad)),
            add_up(mul_up(self.rad, o.rad), half_ulp(mid)),
        );
        Ball::new(mid, r)
    }

    pub fn mul_f64(&self, x: f64) -> Ball {
        let mid = self.mid * x;
        if self.rad == 0.0 && self.mid.mul_add(x, -mid) == 0.0 {
            return Ball::exact(mid);
        }
        Ball::new(mid, add_up(mul_up(self.rad, x.abs()), half_ulp(mid)))
    }

    pub fn square(&self) -> Ball {
        self.mul(self)
    }

    pub fn recip(&self) -> Result<Ball> {
        let b = self.mid.abs();
        if b <= self.rad {
            return Err(Error::DomainError("division by a ball containing zero".into()));
        }
        let mid = 1.0 / self.mid;
        // |1/x' - 1/m| <= r / (|m| (|m| - r))
        let den = (b * (b - self.rad)).next_down();
        let r = add_up(div_up(self.rad, den), half_ulp(mid));
        Ok(Ball::new(mid, r))
    }

    pub fn div(&self, o: &Ball) -> Result<Ball> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn abs(&self) -> Ball {
        if self.mid.abs() >= self.rad {
            Ball::new(self.mid.abs(), self.rad)
        } else {
            // straddles zero: |x| in [0, |mid| + rad]
            let hi = add_up(self.mid.abs(), self.rad);
            Ball::from_endpoints(0.0, hi)
        }
    }

    pub fn sqrt(&self) -> Result<Ball> {
        if self.lo() < 0.0 {
            return Err(Error::DomainError(format!("sqrt of possibly negative ball {self}")));
        }
        let lo = self.lo().sqrt().next_down().max(0.0);
        let hi = up(self.hi().sqrt());
        Ok(Ball::from_endpoints(lo, hi))
    }

    pub fn exp(&self) -> Ball {
        let lo = self.lo().exp();
        let hi = self.hi().exp();
        let lo = (lo - libm_slack(lo)).max(0.0);
        let hi = hi + libm_slack(hi);
        Ball::from_endpoints(lo, hi)
    }

    pub fn ln(&self) -> Result<Ball> {
        if self.lo() <= 0.0 {
            return Err(Error::DomainError(format!("log of nonpositive ball {self}")));
        }
        let lo = self.lo().ln();
        let hi = self.hi().ln();
        Ok(Ball::from_endpoints(lo - libm_slack(lo), hi + libm_slack(hi)))
    }

    /// Sine with the 1-Lipschitz bound; adequate for moderate |mid|.
    pub fn sin(&self) -> Ball {
        let mid = self.mid.sin();
        Ball::new(mid, add_up(self.rad, libm_slack(1.0)))
    }

    pub fn cos(&self) -> Ball {
        let mid = self.mid.cos();
        Ball::new(mid, add_up(self.rad, libm_slack(1.0)))
    }

    pub fn atan(&self) -> Ball {
        let mid = self.mid.atan();
        Ball::new(mid, add_up(self.rad, libm_slack(mid)))
    }

    /// `x^y` for positive base via exp(y ln x).
    pub fn powf(&self, y: &Ball) -> Result<Ball> {
        Ok(self.ln()?.mul(y).exp())
    }

    /// Integer power by repeated squaring (valid for any sign of base).
    pub fn powi(&self, mut n: u32) -> Ball {
        let mut base = *self;
        let mut acc = Ball::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            n >>= 1;
        }
        acc
    }

    /// Ball enclosing both inputs.
    pub fn hull(&self, o: &Ball) -> Ball {
        Ball::from_endpoints(self.lo().min(o.lo()), self.hi().max(o.hi()))
    }

    /// Widen the radius by `extra` (upward-rounded).
    pub fn inflate(&self, extra: f64) -> Ball {
        Ball::new(self.mid, add_up(self.rad, extra))
    }

    pub fn min_upper(&self, o: &Ball) -> f64 {
        self.hi().min(o.hi())
    }

    /// Certified strict comparison: every point of self < every point of o.
    pub fn lt(&self, o: &Ball) -> bool {
        self.hi() < o.lo()
    }

    pub fn le(&self, o: &Ball) -> bool {
        self.hi() <= o.lo()
    }
}

/// A complex number known to lie in the closed disc `|z - mid| <= rad`.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CBall {
    pub mid: Complex64,
    pub rad: f64,
}

impl fmt::Debug for CBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i) +/- {:.3e}", self.mid.re, self.mid.im, self.rad)
    }
}

impl fmt::Display for CBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i) +/- {:.3e}", self.mid.re, self.mid.im, self.rad)
    }
}

/// Upper bound for |z| including the rounding of hypot.
#[inline]
fn mag_up(z: Complex64) -> f64 {
    let m = z.re.hypot(z.im);
    m + libm_slack(m)
}

impl CBall {
    pub const ZERO: CBall = CBall { mid: Complex64 { re: 0.0, im: 0.0 }, rad: 0.0 };
    pub const ONE: CBall = CBall { mid: Complex64 { re: 1.0, im: 0.0 }, rad: 0.0 };
    pub const I: CBall = CBall { mid: Complex64 { re: 0.0, im: 1.0 }, rad: 0.0 };

    #[inline]
    pub fn new(mid: Complex64, rad: f64) -> CBall {
        CBall { mid, rad }
    }

    #[inline]
    pub fn exact(re: f64, im: f64) -> CBall {
        CBall { mid: Complex64::new(re, im), rad: 0.0 }
    }

    pub fn from_parts(re: &Ball, im: &Ball) -> CBall {
        if re.rad == 0.0 && im.rad == 0.0 {
            return CBall::new(Complex64::new(re.mid, im.mid), 0.0);
        }
        let r = re.rad.hypot(im.rad);
        CBall::new(Complex64::new(re.mid, im.mid), add_up(r, libm_slack(r)))
    }

    pub fn from_real(b: &Ball) -> CBall {
        CBall::new(Complex64::new(b.mid, 0.0), b.rad)
    }

    /// Real part (valid: |Re(z) - Re(mid)| <= |z - mid|).
    pub fn re(&self) -> Ball {
        Ball::new(self.mid.re, self.rad)
    }

    pub fn im(&self) -> Ball {
        Ball::new(self.mid.im, self.rad)
    }

    #[inline]
    pub fn is_finite(&self) -> bool {
        self.mid.re.is_finite() && self.mid.im.is_finite() && self.rad.is_finite()
    }

    /// Upper bound for |z| over the disc.
    pub fn mag(&self) -> f64 {
        add_up(mag_up(self.mid), self.rad)
    }

    /// Lower bound for |z| over the disc.
    pub fn mig(&self) -> f64 {
        let m = self.mid.re.hypot(self.mid.im);
        let m = (m - libm_slack(m)).next_down();
        if m > self.rad { (m - self.rad).next_down() } else { 0.0 }
    }

    pub fn contains_zero(&self) -> bool {
        self.mig() == 0.0
    }

    /// |z| as a real ball.
    pub fn abs(&self) -> Ball {
        Ball::from_endpoints(self.mig(), self.mag())
    }

    pub fn conj(&self) -> CBall {
        CBall::new(self.mid.conj(), self.rad)
    }

    #[inline]
    pub fn neg(&self) -> CBall {
        CBall::new(-self.mid, self.rad)
    }

    fn is_exact_zero(&self) -> bool {
        self.rad == 0.0 && self.mid.re == 0.0 && self.mid.im == 0.0
    }

    pub fn add(&self, o: &CBall) -> CBall {
        if self.is_exact_zero() {
            return *o;
        }
        if o.is_exact_zero() {
            return *self;
        }
        let mid = self.mid + o.mid;
        let round = ulp(mid.re).max(ulp(mid.im));
        CBall::new(mid, add_up(add_up(self.rad, o.rad), round))
    }

    pub fn sub(&self, o: &CBall) -> CBall {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &CBall) -> CBall {
        if self.is_exact_zero() || o.is_exact_zero() {
            return CBall::ZERO;
        }
        let mid = self.mid * o.mid;
        let ma = mag_up(self.mid);
        let mb = mag_up(o.mid);
        // the center components are two products and one add each; their
        // rounding is bounded on the scale of |a||b|, not of the result
        let round = 4.0 * ulp(mul_up(ma, mb));
        let r = add_up(
            add_up(mul_up(ma, o.rad), mul_up(mb, self.rad)),
            add_up(mul_up(self.rad, o.rad), round),
        );
        CBall::new(mid, r)
    }

    pub fn mul_f64(&self, x: f64) -> CBall {
        let mid = self.mid * x;
        CBall::new(mid, add_up(mul_up(self.rad, x.abs()), ulp(mag_up(mid))))
    }

    pub fn mul_ball(&self, b: &Ball) -> CBall {
        self.mul(&CBall::from_real(b))
    }

    pub fn mul_i(&self) -> CBall {
        CBall::new(Complex64::new(-self.mid.im, self.mid.re), self.rad)
    }

    pub fn square(&self) -> CBall {
        self.mul(self)
    }

    pub fn recip(&self) -> Result<CBall> {
        let b = self.mid.re.hypot(self.mid.im);
        let b_lo = (b - libm_slack(b)).next_down();
        if b_lo <= self.rad {
            return Err(Error::DomainError("complex division by a disc containing zero".into()));
        }
        let mid = self.mid.inv();
        let den = (b_lo * (b_lo - self.rad)).next_down();
        let r = add_up(div_up(self.rad, den), 5.0 * ulp(mag_up(mid)));
        Ok(CBall::new(mid, r))
    }

    pub fn div(&self, o: &CBall) -> Result<CBall> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn exp(&self) -> CBall {
        // |e^(z+d) - e^z| <= e^Re(z) (e^|d| - 1) <= e^(Re z + r) * r for r <= ... (use exp_m1 bound)
        let mid = self.mid.exp();
        let scale = up((self.mid.re + self.rad).exp() * (1.0 + libm_slack(1.0)));
        let prop = mul_up(scale, self.rad);
        let round = 4.0 * ulp(mag_up(mid));
        CBall::new(mid, add_up(prop, round))
    }

    /// Principal logarithm. The disc must not intersect the closed negative
    /// real axis (including 0), so the principal branch is continuous on it.
    pub fn ln(&self) -> Result<CBall> {
        let m = self.mig();
        if m == 0.0 {
            return Err(Error::DomainError("log of a disc containing zero".into()));
        }
        if self.mid.re < 0.0 && self.mid.im.abs() <= self.rad {
            return Err(Error::BranchCutHit(format!("log branch cut crossed by {self}")));
        }
        let mid = self.mid.ln();
        // Lipschitz constant of log on the disc is 1 / (|mid| - rad)
        let prop = div_up(self.rad, m);
        let round = 4.0 * ulp(mag_up(mid).max(1.0));
        Ok(CBall::new(mid, add_up(prop, round)))
    }

    /// ln |z| as a real ball (branch-free).
    pub fn ln_abs(&self) -> Result<Ball> {
        self.abs().ln()
    }

    /// Principal argument; same cut requirement as `ln`.
    pub fn arg(&self) -> Result<Ball> {
        Ok(self.ln()?.im())
    }

    /// Principal power z^w.
    pub fn powc(&self, w: &CBall) -> Result<CBall> {
        Ok(self.ln()?.mul(w).exp())
    }

    /// Principal power with real exponent.
    pub fn powf(&self, y: &Ball) -> Result<CBall> {
        Ok(self.ln()?.mul_ball(y).exp())
    }

    pub fn powi(&self, mut n: u32) -> CBall {
        let mut base = *self;
        let mut acc = CBall::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            n >>= 1;
        }
        acc
    }

    pub fn sqrt(&self) -> Result<CBall> {
        Ok(self.ln()?.mul_f64(0.5).exp())
    }

    pub fn inflate(&self, extra: f64) -> CBall {
        CBall::new(self.mid, add_up(self.rad, extra))
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.mid).norm() <= self.rad
    }

    /// Distance between centers bounded by sum of radii.
    pub fn overlaps(&self, o: &CBall) -> bool {
        (self.mid - o.mid).norm() <= self.rad + o.rad + ulp(1.0)
    }
}
