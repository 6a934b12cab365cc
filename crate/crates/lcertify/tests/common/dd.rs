//! Double-double arithmetic for the doubled-precision test oracles.
//!
//! Classic error-free transformations (two_sum / two_prod with FMA) giving
//! ~31 significant digits. Only what the oracles need: field ops, sqrt, exp,
//! ln, atan/atan2, and a complex layer with principal log.

#![allow(dead_code)]

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd { hi: 3.141592653589793, lo: 1.2246467991473532e-16 };
    pub const LN2: Dd = Dd { hi: 0.6931471805599453, lo: 2.3190468138462996e-17 };
    /// 0.5 * ln(2 pi)
    pub const LN_SQRT_2PI: Dd = Dd { hi: 0.9189385332046727, lo: 5.144609542127325e-17 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn from_i64(n: i64) -> Dd {
        Dd { hi: n as f64, lo: (n - (n as f64) as i64) as f64 }
    }

    pub fn ratio(p: i64, q: i64) -> Dd {
        Dd::from_i64(p).div(Dd::from_i64(q))
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) { self.neg() } else { self }
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s2, e2) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s2, e2 + f);
        Dd { hi, lo }
    }

    pub fn add_f64(self, x: f64) -> Dd {
        self.add(Dd::from_f64(x))
    }

    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn mul_f64(self, x: f64) -> Dd {
        self.mul(Dd::from_f64(x))
    }

    pub fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul_f64(q1));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul_f64(q2));
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add_f64(q3)
    }

    pub fn recip(self) -> Dd {
        Dd::ONE.div(self)
    }

    pub fn sqr(self) -> Dd {
        self.mul(self)
    }

    pub fn powi(self, n: i32) -> Dd {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut acc = Dd::ONE;
        let mut base = self;
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.sqr();
            k >>= 1;
        }
        acc
    }

    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        let s0 = self.hi.sqrt();
        // one Newton step in dd: s = (s0 + x/s0)/2
        let s = Dd::from_f64(s0).add(self.div(Dd::from_f64(s0))).mul_f64(0.5);
        s
    }

    pub fn exp(self) -> Dd {
        let k = (self.to_f64() / std::f64::consts::LN_2).round();
        let r = self.sub(Dd::LN2.mul_f64(k));
        // scale down by 512, Taylor, then square 9 times
        let r = r.mul_f64(1.0 / 512.0);
        let mut term = r;
        let mut sum = Dd::ONE.add(r);
        let mut fact = 1.0f64;
        for i in 2..=18 {
            fact *= i as f64;
            term = term.mul(r);
            let t = term.div(Dd::from_f64(fact));
            sum = sum.add(t);
            if t.hi.abs() < 1e-35 * sum.hi.abs() {
                break;
            }
        }
        for _ in 0..9 {
            sum = sum.sqr();
        }
        // scale by 2^k
        let scale = 2f64.powi(k as i32);
        sum.mul_f64(scale)
    }

    pub fn ln(self) -> Dd {
        assert!(self.hi > 0.0, "dd ln of nonpositive value");
        let y0 = Dd::from_f64(self.hi.ln());
        // Newton: y <- y + x exp(-y) - 1
        let y1 = y0.add(self.mul(y0.neg().exp())).add_f64(-1.0);
        y1.add(self.mul(y1.neg().exp())).add_f64(-1.0)
    }

    /// ln(n) for integer n.
    pub fn ln_u64(n: u64) -> Dd {
        Dd::from_i64(n as i64).ln()
    }

    pub fn atan(self) -> Dd {
        // reduce |t| <= ~0.13 by three halvings: atan t = 2 atan(t/(1+sqrt(1+t^2)))
        let neg = self.hi < 0.0;
        let mut t = self.abs();
        let big = t.hi > 1.0;
        if big {
            t = t.recip();
        }
        let mut halvings = 0;
        for _ in 0..3 {
            let root = Dd::ONE.add(t.sqr()).sqrt();
            t = t.div(Dd::ONE.add(root));
            halvings += 1;
        }
        // Taylor
        let t2 = t.sqr();
        let mut term = t;
        let mut sum = t;
        let mut k = 1i64;
        loop {
            term = term.mul(t2).neg();
            k += 2;
            let add = term.div(Dd::from_i64(k));
            sum = sum.add(add);
            if add.hi.abs() < 1e-35 * sum.hi.abs().max(1e-30) || k > 99 {
                break;
            }
        }
        for _ in 0..halvings {
            sum = sum.mul_f64(2.0);
        }
        let mut out = if big { Dd::PI.mul_f64(0.5).sub(sum) } else { sum };
        if neg {
            out = out.neg();
        }
        out
    }

    pub fn atan2(y: Dd, x: Dd) -> Dd {
        if x.hi > 0.0 {
            y.div(x).atan()
        } else if y.hi > 0.0 {
            Dd::PI.mul_f64(0.5).sub(x.div(y).atan())
        } else if y.hi < 0.0 {
            Dd::PI.mul_f64(-0.5).sub(x.div(y).atan())
        } else {
            // x <= 0, y ~ 0: on the cut; oracles never need this
            panic!("dd atan2 on the branch cut");
        }
    }

    pub fn lt(self, o: Dd) -> bool {
        self.hi < o.hi || (self.hi == o.hi && self.lo < o.lo)
    }
}

/// Complex double-double.
#[derive(Clone, Copy, Debug)]
pub struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub const ZERO: Cdd = Cdd { re: Dd::ZERO, im: Dd::ZERO };
    pub const ONE: Cdd = Cdd { re: Dd::ONE, im: Dd::ZERO };

    pub fn new(re: Dd, im: Dd) -> Cdd {
        Cdd { re, im }
    }

    pub fn from_f64(re: f64, im: f64) -> Cdd {
        Cdd { re: Dd::from_f64(re), im: Dd::from_f64(im) }
    }

    pub fn to_c64(self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn add(self, o: Cdd) -> Cdd {
        Cdd { re: self.re.add(o.re), im: self.im.add(o.im) }
    }

    pub fn sub(self, o: Cdd) -> Cdd {
        Cdd { re: self.re.sub(o.re), im: self.im.sub(o.im) }
    }

    pub fn neg(self) -> Cdd {
        Cdd { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(self) -> Cdd {
        Cdd { re: self.re, im: self.im.neg() }
    }

    pub fn mul(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    pub fn mul_dd(self, s: Dd) -> Cdd {
        Cdd { re: self.re.mul(s), im: self.im.mul(s) }
    }

    pub fn norm_sqr(self) -> Dd {
        self.re.sqr().add(self.im.sqr())
    }

    pub fn div(self, o: Cdd) -> Cdd {
        let d = o.norm_sqr();
        let n = self.mul(o.conj());
        Cdd { re: n.re.div(d), im: n.im.div(d) }
    }

    pub fn recip(self) -> Cdd {
        Cdd::ONE.div(self)
    }

    pub fn abs(self) -> Dd {
        self.norm_sqr().sqrt()
    }

    /// Principal log; requires the argument off the closed negative real axis.
    pub fn ln(self) -> Cdd {
        Cdd { re: self.norm_sqr().ln().mul_f64(0.5), im: Dd::atan2(self.im, self.re) }
    }

    pub fn exp(self) -> Cdd {
        // e^re (cos im, sin im): only needed for small |im| in the oracles;
        // use sin/cos via atan-free Taylor after range reduction with PI
        let m = self.re.exp();
        let (c, s) = sincos(self.im);
        Cdd { re: m.mul(c), im: m.mul(s) }
    }

    pub fn powi(self, n: i32) -> Cdd {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut acc = Cdd::ONE;
        let mut base = self;
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            k >>= 1;
        }
        acc
    }
}

/// sin/cos by Taylor after reduction mod 2 pi (adequate for |x| < ~1e6).
pub fn sincos(x: Dd) -> (Dd, Dd) {
    let two_pi = Dd::PI.mul_f64(2.0);
    let k = (x.to_f64() / (2.0 * std::f64::consts::PI)).round();
    let mut r = x.sub(two_pi.mul_f64(k));
    // now |r| <= ~pi; halve three times and use double-angle back up
    let mut halvings = 0;
    while r.hi.abs() > 0.4 {
        r = r.mul_f64(0.5);
        halvings += 1;
        if halvings > 4 {
            break;
        }
    }
    let r2 = r.sqr();
    // sin
    let mut term = r;
    let mut s = r;
    let mut fact = 1.0f64;
    for i in 1..=20 {
        fact *= ((2 * i) * (2 * i + 1)) as f64;
        term = term.mul(r2).neg();
        let add = term.div(Dd::from_f64(fact));
        s = s.add(add);
        if add.hi.abs() < 1e-36 {
            break;
        }
    }
    // cos
    let mut term = Dd::ONE;
    let mut c = Dd::ONE;
    let mut fact = 1.0f64;
    for i in 1..=20 {
        fact *= ((2 * i - 1) * (2 * i)) as f64;
        term = term.mul(r2).neg();
        let add = term.div(Dd::from_f64(fact));
        c = c.add(add);
        if add.hi.abs() < 1e-36 {
            break;
        }
    }
    for _ in 0..halvings {
        let s2 = s.mul(c).mul_f64(2.0);
        let c2 = c.sqr().sub(s.sqr());
        s = s2;
        c = c2;
    }
    (c, s)
}

#[cfg(test)]
mod dd_selftest {
    use super::*;

    #[test]
    fn dd_identities() {
        let e = Dd::ONE.exp();
        assert!((e.to_f64() - std::f64::consts::E).abs() < 1e-15);
        let l = e.ln();
        assert!((l.to_f64() - 1.0).abs() < 1e-28, "ln e = {l:?}");
        let pi4 = Dd::ONE.atan();
        assert!((pi4.sub(Dd::PI.mul_f64(0.25)).to_f64()).abs() < 1e-30);
        let r = Dd::ratio(1, 3).mul_f64(3.0);
        assert!((r.to_f64() - 1.0).abs() < 1e-30);
        let s = Dd::from_f64(2.0).sqrt().sqr();
        assert!((s.to_f64() - 2.0).abs() < 1e-30);
    }
}
