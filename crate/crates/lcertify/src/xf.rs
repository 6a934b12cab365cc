//! Fixed-precision big floats for the residue-chain accumulation.
//!
//! The kernel G(u) is a doubly-exponentially cancelling residue sum: partial
//! sums reach exp(f e^(u/(f lambda))) while the value is tiny, which no
//! double-precision scheme survives. This module provides value = mant * 2^exp
//! floats over `BigInt` with truncation to a working precision, plus the few
//! transcendental kernels the chains need (exp, sin/cos of real arguments and
//! the constants pi and ln 2). Errors are tracked *outside* the values as
//! absolute bounds in log2 form; all public entry points return both.
//!
//! Only the chain evaluator uses this module; the crate-wide numeric contract
//! remains f64 balls.

use num_bigint::{BigInt, Sign};

/// Sign-magnitude big float: value = mant * 2^exp (mant = 0 encodes zero).
#[derive(Clone, Debug)]
pub struct Xf {
    pub mant: BigInt,
    pub exp: i64,
}

impl Xf {
    pub fn zero() -> Xf {
        Xf { mant: BigInt::from(0), exp: 0 }
    }

    pub fn one() -> Xf {
        Xf { mant: BigInt::from(1), exp: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.sign() == Sign::NoSign
    }

    pub fn from_f64(x: f64) -> Xf {
        assert!(x.is_finite());
        if x == 0.0 {
            return Xf::zero();
        }
        let bits = x.to_bits();
        let sign = if x < 0.0 { -1 } else { 1 };
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (frac, -1074i64)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        Xf { mant: BigInt::from(sign) * BigInt::from(m), exp: e }
    }

    pub fn from_i64(n: i64) -> Xf {
        Xf { mant: BigInt::from(n), exp: 0 }
    }

    pub fn neg(&self) -> Xf {
        Xf { mant: -self.mant.clone(), exp: self.exp }
    }

    pub fn bit_len(&self) -> u64 {
        self.mant.bits()
    }

    /// log2 |value|, approximate to ~1e-9 (minus infinity for zero).
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.mant.bits();
        // top 64 bits of |mant|
        let m = self.mant.magnitude();
        let top = if bits <= 64 {
            let digs = m.to_u64_digits();
            digs.last().copied().unwrap_or(0) as f64 * 2f64.powi(((digs.len() - 1) * 64) as i32)
        } else {
            let shifted: num_bigint::BigUint = m >> (bits - 54);
            let v = shifted.to_u64_digits()[0] as f64;
            return v.log2() + (bits - 54) as f64 + self.exp as f64;
        };
        top.log2() + self.exp as f64
    }

    /// Convert to f64 (to nearest-ish; saturates outside range).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let l2 = self.log2_abs();
        if l2 > 1023.0 {
            return if self.mant.sign() == Sign::Minus { f64::NEG_INFINITY } else { f64::INFINITY };
        }
        if l2 < -1070.0 {
            return 0.0;
        }
        let bits = self.mant.bits();
        if bits <= 53 {
            let digs = self.mant.magnitude().to_u64_digits();
            let v = digs.first().copied().unwrap_or(0) as f64;
            let s = if self.mant.sign() == Sign::Minus { -v } else { v };
            return s * 2f64.powi(self.exp.clamp(-1074, 1023) as i32);
        }
        let shift = bits - 53;
        let top: num_bigint::BigUint = self.mant.magnitude() >> shift;
        let v = top.to_u64_digits()[0] as f64;
        let s = if self.mant.sign() == Sign::Minus { -v } else { v };
        let e = self.exp + shift as i64;
        // exp may exceed powi range in steps; split
        let mut out = s;
        let mut rem = e;
        while rem > 1000 {
            out *= 2f64.powi(1000);
            rem -= 1000;
        }
        while rem < -1000 {
            out *= 2f64.powi(-1000);
            rem += 1000;
        }
        out * 2f64.powi(rem as i32)
    }

    /// Truncate to at most p mantissa bits (toward zero).
    /// Returns the truncation error bound in log2 form (-inf when exact).
    pub fn trunc(&mut self, p: u32) -> f64 {
        let bits = self.mant.bits();
        if bits <= p as u64 {
            return f64::NEG_INFINITY;
        }
        let shift = bits - p as u64;
        // shift of the magnitude truncates toward zero
        let mag = self.mant.magnitude() >> shift;
        let neg = self.mant.sign() == Sign::Minus;
        self.mant = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, mag);
        self.exp += shift as i64;
        // dropped < 2^shift at old scale = 2^exp_new
        self.exp as f64
    }

    /// Exact shift: value * 2^k.
    pub fn shl(&self, k: i64) -> Xf {
        Xf { mant: self.mant.clone(), exp: self.exp + k }
    }

    pub fn add(&self, o: &Xf, p: u32) -> (Xf, f64) {
        if self.is_zero() {
            return (o.clone(), f64::NEG_INFINITY);
        }
        if o.is_zero() {
            return (self.clone(), f64::NEG_INFINITY);
        }
        // align exponents; cap the shift so a vastly smaller addend becomes error
        let (hi, lo) = if self.exp >= o.exp { (self, o) } else { (o, self) };
        let diff = hi.exp - lo.exp;
        let hi_bits = hi.mant.bits() as i64;
        let lo_bits = lo.mant.bits() as i64;
        if diff > (p as i64) + 8 + (hi_bits - lo_bits).max(0) + lo_bits {
            // lo is negligible: |lo| < 2^(lo.exp + lo_bits) absorbed as error
            let mut v = hi.clone();
            let e = v.trunc(p);
            let abs_err = combine_log2(e, (lo.exp + lo_bits) as f64);
            return (v, abs_err);
        }
        let mant = (hi.mant.clone() << diff as u64) + &lo.mant;
        let mut v = Xf { mant, exp: lo.exp };
        let e = v.trunc(p);
        (v, e)
    }

    pub fn sub(&self, o: &Xf, p: u32) -> (Xf, f64) {
        self.add(&o.neg(), p)
    }

    pub fn mul(&self, o: &Xf, p: u32) -> (Xf, f64) {
        if self.is_zero() || o.is_zero() {
            return (Xf::zero(), f64::NEG_INFINITY);
        }
        let mut v = Xf { mant: &self.mant * &o.mant, exp: self.exp + o.exp };
        let e = v.trunc(p);
        (v, e)
    }

    pub fn mul_i64(&self, k: i64, p: u32) -> (Xf, f64) {
        let mut v = Xf { mant: &self.mant * BigInt::from(k), exp: self.exp };
        let e = v.trunc(p);
        (v, e)
    }

    /// Division with p + 16 quotient bits; error <= 1 ulp of the result.
    pub fn div(&self, o: &Xf, p: u32) -> (Xf, f64) {
        assert!(!o.is_zero(), "xf division by zero");
        if self.is_zero() {
            return (Xf::zero(), f64::NEG_INFINITY);
        }
        let want = p as i64 + 16;
        let have = self.mant.bits() as i64 - o.mant.bits() as i64;
        let up = (want - have).max(0) as u64;
        let num = self.mant.clone() << up;
        let q = &num / &o.mant;
        let mut v = Xf { mant: q, exp: self.exp - up as i64 - o.exp };
        let ulp = v.exp as f64; // quotient truncation <= 1 at current scale
        let e = v.trunc(p);
        (v, combine_log2(ulp, e))
    }

    pub fn div_u32(&self, k: u32, p: u32) -> (Xf, f64) {
        self.div(&Xf::from_i64(k as i64), p)
    }
}

/// log2(2^a + 2^b) with -inf identities.
pub fn combine_log2(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let m = a.max(b);
    m + (1.0 + 2f64.powf(-(a - b).abs())).log2()
}

/// Sum of error magnitudes in log2 space.
pub fn combine_many(errs: &[f64]) -> f64 {
    errs.iter().copied().fold(f64::NEG_INFINITY, combine_log2)
}

// ---------------------------------------------------------------------------
// Transcendental kernels
// ---------------------------------------------------------------------------

/// Working context at precision p, with the cached constants.
pub struct XCtx {
    pub p: u32,
    pub pi: Xf,
    pub ln2: Xf,
    /// log2 of the absolute error of the stored constants.
    pub const_err: f64,
}

impl XCtx {
    pub fn new(p: u32) -> XCtx {
        let guard = p + 64;
        let pi = machin_pi(guard);
        let ln2 = atanh_ln2(guard);
        XCtx { p, pi, ln2, const_err: -(guard as f64) + 8.0 }
    }

    /// exp(x) given |x| <= ~20000, with total absolute error bound (log2).
    pub fn exp(&self, x: &Xf, x_err: f64) -> (Xf, f64) {
        let p = self.p;
        let xf = x.to_f64();
        assert!(xf.abs() < 20000.0, "xf exp argument too large: {xf}");
        let k = (xf / std::f64::consts::LN_2).round() as i64;
        let (kl, e1) = self.ln2.mul_i64(k, p + 32);
        let (mut r, e2) = x.sub(&kl, p + 32);
        // scale r by 2^-9 and Taylor; then square 9 times
        r = r.shl(-9);
        let mut term = Xf::one();
        let mut sum = Xf::one();
        let mut errs =
            vec![e1 - 9.0, e2 - 9.0, self.const_err + (k.abs() as f64 + 1.0).log2() - 9.0];
        let mut n = 0u32;
        loop {
            n += 1;
            let (t1, a) = term.mul(&r, p + 16);
            let (t2, b) = t1.div_u32(n, p + 16);
            term = t2;
            let (s, c) = sum.add(&term, p + 16);
            sum = s;
            errs.push(combine_many(&[a, b, c]));
            if term.log2_abs() < -(p as f64) - 16.0 || n > 4000 {
                break;
            }
        }
        // Taylor tail: next term bound
        errs.push(term.log2_abs().max(-(p as f64) - 16.0) + 1.0);
        // error so far is on r-scale; exp amplifies by ~e^r <= 2, squaring by 2
        let mut err = combine_many(&errs) + 2.0;
        for _ in 0..9 {
            let (s2, e) = sum.mul(&sum, p + 16);
            // relative error doubles per squaring; track on value scale
            err = combine_log2(err + sum.log2_abs() + 1.0, e);
            err -= sum.log2_abs(); // keep err relative-ish... convert below
            sum = s2;
        }
        // convert the (approximately relative) bound to absolute on the result,
        // and add the argument error amplified through exp (|d e^x| = e^x |dx|)
        let abs_err = combine_log2(err + sum.log2_abs() + 2.0, x_err + sum.log2_abs() + 1.0);
        let out = sum.shl(k);
        (out, abs_err + k as f64)
    }

    /// (cos x, sin x) for |x| <= ~1e6, absolute error bound (log2) shared.
    pub fn sincos(&self, x: &Xf, x_err: f64) -> (Xf, Xf, f64) {
        let p = self.p;
        let xf = x.to_f64();
        let k = (xf / (2.0 * std::f64::consts::PI)).round() as i64;
        let (two_pi_k, e1) = self.pi.shl(1).mul_i64(k, p + 32);
        let (mut r, e2) = x.sub(&two_pi_k, p + 32);
        let mut halvings = 0;
        while r.log2_abs() > -1.5 {
            r = r.shl(-1);
            halvings += 1;
            if halvings > 4 {
                break;
            }
        }
        let (r2, e3) = r.mul(&r, p + 16);
        // sin series
        let mut term = r.clone();
        let mut s = r.clone();
        let mut errs = vec![e1, e2, e3, x_err, self.const_err + (k.abs() as f64 + 1.0).log2()];
        let mut n = 1u32;
        loop {
            let (t1, a) = term.mul(&r2, p + 16);
            let (t2, b) = t1.div_u32((n + 1) * (n + 2), p + 16);
            term = t2.neg();
            n += 2;
            let (sn, c) = s.add(&term, p + 16);
            s = sn;
            errs.push(combine_many(&[a, b, c]));
            if term.log2_abs() < -(p as f64) - 16.0 || n > 4000 {
                break;
            }
        }
        errs.push(term.log2_abs().max(-(p as f64) - 16.0));
        // cos series
        let mut term = Xf::one();
        let mut c = Xf::one();
        let mut n = 0u32;
        loop {
            let (t1, a) = term.mul(&r2, p + 16);
            let (t2, b) = t1.div_u32((n + 1) * (n + 2), p + 16);
            term = t2.neg();
            n += 2;
            let (cn, d) = c.add(&term, p + 16);
            c = cn;
            errs.push(combine_many(&[a, b, d]));
            if term.log2_abs() < -(p as f64) - 16.0 || n > 4000 {
                break;
            }
        }
        errs.push(term.log2_abs().max(-(p as f64) - 16.0));
        let mut err = combine_many(&errs);
        for _ in 0..halvings {
            // s <- 2 s c ; c <- c^2 - s^2 ; errors at most double plus rounding
            let (s2, a) = s.mul(&c, p + 16);
            let s2 = s2.shl(1);
            let (cc, b) = c.mul(&c, p + 16);
            let (ss, d) = s.mul(&s, p + 16);
            let (c2, e) = cc.sub(&ss, p + 16);
            s = s2;
            c = c2;
            err = combine_many(&[err + 2.0, a + 1.0, b, d, e]);
        }
        (c, s, err)
    }
}

/// pi * 2^bits via Machin's formula with exact integer arithmetic.
fn machin_pi(bits: u32) -> Xf {
    fn atan_inv(x: u64, bits: u32) -> BigInt {
        let one = BigInt::from(1) << bits;
        let x2 = BigInt::from(x) * BigInt::from(x);
        let mut denom_pow = BigInt::from(x);
        let mut k = 0u64;
        let mut acc = BigInt::from(0);
        loop {
            let term = (&one / &denom_pow) / BigInt::from(2 * k + 1);
            if term.sign() == Sign::NoSign {
                break;
            }
            if k % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
            denom_pow *= &x2;
            k += 1;
        }
        acc
    }
    let v = atan_inv(5, bits) * 16 - atan_inv(239, bits) * 4;
    Xf { mant: v, exp: -(bits as i64) }
}

/// ln 2 = 2 atanh(1/3) via the (positive) series, exact integer arithmetic.
fn atanh_ln2(bits: u32) -> Xf {
    let one = BigInt::from(1) << bits;
    let nine = BigInt::from(9);
    let mut denom_pow = BigInt::from(3);
    let mut k = 0u64;
    let mut acc = BigInt::from(0);
    loop {
        let term = (&one / &denom_pow) / BigInt::from(2 * k + 1);
        if term.sign() == Sign::NoSign {
            break;
        }
        acc += term;
        denom_pow *= &nine;
        k += 1;
    }
    Xf { mant: acc * 2, exp: -(bits as i64) }
}

// ---------------------------------------------------------------------------
// Complex layer with a single absolute error bound (log2 of |error vector|)
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct Xc {
    pub re: Xf,
    pub im: Xf,
    pub err: f64,
}

impl Xc {
    pub fn zero() -> Xc {
        Xc { re: Xf::zero(), im: Xf::zero(), err: f64::NEG_INFINITY }
    }

    pub fn one() -> Xc {
        Xc { re: Xf::one(), im: Xf::zero(), err: f64::NEG_INFINITY }
    }

    pub fn from_f64(re: f64, im: f64) -> Xc {
        Xc { re: Xf::from_f64(re), im: Xf::from_f64(im), err: f64::NEG_INFINITY }
    }

    pub fn real(x: Xf, err: f64) -> Xc {
        Xc { re: x, im: Xf::zero(), err }
    }

    pub fn log2_abs(&self) -> f64 {
        combine_log2(self.re.log2_abs(), self.im.log2_abs())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn neg(&self) -> Xc {
        Xc { re: self.re.neg(), im: self.im.neg(), err: self.err }
    }

    pub fn add(&self, o: &Xc, p: u32) -> Xc {
        let (re, e1) = self.re.add(&o.re, p);
        let (im, e2) = self.im.add(&o.im, p);
        Xc { re, im, err: combine_many(&[self.err, o.err, e1, e2]) }
    }

    pub fn sub(&self, o: &Xc, p: u32) -> Xc {
        self.add(&o.neg(), p)
    }

    pub fn mul(&self, o: &Xc, p: u32) -> Xc {
        let (t1, a) = self.re.mul(&o.re, p);
        let (t2, b) = self.im.mul(&o.im, p);
        let (re, c) = t1.sub(&t2, p);
        let (t3, d) = self.re.mul(&o.im, p);
        let (t4, e) = self.im.mul(&o.re, p);
        let (im, f) = t3.add(&t4, p);
        let la = self.log2_abs();
        let lb = o.log2_abs();
        // |a| err_b + |b| err_a + err_a err_b + rounding
        let prop = combine_many(&[la + o.err, lb + self.err, self.err + o.err]);
        let round = combine_many(&[a, b, c, d, e, f]) + 1.0;
        Xc { re, im, err: combine_log2(prop, round) }
    }

    /// Division by a complex with exact-or-tracked error, via 1/z = conj z/|z|^2.
    pub fn div(&self, o: &Xc, p: u32) -> Xc {
        let (n1, a) = o.re.mul(&o.re, p + 8);
        let (n2, b) = o.im.mul(&o.im, p + 8);
        let (den, c) = n1.add(&n2, p + 8);
        let num = self.mul(&Xc { re: o.re.clone(), im: o.im.neg(), err: o.err }, p + 8);
        let (re, d) = num.re.div(&den, p);
        let (im, e) = num.im.div(&den, p);
        let lden = den.log2_abs();
        // propagate: |num| * err_den / den^2 + err_num / den + rounding
        let prop = combine_many(&[
            num.log2_abs() + combine_many(&[a, b, c, o.err + o.log2_abs() + 1.0]) - 2.0 * lden,
            num.err - lden,
        ]);
        Xc { re, im, err: combine_many(&[prop, d, e]) + 1.0 }
    }

    /// Copy truncated to p bits (centers only; the truncation error joins err).
    pub fn truncated(&self, p: u32) -> Xc {
        let mut re = self.re.clone();
        let e1 = re.trunc(p);
        let mut im = self.im.clone();
        let e2 = im.trunc(p);
        Xc { re, im, err: combine_many(&[self.err, e1, e2]) }
    }

    pub fn to_cball(&self) -> crate::ball::CBall {
        use num_complex::Complex64;
        let re = self.re.to_f64();
        let im = self.im.to_f64();
        let conv = combine_log2(
            self.re.log2_abs() - 52.0,
            self.im.log2_abs() - 52.0,
        );
        let rad = 2f64.powf(combine_log2(self.err, conv) + 1.0);
        crate::ball::CBall::new(Complex64::new(re, im), rad.max(0.0))
    }
}
