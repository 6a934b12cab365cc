//! Truncated Laurent/Taylor series with `CBall` coefficients.
//!
//! A `TruncatedSeries` represents finitely many local expansion coefficients
//! of an analytic (or meromorphic) function around `expansion_point`:
//!
//! ```text
//!     f(x0 + x) = sum_{k=0}^{len-1} coeff[k] * x^(lowest_order + k) + O(x^(lowest_order + len))
//! ```
//!
//! `lowest_order` may be negative (poles). Arithmetic produces enclosures of
//! the true local coefficients; the number of retained coefficients shrinks
//! under multiplication/division exactly as the information content does.

use num_complex::Complex64;

use crate::ball::CBall;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    pub expansion_point: Complex64,
    pub lowest_order: i64,
    pub coeffs: Vec<CBall>,
}

impl TruncatedSeries {
    pub fn new(expansion_point: Complex64, lowest_order: i64, coeffs: Vec<CBall>) -> Self {
        TruncatedSeries { expansion_point, lowest_order, coeffs }
    }

    /// Constant series with `len` known coefficients.
    pub fn constant(expansion_point: Complex64, value: CBall, len: usize) -> Self {
        let mut coeffs = vec![CBall::ZERO; len];
        if len > 0 {
            coeffs[0] = value;
        }
        TruncatedSeries { expansion_point, lowest_order: 0, coeffs }
    }

    /// The series `c0 + c1 x` padded with zeros to `len` coefficients.
    pub fn linear(expansion_point: Complex64, c0: CBall, c1: CBall, len: usize) -> Self {
        let mut coeffs = vec![CBall::ZERO; len];
        if len > 0 {
            coeffs[0] = c0;
        }
        if len > 1 {
            coeffs[1] = c1;
        }
        TruncatedSeries { expansion_point, lowest_order: 0, coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of x^order, or an exact zero if the order precedes the
    /// window. Orders at or beyond the truncation horizon are unknown.
    pub fn coeff(&self, order: i64) -> Option<CBall> {
        if order < self.lowest_order {
            return Some(CBall::ZERO);
        }
        let idx = (order - self.lowest_order) as usize;
        self.coeffs.get(idx).copied()
    }

    /// Drop exact-zero leading coefficients (keeps at least one).
    pub fn normalize(mut self) -> Self {
        while self.coeffs.len() > 1 {
            let c = self.coeffs[0];
            if c.mid == Complex64::new(0.0, 0.0) && c.rad == 0.0 {
                self.coeffs.remove(0);
                self.lowest_order += 1;
            } else {
                break;
            }
        }
        self
    }

    pub fn scale(&self, s: &CBall) -> Self {
        TruncatedSeries {
            expansion_point: self.expansion_point,
            lowest_order: self.lowest_order,
            coeffs: self.coeffs.iter().map(|c| c.mul(s)).collect(),
        }
    }

    /// Multiply by x^k (shift orders).
    pub fn shift(&self, k: i64) -> Self {
        TruncatedSeries {
            expansion_point: self.expansion_point,
            lowest_order: self.lowest_order + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let lo = self.lowest_order.min(other.lowest_order);
        // known up to (exclusive) the smaller truncation horizon
        let hi = (self.lowest_order + self.len() as i64).min(other.lowest_order + other.len() as i64);
        let n = (hi - lo).max(0) as usize;
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let ord = lo + i as i64;
            let a = self.coeff(ord).unwrap_or(CBall::ZERO);
            let b = other.coeff(ord).unwrap_or(CBall::ZERO);
            coeffs.push(a.add(&b));
        }
        TruncatedSeries { expansion_point: self.expansion_point, lowest_order: lo, coeffs }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            expansion_point: self.expansion_point,
            lowest_order: self.lowest_order,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Cauchy product. The result's coefficient window is limited by both
    /// inputs' horizons.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.len().min(other.len());
        let lo = self.lowest_order + other.lowest_order;
        let mut coeffs = vec![CBall::ZERO; n];
        for i in 0..n.min(self.len()) {
            for j in 0..(n - i).min(other.len()) {
                let p = self.coeffs[i].mul(&other.coeffs[j]);
                coeffs[i + j] = coeffs[i + j].add(&p);
            }
        }
        TruncatedSeries { expansion_point: self.expansion_point, lowest_order: lo, coeffs }
    }

    /// Division; the divisor's leading coefficient must exclude zero.
    /// Divisors with an exactly-zero leading coefficient are handled by
    /// order shifting (x | divisor), which consumes one coefficient.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let other = other.clone().normalize();
        if other.is_empty() {
            return Err(Error::DomainError("series division by empty divisor".into()));
        }
        let lead = other.coeffs[0];
        if lead.contains_zero() {
            return Err(Error::DomainError(
                "series division by divisor whose leading coefficient may vanish".into(),
            ));
        }
        let n = self.len().min(other.len());
        let lo = self.lowest_order - other.lowest_order;
        let inv_lead = lead.recip()?;
        let mut out = vec![CBall::ZERO; n];
        // classic deconvolution: q[k] = (a[k] - sum_{j<k} q[j] b[k-j]) / b[0]
        for k in 0..n {
            let mut acc = self.coeffs.get(k).copied().unwrap_or(CBall::ZERO);
            for j in 0..k {
                let b = other.coeffs.get(k - j).copied().unwrap_or(CBall::ZERO);
                acc = acc.sub(&out[j].mul(&b));
            }
            out[k] = acc.mul(&inv_lead);
        }
        Ok(TruncatedSeries { expansion_point: self.expansion_point, lowest_order: lo, coeffs: out })
    }

    /// exp of a series with zero-or-positive lowest order.
    /// Uses the ODE recurrence (exp f)' = f' exp f, which determines each
    /// output coefficient from strictly earlier ones.
    pub fn exp(&self) -> Result<Self> {
        if self.lowest_order < 0 {
            return Err(Error::DomainError("exp of a series with a polar part".into()));
        }
        // realign to lowest_order 0
        let n = self.len() + self.lowest_order as usize;
        let f: Vec<CBall> =
            (0..n).map(|i| self.coeff(i as i64).unwrap_or(CBall::ZERO)).collect();
        if f.is_empty() {
            return Err(Error::DomainError("exp of empty series".into()));
        }
        let mut g = vec![CBall::ZERO; n];
        g[0] = f[0].exp();
        for k in 1..n {
            // g[k] = (1/k) sum_{j=1..k} j * f[j] * g[k-j]
            let mut acc = CBall::ZERO;
            for j in 1..=k {
                acc = acc.add(&f[j].mul(&g[k - j]).mul_f64(j as f64));
            }
            g[k] = acc.mul_f64(1.0 / k as f64);
        }
        Ok(TruncatedSeries { expansion_point: self.expansion_point, lowest_order: 0, coeffs: g })
    }

    /// Evaluate the truncated polynomial part at offset x (no tail bound:
    /// callers must account for the truncation separately).
    pub fn eval_poly(&self, x: &CBall) -> Result<CBall> {
        let mut acc = CBall::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        if self.lowest_order >= 0 {
            Ok(acc.mul(&x.powi(self.lowest_order as u32)))
        } else {
            let denom = x.powi((-self.lowest_order) as u32);
            acc.div(&denom)
        }
    }

    /// Polar coefficients c_j (coefficient of x^{-j}), j = 1..=order.
    pub fn polar_coeffs(&self, order: usize) -> Vec<CBall> {
        (1..=order as i64).map(|j| self.coeff(-j).unwrap_or(CBall::ZERO)).collect()
    }

    /// Residue = coefficient of x^{-1}.
    pub fn residue(&self) -> CBall {
        self.coeff(-1).unwrap_or(CBall::ZERO)
    }
}
