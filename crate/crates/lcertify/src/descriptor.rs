//! L-function data model: descriptor files, validated functional-equation
//! data, and the derived quantities (conductors, gamma factors, degree,
//! lambda invariant, reality rotation z).
//!
//! Descriptor files are UTF-8 JSON; all numeric fields are decimal strings
//! parsed into balls whose radius covers the decimal-to-double rounding
//! (zero when the decimal is exactly representable).

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ball::{Ball, CBall};
use crate::error::{Error, Result};
use crate::special::gamma_fn;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassTag {
    ArtinType,
    Selberg,
    SelbergPolynomial,
}

impl ClassTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClassTag::ArtinType => "artin_type",
            ClassTag::Selberg => "selberg",
            ClassTag::SelbergPolynomial => "selberg_polynomial",
        }
    }

    pub fn is_selberg(&self) -> bool {
        matches!(self, ClassTag::Selberg | ClassTag::SelbergPolynomial)
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One factor Gamma(lambda s + mu) of the functional equation, in the
/// normalization native to the descriptor's class (for the Artin-type class
/// the file carries the mu_j of Gamma((s + mu_j)/2), i.e. lambda = 1/2 and
/// the stored mu is pre-scaling; see `SelbergShape` for the scaled view).
#[derive(Clone, Copy, Debug)]
pub struct GammaFactor {
    pub lambda: Ball,
    pub mu: CBall,
}

#[derive(Clone, Debug)]
pub enum PoleData {
    /// Selberg classes: (s-1)^k L(s) entire.
    Order(u32),
    /// Artin-type: poles at 1 + tau_k (all on the 1-line).
    Taus(Vec<CBall>),
}

impl PoleData {
    pub fn order(&self) -> usize {
        match self {
            PoleData::Order(k) => *k as usize,
            PoleData::Taus(t) => t.len(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum CoefficientSource {
    List(Vec<CBall>),
    Euler { alphas: BTreeMap<u64, Vec<CBall>>, max_expand: usize },
}

#[derive(Clone, Debug)]
pub struct LFunctionDescriptor {
    pub class: ClassTag,
    /// Conductor N of the functional equation (positive real).
    pub conductor: Ball,
    pub gamma_factors: Vec<GammaFactor>,
    pub omega: CBall,
    pub pole: PoleData,
    pub theta: Ball,
    pub c_l: Ball,
    pub euler_order: Option<u32>,
    pub coefficients: CoefficientSource,
    /// (C, alpha) with |a(n)| <= C n^alpha; required for grid evaluation.
    pub coeff_growth: Option<(Ball, Ball)>,
    /// Principal part of L at s = 1: [c_1, ..., c_k] with
    /// L(s) = sum c_i (s-1)^-i + holomorphic. Needed when pole order > 0
    /// and completed values are requested.
    pub pole_principal: Option<Vec<CBall>>,
    /// User attestation that L(1) != 0 (hypothesis of the Selberg S-integral
    /// theorem; cannot be decided from descriptor data).
    pub l_at_1_nonzero: bool,
    pub central_zero_order: u32,
}

// -------------------------------------------------------------------------
// JSON schema
// -------------------------------------------------------------------------

#[derive(Deserialize, Serialize)]
struct RawGamma {
    lambda: String,
    mu: [String; 2],
}

#[derive(Deserialize, Serialize)]
#[serde(rename_all = "snake_case", tag = "type")]
enum RawCoefficients {
    List { values: Vec<String> },
    Euler {
        alphas: BTreeMap<String, Vec<[String; 2]>>,
        #[serde(default)]
        max_expand: Option<usize>,
    },
}

#[derive(Deserialize, Serialize)]
struct RawGrowth {
    #[serde(rename = "C")]
    c: String,
    alpha: String,
}

#[derive(Deserialize, Serialize)]
struct RawDescriptor {
    class: ClassTag,
    #[serde(rename = "N")]
    n: String,
    gamma: Vec<RawGamma>,
    omega: [String; 2],
    #[serde(default)]
    pole_order: Option<u32>,
    #[serde(default)]
    poles: Option<Vec<[String; 2]>>,
    theta: String,
    #[serde(rename = "C_L", default)]
    c_l: Option<String>,
    #[serde(default)]
    euler_order: Option<u32>,
    coefficients: RawCoefficients,
    #[serde(default)]
    coeff_growth: Option<RawGrowth>,
    #[serde(default)]
    pole_residues: Option<Vec<[String; 2]>>,
    #[serde(default)]
    l_at_1_nonzero: Option<bool>,
    #[serde(default)]
    central_zero_order: Option<u32>,
}

/// Parse a decimal string into a ball that contains the exact decimal value.
/// Exactly-representable decimals get radius zero.
pub fn parse_decimal(s: &str) -> Result<Ball> {
    let t = s.trim();
    let mid: f64 = t
        .parse()
        .map_err(|_| Error::Parse(format!("invalid decimal literal {t:?}")))?;
    if !mid.is_finite() {
        return Err(Error::Parse(format!("non-finite decimal literal {t:?}")));
    }
    if decimal_is_exact(t, mid) {
        Ok(Ball::exact(mid))
    } else {
        // correctly-rounded parse: true value within half an ulp
        let r = 0.5 * (mid.abs().next_up() - mid.abs());
        Ok(Ball::new(mid, r.max(f64::MIN_POSITIVE)))
    }
}

/// Exactness check via exact integer arithmetic: does mid == D / 10^k?
fn decimal_is_exact(s: &str, mid: f64) -> bool {
    let s = s.strip_prefix('+').unwrap_or(s);
    let (negated, s) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s),
    };
    // split off exponent
    let (mant, exp10) = match s.find(['e', 'E']) {
        Some(i) => {
            let Ok(e) = s[i + 1..].parse::<i64>() else { return false };
            (&s[..i], e)
        }
        None => (s, 0i64),
    };
    let (int_part, frac_part) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    let digits: String = [int_part, frac_part].concat();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return false;
    }
    let Ok(d) = digits.parse::<BigInt>() else { return false };
    let d = if negated { -d } else { d };
    let k = frac_part.len() as i64 - exp10;
    // mid as exact rational: mantissa * 2^e
    let (m2, e2) = {
        let bits = mid.to_bits();
        let sign = if mid < 0.0 || (mid == 0.0 && bits >> 63 == 1) { -1 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        if exp == 0 {
            (BigInt::from(sign) * BigInt::from(frac), -1074i64)
        } else {
            (BigInt::from(sign) * BigInt::from(frac + (1u64 << 52)), exp - 1075)
        }
    };
    // d / 10^k == m2 * 2^e2  <=>  d * 2^max(0,-e2) * 5^max(0,-k)... do it directly:
    // d * 2^a = m2 * 10^k * 2^b form; equivalently compare d * 2^(e2<0? -e2:0)
    // with m2 * 10^k scaled. Use: d == m2 * 2^e2 * 10^k.
    let mut lhs = d;
    let mut rhs = m2;
    if e2 >= 0 {
        rhs <<= e2 as u64;
    } else {
        lhs <<= (-e2) as u64;
    }
    if k >= 0 {
        rhs *= BigInt::from(10u32).pow(k as u32);
    } else {
        lhs *= BigInt::from(10u32).pow((-k) as u32);
    }
    lhs == rhs
}

fn parse_complex(p: &[String; 2]) -> Result<CBall> {
    let re = parse_decimal(&p[0])?;
    let im = parse_decimal(&p[1])?;
    Ok(CBall::from_parts(&re, &im))
}

// -------------------------------------------------------------------------
// Loading and validation
// -------------------------------------------------------------------------

pub fn load_descriptor(path: impl AsRef<Path>) -> Result<LFunctionDescriptor> {
    let text = std::fs::read_to_string(path.as_ref())?;
    parse_descriptor(&text)
}

pub fn parse_descriptor(text: &str) -> Result<LFunctionDescriptor> {
    let raw: RawDescriptor =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let class = raw.class;
    let conductor = parse_decimal(&raw.n)?;
    if conductor.lo() <= 0.0 {
        return Err(Error::InvariantViolation("N > 0".into()));
    }
    if raw.gamma.is_empty() {
        return Err(Error::InvariantViolation("gamma factor list must be nonempty".into()));
    }
    let theta = parse_decimal(&raw.theta)?;
    if !(theta.hi() < 0.5) {
        return Err(Error::InvariantViolation("theta < 1/2".into()));
    }
    if theta.lo() < 0.0 {
        return Err(Error::InvariantViolation("theta >= 0".into()));
    }
    let mut gamma_factors = Vec::with_capacity(raw.gamma.len());
    for (j, g) in raw.gamma.iter().enumerate() {
        let lambda = parse_decimal(&g.lambda)?;
        let mu = parse_complex(&g.mu)?;
        if lambda.lo() <= 0.0 {
            return Err(Error::InvariantViolation(format!("lambda_{j} > 0")));
        }
        match class {
            ClassTag::ArtinType => {
                if lambda.mid != 0.5 {
                    return Err(Error::InvariantViolation(format!(
                        "lambda_{j} = 1/2 for the Artin-type class"
                    )));
                }
                if mu.re().hi() < -theta.hi() {
                    return Err(Error::InvariantViolation(format!("Re(mu_{j}) >= -theta")));
                }
            }
            _ => {
                if mu.re().lo() < 0.0 {
                    return Err(Error::InvariantViolation(format!(
                        "Re(mu_{j}) >= 0 (Selberg axiom iii)"
                    )));
                }
            }
        }
        gamma_factors.push(GammaFactor { lambda, mu });
    }
    let omega = parse_complex(&raw.omega)?;
    let om_abs = omega.abs();
    if !om_abs.inflate(1e-12).contains(1.0) {
        return Err(Error::InvariantViolation("|omega| = 1".into()));
    }
    let pole = match class {
        ClassTag::ArtinType => {
            let taus = raw
                .poles
                .unwrap_or_default()
                .iter()
                .map(parse_complex)
                .collect::<Result<Vec<_>>>()?;
            for (k, tau) in taus.iter().enumerate() {
                if !tau.re().inflate(1e-12).contains(0.0) {
                    return Err(Error::InvariantViolation(format!(
                        "pole 1 + tau_{k} must lie on the 1-line"
                    )));
                }
                let matches_mu = gamma_factors
                    .iter()
                    .any(|g| tau.add(&g.mu).abs().inflate(1e-9).contains(0.0));
                if !matches_mu {
                    return Err(Error::InvariantViolation(format!(
                        "tau_{k} must coincide with -mu_j for some j"
                    )));
                }
            }
            PoleData::Taus(taus)
        }
        _ => PoleData::Order(raw.pole_order.unwrap_or(0)),
    };
    let coefficients = match raw.coefficients {
        RawCoefficients::List { values } => {
            let vals = values
                .iter()
                .map(|v| Ok(CBall::from_real(&parse_decimal(v)?)))
                .collect::<Result<Vec<_>>>()?;
            if class.is_selberg() {
                match vals.first() {
                    Some(a1) if a1.contains(Complex64::new(1.0, 0.0)) => {}
                    _ => return Err(Error::InvariantViolation("a(1) = 1".into())),
                }
            }
            CoefficientSource::List(vals)
        }
        RawCoefficients::Euler { alphas, max_expand } => {
            let mut map = BTreeMap::new();
            for (p, roots) in alphas {
                let prime: u64 = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad prime key {p:?}")))?;
                if !primal_is_prime(prime) {
                    return Err(Error::Parse(format!("alphas key {prime} is not prime")));
                }
                let rs = roots.iter().map(parse_complex).collect::<Result<Vec<_>>>()?;
                map.insert(prime, rs);
            }
            CoefficientSource::Euler { alphas: map, max_expand: max_expand.unwrap_or(1 << 16) }
        }
    };
    let c_l = match raw.c_l {
        Some(s) => parse_decimal(&s)?,
        None => Ball::ONE,
    };
    if c_l.lo() < 0.0 {
        return Err(Error::InvariantViolation("C_L >= 0".into()));
    }
    let coeff_growth = match raw.coeff_growth {
        Some(g) => Some((parse_decimal(&g.c)?, parse_decimal(&g.alpha)?)),
        None => None,
    };
    let pole_principal = match raw.pole_residues {
        Some(rs) => {
            if rs.len() != pole.order() {
                return Err(Error::InvariantViolation(format!(
                    "pole_residues length {} must equal the pole order {}",
                    rs.len(),
                    pole.order()
                )));
            }
            Some(rs.iter().map(parse_complex).collect::<Result<Vec<_>>>()?)
        }
        None => None,
    };
    Ok(LFunctionDescriptor {
        class,
        conductor,
        gamma_factors,
        omega,
        pole,
        theta,
        c_l,
        euler_order: raw.euler_order,
        coefficients,
        coeff_growth,
        pole_principal,
        l_at_1_nonzero: raw.l_at_1_nonzero.unwrap_or(false),
        central_zero_order: raw.central_zero_order.unwrap_or(0),
    })
}

fn primal_is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// -------------------------------------------------------------------------
// Derived quantities
// -------------------------------------------------------------------------

/// The functional equation rewritten in the Selberg shape
/// `L(s) * N^s * prod Gamma(lambda_j s + mu_j)`, which is what the kernel
/// evaluation machinery consumes. For Selberg-class descriptors this is the
/// identity view; Artin-type data is rescaled
/// (N' = sqrt(N) pi^(-r/2), mu' = mu/2, omega' = conj(omega)^2).
#[derive(Clone, Debug)]
pub struct SelbergShape {
    pub conductor: Ball,
    pub factors: Vec<GammaFactor>,
    pub omega: CBall,
    pub pole_order: usize,
}

impl LFunctionDescriptor {
    pub fn f(&self) -> usize {
        self.gamma_factors.len()
    }

    /// Degree d_L = 2 sum lambda_j (in the Selberg shape).
    pub fn degree(&self) -> Ball {
        self.selberg_shape()
            .factors
            .iter()
            .fold(Ball::ZERO, |acc, g| acc.add(&g.lambda))
            .mul_f64(2.0)
    }

    /// lambda invariant: prod lambda_j^(2 lambda_j).
    pub fn lambda_invariant(&self) -> Ball {
        self.selberg_shape()
            .factors
            .iter()
            .fold(Ball::ONE, |acc, g| {
                acc.mul(&g.lambda.powf(&g.lambda.mul_f64(2.0)).expect("lambda > 0"))
            })
    }

    pub fn selberg_shape(&self) -> SelbergShape {
        match self.class {
            ClassTag::Selberg | ClassTag::SelbergPolynomial => SelbergShape {
                conductor: self.conductor,
                factors: self.gamma_factors.clone(),
                omega: self.omega,
                pole_order: self.pole.order(),
            },
            ClassTag::ArtinType => {
                let r = self.gamma_factors.len() as i32;
                let n = self
                    .conductor
                    .sqrt()
                    .expect("N > 0")
                    .mul(&Ball::pi().powi(r as u32).recip().expect("pi^r > 0").sqrt().expect(">0"));
                let factors = self
                    .gamma_factors
                    .iter()
                    .map(|g| GammaFactor { lambda: Ball::exact(0.5), mu: g.mu.mul_f64(0.5) })
                    .collect();
                let omega = self.omega.conj().square();
                SelbergShape { conductor: n, factors, omega, pole_order: self.pole.order() }
            }
        }
    }

    /// The rotation z making z * curlyL real on the critical line.
    pub fn rotation_z(&self) -> Result<CBall> {
        reality_rotation_z(&self.selberg_shape().omega)
    }

    /// Dirichlet coefficients a(1..=m).
    pub fn coefficients_upto(&self, m: usize) -> Result<Vec<CBall>> {
        match &self.coefficients {
            CoefficientSource::List(v) => {
                if v.len() < m {
                    return Err(Error::DomainError(format!(
                        "descriptor carries {} coefficients, {m} requested",
                        v.len()
                    )));
                }
                Ok(v[..m].to_vec())
            }
            CoefficientSource::Euler { alphas, max_expand } => {
                if m > *max_expand {
                    return Err(Error::DomainError(format!(
                        "coefficient expansion cap {max_expand} exceeded ({m} requested)"
                    )));
                }
                expand_euler(alphas, m)
            }
        }
    }

    /// Growth data (C, alpha) with |a(n)| <= C n^alpha.
    pub fn growth(&self) -> Result<(Ball, Ball)> {
        self.coeff_growth.ok_or_else(|| {
            Error::DomainError("descriptor lacks coeff_growth (required for tail bounds)".into())
        })
    }
}

/// Multiplicative expansion of a polynomial Euler product:
/// a(n) = prod_p h_{v_p(n)}(alpha(p)) with h_k the complete homogeneous
/// symmetric functions (coefficients of prod (1 - alpha_i x)^-1).
fn expand_euler(alphas: &BTreeMap<u64, Vec<CBall>>, m: usize) -> Result<Vec<CBall>> {
    let mut local: BTreeMap<u64, Vec<CBall>> = BTreeMap::new();
    for p in 2..=(m as u64) {
        if !primal_is_prime(p) {
            continue;
        }
        let roots = alphas.get(&p).ok_or_else(|| {
            Error::DomainError(format!("euler data missing prime {p} needed for {m} coefficients"))
        })?;
        let mut kmax = 0usize;
        let mut q: u128 = 1;
        while q * p as u128 <= m as u128 {
            q *= p as u128;
            kmax += 1;
        }
        // prod_i (sum_k alpha_i^k x^k), truncated at kmax
        let mut loc = vec![CBall::ZERO; kmax + 1];
        loc[0] = CBall::ONE;
        for root in roots {
            let mut geo = Vec::with_capacity(kmax + 1);
            let mut pw = CBall::ONE;
            for k in 0..=kmax {
                if k > 0 {
                    pw = pw.mul(root);
                }
                geo.push(pw);
            }
            let mut res = vec![CBall::ZERO; kmax + 1];
            for i in 0..=kmax {
                for j in 0..=(kmax - i) {
                    res[i + j] = res[i + j].add(&loc[i].mul(&geo[j]));
                }
            }
            loc = res;
        }
        local.insert(p, loc);
    }
    let mut a = vec![CBall::ZERO; m + 1];
    if m >= 1 {
        a[1] = CBall::ONE;
    }
    for n in 2..=m {
        // smallest prime factor and its full power in n
        let mut p = 2usize;
        while n % p != 0 {
            p += 1;
        }
        let mut v = 0usize;
        let mut rest = n;
        while rest % p == 0 {
            rest /= p;
            v += 1;
        }
        a[n] = a[rest].mul(&local[&(p as u64)][v]);
    }
    Ok(a[1..=m].to_vec())
}

/// Analytic conductor Q(s) = N prod (s + mu_j) / (2 pi) for the Artin-type class.
pub fn analytic_conductor_q(d: &LFunctionDescriptor, s: &CBall) -> Result<CBall> {
    if d.class != ClassTag::ArtinType {
        return Err(Error::WrongClass { expected: "artin_type", got: d.class.as_str() });
    }
    let two_pi = Ball::pi().mul_f64(2.0);
    let mut acc = CBall::from_real(&d.conductor);
    for g in &d.gamma_factors {
        acc = acc.mul(&s.add(&g.mu).mul_ball(&two_pi.recip()?));
    }
    Ok(acc)
}

/// |Q(s)| as a real ball (branch-free route used by the bounds).
pub fn abs_analytic_conductor_q(d: &LFunctionDescriptor, s: &CBall) -> Result<Ball> {
    Ok(analytic_conductor_q(d, s)?.abs())
}

/// Selberg conductor Q_L(s) = N^2 prod (lambda_j s + mu_j + 1)^(2 lambda_j),
/// principal powers. Factors meeting the branch cut raise `BranchCutHit`.
pub fn selberg_conductor_ql(d: &LFunctionDescriptor, s: &CBall) -> Result<CBall> {
    if !d.class.is_selberg() {
        return Err(Error::WrongClass { expected: "selberg", got: d.class.as_str() });
    }
    let mut acc = CBall::from_real(&d.conductor.square());
    for g in &d.gamma_factors {
        let base = s.mul_ball(&g.lambda).add(&g.mu).add(&CBall::ONE);
        if base.mid.re < 0.0 && base.mid.im.abs() <= base.rad {
            return Err(Error::BranchCutHit(format!("factor {base} crosses the negative axis")));
        }
        acc = acc.mul(&base.powf(&g.lambda.mul_f64(2.0))?);
    }
    Ok(acc)
}

/// |Q_L(s)| as a real ball; avoids the branch cut entirely.
pub fn abs_selberg_conductor_ql(d: &LFunctionDescriptor, s: &CBall) -> Result<Ball> {
    if !d.class.is_selberg() {
        return Err(Error::WrongClass { expected: "selberg", got: d.class.as_str() });
    }
    abs_ql_from_factors(&d.conductor, &d.gamma_factors, s)
}

pub(crate) fn abs_ql_from_factors(
    conductor: &Ball,
    factors: &[GammaFactor],
    s: &CBall,
) -> Result<Ball> {
    let mut acc = conductor.square();
    for g in factors {
        let base = s.mul_ball(&g.lambda).add(&g.mu).add(&CBall::ONE);
        let m = base.abs();
        if m.lo() <= 0.0 {
            return Err(Error::DomainError(format!("|Q_L| factor {base} may vanish")));
        }
        acc = acc.mul(&m.powf(&g.lambda.mul_f64(2.0))?);
    }
    Ok(acc)
}

/// gamma(s) (Artin-type) or gamma_L(s) (Selberg) as a value.
pub fn gamma_factor(d: &LFunctionDescriptor, s: &CBall) -> Result<CBall> {
    match d.class {
        ClassTag::ArtinType => {
            // omega N^((s-1/2)/2) prod pi^(-s/2) Gamma((s + mu_j)/2)
            let ln_n = CBall::from_real(&d.conductor.ln()?);
            let mut acc = d.omega.mul(&s.add(&CBall::exact(-0.5, 0.0)).mul_f64(0.5).mul(&ln_n).exp());
            let ln_pi = CBall::from_real(&Ball::pi().ln()?);
            let r = d.gamma_factors.len() as f64;
            acc = acc.mul(&s.mul_f64(-0.5 * r).mul(&ln_pi).exp());
            for g in &d.gamma_factors {
                acc = acc.mul(&gamma_fn(&s.add(&g.mu).mul_f64(0.5))?);
            }
            Ok(acc)
        }
        _ => gamma_l_value(&d.conductor, &d.gamma_factors, s),
    }
}

/// gamma_L(s) = N^s prod Gamma(lambda_j s + mu_j).
pub(crate) fn gamma_l_value(conductor: &Ball, factors: &[GammaFactor], s: &CBall) -> Result<CBall> {
    let ln_n = CBall::from_real(&conductor.ln()?);
    let mut acc = s.mul(&ln_n).exp();
    for g in factors {
        acc = acc.mul(&gamma_fn(&s.mul_ball(&g.lambda).add(&g.mu))?);
    }
    Ok(acc)
}

/// The rotation z with Re(z) = Im(omega)/sqrt(2(1-Re omega)),
/// Im(z) = -sqrt(1-Re omega)/sqrt(2); z^2 = conj(omega) and |z| = 1.
/// omega exactly 1 uses the documented convention z = 1 (the completed
/// function is already self-conjugate).
pub fn reality_rotation_z(omega: &CBall) -> Result<CBall> {
    if omega.mid == Complex64::new(1.0, 0.0) && omega.rad == 0.0 {
        return Ok(CBall::ONE);
    }
    let one_minus = Ball::ONE.sub(&omega.re());
    if one_minus.lo() <= 0.0 {
        return Err(Error::DomainError(
            "degenerate omega: Re(omega) = 1 but omega != 1 within tolerance".into(),
        ));
    }
    let root = one_minus.mul_f64(2.0).sqrt()?;
    let re = omega.im().div(&root)?;
    let im = one_minus.sqrt()?.div(&Ball::exact(2.0).sqrt()?)?.neg();
    Ok(CBall::from_parts(&re, &im))
}
