//! Certified completed-L values on a Fourier grid.
//!
//! Fhat values are assembled from the kernel (with the Dirichlet-tail and
//! alias lemmas as explicit error-ledger entries plus the computable pole
//! kernel correction), the size-q inverse DFT recovers the periodized F, the
//! F-aliasing lemma bounds the periodization error, and dividing out the
//! exponential taper returns Lambda_L(1/2 + i m/A) as real balls.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{num_complex::Complex as FftComplex, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::ball::{Ball, CBall};
use crate::bounds::{convexity_bound, StripBoundInput};
use crate::descriptor::{LFunctionDescriptor, SelbergShape};
use crate::error::{Error, Result};
use crate::gfunc::{alias_tail_bound, dirichlet_tail_bound, g_large_u_bound, GEvaluator};
use crate::special::{log_gamma, log_gamma_series};

/// Fourier grid parameters with their selection rationale.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridSpec {
    /// Frequency spacing parameter: samples at t = m/A.
    pub a_param: f64,
    /// Period: F is periodized with period B.
    pub b_param: f64,
    /// q = A B, the DFT size.
    pub q: usize,
    pub eta: f64,
    /// Dirichlet-series truncation.
    pub m_trunc: usize,
    /// Strip offset used inside the F-aliasing envelope.
    pub eps_alias: f64,
    /// Target height.
    pub t_max: f64,
    /// Requested end-to-end tolerance (absolute, at t = 0 scale).
    pub target_tol: f64,
    /// Per-Fhat-point budget.
    pub tol_point: f64,
    /// Per-kernel-evaluation budget.
    pub tol_g: f64,
    pub rationale: Vec<String>,
}

impl GridSpec {
    pub fn digest(&self) -> String {
        format!(
            "A={:.6} B={:.3} q={} eta={:.9} M={} eps={:.3} tol={:.3e}",
            self.a_param, self.b_param, self.q, self.eta, self.m_trunc, self.eps_alias,
            self.target_tol
        )
    }
}

/// Per-sample error-ledger breakdown (all radii, before the taper division).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SampleLedger {
    /// Spread of the per-point Fhat radii through the DFT.
    pub fhat_spread: f64,
    /// Coarse certified FFT rounding.
    pub fft_round: f64,
    /// F-aliasing bound (both tails).
    pub f_alias: f64,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    /// Lambda_L(1/2 + i t) as a real ball.
    pub lambda: Ball,
    /// Imaginary residual of the complex enclosure (reality check data).
    pub im_residual: Ball,
    pub ledger: SampleLedger,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvaluatedGrid {
    pub spec: GridSpec,
    pub samples: Vec<Sample>,
    /// Largest per-point Fhat radius that entered the DFT.
    pub max_point_radius: f64,
}

impl EvaluatedGrid {
    pub fn sample_spacing(&self) -> f64 {
        1.0 / self.a_param()
    }

    pub fn a_param(&self) -> f64 {
        self.spec.a_param
    }
}

// ---------------------------------------------------------------------------
// Fhat machinery
// ---------------------------------------------------------------------------

/// Shared evaluation state for one grid run.
pub struct FhatContext<'a> {
    pub d: &'a LFunctionDescriptor,
    pub shape: SelbergShape,
    pub z_rot: CBall,
    pub coeffs: Vec<CBall>,
    pub ev: GEvaluator,
    pub spec: &'a GridSpec,
}

impl<'a> FhatContext<'a> {
    pub fn new(d: &'a LFunctionDescriptor, spec: &'a GridSpec) -> Result<Self> {
        let shape = d.selberg_shape();
        let z_rot = d.rotation_z()?;
        let coeffs = d.coefficients_upto(spec.m_trunc)?;
        let mut ev = GEvaluator::new(&shape, spec.eta)?;
        let n_lo = shape.conductor.lo();
        let u_max = std::f64::consts::PI * spec.a_param
            + (spec.m_trunc as f64 / n_lo).ln()
            + 0.1;
        ev.prepare(u_max, spec.tol_g)?;
        Ok(FhatContext { d, shape, z_rot, coeffs, ev, spec })
    }

    /// Kernel value or the large-u lemma bound, whichever is cheaper/sharper.
    fn g_or_bound(&self, u: f64) -> Result<CBall> {
        if let Ok(b) = g_large_u_bound(self.d, u, self.spec.eta) {
            if b.hi() <= self.spec.tol_g {
                return Ok(CBall::new(Complex64::new(0.0, 0.0), b.hi()));
            }
        }
        Ok(self.ev.eval(u, self.spec.tol_g)?.value)
    }

    /// Fhat(x) = z sum_(n<=M) a(n)/sqrt(n/N) G(x + log(n/N)) - Res_(s=1) term,
    /// with the Dirichlet tail added to the radius.
    pub fn fhat_point(&self, x: f64) -> Result<CBall> {
        let n_cond = self.shape.conductor;
        let mut acc = CBall::ZERO;
        for (idx, a_n) in self.coeffs.iter().enumerate() {
            let n = (idx + 1) as f64;
            let ratio = Ball::exact(n).div(&n_cond)?;
            let u = x + ratio.mid.ln();
            // the ball log of n/N enters the kernel argument; its tiny radius
            // is absorbed by evaluating G at the midpoint and adding the
            // derivative-free slack |G'| <= practical bound via tol padding
            let g = self.g_or_bound(u)?;
            let w = a_n.mul_ball(&ratio.sqrt()?.recip()?);
            acc = acc.add(&g.mul(&w));
        }
        let tail = dirichlet_tail_bound(self.d, self.spec.m_trunc, x, self.spec.eta)?;
        acc = acc.mul(&self.z_rot).inflate(tail.hi());
        if self.shape.pole_order > 0 {
            let res = self.residue_term(x, None)?;
            acc = acc.sub(&res);
        }
        Ok(acc)
    }

    /// Res_(s=1) Lambda_L(s) e^(w(1/2-s)) [/(1 - e^(2 pi A (1/2-s))) when
    /// `kernel_a` is set], via a jet at s = 1.
    pub fn residue_term(&self, x: f64, kernel_a: Option<f64>) -> Result<CBall> {
        let k = self.shape.pole_order;
        if k == 0 {
            return Ok(CBall::ZERO);
        }
        let principal = self.d.pole_principal.as_ref().ok_or_else(|| {
            Error::DomainError(
                "descriptor needs pole_residues (principal part of L at s = 1) for completed values"
                    .into(),
            )
        })?;
        let len = k;
        // jet of z N^s prod Gamma(lambda s + mu) e^(w(1/2-s)) at s = 1
        let one = CBall::ONE;
        let mut jet = jet_constant(self.z_rot, len);
        // N^(1+x) = N * exp(x ln N)
        let ln_n = self.shape.conductor.ln()?;
        let mut expo = vec![CBall::ZERO; len];
        if len > 1 {
            expo[1] = CBall::from_real(&ln_n);
        }
        jet = jet_mul(&jet, &jet_exp(&expo), len);
        jet = jet_scale(&jet, &CBall::from_real(&self.shape.conductor));
        for g in &self.shape.factors {
            let z0 = one.mul_ball(&g.lambda).add(&g.mu);
            let lg = log_gamma_series(&z0, len)?;
            let mut cs: Vec<CBall> = lg.coeffs.clone();
            // compose with lambda x
            let mut pw = CBall::ONE;
            for (m, c) in cs.iter_mut().enumerate() {
                if m > 0 {
                    pw = pw.mul(&CBall::from_real(&g.lambda));
                }
                *c = c.mul(&pw);
            }
            jet = jet_mul(&jet, &jet_exp(&cs), len);
        }
        // e^(w(1/2 - 1 - x)) = e^(-w/2) sum (-w)^m x^m / m!
        let f = self.shape.factors.len() as f64;
        let w = CBall::from_parts(
            &Ball::exact(x),
            &Ball::pi().mul_f64(f * self.spec.eta / 4.0),
        );
        let lead = w.mul_f64(-0.5).exp();
        let mut ew = vec![CBall::ZERO; len];
        let mut term = CBall::ONE;
        for (m, e) in ew.iter_mut().enumerate() {
            if m > 0 {
                term = term.mul(&w.neg()).mul_f64(1.0 / m as f64);
            }
            *e = term.mul(&lead);
        }
        jet = jet_mul(&jet, &ew, len);
        if let Some(a) = kernel_a {
            // divide by 1 - e^(2 pi A (1/2 - s)) = 1 - e^(-pi A) e^(-2 pi A x)
            let scale = Ball::exact(-std::f64::consts::PI * a).exp();
            let mut den = vec![CBall::ZERO; len];
            let mut term = CBall::from_real(&scale).neg();
            for (m, e) in den.iter_mut().enumerate() {
                if m > 0 {
                    term = term.mul_f64(-2.0 * std::f64::consts::PI * a / m as f64);
                }
                *e = term;
            }
            den[0] = den[0].add(&CBall::ONE);
            jet = jet_div(&jet, &den, len)?;
        }
        // Res = sum_i p_(-i) * jet[i-1]
        let mut res = CBall::ZERO;
        for (i, p) in principal.iter().enumerate() {
            res = res.add(&p.mul(&jet[i]));
        }
        Ok(res)
    }

    /// F-tilde-hat(n): the central Fhat plus both alias sums, each given as
    /// the computable pole-kernel correction plus the lemma tail as a radius.
    pub fn fhat_aliased(&self, n: usize) -> Result<CBall> {
        let spec = self.spec;
        let x = 2.0 * std::f64::consts::PI * n as f64 / spec.b_param;
        let two_pi_a = 2.0 * std::f64::consts::PI * spec.a_param;
        let mut acc = self.fhat_point(x)?;
        for (shift_x, conj) in [(x + two_pi_a, false), (two_pi_a - x, true)] {
            let mut alias = CBall::ZERO;
            if self.shape.pole_order > 0 {
                alias = self.residue_term(shift_x, Some(spec.a_param))?.neg();
            }
            let tail = alias_tail_bound(self.d, shift_x, spec.eta, spec.a_param)?;
            alias = alias.inflate(tail.hi());
            acc = acc.add(&if conj { alias.conj() } else { alias });
        }
        Ok(acc)
    }
}

// small dense-jet helpers (Taylor coefficients around a point)
fn jet_constant(c: CBall, len: usize) -> Vec<CBall> {
    let mut v = vec![CBall::ZERO; len];
    if len > 0 {
        v[0] = c;
    }
    v
}

fn jet_scale(a: &[CBall], s: &CBall) -> Vec<CBall> {
    a.iter().map(|c| c.mul(s)).collect()
}

fn jet_mul(a: &[CBall], b: &[CBall], len: usize) -> Vec<CBall> {
    let mut out = vec![CBall::ZERO; len];
    for i in 0..len.min(a.len()) {
        for j in 0..(len - i).min(b.len()) {
            out[i + j] = out[i + j].add(&a[i].mul(&b[j]));
        }
    }
    out
}

fn jet_exp(a: &[CBall]) -> Vec<CBall> {
    let len = a.len();
    let mut g = vec![CBall::ZERO; len];
    if len == 0 {
        return g;
    }
    g[0] = a[0].exp();
    for k in 1..len {
        let mut acc = CBall::ZERO;
        for j in 1..=k {
            acc = acc.add(&a[j].mul(&g[k - j]).mul_f64(j as f64));
        }
        g[k] = acc.mul_f64(1.0 / k as f64);
    }
    g
}

fn jet_div(a: &[CBall], b: &[CBall], len: usize) -> Result<Vec<CBall>> {
    let inv0 = b[0].recip()?;
    let mut out = vec![CBall::ZERO; len];
    for k in 0..len {
        let mut acc = a.get(k).copied().unwrap_or(CBall::ZERO);
        for j in 0..k {
            acc = acc.sub(&out[j].mul(&b[k - j]));
        }
        out[k] = acc.mul(&inv0);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// F-aliasing envelope
// ---------------------------------------------------------------------------

/// ln |gamma_L(s)| = Re(s ln N + sum log Gamma(lambda_j s + mu_j)).
fn ln_gamma_l_abs(shape: &SelbergShape, s: &CBall) -> Result<Ball> {
    let mut acc = s.mul_ball(&shape.conductor.ln()?).re();
    for g in &shape.factors {
        acc = acc.add(&log_gamma(&s.mul_ball(&g.lambda).add(&g.mu))?.re());
    }
    Ok(acc)
}

/// E_thetaL(eps) at s = 1/2 + i t: the convexity bound for |L| on the line
/// times |gamma_L(s)| e^(pi f eta t / 4), assembled in log form (the gamma
/// decay and the taper growth individually overflow f64 at large |t|).
fn f_envelope(d: &LFunctionDescriptor, shape: &SelbergShape, t: f64, eps: f64, eta: f64) -> Result<Ball> {
    let s = CBall::exact(0.5, t);
    let input = StripBoundInput::new(d, s, Ball::exact(eps));
    let lbound = convexity_bound(&input)?;
    let f = shape.factors.len() as f64;
    let ln_total = lbound
        .ln()?
        .add(&ln_gamma_l_abs(shape, &s)?)
        .add(&Ball::pi().mul_f64(f * eta * t / 4.0));
    if ln_total.hi() < -700.0 {
        return Ok(Ball::from_endpoints(0.0, 1e-300));
    }
    Ok(ln_total.exp())
}

/// beta_L at s = 1/2 + i t: the certified decay rate
/// d_L pi/4 - sum lambda_j (arctan(Re_j/|Im_j|) + 1/(2|Im_j|) + 2/(pi^2 |Im^2 - Re^2|)).
/// Requires |Im(lambda_j s + mu_j)| >= |Re| + 3/2 for every factor.
fn beta_decay(shape: &SelbergShape, t: f64) -> Result<Ball> {
    let s = CBall::exact(0.5, t);
    let mut acc = shape
        .factors
        .iter()
        .fold(Ball::ZERO, |a, g| a.add(&g.lambda))
        .mul_f64(2.0)
        .mul(&Ball::pi())
        .mul_f64(0.25);
    let pi2 = Ball::pi().square();
    for g in &shape.factors {
        let arg = s.mul_ball(&g.lambda).add(&g.mu);
        let re = arg.re();
        let im = arg.im().abs();
        if im.lo() < re.mag() + 1.5 {
            return Err(Error::precondition_at(
                "|Im(lambda_j s + mu_j)| >= |Re(lambda_j s + mu_j)| + 3/2",
                format!("factor at t = {t}"),
            ));
        }
        let t1 = re.div(&im)?.atan();
        let t2 = im.mul_f64(2.0).recip()?;
        let t3 = Ball::exact(2.0)
            .div(&pi2.mul(&im.square().sub(&re.square()).abs()))?;
        acc = acc.sub(&t1.add(&t2).add(&t3).mul(&g.lambda));
    }
    Ok(acc)
}

/// Bound on |sum_(l>=1) F(t_0 +- l B)| through the final-section lemma.
fn f_alias_bound(
    d: &LFunctionDescriptor,
    shape: &SelbergShape,
    spec: &GridSpec,
    t0: f64,
    upward: bool,
) -> Result<Ball> {
    let f = shape.factors.len() as f64;
    let t_img = if upward { t0 + spec.b_param } else { t0 - spec.b_param };
    // sign conditions: Im(lambda s + mu) all positive (upward) / negative
    for g in &shape.factors {
        let im = g.lambda.mid * t_img + g.mu.mid.im;
        if upward && im <= 0.0 {
            return Err(Error::precondition("Im(lambda_j s + mu_j) > 0 for all j"));
        }
        if !upward && im >= 0.0 {
            return Err(Error::precondition("Im(lambda_j s + mu_j) < 0 for all j"));
        }
    }
    let env = f_envelope(d, shape, t_img, spec.eps_alias, spec.eta)?;
    let beta = beta_decay(shape, t_img)?;
    let shift = Ball::pi().mul_f64(f * spec.eta / 4.0);
    let rate = if upward { beta.sub(&shift) } else { beta.add(&shift) };
    if rate.lo() <= 0.0 {
        return Err(Error::precondition("beta_L -+ pi f eta/4 > 0"));
    }
    let denom = Ball::ONE.sub(&rate.neg().mul_f64(spec.b_param).exp());
    env.div(&denom)
}

// ---------------------------------------------------------------------------
// Inversion
// ---------------------------------------------------------------------------

/// Invert the aliased Fhat values to certified Lambda samples on [0, t_max].
pub fn invert_to_lambda(d: &LFunctionDescriptor, spec: &GridSpec) -> Result<EvaluatedGrid> {
    let ctx = FhatContext::new(d, spec)?;
    let q = spec.q;
    let half = q / 2;
    // parallel over the independent Fhat points; output order is fixed
    let upper: Vec<Result<CBall>> =
        (0..=half).into_par_iter().map(|n| ctx.fhat_aliased(n)).collect();
    let mut vals = Vec::with_capacity(q);
    for n in 0..=half {
        match &upper[n] {
            Ok(v) => vals.push(*v),
            Err(e) => {
                return Err(Error::DomainError(format!("Fhat point {n} failed: {e}")));
            }
        }
    }
    // Hermitian completion; bins 0 and q/2 are real for real-valued F
    let real_force = |v: &CBall| -> CBall {
        CBall::new(
            Complex64::new(v.mid.re, 0.0),
            v.rad + v.mid.im.abs(),
        )
    };
    vals[0] = real_force(&vals[0]);
    if q % 2 == 0 {
        vals[half] = real_force(&vals[half]);
    }
    let mut full: Vec<CBall> = Vec::with_capacity(q);
    full.extend_from_slice(&vals);
    for n in (half + 1)..q {
        full.push(vals[q - n].conj());
    }
    // centers through the inverse DFT
    let mut buf: Vec<FftComplex<f64>> =
        full.iter().map(|v| FftComplex::new(v.mid.re, v.mid.im)).collect();
    let mut planner = FftPlanner::new();
    let ifft = planner.plan_fft_inverse(q);
    ifft.process(&mut buf);
    let rad_sum: f64 = full.iter().map(|v| v.rad).sum();
    let max_in: f64 = full.iter().map(|v| v.mid.norm()).fold(0.0, f64::max);
    let max_point_radius: f64 = full.iter().map(|v| v.rad).fold(0.0, f64::max);
    let fft_round = 4.0 * q as f64 * f64::EPSILON * max_in;
    let scale = Ball::pi().mul_f64(2.0).div(&Ball::exact(spec.b_param))?;
    let shape = &ctx.shape;
    let f = shape.factors.len() as f64;

    let m_max = ((spec.t_max * spec.a_param).floor() as usize).min(q - 1);
    let mut samples = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        let t = m as f64 / spec.a_param;
        let f_alias = {
            let up = f_alias_bound(d, shape, spec, t, true);
            let dn = f_alias_bound(d, shape, spec, t, false);
            match (up, dn) {
                (Ok(a), Ok(b)) => a.hi() + b.hi(),
                _ => f64::INFINITY,
            }
        };
        let spread = scale.hi() * (rad_sum + fft_round);
        let center = CBall::new(Complex64::new(buf[m].re, buf[m].im), 0.0)
            .mul_ball(&scale)
            .inflate(spread + f_alias);
        // divide out the taper e^(pi f eta t / 4)
        let taper = Ball::pi().mul_f64(-f * spec.eta * t / 4.0).exp();
        let lam_ball = center.mul_ball(&taper);
        samples.push(Sample {
            t,
            lambda: lam_ball.re(),
            im_residual: lam_ball.im(),
            ledger: SampleLedger {
                fhat_spread: spread * taper.hi(),
                fft_round: scale.hi() * fft_round * taper.hi(),
                f_alias: f_alias * taper.hi(),
            },
        });
    }
    Ok(EvaluatedGrid { spec: spec.clone(), samples, max_point_radius })
}

// ---------------------------------------------------------------------------
// Parameter selection
// ---------------------------------------------------------------------------

/// Deterministic spec selection: eta = 1 - c_eta/T, B = c_B T, A = c_A times
/// the zero-density estimate at T, M from the Dirichlet-tail lemma, with the
/// predicted error ledger re-checked and parameters escalated until the
/// budget is met.
pub fn choose_grid(d: &LFunctionDescriptor, t_max: f64, target_tol: f64) -> Result<GridSpec> {
    if t_max <= 0.0 {
        return Err(Error::DomainError("T > 0 required".into()));
    }
    if target_tol < 1e-250 {
        return Err(Error::BudgetExceeded(format!(
            "target tolerance {target_tol:.1e} below the double-precision ledger floor"
        )));
    }
    let shape = d.selberg_shape();
    let degree = d.degree();
    let lam_inv = d.lambda_invariant();
    let n2 = shape.conductor.square();
    // zero density at T: log((T/e)^d lambda N^2) / (2 pi)
    let density = {
        let inner = Ball::exact(t_max / std::f64::consts::E)
            .powf(&degree)
            .unwrap_or(Ball::ONE)
            .mul(&lam_inv)
            .mul(&n2);
        if inner.lo() > 0.0 {
            (inner.ln().unwrap().mid / (2.0 * std::f64::consts::PI)).max(0.05)
        } else {
            0.05
        }
    };
    let mut rationale = vec![format!("zero density at T = {t_max}: {density:.4} per unit")];
    let lam_max = shape.factors.iter().map(|g| g.lambda.hi()).fold(0.0f64, f64::max);
    let eps_cap = (0.5f64).min(0.5 * (1.0 / lam_max - 1.0));
    let eps_alias = {
        let e = (0.45f64).min(eps_cap * 0.999);
        if e <= d.theta.hi() {
            return Err(Error::DomainError("no admissible eps > theta_L for the alias envelope".into()));
        }
        e
    };
    // 1 - eta trades kernel-evaluation depth against the exponential growth
    // of the relative sample radius e^((pi/4) f (1-eta) t): keep the latter
    // below ~1e-3 at t = T so signs stay certifiable between zeros, but no
    // smaller, since the chain cost grows like (1/delta)^3.
    let c_eta = ((4.0 / std::f64::consts::PI) * (8e-4 / target_tol).ln() * 0.8)
        .clamp(1.0, 12.0);
    let eta = (1.0 - c_eta / t_max).max(0.0);
    rationale.push(format!("eta = 1 - {c_eta:.2}/T = {eta}"));
    let c_a = 8.0f64;
    let f = shape.factors.len() as f64;

    for attempt in 0..10 {
        let c_b = 4.0 + 4.0 * attempt as f64;
        let b_param = c_b * t_max;
        let q_raw = (c_a * density * b_param).max(64.0);
        // round up to a multiple of 16: keeps the FFT mixed-radix friendly
        // without inflating the point count towards the next power of two
        let q = ((q_raw.ceil() as usize) + 15) / 16 * 16;
        let a_param = q as f64 / b_param;
        // per-point budget: the DFT spreads q radii by 2 pi / B each
        let tol_point = target_tol * b_param / (8.0 * std::f64::consts::PI * q as f64);
        // M from the Dirichlet tail at x = 0 (worst case)
        let mut m_trunc = 4usize;
        let mut m_ok = false;
        while m_trunc <= 1 << 20 {
            match dirichlet_tail_bound(d, m_trunc, 0.0, eta) {
                Ok(b) if b.hi() <= tol_point / 4.0 => {
                    m_ok = true;
                    break;
                }
                _ => m_trunc *= 2,
            }
        }
        if !m_ok {
            return Err(Error::BudgetExceeded(
                "Dirichlet truncation cannot reach the requested tolerance".into(),
            ));
        }
        if d.coefficients_upto(m_trunc).is_err() {
            return Err(Error::BudgetExceeded(format!(
                "descriptor supplies too few coefficients (need {m_trunc})"
            )));
        }
        // per-kernel budget from the weight sum
        let n_lo = shape.conductor.lo();
        let mut wsum = 0.0f64;
        if let Ok((c, alpha)) = d.growth() {
            for n in 1..=m_trunc {
                wsum += c.hi() * (n as f64).powf(alpha.hi()) / ((n as f64) / n_lo).sqrt();
            }
        }
        let tol_g = (tol_point / 4.0 / wsum.max(1.0)).max(1e-280);
        // alias-tail check at the worst abscissa x = pi A
        let spec = GridSpec {
            a_param,
            b_param,
            q,
            eta,
            m_trunc,
            eps_alias,
            t_max,
            target_tol,
            tol_point,
            tol_g,
            rationale: rationale.clone(),
        };
        let alias_res = alias_tail_bound(d, std::f64::consts::PI * a_param, eta, a_param);
        let alias_ok = alias_res.as_ref().map(|b| b.hi() <= tol_point / 4.0).unwrap_or(false);
        if !alias_ok {
            rationale.push(format!(
                "attempt {attempt}: Fhat alias tail above budget at c_B = {c_b} ({:?} vs {:.2e}); escalating",
                alias_res.map(|b| b.hi()), tol_point / 4.0
            ));
            continue;
        }
        // F-aliasing check against the local F scale at a few heights
        let ln_g0 = ln_gamma_l_abs(&shape, &CBall::exact(0.5, 0.0))?.mid;
        let mut f_ok = true;
        for &t in &[0.0, 0.5 * t_max, t_max] {
            let scale_t = {
                let ln_g = ln_gamma_l_abs(&shape, &CBall::exact(0.5, t))?.mid;
                (ln_g - ln_g0 + std::f64::consts::PI * f * eta * t / 4.0).max(-640.0).exp()
            };
            let up = f_alias_bound(d, &shape, &spec, t, true);
            let dn = f_alias_bound(d, &shape, &spec, t, false);
            let total = match (up, dn) {
                (Ok(a), Ok(b)) => a.hi() + b.hi(),
                _ => f64::INFINITY,
            };
            if total > target_tol * scale_t / 4.0 {
                rationale.push(format!(
                    "attempt {attempt}: F alias {total:.2e} vs budget {:.2e} at t = {t}",
                    target_tol * scale_t / 4.0
                ));
                f_ok = false;
                break;
            }
        }
        if !f_ok {
            rationale.push(format!(
                "attempt {attempt}: F alias above budget at c_B = {c_b}; escalating"
            ));
            continue;
        }
        let mut final_rationale = rationale.clone();
        final_rationale.push(format!(
            "accepted: c_B = {c_b}, A = {a_param:.4} (c_A = {c_a} x density), q = {q}, M = {m_trunc}"
        ));
        return Ok(GridSpec { rationale: final_rationale, ..spec });
    }
    Err(Error::BudgetExceeded(format!(
        "no grid parameters met the budget within the escalation cap; trace: {}",
        rationale.join(" | ")
    )))
}
