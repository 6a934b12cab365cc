//! The inverse-Mellin kernel G(u; eta, {lambda_j}, {mu_j}): residue-chain
//! summation with the certified chain tail, the large-u decay bound, and the
//! Dirichlet-sum truncation bound.
//!
//! Chains are indexed by classes of mu_j modulo 1. A single-factor class has
//! order-1 poles everywhere; its residues obey an exact scalar ratio
//! recursion, so the (heavily cancelling) chain sum can be run at extended
//! precision with the transcendental head factored out as a common f64-ball
//! scale. Multi-factor classes fall back to the ball-series recursion, which
//! is sound but loses precision once the terms grow; the grid planner avoids
//! that regime.

use num_complex::Complex64;

use crate::ball::{Ball, CBall};
use crate::descriptor::{GammaFactor, LFunctionDescriptor, SelbergShape};
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;
use crate::special::{gamma_product_expansion, GammaFactorData};
use crate::xf::{combine_log2, XCtx, Xc, Xf};

const CHAIN_CAP: usize = 10_000;
const MAX_PRECISION_BITS: u32 = 1 << 15;

/// One residue chain: the poles rho_0 - m/lambda, m >= 0, of one mu-class.
#[derive(Clone, Debug)]
pub struct ChainInfo {
    /// Head pole (lambda rho_0 + mu* = 0).
    pub rho0: Complex64,
    /// Class representative mu*.
    pub mu_star: Complex64,
    /// Integer offsets d_j of in-class factors (d_j = mu_j - mu*).
    pub in_class_offsets: Vec<i64>,
    /// Out-of-class constants c_i = mu_i - mu* (factor argument at chain
    /// index m is c_i - m).
    pub out_class: Vec<Complex64>,
    /// Pole order at the head.
    pub head_order: usize,
    /// Eventual pole order (class size).
    pub class_size: usize,
}

impl ChainInfo {
    pub fn is_scalar(&self) -> bool {
        self.class_size == 1
    }

    /// m from which every factor argument has nonpositive real part.
    fn hypothesis_start(&self) -> usize {
        let mut m = 0f64;
        for &d in &self.in_class_offsets {
            m = m.max(d as f64);
        }
        for c in &self.out_class {
            m = m.max(c.re);
        }
        m.ceil().max(0.0) as usize
    }

    /// |1 - (lambda rho_m + mu_j)| - lambda per factor, for condition (12).
    fn eq12_product(&self, m: usize, lambda: f64) -> f64 {
        let mut prod = 1.0f64;
        for &d in &self.in_class_offsets {
            let v = Complex64::new(1.0 + m as f64 - d as f64, 0.0).norm() - lambda;
            if v <= 0.0 {
                return 0.0;
            }
            prod *= v;
        }
        for c in &self.out_class {
            let v = (Complex64::new(1.0 + m as f64, 0.0) - c).norm() - lambda;
            if v <= 0.0 {
                return 0.0;
            }
            prod *= v;
        }
        prod
    }

    /// ln |divisor product| for the step m -> m+1 (residue ratio denominator).
    fn step_ln(&self, m: usize) -> f64 {
        let mut acc = 0.0f64;
        for &d in &self.in_class_offsets {
            acc += ((d - 1 - m as i64) as f64).abs().ln();
        }
        for c in &self.out_class {
            acc += (c - Complex64::new(1.0 + m as f64, 0.0)).norm().ln();
        }
        acc
    }
}

/// The pole lattice of prod Gamma(lambda s + mu_j): all chains plus the
/// shared spacing 1/lambda.
#[derive(Clone, Debug)]
pub struct PoleLattice {
    pub lambda: f64,
    pub f: usize,
    pub chains: Vec<ChainInfo>,
    factors: Vec<GammaFactor>,
}

impl PoleLattice {
    pub fn build(shape: &SelbergShape) -> Result<PoleLattice> {
        let f = shape.factors.len();
        let lam0 = shape.factors[0].lambda;
        for g in &shape.factors {
            if g.lambda.mid != lam0.mid || g.lambda.rad != 0.0 {
                return Err(Error::UnequalLambdas(format!(
                    "lambda values {:?} vs {:?}",
                    g.lambda, lam0
                )));
            }
        }
        let lambda = lam0.mid;
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(Error::DomainError("residue chains require 0 < lambda < 1".into()));
        }
        // group mu_j by residue class mod 1
        let mut chains: Vec<(Complex64, Vec<usize>)> = Vec::new();
        'outer: for (j, g) in shape.factors.iter().enumerate() {
            if g.mu.rad > 1e-9 {
                return Err(Error::DomainError(
                    "gamma-factor mu must be exact for pole-lattice construction".into(),
                ));
            }
            for (rep, members) in chains.iter_mut() {
                let diff = g.mu.mid - *rep;
                if diff.im.abs() < 1e-9 && (diff.re - diff.re.round()).abs() < 1e-9 {
                    members.push(j);
                    continue 'outer;
                }
                // ambiguity guard: near-integer but not exact enough
                if diff.im.abs() < 1e-6 && (diff.re - diff.re.round()).abs() < 1e-6 {
                    return Err(Error::InvariantViolation(
                        "pole lattice ambiguity: mu_j differ by nearly but not exactly an integer"
                            .into(),
                    ));
                }
            }
            chains.push((g.mu.mid, vec![j]));
        }
        let mut infos = Vec::new();
        for (_, members) in &chains {
            // representative with minimal real part
            let mu_star = members
                .iter()
                .map(|&j| shape.factors[j].mu.mid)
                .min_by(|a, b| a.re.partial_cmp(&b.re).unwrap())
                .unwrap();
            let in_class_offsets: Vec<i64> = members
                .iter()
                .map(|&j| (shape.factors[j].mu.mid.re - mu_star.re).round() as i64)
                .collect();
            let out_class: Vec<Complex64> = shape
                .factors
                .iter()
                .enumerate()
                .filter(|(j, _)| !members.contains(j))
                .map(|(_, g)| g.mu.mid - mu_star)
                .collect();
            let head_order = in_class_offsets.iter().filter(|&&d| d == 0).count();
            let rho0 = -mu_star / lambda;
            infos.push(ChainInfo {
                rho0,
                mu_star,
                in_class_offsets,
                out_class,
                head_order,
                class_size: members.len(),
            });
        }
        Ok(PoleLattice { lambda, f, chains: infos, factors: shape.factors.clone() })
    }

    fn factor_data(&self) -> Vec<GammaFactorData> {
        self.factors
            .iter()
            .map(|g| GammaFactorData { lambda: g.lambda.mid, mu: g.mu.mid })
            .collect()
    }

    /// Which factors are polar at chain pole m, with their integer k in
    /// Gamma(-k + lambda x).
    fn polar_pattern(&self, chain: &ChainInfo, m: usize) -> Vec<Option<u64>> {
        self.factors
            .iter()
            .map(|g| {
                let arg = g.mu.mid - chain.mu_star - Complex64::new(m as f64, 0.0);
                // in-class factors have integer arg d_j - m; polar iff <= 0
                let d = arg.re.round();
                if arg.im.abs() < 1e-9 && (arg.re - d).abs() < 1e-9 && d <= 0.0 {
                    Some((-d) as u64)
                } else {
                    None
                }
            })
            .collect()
    }
}

/// Result of one kernel evaluation.
#[derive(Clone, Debug)]
pub struct GValue {
    pub u: f64,
    pub eta: f64,
    pub value: CBall,
    pub residues_summed: usize,
    pub tail_bound: f64,
    pub large_u_shortcut: bool,
}

fn check_eta(eta: f64) -> Result<()> {
    if !(eta > -1.0 && eta < 1.0) {
        return Err(Error::DomainError(format!("eta must lie in (-1, 1), got {eta}")));
    }
    Ok(())
}

/// Reusable kernel evaluator: pole lattice, scalar-chain ratio tables at
/// extended precision, and cached per-grid constants.
pub struct GEvaluator {
    pub lattice: PoleLattice,
    pub eta: f64,
    heads: Vec<CBall>,
    tables: Vec<ChainTable>,
    ctx: Option<XCtx>,
    p_bits: u32,
    /// cos/sin of pi f eta / (4 lambda), extended precision.
    phase_y: Option<(Xf, Xf, f64)>,
    /// Large-u lemma constants, when the lemma applies (lambda >= 1/2).
    decay: Option<DecayData>,
}

struct ChainTable {
    /// q_m ratios (q_0 = 1) at extended precision, scalar chains only.
    q: Vec<Xc>,
}

/// Plan for one (chain, u) evaluation.
struct ChainPlan {
    m_stop: usize,
    /// ln of the largest |term| along the chain.
    peak_ln: f64,
    /// ln of the head-scale prefactor |head| * |e^(w(1/2-rho0))|.
    prefix_ln: f64,
}

impl GEvaluator {
    pub fn new(shape: &SelbergShape, eta: f64) -> Result<GEvaluator> {
        check_eta(eta)?;
        let lattice = PoleLattice::build(shape)?;
        let mut heads = Vec::new();
        for chain in &lattice.chains {
            let pattern = lattice.polar_pattern(chain, 0);
            let ser = gamma_product_expansion(
                chain.rho0,
                &lattice.factor_data(),
                &pattern,
                Complex64::new(0.0, 0.0),
                chain.class_size + 6,
            )?;
            // scalar chains: a single polar coefficient (the residue)
            heads.push(ser.residue());
        }
        let decay = decay_data_from_lattice(&lattice, shape, eta).ok();
        Ok(GEvaluator {
            lattice,
            eta,
            heads,
            tables: Vec::new(),
            ctx: None,
            p_bits: 0,
            phase_y: None,
            decay,
        })
    }

    /// The large-u lemma bound, when applicable at this u.
    fn shortcut_bound(&self, u: f64) -> Option<Ball> {
        let data = self.decay.as_ref()?;
        large_u_bound_from(data, u).ok()
    }

    /// Smallest u (within [0, u_max]) from which the large-u shortcut meets
    /// the tolerance; chains never need to run beyond it.
    fn shortcut_onset(&self, u_max: f64, tol: f64) -> f64 {
        let mut u = 0.25f64;
        while u < u_max {
            if let Some(b) = self.shortcut_bound(u) {
                if b.hi() <= tol * 0.5 {
                    return u;
                }
            }
            u += 0.125;
        }
        u_max
    }

    /// Precompute ratio tables so that every u <= u_max can be evaluated to
    /// tolerance >= tol with read-only state (safe to share across threads).
    pub fn prepare(&mut self, u_max: f64, tol: f64) -> Result<()> {
        let u_cap = self.shortcut_onset(u_max, tol);
        let mut need_bits = 64u32;
        let mut lengths = vec![0usize; self.lattice.chains.len()];
        for (i, chain) in self.lattice.chains.iter().enumerate() {
            if !chain.is_scalar() {
                continue;
            }
            let plan = self.plan_chain(chain, &self.heads[i], u_cap, tol)?;
            let bits =
                ((plan.peak_ln - tol.ln()).max(0.0) * std::f64::consts::LOG2_E) as u32 + 80;
            need_bits = need_bits.max(bits);
            lengths[i] = plan.m_stop + 2;
        }
        if need_bits > MAX_PRECISION_BITS {
            return Err(Error::BudgetExceeded(format!(
                "chain evaluation would need {need_bits} bits of working precision"
            )));
        }
        let ctx = XCtx::new(need_bits);
        let p = need_bits;
        let mut tables = Vec::new();
        for (i, chain) in self.lattice.chains.iter().enumerate() {
            if !chain.is_scalar() {
                tables.push(ChainTable { q: Vec::new() });
                continue;
            }
            let mut q = Vec::with_capacity(lengths[i]);
            let mut cur = Xc::one();
            q.push(cur.clone());
            for m in 0..lengths[i] {
                // divide by prod_j (b_j - 1 - m)
                for &d in &chain.in_class_offsets {
                    let (re, e) = cur.re.div(&Xf::from_i64(d - 1 - m as i64), p);
                    let (im, e2) = cur.im.div(&Xf::from_i64(d - 1 - m as i64), p);
                    cur = Xc {
                        re,
                        im,
                        err: combine_log2(
                            cur.err - ((d - 1 - m as i64) as f64).abs().log2(),
                            combine_log2(e, e2),
                        ),
                    };
                }
                for c in &chain.out_class {
                    let div = Xc::from_f64(c.re - 1.0 - m as f64, c.im);
                    cur = cur.div(&div, p);
                }
                q.push(cur.clone());
            }
            tables.push(ChainTable { q });
        }
        // phase of y = e^(w/lambda): cos/sin(pi f eta / (4 lambda)), with the
        // angle formed at working precision from exact inputs
        let lam = self.lattice.lambda;
        if self.eta == 0.0 {
            self.phase_y = Some((Xf::one(), Xf::zero(), f64::NEG_INFINITY));
        } else {
            let (num, e1) = ctx.pi.mul(&Xf::from_f64(self.lattice.f as f64 * self.eta), p + 16);
            let (angle, e2) = num.div(&Xf::from_f64(4.0 * lam), p + 16);
            let aerr = crate::xf::combine_many(&[e1, e2, ctx.const_err]);
            let (c, s, e) = ctx.sincos(&angle, aerr);
            self.phase_y = Some((c, s, e));
        }
        self.ctx = Some(ctx);
        self.p_bits = p;
        self.tables = tables;
        Ok(())
    }

    /// Stopping index and magnitude profile for one chain at offset u.
    fn plan_chain(&self, chain: &ChainInfo, head: &CBall, u: f64, tol: f64) -> Result<ChainPlan> {
        let f = self.lattice.f as f64;
        let a = std::f64::consts::FRAC_PI_4 * f * self.eta;
        let prefix_ln = head.mag().max(1e-300).ln()
            + u * (0.5 - chain.rho0.re)
            + a * chain.rho0.im;
        let ln_y = u / self.lattice.lambda;
        let m_hyp = chain.hypothesis_start();
        let mut lq = 0.0f64;
        let mut peak_ln = prefix_ln;
        let tol_ln = (tol * 0.45).max(1e-290).ln();
        for m in 0..CHAIN_CAP {
            let term_ln = prefix_ln + m as f64 * ln_y + lq;
            peak_ln = peak_ln.max(term_ln);
            if m >= m_hyp {
                let prod = chain.eq12_product(m, self.lattice.lambda);
                let lhs_ok = prod > 0.0 && ln_y.exp() < 0.49 * prod;
                if lhs_ok && term_ln < tol_ln {
                    return Ok(ChainPlan { m_stop: m, peak_ln, prefix_ln });
                }
            }
            lq -= chain.step_ln(m);
        }
        Err(Error::NonConvergent(CHAIN_CAP))
    }

    /// Evaluate G(u) with per-chain tails added to the radius; uses the
    /// large-u lemma as a shortcut when it already meets the tolerance.
    pub fn eval(&self, u: f64, tol: f64) -> Result<GValue> {
        if let Some(b) = self.shortcut_bound(u) {
            if b.hi() <= tol * 0.5 {
                return Ok(GValue {
                    u,
                    eta: self.eta,
                    value: CBall::new(Complex64::new(0.0, 0.0), b.hi()),
                    residues_summed: 0,
                    tail_bound: b.hi(),
                    large_u_shortcut: true,
                });
            }
        }
        let lam = self.lattice.lambda;
        let f = self.lattice.f as f64;
        let mut total = CBall::ZERO;
        let mut summed = 0usize;
        let mut tail_total = 0.0f64;
        for (i, chain) in self.lattice.chains.iter().enumerate() {
            let head = &self.heads[i];
            let plan = self.plan_chain(chain, head, u, tol)?;
            let f64_ok = plan.peak_ln - (tol * 0.45).max(1e-290).ln() < 28.0;
            let (val, tail) = if chain.is_scalar() {
                if f64_ok {
                    self.eval_scalar_f64(chain, head, u, plan.m_stop)?
                } else {
                    self.eval_scalar_x(i, chain, head, u, plan.m_stop, plan.peak_ln, tol)?
                }
            } else {
                if !f64_ok {
                    return Err(Error::BudgetExceeded(
                        "multi-factor pole class needs extended precision; tolerance unreachable"
                            .into(),
                    ));
                }
                self.eval_series_f64(chain, u, plan.m_stop)?
            };
            total = total.add(&val);
            summed += plan.m_stop + 1;
            tail_total += tail;
            let _ = f;
        }
        Ok(GValue {
            u,
            eta: self.eta,
            value: total.inflate(tail_total),
            residues_summed: summed,
            tail_bound: tail_total,
            large_u_shortcut: false,
        })
    }

    /// Scalar chain in plain ball arithmetic (no cancellation past f64).
    fn eval_scalar_f64(
        &self,
        chain: &ChainInfo,
        head: &CBall,
        u: f64,
        m_stop: usize,
    ) -> Result<(CBall, f64)> {
        let lam = self.lattice.lambda;
        let f = self.lattice.f as f64;
        let a = std::f64::consts::FRAC_PI_4 * f * self.eta;
        let w = CBall::from_parts(&Ball::exact(u), &Ball::pi().mul_f64(f * self.eta / 4.0));
        let y = w.mul_f64(1.0 / lam).exp();
        // q table on the fly
        let mut q = Vec::with_capacity(m_stop + 1);
        let mut cur = CBall::ONE;
        q.push(cur);
        for m in 0..m_stop {
            for &d in &chain.in_class_offsets {
                cur = cur.mul_f64(1.0 / ((d - 1 - m as i64) as f64));
            }
            for c in &chain.out_class {
                cur = cur.div(&CBall::exact(c.re - 1.0 - m as f64, c.im))?;
            }
            q.push(cur);
        }
        let mut s = CBall::ZERO;
        for m in (0..=m_stop).rev() {
            s = s.mul(&y).add(&q[m]);
        }
        let rho0 = CBall::exact(chain.rho0.re, chain.rho0.im);
        let prefix = w.mul(&CBall::exact(0.5, 0.0).sub(&rho0)).exp().mul(head);
        let val = prefix.mul(&s);
        // chain tail: |residue at m_stop| = |prefix * y^m_stop * q_(m_stop)|,
        // assembled in log space against overflow
        let tail_ln = prefix.mag().max(1e-300).ln()
            + u / lam * m_stop as f64
            + q[m_stop].mag().max(1e-300).ln();
        let _ = a;
        Ok((val, tail_ln.min(700.0).exp() * 1.01))
    }

    /// Scalar chain at extended precision. The working precision is chosen
    /// per evaluation from the planned peak (the shared tables carry the
    /// maximum precision; entries are truncated down before the Horner loop).
    fn eval_scalar_x(
        &self,
        idx: usize,
        chain: &ChainInfo,
        head: &CBall,
        u: f64,
        m_stop: usize,
        plan_peak_ln: f64,
        tol: f64,
    ) -> Result<(CBall, f64)> {
        let ctx = self.ctx.as_ref().ok_or_else(|| {
            Error::DomainError("GEvaluator::prepare must be called before extended eval".into())
        })?;
        let table = &self.tables[idx];
        if table.q.len() <= m_stop {
            return Err(Error::BudgetExceeded(format!(
                "chain table too short: need {m_stop}, have {}",
                table.q.len()
            )));
        }
        let p_need = ((plan_peak_ln - tol.max(1e-290).ln()).max(0.0)
            * std::f64::consts::LOG2_E) as u32
            + 80;
        let p = p_need.min(self.p_bits);
        let lam = self.lattice.lambda;
        let f = self.lattice.f as f64;
        // y = e^(u/lambda) * (cos phase + i sin phase); the exponent is formed
        // at working precision (an f64 quotient would cap accuracy at 2^-53)
        let (arg_y, e_arg) = Xf::from_f64(u).div(&Xf::from_f64(lam), p + 16);
        let (mag_y, e_mag) = ctx.exp(&arg_y, e_arg);
        let (pc, ps, e_ph) = self.phase_y.as_ref().unwrap();
        let (yre, e1) = mag_y.mul(pc, p);
        let (yim, e2) = mag_y.mul(ps, p);
        let y = Xc {
            re: yre,
            im: yim,
            err: crate::xf::combine_many(&[
                e_mag + 1.0,
                e_ph + mag_y.log2_abs(),
                e1,
                e2,
            ]),
        };
        let mut s = Xc::zero();
        for m in (0..=m_stop).rev() {
            s = s.mul(&y, p).add(&table.q[m].truncated(p), p);
        }
        let s_ball = s.to_cball();
        // prefix in f64 balls (common scale, no cancellation)
        let a = std::f64::consts::FRAC_PI_4 * f * self.eta;
        let w = CBall::from_parts(&Ball::exact(u), &Ball::pi().mul_f64(f * self.eta / 4.0));
        let rho0 = CBall::exact(chain.rho0.re, chain.rho0.im);
        let prefix = w.mul(&CBall::exact(0.5, 0.0).sub(&rho0)).exp().mul(head);
        let val = prefix.mul(&s_ball);
        let tail_ln = prefix.mag().max(1e-300).ln()
            + u / lam * m_stop as f64
            + (table.q[m_stop].log2_abs() + 0.01) * std::f64::consts::LN_2;
        let _ = a;
        Ok((val, tail_ln.min(700.0).exp() * 1.01))
    }

    /// Multi-factor chain: full series recursion (eq. gExpression) in balls.
    fn eval_series_f64(
        &self,
        chain: &ChainInfo,
        u: f64,
        m_stop: usize,
    ) -> Result<(CBall, f64)> {
        let lam = self.lattice.lambda;
        let f = self.lattice.f as f64;
        let w = Complex64::new(u, std::f64::consts::FRAC_PI_4 * f * self.eta);
        let pattern = self.lattice.polar_pattern(chain, 0);
        let guard = chain.class_size + 6;
        let mut ser = gamma_product_expansion(
            chain.rho0,
            &self.lattice.factor_data(),
            &pattern,
            w,
            guard,
        )?;
        let wball = CBall::from_parts(&Ball::exact(u), &Ball::pi().mul_f64(f * self.eta / 4.0));
        let step_scale = wball.mul_f64(1.0 / lam).exp();
        let mut total = ser.residue();
        let mut order = chain.head_order;
        for m in 0..m_stop {
            ser = propagate_chain_step(&ser, chain, m, lam, &step_scale)?;
            // order may grow when a factor turns polar
            order = (-(ser.lowest_order)).max(0) as usize;
            total = total.add(&ser.residue());
        }
        // tail: max |c_j| over the polar part at the stopping pole
        let tail = ser
            .polar_coeffs(order)
            .iter()
            .map(|c| c.mag())
            .fold(0.0f64, f64::max);
        Ok((total, tail * 1.01))
    }
}

/// One chain step of (eq. gExpression):
/// g(x + rho_(m+1)) = e^(w/lambda) g(x + rho_m) prod_j (lambda x + arg_j(m) - 1)^-1
/// with arg_j(m) = lambda rho_m + mu_j.
pub fn propagate_chain_step(
    ser: &TruncatedSeries,
    chain: &ChainInfo,
    m: usize,
    lambda: f64,
    step_scale: &CBall,
) -> Result<TruncatedSeries> {
    let lam = CBall::exact(lambda, 0.0);
    let mut out = ser.scale(step_scale);
    for &d in &chain.in_class_offsets {
        let c0 = CBall::exact((d - 1 - m as i64) as f64, 0.0);
        let div = TruncatedSeries::linear(ser.expansion_point, c0, lam, ser.len());
        out = out.div(&div)?;
    }
    for c in &chain.out_class {
        let c0 = CBall::exact(c.re - 1.0 - m as f64, c.im);
        let div = TruncatedSeries::linear(ser.expansion_point, c0, lam, ser.len());
        out = out.div(&div)?;
    }
    Ok(TruncatedSeries::new(
        ser.expansion_point - Complex64::new(1.0 / lambda, 0.0),
        out.lowest_order,
        out.coeffs,
    ))
}

/// One-shot kernel evaluation (builds the evaluator internally).
pub fn g_eval(d: &LFunctionDescriptor, u: f64, eta: f64, tol: f64) -> Result<GValue> {
    let shape = d.selberg_shape();
    let mut ev = GEvaluator::new(&shape, eta)?;
    // lightweight prepare targeted at this u only
    ev.prepare(u, tol)?;
    ev.eval(u, tol)
}

// ---------------------------------------------------------------------------
// Lemma bounds
// ---------------------------------------------------------------------------

/// Shared constants of the large-u/Dirichlet-tail lemmas.
pub(crate) struct DecayData {
    pub delta: Ball,
    pub mu: CBall,
    pub nu: Vec<Ball>,
    pub k_const: Ball,
    pub lambda: f64,
    pub f: usize,
}

pub(crate) fn decay_data(shape: &SelbergShape, eta: f64) -> Result<DecayData> {
    let lat = PoleLattice::build(shape)?;
    decay_data_from_lattice(&lat, shape, eta)
}

pub(crate) fn decay_data_from_lattice(
    lat: &PoleLattice,
    shape: &SelbergShape,
    eta: f64,
) -> Result<DecayData> {
    let lambda = lat.lambda;
    if lambda < 0.5 {
        return Err(Error::DomainError(
            "decay bounds require lambda_1 = ... = lambda_f >= 1/2".into(),
        ));
    }
    let f = lat.f;
    let ff = f as f64;
    // delta = (pi/2)(1 - |eta|/(2 lambda))
    let delta = Ball::pi()
        .mul_f64(0.5)
        .mul(&Ball::ONE.sub(&Ball::exact(eta.abs() / (2.0 * lambda))));
    // mu = (lambda-1)/(2 lambda) + (1/(f lambda)) (1/2 + sum mu_j)
    let mut musum = CBall::exact(0.5, 0.0);
    for g in &shape.factors {
        musum = musum.add(&g.mu);
    }
    let mu = CBall::exact((lambda - 1.0) / (2.0 * lambda), 0.0)
        .add(&musum.mul_f64(1.0 / (ff * lambda)));
    // nu_j = Re(mu_j) + (1/f - 1)/2
    let nu: Vec<Ball> = shape
        .factors
        .iter()
        .map(|g| g.mu.re().add_f64((1.0 / ff - 1.0) * 0.5))
        .collect();
    // K = (1/pi) sqrt(2^(f+1)/f * e^(delta (f-1))/delta) e^(-pi f eta Im(mu)/4)
    let inner = Ball::exact(2f64.powi(f as i32 + 1) / ff)
        .mul(&delta.mul_f64(ff - 1.0).exp())
        .div(&delta)?;
    let k_const = inner
        .sqrt()?
        .div(&Ball::pi())?
        .mul(&mu.im().mul(&Ball::pi()).mul_f64(-ff * eta / 4.0).exp());
    Ok(DecayData { delta, mu, nu, k_const, lambda, f })
}

/// Lemma bound |G(u)| <= K e^(Re(mu) u) e^(-X1(u)) prod (1 + f nu_j/X1)^nu_j
/// with X1(u) = f delta e^(-delta + u/(f lambda)); requires X1(u) >= f.
pub fn g_large_u_bound(d: &LFunctionDescriptor, u: f64, eta: f64) -> Result<Ball> {
    check_eta(eta)?;
    let shape = d.selberg_shape();
    let data = decay_data(&shape, eta)?;
    large_u_bound_from(&data, u)
}

pub(crate) fn large_u_bound_from(data: &DecayData, u: f64) -> Result<Ball> {
    let ff = data.f as f64;
    let x1 = data
        .delta
        .mul_f64(ff)
        .mul(&data.delta.neg().add_f64(u / (ff * data.lambda)).exp());
    if x1.lo() < ff {
        return Err(Error::DomainError(format!(
            "large-u bound requires X1(u) >= f; X1 = {x1}"
        )));
    }
    let mut bound = data
        .k_const
        .mul(&data.mu.re().mul_f64(u).exp())
        .mul(&x1.neg().exp());
    for nu in &data.nu {
        let base = Ball::ONE.add(&nu.mul_f64(ff).div(&x1)?);
        bound = bound.mul(&pow_ball(&base, nu)?);
    }
    Ok(bound)
}

/// base^expo allowing an exactly-zero exponent.
fn pow_ball(base: &Ball, expo: &Ball) -> Result<Ball> {
    if expo.mid == 0.0 && expo.rad == 0.0 {
        return Ok(Ball::ONE);
    }
    base.powf(expo)
}

/// Lemma bound for |sum_(n>M) a(n)/sqrt(n/N) G(x + log(n/N))| with
/// X2(x) = f delta e^(-delta) (e^x/N)^(1/(f lambda)) and |a(n)| <= C n^alpha.
pub fn dirichlet_tail_bound(
    d: &LFunctionDescriptor,
    m: usize,
    x: f64,
    eta: f64,
) -> Result<Ball> {
    check_eta(eta)?;
    let shape = d.selberg_shape();
    let data = decay_data(&shape, eta)?;
    let (c_growth, alpha) = d.growth()?;
    let ff = data.f as f64;
    let lam = data.lambda;
    let n_cond = shape.conductor;
    // X2(x) M^(1/(f lambda))
    let ex_n = Ball::exact(x).exp().div(&n_cond)?;
    let x2 = data
        .delta
        .mul_f64(ff)
        .mul(&data.delta.neg().exp())
        .mul(&ex_n.powf(&Ball::exact(1.0 / (ff * lam)))?);
    let m_pow = Ball::exact(m as f64).powf(&Ball::exact(1.0 / (ff * lam)))?;
    let z = x2.mul(&m_pow);
    let c = data.mu.re().add_f64(0.5).add(&alpha);
    let c_prime = {
        let v = c.mul_f64(ff * lam).add_f64(-1.0);
        if v.hi() <= 0.0 {
            Ball::ZERO
        } else if v.lo() >= 0.0 {
            v
        } else {
            Ball::from_endpoints(0.0, v.hi())
        }
    };
    if z.lo() <= c_prime.hi().max(ff) {
        return Err(Error::DomainError(format!(
            "Dirichlet tail bound requires X2(x) M^(1/(f lambda)) > max(c', f); got {z}"
        )));
    }
    // K lambda f (e^x/sqrt N)^Re(mu) C M^c e^(-z)/(z - c') prod (1 + f nu_j/z)^nu_j
    let ex_sqrt_n = Ball::exact(x).exp().div(&n_cond.sqrt()?)?;
    let mut bound = data
        .k_const
        .mul_f64(lam * ff)
        .mul(&pow_ball(&ex_sqrt_n, &data.mu.re())?)
        .mul(&c_growth)
        .mul(&pow_ball(&Ball::exact(m as f64), &c)?)
        .mul(&z.neg().exp())
        .div(&z.sub(&c_prime))?;
    for nu in &data.nu {
        let base = Ball::ONE.add(&nu.mul_f64(ff).div(&z)?);
        bound = bound.mul(&pow_ball(&base, nu)?);
    }
    Ok(bound)
}

/// Tail of the Fhat alias images (the penultimate lemma's K-expression):
/// K/(1 - e^(-pi A)) (e^x/sqrt N)^Re(mu) e^(-X2(x)) (1 + lambda f C/(X2(x) - c'))
/// prod (1 + f nu_j/X2(x))^nu_j, a bound on |sum_(l>=0) Fhat(x + 2 pi l A)|
/// after the pole-residue kernel term is removed.
pub fn alias_tail_bound(
    d: &LFunctionDescriptor,
    x: f64,
    eta: f64,
    a_param: f64,
) -> Result<Ball> {
    check_eta(eta)?;
    let shape = d.selberg_shape();
    let data = decay_data(&shape, eta)?;
    let (c_growth, alpha) = d.growth()?;
    let ff = data.f as f64;
    let lam = data.lambda;
    let n_cond = shape.conductor;
    let ex_n = Ball::exact(x).exp().div(&n_cond)?;
    let x2 = data
        .delta
        .mul_f64(ff)
        .mul(&data.delta.neg().exp())
        .mul(&ex_n.powf(&Ball::exact(1.0 / (ff * lam)))?);
    let c = data.mu.re().add_f64(0.5).add(&alpha);
    let c_prime = {
        let v = c.mul_f64(ff * lam).add_f64(-1.0);
        if v.hi() <= 0.0 {
            Ball::ZERO
        } else if v.lo() >= 0.0 {
            v
        } else {
            Ball::from_endpoints(0.0, v.hi())
        }
    };
    if x2.lo() <= c_prime.hi().max(ff) {
        return Err(Error::DomainError(format!(
            "alias tail bound requires X2(x) > max(c', f); got {x2}"
        )));
    }
    let ex_sqrt_n = Ball::exact(x).exp().div(&n_cond.sqrt()?)?;
    let denom = Ball::ONE.sub(&Ball::exact(-std::f64::consts::PI * a_param).exp());
    let mut bound = data
        .k_const
        .div(&denom)?
        .mul(&pow_ball(&ex_sqrt_n, &data.mu.re())?)
        .mul(&x2.neg().exp())
        .mul(&Ball::ONE.add(&c_growth.mul_f64(lam * ff).div(&x2.sub(&c_prime))?));
    for nu in &data.nu {
        let base = Ball::ONE.add(&nu.mul_f64(ff).div(&x2)?);
        bound = bound.mul(&pow_ball(&base, nu)?);
    }
    Ok(bound)
}

/// Re-export of the spec-named operation: local expansion of
/// g(s) = e^(w(1/2-s)) prod Gamma(lambda_j s + mu_j) at a pole rho.
pub fn gamma_polar_expansion(
    d: &LFunctionDescriptor,
    rho: Complex64,
    w: Complex64,
    order: usize,
) -> Result<TruncatedSeries> {
    let shape = d.selberg_shape();
    let lat = PoleLattice::build(&shape)?;
    // locate the chain and index containing rho
    for chain in &lat.chains {
        let lam = lat.lambda;
        let m = ((chain.rho0.re - rho.re) * lam).round();
        let cand = chain.rho0 - Complex64::new(m / lam, 0.0);
        if m >= 0.0 && (cand - rho).norm() < 1e-9 {
            let pattern = lat.polar_pattern(chain, m as usize);
            let found: usize = pattern.iter().filter(|p| p.is_some()).count();
            if found == 0 {
                continue;
            }
            if found != order {
                return Err(Error::OrderMismatch { expected: order, found });
            }
            return gamma_product_expansion(rho, &lat.factor_data(), &pattern, w, order + 4);
        }
    }
    Err(Error::NotAPole(format!("{rho}")))
}
