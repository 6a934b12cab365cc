//! Turing-method zero counting: the smooth counting term Phi(t), sign-change
//! scanning of certified Lambda samples, S(t) from a certified scan, and the
//! completeness certificate that sandwiches the count between averaged-Phi
//! inequalities driven by the S-integral theorems.

use serde::{Deserialize, Serialize};

use crate::ball::{Ball, CBall};
use crate::descriptor::{ClassTag, LFunctionDescriptor};
use crate::error::{Error, Result};
use crate::grid::EvaluatedGrid;
use crate::quad;
use crate::s_integral::{
    artin_rhs_terms, bound_artin_report, bound_selberg_report, selberg_rhs_terms, BoundReport,
    BoundStatus,
};
use crate::special::log_gamma_series;

/// The constant c_0 in N(t) = Phi(t) + S(t) + c_0 for the argument-principle
/// box count: each order of the pole at s = 1 (with its mirror at s = 0)
/// contributes one unit; a declared central zero shifts the start of the
/// count just above it.
pub fn counting_constant(d: &LFunctionDescriptor) -> Ball {
    Ball::exact(d.pole.order() as f64).sub(&Ball::exact(d.central_zero_order as f64 * 0.5))
}

/// Phi(t): the class-appropriate smooth main term of the counting function.
pub fn phi(d: &LFunctionDescriptor, t: f64) -> Result<Ball> {
    phi_ball(d, &Ball::exact(t))
}

/// Phi over a t-interval given as a ball (used by the quadrature).
pub fn phi_ball(d: &LFunctionDescriptor, t: &Ball) -> Result<Ball> {
    let tc = CBall::from_real(t);
    match d.class {
        ClassTag::ArtinType => {
            // (1/pi)(arg omega + t log N/2 - (log pi/2)(r t + Im sum mu)
            //        + sum Im log Gamma((1/2 + i t + mu_j)/2))
            let r = d.gamma_factors.len() as f64;
            let mut acc = arg_omega(&d.omega)?;
            acc = acc.add(&t.mul(&d.conductor.ln()?).mul_f64(0.5));
            let mut im_mu = Ball::ZERO;
            let mut lg_sum = Ball::ZERO;
            for g in &d.gamma_factors {
                im_mu = im_mu.add(&g.mu.im());
                let z = CBall::exact(0.5, 0.0).add(&tc.mul_i()).add(&g.mu).mul_f64(0.5);
                lg_sum = lg_sum.add(&log_gamma_of(&z)?.im());
            }
            let pi_term = Ball::pi().ln()?.mul_f64(0.5).mul(&t.mul_f64(r).add(&im_mu));
            acc = acc.sub(&pi_term).add(&lg_sum);
            acc.div(&Ball::pi())
        }
        _ => {
            // (1/pi)(t log N + sum Im log Gamma(lambda_j/2 + i lambda_j t + mu_j))
            let mut acc = t.mul(&d.conductor.ln()?);
            for g in &d.gamma_factors {
                let z = CBall::from_real(&g.lambda.mul_f64(0.5))
                    .add(&tc.mul_ball(&g.lambda).mul_i())
                    .add(&g.mu);
                acc = acc.add(&log_gamma_of(&z)?.im());
            }
            acc.div(&Ball::pi())
        }
    }
}

fn log_gamma_of(z: &CBall) -> Result<CBall> {
    Ok(log_gamma_series(z, 1)?.coeffs[0])
}

fn arg_omega(omega: &CBall) -> Result<Ball> {
    if omega.rad == 0.0 && omega.mid.im == 0.0 && omega.mid.re < 0.0 {
        return Ok(Ball::pi());
    }
    omega.arg()
}

/// Certified integral of Phi over [a, b] by Gauss-Legendre panels; the
/// derivative bound comes from a polygamma-order jet of log Gamma evaluated
/// over each panel's hull.
pub fn phi_integral(d: &LFunctionDescriptor, a: f64, b: f64) -> Result<Ball> {
    let order = quad::DERIV_ORDER; // 24
    let factors: Vec<(f64, CBall, f64)> = match d.class {
        ClassTag::ArtinType => d
            .gamma_factors
            .iter()
            .map(|g| (0.5, g.mu.mul_f64(0.5).add(&CBall::exact(0.25, 0.0)), 0.5))
            .collect(),
        _ => d
            .gamma_factors
            .iter()
            .map(|g| {
                (
                    g.lambda.mid,
                    g.mu.add(&CBall::from_real(&g.lambda.mul_f64(0.5))),
                    g.lambda.mid,
                )
            })
            .collect(),
    };
    // |Phi^(order)| <= (1/pi) sum scale^order * order! * |c_order| of the
    // log Gamma jet at base + i scale [lo, hi]
    let deriv_bound = |lo: f64, hi: f64| -> f64 {
        let mut fact_ln = 0.0f64;
        for i in 2..=order {
            fact_ln += (i as f64).ln();
        }
        let mut total = 0.0f64;
        for (scale, base, im_scale) in &factors {
            let seg = Ball::from_endpoints(im_scale * lo, im_scale * hi);
            let z = base.add(&CBall::from_real(&seg).mul_i());
            let jet = match log_gamma_series(&z, order + 1) {
                Ok(j) => j,
                Err(_) => return f64::INFINITY,
            };
            let c = jet.coeffs[order].mag();
            total += (scale.ln() * order as f64 + fact_ln + c.max(1e-300).ln()).exp();
        }
        total / std::f64::consts::PI * 1.01
    };
    quad::integrate(&|t: &Ball| phi_ball(d, t), a, b, 2.0, &deriv_bound)
}

// ---------------------------------------------------------------------------
// Sign-change scanning
// ---------------------------------------------------------------------------

/// Disjoint bracketing intervals with certified opposite signs, plus the
/// samples whose enclosures straddle zero (excluded from counting).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanResult {
    pub brackets: Vec<(f64, f64)>,
    pub indeterminate: Vec<f64>,
    pub t_lo: f64,
    pub t_hi: f64,
}

impl ScanResult {
    /// Lower bound on the zero count up to t: brackets fully below t.
    pub fn found_upto(&self, t: f64) -> usize {
        self.brackets.iter().filter(|(_, b)| *b <= t).count()
    }

    /// Exact integral of the step function found_upto over [a, b].
    fn found_integral(&self, a: f64, b: f64) -> f64 {
        let base = self.found_upto(a) as f64 * (b - a);
        let jumps: f64 = self
            .brackets
            .iter()
            .filter(|(_, hi)| *hi > a && *hi <= b)
            .map(|(_, hi)| b - hi)
            .sum();
        base + jumps
    }

    pub fn inside_bracket(&self, t: f64) -> bool {
        self.brackets.iter().any(|(a, b)| t >= *a && t <= *b)
    }
}

/// Maximal list of disjoint intervals between consecutive sign-definite
/// samples of opposite signs; zero-straddling samples are flagged.
pub fn scan_sign_changes(grid: &EvaluatedGrid) -> ScanResult {
    let mut brackets = Vec::new();
    let mut indeterminate = Vec::new();
    let mut last_definite: Option<(f64, bool)> = None;
    for s in &grid.samples {
        if !s.lambda.sign_definite() {
            indeterminate.push(s.t);
            continue;
        }
        let pos = s.lambda.is_positive();
        if let Some((t_prev, prev_pos)) = last_definite {
            if prev_pos != pos {
                brackets.push((t_prev, s.t));
            }
        }
        last_definite = Some((s.t, pos));
    }
    ScanResult {
        brackets,
        indeterminate,
        t_lo: grid.samples.first().map(|s| s.t).unwrap_or(0.0),
        t_hi: grid.samples.last().map(|s| s.t).unwrap_or(0.0),
    }
}

// ---------------------------------------------------------------------------
// S(t) from the scan
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SLabel {
    /// Count below t is certified complete: S(t) = N(t) - Phi(t).
    Certified,
    /// Only the scan's lower bound on N(t) entered: a labeled lower bound.
    ScanLowerBound,
}

/// S(t) = N(t) - Phi(t) (plus the central-zero offset convention).
/// `certified_below` attests a complete verdict covering (0, t].
pub fn s_by_scan(
    d: &LFunctionDescriptor,
    scan: &ScanResult,
    t: f64,
    certified_below: bool,
) -> Result<(Ball, SLabel)> {
    if scan.inside_bracket(t) || scan.indeterminate.iter().any(|&x| (x - t).abs() < 1e-12) {
        return Err(Error::IncompleteBelow(t));
    }
    // S(t) = N(t) - Phi(t) - c_0 with N(t) = found(t) under a complete scan
    let n_t = Ball::exact(scan.found_upto(t) as f64);
    let s = n_t.sub(&phi(d, t)?).sub(&counting_constant(d));
    Ok((s, if certified_below { SLabel::Certified } else { SLabel::ScanLowerBound }))
}

/// pi int_(w1)^(w2) S(t) dt from a certified-complete scan:
/// pi (int N - int Phi), with each zero located inside its bracket.
pub fn s_integral_by_scan(
    d: &LFunctionDescriptor,
    scan: &ScanResult,
    w1: f64,
    w2: f64,
) -> Result<Ball> {
    if scan.inside_bracket(w1) || scan.inside_bracket(w2) {
        return Err(Error::DomainError(
            "window endpoints must not lie inside a zero bracket".into(),
        ));
    }
    // int of (N - c_0) over the window; the S-definition absorbs c_0
    let n_w1 = Ball::exact(scan.found_upto(w1) as f64).sub(&counting_constant(d));
    let mut int_n = n_w1.mul_f64(w2 - w1);
    for (a, b) in &scan.brackets {
        if *b > w1 && *b <= w2 {
            // zero location in [a, b]; contribution (w2 - gamma)
            let gamma = Ball::from_endpoints(*a, *b);
            int_n = int_n.add(&Ball::exact(w2).sub(&gamma));
        }
    }
    let int_phi = phi_integral(d, w1, w2)?;
    Ok(int_n.sub(&int_phi).mul(&Ball::pi()))
}

// ---------------------------------------------------------------------------
// The certificate
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Complete,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub t1: f64,
    pub t2: f64,
    pub h: f64,
    pub epsilon: f64,
    pub x_param: f64,
    pub grid_digest: String,
    pub sign_changes: usize,
    pub brackets: Vec<(f64, f64)>,
    pub indeterminate: Vec<f64>,
    /// Average of Phi over [t2, t2+h].
    pub phi_avg_upper: Ball,
    /// Average of Phi over [t1-h, t1] (absent when t1 = 0).
    pub phi_avg_lower: Option<Ball>,
    pub upper_report: BoundReport,
    pub lower_report: Option<BoundReport>,
    /// The bracket whose floor forces N(t2) <= found(t2) + floor.
    pub upper_slack: Ball,
    /// The bracket whose ceil forces N(t1) >= found(t1) + ceil.
    pub lower_slack: Option<Ball>,
    pub verdict: Verdict,
    pub claimed_zero_count: Option<usize>,
}

/// Turing completeness certificate for the window (t1, t2].
///
/// Derivation: for t >= t2, N(t2) <= N(t) - (found(t) - found(t2)); averaging
/// over [t2, t2+h] and bounding the averaged S through the S-integral theorem
/// gives N(t2) <= found(t2) + floor(avg Phi - avg found + RHS/(pi h)). The
/// matching lower bound at t1 uses the theorem with the endpoint roles
/// exchanged (the proof bounds one boundary row from above and one from
/// below; exchanging rows yields the lower estimate with the same audit).
pub fn certify(
    d: &LFunctionDescriptor,
    grid: &EvaluatedGrid,
    t1: f64,
    t2: f64,
    h: f64,
    eps: f64,
    x: f64,
) -> Result<Certificate> {
    let scan = scan_sign_changes(grid);
    certify_with_scan(d, grid, &scan, t1, t2, h, eps, x)
}

pub fn certify_with_scan(
    d: &LFunctionDescriptor,
    grid: &EvaluatedGrid,
    scan: &ScanResult,
    t1: f64,
    t2: f64,
    h: f64,
    eps: f64,
    x: f64,
) -> Result<Certificate> {
    if t2 + h > scan.t_hi + 1e-9 {
        return Err(Error::DomainError(format!(
            "grid covers t <= {}, but the Turing window needs t2 + h = {}",
            scan.t_hi,
            t2 + h
        )));
    }
    if t1 > 0.0 && t1 - h < -1e-12 {
        return Err(Error::DomainError("t1 - h < 0: shrink h or use t1 = 0".into()));
    }
    // upper window [t2, t2 + h]
    let upper_report = theorem_report(d, t2, t2 + h, eps, x)?;
    if upper_report.status != BoundStatus::Applicable {
        return Err(upper_report.rhs_ball().unwrap_err());
    }
    let rhs_upper = upper_report.rhs_ball()?;
    let phi_avg_upper = phi_integral(d, t2, t2 + h)?.mul_f64(1.0 / h);
    let avg_found_upper = scan.found_integral(t2, t2 + h) / h;
    let c0 = counting_constant(d);
    let upper_slack = phi_avg_upper
        .add(&c0)
        .add(&rhs_upper.div(&Ball::pi().mul_f64(h))?)
        .sub(&Ball::exact(avg_found_upper));
    let upper_int = upper_slack.hi().floor() as i64;

    // lower window [t1-h, t1] (skipped at t1 = 0 where N = 0 exactly)
    let (phi_avg_lower, lower_report, lower_slack, lower_int) = if t1 <= 0.0 {
        (None, None, None, 0i64)
    } else {
        let rep = theorem_report(d, t1 - h, t1, eps, x)?;
        if rep.status != BoundStatus::Applicable {
            return Err(rep.rhs_ball().unwrap_err());
        }
        let r_swap = swapped_rhs(d, t1 - h, t1, eps, x)?;
        let phi_avg = phi_integral(d, t1 - h, t1)?.mul_f64(1.0 / h);
        let avg_found = scan.found_integral(t1 - h, t1) / h;
        let slack = phi_avg
            .add(&counting_constant(d))
            .sub(&r_swap.div(&Ball::pi().mul_f64(h))?)
            .sub(&Ball::exact(avg_found));
        let li = slack.lo().ceil() as i64;
        (Some(phi_avg), Some(rep), Some(slack), li)
    };

    let found_in_window = scan.found_upto(t2) - scan.found_upto(t1);
    let verdict = if upper_int == 0 && lower_int == 0 {
        Verdict::Complete
    } else {
        Verdict::Inconclusive
    };
    Ok(Certificate {
        t1,
        t2,
        h,
        epsilon: eps,
        x_param: x,
        grid_digest: grid.spec.digest(),
        sign_changes: found_in_window,
        brackets: scan
            .brackets
            .iter()
            .filter(|(_, b)| *b > t1 && *b <= t2)
            .copied()
            .collect(),
        indeterminate: scan
            .indeterminate
            .iter()
            .filter(|&&t| t > t1 && t <= t2)
            .copied()
            .collect(),
        phi_avg_upper,
        phi_avg_lower,
        upper_report,
        lower_report,
        upper_slack,
        lower_slack,
        verdict,
        claimed_zero_count: if verdict == Verdict::Complete { Some(found_in_window) } else { None },
    })
}

/// Certificate with the default h sweep {10, 15, 20, 25}: first complete wins.
pub fn certify_sweep(
    d: &LFunctionDescriptor,
    grid: &EvaluatedGrid,
    t1: f64,
    t2: f64,
    eps: f64,
    x: f64,
) -> Result<Certificate> {
    let scan = scan_sign_changes(grid);
    let mut last: Option<Certificate> = None;
    for h in [10.0, 15.0, 20.0, 25.0] {
        if t2 + h > scan.t_hi + 1e-9 {
            break;
        }
        let cert = certify_with_scan(d, grid, &scan, t1, t2, h, eps, x)?;
        if cert.verdict == Verdict::Complete {
            return Ok(cert);
        }
        last = Some(cert);
    }
    last.ok_or_else(|| Error::DomainError("grid too short for any averaging window".into()))
}

fn theorem_report(
    d: &LFunctionDescriptor,
    a: f64,
    b: f64,
    eps: f64,
    x: f64,
) -> Result<BoundReport> {
    match d.class {
        ClassTag::ArtinType => bound_artin_report(d, a, b, eps, x),
        ClassTag::Selberg => bound_selberg_report(d, a, b, eps, x, false),
        ClassTag::SelbergPolynomial => bound_selberg_report(d, a, b, eps, x, true),
    }
}

/// The endpoint-role-exchanged right-hand side over [a, b]:
/// a lower bound -R for pi int_a^b S(t) dt.
fn swapped_rhs(d: &LFunctionDescriptor, a: f64, b: f64, eps: f64, x: f64) -> Result<Ball> {
    let terms = match d.class {
        ClassTag::ArtinType => artin_rhs_terms(d, a, b, eps, x)?,
        ClassTag::Selberg => selberg_rhs_terms(d, a, b, a, eps, x, false)?,
        ClassTag::SelbergPolynomial => selberg_rhs_terms(d, a, b, a, eps, x, true)?,
    };
    Ok(terms.iter().fold(Ball::ZERO, |acc, (_, t)| acc.add(t)))
}
