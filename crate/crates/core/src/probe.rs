//! Numerical probes for the limit statements built on the tail engine.
//!
//! Each probe turns an "as n goes to infinity" claim into a finite
//! deviation table over a schedule of indices, so the trend (and its
//! log-log decay slope) can be inspected instead of asserted:
//!
//! * adjacent-tail ratios -R_(n-1)/R_n and -R_(n+1)/R_n, claimed -> 1;
//! * F_n = (-1)^n (n+1)^(-s) / R_n, claimed -> 2;
//! * the scaled error eps_n (n+0.5)^s, claimed -> 0;
//! * a sup-norm scan of |R_n| against the bound n^(-sigma);
//! * a critical-line zero locator minimizing |eta(1/2+it)|;
//! * the iterated-limit exchange table comparing partial-sum ratios,
//!   tail ratios, the growth term (n+0.5)^(2 sigma - 1 + 2it), and
//!   lambda at s = sigma + i(t0 + delta_t).

use rayon::prelude::*;

use crate::error::{EtaError, Result};
use crate::eta::{
    error_term, eta_full, partial_sum_snapshots_dual, tail_approx, tail_remainder, TailIndex,
    TailMethod,
};
use crate::funceq::eta_lambda;
use crate::mp::{complex_power, round_scaled_int, BigComplex, BigReal, Precision};

/// Ascending list of indices realizing one pass toward the limit.
#[derive(Clone, Debug)]
pub struct Schedule {
    ns: Vec<TailIndex>,
}

impl Schedule {
    /// At least two strictly increasing indices.
    pub fn new(ns: Vec<TailIndex>) -> Result<Self> {
        if ns.len() < 2 {
            return Err(EtaError::Config(
                "a schedule needs at least two indices".into(),
            ));
        }
        if ns.windows(2).any(|w| w[1] <= w[0]) {
            return Err(EtaError::Config(
                "schedule indices must be strictly increasing".into(),
            ));
        }
        Ok(Self { ns })
    }

    /// The default geometric ladder 10^2, 10^3, ..., 10^8.
    pub fn geometric_default() -> Self {
        let ns = (2..=8)
            .map(|e| TailIndex::new(10u64.pow(e)).expect("in range"))
            .collect();
        Self { ns }
    }

    pub fn indices(&self) -> &[TailIndex] {
        &self.ns
    }

    pub fn max(&self) -> TailIndex {
        *self.ns.last().expect("nonempty")
    }
}

/// One probe observation: the quantity at n and its distance from the
/// claimed limit. `undefined` marks rows whose defining ratio could not
/// be trusted (denominator at or below its own error bound).
#[derive(Clone, Debug)]
pub struct ProbeRow {
    pub n: TailIndex,
    pub quantity: BigComplex,
    pub deviation: BigReal,
    pub undefined: bool,
}

/// A labelled deviation sequence over a schedule.
#[derive(Clone, Debug)]
pub struct ProbeSeries {
    pub label: String,
    pub rows: Vec<ProbeRow>,
}

/// Sup-norm scan outcome: largest |R_n| seen on the grid, the claimed
/// bound n^(-sigma), the comparison verdict, and where the sup occurred.
#[derive(Clone, Debug)]
pub struct ScanResult {
    pub sup_tail: BigReal,
    pub bound: BigReal,
    pub pass: bool,
    pub at_t: BigReal,
}

/// A located critical-line zero of eta with its certification residual
/// |eta(1/2 + i t0)| and the final enclosing bracket.
#[derive(Clone, Debug)]
pub struct ZeroResult {
    pub t0: BigReal,
    pub residual: BigReal,
    pub bracket: (BigReal, BigReal),
}

/// One exchange-table row at s = sigma + i(t0 + delta_t).
///
/// `coincidence` is only recorded where it is meaningful: delta_t = 0 on
/// sigma = 1/2, where eta_n = -R_n up to |eta(s0)| and the two ratios
/// must agree. `flagged` marks a partial sum too small for its ratio to
/// mean anything.
#[derive(Clone, Debug)]
pub struct ExchangeRow {
    pub n: TailIndex,
    pub delta_t: BigReal,
    pub partial_ratio: BigComplex,
    pub tail_ratio: BigComplex,
    pub growth: BigComplex,
    pub lambda: BigComplex,
    pub coincidence: Option<BigReal>,
    pub flagged: bool,
}

/// Exchange table over (n, delta_t), ordered n-major.
#[derive(Clone, Debug)]
pub struct ExchangeReport {
    pub sigma: BigReal,
    pub t0: BigReal,
    pub offsets: Vec<BigReal>,
    pub rows: Vec<ExchangeRow>,
}

fn strip_sigma(sigma: &BigReal) -> Result<()> {
    let one = BigReal::one(sigma.prec());
    if sigma.is_positive() && sigma.lt(&one) {
        Ok(())
    } else {
        Err(EtaError::Domain(format!(
            "sigma = {} must lie in the open interval (0,1)",
            sigma.to_f64()
        )))
    }
}

/// base^expo for base > 0, real.
fn real_power(base: &BigReal, expo: &BigReal, prec: Precision) -> Result<BigReal> {
    let pw = prec.plus(16);
    Ok(base.at(pw).ln(pw)?.mul(expo, pw).exp(prec)?)
}

/// Both adjacent-tail ratio sequences -R_(n-1)/R_n and -R_(n+1)/R_n
/// with deviations from 1.
pub fn lemma1_ratios(
    s: &BigComplex,
    sched: &Schedule,
    prec: Precision,
) -> Result<(ProbeSeries, ProbeSeries)> {
    if sched.indices()[0].get() < 1 {
        return Err(EtaError::Domain(
            "adjacent-tail ratios need n >= 1 for the n-1 neighbor".into(),
        ));
    }
    let pw = prec.plus(16);
    let one = BigComplex::one(pw);
    let rows: Vec<(ProbeRow, ProbeRow)> = sched
        .indices()
        .par_iter()
        .map(|&n| -> Result<(ProbeRow, ProbeRow)> {
            // Three independent tail evaluations; the ratios are not
            // derived through the recurrence they are probing.
            let r_prev = tail_remainder(s, TailIndex::new(n.get() - 1)?, pw, TailMethod::HurwitzPair)?;
            let r_curr = tail_remainder(s, n, pw, TailMethod::HurwitzPair)?;
            let r_next = tail_remainder(s, TailIndex::new(n.get() + 1)?, pw, TailMethod::HurwitzPair)?;
            let make = |num: &BigComplex| -> Result<ProbeRow> {
                let undefined = r_curr.value.abs(pw).le(&r_curr.err_bound.scale_pow2(2));
                if undefined || r_curr.value.is_zero() {
                    return Ok(ProbeRow {
                        n,
                        quantity: BigComplex::zero(prec),
                        deviation: BigReal::zero(prec),
                        undefined: true,
                    });
                }
                let q = num.neg_val().div(&r_curr.value, pw)?;
                let deviation = q.sub(&one, pw).abs(prec);
                Ok(ProbeRow {
                    n,
                    quantity: q.at(prec),
                    deviation,
                    undefined: false,
                })
            };
            Ok((make(&r_prev.value)?, make(&r_next.value)?))
        })
        .collect::<Result<_>>()?;
    let (prev, next): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    Ok((
        ProbeSeries {
            label: "tail-ratio-prev".into(),
            rows: prev,
        },
        ProbeSeries {
            label: "tail-ratio-next".into(),
            rows: next,
        },
    ))
}

/// F_n = (-1)^n (n+1)^(-s) / R_n with deviations from 2.
pub fn f_sequence(s: &BigComplex, sched: &Schedule, prec: Precision) -> Result<ProbeSeries> {
    let pw = prec.plus(16);
    let two = BigComplex::from_real(BigReal::from_u64(2, pw));
    let rows: Vec<ProbeRow> = sched
        .indices()
        .par_iter()
        .map(|&n| -> Result<ProbeRow> {
            let r = tail_remainder(s, n, pw, TailMethod::HurwitzPair)?;
            if r.value.is_zero() || r.value.abs(pw).le(&r.err_bound.scale_pow2(2)) {
                return Ok(ProbeRow {
                    n,
                    quantity: BigComplex::zero(prec),
                    deviation: BigReal::zero(prec),
                    undefined: true,
                });
            }
            let num = complex_power(&BigReal::from_u64(n.get() + 1, pw), &s.neg_val(), pw)?;
            let signed = if n.is_even() { num } else { num.neg_val() };
            let f = signed.div(&r.value, pw)?;
            Ok(ProbeRow {
                n,
                quantity: f.at(prec),
                deviation: f.sub(&two, pw).abs(prec),
                undefined: false,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ProbeSeries {
        label: "f-sequence".into(),
        rows,
    })
}

/// eps_n (n+0.5)^s with deviation |quantity| (the claimed limit is 0).
pub fn eps_scaled(s: &BigComplex, sched: &Schedule, prec: Precision) -> Result<ProbeSeries> {
    let pw = prec.plus(16);
    let half = BigReal::one(pw).scale_pow2(-1);
    let rows: Vec<ProbeRow> = sched
        .indices()
        .par_iter()
        .map(|&n| -> Result<ProbeRow> {
            let rep = error_term(s, n, pw)?;
            let base = BigReal::from_u64(n.get(), pw).add(&half, pw);
            let scale = complex_power(&base, s, pw)?;
            let q = rep.eps_n.mul(&scale, pw);
            Ok(ProbeRow {
                n,
                quantity: q.at(prec),
                deviation: q.abs(prec),
                undefined: false,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ProbeSeries {
        label: "eps-scaled".into(),
        rows,
    })
}

/// Sup of |R_n(sigma+it)| over the grid versus the bound n^(-sigma).
pub fn uniform_bound_scan(
    sigma: &BigReal,
    t_grid: &[BigReal],
    n: TailIndex,
    prec: Precision,
) -> Result<ScanResult> {
    strip_sigma(sigma)?;
    if t_grid.is_empty() {
        return Err(EtaError::Domain("the scan grid is empty".into()));
    }
    if n.get() == 0 {
        return Err(EtaError::Domain("the bound n^(-sigma) needs n >= 1".into()));
    }
    let pw = prec.plus(16);
    // The accelerated path: grids are wide, and the scan only needs a
    // few sound digits per point, not a cancellation-guarded pair.
    let mags: Vec<BigReal> = t_grid
        .par_iter()
        .map(|t| -> Result<BigReal> {
            let s = BigComplex::new(sigma.at(pw), t.at(pw));
            Ok(tail_remainder(&s, n, pw, TailMethod::DirectAccel)?
                .value
                .abs(pw))
        })
        .collect::<Result<_>>()?;
    let mut best = 0usize;
    for (i, m) in mags.iter().enumerate() {
        if m.gt(&mags[best]) {
            best = i;
        }
    }
    let bound = real_power(
        &BigReal::from_u64(n.get(), pw),
        &sigma.neg_val().at(pw),
        prec,
    )?;
    let sup_tail = mags[best].at(prec);
    let pass = sup_tail.lt(&bound);
    Ok(ScanResult {
        sup_tail,
        bound,
        pass,
        at_t: t_grid[best].at(prec),
    })
}

/// |eta(1/2 + it)| at working precision.
fn eta_line_mag(t: &BigReal, pw: Precision) -> Result<BigReal> {
    let s = BigComplex::new(BigReal::one(pw).scale_pow2(-1), t.at(pw));
    Ok(eta_full(&s, pw)?.value.abs(pw))
}

const GRID_STEP: f64 = 0.05;

/// Grid positions lo + i*(width/count) covering [lo, hi] at step <= 0.05.
fn scan_grid(lo: &BigReal, hi: &BigReal, pw: Precision) -> Vec<BigReal> {
    let width = hi.sub(lo, pw);
    let count = (width.to_f64() / GRID_STEP).ceil().max(1.0) as u64;
    let step = width.div_u64(count, pw).expect("count >= 1");
    (0..=count)
        .map(|i| lo.add(&step.mul_u64(i, pw), pw))
        .collect()
}

/// Golden-section minimization of |eta(1/2+it)| on [a, b].
fn refine_minimum(a0: &BigReal, b0: &BigReal, pw: Precision) -> Result<(BigReal, BigReal, (BigReal, BigReal))> {
    // (sqrt 5 - 1)/2.
    let gr = BigReal::from_u64(5, pw)
        .sqrt(pw)?
        .sub(&BigReal::one(pw), pw)
        .scale_pow2(-1);
    let mut a = a0.at(pw);
    let mut b = b0.at(pw);
    let span = |a: &BigReal, b: &BigReal| b.sub(a, pw);
    let place = |a: &BigReal, b: &BigReal, toward_a: bool| {
        let g = gr.mul(&span(a, b), pw);
        if toward_a {
            b.sub(&g, pw)
        } else {
            a.add(&g, pw)
        }
    };
    let mut c = place(&a, &b, true);
    let mut d = place(&a, &b, false);
    let mut fc = eta_line_mag(&c, pw)?;
    let mut fd = eta_line_mag(&d, pw)?;
    let t_scale = b.abs().add(&BigReal::one(pw), pw);
    let tol = t_scale.scale_pow2(-((pw.bits() / 2 + 10) as i32));
    let mut iterations = 0u32;
    while span(&a, &b).gt(&tol) && iterations < 600 {
        if fc.lt(&fd) {
            b = d;
            d = c;
            fd = fc;
            c = place(&a, &b, true);
            fc = eta_line_mag(&c, pw)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = place(&a, &b, false);
            fd = eta_line_mag(&d, pw)?;
        }
        iterations += 1;
    }
    let mid = a.add(&b, pw).scale_pow2(-1);
    let residual = eta_line_mag(&mid, pw)?;
    Ok((mid, residual, (a, b)))
}

/// Certification thresholds for a refined minimum of |eta(1/2+it)|.
const ACCEPT_RESIDUAL: &str = "1e-20";
const REJECT_RESIDUAL: &str = "1e-6";

fn certify(t0: BigReal, residual: BigReal, bracket: (BigReal, BigReal), prec: Precision) -> Result<ZeroResult> {
    let pw = residual.prec();
    let accept = BigReal::parse_decimal(ACCEPT_RESIDUAL, pw).expect("literal");
    let reject = BigReal::parse_decimal(REJECT_RESIDUAL, pw).expect("literal");
    if residual.lt(&accept) {
        return Ok(ZeroResult {
            t0: t0.at(prec),
            residual: residual.at(prec),
            bracket: (bracket.0.at(prec), bracket.1.at(prec)),
        });
    }
    if residual.ge(&reject) {
        return Err(EtaError::NoZero(format!(
            "no zero of eta(1/2+it) in the bracket: minimum residual {:.3e}",
            residual.to_f64()
        )));
    }
    Err(EtaError::PrecisionInsufficient(format!(
        "minimum residual {:.3e} sits between the certification threshold \
         {ACCEPT_RESIDUAL} and the rejection threshold {REJECT_RESIDUAL}; \
         raise the precision",
        residual.to_f64()
    )))
}

/// Locates the zero of eta(1/2+it) inside a bracket of width <= 5:
/// 0.05-step grid scan, then golden-section refinement of the minimum.
pub fn locate_zero(bracket: (&BigReal, &BigReal), prec: Precision) -> Result<ZeroResult> {
    let pw = prec.plus(16);
    let (lo, hi) = (bracket.0.at(pw), bracket.1.at(pw));
    let width = hi.sub(&lo, pw);
    if !width.is_positive() {
        return Err(EtaError::Domain("bracket must satisfy lo < hi".into()));
    }
    if width.gt(&BigReal::from_u64(5, pw)) {
        return Err(EtaError::Domain(
            "bracket width exceeds 5; narrow it or use a range scan".into(),
        ));
    }
    let grid = scan_grid(&lo, &hi, pw);
    let mags: Vec<BigReal> = grid
        .par_iter()
        .map(|t| eta_line_mag(t, pw))
        .collect::<Result<_>>()?;
    let mut best = 0usize;
    for (i, m) in mags.iter().enumerate() {
        if m.lt(&mags[best]) {
            best = i;
        }
    }
    let a = if best == 0 { &grid[0] } else { &grid[best - 1] };
    let b = if best + 1 == grid.len() {
        &grid[grid.len() - 1]
    } else {
        &grid[best + 1]
    };
    let (t0, residual, final_bracket) = refine_minimum(a, b, pw)?;
    certify(t0, residual, final_bracket, prec)
}

/// Every certified zero of eta(1/2+it) for t in [lo, hi], width <= 100.
///
/// Strict local minima of the 0.05-step grid are refined independently;
/// minima that fail certification are dropped rather than reported.
pub fn zeros_in_range(lo: &BigReal, hi: &BigReal, prec: Precision) -> Result<Vec<ZeroResult>> {
    let pw = prec.plus(16);
    let (lo, hi) = (lo.at(pw), hi.at(pw));
    let width = hi.sub(&lo, pw);
    if !width.is_positive() {
        return Err(EtaError::Domain("range must satisfy lo < hi".into()));
    }
    if width.gt(&BigReal::from_u64(100, pw)) {
        return Err(EtaError::Domain("range width exceeds 100".into()));
    }
    let grid = scan_grid(&lo, &hi, pw);
    let mags: Vec<BigReal> = grid
        .par_iter()
        .map(|t| eta_line_mag(t, pw))
        .collect::<Result<_>>()?;
    let candidates: Vec<usize> = (1..grid.len().saturating_sub(1))
        .filter(|&i| mags[i].lt(&mags[i - 1]) && mags[i].lt(&mags[i + 1]))
        .collect();
    let zeros: Vec<Option<ZeroResult>> = candidates
        .par_iter()
        .map(|&i| -> Result<Option<ZeroResult>> {
            let (t0, residual, bracket) = refine_minimum(&grid[i - 1], &grid[i + 1], pw)?;
            match certify(t0, residual, bracket, prec) {
                Ok(z) => Ok(Some(z)),
                Err(EtaError::NoZero(_)) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;
    Ok(zeros.into_iter().flatten().collect())
}

/// The iterated-limit exchange table at s = sigma + i(t0 + delta_t).
///
/// Per (n, delta_t): the partial-sum ratio eta_n(1-s)/eta_n(s), the tail
/// ratio R_n(1-s)/R_n(s), the growth term (n+0.5)^(2 sigma - 1 + 2it),
/// and lambda(s). Rows are ordered n-major, offsets minor.
pub fn exchange_report(
    sigma: &BigReal,
    t0: &BigReal,
    sched: &Schedule,
    offsets: &[BigReal],
    prec: Precision,
) -> Result<ExchangeReport> {
    strip_sigma(sigma)?;
    if offsets.is_empty() {
        return Err(EtaError::Config("no offsets given".into()));
    }
    if offsets.iter().any(|d| d.is_negative()) {
        return Err(EtaError::Domain("offsets must be >= 0".into()));
    }
    let pw = prec.plus(16);
    let half = BigReal::one(pw).scale_pow2(-1);
    let on_center = sigma.at(pw).sub(&half, pw).is_zero();
    let two_sigma_minus_one = sigma.at(pw).scale_pow2(1).sub(&BigReal::one(pw), pw);

    // rows_by_offset[j][i] is the row at (sched[i], offsets[j]).
    let rows_by_offset: Vec<Vec<ExchangeRow>> = offsets
        .iter()
        .map(|dt| -> Result<Vec<ExchangeRow>> {
            let t = t0.at(pw).add(&dt.at(pw), pw);
            let s = BigComplex::new(sigma.at(pw), t.clone());
            let lambda = eta_lambda(&s, pw)?.value;
            let growth_exp = BigComplex::new(two_sigma_minus_one.clone(), t.scale_pow2(1));
            let partials = partial_sum_snapshots_dual(&s, sched.indices(), pw)?;
            let record_coincidence = on_center && dt.is_zero();
            sched
                .indices()
                .par_iter()
                .zip(partials)
                .map(|(&n, (ps, ps_dual))| -> Result<ExchangeRow> {
                    let r = tail_remainder(&s, n, pw, TailMethod::HurwitzPair)?;
                    let one_minus_s = BigComplex::one(pw).sub(&s, pw);
                    let r_dual = tail_remainder(&one_minus_s, n, pw, TailMethod::HurwitzPair)?;
                    let tail_ratio = r_dual.value.div(&r.value, pw)?;
                    let base = BigReal::from_u64(n.get(), pw).add(&half, pw);
                    let growth = complex_power(&base, &growth_exp, pw)?;
                    let threshold = BigReal::one(pw)
                        .add(&ps_dual.value.abs(pw), pw)
                        .scale_pow2(-(prec.bits() as i32) / 2);
                    let flagged = ps.value.abs(pw).le(&threshold);
                    let partial_ratio = if ps.value.is_zero() {
                        BigComplex::zero(pw)
                    } else {
                        ps_dual.value.div(&ps.value, pw)?
                    };
                    let coincidence = if record_coincidence {
                        Some(partial_ratio.sub(&tail_ratio, pw).abs(prec))
                    } else {
                        None
                    };
                    Ok(ExchangeRow {
                        n,
                        delta_t: dt.at(prec),
                        partial_ratio: partial_ratio.at(prec),
                        tail_ratio: tail_ratio.at(prec),
                        growth: growth.at(prec),
                        lambda: lambda.at(prec),
                        coincidence,
                        flagged,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(sched.indices().len() * offsets.len());
    for i in 0..sched.indices().len() {
        for by_offset in &rows_by_offset {
            rows.push(by_offset[i].clone());
        }
    }
    Ok(ExchangeReport {
        sigma: sigma.at(prec),
        t0: t0.at(prec),
        offsets: offsets.iter().map(|d| d.at(prec)).collect(),
        rows,
    })
}

/// Least-squares slope and intercept of log10(q) against log10(n).
pub fn decay_fit(points: &[(u64, BigReal)], prec: Precision) -> Result<(BigReal, BigReal)> {
    if points.len() < 3 {
        return Err(EtaError::Domain(
            "a decay fit needs at least three points".into(),
        ));
    }
    let pw = prec.plus(16);
    let ln10 = BigReal::from_u64(10, pw).ln(pw)?;
    let mut xs = Vec::with_capacity(points.len());
    let mut ys = Vec::with_capacity(points.len());
    for (n, q) in points {
        if *n == 0 {
            return Err(EtaError::Domain("decay fit needs n >= 1".into()));
        }
        if !q.is_positive() {
            return Err(EtaError::Domain(format!(
                "decay fit needs positive quantities, got {}",
                q.to_f64()
            )));
        }
        xs.push(BigReal::from_u64(*n, pw).ln(pw)?.div(&ln10, pw)?);
        ys.push(q.at(pw).ln(pw)?.div(&ln10, pw)?);
    }
    let k = BigReal::from_u64(points.len() as u64, pw);
    let mean = |v: &[BigReal]| -> Result<BigReal> {
        let mut acc = BigReal::zero(pw);
        for x in v {
            acc = acc.add(x, pw);
        }
        acc.div(&k, pw)
    };
    let mx = mean(&xs)?;
    let my = mean(&ys)?;
    let mut sxx = BigReal::zero(pw);
    let mut sxy = BigReal::zero(pw);
    for (x, y) in xs.iter().zip(&ys) {
        let dx = x.sub(&mx, pw);
        let dy = y.sub(&my, pw);
        sxx = sxx.add(&dx.mul(&dx, pw), pw);
        sxy = sxy.add(&dx.mul(&dy, pw), pw);
    }
    if sxx.is_zero() {
        return Err(EtaError::Domain(
            "decay fit needs at least two distinct n".into(),
        ));
    }
    let slope = sxy.div(&sxx, pw)?;
    let intercept = my.sub(&slope.mul(&mx, pw), pw);
    Ok((slope.at(prec), intercept.at(prec)))
}

/// Componentwise relative errors |Re eps / Re R| and |Im eps / Im R|
/// recomputed from fixed-digit decimal roundings of R_n and T_n.
///
/// Published tables built from printed decimals differ from the true
/// ratios once rounding in the last retained digit dominates eps; this
/// reproduces exactly that pipeline.
pub fn digit_rounded_error(
    s: &BigComplex,
    n: TailIndex,
    digits: u32,
    prec: Precision,
) -> Result<(BigReal, BigReal)> {
    let g = 2 * (64 - (n.get() + 2).leading_zeros()) + 32;
    let pw = prec.plus(g);
    let r = tail_remainder(s, n, pw, TailMethod::HurwitzPair)?;
    let t = tail_approx(s, n, pw)?;
    let component = |rv: &BigReal, tv: &BigReal| -> Result<BigReal> {
        let r_int = round_scaled_int(rv, digits, pw);
        let t_int = round_scaled_int(tv, digits, pw);
        if r_int.is_zero() {
            return Err(EtaError::PrecisionInsufficient(format!(
                "tail component rounds to zero at {digits} digits"
            )));
        }
        r_int.sub(&t_int, pw).abs().div(&r_int.abs(), prec)
    };
    Ok((
        component(r.value.re(), t.re())?,
        component(r.value.im(), t.im())?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eta::partial_sum;
    use crate::mp::constant_ln2;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    fn complex(re: &str, im: &str, prec: Precision) -> BigComplex {
        BigComplex::new(
            BigReal::parse_decimal(re, prec).unwrap(),
            BigReal::parse_decimal(im, prec).unwrap(),
        )
    }

    fn real(lit: &str, prec: Precision) -> BigReal {
        BigReal::parse_decimal(lit, prec).unwrap()
    }

    fn idx(n: u64) -> TailIndex {
        TailIndex::new(n).unwrap()
    }

    fn sched(ns: &[u64]) -> Schedule {
        Schedule::new(ns.iter().map(|&n| idx(n)).collect()).unwrap()
    }

    fn test_point(prec: Precision) -> BigComplex {
        complex("0.1234", "56.789", prec)
    }

    #[test]
    fn schedule_validation() {
        assert!(Schedule::new(vec![idx(5)]).is_err());
        assert!(Schedule::new(vec![idx(5), idx(5)]).is_err());
        assert!(Schedule::new(vec![idx(9), idx(3)]).is_err());
        let s = Schedule::geometric_default();
        assert_eq!(s.indices().len(), 7);
        assert_eq!(s.max().get(), 100_000_000);
    }

    /// The s = 1 closed forms: the probes themselves run on the open
    /// strip, so the formulas are exercised directly through
    /// eta_full/partial_sum, where R_n(1) = ln 2 - eta_n(1).
    #[test]
    fn closed_forms_on_the_boundary() {
        let prec = p(192);
        let pw = prec.plus(16);
        let one = complex("1", "0", pw);
        let ln2 = constant_ln2(pw);
        let tail_at = |n: u64| -> BigReal {
            let head = partial_sum(&one, idx(n), pw).unwrap().value;
            ln2.sub(head.re(), pw)
        };
        let r1 = tail_at(1);
        let r2 = tail_at(2);
        // -R_1/R_2 = (1 - ln 2)/(ln 2 - 1/2), positive: R_1 = ln 2 - 1 < 0.
        let ratio = r1.neg_val().div(&r2, pw).unwrap();
        let want = real("1.588699449562089830805384", pw);
        assert!(ratio.sub(&want, pw).abs().le(&real("1e-24", pw)));
        // F_2 = (1/3)/R_2.
        let third = BigReal::one(pw).div_u64(3, pw).unwrap();
        let f2 = third.div(&r2, pw).unwrap();
        let want = real("1.725799633041393220536923", pw);
        assert!(f2.sub(&want, pw).abs().le(&real("1e-24", pw)));
        // eps_2 * 2.5 = (ln 2 - 0.7) * 2.5.
        let eps2 = r2.sub(&real("0.2", pw), pw);
        let scaled = eps2.mul(&real("2.5", pw), pw);
        let want = real("-0.0171320486001367264569197", pw);
        assert!(scaled.sub(&want, pw).abs().le(&real("1e-24", pw)));
    }

    #[test]
    fn lemma1_deviations_shrink() {
        let prec = p(192);
        let s = test_point(prec);
        let (prev, next) = lemma1_ratios(&s, &sched(&[1_000, 10_000, 100_000, 1_000_000]), prec).unwrap();
        assert_eq!(prev.label, "tail-ratio-prev");
        for series in [&prev, &next] {
            let last = series.rows.last().unwrap();
            assert!(!last.undefined);
            assert!(last.deviation.lt(&real("1e-4", prec)), "final deviation {:?}", last.deviation.to_f64());
            for w in series.rows.windows(2) {
                assert!(w[1].deviation.lt(&w[0].deviation), "deviations must shrink");
            }
        }
    }

    #[test]
    fn f_sequence_approaches_two_like_one_over_n() {
        let prec = p(192);
        let s = test_point(prec);
        let series = f_sequence(&s, &sched(&[1_000, 10_000, 100_000, 1_000_000]), prec).unwrap();
        let last = series.rows.last().unwrap();
        assert!(last.deviation.lt(&real("1e-3", prec)));
        let pts: Vec<(u64, BigReal)> = series
            .rows
            .iter()
            .map(|r| (r.n.get(), r.deviation.clone()))
            .collect();
        let (slope, _) = decay_fit(&pts, prec).unwrap();
        let sf = slope.to_f64();
        assert!((sf + 1.0).abs() < 0.1, "log-log slope {sf}");
    }

    #[test]
    fn scaled_error_tends_to_zero() {
        let prec = p(192);
        let s = test_point(prec);
        let series = eps_scaled(&s, &sched(&[100, 1_000, 10_000, 100_000, 1_000_000]), prec).unwrap();
        for w in series.rows.windows(2) {
            assert!(w[1].deviation.lt(&w[0].deviation));
        }
        let last = series.rows.last().unwrap();
        assert!(last.deviation.lt(&real("1e-8", prec)), "final {:?}", last.deviation.to_f64());
    }

    #[test]
    fn uniform_scan_small_grid() {
        let prec = p(192);
        let grid: Vec<BigReal> = (0..=100).map(|k| BigReal::from_u64(k, prec)).collect();
        let scan = uniform_bound_scan(&real("0.5", prec), &grid, idx(100), prec).unwrap();
        let sup = scan.sup_tail.to_f64();
        // |T_100| = 1/(2 sqrt(100.5)) ~ 0.0499 anchors the scale; the
        // eps wiggle lifts the sup to ~0.0568 at the top of the grid.
        assert!(sup > 0.049 && sup < 0.058, "sup = {sup}");
        assert!((scan.bound.to_f64() - 0.1).abs() < 1e-12);
        assert!(scan.pass);
    }

    #[test]
    fn uniform_scan_edge_case_n_one() {
        let prec = p(160);
        let scan = uniform_bound_scan(
            &real("0.9", prec),
            &[BigReal::zero(prec)],
            idx(1),
            prec,
        )
        .unwrap();
        assert!((scan.bound.to_f64() - 1.0).abs() < 1e-12);
        assert!(scan.pass);
        assert!(scan.at_t.is_zero());
    }

    #[test]
    fn uniform_scan_rejects_bad_input() {
        let prec = p(128);
        let grid = [BigReal::zero(prec)];
        assert!(uniform_bound_scan(&real("1.5", prec), &grid, idx(10), prec).is_err());
        assert!(uniform_bound_scan(&real("0.5", prec), &[], idx(10), prec).is_err());
    }

    #[test]
    fn locate_first_zero() {
        let prec = p(192);
        let z = locate_zero((&real("14", prec), &real("15", prec)), prec).unwrap();
        let want = real("14.1347251417346937904572519836", prec);
        let err = z.t0.sub(&want, prec).abs().to_f64();
        assert!(err < 1e-6, "t0 error {err:e}");
        assert!(z.residual.lt(&real("1e-20", prec)));
        assert!(z.bracket.0.le(&z.t0) && z.t0.le(&z.bracket.1));
    }

    #[test]
    fn empty_bracket_is_rejected_as_no_zero() {
        let prec = p(192);
        match locate_zero((&real("2", prec), &real("3", prec)), prec) {
            Err(EtaError::NoZero(_)) => {}
            other => panic!("expected no-zero error, got {other:?}"),
        }
    }

    #[test]
    fn bracket_shape_validation() {
        let prec = p(128);
        assert!(locate_zero((&real("15", prec), &real("14", prec)), prec).is_err());
        assert!(locate_zero((&real("10", prec), &real("16", prec)), prec).is_err());
        assert!(zeros_in_range(&real("0", prec), &real("101", prec), prec).is_err());
    }

    #[test]
    fn range_scan_finds_the_first_three_zeros() {
        let prec = p(192);
        let zs = zeros_in_range(&real("10", prec), &real("26", prec), prec).unwrap();
        let want = [
            "14.1347251417346937904572519836",
            "21.0220396387715549926284795939",
            "25.0108575801456887632137909926",
        ];
        assert_eq!(zs.len(), want.len(), "zeros found: {:?}", zs.iter().map(|z| z.t0.to_f64()).collect::<Vec<_>>());
        for (z, w) in zs.iter().zip(want) {
            assert!(z.t0.sub(&real(w, prec), prec).abs().to_f64() < 1e-6);
            assert!(z.residual.lt(&real("1e-20", prec)));
        }
    }

    #[test]
    fn exchange_growth_magnitudes() {
        let prec = p(192);
        let report = exchange_report(
            &real("0.75", prec),
            &real("14.1347251417346937904572519836", prec),
            &sched(&[100, 10_000]),
            &[BigReal::zero(prec), real("0.001", prec)],
            prec,
        )
        .unwrap();
        assert_eq!(report.rows.len(), 4);
        // n-major ordering: (100, 0), (100, 1e-3), (1e4, 0), (1e4, 1e-3).
        assert_eq!(report.rows[0].n.get(), 100);
        assert_eq!(report.rows[1].n.get(), 100);
        assert!(report.rows[1].delta_t.gt(&BigReal::zero(prec)));
        let g = report.rows[2].growth.abs(prec).to_f64();
        assert!((g - 100.0025).abs() < 1e-3, "|growth| = {g}");
        for row in &report.rows {
            assert!(row.coincidence.is_none());
            assert!(!row.flagged);
        }
    }

    #[test]
    fn exchange_center_records_coincidence() {
        let prec = p(192);
        let report = exchange_report(
            &real("0.5", prec),
            &real("14.1347251417346937904572519836", prec),
            &sched(&[100, 1_000]),
            &[BigReal::zero(prec), real("0.1", prec)],
            prec,
        )
        .unwrap();
        for row in &report.rows {
            let at_zero_offset = row.delta_t.is_zero();
            assert_eq!(row.coincidence.is_some(), at_zero_offset);
            // |growth| = 1 on the critical line.
            if at_zero_offset {
                let g = row.growth.abs(prec).to_f64();
                assert!((g - 1.0).abs() < 1e-12, "|growth| = {g}");
                let c = row.coincidence.as_ref().unwrap().to_f64();
                assert!(c < 1e-10, "coincidence gap {c:e}");
            }
        }
    }

    #[test]
    fn decay_fit_exact_power_law() {
        let prec = p(192);
        let pts: Vec<(u64, BigReal)> = [10u64, 100, 1000]
            .iter()
            .map(|&n| {
                (
                    n,
                    BigReal::one(prec).div_u64(n, prec).unwrap(),
                )
            })
            .collect();
        let (slope, intercept) = decay_fit(&pts, prec).unwrap();
        assert!((slope.to_f64() + 1.0).abs() < 1e-30);
        assert!(intercept.abs().to_f64() < 1e-30);
        let flat: Vec<(u64, BigReal)> =
            [10u64, 100, 1000].iter().map(|&n| (n, BigReal::one(prec))).collect();
        let (s0, _) = decay_fit(&flat, prec).unwrap();
        assert!(s0.abs().to_f64() < 1e-30);
    }

    #[test]
    fn decay_fit_rejects_bad_series() {
        let prec = p(128);
        let two = vec![(10u64, BigReal::one(prec)), (100, BigReal::one(prec))];
        assert!(decay_fit(&two, prec).is_err());
        let neg = vec![
            (10u64, BigReal::one(prec)),
            (100, BigReal::one(prec).neg_val()),
            (1000, BigReal::one(prec)),
        ];
        assert!(decay_fit(&neg, prec).is_err());
    }

    #[test]
    fn digit_rounded_error_reproduces_published_row() {
        let prec = p(192);
        let s = test_point(prec);
        let (er, ei) = digit_rounded_error(&s, idx(100_000_000), 28, prec).unwrap();
        let er = er.to_f64();
        let ei = ei.to_f64();
        assert!((er - 4.0362e-14).abs() / 4.0362e-14 < 5e-4, "eps_r {er:e}");
        assert!((ei - 2.5151e-14).abs() / 2.5151e-14 < 5e-4, "eps_i {ei:e}");
    }
}
