//! The eta tail and its closed-form approximation.
//!
//! R_n(s) = sum_{k>n} (-1)^(k-1) k^(-s) is what remains of eta after n
//! terms. Three routes compute it:
//!
//! * hurwitz-pair: R_n = (-1)^n 2^(-s) [zeta(s,(n+1)/2) - zeta(s,(n+2)/2)],
//!   splitting the tail into odd and even k. Works at any n and is the
//!   default; the subtraction cancels ~log2(n) bits, so the working
//!   precision carries a guard of that size.
//! * direct-accel: the accelerated alternating sum applied to the tail
//!   terms themselves.
//! * brute: eta_full minus partial_sum, capped at n = 10^6.
//!
//! T_n(s) = (-1)^n / (2 (n+1/2)^s) is the midpoint approximation to R_n;
//! error_term measures eps_n = R_n - T_n and its componentwise relative
//! sizes.

use crate::error::{EtaError, Result};
use crate::mp::{complex_power, BigComplex, BigReal, Precision};

use super::accel::alternating_sum;
use super::hurwitz::hurwitz_zeta;
use super::partial::partial_sum;
use super::values::eta_full;
use super::{require_strip, EMConfig, ErrorReport, TailIndex, TailMethod, TailResult};

const BRUTE_BUDGET: u64 = 1_000_000;

/// Guard bits for a subtraction that cancels roughly log2(n) bits.
fn cancellation_guard(n: u64) -> u32 {
    64 - (n + 2).leading_zeros() + 32
}

/// R_n(s) on the strip 0 < Re(s) < 1 by the chosen method.
pub fn tail_remainder(
    s: &BigComplex,
    n: TailIndex,
    prec: Precision,
    method: TailMethod,
) -> Result<TailResult> {
    require_strip(s)?;
    match method {
        TailMethod::HurwitzPair => tail_hurwitz(s, n, prec),
        TailMethod::DirectAccel => tail_accel(s, n, prec),
        TailMethod::Brute => tail_brute(s, n, prec),
    }
}

fn tail_sign(n: u64, v: BigComplex) -> BigComplex {
    if n % 2 == 0 {
        v
    } else {
        v.neg_val()
    }
}

fn tail_hurwitz(s: &BigComplex, n: TailIndex, prec: Precision) -> Result<TailResult> {
    let g = cancellation_guard(n.get());
    let pw = prec.plus(g);
    let cfg = EMConfig::for_precision(pw);
    // Odd-k minus even-k halves of the tail: a = (n+1)/2 and (n+2)/2.
    let a1 = BigReal::from_u64(n.get() + 1, pw).scale_pow2(-1);
    let a2 = BigReal::from_u64(n.get() + 2, pw).scale_pow2(-1);
    let h1 = hurwitz_zeta(s, &a1, pw, &cfg)?;
    let h2 = hurwitz_zeta(s, &a2, pw, &cfg)?;
    let diff = h1.value.sub(&h2.value, pw);
    let scale = h1.value.abs(pw).add(&h2.value.abs(pw), pw);
    if !scale.is_zero() && diff.abs(pw).le(&scale.scale_pow2(-(g as i32) + 8)) {
        return Err(EtaError::PrecisionInsufficient(format!(
            "the Hurwitz pair at n = {} cancels more than the {} guard bits \
             budgeted; raise the working precision",
            n.get(),
            g
        )));
    }
    let factor = complex_power(&BigReal::from_u64(2, pw), &s.neg_val(), pw)?;
    let value = tail_sign(n.get(), factor.mul(&diff, pw));
    let fmag = factor.abs(prec);
    let err = h1
        .err_bound
        .add(&h2.err_bound, prec)
        .mul(&fmag, prec)
        .add(&value.abs(prec).scale_pow2(-(prec.bits() as i32) + 2), prec);
    Ok(TailResult::new(n, s, value.at(prec), err, TailMethod::HurwitzPair))
}

fn tail_accel(s: &BigComplex, n: TailIndex, prec: Precision) -> Result<TailResult> {
    let pw = prec.plus(16);
    let t_abs = s.im().to_f64().abs();
    let neg_s = s.neg_val();
    let base = n.get();
    let sum = alternating_sum(
        |j, p| {
            let k = base.checked_add(1 + j).ok_or_else(|| {
                EtaError::BudgetExceeded("tail term index overflows u64".into())
            })?;
            complex_power(&BigReal::from_u64(k, p), &neg_s, p)
        },
        t_abs,
        pw,
    )?;
    let value = tail_sign(base, sum);
    let err = value.abs(prec).scale_pow2(-(prec.bits() as i32) + 2);
    Ok(TailResult::new(n, s, value.at(prec), err, TailMethod::DirectAccel))
}

fn tail_brute(s: &BigComplex, n: TailIndex, prec: Precision) -> Result<TailResult> {
    if n.get() > BRUTE_BUDGET {
        return Err(EtaError::BudgetExceeded(format!(
            "brute tail evaluation stops at n = {BRUTE_BUDGET}; \
             use the hurwitz-pair method beyond that"
        )));
    }
    let pw = prec.plus(cancellation_guard(n.get()));
    let full = eta_full(s, pw)?;
    let head = partial_sum(s, n, pw)?;
    let value = full.value.sub(&head.value, pw);
    let err = full
        .err_bound
        .add(&head.err_bound, prec)
        .add(&value.abs(prec).scale_pow2(-(prec.bits() as i32) + 2), prec);
    Ok(TailResult::new(n, s, value.at(prec), err, TailMethod::Brute))
}

/// T_n(s) = (-1)^n / (2 (n + 1/2)^s), defined for every s.
pub fn tail_approx(s: &BigComplex, n: TailIndex, prec: Precision) -> Result<BigComplex> {
    let half = BigReal::one(prec).scale_pow2(-1);
    tail_approx_offset(s, n, &half, prec)
}

/// The bracketing variant (n + offset)^(-s)/2 with the sign of T_n.
/// Offsets 0 and 1 flank the midpoint value; offset 0 with n = 0 has no
/// defined value.
pub fn tail_approx_offset(
    s: &BigComplex,
    n: TailIndex,
    offset: &BigReal,
    prec: Precision,
) -> Result<BigComplex> {
    let pw = prec.plus(16);
    let base = BigReal::from_u64(n.get(), pw).add(&offset.at(pw), pw);
    if !base.is_positive() {
        return Err(EtaError::Domain(format!(
            "approximation base n + offset = {} must be positive",
            base.to_f64()
        )));
    }
    let p = complex_power(&base, &s.neg_val(), pw)?;
    Ok(tail_sign(n.get(), p.scale_pow2(-1)).at(prec))
}

/// eps_n = R_n - T_n with componentwise relative errors.
///
/// A component ratio is absent when the matching component of R_n is
/// exactly zero at working precision.
pub fn error_term(s: &BigComplex, n: TailIndex, prec: Precision) -> Result<ErrorReport> {
    require_strip(s)?;
    // eps is ~n times smaller than R, and the hurwitz pair inside loses
    // another ~log2(n) bits, so the outer guard doubles the index term.
    let g = 2 * cancellation_guard(n.get());
    let pw = prec.plus(g);
    let r = tail_remainder(s, n, pw, TailMethod::HurwitzPair)?;
    let t = tail_approx(s, n, pw)?;
    let eps = r.value.sub(&t, pw);
    let ratio = |num: &BigReal, den: &BigReal| -> Result<Option<BigReal>> {
        if den.is_zero() {
            return Ok(None);
        }
        Ok(Some(num.abs().div(&den.abs(), prec)?.at(prec)))
    };
    let eps_r = ratio(eps.re(), r.value.re())?;
    let eps_i = ratio(eps.im(), r.value.im())?;
    let r_mag = r.value.abs(pw);
    if r_mag.is_zero() {
        return Err(EtaError::PrecisionInsufficient(
            "tail value vanished at working precision; relative errors undefined".into(),
        ));
    }
    let eps_rel = eps.abs(pw).div(&r_mag, prec)?;
    Ok(ErrorReport {
        n,
        eps_n: eps.at(prec),
        eps_r,
        eps_i,
        eps_rel,
    })
}
