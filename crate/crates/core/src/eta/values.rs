//! Full values of eta and zeta.
//!
//! eta(s) = sum_{k>=1} (-1)^(k-1) k^(-s) converges for Re(s) > 0 and is
//! entire there; the primary evaluator runs the accelerated alternating
//! sum. A second route through a difference of Hurwitz values exists
//! solely so the two can cross-check each other. zeta on the strip is
//! recovered from eta through the 1/(1 - 2^(1-s)) conversion, which
//! excludes s = 1 and the points 1 + 2 pi i k / ln 2 where the
//! conversion factor vanishes.

use crate::error::{EtaError, Result};
use crate::mp::{complex_power, BigComplex, BigReal, Precision};

use super::accel::alternating_sum;
use super::hurwitz::hurwitz_zeta;
use super::{require_right_half, EMConfig, EvalResult, SumMethod};

/// eta(s) for Re(s) > 0 by the accelerated alternating sum.
pub fn eta_full(s: &BigComplex, prec: Precision) -> Result<EvalResult> {
    require_right_half(s)?;
    let t_abs = s.im().to_f64().abs();
    let pw = prec.plus(8);
    let neg_s = s.neg_val();
    let value = alternating_sum(
        |k, p| complex_power(&BigReal::from_u64(k + 1, p), &neg_s, p),
        t_abs,
        pw,
    )?;
    let err_bound = value
        .abs(prec)
        .add(&BigReal::one(prec), prec)
        .scale_pow2(-(prec.bits() as i32) + 2);
    Ok(EvalResult {
        value: value.at(prec),
        err_bound,
        method: SumMethod::Accelerated,
    })
}

/// eta(s) = 2^(-s) (zeta(s, 1/2) - zeta(s, 1)), an independent route
/// through the Euler-Maclaurin engine for cross-checks.
pub fn eta_via_hurwitz(s: &BigComplex, prec: Precision) -> Result<EvalResult> {
    require_right_half(s)?;
    if s.is_real() && s.re().sub(&BigReal::one(s.prec()), s.prec()).is_zero() {
        // Both Hurwitz terms have a pole at s = 1 but eta does not; this
        // route simply cannot express the finite limit ln 2.
        return Err(EtaError::Pole(
            "the Hurwitz route to eta is singular at s = 1".into(),
        ));
    }
    let pw = prec.plus(24);
    let cfg = EMConfig::for_precision(pw);
    let h_half = hurwitz_zeta(s, &BigReal::one(pw).scale_pow2(-1), pw, &cfg)?;
    let h_one = hurwitz_zeta(s, &BigReal::one(pw), pw, &cfg)?;
    let diff = h_half.value.sub(&h_one.value, pw);
    let factor = complex_power(&BigReal::from_u64(2, pw), &s.neg_val(), pw)?;
    let value = factor.mul(&diff, pw);
    let fmag = factor.abs(prec);
    let err_prop = h_half
        .err_bound
        .add(&h_one.err_bound, prec)
        .mul(&fmag, prec);
    let err_round = value.abs(prec).scale_pow2(-(prec.bits() as i32) + 2);
    Ok(EvalResult {
        value: value.at(prec),
        err_bound: err_prop.add(&err_round, prec),
        method: SumMethod::EulerMaclaurin,
    })
}

/// zeta(s) = eta(s) / (1 - 2^(1-s)) on Re(s) > 0.
///
/// Fails with `Pole` at s = 1 and with `ExcludedPoint` near the other
/// zeros of the conversion factor, 1 + 2 pi i k / ln 2.
pub fn zeta_strip(s: &BigComplex, prec: Precision) -> Result<EvalResult> {
    require_right_half(s)?;
    if s.is_real() && s.re().sub(&BigReal::one(s.prec()), s.prec()).is_zero() {
        return Err(EtaError::Pole("zeta has its pole at s = 1".into()));
    }
    let pw = prec.plus(16);
    let one_minus_s = BigComplex::one(pw).sub(&s.at(pw), pw);
    let pow2 = complex_power(&BigReal::from_u64(2, pw), &one_minus_s, pw)?;
    let den = BigComplex::one(pw).sub(&pow2, pw);
    if den.abs(pw).le_pow2(-(prec.bits() as i32) / 2) {
        return Err(EtaError::ExcludedPoint(format!(
            "1 - 2^(1-s) vanishes to working accuracy near s = {}+{}i; \
             zeta is not recoverable from eta here",
            s.re().to_f64(),
            s.im().to_f64()
        )));
    }
    let eta = eta_full(s, pw)?;
    let value = eta.value.div(&den, pw)?;
    let den_mag = den.abs(prec);
    let err_prop = eta.err_bound.div(&den_mag, prec)?;
    let err_round = value.abs(prec).scale_pow2(-(prec.bits() as i32) + 2);
    Ok(EvalResult {
        value: value.at(prec),
        err_bound: err_prop.add(&err_round, prec),
        method: eta.method,
    })
}
