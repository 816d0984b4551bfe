//! Alternating-series acceleration.
//!
//! Chebyshev-polynomial reweighting: sum_k (-1)^k a_k is approximated
//! by (1/d_m) sum_{k<m} c_{m,k} a_k with d_m = ((3+sqrt8)^m +
//! (3-sqrt8)^m)/2, giving geometric error decay (3+sqrt8)^-m for
//! totally monotone a_k. For a_k = (k+b)^{-s} with complex s the decay
//! constant carries an analytic amplification factor ~ e^{pi|t|/2}
//! (|t| = |Im s|): the kernel absorbs it by widening its working
//! precision and term count, so the returned value is good to roughly
//! `prec` + 24 bits.

use crate::error::Result;
use crate::mp::{BigComplex, BigReal, Precision};

/// log2 of e^(pi/2): working-precision bits consumed per unit of |t|.
const T_GUARD_PER_UNIT: f64 = 2.266_18;

/// ln(3+sqrt8). Error shrinks by 3+sqrt8 per term, so a target of D
/// decimal digits needs D ln10 / ln(3+sqrt8) terms.
const LN_ACCEL_BASE: f64 = 1.762_747_174_039_086;

/// Working precision for accelerating a_k = (k+base)^{-s}.
pub(crate) fn working_precision(prec: Precision, s_im_abs: f64) -> Precision {
    let guard = (T_GUARD_PER_UNIT * s_im_abs.abs()).ceil() as u32 + 32;
    prec.plus(guard)
}

/// Term count for a target working precision.
pub(crate) fn term_count(work: Precision) -> u64 {
    let digits = work.decimal_digits() as f64;
    (digits * std::f64::consts::LN_10 / LN_ACCEL_BASE).ceil() as u64 + 8
}

/// sum_{k=0}^inf (-1)^k a(k), accelerated. `a` must supply the k-th
/// term at the precision it is given. `s_im_abs` is |Im s| of the
/// underlying exponent, driving the amplification guard.
pub(crate) fn alternating_sum<F>(a: F, s_im_abs: f64, prec: Precision) -> Result<BigComplex>
where
    F: Fn(u64, Precision) -> Result<BigComplex>,
{
    let pw = working_precision(prec, s_im_abs);
    let m = term_count(pw);

    // d = ((3+sqrt8)^m + (3+sqrt8)^-m) / 2
    let base = BigReal::from_u64(8, pw)
        .sqrt(pw)
        .expect("sqrt 8")
        .add(&BigReal::from_u64(3, pw), pw);
    let dm = base.pow_i32(m as i32, pw)?;
    let d = dm.add(&dm.recip(pw)?, pw).scale_pow2(-1);

    // b_k and c_k follow the integer recurrences
    //   b_{k+1} = b_k (k+m)(k-m) / ((k+1/2)(k+1)),  b_0 = -1
    //   c_{k+1} = b_k - c_k,                         c_0 = -d
    // and the weighted sum is sum c_{k+1} a_k / d.
    let mut b = BigReal::one(pw).neg_val();
    let mut c = d.neg_val();
    let mut acc = BigComplex::zero(pw);
    for k in 0..m {
        c = b.sub(&c, pw);
        let term = a(k, pw)?;
        acc = acc.add(&term.mul_real(&c, pw), pw);
        // (k+m)(k-m) = k^2 - m^2 < 0 while k < m, flipping b's sign
        // each step; (k+1/2)(k+1) = (2k+1)(k+1)/2.
        let num = BigReal::from_i64((k * k) as i64 - (m * m) as i64, pw).scale_pow2(1);
        let den = BigReal::from_u64((2 * k + 1) * (k + 1), pw);
        b = b.mul(&num, pw).div(&den, pw)?;
    }
    let v = acc.div(&BigComplex::from_real(d), pw)?;
    Ok(v.at(prec))
}
