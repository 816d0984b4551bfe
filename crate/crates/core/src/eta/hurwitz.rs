//! Hurwitz zeta by Euler-Maclaurin summation.
//!
//! zeta(s, a) = sum_{j<M} (a+j)^{-s}
//!            + q^{1-s}/(s-1) + q^{-s}/2
//!            + sum_{j>=1} B_{2j}/(2j)! (s)_{2j-1} q^{-s-2j+1}
//!
//! with q = a+M and (s)_k the rising factorial. The expansion is
//! asymptotic: terms shrink until 2j approaches 2 pi q, then diverge.
//! The shift M places q far enough out that the target precision is
//! reached first; if the term cap binds anyway, the shift doubles and
//! the whole evaluation retries once.

use crate::error::{EtaError, Result};
use crate::mp::{bernoulli_even_real, complex_power, BigComplex, BigReal, Precision};

use super::{require_right_half, EMConfig, EvalResult, SumMethod};

pub fn hurwitz_zeta(
    s: &BigComplex,
    a: &BigReal,
    prec: Precision,
    cfg: &EMConfig,
) -> Result<EvalResult> {
    require_right_half(s)?;
    if s.is_real() && s.re().cmp_val(&BigReal::one(prec)) == std::cmp::Ordering::Equal {
        return Err(EtaError::Pole("hurwitz zeta pole at s = 1".into()));
    }
    if !a.is_positive() {
        return Err(EtaError::Domain(format!(
            "hurwitz parameter a = {} not positive",
            a.to_f64()
        )));
    }
    cfg.validate(prec)?;

    let pw = prec.plus(cfg.guard_bits);
    let t_abs = s.im().to_f64().abs();
    // Below ~0.75|t| the correction terms grow before they shrink.
    let base_shift = (cfg.shift_target as u64).max((0.75 * t_abs).ceil() as u64 + 8);

    let mut shift = base_shift;
    for attempt in 0..2 {
        match expand(s, a, shift, pw, cfg.max_correction_terms) {
            Expansion::Converged { value, last_term } => {
                return Ok(finish(value, last_term, prec, pw));
            }
            Expansion::Capped { value, last_term } => {
                if attempt == 1 {
                    // Cap bound twice: accept, error bound honestly
                    // reflects the last correction term.
                    return Ok(finish(value, last_term, prec, pw));
                }
                shift *= 2;
            }
            Expansion::Diverging => {
                if attempt == 1 {
                    return Err(EtaError::Config(format!(
                        "Euler-Maclaurin corrections diverge at shift {shift}; \
                         raise shift_target or max_correction_terms"
                    )));
                }
                shift *= 2;
            }
            Expansion::Failed(e) => return Err(e),
        }
    }
    unreachable!("retry loop returns on second attempt");
}

fn finish(value: BigComplex, last_term: BigReal, prec: Precision, pw: Precision) -> EvalResult {
    let rounding = value
        .abs(prec)
        .scale_pow2(-(pw.bits() as i32) + 4);
    EvalResult {
        value: value.at(prec),
        err_bound: last_term.add(&rounding, prec).abs(),
        method: SumMethod::EulerMaclaurin,
    }
}

enum Expansion {
    Converged { value: BigComplex, last_term: BigReal },
    Capped { value: BigComplex, last_term: BigReal },
    Diverging,
    Failed(EtaError),
}

fn expand(s: &BigComplex, a: &BigReal, shift: u64, pw: Precision, cap: u32) -> Expansion {
    match expand_inner(s, a, shift, pw, cap) {
        Ok(x) => x,
        Err(e) => Expansion::Failed(e),
    }
}

fn expand_inner(
    s: &BigComplex,
    a: &BigReal,
    shift: u64,
    pw: Precision,
    cap: u32,
) -> Result<Expansion> {
    let neg_s = s.neg_val().at(pw);
    let mut acc = BigComplex::zero(pw);
    for j in 0..shift {
        let base = a.at(pw).add(&BigReal::from_u64(j, pw), pw);
        acc = acc.add(&complex_power(&base, &neg_s, pw)?, pw);
    }
    let q = a.at(pw).add(&BigReal::from_u64(shift, pw), pw);
    let qp = complex_power(&q, &neg_s, pw)?; // q^-s

    // q^(1-s)/(s-1)
    let s_minus_1 = s.at(pw).sub(&BigComplex::one(pw), pw);
    let integral = qp.mul_real(&q, pw).div(&s_minus_1, pw)?;
    acc = acc.add(&integral, pw);
    // q^-s / 2
    acc = acc.add(&qp.mul_real(&BigReal::one(pw).scale_pow2(-1), pw), pw);

    let q_inv = q.recip(pw)?;
    let q_inv2 = q_inv.mul(&q_inv, pw);
    let mut qpow = qp.mul_real(&q_inv, pw); // q^(-s-2j+1), j=1
    let mut poch = s.at(pw); // (s)_{2j-1}, j=1
    let mut factorial = BigReal::from_u64(2, pw); // (2j)!, j=1
    let mut prev_mag: Option<BigReal> = None;
    let mut last_mag = BigReal::zero(pw);
    for j in 1..=cap as usize {
        let coeff = bernoulli_even_real(j, pw).div(&factorial, pw)?;
        let term = qpow.mul(&poch, pw).mul_real(&coeff, pw);
        acc = acc.add(&term, pw);
        let mag = term.re().abs().add(&term.im().abs(), pw);
        let floor = acc
            .re()
            .abs()
            .add(&acc.im().abs(), pw)
            .scale_pow2(-(pw.bits() as i32));
        last_mag = mag.clone();
        if mag.le(&floor) {
            return Ok(Expansion::Converged {
                value: acc,
                last_term: last_mag,
            });
        }
        if let Some(prev) = &prev_mag {
            if mag.ge(prev) {
                return Ok(Expansion::Diverging);
            }
        }
        prev_mag = Some(mag);
        let two_j = 2 * j as u64;
        // (s)_{2(j+1)-1} = (s)_{2j-1} (s+2j-1)(s+2j)
        let f1 = s.at(pw).add(&BigComplex::from_u64(two_j - 1, pw), pw);
        let f2 = s.at(pw).add(&BigComplex::from_u64(two_j, pw), pw);
        poch = poch.mul(&f1, pw).mul(&f2, pw);
        factorial = factorial.mul_u64((two_j + 1) * (two_j + 2), pw);
        qpow = qpow.mul_real(&q_inv2, pw);
    }
    Ok(Expansion::Capped {
        value: acc,
        last_term: last_mag,
    })
}
