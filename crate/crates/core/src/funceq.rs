//! Functional-equation factors for zeta and eta on the critical strip.
//!
//! chi(s) = 2^s pi^(s-1) sin(pi s/2) gamma(1-s) satisfies
//! zeta(s) = chi(s) zeta(1-s); lambda(s), written here in the form
//! (2 - 2^(s+1))/(2^s - 2) * pi^(-s) cos(pi s/2) gamma(s), satisfies
//! eta(1-s) = lambda(s) eta(s). The prefactor simplifies to
//! (2^(1-s) - 2)/(1 - 2^(1-s)); both forms are evaluated in tests and
//! must agree.
//!
//! The trig and gamma factors individually reach magnitude
//! ~e^(pi|t|/2), so for |t| > 30 every factor is taken in log form and
//! the sum is exponentiated once. Branch offsets of 2 pi i between the
//! logs are harmless: exp of the sum reproduces the product exactly.

use crate::error::{EtaError, Result};
use crate::eta::{eta_full, require_strip, zeta_strip};
use crate::mp::{
    complex_gamma, complex_power, constant_ln2, constant_pi, ln_gamma, BigComplex, BigReal,
    Precision,
};

/// Which functional equation a factor belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    ZetaChi,
    EtaLambda,
}

impl FactorKind {
    pub fn label(self) -> &'static str {
        match self {
            FactorKind::ZetaChi => "zeta-chi",
            FactorKind::EtaLambda => "eta-lambda",
        }
    }
}

/// A finite functional-equation factor value.
#[derive(Clone, Debug)]
pub struct FactorValue {
    pub value: BigComplex,
    pub kind: FactorKind,
}

/// eta(1-s)/eta(s) with a flag for the removable-discontinuity regime
/// near zeros of eta.
#[derive(Clone, Debug)]
pub struct RatioResult {
    pub value: BigComplex,
    pub near_zero_flag: bool,
}

/// |t| above which factors are assembled in log space.
const LOG_ROUTE_T: f64 = 30.0;

/// chi(s) = 2^s pi^(s-1) sin(pi s/2) gamma(1-s) for s in the open strip.
pub fn zeta_chi(s: &BigComplex, prec: Precision) -> Result<FactorValue> {
    require_strip(s)?;
    let pw = prec.plus(16);
    let s = s.at(pw);
    let one_minus_s = BigComplex::one(pw).sub(&s, pw);
    let half_pi_s = s.mul_real(&constant_pi(pw), pw).scale_pow2(-1);
    let value = if s.im().to_f64().abs() > LOG_ROUTE_T {
        // ln 2^s + ln pi^(s-1) + ln sin(pi s/2) + ln gamma(1-s).
        let ln_pi = constant_pi(pw).ln(pw)?;
        let a = s.mul_real(&constant_ln2(pw), pw);
        let b = one_minus_s.neg_val().mul_real(&ln_pi, pw);
        let c = ln_sin(&half_pi_s, pw)?;
        let d = ln_gamma(&one_minus_s, pw)?;
        a.add(&b, pw).add(&c, pw).add(&d, pw).exp(pw)?
    } else {
        let two_s = complex_power(&BigReal::from_u64(2, pw), &s, pw)?;
        let pi_pow = complex_power(&constant_pi(pw), &one_minus_s.neg_val(), pw)?;
        let sine = half_pi_s.sin(pw)?;
        let g = complex_gamma(&one_minus_s, pw)?;
        two_s.mul(&pi_pow, pw).mul(&sine, pw).mul(&g, pw)
    };
    Ok(FactorValue {
        value: value.at(prec),
        kind: FactorKind::ZetaChi,
    })
}

/// lambda(s) = (2 - 2^(s+1))/(2^s - 2) pi^(-s) cos(pi s/2) gamma(s)
/// for s in the open strip.
pub fn eta_lambda(s: &BigComplex, prec: Precision) -> Result<FactorValue> {
    require_strip(s)?;
    let pw = prec.plus(16);
    let s = s.at(pw);
    let pref = lambda_prefactor(&s, prec, pw)?;
    let half_pi_s = s.mul_real(&constant_pi(pw), pw).scale_pow2(-1);
    let value = if s.im().to_f64().abs() > LOG_ROUTE_T {
        let ln_pi = constant_pi(pw).ln(pw)?;
        let a = pref.ln(pw)?;
        let b = s.neg_val().mul_real(&ln_pi, pw);
        let c = ln_cos(&half_pi_s, pw)?;
        let d = ln_gamma(&s, pw)?;
        a.add(&b, pw).add(&c, pw).add(&d, pw).exp(pw)?
    } else {
        let pi_pow = complex_power(&constant_pi(pw), &s.neg_val(), pw)?;
        let cosine = half_pi_s.cos(pw)?;
        let g = complex_gamma(&s, pw)?;
        pref.mul(&pi_pow, pw).mul(&cosine, pw).mul(&g, pw)
    };
    Ok(FactorValue {
        value: value.at(prec),
        kind: FactorKind::EtaLambda,
    })
}

/// (2 - 2^(s+1))/(2^s - 2), rejecting denominators below 2^(-prec+8).
fn lambda_prefactor(s: &BigComplex, prec: Precision, pw: Precision) -> Result<BigComplex> {
    let two = BigComplex::from_real(BigReal::from_u64(2, pw));
    let two_s = complex_power(&BigReal::from_u64(2, pw), s, pw)?;
    let num = two.sub(&two_s.scale_pow2(1), pw);
    let den = two_s.sub(&two, pw);
    if den.abs(pw).le_pow2(-(prec.bits() as i32) + 8) {
        return Err(EtaError::SingularFactor(format!(
            "2^s - 2 vanishes to working accuracy at s = {}+{}i",
            s.re().to_f64(),
            s.im().to_f64()
        )));
    }
    num.div(&den, pw)
}

/// eta(1-s)/eta(s), flagged when |eta(s)| < 2^(-prec/2) (1 + |eta(1-s)|).
pub fn eta_ratio_direct(s: &BigComplex, prec: Precision) -> Result<RatioResult> {
    require_strip(s)?;
    let pw = prec.plus(16);
    let one_minus_s = BigComplex::one(pw).sub(&s.at(pw), pw);
    let num = eta_full(&one_minus_s, pw)?.value;
    let den = eta_full(&s.at(pw), pw)?.value;
    let threshold = BigReal::one(pw)
        .add(&num.abs(pw), pw)
        .scale_pow2(-(prec.bits() as i32) / 2);
    let near_zero_flag = den.abs(pw).le(&threshold);
    // An exactly-zero denominator cannot be divided through; the flag
    // already marks the value as meaningless there.
    let value = if den.is_zero() {
        BigComplex::zero(prec)
    } else {
        num.div(&den, pw)?.at(prec)
    };
    Ok(RatioResult {
        value,
        near_zero_flag,
    })
}

/// Residuals |zeta(s) - chi(s) zeta(1-s)| and |eta(1-s) - lambda(s) eta(s)|,
/// in that order. Small residuals certify gamma, powers, trig, eta and
/// zeta against each other since the two sides share no code path.
pub fn functional_residual(s: &BigComplex, prec: Precision) -> Result<(BigReal, BigReal)> {
    require_strip(s)?;
    let pw = prec.plus(16);
    let s = s.at(pw);
    let one_minus_s = BigComplex::one(pw).sub(&s, pw);

    let zeta_s = zeta_strip(&s, pw)?.value;
    let zeta_dual = zeta_strip(&one_minus_s, pw)?.value;
    let chi = zeta_chi(&s, pw)?.value;
    let zeta_resid = zeta_s.sub(&chi.mul(&zeta_dual, pw), pw).abs(prec);

    let eta_s = eta_full(&s, pw)?.value;
    let eta_dual = eta_full(&one_minus_s, pw)?.value;
    let lam = eta_lambda(&s, pw)?.value;
    let eta_resid = eta_dual.sub(&lam.mul(&eta_s, pw), pw).abs(prec);

    Ok((zeta_resid, eta_resid))
}

/// log sin z up to a multiple of 2 pi i, stable for large |Im z|.
///
/// For y = Im z > 0 the dominant exponential is e^(-iz), giving
/// log sin z = -iz + log(i/2) + log(1 - e^(2iz)) with |e^(2iz)| < 1;
/// y < 0 mirrors with +iz.
fn ln_sin(z: &BigComplex, pw: Precision) -> Result<BigComplex> {
    let i_half_ln = |sign_up: bool| -> Result<BigComplex> {
        // log(+-i/2) = -ln 2 +- i pi/2.
        let re = constant_ln2(pw).neg_val();
        let im = constant_pi(pw).scale_pow2(-1);
        Ok(BigComplex::new(re, if sign_up { im } else { im.neg_val() }))
    };
    let iz = mul_i(z);
    if !z.im().is_negative() {
        let small = iz.scale_pow2(1).exp(pw)?; // e^(2iz)
        let rest = BigComplex::one(pw).sub(&small, pw).ln(pw)?;
        Ok(iz.neg_val().add(&i_half_ln(true)?, pw).add(&rest, pw))
    } else {
        let small = iz.neg_val().scale_pow2(1).exp(pw)?; // e^(-2iz)
        let rest = BigComplex::one(pw).sub(&small, pw).ln(pw)?;
        Ok(iz.add(&i_half_ln(false)?, pw).add(&rest, pw))
    }
}

/// log cos z up to a multiple of 2 pi i; same construction as [`ln_sin`]
/// with log cos z = -iz - ln 2 + log(1 + e^(2iz)) for Im z > 0.
fn ln_cos(z: &BigComplex, pw: Precision) -> Result<BigComplex> {
    let neg_ln2 = BigComplex::from_real(constant_ln2(pw).neg_val());
    let iz = mul_i(z);
    if !z.im().is_negative() {
        let small = iz.scale_pow2(1).exp(pw)?;
        let rest = BigComplex::one(pw).add(&small, pw).ln(pw)?;
        Ok(iz.neg_val().add(&neg_ln2, pw).add(&rest, pw))
    } else {
        let small = iz.neg_val().scale_pow2(1).exp(pw)?;
        let rest = BigComplex::one(pw).add(&small, pw).ln(pw)?;
        Ok(iz.add(&neg_ln2, pw).add(&rest, pw))
    }
}

/// i*z without rounding.
fn mul_i(z: &BigComplex) -> BigComplex {
    BigComplex::new(z.im().neg_val(), z.re().clone())
}
