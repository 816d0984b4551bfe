use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Radix, Sign};

use crate::error::{EtaError, Result};

use super::{with_consts, Precision, RM};

/// Arbitrary-precision binary floating-point real.
///
/// Invariant: finite. Operations that can produce NaN/infinity are
/// routed through checked constructors; plain arithmetic on finite
/// inputs stays finite (the exponent range is ~±2^31, far beyond any
/// magnitude this crate produces).
#[derive(Clone)]
pub struct BigReal {
    v: BigFloat,
    prec: Precision,
}

impl BigReal {
    pub(crate) fn from_raw(v: BigFloat, prec: Precision) -> Self {
        debug_assert!(!v.is_nan() && !v.is_inf(), "non-finite BigReal");
        Self { v, prec }
    }

    /// Wraps a raw value, turning NaN/infinity into an error named `what`.
    pub(crate) fn checked(v: BigFloat, prec: Precision, what: &str) -> Result<Self> {
        if v.is_nan() || v.is_inf() {
            return Err(EtaError::NonFinite(what.to_string()));
        }
        Ok(Self { v, prec })
    }

    pub fn zero(prec: Precision) -> Self {
        Self::from_raw(BigFloat::new(prec.bits_usize()), prec)
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_u64(1, prec)
    }

    pub fn from_u64(n: u64, prec: Precision) -> Self {
        Self::from_raw(BigFloat::from_u64(n, prec.bits_usize()), prec)
    }

    pub fn from_i64(n: i64, prec: Precision) -> Self {
        Self::from_raw(BigFloat::from_i64(n, prec.bits_usize()), prec)
    }

    pub fn from_f64(x: f64, prec: Precision) -> Result<Self> {
        if !x.is_finite() {
            return Err(EtaError::NonFinite("from_f64".into()));
        }
        Ok(Self::from_raw(
            BigFloat::from_f64(x, prec.bits_usize()),
            prec,
        ))
    }

    /// Parses a decimal literal: `[+-]digits[.digits][(e|E)[+-]digits]`.
    /// The grammar is enforced here; the backing parser accepts garbage
    /// suffixes, so shape errors must be caught before it runs.
    pub fn parse_decimal(s: &str, prec: Precision) -> Result<Self> {
        let t = s.trim();
        if !valid_decimal_literal(t) {
            return Err(EtaError::Domain(format!("unparsable decimal literal {t:?}")));
        }
        let v = with_consts(|cc| BigFloat::parse(t, Radix::Dec, prec.bits_usize(), RM, cc));
        if v.is_nan() || v.is_inf() {
            return Err(EtaError::Domain(format!("unparsable decimal literal {t:?}")));
        }
        Ok(Self::from_raw(v, prec))
    }

    pub fn raw(&self) -> &BigFloat {
        &self.v
    }

    pub fn prec(&self) -> Precision {
        self.prec
    }

    /// Rounds to `prec` (no-op cost when narrowing is not needed).
    pub fn at(&self, prec: Precision) -> Self {
        let mut v = self.v.clone();
        v.set_precision(prec.bits_usize(), RM)
            .expect("set_precision on finite value");
        Self::from_raw(v, prec)
    }

    pub fn add(&self, rhs: &Self, prec: Precision) -> Self {
        Self::from_raw(self.v.add(&rhs.v, prec.bits_usize(), RM), prec)
    }

    pub fn sub(&self, rhs: &Self, prec: Precision) -> Self {
        Self::from_raw(self.v.sub(&rhs.v, prec.bits_usize(), RM), prec)
    }

    pub fn mul(&self, rhs: &Self, prec: Precision) -> Self {
        Self::from_raw(self.v.mul(&rhs.v, prec.bits_usize(), RM), prec)
    }

    pub fn div(&self, rhs: &Self, prec: Precision) -> Result<Self> {
        Self::checked(self.v.div(&rhs.v, prec.bits_usize(), RM), prec, "division")
    }

    pub fn recip(&self, prec: Precision) -> Result<Self> {
        Self::checked(
            self.v.reciprocal(prec.bits_usize(), RM),
            prec,
            "reciprocal",
        )
    }

    pub fn neg_val(&self) -> Self {
        Self::from_raw(self.v.clone().neg(), self.prec)
    }

    pub fn abs(&self) -> Self {
        let mut v = self.v.clone();
        v.set_sign(Sign::Pos);
        Self::from_raw(v, self.prec)
    }

    pub fn sqrt(&self, prec: Precision) -> Result<Self> {
        if self.is_negative() {
            return Err(EtaError::Domain("sqrt of negative value".into()));
        }
        Self::checked(self.v.sqrt(prec.bits_usize(), RM), prec, "sqrt")
    }

    pub fn ln(&self, prec: Precision) -> Result<Self> {
        if !self.is_positive() {
            return Err(EtaError::Domain("ln of non-positive value".into()));
        }
        let v = with_consts(|cc| self.v.ln(prec.bits_usize(), RM, cc));
        Self::checked(v, prec, "ln")
    }

    pub fn exp(&self, prec: Precision) -> Result<Self> {
        let v = with_consts(|cc| self.v.exp(prec.bits_usize(), RM, cc));
        Self::checked(v, prec, "exp")
    }

    pub fn sin(&self, prec: Precision) -> Result<Self> {
        let v = with_consts(|cc| self.v.sin(prec.bits_usize(), RM, cc));
        Self::checked(v, prec, "sin")
    }

    pub fn cos(&self, prec: Precision) -> Result<Self> {
        let v = with_consts(|cc| self.v.cos(prec.bits_usize(), RM, cc));
        Self::checked(v, prec, "cos")
    }

    pub fn atan(&self, prec: Precision) -> Result<Self> {
        let v = with_consts(|cc| self.v.atan(prec.bits_usize(), RM, cc));
        Self::checked(v, prec, "atan")
    }

    /// Integer power; `n < 0` goes through the reciprocal.
    pub fn pow_i32(&self, n: i32, prec: Precision) -> Result<Self> {
        if n >= 0 {
            Self::checked(
                self.v.powi(n as usize, prec.bits_usize(), RM),
                prec,
                "powi",
            )
        } else {
            let p = Self::checked(
                self.v.powi(n.unsigned_abs() as usize, prec.plus(2).bits_usize(), RM),
                prec.plus(2),
                "powi",
            )?;
            p.recip(prec)
        }
    }

    pub fn mul_u64(&self, k: u64, prec: Precision) -> Self {
        self.mul(&Self::from_u64(k, prec), prec)
    }

    pub fn div_u64(&self, k: u64, prec: Precision) -> Result<Self> {
        self.div(&Self::from_u64(k, prec), prec)
    }

    /// Exact multiplication by 2^k.
    pub fn scale_pow2(&self, k: i32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = self.v.clone();
        let e = v.exponent().expect("finite value has exponent");
        v.set_exponent(e + k);
        Self::from_raw(v, self.prec)
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.v.is_positive() && !self.v.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.v.is_int()
    }

    pub fn cmp_val(&self, rhs: &Self) -> Ordering {
        match self.v.cmp(&rhs.v) {
            Some(c) => c.cmp(&0),
            None => unreachable!("finite values always compare"),
        }
    }

    pub fn lt(&self, rhs: &Self) -> bool {
        self.cmp_val(rhs) == Ordering::Less
    }

    pub fn le(&self, rhs: &Self) -> bool {
        self.cmp_val(rhs) != Ordering::Greater
    }

    pub fn gt(&self, rhs: &Self) -> bool {
        self.cmp_val(rhs) == Ordering::Greater
    }

    pub fn ge(&self, rhs: &Self) -> bool {
        self.cmp_val(rhs) != Ordering::Less
    }

    /// Binary exponent e with |x| in [2^(e-1), 2^e); `None` for zero.
    pub fn exponent(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            self.v.exponent()
        }
    }

    /// True when |x| <= 2^e (conservative: compares binary exponents).
    pub fn le_pow2(&self, e: i32) -> bool {
        match self.exponent() {
            None => true,
            Some(x) => x <= e,
        }
    }

    /// Nearest double, for diagnostics and coarse gates only.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let (words, _, sign, e, _) = self.v.as_raw_parts().expect("finite value");
        let top = *words.last().expect("nonempty mantissa") as f64;
        let next = if words.len() > 1 {
            words[words.len() - 2] as f64
        } else {
            0.0
        };
        let m = top * 2f64.powi(-64) + next * 2f64.powi(-128);
        let x = m * 2f64.powi(e);
        if sign == Sign::Neg {
            -x
        } else {
            x
        }
    }
}

fn valid_decimal_literal(t: &str) -> bool {
    let b = t.as_bytes();
    let mut i = 0;
    if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
        i += 1;
    }
    let ints = b[i..].iter().take_while(|c| c.is_ascii_digit()).count();
    i += ints;
    if ints == 0 {
        return false;
    }
    if i < b.len() && b[i] == b'.' {
        i += 1;
        let fracs = b[i..].iter().take_while(|c| c.is_ascii_digit()).count();
        i += fracs;
        if fracs == 0 {
            return false;
        }
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        i += 1;
        if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
            i += 1;
        }
        let exps = b[i..].iter().take_while(|c| c.is_ascii_digit()).count();
        i += exps;
        if exps == 0 {
            return false;
        }
    }
    i == b.len()
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigReal({:e} @{})", self.to_f64(), self.prec.bits())
    }
}

fn join(a: Precision, b: Precision) -> Precision {
    if a.bits() >= b.bits() {
        a
    } else {
        b
    }
}

impl Add for &BigReal {
    type Output = BigReal;
    fn add(self, rhs: &BigReal) -> BigReal {
        self.add(rhs, join(self.prec, rhs.prec))
    }
}

impl Sub for &BigReal {
    type Output = BigReal;
    fn sub(self, rhs: &BigReal) -> BigReal {
        self.sub(rhs, join(self.prec, rhs.prec))
    }
}

impl Mul for &BigReal {
    type Output = BigReal;
    fn mul(self, rhs: &BigReal) -> BigReal {
        self.mul(rhs, join(self.prec, rhs.prec))
    }
}

impl Div for &BigReal {
    type Output = BigReal;
    /// Panics on division by zero; use [`BigReal::div`] where the
    /// denominator is not known to be nonzero.
    fn div(self, rhs: &BigReal) -> BigReal {
        BigReal::div(self, rhs, join(self.prec, rhs.prec)).expect("finite quotient")
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        self.neg_val()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    #[test]
    fn arithmetic_round_trip() {
        let prec = p(192);
        let a = BigReal::from_u64(10, prec);
        let b = BigReal::from_u64(3, prec);
        let q = a.div(&b, prec).unwrap();
        let back = q.mul(&b, prec);
        let diff = back.sub(&a, prec).abs();
        assert!(diff.le_pow2(-185));
    }

    #[test]
    fn parse_and_compare() {
        let prec = p(192);
        let x = BigReal::parse_decimal("0.1234", prec).unwrap();
        let y = BigReal::parse_decimal("1.234e-1", prec).unwrap();
        assert_eq!(x.cmp_val(&y), Ordering::Equal);
        for bad in ["0.12.34", "", ".", ".5", "1.", "1e", "1e+", "2x", "nan", "-"] {
            assert!(BigReal::parse_decimal(bad, prec).is_err(), "{bad:?}");
        }
        for good in ["+7", "-0.5", "3e8", "1E-40", "  42 "] {
            assert!(BigReal::parse_decimal(good, prec).is_ok(), "{good:?}");
        }
    }

    #[test]
    fn ln_exp_inverse() {
        let prec = p(192);
        let x = BigReal::parse_decimal("56.789", prec).unwrap();
        let y = x.ln(prec).unwrap().exp(prec).unwrap();
        let rel = y.sub(&x, prec).abs().div(&x, prec).unwrap();
        assert!(rel.le_pow2(-185));
    }

    #[test]
    fn ln_rejects_nonpositive() {
        let prec = p(64);
        assert!(BigReal::from_i64(-3, prec).ln(prec).is_err());
        assert!(BigReal::zero(prec).ln(prec).is_err());
    }

    #[test]
    fn scale_pow2_exact() {
        let prec = p(64);
        let x = BigReal::from_u64(3, prec);
        let y = x.scale_pow2(5);
        assert_eq!(y.cmp_val(&BigReal::from_u64(96, prec)), Ordering::Equal);
        let z = y.scale_pow2(-5);
        assert_eq!(z.cmp_val(&x), Ordering::Equal);
    }

    #[test]
    fn to_f64_close() {
        let prec = p(192);
        let x = BigReal::parse_decimal("-0.0514080530118374", prec).unwrap();
        assert!((x.to_f64() + 0.0514080530118374).abs() < 1e-15);
    }

    #[test]
    fn exponent_and_le_pow2() {
        let prec = p(64);
        let x = BigReal::from_u64(5, prec); // 2^2 < 5 < 2^3
        assert_eq!(x.exponent(), Some(3));
        assert!(x.le_pow2(3));
        assert!(!x.le_pow2(2));
        assert!(BigReal::zero(prec).le_pow2(-1000));
    }
}
