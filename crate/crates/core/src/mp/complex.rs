use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{EtaError, Result};

use super::{constant_pi, BigReal, Precision};

/// Complex value; both parts carry identical precision.
#[derive(Clone)]
pub struct BigComplex {
    re: BigReal,
    im: BigReal,
}

impl BigComplex {
    pub fn new(re: BigReal, im: BigReal) -> Self {
        // Normalize to the wider precision so the parts always match.
        let prec = if re.prec().bits() >= im.prec().bits() {
            re.prec()
        } else {
            im.prec()
        };
        Self {
            re: re.at(prec),
            im: im.at(prec),
        }
    }

    pub fn zero(prec: Precision) -> Self {
        Self {
            re: BigReal::zero(prec),
            im: BigReal::zero(prec),
        }
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_real(BigReal::one(prec))
    }

    pub fn from_real(re: BigReal) -> Self {
        let prec = re.prec();
        Self {
            re,
            im: BigReal::zero(prec),
        }
    }

    pub fn from_u64(n: u64, prec: Precision) -> Self {
        Self::from_real(BigReal::from_u64(n, prec))
    }

    pub fn re(&self) -> &BigReal {
        &self.re
    }

    pub fn im(&self) -> &BigReal {
        &self.im
    }

    pub fn prec(&self) -> Precision {
        self.re.prec()
    }

    pub fn at(&self, prec: Precision) -> Self {
        Self {
            re: self.re.at(prec),
            im: self.im.at(prec),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// True when the imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: self.im.neg_val(),
        }
    }

    pub fn add(&self, rhs: &Self, prec: Precision) -> Self {
        Self {
            re: self.re.add(&rhs.re, prec),
            im: self.im.add(&rhs.im, prec),
        }
    }

    pub fn sub(&self, rhs: &Self, prec: Precision) -> Self {
        Self {
            re: self.re.sub(&rhs.re, prec),
            im: self.im.sub(&rhs.im, prec),
        }
    }

    pub fn mul(&self, rhs: &Self, prec: Precision) -> Self {
        let ac = self.re.mul(&rhs.re, prec);
        let bd = self.im.mul(&rhs.im, prec);
        let ad = self.re.mul(&rhs.im, prec);
        let bc = self.im.mul(&rhs.re, prec);
        Self {
            re: ac.sub(&bd, prec),
            im: ad.add(&bc, prec),
        }
    }

    pub fn mul_real(&self, rhs: &BigReal, prec: Precision) -> Self {
        Self {
            re: self.re.mul(rhs, prec),
            im: self.im.mul(rhs, prec),
        }
    }

    pub fn div(&self, rhs: &Self, prec: Precision) -> Result<Self> {
        let d = rhs.norm_sqr(prec);
        if d.is_zero() {
            return Err(EtaError::NonFinite("complex division by zero".into()));
        }
        let num = self.mul(&rhs.conj(), prec);
        Ok(Self {
            re: num.re.div(&d, prec)?,
            im: num.im.div(&d, prec)?,
        })
    }

    pub fn neg_val(&self) -> Self {
        Self {
            re: self.re.neg_val(),
            im: self.im.neg_val(),
        }
    }

    /// self * 2^k, exact in both components.
    pub fn scale_pow2(&self, k: i32) -> Self {
        Self {
            re: self.re.scale_pow2(k),
            im: self.im.scale_pow2(k),
        }
    }

    /// re^2 + im^2.
    pub fn norm_sqr(&self, prec: Precision) -> BigReal {
        let a = self.re.mul(&self.re, prec);
        let b = self.im.mul(&self.im, prec);
        a.add(&b, prec)
    }

    /// |z|.
    pub fn abs(&self, prec: Precision) -> BigReal {
        self.norm_sqr(prec.plus(8))
            .sqrt(prec)
            .expect("norm is nonnegative")
    }

    /// Principal argument in (-pi, pi].
    pub fn arg(&self, prec: Precision) -> Result<BigReal> {
        let pw = prec.plus(8);
        let pi = constant_pi(pw);
        if self.re.is_zero() {
            if self.im.is_zero() {
                return Err(EtaError::Domain("argument of zero".into()));
            }
            let half = pi.scale_pow2(-1).at(prec);
            return Ok(if self.im.is_negative() {
                half.neg_val()
            } else {
                half
            });
        }
        let base = self.im.div(&self.re, pw)?.atan(pw)?;
        let v = if self.re.is_positive() {
            base
        } else if self.im.is_negative() {
            base.sub(&pi, pw)
        } else {
            base.add(&pi, pw)
        };
        Ok(v.at(prec))
    }

    /// Principal logarithm: ln|z| + i arg(z).
    pub fn ln(&self, prec: Precision) -> Result<Self> {
        if self.is_zero() {
            return Err(EtaError::Domain("log of zero".into()));
        }
        let pw = prec.plus(8);
        let r = self.norm_sqr(pw.plus(8)).ln(pw)?.scale_pow2(-1);
        Ok(Self {
            re: r.at(prec),
            im: self.arg(prec)?,
        })
    }

    /// exp(z) = e^re (cos im + i sin im).
    pub fn exp(&self, prec: Precision) -> Result<Self> {
        let pw = prec.plus(8);
        let m = self.re.exp(pw)?;
        Ok(Self {
            re: m.mul(&self.im.cos(pw)?, prec),
            im: m.mul(&self.im.sin(pw)?, prec),
        })
    }

    /// sin(z) = sin(re) cosh(im) + i cos(re) sinh(im), via exponentials
    /// at +16 guard bits (|im| can make the factors huge; everything
    /// stays in extended exponent range).
    pub fn sin(&self, prec: Precision) -> Result<Self> {
        let pw = prec.plus(16);
        let (ch, sh) = cosh_sinh(&self.im, pw)?;
        Ok(Self {
            re: self.re.sin(pw)?.mul(&ch, prec),
            im: self.re.cos(pw)?.mul(&sh, prec),
        })
    }

    /// cos(z) = cos(re) cosh(im) - i sin(re) sinh(im).
    pub fn cos(&self, prec: Precision) -> Result<Self> {
        let pw = prec.plus(16);
        let (ch, sh) = cosh_sinh(&self.im, pw)?;
        Ok(Self {
            re: self.re.cos(pw)?.mul(&ch, prec),
            im: self.re.sin(pw)?.mul(&sh, prec).neg_val(),
        })
    }
}

/// (cosh x, sinh x) from one exponential pair.
fn cosh_sinh(x: &BigReal, prec: Precision) -> Result<(BigReal, BigReal)> {
    let e = x.exp(prec)?;
    let ei = e.recip(prec)?;
    let ch = e.add(&ei, prec).scale_pow2(-1);
    // sinh loses bits to cancellation only near x = 0, where the series
    // value is ~x and the absolute error of the difference is ~ulp(1);
    // callers use sinh multiplicatively with same-scale factors.
    let sh = e.sub(&ei, prec).scale_pow2(-1);
    Ok((ch, sh))
}

/// x^z for positive real x: exp(z ln x) with phase computed at guard
/// precision. Relative error <= 4 ulp at `prec`.
pub fn complex_power(base: &BigReal, exponent: &BigComplex, prec: Precision) -> Result<BigComplex> {
    if !base.is_positive() {
        return Err(EtaError::Domain(format!(
            "complex_power base must be positive, got {:?}",
            base
        )));
    }
    // Guard covers |Im(z) ln x| up to ~2^24 before phase digits run out.
    let pw = prec.plus(24);
    let l = base.at(pw).ln(pw)?;
    let mag = exponent.re().mul(&l, pw).exp(pw)?;
    let phase = exponent.im().mul(&l, pw);
    let c = phase.cos(pw)?;
    let s = phase.sin(pw)?;
    Ok(BigComplex {
        re: mag.mul(&c, prec),
        im: mag.mul(&s, prec),
    })
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BigComplex({:e} {:+e}i @{})",
            self.re.to_f64(),
            self.im.to_f64(),
            self.prec().bits()
        )
    }
}

impl Add for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        let p = join(self, rhs);
        self.add(rhs, p)
    }
}

impl Sub for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        let p = join(self, rhs);
        self.sub(rhs, p)
    }
}

impl Mul for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        let p = join(self, rhs);
        self.mul(rhs, p)
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        self.neg_val()
    }
}

fn join(a: &BigComplex, b: &BigComplex) -> Precision {
    if a.prec().bits() >= b.prec().bits() {
        a.prec()
    } else {
        b.prec()
    }
}
