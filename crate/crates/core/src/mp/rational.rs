use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{EtaError, Result};

use super::{BigReal, Precision};

/// Exact rational; always in lowest terms with positive denominator
/// (maintained by the backing normalized-ratio representation).
#[derive(Clone, PartialEq, Eq)]
pub struct ExactRational {
    r: BigRational,
}

impl ExactRational {
    pub fn new(numerator: BigInt, denominator: BigInt) -> Result<Self> {
        if denominator.is_zero() {
            return Err(EtaError::Domain("zero denominator".into()));
        }
        Ok(Self {
            r: BigRational::new(numerator, denominator),
        })
    }

    pub fn from_integer(n: i64) -> Self {
        Self {
            r: BigRational::from_integer(BigInt::from(n)),
        }
    }

    pub fn zero() -> Self {
        Self {
            r: BigRational::zero(),
        }
    }

    pub fn numerator(&self) -> &BigInt {
        self.r.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.r.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self { r: &self.r + &rhs.r }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self { r: &self.r * &rhs.r }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Self { r: &self.r * k }
    }

    pub fn neg(&self) -> Self {
        Self { r: -&self.r }
    }

    /// Rounds the exact value to `prec` via one exact-integer division.
    pub fn to_bigreal(&self, prec: Precision) -> BigReal {
        let num = bigint_to_real(self.r.numer(), prec);
        let den = bigint_to_real(self.r.denom(), prec);
        num.div(&den, prec).expect("denominator is nonzero")
    }
}

/// Exact BigInt -> BigReal conversion (parses the decimal expansion at a
/// precision wide enough to hold every bit).
fn bigint_to_real(n: &BigInt, prec: Precision) -> BigReal {
    let bits = n.bits() as u32 + 64;
    let wide = Precision::new(bits.max(prec.bits()).min(Precision::MAX_BITS))
        .expect("widened precision in range");
    BigReal::parse_decimal(&n.to_string(), wide)
        .expect("integer decimal parses")
        .at(if n.magnitude().bits() as u32 <= prec.bits() {
            prec
        } else {
            // Keep every bit of an integer wider than the target; the
            // caller's division rounds exactly once.
            wide
        })
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.r.numer(), self.r.denom())
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r.denom() == &BigInt::from(1) {
            write!(f, "{}", self.r.numer())
        } else {
            write!(f, "{}/{}", self.r.numer(), self.r.denom())
        }
    }
}
