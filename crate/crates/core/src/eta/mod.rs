//! The series engine: partial sums of the alternating zeta series, the
//! full sum, Hurwitz zeta, tail remainders at astronomically large
//! index, the closed-form tail approximant, and the error quantities
//! relating them.

mod accel;
mod hurwitz;
mod partial;
mod tail;
mod values;

pub use hurwitz::hurwitz_zeta;
pub use partial::{partial_sum, partial_sum_snapshots, partial_sum_snapshots_dual};
pub use tail::{error_term, tail_approx, tail_approx_offset, tail_remainder};
pub use values::{eta_full, eta_via_hurwitz, zeta_strip};


use std::fmt;

use crate::error::{EtaError, Result};
use crate::mp::{BigComplex, BigReal, Precision};

/// Series index n. Plain integer, exact up to 10^18.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TailIndex(u64);

impl TailIndex {
    pub const MAX: u64 = 1_000_000_000_000_000_000;

    pub fn new(n: u64) -> Result<Self> {
        if n > Self::MAX {
            return Err(EtaError::Domain(format!(
                "index {n} exceeds the supported maximum 10^18"
            )));
        }
        Ok(Self(n))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn is_even(self) -> bool {
        self.0 % 2 == 0
    }
}

impl fmt::Display for TailIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// How a series value was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumMethod {
    /// Chebyshev-weighted alternating-series acceleration.
    Accelerated,
    /// Euler-Maclaurin expansion.
    EulerMaclaurin,
    /// Plain term-by-term summation.
    DirectSum,
}

impl fmt::Display for SumMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SumMethod::Accelerated => "alternating-accel",
            SumMethod::EulerMaclaurin => "euler-maclaurin",
            SumMethod::DirectSum => "direct-sum",
        })
    }
}

/// Tail evaluation strategy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TailMethod {
    /// Difference of two Hurwitz zeta values (default; any n).
    #[default]
    HurwitzPair,
    /// Acceleration applied directly to the shifted alternating tail.
    DirectAccel,
    /// Full sum minus partial sum (n <= 10^6).
    Brute,
}

impl fmt::Display for TailMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TailMethod::HurwitzPair => "hurwitz-pair",
            TailMethod::DirectAccel => "direct-accel",
            TailMethod::Brute => "brute",
        })
    }
}

/// A computed series value with a heuristic absolute error bound.
///
/// `err_bound` is an engineering estimate (validated by dual-method
/// tests), not a certified enclosure.
#[derive(Clone, Debug)]
pub struct EvalResult {
    pub value: BigComplex,
    pub err_bound: BigReal,
    pub method: SumMethod,
}

/// A computed tail remainder R_n.
#[derive(Clone, Debug)]
pub struct TailResult {
    pub n: TailIndex,
    pub value: BigComplex,
    pub err_bound: BigReal,
    pub method: TailMethod,
}

impl TailResult {
    fn new(n: TailIndex, s: &BigComplex, value: BigComplex, err_bound: BigReal, method: TailMethod) -> Self {
        // |R_n| <= 1.000001 (n+0.5)^(-sigma) in the regime where the
        // tail oscillation averages out. The bound genuinely fails for
        // n below ~2|s| (slow oscillation, e.g. n=10 at t=40 exceeds it
        // 4.6x), so the check gates on the asymptotic regime.
        #[cfg(debug_assertions)]
        {
            let threshold = (2.0 * s.abs(Precision::default()).to_f64()).ceil().max(10.0) as u64;
            if n.get() >= threshold {
                let p64 = Precision::new(64).unwrap();
                let sigma = s.re().at(p64);
                let base = BigReal::from_u64(n.get(), p64)
                    .add(&BigReal::one(p64).scale_pow2(-1), p64);
                let bound = sigma
                    .neg_val()
                    .mul(&base.ln(p64).unwrap(), p64)
                    .exp(p64)
                    .unwrap();
                let slack = BigReal::parse_decimal("1.000001", p64).unwrap();
                debug_assert!(
                    value.abs(p64).le(&bound.mul(&slack, p64)),
                    "tail magnitude exceeds (n+0.5)^-sigma at n={n}"
                );
            }
        }
        #[cfg(not(debug_assertions))]
        let _ = s;
        Self {
            n,
            value,
            err_bound,
            method,
        }
    }
}

/// Tail-vs-approximant error quantities for one (s, n).
///
/// Componentwise ratios are `None` when the corresponding tail
/// component vanishes (ratio undefined); the remaining fields are
/// still populated.
#[derive(Clone, Debug)]
pub struct ErrorReport {
    pub n: TailIndex,
    /// eps_n = R_n - T_n.
    pub eps_n: BigComplex,
    /// |Re eps_n / Re R_n|.
    pub eps_r: Option<BigReal>,
    /// |Im eps_n / Im R_n|.
    pub eps_i: Option<BigReal>,
    /// |eps_n| / |R_n|.
    pub eps_rel: BigReal,
}

/// Euler-Maclaurin tuning knobs.
#[derive(Clone, Copy, Debug)]
pub struct EMConfig {
    /// Minimum a+M before the asymptotic expansion starts.
    pub shift_target: u32,
    /// Bernoulli correction term cap.
    pub max_correction_terms: u32,
    /// Extra working bits inside the expansion.
    pub guard_bits: u32,
}

impl EMConfig {
    /// Defaults sized for `prec`: shift covers two decimal digits of
    /// target per unit, the term cap stays at 64 through 512 bits and
    /// scales with precision past that (the expansion's usable depth
    /// grows with the shift, which grows with precision).
    pub fn for_precision(prec: Precision) -> Self {
        let digits = prec.decimal_digits() as u32;
        Self {
            shift_target: 2 * digits.max(1),
            max_correction_terms: 64.max(prec.bits() / 8),
            guard_bits: 16,
        }
    }

    pub(crate) fn validate(&self, prec: Precision) -> Result<()> {
        let need = 2 * prec.decimal_digits() as u32;
        if self.shift_target < need {
            return Err(EtaError::Config(format!(
                "shift_target {} below 2x the decimal-digit target {need}",
                self.shift_target
            )));
        }
        if self.max_correction_terms == 0 || self.max_correction_terms > 4_000 {
            return Err(EtaError::Config(format!(
                "max_correction_terms {} outside 1..=4000 (Bernoulli cache bound)",
                self.max_correction_terms
            )));
        }
        Ok(())
    }
}

/// Rejects s outside the open strip 0 < Re(s) < 1.
pub(crate) fn require_strip(s: &BigComplex) -> Result<()> {
    let re = s.re();
    if !re.is_positive() || re.ge(&BigReal::one(re.prec())) {
        return Err(EtaError::Domain(format!(
            "Re(s) = {} outside the open strip (0, 1)",
            re.to_f64()
        )));
    }
    Ok(())
}

/// Rejects s with Re(s) <= 0 (series divergence region).
pub(crate) fn require_right_half(s: &BigComplex) -> Result<()> {
    if !s.re().is_positive() {
        return Err(EtaError::Domain(format!(
            "Re(s) = {} not positive; the series requires Re(s) > 0",
            s.re().to_f64()
        )));
    }
    Ok(())
}
