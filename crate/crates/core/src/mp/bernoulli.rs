//! Exact Bernoulli numbers under the B_1 = -1/2 convention.
//!
//! Generation runs through tangent numbers with an integer-only Seidel
//! triangle: T_{2k-1} are the odd-index tangent numbers, and
//! B_{2n} = (-1)^(n-1) * 2n * T_{2n-1} / (4^n (4^n - 1)).
//! Only even-index values feed Euler-Maclaurin summation, so the B_1
//! convention is observationally irrelevant there (documented anyway).

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{EtaError, Result};

use super::{BigReal, ExactRational, Precision};

const COUNT_CAP: usize = 10_000;

/// B_0..B_count inclusive. `count` is capped at 10,000.
pub fn bernoulli_numbers(count: usize) -> Result<Vec<ExactRational>> {
    if count > COUNT_CAP {
        return Err(EtaError::BudgetExceeded(format!(
            "bernoulli_numbers count {count} exceeds cap {COUNT_CAP}"
        )));
    }
    let half = count / 2;
    let tangents = tangent_numbers(half);
    let mut out = Vec::with_capacity(count + 1);
    out.push(ExactRational::from_integer(1));
    if count >= 1 {
        out.push(ExactRational::new(BigInt::from(-1), BigInt::from(2))?);
    }
    for idx in 2..=count {
        if idx % 2 == 1 {
            out.push(ExactRational::zero());
            continue;
        }
        let n = idx / 2;
        let four_n = BigInt::from(4).pow(n as u32);
        let denom = &four_n * (&four_n - BigInt::one());
        let mut num = BigInt::from(2 * n as i64) * &tangents[n - 1];
        if n % 2 == 0 {
            num = -num;
        }
        out.push(ExactRational::new(num, denom)?);
    }
    Ok(out)
}

/// Odd-index tangent numbers T_1, T_3, ..., T_{2k-1} for k = 1..=half,
/// by the Seidel triangle (exact integer recurrence).
fn tangent_numbers(half: usize) -> Vec<BigInt> {
    if half == 0 {
        return Vec::new();
    }
    let mut a: Vec<BigInt> = Vec::with_capacity(half);
    a.push(BigInt::one());
    for k in 2..=half {
        let prev = a[k - 2].clone();
        a.push(prev * BigInt::from((k - 1) as u64));
    }
    for k in 2..=half {
        for j in k..=half {
            let left = a[j - 2].clone() * BigInt::from((j - k) as u64);
            let right = a[j - 1].clone() * BigInt::from((j - k + 2) as u64);
            a[j - 1] = left + right;
        }
    }
    a
}

/// Growing cache of even-index values B_0, B_2, B_4, ...
static EVEN_CACHE: Mutex<Vec<ExactRational>> = Mutex::new(Vec::new());

/// B_{2j} rounded to `prec`. The exact-rational cache grows on demand and
/// is deterministic, so concurrent first use is idempotent.
pub fn bernoulli_even_real(j: usize, prec: Precision) -> BigReal {
    let mut cache = EVEN_CACHE.lock().expect("bernoulli cache lock");
    if cache.len() <= j {
        let target = (2 * (j + 1).next_power_of_two()).max(64);
        let all = bernoulli_numbers(2 * target).expect("cache growth within cap");
        *cache = all.into_iter().step_by(2).collect();
    }
    cache[j].to_bigreal(prec)
}
