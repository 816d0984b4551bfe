//! Partial sums of the alternating series, term-exact.
//!
//! sum_{k=1}^n (-1)^(k-1) k^(-s) for n up to 10^7. Computing k^(-s)
//! per term through exp/ln transcendentals would dominate the runtime
//! ~150x, so terms are built multiplicatively: p^(-s) is evaluated once
//! per prime and every composite k^(-s) is the product over k's prime
//! factorization (smallest-prime-factor sieve, ~2.7 complex
//! multiplications per term on average). Summation is compensated
//! (Kahan) per component at guard precision.
//!
//! One sieve pass can serve several exponents at once; the dual variant
//! sums at s and 1-s simultaneously for ratio probes.

use rayon::prelude::*;

use crate::error::{EtaError, Result};
use crate::mp::{complex_power, BigComplex, BigReal, Precision};

use super::{EvalResult, SumMethod, TailIndex};

const BUDGET: u64 = 10_000_000;

/// eta_n(s): the n-th partial sum.
pub fn partial_sum(s: &BigComplex, n: TailIndex, prec: Precision) -> Result<EvalResult> {
    Ok(partial_sum_snapshots(s, &[n], prec)?.pop().expect("one snapshot"))
}

/// Partial sums at each index of `ns` (strictly ascending) from one
/// summation pass.
pub fn partial_sum_snapshots(
    s: &BigComplex,
    ns: &[TailIndex],
    prec: Precision,
) -> Result<Vec<EvalResult>> {
    let rows = sweep(&[s.neg_val()], ns, prec)?;
    Ok(rows.into_iter().map(|mut r| r.pop().expect("one exponent")).collect())
}

/// Partial sums at s and at 1-s from one pass, paired per snapshot.
pub fn partial_sum_snapshots_dual(
    s: &BigComplex,
    ns: &[TailIndex],
    prec: Precision,
) -> Result<Vec<(EvalResult, EvalResult)>> {
    // k^-(1-s) = k^(s-1).
    let s_minus_one = s.sub(&BigComplex::one(s.prec()), s.prec());
    let rows = sweep(&[s.neg_val(), s_minus_one], ns, prec)?;
    Ok(rows
        .into_iter()
        .map(|mut r| {
            let b = r.pop().expect("second exponent");
            let a = r.pop().expect("first exponent");
            (a, b)
        })
        .collect())
}

/// Kahan accumulator over one complex stream.
struct Compensated {
    sum: BigComplex,
    c_re: BigReal,
    c_im: BigReal,
    prec: Precision,
}

impl Compensated {
    fn new(prec: Precision) -> Self {
        Self {
            sum: BigComplex::zero(prec),
            c_re: BigReal::zero(prec),
            c_im: BigReal::zero(prec),
            prec,
        }
    }

    fn add(&mut self, term: &BigComplex) {
        let p = self.prec;
        let (re, c_re) = kahan_step(self.sum.re(), term.re(), &self.c_re, p);
        let (im, c_im) = kahan_step(self.sum.im(), term.im(), &self.c_im, p);
        self.sum = BigComplex::new(re, im);
        self.c_re = c_re;
        self.c_im = c_im;
    }
}

fn kahan_step(sum: &BigReal, term: &BigReal, comp: &BigReal, p: Precision) -> (BigReal, BigReal) {
    let y = term.sub(comp, p);
    let t = sum.add(&y, p);
    let c = t.sub(sum, p).sub(&y, p);
    (t, c)
}

fn sweep(
    exponents: &[BigComplex],
    ns: &[TailIndex],
    prec: Precision,
) -> Result<Vec<Vec<EvalResult>>> {
    if ns.is_empty() {
        return Ok(Vec::new());
    }
    for w in ns.windows(2) {
        if w[1] <= w[0] {
            return Err(EtaError::Domain(
                "snapshot indices must be strictly ascending".into(),
            ));
        }
    }
    let n_max = ns.last().expect("nonempty").get();
    if n_max > BUDGET {
        return Err(EtaError::BudgetExceeded(format!(
            "partial sum budget is {BUDGET} terms (requested {n_max}); \
             use the tail identities for larger indices"
        )));
    }

    let pw_term = prec.plus(8);
    let pw_sum = prec.plus(16);
    let n = n_max as usize;

    let spf = smallest_prime_factors(n);
    let primes: Vec<u32> = (2..=n)
        .filter(|&k| spf[k] == k as u32)
        .map(|k| k as u32)
        .collect();

    // p^e for each exponent and prime; the only transcendental work.
    let prime_vals: Vec<Vec<BigComplex>> = primes
        .par_iter()
        .map(|&p| {
            exponents
                .iter()
                .map(|e| complex_power(&BigReal::from_u64(p as u64, pw_term), e, pw_term))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let mut sums: Vec<Compensated> = exponents.iter().map(|_| Compensated::new(pw_sum)).collect();
    let mut out: Vec<Vec<EvalResult>> = Vec::with_capacity(ns.len());
    let mut next = 0usize;
    let capture = |sums: &[Compensated], n_at: u64, out: &mut Vec<Vec<EvalResult>>| {
        let row = exponents
            .iter()
            .zip(sums)
            .map(|(e, acc)| EvalResult {
                value: acc.sum.at(prec),
                err_bound: sum_error_bound(n_at, e, prec),
                method: SumMethod::DirectSum,
            })
            .collect();
        out.push(row);
    };
    while next < ns.len() && ns[next].get() == 0 {
        capture(&sums, 0, &mut out);
        next += 1;
    }

    let mut factor_vals: Vec<BigComplex> = Vec::with_capacity(exponents.len());
    for k in 1..=n as u64 {
        factor_vals.clear();
        if k == 1 {
            for _ in exponents {
                factor_vals.push(BigComplex::one(pw_term));
            }
        } else {
            term_values(k, &spf, &primes, &prime_vals, pw_term, &mut factor_vals);
        }
        let negate = k % 2 == 0;
        for (acc, v) in sums.iter_mut().zip(&factor_vals) {
            if negate {
                acc.add(&v.neg_val());
            } else {
                acc.add(v);
            }
        }
        while next < ns.len() && ns[next].get() == k {
            capture(&sums, k, &mut out);
            next += 1;
        }
    }
    Ok(out)
}

/// k^e for each exponent, from the prime factorization of k.
fn term_values(
    k: u64,
    spf: &[u32],
    primes: &[u32],
    prime_vals: &[Vec<BigComplex>],
    pw: Precision,
    out: &mut Vec<BigComplex>,
) {
    let width = prime_vals[0].len();
    let mut acc: Vec<Option<BigComplex>> = vec![None; width];
    let mut m = k as usize;
    while m > 1 {
        let p = spf[m];
        let idx = primes.binary_search(&p).expect("sieve prime");
        let vals = &prime_vals[idx];
        while m as u32 % p == 0 && m > 1 {
            m /= p as usize;
            for (slot, v) in acc.iter_mut().zip(vals) {
                *slot = Some(match slot.take() {
                    None => v.clone(),
                    Some(prev) => prev.mul(v, pw),
                });
            }
        }
    }
    for slot in acc {
        out.push(slot.expect("k > 1 has a prime factor"));
    }
}

/// err <= n * 2^-(prec-4) * max|k^e|; max over k <= n is n^max(0, Re e).
fn sum_error_bound(n: u64, exponent: &BigComplex, prec: Precision) -> BigReal {
    if n == 0 {
        return BigReal::zero(prec);
    }
    let re = exponent.re().to_f64().max(0.0);
    let mag_bits = (re * (n as f64).log2()).ceil() as i32;
    BigReal::from_u64(n, prec).scale_pow2(-(prec.bits() as i32) - 2 + mag_bits)
}

/// spf[k] = smallest prime factor of k (spf[k] = k exactly when k is
/// prime); indices 0 and 1 unused.
fn smallest_prime_factors(n: usize) -> Vec<u32> {
    let mut spf: Vec<u32> = (0..=n as u32).collect();
    let mut i = 2usize;
    while i * i <= n {
        if spf[i] == i as u32 {
            let mut j = i * i;
            while j <= n {
                if spf[j] == j as u32 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
        i += 1;
    }
    spf
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    fn complex(re: &str, im: &str, prec: Precision) -> BigComplex {
        BigComplex::new(
            BigReal::parse_decimal(re, prec).unwrap(),
            BigReal::parse_decimal(im, prec).unwrap(),
        )
    }

    fn idx(n: u64) -> TailIndex {
        TailIndex::new(n).unwrap()
    }

    #[test]
    fn sieve_is_correct() {
        let spf = smallest_prime_factors(30);
        assert_eq!(spf[2], 2);
        assert_eq!(spf[9], 3);
        assert_eq!(spf[15], 3);
        assert_eq!(spf[29], 29);
        assert_eq!(spf[30], 2);
    }

    #[test]
    fn tiny_closed_values() {
        let prec = p(192);
        // n=1: single term 1.
        let one = partial_sum(&complex("0.5", "7", prec), idx(1), prec).unwrap();
        assert!(one.value.sub(&BigComplex::one(prec), prec).abs(prec).le_pow2(-180));
        // s=1, n=2: 1 - 1/2.
        let half = partial_sum(&complex("1", "0", prec), idx(2), prec).unwrap();
        let want = BigComplex::from_real(BigReal::one(prec).scale_pow2(-1));
        assert!(half.value.sub(&want, prec).abs(prec).le_pow2(-180));
        // s=0, n=4: 1-1+1-1 = 0.
        let zero = partial_sum(&complex("0", "0", prec), idx(4), prec).unwrap();
        assert!(zero.value.abs(prec).le_pow2(-180));
        // n=0: empty sum.
        let empty = partial_sum(&complex("0.5", "0", prec), idx(0), prec).unwrap();
        assert!(empty.value.is_zero());
    }

    #[test]
    fn matches_naive_summation() {
        let prec = p(192);
        let s = complex("0.1234", "56.789", prec);
        let neg_s = s.neg_val();
        let n = 257u64;
        let mut naive = BigComplex::zero(prec.plus(16));
        for k in 1..=n {
            let t = complex_power(&BigReal::from_u64(k, prec.plus(16)), &neg_s, prec.plus(16)).unwrap();
            naive = if k % 2 == 0 {
                naive.sub(&t, prec.plus(16))
            } else {
                naive.add(&t, prec.plus(16))
            };
        }
        let fast = partial_sum(&s, idx(n), prec).unwrap();
        let d = fast.value.sub(&naive.at(prec), prec).abs(prec);
        assert!(d.le_pow2(-180), "sieve vs naive: {:?}", d);
    }

    #[test]
    fn snapshots_share_one_pass() {
        let prec = p(192);
        let s = complex("0.5", "14.1347", prec);
        let ns: Vec<TailIndex> = [0u64, 1, 10, 100, 1000].iter().map(|&n| idx(n)).collect();
        let snaps = partial_sum_snapshots(&s, &ns, prec).unwrap();
        assert_eq!(snaps.len(), 5);
        for (i, want_n) in [10u64, 100].iter().enumerate() {
            let single = partial_sum(&s, idx(*want_n), prec).unwrap();
            let d = snaps[i + 2].value.sub(&single.value, prec).abs(prec);
            assert!(d.is_zero(), "snapshot {want_n} must be bit-identical");
        }
    }

    #[test]
    fn dual_matches_individual_runs() {
        let prec = p(192);
        let s = complex("0.75", "21.022", prec);
        let one_minus_s = BigComplex::one(prec).sub(&s, prec);
        let ns = [idx(50), idx(200)];
        let dual = partial_sum_snapshots_dual(&s, &ns, prec).unwrap();
        for (i, n) in ns.iter().enumerate() {
            let a = partial_sum(&s, *n, prec).unwrap();
            let b = partial_sum(&one_minus_s, *n, prec).unwrap();
            assert!(dual[i].0.value.sub(&a.value, prec).abs(prec).is_zero());
            let d = dual[i].1.value.sub(&b.value, prec).abs(prec);
            assert!(d.le_pow2(-170), "dual 1-s sum at n={n}: {:?}", d);
        }
    }

    #[test]
    fn budget_and_ordering_errors() {
        let prec = p(64);
        let s = complex("0.5", "0", prec);
        assert!(matches!(
            partial_sum(&s, idx(BUDGET + 1), prec),
            Err(EtaError::BudgetExceeded(_))
        ));
        assert!(partial_sum_snapshots(&s, &[idx(5), idx(5)], prec).is_err());
        assert!(partial_sum_snapshots(&s, &[idx(9), idx(3)], prec).is_err());
    }
}
