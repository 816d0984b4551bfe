//! Cross-method and recurrence invariants of the tail engine on random
//! strip points. Randomness is seeded, so every run checks the same
//! deterministic sample.

use etalab::eta::{
    error_term, eta_full, partial_sum, tail_remainder, TailIndex, TailMethod,
};
use etalab::mp::complex_power;
use etalab::{BigComplex, BigReal, Precision};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn prec() -> Precision {
    Precision::new(192).unwrap()
}

fn complex(re: &str, im: &str, p: Precision) -> BigComplex {
    BigComplex::new(
        BigReal::parse_decimal(re, p).unwrap(),
        BigReal::parse_decimal(im, p).unwrap(),
    )
}

fn test_point(p: Precision) -> BigComplex {
    complex("0.1234", "56.789", p)
}

fn draw_strip_point(rng: &mut ChaCha8Rng, p: Precision) -> BigComplex {
    let sigma = 0.05 + 0.9 * rng.gen::<f64>();
    let t = -40.0 + 80.0 * rng.gen::<f64>();
    BigComplex::new(
        BigReal::from_f64(sigma, p).unwrap(),
        BigReal::from_f64(t, p).unwrap(),
    )
}

/// |x| * n^sigma, the natural scale for tail-sized quantities.
fn scale_by_n_sigma(x: &BigReal, n: u64, sigma: &BigReal, p: Precision) -> BigReal {
    let pw = p.plus(16);
    let growth = BigReal::from_u64(n, pw)
        .ln(pw)
        .unwrap()
        .mul(sigma, pw)
        .exp(pw)
        .unwrap();
    x.abs().mul(&growth, p)
}

#[test]
fn recurrences_hold_on_random_sample() {
    let p = prec();
    let pw = p.plus(16);
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a11_5eed);
    for trial in 0..100 {
        let s = draw_strip_point(&mut rng, pw);
        let n = 10f64.powf(rng.gen::<f64>() * 9.0).max(2.0) as u64;
        let idx = TailIndex::new(n).unwrap();
        let r_prev =
            tail_remainder(&s, TailIndex::new(n - 1).unwrap(), p, TailMethod::HurwitzPair).unwrap();
        let r_curr = tail_remainder(&s, idx, p, TailMethod::HurwitzPair).unwrap();
        let r_next =
            tail_remainder(&s, TailIndex::new(n + 1).unwrap(), p, TailMethod::HurwitzPair).unwrap();
        let sign = |v: BigComplex| if n % 2 == 0 { v } else { v.neg_val() };
        // R_n - R_(n-1) = (-1)^n n^(-s).
        let step_prev = sign(complex_power(&BigReal::from_u64(n, pw), &s.neg_val(), pw).unwrap());
        let d1 = r_curr
            .value
            .sub(&r_prev.value, pw)
            .sub(&step_prev, pw)
            .abs(pw);
        // R_n - R_(n+1) = (-1)^n (n+1)^(-s).
        let step_next =
            sign(complex_power(&BigReal::from_u64(n + 1, pw), &s.neg_val(), pw).unwrap());
        let d2 = r_curr
            .value
            .sub(&r_next.value, pw)
            .sub(&step_next, pw)
            .abs(pw);
        for (which, d) in [("prev", d1), ("next", d2)] {
            let scaled = scale_by_n_sigma(&d, n, s.re(), pw);
            assert!(
                scaled.le_pow2(-(192 - 16)),
                "trial {trial} ({which}): n = {n}, s = {}+{}i, scaled residual {:?}",
                s.re().to_f64(),
                s.im().to_f64(),
                scaled.to_f64()
            );
        }
    }
}

#[test]
fn methods_agree_along_the_ladder() {
    let p = prec();
    let s = test_point(p);
    for n in [100u64, 10_000, 1_000_000, 100_000_000] {
        let idx = TailIndex::new(n).unwrap();
        let a = tail_remainder(&s, idx, p, TailMethod::HurwitzPair).unwrap();
        let b = tail_remainder(&s, idx, p, TailMethod::DirectAccel).unwrap();
        let rel = a
            .value
            .sub(&b.value, p)
            .abs(p)
            .div(&a.value.abs(p), p)
            .unwrap();
        assert!(
            rel.le_pow2(-(192 - 24)),
            "hurwitz vs accel at n = {n}: {:?}",
            rel.to_f64()
        );
        if n <= 10_000 {
            let c = tail_remainder(&s, idx, p, TailMethod::Brute).unwrap();
            let rel = a
                .value
                .sub(&c.value, p)
                .abs(p)
                .div(&a.value.abs(p), p)
                .unwrap();
            assert!(
                rel.le_pow2(-(192 - 24)),
                "hurwitz vs brute at n = {n}: {:?}",
                rel.to_f64()
            );
        }
    }
}

#[test]
fn head_plus_tail_reassembles_eta() {
    let p = prec();
    let s = test_point(p);
    let eta = eta_full(&s, p).unwrap();
    for n in [17u64, 1_024, 100_000] {
        let idx = TailIndex::new(n).unwrap();
        let head = partial_sum(&s, idx, p).unwrap();
        let tail = tail_remainder(&s, idx, p, TailMethod::HurwitzPair).unwrap();
        let rel = head
            .value
            .add(&tail.value, p)
            .sub(&eta.value, p)
            .abs(p)
            .div(&eta.value.abs(p), p)
            .unwrap();
        assert!(
            rel.le_pow2(-(192 - 16)),
            "decomposition at n = {n}: {:?}",
            rel.to_f64()
        );
    }
}

#[test]
fn tail_magnitude_never_exceeds_reference_envelope() {
    // |R_n(s)| <= 1.000001 * (n+0.5)^(-sigma) over a grid well inside
    // the asymptotic regime.
    let p = prec();
    let pw = p.plus(16);
    let cap = BigReal::parse_decimal("1.000001", pw).unwrap();
    let half = BigReal::one(pw).scale_pow2(-1);
    for sigma in ["0.1234", "0.5", "0.9"] {
        for t in ["0", "5", "56.789"] {
            let s = complex(sigma, t, pw);
            for n in [100u64, 10_000, 1_000_000] {
                let r = tail_remainder(
                    &s,
                    TailIndex::new(n).unwrap(),
                    p,
                    TailMethod::HurwitzPair,
                )
                .unwrap();
                let base = BigReal::from_u64(n, pw).add(&half, pw);
                let envelope = base
                    .ln(pw)
                    .unwrap()
                    .mul(s.re(), pw)
                    .exp(pw)
                    .unwrap();
                let ratio = r.value.abs(pw).mul(&envelope, pw);
                assert!(
                    ratio.le(&cap),
                    "sigma={sigma} t={t} n={n}: |R_n| (n+0.5)^sigma = {:?}",
                    ratio.to_f64()
                );
            }
        }
    }
}

#[test]
fn error_bounds_cover_cross_method_gaps() {
    let p = prec();
    let s = test_point(p);
    for n in [100u64, 1_000] {
        let idx = TailIndex::new(n).unwrap();
        let a = tail_remainder(&s, idx, p, TailMethod::HurwitzPair).unwrap();
        let b = tail_remainder(&s, idx, p, TailMethod::DirectAccel).unwrap();
        let c = tail_remainder(&s, idx, p, TailMethod::Brute).unwrap();
        for (label, other) in [("accel", &b), ("brute", &c)] {
            let gap = a.value.sub(&other.value, p).abs(p);
            let budget = a.err_bound.add(&other.err_bound, p);
            assert!(
                gap.le(&budget),
                "claimed error bounds too tight vs {label} at n = {n}"
            );
        }
    }
}

#[test]
fn error_term_scales_inversely_with_n_squared() {
    // eps_rel should shrink roughly like 1/n^2; check two decades.
    let p = prec();
    let s = test_point(p);
    let e3 = error_term(&s, TailIndex::new(1_000).unwrap(), p).unwrap();
    let e5 = error_term(&s, TailIndex::new(100_000).unwrap(), p).unwrap();
    let shrink = e3.eps_rel.div(&e5.eps_rel, p).unwrap().to_f64();
    assert!(
        (shrink / 1.0e4 - 1.0).abs() < 0.2,
        "eps_rel shrank by {shrink} across two decades"
    );
}
