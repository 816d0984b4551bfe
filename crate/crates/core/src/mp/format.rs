//! Decimal rendering.
//!
//! User-facing digit strings are truncated, never rounded, and always
//! sign-prefixed. The decimal expansion comes straight from the binary
//! value, so a printed string is a prefix of the same quantity printed
//! from a higher-precision run (as long as the requested digit count
//! stays under the precision's digit capacity).

use astro_float::{Radix, RoundingMode, Sign};

use super::{with_consts, BigReal, Precision};

/// Digits of |x| as (sign, digit buffer, decimal exponent e):
/// |x| = 0.d1 d2 ... * 10^e. The buffer holds the full digit capacity
/// of x's binary precision, truncated toward zero.
fn decimal_parts(x: &BigReal) -> (Sign, Vec<u8>, i32) {
    if x.is_zero() {
        return (Sign::Pos, Vec::new(), 0);
    }
    let (s, m, e) = with_consts(|cc| x.raw().convert_to_radix(Radix::Dec, RoundingMode::None, cc))
        .expect("finite value converts to decimal");
    (s, m, e)
}

fn digit_at(m: &[u8], i: i64) -> u8 {
    if i < 0 || i as usize >= m.len() {
        0
    } else {
        m[i as usize]
    }
}

fn sign_char(s: Sign) -> char {
    match s {
        Sign::Neg => '-',
        Sign::Pos => '+',
    }
}

/// Fixed-point rendering with exactly `digits` digits after the point.
pub fn format_fixed(x: &BigReal, digits: usize) -> String {
    let (s, m, e) = decimal_parts(x);
    let e = e as i64;
    let mut out = String::with_capacity(digits + 8);
    out.push(sign_char(s));
    if e <= 0 {
        out.push('0');
    } else {
        for i in 0..e {
            out.push((b'0' + digit_at(&m, i)) as char);
        }
    }
    out.push('.');
    for i in 0..digits as i64 {
        out.push((b'0' + digit_at(&m, e + i)) as char);
    }
    out
}

/// Scientific rendering with `sig` significant digits, truncated:
/// "+3.9546e-18". The exponent carries a sign only when negative.
pub fn format_sci(x: &BigReal, sig: usize) -> String {
    let sig = sig.max(1);
    let (s, m, e) = decimal_parts(x);
    let mut out = String::with_capacity(sig + 8);
    out.push(sign_char(s));
    if m.is_empty() {
        out.push('0');
        if sig > 1 {
            out.push('.');
            for _ in 1..sig {
                out.push('0');
            }
        }
        out.push_str("e0");
        return out;
    }
    out.push((b'0' + m[0]) as char);
    if sig > 1 {
        out.push('.');
        for i in 1..sig as i64 {
            out.push((b'0' + digit_at(&m, i)) as char);
        }
    }
    out.push('e');
    out.push_str(&(e as i64 - 1).to_string());
    out
}

/// Nearest integer to x * 10^digits, half away from zero, returned as an
/// exact BigReal at `prec`. Used to reproduce published tables that were
/// derived from fixed-digit decimal representations.
pub fn round_scaled_int(x: &BigReal, digits: u32, prec: Precision) -> BigReal {
    let (s, m, e) = decimal_parts(x);
    let k = e as i64 + digits as i64;
    let mut int_digits: Vec<u8> = if k <= 0 {
        Vec::new()
    } else {
        (0..k).map(|i| digit_at(&m, i)).collect()
    };
    let round_up = digit_at(&m, k.max(0)) >= 5 && k >= 0;
    if round_up {
        let mut i = int_digits.len();
        loop {
            if i == 0 {
                int_digits.insert(0, 1);
                break;
            }
            i -= 1;
            if int_digits[i] == 9 {
                int_digits[i] = 0;
            } else {
                int_digits[i] += 1;
                break;
            }
        }
    }
    if int_digits.iter().all(|&d| d == 0) {
        return BigReal::zero(prec);
    }
    let mut lit = String::with_capacity(int_digits.len() + 1);
    if s == Sign::Neg {
        lit.push('-');
    }
    for d in &int_digits {
        lit.push((b'0' + d) as char);
    }
    BigReal::parse_decimal(&lit, prec).expect("integer literal parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    #[test]
    fn fixed_dyadic_values() {
        let prec = p(192);
        let x = BigReal::parse_decimal("0.125", prec).unwrap();
        assert_eq!(format_fixed(&x, 5), "+0.12500");
        // -(10 + 1/1024) is dyadic: digits are exact.
        let y = BigReal::parse_decimal("-10.0009765625", prec).unwrap();
        assert_eq!(format_fixed(&y, 7), "-10.0009765");
        assert_eq!(format_fixed(&y, 12), "-10.000976562500");
        let z = BigReal::zero(prec);
        assert_eq!(format_fixed(&z, 4), "+0.0000");
    }

    #[test]
    fn fixed_truncates_not_rounds() {
        let prec = p(192);
        // 0.6875 + 2^-20 = 0.68750095367431640625
        let x = BigReal::parse_decimal("0.68750095367431640625", prec).unwrap();
        assert_eq!(format_fixed(&x, 6), "+0.687500");
    }

    #[test]
    fn sci_dyadic_values() {
        let prec = p(192);
        let x = BigReal::parse_decimal("0.00000286102294921875", prec).unwrap(); // 3/2^20
        assert_eq!(format_sci(&x, 6), "+2.86102e-6");
        let y = BigReal::parse_decimal("-0.0009765625", prec).unwrap(); // -2^-10
        assert_eq!(format_sci(&y, 4), "-9.765e-4");
        let big = BigReal::from_u64(96, prec);
        assert_eq!(format_sci(&big, 2), "+9.6e1");
        assert_eq!(format_sci(&BigReal::zero(prec), 4), "+0.000e0");
    }

    #[test]
    fn round_scaled_int_half_away() {
        // Inputs stay clear of half boundaries: no non-dyadic decimal is
        // exactly representable in binary, so a literal ending in ...5
        // could land on either side of its nominal boundary.
        let prec = p(192);
        let x = BigReal::parse_decimal("0.123456", prec).unwrap();
        let r = round_scaled_int(&x, 4, prec);
        assert_eq!(format_fixed(&r, 0), "+1235.");
        let y = BigReal::parse_decimal("-0.999951", prec).unwrap();
        let r = round_scaled_int(&y, 4, prec);
        assert_eq!(format_fixed(&r, 0), "-10000.");
        let w = BigReal::parse_decimal("0.9999409", prec).unwrap();
        let r = round_scaled_int(&w, 4, prec);
        assert_eq!(format_fixed(&r, 0), "+9999.");
        let tiny = BigReal::parse_decimal("0.00004", prec).unwrap();
        assert!(round_scaled_int(&tiny, 4, prec).is_zero());
    }
}
