//! Flag-value grammars: complex literals, schedule shorthand, brackets,
//! and offset lists. All parse errors carry enough position or token
//! context to fix the input.

use etalab::{BigComplex, BigReal, Precision};

use crate::error::{usage, Result};

/// Largest index any schedule atom may name.
const N_CAP: u64 = 1_000_000_000_000_000_000;

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    /// 1-based column of the cursor, for error messages.
    fn column(&self) -> usize {
        self.pos + 1
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> usize {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.pos - start
    }

    /// One decimal number: [sign] digits [. digits] [e [sign] digits].
    fn number(&mut self, allow_sign: bool) -> Result<String> {
        let start = self.pos;
        if allow_sign && matches!(self.peek(), Some(b'+') | Some(b'-')) {
            self.pos += 1;
        }
        if self.digits() == 0 {
            return Err(usage(format!("expected a digit at column {}", self.column())));
        }
        if self.eat(b'.') && self.digits() == 0 {
            return Err(usage(format!("expected a digit at column {}", self.column())));
        }
        if matches!(self.peek(), Some(b'e') | Some(b'E')) {
            self.pos += 1;
            if matches!(self.peek(), Some(b'+') | Some(b'-')) {
                self.pos += 1;
            }
            if self.digits() == 0 {
                return Err(usage(format!(
                    "expected an exponent digit at column {}",
                    self.column()
                )));
            }
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("number spans ASCII bytes")
            .to_string())
    }
}

/// Parses `a+bi` / `a-bi` with optional whitespace between tokens.
/// Both parts are decimal literals; exponents are allowed.
pub fn parse_complex_literal(text: &str, prec: Precision) -> Result<BigComplex> {
    let mut sc = Scanner::new(text);
    sc.skip_ws();
    let re_tok = sc.number(true)?;
    sc.skip_ws();
    let im_sign = match sc.peek() {
        Some(b'+') => 1,
        Some(b'-') => -1,
        _ => {
            return Err(usage(format!(
                "expected '+' or '-' before the imaginary part at column {}",
                sc.column()
            )))
        }
    };
    sc.pos += 1;
    sc.skip_ws();
    let im_tok = sc.number(false)?;
    sc.skip_ws();
    if !sc.eat(b'i') {
        return Err(usage(format!("expected 'i' at column {}", sc.column())));
    }
    sc.skip_ws();
    if sc.peek().is_some() {
        return Err(usage(format!(
            "unexpected trailing input at column {}",
            sc.column()
        )));
    }
    let re = BigReal::parse_decimal(&re_tok, prec)
        .map_err(|e| usage(format!("real part: {e}")))?;
    let im = BigReal::parse_decimal(&im_tok, prec)
        .map_err(|e| usage(format!("imaginary part: {e}")))?;
    let im = if im_sign < 0 { im.neg_val() } else { im };
    Ok(BigComplex::new(re, im))
}

/// One schedule atom: a positive integer, plain ("1000") or in
/// scientific shorthand ("1e8", "2.5e3").
fn parse_count(atom: &str) -> Result<u64> {
    let bad = |why: &str| usage(format!("bad index {atom:?}: {why}"));
    let atom = atom.trim();
    if atom.is_empty() {
        return Err(bad("empty"));
    }
    let (mant, exp) = match atom.split_once(['e', 'E']) {
        None => (atom, 0i64),
        Some((m, e)) => (
            m,
            e.parse::<i64>().map_err(|_| bad("unreadable exponent"))?,
        ),
    };
    let (int_part, frac_part) = match mant.split_once('.') {
        None => (mant, ""),
        Some((i, f)) => (i, f),
    };
    if int_part.is_empty()
        || !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(bad("expected digits"));
    }
    let shift = exp - frac_part.len() as i64;
    if shift < 0 {
        return Err(bad("not an integer"));
    }
    let mut value: u128 = format!("{int_part}{frac_part}")
        .parse()
        .map_err(|_| bad("too large"))?;
    for _ in 0..shift {
        value = value.checked_mul(10).ok_or_else(|| bad("too large"))?;
        if value > N_CAP as u128 {
            return Err(bad("exceeds 1e18"));
        }
    }
    if value == 0 || value > N_CAP as u128 {
        return Err(bad("must be in 1..=1e18"));
    }
    Ok(value as u64)
}

/// Schedule shorthand: comma-separated atoms, each a single index or a
/// geometric range `lo:hi` stepping by factors of ten.
pub fn parse_n_spec(text: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for atom in text.split(',') {
        let atom = atom.trim();
        match atom.split_once(':') {
            None => out.push(parse_count(atom)?),
            Some((lo, hi)) => {
                let lo = parse_count(lo)?;
                let hi = parse_count(hi)?;
                if lo > hi {
                    return Err(usage(format!("bad range {atom:?}: lo exceeds hi")));
                }
                let mut n = lo;
                loop {
                    out.push(n);
                    match n.checked_mul(10) {
                        Some(next) if next <= hi => n = next,
                        _ => break,
                    }
                }
            }
        }
    }
    if out.is_empty() {
        return Err(usage("empty index list"));
    }
    Ok(out)
}

/// `lo:hi` with decimal endpoints, lo < hi.
pub fn parse_bracket(text: &str, prec: Precision) -> Result<(BigReal, BigReal)> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| usage(format!("bad bracket {text:?}: expected lo:hi")))?;
    let lo = BigReal::parse_decimal(lo.trim(), prec)
        .map_err(|e| usage(format!("bracket lower end: {e}")))?;
    let hi = BigReal::parse_decimal(hi.trim(), prec)
        .map_err(|e| usage(format!("bracket upper end: {e}")))?;
    if !lo.lt(&hi) {
        return Err(usage(format!("bad bracket {text:?}: lo must be below hi")));
    }
    Ok((lo, hi))
}

/// Comma-separated nonnegative offsets; the source token is kept as the
/// printable label.
pub fn parse_offsets(text: &str, prec: Precision) -> Result<Vec<(String, BigReal)>> {
    let mut out = Vec::new();
    for tok in text.split(',') {
        let tok = tok.trim();
        let v = BigReal::parse_decimal(tok, prec)
            .map_err(|e| usage(format!("offset {tok:?}: {e}")))?;
        if v.is_negative() {
            return Err(usage(format!("offset {tok:?} is negative")));
        }
        out.push((tok.to_string(), v));
    }
    if out.is_empty() {
        return Err(usage("empty offset list"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::new(128).unwrap()
    }

    #[test]
    fn complex_literals_parse() {
        let z = parse_complex_literal("0.1234+56.789i", p()).unwrap();
        assert_eq!(z.re().to_f64(), 0.1234);
        assert_eq!(z.im().to_f64(), 56.789);
        let z = parse_complex_literal(" -1.5 - 2i ", p()).unwrap();
        assert_eq!(z.re().to_f64(), -1.5);
        assert_eq!(z.im().to_f64(), -2.0);
        let z = parse_complex_literal("1e-3+2.5e2i", p()).unwrap();
        assert_eq!(z.re().to_f64(), 1.0e-3);
        assert_eq!(z.im().to_f64(), 250.0);
    }

    #[test]
    fn complex_errors_name_the_column() {
        let e = parse_complex_literal("0.1234", p()).unwrap_err().to_string();
        assert!(e.contains("column 7"), "{e}");
        let e = parse_complex_literal("1+2j", p()).unwrap_err().to_string();
        assert!(e.contains("column 4"), "{e}");
        let e = parse_complex_literal("1+2i tail", p())
            .unwrap_err()
            .to_string();
        assert!(e.contains("column 6"), "{e}");
        assert!(parse_complex_literal("1+-2i", p()).is_err());
        assert!(parse_complex_literal("", p()).is_err());
    }

    #[test]
    fn n_specs_expand() {
        assert_eq!(parse_n_spec("1000").unwrap(), vec![1000]);
        assert_eq!(parse_n_spec("1e3").unwrap(), vec![1000]);
        assert_eq!(parse_n_spec("2.5e3").unwrap(), vec![2500]);
        assert_eq!(
            parse_n_spec("1e3:1e6").unwrap(),
            vec![1_000, 10_000, 100_000, 1_000_000]
        );
        assert_eq!(
            parse_n_spec("1e8,1e10").unwrap(),
            vec![100_000_000, 10_000_000_000]
        );
        assert_eq!(parse_n_spec("1e18").unwrap(), vec![N_CAP]);
    }

    #[test]
    fn n_spec_rejects_junk() {
        for bad in ["", "0", "1e19", "5e", "1.5", "-3", "1e6:1e3", "2:1e3:4"] {
            assert!(parse_n_spec(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn brackets_and_offsets_parse() {
        let (lo, hi) = parse_bracket("14:15", p()).unwrap();
        assert_eq!(lo.to_f64(), 14.0);
        assert_eq!(hi.to_f64(), 15.0);
        assert!(parse_bracket("15:14", p()).is_err());
        assert!(parse_bracket("15", p()).is_err());
        let offs = parse_offsets("0,0.001,0.1", p()).unwrap();
        assert_eq!(offs.len(), 3);
        assert_eq!(offs[1].0, "0.001");
        assert!(parse_offsets("0,-1", p()).is_err());
    }
}
