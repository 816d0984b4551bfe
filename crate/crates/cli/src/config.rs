//! Run configuration: defaults, an optional key=value config file, and
//! command-line flags, merged in that order of increasing priority.

use std::path::{Path, PathBuf};

use etalab::Precision;

use crate::error::{usage, Result};

pub const DEFAULT_S: &str = "0.1234+56.789i";
pub const DEFAULT_PREC: u32 = 192;
pub const DEFAULT_DIGITS: usize = 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

impl OutputFormat {
    fn from_key(v: &str) -> Result<Self> {
        match v {
            "text" => Ok(Self::Text),
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(usage(format!(
                "bad format {v:?}: expected text, csv or json"
            ))),
        }
    }
}

/// One source of settings; every field optional. Command-line flags and
/// the config file both collapse to this shape.
#[derive(Clone, Debug, Default, clap::Args)]
pub struct FlagSet {
    /// Complex evaluation point, written `a+bi`.
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// Real part for probes that scan along a horizontal line.
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<String>,
    /// Index schedule: single values (`1e8`), comma lists, or `lo:hi`
    /// geometric ranges stepping by 10.
    #[arg(long)]
    pub n: Option<String>,
    /// Working precision in bits.
    #[arg(long)]
    pub prec: Option<u32>,
    /// Printed digits after the decimal point (truncated, not rounded).
    #[arg(long)]
    pub digits: Option<usize>,
    /// Report format.
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Interval `lo:hi` on the critical line.
    #[arg(long = "zero-bracket")]
    pub zero_bracket: Option<String>,
    /// Comma-separated ordinate offsets for the exchange probe.
    #[arg(long)]
    pub offsets: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl FlagSet {
    /// Field-wise merge; `self` wins over `fallback`.
    fn or(self, fallback: FlagSet) -> FlagSet {
        FlagSet {
            s: self.s.or(fallback.s),
            sigma: self.sigma.or(fallback.sigma),
            n: self.n.or(fallback.n),
            prec: self.prec.or(fallback.prec),
            digits: self.digits.or(fallback.digits),
            format: self.format.or(fallback.format),
            zero_bracket: self.zero_bracket.or(fallback.zero_bracket),
            offsets: self.offsets.or(fallback.offsets),
            out: self.out.or(fallback.out),
        }
    }
}

/// Reads a key=value config file. Blank lines and `#` comments are
/// ignored; keys match the long flag names.
pub fn load_config_file(path: &Path) -> Result<FlagSet> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut set = FlagSet::default();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            usage(format!(
                "{}:{}: expected key=value",
                path.display(),
                lineno + 1
            ))
        })?;
        let (key, value) = (key.trim(), value.trim().to_string());
        let numbered = |what: &str| {
            usage(format!(
                "{}:{}: bad {what} value {value:?}",
                path.display(),
                lineno + 1
            ))
        };
        match key {
            "s" => set.s = Some(value),
            "sigma" => set.sigma = Some(value),
            "n" => set.n = Some(value),
            "prec" => set.prec = Some(value.parse().map_err(|_| numbered("prec"))?),
            "digits" => set.digits = Some(value.parse().map_err(|_| numbered("digits"))?),
            "format" => set.format = Some(OutputFormat::from_key(&value)?),
            "zero-bracket" => set.zero_bracket = Some(value),
            "offsets" => set.offsets = Some(value),
            "out" => set.out = Some(PathBuf::from(value)),
            _ => {
                return Err(usage(format!(
                    "{}:{}: unknown key {key:?}",
                    path.display(),
                    lineno + 1
                )))
            }
        }
    }
    Ok(set)
}

/// Fully resolved settings for one command invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub precision: Precision,
    pub s_literal: String,
    pub sigma: Option<String>,
    pub n_schedule: Option<String>,
    pub format: OutputFormat,
    pub digits: usize,
    pub zero_bracket: Option<String>,
    pub offsets: Option<String>,
    pub out: Option<PathBuf>,
}

/// Digits printable without noise at `bits` of working precision.
pub fn digit_capacity(bits: u32) -> usize {
    let cap = (bits as f64 * std::f64::consts::LOG10_2).floor() as i64 - 8;
    cap.max(0) as usize
}

pub fn resolve(flags: FlagSet, file: Option<FlagSet>) -> Result<RunConfig> {
    let merged = match file {
        Some(file) => flags.or(file),
        None => flags,
    };
    let bits = merged.prec.unwrap_or(DEFAULT_PREC);
    let precision = Precision::new(bits)
        .map_err(|e| usage(format!("bad precision {bits}: {e}")))?;
    let digits = merged.digits.unwrap_or(DEFAULT_DIGITS);
    if digits == 0 {
        return Err(usage("digits must be at least 1"));
    }
    let cap = digit_capacity(bits);
    if digits > cap {
        return Err(usage(format!(
            "digits {digits} exceeds the printable capacity {cap} at {bits} bits; \
             raise --prec or lower --digits"
        )));
    }
    Ok(RunConfig {
        precision,
        s_literal: merged.s.unwrap_or_else(|| DEFAULT_S.to_string()),
        sigma: merged.sigma,
        n_schedule: merged.n,
        format: merged.format.unwrap_or(OutputFormat::Text),
        digits,
        zero_bracket: merged.zero_bracket,
        offsets: merged.offsets,
        out: merged.out,
    })
}
