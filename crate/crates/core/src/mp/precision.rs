use crate::error::{EtaError, Result};

/// Binary working precision of a value, in significand bits.
///
/// Invariants: `bits >= 64`; decimal digit capacity is
/// `floor(bits * log10(2))` and every formatted output truncates to at
/// most that many digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Precision {
    bits: u32,
}

/// log10(2) scaled by 2^32, rounded down; exact enough for any bit
/// count this crate accepts.
const LOG10_2_Q32: u64 = 1_292_913_986;

impl Precision {
    pub const MIN_BITS: u32 = 64;
    pub const MAX_BITS: u32 = 1 << 22;

    pub fn new(bits: u32) -> Result<Self> {
        if !(Self::MIN_BITS..=Self::MAX_BITS).contains(&bits) {
            return Err(EtaError::Domain(format!(
                "precision must be {}..={} bits, got {bits}",
                Self::MIN_BITS,
                Self::MAX_BITS
            )));
        }
        Ok(Self { bits })
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn bits_usize(self) -> usize {
        self.bits as usize
    }

    /// Number of decimal digits this precision can represent faithfully.
    pub fn decimal_digits(self) -> u32 {
        ((self.bits as u64 * LOG10_2_Q32) >> 32) as u32
    }

    /// Widened precision for internal guard bits; saturates at the cap.
    pub fn plus(self, guard_bits: u32) -> Self {
        Self {
            bits: (self.bits + guard_bits).min(Self::MAX_BITS),
        }
    }
}

impl Default for Precision {
    /// 192 bits (about 57 decimal digits): covers 28-digit output tables
    /// with cancellation guard to spare.
    fn default() -> Self {
        Self { bits: 192 }
    }
}
