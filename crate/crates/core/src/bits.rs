//! Bit-string helpers.
//!
//! Inputs are written `ν₁ν₂…νₙ` left to right. When packed into an integer
//! mask, `νᵢ` occupies bit `i - 1`, so the mask `0b0011` is the string `1100`.

use crate::error::{Error, Result};

/// Parses a string of `0`/`1` characters.
pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .filter(|c| !c.is_whitespace() && *c != '_')
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::param(format!("`{other}` is not a bit"))),
        })
        .collect()
}

pub fn format_bits(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn bits_from_mask(mask: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}

pub fn mask_from_bits(bits: &[bool]) -> u64 {
    debug_assert!(bits.len() <= 64);
    bits.iter().enumerate().fold(0, |m, (i, &b)| m | (b as u64) << i)
}

/// Number of ones among the first `window` bits of `mask`.
pub(crate) fn ones_in_window(mask: u64, window: usize) -> usize {
    let m = if window >= 64 {
        mask
    } else {
        mask & ((1u64 << window) - 1)
    };
    m.count_ones() as usize
}
