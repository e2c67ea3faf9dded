//! Bit strings in the search register's convention: the first bit carries
//! weight 2^0, so `x = sum 2^(k-1) * bit_k`. Display order is first bit
//! leftmost, which is *not* the usual most-significant-first notation.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Ordered bit sequence `eps_1 ... eps_n`, least significant first.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        BitString { bits }
    }

    /// All-zero string of length `n`.
    pub fn zeros(n: usize) -> Self {
        BitString {
            bits: vec![false; n],
        }
    }

    /// Decomposes `x` into `n` bits, least significant first.
    pub fn from_value(x: u64, n: usize) -> Result<Self> {
        if n > 63 || (x >> n) != 0 {
            return Err(Error::BitLengthMismatch {
                expected: n,
                actual: 64 - x.leading_zeros() as usize,
            });
        }
        let bits = (0..n).map(|k| (x >> k) & 1 == 1).collect();
        Ok(BitString { bits })
    }

    /// Integer value `sum 2^(k-1) * eps_k`.
    pub fn value(&self) -> u64 {
        debug_assert!(self.bits.len() <= 63);
        self.bits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (k, &b)| acc | (u64::from(b) << k))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Bit `eps_k`, 1-based.
    pub fn bit(&self, k: usize) -> bool {
        self.bits[k - 1]
    }

    /// Sets bit `eps_k`, 1-based.
    pub fn set(&mut self, k: usize, value: bool) {
        self.bits[k - 1] = value;
    }

    pub fn push(&mut self, value: bool) {
        self.bits.push(value);
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    /// Number of 1-bits.
    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString(\"{self}\")")
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        BitString {
            bits: iter.into_iter().collect(),
        }
    }
}
