//! Binary sequences, run statistics and little-endian integer coding.
//!
//! Positions in the public API are 1-based so that `subseq(s, t)` reads the
//! same as the usual `x[s,t]` notation. The text form is a string of ASCII
//! `0`/`1` characters; the empty string is the empty sequence.

use std::fmt;
use std::str::FromStr;

use bitvec::prelude::*;

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSeq {
    bits: BitVec<u64, Lsb0>,
}

impl BitSeq {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(capacity: usize) -> Self {
        Self {
            bits: BitVec::with_capacity(capacity),
        }
    }

    /// `bit` repeated `len` times.
    pub fn repeat(bit: bool, len: usize) -> Self {
        Self {
            bits: BitVec::repeat(bit, len),
        }
    }

    pub fn zeros(len: usize) -> Self {
        Self::repeat(false, len)
    }

    pub fn ones(len: usize) -> Self {
        Self::repeat(true, len)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Symbol at 1-based position `pos`.
    pub fn get(&self, pos: usize) -> Option<bool> {
        if pos == 0 {
            return None;
        }
        self.bits.get(pos - 1).map(|b| *b)
    }

    pub fn first(&self) -> Option<bool> {
        self.bits.first().map(|b| *b)
    }

    pub fn last(&self) -> Option<bool> {
        self.bits.last().map(|b| *b)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = bool> + ExactSizeIterator + '_ {
        self.bits.iter().by_vals()
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn pop(&mut self) -> Option<bool> {
        self.bits.pop()
    }

    pub fn extend_from(&mut self, other: &BitSeq) {
        self.bits.extend_from_bitslice(&other.bits);
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &BitSeq) -> BitSeq {
        let mut out = BitSeq::with_capacity(self.len() + other.len());
        out.extend_from(self);
        out.extend_from(other);
        out
    }

    /// The consecutive subsequence from position `start` to `end`, both
    /// 1-based and inclusive. `end == start - 1` yields the empty sequence.
    ///
    /// Panics if the range does not lie within the sequence.
    pub fn subseq(&self, start: usize, end: usize) -> BitSeq {
        assert!(
            start >= 1 && end + 1 >= start && end <= self.len(),
            "subsequence [{start}, {end}] out of range for length {}",
            self.len()
        );
        BitSeq {
            bits: self.bits[start - 1..end].to_bitvec(),
        }
    }

    /// The first `len` symbols.
    pub fn prefix(&self, len: usize) -> BitSeq {
        self.subseq(1, len)
    }

    /// The last `len` symbols.
    pub fn suffix(&self, len: usize) -> BitSeq {
        self.subseq(self.len() - len + 1, self.len())
    }

    pub fn truncate(&mut self, len: usize) {
        self.bits.truncate(len);
    }

    /// Inserts `bit` so that it lands at 1-based position `pos`
    /// (`pos == len + 1` appends). Panics when out of range.
    pub fn insert(&mut self, pos: usize, bit: bool) {
        assert!(
            pos >= 1 && pos <= self.len() + 1,
            "insert position {pos} out of range"
        );
        self.bits.insert(pos - 1, bit);
    }

    /// Removes and returns the symbol at 1-based position `pos`.
    /// Panics when out of range.
    pub fn remove(&mut self, pos: usize) -> bool {
        assert!(
            pos >= 1 && pos <= self.len(),
            "remove position {pos} out of range"
        );
        self.bits.remove(pos - 1)
    }

    /// Removes the symbols at 1-based positions `start..start + count`.
    pub fn remove_range(&mut self, start: usize, count: usize) {
        assert!(start >= 1 && start - 1 + count <= self.len());
        self.bits.drain(start - 1..start - 1 + count);
    }

    /// Inserts `other` so that its first symbol lands at 1-based position `pos`.
    pub fn insert_seq(&mut self, pos: usize, other: &BitSeq) {
        assert!(pos >= 1 && pos <= self.len() + 1);
        let tail = self.bits.split_off(pos - 1);
        self.bits.extend_from_bitslice(&other.bits);
        self.bits.extend_from_bitslice(&tail);
    }

    pub fn count_ones(&self) -> usize {
        self.bits.count_ones()
    }

    /// Maximal runs of equal symbols, left to right, as `(symbol, length)`.
    pub fn runs(&self) -> Runs<'_> {
        Runs { seq: self, pos: 0 }
    }

    pub fn max_run_length(&self) -> usize {
        self.runs().map(|(_, len)| len).max().unwrap_or(0)
    }

    pub fn max_zero_run(&self) -> usize {
        self.runs()
            .filter(|(bit, _)| !bit)
            .map(|(_, len)| len)
            .max()
            .unwrap_or(0)
    }

    /// Membership in the r-RLL set: no run longer than `r`.
    pub fn is_rll(&self, r: usize) -> bool {
        self.max_run_length() <= r
    }

    /// Membership in the (0, r-1)-constraint set: no run of `r` zeros.
    pub fn is_zero_constrained(&self, r: usize) -> bool {
        self.max_zero_run() < r
    }

    /// `k`-symbol little-endian representation of `x`, least significant
    /// bit first.
    pub fn le_encode(x: u64, k: usize) -> Result<BitSeq> {
        if k < 64 && x >> k != 0 {
            return Err(Error::range(format!(
                "value {x} does not fit in {k} little-endian symbols"
            )));
        }
        Ok((0..k).map(|i| i < 64 && (x >> i) & 1 == 1).collect())
    }

    /// Inverse of [`BitSeq::le_encode`].
    pub fn le_decode(&self) -> Result<u64> {
        if self.is_empty() {
            return Err(Error::data("cannot decode an empty sequence as an integer"));
        }
        if self.len() > 64 && self.bits[64..].any() {
            return Err(Error::data("little-endian value exceeds 64 bits"));
        }
        Ok(self
            .iter()
            .take(64)
            .enumerate()
            .fold(0u64, |acc, (i, b)| acc | (u64::from(b) << i)))
    }
}

pub struct Runs<'a> {
    seq: &'a BitSeq,
    pos: usize,
}

impl Iterator for Runs<'_> {
    type Item = (bool, usize);

    fn next(&mut self) -> Option<Self::Item> {
        let bits = &self.seq.bits;
        let bit = *bits.get(self.pos)?;
        let rest = &bits[self.pos..];
        let len = if bit {
            rest.leading_ones()
        } else {
            rest.leading_zeros()
        };
        self.pos += len;
        Some((bit, len))
    }
}

impl FromIterator<bool> for BitSeq {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self {
            bits: iter.into_iter().collect(),
        }
    }
}

impl FromStr for BitSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        // Explicit loop: the bit collector keeps polling after the first
        // error, which would report a later position.
        let mut out = BitSeq::with_capacity(s.len());
        for (i, c) in s.bytes().enumerate() {
            match c {
                b'0' => out.push(false),
                b'1' => out.push(true),
                _ => {
                    return Err(Error::data(format!(
                        "invalid symbol {:?} at position {}",
                        c as char,
                        i + 1
                    )))
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitSeq(\"{self}\")")
    }
}
