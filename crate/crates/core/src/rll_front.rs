//! Constrained front-end: sequence replacement into the (0, r-1)-constraint
//! set, followed by NRZI precoding into the r-RLL set.
//!
//! The replacement encoder keeps a working word `v` (initially the message)
//! with an implicit trailing `1`. While `v 1` contains the forbidden word
//! `0^r 1`, the leftmost occurrence at position `p` is cut out:
//!
//! * if its terminating `1` lies inside `v`, the `r + 1` symbols are deleted
//!   and the pointer `Le_r(p + 3)` is appended;
//! * if the terminating `1` is the implicit sentinel (`v` ends in `0^r`),
//!   the `r` zeros are deleted and the marker `1 0^(r-2)` is appended.
//!
//! Each replacement shrinks `v` by exactly one symbol. The output is
//! `v 1 omega(s)` where `s` counts replacements and `omega(s)` has length `s`,
//! so every codeword has length `k`.
//!
//! Pointer values are always at least 4 while the end marker, read as an
//! `r`-symbol little-endian value together with the symbol before it, is 2
//! or 3, so each undo step is unambiguous. The replacement count is
//! recovered by trying every suffix that parses as `1 omega(s)` and keeping
//! the candidate that re-encodes to the received word.
//!
//! Lengths are capped at [`analysis::front_length_bound`]: for `r >= 5` the
//! two longest nominal lengths admit distinct messages with the same output.

use crate::analysis;
use crate::bitseq::BitSeq;
use crate::error::{Error, ParamError, Result};

/// Front-end parameters: output length `k` (message length `k - 1`) and
/// maximum run-length `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FrontParams {
    k: usize,
    r: usize,
}

impl FrontParams {
    pub fn new(k: usize, r: usize) -> Result<Self, ParamError> {
        if r < 2 {
            return Err(ParamError::RunLimitTooSmall { r });
        }
        if k < 2 {
            return Err(ParamError::FrontTooShort { k });
        }
        let bound = analysis::front_length_bound(r);
        if k > bound {
            return Err(ParamError::FrontInfeasible { k, r, bound });
        }
        Ok(Self { k, r })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn message_len(&self) -> usize {
        self.k - 1
    }
}

/// Replacement-count word `0^(s - (t+1)v) (1^t 0)^v` with `v = s / (t+1)`.
/// Its length is always `s`.
pub fn omega(s: usize, t: usize) -> BitSeq {
    let blocks = s / (t + 1);
    let mut out = BitSeq::zeros(s - (t + 1) * blocks);
    let block: BitSeq = std::iter::repeat_n(true, t)
        .chain(std::iter::once(false))
        .collect();
    for _ in 0..blocks {
        out.extend_from(&block);
    }
    out
}

fn end_marker(r: usize) -> BitSeq {
    std::iter::once(true)
        .chain(std::iter::repeat_n(false, r - 2))
        .collect()
}

/// 1-based start of the leftmost `0^r 1` in `v 1`.
fn leftmost_forbidden(v: &BitSeq, r: usize) -> Option<usize> {
    let mut pos = 1;
    for (bit, len) in v.runs() {
        if !bit && len >= r {
            return Some(pos + len - r);
        }
        pos += len;
    }
    None
}

/// Sequence-replacement encoder: maps `u` of length `k - 1` to a word of
/// length `k` with no run of `r` zeros.
pub fn wi_encode(u: &BitSeq, fp: &FrontParams) -> Result<BitSeq> {
    let (k, r) = (fp.k, fp.r);
    if u.len() != k - 1 {
        return Err(Error::data(format!(
            "message length {} does not match k - 1 = {}",
            u.len(),
            k - 1
        )));
    }

    let mut v = u.clone();
    let mut s = 0;
    while let Some(p) = leftmost_forbidden(&v, r) {
        if p + r <= v.len() {
            v.remove_range(p, r + 1);
            v.extend_from(&BitSeq::le_encode((p + 3) as u64, r)?);
        } else {
            v.truncate(p - 1);
            v.extend_from(&end_marker(r));
        }
        s += 1;
        if s > k {
            return Err(Error::invariant(format!(
                "replacement loop overran for (k, r) = ({k}, {r})"
            )));
        }
    }

    let mut x = v;
    x.push(true);
    x.extend_from(&omega(s, r - 1));
    debug_assert_eq!(x.len(), k);
    Ok(x)
}

/// Undoes `s` replacements starting from the final working word.
fn undo_replacements(mut v: BitSeq, s: usize, r: usize) -> Result<BitSeq> {
    let marker = end_marker(r);
    for step in (1..=s).rev() {
        if v.len() >= r {
            let c = v.suffix(r).le_decode()? as usize;
            let prefix_len = v.len() - r;
            if c >= 4 && c - 3 <= prefix_len + 1 {
                let p = c - 3;
                v.truncate(prefix_len);
                let mut word = BitSeq::zeros(r);
                word.push(true);
                v.insert_seq(p, &word);
                continue;
            }
        }
        if v.len() >= r - 1 && v.suffix(r - 1) == marker {
            v.truncate(v.len() - (r - 1));
            v.extend_from(&BitSeq::zeros(r));
            continue;
        }
        return Err(Error::data(format!(
            "malformed front-end word: undo step {step} of {s} found neither a pointer nor an end marker"
        )));
    }
    Ok(v)
}

/// Exact inverse of [`wi_encode`].
pub fn wi_decode(x: &BitSeq, fp: &FrontParams) -> Result<BitSeq> {
    let (k, r) = (fp.k, fp.r);
    if x.len() != k {
        return Err(Error::data(format!(
            "front-end word length {} does not match k = {k}",
            x.len()
        )));
    }
    if !x.is_zero_constrained(r) {
        return Err(Error::data(format!(
            "front-end word contains a run of {} zeros (limit {})",
            x.max_zero_run(),
            r - 1
        )));
    }

    let mut found: Option<BitSeq> = None;
    let mut last_err = None;
    for s in 0..k {
        if x.get(k - s) != Some(true) || x.suffix(s) != omega(s, r - 1) {
            continue;
        }
        let u = match undo_replacements(x.prefix(k - s - 1), s, r) {
            Ok(u) => u,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        if wi_encode(&u, fp)? != *x {
            last_err = Some(Error::data(format!(
                "malformed front-end word: parse with {s} replacements does not re-encode"
            )));
            continue;
        }
        if let Some(prev) = &found {
            if *prev != u {
                return Err(Error::invariant(format!(
                    "front-end word decodes to two messages for (k, r) = ({k}, {r})"
                )));
            }
        }
        found = Some(u);
    }
    found.ok_or_else(|| {
        last_err.unwrap_or_else(|| Error::data("malformed front-end word: no sentinel found"))
    })
}

/// NRZI precoding: `y_1 = x_1`, `y_i = y_(i-1) xor x_i`.
pub fn nrzi_encode(x: &BitSeq) -> BitSeq {
    x.iter()
        .scan(false, |level, bit| {
            *level ^= bit;
            Some(*level)
        })
        .collect()
}

/// Inverse of [`nrzi_encode`]: `x_1 = y_1`, `x_i = y_(i-1) xor y_i`.
pub fn nrzi_decode(y: &BitSeq) -> BitSeq {
    y.iter()
        .scan(false, |prev, bit| {
            let x = *prev ^ bit;
            *prev = bit;
            Some(x)
        })
        .collect()
}

/// Message of length `k - 1` to an r-RLL word of length `k`.
pub fn front_encode(u: &BitSeq, fp: &FrontParams) -> Result<BitSeq> {
    Ok(nrzi_encode(&wi_encode(u, fp)?))
}

pub fn front_decode(y: &BitSeq, fp: &FrontParams) -> Result<BitSeq> {
    if y.len() != fp.k {
        return Err(Error::data(format!(
            "RLL word length {} does not match k = {}",
            y.len(),
            fp.k
        )));
    }
    wi_decode(&nrzi_decode(y), fp)
}
