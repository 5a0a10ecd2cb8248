//! Single insertion/deletion correction by candidate search.
//!
//! Every word within one edit of the received word is scored against the
//! congruence in O(1) using prefix sums, so a full search costs O(n). The
//! strictly increasing coefficients guarantee at most one surviving
//! codeword; seeing two is reported as an invariant violation.

use crate::bitseq::BitSeq;
use crate::error::{Error, Result};
use crate::rll_front;
use crate::sidc::{CodeParams, CongruenceCode};

fn weights_of(code: &CongruenceCode) -> &[u64] {
    code.coefficients().as_slice()
}

/// Codewords obtained by inserting one symbol into `received` (length n-1).
fn reinsertions(code: &CongruenceCode, received: &BitSeq) -> Vec<BitSeq> {
    let a = weights_of(code);
    let modulus = code.modulus();
    let bits: Vec<bool> = received.iter().collect();
    let len = bits.len();

    // below[i]: weight of received[..i] at original indices.
    // above[i]: weight of received[i..] shifted up by one index.
    let mut below = vec![0u64; len + 1];
    for i in 0..len {
        below[i + 1] = below[i] + if bits[i] { a[i] } else { 0 };
    }
    let mut above = vec![0u64; len + 1];
    for i in (0..len).rev() {
        above[i] = above[i + 1] + if bits[i] { a[i + 1] } else { 0 };
    }

    let mut out = Vec::new();
    for i in 0..=len {
        for symbol in [false, true] {
            let w = below[i] + above[i] + if symbol { a[i] } else { 0 };
            if w % modulus == code.b() {
                let mut z = received.clone();
                z.insert(i + 1, symbol);
                out.push(z);
            }
        }
    }
    out
}

/// Codewords obtained by deleting one symbol from `received` (length n+1).
fn deletions(code: &CongruenceCode, received: &BitSeq) -> Vec<BitSeq> {
    let a = weights_of(code);
    let modulus = code.modulus();
    let bits: Vec<bool> = received.iter().collect();
    let len = bits.len();

    let mut below = vec![0u64; len + 1];
    for i in 0..len {
        below[i + 1] = below[i] + if bits[i] && i < len - 1 { a[i] } else { 0 };
    }
    // above[i]: weight of received[i..] shifted down by one index.
    let mut above = vec![0u64; len + 1];
    for i in (1..len).rev() {
        above[i] = above[i + 1] + if bits[i] { a[i - 1] } else { 0 };
    }

    let mut out = Vec::new();
    for i in 0..len {
        let w = below[i] + above[i + 1];
        if w % modulus == code.b() {
            let mut z = received.clone();
            z.remove(i + 1);
            out.push(z);
        }
    }
    out
}

/// Recovers the codeword of `code` from a word that suffered at most one
/// insertion or deletion. Works for any coefficient system, including
/// lengths below the encoder's minimum.
pub fn correct_in(code: &CongruenceCode, received: &BitSeq) -> Result<BitSeq> {
    let n = code.n();
    let candidates = match received.len() {
        len if len == n => {
            return if code.is_codeword(received)? {
                Ok(received.clone())
            } else {
                Err(Error::Uncorrectable)
            };
        }
        len if len + 1 == n => reinsertions(code, received),
        len if len == n + 1 => deletions(code, received),
        len => {
            return Err(Error::data(format!(
                "received length {len} is not within one of n = {n}"
            )))
        }
    };

    let mut iter = candidates.into_iter();
    let first = iter.next().ok_or(Error::Uncorrectable)?;
    if let Some(other) = iter.find(|c| *c != first) {
        return Err(Error::invariant(format!(
            "received word {received} is within one edit of two codewords {first} and {other}"
        )));
    }
    Ok(first)
}

pub fn correct(cp: &CodeParams, received: &BitSeq) -> Result<BitSeq> {
    correct_in(cp.code(), received)
}

/// Corrects, strips the parity part and inverts the front-end.
pub fn decode_message(cp: &CodeParams, received: &BitSeq) -> Result<BitSeq> {
    let y = strip_parity(cp, &correct(cp, received)?);
    rll_front::front_decode(&y, cp.front())
}

/// Message part `z[m+1, n]` of a codeword.
pub fn strip_parity(cp: &CodeParams, z: &BitSeq) -> BitSeq {
    z.subseq(cp.m() + 1, cp.n())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sidc::encode_message;

    fn bs(s: &str) -> BitSeq {
        s.parse().unwrap()
    }

    fn reference_params() -> CodeParams {
        CodeParams::derive(14, 4, Some(6), Some(31)).unwrap()
    }

    /// Reference: filter every one-edit neighbour by direct weight evaluation.
    fn brute_force(code: &CongruenceCode, received: &BitSeq) -> Vec<BitSeq> {
        let mut out = Vec::new();
        if received.len() + 1 == code.n() {
            for pos in 1..=received.len() + 1 {
                for symbol in [false, true] {
                    let mut z = received.clone();
                    z.insert(pos, symbol);
                    if code.is_codeword(&z).unwrap() {
                        out.push(z);
                    }
                }
            }
        } else {
            for pos in 1..=received.len() {
                let mut z = received.clone();
                z.remove(pos);
                if code.is_codeword(&z).unwrap() {
                    out.push(z);
                }
            }
        }
        out
    }

    #[test]
    fn example_deletion_and_insertion() {
        let cp = reference_params();
        let z = bs("001111010100001000010");
        let mut deleted = z.clone();
        deleted.remove(5);
        assert_eq!(deleted, bs("00111010100001000010"));
        assert_eq!(correct(&cp, &deleted).unwrap(), z);

        let mut inserted = z.clone();
        inserted.insert(1, false);
        assert_eq!(correct(&cp, &inserted).unwrap(), z);

        assert_eq!(correct(&cp, &z).unwrap(), z);
    }

    #[test]
    fn prefix_sums_match_brute_force() {
        let cp = reference_params();
        let z = bs("001111010100001000010");
        for pos in 1..=z.len() {
            let mut r = z.clone();
            r.remove(pos);
            assert_eq!(reinsertions(cp.code(), &r), brute_force(cp.code(), &r));
        }
        for pos in 1..=z.len() + 1 {
            for symbol in [false, true] {
                let mut r = z.clone();
                r.insert(pos, symbol);
                assert_eq!(deletions(cp.code(), &r), brute_force(cp.code(), &r));
            }
        }
    }

    #[test]
    fn error_paths() {
        let cp = reference_params();
        assert!(matches!(
            correct(&cp, &BitSeq::zeros(19)),
            Err(Error::Data(_))
        ));
        assert!(matches!(
            correct(&cp, &BitSeq::zeros(23)),
            Err(Error::Data(_))
        ));
        let mut z = bs("001111010100001000010");
        z.remove(1);
        z.insert(1, true);
        assert_eq!(correct(&cp, &z), Err(Error::Uncorrectable));
    }

    #[test]
    fn message_recovery() {
        let cp = CodeParams::derive(14, 4, None, Some(9)).unwrap();
        let u = bs("0000011000101");
        let z = encode_message(&cp, &u).unwrap();
        assert_eq!(decode_message(&cp, &z).unwrap(), u);
        for pos in 1..=z.len() {
            let mut r = z.clone();
            r.remove(pos);
            assert_eq!(decode_message(&cp, &r).unwrap(), u);
        }
        assert!(decode_message(&cp, &BitSeq::zeros(cp.n() - 2)).is_err());
    }

    #[test]
    fn deterministic() {
        let cp = reference_params();
        let r = bs("00111010100001000010");
        assert_eq!(correct(&cp, &r), correct(&cp, &r));
    }
}
