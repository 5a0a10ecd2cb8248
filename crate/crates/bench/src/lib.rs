//! Deterministic inputs shared by the codec benchmarks.

use rllsidc::channel::trial_seed;
use rllsidc::{encode_message, BitSeq, CodeParams};

/// `count` messages of length `k - 1`, bits drawn from the SplitMix64
/// stream behind `trial_seed`.
pub fn messages(k: usize, count: usize, seed: u64) -> Vec<BitSeq> {
    (0..count as u64)
        .map(|i| {
            (0..k - 1)
                .map(|j| {
                    let word = trial_seed(seed ^ i, (j / 64) as u64);
                    (word >> (j % 64)) & 1 == 1
                })
                .collect()
        })
        .collect()
}

/// Codewords for [`messages`] together with each one shortened by deleting
/// its middle symbol.
pub fn damaged_codewords(cp: &CodeParams, count: usize, seed: u64) -> Vec<(BitSeq, BitSeq)> {
    messages(cp.k(), count, seed)
        .into_iter()
        .map(|u| {
            let z = encode_message(cp, &u).expect("valid message");
            let mut received = z.clone();
            received.remove(z.len() / 2 + 1);
            (z, received)
        })
        .collect()
}
