//! End-to-end properties across modules.

use proptest::prelude::*;
use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use rllsidc::channel::{apply_event, random_event};
use rllsidc::rll_front::{front_decode, front_encode, wi_decode, wi_encode};
use rllsidc::{decode_message, decoder, encode_message, BitSeq, CodeParams, FrontParams};

/// Message with zero density `zeros / 8`, so long zero runs (and hence
/// many replacements) are common.
fn biased_message(rng: &mut SplitMix64, len: usize, zeros: u64) -> BitSeq {
    (0..len).map(|_| rng.next_u64() % 8 >= zeros).collect()
}

fn front_round_trips(k: usize, r: usize, samples: u64, seed: u64) {
    let fp = FrontParams::new(k, r).unwrap();
    let mut rng = SplitMix64::seed_from_u64(seed);
    for i in 0..samples {
        let mut u = biased_message(&mut rng, k - 1, 4 + i % 5);
        if i % 2 == 0 {
            // Put the last forbidden word as far right as the length allows,
            // where the largest pointer values are produced.
            let p = k - 1 - r;
            for j in p..p + r {
                u.remove(j);
                u.insert(j, false);
            }
            u.remove(k - 1);
            u.insert(k - 1, true);
        }
        let x = wi_encode(&u, &fp).unwrap();
        assert_eq!(x.len(), k);
        assert!(x.is_zero_constrained(r), "{u} -> {x}");
        assert_eq!(wi_decode(&x, &fp).unwrap(), u, "x={x}");
    }
}

// Lengths just below the cap, beyond exhaustive reach.
#[test]
fn front_end_longest_lengths_sampled() {
    for (r, k) in [(5, 29), (5, 30), (6, 62), (6, 63)] {
        front_round_trips(k, r, 100_000, k as u64);
    }
}

#[test]
#[ignore = "long-running; several minutes with optimizations"]
fn front_end_longest_lengths_heavy() {
    for (r, k) in [(5, 30), (6, 63), (7, 128)] {
        front_round_trips(k, r, 5_000_000, 1000 + k as u64);
    }
}

#[test]
fn all_zero_and_all_one_messages() {
    for k in [7, 14, 30, 62, 200] {
        let r_hat = (k + 2usize).next_power_of_two().trailing_zeros() as usize;
        let cp = CodeParams::derive(k, r_hat, None, None).unwrap();
        for u in [BitSeq::zeros(k - 1), BitSeq::ones(k - 1)] {
            let z = encode_message(&cp, &u).unwrap();
            assert!(z.is_rll(cp.r()));
            assert_eq!(decode_message(&cp, &z).unwrap(), u);
        }
    }
}

fn params() -> impl Strategy<Value = (CodeParams, u64)> {
    (7usize..=120, 0usize..=2, any::<u64>()).prop_filter_map("valid", |(k, extra, seed)| {
        let r_hat = (k + 2).next_power_of_two().trailing_zeros() as usize;
        let r = r_hat + extra;
        let base = CodeParams::derive(k, r, None, None).ok()?;
        let b = seed % base.modulus();
        Some((base.with_b(b).ok()?, seed))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn any_single_edit_is_recovered((cp, seed) in params()) {
        let mut rng = SplitMix64::seed_from_u64(seed);
        let u: BitSeq = (0..cp.k() - 1).map(|_| rng.next_u64() & 1 == 1).collect();
        let z = encode_message(&cp, &u).unwrap();
        prop_assert_eq!(z.len(), cp.n());
        prop_assert!(z.is_rll(cp.r()));
        prop_assert!(cp.is_codeword(&z).unwrap());
        prop_assert_eq!(decoder::strip_parity(&cp, &z), front_encode(&u, cp.front()).unwrap());

        let received = apply_event(&z, &random_event(z.len(), rng.next_u64())).unwrap();
        prop_assert_eq!(decoder::correct(&cp, &received).unwrap(), z);
        prop_assert_eq!(decode_message(&cp, &received).unwrap(), u);
    }

    #[test]
    fn front_end_inverts(k in 2usize..=60, extra in 0usize..=2, seed: u64) {
        let r = (usize::BITS - (k + 5).leading_zeros()) as usize + extra;
        let fp = FrontParams::new(k, r).unwrap();
        let mut rng = SplitMix64::seed_from_u64(seed);
        let u = biased_message(&mut rng, k - 1, 5);
        let y = front_encode(&u, &fp).unwrap();
        prop_assert!(y.is_rll(r));
        prop_assert_eq!(front_decode(&y, &fp).unwrap(), u);
    }
}
