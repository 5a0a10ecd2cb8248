//! Seeded single insertion/deletion channel and end-to-end campaigns.
//!
//! All randomness comes from SplitMix64. A trial's seed is the `(i+1)`-th
//! output of SplitMix64 started at the campaign's base seed, so any trial can
//! be regenerated on its own.

use std::fmt;
use std::str::FromStr;

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use sha2::{Digest, Sha256};

use crate::bitseq::BitSeq;
use crate::decoder;
use crate::error::{Error, Result};
use crate::sidc::{self, CodeParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    Insertion,
    Deletion,
}

/// One channel edit. Positions are 1-based; an insertion at `position`
/// places the new symbol before the symbol currently there, so
/// `position = len + 1` appends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelEvent {
    Insertion { position: usize, symbol: bool },
    Deletion { position: usize },
}

impl ChannelEvent {
    pub fn kind(&self) -> EventKind {
        match self {
            ChannelEvent::Insertion { .. } => EventKind::Insertion,
            ChannelEvent::Deletion { .. } => EventKind::Deletion,
        }
    }

    pub fn position(&self) -> usize {
        match *self {
            ChannelEvent::Insertion { position, .. } | ChannelEvent::Deletion { position } => {
                position
            }
        }
    }
}

/// Applies one event, returning a sequence one symbol longer or shorter.
pub fn apply_event(s: &BitSeq, e: &ChannelEvent) -> Result<BitSeq> {
    let mut out = s.clone();
    match *e {
        ChannelEvent::Insertion { position, symbol } => {
            if position == 0 || position > s.len() + 1 {
                return Err(Error::range(format!(
                    "insertion position {position} outside [1, {}]",
                    s.len() + 1
                )));
            }
            out.insert(position, symbol);
        }
        ChannelEvent::Deletion { position } => {
            if position == 0 || position > s.len() {
                return Err(Error::range(format!(
                    "deletion position {position} outside [1, {}]",
                    s.len()
                )));
            }
            out.remove(position);
        }
    }
    Ok(out)
}

/// Uniform draw from `[0, bound)` by 128-bit multiply-shift.
fn below(rng: &mut SplitMix64, bound: usize) -> usize {
    ((u128::from(rng.next_u64()) * bound as u128) >> 64) as usize
}

fn draw(rng: &mut SplitMix64, kind: Option<EventKind>, len: usize) -> ChannelEvent {
    // Always three draws (kind, position, symbol) so the stream layout does
    // not depend on the outcome.
    let coin = rng.next_u64() >> 63 == 1;
    let kind = kind.unwrap_or(if coin {
        EventKind::Insertion
    } else {
        EventKind::Deletion
    });
    let position = match kind {
        EventKind::Insertion => below(rng, len + 1) + 1,
        EventKind::Deletion => below(rng, len) + 1,
    };
    let symbol = rng.next_u64() >> 63 == 1;
    match kind {
        EventKind::Insertion => ChannelEvent::Insertion { position, symbol },
        EventKind::Deletion => ChannelEvent::Deletion { position },
    }
}

/// Uniformly random event for a word of length `len`, determined by `seed`.
pub fn random_event(len: usize, seed: u64) -> ChannelEvent {
    assert!(len >= 1, "channel input must be nonempty");
    draw(&mut SplitMix64::seed_from_u64(seed), None, len)
}

/// Like [`random_event`] with the kind fixed.
pub fn random_event_of(kind: EventKind, len: usize, seed: u64) -> ChannelEvent {
    assert!(len >= 1, "channel input must be nonempty");
    draw(&mut SplitMix64::seed_from_u64(seed), Some(kind), len)
}

/// Seed of trial `index` in a campaign started from `base`.
pub fn trial_seed(base: u64, index: u64) -> u64 {
    const GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;
    SplitMix64::seed_from_u64(base.wrapping_add(index.wrapping_mul(GAMMA))).next_u64()
}

pub(crate) fn random_bits(rng: &mut SplitMix64, len: usize) -> BitSeq {
    let mut out = BitSeq::with_capacity(len);
    while out.len() < len {
        let word = rng.next_u64();
        for i in 0..64.min(len - out.len()) {
            out.push((word >> i) & 1 == 1);
        }
    }
    out
}

impl fmt::Display for ChannelEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ChannelEvent::Insertion { position, symbol } => {
                write!(f, "insertion {position} {}", u8::from(symbol))
            }
            ChannelEvent::Deletion { position } => write!(f, "deletion {position} -"),
        }
    }
}

impl FromStr for ChannelEvent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fields: Vec<&str> = s.split_whitespace().collect();
        let bad = || Error::data(format!("malformed event line {s:?}"));
        let [kind, position, symbol] = fields[..] else {
            return Err(bad());
        };
        let position: usize = position.parse().map_err(|_| bad())?;
        match (kind, symbol) {
            ("deletion", "-") => Ok(ChannelEvent::Deletion { position }),
            ("insertion", "0") => Ok(ChannelEvent::Insertion {
                position,
                symbol: false,
            }),
            ("insertion", "1") => Ok(ChannelEvent::Insertion {
                position,
                symbol: true,
            }),
            _ => Err(bad()),
        }
    }
}

/// Outcome of an encode / corrupt / decode campaign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignReport {
    pub k: usize,
    pub r: usize,
    pub d: u64,
    pub b: u64,
    pub base_seed: u64,
    pub trials: u64,
    pub insertions: u64,
    pub deletions: u64,
    pub failures: u64,
    pub first_failure: Option<(u64, ChannelEvent)>,
    /// SHA-256 over the per-trial log `index message event`.
    pub digest: String,
}

/// Runs `trials` independent trials: draw a message, encode, apply one
/// random event, decode, compare.
pub fn run_campaign(cp: &CodeParams, base_seed: u64, trials: u64) -> Result<CampaignReport> {
    let mut hasher = Sha256::new();
    let (mut insertions, mut deletions, mut failures) = (0, 0, 0);
    let mut first_failure = None;

    for index in 0..trials {
        let mut rng = SplitMix64::seed_from_u64(trial_seed(base_seed, index));
        let u = random_bits(&mut rng, cp.k() - 1);
        let event = random_event(cp.n(), rng.next_u64());
        match event.kind() {
            EventKind::Insertion => insertions += 1,
            EventKind::Deletion => deletions += 1,
        }
        hasher.update(format!("{index} {u} {event}\n"));

        let z = sidc::encode_message(cp, &u)?;
        let received = apply_event(&z, &event)?;
        let ok = matches!(decoder::decode_message(cp, &received), Ok(ref v) if *v == u);
        if !ok {
            failures += 1;
            first_failure.get_or_insert((index, event));
        }
    }

    let digest = hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    Ok(CampaignReport {
        k: cp.k(),
        r: cp.r(),
        d: cp.d(),
        b: cp.b(),
        base_seed,
        trials,
        insertions,
        deletions,
        failures,
        first_failure,
        digest,
    })
}

impl fmt::Display for CampaignReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "campaign k={} r={} d={} b={} seed={} trials={} insertions={} deletions={} failures={}",
            self.k,
            self.r,
            self.d,
            self.b,
            self.base_seed,
            self.trials,
            self.insertions,
            self.deletions,
            self.failures
        )?;
        if let Some((index, event)) = self.first_failure {
            write!(
                f,
                " first_failure={index}:{}",
                event.to_string().replace(' ', ":")
            )?;
        }
        write!(f, " digest={}", self.digest)
    }
}
