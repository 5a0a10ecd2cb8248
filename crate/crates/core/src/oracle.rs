//! Exhaustive and seeded-sampling verification of the code's guarantees.
//!
//! The deletion-ball check works directly on integer-packed words and a raw
//! weight slice; it shares nothing with the corrector in
//! [`crate::decoder`], so the two can cross-check each other.
//!
//! Reports print as
//!
//! ```text
//! CHECK <name> <key=value,...> PASS|FAIL [counterexample]
//! check=<name> <key=value ...> result=PASS|FAIL
//! ```

use std::collections::{HashMap, HashSet};
use std::fmt;

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::bitseq::BitSeq;
use crate::channel::{self, trial_seed};
use crate::decoder;
use crate::error::{Error, Result};
use crate::rll_front::{self, FrontParams};
use crate::sidc::{self, free_coefficient_range, CodeParams, CongruenceCode};

pub const ENUMERATION_GUARD: usize = 24;
pub const SIDC_GUARD: usize = 16;
pub const ENCODER_EXHAUSTIVE_GUARD: usize = 10;
pub const FRONT_GUARD: usize = 13;

/// Default trial count and seed for sampled encoder checks.
pub const DEFAULT_TRIALS: u64 = 100_000;
pub const DEFAULT_SEED: u64 = 0x5eed_0001;

fn guard(what: &'static str, value: usize, max: usize) -> Result<()> {
    if value > max {
        return Err(Error::Guard { what, value, max });
    }
    Ok(())
}

/// Word of length `n` whose first symbol is the most significant bit of
/// `v`, so increasing `v` walks `{0,1}^n` in lexicographic order.
fn lex_word(v: u64, n: usize) -> BitSeq {
    (0..n).map(|i| (v >> (n - 1 - i)) & 1 == 1).collect()
}

/// `S_(n,r)` in lexicographic order.
pub fn enumerate_rll(n: usize, r: usize) -> Result<Vec<BitSeq>> {
    guard("n", n, ENUMERATION_GUARD)?;
    Ok((0u64..1 << n)
        .map(|v| lex_word(v, n))
        .filter(|w| w.is_rll(r))
        .collect())
}

/// Every member of the code, lexicographic.
pub fn enumerate_codewords(code: &CongruenceCode) -> Result<Vec<BitSeq>> {
    let n = code.n();
    guard("n", n, ENUMERATION_GUARD)?;
    let mut out = Vec::new();
    for v in 0u64..1 << n {
        let w = lex_word(v, n);
        if code.is_codeword(&w)? {
            out.push(w);
        }
    }
    Ok(out)
}

/// Two codewords whose single-deletion balls meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallOverlap {
    pub first: BitSeq,
    pub second: BitSeq,
    pub common: BitSeq,
}

fn unpack(v: u32, len: usize) -> BitSeq {
    (0..len).map(|i| (v >> i) & 1 == 1).collect()
}

/// Checks that the single-deletion balls of all words `z` in `{0,1}^n`
/// with `sum weights[i] z_i = b (mod modulus)` are pairwise disjoint. `n`
/// is `weights.len()`. Returns the codeword count, or the first overlap.
pub fn deletion_balls_disjoint(
    weights: &[u64],
    modulus: u64,
    b: u64,
) -> Result<std::result::Result<usize, BallOverlap>> {
    let n = weights.len();
    guard("n", n, SIDC_GUARD)?;
    let mut owner: HashMap<u32, u32> = HashMap::new();
    let mut count = 0;
    for z in 0u32..1 << n {
        let w: u64 = (0..n).filter(|i| z >> i & 1 == 1).map(|i| weights[i]).sum();
        if w % modulus != b {
            continue;
        }
        count += 1;
        for i in 0..n {
            let low = z & ((1 << i) - 1);
            let high = (z >> (i + 1)) << i;
            let shorter = low | high;
            match owner.insert(shorter, z) {
                Some(prev) if prev != z => {
                    return Ok(Err(BallOverlap {
                        first: unpack(prev, n),
                        second: unpack(z, n),
                        common: unpack(shorter, n - 1),
                    }))
                }
                _ => {}
            }
        }
    }
    Ok(Ok(count))
}

/// Key/value parameters of a check, kept in insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Fields(Vec<(&'static str, String)>);

impl Fields {
    pub fn with(mut self, key: &'static str, value: impl ToString) -> Self {
        self.0.push((key, value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| v.as_str())
    }

    fn join(&self, sep: &str) -> String {
        self.0
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

/// Outcome of one verification check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: &'static str,
    pub params: Fields,
    pub passed: bool,
    pub counterexample: Option<String>,
    /// Measurements appended to the summary line.
    pub stats: Fields,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "CHECK {} {} {verdict}", self.name, self.params.join(","))?;
        if let Some(c) = &self.counterexample {
            write!(f, " {c}")?;
        }
        writeln!(f)?;
        write!(f, "check={} {}", self.name, self.params.join(" "))?;
        if !self.stats.0.is_empty() {
            write!(f, " {}", self.stats.join(" "))?;
        }
        write!(f, " result={verdict}")
    }
}

/// Single-insertion/deletion correctability of `C_b(n, r_hat, d)` by
/// pairwise deletion-ball disjointness.
pub fn check_sidc(n: usize, r_hat: usize, d: u64, b: u64) -> Result<CheckReport> {
    guard("n", n, SIDC_GUARD)?;
    let code = CongruenceCode::from_raw(n, r_hat, d, b)?;
    let coeffs = code.coefficients();
    let outcome = deletion_balls_disjoint(coeffs.weights(), coeffs.modulus(), b)?;
    let params = Fields::default()
        .with("n", n)
        .with("r_hat", r_hat)
        .with("d", d)
        .with("b", b);
    Ok(match outcome {
        Ok(count) => CheckReport {
            name: "sidc",
            params,
            passed: true,
            counterexample: None,
            stats: Fields::default().with("codewords", count),
        },
        Err(o) => CheckReport {
            name: "sidc",
            params,
            passed: false,
            counterexample: Some(format!("{} {} share {}", o.first, o.second, o.common)),
            stats: Fields::default(),
        },
    })
}

/// Counts from an encoder run-length sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncoderRllReport {
    pub k: usize,
    pub r: usize,
    pub d: u64,
    /// `None` for exhaustive runs; otherwise `(trials, seed)`.
    pub sampled: Option<(u64, u64)>,
    pub excluded: bool,
    pub encodes: u64,
    pub violations: u64,
    pub first_violation: Option<(BitSeq, u64, String)>,
}

impl EncoderRllReport {
    pub fn to_check(&self) -> CheckReport {
        let mut params = Fields::default()
            .with("k", self.k)
            .with("r", self.r)
            .with("d", self.d);
        params = match self.sampled {
            None => params.with("mode", "exhaustive"),
            Some((trials, seed)) => params
                .with("mode", "sampled")
                .with("trials", trials)
                .with("seed", seed),
        };
        let mut stats = Fields::default()
            .with("encodes", self.encodes)
            .with("violations", self.violations);
        if self.excluded {
            // The run-length argument does not cover this triple; the count is an
            // observation, not a verdict.
            stats = stats.with("note", "excluded-triple-not-guaranteed");
        }
        CheckReport {
            name: "encoder-rll",
            params,
            passed: self.excluded || self.violations == 0,
            counterexample: self.first_violation.as_ref().map(|(y, b, what)| {
                let tag = if self.excluded { "observed " } else { "" };
                format!("{tag}y={y} b={b} {what}")
            }),
            stats,
        }
    }
}

fn encoder_outcome(cp: &CodeParams, y: &BitSeq) -> Option<String> {
    match sidc::embed_encode(cp, y) {
        Ok(z) if !z.is_rll(cp.r()) => Some(format!("z={z} run={}", z.max_run_length())),
        Ok(z) if !cp.is_codeword(&z).unwrap_or(false) => Some(format!("z={z} not-a-codeword")),
        Ok(_) => None,
        Err(e) => Some(format!("error={}", e.to_string().replace(' ', "_"))),
    }
}

fn base_params(k: usize, r: usize, d: u64) -> Result<(CodeParams, bool)> {
    let excluded = (k, r, d) == (14, 4, 5);
    Ok((CodeParams::build(k, r, Some(d), None, excluded)?, excluded))
}

/// Runs the encoder on every `y` in `S_(k,r)` and every residue `b`.
pub fn check_encoder_rll_exhaustive(k: usize, r: usize, d: u64) -> Result<EncoderRllReport> {
    guard("k", k, ENCODER_EXHAUSTIVE_GUARD)?;
    let (cp, excluded) = base_params(k, r, d)?;
    let messages = enumerate_rll(k, r)?;
    let (mut encodes, mut violations) = (0, 0);
    let mut first_violation = None;
    for b in 0..cp.modulus() {
        let cp = cp.with_b(b)?;
        for y in &messages {
            encodes += 1;
            if let Some(what) = encoder_outcome(&cp, y) {
                violations += 1;
                first_violation.get_or_insert((y.clone(), b, what));
            }
        }
    }
    Ok(EncoderRllReport {
        k,
        r,
        d,
        sampled: None,
        excluded,
        encodes,
        violations,
        first_violation,
    })
}

/// Runs the encoder on `trials` uniformly random `(y, b)` pairs with `y`
/// drawn from `S_(k,r)` by rejection.
pub fn check_encoder_rll_sampled(
    k: usize,
    r: usize,
    d: u64,
    trials: u64,
    seed: u64,
) -> Result<EncoderRllReport> {
    let (cp, excluded) = base_params(k, r, d)?;
    let mut violations = 0;
    let mut first_violation = None;
    for index in 0..trials {
        let mut rng = SplitMix64::seed_from_u64(trial_seed(seed, index));
        let y = loop {
            let candidate = channel::random_bits(&mut rng, k);
            if candidate.is_rll(r) {
                break candidate;
            }
        };
        let b = ((u128::from(rng.next_u64()) * u128::from(cp.modulus())) >> 64) as u64;
        let cp = cp.with_b(b)?;
        if let Some(what) = encoder_outcome(&cp, &y) {
            violations += 1;
            first_violation.get_or_insert((y, b, what));
        }
    }
    Ok(EncoderRllReport {
        k,
        r,
        d,
        sampled: Some((trials, seed)),
        excluded,
        encodes: trials,
        violations,
        first_violation,
    })
}

/// Exhaustive for `k <= 10`, otherwise sampled with the default trial
/// count and seed. The excluded triple `(14, 4, 5)` is accepted and
/// reported as an observation.
pub fn check_encoder_rll(k: usize, r: usize, d: u64) -> Result<CheckReport> {
    let report = if k <= ENCODER_EXHAUSTIVE_GUARD {
        check_encoder_rll_exhaustive(k, r, d)?
    } else {
        check_encoder_rll_sampled(k, r, d, DEFAULT_TRIALS, DEFAULT_SEED)?
    };
    Ok(report.to_check())
}

/// Every message of length `k - 1` through the replacement encoder: output
/// length, zero-run constraint, round trip and distinctness.
pub fn check_front_roundtrip(k: usize, r: usize) -> Result<CheckReport> {
    let fp = FrontParams::new(k, r)?;
    guard("k", k, FRONT_GUARD)?;
    let mut seen = HashSet::new();
    let mut counterexample = None;
    for v in 0u64..1 << (k - 1) {
        let u = lex_word(v, k - 1);
        let problem = match rll_front::wi_encode(&u, &fp) {
            Err(e) => Some(format!("u={u} error={}", e.to_string().replace(' ', "_"))),
            Ok(x) if x.len() != k => Some(format!("u={u} x={x} wrong-length")),
            Ok(x) if !x.is_zero_constrained(r) => Some(format!("u={u} x={x} zero-run")),
            Ok(x) => match rll_front::wi_decode(&x, &fp) {
                Ok(back) if back == u => {
                    if seen.insert(x.clone()) {
                        None
                    } else {
                        Some(format!("u={u} x={x} duplicate-output"))
                    }
                }
                Ok(back) => Some(format!("u={u} x={x} decoded={back}")),
                Err(_) => Some(format!("u={u} x={x} decode-error")),
            },
        };
        if problem.is_some() {
            counterexample = problem;
            break;
        }
    }
    Ok(CheckReport {
        name: "front-roundtrip",
        params: Fields::default().with("k", k).with("r", r),
        passed: counterexample.is_none(),
        counterexample,
        stats: Fields::default().with("messages", seen.len()),
    })
}

/// Every encoder output for every message of length `k - 1`, under every
/// single deletion and insertion, must correct back to the codeword and
/// decode to the message.
pub fn check_decoder_totality(cp: &CodeParams) -> Result<CheckReport> {
    guard("k", cp.k(), FRONT_GUARD)?;
    let k = cp.k();
    let mut corruptions = 0u64;
    let mut counterexample = None;
    'outer: for v in 0u64..1 << (k - 1) {
        let u = lex_word(v, k - 1);
        let z = sidc::encode_message(cp, &u)?;
        let mut received = Vec::with_capacity(3 * z.len() + 3);
        received.push(z.clone());
        for pos in 1..=z.len() {
            let mut r = z.clone();
            r.remove(pos);
            received.push(r);
        }
        for pos in 1..=z.len() + 1 {
            for symbol in [false, true] {
                let mut r = z.clone();
                r.insert(pos, symbol);
                received.push(r);
            }
        }
        for r in received {
            corruptions += 1;
            let corrected = decoder::correct(cp, &r);
            let decoded = decoder::decode_message(cp, &r);
            if corrected.as_ref() != Ok(&z) || decoded.as_ref() != Ok(&u) {
                let why = match corrected {
                    Err(e) => e.to_string().replace(' ', "_"),
                    Ok(_) => "wrong-output".into(),
                };
                counterexample = Some(format!("u={u} z={z} received={r} {why}"));
                break 'outer;
            }
        }
    }
    Ok(CheckReport {
        name: "decoder-totality",
        params: Fields::default()
            .with("k", k)
            .with("r", cp.r())
            .with("d", cp.d())
            .with("b", cp.b()),
        passed: counterexample.is_none(),
        counterexample,
        stats: Fields::default().with("received_words", corruptions),
    })
}

/// The forbidden-parity collision sweep as a check: passes when every
/// collision is at the excluded parameters.
pub fn check_gap_condition(r_hat: usize) -> Result<CheckReport> {
    let report = crate::analysis::gap_condition_check(r_hat)?;
    let unexpected = report.unexpected_collisions();
    let fmt_interval = |i: crate::analysis::Interval| format!("[{},{}]", i.lo, i.hi);
    let collisions = if report.collisions.is_empty() {
        "none".to_string()
    } else {
        report
            .collisions
            .iter()
            .map(|c| format!("k{}:d{}:A{}", c.k, c.d, c.a))
            .collect::<Vec<_>>()
            .join(";")
    };
    let mut stats = Fields::default()
        .with("C1", fmt_interval(report.c1))
        .with("C2", fmt_interval(report.c2))
        .with("C3", fmt_interval(report.c3))
        .with("D", fmt_interval(report.d_range))
        .with("chain", report.chain_holds())
        .with("boundary_touch", report.boundary_touches())
        .with("disjoint", report.disjoint)
        .with("collisions", collisions);
    if !report.disjoint && unexpected.is_empty() {
        stats = stats.with("note", "collides-only-at-excluded-triple");
    }
    Ok(CheckReport {
        name: "gap-condition",
        params: Fields::default().with("r_hat", r_hat),
        passed: unexpected.is_empty() && report.chain_holds(),
        counterexample: unexpected
            .first()
            .map(|c| format!("k={} d={} A={}", c.k, c.d, c.a)),
        stats,
    })
}

/// `|C_b(n, r_hat, d)|` by enumeration, as a report.
pub fn check_codeword_count(n: usize, r_hat: usize, d: u64, b: u64) -> Result<CheckReport> {
    let code = CongruenceCode::from_raw(n, r_hat, d, b)?;
    let count = enumerate_codewords(&code)?.len();
    Ok(CheckReport {
        name: "codewords",
        params: Fields::default()
            .with("n", n)
            .with("r_hat", r_hat)
            .with("d", d)
            .with("b", b),
        passed: true,
        counterexample: None,
        stats: Fields::default().with("count", count),
    })
}

/// All valid free coefficients for `r_hat`.
pub fn valid_free_coefficients(r_hat: usize) -> impl Iterator<Item = u64> {
    let (lo, hi) = free_coefficient_range(r_hat);
    lo..=hi
}
