//! Length bounds, redundancy against the optimal-code lower bound, and the
//! forbidden-parity collision sweep behind the encoder's run-length guarantee.

use std::fmt::Write as _;

use crate::bitseq::BitSeq;
use crate::error::{Error, Result};
use crate::sidc::{coefficient_value, free_coefficient_range};

/// Longest front-end output length for which the replacement encoder is
/// injective: `2^r + r - 5` for `r <= 4`, `2^r + r - 7` beyond. Saturating.
///
/// For `r >= 5` and the two lengths above this, a single replacement whose
/// pointer is `2^r - 4` or `2^r - 3` leaves a tail that also reads as the
/// replacement-count suffix of `r + 2` or `r + 1` replacements, and such
/// pairs of messages do occur (e.g. `r = 5`, `k = 31`).
pub fn front_length_bound(r: usize) -> usize {
    if r >= usize::BITS as usize - 1 {
        return usize::MAX;
    }
    let slack = if r <= 4 { 5 } else { 7 };
    ((1usize << r) + r).saturating_sub(slack)
}

fn check_bound_arg(r: usize) -> Result<()> {
    if !(3..=62).contains(&r) {
        return Err(Error::range(format!(
            "run-length limit r={r} outside [3, 62]"
        )));
    }
    Ok(())
}

/// Longest message length of the baseline direct RLL encoder: `2^(r-3) + 1`.
pub fn g_bound(r: usize) -> Result<u64> {
    check_bound_arg(r)?;
    Ok((1u64 << (r - 3)) + 1)
}

/// Nominal longest word of the replacement + NRZI front-end: `2^r + r - 5`.
/// The encoder is only injective up to [`front_length_bound`], which is two
/// less for `r >= 5`.
pub fn h_bound(r: usize) -> Result<u64> {
    check_bound_arg(r)?;
    Ok((1u64 << r) + r as u64 - 5)
}

/// Lower bound on the redundancy of an optimal RLL-SIDC code of length `n`:
/// `n - log2(2^n - 2) + log2(n - 1)`, evaluated as
/// `-log2(1 - 2^(1-n)) + log2(n - 1)`.
pub fn phi(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::range(format!("phi needs n >= 2, got {n}")));
    }
    let tail = -(-(2f64.powi(1 - n.min(2000) as i32))).ln_1p() / std::f64::consts::LN_2;
    Ok(tail + ((n - 1) as f64).log2())
}

/// Numerator of `phi'(n)`: `2^n - 2 - 2 (n - 1) ln 2`.
pub fn psi(n: u64) -> f64 {
    2f64.powf(n as f64) - 2.0 - 2.0 * (n as f64 - 1.0) * std::f64::consts::LN_2
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisRow {
    pub n: u64,
    pub r_hat: usize,
    pub redundancy: u64,
    pub phi: f64,
    pub gap: f64,
}

/// Smallest `r_hat >= 4` with `n <= 2^r_hat + r_hat + 1`.
pub fn shape_for_length(n: u64) -> usize {
    (4..)
        .find(|&r_hat: &usize| n <= (1u64 << r_hat) + r_hat as u64 + 1)
        .expect("n fits in u64")
}

/// Redundancy `r_hat + 4` of the length-`n` code and its gap to `phi(n)`.
pub fn redundancy_row(n: u64) -> Result<AnalysisRow> {
    if n < 14 {
        return Err(Error::range(format!(
            "code length n={n} is below the smallest supported length 14"
        )));
    }
    let r_hat = shape_for_length(n);
    let redundancy = r_hat as u64 + 4;
    let phi = phi(n)?;
    Ok(AnalysisRow {
        n,
        r_hat,
        redundancy,
        phi,
        gap: redundancy as f64 - phi,
    })
}

/// CSV with header `n,r_hat,redundancy,phi,gap`.
pub fn emit_csv(rows: &[AnalysisRow]) -> String {
    let mut out = String::from("n,r_hat,redundancy,phi,gap\n");
    for row in rows {
        writeln!(
            out,
            "{},{},{},{:.6},{:.6}",
            row.n, row.r_hat, row.redundancy, row.phi, row.gap
        )
        .expect("writing to a String");
    }
    out
}

fn check_parity_len(r_hat: usize, p: &BitSeq) -> Result<()> {
    if p.len() != r_hat + 3 {
        return Err(Error::data(format!(
            "parity word length {} does not match r_hat + 3 = {}",
            p.len(),
            r_hat + 3
        )));
    }
    Ok(())
}

/// Weight of a parity word excluding the toggle (index `r_hat`) and the
/// separator (index `m`).
pub fn rho(r_hat: usize, d: u64, p: &BitSeq) -> Result<i64> {
    check_parity_len(r_hat, p)?;
    let m = r_hat + 3;
    Ok((1..m)
        .filter(|&i| i != r_hat && p.get(i) == Some(true))
        .map(|i| coefficient_value(r_hat, d, i) as i64)
        .sum())
}

/// Every parity word of length `r_hat + 3` ending in `last` that has a run
/// longer than `r_hat`, in lexicographic order.
pub fn forbidden_parities(r_hat: usize, last: bool) -> Vec<BitSeq> {
    let m = r_hat + 3;
    (0u64..1 << m)
        .map(|v| {
            (0..m)
                .map(|i| (v >> (m - 1 - i)) & 1 == 1)
                .collect::<BitSeq>()
        })
        .filter(|p| p.last() == Some(last) && p.max_run_length() > r_hat)
        .collect()
}

/// Closed integer interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub fn new(lo: i64, hi: i64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }

    fn hull(self, other: Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }
}

/// Parameters at which a zero-forbidden first-pass parity and a
/// one-forbidden fallback parity can both satisfy the congruence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Collision {
    pub k: usize,
    pub d: u64,
    pub a: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub r_hat: usize,
    pub c1: Interval,
    pub c2: Interval,
    pub c3: Interval,
    /// Range of the modulus `2^r_hat + k + 2` over all `k` for this `r_hat`.
    pub d_range: Interval,
    pub disjoint: bool,
    /// Deduplicated, sorted.
    pub collisions: Vec<Collision>,
}

impl GapReport {
    /// `0 < C1 < C2 < D <= C3 < 2D` endpoint-wise, with the `D`/`C3`
    /// boundary allowed to touch.
    pub fn chain_holds(&self) -> bool {
        let (c1, c2, c3, d) = (self.c1, self.c2, self.c3, self.d_range);
        0 < c1.lo
            && c1.lo <= c1.hi
            && c1.hi < c2.lo
            && c2.lo <= c2.hi
            && c2.hi < d.lo
            && d.lo <= d.hi
            && d.hi <= c3.lo
            && c3.lo <= c3.hi
            && c3.hi < 2 * d.lo
    }

    /// Whether the largest modulus equals the smallest value of `C3`.
    pub fn boundary_touches(&self) -> bool {
        self.d_range.hi == self.c3.lo
    }

    /// Collisions at parameters other than the excluded `(14, 4, 5)`.
    pub fn unexpected_collisions(&self) -> Vec<Collision> {
        self.collisions
            .iter()
            .filter(|c| !(self.r_hat == 4 && c.k == 14 && c.d == 5))
            .copied()
            .collect()
    }
}

/// Sweeps every `k` and `d` for `r_hat`, pairing each zero-forbidden
/// parity (toggle 0) with each one-forbidden parity (toggle 1) of the same
/// separator symbol, and records where `A = rho(p1) + d - rho(p0)` is a
/// multiple of the modulus. Also reports the `C1`, `C2`, `C3` and `D`
/// intervals of the run-length argument, computed as unions over `d`.
pub fn gap_condition_check(r_hat: usize) -> Result<GapReport> {
    if !(4..=12).contains(&r_hat) {
        return Err(Error::range(format!("r_hat={r_hat} outside [4, 12]")));
    }
    let p = |e: usize| 1i64 << e;
    let (d_lo, d_hi) = free_coefficient_range(r_hat);
    let k_lo = (1usize << (r_hat - 1)) - 1;
    let k_hi = (1usize << r_hat) - 2;

    // rho differences per separator symbol; independent of d.
    let mut diffs: Vec<i64> = Vec::new();
    for last in [false, true] {
        let words = forbidden_parities(r_hat, last);
        let (ones, zeros): (Vec<&BitSeq>, Vec<&BitSeq>) =
            words.iter().partition(|w| w.get(r_hat) == Some(true));
        for p0 in &zeros {
            for p1 in &ones {
                diffs.push(rho(r_hat, 0, p1)? - rho(r_hat, 0, p0)?);
            }
        }
    }

    let mut collisions = Vec::new();
    for k in k_lo..=k_hi {
        let modulus = p(r_hat) + k as i64 + 2;
        for d in d_lo..=d_hi {
            for &diff in &diffs {
                let a = diff + d as i64;
                if a.rem_euclid(modulus) == 0 {
                    collisions.push(Collision { k, d, a });
                }
            }
        }
    }
    collisions.sort();
    collisions.dedup();

    let b_sets = |d: i64| {
        [
            Interval::new(d - 1, d - 1),
            Interval::new(d + p(r_hat) - 4, d + p(r_hat) - 1),
            Interval::new(d + p(r_hat + 1) - 5, d + p(r_hat + 1) - 1),
        ]
    };
    let mut unions = b_sets(d_lo as i64);
    for d in d_lo..=d_hi {
        for (u, b) in unions.iter_mut().zip(b_sets(d as i64)) {
            *u = u.hull(b);
        }
    }
    let [c1, c2, c3] = unions;

    Ok(GapReport {
        r_hat,
        c1,
        c2,
        c3,
        d_range: Interval::new(p(r_hat) + k_lo as i64 + 2, p(r_hat) + k_hi as i64 + 2),
        disjoint: collisions.is_empty(),
        collisions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitSeq {
        s.parse().unwrap()
    }

    #[test]
    fn bounds() {
        assert_eq!(g_bound(4).unwrap(), 3);
        assert_eq!(h_bound(4).unwrap(), 15);
        for r in 3..=20 {
            let diff = h_bound(r).unwrap() as i64 - g_bound(r).unwrap() as i64;
            assert_eq!(diff, 7 * (1i64 << (r - 3)) + r as i64 - 6);
            assert!(diff > 0);
        }
        assert!(matches!(g_bound(2), Err(Error::Range(_))));
        assert!(h_bound(2).is_err());
        assert_eq!(front_length_bound(4), 15);
        assert_eq!(front_length_bound(2), 1);
        assert_eq!(front_length_bound(5), 30);
        assert_eq!(front_length_bound(6), 63);
        assert_eq!(front_length_bound(70), usize::MAX);
    }

    #[test]
    fn phi_values() {
        assert!((phi(2).unwrap() - 1.0).abs() < 1e-12);
        assert!((phi(14).unwrap() - 3.7006).abs() < 5e-4);
        // direct evaluation where 2^n is still exact
        for n in 2..50u64 {
            let direct = n as f64 - ((2f64.powi(n as i32)) - 2.0).log2() + ((n - 1) as f64).log2();
            assert!((phi(n).unwrap() - direct).abs() < 1e-9, "n={n}");
        }
        assert!(phi(1).is_err());
        assert!(phi(100_000).unwrap().is_finite());
    }

    #[test]
    fn redundancy_rows() {
        let row = redundancy_row(14).unwrap();
        assert_eq!((row.r_hat, row.redundancy), (4, 8));
        assert!((row.gap - 4.299).abs() < 1e-3);
        assert_eq!(redundancy_row(21).unwrap().r_hat, 4);
        assert_eq!(redundancy_row(22).unwrap().r_hat, 5);
        assert!(redundancy_row(13).is_err());
    }

    #[test]
    fn csv() {
        assert_eq!(emit_csv(&[]), "n,r_hat,redundancy,phi,gap\n");
        let csv = emit_csv(&[redundancy_row(14).unwrap()]);
        assert_eq!(
            csv,
            "n,r_hat,redundancy,phi,gap\n14,4,8,3.700616,4.299384\n"
        );
        let rows: Vec<_> = (14..40).map(|n| redundancy_row(n).unwrap()).collect();
        assert_eq!(emit_csv(&rows).lines().count(), rows.len() + 1);
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(4, 6, &BitSeq::zeros(7)).unwrap(), 0);
        assert_eq!(rho(4, 6, &bs("1000000")).unwrap(), 1);
        assert_eq!(rho(4, 6, &bs("1111110")).unwrap(), 31);
        assert_eq!(rho(5, 9, &bs("11111110")).unwrap(), 63);
        assert!(matches!(rho(4, 6, &BitSeq::zeros(6)), Err(Error::Data(_))));
    }

    #[test]
    fn forbidden_words_for_r_hat_4() {
        let mut got = forbidden_parities(4, false);
        got.sort();
        let mut want: Vec<BitSeq> = [
            "0000000", "1000000", "0100000", "1100000", "0000010", "1111110", "0111110", "1111100",
        ]
        .iter()
        .map(|s| bs(s))
        .collect();
        want.sort();
        assert_eq!(got, want);
        let rhos: Vec<i64> = ["0000000", "1000000", "0100000", "1100000", "0000010"]
            .iter()
            .map(|s| rho(4, 6, &bs(s)).unwrap())
            .collect();
        assert_eq!(rhos, [0, 1, 2, 3, 16]);
    }

    #[test]
    fn toggle_matches_run_symbol() {
        for r_hat in 4..=8 {
            for last in [false, true] {
                for p in forbidden_parities(r_hat, last) {
                    let long = p.runs().find(|&(_, len)| len > r_hat).unwrap();
                    assert_eq!(p.get(r_hat), Some(long.0));
                }
            }
        }
    }

    #[test]
    fn forbidden_count_r_hat_5() {
        // brute force over all 2^8 words, independent of the run iterator
        let count = (0u32..256)
            .filter(|v| v & 1 == 0)
            .filter(|v| {
                let bits: Vec<u32> = (0..8).map(|i| (v >> i) & 1).collect();
                let mut best = 1;
                let mut cur = 1;
                for w in bits.windows(2) {
                    cur = if w[0] == w[1] { cur + 1 } else { 1 };
                    best = best.max(cur);
                }
                best >= 6
            })
            .count();
        assert_eq!(count, 8);
        assert_eq!(forbidden_parities(5, false).len(), count);
    }

    #[test]
    fn gap_sweep_r_hat_4() {
        let report = gap_condition_check(4).unwrap();
        assert_eq!(report.collisions, vec![Collision { k: 14, d: 5, a: 32 }]);
        assert!(!report.disjoint);
        assert!(report.unexpected_collisions().is_empty());
        assert_eq!(report.c1, Interval::new(4, 6));
        assert_eq!(report.c2, Interval::new(17, 22));
        assert_eq!(report.c3, Interval::new(32, 38));
        assert_eq!(report.d_range, Interval::new(25, 32));
        assert!(report.chain_holds());
        assert!(report.boundary_touches());
    }

    #[test]
    fn gap_sweep_guard() {
        assert!(gap_condition_check(3).is_err());
        assert!(gap_condition_check(13).is_err());
    }
}
