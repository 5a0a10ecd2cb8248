//! The congruence code `C_b(n, r_hat, d)` and its systematic-like encoder.
//!
//! Coefficients (1-based):
//!
//! | index `i`                  | `a_i`                      |
//! |----------------------------|----------------------------|
//! | `1 <= i < r_hat`           | `2^(i-1)`                  |
//! | `i = r_hat`                | `d`                        |
//! | `i = r_hat+1, r_hat+2`     | `2^(i-2)`                  |
//! | `r_hat+3 <= i <= n+1`      | `2^r_hat + i - r_hat - 2`  |
//!
//! A word `z` of length `n` is a codeword iff `sum a_i z_i = b (mod a_(n+1))`.
//! The sequence is strictly increasing, which makes the code correct any
//! single insertion or deletion.
//!
//! A codeword is `z = p y`: an `m = r_hat + 3` symbol parity part followed by
//! the `k` symbol RLL message part. In the parity part, `p_m` separates the
//! two runs, `p_(r_hat)` is the run-breaking toggle, and the remaining
//! `r_hat + 1` positions carry power-of-two weights and are solved from the
//! congruence.

use std::fmt;

use crate::bitseq::BitSeq;
use crate::error::{Error, ParamError, Result};
use crate::rll_front::{self, FrontParams};

/// Largest supported message-part length; keeps every weight sum in `u64`.
pub const MAX_MESSAGE_LEN: usize = 1 << 24;

/// Smallest `x` with `2^x >= v`.
pub(crate) fn ceil_log2(v: usize) -> usize {
    debug_assert!(v >= 1);
    (usize::BITS - (v - 1).leading_zeros()) as usize
}

/// Valid range of the free coefficient for a given `r_hat`.
pub fn free_coefficient_range(r_hat: usize) -> (u64, u64) {
    ((1u64 << (r_hat - 2)) + 1, (1u64 << (r_hat - 1)) - 1)
}

/// `a_i` from the piecewise definition; independent of `n`.
pub fn coefficient_value(r_hat: usize, d: u64, i: usize) -> u64 {
    assert!(i >= 1, "coefficients are 1-based");
    if i < r_hat {
        1 << (i - 1)
    } else if i == r_hat {
        d
    } else if i <= r_hat + 2 {
        1 << (i - 2)
    } else {
        (1u64 << r_hat) + (i - r_hat - 2) as u64
    }
}

/// The coefficient sequence `a_1, ..., a_(n+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coefficients {
    r_hat: usize,
    d: u64,
    values: Vec<u64>,
}

impl Coefficients {
    pub fn new(n: usize, r_hat: usize, d: u64) -> Result<Self, ParamError> {
        if r_hat < 4 {
            return Err(ParamError::ShapeTooSmall { r_hat });
        }
        let (lo, hi) = free_coefficient_range(r_hat);
        if !(lo..=hi).contains(&d) {
            return Err(ParamError::FreeCoefficientOutOfRange { d, lo, hi });
        }
        if n == 0 {
            return Err(ParamError::EmptyCode { n });
        }
        let values = (1..=n + 1)
            .map(|i| coefficient_value(r_hat, d, i))
            .collect();
        Ok(Self { r_hat, d, values })
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn r_hat(&self) -> usize {
        self.r_hat
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// `a_i` for `1 <= i <= n + 1`.
    pub fn get(&self, i: usize) -> Option<u64> {
        i.checked_sub(1).and_then(|j| self.values.get(j)).copied()
    }

    /// `a_(n+1)`.
    pub fn modulus(&self) -> u64 {
        self.values[self.values.len() - 1]
    }

    /// `a_1, ..., a_n` (the modulus excluded).
    pub fn weights(&self) -> &[u64] {
        &self.values[..self.values.len() - 1]
    }

    /// All `n + 1` values including the modulus.
    pub fn as_slice(&self) -> &[u64] {
        &self.values
    }
}

/// `C_b(n, r_hat, d)`: coefficients plus residue.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CongruenceCode {
    coeffs: Coefficients,
    b: u64,
}

impl CongruenceCode {
    pub fn new(coeffs: Coefficients, b: u64) -> Result<Self, ParamError> {
        let modulus = coeffs.modulus();
        if b >= modulus {
            return Err(ParamError::ResidueOutOfRange { b, modulus });
        }
        Ok(Self { coeffs, b })
    }

    pub fn from_raw(n: usize, r_hat: usize, d: u64, b: u64) -> Result<Self, ParamError> {
        Self::new(Coefficients::new(n, r_hat, d)?, b)
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coeffs
    }

    pub fn n(&self) -> usize {
        self.coeffs.n()
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn modulus(&self) -> u64 {
        self.coeffs.modulus()
    }

    /// `mu(z) = sum a_i z_i` over the full integers.
    pub fn mu(&self, z: &BitSeq) -> Result<u64> {
        if z.len() != self.n() {
            return Err(Error::data(format!(
                "word length {} does not match code length n = {}",
                z.len(),
                self.n()
            )));
        }
        Ok(z.iter()
            .zip(self.coeffs.weights())
            .filter(|(bit, _)| *bit)
            .map(|(_, a)| a)
            .sum())
    }

    pub fn is_codeword(&self, z: &BitSeq) -> Result<bool> {
        Ok(self.mu(z)? % self.modulus() == self.b)
    }
}

/// Validated parameters of the full RLL-SIDC encoder.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CodeParams {
    k: usize,
    r: usize,
    front: FrontParams,
    code: CongruenceCode,
}

impl CodeParams {
    /// Derives `r_hat`, `m`, `n` and the modulus from `k`, defaulting `d` to
    /// `2^(r_hat-1) - 1` and `b` to 0, and validates every constraint.
    pub fn derive(k: usize, r: usize, d: Option<u64>, b: Option<u64>) -> Result<Self, ParamError> {
        Self::build(k, r, d, b, false)
    }

    /// Like [`CodeParams::derive`] but admits the excluded triple, for
    /// verification runs that probe it.
    pub(crate) fn build(
        k: usize,
        r: usize,
        d: Option<u64>,
        b: Option<u64>,
        allow_excluded: bool,
    ) -> Result<Self, ParamError> {
        if k < 7 {
            return Err(ParamError::MessageTooShort { k });
        }
        if k > MAX_MESSAGE_LEN {
            return Err(ParamError::MessageTooLong {
                k,
                max: MAX_MESSAGE_LEN,
            });
        }
        let r_hat = ceil_log2(k + 2);
        if r < r_hat {
            return Err(ParamError::RunLimitBelowShape { r, r_hat });
        }
        let d = d.unwrap_or((1u64 << (r_hat - 1)) - 1);
        if !allow_excluded && (k, r, d) == (14, 4, 5) {
            return Err(ParamError::ExcludedTriple);
        }
        let n = k + r_hat + 3;
        let coeffs = Coefficients::new(n, r_hat, d)?;
        let code = CongruenceCode::new(coeffs, b.unwrap_or(0))?;
        let front = FrontParams::new(k, r)?;
        Ok(Self { k, r, front, code })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn r_hat(&self) -> usize {
        self.code.coeffs.r_hat
    }

    pub fn d(&self) -> u64 {
        self.code.coeffs.d
    }

    pub fn b(&self) -> u64 {
        self.code.b
    }

    /// Parity length `r_hat + 3`.
    pub fn m(&self) -> usize {
        self.r_hat() + 3
    }

    pub fn n(&self) -> usize {
        self.code.n()
    }

    pub fn modulus(&self) -> u64 {
        self.code.modulus()
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.code.coeffs
    }

    pub fn code(&self) -> &CongruenceCode {
        &self.code
    }

    pub fn front(&self) -> &FrontParams {
        &self.front
    }

    /// Same parameters with another residue.
    pub fn with_b(&self, b: u64) -> Result<Self, ParamError> {
        Ok(Self {
            code: CongruenceCode::new(self.code.coeffs.clone(), b)?,
            ..self.clone()
        })
    }

    /// `a_i`, 1-based, up to `n + 1`.
    pub fn coefficient(&self, i: usize) -> Result<u64> {
        self.code.coeffs.get(i).ok_or_else(|| {
            Error::range(format!(
                "coefficient index {i} outside [1, {}]",
                self.n() + 1
            ))
        })
    }

    pub fn mu(&self, z: &BitSeq) -> Result<u64> {
        self.code.mu(z)
    }

    pub fn is_codeword(&self, z: &BitSeq) -> Result<bool> {
        self.code.is_codeword(z)
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k={}", self.k)?;
        writeln!(f, "r_hat={}", self.r_hat())?;
        writeln!(f, "r={}", self.r)?;
        writeln!(f, "d={}", self.d())?;
        writeln!(f, "b={}", self.b())?;
        writeln!(f, "m={}", self.m())?;
        writeln!(f, "n={}", self.n())?;
        write!(f, "modulus={}", self.modulus())
    }
}

/// Solves the congruence for the `r_hat + 1` free parity symbols `q` given
/// the toggle `p_rhat`, the separator `p_m` and the message part `y`.
///
/// `q` is `Le_(r_hat+1)` of the residue
/// `b - d p_rhat - a_m p_m - sum a_(j+m) y_j (mod a_(n+1))`.
pub fn parity_solve(cp: &CodeParams, p_rhat: bool, p_m: bool, y: &BitSeq) -> Result<BitSeq> {
    if y.len() != cp.k {
        return Err(Error::data(format!(
            "message part length {} does not match k = {}",
            y.len(),
            cp.k
        )));
    }
    let modulus = i128::from(cp.modulus());
    let m = cp.m();
    let coeffs = cp.coefficients();
    let sigma: i128 = y
        .iter()
        .enumerate()
        .filter(|(_, bit)| *bit)
        .map(|(j, _)| i128::from(coeffs.values[m + j]))
        .sum();
    let rhs = i128::from(cp.b())
        - i128::from(cp.d()) * i128::from(p_rhat)
        - i128::from(coeffs.values[m - 1]) * i128::from(p_m)
        - sigma;
    let residue = rhs.rem_euclid(modulus) as u64;
    BitSeq::le_encode(residue, cp.r_hat() + 1)
}

/// Lays `q`, the toggle and the separator out into the `m`-symbol parity word.
pub fn assemble_parity(cp: &CodeParams, q: &BitSeq, p_rhat: bool, p_m: bool) -> BitSeq {
    let r_hat = cp.r_hat();
    debug_assert_eq!(q.len(), r_hat + 1);
    let mut p = q.prefix(r_hat - 1);
    p.push(p_rhat);
    p.extend_from(&q.suffix(2));
    p.push(p_m);
    p
}

/// Parity words produced by the two passes of [`embed_encode`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbedTrace {
    pub first_parity: BitSeq,
    /// Present only when the first parity word had a run longer than `r`.
    pub fallback_parity: Option<BitSeq>,
    pub codeword: BitSeq,
}

/// [`embed_encode`] that also reports the intermediate parity words.
pub fn embed_encode_traced(cp: &CodeParams, y: &BitSeq) -> Result<EmbedTrace> {
    if y.len() != cp.k {
        return Err(Error::data(format!(
            "message part length {} does not match k = {}",
            y.len(),
            cp.k
        )));
    }
    if !y.is_rll(cp.r) {
        return Err(Error::data(format!(
            "message part has a run of {} exceeding r = {}",
            y.max_run_length(),
            cp.r
        )));
    }
    let p_m = !y.first().expect("k >= 7");

    let solve = |p_rhat: bool| -> Result<BitSeq> {
        let q = parity_solve(cp, p_rhat, p_m, y)?;
        Ok(assemble_parity(cp, &q, p_rhat, p_m))
    };
    let first_parity = solve(false)?;
    let fallback_parity = if first_parity.max_run_length() > cp.r {
        Some(solve(true)?)
    } else {
        None
    };

    let parity = fallback_parity.as_ref().unwrap_or(&first_parity);
    let codeword = parity.concat(y);
    if !codeword.is_rll(cp.r) {
        return Err(Error::invariant(format!(
            "encoder output {codeword} has a run of {} exceeding r = {} for (k, r, d, b) = ({}, {}, {}, {})",
            codeword.max_run_length(),
            cp.r,
            cp.k,
            cp.r,
            cp.d(),
            cp.b()
        )));
    }
    debug_assert!(cp.is_codeword(&codeword).unwrap_or(false));
    Ok(EmbedTrace {
        first_parity,
        fallback_parity,
        codeword,
    })
}

/// Embeds an r-RLL message part `y` into a codeword `z = p y` that is both a
/// member of the congruence code and r-RLL.
pub fn embed_encode(cp: &CodeParams, y: &BitSeq) -> Result<BitSeq> {
    embed_encode_traced(cp, y).map(|t| t.codeword)
}

/// Full pipeline: message of length `k - 1` to a codeword of length `n`.
pub fn encode_message(cp: &CodeParams, u: &BitSeq) -> Result<BitSeq> {
    if u.len() != cp.k - 1 {
        return Err(Error::data(format!(
            "message length {} does not match k - 1 = {}",
            u.len(),
            cp.k - 1
        )));
    }
    let y = rll_front::front_encode(u, &cp.front)?;
    embed_encode(cp, &y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitSeq {
        s.parse().unwrap()
    }

    fn reference_params() -> CodeParams {
        CodeParams::derive(14, 4, Some(6), Some(31)).unwrap()
    }

    #[test]
    fn derived_dimensions() {
        let cp = CodeParams::derive(14, 4, None, None).unwrap();
        assert_eq!((cp.r_hat(), cp.m(), cp.n(), cp.modulus()), (4, 7, 21, 32));
        assert_eq!((cp.d(), cp.b()), (7, 0));
        assert_eq!(
            cp.to_string(),
            "k=14\nr_hat=4\nr=4\nd=7\nb=0\nm=7\nn=21\nmodulus=32"
        );
    }

    #[test]
    fn validation_errors_are_distinct() {
        use ParamError::*;
        let derive = |k, r, d, b| CodeParams::derive(k, r, d, b).unwrap_err();
        assert_eq!(derive(14, 4, Some(5), None), ExcludedTriple);
        assert_eq!(derive(6, 4, None, None), MessageTooShort { k: 6 });
        assert_eq!(
            derive(15, 4, None, None),
            RunLimitBelowShape { r: 4, r_hat: 5 }
        );
        assert!(matches!(
            derive(14, 4, Some(8), None),
            FreeCoefficientOutOfRange { lo: 5, hi: 7, .. }
        ));
        assert_eq!(
            derive(14, 4, None, Some(32)),
            ResidueOutOfRange { b: 32, modulus: 32 }
        );
        assert!(CodeParams::derive(14, 5, Some(5), None).is_ok());
        assert!(CodeParams::build(14, 4, Some(5), None, true).is_ok());
    }

    #[test]
    fn coefficient_sequences() {
        for d in 5..=7 {
            let c = Coefficients::new(21, 4, d).unwrap();
            let mut want = vec![1, 2, 4, d, 8, 16];
            want.extend(17..=32);
            assert_eq!(c.as_slice(), &want[..]);
        }
        for d in 9..=15 {
            let c = Coefficients::new(38, 5, d).unwrap();
            let mut want = vec![1, 2, 4, 8, d, 16, 32];
            want.extend(33..=64);
            assert_eq!(c.as_slice(), &want[..]);
        }
        let cp = reference_params();
        assert_eq!(cp.coefficient(22).unwrap(), 16 + 14 + 2);
        assert!(matches!(cp.coefficient(0), Err(Error::Range(_))));
        assert!(matches!(cp.coefficient(23), Err(Error::Range(_))));
    }

    #[test]
    fn coefficients_strictly_increase() {
        for k in 7..=300 {
            let r_hat = ceil_log2(k + 2);
            let (lo, hi) = free_coefficient_range(r_hat);
            for d in [lo, hi] {
                let c = Coefficients::new(k + r_hat + 3, r_hat, d).unwrap();
                assert!(c.as_slice().windows(2).all(|w| w[0] < w[1]), "k={k} d={d}");
                assert!(c.as_slice()[0] > 0);
            }
        }
    }

    #[test]
    fn weight_and_membership() {
        let cp = reference_params();
        let z = bs("001111010100001000010");
        assert_eq!(cp.mu(&z).unwrap(), 127);
        assert!(cp.is_codeword(&z).unwrap());
        assert!(!cp.with_b(30).unwrap().is_codeword(&z).unwrap());
        assert_eq!(cp.mu(&BitSeq::zeros(21)).unwrap(), 0);
        assert!(cp
            .with_b(0)
            .unwrap()
            .is_codeword(&BitSeq::zeros(21))
            .unwrap());
        assert!(matches!(cp.mu(&BitSeq::zeros(20)), Err(Error::Data(_))));
    }

    #[test]
    fn parity_solve_example() {
        let cp = reference_params();
        let y = bs("10100001000010");
        let q = parity_solve(&cp, false, false, &y).unwrap();
        assert_eq!(q.le_decode().unwrap(), 2);
        assert_eq!(assemble_parity(&cp, &q, false, false), bs("0100000"));
        let q = parity_solve(&cp, true, false, &y).unwrap();
        assert_eq!(q.le_decode().unwrap(), 28);
        assert_eq!(assemble_parity(&cp, &q, true, false), bs("0011110"));
    }

    #[test]
    fn parity_solve_zero_residue() {
        // message part whose weight alone is already b
        let cp = reference_params();
        let y = bs("10100001000010");
        let sigma = cp.mu(&BitSeq::zeros(7).concat(&y)).unwrap();
        let cp = cp.with_b(sigma % 32).unwrap();
        assert_eq!(
            parity_solve(&cp, false, false, &y).unwrap(),
            BitSeq::zeros(5)
        );
    }

    #[test]
    fn reference_encoding() {
        let trace = embed_encode_traced(&reference_params(), &bs("10100001000010")).unwrap();
        assert_eq!(trace.first_parity, bs("0100000"));
        assert_eq!(trace.fallback_parity, Some(bs("0011110")));
        assert_eq!(trace.codeword, bs("001111010100001000010"));
    }

    #[test]
    fn embed_rejects_bad_message_part() {
        let cp = reference_params();
        assert!(matches!(
            embed_encode(&cp, &bs("1010")),
            Err(Error::Data(_))
        ));
        assert!(matches!(
            embed_encode(&cp, &bs("11111000000000")),
            Err(Error::Data(_))
        ));
    }

    #[test]
    fn pipeline_redundancy() {
        let cp = CodeParams::derive(14, 4, None, None).unwrap();
        let z = encode_message(&cp, &BitSeq::ones(13)).unwrap();
        assert_eq!(z.len() - 13, cp.r_hat() + 4);
        assert!(matches!(
            encode_message(&cp, &BitSeq::ones(14)),
            Err(Error::Data(_))
        ));
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!(ceil_log2(9), 4);
        assert_eq!(ceil_log2(16), 4);
        assert_eq!(ceil_log2(17), 5);
        assert_eq!(ceil_log2(1), 0);
    }
}
