//! Run-length limited codes that correct a single insertion or deletion.
//!
//! The pipeline: a message `u` of length `k - 1` goes through a
//! sequence-replacement front-end and NRZI precoding ([`rll_front`]) to give
//! `y` in `S_(k,r)`; the congruence encoder ([`sidc`]) prepends `m` parity
//! symbols so the result `z` of length `n = k + m` is both a member of
//! `C_b(n, r_hat, d)` and has no run longer than `r`. [`decoder`] undoes one
//! insertion or deletion and inverts the whole chain.
//!
//! ```
//! use rllsidc::{decoder, sidc, BitSeq, CodeParams};
//!
//! let cp = CodeParams::derive(14, 4, Some(6), Some(31)).unwrap();
//! let y: BitSeq = "10100001000010".parse().unwrap();
//! let z = sidc::embed_encode(&cp, &y).unwrap();
//! assert_eq!(z.to_string(), "001111010100001000010");
//!
//! let mut received = z.clone();
//! received.remove(5);
//! assert_eq!(decoder::correct(&cp, &received).unwrap(), z);
//! ```

pub mod analysis;
pub mod bitseq;
pub mod channel;
pub mod decoder;
pub mod error;
pub mod oracle;
pub mod rll_front;
pub mod sidc;

pub use bitseq::BitSeq;
pub use channel::{apply_event, run_campaign, CampaignReport, ChannelEvent, EventKind};
pub use decoder::{correct, decode_message};
pub use error::{Error, ParamError, Result};
pub use oracle::CheckReport;
pub use rll_front::FrontParams;
pub use sidc::{encode_message, CodeParams, Coefficients, CongruenceCode};
