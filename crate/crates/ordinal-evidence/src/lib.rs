//! Evidence combination for ordinal frames of discernment.
//!
//! Classical Dempster-Shafer machinery — frames, basic probability
//! assignments, conflict coefficients, the rule of combination and the
//! negation transform — plus a fusion pipeline for *ordinal* evidences,
//! where each proposition also carries the position in which it was
//! confirmed:
//!
//! 1. a kernel width is derived from the conflict among the evidences;
//! 2. every (order, mass) pair is expanded into a truncated
//!    radial-basis feature vector ([`mrbf`]);
//! 3. each evidence's feature matrix is restructured with
//!    intuitionistic-fuzzy roles and normalized ([`ifs`]);
//! 4. the matrix is negated and every proposition scored for
//!    uncertainty ([`uncertainty`]);
//! 5. scores become per-evidence weights, the weighted matrices fuse
//!    into a modified mass function, and `n - 1` self-combinations
//!    produce the final assignment ([`fusion`]).
//!
//! All values are immutable after construction and every computation is
//! deterministic: the same evidence set and configuration produce a
//! bit-identical [`fusion::FusionReport`].
//!
//! ```
//! use ordinal_evidence::config::Configuration;
//! use ordinal_evidence::frame::Frame;
//! use ordinal_evidence::fusion::pipeline;
//! use ordinal_evidence::mass::{EvidenceSet, OrdinalEvidence};
//!
//! let frame = Frame::new(["a", "b"]).unwrap();
//! let a = frame.singleton("a").unwrap();
//! let b = frame.singleton("b").unwrap();
//! let sensors = EvidenceSet::new(
//!     frame,
//!     vec![
//!         OrdinalEvidence::new([(a, 0.7), (b, 0.3)]).unwrap(),
//!         OrdinalEvidence::new([(b, 0.4), (a, 0.6)]).unwrap(),
//!     ],
//! )
//! .unwrap();
//! let report = pipeline(&sensors, &Configuration::default()).unwrap();
//! assert!(report.final_bpa.get(a) > report.final_bpa.get(b));
//! ```

pub mod config;
pub mod dempster;
pub mod document;
mod error;
pub mod frame;
pub mod fusion;
pub mod ifs;
pub mod mass;
pub mod mrbf;
pub mod negation;
pub mod uncertainty;

pub use error::{Error, Result};
