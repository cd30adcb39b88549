//! Identification of multi-sentence code-mixed text spans in Hindi/English
//! article collections.
//!
//! The pipeline segments articles into paragraph spans ([`corpus`]), tags
//! every token as Hindi, English or Other ([`lid`]), scores sentences by
//! code-mixing index and spans by multilinguality ratio ([`metrics`]), fits
//! the two decision thresholds on a small labeled set ([`thresholds`]) and
//! evaluates the resulting classifier ([`eval`]).

pub mod corpus;
pub mod error;
pub mod eval;
pub mod jsonl;
pub mod lid;
pub mod metrics;
pub mod thresholds;

pub use error::{Error, Result};
